use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::OneCellExpr;
use crate::signature::{SmcSignature, ZeroCellId};

/// The generator for sample `index` of a run seeded with `seed`. Samples use
/// disjoint streams, so any one of them can be regenerated on its own.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

const P_LEAF: f64 = 0.3;

/// A random well-typed expression of depth at most `max_depth` in a random
/// hom of `sig`.
pub fn random_expr<R: Rng>(rng: &mut R, sig: &SmcSignature, max_depth: usize) -> OneCellExpr {
    let zs: Vec<ZeroCellId> = sig.zero_cells().collect();
    let gens: Vec<_> = sig.gen1s().collect();
    if !gens.is_empty() && rng.gen_bool(0.8) {
        let g = gens[rng.gen_range(0..gens.len())];
        return random_expr_in(rng, sig, g.src, g.tgt, max_depth);
    }
    let a = zs[rng.gen_range(0..zs.len())];
    let b = zs[rng.gen_range(0..zs.len())];
    random_expr_in(rng, sig, a, b, max_depth)
}

/// A random well-typed expression `a -> b` of depth at most `max_depth`.
pub fn random_expr_in<R: Rng>(
    rng: &mut R,
    sig: &SmcSignature,
    a: ZeroCellId,
    b: ZeroCellId,
    max_depth: usize,
) -> OneCellExpr {
    if max_depth == 0 || rng.gen_bool(P_LEAF) {
        let gens: Vec<_> = sig.gen1s().filter(|g| g.src == a && g.tgt == b).collect();
        if !gens.is_empty() && rng.gen_bool(0.7) {
            return OneCellExpr::Gen(gens[rng.gen_range(0..gens.len())].name);
        }
        if a == b && rng.gen_bool(0.5) {
            return OneCellExpr::IdUnit(a);
        }
        return OneCellExpr::ZeroUnit(a, b);
    }
    if rng.gen_bool(0.5) {
        let x = random_expr_in(rng, sig, a, b, max_depth - 1);
        let y = random_expr_in(rng, sig, a, b, max_depth - 1);
        OneCellExpr::sum(x, y)
    } else {
        let zs: Vec<ZeroCellId> = sig.zero_cells().collect();
        let m = zs[rng.gen_range(0..zs.len())];
        let outer = random_expr_in(rng, sig, m, b, max_depth - 1);
        let inner = random_expr_in(rng, sig, a, m, max_depth - 1);
        OneCellExpr::hcomp(outer, inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_expressions_are_typed_and_bounded() {
        let sig = SmcSignature::standard();
        for i in 0..500 {
            let mut rng = sample_rng(7, i);
            let e = random_expr(&mut rng, &sig, 5);
            assert!(e.well_formed(&sig), "{e}");
            assert!(e.depth() <= 5);
        }
    }

    #[test]
    fn samples_are_reproducible() {
        let sig = SmcSignature::standard();
        let a = random_expr(&mut sample_rng(1, 42), &sig, 5);
        let b = random_expr(&mut sample_rng(1, 42), &sig, 5);
        assert_eq!(a, b);
        let c = random_expr(&mut sample_rng(1, 43), &sig, 5);
        let d = random_expr(&mut sample_rng(2, 42), &sig, 5);
        assert!(a != c || a != d);
    }
}
