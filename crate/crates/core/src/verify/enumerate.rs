use std::collections::HashMap;

use crate::expr::OneCellExpr;
use crate::normalize::{Monomial, NormalForm};
use crate::signature::{SmcSignature, ZeroCellId};

type Hom = (ZeroCellId, ZeroCellId);

/// All well-typed expressions up to a depth, grouped by hom and exact depth.
pub struct ExprTable {
    depth: usize,
    homs: Vec<Hom>,
    layers: HashMap<Hom, Vec<Vec<OneCellExpr>>>,
}

impl ExprTable {
    pub fn build(sig: &SmcSignature, depth: usize) -> Self {
        let zs: Vec<ZeroCellId> = sig.zero_cells().collect();
        let homs: Vec<Hom> = zs
            .iter()
            .flat_map(|&a| zs.iter().map(move |&b| (a, b)))
            .collect();
        let mut layers: HashMap<Hom, Vec<Vec<OneCellExpr>>> = HashMap::new();
        for &(a, b) in &homs {
            let mut leaves: Vec<OneCellExpr> = sig
                .gen1s()
                .filter(|g| g.src == a && g.tgt == b)
                .map(|g| OneCellExpr::Gen(g.name))
                .collect();
            if a == b {
                leaves.push(OneCellExpr::IdUnit(a));
            }
            leaves.push(OneCellExpr::ZeroUnit(a, b));
            layers.insert((a, b), vec![leaves]);
        }
        let mut table = ExprTable {
            depth: 0,
            homs,
            layers,
        };
        for _ in 0..depth {
            let next: Vec<(Hom, Vec<OneCellExpr>)> = table
                .homs
                .iter()
                .map(|&hom| {
                    let mut out = Vec::new();
                    table.next_layer(hom, &zs, |e| out.push(e));
                    (hom, out)
                })
                .collect();
            for (hom, out) in next {
                table.layers.get_mut(&hom).expect("hom present").push(out);
            }
            table.depth += 1;
        }
        table
    }

    /// Visits the expressions `a -> b` of depth exactly `self.depth + 1`.
    fn next_layer(&self, (a, b): Hom, zs: &[ZeroCellId], mut visit: impl FnMut(OneCellExpr)) {
        let d = self.depth;
        for &m in zs {
            let outer = &self.layers[&(m, b)];
            let inner = &self.layers[&(a, m)];
            pairs_at_exact_depth(outer, inner, d, |x, y| {
                visit(OneCellExpr::hcomp(x.clone(), y.clone()))
            });
        }
        let same = &self.layers[&(a, b)];
        pairs_at_exact_depth(same, same, d, |x, y| {
            visit(OneCellExpr::sum(x.clone(), y.clone()))
        });
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Expressions `a -> b` of depth at most `max_depth`.
    pub fn hom(&self, a: ZeroCellId, b: ZeroCellId, max_depth: usize) -> Vec<OneCellExpr> {
        self.layers
            .get(&(a, b))
            .map(|ls| ls.iter().take(max_depth + 1).flatten().cloned().collect())
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.layers.values().flatten().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Depth-major, then hom, then construction order.
    pub fn exprs(&self) -> Vec<OneCellExpr> {
        let mut out = Vec::with_capacity(self.len());
        for d in 0..=self.depth {
            for hom in &self.homs {
                out.extend(self.layers[hom][d].iter().cloned());
            }
        }
        out
    }
}

/// Visits `(x, y)` with `x` from `outer`, `y` from `inner`, both of depth at
/// most `d` and at least one of depth exactly `d`.
fn pairs_at_exact_depth(
    outer: &[Vec<OneCellExpr>],
    inner: &[Vec<OneCellExpr>],
    d: usize,
    mut visit: impl FnMut(&OneCellExpr, &OneCellExpr),
) {
    for (dx, xs) in outer.iter().enumerate().take(d + 1) {
        for x in xs {
            for (dy, ys) in inner.iter().enumerate().take(d + 1) {
                if dx < d && dy < d {
                    continue;
                }
                for y in ys {
                    visit(x, y);
                }
            }
        }
    }
}

/// All well-formed expressions of depth at most `depth`, without
/// duplicates. The output for `depth` is a prefix of the output for
/// `depth + 1`.
pub fn enumerate_exprs(sig: &SmcSignature, depth: usize) -> Vec<OneCellExpr> {
    ExprTable::build(sig, depth).exprs()
}

/// Visits the expressions of [`enumerate_exprs`] in the same order without
/// holding the deepest layer in memory.
pub fn for_each_expr(sig: &SmcSignature, depth: usize, mut visit: impl FnMut(&OneCellExpr)) {
    let table = ExprTable::build(sig, depth.saturating_sub(1));
    for e in table.exprs() {
        visit(&e);
    }
    if depth == 0 {
        return;
    }
    let zs: Vec<ZeroCellId> = sig.zero_cells().collect();
    for &hom in &table.homs {
        table.next_layer(hom, &zs, |e| visit(&e));
    }
}

/// Generate-and-filter: every tree over the leaves, typed or not, then keep
/// the well-formed ones. Exponentially wasteful; for cross-checking only.
pub fn brute_force_exprs(sig: &SmcSignature, depth: usize) -> Vec<OneCellExpr> {
    let zs: Vec<ZeroCellId> = sig.zero_cells().collect();
    let mut leaves: Vec<OneCellExpr> = sig.gen1s().map(|g| OneCellExpr::Gen(g.name)).collect();
    leaves.extend(zs.iter().map(|&a| OneCellExpr::IdUnit(a)));
    for &a in &zs {
        for &b in &zs {
            leaves.push(OneCellExpr::ZeroUnit(a, b));
        }
    }
    let mut all = leaves.clone();
    for _ in 0..depth {
        let mut next = leaves.clone();
        for x in &all {
            for y in &all {
                next.push(OneCellExpr::hcomp(x.clone(), y.clone()));
                next.push(OneCellExpr::sum(x.clone(), y.clone()));
            }
        }
        all = next;
    }
    all.into_iter().filter(|e| e.well_formed(sig)).collect()
}

/// Generator strings `a -> b` of length `1..=max_len`, plus the unit string
/// when `a == b`; shortest first.
pub fn enumerate_monomials(
    sig: &SmcSignature,
    a: ZeroCellId,
    b: ZeroCellId,
    max_len: usize,
) -> Vec<Monomial> {
    let mut out = Vec::new();
    if a == b {
        out.push(Monomial::unit(a));
    }
    // Strings are grown on the inner end, so `frontier` holds strings ending
    // (outermost) at `b` together with their current source.
    let mut frontier: Vec<(Vec<&str>, ZeroCellId)> = vec![(Vec::new(), b)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (gens, at) in &frontier {
            for g in sig.gen1s().filter(|g| g.tgt == *at) {
                let mut longer = gens.clone();
                longer.push(g.name.as_str());
                next.push((longer, g.src));
            }
        }
        for (gens, src) in &next {
            if *src == a {
                out.push(Monomial::from_gens(sig, gens).expect("composable by construction"));
            }
        }
        frontier = next;
    }
    out
}

/// Normal forms `a -> b` with at most `max_monomials` summands drawn from
/// [`enumerate_monomials`].
pub fn normal_forms_in(
    sig: &SmcSignature,
    a: ZeroCellId,
    b: ZeroCellId,
    max_monomials: usize,
    max_len: usize,
) -> Vec<NormalForm> {
    let monomials = enumerate_monomials(sig, a, b, max_len);
    let mut out = vec![NormalForm::empty(a, b)];
    let mut layer: Vec<Vec<Monomial>> = vec![Vec::new()];
    for _ in 0..max_monomials {
        let mut next = Vec::new();
        for seq in &layer {
            for m in &monomials {
                let mut longer = seq.clone();
                longer.push(m.clone());
                next.push(longer);
            }
        }
        out.extend(
            next.iter()
                .map(|ms| NormalForm::new(a, b, ms.clone()).expect("parallel monomials")),
        );
        layer = next;
    }
    out
}

/// [`normal_forms_in`] over every hom of the signature.
pub fn enumerate_normal_forms(
    sig: &SmcSignature,
    max_monomials: usize,
    max_len: usize,
) -> Vec<NormalForm> {
    let zs: Vec<ZeroCellId> = sig.zero_cells().collect();
    let mut out = Vec::new();
    for &a in &zs {
        for &b in &zs {
            out.extend(normal_forms_in(sig, a, b, max_monomials, max_len));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn depth_zero_is_the_leaves() {
        let sig = SmcSignature::from_decls(&["a", "b"], &[("f", "a", "b")]).unwrap();
        let leaves: HashSet<String> = enumerate_exprs(&sig, 0)
            .iter()
            .map(|e| e.to_string())
            .collect();
        let expected: HashSet<String> = ["f", "1@a", "1@b", "0@a->a", "0@a->b", "0@b->a", "0@b->b"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(leaves, expected);
    }

    #[test]
    fn matches_generate_and_filter() {
        for sig in [SmcSignature::standard(), SmcSignature::single_endo()] {
            for depth in 0..=1 {
                let fast = enumerate_exprs(&sig, depth);
                let slow = brute_force_exprs(&sig, depth);
                assert_eq!(fast.len(), slow.len());
                let a: HashSet<_> = fast.into_iter().collect();
                let b: HashSet<_> = slow.into_iter().collect();
                assert_eq!(a.len(), b.len(), "duplicates in enumeration");
                assert_eq!(a, b);
            }
        }
        let sig = SmcSignature::single_endo();
        assert_eq!(
            enumerate_exprs(&sig, 2).len(),
            brute_force_exprs(&sig, 2).len()
        );
    }

    #[test]
    fn depths_nest_as_prefixes() {
        let sig = SmcSignature::standard();
        let d1 = enumerate_exprs(&sig, 1);
        let d2 = enumerate_exprs(&sig, 2);
        assert_eq!(&d2[..d1.len()], &d1[..]);
        assert_eq!(d1.len(), 26 + 26 + 23 + 15 + 16 + 15 + 9 + 7 + 9);
    }

    #[test]
    fn streaming_matches_the_table() {
        let sig = SmcSignature::standard();
        for depth in 0..=2 {
            let mut streamed = Vec::new();
            for_each_expr(&sig, depth, |e| streamed.push(e.clone()));
            assert_eq!(streamed, enumerate_exprs(&sig, depth));
        }
    }

    #[test]
    fn standard_counts() {
        let sig = SmcSignature::standard();
        let counts: Vec<usize> = (0..=2).map(|d| ExprTable::build(&sig, d).len()).collect();
        assert_eq!(counts, [17, 146, 9384]);
    }

    #[test]
    fn single_endo_counts() {
        let sig = SmcSignature::single_endo();
        let counts: Vec<usize> = (0..=3).map(|d| ExprTable::build(&sig, d).len()).collect();
        assert_eq!(counts, [3, 21, 885, 1_566_453]);
    }

    #[test]
    fn normal_form_counts() {
        let sig = SmcSignature::standard();
        let at = |a: &str, b: &str| normal_forms_in(&sig, a.into(), b.into(), 4, 3).len();
        assert_eq!(at("a", "b"), 31);
        assert_eq!(at("b", "c"), 31);
        assert_eq!(at("a", "c"), 781);
        assert_eq!(at("a", "a"), 5);
        assert_eq!(at("b", "a"), 1);
        let ms = enumerate_monomials(&sig, "a".into(), "c".into(), 3);
        let names: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["h", "g.f", "g.f'", "g'.f", "g'.f'"]);
    }
}
