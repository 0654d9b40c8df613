//! Coherence diagrams as pairs of parallel paths of structural 2-cells.

use crate::expr::OneCellExpr;
use crate::signature::ZeroCellId;
use crate::syntax::PathDisplay;
use crate::twocell::TwoCellExpr;

type E = OneCellExpr;
type C = TwoCellExpr;

#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    pub name: &'static str,
    pub path1: Vec<TwoCellExpr>,
    pub path2: Vec<TwoCellExpr>,
}

impl Diagram {
    pub fn new(name: &'static str, path1: Vec<TwoCellExpr>, path2: Vec<TwoCellExpr>) -> Self {
        Diagram { name, path1, path2 }
    }

    /// The diagram as a `check` statement of the surface language.
    pub fn to_check(&self) -> String {
        format!(
            "check {} == {}",
            PathDisplay(&self.path1),
            PathDisplay(&self.path2)
        )
    }
}

fn id(e: &E) -> C {
    C::id(e.clone())
}

fn hc(x: &E, y: &E) -> E {
    E::hcomp(x.clone(), y.clone())
}

fn plus(x: &E, y: &E) -> E {
    E::sum(x.clone(), y.clone())
}

/// Both routes from `(f1 + f2) * (g1 + g2)` to
/// `(f1*g1 + f2*g1) + (f1*g2 + f2*g2)`; the second one needs a symmetry.
pub fn condition_i(f1: &E, f2: &E, g1: &E, g2: &E) -> Diagram {
    let (a, b) = (hc(f1, g1), hc(f1, g2));
    let (c, d) = (hc(f2, g1), hc(f2, g2));
    let path1 = vec![
        C::DistL(plus(f1, f2), g1.clone(), g2.clone()),
        C::sum_cells(
            C::DistR(f1.clone(), f2.clone(), g1.clone()),
            C::DistR(f1.clone(), f2.clone(), g2.clone()),
        ),
    ];
    let path2 = vec![
        C::DistR(f1.clone(), f2.clone(), plus(g1, g2)),
        C::sum_cells(
            C::DistL(f1.clone(), g1.clone(), g2.clone()),
            C::DistL(f2.clone(), g1.clone(), g2.clone()),
        ),
        C::inv(C::AddAssoc(a.clone(), b.clone(), plus(&c, &d))),
        C::sum_cells(id(&a), C::AddAssoc(b.clone(), c.clone(), d.clone())),
        C::sum_cells(id(&a), C::sum_cells(C::Sym(b.clone(), c.clone()), id(&d))),
        C::sum_cells(id(&a), C::inv(C::AddAssoc(c.clone(), b.clone(), d.clone()))),
        C::AddAssoc(a, c, plus(&b, &d)),
    ];
    Diagram::new("(i)", path1, path2)
}

/// Distributing the additive unit `0@b->c` over `f + g` agrees with
/// collapsing everything to zero.
pub fn condition_ii(f: &E, g: &E, b: ZeroCellId, c: ZeroCellId, a: ZeroCellId) -> Diagram {
    let zero = E::ZeroUnit(b, c);
    let path1 = vec![C::DistL(zero.clone(), f.clone(), g.clone())];
    let path2 = vec![
        C::NullL(plus(f, g), c),
        C::inv(C::AddUnitL(E::ZeroUnit(a, c))),
        C::sum_cells(
            C::inv(C::NullL(f.clone(), c)),
            C::inv(C::NullL(g.clone(), c)),
        ),
    ];
    Diagram::new("(ii)", path1, path2)
}

/// Distributing `f * g` over `h1 + h2` directly or in two stages.
pub fn condition_iii(f: &E, g: &E, h1: &E, h2: &E) -> Diagram {
    let path1 = vec![C::DistL(hc(f, g), h1.clone(), h2.clone())];
    let path2 = vec![
        C::inv(C::AssocH(f.clone(), g.clone(), plus(h1, h2))),
        C::hcomp_cells(id(f), C::DistL(g.clone(), h1.clone(), h2.clone())),
        C::DistL(f.clone(), hc(g, h1), hc(g, h2)),
        C::sum_cells(
            C::AssocH(f.clone(), g.clone(), h1.clone()),
            C::AssocH(f.clone(), g.clone(), h2.clone()),
        ),
    ];
    Diagram::new("(iii)", path1, path2)
}

/// Left and right distributivity commute past each other on
/// `f * ((g1 + g2) * h)`.
pub fn condition_iv(f: &E, g1: &E, g2: &E, h: &E) -> Diagram {
    let path1 = vec![
        C::hcomp_cells(id(f), C::DistR(g1.clone(), g2.clone(), h.clone())),
        C::DistL(f.clone(), hc(g1, h), hc(g2, h)),
    ];
    let path2 = vec![
        C::AssocH(f.clone(), plus(g1, g2), h.clone()),
        C::hcomp_cells(C::DistL(f.clone(), g1.clone(), g2.clone()), id(h)),
        C::DistR(hc(f, g1), hc(f, g2), h.clone()),
        C::sum_cells(
            C::inv(C::AssocH(f.clone(), g1.clone(), h.clone())),
            C::inv(C::AssocH(f.clone(), g2.clone(), h.clone())),
        ),
    ];
    Diagram::new("(iv)", path1, path2)
}

/// Distributing the unit `1@b` is the unitor of `f + g`.
pub fn condition_v(f: &E, g: &E, b: ZeroCellId) -> Diagram {
    let path1 = vec![
        C::DistL(E::IdUnit(b), f.clone(), g.clone()),
        C::sum_cells(C::LUnit(f.clone()), C::LUnit(g.clone())),
    ];
    let path2 = vec![C::LUnit(plus(f, g))];
    Diagram::new("(v)", path1, path2)
}

/// `f * (g + (h + k))`: distributing respects reassociation of sums.
pub fn distl_assoc(f: &E, g: &E, h: &E, k: &E) -> Diagram {
    let (fg, fh, fk) = (hc(f, g), hc(f, h), hc(f, k));
    let path1 = vec![
        C::DistL(f.clone(), g.clone(), plus(h, k)),
        C::sum_cells(id(&fg), C::DistL(f.clone(), h.clone(), k.clone())),
        C::AddAssoc(fg, fh, fk),
    ];
    let path2 = vec![
        C::hcomp_cells(id(f), C::AddAssoc(g.clone(), h.clone(), k.clone())),
        C::DistL(f.clone(), plus(g, h), k.clone()),
        C::sum_cells(C::DistL(f.clone(), g.clone(), h.clone()), id(&hc(f, k))),
    ];
    Diagram::new("distl-assoc", path1, path2)
}

/// `(f + (g + k)) * h`.
pub fn distr_assoc(f: &E, g: &E, k: &E, h: &E) -> Diagram {
    let (fh, gh, kh) = (hc(f, h), hc(g, h), hc(k, h));
    let path1 = vec![
        C::DistR(f.clone(), plus(g, k), h.clone()),
        C::sum_cells(id(&fh), C::DistR(g.clone(), k.clone(), h.clone())),
        C::AddAssoc(fh, gh, kh),
    ];
    let path2 = vec![
        C::hcomp_cells(C::AddAssoc(f.clone(), g.clone(), k.clone()), id(h)),
        C::DistR(plus(f, g), k.clone(), h.clone()),
        C::sum_cells(C::DistR(f.clone(), g.clone(), h.clone()), id(&hc(k, h))),
    ];
    Diagram::new("distr-assoc", path1, path2)
}

/// Distributing then swapping equals swapping then distributing.
pub fn distl_sym(f: &E, g: &E, h: &E) -> Diagram {
    let path1 = vec![
        C::DistL(f.clone(), g.clone(), h.clone()),
        C::Sym(hc(f, g), hc(f, h)),
    ];
    let path2 = vec![
        C::hcomp_cells(id(f), C::Sym(g.clone(), h.clone())),
        C::DistL(f.clone(), h.clone(), g.clone()),
    ];
    Diagram::new("distl-sym", path1, path2)
}

pub fn distr_sym(f: &E, g: &E, h: &E) -> Diagram {
    let path1 = vec![
        C::DistR(f.clone(), g.clone(), h.clone()),
        C::Sym(hc(f, h), hc(g, h)),
    ];
    let path2 = vec![
        C::hcomp_cells(C::Sym(f.clone(), g.clone()), id(h)),
        C::DistR(g.clone(), f.clone(), h.clone()),
    ];
    Diagram::new("distr-sym", path1, path2)
}

/// `f * (0 + g)`, where `f : b -> c` and `g : a -> b`.
pub fn distl_unit(f: &E, g: &E, a: ZeroCellId, b: ZeroCellId) -> Diagram {
    let fg = hc(f, g);
    let path1 = vec![
        C::DistL(f.clone(), E::ZeroUnit(a, b), g.clone()),
        C::sum_cells(C::NullR(f.clone(), a), id(&fg)),
        C::AddUnitL(fg),
    ];
    let path2 = vec![C::hcomp_cells(id(f), C::AddUnitL(g.clone()))];
    Diagram::new("distl-unit", path1, path2)
}

/// `(f + g) * 0@a->b`, where `f, g : b -> c`.
pub fn null_right(f: &E, g: &E, a: ZeroCellId, b: ZeroCellId, c: ZeroCellId) -> Diagram {
    let path1 = vec![
        C::DistR(f.clone(), g.clone(), E::ZeroUnit(a, b)),
        C::sum_cells(C::NullR(f.clone(), a), C::NullR(g.clone(), a)),
        C::AddUnitL(E::ZeroUnit(a, c)),
    ];
    let path2 = vec![C::NullR(plus(f, g), a)];
    Diagram::new("null-right", path1, path2)
}

/// `(k1 + k2) * (f * g)`: the associator is compatible with right
/// distributivity.
pub fn assoc_outer(k1: &E, k2: &E, f: &E, g: &E) -> Diagram {
    let path1 = vec![
        C::AssocH(plus(k1, k2), f.clone(), g.clone()),
        C::hcomp_cells(C::DistR(k1.clone(), k2.clone(), f.clone()), id(g)),
        C::DistR(hc(k1, f), hc(k2, f), g.clone()),
    ];
    let path2 = vec![
        C::DistR(k1.clone(), k2.clone(), hc(f, g)),
        C::sum_cells(
            C::AssocH(k1.clone(), f.clone(), g.clone()),
            C::AssocH(k2.clone(), f.clone(), g.clone()),
        ),
    ];
    Diagram::new("assoc-outer", path1, path2)
}

/// `(f + g) * 1@a`.
pub fn runit_sum(f: &E, g: &E, a: ZeroCellId) -> Diagram {
    let path1 = vec![C::RUnit(plus(f, g))];
    let path2 = vec![
        C::DistR(f.clone(), g.clone(), E::IdUnit(a)),
        C::sum_cells(C::RUnit(f.clone()), C::RUnit(g.clone())),
    ];
    Diagram::new("runit-sum", path1, path2)
}

/// The bicategorical pentagon on `u * (t * (s * r))`.
pub fn pentagon(u: &E, t: &E, s: &E, r: &E) -> Diagram {
    let path1 = vec![
        C::AssocH(u.clone(), t.clone(), hc(s, r)),
        C::AssocH(hc(u, t), s.clone(), r.clone()),
    ];
    let path2 = vec![
        C::hcomp_cells(id(u), C::AssocH(t.clone(), s.clone(), r.clone())),
        C::AssocH(u.clone(), hc(t, s), r.clone()),
        C::hcomp_cells(C::AssocH(u.clone(), t.clone(), s.clone()), id(r)),
    ];
    Diagram::new("pentagon", path1, path2)
}

/// The triangle on `t * (1@b * s)`.
pub fn triangle(t: &E, s: &E, b: ZeroCellId) -> Diagram {
    let path1 = vec![
        C::AssocH(t.clone(), E::IdUnit(b), s.clone()),
        C::hcomp_cells(C::RUnit(t.clone()), id(s)),
    ];
    let path2 = vec![C::hcomp_cells(id(t), C::LUnit(s.clone()))];
    Diagram::new("triangle", path1, path2)
}

/// The symmetric monoidal hexagon on `x + (y + z)`.
pub fn hexagon(x: &E, y: &E, z: &E) -> Diagram {
    let path1 = vec![
        C::AddAssoc(x.clone(), y.clone(), z.clone()),
        C::Sym(plus(x, y), z.clone()),
        C::AddAssoc(z.clone(), x.clone(), y.clone()),
    ];
    let path2 = vec![
        C::sum_cells(id(x), C::Sym(y.clone(), z.clone())),
        C::AddAssoc(x.clone(), z.clone(), y.clone()),
        C::sum_cells(C::Sym(x.clone(), z.clone()), id(y)),
    ];
    Diagram::new("hexagon", path1, path2)
}

pub fn sym_involution(x: &E, y: &E) -> Diagram {
    Diagram::new(
        "sym-involution",
        vec![C::Sym(x.clone(), y.clone()), C::Sym(y.clone(), x.clone())],
        vec![id(&plus(x, y))],
    )
}

/// The additive triangle on `x + (0 + y)`.
pub fn add_triangle(x: &E, y: &E, a: ZeroCellId, b: ZeroCellId) -> Diagram {
    let path1 = vec![
        C::AddAssoc(x.clone(), E::ZeroUnit(a, b), y.clone()),
        C::sum_cells(C::AddUnitR(x.clone()), id(y)),
    ];
    let path2 = vec![C::sum_cells(id(x), C::AddUnitL(y.clone()))];
    Diagram::new("add-triangle", path1, path2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::SmcSignature;
    use crate::twocell::{check_diagram, check_diagram_with, Semantics};

    fn g(n: &str) -> E {
        E::gen(n)
    }

    fn commutes(d: &Diagram, sig: &SmcSignature) -> bool {
        let r =
            check_diagram(&d.path1, &d.path2, sig).unwrap_or_else(|e| panic!("{}: {e}", d.name));
        r.commutes
    }

    #[test]
    fn conditions_commute_on_generators() {
        let sig = SmcSignature::standard();
        let (a, b, c) = ("a".into(), "b".into(), "c".into());
        let all = [
            condition_i(&g("g"), &g("g'"), &g("f"), &g("f'")),
            condition_ii(&g("f"), &g("f'"), b, c, a),
            condition_iii(&E::id_unit("c"), &g("g"), &g("f"), &g("f'")),
            condition_iv(&E::id_unit("c"), &g("g"), &g("g'"), &g("f")),
            condition_v(&g("f"), &g("f'"), b),
            distl_assoc(&g("g"), &g("f"), &g("f'"), &g("f")),
            distr_assoc(&g("g"), &g("g'"), &g("g"), &g("f")),
            distl_sym(&g("g"), &g("f"), &g("f'")),
            distr_sym(&g("g"), &g("g'"), &g("f")),
            distl_unit(&g("g"), &g("f"), a, b),
            null_right(&g("g"), &g("g'"), a, b, c),
            assoc_outer(&g("g"), &g("g'"), &g("f"), &E::id_unit("a")),
            runit_sum(&g("f"), &g("f'"), a),
            pentagon(&E::id_unit("c"), &g("g"), &g("f"), &E::id_unit("a")),
            triangle(&g("g"), &g("f"), b),
            hexagon(&g("h"), &g("h"), &E::hcomp(g("g"), g("f"))),
            sym_involution(&g("f"), &g("f'")),
            add_triangle(&g("h"), &g("h"), a, c),
        ];
        for d in &all {
            assert!(
                commutes(d, &sig),
                "{} does not commute: {}",
                d.name,
                d.to_check()
            );
        }
    }

    #[test]
    fn identity_dist_mutant_breaks_condition_i() {
        let sig = SmcSignature::standard();
        let d = condition_i(&g("g"), &g("g'"), &g("f"), &g("f'"));
        let r = check_diagram_with(&d.path1, &d.path2, &sig, Semantics::IdentityDistL).unwrap();
        assert!(!r.commutes);
    }
}
