//! Strictification of 1-cells: every expression reduces to an ordered sum of
//! composable generator strings, the 1-cells of the strict PC-category.
//!
//! Composition of sums expands first-factor-major: the left (outer) factor's
//! index varies slowest. With that order right distributivity holds on the
//! nose while left distributivity needs a shuffle of the summands.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, ExprPath, Result};
use crate::expr::OneCellExpr;
use crate::signature::{SmcSignature, ZeroCellId};
use crate::symbol::Symbol;
use crate::twocell::TwoCellExpr;

/// A composable string of generators, stored outermost first: `g.f` is `g`
/// after `f`. The empty string is the strict unit `1@a` and only exists when
/// `src == tgt`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    src: ZeroCellId,
    tgt: ZeroCellId,
    gens: Arc<[Symbol]>,
}

impl Monomial {
    pub fn unit(a: ZeroCellId) -> Self {
        Monomial {
            src: a,
            tgt: a,
            gens: Arc::from([]),
        }
    }

    pub fn generator(sig: &SmcSignature, name: &str) -> Result<Self> {
        Self::from_gens(sig, &[name])
    }

    /// Builds `gens[0] . gens[1] . …`, checking that consecutive generators
    /// meet. An empty list is rejected because its 0-cell is unknown; use
    /// [`Monomial::unit`].
    pub fn from_gens(sig: &SmcSignature, gens: &[&str]) -> Result<Self> {
        let mut cells = Vec::with_capacity(gens.len());
        for name in gens {
            let g = sig.gen1(Symbol::new(name)).ok_or_else(|| {
                Error::ill_typed(&ExprPath::root(), format!("unknown generator `{name}`"))
            })?;
            cells.push(*g);
        }
        let (Some(first), Some(last)) = (cells.first(), cells.last()) else {
            return Err(Error::ill_typed(
                &ExprPath::root(),
                "empty generator string without a 0-cell",
            ));
        };
        for pair in cells.windows(2) {
            if pair[0].src != pair[1].tgt {
                return Err(Error::ill_typed(
                    &ExprPath::root(),
                    format!("`{}` cannot follow `{}`", pair[0].name, pair[1].name),
                ));
            }
        }
        Ok(Monomial {
            src: last.src,
            tgt: first.tgt,
            gens: cells.iter().map(|g| g.name).collect::<Vec<_>>().into(),
        })
    }

    pub fn src(&self) -> ZeroCellId {
        self.src
    }

    pub fn tgt(&self) -> ZeroCellId {
        self.tgt
    }

    pub fn gens(&self) -> &[Symbol] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_unit()
    }

    /// `self` after `inner`.
    pub fn then_after(&self, inner: &Monomial) -> Monomial {
        debug_assert_eq!(self.src, inner.tgt);
        let mut gens = Vec::with_capacity(self.gens.len() + inner.gens.len());
        gens.extend_from_slice(&self.gens);
        gens.extend_from_slice(&inner.gens);
        Monomial {
            src: inner.src,
            tgt: self.tgt,
            gens: gens.into(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "1@{}", self.src);
        }
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An ordered formal sum of monomials sharing the endpoints `(src, tgt)`.
/// The empty sum is the strict additive unit. Order is significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    src: ZeroCellId,
    tgt: ZeroCellId,
    monomials: Vec<Monomial>,
}

impl NormalForm {
    pub fn new(src: ZeroCellId, tgt: ZeroCellId, monomials: Vec<Monomial>) -> Result<Self> {
        if let Some(m) = monomials.iter().find(|m| (m.src, m.tgt) != (src, tgt)) {
            return Err(Error::EndpointMismatch(format!(
                "monomial `{m}` is not a 1-cell {src}->{tgt}"
            )));
        }
        Ok(NormalForm {
            src,
            tgt,
            monomials,
        })
    }

    pub fn empty(src: ZeroCellId, tgt: ZeroCellId) -> Self {
        NormalForm {
            src,
            tgt,
            monomials: Vec::new(),
        }
    }

    pub fn singleton(m: Monomial) -> Self {
        NormalForm {
            src: m.src,
            tgt: m.tgt,
            monomials: vec![m],
        }
    }

    /// The horizontal unit: one empty string at `a`.
    pub fn unit(a: ZeroCellId) -> Self {
        Self::singleton(Monomial::unit(a))
    }

    pub fn src(&self) -> ZeroCellId {
        self.src
    }

    pub fn tgt(&self) -> ZeroCellId {
        self.tgt
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Canonical text: `0@a->b` for the empty sum, otherwise monomials joined
    /// by ` + `.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0@{}->{}", self.src, self.tgt);
        }
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Reduces a well-typed expression to its normal form. Typing is checked in
/// the same pass.
pub fn normalize(e: &OneCellExpr, sig: &SmcSignature) -> Result<NormalForm> {
    match normalize_typed(e, sig) {
        Some(nf) => Ok(nf),
        None => Err(e
            .endpoints(sig)
            .expect_err("normalization fails only on ill-typed expressions")),
    }
}

fn normalize_typed(e: &OneCellExpr, sig: &SmcSignature) -> Option<NormalForm> {
    match e {
        OneCellExpr::Gen(name) => {
            let g = sig.gen1(*name)?;
            Some(NormalForm::singleton(Monomial {
                src: g.src,
                tgt: g.tgt,
                gens: Arc::from([g.name]),
            }))
        }
        OneCellExpr::IdUnit(a) => sig.has_zero_cell(*a).then(|| NormalForm::unit(*a)),
        OneCellExpr::ZeroUnit(a, b) => {
            (sig.has_zero_cell(*a) && sig.has_zero_cell(*b)).then(|| NormalForm::empty(*a, *b))
        }
        OneCellExpr::HComp(outer, inner) => {
            let x = normalize_typed(outer, sig)?;
            let y = normalize_typed(inner, sig)?;
            strict_compose(&x, &y).ok()
        }
        OneCellExpr::Sum(left, right) => {
            let x = normalize_typed(left, sig)?;
            let y = normalize_typed(right, sig)?;
            strict_sum(&x, &y).ok()
        }
    }
}

/// Strict composite `x ∘ y`: all concatenations `x_i y_j`, with `i` major.
/// An empty factor gives the empty sum.
pub fn strict_compose(x: &NormalForm, y: &NormalForm) -> Result<NormalForm> {
    if x.src != y.tgt {
        return Err(Error::EndpointMismatch(format!(
            "cannot compose {}->{} after {}->{}",
            x.src, x.tgt, y.src, y.tgt
        )));
    }
    let mut monomials = Vec::with_capacity(x.len() * y.len());
    for xi in &x.monomials {
        for yj in &y.monomials {
            monomials.push(xi.then_after(yj));
        }
    }
    Ok(NormalForm {
        src: y.src,
        tgt: x.tgt,
        monomials,
    })
}

/// Strict sum: concatenation of the monomial sequences.
pub fn strict_sum(x: &NormalForm, y: &NormalForm) -> Result<NormalForm> {
    if (x.src, x.tgt) != (y.src, y.tgt) {
        return Err(Error::EndpointMismatch(format!(
            "cannot add {}->{} and {}->{}",
            x.src, x.tgt, y.src, y.tgt
        )));
    }
    let mut monomials = Vec::with_capacity(x.len() + y.len());
    monomials.extend_from_slice(&x.monomials);
    monomials.extend_from_slice(&y.monomials);
    Ok(NormalForm {
        src: x.src,
        tgt: x.tgt,
        monomials,
    })
}

/// Right-nested composite of a monomial: `f_n * (f_{n-1} * (… * f_1))`.
pub fn embed_monomial(m: &Monomial) -> OneCellExpr {
    match m.gens.split_last() {
        None => OneCellExpr::IdUnit(m.src),
        Some((last, rest)) => rest.iter().rev().fold(OneCellExpr::Gen(*last), |acc, g| {
            OneCellExpr::hcomp(OneCellExpr::Gen(*g), acc)
        }),
    }
}

/// Back from normal forms to expressions: right-nested sums of right-nested
/// composites, `0@a->b` for the empty sum.
pub fn embed(nf: &NormalForm) -> OneCellExpr {
    embed_slice(nf.src, nf.tgt, &nf.monomials)
}

fn embed_slice(src: ZeroCellId, tgt: ZeroCellId, monomials: &[Monomial]) -> OneCellExpr {
    match monomials.split_last() {
        None => OneCellExpr::ZeroUnit(src, tgt),
        Some((last, rest)) => rest.iter().rev().fold(embed_monomial(last), |acc, m| {
            OneCellExpr::sum(embed_monomial(m), acc)
        }),
    }
}

/// A structural 2-cell from `e` to `embed(normalize(e))` whose position map
/// is the identity.
pub fn canonical_iso(e: &OneCellExpr, sig: &SmcSignature) -> Result<TwoCellExpr> {
    // Typing first so that the construction below only sees good input.
    normalize(e, sig)?;
    Ok(canon(e, sig).0)
}

fn canon(e: &OneCellExpr, sig: &SmcSignature) -> (TwoCellExpr, NormalForm) {
    match e {
        OneCellExpr::Gen(_) | OneCellExpr::IdUnit(_) | OneCellExpr::ZeroUnit(..) => {
            let nf = normalize(e, sig).expect("checked by caller");
            (TwoCellExpr::Id2(e.clone()), nf)
        }
        OneCellExpr::Sum(l, r) => {
            let (cl, x) = canon(l, sig);
            let (cr, y) = canon(r, sig);
            let first = TwoCellExpr::sum_cells(cl, cr);
            let merged = merge_sums(&x.monomials, &y.monomials, x.src, x.tgt);
            let nf = strict_sum(&x, &y).expect("typed");
            (TwoCellExpr::vcomp(merged, first), nf)
        }
        OneCellExpr::HComp(outer, inner) => {
            let (co, x) = canon(outer, sig);
            let (ci, y) = canon(inner, sig);
            let first = TwoCellExpr::hcomp_cells(co, ci);
            let expanded = compose_sums(&x, &y, sig);
            let nf = strict_compose(&x, &y).expect("typed");
            (TwoCellExpr::vcomp(expanded, first), nf)
        }
    }
}

/// `embed(x) + embed(y) => embed(x ++ y)`, re-bracketing to the right.
fn merge_sums(x: &[Monomial], y: &[Monomial], src: ZeroCellId, tgt: ZeroCellId) -> TwoCellExpr {
    let ey = embed_slice(src, tgt, y);
    match x {
        [] => TwoCellExpr::AddUnitL(ey),
        _ if y.is_empty() => TwoCellExpr::AddUnitR(embed_slice(src, tgt, x)),
        [m] => TwoCellExpr::Id2(OneCellExpr::sum(embed_monomial(m), ey)),
        [m, rest @ ..] => {
            let em = embed_monomial(m);
            let erest = embed_slice(src, tgt, rest);
            let reassoc = TwoCellExpr::inv(TwoCellExpr::AddAssoc(em.clone(), erest, ey));
            let tail = merge_sums(rest, y, src, tgt);
            TwoCellExpr::vcomp(TwoCellExpr::sum_cells(TwoCellExpr::Id2(em), tail), reassoc)
        }
    }
}

/// `embed(x) * embed(y) => embed(x ∘ y)` for normal forms that meet.
fn compose_sums(x: &NormalForm, y: &NormalForm, sig: &SmcSignature) -> TwoCellExpr {
    let ex = embed(x);
    let ey = embed(y);
    if x.is_empty() {
        return TwoCellExpr::NullL(ey, x.tgt);
    }
    if y.is_empty() {
        return TwoCellExpr::NullR(ex, y.src);
    }
    match (x.monomials.as_slice(), y.monomials.as_slice()) {
        ([m], [n]) => compose_monomials(m, n, sig),
        ([m], [n, rest @ ..]) => {
            // m * (n + rest) => m*n + m*rest
            let em = embed_monomial(m);
            let en = embed_monomial(n);
            let erest = embed_slice(y.src, y.tgt, rest);
            let dist = TwoCellExpr::DistL(em, en, erest);
            let rest_nf = NormalForm {
                src: y.src,
                tgt: y.tgt,
                monomials: rest.to_vec(),
            };
            let tail = compose_sums(x, &rest_nf, sig);
            TwoCellExpr::vcomp(
                TwoCellExpr::sum_cells(compose_monomials(m, n, sig), tail),
                dist,
            )
        }
        ([m, rest @ ..], _) => {
            // (m + rest) * y => m*y + rest*y, then merge the two expansions
            let em = embed_monomial(m);
            let erest = embed_slice(x.src, x.tgt, rest);
            let dist = TwoCellExpr::DistR(em, erest, ey);
            let head = NormalForm::singleton(m.clone());
            let rest_nf = NormalForm {
                src: x.src,
                tgt: x.tgt,
                monomials: rest.to_vec(),
            };
            let left = compose_sums(&head, y, sig);
            let right = compose_sums(&rest_nf, y, sig);
            let lnf = strict_compose(&head, y).expect("typed");
            let rnf = strict_compose(&rest_nf, y).expect("typed");
            let merged = merge_sums(&lnf.monomials, &rnf.monomials, y.src, x.tgt);
            TwoCellExpr::vcomp(
                merged,
                TwoCellExpr::vcomp(TwoCellExpr::sum_cells(left, right), dist),
            )
        }
        _ => unreachable!("empty factors handled above"),
    }
}

/// `embed(m) * embed(n) => embed(m.n)`.
fn compose_monomials(m: &Monomial, n: &Monomial, sig: &SmcSignature) -> TwoCellExpr {
    let em = embed_monomial(m);
    let en = embed_monomial(n);
    if m.is_unit() {
        return TwoCellExpr::LUnit(en);
    }
    if n.is_unit() {
        return TwoCellExpr::RUnit(em);
    }
    match &m.gens[..] {
        [_] => TwoCellExpr::Id2(OneCellExpr::hcomp(em, en)),
        [g, rest @ ..] => {
            // (g * rest) * n => g * (rest * n) => g * rest.n
            let eg = OneCellExpr::Gen(*g);
            let rest_m = Monomial {
                src: m.src,
                tgt: sig.gen1(*g).expect("typed").src,
                gens: rest.into(),
            };
            let erest = embed_monomial(&rest_m);
            let reassoc = TwoCellExpr::inv(TwoCellExpr::AssocH(eg.clone(), erest, en));
            let tail = compose_monomials(&rest_m, n, sig);
            TwoCellExpr::vcomp(
                TwoCellExpr::hcomp_cells(TwoCellExpr::Id2(eg), tail),
                reassoc,
            )
        }
        [] => unreachable!(),
    }
}

impl serde::Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twocell::perm_of;
    use OneCellExpr as E;

    fn sig() -> SmcSignature {
        SmcSignature::standard()
    }

    fn g(name: &str) -> E {
        E::gen(name)
    }

    fn nf(e: &E) -> NormalForm {
        normalize(e, &sig()).unwrap()
    }

    fn mono(names: &[&str]) -> Monomial {
        Monomial::from_gens(&sig(), names).unwrap()
    }

    #[test]
    fn zero_unit_is_the_empty_sum() {
        let x = nf(&E::zero("a", "b"));
        assert!(x.is_empty());
        assert_eq!(x.to_text(), "0@a->b");
    }

    #[test]
    fn right_factor_sum() {
        let e = E::hcomp(E::sum(g("g"), g("g'")), g("f"));
        assert_eq!(nf(&e).to_text(), "g.f + g'.f");
    }

    #[test]
    fn first_factor_major_expansion() {
        let e = E::hcomp(E::sum(g("g"), g("g'")), E::sum(g("f"), g("f'")));
        assert_eq!(nf(&e).to_text(), "g.f + g.f' + g'.f + g'.f'");
    }

    #[test]
    fn unit_string_is_absorbed() {
        assert_eq!(nf(&E::hcomp(E::id_unit("b"), g("f"))).to_text(), "f");
        assert_eq!(nf(&E::id_unit("a")).to_text(), "1@a");
    }

    #[test]
    fn normalize_reports_typing_errors() {
        let err = normalize(&E::hcomp(g("f"), g("g")), &sig()).unwrap_err();
        assert!(matches!(err, Error::IllTyped { .. }));
        assert!(normalize(&E::sum(g("f"), g("g")), &sig()).is_err());
        assert!(normalize(&E::zero("a", "q"), &sig()).is_err());
    }

    #[test]
    fn strict_compose_examples() {
        let gg =
            NormalForm::new("b".into(), "c".into(), vec![mono(&["g"]), mono(&["g'"])]).unwrap();
        let ff =
            NormalForm::new("a".into(), "b".into(), vec![mono(&["f"]), mono(&["f'"])]).unwrap();
        assert_eq!(
            strict_compose(
                &NormalForm::singleton(mono(&["g"])),
                &NormalForm::singleton(mono(&["f"]))
            )
            .unwrap()
            .to_text(),
            "g.f"
        );
        assert_eq!(
            strict_compose(&gg, &ff).unwrap().to_text(),
            "g.f + g.f' + g'.f + g'.f'"
        );
        let empty = NormalForm::empty("b".into(), "c".into());
        let r = strict_compose(&empty, &NormalForm::singleton(mono(&["f"]))).unwrap();
        assert!(r.is_empty());
        assert_eq!((r.src().as_str(), r.tgt().as_str()), ("a", "c"));
        assert!(matches!(
            strict_compose(&ff, &gg),
            Err(Error::EndpointMismatch(_))
        ));
    }

    #[test]
    fn strict_sum_examples() {
        let f = NormalForm::singleton(mono(&["f"]));
        let f2 = NormalForm::singleton(mono(&["f'"]));
        assert_eq!(strict_sum(&f, &f2).unwrap().to_text(), "f + f'");
        let zero = NormalForm::empty("a".into(), "b".into());
        assert_eq!(strict_sum(&zero, &f).unwrap(), f);
        let l = strict_sum(&strict_sum(&f, &f2).unwrap(), &f).unwrap();
        let r = strict_sum(&f, &strict_sum(&f2, &f).unwrap()).unwrap();
        assert_eq!(l, r);
        let gnf = NormalForm::singleton(mono(&["g"]));
        assert!(matches!(
            strict_sum(&f, &gnf),
            Err(Error::EndpointMismatch(_))
        ));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(
            embed(&NormalForm::empty("a".into(), "b".into())),
            E::zero("a", "b")
        );
        assert_eq!(embed(&NormalForm::singleton(mono(&["f"]))), g("f"));
        let two = NormalForm::new(
            "a".into(),
            "c".into(),
            vec![mono(&["g", "f"]), mono(&["g'", "f"])],
        )
        .unwrap();
        assert_eq!(
            embed(&two),
            E::sum(E::hcomp(g("g"), g("f")), E::hcomp(g("g'"), g("f")))
        );
        assert_eq!(embed(&NormalForm::unit("b".into())), E::id_unit("b"));
    }

    #[test]
    fn monomial_rejects_non_composable_strings() {
        assert!(Monomial::from_gens(&sig(), &["f", "g"]).is_err());
        assert!(Monomial::from_gens(&sig(), &[]).is_err());
        assert_eq!(mono(&["g", "f"]).to_string(), "g.f");
        let bad = NormalForm::new("a".into(), "c".into(), vec![mono(&["f"])]);
        assert!(matches!(bad, Err(Error::EndpointMismatch(_))));
    }

    #[test]
    fn canonical_iso_examples() {
        assert_eq!(
            canonical_iso(&g("f"), &sig()).unwrap(),
            TwoCellExpr::Id2(g("f"))
        );
        assert_eq!(
            canonical_iso(&E::hcomp(E::id_unit("b"), g("f")), &sig()).unwrap(),
            TwoCellExpr::LUnit(g("f"))
        );
        let e = E::hcomp(E::sum(g("g"), g("g'")), g("f"));
        let c = canonical_iso(&e, &sig()).unwrap();
        assert_eq!(c, TwoCellExpr::DistR(g("g"), g("g'"), g("f")));
        let p = perm_of(&c, &sig()).unwrap();
        assert!(p.is_identity());
        assert_eq!(
            crate::twocell::boundary(&c, &sig()).unwrap(),
            (e.clone(), embed(&nf(&e)))
        );
    }

    #[test]
    fn canonical_iso_on_mixed_expressions() {
        // (1@c * g + g' * 1@b) * ((f + 0@a->b) * 1@a) + h
        let mixed = E::sum(
            E::hcomp(
                E::sum(
                    E::hcomp(E::id_unit("c"), g("g")),
                    E::hcomp(g("g'"), E::id_unit("b")),
                ),
                E::hcomp(E::sum(g("f"), E::zero("a", "b")), E::id_unit("a")),
            ),
            g("h"),
        );
        let nested = E::hcomp(E::id_unit("c"), E::sum(E::hcomp(g("g"), g("f")), g("h")));
        for e in [mixed, nested] {
            let c = canonical_iso(&e, &sig()).unwrap();
            let (s, t) = crate::twocell::boundary(&c, &sig()).unwrap();
            assert_eq!(s, e);
            assert_eq!(t, embed(&nf(&e)));
            assert!(perm_of(&c, &sig()).unwrap().is_identity());
        }
    }
}
