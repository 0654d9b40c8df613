//! Structural 2-cells and their position semantics.
//!
//! Every structural 2-cell `c: e => e'` is read as a bijection between the
//! monomial positions of `normalize(e)` and `normalize(e')`. Associators,
//! unitors, nullities and right distributivity are identities on positions;
//! symmetry swaps two blocks; left distributivity is the shuffle taking the
//! `i`-major expansion of `f ∘ (g ⊕ h)` to the block order `f∘g` then `f∘h`.
//! Two parallel cells are equal when their bijections are.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::OneCellExpr;
use crate::normalize::{normalize, NormalForm};
use crate::signature::{SmcSignature, ZeroCellId};
use crate::symbol::Symbol;

type E = OneCellExpr;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TwoCellExpr {
    Id2(OneCellExpr),
    Gen2(Symbol),
    /// `later ∘ earlier`.
    VComp(Arc<TwoCellExpr>, Arc<TwoCellExpr>),
    /// Horizontal composite `outer * inner`.
    HComp2(Arc<TwoCellExpr>, Arc<TwoCellExpr>),
    SumCells(Arc<TwoCellExpr>, Arc<TwoCellExpr>),
    Inv(Arc<TwoCellExpr>),
    /// `f*(g*h) => (f*g)*h`
    AssocH(E, E, E),
    /// `1@b * f => f`
    LUnit(E),
    /// `f * 1@a => f`
    RUnit(E),
    /// `f+(g+h) => (f+g)+h`
    AddAssoc(E, E, E),
    /// `0 + f => f`
    AddUnitL(E),
    /// `f + 0 => f`
    AddUnitR(E),
    /// `f + g => g + f`
    Sym(E, E),
    /// `f*(g+h) => f*g + f*h`
    DistL(E, E, E),
    /// `(f+g)*h => f*h + g*h`
    DistR(E, E, E),
    /// `0@b->c * f => 0@a->c` for `f: a -> b`; carries `c`.
    NullL(E, ZeroCellId),
    /// `f * 0@a->b => 0@a->c` for `f: b -> c`; carries `a`.
    NullR(E, ZeroCellId),
}

impl TwoCellExpr {
    pub fn id(e: OneCellExpr) -> Self {
        TwoCellExpr::Id2(e)
    }

    pub fn gen(name: &str) -> Self {
        TwoCellExpr::Gen2(Symbol::new(name))
    }

    /// `later ∘ earlier`, dropping identity factors.
    pub fn vcomp(later: TwoCellExpr, earlier: TwoCellExpr) -> Self {
        match (&later, &earlier) {
            (TwoCellExpr::Id2(_), _) => earlier,
            (_, TwoCellExpr::Id2(_)) => later,
            _ => TwoCellExpr::VComp(Arc::new(later), Arc::new(earlier)),
        }
    }

    /// Horizontal composite; two identities fuse into one.
    pub fn hcomp_cells(outer: TwoCellExpr, inner: TwoCellExpr) -> Self {
        match (outer, inner) {
            (TwoCellExpr::Id2(a), TwoCellExpr::Id2(b)) => TwoCellExpr::Id2(E::hcomp(a, b)),
            (a, b) => TwoCellExpr::HComp2(Arc::new(a), Arc::new(b)),
        }
    }

    /// Sum of cells; two identities fuse into one.
    pub fn sum_cells(left: TwoCellExpr, right: TwoCellExpr) -> Self {
        match (left, right) {
            (TwoCellExpr::Id2(a), TwoCellExpr::Id2(b)) => TwoCellExpr::Id2(E::sum(a, b)),
            (a, b) => TwoCellExpr::SumCells(Arc::new(a), Arc::new(b)),
        }
    }

    /// Formal inverse without any simplification beyond `inv(id) = id` and
    /// `inv(inv(c)) = c`.
    pub fn inv(c: TwoCellExpr) -> Self {
        match c {
            TwoCellExpr::Id2(_) => c,
            TwoCellExpr::Inv(inner) => (*inner).clone(),
            other => TwoCellExpr::Inv(Arc::new(other)),
        }
    }

    /// True when no generating 2-cell occurs.
    pub fn is_structural(&self) -> bool {
        self.first_generator().is_none()
    }

    fn first_generator(&self) -> Option<Symbol> {
        match self {
            TwoCellExpr::Gen2(name) => Some(*name),
            TwoCellExpr::VComp(a, b) | TwoCellExpr::HComp2(a, b) | TwoCellExpr::SumCells(a, b) => {
                a.first_generator().or_else(|| b.first_generator())
            }
            TwoCellExpr::Inv(a) => a.first_generator(),
            _ => None,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            TwoCellExpr::SumCells(..) => 1,
            TwoCellExpr::HComp2(..) => 2,
            _ => 3,
        }
    }
}

/// Prints in the surface syntax accepted by the parser.
impl fmt::Display for TwoCellExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TwoCellExpr::*;
        match self {
            Id2(e) => write!(f, "id({e})"),
            Gen2(name) => write!(f, "{name}"),
            VComp(a, b) => write!(f, "vcomp({a}, {b})"),
            Inv(a) => write!(f, "inv({a})"),
            HComp2(a, b) | SumCells(a, b) => {
                let prec = self.precedence();
                let op = if prec == 1 { "+" } else { "*" };
                if a.precedence() < prec {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " {op} ")?;
                if b.precedence() <= prec {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            AssocH(x, y, z) => write!(f, "assoc({x}, {y}, {z})"),
            LUnit(x) => write!(f, "lunit({x})"),
            RUnit(x) => write!(f, "runit({x})"),
            AddAssoc(x, y, z) => write!(f, "addassoc({x}, {y}, {z})"),
            AddUnitL(x) => write!(f, "addunitl({x})"),
            AddUnitR(x) => write!(f, "addunitr({x})"),
            Sym(x, y) => write!(f, "sym({x}, {y})"),
            DistL(x, y, z) => write!(f, "distl({x}, {y}, {z})"),
            DistR(x, y, z) => write!(f, "distr({x}, {y}, {z})"),
            NullL(x, c) => write!(f, "nulll({x}, {c})"),
            NullR(x, a) => write!(f, "nullr({x}, {a})"),
        }
    }
}

impl fmt::Debug for TwoCellExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

fn typed(e: &E, sig: &SmcSignature) -> Result<(ZeroCellId, ZeroCellId)> {
    e.endpoints(sig)
}

fn declared(z: ZeroCellId, sig: &SmcSignature) -> Result<ZeroCellId> {
    if sig.has_zero_cell(z) {
        Ok(z)
    } else {
        Err(Error::ill_typed(
            &Default::default(),
            format!("unknown 0-cell `{z}`"),
        ))
    }
}

/// Source and target of a constructor cell, with the source type-checked.
fn constructor_boundary(
    c: &TwoCellExpr,
    sig: &SmcSignature,
) -> Result<(E, E, (ZeroCellId, ZeroCellId))> {
    use TwoCellExpr::*;
    let (src, tgt) = match c {
        AssocH(f, g, h) => (
            E::hcomp(f.clone(), E::hcomp(g.clone(), h.clone())),
            E::hcomp(E::hcomp(f.clone(), g.clone()), h.clone()),
        ),
        LUnit(f) => {
            let (_, b) = typed(f, sig)?;
            (E::hcomp(E::IdUnit(b), f.clone()), f.clone())
        }
        RUnit(f) => {
            let (a, _) = typed(f, sig)?;
            (E::hcomp(f.clone(), E::IdUnit(a)), f.clone())
        }
        AddAssoc(f, g, h) => (
            E::sum(f.clone(), E::sum(g.clone(), h.clone())),
            E::sum(E::sum(f.clone(), g.clone()), h.clone()),
        ),
        AddUnitL(f) => {
            let (a, b) = typed(f, sig)?;
            (E::sum(E::ZeroUnit(a, b), f.clone()), f.clone())
        }
        AddUnitR(f) => {
            let (a, b) = typed(f, sig)?;
            (E::sum(f.clone(), E::ZeroUnit(a, b)), f.clone())
        }
        Sym(f, g) => (E::sum(f.clone(), g.clone()), E::sum(g.clone(), f.clone())),
        DistL(f, g, h) => (
            E::hcomp(f.clone(), E::sum(g.clone(), h.clone())),
            E::sum(
                E::hcomp(f.clone(), g.clone()),
                E::hcomp(f.clone(), h.clone()),
            ),
        ),
        DistR(f, g, h) => (
            E::hcomp(E::sum(f.clone(), g.clone()), h.clone()),
            E::sum(
                E::hcomp(f.clone(), h.clone()),
                E::hcomp(g.clone(), h.clone()),
            ),
        ),
        NullL(f, c) => {
            let (a, b) = typed(f, sig)?;
            let c = declared(*c, sig)?;
            (E::hcomp(E::ZeroUnit(b, c), f.clone()), E::ZeroUnit(a, c))
        }
        NullR(f, a) => {
            let (b, c) = typed(f, sig)?;
            let a = declared(*a, sig)?;
            (E::hcomp(f.clone(), E::ZeroUnit(a, b)), E::ZeroUnit(a, c))
        }
        Id2(_) | Gen2(_) | VComp(..) | HComp2(..) | SumCells(..) | Inv(_) => {
            unreachable!("not a constructor cell")
        }
    };
    let hom = typed(&src, sig)?;
    Ok((src, tgt, hom))
}

/// Source and target 1-cells of a 2-cell.
pub fn boundary(c: &TwoCellExpr, sig: &SmcSignature) -> Result<(OneCellExpr, OneCellExpr)> {
    use TwoCellExpr::*;
    match c {
        Id2(e) => {
            typed(e, sig)?;
            Ok((e.clone(), e.clone()))
        }
        Gen2(name) => {
            let g = sig
                .gen2(*name)
                .ok_or_else(|| Error::BoundaryMismatch(format!("unknown 2-cell `{name}`")))?;
            Ok((g.src.clone(), g.tgt.clone()))
        }
        VComp(later, earlier) => {
            let (s, m1) = boundary(earlier, sig)?;
            let (m2, t) = boundary(later, sig)?;
            if m1 != m2 {
                return Err(Error::BoundaryMismatch(format!(
                    "vertical composite: `{m1}` is not `{m2}`"
                )));
            }
            Ok((s, t))
        }
        HComp2(outer, inner) => {
            let (a, b) = boundary(outer, sig)?;
            let (c, d) = boundary(inner, sig)?;
            let (os, _) = typed(&a, sig)?;
            let (_, it) = typed(&c, sig)?;
            if os != it {
                return Err(Error::BoundaryMismatch(format!(
                    "horizontal composite: inner ends at `{it}`, outer starts at `{os}`"
                )));
            }
            Ok((E::hcomp(a, c), E::hcomp(b, d)))
        }
        SumCells(left, right) => {
            let (a, b) = boundary(left, sig)?;
            let (c, d) = boundary(right, sig)?;
            let l = typed(&a, sig)?;
            let r = typed(&c, sig)?;
            if l != r {
                return Err(Error::BoundaryMismatch(format!(
                    "sum of non-parallel cells: {}->{} vs {}->{}",
                    l.0, l.1, r.0, r.1
                )));
            }
            Ok((E::sum(a, c), E::sum(b, d)))
        }
        Inv(inner) => {
            if let Some(g) = inner.first_generator() {
                return Err(Error::NotStructural(g));
            }
            let (s, t) = boundary(inner, sig)?;
            Ok((t, s))
        }
        _ => constructor_boundary(c, sig).map(|(s, t, _)| (s, t)),
    }
}

/// How structural cells are read as position maps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Semantics {
    #[default]
    Standard,
    /// Mutation-testing hook: left distributivity read as the identity map.
    /// Unsound on purpose; the verification suites must reject it.
    IdentityDistL,
}

/// A position map between the monomials of two normal forms:
/// `map[i]` is where source monomial `i` lands in the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialBijection {
    source: NormalForm,
    target: NormalForm,
    map: Vec<usize>,
}

impl MonomialBijection {
    /// Checks that `map` is a bijection and that it preserves monomials.
    pub fn new(source: NormalForm, target: NormalForm, map: Vec<usize>) -> Result<Self> {
        let b = MonomialBijection {
            source,
            target,
            map,
        };
        if !b.is_bijection() {
            return Err(Error::BoundaryMismatch(format!(
                "{:?} is not a bijection",
                b.map
            )));
        }
        if !b.is_content_preserving() {
            return Err(Error::BoundaryMismatch(format!(
                "{:?} does not carry [{}] onto [{}]",
                b.map, b.source, b.target
            )));
        }
        Ok(b)
    }

    pub fn identity(nf: NormalForm) -> Self {
        let map = (0..nf.len()).collect();
        MonomialBijection {
            source: nf.clone(),
            target: nf,
            map,
        }
    }

    pub fn source(&self) -> &NormalForm {
        &self.source
    }

    pub fn target(&self) -> &NormalForm {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_bijection(&self) -> bool {
        let n = self.map.len();
        if n != self.source.len() || n != self.target.len() {
            return false;
        }
        let mut seen = vec![false; n];
        for &j in &self.map {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return false;
            }
        }
        true
    }

    pub fn is_content_preserving(&self) -> bool {
        self.map.len() == self.source.len()
            && self
                .map
                .iter()
                .enumerate()
                .all(|(i, &j)| self.target.monomials().get(j) == Some(&self.source.monomials()[i]))
    }

    /// `later ∘ self`.
    pub fn then(&self, later: &MonomialBijection) -> MonomialBijection {
        MonomialBijection {
            source: self.source.clone(),
            target: later.target.clone(),
            map: self.map.iter().map(|&j| later.map[j]).collect(),
        }
    }

    pub fn inverse(&self) -> MonomialBijection {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        MonomialBijection {
            source: self.target.clone(),
            target: self.source.clone(),
            map,
        }
    }
}

struct Sem {
    src: E,
    tgt: E,
    hom: (ZeroCellId, ZeroCellId),
    width: (usize, usize),
    map: Vec<usize>,
}

impl Sem {
    fn then(self, later: Sem) -> Sem {
        Sem {
            src: self.src,
            tgt: later.tgt,
            hom: self.hom,
            width: (self.width.0, later.width.1),
            map: self.map.iter().map(|&j| later.map[j]).collect(),
        }
    }

    fn into_bijection(self, sig: &SmcSignature) -> Result<MonomialBijection> {
        let source = normalize(&self.src, sig)?;
        let target = normalize(&self.tgt, sig)?;
        debug_assert_eq!((source.len(), target.len()), self.width);
        Ok(raw(source, target, self.map))
    }
}

/// The position semantics of a structural 2-cell.
pub fn perm_of(c: &TwoCellExpr, sig: &SmcSignature) -> Result<MonomialBijection> {
    perm_of_with(c, sig, Semantics::Standard)
}

pub fn perm_of_with(
    c: &TwoCellExpr,
    sig: &SmcSignature,
    semantics: Semantics,
) -> Result<MonomialBijection> {
    sem(c, sig, semantics)?.into_bijection(sig)
}

fn raw(source: NormalForm, target: NormalForm, map: Vec<usize>) -> MonomialBijection {
    MonomialBijection {
        source,
        target,
        map,
    }
}

/// Number of monomials in the normal form of a well-typed expression.
fn width(e: &E) -> usize {
    match e {
        E::Gen(_) | E::IdUnit(_) => 1,
        E::ZeroUnit(..) => 0,
        E::HComp(outer, inner) => width(outer).saturating_mul(width(inner)),
        E::Sum(left, right) => width(left).saturating_add(width(right)),
    }
}

fn sem(c: &TwoCellExpr, sig: &SmcSignature, semantics: Semantics) -> Result<Sem> {
    use TwoCellExpr::*;
    match c {
        Id2(e) => {
            let hom = typed(e, sig)?;
            let w = width(e);
            Ok(Sem {
                src: e.clone(),
                tgt: e.clone(),
                hom,
                width: (w, w),
                map: (0..w).collect(),
            })
        }
        Gen2(name) => Err(Error::NotStructural(*name)),
        VComp(later, earlier) => {
            let a = sem(earlier, sig, semantics)?;
            let b = sem(later, sig, semantics)?;
            if a.tgt != b.src {
                return Err(Error::BoundaryMismatch(format!(
                    "vertical composite: `{}` is not `{}`",
                    a.tgt, b.src
                )));
            }
            Ok(a.then(b))
        }
        HComp2(outer, inner) => {
            let o = sem(outer, sig, semantics)?;
            let i = sem(inner, sig, semantics)?;
            if o.hom.0 != i.hom.1 {
                return Err(Error::BoundaryMismatch(format!(
                    "horizontal composite of `{}` after `{}`",
                    o.src, i.src
                )));
            }
            let (width_src, width_tgt) = i.width;
            let mut map = Vec::with_capacity(o.map.len() * i.map.len());
            for &p in &o.map {
                for &q in &i.map {
                    map.push(p * width_tgt + q);
                }
            }
            Ok(Sem {
                src: E::hcomp(o.src, i.src),
                tgt: E::hcomp(o.tgt, i.tgt),
                hom: (i.hom.0, o.hom.1),
                width: (o.width.0 * width_src, o.width.1 * width_tgt),
                map,
            })
        }
        SumCells(left, right) => {
            let l = sem(left, sig, semantics)?;
            let r = sem(right, sig, semantics)?;
            if l.hom != r.hom {
                return Err(Error::BoundaryMismatch(format!(
                    "sum of non-parallel cells `{}` and `{}`",
                    l.src, r.src
                )));
            }
            let offset = l.width.1;
            let mut map = l.map;
            map.extend(r.map.iter().map(|&j| offset + j));
            Ok(Sem {
                src: E::sum(l.src, r.src),
                tgt: E::sum(l.tgt, r.tgt),
                hom: l.hom,
                width: (l.width.0 + r.width.0, l.width.1 + r.width.1),
                map,
            })
        }
        Inv(inner) => {
            if let Some(g) = inner.first_generator() {
                return Err(Error::NotStructural(g));
            }
            let s = sem(inner, sig, semantics)?;
            let mut map = vec![0; s.map.len()];
            for (i, &j) in s.map.iter().enumerate() {
                map[j] = i;
            }
            Ok(Sem {
                src: s.tgt,
                tgt: s.src,
                hom: s.hom,
                width: (s.width.1, s.width.0),
                map,
            })
        }
        _ => {
            let (src, tgt, hom) = constructor_boundary(c, sig)?;
            let map = constructor_map(c, semantics);
            let w = (map.len(), map.len());
            debug_assert_eq!((width(&src), width(&tgt)), w);
            Ok(Sem {
                src,
                tgt,
                hom,
                width: w,
                map,
            })
        }
    }
}

fn constructor_map(c: &TwoCellExpr, semantics: Semantics) -> Vec<usize> {
    use TwoCellExpr::*;
    match c {
        Sym(f, g) => {
            let (nf_, ng) = (width(f), width(g));
            (0..nf_ + ng)
                .map(|i| if i < nf_ { ng + i } else { i - nf_ })
                .collect()
        }
        DistL(f, g, h) if semantics == Semantics::Standard => {
            let (nf_, ng, nh) = (width(f), width(g), width(h));
            let mut map = Vec::with_capacity(nf_ * (ng + nh));
            for i in 0..nf_ {
                for j in 0..ng {
                    map.push(i * ng + j);
                }
                for k in 0..nh {
                    map.push(nf_ * ng + i * nh + k);
                }
            }
            map
        }
        DistL(f, g, h) => (0..width(f) * (width(g) + width(h))).collect(),
        AssocH(f, g, h) => (0..width(f) * width(g) * width(h)).collect(),
        AddAssoc(f, g, h) => (0..width(f) + width(g) + width(h)).collect(),
        DistR(f, g, h) => (0..(width(f) + width(g)) * width(h)).collect(),
        LUnit(f) | RUnit(f) | AddUnitL(f) | AddUnitR(f) => (0..width(f)).collect(),
        NullL(..) | NullR(..) => Vec::new(),
        Id2(_) | Gen2(_) | VComp(..) | HComp2(..) | SumCells(..) | Inv(_) => unreachable!(),
    }
}

/// The formal inverse of a structural cell: constructors are wrapped in
/// `Inv`, composites are inverted componentwise (vertical ones reversed).
pub fn invert(c: &TwoCellExpr) -> Result<TwoCellExpr> {
    use TwoCellExpr::*;
    if let Some(g) = c.first_generator() {
        return Err(Error::NotStructural(g));
    }
    Ok(match c {
        Id2(_) => c.clone(),
        Inv(inner) => (**inner).clone(),
        VComp(later, earlier) => VComp(Arc::new(invert(earlier)?), Arc::new(invert(later)?)),
        HComp2(a, b) => HComp2(Arc::new(invert(a)?), Arc::new(invert(b)?)),
        SumCells(a, b) => SumCells(Arc::new(invert(a)?), Arc::new(invert(b)?)),
        Gen2(_) => unreachable!(),
        _ => Inv(Arc::new(c.clone())),
    })
}

/// Outcome of comparing two parallel paths of structural cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub commutes: bool,
    pub boundary: (OneCellExpr, OneCellExpr),
    pub path1_perm: MonomialBijection,
    pub path2_perm: MonomialBijection,
}

#[derive(Serialize)]
struct BoundaryRecord {
    source: String,
    target: String,
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    commutes: bool,
    boundary: BoundaryRecord,
    path1_perm: &'a [usize],
    path2_perm: &'a [usize],
}

impl Serialize for CheckReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CheckRecord {
            commutes: self.commutes,
            boundary: BoundaryRecord {
                source: self.boundary.0.to_string(),
                target: self.boundary.1.to_string(),
            },
            path1_perm: self.path1_perm.map(),
            path2_perm: self.path2_perm.map(),
        }
        .serialize(s)
    }
}

fn path_sem(path: &[TwoCellExpr], sig: &SmcSignature, semantics: Semantics) -> Result<Sem> {
    let (first, rest) = path
        .split_first()
        .ok_or_else(|| Error::BoundaryMismatch("empty path".into()))?;
    let mut acc = sem(first, sig, semantics)?;
    for (k, cell) in rest.iter().enumerate() {
        let next = sem(cell, sig, semantics)?;
        if acc.tgt != next.src {
            return Err(Error::BoundaryMismatch(format!(
                "step {} of the path starts at `{}` but the previous step ends at `{}`",
                k + 2,
                next.src,
                acc.tgt
            )));
        }
        acc = acc.then(next);
    }
    Ok(acc)
}

/// Decides whether two paths of structural cells with a common outer
/// boundary induce the same position map. Each path lists its cells in the
/// order they are applied.
pub fn check_diagram(
    path1: &[TwoCellExpr],
    path2: &[TwoCellExpr],
    sig: &SmcSignature,
) -> Result<CheckReport> {
    check_diagram_with(path1, path2, sig, Semantics::Standard)
}

pub fn check_diagram_with(
    path1: &[TwoCellExpr],
    path2: &[TwoCellExpr],
    sig: &SmcSignature,
    semantics: Semantics,
) -> Result<CheckReport> {
    let p1 = path_sem(path1, sig, semantics)?;
    let p2 = path_sem(path2, sig, semantics)?;
    if p1.src != p2.src || p1.tgt != p2.tgt {
        return Err(Error::BoundaryMismatch(format!(
            "paths have different boundaries: `{}` => `{}` vs `{}` => `{}`",
            p1.src, p1.tgt, p2.src, p2.tgt
        )));
    }
    let source = normalize(&p1.src, sig)?;
    let target = normalize(&p1.tgt, sig)?;
    let commutes = p1.map == p2.map;
    Ok(CheckReport {
        commutes,
        boundary: (p1.src, p1.tgt),
        path1_perm: raw(source.clone(), target.clone(), p1.map),
        path2_perm: raw(source, target, p2.map),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use TwoCellExpr as C;

    fn sig() -> SmcSignature {
        SmcSignature::standard()
    }

    fn g(name: &str) -> E {
        E::gen(name)
    }

    #[test]
    fn boundary_of_constructors() {
        let (s, t) = boundary(&C::Sym(g("f"), g("f'")), &sig()).unwrap();
        assert_eq!(
            (s.to_string(), t.to_string()),
            ("f + f'".into(), "f' + f".into())
        );
        let (s, t) = boundary(&C::DistL(g("g"), g("f"), g("f'")), &sig()).unwrap();
        assert_eq!(s.to_string(), "g * (f + f')");
        assert_eq!(t.to_string(), "g * f + g * f'");
        let (s, t) = boundary(&C::NullL(g("f"), "c".into()), &sig()).unwrap();
        assert_eq!(
            (s.to_string(), t.to_string()),
            ("0@b->c * f".into(), "0@a->c".into())
        );
    }

    #[test]
    fn boundary_of_inverse_pair() {
        let c = C::vcomp(C::LUnit(g("f")), C::inv(C::LUnit(g("f"))));
        assert_eq!(boundary(&c, &sig()).unwrap(), (g("f"), g("f")));
    }

    #[test]
    fn vertical_mismatch_is_reported() {
        let c = C::VComp(
            Arc::new(C::LUnit(g("f"))),
            Arc::new(C::Sym(g("f"), g("f'"))),
        );
        assert!(matches!(
            boundary(&c, &sig()),
            Err(Error::BoundaryMismatch(_))
        ));
        assert!(matches!(
            perm_of(&c, &sig()),
            Err(Error::BoundaryMismatch(_))
        ));
    }

    #[test]
    fn ill_typed_constructor_arguments() {
        let c = C::DistL(g("f"), g("f"), g("f'"));
        assert!(matches!(boundary(&c, &sig()), Err(Error::IllTyped { .. })));
        assert!(matches!(perm_of(&c, &sig()), Err(Error::IllTyped { .. })));
    }

    #[test]
    fn generators_are_not_structural() {
        let mut s = sig();
        s.add_gen2("alpha", g("f"), g("f'")).unwrap();
        let alpha = C::gen("alpha");
        assert!(boundary(&alpha, &s).is_ok());
        assert!(matches!(perm_of(&alpha, &s), Err(Error::NotStructural(_))));
        assert!(matches!(invert(&alpha), Err(Error::NotStructural(_))));
        assert!(matches!(
            boundary(&C::inv(alpha), &s),
            Err(Error::NotStructural(_))
        ));
    }

    #[test]
    fn sym_of_singletons_is_a_transposition() {
        let p = perm_of(&C::Sym(g("f"), g("f'")), &sig()).unwrap();
        assert_eq!(p.map(), &[1, 0]);
        assert!(p.is_content_preserving());
    }

    #[test]
    fn distl_with_single_outer_monomial_is_identity() {
        let p = perm_of(&C::DistL(g("g"), g("f"), g("f'")), &sig()).unwrap();
        assert_eq!(p.map(), &[0, 1]);
    }

    #[test]
    fn distl_shuffle_matches_brute_force() {
        let x = E::sum(g("g"), g("g'"));
        let p = perm_of(&C::DistL(x.clone(), g("f"), g("f'")), &sig()).unwrap();
        // Oracle: expand both sides independently and match equal monomials.
        let src: Vec<String> = ["g", "g'"]
            .iter()
            .flat_map(|o| ["f", "f'"].iter().map(move |i| format!("{o}.{i}")))
            .collect();
        let tgt: Vec<String> = ["f", "f'"]
            .iter()
            .flat_map(|i| ["g", "g'"].iter().map(move |o| format!("{o}.{i}")))
            .collect();
        let oracle: Vec<usize> = src
            .iter()
            .map(|m| tgt.iter().position(|t| t == m).unwrap())
            .collect();
        assert_eq!(oracle, vec![0, 2, 1, 3]);
        assert_eq!(p.map(), oracle.as_slice());
        assert_eq!(p.source().to_string(), src.join(" + "));
        assert_eq!(p.target().to_string(), tgt.join(" + "));
    }

    #[test]
    fn invert_examples() {
        let sym = C::Sym(g("f"), g("f'"));
        let inv = invert(&sym).unwrap();
        assert_eq!(inv, C::Inv(Arc::new(sym.clone())));
        assert_eq!(
            perm_of(&inv, &sig()).unwrap(),
            perm_of(&sym, &sig()).unwrap().inverse()
        );
        assert_eq!(invert(&C::Id2(g("f"))).unwrap(), C::Id2(g("f")));
        let a = C::LUnit(g("f"));
        let b = C::inv(C::RUnit(g("f")));
        let v = C::VComp(Arc::new(b.clone()), Arc::new(a.clone()));
        assert_eq!(
            invert(&v).unwrap(),
            C::VComp(Arc::new(invert(&a).unwrap()), Arc::new(invert(&b).unwrap()))
        );
    }

    #[test]
    fn symmetry_squares_to_identity() {
        let ff = E::sum(g("f"), g("f'"));
        let r = check_diagram(
            &[C::Sym(g("f"), g("f'")), C::Sym(g("f'"), g("f"))],
            &[C::Id2(ff)],
            &sig(),
        )
        .unwrap();
        assert!(r.commutes);
    }

    #[test]
    fn symmetry_on_repeated_summand_is_not_identity() {
        let r = check_diagram(
            &[C::Sym(g("f"), g("f"))],
            &[C::Id2(E::sum(g("f"), g("f")))],
            &sig(),
        )
        .unwrap();
        assert!(!r.commutes);
        assert_eq!(r.path1_perm.map(), &[1, 0]);
        assert_eq!(r.path2_perm.map(), &[0, 1]);
    }

    #[test]
    fn check_rejects_different_boundaries() {
        let err = check_diagram(&[C::Id2(g("f"))], &[C::Id2(g("f'"))], &sig()).unwrap_err();
        assert!(matches!(err, Error::BoundaryMismatch(_)));
        let err = check_diagram(&[], &[C::Id2(g("f'"))], &sig()).unwrap_err();
        assert!(matches!(err, Error::BoundaryMismatch(_)));
    }

    #[test]
    fn report_serializes_to_the_documented_record() {
        let r = check_diagram(
            &[C::Sym(g("f"), g("f"))],
            &[C::Id2(E::sum(g("f"), g("f")))],
            &sig(),
        )
        .unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"commutes":false,"boundary":{"source":"f + f","target":"f + f"},"path1_perm":[1,0],"path2_perm":[0,1]}"#
        );
    }

    #[test]
    fn horizontal_composite_is_the_product_map() {
        let sym_g = C::Sym(g("g"), g("g'"));
        let sym_f = C::Sym(g("f"), g("f'"));
        let p = perm_of(&C::hcomp_cells(sym_g, sym_f), &sig()).unwrap();
        // (g+g')*(f+f') = [g.f, g.f', g'.f, g'.f'] onto (g'+g)*(f'+f)
        assert_eq!(p.target().to_string(), "g'.f' + g'.f + g.f' + g.f");
        assert_eq!(p.map(), &[3, 2, 1, 0]);
        assert!(p.is_content_preserving());
    }
}
