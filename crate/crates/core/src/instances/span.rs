use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use super::Model;
use crate::error::{Error, Result};
use crate::expr::OneCellExpr;
use crate::signature::{SmcSignature, ZeroCellId};
use crate::symbol::Symbol;
use crate::twocell::{boundary, TwoCellExpr};

/// Elements of finite sets. Composite apexes are built from pairs and
/// coproduct tags, so every element records how it was formed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Atom(Symbol),
    Pair(Arc<Elem>, Arc<Elem>),
    Left(Arc<Elem>),
    Right(Arc<Elem>),
}

impl Elem {
    pub fn atom(name: &str) -> Self {
        Elem::Atom(Symbol::new(name))
    }

    pub fn pair(x: Elem, y: Elem) -> Self {
        Elem::Pair(Arc::new(x), Arc::new(y))
    }

    pub fn left(x: Elem) -> Self {
        Elem::Left(Arc::new(x))
    }

    pub fn right(x: Elem) -> Self {
        Elem::Right(Arc::new(x))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Atom(s) => write!(f, "{s}"),
            Elem::Pair(x, y) => write!(f, "({x},{y})"),
            Elem::Left(x) => write!(f, "inl({x})"),
            Elem::Right(x) => write!(f, "inr({x})"),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set presented as a duplicate-free ordered sequence.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FinSetObj {
    elements: Vec<Elem>,
}

impl FinSetObj {
    pub fn new(elements: Vec<Elem>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for x in &elements {
            if !seen.insert(x) {
                return Err(Error::InvalidInstance(format!("duplicate element {x}")));
            }
        }
        Ok(FinSetObj { elements })
    }

    pub fn from_atoms(names: &[&str]) -> Result<Self> {
        Self::new(names.iter().map(|n| Elem::atom(n)).collect())
    }

    pub fn empty() -> Self {
        FinSetObj::default()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: &Elem) -> Option<usize> {
        self.elements.iter().position(|y| y == x)
    }

    fn index(&self) -> HashMap<&Elem, usize> {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect()
    }
}

impl fmt::Display for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A span `src <- apex -> tgt`; legs are given as positions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpanCell {
    src: FinSetObj,
    tgt: FinSetObj,
    apex: FinSetObj,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl SpanCell {
    pub fn new(
        src: FinSetObj,
        tgt: FinSetObj,
        apex: FinSetObj,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self> {
        if left.len() != apex.len() || right.len() != apex.len() {
            return Err(Error::InvalidInstance(
                "legs must be defined on every apex element".into(),
            ));
        }
        if left.iter().any(|&i| i >= src.len()) || right.iter().any(|&i| i >= tgt.len()) {
            return Err(Error::InvalidInstance("leg leaves its codomain".into()));
        }
        Ok(SpanCell {
            src,
            tgt,
            apex,
            left,
            right,
        })
    }

    /// Builds a span from `(apex element, left image, right image)` rows.
    pub fn from_table(
        src: &FinSetObj,
        tgt: &FinSetObj,
        rows: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let mut apex = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (x, l, r) in rows {
            apex.push(Elem::atom(x));
            left.push(
                src.position(&Elem::atom(l))
                    .ok_or_else(|| Error::InvalidInstance(format!("{l} is not in {src}")))?,
            );
            right.push(
                tgt.position(&Elem::atom(r))
                    .ok_or_else(|| Error::InvalidInstance(format!("{r} is not in {tgt}")))?,
            );
        }
        Self::new(src.clone(), tgt.clone(), FinSetObj::new(apex)?, left, right)
    }

    pub fn identity(a: &FinSetObj) -> Self {
        let ids: Vec<usize> = (0..a.len()).collect();
        SpanCell {
            src: a.clone(),
            tgt: a.clone(),
            apex: a.clone(),
            left: ids.clone(),
            right: ids,
        }
    }

    pub fn zero(src: &FinSetObj, tgt: &FinSetObj) -> Self {
        SpanCell {
            src: src.clone(),
            tgt: tgt.clone(),
            apex: FinSetObj::empty(),
            left: vec![],
            right: vec![],
        }
    }

    pub fn src(&self) -> &FinSetObj {
        &self.src
    }

    pub fn tgt(&self) -> &FinSetObj {
        &self.tgt
    }

    pub fn apex(&self) -> &FinSetObj {
        &self.apex
    }

    pub fn left_leg(&self) -> &[usize] {
        &self.left
    }

    pub fn right_leg(&self) -> &[usize] {
        &self.right
    }
}

impl fmt::Display for SpanCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span {} -> {} [", self.src, self.tgt)?;
        for (i, x) in self.apex.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{} <- {x} -> {}",
                self.src.elements[self.left[i]], self.tgt.elements[self.right[i]]
            )?;
        }
        write!(f, "]")
    }
}

/// Order in which pullback pairs are listed. `SourceMajor` is the
/// contract; `TargetMajor` exists only as a mutant for the test suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairOrder {
    #[default]
    SourceMajor,
    TargetMajor,
}

pub fn span_compose(t: &SpanCell, s: &SpanCell) -> Result<SpanCell> {
    span_compose_with(t, s, PairOrder::SourceMajor)
}

pub fn span_compose_with(t: &SpanCell, s: &SpanCell, order: PairOrder) -> Result<SpanCell> {
    if s.tgt != t.src {
        return Err(Error::EndpointMismatch(format!(
            "cannot compose a span out of {} after a span into {}",
            t.src, s.tgt
        )));
    }
    let mut pairs = Vec::new();
    match order {
        PairOrder::SourceMajor => {
            for i in 0..s.apex.len() {
                for j in 0..t.apex.len() {
                    if s.right[i] == t.left[j] {
                        pairs.push((i, j));
                    }
                }
            }
        }
        PairOrder::TargetMajor => {
            for j in 0..t.apex.len() {
                for i in 0..s.apex.len() {
                    if s.right[i] == t.left[j] {
                        pairs.push((i, j));
                    }
                }
            }
        }
    }
    Ok(SpanCell {
        src: s.src.clone(),
        tgt: t.tgt.clone(),
        apex: FinSetObj {
            elements: pairs
                .iter()
                .map(|&(i, j)| Elem::pair(s.apex.elements[i].clone(), t.apex.elements[j].clone()))
                .collect(),
        },
        left: pairs.iter().map(|&(i, _)| s.left[i]).collect(),
        right: pairs.iter().map(|&(_, j)| t.right[j]).collect(),
    })
}

pub fn span_sum(s1: &SpanCell, s2: &SpanCell) -> Result<SpanCell> {
    if s1.src != s2.src || s1.tgt != s2.tgt {
        return Err(Error::EndpointMismatch(format!(
            "cannot add spans {} -> {} and {} -> {}",
            s1.src, s1.tgt, s2.src, s2.tgt
        )));
    }
    let elements = s1
        .apex
        .elements
        .iter()
        .map(|x| Elem::left(x.clone()))
        .chain(s2.apex.elements.iter().map(|y| Elem::right(y.clone())))
        .collect();
    Ok(SpanCell {
        src: s1.src.clone(),
        tgt: s1.tgt.clone(),
        apex: FinSetObj { elements },
        left: s1.left.iter().chain(&s2.left).copied().collect(),
        right: s1.right.iter().chain(&s2.right).copied().collect(),
    })
}

/// A map of spans: a function between apexes over the same endpoints,
/// given by positions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpanMorphism {
    source: SpanCell,
    target: SpanCell,
    map: Vec<usize>,
}

impl SpanMorphism {
    pub fn new(source: SpanCell, target: SpanCell, map: Vec<usize>) -> Result<Self> {
        if source.src != target.src || source.tgt != target.tgt {
            return Err(Error::InvalidInstance(
                "span morphism between non-parallel spans".into(),
            ));
        }
        if map.len() != source.apex.len() {
            return Err(Error::InvalidInstance(
                "span morphism must be defined on the whole apex".into(),
            ));
        }
        for (i, &k) in map.iter().enumerate() {
            if k >= target.apex.len()
                || source.left[i] != target.left[k]
                || source.right[i] != target.right[k]
            {
                return Err(Error::InvalidInstance(format!(
                    "apex map sends {} to an element over different legs",
                    source.apex.elements[i]
                )));
            }
        }
        Ok(SpanMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(s: &SpanCell) -> Self {
        SpanMorphism {
            source: s.clone(),
            target: s.clone(),
            map: (0..s.apex.len()).collect(),
        }
    }

    /// Defines a morphism by its action on apex elements.
    fn by_elements(
        source: SpanCell,
        target: SpanCell,
        f: impl Fn(&Elem) -> Option<Elem>,
    ) -> Result<Self> {
        let index = target.apex.index();
        let mut map = Vec::with_capacity(source.apex.len());
        for x in &source.apex.elements {
            let k = f(x)
                .and_then(|y| index.get(&y).copied())
                .ok_or_else(|| Error::InvalidInstance(format!("no image for apex element {x}")))?;
            map.push(k);
        }
        drop(index);
        Self::new(source, target, map)
    }

    pub fn source(&self) -> &SpanCell {
        &self.source
    }

    pub fn target(&self) -> &SpanCell {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.apex.len() != self.target.apex.len() {
            return false;
        }
        let mut hit = vec![false; self.map.len()];
        self.map
            .iter()
            .all(|&k| !std::mem::replace(&mut hit[k], true))
    }

    pub fn then(&self, later: &SpanMorphism) -> Result<SpanMorphism> {
        if self.target != later.source {
            return Err(Error::BoundaryMismatch(
                "span morphisms do not compose".into(),
            ));
        }
        Ok(SpanMorphism {
            source: self.source.clone(),
            target: later.target.clone(),
            map: self.map.iter().map(|&k| later.map[k]).collect(),
        })
    }

    pub fn inverse(&self) -> Result<SpanMorphism> {
        if !self.is_bijective() {
            return Err(Error::InvalidInstance(
                "only bijective span morphisms are invertible".into(),
            ));
        }
        let mut map = vec![0; self.map.len()];
        for (i, &k) in self.map.iter().enumerate() {
            map[k] = i;
        }
        Ok(SpanMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map,
        })
    }

    fn image(&self, x: &Elem) -> Option<Elem> {
        let i = self.source.apex.position(x)?;
        Some(self.target.apex.elements[self.map[i]].clone())
    }

    /// `α * β : α.source ∘ β.source ⇒ α.target ∘ β.target`.
    pub fn hcomp(
        outer: &SpanMorphism,
        inner: &SpanMorphism,
        order: PairOrder,
    ) -> Result<SpanMorphism> {
        let source = span_compose_with(&outer.source, &inner.source, order)?;
        let target = span_compose_with(&outer.target, &inner.target, order)?;
        Self::by_elements(source, target, |x| match x {
            Elem::Pair(c, a) => Some(Elem::pair(inner.image(c)?, outer.image(a)?)),
            _ => None,
        })
    }

    pub fn sum(left: &SpanMorphism, right: &SpanMorphism) -> Result<SpanMorphism> {
        let source = span_sum(&left.source, &right.source)?;
        let target = span_sum(&left.target, &right.target)?;
        let n = left.target.apex.len();
        let map = left
            .map
            .iter()
            .copied()
            .chain(right.map.iter().map(|&k| n + k))
            .collect();
        Self::new(source, target, map)
    }
}

impl fmt::Display for SpanMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &k) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{} => {}",
                self.source.apex.elements[i], self.target.apex.elements[k]
            )?;
        }
        write!(f, "]")
    }
}

/// Spans of finite sets: 0-cells are sets, 1-cells spans, and 2-cells
/// maps of spans.
#[derive(Clone, Debug, Default)]
pub struct SpanInstance {
    sets: IndexMap<ZeroCellId, FinSetObj>,
    spans: HashMap<Symbol, SpanCell>,
    gen2: HashMap<Symbol, Vec<usize>>,
    order: PairOrder,
}

impl SpanInstance {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_order(mut self, order: PairOrder) -> Self {
        self.order = order;
        self
    }

    pub fn order(&self) -> PairOrder {
        self.order
    }

    pub fn set_zero_cell(&mut self, a: &str, set: FinSetObj) -> &mut Self {
        self.sets.insert(ZeroCellId::new(a), set);
        self
    }

    pub fn set_gen1(&mut self, f: &str, span: SpanCell) -> &mut Self {
        self.spans.insert(Symbol::new(f), span);
        self
    }

    /// Interprets a generating 2-cell by its apex map.
    pub fn set_gen2(&mut self, name: &str, map: Vec<usize>) -> &mut Self {
        self.gen2.insert(Symbol::new(name), map);
        self
    }

    pub fn zero_cell(&self, a: ZeroCellId) -> Result<&FinSetObj> {
        self.sets
            .get(&a)
            .ok_or_else(|| Error::MissingAssignment(a.to_string()))
    }

    pub fn gen1(&self, f: Symbol) -> Option<&SpanCell> {
        self.spans.get(&f)
    }

    /// Checks that every assignment sits over the sets assigned to the
    /// generator's endpoints.
    pub fn validate(&self, sig: &SmcSignature) -> Result<()> {
        for g in sig.gen1s() {
            let Some(span) = self.spans.get(&g.name) else {
                continue;
            };
            if span.src != *self.zero_cell(g.src)? || span.tgt != *self.zero_cell(g.tgt)? {
                return Err(Error::InvalidInstance(format!(
                    "span for {} does not run {} -> {}",
                    g.name, g.src, g.tgt
                )));
            }
        }
        for g in sig.gen2s() {
            if self.gen2.contains_key(&g.name) {
                self.eval_two_cell(&TwoCellExpr::Gen2(g.name), sig)?;
            }
        }
        Ok(())
    }

    fn eval(&self, e: &OneCellExpr) -> Result<SpanCell> {
        Ok(match e {
            OneCellExpr::Gen(f) => self
                .spans
                .get(f)
                .cloned()
                .ok_or_else(|| Error::MissingAssignment(f.to_string()))?,
            OneCellExpr::IdUnit(a) => SpanCell::identity(self.zero_cell(*a)?),
            OneCellExpr::ZeroUnit(a, b) => SpanCell::zero(self.zero_cell(*a)?, self.zero_cell(*b)?),
            OneCellExpr::HComp(outer, inner) => {
                span_compose_with(&self.eval(outer)?, &self.eval(inner)?, self.order)?
            }
            OneCellExpr::Sum(l, r) => span_sum(&self.eval(l)?, &self.eval(r)?)?,
        })
    }

    fn structural(&self, c: &TwoCellExpr, sig: &SmcSignature) -> Result<SpanMorphism> {
        use TwoCellExpr::*;
        let (src, tgt) = boundary(c, sig)?;
        let source = self.eval(&src)?;
        let target = self.eval(&tgt)?;
        let strip_pair_left = |x: &Elem| match x {
            Elem::Pair(_, y) => Some((**y).clone()),
            _ => None,
        };
        match c {
            AssocH(..) => SpanMorphism::by_elements(source, target, |x| match x {
                Elem::Pair(rs, t) => match &**rs {
                    Elem::Pair(r, s) => Some(Elem::Pair(
                        r.clone(),
                        Arc::new(Elem::Pair(s.clone(), t.clone())),
                    )),
                    _ => None,
                },
                _ => None,
            }),
            LUnit(_) => SpanMorphism::by_elements(source, target, |x| match x {
                Elem::Pair(y, _) => Some((**y).clone()),
                _ => None,
            }),
            RUnit(_) => SpanMorphism::by_elements(source, target, strip_pair_left),
            AddAssoc(..) => SpanMorphism::by_elements(source, target, |x| match x {
                Elem::Left(a) => Some(Elem::left(Elem::Left(a.clone()))),
                Elem::Right(bc) => match &**bc {
                    Elem::Left(b) => Some(Elem::left(Elem::Right(b.clone()))),
                    Elem::Right(c) => Some(Elem::Right(c.clone())),
                    _ => None,
                },
                _ => None,
            }),
            AddUnitL(_) => SpanMorphism::by_elements(source, target, |x| match x {
                Elem::Right(y) => Some((**y).clone()),
                _ => None,
            }),
            AddUnitR(_) => SpanMorphism::by_elements(source, target, |x| match x {
                Elem::Left(y) => Some((**y).clone()),
                _ => None,
            }),
            Sym(..) => SpanMorphism::by_elements(source, target, |x| match x {
                Elem::Left(y) => Some(Elem::Right(y.clone())),
                Elem::Right(y) => Some(Elem::Left(y.clone())),
                _ => None,
            }),
            DistL(..) => SpanMorphism::by_elements(source, target, |x| match x {
                Elem::Pair(gh, y) => match &**gh {
                    Elem::Left(g) => Some(Elem::left(Elem::Pair(g.clone(), y.clone()))),
                    Elem::Right(h) => Some(Elem::right(Elem::Pair(h.clone(), y.clone()))),
                    _ => None,
                },
                _ => None,
            }),
            DistR(..) => SpanMorphism::by_elements(source, target, |x| match x {
                Elem::Pair(y, fg) => match &**fg {
                    Elem::Left(f) => Some(Elem::left(Elem::Pair(y.clone(), f.clone()))),
                    Elem::Right(g) => Some(Elem::right(Elem::Pair(y.clone(), g.clone()))),
                    _ => None,
                },
                _ => None,
            }),
            NullL(..) | NullR(..) => SpanMorphism::by_elements(source, target, |_| None),
            _ => unreachable!("not a structural constructor"),
        }
    }
}

impl Model for SpanInstance {
    type OneCell = SpanCell;
    type TwoCell = SpanMorphism;

    fn eval_one_cell(&self, e: &OneCellExpr, sig: &SmcSignature) -> Result<SpanCell> {
        e.endpoints(sig)?;
        self.eval(e)
    }

    fn eval_two_cell(&self, c: &TwoCellExpr, sig: &SmcSignature) -> Result<SpanMorphism> {
        use TwoCellExpr::*;
        match c {
            Id2(e) => Ok(SpanMorphism::identity(&self.eval_one_cell(e, sig)?)),
            Gen2(name) => {
                let (src, tgt) = boundary(c, sig)?;
                let map = self
                    .gen2
                    .get(name)
                    .ok_or_else(|| Error::MissingAssignment(name.to_string()))?;
                SpanMorphism::new(self.eval(&src)?, self.eval(&tgt)?, map.clone())
            }
            VComp(later, earlier) => {
                let a = self.eval_two_cell(earlier, sig)?;
                let b = self.eval_two_cell(later, sig)?;
                a.then(&b)
                    .map_err(|_| Error::BoundaryMismatch(format!("in `{c}`")))
            }
            HComp2(outer, inner) => SpanMorphism::hcomp(
                &self.eval_two_cell(outer, sig)?,
                &self.eval_two_cell(inner, sig)?,
                self.order,
            ),
            SumCells(l, r) => {
                SpanMorphism::sum(&self.eval_two_cell(l, sig)?, &self.eval_two_cell(r, sig)?)
            }
            Inv(x) => {
                boundary(c, sig)?;
                self.eval_two_cell(x, sig)?.inverse()
            }
            _ => self.structural(c, sig),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use OneCellExpr as E;

    fn b() -> FinSetObj {
        FinSetObj::from_atoms(&["1", "2"]).unwrap()
    }

    fn one() -> FinSetObj {
        FinSetObj::from_atoms(&["p"]).unwrap()
    }

    #[test]
    fn pullback_keeps_matching_pairs() {
        let s = SpanCell::from_table(&one(), &b(), &[("x1", "p", "1"), ("x2", "p", "2")]).unwrap();
        let t = SpanCell::from_table(&b(), &one(), &[("y", "1", "p")]).unwrap();
        let ts = span_compose(&t, &s).unwrap();
        assert_eq!(
            ts.apex().elements(),
            &[Elem::pair(Elem::atom("x1"), Elem::atom("y"))]
        );
        assert_eq!(ts.left_leg(), &[0]);
        assert_eq!(ts.right_leg(), &[0]);
        let empty = SpanCell::zero(&b(), &one());
        assert!(span_compose(&empty, &s).unwrap().apex().is_empty());
        assert!(matches!(
            span_compose(&s, &s),
            Err(Error::EndpointMismatch(_))
        ));
    }

    #[test]
    fn pair_order_is_source_major() {
        let s =
            SpanCell::from_table(&one(), &one(), &[("x1", "p", "p"), ("x2", "p", "p")]).unwrap();
        let t =
            SpanCell::from_table(&one(), &one(), &[("y1", "p", "p"), ("y2", "p", "p")]).unwrap();
        let names = |sp: &SpanCell| {
            sp.apex()
                .elements()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(
            names(&span_compose(&t, &s).unwrap()),
            ["(x1,y1)", "(x1,y2)", "(x2,y1)", "(x2,y2)"]
        );
        assert_eq!(
            names(&span_compose_with(&t, &s, PairOrder::TargetMajor).unwrap()),
            ["(x1,y1)", "(x2,y1)", "(x1,y2)", "(x2,y2)"]
        );
    }

    #[test]
    fn sum_is_blockwise() {
        let s1 = SpanCell::from_table(&one(), &b(), &[("x1", "p", "1"), ("x2", "p", "2")]).unwrap();
        let s2 = SpanCell::from_table(
            &one(),
            &b(),
            &[("z1", "p", "2"), ("z2", "p", "2"), ("z3", "p", "1")],
        )
        .unwrap();
        let s = span_sum(&s1, &s2).unwrap();
        assert_eq!(s.apex().len(), 5);
        assert_eq!(s.right_leg(), &[0, 1, 1, 1, 0]);
        assert_eq!(s.apex().elements()[2], Elem::right(Elem::atom("z1")));
    }

    fn instance() -> (SmcSignature, SpanInstance) {
        let sig = SmcSignature::from_decls(
            &["a", "b"],
            &[("f", "a", "b"), ("g", "b", "b"), ("h", "b", "b")],
        )
        .unwrap();
        let mut m = SpanInstance::new();
        m.set_zero_cell("a", one()).set_zero_cell("b", b());
        m.set_gen1(
            "f",
            SpanCell::from_table(&one(), &b(), &[("x1", "p", "1"), ("x2", "p", "2")]).unwrap(),
        );
        m.set_gen1(
            "g",
            SpanCell::from_table(&b(), &b(), &[("y1", "1", "2"), ("y2", "2", "2")]).unwrap(),
        );
        m.set_gen1(
            "h",
            SpanCell::from_table(&b(), &b(), &[("z", "2", "1")]).unwrap(),
        );
        m.validate(&sig).unwrap();
        (sig, m)
    }

    #[test]
    fn symmetry_swaps_blocks() {
        let (sig, m) = instance();
        let c = TwoCellExpr::Sym(E::gen("g"), E::gen("h"));
        let alpha = m.eval_two_cell(&c, &sig).unwrap();
        assert_eq!(alpha.map(), &[1, 2, 0]);
        assert!(alpha.is_bijective());
    }

    #[test]
    fn unitor_is_canonical_bijection() {
        let (sig, m) = instance();
        let c = TwoCellExpr::LUnit(E::gen("f"));
        let alpha = m.eval_two_cell(&c, &sig).unwrap();
        assert_eq!(alpha.map(), &[0, 1]);
        assert_eq!(alpha.target(), m.gen1(Symbol::new("f")).unwrap());
    }

    #[test]
    fn distributivity_against_enumeration() {
        let (sig, m) = instance();
        let c = TwoCellExpr::DistL(E::gen("g"), E::gen("g"), E::gen("h"));
        let alpha = m.eval_two_cell(&c, &sig).unwrap();
        assert!(alpha.is_bijective());
        // Independently match the pairs of g∘(g⊕h) with those of g∘g ⊕ g∘h.
        let gs = m.gen1(Symbol::new("g")).unwrap();
        let hs = m.gen1(Symbol::new("h")).unwrap();
        let left = span_compose(gs, &span_sum(gs, hs).unwrap()).unwrap();
        let right = span_sum(
            &span_compose(gs, gs).unwrap(),
            &span_compose(gs, hs).unwrap(),
        )
        .unwrap();
        let strip = |x: &Elem| match x {
            Elem::Pair(a, y) => match &**a {
                Elem::Left(u) | Elem::Right(u) => (u.to_string(), y.to_string()),
                _ => unreachable!(),
            },
            Elem::Left(p) | Elem::Right(p) => match &**p {
                Elem::Pair(u, y) => (u.to_string(), y.to_string()),
                _ => unreachable!(),
            },
            _ => unreachable!(),
        };
        for (i, &k) in alpha.map().iter().enumerate() {
            assert_eq!(
                strip(&left.apex().elements()[i]),
                strip(&right.apex().elements()[k])
            );
        }
    }

    #[test]
    fn unit_tag_stripping() {
        let (sig, m) = instance();
        let c = TwoCellExpr::AddUnitL(E::gen("g"));
        let alpha = m.eval_two_cell(&c, &sig).unwrap();
        assert_eq!(
            alpha.source().apex().elements()[0],
            Elem::right(Elem::atom("y1"))
        );
        assert_eq!(alpha.map(), &[0, 1]);
    }

    #[test]
    fn generator_two_cells_are_checked() {
        let mut sig =
            SmcSignature::from_decls(&["a"], &[("f", "a", "a"), ("g", "a", "a")]).unwrap();
        sig.add_gen2("swap", E::gen("f"), E::gen("g")).unwrap();
        let mut m = SpanInstance::new();
        m.set_zero_cell("a", one());
        m.set_gen1(
            "f",
            SpanCell::from_table(&one(), &one(), &[("x", "p", "p"), ("y", "p", "p")]).unwrap(),
        );
        m.set_gen1(
            "g",
            SpanCell::from_table(&one(), &one(), &[("u", "p", "p")]).unwrap(),
        );
        let c = TwoCellExpr::gen("swap");
        assert!(matches!(
            m.eval_two_cell(&c, &sig),
            Err(Error::MissingAssignment(_))
        ));
        m.set_gen2("swap", vec![0, 0]);
        let alpha = m.eval_two_cell(&c, &sig).unwrap();
        assert!(!alpha.is_bijective());
        m.set_gen2("swap", vec![0, 3]);
        assert!(m.validate(&sig).is_err());
    }
}
