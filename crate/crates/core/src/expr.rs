//! The 1-cell expression language: generators, the horizontal unit `1@a`,
//! the additive unit `0@a->b`, horizontal composition and sums.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, ExprPath, Result, Step};
use crate::signature::{SmcSignature, ZeroCellId};
use crate::symbol::Symbol;

/// A free 1-cell expression. Sub-expressions are shared, so cloning is cheap.
#[derive(Clone)]
pub enum OneCellExpr {
    Gen(Symbol),
    /// The horizontal unit `𝟙_a`.
    IdUnit(ZeroCellId),
    /// The additive unit `𝟎_{a,b}`: source first, then target.
    ZeroUnit(ZeroCellId, ZeroCellId),
    /// `outer ∘ inner`: `inner` is applied first.
    HComp(Arc<OneCellExpr>, Arc<OneCellExpr>),
    Sum(Arc<OneCellExpr>, Arc<OneCellExpr>),
}

impl OneCellExpr {
    pub fn gen(name: &str) -> Self {
        OneCellExpr::Gen(Symbol::new(name))
    }

    pub fn id_unit(a: impl Into<ZeroCellId>) -> Self {
        OneCellExpr::IdUnit(a.into())
    }

    pub fn zero(src: impl Into<ZeroCellId>, tgt: impl Into<ZeroCellId>) -> Self {
        OneCellExpr::ZeroUnit(src.into(), tgt.into())
    }

    pub fn hcomp(outer: OneCellExpr, inner: OneCellExpr) -> Self {
        OneCellExpr::HComp(Arc::new(outer), Arc::new(inner))
    }

    pub fn sum(left: OneCellExpr, right: OneCellExpr) -> Self {
        OneCellExpr::Sum(Arc::new(left), Arc::new(right))
    }

    /// Derives `(source, target)` bottom-up.
    ///
    /// Fails with [`Error::IllTyped`] on an unknown generator, an undeclared
    /// 0-cell, a composite whose factors do not meet, or a sum of
    /// non-parallel summands. The error carries the path of the offending
    /// sub-expression.
    pub fn endpoints(&self, sig: &SmcSignature) -> Result<(ZeroCellId, ZeroCellId)> {
        match self.endpoints_unchecked(sig) {
            Some(ends) => Ok(ends),
            None => self.endpoints_at(sig, &ExprPath::root()),
        }
    }

    fn endpoints_unchecked(&self, sig: &SmcSignature) -> Option<(ZeroCellId, ZeroCellId)> {
        let declared = |z: ZeroCellId| sig.has_zero_cell(z).then_some(z);
        match self {
            OneCellExpr::Gen(name) => sig.gen1(*name).map(|g| (g.src, g.tgt)),
            OneCellExpr::IdUnit(a) => declared(*a).map(|a| (a, a)),
            OneCellExpr::ZeroUnit(a, b) => Some((declared(*a)?, declared(*b)?)),
            OneCellExpr::HComp(outer, inner) => {
                let (b2, c) = outer.endpoints_unchecked(sig)?;
                let (a, b) = inner.endpoints_unchecked(sig)?;
                (b == b2).then_some((a, c))
            }
            OneCellExpr::Sum(left, right) => {
                let l = left.endpoints_unchecked(sig)?;
                (right.endpoints_unchecked(sig)? == l).then_some(l)
            }
        }
    }

    fn endpoints_at(
        &self,
        sig: &SmcSignature,
        path: &ExprPath,
    ) -> Result<(ZeroCellId, ZeroCellId)> {
        let declared = |z: ZeroCellId| {
            if sig.has_zero_cell(z) {
                Ok(z)
            } else {
                Err(Error::ill_typed(path, format!("unknown 0-cell `{z}`")))
            }
        };
        match self {
            OneCellExpr::Gen(name) => match sig.gen1(*name) {
                Some(g) => Ok((g.src, g.tgt)),
                None => Err(Error::ill_typed(
                    path,
                    format!("unknown generator `{name}`"),
                )),
            },
            OneCellExpr::IdUnit(a) => {
                let a = declared(*a)?;
                Ok((a, a))
            }
            OneCellExpr::ZeroUnit(a, b) => Ok((declared(*a)?, declared(*b)?)),
            OneCellExpr::HComp(outer, inner) => {
                let (b2, c) = outer.endpoints_at(sig, &path.push(Step::Outer))?;
                let (a, b) = inner.endpoints_at(sig, &path.push(Step::Inner))?;
                if b != b2 {
                    return Err(Error::ill_typed(
                        path,
                        format!(
                            "composite does not meet: inner ends at `{b}`, outer starts at `{b2}`"
                        ),
                    ));
                }
                Ok((a, c))
            }
            OneCellExpr::Sum(left, right) => {
                let l = left.endpoints_at(sig, &path.push(Step::Left))?;
                let r = right.endpoints_at(sig, &path.push(Step::Right))?;
                if l != r {
                    return Err(Error::ill_typed(
                        path,
                        format!(
                            "summands are not parallel: {}->{} vs {}->{}",
                            l.0, l.1, r.0, r.1
                        ),
                    ));
                }
                Ok(l)
            }
        }
    }

    pub fn well_formed(&self, sig: &SmcSignature) -> bool {
        self.endpoints(sig).is_ok()
    }

    /// The same 1-cell read in the opposite bicategory: composites are
    /// reversed, everything else maps componentwise. Generator names are kept;
    /// their endpoints are swapped by [`SmcSignature::opposite`].
    pub fn opposite(&self) -> OneCellExpr {
        match self {
            OneCellExpr::Gen(_) | OneCellExpr::IdUnit(_) => self.clone(),
            OneCellExpr::ZeroUnit(a, b) => OneCellExpr::ZeroUnit(*b, *a),
            OneCellExpr::HComp(outer, inner) => {
                OneCellExpr::hcomp(inner.opposite(), outer.opposite())
            }
            OneCellExpr::Sum(l, r) => OneCellExpr::sum(l.opposite(), r.opposite()),
        }
    }

    /// Tree depth; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            OneCellExpr::HComp(x, y) | OneCellExpr::Sum(x, y) => 1 + x.depth().max(y.depth()),
            _ => 0,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            OneCellExpr::HComp(x, y) | OneCellExpr::Sum(x, y) => 1 + x.size() + y.size(),
            _ => 1,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            OneCellExpr::Sum(..) => 1,
            OneCellExpr::HComp(..) => 2,
            _ => 3,
        }
    }
}

/// Syntactic equality of expression trees.
pub fn expr_equal(e1: &OneCellExpr, e2: &OneCellExpr) -> bool {
    e1 == e2
}

impl PartialEq for OneCellExpr {
    fn eq(&self, other: &Self) -> bool {
        use OneCellExpr::*;
        match (self, other) {
            (Gen(a), Gen(b)) => a == b,
            (IdUnit(a), IdUnit(b)) => a == b,
            (ZeroUnit(a, b), ZeroUnit(c, d)) => a == c && b == d,
            (HComp(a, b), HComp(c, d)) | (Sum(a, b), Sum(c, d)) => {
                (Arc::ptr_eq(a, c) || a == c) && (Arc::ptr_eq(b, d) || b == d)
            }
            _ => false,
        }
    }
}

impl Eq for OneCellExpr {}

impl Hash for OneCellExpr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            OneCellExpr::Gen(a) => a.hash(state),
            OneCellExpr::IdUnit(a) => a.hash(state),
            OneCellExpr::ZeroUnit(a, b) => {
                a.hash(state);
                b.hash(state);
            }
            OneCellExpr::HComp(x, y) | OneCellExpr::Sum(x, y) => {
                x.hash(state);
                y.hash(state);
            }
        }
    }
}

/// Prints in the surface syntax: `*` for composition, `+` for sums, `1@a`,
/// `0@a->b`. Both operators associate to the left, so a right operand of the
/// same precedence is parenthesized.
impl fmt::Display for OneCellExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneCellExpr::Gen(name) => write!(f, "{name}"),
            OneCellExpr::IdUnit(a) => write!(f, "1@{a}"),
            OneCellExpr::ZeroUnit(a, b) => write!(f, "0@{a}->{b}"),
            OneCellExpr::HComp(x, y) | OneCellExpr::Sum(x, y) => {
                let prec = self.precedence();
                let op = if prec == 1 { "+" } else { "*" };
                if x.precedence() < prec {
                    write!(f, "({x})")?;
                } else {
                    write!(f, "{x}")?;
                }
                write!(f, " {op} ")?;
                if y.precedence() <= prec {
                    write!(f, "({y})")
                } else {
                    write!(f, "{y}")
                }
            }
        }
    }
}

impl fmt::Debug for OneCellExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use OneCellExpr as E;

    fn sig() -> SmcSignature {
        SmcSignature::standard()
    }

    fn at(s: &str, t: &str) -> (ZeroCellId, ZeroCellId) {
        (s.into(), t.into())
    }

    #[test]
    fn endpoints_of_generator_and_composite() {
        assert_eq!(E::gen("f").endpoints(&sig()).unwrap(), at("a", "b"));
        let gf = E::hcomp(E::gen("g"), E::gen("f"));
        assert_eq!(gf.endpoints(&sig()).unwrap(), at("a", "c"));
    }

    #[test]
    fn non_parallel_sum_is_ill_typed() {
        let err = E::sum(E::gen("f"), E::gen("g"))
            .endpoints(&sig())
            .unwrap_err();
        match err {
            Error::IllTyped { path, .. } => assert_eq!(path, ExprPath::root()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn error_path_points_at_offending_node() {
        let bad = E::sum(E::gen("h"), E::hcomp(E::gen("f"), E::gen("g")));
        match bad.endpoints(&sig()).unwrap_err() {
            Error::IllTyped { path, .. } => {
                assert_eq!(path, ExprPath(vec![Step::Right]));
                assert_eq!(path.to_string(), "right");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn well_formed_cases() {
        assert!(E::zero("a", "b").well_formed(&sig()));
        assert!(!E::hcomp(E::gen("f"), E::gen("g")).well_formed(&sig()));
        assert!(!E::gen("unknown").well_formed(&sig()));
        assert!(!E::id_unit("z").well_formed(&sig()));
    }

    #[test]
    fn opposite_reverses_composition() {
        let gf = E::hcomp(E::gen("g"), E::gen("f"));
        let op = gf.opposite();
        assert_eq!(op, E::hcomp(E::gen("f"), E::gen("g")));
        let osig = sig().opposite();
        assert_eq!(op.endpoints(&osig).unwrap(), at("c", "a"));
        assert_eq!(
            E::gen("f").opposite().endpoints(&osig).unwrap(),
            at("b", "a")
        );
        assert_eq!(op.opposite(), gf);
    }

    #[test]
    fn syntactic_equality() {
        let s = E::sum(E::gen("f"), E::gen("f'"));
        assert!(expr_equal(&s, &s.clone()));
        assert!(!expr_equal(&s, &E::sum(E::gen("f'"), E::gen("f"))));
        assert!(!expr_equal(
            &E::hcomp(E::gen("f"), E::id_unit("a")),
            &E::gen("f")
        ));
    }

    #[test]
    fn display_parenthesizes_by_precedence() {
        let e = E::hcomp(
            E::sum(E::gen("g"), E::gen("g'")),
            E::sum(E::gen("f"), E::hcomp(E::id_unit("b"), E::gen("f'"))),
        );
        assert_eq!(e.to_string(), "(g + g') * (f + 1@b * f')");
        let right = E::sum(E::gen("f"), E::sum(E::gen("f'"), E::zero("a", "b")));
        assert_eq!(right.to_string(), "f + (f' + 0@a->b)");
        let left = E::sum(E::sum(E::gen("f"), E::gen("f'")), E::gen("f"));
        assert_eq!(left.to_string(), "f + f' + f");
    }

    #[test]
    fn depth_and_size() {
        let e = E::hcomp(E::sum(E::gen("g"), E::gen("g'")), E::gen("f"));
        assert_eq!(e.depth(), 2);
        assert_eq!(e.size(), 5);
        assert_eq!(E::gen("f").depth(), 0);
    }
}
