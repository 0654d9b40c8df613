//! An independent normalizer: rewrite a term to a fixpoint with the
//! distribution, unit, nullity and reassociation rules, then read off the
//! summands. Shares nothing with the production normalizer except the
//! signature.

use crate::expr::OneCellExpr;
use crate::signature::{SmcSignature, ZeroCellId};
use crate::symbol::Symbol;

#[derive(Clone, Debug, PartialEq)]
enum Term {
    Gen(Symbol, ZeroCellId, ZeroCellId),
    One(ZeroCellId),
    Zero(ZeroCellId, ZeroCellId),
    Comp(Box<Term>, Box<Term>),
    Sum(Box<Term>, Box<Term>),
}

use Term::*;

impl Term {
    fn src(&self) -> ZeroCellId {
        match self {
            Gen(_, a, _) | Zero(a, _) | One(a) => *a,
            Comp(_, inner) => inner.src(),
            Sum(l, _) => l.src(),
        }
    }

    fn tgt(&self) -> ZeroCellId {
        match self {
            Gen(_, _, b) | Zero(_, b) | One(b) => *b,
            Comp(outer, _) => outer.tgt(),
            Sum(l, _) => l.tgt(),
        }
    }
}

fn comp(x: Term, y: Term) -> Term {
    Comp(Box::new(x), Box::new(y))
}

fn sum(x: Term, y: Term) -> Term {
    Sum(Box::new(x), Box::new(y))
}

fn lower(e: &OneCellExpr, sig: &SmcSignature) -> Option<Term> {
    Some(match e {
        OneCellExpr::Gen(g) => {
            let g = sig.gen1(*g)?;
            Gen(g.name, g.src, g.tgt)
        }
        OneCellExpr::IdUnit(a) => One(*a),
        OneCellExpr::ZeroUnit(a, b) => Zero(*a, *b),
        OneCellExpr::HComp(x, y) => comp(lower(x, sig)?, lower(y, sig)?),
        OneCellExpr::Sum(x, y) => sum(lower(x, sig)?, lower(y, sig)?),
    })
}

/// One rewrite at the root of a term whose children are already normal.
/// Rules are tried in order; splitting an outer sum comes before splitting
/// an inner one.
fn rewrite_root(t: Term) -> Result<Term, Term> {
    match t {
        Comp(x, y) => match (*x, *y) {
            (Zero(_, c), y) => Ok(Zero(y.src(), c)),
            (x, Zero(a, _)) => Ok(Zero(a, x.tgt())),
            (One(_), y) => Ok(y),
            (x, One(_)) => Ok(x),
            (Sum(x1, x2), y) => Ok(sum(comp(*x1, y.clone()), comp(*x2, y))),
            (x, Sum(y1, y2)) => Ok(sum(comp(x.clone(), *y1), comp(x, *y2))),
            (Comp(x1, x2), y) => Ok(comp(*x1, comp(*x2, y))),
            (x, y) => Err(comp(x, y)),
        },
        Sum(x, y) => match (*x, *y) {
            (Zero(..), y) => Ok(y),
            (x, Zero(..)) => Ok(x),
            (Sum(x1, x2), y) => Ok(sum(*x1, sum(*x2, y))),
            (x, y) => Err(sum(x, y)),
        },
        t => Err(t),
    }
}

fn normal(t: Term) -> Term {
    let t = match t {
        Comp(x, y) => comp(normal(*x), normal(*y)),
        Sum(x, y) => sum(normal(*x), normal(*y)),
        t => t,
    };
    match rewrite_root(t) {
        Ok(t) => normal(t),
        Err(t) => t,
    }
}

fn summands(t: &Term, out: &mut Vec<String>) {
    match t {
        Zero(..) => {}
        Sum(x, y) => {
            summands(x, out);
            summands(y, out);
        }
        t => {
            let mut names = Vec::new();
            string(t, &mut names);
            out.push(if names.is_empty() {
                format!("1@{}", t.src())
            } else {
                names.join(".")
            });
        }
    }
}

fn string(t: &Term, out: &mut Vec<String>) {
    match t {
        Gen(g, ..) => out.push(g.to_string()),
        One(_) => {}
        Comp(x, y) => {
            string(x, out);
            string(y, out);
        }
        Zero(..) | Sum(..) => unreachable!("not a string in a normal term"),
    }
}

/// Normal-form text of `e` (as printed by `NormalForm`), or `None` for an
/// ill-typed expression.
pub fn oracle_normal_form(e: &OneCellExpr, sig: &SmcSignature) -> Option<String> {
    if !e.well_formed(sig) {
        return None;
    }
    let t = normal(lower(e, sig)?);
    let mut parts = Vec::new();
    summands(&t, &mut parts);
    Some(if parts.is_empty() {
        format!("0@{}->{}", t.src(), t.tgt())
    } else {
        parts.join(" + ")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_one_cell;

    fn run(text: &str) -> String {
        oracle_normal_form(&parse_one_cell(text).unwrap(), &SmcSignature::standard()).unwrap()
    }

    #[test]
    fn distributes_outer_sum_first() {
        assert_eq!(run("(g + g') * (f + f')"), "g.f + g.f' + g'.f + g'.f'");
        assert_eq!(run("g * (f + f')"), "g.f + g.f'");
    }

    #[test]
    fn units_and_nullity() {
        assert_eq!(run("1@b * f + 0@a->b"), "f");
        assert_eq!(run("0@b->c * f"), "0@a->c");
        assert_eq!(run("1@a"), "1@a");
        assert_eq!(run("g * 0@a->b + h"), "h");
    }
}
