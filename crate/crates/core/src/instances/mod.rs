//! Concrete models of SMC-categories used to ground the free calculus:
//! semirings, spans of finite sets, and the free permutative category with
//! symmetric monoidal functors between such categories.

mod perm;
mod semiring;
mod span;

pub use perm::{
    functor_sum, functor_sum_chain, strictly_unitalize, MonoidalFunctorData,
    MonoidalTransformation, PermCatInstance, PermMorphism, Word,
};
pub use semiring::{tilde_tensor, tilde_tensor_nf, Semiring, SemiringInstance, SemiringTwoCell};
pub use span::{
    span_compose, span_compose_with, span_sum, Elem, FinSetObj, PairOrder, SpanCell, SpanInstance,
    SpanMorphism,
};

use crate::error::Result;
use crate::expr::OneCellExpr;
use crate::signature::SmcSignature;
use crate::twocell::TwoCellExpr;

/// An interpretation of a signature: 1-cells and 2-cells of the free
/// SMC-category evaluate homomorphically into the model.
pub trait Model {
    type OneCell;
    type TwoCell;

    fn eval_one_cell(&self, e: &OneCellExpr, sig: &SmcSignature) -> Result<Self::OneCell>;

    fn eval_two_cell(&self, c: &TwoCellExpr, sig: &SmcSignature) -> Result<Self::TwoCell>;
}

pub fn eval_one_cell<M: Model>(
    e: &OneCellExpr,
    sig: &SmcSignature,
    model: &M,
) -> Result<M::OneCell> {
    model.eval_one_cell(e, sig)
}

pub fn eval_two_cell<M: Model>(
    c: &TwoCellExpr,
    sig: &SmcSignature,
    model: &M,
) -> Result<M::TwoCell> {
    model.eval_two_cell(c, sig)
}
