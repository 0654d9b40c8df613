use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::Model;
use crate::error::{Error, Result};
use crate::expr::OneCellExpr;
use crate::normalize::{strict_compose, NormalForm};
use crate::signature::SmcSignature;
use crate::symbol::Symbol;
use crate::twocell::{boundary, TwoCellExpr};

/// Exact arithmetic with the laws of a (not necessarily commutative)
/// semiring.
pub trait Semiring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Semiring for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Semiring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// The Boolean semiring (or, and).
impl Semiring for bool {
    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn add(&self, other: &Self) -> Self {
        *self || *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }
}

/// A semiring viewed as a 2-category with one 0-cell and only identity
/// 2-cells. Every 0-cell of the signature is sent to that single 0-cell.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiringInstance<R> {
    values: HashMap<Symbol, R>,
    gen2: HashSet<Symbol>,
}

impl<R: Semiring> Default for SemiringInstance<R> {
    fn default() -> Self {
        SemiringInstance {
            values: HashMap::new(),
            gen2: HashSet::new(),
        }
    }
}

impl<R: Semiring> SemiringInstance<R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_assignments<'a>(pairs: impl IntoIterator<Item = (&'a str, R)>) -> Self {
        let mut inst = Self::new();
        for (name, value) in pairs {
            inst.assign(name, value);
        }
        inst
    }

    pub fn assign(&mut self, generator: &str, value: R) -> &mut Self {
        self.values.insert(Symbol::new(generator), value);
        self
    }

    /// Declares that the generating 2-cell `name` is interpreted. In a
    /// discrete model this only succeeds when its boundary evaluates equal.
    pub fn assign_gen2(&mut self, name: &str) -> &mut Self {
        self.gen2.insert(Symbol::new(name));
        self
    }

    pub fn value(&self, generator: Symbol) -> Option<&R> {
        self.values.get(&generator)
    }
}

/// The only 2-cells of a discrete model: identities on a value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiringTwoCell<R> {
    pub value: R,
}

impl<R: Semiring> Model for SemiringInstance<R> {
    type OneCell = R;
    type TwoCell = SemiringTwoCell<R>;

    fn eval_one_cell(&self, e: &OneCellExpr, sig: &SmcSignature) -> Result<R> {
        e.endpoints(sig)?;
        self.eval(e)
    }

    fn eval_two_cell(&self, c: &TwoCellExpr, sig: &SmcSignature) -> Result<SemiringTwoCell<R>> {
        self.check_generators(c)?;
        let (src, tgt) = boundary(c, sig)?;
        let s = self.eval(&src)?;
        let t = self.eval(&tgt)?;
        if s != t {
            return Err(Error::NonDegenerate(format!(
                "`{c}` runs from {s} (`{src}`) to {t} (`{tgt}`)"
            )));
        }
        Ok(SemiringTwoCell { value: s })
    }
}

impl<R: Semiring> SemiringInstance<R> {
    fn eval(&self, e: &OneCellExpr) -> Result<R> {
        Ok(match e {
            OneCellExpr::Gen(name) => self
                .values
                .get(name)
                .cloned()
                .ok_or_else(|| Error::MissingAssignment(name.to_string()))?,
            OneCellExpr::IdUnit(_) => R::one(),
            OneCellExpr::ZeroUnit(..) => R::zero(),
            OneCellExpr::HComp(outer, inner) => self.eval(outer)?.mul(&self.eval(inner)?),
            OneCellExpr::Sum(l, r) => self.eval(l)?.add(&self.eval(r)?),
        })
    }

    fn check_generators(&self, c: &TwoCellExpr) -> Result<()> {
        use TwoCellExpr::*;
        match c {
            Gen2(name) if !self.gen2.contains(name) => {
                Err(Error::MissingAssignment(name.to_string()))
            }
            VComp(a, b) | HComp2(a, b) | SumCells(a, b) => {
                self.check_generators(a)?;
                self.check_generators(b)
            }
            Inv(a) => self.check_generators(a),
            _ => Ok(()),
        }
    }
}

/// Right multiplication made strictly unital: `n ⊗̃ m` is `n ⊗ m` unless
/// `n` is the additive unit, in which case it is the additive unit.
pub fn tilde_tensor<R: Semiring>(n: &R, m: &R) -> R {
    if n.is_zero() {
        R::zero()
    } else {
        n.mul(m)
    }
}

/// [`tilde_tensor`] on objects of a strict hom-category `(a, a)`: sums of
/// strings with composition as the product and the empty sum as zero.
pub fn tilde_tensor_nf(n: &NormalForm, m: &NormalForm) -> Result<NormalForm> {
    if n.is_empty() {
        return Ok(NormalForm::empty(m.src(), n.tgt()));
    }
    strict_compose(n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::{embed, normalize};
    use OneCellExpr as E;

    fn nat(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn inst() -> SemiringInstance<BigUint> {
        SemiringInstance::from_assignments([("f", nat(2)), ("f'", nat(3)), ("g", nat(5))])
    }

    #[test]
    fn evaluates_distributed_product() {
        let sig = SmcSignature::standard();
        let e = E::hcomp(E::gen("g"), E::sum(E::gen("f"), E::gen("f'")));
        assert_eq!(inst().eval_one_cell(&e, &sig).unwrap(), nat(5 * (2 + 3)));
        let strict = embed(&normalize(&e, &sig).unwrap());
        assert_eq!(
            inst().eval_one_cell(&strict, &sig).unwrap(),
            nat(5 * 2 + 5 * 3)
        );
    }

    #[test]
    fn units_evaluate_to_semiring_units() {
        let sig = SmcSignature::standard();
        assert_eq!(
            inst().eval_one_cell(&E::zero("a", "c"), &sig).unwrap(),
            nat(0)
        );
        assert_eq!(
            inst().eval_one_cell(&E::id_unit("b"), &sig).unwrap(),
            nat(1)
        );
    }

    #[test]
    fn missing_assignment_is_reported() {
        let sig = SmcSignature::standard();
        let err = inst().eval_one_cell(&E::gen("h"), &sig).unwrap_err();
        assert_eq!(err, Error::MissingAssignment("h".into()));
    }

    #[test]
    fn structural_cells_are_identities() {
        let sig = SmcSignature::single_endo();
        let m = SemiringInstance::from_assignments([("f", nat(7))]);
        let f = E::gen("f");
        let c = TwoCellExpr::AssocH(f.clone(), f.clone(), E::sum(f.clone(), E::id_unit("a")));
        assert_eq!(m.eval_two_cell(&c, &sig).unwrap().value, nat(7 * 7 * 8));
        let d = TwoCellExpr::DistL(f.clone(), f.clone(), E::id_unit("a"));
        assert_eq!(m.eval_two_cell(&d, &sig).unwrap().value, nat(7 * 8));
    }

    #[test]
    fn non_degenerate_generator_is_rejected() {
        let mut sig = SmcSignature::standard();
        sig.add_gen2("alpha", E::gen("f"), E::gen("f'")).unwrap();
        let alpha = TwoCellExpr::gen("alpha");
        let mut m = inst();
        assert!(matches!(
            m.eval_two_cell(&alpha, &sig),
            Err(Error::MissingAssignment(_))
        ));
        m.assign_gen2("alpha");
        assert!(matches!(
            m.eval_two_cell(&alpha, &sig),
            Err(Error::NonDegenerate(_))
        ));
        m.assign("f'", nat(2));
        assert_eq!(m.eval_two_cell(&alpha, &sig).unwrap().value, nat(2));
    }

    #[test]
    fn tilde_tensor_cases() {
        assert_eq!(tilde_tensor(&nat(4), &nat(6)), nat(24));
        assert_eq!(tilde_tensor(&nat(0), &nat(6)), nat(0));
        assert_eq!(tilde_tensor(&nat(1), &nat(5)), nat(5));
        assert!(!tilde_tensor(&false, &true));
        assert_eq!(
            tilde_tensor(&BigInt::from(-2), &BigInt::from(3)),
            BigInt::from(-6)
        );
    }

    #[test]
    fn tilde_tensor_on_normal_forms() {
        let sig = SmcSignature::single_endo();
        let f = normalize(&E::sum(E::gen("f"), E::id_unit("a")), &sig).unwrap();
        let zero = normalize(&E::zero("a", "a"), &sig).unwrap();
        assert_eq!(
            tilde_tensor_nf(&f, &f).unwrap().to_text(),
            "f.f + f + f + 1@a"
        );
        assert!(tilde_tensor_nf(&zero, &f).unwrap().is_empty());
    }
}
