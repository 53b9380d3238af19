use std::fmt::Debug;

use num_traits::{One, Zero};

use super::{det, det_rational_functions, Polynomial, Rational, RationalFunction, VarIndex};
use crate::error::{Error, Result};

/// Where interpolation nodes live: symbolic variables with values in the
/// rational-function field, or concrete rationals.
///
/// Identities that are stated for "nodes" (divided differences, the
/// separator formulas, determinant ratios) are written once against this
/// trait and run in either setting.
pub trait Domain {
    type Node: Clone + Debug + Send + Sync;
    type Value: Clone + Debug + PartialEq + Send + Sync;

    fn zero() -> Self::Value;
    fn one() -> Self::Value;
    fn from_rational(c: &Rational) -> Self::Value;
    fn node(n: &Self::Node) -> Self::Value;
    fn add(a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(a: &Self::Value) -> Self::Value;
    fn is_zero(a: &Self::Value) -> bool;
    /// `a - b` for two nodes.
    fn difference(a: &Self::Node, b: &Self::Node) -> Self::Value;
    /// `1 / prod (a - b)`; a repeated node is [`Error::DuplicateNode`].
    fn inv_difference_product(pairs: &[(Self::Node, Self::Node)]) -> Result<Self::Value>;
    fn det(m: &[Vec<Self::Value>]) -> Self::Value;

    fn pow(a: &Self::Value, k: usize) -> Self::Value {
        (0..k).fold(Self::one(), |acc, _| Self::mul(&acc, a))
    }

    fn sum<'a>(items: impl IntoIterator<Item = &'a Self::Value>) -> Self::Value
    where
        Self::Value: 'a,
    {
        items.into_iter().fold(Self::zero(), |acc, x| Self::add(&acc, x))
    }
}

/// Concrete rational nodes.
#[derive(Debug, Clone, Copy)]
pub struct Numeric;

/// Variable nodes over the difference-factored rational-function field.
#[derive(Debug, Clone, Copy)]
pub struct Symbolic;

impl Domain for Numeric {
    type Node = Rational;
    type Value = Rational;

    fn zero() -> Rational {
        Rational::zero()
    }
    fn one() -> Rational {
        Rational::one()
    }
    fn from_rational(c: &Rational) -> Rational {
        c.clone()
    }
    fn node(n: &Rational) -> Rational {
        n.clone()
    }
    fn add(a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(a: &Rational) -> Rational {
        -a
    }
    fn is_zero(a: &Rational) -> bool {
        a.is_zero()
    }
    fn difference(a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn inv_difference_product(pairs: &[(Rational, Rational)]) -> Result<Rational> {
        let mut d = Rational::one();
        for (a, b) in pairs {
            let x = a - b;
            if x.is_zero() {
                return Err(Error::DuplicateNode);
            }
            d *= x;
        }
        Ok(Rational::one() / d)
    }
    fn det(m: &[Vec<Rational>]) -> Rational {
        det(m)
    }
    fn pow(a: &Rational, k: usize) -> Rational {
        num_traits::pow(a.clone(), k)
    }
}

impl Domain for Symbolic {
    type Node = VarIndex;
    type Value = RationalFunction;

    fn zero() -> RationalFunction {
        RationalFunction::zero()
    }
    fn one() -> RationalFunction {
        RationalFunction::one()
    }
    fn from_rational(c: &Rational) -> RationalFunction {
        RationalFunction::constant(c.clone())
    }
    fn node(n: &VarIndex) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::var(*n))
    }
    fn add(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a + b
    }
    fn sub(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a - b
    }
    fn mul(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a * b
    }
    fn neg(a: &RationalFunction) -> RationalFunction {
        -a
    }
    fn is_zero(a: &RationalFunction) -> bool {
        a.is_zero()
    }
    fn difference(a: &VarIndex, b: &VarIndex) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::difference(*a, *b))
    }
    fn inv_difference_product(pairs: &[(VarIndex, VarIndex)]) -> Result<RationalFunction> {
        if pairs.iter().any(|(a, b)| a == b) {
            return Err(Error::DuplicateNode);
        }
        RationalFunction::inverse_difference_product(pairs)
    }
    fn det(m: &[Vec<RationalFunction>]) -> RationalFunction {
        det_rational_functions(m)
    }
    fn sum<'a>(items: impl IntoIterator<Item = &'a RationalFunction>) -> RationalFunction {
        RationalFunction::sum(items)
    }
}
