//! Greene sums `G(P) = Σ_{α ∈ L(P)} 1 / Π (x_{α(i)} - x_{α(i+1)})`.

mod checks;
pub(crate) mod dp;
mod separator;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use checks::{
    contraction_law_check, nd_structure, partition_identity_check, ContractionReport, NdReport, PartitionReport,
};
pub use separator::{prop1_reduce, Prop1Part, SeparatorContext};

use crate::algebra::{Assignment, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::poset::{ElementId, Limits, Mask, Poset};

use dp::{extension_sum, Ops, Split};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Product,
    Prop1(Prop1Part),
    Recursive,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Brute => f.write_str("brute"),
            Method::Product => f.write_str("product"),
            Method::Prop1(p) => write!(f, "prop1-{p}"),
            Method::Recursive => f.write_str("recursive"),
        }
    }
}

/// A Greene sum together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct GreeneResult {
    pub value: RationalFunction,
    pub method: Method,
    /// Separators used, outermost first, as element names.
    pub witness: Vec<String>,
}

impl GreeneResult {
    fn plain(value: RationalFunction, method: Method) -> Self {
        GreeneResult { value, method, witness: Vec::new() }
    }
}

fn symbolic_split(
    p: &Poset,
    strategy: Strategy,
    marked: Option<(ElementId, ElementId)>,
) -> Split<RationalFunction> {
    let step = |v: &RationalFunction, _: Mask, a: ElementId, b: ElementId| {
        v.div_difference(p.var(a), p.var(b)).expect("distinct variables")
    };
    let sum = |vs: Vec<RationalFunction>| RationalFunction::sum(&vs);
    let ops = Ops { one: RationalFunction::one(), zero: RationalFunction::zero(), step: &step, sum: &sum };
    extension_sum(p, strategy, marked, &ops)
}

/// Exact Greene sum over all linear extensions.
pub fn greene_brute(p: &Poset, limits: &Limits) -> Result<RationalFunction> {
    greene_brute_with(p, limits, Strategy::default())
}

pub fn greene_brute_with(p: &Poset, limits: &Limits, strategy: Strategy) -> Result<RationalFunction> {
    limits.check(p.len())?;
    Ok(symbolic_split(p, strategy, None).plain)
}

/// `(marked, rest)`: the Greene sum split into the terms whose word has
/// `x` immediately after `z`, and all other terms. Splitting happens on raw
/// extension terms, before any cancellation.
pub fn greene_split(p: &Poset, z: ElementId, x: ElementId, limits: &Limits) -> Result<(RationalFunction, RationalFunction)> {
    limits.check(p.len())?;
    let s = symbolic_split(p, Strategy::default(), Some((z, x)));
    Ok((s.marked, s.plain))
}

fn values_of(p: &Poset, assign: &Assignment) -> Result<Vec<Rational>> {
    p.ids()
        .map(|e| assign.get(&p.var(e)).cloned().ok_or(Error::Unassigned(p.var(e))))
        .collect()
}

/// Rejects assignments where two elements that can be adjacent in some
/// extension (incomparable pairs and covers) share a value.
fn check_adjacent_distinct(p: &Poset, vals: &[Rational]) -> Result<()> {
    for a in p.ids() {
        for b in a + 1..p.len() {
            let adjacent = !p.comparable(a, b) || p.is_cover(a, b) || p.is_cover(b, a);
            if adjacent && vals[a] == vals[b] {
                return Err(Error::PoleCollision(p.var(a).min(p.var(b)), p.var(a).max(p.var(b))));
            }
        }
    }
    Ok(())
}

/// The Greene sum evaluated at rational values, by the same dynamic
/// program as [`greene_brute`].
pub fn greene_numeric(p: &Poset, assign: &Assignment, limits: &Limits) -> Result<Rational> {
    greene_numeric_with(p, assign, limits, Strategy::default())
}

pub fn greene_numeric_with(p: &Poset, assign: &Assignment, limits: &Limits, strategy: Strategy) -> Result<Rational> {
    limits.check(p.len())?;
    let vals = values_of(p, assign)?;
    check_adjacent_distinct(p, &vals)?;
    let step = |v: &Rational, _: Mask, a: ElementId, b: ElementId| v / (&vals[a] - &vals[b]);
    let sum = |vs: Vec<Rational>| vs.into_iter().fold(Rational::zero(), |s, v| s + v);
    let ops = Ops { one: Rational::one(), zero: Rational::zero(), step: &step, sum: &sum };
    Ok(extension_sum(p, strategy, None, &ops).plain)
}

/// Number of linear extensions.
pub fn count_extensions(p: &Poset) -> BigUint {
    p.count_linear_extensions()
}

/// The term `1 / Π (x_{w_i} - x_{w_{i+1}})` of one word.
pub fn extension_term(p: &Poset, word: &[ElementId]) -> RationalFunction {
    let pairs: Vec<_> = word.windows(2).map(|w| (p.var(w[0]), p.var(w[1]))).collect();
    RationalFunction::inverse_difference_product(&pairs).expect("distinct variables")
}

/// Literal sum of [`extension_term`] over the enumerated extensions.
pub fn greene_enumerate(p: &Poset, limits: &Limits) -> Result<RationalFunction> {
    let words = p.linear_extensions(limits)?;
    let terms: Vec<RationalFunction> = Strategy::default().map(&words, |w| extension_term(p, w));
    Ok(RationalFunction::sum(&terms))
}

/// Greene's product formula `Π_{a<b} (x_b - x_a)^{μ(a,b)}` for connected
/// planar posets. Planarity is the caller's claim; it is not checked.
pub fn greene_product(p: &Poset) -> Result<RationalFunction> {
    if !p.is_connected() {
        return Err(Error::NotConnected);
    }
    let mu = p.mobius_matrix();
    let mut numer = Polynomial::one();
    let mut den = Vec::new();
    for (a, b) in p.relations() {
        let m = mu[a][b];
        let (hi, lo) = (p.var(b), p.var(a));
        if m > 0 {
            for _ in 0..m {
                numer = numer.mul_difference(hi, lo);
            }
        } else {
            den.extend(std::iter::repeat_n((hi, lo), m.unsigned_abs() as usize));
        }
    }
    if cfg!(feature = "planted-bug") {
        numer = -numer;
    }
    RationalFunction::new(numer, &den)
}

/// Engine signature shared by the product formula and injected variants.
pub type ProductEngine = fn(&Poset) -> Result<RationalFunction>;

/// Greene sum by repeated separation. Disconnected posets give 0 without
/// enumeration; posets with no useful separator fall back to brute force.
pub fn greene_recursive(p: &Poset, limits: &Limits) -> Result<GreeneResult> {
    limits.check(p.len())?;
    let mut witness = Vec::new();
    let value = recursive(p, limits, &mut witness)?;
    Ok(GreeneResult { value, method: Method::Recursive, witness })
}

pub(crate) fn recursive(p: &Poset, limits: &Limits, witness: &mut Vec<String>) -> Result<RationalFunction> {
    if p.len() <= 1 {
        return Ok(RationalFunction::one());
    }
    if !p.is_connected() {
        return Ok(RationalFunction::zero());
    }
    let Some(sep) = p.separating_subsets().into_iter().find(|s| s.is_nontrivial()) else {
        return greene_brute(p, limits);
    };
    let part = if sep.k() == 1 {
        Prop1Part::One
    } else if sep.below.is_empty() {
        Prop1Part::Two
    } else if sep.above.is_empty() {
        Prop1Part::TwoMirrored
    } else if sep.below.len() == 1 {
        Prop1Part::Three
    } else if sep.above.len() == 1 {
        Prop1Part::ThreeMirrored
    } else {
        Prop1Part::Four
    };
    let names: Vec<&str> = sep.members.iter().map(|&e| p.name(e)).collect();
    witness.push(format!("{part} {{{}}}", names.join(",")));
    let ctx = SeparatorContext::symbolic_with(p, &sep, &mut |q| recursive(q, limits, &mut Vec::new()))?;
    ctx.evaluate(part)
}

/// Dispatch by method name, as used by the CLI.
pub fn greene(p: &Poset, method: Method, limits: &Limits) -> Result<GreeneResult> {
    match method {
        Method::Brute => Ok(GreeneResult::plain(greene_brute(p, limits)?, Method::Brute)),
        Method::Product => Ok(GreeneResult::plain(greene_product(p)?, Method::Product)),
        Method::Recursive => greene_recursive(p, limits),
        Method::Prop1(part) => {
            let sep = p
                .separating_subsets()
                .into_iter()
                .find(|s| part.applies_to(s))
                .ok_or_else(|| Error::PreconditionFailed(format!("no separating subset admits part {part}")))?;
            prop1_reduce(p, &sep, part, limits)
        }
    }
}
