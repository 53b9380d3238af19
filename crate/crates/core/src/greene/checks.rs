use std::collections::BTreeMap;

use super::greene_brute;
use crate::algebra::{DifferenceFactor, Polynomial, RationalFunction, VarIndex};
use crate::error::{Error, Result};
use crate::poset::{ElementId, Limits, Poset};

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionReport {
    pub whole: RationalFunction,
    /// `G(P ∪ {a < b})`.
    pub a_below_b: RationalFunction,
    /// `G(P ∪ {b < a})`.
    pub b_below_a: RationalFunction,
    pub holds: bool,
}

/// `G(P) = G(P ∪ {a < b}) + G(P ∪ {b < a})` for incomparable `a`, `b`.
pub fn partition_identity_check(p: &Poset, a: ElementId, b: ElementId, limits: &Limits) -> Result<PartitionReport> {
    if a == b || p.comparable(a, b) {
        return Err(Error::NotIncomparable(a, b));
    }
    let whole = greene_brute(p, limits)?;
    let a_below_b = greene_brute(&p.add_relations(&[(a, b)])?, limits)?;
    let b_below_a = greene_brute(&p.add_relations(&[(b, a)])?, limits)?;
    let holds = &a_below_b + &b_below_a == whole;
    Ok(PartitionReport { whole, a_below_b, b_below_a, holds })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport {
    /// `(x_b - x_a) G(P)` with `x_b -> x_a`.
    pub limit: RationalFunction,
    /// `G` of the contracted poset.
    pub contracted: RationalFunction,
    pub holds: bool,
}

/// Contraction of the cover edge `a ⋖ b`: multiplying by `x_b - x_a` and
/// letting `x_b -> x_a` gives the Greene sum of the contracted poset, whose
/// merged element carries `x_a`.
pub fn contraction_law_check(p: &Poset, a: ElementId, b: ElementId, limits: &Limits) -> Result<ContractionReport> {
    if a >= p.len() || b >= p.len() || !p.is_cover(a, b) {
        return Err(Error::NotCoverEdge(a, b));
    }
    if !p.is_connected() {
        return Err(Error::NotConnected);
    }
    let (va, vb) = (p.var(a), p.var(b));
    let g = greene_brute(p, limits)?;
    let limit = g.mul_difference(vb, va).substitute_var(vb, va)?;
    let contracted = greene_brute(&p.contract_edge(a, b)?, limits)?;
    let holds = limit == contracted;
    Ok(ContractionReport { limit, contracted, holds })
}

/// Numerator/denominator structure of a connected poset's Greene sum.
#[derive(Debug, Clone, PartialEq)]
pub struct NdReport {
    pub value: RationalFunction,
    /// Numerator in the canonical normalization (factors `x_i - x_j`, `i < j`).
    pub numerator: Polynomial,
    /// Numerator against `D = Π (upper - lower)` over the cover edges.
    pub oriented_numerator: Polynomial,
    pub denominator: Vec<DifferenceFactor>,
    pub cycle_rank: usize,
    pub is_tree: bool,
    /// `D` is the multiset of cover-edge differences.
    pub denominator_is_cover_product: bool,
    /// `deg N = cycle rank`.
    pub degree_is_cycle_rank: bool,
    /// `N = 1` exactly when the Hasse diagram is a tree.
    pub unit_numerator_iff_tree: bool,
}

impl NdReport {
    pub fn holds(&self) -> bool {
        self.denominator_is_cover_product && self.degree_is_cycle_rank && self.unit_numerator_iff_tree
    }
}

pub fn nd_structure(p: &Poset, limits: &Limits) -> Result<NdReport> {
    if !p.is_connected() {
        return Err(Error::NotConnected);
    }
    let value = greene_brute(p, limits)?;
    let numerator = value.numerator().clone();
    let denominator: Vec<DifferenceFactor> = value.denominator_factors().collect();

    let mut edges: BTreeMap<(VarIndex, VarIndex), u32> = BTreeMap::new();
    let mut flips = 0;
    for &(lo, hi) in p.covers() {
        let (u, l) = (p.var(hi), p.var(lo));
        if u > l {
            flips += 1;
        }
        *edges.entry((u.min(l), u.max(l))).or_default() += 1;
    }
    let found: BTreeMap<(VarIndex, VarIndex), u32> =
        denominator.iter().map(|f| ((f.hi, f.lo), f.exponent)).collect();
    let oriented_numerator = if flips % 2 == 1 { -&numerator } else { numerator.clone() };
    let rank = p.cycle_rank();
    let is_tree = rank == 0;
    Ok(NdReport {
        degree_is_cycle_rank: numerator.total_degree() == Some(rank as u32),
        unit_numerator_iff_tree: oriented_numerator.is_one() == is_tree,
        denominator_is_cover_product: found == edges,
        value,
        numerator,
        oriented_numerator,
        denominator,
        cycle_rank: rank,
        is_tree,
    })
}
