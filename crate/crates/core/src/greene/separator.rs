//! Reduction of a Greene sum through a separating subset `Z_k`.
//!
//! With `A_i = G(P^< ∪ z_i)`, `B_i = G(P^> ∪ z_i)`, `h(z) = Π (z - z_i)`:
//!
//! * part 1 (`k = 1`): `G = A_1 B_1`
//! * part 2 (`P^< = ∅`): `G = Σ_j B_j / h'(z_j)`; mirrored: `(-1)^(k-1) Σ_j A_j / h'(z_j)`
//! * part 3 (`P^< = {t}`): `G = -Σ_j (t - z_j)^(k-1) B_j / (h(t) h'(z_j))`;
//!   mirrored with `P^> = {s}`: `(-1)^k` times the same expression in `s`, `A`
//! * part 4 (`k > 1`): `G = Σ_{i≠j} (z_i - z_j)^(k-1) A_i B_j / (h'(z_i) h'(z_j))`
//! * part 5 (`k > 3`): `G = Σ_m (-1)^m C(k-1, m) Δ[z^(k-1-m) A] Δ[z^m B]`, and the
//!   same sum with each product of divided differences written as a ratio of
//!   a moment/power-sum determinant to `Discr(h)`.

use std::fmt;

use num_integer::binomial;

use super::{GreeneResult, Method};
use crate::algebra::{rat, Assignment, Domain, Numeric, RationalFunction, Symbolic};
use crate::error::{Error, Result};
use crate::poset::{Limits, Poset, SeparatingSubset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prop1Part {
    One,
    Two,
    TwoMirrored,
    Three,
    ThreeMirrored,
    Four,
    FiveBinomial,
    FiveDeterminant,
}

impl Prop1Part {
    pub const ALL: [Prop1Part; 8] = [
        Prop1Part::One,
        Prop1Part::Two,
        Prop1Part::TwoMirrored,
        Prop1Part::Three,
        Prop1Part::ThreeMirrored,
        Prop1Part::Four,
        Prop1Part::FiveBinomial,
        Prop1Part::FiveDeterminant,
    ];

    /// `None` when the part applies, else the violated clause.
    pub fn violation(self, s: &SeparatingSubset) -> Option<&'static str> {
        let k = s.k();
        match self {
            Prop1Part::One if k != 1 => Some("part 1 needs |Z| = 1"),
            Prop1Part::Two if !s.below.is_empty() => Some("part 2 needs an empty lower part"),
            Prop1Part::TwoMirrored if !s.above.is_empty() => Some("mirrored part 2 needs an empty upper part"),
            Prop1Part::Three if s.below.len() != 1 => Some("part 3 needs exactly one element below"),
            Prop1Part::ThreeMirrored if s.above.len() != 1 => Some("mirrored part 3 needs exactly one element above"),
            Prop1Part::Four if k <= 1 => Some("part 4 needs k > 1"),
            Prop1Part::FiveBinomial | Prop1Part::FiveDeterminant if k <= 3 => Some("part 5 needs k > 3"),
            _ => None,
        }
    }

    pub fn applies_to(self, s: &SeparatingSubset) -> bool {
        self.violation(s).is_none()
    }
}

impl fmt::Display for Prop1Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prop1Part::One => "1",
            Prop1Part::Two => "2",
            Prop1Part::TwoMirrored => "2m",
            Prop1Part::Three => "3",
            Prop1Part::ThreeMirrored => "3m",
            Prop1Part::Four => "4",
            Prop1Part::FiveBinomial => "5",
            Prop1Part::FiveDeterminant => "5det",
        })
    }
}

/// A separating subset with everything the reduction formulas need.
#[derive(Debug, Clone)]
pub struct SeparatorContext<D: Domain> {
    pub separator: SeparatingSubset,
    /// `z_1..z_k`.
    pub nodes: Vec<D::Node>,
    /// `A_i = G(P^< ∪ z_i)`.
    pub below_sums: Vec<D::Value>,
    /// `B_i = G(P^> ∪ z_i)`.
    pub above_sums: Vec<D::Value>,
    below_single: Option<D::Node>,
    above_single: Option<D::Node>,
    inv_h_prime: Vec<D::Value>,
}

impl<D: Domain> SeparatorContext<D> {
    /// `node` maps a variable to a node; `greene` evaluates the Greene sum of
    /// a subposet.
    pub fn build(
        p: &Poset,
        sep: &SeparatingSubset,
        node: &dyn Fn(usize) -> Result<D::Node>,
        greene: &mut dyn FnMut(&Poset) -> Result<D::Value>,
    ) -> Result<Self> {
        let nodes = sep.members.iter().map(|&e| node(p.var(e))).collect::<Result<Vec<_>>>()?;
        let (lo, hi) = (sep.below_mask(), sep.above_mask());
        let mut below_sums = Vec::with_capacity(sep.k());
        let mut above_sums = Vec::with_capacity(sep.k());
        for &z in &sep.members {
            below_sums.push(greene(&p.induced(lo | 1 << z))?);
            above_sums.push(greene(&p.induced(hi | 1 << z))?);
        }
        let single = |ids: &[usize]| -> Result<Option<D::Node>> {
            match ids {
                [e] => Ok(Some(node(p.var(*e))?)),
                _ => Ok(None),
            }
        };
        let inv_h_prime = (0..nodes.len())
            .map(|i| {
                let pairs: Vec<_> = (0..nodes.len())
                    .filter(|&j| j != i)
                    .map(|j| (nodes[i].clone(), nodes[j].clone()))
                    .collect();
                D::inv_difference_product(&pairs)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SeparatorContext {
            separator: sep.clone(),
            below_single: single(&sep.below)?,
            above_single: single(&sep.above)?,
            nodes,
            below_sums,
            above_sums,
            inv_h_prime,
        })
    }

    pub fn k(&self) -> usize {
        self.nodes.len()
    }

    /// `1 / h(t) = 1 / Π (t - z_i)`.
    pub fn inv_h_at(&self, t: &D::Node) -> Result<D::Value> {
        let pairs: Vec<_> = self.nodes.iter().map(|z| (t.clone(), z.clone())).collect();
        D::inv_difference_product(&pairs)
    }

    pub fn inv_h_prime(&self, i: usize) -> &D::Value {
        &self.inv_h_prime[i]
    }

    /// `Δ_{Z_k}` of the values `v_i` attached to `z_i`.
    pub fn divided_difference(&self, values: &[D::Value]) -> D::Value {
        let terms: Vec<_> = values.iter().zip(&self.inv_h_prime).map(|(v, w)| D::mul(v, w)).collect();
        D::sum(&terms)
    }

    fn z_pow(&self, i: usize, j: usize) -> D::Value {
        D::pow(&D::node(&self.nodes[i]), j)
    }

    /// `p_j = Σ z_i^j`.
    pub fn power_sum(&self, j: usize) -> D::Value {
        let terms: Vec<_> = (0..self.k()).map(|i| self.z_pow(i, j)).collect();
        D::sum(&terms)
    }

    fn moment(&self, j: usize, f: impl Fn(usize) -> D::Value) -> D::Value {
        let terms: Vec<_> = (0..self.k()).map(|i| D::mul(&self.z_pow(i, j), &f(i))).collect();
        D::sum(&terms)
    }

    /// `G_j^< = Σ z_i^j A_i`.
    pub fn moment_below(&self, j: usize) -> D::Value {
        self.moment(j, |i| self.below_sums[i].clone())
    }

    /// `G_j^> = Σ z_i^j B_i`.
    pub fn moment_above(&self, j: usize) -> D::Value {
        self.moment(j, |i| self.above_sums[i].clone())
    }

    /// `G_j^<> = Σ z_i^j A_i B_i`.
    pub fn moment_both(&self, j: usize) -> D::Value {
        self.moment(j, |i| D::mul(&self.below_sums[i], &self.above_sums[i]))
    }

    /// `1 / Discr(h) = 1 / Π_{i<j} (z_i - z_j)^2`.
    pub fn inv_discriminant(&self) -> Result<D::Value> {
        let mut pairs = Vec::new();
        for i in 0..self.k() {
            for j in i + 1..self.k() {
                pairs.push((self.nodes[i].clone(), self.nodes[j].clone()));
                pairs.push((self.nodes[i].clone(), self.nodes[j].clone()));
            }
        }
        D::inv_difference_product(&pairs)
    }

    fn signed(v: D::Value, negative: bool) -> D::Value {
        if negative {
            D::neg(&v)
        } else {
            v
        }
    }

    /// Part 3 in the node `t` with side sums `side`.
    fn part3(&self, t: &D::Node, side: &[D::Value]) -> Result<D::Value> {
        let k = self.k();
        let terms: Vec<_> = (0..k)
            .map(|j| D::mul(&D::pow(&D::difference(t, &self.nodes[j]), k - 1), &side[j]))
            .collect();
        let dd = self.divided_difference(&terms);
        Ok(D::neg(&D::mul(&dd, &self.inv_h_at(t)?)))
    }

    /// Evaluates the right-hand side of the chosen part.
    pub fn evaluate(&self, part: Prop1Part) -> Result<D::Value> {
        if let Some(why) = part.violation(&self.separator) {
            return Err(Error::PreconditionFailed(why.to_string()));
        }
        let k = self.k();
        match part {
            Prop1Part::One => Ok(D::mul(&self.below_sums[0], &self.above_sums[0])),
            Prop1Part::Two => Ok(self.divided_difference(&self.above_sums)),
            Prop1Part::TwoMirrored => Ok(Self::signed(self.divided_difference(&self.below_sums), k.is_multiple_of(2))),
            Prop1Part::Three => {
                let t = self.below_single.as_ref().expect("checked");
                self.part3(t, &self.above_sums)
            }
            Prop1Part::ThreeMirrored => {
                let s = self.above_single.as_ref().expect("checked");
                Ok(Self::signed(self.part3(s, &self.below_sums)?, k % 2 == 1))
            }
            Prop1Part::Four => {
                let mut terms = Vec::with_capacity(k * (k - 1));
                for i in 0..k {
                    for j in 0..k {
                        if i == j {
                            continue;
                        }
                        let w = D::pow(&D::difference(&self.nodes[i], &self.nodes[j]), k - 1);
                        let ab = D::mul(&self.below_sums[i], &self.above_sums[j]);
                        let hh = D::mul(&self.inv_h_prime[i], &self.inv_h_prime[j]);
                        terms.push(D::mul(&D::mul(&w, &ab), &hh));
                    }
                }
                Ok(D::sum(&terms))
            }
            Prop1Part::FiveBinomial => Ok(self.part5_binomial()),
            Prop1Part::FiveDeterminant => self.part5_determinant(),
        }
    }

    fn binomial_sign(k: usize, m: usize) -> D::Value {
        let c = rat(binomial(k as i64 - 1, m as i64));
        D::from_rational(&if m % 2 == 1 { -c } else { c })
    }

    /// `Σ_m (-1)^m C(k-1, m) Δ[z^(k-1-m) A] Δ[z^m B]`.
    pub fn part5_binomial(&self) -> D::Value {
        let k = self.k();
        let terms: Vec<_> = (0..k)
            .map(|m| {
                let a: Vec<_> = (0..k).map(|i| D::mul(&self.z_pow(i, k - 1 - m), &self.below_sums[i])).collect();
                let b: Vec<_> = (0..k).map(|i| D::mul(&self.z_pow(i, m), &self.above_sums[i])).collect();
                let prod = D::mul(&self.divided_difference(&a), &self.divided_difference(&b));
                D::mul(&Self::binomial_sign(k, m), &prod)
            })
            .collect();
        D::sum(&terms)
    }

    /// The moment/power-sum matrix for index `m`: first row
    /// `G^<>_{k-1}, G^>_{k+m-2}, ..., G^>_m`; row `r = 1..k-1` is
    /// `G^<_{2k-m-2-r}, p_{2k-3-r}, ..., p_{k-1-r}`.
    pub fn part5_matrix(&self, m: usize) -> Vec<Vec<D::Value>> {
        let k = self.k();
        let mut rows = Vec::with_capacity(k);
        let mut first = vec![self.moment_both(k - 1)];
        first.extend((0..k - 1).map(|c| self.moment_above(k + m - 2 - c)));
        rows.push(first);
        for r in 1..k {
            let mut row = vec![self.moment_below(2 * k - m - 2 - r)];
            row.extend((1..k).map(|c| self.power_sum(2 * k - 2 - r - c)));
            rows.push(row);
        }
        rows
    }

    /// `Σ_m (-1)^m C(k-1, m) det(M_m) / Discr(h)`.
    pub fn part5_determinant(&self) -> Result<D::Value> {
        let k = self.k();
        if k <= 3 {
            return Err(Error::PreconditionFailed("part 5 needs k > 3".into()));
        }
        let terms: Vec<_> = (0..k)
            .map(|m| D::mul(&Self::binomial_sign(k, m), &D::det(&self.part5_matrix(m))))
            .collect();
        Ok(D::mul(&D::sum(&terms), &self.inv_discriminant()?))
    }
}

impl SeparatorContext<Symbolic> {
    /// Sub-sums by the recursive engine.
    pub fn symbolic(p: &Poset, sep: &SeparatingSubset, limits: &Limits) -> Result<Self> {
        Self::symbolic_with(p, sep, &mut |q| super::recursive(q, limits, &mut Vec::new()))
    }

    pub(crate) fn symbolic_with(
        p: &Poset,
        sep: &SeparatingSubset,
        greene: &mut dyn FnMut(&Poset) -> Result<RationalFunction>,
    ) -> Result<Self> {
        Self::build(p, sep, &|v| Ok(v), greene)
    }
}

impl SeparatorContext<Numeric> {
    /// Sub-sums evaluated at `assign`.
    pub fn numeric(p: &Poset, sep: &SeparatingSubset, assign: &Assignment, limits: &Limits) -> Result<Self> {
        Self::build(
            p,
            sep,
            &|v| assign.get(&v).cloned().ok_or(Error::Unassigned(v)),
            &mut |q| super::greene_numeric(q, assign, limits),
        )
    }
}

/// Evaluates the separator reduction `part` symbolically.
pub fn prop1_reduce(p: &Poset, sep: &SeparatingSubset, part: Prop1Part, limits: &Limits) -> Result<GreeneResult> {
    limits.check(p.len())?;
    if let Some(why) = part.violation(sep) {
        return Err(Error::PreconditionFailed(why.to_string()));
    }
    let ctx = SeparatorContext::<Symbolic>::symbolic(p, sep, limits)?;
    let value = ctx.evaluate(part)?;
    let names: Vec<&str> = sep.members.iter().map(|&e| p.name(e)).collect();
    Ok(GreeneResult { value, method: Method::Prop1(part), witness: vec![format!("{part} {{{}}}", names.join(","))] })
}
