//! Differential forms with rational-function coefficients and the Arnold
//! relations. `omega(i, j)` is `d(x_i - x_j) / (x_i - x_j)`, without the
//! `1/2πi` factor.

use std::collections::BTreeMap;

use crate::algebra::{RationalFunction, VarIndex};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::greene::dp::{extension_sum, Ops};
use crate::greene::greene_brute;
use crate::poset::{ElementId, Limits, Mask, Poset};

pub const MAX_FORM_ELEMENTS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct WedgeForm {
    degree: usize,
    coeffs: BTreeMap<Vec<VarIndex>, RationalFunction>,
}

fn merge_sign(s: &[VarIndex], t: &[VarIndex]) -> Option<(Vec<VarIndex>, bool)> {
    let mut inversions = 0;
    for a in s {
        for b in t {
            if a == b {
                return None;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    let mut m: Vec<VarIndex> = s.iter().chain(t).copied().collect();
    m.sort_unstable();
    Some((m, inversions % 2 == 1))
}

impl WedgeForm {
    pub fn zero(degree: usize) -> Self {
        WedgeForm { degree, coeffs: BTreeMap::new() }
    }

    pub fn scalar(c: RationalFunction) -> Self {
        WedgeForm::from_terms(0, [(Vec::new(), c)])
    }

    pub fn dx(v: VarIndex) -> Self {
        WedgeForm::from_terms(1, [(vec![v], RationalFunction::one())])
    }

    /// Sums the coefficients per index set. Each set is sorted, with the
    /// permutation sign applied; repeated indices drop the term.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Vec<VarIndex>, RationalFunction)>) -> Self {
        let mut acc: BTreeMap<Vec<VarIndex>, Vec<RationalFunction>> = BTreeMap::new();
        for (s, c) in terms {
            assert_eq!(s.len(), degree, "index set of the wrong size");
            let Some((key, odd)) = sort_with_sign(&s) else {
                continue;
            };
            acc.entry(key).or_default().push(if odd { -c } else { c });
        }
        let coeffs = acc
            .into_iter()
            .map(|(k, v)| (k, RationalFunction::sum(&v)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        WedgeForm { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<VarIndex>, RationalFunction> {
        &self.coeffs
    }

    pub fn coeff(&self, s: &[VarIndex]) -> RationalFunction {
        self.coeffs.get(s).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn add(&self, o: &WedgeForm) -> WedgeForm {
        WedgeForm::sum(self.degree, [self, o])
    }

    pub fn neg(&self) -> WedgeForm {
        WedgeForm { degree: self.degree, coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &RationalFunction) -> WedgeForm {
        WedgeForm::from_terms(self.degree, self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    pub fn sum<'a>(degree: usize, forms: impl IntoIterator<Item = &'a WedgeForm>) -> WedgeForm {
        WedgeForm::from_terms(
            degree,
            forms.into_iter().flat_map(|f| {
                assert_eq!(f.degree, degree, "degree mismatch in sum");
                f.coeffs.iter().map(|(k, c)| (k.clone(), c.clone()))
            }),
        )
    }

    pub fn wedge(&self, o: &WedgeForm) -> WedgeForm {
        let mut terms = Vec::new();
        for (s, a) in &self.coeffs {
            for (t, b) in &o.coeffs {
                if let Some((m, odd)) = merge_sign(s, t) {
                    let c = a * b;
                    terms.push((m, if odd { -c } else { c }));
                }
            }
        }
        WedgeForm::from_terms(self.degree + o.degree, terms)
    }
}

/// Sorts `s`; `None` on a repeated index, else the sorted set and whether
/// the sorting permutation is odd.
fn sort_with_sign(s: &[VarIndex]) -> Option<(Vec<VarIndex>, bool)> {
    let mut inversions = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] == s[j] {
                return None;
            }
            if s[i] > s[j] {
                inversions += 1;
            }
        }
    }
    let mut m = s.to_vec();
    m.sort_unstable();
    Some((m, inversions % 2 == 1))
}

/// `d(x_i - x_j)`.
pub fn d_difference(i: VarIndex, j: VarIndex) -> WedgeForm {
    WedgeForm::dx(i).add(&WedgeForm::dx(j).neg())
}

pub fn omega(i: VarIndex, j: VarIndex) -> Result<WedgeForm> {
    if i == j {
        return Err(Error::EqualIndices);
    }
    Ok(d_difference(i, j).scale(&RationalFunction::inverse_difference(i, j)?))
}

/// `ω_ij ∧ ω_jk + ω_ki ∧ ω_ij + ω_jk ∧ ω_ki = 0`.
pub fn arnold_relation_check(i: VarIndex, j: VarIndex, k: VarIndex) -> Result<bool> {
    if i == j || j == k || i == k {
        return Err(Error::EqualIndices);
    }
    let (ij, jk, ki) = (omega(i, j)?, omega(j, k)?, omega(k, i)?);
    let total = WedgeForm::sum(2, [&ij.wedge(&jk), &ki.wedge(&ij), &jk.wedge(&ki)]);
    Ok(total.is_zero())
}

/// `d(x_{w_1} - x_{w_2}) ∧ ... ∧ d(x_{w_{n-1}} - x_{w_n})`.
pub fn consecutive_differences(word: &[VarIndex]) -> WedgeForm {
    word.windows(2).fold(WedgeForm::scalar(RationalFunction::one()), |acc, w| acc.wedge(&d_difference(w[0], w[1])))
}

/// `ω_{w_1 w_2} ∧ ... ∧ ω_{w_{n-1} w_n}`.
pub fn omega_chain(word: &[VarIndex]) -> Result<WedgeForm> {
    let mut acc = WedgeForm::scalar(RationalFunction::one());
    for w in word.windows(2) {
        acc = acc.wedge(&omega(w[0], w[1])?);
    }
    Ok(acc)
}

/// Sign of `w` as a permutation of `0..n`.
pub fn permutation_sign(w: &[usize]) -> bool {
    sort_with_sign(w).is_some_and(|(_, odd)| odd)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignedExtensionReport {
    /// `Σ_α sign(α) ω_{α1 α2} ∧ ... ∧ ω_{α(n-1) αn}`.
    pub lhs: WedgeForm,
    /// `(Σ_i (-1)^{n-i} dx_1 ∧ ... dx_i omitted ... ∧ dx_n) G(P)`.
    pub rhs: WedgeForm,
}

impl SignedExtensionReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `Σ_α sign(α) ω_{α1 α2} ∧ ... ∧ ω_{α(n-1) αn}` over the extensions, by
/// the up-set recursion. Placing `b` after the up-set `placed` adds one
/// inversion per placed element with a larger id, so the sign factors
/// through the steps.
fn signed_omega_sum(p: &Poset) -> WedgeForm {
    let step = |v: &WedgeForm, placed: Mask, a: ElementId, b: ElementId| {
        let f = omega(p.var(a), p.var(b)).expect("variables of a poset are distinct").wedge(v);
        let above_b = placed & !((1u64 << (b + 1)) - 1);
        if above_b.count_ones() % 2 == 1 {
            f.neg()
        } else {
            f
        }
    };
    let sum = |vs: Vec<WedgeForm>| {
        let degree = vs.first().map_or(0, |f| f.degree());
        WedgeForm::sum(degree, &vs)
    };
    let ops = Ops { one: WedgeForm::scalar(RationalFunction::one()), zero: WedgeForm::zero(0), step: &step, sum: &sum };
    extension_sum(p, Strategy::default(), None, &ops).plain
}

/// Element `i` carries the label `x_{i+1}`; the identity labeling must be
/// an extension.
pub fn signed_extension_identity(p: &Poset) -> Result<SignedExtensionReport> {
    let n = p.len();
    let limits = Limits { max_elems: MAX_FORM_ELEMENTS };
    limits.check(n)?;
    if !p.identity_is_extension() {
        return Err(Error::LabelingNotExtension);
    }
    if n < 2 {
        return Err(Error::PreconditionFailed("need at least two elements".into()));
    }
    let lhs = signed_omega_sum(p);

    let g = greene_brute(p, &limits)?;
    let mut parts = Vec::with_capacity(n);
    for omit in 0..n {
        let f = p
            .ids()
            .filter(|&e| e != omit)
            .fold(WedgeForm::scalar(RationalFunction::one()), |acc, e| acc.wedge(&WedgeForm::dx(p.var(e))));
        // (-1)^{n-i} with 1-based i = omit + 1
        parts.push(if (n - omit - 1) % 2 == 1 { f.neg() } else { f });
    }
    let rhs = WedgeForm::sum(n - 1, &parts).scale(&g);
    Ok(SignedExtensionReport { lhs, rhs })
}

pub fn signed_extension_identity_check(p: &Poset) -> Result<bool> {
    signed_extension_identity(p).map(|r| r.holds())
}

/// The labeled three-element posets other than the chain for which
/// `x_1, x_2, x_3` (top first) is an extension.
pub fn three_element_posets() -> Vec<Poset> {
    let rels: [&[(usize, usize)]; 6] =
        [&[], &[(1, 0)], &[(2, 0)], &[(2, 1)], &[(1, 0), (2, 0)], &[(2, 0), (2, 1)]];
    rels.iter().map(|r| Poset::from_relations(3, r).expect("acyclic")).collect()
}
