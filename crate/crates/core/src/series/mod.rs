//! Greene sums split at a marked cover `x ⋖ z`, the resulting recursion for
//! `1/(z - x)`, and the Newton- and Lagrange-type expansions it produces.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::algebra::{
    contour_sum, Assignment, ContourReport, Polynomial, Rational, RationalFunction, UPoly, UnivariateRational,
    VarIndex,
};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::greene::{greene_brute, greene_split, nd_structure};
use crate::poset::{ElementId, Limits, Poset};

/// A connected poset with a distinguished cover `x ⋖ z`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedPoset {
    poset: Poset,
    x: ElementId,
    z: ElementId,
}

impl MarkedPoset {
    pub fn new(poset: Poset, x: ElementId, z: ElementId) -> Result<Self> {
        if !poset.is_connected() {
            return Err(Error::NotConnected);
        }
        if x >= poset.len() || z >= poset.len() || !poset.is_cover(x, z) {
            return Err(Error::NotCoverEdge(x, z));
        }
        Ok(MarkedPoset { poset, x, z })
    }

    pub fn by_names(poset: Poset, x: &str, z: &str) -> Result<Self> {
        let (x, z) = (poset.find(x)?, poset.find(z)?);
        MarkedPoset::new(poset, x, z)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn x(&self) -> ElementId {
        self.x
    }

    pub fn z(&self) -> ElementId {
        self.z
    }

    pub fn x_var(&self) -> VarIndex {
        self.poset.var(self.x)
    }

    pub fn z_var(&self) -> VarIndex {
        self.poset.var(self.z)
    }
}

/// `G = G''/(z - x) + G'''` and `G' = (z - x) G`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitGreene {
    pub g: RationalFunction,
    pub g_prime: RationalFunction,
    pub g_dprime: RationalFunction,
    pub g_tprime: RationalFunction,
    z: VarIndex,
    x: VarIndex,
}

impl SplitGreene {
    pub fn holds(&self) -> bool {
        let recombined = &self.g_dprime.div_difference(self.z, self.x).expect("z and x differ") + &self.g_tprime;
        recombined == self.g && self.g_prime == self.g.mul_difference(self.z, self.x)
    }
}

/// Splits the extension terms by whether `x` immediately follows `z`.
pub fn split_greene(mp: &MarkedPoset, limits: &Limits) -> Result<SplitGreene> {
    let p = &mp.poset;
    let (marked, rest) = greene_split(p, mp.z, mp.x, limits)?;
    let (z, x) = (mp.z_var(), mp.x_var());
    let g = greene_brute(p, limits)?;
    Ok(SplitGreene {
        g_prime: g.mul_difference(z, x),
        g_dprime: marked.mul_difference(z, x),
        g_tprime: rest,
        g,
        z,
        x,
    })
}

/// `1/(z - x) = -G'''/G'' + (G'/G'') / (z - x)` at a full numeric assignment.
pub fn recursion_step_check(mp: &MarkedPoset, assign: &Assignment, limits: &Limits) -> Result<bool> {
    let s = split_greene(mp, limits)?;
    let dprime = s.g_dprime.eval(assign)?;
    if dprime.is_zero() {
        return Err(Error::DivisionByZero("G'' vanishes at the assignment".into()));
    }
    let zx = assign.get(&s.z).ok_or(Error::Unassigned(s.z))? - assign.get(&s.x).ok_or(Error::Unassigned(s.x))?;
    if zx.is_zero() {
        return Err(Error::PoleCollision(s.z.min(s.x), s.z.max(s.x)));
    }
    let lhs = Rational::one() / &zx;
    let rhs = -s.g_tprime.eval(assign)? / &dprime + s.g_prime.eval(assign)? / &dprime / &zx;
    Ok(lhs == rhs)
}

/// Marked posets sharing the `x` and `z` variables, all other variables
/// distinct between items.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedPosetSequence {
    items: Vec<MarkedPoset>,
}

impl MarkedPosetSequence {
    pub fn new(items: Vec<MarkedPoset>) -> Result<Self> {
        let Some(first) = items.first() else {
            return Err(Error::PreconditionFailed("empty sequence".into()));
        };
        let (x, z) = (first.x_var(), first.z_var());
        let mut seen = BTreeSet::new();
        for mp in &items {
            if mp.x_var() != x || mp.z_var() != z {
                return Err(Error::PreconditionFailed("items must share the x and z variables".into()));
            }
            for &v in mp.poset.vars() {
                if v != x && v != z && !seen.insert(v) {
                    return Err(Error::PreconditionFailed(format!("variable x{v} is shared between items")));
                }
            }
        }
        Ok(MarkedPosetSequence { items })
    }

    pub fn items(&self) -> &[MarkedPoset] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn x_var(&self) -> VarIndex {
        self.items[0].x_var()
    }

    pub fn z_var(&self) -> VarIndex {
        self.items[0].z_var()
    }

    /// `P_i`: `z` over `x` and `x_i`. Variables: `z = 0`, `x = 1`, `x_i = 1 + i`.
    pub fn triangle(n: usize) -> Self {
        let items = (1..=n)
            .map(|i| {
                let p = Poset::new(
                    vec![("z".into(), 0), ("x".into(), 1), (format!("x{i}"), 1 + i)],
                    &[(1, 0), (2, 0)],
                )
                .expect("triangle");
                MarkedPoset::new(p, 1, 0).expect("x is covered by z")
            })
            .collect();
        MarkedPosetSequence { items }
    }

    /// `P_i`: `z` over `x` and `m_i` further elements `x{j}_{i}`.
    pub fn star(ms: &[usize]) -> Self {
        let mut next = 2;
        let items = ms
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let mut elems = vec![("z".to_string(), 0), ("x".to_string(), 1)];
                for j in 1..=m {
                    elems.push((format!("x{j}_{}", i + 1), next));
                    next += 1;
                }
                let rels: Vec<_> = (1..elems.len()).map(|e| (e, 0)).collect();
                MarkedPoset::new(Poset::new(elems, &rels).expect("star"), 1, 0).expect("x is covered by z")
            })
            .collect();
        MarkedPosetSequence { items }
    }

    /// Every variable other than `z`, in item order.
    pub fn non_z_vars(&self) -> Vec<VarIndex> {
        let z = self.z_var();
        let mut out: Vec<VarIndex> = vec![self.x_var()];
        for mp in &self.items {
            out.extend(mp.poset.vars().iter().copied().filter(|&v| v != z && v != self.x_var()));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prop4Report {
    /// `-(1/2πi) ∮ G'_{i-1} G'''(P_i) F(z) / G''_i dz` for `i = 1..n`.
    pub terms: Vec<Rational>,
    /// `(1/2πi) ∮ G'_n F(z) / (G''_n (z - x)) dz`.
    pub tail: Rational,
    pub total: Rational,
    /// `F(x)`.
    pub value: Rational,
    /// Degree bookkeeping of each term's integrand, then the tail's.
    pub contours: Vec<ContourReport>,
}

impl Prop4Report {
    pub fn holds(&self) -> bool {
        self.total == self.value
    }

    pub fn all_proper(&self) -> bool {
        self.contours.iter().all(|c| c.proper)
    }
}

/// The expansion over the first `n` items. Every variable except `z` must
/// be assigned. Contours are sums of all finite residues; with `strict` an
/// integrand that does not vanish fast enough at infinity is an error.
pub fn prop4_expand(
    seq: &MarkedPosetSequence,
    f: &UPoly,
    n: usize,
    assign: &Assignment,
    strict: bool,
    limits: &Limits,
) -> Result<Prop4Report> {
    if n < 2 || n > seq.len() {
        return Err(Error::PreconditionFailed(format!("need 2 <= n <= {}, got {n}", seq.len())));
    }
    let (z, x) = (seq.z_var(), seq.x_var());
    let mut assign = assign.clone();
    assign.remove(&z);
    let xv = assign.get(&x).cloned().ok_or(Error::Unassigned(x))?;
    let candidates: Vec<Rational> = assign.values().cloned().collect();

    let splits: Vec<SplitGreene> = Strategy::default()
        .map(&seq.items[..n], |mp| split_greene(mp, limits))
        .into_iter()
        .collect::<Result<_>>()?;
    let spec = |r: &RationalFunction| r.specialize(&assign, z);

    let mut kernels = Vec::with_capacity(n + 1);
    let mut prime = UnivariateRational::polynomial(z, UPoly::one());
    let mut dprime = UnivariateRational::polynomial(z, UPoly::one());
    for s in &splits {
        dprime = dprime.mul(&spec(&s.g_dprime)?);
        let k = prime.mul(&spec(&s.g_tprime)?).checked_div(&dprime, &candidates)?;
        kernels.push(k.scale(&-Rational::one()));
        prime = prime.mul(&spec(&s.g_prime)?);
    }
    kernels.push(prime.checked_div(&dprime, &candidates)?.div_linear_power(&xv, 1));

    let contours = Strategy::default().map(&kernels, |k| contour_sum(f, k));
    if strict {
        if let Some(term) = contours.iter().position(|c| !c.proper) {
            return Err(Error::ImproperIntegrand { term: term + 1 });
        }
    }
    let terms: Vec<Rational> = contours[..n].iter().map(|c| c.value.clone()).collect();
    let tail = contours[n].value.clone();
    let total = terms.iter().fold(tail.clone(), |s, t| s + t);
    Ok(Prop4Report { terms, tail, total, value: f.eval(&xv), contours })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prop5Report {
    /// `(1/2πi) ∮ (D(z)/N(z) - D(x)/N(x)) / (z - x) · F(z) N(z) / D(z) dz`.
    pub main: Rational,
    /// `D(x)/N(x) · (1/2πi) ∮ F(z) N(z) / ((z - x) D(z)) dz`.
    pub remainder: Rational,
    pub value: Rational,
    /// `N` and `D` as polynomials in `z` after substitution.
    pub numerator: UPoly,
    pub denominator: UPoly,
}

impl Prop5Report {
    pub fn holds(&self) -> bool {
        &self.main + &self.remainder == self.value
    }
}

fn cover_product(p: &Poset) -> Polynomial {
    p.covers()
        .iter()
        .fold(Polynomial::one(), |acc, &(lo, hi)| acc.mul_difference(p.var(hi), p.var(lo)))
}

/// Lagrange-type expansion of `F(x)` from `G(P) = N/D` in the variable of
/// `z_elem`, with `D` the product of cover differences `(upper - lower)`.
/// Every variable except `z`'s is assigned; `x` is a separate point.
pub fn prop5_expand(p: &Poset, z_elem: ElementId, f: &UPoly, assign: &Assignment, x: &Rational, limits: &Limits) -> Result<Prop5Report> {
    if z_elem >= p.len() {
        return Err(Error::UnknownElement(z_elem.to_string()));
    }
    let nd = nd_structure(p, limits)?;
    let z = p.var(z_elem);
    let mut partial = assign.clone();
    partial.remove(&z);
    let n_z = nd.oriented_numerator.substitute(&partial).to_univariate(z)?;
    let d_z = cover_product(p).substitute(&partial).to_univariate(z)?;
    let (n_x, d_x) = (n_z.eval(x), d_z.eval(x));
    if d_x.is_zero() {
        return Err(Error::PoleAtX);
    }
    if n_x.is_zero() {
        return Err(Error::DivisionByZero("N vanishes at x".into()));
    }
    let candidates: Vec<Rational> = partial.values().cloned().collect();

    // F(z) (N(x) D(z) - D(x) N(z)) / (N(x) (z - x) D(z))
    let top = d_z.scale(&n_x).sub(&n_z.scale(&d_x));
    let top = top.div_linear(x).expect("vanishes at z = x");
    let main_kernel = UnivariateRational::from_ratio(z, top, &d_z.scale(&n_x), &candidates)?;
    let rest_kernel = UnivariateRational::from_ratio(z, n_z.clone(), &d_z, &candidates)?.div_linear_power(x, 1);

    let main = contour_sum(f, &main_kernel).value;
    let remainder = contour_sum(f, &rest_kernel).value * &d_x / &n_x;
    Ok(Prop5Report { main, remainder, value: f.eval(x), numerator: n_z, denominator: d_z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use crate::poset::Catalog;

    fn assign(pairs: &[(VarIndex, i64)]) -> Assignment {
        pairs.iter().map(|&(v, x)| (v, rat(x))).collect()
    }

    #[test]
    fn triangle_split_matches_closed_forms() {
        let seq = MarkedPosetSequence::triangle(1);
        let s = split_greene(&seq.items()[0], &Limits::default()).unwrap();
        assert!(s.holds());
        // G'' = 1/(x - x_1), G''' = 1/((z - x_1)(x_1 - x))
        assert_eq!(s.g_dprime, RationalFunction::inverse_difference(1, 2).unwrap());
        assert_eq!(s.g_tprime, RationalFunction::inverse_difference_product(&[(0, 2), (2, 1)]).unwrap());
        assert_eq!(s.g_prime, RationalFunction::inverse_difference(0, 2).unwrap());
    }

    #[test]
    fn chain_split() {
        let p = Catalog::Chain(2).build();
        let mp = MarkedPoset::new(p, 1, 0).unwrap();
        let s = split_greene(&mp, &Limits::default()).unwrap();
        assert_eq!(s.g_dprime, RationalFunction::one());
        assert!(s.g_tprime.is_zero());
        assert!(recursion_step_check(&mp, &assign(&[(0, 4), (1, 1)]), &Limits::default()).unwrap());
        assert_eq!(MarkedPoset::new(Catalog::Chain(2).build(), 0, 1), Err(Error::NotCoverEdge(0, 1)));
    }

    #[test]
    fn recursion_step_triangle() {
        let seq = MarkedPosetSequence::triangle(1);
        let a = assign(&[(0, 5), (1, 0), (2, 1)]);
        assert!(recursion_step_check(&seq.items()[0], &a, &Limits::default()).unwrap());
    }

    #[test]
    fn prop4_triangle_is_newton() {
        let seq = MarkedPosetSequence::triangle(3);
        let f = UPoly::new(vec![rat(2), rat(-1), rat(3)]);
        let a = assign(&[(1, 7), (2, 0), (3, 1), (4, -2)]);
        let r = prop4_expand(&seq, &f, 3, &a, false, &Limits::default()).unwrap();
        assert!(r.holds());
        // F(x_1) = 2
        assert_eq!(r.terms[0], rat(2));
        assert!(r.tail.is_zero());
        assert_eq!(
            prop4_expand(&seq, &f, 3, &a, true, &Limits::default()),
            Err(Error::ImproperIntegrand { term: 1 })
        );
    }

    #[test]
    fn prop4_constant() {
        let seq = MarkedPosetSequence::triangle(2);
        let r = prop4_expand(&seq, &UPoly::constant(rat(5)), 2, &assign(&[(1, 7), (2, 0), (3, 1)]), false, &Limits::default())
            .unwrap();
        assert_eq!(r.terms, vec![rat(5), rat(0)]);
    }

    #[test]
    fn prop5_star_and_diamond() {
        let star = Catalog::Star(2).build();
        let f = UPoly::new(vec![rat(1), rat(0), rat(1)]);
        let r = prop5_expand(&star, 0, &f, &assign(&[(1, 0), (2, 1)]), &rat(3), &Limits::default()).unwrap();
        assert!(r.holds());
        // L_F at nodes 0, 1 is 1 + x, so L_F(3) = 4.
        assert_eq!(r.main, rat(4));
        let d = Catalog::Diamond.build();
        let r = prop5_expand(&d, 0, &f, &assign(&[(1, 2), (2, 5), (3, -1)]), &ratio(1, 2), &Limits::default()).unwrap();
        assert!(r.holds());
        assert_eq!(
            prop5_expand(&star, 0, &f, &assign(&[(1, 0), (2, 1)]), &rat(1), &Limits::default()),
            Err(Error::PoleAtX)
        );
    }
}
