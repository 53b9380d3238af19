use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{default_var_name, Assignment, Rational, UPoly, VarIndex};
use crate::error::{Error, Result};

/// Exponent vector with trailing zeros trimmed, ordered graded-lexicographically
/// (total degree first, then lexicographic with `x0` the most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarIndex) -> Self {
        let mut e = vec![0; v + 1];
        e[v] = 1;
        Monomial(e)
    }

    pub fn from_exponents(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, v: VarIndex) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut e = long.clone();
        for (a, b) in e.iter_mut().zip(short) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / other` when every exponent of `other` is dominated.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = self.0.clone();
        for (a, b) in e.iter_mut().zip(&other.0) {
            if *a < *b {
                return None;
            }
            *a -= b;
        }
        Some(Monomial::from_exponents(e))
    }

    fn with_exponent(&self, v: VarIndex, k: u32) -> Monomial {
        let mut e = self.0.clone();
        if e.len() <= v {
            e.resize(v + 1, 0);
        }
        e[v] = k;
        Monomial::from_exponents(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals. Zero coefficients are
/// never stored, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: VarIndex) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(v), Rational::one());
        p
    }

    /// `x_i - x_j`.
    pub fn difference(i: VarIndex, j: VarIndex) -> Self {
        let mut p = Polynomial::var(i);
        p.add_term(Monomial::var(j), -Rational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Embeds a univariate polynomial in variable `v`.
    pub fn from_univariate(u: &UPoly, v: VarIndex) -> Self {
        Polynomial::from_terms(u.coeffs().iter().enumerate().map(|(k, c)| {
            (Monomial::one().with_exponent(v, k as u32), c.clone())
        }))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn variables(&self) -> Vec<VarIndex> {
        let mut seen = Vec::new();
        for m in self.terms.keys() {
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 && !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        seen.sort_unstable();
        seen
    }

    pub fn degree_in(&self, v: VarIndex) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Multiplies by `x_i - x_j`.
    pub fn mul_difference(&self, i: VarIndex, j: VarIndex) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.mul(&Monomial::var(i)), c.clone());
            out.add_term(m.mul(&Monomial::var(j)), -c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`, or [`Error::NotDivisible`].
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial> {
        let (dm, dc) = match d.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DivisionByZero("polynomial division".into())),
        };
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&dm).ok_or(Error::NotDivisible)?;
            let qc = rc / &dc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Quotient by `x_i - x_j` if it divides exactly.
    pub fn div_difference(&self, i: VarIndex, j: VarIndex) -> Option<Polynomial> {
        // Cheap rejection: the polynomial must vanish under x_i -> x_j.
        if !self.substitute_var(i, j).is_zero() {
            return None;
        }
        self.exact_div(&Polynomial::difference(i, j)).ok()
    }

    /// Replaces every occurrence of `x_from` by `x_to`.
    pub fn substitute_var(&self, from: VarIndex, to: VarIndex) -> Polynomial {
        if from == to {
            return self.clone();
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let k = m.exponent(from);
            if k == 0 {
                out.add_term(m.clone(), c.clone());
            } else {
                let moved = m.with_exponent(from, 0);
                let e = moved.exponent(to) + k;
                out.add_term(moved.with_exponent(to, e), c.clone());
            }
        }
        out
    }

    /// Substitutes the assigned variables, leaving the rest symbolic.
    pub fn substitute(&self, assign: &Assignment) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::with_capacity(m.exponents().len());
            for (v, &e) in m.exponents().iter().enumerate() {
                match assign.get(&v) {
                    Some(val) if e > 0 => {
                        coeff *= num_traits::pow(val.clone(), e as usize);
                        rest.push(0);
                    }
                    _ => rest.push(e),
                }
            }
            out.add_term(Monomial::from_exponents(rest), coeff);
        }
        out
    }

    /// Full evaluation; every occurring variable must be assigned.
    pub fn eval(&self, assign: &Assignment) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let val = assign.get(&v).ok_or(Error::Unassigned(v))?;
                    t *= num_traits::pow(val.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Views the polynomial as univariate in `v`; fails if other variables occur.
    pub fn to_univariate(&self, v: VarIndex) -> Result<UPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            if let Some(other) = m
                .exponents()
                .iter()
                .enumerate()
                .find(|&(w, &e)| w != v && e > 0)
            {
                return Err(Error::Unassigned(other.0));
            }
            coeffs[m.exponent(v) as usize] += c;
        }
        Ok(UPoly::new(coeffs))
    }

    pub fn display_with<'a>(&'a self, names: &'a dyn Fn(VarIndex) -> String) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }

    pub(crate) fn needs_parens(&self) -> bool {
        self.terms.len() > 1
            || self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| !m.is_one() && c.is_negative())
    }
}

struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a dyn Fn(VarIndex) -> String,
}

fn fmt_monomial(m: &Monomial, names: &dyn Fn(VarIndex) -> String) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names(v)),
            _ => parts.push(format!("{}^{}", names(v), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let abs = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_monomial(m, self.names))?;
            } else {
                write!(f, "{abs}*{}", fmt_monomial(m, self.names))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&default_var_name))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &Polynomial::difference(1, 2) * &(&x(1) + &x(2));
        let expect = &x(1).pow(2) - &x(2).pow(2);
        assert_eq!(p, expect);
        assert_eq!(p.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn adding_zero_is_identity() {
        let p = &(&x(0) * &x(3)) - &Polynomial::constant(rat(7));
        assert_eq!(&p + &Polynomial::zero(), p);
    }

    #[test]
    fn triple_difference_product_at_321() {
        let p = &(&Polynomial::difference(1, 2) * &Polynomial::difference(2, 3))
            * &Polynomial::difference(1, 3);
        let a: Assignment = [(1, rat(3)), (2, rat(2)), (3, rat(1))].into_iter().collect();
        assert_eq!(p.eval(&a).unwrap(), rat(2));
    }

    #[test]
    fn exact_division() {
        let n = &x(1).pow(2) - &x(2).pow(2);
        assert_eq!(
            n.exact_div(&Polynomial::difference(1, 2)).unwrap(),
            &x(1) + &x(2)
        );
        assert_eq!(
            Polynomial::difference(1, 2).exact_div(&Polynomial::difference(1, 3)),
            Err(Error::NotDivisible)
        );
        assert!(Polynomial::difference(1, 2).div_difference(1, 3).is_none());
    }

    #[test]
    fn grlex_display_order() {
        let p = Polynomial::from_terms([
            (Monomial::from_exponents(vec![0, 1]), rat(1)),
            (Monomial::from_exponents(vec![2]), rat(-2)),
            (Monomial::one(), rat(5)),
            (Monomial::from_exponents(vec![1, 1]), rat(3)),
        ]);
        assert_eq!(p.to_string(), "-2*x0^2 + 3*x0*x1 + x1 + 5");
    }

    #[test]
    fn substitution() {
        let p = &Polynomial::difference(0, 1) * &x(2);
        assert_eq!(p.substitute_var(0, 1), Polynomial::zero());
        let a: Assignment = [(2, rat(4))].into_iter().collect();
        assert_eq!(p.substitute(&a), Polynomial::difference(0, 1).scale(&rat(4)));
    }
}
