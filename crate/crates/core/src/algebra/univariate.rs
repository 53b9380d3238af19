use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Rational, VarIndex};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients in ascending degree, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn identity() -> Self {
        UPoly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `z - r`.
    pub fn linear(r: &Rational) -> Self {
        UPoly::new(vec![-r.clone(), Rational::one()])
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        UPoly(c)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots
            .into_iter()
            .fold(UPoly::one(), |acc, r| acc.mul(&UPoly::linear(r)))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    pub fn scale(&self, s: &Rational) -> UPoly {
        UPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn pow(&self, k: usize) -> UPoly {
        (0..k).fold(UPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut rem = self.0.clone();
        let Some(sd) = self.degree().filter(|&s| s >= dd) else {
            return (UPoly::zero(), self.clone());
        };
        let mut q = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        (UPoly::new(q), UPoly::new(rem))
    }

    /// Synthetic division by `z - r`: returns the quotient when `r` is a root.
    pub fn div_linear(&self, r: &Rational) -> Option<UPoly> {
        let n = self.0.len();
        if n == 0 {
            return Some(UPoly::zero());
        }
        let mut q = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for k in (0..n).rev() {
            let cur = &self.0[k] + &carry * r;
            if k == 0 {
                return cur.is_zero().then(|| UPoly::new(q));
            }
            q[k - 1] = cur.clone();
            carry = cur;
        }
        unreachable!()
    }

    /// Coefficients of `p(r + w)` as a polynomial in `w`.
    pub fn taylor_shift(&self, r: &Rational) -> UPoly {
        // Horner in the shifted variable.
        let shift = UPoly::new(vec![r.clone(), Rational::one()]);
        self.0
            .iter()
            .rev()
            .fold(UPoly::zero(), |acc, c| acc.mul(&shift).add(&UPoly::constant(c.clone())))
    }

    pub fn display_var<'a>(&'a self, name: &'a str) -> impl fmt::Display + 'a {
        UPolyDisplay { poly: self, name }
    }
}

struct UPolyDisplay<'a> {
    poly: &'a UPoly,
    name: &'a str,
}

impl fmt::Display for UPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.poly.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => self.name.to_string(),
                _ => format!("{}^{}", self.name, k),
            };
            if k == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("z"))
    }
}

/// Univariate rational function `numer / prod (z - p)^m` with rational poles.
///
/// The denominator is monic and coprime to the numerator: no stored pole
/// is a root of `numer`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateRational {
    var: VarIndex,
    numer: UPoly,
    poles: BTreeMap<Rational, u32>,
}

impl UnivariateRational {
    pub fn from_parts(var: VarIndex, numer: UPoly, poles: BTreeMap<Rational, u32>) -> Self {
        let mut u = UnivariateRational { var, numer, poles };
        u.reduce();
        u
    }

    pub fn polynomial(var: VarIndex, p: UPoly) -> Self {
        UnivariateRational::from_parts(var, p, BTreeMap::new())
    }

    /// `numer / den`, splitting `den` over the candidate roots.
    /// Fails with [`Error::IrrationalPole`] if `den` does not split over them.
    pub fn from_ratio(var: VarIndex, numer: UPoly, den: &UPoly, candidates: &[Rational]) -> Result<Self> {
        let deg = den
            .degree()
            .ok_or_else(|| Error::DivisionByZero("zero denominator".into()))?;
        let lead = den.coeff(deg);
        let mut rest = den.scale(&(Rational::one() / &lead));
        let mut poles = BTreeMap::new();
        for c in candidates {
            while let Some(q) = rest.div_linear(c) {
                if rest.degree() == Some(0) {
                    break;
                }
                *poles.entry(c.clone()).or_insert(0) += 1;
                rest = q;
            }
        }
        if rest.degree() != Some(0) {
            return Err(Error::IrrationalPole);
        }
        let scale = Rational::one() / (lead * rest.coeff(0));
        Ok(UnivariateRational::from_parts(var, numer.scale(&scale), poles))
    }

    fn reduce(&mut self) {
        if self.numer.is_zero() {
            self.poles.clear();
            return;
        }
        let keys: Vec<Rational> = self.poles.keys().cloned().collect();
        for p in keys {
            while self.poles[&p] > 0 {
                match self.numer.div_linear(&p) {
                    Some(q) => {
                        self.numer = q;
                        *self.poles.get_mut(&p).unwrap() -= 1;
                    }
                    None => break,
                }
            }
            if self.poles[&p] == 0 {
                self.poles.remove(&p);
            }
        }
    }

    pub fn var(&self) -> VarIndex {
        self.var
    }

    pub fn numerator(&self) -> &UPoly {
        &self.numer
    }

    pub fn poles(&self) -> &BTreeMap<Rational, u32> {
        &self.poles
    }

    pub fn denominator(&self) -> UPoly {
        self.poles
            .iter()
            .fold(UPoly::one(), |acc, (p, &m)| acc.mul(&UPoly::linear(p).pow(m as usize)))
    }

    pub fn denominator_degree(&self) -> usize {
        self.poles.values().map(|&m| m as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// Whether `deg numer <= deg denom - 2`, i.e. no residue at infinity.
    pub fn is_proper_at_infinity(&self) -> bool {
        match self.numer.degree() {
            None => true,
            Some(d) => d + 2 <= self.denominator_degree(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let mut den = Rational::one();
        for (p, &m) in &self.poles {
            let d = x - p;
            if d.is_zero() {
                return Err(Error::PoleAtX);
            }
            den *= num_traits::pow(d, m as usize);
        }
        Ok(self.numer.eval(x) / den)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        UnivariateRational::from_parts(self.var, self.numer.scale(s), self.poles.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut poles = self.poles.clone();
        for (p, &m) in &o.poles {
            *poles.entry(p.clone()).or_insert(0) += m;
        }
        UnivariateRational::from_parts(self.var, self.numer.mul(&o.numer), poles)
    }

    pub fn mul_poly(&self, p: &UPoly) -> Self {
        UnivariateRational::from_parts(self.var, self.numer.mul(p), self.poles.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut poles = self.poles.clone();
        for (p, &m) in &o.poles {
            let e = poles.entry(p.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |u: &Self| {
            let mut n = u.numer.clone();
            for (p, &m) in &poles {
                let have = u.poles.get(p).copied().unwrap_or(0);
                n = n.mul(&UPoly::linear(p).pow((m - have) as usize));
            }
            n
        };
        let numer = lift(self).add(&lift(o));
        UnivariateRational::from_parts(self.var, numer, poles)
    }

    pub fn neg(&self) -> Self {
        UnivariateRational {
            var: self.var,
            numer: self.numer.neg(),
            poles: self.poles.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Divides by `(z - p)^m`.
    pub fn div_linear_power(&self, p: &Rational, m: u32) -> Self {
        let mut poles = self.poles.clone();
        *poles.entry(p.clone()).or_insert(0) += m;
        UnivariateRational::from_parts(self.var, self.numer.clone(), poles)
    }

    /// `self / o`; the roots of `o`'s numerator must lie among `candidates`.
    pub fn checked_div(&self, o: &Self, candidates: &[Rational]) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero("univariate rational function".into()));
        }
        let inv = UnivariateRational::from_ratio(self.var, o.denominator(), &o.numer, candidates)?;
        Ok(self.mul(&inv))
    }
}

/// Coefficient of `1/(z - pole)` in the Laurent expansion of `u` at `pole`;
/// zero when `u` is regular there.
pub fn residue(u: &UnivariateRational, pole: &Rational) -> Rational {
    let Some(&m) = u.poles.get(pole) else {
        return Rational::zero();
    };
    let m = m as usize;
    // u = A(z) / ((z - pole)^m Q(z)); need [w^{m-1}] A(pole+w)/Q(pole+w).
    let a = u.numer.taylor_shift(pole);
    let q = u
        .poles
        .iter()
        .filter(|(p, _)| *p != pole)
        .fold(UPoly::one(), |acc, (p, &k)| {
            acc.mul(&UPoly::linear(p).pow(k as usize))
        })
        .taylor_shift(pole);
    // Power-series division a / q up to order m-1.
    let q0 = q.coeff(0);
    let mut s: Vec<Rational> = Vec::with_capacity(m);
    for k in 0..m {
        let mut c = a.coeff(k);
        for j in 1..=k {
            c -= q.coeff(j) * &s[k - j];
        }
        s.push(c / &q0);
    }
    s.pop().unwrap_or_else(Rational::zero)
}

/// Outcome of a contour evaluation: the sum of all finite residues of
/// `F * kernel`, with the integrand's behaviour at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContourReport {
    pub value: Rational,
    pub proper: bool,
    pub numerator_degree: Option<usize>,
    pub denominator_degree: usize,
}

/// `1/(2 pi i)` times the integral of `F(z) * kernel(z)` over a circle
/// enclosing every finite pole, realized as the sum of those residues.
pub fn contour_sum(f: &UPoly, kernel: &UnivariateRational) -> ContourReport {
    let integrand = kernel.mul_poly(f);
    let value = integrand
        .poles
        .keys()
        .map(|p| residue(&integrand, p))
        .fold(Rational::zero(), |a, b| a + b);
    ContourReport {
        value,
        proper: integrand.is_proper_at_infinity(),
        numerator_degree: integrand.numer.degree(),
        denominator_degree: integrand.denominator_degree(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn poles(ps: &[(i64, u32)]) -> BTreeMap<Rational, u32> {
        ps.iter().map(|&(p, m)| (rat(p), m)).collect()
    }

    #[test]
    fn simple_pole_residue() {
        let u = UnivariateRational::from_parts(0, UPoly::one(), poles(&[(0, 1), (1, 1)]));
        assert_eq!(residue(&u, &rat(0)), rat(-1));
        assert_eq!(residue(&u, &rat(1)), rat(1));
        assert_eq!(residue(&u, &rat(5)), rat(0));
    }

    #[test]
    fn double_pole_without_simple_term() {
        let u = UnivariateRational::from_parts(0, UPoly::one(), poles(&[(3, 2)]));
        assert_eq!(residue(&u, &rat(3)), rat(0));
    }

    #[test]
    fn residue_limit_oracle() {
        // z^2 / ((z-1)(z-2)) at 2: limit (z-2) u = 4 / 1.
        let u = UnivariateRational::from_parts(0, UPoly::monomial(2), poles(&[(1, 1), (2, 1)]));
        assert_eq!(residue(&u, &rat(2)), rat(4));
    }

    #[test]
    fn higher_order_residue_matches_derivative_formula() {
        // z^3/(z-1)^3 at 1: (1/2) d^2/dz^2 z^3 = 3.
        let u = UnivariateRational::from_parts(0, UPoly::monomial(3), poles(&[(1, 3)]));
        assert_eq!(residue(&u, &rat(1)), rat(3));
        // 1/((z-1)^2 (z+1)) at 1: d/dz 1/(z+1) = -1/4.
        let v = UnivariateRational::from_parts(0, UPoly::one(), poles(&[(1, 2), (-1, 1)]));
        assert_eq!(residue(&v, &rat(1)), ratio(-1, 4));
        assert_eq!(residue(&v, &rat(-1)), ratio(1, 4));
    }

    #[test]
    fn contour_examples() {
        let k = UnivariateRational::from_parts(0, UPoly::one(), poles(&[(0, 1), (1, 1)]));
        let r = contour_sum(&UPoly::one(), &k);
        assert_eq!(r.value, rat(0));
        assert!(r.proper);
        assert_eq!(contour_sum(&UPoly::identity(), &k).value, rat(1));
        let cauchy = UnivariateRational::from_parts(0, UPoly::one(), poles(&[(7, 1)]));
        let r = contour_sum(&UPoly::one(), &cauchy);
        assert_eq!(r.value, rat(1));
        assert!(!r.proper);
    }

    #[test]
    fn reduction_cancels_common_roots() {
        let n = UPoly::from_roots(&[rat(2), rat(5)]);
        let u = UnivariateRational::from_parts(0, n, poles(&[(2, 2)]));
        assert_eq!(u.poles(), &poles(&[(2, 1)]));
        assert_eq!(u.numerator(), &UPoly::linear(&rat(5)));
    }

    #[test]
    fn ratio_splitting() {
        let den = UPoly::from_roots(&[rat(1), rat(1), rat(-3)]).scale(&rat(2));
        let u = UnivariateRational::from_ratio(0, UPoly::one(), &den, &[rat(-3), rat(1)]).unwrap();
        assert_eq!(u.poles(), &poles(&[(1, 2), (-3, 1)]));
        assert_eq!(u.numerator(), &UPoly::constant(ratio(1, 2)));
        let irreducible = UPoly::new(vec![rat(1), rat(0), rat(1)]);
        assert_eq!(
            UnivariateRational::from_ratio(0, UPoly::one(), &irreducible, &[rat(1)]),
            Err(Error::IrrationalPole)
        );
    }

    #[test]
    fn taylor_shift_and_division() {
        let p = UPoly::new(vec![rat(1), rat(2), rat(3)]);
        let s = p.taylor_shift(&rat(2));
        for w in -3..4 {
            assert_eq!(s.eval(&rat(w)), p.eval(&rat(2 + w)));
        }
        let (q, r) = p.div_rem(&UPoly::linear(&rat(1)));
        assert_eq!(q.mul(&UPoly::linear(&rat(1))).add(&r), p);
    }
}
