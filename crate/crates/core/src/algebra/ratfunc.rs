use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{default_var_name, Assignment, Polynomial, Rational, UPoly, UnivariateRational, VarIndex};
use crate::error::{Error, Result};

/// `(x_hi - x_lo)^exponent` with `hi < lo` in the global variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DifferenceFactor {
    pub hi: VarIndex,
    pub lo: VarIndex,
    pub exponent: u32,
}

/// Exact rational function `numerator / prod (x_hi - x_lo)^e`.
///
/// Denominators are restricted to products of variable differences, which
/// is all that Greene sums and divided differences produce. Every value is
/// kept reduced: no denominator factor divides the numerator. The sign that
/// normalization moves out of factors lives in the numerator, so two values
/// are equal iff their representations are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalFunction {
    numer: Polynomial,
    denom: BTreeMap<(VarIndex, VarIndex), u32>,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction::default()
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            numer: p,
            denom: BTreeMap::new(),
        }
    }

    /// `numer / prod (x_i - x_j)` over the given ordered pairs, reduced.
    pub fn new(numer: Polynomial, differences: &[(VarIndex, VarIndex)]) -> Result<Self> {
        let mut r = RationalFunction::from_poly(numer);
        for &(i, j) in differences {
            r = r.div_difference(i, j)?;
        }
        Ok(r)
    }

    /// `1 / (x_i - x_j)`.
    pub fn inverse_difference(i: VarIndex, j: VarIndex) -> Result<Self> {
        RationalFunction::one().div_difference(i, j)
    }

    /// `1 / prod (x_i - x_j)`.
    pub fn inverse_difference_product(pairs: &[(VarIndex, VarIndex)]) -> Result<Self> {
        RationalFunction::new(Polynomial::one(), pairs)
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numer
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = DifferenceFactor> + '_ {
        self.denom.iter().map(|(&(hi, lo), &exponent)| DifferenceFactor { hi, lo, exponent })
    }

    /// The denominator expanded into a polynomial.
    pub fn denominator(&self) -> Polynomial {
        self.denom.iter().fold(Polynomial::one(), |acc, (&(i, j), &e)| {
            (0..e).fold(acc, |a, _| a.mul_difference(i, j))
        })
    }

    pub fn denominator_degree(&self) -> u32 {
        self.denom.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.is_empty()
    }

    /// Divides by `x_i - x_j`; `i == j` is a division by zero.
    pub fn div_difference(&self, i: VarIndex, j: VarIndex) -> Result<Self> {
        if i == j {
            return Err(Error::DivisionByZero(format!("(x{i} - x{j})")));
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        // Cancel against the numerator straight away when possible.
        if let Some(q) = self.numer.div_difference(key.0, key.1) {
            return Ok(RationalFunction {
                numer: if flip { -q } else { q },
                denom: self.denom.clone(),
            });
        }
        let mut denom = self.denom.clone();
        *denom.entry(key).or_insert(0) += 1;
        Ok(RationalFunction {
            numer: if flip { -&self.numer } else { self.numer.clone() },
            denom,
        })
    }

    pub fn mul_difference(&self, i: VarIndex, j: VarIndex) -> Self {
        if i == j {
            return RationalFunction::zero();
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        let mut denom = self.denom.clone();
        match denom.get_mut(&key) {
            Some(e) => {
                *e -= 1;
                if *e == 0 {
                    denom.remove(&key);
                }
                RationalFunction {
                    numer: if flip { -&self.numer } else { self.numer.clone() },
                    denom,
                }
            }
            None => RationalFunction {
                numer: self.numer.mul_difference(i, j),
                denom,
            },
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            numer: self.numer.scale(c),
            denom: self.denom.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        RationalFunction {
            numer: &self.numer * p,
            denom: self.denom.clone(),
        }
        .reduced()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(RationalFunction::one(), |acc, _| &acc * self)
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduced(mut self) -> Self {
        if self.numer.is_zero() {
            self.denom.clear();
            return self;
        }
        let keys: Vec<(VarIndex, VarIndex)> = self.denom.keys().copied().collect();
        for key in keys {
            loop {
                let e = self.denom[&key];
                if e == 0 {
                    break;
                }
                match self.numer.div_difference(key.0, key.1) {
                    Some(q) => {
                        self.numer = q;
                        *self.denom.get_mut(&key).unwrap() -= 1;
                    }
                    None => break,
                }
            }
            if self.denom[&key] == 0 {
                self.denom.remove(&key);
            }
        }
        self
    }

    /// Sum of many terms over their least common denominator, reduced once.
    pub fn sum<'a>(terms: impl IntoIterator<Item = &'a RationalFunction>) -> Self {
        let terms: Vec<&RationalFunction> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        match terms.len() {
            0 => return RationalFunction::zero(),
            1 => return terms[0].clone(),
            _ => {}
        }
        let mut lcm: BTreeMap<(VarIndex, VarIndex), u32> = BTreeMap::new();
        for t in &terms {
            for (&k, &e) in &t.denom {
                let slot = lcm.entry(k).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        let mut numer = Polynomial::zero();
        for t in &terms {
            let mut n = t.numer.clone();
            for (&(i, j), &e) in &lcm {
                let have = t.denom.get(&(i, j)).copied().unwrap_or(0);
                for _ in have..e {
                    n = n.mul_difference(i, j);
                }
            }
            numer = &numer + &n;
        }
        RationalFunction { numer, denom: lcm }.reduced()
    }

    pub fn eval(&self, assign: &Assignment) -> Result<Rational> {
        let mut den = Rational::one();
        for (&(i, j), &e) in &self.denom {
            let a = assign.get(&i).ok_or(Error::Unassigned(i))?;
            let b = assign.get(&j).ok_or(Error::Unassigned(j))?;
            let d = a - b;
            if d.is_zero() {
                return Err(Error::PoleCollision(i, j));
            }
            den *= num_traits::pow(d, e as usize);
        }
        Ok(self.numer.eval(assign)? / den)
    }

    /// Substitutes every variable except `keep`, giving a univariate function.
    pub fn specialize(&self, assign: &Assignment, keep: VarIndex) -> Result<UnivariateRational> {
        let mut scale = Rational::one();
        let mut poles: BTreeMap<Rational, u32> = BTreeMap::new();
        for (&(i, j), &e) in &self.denom {
            let val = |v: VarIndex| assign.get(&v).cloned().ok_or(Error::Unassigned(v));
            if i == keep {
                // (z - a)^e
                *poles.entry(val(j)?).or_insert(0) += e;
            } else if j == keep {
                // (a - z)^e = (-1)^e (z - a)^e
                *poles.entry(val(i)?).or_insert(0) += e;
                if e % 2 == 1 {
                    scale = -scale;
                }
            } else {
                let d = val(i)? - val(j)?;
                if d.is_zero() {
                    return Err(Error::PoleCollision(i, j));
                }
                scale /= num_traits::pow(d, e as usize);
            }
        }
        let mut partial = assign.clone();
        partial.remove(&keep);
        let numer = self.numer.substitute(&partial).to_univariate(keep)?;
        Ok(UnivariateRational::from_parts(keep, numer.scale(&scale), poles))
    }

    /// Substitutes `x_from -> x_to`; a surviving `(x_from - x_to)` factor is an error.
    pub fn substitute_var(&self, from: VarIndex, to: VarIndex) -> Result<Self> {
        if from == to {
            return Ok(self.clone());
        }
        let mut out = RationalFunction::from_poly(self.numer.substitute_var(from, to));
        for (&(i, j), &e) in &self.denom {
            let a = if i == from { to } else { i };
            let b = if j == from { to } else { j };
            if a == b {
                return Err(Error::SubstitutionPole(i, j));
            }
            for _ in 0..e {
                out = out.div_difference(a, b)?;
            }
        }
        Ok(out)
    }

    /// Renames variables through `f` (must be injective on the occurring ones).
    pub fn rename(&self, f: impl Fn(VarIndex) -> VarIndex) -> Self {
        let mut numer = Polynomial::zero();
        for (m, c) in self.numer.terms() {
            let mut exps = Vec::new();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let w = f(v);
                    if exps.len() <= w {
                        exps.resize(w + 1, 0);
                    }
                    exps[w] += e;
                }
            }
            numer = &numer + &Polynomial::from_terms([(super::Monomial::from_exponents(exps), c.clone())]);
        }
        let mut out = RationalFunction::from_poly(numer);
        for (&(i, j), &e) in &self.denom {
            for _ in 0..e {
                out = out
                    .div_difference(f(i), f(j))
                    .expect("renaming must stay injective");
            }
        }
        out
    }

    pub fn display_with<'a>(&'a self, names: &'a dyn Fn(VarIndex) -> String) -> impl fmt::Display + 'a {
        RfDisplay { rf: self, names }
    }

    /// Expands numerator and denominator as univariate polynomials in `v`
    /// when no other variable occurs.
    pub fn to_univariate_parts(&self, v: VarIndex) -> Result<(UPoly, UPoly)> {
        Ok((self.numer.to_univariate(v)?, self.denominator().to_univariate(v)?))
    }
}

struct RfDisplay<'a> {
    rf: &'a RationalFunction,
    names: &'a dyn Fn(VarIndex) -> String,
}

impl fmt::Display for RfDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names;
        if self.rf.denom.is_empty() {
            return write!(f, "{}", self.rf.numer.display_with(names));
        }
        if self.rf.numer.needs_parens() {
            write!(f, "({})", self.rf.numer.display_with(names))?;
        } else {
            write!(f, "{}", self.rf.numer.display_with(names))?;
        }
        let factors: Vec<String> = self
            .rf
            .denom
            .iter()
            .map(|(&(i, j), &e)| {
                let base = format!("({} - {})", names(i), names(j));
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        if factors.len() == 1 && !factors[0].contains('^') {
            write!(f, "/{}", factors[0])
        } else {
            write!(f, "/({})", factors.join("*"))
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&default_var_name))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::sum([self, rhs])
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let neg = -rhs;
        RationalFunction::sum([self, &neg])
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let mut denom = self.denom.clone();
        for (&k, &e) in &rhs.denom {
            *denom.entry(k).or_insert(0) += e;
        }
        RationalFunction {
            numer: &self.numer * &rhs.numer,
            denom,
        }
        .reduced()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            numer: -self.numer,
            denom: self.denom,
        }
    }
}
