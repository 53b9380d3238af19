//! Divided differences, Newton series and Lagrange interpolation, with the
//! determinant identities that tie them to Greene sums.

mod identities;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

pub use identities::{
    example1_check, example3_check, prop2_check, prop3_expand, Example1Report, Example3Report, Prop2Report,
    Prop3Report,
};

use crate::algebra::{
    contour_sum, Domain, Numeric, Polynomial, Rational, RationalFunction, Symbolic, UPoly, UnivariateRational,
    VarIndex,
};
use crate::error::{Error, Result};
use crate::exec::Strategy;

/// Interpolation nodes.
#[derive(Debug, Clone, PartialEq)]
pub enum NodeSet {
    Symbolic(Vec<VarIndex>),
    Numeric(Vec<Rational>),
}

impl NodeSet {
    pub fn len(&self) -> usize {
        match self {
            NodeSet::Symbolic(v) => v.len(),
            NodeSet::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A function of one variable, known as a polynomial, a ratio of
/// polynomials, or by its values on finitely many points.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionValue {
    Polynomial(UPoly),
    Ratio { numer: UPoly, denom: UPoly },
    Table(BTreeMap<Rational, Rational>),
}

impl FunctionValue {
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        match self {
            FunctionValue::Polynomial(p) => Ok(p.eval(x)),
            FunctionValue::Ratio { numer, denom } => {
                let d = denom.eval(x);
                if d.is_zero() {
                    return Err(Error::DivisionByZero(format!("denominator vanishes at {x}")));
                }
                Ok(numer.eval(x) / d)
            }
            FunctionValue::Table(t) => t
                .get(x)
                .cloned()
                .ok_or_else(|| Error::PreconditionFailed(format!("table has no value at {x}"))),
        }
    }

    /// `F(x_v)` as a polynomial in the variable `v`.
    pub fn eval_var(&self, v: VarIndex) -> Result<RationalFunction> {
        match self {
            FunctionValue::Polynomial(p) => Ok(RationalFunction::from_poly(Polynomial::from_univariate(p, v))),
            _ => Err(Error::FormUnavailable("symbolic evaluation of a non-polynomial")),
        }
    }

    pub fn as_polynomial(&self) -> Option<&UPoly> {
        match self {
            FunctionValue::Polynomial(p) => Some(p),
            _ => None,
        }
    }
}

/// Result of an operation that is rational for numeric nodes and a
/// rational function for symbolic ones.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Function(RationalFunction),
}

/// Domains whose nodes a [`FunctionValue`] can be evaluated at.
pub trait Evaluate: Domain {
    fn apply(f: &FunctionValue, node: &Self::Node) -> Result<Self::Value>;
}

impl Evaluate for Numeric {
    fn apply(f: &FunctionValue, node: &Rational) -> Result<Rational> {
        f.eval(node)
    }
}

impl Evaluate for Symbolic {
    fn apply(f: &FunctionValue, node: &VarIndex) -> Result<RationalFunction> {
        f.eval_var(*node)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DdForm {
    Sum,
    Det,
    Residue,
}

/// `R(X, Y) = Π_{x ∈ X, y ∈ Y} (x - y)`.
pub fn r_product_in<D: Domain>(x: &[D::Node], y: &[D::Node]) -> D::Value {
    let mut acc = D::one();
    for a in x {
        for b in y {
            acc = D::mul(&acc, &D::difference(a, b));
        }
    }
    acc
}

pub fn r_product(x: &NodeSet, y: &NodeSet) -> Result<Scalar> {
    match (x, y) {
        (NodeSet::Numeric(a), NodeSet::Numeric(b)) => Ok(Scalar::Rational(r_product_in::<Numeric>(a, b))),
        (NodeSet::Symbolic(a), NodeSet::Symbolic(b)) => Ok(Scalar::Function(r_product_in::<Symbolic>(a, b))),
        _ => Err(Error::PreconditionFailed("node sets of different kinds".into())),
    }
}

fn others<N: Clone>(nodes: &[N], i: usize) -> Vec<(N, N)> {
    (0..nodes.len()).filter(|&j| j != i).map(|j| (nodes[i].clone(), nodes[j].clone())).collect()
}

/// `Σ F(x_i) / f'(x_i)` from the values `F(x_i)`.
pub fn dd_sum<D: Domain>(values: &[D::Value], nodes: &[D::Node]) -> Result<D::Value> {
    let mut terms = Vec::with_capacity(nodes.len());
    for (i, v) in values.iter().enumerate() {
        terms.push(D::mul(v, &D::inv_difference_product(&others(nodes, i))?));
    }
    Ok(D::sum(&terms))
}

/// `det(F(x_i), x_i^{n-2}, ..., 1) / det(x_i^{n-1}, ..., 1)`. The
/// Vandermonde denominator is `Π_{i<j} (x_i - x_j)`.
pub fn dd_det<D: Domain>(values: &[D::Value], nodes: &[D::Node]) -> Result<D::Value> {
    let n = nodes.len();
    let m: Vec<Vec<D::Value>> = (0..n)
        .map(|i| {
            let x = D::node(&nodes[i]);
            let mut row = vec![values[i].clone()];
            row.extend((0..n - 1).rev().map(|e| D::pow(&x, e)));
            row
        })
        .collect();
    let pairs: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (nodes[i].clone(), nodes[j].clone()))
        .collect();
    Ok(D::mul(&D::det(&m), &D::inv_difference_product(&pairs)?))
}

/// `(1 / 2πi) ∮ F(z) / Π (z - x_i) dz` as a sum of residues.
pub fn dd_residue(f: &UPoly, nodes: &[Rational]) -> Result<Rational> {
    check_distinct(nodes)?;
    let kernel = UnivariateRational::from_parts(0, UPoly::one(), nodes.iter().map(|x| (x.clone(), 1)).collect());
    Ok(contour_sum(f, &kernel).value)
}

fn check_distinct(nodes: &[Rational]) -> Result<()> {
    for (i, a) in nodes.iter().enumerate() {
        if nodes[i + 1..].contains(a) {
            return Err(Error::DuplicateNode);
        }
    }
    Ok(())
}

fn values<D: Evaluate>(f: &FunctionValue, nodes: &[D::Node]) -> Result<Vec<D::Value>> {
    nodes.iter().map(|x| D::apply(f, x)).collect()
}

fn dd_in<D: Evaluate>(f: &FunctionValue, nodes: &[D::Node], form: DdForm) -> Result<D::Value> {
    let vals = values::<D>(f, nodes)?;
    match form {
        DdForm::Sum => dd_sum::<D>(&vals, nodes),
        DdForm::Det => dd_det::<D>(&vals, nodes),
        DdForm::Residue => Err(Error::FormUnavailable("residue")),
    }
}

/// `Δ_X[F]` in the requested form. The residue form needs a polynomial `F`
/// and numeric nodes.
pub fn divided_difference(f: &FunctionValue, x: &NodeSet, form: DdForm) -> Result<Scalar> {
    if x.is_empty() {
        return Err(Error::PreconditionFailed("divided difference over no nodes".into()));
    }
    match x {
        NodeSet::Numeric(nodes) => {
            check_distinct(nodes)?;
            if form == DdForm::Residue {
                let p = f.as_polynomial().ok_or(Error::FormUnavailable("residue"))?;
                return dd_residue(p, nodes).map(Scalar::Rational);
            }
            dd_in::<Numeric>(f, nodes, form).map(Scalar::Rational)
        }
        NodeSet::Symbolic(nodes) => dd_in::<Symbolic>(f, nodes, form).map(Scalar::Function),
    }
}

fn without<N: Clone>(nodes: &[N], i: usize) -> Vec<N> {
    nodes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect()
}

fn relations_in<D: Evaluate>(f: &FunctionValue, x: &[D::Node], i: usize, j: usize, k: usize) -> Result<bool> {
    let dd = |nodes: &[D::Node]| -> Result<D::Value> { dd_sum::<D>(&values::<D>(f, nodes)?, nodes) };
    let minus = |a: usize| dd(&without(x, a));
    // Δ_X (x_j - x_i) = Δ_{X∖x_i} - Δ_{X∖x_j}
    let lhs = D::mul(&dd(x)?, &D::difference(&x[j], &x[i]));
    let recurrence = lhs == D::sub(&minus(i)?, &minus(j)?);
    let mut terms = Vec::new();
    for (a, b, c) in [(i, j, k), (j, i, k), (k, i, j)] {
        let w = D::inv_difference_product(&[(x[a].clone(), x[b].clone()), (x[a].clone(), x[c].clone())])?;
        terms.push(D::mul(&minus(a)?, &w));
    }
    Ok(recurrence && D::is_zero(&D::sum(&terms)))
}

/// The recurrence `Δ_X = (Δ_{X∖x_i} - Δ_{X∖x_j}) / (x_j - x_i)` and the
/// three-term relation on `Δ_{X∖x_i}`, `Δ_{X∖x_j}`, `Δ_{X∖x_k}`.
pub fn dd_relations_check(f: &FunctionValue, x: &NodeSet, i: usize, j: usize, k: usize) -> Result<bool> {
    if i == j || j == k || i == k {
        return Err(Error::EqualIndices);
    }
    if i.max(j).max(k) >= x.len() {
        return Err(Error::PreconditionFailed("index out of range".into()));
    }
    match x {
        NodeSet::Numeric(nodes) => {
            check_distinct(nodes)?;
            relations_in::<Numeric>(f, nodes, i, j, k)
        }
        NodeSet::Symbolic(nodes) => relations_in::<Symbolic>(f, nodes, i, j, k),
    }
}

/// Newton expansion `F(x) = Σ Δ_{X_i}[F] R(x, X_{i-1}) + Δ_{X_n ∪ x}[F] R(x, X_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonSeries<V> {
    pub terms: Vec<V>,
    pub partial_sum: V,
    pub remainder: V,
    /// `F(x)` computed directly.
    pub value: V,
}

impl<V: PartialEq> NewtonSeries<V> {
    pub fn holds_with(&self, add: impl Fn(&V, &V) -> V) -> bool {
        add(&self.partial_sum, &self.remainder) == self.value
    }
}

pub fn newton_series<D: Evaluate>(f: &FunctionValue, nodes: &[D::Node], x: &D::Node) -> Result<NewtonSeries<D::Value>>
where
    D::Node: PartialEq,
{
    if nodes.contains(x) {
        return Err(Error::DuplicateNode);
    }
    let vals = values::<D>(f, nodes)?;
    let mut terms = Vec::with_capacity(nodes.len());
    for i in 1..=nodes.len() {
        let dd = dd_sum::<D>(&vals[..i], &nodes[..i])?;
        terms.push(D::mul(&dd, &r_product_in::<D>(std::slice::from_ref(x), &nodes[..i - 1])));
    }
    let mut ext = nodes.to_vec();
    ext.push(x.clone());
    let value = D::apply(f, x)?;
    let mut ext_vals = vals;
    ext_vals.push(value.clone());
    let remainder = D::mul(&dd_sum::<D>(&ext_vals, &ext)?, &r_product_in::<D>(std::slice::from_ref(x), nodes));
    Ok(NewtonSeries { partial_sum: D::sum(&terms), terms, remainder, value })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LagrangeForm {
    /// The contour form, coefficient by coefficient.
    Classical,
    /// The sum over all orderings of the nodes.
    Permutation,
}

/// Largest node count accepted by the permutation form.
pub const MAX_PERMUTATION_NODES: usize = 9;

pub fn lagrange(f: &FunctionValue, nodes: &[Rational], form: LagrangeForm) -> Result<UPoly> {
    lagrange_with(f, nodes, form, Strategy::default())
}

pub fn lagrange_with(f: &FunctionValue, nodes: &[Rational], form: LagrangeForm, strategy: Strategy) -> Result<UPoly> {
    check_distinct(nodes)?;
    if nodes.is_empty() {
        return Ok(UPoly::zero());
    }
    let vals = values::<Numeric>(f, nodes)?;
    match form {
        LagrangeForm::Classical => Ok(lagrange_contour(f, nodes, &vals)),
        LagrangeForm::Permutation => lagrange_permutation(nodes, &vals, strategy),
    }
}

/// `(1/2πi) ∮ (f(z) - f(x)) / (z - x) · F(z) / f(z) dz`. Writing
/// `(z^m - x^m) / (z - x) = Σ_{a+b=m-1} z^a x^b`, the coefficient of `x^b`
/// is `Σ_{m>b} c_m · (1/2πi) ∮ z^{m-1-b} F(z) / f(z) dz`.
fn lagrange_contour(f: &FunctionValue, nodes: &[Rational], vals: &[Rational]) -> UPoly {
    let fpoly = UPoly::from_roots(nodes);
    let n = nodes.len();
    let kernel = UnivariateRational::from_parts(0, UPoly::one(), nodes.iter().map(|x| (x.clone(), 1)).collect());
    let fprime = fpoly.derivative();
    // moments[a] = (1/2πi) ∮ z^a F(z) / f(z) dz
    let moments: Vec<Rational> = (0..n)
        .map(|a| match f.as_polynomial() {
            Some(p) => contour_sum(&UPoly::monomial(a).mul(p), &kernel).value,
            None => nodes
                .iter()
                .zip(vals)
                .map(|(x, v)| num_traits::pow(x.clone(), a) * v / fprime.eval(x))
                .fold(Rational::zero(), |s, t| s + t),
        })
        .collect();
    let coeffs = (0..n)
        .map(|b| (b + 1..=n).map(|m| fpoly.coeff(m) * &moments[m - 1 - b]).fold(Rational::zero(), |s, t| s + t))
        .collect();
    UPoly::new(coeffs)
}

fn lagrange_permutation(nodes: &[Rational], vals: &[Rational], strategy: Strategy) -> Result<UPoly> {
    let n = nodes.len();
    if n > MAX_PERMUTATION_NODES {
        return Err(Error::SizeExceeded { size: n, bound: MAX_PERMUTATION_NODES });
    }
    let fpoly = UPoly::from_roots(nodes);
    let perms = permutations(n);
    let terms = strategy.map(&perms, |a| {
        let mut w = vals[a[0]].clone();
        for s in a.windows(2) {
            w /= &nodes[s[0]] - &nodes[s[1]];
        }
        fpoly.div_linear(&nodes[a[0]]).expect("node is a root").scale(&w)
    });
    Ok(terms.iter().fold(UPoly::zero(), |s, t| s.add(t)))
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// All increasing `p`-tuples from `0..n`.
pub(crate) fn combinations(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::with_capacity(p), &mut out);
    out
}

pub(crate) fn rational_sum<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Rational {
    it.into_iter().fold(Rational::zero(), |s, t| s + t)
}

pub(crate) fn rational_product<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Rational {
    it.into_iter().fold(Rational::one(), |s, t| s * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn nodes(v: &[i64]) -> NodeSet {
        NodeSet::Numeric(v.iter().map(|&x| rat(x)).collect())
    }

    fn poly(c: &[i64]) -> FunctionValue {
        FunctionValue::Polynomial(UPoly::new(c.iter().map(|&x| rat(x)).collect()))
    }

    #[test]
    fn r_product_examples() {
        assert_eq!(r_product(&nodes(&[]), &nodes(&[1, 2])).unwrap(), Scalar::Rational(rat(1)));
        assert_eq!(r_product(&nodes(&[3]), &nodes(&[1, 2])).unwrap(), Scalar::Rational(rat(2)));
        let Scalar::Function(r) = r_product(&NodeSet::Symbolic(vec![0]), &NodeSet::Symbolic(vec![1, 2])).unwrap()
        else {
            panic!()
        };
        let want = Polynomial::difference(0, 1).mul_difference(0, 2);
        assert_eq!(r, RationalFunction::from_poly(want));
    }

    #[test]
    fn divided_difference_examples() {
        let sq = poly(&[0, 0, 1]);
        for form in [DdForm::Sum, DdForm::Det, DdForm::Residue] {
            assert_eq!(divided_difference(&sq, &nodes(&[0, 1, 2]), form).unwrap(), Scalar::Rational(rat(1)));
            assert_eq!(divided_difference(&sq, &nodes(&[5]), form).unwrap(), Scalar::Rational(rat(25)));
        }
        // x - y with y = 7 over three nodes
        let lin = poly(&[-7, 1]);
        assert_eq!(divided_difference(&lin, &nodes(&[2, -3, 11]), DdForm::Det).unwrap(), Scalar::Rational(rat(0)));
        assert_eq!(
            divided_difference(&sq, &nodes(&[1, 1]), DdForm::Sum),
            Err(Error::DuplicateNode)
        );
        let table = FunctionValue::Table([(rat(1), rat(4)), (rat(3), rat(5))].into_iter().collect());
        assert_eq!(divided_difference(&table, &nodes(&[1, 3]), DdForm::Sum).unwrap(), Scalar::Rational(ratio(1, 2)));
        assert_eq!(
            divided_difference(&table, &nodes(&[1, 3]), DdForm::Residue),
            Err(Error::FormUnavailable("residue"))
        );
    }

    #[test]
    fn symbolic_two_point_difference() {
        let sq = poly(&[0, 0, 1]);
        let x = NodeSet::Symbolic(vec![0, 1]);
        let Scalar::Function(s) = divided_difference(&sq, &x, DdForm::Sum).unwrap() else { panic!() };
        let Scalar::Function(d) = divided_difference(&sq, &x, DdForm::Det).unwrap() else { panic!() };
        let want = RationalFunction::from_poly(&Polynomial::var(0) + &Polynomial::var(1));
        assert_eq!(s, want);
        assert_eq!(d, want);
    }

    #[test]
    fn relations() {
        assert!(dd_relations_check(&poly(&[0, 0, 1]), &nodes(&[0, 1, 2]), 1, 2, 0).unwrap());
        assert!(dd_relations_check(&poly(&[4]), &nodes(&[3, -1, 8]), 0, 1, 2).unwrap());
        assert!(dd_relations_check(&poly(&[1, -2, 0, 5]), &NodeSet::Symbolic(vec![0, 1, 2, 3]), 0, 3, 1).unwrap());
        assert_eq!(dd_relations_check(&poly(&[1]), &nodes(&[0, 1, 2]), 1, 1, 0), Err(Error::EqualIndices));
    }

    #[test]
    fn newton_examples() {
        let sq = poly(&[0, 0, 1]);
        let s = newton_series::<Numeric>(&sq, &[rat(0), rat(1)], &rat(3)).unwrap();
        assert_eq!(s.terms, vec![rat(0), rat(3)]);
        assert_eq!(s.remainder, rat(6));
        assert_eq!(s.value, rat(9));
        assert!(s.holds_with(|a, b| a + b));
        let low = newton_series::<Numeric>(&sq, &[rat(0), rat(1), rat(5)], &rat(-2)).unwrap();
        assert!(low.remainder.is_zero());
        assert_eq!(newton_series::<Numeric>(&sq, &[rat(3)], &rat(3)), Err(Error::DuplicateNode));
        let sym = newton_series::<Symbolic>(&poly(&[1, 0, 0, 2]), &[0, 1], &2).unwrap();
        assert!(sym.holds_with(|a, b| a + b));
    }

    #[test]
    fn lagrange_examples() {
        let sq = poly(&[0, 0, 1]);
        let ns: Vec<Rational> = [0, 1, 2].map(rat).to_vec();
        for form in [LagrangeForm::Classical, LagrangeForm::Permutation] {
            assert_eq!(lagrange(&sq, &ns, form).unwrap(), UPoly::monomial(2));
            assert_eq!(lagrange(&sq, &[rat(4)], form).unwrap(), UPoly::constant(rat(16)));
        }
        let cube = poly(&[0, 0, 0, 1]);
        // x^3 - x(x-1)(x-2) = 3x^2 - 2x
        let want = UPoly::new(vec![rat(0), rat(-2), rat(3)]);
        assert_eq!(lagrange(&cube, &ns, LagrangeForm::Classical).unwrap(), want);
        assert_eq!(lagrange(&cube, &ns, LagrangeForm::Permutation).unwrap(), want);
    }

    #[test]
    fn enumeration_helpers() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
