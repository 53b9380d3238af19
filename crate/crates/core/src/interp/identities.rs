use num_traits::{One, Zero};

use super::{check_distinct, combinations, dd_det, dd_sum, rational_product, rational_sum, FunctionValue};
use crate::algebra::{det, Assignment, Numeric, Rational, UPoly};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::greene::greene_numeric;
use crate::poset::{Catalog, Limits, Poset};

fn prod_diff(x: &Rational, s: &[Rational]) -> Rational {
    s.iter().fold(Rational::one(), |acc, y| acc * (x - y))
}

fn r_product(x: &[Rational], y: &[Rational]) -> Rational {
    rational_product(&x.iter().map(|a| prod_diff(a, y)).collect::<Vec<_>>())
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `det(x_i^{k-1}, ..., x_i, 1)`.
fn vandermonde(z: &[Rational]) -> Rational {
    let k = z.len();
    det(&z.iter().map(|x| (0..k).rev().map(|e| num_traits::pow(x.clone(), e)).collect()).collect::<Vec<_>>())
}

/// `det(F(z_i), z_i^{k-2}, ..., 1) / det(z_i^{k-1}, ..., 1)`.
fn det_ratio(first: &[Rational], z: &[Rational]) -> Rational {
    let k = z.len();
    let m: Vec<Vec<Rational>> = z
        .iter()
        .zip(first)
        .map(|(x, v)| {
            let mut row = vec![v.clone()];
            row.extend((0..k - 1).rev().map(|e| num_traits::pow(x.clone(), e)));
            row
        })
        .collect();
    det(&m) / vandermonde(z)
}

/// `det(z_i^{k-2} f(z_i), ..., f(z_i), last_i) / det(z_i^{k-1}, ..., 1)`.
fn shifted_ratio(f: &[Rational], last: &[Rational], z: &[Rational]) -> Rational {
    let k = z.len();
    let m: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut row: Vec<Rational> = (0..k - 1).rev().map(|e| num_traits::pow(z[i].clone(), e) * &f[i]).collect();
            row.push(last[i].clone());
            row
        })
        .collect();
    det(&m) / vandermonde(z)
}

fn assignment(p: &Poset, groups: &[&[Rational]]) -> Assignment {
    p.vars().iter().copied().zip(groups.iter().flat_map(|g| g.iter().cloned())).collect()
}

fn all_distinct(groups: &[&[Rational]]) -> Result<Vec<Rational>> {
    let all: Vec<Rational> = groups.iter().flat_map(|g| g.iter().cloned()).collect();
    check_distinct(&all)?;
    Ok(all)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Example1Report {
    /// Greene sum of `Z_k` over `X_n`, from the extension sum.
    pub greene: Rational,
    /// `(-1)^{k-1} Δ_{Z_k}[1/f]`.
    pub dd_z: Rational,
    /// `(-1)^k Δ_{X_n}[1/h]`.
    pub dd_x: Rational,
    /// `(-1)^{k-1} det(1/f(z_i), z_i^{k-2}, ..., 1) / Vandermonde`.
    pub det_ratio: Rational,
    /// `det(z_i^{k-2} f(z_i), ..., f(z_i), 1) / (R(Z_k, X_n) Vandermonde)`.
    pub shifted_ratio: Rational,
    /// `R(Z_k, X_n) G(P)`.
    pub scaled_greene: Rational,
    /// `det(z_i^{k-2} f(z_i), ..., f(z_i), 1) / Vandermonde`.
    pub schur_value: Rational,
}

impl Example1Report {
    pub fn holds(&self) -> bool {
        let g = &self.greene;
        *g == self.dd_z
            && *g == self.dd_x
            && *g == self.det_ratio
            && *g == self.shifted_ratio
            && self.scaled_greene == self.schur_value
    }
}

/// All `x_j` below all `z_i`.
pub fn example1_check(z: &[Rational], x: &[Rational]) -> Result<Example1Report> {
    if z.is_empty() || x.is_empty() {
        return Err(Error::PreconditionFailed("both layers must be nonempty".into()));
    }
    all_distinct(&[z, x])?;
    let (k, n) = (z.len(), x.len());
    let p = Catalog::Bipartite { k, n }.build();
    let greene = greene_numeric(&p, &assignment(&p, &[z, x]), &Limits { max_elems: k + n })?;

    let inv_f: Vec<Rational> = z.iter().map(|a| Rational::one() / prod_diff(a, x)).collect();
    let inv_h: Vec<Rational> = x.iter().map(|a| Rational::one() / prod_diff(a, z)).collect();
    let f: Vec<Rational> = z.iter().map(|a| prod_diff(a, x)).collect();
    let r = r_product(z, x);
    let schur_value = shifted_ratio(&f, &vec![Rational::one(); k], z);
    Ok(Example1Report {
        dd_z: sign(k - 1) * dd_sum::<Numeric>(&inv_f, z)?,
        dd_x: sign(k) * dd_sum::<Numeric>(&inv_h, x)?,
        det_ratio: sign(k - 1) * det_ratio(&inv_f, z),
        shifted_ratio: &schur_value / &r,
        scaled_greene: &r * &greene,
        schur_value,
        greene,
    })
}

/// `T(X_n, Y_{n-1}) = Π (x_j - y_j)(x_{j+1} - y_j)`.
pub(crate) fn fence_t(x: &[Rational], y: &[Rational]) -> Rational {
    let factors: Vec<Rational> = y.iter().enumerate().map(|(j, b)| (&x[j] - b) * (&x[j + 1] - b)).collect();
    rational_product(&factors)
}

/// Greene sum of the fence poset `P(Z, X, Y)` at the given values.
pub(crate) fn fence_greene(z: &[Rational], x: &[Rational], y: &[Rational]) -> Result<Rational> {
    let p = Catalog::Fence { k: z.len(), n: x.len() }.build();
    greene_numeric(&p, &assignment(&p, &[z, x, y]), &Limits { max_elems: p.len() })
}

fn check_fence_sizes(z: &[Rational], x: &[Rational], y: &[Rational]) -> Result<()> {
    if z.is_empty() || x.is_empty() || y.len() + 1 != x.len() {
        return Err(Error::PreconditionFailed("need |Z| >= 1 and |Y| = |X| - 1 >= 0".into()));
    }
    all_distinct(&[z, x, y]).map(|_| ())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Example3Report {
    pub greene: Rational,
    /// `(-1)^{k-1} Δ_{Z_k}[g/f] / T`.
    pub dd_form: Rational,
    pub det_ratio: Rational,
    /// `det(z_i^{k-2} f(z_i), ..., f(z_i), g(z_i)) / (R(Z_k, X_n) T Vandermonde)`.
    pub shifted_ratio: Rational,
    /// `g(z_1) / f(z_1)` against its partial-fraction expansion over `X_n`.
    pub partial_fraction: (Rational, Rational),
    /// For `k = 1`: the Greene sum split by which `x_i` is largest.
    pub top_split: Option<Rational>,
}

impl Example3Report {
    pub fn holds(&self) -> bool {
        let g = &self.greene;
        *g == self.dd_form
            && *g == self.det_ratio
            && *g == self.shifted_ratio
            && self.partial_fraction.0 == self.partial_fraction.1
            && self.top_split.as_ref().is_none_or(|t| t == g)
    }
}

/// The fence `P(Z_k, X_n, Y_{n-1})`: every `x_i < z_j`, `y_i < x_i, x_{i+1}`.
pub fn example3_check(z: &[Rational], x: &[Rational], y: &[Rational]) -> Result<Example3Report> {
    check_fence_sizes(z, x, y)?;
    let k = z.len();
    let greene = fence_greene(z, x, y)?;
    let t = fence_t(x, y);
    let f: Vec<Rational> = z.iter().map(|a| prod_diff(a, x)).collect();
    let g: Vec<Rational> = z.iter().map(|a| prod_diff(a, y)).collect();
    let phi: Vec<Rational> = g.iter().zip(&f).map(|(a, b)| a / b).collect();

    let fx = UPoly::from_roots(x).derivative();
    let pf: Vec<Rational> = x.iter().map(|xi| prod_diff(xi, y) / ((&z[0] - xi) * fx.eval(xi))).collect();

    let top_split = if k == 1 {
        let p = Catalog::Fence { k: 1, n: x.len() }.build();
        let assign = assignment(&p, &[z, x, y]);
        let xs: Vec<usize> = (1..=x.len()).map(|i| p.find(&format!("x{i}")).unwrap()).collect();
        let mut parts = Vec::new();
        for &a in &xs {
            let rels: Vec<_> = xs.iter().filter(|&&b| b != a && !p.less(a, b)).map(|&b| (b, a)).collect();
            let q = p.add_relations(&rels)?;
            parts.push(greene_numeric(&q, &assign, &Limits { max_elems: q.len() })?);
        }
        Some(rational_sum(&parts))
    } else {
        None
    };

    Ok(Example3Report {
        dd_form: sign(k - 1) * dd_sum::<Numeric>(&phi, z)? / &t,
        det_ratio: sign(k - 1) * det_ratio(&phi, z) / &t,
        shifted_ratio: shifted_ratio(&f, &g, z) / (r_product(z, x) * &t),
        partial_fraction: (phi[0].clone(), rational_sum(&pf)),
        top_split,
        greene,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prop2Report {
    /// Determinant ratio with `p` columns of `z^e g/f`.
    pub det_ratio: Rational,
    /// Sum over `p`-subsets `I` of `Π_{I} g/f / R(I, Z∖I)`.
    pub subset_sum: Rational,
    /// `det(Δ_{Z_{i, k-p+c}}[g/f])`.
    pub banded_dd: Rational,
    /// `T^p det(G_{i, k-p+c})`.
    pub banded_greene: Rational,
}

impl Prop2Report {
    pub fn holds(&self) -> bool {
        self.det_ratio == self.subset_sum && self.subset_sum == self.banded_dd && self.banded_dd == self.banded_greene
    }
}

pub fn prop2_check(p: usize, z: &[Rational], x: &[Rational], y: &[Rational]) -> Result<Prop2Report> {
    check_fence_sizes(z, x, y)?;
    let k = z.len();
    if p == 0 || p > k {
        return Err(Error::PreconditionFailed(format!("need 1 <= p <= k, got p = {p}, k = {k}")));
    }
    let phi: Vec<Rational> = z.iter().map(|a| prod_diff(a, y) / prod_diff(a, x)).collect();

    let m: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut row: Vec<Rational> = (0..p).rev().map(|e| num_traits::pow(z[i].clone(), e) * &phi[i]).collect();
            row.extend((0..k - p).rev().map(|e| num_traits::pow(z[i].clone(), e)));
            row
        })
        .collect();
    let det_ratio = det(&m) / vandermonde(z);

    let subsets = combinations(k, p);
    let terms = Strategy::default().map(&subsets, |s| {
        let rest: Vec<Rational> = (0..k).filter(|i| !s.contains(i)).map(|i| z[i].clone()).collect();
        let inside: Vec<Rational> = s.iter().map(|&i| z[i].clone()).collect();
        rational_product(s.iter().map(|&i| &phi[i])) / r_product(&inside, &rest)
    });
    let subset_sum = rational_sum(&terms);

    // 1-based band indices: entry (i, c) uses Z_{i, k-p+c}, zero when i > j.
    let band = |f: &dyn Fn(usize, usize) -> Result<Rational>| -> Result<Rational> {
        let mut m = Vec::with_capacity(p);
        for i in 1..=p {
            let mut row = Vec::with_capacity(p);
            for c in 1..=p {
                let j = k - p + c;
                row.push(if i > j { Rational::zero() } else { f(i, j)? });
            }
            m.push(row);
        }
        Ok(det(&m))
    };
    let banded_dd = band(&|i, j| dd_sum::<Numeric>(&phi[i - 1..j], &z[i - 1..j]))?;
    let banded = band(&|i, j| Ok(sign(j - i) * fence_greene(&z[i - 1..j], x, y)?))?;
    let banded_greene = num_traits::pow(fence_t(x, y), p) * banded;
    Ok(Prop2Report { det_ratio, subset_sum, banded_dd, banded_greene })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prop3Report {
    /// Number of nodes `N` used: indices run over `1 <= j_1 < ... < j_p <= N`.
    pub truncation: usize,
    pub series: Rational,
    /// `Π H(t_i)`.
    pub product: Rational,
}

impl Prop3Report {
    pub fn holds(&self) -> bool {
        self.series == self.product
    }
}

/// Generalized Newton series of `Π_i H(t_i)` over the banded node family
/// `Z_{i,j} = {z_i, ..., z_j}`:
/// `Σ_{j_1<...<j_p} det(Δ_{Z_{i,j_m}}[H]) det(R(t_i, Z_{1,j_m-1})) / det(t_i^{m-1})`.
///
/// A polynomial `H` is expanded with `N = deg H + p` nodes unless a
/// truncation is given; other functions need an explicit truncation.
pub fn prop3_expand(
    h: &FunctionValue,
    p: usize,
    z: &[Rational],
    t: &[Rational],
    truncation: Option<usize>,
) -> Result<Prop3Report> {
    if p == 0 || t.len() != p {
        return Err(Error::PreconditionFailed("need p >= 1 points t_1..t_p".into()));
    }
    let n = match (truncation, h.as_polynomial()) {
        (Some(n), _) => n,
        (None, Some(poly)) => poly.degree().unwrap_or(0) + p,
        (None, None) => return Err(Error::TruncationRequired),
    };
    if z.len() < n || n < p {
        return Err(Error::PreconditionFailed(format!("truncation {n} needs at least {n} nodes and {p} <= {n}")));
    }
    let z = &z[..n];
    check_distinct(z)?;
    check_distinct(t)?;
    let hz: Vec<Rational> = z.iter().map(|a| h.eval(a)).collect::<Result<_>>()?;

    // delta[i][j] = Δ_{Z_{i,j}}[H], 0-based, zero below the diagonal.
    let mut delta = vec![vec![Rational::zero(); n]; p];
    for (i, row) in delta.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate().skip(i) {
            *cell = dd_det::<Numeric>(&hz[i..=j], &z[i..=j])?;
        }
    }
    let vt = det(&t.iter().map(|ti| (0..p).map(|e| num_traits::pow(ti.clone(), e)).collect()).collect::<Vec<_>>());
    if vt.is_zero() {
        return Err(Error::DuplicateNode);
    }
    let combos = combinations(n, p);
    let terms = Strategy::default().map(&combos, |js| {
        let d: Vec<Vec<Rational>> = (0..p).map(|i| js.iter().map(|&j| delta[i][j].clone()).collect()).collect();
        let s: Vec<Vec<Rational>> = t.iter().map(|ti| js.iter().map(|&j| prod_diff(ti, &z[..j])).collect()).collect();
        det(&d) * det(&s)
    });
    let series = rational_sum(&terms) / vt;
    let product = rational_product(&t.iter().map(|ti| h.eval(ti)).collect::<Result<Vec<_>>>()?);
    Ok(Prop3Report { truncation: n, series, product })
}
