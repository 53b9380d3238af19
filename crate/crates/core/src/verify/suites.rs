use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{trial_rng, Identity, Instance, Verdict, VerifyConfig, Witness};
use crate::algebra::{Assignment, Numeric, Rational, Symbolic, UPoly, VarIndex};
use crate::error::{Error, Result};
use crate::forms::{arnold_relation_check, signed_extension_identity_check, three_element_posets, MAX_FORM_ELEMENTS};
use crate::greene::{
    contraction_law_check, greene_brute, greene_recursive, nd_structure, partition_identity_check,
    prop1_reduce, Prop1Part, SeparatorContext,
};
use crate::interp::{
    dd_relations_check, divided_difference, example1_check, example3_check, lagrange, newton_series, prop2_check,
    prop3_expand, DdForm, FunctionValue, LagrangeForm, NodeSet, Scalar,
};
use crate::poset::{
    planar_catalog, random_connected_poset, random_poset, random_separated_poset, Catalog, ElementId, Limits, Poset,
};
use crate::series::{prop4_expand, prop5_expand, recursion_step_check, split_greene, MarkedPoset, MarkedPosetSequence};

/// `Ok(None)` passes, `Ok(Some(why))` is a counterexample.
type Check = Result<Option<String>>;

/// Retries for draws that hit a pole or a vanishing denominator.
const RESAMPLES: usize = 20;

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> Option<String> {
    bad.then(msg)
}

fn first(checks: impl IntoIterator<Item = Option<String>>) -> Option<String> {
    checks.into_iter().flatten().next()
}

fn is_degenerate(e: &Error) -> bool {
    matches!(e, Error::DivisionByZero(_) | Error::PoleCollision(..) | Error::PoleAtX | Error::SubstitutionPole(..))
}

fn fmt_values(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn fmt_poly(f: &UPoly) -> String {
    f.display_var("x").to_string()
}

/// `count` distinct values `a/d` with `|a| <= 24`, `d <= 3`.
fn distinct_values(rng: &mut ChaCha8Rng, count: usize) -> Vec<Rational> {
    let pool: BTreeSet<Rational> =
        (-24i64..=24).flat_map(|a| (1i64..=3).map(move |d| Rational::new(a.into(), d.into()))).collect();
    let mut pool: Vec<Rational> = pool.into_iter().collect();
    pool.shuffle(rng);
    pool.truncate(count);
    pool
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> UPoly {
    let mut c: Vec<Rational> = (0..=degree).map(|_| Rational::from_integer(rng.gen_range(-9i64..=9).into())).collect();
    if c[degree].is_zero() {
        c[degree] = Rational::one();
    }
    UPoly::new(c)
}

fn assign_vars(vars: &[VarIndex], values: Vec<Rational>) -> Assignment {
    vars.iter().copied().zip(values).collect()
}

fn random_assignment(rng: &mut ChaCha8Rng, p: &Poset) -> Assignment {
    assign_vars(p.vars(), distinct_values(rng, p.len()))
}

fn fixed_rng(identity: Identity, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5EED_0000 + 1000 * identity as u64 + index as u64)
}

pub(super) fn catalog_size(identity: Identity) -> usize {
    match identity {
        Identity::Prop1 => prop1_catalog().len(),
        Identity::Prop2 => prop2_catalog().len(),
        Identity::Prop3 => prop3_catalog().len(),
        Identity::Prop4 => prop4_catalog().len(),
        Identity::Prop5 => prop5_catalog().len(),
        Identity::Prop6 => 6,
        Identity::GreeneFormula => planar_catalog().len(),
        Identity::NdStructure => nd_catalog().len(),
        Identity::Contraction | Identity::Partition => law_catalog().len(),
        Identity::Arnold => 1 + arnold_posets().len(),
        Identity::DdForms => dd_catalog().len(),
    }
}

pub(super) fn run(identity: Identity, inst: Instance, cfg: &VerifyConfig) -> (Verdict, Witness) {
    let (witness, check) = match inst {
        Instance::Catalog(i) => run_catalog(identity, i, cfg),
        Instance::Trial(t) => run_trial(identity, &mut trial_rng(cfg.seed, t), cfg),
    };
    let verdict = match check {
        Ok(None) => Verdict::Pass,
        Ok(Some(why)) => Verdict::Fail(why),
        Err(e @ Error::SizeExceeded { .. }) => Verdict::Skip(e.to_string()),
        Err(e) => Verdict::Fail(format!("error: {e}")),
    };
    (verdict, witness)
}

fn run_catalog(identity: Identity, i: usize, cfg: &VerifyConfig) -> (Witness, Check) {
    let limits = &cfg.limits;
    match identity {
        Identity::Prop1 => {
            let c = prop1_catalog()[i];
            let p = c.build();
            let a = random_assignment(&mut fixed_rng(identity, i), &p);
            let w = Witness::new(c.label()).with_poset(&p).with_assignment(Some(&p), &a);
            let check = (|| {
                let mut out = Vec::new();
                for sep in p.separating_subsets() {
                    out.push(prop1_check(&p, &sep, &a, true, limits)?);
                }
                Ok(first(out))
            })();
            (w, check)
        }
        Identity::Prop2 => {
            let (p, k, n) = prop2_catalog()[i];
            prop2_case(&mut fixed_rng(identity, i), p, k, n)
        }
        Identity::Prop3 => {
            let (deg, p) = prop3_catalog()[i];
            prop3_case(&mut fixed_rng(identity, i), deg, p)
        }
        Identity::Prop4 => match &prop4_catalog()[i] {
            Prop4Case::Split(c) => {
                let p = c.build();
                let w = Witness::new(format!("every cover of {}", c.label())).with_poset(&p);
                (w, split_all_covers(&p, limits))
            }
            Prop4Case::Triangle(n) => triangle_case(&mut fixed_rng(identity, i), *n, limits),
            Prop4Case::Star(ms) => star_case(&mut fixed_rng(identity, i), ms, limits),
        },
        Identity::Prop5 => {
            let c = prop5_catalog()[i];
            prop5_case(&mut fixed_rng(identity, i), c, limits)
        }
        Identity::Prop6 => {
            let n = i + 1;
            let f = UPoly::monomial(n).add(&UPoly::one());
            let nodes: Vec<Rational> = (0..n as i64).map(|v| Rational::from_integer(v.into())).collect();
            prop6_case(FunctionValue::Polynomial(f), nodes)
        }
        Identity::GreeneFormula => {
            let c = planar_catalog()[i];
            let p = c.build();
            let w = Witness::new(c.label()).with_poset(&p);
            (w, engine_check(&p, cfg))
        }
        Identity::NdStructure => {
            let (label, p) = &nd_catalog()[i];
            let w = Witness::new(label.clone()).with_poset(p);
            (w, nd_check(p, limits))
        }
        Identity::Contraction => {
            let c = law_catalog()[i];
            let p = c.build();
            let w = Witness::new(format!("every cover of {}", c.label())).with_poset(&p);
            let check = (|| {
                let mut out = Vec::new();
                for &(a, b) in p.covers() {
                    out.push(contraction_check(&p, a, b, limits)?);
                }
                Ok(first(out))
            })();
            (w, check)
        }
        Identity::Partition => {
            let c = law_catalog()[i];
            let p = c.build();
            let w = Witness::new(format!("every incomparable pair of {}", c.label())).with_poset(&p);
            let check = (|| {
                let mut out = Vec::new();
                for (a, b) in incomparable_pairs(&p) {
                    out.push(partition_check(&p, a, b, limits)?);
                }
                Ok(first(out))
            })();
            (w, check)
        }
        Identity::Arnold if i == 0 => {
            let w = Witness::new("every ordered triple of distinct indices in 1..=6");
            let check = (|| {
                for a in 1..=6 {
                    for b in 1..=6 {
                        for c in 1..=6 {
                            if a != b && b != c && a != c && !arnold_relation_check(a, b, c)? {
                                return Ok(Some(format!("Arnold relation fails for ({a}, {b}, {c})")));
                            }
                        }
                    }
                }
                Ok(None)
            })();
            (w, check)
        }
        Identity::Arnold => {
            let (label, p) = &arnold_posets()[i - 1];
            let w = Witness::new(label.clone()).with_poset(p);
            let check = signed_extension_identity_check(p)
                .map(|ok| fail_if(!ok, || "signed extension identity fails".into()));
            (w, check)
        }
        Identity::DdForms => dd_catalog_case(i, &mut fixed_rng(identity, i), limits),
    }
}

fn run_trial(identity: Identity, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> (Witness, Check) {
    let limits = &cfg.limits;
    match identity {
        Identity::Prop1 => {
            let above = rng.gen_range(0..=2usize);
            let below = rng.gen_range(0..=2usize);
            let k = rng.gen_range(1..=5.min(8 - above - below));
            let density = rng.gen_range(0.2..0.8);
            let (p, sep) = random_separated_poset(rng.gen(), above, k, below, density);
            let a = random_assignment(rng, &p);
            let w = Witness::new(format!("random separated poset: {above} above, k = {k}, {below} below"))
                .with_poset(&p)
                .with_assignment(Some(&p), &a);
            (w, prop1_check(&p, &sep, &a, false, limits))
        }
        Identity::Prop2 => {
            let k = rng.gen_range(1..=4);
            let p = rng.gen_range(1..=k);
            let n = rng.gen_range(1..=3);
            prop2_case(rng, p, k, n)
        }
        Identity::Prop3 => {
            let deg = rng.gen_range(0..=3);
            let p = rng.gen_range(1..=3);
            prop3_case(rng, deg, p)
        }
        Identity::Prop4 => {
            let n = rng.gen_range(2..=6);
            let (w1, c1) = triangle_case(rng, n, limits);
            let len = rng.gen_range(2..=3);
            let ms: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=3)).collect();
            let (w2, c2) = star_case(rng, &ms, limits);
            let (w3, c3) = recursion_case(rng, limits);
            pick_failure([(w1, c1), (w2, c2), (w3, c3)])
        }
        Identity::Prop5 => {
            let c = match rng.gen_range(0..3) {
                0 => Catalog::Star(rng.gen_range(1..=4)),
                1 => Catalog::Fence { k: 1, n: rng.gen_range(2..=3) },
                _ => Catalog::Diamond,
            };
            prop5_case(rng, c, limits)
        }
        Identity::Prop6 => {
            let n = rng.gen_range(1..=6);
            let nodes = distinct_values(rng, n);
            let deg = rng.gen_range(0..=n + 3);
            prop6_case(FunctionValue::Polynomial(random_poly(rng, deg)), nodes)
        }
        Identity::GreeneFormula => {
            let cat = planar_catalog();
            let c = *cat.choose(rng).expect("nonempty catalog");
            let base = c.build();
            let mut perm: Vec<VarIndex> = base.vars().to_vec();
            perm.shuffle(rng);
            let p = base.relabel_vars(|v| perm[v]);
            let w = Witness::new(format!("{} with variables permuted to {perm:?}", c.label()));
            match p {
                Ok(p) => (w.with_poset(&p), engine_check(&p, cfg)),
                Err(e) => (w, Err(e)),
            }
        }
        Identity::NdStructure => {
            let n = rng.gen_range(2..=7);
            let density = rng.gen_range(0.1..0.7);
            let p = random_connected_poset(rng.gen(), n, density);
            let (n1, n2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let q = random_poset(rng.gen(), n1, density).disjoint_union(&random_poset(rng.gen(), n2, density));
            let w = Witness::new(format!(
                "random connected poset; disconnected companion: {}",
                q.to_string().trim_end().replace('\n', "; ")
            ))
            .with_poset(&p);
            let check = (|| Ok(first([nd_check(&p, limits)?, nd_check(&q, limits)?])))();
            (w, check)
        }
        Identity::Contraction => {
            let n = rng.gen_range(2..=7);
            let p = random_connected_poset(rng.gen(), n, rng.gen_range(0.1..0.7));
            let &(a, b) = p.covers().choose(rng).expect("connected poset has a cover");
            let w = Witness::new(format!("random connected poset, cover {} < {}", p.name(a), p.name(b))).with_poset(&p);
            (w, contraction_check(&p, a, b, limits))
        }
        Identity::Partition => {
            let mut drawn = None;
            for _ in 0..RESAMPLES {
                let n = rng.gen_range(2..=7);
                let p = random_poset(rng.gen(), n, rng.gen_range(0.1..0.7));
                if let Some(&(a, b)) = incomparable_pairs(&p).choose(rng) {
                    drawn = Some((p, a, b));
                    break;
                }
            }
            let Some((p, a, b)) = drawn else {
                return (Witness::new("no poset with an incomparable pair"), Ok(None));
            };
            let w = Witness::new(format!("random poset, pair {}, {}", p.name(a), p.name(b))).with_poset(&p);
            (w, partition_check(&p, a, b, limits))
        }
        Identity::Arnold => {
            let n = rng.gen_range(2..=6);
            let p = random_poset(rng.gen(), n, rng.gen_range(0.1..0.7));
            let mut idx: Vec<VarIndex> = (0..12).collect();
            idx.shuffle(rng);
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            let w = Witness::new(format!("random poset; Arnold triple ({i}, {j}, {k})")).with_poset(&p);
            let check = (|| {
                Ok(first([
                    fail_if(!signed_extension_identity_check(&p)?, || "signed extension identity fails".into()),
                    fail_if(!arnold_relation_check(i, j, k)?, || format!("Arnold relation fails for ({i}, {j}, {k})")),
                ]))
            })();
            (w, check)
        }
        Identity::DdForms => {
            let deg = rng.gen_range(0..=5);
            let n = rng.gen_range(1..=6);
            let (w1, c1) = dd_forms_case(rng, deg, n);
            let (k, m) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let (w2, c2) = example1_case(rng, k, m);
            let (k, m) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
            let (w3, c3) = example3_case(rng, k, m);
            pick_failure([(w1, c1), (w2, c2), (w3, c3)])
        }
    }
}

/// The first failing sub-check with its witness, else a combined pass.
fn pick_failure<const N: usize>(cases: [(Witness, Check); N]) -> (Witness, Check) {
    let mut descriptions = Vec::new();
    for (w, c) in cases {
        if !matches!(c, Ok(None)) {
            return (w, c);
        }
        descriptions.push(w.description);
    }
    (Witness::new(descriptions.join("; ")), Ok(None))
}

fn prop1_catalog() -> Vec<Catalog> {
    let mut out: Vec<Catalog> = (1..=5).map(|k| Catalog::Bipartite { k, n: 1 }).collect();
    out.extend((1..=4).map(|k| Catalog::Triple { k, n: 1, l: 1 }));
    out.extend([Catalog::Chain(4), Catalog::Star(3), Catalog::Diamond, Catalog::Triple { k: 2, n: 2, l: 1 }]);
    out
}

/// Every applicable part against brute force, and the recursive engine.
/// The determinant form of part 5 is symbolic only when `symbolic_det`
/// and `k = 4`; otherwise it is compared at `a`.
fn prop1_check(p: &Poset, sep: &crate::poset::SeparatingSubset, a: &Assignment, symbolic_det: bool, limits: &Limits) -> Check {
    let brute = greene_brute(p, limits)?;
    let recursive = greene_recursive(p, limits)?.value;
    if recursive != brute {
        return Ok(Some("recursive engine differs from brute force".into()));
    }
    for part in Prop1Part::ALL {
        if !part.applies_to(sep) {
            continue;
        }
        let ok = if part == Prop1Part::FiveDeterminant && !(symbolic_det && sep.k() == 4) {
            let ctx = SeparatorContext::<Numeric>::numeric(p, sep, a, limits)?;
            ctx.evaluate(part)? == brute.eval(a)?
        } else {
            prop1_reduce(p, sep, part, limits)?.value == brute
        };
        if !ok {
            let names: Vec<&str> = sep.members.iter().map(|&e| p.name(e)).collect();
            return Ok(Some(format!("part {part} differs from brute force for separator {{{}}}", names.join(", "))));
        }
    }
    Ok(None)
}

fn prop2_catalog() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for k in 1..=4 {
        for p in 1..=k {
            for n in 1..=3 {
                out.push((p, k, n));
            }
        }
    }
    out
}

fn prop2_case(rng: &mut ChaCha8Rng, p: usize, k: usize, n: usize) -> (Witness, Check) {
    let v = distinct_values(rng, k + 2 * n - 1);
    let (z, rest) = v.split_at(k);
    let (x, y) = rest.split_at(n);
    let w = Witness::new(format!("p = {p}, z = {}, x = {}, y = {}", fmt_values(z), fmt_values(x), fmt_values(y)));
    let check = prop2_check(p, z, x, y).map(|r| {
        fail_if(!r.holds(), || {
            format!(
                "forms disagree: det {}, subsets {}, banded dd {}, banded greene {}",
                r.det_ratio, r.subset_sum, r.banded_dd, r.banded_greene
            )
        })
    });
    (w, check)
}

fn prop3_catalog() -> Vec<(usize, usize)> {
    (0..=3).flat_map(|d| (1..=3).map(move |p| (d, p))).collect()
}

fn prop3_case(rng: &mut ChaCha8Rng, deg: usize, p: usize) -> (Witness, Check) {
    let h = random_poly(rng, deg);
    let v = distinct_values(rng, deg + 2 * p);
    let (z, t) = v.split_at(deg + p);
    let w = Witness::new(format!("H = {}, p = {p}, z = {}, t = {}", fmt_poly(&h), fmt_values(z), fmt_values(t)));
    let check = prop3_expand(&FunctionValue::Polynomial(h), p, z, t, None)
        .map(|r| fail_if(!r.holds(), || format!("series {} != product {}", r.series, r.product)));
    (w, check)
}

enum Prop4Case {
    Split(Catalog),
    Triangle(usize),
    Star(Vec<usize>),
}

fn marked_catalog() -> Vec<Catalog> {
    let mut out = planar_catalog();
    out.extend([
        Catalog::Bipartite { k: 2, n: 2 },
        Catalog::Triple { k: 2, n: 2, l: 1 },
        Catalog::Triple { k: 1, n: 2, l: 2 },
        Catalog::Fence { k: 2, n: 2 },
    ]);
    out
}

fn prop4_catalog() -> Vec<Prop4Case> {
    let mut out: Vec<Prop4Case> = marked_catalog().into_iter().map(Prop4Case::Split).collect();
    out.extend((2..=6).map(Prop4Case::Triangle));
    out.extend([vec![1, 1], vec![2, 3], vec![3, 2, 1], vec![3, 3]].into_iter().map(Prop4Case::Star));
    out
}

fn split_all_covers(p: &Poset, limits: &Limits) -> Check {
    for &(lo, hi) in p.covers() {
        let mp = MarkedPoset::new(p.clone(), lo, hi)?;
        if !split_greene(&mp, limits)?.holds() {
            return Ok(Some(format!("split fails for x = {}, z = {}", p.name(lo), p.name(hi))));
        }
    }
    Ok(None)
}

/// The contour expansion on the triangle sequence, term by term against the
/// Newton series.
fn triangle_case(rng: &mut ChaCha8Rng, n: usize, limits: &Limits) -> (Witness, Check) {
    let seq = MarkedPosetSequence::triangle(n);
    let deg = rng.gen_range(0..n);
    let f = random_poly(rng, deg);
    let vals = distinct_values(rng, n + 1);
    let a = assign_vars(&seq.non_z_vars(), vals.clone());
    let w = Witness::new(format!(
        "triangle sequence, n = {n}, F = {}, x = {}, nodes = {}",
        fmt_poly(&f),
        vals[0],
        fmt_values(&vals[1..])
    ));
    let check = (|| {
        let r = prop4_expand(&seq, &f, n, &a, false, limits)?;
        let newton = newton_series::<Numeric>(&FunctionValue::Polynomial(f.clone()), &vals[1..], &vals[0])?;
        Ok(first([
            fail_if(!r.holds(), || format!("total {} != F(x) = {}", r.total, r.value)),
            fail_if(r.terms != newton.terms, || "terms differ from the Newton series".into()),
            fail_if(r.tail != newton.remainder, || format!("tail {} != remainder {}", r.tail, newton.remainder)),
        ]))
    })();
    (w, check)
}

fn star_case(rng: &mut ChaCha8Rng, ms: &[usize], limits: &Limits) -> (Witness, Check) {
    let seq = MarkedPosetSequence::star(ms);
    let deg = rng.gen_range(0..=2);
    let f = random_poly(rng, deg);
    let vars = seq.non_z_vars();
    let vals = distinct_values(rng, vars.len());
    let a = assign_vars(&vars, vals.clone());
    let w = Witness::new(format!("star sequence {ms:?}, F = {}, x and nodes = {}", fmt_poly(&f), fmt_values(&vals)));
    let check = prop4_expand(&seq, &f, ms.len(), &a, false, limits)
        .map(|r| fail_if(!r.holds(), || format!("total {} != F(x) = {}", r.total, r.value)));
    (w, check)
}

/// The one-step recursion on a random connected poset and cover.
fn recursion_case(rng: &mut ChaCha8Rng, limits: &Limits) -> (Witness, Check) {
    let n = rng.gen_range(2..=6);
    let p = random_connected_poset(rng.gen(), n, rng.gen_range(0.1..0.7));
    let &(lo, hi) = p.covers().choose(rng).expect("connected poset has a cover");
    let w = Witness::new(format!("recursion step, x = {}, z = {}", p.name(lo), p.name(hi))).with_poset(&p);
    let mp = match MarkedPoset::new(p.clone(), lo, hi) {
        Ok(mp) => mp,
        Err(e) => return (w, Err(e)),
    };
    let mut last = None;
    for _ in 0..RESAMPLES {
        let a = random_assignment(rng, &p);
        match recursion_step_check(&mp, &a, limits) {
            Err(e) if is_degenerate(&e) => last = Some(e),
            r => {
                let w = w.with_assignment(Some(&p), &a);
                return (w, r.map(|ok| fail_if(!ok, || "recursion step fails".into())));
            }
        }
    }
    (w, Err(last.expect("at least one draw")))
}

fn prop5_catalog() -> Vec<Catalog> {
    let mut out: Vec<Catalog> = (1..=4).map(Catalog::Star).collect();
    out.extend([Catalog::Fence { k: 1, n: 2 }, Catalog::Fence { k: 1, n: 3 }, Catalog::Diamond]);
    out
}

/// The single-pole expansion with the top element as `z`; stars also
/// check that the main term is the Lagrange interpolant.
fn prop5_case(rng: &mut ChaCha8Rng, c: Catalog, limits: &Limits) -> (Witness, Check) {
    let p = c.build();
    let z = 0;
    let deg = rng.gen_range(0..=4);
    let f = random_poly(rng, deg);
    let others: Vec<VarIndex> = p.vars().iter().copied().filter(|&v| v != p.var(z)).collect();
    let mut last = None;
    for _ in 0..RESAMPLES {
        let vals = distinct_values(rng, others.len() + 1);
        let x = vals[0].clone();
        let a = assign_vars(&others, vals[1..].to_vec());
        let w = Witness::new(format!("{}, z = {}, F = {}, x = {x}", c.label(), p.name(z), fmt_poly(&f)))
            .with_poset(&p)
            .with_assignment(Some(&p), &a);
        match prop5_expand(&p, z, &f, &a, &x, limits) {
            Err(e) if is_degenerate(&e) => last = Some(e),
            Err(e) => return (w, Err(e)),
            Ok(r) => {
                let check = (|| {
                    let mut out = vec![fail_if(!r.holds(), || {
                        format!("main {} + remainder {} != F(x) = {}", r.main, r.remainder, r.value)
                    })];
                    if let Catalog::Star(_) = c {
                        let nodes: Vec<Rational> = vals[1..].to_vec();
                        let l = lagrange(&FunctionValue::Polynomial(f.clone()), &nodes, LagrangeForm::Classical)?;
                        let lx = l.eval(&x);
                        out.push(fail_if(lx != r.main, || format!("main {} != Lagrange value {lx}", r.main)));
                    }
                    Ok(first(out))
                })();
                return (w, check);
            }
        }
    }
    (Witness::new(c.label()).with_poset(&p), Err(last.expect("at least one draw")))
}

fn prop6_case(f: FunctionValue, nodes: Vec<Rational>) -> (Witness, Check) {
    let desc = match &f {
        FunctionValue::Polynomial(p) => fmt_poly(p),
        other => format!("{other:?}"),
    };
    let w = Witness::new(format!("F = {desc}, nodes = {}", fmt_values(&nodes)));
    let check = (|| {
        let classical = lagrange(&f, &nodes, LagrangeForm::Classical)?;
        let perm = lagrange(&f, &nodes, LagrangeForm::Permutation)?;
        let mut out = vec![fail_if(classical != perm, || {
            format!("classical {} != permutation {}", fmt_poly(&classical), fmt_poly(&perm))
        })];
        out.push(fail_if(classical.degree().is_some_and(|d| d >= nodes.len()), || "degree too high".into()));
        for x in &nodes {
            let want = f.eval(x)?;
            out.push(fail_if(classical.eval(x) != want, || format!("L_F({x}) != F({x})")));
        }
        Ok(first(out))
    })();
    (w, check)
}

fn engine_check(p: &Poset, cfg: &VerifyConfig) -> Check {
    let got = (cfg.engine)(p)?;
    let want = greene_brute(p, &cfg.limits)?;
    let names = p.namer();
    Ok(fail_if(got != want, || {
        format!("product formula {} != brute force {}", got.display_with(&names), want.display_with(&names))
    }))
}

fn nd_catalog() -> Vec<(String, Poset)> {
    let mut out: Vec<(String, Poset)> = marked_catalog().into_iter().map(|c| (c.label(), c.build())).collect();
    for c in [Catalog::Antichain(2), Catalog::Antichain(3)] {
        out.push((c.label(), c.build()));
    }
    let u = Catalog::Chain(2).build().disjoint_union(&Catalog::Star(2).build());
    out.push(("chain(n=2) + star(n=2)".into(), u));
    out
}

/// Connected posets satisfy the N/D structure facts; disconnected ones
/// have a vanishing Greene sum.
fn nd_check(p: &Poset, limits: &Limits) -> Check {
    if !p.is_connected() {
        let g = greene_brute(p, limits)?;
        return Ok(fail_if(!g.is_zero(), || "disconnected poset with nonzero Greene sum".into()));
    }
    let r = nd_structure(p, limits)?;
    Ok(first([
        fail_if(!r.denominator_is_cover_product, || "denominator is not the cover product".into()),
        fail_if(!r.degree_is_cycle_rank, || format!("numerator degree differs from cycle rank {}", r.cycle_rank)),
        fail_if(!r.unit_numerator_iff_tree, || "N = 1 does not match the tree property".into()),
    ]))
}

fn law_catalog() -> Vec<Catalog> {
    vec![
        Catalog::Chain(3),
        Catalog::Star(3),
        Catalog::Diamond,
        Catalog::Bipartite { k: 2, n: 2 },
        Catalog::Bipartite { k: 2, n: 3 },
        Catalog::Fence { k: 1, n: 3 },
        Catalog::Triple { k: 1, n: 2, l: 1 },
        Catalog::Triple { k: 2, n: 2, l: 1 },
    ]
}

fn incomparable_pairs(p: &Poset) -> Vec<(ElementId, ElementId)> {
    let mut out = Vec::new();
    for a in p.ids() {
        for b in a + 1..p.len() {
            if !p.comparable(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

fn contraction_check(p: &Poset, a: ElementId, b: ElementId, limits: &Limits) -> Check {
    let r = contraction_law_check(p, a, b, limits)?;
    Ok(fail_if(!r.holds, || format!("contraction of {} < {} fails", p.name(a), p.name(b))))
}

fn partition_check(p: &Poset, a: ElementId, b: ElementId, limits: &Limits) -> Check {
    let r = partition_identity_check(p, a, b, limits)?;
    Ok(fail_if(!r.holds, || format!("partition over {}, {} fails", p.name(a), p.name(b))))
}

fn arnold_posets() -> Vec<(String, Poset)> {
    let mut out: Vec<(String, Poset)> = three_element_posets()
        .into_iter()
        .enumerate()
        .map(|(i, p)| (format!("three-element poset {}", i + 1), p))
        .collect();
    let mut cat = marked_catalog();
    cat.extend([Catalog::Antichain(2), Catalog::Antichain(3)]);
    for c in cat {
        let p = c.build();
        if p.len() >= 2 && p.len() <= MAX_FORM_ELEMENTS && p.identity_is_extension() {
            out.push((c.label(), p));
        }
    }
    out
}

enum DdCase {
    Linear,
    Monomial(usize),
    Example1(usize, usize),
    Example3(usize, usize),
}

fn dd_catalog() -> Vec<DdCase> {
    let mut out = vec![DdCase::Linear];
    out.extend((1..=6).map(DdCase::Monomial));
    out.extend((1..=4).flat_map(|k| (1..=4).map(move |n| DdCase::Example1(k, n))));
    out.extend((1..=2).flat_map(|k| (1..=3).map(move |n| DdCase::Example3(k, n))));
    out
}

fn symbolic_forms_agree(f: &FunctionValue, vars: Vec<VarIndex>, want: Scalar) -> Check {
    let nodes = NodeSet::Symbolic(vars);
    let sum = divided_difference(f, &nodes, DdForm::Sum)?;
    let det = divided_difference(f, &nodes, DdForm::Det)?;
    Ok(first([
        fail_if(sum != det, || "sum and determinant forms differ".into()),
        fail_if(sum != want, || format!("value {sum:?} != expected {want:?}")),
    ]))
}

fn dd_catalog_case(i: usize, rng: &mut ChaCha8Rng, _limits: &Limits) -> (Witness, Check) {
    use crate::algebra::RationalFunction;
    match dd_catalog()[i] {
        DdCase::Linear => {
            let f = FunctionValue::Polynomial(UPoly::new(vec![Rational::from_integer((-7).into()), Rational::one()]));
            let w = Witness::new("Δ over three symbolic nodes of x - 7");
            (w, symbolic_forms_agree(&f, vec![0, 1, 2], Scalar::Function(RationalFunction::zero())))
        }
        DdCase::Monomial(n) => {
            let f = FunctionValue::Polynomial(UPoly::monomial(n - 1));
            let w = Witness::new(format!("Δ over {n} symbolic nodes of x^{}", n - 1));
            (w, symbolic_forms_agree(&f, (0..n).collect(), Scalar::Function(RationalFunction::one())))
        }
        DdCase::Example1(k, n) => example1_case(rng, k, n),
        DdCase::Example3(k, n) => example3_case(rng, k, n),
    }
}

/// Sum, determinant and residue forms, the relations, and the Newton
/// expansion at a fresh point.
fn dd_forms_case(rng: &mut ChaCha8Rng, deg: usize, n: usize) -> (Witness, Check) {
    let f = random_poly(rng, deg);
    let v = distinct_values(rng, n + 1);
    let (x, nodes) = (v[0].clone(), v[1..].to_vec());
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let w = Witness::new(format!("F = {}, nodes = {}, x = {x}", fmt_poly(&f), fmt_values(&nodes)));
    let check = (|| {
        let fv = FunctionValue::Polynomial(f);
        let set = NodeSet::Numeric(nodes.clone());
        let sum = divided_difference(&fv, &set, DdForm::Sum)?;
        let det = divided_difference(&fv, &set, DdForm::Det)?;
        let res = divided_difference(&fv, &set, DdForm::Residue)?;
        let mut out = vec![
            fail_if(sum != det, || format!("sum {sum:?} != det {det:?}")),
            fail_if(sum != res, || format!("sum {sum:?} != residue {res:?}")),
        ];
        if n >= 3 {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            out.push(fail_if(!dd_relations_check(&fv, &set, i, j, k)?, || format!("relations fail at ({i}, {j}, {k})")));
        }
        let s = newton_series::<Numeric>(&fv, &nodes, &x)?;
        out.push(fail_if(!s.holds_with(|a, b| a + b), || "Newton partial sum + remainder != F(x)".into()));
        if n <= 3 {
            let vars: Vec<VarIndex> = (0..n).collect();
            let sym = NodeSet::Symbolic(vars);
            let ss = divided_difference(&fv, &sym, DdForm::Sum)?;
            let sd = divided_difference(&fv, &sym, DdForm::Det)?;
            out.push(fail_if(ss != sd, || "symbolic sum and determinant forms differ".into()));
            let sym_series = newton_series::<Symbolic>(&fv, &(0..n).collect::<Vec<_>>(), &n)?;
            out.push(fail_if(
                !sym_series.holds_with(|a, b| a + b),
                || "symbolic Newton expansion fails".into(),
            ));
        }
        Ok(first(out))
    })();
    (w, check)
}

fn example1_case(rng: &mut ChaCha8Rng, k: usize, n: usize) -> (Witness, Check) {
    let v = distinct_values(rng, k + n);
    let (z, x) = v.split_at(k);
    let w = Witness::new(format!("all of x below all of z, z = {}, x = {}", fmt_values(z), fmt_values(x)));
    let check = example1_check(z, x).map(|r| fail_if(!r.holds(), || format!("forms disagree: {r:?}")));
    (w, check)
}

fn example3_case(rng: &mut ChaCha8Rng, k: usize, n: usize) -> (Witness, Check) {
    let v = distinct_values(rng, k + 2 * n - 1);
    let (z, rest) = v.split_at(k);
    let (x, y) = rest.split_at(n);
    let w = Witness::new(format!("fence, z = {}, x = {}, y = {}", fmt_values(z), fmt_values(x), fmt_values(y)));
    let check = example3_check(z, x, y).map(|r| fail_if(!r.holds(), || format!("forms disagree: {r:?}")));
    (w, check)
}
