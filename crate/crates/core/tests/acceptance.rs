//! Acceptance suite. Every criterion runs at exact rational equality and
//! prints one PASS/FAIL line; the process fails if any criterion fails.
//!
//! Criterion 9 builds a second binary with the `planted-bug` feature into
//! `target/planted-bug` and expects the product-formula suite to catch it.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use greene::algebra::{rat, Assignment, Numeric, Rational, RationalFunction, UPoly, VarIndex};
use greene::exec::Strategy;
use greene::forms::{arnold_relation_check, signed_extension_identity_check, three_element_posets};
use greene::greene::{
    contraction_law_check, greene_brute, greene_product, greene_recursive, nd_structure, partition_identity_check,
    prop1_reduce, Prop1Part, SeparatorContext,
};
use greene::interp::{
    divided_difference, example1_check, example3_check, lagrange, newton_series, prop2_check, prop3_expand, DdForm,
    FunctionValue, LagrangeForm, NodeSet, Scalar,
};
use greene::poset::{
    planar_catalog, random_connected_poset, random_poset, random_separated_poset, Catalog, Limits, Poset,
};
use greene::series::{
    prop4_expand, prop5_expand, recursion_step_check, split_greene, MarkedPoset, MarkedPosetSequence,
};
use greene::verify::{verify, Identity, Instance, VerifyConfig};
use greene::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, check, runtime budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn lim() -> Limits {
    Limits::default()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distinct rationals `a/d`, `|a| <= 30`, `d <= 4`.
fn distinct(r: &mut ChaCha8Rng, count: usize) -> Vec<Rational> {
    let mut pool: Vec<Rational> = Vec::new();
    for a in -30i64..=30 {
        for d in 1i64..=4 {
            let q = Rational::new(a.into(), d.into());
            if !pool.contains(&q) {
                pool.push(q);
            }
        }
    }
    pool.shuffle(r);
    pool.truncate(count);
    pool
}

fn assignment(r: &mut ChaCha8Rng, p: &Poset) -> Assignment {
    p.vars().iter().copied().zip(distinct(r, p.len())).collect()
}

fn poly(r: &mut ChaCha8Rng, degree: usize) -> UPoly {
    let mut c: Vec<Rational> = (0..=degree).map(|_| rat(r.gen_range(-9..=9))).collect();
    if c[degree] == rat(0) {
        c[degree] = rat(1);
    }
    UPoly::new(c)
}

/// The defining sum evaluated extension by extension, independent of the
/// up-set recursion used by the engines.
fn literal_sum(p: &Poset, a: &Assignment) -> Rational {
    let mut total = rat(0);
    for w in p.linear_extensions(&lim()).unwrap() {
        let mut t = rat(1);
        for s in w.windows(2) {
            t /= &a[&p.var(s[0])] - &a[&p.var(s[1])];
        }
        total += t;
    }
    total
}

/// Runs `n` seeded trials in parallel; the first failure wins.
fn trials(n: usize, f: impl Fn(u64) -> Result<(), String> + Sync + Send) -> Result<(), String> {
    Strategy::default().map_range(n, |t| f(t as u64)).into_iter().collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let catalog = planar_catalog();
    for c in &catalog {
        let p = c.build();
        let product = greene_product(&p).map_err(|e| e.to_string())?;
        ensure(product == greene_brute(&p, &lim()).unwrap(), || format!("product formula differs on {}", c.label()))?;
    }
    let counts: Vec<BTreeMap<String, usize>> = Strategy::default().map_range(120, |seed| {
        let mut r = rng(1000 + seed as u64);
        let above = r.gen_range(0..=2usize);
        let below = r.gen_range(0..=2usize);
        let k = r.gen_range(1..=5.min(8 - above - below));
        let (p, sep) = random_separated_poset(r.gen(), above, k, below, r.gen_range(0.2..0.8));
        let a = assignment(&mut r, &p);
        let brute = greene_brute(&p, &lim()).unwrap();
        let mut seen = BTreeMap::new();
        let mut fails = Vec::new();
        let mut bad = |what: String| fails.push(format!("FAIL {what} seed {seed}"));
        if brute.eval(&a).unwrap() != literal_sum(&p, &a) {
            bad("brute vs literal sum".into());
        }
        if greene_recursive(&p, &lim()).unwrap().value != brute {
            bad("recursive".into());
        }
        for part in Prop1Part::ALL.into_iter().filter(|part| part.applies_to(&sep)) {
            let ok = if part == Prop1Part::FiveDeterminant && (k > 4 || p.len() > 6) {
                let ctx = SeparatorContext::<Numeric>::numeric(&p, &sep, &a, &lim()).unwrap();
                ctx.evaluate(part).unwrap() == brute.eval(&a).unwrap()
            } else {
                prop1_reduce(&p, &sep, part, &lim()).unwrap().value == brute
            };
            if !ok {
                bad(format!("part {part}"));
            }
            *seen.entry(part.to_string()).or_insert(0) += 1;
        }
        for f in fails {
            seen.insert(f, 1);
        }
        seen
    });
    let mut total: BTreeMap<String, usize> = BTreeMap::new();
    for c in counts {
        for (k, v) in c {
            if k.starts_with("FAIL") {
                return Err(k);
            }
            *total.entry(k).or_insert(0) += v;
        }
    }
    ensure(total.len() == Prop1Part::ALL.len(), || format!("not every part exercised: {total:?}"))?;
    Ok(format!("{} catalog posets, 120 random separated posets, part counts {total:?}", catalog.len()))
}

fn criterion_2() -> Outcome {
    for k in [4usize, 5] {
        trials(10, |seed| {
            let mut r = rng(2000 + 10 * k as u64 + seed);
            let (p, sep) = random_separated_poset(r.gen(), 1, k, 1, r.gen_range(0.2..0.8));
            let a = assignment(&mut r, &p);
            let ctx = SeparatorContext::<Numeric>::numeric(&p, &sep, &a, &lim()).unwrap();
            let binomial = ctx.evaluate(Prop1Part::FiveBinomial).unwrap();
            let det = ctx.evaluate(Prop1Part::FiveDeterminant).unwrap();
            let brute = greene_brute(&p, &lim()).unwrap().eval(&a).unwrap();
            ensure(binomial == det && det == brute, || format!("k = {k}, seed {seed}: {binomial} {det} {brute}"))
        })?;
    }
    let (p, sep) = random_separated_poset(3, 1, 4, 1, 0.5);
    let brute = greene_brute(&p, &lim()).unwrap();
    ensure(prop1_reduce(&p, &sep, Prop1Part::FiveBinomial, &lim()).unwrap().value == brute, || "symbolic binomial".into())?;
    Ok("k = 4, 5 with 10 node sets each, plus one symbolic k = 4 case".into())
}

fn criterion_3() -> Outcome {
    trials(100, |seed| {
        let mut r = rng(3000 + seed);
        let n = r.gen_range(2..=7);
        let p = random_connected_poset(r.gen(), n, r.gen_range(0.1..0.7));
        let nd = nd_structure(&p, &lim()).unwrap();
        ensure(nd.holds(), || format!("structure facts fail on seed {seed}:\n{p}"))?;
        // Independent restatement: denominator degree = number of covers.
        ensure(nd.value.denominator_degree() as usize == p.covers().len(), || format!("seed {seed}"))?;
        ensure(nd.numerator.total_degree() == Some(p.cycle_rank() as u32), || format!("seed {seed}"))?;
        let q = random_poset(r.gen(), r.gen_range(1..=3), 0.5).disjoint_union(&random_poset(r.gen(), r.gen_range(1..=3), 0.5));
        ensure(greene_brute(&q, &lim()).unwrap().is_zero(), || format!("disconnected poset with G != 0:\n{q}"))
    })?;
    Ok("100 connected and 100 disconnected random posets".into())
}

fn criterion_4() -> Outcome {
    trials(100, |seed| {
        let mut r = rng(4000 + seed);
        let p = random_connected_poset(r.gen(), r.gen_range(2..=7), r.gen_range(0.1..0.7));
        let &(a, b) = p.covers().choose(&mut r).unwrap();
        ensure(contraction_law_check(&p, a, b, &lim()).unwrap().holds, || format!("contraction, seed {seed}"))
    })?;
    trials(100, |seed| {
        let mut r = rng(4500 + seed);
        loop {
            let p = random_poset(r.gen(), r.gen_range(2..=7), r.gen_range(0.1..0.7));
            let pairs: Vec<(usize, usize)> =
                p.ids().flat_map(|a| (a + 1..p.len()).map(move |b| (a, b))).filter(|&(a, b)| !p.comparable(a, b)).collect();
            if let Some(&(a, b)) = pairs.choose(&mut r) {
                let rep = partition_identity_check(&p, a, b, &lim()).unwrap();
                return ensure(rep.holds, || format!("partition, seed {seed}"));
            }
        }
    })?;
    Ok("100 contractions, 100 partitions".into())
}

fn criterion_5() -> Outcome {
    trials(100, |seed| {
        let mut r = rng(5000 + seed);
        let f = FunctionValue::Polynomial({ let d = r.gen_range(0..=5); poly(&mut r, d) });
        let n = r.gen_range(1..=6);
        let nodes = NodeSet::Numeric(distinct(&mut r, n));
        let forms: Vec<Scalar> =
            [DdForm::Sum, DdForm::Det, DdForm::Residue].iter().map(|&m| divided_difference(&f, &nodes, m).unwrap()).collect();
        ensure(forms[0] == forms[1] && forms[1] == forms[2], || format!("seed {seed}: {forms:?}"))
    })?;
    for c in [-3i64, 0, 5] {
        let f = FunctionValue::Polynomial(UPoly::new(vec![rat(-c), rat(1)]));
        for form in [DdForm::Sum, DdForm::Det] {
            let v = divided_difference(&f, &NodeSet::Symbolic(vec![0, 1, 2]), form).unwrap();
            ensure(v == Scalar::Function(RationalFunction::zero()), || format!("Δ_X3[x - {c}] = {v:?}"))?;
        }
    }
    for n in 1..=6 {
        let f = FunctionValue::Polynomial(UPoly::monomial(n - 1));
        for form in [DdForm::Sum, DdForm::Det] {
            let v = divided_difference(&f, &NodeSet::Symbolic((0..n).collect()), form).unwrap();
            ensure(v == Scalar::Function(RationalFunction::one()), || format!("Δ_X{n}[x^{}] = {v:?}", n - 1))?;
        }
        let nodes = NodeSet::Numeric(distinct(&mut rng(5500 + n as u64), n));
        let v = divided_difference(&f, &nodes, DdForm::Residue).unwrap();
        ensure(v == Scalar::Rational(rat(1)), || format!("residue Δ_X{n}[x^{}]", n - 1))?;
    }
    Ok("100 random instances; base cases for n <= 6".into())
}

fn criterion_6() -> Outcome {
    trials(100, |seed| {
        let mut r = rng(6000 + seed);
        let n = r.gen_range(1..=6);
        let v = distinct(&mut r, n + 1);
        let f = FunctionValue::Polynomial({ let d = r.gen_range(0..=8); poly(&mut r, d) });
        let s = newton_series::<Numeric>(&f, &v[1..], &v[0]).unwrap();
        ensure(&s.partial_sum + &s.remainder == f.eval(&v[0]).unwrap(), || format!("Newton, seed {seed}"))?;
        let classical = lagrange(&f, &v[1..], LagrangeForm::Classical).unwrap();
        let perm = lagrange(&f, &v[1..], LagrangeForm::Permutation).unwrap();
        ensure(classical == perm, || format!("Lagrange forms, seed {seed}"))?;
        ensure(v[1..].iter().all(|x| classical.eval(x) == f.eval(x).unwrap()), || format!("interpolation, seed {seed}"))
    })?;
    for k in 1..=4 {
        for n in 1..=4 {
            trials(5, |seed| {
                let v = distinct(&mut rng(6100 + 100 * k as u64 + 10 * n as u64 + seed), k + n);
                ensure(example1_check(&v[..k], &v[k..]).unwrap().holds(), || format!("two-family identity, k {k}, n {n}"))
            })?;
        }
    }
    for k in 1..=2 {
        for n in 1..=3 {
            trials(5, |seed| {
                let v = distinct(&mut rng(6200 + 100 * k as u64 + 10 * n as u64 + seed), k + 2 * n - 1);
                let rep = example3_check(&v[..k], &v[k..k + n], &v[k + n..]).unwrap();
                ensure(rep.holds(), || format!("three-family identity, k {k}, n {n}"))
            })?;
        }
    }
    let mut prop2 = 0;
    for k in 1..=4 {
        for p in 1..=k {
            for n in 1..=3 {
                trials(20, |seed| {
                    let v = distinct(&mut rng(6300 + 1000 * k as u64 + 100 * p as u64 + 10 * n as u64 + seed), k + 2 * n - 1);
                    let rep = prop2_check(p, &v[..k], &v[k..k + n], &v[k + n..]).unwrap();
                    ensure(rep.holds(), || format!("banded determinants, p {p}, k {k}, n {n}, seed {seed}: {rep:?}"))
                })?;
                prop2 += 20;
            }
        }
    }
    for deg in 0..=3 {
        for p in 1..=3 {
            trials(5, |seed| {
                let mut r = rng(6400 + 100 * deg as u64 + 10 * p as u64 + seed);
                let h = FunctionValue::Polynomial(poly(&mut r, deg));
                let v = distinct(&mut r, deg + 2 * p);
                let rep = prop3_expand(&h, p, &v[..deg + p], &v[deg + p..], None).unwrap();
                ensure(rep.holds(), || format!("Vandermonde expansion, deg {deg}, p {p}"))
            })?;
        }
    }
    Ok(format!("100 Newton/Lagrange, two- and three-family grids, {prop2} banded determinant checks, Vandermonde grid"))
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

fn criterion_7() -> Outcome {
    let mut marked = 0;
    for c in marked_catalog() {
        let p = c.build();
        for &(lo, hi) in p.covers() {
            let s = split_greene(&MarkedPoset::new(p.clone(), lo, hi).unwrap(), &lim()).unwrap();
            ensure(s.holds(), || format!("split on {} at {} < {}", c.label(), p.name(lo), p.name(hi)))?;
            marked += 1;
        }
    }
    trials(100, |seed| {
        let mut r = rng(7000 + seed);
        let p = random_connected_poset(r.gen(), r.gen_range(2..=6), r.gen_range(0.1..0.7));
        let &(lo, hi) = p.covers().choose(&mut r).unwrap();
        let mp = MarkedPoset::new(p.clone(), lo, hi).unwrap();
        loop {
            match recursion_step_check(&mp, &assignment(&mut r, &p), &lim()) {
                Err(Error::DivisionByZero(_)) => continue,
                res => return ensure(res == Ok(true), || format!("recursion step, seed {seed}: {res:?}")),
            }
        }
    })?;
    for n in 2..=6 {
        trials(5, |seed| {
            let mut r = rng(7100 + 10 * n as u64 + seed);
            let seq = MarkedPosetSequence::triangle(n);
            let f = { let d = r.gen_range(0..n); poly(&mut r, d) };
            let v = distinct(&mut r, n + 1);
            let a: Assignment = seq.non_z_vars().into_iter().zip(v.clone()).collect();
            let rep = prop4_expand(&seq, &f, n, &a, false, &lim()).unwrap();
            let newton = newton_series::<Numeric>(&FunctionValue::Polynomial(f.clone()), &v[1..], &v[0]).unwrap();
            ensure(rep.holds() && rep.terms == newton.terms && rep.tail == newton.remainder, || format!("triangle n {n}"))
        })?;
    }
    trials(30, |seed| {
        let mut r = rng(7200 + seed);
        let ms: Vec<usize> = (0..r.gen_range(2..=3)).map(|_| r.gen_range(1..=3)).collect();
        let seq = MarkedPosetSequence::star(&ms);
        let f = { let d = r.gen_range(0..=2); poly(&mut r, d) };
        let vars = seq.non_z_vars();
        let a: Assignment = vars.iter().copied().zip(distinct(&mut r, vars.len())).collect();
        let rep = prop4_expand(&seq, &f, ms.len(), &a, false, &lim()).unwrap();
        ensure(rep.holds(), || format!("star sequence {ms:?}"))
    })?;
    let families = [Catalog::Star(1), Catalog::Star(2), Catalog::Star(3), Catalog::Star(4), Catalog::Fence { k: 1, n: 2 }, Catalog::Fence { k: 1, n: 3 }, Catalog::Diamond];
    trials(70, |seed| {
        let mut r = rng(7300 + seed);
        let c = families[seed as usize % families.len()];
        let p = c.build();
        let f = { let d = r.gen_range(0..=4); poly(&mut r, d) };
        let others: Vec<VarIndex> = p.vars()[1..].to_vec();
        loop {
            let v = distinct(&mut r, others.len() + 1);
            let a: Assignment = others.iter().copied().zip(v[1..].iter().cloned()).collect();
            match prop5_expand(&p, 0, &f, &a, &v[0], &lim()) {
                Err(Error::PoleAtX) | Err(Error::DivisionByZero(_)) => continue,
                Err(e) => return Err(format!("{}: {e}", c.label())),
                Ok(rep) => {
                    ensure(rep.holds(), || format!("single-pole expansion on {}, seed {seed}", c.label()))?;
                    if let Catalog::Star(_) = c {
                        let l = lagrange(&FunctionValue::Polynomial(f.clone()), &v[1..], LagrangeForm::Classical).unwrap();
                        ensure(l.eval(&v[0]) == rep.main, || format!("Lagrange specialization, seed {seed}"))?;
                    }
                    return Ok(());
                }
            }
        }
    })?;
    Ok(format!("{marked} marked catalog posets, 100 recursion steps, triangle n <= 6, 30 star sequences, 70 single-pole expansions"))
}

fn criterion_8() -> Outcome {
    let mut triples = 0;
    for i in 1..=6 {
        for j in 1..=6 {
            for k in 1..=6 {
                if i != j && j != k && i != k {
                    ensure(arnold_relation_check(i, j, k).unwrap(), || format!("Arnold ({i}, {j}, {k})"))?;
                    triples += 1;
                }
            }
        }
    }
    let mut posets = three_element_posets();
    let mut catalog = marked_catalog();
    catalog.push(Catalog::Antichain(3));
    posets.extend(catalog.iter().map(|c| c.build()).filter(|p| p.len() >= 2 && p.identity_is_extension()));
    let fixed = posets.len();
    for p in &posets {
        ensure(signed_extension_identity_check(p).unwrap(), || format!("signed extensions:\n{p}"))?;
    }
    trials(50, |seed| {
        let mut r = rng(8000 + seed);
        let p = random_poset(r.gen(), r.gen_range(2..=6), r.gen_range(0.1..0.7));
        ensure(signed_extension_identity_check(&p).unwrap(), || format!("signed extensions, seed {seed}"))
    })?;
    Ok(format!("{triples} triples, {fixed} fixed posets, 50 random posets"))
}

fn greene_bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_greene"))
}

fn run_bin(bin: &Path, args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(bin).args(args).env_remove("GREENE_MAX_ELEMS").output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn planted_binary() -> Result<PathBuf, String> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let target = manifest.join("../../target/planted-bug");
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let status = Command::new(cargo)
        .current_dir(manifest)
        .args(["build", "--offline", "--quiet", "--bin", "greene", "--features", "planted-bug", "--target-dir"])
        .arg(&target)
        .status()
        .map_err(|e| format!("cannot start cargo: {e}"))?;
    ensure(status.success(), || "planted-bug build failed".into())?;
    Ok(target.join("debug/greene").with_extension(std::env::consts::EXE_EXTENSION))
}

/// Lines of a kv report belonging to one counterexample.
fn record<'a>(report: &'a str, inst: &str) -> Vec<&'a str> {
    let prefix = format!("counterexample.{inst}.");
    report.lines().filter(|l| l.starts_with(&prefix)).collect()
}

fn criterion_9() -> Outcome {
    let bin = greene_bin();
    for args in [
        &["verify", "prop1", "--seed", "11", "--trials", "20", "--format", "kv"][..],
        &["verify", "prop4", "--seed", "5", "--trials", "20"][..],
        &["verify", "partition", "--seed", "7", "--trials", "100"][..],
    ] {
        let (c1, a) = run_bin(&bin, args);
        let (c2, b) = run_bin(&bin, args);
        ensure(c1 == 0 && c2 == 0, || format!("{args:?} exited {c1}, {c2}"))?;
        ensure(a == b, || format!("{args:?} is not byte-identical across runs"))?;
    }

    // Injected sign flip, in process.
    fn flipped(p: &Poset) -> greene::Result<RationalFunction> {
        greene_product(p).map(|g| -g)
    }
    let cfg = VerifyConfig { seed: 9, trials: 20, engine: flipped, ..VerifyConfig::default() };
    let rep = verify(Identity::GreeneFormula, &cfg);
    let first = rep.failures().next().ok_or("injected sign flip not caught")?.clone();
    let again = verify(Identity::GreeneFormula, &VerifyConfig { only: Some(first.instance), ..cfg });
    ensure(again.failures().next() == Some(&first), || "injected counterexample does not reproduce".into())?;

    // Planted-bug build of the binary.
    let planted = planted_binary()?;
    let (code, out) = run_bin(&planted, &["verify", "greene-formula", "--seed", "9", "--trials", "20", "--format", "kv"]);
    let out = String::from_utf8(out).map_err(|e| e.to_string())?;
    ensure(code == 1, || format!("planted bug not caught, exit {code}"))?;
    let rerun = out
        .lines()
        .rev()
        .find_map(|l| l.split_once(".rerun=").map(|(_, cmd)| cmd))
        .ok_or("no rerun command in the report")?;
    let args: Vec<&str> = rerun.split_whitespace().skip(1).chain(["--format", "kv"]).collect();
    let inst = args[args.iter().position(|&a| a == "--only-trial").ok_or("no --only-trial")? + 1];
    inst.parse::<Instance>()?;
    let (code2, out2) = run_bin(&planted, &args);
    let out2 = String::from_utf8(out2).map_err(|e| e.to_string())?;
    ensure(code2 == 1, || format!("rerun of {inst} exited {code2}"))?;
    ensure(record(&out, inst) == record(&out2, inst) && !record(&out, inst).is_empty(), || {
        format!("rerun of {inst} gives a different record")
    })?;
    let (_, out3) = run_bin(&planted, &["verify", "greene-formula", "--seed", "9", "--trials", "20", "--format", "kv"]);
    ensure(out3 == out.as_bytes(), || "planted report not byte-identical".into())?;
    Ok(format!("byte-identical reports; planted bug caught, {} counterexamples, {inst} reproduces", rep.failures().count()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Greene engines against brute force", criterion_1, 60),
        ("separator binomial = determinant = brute", criterion_2, 30),
        ("N/D structure facts", criterion_3, 60),
        ("contraction and partition laws", criterion_4, 60),
        ("divided difference forms", criterion_5, 60),
        ("interpolation identities", criterion_6, 60),
        ("splitting and contour expansions", criterion_7, 60),
        ("forms", criterion_8, 60),
        ("CLI determinism and planted bug", criterion_9, 240),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = t.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(*budget) => Err(format!("over the {budget} s budget")),
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({:.1} s): {detail}", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({:.1} s): {why}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    let total = start.elapsed();
    println!("acceptance: {} of 9 passed in {:.1} s", 9 - failed, total.as_secs_f64());
    if failed > 0 || total > Duration::from_secs(300) {
        std::process::exit(1);
    }
}
