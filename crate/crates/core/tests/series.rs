use greene::algebra::{rat, Assignment, Rational, UPoly};
use greene::interp::{lagrange, FunctionValue, LagrangeForm};
use greene::poset::{random_connected_poset, Catalog, Limits};
use greene::series::{prop4_expand, prop5_expand, split_greene, MarkedPoset, MarkedPosetSequence};
use greene::Error;
use proptest::prelude::*;

fn lim() -> Limits {
    Limits::default()
}

fn poly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|c| UPoly::new(c.into_iter().map(rat).collect()))
}

fn distinct(count: usize) -> impl Strategy<Value = Vec<Rational>> {
    Just((-30i64..=30).collect::<Vec<_>>()).prop_shuffle().prop_map(move |v| v[..count].iter().map(|&a| rat(a)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn split_recombines(s in any::<u64>(), n in 2usize..=7, d in 0.1f64..0.7, pick in any::<prop::sample::Index>()) {
        let p = random_connected_poset(s, n, d);
        let &(lo, hi) = pick.get(p.covers());
        let split = split_greene(&MarkedPoset::new(p, lo, hi).unwrap(), &lim()).unwrap();
        prop_assert!(split.holds());
    }

    #[test]
    fn triangle_terms_are_newton_terms(n in 2usize..=6, f in poly(5), v in distinct(7)) {
        prop_assume!(f.degree().is_none_or(|d| d < n));
        let seq = MarkedPosetSequence::triangle(n);
        let a: Assignment = seq.non_z_vars().into_iter().zip(v.iter().cloned()).collect();
        let rep = prop4_expand(&seq, &f, n, &a, false, &lim()).unwrap();
        prop_assert!(rep.holds());
        let newton = greene::interp::newton_series::<greene::algebra::Numeric>(&FunctionValue::Polynomial(f), &v[1..=n], &v[0]).unwrap();
        prop_assert_eq!(rep.terms, newton.terms);
    }

    #[test]
    fn star_sequences_expand(ms in prop::collection::vec(1usize..=3, 2..=3), f in poly(2), v in distinct(12)) {
        let seq = MarkedPosetSequence::star(&ms);
        let a: Assignment = seq.non_z_vars().into_iter().zip(v).collect();
        let rep = prop4_expand(&seq, &f, ms.len(), &a, false, &lim()).unwrap();
        prop_assert!(rep.holds());
    }

    #[test]
    fn prop5_main_plus_remainder(which in 0usize..7, f in poly(4), v in distinct(8)) {
        let c = [
            Catalog::Star(1), Catalog::Star(2), Catalog::Star(3), Catalog::Star(4),
            Catalog::Fence { k: 1, n: 2 }, Catalog::Fence { k: 1, n: 3 }, Catalog::Diamond,
        ][which];
        let p = c.build();
        let others = &p.vars()[1..];
        let a: Assignment = others.iter().copied().zip(v[1..].iter().cloned()).collect();
        match prop5_expand(&p, 0, &f, &a, &v[0], &lim()) {
            Err(Error::PoleAtX) => {}
            res => {
                let rep = res.unwrap();
                prop_assert!(rep.holds());
                if let Catalog::Star(m) = c {
                    let l = lagrange(&FunctionValue::Polynomial(f.clone()), &v[1..=m], LagrangeForm::Classical).unwrap();
                    prop_assert_eq!(l.eval(&v[0]), rep.main);
                }
            }
        }
    }
}

#[test]
fn marked_pair_must_be_a_cover() {
    let p = Catalog::Chain(3).build();
    assert!(MarkedPoset::new(p.clone(), 2, 0).is_err());
    assert!(MarkedPoset::new(p, 1, 0).is_ok());
}
