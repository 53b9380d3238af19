use std::collections::BTreeMap;

use greene::algebra::{rat, ratio, Numeric, Rational, RationalFunction, UPoly};
use greene::interp::{
    dd_relations_check, divided_difference, example1_check, lagrange, lagrange_with, newton_series, prop2_check,
    DdForm, FunctionValue, LagrangeForm, NodeSet, Scalar,
};
use greene::exec::Strategy as Exec;
use proptest::prelude::*;

fn poly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|c| UPoly::new(c.into_iter().map(rat).collect()))
}

/// `count` distinct rationals.
fn nodes(count: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set((-40i64..=40, 1i64..=3), count..=count * 3)
        .prop_map(|s| s.into_iter().map(|(a, d)| ratio(a, d)).collect::<std::collections::BTreeSet<_>>())
        .prop_filter("enough distinct values", move |s| s.len() >= count)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |mut v| {
            v.truncate(count);
            v
        })
}

fn sized_nodes(max: usize) -> impl Strategy<Value = Vec<Rational>> {
    (1..=max).prop_flat_map(nodes)
}

fn dd(f: &UPoly, x: &[Rational], form: DdForm) -> Scalar {
    divided_difference(&FunctionValue::Polynomial(f.clone()), &NodeSet::Numeric(x.to_vec()), form).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_forms_agree(f in poly(7), x in sized_nodes(6)) {
        let s = dd(&f, &x, DdForm::Sum);
        prop_assert_eq!(&s, &dd(&f, &x, DdForm::Det));
        prop_assert_eq!(&s, &dd(&f, &x, DdForm::Residue));
    }

    #[test]
    fn divided_difference_is_symmetric(f in poly(7), x in sized_nodes(6), perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let y: Vec<Rational> = perm.iter().filter(|&&i| i < x.len()).map(|&i| x[i].clone()).collect();
        prop_assert_eq!(dd(&f, &x, DdForm::Sum), dd(&f, &y, DdForm::Sum));
    }

    #[test]
    fn monomial_base_cases(x in sized_nodes(6), m in 0usize..6) {
        let n = x.len();
        prop_assume!(m < n);
        let expected = if m == n - 1 { rat(1) } else { rat(0) };
        prop_assert_eq!(dd(&UPoly::monomial(m), &x, DdForm::Sum), Scalar::Rational(expected));
    }

    #[test]
    fn two_point_quotient(f in poly(6), x in nodes(2)) {
        let q = (f.eval(&x[0]) - f.eval(&x[1])) / (&x[0] - &x[1]);
        prop_assert_eq!(dd(&f, &x, DdForm::Sum), Scalar::Rational(q));
        prop_assert_eq!(dd(&f, &x[..1], DdForm::Sum), Scalar::Rational(f.eval(&x[0])));
    }

    #[test]
    fn recurrence_and_three_term_relation(f in poly(6), x in nodes(5)) {
        prop_assert!(dd_relations_check(&FunctionValue::Polynomial(f), &NodeSet::Numeric(x), 0, 2, 4).unwrap());
    }

    #[test]
    fn lagrange_forms_agree_and_interpolate(f in poly(8), x in sized_nodes(6)) {
        let fv = FunctionValue::Polynomial(f.clone());
        let classical = lagrange(&fv, &x, LagrangeForm::Classical).unwrap();
        prop_assert_eq!(&classical, &lagrange(&fv, &x, LagrangeForm::Permutation).unwrap());
        prop_assert_eq!(&classical, &lagrange_with(&fv, &x, LagrangeForm::Permutation, Exec::Sequential).unwrap());
        prop_assert!(classical.degree().is_none_or(|d| d < x.len()));
        for t in &x {
            prop_assert_eq!(classical.eval(t), f.eval(t));
        }
    }

    #[test]
    fn newton_series_reproduces_value(f in poly(8), x in sized_nodes(7)) {
        let (at, nodes) = x.split_first().unwrap();
        let s = newton_series::<Numeric>(&FunctionValue::Polynomial(f.clone()), nodes, at).unwrap();
        prop_assert_eq!(&s.partial_sum + &s.remainder, f.eval(at));
        prop_assert_eq!(s.terms.len(), nodes.len());
    }

    #[test]
    fn tables_and_polynomials_agree(f in poly(5), x in sized_nodes(5)) {
        let table: BTreeMap<Rational, Rational> = x.iter().map(|t| (t.clone(), f.eval(t))).collect();
        let nodes = NodeSet::Numeric(x.clone());
        prop_assert_eq!(
            divided_difference(&FunctionValue::Table(table), &nodes, DdForm::Sum).unwrap(),
            dd(&f, &x, DdForm::Sum)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn prop2_expressions_agree(k in 1usize..=4, p in 1usize..=4, n in 1usize..=3, v in nodes(9)) {
        prop_assume!(p <= k);
        let rep = prop2_check(p, &v[..k], &v[k..k + n], &v[k + n..k + 2 * n - 1]).unwrap();
        prop_assert!(rep.holds(), "{:?}", rep);
    }

    #[test]
    fn example1_holds(k in 1usize..=4, n in 1usize..=4, v in nodes(8)) {
        prop_assert!(example1_check(&v[..k], &v[k..k + n]).unwrap().holds());
    }
}

#[test]
fn symbolic_base_cases() {
    for n in 1..=5 {
        let x = NodeSet::Symbolic((0..n).collect());
        for m in 0..n {
            let f = FunctionValue::Polynomial(UPoly::monomial(m));
            let expected = if m == n - 1 { RationalFunction::one() } else { RationalFunction::zero() };
            assert_eq!(divided_difference(&f, &x, DdForm::Sum).unwrap(), Scalar::Function(expected.clone()));
            assert_eq!(divided_difference(&f, &x, DdForm::Det).unwrap(), Scalar::Function(expected));
        }
    }
}

#[test]
fn repeated_nodes_are_rejected() {
    let f = FunctionValue::Polynomial(UPoly::monomial(2));
    assert!(divided_difference(&f, &NodeSet::Numeric(vec![rat(1), rat(1)]), DdForm::Sum).is_err());
    assert!(newton_series::<Numeric>(&f, &[rat(1), rat(2)], &rat(2)).is_err());
}
