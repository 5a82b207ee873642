//! Property-based invariants: field axioms for the quadratic towers,
//! ε-reduction, quaternion norm multiplicativity, Euclidean division chains,
//! and generator-word round trips.

use proptest::prelude::*;
use std::collections::BTreeMap;

use qll_core::exact::{rat, AlgebraicReal, SymbolicValue, Var};
use qll_core::quat::{
    euclid_div, generator_decompose, recompose, units, DecomposeOutcome, Generator, Quat,
};

const RADICANDS: [u64; 4] = [1, 2, 3, 5];

fn algebraic_strategy() -> impl Strategy<Value = AlgebraicReal> {
    proptest::collection::vec((0usize..RADICANDS.len(), -6i64..=6, 1i64..=4), 1..4).prop_map(
        |terms| {
            let mut x = AlgebraicReal::zero();
            for (ri, num, den) in terms {
                x = x + AlgebraicReal::radical_term(rat(num, den), RADICANDS[ri]);
            }
            x
        },
    )
}

fn quat_strategy() -> impl Strategy<Value = Quat> {
    (any::<bool>(), proptest::array::uniform4(-6i128..=6)).prop_map(|(half, mut t)| {
        for x in t.iter_mut() {
            *x = 2 * *x + if half { 1 } else { 0 };
        }
        Quat::from_doubled(t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in algebraic_strategy(), b in algebraic_strategy(), c in algebraic_strategy()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.inv().unwrap(), AlgebraicReal::one());
        }
    }

    #[test]
    fn structural_equality_matches_floats(a in algebraic_strategy(), b in algebraic_strategy()) {
        let diff = (a.clone() - b.clone()).to_f64().abs();
        if a == b {
            prop_assert!(diff < 1e-12);
        } else {
            // desk-scale coefficients keep distinct values well separated
            prop_assert!(diff > 1e-9, "a = {a}, b = {b}, diff = {diff:e}");
        }
    }

    #[test]
    fn epsilon_reduction(coeff in algebraic_strategy(), p in prop_oneof![Just(3u32), Just(5)]) {
        let expr = SymbolicValue::var(Var::Lambda(p)).scale(&coeff) + SymbolicValue::var(Var::Seed(1));
        let eps = SymbolicValue::var(Var::Epsilon);
        let twisted = (expr.clone() * eps.clone()) * eps;
        prop_assert_eq!(&twisted, &expr);
        for sign in [1i64, -1] {
            let bindings: BTreeMap<Var, AlgebraicReal> = [
                (Var::Epsilon, AlgebraicReal::from_int(sign)),
                (Var::Lambda(p), AlgebraicReal::from_int(2)),
                (Var::Seed(1), AlgebraicReal::from_int(-3)),
            ].into_iter().collect();
            prop_assert_eq!(
                twisted.substitute(&bindings).unwrap(),
                expr.substitute(&bindings).unwrap()
            );
        }
    }

    #[test]
    fn norm_is_multiplicative(x in quat_strategy(), y in quat_strategy()) {
        // products of order elements stay in the order
        prop_assert_eq!((x * y).norm4() as u128 * 4, x.norm4() as u128 * y.norm4() as u128);
    }

    #[test]
    fn conjugation_is_an_antiautomorphism(x in quat_strategy(), y in quat_strategy()) {
        prop_assert_eq!((x * y).conj(), y.conj() * x.conj());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn euclid_division_contract(a in quat_strategy(), b in quat_strategy()) {
        prop_assume!(!b.is_zero());
        let (q, r) = euclid_div(&a, &b).unwrap();
        prop_assert_eq!(a, q * b + r);
        prop_assert!(r.norm() < b.norm());
    }

    #[test]
    fn euclid_chains_terminate_fast(a in quat_strategy(), b in quat_strategy()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (mut x, mut y) = (a, b);
        let mut steps = 0u32;
        while !y.is_zero() {
            let (_, r) = euclid_div(&x, &y).unwrap();
            x = y;
            y = r;
            steps += 1;
        }
        // each division at least halves the norm
        let bound = 128 - (a.norm4().max(b.norm4()) as u128).leading_zeros() + 2;
        prop_assert!(steps <= bound, "{steps} steps for bound {bound}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_words_round_trip(word_spec in proptest::collection::vec((0u8..3, 0usize..24, -1i128..=1), 1..12)) {
        let us = units();
        let word: Vec<Generator> = word_spec
            .into_iter()
            .map(|(kind, ui, t)| match kind {
                0 => Generator::S,
                1 => Generator::D(us[ui]),
                _ => Generator::T(Quat::from_doubled([2 * t, 2, 0, -2])),
            })
            .collect();
        let m = recompose(&word);
        match generator_decompose(&m).unwrap() {
            DecomposeOutcome::Word(w) => prop_assert_eq!(recompose(&w), m),
            DecomposeOutcome::NotInvertible => prop_assert!(false, "product of generators is invertible"),
        }
    }
}
