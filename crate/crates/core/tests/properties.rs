mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use tropfglm_core::quotient::{is_semi_stable, multiplication_matrix_semistable};
use tropfglm_core::valued_field::{op_counts, reset_op_counts, Counting};
use tropfglm_core::{
    multiplication_matrices, Error, ExactRational, PAdic, PAdicField, RationalField, Scalar,
};

const N: u32 = 40;

fn field(p: u64) -> PAdicField {
    PAdicField::new(p, N).unwrap()
}

/// Nonzero p-adic numbers of moderate valuation, built from a ratio of integers.
fn padic(p: u64) -> impl Strategy<Value = PAdic> {
    (-10_000i64..10_000, 1i64..500)
        .prop_filter("nonzero", |(a, _)| *a != 0)
        .prop_map(move |(a, b)| field(p).from_ints(a, b))
}

fn primes() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(101)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_and_multiplication_associate(
        (p, a, b, c) in primes().prop_flat_map(|p| (Just(p), padic(p), padic(p), padic(p)))
    ) {
        prop_assert!(((a.clone() + b.clone()) + c.clone()).agrees_with(&(a.clone() + (b.clone() + c.clone()))));
        prop_assert!(((a.clone() * b.clone()) * c.clone()).agrees_with(&(a * (b * c))));
        let _ = p;
    }

    #[test]
    fn multiplication_distributes(
        (a, b, c) in primes().prop_flat_map(|p| (padic(p), padic(p), padic(p)))
    ) {
        let lhs = a.clone() * (b.clone() + c.clone());
        let rhs = a.clone() * b + a * c;
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn division_round_trips(
        (a, b) in primes().prop_flat_map(|p| (padic(p), padic(p)))
    ) {
        let q = a.div_ref(&b).unwrap();
        prop_assert!((q * b).agrees_with(&a));
    }

    #[test]
    fn rationals_embed(
        p in primes(), a in -100_000i64..100_000, b in 1i64..10_000, c in -1000i64..1000, d in 1i64..1000
    ) {
        let rf = RationalField::new(p).unwrap();
        let x = rf.from_ints(a, b);
        let y = rf.from_ints(c, d);
        let emb = |r: &ExactRational| r.to_padic(N as i64);
        prop_assert!(emb(&(x.clone() + y.clone())).agrees_with(&(emb(&x) + emb(&y))));
        prop_assert!(emb(&(x.clone() * y.clone())).agrees_with(&(emb(&x) * emb(&y))));
        prop_assert_eq!(emb(&x).valuation().unwrap(), x.valuation().unwrap());
        let r = BigRational::new(BigInt::from(a), BigInt::from(b));
        prop_assert!(emb(&x).agrees_with(&field(p).from_rational(r.numer(), r.denom(), N as i64)));
    }

    #[test]
    fn precision_is_never_overstated(
        (p, a, b) in primes().prop_flat_map(|p| (Just(p), padic(p), padic(p)))
    ) {
        // the sum is known exactly as far as both operands are
        let s = a.clone() + b.clone();
        let bound = a.abs_precision().unwrap().min(b.abs_precision().unwrap());
        prop_assert!(s.abs_precision().unwrap() <= bound);
        let _ = p;
    }

    #[test]
    fn text_form_round_trips(a in padic(3)) {
        let back = PAdic::parse_text(&field(3), &a.to_text()).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn inexact_zero_has_no_valuation() {
    let f = field(5);
    let z = f.from_ints(7, 1) - f.from_ints(7, 1);
    assert!(z.is_zero_value() && !z.is_exact_zero());
    assert!(matches!(z.valuation(), Err(Error::UnknownValuation)));
    assert!(z.div_ref(&f.from_ints(1, 1)).unwrap().is_zero_value());
    assert!(f.from_ints(1, 1).div_ref(&z).is_err());
}

#[test]
fn random_instances() {
    let mut checked = 0;
    for seed in 0..16 {
        let inst = common::Instance::random(1000 + seed);
        if let Some(o) = common::check_instance(&inst, 20).unwrap() {
            assert!(o.within_bounds(), "{inst:?}: {o:?}");
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} instances in range");
}

#[test]
fn semistable_path_uses_negations_only() {
    let mut seen = 0;
    for seed in 0..40u64 {
        let mut inst = common::Instance::random(5000 + seed);
        inst.homogeneous = false;
        let Ok(gq) = inst.exact_basis() else { continue };
        let lms = gq.leading_monomials().unwrap();
        let last = inst.n - 1;
        if !is_semi_stable(&lms, last) {
            continue;
        }
        let gp = common::to_padic(&gq, common::PRECISION);
        let full = multiplication_matrices(&gp).unwrap();
        let f = gp.field;
        let gc = gp.convert(f, |c| Counting(c.clone()));
        reset_op_counts();
        let mn = multiplication_matrix_semistable(&gc, last).unwrap();
        let counts = op_counts();
        assert_eq!(counts.non_negations(), 0, "{counts:?}");
        for (r, row) in mn.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                assert_eq!(x.0, full.mult[last][r][c], "{inst:?} [{r}][{c}]");
            }
        }
        seen += 1;
    }
    assert!(seen >= 3, "only {seen} semi-stable instances");
}
