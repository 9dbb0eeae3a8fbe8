use halfhex::counting::{
    build_matrix, count_gap_closed, count_gap_closed_at, macmahon_at, negated_pfaffian_at, q_entry,
};
use halfhex::exactnum::{factorial, int, rat, Integer, Rational};
use halfhex::pfaffian::pfaffian;
use halfhex::verify::gap_block_factorization;
use num_traits::Zero;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..15).prop_map(|(n, d)| rat(n, d))
}

/// Closed form of `Pf S` for the block split off at `x = -s`:
/// `(-2)^s prod_{i=1}^{2s} (2n-2s+i-1)! prod_{i<s} (2i+1)!/(4n-2s+2i+1)!`.
///
/// Entry check by hand for `n = 2, s = 1`: `Q_{3,4}(x)/(x+1)` at `x = -1` is `-1/210`.
fn pf_s_closed(n: u32, s: u32) -> Rational {
    let (n, s) = (n as u64, s as u64);
    let mut v = Rational::from_integer(num_traits::pow(Integer::from(2), s as usize));
    for i in 1..=2 * s {
        v *= Rational::from_integer(factorial(2 * n - 2 * s + i - 1));
    }
    for i in 0..s {
        v *= Rational::new(factorial(2 * i + 1), factorial(4 * n - 2 * s + 2 * i + 1));
    }
    if s % 2 == 1 {
        -v
    } else {
        v
    }
}

#[test]
fn block_factorization_of_the_gap_matrix() {
    for n in 2..=4u32 {
        for k in 0..n {
            for s in 1..(n - k) {
                let (lhs, rhs) = gap_block_factorization(n, k, s);
                assert_eq!(lhs, rhs, "n={n} k={k} s={s}");

                let root = int(-(s as i64));
                let m = build_matrix(n, k, &root).unwrap().body;
                let size = 2 * n as usize;
                let reduced = pfaffian(&m.without(size - 2 * s as usize..size)).unwrap();
                let smaller = build_matrix(n - s, k, &int(0)).unwrap().pfaffian();
                assert_eq!(reduced, smaller, "n={n} k={k} s={s}");
                assert!(!reduced.is_zero());
                assert_eq!(rhs / reduced, pf_s_closed(n, s), "n={n} k={k} s={s}");
            }
        }
    }
}

#[test]
fn pfaffian_degree_bound() {
    // The Pfaffian is a polynomial of degree at most 2n^2 + n - 4k - 3: a
    // finite difference of that order plus one vanishes.
    for (n, k) in [(1u32, 0u32), (2, 0), (2, 1), (3, 1)] {
        let d = (2 * n * n + n) as i64 - 4 * k as i64 - 3;
        let order = (d + 1) as usize;
        let vals: Vec<Rational> = (0..=order as i64).map(|x| negated_pfaffian_at(n, k, &int(x)).unwrap()).collect();
        let mut diff = vals;
        for _ in 0..order {
            diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        assert!(diff[0].is_zero(), "n={n} k={k}");
    }
}

#[test]
fn symmetric_count_via_full_gap() {
    // k = n - 1 ... the specialization holds for rational x as well.
    for n in 1..=4u32 {
        for x in [rat(3, 2), rat(-7, 5), rat(11, 3)] {
            let lhs = count_gap_closed_at(n + 1, n, &(&x - int(1)));
            assert_eq!(lhs, macmahon_at(n, &x), "n={n} x={x}");
        }
    }
}

#[test]
fn closed_forms_are_integers() {
    for n in 1..=8 {
        for k in 0..n {
            for x in 0..=5 {
                let v = count_gap_closed(n, k, x).unwrap();
                assert!(v.is_integer() && v >= Rational::zero(), "({n},{k},{x}) -> {v}");
            }
        }
    }
}

proptest! {
    #[test]
    fn q_is_antisymmetric(x in small_rational(), n in 1u32..4, i in 1u32..7, j in 1u32..7) {
        prop_assume!(i <= 2 * n && j <= 2 * n);
        prop_assert_eq!(q_entry(i, j, n, &x), -q_entry(j, i, n, &x));
    }

    #[test]
    fn reflection_symmetry_of_the_determinant(x in small_rational(), n in 1u32..4, k in 0u32..3) {
        prop_assume!(k < n);
        let mirror = int(-2 * n as i64) - &x;
        prop_assert_eq!(
            build_matrix(n, k, &x).unwrap().determinant(),
            build_matrix(n, k, &mirror).unwrap().determinant()
        );
    }

    #[test]
    fn closed_form_equals_pfaffian_at_rational_x(x in small_rational(), n in 1u32..4, k in 0u32..3) {
        prop_assume!(k < n);
        // stay off the poles of (x+n-k)_{2k+1}
        prop_assume!((0..=2 * k as i64).all(|t| (&x + int(n as i64 - k as i64 + t)) != Rational::zero()));
        prop_assert_eq!(negated_pfaffian_at(n, k, &x).unwrap(), count_gap_closed_at(n, k, &x));
    }
}
