//! Production counting: the gap matrix and its Pfaffian, and the exact product
//! and single-sum formulas.
//!
//! Matrix indices in this module are 1-based where they mirror the path
//! endpoints `A_1, ..., A_2n`; [`GapMatrix::body`] itself is 0-based.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{
    as_integer, binomial, binomial_int, factorial, int, pochhammer, pochhammer_int, rat, signed_sum, sum_rationals,
    Integer, Rational,
};
use crate::pfaffian::{pfaffian, PfaffianError, SkewMatrix};
use crate::region::{check_hole, HoleSpec, RegionError};

/// Largest `n` accepted by the closed-form counts.
pub const MAX_CLOSED_N: u32 = 200;
/// Largest `n` accepted by the Pfaffian route.
pub const MAX_PFAFFIAN_N: u32 = 40;
/// Largest `n` accepted by [`finite_ratio`], which cancels the common product.
pub const MAX_RATIO_N: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Pfaffian(#[from] PfaffianError),
    #[error("count is not a nonnegative integer: {0}")]
    NonIntegerResult(String),
    #[error("parameters too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, CountingError>;

fn check(n: u32, k: u32, limit: u32) -> Result<()> {
    if n == 0 {
        return Err(RegionError::DegenerateRegion { n, x: 0 }.into());
    }
    check_hole(n, Some(k))?;
    if n > limit {
        return Err(CountingError::TooLarge(format!("n = {n} exceeds {limit}")));
    }
    Ok(())
}

/// `Q_{i,j}` as a polynomial in `x`:
/// `sum_{l<i} ((j-i)/i) C(j-1, i-l-1) C(l+j, l) C(2x+2n+1, l+j+1)`.
pub fn q_entry(i: u32, j: u32, n: u32, x: &Rational) -> Rational {
    if i == j {
        return Rational::zero();
    }
    let (i, j) = (i as i64, j as i64);
    let top = int(2) * x + int(2 * n as i64 + 1);
    let scale = rat(j - i, i);
    let terms = (0..i).map(|l| {
        Rational::from_integer(binomial_int(j - 1, i - l - 1) * binomial_int(l + j, l)) * binomial(&top, l + j + 1)
    });
    scale * sum_rationals(terms)
}

/// `Q_{i,j}` as the path-count sum `sum_{t=1}^{2x+2n} ((j-i)/t) C(t,i) C(t,j)`,
/// with the summation range oriented by [`signed_sum`] when `2x+2n < 1`.
pub fn q_entry_sumform(i: u32, j: u32, n: u32, x: i64) -> Rational {
    let (i, j) = (i as i64, j as i64);
    let upper = 2 * x + 2 * n as i64;
    signed_sum(1, upper + 1, |t| {
        if t == 0 {
            // removable: C(t,i)/t -> C(-1,i-1)/i, and C(0,j) = 0 for j >= 1
            Rational::zero()
        } else {
            Rational::new(Integer::from(j - i) * binomial_int(t, i) * binomial_int(t, j), Integer::from(t))
        }
    })
}

/// `H_{i,1} = C(x+n-k-1, i-2k-1)`, `H_{i,2} = C(x+n-k-1, i-2k-2)`.
pub fn h_entry(i: u32, col: u32, n: u32, k: u32, x: &Rational) -> Rational {
    assert!(col == 1 || col == 2, "H has two columns");
    let top = x + int(n as i64 - k as i64 - 1);
    binomial(&top, i as i64 - 2 * k as i64 - col as i64)
}

/// The `(2n+2) x (2n+2)` matrix `[[Q, H], [-Hᵗ, 0]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapMatrix {
    pub n: u32,
    pub k: u32,
    pub x: Rational,
    pub body: SkewMatrix,
}

impl GapMatrix {
    pub fn pfaffian(&self) -> Rational {
        pfaffian(&self.body).expect("gap matrix has even order")
    }

    pub fn determinant(&self) -> Rational {
        self.body.determinant()
    }
}

pub fn build_matrix(n: u32, k: u32, x: &Rational) -> Result<GapMatrix> {
    check(n, k, u32::MAX)?;
    let p = 2 * n as usize;
    let body = SkewMatrix::from_upper(p + 2, |a, b| {
        let (i, j) = (a as u32 + 1, b as u32 + 1);
        if b < p {
            q_entry(i, j, n, x)
        } else if a < p {
            h_entry(i, (b - p) as u32 + 1, n, k, x)
        } else {
            Rational::zero()
        }
    });
    Ok(GapMatrix { n, k, x: x.clone(), body })
}

/// `-Pf M_n(x)` at any rational `x`, without range checks on `x`.
pub fn negated_pfaffian_at(n: u32, k: u32, x: &Rational) -> Result<Rational> {
    Ok(-build_matrix(n, k, x)?.pfaffian())
}

/// Tilings of `F(n, x)` minus `Triangle2(k)` as `-Pf M_n(x)`.
pub fn count_gap_pfaffian(n: u32, k: u32, x: u32) -> Result<Integer> {
    check(n, k, MAX_PFAFFIAN_N)?;
    if x == 0 {
        return Err(RegionError::DegenerateRegion { n, x }.into());
    }
    let value = negated_pfaffian_at(n, k, &int(x as i64))?;
    nonnegative_integer(value)
}

fn nonnegative_integer(value: Rational) -> Result<Integer> {
    match as_integer(&value) {
        Some(v) if !v.is_negative() => Ok(v),
        _ => Err(CountingError::NonIntegerResult(value.to_string())),
    }
}

/// `prod_{s=1}^{n} (2x+2s)_{4n-4s+1} / (2s)_{4n-4s+1}`.
fn box_product(n: u32, x: &Rational) -> Rational {
    let mut num = Rational::one();
    let mut den = Integer::one();
    for s in 1..=n as i64 {
        let len = (4 * n as i64 - 4 * s + 1) as u64;
        num *= pochhammer(&(int(2) * x + int(2 * s)), len);
        den *= pochhammer_int(2 * s, len);
    }
    num / Rational::from_integer(den)
}

/// `(x+1/2)_{2n} / (1/2)_{2n}`.
fn half_ratio(n: u32, x: &Rational) -> Rational {
    let half = rat(1, 2);
    pochhammer(&(x + &half), 2 * n as u64) / pochhammer(&half, 2 * n as u64)
}

/// Symmetric tilings of the hexagon with sides `2n, 2n, 2x, 2n, 2n, 2x`.
pub fn macmahon(n: u32, x: u32) -> Rational {
    macmahon_at(n, &int(x as i64))
}

pub fn macmahon_at(n: u32, x: &Rational) -> Rational {
    half_ratio(n, x) * box_product(n, x)
}

/// `sum_{i=0}^{n-k-1} weight(i) · T_i(x)`, the single sum shared by the gap
/// and lozenge formulas.
fn gap_sum<W>(n: u32, k: u32, x: &Rational, weight: W) -> Rational
where
    W: Fn(i64) -> Rational,
{
    let (n, k) = (n as i64, k as i64);
    let half = rat(1, 2);
    let m = n - k;
    let terms = (0..m).map(|i| {
        let iu = i as u64;
        let den = Rational::from_integer(
            factorial(iu)
                * num_traits::pow(factorial((m - i - 1) as u64), 2)
                * pochhammer_int(n + k - i + 1, m as u64)
                * pochhammer_int(n + k - i + 1, iu),
        ) * pochhammer(&(int(2 * n - i) + &half), iu);
        let a = pochhammer(x, iu)
            * pochhammer(&(x + int(i + 1)), (m - i - 1) as u64)
            * pochhammer(&(x + int(n + k + 1)), m as u64);
        let b = pochhammer(x, m as u64)
            * pochhammer(&(x + int(n + k + 1)), (m - i - 1) as u64)
            * pochhammer(&(x + int(2 * n - i + 1)), iu);
        weight(i) * pochhammer(&half, iu) / den * (a - b)
    });
    sum_rationals(terms)
}

/// Gap count divided by the box product, i.e. without
/// `prod_s (2x+2s)_{4n-4s+1}/(2s)_{4n-4s+1}`.
fn gap_reduced(n: u32, k: u32, x: &Rational) -> Rational {
    let pre = Rational::from_integer(binomial_int(4 * k as i64 + 1, 2 * k as i64) * factorial((n + k) as u64))
        / pochhammer(&(x + int(n as i64 - k as i64)), 2 * k as u64 + 1);
    pre * gap_sum(n, k, x, |_| Rational::one())
}

fn lozenge_reduced(n: u32, k: u32, x: &Rational) -> Rational {
    let (ni, ki) = (n as i64, k as i64);
    let c = binomial_int(ni + ki, 2 * ki + 1);
    let pre = Rational::from_integer(&c * &c * factorial((n - k - 1) as u64))
        * pochhammer(&(x + int(ni - ki)), 2 * k as u64 + 1)
        / Rational::from_integer(pochhammer_int(ni - ki, 2 * k as u64 + 1));
    pre * gap_sum(n, k, x, |i| {
        let w = binomial_int(ni + ki - i, 2 * ki + 1);
        Rational::new(Integer::one(), &w * &w)
    })
}

/// Closed-form count of tilings of `F(n, x)` minus `Triangle2(k)`.
pub fn count_gap_closed(n: u32, k: u32, x: u32) -> Result<Rational> {
    check(n, k, MAX_CLOSED_N)?;
    Ok(count_gap_closed_at(n, k, &int(x as i64)))
}

/// The gap formula as a rational function of `x`; agrees with
/// [`negated_pfaffian_at`] wherever its denominators are nonzero.
pub fn count_gap_closed_at(n: u32, k: u32, x: &Rational) -> Rational {
    gap_reduced(n, k, x) * box_product(n, x)
}

/// Closed-form count of tilings of `F(n, x)` minus `HorizontalLozenge(k)`.
pub fn count_lozenge_closed(n: u32, k: u32, x: u32) -> Result<Rational> {
    check(n, k, MAX_CLOSED_N)?;
    let x = int(x as i64);
    Ok(lozenge_reduced(n, k, &x) * box_product(n, &x))
}

/// `M(F(n,x) \ hole) / M(F(n,x))`, exactly.
pub fn finite_ratio(n: u32, k: u32, x: u32, hole: HoleSpec) -> Result<Rational> {
    let xr = int(x as i64);
    match hole {
        HoleSpec::NoHole => Ok(Rational::one()),
        HoleSpec::Triangle2(_) | HoleSpec::HorizontalLozenge(_) => {
            let k = hole.position().unwrap_or(k);
            check(n, k, MAX_RATIO_N)?;
            let reduced = match hole {
                HoleSpec::Triangle2(_) => gap_reduced(n, k, &xr),
                _ => lozenge_reduced(n, k, &xr),
            };
            Ok(reduced / half_ratio(n, &xr))
        }
    }
}

/// Convenience: `Some(v)` when a closed-form value is a nonnegative integer.
pub fn closed_as_integer(value: &Rational) -> Result<Integer> {
    nonnegative_integer(value.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfaffian::pf_by_definition;

    #[test]
    fn q_entries() {
        assert_eq!(q_entry(3, 3, 2, &rat(1, 3)), int(0));
        assert_eq!(q_entry(1, 2, 1, &int(1)), int(10));
        assert_eq!(q_entry_sumform(1, 2, 1, 1), int(10));
        assert_eq!(q_entry_sumform(2, 2, 1, 4), int(0));
        // Oriented sum for x = -3: -sum_{t=-3}^{0} of the summand.
        let oracle = -(-3..=0)
            .filter(|&t| t != 0)
            .map(|t| Rational::new(Integer::from(1) * binomial_int(t, 1) * binomial_int(t, 2), Integer::from(t)))
            .fold(Rational::zero(), |a, b| a + b);
        assert_eq!(q_entry(1, 2, 1, &int(-3)), oracle);
        assert_eq!(q_entry_sumform(1, 2, 1, -3), oracle);
        assert_eq!(q_entry(1, 2, 1, &int(-1)), q_entry_sumform(1, 2, 1, -1));
    }

    #[test]
    fn q_forms_agree_on_integer_grid() {
        for n in 1..=3 {
            for x in -5..=5 {
                for i in 1..=2 * n {
                    for j in 1..=2 * n {
                        assert_eq!(q_entry(i, j, n, &int(x)), q_entry_sumform(i, j, n, x), "Q({i},{j}) n={n} x={x}");
                    }
                }
            }
        }
    }

    #[test]
    fn h_entries() {
        assert_eq!(h_entry(1, 2, 1, 0, &int(1)), int(0));
        assert_eq!(h_entry(2, 1, 1, 0, &int(1)), int(1));
        assert_eq!(h_entry(2, 2, 1, 0, &int(1)), int(1));
    }

    #[test]
    fn smallest_gap_matrix() {
        let m = build_matrix(1, 0, &int(1)).unwrap();
        assert_eq!(m.body.size(), 4);
        assert_eq!(m.body.get(0, 1), &int(10));
        // H = [[1, 0], [1, 1]]
        assert_eq!(m.body.get(0, 2), &int(1));
        assert_eq!(m.body.get(0, 3), &int(0));
        assert_eq!(m.body.get(1, 2), &int(1));
        assert_eq!(m.body.get(1, 3), &int(1));
        assert_eq!(m.body.get(2, 3), &int(0));
        assert_eq!(pf_by_definition(&m.body).unwrap(), int(-1));
        assert_eq!(m.pfaffian(), int(-1));
        assert_eq!(m.determinant(), int(1));
        assert_eq!(count_gap_pfaffian(1, 0, 1).unwrap(), Integer::from(1));
    }

    #[test]
    fn matrix_is_skew_for_rational_x() {
        let m = build_matrix(3, 1, &rat(-7, 3)).unwrap();
        assert!(SkewMatrix::from_rows(m.body.rows()).is_ok());
        assert_eq!(m.body.get(6, 7), &int(0));
    }

    #[test]
    fn macmahon_values() {
        assert_eq!(macmahon(1, 1), int(10));
        assert_eq!(macmahon(2, 1), int(126));
        for n in 1..=6 {
            assert_eq!(macmahon(n, 0), int(1));
        }
    }

    #[test]
    fn closed_forms_small() {
        assert_eq!(count_gap_closed(1, 0, 1).unwrap(), int(1));
        assert_eq!(finite_ratio(1, 0, 1, HoleSpec::Triangle2(0)).unwrap(), rat(1, 10));
        assert_eq!(finite_ratio(3, 1, 2, HoleSpec::NoHole).unwrap(), int(1));
        let r = finite_ratio(2, 0, 2, HoleSpec::Triangle2(0)).unwrap();
        assert_eq!(r, count_gap_closed(2, 0, 2).unwrap() / macmahon(2, 2));
        let r = finite_ratio(3, 1, 2, HoleSpec::HorizontalLozenge(1)).unwrap();
        assert_eq!(r, count_lozenge_closed(3, 1, 2).unwrap() / macmahon(3, 2));
    }

    #[test]
    fn closed_form_at_zero_matches_pfaffian() {
        for n in 1..=4 {
            for k in 0..n {
                assert_eq!(negated_pfaffian_at(n, k, &int(0)).unwrap(), count_gap_closed(n, k, 0).unwrap());
            }
        }
    }

    #[test]
    fn closed_form_is_the_pfaffian_as_a_function_of_x() {
        for (n, k) in [(2, 0), (2, 1), (3, 1)] {
            for x in [rat(1, 3), rat(-5, 7), rat(9, 2)] {
                assert_eq!(negated_pfaffian_at(n, k, &x).unwrap(), count_gap_closed_at(n, k, &x));
            }
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(count_gap_closed(1, 1, 1), Err(CountingError::Region(_))));
        assert!(matches!(count_gap_pfaffian(2, 0, 0), Err(CountingError::Region(_))));
        assert!(matches!(count_gap_pfaffian(41, 0, 1), Err(CountingError::TooLarge(_))));
        assert!(matches!(count_lozenge_closed(201, 0, 1), Err(CountingError::TooLarge(_))));
        assert!(build_matrix(2, 2, &int(1)).is_err());
    }
}
