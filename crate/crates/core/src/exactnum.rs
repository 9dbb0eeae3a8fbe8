//! Exact arithmetic substrate.
//!
//! Every count, matrix entry and closed-form term in this crate is an
//! [`Integer`] or a [`Rational`]. Both are always normalized, so equality is
//! structural. Floating point only appears in the conversion helpers at the
//! bottom of this module and in [`crate::analysis`].

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Normalized arbitrary-precision fraction (`den > 0`, `gcd(num, den) = 1`).
pub type Rational = BigRational;

/// `num / den` as a normalized rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

/// The integer `v` as a rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(Integer::from(v))
}

/// `m!`
pub fn factorial(m: u64) -> Integer {
    let mut acc = Integer::one();
    for i in 2..=m {
        acc *= i;
    }
    acc
}

/// Rising factorial `(a)_m = a(a+1)...(a+m-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, m: u64) -> Rational {
    // Accumulate numerator and denominator separately; a single reduction at
    // the end is much cheaper than normalizing after every factor.
    let (p, q) = (a.numer(), a.denom());
    let mut num = Integer::one();
    let mut term = p.clone();
    for _ in 0..m {
        if term.is_zero() {
            return Rational::zero();
        }
        num *= &term;
        term += q;
    }
    let den = num_traits::pow(q.clone(), m as usize);
    Rational::new(num, den)
}

/// Rising factorial of an integer argument, exactly.
pub fn pochhammer_int(a: i64, m: u64) -> Integer {
    let mut acc = Integer::one();
    for i in 0..m as i64 {
        let f = a + i;
        if f == 0 {
            return Integer::zero();
        }
        acc *= f;
    }
    acc
}

/// Generalized binomial coefficient `r(r-1)...(r-j+1)/j!`; zero for `j < 0`.
pub fn binomial(r: &Rational, j: i64) -> Rational {
    if j < 0 {
        return Rational::zero();
    }
    let (p, q) = (r.numer(), r.denom());
    let mut num = Integer::one();
    let mut term = p.clone();
    for _ in 0..j {
        if term.is_zero() {
            return Rational::zero();
        }
        num *= &term;
        term -= q;
    }
    let den = num_traits::pow(q.clone(), j as usize) * factorial(j as u64);
    Rational::new(num, den)
}

/// Binomial coefficient with integer upper argument (possibly negative).
pub fn binomial_int(r: i64, j: i64) -> Integer {
    if j < 0 {
        return Integer::zero();
    }
    if r >= 0 && j > r {
        return Integer::zero();
    }
    // Multiplicative formula keeps every partial quotient integral:
    // C(r, i+1) = C(r, i) * (r - i) / (i + 1).
    let mut acc = Integer::one();
    for i in 0..j {
        acc *= r - i;
        acc /= i + 1;
    }
    acc
}

/// Sum with the orientation convention used for symbolic summation bounds:
/// `sum_{k=m}^{n-1} term(k)` when `n > m`, `0` when `n == m`, and
/// `-sum_{k=n}^{m-1} term(k)` when `n < m`.
pub fn signed_sum<F>(m: i64, n: i64, mut term: F) -> Rational
where
    F: FnMut(i64) -> Rational,
{
    match n.cmp(&m) {
        std::cmp::Ordering::Greater => (m..n).map(&mut term).fold(Rational::zero(), |a, t| a + t),
        std::cmp::Ordering::Equal => Rational::zero(),
        std::cmp::Ordering::Less => -(n..m).map(&mut term).fold(Rational::zero(), |a, t| a + t),
    }
}

/// Value at `at` of the unique polynomial of degree `< nodes.len()` through
/// the given `(x, y)` pairs. The abscissae must be distinct.
pub fn lagrange_eval(nodes: &[(Rational, Rational)], at: &Rational) -> Rational {
    let mut total = Rational::zero();
    for (i, (xi, yi)) in nodes.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut num = Rational::one();
        let mut den = Rational::one();
        for (j, (xj, _)) in nodes.iter().enumerate() {
            if i != j {
                num *= at - xj;
                den *= xi - xj;
            }
        }
        total += yi * num / den;
    }
    total
}

/// The integer value of `r`, if `r` has denominator one.
pub fn as_integer(r: &Rational) -> Option<Integer> {
    r.is_integer().then(|| r.numer().clone())
}

/// Sum of many rationals, with a single normalization at the end.
pub fn sum_rationals<I>(terms: I) -> Rational
where
    I: IntoIterator<Item = Rational>,
{
    let mut num = Integer::zero();
    let mut den = Integer::one();
    for t in terms {
        let (tn, td) = (t.numer(), t.denom());
        if tn.is_zero() {
            continue;
        }
        let g = den.gcd(td);
        if g.is_one() {
            num = num * td + tn * &den;
            den *= td;
        } else {
            let td_g = td / &g;
            num = num * &td_g + tn * (&den / &g);
            den *= td_g;
        }
    }
    Rational::new(num, den)
}

// --- float conversion -----------------------------------------------------

/// `x * 2^e` without intermediate overflow for large `|e|`.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

/// Nearest double to `r` (to within a couple of ulps), even when numerator and
/// denominator are far outside the range of `f64`.
pub fn to_f64(r: &Rational) -> f64 {
    let (num, den) = (r.numer(), r.denom());
    if num.is_zero() {
        return 0.0;
    }
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift = db - nb + 64;
    let q = if shift >= 0 {
        (num.abs() << shift as usize) / den
    } else {
        num.abs() / (den << (-shift) as usize)
    };
    let mag = ldexp(q.to_f64().unwrap_or(f64::INFINITY), -shift);
    if num.sign() == Sign::Minus {
        -mag
    } else {
        mag
    }
}

/// Natural logarithm of a positive integer of any size.
pub fn ln_integer(v: &Integer) -> f64 {
    assert!(v.is_positive(), "ln of non-positive integer");
    let bits = v.bits() as i64;
    if bits <= 64 {
        return v.to_f64().unwrap().ln();
    }
    let top = (v >> (bits - 64) as usize).to_f64().unwrap();
    top.ln() + (bits - 64) as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational of any size.
pub fn ln_rational(r: &Rational) -> f64 {
    ln_integer(r.numer()) - ln_integer(r.denom())
}
