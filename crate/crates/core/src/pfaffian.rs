//! Exact skew-symmetric linear algebra.
//!
//! Two independent Pfaffian routes live here: [`pf_by_definition`] sums over
//! perfect matchings with the crossing-number sign, and [`pfaffian`] runs a
//! skew-symmetric Gaussian elimination. The rest of the module evaluates the
//! Mehta–Wang determinant family in Γ(b)-normalized form (every Γ ratio becomes
//! a Pochhammer symbol, so everything stays in exact rationals).

use std::ops::Range;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{binomial, factorial, int, lagrange_eval, pochhammer, Rational};

/// Largest order accepted by [`pf_by_definition`] (10395 matchings).
pub const DEFINITION_SIZE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PfaffianError {
    #[error("Pfaffian of a matrix of odd order {0}")]
    OddSize(usize),
    #[error("matrix order {size} exceeds the limit {limit} of the definitional expansion")]
    SizeTooLarge { size: usize, limit: usize },
    #[error("entries ({row},{col}) and ({col},{row}) are not negatives of each other")]
    NotSkew { row: usize, col: usize },
    #[error("a Pochhammer symbol in a denominator vanishes for this parameter")]
    SingularParameter,
    #[error("entry ({row},{col}) does not vanish at the factorization point")]
    NotDivisible { row: usize, col: usize },
}

pub type Result<T> = std::result::Result<T, PfaffianError>;

/// Square skew-symmetric matrix of rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMatrix {
    size: usize,
    entries: Vec<Rational>,
}

impl SkewMatrix {
    /// The zero matrix of the given order.
    pub fn zero(size: usize) -> Self {
        SkewMatrix { size, entries: vec![Rational::zero(); size * size] }
    }

    /// Builds a matrix from its strict upper triangle; `upper(i, j)` is called
    /// for `i < j` only.
    pub fn from_upper<F>(size: usize, mut upper: F) -> Self
    where
        F: FnMut(usize, usize) -> Rational,
    {
        let mut m = SkewMatrix::zero(size);
        for i in 0..size {
            for j in i + 1..size {
                let v = upper(i, j);
                m.entries[j * size + i] = -v.clone();
                m.entries[i * size + j] = v;
            }
        }
        m
    }

    /// Validates skew-symmetry (which includes a zero diagonal).
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let size = rows.len();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), size, "row {i} of a square matrix has the wrong length");
        }
        for i in 0..size {
            for j in i..size {
                if rows[i][j] != -rows[j][i].clone() {
                    return Err(PfaffianError::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(SkewMatrix { size, entries: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// Simultaneously swaps rows `i, j` and columns `i, j`.
    pub fn swap_indices(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.size;
        for c in 0..n {
            self.entries.swap(i * n + c, j * n + c);
        }
        for r in 0..n {
            self.entries.swap(r * n + i, r * n + j);
        }
    }

    /// Principal submatrix on the indices not in `removed`.
    pub fn without(&self, removed: Range<usize>) -> SkewMatrix {
        let keep: Vec<usize> = (0..self.size).filter(|i| !removed.contains(i)).collect();
        self.principal(&keep)
    }

    /// Principal submatrix on the given indices, in that order.
    pub fn principal(&self, indices: &[usize]) -> SkewMatrix {
        SkewMatrix::from_upper(indices.len(), |a, b| self.get(indices[a], indices[b]).clone())
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.rows())
    }

    pub fn pfaffian(&self) -> Result<Rational> {
        pfaffian(self)
    }
}

/// Pfaffian as the signed sum over all perfect matchings of `{0..N}`, with
/// `sgn = (-1)^(number of crossings)`.
pub fn pf_by_definition(a: &SkewMatrix) -> Result<Rational> {
    let n = a.size();
    if n % 2 == 1 {
        return Err(PfaffianError::OddSize(n));
    }
    if n > DEFINITION_SIZE_LIMIT {
        return Err(PfaffianError::SizeTooLarge { size: n, limit: DEFINITION_SIZE_LIMIT });
    }
    let mut used = vec![false; n];
    let mut pairs = Vec::with_capacity(n / 2);
    let mut total = Rational::zero();
    enumerate_matchings(a, &mut used, &mut pairs, &mut total);
    Ok(total)
}

fn enumerate_matchings(
    a: &SkewMatrix,
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    total: &mut Rational,
) {
    let Some(i) = used.iter().position(|u| !u) else {
        let crossings = pairs
            .iter()
            .enumerate()
            .flat_map(|(p, &(i, k))| pairs[p + 1..].iter().map(move |&(j, l)| (i, k, j, l)))
            .filter(|&(i, k, j, l)| (i < j && j < k && k < l) || (j < i && i < l && l < k))
            .count();
        let mut prod = Rational::one();
        for &(i, j) in pairs.iter() {
            prod *= a.get(i, j);
        }
        if crossings % 2 == 0 {
            *total += prod;
        } else {
            *total -= prod;
        }
        return;
    };
    used[i] = true;
    for j in i + 1..used.len() {
        if used[j] || a.get(i, j).is_zero() {
            continue;
        }
        used[j] = true;
        pairs.push((i, j));
        enumerate_matchings(a, used, pairs, total);
        pairs.pop();
        used[j] = false;
    }
    used[i] = false;
}

/// Pfaffian by skew-symmetric elimination over the rationals.
///
/// At step `t` the leading 2×2 block is brought to `[[0, p], [-p, 0]]` with
/// `p != 0` by swapping index `t+1` with the first index carrying a nonzero
/// entry in row `t`; each swap negates the Pfaffian. The trailing block is then
/// replaced by its Schur complement, `Pf A = p · Pf(D + Cᵗ B⁻¹ C)`.
pub fn pfaffian(a: &SkewMatrix) -> Result<Rational> {
    let n = a.size();
    if n % 2 == 1 {
        return Err(PfaffianError::OddSize(n));
    }
    let mut m = a.clone();
    let mut result = Rational::one();
    let mut t = 0;
    while t < n {
        let Some(pivot) = (t + 1..n).find(|&j| !m.get(t, j).is_zero()) else {
            return Ok(Rational::zero());
        };
        if pivot != t + 1 {
            m.swap_indices(t + 1, pivot);
            result = -result;
        }
        let p = m.get(t, t + 1).clone();
        result *= &p;
        let inv = p.recip();
        // D'_{ij} = D_{ij} + (A[t+1][i] A[t][j] - A[t][i] A[t+1][j]) / p
        let row_t: Vec<Rational> = (0..n).map(|j| m.get(t, j).clone()).collect();
        let row_u: Vec<Rational> = (0..n).map(|j| m.get(t + 1, j).clone()).collect();
        for i in t + 2..n {
            if row_t[i].is_zero() && row_u[i].is_zero() {
                continue;
            }
            for j in i + 1..n {
                let delta = (&row_u[i] * &row_t[j] - &row_t[i] * &row_u[j]) * &inv;
                if delta.is_zero() {
                    continue;
                }
                let v = m.get(i, j) + &delta;
                m.entries[j * n + i] = -v.clone();
                m.entries[i * n + j] = v;
            }
        }
        t += 2;
    }
    Ok(result)
}

/// Determinant by Gaussian elimination with first-nonzero pivoting.
///
/// Panics if `rows` is not square.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    for row in rows {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    let mut m = rows.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        let inv = pivot.recip();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    det
}

/// `det_{0<=i,j<n} ((a + j - i) (b)_{i+j})`.
pub fn mehta_wang_lhs(a: &Rational, b: &Rational, n: usize) -> Rational {
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (a + int(j as i64 - i as i64)) * pochhammer(b, (i + j) as u64))
                .collect()
        })
        .collect();
    determinant(&rows)
}

/// `prod_{i<n} i! (b)_i · sum_{k=0}^{n} (-1)^k C(n,k) ((b-a)/2)_k ((b+a)/2)_{n-k}`.
pub fn mehta_wang_rhs(a: &Rational, b: &Rational, n: usize) -> Rational {
    let prefactor = (0..n).fold(Rational::one(), |acc, i| {
        acc * Rational::from_integer(factorial(i as u64)) * pochhammer(b, i as u64)
    });
    let half = crate::exactnum::rat(1, 2);
    let minus = (b - a) * &half;
    let plus = (b + a) * &half;
    let sum = (0..=n).fold(Rational::zero(), |acc, k| {
        let term = binomial(&int(n as i64), k as i64)
            * pochhammer(&minus, k as u64)
            * pochhammer(&plus, (n - k) as u64);
        if k % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    prefactor * sum
}

/// Both sides of `Pf((j - i) (b)_{i+j}) = prod_{i<n/2} (2i+1)! (b)_{2i+1}`.
pub fn prop9_pfaffian_identity(b: &Rational, n: usize) -> Result<(Rational, Rational)> {
    if n % 2 == 1 {
        return Err(PfaffianError::OddSize(n));
    }
    let m = SkewMatrix::from_upper(n, |i, j| int((j - i) as i64) * pochhammer(b, (i + j) as u64));
    let lhs = pfaffian(&m)?;
    let rhs = (0..n / 2).fold(Rational::one(), |acc, i| {
        acc * Rational::from_integer(factorial(2 * i as u64 + 1)) * pochhammer(b, 2 * i as u64 + 1)
    });
    Ok((lhs, rhs))
}

/// Both sides of `Pf((j - i) / (b)_{i+j}) = prod_{i<n/2} (2i+1)! / (b)_{n+2i-1}`.
pub fn cor10_pfaffian_identity(b: &Rational, n: usize) -> Result<(Rational, Rational)> {
    if n % 2 == 1 {
        return Err(PfaffianError::OddSize(n));
    }
    // Off-diagonal entries use (b)_1 .. (b)_{2n-3}; the right side uses the same range.
    let top = (2 * n).saturating_sub(3).max(1);
    if (1..=top).any(|m| pochhammer(b, m as u64).is_zero()) {
        return Err(PfaffianError::SingularParameter);
    }
    let m = SkewMatrix::from_upper(n, |i, j| int((j - i) as i64) / pochhammer(b, (i + j) as u64));
    let lhs = pfaffian(&m)?;
    let rhs = (0..n / 2).fold(Rational::one(), |acc, i| {
        acc * Rational::from_integer(factorial(2 * i as u64 + 1)) / pochhammer(b, (n + 2 * i - 1) as u64)
    });
    Ok((lhs, rhs))
}

/// Both sides of the block factorization of a Pfaffian whose rows in `block`
/// are divisible by `(x - root)`:
///
/// `(Pf A(x) / (x - root)^{|block|/2})|_{x=root} = Pf Ã · Pf S`,
///
/// where `Ã` is `A(root)` with the block deleted, and `S` is the block's
/// principal submatrix of `A(x) / (x - root)` at `x = root`.
///
/// `A(x)` is supplied by evaluation only. `pf_degree` bounds the degree of
/// `Pf A(x)` and `entry_degree` the degree of every entry; both quotients are
/// recovered exactly by Lagrange interpolation at points other than `root`.
pub fn block_factorization<F>(
    matrix_at: F,
    block: Range<usize>,
    root: &Rational,
    pf_degree: usize,
    entry_degree: usize,
) -> Result<(Rational, Rational)>
where
    F: Fn(&Rational) -> SkewMatrix,
{
    let half = block.len() / 2;
    let at_root = matrix_at(root);
    let n = at_root.size();
    for i in block.clone() {
        for j in 0..n {
            if !at_root.get(i, j).is_zero() {
                return Err(PfaffianError::NotDivisible { row: i, col: j });
            }
        }
    }

    let nodes: Vec<Rational> = (1..=(pf_degree + entry_degree + 1) as i64).map(|d| root + int(d)).collect();
    let samples: Vec<SkewMatrix> = nodes.iter().map(&matrix_at).collect();

    let lhs_nodes = pf_degree.saturating_sub(half) + 1;
    let mut quotients = Vec::with_capacity(lhs_nodes);
    for (x, m) in nodes.iter().zip(&samples).take(lhs_nodes) {
        let factor = num_traits::pow(x - root, half);
        quotients.push((x.clone(), pfaffian(m)? / factor));
    }
    let lhs = lagrange_eval(&quotients, root);

    let block_idx: Vec<usize> = block.clone().collect();
    let s = SkewMatrix::from_upper(block_idx.len(), |a, b| {
        let (i, j) = (block_idx[a], block_idx[b]);
        let pts: Vec<(Rational, Rational)> = nodes
            .iter()
            .zip(&samples)
            .take(entry_degree.max(1))
            .map(|(x, m)| (x.clone(), m.get(i, j) / (x - root)))
            .collect();
        lagrange_eval(&pts, root)
    });
    let rhs = pfaffian(&at_root.without(block))? * pfaffian(&s)?;
    Ok((lhs, rhs))
}
