//! Reference implementations used as test oracles. None of them share code
//! with the library beyond plain integer types, except the report readers
//! at the end.

#![allow(dead_code)]

use std::collections::BTreeSet;

use lensfill::theorems::ScanReport;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn big(entries: &[i64]) -> Vec<BigInt> {
    entries.iter().map(|&a| BigInt::from(a)).collect()
}

/// Right-to-left nested division `a_1 - 1/(a_2 - 1/(...))`; `None` when a
/// partial value is zero.
pub fn nested_eval(t: &[i64]) -> Option<BigRational> {
    let (last, rest) = t.split_last()?;
    let mut x = BigRational::from_integer(BigInt::from(*last));
    for &a in rest.iter().rev() {
        if x.is_zero() {
            return None;
        }
        x = BigRational::from_integer(BigInt::from(a)) - x.recip();
    }
    Some(x)
}

/// The tridiagonal matrix with diagonal `t` and off-diagonal `-1`.
pub fn matrix_m(t: &[i64]) -> Vec<Vec<BigInt>> {
    let k = t.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BigInt::from(t[i])
                    } else if i.abs_diff(j) == 1 {
                        -BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Determinant of a square integer matrix by rational elimination.
pub fn det_dense(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let factor = &a[r][col] / &p;
            if factor.is_zero() {
                continue;
            }
            let pivot_row = a[col].clone();
            for (x, y) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * y;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

fn principal(m: &[Vec<BigInt>], rows: &[usize]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|&i| rows.iter().map(|&j| m[i][j].clone()).collect())
        .collect()
}

/// Rank of a symmetric matrix if every principal minor is non-negative,
/// `None` otherwise. The rank of a semidefinite matrix is the size of its
/// largest nonsingular principal submatrix.
pub fn psd_rank_by_minors(m: &[Vec<BigInt>]) -> Option<usize> {
    let n = m.len();
    let mut rank = 0;
    for mask in 1u32..(1 << n) {
        let rows: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let d = det_dense(&principal(m, &rows));
        if d.is_negative() {
            return None;
        }
        if !d.is_zero() {
            rank = rank.max(rows.len());
        }
    }
    Some(rank)
}

/// Zero-tuple membership straight from the definition: `M(t)` semidefinite
/// of rank at least `k - 1`, numerator `det M(t) = 0`, denominator
/// `det M(t_2..t_k) != 0`.
pub fn is_zero_tuple_by_definition(t: &[i64]) -> bool {
    if t.is_empty() {
        return false;
    }
    let m = matrix_m(t);
    if !det_dense(&m).is_zero() || det_dense(&matrix_m(&t[1..])).is_zero() {
        return false;
    }
    psd_rank_by_minors(&m).is_some_and(|r| r + 1 >= t.len())
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / (n + 1)
}

/// Every tuple with `lo <= t_i <= hi_i`.
pub fn boxed_tuples(lo: i64, hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &h in hi {
        out = out
            .into_iter()
            .flat_map(|t| {
                (lo..=h).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// Every tuple of length `k` with entries in `lo..=hi`.
pub fn all_tuples(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    boxed_tuples(lo, &vec![hi; k])
}

/// Order of `Z^k / <columns of M(n), e_i for b_i > n_i>` as the gcd of the
/// maximal minors of the matrix left after deleting the strict rows.
/// Returns 0 for an infinite quotient.
pub fn pi1_by_minors(cap: &[i64], n: &[i64]) -> BigInt {
    let k = n.len();
    let m = matrix_m(n);
    let rows: Vec<usize> = (0..k).filter(|&i| cap[i] <= n[i]).collect();
    let r = rows.len();
    if r == 0 {
        return BigInt::one();
    }
    let mut g = BigInt::zero();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize != r {
            continue;
        }
        let cols: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 1).collect();
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
            .collect();
        g = g.gcd(&det_dense(&sub));
    }
    g
}

pub fn inverse_mod_by_search(q: u64, p: u64) -> u64 {
    (1..=p).find(|x| (x * q) % p == 1 % p).expect("q is a unit")
}

/// Hirzebruch–Jung coefficients by repeated ceiling, on machine integers.
pub fn hj_coeffs(mut p: u64, mut q: u64) -> Vec<i64> {
    let mut out = Vec::new();
    while q != 0 {
        let a = p.div_ceil(q);
        out.push(a as i64);
        (p, q) = (q, a * q - p);
    }
    out
}

/// `F_n` with `F_1 = F_2 = 1`, on `u128`.
pub fn fib_u128(n: u32) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

pub fn coprime_pairs(p_max: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=p_max).flat_map(|p| (1..p).filter(move |q| q.gcd(&p) == 1).map(move |q| (p, q)))
}

pub fn is_square_free(mut p: u64) -> bool {
    let mut f = 2;
    while f * f <= p {
        if p.is_multiple_of(f * f) {
            return false;
        }
        while p.is_multiple_of(f) {
            p /= f;
        }
        f += 1;
    }
    true
}

/// Census entries `(p, q, parameter)` with `L(p,q)` in canonical form.
pub type Census = BTreeSet<(u64, u64, u64)>;

/// `(p, min(q, q^-1 mod p))`.
pub fn canonical(p: u64, q: u64) -> (u64, u64) {
    let q = q % p;
    (p, q.min(inverse_mod_by_search(q, p)))
}

/// `(p, q, d)` for `L(nd^2, ndc - 1)`, `1 <= c <= d`, `gcd(c, d) = 1`, in
/// canonical form.
pub fn d2_family(p_max: u64) -> Census {
    let mut out = BTreeSet::new();
    for d in 1..=p_max {
        for n in 1..=p_max / (d * d) {
            let p = n * d * d;
            if p < 2 {
                continue;
            }
            for c in (1..=d).filter(|c| c.gcd(&d) == 1) {
                let (p, q) = canonical(p, n * d * c - 1);
                out.insert((p, q, d));
            }
        }
    }
    out
}

/// `(p, q, l)` for `L(n F_{l+2}^2, n F_l F_{l+2} - 1)` in canonical form.
pub fn fib_family(p_max: u64) -> Census {
    let mut out = BTreeSet::new();
    for l in 1u32.. {
        let top = fib_u128(l + 2) as u64;
        if top * top > p_max {
            break;
        }
        let low = fib_u128(l) as u64;
        for n in 1..=p_max / (top * top) {
            let (p, q) = canonical(n * top * top, n * low * top - 1);
            out.insert((p, q, l as u64));
        }
    }
    out
}

pub fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().unwrap()
}

/// `(p, q, parameter)` of each census entry, the parameter read from the
/// leading `name=value` of the detail.
pub fn census_members(report: &ScanReport, name: &str) -> Census {
    report
        .equality_cases
        .iter()
        .map(|w| {
            let first = w.detail.split_whitespace().next().unwrap();
            let value = first.strip_prefix(&format!("{name}=")).unwrap();
            (to_u64(&w.p.0), to_u64(&w.q.0), value.parse().unwrap())
        })
        .collect()
}
