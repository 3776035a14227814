//! Symmetric tridiagonal matrices `M(x)` with diagonal `x` and every
//! off-diagonal entry equal to `-1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `det M(x)` by first-row expansion,
/// `det M(x_1..x_k) = x_1 det M(x_2..x_k) - det M(x_3..x_k)`, with
/// `det M() = 1`.
pub fn det_m(x: &[BigInt]) -> BigInt {
    // Walk from the tail: `next` is det M(x_{i+1}..), `after` is det M(x_{i+2}..).
    let mut next = BigInt::one();
    let mut after = BigInt::zero();
    for xi in x.iter().rev() {
        let cur = xi * &next - &after;
        after = std::mem::replace(&mut next, cur);
    }
    next
}

/// Rank of `M(x)` when it is positive semidefinite, `None` otherwise.
///
/// Symmetric elimination with pivots `d_1 = x_1`, `d_i = x_i - 1/d_{i-1}`.
/// A zero pivot before the last row still couples to the next row through
/// the `-1` entry, which rules out semidefiniteness.
pub fn psd_rank(x: &[BigInt]) -> Option<usize> {
    let mut rank = 0;
    let mut prev: Option<BigRational> = None;
    for xi in x {
        let pivot = match prev {
            None => BigRational::from_integer(xi.clone()),
            Some(ref d) if d.is_zero() => return None,
            Some(ref d) => BigRational::from_integer(xi.clone()) - d.recip(),
        };
        if pivot.is_negative() {
            return None;
        }
        if !pivot.is_zero() {
            rank += 1;
        }
        prev = Some(pivot);
    }
    Some(rank)
}

pub fn is_psd_rank_at_least(x: &[BigInt], r: usize) -> bool {
    psd_rank(x).is_some_and(|rank| rank >= r)
}

/// `det M(x)` with `x_i` replaced by `x_i + m`, expanded as
/// `det M(x) + m det M(x_1..x_{i-1}) det M(x_{i+1}..x_k)`.
///
/// `i` is zero-based and must be interior: `0 < i < k - 1`.
pub fn multilinearity_expand(x: &[BigInt], i: usize, m: &BigInt) -> Result<BigInt> {
    let k = x.len();
    if i == 0 || i + 1 >= k {
        return Err(Error::IndexOutOfRange { index: i, len: k });
    }
    Ok(det_m(x) + m * det_m(&x[..i]) * det_m(&x[i + 1..]))
}
