//! Admissible tuples with continued-fraction value zero.
//!
//! A tuple `n` is admissible when `M(n)` is positive semidefinite of rank at
//! least `k - 1`. Those with value zero are generated from `(0)` by
//! blow-ups and reduced back to `(0)` by blow-downs; they index the fillings
//! in [`crate::fillings`].

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rationals::{cf_eval, write_tuple, CfTuple};
use crate::tridiag::is_psd_rank_at_least;

/// Default upper bound on the length accepted by [`enumerate_zero_tuples`].
pub const K_MAX: usize = 14;

/// An admissible tuple of value zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroTuple(Vec<i64>);

impl ZeroTuple {
    /// Checks admissibility and value zero.
    pub fn new(entries: Vec<i64>) -> Option<Self> {
        is_admissible_zero(&entries).then_some(ZeroTuple(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        to_bigints(&self.0)
    }

    pub fn reversed(&self) -> ZeroTuple {
        ZeroTuple(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for ZeroTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

pub(crate) fn to_bigints(entries: &[i64]) -> Vec<BigInt> {
    entries.iter().map(|&a| BigInt::from(a)).collect()
}

/// Contracts an entry equal to 1 at zero-based position `j`.
///
/// Interior positions delete the entry and decrement both neighbours; the
/// ends delete the entry and decrement the single neighbour.
pub fn blow_down(t: &[i64], j: usize) -> Result<Vec<i64>> {
    let k = t.len();
    if k < 2 {
        return Err(Error::TupleTooShort { len: k });
    }
    if j >= k {
        return Err(Error::IndexOutOfRange { index: j, len: k });
    }
    if t[j] != 1 {
        return Err(Error::NotBlowDownable {
            index: j,
            found: t[j],
        });
    }
    let mut out = Vec::with_capacity(k - 1);
    out.extend_from_slice(&t[..j]);
    out.extend_from_slice(&t[j + 1..]);
    if j > 0 {
        out[j - 1] -= 1;
    }
    if j + 1 < k {
        out[j] -= 1;
    }
    Ok(out)
}

/// Inverse of [`blow_down`]. `slot` ranges over `0..=len`: slot 0 is before
/// the first entry, slot `len` after the last.
pub fn blow_up(t: &[i64], slot: usize) -> Result<Vec<i64>> {
    let k = t.len();
    if k == 0 {
        return Err(Error::TupleTooShort { len: 0 });
    }
    if slot > k {
        return Err(Error::IndexOutOfRange {
            index: slot,
            len: k,
        });
    }
    let mut out = Vec::with_capacity(k + 1);
    out.extend_from_slice(&t[..slot]);
    out.push(1);
    out.extend_from_slice(&t[slot..]);
    if slot > 0 {
        out[slot - 1] += 1;
    }
    if slot < k {
        out[slot + 1] += 1;
    }
    Ok(out)
}

/// Blow-down reduction: repeatedly contract the first entry equal to 1 and
/// accept iff the tuple ends as `(0)`.
pub fn is_admissible_zero(t: &[i64]) -> bool {
    if t.is_empty() || t.iter().any(|&a| a < 0) {
        return false;
    }
    let mut cur = t.to_vec();
    while cur.len() > 1 {
        let Some(j) = cur.iter().position(|&a| a == 1) else {
            return false;
        };
        cur = blow_down(&cur, j).expect("entry is 1 and length is at least 2");
    }
    cur[0] == 0
}

/// Independent check through the matrix: value zero and `M(t)` positive
/// semidefinite of rank at least `k - 1`.
pub fn is_admissible_zero_by_psd(t: &[i64]) -> bool {
    if t.is_empty() {
        return false;
    }
    let big = to_bigints(t);
    cf_eval(&big).is_zero() && is_psd_rank_at_least(&big, t.len() - 1)
}

/// Blow-up closure of `(0)`, one sorted level per length, grown on demand.
#[derive(Debug, Clone)]
pub struct ZeroTupleCatalog {
    levels: Vec<Vec<ZeroTuple>>,
}

impl Default for ZeroTupleCatalog {
    fn default() -> Self {
        Self::new()
    }
}

impl ZeroTupleCatalog {
    pub fn new() -> Self {
        ZeroTupleCatalog {
            levels: vec![vec![ZeroTuple(vec![0])]],
        }
    }

    /// All zero tuples of length `k >= 1`, in lexicographic order.
    pub fn level(&mut self, k: usize) -> &[ZeroTuple] {
        assert!(k >= 1, "zero tuples have length at least 1");
        while self.levels.len() < k {
            let last = self.levels.last().unwrap();
            let mut next = BTreeSet::new();
            for t in last {
                for slot in 0..=t.len() {
                    next.insert(blow_up(&t.0, slot).expect("slot in range"));
                }
            }
            self.levels.push(next.into_iter().map(ZeroTuple).collect());
        }
        &self.levels[k - 1]
    }
}

/// All zero tuples of length `k`, for `1 <= k <= K_MAX`.
pub fn enumerate_zero_tuples(k: usize) -> Result<Vec<ZeroTuple>> {
    enumerate_zero_tuples_up_to(k, K_MAX)
}

pub fn enumerate_zero_tuples_up_to(k: usize, k_max: usize) -> Result<Vec<ZeroTuple>> {
    if k == 0 || k > k_max {
        return Err(Error::LengthOutOfRange { k, max: k_max });
    }
    Ok(ZeroTupleCatalog::new().level(k).to_vec())
}

/// All zero tuples `n` of the same length as `cap` with `n_i <= b_i`, in
/// lexicographic order.
///
/// Depth-first over `n_i`, tracking prefix numerators `alpha_j`. Two
/// necessary conditions prune the search:
///
/// - `alpha_j > 0` for `j < k`: leading minors of a semidefinite matrix of
///   rank `k - 1` are positive before the last one.
/// - `alpha_j <= det M(b_{j+2}, ..., b_k)`: for a zero tuple
///   `alpha_j = det M(n_{j+2}, ..., n_k)`, and the determinant of a positive
///   definite matrix only grows when its diagonal does.
///
/// Entries are also capped at `k - 1`, the largest entry a zero tuple of
/// length `k >= 2` can carry. Every leaf is confirmed by
/// [`is_admissible_zero`].
pub fn enumerate_bounded(cap: &CfTuple) -> Vec<ZeroTuple> {
    let k = cap.len();
    match k {
        0 => return Vec::new(),
        1 => {
            return if cap.coeffs()[0].is_negative() {
                Vec::new()
            } else {
                vec![ZeroTuple(vec![0])]
            }
        }
        _ => {}
    }
    let entry_limit = (k - 1) as i64;
    let bounds: Vec<i64> = cap
        .coeffs()
        .iter()
        .map(|b| b.to_i64().map_or(entry_limit, |b| b.min(entry_limit)))
        .collect();
    // suffix_det[j] = det M(b_{j+1}, ..., b_k) in zero-based terms, so the
    // numerator of a prefix of length j is bounded by suffix_det[j + 1].
    let mut suffix_det = vec![BigInt::one(); k + 2];
    suffix_det[k + 1] = BigInt::zero();
    for j in (0..k).rev() {
        suffix_det[j] = &cap.coeffs()[j] * &suffix_det[j + 1] - &suffix_det[j + 2];
    }
    let mut search = BoundedSearch {
        bounds,
        suffix_det,
        prefix: Vec::with_capacity(k),
        found: Vec::new(),
    };
    search.descend(&BigInt::zero(), &BigInt::one());
    search.found
}

struct BoundedSearch {
    bounds: Vec<i64>,
    suffix_det: Vec<BigInt>,
    prefix: Vec<i64>,
    found: Vec<ZeroTuple>,
}

impl BoundedSearch {
    /// `before` and `last` are the numerators of the prefixes of length
    /// `i - 1` and `i`, where `i` is the next position to fill.
    fn descend(&mut self, before: &BigInt, last: &BigInt) {
        let i = self.prefix.len();
        let k = self.bounds.len();
        let bound = self.bounds[i];
        if i + 1 == k {
            // Numerator of the full tuple, n_k * last - before, must vanish
            // with last = 1, which pins n_k = before.
            if last.is_one() {
                if let Some(n) = before.to_i64().filter(|&n| (1..=bound).contains(&n)) {
                    self.prefix.push(n);
                    if is_admissible_zero(&self.prefix) {
                        self.found.push(ZeroTuple(self.prefix.clone()));
                    }
                    self.prefix.pop();
                }
            }
            return;
        }
        // Need 0 < n * last - before <= suffix_det[i + 2].
        let low: BigInt = before / last + 1;
        let high: BigInt = (&self.suffix_det[i + 2] + before) / last;
        let start = low.to_i64().unwrap_or(i64::MAX).max(1);
        let end = high.to_i64().map_or(bound, |h| h.min(bound));
        for n in start..=end {
            let alpha = last * n - before;
            self.prefix.push(n);
            self.descend(last, &alpha);
            self.prefix.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zt(entries: &[i64]) -> ZeroTuple {
        ZeroTuple(entries.to_vec())
    }

    #[test]
    fn blow_down_examples() {
        assert_eq!(blow_down(&[2, 1, 2], 1).unwrap(), vec![1, 1]);
        assert_eq!(blow_down(&[1, 2, 1], 0).unwrap(), vec![1, 1]);
        assert_eq!(blow_down(&[1, 2, 1], 2).unwrap(), vec![1, 1]);
        assert_eq!(blow_down(&[1, 1], 0).unwrap(), vec![0]);
    }

    #[test]
    fn blow_down_errors() {
        assert_eq!(
            blow_down(&[2, 2], 0),
            Err(Error::NotBlowDownable { index: 0, found: 2 })
        );
        assert_eq!(blow_down(&[1], 0), Err(Error::TupleTooShort { len: 1 }));
        assert!(matches!(
            blow_down(&[1, 1], 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn blow_up_examples() {
        assert_eq!(blow_up(&[1, 1], 1).unwrap(), vec![2, 1, 2]);
        assert_eq!(blow_up(&[1, 1], 2).unwrap(), vec![1, 2, 1]);
        assert_eq!(blow_up(&[0], 1).unwrap(), vec![1, 1]);
        assert_eq!(blow_up(&[0], 0).unwrap(), vec![1, 1]);
        assert!(blow_up(&[0], 2).is_err());
        assert!(blow_up(&[], 0).is_err());
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible_zero(&[0]));
        assert!(is_admissible_zero(&[2, 2, 1, 3]));
        assert!(!is_admissible_zero(&[1, 1, 1]));
        assert!(!is_admissible_zero_by_psd(&[1, 1, 1]));
        assert!(is_admissible_zero_by_psd(&[2, 2, 1, 3]));
        assert!(!is_admissible_zero(&[]));
        assert!(!is_admissible_zero(&[2, 2]));
        assert!(!is_admissible_zero(&[3]));
    }

    #[test]
    fn small_levels() {
        assert_eq!(enumerate_zero_tuples(1).unwrap(), vec![zt(&[0])]);
        assert_eq!(enumerate_zero_tuples(2).unwrap(), vec![zt(&[1, 1])]);
        assert_eq!(
            enumerate_zero_tuples(3).unwrap(),
            vec![zt(&[1, 2, 1]), zt(&[2, 1, 2])]
        );
        let mut four = vec![
            zt(&[1, 2, 2, 1]),
            zt(&[2, 1, 3, 1]),
            zt(&[1, 3, 1, 2]),
            zt(&[3, 1, 2, 2]),
            zt(&[2, 2, 1, 3]),
        ];
        four.sort();
        assert_eq!(enumerate_zero_tuples(4).unwrap(), four);
    }

    #[test]
    fn length_range_is_enforced() {
        assert_eq!(
            enumerate_zero_tuples(0),
            Err(Error::LengthOutOfRange { k: 0, max: K_MAX })
        );
        assert!(enumerate_zero_tuples(K_MAX + 1).is_err());
        assert!(enumerate_zero_tuples_up_to(3, 2).is_err());
    }

    #[test]
    fn bounded_examples() {
        assert_eq!(
            enumerate_bounded(&CfTuple::from([2, 2, 2])),
            vec![zt(&[1, 2, 1]), zt(&[2, 1, 2])]
        );
        assert_eq!(
            enumerate_bounded(&CfTuple::from([2, 2, 2, 3])),
            vec![zt(&[1, 2, 2, 1]), zt(&[2, 2, 1, 3])]
        );
        assert_eq!(enumerate_bounded(&CfTuple::from([7])), vec![zt(&[0])]);
        assert!(enumerate_bounded(&CfTuple::default()).is_empty());
    }

    #[test]
    fn bounded_with_huge_cap_entry() {
        let huge = BigInt::from(u64::MAX) * 1000;
        let cap = CfTuple::new(vec![BigInt::from(2), huge, BigInt::from(2)]);
        assert_eq!(
            enumerate_bounded(&cap),
            vec![zt(&[1, 2, 1]), zt(&[2, 1, 2])]
        );
    }

    #[test]
    fn zero_tuple_constructor_validates() {
        assert!(ZeroTuple::new(vec![2, 1, 2]).is_some());
        assert!(ZeroTuple::new(vec![1, 1, 1]).is_none());
        assert_eq!(zt(&[2, 2, 1, 3]).reversed(), zt(&[3, 1, 2, 2]));
        assert_eq!(zt(&[2, 2, 1, 3]).to_string(), "(2,2,1,3)");
    }
}
