//! Exact fractions and Hirzebruch–Jung (minus-sign) continued fractions.
//!
//! Every rational `p/q > 1` has a unique expansion
//! `p/q = a_1 - 1/(a_2 - 1/(... - 1/a_k))` with all `a_i >= 2`. Evaluation of
//! arbitrary tuples goes through the convergent recurrence
//! `p_i = a_i p_{i-1} - p_{i-2}`, which never divides and so is total on
//! tuples whose nested evaluation would hit `1/0`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A reduced positive fraction `num/den`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: BigInt,
    den: BigInt,
}

impl Fraction {
    /// Builds the reduced fraction `p/q`. Signs are normalized first, so
    /// `(-6, -4)` gives `3/2`; a zero or negative value is rejected.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (mut p, mut q) = (p.into(), q.into());
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        if !p.is_positive() {
            return Err(Error::NotPositive(format!("{p}/{q}")));
        }
        let g = p.gcd(&q);
        Ok(Fraction {
            num: p / &g,
            den: q / g,
        })
    }

    pub fn from_u64(p: u64, q: u64) -> Result<Self> {
        Self::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn integer(n: impl Into<BigInt>) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_greater_than_one(&self) -> bool {
        self.num > self.den
    }

    /// `p/(p-q)`, the fraction paired with `p/q` throughout the filling
    /// construction.
    pub fn complement(&self) -> Result<Fraction> {
        self.require_gt_one()?;
        Fraction::new(self.num.clone(), &self.num - &self.den)
    }

    fn require_gt_one(&self) -> Result<()> {
        if self.is_greater_than_one() {
            Ok(())
        } else {
            Err(Error::NotGreaterThanOne(self.to_string()))
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

/// Coefficients of a continued fraction `[a_1, ..., a_k]^-`. Canonical
/// expansions have every entry `>= 2`; general tuples may hold any integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CfTuple(Vec<BigInt>);

impl CfTuple {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        CfTuple(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> CfTuple {
        CfTuple(self.0.iter().rev().cloned().collect())
    }

    pub fn is_canonical(&self) -> bool {
        let two = BigInt::from(2);
        !self.0.is_empty() && self.0.iter().all(|a| *a >= two)
    }
}

impl From<&[i64]> for CfTuple {
    fn from(entries: &[i64]) -> Self {
        CfTuple(entries.iter().map(|&a| BigInt::from(a)).collect())
    }
}

impl<const N: usize> From<[i64; N]> for CfTuple {
    fn from(entries: [i64; N]) -> Self {
        CfTuple::from(&entries[..])
    }
}

impl fmt::Display for CfTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

pub(crate) fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    f.write_str("(")?;
    for (i, a) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

/// Convergent pairs `(p_0, q_0), ..., (p_k, q_k)` of a tuple, seeded with
/// `(1, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergents {
    pairs: Vec<(BigInt, BigInt)>,
}

impl Convergents {
    pub fn pairs(&self) -> &[(BigInt, BigInt)] {
        &self.pairs
    }

    /// `p_i`; index 0 is the seed.
    pub fn numerator(&self, i: usize) -> &BigInt {
        &self.pairs[i].0
    }

    pub fn denominator(&self, i: usize) -> &BigInt {
        &self.pairs[i].1
    }

    pub fn last(&self) -> &(BigInt, BigInt) {
        self.pairs.last().expect("seed pair is always present")
    }

    /// Number of coefficients, i.e. one less than the number of pairs.
    pub fn order(&self) -> usize {
        self.pairs.len() - 1
    }
}

pub fn convergents(t: &[BigInt]) -> Convergents {
    let mut pairs = Vec::with_capacity(t.len() + 1);
    pairs.push((BigInt::one(), BigInt::zero()));
    // (p_{-1}, q_{-1}) = (0, -1) makes the first step give (a_1, 1).
    let mut prev = (BigInt::zero(), -BigInt::one());
    for a in t {
        let cur = pairs.last().unwrap();
        let next = (a * &cur.0 - &prev.0, a * &cur.1 - &prev.1);
        prev = cur.clone();
        pairs.push(next);
    }
    Convergents { pairs }
}

/// Value of an arbitrary integer tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfValue {
    Zero,
    /// `q_k = 0` with `k >= 1`; the empty tuple is also reported here.
    Infinite,
    Positive(Fraction),
    /// Magnitude of a negative value.
    Negative(Fraction),
}

impl CfValue {
    pub fn is_zero(&self) -> bool {
        matches!(self, CfValue::Zero)
    }

    pub fn positive(&self) -> Option<&Fraction> {
        match self {
            CfValue::Positive(f) => Some(f),
            _ => None,
        }
    }
}

impl fmt::Display for CfValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfValue::Zero => f.write_str("0"),
            CfValue::Infinite => f.write_str("infinity"),
            CfValue::Positive(x) => write!(f, "{x}"),
            CfValue::Negative(x) => write!(f, "-{x}"),
        }
    }
}

pub fn cf_eval(t: &[BigInt]) -> CfValue {
    let (p, q) = convergents(t).last().clone();
    if p.is_zero() {
        return CfValue::Zero;
    }
    if q.is_zero() {
        return CfValue::Infinite;
    }
    let negative = p.is_negative() != q.is_negative();
    let magnitude = Fraction::new(p.abs(), q.abs()).expect("nonzero numerator and denominator");
    if negative {
        CfValue::Negative(magnitude)
    } else {
        CfValue::Positive(magnitude)
    }
}

/// Canonical expansion of `f > 1`, all coefficients `>= 2`.
pub fn hj_expand(f: &Fraction) -> Result<CfTuple> {
    f.require_gt_one()?;
    let mut coeffs = Vec::new();
    let (mut num, mut den) = (f.num.clone(), f.den.clone());
    loop {
        let a = num.div_ceil(&den);
        let rem = &a * &den - &num;
        coeffs.push(a);
        if rem.is_zero() {
            break;
        }
        // a - num/den = rem/den, and the tail is its reciprocal.
        num = std::mem::replace(&mut den, rem);
    }
    Ok(CfTuple(coeffs))
}

/// `len`, `U` and `V` of a fraction greater than one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfMeasures {
    pub len: usize,
    pub u: BigInt,
    pub v: BigInt,
}

pub fn cf_measures(f: &Fraction) -> Result<CfMeasures> {
    let t = hj_expand(f)?;
    let u: BigInt = t.0.iter().map(|a| a - 2).sum();
    let len = t.len();
    let v = &u + len;
    Ok(CfMeasures { len, u, v })
}

pub fn cf_len(f: &Fraction) -> Result<usize> {
    Ok(hj_expand(f)?.len())
}

pub fn cf_u(f: &Fraction) -> Result<BigInt> {
    Ok(cf_measures(f)?.u)
}

pub fn cf_v(f: &Fraction) -> Result<BigInt> {
    Ok(cf_measures(f)?.v)
}

/// `S(p/q) = (p+q)/q`: adds one to the leading coefficient.
pub fn op_s(f: &Fraction) -> Result<Fraction> {
    f.require_gt_one()?;
    Fraction::new(&f.num + &f.den, f.den.clone())
}

/// `T(p/q) = (2p-q)/p`: prepends a 2.
pub fn op_t(f: &Fraction) -> Result<Fraction> {
    f.require_gt_one()?;
    Fraction::new(2 * &f.num - &f.den, f.num.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StOp {
    S,
    T,
}

/// A word in `S` and `T`, stored outermost operator first: `[S, T, S]` is
/// `S∘T∘S`, which applies the rightmost `S` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct StWord(pub Vec<StOp>);

impl StWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, op: StOp) -> usize {
        self.0.iter().filter(|&&o| o == op).count()
    }

    pub fn apply(&self, f: &Fraction) -> Result<Fraction> {
        self.0.iter().rev().try_fold(f.clone(), |acc, op| match op {
            StOp::S => op_s(&acc),
            StOp::T => op_t(&acc),
        })
    }

    /// The word applied to `2/1`.
    pub fn evaluate(&self) -> Fraction {
        self.apply(&Fraction::integer(2).unwrap())
            .expect("S and T preserve values greater than one")
    }
}

impl fmt::Display for StWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.0 {
            f.write_str(match op {
                StOp::S => "S",
                StOp::T => "T",
            })?;
        }
        Ok(())
    }
}

/// The unique word taking `2/1` to `f`.
pub fn st_decompose(f: &Fraction) -> Result<StWord> {
    f.require_gt_one()?;
    let two = BigInt::from(2);
    let (mut num, mut den) = (f.num.clone(), f.den.clone());
    let mut word = Vec::new();
    loop {
        let doubled = &den * &two;
        match num.cmp(&doubled) {
            Ordering::Equal => break,
            Ordering::Greater => {
                word.push(StOp::S);
                num -= &den;
            }
            Ordering::Less => {
                word.push(StOp::T);
                let prev_num = den.clone();
                den = doubled - num;
                num = prev_num;
            }
        }
    }
    Ok(StWord(word))
}
