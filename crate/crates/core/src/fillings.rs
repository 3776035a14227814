//! Minimal symplectic fillings of lens spaces, up to diffeomorphism.
//!
//! For `L(p,q)` write `p/(p-q) = [b_1, ..., b_k]^-`. Each zero tuple `n`
//! with `n_i <= b_i` gives one filling `W_{p,q}(n)`: a 1-handle plus a
//! 2-handle at every strict index `i` (where `b_i > n_i`), so
//! `b_2 = sum(b_i - n_i) - 1` and the fundamental group is cyclic of order
//! `gcd` of the prefix numerators `alpha_{i-1}` over strict indices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rationals::{cf_eval, cf_measures, convergents, hj_expand, CfTuple, CfValue, Fraction};
use crate::zero_tuples::{enumerate_bounded, ZeroTuple};

/// An oriented lens space `L(p,q)`, `p > q >= 1`, `gcd(p,q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensSpace {
    p: BigInt,
    q: BigInt,
}

impl LensSpace {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if q < BigInt::one() || p <= q || !p.gcd(&q).is_one() {
            return Err(Error::InvalidLensSpace {
                p: p.to_string(),
                q: q.to_string(),
            });
        }
        Ok(LensSpace { p, q })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `p/q` as a fraction greater than one.
    pub fn fraction(&self) -> Fraction {
        Fraction::new(self.p.clone(), self.q.clone()).expect("validated at construction")
    }

    /// The cap tuple `b`, expansion of `p/(p-q)`.
    pub fn cap(&self) -> CfTuple {
        hj_expand(&self.fraction().complement().expect("p > q")).expect("p/(p-q) > 1 when q >= 1")
    }

    /// `q^{-1} mod p`, taken in `1..p`.
    pub fn q_inverse(&self) -> BigInt {
        if self.p == BigInt::from(2) {
            return BigInt::one();
        }
        let egcd = self.q.extended_gcd(&self.p);
        egcd.x.mod_floor(&self.p)
    }

    /// Representative `L(p, min(q, q^{-1}))` of the orientation-preserving
    /// homeomorphism class.
    pub fn canonical(&self) -> LensSpace {
        let inv = self.q_inverse();
        LensSpace {
            p: self.p.clone(),
            q: inv.min(self.q.clone()),
        }
    }

    /// `L(p, p-q)`, the same manifold with the opposite orientation.
    pub fn mirror(&self) -> LensSpace {
        LensSpace {
            p: self.p.clone(),
            q: &self.p - &self.q,
        }
    }

    pub fn is_homeomorphic_to(&self, other: &LensSpace) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

pub fn lens_canonical(l: &LensSpace) -> LensSpace {
    l.canonical()
}

/// One filling `W_{p,q}(n)`. Indices in `strict_indices` are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filling {
    pub lens: LensSpace,
    pub cap: CfTuple,
    pub tuple: ZeroTuple,
    pub b2: BigInt,
    pub pi1_order: BigInt,
    pub strict_indices: Vec<usize>,
}

impl Filling {
    /// Builds the filling for `tuple` under `lens`'s cap; `tuple` is assumed
    /// to be one of [`enumerate_bounded`]'s results for that cap.
    pub fn new(lens: LensSpace, cap: CfTuple, tuple: ZeroTuple) -> Filling {
        let strict_indices = strict_indices(&cap, &tuple);
        let excess: BigInt = cap
            .coeffs()
            .iter()
            .zip(tuple.entries())
            .map(|(b, &n)| b - n)
            .sum();
        let b2 = excess - 1;
        let pi1_order = pi1_order(&cap, &tuple);
        Filling {
            lens,
            cap,
            tuple,
            b2,
            pi1_order,
            strict_indices,
        }
    }

    pub fn is_simply_connected(&self) -> bool {
        self.pi1_order.is_one()
    }
}

fn strict_indices(cap: &CfTuple, tuple: &ZeroTuple) -> Vec<usize> {
    cap.coeffs()
        .iter()
        .zip(tuple.entries())
        .enumerate()
        .filter(|(_, (b, &n))| **b > BigInt::from(n))
        .map(|(i, _)| i)
        .collect()
}

/// Every filling of `lens`, ordered lexicographically by tuple.
pub fn fillings_of(lens: &LensSpace) -> Vec<Filling> {
    let cap = lens.cap();
    enumerate_bounded(&cap)
        .into_iter()
        .map(|t| Filling::new(lens.clone(), cap.clone(), t))
        .collect()
}

/// Order of the cyclic fundamental group: `gcd` of `alpha_{i-1}` over
/// strict indices `i`, where `alpha_0 = 1` and `alpha_i` is the prefix
/// numerator of the tuple.
pub fn pi1_order(cap: &CfTuple, tuple: &ZeroTuple) -> BigInt {
    let conv = convergents(&tuple.to_bigints());
    strict_indices(cap, tuple)
        .into_iter()
        .fold(BigInt::zero(), |g, i| g.gcd(conv.numerator(i)))
}

/// Parameters `(n, d, c)` of a filling whose lens space is
/// `L(n d^2, n d c - 1)` up to orientation-preserving homeomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalForm {
    pub n: BigInt,
    pub d: BigInt,
    pub c: BigInt,
}

/// For a non-simply-connected filling with a single strict index `j`,
/// returns `n = b2 + 1` and `d/c = [n_1, ..., n_{j-1}]^-`. The lens-space
/// identity, `d = |pi_1|` and `len(p/q) - b2 = V(d/c)` are checked; a
/// failure is an [`Error::ExtremalIdentity`].
pub fn extremal_form(f: &Filling) -> Result<Option<ExtremalForm>> {
    if f.strict_indices.len() != 1 || f.is_simply_connected() {
        return Ok(None);
    }
    let j = f.strict_indices[0];
    let fail = |detail: String| Error::ExtremalIdentity {
        p: f.lens.p.to_string(),
        q: f.lens.q.to_string(),
        tuple: f.tuple.to_string(),
        detail,
    };
    let prefix = f.tuple.to_bigints()[..j].to_vec();
    let ratio = match cf_eval(&prefix) {
        CfValue::Positive(r) if r.is_greater_than_one() => r,
        other => return Err(fail(format!("prefix value {other} is not greater than 1"))),
    };
    let n = &f.b2 + 1;
    let d = ratio.num().clone();
    let c = ratio.den().clone();
    if d != f.pi1_order {
        return Err(fail(format!("d = {d} but |pi_1| = {}", f.pi1_order)));
    }
    let model = LensSpace::new(&n * &d * &d, &n * &d * &c - 1)
        .map_err(|e| fail(format!("model lens space invalid: {e}")))?;
    if !model.is_homeomorphic_to(&f.lens) {
        return Err(fail(format!("{} is not homeomorphic to {model}", f.lens)));
    }
    let gap = BigInt::from(cf_measures(&f.lens.fraction())?.len) - &f.b2;
    let v = cf_measures(&ratio)?.v;
    if gap != v {
        return Err(fail(format!("len - b2 = {gap} but V(d/c) = {v}")));
    }
    Ok(Some(ExtremalForm { n, d, c }))
}

/// `F_n` with `F_1 = F_2 = 1`.
pub fn fibonacci(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::FibonacciIndex(n));
    }
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    for _ in 2..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    Ok(b)
}

/// Largest `l >= 0` with `F_{l+2} <= d`.
pub fn fib_level(d: &BigInt) -> u64 {
    assert!(d.is_positive(), "fib_level needs d >= 1");
    // F_2 = 1, F_3 = 2, ...
    let (mut cur, mut next) = (BigInt::one(), BigInt::from(2));
    let mut level = 0;
    while next <= *d {
        let after = &cur + &next;
        cur = std::mem::replace(&mut next, after);
        level += 1;
    }
    level
}
