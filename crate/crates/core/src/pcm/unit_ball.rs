//! Exact norm-sum comparisons for the unit-ball summation.
//!
//! ℓ1 and ℓ∞ norms of rational vectors are rational. An ℓ2 norm is the
//! square root of a rational, so deciding `Σ‖b_i‖₂ ≤ 1` means comparing a
//! sum of square roots with 1. Each root is rewritten as `c·√s` with `s`
//! square-free; roots of distinct square-free integers are linearly
//! independent over ℚ, so the sum equals 1 only when every term is rational.
//! Otherwise the comparison is strict and is settled by refining rational
//! enclosures until they exclude 1.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::instances::Norm;

/// Splits `n > 0` into `(s, t)` with `n = s·t²` and `s` square-free.
fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut t = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        let mut e = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            t *= d.pow(e / 2);
            if e % 2 == 1 {
                s *= &d;
            }
        }
        d += 1;
    }
    s *= rest;
    (s, t)
}

/// Compares `Σ √q_i` with 1, for non-negative rationals `q_i`.
pub fn sum_of_square_roots_cmp_one(squares: &[BigRational]) -> Ordering {
    // √(a/b) = √(ab)/b = t√s / b
    let mut terms: BTreeMap<BigInt, BigRational> = BTreeMap::new();
    for q in squares {
        assert!(!q.is_negative(), "square root of a negative rational");
        if q.is_zero() {
            continue;
        }
        let (s, t) = squarefree_split(&(q.numer() * q.denom()));
        *terms.entry(s).or_insert_with(BigRational::zero) += BigRational::new(t, q.denom().clone());
    }
    let one = BigRational::one();
    if terms.keys().all(|s| s.is_one()) {
        return terms.get(&BigInt::one()).cloned().unwrap_or_else(BigRational::zero).cmp(&one);
    }
    let mut bits = 16u32;
    loop {
        let scale = BigInt::one() << bits;
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (s, c) in &terms {
            let r = (s * &scale * &scale).sqrt();
            lo += c * BigRational::new(r.clone(), scale.clone());
            hi += c * BigRational::new(r + 1, scale.clone());
        }
        if hi < one {
            return Ordering::Less;
        }
        if lo > one {
            return Ordering::Greater;
        }
        bits *= 2;
    }
}

/// Compares `Σ_i ‖v_i‖` with 1 in the given norm.
pub fn vector_norm_cmp<'a>(vectors: impl IntoIterator<Item = &'a [BigRational]>, norm: Norm) -> Ordering {
    let one = BigRational::one();
    match norm {
        Norm::L1 => vectors.into_iter().flatten().map(|x| x.abs()).sum::<BigRational>().cmp(&one),
        Norm::LInf => vectors
            .into_iter()
            .map(|v| v.iter().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero))
            .sum::<BigRational>()
            .cmp(&one),
        Norm::L2 => {
            let squares: Vec<BigRational> =
                vectors.into_iter().map(|v| v.iter().map(|x| x * x).sum::<BigRational>()).collect();
            sum_of_square_roots_cmp_one(&squares)
        }
    }
}
