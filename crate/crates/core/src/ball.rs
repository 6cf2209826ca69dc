//! Sphere and ball sizes under the weighted-Hamming metric.
//!
//! The sphere of weighted radius s decomposes over the set of T-weight
//! tuples with weighted weight exactly s:
//!
//!   |S(s)| = sum over (w_1..w_m) with sum_l w_l*lambda_l = s of
//!            prod_l C(n_l, w_l) * (q-1)^(w_1+...+w_m)
//!
//! Ball sizes are computed by convolving per-block weight polynomials,
//! truncated at the radius; everything is exact big-integer arithmetic.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::metric::{BlockStructure, TWeight};

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {q} must be >= 2")));
    }
    Ok(())
}

/// All T-weight tuples with weighted weight exactly `s`, in ascending
/// lexicographic order.
pub fn lambda_set(bs: &BlockStructure, s: u64) -> Vec<TWeight> {
    let mut out = Vec::new();
    let mut current = vec![0u32; bs.m()];
    fill(bs, 0, s, &mut current, &mut out);
    out
}

fn fill(bs: &BlockStructure, l: usize, remaining: u64, current: &mut Vec<u32>, out: &mut Vec<TWeight>) {
    if l == bs.m() {
        if remaining == 0 {
            out.push(TWeight(current.clone()));
        }
        return;
    }
    let lambda = bs.scalings()[l];
    let max_w = (bs.lengths()[l] as u64).min(remaining / lambda);
    for w in 0..=max_w {
        current[l] = w as u32;
        fill(bs, l + 1, remaining - w * lambda, current, out);
    }
    current[l] = 0;
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Number of vectors in F_q^n with T-weight exactly `w`.
pub fn t_weight_class_size(q: u32, bs: &BlockStructure, w: &TWeight) -> Result<BigUint> {
    check_q(q)?;
    if w.0.len() != bs.m() {
        return Err(Error::LengthMismatch { expected: bs.m(), got: w.0.len() });
    }
    let mut acc = BigUint::one();
    for (&wl, &nl) in w.0.iter().zip(bs.lengths()) {
        if wl > nl {
            return Ok(BigUint::zero());
        }
        acc *= binom(nl as u64, wl as u64);
    }
    acc *= BigUint::from(q as u64 - 1).pow(w.hamming() as u32);
    Ok(acc)
}

/// Number of vectors at weighted-Hamming weight exactly `s` from a fixed
/// center (the metric is translation invariant, so the center is irrelevant).
pub fn sphere_size(q: u32, bs: &BlockStructure, s: u64) -> Result<BigUint> {
    check_q(q)?;
    let mut total = BigUint::zero();
    for w in lambda_set(bs, s) {
        total += t_weight_class_size(q, bs, &w)?;
    }
    Ok(total)
}

/// Number of vectors at weighted-Hamming weight at most `r` from a fixed
/// center. Saturates at q^n once `r` reaches the maximum weight.
pub fn ball_size(q: u32, bs: &BlockStructure, r: u64) -> Result<BigUint> {
    check_q(q)?;
    let r = r.min(bs.max_weight());
    let cap = r as usize;
    // coeffs[s] counts vectors of weighted weight s over the blocks merged
    // so far; weights above the radius are irrelevant and dropped.
    let mut coeffs: Vec<BigUint> = vec![BigUint::zero(); cap + 1];
    coeffs[0] = BigUint::one();
    for (&nl, &lambda) in bs.lengths().iter().zip(bs.scalings()) {
        let mut block: Vec<(usize, BigUint)> = Vec::new();
        for j in 0..=nl as u64 {
            let w = j * lambda;
            if w > r {
                break;
            }
            let count = binom(nl as u64, j) * BigUint::from(q as u64 - 1).pow(j as u32);
            block.push((w as usize, count));
        }
        let mut next: Vec<BigUint> = vec![BigUint::zero(); cap + 1];
        for (s, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (w, bc) in &block {
                if s + w <= cap {
                    next[s + w] += c * bc;
                }
            }
        }
        coeffs = next;
    }
    let mut total = BigUint::zero();
    for c in coeffs {
        total += c;
    }
    Ok(total)
}
