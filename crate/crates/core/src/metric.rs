//! The weighted-Hamming metric on block-partitioned vectors.
//!
//! A vector of length n = n_1 + ... + n_m is split into m blocks; block l
//! carries a positive integer scaling lambda_l. The weighted-Hamming weight
//! multiplies the Hamming weight of each block by its scaling:
//!
//!   wt(v) = sum_l lambda_l * hamming(v_l)
//!
//! and the distance is the weight of the difference. With a single block and
//! lambda = 1 this is the ordinary Hamming metric. The T-weight of a vector
//! is the tuple of per-block Hamming weights; it refines the weighted weight
//! and is the granularity at which channel error probabilities are constant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Block partition of coordinates together with per-block scalings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockStructure {
    lengths: Vec<u32>,
    scalings: Vec<u64>,
}

impl BlockStructure {
    /// Builds a structure from (length, scaling) pairs. Every length and
    /// every scaling must be at least 1.
    pub fn new(blocks: &[(u32, u64)]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidParameter("at least one block required".into()));
        }
        for &(n, lambda) in blocks {
            if n == 0 {
                return Err(Error::InvalidParameter("block length must be positive".into()));
            }
            if lambda == 0 {
                return Err(Error::InvalidParameter("block scaling must be positive".into()));
            }
        }
        Ok(BlockStructure {
            lengths: blocks.iter().map(|b| b.0).collect(),
            scalings: blocks.iter().map(|b| b.1).collect(),
        })
    }

    /// Number of blocks m.
    pub fn m(&self) -> usize {
        self.lengths.len()
    }

    /// Total length n.
    pub fn n(&self) -> usize {
        self.lengths.iter().map(|&x| x as usize).sum()
    }

    /// Maximum possible weight M = sum_l n_l * lambda_l.
    pub fn max_weight(&self) -> u64 {
        self.lengths
            .iter()
            .zip(&self.scalings)
            .map(|(&n, &l)| n as u64 * l)
            .sum()
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn scalings(&self) -> &[u64] {
        &self.scalings
    }

    /// Largest scaling over all blocks.
    pub fn max_scaling(&self) -> u64 {
        *self.scalings.iter().max().expect("at least one block")
    }

    /// Coordinate ranges of the blocks, in order.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.m());
        let mut start = 0usize;
        for &n in &self.lengths {
            out.push(start..start + n as usize);
            start += n as usize;
        }
        out
    }

    fn check_len(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: v.len() });
        }
        Ok(())
    }
}

/// Rendered as `n1:l1,n2:l2,...`, the same form [`FromStr`] accepts.
impl fmt::Display for BlockStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, l)) in self.lengths.iter().zip(&self.scalings).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}:{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BlockStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.split(',') {
            let (n, l) = part
                .split_once(':')
                .ok_or_else(|| Error::InvalidParameter(format!("bad block '{part}', expected n:lambda")))?;
            let n: u32 = n
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad block length '{n}'")))?;
            let l: u64 = l
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad block scaling '{l}'")))?;
            blocks.push((n, l));
        }
        BlockStructure::new(&blocks)
    }
}

/// Tuple of per-block Hamming weights. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TWeight(pub Vec<u32>);

impl TWeight {
    /// The weighted weight sum_l lambda_l * w_l of this tuple.
    pub fn weighted(&self, bs: &BlockStructure) -> u64 {
        self.0
            .iter()
            .zip(bs.scalings())
            .map(|(&w, &l)| w as u64 * l)
            .sum()
    }

    /// Total (unweighted) Hamming weight.
    pub fn hamming(&self) -> u64 {
        self.0.iter().map(|&w| w as u64).sum()
    }
}

impl fmt::Display for TWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// Per-block Hamming weights of `v`.
pub fn t_weight(bs: &BlockStructure, v: &[u32]) -> Result<TWeight> {
    bs.check_len(v)?;
    let mut out = Vec::with_capacity(bs.m());
    for range in bs.ranges() {
        out.push(v[range].iter().filter(|&&x| x != 0).count() as u32);
    }
    Ok(TWeight(out))
}

/// Weighted-Hamming weight of `v`.
pub fn wh_weight(bs: &BlockStructure, v: &[u32]) -> Result<u64> {
    Ok(t_weight(bs, v)?.weighted(bs))
}

/// Weighted-Hamming distance between `x` and `y`.
pub fn wh_distance(bs: &BlockStructure, x: &[u32], y: &[u32]) -> Result<u64> {
    bs.check_len(x)?;
    bs.check_len(y)?;
    let mut total = 0u64;
    for (range, &lambda) in bs.ranges().into_iter().zip(bs.scalings()) {
        let diff = x[range.clone()]
            .iter()
            .zip(&y[range])
            .filter(|(a, b)| a != b)
            .count();
        total += diff as u64 * lambda;
    }
    Ok(total)
}

/// Result of fitting integer scalings to the log-likelihood weights of a
/// parallel channel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalScalings {
    /// Exact per-block weights lambda'_l = ln((1-rho_l)/rho_l) + ln(q-1).
    pub real_weights: Vec<f64>,
    /// Best integer approximation, normalized to gcd 1.
    pub integer_weights: Vec<u64>,
    /// max_l |lambda_l / a - lambda'_l| / lambda'_l for the best scale a.
    pub scale_error: f64,
}

/// Default cap on integer scaling entries searched by [`optimal_scalings`].
pub const DEFAULT_SCALING_CAP: u64 = 64;

pub(crate) fn crossover_check(q: u32, rho: f64) -> Result<()> {
    let upper = 1.0 - 1.0 / q as f64;
    if !(rho > 0.0 && rho < upper) || !rho.is_finite() {
        return Err(Error::InvalidCrossover { rho, q });
    }
    Ok(())
}

/// Deviation of an integer tuple from the real weights under the best
/// uniform rescaling: with t_l = lambda_l / lambda'_l the best scale gives
/// error (max t - min t) / (max t + min t).
fn tuple_error(tuple: &[u64], real: &[f64]) -> f64 {
    let mut tmin = f64::INFINITY;
    let mut tmax = f64::NEG_INFINITY;
    for (&lam, &r) in tuple.iter().zip(real) {
        let t = lam as f64 / r;
        tmin = tmin.min(t);
        tmax = tmax.max(t);
    }
    (tmax - tmin) / (tmax + tmin)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Computes the exact decoding weights of a parallel q-ary symmetric channel
/// and their best integer approximation with entries in `[1, cap]`.
///
/// The search is exhaustive over integer tuples as long as cap^m stays below
/// 2^24; beyond that it falls back to scanning candidate scales with nearest
/// rounding. Ties prefer the lexicographically first tuple; the winner is
/// normalized by its gcd (which leaves the error unchanged).
pub fn optimal_scalings_with_cap(q: u32, rhos: &[f64], cap: u64) -> Result<OptimalScalings> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {q} must be >= 2")));
    }
    if rhos.is_empty() {
        return Err(Error::InvalidParameter("at least one crossover required".into()));
    }
    if cap == 0 {
        return Err(Error::InvalidParameter("scaling cap must be positive".into()));
    }
    for &rho in rhos {
        crossover_check(q, rho)?;
    }
    let real: Vec<f64> = rhos
        .iter()
        .map(|&rho| ((1.0 - rho) / rho).ln() + ((q - 1) as f64).ln())
        .collect();
    let m = real.len();

    let mut best: Vec<u64> = vec![1; m];
    let mut best_err = tuple_error(&best, &real);

    let exhaustive_ok = (cap as f64).powi(m as i32) <= (1u64 << 24) as f64;
    if exhaustive_ok {
        let mut tuple = vec![1u64; m];
        loop {
            let err = tuple_error(&tuple, &real);
            if err < best_err {
                best_err = err;
                best = tuple.clone();
            }
            let mut i = m;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] <= cap {
                    break;
                }
                tuple[i] = 1;
            }
            if i == 0 && tuple[0] == 1 {
                break;
            }
        }
    } else {
        for l in 0..m {
            for k in 1..=cap {
                let scale = k as f64 / real[l];
                let tuple: Vec<u64> = real
                    .iter()
                    .map(|&r| (scale * r).round().clamp(1.0, cap as f64) as u64)
                    .collect();
                let err = tuple_error(&tuple, &real);
                if err < best_err {
                    best_err = err;
                    best = tuple;
                }
            }
        }
    }

    let g = best.iter().fold(0u64, |acc, &x| gcd_u64(acc, x));
    let integer_weights: Vec<u64> = best.iter().map(|&x| x / g).collect();
    let scale_error = tuple_error(&integer_weights, &real);
    Ok(OptimalScalings { real_weights: real, integer_weights, scale_error })
}

/// [`optimal_scalings_with_cap`] with the default cap of 64.
pub fn optimal_scalings(q: u32, rhos: &[f64]) -> Result<OptimalScalings> {
    optimal_scalings_with_cap(q, rhos, DEFAULT_SCALING_CAP)
}
