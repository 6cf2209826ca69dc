//! Parallel q-ary symmetric channel: likelihoods, seeded transmission,
//! maximum-likelihood and weighted-distance decoding, and simulation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::ball::lambda_set;
use crate::code::{Budgets, LinearCode};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::metric::{crossover_check, t_weight, BlockStructure, TWeight};

/// Relative tolerance for likelihood and weighted-distance tie detection.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// A parallel q-ary symmetric channel: one crossover probability per block.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    q: u32,
    bs: BlockStructure,
    rhos: Vec<f64>,
}

impl ChannelSpec {
    /// Validates every crossover against (0, 1 - 1/q) and the block count.
    pub fn new(q: u32, bs: BlockStructure, rhos: &[f64]) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!(
                "alphabet size {q} must be >= 2"
            )));
        }
        if rhos.len() != bs.m() {
            return Err(Error::LengthMismatch { expected: bs.m(), got: rhos.len() });
        }
        for &rho in rhos {
            crossover_check(q, rho)?;
        }
        Ok(ChannelSpec { q, bs, rhos: rhos.to_vec() })
    }

    /// Alphabet size.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Block structure the crossovers refer to.
    pub fn bs(&self) -> &BlockStructure {
        &self.bs
    }

    /// Per-block crossover probabilities.
    pub fn rhos(&self) -> &[f64] {
        &self.rhos
    }

    /// Exact decoding weights lambda'_l = ln((1-rho_l)/rho_l) + ln(q-1).
    pub fn real_weights(&self) -> Vec<f64> {
        let lq = ((self.q - 1) as f64).ln();
        self.rhos.iter().map(|&rho| ((1.0 - rho) / rho).ln() + lq).collect()
    }
}

fn check_compatible(code: &LinearCode, spec: &ChannelSpec) -> Result<()> {
    if code.q() != spec.q() || code.bs() != spec.bs() {
        return Err(Error::InvalidParameter(
            "channel and code disagree on alphabet or block structure".into(),
        ));
    }
    Ok(())
}

/// Log-probability that the channel turns a codeword into codeword + e,
/// as a function of e's per-block error counts.
fn class_log_probability(spec: &ChannelSpec, w: &TWeight) -> f64 {
    let q = spec.q() as f64;
    let mut ll = 0.0;
    for (l, &wl) in w.0.iter().enumerate() {
        let rho = spec.rhos[l];
        let nl = spec.bs.lengths()[l] as f64;
        ll += wl as f64 * (rho / (q - 1.0)).ln() + (nl - wl as f64) * (1.0 - rho).ln();
    }
    ll
}

/// Natural log of [`pattern_probability`].
pub fn pattern_log_probability(e: &[u32], spec: &ChannelSpec) -> Result<f64> {
    let w = t_weight(&spec.bs, e)?;
    Ok(class_log_probability(spec, &w))
}

/// Probability that the channel realizes exactly the error pattern e.
pub fn pattern_probability(e: &[u32], spec: &ChannelSpec) -> Result<f64> {
    Ok(pattern_log_probability(e, spec)?.exp())
}

/// Sends c through the channel: each symbol of block l is hit with
/// probability rho_l and then replaced by a uniformly random different
/// symbol. Per symbol, one uniform draw decides the hit and, only if it
/// hits, one draw in [1, q) picks the shift.
pub fn transmit<R: Rng + ?Sized>(c: &[u32], spec: &ChannelSpec, rng: &mut R) -> Result<Vec<u32>> {
    let n = spec.bs.n();
    if c.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: c.len() });
    }
    let q = spec.q();
    if let Some(&x) = c.iter().find(|&&x| x >= q) {
        return Err(Error::InvalidParameter(format!(
            "symbol {x} not reduced mod {q}"
        )));
    }
    let mut out = Vec::with_capacity(n);
    for (l, range) in spec.bs.ranges().into_iter().enumerate() {
        let rho = spec.rhos[l];
        for &sym in &c[range] {
            if rng.random::<f64>() < rho {
                let shift = rng.random_range(1..q);
                out.push((sym + shift) % q);
            } else {
                out.push(sym);
            }
        }
    }
    Ok(out)
}

/// Streams the codebook twice and returns every codeword whose score is
/// within the tie window of the best score.
fn best_set<F>(code: &LinearCode, budgets: &Budgets, score: F) -> Result<Vec<Vec<u32>>>
where
    F: Fn(&[u32]) -> Result<f64>,
{
    let mut best = f64::NEG_INFINITY;
    for c in code.enumerate_codewords(budgets)? {
        best = best.max(score(&c)?);
    }
    let window = TIE_TOLERANCE * (1.0 + best.abs());
    let mut set = Vec::new();
    for c in code.enumerate_codewords(budgets)? {
        if score(&c)? >= best - window {
            set.push(c);
        }
    }
    Ok(set)
}

/// All codewords maximizing the likelihood of the received word r.
pub fn ml_decode(
    code: &LinearCode,
    r: &[u32],
    spec: &ChannelSpec,
    budgets: &Budgets,
) -> Result<Vec<Vec<u32>>> {
    check_compatible(code, spec)?;
    if r.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), got: r.len() });
    }
    let field = code.field();
    best_set(code, budgets, |c| {
        let e: Vec<u32> = r.iter().zip(c).map(|(&a, &b)| field.sub(a, b)).collect();
        pattern_log_probability(&e, spec)
    })
}

/// All codewords minimizing the weighted Hamming distance to r under the
/// given positive per-block weights (integer lambda or real lambda').
pub fn wh_decode(
    code: &LinearCode,
    r: &[u32],
    weights: &[f64],
    budgets: &Budgets,
) -> Result<Vec<Vec<u32>>> {
    if weights.len() != code.bs().m() {
        return Err(Error::LengthMismatch { expected: code.bs().m(), got: weights.len() });
    }
    if let Some(&w) = weights.iter().find(|&&w| w <= 0.0 || !w.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "decoding weight {w} must be positive and finite"
        )));
    }
    if r.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), got: r.len() });
    }
    let field = code.field();
    let bs = code.bs().clone();
    best_set(code, budgets, |c| {
        let e: Vec<u32> = r.iter().zip(c).map(|(&a, &b)| field.sub(a, b)).collect();
        let w = t_weight(&bs, &e)?;
        let dist: f64 = w.0.iter().zip(weights).map(|(&wl, &lam)| wl as f64 * lam).sum();
        Ok(-dist)
    })
}

/// Checks that every error pattern at least as likely as p_threshold is
/// within the code's error-correction capability; on failure returns a
/// violating pattern.
pub fn coverage_check(
    code: &LinearCode,
    spec: &ChannelSpec,
    p_threshold: f64,
    budgets: &Budgets,
) -> Result<(bool, Option<Vec<u32>>)> {
    check_compatible(code, spec)?;
    if p_threshold.is_nan() {
        return Err(Error::InvalidParameter("threshold must not be NaN".into()));
    }
    let mut patterns = 1u128;
    for _ in 0..code.n() {
        patterns = patterns
            .checked_mul(spec.q() as u128)
            .ok_or(Error::BudgetExceeded { needed: u128::MAX, budget: budgets.ambient })?;
    }
    if patterns > budgets.ambient {
        return Err(Error::BudgetExceeded { needed: patterns, budget: budgets.ambient });
    }
    let tau = code.tau(budgets)?;
    let bs = spec.bs();
    let log_threshold = p_threshold.ln();
    for s in tau + 1..=bs.max_weight() {
        for w in lambda_set(bs, s) {
            if class_log_probability(spec, &w) >= log_threshold {
                let mut witness = vec![0; bs.n()];
                for (range, &wl) in bs.ranges().into_iter().zip(&w.0) {
                    for slot in &mut witness[range.start..range.start + wl as usize] {
                        *slot = 1;
                    }
                }
                return Ok((false, Some(witness)));
            }
        }
    }
    Ok((true, None))
}

/// Decoder selector for [`simulate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decoder {
    /// Maximum-likelihood argmax set.
    Ml,
    /// Weighted-distance argmin set under the exact real weights lambda'.
    WhReal,
    /// Weighted-distance argmin set under the code's integer scalings.
    WhInteger,
}

impl std::fmt::Display for Decoder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Decoder::Ml => write!(f, "ml"),
            Decoder::WhReal => write!(f, "wh-real"),
            Decoder::WhInteger => write!(f, "wh-int"),
        }
    }
}

impl std::str::FromStr for Decoder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ml" => Ok(Decoder::Ml),
            "wh-real" => Ok(Decoder::WhReal),
            "wh-int" => Ok(Decoder::WhInteger),
            other => Err(Error::InvalidParameter(format!(
                "unknown decoder {other:?}, expected ml, wh-real, or wh-int"
            ))),
        }
    }
}

/// Outcome counters of a seeded simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationStats {
    pub trials: u64,
    pub word_errors: u64,
    pub decode_failures: u64,
    pub empirical_wer: f64,
    pub per_block_symbol_error_rate: Vec<f64>,
    pub seed: u64,
}

fn decode_with(
    decoder: Decoder,
    code: &LinearCode,
    spec: &ChannelSpec,
    r: &[u32],
    budgets: &Budgets,
) -> Result<Vec<Vec<u32>>> {
    match decoder {
        Decoder::Ml => ml_decode(code, r, spec, budgets),
        Decoder::WhReal => wh_decode(code, r, &spec.real_weights(), budgets),
        Decoder::WhInteger => {
            let weights: Vec<f64> =
                code.bs().scalings().iter().map(|&l| l as f64).collect();
            wh_decode(code, r, &weights, budgets)
        }
    }
}

/// Runs `trials` rounds of encode, transmit, decode. Trial t draws from
/// stream t of a ChaCha12 generator keyed by `seed` (message symbols
/// first, then the channel), so runs are reproducible and trials are
/// independent. A trial counts as correct only when the decoder returns
/// exactly the transmitted codeword; larger tie sets count as failures.
pub fn simulate(
    code: &LinearCode,
    spec: &ChannelSpec,
    decoder: Decoder,
    trials: u64,
    seed: u64,
    budgets: &Budgets,
) -> Result<SimulationStats> {
    check_compatible(code, spec)?;
    let q = code.q();
    let mut word_errors = 0u64;
    let mut decode_failures = 0u64;
    let mut flips: Vec<u64> = vec![0; code.bs().m()];
    for t in 0..trials {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(t);
        let msg: Vec<u32> = (0..code.k()).map(|_| rng.random_range(0..q)).collect();
        let c = code.encode(&msg)?;
        let r = transmit(&c, spec, &mut rng)?;
        for (l, range) in code.bs().ranges().into_iter().enumerate() {
            flips[l] += r[range.clone()]
                .iter()
                .zip(&c[range])
                .filter(|(a, b)| a != b)
                .count() as u64;
        }
        let set = decode_with(decoder, code, spec, &r, budgets)?;
        if set.len() > 1 {
            decode_failures += 1;
        } else if set[0] != c {
            word_errors += 1;
        }
    }
    let rate = |num: u64, den: u64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    let per_block_symbol_error_rate = flips
        .iter()
        .zip(code.bs().lengths())
        .map(|(&f, &nl)| rate(f, trials * nl as u64))
        .collect();
    Ok(SimulationStats {
        trials,
        word_errors,
        decode_failures,
        empirical_wer: rate(word_errors + decode_failures, trials),
        per_block_symbol_error_rate,
        seed,
    })
}

/// Result of sampling random codes against a distance target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GvExperiment {
    pub trials: u64,
    pub successes: u64,
    pub fraction: f64,
    pub distances: Vec<u64>,
}

/// Samples `trials` random [n, k] codes and reports how often the minimum
/// weighted-Hamming distance reaches d_target. Per-trial seeds are drawn
/// up front from a ChaCha12 generator keyed by `seed`.
pub fn gv_experiment(
    field: Field,
    bs: &BlockStructure,
    k: usize,
    d_target: u64,
    trials: u64,
    seed: u64,
    budgets: &Budgets,
) -> Result<GvExperiment> {
    use crate::code::{random_code, MinDistanceMethod};
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let code_seeds: Vec<u64> = (0..trials).map(|_| rng.random()).collect();
    let mut distances = Vec::with_capacity(trials as usize);
    let mut successes = 0u64;
    for code_seed in code_seeds {
        let (code, _) = random_code(field, bs, k, code_seed)?;
        let d = code.min_wh_distance(MinDistanceMethod::Auto, budgets)?.d;
        if d >= d_target {
            successes += 1;
        }
        distances.push(d);
    }
    let fraction = if trials == 0 { 0.0 } else { successes as f64 / trials as f64 };
    Ok(GvExperiment { trials, successes, fraction, distances })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::MinDistanceMethod;
    use crate::field::Matrix;
    use crate::metric::wh_weight;

    fn bs2(a: (u32, u64), b: (u32, u64)) -> BlockStructure {
        BlockStructure::new(&[a, b]).unwrap()
    }

    fn example_one_code() -> LinearCode {
        let g = Matrix::from_rows(vec![
            vec![1, 0, 0, 0, 0, 1, 1, 1],
            vec![0, 1, 0, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 0, 1, 1, 0, 1],
            vec![0, 0, 0, 1, 1, 1, 1, 0],
        ])
        .unwrap();
        LinearCode::from_generator(Field::new(2).unwrap(), bs2((4, 1), (4, 2)), &g).unwrap()
    }

    fn example_one_channel() -> ChannelSpec {
        ChannelSpec::new(2, bs2((4, 1), (4, 2)), &[0.125, 0.02]).unwrap()
    }

    #[test]
    fn channel_spec_validates_inputs() {
        let bs = bs2((4, 1), (4, 2));
        assert!(matches!(
            ChannelSpec::new(2, bs.clone(), &[0.125]),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
        assert!(matches!(
            ChannelSpec::new(2, bs.clone(), &[0.125, 0.6]),
            Err(Error::InvalidCrossover { .. })
        ));
        assert!(matches!(
            ChannelSpec::new(2, bs, &[0.0, 0.02]),
            Err(Error::InvalidCrossover { .. })
        ));
    }

    #[test]
    fn error_free_pattern_probability_is_the_stay_product() {
        let spec = example_one_channel();
        let p = pattern_probability(&[0; 8], &spec).unwrap();
        let expect = 0.875f64.powi(4) * 0.98f64.powi(4);
        assert!((p - expect).abs() < 1e-12);
        assert!((p - 0.540675).abs() < 1e-5);
    }

    #[test]
    fn double_error_in_block_one_clears_the_example_threshold() {
        let spec = example_one_channel();
        let p = pattern_probability(&[1, 1, 0, 0, 0, 0, 0, 0], &spec).unwrap();
        let expect = 0.125f64.powi(2) * 0.875f64.powi(2) * 0.98f64.powi(4);
        assert!((p - expect).abs() < 1e-12);
        assert!(p > 0.011);
    }

    #[test]
    fn pattern_probabilities_sum_to_one() {
        for (q, bs) in [(2, bs2((3, 1), (3, 2))), (3, bs2((2, 1), (2, 3)))] {
            let spec = ChannelSpec::new(q, bs.clone(), &[0.11, 0.23]).unwrap();
            let n = bs.n();
            let mut total = 0.0;
            let mut e = vec![0u32; n];
            loop {
                total += pattern_probability(&e, &spec).unwrap();
                let mut i = 0;
                while i < n {
                    e[i] += 1;
                    if e[i] < q {
                        break;
                    }
                    e[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
            assert!((total - 1.0).abs() < 1e-12, "q = {q}: sum {total}");
        }
    }

    #[test]
    fn probability_strictly_drops_with_each_extra_error() {
        let bs = bs2((3, 1), (2, 2));
        let spec = ChannelSpec::new(5, bs.clone(), &[0.1, 0.3]).unwrap();
        for w1 in 0..3u32 {
            for w2 in 0..2u32 {
                let here = class_log_probability(&spec, &TWeight(vec![w1, w2]));
                let right = class_log_probability(&spec, &TWeight(vec![w1 + 1, w2]));
                let down = class_log_probability(&spec, &TWeight(vec![w1, w2 + 1]));
                assert!(right < here);
                assert!(down < here);
            }
        }
    }

    #[test]
    fn transmit_is_deterministic_per_seed() {
        let spec = example_one_channel();
        let c = vec![1, 0, 1, 0, 1, 1, 0, 0];
        let a = transmit(&c, &spec, &mut ChaCha12Rng::seed_from_u64(9)).unwrap();
        let b = transmit(&c, &spec, &mut ChaCha12Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn transmit_flip_rate_stays_within_five_sigma() {
        let n = 100_000u32;
        let rho = 0.001;
        let bs = BlockStructure::new(&[(n, 1)]).unwrap();
        let spec = ChannelSpec::new(3, bs, &[rho]).unwrap();
        let c = vec![0u32; n as usize];
        let r = transmit(&c, &spec, &mut ChaCha12Rng::seed_from_u64(7)).unwrap();
        let flips = r.iter().filter(|&&x| x != 0).count() as f64;
        let mean = n as f64 * rho;
        let sigma = (n as f64 * rho * (1.0 - rho)).sqrt();
        assert!((flips - mean).abs() < 5.0 * sigma, "flips = {flips}");
    }

    #[test]
    fn binary_flips_are_complements() {
        let bs = BlockStructure::new(&[(1000, 1)]).unwrap();
        let spec = ChannelSpec::new(2, bs, &[0.4]).unwrap();
        let c = vec![1u32; 1000];
        let r = transmit(&c, &spec, &mut ChaCha12Rng::seed_from_u64(3)).unwrap();
        let flips = r.iter().filter(|&&x| x == 0).count();
        assert!(flips > 100, "expected many flips, got {flips}");
        assert!(r.iter().all(|&x| x < 2));
    }

    #[test]
    fn ml_decode_returns_the_sent_word_when_error_free() {
        let code = example_one_code();
        let spec = example_one_channel();
        let c = code.encode(&[1, 0, 1, 1]).unwrap();
        let set = ml_decode(&code, &c, &spec, &Budgets::default()).unwrap();
        assert_eq!(set, vec![c]);
    }

    #[test]
    fn ml_decode_corrects_a_single_block_one_error() {
        let code = example_one_code();
        let spec = example_one_channel();
        let c = code.encode(&[0, 1, 1, 0]).unwrap();
        let mut r = c.clone();
        r[2] ^= 1;
        let set = ml_decode(&code, &r, &spec, &Budgets::default()).unwrap();
        assert_eq!(set, vec![c]);
    }

    #[test]
    fn equidistant_reception_returns_a_tie_set() {
        let g = Matrix::from_rows(vec![vec![1, 1]]).unwrap();
        let bs = BlockStructure::new(&[(2, 1)]).unwrap();
        let code = LinearCode::from_generator(Field::new(2).unwrap(), bs.clone(), &g).unwrap();
        let spec = ChannelSpec::new(2, bs, &[0.1]).unwrap();
        let set = ml_decode(&code, &[0, 1], &spec, &Budgets::default()).unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn wh_decode_prefers_distance_zero() {
        let g = Matrix::from_rows(vec![
            vec![0, 0, 0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 1],
        ])
        .unwrap();
        let bs = bs2((4, 2), (4, 7));
        let code = LinearCode::from_generator(Field::new(2).unwrap(), bs, &g).unwrap();
        let r = vec![0, 0, 0, 0, 1, 1, 0, 0];
        let set = wh_decode(&code, &r, &[2.0, 7.0], &Budgets::default()).unwrap();
        assert_eq!(set, vec![r.clone()]);
    }

    #[test]
    fn wh_decode_validates_weights() {
        let code = example_one_code();
        assert!(wh_decode(&code, &[0; 8], &[1.0], &Budgets::default()).is_err());
        assert!(wh_decode(&code, &[0; 8], &[1.0, 0.0], &Budgets::default()).is_err());
    }

    #[test]
    fn ml_and_real_weight_decoding_agree_on_random_words() {
        let code = example_one_code();
        let spec = example_one_channel();
        let weights = spec.real_weights();
        let budgets = Budgets::default();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let r: Vec<u32> = (0..8).map(|_| rng.random_range(0..2)).collect();
            let ml = ml_decode(&code, &r, &spec, &budgets).unwrap();
            let wh = wh_decode(&code, &r, &weights, &budgets).unwrap();
            assert_eq!(ml, wh, "r = {r:?}");
        }
    }

    #[test]
    fn exact_tie_between_blocks_is_kept_by_both_decoders() {
        // (1,1,0,0, 1,1,0,0) is a codeword with two errors' worth of
        // distance in each block; receiving exactly half of it leaves the
        // zero word and that codeword at identical per-block error counts,
        // so both decoders must keep the full tie set.
        let code = example_one_code();
        let spec = example_one_channel();
        let w = vec![1, 1, 0, 0, 1, 1, 0, 0];
        assert!(code.contains(&w).unwrap());
        let r = vec![1, 0, 0, 0, 1, 0, 0, 0];
        let budgets = Budgets::default();
        let ml = ml_decode(&code, &r, &spec, &budgets).unwrap();
        assert!(ml.len() >= 2, "expected a tie, got {ml:?}");
        assert!(ml.contains(&vec![0; 8]) && ml.contains(&w));
        let wh = wh_decode(&code, &r, &spec.real_weights(), &budgets).unwrap();
        assert_eq!(ml, wh);
    }

    #[test]
    fn coverage_holds_at_the_example_threshold() {
        let code = example_one_code();
        let spec = example_one_channel();
        let (holds, witness) = coverage_check(&code, &spec, 0.011, &Budgets::default()).unwrap();
        assert!(holds);
        assert!(witness.is_none());
    }

    #[test]
    fn coverage_fails_at_a_lower_threshold_with_a_heavy_witness() {
        let code = example_one_code();
        let spec = example_one_channel();
        let (holds, witness) = coverage_check(&code, &spec, 0.001, &Budgets::default()).unwrap();
        assert!(!holds);
        let w = witness.unwrap();
        assert!(wh_weight(code.bs(), &w).unwrap() >= 3);
        assert!(pattern_probability(&w, &spec).unwrap() >= 0.001);
    }

    #[test]
    fn coverage_is_vacuous_at_threshold_one() {
        let code = example_one_code();
        let spec = example_one_channel();
        let (holds, witness) = coverage_check(&code, &spec, 1.0, &Budgets::default()).unwrap();
        assert!(holds);
        assert!(witness.is_none());
    }

    #[test]
    fn simulate_is_deterministic_per_seed() {
        let code = example_one_code();
        let spec = example_one_channel();
        let budgets = Budgets::default();
        let a = simulate(&code, &spec, Decoder::WhInteger, 500, 42, &budgets).unwrap();
        let b = simulate(&code, &spec, Decoder::WhInteger, 500, 42, &budgets).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trials, 500);
        assert_eq!(a.seed, 42);
        let correct = a.trials - a.word_errors - a.decode_failures;
        assert_eq!(correct + a.word_errors + a.decode_failures, a.trials);
    }

    #[test]
    fn simulate_with_zero_trials_reports_zeroes() {
        let code = example_one_code();
        let spec = example_one_channel();
        let stats = simulate(&code, &spec, Decoder::Ml, 0, 1, &Budgets::default()).unwrap();
        assert_eq!(stats.word_errors, 0);
        assert_eq!(stats.decode_failures, 0);
        assert_eq!(stats.empirical_wer, 0.0);
        assert_eq!(stats.per_block_symbol_error_rate, vec![0.0, 0.0]);
    }

    /// Exact word-error rate of the integer-weight decoder on a linear
    /// code: sum P(e) over all patterns whose argmin set is not exactly
    /// the zero word.
    fn exact_wer(code: &LinearCode, spec: &ChannelSpec, weights: &[f64]) -> f64 {
        let q = spec.q();
        let n = code.n();
        let budgets = Budgets::default();
        let mut wer = 0.0;
        let mut e = vec![0u32; n];
        loop {
            let set = wh_decode(code, &e, weights, &budgets).unwrap();
            if set.len() != 1 || set[0] != vec![0; n] {
                wer += pattern_probability(&e, spec).unwrap();
            }
            let mut i = 0;
            while i < n {
                e[i] += 1;
                if e[i] < q {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        wer
    }

    #[test]
    fn empirical_wer_matches_the_exact_coset_computation() {
        let code = example_one_code();
        let spec = example_one_channel();
        let exact = exact_wer(&code, &spec, &[1.0, 2.0]);
        let trials = 100_000;
        let stats =
            simulate(&code, &spec, Decoder::WhInteger, trials, 20_260_822, &Budgets::default())
                .unwrap();
        let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!(
            (stats.empirical_wer - exact).abs() < 3.0 * sigma,
            "empirical {} vs exact {exact} (sigma {sigma})",
            stats.empirical_wer
        );
    }

    #[test]
    fn per_block_error_rates_stay_within_five_sigma() {
        let code = example_one_code();
        let spec = example_one_channel();
        let trials = 20_000u64;
        let stats =
            simulate(&code, &spec, Decoder::WhInteger, trials, 5, &Budgets::default()).unwrap();
        for (l, (&rho, &nl)) in spec.rhos().iter().zip(spec.bs().lengths()).enumerate() {
            let draws = (trials * nl as u64) as f64;
            let sigma = (rho * (1.0 - rho) / draws).sqrt();
            let observed = stats.per_block_symbol_error_rate[l];
            assert!((observed - rho).abs() < 5.0 * sigma, "block {l}: {observed}");
        }
    }

    #[test]
    fn guaranteed_weight_patterns_always_decode_in_simulation() {
        let code = example_one_code();
        let spec = example_one_channel();
        let budgets = Budgets::default();
        let f = code.field();
        for t in 0..2000u64 {
            let mut rng = ChaCha12Rng::seed_from_u64(77);
            rng.set_stream(t);
            let msg: Vec<u32> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
            let c = code.encode(&msg).unwrap();
            let r = transmit(&c, &spec, &mut rng).unwrap();
            let e: Vec<u32> = r.iter().zip(&c).map(|(&a, &b)| f.sub(a, b)).collect();
            if wh_weight(code.bs(), &e).unwrap() <= 2 {
                let set = wh_decode(&code, &r, &[1.0, 2.0], &budgets).unwrap();
                assert_eq!(set, vec![c]);
            }
        }
    }

    #[test]
    fn gv_experiment_trivial_targets() {
        let bs = bs2((4, 1), (4, 2));
        let f = Field::new(2).unwrap();
        let budgets = Budgets::default();
        let easy = gv_experiment(f, &bs, 1, 1, 20, 1, &budgets).unwrap();
        assert_eq!(easy.fraction, 1.0);
        let impossible = gv_experiment(f, &bs, 3, bs.max_weight() + 1, 20, 1, &budgets).unwrap();
        assert_eq!(impossible.fraction, 0.0);
        assert_eq!(impossible.distances.len(), 20);
    }

    #[test]
    fn gv_experiment_finds_distance_5_codes_at_dimension_6() {
        let bs = bs2((7, 1), (7, 2));
        let f = Field::new(2).unwrap();
        let out = gv_experiment(f, &bs, 6, 5, 200, 2026, &Budgets::default()).unwrap();
        assert!(out.successes >= 1, "no random [14, 6] code reached d = 5");
        assert_eq!(out.distances.len(), 200);
        let check = gv_experiment(f, &bs, 6, 5, 200, 2026, &Budgets::default()).unwrap();
        assert_eq!(out, check);
    }

    #[test]
    fn decoder_names_round_trip() {
        for d in [Decoder::Ml, Decoder::WhReal, Decoder::WhInteger] {
            assert_eq!(d.to_string().parse::<Decoder>().unwrap(), d);
        }
        assert!("viterbi".parse::<Decoder>().is_err());
    }

    #[test]
    fn derived_code_min_distance_is_consistent() {
        let code = example_one_code();
        let d = code
            .min_wh_distance(MinDistanceMethod::Codebook, &Budgets::default())
            .unwrap()
            .d;
        assert_eq!(d, 5);
    }
}
