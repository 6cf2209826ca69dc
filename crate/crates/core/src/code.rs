//! Linear codes over prime fields, analyzed under the weighted-Hamming
//! metric.
//!
//! A [`LinearCode`] stores both a generator and a parity-check matrix, each
//! kept in reduced row echelon form so that equal codes compare equal.
//! Exhaustive operations (codeword enumeration, the tau oracle) are guarded
//! by explicit [`Budgets`] rather than wall-clock limits, so behaviour is
//! deterministic across machines.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::ball::lambda_set;
use crate::error::{Error, Result};
use crate::field::{Field, Matrix};
use crate::metric::{t_weight, wh_distance, wh_weight, BlockStructure, TWeight};

/// Enumeration budgets, counted in vectors visited.
///
/// `codewords` bounds q^k enumerations of the code itself; `ambient` bounds
/// enumerations of the surrounding space (the tau oracle, support
/// enumeration candidates).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub codewords: u128,
    pub ambient: u128,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { codewords: 1 << 24, ambient: 1 << 20 }
    }
}

fn pow_checked(q: u32, k: usize) -> Option<u128> {
    let mut acc = 1u128;
    for _ in 0..k {
        acc = acc.checked_mul(q as u128)?;
    }
    Some(acc)
}

fn check_budget(q: u32, k: usize, budget: u128) -> Result<()> {
    match pow_checked(q, k) {
        Some(v) if v <= budget => Ok(()),
        Some(v) => Err(Error::BudgetExceeded { needed: v, budget }),
        None => Err(Error::BudgetExceeded { needed: u128::MAX, budget }),
    }
}

/// Method selector for [`LinearCode::min_wh_distance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinDistanceMethod {
    /// Codebook when q^k fits the codeword budget, support enumeration
    /// otherwise.
    Auto,
    /// Enumerate all q^k codewords.
    Codebook,
    /// Enumerate low-weight candidate vectors in ascending weighted weight
    /// and test them against the parity-check matrix.
    SupportEnum,
}

/// A minimum distance together with a codeword attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinDistance {
    pub d: u64,
    pub witness: Vec<u32>,
}

/// T-weight distribution of a code: how many codewords have each tuple of
/// per-block Hamming weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TWeightEnumerator {
    pub q: u32,
    pub bs: BlockStructure,
    counts: BTreeMap<TWeight, BigUint>,
}

impl TWeightEnumerator {
    pub fn new(q: u32, bs: BlockStructure) -> Self {
        TWeightEnumerator { q, bs, counts: BTreeMap::new() }
    }

    pub fn add(&mut self, w: TWeight, count: BigUint) {
        *self.counts.entry(w).or_default() += count;
    }

    pub fn get(&self, w: &TWeight) -> BigUint {
        self.counts.get(w).cloned().unwrap_or_default()
    }

    /// Entries with nonzero count, in ascending lexicographic T-weight order.
    pub fn iter(&self) -> impl Iterator<Item = (&TWeight, &BigUint)> {
        self.counts.iter()
    }

    /// Total number of codewords counted.
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Smallest weighted weight of a nonzero entry, if any.
    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.counts
            .iter()
            .filter(|(w, _)| w.hamming() > 0)
            .map(|(w, _)| w.weighted(&self.bs))
            .min()
    }
}

/// A linear [n, k] code over F_q with a block structure attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    bs: BlockStructure,
    generator: Matrix,
    parity_check: Matrix,
}

impl LinearCode {
    /// Builds a code from (any spanning set of) generator rows. The rows are
    /// reduced to a canonical full-rank basis; `ZeroCode` if they span
    /// nothing.
    pub fn from_generator(field: Field, bs: BlockStructure, g: &Matrix) -> Result<Self> {
        if g.cols() != bs.n() {
            return Err(Error::LengthMismatch { expected: bs.n(), got: g.cols() });
        }
        validate_entries(field, g)?;
        let generator = g.row_basis(&field);
        if generator.rows() == 0 {
            return Err(Error::ZeroCode);
        }
        let parity_check = generator.kernel_basis(&field).row_basis(&field);
        Ok(LinearCode { field, bs, generator, parity_check })
    }

    /// Builds a code as the kernel of a parity-check matrix. `ZeroCode` if
    /// the kernel is trivial.
    pub fn from_parity_check(field: Field, bs: BlockStructure, h: &Matrix) -> Result<Self> {
        if h.cols() != bs.n() {
            return Err(Error::LengthMismatch { expected: bs.n(), got: h.cols() });
        }
        validate_entries(field, h)?;
        let generator = h.kernel_basis(&field).row_basis(&field);
        if generator.rows() == 0 {
            return Err(Error::ZeroCode);
        }
        let parity_check = h.row_basis(&field);
        Ok(LinearCode { field, bs, generator, parity_check })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn bs(&self) -> &BlockStructure {
        &self.bs
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity_check
    }

    /// Encodes a message of length k.
    pub fn encode(&self, msg: &[u32]) -> Result<Vec<u32>> {
        self.generator.vec_mul(msg, &self.field)
    }

    /// Syndrome of a received word (length n - k).
    pub fn syndrome(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.parity_check.mul_vec(v, &self.field)
    }

    /// Whether `v` is a codeword.
    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        Ok(self.syndrome(v)?.iter().all(|&s| s == 0))
    }

    /// The dual code (same block structure). `ZeroCode` when k = n.
    pub fn dual(&self) -> Result<LinearCode> {
        if self.parity_check.rows() == 0 {
            return Err(Error::ZeroCode);
        }
        Ok(LinearCode {
            field: self.field,
            bs: self.bs.clone(),
            generator: self.parity_check.clone(),
            parity_check: self.generator.clone(),
        })
    }

    /// Iterates over all q^k codewords, in lexicographic order of the
    /// message vector (first message symbol most significant).
    pub fn enumerate_codewords(&self, budgets: &Budgets) -> Result<CodewordIter<'_>> {
        check_budget(self.q(), self.k(), budgets.codewords)?;
        Ok(CodewordIter {
            field: self.field,
            gen: &self.generator,
            digits: vec![0; self.k()],
            current: vec![0; self.n()],
            started: false,
            done: false,
        })
    }

    /// All codewords collected into a vector.
    pub fn codewords(&self, budgets: &Budgets) -> Result<Vec<Vec<u32>>> {
        Ok(self.enumerate_codewords(budgets)?.collect())
    }

    /// Minimum weighted-Hamming distance (= minimum nonzero weight) and a
    /// witness codeword attaining it.
    pub fn min_wh_distance(
        &self,
        method: MinDistanceMethod,
        budgets: &Budgets,
    ) -> Result<MinDistance> {
        match method {
            MinDistanceMethod::Codebook => self.min_distance_codebook(budgets),
            MinDistanceMethod::SupportEnum => self.min_distance_support(budgets),
            MinDistanceMethod::Auto => {
                let fits = pow_checked(self.q(), self.k())
                    .is_some_and(|v| v <= budgets.codewords);
                if fits {
                    self.min_distance_codebook(budgets)
                } else {
                    self.min_distance_support(budgets)
                }
            }
        }
    }

    fn min_distance_codebook(&self, budgets: &Budgets) -> Result<MinDistance> {
        let mut best: Option<MinDistance> = None;
        for c in self.enumerate_codewords(budgets)? {
            let w = wh_weight(&self.bs, &c)?;
            if w == 0 {
                continue;
            }
            if best.as_ref().is_none_or(|b| w < b.d) {
                best = Some(MinDistance { d: w, witness: c });
            }
        }
        Ok(best.expect("code has a nonzero codeword"))
    }

    fn min_distance_support(&self, budgets: &Budgets) -> Result<MinDistance> {
        let mut work = 0u128;
        for t in 1..=self.bs.max_weight() {
            for w in lambda_set(&self.bs, t) {
                if let Some(v) = self.find_codeword_of_t_weight(&w, budgets, &mut work)? {
                    return Ok(MinDistance { d: t, witness: v });
                }
            }
        }
        unreachable!("code has a nonzero codeword of weight at most M")
    }

    /// Searches for a codeword with the exact T-weight `w`, enumerating
    /// supports block by block (positions ascending) and nonzero values in
    /// ascending order. Returns the first hit.
    fn find_codeword_of_t_weight(
        &self,
        w: &TWeight,
        budgets: &Budgets,
        work: &mut u128,
    ) -> Result<Option<Vec<u32>>> {
        let positions: Vec<Vec<usize>> = self
            .bs
            .ranges()
            .into_iter()
            .map(|r| r.collect())
            .collect();
        let mut chosen: Vec<usize> = Vec::new();
        self.search_supports(w, 0, &positions, &mut chosen, budgets, work)
    }

    fn search_supports(
        &self,
        w: &TWeight,
        block: usize,
        positions: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        budgets: &Budgets,
        work: &mut u128,
    ) -> Result<Option<Vec<u32>>> {
        if block == w.0.len() {
            return self.search_values(chosen, budgets, work);
        }
        let wl = w.0[block] as usize;
        let pool = &positions[block];
        let mut combo: Vec<usize> = (0..wl).collect();
        if wl > pool.len() {
            return Ok(None);
        }
        loop {
            let depth = chosen.len();
            chosen.extend(combo.iter().map(|&i| pool[i]));
            let hit = self.search_supports(w, block + 1, positions, chosen, budgets, work)?;
            chosen.truncate(depth);
            if hit.is_some() {
                return Ok(hit);
            }
            // advance the combination lexicographically
            let mut i = wl;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                if combo[i] < pool.len() - (wl - i) {
                    combo[i] += 1;
                    for j in i + 1..wl {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn search_values(
        &self,
        support: &[usize],
        budgets: &Budgets,
        work: &mut u128,
    ) -> Result<Option<Vec<u32>>> {
        let q = self.q();
        let h = &self.parity_check;
        let mut values = vec![1u32; support.len()];
        loop {
            *work += 1;
            if *work > budgets.ambient {
                return Err(Error::BudgetExceeded { needed: *work, budget: budgets.ambient });
            }
            let mut ok = true;
            for r in 0..h.rows() {
                let mut acc = 0u64;
                for (&pos, &val) in support.iter().zip(&values) {
                    acc += h.get(r, pos) as u64 * val as u64;
                }
                if !acc.is_multiple_of(q as u64) {
                    ok = false;
                    break;
                }
            }
            if ok {
                let mut v = vec![0u32; self.n()];
                for (&pos, &val) in support.iter().zip(&values) {
                    v[pos] = val;
                }
                return Ok(Some(v));
            }
            // odometer over nonzero values, last position fastest
            let mut i = values.len();
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                values[i] += 1;
                if values[i] < q {
                    break;
                }
                values[i] = 1;
            }
        }
    }

    /// T-weight distribution over all codewords.
    pub fn t_weight_enumerator(&self, budgets: &Budgets) -> Result<TWeightEnumerator> {
        let mut enumerator = TWeightEnumerator::new(self.q(), self.bs.clone());
        for c in self.enumerate_codewords(budgets)? {
            enumerator.add(t_weight(&self.bs, &c)?, BigUint::one());
        }
        Ok(enumerator)
    }

    /// Guaranteed correction radius: the largest t such that every error of
    /// weighted weight <= t is corrected by minimum-distance decoding
    /// regardless of tie-breaking.
    ///
    /// Per nonzero codeword c with weight W, a received word splitting c's
    /// support realizes every subset sum s of the multiset that repeats
    /// lambda_l exactly w_l(c) times, costing max(s, W - s); other received
    /// words are never better. tau is one below the minimum cost.
    pub fn tau(&self, budgets: &Budgets) -> Result<u64> {
        let mut best: Option<u64> = None;
        for c in self.enumerate_codewords(budgets)? {
            let tw = t_weight(&self.bs, &c)?;
            if tw.hamming() == 0 {
                continue;
            }
            let total = tw.weighted(&self.bs) as usize;
            let mut reach = vec![false; total + 1];
            reach[0] = true;
            for (&wl, &lambda) in tw.0.iter().zip(self.bs.scalings()) {
                let lambda = lambda as usize;
                for _ in 0..wl {
                    for s in (0..=total - lambda).rev() {
                        if reach[s] {
                            reach[s + lambda] = true;
                        }
                    }
                }
            }
            let inner = reach
                .iter()
                .enumerate()
                .filter(|(_, &r)| r)
                .map(|(s, _)| s.max(total - s) as u64)
                .min()
                .expect("0 is always reachable");
            if best.is_none_or(|b| inner < b) {
                best = Some(inner);
            }
        }
        Ok(best.expect("code has a nonzero codeword") - 1)
    }

    /// Literal evaluation of the correction-radius definition: minimizes
    /// max(wt(r), wt(c - r)) - 1 over all nonzero codewords c and all q^n
    /// received words r. Exponential; guarded by the ambient budget.
    pub fn tau_oracle(&self, budgets: &Budgets) -> Result<u64> {
        check_budget(self.q(), self.n(), budgets.ambient)?;
        let codewords = self.codewords(budgets)?;
        let q = self.q();
        let n = self.n();
        let mut best = u64::MAX;
        let mut r = vec![0u32; n];
        loop {
            let wr = wh_weight(&self.bs, &r)?;
            for c in &codewords {
                if c.iter().all(|&x| x == 0) {
                    continue;
                }
                let diff: Vec<u32> = c
                    .iter()
                    .zip(&r)
                    .map(|(&a, &b)| self.field.sub(a, b))
                    .collect();
                let wc = wh_weight(&self.bs, &diff)?;
                best = best.min(wr.max(wc));
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(best - 1);
                }
                i -= 1;
                r[i] += 1;
                if r[i] < q {
                    break;
                }
                r[i] = 0;
            }
        }
    }
}

/// Iterator over all codewords; see [`LinearCode::enumerate_codewords`].
pub struct CodewordIter<'a> {
    field: Field,
    gen: &'a Matrix,
    digits: Vec<u32>,
    current: Vec<u32>,
    started: bool,
    done: bool,
}

impl Iterator for CodewordIter<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        let q = self.field.q();
        let mut j = self.digits.len();
        loop {
            if j == 0 {
                self.done = true;
                return None;
            }
            j -= 1;
            // One row addition covers a bump as well as a wrap of digit j,
            // because -(q-1) = 1 mod q.
            self.digits[j] += 1;
            for (cur, &g) in self.current.iter_mut().zip(self.gen.row(j)) {
                *cur = self.field.add(*cur, g);
            }
            if self.digits[j] < q {
                break;
            }
            self.digits[j] = 0;
        }
        Some(self.current.clone())
    }
}

fn validate_entries(field: Field, m: &Matrix) -> Result<()> {
    for r in 0..m.rows() {
        for &x in m.row(r) {
            if x >= field.q() {
                return Err(Error::InvalidParameter(format!(
                    "matrix entry {x} not reduced mod {}",
                    field.q()
                )));
            }
        }
    }
    Ok(())
}

/// Samples a random [n, k] code by drawing generator entries uniformly and
/// resampling until the rows are independent. Returns the code and the
/// number of resamples that were needed.
pub fn random_code(
    field: Field,
    bs: &BlockStructure,
    k: usize,
    seed: u64,
) -> Result<(LinearCode, u32)> {
    let n = bs.n();
    if k == 0 {
        return Err(Error::ZeroCode);
    }
    if k > n {
        return Err(Error::InvalidDimension { k, min: 1, max: n });
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut retries = 0u32;
    loop {
        let mut g = Matrix::zero(k, n);
        for r in 0..k {
            for c in 0..n {
                g.set(r, c, rng.random_range(0..field.q()));
            }
        }
        if g.rank(&field) == k {
            let code = LinearCode::from_generator(field, bs.clone(), &g)?;
            return Ok((code, retries));
        }
        retries += 1;
        if retries > 1000 {
            return Err(Error::InvalidParameter(
                "could not sample a full-rank generator".into(),
            ));
        }
    }
}

/// Minimum weighted-Hamming distance between distinct codewords, computed
/// naively over all pairs. Test oracle for the linearity shortcut.
pub fn pairwise_min_distance(code: &LinearCode, budgets: &Budgets) -> Result<u64> {
    let words = code.codewords(budgets)?;
    let mut best = u64::MAX;
    for (i, x) in words.iter().enumerate() {
        for y in words.iter().skip(i + 1) {
            best = best.min(wh_distance(code.bs(), x, y)?);
        }
    }
    Ok(best)
}
