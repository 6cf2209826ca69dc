//! Dimension bounds for codes under the weighted-Hamming metric.
//!
//! All five bounds are exact: integer arithmetic throughout, with the
//! linear-programming bound solved by an exact-rational simplex over the
//! T-weight MacWilliams constraints. `k` values are the largest (for upper
//! bounds) or smallest (for the Gilbert-Varshamov bound) integer dimensions
//! compatible with the underlying counting statement; no floating point is
//! involved anywhere.

pub mod simplex;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ball::ball_size;
use crate::code::TWeightEnumerator;
use crate::error::{Error, Result};
use crate::metric::{BlockStructure, TWeight};
use simplex::{maximize, Outcome, StandardLp};

/// Upper limit on the T-weight grid handled by the LP and MacWilliams
/// transforms; keeps worst-case work clearly bounded.
const MAX_GRID: usize = 4096;

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {q} must be >= 2")));
    }
    Ok(())
}

fn check_d(d: u64, max: u64) -> Result<()> {
    if d < 1 || d > max {
        return Err(Error::InvalidDistance { d, min: 1, max });
    }
    Ok(())
}

/// Blocks sorted by ascending scaling, equal scalings merged. Only the
/// Singleton-type computations care about block order, and for those equal
/// scalings are interchangeable.
fn sorted_merged(bs: &BlockStructure) -> Vec<(u64, u64)> {
    let mut pairs: Vec<(u64, u64)> = bs
        .scalings()
        .iter()
        .zip(bs.lengths())
        .map(|(&l, &n)| (l, n as u64))
        .collect();
    pairs.sort_by_key(|p| p.0);
    let mut merged: Vec<(u64, u64)> = Vec::new();
    for (l, n) in pairs {
        match merged.last_mut() {
            Some(last) if last.0 == l => last.1 += n,
            _ => merged.push((l, n)),
        }
    }
    merged
}

/// Singleton-type bound: the largest dimension k such that deleting the
/// d - 1 cheapest weighted coordinates cannot identify two codewords.
pub fn singleton_bound(bs: &BlockStructure, d: u64) -> Result<u64> {
    check_d(d, bs.max_weight())?;
    let blocks = sorted_merged(bs);
    let total_n: u64 = blocks.iter().map(|b| b.1).sum();
    let mut spent = 0u64;
    let mut consumed = 0u64;
    let mut idx = 0usize;
    while idx + 1 < blocks.len() && spent + blocks[idx].0 * blocks[idx].1 < d {
        spent += blocks[idx].0 * blocks[idx].1;
        consumed += blocks[idx].1;
        idx += 1;
    }
    Ok(total_n - consumed - (d - 1 - spent) / blocks[idx].0)
}

/// Weighted distance attained by a code meeting the Singleton-type bound
/// with equality: the n - k + 1 cheapest coordinates, fully weighted.
pub fn mds_wh_distance(bs: &BlockStructure, k: usize) -> Result<u64> {
    let n = bs.n();
    if k < 1 || k > n {
        return Err(Error::InvalidDimension { k, min: 1, max: n });
    }
    let blocks = sorted_merged(bs);
    let mut left = (n - k + 1) as u64;
    let mut d = 0u64;
    for (lambda, nl) in blocks {
        if left <= nl {
            d += lambda * left;
            return Ok(d);
        }
        d += lambda * nl;
        left -= nl;
    }
    unreachable!("budget n - k + 1 never exceeds n")
}

fn pow_biguint(q: u32, e: usize) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// Largest k >= 0 with q^k <= x (x >= 1).
fn floor_log_q(q: u32, x: &BigUint) -> u64 {
    debug_assert!(!x.is_zero());
    let q = BigUint::from(q);
    let mut acc = BigUint::one();
    let mut k = 0u64;
    while &acc * &q <= *x {
        acc *= &q;
        k += 1;
    }
    k
}

/// Smallest k >= 0 with q^k >= x (x >= 1).
fn ceil_log_q(q: u32, x: &BigUint) -> u64 {
    debug_assert!(!x.is_zero());
    let q = BigUint::from(q);
    let mut acc = BigUint::one();
    let mut k = 0u64;
    while acc < *x {
        acc *= &q;
        k += 1;
    }
    k
}

/// Sphere-packing bound: the largest k with q^k * |B((d-1)/2)| <= q^n.
pub fn hamming_bound(q: u32, bs: &BlockStructure, d: u64) -> Result<u64> {
    check_q(q)?;
    check_d(d, bs.max_weight() + 1)?;
    let ball = ball_size(q, bs, (d - 1) / 2)?;
    let qn = pow_biguint(q, bs.n());
    Ok(floor_log_q(q, &(qn / ball)))
}

/// Gilbert-Varshamov bound: the smallest k with q^k * |B(d-1)| >= q^n.
/// A linear code of that dimension and minimum weighted distance >= d exists.
pub fn gv_bound(q: u32, bs: &BlockStructure, d: u64) -> Result<u64> {
    check_q(q)?;
    check_d(d, bs.max_weight())?;
    let ball = ball_size(q, bs, d - 1)?;
    let qn = pow_biguint(q, bs.n());
    Ok(ceil_log_q(q, &qn.div_ceil(&ball)))
}

/// Plotkin-type bound. Applies only when qd > (q-1)M; then
/// |C| <= qd / (qd - (q-1)M) and k is the floor log. `None` when the
/// premise fails.
pub fn plotkin_bound(q: u32, bs: &BlockStructure, d: u64) -> Result<Option<u64>> {
    check_q(q)?;
    check_d(d, bs.max_weight())?;
    let m = BigUint::from(bs.max_weight());
    let qd = BigUint::from(q) * BigUint::from(d);
    let qm1_m = BigUint::from(q - 1) * &m;
    if qd <= qm1_m {
        return Ok(None);
    }
    let den = &qd - &qm1_m;
    // largest k with q^k <= qd / den, i.e. q^k * den <= qd
    let q_big = BigUint::from(q);
    let mut acc = BigUint::one();
    let mut k = 0u64;
    while &acc * &q_big * &den <= qd {
        acc *= &q_big;
        k += 1;
    }
    Ok(Some(k))
}

/// The q-ary Krawtchouk polynomial value
/// K_j(i) = sum_s (-1)^s (q-1)^(j-s) C(i, s) C(n-i, j-s).
pub fn krawtchouk(q: u32, n: u32, j: u32, i: u32) -> Result<BigInt> {
    check_q(q)?;
    if j > n || i > n {
        return Err(Error::InvalidParameter(format!(
            "krawtchouk indices j={j}, i={i} must not exceed n={n}"
        )));
    }
    let mut acc = BigInt::zero();
    for s in 0..=j.min(i) {
        if j - s > n - i {
            continue;
        }
        let c1: BigInt = num_integer::binomial(BigUint::from(i), BigUint::from(s)).into();
        let c2: BigInt =
            num_integer::binomial(BigUint::from(n - i), BigUint::from(j - s)).into();
        let p: BigInt = BigUint::from(q - 1).pow(j - s).into();
        let term = c1 * c2 * p;
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// All T-weight tuples with w_l <= n_l, ascending lexicographic.
fn full_grid(bs: &BlockStructure) -> Result<Vec<TWeight>> {
    let mut size = 1usize;
    for &n in bs.lengths() {
        size = size.saturating_mul(n as usize + 1);
        if size > MAX_GRID {
            return Err(Error::InvalidParameter(format!(
                "T-weight grid exceeds {MAX_GRID} entries"
            )));
        }
    }
    let mut grid = Vec::with_capacity(size);
    let mut w = vec![0u32; bs.m()];
    loop {
        grid.push(TWeight(w.clone()));
        let mut i = bs.m();
        loop {
            if i == 0 {
                return Ok(grid);
            }
            i -= 1;
            w[i] += 1;
            if w[i] <= bs.lengths()[i] {
                break;
            }
            w[i] = 0;
        }
    }
}

/// Per-block Krawtchouk tables: tables[l][j][i] = K_j(i) for block l.
fn krawtchouk_tables(q: u32, bs: &BlockStructure) -> Result<Vec<Vec<Vec<BigInt>>>> {
    let mut tables = Vec::with_capacity(bs.m());
    for &n in bs.lengths() {
        let mut t = Vec::with_capacity(n as usize + 1);
        for j in 0..=n {
            let mut row = Vec::with_capacity(n as usize + 1);
            for i in 0..=n {
                row.push(krawtchouk(q, n, j, i)?);
            }
            t.push(row);
        }
        tables.push(t);
    }
    Ok(tables)
}

fn kraw_product(tables: &[Vec<Vec<BigInt>>], j: &TWeight, i: &TWeight) -> BigInt {
    let mut acc = BigInt::one();
    for (l, table) in tables.iter().enumerate() {
        acc *= &table[j.0[l] as usize][i.0[l] as usize];
    }
    acc
}

/// T-weight MacWilliams transform: the enumerator of the dual code,
/// A'_j = (1/|C|) sum_i prod_l K_{j_l}(i_l) A_i.
///
/// Errors with `NonIntegralTransform` if any coefficient comes out negative
/// or non-integral, which happens exactly when the input is not the
/// enumerator of a linear code.
pub fn macwilliams_transform(e: &TWeightEnumerator) -> Result<TWeightEnumerator> {
    check_q(e.q)?;
    let size: BigInt = e.total().into();
    if size.is_zero() {
        return Err(Error::InvalidParameter("enumerator counts nothing".into()));
    }
    let tables = krawtchouk_tables(e.q, &e.bs)?;
    let grid = full_grid(&e.bs)?;
    let mut out = TWeightEnumerator::new(e.q, e.bs.clone());
    for j in &grid {
        let mut sum = BigInt::zero();
        for (i, count) in e.iter() {
            sum += kraw_product(&tables, j, i) * BigInt::from(count.clone());
        }
        let (quot, rem) = sum.div_rem(&size);
        if !rem.is_zero() || quot.is_negative() {
            return Err(Error::NonIntegralTransform);
        }
        if !quot.is_zero() {
            out.add(j.clone(), quot.to_biguint().expect("nonnegative"));
        }
    }
    Ok(out)
}

/// Result of the linear-programming bound: the exact optimum of the
/// Delsarte program and the induced dimension bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LpBound {
    pub value: BigRational,
    pub k: u64,
}

/// Largest k with q^k <= v, for rational v >= 1.
fn floor_log_q_rational(q: u32, v: &BigRational) -> u64 {
    let num = v.numer().to_biguint().expect("value is positive");
    let den = v.denom().to_biguint().expect("canonical denominator");
    let q = BigUint::from(q);
    let mut acc = BigUint::one();
    let mut k = 0u64;
    while &acc * &q * &den <= num {
        acc *= &q;
        k += 1;
    }
    k
}

/// Delsarte linear-programming bound. Maximizes 1 + sum A_i over
/// nonnegative rational A indexed by T-weights, with A_i = 0 for weights in
/// [1, d-1] and all transformed coefficients nonnegative:
/// sum_i K_j(i) A_i >= -K_j(0) for every T-weight j.
pub fn lp_bound(q: u32, bs: &BlockStructure, d: u64) -> Result<LpBound> {
    check_q(q)?;
    check_d(d, bs.max_weight())?;
    let grid = full_grid(bs)?;
    let tables = krawtchouk_tables(q, bs)?;
    let free: Vec<usize> = (0..grid.len())
        .filter(|&i| grid[i].weighted(bs) >= d)
        .collect();

    let mut constraints = Vec::with_capacity(grid.len());
    let mut rhs = Vec::with_capacity(grid.len());
    for j in &grid {
        let mut row: Vec<BigInt> = Vec::with_capacity(free.len());
        for &fi in &free {
            row.push(-kraw_product(&tables, j, &grid[fi]));
        }
        let zero = TWeight(vec![0; bs.m()]);
        let b = kraw_product(&tables, j, &zero);
        // Scaling an inequality by a positive constant changes nothing, so
        // strip the common factor to keep the tableau coefficients small.
        let mut g = b.clone();
        for x in &row {
            g = g.gcd(x);
        }
        if g > BigInt::one() {
            for x in &mut row {
                *x /= &g;
            }
            rhs.push(BigRational::from(b / g));
        } else {
            rhs.push(BigRational::from(b));
        }
        constraints.push(row.into_iter().map(BigRational::from).collect());
    }
    let objective = vec![BigRational::one(); free.len()];
    let lp = StandardLp { objective, constraints, rhs };
    let value = match maximize(&lp) {
        Outcome::Optimal(sol) => BigRational::one() + sol.value,
        Outcome::Unbounded => {
            unreachable!("Delsarte program is bounded by q^n")
        }
    };
    debug_assert!(value <= BigRational::from(BigInt::from(pow_biguint(q, bs.n()))));
    let k = floor_log_q_rational(q, &value);
    Ok(LpBound { value, k })
}

/// One row of a bounds table.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub d: u64,
    pub singleton: u64,
    pub hamming: u64,
    pub gv: u64,
    pub plotkin: Option<u64>,
    pub lp: u64,
    pub lp_value: BigRational,
}

/// Computes all five bounds for every d in `[d_lo, d_hi]`.
pub fn bounds_table(
    q: u32,
    bs: &BlockStructure,
    d_lo: u64,
    d_hi: u64,
) -> Result<Vec<BoundReport>> {
    check_q(q)?;
    check_d(d_lo, bs.max_weight())?;
    check_d(d_hi, bs.max_weight())?;
    if d_lo > d_hi {
        return Err(Error::InvalidParameter(format!(
            "empty distance range {d_lo}..{d_hi}"
        )));
    }
    let mut out = Vec::with_capacity((d_hi - d_lo + 1) as usize);
    for d in d_lo..=d_hi {
        let lp = lp_bound(q, bs, d)?;
        out.push(BoundReport {
            d,
            singleton: singleton_bound(bs, d)?,
            hamming: hamming_bound(q, bs, d)?,
            gv: gv_bound(q, bs, d)?,
            plotkin: plotkin_bound(q, bs, d)?,
            lp: lp.k,
            lp_value: lp.value,
        });
    }
    Ok(out)
}

/// Renders an exact rational as `n` or `n/d`.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{Budgets, LinearCode};
    use crate::field::{Field, Matrix};

    fn bs(blocks: &[(u32, u64)]) -> BlockStructure {
        BlockStructure::new(blocks).unwrap()
    }

    fn figure_bs() -> BlockStructure {
        bs(&[(7, 1), (7, 2)])
    }

    #[test]
    fn singleton_values() {
        let b = figure_bs();
        assert_eq!(singleton_bound(&b, 1).unwrap(), 14);
        assert_eq!(singleton_bound(&b, 5).unwrap(), 10);
        assert_eq!(singleton_bound(&b, 7).unwrap(), 8);
        assert_eq!(singleton_bound(&b, 8).unwrap(), 7);
        assert_eq!(singleton_bound(&b, 9).unwrap(), 7);
        assert_eq!(singleton_bound(&b, 15).unwrap(), 4);
        assert_eq!(singleton_bound(&b, 20).unwrap(), 1);
        assert_eq!(singleton_bound(&b, 21).unwrap(), 1);
    }

    #[test]
    fn singleton_ignores_block_order() {
        let shuffled = bs(&[(7, 2), (7, 1)]);
        for d in 1..=21 {
            assert_eq!(
                singleton_bound(&shuffled, d).unwrap(),
                singleton_bound(&figure_bs(), d).unwrap(),
                "d={d}"
            );
        }
    }

    #[test]
    fn singleton_rejects_out_of_range() {
        let b = figure_bs();
        assert_eq!(
            singleton_bound(&b, 0),
            Err(Error::InvalidDistance { d: 0, min: 1, max: 21 })
        );
        assert_eq!(
            singleton_bound(&b, 22),
            Err(Error::InvalidDistance { d: 22, min: 1, max: 21 })
        );
    }

    #[test]
    fn mds_distances() {
        let b = figure_bs();
        assert_eq!(mds_wh_distance(&b, 10).unwrap(), 5);
        assert_eq!(mds_wh_distance(&b, 8).unwrap(), 7);
        assert_eq!(mds_wh_distance(&b, 4).unwrap(), 15);
        assert_eq!(mds_wh_distance(&b, 1).unwrap(), 21);
        assert_eq!(mds_wh_distance(&b, 14).unwrap(), 1);
        assert!(mds_wh_distance(&b, 0).is_err());
        assert!(mds_wh_distance(&b, 15).is_err());
    }

    #[test]
    fn mds_meets_singleton_with_equality() {
        let b = figure_bs();
        for k in 1..=14usize {
            let d = mds_wh_distance(&b, k).unwrap();
            assert_eq!(singleton_bound(&b, d).unwrap(), k as u64, "k={k}");
            if d < b.max_weight() {
                assert!(singleton_bound(&b, d + 1).unwrap() < k as u64, "k={k}");
            }
        }
    }

    #[test]
    fn hamming_values() {
        let b = figure_bs();
        assert_eq!(hamming_bound(2, &b, 1).unwrap(), 14);
        assert_eq!(hamming_bound(2, &b, 3).unwrap(), 11);
        assert_eq!(hamming_bound(2, &b, 5).unwrap(), 8);
        assert_eq!(hamming_bound(7, &b, 5).unwrap(), 10);
        assert_eq!(hamming_bound(7, &b, 21).unwrap(), 3);
        // d = M + 1 is allowed for packing purposes.
        assert!(hamming_bound(2, &b, 22).is_ok());
        assert!(hamming_bound(2, &b, 23).is_err());
    }

    #[test]
    fn gv_values() {
        let b = figure_bs();
        assert_eq!(gv_bound(2, &b, 1).unwrap(), 14);
        assert_eq!(gv_bound(2, &b, 2).unwrap(), 11);
        assert_eq!(gv_bound(2, &b, 5).unwrap(), 6);
        assert_eq!(gv_bound(7, &b, 5).unwrap(), 9);
        assert!(gv_bound(2, &b, 22).is_err());
    }

    #[test]
    fn plotkin_values() {
        let b = figure_bs();
        assert_eq!(plotkin_bound(2, &b, 10).unwrap(), None);
        assert_eq!(plotkin_bound(2, &b, 11).unwrap(), Some(4));
        assert_eq!(plotkin_bound(2, &b, 12).unwrap(), Some(3));
        assert_eq!(plotkin_bound(2, &b, 13).unwrap(), Some(2));
        assert_eq!(plotkin_bound(2, &b, 15).unwrap(), Some(1));
        assert_eq!(plotkin_bound(2, &b, 21).unwrap(), Some(1));
        assert_eq!(plotkin_bound(7, &b, 18).unwrap(), None);
        assert_eq!(plotkin_bound(7, &b, 19).unwrap(), Some(1));
        assert_eq!(plotkin_bound(7, &b, 21).unwrap(), Some(1));
    }

    #[test]
    fn krawtchouk_values() {
        assert_eq!(krawtchouk(2, 7, 0, 3).unwrap(), BigInt::from(1));
        assert_eq!(krawtchouk(2, 7, 1, 3).unwrap(), BigInt::from(1));
        assert_eq!(krawtchouk(2, 7, 2, 1).unwrap(), BigInt::from(9));
        // K_j(0) = C(n, j)(q-1)^j.
        assert_eq!(krawtchouk(7, 7, 3, 0).unwrap(), BigInt::from(35 * 216));
        assert!(krawtchouk(2, 7, 8, 0).is_err());
    }

    #[test]
    fn macwilliams_of_full_space_is_zero_code() {
        let f = Field::new(2).unwrap();
        let c = LinearCode::from_generator(f, bs(&[(2, 1)]), &Matrix::identity(2)).unwrap();
        let e = c.t_weight_enumerator(&Budgets::default()).unwrap();
        let dual = macwilliams_transform(&e).unwrap();
        assert_eq!(dual.iter().count(), 1);
        assert_eq!(dual.get(&TWeight(vec![0])), BigUint::one());
    }

    #[test]
    fn macwilliams_of_hamming_code_is_simplex() {
        let f = Field::new(2).unwrap();
        // [7, 4] Hamming code: parity positions by columns 1..7 in binary.
        let mut h = Matrix::zero(3, 7);
        for col in 1..=7u32 {
            for bit in 0..3 {
                h.set(bit, col as usize - 1, (col >> bit) & 1);
            }
        }
        let c = LinearCode::from_parity_check(f, bs(&[(7, 1)]), &h).unwrap();
        let e = c.t_weight_enumerator(&Budgets::default()).unwrap();
        assert_eq!(e.get(&TWeight(vec![3])), BigUint::from(7u32));
        let dual = macwilliams_transform(&e).unwrap();
        assert_eq!(dual.total(), BigUint::from(8u32));
        assert_eq!(dual.get(&TWeight(vec![0])), BigUint::one());
        assert_eq!(dual.get(&TWeight(vec![4])), BigUint::from(7u32));
    }

    #[test]
    fn macwilliams_matches_brute_forced_dual() {
        let f = Field::new(2).unwrap();
        let mut g = Matrix::zero(4, 8);
        for r in 0..4 {
            g.set(r, r, 1);
            for c in 0..4 {
                if c != r {
                    g.set(r, 4 + c, 1);
                }
            }
        }
        let c = LinearCode::from_generator(f, bs(&[(4, 1), (4, 2)]), &g).unwrap();
        let b = Budgets::default();
        let via_transform = macwilliams_transform(&c.t_weight_enumerator(&b).unwrap()).unwrap();
        let direct = c.dual().unwrap().t_weight_enumerator(&b).unwrap();
        assert_eq!(via_transform, direct);
    }

    #[test]
    fn macwilliams_is_an_involution() {
        let f = Field::new(3).unwrap();
        let g = Matrix::from_rows(vec![vec![1, 0, 1, 2, 0], vec![0, 1, 1, 1, 2]]).unwrap();
        let c = LinearCode::from_generator(f, bs(&[(3, 1), (2, 2)]), &g).unwrap();
        let e = c.t_weight_enumerator(&Budgets::default()).unwrap();
        let twice = macwilliams_transform(&macwilliams_transform(&e).unwrap()).unwrap();
        assert_eq!(twice, e);
    }

    #[test]
    fn macwilliams_rejects_non_code_enumerators() {
        let mut e = TWeightEnumerator::new(2, bs(&[(1, 1)]));
        e.add(TWeight(vec![0]), BigUint::one());
        e.add(TWeight(vec![1]), BigUint::from(2u32));
        assert_eq!(macwilliams_transform(&e), Err(Error::NonIntegralTransform));
    }

    #[test]
    fn lp_identity_at_d1() {
        let b = figure_bs();
        let lp = lp_bound(2, &b, 1).unwrap();
        assert_eq!(lp.value, BigRational::from(BigInt::from(16384)));
        assert_eq!(lp.k, 14);
    }

    #[test]
    fn lp_at_construction_distance() {
        let b = figure_bs();
        let lp2 = lp_bound(2, &b, 5).unwrap();
        assert_eq!(lp2.k, 8);
        let lp7 = lp_bound(7, &b, 5).unwrap();
        assert_eq!(lp7.k, 10);
    }

    #[test]
    fn bounds_table_shape() {
        let b = figure_bs();
        let table = bounds_table(2, &b, 10, 12).unwrap();
        assert_eq!(table.len(), 3);
        assert_eq!(table[0].d, 10);
        assert_eq!(table[0].plotkin, None);
        assert_eq!(table[1].plotkin, Some(4));
        assert_eq!(table[2].plotkin, Some(3));
        for row in &table {
            assert!(row.gv <= row.singleton);
            assert!(row.gv <= row.hamming);
            assert!(row.gv <= row.lp);
        }
        assert!(bounds_table(2, &b, 5, 4).is_err());
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(rational_string(&BigRational::from(BigInt::from(7))), "7");
        assert_eq!(
            rational_string(&BigRational::new(BigInt::from(22), BigInt::from(7))),
            "22/7"
        );
    }
}
