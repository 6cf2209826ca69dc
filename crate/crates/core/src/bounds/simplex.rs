//! Dense exact-rational simplex for small linear programs.
//!
//! Solves max c.x subject to Ax <= b, x >= 0 where every entry of b is
//! nonnegative, so the slack basis is an immediate basic feasible solution
//! and no phase-1 is needed. Entering columns follow Dantzig's rule; the
//! leaving row is picked by the lexicographic ratio test, which breaks
//! every degenerate tie deterministically and makes cycling impossible.
//! All arithmetic is exact.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A linear program in standard inequality form with nonnegative rhs.
#[derive(Debug, Clone)]
pub struct StandardLp {
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Vec<BigRational>>,
    pub rhs: Vec<BigRational>,
}

/// An optimal solution: the objective value and the variable assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub value: BigRational,
    pub vars: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Optimal(Solution),
    Unbounded,
}

/// Compares rows `a` and `b` scaled by their (positive) entries in the
/// entering column, in the lexicographic order (rhs, slacks, structurals).
/// Rows of a tableau are linearly independent, so two distinct rows never
/// compare equal and the ratio test has a unique winner.
fn lex_less(a: &[BigRational], b: &[BigRational], enter: usize, n: usize, m: usize) -> bool {
    let width = n + m + 1;
    let ae = &a[enter];
    let be = &b[enter];
    let order = std::iter::once(width - 1)
        .chain(n..n + m)
        .chain(0..n);
    for j in order {
        // a[j]/ae < b[j]/be without dividing.
        let left = &a[j] * be;
        let right = &b[j] * ae;
        if left != right {
            return left < right;
        }
    }
    false
}

/// Maximizes the program. Panics if shapes are inconsistent or some rhs is
/// negative; those are caller bugs, not data-dependent conditions.
pub fn maximize(lp: &StandardLp) -> Outcome {
    let n = lp.objective.len();
    let m = lp.constraints.len();
    assert_eq!(lp.rhs.len(), m, "one rhs per constraint");
    let width = n + m + 1;

    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, (row, b)) in lp.constraints.iter().zip(&lp.rhs).enumerate() {
        assert_eq!(row.len(), n, "constraint arity");
        assert!(!b.is_negative(), "rhs must be nonnegative");
        let mut r = vec![BigRational::zero(); width];
        r[..n].clone_from_slice(row);
        r[n + i] = BigRational::one();
        r[width - 1] = b.clone();
        tab.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut zrow = vec![BigRational::zero(); width];
    for (slot, obj) in zrow.iter_mut().zip(&lp.objective) {
        *slot = -obj.clone();
    }

    let mut pivots = 0usize;
    loop {
        let mut enter: Option<usize> = None;
        for j in 0..width - 1 {
            if zrow[j].is_negative() && enter.is_none_or(|e| zrow[j] < zrow[e]) {
                enter = Some(j);
            }
        }
        let Some(enter) = enter else {
            if std::env::var_os("WHAM_LP_STATS").is_some() {
                let bits = tab
                    .iter()
                    .flat_map(|r| r.iter())
                    .map(|x| x.numer().bits().max(x.denom().bits()))
                    .max()
                    .unwrap_or(0);
                eprintln!("lp stats: m={m} n={n} pivots={pivots} max_bits={bits}");
            }
            let mut vars = vec![BigRational::zero(); n];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < n {
                    vars[bv] = tab[i][width - 1].clone();
                }
            }
            return Outcome::Optimal(Solution { value: zrow[width - 1].clone(), vars });
        };

        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            match leave {
                None => leave = Some(i),
                Some(l) => {
                    if lex_less(&tab[i], &tab[l], enter, n, m) {
                        leave = Some(i);
                    }
                }
            }
        }
        let Some(leave) = leave else {
            return Outcome::Unbounded;
        };
        pivots += 1;

        let piv = tab[leave][enter].clone();
        for x in tab[leave].iter_mut() {
            if !x.is_zero() {
                *x /= piv.clone();
            }
        }
        let hot: Vec<usize> = (0..width).filter(|&j| !tab[leave][j].is_zero()).collect();
        for i in 0..m {
            if i == leave || tab[i][enter].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut tab[i][enter], BigRational::zero());
            for &j in &hot {
                if j == enter {
                    continue;
                }
                let delta = &factor * &tab[leave][j];
                tab[i][j] -= delta;
            }
        }
        if !zrow[enter].is_zero() {
            let factor = std::mem::replace(&mut zrow[enter], BigRational::zero());
            for &j in &hot {
                if j == enter {
                    continue;
                }
                let delta = &factor * &tab[leave][j];
                zrow[j] -= delta;
            }
        }
        basis[leave] = enter;
    }
}
