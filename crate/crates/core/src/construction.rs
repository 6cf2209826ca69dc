//! Explicit code families: Reed-Solomon generators, binary Hamming and
//! double-error-correcting BCH parity checks, and the d = 5 construction
//! for lambda = (1, 2) with its guaranteed syndrome decoder.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Field, Matrix};
use crate::metric::BlockStructure;

/// Largest m with a primitive polynomial in the built-in table.
pub const MAX_BCH_M: u32 = 8;

/// Entry cap for a syndrome table (inner + outer combined).
pub const SYNDROME_TABLE_BUDGET: u128 = 1 << 20;

/// Primitive polynomials for F_{2^m}, bit i = coefficient of x^i.
const PRIMITIVE_POLYS: [(u32, u32); 6] = [
    (3, 0b1011),
    (4, 0b1_0011),
    (5, 0b10_0101),
    (6, 0b100_0011),
    (7, 0b1000_1001),
    (8, 0b1_0001_1101),
];

/// Component-code family used by [`construction1`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Binary Hamming checks extended to a double-error-correcting BCH check.
    Binary,
    /// Vandermonde rows over a field with q >= max(n1, n2).
    Mds,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Binary => write!(f, "binary"),
            Family::Mds => write!(f, "mds"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(Family::Binary),
            "mds" => Ok(Family::Mds),
            other => Err(Error::InvalidParameter(format!(
                "unknown family {other:?}, expected \"binary\" or \"mds\""
            ))),
        }
    }
}

/// A two-block d = 5 code with its parity blocks and syndrome tables.
#[derive(Debug, Clone)]
pub struct ConstructedCode {
    code: LinearCode,
    h1: Matrix,
    h2: Matrix,
    h3: Matrix,
    family: Family,
    inner: HashMap<Vec<u32>, Vec<u32>>,
    outer: HashMap<Vec<u32>, Vec<u32>>,
}

impl ConstructedCode {
    /// The underlying linear code with block structure ((n1, 1), (n2, 2)).
    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// Top-left parity block (r1 x n1).
    pub fn h1(&self) -> &Matrix {
        &self.h1
    }

    /// Top-right parity block (r1 x n2).
    pub fn h2(&self) -> &Matrix {
        &self.h2
    }

    /// Bottom-left parity block (r2 x n1).
    pub fn h3(&self) -> &Matrix {
        &self.h3
    }

    /// Which component family built this code.
    pub fn family(&self) -> Family {
        self.family
    }

    /// First block length.
    pub fn n1(&self) -> usize {
        self.h1.cols()
    }

    /// Second block length.
    pub fn n2(&self) -> usize {
        self.h2.cols()
    }
}

/// Returns the table primitive polynomial for F_{2^m}.
fn primitive_poly(m: u32) -> Result<u32> {
    PRIMITIVE_POLYS
        .iter()
        .find(|&&(mm, _)| mm == m)
        .map(|&(_, p)| p)
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no primitive polynomial for m = {m}, supported range is 3..={MAX_BCH_M}"
            ))
        })
}

/// Multiplies two elements of F_{2^m} in polynomial representation.
fn gf2m_mul(mut a: u32, mut b: u32, m: u32, poly: u32) -> u32 {
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & (1 << m) != 0 {
            a ^= poly;
        }
    }
    acc
}

/// Builds the generator of a length-n dimension-k Reed-Solomon code over
/// F_q, evaluated at the points 0, 1, ..., n-1, as a single unit-weight
/// block.
pub fn reed_solomon(q: u32, n: usize, k: usize) -> Result<LinearCode> {
    let field = Field::new(q)?;
    if n > q as usize {
        return Err(Error::LengthExceedsField { n, q });
    }
    if k == 0 {
        return Err(Error::ZeroCode);
    }
    if k > n {
        return Err(Error::InvalidDimension { k, min: 1, max: n });
    }
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let row = (0..n).map(|j| field.pow(j as u32, i as u64)).collect();
        rows.push(row);
    }
    let g = Matrix::from_rows(rows)?;
    let bs = BlockStructure::new(&[(n as u32, 1)])?;
    LinearCode::from_generator(field, bs, &g)
}

/// Parity-check matrix of the binary Hamming code of redundancy m: column
/// j is the binary expansion of j + 1, bit i in row i.
pub fn binary_hamming_parity(m: u32) -> Result<Matrix> {
    if !(2..=16).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "hamming parity requires 2 <= m <= 16, got {m}"
        )));
    }
    let cols = (1usize << m) - 1;
    let mut h = Matrix::zero(m as usize, cols);
    for j in 0..cols {
        let v = (j + 1) as u32;
        for i in 0..m {
            h.set(i as usize, j, (v >> i) & 1);
        }
    }
    Ok(h)
}

/// The cube rows extending [`binary_hamming_parity`] to a double-error-
/// correcting BCH parity check: column j holds the bits of alpha_j^3 in
/// F_{2^m}, where alpha_j is column j of the Hamming parity matrix.
pub fn binary_bch_extension(m: u32) -> Result<Matrix> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!(
            "bch extension requires m >= 3, got {m}"
        )));
    }
    let poly = primitive_poly(m)?;
    let cols = (1usize << m) - 1;
    let mut h = Matrix::zero(m as usize, cols);
    for j in 0..cols {
        let v = (j + 1) as u32;
        let cube = gf2m_mul(gf2m_mul(v, v, m, poly), v, m, poly);
        for i in 0..m {
            h.set(i as usize, j, (cube >> i) & 1);
        }
    }
    Ok(h)
}

fn check_reduced(field: Field, m: &Matrix, name: &str) -> Result<()> {
    for r in 0..m.rows() {
        for &x in m.row(r) {
            if x >= field.q() {
                return Err(Error::InvalidParameter(format!(
                    "{name} entry {x} not reduced mod {}",
                    field.q()
                )));
            }
        }
    }
    Ok(())
}

/// Enumerates error patterns of length n with Hamming weight <= t and
/// stores their syndromes under `h`; a syndrome collision means `h` is not
/// a distance-(2t + 1) parity check.
fn syndrome_table(
    field: Field,
    h: &Matrix,
    t: usize,
    name: &str,
    required: &str,
) -> Result<HashMap<Vec<u32>, Vec<u32>>> {
    let n = h.cols();
    let q = field.q();
    let mut table = HashMap::new();
    table.insert(vec![0; h.rows()], vec![0; n]);
    let mut patterns: Vec<Vec<u32>> = Vec::new();
    for a in 0..n {
        for va in 1..q {
            let mut e = vec![0; n];
            e[a] = va;
            patterns.push(e.clone());
            if t >= 2 {
                for b in a + 1..n {
                    for vb in 1..q {
                        let mut e2 = e.clone();
                        e2[b] = vb;
                        patterns.push(e2);
                    }
                }
            }
        }
    }
    for e in patterns {
        let s = h.mul_vec(&e, &field)?;
        if table.insert(s, e).is_some() {
            return Err(Error::InvalidParameter(format!(
                "{name} is not a {required} parity check (syndrome collision)"
            )));
        }
    }
    Ok(table)
}

fn table_entries(n1: u128, n2: u128, q: u128) -> u128 {
    let singles = |n: u128| n * (q - 1);
    let doubles = n1 * (n1 - 1) / 2 * (q - 1) * (q - 1);
    2 + singles(n1) + doubles + singles(n2)
}

/// Assembles a [`ConstructedCode`] from explicit parity blocks, validating
/// shapes and rebuilding both syndrome tables.
pub fn from_parts(
    field: Field,
    family: Family,
    h1: Matrix,
    h2: Matrix,
    h3: Matrix,
) -> Result<ConstructedCode> {
    if h1.rows() == 0 || h3.rows() == 0 {
        return Err(Error::InvalidParameter(
            "parity blocks must have at least one row".into(),
        ));
    }
    if h1.rows() != h2.rows() {
        return Err(Error::InvalidParameter(format!(
            "h1 and h2 row counts differ ({} vs {})",
            h1.rows(),
            h2.rows()
        )));
    }
    if h1.cols() != h3.cols() {
        return Err(Error::InvalidParameter(format!(
            "h1 and h3 column counts differ ({} vs {})",
            h1.cols(),
            h3.cols()
        )));
    }
    check_reduced(field, &h1, "h1")?;
    check_reduced(field, &h2, "h2")?;
    check_reduced(field, &h3, "h3")?;
    let n1 = h1.cols();
    let n2 = h2.cols();
    let needed = table_entries(n1 as u128, n2 as u128, field.q() as u128);
    if needed > SYNDROME_TABLE_BUDGET {
        return Err(Error::BudgetExceeded { needed, budget: SYNDROME_TABLE_BUDGET });
    }

    let top = h1.hstack(&h2)?;
    let bottom = h3.hstack(&Matrix::zero(h3.rows(), n2))?;
    let h = top.vstack(&bottom)?;
    let bs = BlockStructure::new(&[(n1 as u32, 1), (n2 as u32, 2)])?;
    let code = LinearCode::from_parity_check(field, bs, &h)?;

    let stacked = h1.vstack(&h3)?;
    let inner = syndrome_table(field, &stacked, 2, "(h1; h3)", "distance-5")?;
    let outer = syndrome_table(field, &h2, 1, "h2", "distance-3")?;
    Ok(ConstructedCode { code, h1, h2, h3, family, inner, outer })
}

/// Builds the two-block d = 5 code with parity check [[H1, H2], [H3, 0]]
/// and block structure ((n1, 1), (n2, 2)) from the chosen family.
pub fn construction1(
    field: Field,
    n1: usize,
    n2: usize,
    family: Family,
) -> Result<ConstructedCode> {
    if n1 < 5 {
        return Err(Error::InvalidParameter(format!(
            "construction requires n1 >= 5, got {n1}"
        )));
    }
    if n2 < 3 {
        return Err(Error::InvalidParameter(format!(
            "construction requires n2 >= 3, got {n2}"
        )));
    }
    let q = field.q();
    let (h1, h2, h3) = match family {
        Family::Binary => {
            if q != 2 {
                return Err(Error::InvalidParameter(format!(
                    "binary family requires q = 2, got {q}"
                )));
            }
            let long = n1.max(n2);
            let m = (3..=MAX_BCH_M)
                .find(|&m| (1usize << m) > long)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "binary family requires max(n1, n2) <= {}, got {long}",
                        (1usize << MAX_BCH_M) - 1
                    ))
                })?;
            let hamming = binary_hamming_parity(m)?;
            let cubes = binary_bch_extension(m)?;
            (truncate(&cubes, n1), truncate(&hamming, n2), truncate(&hamming, n1))
        }
        Family::Mds => {
            if (q as usize) < n1.max(n2) {
                return Err(Error::InvalidParameter(format!(
                    "mds family requires q >= max(n1, n2), got q = {q}"
                )));
            }
            let vander = |n: usize, powers: [u64; 2]| {
                let rows = powers
                    .iter()
                    .map(|&e| (0..n).map(|j| field.pow(j as u32, e)).collect())
                    .collect();
                Matrix::from_rows(rows)
            };
            (vander(n1, [2, 3])?, vander(n2, [0, 1])?, vander(n1, [0, 1])?)
        }
    };
    from_parts(field, family, h1, h2, h3)
}

/// Keeps the first n columns of a matrix.
fn truncate(m: &Matrix, n: usize) -> Matrix {
    let mut out = Matrix::zero(m.rows(), n);
    for r in 0..m.rows() {
        for c in 0..n {
            out.set(r, c, m.get(r, c));
        }
    }
    out
}

/// Decodes a received word by the two-stage syndrome lookup; guaranteed
/// correct whenever the error has weighted-Hamming weight at most 2.
pub fn construction1_decode(cc: &ConstructedCode, r: &[u32]) -> Result<Vec<u32>> {
    let n1 = cc.n1();
    let n2 = cc.n2();
    if r.len() != n1 + n2 {
        return Err(Error::LengthMismatch { expected: n1 + n2, got: r.len() });
    }
    let field = cc.code.field();
    let q = field.q();
    if let Some(&x) = r.iter().find(|&&x| x >= q) {
        return Err(Error::InvalidParameter(format!(
            "received symbol {x} not reduced mod {q}"
        )));
    }
    let (r1, r2) = r.split_at(n1);
    let s3 = cc.h3.mul_vec(r1, &field)?;
    let mut s_top = cc.h1.mul_vec(r1, &field)?;
    for (a, b) in s_top.iter_mut().zip(cc.h2.mul_vec(r2, &field)?) {
        *a = field.add(*a, b);
    }
    let mut c = r.to_vec();
    if s3.iter().all(|&x| x == 0) {
        let e2 = cc.outer.get(&s_top).ok_or(Error::DecodeFailure)?;
        for (ci, &ei) in c[n1..].iter_mut().zip(e2) {
            *ci = field.sub(*ci, ei);
        }
    } else {
        let mut s = s_top;
        s.extend(s3);
        let e1 = cc.inner.get(&s).ok_or(Error::DecodeFailure)?;
        for (ci, &ei) in c[..n1].iter_mut().zip(e1) {
            *ci = field.sub(*ci, ei);
        }
    }
    Ok(c)
}
