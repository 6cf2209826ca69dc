//! C ABI surface: opaque handles, integer status codes, thread-local error text.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use wham::channel::{simulate, ChannelSpec, Decoder};
use wham::code::{Budgets, LinearCode, MinDistanceMethod};
use wham::construction::{construction1, construction1_decode, ConstructedCode, Family};
use wham::error::Error;
use wham::field::{Field, Matrix};
use wham::metric::{wh_weight, BlockStructure};

/// Status code returned by every function; 0 is success, nonzero values
/// identify the failure and `wham_last_error_message` describes it.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhamStatus {
    Ok = 0,
    CompositeModulus = 1,
    DivisionByZero = 2,
    LengthMismatch = 3,
    InvalidCrossover = 4,
    ZeroCode = 5,
    BudgetExceeded = 6,
    InvalidDistance = 7,
    InvalidDimension = 8,
    NonIntegralTransform = 9,
    InvalidParameter = 10,
    LengthExceedsField = 11,
    DecodeFailure = 12,
    NullArgument = 100,
    InternalPanic = 101,
}

/// Selector values for `wham_code_min_distance`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhamDistanceMethod {
    Auto = 0,
    Codebook = 1,
    SupportEnum = 2,
}

/// Selector values for `wham_construct`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhamFamily {
    Binary = 0,
    Mds = 1,
}

/// Selector values for `wham_simulate`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhamDecoder {
    Ml = 0,
    WhReal = 1,
    WhInteger = 2,
}

/// Scalar counters of a simulation run; per-block rates are written to the
/// caller's buffer separately.
#[repr(C)]
pub struct WhamSimulationStats {
    pub trials: u64,
    pub word_errors: u64,
    pub decode_failures: u64,
    pub empirical_wer: f64,
    pub seed: u64,
}

/// The five bounds at one distance; `plotkin` is meaningful only when
/// `has_plotkin` is true.
#[repr(C)]
pub struct WhamBounds {
    pub singleton: u64,
    pub hamming: u64,
    pub gv: u64,
    pub has_plotkin: bool,
    pub plotkin: u64,
    pub lp: u64,
}

/// Opaque handle to a linear code.
pub struct WhamCode {
    inner: LinearCode,
}

/// Opaque handle to a constructed two-level code with its decoder tables.
pub struct WhamConstruction {
    inner: ConstructedCode,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("no interior NUL remains");
    });
}

fn fail(e: &Error) -> WhamStatus {
    set_error(&format!("{}: {e}", e.name()));
    match e {
        Error::CompositeModulus { .. } => WhamStatus::CompositeModulus,
        Error::DivisionByZero => WhamStatus::DivisionByZero,
        Error::LengthMismatch { .. } => WhamStatus::LengthMismatch,
        Error::InvalidCrossover { .. } => WhamStatus::InvalidCrossover,
        Error::ZeroCode => WhamStatus::ZeroCode,
        Error::BudgetExceeded { .. } => WhamStatus::BudgetExceeded,
        Error::InvalidDistance { .. } => WhamStatus::InvalidDistance,
        Error::InvalidDimension { .. } => WhamStatus::InvalidDimension,
        Error::NonIntegralTransform => WhamStatus::NonIntegralTransform,
        Error::InvalidParameter(_) => WhamStatus::InvalidParameter,
        Error::LengthExceedsField { .. } => WhamStatus::LengthExceedsField,
        Error::DecodeFailure => WhamStatus::DecodeFailure,
    }
}

fn null_argument(name: &str) -> WhamStatus {
    set_error(&format!("NullArgument: {name} must not be null"));
    WhamStatus::NullArgument
}

fn guard(f: impl FnOnce() -> WhamStatus) -> WhamStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("InternalPanic: unexpected panic across the FFI boundary");
            WhamStatus::InternalPanic
        }
    }
}

/// Builds a slice from a raw pointer, tolerating null only for length 0.
unsafe fn slice_arg<'a, T>(ptr: *const T, len: usize, name: &str) -> Result<&'a [T], WhamStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null_argument(name));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn blocks_arg(
    block_lengths: *const u32,
    block_scalings: *const u64,
    num_blocks: usize,
) -> Result<BlockStructure, WhamStatus> {
    let lengths = slice_arg(block_lengths, num_blocks, "block_lengths")?;
    let scalings = slice_arg(block_scalings, num_blocks, "block_scalings")?;
    let pairs: Vec<(u32, u64)> = lengths.iter().copied().zip(scalings.iter().copied()).collect();
    BlockStructure::new(&pairs).map_err(|e| fail(&e))
}

fn budgets() -> Budgets {
    Budgets::default()
}

/// Returns the message of the most recent error on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wham_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

#[allow(clippy::too_many_arguments)]
unsafe fn code_from_matrix(
    q: u32,
    block_lengths: *const u32,
    block_scalings: *const u64,
    num_blocks: usize,
    rows: usize,
    entries: *const u32,
    out_code: *mut *mut WhamCode,
    parity: bool,
) -> WhamStatus {
    if out_code.is_null() {
        return null_argument("out_code");
    }
    let bs = match blocks_arg(block_lengths, block_scalings, num_blocks) {
        Ok(bs) => bs,
        Err(status) => return status,
    };
    let n = bs.n();
    let flat = match slice_arg(entries, rows * n, "entries") {
        Ok(flat) => flat,
        Err(status) => return status,
    };
    let build = || -> Result<LinearCode, Error> {
        let field = Field::new(q)?;
        let m = Matrix::from_flat(rows, n, flat)?;
        if parity {
            LinearCode::from_parity_check(field, bs, &m)
        } else {
            LinearCode::from_generator(field, bs, &m)
        }
    };
    match build() {
        Ok(code) => {
            *out_code = Box::into_raw(Box::new(WhamCode { inner: code }));
            WhamStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Creates a code from a row-major `rows x n` generator matrix.
///
/// # Safety
/// Pointers must reference arrays of the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn wham_code_from_generator(
    q: u32,
    block_lengths: *const u32,
    block_scalings: *const u64,
    num_blocks: usize,
    rows: usize,
    entries: *const u32,
    out_code: *mut *mut WhamCode,
) -> WhamStatus {
    guard(|| {
        code_from_matrix(
            q,
            block_lengths,
            block_scalings,
            num_blocks,
            rows,
            entries,
            out_code,
            false,
        )
    })
}

/// Creates a code from a row-major `rows x n` parity-check matrix.
///
/// # Safety
/// Pointers must reference arrays of the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn wham_code_from_parity_check(
    q: u32,
    block_lengths: *const u32,
    block_scalings: *const u64,
    num_blocks: usize,
    rows: usize,
    entries: *const u32,
    out_code: *mut *mut WhamCode,
) -> WhamStatus {
    guard(|| {
        code_from_matrix(
            q,
            block_lengths,
            block_scalings,
            num_blocks,
            rows,
            entries,
            out_code,
            true,
        )
    })
}

/// Releases a code handle; null is ignored.
///
/// # Safety
/// The handle must come from a wham constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wham_code_free(code: *mut WhamCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Block length n of the code, or 0 on a null handle.
///
/// # Safety
/// `code` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn wham_code_length(code: *const WhamCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.n())
}

/// Dimension k of the code, or 0 on a null handle.
///
/// # Safety
/// `code` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn wham_code_dimension(code: *const WhamCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.k())
}

/// Alphabet size q of the code, or 0 on a null handle.
///
/// # Safety
/// `code` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn wham_code_alphabet(code: *const WhamCode) -> u32 {
    code.as_ref().map_or(0, |c| c.inner.q())
}

/// Minimum weighted-Hamming distance; `method` takes WhamDistanceMethod
/// values.
///
/// # Safety
/// `code` must be a live handle; `out_distance` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wham_code_min_distance(
    code: *const WhamCode,
    method: i32,
    out_distance: *mut u64,
) -> WhamStatus {
    guard(|| {
        let Some(code) = code.as_ref() else {
            return null_argument("code");
        };
        if out_distance.is_null() {
            return null_argument("out_distance");
        }
        let method = match method {
            0 => MinDistanceMethod::Auto,
            1 => MinDistanceMethod::Codebook,
            2 => MinDistanceMethod::SupportEnum,
            other => {
                return fail(&Error::InvalidParameter(format!(
                    "unknown distance method {other}"
                )))
            }
        };
        match code.inner.min_wh_distance(method, &budgets()) {
            Ok(res) => {
                *out_distance = res.d;
                WhamStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Guaranteed error-correction radius tau of the code.
///
/// # Safety
/// `code` must be a live handle; `out_tau` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wham_code_tau(code: *const WhamCode, out_tau: *mut u64) -> WhamStatus {
    guard(|| {
        let Some(code) = code.as_ref() else {
            return null_argument("code");
        };
        if out_tau.is_null() {
            return null_argument("out_tau");
        }
        match code.inner.tau(&budgets()) {
            Ok(tau) => {
                *out_tau = tau;
                WhamStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Weighted-Hamming weight of a vector under the given block structure.
///
/// # Safety
/// Pointers must reference arrays of the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn wham_weight(
    block_lengths: *const u32,
    block_scalings: *const u64,
    num_blocks: usize,
    vector: *const u32,
    vector_len: usize,
    out_weight: *mut u64,
) -> WhamStatus {
    guard(|| {
        if out_weight.is_null() {
            return null_argument("out_weight");
        }
        let bs = match blocks_arg(block_lengths, block_scalings, num_blocks) {
            Ok(bs) => bs,
            Err(status) => return status,
        };
        let v = match slice_arg(vector, vector_len, "vector") {
            Ok(v) => v,
            Err(status) => return status,
        };
        match wh_weight(&bs, v) {
            Ok(w) => {
                *out_weight = w;
                WhamStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Ball size of radius `radius`; fails with InvalidParameter when the count
/// does not fit in 64 bits.
///
/// # Safety
/// Pointers must reference arrays of the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn wham_ball_size(
    q: u32,
    block_lengths: *const u32,
    block_scalings: *const u64,
    num_blocks: usize,
    radius: u64,
    out_size: *mut u64,
) -> WhamStatus {
    guard(|| {
        if out_size.is_null() {
            return null_argument("out_size");
        }
        let bs = match blocks_arg(block_lengths, block_scalings, num_blocks) {
            Ok(bs) => bs,
            Err(status) => return status,
        };
        match wham::ball::ball_size(q, &bs, radius) {
            Ok(size) => match u64::try_from(&size) {
                Ok(size) => {
                    *out_size = size;
                    WhamStatus::Ok
                }
                Err(_) => fail(&Error::InvalidParameter(format!(
                    "ball size {size} exceeds 64 bits"
                ))),
            },
            Err(e) => fail(&e),
        }
    })
}

/// All five bounds at one distance.
///
/// # Safety
/// Pointers must reference arrays of the stated lengths; `out_bounds` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn wham_bounds(
    q: u32,
    block_lengths: *const u32,
    block_scalings: *const u64,
    num_blocks: usize,
    d: u64,
    out_bounds: *mut WhamBounds,
) -> WhamStatus {
    guard(|| {
        if out_bounds.is_null() {
            return null_argument("out_bounds");
        }
        let bs = match blocks_arg(block_lengths, block_scalings, num_blocks) {
            Ok(bs) => bs,
            Err(status) => return status,
        };
        match wham::bounds::bounds_table(q, &bs, d, d) {
            Ok(rows) => {
                let row = &rows[0];
                *out_bounds = WhamBounds {
                    singleton: row.singleton,
                    hamming: row.hamming,
                    gv: row.gv,
                    has_plotkin: row.plotkin.is_some(),
                    plotkin: row.plotkin.unwrap_or(0),
                    lp: row.lp,
                };
                WhamStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Builds a two-level code; `family` takes WhamFamily values.
///
/// # Safety
/// `out_construction` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wham_construct(
    q: u32,
    family: i32,
    n1: usize,
    n2: usize,
    out_construction: *mut *mut WhamConstruction,
) -> WhamStatus {
    guard(|| {
        if out_construction.is_null() {
            return null_argument("out_construction");
        }
        let family = match family {
            0 => Family::Binary,
            1 => Family::Mds,
            other => {
                return fail(&Error::InvalidParameter(format!("unknown family {other}")))
            }
        };
        let field = match Field::new(q) {
            Ok(field) => field,
            Err(e) => return fail(&e),
        };
        match construction1(field, n1, n2, family) {
            Ok(cc) => {
                *out_construction = Box::into_raw(Box::new(WhamConstruction { inner: cc }));
                WhamStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases a construction handle; null is ignored.
///
/// # Safety
/// The handle must come from `wham_construct` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wham_construction_free(construction: *mut WhamConstruction) {
    if !construction.is_null() {
        drop(Box::from_raw(construction));
    }
}

/// Block length n of the constructed code, or 0 on a null handle.
///
/// # Safety
/// `construction` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn wham_construction_length(
    construction: *const WhamConstruction,
) -> usize {
    construction.as_ref().map_or(0, |c| c.inner.code().n())
}

/// Dimension k of the constructed code, or 0 on a null handle.
///
/// # Safety
/// `construction` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn wham_construction_dimension(
    construction: *const WhamConstruction,
) -> usize {
    construction.as_ref().map_or(0, |c| c.inner.code().k())
}

/// Encodes a length-k message into the length-n codeword buffer.
///
/// # Safety
/// Pointers must reference arrays of the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn wham_construction_encode(
    construction: *const WhamConstruction,
    message: *const u32,
    message_len: usize,
    out_codeword: *mut u32,
    codeword_len: usize,
) -> WhamStatus {
    guard(|| {
        let Some(cc) = construction.as_ref() else {
            return null_argument("construction");
        };
        let msg = match slice_arg(message, message_len, "message") {
            Ok(msg) => msg,
            Err(status) => return status,
        };
        let n = cc.inner.code().n();
        if codeword_len != n {
            return fail(&Error::LengthMismatch { expected: n, got: codeword_len });
        }
        if out_codeword.is_null() {
            return null_argument("out_codeword");
        }
        match cc.inner.code().encode(msg) {
            Ok(c) => {
                std::slice::from_raw_parts_mut(out_codeword, n).copy_from_slice(&c);
                WhamStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Syndrome-decodes a received word; DecodeFailure when no table entry
/// matches.
///
/// # Safety
/// Pointers must reference arrays of the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn wham_construction_decode(
    construction: *const WhamConstruction,
    word: *const u32,
    word_len: usize,
    out_codeword: *mut u32,
    codeword_len: usize,
) -> WhamStatus {
    guard(|| {
        let Some(cc) = construction.as_ref() else {
            return null_argument("construction");
        };
        let word = match slice_arg(word, word_len, "word") {
            Ok(word) => word,
            Err(status) => return status,
        };
        let n = cc.inner.code().n();
        if codeword_len != n {
            return fail(&Error::LengthMismatch { expected: n, got: codeword_len });
        }
        if out_codeword.is_null() {
            return null_argument("out_codeword");
        }
        match construction1_decode(&cc.inner, word) {
            Ok(c) => {
                std::slice::from_raw_parts_mut(out_codeword, n).copy_from_slice(&c);
                WhamStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Seeded Monte-Carlo simulation; `decoder` takes WhamDecoder values and
/// per-block symbol error rates are written to `out_block_rates`.
///
/// # Safety
/// Pointers must reference arrays of the stated lengths; `out_stats` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn wham_simulate(
    code: *const WhamCode,
    rhos: *const f64,
    num_rhos: usize,
    decoder: i32,
    trials: u64,
    seed: u64,
    out_stats: *mut WhamSimulationStats,
    out_block_rates: *mut f64,
    block_rates_len: usize,
) -> WhamStatus {
    guard(|| {
        let Some(code) = code.as_ref() else {
            return null_argument("code");
        };
        if out_stats.is_null() {
            return null_argument("out_stats");
        }
        let rhos = match slice_arg(rhos, num_rhos, "rhos") {
            Ok(rhos) => rhos,
            Err(status) => return status,
        };
        let decoder = match decoder {
            0 => Decoder::Ml,
            1 => Decoder::WhReal,
            2 => Decoder::WhInteger,
            other => {
                return fail(&Error::InvalidParameter(format!("unknown decoder {other}")))
            }
        };
        let m = code.inner.bs().m();
        if block_rates_len != m {
            return fail(&Error::LengthMismatch { expected: m, got: block_rates_len });
        }
        if out_block_rates.is_null() {
            return null_argument("out_block_rates");
        }
        let run = || -> Result<wham::channel::SimulationStats, Error> {
            let spec = ChannelSpec::new(code.inner.q(), code.inner.bs().clone(), rhos)?;
            simulate(&code.inner, &spec, decoder, trials, seed, &budgets())
        };
        match run() {
            Ok(stats) => {
                *out_stats = WhamSimulationStats {
                    trials: stats.trials,
                    word_errors: stats.word_errors,
                    decode_failures: stats.decode_failures,
                    empirical_wer: stats.empirical_wer,
                    seed: stats.seed,
                };
                std::slice::from_raw_parts_mut(out_block_rates, m)
                    .copy_from_slice(&stats.per_block_symbol_error_rate);
                WhamStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}
