//! C ABI over `qprime`.
//!
//! Every function returns a [`QpStatus`] and writes results through out
//! pointers. Out pointers are only written on `QP_STATUS_OK` (and, for
//! `qp_full_factorize`, the required length on `QP_STATUS_BUFFER_TOO_SMALL`).
//! Heap objects are opaque handles released with their matching `*_free`
//! function. Panics never cross the boundary; they surface as
//! `QP_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use qprime::numerics::{self, WheelConfig};
use qprime::oracle::{self, PrimeTable};
use qprime::pipeline::{
    self, FilterStage, FilterVerdict, PrimalityKind, SearchStrategy, Stage, Witness,
};
use qprime::qgrid::{self, AxisIndex};
use qprime::shell::{emit_wheel_svg, WheelRender};
use qprime::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Config = 3,
    NotOnPrimeModuli = 4,
    NoFactors = 5,
    NotQuasiPrime = 6,
    Invalid = 7,
    Resource = 8,
    Overflow = 9,
    Internal = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

impl From<&Error> for QpStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => QpStatus::Domain,
            Error::Config(_) => QpStatus::Config,
            Error::NotOnPrimeModuli(_) => QpStatus::NotOnPrimeModuli,
            Error::NoFactors(_) => QpStatus::NoFactors,
            Error::NotQuasiPrime(_) => QpStatus::NotQuasiPrime,
            Error::Invalid { .. } => QpStatus::Invalid,
            Error::Resource { .. } => QpStatus::Resource,
            Error::Overflow(_) => QpStatus::Overflow,
            Error::Internal(_) => QpStatus::Internal,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpStrategy {
    Ascending = 0,
    Balanced = 1,
}

impl From<QpStrategy> for SearchStrategy {
    fn from(s: QpStrategy) -> Self {
        match s {
            QpStrategy::Ascending => SearchStrategy::AscendingScan,
            QpStrategy::Balanced => SearchStrategy::BalancedFirst,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpKind {
    Prime = 0,
    PrimeSpecialSmall = 1,
    Composite = 2,
    Invalid = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpStage {
    Pass = 0,
    NotOdd = 1,
    LastDigit = 2,
    DigitalRoot369 = 3,
    NotPrimeModulus = 4,
    GridSearch = 5,
    SpecialSmall = 6,
    InputRange = 7,
}

impl From<FilterStage> for QpStage {
    fn from(s: FilterStage) -> Self {
        QpStage::from(Stage::from(s))
    }
}

impl From<Stage> for QpStage {
    fn from(s: Stage) -> Self {
        match s {
            Stage::NotOdd => QpStage::NotOdd,
            Stage::LastDigit => QpStage::LastDigit,
            Stage::DigitalRoot369 => QpStage::DigitalRoot369,
            Stage::NotPrimeModulus => QpStage::NotPrimeModulus,
            Stage::GridSearch => QpStage::GridSearch,
            Stage::SpecialSmall => QpStage::SpecialSmall,
            Stage::InputRange => QpStage::InputRange,
        }
    }
}

/// Outcome of `qp_is_prime`.
///
/// When `has_witness` is set, `witness_a * witness_b == n`. `grid_i` and
/// `grid_j` are the 1-based grid indices of a grid witness, 0 otherwise.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QpVerdict {
    pub n: u64,
    pub kind: QpKind,
    pub stage: QpStage,
    pub has_witness: bool,
    pub witness_a: u64,
    pub witness_b: u64,
    pub grid_i: u64,
    pub grid_j: u64,
}

/// Opaque sieve handle.
pub struct QpPrimeTable(PrimeTable);

/// Opaque wheel handle.
pub struct QpWheel(WheelRender);

fn guard<F>(f: F) -> QpStatus
where
    F: FnOnce() -> Result<(), QpStatus> + UnwindSafe,
{
    match catch_unwind(f) {
        Ok(Ok(())) => QpStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => QpStatus::Panic,
    }
}

fn lift<T>(r: qprime::Result<T>) -> Result<T, QpStatus> {
    r.map_err(|e| QpStatus::from(&e))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), QpStatus> {
    if out.is_null() {
        return Err(QpStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

/// Static description of a status code. Never NULL; do not free.
#[no_mangle]
pub extern "C" fn qp_status_message(status: QpStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        QpStatus::Ok => b"ok\0",
        QpStatus::NullPointer => b"null pointer argument\0",
        QpStatus::Domain => b"input outside the operation's domain\0",
        QpStatus::Config => b"invalid wheel configuration\0",
        QpStatus::NotOnPrimeModuli => b"number is not on the prime moduli\0",
        QpStatus::NoFactors => b"number is prime; no grid factors\0",
        QpStatus::NotQuasiPrime => b"number shares a factor with 6\0",
        QpStatus::Invalid => b"input below the minimum\0",
        QpStatus::Resource => b"resource cap exceeded\0",
        QpStatus::Overflow => b"value exceeds 2^63 - 1\0",
        QpStatus::Internal => b"internal consistency failure\0",
        QpStatus::BufferTooSmall => b"output buffer too small\0",
        QpStatus::Panic => b"panic inside the library\0",
    };
    msg.as_ptr().cast()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn qp_digital_root(n: u64, out: *mut u8) -> QpStatus {
    guard(|| write(out, lift(numerics::digital_root(n))?.value()))
}

/// Spoke of `n` on a `sides`-sided wheel, in `1..=sides`.
#[no_mangle]
pub unsafe extern "C" fn qp_modulus_of(n: u64, sides: u64, out: *mut u64) -> QpStatus {
    guard(|| {
        let wheel = lift(WheelConfig::new(sides, 1))?;
        write(out, lift(numerics::modulus_of(n, &wheel))?)
    })
}

/// Writes `1` to `out` if `modulus` is a prime spoke of the wheel, else `0`.
#[no_mangle]
pub unsafe extern "C" fn qp_is_prime_modulus(sides: u64, modulus: u64, out: *mut bool) -> QpStatus {
    guard(|| {
        let moduli = lift(numerics::prime_moduli(sides))?;
        write(out, moduli.contains(&modulus))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qp_axis_value(k: u64, out: *mut u64) -> QpStatus {
    guard(|| write(out, qgrid::axis_value(lift(AxisIndex::new(k))?)))
}

/// Axis index of `v`; `QP_STATUS_DOMAIN` when `v` is not an axis value.
#[no_mangle]
pub unsafe extern "C" fn qp_axis_index(v: u64, out: *mut u64) -> QpStatus {
    guard(|| match qgrid::axis_index(v) {
        Some(k) => write(out, k.get()),
        None => Err(QpStatus::Domain),
    })
}

#[no_mangle]
pub unsafe extern "C" fn qp_grid_value(i: u64, j: u64, out: *mut u64) -> QpStatus {
    guard(|| {
        let (i, j) = (lift(AxisIndex::new(i))?, lift(AxisIndex::new(j))?);
        write(out, lift(qgrid::grid_value(i, j))?)
    })
}

/// Grid membership. `found` is false exactly when `n` is prime; otherwise
/// `i <= j` index the cell holding `n`.
#[no_mangle]
pub unsafe extern "C" fn qp_grid_contains(
    n: u64,
    found: *mut bool,
    i: *mut u64,
    j: *mut u64,
) -> QpStatus {
    guard(|| {
        if found.is_null() || i.is_null() || j.is_null() {
            return Err(QpStatus::NullPointer);
        }
        let cell = lift(qgrid::contains(n))?;
        write(found, cell.is_some())?;
        write(i, cell.map_or(0, |c| c.i.get()))?;
        write(j, cell.map_or(0, |c| c.j.get()))
    })
}

/// Prefilter outcome: `QP_STAGE_PASS` or the first rejecting stage.
#[no_mangle]
pub unsafe extern "C" fn qp_prefilter(n: u64, out: *mut QpStage) -> QpStatus {
    guard(|| {
        let stage = match lift(pipeline::prefilter(n))? {
            FilterVerdict::Pass => QpStage::Pass,
            FilterVerdict::Rejected(s) => s.into(),
        };
        write(out, stage)
    })
}

#[no_mangle]
pub unsafe extern "C" fn qp_is_prime(
    n: u64,
    strategy: QpStrategy,
    out: *mut QpVerdict,
) -> QpStatus {
    guard(|| {
        let v = lift(pipeline::is_prime(n, strategy.into()))?;
        let (witness_a, witness_b) = v.witness.map_or((0, 0), |w| w.pair());
        let (grid_i, grid_j) = match v.witness {
            Some(Witness::Grid(c)) => (c.i.get(), c.j.get()),
            _ => (0, 0),
        };
        write(
            out,
            QpVerdict {
                n,
                kind: match v.kind {
                    PrimalityKind::Prime => QpKind::Prime,
                    PrimalityKind::PrimeSpecialSmall => QpKind::PrimeSpecialSmall,
                    PrimalityKind::Composite => QpKind::Composite,
                    PrimalityKind::Invalid => QpKind::Invalid,
                },
                stage: v.stage.into(),
                has_witness: v.witness.is_some(),
                witness_a,
                witness_b,
                grid_i,
                grid_j,
            },
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn qp_factor_on_grid(
    n: u64,
    strategy: QpStrategy,
    a: *mut u64,
    b: *mut u64,
) -> QpStatus {
    guard(|| {
        if a.is_null() || b.is_null() {
            return Err(QpStatus::NullPointer);
        }
        let pair = lift(pipeline::factor_on_grid(n, strategy.into()))?;
        write(a, pair.a)?;
        write(b, pair.b)
    })
}

/// Prime factors of `n`, ascending, into `buf[0..*len]`.
///
/// If `cap` is too small, `*len` receives the required length and
/// `QP_STATUS_BUFFER_TOO_SMALL` is returned. At most 63 factors are ever needed.
#[no_mangle]
pub unsafe extern "C" fn qp_full_factorize(
    n: u64,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> QpStatus {
    guard(|| {
        if len.is_null() {
            return Err(QpStatus::NullPointer);
        }
        let primes = lift(pipeline::full_factorize(n))?.primes;
        if primes.len() > cap {
            write(len, primes.len())?;
            return Err(QpStatus::BufferTooSmall);
        }
        if buf.is_null() {
            return Err(QpStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(primes.as_ptr(), buf, primes.len());
        write(len, primes.len())
    })
}

#[no_mangle]
pub unsafe extern "C" fn qp_survivor_density(
    limit: u64,
    survivors: *mut u64,
    fraction: *mut f64,
) -> QpStatus {
    guard(|| {
        if survivors.is_null() || fraction.is_null() {
            return Err(QpStatus::NullPointer);
        }
        let r = lift(pipeline::survivor_density(limit))?;
        write(survivors, r.survivors)?;
        write(fraction, r.fraction)
    })
}

/// Number of primality/factorization mismatches against the sieve on `[2, limit]`.
#[no_mangle]
pub unsafe extern "C" fn qp_verify_range(
    limit: u64,
    strategy: QpStrategy,
    mismatches: *mut u64,
) -> QpStatus {
    guard(|| {
        let r = lift(oracle::verify_range(limit, strategy.into()))?;
        write(mismatches, r.mismatches.len() as u64)
    })
}

/// Builds a sieve up to `limit`. Release with `qp_sieve_free`.
#[no_mangle]
pub unsafe extern "C" fn qp_sieve_new(limit: u64, out: *mut *mut QpPrimeTable) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return Err(QpStatus::NullPointer);
        }
        let table = lift(oracle::sieve(limit))?;
        write(out, Box::into_raw(Box::new(QpPrimeTable(table))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qp_sieve_is_prime(
    table: *const QpPrimeTable,
    n: u64,
    out: *mut bool,
) -> QpStatus {
    guard(|| {
        let table = table.as_ref().ok_or(QpStatus::NullPointer)?;
        if n > table.0.limit() {
            return Err(QpStatus::Domain);
        }
        write(out, table.0.is_prime(n))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qp_sieve_count(table: *const QpPrimeTable, out: *mut u64) -> QpStatus {
    guard(|| {
        let table = table.as_ref().ok_or(QpStatus::NullPointer)?;
        write(out, table.0.count())
    })
}

/// Frees a sieve handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qp_sieve_free(table: *mut QpPrimeTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Lays out and cross-checks a wheel. Release with `qp_wheel_free`.
#[no_mangle]
pub unsafe extern "C" fn qp_wheel_new(sides: u64, limit: u64, out: *mut *mut QpWheel) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return Err(QpStatus::NullPointer);
        }
        let render = lift(WheelRender::build(sides, limit))?;
        write(out, Box::into_raw(Box::new(QpWheel(render))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qp_wheel_rings(wheel: *const QpWheel, out: *mut u64) -> QpStatus {
    guard(|| {
        let wheel = wheel.as_ref().ok_or(QpStatus::NullPointer)?;
        write(out, wheel.0.rings())
    })
}

/// Renders the wheel as an SVG document. Free the string with `qp_string_free`.
#[no_mangle]
pub unsafe extern "C" fn qp_wheel_svg(wheel: *const QpWheel, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        let wheel = wheel.as_ref().ok_or(QpStatus::NullPointer)?;
        let svg = CString::new(emit_wheel_svg(&wheel.0)).map_err(|_| QpStatus::Internal)?;
        write(out, svg.into_raw())
    })
}

/// Frees a wheel handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qp_wheel_free(wheel: *mut QpWheel) {
    if !wheel.is_null() {
        drop(Box::from_raw(wheel));
    }
}

/// Frees a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
