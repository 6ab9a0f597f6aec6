//! C interface to `fbcs-core`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_from_*`
//! functions and released with the matching `*_free`. Every fallible call
//! returns an [`FbcsStatus`]; the message of the last failure on the calling
//! thread is available from [`fbcs_last_error_message`].
//!
//! Complex arrays are interleaved `(re, im)` doubles. A four-component field
//! on an `n^3` grid is `8 n^3` doubles: component-major, then row-major
//! modes (or samples), then `re, im`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use fbcs_core::function_spaces::{build_lp_partition, fbm_norm, Exponent, NormParams};
use fbcs_core::solver::{apply_semigroup_with, picard_solve, Dynamics};
use fbcs_core::symbols::{coupling_bound_l, helmholtz_symbol, matrix_exponential_oracle, semigroup_symbol_with, Convention};
use fbcs_core::{Error, GridSpec, PhysParams, SpectralField4, Symbol4x4};
use num_complex::Complex64;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FbcsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ShapeMismatch = 3,
    ClosedFormUnavailable = 4,
    NotDivergenceFree = 5,
    NonConvergence = 6,
    Inadmissible = 7,
    Io = 8,
    Format = 9,
    Panic = 99,
}

/// Physical parameters, field for field as in the Rust API.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FbcsPhysParams {
    pub nu: f64,
    pub kappa: f64,
    pub gravity: f64,
    pub omega: f64,
    pub brunt: f64,
    pub alpha: f64,
}

impl From<FbcsPhysParams> for PhysParams {
    fn from(p: FbcsPhysParams) -> Self {
        PhysParams { nu: p.nu, kappa: p.kappa, gravity: p.gravity, omega: p.omega, brunt: p.brunt, alpha: p.alpha }
    }
}

/// Norm indices; `r = INFINITY` selects the supremum over blocks.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FbcsNormParams {
    pub s: f64,
    pub q: f64,
    pub mu: f64,
    pub r: f64,
}

impl From<FbcsNormParams> for NormParams {
    fn from(n: FbcsNormParams) -> Self {
        let r = if n.r.is_infinite() { Exponent::Infinity } else { Exponent::Finite(n.r) };
        NormParams::new(n.s, n.q, n.mu, r)
    }
}

/// Summary of a Picard solve.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FbcsContraction {
    pub y_norm: f64,
    pub k_emp: f64,
    pub final_norm: f64,
    pub residual: f64,
    pub iterations: u32,
    pub converged: bool,
}

/// `0` selects the corrected matrix entries, `1` the literal ones.
pub const FBCS_CONVENTION_CORRECTED: i32 = 0;
pub const FBCS_CONVENTION_LITERAL: i32 = 1;

/// Opaque grid handle.
pub struct FbcsGrid(GridSpec);

/// Opaque four-component spectral field handle.
pub struct FbcsField(SpectralField4);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> FbcsStatus {
    match e {
        Error::ShapeMismatch { .. } | Error::GridMismatch => FbcsStatus::ShapeMismatch,
        Error::ClosedFormUnavailable { .. } => FbcsStatus::ClosedFormUnavailable,
        Error::NotDivergenceFree(_) => FbcsStatus::NotDivergenceFree,
        Error::NonConvergence { .. } => FbcsStatus::NonConvergence,
        Error::Inadmissible(_) => FbcsStatus::Inadmissible,
        Error::Io(_) => FbcsStatus::Io,
        Error::Snapshot(_) | Error::Json(_) | Error::Config(_) => FbcsStatus::Format,
        Error::InvalidGrid(_) | Error::InvalidParameter(_) | Error::ZeroWavenumber => FbcsStatus::InvalidArgument,
    }
}

enum Fail {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FbcsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FbcsStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            FbcsStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            FbcsStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &'static str) -> Result<&'a [f64], Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a>(p: *mut f64, len: usize, what: &'static str) -> Result<&'a mut [f64], Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn path_of(p: *const c_char) -> Result<PathBuf, Fail> {
    if p.is_null() {
        return Err(Fail::Null("path"));
    }
    let s = CStr::from_ptr(p).to_str().map_err(|_| Error::InvalidParameter("path is not UTF-8".into()))?;
    Ok(PathBuf::from(s))
}

fn convention(c: i32) -> Result<Convention, Fail> {
    match c {
        FBCS_CONVENTION_CORRECTED => Ok(Convention::Corrected),
        FBCS_CONVENTION_LITERAL => Ok(Convention::Literal),
        other => Err(Error::InvalidParameter(format!("unknown convention {other}")).into()),
    }
}

fn unpack(grid: &GridSpec, data: &[f64]) -> Result<[Vec<Complex64>; 4], Fail> {
    let n = grid.len();
    if data.len() != 8 * n {
        return Err(Error::ShapeMismatch { expected: 8 * n, got: data.len() }.into());
    }
    Ok(std::array::from_fn(|c| (0..n).map(|i| Complex64::new(data[2 * (c * n + i)], data[2 * (c * n + i) + 1])).collect()))
}

fn pack(comps: &[Vec<Complex64>; 4], dst: &mut [f64]) -> Result<(), Fail> {
    let n = comps[0].len();
    if dst.len() != 8 * n {
        return Err(Error::ShapeMismatch { expected: 8 * n, got: dst.len() }.into());
    }
    for (c, comp) in comps.iter().enumerate() {
        for (i, z) in comp.iter().enumerate() {
            dst[2 * (c * n + i)] = z.re;
            dst[2 * (c * n + i) + 1] = z.im;
        }
    }
    Ok(())
}

fn write_matrix(m: &Symbol4x4, dst: &mut [f64]) {
    for r in 0..4 {
        for c in 0..4 {
            dst[4 * r + c] = m.0[(r, c)];
        }
    }
}

fn box_out<T>(value: T, dst: *mut *mut T) -> Result<(), Fail> {
    let slot = unsafe { out(dst, "output handle")? };
    *slot = Box::into_raw(Box::new(value));
    Ok(())
}

/// Copies the last error message (NUL-terminated, truncated to `len`) and
/// returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn fbcs_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn fbcs_grid_new(n_per_axis: usize, box_length: f64, out: *mut *mut FbcsGrid) -> FbcsStatus {
    guard(|| box_out(FbcsGrid(GridSpec::new(n_per_axis, box_length)?), out))
}

/// # Safety
/// `grid` must come from [`fbcs_grid_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fbcs_grid_free(grid: *mut FbcsGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Number of lattice modes `n^3`, or 0 for a null grid.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fbcs_grid_len(grid: *const FbcsGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.0.len())
}

/// # Safety
/// `grid` must be a live handle and `out` valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn fbcs_field_zeros(grid: *const FbcsGrid, out: *mut *mut FbcsField) -> FbcsStatus {
    guard(|| {
        let g = deref(grid, "grid")?;
        box_out(FbcsField(SpectralField4::zeros(g.0)), out)
    })
}

/// # Safety
/// `field` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fbcs_field_free(field: *mut FbcsField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Forward transform of physical samples (`len = 8 n^3` doubles).
///
/// # Safety
/// `samples` must be valid for `len` doubles; `out` valid for a pointer.
#[no_mangle]
pub unsafe extern "C" fn fbcs_field_from_physical(grid: *const FbcsGrid, samples: *const f64, len: usize, out: *mut *mut FbcsField) -> FbcsStatus {
    guard(|| {
        let g = deref(grid, "grid")?;
        let comps = unpack(&g.0, slice(samples, len, "samples")?)?;
        let f = fbcs_core::forward_transform(&g.0, &comps)?;
        box_out(FbcsField(f), out)
    })
}

/// Inverse transform into `dst` (`len = 8 n^3` doubles).
///
/// # Safety
/// `field` must be live; `dst` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fbcs_field_to_physical(field: *const FbcsField, dst: *mut f64, len: usize) -> FbcsStatus {
    guard(|| {
        let f = deref(field, "field")?;
        let samples = fbcs_core::inverse_transform(&f.0);
        pack(&samples, slice_mut(dst, len, "dst")?)
    })
}

/// Field from spectral coefficients (`len = 8 n^3` doubles).
///
/// # Safety
/// `coeffs` must be valid for `len` doubles; `out` valid for a pointer.
#[no_mangle]
pub unsafe extern "C" fn fbcs_field_from_coeffs(
    grid: *const FbcsGrid,
    coeffs: *const f64,
    len: usize,
    real_valued: bool,
    out: *mut *mut FbcsField,
) -> FbcsStatus {
    guard(|| {
        let g = deref(grid, "grid")?;
        let comps = unpack(&g.0, slice(coeffs, len, "coeffs")?)?;
        box_out(FbcsField(SpectralField4::from_components(g.0, comps, real_valued)?), out)
    })
}

/// # Safety
/// `field` must be live; `dst` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn fbcs_field_coeffs(field: *const FbcsField, dst: *mut f64, len: usize) -> FbcsStatus {
    guard(|| {
        let f = deref(field, "field")?;
        pack(&f.0.comps, slice_mut(dst, len, "dst")?)
    })
}

/// Relative divergence of the velocity part.
///
/// # Safety
/// `field` must be live; `out` valid for a double.
#[no_mangle]
pub unsafe extern "C" fn fbcs_field_divergence_defect(field: *const FbcsField, out: *mut f64) -> FbcsStatus {
    guard(|| {
        let f = deref(field, "field")?;
        *self::out(out, "out")? = f.0.divergence_defect();
        Ok(())
    })
}

/// Closed-form semigroup symbol at `xi` (3 doubles), row-major into `dst` (16 doubles).
///
/// # Safety
/// `xi` valid for 3 doubles, `params` for one struct, `dst` for 16 doubles.
#[no_mangle]
pub unsafe extern "C" fn fbcs_semigroup_symbol(
    xi: *const f64,
    t: f64,
    params: *const FbcsPhysParams,
    convention_code: i32,
    dst: *mut f64,
) -> FbcsStatus {
    guard(|| {
        let xi: [f64; 3] = slice(xi, 3, "xi")?.try_into().expect("3 entries");
        let p: PhysParams = (*deref(params, "params")?).into();
        let m = semigroup_symbol_with(&xi, t, &p, convention(convention_code)?)?;
        write_matrix(&m, slice_mut(dst, 16, "dst")?);
        Ok(())
    })
}

/// Dense matrix exponential of the generator at `xi`, row-major (16 doubles).
///
/// # Safety
/// As for [`fbcs_semigroup_symbol`].
#[no_mangle]
pub unsafe extern "C" fn fbcs_oracle_symbol(xi: *const f64, t: f64, params: *const FbcsPhysParams, dst: *mut f64) -> FbcsStatus {
    guard(|| {
        let xi: [f64; 3] = slice(xi, 3, "xi")?.try_into().expect("3 entries");
        let p: PhysParams = (*deref(params, "params")?).into();
        let m = matrix_exponential_oracle(&xi, t, &p)?;
        write_matrix(&m, slice_mut(dst, 16, "dst")?);
        Ok(())
    })
}

/// Helmholtz projector at `xi`, row-major (16 doubles).
///
/// # Safety
/// `xi` valid for 3 doubles, `dst` for 16.
#[no_mangle]
pub unsafe extern "C" fn fbcs_helmholtz_symbol(xi: *const f64, dst: *mut f64) -> FbcsStatus {
    guard(|| {
        let xi: [f64; 3] = slice(xi, 3, "xi")?.try_into().expect("3 entries");
        write_matrix(&helmholtz_symbol(&xi)?, slice_mut(dst, 16, "dst")?);
        Ok(())
    })
}

/// `L = max(2, |omega|/N, N/|omega|)`.
///
/// # Safety
/// `params` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fbcs_coupling_bound(params: *const FbcsPhysParams, out: *mut f64) -> FbcsStatus {
    guard(|| {
        let p: PhysParams = (*deref(params, "params")?).into();
        *self::out(out, "out")? = coupling_bound_l(&p)?;
        Ok(())
    })
}

/// `S(t) field` into a new handle.
///
/// # Safety
/// `field`, `params` live; `out` valid for a pointer.
#[no_mangle]
pub unsafe extern "C" fn fbcs_apply_semigroup(
    field: *const FbcsField,
    t: f64,
    params: *const FbcsPhysParams,
    convention_code: i32,
    out: *mut *mut FbcsField,
) -> FbcsStatus {
    guard(|| {
        let f = deref(field, "field")?;
        let p: PhysParams = (*deref(params, "params")?).into();
        let r = apply_semigroup_with(&f.0, t, &p, Dynamics::Fbcs, convention(convention_code)?)?;
        box_out(FbcsField(r), out)
    })
}

/// Fourier-Besov-Morrey norm of a field.
///
/// # Safety
/// `field`, `norm` live; `out` valid for a double.
#[no_mangle]
pub unsafe extern "C" fn fbcs_fbm_norm(field: *const FbcsField, norm: *const FbcsNormParams, out: *mut f64) -> FbcsStatus {
    guard(|| {
        let f = deref(field, "field")?;
        let n: NormParams = (*deref(norm, "norm")?).into();
        let part = build_lp_partition(&f.0.grid)?;
        *self::out(out, "out")? = fbm_norm(&f.0, &n, &part)?;
        Ok(())
    })
}

/// Picard solve on `steps` uniform steps over `[0, horizon]`. On success
/// `out_final` receives the solution at `horizon`; `report` is filled
/// whenever it is non-null, including on non-convergence.
///
/// # Safety
/// Handles and structs live; `report` null or valid; `out_final` valid for a pointer.
#[no_mangle]
pub unsafe extern "C" fn fbcs_picard_solve(
    v0: *const FbcsField,
    params: *const FbcsPhysParams,
    norm: *const FbcsNormParams,
    horizon: f64,
    steps: usize,
    tol: f64,
    max_iter: usize,
    report: *mut FbcsContraction,
    out_final: *mut *mut FbcsField,
) -> FbcsStatus {
    guard(|| {
        let v = deref(v0, "v0")?;
        let p: PhysParams = (*deref(params, "params")?).into();
        let n: NormParams = (*deref(norm, "norm")?).into();
        match picard_solve(&v.0, &p, &n, horizon, steps, tol, max_iter) {
            Ok((traj, rep)) => {
                if let Some(r) = report.as_mut() {
                    *r = FbcsContraction {
                        y_norm: rep.y_norm,
                        k_emp: rep.k_emp,
                        final_norm: rep.final_norm,
                        residual: rep.residual,
                        iterations: rep.iterates.len() as u32,
                        converged: rep.converged,
                    };
                }
                box_out(FbcsField(traj.last().clone()), out_final)
            }
            Err(e) => {
                if let (Some(r), Error::NonConvergence { distances }) = (report.as_mut(), &e) {
                    *r = FbcsContraction { iterations: distances.len() as u32, ..FbcsContraction::default() };
                }
                Err(e.into())
            }
        }
    })
}

/// # Safety
/// `field` live; `path` a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn fbcs_snapshot_write(field: *const FbcsField, time: f64, path: *const c_char) -> FbcsStatus {
    guard(|| {
        let f = deref(field, "field")?;
        fbcs_core::snapshot::write_snapshot(&path_of(path)?, &f.0, time)?;
        Ok(())
    })
}

/// Reads a snapshot into a new field handle; `grid_out` (optional) receives
/// a new grid handle matching the file.
///
/// # Safety
/// `path` NUL-terminated; `out` valid for a pointer; `time` and `grid_out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn fbcs_snapshot_read(
    path: *const c_char,
    out: *mut *mut FbcsField,
    time: *mut f64,
    grid_out: *mut *mut FbcsGrid,
) -> FbcsStatus {
    guard(|| {
        let (f, t) = fbcs_core::snapshot::read_snapshot(&path_of(path)?)?;
        if let Some(slot) = time.as_mut() {
            *slot = t;
        }
        if !grid_out.is_null() {
            box_out(FbcsGrid(f.grid), grid_out)?;
        }
        box_out(FbcsField(f), out)
    })
}
