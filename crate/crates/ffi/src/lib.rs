//! C ABI for the four-qubit hyperdeterminant toolkit.
//!
//! Handles are opaque pointers allocated by the library and released with
//! the matching `_free` functions. Every fallible call returns an
//! [`Hd4Status`] code; the thread-local message behind
//! [`hd4_last_error_message`] carries the detail of the most recent error on
//! the calling thread. Strings returned by the library are NUL-terminated
//! and must be released with [`hd4_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::ptr;

use hyperdet4::critpoint::criticality_residual;
use hyperdet4::hyperdet::{det4, det_a};
use hyperdet4::luequiv::lu_search;
use hyperdet4::orbit::{is_generic, kempf_ness_residual, norm_min_probe, tangent_map};
use hyperdet4::qstate::{
    avector_to_json, embed_a, parse_state_json, project_a, state_l, state_lprime, state_to_json,
    AVector, LoadedState, QuartState,
};
use hyperdet4::vmax::{maximize_det_a, maximize_vn};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Hd4Status {
    Ok = 0,
    NullPointer = 1,
    InvalidJson = 2,
    InvalidArgument = 3,
    NotInSubspace = 4,
    InternalError = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Message of the most recent error on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn hd4_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|c| c.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Opaque four-qubit state handle.
pub struct Hd4State {
    inner: QuartState,
}

/// Opaque coordinate-vector handle (a point of the subspace A).
pub struct Hd4AVector {
    inner: AVector,
}

unsafe fn read_json(json: *const c_char) -> Result<LoadedState, Hd4Status> {
    if json.is_null() {
        set_error("null JSON pointer".into());
        return Err(Hd4Status::NullPointer);
    }
    let text = match std::ffi::CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("JSON is not valid UTF-8".into());
            return Err(Hd4Status::InvalidJson);
        }
    };
    parse_state_json(text).map_err(|e| {
        set_error(format!("{e}"));
        Hd4Status::InvalidJson
    })
}

/// Parse a state from JSON (`{"amplitudes": [[re,im] x 16]}` or
/// `{"z": [[re,im] x 4]}`, the latter embedded into the full representation).
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd4_state_from_json(
    json: *const c_char,
    out: *mut *mut Hd4State,
) -> Hd4Status {
    if out.is_null() {
        set_error("null output pointer".into());
        return Hd4Status::NullPointer;
    }
    match read_json(json) {
        Ok(loaded) => {
            let state = Box::new(Hd4State {
                inner: loaded.to_state(),
            });
            *out = Box::into_raw(state);
            Hd4Status::Ok
        }
        Err(status) => status,
    }
}

/// # Safety
/// `handle` must come from this library and not already be freed.
#[no_mangle]
pub unsafe extern "C" fn hd4_state_free(handle: *mut Hd4State) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Parse a coordinate vector from JSON (`{"z": [[re,im] x 4]}`), or project a
/// full state onto A when the projection residual is below 1e-10.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd4_avector_from_json(
    json: *const c_char,
    out: *mut *mut Hd4AVector,
) -> Hd4Status {
    if out.is_null() {
        set_error("null output pointer".into());
        return Hd4Status::NullPointer;
    }
    let loaded = match read_json(json) {
        Ok(l) => l,
        Err(status) => return status,
    };
    let z = match loaded {
        LoadedState::Coords(z) => z,
        LoadedState::Full(psi) => {
            let (z, residual) = project_a(&psi);
            if residual > 1e-10 {
                set_error(format!("state is not in A (residual {residual:.3e})"));
                return Hd4Status::NotInSubspace;
            }
            z
        }
    };
    *out = Box::into_raw(Box::new(Hd4AVector { inner: z }));
    Hd4Status::Ok
}

/// # Safety
/// `handle` must come from this library and not already be freed.
#[no_mangle]
pub unsafe extern "C" fn hd4_avector_free(handle: *mut Hd4AVector) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// The reference maximizer L as a coordinate-vector handle.
#[no_mangle]
pub extern "C" fn hd4_state_l() -> *mut Hd4AVector {
    Box::into_raw(Box::new(Hd4AVector { inner: state_l() }))
}

/// The companion maximizer L′.
#[no_mangle]
pub extern "C" fn hd4_state_lprime() -> *mut Hd4AVector {
    Box::into_raw(Box::new(Hd4AVector {
        inner: state_lprime(),
    }))
}

/// Hyperdeterminant of a full state via the calibrated pencil construction.
///
/// # Safety
/// All pointers must be valid; `handle` must be a live state handle.
#[no_mangle]
pub unsafe extern "C" fn hd4_det4(
    handle: *const Hd4State,
    out_re: *mut f64,
    out_im: *mut f64,
) -> Hd4Status {
    if handle.is_null() || out_re.is_null() || out_im.is_null() {
        set_error("null pointer".into());
        return Hd4Status::NullPointer;
    }
    let d = det4(&(*handle).inner);
    *out_re = d.re;
    *out_im = d.im;
    Hd4Status::Ok
}

/// Hyperdeterminant of a coordinate vector via the restriction formula.
///
/// # Safety
/// All pointers must be valid; `handle` must be a live coordinate handle.
#[no_mangle]
pub unsafe extern "C" fn hd4_det_a(
    handle: *const Hd4AVector,
    out_re: *mut f64,
    out_im: *mut f64,
) -> Hd4Status {
    if handle.is_null() || out_re.is_null() || out_im.is_null() {
        set_error("null pointer".into());
        return Hd4Status::NullPointer;
    }
    let d = det_a(&(*handle).inner);
    *out_re = d.re;
    *out_im = d.im;
    Hd4Status::Ok
}

/// Generic-set test: writes 1 when the SL-orbit tangent rank is 12.
///
/// # Safety
/// All pointers must be valid; `handle` must be a live state handle.
#[no_mangle]
pub unsafe extern "C" fn hd4_is_generic(
    handle: *const Hd4State,
    out_generic: *mut i32,
    out_rank: *mut i32,
) -> Hd4Status {
    if handle.is_null() || out_generic.is_null() || out_rank.is_null() {
        set_error("null pointer".into());
        return Hd4Status::NullPointer;
    }
    let t = tangent_map(&(*handle).inner);
    *out_rank = t.rank as i32;
    *out_generic = i32::from(is_generic(&(*handle).inner));
    Hd4Status::Ok
}

/// Kempf-Ness orthogonality residual max_k |⟨z, X_k z⟩|.
///
/// # Safety
/// All pointers must be valid; `handle` must be a live coordinate handle.
#[no_mangle]
pub unsafe extern "C" fn hd4_kempf_ness_residual(
    handle: *const Hd4AVector,
    out: *mut f64,
) -> Hd4Status {
    if handle.is_null() || out.is_null() {
        set_error("null pointer".into());
        return Hd4Status::NullPointer;
    }
    *out = kempf_ness_residual(&(*handle).inner);
    Hd4Status::Ok
}

/// Sampled orbit norm-minimality probe: min ‖g·z‖/‖z‖ over `samples`
/// determinant-one perturbations.
///
/// # Safety
/// All pointers must be valid; `handle` must be a live coordinate handle.
#[no_mangle]
pub unsafe extern "C" fn hd4_norm_min_probe(
    handle: *const Hd4AVector,
    samples: usize,
    seed: u64,
    out: *mut f64,
) -> Hd4Status {
    if handle.is_null() || out.is_null() {
        set_error("null pointer".into());
        return Hd4Status::NullPointer;
    }
    match norm_min_probe(&(*handle).inner, samples, seed) {
        Ok(r) => {
            *out = r;
            Hd4Status::Ok
        }
        Err(e) => {
            set_error(format!("{e}"));
            Hd4Status::InvalidArgument
        }
    }
}

/// First-order criticality certificate of a coordinate vector on Δ, as a
/// JSON string (free with [`hd4_string_free`]).
///
/// # Safety
/// All pointers must be valid; `handle` must be a live coordinate handle.
#[no_mangle]
pub unsafe extern "C" fn hd4_certify_json(
    handle: *const Hd4AVector,
    out: *mut *mut c_char,
) -> Hd4Status {
    if handle.is_null() || out.is_null() {
        set_error("null pointer".into());
        return Hd4Status::NullPointer;
    }
    let report = criticality_residual(&(*handle).inner);
    match serde_json::to_string(&report) {
        Ok(json) => {
            *out = CString::new(json).expect("no NUL in JSON").into_raw();
            Hd4Status::Ok
        }
        Err(e) => {
            set_error(format!("{e}"));
            Hd4Status::InternalError
        }
    }
}

/// Multistart maximization of |V_n| under the L1 constraint; the full
/// report is returned as JSON (free with [`hd4_string_free`]).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd4_maximize_vn_json(
    n: usize,
    restarts: usize,
    seed: u64,
    tol: f64,
    out: *mut *mut c_char,
) -> Hd4Status {
    if out.is_null() {
        set_error("null output pointer".into());
        return Hd4Status::NullPointer;
    }
    match maximize_vn(n, restarts, seed, tol) {
        Ok(report) => match serde_json::to_string(&report) {
            Ok(json) => {
                *out = CString::new(json).expect("no NUL in JSON").into_raw();
                Hd4Status::Ok
            }
            Err(e) => {
                set_error(format!("{e}"));
                Hd4Status::InternalError
            }
        },
        Err(e) => {
            set_error(format!("{e}"));
            Hd4Status::InvalidArgument
        }
    }
}

/// Multistart maximization of |Det| on the unit sphere of A, as JSON (free
/// with [`hd4_string_free`]).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd4_maximize_det_a_json(
    restarts: usize,
    seed: u64,
    tol: f64,
    out: *mut *mut c_char,
) -> Hd4Status {
    if out.is_null() {
        set_error("null output pointer".into());
        return Hd4Status::NullPointer;
    }
    match maximize_det_a(restarts, seed, tol) {
        Ok(report) => match serde_json::to_string(&report) {
            Ok(json) => {
                *out = CString::new(json).expect("no NUL in JSON").into_raw();
                Hd4Status::Ok
            }
            Err(e) => {
                set_error(format!("{e}"));
                Hd4Status::InternalError
            }
        },
        Err(e) => {
            set_error(format!("{e}"));
            Hd4Status::InvalidArgument
        }
    }
}

/// Best LU fidelity |⟨b, (V₁⊗V₂⊗V₃⊗V₄)a⟩| over SU(2)^⊗4 (multistart).
/// Inputs are normalized internally; fails on zero states.
///
/// # Safety
/// All pointers must be valid; the state handles must be live.
#[no_mangle]
pub unsafe extern "C" fn hd4_lu_fidelity(
    a: *const Hd4State,
    b: *const Hd4State,
    restarts: usize,
    seed: u64,
    out: *mut f64,
) -> Hd4Status {
    if a.is_null() || b.is_null() || out.is_null() {
        set_error("null pointer".into());
        return Hd4Status::NullPointer;
    }
    let (na, nb) = ((*a).inner.norm(), (*b).inner.norm());
    if na == 0.0 || nb == 0.0 {
        set_error("zero state".into());
        return Hd4Status::InvalidArgument;
    }
    match lu_search(
        &(*a).inner.normalized(),
        &(*b).inner.normalized(),
        restarts,
        seed,
    ) {
        Ok((fidelity, _)) => {
            *out = fidelity;
            Hd4Status::Ok
        }
        Err(e) => {
            set_error(format!("{e}"));
            Hd4Status::InvalidArgument
        }
    }
}

/// Serialize a state handle back to JSON (free with [`hd4_string_free`]).
///
/// # Safety
/// All pointers must be valid; `handle` must be a live state handle.
#[no_mangle]
pub unsafe extern "C" fn hd4_state_to_json(
    handle: *const Hd4State,
    out: *mut *mut c_char,
) -> Hd4Status {
    if handle.is_null() || out.is_null() {
        set_error("null pointer".into());
        return Hd4Status::NullPointer;
    }
    let json = state_to_json(&(*handle).inner);
    *out = CString::new(json).expect("no NUL in JSON").into_raw();
    Hd4Status::Ok
}

/// Serialize a coordinate handle to JSON (free with [`hd4_string_free`]).
///
/// # Safety
/// All pointers must be valid; `handle` must be a live coordinate handle.
#[no_mangle]
pub unsafe extern "C" fn hd4_avector_to_json(
    handle: *const Hd4AVector,
    out: *mut *mut c_char,
) -> Hd4Status {
    if handle.is_null() || out.is_null() {
        set_error("null pointer".into());
        return Hd4Status::NullPointer;
    }
    let json = avector_to_json(&(*handle).inner);
    *out = CString::new(json).expect("no NUL in JSON").into_raw();
    Hd4Status::Ok
}

/// Embed a coordinate handle into a full state handle.
///
/// # Safety
/// All pointers must be valid; `handle` must be a live coordinate handle.
#[no_mangle]
pub unsafe extern "C" fn hd4_avector_embed(
    handle: *const Hd4AVector,
    out: *mut *mut Hd4State,
) -> Hd4Status {
    if handle.is_null() || out.is_null() {
        set_error("null pointer".into());
        return Hd4Status::NullPointer;
    }
    *out = Box::into_raw(Box::new(Hd4State {
        inner: embed_a(&(*handle).inner),
    }));
    Hd4Status::Ok
}

/// Release a string allocated by this library.
///
/// # Safety
/// `s` must have been returned by this library and not already freed.
#[no_mangle]
pub unsafe extern "C" fn hd4_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string (do not free).
#[no_mangle]
pub extern "C" fn hd4_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
