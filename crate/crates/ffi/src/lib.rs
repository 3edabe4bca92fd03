//! C interface to ratpoly.
//!
//! Polygons are passed as opaque `RpPolygon` handles owned by the caller and
//! released with `rp_polygon_free`. Every fallible function returns an
//! `RpStatus`; on failure `rp_last_error` describes the problem for the
//! calling thread.

use ratpoly::classify::{maximal_polygons, Method};
use ratpoly::ehrhart::{ehrhart, evaluate};
use ratpoly::geom::{normalized_volume, tally, Point, ScaledPolygon};
use ratpoly::maximality::is_k_maximal;
use ratpoly::normal_form::{anfk, anfk_key};
use ratpoly::storage::encode_key;
use ratpoly::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    Overflow = 4,
    Verification = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RpMethod {
    Auto = 0,
    Strip = 1,
    Generic = 2,
}

/// A k-rational polygon, stored through the vertices of kP.
pub struct RpPolygon {
    inner: ScaledPolygon,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RpStatus {
    match e {
        Error::Overflow(_) => RpStatus::Overflow,
        Error::Degenerate => RpStatus::Degenerate,
        Error::Verification(_) => RpStatus::Verification,
        Error::Invalid(_) => RpStatus::InvalidArgument,
        _ => RpStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (RpStatus, String)>) -> RpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RpStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            RpStatus::Internal
        }
    }
}

fn lib<T>(r: ratpoly::Result<T>) -> Result<T, (RpStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (RpStatus, String) {
    (RpStatus::NullPointer, "null pointer argument".into())
}

unsafe fn poly<'a>(p: *const RpPolygon) -> Result<&'a ScaledPolygon, (RpStatus, String)> {
    p.as_ref().map(|p| &p.inner).ok_or_else(null)
}

fn boxed(inner: ScaledPolygon) -> *mut RpPolygon {
    Box::into_raw(Box::new(RpPolygon { inner }))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds conv(points / k) from `n` points given as interleaved x, y pairs.
///
/// # Safety
/// `xy` must point to `2 * n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_polygon_new(k: i64, xy: *const i64, n: usize, out: *mut *mut RpPolygon) -> RpStatus {
    guard(|| {
        if xy.is_null() || out.is_null() {
            return Err(null());
        }
        let raw = std::slice::from_raw_parts(xy, 2 * n);
        let pts: Vec<Point> = raw.chunks(2).map(|c| Point::new(c[0], c[1])).collect();
        let p = lib(ScaledPolygon::from_points(k, &pts))?;
        *out = boxed(p);
        Ok(())
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn rp_polygon_free(p: *mut RpPolygon) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rp_polygon_k(p: *const RpPolygon) -> i64 {
    p.as_ref().map_or(0, |p| p.inner.k())
}

/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rp_polygon_num_vertices(p: *const RpPolygon) -> usize {
    p.as_ref().map_or(0, |p| p.inner.len())
}

/// Copies the counterclockwise vertices of kP as x, y pairs into `xy`,
/// which has room for `cap` values.
///
/// # Safety
/// `p` must be a live handle and `xy` must point to `cap` writable values.
#[no_mangle]
pub unsafe extern "C" fn rp_polygon_vertices(p: *const RpPolygon, xy: *mut i64, cap: usize) -> RpStatus {
    guard(|| {
        let p = poly(p)?;
        if xy.is_null() {
            return Err(null());
        }
        if cap < 2 * p.len() {
            return Err((RpStatus::BufferTooSmall, format!("need {} values", 2 * p.len())));
        }
        for (j, v) in p.vertices().iter().enumerate() {
            *xy.add(2 * j) = v.x;
            *xy.add(2 * j + 1) = v.y;
        }
        Ok(())
    })
}

/// Interior, boundary and total lattice point counts.
///
/// # Safety
/// `p` must be a live handle and the outputs writable.
#[no_mangle]
pub unsafe extern "C" fn rp_polygon_tally(p: *const RpPolygon, interior: *mut u64, boundary: *mut u64, total: *mut u64) -> RpStatus {
    guard(|| {
        let p = poly(p)?;
        if interior.is_null() || boundary.is_null() || total.is_null() {
            return Err(null());
        }
        let t = lib(tally(p))?;
        (*interior, *boundary, *total) = (t.i, t.b, t.l);
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp_polygon_normalized_volume(p: *const RpPolygon, out: *mut i64) -> RpStatus {
    guard(|| {
        let p = poly(p)?;
        if out.is_null() {
            return Err(null());
        }
        *out = lib(normalized_volume(p))?;
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp_polygon_is_maximal(p: *const RpPolygon, out: *mut bool) -> RpStatus {
    guard(|| {
        let p = poly(p)?;
        if out.is_null() {
            return Err(null());
        }
        *out = lib(is_k_maximal(p))?;
        Ok(())
    })
}

/// Number of lattice points of tP.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp_polygon_ehrhart(p: *const RpPolygon, t: i64, out: *mut u64) -> RpStatus {
    guard(|| {
        let p = poly(p)?;
        if out.is_null() {
            return Err(null());
        }
        let q = lib(ehrhart(p))?;
        *out = lib(evaluate(&q, t))? as u64;
        Ok(())
    })
}

/// The canonical representative under affine unimodular maps with
/// translations in kZ², as a new handle.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp_polygon_normal_form(p: *const RpPolygon, out: *mut *mut RpPolygon) -> RpStatus {
    guard(|| {
        let p = poly(p)?;
        if out.is_null() {
            return Err(null());
        }
        let nf = lib(anfk(p).and_then(|f| f.to_polygon()))?;
        *out = boxed(nf);
        Ok(())
    })
}

/// Dataset line of the polygon's class, `k:x1,y1;...`. Free the string with
/// `rp_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp_polygon_encode(p: *const RpPolygon, out: *mut *mut c_char) -> RpStatus {
    guard(|| {
        let p = poly(p)?;
        if out.is_null() {
            return Err(null());
        }
        let line = encode_key(p.k(), &lib(anfk_key(p))?);
        *out = CString::new(line).map_err(|e| (RpStatus::Internal, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of k-maximal polygons with i interior lattice points.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_count_maximal(k: i64, i: u64, method: RpMethod, out: *mut usize) -> RpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let m = match method {
            RpMethod::Auto => Method::Auto,
            RpMethod::Strip => Method::Strip,
            RpMethod::Generic => Method::Generic,
        };
        *out = lib(maximal_polygons(k, i, m, None))?.len();
        Ok(())
    })
}
