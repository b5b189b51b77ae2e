//! C interface to `disto`.
//!
//! Every fallible function returns a [`DistoStatus`] and writes its result
//! through an out pointer. After a non-`Ok` status, [`disto_last_error`]
//! returns a message for the calling thread. Handles are opaque and must be
//! released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use disto::annulus;
use disto::distortion;
use disto::{Ball, Error, Presentation, Rewriter};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    Parse = 3,
    BudgetExceeded = 4,
    OutsideBall = 5,
    Horizon = 6,
    Violation = 7,
    Internal = 8,
}

/// A closed surface group with its Dehn rewriter.
pub struct DistoGroup {
    presentation: Presentation,
    rewriter: Rewriter,
}

/// An enumerated ball of the Cayley graph.
pub struct DistoBall {
    ball: Ball,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("interior NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> DistoStatus {
    match e {
        Error::InvalidParameter(_) => DistoStatus::InvalidParameter,
        Error::Parse(_) | Error::Json(_) => DistoStatus::Parse,
        Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => DistoStatus::BudgetExceeded,
        Error::OutsideBall { .. } => DistoStatus::OutsideBall,
        Error::Horizon(_) => DistoStatus::Horizon,
        Error::Violation(_) => DistoStatus::Violation,
        Error::Io(_) => DistoStatus::Internal,
    }
}

enum Failure {
    Null(&'static str),
    Disto(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Disto(e)
    }
}

/// Runs `body`, records any failure, and turns panics into `Internal`.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> DistoStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DistoStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(&format!("{what} is NULL"));
            DistoStatus::NullPointer
        }
        Ok(Err(Failure::Disto(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            DistoStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Disto(Error::Parse(format!("{what} is not UTF-8"))))
}

/// The message for the last failure on this thread, or an empty string.
/// Valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn disto_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// The fundamental group of the closed orientable surface of genus `genus ≥ 2`.
///
/// # Safety
/// `out_group` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn disto_group_new(genus: usize, out_group: *mut *mut DistoGroup) -> DistoStatus {
    guard(|| {
        let slot = out(out_group, "out_group")?;
        let presentation = Presentation::closed_surface(genus)?;
        let rewriter = Rewriter::new(&presentation)?;
        *slot = Box::into_raw(Box::new(DistoGroup { presentation, rewriter }));
        Ok(())
    })
}

/// # Safety
/// `group` must come from `disto_group_new` and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn disto_group_free(group: *mut DistoGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Whether `word` (letters such as `a1 B2`, uppercase for inverses) is trivial.
///
/// # Safety
/// `group` must be a live handle, `word` a NUL-terminated string, `out_trivial` valid.
#[no_mangle]
pub unsafe extern "C" fn disto_group_is_trivial(group: *const DistoGroup, word: *const c_char, out_trivial: *mut bool) -> DistoStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let w = g.presentation.parse_word(text(word, "word")?)?;
        *out(out_trivial, "out_trivial")? = g.rewriter.is_trivial(&w);
        Ok(())
    })
}

/// Enumerates the ball of radius `radius` around the base face.
///
/// # Safety
/// `group` must be a live handle and `out_ball` valid.
#[no_mangle]
pub unsafe extern "C" fn disto_ball_new(group: *const DistoGroup, radius: usize, out_ball: *mut *mut DistoBall) -> DistoStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let slot = out(out_ball, "out_ball")?;
        let ball = Ball::enumerate(&g.presentation, radius)?;
        *slot = Box::into_raw(Box::new(DistoBall { ball }));
        Ok(())
    })
}

/// # Safety
/// `ball` must come from `disto_ball_new` and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn disto_ball_free(ball: *mut DistoBall) {
    if !ball.is_null() {
        drop(Box::from_raw(ball));
    }
}

/// Writes up to `capacity` sphere sizes into `sizes` and the total count,
/// `radius + 1`, into `out_count`. Pass `capacity = 0` to query the count.
///
/// # Safety
/// `ball` must be a live handle, `sizes` valid for `capacity` writes, `out_count` valid.
#[no_mangle]
pub unsafe extern "C" fn disto_ball_sphere_sizes(ball: *const DistoBall, sizes: *mut usize, capacity: usize, out_count: *mut usize) -> DistoStatus {
    guard(|| {
        let b = deref(ball, "ball")?;
        let all = b.ball.sphere_sizes();
        *out(out_count, "out_count")? = all.len();
        if capacity > 0 {
            if sizes.is_null() {
                return Err(Failure::Null("sizes"));
            }
            let n = capacity.min(all.len());
            ptr::copy_nonoverlapping(all.as_ptr(), sizes, n);
        }
        Ok(())
    })
}

/// Distance between the faces `u(D0)` and `v(D0)`, both inside the ball.
///
/// # Safety
/// `ball` must be a live handle, `u` and `v` NUL-terminated strings, `out_distance` valid.
#[no_mangle]
pub unsafe extern "C" fn disto_ball_distance(ball: *const DistoBall, u: *const c_char, v: *const c_char, out_distance: *mut usize) -> DistoStatus {
    guard(|| {
        let b = &deref(ball, "ball")?.ball;
        let p = b.presentation();
        let fu = b.locate(&p.parse_word(text(u, "u")?)?)?;
        let fv = b.locate(&p.parse_word(text(v, "v")?)?)?;
        *out(out_distance, "out_distance")? = b.distance(fu, fv)?;
        Ok(())
    })
}

/// `14·⌊log2 n⌋ + 14` for `n ≥ 1`.
///
/// # Safety
/// `out_bound` must be valid.
#[no_mangle]
pub unsafe extern "C" fn disto_avila_bound(n: u64, out_bound: *mut u64) -> DistoStatus {
    guard(|| {
        *out(out_bound, "out_bound")? = distortion::avila_bound(n)?;
        Ok(())
    })
}

/// The delay schedule for the reach map `reach[0..len]`, as a JSON string
/// to be released with `disto_string_free`.
///
/// # Safety
/// `reach` must be valid for `len` reads and `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn disto_annulus_schedule_json(reach: *const u64, len: usize, out_json: *mut *mut c_char) -> DistoStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        if reach.is_null() {
            return Err(Failure::Null("reach"));
        }
        let reach = std::slice::from_raw_parts(reach, len);
        let schedule = annulus::schedule_from_reach(reach, None)?;
        let fin = annulus::verify_final(&schedule);
        let json = serde_json::json!({ "schedule": schedule, "trajectory": annulus::crossing_trajectory(&schedule), "final_ok": fin.ok });
        let json = serde_json::to_string(&json).map_err(Error::from)?;
        *slot = CString::new(json).expect("JSON has no NUL bytes").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn disto_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
