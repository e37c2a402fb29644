//! C interface to horofan.
//!
//! Fans and maps live behind opaque handles built from JSON documents. Every function returns a
//! [`HorofanStatus`]; verdict functions return `HOROFAN_STATUS_OK` for a positive answer and
//! `HOROFAN_STATUS_CHECK_FAILED` for a negative one. After any other non-zero status,
//! [`horofan_last_error`] describes what went wrong.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use horofan::cli::document::{
    parse_document, to_canonical_json, Document, FanDocument, MapDocument,
};
use horofan::cli::report::group_json;
use horofan::criteria::{check_gms_morphism, check_isomorphism, gms_fan, is_toroidal};
use horofan::fantastack::{build_fantastack, class_group, cox_beta};
use horofan::lattice::IntMatrix;
use horofan::stacky::{StackyColouredFan, StackyMap};
use horofan::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HorofanStatus {
    Ok = 0,
    /// A verdict came out negative.
    CheckFailed = 1,
    /// The input was malformed or violates the axioms.
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// The library panicked.
    Panic = 5,
}

/// A stacky coloured fan.
pub struct HorofanFan(StackyColouredFan);

/// A map of stacky coloured fans.
pub struct HorofanMap(StackyMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(HorofanStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(HorofanStatus::InputError, e.to_string())
    }
}

type Outcome = Result<HorofanStatus, Failure>;

fn set_error(message: Option<String>) {
    let message = message.map(|m| CString::new(m.replace('\0', " ")).expect("no interior NUL"));
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
}

fn guard(f: impl FnOnce() -> Outcome) -> HorofanStatus {
    set_error(None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, message))) => {
            set_error(Some(message));
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(Some(format!("internal error: {message}")));
            HorofanStatus::Panic
        }
    }
}

fn verdict(passed: bool, failure: impl FnOnce() -> String) -> Outcome {
    if passed {
        Ok(HorofanStatus::Ok)
    } else {
        Err(Failure(HorofanStatus::CheckFailed, failure()))
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(
            HorofanStatus::NullPointer,
            format!("{name} is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(HorofanStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn borrow<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(HorofanStatus::NullPointer, format!("{name} is null")))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(
            HorofanStatus::NullPointer,
            "output pointer is null".into(),
        ))
    } else {
        Ok(())
    }
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    *out = CString::new(s).expect("JSON has no NUL").into_raw();
    Ok(HorofanStatus::Ok)
}

unsafe fn put_fan(out: *mut *mut HorofanFan, s: StackyColouredFan) -> Outcome {
    *out = Box::into_raw(Box::new(HorofanFan(s)));
    Ok(HorofanStatus::Ok)
}

unsafe fn put_map(out: *mut *mut HorofanMap, m: StackyMap) -> Outcome {
    *out = Box::into_raw(Box::new(HorofanMap(m)));
    Ok(HorofanStatus::Ok)
}

/// Message for the last failing call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn horofan_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn horofan_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a fan document.
///
/// # Safety
/// `json` must be null or a NUL-terminated string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn horofan_fan_from_json(
    json: *const c_char,
    out: *mut *mut HorofanFan,
) -> HorofanStatus {
    guard(|| {
        let json = text(json, "json")?;
        check_out(out)?;
        match parse_document(json.as_bytes())? {
            Document::Fan(doc) => put_fan(out, doc.stacky()?),
            Document::Map(_) => Err(Failure(
                HorofanStatus::InputError,
                "expected a fan document, found a map".into(),
            )),
        }
    })
}

/// # Safety
/// `fan` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn horofan_fan_free(fan: *mut HorofanFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Canonical JSON document; free with [`horofan_string_free`].
///
/// # Safety
/// `fan` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn horofan_fan_to_json(
    fan: *const HorofanFan,
    out: *mut *mut c_char,
) -> HorofanStatus {
    guard(|| {
        let fan = borrow(fan, "fan")?;
        check_out(out)?;
        put_string(out, to_canonical_json(&FanDocument::from_stacky(&fan.0)))
    })
}

/// Whether every colour set of the fan is empty.
///
/// # Safety
/// `fan` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn horofan_fan_is_toroidal(fan: *const HorofanFan) -> HorofanStatus {
    guard(|| {
        let fan = borrow(fan, "fan")?;
        verdict(is_toroidal(fan.0.fan()), || {
            "the fan has coloured cones".into()
        })
    })
}

/// Character group of the stabilizer as JSON with `free_rank`, `torsion` and `name`.
///
/// # Safety
/// `fan` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn horofan_fan_k_beta(
    fan: *const HorofanFan,
    out: *mut *mut c_char,
) -> HorofanStatus {
    guard(|| {
        let fan = borrow(fan, "fan")?;
        check_out(out)?;
        put_string(out, to_canonical_json(&group_json(&fan.0.k_beta())))
    })
}

/// Class group of the underlying coloured fan as JSON; fails the check when colour points and
/// support do not span the lattice.
///
/// # Safety
/// `fan` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn horofan_fan_class_group(
    fan: *const HorofanFan,
    out: *mut *mut c_char,
) -> HorofanStatus {
    guard(|| {
        let fan = borrow(fan, "fan")?;
        check_out(out)?;
        match class_group(fan.0.fan()) {
            Ok(g) => put_string(out, to_canonical_json(&group_json(&g))),
            Err(e @ Error::Cf1Violation) => Err(Failure(HorofanStatus::CheckFailed, e.to_string())),
            Err(e) => Err(e.into()),
        }
    })
}

/// The decolouration with the same stacky structure.
///
/// # Safety
/// `fan` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn horofan_fan_decolour(
    fan: *const HorofanFan,
    out: *mut *mut HorofanFan,
) -> HorofanStatus {
    guard(|| {
        let fan = borrow(fan, "fan")?;
        check_out(out)?;
        put_fan(out, fan.0.decolour())
    })
}

/// The good moduli space map, when the construction succeeds.
///
/// # Safety
/// `fan` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn horofan_fan_gms(
    fan: *const HorofanFan,
    out: *mut *mut HorofanMap,
) -> HorofanStatus {
    guard(|| {
        let fan = borrow(fan, "fan")?;
        check_out(out)?;
        let result = gms_fan(&fan.0)?;
        match result.map(&fan.0) {
            Some(m) => put_map(out, m?),
            None => Err(Failure(
                HorofanStatus::CheckFailed,
                format!("no good moduli space: {}", result.reason),
            )),
        }
    })
}

/// The Cox stack of the underlying coloured fan with its map down to the fan.
///
/// # Safety
/// `fan` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn horofan_fan_cox(
    fan: *const HorofanFan,
    out: *mut *mut HorofanMap,
) -> HorofanStatus {
    guard(|| {
        let fan = borrow(fan, "fan")?;
        check_out(out)?;
        let input = match cox_beta(fan.0.fan()) {
            Ok(i) => i,
            Err(e @ Error::Cf1Violation) => {
                return Err(Failure(HorofanStatus::CheckFailed, e.to_string()))
            }
            Err(e) => return Err(e.into()),
        };
        let stack = build_fantastack(&input)?;
        let base = StackyColouredFan::identity(input.base_fan().clone());
        let identity = IntMatrix::identity(input.base_fan().rank());
        put_map(
            out,
            StackyMap::new(stack, base, input.beta().clone(), identity)?,
        )
    })
}

/// Parses and validates a map document. Relative `domain` and `codomain` paths resolve against
/// `base_dir`, or the working directory when it is null.
///
/// # Safety
/// `json` and `base_dir` must be null or NUL-terminated strings; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn horofan_map_from_json(
    json: *const c_char,
    base_dir: *const c_char,
    out: *mut *mut HorofanMap,
) -> HorofanStatus {
    guard(|| {
        let json = text(json, "json")?;
        let dir = if base_dir.is_null() {
            "."
        } else {
            text(base_dir, "base_dir")?
        };
        check_out(out)?;
        match parse_document(json.as_bytes())? {
            Document::Map(doc) => put_map(out, doc.stacky_map(Path::new(dir))?),
            Document::Fan(_) => Err(Failure(
                HorofanStatus::InputError,
                "expected a map document, found a fan".into(),
            )),
        }
    })
}

/// # Safety
/// `map` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn horofan_map_free(map: *mut HorofanMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Canonical JSON document with inline domain and codomain.
///
/// # Safety
/// `map` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn horofan_map_to_json(
    map: *const HorofanMap,
    out: *mut *mut c_char,
) -> HorofanStatus {
    guard(|| {
        let map = borrow(map, "map")?;
        check_out(out)?;
        put_string(out, to_canonical_json(&MapDocument::from_map(&map.0)))
    })
}

/// A new handle for the domain.
///
/// # Safety
/// `map` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn horofan_map_domain(
    map: *const HorofanMap,
    out: *mut *mut HorofanFan,
) -> HorofanStatus {
    guard(|| {
        let map = borrow(map, "map")?;
        check_out(out)?;
        put_fan(out, map.0.domain().clone())
    })
}

/// A new handle for the codomain.
///
/// # Safety
/// `map` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn horofan_map_codomain(
    map: *const HorofanMap,
    out: *mut *mut HorofanFan,
) -> HorofanStatus {
    guard(|| {
        let map = borrow(map, "map")?;
        check_out(out)?;
        put_fan(out, map.0.codomain().clone())
    })
}

/// Whether the map induces an isomorphism of horospherical stacks.
///
/// # Safety
/// `map` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn horofan_map_check_isomorphism(map: *const HorofanMap) -> HorofanStatus {
    guard(|| {
        let map = borrow(map, "map")?;
        let v = check_isomorphism(&map.0)?;
        verdict(v.overall(), || format!("{v:?}"))
    })
}

/// Whether the map induces a good moduli space morphism.
///
/// # Safety
/// `map` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn horofan_map_check_gms(map: *const HorofanMap) -> HorofanStatus {
    guard(|| {
        let map = borrow(map, "map")?;
        let v = check_gms_morphism(&map.0)?;
        verdict(v.overall(), || format!("{v:?}"))
    })
}
