// SPDX-License-Identifier: MIT OR Apache-2.0

//! C interface to `monotile`.
//!
//! Patches live behind the opaque [`MtPatch`] handle. Every call returns an
//! [`MtStatus`]; results come back through out-pointers. Strings handed out
//! by the library are NUL-terminated and must be released with
//! [`mt_string_free`], patches with [`mt_patch_free`]. No call unwinds into
//! C: a panic becomes `MT_STATUS_INTERNAL`.

use monotile::analysis::stats;
use monotile::bam::{build_metatile, strip_word, MetatileKind, Strip};
use monotile::patch::{validate_matching, ColoredPatch};
use monotile::Error;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Opaque patch handle.
pub struct MtPatch {
    inner: ColoredPatch,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MtStatus {
    Ok = 0,
    NullPointer = 1,
    /// Argument outside its domain (unknown kind, level 0, bad UTF-8).
    Domain = 2,
    /// Level above the build limit.
    Depth = 3,
    Parse = 4,
    /// The patch breaks the matching rules.
    Invalid = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MtKind {
    T = 0,
    P = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MtStrip {
    A = 0,
    B = 1,
    J = 2,
}

/// Counts of a patch. Tile counts are zero when it does not assemble.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MtStats {
    pub n_red: usize,
    pub n_black: usize,
    pub n_redblack: usize,
    pub n_flipped: usize,
    pub n_regular: usize,
}

fn status_of(e: &Error) -> MtStatus {
    match e {
        Error::Depth { .. } => MtStatus::Depth,
        Error::Parse(_) | Error::Json(_) => MtStatus::Parse,
        Error::InvalidPatch(_) => MtStatus::Invalid,
        _ => MtStatus::Domain,
    }
}

fn guard<F: FnOnce() -> MtStatus>(f: F) -> MtStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(MtStatus::Internal)
}

fn hand_out_string(s: String, out: *mut *mut c_char) -> MtStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before calling this.
            unsafe { *out = c.into_raw() };
            MtStatus::Ok
        }
        Err(_) => MtStatus::Internal,
    }
}

/// Short English description of a status code. The string is static.
#[no_mangle]
pub extern "C" fn mt_status_message(status: MtStatus) -> *const c_char {
    let s: &'static CStr = match status {
        MtStatus::Ok => c"ok",
        MtStatus::NullPointer => c"null pointer argument",
        MtStatus::Domain => c"argument out of domain",
        MtStatus::Depth => c"level exceeds the depth limit",
        MtStatus::Parse => c"could not parse input",
        MtStatus::Invalid => c"patch violates the matching rules",
        MtStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Build the metatile `kind` at `level` into `*out`.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn mt_patch_generate(kind: MtKind, level: u32, out: *mut *mut MtPatch) -> MtStatus {
    if out.is_null() {
        return MtStatus::NullPointer;
    }
    guard(|| {
        let kind = match kind {
            MtKind::T => MetatileKind::T,
            MtKind::P => MetatileKind::P,
        };
        match build_metatile(kind, level) {
            Ok(p) => {
                // SAFETY: checked non-null above.
                unsafe { *out = Box::into_raw(Box::new(MtPatch { inner: p })) };
                MtStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Parse a patch file.
///
/// # Safety
/// `json` must be null or a NUL-terminated string; `out` must be null or
/// valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn mt_patch_from_json(json: *const c_char, out: *mut *mut MtPatch) -> MtStatus {
    if json.is_null() || out.is_null() {
        return MtStatus::NullPointer;
    }
    guard(|| {
        // SAFETY: caller promises a NUL-terminated string.
        let Ok(text) = unsafe { CStr::from_ptr(json) }.to_str() else {
            return MtStatus::Domain;
        };
        match ColoredPatch::from_json(text) {
            Ok(p) => {
                // SAFETY: checked non-null above.
                unsafe { *out = Box::into_raw(Box::new(MtPatch { inner: p })) };
                MtStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Serialize a patch; free the result with [`mt_string_free`].
///
/// # Safety
/// `patch` must be null or a live handle; `out` must be null or valid for
/// writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn mt_patch_to_json(patch: *const MtPatch, out: *mut *mut c_char) -> MtStatus {
    if patch.is_null() || out.is_null() {
        return MtStatus::NullPointer;
    }
    // SAFETY: caller promises a live handle.
    let p = unsafe { &*patch };
    guard(|| hand_out_string(p.inner.to_json(), out))
}

/// Count matching-rule violations into `*violations`. Returns
/// `MT_STATUS_INVALID` when there are any.
///
/// # Safety
/// `patch` must be null or a live handle; `violations` null or writable.
#[no_mangle]
pub unsafe extern "C" fn mt_patch_validate(patch: *const MtPatch, violations: *mut usize) -> MtStatus {
    if patch.is_null() || violations.is_null() {
        return MtStatus::NullPointer;
    }
    // SAFETY: caller promises a live handle.
    let p = unsafe { &*patch };
    guard(|| {
        let n = validate_matching(&p.inner).violations.len();
        // SAFETY: checked non-null above.
        unsafe { *violations = n };
        if n == 0 {
            MtStatus::Ok
        } else {
            MtStatus::Invalid
        }
    })
}

/// Number of rhombs in the patch, 0 for a null handle.
///
/// # Safety
/// `patch` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mt_patch_len(patch: *const MtPatch) -> usize {
    if patch.is_null() {
        return 0;
    }
    // SAFETY: caller promises a live handle.
    unsafe { &*patch }.inner.len()
}

/// # Safety
/// `patch` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn mt_patch_stats(patch: *const MtPatch, out: *mut MtStats) -> MtStatus {
    if patch.is_null() || out.is_null() {
        return MtStatus::NullPointer;
    }
    // SAFETY: caller promises a live handle.
    let p = unsafe { &*patch };
    guard(|| {
        let s = stats(&p.inner);
        let r = MtStats {
            n_red: s.n_red,
            n_black: s.n_black,
            n_redblack: s.n_redblack,
            n_flipped: s.n_flipped,
            n_regular: s.n_regular,
        };
        // SAFETY: checked non-null above.
        unsafe { *out = r };
        MtStatus::Ok
    })
}

/// Release a patch. Null is ignored.
///
/// # Safety
/// `patch` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mt_patch_free(patch: *mut MtPatch) {
    if !patch.is_null() {
        // SAFETY: the handle came from Box::into_raw.
        drop(unsafe { Box::from_raw(patch) });
    }
}

/// Strip word as a string of `0` and `1`.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn mt_strip_word(strip: MtStrip, level: u32, out: *mut *mut c_char) -> MtStatus {
    if out.is_null() {
        return MtStatus::NullPointer;
    }
    // |B_n| grows by about 2.6 per level; B_16 already has 1.5e7 symbols
    if level > 16 {
        return MtStatus::Depth;
    }
    guard(|| {
        let kind = match strip {
            MtStrip::A => Strip::A,
            MtStrip::B => Strip::B,
            MtStrip::J => Strip::J,
        };
        hand_out_string(strip_word(kind, level).to_string(), out)
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mt_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string came from CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}
