//! C ABI for the verification engine. All handles are opaque; all strings
//! returned to the caller are NUL-terminated, UTF-8, and must be released
//! with `sf_string_free`. Functions return `SF_OK` (0) on success and a
//! negative error code otherwise; no panic crosses the boundary.

use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sympfer::commands;
use sympfer::config::RunConfig;
use sympfer::fusion;
use sympfer::zhu::ZhuContext;

pub const SF_OK: c_int = 0;
pub const SF_ERR_NULL: c_int = -1;
pub const SF_ERR_BAD_ARG: c_int = -2;
pub const SF_ERR_PANIC: c_int = -3;
pub const SF_ERR_UTF8: c_int = -4;
pub const SF_ERR_CHECK_FAILED: c_int = -5;

/// Opaque context: a fixed rank and weight cutoff.
pub struct SfContext {
    cfg: RunConfig,
    cx: ZhuContext,
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "")).unwrap().into_raw()
}

/// Create a context. `d` is the number of symplectic-fermion pairs,
/// `cutoff_doubled` is twice the weight cutoff (so half-integers are
/// representable). Returns NULL on invalid arguments.
#[no_mangle]
pub extern "C" fn sf_context_new(d: u8, cutoff_doubled: i64) -> *mut SfContext {
    if d == 0 || cutoff_doubled < 4 {
        return ptr::null_mut();
    }
    let result = catch_unwind(|| {
        let mut cfg = RunConfig::default();
        cfg.d = d;
        cfg.w_doubled = cutoff_doubled;
        let cx = ZhuContext::new(1, cutoff_doubled);
        Box::new(SfContext { cfg, cx })
    });
    match result {
        Ok(b) => Box::into_raw(b),
        Err(_) => ptr::null_mut(),
    }
}

/// Release a context created by `sf_context_new`.
#[no_mangle]
pub extern "C" fn sf_context_free(ctx: *mut SfContext) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// Release a string returned by this library.
#[no_mangle]
pub extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// JSON fusion table for the context's rank. Writes a heap string into
/// `*out`; caller frees it with `sf_string_free`.
#[no_mangle]
pub extern "C" fn sf_fusion_table_json(
    ctx: *const SfContext,
    out: *mut *mut c_char,
) -> c_int {
    if ctx.is_null() || out.is_null() {
        return SF_ERR_NULL;
    }
    let ctx = unsafe { &*ctx };
    let result = catch_unwind(AssertUnwindSafe(|| {
        let t1 = fusion::fusion_table_d1(&ctx.cx);
        let table = if ctx.cfg.d > 1 {
            fusion::fusion_table_dn(&t1, ctx.cfg.d)
        } else {
            t1
        };
        serde_json::to_string(&table).unwrap()
    }));
    match result {
        Ok(json) => {
            unsafe { *out = to_c_string(json) };
            SF_OK
        }
        Err(_) => SF_ERR_PANIC,
    }
}

/// Run one named command ("verify-appendix", "verify-voa", "zhu",
/// "fusion", "coeffs-delta", "report-all") and write its JSON report into
/// `*out`. Returns SF_OK when every check passed, SF_ERR_CHECK_FAILED when
/// the report contains failures (the report is still written).
#[no_mangle]
pub extern "C" fn sf_run_command_json(
    ctx: *const SfContext,
    command: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    if ctx.is_null() || command.is_null() || out.is_null() {
        return SF_ERR_NULL;
    }
    let ctx = unsafe { &*ctx };
    let name = match unsafe { CStr::from_ptr(command) }.to_str() {
        Ok(s) => s,
        Err(_) => return SF_ERR_UTF8,
    };
    let cfg = ctx.cfg.clone();
    let result = catch_unwind(AssertUnwindSafe(|| match name {
        "verify-appendix" => Some(commands::cmd_verify_appendix(&cfg)),
        "verify-voa" => Some(commands::cmd_verify_voa(&cfg)),
        "zhu" => Some(commands::cmd_zhu(&cfg)),
        "fusion" => Some(commands::cmd_fusion(&cfg)),
        "coeffs-delta" => Some(commands::cmd_coeffs_delta(&cfg)),
        "report-all" => Some(commands::cmd_report_all(&cfg)),
        _ => None,
    }));
    match result {
        Ok(Some(report)) => {
            let pass = report.pass;
            let json = serde_json::to_string(&report).unwrap_or_default();
            unsafe { *out = to_c_string(json) };
            if pass {
                SF_OK
            } else {
                SF_ERR_CHECK_FAILED
            }
        }
        Ok(None) => SF_ERR_BAD_ARG,
        Err(_) => SF_ERR_PANIC,
    }
}

/// dim I(L, M; N) at d=1 for module names "T+", "T-", "Tt+", "Tt-".
/// Writes the dimension into `*out_dim`.
#[no_mangle]
pub extern "C" fn sf_fusion_dim(
    ctx: *const SfContext,
    l: *const c_char,
    m: *const c_char,
    n: *const c_char,
    out_dim: *mut c_int,
) -> c_int {
    if ctx.is_null() || l.is_null() || m.is_null() || n.is_null() || out_dim.is_null() {
        return SF_ERR_NULL;
    }
    let ctx = unsafe { &*ctx };
    let parse = |p: *const c_char| -> Result<sympfer::zhu::ModuleTag, c_int> {
        let s = unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| SF_ERR_UTF8)?;
        sympfer::zhu::ModuleTag::all()
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or(SF_ERR_BAD_ARG)
    };
    let (lt, mt, nt) = match (parse(l), parse(m), parse(n)) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return e,
    };
    let result = catch_unwind(AssertUnwindSafe(|| {
        fusion::contraction_upper_bound(&ctx.cx, lt, mt, nt).0
    }));
    match result {
        Ok(dim) => {
            unsafe { *out_dim = dim as c_int };
            SF_OK
        }
        Err(_) => SF_ERR_PANIC,
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn sf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn context_lifecycle_and_fusion_dim() {
        let ctx = sf_context_new(1, 12);
        assert!(!ctx.is_null());
        let l = CString::new("T-").unwrap();
        let m = CString::new("Tt+").unwrap();
        let n = CString::new("Tt-").unwrap();
        let mut dim: c_int = -1;
        let rc = sf_fusion_dim(ctx, l.as_ptr(), m.as_ptr(), n.as_ptr(), &mut dim);
        assert_eq!(rc, SF_OK);
        assert_eq!(dim, 1);
        let bad = CString::new("X").unwrap();
        let rc2 = sf_fusion_dim(ctx, bad.as_ptr(), m.as_ptr(), n.as_ptr(), &mut dim);
        assert_eq!(rc2, SF_ERR_BAD_ARG);
        sf_context_free(ctx);
    }

    #[test]
    fn fusion_table_json_roundtrip() {
        let ctx = sf_context_new(1, 12);
        let mut out: *mut c_char = std::ptr::null_mut();
        let rc = sf_fusion_table_json(ctx, &mut out);
        assert_eq!(rc, SF_OK);
        let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        assert!(s.contains("\"entries\""));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["entries"].as_array().unwrap().len(), 64);
        sf_string_free(out);
        sf_context_free(ctx);
    }

    #[test]
    fn run_command_json() {
        let ctx = sf_context_new(1, 12);
        let cmd = CString::new("coeffs-delta").unwrap();
        let mut out: *mut c_char = std::ptr::null_mut();
        let rc = sf_run_command_json(ctx, cmd.as_ptr(), &mut out);
        assert_eq!(rc, SF_OK);
        sf_string_free(out);
        let nope = CString::new("nope").unwrap();
        assert_eq!(sf_run_command_json(ctx, nope.as_ptr(), &mut out), SF_ERR_BAD_ARG);
        sf_context_free(ctx);
    }

    #[test]
    fn null_safety() {
        assert!(sf_context_new(0, 12).is_null());
        assert!(sf_context_new(1, 2).is_null());
        sf_context_free(std::ptr::null_mut());
        sf_string_free(std::ptr::null_mut());
        let mut out: *mut c_char = std::ptr::null_mut();
        assert_eq!(sf_fusion_table_json(std::ptr::null(), &mut out), SF_ERR_NULL);
    }

    /// Every exported symbol must appear in the handwritten header.
    #[test]
    fn header_covers_exports() {
        let header = include_str!("../include/sympfer.h");
        for sym in [
            "sf_context_new",
            "sf_context_free",
            "sf_string_free",
            "sf_fusion_table_json",
            "sf_run_command_json",
            "sf_fusion_dim",
            "sf_version",
        ] {
            assert!(header.contains(sym), "header missing {sym}");
        }
    }
}
