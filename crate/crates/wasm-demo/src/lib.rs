//! Browser bindings for a few `qcss-core` operations. Every export returns a
//! JSON string; the plain `*_json` functions hold the logic so they run
//! natively as well.

use qcss_core::analysis::{self, theorem1_params};
use qcss_core::diffset::{exp_sum_profile, DsKind};
use qcss_core::export::{ReportDocument, TheoremComparison};
use qcss_core::qcss::{tolerances_with, SweepMethod};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest `n` the page will build; `n = 7` takes well under a second.
pub const MAX_DEMO_N: u32 = 7;

fn parse_ds(ds: &str) -> Result<DsKind, String> {
    ds.parse().map_err(|e: qcss_core::Error| e.to_string())
}

/// Exponential-sum profile of the ADS lifted from the `ds` difference set
/// of size `f`.
pub fn exp_sum_json(f: u32, ds: &str) -> Result<String, String> {
    let u = parse_ds(ds)?.almost_difference_set(f).map_err(|e| e.to_string())?;
    let profile = exp_sum_profile(&u);
    let c = u.classify();
    Ok(json!({
        "q": profile.q,
        "elements": u.elements(),
        "classification": c.to_string(),
        "values": profile.values,
        "maxNontrivial": profile.max_nontrivial(),
        "bound": profile.bound,
    })
    .to_string())
}

/// Correlation report of the QCSS built from Family A of degree `n` and the
/// ADS of size `2^(n-2) - 1`.
pub fn qcss_report_json(n: u32, ds: &str) -> Result<String, String> {
    if n > MAX_DEMO_N {
        return Err(format!("the demo stops at n = {MAX_DEMO_N}"));
    }
    let params = theorem1_params(n).map_err(|e| e.to_string())?;
    let set = analysis::build_construction(n, params.f as u32, parse_ds(ds)?).map_err(|e| e.to_string())?;
    let report = tolerances_with(&set, SweepMethod::Fast);
    let mut doc = ReportDocument::new(&set, report);
    doc.theorem = Some(TheoremComparison::new(&params, &doc.correlation));
    serde_json::to_string(&doc).map_err(|e| e.to_string())
}

/// Limit tightness `rho` of each row of a table together with the
/// bound-based value at degree `n`.
pub fn table_curve_json(table: u8, x_max: u32, n: u32) -> Result<String, String> {
    let rows = analysis::table_records(table, x_max)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|r| {
            let at_n = if table == 1 { None } else { analysis::bound_rho(n, r.x).ok() };
            json!({ "x": r.x, "f": r.f_or_q, "rho": r.rho, "boundRhoAtN": at_n })
        })
        .collect::<Vec<_>>();
    Ok(json!({ "table": table, "n": n, "rows": rows }).to_string())
}

fn to_js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = expSumProfile)]
pub fn exp_sum_profile_js(f: u32, ds: &str) -> Result<String, JsError> {
    to_js(exp_sum_json(f, ds))
}

#[wasm_bindgen(js_name = qcssReport)]
pub fn qcss_report_js(n: u32, ds: &str) -> Result<String, JsError> {
    to_js(qcss_report_json(n, ds))
}

#[wasm_bindgen(js_name = tableCurve)]
pub fn table_curve_js(table: u8, x_max: u32, n: u32) -> Result<String, JsError> {
    to_js(table_curve_json(table, x_max, n))
}
