//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string; failures are `{"error": name, "message": text}`.
//! Keeping the boundary to plain strings lets the same functions run in native tests.

use galcover::covers::{build_default_report, tau_on_torsion, CoverParameters};
use galcover::matrix_fp::{companion_matrix, MatrixFp};
use galcover::poly_factor::factor;
use galcover::prime_field::{cyclotomic_mod, ord_mod, Prime};
use galcover::{Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest p accepted by the matrix views; keeps the canvas legible.
pub const MAX_VIEW_P: u64 = 128;

fn respond(result: Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.name(), "message": e.to_string() }).to_string(),
    }
}

fn primes(p: u32, l: u32) -> Result<(Prime, Prime)> {
    Ok((Prime::new(p.into())?, Prime::new(l.into())?))
}

/// Factors of `Phi_p` over F_l with their degrees.
#[wasm_bindgen]
pub fn factor_cyclotomic(p: u32, l: u32, seed: u32) -> String {
    respond((|| {
        let (p, l) = primes(p, l)?;
        let fz = factor(&cyclotomic_mod(p, l)?, seed.into())?;
        let factors: Vec<Value> = fz
            .irreducibles()
            .map(|f| json!({ "coeffs": f.coeffs(), "text": f.to_string() }))
            .collect();
        Ok(json!({
            "p": p.get(),
            "l": l.get(),
            "a": ord_mod(l, p)?,
            "factors": factors,
        }))
    })())
}

/// The tau matrix for `y^p - y = x^s` with the minimal `s`, next to its block form
/// `diag(C(f_1), ..., C(f_k))`, one companion block per irreducible block.
#[wasm_bindgen]
pub fn tau_blocks(p: u32, l: u32) -> String {
    respond((|| {
        let (p, l) = primes(p, l)?;
        if p.get() > MAX_VIEW_P {
            return Err(Error::UnsupportedParameters(format!(
                "the matrix view is limited to p <= {MAX_VIEW_P}"
            )));
        }
        let tau = tau_on_torsion(CoverParameters::minimal(p, l)?)?;
        let blocks = tau.irreducible_blocks()?;
        let companions = blocks
            .iter()
            .map(companion_matrix)
            .collect::<Result<Vec<MatrixFp>>>()?;
        let block_form = MatrixFp::block_diag(&companions)?;
        let mut start = 0;
        let ranges: Vec<Value> = blocks
            .iter()
            .map(|f| {
                let d = f.degree().unwrap_or(0);
                let v = json!({ "start": start, "size": d, "factor": f.to_string() });
                start += d;
                v
            })
            .collect();
        Ok(json!({
            "p": p.get(),
            "l": l.get(),
            "basis": tau.basis_label,
            "matrix": tau.matrix.to_rows(),
            "block_form": block_form.to_rows(),
            "blocks": ranges,
        }))
    })())
}

/// Full minimal-genus report: the serialized report plus a readable rendering.
#[wasm_bindgen]
pub fn cover_report(p: u32, l: u32, seed: u32) -> String {
    respond((|| {
        let (p, l) = primes(p, l)?;
        let r = build_default_report(p, l, seed.into())?;
        let report =
            serde_json::to_value(r.to_json()).map_err(|e| Error::CheckFailed(e.to_string()))?;
        Ok(json!({ "report": report, "text": r.to_string() }))
    })())
}
