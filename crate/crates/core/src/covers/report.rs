use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{
    artin_schreier_genus, class_count_bound, count_invariant_covers, minimal_genus,
    ramification_jump_series_check, tau_on_torsion, unramified_cover_genus, CoverParameters,
    JumpCheck, TauAction,
};
use crate::error::{Error, Result};
use crate::group_theory::{canonical_group, quasi_p_check, DEFAULT_GROUP_CAP};
use crate::poly_factor::{factor, Factorization};
use crate::prime_field::{cyclotomic_mod, inv_mod, ord_mod, PolyFp, Prime};

pub const REPORT_SCHEMA: &str = "galcover/1";

/// Outcome of the quasi-p check on the canonical group of rank `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiPStatus {
    Checked {
        is_quasi_p: bool,
        closure_size: u128,
        group_order: u128,
    },
    /// The group exceeds the element cap.
    Skipped { group_order: u128 },
}

/// Invariants of the minimal-genus covers for a pair of primes `(p, l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub params: CoverParameters,
    pub a: u64,
    pub phi_factors: Factorization,
    pub tau: TauAction,
    /// One entry per irreducible block of `tau`.
    pub tau_blocks: Vec<PolyFp>,
    pub g_y: u64,
    pub g_z_min: BigUint,
    pub class_count_bound: u64,
    pub quasi_p: QuasiPStatus,
    pub jump: JumpCheck,
}

/// Assembles the report and cross-checks every derived quantity.
/// `group_cap` bounds the group enumerated by the quasi-p check.
pub fn build_report(p: Prime, l: Prime, seed: u64, group_cap: u128) -> Result<CoverReport> {
    let params = CoverParameters::minimal(p, l)?;
    let a = ord_mod(l, p)?;
    let phi_factors = factor(&cyclotomic_mod(p, l)?, seed)?;
    let tau = tau_on_torsion(params)?;
    let tau_blocks = tau.irreducible_blocks()?;
    let g_y = artin_schreier_genus(p, params.s)?;
    let g_z_min = minimal_genus(p, l)?;
    let bound = class_count_bound(p, l)?;
    let enumerated = count_invariant_covers(params)?;
    if enumerated != bound {
        return Err(Error::CheckFailed(format!(
            "class-count bound {bound} disagrees with {enumerated} enumerated invariant subspaces"
        )));
    }
    let group = canonical_group(l, a as usize, p)?;
    let quasi_p = match quasi_p_check(&group, group_cap) {
        Ok(r) => QuasiPStatus::Checked {
            is_quasi_p: r.is_quasi_p,
            closure_size: r.closure_size,
            group_order: r.group_order,
        },
        Err(Error::GroupTooLarge { order, .. }) => QuasiPStatus::Skipped { group_order: order },
        Err(e) => return Err(e),
    };
    let jump = ramification_jump_series_check(p, params.s, params.s as usize + 2)?;
    let report = CoverReport {
        params,
        a,
        phi_factors,
        tau,
        tau_blocks,
        g_y,
        g_z_min,
        class_count_bound: bound,
        quasi_p,
        jump,
    };
    report.to_json().check_invariants()?;
    Ok(report)
}

impl CoverReport {
    pub fn to_json(&self) -> ReportJson {
        let polys =
            |ps: &mut dyn Iterator<Item = &PolyFp>| ps.map(|f| f.coeffs().to_vec()).collect();
        ReportJson {
            schema: REPORT_SCHEMA.to_string(),
            p: self.params.p.get(),
            l: self.params.l.get(),
            a: self.a,
            phi_factors: polys(&mut self.phi_factors.irreducibles()),
            tau_matrix: self.tau.matrix.to_rows(),
            tau_blocks: polys(&mut self.tau_blocks.iter()),
            g_y: Value::from(self.g_y),
            g_z_min: biguint_value(&self.g_z_min),
            class_count_bound: self.class_count_bound,
            quasi_p: match self.quasi_p {
                QuasiPStatus::Checked { is_quasi_p, .. } => Value::Bool(is_quasi_p),
                QuasiPStatus::Skipped { .. } => Value::from("skipped"),
            },
            jump: JumpJson {
                valuation: self.jump.valuation,
                leading_coeff: self.jump.leading_coeff.value(),
            },
        }
    }
}

/// Genera that overflow u64 are written as decimal strings.
fn biguint_value(g: &BigUint) -> Value {
    match g.to_u64() {
        Some(x) => Value::from(x),
        None => Value::from(g.to_string()),
    }
}

fn value_biguint(v: &Value) -> Option<BigUint> {
    match v {
        Value::Number(n) => n.as_u64().map(BigUint::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Wire form of a report. Field order is the serialized key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub schema: String,
    pub p: u64,
    pub l: u64,
    pub a: u64,
    pub phi_factors: Vec<Vec<u64>>,
    pub tau_matrix: Vec<Vec<u64>>,
    pub tau_blocks: Vec<Vec<u64>>,
    pub g_y: Value,
    pub g_z_min: Value,
    pub class_count_bound: u64,
    pub quasi_p: Value,
    pub jump: JumpJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JumpJson {
    pub valuation: usize,
    pub leading_coeff: u64,
}

impl ReportJson {
    pub fn render(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::CheckFailed(format!("malformed report: {e}")))
    }

    /// Consistency checks that use only the serialized data.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::CheckFailed(msg));
        if self.schema != REPORT_SCHEMA {
            return fail(format!("unknown schema {}", self.schema));
        }
        let p = Prime::new(self.p)?;
        let l = Prime::new(self.l)?;
        let s = CoverParameters::minimal_s(p);
        let a = self.a;
        if a == 0 || (p.get() - 1) % a != 0 {
            return fail(format!("a = {a} does not divide p - 1"));
        }
        let phi = cyclotomic_mod(p, l)?;
        let poly = |c: &Vec<u64>| PolyFp::new(c.clone(), l);
        let mut product = PolyFp::one(l);
        for f in &self.phi_factors {
            let f = poly(f);
            if f.degree() != Some(a as usize) || !f.is_monic() {
                return fail(format!("factor {f} is not monic of degree {a}"));
            }
            product = &product * &f;
        }
        if product != phi {
            return fail("phi_factors do not multiply to Phi_p".into());
        }
        let n = ((p.get() - 1) * (s - 1)) as usize;
        if self.tau_matrix.len() != n || self.tau_matrix.iter().any(|r| r.len() != n) {
            return fail(format!("tau_matrix is not {n} x {n}"));
        }
        if self.tau_blocks.len() as u64 * a != n as u64 {
            return fail(format!(
                "{} blocks of degree {a} do not fill dimension {n}",
                self.tau_blocks.len()
            ));
        }
        let mut block_product = PolyFp::one(l);
        for f in &self.tau_blocks {
            let f = poly(f);
            if !self.phi_factors.iter().any(|g| poly(g) == f) {
                return fail(format!("block {f} is not a factor of Phi_p"));
            }
            block_product = &block_product * &f;
        }
        if block_product != phi.pow((s - 1) as u32) {
            return fail("tau_blocks do not multiply to Phi_p^(s-1)".into());
        }

        // a-dimensional invariant subspaces: (l^(a m) - 1)/(l^a - 1) per factor of multiplicity m
        let mut count = 0u128;
        let la = (l.get() as u128).pow(a as u32);
        for f in &self.phi_factors {
            let m = self.tau_blocks.iter().filter(|b| *b == f).count() as u32;
            count += (la.pow(m) - 1) / (la - 1);
        }
        if count != self.class_count_bound as u128 {
            return fail(format!(
                "class_count_bound {} but the blocks give {count}",
                self.class_count_bound
            ));
        }

        let g_y = self
            .g_y
            .as_u64()
            .ok_or(Error::CheckFailed("g_y is not an integer".into()))?;
        if 2 * g_y != n as u64 {
            return fail(format!("g_y = {g_y} but tau acts on dimension {n}"));
        }
        let g_z = value_biguint(&self.g_z_min)
            .ok_or(Error::CheckFailed("g_z_min is not an integer".into()))?;
        let expected = unramified_cover_genus(&BigUint::from(g_y), l, a as u32)?;
        if g_z != expected {
            return fail(format!(
                "g_z_min = {g_z} but 1 + l^a (g_y - 1) = {expected}"
            ));
        }
        if g_z < BigUint::one() {
            return fail("g_z_min must be positive".into());
        }

        match &self.quasi_p {
            Value::Bool(true) => {}
            Value::String(x) if x == "skipped" => {}
            other => return fail(format!("quasi_p = {other} for the canonical group")),
        }
        let inv_s = inv_mod(s % p.get(), p.get()).expect("s prime to p");
        let expected_lead = (p.get() - inv_s) % p.get();
        if self.jump.valuation as u64 != s + 1 || self.jump.leading_coeff != expected_lead {
            return fail(format!(
                "jump ({}, {}) but expected ({}, {expected_lead})",
                self.jump.valuation,
                self.jump.leading_coeff,
                s + 1
            ));
        }
        Ok(())
    }
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let CoverParameters { p, l, s } = self.params;
        writeln!(f, "p = {p}, l = {l}, base curve Y: y^{p} - y = x^{s}")?;
        writeln!(f, "a = ord_p(l) = {}", self.a)?;
        let factors: Vec<String> = self
            .phi_factors
            .irreducibles()
            .map(|g| format!("({g})"))
            .collect();
        writeln!(f, "Phi_{p} mod {l} = {}", factors.join(" "))?;
        writeln!(f, "tau on Jac(Y)[{l}] ({}):", self.tau.basis_label)?;
        for line in self.tau.matrix.to_string().lines() {
            writeln!(f, "  {line}")?;
        }
        let blocks: Vec<String> = self.tau_blocks.iter().map(|g| g.to_string()).collect();
        writeln!(f, "irreducible blocks: {}", blocks.join(", "))?;
        writeln!(f, "g(Y) = {}", self.g_y)?;
        writeln!(f, "minimal genus g(Z) = {}", self.g_z_min)?;
        writeln!(
            f,
            "at most {} isomorphism classes of minimal-genus curves",
            self.class_count_bound
        )?;
        match self.quasi_p {
            QuasiPStatus::Checked { is_quasi_p, closure_size, group_order } => writeln!(
                f,
                "(Z/{l}Z)^{} x| Z/{p}Z quasi-{p}: {is_quasi_p} (order-{p} elements generate {closure_size} of {group_order})",
                self.a
            )?,
            QuasiPStatus::Skipped { group_order } => writeln!(
                f,
                "quasi-{p} check skipped: group of order {group_order} exceeds the cap"
            )?,
        }
        write!(
            f,
            "ramification jump: tau(pi) - pi has valuation {} and leading coefficient {}",
            self.jump.valuation, self.jump.leading_coeff
        )
    }
}

/// `build_report` with the default group cap.
pub fn build_default_report(p: Prime, l: Prime, seed: u64) -> Result<CoverReport> {
    build_report(p, l, seed, DEFAULT_GROUP_CAP)
}
