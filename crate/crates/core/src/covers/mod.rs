//! Invariants of Artin-Schreier covers `y^p - y = x^s` of the projective line and
//! of their unramified `(Z/lZ)^b` extensions.
//!
//! The cover `Y_s` is totally ramified over infinity with a single break in its
//! ramification filtration at `i = s`. The automorphism `tau: y -> y + 1` acts on
//! the l-torsion of the Jacobian; this module models that action by explicit
//! matrices over F_l and derives the minimal genus and the class-count bounds
//! from it.

mod report;

pub use report::{
    build_default_report, build_report, CoverReport, JumpJson, QuasiPStatus, ReportJson,
    REPORT_SCHEMA,
};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix_fp::{
    characteristic_polynomial, companion_matrix, has_eigenvalue_one, invariant_subspaces_of_dim,
    primary_decomposition, EnumerationMode, MatrixFp, DEFAULT_ENUMERATION_BUDGET,
};
use crate::prime_field::{
    binomial_series, cyclotomic_mod, is_prime, ord_mod, FpElem, PolyFp, Prime, SeriesFp,
};

/// The primes `(p, l)` and the Artin-Schreier exponent `s` of a cover family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverParameters {
    pub p: Prime,
    pub l: Prime,
    pub s: u64,
}

impl CoverParameters {
    pub fn new(p: Prime, l: Prime, s: u64) -> Result<Self> {
        if p == l {
            return Err(Error::EqualPrimes(p.get()));
        }
        check_s(p, s)?;
        Ok(CoverParameters { p, l, s })
    }

    /// The exponent giving the smallest positive genus: `s = 2` for odd p, `s = 3` for p = 2.
    pub fn minimal_s(p: Prime) -> u64 {
        if p.get() == 2 {
            3
        } else {
            2
        }
    }

    pub fn minimal(p: Prime, l: Prime) -> Result<Self> {
        CoverParameters::new(p, l, CoverParameters::minimal_s(p))
    }

    fn require_prime_s(&self) -> Result<()> {
        if !is_prime(self.s) || self.s == self.p.get() {
            return Err(Error::UnsupportedParameters(format!(
                "s = {} must be a prime different from p = {}",
                self.s, self.p
            )));
        }
        Ok(())
    }
}

fn check_s(p: Prime, s: u64) -> Result<()> {
    if s == 0 {
        return Err(Error::UnsupportedParameters("s must be positive".into()));
    }
    if s.is_multiple_of(p.get()) {
        return Err(Error::SDivisibleByP { s, p: p.get() });
    }
    Ok(())
}

/// One constant stretch `I_start = ... = I_end` of the lower ramification filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    pub start: i64,
    /// `None` means the stretch continues forever.
    pub end: Option<i64>,
    pub order: u64,
}

/// Lower ramification groups `I_i`, `i >= -1`, at the unique point over infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationFiltration {
    pub steps: Vec<FiltrationStep>,
    pub cover_degree: u64,
}

impl RamificationFiltration {
    pub fn order_at(&self, i: i64) -> Option<u64> {
        self.steps
            .iter()
            .find(|st| st.start <= i && st.end.is_none_or(|e| i <= e))
            .map(|st| st.order)
    }

    /// Index of the last nontrivial group.
    pub fn last_jump(&self) -> Option<i64> {
        self.steps
            .iter()
            .filter(|st| st.order > 1)
            .filter_map(|st| st.end)
            .max()
    }
}

/// `I_i = Z/pZ` for `-1 <= i <= s` and trivial afterwards.
pub fn ramification_filtration(p: Prime, s: u64) -> Result<RamificationFiltration> {
    check_s(p, s)?;
    let s = s as i64;
    Ok(RamificationFiltration {
        steps: vec![
            FiltrationStep {
                start: -1,
                end: Some(s),
                order: p.get(),
            },
            FiltrationStep {
                start: s + 1,
                end: None,
                order: 1,
            },
        ],
        cover_degree: p.get(),
    })
}

/// Solves `2g - 2 = -2 deg + sum_{i >= 0} (|I_i| - 1)` for a cover of P^1
/// with a single totally ramified point.
pub fn rh_genus_from_filtration(f: &RamificationFiltration) -> Result<u64> {
    let bad = |msg: &str| Err(Error::InconsistentFiltration(msg.into()));
    let Some(first) = f.steps.first() else {
        return bad("empty filtration");
    };
    if first.start != -1 {
        return bad("filtration must start at i = -1");
    }
    if first.order != f.cover_degree {
        return bad("I_-1 must be the full group at a totally ramified point");
    }
    let mut sum = 0u128;
    let mut prev_order = u64::MAX;
    let mut expected_start = -1i64;
    for (k, st) in f.steps.iter().enumerate() {
        if st.start != expected_start {
            return bad("steps must be contiguous");
        }
        if st.order > prev_order || st.order == 0 || !f.cover_degree.is_multiple_of(st.order) {
            return bad("orders must be non-increasing divisors of the degree");
        }
        prev_order = st.order;
        match st.end {
            Some(end) => {
                if end < st.start {
                    return bad("step ends before it starts");
                }
                let from = st.start.max(0);
                if end >= from {
                    sum += (end - from + 1) as u128 * (st.order as u128 - 1);
                }
                expected_start = end + 1;
            }
            None => {
                if k + 1 != f.steps.len() {
                    return bad("only the last step may be unbounded");
                }
                if st.order != 1 {
                    return bad("the filtration must eventually be trivial");
                }
            }
        }
    }
    if f.steps.last().and_then(|st| st.end).is_some() {
        return bad("the last step must be unbounded");
    }
    // 2g = sum - 2 deg + 2
    let two_g = sum as i128 - 2 * f.cover_degree as i128 + 2;
    if two_g < 0 || two_g % 2 != 0 {
        return bad("Riemann-Hurwitz gives a negative or non-integral genus");
    }
    Ok((two_g / 2) as u64)
}

/// `g_Y = (p - 1)(s - 1)/2`, checked against the Riemann-Hurwitz route.
pub fn artin_schreier_genus(p: Prime, s: u64) -> Result<u64> {
    check_s(p, s)?;
    let closed = (p.get() - 1) * (s - 1) / 2;
    let via_filtration = rh_genus_from_filtration(&ramification_filtration(p, s)?)?;
    if closed != via_filtration {
        return Err(Error::CheckFailed(format!(
            "genus formula gives {closed}, filtration gives {via_filtration}"
        )));
    }
    Ok(closed)
}

/// Valuation and leading coefficient of `tau(pi) - pi` at the point over infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JumpCheck {
    pub valuation: usize,
    pub leading_coeff: FpElem,
}

/// Expands `tau(pi) = pi (1 + pi^s)^(-1/s)` over F_p up to degree `n` and locates
/// the first nonzero term of `tau(pi) - pi`; expected at `s + 1` with coefficient `-1/s`.
pub fn ramification_jump_series_check(p: Prime, s: u64, n: usize) -> Result<JumpCheck> {
    check_s(p, s)?;
    let needed = s as usize + 2;
    if n < needed {
        return Err(Error::TruncationTooShort { n, needed });
    }
    let inner = binomial_series(-1, s as i64, p, n)?;
    let tau_pi = inner.substitute_power(s as usize).shift(1);
    let pi = SeriesFp::new(vec![0, 1], n, p);
    let diff = tau_pi.sub(&pi)?;
    let valuation = diff
        .valuation()
        .ok_or(Error::TruncationTooShort { n, needed: n + 1 })?;
    Ok(JumpCheck {
        valuation,
        leading_coeff: diff.coeff(valuation),
    })
}

/// The action of `tau` on `Jac(Y_s)[l]` as a matrix over F_l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauAction {
    pub matrix: MatrixFp,
    pub basis_label: String,
    pub params: CoverParameters,
}

impl TauAction {
    /// Irreducible factor of each irreducible block, with repetition, in canonical order.
    pub fn irreducible_blocks(&self) -> Result<Vec<PolyFp>> {
        let mut blocks = Vec::new();
        for comp in primary_decomposition(&self.matrix)? {
            let deg = comp.factor.degree().unwrap_or(1);
            for _ in 0..comp.subspace.dim() / deg {
                blocks.push(comp.factor.clone());
            }
        }
        Ok(blocks)
    }

    fn verify(&self) -> Result<()> {
        let CoverParameters { p, l, s } = self.params;
        let m = &self.matrix;
        let n = m.rows();
        let id = MatrixFp::identity(n, l);
        if m.pow(p.get())? != id || *m == id {
            return Err(Error::CheckFailed(format!("tau does not have order {p}")));
        }
        let phi = cyclotomic_mod(p, l)?;
        if characteristic_polynomial(m)? != phi.pow((s - 1) as u32) {
            return Err(Error::CheckFailed(
                "characteristic polynomial of tau is not Phi_p^(s-1)".into(),
            ));
        }
        if has_eigenvalue_one(m)? {
            return Err(Error::CheckFailed(
                "tau fixes a nonzero torsion point".into(),
            ));
        }
        Ok(())
    }
}

/// Matrix model of `tau` on the l-torsion of `Y_s`, of size `(p-1)(s-1)`.
///
/// For `s = 2` this is the companion matrix of `Phi_p` in the basis
/// `D_0, ..., D_(p-2)` with `D_i = P_i - P_inf`. For `p = 2, s = 3` it is `-I_2`.
/// Otherwise it is the canonical model: `s - 1` diagonal copies of that
/// companion matrix, which has the block structure every such action must have
/// but is not derived from a divisor basis.
pub fn tau_on_torsion(params: CoverParameters) -> Result<TauAction> {
    params.require_prime_s()?;
    let CoverParameters { p, l, s } = params;
    let phi = cyclotomic_mod(p, l)?;
    let block = companion_matrix(&phi)?;
    let (matrix, basis_label) = if p.get() == 2 && s == 3 {
        (
            MatrixFp::scalar(2, l.get() - 1, l),
            "Jac(Y_3)[l] for y^2 - y = x^3; tau acts as -1".to_string(),
        )
    } else if s == 2 {
        (
            block,
            format!("D_0, ..., D_{} with D_i = P_i - P_inf", p.get() - 2),
        )
    } else {
        let blocks = vec![block; (s - 1) as usize];
        (
            MatrixFp::block_diag(&blocks)?,
            format!("canonical model: {} copies of companion(Phi_p)", s - 1),
        )
    };
    let tau = TauAction {
        matrix,
        basis_label,
        params,
    };
    tau.verify()?;
    Ok(tau)
}

/// Number of tau-invariant `a`-dimensional subspaces of the torsion of the
/// minimal-genus curve: `Y_2` for odd p, `Y_3` for p = 2.
pub fn count_invariant_covers(params: CoverParameters) -> Result<u64> {
    count_invariant_covers_with(
        params,
        EnumerationMode::Algebraic,
        DEFAULT_ENUMERATION_BUDGET,
    )
}

pub fn count_invariant_covers_with(
    params: CoverParameters,
    mode: EnumerationMode,
    budget: u128,
) -> Result<u64> {
    if params.s != CoverParameters::minimal_s(params.p) {
        return Err(Error::UnsupportedParameters(format!(
            "invariant covers are counted at s = {} for p = {}",
            CoverParameters::minimal_s(params.p),
            params.p
        )));
    }
    let tau = tau_on_torsion(params)?;
    let a = ord_mod(params.l, params.p)? as usize;
    Ok(invariant_subspaces_of_dim(&tau.matrix, a, mode, budget)?.len() as u64)
}

/// Genus of an unramified `(Z/lZ)^b` cover of a curve of genus `g_y`: `1 + l^b (g_y - 1)`.
pub fn unramified_cover_genus(g_y: &BigUint, l: Prime, b: u32) -> Result<BigUint> {
    if g_y.is_zero() {
        return Err(Error::GenusZeroBase);
    }
    let degree = BigUint::from(l.get()).pow(b);
    Ok(BigUint::one() + degree * (g_y - BigUint::one()))
}

/// Minimal genus of a curve with a `(Z/lZ)^b x| Z/pZ` cover of P^1 branched only at infinity:
/// `1 + l^a (p - 3)/2` for odd p, `1` for p = 2.
pub fn minimal_genus(p: Prime, l: Prime) -> Result<BigUint> {
    let a = ord_mod(l, p)? as u32;
    let closed = if p.get() == 2 {
        BigUint::one()
    } else {
        BigUint::one() + BigUint::from(l.get()).pow(a) * BigUint::from((p.get() - 3) / 2)
    };
    let g_y = artin_schreier_genus(p, CoverParameters::minimal_s(p))?;
    let via_cover = unramified_cover_genus(&BigUint::from(g_y), l, a)?;
    if closed != via_cover {
        return Err(Error::CheckFailed(format!(
            "minimal genus formula gives {closed}, the unramified-cover route gives {via_cover}"
        )));
    }
    Ok(closed)
}

/// Upper bound on the number of isomorphism classes of minimal-genus curves:
/// `(p - 1)/a` for odd p, `l + 1` for p = 2.
pub fn class_count_bound(p: Prime, l: Prime) -> Result<u64> {
    let a = ord_mod(l, p)?;
    Ok(if p.get() == 2 {
        l.get() + 1
    } else {
        (p.get() - 1) / a
    })
}
