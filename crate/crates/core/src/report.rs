//! Per-curve degree-bound reports and the JSONL record format.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};

use crate::arith::is_squarefree;
use crate::bounds::{self, LinearBounds, Theorem1Bounds, Theorem2Bounds};
use crate::curve::{self, CurveModel, Invariants};
use crate::error::{Error, Result};
use crate::fudge::{self, FudgeFactor, MIN_CONDUCTOR};
use crate::lvalue::{self, SYMSQ_CONSTANT};
use crate::periods::{self, PeriodCase};
use crate::zero_free::{self, ConductorSource, SymPowerConductors, ZeroFreeCase, MIN_N2};

pub const THRESHOLD_WARNING: &str = "below N = 20000 threshold; consult tables";

/// An integer given either as a JSON number or as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactInt(pub BigInt);

impl<'de> Deserialize<'de> for ExactInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExactInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExactInt, E> {
                Ok(ExactInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExactInt, E> {
                Ok(ExactInt(v.into()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExactInt, E> {
                Err(E::custom(format!("expected an exact integer, got {v}")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExactInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(ExactInt)
                    .map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

impl ExactInt {
    fn to_u64(&self, what: &str) -> Result<u64> {
        self.0
            .to_u64()
            .ok_or_else(|| Error::Input(format!("{what} must be a non-negative 64-bit integer")))
    }

    fn to_u128(&self, what: &str) -> Result<u128> {
        self.0.to_u128().ok_or_else(|| {
            Error::Input(format!("{what} must be a non-negative integer below 2^128"))
        })
    }
}

/// One input line.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRecord {
    pub label: String,
    pub a: Vec<ExactInt>,
    pub conductor: ExactInt,
    #[serde(default)]
    pub n2: Option<ExactInt>,
    #[serde(default)]
    pub semistable: Option<bool>,
    #[serde(default)]
    pub twist_minimal: Option<bool>,
    #[serde(default)]
    pub deg_phi: Option<ExactInt>,
}

impl CurveRecord {
    pub fn parse(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_model(&self) -> Result<CurveModel> {
        let a: [BigInt; 5] = self
            .a
            .iter()
            .map(|x| x.0.clone())
            .collect::<Vec<_>>()
            .try_into()
            .map_err(|v: Vec<BigInt>| {
                Error::Input(format!("expected 5 coefficients, got {}", v.len()))
            })?;
        let mut m =
            CurveModel::new(a, self.conductor.to_u64("conductor")?)?.with_label(self.label.clone());
        if let Some(n2) = &self.n2 {
            m = m.with_n2(n2.to_u128("n2")?)?;
        }
        if let Some(d) = &self.deg_phi {
            m = m.with_known_degree(d.to_u64("deg_phi")?)?;
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CmMode {
    #[default]
    Auto,
    Cm,
    Noncm,
}

impl std::str::FromStr for CmMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(CmMode::Auto),
            "cm" => Ok(CmMode::Cm),
            "noncm" => Ok(CmMode::Noncm),
            _ => Err(Error::Input(format!("unknown CM mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProcessOptions {
    pub n2_override: Option<u128>,
    pub cm_mode: CmMode,
    /// Prime cutoff for the non-rigorous Euler-product estimate; `None` skips it.
    pub estimate_cutoff: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionCase {
    Noncm,
    CmQi,
    CmZeta3,
    /// CM by a field of discriminant below -4; the region is not re-derived here.
    CmOther,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem1Report {
    #[serde(flatten)]
    pub bounds: Theorem1Bounds,
    /// Only semistable curves are covered.
    pub applies: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeBoundReport {
    pub label: String,
    #[serde(rename = "N")]
    pub conductor: u64,
    #[serde(serialize_with = "crate::json::u128_exact")]
    pub n2_used: u128,
    pub n2_source: ConductorSource,
    #[serde(serialize_with = "crate::json::bigint")]
    pub disc: BigInt,
    pub semistable: bool,
    pub twist_minimal: bool,
    pub cm_discriminant: Option<i64>,
    pub zero_free_case: RegionCase,
    /// Whether the region certification passed at `n2_used`; absent when it does not apply.
    pub region_certified: Option<bool>,
    pub period_case: PeriodCase,
    pub omega: f64,
    pub lemma1_ok: bool,
    pub l_value_lower: f64,
    pub fudge: Vec<FudgeFactor>,
    pub formula_bound: f64,
    pub theorem1: Theorem1Report,
    pub theorem2: Theorem2Bounds,
    pub linear_bounds: LinearBounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symsq_estimate_nonrigorous: Option<f64>,
    pub known_degree: Option<u64>,
    pub consistency_ok: Option<bool>,
    pub chain_ok: bool,
    /// Names of certified bounds above the known degree.
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub notes: Vec<String>,
}

impl DegreeBoundReport {
    /// Every bound that claims to be a valid lower bound, by name.
    pub fn certified_bounds(&self) -> Vec<(&'static str, f64)> {
        let mut v = vec![
            ("formula_bound", self.formula_bound),
            ("theorem2_analytic", self.theorem2.analytic),
            ("theorem2_intermediate", self.theorem2.intermediate),
            ("theorem2_closed_form", self.theorem2.closed_form),
            ("abramovich", self.linear_bounds.abramovich),
            ("abramovich_selberg", self.linear_bounds.abramovich_selberg),
        ];
        if self.theorem1.applies {
            v.push(("theorem1_analytic", self.theorem1.bounds.analytic));
            v.push(("theorem1_closed_form", self.theorem1.bounds.closed_form));
        }
        v
    }
}

fn region_case(
    inv: &Invariants,
    mode: CmMode,
    notes: &mut Vec<String>,
) -> (Option<i64>, RegionCase) {
    let disc = curve::cm_discriminant(inv);
    let case = match (mode, disc) {
        (CmMode::Noncm, _) => RegionCase::Noncm,
        (_, Some(-4)) => RegionCase::CmQi,
        (_, Some(-3)) => RegionCase::CmZeta3,
        (_, Some(_)) => RegionCase::CmOther,
        (CmMode::Auto, None) => RegionCase::Noncm,
        (CmMode::Cm, None) => {
            notes.push("CM forced but j is not a CM j-invariant; field unknown".into());
            RegionCase::CmOther
        }
    };
    (disc, case)
}

fn certify_region(case: RegionCase, n2: u128) -> Option<bool> {
    let zf = match case {
        RegionCase::Noncm => ZeroFreeCase::Noncm,
        RegionCase::CmQi => ZeroFreeCase::CmQi,
        RegionCase::CmZeta3 => ZeroFreeCase::CmZeta3,
        RegionCase::CmOther => return None,
    };
    if n2 < MIN_N2 {
        return None;
    }
    Some(
        zero_free::certify(zf, &SymPowerConductors::supplied(n2))
            .map(|r| r.overall_pass)
            .unwrap_or(false),
    )
}

/// Runs the whole bound pipeline on one record.
pub fn process_record(record: &CurveRecord, opts: &ProcessOptions) -> Result<DegreeBoundReport> {
    let model = record.to_model()?;
    let inv = curve::derive_invariants(&model)?;
    let n = model.conductor;
    let semistable = is_squarefree(n);
    if let Some(flag) = record.semistable {
        if flag != semistable {
            return Err(Error::Input(format!(
                "semistable flag {flag} disagrees with conductor {n} (squarefree: {semistable})"
            )));
        }
    }
    let mut notes = Vec::new();
    let conductors = match opts.n2_override.or(model.n2) {
        Some(n2) => SymPowerConductors::supplied(n2),
        None => SymPowerConductors::fallback(n),
    };
    let n2 = conductors.n2;
    if n2 > (n as u128) * (n as u128) {
        return Err(Error::Input(format!(
            "n2 = {n2} exceeds N^2 = {}",
            (n as u128) * (n as u128)
        )));
    }
    if n2 < 2 {
        return Err(Error::Input(format!(
            "n2 = {n2} is too small for log n2 > 0"
        )));
    }
    if n2 < MIN_N2 {
        notes.push(format!(
            "n2 = {n2} is below {MIN_N2}; zero-free regions are not established there"
        ));
    }
    let twist_minimal = record.twist_minimal.unwrap_or(true);
    let (cm_discriminant, zero_free_case) = region_case(&inv, opts.cm_mode, &mut notes);
    if zero_free_case == RegionCase::CmOther {
        notes.push("zero-free region for this CM field is not certified here".into());
    }
    let region_certified = certify_region(zero_free_case, n2);

    let l1 = periods::lemma1_check(&inv)?;
    let omega = l1.periods.omega;
    let l_value_lower = SYMSQ_CONSTANT / (n2 as f64).ln();
    let fudge = fudge::fudge_factors(&inv, n, twist_minimal)?;
    let u: Vec<f64> = fudge.iter().map(|f| f.u_inverse_at_1).collect();
    let formula_bound = bounds::degree_formula_bound(n as f64, omega, l_value_lower, &u)?;
    let theorem1 = Theorem1Report {
        bounds: bounds::theorem1(n, omega)?,
        applies: semistable,
    };
    let abs_disc = inv.abs_disc.clone();
    let theorem2 = bounds::theorem2(n, n2, omega, &fudge, |p| valuation_big(&abs_disc, p))?;
    let linear_bounds = bounds::linear_bounds(n, None)?;
    let symsq_estimate_nonrigorous = match opts.estimate_cutoff {
        Some(c) => Some(lvalue::symsq_value_estimate(&model, c)?),
        None => None,
    };

    let mut report = DegreeBoundReport {
        label: record.label.clone(),
        conductor: n,
        n2_used: n2,
        n2_source: conductors.source,
        disc: inv.disc.clone(),
        semistable,
        twist_minimal,
        cm_discriminant,
        zero_free_case,
        region_certified,
        period_case: l1.periods.case_tag,
        omega,
        lemma1_ok: l1.ok,
        l_value_lower,
        fudge,
        formula_bound,
        theorem1,
        chain_ok: theorem2.chain_ok,
        theorem2,
        linear_bounds,
        symsq_estimate_nonrigorous,
        known_degree: model.known_degree,
        consistency_ok: None,
        violations: Vec::new(),
        warning: (n < MIN_CONDUCTOR).then(|| THRESHOLD_WARNING.to_string()),
        notes,
    };
    if let Some(deg) = model.known_degree {
        let violations: Vec<String> = report
            .certified_bounds()
            .into_iter()
            .filter(|&(_, b)| b > deg as f64)
            .map(|(name, _)| name.to_string())
            .collect();
        report.consistency_ok = Some(violations.is_empty());
        report.violations = violations;
    }
    Ok(report)
}

fn valuation_big(x: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut k = 0;
    if x == BigInt::from(0) {
        return u32::MAX;
    }
    while (&x % &p) == BigInt::from(0) {
        x /= &p;
        k += 1;
    }
    k
}

/// Per-line error object for malformed input.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineError {
    pub line: usize,
    pub label: Option<String>,
    pub error: String,
}

/// Parses and processes one JSONL line; `line_no` is 1-based.
pub fn process_line(
    line_no: usize,
    line: &str,
    opts: &ProcessOptions,
) -> std::result::Result<DegreeBoundReport, LineError> {
    let record = CurveRecord::parse(line).map_err(|e| LineError {
        line: line_no,
        label: None,
        error: e.to_string(),
    })?;
    process_record(&record, opts).map_err(|e| LineError {
        line: line_no,
        label: Some(record.label.clone()),
        error: e.to_string(),
    })
}
