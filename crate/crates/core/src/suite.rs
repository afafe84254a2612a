//! The full certification run behind `verify-lemmas`.

use num_rational::Rational64;
use serde::Serialize;

use crate::bounds;
use crate::cert::{all_pass, Waypoint};
use crate::error::Result;
use crate::lvalue;
use crate::periods::{self, LEMMA1_CONSTANT};
use crate::special::{self, Lemma4Integrand};
use crate::zero_free::{self, trig, SymPowerConductors};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section {
    pub name: String,
    pub waypoints: Vec<Waypoint>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Section {
    fn from(name: &str, r: Result<(Vec<Waypoint>, Vec<String>)>) -> Self {
        match r {
            Ok((waypoints, notes)) => Section {
                name: name.into(),
                pass: all_pass(&waypoints),
                waypoints,
                error: None,
                notes,
            },
            Err(e) => Section {
                name: name.into(),
                waypoints: vec![],
                pass: false,
                error: Some(e.to_string()),
                notes: vec![],
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    #[serde(serialize_with = "crate::json::u128_exact")]
    pub n2: u128,
    pub sections: Vec<Section>,
    pub overall_pass: bool,
}

impl VerificationReport {
    /// Human-readable listing, one waypoint per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out.push_str(&format!(
                "== {} [{}]\n",
                s.name,
                if s.pass { "PASS" } else { "FAIL" }
            ));
            if let Some(e) = &s.error {
                out.push_str(&format!("   error: {e}\n"));
            }
            for w in &s.waypoints {
                out.push_str(&format!("   {}\n", w.line()));
            }
            for n in &s.notes {
                out.push_str(&format!("   note: {n}\n"));
            }
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.overall_pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn lemma1() -> Result<(Vec<Waypoint>, Vec<String>)> {
    let k = periods::lemma1_extremal_constants();
    Ok((
        vec![
            Waypoint::within("case1_constant", k.k1, 13.7504 - 1e-3, 13.7504 + 1e-3),
            Waypoint::within("case2_constant", k.k2, 14.0449 - 1e-3, 14.0449 + 1e-3),
            Waypoint::at_most("max_constant", k.k1.max(k.k2), LEMMA1_CONSTANT),
        ],
        vec![],
    ))
}

fn zero_free_section(
    f: fn(&SymPowerConductors) -> Result<zero_free::CertReport>,
    n2: u128,
) -> Result<(Vec<Waypoint>, Vec<String>)> {
    let r = f(&SymPowerConductors::supplied(n2))?;
    Ok((r.waypoints, r.notes))
}

fn lemma4(n2: u128) -> Result<(Vec<Waypoint>, Vec<String>)> {
    let c = lvalue::lemma4_certify(n2)?;
    let mut w = c.waypoints;
    w.push(Waypoint::within(
        "symsq_lower_bound",
        c.lower_bound,
        c.lower_bound,
        c.lower_bound,
    ));
    Ok((w, c.notes))
}

fn error_integral() -> Result<(Vec<Waypoint>, Vec<String>)> {
    let q = special::lemma4_error_integral()?;
    let printed = special::lemma4_error_integral_with(Lemma4Integrand::ThreeHalves, 1e-8)?;
    Ok((
        vec![
            Waypoint::less_than("integral", q.value, special::LEMMA4_INTEGRAL_BOUND),
            Waypoint::at_most("quadrature_error", q.abs_error_estimate, 1e-6),
        ],
        vec![format!(
            "integrand with (25/4+t^2)^(3/2): {:.10} (informational)",
            printed.value
        )],
    ))
}

fn trig_section() -> Result<(Vec<Waypoint>, Vec<String>)> {
    let c = trig::trig_poly_expand(Rational64::new(5, 2));
    let expect = [106, 171, 90, 25].map(|k| Rational64::new(k, 16));
    let exact = if c == expect { 1.0 } else { 0.0 };
    let grid = 10_000;
    let beta_star = trig::quintic_beta_optimum().beta_star;
    // the exact minima are 0 at double roots, so only roundoff is allowed below 0
    let floor = -1e-12;
    Ok((
        vec![
            Waypoint::at_least("expansion_5_2_exact", exact, 1.0),
            Waypoint::at_least("min_gaussian_weight", trig::gaussian_weight().min_on_grid(grid), floor),
            Waypoint::at_least("min_weight_5_2", trig::weight_family(2.5).min_on_grid(grid), floor),
            Waypoint::at_least("min_weight_beta_star", trig::weight_family(beta_star).min_on_grid(grid), floor),
        ],
        vec![format!("weights are nonnegative by construction; grid minima of the expansions on {grid} points, roundoff floor {floor:e}")],
    ))
}

fn quintic_section() -> Result<(Vec<Waypoint>, Vec<String>)> {
    let q = trig::quintic_beta_optimum();
    Ok((
        vec![
            Waypoint::within(
                "beta_star",
                q.beta_star,
                2.629_152_166 - 1e-8,
                2.629_152_166 + 1e-8,
            ),
            Waypoint::at_most("root_residual", q.residual, 1e-10),
        ],
        vec![format!("positive roots: {:?}", q.positive_roots)],
    ))
}

fn crossover_section() -> Result<(Vec<Waypoint>, Vec<String>)> {
    let c = bounds::crossover_check();
    Ok((
        vec![Waypoint::within("log_N_star", c.log_n_star, 86.0, 87.5)],
        vec![],
    ))
}

/// Runs every certification at the given symmetric-square conductor.
pub fn run_verification(n2: u128) -> VerificationReport {
    let sections = vec![
        Section::from("lemma1_extremal_constants", lemma1()),
        Section::from(
            "zero_free_noncm",
            zero_free_section(zero_free::certify_noncm, n2),
        ),
        Section::from(
            "zero_free_cm_qi",
            zero_free_section(zero_free::certify_cm_qi, n2),
        ),
        Section::from(
            "zero_free_cm_zeta3",
            zero_free_section(zero_free::certify_cm_zeta3, n2),
        ),
        Section::from("lemma4", lemma4(n2)),
        Section::from("lemma4_error_integral", error_integral()),
        Section::from("trig_poly_expand", trig_section()),
        Section::from("quintic_beta_optimum", quintic_section()),
        Section::from("crossover", crossover_section()),
    ];
    let overall_pass = sections.iter().all(|s| s.pass);
    VerificationReport {
        n2,
        sections,
        overall_pass,
    }
}
