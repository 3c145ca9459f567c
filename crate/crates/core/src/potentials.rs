//! Potential descriptors: the two built-in analytic families, tabulated
//! user potentials, shift/offset composition, and JSON config ingestion.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::weyl::Side;

/// Shape of V(x).
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialKind {
    /// V ≡ 0.
    Free,
    /// V = x²/4.
    Harmonic,
    /// V = −ℓ(ℓ+1)/cosh²x.
    PoschlTeller { ell: u32 },
    /// Piecewise-linear interpolation of samples; no extrapolation.
    Tabulated { xs: Vec<f64>, vs: Vec<f64> },
    /// base(x − x0) + v0.
    Shifted { base: Box<PotentialKind>, x0: f64, v0: f64 },
}

/// A validated, immutable potential. Values are deterministic functions of
/// x, so shared concurrent reads are safe.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    kind: PotentialKind,
    label: String,
}

impl Potential {
    pub fn free() -> Self {
        Self { kind: PotentialKind::Free, label: "free".into() }
    }

    pub fn harmonic() -> Self {
        Self { kind: PotentialKind::Harmonic, label: "harmonic".into() }
    }

    pub fn poschl_teller(ell: u32) -> Result<Self> {
        if ell < 1 {
            return Err(Error::InvariantViolation("poschl_teller needs ell >= 1".into()));
        }
        Ok(Self { kind: PotentialKind::PoschlTeller { ell }, label: format!("poschl_teller_{ell}") })
    }

    pub fn tabulated(xs: Vec<f64>, vs: Vec<f64>) -> Result<Self> {
        if xs.len() != vs.len() {
            return Err(Error::InvariantViolation(format!(
                "tabulated potential: {} abscissae vs {} values",
                xs.len(),
                vs.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::InvariantViolation("tabulated potential needs at least 2 samples".into()));
        }
        if !xs.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::InvariantViolation("tabulated abscissae must be strictly increasing".into()));
        }
        if xs.iter().chain(vs.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvariantViolation("tabulated samples must be finite".into()));
        }
        Ok(Self { kind: PotentialKind::Tabulated { xs, vs }, label: "tabulated".into() })
    }

    pub fn shifted(base: Potential, x0: f64, v0: f64) -> Result<Self> {
        if !(x0.is_finite() && v0.is_finite()) {
            return Err(Error::InvariantViolation("shift offsets must be finite".into()));
        }
        let label = format!("{}_shifted", base.label);
        Ok(Self { kind: PotentialKind::Shifted { base: Box::new(base.kind), x0, v0 }, label })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn kind(&self) -> &PotentialKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// V(x).
    pub fn eval(&self, x: f64) -> Result<f64> {
        eval_kind(&self.kind, x).map_err(|reason| Error::PotentialEval {
            label: self.label.clone(),
            x,
            reason,
        })
    }

    /// Start of the far-field region on the given side: the abscissa from
    /// which the decaying Weyl solution can be seeded by its WKB
    /// log-derivative. For tabulated data the table edge is used; that the
    /// tail continues benignly beyond the table is an assumption of the
    /// caller, not something a finite table can certify.
    pub fn far_field_start(&self, side: Side, anchor: f64, lambda: Complex64) -> Result<f64> {
        let sign = match side {
            Side::Right => 1.0,
            Side::Left => -1.0,
        };
        match &self.kind {
            PotentialKind::Free | PotentialKind::PoschlTeller { .. } => Ok(anchor + sign * 25.0),
            PotentialKind::Harmonic => Ok(anchor + sign * (2.0 * lambda.norm().sqrt() + 10.0).max(10.0)),
            PotentialKind::Tabulated { xs, .. } => {
                let edge = match side {
                    Side::Right => *xs.last().unwrap(),
                    Side::Left => xs[0],
                };
                if (edge - anchor) * sign <= 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "tabulated potential does not extend beyond the anchor {anchor} on the {side:?} side"
                    )));
                }
                Ok(edge)
            }
            PotentialKind::Shifted { base, x0, v0 } => {
                let base_pot = Potential { kind: (**base).clone(), label: String::new() };
                let v0c = Complex64::new(*v0, 0.0);
                Ok(base_pot.far_field_start(side, anchor - x0, lambda - v0c)? + x0)
            }
        }
    }
}

fn eval_kind(kind: &PotentialKind, x: f64) -> std::result::Result<f64, String> {
    match kind {
        PotentialKind::Free => Ok(0.0),
        PotentialKind::Harmonic => Ok(x * x / 4.0),
        PotentialKind::PoschlTeller { ell } => {
            let l = *ell as f64;
            let c = x.cosh();
            Ok(-l * (l + 1.0) / (c * c))
        }
        PotentialKind::Tabulated { xs, vs } => {
            let (lo, hi) = (xs[0], *xs.last().unwrap());
            if x < lo || x > hi {
                return Err(format!("outside tabulated domain [{lo}, {hi}]"));
            }
            let i = match xs.binary_search_by(|p| p.partial_cmp(&x).unwrap()) {
                Ok(i) => return Ok(vs[i]),
                Err(i) => i,
            };
            let (x0, x1) = (xs[i - 1], xs[i]);
            let t = (x - x0) / (x1 - x0);
            Ok(vs[i - 1] * (1.0 - t) + vs[i] * t)
        }
        PotentialKind::Shifted { base, x0, v0 } => Ok(eval_kind(base, x - x0)? + v0),
    }
}

/// Log-derivative of the solution decaying toward ±∞, used to seed the
/// Riccati flow in the far field: −√(V(x)−λ) on the right half-line,
/// +√(V(x)−λ) on the left, with Re√ ≥ 0. Real λ is treated as the limit
/// from the upper half-plane.
pub fn wkb_log_derivative(
    potential: &Potential,
    lambda: Complex64,
    x: f64,
    side: Side,
) -> Result<Complex64> {
    let v = potential.eval(x)?;
    let mut d = Complex64::new(v, 0.0) - lambda;
    if lambda.im == 0.0 {
        // +i0 limit: push V−λ infinitesimally below the real axis so the
        // principal root lands on the outgoing branch for λ above V.
        d = Complex64::new(d.re, -0.0);
    }
    let root = d.sqrt(); // principal: Re ≥ 0
    Ok(match side {
        Side::Right => -root,
        Side::Left => root,
    })
}

/// Flat JSON document describing a potential:
/// `{"kind": string, "ell"?, "xs"?, "vs"?, "x0"?, "v0"?, "label"?}`.
/// A nonzero `x0`/`v0` wraps the base kind in a shift.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xs: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vs: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Build a validated [`Potential`] from its config document.
pub fn parse_potential(config: &PotentialConfig) -> Result<Potential> {
    let base = match config.kind.as_str() {
        "free" => Potential::free(),
        "harmonic" => Potential::harmonic(),
        "poschl_teller" => {
            let ell = config
                .ell
                .ok_or_else(|| Error::SchemaError("poschl_teller requires 'ell'".into()))?;
            Potential::poschl_teller(ell)?
        }
        "tabulated" => {
            let xs = config
                .xs
                .clone()
                .ok_or_else(|| Error::SchemaError("tabulated requires 'xs'".into()))?;
            let vs = config
                .vs
                .clone()
                .ok_or_else(|| Error::SchemaError("tabulated requires 'vs'".into()))?;
            Potential::tabulated(xs, vs)?
        }
        other => return Err(Error::SchemaError(format!("unknown potential kind '{other}'"))),
    };
    let shifted = match (config.x0, config.v0) {
        (None, None) => base,
        (x0, v0) => {
            let (x0, v0) = (x0.unwrap_or(0.0), v0.unwrap_or(0.0));
            if x0 == 0.0 && v0 == 0.0 {
                base
            } else {
                Potential::shifted(base, x0, v0)?
            }
        }
    };
    Ok(match &config.label {
        Some(l) => shifted.with_label(l.clone()),
        None => shifted,
    })
}

/// Serialize a potential back to its config document. `parse_potential`
/// of the result reproduces the potential exactly.
pub fn potential_to_config(potential: &Potential) -> PotentialConfig {
    let mut cfg = PotentialConfig {
        kind: String::new(),
        ell: None,
        xs: None,
        vs: None,
        x0: None,
        v0: None,
        label: Some(potential.label().to_string()),
    };
    fn fill(kind: &PotentialKind, cfg: &mut PotentialConfig) {
        match kind {
            PotentialKind::Free => cfg.kind = "free".into(),
            PotentialKind::Harmonic => cfg.kind = "harmonic".into(),
            PotentialKind::PoschlTeller { ell } => {
                cfg.kind = "poschl_teller".into();
                cfg.ell = Some(*ell);
            }
            PotentialKind::Tabulated { xs, vs } => {
                cfg.kind = "tabulated".into();
                cfg.xs = Some(xs.clone());
                cfg.vs = Some(vs.clone());
            }
            PotentialKind::Shifted { base, x0, v0 } => {
                fill(base, cfg);
                cfg.x0 = Some(*x0);
                cfg.v0 = Some(*v0);
            }
        }
    }
    fill(potential.kind(), &mut cfg);
    cfg
}

/// Parse a potential straight from JSON text.
pub fn parse_potential_json(json: &str) -> Result<Potential> {
    let config: PotentialConfig =
        serde_json::from_str(json).map_err(|e| Error::SchemaError(e.to_string()))?;
    parse_potential(&config)
}
