//! Numerical tolerances shared across the crate.

use crate::error::{Error, Result};

/// All tolerance knobs with their defaults. Every field can be overridden
/// from the CLI (`--tol KEY=VAL`) or the environment (`ADSCURVE_TOL_KEY`).
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Half-width of the lightlike band in causal classification.
    pub causal: f64,
    /// Pseudo-orthonormality residual accepted for frames.
    pub orth: f64,
    /// Residual accepted on the Hopf-image quadric.
    pub hopf: f64,
    /// Pseudo-sphere membership residual.
    pub memb: f64,
    /// Framed-condition residual for analytic catalog curves.
    pub framed_catalog: f64,
    /// Framed-condition residual for user-supplied sample tables.
    pub framed_table: f64,
    /// Zero-detection band for curvature functions (singular parameters,
    /// adapted-frame degeneracy).
    pub sing: f64,
    /// Root-refinement width in the curve parameter.
    pub root: f64,
    /// Orthonormality drift budget per unit parameter length along
    /// reconstructions.
    pub drift: f64,
    /// Pointwise acceptance for congruence verification.
    pub congr: f64,
    /// Zero test for the cuspidal-edge / swallowtail decision.
    pub class: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            causal: 1e-10,
            orth: 1e-8,
            hopf: 1e-8,
            memb: 1e-8,
            framed_catalog: 1e-10,
            framed_table: 1e-6,
            sing: 1e-9,
            root: 1e-12,
            drift: 1e-8,
            congr: 1e-6,
            class: 1e-7,
        }
    }
}

impl Tolerances {
    /// Framed-condition tolerance for a source of the given analyticity.
    pub fn framed(&self, analytic: bool) -> f64 {
        if analytic {
            self.framed_catalog
        } else {
            self.framed_table
        }
    }

    /// Applies one `KEY=VAL` override. `framed` sets both framed tolerances.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::Domain(format!(
                "tolerance {key} must be a finite non-negative number, got {value}"
            )));
        }
        match key {
            "causal" => self.causal = value,
            "orth" => self.orth = value,
            "hopf" => self.hopf = value,
            "memb" => self.memb = value,
            "framed" => {
                self.framed_catalog = value;
                self.framed_table = value;
            }
            "framed_catalog" => self.framed_catalog = value,
            "framed_table" => self.framed_table = value,
            "sing" => self.sing = value,
            "root" => self.root = value,
            "drift" => self.drift = value,
            "congr" => self.congr = value,
            "class" => self.class = value,
            _ => {
                return Err(Error::Domain(format!(
                    "unknown tolerance key `{key}` (known: causal, orth, hopf, memb, framed, \
                     framed_catalog, framed_table, sing, root, drift, congr, class)"
                )))
            }
        }
        Ok(())
    }

    /// Reads `ADSCURVE_TOL_*` environment overrides.
    pub fn with_env(mut self) -> Result<Self> {
        for (k, v) in std::env::vars() {
            if let Some(key) = k.strip_prefix("ADSCURVE_TOL_") {
                let value: f64 = v.parse().map_err(|_| {
                    Error::Domain(format!("cannot parse {k}={v} as a number"))
                })?;
                self.set(&key.to_ascii_lowercase(), value)?;
            }
        }
        Ok(self)
    }
}
