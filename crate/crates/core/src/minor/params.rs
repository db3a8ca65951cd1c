use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Named numeric constants of the construction. The defaults are the values
/// the guarantees are proved for; desk-scale experiments may shrink them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Constants {
    /// Ball-size and neighbourhood-ratio constant (2800).
    pub c_ball: f64,
    /// Numerator of `b` in the small-`k` regime (2700).
    pub c_turan_factor: f64,
    /// Regime split `k <= c_regime * d^{2 eps}` (324).
    pub c_regime: f64,
    /// Denominator in the final independent-set bound (5600).
    pub c_final: f64,
    /// Divisor in `k = floor(d^{1-3beta-2gamma} / c_paths_div)` (16).
    pub c_paths_div: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self { c_ball: 2800.0, c_turan_factor: 2700.0, c_regime: 324.0, c_final: 5600.0, c_paths_div: 16.0 }
    }
}

impl Constants {
    pub const KEYS: [&'static str; 5] = ["c_ball", "c_turan_factor", "c_regime", "c_final", "c_paths_div"];

    /// Sets one constant by name; values must be finite and positive.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Input(format!("constant {key} must be positive and finite, got {value}")));
        }
        let slot = match key {
            "c_ball" => &mut self.c_ball,
            "c_turan_factor" => &mut self.c_turan_factor,
            "c_regime" => &mut self.c_regime,
            "c_final" => &mut self.c_final,
            "c_paths_div" => &mut self.c_paths_div,
            _ => {
                return Err(Error::Input(format!(
                    "unknown constant {key:?}; expected one of {}",
                    Self::KEYS.join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    SmallK,
    LargeK,
}

/// Sampling probability, density target and regime for one extraction run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub epsilon: f64,
    pub d: f64,
    pub k: usize,
    /// Anchor sampling probability `max(18 / d^{1-eps}, sqrt(k) / d)`.
    pub p: f64,
    /// Power-graph average degree that guarantees a minor of average degree `d`.
    pub b: f64,
    pub regime: Regime,
    /// Whether `d >= max(288^{1/(1-eps)}, 16 sqrt(k))`. Informational only.
    pub precondition_met: bool,
}

pub fn derive_params(d: f64, epsilon: f64, k: usize) -> Result<Params> {
    derive_params_with(d, epsilon, k, &Constants::default())
}

pub fn derive_params_with(d: f64, epsilon: f64, k: usize, c: &Constants) -> Result<Params> {
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::Input(format!("d must be positive, got {d}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Input(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    if k == 0 {
        return Err(Error::Input("k must be a positive integer".into()));
    }
    let sqrt_k = (k as f64).sqrt();
    let p = (18.0 / d.powf(1.0 - epsilon)).max(sqrt_k / d);
    if p > 1.0 {
        return Err(Error::Parameter(format!("sampling probability exceeds 1 (p = {p})")));
    }
    let (regime, b) = if k as f64 <= c.c_regime * d.powf(2.0 * epsilon) {
        (Regime::SmallK, c.c_turan_factor * d.powf(2.0 + epsilon) / k as f64)
    } else {
        (Regime::LargeK, 150.0 * d * d / sqrt_k)
    };
    let precondition_met = d >= 288f64.powf(1.0 / (1.0 - epsilon)).max(16.0 * sqrt_k);
    Ok(Params { epsilon, d, k, p, b, regime, precondition_met })
}
