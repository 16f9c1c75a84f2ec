use serde::{Deserialize, Serialize};

use super::{gen_var, rng, standard_normals, VarSpec, VAR_BURN_IN};
use crate::error::Result;

/// Ground-truth causal pattern between an advertisement series (x) and an
/// article series (y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalScenario {
    /// Ads lead articles: x_{t-1} enters y_t.
    AdsLead,
    /// Articles lead ads: y_{t-1} enters x_t.
    ArticlesLead,
    /// A latent driver feeds both series.
    CommonDriver,
    /// Two unrelated AR(1) series.
    Independent,
}

impl CausalScenario {
    pub const ALL: [CausalScenario; 4] = [
        CausalScenario::AdsLead,
        CausalScenario::ArticlesLead,
        CausalScenario::CommonDriver,
        CausalScenario::Independent,
    ];
}

/// Generator parameters shared by all scenarios.
///
/// Directed scenarios are VAR(1) processes with own-lag coefficient `own`
/// and coupling `coupling`. The common-driver scenario draws a latent AR(1)
/// driver `z` with coefficient `driver_ar` and sets
///
/// ```text
/// x_t = own * x_{t-1} + driver_load * z_{t-1} + e_x
/// y_t = own * y_{t-1} + driver_load * z_{t-1} + e_y
/// ```
///
/// The defaults keep every series close to a unit root, the regime in which
/// differencing before testing leaves little spurious feedback.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioParams {
    pub n: usize,
    pub own: f64,
    pub coupling: f64,
    pub driver_ar: f64,
    pub driver_load: f64,
    pub noise_sd: f64,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        ScenarioParams {
            n: 500,
            own: 0.99,
            coupling: 0.5,
            driver_ar: 0.99,
            driver_load: 1.0,
            noise_sd: 1.0,
        }
    }
}

impl CausalScenario {
    /// Returns `(ads, articles)`.
    pub fn generate(self, params: &ScenarioParams, seed: u64) -> Result<(Vec<f64>, Vec<f64>)> {
        let var = |a_xy: f64, a_yx: f64| {
            gen_var(&VarSpec {
                n: params.n,
                a_xx: params.own,
                a_yy: params.own,
                a_xy,
                a_yx,
                noise_sd: params.noise_sd,
                seed,
            })
        };
        match self {
            CausalScenario::AdsLead => var(params.coupling, 0.0),
            CausalScenario::ArticlesLead => var(0.0, params.coupling),
            CausalScenario::Independent => var(0.0, 0.0),
            CausalScenario::CommonDriver => {
                let total = params.n + VAR_BURN_IN;
                let mut rng = rng(seed);
                let e = standard_normals(&mut rng, 3 * total);
                let mut z = vec![0.0; total];
                let mut x = vec![0.0; total];
                let mut y = vec![0.0; total];
                for t in 2..total {
                    z[t] = params.driver_ar * z[t - 1] + e[3 * t];
                    x[t] = params.own * x[t - 1]
                        + params.driver_load * z[t - 1]
                        + params.noise_sd * e[3 * t + 1];
                    y[t] = params.own * y[t - 1]
                        + params.driver_load * z[t - 1]
                        + params.noise_sd * e[3 * t + 2];
                }
                Ok((x.split_off(VAR_BURN_IN), y.split_off(VAR_BURN_IN)))
            }
        }
    }
}
