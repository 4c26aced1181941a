use std::fs;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::format::format_sig;
use super::{failure, to_json, usage, CliError, CommandOutput, Format, SimulateArgs};
use crate::finite::{exact_margin_probability, EXACT_MAX_N, EXACT_MAX_WORK};
use crate::sim::{
    estimate_exponent, gen_linear_code, hamming_7_4, simulate_awgn, simulate_bsc, simulate_cone_exit,
    SphericalCodebook, WILSON_Z95,
};
use crate::spherical::{esp, AwgnChannel};

/// Simulation config, read from JSON. `seed` is mandatory once command-line
/// overrides are applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SimConfig {
    /// Margin decoding of a binary code on a BSC. Without `n` and `k` the
    /// [7, 4] Hamming code is used.
    Bsc {
        n: Option<usize>,
        k: Option<usize>,
        #[serde(default)]
        code_seed: u64,
        p: f64,
        #[serde(default)]
        t: usize,
        trials: u64,
        seed: Option<u64>,
    },
    /// Margin decoding of a random spherical code with `m` points.
    Awgn {
        snr: f64,
        m: usize,
        n: usize,
        #[serde(default)]
        codebook_seed: u64,
        #[serde(default)]
        tau: f64,
        trials: u64,
        seed: Option<u64>,
    },
    /// Probability of leaving the cone of half-angle `phi`, for each `n`.
    ConeExit {
        snr: f64,
        phi: f64,
        n: Vec<usize>,
        trials: u64,
        seed: Option<u64>,
    },
}

impl SimConfig {
    fn seed(&self) -> Option<u64> {
        match self {
            SimConfig::Bsc { seed, .. } | SimConfig::Awgn { seed, .. } | SimConfig::ConeExit { seed, .. } => *seed,
        }
    }

    /// Apply command-line overrides. A flag that does not apply to this
    /// kind of simulation is a usage error.
    pub fn with_overrides(
        mut self,
        seed: Option<u64>,
        trials: Option<u64>,
        p_flag: Option<f64>,
        snr_flag: Option<f64>,
        tau_flag: Option<f64>,
    ) -> Result<Self, CliError> {
        let not_for = |flag: &str| Err(CliError::Usage(format!("--{flag} does not apply to this config")));
        match &mut self {
            SimConfig::Bsc {
                p, seed: s, trials: n, ..
            } => {
                if snr_flag.is_some() {
                    return not_for("snr");
                }
                if tau_flag.is_some() {
                    return not_for("tau");
                }
                *p = p_flag.unwrap_or(*p);
                *s = seed.or(*s);
                *n = trials.unwrap_or(*n);
            }
            SimConfig::Awgn {
                snr,
                tau,
                seed: s,
                trials: n,
                ..
            } => {
                if p_flag.is_some() {
                    return not_for("p");
                }
                *snr = snr_flag.unwrap_or(*snr);
                *tau = tau_flag.unwrap_or(*tau);
                *s = seed.or(*s);
                *n = trials.unwrap_or(*n);
            }
            SimConfig::ConeExit {
                snr,
                seed: s,
                trials: n,
                ..
            } => {
                if p_flag.is_some() {
                    return not_for("p");
                }
                if tau_flag.is_some() {
                    return not_for("tau");
                }
                *snr = snr_flag.unwrap_or(*snr);
                *s = seed.or(*s);
                *n = trials.unwrap_or(*n);
            }
        }
        Ok(self)
    }
}

/// Run a simulation config. The result depends only on the config.
pub fn cmd_simulate(config: &SimConfig) -> Result<Value, CliError> {
    let Some(seed) = config.seed() else {
        return Err(CliError::Usage("a seed is required (config field or --seed)".into()));
    };
    match config {
        SimConfig::Bsc {
            n,
            k,
            code_seed,
            p,
            t,
            trials,
            ..
        } => {
            let code = match (n, k) {
                (None, None) => hamming_7_4(),
                (Some(n), Some(k)) => gen_linear_code(*n, *k, *code_seed).map_err(usage)?,
                _ => return Err(CliError::Usage("bsc config needs both n and k, or neither".into())),
            };
            if !(0.0..=1.0).contains(p) {
                return Err(CliError::Usage(format!("p = {p} outside [0, 1]")));
            }
            let tally = simulate_bsc(&code, *p, *t, *trials, seed);
            let exact = if code.n() <= EXACT_MAX_N && code.n() + code.k() <= EXACT_MAX_WORK && *p > 0.0 && *p < 1.0 {
                let e = exact_margin_probability(&code, *p, *t).map_err(failure)?;
                let (lo, hi) = tally.undetected_interval(WILSON_Z95);
                Some(json!({
                    "probabilities": e,
                    "undetected_in_ci95": lo <= e.undetected && e.undetected <= hi,
                }))
            } else {
                None
            };
            Ok(json!({
                "config": config,
                "code": {"n": code.n(), "k": code.k(), "generator": code.generator()},
                "tally": tally.summary(),
                "exact": exact,
            }))
        }
        SimConfig::Awgn {
            snr,
            m,
            n,
            codebook_seed,
            tau,
            trials,
            ..
        } => {
            let ch = AwgnChannel::new(*snr).map_err(usage)?;
            let book = SphericalCodebook::random(*m, *n, &ch, *codebook_seed).map_err(usage)?;
            let tally = simulate_awgn(&book, *tau, *trials, seed);
            Ok(json!({"config": config, "tally": tally.summary()}))
        }
        SimConfig::ConeExit {
            snr, phi, n, trials, ..
        } => {
            let ch = AwgnChannel::new(*snr).map_err(usage)?;
            let points = n
                .iter()
                .map(|&len| simulate_cone_exit(len, &ch, *phi, *trials, seed).map_err(usage))
                .collect::<Result<Vec<_>, _>>()?;
            let fit: Vec<(f64, f64)> = points.iter().map(|e| (e.n as f64, e.estimate)).collect();
            let regression = if fit.len() >= 3 {
                Some(estimate_exponent(&fit).map_err(failure)?)
            } else {
                None
            };
            Ok(json!({
                "config": config,
                "points": points,
                "regression": regression,
                "esp": esp(*phi, &ch).map_err(usage)?,
            }))
        }
    }
}

/// Per-point CSV: one row per blocklength for cone-exit configs, one row
/// of counts otherwise.
fn to_csv(result: &Value) -> String {
    let f = |v: &Value| v.as_f64().map_or(String::new(), |x| format_sig(x, 12));
    if let Some(points) = result["points"].as_array() {
        let mut s = String::from("n,trials,exits,estimate,ci95_lo,ci95_hi\n");
        for p in points {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                p["n"],
                p["trials"],
                p["exits"],
                f(&p["estimate"]),
                f(&p["ci95"][0]),
                f(&p["ci95"][1])
            ));
        }
        s
    } else {
        let t = &result["tally"];
        format!(
            "trials,correct,undetected,erasure,seed\n{},{},{},{},{}\n",
            t["trials"], t["correct"], t["undetected"], t["erasure"], t["seed"]
        )
    }
}

pub(super) fn run(a: &SimulateArgs) -> Result<CommandOutput, CliError> {
    let text = fs::read_to_string(&a.config).map_err(|e| CliError::Usage(format!("{}: {e}", a.config.display())))?;
    let config: SimConfig =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", a.config.display())))?;
    let config = config.with_overrides(a.seed, a.trials, a.p, a.snr, a.tau)?;
    let result = cmd_simulate(&config)?;
    let body = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&result),
        Format::Csv => to_csv(&result),
        Format::Svg => return Err(CliError::Usage("simulate has no svg output".into())),
    };
    Ok(CommandOutput::ok(body))
}
