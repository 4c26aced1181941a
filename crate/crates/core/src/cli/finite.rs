use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use super::format::format_sig;
use super::{failure, to_json, usage, ChannelKind, CliError, CommandOutput, FiniteArgs, Format, Mode, Units};
use crate::binary::{margin_bound, BscChannel};
use crate::finite::{
    awgn_union_bound, binary_union_bound, exact_margin_probability, MarginParams, MarginProbabilities,
    WeightDistribution, EXACT_MAX_N, EXACT_MAX_WORK,
};
use crate::sim::{gen_linear_code, weight_distribution};
use crate::spherical::AwgnChannel;

/// Inputs of one finite-length bound evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiniteBoundSpec {
    pub channel: ChannelKind,
    /// Crossover probability (BSC) or signal-to-noise ratio (AWGN).
    pub param: f64,
    pub n: usize,
    /// Binary code rate in bits; required for the GV ensemble.
    pub rate: Option<f64>,
    /// Use a random `[n, k]` code with this seed instead of the ensemble.
    pub code: Option<(usize, u64)>,
    pub t: usize,
    /// Spherical margin (radians).
    pub tau: f64,
    pub rho: f64,
    pub mode: Mode,
    pub units: Units,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteBoundReport {
    pub spec: FiniteBoundSpec,
    pub distribution: &'static str,
    pub ln_bound: f64,
    /// `-ln(bound)/n` in the requested units.
    pub exponent: f64,
    /// Asymptotic counterpart at `τ = t/n` (BSC only).
    pub asymptotic: Option<f64>,
    /// Exhaustive decoding probabilities for small codes (BSC only).
    pub exact: Option<MarginProbabilities>,
}

fn distribution(spec: &FiniteBoundSpec) -> Result<(WeightDistribution, &'static str), CliError> {
    match (spec.code, spec.rate) {
        (Some((k, seed)), _) => {
            let code = gen_linear_code(spec.n, k, seed).map_err(usage)?;
            Ok((weight_distribution(&code).map_err(usage)?, "code"))
        }
        (None, Some(r)) => Ok((
            WeightDistribution::gv_ensemble(spec.n, r).map_err(usage)?,
            "gv-ensemble",
        )),
        (None, None) => Err(CliError::Usage("need --rate for the GV ensemble, or --k".into())),
    }
}

pub fn cmd_finite_bound(spec: &FiniteBoundSpec) -> Result<FiniteBoundReport, CliError> {
    let (wd, kind) = distribution(spec)?;
    let n = spec.n as f64;
    match spec.channel {
        ChannelKind::Bsc => {
            let ch = BscChannel::new(spec.param).map_err(usage)?;
            let m = MarginParams { t: spec.t, r: None };
            let ln_bound = binary_union_bound(&wd, ch.p, m, spec.mode.into()).map_err(usage)?;
            let exponent = -ln_bound / n * spec.units.factor_from(Units::Nats);
            let rate = match spec.code {
                Some((k, _)) => k as f64 / n,
                None => spec.rate.unwrap_or(0.0),
            };
            let asym = margin_bound(rate, &ch, spec.t as f64 / n, spec.mode.into());
            let exact = match spec.code {
                Some((k, seed)) if spec.n <= EXACT_MAX_N && spec.n + k <= EXACT_MAX_WORK => {
                    let code = gen_linear_code(spec.n, k, seed).map_err(usage)?;
                    Some(exact_margin_probability(&code, ch.p, spec.t).map_err(failure)?)
                }
                _ => None,
            };
            Ok(FiniteBoundReport {
                spec: *spec,
                distribution: kind,
                ln_bound,
                exponent,
                asymptotic: asym.valid.then(|| asym.value * spec.units.factor_from(Units::Bits)),
                exact,
            })
        }
        ChannelKind::Awgn => {
            let ch = AwgnChannel::new(spec.param).map_err(usage)?;
            let ln_bound = awgn_union_bound(&wd, &ch, spec.tau, spec.rho).map_err(usage)?;
            Ok(FiniteBoundReport {
                spec: *spec,
                distribution: kind,
                ln_bound,
                exponent: -ln_bound / n * spec.units.factor_from(Units::Nats),
                asymptotic: None,
                exact: None,
            })
        }
    }
}

pub(super) fn run(a: &FiniteArgs) -> Result<CommandOutput, CliError> {
    let ch = &a.channel;
    let (param, native) = match ch.channel {
        ChannelKind::Bsc => (ch.p()?, Units::Bits),
        ChannelKind::Awgn => (ch.snr()?, Units::Nats),
    };
    let code = match (a.k, a.code_seed) {
        (Some(k), Some(s)) => Some((k, s)),
        (None, None) => None,
        _ => return Err(CliError::Usage("--k and --code-seed go together".into())),
    };
    let spec = FiniteBoundSpec {
        channel: ch.channel,
        param,
        n: a.n,
        rate: a.rate,
        code,
        t: a.t,
        tau: ch.tau(),
        rho: a.rho.unwrap_or(FRAC_PI_2),
        mode: a.mode,
        units: a.units.unwrap_or(native),
    };
    let report = cmd_finite_bound(&spec)?;
    let body = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "n,distribution,ln_bound,exponent,asymptotic\n{},{},{},{},{}\n",
            spec.n,
            report.distribution,
            format_sig(report.ln_bound, 12),
            format_sig(report.exponent, 12),
            report.asymptotic.map_or(String::new(), |v| format_sig(v, 12)),
        ),
        Format::Svg => return Err(CliError::Usage("finite-bound has no svg output".into())),
    };
    Ok(CommandOutput::ok(body))
}
