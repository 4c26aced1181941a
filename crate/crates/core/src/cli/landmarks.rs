use serde_json::{json, Value};

use super::{failure, to_json, usage, ChannelKind, CliError, CommandOutput, Format, LandmarkArgs};
use crate::binary::{delta_gv, landmarks, min_valid_rate_plus, nontrivial_rate_threshold, BscChannel};
use crate::spherical::{spherical_landmarks, AwgnChannel};

/// Landmarks of the BSC bounds (bits) or of the spherical bounds on both
/// sides (nats, radians), with the residuals of the implicit equations.
pub fn cmd_landmarks(channel: ChannelKind, param: f64, tau: f64) -> Result<Value, CliError> {
    if !(tau >= 0.0) {
        return Err(CliError::Usage(format!("tau {tau} must be nonnegative")));
    }
    match channel {
        ChannelKind::Bsc => {
            let ch = BscChannel::new(param).map_err(usage)?;
            let threshold = nontrivial_rate_threshold(&ch, tau);
            Ok(json!({
                "channel": "bsc",
                "p": ch.p,
                "tau": tau,
                "units": "bits",
                "capacity": ch.capacity(),
                "nu": ch.nu,
                "landmarks": landmarks(&ch, tau),
                "m_plus_min_rate": min_valid_rate_plus(tau),
                "m_minus_zero_rate": threshold,
                "delta_gv_at_zero_rate": delta_gv(threshold),
            }))
        }
        ChannelKind::Awgn => {
            let ch = AwgnChannel::new(param).map_err(usage)?;
            let error = spherical_landmarks(tau, &ch).map_err(failure)?;
            let erasure = spherical_landmarks(-tau, &ch).map_err(failure)?;
            Ok(json!({
                "channel": "awgn",
                "snr": ch.a,
                "tau": tau,
                "units": "nats",
                "capacity": ch.capacity(),
                "capacity_angle": ch.capacity_angle(),
                "error": error,
                "erasure": erasure,
            }))
        }
    }
}

pub(super) fn run(a: &LandmarkArgs) -> Result<CommandOutput, CliError> {
    let ch = &a.channel;
    let param = match ch.channel {
        ChannelKind::Bsc => ch.p()?,
        ChannelKind::Awgn => ch.snr()?,
    };
    match a.output.format {
        None | Some(Format::Json) => {}
        Some(f) => {
            return Err(CliError::Usage(format!(
                "landmarks supports only json output, not {f:?}"
            )))
        }
    }
    let v = cmd_landmarks(ch.channel, param, ch.tau())?;
    Ok(CommandOutput::ok(to_json(&v)))
}
