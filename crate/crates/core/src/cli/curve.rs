use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::format::format_sig;
use super::{failure, to_json, usage, ChannelKind, CliError, CommandOutput, CurveArgs, Format, Units};
use crate::binary::{bz_bounds, gallager_exponent, margin_bound, BscChannel};
use crate::spherical::{shannon_exponent, AwgnChannel, ExpurgationForm, SphericalBounds};
use crate::MarginKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundName {
    Gallager,
    BzE,
    BzX,
    MPlus,
    MMinus,
    Shannon,
    MError,
    MErasure,
}

impl BoundName {
    pub const ALL: [BoundName; 8] = [
        BoundName::Gallager,
        BoundName::BzE,
        BoundName::BzX,
        BoundName::MPlus,
        BoundName::MMinus,
        BoundName::Shannon,
        BoundName::MError,
        BoundName::MErasure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundName::Gallager => "gallager",
            BoundName::BzE => "bz_e",
            BoundName::BzX => "bz_x",
            BoundName::MPlus => "m_plus",
            BoundName::MMinus => "m_minus",
            BoundName::Shannon => "shannon",
            BoundName::MError => "m_error",
            BoundName::MErasure => "m_erasure",
        }
    }

    pub fn channel(self) -> ChannelKind {
        match self {
            BoundName::Shannon | BoundName::MError | BoundName::MErasure => ChannelKind::Awgn,
            _ => ChannelKind::Bsc,
        }
    }

    pub fn defaults(channel: ChannelKind) -> Vec<BoundName> {
        BoundName::ALL.into_iter().filter(|b| b.channel() == channel).collect()
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundName::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| {
            let names: Vec<_> = BoundName::ALL.iter().map(|b| b.name()).collect();
            format!("unknown bound '{s}' (expected one of {})", names.join(", "))
        })
    }
}

impl Serialize for BoundName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Channel, margin and rate grid of a sweep. Rates are in `units`;
/// an AWGN `tau` is in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub channel: ChannelKind,
    /// Crossover probability (BSC) or signal-to-noise ratio `A` (AWGN).
    pub param: f64,
    pub tau: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
    pub units: Units,
}

impl SweepSpec {
    pub fn native_units(&self) -> Units {
        match self.channel {
            ChannelKind::Bsc => Units::Bits,
            ChannelKind::Awgn => Units::Nats,
        }
    }

    pub fn check(&self) -> Result<(), CliError> {
        if !(self.r_min < self.r_max) {
            return Err(CliError::Usage(format!(
                "rmin {} must be below rmax {}",
                self.r_min, self.r_max
            )));
        }
        if self.steps < 2 {
            return Err(CliError::Usage(format!("steps {} must be at least 2", self.steps)));
        }
        if !(self.tau >= 0.0) {
            return Err(CliError::Usage(format!("tau {} must be nonnegative", self.tau)));
        }
        Ok(())
    }

    /// `steps` equally spaced rates from `r_min` to `r_max`, in `units`.
    pub fn rates(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.r_max
                } else {
                    self.r_min + (self.r_max - self.r_min) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    #[serde(rename = "R")]
    pub r: f64,
    pub bound: BoundName,
    pub value: f64,
    pub regime: &'static str,
    pub valid: bool,
}

enum Evaluator {
    Binary(BscChannel),
    Spherical {
        ch: AwgnChannel,
        error: Option<SphericalBounds>,
        erasure: Option<SphericalBounds>,
    },
}

/// One row per rate and bound, ordered by rate and then by the order of
/// `bounds`. Points outside a bound's validity range are kept with
/// `valid = false`.
pub fn cmd_curve(spec: &SweepSpec, bounds: &[BoundName]) -> Result<Vec<CurveRow>, CliError> {
    spec.check()?;
    if let Some(b) = bounds.iter().find(|b| b.channel() != spec.channel) {
        return Err(CliError::Usage(format!("bound {b} does not apply to this channel")));
    }
    let tau = spec.tau;
    let eval = match spec.channel {
        ChannelKind::Bsc => Evaluator::Binary(BscChannel::new(spec.param).map_err(usage)?),
        ChannelKind::Awgn => {
            let ch = AwgnChannel::new(spec.param).map_err(usage)?;
            let side = |kind: MarginKind, name: BoundName| -> Result<Option<SphericalBounds>, CliError> {
                if !bounds.contains(&name) {
                    return Ok(None);
                }
                SphericalBounds::new(&ch, tau, kind, ExpurgationForm::default())
                    .map(Some)
                    .map_err(failure)
            };
            Evaluator::Spherical {
                error: side(MarginKind::Error, BoundName::MError)?,
                erasure: side(MarginKind::Erasure, BoundName::MErasure)?,
                ch,
            }
        }
    };
    let to_native = spec.units.factor_from(spec.native_units()).recip();
    let from_native = spec.units.factor_from(spec.native_units());

    let rows: Vec<Vec<CurveRow>> = spec
        .rates()
        .par_iter()
        .map(|&r| {
            let rn = r * to_native;
            bounds
                .iter()
                .map(|&b| {
                    let (value, regime, valid) = match (&eval, b) {
                        (Evaluator::Binary(ch), b) => {
                            let v = match b {
                                BoundName::Gallager => gallager_exponent(rn, ch),
                                BoundName::BzE => bz_bounds(rn, ch, tau).0,
                                BoundName::BzX => bz_bounds(rn, ch, tau).1,
                                BoundName::MPlus => margin_bound(rn, ch, tau, MarginKind::Error),
                                BoundName::MMinus => margin_bound(rn, ch, tau, MarginKind::Erasure),
                                _ => unreachable!("channel checked above"),
                            };
                            (v.value, v.regime.label(), v.valid)
                        }
                        (Evaluator::Spherical { ch, error, erasure }, b) => {
                            let v = match b {
                                BoundName::Shannon => shannon_exponent(rn, ch),
                                BoundName::MError => error.as_ref().expect("built").exponent(rn),
                                BoundName::MErasure => erasure.as_ref().expect("built").exponent(rn),
                                _ => unreachable!("channel checked above"),
                            };
                            (v.value, v.regime.label(), v.valid)
                        }
                    };
                    CurveRow {
                        r,
                        bound: b,
                        value: value * from_native,
                        regime,
                        valid,
                    }
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

pub fn rows_to_csv(rows: &[CurveRow]) -> String {
    let mut s = String::from("R,bound,value,regime,valid\n");
    for row in rows {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            format_sig(row.r, 12),
            row.bound,
            format_sig(row.value, 12),
            row.regime,
            row.valid
        ));
    }
    s
}

pub fn rows_to_json(rows: &[CurveRow]) -> String {
    to_json(&rows)
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Line plot of the valid points of each bound. Invalid points break the
/// line.
pub fn rows_to_svg(rows: &[CurveRow], units: Units) -> String {
    let (w, h, m) = (640.0, 420.0, 50.0);
    let xs = rows.iter().map(|r| r.r);
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let y1 = rows
        .iter()
        .filter(|r| r.valid && r.value.is_finite())
        .map(|r| r.value)
        .fold(0.0, f64::max)
        .max(1e-12);
    let sx = |x: f64| m + (x - x0) / (x1 - x0).max(1e-300) * (w - 2.0 * m);
    let sy = |y: f64| h - m - y / y1 * (h - 2.0 * m);
    let unit = match units {
        Units::Bits => "bits",
        Units::Nats => "nats",
    };

    let mut names: Vec<BoundName> = Vec::new();
    for r in rows {
        if !names.contains(&r.bound) {
            names.push(r.bound);
        }
    }
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <path d=\"M{m} {m} V{b} H{r}\" stroke=\"black\" fill=\"none\"/>\n\
         <text x=\"{cx}\" y=\"{ty}\" text-anchor=\"middle\" font-size=\"13\">R ({unit})</text>\n\
         <text x=\"14\" y=\"{cy}\" font-size=\"13\" transform=\"rotate(-90 14 {cy})\" text-anchor=\"middle\">exponent ({unit})</text>\n\
         <text x=\"{m}\" y=\"{tb}\" font-size=\"11\" text-anchor=\"middle\">{x0s}</text>\n\
         <text x=\"{r}\" y=\"{tb}\" font-size=\"11\" text-anchor=\"middle\">{x1s}</text>\n\
         <text x=\"{yl}\" y=\"{ytop}\" font-size=\"11\" text-anchor=\"end\">{y1s}</text>\n",
        b = h - m,
        r = w - m,
        cx = w / 2.0,
        ty = h - 12.0,
        cy = h / 2.0,
        tb = h - m + 16.0,
        yl = m - 4.0,
        ytop = m + 4.0,
        x0s = format_sig(x0, 4),
        x1s = format_sig(x1, 4),
        y1s = format_sig(y1, 4),
    );
    for (i, name) in names.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut d = String::new();
        let mut pen_down = false;
        for row in rows.iter().filter(|r| r.bound == *name) {
            if row.valid && row.value.is_finite() {
                let cmd = if pen_down { 'L' } else { 'M' };
                d.push_str(&format!("{cmd}{:.2} {:.2} ", sx(row.r), sy(row.value)));
                pen_down = true;
            } else {
                pen_down = false;
            }
        }
        s.push_str(&format!(
            "<path d=\"{}\" stroke=\"{color}\" stroke-width=\"1.5\" fill=\"none\"/>\n",
            d.trim_end()
        ));
        s.push_str(&format!(
            "<text x=\"{:.0}\" y=\"{:.0}\" font-size=\"12\" fill=\"{color}\">{name}</text>\n",
            w - m - 90.0,
            m + 16.0 * (i as f64 + 1.0)
        ));
    }
    s.push_str("</svg>\n");
    s
}

pub(super) fn run(a: &CurveArgs) -> Result<CommandOutput, CliError> {
    let ch = &a.channel;
    let (param, capacity, native) = match ch.channel {
        ChannelKind::Bsc => {
            let p = ch.p()?;
            (p, BscChannel::new(p).map_err(usage)?.capacity(), Units::Bits)
        }
        ChannelKind::Awgn => {
            let snr = ch.snr()?;
            (snr, AwgnChannel::new(snr).map_err(usage)?.capacity(), Units::Nats)
        }
    };
    let units = a.units.unwrap_or(native);
    let cap = capacity * units.factor_from(native);
    let spec = SweepSpec {
        channel: ch.channel,
        param,
        tau: ch.tau(),
        r_min: a.rmin.unwrap_or(cap / a.steps.max(1) as f64),
        r_max: a.rmax.unwrap_or(cap),
        steps: a.steps,
        units,
    };
    let bounds = if a.bounds.is_empty() {
        BoundName::defaults(ch.channel)
    } else {
        a.bounds.clone()
    };
    let rows = cmd_curve(&spec, &bounds)?;
    let body = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => rows_to_csv(&rows),
        Format::Json => rows_to_json(&rows),
        Format::Svg => rows_to_svg(&rows, units),
    };
    Ok(CommandOutput::ok(body))
}
