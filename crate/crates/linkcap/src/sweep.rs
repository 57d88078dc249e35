//! Parameter sweeps: evaluate capacity over a grid of one varied parameter,
//! with the per-table relative-difference columns.

use rayon::prelude::*;

use crate::capacity::{binned_capacity, CapacityEstimate};
use crate::channel::LinkProfile;
use crate::error::{Error, Result};
use crate::quantities::{Decibel, Frequency};

/// Which profile field a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweptParameter {
    Distance,
    FMin,
    NSc,
    Bandwidth,
    NoiseFigure,
    DutyCycle,
}

impl SweptParameter {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "distance" => Some(Self::Distance),
            "f_min" => Some(Self::FMin),
            "n_sc" => Some(Self::NSc),
            "bandwidth" => Some(Self::Bandwidth),
            "noise_figure" => Some(Self::NoiseFigure),
            "duty_cycle" => Some(Self::DutyCycle),
            _ => None,
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            Self::Distance => "distance",
            Self::FMin => "f_min",
            Self::NSc => "n_sc",
            Self::Bandwidth => "bandwidth",
            Self::NoiseFigure => "noise_figure",
            Self::DutyCycle => "duty_cycle",
        }
    }
}

/// Which column supplies the denominator of a relative difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Denominator {
    First,
    Second,
}

/// Declarative sweep: vary one parameter over `grid`, evaluate each value at
/// every distance in `distances`, holding everything else at profile defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub name: String,
    pub base_profile: String,
    pub parameter: SweptParameter,
    pub grid: Vec<f64>,
    pub distances: Vec<f64>,
    /// Convention for the pairwise difference column when |grid| = 2.
    pub denominator: Denominator,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::invariant("grid", "must be non-empty"));
        }
        if self.parameter != SweptParameter::Distance && self.distances.is_empty() {
            return Err(Error::invariant("distances", "must be non-empty"));
        }
        Ok(())
    }
}

/// One evaluated sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub grid_value: f64,
    pub distance_m: f64,
    pub estimate: CapacityEstimate,
}

/// Sweep output: rows in grid-major order plus, for two-value grids, the
/// relative difference per distance under the spec's denominator convention.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub parameter: SweptParameter,
    pub grid: Vec<f64>,
    pub distances: Vec<f64>,
    pub rows: Vec<SweepRow>,
    /// Percent, one entry per distance; present only when |grid| = 2.
    pub relative_diffs: Option<Vec<f64>>,
}

/// 100 * (c_a - c_b) / denominator, in percent.
pub fn relative_diff(c_a: f64, c_b: f64, denominator: Denominator) -> Result<f64> {
    let den = match denominator {
        Denominator::First => c_a,
        Denominator::Second => c_b,
    };
    if den == 0.0 || !den.is_finite() {
        return Err(Error::domain("relative difference denominator is zero"));
    }
    Ok(100.0 * (c_a - c_b) / den)
}

fn profile_with(
    base: &LinkProfile,
    parameter: SweptParameter,
    value: f64,
) -> Result<(LinkProfile, f64)> {
    // returns the profile to evaluate and the distance override (NaN = none)
    let mut p = base.clone();
    match parameter {
        SweptParameter::Distance => return Ok((p, value)),
        SweptParameter::FMin => p.f_min = Frequency::hz(value)?,
        SweptParameter::NSc => {
            if value < 1.0 || value.fract() != 0.0 {
                return Err(Error::invariant("n_sc", "grid value must be a positive integer"));
            }
            p.n_sc = value as u64;
        }
        SweptParameter::Bandwidth => p.bandwidth = value,
        SweptParameter::NoiseFigure => p.noise_figure = Decibel::new(value)?,
        SweptParameter::DutyCycle => p.duty_cycle = value,
    }
    p.validate()?;
    Ok((p, f64::NAN))
}

/// Evaluate a sweep. Points fan out across worker threads; rows come back in
/// deterministic grid-major order.
pub fn run_sweep(spec: &SweepSpec, base: &LinkProfile) -> Result<SweepResult> {
    spec.validate()?;

    let mut points = Vec::new();
    for &g in &spec.grid {
        if spec.parameter == SweptParameter::Distance {
            points.push((g, g));
        } else {
            for &d in &spec.distances {
                points.push((g, d));
            }
        }
    }

    let rows: Vec<SweepRow> = points
        .par_iter()
        .map(|&(g, d)| {
            let (profile, dist_override) = profile_with(base, spec.parameter, g)?;
            let d_eval = if dist_override.is_nan() { d } else { dist_override };
            let estimate = binned_capacity(&profile, d_eval)?;
            Ok(SweepRow {
                grid_value: g,
                distance_m: d_eval,
                estimate,
            })
        })
        .collect::<Result<_>>()?;

    let distances = if spec.parameter == SweptParameter::Distance {
        spec.grid.clone()
    } else {
        spec.distances.clone()
    };

    let relative_diffs = if spec.grid.len() == 2 && spec.parameter != SweptParameter::Distance {
        let n = distances.len();
        let mut diffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = rows[i].estimate.reported;
            let b = rows[n + i].estimate.reported;
            diffs.push(relative_diff(a, b, spec.denominator)?);
        }
        Some(diffs)
    } else {
        None
    };

    Ok(SweepResult {
        parameter: spec.parameter,
        grid: spec.grid.clone(),
        distances,
        rows,
        relative_diffs,
    })
}

/// Capacity as a function of distance for one profile; the data behind the
/// capacity-vs-distance comparison plot.
pub fn capacity_vs_distance(profile: &LinkProfile, d_grid: &[f64]) -> Result<SweepResult> {
    if d_grid.is_empty() {
        return Err(Error::invariant("distances", "must be non-empty"));
    }
    if d_grid.iter().any(|&d| !(d.is_finite() && d > 0.0)) {
        return Err(Error::domain("distances must be positive".to_string()));
    }
    if d_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("distances must be ascending".to_string()));
    }
    let spec = SweepSpec {
        name: format!("{}_vs_distance", profile.name),
        base_profile: profile.name.clone(),
        parameter: SweptParameter::Distance,
        grid: d_grid.to_vec(),
        distances: d_grid.to_vec(),
        denominator: Denominator::Second,
    };
    run_sweep(&spec, profile)
}
