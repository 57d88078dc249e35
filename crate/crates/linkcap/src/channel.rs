//! Physical-layer link model: configuration, mean path power gain, thermal
//! noise, and per-frequency SNR.

use crate::error::{Error, Result};
use crate::quantities::{Decibel, Frequency, PowerWatts};

/// Boltzmann's constant, J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Which form of the free-space gain to use.
///
/// `PaperTypeset` has a single 4*pi in the denominator and, with a 1 W
/// transmit power, reproduces the published sensitivity tables.
/// `StandardFriis` is the textbook form with (4*pi)^2, a factor 4*pi smaller;
/// it is offered for sensitivity analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainModel {
    PaperTypeset,
    StandardFriis,
}

/// One radio configuration: everything needed to evaluate capacity at a
/// given distance. Immutable after validation.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkProfile {
    pub name: String,
    /// Transmitter gain.
    pub g_t: Decibel,
    /// Receiver gain.
    pub g_r: Decibel,
    /// Band start. Band end is derived: f_max = f_min + bandwidth.
    pub f_min: Frequency,
    /// Band width in Hz.
    pub bandwidth: f64,
    /// Number of OFDM bins across the band.
    pub n_sc: u64,
    /// Receiver noise figure.
    pub noise_figure: Decibel,
    /// Fraction of time the channel carries communication.
    pub duty_cycle: f64,
    /// Total transmit power across the band.
    pub tx_power: PowerWatts,
    /// Receiver temperature, K.
    pub temperature: f64,
    pub gain_model: GainModel,
    /// Signal propagation speed, m/s.
    pub signal_speed: f64,
}

impl LinkProfile {
    /// Band end in Hz, always derived.
    pub fn f_max(&self) -> f64 {
        self.f_min.value() + self.bandwidth
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.bandwidth.is_finite() && self.bandwidth > 0.0) {
            return Err(Error::invariant("bw_hz", "bandwidth must be positive"));
        }
        if self.n_sc < 1 {
            return Err(Error::invariant("n_sc", "bin count must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.duty_cycle) || !self.duty_cycle.is_finite() {
            return Err(Error::invariant("duty_cycle", "must lie in [0, 1]"));
        }
        if !(self.temperature.is_finite() && self.temperature > 0.0) {
            return Err(Error::invariant("temperature_k", "must be positive"));
        }
        if self.tx_power.value() <= 0.0 {
            return Err(Error::invariant("tx_power_w", "must be positive"));
        }
        if !(self.signal_speed.is_finite() && self.signal_speed > 0.0) {
            return Err(Error::invariant("signal_speed_mps", "must be positive"));
        }
        Ok(())
    }
}

/// Mean path power gain alpha^2(f, d) of the first arrival.
pub fn path_power_gain(profile: &LinkProfile, f: Frequency, distance_m: f64) -> Result<f64> {
    if !(distance_m.is_finite() && distance_m > 0.0) {
        return Err(Error::domain(format!(
            "distance must be positive, got {distance_m}"
        )));
    }
    let g = profile.g_t.to_linear() * profile.g_r.to_linear();
    let c = profile.signal_speed;
    let f = f.value();
    let d = distance_m;
    let gain = match profile.gain_model {
        GainModel::PaperTypeset => g * c * c / (4.0 * std::f64::consts::PI * d * d * f * f),
        GainModel::StandardFriis => {
            let x = 4.0 * std::f64::consts::PI * d * f;
            g * c * c / (x * x)
        }
    };
    Ok(gain)
}

/// Thermal noise power over the full band: k * T0 * F * BW.
pub fn noise_power(profile: &LinkProfile) -> PowerWatts {
    let watts =
        BOLTZMANN * profile.temperature * profile.noise_figure.to_linear() * profile.bandwidth;
    PowerWatts::watts(watts).expect("noise power is non-negative for a valid profile")
}

/// SNR at frequency `f` and distance `d`: total received power over
/// full-band noise. The per-bin split by N_CS cancels, so the same
/// primitive serves both the continuous integral and the binned sum.
pub fn snr(profile: &LinkProfile, f: Frequency, distance_m: f64) -> Result<f64> {
    let fv = f.value();
    if fv < profile.f_min.value() || fv > profile.f_max() {
        return Err(Error::domain(format!(
            "frequency {fv} Hz outside band [{}, {}]",
            profile.f_min.value(),
            profile.f_max()
        )));
    }
    let gain = path_power_gain(profile, f, distance_m)?;
    Ok(profile.tx_power.value() * gain / noise_power(profile).value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::builtin_radcom;
    use proptest::prelude::*;

    fn test_profile(model: GainModel) -> LinkProfile {
        let mut p = builtin_radcom();
        p.gain_model = model;
        p
    }

    #[test]
    fn paper_typeset_gain_value() {
        let p = test_profile(GainModel::PaperTypeset);
        let f = Frequency::hz(76e9).unwrap();
        let got = path_power_gain(&p, f, 1.0).unwrap();
        let expected = 1.2399e-4;
        assert!(
            (got - expected).abs() / expected < 1e-4,
            "alpha^2 = {got}, expected ~{expected}"
        );
        // tighter check against direct evaluation
        let direct = 100.0 * (3e8 / 76e9) * (3e8 / 76e9) / (4.0 * std::f64::consts::PI);
        assert!((got - direct).abs() / direct < 1e-12);
    }

    #[test]
    fn inverse_square_in_distance() {
        let p = test_profile(GainModel::PaperTypeset);
        let f = Frequency::hz(78e9).unwrap();
        let g1 = path_power_gain(&p, f, 3.0).unwrap();
        let g2 = path_power_gain(&p, f, 6.0).unwrap();
        assert_eq!(g2, g1 / 4.0);
    }

    #[test]
    fn friis_variants_differ_by_4pi() {
        let f = Frequency::hz(76e9).unwrap();
        let typeset = path_power_gain(&test_profile(GainModel::PaperTypeset), f, 7.0).unwrap();
        let friis = path_power_gain(&test_profile(GainModel::StandardFriis), f, 7.0).unwrap();
        let ratio = typeset / friis;
        assert!((ratio - 4.0 * std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn noise_power_values() {
        let mut p = builtin_radcom();
        p.noise_figure = Decibel::new(0.0).unwrap();
        p.bandwidth = 1.0;
        let kt = noise_power(&p).value();
        assert!((kt - 4.0039e-21).abs() / 4.0039e-21 < 1e-4);

        p.noise_figure = Decibel::new(8.0).unwrap();
        p.bandwidth = 1e9;
        let full = noise_power(&p).value();
        assert!((full - 2.5263e-11).abs() / 2.5263e-11 < 1e-4);

        p.bandwidth = 2e9;
        assert_eq!(noise_power(&p).value(), 2.0 * full);
    }

    #[test]
    fn snr_at_radcom_midband() {
        let p = builtin_radcom();
        let f = Frequency::hz(76.5e9).unwrap();
        let s = snr(&p, f, 1.0).unwrap();
        assert!((s - 4.8e6).abs() / 4.8e6 < 0.01, "snr = {s}");
        assert_eq!(snr(&p, f, 2.0).unwrap(), s / 4.0);
    }

    #[test]
    fn snr_rejects_out_of_band() {
        let p = builtin_radcom();
        assert!(snr(&p, Frequency::hz(75e9).unwrap(), 1.0).is_err());
        assert!(snr(&p, Frequency::hz(78.1e9).unwrap(), 1.0).is_err());
        assert!(snr(&p, Frequency::hz(76.5e9).unwrap(), 0.0).is_err());
    }

    #[test]
    fn duty_cycle_does_not_enter_snr() {
        let mut p = builtin_radcom();
        let f = Frequency::hz(76.5e9).unwrap();
        let base = snr(&p, f, 10.0).unwrap();
        p.duty_cycle = 0.1;
        assert_eq!(snr(&p, f, 10.0).unwrap(), base);
    }

    proptest! {
        #[test]
        fn gain_decreasing_in_f_and_d(
            f in 76.0e9f64..80.9e9,
            d in 0.5f64..500.0,
            df in 1e6f64..1e8,
            dd in 0.1f64..10.0,
        ) {
            let p = test_profile(GainModel::PaperTypeset);
            let g = path_power_gain(&p, Frequency::hz(f).unwrap(), d).unwrap();
            let gf = path_power_gain(&p, Frequency::hz(f + df).unwrap(), d).unwrap();
            let gd = path_power_gain(&p, Frequency::hz(f).unwrap(), d + dd).unwrap();
            prop_assert!(gf < g);
            prop_assert!(gd < g);
        }

        #[test]
        fn snr_depends_only_on_power_gain_product(scale in 0.01f64..100.0) {
            let mut p = builtin_radcom();
            let f = Frequency::hz(76.5e9).unwrap();
            let base = snr(&p, f, 25.0).unwrap();
            // multiply tx power by s, divide the combined antenna gain by s
            p.tx_power = PowerWatts::watts(p.tx_power.value() * scale).unwrap();
            let g_lin = p.g_t.to_linear() / scale;
            p.g_t = crate::quantities::linear_to_db(g_lin).unwrap();
            let moved = snr(&p, f, 25.0).unwrap();
            prop_assert!((moved - base).abs() / base < 1e-12);
        }
    }
}
