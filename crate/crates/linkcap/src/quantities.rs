//! Unit-safe scalars: decibels, frequencies, powers.
//!
//! Everything downstream computes in linear SI units (Hz, W, m, s); dB shows
//! up only at configuration and reporting boundaries. All dB values use the
//! power-ratio convention (factor 10).

use crate::error::{Error, Result};

/// A power ratio in decibels: linear = 10^(value/10).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decibel(f64);

impl Decibel {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::domain("dB value must be finite"));
        }
        Ok(Decibel(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn to_linear(self) -> f64 {
        db_to_linear(self)
    }
}

/// A frequency in Hz, finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Frequency(f64);

impl Frequency {
    pub fn hz(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::domain(format!(
                "frequency must be finite and positive, got {value}"
            )));
        }
        Ok(Frequency(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A power in watts, finite and non-negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PowerWatts(f64);

impl PowerWatts {
    pub fn watts(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::domain(format!(
                "power must be finite and non-negative, got {value}"
            )));
        }
        Ok(PowerWatts(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// dB -> dimensionless power ratio.
pub fn db_to_linear(x: Decibel) -> f64 {
    10f64.powf(x.value() / 10.0)
}

/// Dimensionless power ratio -> dB. Fails for non-positive ratios.
pub fn linear_to_db(ratio: f64) -> Result<Decibel> {
    if !ratio.is_finite() || ratio <= 0.0 {
        return Err(Error::domain(format!(
            "linear ratio must be finite and positive, got {ratio}"
        )));
    }
    Decibel::new(10.0 * ratio.log10())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn db(v: f64) -> Decibel {
        Decibel::new(v).unwrap()
    }

    #[test]
    fn db_identity_and_decade() {
        assert_eq!(db_to_linear(db(0.0)), 1.0);
        assert_eq!(db_to_linear(db(10.0)), 10.0);
        let three = db_to_linear(db(3.0));
        assert!((three - 1.9952623149688795).abs() / three < 1e-12);
    }

    #[test]
    fn linear_to_db_cases() {
        assert_eq!(linear_to_db(1.0).unwrap().value(), 0.0);
        assert_eq!(linear_to_db(100.0).unwrap().value(), 20.0);
        let eight = linear_to_db(6.3096).unwrap().value();
        assert!((eight - 8.0).abs() < 1e-4);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(linear_to_db(0.0).is_err());
        assert!(linear_to_db(-1.0).is_err());
        assert!(linear_to_db(f64::NAN).is_err());
        assert!(Decibel::new(f64::INFINITY).is_err());
        assert!(Frequency::hz(0.0).is_err());
        assert!(Frequency::hz(-5.0).is_err());
        assert!(PowerWatts::watts(-1e-30).is_err());
    }

    proptest! {
        #[test]
        fn round_trip_db(x in -120.0f64..120.0) {
            let back = linear_to_db(db_to_linear(db(x))).unwrap().value();
            prop_assert!((back - x).abs() < 1e-10);
        }

        #[test]
        fn round_trip_linear(exp in -12.0f64..12.0) {
            let r = 10f64.powf(exp);
            let back = db_to_linear(linear_to_db(r).unwrap());
            prop_assert!((back - r).abs() / r < 1e-12);
        }

        #[test]
        fn db_addition_is_linear_product(a in -60.0f64..60.0, b in -60.0f64..60.0) {
            let lhs = db_to_linear(db(a + b));
            let rhs = db_to_linear(db(a)) * db_to_linear(db(b));
            prop_assert!((lhs - rhs).abs() / lhs < 1e-12);
        }

        #[test]
        fn to_linear_monotone(a in -100.0f64..100.0, step in 1e-6f64..10.0) {
            prop_assert!(db_to_linear(db(a + step)) > db_to_linear(db(a)));
        }
    }
}
