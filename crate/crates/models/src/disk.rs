use std::f64::consts::PI;

use rand::Rng;

use crate::{sample, Density, ModelError, ReferenceMeasure, Support};

/// Uniform distribution on the unit disk, f(x, y) = 1/π.
///
/// The second coordinate y plays the role of θ: each conditional is uniform
/// on [-√(1-y²), √(1-y²)] and both margins are (2/π)√(1-x²).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DiskModel;

const UNIT: Support = Support::Interval { lo: -1.0, hi: 1.0 };

impl DiskModel {
    pub fn name(&self) -> &'static str {
        "disk"
    }

    pub fn x_support(&self) -> Support {
        UNIT
    }

    pub fn theta_support(&self) -> Support {
        UNIT
    }

    /// f(x, y) = 1/π inside the disk.
    pub fn joint_density(&self, x: f64, y: f64) -> f64 {
        if x * x + y * y <= 1.0 {
            1.0 / PI
        } else {
            0.0
        }
    }

    fn conditional(&self, given: f64, t: f64) -> Density {
        let half = (1.0 - given * given).sqrt();
        let value = if t.abs() <= half && half > 0.0 { 0.5 / half } else { 0.0 };
        Density { value, measure: ReferenceMeasure::Lebesgue }
    }

    pub fn likelihood(&self, theta: f64, x: f64) -> Result<Density, ModelError> {
        UNIT.check("theta", theta)?;
        UNIT.check("x", x)?;
        Ok(self.conditional(theta, x))
    }

    pub fn prior_density(&self, theta: f64) -> Result<Density, ModelError> {
        Ok(Density { value: self.marginal(theta)?, measure: ReferenceMeasure::Lebesgue })
    }

    pub fn marginal(&self, x: f64) -> Result<f64, ModelError> {
        UNIT.check("x", x)?;
        Ok(2.0 / PI * (1.0 - x * x).sqrt())
    }

    pub fn ln_marginal(&self, x: f64) -> Result<f64, ModelError> {
        Ok(self.marginal(x)?.ln())
    }

    /// Density of y given x with respect to Lebesgue measure.
    pub fn posterior_density(&self, theta: f64, x: f64) -> Result<Density, ModelError> {
        UNIT.check("theta", theta)?;
        UNIT.check("x", x)?;
        Ok(self.conditional(x, theta))
    }

    pub fn sample_likelihood<R: Rng + ?Sized>(&self, theta: f64, rng: &mut R) -> Result<f64, ModelError> {
        UNIT.check("theta", theta)?;
        Ok(self.uniform_chord(theta, rng))
    }

    pub fn sample_posterior<R: Rng + ?Sized>(&self, x: f64, rng: &mut R) -> Result<f64, ModelError> {
        UNIT.check("x", x)?;
        Ok(self.uniform_chord(x, rng))
    }

    fn uniform_chord<R: Rng + ?Sized>(&self, given: f64, rng: &mut R) -> f64 {
        let half = (1.0 - given * given).max(0.0).sqrt();
        (2.0 * sample::uniform(rng) - 1.0) * half
    }
}
