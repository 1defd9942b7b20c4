//! Sample sizes from Chernoff bounds and small summary statistics.

use crate::error::{Error, Result};

/// Number of uniform samples with replacement that estimate a Bernoulli mean
/// within absolute error `phi` with failure probability at most `delta`:
/// `ceil((3 / phi^2) * ln(2 / delta))`.
///
/// This is the general bound `ceil(max(mu / phi^2, 1 / phi) * 3 ln(2 / delta))`
/// at the worst case `mu = 1`, since the mean is unknown.
pub fn sample_size(phi: f64, delta: f64) -> Result<usize> {
    if !(phi > 0.0 && phi <= 1.0) {
        return Err(Error::invalid(format!("phi must lie in (0, 1], got {phi}")));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::invalid(format!("delta must lie in (0, 1], got {delta}")));
    }
    let t = (3.0 / (phi * phi) * (2.0 / delta).ln()).ceil();
    Ok((t as usize).max(1))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator); 0 for fewer than two values.
    pub std: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Summary {
        let count = values.len();
        if count == 0 {
            return Summary { count, mean: f64::NAN, std: f64::NAN };
        }
        let mean = values.iter().sum::<f64>() / count as f64;
        let std = if count > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
        } else {
            0.0
        };
        Summary { count, mean, std }
    }

    /// Standard error of the mean.
    pub fn sem(&self) -> f64 {
        self.std / (self.count as f64).sqrt()
    }
}
