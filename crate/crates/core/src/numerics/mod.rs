//! Scalar backends, rising/falling factorial functions, the fractional-sum
//! kernel weights and the integer backward/forward differences.

mod difference;
mod factorial;
mod scalar;

pub use difference::{minus_delta_n, nabla_n};
pub use factorial::{
    delta_sum_kernel, difference_weights, falling_factorial, rising_factorial,
    rising_over_gamma, weights,
};
pub use scalar::{parse_rational, Backend, Rational, Scalar};

use crate::error::{Error, Result};

/// A positive fractional order together with `n = [alpha] + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FracOrder<S> {
    alpha: S,
    n: usize,
    is_integer: bool,
}

impl<S: Scalar> FracOrder<S> {
    pub fn new(alpha: S) -> Result<Self> {
        if alpha <= S::zero() {
            return Err(Error::InvalidOrder(alpha.to_text()));
        }
        let floor = alpha.floor_i64();
        let is_integer = alpha.as_integer().is_some() && S::from_i64(floor) == alpha;
        Ok(Self {
            n: floor as usize + 1,
            alpha,
            is_integer,
        })
    }

    /// Parses `p/q` or decimal text.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(S::parse_text(text)?)
    }

    pub fn from_ratio(p: i64, q: i64) -> Result<Self> {
        Self::new(S::from_ratio(p, q))
    }

    pub fn alpha(&self) -> &S {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_integer(&self) -> bool {
        self.is_integer
    }

    /// `n - alpha`, the order of the inner sum of a Riemann or Caputo
    /// difference. Always in `(0, 1]`.
    pub fn complement(&self) -> S {
        S::from_i64(self.n as i64) - self.alpha.clone()
    }

    pub fn require_non_integer(&self) -> Result<()> {
        if self.is_integer {
            Err(Error::IntegerOrder(self.alpha.to_text()))
        } else {
            Ok(())
        }
    }

    /// Rejects orders outside the open unit interval.
    pub fn require_unit_interval(&self) -> Result<()> {
        if self.n != 1 || self.is_integer {
            Err(Error::InvalidOrder(format!(
                "{} is not in (0, 1)",
                self.alpha.to_text()
            )))
        } else {
            Ok(())
        }
    }
}

impl<S: Scalar> std::fmt::Display for FracOrder<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.alpha.to_text())
    }
}
