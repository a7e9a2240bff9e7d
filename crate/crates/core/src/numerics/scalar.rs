use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Which arithmetic a [`Scalar`] implementation carries out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Float,
    Rational,
}

impl Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backend::Float => f.write_str("float"),
            Backend::Rational => f.write_str("rational"),
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" => Ok(Backend::Float),
            "rational" | "exact" => Ok(Backend::Rational),
            other => Err(Error::Parse(format!("unknown backend {other:?}"))),
        }
    }
}

/// Field element used by every operator in the crate.
///
/// Two implementations exist: `f64` and [`Rational`]. Everything above this
/// trait is written once and runs on both, so identities can be checked
/// exactly and the same code can be run at speed in floating point.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    const BACKEND: Backend;

    fn from_i64(v: i64) -> Self;

    /// `p / q`; `q` must be nonzero.
    fn from_ratio(p: i64, q: i64) -> Self;

    /// Nearest `f64`. Exact for the float backend.
    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    /// Greatest integer not exceeding `self`.
    fn floor_i64(&self) -> i64;

    /// `Some(k)` when `self` is (numerically) the integer `k`.
    fn as_integer(&self) -> Option<i64>;

    /// Parses `p/q`, integer, or decimal text.
    fn parse_text(s: &str) -> Result<Self>;

    /// Canonical text: `p/q` in lowest terms for rationals, 17 significant
    /// digits for floats.
    fn to_text(&self) -> String;

    /// `Gamma(p) / Gamma(q)`.
    ///
    /// Integer `p - q` uses the finite product form and is exact. Otherwise
    /// the float backend goes through log-Gamma and the rational backend
    /// reports [`Error::NotRepresentable`].
    fn gamma_ratio(p: &Self, q: &Self) -> Result<Self>;

    fn is_zero_exact(&self) -> bool {
        self.is_zero()
    }

    fn max_abs<'a, I: IntoIterator<Item = &'a Self>>(values: I) -> Self {
        values
            .into_iter()
            .map(Scalar::abs)
            .fold(Self::zero(), |m, v| if v > m { v } else { m })
    }
}

fn is_nonpositive_integer<S: Scalar>(x: &S) -> bool {
    matches!(x.as_integer(), Some(k) if k <= 0)
}

/// `Gamma(q + m) / Gamma(q)` for integer `m` as a finite product.
///
/// Poles are resolved by their limit, so `Gamma(0) / Gamma(-2)` is `0` and
/// `Gamma(-1) / Gamma(-2)` is `-2`; a limit that diverges is an error.
fn gamma_shift_product<S: Scalar>(q: &S, m: i64) -> Result<S> {
    let mut acc = S::one();
    if m >= 0 {
        for k in 0..m {
            acc *= q.clone() + S::from_i64(k);
        }
        Ok(acc)
    } else {
        let p = q.clone() + S::from_i64(m);
        for k in 0..(-m) {
            acc *= p.clone() + S::from_i64(k);
        }
        if acc.is_zero() {
            return Err(Error::Domain(format!("Gamma({p})/Gamma({q}) diverges")));
        }
        Ok(S::one() / acc)
    }
}

fn gamma_ratio_via<S: Scalar>(p: &S, q: &S) -> Option<Result<S>> {
    let diff = p.clone() - q.clone();
    diff.as_integer().map(|m| gamma_shift_product(q, m))
}

/// Sign and `ln|Gamma(x)|` for real non-pole `x`.
fn signed_ln_gamma(x: f64) -> (f64, f64) {
    use statrs::function::gamma::ln_gamma;
    if x > 0.0 {
        (1.0, ln_gamma(x))
    } else {
        let pi = std::f64::consts::PI;
        let s = (pi * x).sin();
        let ln_abs = pi.ln() - s.abs().ln() - ln_gamma(1.0 - x);
        let sign = if (x.floor() as i64) % 2 == 0 { 1.0 } else { -1.0 };
        (sign, ln_abs)
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn floor_i64(&self) -> i64 {
        self.floor() as i64
    }

    fn as_integer(&self) -> Option<i64> {
        let r = self.round();
        ((self - r).abs() <= 1e-9 * (1.0 + r.abs())).then_some(r as i64)
    }

    fn parse_text(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
            let q: f64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
            if q == 0.0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(p / q);
        }
        let v: f64 = s.parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
        if !v.is_finite() {
            return Err(Error::Parse(format!("non-finite value {s:?}")));
        }
        Ok(v)
    }

    fn to_text(&self) -> String {
        format!("{self:.16e}")
    }

    fn gamma_ratio(p: &Self, q: &Self) -> Result<Self> {
        if let Some(r) = gamma_ratio_via(p, q) {
            return r;
        }
        if is_nonpositive_integer(p) {
            return Err(Error::Domain(format!("Gamma pole at {p}")));
        }
        if is_nonpositive_integer(q) {
            return Ok(0.0);
        }
        // Shift both arguments down by the same integer so the remaining
        // Gamma values are evaluated near 1, where they are most accurate.
        let shift = (p.min(*q).floor() - 1.0).max(0.0) as i64;
        let mut scale = 1.0;
        for j in 1..=shift {
            scale *= (p - j as f64) / (q - j as f64);
        }
        let (p0, q0) = (p - shift as f64, q - shift as f64);
        if p0.max(q0) < 20.0 {
            use statrs::function::gamma::gamma;
            return Ok(scale * gamma(p0) / gamma(q0));
        }
        let (sp, lp) = signed_ln_gamma(p0);
        let (sq, lq) = signed_ln_gamma(q0);
        Ok(scale * sp * sq * (lp - lq).exp())
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn floor_i64(&self) -> i64 {
        self.floor().to_integer().to_i64().expect("floor out of i64 range")
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }

    fn parse_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn gamma_ratio(p: &Self, q: &Self) -> Result<Self> {
        gamma_ratio_via(p, q).unwrap_or_else(|| {
            Err(Error::NotRepresentable(format!(
                "Gamma({p})/Gamma({q}) with non-integer argument difference"
            )))
        })
    }
}

/// Parses `p/q`, `k`, or a finite decimal such as `-0.125` or `2.5e-3` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.trim_start_matches(['-', '+']).is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits == "-" || digits == "+" { format!("{digits}0") } else { digits };
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num::pow(ten, (-scale) as usize))
    })
}
