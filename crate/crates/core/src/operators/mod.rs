//! Nabla fractional sums, Riemann and Caputo differences, and their delta
//! duals.
//!
//! Anchors and evaluation points are integer offsets in the coordinates of
//! the input [`GridFn`]. Left sums vanish at their anchor `a` and right sums
//! at `b` (empty sums); the Riemann differences extend those sums by zero
//! beyond the anchor so the outer integer difference is defined at the edge
//! of the result domain.

mod delta;
mod matrix;
mod nabla;

pub use delta::{
    delta_left_riemann, delta_left_sum, delta_right_riemann, delta_right_riemann_direct,
    delta_right_sum, delta_right_sum_direct,
};
pub use matrix::{
    left_riemann_matrix, left_sum_matrix, mat_vec, right_riemann_matrix, right_sum_matrix,
    to_f64_matrix,
};
pub use nabla::{
    caputo_left, caputo_right, nabla_left_riemann, nabla_left_sum, nabla_left_sum_fn,
    nabla_right_riemann, nabla_right_sum, nabla_right_sum_fn,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::grid::GridFn;
use crate::numerics::{FracOrder, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Calculus {
    Nabla,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Sum,
    Riemann,
    Caputo,
}

/// A fully specified operator: which calculus, which side, which kind, its
/// order and its anchor offset (`a` for left operators, `b` for right).
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec<S> {
    pub calculus: Calculus,
    pub side: Side,
    pub kind: Kind,
    pub order: FracOrder<S>,
    pub anchor: i64,
}

impl<S: Scalar> OperatorSpec<S> {
    pub fn new(calculus: Calculus, side: Side, kind: Kind, order: FracOrder<S>, anchor: i64) -> Result<Self> {
        match (calculus, kind) {
            (Calculus::Delta, Kind::Caputo) => {
                return Err(Error::Config("delta Caputo differences are not supported".into()))
            }
            (_, Kind::Caputo) | (Calculus::Delta, Kind::Riemann) => order.require_non_integer()?,
            _ => {}
        }
        Ok(Self { calculus, side, kind, order, anchor })
    }

    /// Parses names such as `nabla-left-sum`, `caputo-right` or
    /// `delta-left-riemann`.
    pub fn parse_name(name: &str) -> Result<(Calculus, Side, Kind)> {
        let parts: Vec<&str> = name.split('-').collect();
        let side = |s: &str| match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("unknown operator {name:?}"))),
        };
        match parts.as_slice() {
            ["caputo", s] => Ok((Calculus::Nabla, side(s)?, Kind::Caputo)),
            [c, s, k] => {
                let calculus = match *c {
                    "nabla" => Calculus::Nabla,
                    "delta" => Calculus::Delta,
                    _ => return Err(Error::Parse(format!("unknown operator {name:?}"))),
                };
                let kind = match *k {
                    "sum" => Kind::Sum,
                    "riemann" => Kind::Riemann,
                    "caputo" => Kind::Caputo,
                    _ => return Err(Error::Parse(format!("unknown operator {name:?}"))),
                };
                Ok((calculus, side(s)?, kind))
            }
            _ => Err(Error::Parse(format!("unknown operator {name:?}"))),
        }
    }

    /// Applies the operator on its natural result domain.
    pub fn apply(&self, f: &GridFn<S>) -> Result<GridFn<S>> {
        let (o, x) = (&self.order, self.anchor);
        match (self.calculus, self.side, self.kind) {
            (Calculus::Nabla, Side::Left, Kind::Sum) => nabla_left_sum_fn(f, o, x),
            (Calculus::Nabla, Side::Right, Kind::Sum) => nabla_right_sum_fn(f, o, x),
            (Calculus::Nabla, Side::Left, Kind::Riemann) => nabla_left_riemann(f, o, x),
            (Calculus::Nabla, Side::Right, Kind::Riemann) => nabla_right_riemann(f, o, x),
            (Calculus::Nabla, Side::Left, Kind::Caputo) => caputo_left(f, o, x),
            (Calculus::Nabla, Side::Right, Kind::Caputo) => caputo_right(f, o, x),
            (Calculus::Delta, Side::Left, Kind::Sum) => delta_left_sum(f, o, x),
            (Calculus::Delta, Side::Right, Kind::Sum) => delta_right_sum(f, o, x),
            (Calculus::Delta, Side::Left, Kind::Riemann) => delta_left_riemann(f, o, x),
            (Calculus::Delta, Side::Right, Kind::Riemann) => delta_right_riemann(f, o, x),
            (Calculus::Delta, _, Kind::Caputo) => unreachable!("rejected in new"),
        }
    }
}

impl<S: Scalar> fmt::Display for OperatorSpec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.calculus {
            Calculus::Nabla => "nabla",
            Calculus::Delta => "delta",
        };
        let s = match self.side {
            Side::Left => "left",
            Side::Right => "right",
        };
        let k = match self.kind {
            Kind::Sum => "sum",
            Kind::Riemann => "riemann",
            Kind::Caputo => "caputo",
        };
        write!(f, "{c}-{s}-{k}(alpha={}, anchor={})", self.order, self.anchor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    fn order(p: i64, d: i64) -> FracOrder<Rational> {
        FracOrder::from_ratio(p, d).unwrap()
    }

    fn ones(lo: i64, hi: i64) -> GridFn<Rational> {
        GridFn::constant(q(0, 1), lo, hi, q(1, 1))
    }

    /// Left sum of 1 by direct summation of the Gamma-ratio kernel in floats.
    fn left_sum_of_one_oracle(alpha: f64, t: i64, a: i64) -> f64 {
        use statrs::function::gamma::gamma;
        ((a + 1)..=t)
            .map(|s| {
                let x = (t - s + 1) as f64;
                gamma(x + alpha - 1.0) / gamma(x) / gamma(alpha)
            })
            .sum()
    }

    #[test]
    fn left_sum_examples() {
        let f = GridFn::from_fn(q(0, 1), 0, 6, |t| q(t * t - 3, 1));
        let one = order(1, 1);
        for t in 1..=6 {
            let running: Rational = (1..=t).map(|s| q(s * s - 3, 1)).sum();
            assert_eq!(nabla_left_sum(&f, &one, 0, t).unwrap(), running);
        }
        assert!((left_sum_of_one_oracle(0.5, 3, 0) - 1.875).abs() < 1e-12);
        assert_eq!(nabla_left_sum(&ones(0, 5), &order(1, 2), 0, 3).unwrap(), q(15, 8));
        assert_eq!(nabla_left_sum(&f, &order(2, 7), 2, 3).unwrap(), *f.get(3).unwrap());
        assert_eq!(nabla_left_sum(&f, &order(2, 7), 2, 2).unwrap(), q(0, 1));
        assert!(nabla_left_sum(&f, &order(2, 7), 2, 1).is_err());
        assert!(nabla_left_sum(&f, &order(1, 2), -3, 1).is_err());
    }

    #[test]
    fn right_sum_examples() {
        let f = GridFn::from_fn(q(0, 1), 0, 6, |t| q(2 * t + 1, 1));
        let one = order(1, 1);
        for t in 0..=5 {
            let tail: Rational = (t..6).map(|s| q(2 * s + 1, 1)).sum();
            assert_eq!(nabla_right_sum(&f, &one, 6, t).unwrap(), tail);
        }
        assert_eq!(nabla_right_sum(&ones(0, 4), &order(1, 2), 4, 1).unwrap(), q(15, 8));
        assert_eq!(nabla_right_sum(&f, &order(3, 4), 5, 4).unwrap(), *f.get(4).unwrap());
        assert_eq!(nabla_right_sum(&f, &order(3, 4), 5, 5).unwrap(), q(0, 1));
        assert!(nabla_right_sum(&f, &order(3, 4), 5, 6).is_err());
    }

    #[test]
    fn left_riemann_examples() {
        let r = nabla_left_riemann(&ones(0, 5), &order(1, 2), 0).unwrap();
        assert_eq!((r.lo(), r.hi()), (1, 5));
        // nabla of (1, 3/2, 15/8, ...) at t = 2
        assert_eq!(*r.get(2).unwrap(), q(1, 2));
        assert_eq!(*r.get(1).unwrap(), q(1, 1));

        let f = GridFn::from_fn(q(0, 1), 0, 8, |t| q(t * t * t - 2 * t, 3));
        let r1 = nabla_left_riemann(&f, &order(1, 1), 0).unwrap();
        for t in 2..=8 {
            let back = f.get(t).unwrap().clone() - f.get(t - 1).unwrap().clone();
            assert_eq!(*r1.get(t).unwrap(), back);
        }
        let zero = GridFn::constant(q(0, 1), 0, 6, q(0, 1));
        assert!(nabla_left_riemann(&zero, &order(3, 2), 0).unwrap().values().iter().all(|v| *v == q(0, 1)));
    }

    #[test]
    fn right_riemann_examples() {
        let r = nabla_right_riemann(&ones(0, 4), &order(1, 2), 4).unwrap();
        assert_eq!((r.lo(), r.hi()), (0, 3));
        assert_eq!(*r.get(2).unwrap(), q(1, 2));

        let f = GridFn::from_fn(q(0, 1), 0, 8, |t| q(t * t - 5, 2));
        let r1 = nabla_right_riemann(&f, &order(1, 1), 8).unwrap();
        for t in 0..=6 {
            let fwd = f.get(t).unwrap().clone() - f.get(t + 1).unwrap().clone();
            assert_eq!(*r1.get(t).unwrap(), fwd);
        }
        let zero = GridFn::constant(q(0, 1), 0, 6, q(0, 1));
        assert!(nabla_right_riemann(&zero, &order(1, 3), 6).unwrap().values().iter().all(|v| *v == q(0, 1)));
    }

    #[test]
    fn caputo_examples() {
        let c = GridFn::constant(q(0, 1), 0, 7, q(4, 1));
        assert!(caputo_left(&c, &order(1, 2), 0).unwrap().values().iter().all(|v| *v == q(0, 1)));
        assert!(caputo_right(&c, &order(5, 3), 7).unwrap().values().iter().all(|v| *v == q(0, 1)));

        let ramp = GridFn::from_fn(q(0, 1), 0, 5, |t| q(t, 1));
        let cl = caputo_left(&ramp, &order(1, 2), 0).unwrap();
        assert_eq!((cl.lo(), cl.hi()), (1, 5));
        assert_eq!(*cl.get(2).unwrap(), q(3, 2));

        let down = GridFn::from_fn(q(0, 1), 0, 4, |t| q(4 - t, 1));
        let cr = caputo_right(&down, &order(1, 2), 4).unwrap();
        assert_eq!((cr.lo(), cr.hi()), (0, 3));
        assert_eq!(*cr.get(2).unwrap(), q(3, 2));

        let c32 = caputo_left(&ramp, &order(3, 2), 0).unwrap();
        assert_eq!((c32.lo(), c32.hi()), (2, 5));
        assert!(caputo_left(&ramp, &order(1, 1), 0).is_err());
        assert!(caputo_right(&ramp, &order(2, 1), 5).is_err());
        assert!(caputo_left(&ramp.restrict(1, 5).unwrap(), &order(1, 2), 0).is_err());
    }

    #[test]
    fn delta_examples() {
        let f = GridFn::from_fn(q(0, 1), 0, 6, |t| q(3 * t - t * t, 1));
        let d1 = delta_left_sum(&f, &order(1, 1), 0).unwrap();
        for t in 1..=6 {
            let running: Rational = (1..=t).map(|s| q(3 * s - s * s, 1)).sum();
            assert_eq!(*d1.get(t).unwrap(), running);
            assert_eq!(d1.point(t), q(t + 1, 1));
        }
        let dh = delta_left_sum(&ones(0, 5), &order(1, 2), 0).unwrap();
        assert_eq!(dh.point(3), q(7, 2));
        assert_eq!(*dh.get(3).unwrap(), q(15, 8));

        let zero = GridFn::constant(q(0, 1), 0, 6, q(0, 1));
        assert!(delta_right_sum_direct(&zero, &order(1, 2), 6).unwrap().values().iter().all(|v| *v == q(0, 1)));
        assert!(delta_left_riemann(&zero, &order(1, 2), 0).unwrap().values().iter().all(|v| *v == q(0, 1)));
        assert!(delta_right_riemann_direct(&zero, &order(1, 2), 6).unwrap().values().iter().all(|v| *v == q(0, 1)));

        let r1 = delta_right_sum_direct(&f, &order(1, 1), 6).unwrap();
        for t in 0..=5 {
            let tail: Rational = (t..6).map(|s| q(3 * s - s * s, 1)).sum();
            assert_eq!(*r1.get(t).unwrap(), tail);
        }

        let lr = delta_left_riemann(&ones(0, 5), &order(1, 2), 0).unwrap();
        assert_eq!(lr.point(2), q(3, 2));
        assert_eq!(*lr.get(2).unwrap(), q(1, 2));
        let rr = delta_right_riemann_direct(&ones(0, 4), &order(1, 2), 4).unwrap();
        assert_eq!(*rr.get(2).unwrap(), q(1, 2));
        assert!(delta_left_riemann(&f, &order(1, 1), 0).is_err());
    }

    #[test]
    fn spec_parsing_and_validation() {
        assert_eq!(
            OperatorSpec::<Rational>::parse_name("caputo-left").unwrap(),
            (Calculus::Nabla, Side::Left, Kind::Caputo)
        );
        assert_eq!(
            OperatorSpec::<Rational>::parse_name("delta-right-riemann").unwrap(),
            (Calculus::Delta, Side::Right, Kind::Riemann)
        );
        assert!(OperatorSpec::<Rational>::parse_name("nabla-up-sum").is_err());
        assert!(OperatorSpec::new(Calculus::Delta, Side::Left, Kind::Caputo, order(1, 2), 0).is_err());
        assert!(OperatorSpec::new(Calculus::Nabla, Side::Left, Kind::Caputo, order(1, 1), 0).is_err());
        let spec = OperatorSpec::new(Calculus::Nabla, Side::Left, Kind::Sum, order(1, 1), 0).unwrap();
        let out = spec.apply(&ones(0, 5)).unwrap();
        assert_eq!(out.values(), &[q(1, 1), q(2, 1), q(3, 1), q(4, 1), q(5, 1)]);
        assert_eq!(out.lo(), 1);
    }
}
