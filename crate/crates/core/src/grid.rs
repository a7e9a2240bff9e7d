//! Unit-step grids and grid functions.
//!
//! Every point is addressed by an integer offset from a real `origin`, so a
//! function on `N_a ∩ _bN` and a function on the shifted lattice `a + alpha +
//! Z` use the same machinery. Operator anchors (`a`, `b`, `a - 1`, ...) are
//! offsets in the same coordinates as the function they act on.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::numerics::Scalar;

/// `N_a ∩ _bN = {a, a+1, ..., b}` with `b - a` a nonnegative integer.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<S> {
    a: S,
    len: usize,
}

impl<S: Scalar> Grid<S> {
    pub fn new(a: S, b: S) -> Result<Self> {
        let span = b.clone() - a.clone();
        match span.as_integer() {
            Some(n) if n >= 0 => Ok(Self { a, len: n as usize }),
            _ => Err(Error::Domain(format!(
                "b - a = {} is not a nonnegative integer",
                span.to_text()
            ))),
        }
    }

    pub fn from_len(a: S, len: usize) -> Self {
        Self { a, len }
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn b(&self) -> S {
        self.a.clone() + S::from_i64(self.len as i64)
    }

    /// `N = b - a`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Offset of `a` (always 0).
    pub fn a_index(&self) -> i64 {
        0
    }

    /// Offset of `b`.
    pub fn b_index(&self) -> i64 {
        self.len as i64
    }

    /// Offset of a real point, failing unless it lies on the grid lattice.
    pub fn index_of(&self, t: &S) -> Result<i64> {
        let off = t.clone() - self.a.clone();
        off.as_integer()
            .ok_or_else(|| Error::Domain(format!("{t} is not on the lattice {} + Z", self.a)))
    }

    /// A grid function on `[lo, hi]` (offsets).
    pub fn function<F>(&self, lo: i64, hi: i64, f: F) -> GridFn<S>
    where
        F: FnMut(i64) -> S,
    {
        GridFn::from_fn(self.a.clone(), lo, hi, f)
    }

    /// A grid function on the whole of `[a, b]`.
    pub fn full<F>(&self, f: F) -> GridFn<S>
    where
        F: FnMut(i64) -> S,
    {
        self.function(0, self.len as i64, f)
    }

    /// Requires `N >= 2`, the smallest grid with a nonempty `a+1..b-1` range.
    pub fn require_interior(&self) -> Result<()> {
        if self.len < 2 {
            Err(Error::Domain(format!("grid needs b - a >= 2, got {}", self.len)))
        } else {
            Ok(())
        }
    }
}

/// A function on the consecutive points `origin + lo ..= origin + hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn<S> {
    origin: S,
    lo: i64,
    values: Vec<S>,
}

impl<S: Scalar> GridFn<S> {
    /// Values for offsets `lo, lo+1, ...`. An empty vector gives an empty
    /// function.
    pub fn new(origin: S, lo: i64, values: Vec<S>) -> Self {
        Self { origin, lo, values }
    }

    pub fn from_fn<F>(origin: S, lo: i64, hi: i64, f: F) -> Self
    where
        F: FnMut(i64) -> S,
    {
        let values = if hi >= lo { (lo..=hi).map(f).collect() } else { Vec::new() };
        Self { origin, lo, values }
    }

    pub fn constant(origin: S, lo: i64, hi: i64, c: S) -> Self {
        Self::from_fn(origin, lo, hi, |_| c.clone())
    }

    pub fn origin(&self) -> &S {
        &self.origin
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Last offset; `lo - 1` when empty.
    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    pub fn contains(&self, t: i64) -> bool {
        t >= self.lo && t <= self.hi()
    }

    /// Value at offset `t`; out-of-domain reads fail.
    pub fn get(&self, t: i64) -> Result<&S> {
        if self.contains(t) {
            Ok(&self.values[(t - self.lo) as usize])
        } else {
            Err(Error::OutOfDomain { point: t, lo: self.lo, hi: self.hi() })
        }
    }

    /// Real coordinate of offset `t`.
    pub fn point(&self, t: i64) -> S {
        self.origin.clone() + S::from_i64(t)
    }

    pub fn points(&self) -> impl Iterator<Item = (i64, &S)> + '_ {
        self.values.iter().enumerate().map(move |(i, v)| (self.lo + i as i64, v))
    }

    /// Fails unless `[lo, hi]` is contained in the domain.
    pub fn require(&self, lo: i64, hi: i64) -> Result<()> {
        if hi < lo {
            return Ok(());
        }
        for t in [lo, hi] {
            if !self.contains(t) {
                return Err(Error::OutOfDomain { point: t, lo: self.lo, hi: self.hi() });
            }
        }
        Ok(())
    }

    /// Restriction to `[lo, hi]`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<Self> {
        self.require(lo, hi)?;
        Ok(Self::from_fn(self.origin.clone(), lo, hi, |t| self.values[(t - self.lo) as usize].clone()))
    }

    pub fn map<F: FnMut(i64, &S) -> S>(&self, mut f: F) -> Self {
        Self {
            origin: self.origin.clone(),
            lo: self.lo,
            values: self.points().map(|(t, v)| f(t, v)).collect(),
        }
    }

    /// Same values viewed from another origin (used for the dual shifts of
    /// delta operators).
    pub fn with_origin(&self, origin: S) -> Self {
        Self { origin, lo: self.lo, values: self.values.clone() }
    }

    /// `f^rho(t) = f(t - 1)`, defined on `[lo + 1, hi + 1]`.
    pub fn shift_rho(&self) -> Self {
        Self { origin: self.origin.clone(), lo: self.lo + 1, values: self.values.clone() }
    }

    /// `f^sigma(t) = f(t + 1)`, defined on `[lo - 1, hi - 1]`.
    pub fn shift_sigma(&self) -> Self {
        Self { origin: self.origin.clone(), lo: self.lo - 1, values: self.values.clone() }
    }

    /// `t -> f(a + b - t)` with `a`, `b` offsets.
    pub fn reflect(&self, a: i64, b: i64) -> Self {
        let lo = a + b - self.hi();
        let mut values = self.values.clone();
        values.reverse();
        Self { origin: self.origin.clone(), lo, values }
    }

    /// Largest pointwise `|f - g|` over the common domain.
    pub fn max_abs_diff(&self, other: &Self) -> S {
        let lo = self.lo.max(other.lo);
        let hi = self.hi().min(other.hi());
        (lo..=hi)
            .map(|t| (self.values[(t - self.lo) as usize].clone() - other.values[(t - other.lo) as usize].clone()).abs())
            .fold(S::zero(), |m, v| if v > m { v } else { m })
    }

    pub fn max_abs(&self) -> S {
        S::max_abs(self.values.iter())
    }

    /// Writes `t,value` CSV.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,value")?;
        for (t, v) in self.points() {
            writeln!(out, "{},{}", self.point(t).to_text(), v.to_text())?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    /// Reads `t,value` CSV. The first row's `t` becomes the origin (offset
    /// 0), and rows must ascend in exact unit steps.
    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty CSV".into()))?
            .map_err(|e| Error::Parse(e.to_string()))?;
        if header.trim() != "t,value" {
            return Err(Error::Parse(format!("expected header `t,value`, got {header:?}")));
        }
        let mut origin: Option<S> = None;
        let mut values = Vec::new();
        for (row, line) in lines.enumerate() {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let (t, v) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("row {}: expected two columns", row + 2)))?;
            let t = S::parse_text(t)?;
            let v = S::parse_text(v)?;
            match &origin {
                None => origin = Some(t),
                Some(o) => {
                    let expected = o.clone() + S::from_i64(values.len() as i64);
                    let step_ok = match S::BACKEND {
                        crate::Backend::Rational => t == expected,
                        crate::Backend::Float => (t.to_f64() - expected.to_f64()).abs() <= 1e-9 * (1.0 + expected.to_f64().abs()),
                    };
                    if !step_ok {
                        return Err(Error::Parse(format!(
                            "row {}: t = {} breaks the unit step (expected {})",
                            row + 2,
                            t.to_text(),
                            expected.to_text()
                        )));
                    }
                }
            }
            values.push(v);
        }
        let origin = origin.ok_or_else(|| Error::Parse("CSV has no data rows".into()))?;
        Ok(Self { origin, lo: 0, values })
    }

    pub fn from_csv_str(s: &str) -> Result<Self> {
        Self::read_csv(s.as_bytes())
    }
}

/// `sum_{s=lo}^{hi} f(s) g(s)`; `0` when `hi < lo`.
pub fn inner_sum<S: Scalar>(f: &GridFn<S>, g: &GridFn<S>, lo: i64, hi: i64) -> Result<S> {
    f.require(lo, hi)?;
    g.require(lo, hi)?;
    let mut acc = S::zero();
    for s in lo..=hi {
        acc += f.get(s)?.clone() * g.get(s)?.clone();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;
    use proptest::prelude::*;

    fn q(p: i64) -> Rational {
        Rational::from_i64(p)
    }

    #[test]
    fn shifts_move_domains() {
        let g = Grid::new(q(0), q(3)).unwrap();
        let f = g.full(q);
        let r = f.shift_rho();
        assert_eq!((r.lo(), r.hi()), (1, 4));
        for t in 1..=4 {
            assert_eq!(*r.get(t).unwrap(), q(t - 1));
        }
        let s = f.shift_sigma();
        assert_eq!((s.lo(), s.hi()), (-1, 2));
        assert_eq!(*s.get(-1).unwrap(), q(0));
        assert_eq!(f.shift_rho().shift_sigma(), f);

        let c = GridFn::constant(q(0), 0, 3, q(5));
        assert!(c.shift_rho().values().iter().all(|v| *v == q(5)));
    }

    #[test]
    fn out_of_domain_reads_fail() {
        let f = GridFn::constant(0.0, 2, 4, 1.0);
        assert!(matches!(f.get(1), Err(Error::OutOfDomain { point: 1, lo: 2, hi: 4 })));
        assert!(f.get(5).is_err());
        assert!(f.require(2, 5).is_err());
    }

    #[test]
    fn inner_sum_examples() {
        let one = GridFn::constant(q(0), 1, 3, q(1));
        assert_eq!(inner_sum(&one, &one, 1, 3).unwrap(), q(3));
        let zero = GridFn::constant(q(0), 1, 3, q(0));
        assert_eq!(inner_sum(&one, &zero, 1, 3).unwrap(), q(0));
        let f = GridFn::new(q(0), 1, vec![q(1), q(2), q(3)]);
        let g = GridFn::new(q(0), 1, vec![q(1), q(1), q(2)]);
        assert_eq!(inner_sum(&f, &g, 1, 3).unwrap(), q(9));
        assert!(inner_sum(&f, &g, 0, 3).is_err());
    }

    #[test]
    fn grid_requires_integer_span() {
        assert!(Grid::new(Rational::from_ratio(1, 2), Rational::from_ratio(3, 2)).is_ok());
        assert!(Grid::new(Rational::from_ratio(1, 2), q(3)).is_err());
        assert!(Grid::new(q(3), q(1)).is_err());
        let g = Grid::new(Rational::from_ratio(1, 3), Rational::from_ratio(13, 3)).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.index_of(&Rational::from_ratio(7, 3)).unwrap(), 2);
        assert!(g.require_interior().is_ok());
        assert!(Grid::new(q(0), q(1)).unwrap().require_interior().is_err());
    }

    #[test]
    fn csv_rejects_broken_steps() {
        assert!(GridFn::<Rational>::from_csv_str("t,value\n0/1,1/1\n2/1,1/1\n").is_err());
        assert!(GridFn::<Rational>::from_csv_str("x,y\n0,1\n").is_err());
        assert!(GridFn::<Rational>::from_csv_str("t,value\n").is_err());
        let f = GridFn::<Rational>::from_csv_str("t,value\n1/2,3\n3/2,1/3\n").unwrap();
        assert_eq!(*f.origin(), Rational::from_ratio(1, 2));
        assert_eq!(f.values(), &[q(3), Rational::from_ratio(1, 3)]);
    }

    proptest! {
        #[test]
        fn rational_csv_round_trip(vals in prop::collection::vec((-50i64..50, 1i64..20), 1..12), p in -5i64..5, d in 1i64..4) {
            let f = GridFn::new(
                Rational::from_ratio(p, d),
                0,
                vals.iter().map(|(a, b)| Rational::from_ratio(*a, *b)).collect(),
            );
            let back = GridFn::<Rational>::from_csv_str(&f.to_csv_string()).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn float_csv_round_trip_is_bit_exact(vals in prop::collection::vec(-1e6f64..1e6, 1..12), origin in -100i64..100) {
            let f = GridFn::new(origin as f64 + 0.5, 0, vals);
            let back = GridFn::<f64>::from_csv_str(&f.to_csv_string()).unwrap();
            prop_assert_eq!(back.origin().to_bits(), f.origin().to_bits());
            for (x, y) in back.values().iter().zip(f.values()) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }

        #[test]
        fn inner_sum_is_symmetric_and_bilinear(
            f in prop::collection::vec(-9i64..=9, 5),
            g in prop::collection::vec(-9i64..=9, 5),
            h in prop::collection::vec(-9i64..=9, 5),
            c in -5i64..=5,
        ) {
            let mk = |v: &Vec<i64>| GridFn::new(q(0), 0, v.iter().map(|x| q(*x)).collect());
            let (f, g, h) = (mk(&f), mk(&g), mk(&h));
            prop_assert_eq!(inner_sum(&f, &g, 0, 4).unwrap(), inner_sum(&g, &f, 0, 4).unwrap());
            let comb = GridFn::new(q(0), 0, f.values().iter().zip(h.values()).map(|(x, y)| x.clone() * q(c) + y.clone()).collect());
            let lhs = inner_sum(&comb, &g, 0, 4).unwrap();
            let rhs = inner_sum(&f, &g, 0, 4).unwrap() * q(c) + inner_sum(&h, &g, 0, 4).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
