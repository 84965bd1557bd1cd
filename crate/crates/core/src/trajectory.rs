//! Exact piecewise-linear functions of temperature with slopes in
//! `{-1, 0, +1}` and dyadic breakpoints.
//!
//! A [`Trajectory`] is defined on `[start_t, +inf)`. It is stored as a start
//! point, a list of maximal segments (each with its slope and right end) and
//! the slope of the final half-line. Maximality (no empty segments, no equal
//! adjacent slopes) makes structural equality coincide with equality of
//! functions.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyadic::{Dyadic, DyadicError, DyadicInt};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrajectoryError {
    #[error("t = {t} lies before the domain start {start}")]
    BeforeStart { t: String, start: String },
    #[error("trajectories start at different temperatures")]
    DomainMismatch,
    #[error("slope {0} is outside {{-1, 0, 1}}")]
    SlopeOutOfRange(String),
    #[error("breakpoints must strictly increase")]
    UnorderedBreakpoints,
    #[error("trajectory has no mast (tail slope {0})")]
    NoMast(i8),
    #[error("first trajectory does not start strictly above the second")]
    NotAbove,
    #[error("trajectories never meet")]
    NoMeet,
    #[error(transparent)]
    Dyadic(#[from] DyadicError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Slope {
    Down,
    Flat,
    Up,
}

impl Slope {
    pub fn value(self) -> i8 {
        match self {
            Slope::Down => -1,
            Slope::Flat => 0,
            Slope::Up => 1,
        }
    }

    pub fn from_value(v: i8) -> Option<Slope> {
        match v {
            -1 => Some(Slope::Down),
            0 => Some(Slope::Flat),
            1 => Some(Slope::Up),
            _ => None,
        }
    }

    fn as_dyadic<I: DyadicInt>(self) -> Dyadic<I> {
        Dyadic::int(self.value() as i64)
    }
}

impl From<Slope> for i8 {
    fn from(s: Slope) -> i8 {
        s.value()
    }
}

impl TryFrom<i8> for Slope {
    type Error = TrajectoryError;
    fn try_from(v: i8) -> Result<Self, Self::Error> {
        Slope::from_value(v).ok_or_else(|| TrajectoryError::SlopeOutOfRange(v.to_string()))
    }
}

/// A maximal linear piece ending at `end_t` (its start is the previous end).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(serialize = "I: DyadicInt", deserialize = "I: DyadicInt"))]
pub struct Segment<I: DyadicInt> {
    pub slope: Slope,
    pub end_t: Dyadic<I>,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    bound(serialize = "I: DyadicInt", deserialize = "I: DyadicInt"),
    try_from = "RawTrajectory<I>"
)]
pub struct Trajectory<I: DyadicInt> {
    start_t: Dyadic<I>,
    start_value: Dyadic<I>,
    segments: Vec<Segment<I>>,
    tail_slope: Slope,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "I: DyadicInt"))]
struct RawTrajectory<I: DyadicInt> {
    start_t: Dyadic<I>,
    start_value: Dyadic<I>,
    segments: Vec<Segment<I>>,
    tail_slope: Slope,
}

impl<I: DyadicInt> TryFrom<RawTrajectory<I>> for Trajectory<I> {
    type Error = TrajectoryError;
    fn try_from(raw: RawTrajectory<I>) -> Result<Self, Self::Error> {
        Trajectory::from_parts(raw.start_t, raw.start_value, raw.segments, raw.tail_slope)
    }
}

/// The constant part of a trajectory.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mast<I: DyadicInt> {
    pub mast_start: Dyadic<I>,
    pub mast_value: Dyadic<I>,
}

impl<I: DyadicInt> Trajectory<I> {
    /// The domain every trajectory produced by cooling starts at.
    pub fn domain_start() -> Dyadic<I> {
        Dyadic::int(-1)
    }

    pub fn constant(value: Dyadic<I>) -> Self {
        Self::line(value, Slope::Flat)
    }

    /// The line through `(-1, value_at_start)` with the given slope.
    pub fn line(value_at_start: Dyadic<I>, slope: Slope) -> Self {
        Trajectory {
            start_t: Self::domain_start(),
            start_value: value_at_start,
            segments: Vec::new(),
            tail_slope: slope,
        }
    }

    /// Validates ordering and merges redundant segments.
    pub fn from_parts(
        start_t: Dyadic<I>,
        start_value: Dyadic<I>,
        segments: Vec<Segment<I>>,
        tail_slope: Slope,
    ) -> Result<Self, TrajectoryError> {
        let mut prev = &start_t;
        for s in &segments {
            if s.end_t <= *prev {
                return Err(TrajectoryError::UnorderedBreakpoints);
            }
            prev = &s.end_t;
        }
        let mut merged: Vec<Segment<I>> = Vec::with_capacity(segments.len());
        for s in segments {
            match merged.last_mut() {
                Some(last) if last.slope == s.slope => last.end_t = s.end_t,
                _ => merged.push(s),
            }
        }
        while merged.last().is_some_and(|s| s.slope == tail_slope) {
            merged.pop();
        }
        Ok(Trajectory {
            start_t,
            start_value,
            segments: merged,
            tail_slope,
        })
    }

    /// Builds the trajectory through the given points (strictly increasing
    /// in `t`), continuing with `tail_slope` after the last one.
    pub fn from_knots(
        knots: &[(Dyadic<I>, Dyadic<I>)],
        tail_slope: Slope,
    ) -> Result<Self, TrajectoryError> {
        let (start_t, start_value) = knots.first().cloned().ok_or(TrajectoryError::UnorderedBreakpoints)?;
        let mut segments = Vec::with_capacity(knots.len());
        for w in knots.windows(2) {
            let (t0, v0) = &w[0];
            let (t1, v1) = &w[1];
            let dt = t1.checked_sub(t0)?;
            if !dt.is_positive() {
                return Err(TrajectoryError::UnorderedBreakpoints);
            }
            let dv = v1.checked_sub(v0)?;
            let slope = if dv.is_zero() {
                Slope::Flat
            } else if dv == dt {
                Slope::Up
            } else if dv.checked_neg()? == dt {
                Slope::Down
            } else {
                return Err(TrajectoryError::SlopeOutOfRange(format!("({dv})/({dt})")));
            };
            segments.push(Segment {
                slope,
                end_t: t1.clone(),
            });
        }
        Self::from_parts(start_t, start_value, segments, tail_slope)
    }

    pub fn start_t(&self) -> &Dyadic<I> {
        &self.start_t
    }

    pub fn start_value(&self) -> &Dyadic<I> {
        &self.start_value
    }

    pub fn segments(&self) -> &[Segment<I>] {
        &self.segments
    }

    pub fn tail_slope(&self) -> Slope {
        self.tail_slope
    }

    /// Interior breakpoints, in increasing order.
    pub fn breakpoints(&self) -> impl Iterator<Item = &Dyadic<I>> {
        self.segments.iter().map(|s| &s.end_t)
    }

    /// Every slope that occurs, segments first, then the tail.
    pub fn slopes(&self) -> impl Iterator<Item = Slope> + '_ {
        self.segments
            .iter()
            .map(|s| s.slope)
            .chain(std::iter::once(self.tail_slope))
    }

    /// `(t, f(t))` at the domain start and every breakpoint.
    pub fn knots(&self) -> Vec<(Dyadic<I>, Dyadic<I>)> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut t = self.start_t.clone();
        let mut v = self.start_value.clone();
        out.push((t.clone(), v.clone()));
        for s in &self.segments {
            let dt = &s.end_t - &t;
            v = &v + &(&s.slope.as_dyadic() * &dt);
            t = s.end_t.clone();
            out.push((t.clone(), v.clone()));
        }
        out
    }

    fn check_domain(&self, t: &Dyadic<I>) -> Result<(), TrajectoryError> {
        if *t < self.start_t {
            return Err(TrajectoryError::BeforeStart {
                t: t.to_string(),
                start: self.start_t.to_string(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, t: &Dyadic<I>) -> Result<Dyadic<I>, TrajectoryError> {
        self.check_domain(t)?;
        let mut t0 = &self.start_t;
        let mut v = self.start_value.clone();
        for s in &self.segments {
            if *t <= s.end_t {
                return Ok(&v + &(&s.slope.as_dyadic() * &(t - t0)));
            }
            v = &v + &(&s.slope.as_dyadic() * &(&s.end_t - t0));
            t0 = &s.end_t;
        }
        Ok(&v + &(&self.tail_slope.as_dyadic() * &(t - t0)))
    }

    /// Slope on `(t - δ, t]` for all small enough `δ > 0`. When `t` is a
    /// breakpoint this is the slope of the segment ending at `t`.
    pub fn slope_left_of(&self, t: &Dyadic<I>) -> Result<Slope, TrajectoryError> {
        if *t <= self.start_t {
            return Err(TrajectoryError::BeforeStart {
                t: t.to_string(),
                start: self.start_t.to_string(),
            });
        }
        Ok(self
            .segments
            .iter()
            .find(|s| *t <= s.end_t)
            .map_or(self.tail_slope, |s| s.slope))
    }

    /// Slope on `[t, t + δ)`.
    pub fn slope_right_of(&self, t: &Dyadic<I>) -> Result<Slope, TrajectoryError> {
        self.check_domain(t)?;
        Ok(self
            .segments
            .iter()
            .find(|s| *t < s.end_t)
            .map_or(self.tail_slope, |s| s.slope))
    }

    pub fn is_non_increasing(&self) -> bool {
        self.slopes().all(|s| s != Slope::Up)
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.slopes().all(|s| s != Slope::Down)
    }

    /// `t ↦ f(t) + slope_delta·t + offset`.
    pub fn add_linear(&self, slope_delta: Slope, offset: &Dyadic<I>) -> Result<Self, TrajectoryError> {
        let delta = slope_delta.value();
        let shift = |s: Slope| {
            let v = s.value() + delta;
            Slope::from_value(v).ok_or_else(|| TrajectoryError::SlopeOutOfRange(v.to_string()))
        };
        let segments = self
            .segments
            .iter()
            .map(|s| {
                Ok(Segment {
                    slope: shift(s.slope)?,
                    end_t: s.end_t.clone(),
                })
            })
            .collect::<Result<Vec<_>, TrajectoryError>>()?;
        let tail_slope = shift(self.tail_slope)?;
        let start_value = self
            .start_value
            .checked_add(&slope_delta.as_dyadic::<I>().checked_mul(&self.start_t)?)?
            .checked_add(offset)?;
        Ok(Trajectory {
            start_t: self.start_t.clone(),
            start_value,
            segments,
            tail_slope,
        })
    }

    /// `t ↦ max(f(t), g(t))`.
    pub fn pointwise_max(&self, other: &Self) -> Result<Self, TrajectoryError> {
        self.envelope(other, true)
    }

    /// `t ↦ min(f(t), g(t))`.
    pub fn pointwise_min(&self, other: &Self) -> Result<Self, TrajectoryError> {
        self.envelope(other, false)
    }

    fn envelope(&self, other: &Self, upper: bool) -> Result<Self, TrajectoryError> {
        if self.start_t != other.start_t {
            return Err(TrajectoryError::DomainMismatch);
        }
        let mut ts: Vec<Dyadic<I>> = std::iter::once(&self.start_t)
            .chain(self.breakpoints())
            .chain(other.breakpoints())
            .cloned()
            .collect();
        ts.sort();
        ts.dedup();

        let gap = |t: &Dyadic<I>| -> Result<Dyadic<I>, TrajectoryError> {
            Ok(self.eval(t)?.checked_sub(&other.eval(t)?)?)
        };
        // where f - g changes sign inside an interval, the crossing is a
        // breakpoint of the envelope
        let mut crossings = Vec::new();
        for w in ts.windows(2) {
            let (da, db) = (gap(&w[0])?, gap(&w[1])?);
            if (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive()) {
                let rate = self.slope_left_of(&w[1])?.value() - other.slope_left_of(&w[1])?.value();
                crossings.push(root(&w[0], &da, rate)?);
            }
        }
        let last = ts.last().expect("at least the start point").clone();
        let d_last = gap(&last)?;
        let tail_rate = self.tail_slope.value() - other.tail_slope.value();
        if (d_last.is_positive() && tail_rate < 0) || (d_last.is_negative() && tail_rate > 0) {
            crossings.push(root(&last, &d_last, tail_rate)?);
        }
        ts.extend(crossings);
        ts.sort();

        let pick = |a: Dyadic<I>, b: Dyadic<I>| if (a >= b) == upper { a } else { b };
        let knots = ts
            .iter()
            .map(|t| Ok((t.clone(), pick(self.eval(t)?, other.eval(t)?))))
            .collect::<Result<Vec<_>, TrajectoryError>>()?;

        let end = ts.last().expect("non-empty");
        let d_end = gap(end)?;
        let (sf, sg) = (self.tail_slope, other.tail_slope);
        let tail = if d_end.is_positive() {
            if upper { sf } else { sg }
        } else if d_end.is_negative() {
            if upper { sg } else { sf }
        } else if upper {
            sf.max(sg)
        } else {
            sf.min(sg)
        };
        Self::from_knots(&knots, tail)
    }

    /// Least `t` with `f(t) = g(t)`, where `f` starts strictly above `g`.
    pub fn first_meet(&self, other: &Self) -> Result<(Dyadic<I>, Dyadic<I>), TrajectoryError> {
        if self.start_t != other.start_t {
            return Err(TrajectoryError::DomainMismatch);
        }
        let gap = |t: &Dyadic<I>| -> Result<Dyadic<I>, TrajectoryError> {
            Ok(self.eval(t)?.checked_sub(&other.eval(t)?)?)
        };
        let mut a = self.start_t.clone();
        let mut da = gap(&a)?;
        if !da.is_positive() {
            return Err(TrajectoryError::NotAbove);
        }
        let mut ts: Vec<Dyadic<I>> = self.breakpoints().chain(other.breakpoints()).cloned().collect();
        ts.sort();
        ts.dedup();
        for b in ts {
            let db = gap(&b)?;
            if !db.is_positive() {
                let rate = self.slope_left_of(&b)?.value() - other.slope_left_of(&b)?.value();
                let t = root(&a, &da, rate)?;
                let v = self.eval(&t)?;
                return Ok((t, v));
            }
            a = b;
            da = db;
        }
        let rate = self.tail_slope.value() - other.tail_slope.value();
        if rate >= 0 {
            return Err(TrajectoryError::NoMeet);
        }
        let t = root(&a, &da, rate)?;
        let v = self.eval(&t)?;
        Ok((t, v))
    }

    /// The final constant half-line.
    pub fn mast(&self) -> Result<Mast<I>, TrajectoryError> {
        if self.tail_slope != Slope::Flat {
            return Err(TrajectoryError::NoMast(self.tail_slope.value()));
        }
        let mast_start = self
            .segments
            .last()
            .map_or_else(|| self.start_t.clone(), |s| s.end_t.clone());
        let mast_value = self.eval(&mast_start)?;
        Ok(Mast {
            mast_start,
            mast_value,
        })
    }

    /// Agrees with `self` up to `t0` and is constant from there on.
    pub fn freeze_at(&self, t0: &Dyadic<I>) -> Result<Self, TrajectoryError> {
        self.check_domain(t0)?;
        let mut knots: Vec<_> = self.knots().into_iter().filter(|(t, _)| t < t0).collect();
        knots.push((t0.clone(), self.eval(t0)?));
        Self::from_knots(&knots, Slope::Flat)
    }
}

/// Zero of the linear function with value `d_at_a` at `a` and the given
/// integer slope.
fn root<I: DyadicInt>(a: &Dyadic<I>, d_at_a: &Dyadic<I>, rate: i8) -> Result<Dyadic<I>, TrajectoryError> {
    let step = match rate {
        -1 | 1 => d_at_a.clone(),
        -2 | 2 => d_at_a.half()?,
        _ => return Err(TrajectoryError::SlopeOutOfRange(rate.to_string())),
    };
    Ok(if rate > 0 {
        a.checked_sub(&step)?
    } else {
        a.checked_add(&step)?
    })
}

impl<I: DyadicInt> fmt::Debug for Trajectory<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.start_t, self.start_value)?;
        for s in &self.segments {
            write!(f, " -[{}]-> {}", s.slope.value(), s.end_t)?;
        }
        write!(f, " -[{}]-> +inf", self.tail_slope.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type D = Dyadic<i64>;
    type T = Trajectory<i64>;

    fn d(s: &str) -> D {
        s.parse().unwrap()
    }

    fn knots(points: &[(&str, &str)], tail: i8) -> T {
        let k: Vec<_> = points.iter().map(|(t, v)| (d(t), d(v))).collect();
        T::from_knots(&k, Slope::from_value(tail).unwrap()).unwrap()
    }

    /// t ↦ t on [-1, ∞)
    fn identity() -> T {
        T::line(d("-1"), Slope::Up)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(T::constant(d("1")).eval(&d("5")).unwrap(), d("1"));
        let f = knots(&[("-1", "3"), ("1", "1")], 0);
        assert_eq!(f.eval(&d("0")).unwrap(), d("2"));
        assert_eq!(f.eval(&d("1")).unwrap(), d("1"));
        assert_eq!(f.eval(&d("7")).unwrap(), d("1"));
        assert!(matches!(
            f.eval(&d("-2")),
            Err(TrajectoryError::BeforeStart { .. })
        ));
    }

    #[test]
    fn from_knots_merges_collinear_points() {
        let f = knots(&[("-1", "0"), ("0", "1"), ("1", "2"), ("2", "2")], 0);
        assert_eq!(f.segments().len(), 1);
        assert_eq!(f.segments()[0].end_t, d("1"));
        assert!(T::from_knots(&[(d("0"), d("0")), (d("1"), d("2"))], Slope::Flat).is_err());
    }

    #[test]
    fn max_examples() {
        let f = knots(&[("-1", "2"), ("1", "0")], -1);
        assert_eq!(f.pointwise_max(&f).unwrap(), f);

        let down = T::line(d("1"), Slope::Down);
        let abs = down.pointwise_max(&identity()).unwrap();
        assert_eq!(abs, knots(&[("-1", "1"), ("0", "0")], 1));
        assert_eq!(abs.eval(&d("0")).unwrap(), d("0"));

        let g = identity();
        let back = abs.pointwise_min(&g).unwrap();
        for k in -16..=128 {
            let t = D::frac(k, 4);
            if t >= d("-1") {
                assert_eq!(back.eval(&t).unwrap(), g.eval(&t).unwrap());
            }
        }
    }

    #[test]
    fn crossing_at_half_integer() {
        // 2 - t against 1 + t crosses at t = 1/2
        let f = T::line(d("3"), Slope::Down);
        let g = T::line(d("0"), Slope::Up);
        let m = f.pointwise_min(&g).unwrap();
        assert_eq!(m.breakpoints().cloned().collect::<Vec<_>>(), vec![d("1/2")]);
        assert_eq!(m.eval(&d("1/2")).unwrap(), d("3/2"));
    }

    #[test]
    fn add_linear_examples() {
        let zero = T::constant(d("0"));
        assert_eq!(zero.add_linear(Slope::Up, &d("0")).unwrap(), identity());
        assert_eq!(
            identity().add_linear(Slope::Down, &d("0")).unwrap(),
            T::constant(d("0"))
        );
        let f = knots(&[("-1", "2"), ("1/2", "1/2")], 0);
        let shifted = f.add_linear(Slope::Flat, &d("3/4")).unwrap();
        assert!(shifted.breakpoints().eq(f.breakpoints()));
        assert_eq!(shifted.eval(&d("0")).unwrap(), d("7/4"));
        assert!(matches!(
            identity().add_linear(Slope::Up, &d("0")),
            Err(TrajectoryError::SlopeOutOfRange(_))
        ));
    }

    #[test]
    fn first_meet_examples() {
        let two_minus_t = T::line(d("3"), Slope::Down);
        assert_eq!(two_minus_t.first_meet(&identity()).unwrap(), (d("1"), d("1")));

        let minus_t = T::line(d("1"), Slope::Down);
        let one_plus_t = T::line(d("0"), Slope::Up);
        assert_eq!(minus_t.first_meet(&one_plus_t).unwrap(), (d("-1/2"), d("1/2")));

        let zero = T::constant(d("0"));
        assert_eq!(zero.first_meet(&identity()).unwrap(), (d("0"), d("0")));

        assert_eq!(identity().first_meet(&zero), Err(TrajectoryError::NotAbove));
        assert_eq!(
            T::constant(d("1")).first_meet(&zero),
            Err(TrajectoryError::NoMeet)
        );
    }

    #[test]
    fn first_meet_at_shared_breakpoint() {
        let f = knots(&[("-1", "2"), ("1", "0")], 0);
        let g = knots(&[("-1", "-2"), ("1", "0")], 0);
        assert_eq!(f.first_meet(&g).unwrap(), (d("1"), d("0")));
    }

    #[test]
    fn mast_examples() {
        let c = T::constant(d("4"));
        assert_eq!(
            c.mast().unwrap(),
            Mast { mast_start: d("-1"), mast_value: d("4") }
        );
        let abs = T::line(d("1"), Slope::Down).pointwise_max(&identity()).unwrap();
        let clipped = abs.freeze_at(&d("1")).unwrap();
        let m = clipped.mast().unwrap();
        assert_eq!(m.mast_start, d("1"));
        assert_eq!(
            m.mast_value,
            clipped.eval(&(&m.mast_start + &d("1"))).unwrap()
        );
        assert_eq!(identity().mast(), Err(TrajectoryError::NoMast(1)));
    }

    #[test]
    fn slope_queries() {
        let f = knots(&[("-1", "2"), ("0", "1"), ("1", "1")], 1);
        assert_eq!(f.slope_left_of(&d("0")).unwrap(), Slope::Down);
        assert_eq!(f.slope_right_of(&d("0")).unwrap(), Slope::Flat);
        assert_eq!(f.slope_left_of(&d("5")).unwrap(), Slope::Up);
        assert!(f.slope_left_of(&d("-1")).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = knots(&[("-1", "2"), ("1/4", "3/4")], 0);
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(
            text,
            r#"{"start_t":"-1","start_value":"2","segments":[{"slope":-1,"end_t":"1/4"}],"tail_slope":0}"#
        );
        let back: T = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"start_t":"-1","start_value":"2","segments":[{"slope":2,"end_t":"1/4"}],"tail_slope":0}"#;
        assert!(serde_json::from_str::<T>(bad).is_err());
    }

    /// Random trajectories with slopes in {-1,0,1}, breakpoints on the 1/8 grid.
    fn arb_trajectory() -> impl Strategy<Value = T> {
        arb_trajectory_with(-1, 1)
    }

    fn arb_trajectory_with(lo: i8, hi: i8) -> impl Strategy<Value = T> {
        (
            -16i64..16,
            prop::collection::vec((1i64..12, lo..=hi), 0..6),
            lo..=hi,
        )
            .prop_map(|(v0, pieces, tail)| {
                let mut t = D::int(-1);
                let mut v = D::frac(v0, 2);
                let mut k = vec![(t.clone(), v.clone())];
                for (len, slope) in pieces {
                    let dt = D::frac(len, 3);
                    v = &v + &(&D::int(slope as i64) * &dt);
                    t = &t + &dt;
                    k.push((t.clone(), v.clone()));
                }
                T::from_knots(&k, Slope::from_value(tail).unwrap()).unwrap()
            })
    }

    fn is_maximal(f: &T) -> bool {
        let mut prev = f.start_t().clone();
        let mut prev_slope = None;
        for s in f.segments() {
            if s.end_t <= prev || prev_slope == Some(s.slope) {
                return false;
            }
            prev = s.end_t.clone();
            prev_slope = Some(s.slope);
        }
        prev_slope != Some(f.tail_slope())
    }

    proptest! {
        #[test]
        fn envelopes_are_exact_on_dense_grid(f in arb_trajectory(), g in arb_trajectory()) {
            let hi = f.pointwise_max(&g).unwrap();
            let lo = f.pointwise_min(&g).unwrap();
            prop_assert!(is_maximal(&hi));
            prop_assert!(is_maximal(&lo));
            for k in -16..=128 {
                let t = D::frac(k, 4);
                let (a, b) = (f.eval(&t).unwrap(), g.eval(&t).unwrap());
                prop_assert_eq!(hi.eval(&t).unwrap(), a.clone().max(b.clone()));
                prop_assert_eq!(lo.eval(&t).unwrap(), a.min(b));
            }
        }

        #[test]
        fn first_meet_is_minimal(v0 in 1i64..40, down in arb_trajectory_with(-1, 0)) {
            // a non-increasing trajectory above a non-decreasing one
            let up = T::line(&down.eval(&D::int(-1)).unwrap() - &D::frac(v0, 2), Slope::Up);
            let (t0, v) = down.first_meet(&up).unwrap();
            prop_assert_eq!(down.eval(&t0).unwrap(), v.clone());
            prop_assert_eq!(up.eval(&t0).unwrap(), v);
            for k in 0..12 {
                let before = &t0 - &D::frac(1, k);
                if before >= D::int(-1) {
                    prop_assert!(down.eval(&before).unwrap() > up.eval(&before).unwrap());
                }
            }
        }
    }
}
