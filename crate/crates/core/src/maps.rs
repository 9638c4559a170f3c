//! Piecewise-monotone interval and circle maps with exact breakpoints.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Direction from which a point is approached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Below,
    Above,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Below => Side::Above,
            Side::Above => Side::Below,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    TentSymmetric,
    TentCore,
    Logistic,
    IncreasingLorenz,
    DecreasingLorenz,
    Stunted,
    StuntedCircle,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Domain {
    UnitInterval,
    Circle { circumference: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Span {
    pub lo: ExactScalar,
    pub hi: ExactScalar,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Span {
    pub fn new(lo: ExactScalar, hi: ExactScalar, lo_closed: bool, hi_closed: bool) -> Span {
        Span {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    pub fn contains(&self, x: &ExactScalar) -> Result<bool> {
        let l = x.cmp_to(&self.lo)?;
        let h = x.cmp_to(&self.hi)?;
        let above_lo = l == Ordering::Greater || (l == Ordering::Equal && self.lo_closed);
        let below_hi = h == Ordering::Less || (h == Ordering::Equal && self.hi_closed);
        Ok(above_lo && below_hi)
    }

    /// Whether points just below (or above) x lie in the span.
    pub fn contains_limit(&self, x: &ExactScalar, side: Side) -> Result<bool> {
        match side {
            Side::Below => Ok(x.gt(&self.lo)? && x.le(&self.hi)?),
            Side::Above => Ok(x.ge(&self.lo)? && x.lt(&self.hi)?),
        }
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(match self.lo.cmp_to(&self.hi)? {
            Ordering::Less => false,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Greater => true,
        })
    }
}

/// Local monotonicity of a piece at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
    Flat,
    /// Turning point with a local maximum.
    Max,
    /// Turning point with a local minimum.
    Min,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Formula {
    Affine {
        slope: ExactScalar,
        intercept: ExactScalar,
    },
    Quadratic {
        a2: ExactScalar,
        a1: ExactScalar,
        a0: ExactScalar,
    },
    Constant {
        value: ExactScalar,
    },
}

impl Formula {
    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        match self {
            Formula::Affine { slope, intercept } => slope * x + intercept,
            Formula::Quadratic { a2, a1, a0 } => (a2 * x + a1) * x + a0,
            Formula::Constant { value } => value.clone(),
        }
    }

    pub fn direction_at(&self, x: &ExactScalar) -> Result<Direction> {
        let sign = match self {
            Formula::Affine { slope, .. } => slope.sign()?,
            Formula::Constant { .. } => return Ok(Direction::Flat),
            Formula::Quadratic { a2, a1, .. } => {
                let d = &(&ExactScalar::from(2) * a2) * x + a1;
                match d.sign()? {
                    Ordering::Equal => {
                        return Ok(if a2.sign()? == Ordering::Less {
                            Direction::Max
                        } else {
                            Direction::Min
                        })
                    }
                    s => s,
                }
            }
        };
        Ok(match sign {
            Ordering::Greater => Direction::Increasing,
            Ordering::Less => Direction::Decreasing,
            Ordering::Equal => Direction::Flat,
        })
    }

    /// 1 − g.
    pub fn reflected(&self) -> Formula {
        let one = ExactScalar::one();
        match self {
            Formula::Affine { slope, intercept } => Formula::Affine {
                slope: -slope,
                intercept: &one - intercept,
            },
            Formula::Quadratic { a2, a1, a0 } => Formula::Quadratic {
                a2: -a2,
                a1: -a1,
                a0: &one - a0,
            },
            Formula::Constant { value } => Formula::Constant {
                value: &one - value,
            },
        }
    }

    /// (slope, intercept) for affine and constant pieces.
    pub fn affine_parts(&self) -> Option<(ExactScalar, ExactScalar)> {
        match self {
            Formula::Affine { slope, intercept } => Some((slope.clone(), intercept.clone())),
            Formula::Constant { value } => Some((ExactScalar::zero(), value.clone())),
            Formula::Quadratic { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub span: Span,
    pub formula: Formula,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Plateau {
    pub span: Span,
    pub value: ExactScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapSpec {
    pub family: Family,
    pub parameter: ExactScalar,
    pub domain: Domain,
    /// Turning point or discontinuity used for itineraries.
    pub critical: Option<ExactScalar>,
    pub pieces: Vec<Piece>,
    pub plateau: Option<Plateau>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalData {
    pub c: ExactScalar,
    pub a: ExactScalar,
    pub b: ExactScalar,
    pub plateau_degenerate: bool,
}

fn q(n: i64, d: i64) -> ExactScalar {
    ExactScalar::ratio(n, d)
}

fn check_range(
    what: &str,
    p: &ExactScalar,
    lo: &ExactScalar,
    lo_open: bool,
    hi: &ExactScalar,
) -> Result<()> {
    let above = if lo_open { p.gt(lo)? } else { p.ge(lo)? };
    if above && p.le(hi)? {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            what: what.to_string(),
            value: p.to_string(),
        })
    }
}

/// Build a family member: tent-symmetric and tent-core need λ ∈ (1, 2], logistic a ∈ (0, 4].
pub fn make_family(family: Family, parameter: ExactScalar) -> Result<MapSpec> {
    let one = ExactScalar::one();
    let half = q(1, 2);
    match family {
        Family::TentSymmetric => {
            check_range("tent slope", &parameter, &one, true, &ExactScalar::from(2))?;
            let l = parameter.clone();
            let half_l = &l * &half;
            Ok(MapSpec {
                family,
                domain: Domain::UnitInterval,
                critical: Some(half.clone()),
                pieces: vec![
                    Piece {
                        span: Span::new(ExactScalar::zero(), half.clone(), true, true),
                        formula: Formula::Affine {
                            slope: l.clone(),
                            intercept: &one - &half_l,
                        },
                    },
                    Piece {
                        span: Span::new(half, one.clone(), false, true),
                        formula: Formula::Affine {
                            slope: -&l,
                            intercept: &one + &half_l,
                        },
                    },
                ],
                plateau: None,
                parameter,
            })
        }
        Family::TentCore => {
            check_range("tent slope", &parameter, &one, true, &ExactScalar::from(2))?;
            let l = parameter.clone();
            let c = (&l - &one) / &l;
            Ok(MapSpec {
                family,
                domain: Domain::UnitInterval,
                critical: Some(c.clone()),
                pieces: vec![
                    Piece {
                        span: Span::new(ExactScalar::zero(), c.clone(), true, true),
                        formula: Formula::Affine {
                            slope: l.clone(),
                            intercept: &ExactScalar::from(2) - &l,
                        },
                    },
                    Piece {
                        span: Span::new(c, one, false, true),
                        formula: Formula::Affine {
                            slope: -&l,
                            intercept: l.clone(),
                        },
                    },
                ],
                plateau: None,
                parameter,
            })
        }
        Family::Logistic => {
            check_range(
                "logistic parameter",
                &parameter,
                &ExactScalar::zero(),
                true,
                &ExactScalar::from(4),
            )?;
            let a = parameter.clone();
            let formula = Formula::Quadratic {
                a2: -&a,
                a1: a.clone(),
                a0: &one - &(&a * &q(1, 4)),
            };
            Ok(MapSpec {
                family,
                domain: Domain::UnitInterval,
                critical: Some(half.clone()),
                pieces: vec![
                    Piece {
                        span: Span::new(ExactScalar::zero(), half.clone(), true, true),
                        formula: formula.clone(),
                    },
                    Piece {
                        span: Span::new(half, one, false, true),
                        formula,
                    },
                ],
                plateau: None,
                parameter,
            })
        }
        other => Err(Error::Unsupported(format!(
            "{other:?} is derived, not a base family"
        ))),
    }
}

pub fn tent_symmetric(lambda: ExactScalar) -> Result<MapSpec> {
    make_family(Family::TentSymmetric, lambda)
}

pub fn tent_core(lambda: ExactScalar) -> Result<MapSpec> {
    make_family(Family::TentCore, lambda)
}

pub fn logistic(a: ExactScalar) -> Result<MapSpec> {
    make_family(Family::Logistic, a)
}

impl MapSpec {
    pub fn circumference(&self) -> Option<u32> {
        match self.domain {
            Domain::Circle { circumference } => Some(circumference),
            Domain::UnitInterval => None,
        }
    }

    pub fn critical_point(&self) -> Result<&ExactScalar> {
        self.critical
            .as_ref()
            .ok_or_else(|| Error::Unsupported("map has no declared critical point".into()))
    }

    fn reduce(&self, x: &ExactScalar) -> Result<ExactScalar> {
        match self.domain {
            Domain::Circle { circumference } => x.rem_int(circumference),
            Domain::UnitInterval => {
                if x.ge(&ExactScalar::zero())? && x.le(&ExactScalar::one())? {
                    Ok(x.clone())
                } else {
                    Err(Error::OutOfDomain(x.to_string()))
                }
            }
        }
    }

    pub fn locate(&self, x: &ExactScalar) -> Result<usize> {
        for (i, p) in self.pieces.iter().enumerate() {
            if p.span.contains(x)? {
                return Ok(i);
            }
        }
        Err(Error::OutOfDomain(x.to_string()))
    }

    pub fn locate_limit(&self, x: &ExactScalar, side: Side) -> Result<usize> {
        for (i, p) in self.pieces.iter().enumerate() {
            if p.span.contains_limit(x, side)? {
                return Ok(i);
            }
        }
        Err(Error::OutOfDomain(format!("{x} approached from {side:?}")))
    }

    pub fn eval(&self, x: &ExactScalar) -> Result<ExactScalar> {
        let r = self.reduce(x)?;
        let i = self.locate(&r)?;
        let v = self.pieces[i].formula.eval(&r);
        match self.domain {
            Domain::Circle { circumference } => v.rem_int(circumference),
            Domain::UnitInterval => Ok(v),
        }
    }

    /// Evaluate a one-sided limit. Returns the limit value and the side from which the
    /// image is approached (`None` once a constant piece makes the value exact).
    pub fn eval_side(
        &self,
        x: &ExactScalar,
        side: Option<Side>,
    ) -> Result<(ExactScalar, Option<Side>)> {
        let Some(side) = side else {
            return Ok((self.eval(x)?, None));
        };
        let mut r = self.reduce(x)?;
        if let Domain::Circle { circumference } = self.domain {
            if side == Side::Below && r.is_zero()? {
                r = ExactScalar::from(circumference as i64);
            }
        }
        let i = self.locate_limit(&r, side)?;
        let f = &self.pieces[i].formula;
        let v = f.eval(&r);
        let out = match f.direction_at(&r)? {
            Direction::Increasing => Some(side),
            Direction::Decreasing => Some(side.flip()),
            Direction::Flat => None,
            Direction::Max => Some(Side::Below),
            Direction::Min => Some(Side::Above),
        };
        let v = match self.domain {
            Domain::Circle { circumference } => v.rem_int(circumference)?,
            Domain::UnitInterval => v,
        };
        Ok((v, out))
    }

    pub fn iterate(&self, x: &ExactScalar, n: usize) -> Result<ExactScalar> {
        let mut y = x.clone();
        for _ in 0..n {
            y = self.eval(&y)?;
        }
        Ok(y)
    }

    /// Sign of (gⁿ)' at x by the chain rule through the pieces visited.
    pub fn orbit_slope_sign(&self, x: &ExactScalar, n: usize) -> Result<i8> {
        let mut y = self.reduce(x)?;
        let mut sign = 1i8;
        for _ in 0..n {
            let i = self.locate(&y)?;
            sign *= match self.pieces[i].formula.direction_at(&y)? {
                Direction::Increasing => 1,
                Direction::Decreasing => -1,
                _ => 0,
            };
            y = self.eval(&y)?;
        }
        Ok(sign)
    }

    /// f(x) = f(1−x) on the rationals k/den, with c = 1/2 and f(c) = 1.
    pub fn check_symmetric(&self, den: i64) -> Result<()> {
        let c = self.critical_point()?;
        if c != &q(1, 2) {
            return Err(Error::NotSymmetric(format!(
                "critical point {c} is not 1/2"
            )));
        }
        if !self.eval(c)?.eq_val(&ExactScalar::one())? {
            return Err(Error::NotSymmetric("f(c) != 1".into()));
        }
        for k in 0..=den {
            let x = q(k, den);
            let y = &ExactScalar::one() - &x;
            if !self.eval(&x)?.eq_val(&self.eval(&y)?)? {
                return Err(Error::NotSymmetric(format!("f({x}) != f({y})")));
            }
        }
        Ok(())
    }
}

fn require_symmetric(f: &MapSpec) -> Result<()> {
    if f.domain != Domain::UnitInterval {
        return Err(Error::NotSymmetric("not an interval map".into()));
    }
    f.check_symmetric(24)
}

/// φ = f on [0, c] and 1 − f on (c, 1]; φ(c) = 1.
pub fn derive_increasing_lorenz(f: &MapSpec) -> Result<MapSpec> {
    require_symmetric(f)?;
    let c = f.critical_point()?.clone();
    let mut pieces = Vec::new();
    for p in &f.pieces {
        let right_half = p.span.lo.ge(&c)?;
        pieces.push(Piece {
            span: p.span.clone(),
            formula: if right_half {
                p.formula.reflected()
            } else {
                p.formula.clone()
            },
        });
    }
    Ok(MapSpec {
        family: Family::IncreasingLorenz,
        parameter: f.parameter.clone(),
        domain: Domain::UnitInterval,
        critical: Some(c),
        pieces,
        plateau: None,
    })
}

/// ψ = 1 − φ; ψ(c) = 0.
pub fn derive_decreasing_lorenz(f: &MapSpec) -> Result<MapSpec> {
    let phi = derive_increasing_lorenz(f)?;
    Ok(MapSpec {
        family: Family::DecreasingLorenz,
        pieces: phi
            .pieces
            .iter()
            .map(|p| Piece {
                span: p.span.clone(),
                formula: p.formula.reflected(),
            })
            .collect(),
        ..phi
    })
}

fn solve_affine(f: &Formula, target: &ExactScalar) -> Result<ExactScalar> {
    match f {
        Formula::Affine { slope, intercept } => Ok(&(target - intercept) / slope),
        _ => Err(Error::Unsupported(
            "plateau endpoints need affine branches".into(),
        )),
    }
}

/// a < c with φ(a) = φ(1) and b > c with φ(b) = a.
pub fn critical_data(phi: &MapSpec) -> Result<CriticalData> {
    if phi.family != Family::IncreasingLorenz {
        return Err(Error::Unsupported(
            "critical data needs an increasing Lorenz map".into(),
        ));
    }
    let c = phi.critical_point()?.clone();
    let left = &phi.pieces[phi.locate_limit(&c, Side::Below)?];
    let right = &phi.pieces[phi.locate_limit(&c, Side::Above)?];
    let phi1 = phi.eval(&ExactScalar::one())?;
    let a = solve_affine(&left.formula, &phi1)?;
    let b = solve_affine(&right.formula, &a)?;
    let plateau_degenerate = a.eq_val(&c)?;
    Ok(CriticalData {
        c,
        a,
        b,
        plateau_degenerate,
    })
}

/// φ̄: constant φ(1) on [0, a], φ elsewhere, as a circle map of circumference 1.
pub fn stunt(phi: &MapSpec) -> Result<(MapSpec, CriticalData)> {
    let crit = critical_data(phi)?;
    let c = &crit.c;
    let left = &phi.pieces[phi.locate_limit(c, Side::Below)?];
    let right = &phi.pieces[phi.locate_limit(c, Side::Above)?];
    let phi1 = phi.eval(&ExactScalar::one())?;
    let mut pieces = vec![Piece {
        span: Span::new(ExactScalar::zero(), crit.a.clone(), true, true),
        formula: Formula::Constant {
            value: phi1.clone(),
        },
    }];
    if !crit.plateau_degenerate {
        pieces.push(Piece {
            span: Span::new(crit.a.clone(), c.clone(), false, true),
            formula: left.formula.clone(),
        });
    }
    pieces.push(Piece {
        span: Span::new(c.clone(), ExactScalar::one(), false, false),
        formula: right.formula.clone(),
    });
    let spec = MapSpec {
        family: Family::Stunted,
        parameter: phi.parameter.clone(),
        domain: Domain::Circle { circumference: 1 },
        critical: Some(c.clone()),
        pieces,
        plateau: Some(Plateau {
            span: Span::new(ExactScalar::zero(), crit.a.clone(), true, true),
            value: phi1,
        }),
    };
    Ok((spec, crit))
}

/// Degree-one lift on the real line: one fundamental domain plus an integer shift per piece.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lift {
    pub base: MapSpec,
    pub period: u32,
    pub shifts: Vec<BigInt>,
}

fn round_to_int(x: &ExactScalar) -> Result<BigInt> {
    (x + &q(1, 2)).floor()
}

impl Lift {
    /// Lift of a circle map; the shifts make Φ continuous wherever the map is, and the
    /// total increase over one period must equal the circumference.
    pub fn of_circle_map(m: &MapSpec) -> Result<Lift> {
        let Domain::Circle { circumference } = m.domain else {
            return Err(Error::NotDegreeOne("not a circle map".into()));
        };
        let l = ExactScalar::from(circumference as i64);
        let mut shifts = vec![BigInt::zero()];
        for w in m.pieces.windows(2) {
            let prev = &w[0].formula.eval(&w[0].span.hi)
                + &(&l
                    * &ExactScalar::Rational(BigRational::from_integer(
                        shifts.last().unwrap().clone(),
                    )));
            let cur = w[1].formula.eval(&w[1].span.lo);
            shifts.push(round_to_int(&(&(&prev - &cur) / &l))?);
        }
        let lift = Lift {
            base: m.clone(),
            period: circumference,
            shifts,
        };
        let first = &m.pieces[0];
        let last = m.pieces.last().unwrap();
        let start = first.formula.eval(&first.span.lo);
        let end =
            &last.formula.eval(&last.span.hi) + &(&l * &lift.shift_scalar(m.pieces.len() - 1));
        let increase = &end - &start;
        if !increase.eq_val(&l)? {
            return Err(Error::NotDegreeOne(format!(
                "increase over one period is {increase}, expected {l}"
            )));
        }
        Ok(lift)
    }

    /// Φ = φ on [0, c], φ + 1 on (c, 1), extended by Φ(x + 1) = Φ(x) + 1.
    pub fn lorenz(phi: &MapSpec) -> Result<Lift> {
        if phi.family != Family::IncreasingLorenz {
            return Err(Error::Unsupported(
                "lorenz lift needs an increasing Lorenz map".into(),
            ));
        }
        let c = phi.critical_point()?;
        let shifts = phi
            .pieces
            .iter()
            .map(|p| {
                Ok(if p.span.lo.ge(c)? {
                    BigInt::one()
                } else {
                    BigInt::zero()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Lift {
            base: phi.clone(),
            period: 1,
            shifts,
        })
    }

    fn shift_scalar(&self, i: usize) -> ExactScalar {
        ExactScalar::Rational(BigRational::from_integer(self.shifts[i].clone()))
    }

    /// Φ on the fundamental domain: for r ∈ [0, L) returns (Φ(r) mod L, ⌊Φ(r)/L⌋).
    pub fn step(&self, r: &ExactScalar) -> Result<(ExactScalar, BigInt)> {
        let i = self.base.locate(r)?;
        let l = self.period;
        let raw = self.base.pieces[i].formula.eval(r);
        let lifted = &raw + &(&ExactScalar::from(l as i64) * &self.shift_scalar(i));
        let w = (&lifted / &ExactScalar::from(l as i64)).floor()?;
        let red = &lifted
            - &(&ExactScalar::from(l as i64)
                * &ExactScalar::Rational(BigRational::from_integer(w.clone())));
        Ok((red, w))
    }

    pub fn eval(&self, x: &ExactScalar) -> Result<ExactScalar> {
        let l = ExactScalar::from(self.period as i64);
        let n = (x / &l).floor()?;
        let nn = &l * &ExactScalar::Rational(BigRational::from_integer(n));
        let r = x - &nn;
        let (red, w) = self.step(&r)?;
        Ok(&(&red + &(&l * &ExactScalar::Rational(BigRational::from_integer(w)))) + &nn)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ExactScalar {
        x.parse().unwrap()
    }

    #[test]
    fn tent_values() {
        let f = tent_symmetric(s("2")).unwrap();
        assert_eq!(f.eval(&s("0.75")).unwrap(), s("0.5"));
        let t = tent_core(s("2")).unwrap();
        assert_eq!(t.eval(&s("0.3455")).unwrap(), s("0.691"));
    }

    #[test]
    fn golden_core_tent_period_three() {
        let t = tent_core(ExactScalar::golden()).unwrap();
        let c = t.critical.clone().unwrap();
        let c1 = t.eval(&c).unwrap();
        let c2 = t.eval(&c1).unwrap();
        let c3 = t.eval(&c2).unwrap();
        assert_eq!(c1, ExactScalar::one());
        assert_eq!(c2, ExactScalar::zero());
        assert_eq!(c3, c);
    }

    #[test]
    fn parameter_ranges() {
        assert!(matches!(
            tent_symmetric(s("1")),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            tent_core(s("2.5")),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            logistic(s("4.01")),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(logistic(s("4")).is_ok());
    }

    #[test]
    fn lorenz_maps() {
        let f = tent_symmetric(s("2")).unwrap();
        let phi = derive_increasing_lorenz(&f).unwrap();
        assert_eq!(phi.eval(&s("0.75")).unwrap(), s("0.5"));
        assert_eq!(phi.eval(&s("1/2")).unwrap(), s("1"));
        let psi = derive_decreasing_lorenz(&f).unwrap();
        assert_eq!(psi.eval(&s("0.25")).unwrap(), s("0.5"));
        assert_eq!(psi.eval(&s("0")).unwrap(), s("1"));
        assert_eq!(psi.eval(&s("1")).unwrap(), s("0"));
        assert_eq!(psi.eval(&s("1/2")).unwrap(), s("0"));
        let f16 = tent_symmetric(s("1.6")).unwrap();
        let phi16 = derive_increasing_lorenz(&f16).unwrap();
        assert_eq!(phi16.eval(&s("1")).unwrap(), s("0.8"));
    }

    #[test]
    fn logistic_is_symmetric() {
        let f = logistic(s("3.5")).unwrap();
        assert!(derive_increasing_lorenz(&f).is_ok());
        let t = tent_core(s("1.5")).unwrap();
        assert!(matches!(
            derive_increasing_lorenz(&t),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn stunted_examples() {
        let phi = derive_increasing_lorenz(&tent_symmetric(s("1.6")).unwrap()).unwrap();
        let (bar, crit) = stunt(&phi).unwrap();
        assert_eq!(crit.a, s("0.375"));
        assert_eq!(crit.b, s("0.734375"));
        assert!(!crit.plateau_degenerate);
        assert_eq!(bar.eval(&s("0.2")).unwrap(), s("0.8"));
        let phi2 = derive_increasing_lorenz(&tent_symmetric(s("2")).unwrap()).unwrap();
        let (_, crit2) = stunt(&phi2).unwrap();
        assert!(crit2.plateau_degenerate);
        assert_eq!(crit2.a, s("1/2"));
    }

    #[test]
    fn lorenz_lift_values() {
        let phi = derive_increasing_lorenz(&tent_symmetric(s("2")).unwrap()).unwrap();
        let lift = Lift::lorenz(&phi).unwrap();
        assert_eq!(lift.eval(&s("0.25")).unwrap(), s("0.5"));
        assert_eq!(lift.eval(&s("0.75")).unwrap(), s("1.5"));
        assert_eq!(lift.eval(&s("0.5")).unwrap(), s("1"));
        assert_eq!(
            &lift.eval(&s("1.3")).unwrap() - &lift.eval(&s("0.3")).unwrap(),
            ExactScalar::one()
        );
        // the doubling circle map has degree two
        let bar_phi = MapSpec {
            domain: Domain::Circle { circumference: 1 },
            ..phi
        };
        assert!(matches!(
            Lift::of_circle_map(&bar_phi),
            Err(Error::NotDegreeOne(_))
        ));
    }

    #[test]
    fn stunted_lift_is_degree_one() {
        let phi = derive_increasing_lorenz(&tent_symmetric(s("1.6")).unwrap()).unwrap();
        let (bar, _) = stunt(&phi).unwrap();
        let lift = Lift::of_circle_map(&bar).unwrap();
        for x in ["0.1", "0.4", "0.6", "0.99"] {
            let x = s(x);
            let d = &lift.eval(&(&x + &ExactScalar::one())).unwrap() - &lift.eval(&x).unwrap();
            assert_eq!(d, ExactScalar::one());
            assert_eq!(
                lift.eval(&x).unwrap().rem_int(1).unwrap(),
                bar.eval(&x).unwrap()
            );
        }
    }

    #[test]
    fn one_sided_at_critical_point() {
        let f = tent_symmetric(s("1.5")).unwrap();
        let c = s("1/2");
        assert_eq!(
            f.eval_side(&c, Some(Side::Below)).unwrap(),
            (s("1"), Some(Side::Below))
        );
        assert_eq!(
            f.eval_side(&c, Some(Side::Above)).unwrap(),
            (s("1"), Some(Side::Below))
        );
        let g = logistic(s("3")).unwrap();
        assert_eq!(
            g.eval_side(&c, Some(Side::Above)).unwrap().1,
            Some(Side::Below)
        );
    }

    #[test]
    fn json_round_trip() {
        let f = tent_core(ExactScalar::golden()).unwrap();
        let js = serde_json::to_string(&f).unwrap();
        let back: MapSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }
}
