//! Fixed-point interval iteration of a degree-one lift. Used by the counting oracle once
//! exact orbit points get too large to iterate cheaply.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::maps::{Formula, Lift};
use crate::scalar::ExactScalar;

/// The ball [(m − r)/2^p, (m + r)/2^p].
#[derive(Clone, Debug)]
pub(crate) struct Fx {
    pub m: BigInt,
    pub r: BigInt,
}

impl Fx {
    pub fn from_scalar(x: &ExactScalar, p: u32) -> Fx {
        let b = x.to_ball(p + 8);
        let scale = BigRational::from_integer(BigInt::one() << p as usize);
        let m = (&b.mid * &scale).floor().to_integer();
        let r = (&b.rad * &scale).ceil().to_integer() + 1;
        Fx { m, r }
    }

    fn cmp(&self, o: &Fx) -> Result<Ordering> {
        if &self.m + &self.r < &o.m - &o.r {
            Ok(Ordering::Less)
        } else if &self.m - &self.r > &o.m + &o.r {
            Ok(Ordering::Greater)
        } else {
            Err(Error::PrecisionExhausted)
        }
    }

    /// Rational bounds of the ball.
    pub fn bounds(&self, p: u32) -> (BigRational, BigRational) {
        let d = BigInt::one() << p as usize;
        (
            BigRational::new(&self.m - &self.r, d.clone()),
            BigRational::new(&self.m + &self.r, d),
        )
    }
}

enum Kind {
    /// Reduced value and winding, both exact.
    Const(ExactScalar, i64),
    Affine {
        s: Fx,
        t: Fx,
    },
}

struct FxPiece {
    hi: Fx,
    kind: Kind,
}

pub(crate) enum Next {
    Exact(ExactScalar, i64),
    Fixed(Fx, i64),
}

pub(crate) struct FixedLift {
    p: u32,
    period: BigInt,
    pieces: Vec<FxPiece>,
}

impl FixedLift {
    pub fn new(lift: &Lift, p: u32) -> Result<FixedLift> {
        let l = ExactScalar::from(lift.period as i64);
        let mut pieces = Vec::with_capacity(lift.base.pieces.len());
        for (piece, shift) in lift.base.pieces.iter().zip(&lift.shifts) {
            let shift = ExactScalar::Rational(BigRational::from_integer(shift.clone()));
            let kind = match &piece.formula {
                Formula::Constant { value } => {
                    let lifted = value + &(&l * &shift);
                    let w = (&lifted / &l).floor()?;
                    let red = &lifted
                        - &(&l * &ExactScalar::Rational(BigRational::from_integer(w.clone())));
                    Kind::Const(red, w.to_i64().ok_or(Error::PrecisionExhausted)?)
                }
                Formula::Affine { slope, intercept } => Kind::Affine {
                    s: Fx::from_scalar(slope, p),
                    t: Fx::from_scalar(&(intercept + &(&l * &shift)), p),
                },
                Formula::Quadratic { .. } => {
                    return Err(Error::Unsupported(
                        "fixed-point iteration needs affine pieces".into(),
                    ))
                }
            };
            pieces.push(FxPiece {
                hi: Fx::from_scalar(&piece.span.hi, p),
                kind,
            });
        }
        Ok(FixedLift {
            p,
            period: BigInt::from(lift.period) << p as usize,
            pieces,
        })
    }

    pub fn step(&self, x: &Fx) -> Result<Next> {
        let last = self.pieces.len() - 1;
        let mut idx = last;
        for (i, piece) in self.pieces.iter().enumerate().take(last) {
            if x.cmp(&piece.hi)? == Ordering::Less {
                idx = i;
                break;
            }
        }
        let (s, t) = match &self.pieces[idx].kind {
            Kind::Const(v, w) => return Ok(Next::Exact(v.clone(), *w)),
            Kind::Affine { s, t } => (s, t),
        };
        let scale = BigInt::one() << self.p as usize;
        let m: BigInt = (&s.m * &x.m).div_floor(&scale) + &t.m;
        let err = s.m.abs() * &x.r + x.m.abs() * &s.r + &s.r * &x.r;
        let r: BigInt = err.div_ceil(&scale) + 1 + &t.r;
        let lo = (&m - &r).div_floor(&self.period);
        let hi = (&m + &r).div_floor(&self.period);
        if lo != hi {
            return Err(Error::PrecisionExhausted);
        }
        let m = m - &lo * &self.period;
        Ok(Next::Fixed(
            Fx { m, r },
            lo.to_i64().ok_or(Error::PrecisionExhausted)?,
        ))
    }
}
