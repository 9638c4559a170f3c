//! The stunted circle map, the outside map, their conjugacy, the flattening projection,
//! and finite-depth accessibility certificates for backward orbits of the core tent.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{tent_core, Domain, Family, Formula, MapSpec, Piece, Plateau, Span};
use crate::scalar::ExactScalar;

fn check_lambda(lambda: &ExactScalar) -> Result<()> {
    let two = ExactScalar::from(2);
    let sq = lambda * lambda;
    if lambda.gt(&ExactScalar::zero())? && sq.gt(&two)? && lambda.le(&two)? {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            what: "slope in (sqrt2, 2]".into(),
            value: lambda.to_string(),
        })
    }
}

/// Left end of the plateau, (λ − 1)/λ.
pub fn plateau_end(lambda: &ExactScalar) -> ExactScalar {
    &(lambda - &ExactScalar::one()) / lambda
}

/// φ̄(x) = λ/2 on [0, a], λ(x − 1/2) mod 1 on (a, 1).
pub fn stunted_circle_map(lambda: &ExactScalar) -> Result<MapSpec> {
    check_lambda(lambda)?;
    let a = plateau_end(lambda);
    let half_l = lambda * &ExactScalar::ratio(1, 2);
    Ok(MapSpec {
        family: Family::StuntedCircle,
        parameter: lambda.clone(),
        domain: Domain::Circle { circumference: 1 },
        critical: Some(a.clone()),
        pieces: vec![
            Piece {
                span: Span::new(ExactScalar::zero(), a.clone(), true, true),
                formula: Formula::Constant {
                    value: half_l.clone(),
                },
            },
            Piece {
                span: Span::new(a.clone(), ExactScalar::one(), false, false),
                formula: Formula::Affine {
                    slope: lambda.clone(),
                    intercept: &ExactScalar::one() - &half_l,
                },
            },
        ],
        plateau: Some(Plateau {
            span: Span::new(ExactScalar::zero(), a, true, true),
            value: half_l,
        }),
    })
}

/// B(x) = λ(x − 1) + 2 mod 2 on [0, 2/λ), 2 − λ on [2/λ, 2).
pub fn outside_map(lambda: &ExactScalar) -> Result<MapSpec> {
    check_lambda(lambda)?;
    let two = ExactScalar::from(2);
    let brk = &two / lambda;
    let low = &two - lambda;
    Ok(MapSpec {
        family: Family::Outside,
        parameter: lambda.clone(),
        domain: Domain::Circle { circumference: 2 },
        critical: Some(brk.clone()),
        pieces: vec![
            Piece {
                span: Span::new(ExactScalar::zero(), brk.clone(), true, false),
                formula: Formula::Affine {
                    slope: lambda.clone(),
                    intercept: low.clone(),
                },
            },
            Piece {
                span: Span::new(brk.clone(), two.clone(), true, false),
                formula: Formula::Constant { value: low.clone() },
            },
        ],
        plateau: Some(Plateau {
            span: Span::new(brk, two, true, false),
            value: low,
        }),
    })
}

/// G(x) = 2(1 − x) mod 2.
pub fn g_conj(x: &ExactScalar) -> Result<ExactScalar> {
    (&ExactScalar::from(2) * &(&ExactScalar::one() - x)).rem_int(2)
}

/// p(t) = min(2t, 2 − 2t) on [0, 1).
pub fn flatten(y: &ExactScalar) -> Result<ExactScalar> {
    let t = y.rem_int(1)?;
    let two = ExactScalar::from(2);
    (&two * &t).min(&(&two - &(&two * &t)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityVerdict {
    pub pass: bool,
    pub checked: usize,
    /// Samples skipped because the identity is not claimed there.
    pub skipped: usize,
    pub mismatches: Vec<ExactScalar>,
}

/// G∘φ̄ = B∘G at each sample.
pub fn check_conjugacy(lambda: &ExactScalar, samples: &[ExactScalar]) -> Result<IdentityVerdict> {
    let bar = stunted_circle_map(lambda)?;
    let b = outside_map(lambda)?;
    let mut mismatches = Vec::new();
    for x in samples {
        let left = g_conj(&bar.eval(x)?)?;
        let right = b.eval(&g_conj(x)?)?;
        if !left.eq_val(&right)? {
            mismatches.push(x.clone());
        }
    }
    Ok(IdentityVerdict {
        pass: mismatches.is_empty(),
        checked: samples.len(),
        skipped: 0,
        mismatches,
    })
}

fn in_open_plateau(y: &ExactScalar, a: &ExactScalar) -> Result<bool> {
    Ok(y.gt(&ExactScalar::zero())? && y.lt(a)?)
}

/// p∘φ̄ = T_λ∘p at each sample off the open plateau arc.
pub fn check_flatten(lambda: &ExactScalar, samples: &[ExactScalar]) -> Result<IdentityVerdict> {
    let bar = stunted_circle_map(lambda)?;
    let t = tent_core(lambda.clone())?;
    let a = plateau_end(lambda);
    let (mut checked, mut skipped, mut mismatches) = (0, 0, Vec::new());
    for y in samples {
        let y = y.rem_int(1)?;
        if in_open_plateau(&y, &a)? {
            skipped += 1;
            continue;
        }
        checked += 1;
        if !flatten(&bar.eval(&y)?)?.eq_val(&t.eval(&flatten(&y)?)?)? {
            mismatches.push(y);
        }
    }
    Ok(IdentityVerdict {
        pass: mismatches.is_empty(),
        checked,
        skipped,
        mismatches,
    })
}

/// A finite backward orbit x_0, x_1, … of the core tent: T_λ(x_{i+1}) = x_i.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BackwardOrbit {
    pub lambda: ExactScalar,
    pub points: Vec<ExactScalar>,
}

impl BackwardOrbit {
    pub fn new(lambda: ExactScalar, points: Vec<ExactScalar>) -> Result<BackwardOrbit> {
        check_lambda(&lambda)?;
        if points.is_empty() {
            return Err(Error::Parse("empty orbit".into()));
        }
        let t = tent_core(lambda.clone())?;
        for (i, x) in points.iter().enumerate() {
            if x.lt(&ExactScalar::zero())? || x.gt(&ExactScalar::one())? {
                return Err(Error::OutOfDomain(x.to_string()));
            }
            if i + 1 < points.len() && !t.eval(&points[i + 1])?.eq_val(x)? {
                return Err(Error::Parse(format!(
                    "T({}) != {x} at index {}",
                    points[i + 1],
                    i + 1
                )));
            }
        }
        Ok(BackwardOrbit { lambda, points })
    }

    /// Index of the last point.
    pub fn depth(&self) -> usize {
        self.points.len() - 1
    }

    /// Every exact backward orbit of length `depth + 1` starting at x0 whose points lie in `within`.
    pub fn all_within(
        lambda: &ExactScalar,
        x0: &ExactScalar,
        within: &[ExactScalar],
        depth: usize,
    ) -> Result<Vec<BackwardOrbit>> {
        let t = tent_core(lambda.clone())?;
        let mut out = Vec::new();
        let mut stack = vec![vec![x0.clone()]];
        while let Some(path) = stack.pop() {
            if path.len() == depth + 1 {
                out.push(BackwardOrbit {
                    lambda: lambda.clone(),
                    points: path,
                });
                continue;
            }
            let last = path.last().unwrap();
            for w in within {
                if t.eval(w)?.eq_val(last)? {
                    let mut next = path.clone();
                    next.push(w.clone());
                    stack.push(next);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftStatus {
    CertifiedLift,
    NoLift,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftCertificate {
    pub status: LiftStatus,
    /// y_0..y_M when certified.
    pub lift: Vec<ExactScalar>,
    #[serde(rename = "N")]
    pub grace: usize,
    #[serde(rename = "M")]
    pub depth: usize,
    pub nodes: usize,
}

pub const NODE_BUDGET: usize = 1 << 20;

fn flatten_preimages(x: &ExactScalar) -> Result<Vec<ExactScalar>> {
    let half = ExactScalar::ratio(1, 2);
    let a = (x * &half).rem_int(1)?;
    let b = (&ExactScalar::one() - &(x * &half)).rem_int(1)?;
    Ok(if a.eq_val(&b)? { vec![a] } else { vec![a, b] })
}

struct Search<'a> {
    bar: MapSpec,
    a: ExactScalar,
    orbit: &'a [ExactScalar],
    grace: usize,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    fn allowed(&self, i: usize, y: &ExactScalar) -> Result<bool> {
        Ok(i <= self.grace || !in_open_plateau(y, &self.a)?)
    }

    fn extend(&mut self, path: &mut Vec<ExactScalar>) -> Result<bool> {
        let i = path.len();
        if i == self.orbit.len() {
            return Ok(true);
        }
        for y in flatten_preimages(&self.orbit[i])? {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::DepthExceeded(format!(
                    "node budget {} exhausted",
                    self.budget
                )));
            }
            if !self.allowed(i, &y)? {
                continue;
            }
            if let Some(prev) = path.last() {
                if !self.bar.eval(&y)?.eq_val(prev)? {
                    continue;
                }
            }
            path.push(y);
            if self.extend(path)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
}

pub fn accessibility_certificate(orbit: &BackwardOrbit, grace: usize) -> Result<LiftCertificate> {
    accessibility_certificate_with_budget(orbit, grace, NODE_BUDGET)
}

/// Search for y_0..y_M with p(y_i) = x_i, φ̄(y_{i+1}) = y_i, and y_i off the open
/// plateau arc for i > N.
pub fn accessibility_certificate_with_budget(
    orbit: &BackwardOrbit,
    grace: usize,
    budget: usize,
) -> Result<LiftCertificate> {
    let depth = orbit.depth();
    if grace > depth {
        return Err(Error::ParameterOutOfRange {
            what: "grace index".into(),
            value: grace.to_string(),
        });
    }
    let mut search = Search {
        bar: stunted_circle_map(&orbit.lambda)?,
        a: plateau_end(&orbit.lambda),
        orbit: &orbit.points,
        grace,
        nodes: 0,
        budget,
    };
    let mut path = Vec::with_capacity(orbit.points.len());
    let (status, lift) = match search.extend(&mut path) {
        Ok(true) => (LiftStatus::CertifiedLift, path),
        Ok(false) => (LiftStatus::NoLift, Vec::new()),
        Err(Error::PrecisionExhausted) => (LiftStatus::Inconclusive, Vec::new()),
        Err(e) => return Err(e),
    };
    Ok(LiftCertificate {
        status,
        lift,
        grace,
        depth,
        nodes: search.nodes,
    })
}

/// Forward re-check of a certified lift.
pub fn verify_certificate(orbit: &BackwardOrbit, cert: &LiftCertificate) -> Result<bool> {
    if cert.status != LiftStatus::CertifiedLift || cert.lift.len() != orbit.points.len() {
        return Ok(false);
    }
    let bar = stunted_circle_map(&orbit.lambda)?;
    let a = plateau_end(&orbit.lambda);
    for (i, (y, x)) in cert.lift.iter().zip(&orbit.points).enumerate() {
        if !flatten(y)?.eq_val(x)? || (i > cert.grace && in_open_plateau(y, &a)?) {
            return Ok(false);
        }
        if i > 0 && !bar.eval(y)?.eq_val(&cert.lift[i - 1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least grace index in 0..=max_grace giving a certified lift, with that certificate.
pub fn least_grace(orbit: &BackwardOrbit, max_grace: usize) -> Result<LiftCertificate> {
    let mut last = None;
    for n in 0..=max_grace.min(orbit.depth()) {
        let cert = accessibility_certificate(orbit, n)?;
        if cert.status == LiftStatus::CertifiedLift {
            return Ok(cert);
        }
        last = Some(cert);
    }
    last.ok_or_else(|| Error::ParameterOutOfRange {
        what: "grace bound".into(),
        value: max_grace.to_string(),
    })
}

/// Every x_i within eps of some point of `omega`.
pub fn folding_depth_check(
    orbit: &BackwardOrbit,
    omega: &[ExactScalar],
    eps: &ExactScalar,
) -> Result<bool> {
    for x in &orbit.points {
        let mut near = false;
        for w in omega {
            if (x - w).abs()?.le(eps)? {
                near = true;
                break;
            }
        }
        if !near {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The critical orbit of T_λ when it is eventually periodic within `max_iter` steps:
/// returns the cycle it falls into, which is then the whole of ω(c).
pub fn exact_critical_omega(
    lambda: &ExactScalar,
    max_iter: usize,
) -> Result<Option<Vec<ExactScalar>>> {
    let t = tent_core(lambda.clone())?;
    let mut x = t.critical_point()?.clone();
    let mut seen: Vec<ExactScalar> = vec![x.clone()];
    let mut index = HashSet::new();
    index.insert(x.clone());
    for _ in 0..max_iter {
        x = t.eval(&x)?;
        if index.contains(&x) {
            let start = seen.iter().position(|y| y == &x).unwrap();
            return Ok(Some(seen[start..].to_vec()));
        }
        index.insert(x.clone());
        seen.push(x.clone());
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ExactScalar {
        x.parse().unwrap()
    }

    #[test]
    fn stunted_values() {
        let m = stunted_circle_map(&s("1.6")).unwrap();
        assert_eq!(m.eval(&s("0.2")).unwrap(), s("0.8"));
        assert_eq!(m.eval(&s("0.7")).unwrap(), s("0.32"));
        assert_eq!(m.eval(&s("0.375")).unwrap(), s("0.8"));
        assert_eq!(
            m.pieces[1].formula.eval(&s("0.375")).rem_int(1).unwrap(),
            s("0.8")
        );
        let m2 = stunted_circle_map(&s("2")).unwrap();
        assert_eq!(m2.eval(&s("0.75")).unwrap(), s("0.5"));
        assert!(stunted_circle_map(&s("1.4")).is_err());
    }

    #[test]
    fn outside_values() {
        let b = outside_map(&s("2")).unwrap();
        assert_eq!(b.eval(&s("0.4")).unwrap(), s("0.8"));
        assert_eq!(b.eval(&s("1.5")).unwrap(), s("0"));
        let b = outside_map(&s("1.6")).unwrap();
        assert_eq!(b.eval(&s("1.25")).unwrap(), s("0.4"));
        assert_eq!(b.eval(&s("0")).unwrap(), s("0.4"));
    }

    #[test]
    fn identities() {
        let samples: Vec<_> = (0..100).map(|k| ExactScalar::ratio(k, 100)).collect();
        for l in ["1.6", "2", "1.45"] {
            assert!(check_conjugacy(&s(l), &samples).unwrap().pass);
            let v = check_flatten(&s(l), &samples).unwrap();
            assert!(v.pass, "{l}: {:?}", v.mismatches);
            assert!(v.skipped > 0 || l == "2");
        }
        assert_eq!(flatten(&s("0")).unwrap(), s("0"));
        assert_eq!(flatten(&s("1/2")).unwrap(), s("1"));
    }

    #[test]
    fn certificates() {
        let zero = BackwardOrbit::new(s("2"), vec![s("0"); 7]).unwrap();
        let c = accessibility_certificate(&zero, 0).unwrap();
        assert_eq!(c.status, LiftStatus::CertifiedLift);
        assert!(verify_certificate(&zero, &c).unwrap());
        let third = BackwardOrbit::new(s("2"), vec![s("2/3"); 4]).unwrap();
        assert_eq!(
            accessibility_certificate(&third, 0).unwrap().status,
            LiftStatus::NoLift
        );
        let single = BackwardOrbit::new(s("2"), vec![s("2/3")]).unwrap();
        assert_eq!(
            accessibility_certificate(&single, 0).unwrap().status,
            LiftStatus::CertifiedLift
        );
        assert!(BackwardOrbit::new(s("2"), vec![s("0"), s("1/3")]).is_err());
    }

    #[test]
    fn golden_folding_points() {
        let l = ExactScalar::golden();
        let omega = exact_critical_omega(&l, 20).unwrap().unwrap();
        assert_eq!(omega.len(), 3);
        for x0 in &omega {
            let orbits = BackwardOrbit::all_within(&l, x0, &omega, 12).unwrap();
            assert_eq!(orbits.len(), 1);
            let o = &orbits[0];
            assert!(folding_depth_check(o, &omega, &ExactScalar::zero()).unwrap());
            let cert = least_grace(o, 3).unwrap();
            assert_eq!(cert.status, LiftStatus::CertifiedLift);
            assert!(verify_certificate(o, &cert).unwrap());
        }
        let off = BackwardOrbit::new(l, vec![s("0.6")]).unwrap();
        assert!(!folding_depth_check(&off, &omega, &ExactScalar::zero()).unwrap());
    }
}
