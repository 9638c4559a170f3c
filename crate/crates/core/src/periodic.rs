//! Sharkovsky order, exact periodic-orbit enumeration for piecewise-affine maps, and
//! forcing witnesses.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{Domain, Family, MapSpec, Span};
use crate::scalar::ExactScalar;
use crate::symbolic::{is_admissible, ones, parity_lex_compare, Admissibility, PlOrder, SymbolSeq};

/// Default cap on the number of laps of gᵐ.
pub const LAP_BUDGET: usize = 1 << 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SharkovskyOrd {
    Precedes,
    Equal,
    Succeeds,
}

fn sharkovsky_key(m: u64) -> (u8, Reverse<u32>, Reverse<u64>) {
    let k = m.trailing_zeros();
    let odd = m >> k;
    if odd == 1 {
        (0, Reverse(u32::MAX - k), Reverse(0))
    } else {
        (1, Reverse(k), Reverse(odd))
    }
}

/// Position of m relative to n in 1 ≺ 2 ≺ 4 ≺ … ≺ 2·5 ≺ 2·3 ≺ … ≺ 7 ≺ 5 ≺ 3.
pub fn sharkovsky_compare(m: u64, n: u64) -> SharkovskyOrd {
    assert!(m >= 1 && n >= 1, "periods start at 1");
    match sharkovsky_key(m).cmp(&sharkovsky_key(n)) {
        Ordering::Less => SharkovskyOrd::Precedes,
        Ordering::Equal => SharkovskyOrd::Equal,
        Ordering::Greater => SharkovskyOrd::Succeeds,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicPoint {
    pub x: ExactScalar,
    /// Sign of (gᵐ)' on the lap holding x; 0 on a constant lap.
    pub orientation: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub map: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub periods: BTreeMap<usize, Vec<PeriodicPoint>>,
}

impl PeriodReport {
    pub fn period_set(&self) -> BTreeSet<usize> {
        self.periods
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&m, _)| m)
            .collect()
    }

    pub fn has(&self, m: usize) -> bool {
        self.periods.get(&m).is_some_and(|v| !v.is_empty())
    }

    /// A bare report for a given period set, for tests and what-if checks.
    pub fn from_periods(map: &str, n: usize, periods: &[usize]) -> PeriodReport {
        let periods = periods
            .iter()
            .map(|&m| {
                (
                    m,
                    vec![PeriodicPoint {
                        x: ExactScalar::zero(),
                        orientation: 0,
                    }],
                )
            })
            .collect();
        PeriodReport {
            map: map.to_string(),
            n,
            periods,
        }
    }
}

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::TentSymmetric => "tent",
        Family::TentCore => "tent-core",
        Family::Logistic => "logistic",
        Family::IncreasingLorenz => "phi",
        Family::DecreasingLorenz => "psi",
        Family::Stunted => "stunted",
        Family::StuntedCircle => "stunted-circle",
        Family::Outside => "outside",
    }
}

pub fn map_id(g: &MapSpec) -> String {
    format!("{}({})", family_name(g.family), g.parameter)
}

/// One branch of gᵐ: x ↦ s·x + t on `span`.
#[derive(Clone, Debug)]
struct Lap {
    span: Span,
    s: ExactScalar,
    t: ExactScalar,
}

fn lower(a: (&ExactScalar, bool), b: (&ExactScalar, bool)) -> Result<(ExactScalar, bool)> {
    Ok(match a.0.cmp_to(b.0)? {
        Ordering::Greater => (a.0.clone(), a.1),
        Ordering::Less => (b.0.clone(), b.1),
        Ordering::Equal => (a.0.clone(), a.1 && b.1),
    })
}

fn upper(a: (&ExactScalar, bool), b: (&ExactScalar, bool)) -> Result<(ExactScalar, bool)> {
    Ok(match a.0.cmp_to(b.0)? {
        Ordering::Less => (a.0.clone(), a.1),
        Ordering::Greater => (b.0.clone(), b.1),
        Ordering::Equal => (a.0.clone(), a.1 && b.1),
    })
}

fn intersect(a: &Span, b: &Span) -> Result<Option<Span>> {
    let (lo, lc) = lower((&a.lo, a.lo_closed), (&b.lo, b.lo_closed))?;
    let (hi, hc) = upper((&a.hi, a.hi_closed), (&b.hi, b.hi_closed))?;
    let sp = Span::new(lo, hi, lc, hc);
    Ok(if sp.is_empty()? { None } else { Some(sp) })
}

fn image(sp: &Span, s: &ExactScalar, t: &ExactScalar) -> Result<Span> {
    let lo = &(s * &sp.lo) + t;
    let hi = &(s * &sp.hi) + t;
    Ok(if s.sign()? == Ordering::Less {
        Span::new(hi, lo, sp.hi_closed, sp.lo_closed)
    } else {
        Span::new(lo, hi, sp.lo_closed, sp.hi_closed)
    })
}

fn preimage(target: &Span, s: &ExactScalar, t: &ExactScalar) -> Result<Span> {
    let lo = &(&target.lo - t) / s;
    let hi = &(&target.hi - t) / s;
    Ok(if s.sign()? == Ordering::Less {
        Span::new(hi, lo, target.hi_closed, target.lo_closed)
    } else {
        Span::new(lo, hi, target.lo_closed, target.hi_closed)
    })
}

fn domain_span(g: &MapSpec) -> Span {
    match g.domain {
        Domain::UnitInterval => Span::new(ExactScalar::zero(), ExactScalar::one(), true, true),
        Domain::Circle { circumference } => Span::new(
            ExactScalar::zero(),
            ExactScalar::from(circumference as i64),
            true,
            false,
        ),
    }
}

/// Cut a lap so that each part has values in one fundamental domain, then shift down.
fn reduce_mod(lap: Lap, l: u32, out: &mut Vec<Lap>) -> Result<()> {
    let big_l = ExactScalar::from(l as i64);
    if lap.s.is_zero()? {
        out.push(Lap {
            t: lap.t.rem_int(l)?,
            ..lap
        });
        return Ok(());
    }
    let img = image(&lap.span, &lap.s, &lap.t)?;
    let k_lo = (&img.lo / &big_l).floor()?;
    let k_hi = (&img.hi / &big_l).floor()?;
    let mut k = k_lo;
    while k <= k_hi {
        let base = &ExactScalar::from(num_rational::BigRational::from_integer(k.clone())) * &big_l;
        let band = Span::new(base.clone(), &base + &big_l, true, false);
        if let Some(tg) = intersect(&img, &band)? {
            let span = preimage(&tg, &lap.s, &lap.t)?;
            out.push(Lap {
                span,
                s: lap.s.clone(),
                t: &lap.t - &base,
            });
        }
        k += 1;
    }
    Ok(())
}

fn compose(g: &MapSpec, laps: &[Lap]) -> Result<Vec<Lap>> {
    let mut out = Vec::with_capacity(laps.len() * 2);
    for lap in laps {
        for piece in &g.pieces {
            let (sp, tp) = piece.formula.affine_parts().ok_or_else(|| {
                Error::Unsupported("lap solving needs piecewise-affine maps".into())
            })?;
            let sub = if lap.s.is_zero()? {
                if piece.span.contains(&lap.t)? {
                    Some(lap.span.clone())
                } else {
                    None
                }
            } else {
                let img = image(&lap.span, &lap.s, &lap.t)?;
                match intersect(&img, &piece.span)? {
                    Some(tg) => intersect(&preimage(&tg, &lap.s, &lap.t)?, &lap.span)?,
                    None => None,
                }
            };
            let Some(span) = sub else { continue };
            let next = Lap {
                span,
                s: &sp * &lap.s,
                t: &(&sp * &lap.t) + &tp,
            };
            match g.domain {
                Domain::Circle { circumference } => reduce_mod(next, circumference, &mut out)?,
                Domain::UnitInterval => out.push(next),
            }
        }
    }
    Ok(out)
}

fn prime_period(g: &MapSpec, x: &ExactScalar, m: usize) -> Result<usize> {
    for d in 1..m {
        if m.is_multiple_of(d) && g.iterate(x, d)?.eq_val(x)? {
            return Ok(d);
        }
    }
    Ok(m)
}

pub fn enumerate_periods(g: &MapSpec, n: usize) -> Result<PeriodReport> {
    enumerate_periods_with_budget(g, n, LAP_BUDGET)
}

/// Prime-period points of g up to period `n`, found by solving gᵐ(x) = x on every lap.
pub fn enumerate_periods_with_budget(g: &MapSpec, n: usize, budget: usize) -> Result<PeriodReport> {
    let mut laps = vec![Lap {
        span: domain_span(g),
        s: ExactScalar::one(),
        t: ExactScalar::zero(),
    }];
    let mut periods = BTreeMap::new();
    let one = ExactScalar::one();
    for m in 1..=n {
        laps = compose(g, &laps)?;
        if laps.len() > budget {
            return Err(Error::LapBudgetExceeded(laps.len()));
        }
        let mut seen = HashSet::new();
        let mut found = Vec::new();
        for lap in &laps {
            let denom = &one - &lap.s;
            if denom.is_zero()? {
                if lap.t.is_zero()? {
                    return Err(Error::Unsupported(format!(
                        "g^{m} is the identity on a lap"
                    )));
                }
                continue;
            }
            let x = &lap.t / &denom;
            if !lap.span.contains(&x)? || !seen.insert(x.clone()) {
                continue;
            }
            if prime_period(g, &x, m)? == m {
                let orientation = match lap.s.sign()? {
                    Ordering::Less => -1,
                    Ordering::Equal => 0,
                    Ordering::Greater => 1,
                };
                found.push(PeriodicPoint { x, orientation });
            }
        }
        if !found.is_empty() {
            found.sort_by(|a, b| a.x.cmp_to(&b.x).unwrap_or(Ordering::Equal));
            periods.insert(m, found);
        }
    }
    Ok(PeriodReport {
        map: map_id(g),
        n,
        periods,
    })
}

/// Primitive words of length m: a symbolic count of prime-m points of the full shift
/// restricted to words admissible for ν.
pub fn count_admissible_periodic_words(nu: &SymbolSeq, m: usize, depth: usize) -> usize {
    assert!(m <= 24, "word enumeration is exponential");
    (0u32..1 << m)
        .filter(|&bits| {
            let w = bits_to_word(bits, m);
            let e = SymbolSeq::periodic(vec![], w);
            e.period.len() == m && is_admissible(&e, nu, depth) != Admissibility::No
        })
        .count()
}

fn bits_to_word(bits: u32, m: usize) -> Vec<u8> {
    (0..m).map(|i| ((bits >> (m - 1 - i)) & 1) as u8).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Unimodal,
    IncreasingLorenz,
    DecreasingLorenz,
}

impl Mode {
    pub fn excused(self, m: usize) -> bool {
        match self {
            Mode::Unimodal => false,
            Mode::IncreasingLorenz => m == 1,
            Mode::DecreasingLorenz => m >= 2 && m.is_power_of_two(),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Unimodal => "unimodal",
            Mode::IncreasingLorenz => "increasing-lorenz",
            Mode::DecreasingLorenz => "decreasing-lorenz",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "unimodal" | "f" => Ok(Mode::Unimodal),
            "increasing-lorenz" | "phi" => Ok(Mode::IncreasingLorenz),
            "decreasing-lorenz" | "psi" => Ok(Mode::DecreasingLorenz),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// A period that is present.
    pub present: usize,
    /// A period before it in the order, within depth, that is missing.
    pub missing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureVerdict {
    pub mode: Mode,
    pub pass: bool,
    pub violations: Vec<Violation>,
    /// Missing periods excused by the mode.
    pub exceptions: Vec<usize>,
}

/// Every period ≤ N that precedes a present period must be present, up to the mode's
/// exception set.
pub fn verify_sharkovsky_closure(report: &PeriodReport, mode: Mode) -> ClosureVerdict {
    let present = report.period_set();
    let mut violations = Vec::new();
    let mut exceptions = BTreeSet::new();
    for &n in &present {
        for m in 1..=report.n {
            if present.contains(&m)
                || sharkovsky_compare(m as u64, n as u64) != SharkovskyOrd::Precedes
            {
                continue;
            }
            if mode.excused(m) {
                exceptions.insert(m);
            } else {
                violations.push(Violation {
                    present: n,
                    missing: m,
                });
            }
        }
    }
    ClosureVerdict {
        mode,
        pass: violations.is_empty(),
        violations,
        exceptions: exceptions.into_iter().collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum PeriodType {
    NoPeriods,
    /// Only powers of two up to 2^r, and 2^{r+1} is within depth but absent.
    TwoPow {
        r: u32,
    },
    /// Only powers of two seen, and depth does not rule out more.
    TwoInfinityCompatible {
        max_r: u32,
    },
    Beyond,
}

pub fn classify_type(report: &PeriodReport) -> PeriodType {
    let set = report.period_set();
    let Some(&max) = set.iter().max() else {
        return PeriodType::NoPeriods;
    };
    if set.iter().any(|m| !m.is_power_of_two()) {
        return PeriodType::Beyond;
    }
    let r = max.trailing_zeros();
    if (2usize << r) <= report.n {
        PeriodType::TwoPow { r }
    } else {
        PeriodType::TwoInfinityCompatible { max_r: r }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessCase {
    PrimeMIncreasing,
    PrimeHalfDecreasing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForcingWitness {
    pub m: usize,
    pub e: SymbolSeq,
    pub e_prime: SymbolSeq,
    pub case: WitnessCase,
    /// Prime period of e′.
    pub e_prime_period: usize,
}

/// Orientation of gᵖ at a point with periodic itinerary `block`: −1 for an odd count of 1s.
pub fn block_orientation(block: &[u8]) -> i8 {
    if ones(block) % 2 == 1 {
        -1
    } else {
        1
    }
}

/// e is the parity-lex largest admissible word of prime period m; e′ flips its m-th symbol.
pub fn forcing_witnesses(nu: &SymbolSeq, m: usize) -> Result<ForcingWitness> {
    if m < 2 {
        return Err(Error::NoAdmissibleWitness(format!(
            "m = {m}: the flipped companion of the fixed-point word leaves the core"
        )));
    }
    if m > 24 {
        return Err(Error::Unsupported(
            "witness search is exponential in m".into(),
        ));
    }
    let depth = 4 * m + nu.preperiod() + 2 * nu.period.len() + nu.len().unwrap_or(0);
    let mut best: Option<SymbolSeq> = None;
    for bits in 0u32..1 << m {
        let e = SymbolSeq::periodic(vec![], bits_to_word(bits, m));
        if e.period.len() != m || is_admissible(&e, nu, depth) == Admissibility::No {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => parity_lex_compare(&e, b, depth) == PlOrder::Greater,
        };
        if better {
            best = Some(e);
        }
    }
    let e = best.ok_or_else(|| {
        Error::NoAdmissibleWitness(format!("no admissible word of prime period {m}"))
    })?;
    let mut flipped = e.period.clone();
    flipped[m - 1] ^= 1;
    let e_prime = SymbolSeq::periodic(vec![], flipped);
    if is_admissible(&e_prime, nu, depth) == Admissibility::No {
        return Err(Error::NoAdmissibleWitness(format!(
            "{e_prime} is not admissible"
        )));
    }
    let p = e_prime.period.len();
    let orient = block_orientation(&e_prime.period);
    let case = if p == m && orient == 1 {
        WitnessCase::PrimeMIncreasing
    } else if 2 * p == m && orient == -1 {
        WitnessCase::PrimeHalfDecreasing
    } else {
        return Err(Error::NoAdmissibleWitness(format!(
            "companion {e_prime} has prime period {p} and orientation {orient}"
        )));
    };
    Ok(ForcingWitness {
        m,
        e,
        e_prime,
        case,
        e_prime_period: p,
    })
}

/// Sweep CSV: one row per (λ, mode, m).
pub fn sweep_csv_rows(lambda: &ExactScalar, mode: Mode, report: &PeriodReport) -> Vec<[String; 4]> {
    (1..=report.n)
        .map(|m| {
            [
                lambda.to_string(),
                mode.to_string(),
                m.to_string(),
                report.has(m).to_string(),
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{derive_decreasing_lorenz, derive_increasing_lorenz, tent_symmetric};

    fn s(x: &str) -> ExactScalar {
        x.parse().unwrap()
    }

    fn primitive(m: usize) -> usize {
        // number of primitive binary words of length m
        let mut total = 1usize << m;
        for d in 1..m {
            if m.is_multiple_of(d) {
                total -= primitive(d);
            }
        }
        total
    }

    #[test]
    fn order_examples() {
        assert_eq!(sharkovsky_compare(5, 3), SharkovskyOrd::Precedes);
        assert_eq!(sharkovsky_compare(1, 2), SharkovskyOrd::Precedes);
        assert_eq!(sharkovsky_compare(14, 10), SharkovskyOrd::Precedes);
        assert_eq!(sharkovsky_compare(64, 7), SharkovskyOrd::Precedes);
        assert_eq!(sharkovsky_compare(6, 3), SharkovskyOrd::Precedes);
        assert_eq!(sharkovsky_compare(12, 12), SharkovskyOrd::Equal);
        assert_eq!(sharkovsky_compare(3, 1), SharkovskyOrd::Succeeds);
    }

    #[test]
    fn full_tent_counts() {
        let f = tent_symmetric(s("2")).unwrap();
        let rep = enumerate_periods(&f, 6).unwrap();
        assert_eq!(rep.period_set(), (1..=6).collect());
        for m in 1..=6 {
            assert_eq!(rep.periods[&m].len(), primitive(m));
        }
    }

    #[test]
    fn phi_and_psi_at_nine_fifths() {
        let f = tent_symmetric(s("1.8")).unwrap();
        let phi = derive_increasing_lorenz(&f).unwrap();
        let rep = enumerate_periods(&phi, 6).unwrap();
        assert_eq!(rep.period_set(), (2..=6).collect());
        assert!(verify_sharkovsky_closure(&rep, Mode::IncreasingLorenz).pass);
        let psi = derive_decreasing_lorenz(&f).unwrap();
        let rep = enumerate_periods(&psi, 4).unwrap();
        assert_eq!(rep.period_set(), [1, 3, 4].into_iter().collect());
        let v = verify_sharkovsky_closure(&rep, Mode::DecreasingLorenz);
        assert!(v.pass);
        assert_eq!(v.exceptions, vec![2]);
        assert!(!verify_sharkovsky_closure(&rep, Mode::Unimodal).pass);
    }

    #[test]
    fn closure_failure() {
        let rep = PeriodReport::from_periods("x", 6, &[3]);
        for mode in [
            Mode::Unimodal,
            Mode::IncreasingLorenz,
            Mode::DecreasingLorenz,
        ] {
            let v = verify_sharkovsky_closure(&rep, mode);
            assert!(!v.pass);
            assert!(v.violations.iter().any(|w| w.missing == 5));
        }
    }

    #[test]
    fn types() {
        assert_eq!(
            classify_type(&PeriodReport::from_periods("x", 6, &[1, 2, 4])),
            PeriodType::TwoInfinityCompatible { max_r: 2 }
        );
        assert_eq!(
            classify_type(&PeriodReport::from_periods("x", 9, &[1, 2, 4])),
            PeriodType::TwoPow { r: 2 }
        );
        assert_eq!(
            classify_type(&PeriodReport::from_periods("x", 6, &[1, 2, 3, 4, 5, 6])),
            PeriodType::Beyond
        );
        assert_eq!(
            classify_type(&PeriodReport::from_periods("x", 8, &[1, 2, 4, 8])),
            PeriodType::TwoInfinityCompatible { max_r: 3 }
        );
    }

    #[test]
    fn witnesses_full_shift() {
        let nu: SymbolSeq = "1(0)".parse().unwrap();
        let w3 = forcing_witnesses(&nu, 3).unwrap();
        assert_eq!(w3.e.to_string(), "(100)");
        assert_eq!(w3.e_prime.to_string(), "(101)");
        assert_eq!(w3.case, WitnessCase::PrimeMIncreasing);
        let w2 = forcing_witnesses(&nu, 2).unwrap();
        assert_eq!(w2.e.to_string(), "(10)");
        assert_eq!(w2.e_prime.to_string(), "(1)");
        assert_eq!(w2.case, WitnessCase::PrimeHalfDecreasing);
        assert!(matches!(
            forcing_witnesses(&nu, 1),
            Err(Error::NoAdmissibleWitness(_))
        ));
    }

    #[test]
    fn report_json() {
        let f = tent_symmetric(s("2")).unwrap();
        let rep = enumerate_periods(&f, 2).unwrap();
        let js = serde_json::to_value(&rep).unwrap();
        assert_eq!(js["N"], 2);
        assert_eq!(js["periods"]["2"].as_array().unwrap().len(), 2);
        assert_eq!(js["periods"]["1"][0]["x"], "0");
    }
}
