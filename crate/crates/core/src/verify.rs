//! The acceptance suite: twelve exact checks, each timed against its own limit.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::kneading::{cutting_data_symbolic, cutting_set, hofbauer_levels};
use crate::maps::{derive_decreasing_lorenz, derive_increasing_lorenz, tent_symmetric};
use crate::outside::{
    accessibility_certificate, check_conjugacy, check_flatten, exact_critical_omega,
    folding_depth_check, least_grace, outside_map, verify_certificate, BackwardOrbit, LiftStatus,
};
use crate::periodic::{
    block_orientation, enumerate_periods, forcing_witnesses, verify_sharkovsky_closure, Mode,
    WitnessCase,
};
use crate::rotation::{
    height, kneading_from_cf_denjoy, ostrowski_cutting_times, rotation_number_counting,
    rotation_number_cutting, stunted_tent, Alpha, ContinuedFraction, RotationStatus,
};
use crate::scalar::ExactScalar;
use crate::sturmian::{factor_complexity, is_balanced, rotational_sequence};
use crate::symbolic::{
    feigenbaum_prefix, is_admissible, kneading_sequence, lorenz_recode, theta_signs, Admissibility,
    SymbolSeq,
};

pub const THETA_NU: &str = "10011011011101";
pub const THETA_ROW: [i8; 15] = [1, -1, -1, -1, 1, -1, -1, 1, -1, -1, 1, -1, 1, 1, -1];
pub const THETA_NU_PHI: &str = "11101101101001";
pub const THETA_CUTTING: [usize; 8] = [1, 2, 3, 5, 6, 8, 9, 11];
/// The Feigenbaum display with its power-of-two dots removed.
pub const FEIGENBAUM_DISPLAY: &str = "101110101011101110111010101110101011101010111011101110101";
pub const PELL_NU: &str = "1011110111101111110111101111110";

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
    pub limit_ms: f64,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>10.2} ms (limit {:.0} ms)  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Reproduction of printed sequences: criteria 1 to 3.
    PaperTables,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "paper-tables" => Ok(Suite::PaperTables),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

impl Suite {
    pub fn ids(self) -> Vec<u8> {
        match self {
            Suite::PaperTables => vec![1, 2, 3],
            Suite::All => (1..=12).collect(),
        }
    }
}

type Check = fn() -> Result<(bool, String)>;

const CRITERIA: [(u8, &str, f64, Check); 12] = [
    (1, "theta-table", 1.0, c1_theta),
    (2, "feigenbaum", 1.0, c2_feigenbaum),
    (3, "pell-golden-file", 10.0, c3_pell),
    (4, "hofbauer-vs-symbolic", 5_000.0, c4_oracles),
    (5, "sharkovsky-phi", 60_000.0, c5_phi),
    (6, "sharkovsky-psi", 60_000.0, c6_psi),
    (7, "rotation-agreement", 30_000.0, c7_rotation),
    (8, "height-consistency", 10_000.0, c8_height),
    (9, "sturmian-proxies", 10_000.0, c9_sturmian),
    (10, "forcing-witnesses", 1_000.0, c10_witnesses),
    (11, "outside-identities", 20_000.0, c11_outside),
    (12, "accessibility", 1_000.0, c12_access),
];

pub fn run_criterion(id: u8) -> Result<CriterionReport> {
    let &(id, name, limit_ms, check) =
        CRITERIA
            .iter()
            .find(|c| c.0 == id)
            .ok_or_else(|| Error::ParameterOutOfRange {
                what: "criterion id".into(),
                value: id.to_string(),
            })?;
    let start = Instant::now();
    let outcome = check();
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (ok, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let in_time = elapsed_ms <= limit_ms;
    if !in_time {
        detail.push_str("; over time limit");
    }
    Ok(CriterionReport {
        id,
        name,
        passed: ok && in_time,
        detail,
        elapsed_ms,
        limit_ms,
    })
}

pub fn run_suite(suite: Suite) -> Vec<CriterionReport> {
    suite
        .ids()
        .into_iter()
        .map(|id| run_criterion(id).expect("known id"))
        .collect()
}

fn q(n: i64, d: i64) -> ExactScalar {
    ExactScalar::ratio(n, d)
}

fn verdict(failures: Vec<String>, ok_detail: String) -> (bool, String) {
    if failures.is_empty() {
        (true, ok_detail)
    } else {
        (false, failures.join("; "))
    }
}

fn c1_theta() -> Result<(bool, String)> {
    let nu: SymbolSeq = THETA_NU.parse()?;
    let mut fails = Vec::new();
    let th = theta_signs(&nu, 14);
    if th.signs != THETA_ROW {
        fails.push(format!("theta row {:?}", th.signs));
    }
    let rec = lorenz_recode(&nu, 14).to_string();
    if rec != THETA_NU_PHI {
        fails.push(format!("recoded row {rec}"));
    }
    // the row ends after symbol 14, so only positions 1..13 can carry a dot
    let s = cutting_data_symbolic(&nu, 14)?.s;
    let dotted: Vec<usize> = s.iter().copied().filter(|&t| t < 14).collect();
    if dotted != THETA_CUTTING {
        fails.push(format!("cutting times {s:?}"));
    }
    Ok(verdict(
        fails,
        format!("theta and recoding match; cutting times {s:?}"),
    ))
}

fn c2_feigenbaum() -> Result<(bool, String)> {
    let f = feigenbaum_prefix(64);
    let mut fails = Vec::new();
    if !f.to_string().starts_with(FEIGENBAUM_DISPLAY) {
        fails.push(format!("prefix {f}"));
    }
    let d = cutting_data_symbolic(&f, 64)?;
    if d.s != [1, 2, 4, 8, 16, 32, 64] {
        fails.push(format!("cutting times {:?}", d.s));
    }
    // Q is indexed from k = 1
    if d.q.iter().enumerate().any(|(i, &qk)| qk != i) {
        fails.push(format!("Q {:?}", d.q));
    }
    Ok(verdict(
        fails,
        "display prefix, S_k = 2^k, Q(k) = k - 1".into(),
    ))
}

fn c3_pell() -> Result<(bool, String)> {
    let cf = ContinuedFraction::periodic(0, vec![2])?;
    let w = kneading_from_cf_denjoy(&cf, 31, None)?;
    let mut fails = Vec::new();
    if w.nu.to_string() != PELL_NU {
        fails.push(format!("nu {}", w.nu));
    }
    let d = cutting_data_symbolic(&w.nu, 31)?;
    let sup = d.q.iter().copied().max().unwrap_or(0);
    if sup != 1 {
        fails.push(format!("sup Q = {sup}"));
    }
    for t in [3, 5, 17, 29] {
        if !d.shat.contains(&t) {
            fails.push(format!("co-cutting time {t} missing from {:?}", d.shat));
        }
    }
    Ok(verdict(
        fails,
        format!(
            "nu matches (offset {:?}), sup Q = 1, Shat {:?}",
            w.offset, d.shat
        ),
    ))
}

/// 25 slopes in (1.05, 2].
pub fn oracle_slopes() -> Vec<ExactScalar> {
    (1..=25).map(|k| q(1050 + 38 * k, 1000)).collect()
}

fn c4_oracles() -> Result<(bool, String)> {
    let depth = 200;
    let rows = par_map(&oracle_slopes(), |l| -> Result<Option<String>> {
        let f = tent_symmetric(l.clone())?;
        let numeric = cutting_set(&hofbauer_levels(&f, depth)?);
        let nu = kneading_sequence(&f, depth)?;
        let symbolic = cutting_data_symbolic(&nu, depth)?.s;
        Ok((numeric != symbolic)
            .then(|| format!("lambda {l}: tower {numeric:?} vs rho {symbolic:?}")))
    });
    let mut fails = Vec::new();
    for r in rows {
        if let Some(msg) = r? {
            fails.push(msg);
        }
    }
    Ok(verdict(fails, "25 slopes agree up to level 200".into()))
}

/// 15 slopes in (1.05, 2).
pub fn sharkovsky_slopes() -> Vec<ExactScalar> {
    (1..=15).map(|k| q(105 + 6 * k, 100)).collect()
}

fn closure_sweep(mode: Mode) -> Result<Vec<String>> {
    let mut slopes = sharkovsky_slopes();
    slopes.push(ExactScalar::from(2));
    let rows = par_map(&slopes, |l| -> Result<Vec<String>> {
        let f = tent_symmetric(l.clone())?;
        let g = match mode {
            Mode::IncreasingLorenz => derive_increasing_lorenz(&f)?,
            _ => derive_decreasing_lorenz(&f)?,
        };
        let rep = enumerate_periods(&g, 8)?;
        let v = verify_sharkovsky_closure(&rep, mode);
        let mut out = Vec::new();
        if !v.pass {
            out.push(format!("lambda {l}: {:?}", v.violations));
        }
        let is_full = *l == ExactScalar::from(2);
        match mode {
            Mode::IncreasingLorenz if rep.has(1) != is_full => {
                out.push(format!("lambda {l}: fixed point present = {}", rep.has(1)));
            }
            Mode::DecreasingLorenz if !rep.has(1) => {
                out.push(format!("lambda {l}: no fixed point"))
            }
            _ => {}
        }
        Ok(out)
    });
    let mut fails = Vec::new();
    for r in rows {
        fails.extend(r?);
    }
    Ok(fails)
}

fn c5_phi() -> Result<(bool, String)> {
    Ok(verdict(
        closure_sweep(Mode::IncreasingLorenz)?,
        "closed modulo {1}; fixed point only at lambda = 2".into(),
    ))
}

fn c6_psi() -> Result<(bool, String)> {
    let mut fails = closure_sweep(Mode::DecreasingLorenz)?;
    let psi = derive_decreasing_lorenz(&tent_symmetric(q(9, 5))?)?;
    let set = enumerate_periods(&psi, 4)?.period_set();
    if set != [1, 3, 4].into_iter().collect() {
        fails.push(format!("lambda 9/5: periods {set:?}"));
    }
    Ok(verdict(
        fails,
        "closed modulo {2^r}; fixed point always; 9/5 gives {1,3,4}".into(),
    ))
}

/// Grid scanned for slopes whose kneading sequence gives an exact rotation number.
pub fn rotation_grid() -> Vec<ExactScalar> {
    (29..=40)
        .flat_map(|k| [q(2 * k, 40), q(2 * k + 1, 40)])
        .collect()
}

struct HitSample {
    lambda: ExactScalar,
    alpha: ExactScalar,
    cut_height: Alpha,
    counted: ExactScalar,
}

fn hit_samples(want: usize, n: usize) -> Result<Vec<HitSample>> {
    let grid = rotation_grid();
    let hits = par_map(&grid, |l| -> Result<Option<(ExactScalar, SymbolSeq)>> {
        let nu = kneading_sequence(&tent_symmetric(l.clone())?, 400)?;
        let r = rotation_number_cutting(&nu, 400)?;
        Ok((r.status == RotationStatus::ExactHit).then(|| (l.clone(), nu)))
    });
    let mut chosen = Vec::new();
    for h in hits {
        if let Some(x) = h? {
            chosen.push(x);
        }
        if chosen.len() == want {
            break;
        }
    }
    if chosen.len() < want {
        return Err(Error::DepthExceeded(format!(
            "only {} exact hits on the grid",
            chosen.len()
        )));
    }
    let rows = par_map(&chosen, |(l, nu)| -> Result<HitSample> {
        let r = rotation_number_cutting(nu, 400)?;
        let Alpha::Exact(alpha) = r.alpha else {
            unreachable!("hit gives an exact value")
        };
        let counted =
            rotation_number_counting(&stunted_tent(l)?, &ExactScalar::zero(), n)?.estimate;
        Ok(HitSample {
            lambda: l.clone(),
            alpha,
            cut_height: height(nu, 400)?,
            counted,
        })
    });
    rows.into_iter().collect()
}

fn c7_rotation() -> Result<(bool, String)> {
    let n = 10_000;
    let tol = q(2, 10_000);
    let mut fails = Vec::new();
    let samples = hit_samples(10, n)?;
    for s in &samples {
        if !(&s.counted - &s.alpha).abs()?.le(&tol)? {
            fails.push(format!(
                "lambda {}: counted {} vs exact {}",
                s.lambda,
                s.counted.to_f64(),
                s.alpha
            ));
        }
    }
    let golden = kneading_sequence(&tent_symmetric(ExactScalar::golden())?, 400)?;
    if golden.to_string() != "(101)" {
        fails.push(format!("golden kneading sequence {golden}"));
    }
    let g = rotation_number_cutting(&golden, 4000)?;
    let two_thirds = q(2, 3);
    let bracket_ok = g.alpha.contains(&two_thirds)? && g.alpha.width().le(&q(1, 1000))?;
    if !bracket_ok {
        fails.push(format!("golden bracket {}", g.alpha));
    }
    if g.prime_end != Alpha::Exact(q(1, 3)) {
        fails.push(format!("golden prime end {}", g.prime_end));
    }
    let lambdas: Vec<String> = samples.iter().map(|s| s.lambda.to_string()).collect();
    Ok(verdict(
        fails,
        format!(
            "hits at {}; golden {} with prime end 1/3",
            lambdas.join(","),
            g.alpha
        ),
    ))
}

fn c8_height() -> Result<(bool, String)> {
    let n = 10_000;
    let mut fails = Vec::new();
    for s in hit_samples(10, n)? {
        let from_count = &ExactScalar::one() - &s.counted;
        let from_alpha = &ExactScalar::one() - &s.alpha;
        if !s.cut_height.contains(&from_alpha)? {
            fails.push(format!(
                "lambda {}: height {} vs 1 - alpha {}",
                s.lambda, s.cut_height, from_alpha
            ));
        }
        let slack = &s.cut_height.width() + &q(2, n as i64);
        if !(&from_count - s.cut_height.lo()).abs()?.le(&slack)? {
            fails.push(format!(
                "lambda {}: height {} vs counted {}",
                s.lambda,
                s.cut_height,
                from_count.to_f64()
            ));
        }
    }
    let pell = kneading_from_cf_denjoy(&ContinuedFraction::periodic(0, vec![2])?, 1000, None)?;
    let h = height(&pell.nu, 1000)?;
    let target = &ExactScalar::sqrt2() - &ExactScalar::one();
    if !(h.contains(&target)? && h.width().le(&q(1, 100))?) {
        fails.push(format!("Pell height {h}"));
    }
    Ok(verdict(fails, format!("10 heights agree; Pell height {h}")))
}

fn c9_sturmian() -> Result<(bool, String)> {
    let mut fails = Vec::new();
    let fib = ostrowski_cutting_times(&ContinuedFraction::periodic(0, vec![1])?, 13);
    if fib != [1, 2, 3, 5, 8, 13] {
        fails.push(format!("Ostrowski {fib:?}"));
    }
    let one = ExactScalar::one();
    let alphas = [
        &ExactScalar::golden() - &one,
        &ExactScalar::sqrt2() - &one,
        &ExactScalar::from(2) - &ExactScalar::sqrt2(),
        &ExactScalar::sqrt_int(3) - &one,
        &(&ExactScalar::sqrt_int(5) - &one) * &q(1, 4),
    ];
    let words = par_map(&alphas, |a| {
        rotational_sequence(a, &ExactScalar::zero(), 1000).map(|w| is_balanced(&w, 20))
    });
    for (a, ok) in alphas.iter().zip(words) {
        if !ok? {
            fails.push(format!("alpha {a} unbalanced"));
        }
    }
    let cfs = ["[0;(2)]", "[0;(3)]", "[0;(2,1)]", "[0;(4)]"];
    for c in cfs {
        let cf: ContinuedFraction = c.parse()?;
        let w = kneading_from_cf_denjoy(&cf, 200, None)?;
        let p = factor_complexity(&w.nu_phi, 10)?;
        if p != (2..=11).collect::<Vec<_>>() {
            fails.push(format!("{c}: complexity {p:?}"));
        }
    }
    Ok(verdict(
        fails,
        "Fibonacci cutting times, 5 balanced words, 4 Denjoy words of complexity l + 1".into(),
    ))
}

fn c10_witnesses() -> Result<(bool, String)> {
    let nu = SymbolSeq::periodic(vec![1], vec![0]);
    let mut fails = Vec::new();
    match forcing_witnesses(&nu, 1) {
        Err(Error::NoAdmissibleWitness(_)) => {}
        other => fails.push(format!("m = 1: {other:?}")),
    }
    let depth = 64;
    for m in 2..=8 {
        let w = forcing_witnesses(&nu, m)?;
        let admissible = is_admissible(&w.e, &nu, depth) != Admissibility::No
            && is_admissible(&w.e_prime, &nu, depth) != Admissibility::No;
        let e_decreasing = block_orientation(&w.e.period) == -1;
        let expected = if m == 2 {
            WitnessCase::PrimeHalfDecreasing
        } else {
            WitnessCase::PrimeMIncreasing
        };
        if !admissible || !e_decreasing || w.case != expected {
            fails.push(format!(
                "m = {m}: e {} e' {} case {:?}",
                w.e, w.e_prime, w.case
            ));
        }
    }
    Ok(verdict(
        fails,
        "m = 2..8 witnessed, m = 2 in the half-period branch, m = 1 rejected".into(),
    ))
}

/// 10 slopes in (sqrt 2, 2].
pub fn outside_slopes() -> Vec<ExactScalar> {
    (29..=38).map(|k| q(k, 20)).collect()
}

fn c11_outside() -> Result<(bool, String)> {
    let samples: Vec<ExactScalar> = (0..100).map(|j| q(j, 100)).collect();
    let n = 10_000;
    let tol = q(4, 10_000);
    let rows = par_map(&outside_slopes(), |l| -> Result<Vec<String>> {
        let mut out = Vec::new();
        let conj = check_conjugacy(l, &samples)?;
        if !conj.pass {
            out.push(format!(
                "lambda {l}: conjugacy fails at {:?}",
                conj.mismatches
            ));
        }
        let flat = check_flatten(l, &samples)?;
        if !flat.pass {
            out.push(format!(
                "lambda {l}: flattening fails at {:?}",
                flat.mismatches
            ));
        }
        let a = rotation_number_counting(&stunted_tent(l)?, &ExactScalar::zero(), n)?.estimate;
        let b = rotation_number_counting(&outside_map(l)?, &ExactScalar::zero(), n)?.estimate;
        let sum = &a + &b;
        if !(&sum - &ExactScalar::one()).abs()?.le(&tol)? {
            out.push(format!(
                "lambda {l}: rotation numbers sum to {}",
                sum.to_f64()
            ));
        }
        Ok(out)
    });
    let mut fails = Vec::new();
    for r in rows {
        fails.extend(r?);
    }
    Ok(verdict(
        fails,
        "conjugacy, flattening and rotation sums hold for 10 slopes".into(),
    ))
}

fn c12_access() -> Result<(bool, String)> {
    let mut fails = Vec::new();
    let two = ExactScalar::from(2);
    let zero = BackwardOrbit::new(two.clone(), vec![ExactScalar::zero(); 7])?;
    let c = accessibility_certificate(&zero, 0)?;
    if c.status != LiftStatus::CertifiedLift || !verify_certificate(&zero, &c)? {
        fails.push(format!("constant 0: {:?}", c.status));
    }
    let third = BackwardOrbit::new(two, vec![q(2, 3); 4])?;
    let c = accessibility_certificate(&third, 0)?;
    if c.status != LiftStatus::NoLift {
        fails.push(format!("constant 2/3: {:?}", c.status));
    }
    let golden = ExactScalar::golden();
    let omega = exact_critical_omega(&golden, 50)?
        .ok_or_else(|| Error::DepthExceeded("golden critical orbit not periodic".into()))?;
    let mut count = 0;
    for x0 in &omega {
        for orbit in BackwardOrbit::all_within(&golden, x0, &omega, 12)? {
            count += 1;
            let cert = least_grace(&orbit, 3)?;
            let folding = folding_depth_check(&orbit, &omega, &ExactScalar::zero())?;
            if cert.status != LiftStatus::CertifiedLift
                || !folding
                || !verify_certificate(&orbit, &cert)?
            {
                fails.push(format!("golden orbit from {x0}: {:?}", cert.status));
            }
        }
    }
    if count != 3 {
        fails.push(format!(
            "{count} backward orbits inside omega(c), expected 3"
        ));
    }
    Ok(verdict(
        fails,
        "0 certified, 2/3 no lift at depth 3, 3 golden folding orbits certified".into(),
    ))
}
