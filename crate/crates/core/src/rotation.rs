//! Rotation numbers of stunted Lorenz circle maps: lift counting, the cutting-time
//! route, heights, continued fractions and the two kneading-sequence generators.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fixed::{FixedLift, Fx, Next};
use crate::kneading::{cutting_data_symbolic, cutting_structure, CuttingStructure};
use crate::maps::{derive_increasing_lorenz, stunt, tent_symmetric, Family, Lift, MapSpec};
use crate::scalar::{refine, ExactScalar};
use crate::sturmian::{rotational_sequence_window, Window};
use crate::symbolic::{
    is_admissible, lorenz_decode, lorenz_recode, lorenz_recode_periodic, ones, parity_lex_compare,
    rho_outcome, Admissibility, PlOrder, RhoOutcome, SymbolSeq,
};

// ---------------------------------------------------------------------------
// Continued fractions

/// [a0; head, (period)] with positive partial quotients after a0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    pub a0: u64,
    pub head: Vec<u64>,
    pub period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(a0: u64, head: Vec<u64>, period: Vec<u64>) -> Result<ContinuedFraction> {
        if head.iter().chain(&period).any(|&a| a == 0) {
            return Err(Error::Parse("partial quotients must be positive".into()));
        }
        Ok(ContinuedFraction { a0, head, period })
    }

    pub fn periodic(a0: u64, period: Vec<u64>) -> Result<ContinuedFraction> {
        ContinuedFraction::new(a0, Vec::new(), period)
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// a_i for i ≥ 1.
    pub fn quotient(&self, i: usize) -> Option<u64> {
        assert!(i >= 1);
        if i <= self.head.len() {
            Some(self.head[i - 1])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - 1 - self.head.len()) % self.period.len()])
        }
    }

    /// Convergents (p_i, q_i) for i = 0..=m (fewer for short finite expansions).
    pub fn convergents(&self, m: usize) -> Vec<(BigInt, BigInt)> {
        let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
        let (mut p1, mut q1) = (BigInt::from(self.a0), BigInt::one());
        let mut out = vec![(p1.clone(), q1.clone())];
        for i in 1..=m {
            let Some(a) = self.quotient(i) else { break };
            let a = BigInt::from(a);
            let p2 = &a * &p1 + &p0;
            let q2 = &a * &q1 + &q0;
            (p0, q0, p1, q1) = (p1, q1, p2.clone(), q2.clone());
            out.push((p2, q2));
        }
        out
    }

    /// Exact value: rational for finite expansions, a quadratic surd for periodic ones.
    pub fn value(&self) -> ExactScalar {
        let big = |x: &BigInt| ExactScalar::Rational(BigRational::from_integer(x.clone()));
        let head_conv = |a0: u64, head: &[u64]| -> ((BigInt, BigInt), (BigInt, BigInt)) {
            let cf = ContinuedFraction {
                a0,
                head: head.to_vec(),
                period: Vec::new(),
            };
            let c = cf.convergents(head.len());
            let last = c.last().unwrap().clone();
            let prev = if c.len() >= 2 {
                c[c.len() - 2].clone()
            } else {
                (BigInt::one(), BigInt::zero())
            };
            (last, prev)
        };
        let ((a, b), (a1, b1)) = head_conv(self.a0, &self.head);
        if self.period.is_empty() {
            return ExactScalar::Rational(BigRational::new(a, b));
        }
        // y = [b1; b2, …, bp, y] solves Q y² + (Q' − P) y − P' = 0.
        let ((p, q), (p1, q1)) = head_conv(self.period[0], &self.period[1..]);
        let disc = (&q1 - &p) * (&q1 - &p) + BigInt::from(4) * &q * &p1;
        let disc = disc
            .to_u64()
            .expect("discriminant fits in u64 for modest periods");
        let two_q = BigRational::from_integer(BigInt::from(2) * &q);
        let y = ExactScalar::surd(
            BigRational::from_integer(&p - &q1) / &two_q,
            BigRational::one() / two_q,
            disc,
        );
        &(&(&big(&a) * &y) + &big(&a1)) / &(&(&big(&b) * &y) + &big(&b1))
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.head.iter().map(|a| a.to_string()).collect();
        if !self.period.is_empty() {
            let p: Vec<String> = self.period.iter().map(|a| a.to_string()).collect();
            parts.push(format!("({})", p.join(",")));
        }
        write!(f, "[{};{}]", self.a0, parts.join(","))
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// "[0;2,2,2]", "[0;(2)]", "[0;3,(1,2)]".
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("continued fraction {s:?}"));
        let body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (a0, rest) = body.split_once(';').unwrap_or((body, ""));
        let a0 = a0.parse().map_err(|_| bad())?;
        let (head, period) = match rest.find('(') {
            Some(i) => {
                let per = rest[i..]
                    .strip_prefix('(')
                    .and_then(|p| p.strip_suffix(')'))
                    .ok_or_else(bad)?;
                (rest[..i].trim_end_matches(','), per)
            }
            None => (rest, ""),
        };
        let list = |t: &str| -> Result<Vec<u64>> {
            t.split(',')
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| bad()))
                .collect()
        };
        ContinuedFraction::new(a0, list(head)?, list(period)?)
    }
}

impl Serialize for ContinuedFraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ContinuedFraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Counting

/// Orbit points bigger than this are handed to fixed-point iteration.
const EXACT_BITS: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationEstimate {
    pub n: usize,
    /// Full turns of the lift over n steps.
    pub turns: i64,
    /// turns / n.
    pub estimate: ExactScalar,
    pub lo: ExactScalar,
    pub hi: ExactScalar,
    /// The rotation number itself, when the orbit was seen to close up exactly.
    pub exact: Option<ExactScalar>,
}

/// Degree-one lift used for counting: the Lorenz lift for increasing Lorenz maps,
/// the circle-map lift otherwise.
pub fn lift_of(map: &MapSpec) -> Result<Lift> {
    match map.family {
        Family::IncreasingLorenz => Lift::lorenz(map),
        _ => Lift::of_circle_map(map),
    }
}

enum State {
    Exact(ExactScalar),
    Fixed(Fx),
}

fn count_turns(lift: &Lift, x0: &ExactScalar, n: usize, bits: u32) -> Result<RotationEstimate> {
    let l = lift.period;
    let start = x0.rem_int(l)?;
    let mut fixed: Option<FixedLift> = None;
    let mut seen: HashMap<ExactScalar, usize> = HashMap::new();
    let mut cum: Vec<i64> = Vec::with_capacity(n.min(1 << 20) + 1);
    cum.push(0);
    let mut state = State::Exact(start.clone());
    for k in 0..n {
        state = match state {
            State::Exact(x) => {
                if x.is_exact() {
                    if let Some(&j) = seen.get(&x) {
                        let per = k - j;
                        let dw = cum[k] - cum[j];
                        let rem = n - k;
                        let turns =
                            cum[k] + (rem / per) as i64 * dw + (cum[j + rem % per] - cum[j]);
                        let exact = ExactScalar::ratio(dw, per as i64);
                        return Ok(RotationEstimate {
                            n,
                            turns,
                            estimate: ExactScalar::ratio(turns, n as i64),
                            lo: exact.clone(),
                            hi: exact.clone(),
                            exact: Some(exact),
                        });
                    }
                    seen.insert(x.clone(), k);
                }
                let (y, w) = lift.step(&x)?;
                cum.push(cum[k] + w.to_i64().ok_or(Error::PrecisionExhausted)?);
                if y.bit_size() > EXACT_BITS {
                    State::Fixed(Fx::from_scalar(&y, bits))
                } else {
                    State::Exact(y)
                }
            }
            State::Fixed(fx) => {
                if fixed.is_none() {
                    fixed = Some(FixedLift::new(lift, bits)?);
                }
                match fixed.as_ref().unwrap().step(&fx)? {
                    Next::Exact(v, w) => {
                        cum.push(cum[k] + w);
                        State::Exact(v)
                    }
                    Next::Fixed(f, w) => {
                        cum.push(cum[k] + w);
                        State::Fixed(f)
                    }
                }
            }
        };
    }
    let turns = cum[n];
    let (end_lo, end_hi) = match &state {
        State::Exact(x) => {
            let b = x.to_ball(bits);
            (b.lo(), b.hi())
        }
        State::Fixed(f) => f.bounds(bits),
    };
    let b0 = start.to_ball(bits);
    let lq = BigRational::from_integer(BigInt::from(l));
    let nq = BigRational::from_integer(BigInt::from(n));
    let w = BigRational::from_integer(BigInt::from(turns));
    let one = BigRational::one();
    let lo = (&w + (end_lo - b0.hi()) / &lq - &one) / &nq;
    let hi = (&w + (end_hi - b0.lo()) / &lq + &one) / &nq;
    Ok(RotationEstimate {
        n,
        turns,
        estimate: ExactScalar::ratio(turns, n as i64),
        lo: lo.into(),
        hi: hi.into(),
        exact: None,
    })
}

/// Mean number of lift turns per step along the orbit of x0, with the bracket
/// |Φⁿ(x0) − x0 − nα·L| ≤ L of a monotone degree-one lift.
pub fn rotation_number_counting(
    map: &MapSpec,
    x0: &ExactScalar,
    n: usize,
) -> Result<RotationEstimate> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange {
            what: "orbit length".into(),
            value: "0".into(),
        });
    }
    let lift = lift_of(map)?;
    refine(|bits| count_turns(&lift, x0, n, bits))
}

/// φ̄ built from the symmetric tent of slope λ.
pub fn stunted_tent(lambda: &ExactScalar) -> Result<MapSpec> {
    let f = tent_symmetric(lambda.clone())?;
    Ok(stunt(&derive_increasing_lorenz(&f)?)?.0)
}

// ---------------------------------------------------------------------------
// Cutting route

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RotationStatus {
    ExactHit,
    NoHitUpToDepth,
}

/// An exact value or a closed bracket; serialized as "p/q" or ["lo", "hi"].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Alpha {
    Exact(ExactScalar),
    Bracket([ExactScalar; 2]),
}

impl Alpha {
    pub fn lo(&self) -> &ExactScalar {
        match self {
            Alpha::Exact(x) => x,
            Alpha::Bracket([lo, _]) => lo,
        }
    }

    pub fn hi(&self) -> &ExactScalar {
        match self {
            Alpha::Exact(x) => x,
            Alpha::Bracket([_, hi]) => hi,
        }
    }

    pub fn width(&self) -> ExactScalar {
        self.hi() - self.lo()
    }

    pub fn contains(&self, x: &ExactScalar) -> Result<bool> {
        Ok(self.lo().le(x)? && x.le(self.hi())?)
    }

    /// 1 − self.
    pub fn complement(&self) -> Alpha {
        let one = ExactScalar::one();
        match self {
            Alpha::Exact(x) => Alpha::Exact(&one - x),
            Alpha::Bracket([lo, hi]) => Alpha::Bracket([&one - hi, &one - lo]),
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Exact(x) => write!(f, "{x}"),
            Alpha::Bracket([lo, hi]) => write!(f, "[{lo}, {hi}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationResult {
    pub status: RotationStatus,
    pub alpha: Alpha,
    /// 1-density of the periodic recoded word, when ν is eventually periodic and a
    /// hit has been ruled out over a full cycle of cutting times.
    pub exact_limit: Option<ExactScalar>,
    #[serde(rename = "K")]
    pub hit_index: Option<usize>,
    #[serde(rename = "S_K")]
    pub s_k: Option<usize>,
    /// K / S_K, reported alongside the counted α.
    pub k_over_s: Option<ExactScalar>,
    pub prime_end: Alpha,
    /// Cutting times examined.
    pub examined: usize,
}

fn prepend(head: &[u8], tail: &SymbolSeq) -> SymbolSeq {
    let mut p = head.to_vec();
    p.extend(&tail.prefix);
    if tail.is_finite() {
        SymbolSeq::finite(p)
    } else {
        SymbolSeq::periodic(p, tail.period.clone())
    }
}

fn density(w: &[u8]) -> ExactScalar {
    ExactScalar::ratio(ones(w) as i64, w.len() as i64)
}

/// Finds the least K with σ^{S_K − 1}ν strictly between the itineraries of b̃ and b,
/// 0 1 ν̄₂ ν₃ ν₄ … and 1 1 ν̄₂ ν₃ ν₄ … (ν̄₂ = 1 − ν₂), examining at most `depth`
/// cutting times (more when needed to certify an eventually periodic ν).
pub fn rotation_number_cutting(nu: &SymbolSeq, depth: usize) -> Result<RotationResult> {
    if nu.get(1) != Some(1) || nu.available() < 3 {
        return Err(Error::InvalidCuttingSequence(
            "kneading sequence must start with 1 and have 3 symbols".into(),
        ));
    }
    let nu2 = nu.get(2).unwrap();
    let tail = nu.shift(2);
    let lower = prepend(&[0, 1, 1 - nu2], &tail);
    let upper = prepend(&[1, 1, 1 - nu2], &tail);
    let structure = cutting_structure(nu)?;
    let window = match &structure {
        Some(CuttingStructure::Cycle { k0, dk, .. }) => Some(k0 + dk),
        Some(CuttingStructure::Finite { last, .. }) => Some(*last),
        None => None,
    };
    let limit = depth.max(window.unwrap_or(0));
    let mut s = vec![1usize];
    let mut exhausted = false;
    let mut last_decided = 1usize;
    let mut hit = None;
    for k in 1..=limit {
        match rho_outcome(nu, nu, s[k - 1]) {
            RhoOutcome::At(t) => s.push(t),
            RhoOutcome::Never => {
                exhausted = true;
                break;
            }
            RhoOutcome::Unknown => break,
        }
        let x = nu.shift(s[k] - 1);
        let lo = parity_lex_compare(&lower, &x, usize::MAX);
        let hi = parity_lex_compare(&x, &upper, usize::MAX);
        if lo == PlOrder::Undecided || hi == PlOrder::Undecided {
            s.pop();
            break;
        }
        if lo == PlOrder::Less && hi == PlOrder::Less {
            hit = Some(k);
            break;
        }
        last_decided = s[k];
    }
    let examined = s.len() - 1;
    if let Some(k) = hit {
        let sk = s[k];
        let phi = lorenz_recode(nu, sk).prefix;
        let alpha = ExactScalar::ratio(ones(&phi[1..sk]) as i64, sk as i64);
        return Ok(RotationResult {
            status: RotationStatus::ExactHit,
            prime_end: Alpha::Exact(&ExactScalar::one() - &alpha),
            alpha: Alpha::Exact(alpha),
            exact_limit: None,
            hit_index: Some(k),
            s_k: Some(sk),
            k_over_s: Some(ExactScalar::ratio(k as i64, sk as i64)),
            examined,
        });
    }
    let certified = exhausted || window.is_some_and(|w| examined >= w);
    let exact_limit = if certified && structure.is_some() {
        lorenz_recode_periodic(nu).map(|w| density(&w.period))
    } else {
        None
    };
    let n = last_decided;
    let phi = lorenz_recode(nu, n).prefix;
    let w = ones(&phi[..n - 1]) as i64;
    let half = ExactScalar::ratio(1, 2);
    let one = ExactScalar::one();
    let mut lo = ExactScalar::ratio(2 * w - 3, 2 * n as i64).max(&half)?;
    let mut hi = ExactScalar::ratio(2 * w + 3, 2 * n as i64).min(&one)?;
    if lo.gt(&hi)? {
        (lo, hi) = (half, one);
    }
    let alpha = Alpha::Bracket([lo, hi]);
    let prime_end = match &exact_limit {
        Some(x) => Alpha::Exact(&ExactScalar::one() - x),
        None => alpha.complement(),
    };
    Ok(RotationResult {
        status: RotationStatus::NoHitUpToDepth,
        alpha,
        exact_limit,
        hit_index: None,
        s_k: None,
        k_over_s: None,
        prime_end,
        examined,
    })
}

/// Height of ν: the prime-end complement 1 − α.
pub fn height(nu: &SymbolSeq, depth: usize) -> Result<Alpha> {
    Ok(rotation_number_cutting(nu, depth)?.prime_end)
}

// ---------------------------------------------------------------------------
// Generators

/// {1} ∪ {k+1 : k ≤ a_1} ∪ {a·q_n + q_{n−1} : n ≥ 1, 1 ≤ a ≤ a_{n+1}}, capped at N.
pub fn ostrowski_cutting_times(cf: &ContinuedFraction, n_max: usize) -> Vec<usize> {
    let mut out = std::collections::BTreeSet::new();
    if n_max >= 1 {
        out.insert(1usize);
    }
    if let Some(a1) = cf.quotient(1) {
        for k in 1..=a1.min(n_max as u64) as usize {
            if k < n_max {
                out.insert(k + 1);
            }
        }
    }
    let (mut q_prev, mut q) = (0u128, 1u128);
    let mut i = 1usize;
    while let Some(a) = cf.quotient(i) {
        // q_{i−1} → q_i
        (q_prev, q) = (q, a as u128 * q + q_prev);
        if q_prev + q > n_max as u128 {
            break;
        }
        let Some(next) = cf.quotient(i + 1) else {
            break;
        };
        for a in 1..=next as u128 {
            let v = a * q + q_prev;
            if v > n_max as u128 {
                break;
            }
            out.insert(v as usize);
        }
        i += 1;
    }
    out.into_iter().collect()
}

/// Every gap S_k − S_{k−1} must be an earlier cutting time; S starts 1, 2.
pub fn check_difference_closure(s: &[usize]) -> Result<()> {
    if s.first() != Some(&1) || (s.len() > 1 && s[1] != 2) {
        return Err(Error::InvalidCuttingSequence("must start with 1, 2".into()));
    }
    for k in 1..s.len() {
        if s[k] <= s[k - 1] {
            return Err(Error::InvalidCuttingSequence(format!(
                "not increasing at index {k}"
            )));
        }
        let gap = s[k] - s[k - 1];
        if s[..k].binary_search(&gap).is_err() {
            return Err(Error::InvalidCuttingSequence(format!(
                "gap {gap} before {} is not an earlier entry",
                s[k]
            )));
        }
    }
    Ok(())
}

/// Rebuild ν from its cutting times (up to min(N, last S)).
pub fn kneading_from_cutting_times(s: &[usize], n_max: usize) -> Result<SymbolSeq> {
    check_difference_closure(s)?;
    let len = n_max.min(*s.last().unwrap());
    let mut nu = vec![0u8; len + 1];
    if len >= 1 {
        nu[1] = 1;
    }
    for k in 1..s.len() {
        if s[k - 1] >= len {
            break;
        }
        let gap = s[k] - s[k - 1];
        for j in 1..gap {
            let pos = s[k - 1] + j;
            if pos > len {
                break;
            }
            nu[pos] = nu[j];
        }
        if s[k] <= len {
            nu[s[k]] = 1 - nu[gap];
        }
    }
    let word = SymbolSeq::finite(nu[1..].to_vec());
    let back = cutting_data_symbolic(&word, len)?.s;
    let expect: Vec<usize> = s.iter().copied().filter(|&t| t <= len).collect();
    if back != expect {
        return Err(Error::InvalidCuttingSequence(format!(
            "round trip gave {back:?}"
        )));
    }
    if is_admissible(&word, &word, len) == Admissibility::No {
        return Err(Error::InvalidCuttingSequence(
            "reconstructed word is not admissible".into(),
        ));
    }
    Ok(word)
}

/// Start of the rotation coding the recoded kneading word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Offset {
    /// ν^φ_n = 1 iff {nα} ∈ (0, α].
    ZeroMinus,
    /// ν^φ_n = 1 iff {nα} ∈ [0, α).
    Zero,
    /// ν^φ_n = 1 iff {(n+1)α} ∈ [0, α).
    Alpha,
    /// ν^φ_n = 1 iff {(n−1)α} ∈ [0, α).
    OneMinusAlpha,
}

impl Offset {
    pub const ALL: [Offset; 4] = [
        Offset::ZeroMinus,
        Offset::Zero,
        Offset::Alpha,
        Offset::OneMinusAlpha,
    ];
}

impl FromStr for Offset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0-" | "zero-minus" => Ok(Offset::ZeroMinus),
            "0" | "zero" => Ok(Offset::Zero),
            "alpha" => Ok(Offset::Alpha),
            "1-alpha" | "one-minus-alpha" => Ok(Offset::OneMinusAlpha),
            _ => Err(Error::Parse(format!("offset {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenjoyWord {
    pub nu: SymbolSeq,
    pub nu_phi: SymbolSeq,
    pub alpha: ExactScalar,
    pub offset: Offset,
}

/// ν^φ_1..ν^φ_n for the given offset.
pub fn denjoy_coding(alpha: &ExactScalar, offset: Offset, n: usize) -> Result<SymbolSeq> {
    let (beta, window) = match offset {
        Offset::ZeroMinus => (alpha.clone(), Window::OpenClosed),
        Offset::Zero => (alpha.clone(), Window::ClosedOpen),
        Offset::Alpha => (alpha * &ExactScalar::from(2), Window::ClosedOpen),
        Offset::OneMinusAlpha => (ExactScalar::zero(), Window::ClosedOpen),
    };
    rotational_sequence_window(alpha, &beta, n, window)
}

/// ν_1 = 1 followed by blocks 0 and 11 (a final lone 1 counts as a cut-off 11).
pub fn has_blocks_0_11(nu: &[u8]) -> bool {
    if nu.first() != Some(&1) {
        return false;
    }
    let mut i = 1;
    while i < nu.len() {
        match (nu[i], nu.get(i + 1)) {
            (0, _) => i += 1,
            (_, Some(1)) | (_, None) => i += 2,
            _ => return false,
        }
    }
    true
}

fn denjoy_valid(nu: &SymbolSeq, n: usize) -> Result<bool> {
    let w = nu.symbols(n);
    if w.len() < 2 || w[0] != 1 || w[1] != 0 || !has_blocks_0_11(&w) {
        return Ok(false);
    }
    if is_admissible(nu, nu, n) == Admissibility::No {
        return Ok(false);
    }
    let data = cutting_data_symbolic(nu, n)?;
    Ok(data.q.iter().all(|&q| q <= 1))
}

/// Kneading word whose recoding is the rotational sequence of α = 1 − height(cf).
/// With `offset = None` the offsets are tried in the order of [`Offset::ALL`].
pub fn kneading_from_cf_denjoy(
    cf: &ContinuedFraction,
    n: usize,
    offset: Option<Offset>,
) -> Result<DenjoyWord> {
    let h = cf.value();
    if !(h.gt(&ExactScalar::zero())? && h.le(&ExactScalar::ratio(1, 2))?) {
        return Err(Error::TargetOutOfRange(format!(
            "height {cf} must lie in (0, 1/2]"
        )));
    }
    let alpha = &ExactScalar::one() - &h;
    let candidates: Vec<Offset> = match offset {
        Some(o) => vec![o],
        None => Offset::ALL.to_vec(),
    };
    for o in candidates {
        let nu_phi = match denjoy_coding(&alpha, o, n) {
            Ok(w) => w,
            Err(Error::BoundaryHit { .. }) => continue,
            Err(e) => return Err(e),
        };
        let nu = lorenz_decode(&nu_phi);
        if denjoy_valid(&nu, n)? {
            return Ok(DenjoyWord {
                nu,
                nu_phi,
                alpha,
                offset: o,
            });
        }
    }
    Err(Error::OffsetMismatch)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Realization {
    pub lambda_lo: ExactScalar,
    pub lambda_hi: ExactScalar,
    pub alpha_lo: ExactScalar,
    pub alpha_hi: ExactScalar,
    pub n: usize,
}

/// Bisection in the tent slope for the stunted family: returns [λ_lo, λ_hi] where λ_lo is
/// the left edge of {α ≥ target − tol/2} and λ_hi the left edge of {α > target + tol/2}.
pub fn realize_rotation_number(
    target: &ContinuedFraction,
    tol: &ExactScalar,
) -> Result<Realization> {
    let t = target.value();
    if !(t.gt(&ExactScalar::ratio(1, 2))? && t.lt(&ExactScalar::one())?) {
        return Err(Error::TargetOutOfRange(format!(
            "rotation number {target} must lie in (1/2, 1)"
        )));
    }
    if !tol.gt(&ExactScalar::zero())? {
        return Err(Error::ParameterOutOfRange {
            what: "tolerance".into(),
            value: tol.to_string(),
        });
    }
    let n = (8.0 / tol.to_f64()).ceil().clamp(400.0, 20000.0) as usize;
    let est = |l: &ExactScalar| -> Result<ExactScalar> {
        Ok(rotation_number_counting(&stunted_tent(l)?, &ExactScalar::zero(), n)?.estimate)
    };
    let half_tol = tol * &ExactScalar::ratio(1, 2);
    let low_bar = &t - &half_tol;
    let high_bar = &t + &half_tol;
    let edge = |pred: &dyn Fn(&ExactScalar) -> Result<bool>| -> Result<ExactScalar> {
        let (mut a, mut b) = (ExactScalar::ratio(1415, 1000), ExactScalar::from(2));
        if pred(&a)? {
            return Ok(a);
        }
        if !pred(&b)? {
            return Ok(b);
        }
        let stop = ExactScalar::ratio(1, 1 << 24);
        while (&b - &a).gt(&stop)? {
            let m = &(&a + &b) * &ExactScalar::ratio(1, 2);
            if pred(&m)? {
                b = m;
            } else {
                a = m;
            }
        }
        Ok(b)
    };
    let left = edge(&|l| est(l)?.ge(&low_bar))?;
    let right = edge(&|l| est(l)?.gt(&high_bar))?;
    let (lo, hi) = if left.le(&right)? {
        (left, right)
    } else {
        (right, left)
    };
    Ok(Realization {
        alpha_lo: est(&lo)?,
        alpha_hi: est(&hi)?,
        lambda_lo: lo,
        lambda_hi: hi,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SymbolSeq {
        s.parse().unwrap()
    }

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    #[test]
    fn continued_fraction_values() {
        assert_eq!(
            cf("[0;(2)]").value(),
            &ExactScalar::sqrt2() - &ExactScalar::one()
        );
        assert_eq!(
            cf("[0;(1)]").value(),
            &ExactScalar::golden() - &ExactScalar::one()
        );
        assert_eq!(cf("[0;1,2]").value(), ExactScalar::ratio(2, 3));
        assert_eq!(cf("[0;3,(1,2)]").to_string(), "[0;3,(1,2)]");
        let q: Vec<_> = cf("[0;(2)]")
            .convergents(4)
            .into_iter()
            .map(|(_, q)| q)
            .collect();
        assert_eq!(q, [1, 2, 5, 12, 29].map(BigInt::from));
    }

    #[test]
    fn ostrowski_examples() {
        assert_eq!(
            ostrowski_cutting_times(&cf("[0;(1)]"), 21),
            vec![1, 2, 3, 5, 8, 13, 21]
        );
        assert_eq!(
            ostrowski_cutting_times(&cf("[0;(2)]"), 29),
            vec![1, 2, 3, 5, 7, 12, 17, 29]
        );
        check_difference_closure(&ostrowski_cutting_times(&cf("[0;(2)]"), 1000)).unwrap();
    }

    #[test]
    fn cutting_time_reconstruction() {
        let fib = kneading_from_cutting_times(&[1, 2, 3, 5, 8], 8).unwrap();
        assert_eq!(fib.to_string(), "10011101");
        let all: Vec<usize> = (1..=10).collect();
        assert_eq!(
            kneading_from_cutting_times(&all, 10).unwrap().to_string(),
            "1000000000"
        );
        assert!(kneading_from_cutting_times(&[1, 2, 5], 5).is_err());
    }

    #[test]
    fn pell_denjoy_word() {
        let d = kneading_from_cf_denjoy(&cf("[0;(2)]"), 31, None).unwrap();
        assert_eq!(d.nu.to_string(), "1011110111101111110111101111110");
        assert_eq!(d.offset, Offset::ZeroMinus);
    }

    #[test]
    fn cutting_route_examples() {
        let g = rotation_number_cutting(&w("(101)"), 50).unwrap();
        assert_eq!(g.status, RotationStatus::NoHitUpToDepth);
        assert_eq!(g.exact_limit, Some(ExactScalar::ratio(2, 3)));
        assert_eq!(g.prime_end, Alpha::Exact(ExactScalar::ratio(1, 3)));
        let full = rotation_number_cutting(&w("1(0)"), 50).unwrap();
        assert_eq!(full.exact_limit, Some(ExactScalar::one()));
        let d = rotation_number_cutting(&w("10011011011101"), 20).unwrap();
        assert_eq!(d.status, RotationStatus::ExactHit);
        assert_eq!(d.s_k, Some(3));
        assert_eq!(d.alpha, Alpha::Exact(ExactScalar::ratio(2, 3)));
    }

    #[test]
    fn counting_examples() {
        let two = stunted_tent(&ExactScalar::from(2)).unwrap();
        let r = rotation_number_counting(&two, &ExactScalar::ratio(1, 3), 100).unwrap();
        assert_eq!(r.exact, Some(ExactScalar::one()));
        let g = stunted_tent(&ExactScalar::golden()).unwrap();
        let r = rotation_number_counting(&g, &ExactScalar::ratio(1, 7), 3000).unwrap();
        assert_eq!(r.exact, Some(ExactScalar::ratio(2, 3)));
    }
}
