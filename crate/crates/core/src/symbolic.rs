//! Words over {0,1}: parity-lexicographic order, itineraries, ρ, θ-signs and the
//! Lorenz recoding.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::maps::{MapSpec, Side};
use crate::scalar::{lcm, ExactScalar};

/// A finite word, or an eventually periodic one when `period` is non-empty.
/// Indexing is 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymbolSeq {
    pub prefix: Vec<u8>,
    pub period: Vec<u8>,
    pub limit_side: Option<Side>,
}

fn primitive_root(w: &[u8]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]))
        .unwrap_or(n)
}

impl SymbolSeq {
    pub fn finite(word: Vec<u8>) -> SymbolSeq {
        SymbolSeq {
            prefix: word,
            period: Vec::new(),
            limit_side: None,
        }
    }

    /// prefix · period^∞, normalized to the shortest preperiod and primitive period.
    pub fn periodic(prefix: Vec<u8>, period: Vec<u8>) -> SymbolSeq {
        if period.is_empty() {
            return SymbolSeq::finite(prefix);
        }
        let mut prefix = prefix;
        let mut period = period[..primitive_root(&period)].to_vec();
        while let (Some(&a), Some(&b)) = (prefix.last(), period.last()) {
            if a != b {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        SymbolSeq {
            prefix,
            period,
            limit_side: None,
        }
    }

    pub fn with_side(mut self, side: Option<Side>) -> SymbolSeq {
        self.limit_side = side;
        self
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of symbols for finite words, `None` for infinite ones.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.prefix.len())
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.prefix.is_empty()
    }

    pub fn preperiod(&self) -> usize {
        self.prefix.len()
    }

    /// Symbol at 1-based index i.
    pub fn get(&self, i: usize) -> Option<u8> {
        assert!(i >= 1, "SymbolSeq indices are 1-based");
        let k = i - 1;
        if k < self.prefix.len() {
            Some(self.prefix[k])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(k - self.prefix.len()) % self.period.len()])
        }
    }

    /// First n symbols (fewer if the word is shorter).
    pub fn symbols(&self, n: usize) -> Vec<u8> {
        (1..=n).map_while(|i| self.get(i)).collect()
    }

    /// σⁿ.
    pub fn shift(&self, n: usize) -> SymbolSeq {
        if n <= self.prefix.len() {
            return SymbolSeq {
                prefix: self.prefix[n..].to_vec(),
                period: self.period.clone(),
                limit_side: None,
            };
        }
        if self.period.is_empty() {
            return SymbolSeq::finite(Vec::new());
        }
        let mut period = self.period.clone();
        period.rotate_left((n - self.prefix.len()) % self.period.len());
        SymbolSeq {
            prefix: Vec::new(),
            period,
            limit_side: None,
        }
    }

    /// Count of symbols available (usize::MAX for infinite words).
    pub fn available(&self) -> usize {
        self.len().unwrap_or(usize::MAX)
    }
}

impl fmt::Display for SymbolSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.prefix {
            write!(f, "{s}")?;
        }
        if !self.period.is_empty() {
            write!(f, "(")?;
            for &s in &self.period {
                write!(f, "{s}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .filter(|c| !matches!(c, '.' | ' ' | '_'))
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("bad symbol {c:?}"))),
        })
        .collect()
}

impl FromStr for SymbolSeq {
    type Err = Error;

    /// "10(011)" or a plain finite word; dots and spaces are ignored.
    fn from_str(s: &str) -> Result<SymbolSeq> {
        let s = s.trim();
        match s.find('(') {
            None => Ok(SymbolSeq::finite(parse_bits(s)?)),
            Some(open) => {
                let body = s[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unterminated period in {s:?}")))?;
                let period = parse_bits(body)?;
                if period.is_empty() {
                    return Err(Error::Parse("empty period".into()));
                }
                Ok(SymbolSeq::periodic(parse_bits(&s[..open])?, period))
            }
        }
    }
}

impl Serialize for SymbolSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SymbolSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

pub fn word_to_string(w: &[u8]) -> String {
    w.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
}

pub fn ones(w: &[u8]) -> usize {
    w.iter().filter(|&&b| b == 1).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlOrder {
    Less,
    Equal,
    Greater,
    Undecided,
}

impl PlOrder {
    fn from_ordering(o: Ordering) -> PlOrder {
        match o {
            Ordering::Less => PlOrder::Less,
            Ordering::Equal => PlOrder::Equal,
            Ordering::Greater => PlOrder::Greater,
        }
    }
}

/// Parity-lexicographic comparison. Two eventually periodic words are compared
/// exactly (depth is ignored); otherwise at most `depth` symbols are examined.
pub fn parity_lex_compare(u: &SymbolSeq, v: &SymbolSeq, depth: usize) -> PlOrder {
    let bound = if !u.is_finite() && !v.is_finite() {
        u.preperiod().max(v.preperiod()) + lcm(u.period.len(), v.period.len())
    } else {
        u.available().min(v.available()).min(depth)
    };
    let mut odd = false;
    for j in 1..=bound {
        let (a, b) = (u.get(j).unwrap(), v.get(j).unwrap());
        if a != b {
            let o = a.cmp(&b);
            return PlOrder::from_ordering(if odd { o.reverse() } else { o });
        }
        if a == 1 {
            odd = !odd;
        }
    }
    if !u.is_finite() && !v.is_finite() {
        PlOrder::Equal
    } else {
        PlOrder::Undecided
    }
}

/// Itinerary of a point; when the orbit hits the critical point exactly both one-sided
/// words are kept and the parity-lex smaller one is principal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Itinerary {
    pub principal: SymbolSeq,
    pub other: Option<SymbolSeq>,
}

fn symbol_at(c: &ExactScalar, x: &ExactScalar, side: Option<Side>) -> Result<Option<u8>> {
    Ok(match x.cmp_to(c)? {
        Ordering::Less => Some(0),
        Ordering::Greater => Some(1),
        Ordering::Equal => match side {
            Some(Side::Below) => Some(0),
            Some(Side::Above) => Some(1),
            None => None,
        },
    })
}

/// Set when the orbit hits the turning point: side chosen and the discarded one-sided word.
type Split = (Vec<u8>, Option<Side>, Vec<u8>);

fn run_itinerary(
    g: &MapSpec,
    c: &ExactScalar,
    mut x: ExactScalar,
    mut side: Option<Side>,
    mut word: Vec<u8>,
    n: usize,
) -> Result<(Vec<u8>, Option<Split>)> {
    while word.len() < n {
        match symbol_at(c, &x, side)? {
            Some(s) => {
                word.push(s);
                if word.len() < n {
                    (x, side) = g.eval_side(&x, side)?;
                }
            }
            None => {
                let mut lo = word.clone();
                lo.push(0);
                let mut hi = word.clone();
                hi.push(1);
                let (lo, _) = if lo.len() < n {
                    let (y, s) = g.eval_side(&x, Some(Side::Below))?;
                    run_itinerary(g, c, y, s, lo, n)?
                } else {
                    (lo, None)
                };
                let (hi, _) = if hi.len() < n {
                    let (y, s) = g.eval_side(&x, Some(Side::Above))?;
                    run_itinerary(g, c, y, s, hi, n)?
                } else {
                    (hi, None)
                };
                let lw = SymbolSeq::finite(lo.clone());
                let hw = SymbolSeq::finite(hi.clone());
                let (p, side_p, o) = if parity_lex_compare(&hw, &lw, n) == PlOrder::Less {
                    (hi, Side::Above, lo)
                } else {
                    (lo, Side::Below, hi)
                };
                return Ok((p, Some((Vec::new(), Some(side_p), o))));
            }
        }
    }
    Ok((word, None))
}

/// Symbols of x, g(x), …, g^{n−1}(x).
pub fn itinerary(g: &MapSpec, x: &ExactScalar, n: usize) -> Result<Itinerary> {
    let c = g.critical_point()?.clone();
    let (word, fork) = run_itinerary(g, &c, x.clone(), None, Vec::new(), n)?;
    Ok(match fork {
        None => Itinerary {
            principal: SymbolSeq::finite(word),
            other: None,
        },
        Some((_, side, other)) => Itinerary {
            principal: SymbolSeq::finite(word).with_side(side),
            other: Some(SymbolSeq::finite(other).with_side(side.map(Side::flip))),
        },
    })
}

/// ν = lim_{x↗c} itin(g(x)): symbols of c_1, c_2, … approached one-sidedly.
/// Returns an eventually periodic word when an exact state repeats within n steps.
pub fn kneading_sequence(g: &MapSpec, n: usize) -> Result<SymbolSeq> {
    let c = g.critical_point()?.clone();
    let (mut x, mut side) = g.eval_side(&c, Some(Side::Below))?;
    let mut word = Vec::with_capacity(n);
    let mut seen: HashMap<(ExactScalar, Option<Side>), usize> = HashMap::new();
    while word.len() < n {
        if x.is_exact() {
            if let Some(&j) = seen.get(&(x.clone(), side)) {
                let period = word[j..].to_vec();
                word.truncate(j);
                return Ok(SymbolSeq::periodic(word, period).with_side(Some(Side::Below)));
            }
            seen.insert((x.clone(), side), word.len());
        }
        let s = symbol_at(&c, &x, side)?.unwrap_or(0);
        let side_here = if side.is_none() && s == 0 && x.eq_val(&c)? {
            Some(Side::Below)
        } else {
            side
        };
        word.push(s);
        (x, side) = g.eval_side(&x, side_here)?;
    }
    Ok(SymbolSeq::finite(word).with_side(Some(Side::Below)))
}

/// Outcome of the first-disagreement search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoOutcome {
    At(usize),
    /// σⁿ(e) = ν identically (both eventually periodic).
    Never,
    /// Ran out of symbols.
    Unknown,
}

pub fn rho_outcome(e: &SymbolSeq, nu: &SymbolSeq, n: usize) -> RhoOutcome {
    let both_infinite = !e.is_finite() && !nu.is_finite();
    let limit = if both_infinite {
        let pre = e.preperiod().saturating_sub(n).max(nu.preperiod());
        n + pre + lcm(e.period.len(), nu.period.len())
    } else {
        usize::MAX
    };
    let mut k = n + 1;
    while k <= limit {
        match (e.get(k), nu.get(k - n)) {
            (Some(a), Some(b)) if a != b => return RhoOutcome::At(k),
            (Some(_), Some(_)) => k += 1,
            _ => return RhoOutcome::Unknown,
        }
    }
    RhoOutcome::Never
}

/// Smallest k > n with e_k ≠ ν_{k−n}.
pub fn rho(e: &SymbolSeq, nu: &SymbolSeq, n: usize) -> Result<usize> {
    match rho_outcome(e, nu, n) {
        RhoOutcome::At(k) => Ok(k),
        RhoOutcome::Never => Err(Error::DepthExceeded(format!(
            "shift {n} of e coincides with nu"
        ))),
        RhoOutcome::Unknown => Err(Error::DepthExceeded(format!(
            "no disagreement after position {n}"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSeq {
    /// θ_0, θ_1, …
    pub signs: Vec<i8>,
}

/// θ_0 = +1, θ_k = θ_{k−1}·(−1)^{ν_k}, for k ≤ n (or as far as ν reaches).
pub fn theta_signs(nu: &SymbolSeq, n: usize) -> ThetaSeq {
    let mut signs = vec![1i8];
    for s in nu.symbols(n) {
        let last = *signs.last().unwrap();
        signs.push(if s == 1 { -last } else { last });
    }
    ThetaSeq { signs }
}

/// ν^φ_k = (1 − θ_k)/2 for k = 1..n.
pub fn lorenz_recode(nu: &SymbolSeq, n: usize) -> SymbolSeq {
    let th = theta_signs(nu, n);
    SymbolSeq::finite(th.signs[1..].iter().map(|&t| u8::from(t < 0)).collect())
}

/// Exact recoding of an eventually periodic ν (period doubles when the period has an
/// odd number of 1s).
pub fn lorenz_recode_periodic(nu: &SymbolSeq) -> Option<SymbolSeq> {
    if nu.is_finite() {
        return None;
    }
    let (pre, per) = (nu.preperiod(), nu.period.len());
    let w = lorenz_recode(nu, pre + 2 * per).prefix;
    Some(SymbolSeq::periodic(w[..pre].to_vec(), w[pre..].to_vec()))
}

/// ν_1 = ν^φ_1, ν_n = ν^φ_{n−1} XOR ν^φ_n.
pub fn lorenz_decode(nuphi: &SymbolSeq) -> SymbolSeq {
    let decode = |w: &[u8]| -> Vec<u8> {
        let mut prev = 0u8;
        w.iter()
            .map(|&s| {
                let out = prev ^ s;
                prev = s;
                out
            })
            .collect()
    };
    if nuphi.is_finite() {
        return SymbolSeq::finite(decode(&nuphi.prefix));
    }
    let (pre, per) = (nuphi.preperiod(), nuphi.period.len());
    let w = decode(&nuphi.symbols(pre + 1 + per));
    SymbolSeq::periodic(w[..pre + 1].to_vec(), w[pre + 1..].to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Admissibility {
    Yes,
    No,
    Undecided,
}

/// σ(ν) ≤ σⁿ(e) ≤ ν for all n < depth.
pub fn is_admissible(e: &SymbolSeq, nu: &SymbolSeq, depth: usize) -> Admissibility {
    let sigma_nu = nu.shift(1);
    let shifts = if e.is_finite() {
        e.prefix.len()
    } else {
        e.preperiod() + e.period.len()
    };
    let mut undecided = false;
    for n in 0..depth.min(shifts) {
        let s = e.shift(n);
        let lower = parity_lex_compare(&sigma_nu, &s, usize::MAX);
        let upper = parity_lex_compare(&s, nu, usize::MAX);
        if lower == PlOrder::Greater || upper == PlOrder::Greater {
            return Admissibility::No;
        }
        undecided |= lower == PlOrder::Undecided || upper == PlOrder::Undecided;
    }
    if undecided {
        Admissibility::Undecided
    } else {
        Admissibility::Yes
    }
}

/// First n symbols of the Feigenbaum kneading sequence (copy with last symbol flipped).
pub fn feigenbaum_prefix(n: usize) -> SymbolSeq {
    assert!(n <= 1 << 20, "feigenbaum_prefix supports n <= 2^20");
    let mut w = vec![1u8];
    while w.len() < n {
        let mut copy = w.clone();
        *copy.last_mut().unwrap() ^= 1;
        w.extend(copy);
    }
    w.truncate(n);
    SymbolSeq::finite(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::tent_symmetric;

    fn w(s: &str) -> SymbolSeq {
        s.parse().unwrap()
    }

    #[test]
    fn normalization_and_display() {
        assert_eq!(w("10(011)").to_string(), "10(011)");
        assert_eq!(w("10(10)").to_string(), "(10)");
        assert_eq!(w("(1010)").to_string(), "(10)");
        assert_eq!(w("(101)").shift(1), w("(011)"));
        assert_eq!(w("1(0)").get(5), Some(0));
    }

    #[test]
    fn parity_lex_examples() {
        assert_eq!(
            parity_lex_compare(&w("1(0)"), &w("11"), 10),
            PlOrder::Greater
        );
        assert_eq!(
            parity_lex_compare(&w("(101)"), &w("(101)"), 1),
            PlOrder::Equal
        );
        assert_eq!(
            parity_lex_compare(&w("1010"), &w("1011"), 10),
            PlOrder::Less
        );
        assert_eq!(
            parity_lex_compare(&w("101"), &w("101"), 10),
            PlOrder::Undecided
        );
    }

    #[test]
    fn rho_examples() {
        let full = w("1(0)");
        assert_eq!(rho(&full, &full, 1).unwrap(), 2);
        let g = w("(101)");
        assert_eq!(rho(&g, &g, 2).unwrap(), 4);
        assert_eq!(rho_outcome(&g, &g, 3), RhoOutcome::Never);
        let f = feigenbaum_prefix(64);
        assert_eq!(rho(&f, &f, 2).unwrap(), 4);
    }

    #[test]
    fn theta_examples() {
        let t = theta_signs(&w("1(0)"), 4);
        assert_eq!(t.signs, vec![1, -1, -1, -1, -1]);
        let t = theta_signs(&w("(101)"), 6);
        assert_eq!(t.signs, vec![1, -1, -1, 1, -1, -1, 1]);
    }

    #[test]
    fn recode_periodic() {
        assert_eq!(lorenz_recode_periodic(&w("1(0)")).unwrap(), w("(1)"));
        assert_eq!(lorenz_recode_periodic(&w("(101)")).unwrap(), w("(110)"));
        assert_eq!(lorenz_decode(&w("(110)")), w("(101)"));
        let odd = w("(1)");
        let r = lorenz_recode_periodic(&odd).unwrap();
        assert_eq!(r, w("(10)"));
        assert_eq!(lorenz_decode(&r), odd);
    }

    #[test]
    fn admissibility_examples() {
        assert_eq!(
            is_admissible(&w("(100)"), &w("1(0)"), 10),
            Admissibility::Yes
        );
        assert_eq!(
            is_admissible(&w("(100)"), &w("(101)"), 10),
            Admissibility::No
        );
        assert_eq!(
            is_admissible(&w("(110)"), &w("(101)"), 10),
            Admissibility::Yes
        );
        let nu = w("(101)");
        assert_eq!(is_admissible(&nu, &nu, 10), Admissibility::Yes);
    }

    #[test]
    fn feigenbaum() {
        assert_eq!(feigenbaum_prefix(8).to_string(), "10111010");
        assert_eq!(feigenbaum_prefix(2).to_string(), "10");
        assert_eq!(feigenbaum_prefix(16).to_string(), "1011101010111011");
    }

    #[test]
    fn itineraries() {
        let f = tent_symmetric("2".parse().unwrap()).unwrap();
        let it = itinerary(&f, &"1/3".parse().unwrap(), 4).unwrap();
        assert_eq!(it.principal.to_string(), "0111");
        assert!(it.other.is_none());
        let k = kneading_sequence(&f, 20).unwrap();
        assert_eq!(k.to_string(), "1(0)");
        let g = tent_symmetric(ExactScalar::golden()).unwrap();
        assert_eq!(kneading_sequence(&g, 30).unwrap().to_string(), "(101)");
        // exact hit of c splits into two one-sided words
        let it = itinerary(&g, &"1/2".parse().unwrap(), 6).unwrap();
        let other = it.other.clone().unwrap();
        assert_ne!(it.principal.prefix[0], other.prefix[0]);
        assert_eq!(parity_lex_compare(&it.principal, &other, 6), PlOrder::Less);
    }
}
