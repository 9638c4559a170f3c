//! Rotational sequences and finite-depth Sturmian checks.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::symbolic::SymbolSeq;

/// Which endpoint of the coding window [0, α] is included.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Window {
    /// [0, α)
    ClosedOpen,
    /// (0, α]
    OpenClosed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationalSeq {
    pub alpha: ExactScalar,
    pub beta: ExactScalar,
    pub window: Window,
    pub word: SymbolSeq,
}

fn in_window(x: &ExactScalar, alpha: &ExactScalar, window: Window) -> Result<bool> {
    match window {
        Window::ClosedOpen => x.lt(alpha),
        Window::OpenClosed => Ok(!x.is_zero()? && x.le(alpha)?),
    }
}

/// u_k = 1 iff R_α^k(β) lies in [0, α), k = 0..n−1.
pub fn rotational_sequence(alpha: &ExactScalar, beta: &ExactScalar, n: usize) -> Result<SymbolSeq> {
    rotational_sequence_window(alpha, beta, n, Window::ClosedOpen)
}

/// As [`rotational_sequence`] with a chosen window. For rational α an orbit point
/// landing on 0 or α (after the start) is reported as `BoundaryHit` carrying the two
/// one-sided words (start perturbed down, start perturbed up).
pub fn rotational_sequence_window(
    alpha: &ExactScalar,
    beta: &ExactScalar,
    n: usize,
    window: Window,
) -> Result<SymbolSeq> {
    if !(alpha.gt(&ExactScalar::zero())? && alpha.lt(&ExactScalar::one())?) {
        return Err(Error::ParameterOutOfRange {
            what: "rotation angle".into(),
            value: alpha.to_string(),
        });
    }
    let rational = alpha.as_rational().is_some() && beta.as_rational().is_some();
    let mut x = beta.rem_int(1)?;
    let mut word = Vec::with_capacity(n);
    let mut boundary: Vec<(usize, bool)> = Vec::new();
    let mut first_hit = None;
    for k in 0..n {
        word.push(u8::from(in_window(&x, alpha, window)?));
        if rational {
            let at_zero = x.is_zero()?;
            if at_zero || x.eq_val(alpha)? {
                boundary.push((k, at_zero));
                if k >= 1 && first_hit.is_none() {
                    first_hit = Some(k + 1);
                }
            }
        }
        x = (&x + alpha).rem_int(1)?;
    }
    if let Some(position) = first_hit {
        let mut lower = word.clone();
        let mut upper = word.clone();
        for (k, at_zero) in boundary {
            lower[k] = u8::from(!at_zero);
            upper[k] = u8::from(at_zero);
        }
        return Err(Error::BoundaryHit {
            position,
            lower: SymbolSeq::finite(lower),
            upper: SymbolSeq::finite(upper),
        });
    }
    Ok(SymbolSeq::finite(word))
}

fn expand(w: &SymbolSeq, min_len: usize) -> Vec<u8> {
    if w.is_finite() {
        w.prefix.clone()
    } else {
        w.symbols(min_len.max(w.preperiod() + 2 * w.period.len()))
    }
}

/// 1-counts of equal-length factors differ by at most one, for lengths up to `maxlen`.
pub fn is_balanced(w: &SymbolSeq, maxlen: usize) -> bool {
    let s = expand(w, w.preperiod() + w.period.len() * (maxlen + 2) + maxlen);
    let mut prefix = vec![0usize; s.len() + 1];
    for (i, &b) in s.iter().enumerate() {
        prefix[i + 1] = prefix[i] + b as usize;
    }
    (1..=maxlen.min(s.len())).all(|l| {
        let counts = (0..=s.len() - l).map(|i| prefix[i + l] - prefix[i]);
        let (lo, hi) = counts.fold((usize::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
        hi - lo <= 1
    })
}

/// Number of distinct factors of each length 1..=maxlen. Finite words must have at
/// least 10·maxlen symbols.
pub fn factor_complexity(w: &SymbolSeq, maxlen: usize) -> Result<Vec<usize>> {
    let need = 10 * maxlen;
    if let Some(got) = w.len() {
        if got < need {
            return Err(Error::InsufficientLength { need, got });
        }
    }
    let s = expand(w, need.max(w.preperiod() + w.period.len() * (maxlen + 2)));
    Ok((1..=maxlen)
        .map(|l| s.windows(l).collect::<HashSet<_>>().len())
        .collect())
}

/// Complexity ℓ + 1 for every ℓ ≤ maxlen and balanced.
pub fn is_sturmian_prefix(w: &SymbolSeq, maxlen: usize) -> Result<bool> {
    let p = factor_complexity(w, maxlen)?;
    Ok(p.iter().enumerate().all(|(i, &c)| c == i + 2) && is_balanced(w, maxlen))
}

/// Fixed point of 0 ↦ 01, 1 ↦ 0, truncated to n symbols.
pub fn fibonacci_word(n: usize) -> SymbolSeq {
    let (mut a, mut b) = (vec![0u8], vec![0u8, 1]);
    while b.len() < n {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = std::mem::replace(&mut b, next);
    }
    b.truncate(n);
    SymbolSeq::finite(b)
}

pub fn complexity_csv(p: &[usize]) -> String {
    let mut out = String::from("l,p\n");
    for (i, c) in p.iter().enumerate() {
        out.push_str(&format!("{},{c}\n", i + 1));
    }
    out
}
