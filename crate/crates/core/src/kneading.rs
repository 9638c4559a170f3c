//! Hofbauer tower, cutting and co-cutting times, kneading maps and closest precritical
//! points.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{Formula, MapSpec, Side};
use crate::scalar::ExactScalar;
use crate::symbolic::{rho_outcome, RhoOutcome, SymbolSeq};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerLevel {
    pub n: usize,
    pub interval: (ExactScalar, ExactScalar),
    pub is_cutting: bool,
}

/// Whether c lies in the level whose free endpoint is approached from `side`.
fn level_contains(
    c: &ExactScalar,
    fixed: &ExactScalar,
    free: &ExactScalar,
    side: Option<Side>,
) -> Result<bool> {
    let fx = fixed.cmp_to(c)?;
    Ok(match free.cmp_to(c)? {
        Ordering::Equal => match side {
            Some(Side::Below) => fx != Ordering::Less,
            Some(Side::Above) => fx != Ordering::Greater,
            None => true,
        },
        Ordering::Less => fx != Ordering::Less,
        Ordering::Greater => fx != Ordering::Greater,
    })
}

/// Levels D_1..D_N: D_1 = [c, c_1]; D_{n+1} = [c_{n+1}, c_1] if c ∈ D_n, else f(D_n).
/// The free endpoint c_n carries its approach side.
pub fn hofbauer_levels(f: &MapSpec, n_max: usize) -> Result<Vec<TowerLevel>> {
    let c = f.critical_point()?.clone();
    let (c1, side1) = f.eval_side(&c, Some(Side::Below))?;
    let (mut free, mut side) = (c1.clone(), side1);
    let mut fixed = c.clone();
    let mut levels = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let cutting = n == 1 || level_contains(&c, &fixed, &free, side)?;
        let interval = if fixed.le(&free)? {
            (fixed.clone(), free.clone())
        } else {
            (free.clone(), fixed.clone())
        };
        levels.push(TowerLevel {
            n,
            interval,
            is_cutting: cutting,
        });
        if n == n_max {
            break;
        }
        fixed = if cutting { c1.clone() } else { f.eval(&fixed)? };
        (free, side) = f.eval_side(&free, side)?;
    }
    Ok(levels)
}

pub fn cutting_set(levels: &[TowerLevel]) -> Vec<usize> {
    levels
        .iter()
        .filter(|l| l.is_cutting)
        .map(|l| l.n)
        .collect()
}

/// Eventual structure of the cutting times of an eventually periodic ν.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CuttingStructure {
    /// S_{k+dk} = S_k + ds for all k ≥ k0.
    Cycle {
        k0: usize,
        dk: usize,
        ds: usize,
        sup_q: usize,
    },
    /// Only finitely many cutting times exist; `last` is the final one.
    Finite { last: usize, sup_q: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuttingData {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    #[serde(rename = "Shat")]
    pub shat: Vec<usize>,
    /// Q[i] = Q(i + 1), i.e. S_{i+1} − S_i = S_{Q[i]}.
    #[serde(rename = "Q")]
    pub q: Vec<usize>,
    /// Qhat[i] = Q̂(i + 1), i.e. Ŝ_{i+1} − Ŝ_i = S_{Qhat[i]}.
    #[serde(rename = "Qhat")]
    pub qhat: Vec<usize>,
    pub depth: usize,
    pub kappa: Option<usize>,
    pub structure: Option<CuttingStructure>,
}

fn iterate_rho(nu: &SymbolSeq, start: usize, depth: usize) -> (Vec<usize>, bool) {
    let mut out = vec![start];
    loop {
        match rho_outcome(nu, nu, *out.last().unwrap()) {
            RhoOutcome::At(k) if k <= depth => out.push(k),
            RhoOutcome::Never => return (out, true),
            _ => return (out, false),
        }
    }
}

/// Kneading map values for consecutive differences of `times`, looked up in `s`.
pub fn kneading_map(s: &[usize], times: &[usize]) -> Result<Vec<usize>> {
    times
        .windows(2)
        .map(|w| {
            let d = w[1] - w[0];
            s.binary_search(&d).map_err(|_| {
                Error::InvalidCuttingSequence(format!(
                    "gap {d} between {} and {} is not a cutting time",
                    w[0], w[1]
                ))
            })
        })
        .collect()
}

/// Exact eventual structure of S for an eventually periodic ν (None for finite words).
pub fn cutting_structure(nu: &SymbolSeq) -> Result<Option<CuttingStructure>> {
    if nu.is_finite() {
        return Ok(None);
    }
    let (pre, per) = (nu.preperiod(), nu.period.len());
    let mut s = vec![1usize];
    let mut seen: HashMap<usize, usize> = HashMap::new();
    loop {
        let k = s.len() - 1;
        let sk = s[k];
        if sk >= pre {
            if let Some(&j) = seen.get(&((sk - pre) % per)) {
                let sup_q = kneading_map(&s, &s)?.into_iter().max().unwrap_or(0);
                return Ok(Some(CuttingStructure::Cycle {
                    k0: j,
                    dk: k - j,
                    ds: sk - s[j],
                    sup_q,
                }));
            }
            seen.insert((sk - pre) % per, k);
        }
        match rho_outcome(nu, nu, sk) {
            RhoOutcome::At(n) => s.push(n),
            RhoOutcome::Never => {
                let sup_q = kneading_map(&s, &s)?.into_iter().max().unwrap_or(0);
                return Ok(Some(CuttingStructure::Finite { last: sk, sup_q }));
            }
            RhoOutcome::Unknown => unreachable!("infinite words never run out"),
        }
    }
}

/// S by iterating ρ from 1, Ŝ from κ (first j > 1 with ν_j = 1); times ≤ depth.
pub fn cutting_data_symbolic(nu: &SymbolSeq, depth: usize) -> Result<CuttingData> {
    let depth = depth.min(nu.available());
    if depth < 1 || nu.get(1) != Some(1) {
        return Err(Error::DepthExceeded(
            "kneading sequence must start with 1".into(),
        ));
    }
    let (s, _) = iterate_rho(nu, 1, depth);
    let kappa = (2..=depth).find(|&j| nu.get(j) == Some(1));
    let shat = match kappa {
        Some(k) => iterate_rho(nu, k, depth).0,
        None => Vec::new(),
    };
    let q = kneading_map(&s, &s)?;
    let qhat = kneading_map(&s, &shat)?;
    Ok(CuttingData {
        s,
        shat,
        q,
        qhat,
        depth,
        kappa,
        structure: cutting_structure(nu)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum LongBranched {
    /// Q is bounded; `sup_q` is exact.
    True { sup_q: usize },
    /// Only a finite-depth supremum is known.
    Unknown { depth: usize, sup_q: usize },
}

pub fn is_long_branched(data: &CuttingData) -> LongBranched {
    match &data.structure {
        Some(CuttingStructure::Cycle { sup_q, .. })
        | Some(CuttingStructure::Finite { sup_q, .. }) => LongBranched::True { sup_q: *sup_q },
        None => LongBranched::Unknown {
            depth: data.depth,
            sup_q: data.q.iter().copied().max().unwrap_or(0),
        },
    }
}

/// CSV rows k,S,Q,Shat,Qhat (blank where a column has run out).
pub fn cutting_csv(data: &CuttingData) -> String {
    let mut out = String::from("k,S,Q,Shat,Qhat\n");
    let rows = data.s.len().max(data.shat.len());
    let cell = |v: Option<&usize>| v.map(|x| x.to_string()).unwrap_or_default();
    for k in 0..rows {
        let q = if k == 0 { None } else { data.q.get(k - 1) };
        let qh = if k == 0 { None } else { data.qhat.get(k - 1) };
        out.push_str(&format!(
            "{k},{},{},{},{}\n",
            cell(data.s.get(k)),
            cell(q),
            cell(data.shat.get(k)),
            cell(qh)
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecriticalLadder {
    pub zetas: Vec<ExactScalar>,
    pub orders: Vec<usize>,
}

fn branch_parts(f: &MapSpec, x: &ExactScalar) -> Result<(ExactScalar, ExactScalar)> {
    let i = f.locate(x)?;
    match &f.pieces[i].formula {
        Formula::Affine { slope, intercept } => Ok((slope.clone(), intercept.clone())),
        _ => Err(Error::Unsupported(
            "closest precritical points need affine branches".into(),
        )),
    }
}

/// ζ_0 < ζ_1 < … < c with f^{S_k}(ζ_k) = c, read off the lap of fⁿ adjacent to c on the left.
pub fn closest_precriticals(f: &MapSpec, k_max: usize) -> Result<PrecriticalLadder> {
    const MAX_STEPS: usize = 1 << 20;
    let c = f.critical_point()?.clone();
    let two = ExactScalar::from(2);
    let left = &f.pieces[f.locate_limit(&c, Side::Below)?];
    let mut lo = left.span.lo.clone();
    let (mut s, mut t) = branch_parts(f, &(&(&lo + &c) / &two))?;
    let mut ladder = PrecriticalLadder {
        zetas: Vec::new(),
        orders: Vec::new(),
    };
    let mut n = 1usize;
    while ladder.zetas.len() < k_max {
        if n > MAX_STEPS {
            return Err(Error::DepthExceeded(format!(
                "no cutting time below {MAX_STEPS}"
            )));
        }
        let a = &(&s * &lo) + &t;
        let b = &(&s * &c) + &t;
        let strictly = (a.lt(&c)? && b.gt(&c)?) || (a.gt(&c)? && b.lt(&c)?);
        if strictly {
            let zeta = &(&c - &t) / &s;
            ladder.zetas.push(zeta.clone());
            ladder.orders.push(n);
            lo = zeta;
        }
        let mid = &(&s * &(&(&lo + &c) / &two)) + &t;
        let (s2, t2) = branch_parts(f, &mid)?;
        t = &(&s2 * &t) + &t2;
        s = &s2 * &s;
        n += 1;
    }
    for (z, &k) in ladder.zetas.iter().zip(&ladder.orders) {
        if !f.iterate(z, k)?.eq_val(&c)? {
            return Err(Error::Unsupported(format!(
                "ladder check failed at order {k}"
            )));
        }
    }
    Ok(ladder)
}

/// Membership in Υ_j = (ζ_{j−1}, ζ_j] ∪ [1 − ζ_j, 1 − ζ_{j−1}), with ζ_{−1} = 0
/// (reflection x ↦ 1 − x, so for symmetric maps).
pub fn in_upsilon(ladder: &PrecriticalLadder, j: usize, x: &ExactScalar) -> Result<bool> {
    let one = ExactScalar::one();
    let prev = if j == 0 {
        ExactScalar::zero()
    } else {
        ladder.zetas[j - 1].clone()
    };
    let cur = &ladder.zetas[j];
    let left = x.gt(&prev)? && x.le(cur)?;
    let right = x.ge(&(&one - cur))? && x.lt(&(&one - &prev))?;
    Ok(left || right)
}
