//! Cut-set lower bound, optimality gap and rate–memory sweeps.

use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::pda::{mn_pda, Pda, PdaError};
use crate::scheme::{memory_for_pda, rate, SchemeError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("user index s = {s} outside 1..={k}")]
    UserOutOfRange { s: usize, k: usize },
    #[error("association profile must be nonempty and nonincreasing")]
    Profile,
    #[error("user memory M_U = {0} is below one file")]
    UserMemory(Rational),
    #[error("helper memory M = {0} is negative")]
    NegativeMemory(Rational),
    #[error("PDA has {pda} caches but the profile has {profile}")]
    CacheCount { pda: usize, profile: usize },
    #[error(transparent)]
    Pda(#[from] PdaError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// Cache (1-based) of the `s`-th user when users are listed cache by cache
/// in profile order: the least `λ` with `𝓛_1 + … + 𝓛_λ ≥ s`.
pub fn lambda_of_s(profile: &[usize], s: usize) -> Result<usize, BoundsError> {
    let k: usize = profile.iter().sum();
    if s == 0 || s > k {
        return Err(BoundsError::UserOutOfRange { s, k });
    }
    let mut acc = 0;
    for (i, &l) in profile.iter().enumerate() {
        acc += l;
        if acc >= s {
            return Ok(i + 1);
        }
    }
    unreachable!("s ≤ K")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuery {
    pub num_files: usize,
    /// `M`, helper-cache size in files.
    pub memory: Rational,
    /// `M_U`, per-user cache size in files.
    pub user_memory: Rational,
    /// Nonincreasing association profile; sums to `K`.
    pub profile: Vec<usize>,
}

impl BoundQuery {
    pub fn new(
        num_files: usize,
        memory: Rational,
        user_memory: Rational,
        profile: Vec<usize>,
    ) -> Result<Self, BoundsError> {
        if profile.is_empty() || profile.windows(2).any(|w| w[0] < w[1]) || profile[0] == 0 {
            return Err(BoundsError::Profile);
        }
        if user_memory < Rational::from(1) {
            return Err(BoundsError::UserMemory(user_memory));
        }
        if memory.is_negative() {
            return Err(BoundsError::NegativeMemory(memory));
        }
        Ok(Self {
            num_files,
            memory,
            user_memory,
            profile,
        })
    }

    pub fn num_users(&self) -> usize {
        self.profile.iter().sum()
    }

    fn s_range(&self) -> std::ops::RangeInclusive<usize> {
        1..=(self.num_files / 2).min(self.num_users())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutsetBound {
    #[serde(serialize_with = "crate::serialize_rational")]
    pub value: Rational,
    /// Maximising `s`, if any term is positive.
    pub best_s: Option<usize>,
    pub note: Option<String>,
}

/// `(s⌊N/s⌋ − 1 − (λ_s − 1)M − (s − 1)M_U) / (⌊N/s⌋ − 1)`.
pub fn cutset_term(q: &BoundQuery, s: usize) -> Result<Rational, BoundsError> {
    let lambda = lambda_of_s(&q.profile, s)? as i64;
    let blocks = (q.num_files / s) as i64;
    let s = s as i64;
    let numer = Rational::from(s * blocks - 1)
        - Rational::from(lambda - 1) * q.memory
        - Rational::from(s - 1) * q.user_memory;
    Ok(numer / Rational::from(blocks - 1))
}

/// The same term written for `M_U = 1`: `s − (λ_s − 1)M / (⌊N/s⌋ − 1)`.
pub fn unit_user_memory_term(q: &BoundQuery, s: usize) -> Result<Rational, BoundsError> {
    let lambda = lambda_of_s(&q.profile, s)? as i64;
    let blocks = (q.num_files / s) as i64;
    Ok(Rational::from(s as i64) - Rational::from(lambda - 1) * q.memory / Rational::from(blocks - 1))
}

/// Maximum of [`cutset_term`] over `1 ≤ s ≤ min(⌊N/2⌋, K)`, clamped at 0.
pub fn cutset_bound(q: &BoundQuery) -> CutsetBound {
    if q.num_files < 2 {
        return CutsetBound {
            value: Rational::zero(),
            best_s: None,
            note: Some("N < 2: no admissible s".into()),
        };
    }
    let mut best = CutsetBound {
        value: Rational::zero(),
        best_s: None,
        note: None,
    };
    for s in q.s_range() {
        let term = cutset_term(q, s).expect("s within 1..=K");
        if term > best.value {
            best.value = term;
            best.best_s = Some(s);
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalityReport {
    #[serde(serialize_with = "crate::serialize_rational")]
    pub rate: Rational,
    pub bound: CutsetBound,
    /// `rate / bound`; absent when the bound is 0.
    #[serde(serialize_with = "crate::serialize_opt_rational")]
    pub ratio: Option<Rational>,
    /// `N ≥ 2K`, where the gap is guaranteed to be at most `Λ`.
    pub in_regime: bool,
}

/// Gap between the PDA scheme and the cut-set bound at the PDA's memory
/// point, with `M_U = 1`.
pub fn optimality_ratio(
    pda: &Pda,
    num_files: usize,
    profile: &[usize],
) -> Result<OptimalityReport, BoundsError> {
    if profile.len() != pda.num_caches() {
        return Err(BoundsError::CacheCount {
            pda: pda.num_caches(),
            profile: profile.len(),
        });
    }
    let q = BoundQuery::new(
        num_files,
        memory_for_pda(pda, num_files),
        Rational::from(1),
        profile.to_vec(),
    )?;
    let rate = rate(pda, profile)?.rate;
    let bound = cutset_bound(&q);
    let ratio = (!bound.value.is_zero()).then(|| rate / bound.value);
    Ok(OptimalityReport {
        rate,
        bound,
        ratio,
        in_regime: num_files >= 2 * q.num_users(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepPoint {
    #[serde(serialize_with = "crate::serialize_rational")]
    pub memory: Rational,
    #[serde(serialize_with = "crate::serialize_rational")]
    pub rate_achievable: Rational,
    #[serde(serialize_with = "crate::serialize_rational")]
    pub rate_lower_bound: Rational,
    pub subpacketization: usize,
    pub pda_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub num_files: usize,
    pub profile: Vec<usize>,
    /// Sorted by `M`, one point per distinct `M`.
    pub points: Vec<SweepPoint>,
    /// Every PDA point before duplicates were collapsed, sorted the same way.
    pub candidates: Vec<SweepPoint>,
}

pub const BASELINE_ID: &str = "m0-baseline";

/// One point per PDA plus the `M = 0` baseline (rate `K`). `profile` may be
/// in any order; it is sorted nonincreasing first. Points sharing an `M`
/// keep the lowest rate (then the lowest `F`).
pub fn sweep(
    num_files: usize,
    profile: &[usize],
    pdas: &[(String, Pda)],
) -> Result<Sweep, BoundsError> {
    let mut profile = profile.to_vec();
    profile.sort_unstable_by(|a, b| b.cmp(a));
    let query = |memory| BoundQuery::new(num_files, memory, Rational::from(1), profile.clone());
    let k = profile.iter().sum::<usize>() as i64;
    let baseline = SweepPoint {
        memory: Rational::zero(),
        rate_achievable: Rational::from(k),
        rate_lower_bound: cutset_bound(&query(Rational::zero())?).value,
        subpacketization: 1,
        pda_id: BASELINE_ID.to_string(),
    };
    let mut points = pdas
        .par_iter()
        .map(|(id, pda)| {
            if pda.num_caches() != profile.len() {
                return Err(BoundsError::CacheCount {
                    pda: pda.num_caches(),
                    profile: profile.len(),
                });
            }
            let memory = memory_for_pda(pda, num_files);
            Ok(SweepPoint {
                memory,
                rate_achievable: rate(pda, &profile)?.rate,
                rate_lower_bound: cutset_bound(&query(memory)?).value,
                subpacketization: pda.rows(),
                pda_id: id.clone(),
            })
        })
        .collect::<Result<Vec<_>, BoundsError>>()?;
    points.push(baseline);
    points.sort_by(|a, b| {
        (a.memory, a.rate_achievable, a.subpacketization)
            .cmp(&(b.memory, b.rate_achievable, b.subpacketization))
    });
    let candidates = points.clone();
    points.dedup_by(|later, earlier| later.memory == earlier.memory);
    Ok(Sweep {
        num_files,
        profile,
        points,
        candidates,
    })
}

impl Sweep {
    /// Indices of the points on the lower convex envelope of `(M, rate)`.
    pub fn envelope(&self) -> Vec<usize> {
        let mut hull: Vec<usize> = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            while hull.len() >= 2 {
                let a = &self.points[hull[hull.len() - 2]];
                let b = &self.points[hull[hull.len() - 1]];
                // Drop b unless it lies strictly below the chord a→p.
                let cross = (b.memory - a.memory) * (p.rate_achievable - a.rate_achievable)
                    - (b.rate_achievable - a.rate_achievable) * (p.memory - a.memory);
                if cross <= Rational::zero() {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(i);
        }
        hull
    }

    /// Memory-sharing rate at `memory` along the envelope, if `memory` lies
    /// within the swept range.
    pub fn interpolate(&self, memory: Rational) -> Option<Rational> {
        let hull = self.envelope();
        hull.windows(2)
            .map(|w| (&self.points[w[0]], &self.points[w[1]]))
            .find(|(a, b)| a.memory <= memory && memory <= b.memory)
            .map(|(a, b)| {
                let t = (memory - a.memory) / (b.memory - a.memory);
                a.rate_achievable + t * (b.rate_achievable - a.rate_achievable)
            })
            .or_else(|| {
                let only = &self.points[hull[0]];
                (hull.len() == 1 && only.memory == memory).then_some(only.rate_achievable)
            })
    }

    pub fn to_csv(&self) -> String {
        csv(&self.points)
    }

    /// Like [`Sweep::to_csv`] but with every candidate row.
    pub fn candidates_csv(&self) -> String {
        csv(&self.candidates)
    }
}

fn csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("M,rate_achievable,rate_lower_bound,F,pda_id\n");
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{}",
            decimal(p.memory),
            decimal(p.rate_achievable),
            decimal(p.rate_lower_bound),
            p.subpacketization,
            p.pda_id
        )
        .expect("writing to a String");
    }
    out
}

/// Decimal with at most six fractional digits, rounded half away from zero,
/// trailing zeros dropped.
pub fn decimal(r: Rational) -> String {
    const SCALE: i64 = 1_000_000;
    let negative = r.is_negative();
    let r = r.abs();
    let (mut int, rem) = r.numer().div_rem(r.denom());
    let mut frac = ((i128::from(rem) * i128::from(SCALE) * 2 + i128::from(*r.denom()))
        / (2 * i128::from(*r.denom()))) as i64;
    if frac == SCALE {
        int += 1;
        frac = 0;
    }
    let sign = if negative && (int != 0 || frac != 0) { "-" } else { "" };
    if frac == 0 {
        format!("{sign}{int}")
    } else {
        let digits = format!("{frac:06}");
        format!("{sign}{int}.{}", digits.trim_end_matches('0'))
    }
}

/// Every MN PDA for `Λ` caches, `t = 1..Λ−1`, labelled `mn:Λ,t`.
pub fn mn_family(num_caches: usize) -> Result<Vec<(String, Pda)>, BoundsError> {
    (1..num_caches)
        .map(|t| Ok((format!("mn:{num_caches},{t}"), mn_pda(num_caches, t)?)))
        .collect()
}
