use serde::Serialize;

use super::SchemeError;
use crate::pda::Pda;
use crate::Rational;

/// Worst-case load of the scheme for one profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RateReport {
    pub num_transmissions: usize,
    /// `Σ_s 𝓛_{τ_s} / (F − Z)`.
    #[serde(serialize_with = "crate::serialize_rational")]
    pub rate: Rational,
    /// `𝓛_{τ_s}` for `s = 1..=S`.
    pub per_s_multiplicity: Vec<usize>,
}

/// `R_s = Σ_{s ∈ [S]} 𝓛_{τ_s} / (F − Z)` where `τ_s` is the first column
/// holding `s`. `profile[λ]` is the load of PDA column `λ` and must be
/// nonincreasing.
pub fn rate(pda: &Pda, profile: &[usize]) -> Result<RateReport, SchemeError> {
    if profile.len() != pda.num_caches() {
        return Err(SchemeError::CacheCount {
            pda: pda.num_caches(),
            config: profile.len(),
        });
    }
    if profile.windows(2).any(|w| w[0] < w[1]) {
        return Err(SchemeError::UnsortedProfile);
    }
    let per_s_multiplicity: Vec<usize> = (1..=pda.num_ints() as u32)
        .map(|s| profile[pda.tau(s)])
        .collect();
    let num_transmissions = per_s_multiplicity.iter().sum();
    Ok(RateReport {
        num_transmissions,
        rate: Rational::new(
            num_transmissions as i64,
            (pda.rows() - pda.stars()) as i64,
        ),
        per_s_multiplicity,
    })
}
