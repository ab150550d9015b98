//! Secretive coded caching over shared helper caches, driven by placement
//! delivery arrays.
//!
//! A server holds `N` files and serves `K` users through `Λ` helper caches.
//! Each user attaches to one helper cache and also owns a private cache of
//! one file. Files are secret-shared before placement, so no helper cache
//! learns anything about any file. Every broadcast is padded with a key held
//! only by its intended users, so no user learns anything about a file it
//! did not ask for.
//!
//! ```
//! use secretive_caching::pda::example_pda;
//! use secretive_caching::scheme::{DeliveryOptions, Library, Session, SystemConfig};
//! use secretive_caching::gfmds::FieldSpec;
//!
//! let pda = example_pda();
//! let config = SystemConfig::for_pda(&pda, 21, 21, 64, FieldSpec::gf256(), 7);
//! let library = Library::synthetic(21, 64, 7).unwrap();
//! // 6, 5, 4, 3, 2 and 1 users on caches 0..6.
//! let assignment: Vec<usize> = [6, 5, 4, 3, 2, 1]
//!     .iter()
//!     .enumerate()
//!     .flat_map(|(c, &n)| std::iter::repeat(c).take(n))
//!     .collect();
//! let mut session = Session::from_library(&pda, &config, &library, &assignment).unwrap();
//! let demands: Vec<usize> = (0..21).collect();
//! assert_eq!(session.deliver(&demands, DeliveryOptions::default()).unwrap().len(), 20);
//! assert_eq!(session.decode_bytes(4).unwrap(), library.file(4));
//! ```

pub mod bounds;
pub mod gfmds;
pub mod pda;
pub mod scheme;
pub mod secrecy;

use serde::Serializer;
use thiserror::Error;

/// Exact rational used for memories and rates.
pub type Rational = num_rational::Ratio<i64>;

/// Serializes a rational as `"p/q"` (or `"p"` when integral).
pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn serialize_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => serialize_rational(r, s),
        None => s.serialize_none(),
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"2.5"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let q: i64 = q.trim().parse().ok()?;
        let p: i64 = p.trim().parse().ok()?;
        return (q != 0).then(|| Rational::new(p, q));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let denom = 10i64.pow(frac.len() as u32);
        let negative = int.starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().ok()? };
        let frac: i64 = frac.parse().ok()?;
        let magnitude = int.abs().checked_mul(denom)?.checked_add(frac)?;
        return Some(Rational::new(if negative { -magnitude } else { magnitude }, denom));
    }
    text.parse::<i64>().ok().map(Rational::from)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] gfmds::GfError),
    #[error(transparent)]
    Pda(#[from] pda::PdaError),
    #[error(transparent)]
    Scheme(#[from] scheme::SchemeError),
    #[error(transparent)]
    Secrecy(#[from] secrecy::SecrecyError),
    #[error(transparent)]
    Bounds(#[from] bounds::BoundsError),
}

pub use bounds::{cutset_bound, optimality_ratio, sweep, BoundQuery, Sweep, SweepPoint};
pub use gfmds::{Field, FieldSpec, SecretSharing, ShareVector};
pub use pda::{mn_pda, Pda, PdaEntry, PdaParams};
pub use scheme::{DeliveryOptions, Library, RateReport, Session, SystemConfig};
pub use secrecy::{audit_session, Observer, Scope, SecrecyAudit, SecrecyVerdict};
