//! The four-phase secretive scheme for a shared-cache network.
//!
//! 1. **Helper-cache placement**: every file is split into `F − Z`
//!    subfiles, padded with `Z` random vectors and encoded into `F` shares.
//!    Cache `λ` stores share `j` of every file whenever PDA entry `(j, λ)`
//!    is a star.
//! 2. **Association**: users attach to caches; caches are relabelled so the
//!    profile is nonincreasing.
//! 3. **User-cache placement**: the PDA is expanded into the `F × K` array
//!    `G` of pairs `(s, i)`; one one-time pad per distinct pair is generated
//!    and each user stores the `F − Z` pads named in its column.
//! 4. **Delivery**: for each distinct pair the server broadcasts the pad
//!    XORed with every share the pair marks in `G`.

mod association;
mod baseline;
mod decode;
mod delivery;
mod garray;
mod library;
mod placement;
mod rate;
mod session;

pub use association::{associate, Association};
pub use baseline::{baseline_rate_m0, BaselineReport, BaselineSession};
pub use decode::UserView;
pub use delivery::{deliver, DeliveryOptions, Transmission};
pub use garray::{build_g_array, GArray, GEntry, Pair};
pub use library::{bytes_to_symbols, symbols_to_bytes, FileLayout, Library};
pub use placement::{
    helper_placement, user_key_placement, FixedSource, HelperPlacement, KeyPlacement,
    RandomSource, RngSource,
};
pub use rate::{rate, RateReport};
pub use session::Session;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::gfmds::{FieldSpec, GfError};
use crate::pda::{Pda, PdaError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Pda(#[from] PdaError),
    #[error("PDA memory ratio Z/F = {z}/{f} does not equal M/(M+N) = {ratio} (M = {memory}, N = {files})")]
    MemoryRatio {
        z: usize,
        f: usize,
        memory: Rational,
        files: usize,
        ratio: Rational,
    },
    #[error("user memory M_U = {0} is below one file; secrecy within a shared cache is impossible")]
    UserMemory(Rational),
    #[error("helper memory must be nonnegative, got {0}")]
    NegativeMemory(Rational),
    #[error("PDA has {pda} columns but the system has {config} helper caches")]
    CacheCount { pda: usize, config: usize },
    #[error("expected {expected} files, got {got}")]
    FileCount { expected: usize, got: usize },
    #[error("file {index} has {got} bytes, expected {expected}")]
    FileLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("expected {expected} users, got {got}")]
    UserCount { expected: usize, got: usize },
    #[error("user {user} assigned to cache {cache}, only {num_caches} caches exist")]
    CacheOutOfRange {
        user: usize,
        cache: usize,
        num_caches: usize,
    },
    #[error("user {user} demands file {demand}, library has {num_files} files")]
    DemandOutOfRange {
        user: usize,
        demand: usize,
        num_files: usize,
    },
    #[error("association profile must be nonincreasing")]
    UnsortedProfile,
    #[error("delivery has not run")]
    NotDelivered,
    #[error("no transmission for pair {0}")]
    MissingTransmission(Pair),
    #[error("user {user} holds no key for pair {pair}")]
    MissingKey { user: usize, pair: Pair },
    #[error("user {user} cannot read share {row} of file {file} from its helper cache")]
    ShareNotCached { user: usize, file: usize, row: usize },
    #[error("{0}")]
    Io(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

/// A `(Λ, K, M, N)` shared caching problem plus the simulation knobs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemConfig {
    pub num_caches: usize,
    pub num_users: usize,
    /// `M`, in files.
    pub helper_memory: Rational,
    pub num_files: usize,
    /// `M_U`, in files.
    pub user_memory: Rational,
    pub file_bytes: usize,
    pub field: FieldSpec,
    pub seed: u64,
}

impl SystemConfig {
    /// A configuration whose helper memory is the one `pda` realises:
    /// `M = N · Z / (F − Z)`.
    pub fn for_pda(
        pda: &Pda,
        num_users: usize,
        num_files: usize,
        file_bytes: usize,
        field: FieldSpec,
        seed: u64,
    ) -> Self {
        Self {
            num_caches: pda.num_caches(),
            num_users,
            helper_memory: memory_for_pda(pda, num_files),
            num_files,
            user_memory: Rational::one(),
            file_bytes,
            field,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), SchemeError> {
        if self.user_memory < Rational::one() {
            return Err(SchemeError::UserMemory(self.user_memory));
        }
        if self.helper_memory < Rational::zero() {
            return Err(SchemeError::NegativeMemory(self.helper_memory));
        }
        if self.num_caches == 0 {
            return Err(SchemeError::CacheCount {
                pda: 0,
                config: 0,
            });
        }
        if self.num_files == 0 {
            return Err(SchemeError::FileCount {
                expected: 1,
                got: 0,
            });
        }
        if self.num_users == 0 {
            return Err(SchemeError::UserCount {
                expected: 1,
                got: 0,
            });
        }
        Ok(())
    }

    /// Checks `Z / F = M / (M + N)` exactly and the cache count.
    pub fn check_pda(&self, pda: &Pda) -> Result<(), SchemeError> {
        self.validate()?;
        if pda.num_caches() != self.num_caches {
            return Err(SchemeError::CacheCount {
                pda: pda.num_caches(),
                config: self.num_caches,
            });
        }
        let ratio = self.helper_memory / (self.helper_memory + Rational::from(self.num_files as i64));
        if pda.params().memory_ratio() != ratio {
            return Err(SchemeError::MemoryRatio {
                z: pda.stars(),
                f: pda.rows(),
                memory: self.helper_memory,
                files: self.num_files,
                ratio,
            });
        }
        Ok(())
    }
}

/// `M` solving `Z / F = M / (M + N)`.
pub fn memory_for_pda(pda: &Pda, num_files: usize) -> Rational {
    Rational::new(
        (num_files * pda.stars()) as i64,
        (pda.rows() - pda.stars()) as i64,
    )
}
