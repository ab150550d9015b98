use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Association, GArray, Pair, SchemeError, SystemConfig};
use crate::gfmds::{Field, SecretSharing, ShareVector};
use crate::pda::Pda;

/// Where the sharing randomness `V` and the pads come from.
pub trait RandomSource {
    fn draw(&mut self, len: usize) -> ShareVector;
}

/// Uniform symbols from a seeded ChaCha stream.
#[derive(Debug, Clone)]
pub struct RngSource {
    rng: ChaCha8Rng,
    mask: u16,
}

impl RngSource {
    pub fn new(seed: u64, symbol_bits: u32) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            mask: ((1u32 << symbol_bits) - 1) as u16,
        }
    }
}

impl RandomSource for RngSource {
    fn draw(&mut self, len: usize) -> ShareVector {
        ShareVector((0..len).map(|_| self.rng.gen::<u16>() & self.mask).collect())
    }
}

/// Replays a fixed symbol sequence; lets an exhaustive oracle drive the real
/// placement code with chosen randomness.
#[derive(Debug, Clone, Default)]
pub struct FixedSource {
    symbols: VecDeque<u16>,
}

impl FixedSource {
    pub fn new(symbols: impl IntoIterator<Item = u16>) -> Self {
        Self {
            symbols: symbols.into_iter().collect(),
        }
    }

    pub fn remaining(&self) -> usize {
        self.symbols.len()
    }
}

impl RandomSource for FixedSource {
    fn draw(&mut self, len: usize) -> ShareVector {
        assert!(self.symbols.len() >= len, "fixed randomness exhausted");
        ShareVector(self.symbols.drain(..len).collect())
    }
}

/// Shares of every file and the share rows each helper cache holds.
#[derive(Debug, Clone)]
pub struct HelperPlacement {
    sharing: SecretSharing,
    shares: Vec<Vec<ShareVector>>,
    caches: Vec<Vec<usize>>,
}

impl HelperPlacement {
    pub fn sharing(&self) -> &SecretSharing {
        &self.sharing
    }

    pub fn field(&self) -> &Field {
        self.sharing.field()
    }

    /// `S_{n,j}`.
    pub fn share(&self, file: usize, row: usize) -> &ShareVector {
        &self.shares[file][row]
    }

    pub fn num_files(&self) -> usize {
        self.shares.len()
    }

    pub fn share_len(&self) -> usize {
        self.shares[0][0].len()
    }

    /// Share rows stored in original cache `cache`, for every file.
    pub fn cache_rows(&self, cache: usize) -> &[usize] {
        &self.caches[cache]
    }

    pub fn caches_hold(&self, cache: usize, row: usize) -> bool {
        self.caches[cache].contains(&row)
    }

    /// Symbols stored in one helper cache.
    pub fn stored_symbols(&self, cache: usize) -> usize {
        self.num_files() * self.caches[cache].len() * self.share_len()
    }
}

/// Encodes each file into `F` shares and fills cache `λ` with share `j` of
/// every file for each star `(j, λ)`. `files[n]` holds the `F − Z`
/// subfiles of file `n`; randomness is drawn file by file.
pub fn helper_placement(
    pda: &Pda,
    config: &SystemConfig,
    files: &[Vec<ShareVector>],
    src: &mut dyn RandomSource,
) -> Result<HelperPlacement, SchemeError> {
    config.check_pda(pda)?;
    if files.len() != config.num_files {
        return Err(SchemeError::FileCount {
            expected: config.num_files,
            got: files.len(),
        });
    }
    let sharing = SecretSharing::new(Field::new(config.field), pda.stars(), pda.rows())?;
    let len = files[0].first().map_or(0, ShareVector::len);
    for (index, f) in files.iter().enumerate() {
        if f.len() != sharing.num_subfiles() || f.iter().any(|s| s.len() != len) {
            return Err(SchemeError::FileLength {
                index,
                expected: sharing.num_subfiles() * len,
                got: f.iter().map(ShareVector::len).sum(),
            });
        }
        for v in f.iter().flat_map(|s| &s.0) {
            sharing.field().check(*v)?;
        }
    }
    let shares = files
        .iter()
        .map(|subfiles| {
            let randomness: Vec<ShareVector> = (0..pda.stars()).map(|_| src.draw(len)).collect();
            sharing.encode(subfiles, &randomness)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let caches = (0..pda.num_caches()).map(|c| pda.star_rows(c)).collect();
    Ok(HelperPlacement {
        sharing,
        shares,
        caches,
    })
}

/// One-time pads: a pool keyed by pair and the pairs each user stores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPlacement {
    pool: BTreeMap<Pair, ShareVector>,
    user_keys: Vec<Vec<Pair>>,
}

impl KeyPlacement {
    pub fn pool(&self) -> &BTreeMap<Pair, ShareVector> {
        &self.pool
    }

    pub fn key(&self, pair: Pair) -> Option<&ShareVector> {
        self.pool.get(&pair)
    }

    /// Pairs whose pads user `k` stores, in increasing order.
    pub fn user_keys(&self, user: usize) -> &[Pair] {
        &self.user_keys[user]
    }

    pub fn user_holds(&self, user: usize, pair: Pair) -> bool {
        self.user_keys[user].binary_search(&pair).is_ok()
    }
}

/// Draws one pad of `share_len` symbols per distinct pair of `g`, in pair
/// order; user `k` stores the pads of the pairs in its column of `g`.
pub fn user_key_placement(
    g: &GArray,
    association: &Association,
    share_len: usize,
    src: &mut dyn RandomSource,
) -> KeyPlacement {
    let pool: BTreeMap<Pair, ShareVector> = g.pairs().map(|p| (p, src.draw(share_len))).collect();
    let user_keys = (0..association.num_users())
        .map(|k| {
            let mut pairs: Vec<Pair> = g.user_pairs(k).into_iter().map(|(_, p)| p).collect();
            pairs.sort_unstable();
            pairs
        })
        .collect();
    KeyPlacement { pool, user_keys }
}
