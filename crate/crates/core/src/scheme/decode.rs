use super::{GArray, HelperPlacement, KeyPlacement, Pair, SchemeError, Transmission};
use crate::gfmds::ShareVector;

/// Everything one user can read: its helper cache, its own pads, the
/// broadcast, and the public array `G` and demand vector. Reads outside the
/// user's helper cache or key cache are errors.
#[derive(Debug, Clone, Copy)]
pub struct UserView<'a> {
    pub(crate) user: usize,
    pub(crate) cache: usize,
    pub(crate) g: &'a GArray,
    pub(crate) placement: &'a HelperPlacement,
    pub(crate) keys: &'a KeyPlacement,
    pub(crate) demands: &'a [usize],
    pub(crate) transmissions: &'a [Transmission],
}

impl<'a> UserView<'a> {
    pub fn user(&self) -> usize {
        self.user
    }

    fn cached_share(&self, file: usize, row: usize) -> Result<&'a ShareVector, SchemeError> {
        if self.placement.caches_hold(self.cache, row) {
            Ok(self.placement.share(file, row))
        } else {
            Err(SchemeError::ShareNotCached {
                user: self.user,
                file,
                row,
            })
        }
    }

    fn key(&self, pair: Pair) -> Result<&'a ShareVector, SchemeError> {
        if !self.keys.user_holds(self.user, pair) {
            return Err(SchemeError::MissingKey {
                user: self.user,
                pair,
            });
        }
        self.keys.key(pair).ok_or(SchemeError::MissingKey {
            user: self.user,
            pair,
        })
    }

    fn transmission(&self, pair: Pair) -> Result<&'a Transmission, SchemeError> {
        self.transmissions
            .binary_search_by_key(&pair, |t| t.pair)
            .map(|idx| &self.transmissions[idx])
            .map_err(|_| SchemeError::MissingTransmission(pair))
    }

    /// All `F` shares of the demanded file: `Z` from the helper cache and
    /// one per pair in the user's column, peeled off its transmission.
    pub fn recover_shares(&self) -> Result<Vec<ShareVector>, SchemeError> {
        let wanted = self.demands[self.user];
        let mut shares: Vec<Option<ShareVector>> = vec![None; self.g.rows()];
        for &row in self.placement.cache_rows(self.cache) {
            shares[row] = Some(self.cached_share(wanted, row)?.clone());
        }
        for (row, pair) in self.g.user_pairs(self.user) {
            let x = self.transmission(pair)?;
            let mut share = x.payload.clone();
            if x.padded {
                share.xor_assign(self.key(pair)?);
            }
            for &(j, k) in self.g.occurrences(pair) {
                if k != self.user {
                    // Other clique members' rows are stars in this column.
                    share.xor_assign(self.cached_share(self.demands[k], j)?);
                }
            }
            shares[row] = Some(share);
        }
        shares
            .into_iter()
            .enumerate()
            .map(|(row, s)| {
                s.ok_or_else(|| SchemeError::Internal(format!("share {row} neither cached nor delivered")))
            })
            .collect()
    }

    /// The `F − Z` subfiles of the demanded file.
    pub fn decode(&self) -> Result<Vec<ShareVector>, SchemeError> {
        let shares = self.recover_shares()?;
        Ok(self.placement.sharing().reconstruct(&shares)?)
    }
}
