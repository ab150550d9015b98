use super::{GArray, HelperPlacement, KeyPlacement, Pair, SchemeError};
use crate::gfmds::ShareVector;

/// `X_(s,i)` on the broadcast link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transmission {
    pub pair: Pair,
    pub payload: ShareVector,
    /// False only for deliberately sabotaged runs.
    pub padded: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DeliveryOptions {
    /// Omit the one-time pads. Breaks secrecy; used to test the checkers.
    pub strip_pads: bool,
}

/// One transmission per distinct pair of `g`, `s`-major: the pad XORed with
/// `S_{d_k, j}` for every cell `(j, k)` holding the pair. `demands` are
/// 0-based file indices, one per user; repeats are allowed.
pub fn deliver(
    g: &GArray,
    placement: &HelperPlacement,
    keys: &KeyPlacement,
    demands: &[usize],
    options: DeliveryOptions,
) -> Result<Vec<Transmission>, SchemeError> {
    check_demands(demands, g.num_users(), placement.num_files())?;
    g.pairs()
        .map(|pair| {
            let mut payload = if options.strip_pads {
                ShareVector::zeros(placement.share_len())
            } else {
                keys.key(pair)
                    .cloned()
                    .ok_or_else(|| SchemeError::Internal(format!("no pad generated for {pair}")))?
            };
            for &(j, k) in g.occurrences(pair) {
                payload.xor_assign(placement.share(demands[k], j));
            }
            Ok(Transmission {
                pair,
                payload,
                padded: !options.strip_pads,
            })
        })
        .collect()
}

pub(crate) fn check_demands(
    demands: &[usize],
    num_users: usize,
    num_files: usize,
) -> Result<(), SchemeError> {
    if demands.len() != num_users {
        return Err(SchemeError::UserCount {
            expected: num_users,
            got: demands.len(),
        });
    }
    if let Some((user, &demand)) = demands.iter().enumerate().find(|(_, &d)| d >= num_files) {
        return Err(SchemeError::DemandOutOfRange {
            user,
            demand,
            num_files,
        });
    }
    Ok(())
}
