use std::collections::BTreeMap;
use std::fmt;

use super::Association;
use crate::pda::{Pda, PdaEntry};

/// Transmission label `(s, i)`: PDA integer `s` as seen by the `i`-th user
/// (1-based) of a cache. Orders `s`-major, matching the delivery loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub s: u32,
    pub i: u32,
}

impl Pair {
    pub fn new(s: u32, i: u32) -> Self {
        Self { s, i }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GEntry {
    Star,
    Pair(Pair),
}

impl fmt::Display for GEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GEntry::Star => f.write_str("*"),
            GEntry::Pair(p) => p.fmt(f),
        }
    }
}

/// The `F × K` generalised array. Column `k` belongs to user `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GArray {
    rows: usize,
    users: usize,
    entries: Vec<GEntry>,
    occurrences: BTreeMap<Pair, Vec<(usize, usize)>>,
}

/// User `k`, the `i`-th user of its cache, gets a copy of that cache's PDA
/// column with every integer `g` replaced by `(g, i)`.
pub fn build_g_array(pda: &Pda, association: &Association) -> GArray {
    assert_eq!(pda.num_caches(), association.num_caches());
    let rows = pda.rows();
    let users = association.num_users();
    let mut entries = vec![GEntry::Star; rows * users];
    let mut occurrences: BTreeMap<Pair, Vec<(usize, usize)>> = BTreeMap::new();
    for k in 0..users {
        let column = association.original_cache_of(k);
        let i = association.rank(k);
        for j in 0..rows {
            if let PdaEntry::Int(s) = pda.get(j, column) {
                let pair = Pair::new(s, i);
                entries[j * users + k] = GEntry::Pair(pair);
                occurrences.entry(pair).or_default().push((j, k));
            }
        }
    }
    for occ in occurrences.values_mut() {
        occ.sort_unstable();
    }
    GArray {
        rows,
        users,
        entries,
        occurrences,
    }
}

impl GArray {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn num_users(&self) -> usize {
        self.users
    }

    pub fn get(&self, row: usize, user: usize) -> GEntry {
        self.entries[row * self.users + user]
    }

    pub fn column(&self, user: usize) -> impl Iterator<Item = GEntry> + '_ {
        (0..self.rows).map(move |j| self.get(j, user))
    }

    /// Pairs in user `k`'s column, with their rows.
    pub fn user_pairs(&self, user: usize) -> Vec<(usize, Pair)> {
        self.column(user)
            .enumerate()
            .filter_map(|(j, e)| match e {
                GEntry::Pair(p) => Some((j, p)),
                GEntry::Star => None,
            })
            .collect()
    }

    /// Distinct pairs in delivery order.
    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        self.occurrences.keys().copied()
    }

    pub fn num_pairs(&self) -> usize {
        self.occurrences.len()
    }

    /// `(row, user)` cells holding `pair`, sorted.
    pub fn occurrences(&self, pair: Pair) -> &[(usize, usize)] {
        self.occurrences.get(&pair).map_or(&[], Vec::as_slice)
    }

    /// `Gᵀ` rendering: one line per user.
    pub fn transpose_text(&self) -> String {
        (0..self.users)
            .map(|k| {
                let cells: Vec<String> = self.column(k).map(|e| e.to_string()).collect();
                cells.join(" ") + "\n"
            })
            .collect()
    }
}
