//! Executable secrecy checks.
//!
//! Every quantity a party can observe (helper-cache share symbols, pad
//! symbols, broadcast symbols) is a GF(2^l)-linear function `A·w + B·v` of
//! the file symbols `w` and the uniform randomness `v` (sharing vectors and
//! pads). Split `w` into protected symbols `w_p` and the rest `w_u`. Since
//! `w_u` and `v` are uniform and independent of `w_p`, the observations are
//! independent of `w_p` exactly when every linear functional `y` with
//! `y·[A_u | B] = 0` also has `y·A_p = 0`, i.e. when
//! `rank[A_u | B] = rank[A_u | B | A_p]`. A functional violating this is a
//! witness: it reads a nonconstant linear function of the protected files
//! straight off the observations.
//!
//! [`brute_force_secrecy`] checks the same property by enumerating every
//! assignment of a tiny instance and comparing observation distributions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::gfmds::{Field, SecretSharing, ShareVector, SymbolMatrix};
use crate::pda::Pda;
use crate::scheme::{
    associate, build_g_array, BaselineSession, DeliveryOptions, FixedSource, SchemeError,
    Session, SystemConfig,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SecrecyError {
    #[error("instance has {symbols} symbols over GF(2^{bits}); enumeration needs l ≤ 3, ≤ 12 symbols and ≤ 2^24 assignments")]
    InstanceTooLarge { symbols: usize, bits: u32 },
    #[error("observer {0} is not part of this system")]
    UnknownObserver(Observer),
    #[error("delivery scope requested before delivery")]
    NotDelivered,
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// Who is looking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observer {
    /// Anyone reading original helper cache `λ` and nothing else.
    Cache(usize),
    /// User `k`: its helper cache and its pads (and, in delivery scope, the
    /// broadcast).
    User(usize),
    /// An outsider who sees only the broadcast.
    Eavesdropper,
}

impl fmt::Display for Observer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observer::Cache(c) => write!(f, "cache {}", c + 1),
            Observer::User(k) => write!(f, "user {}", k + 1),
            Observer::Eavesdropper => f.write_str("eavesdropper"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    CachesOnly,
    CachesPlusDelivery,
}

/// Observations as `A·w ⊕ B·v`, one row per observed symbol.
#[derive(Debug, Clone)]
pub struct LinearObservationModel {
    field: Field,
    a: SymbolMatrix,
    b: SymbolMatrix,
    file_of: Vec<usize>,
    labels: Vec<String>,
}

impl LinearObservationModel {
    pub fn new(
        field: Field,
        a: SymbolMatrix,
        b: SymbolMatrix,
        file_of: Vec<usize>,
        labels: Vec<String>,
    ) -> Self {
        assert_eq!(a.rows(), b.rows());
        assert_eq!(a.cols(), file_of.len());
        assert_eq!(labels.len(), a.rows());
        Self {
            field,
            a,
            b,
            file_of,
            labels,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn obs_dim(&self) -> usize {
        self.a.rows()
    }

    pub fn file_dim(&self) -> usize {
        self.a.cols()
    }

    pub fn rand_dim(&self) -> usize {
        self.b.cols()
    }

    pub fn file_matrix(&self) -> &SymbolMatrix {
        &self.a
    }

    pub fn rand_matrix(&self) -> &SymbolMatrix {
        &self.b
    }

    /// File index of file-symbol coordinate `var`.
    pub fn file_of(&self, var: usize) -> usize {
        self.file_of[var]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn observe(&self, files: &[u16], randomness: &[u16]) -> Vec<u16> {
        let aw = self.a.mul_vec(&self.field, files).expect("file vector length");
        let bv = self.b.mul_vec(&self.field, randomness).expect("randomness vector length");
        aw.iter().zip(&bv).map(|(x, y)| x ^ y).collect()
    }

    /// Columns of `A` split into (nuisance, protected).
    fn split_columns(&self, protected: &BTreeSet<usize>) -> (Vec<usize>, Vec<usize>) {
        (0..self.file_dim()).partition(|&v| !protected.contains(&self.file_of[v]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Coefficients over the observation rows whose combination is a
    /// nonconstant linear function of protected file symbols only.
    Functional { coefficients: Vec<u16> },
    /// Two protected-file assignments with different observation
    /// distributions.
    Distinguisher { first: Vec<u16>, second: Vec<u16> },
}

impl Witness {
    /// `Σ_r c_r · obs_r` for a functional witness.
    pub fn evaluate(&self, field: &Field, observations: &[u16]) -> Option<u16> {
        match self {
            Witness::Functional { coefficients } => Some(
                coefficients
                    .iter()
                    .zip(observations)
                    .fold(0, |acc, (&c, &o)| acc ^ field.mul(c, o)),
            ),
            Witness::Distinguisher { .. } => None,
        }
    }
}

impl Witness {
    /// Like `Display`, but names observation rows with `labels`.
    pub fn describe(&self, labels: &[String]) -> String {
        match self {
            Witness::Functional { coefficients } => {
                let terms: Vec<String> = coefficients
                    .iter()
                    .zip(labels)
                    .filter(|(&c, _)| c != 0)
                    .map(|(c, l)| if *c == 1 { l.clone() } else { format!("{c:x}·{l}") })
                    .collect();
                format!("functional {}", terms.join(" + "))
            }
            other => other.to_string(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hex = |v: &[u16]| v.iter().map(|x| format!("{x:x}")).collect::<Vec<_>>().join(" ");
        match self {
            Witness::Functional { coefficients } => {
                let support: Vec<String> = coefficients
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(r, c)| format!("{c:x}·o{r}"))
                    .collect();
                write!(f, "functional [{}]", support.join(" + "))
            }
            Witness::Distinguisher { first, second } => {
                write!(f, "distinguisher [{}] vs [{}]", hex(first), hex(second))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecrecyVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl SecrecyVerdict {
    fn pass() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: Witness) -> Self {
        Self {
            holds: false,
            witness: Some(witness),
        }
    }
}

impl fmt::Display for SecrecyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => f.write_str("PASS"),
            Some(w) => write!(f, "FAIL ({w})"),
        }
    }
}

type SparseRow = Vec<(usize, u16)>;

fn sparse_axpy(field: &Field, target: &SparseRow, coef: u16, src: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let take_t = j == src.len() || (i < target.len() && target[i].0 < src[j].0);
        let take_s = i == target.len() || (j < src.len() && src[j].0 < target[i].0);
        if take_t {
            out.push(target[i]);
            i += 1;
        } else if take_s {
            out.push((src[j].0, field.mul(coef, src[j].1)));
            j += 1;
        } else {
            let v = target[i].1 ^ field.mul(coef, src[j].1);
            if v != 0 {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Holds iff `rank[A_u | B] = rank[A_u | B | A_p]`, with `A_p` the columns
/// of the protected files.
///
/// Rows are inserted one at a time into an echelon basis that pivots only on
/// nuisance columns. A row left with no nuisance entries but a nonzero
/// protected part is a witness; the combination of observations that
/// produced it is tracked alongside.
pub fn check_zero_information(
    model: &LinearObservationModel,
    protected: &BTreeSet<usize>,
) -> SecrecyVerdict {
    let field = &model.field;
    let (nuisance_files, protected_cols) = model.split_columns(protected);
    if protected_cols.is_empty() {
        return SecrecyVerdict::pass();
    }
    // Column order: randomness, then unprotected files, then protected files.
    let rd = model.rand_dim();
    let mut order = vec![usize::MAX; model.file_dim()];
    for (pos, &v) in nuisance_files.iter().enumerate() {
        order[v] = rd + pos;
    }
    let first_protected = rd + nuisance_files.len();
    for (pos, &v) in protected_cols.iter().enumerate() {
        order[v] = first_protected + pos;
    }

    let obs = model.obs_dim();
    let mut pivots: HashMap<usize, (SparseRow, SparseRow)> = HashMap::new();
    for r in 0..obs {
        let mut row: SparseRow = model
            .b
            .row(r)
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(c, &x)| (c, x))
            .chain(
                model
                    .a
                    .row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(c, &x)| (order[c], x)),
            )
            .collect();
        row.sort_unstable_by_key(|e| e.0);
        let mut combo: SparseRow = vec![(r, 1)];
        loop {
            match row.first() {
                Some(&(lead, val)) if lead < first_protected => {
                    if let Some((prow, pcombo)) = pivots.get(&lead) {
                        let coef = field.div(val, prow[0].1).expect("pivot is nonzero");
                        row = sparse_axpy(field, &row, coef, prow);
                        combo = sparse_axpy(field, &combo, coef, pcombo);
                    } else {
                        pivots.insert(lead, (row, combo));
                        break;
                    }
                }
                Some(_) => {
                    let mut coefficients = vec![0u16; obs];
                    for (i, c) in combo {
                        coefficients[i] = c;
                    }
                    return SecrecyVerdict::fail(Witness::Functional { coefficients });
                }
                None => break,
            }
        }
    }
    SecrecyVerdict::pass()
}

/// Dense reference for [`check_zero_information`]: compares the two ranks
/// directly, without a witness.
pub fn rank_criterion(model: &LinearObservationModel, protected: &BTreeSet<usize>) -> bool {
    let (nuisance_files, protected_cols) = model.split_columns(protected);
    let rows: Vec<usize> = (0..model.obs_dim()).collect();
    let nuisance = model
        .b
        .hconcat(&model.a.submatrix(&rows, &nuisance_files))
        .expect("same row count");
    let with_protected = nuisance
        .hconcat(&model.a.submatrix(&rows, &protected_cols))
        .expect("same row count");
    nuisance.rank(&model.field) == with_protected.rank(&model.field)
}

struct ModelRows {
    file_dim: usize,
    rand_dim: usize,
    a: Vec<Vec<u16>>,
    b: Vec<Vec<u16>>,
    labels: Vec<String>,
}

impl ModelRows {
    fn new(file_dim: usize, rand_dim: usize) -> Self {
        Self {
            file_dim,
            rand_dim,
            a: Vec::new(),
            b: Vec::new(),
            labels: Vec::new(),
        }
    }

    fn push(&mut self, a: Vec<u16>, b: Vec<u16>, label: String) {
        self.a.push(a);
        self.b.push(b);
        self.labels.push(label);
    }

    fn finish(self, field: Field, file_of: Vec<usize>) -> LinearObservationModel {
        let to_matrix = |rows: Vec<Vec<u16>>, cols: usize| {
            if rows.is_empty() {
                SymbolMatrix::zeros(0, cols)
            } else {
                SymbolMatrix::from_rows(&rows).expect("rows have equal width")
            }
        };
        LinearObservationModel::new(
            field,
            to_matrix(self.a, self.file_dim),
            to_matrix(self.b, self.rand_dim),
            file_of,
            self.labels,
        )
    }
}

/// Coordinates of the session model: per symbol position `t < positions`,
/// file symbol `(n, i, t)`, sharing randomness `(n, z, t)`, and pad
/// `(pair, t)`.
struct SessionCoords {
    files: usize,
    subfiles: usize,
    stars: usize,
    positions: usize,
}

impl SessionCoords {
    fn file_var(&self, n: usize, i: usize, t: usize) -> usize {
        (n * self.subfiles + i) * self.positions + t
    }

    fn v_var(&self, n: usize, z: usize, t: usize) -> usize {
        (n * self.stars + z) * self.positions + t
    }

    fn key_var(&self, pair_index: usize, t: usize) -> usize {
        self.files * self.stars * self.positions + pair_index * self.positions + t
    }
}

/// Stacks everything `observer` sees. Share symbols of every position are
/// identical functions of that position's coordinates, so `positions`
/// (typically 1) bounds the model size without changing any verdict.
pub fn build_observation_model(
    session: &Session,
    observer: Observer,
    scope: Scope,
    positions: usize,
) -> Result<LinearObservationModel, SecrecyError> {
    let placement = session.placement();
    let sharing = placement.sharing();
    let enc = sharing.encoder();
    let g = session.g_array();
    let keys = session.keys();
    let coords = SessionCoords {
        files: placement.num_files(),
        subfiles: sharing.num_subfiles(),
        stars: sharing.threshold(),
        positions,
    };
    let pairs: Vec<_> = keys.pool().keys().copied().collect();
    let file_dim = coords.files * coords.subfiles * positions;
    let rand_dim = coords.files * coords.stars * positions + pairs.len() * positions;
    let mut rows = ModelRows::new(file_dim, rand_dim);

    let add_share = |a: &mut [u16], b: &mut [u16], n: usize, j: usize, t: usize| {
        for i in 0..coords.subfiles {
            a[coords.file_var(n, i, t)] ^= enc.get(j, i);
        }
        for z in 0..coords.stars {
            b[coords.v_var(n, z, t)] ^= enc.get(j, coords.subfiles + z);
        }
    };

    let (cache, user) = match observer {
        Observer::Cache(c) if c < session.pda().num_caches() => (Some(c), None),
        Observer::User(k) if k < session.association().num_users() => {
            (Some(session.association().original_cache_of(k)), Some(k))
        }
        Observer::Eavesdropper => (None, None),
        other => return Err(SecrecyError::UnknownObserver(other)),
    };
    let sees_delivery = matches!(observer, Observer::Eavesdropper)
        || (user.is_some() && scope == Scope::CachesPlusDelivery);

    if let Some(c) = cache {
        for n in 0..coords.files {
            for &j in placement.cache_rows(c) {
                for t in 0..positions {
                    let (mut a, mut b) = (vec![0; file_dim], vec![0; rand_dim]);
                    add_share(&mut a, &mut b, n, j, t);
                    rows.push(a, b, format!("S[{},{}]@{t}", n + 1, j + 1));
                }
            }
        }
    }
    if let Some(k) = user {
        for pair in keys.user_keys(k) {
            let p = pairs.binary_search(pair).expect("user key is in the pool");
            for t in 0..positions {
                let mut b = vec![0; rand_dim];
                b[coords.key_var(p, t)] = 1;
                rows.push(vec![0; file_dim], b, format!("K{pair}@{t}"));
            }
        }
    }
    if sees_delivery {
        let (Some(demands), Some(tx)) = (session.demands(), session.transmissions()) else {
            return Err(SecrecyError::NotDelivered);
        };
        for x in tx {
            let p = pairs.binary_search(&x.pair).expect("transmitted pair is in the pool");
            for t in 0..positions {
                let (mut a, mut b) = (vec![0; file_dim], vec![0; rand_dim]);
                if x.padded {
                    b[coords.key_var(p, t)] ^= 1;
                }
                for &(j, k) in g.occurrences(x.pair) {
                    add_share(&mut a, &mut b, demands[k], j, t);
                }
                rows.push(a, b, format!("X{}@{t}", x.pair));
            }
        }
    }
    let file_of = (0..file_dim)
        .map(|v| v / (coords.subfiles * positions))
        .collect();
    Ok(rows.finish(placement.field().clone(), file_of))
}

/// Model of `observed` shares of a single file under `sharing`.
pub fn sharing_model(sharing: &SecretSharing, observed: &[usize]) -> LinearObservationModel {
    let subfiles = sharing.num_subfiles();
    let mut rows = ModelRows::new(subfiles, sharing.threshold());
    for &j in observed {
        let row = sharing.encoder().row(j);
        rows.push(
            row[..subfiles].to_vec(),
            row[subfiles..].to_vec(),
            format!("S[{}]", j + 1),
        );
    }
    rows.finish(sharing.field().clone(), vec![0; subfiles])
}

/// External adversary: transmissions only, every file protected.
pub fn check_external_eavesdropper(session: &Session) -> Result<SecrecyVerdict, SecrecyError> {
    let model = build_observation_model(session, Observer::Eavesdropper, Scope::CachesPlusDelivery, 1)?;
    Ok(check_zero_information(
        &model,
        &(0..session.config().num_files).collect(),
    ))
}

/// Every secrecy condition the scheme promises, for one session.
#[derive(Debug, Clone)]
pub struct SecrecyAudit {
    /// `I(W; Z_λ) = 0` per original cache.
    pub helper_caches: Vec<SecrecyVerdict>,
    /// `I(W; Z_{λ_k}, 𝒵_k) = 0` per user.
    pub users_placement: Vec<SecrecyVerdict>,
    /// `I(W_{[N]∖d_k}; X, Z_{λ_k}, 𝒵_k) = 0` per user, after delivery.
    pub users_delivery: Option<Vec<SecrecyVerdict>>,
    pub eavesdropper: Option<SecrecyVerdict>,
}

impl SecrecyAudit {
    pub fn all_hold(&self) -> bool {
        self.helper_caches
            .iter()
            .chain(&self.users_placement)
            .chain(self.users_delivery.iter().flatten())
            .chain(&self.eavesdropper)
            .all(|v| v.holds)
    }
}

pub fn audit_session(session: &Session) -> Result<SecrecyAudit, SecrecyError> {
    let all: BTreeSet<usize> = (0..session.config().num_files).collect();
    let users = session.association().num_users();
    let check = |observer, scope, protected: &BTreeSet<usize>| {
        build_observation_model(session, observer, scope, 1)
            .map(|m| check_zero_information(&m, protected))
    };
    let helper_caches = (0..session.pda().num_caches())
        .into_par_iter()
        .map(|c| check(Observer::Cache(c), Scope::CachesOnly, &all))
        .collect::<Result<_, _>>()?;
    let users_placement = (0..users)
        .into_par_iter()
        .map(|k| check(Observer::User(k), Scope::CachesOnly, &all))
        .collect::<Result<_, _>>()?;
    let (users_delivery, eavesdropper) = match session.demands() {
        Some(demands) => {
            let delivery = (0..users)
                .into_par_iter()
                .map(|k| {
                    let mut others = all.clone();
                    others.remove(&demands[k]);
                    check(Observer::User(k), Scope::CachesPlusDelivery, &others)
                })
                .collect::<Result<_, _>>()?;
            (Some(delivery), Some(check_external_eavesdropper(session)?))
        }
        None => (None, None),
    };
    Ok(SecrecyAudit {
        helper_caches,
        users_placement,
        users_delivery,
        eavesdropper,
    })
}

/// Observers of the `M = 0` one-time-pad baseline.
pub fn baseline_model(
    session: &BaselineSession,
    observer: Observer,
) -> Result<LinearObservationModel, SecrecyError> {
    let files = session.num_files();
    let users = session.num_users();
    let mut rows = ModelRows::new(files, users);
    let sees_key = match observer {
        Observer::User(k) if k < users => Some(k),
        Observer::Eavesdropper => None,
        other => return Err(SecrecyError::UnknownObserver(other)),
    };
    if let Some(k) = sees_key {
        let mut b = vec![0; users];
        b[k] = 1;
        rows.push(vec![0; files], b, format!("K{}", k + 1));
    }
    for (k, &d) in session.demands().iter().enumerate() {
        let (mut a, mut b) = (vec![0; files], vec![0; users]);
        a[d] = 1;
        b[k] = 1;
        rows.push(a, b, format!("X{}", k + 1));
    }
    Ok(rows.finish(session.field().clone(), (0..files).collect()))
}

/// A tiny instance the exhaustive oracle can drive end to end.
pub trait ObservationOracle: Sync {
    fn field(&self) -> &Field;
    fn file_dim(&self) -> usize;
    fn rand_dim(&self) -> usize;
    fn file_of(&self, var: usize) -> usize;
    /// Runs the real encoding on the given symbols and returns what the
    /// observer sees.
    fn observe(&self, files: &[u16], randomness: &[u16]) -> Vec<u16>;
}

/// Enumerates every `(w, v)` and checks that the distribution of the
/// observations is the same for every value of the protected file symbols.
pub fn brute_force_secrecy(
    oracle: &dyn ObservationOracle,
    protected: &BTreeSet<usize>,
) -> Result<SecrecyVerdict, SecrecyError> {
    let field = oracle.field();
    let dims = oracle.file_dim() + oracle.rand_dim();
    let q = field.order();
    let too_large = SecrecyError::InstanceTooLarge {
        symbols: dims,
        bits: field.bits(),
    };
    if field.bits() > 3 || dims > 12 {
        return Err(too_large);
    }
    let total = q.checked_pow(dims as u32).filter(|&t| t <= 1 << 24).ok_or(too_large)?;
    let protected_vars: Vec<usize> = (0..oracle.file_dim())
        .filter(|&v| protected.contains(&oracle.file_of(v)))
        .collect();
    if protected_vars.is_empty() {
        return Ok(SecrecyVerdict::pass());
    }

    let histograms = (0..total)
        .into_par_iter()
        .fold(
            HashMap::<Vec<u16>, HashMap<Vec<u16>, u64>>::new,
            |mut acc, index| {
                let mut digits = Vec::with_capacity(dims);
                let mut x = index;
                for _ in 0..dims {
                    digits.push((x % q) as u16);
                    x /= q;
                }
                let (w, v) = digits.split_at(oracle.file_dim());
                let key: Vec<u16> = protected_vars.iter().map(|&p| w[p]).collect();
                *acc.entry(key).or_default().entry(oracle.observe(w, v)).or_default() += 1;
                acc
            },
        )
        .reduce(HashMap::new, |mut a, b| {
            for (k, hist) in b {
                let slot = a.entry(k).or_default();
                for (obs, n) in hist {
                    *slot.entry(obs).or_default() += n;
                }
            }
            a
        });

    let mut entries: Vec<_> = histograms.into_iter().collect();
    entries.sort_by(|x, y| x.0.cmp(&y.0));
    let (first_key, first_hist) = &entries[0];
    for (key, hist) in &entries[1..] {
        if hist != first_hist {
            return Ok(SecrecyVerdict::fail(Witness::Distinguisher {
                first: first_key.clone(),
                second: key.clone(),
            }));
        }
    }
    Ok(SecrecyVerdict::pass())
}

/// One file, one symbol per subfile, observing some of its shares.
pub struct SharingOracle {
    pub sharing: SecretSharing,
    pub observed: Vec<usize>,
}

impl ObservationOracle for SharingOracle {
    fn field(&self) -> &Field {
        self.sharing.field()
    }

    fn file_dim(&self) -> usize {
        self.sharing.num_subfiles()
    }

    fn rand_dim(&self) -> usize {
        self.sharing.threshold()
    }

    fn file_of(&self, _var: usize) -> usize {
        0
    }

    fn observe(&self, files: &[u16], randomness: &[u16]) -> Vec<u16> {
        let wrap = |s: &[u16]| s.iter().map(|&x| ShareVector(vec![x])).collect::<Vec<_>>();
        let shares = self
            .sharing
            .encode(&wrap(files), &wrap(randomness))
            .expect("dimensions match");
        self.observed.iter().map(|&j| shares[j].0[0]).collect()
    }
}

/// A whole scheme run with one-symbol subfiles, for the exhaustive oracle.
pub struct SchemeOracle {
    pda: Pda,
    config: SystemConfig,
    assignment: Vec<usize>,
    demands: Vec<usize>,
    observer: Observer,
    scope: Scope,
    options: DeliveryOptions,
    field: Field,
    rand_dim: usize,
}

impl SchemeOracle {
    pub fn new(
        pda: Pda,
        config: SystemConfig,
        assignment: Vec<usize>,
        demands: Vec<usize>,
        observer: Observer,
        scope: Scope,
        options: DeliveryOptions,
    ) -> Result<Self, SecrecyError> {
        let association = associate(&config, &assignment)?;
        let pairs = build_g_array(&pda, &association).num_pairs();
        let rand_dim = config.num_files * pda.stars() + pairs;
        Ok(Self {
            field: Field::new(config.field),
            pda,
            config,
            assignment,
            demands,
            observer,
            scope,
            options,
            rand_dim,
        })
    }

    fn subfiles(&self) -> usize {
        self.pda.rows() - self.pda.stars()
    }

    fn session(&self, files: &[u16], randomness: &[u16]) -> Result<Session, SchemeError> {
        let subfiles = self.subfiles();
        let symbol_files: Vec<Vec<ShareVector>> = files
            .chunks(subfiles)
            .map(|f| f.iter().map(|&x| ShareVector(vec![x])).collect())
            .collect();
        let mut src = FixedSource::new(randomness.iter().copied());
        let mut session = Session::place(
            &self.pda,
            &self.config,
            &symbol_files,
            &self.assignment,
            &mut src,
        )?;
        if self.scope == Scope::CachesPlusDelivery || self.observer == Observer::Eavesdropper {
            session.deliver(&self.demands, self.options)?;
        }
        Ok(session)
    }
}

impl ObservationOracle for SchemeOracle {
    fn field(&self) -> &Field {
        &self.field
    }

    fn file_dim(&self) -> usize {
        self.config.num_files * self.subfiles()
    }

    fn rand_dim(&self) -> usize {
        self.rand_dim
    }

    fn file_of(&self, var: usize) -> usize {
        var / self.subfiles()
    }

    fn observe(&self, files: &[u16], randomness: &[u16]) -> Vec<u16> {
        let session = self.session(files, randomness).expect("oracle instance is valid");
        let placement = session.placement();
        let mut out = Vec::new();
        let cache = match self.observer {
            Observer::Cache(c) => Some(c),
            Observer::User(k) => Some(session.association().original_cache_of(k)),
            Observer::Eavesdropper => None,
        };
        if let Some(c) = cache {
            for n in 0..placement.num_files() {
                for &j in placement.cache_rows(c) {
                    out.extend_from_slice(placement.share(n, j).symbols());
                }
            }
        }
        if let Observer::User(k) = self.observer {
            for &pair in session.keys().user_keys(k) {
                out.extend_from_slice(session.keys().key(pair).expect("key exists").symbols());
            }
        }
        let sees_delivery = self.observer == Observer::Eavesdropper
            || (matches!(self.observer, Observer::User(_))
                && self.scope == Scope::CachesPlusDelivery);
        if sees_delivery {
            for x in session.transmissions().expect("delivered") {
                out.extend_from_slice(x.payload.symbols());
            }
        }
        out
    }
}
