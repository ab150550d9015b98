//! Arithmetic over GF(2^l), Cauchy matrices, and the (Z, F) non-perfect
//! secret-sharing code used for helper-cache placement.
//!
//! Field symbols are carried as `u16`, so any degree `2 ≤ l ≤ 16` fits. A
//! file's `F − Z` subfiles are stacked on top of `Z` uniformly random vectors
//! and multiplied by an `F × F` Cauchy matrix; row `j` of the product is share
//! `j`. Because every square submatrix of a Cauchy matrix is invertible, the
//! `Z × Z` block that any `Z` shares see of the randomness is invertible, so
//! those shares are uniform and carry nothing about the file, while all `F`
//! shares together invert the whole matrix.

use std::fmt;

use thiserror::Error;

/// Errors raised by field construction and the sharing code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("field degree {0} outside supported range 2..=16")]
    UnsupportedDegree(u32),
    #[error("polynomial {poly:#x} is not an irreducible polynomial of degree {bits}")]
    Reducible { bits: u32, poly: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("GF(2^{bits}) has {available} elements, a {n}x{n} Cauchy matrix needs {needed}")]
    FieldTooSmall {
        bits: u32,
        n: usize,
        needed: usize,
        available: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("expected {expected} shares, got {got}")]
    ShareCount { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("symbol {symbol:#x} does not fit in GF(2^{bits})")]
    SymbolOutOfRange { symbol: u16, bits: u32 },
}

/// Degree and reduction polynomial of a binary extension field.
///
/// The polynomial is stored with its leading `x^l` bit set, e.g. `0b1011`
/// for `x^3 + x + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    bits: u32,
    poly: u32,
}

impl FieldSpec {
    /// The canonical field of degree `bits`: the numerically smallest
    /// irreducible polynomial of that degree. For `l = 3` this is
    /// `x^3 + x + 1`, for `l = 8` it is `x^8 + x^4 + x^3 + x + 1`.
    pub fn new(bits: u32) -> Result<Self, GfError> {
        check_degree(bits)?;
        let poly = ((1u32 << bits) + 1..1u32 << (bits + 1))
            .find(|&p| is_irreducible(p, bits))
            .expect("an irreducible polynomial exists for every degree");
        Ok(Self { bits, poly })
    }

    pub fn with_polynomial(bits: u32, poly: u32) -> Result<Self, GfError> {
        check_degree(bits)?;
        if !is_irreducible(poly, bits) {
            return Err(GfError::Reducible { bits, poly });
        }
        Ok(Self { bits, poly })
    }

    /// GF(2^8) with `x^8 + x^4 + x^3 + x + 1`; symbols are bytes.
    pub fn gf256() -> Self {
        Self { bits: 8, poly: 0x11b }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn polynomial(&self) -> u32 {
        self.poly
    }

    pub fn order(&self) -> usize {
        1 << self.bits
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self::gf256()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.bits, self.poly)
    }
}

fn check_degree(bits: u32) -> Result<(), GfError> {
    if (2..=16).contains(&bits) {
        Ok(())
    } else {
        Err(GfError::UnsupportedDegree(bits))
    }
}

fn degree(p: u32) -> u32 {
    31 - p.leading_zeros()
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

// Trial division by every polynomial of degree 1..=bits/2.
fn is_irreducible(poly: u32, bits: u32) -> bool {
    if poly >> bits != 1 {
        return false;
    }
    (2u32..1 << (bits / 2 + 1)).all(|d| poly_rem(poly, d) != 0)
}

// Carry-less multiply then reduce. Only used to build the tables.
fn slow_mul(a: u32, b: u32, spec: FieldSpec) -> u32 {
    let mut acc = 0u32;
    for bit in 0..spec.bits {
        if b >> bit & 1 == 1 {
            acc ^= a << bit;
        }
    }
    poly_rem(acc, spec.poly)
}

/// Arithmetic context for one field, backed by exp/log tables over a
/// primitive element.
#[derive(Clone)]
pub struct Field {
    spec: FieldSpec,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("spec", &self.spec).finish()
    }
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let group = spec.order() - 1;
        let (generator, exp) = (2u32..spec.order() as u32)
            .find_map(|g| {
                let mut powers = Vec::with_capacity(group);
                let mut x = 1u32;
                for _ in 0..group {
                    powers.push(x as u16);
                    x = slow_mul(x, g, spec);
                    if x == 1 && powers.len() < group {
                        return None;
                    }
                }
                Some((g, powers))
            })
            .expect("the multiplicative group of a finite field is cyclic");
        debug_assert!(generator > 1);
        let mut log = vec![0u16; spec.order()];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u16;
        }
        Self { spec, exp, log }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn bits(&self) -> u32 {
        self.spec.bits
    }

    pub fn order(&self) -> usize {
        self.spec.order()
    }

    pub fn contains(&self, x: u16) -> bool {
        (x as usize) < self.order()
    }

    pub fn check(&self, x: u16) -> Result<u16, GfError> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(GfError::SymbolOutOfRange {
                symbol: x,
                bits: self.spec.bits,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let group = self.exp.len();
        let e = self.log[a as usize] as usize + self.log[b as usize] as usize;
        self.exp[if e >= group { e - group } else { e }]
    }

    pub fn inv(&self, a: u16) -> Result<u16, GfError> {
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        let group = self.exp.len();
        Ok(self.exp[(group - self.log[a as usize] as usize) % group])
    }

    pub fn div(&self, a: u16, b: u16) -> Result<u16, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `acc[t] ^= coef * src[t]` for every position.
    pub fn scaled_add_into(&self, acc: &mut [u16], coef: u16, src: &[u16]) {
        match coef {
            0 => {}
            1 => acc.iter_mut().zip(src).for_each(|(a, &s)| *a ^= s),
            _ => {
                let lc = self.log[coef as usize] as usize;
                let group = self.exp.len();
                for (a, &s) in acc.iter_mut().zip(src) {
                    if s != 0 {
                        let e = lc + self.log[s as usize] as usize;
                        *a ^= self.exp[if e >= group { e - group } else { e }];
                    }
                }
            }
        }
    }
}

/// Dense row-major matrix of field symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u16>,
}

impl SymbolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u16>]) -> Result<Self, GfError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GfError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u16 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u16] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u16] {
        &mut self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    /// Row-major concatenation `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self, GfError> {
        if self.rows != other.rows {
            return Err(GfError::DimensionMismatch(format!(
                "hconcat of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            m.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            m.row_mut(r)[self.cols..].copy_from_slice(other.row(r));
        }
        Ok(m)
    }

    pub fn mul_vec(&self, field: &Field, v: &[u16]) -> Result<Vec<u16>, GfError> {
        if v.len() != self.cols {
            return Err(GfError::DimensionMismatch(format!(
                "{}x{} matrix times length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| acc ^ field.mul(a, b))
            })
            .collect())
    }

    /// Rank via Gaussian elimination.
    pub fn rank(&self, field: &Field) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(rank, p);
            m.eliminate_column(field, rank, c, rank + 1..m.rows);
            rank += 1;
        }
        rank
    }

    pub fn determinant(&self, field: &Field) -> Result<u16, GfError> {
        if self.rows != self.cols {
            return Err(GfError::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = 1u16;
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&r| m.get(r, c) != 0) else {
                return Ok(0);
            };
            // Row swaps flip the sign, which is a no-op in characteristic 2.
            m.swap_rows(c, p);
            det = field.mul(det, m.get(c, c));
            m.eliminate_column(field, c, c, c + 1..m.rows);
        }
        Ok(det)
    }

    pub fn inverse(&self, field: &Field) -> Result<Self, GfError> {
        if self.rows != self.cols {
            return Err(GfError::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = self.hconcat(&Self::identity(n))?;
        for c in 0..n {
            let p = (c..n).find(|&r| aug.get(r, c) != 0).ok_or(GfError::Singular)?;
            aug.swap_rows(c, p);
            let scale = field.inv(aug.get(c, c))?;
            for v in aug.row_mut(c) {
                *v = field.mul(*v, scale);
            }
            aug.eliminate_column(field, c, c, (0..n).filter(|&r| r != c));
        }
        Ok(aug.submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Clear column `col` in `targets` using pivot row `pivot`.
    pub(crate) fn eliminate_column(
        &mut self,
        field: &Field,
        pivot: usize,
        col: usize,
        targets: impl IntoIterator<Item = usize>,
    ) {
        let pv = self.get(pivot, col);
        let inv = field.inv(pv).expect("pivot is nonzero");
        let pivot_row = self.row(pivot).to_vec();
        for r in targets {
            let v = self.get(r, col);
            if v != 0 {
                let factor = field.mul(v, inv);
                field.scaled_add_into(self.row_mut(r), factor, &pivot_row);
            }
        }
    }
}

impl fmt::Display for SymbolMatrix {
    /// Whitespace-separated hex symbols, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| format!("{v:x}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `n × n` Cauchy matrix with entry `(i, j) = 1 / (x_i + y_j)`, using the
/// evaluation points `x_i = i` and `y_j = n + j` (0-based).
pub fn cauchy_matrix(n: usize, field: &Field) -> Result<SymbolMatrix, GfError> {
    if n == 0 {
        return Err(GfError::DimensionMismatch("empty Cauchy matrix".into()));
    }
    if 2 * n > field.order() {
        return Err(GfError::FieldTooSmall {
            bits: field.bits(),
            n,
            needed: 2 * n,
            available: field.order(),
        });
    }
    let mut m = SymbolMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = i as u16;
            let y = (n + j) as u16;
            m.set(i, j, field.inv(field.add(x, y))?);
        }
    }
    Ok(m)
}

/// A subfile, a share, a key, or a transmission: a run of field symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ShareVector(pub Vec<u16>);

impl ShareVector {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u16] {
        &self.0
    }

    pub fn xor_assign(&mut self, other: &ShareVector) {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter_mut().zip(&other.0).for_each(|(a, &b)| *a ^= b);
    }
}

fn check_lengths(vectors: &[ShareVector]) -> Result<usize, GfError> {
    let len = vectors.first().map_or(0, ShareVector::len);
    if vectors.iter().any(|v| v.len() != len) {
        return Err(GfError::DimensionMismatch("vectors of unequal length".into()));
    }
    Ok(len)
}

/// Shares `j = 0..F` of one file: `share_j = Σ_i enc[j][i] · input_i`, with
/// `input` the subfiles stacked above the randomness vectors.
pub fn encode_shares(
    field: &Field,
    enc: &SymbolMatrix,
    subfiles: &[ShareVector],
    randomness: &[ShareVector],
) -> Result<Vec<ShareVector>, GfError> {
    let f = enc.rows();
    if enc.cols() != f || subfiles.len() + randomness.len() != f {
        return Err(GfError::DimensionMismatch(format!(
            "{} subfiles + {} random vectors against a {}x{} encoder",
            subfiles.len(),
            randomness.len(),
            enc.rows(),
            enc.cols()
        )));
    }
    let input: Vec<ShareVector> = subfiles.iter().chain(randomness).cloned().collect();
    let len = check_lengths(&input)?;
    Ok((0..f)
        .map(|j| {
            let mut share = ShareVector::zeros(len);
            for (i, v) in input.iter().enumerate() {
                field.scaled_add_into(&mut share.0, enc.get(j, i), &v.0);
            }
            share
        })
        .collect())
}

/// Inverts the encoder on a full set of `F` shares and returns the `F − Z`
/// subfiles.
pub fn reconstruct_file(
    field: &Field,
    enc: &SymbolMatrix,
    shares: &[ShareVector],
    z: usize,
) -> Result<Vec<ShareVector>, GfError> {
    let dec = enc.inverse(field)?;
    reconstruct_with_inverse(field, &dec, shares, z)
}

fn reconstruct_with_inverse(
    field: &Field,
    dec: &SymbolMatrix,
    shares: &[ShareVector],
    z: usize,
) -> Result<Vec<ShareVector>, GfError> {
    let f = dec.rows();
    if shares.len() != f {
        return Err(GfError::ShareCount {
            expected: f,
            got: shares.len(),
        });
    }
    let len = check_lengths(shares)?;
    Ok((0..f - z)
        .map(|i| {
            let mut out = ShareVector::zeros(len);
            for (j, s) in shares.iter().enumerate() {
                field.scaled_add_into(&mut out.0, dec.get(i, j), &s.0);
            }
            out
        })
        .collect())
}

/// A `(Z, F)` non-perfect secret-sharing code with its decoder cached.
#[derive(Debug, Clone)]
pub struct SecretSharing {
    field: Field,
    z: usize,
    enc: SymbolMatrix,
    dec: SymbolMatrix,
}

impl SecretSharing {
    pub fn new(field: Field, z: usize, f: usize) -> Result<Self, GfError> {
        if z >= f {
            return Err(GfError::DimensionMismatch(format!(
                "need Z < F, got Z={z} F={f}"
            )));
        }
        let enc = cauchy_matrix(f, &field)?;
        let dec = enc.inverse(&field).map_err(|_| GfError::Singular)?;
        Ok(Self { field, z, enc, dec })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn encoder(&self) -> &SymbolMatrix {
        &self.enc
    }

    pub fn num_shares(&self) -> usize {
        self.enc.rows()
    }

    pub fn threshold(&self) -> usize {
        self.z
    }

    pub fn num_subfiles(&self) -> usize {
        self.num_shares() - self.z
    }

    pub fn encode(
        &self,
        subfiles: &[ShareVector],
        randomness: &[ShareVector],
    ) -> Result<Vec<ShareVector>, GfError> {
        if subfiles.len() != self.num_subfiles() {
            return Err(GfError::DimensionMismatch(format!(
                "expected {} subfiles, got {}",
                self.num_subfiles(),
                subfiles.len()
            )));
        }
        encode_shares(&self.field, &self.enc, subfiles, randomness)
    }

    pub fn reconstruct(&self, shares: &[ShareVector]) -> Result<Vec<ShareVector>, GfError> {
        reconstruct_with_inverse(&self.field, &self.dec, shares, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Schoolbook bit-level multiply-and-reduce, written independently of the
    // table implementation.
    fn oracle_mul(a: u32, b: u32, poly: u32, bits: u32) -> u32 {
        let mut product = 0u32;
        let mut shifted = a;
        for i in 0..bits {
            if (b >> i) & 1 == 1 {
                product ^= shifted;
            }
            shifted <<= 1;
        }
        for i in (bits..2 * bits).rev() {
            if (product >> i) & 1 == 1 {
                product ^= poly << (i - bits);
            }
        }
        product
    }

    fn gf(bits: u32) -> Field {
        Field::new(FieldSpec::new(bits).unwrap())
    }

    #[test]
    fn canonical_polynomials() {
        assert_eq!(FieldSpec::new(3).unwrap().polynomial(), 0b1011);
        assert_eq!(FieldSpec::new(8).unwrap(), FieldSpec::gf256());
        assert_eq!(FieldSpec::new(2).unwrap().polynomial(), 0b111);
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(17).is_err());
        assert_eq!(
            FieldSpec::with_polynomial(3, 0b1001),
            Err(GfError::Reducible { bits: 3, poly: 0b1001 })
        );
        assert!(FieldSpec::with_polynomial(8, 0x11d).is_ok());
    }

    #[test]
    fn small_field_examples() {
        let f = gf(3);
        assert_eq!(f.add(5, 5), 0);
        assert_eq!(oracle_mul(6, 3, 0b1011, 3), 1);
        assert_eq!(f.mul(6, 3), 1);
        let f8 = gf(8);
        for x in 0..256u16 {
            assert_eq!(f8.mul(x, 1), x);
        }
        assert_eq!(f8.inv(0), Err(GfError::ZeroInverse));
    }

    #[test]
    fn table_mul_matches_oracle_exhaustively() {
        for bits in [2, 3, 4, 5, 8] {
            let f = gf(bits);
            let poly = f.spec().polynomial();
            for a in 0..f.order() as u32 {
                for b in 0..f.order() as u32 {
                    assert_eq!(
                        f.mul(a as u16, b as u16) as u32,
                        oracle_mul(a, b, poly, bits),
                        "GF(2^{bits}) {a}*{b}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverses_gf65536() {
        let f = gf(16);
        for x in (1..=u16::MAX).step_by(97) {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        }
    }

    proptest! {
        #[test]
        fn field_axioms(bits in 2u32..=10, a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
            let f = gf(bits);
            let m = (f.order() - 1) as u16;
            let (a, b, c) = (a & m, b & m, c & m);
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, a), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn cauchy_every_square_submatrix_invertible() {
        for bits in [3u32, 4, 8] {
            let f = gf(bits);
            for n in 1..=6 {
                if 2 * n > f.order() {
                    continue;
                }
                let c = cauchy_matrix(n, &f).unwrap();
                for k in 1..=n {
                    for rows in subsets(n, k) {
                        for cols in subsets(n, k) {
                            let det = c.submatrix(&rows, &cols).determinant(&f).unwrap();
                            assert_ne!(det, 0, "n={n} rows={rows:?} cols={cols:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cauchy_edge_cases() {
        let f3 = gf(3);
        let one = cauchy_matrix(1, &f3).unwrap();
        assert_eq!(one.entries(), &[f3.inv(1).unwrap()]);
        let four = cauchy_matrix(4, &f3).unwrap();
        assert_eq!(four.rank(&f3), 4);
        assert!(matches!(
            cauchy_matrix(4, &gf(2)),
            Err(GfError::FieldTooSmall { needed: 8, available: 4, .. })
        ));
    }

    #[test]
    fn printed_example_matrix_is_not_cauchy() {
        // The 4x4 matrix printed with the worked example has two identical
        // trailing columns in its last rows.
        let f3 = gf(3);
        let printed = SymbolMatrix::from_rows(&[
            vec![1, 6, 2, 4],
            vec![6, 1, 4, 2],
            vec![2, 4, 1, 6],
            vec![4, 2, 1, 6],
        ])
        .unwrap();
        assert_eq!(printed.submatrix(&[2, 3], &[2, 3]).determinant(&f3).unwrap(), 0);
    }

    #[test]
    fn encode_zero_and_oracle() {
        let f3 = gf(3);
        let enc = cauchy_matrix(4, &f3).unwrap();
        let zero = vec![ShareVector::zeros(3); 2];
        let shares = encode_shares(&f3, &enc, &zero, &zero).unwrap();
        assert!(shares.iter().all(|s| s.0 == vec![0, 0, 0]));

        let subfiles = vec![ShareVector(vec![1, 7]), ShareVector(vec![5, 0])];
        let randomness = vec![ShareVector(vec![3, 2]), ShareVector(vec![6, 4])];
        let shares = encode_shares(&f3, &enc, &subfiles, &randomness).unwrap();
        // Naive matrix-vector product per symbol position with the oracle multiply.
        for t in 0..2 {
            let input: Vec<u32> = subfiles
                .iter()
                .chain(&randomness)
                .map(|v| v.0[t] as u32)
                .collect();
            for j in 0..4 {
                let expected = (0..4).fold(0, |acc, i| {
                    acc ^ oracle_mul(enc.get(j, i) as u32, input[i], 0b1011, 3)
                });
                assert_eq!(shares[j].0[t] as u32, expected);
            }
        }
    }

    #[test]
    fn reconstruction_needs_every_share() {
        let ss = SecretSharing::new(gf(8), 2, 4).unwrap();
        let subfiles = vec![ShareVector(b"abc".iter().map(|&b| b as u16).collect()); 2];
        let shares = ss.encode(&subfiles, &[ShareVector::zeros(3), ShareVector(vec![9, 9, 9])]).unwrap();
        assert_eq!(ss.reconstruct(&shares).unwrap(), subfiles);
        assert_eq!(
            ss.reconstruct(&shares[..3]),
            Err(GfError::ShareCount { expected: 4, got: 3 })
        );
    }

    #[test]
    fn round_trip_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..100 {
            let f = rng.gen_range(2..=16usize);
            let z = rng.gen_range(1..f);
            let field = gf(if trial % 3 == 0 { 5 } else { 8 });
            let ss = SecretSharing::new(field.clone(), z, f).unwrap();
            let len = rng.gen_range(1..8);
            let mask = (field.order() - 1) as u16;
            let mut draw = |n: usize| -> Vec<ShareVector> {
                (0..n)
                    .map(|_| ShareVector((0..len).map(|_| rng.gen::<u16>() & mask).collect()))
                    .collect()
            };
            let subfiles = draw(f - z);
            let randomness = draw(z);
            let shares = ss.encode(&subfiles, &randomness).unwrap();
            assert!(shares.iter().all(|s| s.len() == len));
            assert_eq!(ss.reconstruct(&shares).unwrap(), subfiles);
            assert_eq!(reconstruct_file(&field, ss.encoder(), &shares, z).unwrap(), subfiles);
        }
    }

    #[test]
    fn matrix_display_is_hex() {
        let m = SymbolMatrix::from_rows(&[vec![1, 0xa], vec![0xff, 0]]).unwrap();
        assert_eq!(m.to_string(), "1 a\nff 0\n");
    }
}
