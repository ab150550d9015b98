//! Byte files and their symbol-level view.

use std::fs;
use std::path::Path;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SchemeError;
use crate::gfmds::ShareVector;

/// How a `B`-byte file maps onto `F − Z` subfiles of `l`-bit symbols.
///
/// The file is read as a big-endian bit stream, zero-padded to a multiple of
/// `(F − Z) · l` bits, cut into symbols, and the symbol stream is split into
/// equal consecutive runs, one per subfile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FileLayout {
    pub file_bytes: usize,
    pub symbol_bits: u32,
    pub subfiles: usize,
    pub symbols_per_share: usize,
    pub padding_bits: usize,
}

impl FileLayout {
    pub fn new(file_bytes: usize, symbol_bits: u32, subfiles: usize) -> Self {
        assert!(subfiles > 0 && symbol_bits > 0);
        let bits = file_bytes * 8;
        let chunk = subfiles * symbol_bits as usize;
        let padded = bits.div_ceil(chunk).max(1) * chunk;
        Self {
            file_bytes,
            symbol_bits,
            subfiles,
            symbols_per_share: padded / chunk,
            padding_bits: padded - bits,
        }
    }

    /// Bits per share, `F_s`.
    pub fn share_bits(&self) -> usize {
        self.symbols_per_share * self.symbol_bits as usize
    }

    pub fn split(&self, file: &[u8]) -> Result<Vec<ShareVector>, SchemeError> {
        if file.len() != self.file_bytes {
            return Err(SchemeError::FileLength {
                index: 0,
                expected: self.file_bytes,
                got: file.len(),
            });
        }
        let symbols = bytes_to_symbols(
            file,
            self.symbol_bits,
            self.subfiles * self.symbols_per_share,
        );
        Ok(symbols
            .chunks(self.symbols_per_share)
            .map(|c| ShareVector(c.to_vec()))
            .collect())
    }

    /// Concatenates subfiles and strips the padding.
    pub fn join(&self, subfiles: &[ShareVector]) -> Result<Vec<u8>, SchemeError> {
        if subfiles.len() != self.subfiles
            || subfiles.iter().any(|s| s.len() != self.symbols_per_share)
        {
            return Err(SchemeError::Internal(format!(
                "expected {} subfiles of {} symbols",
                self.subfiles, self.symbols_per_share
            )));
        }
        let symbols: Vec<u16> = subfiles.iter().flat_map(|s| s.0.iter().copied()).collect();
        let mut bytes = symbols_to_bytes(&symbols, self.symbol_bits);
        bytes.truncate(self.file_bytes);
        Ok(bytes)
    }
}

/// Packs `bytes` MSB-first into `count` symbols of `bits` bits, zero-filling
/// past the end of the input.
pub fn bytes_to_symbols(bytes: &[u8], bits: u32, count: usize) -> Vec<u16> {
    let bit = |i: usize| -> u16 {
        bytes
            .get(i / 8)
            .map_or(0, |b| u16::from(b >> (7 - i % 8) & 1))
    };
    (0..count)
        .map(|s| {
            (0..bits as usize).fold(0u16, |acc, k| acc << 1 | bit(s * bits as usize + k))
        })
        .collect()
}

/// Inverse of [`bytes_to_symbols`]; the final byte is zero-padded.
pub fn symbols_to_bytes(symbols: &[u16], bits: u32) -> Vec<u8> {
    let total = symbols.len() * bits as usize;
    let mut out = vec![0u8; total.div_ceil(8)];
    for (s, &v) in symbols.iter().enumerate() {
        for k in 0..bits as usize {
            if v >> (bits as usize - 1 - k) & 1 == 1 {
                let i = s * bits as usize + k;
                out[i / 8] |= 0x80 >> (i % 8);
            }
        }
    }
    out
}

/// The server's `N` equal-length files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Library {
    files: Vec<Vec<u8>>,
}

impl Library {
    pub fn new(files: Vec<Vec<u8>>) -> Result<Self, SchemeError> {
        let len = files.first().map(Vec::len).ok_or(SchemeError::FileCount {
            expected: 1,
            got: 0,
        })?;
        if len == 0 {
            return Err(SchemeError::Internal("files must be non-empty".into()));
        }
        if let Some((index, f)) = files.iter().enumerate().find(|(_, f)| f.len() != len) {
            return Err(SchemeError::FileLength {
                index,
                expected: len,
                got: f.len(),
            });
        }
        Ok(Self { files })
    }

    /// `n` pseudo-random files of `bytes` bytes each, from their own seeded
    /// stream.
    pub fn synthetic(n: usize, bytes: usize, seed: u64) -> Result<Self, SchemeError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(1);
        Self::new(
            (0..n)
                .map(|_| {
                    let mut f = vec![0u8; bytes];
                    rng.fill_bytes(&mut f);
                    f
                })
                .collect(),
        )
    }

    /// Every regular file in `dir`, sorted by file name.
    pub fn from_dir(dir: &Path) -> Result<Self, SchemeError> {
        let mut paths: Vec<_> = fs::read_dir(dir)
            .map_err(|e| SchemeError::Io(format!("{}: {e}", dir.display())))?
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.is_file())
            .collect();
        paths.sort();
        let files = paths
            .iter()
            .map(|p| fs::read(p).map_err(|e| SchemeError::Io(format!("{}: {e}", p.display()))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(files)
    }

    pub fn len(&self) -> usize {
        self.files.len()
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    pub fn file_bytes(&self) -> usize {
        self.files[0].len()
    }

    pub fn file(&self, n: usize) -> &[u8] {
        &self.files[n]
    }

    pub fn files(&self) -> &[Vec<u8>] {
        &self.files
    }

    pub fn to_symbols(&self, layout: &FileLayout) -> Result<Vec<Vec<ShareVector>>, SchemeError> {
        self.files.iter().map(|f| layout.split(f)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn layout_padding() {
        let l = FileLayout::new(3, 3, 2);
        // 24 bits into chunks of 6 bits: 4 symbols per share, no padding.
        assert_eq!((l.symbols_per_share, l.padding_bits), (4, 0));
        let l = FileLayout::new(1, 8, 3);
        assert_eq!((l.symbols_per_share, l.padding_bits), (1, 16));
        assert_eq!(FileLayout::new(4, 8, 2).share_bits(), 16);
    }

    #[test]
    fn packing_is_msb_first() {
        assert_eq!(bytes_to_symbols(&[0b1011_0001], 3, 3), vec![0b101, 0b100, 0b010]);
        assert_eq!(symbols_to_bytes(&[0b101, 0b100, 0b010], 3), vec![0b1011_0001, 0]);
    }

    proptest! {
        #[test]
        fn split_join_round_trip(
            file in proptest::collection::vec(any::<u8>(), 1..64),
            bits in 2u32..=16,
            subfiles in 1usize..6,
        ) {
            let layout = FileLayout::new(file.len(), bits, subfiles);
            let parts = layout.split(&file).unwrap();
            prop_assert_eq!(parts.len(), subfiles);
            prop_assert!(parts.iter().flat_map(|p| &p.0).all(|&s| (s as u32) < 1 << bits));
            prop_assert_eq!(layout.join(&parts).unwrap(), file);
        }
    }

    #[test]
    fn library_rejects_ragged_files() {
        assert!(matches!(
            Library::new(vec![vec![1, 2], vec![3]]),
            Err(SchemeError::FileLength { index: 1, .. })
        ));
        let lib = Library::synthetic(3, 10, 5).unwrap();
        assert_eq!(lib, Library::synthetic(3, 10, 5).unwrap());
        assert_ne!(lib.file(0), lib.file(1));
    }
}
