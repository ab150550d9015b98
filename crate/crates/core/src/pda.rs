//! Placement delivery arrays.
//!
//! An `F × Λ` array over `{★} ∪ [S]` is a `(Λ, F, Z, S)` PDA when
//!
//! * **C1** every column holds exactly `Z` stars,
//! * **C2** every integer in `1..=S` occurs,
//! * **C3** two equal integers sit in distinct rows and columns, and the two
//!   cross entries of the `2 × 2` subarray they span are stars.
//!
//! Rows index shares, columns index helper caches. Row, column and cache
//! indices are 0-based in this API; the integer payloads keep their 1-based
//! values.

use std::fmt;
use std::str::FromStr;

use num_integer::binomial;
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdaError {
    #[error("empty or non-rectangular array")]
    Shape,
    #[error("C1 violation: column {column} has {count} stars, expected {expected}")]
    C1Violation {
        column: usize,
        count: usize,
        expected: usize,
    },
    #[error("array has no stars (Z = 0)")]
    NoStars,
    #[error("C2 violation: integer {missing} does not occur")]
    C2Violation { missing: u32 },
    #[error("C3 violation at ({},{})/({},{})", .first.0 + 1, .first.1 + 1, .second.0 + 1, .second.1 + 1)]
    C3Violation {
        value: u32,
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("integer entries must be positive")]
    ZeroEntry { row: usize, column: usize },
    #[error("t must lie in 1..={max}, got {t}")]
    OutOfRange { t: usize, max: usize },
    #[error("header declares {field}={declared}, array has {actual}")]
    HeaderMismatch {
        field: &'static str,
        declared: usize,
        actual: usize,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// One cell of a PDA.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PdaEntry {
    Star,
    Int(u32),
}

impl PdaEntry {
    pub fn is_star(self) -> bool {
        matches!(self, PdaEntry::Star)
    }

    pub fn int(self) -> Option<u32> {
        match self {
            PdaEntry::Star => None,
            PdaEntry::Int(s) => Some(s),
        }
    }
}

impl fmt::Display for PdaEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdaEntry::Star => f.write_str("*"),
            PdaEntry::Int(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PdaParams {
    pub num_caches: usize,
    pub rows: usize,
    pub stars: usize,
    pub num_ints: usize,
}

impl PdaParams {
    /// `Z / F`, which must equal `M / (M + N)` for the scheme.
    pub fn memory_ratio(&self) -> Ratio<i64> {
        Ratio::new(self.stars as i64, self.rows as i64)
    }
}

impl fmt::Display for PdaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Λ={} F={} Z={} S={}",
            self.num_caches, self.rows, self.stars, self.num_ints
        )
    }
}

/// A validated PDA. The only constructors run [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pda {
    params: PdaParams,
    entries: Vec<PdaEntry>,
}

/// Checks C1–C3 in that order and reports the first failure.
pub fn validate(grid: &[Vec<PdaEntry>]) -> Result<PdaParams, PdaError> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || grid.iter().any(|r| r.len() != cols) {
        return Err(PdaError::Shape);
    }
    for (j, row) in grid.iter().enumerate() {
        if let Some(c) = row.iter().position(|e| *e == PdaEntry::Int(0)) {
            return Err(PdaError::ZeroEntry { row: j, column: c });
        }
    }

    let star_count = |c: usize| grid.iter().filter(|r| r[c].is_star()).count();
    let stars = star_count(0);
    if let Some(c) = (1..cols).find(|&c| star_count(c) != stars) {
        return Err(PdaError::C1Violation {
            column: c,
            count: star_count(c),
            expected: stars,
        });
    }

    let max = grid.iter().flatten().filter_map(|e| e.int()).max().unwrap_or(0);
    let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); max as usize + 1];
    for (j, row) in grid.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if let Some(s) = e.int() {
                occurrences[s as usize].push((j, c));
            }
        }
    }
    if max == 0 {
        return Err(PdaError::C2Violation { missing: 1 });
    }
    if let Some(missing) = (1..=max).find(|&s| occurrences[s as usize].is_empty()) {
        return Err(PdaError::C2Violation { missing });
    }
    if stars == 0 {
        return Err(PdaError::NoStars);
    }

    for (s, occ) in occurrences.iter().enumerate().skip(1) {
        for (a, &(j1, c1)) in occ.iter().enumerate() {
            for &(j2, c2) in &occ[a + 1..] {
                let ok = j1 != j2
                    && c1 != c2
                    && grid[j1][c2].is_star()
                    && grid[j2][c1].is_star();
                if !ok {
                    return Err(PdaError::C3Violation {
                        value: s as u32,
                        first: (j1, c1),
                        second: (j2, c2),
                    });
                }
            }
        }
    }

    let params = PdaParams {
        num_caches: cols,
        rows,
        stars,
        num_ints: max as usize,
    };
    // Each column carries F − Z pairwise distinct integers.
    debug_assert!(params.num_ints <= cols * (rows - stars));
    Ok(params)
}

impl Pda {
    pub fn new(grid: Vec<Vec<PdaEntry>>) -> Result<Self, PdaError> {
        let params = validate(&grid)?;
        Ok(Self {
            params,
            entries: grid.into_iter().flatten().collect(),
        })
    }

    pub fn params(&self) -> PdaParams {
        self.params
    }

    /// Λ
    pub fn num_caches(&self) -> usize {
        self.params.num_caches
    }

    /// F
    pub fn rows(&self) -> usize {
        self.params.rows
    }

    /// Z
    pub fn stars(&self) -> usize {
        self.params.stars
    }

    /// S
    pub fn num_ints(&self) -> usize {
        self.params.num_ints
    }

    pub fn get(&self, row: usize, column: usize) -> PdaEntry {
        self.entries[row * self.num_caches() + column]
    }

    pub fn column(&self, column: usize) -> impl Iterator<Item = PdaEntry> + '_ {
        (0..self.rows()).map(move |j| self.get(j, column))
    }

    pub fn grid(&self) -> Vec<Vec<PdaEntry>> {
        self.entries
            .chunks(self.num_caches())
            .map(<[PdaEntry]>::to_vec)
            .collect()
    }

    /// Rows whose entry in `column` is a star: the shares that cache stores.
    pub fn star_rows(&self, column: usize) -> Vec<usize> {
        (0..self.rows()).filter(|&j| self.get(j, column).is_star()).collect()
    }

    /// `(row, column)` positions holding integer `s`, in row-major order.
    pub fn occurrences(&self, s: u32) -> Vec<(usize, usize)> {
        (0..self.rows())
            .flat_map(|j| (0..self.num_caches()).map(move |c| (j, c)))
            .filter(|&(j, c)| self.get(j, c) == PdaEntry::Int(s))
            .collect()
    }

    /// Smallest column containing `s` (0-based).
    pub fn tau(&self, s: u32) -> usize {
        assert!(
            (1..=self.num_ints() as u32).contains(&s),
            "integer {s} outside 1..={}",
            self.num_ints()
        );
        (0..self.num_caches())
            .find(|&c| self.column(c).any(|e| e == PdaEntry::Int(s)))
            .expect("C2 guarantees every integer occurs")
    }

    /// The PDA with column `c` of the result equal to column `order[c]` of
    /// `self`. Column permutations preserve C1–C3.
    pub fn permute_columns(&self, order: &[usize]) -> Pda {
        assert_eq!(order.len(), self.num_caches());
        let grid = (0..self.rows())
            .map(|j| order.iter().map(|&c| self.get(j, c)).collect())
            .collect();
        Pda::new(grid).expect("column permutation preserves validity")
    }

    pub fn permute_rows(&self, order: &[usize]) -> Pda {
        assert_eq!(order.len(), self.rows());
        let grid = order
            .iter()
            .map(|&j| (0..self.num_caches()).map(|c| self.get(j, c)).collect())
            .collect();
        Pda::new(grid).expect("row permutation preserves validity")
    }

    /// Serialises to the text format: a `Λ F Z S` header then `F` rows.
    pub fn to_text(&self) -> String {
        let p = self.params;
        let mut out = format!("{} {} {} {}\n", p.num_caches, p.rows, p.stars, p.num_ints);
        for row in self.entries.chunks(self.num_caches()) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text format and validates the result. Blank lines and
    /// lines starting with `#` are skipped; `*` and `★` both denote a star.
    pub fn from_text(text: &str) -> Result<Self, PdaError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(PdaError::Parse {
            line: 1,
            column: 1,
            message: "missing header".into(),
        })?;
        let header: Vec<usize> = tokens(header)
            .map(|(col, tok)| {
                tok.parse().map_err(|_| PdaError::Parse {
                    line: hline,
                    column: col,
                    message: format!("header field {tok:?} is not a number"),
                })
            })
            .collect::<Result<_, _>>()?;
        let [lambda, f, z, s] = header[..] else {
            return Err(PdaError::Parse {
                line: hline,
                column: 1,
                message: format!("header needs 4 fields `Λ F Z S`, found {}", header.len()),
            });
        };

        let mut grid = Vec::with_capacity(f);
        for (lineno, line) in lines {
            if grid.len() == f {
                return Err(PdaError::Parse {
                    line: lineno,
                    column: 1,
                    message: format!("more than the declared {f} rows"),
                });
            }
            let row = tokens(line)
                .map(|(col, tok)| match tok {
                    "*" | "★" => Ok(PdaEntry::Star),
                    _ => match tok.parse::<u32>() {
                        Ok(v) if v > 0 => Ok(PdaEntry::Int(v)),
                        _ => Err(PdaError::Parse {
                            line: lineno,
                            column: col,
                            message: format!("expected `*` or a positive integer, found {tok:?}"),
                        }),
                    },
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != lambda {
                return Err(PdaError::Parse {
                    line: lineno,
                    column: 1,
                    message: format!("row {} has {} entries, expected {lambda}", grid.len() + 1, row.len()),
                });
            }
            grid.push(row);
        }
        if grid.len() != f {
            return Err(PdaError::Parse {
                line: text.lines().count().max(1),
                column: 1,
                message: format!("expected {f} rows, found {}", grid.len()),
            });
        }

        let pda = Pda::new(grid)?;
        for (field, declared, actual) in [
            ("Z", z, pda.stars()),
            ("S", s, pda.num_ints()),
        ] {
            if declared != actual {
                return Err(PdaError::HeaderMismatch {
                    field,
                    declared,
                    actual,
                });
            }
        }
        Ok(pda)
    }
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let base = line.as_ptr() as usize;
    line.split_whitespace()
        .map(move |t| (line[..t.as_ptr() as usize - base].chars().count() + 1, t))
}

impl FromStr for Pda {
    type Err = PdaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pda::from_text(s)
    }
}

impl fmt::Display for Pda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        let Some(i) = (0..k).rev().find(|&i| current[i] != i + n - k) else {
            return out;
        };
        current[i] += 1;
        for m in i + 1..k {
            current[m] = current[m - 1] + 1;
        }
    }
}

/// Lexicographic rank (0-based) of a sorted `k`-subset of `0..n`.
fn lex_rank(subset: &[usize], n: usize) -> usize {
    let k = subset.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &x) in subset.iter().enumerate() {
        for skipped in prev..x {
            rank += binomial(n - skipped - 1, k - i - 1);
        }
        prev = x + 1;
    }
    rank
}

/// The MN PDA for `Λ` caches: rows are the `t`-subsets `T` of the caches,
/// entry `(T, λ)` is a star when `λ ∈ T` and otherwise the 1-based
/// lexicographic rank of `T ∪ {λ}` among the `(t + 1)`-subsets.
pub fn mn_pda(num_caches: usize, t: usize) -> Result<Pda, PdaError> {
    if num_caches < 2 || t == 0 || t >= num_caches {
        return Err(PdaError::OutOfRange {
            t,
            max: num_caches.saturating_sub(1),
        });
    }
    let grid = combinations(num_caches, t)
        .into_iter()
        .map(|subset| {
            (0..num_caches)
                .map(|c| {
                    if subset.contains(&c) {
                        PdaEntry::Star
                    } else {
                        let mut bigger = subset.clone();
                        bigger.push(c);
                        bigger.sort_unstable();
                        PdaEntry::Int(lex_rank(&bigger, num_caches) as u32 + 1)
                    }
                })
                .collect()
        })
        .collect();
    Pda::new(grid)
}

/// The `(6, 4, 2, 4)` PDA of the worked example, with `Λ = 6` caches.
pub fn example_pda() -> Pda {
    EXAMPLE_PDA_TEXT.parse().expect("example PDA is valid")
}

pub const EXAMPLE_PDA_TEXT: &str = "\
6 4 2 4
* * * 1 2 3
* 1 2 * * 4
1 * 3 * 4 *
2 3 * 4 * *
";
