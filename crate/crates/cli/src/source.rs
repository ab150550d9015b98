use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use secretive_caching::pda::{mn_pda, Pda};

/// `mn:Λ,t` or a path to a PDA text file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PdaSource {
    Mn { caches: usize, t: usize },
    File(PathBuf),
}

impl FromStr for PdaSource {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.strip_prefix("mn:") {
            Some(rest) => {
                let (l, t) = rest
                    .split_once(',')
                    .with_context(|| format!("expected mn:Λ,t, got {s:?}"))?;
                Ok(PdaSource::Mn {
                    caches: l.trim().parse().context("Λ in mn:Λ,t")?,
                    t: t.trim().parse().context("t in mn:Λ,t")?,
                })
            }
            None => Ok(PdaSource::File(PathBuf::from(s))),
        }
    }
}

impl fmt::Display for PdaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdaSource::Mn { caches, t } => write!(f, "mn:{caches},{t}"),
            PdaSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl PdaSource {
    pub fn load(&self) -> Result<Pda> {
        match self {
            PdaSource::Mn { caches, t } => Ok(mn_pda(*caches, *t)?),
            PdaSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                text.parse::<Pda>()
                    .with_context(|| format!("parsing {}", path.display()))
            }
        }
    }

    /// Short label for sweep rows.
    pub fn id(&self) -> String {
        match self {
            PdaSource::Mn { .. } => self.to_string(),
            PdaSource::File(p) => p
                .file_stem()
                .map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned()),
        }
    }
}

/// Per-cache user counts, in cache order; at least one user overall.
pub fn check_profile(profile: &[usize]) -> Result<()> {
    ensure!(profile.iter().sum::<usize>() > 0, "profile has no users");
    Ok(())
}

/// Users attached cache by cache: the first `profile[0]` users to cache 0,
/// and so on.
pub fn assignment(profile: &[usize]) -> Vec<usize> {
    profile
        .iter()
        .enumerate()
        .flat_map(|(c, &n)| std::iter::repeat(c).take(n))
        .collect()
}

/// `K` users spread over `Λ` caches as evenly as possible.
pub fn near_uniform(users: usize, caches: usize) -> Vec<usize> {
    (0..caches)
        .map(|c| users / caches + usize::from(c < users % caches))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Demands {
    /// User `k` asks for file `k`.
    WorstCase,
    /// 1-based file indices, one per user.
    Explicit(Vec<usize>),
}

impl FromStr for Demands {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "worst-case" {
            return Ok(Demands::WorstCase);
        }
        s.split(',')
            .map(|x| {
                let d: usize = x.trim().parse().with_context(|| format!("bad demand {x:?}"))?;
                ensure!(d >= 1, "demands are 1-based file indices");
                Ok(d)
            })
            .collect::<Result<Vec<_>>>()
            .map(Demands::Explicit)
    }
}

impl fmt::Display for Demands {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Demands::WorstCase => f.write_str("worst-case"),
            Demands::Explicit(d) => {
                let parts: Vec<String> = d.iter().map(usize::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl Demands {
    /// 0-based demand vector for `users` users and `files` files.
    pub fn resolve(&self, users: usize, files: usize) -> Result<Vec<usize>> {
        match self {
            Demands::WorstCase => {
                if files < users {
                    bail!("worst-case demands need N ≥ K (N = {files}, K = {users}); pass --demands explicitly");
                }
                Ok((0..users).collect())
            }
            Demands::Explicit(d) => {
                ensure!(d.len() == users, "{} demands for {users} users", d.len());
                if let Some(bad) = d.iter().find(|&&x| x > files) {
                    bail!("demand {bad} exceeds N = {files}");
                }
                Ok(d.iter().map(|x| x - 1).collect())
            }
        }
    }
}
