use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};

use secretive_caching::bounds::{
    cutset_bound, decimal, mn_family, optimality_ratio, sweep, BoundQuery,
};
use secretive_caching::pda::{mn_pda, Pda};
use secretive_caching::scheme::{build_g_array, memory_for_pda, rate, Association};
use secretive_caching::{parse_rational, Rational};

use crate::source::{assignment, PdaSource};

pub fn pda_validate(path: &Path) -> Result<bool> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match text.parse::<Pda>() {
        Ok(pda) => {
            println!("valid: {}", pda.params());
            Ok(true)
        }
        Err(e) => {
            println!("invalid: {e}");
            Ok(false)
        }
    }
}

pub fn pda_mn(caches: usize, t: usize, out: Option<&Path>) -> Result<()> {
    let text = mn_pda(caches, t)?.to_text();
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn pda_show(source: &PdaSource, profile: Option<&[usize]>) -> Result<()> {
    let pda = source.load()?;
    println!("{}  (Z/F = {})", pda.params(), pda.params().memory_ratio());
    print!("{}", pda.to_text().lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
    if let Some(profile) = profile {
        ensure!(profile.len() == pda.num_caches(), "profile needs {} entries", pda.num_caches());
        let association = Association::new(pda.num_caches(), &assignment(profile))?;
        let g = build_g_array(&pda, &association);
        println!("G transposed (one line per user):");
        print!("{}", g.transpose_text());
    }
    Ok(())
}

fn sorted_desc(profile: &[usize]) -> Vec<usize> {
    let mut p = profile.to_vec();
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}

pub fn rate_cmd(source: &PdaSource, profile: &[usize]) -> Result<()> {
    let pda = source.load()?;
    ensure!(profile.len() == pda.num_caches(), "profile needs {} entries", pda.num_caches());
    let association = Association::new(pda.num_caches(), &assignment(profile))?;
    let relabelled = pda.permute_columns(association.cache_order());
    let report = rate(&relabelled, association.profile())?;
    println!("{}", pda.params());
    println!(
        "profile (sorted): {:?}  cache order: {:?}",
        association.profile(),
        association.cache_order().iter().map(|c| c + 1).collect::<Vec<_>>()
    );
    println!("multiplicity per s: {:?}", report.per_s_multiplicity);
    println!("transmissions: {}", report.num_transmissions);
    println!("rate: {} ({})", report.rate, decimal(report.rate));
    Ok(())
}

pub struct BoundArgs {
    pub files: usize,
    pub profile: Vec<usize>,
    pub memory: Option<String>,
    pub pda: Option<PdaSource>,
    pub user_memory: String,
}

pub fn bound_cmd(args: BoundArgs) -> Result<()> {
    let profile = sorted_desc(&args.profile);
    let user_memory = parse_rational(&args.user_memory).context("--user-memory")?;
    let (memory, pda) = match (&args.memory, &args.pda) {
        (Some(m), None) => (parse_rational(m).context("--memory")?, None),
        (None, Some(src)) => {
            let pda = src.load()?;
            (memory_for_pda(&pda, args.files), Some(pda))
        }
        _ => bail!("pass exactly one of --memory or --pda"),
    };
    let q = BoundQuery::new(args.files, memory, user_memory, profile.clone())?;
    let bound = cutset_bound(&q);
    println!("N={} K={} M={} M_U={}", args.files, q.num_users(), memory, user_memory);
    println!("lower bound: {} ({})", bound.value, decimal(bound.value));
    if let Some(s) = bound.best_s {
        println!("maximising s: {s}");
    }
    if let Some(note) = &bound.note {
        println!("note: {note}");
    }
    if let Some(pda) = pda {
        ensure!(user_memory == Rational::from(1), "the optimality gap is defined for M_U = 1");
        ensure!(profile.len() == pda.num_caches(), "profile needs {} entries", pda.num_caches());
        let rep = optimality_ratio(&pda, args.files, &profile)?;
        println!("achievable rate: {} ({})", rep.rate, decimal(rep.rate));
        match rep.ratio {
            Some(r) => println!("ratio: {} ({})", r, decimal(r)),
            None => println!("ratio: undefined (bound is 0)"),
        }
        if !rep.in_regime {
            println!("note: N < 2K, outside the regime where the gap is at most Λ");
        }
    }
    Ok(())
}

pub struct SweepArgs {
    pub files: usize,
    pub profile: Vec<usize>,
    pub extra: Vec<PdaSource>,
    pub skip_mn: bool,
    pub all_points: bool,
    pub out: Option<PathBuf>,
}

pub fn sweep_cmd(args: SweepArgs) -> Result<()> {
    let caches = args.profile.len();
    let mut pdas = if args.skip_mn || caches < 2 {
        Vec::new()
    } else {
        mn_family(caches)?
    };
    for src in &args.extra {
        pdas.push((src.id(), src.load()?));
    }
    let s = sweep(args.files, &args.profile, &pdas)?;
    let csv = if args.all_points { s.candidates_csv() } else { s.to_csv() };
    match &args.out {
        Some(path) => {
            std::fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {} rows to {}", csv.lines().count() - 1, path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}
