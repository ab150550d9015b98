use std::path::{Path, PathBuf};

use anyhow::{ensure, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use secretive_caching::bounds::optimality_ratio;
use secretive_caching::gfmds::FieldSpec;
use secretive_caching::pda::Pda;
use secretive_caching::scheme::{symbols_to_bytes, DeliveryOptions, Library, RateReport, Session, SystemConfig};
use secretive_caching::secrecy::{audit_session, build_observation_model, Observer, Scope, SecrecyVerdict};
use secretive_caching::{serialize_rational, Rational};

use crate::manifest::{RunManifest, DECODE, RATE, TRANSMISSIONS};
use crate::source::{assignment, Demands, PdaSource};

const LOG_CAP: usize = 64;

pub struct SimulateArgs {
    pub pda: PdaSource,
    pub profile: Vec<usize>,
    pub files: Option<usize>,
    pub bytes: Option<usize>,
    pub field_bits: u32,
    pub seed: u64,
    pub demands: Demands,
    pub out: PathBuf,
    pub strip_pads: bool,
    pub full_payloads: bool,
    pub input_dir: Option<PathBuf>,
}

struct Run {
    session: Session,
    library: Library,
}

fn library_for(manifest: &RunManifest) -> Result<Library> {
    match &manifest.input_dir {
        Some(dir) => Ok(Library::from_dir(Path::new(dir))?),
        None => Ok(Library::synthetic(manifest.num_files, manifest.file_bytes, manifest.seed)?),
    }
}

fn rebuild(manifest: &RunManifest, deliver: bool) -> Result<Run> {
    let pda: Pda = manifest.pda.parse().context("PDA in manifest")?;
    ensure!(
        manifest.profile.len() == pda.num_caches(),
        "profile has {} caches, PDA has {}",
        manifest.profile.len(),
        pda.num_caches()
    );
    let poly = u32::from_str_radix(manifest.field_polynomial.trim_start_matches("0x"), 16)
        .context("field polynomial in manifest")?;
    let field = FieldSpec::with_polynomial(manifest.field_bits, poly)?;
    let library = library_for(manifest)?;
    ensure!(
        library.len() == manifest.num_files && library.file_bytes() == manifest.file_bytes,
        "library does not match manifest ({} files of {} bytes)",
        library.len(),
        library.file_bytes()
    );
    let users: usize = manifest.profile.iter().sum();
    let config = SystemConfig::for_pda(&pda, users, manifest.num_files, manifest.file_bytes, field, manifest.seed);
    let mut session = Session::from_library(&pda, &config, &library, &assignment(&manifest.profile))?;
    if deliver {
        let demands: Vec<usize> = manifest.demands.iter().map(|d| d - 1).collect();
        session.deliver(
            &demands,
            DeliveryOptions {
                strip_pads: manifest.strip_pads,
            },
        )?;
    }
    Ok(Run { session, library })
}

fn transmission_log(session: &Session, full: bool) -> String {
    let bits = session.config().field.bits();
    let mut out = String::new();
    for x in session.transmissions().unwrap_or_default() {
        let bytes = symbols_to_bytes(x.payload.symbols(), bits);
        let shown = if full { &bytes[..] } else { &bytes[..bytes.len().min(LOG_CAP)] };
        let hex: String = shown.iter().map(|b| format!("{b:02x}")).collect();
        out.push_str(&format!("{} {hex}", x.pair));
        if shown.len() < bytes.len() {
            out.push_str(&format!(" +{} bytes", bytes.len() - shown.len()));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct DecodeResult {
    user: usize,
    cache: usize,
    demand: usize,
    ok: bool,
}

fn decode_all(run: &Run) -> Result<Vec<DecodeResult>> {
    let session = &run.session;
    let demands = session.demands().context("run was not delivered")?;
    (0..demands.len())
        .into_par_iter()
        .map(|k| {
            let got = session.decode_bytes(k)?;
            Ok(DecodeResult {
                user: k + 1,
                cache: session.association().original_cache_of(k) + 1,
                demand: demands[k] + 1,
                ok: got == run.library.file(demands[k]),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct RateFile<'a> {
    #[serde(flatten)]
    report: &'a RateReport,
    #[serde(serialize_with = "serialize_rational")]
    measured_rate: Rational,
    #[serde(serialize_with = "serialize_rational")]
    helper_memory: Rational,
    subpacketization: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimality: Option<secretive_caching::bounds::OptimalityReport>,
}

pub fn simulate(args: SimulateArgs, command_line: Vec<String>) -> Result<bool> {
    let pda = args.pda.load()?;
    let (num_files, file_bytes) = match &args.input_dir {
        Some(dir) => {
            let lib = Library::from_dir(dir)?;
            if let Some(n) = args.files {
                ensure!(n == lib.len(), "--files {n} but {} holds {} files", dir.display(), lib.len());
            }
            (lib.len(), lib.file_bytes())
        }
        None => (
            args.files.context("--files is required without --input-dir")?,
            args.bytes.unwrap_or(1024),
        ),
    };
    let users: usize = args.profile.iter().sum();
    let demands = args.demands.resolve(users, num_files)?;
    let field = FieldSpec::new(args.field_bits)?;
    let mut manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command_line,
        seed: args.seed,
        pda_source: args.pda.to_string(),
        pda: pda.to_text(),
        profile: args.profile,
        cache_order: Vec::new(),
        demands_spec: args.demands.to_string(),
        demands: demands.iter().map(|d| d + 1).collect(),
        num_files,
        file_bytes,
        input_dir: args.input_dir.map(|d| d.display().to_string()),
        field_bits: field.bits(),
        field_polynomial: format!("{:#x}", field.polynomial()),
        strip_pads: args.strip_pads,
        full_payloads: args.full_payloads,
        outputs: [TRANSMISSIONS, DECODE, RATE].map(String::from).to_vec(),
    };
    let run = rebuild(&manifest, true)?;
    let session = &run.session;
    manifest.cache_order = session.association().cache_order().iter().map(|c| c + 1).collect();

    let decoded = decode_all(&run)?;
    let report = session.rate_report();
    let rate_file = RateFile {
        report: &report,
        measured_rate: session.measured_rate()?,
        helper_memory: session.config().helper_memory,
        subpacketization: pda.rows(),
        optimality: optimality_ratio(&session.relabelled_pda(), num_files, session.association().profile()).ok(),
    };

    std::fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    manifest.write(&args.out)?;
    let write = |name: &str, text: String| {
        let path = args.out.join(name);
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    };
    write(TRANSMISSIONS, transmission_log(session, args.full_payloads))?;
    write(DECODE, serde_json::to_string_pretty(&decoded)? + "\n")?;
    write(RATE, serde_json::to_string_pretty(&rate_file)? + "\n")?;

    let ok = decoded.iter().filter(|d| d.ok).count();
    println!("{}", pda.params());
    println!(
        "transmissions: {}  rate: {}  (formula {})",
        report.num_transmissions,
        rate_file.measured_rate,
        report.rate
    );
    println!("decoded: {ok}/{} users", decoded.len());
    println!("wrote {}", args.out.display());
    Ok(ok == decoded.len())
}

fn verdict_line(verdict: &SecrecyVerdict) -> &'static str {
    if verdict.holds {
        "PASS"
    } else {
        "FAIL"
    }
}

fn print_witness(session: &Session, observer: Observer, scope: Scope, verdict: &SecrecyVerdict) -> Result<()> {
    if let Some(w) = &verdict.witness {
        let model = build_observation_model(session, observer, scope, 1)?;
        println!("    witness: {}", w.describe(model.labels()));
    }
    Ok(())
}

pub fn verify(dir: &Path, caches_only: bool) -> Result<bool> {
    let manifest = RunManifest::read(dir)?;
    let run = rebuild(&manifest, !caches_only)?;
    let session = &run.session;
    let mut failures = 0usize;

    if !caches_only {
        let log_path = dir.join(TRANSMISSIONS);
        let on_disk = std::fs::read_to_string(&log_path)
            .with_context(|| format!("reading {}", log_path.display()))?;
        let same = on_disk == transmission_log(session, manifest.full_payloads);
        failures += usize::from(!same);
        println!("transmission log reproduced: {}", if same { "PASS" } else { "FAIL" });
    }

    let audit = audit_session(session)?;
    for (c, v) in audit.helper_caches.iter().enumerate() {
        println!("cache {}: helper-cache secrecy {}", c + 1, verdict_line(v));
        print_witness(session, Observer::Cache(c), Scope::CachesOnly, v)?;
        failures += usize::from(!v.holds);
    }

    let decoded = if caches_only { None } else { Some(decode_all(&run)?) };
    for (k, placement) in audit.users_placement.iter().enumerate() {
        let mut line = format!("user {}: placement secrecy {}", k + 1, verdict_line(placement));
        failures += usize::from(!placement.holds);
        if let (Some(decoded), Some(delivery)) = (&decoded, &audit.users_delivery) {
            let ok = decoded[k].ok;
            failures += usize::from(!ok) + usize::from(!delivery[k].holds);
            line = format!(
                "user {}: decode {}, placement secrecy {}, delivery secrecy {}",
                k + 1,
                if ok { "PASS" } else { "FAIL" },
                verdict_line(placement),
                verdict_line(&delivery[k])
            );
        }
        println!("{line}");
        print_witness(session, Observer::User(k), Scope::CachesOnly, placement)?;
        if let Some(delivery) = &audit.users_delivery {
            print_witness(session, Observer::User(k), Scope::CachesPlusDelivery, &delivery[k])?;
        }
    }
    if let Some(v) = &audit.eavesdropper {
        println!("eavesdropper: {}", verdict_line(v));
        print_witness(session, Observer::Eavesdropper, Scope::CachesPlusDelivery, v)?;
        failures += usize::from(!v.holds);
    }

    if failures == 0 {
        println!("all checks passed");
    } else {
        println!("{failures} checks failed");
    }
    Ok(failures == 0)
}
