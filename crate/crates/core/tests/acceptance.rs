//! End-to-end acceptance checks. Runs as a plain binary so each criterion
//! prints one line; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use secretive_caching::bounds::{
    cutset_bound, cutset_term, mn_family, optimality_ratio, sweep, unit_user_memory_term, BoundQuery,
    BASELINE_ID,
};
use secretive_caching::gfmds::{Field, FieldSpec, SecretSharing, ShareVector};
use secretive_caching::pda::{mn_pda, Pda, PdaEntry};
use secretive_caching::scheme::{
    baseline_rate_m0, DeliveryOptions, FixedSource, GEntry, Library, Pair, Session, SystemConfig,
};
use secretive_caching::secrecy::{
    audit_session, brute_force_secrecy, build_observation_model, check_zero_information,
    sharing_model, LinearObservationModel, ObservationOracle, Observer, SchemeOracle, Scope,
    SharingOracle, Witness,
};
use secretive_caching::Rational;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn data_pda(name: &str) -> Pda {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/pdas").join(name);
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()))
        .parse()
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn imported_pdas() -> Vec<(String, Pda)> {
    ["l6_f3_z1_s6.pda", "l6_f4_z2_s4.pda", "l6_f3_z2_s2.pda"]
        .iter()
        .map(|n| (n.trim_end_matches(".pda").to_string(), data_pda(n)))
        .collect()
}

fn assignment_from_loads(loads: &[usize]) -> Vec<usize> {
    loads
        .iter()
        .enumerate()
        .flat_map(|(c, &n)| std::iter::repeat(c).take(n))
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_s 𝓛_{τ_s} / (F − Z)` straight from the PDA grid and the raw
/// assignment: caches are ranked by load (ties keep their index), and each
/// integer contributes the load of the best-ranked cache whose column
/// contains it.
fn rate_oracle(pda: &Pda, assignment: &[usize]) -> Rational {
    let mut loads = vec![0usize; pda.num_caches()];
    for &c in assignment {
        loads[c] += 1;
    }
    let mut order: Vec<usize> = (0..pda.num_caches()).collect();
    order.sort_by(|&a, &b| loads[b].cmp(&loads[a]).then(a.cmp(&b)));
    let mut total = 0;
    for s in 1..=pda.num_ints() as u32 {
        let first = order
            .iter()
            .find(|&&c| (0..pda.rows()).any(|j| pda.get(j, c) == PdaEntry::Int(s)))
            .expect("every integer appears");
        total += loads[*first];
    }
    Rational::new(total as i64, (pda.rows() - pda.stars()) as i64)
}

struct Instance {
    pda: Pda,
    config: SystemConfig,
    assignment: Vec<usize>,
    demands: Vec<usize>,
    library: Library,
}

impl Instance {
    fn session(&self, options: DeliveryOptions) -> Session {
        let mut s = Session::from_library(&self.pda, &self.config, &self.library, &self.assignment)
            .expect("instance places");
        s.deliver(&self.demands, options).expect("instance delivers");
        s
    }
}

/// The 200 randomized MN instances shared by the rate and secrecy checks.
fn random_instances() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ec2e7);
    (0..200)
        .map(|i| {
            let lambda = rng.gen_range(2..=6);
            let t = rng.gen_range(1..lambda);
            let pda = mn_pda(lambda, t).unwrap();
            let k = rng.gen_range(1..=24);
            let assignment: Vec<usize> = (0..k).map(|_| rng.gen_range(0..lambda)).collect();
            let n = k + rng.gen_range(0..4);
            let mut files: Vec<usize> = (0..n).collect();
            files.shuffle(&mut rng);
            let demands = files[..k].to_vec();
            let bytes = rng.gen_range(1..6);
            let seed = 1000 + i;
            Instance {
                config: SystemConfig::for_pda(&pda, k, n, bytes, FieldSpec::gf256(), seed),
                library: Library::synthetic(n, bytes, seed).unwrap(),
                pda,
                assignment,
                demands,
            }
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let pda = data_pda("l6_f4_z2_s4.pda");
    let profile = [6, 5, 4, 3, 2, 1];
    let config = SystemConfig::for_pda(&pda, 21, 21, 64, FieldSpec::gf256(), 1);
    ensure!(config.helper_memory == Rational::from(21), "M = {}", config.helper_memory);
    let library = Library::synthetic(21, 64, 1).unwrap();
    let mut session =
        Session::from_library(&pda, &config, &library, &assignment_from_loads(&profile)).unwrap();
    let demands: Vec<usize> = (0..21).collect();
    let count = session.deliver(&demands, DeliveryOptions::default()).unwrap().len();
    ensure!(count == 20, "{count} transmissions");
    let rate = session.measured_rate().unwrap();
    ensure!(rate == Rational::from(10), "measured rate {rate}");
    ensure!(session.rate_report().rate == Rational::from(10), "formula rate");
    ensure!(pda.rows() == 4, "F = {}", pda.rows());

    // Published transmissions, 1-based: X_(s,i) = ⊕ S_{k, j} over (k, j),
    // with user k demanding file k.
    const PUBLISHED: &[((u32, u32), &[(usize, usize)])] = &[
        ((1, 1), &[(1, 3), (7, 2), (16, 1)]),
        ((1, 2), &[(2, 3), (8, 2), (17, 1)]),
        ((1, 3), &[(3, 3), (9, 2), (18, 1)]),
        ((1, 4), &[(4, 3), (10, 2)]),
        ((1, 5), &[(5, 3), (11, 2)]),
        ((1, 6), &[(6, 3)]),
        ((2, 1), &[(1, 4), (12, 2), (19, 1)]),
        ((2, 2), &[(2, 4), (13, 2), (20, 1)]),
        ((2, 3), &[(3, 4), (14, 2)]),
        ((2, 4), &[(4, 4), (15, 2)]),
        ((2, 5), &[(5, 4)]),
        ((2, 6), &[(6, 4)]),
        ((3, 1), &[(7, 4), (12, 3), (21, 1)]),
        ((3, 2), &[(8, 4), (13, 3)]),
        ((3, 3), &[(9, 4), (14, 3)]),
        ((3, 4), &[(10, 4), (15, 3)]),
        ((3, 5), &[(11, 4)]),
        ((4, 1), &[(16, 4), (19, 3), (21, 2)]),
        ((4, 2), &[(17, 4), (20, 3)]),
        ((4, 3), &[(18, 4)]),
    ];
    let mut expected = vec![vec![GEntry::Star; 21]; 4];
    for &((s, i), cells) in PUBLISHED {
        for &(k, j) in cells {
            expected[j - 1][k - 1] = GEntry::Pair(Pair::new(s, i));
        }
    }
    let g = session.g_array();
    for (j, row) in expected.iter().enumerate() {
        for (k, &want) in row.iter().enumerate() {
            ensure!(g.get(j, k) == want, "G({},{}) = {} expected {want}", j + 1, k + 1, g.get(j, k));
        }
    }
    let order: Vec<Pair> = session.transmissions().unwrap().iter().map(|x| x.pair).collect();
    let published: Vec<Pair> = PUBLISHED.iter().map(|&((s, i), _)| Pair::new(s, i)).collect();
    ensure!(order == published, "transmission order {order:?}");
    for k in 0..21 {
        ensure!(session.decode_bytes(k).unwrap() == library.file(k), "user {} decode", k + 1);
    }
    let elapsed = started.elapsed();
    ensure!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    Ok(format!("20 transmissions, rate 10, F = 4, G matches all 84 cells ({elapsed:.0?})"))
}

fn criterion_2(instances: &[Instance]) -> Outcome {
    for (idx, inst) in instances.iter().enumerate() {
        let session = inst.session(DeliveryOptions::default());
        let measured = session.measured_rate().unwrap();
        let oracle = rate_oracle(&inst.pda, &inst.assignment);
        let formula = session.rate_report().rate;
        ensure!(
            measured == oracle && formula == oracle,
            "instance {idx}: measured {measured}, formula {formula}, oracle {oracle}"
        );
    }
    Ok(format!("{} instances, measured rate equals formula exactly", instances.len()))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut pdas: Vec<Pda> = (2..=8)
        .flat_map(|l| (1..l).map(move |t| mn_pda(l, t).unwrap()))
        .collect();
    pdas.extend(imported_pdas().into_iter().map(|(_, p)| p));
    for pda in &pdas {
        let lambda = pda.num_caches();
        for per_cache in 1..=4 {
            let k = per_cache * lambda;
            let r = secretive_caching::scheme::rate(pda, &vec![per_cache; lambda]).unwrap().rate;
            let closed = Rational::new(
                (k * pda.num_ints()) as i64,
                (lambda * (pda.rows() - pda.stars())) as i64,
            );
            ensure!(r == closed, "{} with {per_cache} per cache: {r} vs {closed}", pda.params());
            checked += 1;
        }
    }
    Ok(format!("{checked} uniform profiles match K·S/(Λ(F−Z))"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut pool: Vec<Pda> = (2..=5)
        .flat_map(|l| (1..l).map(move |t| mn_pda(l, t).unwrap()))
        .collect();
    pool.extend(imported_pdas().into_iter().map(|(_, p)| p));
    let mut users_checked = 0;
    let mut repeated_runs = 0;
    for run in 0..50u64 {
        let pda = pool.choose(&mut rng).unwrap().clone();
        let bits = (4..=10u32)
            .filter(|&l| 2 * pda.rows() <= 1 << l)
            .collect::<Vec<_>>()
            .choose(&mut rng)
            .copied()
            .unwrap();
        let k = rng.gen_range(1..=12);
        let n = rng.gen_range(1..=10);
        let bytes = rng.gen_range(1..=97);
        let assignment: Vec<usize> = (0..k).map(|_| rng.gen_range(0..pda.num_caches())).collect();
        let demands: Vec<usize> = if run % 2 == 0 {
            (0..k).map(|_| rng.gen_range(0..n)).collect()
        } else {
            vec![rng.gen_range(0..n); k]
        };
        if demands.iter().collect::<BTreeSet<_>>().len() < k {
            repeated_runs += 1;
        }
        let field = FieldSpec::new(bits).unwrap();
        let config = SystemConfig::for_pda(&pda, k, n, bytes, field, run);
        let library = Library::synthetic(n, bytes, run).unwrap();
        let mut session = Session::from_library(&pda, &config, &library, &assignment).unwrap();
        session.deliver(&demands, DeliveryOptions::default()).unwrap();
        for user in 0..k {
            let got = session.decode_bytes(user).unwrap();
            ensure!(
                got == library.file(demands[user]),
                "run {run} user {user} ({} over GF(2^{bits}))",
                pda.params()
            );
            users_checked += 1;
        }
    }
    Ok(format!("50 runs, {users_checked} users bit-exact, {repeated_runs} runs with repeated demands"))
}

/// `y·[A_u | B] = 0` and `y·A_p ≠ 0`, checked directly on the matrices.
fn witness_is_valid(model: &LinearObservationModel, protected: &BTreeSet<usize>, y: &[u16]) -> bool {
    let field = model.field();
    let combine = |m: &secretive_caching::gfmds::SymbolMatrix, col: usize| {
        (0..m.rows()).fold(0u16, |acc, r| acc ^ field.mul(y[r], m.get(r, col)))
    };
    let rand_clear = (0..model.rand_dim()).all(|c| combine(model.rand_matrix(), c) == 0);
    let mut unprotected_clear = true;
    let mut protected_hit = false;
    for c in 0..model.file_dim() {
        let v = combine(model.file_matrix(), c);
        if protected.contains(&model.file_of(c)) {
            protected_hit |= v != 0;
        } else {
            unprotected_clear &= v == 0;
        }
    }
    rand_clear && unprotected_clear && protected_hit
}

fn tiny_oracles() -> Vec<(String, Box<dyn ObservationOracle>, BTreeSet<usize>, LinearObservationModel)> {
    let mut out: Vec<(String, Box<dyn ObservationOracle>, BTreeSet<usize>, LinearObservationModel)> =
        Vec::new();
    for bits in [2u32, 3] {
        let field = Field::new(FieldSpec::new(bits).unwrap());
        for (z, f) in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)] {
            if 2 * f > field.order() {
                continue;
            }
            let ss = SecretSharing::new(field.clone(), z, f).unwrap();
            for observed in [(0..z).collect::<Vec<_>>(), (f - z..=f - 1).chain(0..1).collect()] {
                let model = sharing_model(&ss, &observed);
                out.push((
                    format!("sharing ({z},{f}) GF(2^{bits}) shares {observed:?}"),
                    Box::new(SharingOracle {
                        sharing: ss.clone(),
                        observed,
                    }),
                    [0].into(),
                    model,
                ));
            }
        }
    }
    let pda = mn_pda(2, 1).unwrap();
    let setups: &[(u32, &[usize], &[usize])] = &[(2, &[0, 1], &[0, 1]), (2, &[0, 0], &[1, 0]), (2, &[0, 0, 1], &[0, 1, 1])];
    for &(bits, assignment, demands) in setups {
        let config = SystemConfig::for_pda(&pda, assignment.len(), 2, 1, FieldSpec::new(bits).unwrap(), 0);
        let mut observers: Vec<Observer> = (0..assignment.len()).map(Observer::User).collect();
        observers.extend([Observer::Cache(0), Observer::Eavesdropper]);
        for observer in observers {
            for strip_pads in [false, true] {
                let options = DeliveryOptions { strip_pads };
                let protected: BTreeSet<usize> = match observer {
                    Observer::User(k) => (0..2).filter(|&n| n != demands[k]).collect(),
                    _ => (0..2).collect(),
                };
                let oracle = SchemeOracle::new(
                    pda.clone(),
                    config.clone(),
                    assignment.to_vec(),
                    demands.to_vec(),
                    observer,
                    Scope::CachesPlusDelivery,
                    options,
                )
                .unwrap();
                let files = vec![vec![ShareVector(vec![0])]; 2];
                let mut session =
                    Session::place(&pda, &config, &files, assignment, &mut FixedSource::new(vec![0; 64]))
                        .unwrap();
                session.deliver(demands, options).unwrap();
                let model = build_observation_model(&session, observer, Scope::CachesPlusDelivery, 1).unwrap();
                out.push((
                    format!("scheme {assignment:?} {observer} strip_pads={strip_pads}"),
                    Box::new(oracle),
                    protected,
                    model,
                ));
            }
        }
    }
    out
}

fn criterion_5(instances: &[Instance]) -> Outcome {
    use rayon::prelude::*;
    let failures: Vec<String> = instances
        .par_iter()
        .enumerate()
        .filter_map(|(idx, inst)| {
            let audit = audit_session(&inst.session(DeliveryOptions::default())).unwrap();
            (!audit.all_hold()).then(|| format!("instance {idx}"))
        })
        .collect();
    ensure!(failures.is_empty(), "secrecy failed on {failures:?}");

    // Sabotage on the worked example: every user must leak, with a witness
    // that checks out against the matrices.
    let pda = data_pda("l6_f4_z2_s4.pda");
    let config = SystemConfig::for_pda(&pda, 21, 21, 8, FieldSpec::gf256(), 3);
    let sabotaged = Instance {
        library: Library::synthetic(21, 8, 3).unwrap(),
        pda,
        config,
        assignment: assignment_from_loads(&[6, 5, 4, 3, 2, 1]),
        demands: (0..21).collect(),
    }
    .session(DeliveryOptions { strip_pads: true });
    for k in 0..21 {
        let model = build_observation_model(&sabotaged, Observer::User(k), Scope::CachesPlusDelivery, 1).unwrap();
        let others: BTreeSet<usize> = (0..21).filter(|&n| n != k).collect();
        let verdict = check_zero_information(&model, &others);
        ensure!(!verdict.holds, "stripped pads passed for user {}", k + 1);
        let Some(Witness::Functional { coefficients }) = verdict.witness else {
            return Err("no functional witness".into());
        };
        ensure!(witness_is_valid(&model, &others, &coefficients), "invalid witness for user {}", k + 1);
    }

    let oracles = tiny_oracles();
    let mut disagreements = Vec::new();
    let mut leaks = 0;
    for (label, oracle, protected, model) in &oracles {
        let brute = brute_force_secrecy(oracle.as_ref(), protected).unwrap().holds;
        let rank = check_zero_information(model, protected).holds;
        leaks += usize::from(!brute);
        if brute != rank {
            disagreements.push(label.clone());
        }
    }
    ensure!(oracles.len() >= 20, "only {} tiny instances", oracles.len());
    ensure!(disagreements.is_empty(), "oracle disagrees on {disagreements:?}");
    Ok(format!(
        "{} instances audited; sabotage caught for 21/21 users; {} tiny instances agree with enumeration ({leaks} leaking)",
        instances.len(),
        oracles.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut subsets = 0;
    for bits in [3u32, 8] {
        let field = Field::new(FieldSpec::new(bits).unwrap());
        for (z, f) in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)] {
            let ss = SecretSharing::new(field.clone(), z, f).unwrap();
            for mask in 0u32..1 << f {
                if mask.count_ones() as usize != z {
                    continue;
                }
                let observed: Vec<usize> = (0..f).filter(|j| mask >> j & 1 == 1).collect();
                ensure!(
                    check_zero_information(&sharing_model(&ss, &observed), &[0].into()).holds,
                    "({z},{f}) shares {observed:?} leak"
                );
                subsets += 1;
            }
            let all: Vec<usize> = (0..f).collect();
            ensure!(
                !check_zero_information(&sharing_model(&ss, &all), &[0].into()).holds,
                "({z},{f}) full set passes"
            );
            let mut rng = ChaCha8Rng::seed_from_u64(u64::from(bits) * 100 + (z * 10 + f) as u64);
            let mut draw = |n: usize| -> Vec<ShareVector> {
                (0..n)
                    .map(|_| ShareVector((0..5).map(|_| rng.gen_range(0..field.order() as u16)).collect()))
                    .collect()
            };
            let subfiles = draw(f - z);
            let shares = ss.encode(&subfiles, &draw(z)).unwrap();
            ensure!(ss.reconstruct(&shares).unwrap() == subfiles, "({z},{f}) reconstruction");
        }
    }
    Ok(format!("{subsets} Z-subsets hide the file; every full set reconstructs"))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for lambda in 2..=8 {
        for t in 1..lambda {
            let pda = mn_pda(lambda, t).unwrap();
            let p = Pda::new(pda.grid()).map_err(|e| format!("mn({lambda},{t}): {e}"))?.params();
            ensure!(
                (p.rows, p.stars, p.num_ints) == (binomial(lambda, t), binomial(lambda - 1, t - 1), binomial(lambda, t + 1)),
                "mn({lambda},{t}) has {p}"
            );
            for s in 1..=p.num_ints as u32 {
                let hits = (0..p.rows)
                    .flat_map(|j| (0..lambda).map(move |c| (j, c)))
                    .filter(|&(j, c)| pda.get(j, c) == PdaEntry::Int(s))
                    .count();
                ensure!(hits == t + 1, "mn({lambda},{t}) integer {s} appears {hits} times");
            }
            count += 1;
        }
    }
    Ok(format!("{count} MN arrays validate with the expected (F, Z, S)"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut configs: Vec<(usize, Vec<usize>, Vec<(String, Pda)>)> = vec![
        (42, vec![6, 5, 4, 3, 2, 1], [mn_family(6).unwrap(), imported_pdas()].concat()),
        (42, vec![4, 4, 4, 3, 3, 3], [mn_family(6).unwrap(), imported_pdas()].concat()),
        (120, vec![6; 10], mn_family(10).unwrap()),
    ];
    for _ in 0..40 {
        let lambda = rng.gen_range(2..=8);
        let profile: Vec<usize> = (0..lambda).map(|_| rng.gen_range(1..=5)).collect();
        let k: usize = profile.iter().sum();
        configs.push((2 * k + rng.gen_range(0..5), profile, mn_family(lambda).unwrap()));
    }
    let mut points = 0;
    for (n, profile, pdas) in &configs {
        let s = sweep(*n, profile, pdas).map_err(|e| e.to_string())?;
        let k: usize = s.profile.iter().sum();
        let l1 = s.profile[0] as i64;
        let lambda = s.profile.len() as i64;
        for p in &s.candidates {
            ensure!(p.rate_lower_bound >= Rational::from(l1), "bound {} < 𝓛₁ at {}", p.rate_lower_bound, p.pda_id);
            let ratio = p.rate_achievable / p.rate_lower_bound;
            ensure!(
                ratio >= Rational::from(1) && ratio <= Rational::from(lambda) && ratio <= Rational::new(k as i64, l1),
                "ratio {ratio} at {} (N={n}, profile {:?})",
                p.pda_id,
                s.profile
            );
            points += 1;
        }
        for (_, pda) in pdas {
            let rep = optimality_ratio(pda, *n, &s.profile).map_err(|e| e.to_string())?;
            ensure!(rep.in_regime, "N ≥ 2K expected");
        }
    }
    for _ in 0..20 {
        let lambda = rng.gen_range(1..=8);
        let mut profile: Vec<usize> = (0..lambda).map(|_| rng.gen_range(1..=6)).collect();
        profile.sort_unstable_by(|a, b| b.cmp(a));
        let n = rng.gen_range(2..=90);
        let memory = Rational::new(rng.gen_range(0..200), rng.gen_range(1..=12));
        let q = BoundQuery::new(n, memory, Rational::from(1), profile).unwrap();
        let k = q.num_users();
        let mut best = Rational::from(0);
        for s in 1..=(n / 2).min(k) {
            let general = cutset_term(&q, s).unwrap();
            ensure!(general == unit_user_memory_term(&q, s).unwrap(), "term mismatch at s = {s}");
            best = best.max(general);
        }
        ensure!(cutset_bound(&q).value == best, "max mismatch");
    }
    Ok(format!("{points} sweep points within [1, Λ] and ≤ K/𝓛₁; unit-user-memory form exact at 20 points"))
}

fn criterion_9() -> Outcome {
    for (k, n) in [(1, 1), (3, 5), (21, 21), (24, 30)] {
        let config = SystemConfig {
            num_caches: 6,
            num_users: k,
            helper_memory: Rational::from(0),
            num_files: n,
            user_memory: Rational::from(1),
            file_bytes: 17,
            field: FieldSpec::gf256(),
            seed: k as u64,
        };
        let demands: Vec<usize> = (0..k).map(|u| u % n).collect();
        let report = baseline_rate_m0(&config, &demands).map_err(|e| e.to_string())?;
        ensure!(report.rate == Rational::from(k as i64), "K = {k}: rate {}", report.rate);
        ensure!(report.decoded && report.secure, "K = {k}: {report:?}");
    }
    Ok("rate K, all users decode, secrecy holds".into())
}

fn criterion_10() -> Outcome {
    let mut notes = Vec::new();
    for profile in [[6, 5, 4, 3, 2, 1], [4, 4, 4, 3, 3, 3]] {
        let pdas = [imported_pdas(), mn_family(6).unwrap()].concat();
        let s = sweep(42, &profile, &pdas).map_err(|e| e.to_string())?;
        ensure!(s.candidates.len() == pdas.len() + 1, "missing sweep rows");
        ensure!(s.candidates[0].pda_id == BASELINE_ID, "baseline first");
        let mut shared = 0;
        for imported in s.candidates.iter().filter(|p| p.pda_id.starts_with("l6_")) {
            let Some(mn) = s.candidates.iter().find(|p| p.pda_id.starts_with("mn:") && p.memory == imported.memory) else {
                continue;
            };
            ensure!(
                imported.subpacketization < mn.subpacketization,
                "{} F = {} vs {} F = {}",
                imported.pda_id,
                imported.subpacketization,
                mn.pda_id,
                mn.subpacketization
            );
            shared += 1;
            notes.push(format!(
                "M/N={}: F {} vs {}, rate {} vs {}",
                imported.memory / Rational::from(42),
                imported.subpacketization,
                mn.subpacketization,
                imported.rate_achievable,
                mn.rate_achievable
            ));
        }
        ensure!(shared == 3, "expected three shared memory points, found {shared}");
    }
    notes.dedup();
    Ok(notes.join("; "))
}

fn main() {
    let instances = random_instances();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("worked example", Box::new(criterion_1)),
        ("rate formula on 200 random instances", Box::new(|| criterion_2(&instances))),
        ("uniform-profile closed form", Box::new(criterion_3)),
        ("decodability over 50 seeded runs", Box::new(criterion_4)),
        ("secrecy suite and oracle agreement", Box::new(|| criterion_5(&instances))),
        ("secret-sharing subsets", Box::new(criterion_6)),
        ("MN array parameters", Box::new(criterion_7)),
        ("bounds and optimality gap", Box::new(criterion_8)),
        ("M = 0 baseline", Box::new(criterion_9)),
        ("subpacketization comparison", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
