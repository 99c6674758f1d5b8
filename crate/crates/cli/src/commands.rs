//! Command implementations. Each builds a table and a list of failed
//! assertions; `execute` handles output, manifests and exit codes.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use ca184::annihilation::{
    first_return_probability, match_partners, neighbor_velocity_stats, survival_probability,
    u2n_exact, u2n_f64, FirstReturnMode,
};
use ca184::dynamics::{ca184_step, evolve, min_filter, sg_step, PackedRing, SpaceTimeSheet};
use ca184::hydro::{
    decay_rate_fit, pattern_stats, plateau_cdf_experiment, rescaling_experiment, segment_pattern,
    PatternStats,
};
use ca184::measure::{flux_estimate, invariance_audit};
use ca184::phase::{
    ca_path, path_to_config, trace_window, validate_ba_path, validate_ca_path,
    validate_ca_path_alternating,
};
use ca184::rng::stream;
use ca184::stats::mean_se;
use ca184::transforms::{
    ba_counting_profile, ba_to_ca, ca_balanced_profile, ca_counting_profile, ca_to_ba,
    lambda_membership,
};
use ca184::verify::{run_suite, suite_listing, Suite};
use ca184::{
    BaConfig, Ca184Config, Config, HeightProfile, InitKind, InitSpec, SecondClassPath, StatReport,
    Topology,
};

use crate::manifest::{build_id, manifest_path, ExperimentManifest};
use crate::output::{data_path, write_atomic, Cell, Table};
use crate::{
    BenchArgs, Cli, Command, EvolveArgs, Experiment, FluxArgs, HydroArgs, PartnersArgs, PathRule,
    PhaseArgs, PhaseMode, StatKind, StatsArgs, Target, TransformArgs, VerifyArgs, EXIT_ASSERTION,
    EXIT_RUNTIME, EXIT_USAGE,
};

/// Bad input from the user, as opposed to a failed computation.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    match e.downcast_ref::<ca184::Error>() {
        Some(
            ca184::Error::Parse(_)
            | ca184::Error::InvalidArgument(_)
            | ca184::Error::InvalidCell(_)
            | ca184::Error::InvalidTopology(_)
            | ca184::Error::InvalidProbability(_)
            | ca184::Error::LengthMismatch { .. }
            | ca184::Error::WindowTooShort { .. }
            | ca184::Error::ExactTooLarge { .. }
            | ca184::Error::BurnInTooShort { .. }
            | ca184::Error::NotInLambda(_)
            | ca184::Error::RingImbalance { .. }
            | ca184::Error::NotPhaseBoundary
            | ca184::Error::InvalidPath(_)
            | ca184::Error::InsufficientData(_),
        ) => EXIT_USAGE,
        _ => EXIT_RUNTIME,
    }
}

struct Outcome {
    table: Table,
    failures: Vec<String>,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Outcome {
            table,
            failures: Vec::new(),
        }
    }
}

struct Globals {
    seed: u64,
    threads: Option<usize>,
    out: Option<PathBuf>,
    format: crate::output::Format,
}

pub fn execute(cli: Cli) -> Result<u8> {
    let mut globals = Globals {
        seed: cli.seed,
        threads: cli.threads,
        out: cli.out,
        format: cli.format,
    };
    let mut command = cli.command;
    if let Command::Run(run) = &command {
        let m = ExperimentManifest::load(&run.manifest)?;
        if matches!(m.command, Command::Run(_)) {
            return Err(usage("a manifest cannot replay another manifest"));
        }
        globals.seed = m.seed;
        globals.threads = globals.threads.or(m.threads);
        globals.format = m.format;
        if globals.out.is_none() {
            globals.out = m
                .outputs
                .first()
                .and_then(|p| p.parent())
                .map(PathBuf::from);
        }
        command = m.command;
    }
    if let Some(t) = globals.threads {
        if t == 0 {
            return Err(usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .ok();
    }
    let outcome = dispatch(&command, globals.seed)?;
    let bytes = outcome.table.render(globals.format)?;
    let name = command.name();
    let mut manifest = ExperimentManifest {
        build: build_id(),
        seed: globals.seed,
        threads: globals.threads,
        format: globals.format,
        command: command.clone(),
        outputs: Vec::new(),
    };
    match &globals.out {
        Some(dir) => {
            let data = data_path(dir, name, globals.format);
            write_atomic(&data, &bytes)?;
            manifest.outputs.push(data);
            manifest.write(&manifest_path(dir, name))?;
        }
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
            eprintln!("{}", serde_json::to_string(&manifest)?);
        }
    }
    for f in &outcome.failures {
        eprintln!("assertion failed: {f}");
    }
    Ok(if outcome.failures.is_empty() {
        0
    } else {
        EXIT_ASSERTION
    })
}

fn dispatch(command: &Command, seed: u64) -> Result<Outcome> {
    match command {
        Command::Evolve(a) => evolve_cmd(a),
        Command::Transform(a) => transform_cmd(a),
        Command::Partners(a) => partners_cmd(a),
        Command::Stats(a) => stats_cmd(a, seed),
        Command::Flux(a) => flux_cmd(a, seed),
        Command::PhaseSep(a) => phase_cmd(a),
        Command::Hydro(a) => hydro_cmd(a, seed),
        Command::Verify(a) => verify_cmd(a, seed),
        Command::Bench(a) => bench_cmd(a, seed),
        Command::Run(_) => Err(usage("nested run")),
    }
}

fn parse_config(s: &str) -> Result<Config> {
    if s.starts_with("ca184:") {
        Ok(Config::Ca(s.parse()?))
    } else if s.starts_with("ba:") {
        Ok(Config::Ba(s.parse()?))
    } else {
        Err(usage(format!(
            "configuration must start with ca184: or ba:, got {s:?}"
        )))
    }
}

pub fn parse_init(s: &str) -> Result<InitKind> {
    let kind = match s {
        "fair-pm" => InitKind::fair_pm(),
        "fair-ca" => InitKind::fair_ca(),
        "checkerboard" => InitKind::checkerboard_mixture(),
        _ => {
            let num = |t: &str| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| usage(format!("bad probability {t:?}")))
            };
            if let Some(p) = s.strip_prefix("ca:") {
                InitKind::BernoulliCa { p: num(p)? }
            } else if let Some(rest) = s.strip_prefix("ba:") {
                let v: Vec<&str> = rest.split(',').collect();
                if v.len() != 3 {
                    return Err(usage("ba law needs three probabilities P+,P-,P0"));
                }
                InitKind::BernoulliBa {
                    p_plus: num(v[0])?,
                    p_minus: num(v[1])?,
                    p_zero: num(v[2])?,
                }
            } else {
                return Err(usage(format!("unknown initial law {s:?}")));
            }
        }
    };
    kind.validate()?;
    Ok(kind)
}

fn profile_rows(table: &mut Table, time: usize, f: &HeightProfile) {
    for (i, h) in f.heights().into_iter().enumerate() {
        table.push(vec![time.into(), (f.origin() + i as i64).into(), h.into()]);
    }
}

fn evolve_cmd(a: &EvolveArgs) -> Result<Outcome> {
    if let Some(path) = &a.profile {
        let text = std::fs::read_to_string(path)?;
        let mut f = HeightProfile::from_csv(&text)?;
        let mut t = Table::new(&["time", "k", "height"]);
        profile_rows(&mut t, 0, &f);
        match a.filter {
            Some(y) => profile_rows(&mut t, a.steps, &min_filter(&f, y * a.steps)?),
            None => {
                for s in 1..=a.steps {
                    f = sg_step(&f)?;
                    profile_rows(&mut t, s, &f);
                }
            }
        }
        return Ok(Outcome::ok(t));
    }
    let config = parse_config(
        a.config
            .as_deref()
            .ok_or_else(|| usage("need --config or --profile"))?,
    )?;
    let sheet = evolve(&config, a.steps, a.half_rows)?;
    let mut t = Table::new(&["time2", "config"]);
    match &sheet {
        SpaceTimeSheet::Ca184 { rows } => {
            for (i, r) in rows.iter().enumerate() {
                t.push(vec![(2 * i).into(), r.to_string().into()]);
            }
        }
        SpaceTimeSheet::Ba { rows, doubled } => match doubled {
            Some(d) => {
                for (i, r) in d.iter().enumerate() {
                    t.push(vec![i.into(), r.to_string().into()]);
                }
            }
            None => {
                for (i, r) in rows.iter().enumerate() {
                    t.push(vec![(2 * i).into(), r.to_string().into()]);
                }
            }
        },
    }
    Ok(Outcome::ok(t))
}

fn transform_cmd(a: &TransformArgs) -> Result<Outcome> {
    let config = parse_config(&a.config)?;
    let one = |out: String| {
        let mut t = Table::new(&["input", "output"]);
        t.push(vec![a.config.clone().into(), out.into()]);
        Outcome::ok(t)
    };
    let profile = |f: HeightProfile| {
        let mut t = Table::new(&["time", "k", "height"]);
        profile_rows(&mut t, 0, &f);
        Outcome::ok(t)
    };
    match (config, a.to) {
        (Config::Ca(eta), Target::Ba) => Ok(one(ca_to_ba(&eta)?.to_string())),
        (Config::Ca(eta), Target::Profile) => Ok(profile(ca_counting_profile(&eta, a.base))),
        (Config::Ca(eta), Target::Balanced) => Ok(profile(ca_balanced_profile(&eta, a.base))),
        (Config::Ba(zeta), Target::Ca) => Ok(one(ba_to_ca(&zeta, a.anchor_bit)?.to_string())),
        (Config::Ba(zeta), Target::Profile) => Ok(profile(ba_counting_profile(&zeta, a.base))),
        (Config::Ba(zeta), Target::Lambda) => {
            let v = lambda_membership(&zeta);
            let mut t = Table::new(&["member", "witness"]);
            t.push(vec![
                v.member.into(),
                v.witness.map(|w| w.to_string()).into(),
            ]);
            Ok(Outcome::ok(t))
        }
        (_, to) => Err(usage(format!(
            "no transform to {to:?} from this representation"
        ))),
    }
}

fn partners_cmd(a: &PartnersArgs) -> Result<Outcome> {
    let zeta: BaConfig = a.config.parse()?;
    let report = match_partners(&zeta)?;
    let mut t = Table::new(&["pos_plus", "pos_minus", "time2"]);
    for p in &report.pairs {
        t.push(vec![p.pos_plus.into(), p.pos_minus.into(), p.time2.into()]);
    }
    eprintln!(
        "unmatched: {} positive, {} negative",
        report.unmatched_plus.len(),
        report.unmatched_minus.len()
    );
    Ok(Outcome::ok(t))
}

const STAT_HEADERS: &[&str] = &[
    "statistic",
    "n",
    "estimate",
    "stderr",
    "count",
    "reference",
    "exact",
];

fn stat_row(r: &StatReport, n: usize, exact: Option<String>) -> Vec<Cell> {
    vec![
        r.name.clone().into(),
        n.into(),
        r.estimate.into(),
        r.stderr.into(),
        r.count.into(),
        r.reference.into(),
        exact.into(),
    ]
}

fn stats_cmd(a: &StatsArgs, seed: u64) -> Result<Outcome> {
    let kind = parse_init(&a.init)?;
    let mut t = Table::new(STAT_HEADERS);
    let mut failures = Vec::new();
    for (i, &n) in a.n.iter().enumerate() {
        let stream_seed = seed.wrapping_add(i as u64);
        let spec = InitSpec {
            kind: kind.clone(),
            seed: stream_seed,
        };
        let reports: Vec<(StatReport, Option<String>)> = match a.kind {
            StatKind::Survival => vec![(survival_probability(&spec, n, a.samples)?, None)],
            StatKind::FirstReturn => {
                let mode = if a.exact {
                    FirstReturnMode::Exact
                } else {
                    FirstReturnMode::MonteCarlo {
                        samples: a.samples,
                        seed: stream_seed,
                    }
                };
                vec![(first_return_probability(n, mode)?, None)]
            }
            StatKind::Neighbor => {
                let r = neighbor_velocity_stats(n, a.samples, stream_seed)?;
                if r.unresolved > 0 {
                    eprintln!(
                        "n={n}: {} samples without a neighbor in range",
                        r.unresolved
                    );
                }
                vec![(r.same_velocity, None), (r.opposite_velocity, None)]
            }
            StatKind::U2n => {
                let n32 = u32::try_from(n).map_err(|_| usage("n too large"))?;
                let exact = u2n_exact(n32);
                vec![(
                    StatReport::exact(format!("u2n(n={n})"), u2n_f64(n32), 0),
                    Some(exact.to_string()),
                )]
            }
            StatKind::Invariance => vec![(invariance_audit(&spec, n, a.samples, a.k)?, None)],
        };
        for (r, exact) in reports {
            let z = match a.kind {
                // Total variation is non-negative; compare it to its own error.
                StatKind::Invariance => r
                    .stderr
                    .map(|se| if se > 0.0 { r.estimate / se } else { 0.0 }),
                _ => r.z_score(),
            };
            if let Some(z) = z.filter(|z| *z > a.max_z) {
                failures.push(format!(
                    "{} is {z:.2} standard errors from its reference",
                    r.name
                ));
            }
            t.push(stat_row(&r, n, exact));
        }
    }
    Ok(Outcome { table: t, failures })
}

fn flux_cmd(a: &FluxArgs, seed: u64) -> Result<Outcome> {
    let burn_in = a.burn_in.unwrap_or(a.ring.div_ceil(2));
    let mut t = Table::new(&[
        "density",
        "realized_density",
        "flux",
        "hole_flux",
        "reference",
        "stderr",
    ]);
    let mut failures = Vec::new();
    for (i, &rho) in a.density.iter().enumerate() {
        let spec = InitSpec {
            kind: InitKind::BernoulliCa { p: rho },
            seed: seed.wrapping_add(i as u64),
        };
        let r = flux_estimate(&spec, a.ring, burn_in, a.steps)?;
        if (r.flux - r.reference).abs() > a.tolerance {
            failures.push(format!(
                "flux {} at density {rho} is off the reference {}",
                r.flux, r.reference
            ));
        }
        t.push(vec![
            rho.into(),
            r.realized_density.into(),
            r.flux.into(),
            r.hole_flux.into(),
            r.reference.into(),
            r.stderr.into(),
        ]);
    }
    Ok(Outcome { table: t, failures })
}

fn phase_cmd(a: &PhaseArgs) -> Result<Outcome> {
    match a.mode {
        PhaseMode::Trace => {
            let config = parse_config(
                a.config
                    .as_deref()
                    .ok_or_else(|| usage("trace needs --config"))?,
            )?;
            let mut t = Table::new(&["path", "annihilations", "provisional_ticks"]);
            match config {
                Config::Ba(zeta) => {
                    let trace = trace_window(&zeta, a.horizon)?;
                    let ann: Vec<String> = trace
                        .annihilations
                        .iter()
                        .map(|(t2, p2)| format!("{t2}@{p2}"))
                        .collect();
                    t.push(vec![
                        trace.path.to_string().into(),
                        ann.join(";").into(),
                        trace.provisional_ticks.into(),
                    ]);
                }
                Config::Ca(eta) => {
                    let path = ca_path(&eta, a.horizon)?;
                    t.push(vec![path.to_string().into(), Cell::Empty, Cell::Empty]);
                }
            }
            Ok(Outcome::ok(t))
        }
        PhaseMode::Reconstruct => {
            let path: SecondClassPath = a
                .path
                .as_deref()
                .ok_or_else(|| usage("reconstruct needs --path"))?
                .parse()?;
            let zeta = path_to_config(&path, a.horizon.min(path.ticks()))?;
            let mut t = Table::new(&["config"]);
            t.push(vec![zeta.to_string().into()]);
            Ok(Outcome::ok(t))
        }
        PhaseMode::Validate => {
            let path: SecondClassPath = a
                .path
                .as_deref()
                .ok_or_else(|| usage("validate needs --path"))?
                .parse()?;
            let verdict = match a.rule {
                PathRule::Ba => validate_ba_path(&path),
                PathRule::Ca => validate_ca_path(&path),
                PathRule::CaAlternating => validate_ca_path_alternating(&path),
            };
            let mut t = Table::new(&["valid", "i", "j", "reason"]);
            if verdict.valid {
                t.push(vec![true.into(), Cell::Empty, Cell::Empty, Cell::Empty]);
            }
            for v in &verdict.violations {
                t.push(vec![
                    false.into(),
                    v.i.into(),
                    v.j.into(),
                    v.reason.clone().into(),
                ]);
            }
            Ok(Outcome::ok(t))
        }
    }
}

type PatternColumn = (&'static str, fn(&PatternStats) -> f64);

const HYDRO_HEADERS: &[&str] = &["statistic", "n", "x", "estimate", "stderr", "reference"];

fn hydro_row(
    stat: &str,
    n: Option<usize>,
    x: Option<f64>,
    est: f64,
    se: Option<f64>,
    reference: Option<f64>,
) -> Vec<Cell> {
    vec![
        stat.into(),
        n.into(),
        x.into(),
        est.into(),
        se.into(),
        reference.into(),
    ]
}

fn hydro_cmd(a: &HydroArgs, seed: u64) -> Result<Outcome> {
    if a.n_list.is_empty() {
        return Err(usage("--n-list is required"));
    }
    let mut t = Table::new(HYDRO_HEADERS);
    let mut failures = Vec::new();
    match a.experiment {
        Experiment::Plateau => {
            for &n in &a.n_list {
                let r = plateau_cdf_experiment(n, a.samples, seed)?;
                t.push(hydro_row(
                    "plateau_ks",
                    Some(n),
                    None,
                    r.ks,
                    None,
                    Some(0.0),
                ));
                t.push(hydro_row(
                    "plateau_ks_ties_merged",
                    Some(n),
                    None,
                    r.ks_raw,
                    None,
                    Some(0.0),
                ));
                t.push(hydro_row(
                    "plateaus",
                    Some(n),
                    None,
                    r.plateaus as f64,
                    None,
                    None,
                ));
                t.push(hydro_row(
                    "valley_mean",
                    Some(n),
                    None,
                    r.valley_mean,
                    None,
                    None,
                ));
                t.push(hydro_row(
                    "valley_short_fraction",
                    Some(n),
                    None,
                    r.valley_short_fraction,
                    None,
                    None,
                ));
                if r.ks > a.tolerance {
                    failures.push(format!(
                        "plateau KS {} exceeds {} at n={n}",
                        r.ks, a.tolerance
                    ));
                }
            }
        }
        Experiment::Rescale => {
            let kind = parse_init(&a.init)?;
            let r = rescaling_experiment(&kind, &a.n_list, &a.probes, a.samples, seed)?;
            for p in &r.points {
                t.push(hydro_row(
                    "rescaled_mean",
                    Some(p.n),
                    Some(p.probe),
                    p.mean,
                    Some(p.stderr),
                    None,
                ));
            }
            for &(_, n, x, ks) in &r.consecutive_ks {
                t.push(hydro_row(
                    "consecutive_ks",
                    Some(n),
                    Some(x),
                    ks,
                    None,
                    Some(0.0),
                ));
            }
            for &(n, gap) in &r.ca_gap {
                let bound = 1.0 / (n as f64).sqrt();
                t.push(hydro_row("ca_gap", Some(n), None, gap, None, Some(bound)));
                if gap > bound + 1e-12 {
                    failures.push(format!("profile gap {gap} exceeds {bound} at n={n}"));
                }
            }
        }
        Experiment::Decay => {
            let r = decay_rate_fit(&a.n_list, a.ring, a.replicas, seed)?;
            for p in &r.points {
                t.push(hydro_row(
                    "d_n",
                    Some(p.n),
                    None,
                    p.estimate,
                    Some(p.stderr),
                    None,
                ));
            }
            t.push(hydro_row(
                "slope",
                None,
                None,
                r.slope,
                Some(r.slope_stderr),
                Some(-0.5),
            ));
            t.push(hydro_row("slope_ci_low", None, None, r.ci_low, None, None));
            t.push(hydro_row(
                "slope_ci_high",
                None,
                None,
                r.ci_high,
                None,
                None,
            ));
            if (r.slope + 0.5).abs() > a.tolerance {
                failures.push(format!(
                    "decay slope {} is outside -0.5 ± {}",
                    r.slope, a.tolerance
                ));
            }
        }
        Experiment::Segment => {
            let topology = Topology::ring(a.ring)?;
            for &n in &a.n_list {
                let mut stats = Vec::new();
                for r in 0..a.replicas as u64 {
                    let eta =
                        InitKind::fair_ca().sample_ca(topology, &mut stream(seed, r, "segment"))?;
                    let mut ring = PackedRing::from_config(&eta)?;
                    let mut scratch = ring.clone();
                    ring.advance(n, &mut scratch);
                    stats.push(pattern_stats(&segment_pattern(&ring.to_config())?));
                }
                let rows: [PatternColumn; 7] = [
                    ("particle_dominated_count", |s| s.particle_dominated as f64),
                    ("hole_dominated_count", |s| s.hole_dominated as f64),
                    ("duce_count", |s| s.duce as f64),
                    ("particle_dominated_mean_len", |s| s.mean_particle_len),
                    ("hole_dominated_mean_len", |s| s.mean_hole_len),
                    ("duce_mean_len", |s| s.mean_duce_len),
                    ("order_violations", |s| s.order_violations as f64),
                ];
                for (name, f) in rows {
                    let (m, se) = mean_se(&stats.iter().map(f).collect::<Vec<_>>());
                    t.push(hydro_row(name, Some(n), None, m, Some(se), None));
                }
            }
        }
    }
    Ok(Outcome { table: t, failures })
}

fn verify_cmd(a: &VerifyArgs, seed: u64) -> Result<Outcome> {
    let suite: Suite = a
        .suite
        .parse()
        .map_err(|e: ca184::Error| usage(e.to_string()))?;
    if a.list {
        let mut t = Table::new(&["name"]);
        for name in suite_listing(suite) {
            t.push(vec![name.into()]);
        }
        return Ok(Outcome::ok(t));
    }
    let report = run_suite(suite, seed);
    let mut t = Table::new(&["name", "passed", "detail"]);
    let mut failures = Vec::new();
    for r in &report.results {
        eprintln!(
            "{:<28} {} {:>8.2}s",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.seconds
        );
        if !r.passed {
            failures.push(format!("{}: {}", r.name, r.detail));
        }
        t.push(vec![
            r.name.clone().into(),
            r.passed.into(),
            r.detail.clone().into(),
        ]);
    }
    Ok(Outcome { table: t, failures })
}

fn bench_cmd(a: &BenchArgs, seed: u64) -> Result<Outcome> {
    if a.steps == 0 {
        bail!(usage("--steps must be positive"));
    }
    let eta =
        InitKind::fair_ca().sample_ca(Topology::ring(a.size)?, &mut stream(seed, 0, "bench"))?;
    let scalar_steps = a.steps.div_ceil(50).max(1);
    let start = Instant::now();
    let mut s: Ca184Config = eta.clone();
    for _ in 0..scalar_steps {
        s = ca184_step(&s)?;
    }
    let scalar = start.elapsed().as_secs_f64() / scalar_steps as f64;
    let mut ring = PackedRing::from_config(&eta)?;
    let mut scratch = ring.clone();
    let start = Instant::now();
    ring.advance(a.steps, &mut scratch);
    let packed = start.elapsed().as_secs_f64() / a.steps as f64;
    let mut check = PackedRing::from_config(&eta)?;
    check.advance(scalar_steps, &mut scratch);
    if check.to_config() != s {
        return Err(anyhow!("packed and scalar kernels disagree"));
    }
    let mut t = Table::new(&[
        "kernel",
        "size",
        "steps",
        "seconds_per_step",
        "site_updates_per_second",
        "speedup",
    ]);
    t.push(vec![
        "scalar".into(),
        a.size.into(),
        scalar_steps.into(),
        scalar.into(),
        (a.size as f64 / scalar).into(),
        1.0.into(),
    ]);
    t.push(vec![
        "packed".into(),
        a.size.into(),
        a.steps.into(),
        packed.into(),
        (a.size as f64 / packed).into(),
        (scalar / packed).into(),
    ]);
    Ok(Outcome::ok(t))
}
