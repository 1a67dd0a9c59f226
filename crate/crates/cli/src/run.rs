use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use torus_curves::experiments::{
    conjecture_checks, default_max_gl, length_spectrum_with, ratio_report, series_bundle,
    ConjectureReport, Suite,
};
use torus_curves::export;
use torus_curves::geometry::{build_metric, metric_from_json, representation_json, MetricParams};
use torus_curves::intersect::self_intersection;
use torus_curves::orbits::{
    builtin_formula_table, classify, enumerate_orbit, fit_totient_formula, verify_orbit, Verdict,
};
use torus_curves::{ClassKey, Error};

use crate::cli::{Cli, Command, MetricArg, MetricCommand, OrbitCommand, SuiteArg, Which};
use crate::manifest::{strip_globals, Manifest};

pub enum Outcome {
    Pass,
    CheckFailed,
}

/// 2 for bad input, 1 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::EmptyAfterReduction(_)
            | Error::InvalidLetter { .. }
            | Error::CapTooLarge { .. }
            | Error::NonPrimitive(_)
            | Error::SeedNotReduced(_)
            | Error::SeedAboveCap { .. }
            | Error::UnknownSeed(_)
            | Error::InvalidParams(..),
        ) => 2,
        Some(_) => 1,
        None if err.downcast_ref::<UsageError>().is_some() => 2,
        None => 1,
    }
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

/// Collects named artifacts; prints them when there is no output directory.
struct Sink {
    dir: Option<PathBuf>,
    written: Vec<String>,
}

impl Sink {
    fn emit(&mut self, name: &str, bytes: Vec<u8>) -> Result<()> {
        match &self.dir {
            Some(dir) => {
                fs::write(dir.join(name), &bytes).with_context(|| format!("writing {name}"))?;
                self.written.push(name.to_string());
            }
            None => {
                use std::io::Write;
                std::io::stdout().write_all(&bytes)?;
            }
        }
        Ok(())
    }

    /// A line for the terminal in both modes.
    fn say(&self, line: &str) {
        println!("{line}");
    }

    fn quiet(&self) -> bool {
        self.dir.is_none()
    }
}

fn key(word: &str) -> Result<ClassKey> {
    ClassKey::parse(word).with_context(|| format!("invalid word `{word}`"))
}

fn parse_metric(text: &str) -> Result<MetricParams> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(usage(format!("metric `{text}` must be `l1,l2,l3`")));
    }
    let num = |s: &str| -> Result<f64> {
        s.parse::<f64>().map_err(|_| usage(format!("metric `{text}`: `{s}` is not a number")))
    };
    Ok(MetricParams::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)?)
}

fn read_metric_file(path: &Path) -> Result<MetricParams> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read metric config {}: {e}", path.display())))?;
    metric_from_json(&text).with_context(|| format!("metric config {}", path.display()))
}

fn metric_arg(m: &MetricArg) -> Result<MetricParams> {
    match (&m.metric, &m.metric_config) {
        (Some(t), _) => parse_metric(t),
        (None, Some(p)) => read_metric_file(p),
        (None, None) => Err(usage("give --metric l1,l2,l3 or --metric-config FILE")),
    }
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> Result<(), csv::Error>) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

pub fn execute(cli: Cli, argv: &[String]) -> Result<Outcome> {
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(usage("--workers must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    if let Command::Replay { manifest } = &cli.command {
        return replay(manifest, cli.out.as_deref(), cli.workers);
    }
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut sink = Sink { dir: cli.out.clone(), written: Vec::new() };
    let outcome = dispatch(cli.command, &mut sink)?;
    if let Some(dir) = &sink.dir {
        Manifest {
            tool: "torus-curves".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            args: strip_globals(argv),
            workers: rayon::current_num_threads(),
            outputs: sink.written.clone(),
        }
        .write(dir)?;
    }
    Ok(outcome)
}

fn replay(path: &Path, out: Option<&Path>, workers: Option<usize>) -> Result<Outcome> {
    let m = Manifest::read(path)?;
    let mut argv = vec![m.tool.clone()];
    argv.extend(m.args.iter().cloned());
    let dir = match out {
        Some(d) => d.to_path_buf(),
        None => path.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    argv.push("--out".into());
    argv.push(dir.display().to_string());
    let cli = Cli::try_parse_from(&argv).map_err(|e| usage(format!("manifest arguments: {e}")))?;
    if matches!(cli.command, Command::Replay { .. }) {
        bail!("a manifest cannot replay another manifest");
    }
    if workers.is_none() {
        // The pool is built once per process; only the first request counts.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(m.workers).build_global();
    }
    let fwd: Vec<String> = argv[1..].to_vec();
    execute(Cli { workers: None, ..cli }, &fwd)
}

fn dispatch(command: Command, sink: &mut Sink) -> Result<Outcome> {
    match command {
        Command::Si { word } => {
            let k = key(&word)?;
            let si = self_intersection(&k).with_context(|| format!("self-intersection of `{word}`"))?;
            sink.emit("si.txt", format!("{si}\n").into_bytes())?;
        }
        Command::Canon { word } => {
            let k = key(&word)?;
            sink.emit("canon.txt", format!("{k}\n").into_bytes())?;
        }
        Command::Orbit(cmd) => return orbit(cmd, sink),
        Command::Classify { si, max_wl } => {
            let c = classify(si, max_wl)?;
            let mut text = String::new();
            for o in &c.orbits {
                text.push_str(&format!("{}\n", o.seed));
            }
            sink.emit("orbits.txt", text.into_bytes())?;
            if !sink.quiet() {
                sink.say(&format!("{} orbits with si = {si} at wl <= {max_wl}", c.orbits.len()));
            }
        }
        Command::Metric(MetricCommand::Build { l1, l2, l3, config }) => {
            let params = match (l1, l2, l3, config) {
                (Some(a), Some(b), Some(c), None) => MetricParams::new(a, b, c)?,
                (None, None, None, Some(p)) => read_metric_file(&p)?,
                _ => return Err(usage("give --l1 --l2 --l3, or --config FILE")),
            };
            let rep = build_metric(&params)?;
            sink.emit("representation.json", (representation_json(&rep) + "\n").into_bytes())?;
        }
        Command::Spectrum { seed, metric, max_gl, max_wl } => {
            let params = metric_arg(&metric)?;
            let rep = build_metric(&params)?;
            let cap = max_gl.unwrap_or_else(|| default_max_gl(&params));
            let sp = length_spectrum_with(&key(&seed)?, &rep, cap, max_wl)?;
            sink.emit("spectrum.csv", csv_bytes(|b| export::write_spectrum(b, &sp))?)?;
            if !sink.quiet() {
                sink.say(&format!(
                    "T = {} geodesics with gl <= {} (word cap {})",
                    sp.count(),
                    export::float(sp.cap_geometric),
                    sp.word_cap
                ));
            }
        }
        Command::Coeffs { seeds, metrics, max_gl, max_wl } => {
            let seeds = seeds.iter().map(|s| key(s)).collect::<Result<Vec<_>>>()?;
            let reps = metrics
                .iter()
                .map(|m| Ok(build_metric(&parse_metric(m)?)?))
                .collect::<Result<Vec<_>>>()?;
            let rows = ratio_report(&seeds, &reps, max_gl, max_wl)?;
            sink.emit("ratios.csv", csv_bytes(|b| export::write_ratios(b, &rows))?)?;
        }
        Command::Series { seed, metric, which, max_gl, max_wl } => {
            let params = metric_arg(&metric)?;
            let rep = build_metric(&params)?;
            let cap = max_gl.unwrap_or_else(|| default_max_gl(&params));
            let sp = length_spectrum_with(&key(&seed)?, &rep, cap, max_wl)?;
            let s = series_bundle(&sp)?;
            let (name, bytes) = match which {
                Which::I => ("mirzakhani.csv", csv_bytes(|b| export::write_mirzakhani(b, &s))?),
                Which::Ii => ("inverse.csv", csv_bytes(|b| export::write_inverse(b, &s))?),
                Which::Iii => ("residual.csv", csv_bytes(|b| export::write_residual(b, &s))?),
            };
            sink.emit(name, bytes)?;
        }
        Command::Fit { seed, max_wl } => {
            let k = key(&seed)?;
            let orbit = enumerate_orbit(&k, max_wl)?;
            match fit_totient_formula(&orbit.count_series()) {
                Ok(f) => sink.emit("fit.txt", format!("{f}\n").into_bytes())?,
                Err(Error::NoFormulaFound) => {
                    eprintln!("no totient formula fits the counts of `{k}` up to wl {max_wl}");
                    return Ok(Outcome::CheckFailed);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Conjectures { suite, max_wl } => {
            let mut cfg = match suite {
                SuiteArg::Desk => Suite::Desk.config(),
                SuiteArg::Full => Suite::Full.config(),
            };
            if let Some(w) = max_wl {
                cfg.max_wl = w;
            }
            let report = conjecture_checks(&cfg)?;
            let json = serde_json::to_string_pretty(&report)? + "\n";
            if sink.quiet() {
                print!("{}", summary(&report));
            } else {
                sink.say(summary(&report).trim_end());
                sink.emit("conjectures.json", json.into_bytes())?;
            }
            if !report.passed() {
                return Ok(Outcome::CheckFailed);
            }
        }
        Command::Replay { .. } => return Err(anyhow!("nested replay")),
    }
    Ok(Outcome::Pass)
}

fn orbit(cmd: OrbitCommand, sink: &mut Sink) -> Result<Outcome> {
    match cmd {
        OrbitCommand::Enumerate(a) => {
            let orbit = enumerate_orbit(&key(&a.seed)?, a.max_wl)?;
            let mut buf = Vec::new();
            export::write_orbit_members(&mut buf, &orbit)?;
            sink.emit("members.txt", buf)?;
        }
        OrbitCommand::Counts(a) => {
            let orbit = enumerate_orbit(&key(&a.seed)?, a.max_wl)?;
            let series = orbit.count_series();
            sink.emit("counts.csv", csv_bytes(|b| export::write_counts(b, &series))?)?;
        }
        OrbitCommand::Verify(a) => {
            let k = key(&a.seed)?;
            let row = builtin_formula_table()
                .get(&k)
                .ok_or_else(|| Error::UnknownSeed(k.to_string()))?;
            let orbit = enumerate_orbit(&k, a.max_wl)?;
            let report = verify_orbit(&orbit, &row.formula);
            let mut text = format!("seed {k}\nprinted {}\nverdict {:?}\n", row.printed, report.verdict);
            for m in report.mismatches() {
                text.push_str(&format!(
                    "mismatch wl {} enumerated {} predicted {}\n",
                    m.length, m.enumerated, m.predicted
                ));
            }
            for n in &report.notes {
                text.push_str(&format!("note {n}\n"));
            }
            sink.emit("verify.txt", text.into_bytes())?;
            if sink.dir.is_some() {
                let series = orbit.count_series();
                sink.emit("counts.csv", csv_bytes(|b| export::write_counts(b, &series))?)?;
            }
            if report.verdict == Verdict::Mismatch {
                return Ok(Outcome::CheckFailed);
            }
        }
    }
    Ok(Outcome::Pass)
}

fn summary(r: &ConjectureReport) -> String {
    let mut s = String::new();
    let verdict = |b: bool| if b { "pass" } else { "FAIL" };
    for row in &r.c1 {
        let judged = match row.pass {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None if !row.complete => "not judged (spectrum truncated)",
            None => "not judged",
        };
        s.push_str(&format!(
            "C1 {} ({}, {}, {}) L={:.3} T={} implied_p={:.4} table_p={} rel_err={} {judged}\n",
            row.seed,
            row.metric.l1,
            row.metric.l2,
            row.metric.l3,
            row.cap_geometric,
            row.count,
            row.implied_p,
            row.table_p.map_or("-".into(), |p| format!("{p:.4}")),
            row.rel_error.map_or("-".into(), |e| format!("{e:.4}")),
        ));
    }
    for row in &r.c2 {
        s.push_str(&format!(
            "C2 {} ({}, {}, {}) max={:.4} trailing={:.4}\n",
            row.seed, row.metric.l1, row.metric.l2, row.metric.l3, row.max_deviation,
            row.trailing_max_deviation
        ));
    }
    for row in &r.c3 {
        s.push_str(&format!(
            "C3 {} ({}, {}, {}) max={:.4}\n",
            row.seed, row.metric.l1, row.metric.l2, row.metric.l3, row.max_deviation
        ));
    }
    for row in &r.c4 {
        s.push_str(&format!(
            "C4 {} si={} {} fitted={} printed={}\n",
            row.seed,
            row.si,
            if row.recovered { "recovered" } else { "flagged" },
            row.fitted.as_deref().unwrap_or("-"),
            row.printed
        ));
    }
    for row in &r.c5 {
        s.push_str(&format!(
            "C5 si={} orbits={} sum={} gap={:.4}{} {}\n",
            row.si,
            row.orbits,
            row.row_sum,
            row.row_gap,
            match (&row.reported_sum, row.reported_gap) {
                (Some(rs), Some(g)) => format!(" reported={rs} gap={g:.4}"),
                _ => String::new(),
            },
            verdict(row.pass)
        ));
    }
    s.push_str(&format!(
        "C1 {} | C4 {} | C5 {}\n",
        verdict(r.c1_pass()),
        verdict(r.c4_pass()),
        verdict(r.c5_pass())
    ));
    s
}
