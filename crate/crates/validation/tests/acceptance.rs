//! One line per acceptance criterion. Exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::Ratio;
use torus_curves::experiments::ratio_report;
use torus_curves::geometry::{build_metric, self_intersection_geometric, MetricParams, Representation};
use torus_curves::intersect::self_intersection;
use torus_curves::orbits::{
    builtin_formula_table, classify, enumerate_orbit, fit_totient_formula, recovers_row,
    verify_formula, Verdict,
};
use torus_curves::words::{enumerate_classes, summatory};
use torus_curves::ClassKey;

type Check = Result<String, String>;

fn key(s: &str) -> ClassKey {
    ClassKey::parse(s).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

fn metrics() -> [MetricParams; 2] {
    [
        MetricParams::new(0.89, 0.889, 0.2149).unwrap(),
        MetricParams::new(1.0, 1.2, 1.012).unwrap(),
    ]
}

fn verdict(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1() -> Check {
    let got = summatory(170);
    let oracle: u64 = (1..=170).map(|l| 2 * phi(l)).sum();
    verdict(got == 17660 && oracle == 17660, format!("sum = {got}, gcd count = {oracle}"))
}

fn c2() -> Check {
    let series = enumerate_orbit(&key("a"), 60).map_err(|e| e.to_string())?.count_series();
    let bad: Vec<u64> = (1..=60u64).filter(|&l| series.count(l as usize) != 2 * phi(l)).collect();
    verdict(bad.is_empty(), format!("lengths 1..=60, mismatches at {bad:?}"))
}

fn c3() -> Check {
    let table = builtin_formula_table();
    let mut failed = Vec::new();
    let mut boundary = Vec::new();
    for row in &table.rows {
        let report = verify_formula(&row.seed, 30).map_err(|e| e.to_string())?;
        let at: Vec<usize> = report.mismatches().map(|m| m.length).collect();
        match report.verdict {
            Verdict::Exact => {}
            Verdict::BoundaryOnly => boundary.push(format!("{} at {at:?}", row.printed_seed)),
            Verdict::Mismatch => failed.push(format!("{} at {at:?}", row.printed_seed)),
        }
    }
    let specials = [("abaB", 4, 4), ("aaabb", 5, 8), ("aaaabb", 6, 10), ("aabaaB", 6, 2), ("aabAbaBAb", 9, 16)];
    for (seed, l, want) in specials {
        let got = enumerate_orbit(&key(seed), l).map_err(|e| e.to_string())?.count_series().count(l);
        if got != want {
            failed.push(format!("C{l}({seed}) = {got}, want {want}"));
        }
    }
    verdict(
        failed.is_empty() && table.rows.len() == 23,
        format!(
            "{} rows to length 30; mismatch: {failed:?}; boundary only: {boundary:?}",
            table.rows.len()
        ),
    )
}

fn c4() -> Check {
    let counts = |cap| -> Result<Vec<usize>, String> {
        (0..=3).map(|si| classify(si, cap).map(|c| c.orbits.len()).map_err(|e| e.to_string())).collect()
    };
    let at12 = counts(12)?;
    let at13 = counts(13)?;
    verdict(at12 == [2, 2, 6, 14], format!("orbits per si 0..=3 at wl 12: {at12:?} (want [2, 2, 6, 14]); at wl 13: {at13:?}"))
}

fn reps() -> Result<Vec<Representation>, String> {
    metrics().iter().map(|m| build_metric(m).map_err(|e| e.to_string())).collect()
}

fn c5() -> Check {
    let classes: Vec<ClassKey> = enumerate_classes(8).unwrap().filter(|k| k.is_primitive()).collect();
    let mut bad = Vec::new();
    for rep in reps()? {
        for k in &classes {
            let comb = self_intersection(k).map_err(|e| e.to_string())?;
            match self_intersection_geometric(&rep, k) {
                Ok(g) if g == comb => {}
                other => bad.push(format!("{k}: {comb} vs {other:?}")),
            }
        }
    }
    verdict(bad.is_empty(), format!("{} classes x 2 metrics, disagreements {bad:?}", classes.len()))
}

fn c6() -> Check {
    let mut checked = 0;
    let mut bad = Vec::new();
    for rep in reps()? {
        let c = (2.0 * rep.params.l1).min(2.0 * rep.params.l2).min(rep.params.l3);
        for seed in ["a", "aabAB"] {
            for m in enumerate_orbit(&key(seed), 40).map_err(|e| e.to_string())?.members {
                let gl = rep.geodesic_length(&m).map_err(|e| e.to_string())?;
                checked += 1;
                if gl < c * m.len() as f64 - 1e-9 {
                    bad.push(m.to_string());
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} lengths, violations {bad:?}"))
}

/// Distance from the cosh formula, independent of the library's.
fn dist(z: Complex64, w: Complex64) -> f64 {
    (1.0 + (z - w).norm_sqr() / (2.0 * z.im * w.im)).acosh()
}

/// Angle at `z` between geodesics towards `p` and `q`, from the hyperbolic law of cosines.
fn corner(z: Complex64, p: Complex64, q: Complex64) -> f64 {
    let (a, b, c) = (dist(z, p), dist(z, q), dist(p, q));
    ((a.cosh() * b.cosh() - c.cosh()) / (a.sinh() * b.sinh())).clamp(-1.0, 1.0).acos()
}

fn c7() -> Check {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    let mut notes = Vec::new();
    for rep in reps()? {
        let p = &rep.pentagon;
        let v = p.vertices();
        let want = [rep.params.l1, p.s, rep.params.l3, p.t, rep.params.l2];
        for k in 0..5 {
            worst = worst.max((dist(v[k], v[(k + 1) % 5]) - want[k]).abs());
        }
        for k in 1..5 {
            worst = worst.max((corner(v[k], v[(k + 4) % 5], v[(k + 1) % 5]) - std::f64::consts::FRAC_PI_2).abs());
        }
        let phi = corner(v[0], v[4], v[1]);
        let tr = rep.commutator_trace();
        let gl_a = rep.geodesic_length(&key("a")).map_err(|e| e.to_string())?;
        let gap = (gl_a - 2.0 * dist(rep.g, rep.y)).abs();
        ok &= phi > 0.0 && phi < std::f64::consts::FRAC_PI_2 && tr < -2.0 && gap < 1e-9;
        notes.push(format!("phi {phi:.7}, tr[A,B] {tr:.4}, |gl(a) - 2d(G,Y)| {gap:.1e}"));
    }
    ok &= worst < 1e-9;
    verdict(ok, format!("residual {worst:.1e}; {}", notes.join("; ")))
}

fn c8() -> Check {
    let rep = build_metric(&metrics()[1]).map_err(|e| e.to_string())?;
    let seeds: Vec<ClassKey> = ["aabAB", "abaB", "aaabb", "aabaB"].map(key).to_vec();
    let want = [2.0, 0.25, 2.0, 2.0 / 9.0];
    let rows = ratio_report(&seeds, &[rep], None, Some(120)).map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut notes = vec![format!("L = {:.3}", rows[0].cap_geometric)];
    for (seed, w) in seeds.iter().zip(want) {
        let row = rows.iter().find(|r| &r.seed == seed).unwrap();
        let err = (row.implied_p - w).abs() / w;
        ok &= err <= 0.2;
        notes.push(format!("{seed} {:.4} ({:.1}%)", row.implied_p, 100.0 * err));
    }
    verdict(ok, notes.join(", "))
}

fn c9() -> Check {
    let table = builtin_formula_table();
    let mut low_missed = Vec::new();
    let mut high_missed = Vec::new();
    let mut high = 0;
    for row in &table.rows {
        let orbit = enumerate_orbit(&row.seed, 40).map_err(|e| e.to_string())?;
        let hit = fit_totient_formula(&orbit.count_series()).is_ok_and(|f| recovers_row(&f, row));
        if row.si >= 3 {
            high += 1;
        }
        if !hit {
            if row.si >= 3 {
                high_missed.push(row.printed_seed.clone());
            } else {
                low_missed.push(row.printed_seed.clone());
            }
        }
    }
    let got = high - high_missed.len();
    verdict(
        low_missed.is_empty() && high == 14 && got >= 10,
        format!("si<=2 missed {low_missed:?}; si=3 recovered {got}/{high}, flagged {high_missed:?}"),
    )
}

fn c10() -> Check {
    let table = builtin_formula_table();
    let want = [
        (0, Ratio::new(1, 1)),
        (1, Ratio::new(9, 4)),
        (2, Ratio::new(197, 36)),
        (3, Ratio::new(2023, 144)),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (si, w) in want {
        let sum = table.coefficient_sum(si);
        let orbits = table.orbit_counts[&si] as f64;
        let f = |r: Ratio<i64>| *r.numer() as f64 / *r.denom() as f64;
        let reported = table.reported_sums.get(&si).copied().unwrap_or(sum);
        let near = (f(sum) - orbits).abs() <= 1.0 && (f(reported) - orbits).abs() <= 1.0;
        ok &= sum == w && near;
        let extra = if reported != sum { format!(" (reported {reported})") } else { String::new() };
        notes.push(format!("si {si}: {sum}{extra} vs {orbits} orbits"));
    }
    ok &= table.reported_sums.get(&3) == Some(&Ratio::new(2059, 144));
    verdict(ok, notes.join("; "))
}

fn binary() -> PathBuf {
    if let Some(p) = std::env::var_os("TORUS_CURVES_BIN") {
        return p.into();
    }
    // target/<profile>/deps/acceptance-* -> target/<profile>/torus-curves
    let exe = std::env::current_exe().unwrap();
    let dir = exe.parent().and_then(|d| d.parent()).unwrap();
    dir.join(format!("torus-curves{}", std::env::consts::EXE_SUFFIX))
}

fn c11() -> Check {
    let bin = binary();
    if !bin.exists() {
        let status = Command::new(env!("CARGO"))
            .args(["build", "-p", "torus-curves-cli", "--bin", "torus-curves"])
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() || !bin.exists() {
            return Err(format!("binary not found at {}", bin.display()));
        }
    }
    let mut outputs = Vec::new();
    for workers in ["1", "4", "8"] {
        let out = Command::new(&bin)
            .args(["--workers", workers, "orbit", "enumerate", "--seed", "aabAB", "--max-wl", "60"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit {:?} at {workers} workers", out.status.code()));
        }
        outputs.push(out.stdout);
    }
    let lines = outputs[0].iter().filter(|&&b| b == b'\n').count();
    verdict(
        outputs.windows(2).all(|w| w[0] == w[1]) && lines > 0,
        format!("{lines} lines, identical at 1/4/8 workers"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("totient summatory", c1),
        ("simple orbit counts", c2),
        ("formula table", c3),
        ("classification", c4),
        ("oracle equivalence", c5),
        ("inclusion inequality", c6),
        ("pentagon and representation", c7),
        ("implied coefficients", c8),
        ("fitter recovery", c9),
        ("coefficient sums", c10),
        ("determinism", c11),
    ];
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took: Duration = start.elapsed();
        let (tag, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name} [{:.2}s]: {detail}", n + 1, took.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
