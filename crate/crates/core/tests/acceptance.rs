//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use frobkit::frobenius::{frobenius_q, frobenius_root, nu_bracket};
use frobkit::ideal_io::parse_ideal_file;
use frobkit::linkage::{build_generic_linkage, compare_lce_levelwise, run_comparison, ComparisonReport, SweepOptions};
use frobkit::thresholds::{fpt_estimate, lce_estimate, nu_power, test_ideal_of_power};
use frobkit::{Ideal, MaximalIdeal, Monomial, Poly, Ring};
use num_rational::Rational64;

use common::{all_staircases, brute_root, monomial_gens, Dense, Staircase};

type Outcome = Result<String, String>;

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn sweep(file: &str, primes: &[u64], e_max: u32) -> ComparisonReport {
    let spec = parse_ideal_file(&std::fs::read_to_string(data(file)).unwrap()).unwrap();
    run_comparison(&spec, &SweepOptions::new(primes.to_vec(), e_max)).unwrap()
}

fn monomial_ideal(ring: &Arc<Ring>, gens: &[(u32, u32)]) -> Ideal {
    let gens = gens
        .iter()
        .map(|&(a, b)| Poly::from_terms(ring, vec![(Monomial::from_exponents(&[a, b]), 1)]))
        .collect();
    Ideal::new(ring, gens).unwrap()
}

/// Minimal generating sets of monomial ideals in `x, y` generated in
/// degree at most `d`: exponent pairs with `a` rising and `b` falling.
fn monomial_antichains(d: u32) -> Vec<Vec<(u32, u32)>> {
    fn rec(a0: u32, b_cap: u32, d: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        for a in a0..=d {
            for b in 0..b_cap.min(d - a + 1) {
                cur.push((a, b));
                out.push(cur.clone());
                rec(a + 1, b, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, d + 1, d, &mut Vec::new(), &mut out);
    out
}

fn criterion_roots() -> Outcome {
    let mut checked = 0;
    for p in [2u64, 3] {
        let ring = Ring::new(p, &["x", "y"]).unwrap();
        for e in 1..=3 {
            let q = frobenius_q(p, e).unwrap();
            if q > 8 {
                continue;
            }
            let b = 8 / q as u32;
            let candidates = all_staircases(b);
            for gens in monomial_antichains(8) {
                let ideal = monomial_ideal(&ring, &gens);
                let root = frobenius_root(&ideal, e).map_err(|err| err.to_string())?;
                let got = Staircase::from_gens(&monomial_gens(&root), b);
                let want = brute_root(&gens, q as u32, &candidates)
                    .ok_or_else(|| format!("no minimal root for {ideal}"))?;
                if got != want {
                    return Err(format!("q={q}: root of {ideal} is {root}, oracle {:?}", want.gens()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} monomial ideals"))
}

fn criterion_cusp() -> Outcome {
    let frozen: [(u64, &[u64]); 2] = [(2, &[0, 1, 3]), (7, &[5, 40])];
    let dense: Dense = [((2, 0), 1), ((0, 3), 1)].into_iter().collect();
    for (p, values) in frozen {
        let ring = Ring::new(p, &["x", "y"]).unwrap();
        let cusp = Ideal::parse(&ring, "x^2 + y^3").unwrap();
        let m = MaximalIdeal::origin(&ring).unwrap();
        for (i, &want) in values.iter().enumerate() {
            let e = i as u32 + 1;
            let q = frobenius_q(p, e).unwrap();
            let oracle = common::brute_nu_principal(&dense, p, q as u32);
            let got = nu_power(&cusp, e, &m).map_err(|err| err.to_string())?;
            if oracle != want || got != want {
                return Err(format!("p={p} e={e}: got {got}, oracle {oracle}, frozen {want}"));
            }
        }
    }
    Ok("0,1,3 at p=2 and 5,40 at p=7".into())
}

fn criterion_scaling() -> Outcome {
    let corpus = common::random_corpus(7, 24);
    let mut checks = 0;
    for s in &corpus {
        let m = MaximalIdeal::origin(&s.ring).unwrap();
        for e in 1..=2 {
            let base = nu_power(&s.ideal, e, &m).map_err(|err| err.to_string())?;
            for n in 1..=3 {
                let pw = s.ideal.power(n).map_err(|err| err.to_string())?;
                let scaled = nu_power(&pw, e, &m).map_err(|err| err.to_string())?;
                if scaled != base / n {
                    return Err(format!("{}: e={e} n={n}: {scaled} vs {base}/{n}", s.describe()));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{} ideals, {checks} checks", corpus.len()))
}

fn criterion_lce_below_fpt() -> Outcome {
    let corpus = common::random_corpus(7, 24);
    for s in &corpus {
        let m = MaximalIdeal::origin(&s.ring).unwrap();
        for e in 1..=2 {
            let nb = nu_bracket(&s.ideal, e, &m).map_err(|err| err.to_string())?;
            let np = nu_power(&s.ideal, e, &m).map_err(|err| err.to_string())?;
            if nb.nu > np {
                return Err(format!("{}: e={e}: bracket {} > power {np}", s.describe(), nb.nu));
            }
        }
    }
    Ok(format!("{} ideals", corpus.len()))
}

fn criterion_principal() -> Outcome {
    let corpus = common::random_principal(11, 12);
    for s in &corpus {
        let m = MaximalIdeal::origin(&s.ring).unwrap();
        let fpt = fpt_estimate(&s.ideal, &m, 2, "f").map_err(|err| err.to_string())?;
        let lce = lce_estimate(&s.ideal, &m, 2, "f", false).map_err(|err| err.to_string())?;
        if fpt.rows != lce.rows {
            return Err(format!("{}: {:?} vs {:?}", s.describe(), fpt.rows, lce.rows));
        }
    }
    Ok(format!("{} principal ideals", corpus.len()))
}

fn criterion_skoda() -> Outcome {
    let corpus = common::random_corpus(7, 24);
    let one = Rational64::from_integer(1);
    for s in &corpus {
        let g = s.ideal.gens().len() as u64;
        let tau = test_ideal_of_power(&s.ideal, g, one, 4).map_err(|err| err.to_string())?;
        if !tau.certified {
            return Err(format!("{}: no stabilization by e=5", s.describe()));
        }
        if !s.ideal.contains(&tau.ideal).map_err(|err| err.to_string())? {
            return Err(format!("{}: τ(I^{g}) = {} not in I", s.describe(), tau.ideal));
        }
    }
    Ok(format!("{} ideals", corpus.len()))
}

fn criterion_height_cap() -> Outcome {
    let mut corpus: Vec<Ideal> = Vec::new();
    for s in common::random_principal(13, 6) {
        corpus.push(s.ideal);
    }
    for s in common::random_corpus(7, 24) {
        let reduced = s.ideal.span_reduced();
        if reduced.height().ok() == Some(reduced.gens().len()) {
            corpus.push(reduced);
        }
    }
    for (p, vars, gens) in [
        (2, &["x", "y"][..], "x^2, x*y, y^2"),
        (3, &["x", "y"][..], "x^2, y^3"),
        (2, &["x", "y", "z"][..], "x*y, x*z, y*z"),
        (3, &["x", "y", "z"][..], "x*y, x*z, y*z"),
        (5, &["x", "y"][..], "x^2 + y^2, x*y"),
    ] {
        corpus.push(Ideal::parse(&Ring::new(p, vars).unwrap(), gens).unwrap());
    }
    for ideal in &corpus {
        let m = MaximalIdeal::origin(ideal.ring()).unwrap();
        let c = ideal.height().map_err(|err| err.to_string())? as u64;
        let pw = ideal.power(c).map_err(|err| err.to_string())?;
        for e in 1..=2 {
            let q = frobenius_q(ideal.ring().characteristic() as u64, e).unwrap();
            let nu = nu_power(&pw, e, &m).map_err(|err| err.to_string())?;
            if nu > q - 1 {
                return Err(format!("{ideal}: c={c} e={e}: ν = {nu} > {}", q - 1));
            }
        }
    }
    Ok(format!("{} unmixed ideals", corpus.len()))
}

fn criterion_linkage_structure() -> Outcome {
    for (vars, gens) in [
        (&["x"][..], "x"),
        (&["x", "y"][..], "x, y"),
        (&["x", "y"][..], "x^2 + y^3"),
        (&["x", "y"][..], "x^2, x*y, y^2"),
    ] {
        let ring = Ring::new(32003, vars).unwrap();
        let ideal = Ideal::parse(&ring, gens).unwrap();
        let ld = build_generic_linkage(&ideal).map_err(|err| err.to_string())?;
        let check = ld.verify().map_err(|err| err.to_string())?;
        if !check.all_ok() {
            return Err(format!("({gens}): {check:?}"));
        }
        if gens == "x, y" {
            let det = ld.ring.parse("u11*u22 - u12*u21").unwrap();
            if !ld.linked.member(&det).map_err(|err| err.to_string())? {
                return Err(format!("determinant not in J = {}", ld.linked));
            }
        }
    }
    Ok("4 ideals, determinant in J".into())
}

fn criterion_levelwise_lce() -> Outcome {
    let mut cells = 0;
    for p in [2u64, 3] {
        for (vars, gens) in [(&["x"][..], "x"), (&["x", "y"][..], "x, y")] {
            let ring = Ring::new(p, vars).unwrap();
            let ld = build_generic_linkage(&Ideal::parse(&ring, gens).unwrap()).map_err(|err| err.to_string())?;
            for e in 1..=2 {
                let lce = compare_lce_levelwise(&ld, e, false).map_err(|err| err.to_string())?;
                if lce.ideal.nu != lce.link.nu || lce.link.nu > lce.linked.nu {
                    return Err(format!(
                        "({gens}) p={p} e={e}: I={} L={} J={} with L = {} and J = {}",
                        lce.ideal.nu, lce.link.nu, lce.linked.nu, ld.link_ideal, ld.linked
                    ));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells"))
}

fn criterion_chain() -> Outcome {
    let mut rows = 0;
    for file in ["x.txt", "xy.txt"] {
        let report = sweep(file, &[2, 3], 2);
        if !report.failures.is_empty() {
            return Err(format!("{file}: {:?}", report.failures));
        }
        let cr = report.extended_vars as i64;
        for row in &report.rows {
            if row.fpt_l.0 > row.fpt_i.1 {
                return Err(format!("{file} p={} e={}: lower_L {} > upper_I {}", row.p, row.e, row.fpt_l.0, row.fpt_i.1));
            }
            if row.e == report.e_max && row.gap > Rational64::new(cr + 2, row.p as i64) {
                return Err(format!("{file} p={}: gap {} above ({cr}+2)/p", row.p, row.gap));
            }
            rows += 1;
        }
    }
    Ok(format!("{rows} rows"))
}

fn criterion_linked_threshold() -> Outcome {
    let mut rows = 0;
    for file in ["x.txt", "xy.txt", "cusp.txt", "m2.txt"] {
        let report = sweep(file, &[2, 3], 2);
        if !report.failures.is_empty() {
            return Err(format!("{file}: {:?}", report.failures));
        }
        let n_s = (report.variables.len() + report.extended_vars) as i64;
        let ratio = Rational64::new(report.height as i64, n_s);
        for row in &report.rows {
            if ratio * row.fpt_i.0 > row.fpt_j.1 {
                return Err(format!("{file} p={} e={}: {ratio}·{} > {}", row.p, row.e, row.fpt_i.0, row.fpt_j.1));
            }
            rows += 1;
        }
    }
    Ok(format!("{rows} rows"))
}

fn criterion_determinism() -> Outcome {
    let run = |jobs: &str| -> Result<Vec<u8>, String> {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let status = Command::new(env!("CARGO_BIN_EXE_frobkit"))
            .args(["sweep", "--ideal", &data("cusp.txt"), "--primes", "2,3,5", "--emax", "2"])
            .args(["--jobs", jobs, "--format", "csv", "--out"])
            .arg(dir.path())
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("sweep --jobs {jobs} exited with {}", status.status));
        }
        std::fs::read(dir.path().join("report.csv")).map_err(|e| e.to_string())
    };
    let a = run("1")?;
    let b = run("4")?;
    if a != b {
        return Err("CSV differs between --jobs 1 and --jobs 4".into());
    }
    Ok(format!("{} identical bytes", a.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("frobenius roots match the exhaustive oracle", criterion_roots, 60),
        ("cusp ν values", criterion_cusp, 120),
        ("levelwise scaling ν(I^n) = ⌊ν(I)/n⌋", criterion_scaling, 600),
        ("bracket ν ≤ power ν", criterion_lce_below_fpt, 600),
        ("principal fpt and lce tables agree", criterion_principal, 600),
        ("Skoda containment τ(I^g) ⊆ I", criterion_skoda, 600),
        ("height-power cap ν(I^c) ≤ q-1", criterion_height_cap, 600),
        ("linkage structure", criterion_linkage_structure, 120),
        ("levelwise lce of I·S and L", criterion_levelwise_lce, 600),
        ("threshold chain through the link", criterion_chain, 600),
        ("(c/n)·fpt(I) ≤ fpt(J) on estimates", criterion_linked_threshold, 600),
        ("sweep CSV independent of --jobs", criterion_determinism, 600),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => Err(format!("took {elapsed:.1?}, limit {limit} s")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
