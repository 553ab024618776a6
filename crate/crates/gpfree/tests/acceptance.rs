//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use gpfree_core::analysis::{
    default_sum_grid, fit_sum_constant, lemma5_check, lemma7_partition, membership_bound_check,
    middle_separation, sum_s, verify_gp_free, VerifyMode,
};
use gpfree_core::arith::count_factorizations;
use gpfree_core::baselines::{sieve_power_free, sieve_variable_kfree};
use gpfree_core::enumerate::{enumerate_gk, enumerate_gk_star};
use gpfree_core::process::{membership_in_family, MinimalFamily};
use gpfree_core::{GapFunction, GeomProgression, LengthFunction};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type TermSets = (BTreeSet<Vec<u64>>, BTreeSet<Vec<u64>>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_secs as f64, || {
        format!("runtime {:.1}s exceeds {limit_secs}s", elapsed.as_secs_f64())
    })
}

fn k_const(v: f64) -> LengthFunction {
    LengthFunction::Constant(v)
}

fn terms_set(ps: &[GeomProgression]) -> BTreeSet<Vec<u64>> {
    ps.iter().map(|p| p.terms().unwrap()).collect()
}

/// Smallest-prime-factor table on `[0, n]`.
fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

fn valuations(mut m: u64, spf: &[u32]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = vec![];
    while m > 1 {
        let p = u64::from(spf[m as usize]);
        m /= p;
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// `S(x, h, k, C)` from the triple-scan count.
fn oracle_sum_s(x: u64, h: f64, k: u32, c: f64) -> f64 {
    let len = (c * h).ceil() as u64;
    (x..x + len).map(|n| 0.5f64.powi(oracle::naive_d(n, k / 2, k / 2 - 1) as i32)).sum()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mismatches: Vec<(u64, u32, u32)> = (1..=10_000u64)
        .into_par_iter()
        .flat_map_iter(|n| (1..=4).flat_map(move |i| (1..=4).map(move |j| (n, i, j))))
        .filter(|&(n, i, j)| count_factorizations(n, i, j) != oracle::naive_d(n, i, j))
        .collect();
    let elapsed = start.elapsed();
    ensure(mismatches.is_empty(), || format!("{} mismatches, first {:?}", mismatches.len(), mismatches[0]))?;
    within(elapsed, 60)?;
    Ok(format!("160000 cases, 0 mismatches, {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut checked = 0u64;
    for kv in [6.0, 8.0] {
        let k = k_const(kv);
        let full: Vec<Vec<u64>> = oracle::naive_gk(5000, |_| kv).into_iter().collect();
        let mut cached: Option<(usize, TermSets)> = None;
        for max in 1..=5000u64 {
            let within_max: BTreeSet<Vec<u64>> =
                full.iter().filter(|t| *t.last().unwrap() <= max).cloned().collect();
            if cached.as_ref().is_none_or(|(n, _)| *n != within_max.len()) {
                let minimal = oracle::naive_minimal(&within_max);
                cached = Some((within_max.len(), (within_max, minimal)));
            }
            let (_, (naive, naive_star)) = cached.as_ref().unwrap();
            let got = enumerate_gk(max, &k);
            ensure(got.len() == naive.len() && terms_set(&got) == *naive, || {
                format!("G_k mismatch at N={max}, k={kv}")
            })?;
            let star = enumerate_gk_star(max, &k);
            ensure(star.len() == naive_star.len() && terms_set(&star) == *naive_star, || {
                format!("G_k* mismatch at N={max}, k={kv}")
            })?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 60)?;
    Ok(format!("{checked} (N, k) pairs, 0 mismatches, {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_3() -> Outcome {
    let mut runs = 0u64;
    for kv in [6.0, 8.0] {
        let k = k_const(kv);
        for max in [1_000u64, 10_000, 100_000] {
            let family = MinimalFamily::new(max, &k).map_err(|e| e.to_string())?;
            let naive: Vec<Vec<u64>> = oracle::naive_gk(max, |_| kv).into_iter().collect();
            let failures: Vec<u64> = (0..100u64)
                .into_par_iter()
                .filter(|&seed| {
                    let (w, _) = family.realize(seed);
                    let found = verify_gp_free(&w, &k, VerifyMode::Family).is_some();
                    let naive_hit = naive.iter().any(|t| t.iter().all(|&n| w.contains(n)));
                    found || naive_hit
                })
                .collect();
            ensure(failures.is_empty(), || {
                format!(
                    "N={max}, k={kv}: {} seeds produce a progression, first {}",
                    failures.len(),
                    failures[0]
                )
            })?;
            runs += 100;
        }
    }
    Ok(format!("{runs} windows GP-free"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let k = k_const(6.0);
    let max = 1u64 << 16;
    let family = MinimalFamily::new(max, &k).map_err(|e| e.to_string())?;
    let failures: Vec<String> = (2..=512u64)
        .into_par_iter()
        .filter_map(|n| {
            let r = membership_bound_check(&family, n, &k, 10_000, 0).unwrap();
            let d = oracle::naive_d(n, 3, 2);
            let bound = 0.5f64.powi(d as i32);
            let se = r.get_detail("standard_error").unwrap();
            let ok = r.holds && r.rhs == bound && r.lhs + 3.0 * se >= bound;
            (!ok).then(|| format!("n={n}: estimate {} + 3*{se} < 2^-{d}", r.lhs))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    let est = membership_in_family(&family, 8, 10_000, 0).map_err(|e| e.to_string())?;
    let dev = (est.estimate - 0.25).abs();
    ensure(dev <= 3.0 * est.standard_error, || {
        format!("P[8 in T] = {} not within 3 SE ({}) of 0.25", est.estimate, est.standard_error)
    })?;
    let elapsed = start.elapsed();
    within(elapsed, 600)?;
    Ok(format!(
        "511 points hold; P[8 in T] = {:.4} +/- {:.4}; {:.2}s",
        est.estimate,
        est.standard_error,
        elapsed.as_secs_f64()
    ))
}

fn criterion_5() -> Outcome {
    let k = k_const(6.0);
    let max = 1u64 << 16;
    let minimal = oracle::naive_minimal(&oracle::naive_gk(max, |_| 6.0));
    let mut failures = vec![];
    for n in 1..=512u64 {
        let r = lemma5_check(n, max, &k).map_err(|e| e.to_string())?;
        let as_middle = minimal
            .iter()
            .filter(|t| t.len() % 2 == 0 && (t[t.len() / 2 - 1] == n || t[t.len() / 2] == n))
            .count();
        let d = oracle::naive_d(n, 3, 2);
        if !r.holds
            || r.get_detail("injective") != Some(1.0)
            || r.rhs != d as f64
            || r.get_detail("in_window") != Some(as_middle as f64)
            || as_middle as u64 > d
        {
            failures.push(n);
        }
    }
    ensure(failures.is_empty(), || format!("fails at n = {failures:?}"))?;
    Ok("512 points, count <= d and injective".into())
}

fn criterion_6() -> Outcome {
    let k = k_const(6.0);
    let max = 200_000u64;
    let minimal = oracle::naive_minimal(&oracle::naive_gk(max, |_| 6.0));
    let mut lines = vec![];
    for x in [100u64, 1_000, 10_000] {
        let r = middle_separation(max, &k, x).map_err(|e| e.to_string())?;
        let oracle_min = minimal
            .iter()
            .filter(|t| t.len() % 2 == 0 && t[t.len() / 2 - 1] >= x)
            .map(|t| t[t.len() / 2] - t[t.len() / 2 - 1])
            .min()
            .ok_or_else(|| format!("no qualifying progression at x={x}"))?;
        ensure(r.lhs == oracle_min as f64, || format!("x={x}: separation {} vs oracle {oracle_min}", r.lhs))?;
        // sep >= x^(4/5) exactly: sep^5 >= x^4
        let exact = u128::from(oracle_min).pow(5) >= u128::from(x).pow(4);
        ensure(exact && r.holds, || format!("x={x}: separation {oracle_min} below x^0.8"))?;
        lines.push(format!("x={x}: {oracle_min}"));
    }
    Ok(format!("min separations {}", lines.join(", ")))
}

fn criterion_7() -> Outcome {
    let grid = default_sum_grid();
    ensure(grid.len() == 50 && grid.iter().all(|p| p.x <= 1_000_000), || "grid shape".into())?;
    let failures: Vec<String> = grid
        .par_iter()
        .filter_map(|p| {
            let r =
                lemma7_partition(p.x, &GapFunction::Constant(p.h), &k_const(f64::from(p.k)), p.c).unwrap();
            let ok = r.holds && r.get_detail("smoothing_violations") == Some(0.0);
            (!ok).then(|| format!("x={} h={} C={} k={}: |A|={} > {}", p.x, p.h, p.c, p.k, r.lhs, r.rhs))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    let s = sum_s(100, &GapFunction::Constant(10.0), &k_const(6.0), 1.0).map_err(|e| e.to_string())?;
    let o = oracle_sum_s(100, 10.0, 6, 1.0);
    ensure(s == 3.703125 && o == 3.703125, || format!("S(100,10,6,1) = {s}, oracle {o}"))?;
    Ok("50 grid points hold; S(100,10,6,1) = 3.703125".into())
}

fn criterion_8() -> Outcome {
    let grid = default_sum_grid();
    let fit = fit_sum_constant(&grid).map_err(|e| e.to_string())?;
    let b = fit.b_power;
    ensure(b > 0.0 && b.is_finite(), || format!("fitted B = {b}"))?;
    ensure(fit.chain_holds, || "smoothing bound does not imply the power bound".into())?;
    let ln2 = std::f64::consts::LN_2;
    let mut qualifying = 0;
    for p in &grid {
        let k = f64::from(p.k);
        if (k - 2.0) * p.h.ln() * p.h.ln().ln() < 4.0 * ln2 * (p.x as f64).ln() {
            continue;
        }
        qualifying += 1;
        let s = oracle_sum_s(p.x, p.h, p.k, p.c);
        let lib = sum_s(p.x, &GapFunction::Constant(p.h), &k_const(k), p.c).unwrap();
        ensure((s - lib).abs() <= 1e-12 * s.max(1.0), || format!("S mismatch at x={}: {lib} vs {s}", p.x))?;
        let bound = b * p.c * p.h.powf(1.0 - ln2);
        ensure(s >= bound * (1.0 - 1e-12), || format!("x={} h={} C={}: S={s} < {bound}", p.x, p.h, p.c))?;
    }
    ensure(qualifying > 0 && qualifying == fit.qualifying, || {
        format!("qualifying points: oracle {qualifying}, library {}", fit.qualifying)
    })?;
    Ok(format!("B = {b:.6} over {qualifying} qualifying points"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let max = 1_000_000u64;
    let spf = spf_table(max as usize);
    let mut notes = vec![];
    for eps in [1.0f64, 0.5] {
        let limit = (1.0 / eps).exp();
        let (w, witnesses) = sieve_variable_kfree(max, eps).map_err(|e| e.to_string())?;
        let excluded: Vec<u64> = w.excluded().collect();
        ensure(excluded.len() == witnesses.len(), || format!("eps={eps}: witness count mismatch"))?;
        for (m, wit) in excluded.iter().zip(&witnesses) {
            let e = wit.exponent;
            ensure(wit.m == *m && (wit.p as f64) < limit && m % wit.p.pow(e) == 0, || {
                format!("eps={eps}: bad witness {wit:?}")
            })?;
        }
        for m in 1..=max {
            let need = (eps * (m as f64).ln()).max(3.0).ceil() as u32;
            let disq = valuations(m, &spf).iter().any(|&(_, v)| v >= need);
            ensure(disq != w.contains(m), || {
                format!("eps={eps}: membership of {m} disagrees with factorization")
            })?;
        }
        let span = limit.ceil() as u64 + 2;
        let mut last_miss = None;
        for x in 1..=max - 10 {
            if !(x..x + span).any(|n| w.contains(n)) {
                last_miss = Some(x);
            }
        }
        ensure(last_miss.is_none_or(|x| x < 100), || {
            format!("eps={eps}: [{}, +{span}) misses the sequence", last_miss.unwrap())
        })?;
        let first = last_miss.map_or(1, |x| x + 1);
        notes.push(format!("eps={eps}: {} excluded, gap bound holds from x={first}", excluded.len()));
    }
    let density = sieve_power_free(max, 2).count() as f64 / max as f64;
    let target = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    ensure((density - target).abs() <= 0.01, || format!("squarefree density {density}"))?;
    let elapsed = start.elapsed();
    within(elapsed, 60)?;
    Ok(format!("{}; squarefree density {density:.6}; {:.2}s", notes.join("; "), elapsed.as_secs_f64()))
}

fn gpfree(args: &[String]) -> Result<(), String> {
    let o = std::process::Command::new(env!("CARGO_BIN_EXE_gpfree"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(o.status.success(), || {
        format!("gpfree {} failed: {}", args.join(" "), String::from_utf8_lossy(&o.stderr))
    })
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| -> PathBuf { dir.path().join(name) };
    let s = |path: &Path| path.to_str().unwrap().to_string();
    let runs: Vec<(Vec<&str>, &str)> = vec![
        (vec!["build", "--max", "20000", "--k-const", "6", "--seed", "9", "--records", "REC"], "build.txt"),
        (vec!["enumerate", "--max", "5000", "--k-const", "8", "--minimal"], "enum.json"),
        (
            vec![
                "lemma5",
                "--max",
                "65536",
                "--k-const",
                "6",
                "--n-from",
                "2",
                "--n-to",
                "64",
                "--trials",
                "2000",
            ],
            "l5.csv",
        ),
        (
            vec![
                "lemma6",
                "--max",
                "20000",
                "--k-const",
                "6",
                "--h-const",
                "10",
                "--x",
                "100,1000",
                "--c",
                "1,5",
                "--trials",
                "500",
            ],
            "l6.json",
        ),
        (vec!["lemma7", "--default-grid", "--fit"], "l7.csv"),
        (vec!["sum-s", "--x", "100,1000", "--h-const", "10", "--k-const", "6"], "s.json"),
        (vec!["sieve", "--max", "100000", "--epsilon", "0.5", "--witnesses", "WIT"], "sieve.txt"),
    ];
    let mut manifests = vec![];
    for (args, out) in &runs {
        let mut argv: Vec<String> = args
            .iter()
            .map(|a| match *a {
                "REC" => s(&p("records.csv")),
                "WIT" => s(&p("witnesses.csv")),
                _ => a.to_string(),
            })
            .collect();
        argv.extend(["--out".into(), s(&p(out))]);
        if out.ends_with(".csv") {
            argv.extend(["--format".into(), "csv".into()]);
        }
        gpfree(&argv)?;
        manifests.push(p(&format!("{out}.manifest.json")));
    }
    let mut files = 0;
    for m in &manifests {
        let text = std::fs::read_to_string(m).map_err(|e| e.to_string())?;
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let outputs: Vec<PathBuf> = v["outputs"]
            .as_array()
            .ok_or("manifest without outputs")?
            .iter()
            .map(|o| PathBuf::from(o.as_str().unwrap()))
            .collect();
        let before: Vec<Vec<u8>> = outputs.iter().map(|o| std::fs::read(o).unwrap()).collect();
        for o in &outputs {
            std::fs::remove_file(o).map_err(|e| e.to_string())?;
        }
        gpfree(&["replay".into(), s(m)])?;
        for (o, old) in outputs.iter().zip(&before) {
            let new = std::fs::read(o).map_err(|e| format!("{}: {e}", o.display()))?;
            ensure(new == *old, || format!("{} differs after replay", o.display()))?;
            files += 1;
        }
        let replayed = std::fs::read_to_string(m).map_err(|e| e.to_string())?;
        ensure(replayed == text, || format!("{} differs after replay", m.display()))?;
    }
    Ok(format!("{} manifests replayed, {files} outputs byte-identical", manifests.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("d(n;i,j) matches triple enumeration", criterion_1),
        ("G_k and G_k* match the naive scan", criterion_2),
        ("process output is GP-free", criterion_3),
        ("membership probability lower bound", criterion_4),
        ("middle-term multiplicity and injectivity", criterion_5),
        ("middle-term separation", criterion_6),
        ("partition, smoothing bound and worked sum", criterion_7),
        ("fitted sum constant", criterion_8),
        ("variable-exponent sieve baseline", criterion_9),
        ("manifest replay reproducibility", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
