//! Acceptance criteria 1–10. Prints one `criterion N: PASS|FAIL` line each and
//! exits non-zero if any fails.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use scottlab_core::poset::{random_poset, PosetDoc};
use scottlab_core::suites::{run_suite, SuiteConfig, SuiteReport};
use scottlab_core::FinitePoset;

const SEED: u64 = 7;

struct Outcome {
    ok: bool,
    note: String,
}

fn suite(name: &str, count: usize, max: usize) -> Result<SuiteReport, String> {
    run_suite(name, &SuiteConfig { seed: SEED, count, max }).map_err(|e| e.to_string())
}

/// Runs a suite and checks it passes within `limit` and that the named checks
/// (matched by substring) saw at least `min_cases` cases.
fn suite_criterion(name: &str, count: usize, max: usize, limit: Option<Duration>, min_cases: &[(&str, usize)]) -> Outcome {
    let start = Instant::now();
    let rep = match suite(name, count, max) {
        Ok(r) => r,
        Err(e) => return Outcome { ok: false, note: e },
    };
    let took = start.elapsed();
    let mut problems = Vec::new();
    if !rep.passed() {
        problems.push(format!("suite failed:\n{}", rep.render()));
    }
    if let Some(limit) = limit {
        if took > limit {
            problems.push(format!("took {took:?} > {limit:?}"));
        }
    }
    for (needle, min) in min_cases {
        let hits: Vec<_> = rep.checks.iter().filter(|c| c.name.contains(needle)).collect();
        if hits.is_empty() {
            problems.push(format!("no check matching {needle:?}"));
        }
        for c in hits {
            if c.cases < *min {
                problems.push(format!("{}: {} cases < {min}", c.name, c.cases));
            }
        }
    }
    let cases: usize = rep.checks.iter().map(|c| c.cases).sum();
    Outcome {
        ok: problems.is_empty(),
        note: if problems.is_empty() {
            format!("{name}: {} checks, {cases} cases, {took:.2?}", rep.checks.len())
        } else {
            problems.join("; ")
        },
    }
}

fn criterion_1() -> Outcome {
    // 88 iso classes of posets on 0..=5 points, so 88² exhaustive pairs.
    suite_criterion(
        "gamma-faithful",
        10_000,
        5,
        Some(Duration::from_secs(60)),
        &[("exhaustive", 88 * 88), ("6 elements", 200)],
    )
}

fn criterion_2() -> Outcome {
    suite_criterion(
        "finite-universals",
        10_000,
        5,
        Some(Duration::from_secs(300)),
        &[
            ("is_sober", 88),
            ("is_well_filtered", 88),
            ("is_dominated", 88),
            ("is_weakly_dominated", 88),
            ("is_omega_star_compact", 88),
            ("IRR(P) = C(ΓP)", 88),
            ("family oracle", 1),
        ],
    )
}

fn criterion_3() -> Outcome {
    // 1 + 1 + 2 + 5 + 16 classes on at most 4 points
    suite_criterion("kf-discipline", 10_000, 4, None, &[("KF(P) ⊆ IRR(P)", 25), ("point closure", 25)])
}

fn criterion_4() -> Outcome {
    let items: Vec<String> = (1..=7).map(|i| format!("item {i}:")).collect();
    let mut min: Vec<(&str, usize)> = items.iter().map(|s| (s.as_str(), 10_000)).collect();
    min.push(("<1;<2 ⊆ <2", 10_000));
    min.push(("<2 ⊆ <1;<2", 10_000));
    suite_criterion("prop-order", 10_000, 5, Some(Duration::from_secs(30)), &min)
}

fn criterion_5() -> Outcome {
    suite_criterion(
        "claim23-sups",
        1_000,
        5,
        None,
        &[
            ("countable: chain_sup bounds", 1_000),
            ("countable: least_upper_bound_check accepts", 1_000),
            ("countable: non-bounds rejected", 1_000),
            ("strictly larger", 1),
        ],
    )
}

fn criterion_6() -> Outcome {
    suite_criterion(
        "thmA-membership",
        10_000,
        5,
        None,
        &[("bounded ∃m scan", 10_000), ("lower sets", 10_000), ("irreducibility probe", 1_000)],
    )
}

fn criterion_7() -> Outcome {
    suite_criterion("thm44-roundtrip", 10_000, 5, None, &[("valid families", 100), ("missing level(s)", 1)])
}

fn criterion_8() -> Outcome {
    suite_criterion(
        "exampleJ-cc",
        10_000,
        5,
        None,
        &[("Principal(x)", 20), ("UnionPrefix", 6), ("unions refuted", 20)],
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut out = suite_criterion("exampleM-witness", 10_000, 5, None, &[("replays", 1), ("weakly dominated", 1)]);
    let rep = suite("exampleM-witness", 1, 1);
    let took = start.elapsed();
    let verdicts = rep.as_ref().is_ok_and(|r| {
        r.detail.contains("verdict: not dominated") && r.detail.contains("verdict: weakly dominated")
    });
    if !verdicts {
        out.ok = false;
        out.note = format!("verdict lines missing: {:?}", rep.map(|r| r.detail));
    } else if took > Duration::from_secs(10) {
        out.ok = false;
        out.note = format!("took {took:?} > 10s");
    }
    out
}

// ------------------------------------------------------------------ CLI

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scottlab"))
        .args(args)
        .output()
        .expect("spawn scottlab")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn write_doc(path: &Path, p: &FinitePoset) {
    std::fs::write(path, serde_json::to_string(&p.to_doc()).unwrap()).unwrap();
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().expect("tempdir");
    let d = dir.path();
    let mut problems = Vec::new();

    // JSON round-trip through `export`
    let mut rt_ok = 0;
    for seed in 0..100u64 {
        let p = random_poset(1 + (seed as usize % 9), 0.3, seed).unwrap();
        let file = d.join(format!("p{seed}.json"));
        write_doc(&file, &p);
        let o = cli(&["export", file.to_str().unwrap(), "--format", "json"]);
        let back = serde_json::from_slice::<PosetDoc>(&o.stdout)
            .ok()
            .and_then(|doc| FinitePoset::from_doc(&doc).ok());
        if code(&o) == 0 && back.is_some_and(|q| q.order_equal(&p)) {
            rt_ok += 1;
        } else {
            problems.push(format!("round-trip seed {seed}"));
        }
    }

    // determinism
    for args in [
        &["verify", "prop-order", "--seed", "7", "--count", "2000"][..],
        &["verify", "exampleM-witness", "--json"][..],
        &["analyze", "--corpus", "m"][..],
        &["corpus", "truncate", "z", "--format", "dot"][..],
    ] {
        let (a, b) = (cli(args), cli(args));
        if a.stdout != b.stdout || a.stdout.is_empty() {
            problems.push(format!("non-deterministic: {}", args.join(" ")));
        }
    }

    // exit-code table
    let v = d.join("v.json");
    let v2 = d.join("v2.json");
    let w = d.join("w.json");
    let bad = d.join("bad.json");
    std::fs::write(&v, r#"{"elements":["a","b","c"],"covers":[["a","b"],["a","c"]]}"#).unwrap();
    std::fs::write(&v2, r#"{"elements":["x","y","z"],"covers":[["x","y"],["x","z"]]}"#).unwrap();
    std::fs::write(&w, r#"{"elements":["a","b","c"],"covers":[["b","a"],["c","a"]]}"#).unwrap();
    std::fs::write(&bad, "{\"elements\": [\"a\",\n \"b\"], \"covers\": [[\"a\",]]}").unwrap();
    let (v, v2, w, bad) = (v.to_str().unwrap(), v2.to_str().unwrap(), w.to_str().unwrap(), bad.to_str().unwrap());
    let unwritable = d.join("missing-dir").join("out.dot");
    let table: Vec<(Vec<&str>, i32)> = vec![
        (vec!["analyze", v], 0),
        (vec!["gamma-iso", v, v2], 0),
        (vec!["gamma-iso", v, w], 1),
        (vec!["gamma-iso", v, bad], 2),
        (vec!["verify", "kf-discipline", "--max", "3"], 0),
        (vec!["verify", "no-such-suite"], 2),
        (vec!["corpus", "list"], 0),
        (vec!["corpus", "truncate", "jinf", "--caps", "k=9,n=9,j=9"], 3),
        (vec!["analyze", "--corpus", "jinf", "--caps", "k=9,n=9,j=9"], 3),
        (vec!["corpus", "truncate", "nowhere"], 2),
        (vec!["export", v, "--format", "dot", "--out", unwritable.to_str().unwrap()], 2),
        (vec!["z", "cmp", "1 ; 2", "1 ; 3"], 0),
        (vec!["z", "cmp", "1 ; 2", "5 ; 3.2"], 1),
        (vec!["z", "member", "level(2)", "3 ; 4.2"], 0),
        (vec!["z", "member", "level(2)", "0 ; 3"], 1),
        (vec!["z", "cmp", "1 ; (("], 2),
        (vec!["no-such-command"], 2),
    ];
    for (args, want) in &table {
        let o = cli(args);
        if code(&o) != *want {
            problems.push(format!("`{}` exited {} (want {want})", args.join(" "), code(&o)));
        }
    }
    let o = cli(&["gamma-iso", v, bad]);
    if !String::from_utf8_lossy(&o.stderr).contains("line 2 column") {
        problems.push("parse error does not report line/column".into());
    }

    Outcome {
        ok: problems.is_empty(),
        note: if problems.is_empty() {
            format!("{rt_ok}/100 round-trips, 4 determinism probes, {} exit codes", table.len())
        } else {
            problems.join("; ")
        },
    }
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let out = f();
        let verdict = if out.ok { "PASS" } else { "FAIL" };
        println!("criterion {n}: {verdict} ({})", out.note);
        failed += usize::from(!out.ok);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
