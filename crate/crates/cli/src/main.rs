//! `scottlab`: batch front-end to the Scott-topology workbench.
//!
//! Exit codes: 0 success / isomorphic, 1 semantic negative, 2 usage or parse
//! error, 3 cap exceeded.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use scottlab_core::corpus::{self, Caps};
use scottlab_core::poset::{poset_iso, random_permutation, random_poset, PosetDoc};
use scottlab_core::suites::{run_suite, SuiteConfig, DEFAULT_SEED, SUITES};
use scottlab_core::zed::{
    chain_sup, closed_member, least_upper_bound_check, z_rel, ChainDescriptor, ZClosedDescr, ZElem,
};
use scottlab_core::{faithfulness, scott, Error, FinitePoset, Ordinal, OrdString};

#[derive(Parser)]
#[command(name = "scottlab", version, about = "Scott closed sets, sobriety and Γ-faithfulness workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a poset file or a corpus structure.
    Analyze {
        /// Poset JSON file ({"elements": [...], "covers": [[lo, hi], ...]}).
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<String>,
        /// Truncation caps, e.g. k=2,n=2,j=2.
        #[arg(long)]
        caps: Option<String>,
        /// Comma-separated subset of: gamma,irr,c-compact,sober,well-filtered,omega-star,dominated,weakly-dominated.
        #[arg(long)]
        predicates: Option<String>,
        /// Include per-predicate wall-clock timings (makes output non-deterministic).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide ΓP ≅ ΓQ and print the lattice isomorphism.
    GammaIso {
        p: Option<PathBuf>,
        q: Option<PathBuf>,
        /// File with one seed per line (optionally `seed size`); each seed yields a random pair.
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Run a named property suite.
    Verify {
        /// Suite name; `list` prints the available suites.
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Export a poset as JSON or as a DOT Hasse diagram.
    Export {
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<String>,
        #[arg(long)]
        caps: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Named structures.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
    /// Direct access to the 𝒵 operations (elements written `m ; s`).
    Z {
        #[command(subcommand)]
        cmd: ZCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    List,
    Truncate {
        id: String,
        #[arg(long)]
        caps: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ZCmd {
    /// Relation witness between two elements; exit 1 if incomparable.
    Cmp { a: String, b: String },
    /// Supremum of the chain (m, u.s) over sampled u; uncountable unless --sup is given.
    Sup {
        #[arg(long)]
        m: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        sup: Option<String>,
        /// Comma-separated sampled indices.
        #[arg(long)]
        samples: String,
        /// Also decide whether this candidate bounds the chain from above least-ly.
        #[arg(long)]
        candidate: Option<String>,
    },
    /// Membership in `principal(m;s)` or `level(s)`; exit 1 if not a member.
    Member { descr: String, elem: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// A failure with its exit code.
struct Fail {
    code: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail {
            code: if e.is_cap() { 3 } else { 2 },
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail { code: 2, msg: msg.into() }
}

type CliResult = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.cmd {
        Cmd::Analyze {
            file,
            corpus,
            caps,
            predicates,
            timing,
            out,
        } => cmd_analyze(file, corpus, caps, predicates, timing, out),
        Cmd::GammaIso { p, q, batch } => cmd_gamma_iso(p, q, batch),
        Cmd::Verify {
            suite,
            seed,
            count,
            max,
            json,
        } => cmd_verify(&suite, SuiteConfig { seed, count, max }, json),
        Cmd::Export {
            file,
            corpus,
            caps,
            format,
            out,
        } => {
            let (name, p) = load(file, corpus, caps)?;
            emit(&render(&name, &p, format), out.as_deref())?;
            Ok(0)
        }
        Cmd::Corpus { cmd } => match cmd {
            CorpusCmd::List => {
                for e in corpus::corpus_list() {
                    let caps: Vec<String> = e.caps.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    println!("{:12} {:10} {:22} {}", e.id, e.kind, caps.join(","), e.description);
                }
                Ok(0)
            }
            CorpusCmd::Truncate { id, caps, format } => {
                let (name, p) = load(None, Some(id), caps)?;
                print!("{}", render(&name, &p, format));
                Ok(0)
            }
        },
        Cmd::Z { cmd } => cmd_z(cmd),
    }
}

fn read_poset(path: &Path) -> Result<FinitePoset, Fail> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let doc: PosetDoc = serde_json::from_str(&text).map_err(|e| {
        usage(format!(
            "{}: parse error at line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    FinitePoset::from_doc(&doc).map_err(|e| {
        let mut f = Fail::from(e);
        f.msg = format!("{}: {}", path.display(), f.msg);
        f
    })
}

fn parse_caps(caps: Option<String>) -> Result<Caps, Fail> {
    Ok(match caps {
        Some(c) => corpus::parse_caps(&c)?,
        None => Caps::new(),
    })
}

fn load(file: Option<PathBuf>, corpus_id: Option<String>, caps: Option<String>) -> Result<(String, FinitePoset), Fail> {
    match (file, corpus_id) {
        (Some(f), None) => {
            if caps.is_some() {
                return Err(usage("--caps applies to --corpus only"));
            }
            Ok((f.display().to_string(), read_poset(&f)?))
        }
        (None, Some(id)) => {
            let p = corpus::truncate(&id, &parse_caps(caps)?)?;
            Ok((id, p))
        }
        _ => Err(usage("give exactly one of FILE or --corpus ID")),
    }
}

fn render(name: &str, p: &FinitePoset, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&p.to_doc()).expect("serializable")),
        Format::Dot => p.to_dot(name),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Fail> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------- analyze

const PREDICATES: &[&str] = &[
    "gamma",
    "irr",
    "c-compact",
    "sober",
    "well-filtered",
    "omega-star",
    "dominated",
    "weakly-dominated",
];

#[derive(Serialize)]
struct Skipped {
    predicate: String,
    reason: String,
}

#[derive(Serialize)]
struct AnalysisReport {
    structure: String,
    elements: usize,
    verdicts: BTreeMap<String, bool>,
    counts: BTreeMap<String, usize>,
    witnesses: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    skipped: Vec<Skipped>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<BTreeMap<String, f64>>,
}

fn cmd_analyze(
    file: Option<PathBuf>,
    corpus_id: Option<String>,
    caps: Option<String>,
    predicates: Option<String>,
    timing: bool,
    out: Option<PathBuf>,
) -> CliResult {
    let (name, p) = load(file, corpus_id, caps)?;
    let wanted: Vec<String> = match predicates {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => PREDICATES.iter().map(|s| s.to_string()).collect(),
    };
    if let Some(bad) = wanted.iter().find(|w| !PREDICATES.contains(&w.as_str())) {
        return Err(usage(format!("unknown predicate {bad:?}; known: {}", PREDICATES.join(","))));
    }
    let mut rep = AnalysisReport {
        structure: name,
        elements: p.len(),
        verdicts: BTreeMap::new(),
        counts: BTreeMap::new(),
        witnesses: BTreeMap::new(),
        skipped: vec![],
        timing_ms: timing.then(BTreeMap::new),
    };
    for pred in PREDICATES.iter().filter(|x| wanted.iter().any(|w| w == *x)) {
        let start = Instant::now();
        if let Err(e) = analyze_one(&p, pred, &mut rep) {
            rep.skipped.push(Skipped {
                predicate: pred.to_string(),
                reason: e.to_string(),
            });
            if !e.is_cap() {
                return Err(e.into());
            }
        }
        if let Some(t) = rep.timing_ms.as_mut() {
            t.insert(pred.to_string(), start.elapsed().as_secs_f64() * 1e3);
        }
    }
    let text = format!("{}\n", serde_json::to_string_pretty(&rep).expect("serializable"));
    emit(&text, out.as_deref())?;
    Ok(if rep.skipped.is_empty() { 0 } else { 3 })
}

fn analyze_one(p: &FinitePoset, pred: &str, rep: &mut AnalysisReport) -> Result<(), Error> {
    let set = |v: &mut BTreeMap<String, bool>, k: &str, b: bool| {
        v.insert(k.to_string(), b);
    };
    match pred {
        "gamma" => {
            rep.counts.insert("gamma".into(), scott::gamma(p)?.len());
        }
        "irr" => {
            rep.counts.insert("irr".into(), scott::irr(p)?.len());
        }
        "c-compact" => {
            rep.counts.insert("c_compact".into(), faithfulness::c_compact_elements(p)?.len());
        }
        "sober" => {
            let bad = scott::non_principal_irreducibles(p)?;
            set(&mut rep.verdicts, "sober", bad.is_empty());
            if !bad.is_empty() {
                rep.witnesses.insert("sober".into(), serde_json::json!(p.show_all(&bad)));
            }
        }
        "well-filtered" => {
            if p.len() <= scott::WELL_FILTERED_BRUTE_MAX {
                let w = scott::well_filtered_counterexample(p)?;
                set(&mut rep.verdicts, "well_filtered", w.is_none());
                if let Some((fam, u)) = w {
                    rep.witnesses.insert(
                        "well_filtered".into(),
                        serde_json::json!({"family": p.show_all(&fam), "open": p.show(u)}),
                    );
                }
            } else {
                set(&mut rep.verdicts, "well_filtered", scott::is_well_filtered(p)?);
            }
        }
        "omega-star" => set(&mut rep.verdicts, "omega_star_compact", faithfulness::is_omega_star_compact(p)?),
        "dominated" => {
            let w = faithfulness::dominated_witness(p)?;
            set(&mut rep.verdicts, "dominated", w.is_none());
            if let Some(a) = w {
                rep.witnesses.insert("dominated".into(), serde_json::json!(p.show(a)));
            }
        }
        "weakly-dominated" => {
            let w = faithfulness::weakly_dominated_witness(p)?;
            set(&mut rep.verdicts, "weakly_dominated", w.is_none());
            if let Some(a) = w {
                rep.witnesses.insert("weakly_dominated".into(), serde_json::json!(p.show(a)));
            }
        }
        _ => unreachable!("validated above"),
    }
    Ok(())
}

// ---------------------------------------------------------------- gamma-iso

fn cmd_gamma_iso(p: Option<PathBuf>, q: Option<PathBuf>, batch: Option<PathBuf>) -> CliResult {
    match (p, q, batch) {
        (Some(p), Some(q), None) => {
            let (p, q) = (read_poset(&p)?, read_poset(&q)?);
            let gp = scott::gamma(&p)?;
            let gq = scott::gamma(&q)?;
            match scott::gamma_iso_of(&gp, &gq) {
                Some(map) => {
                    let pairs: Vec<(String, String)> = map
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| (p.show(gp.carrier()[i]), q.show(gq.carrier()[j])))
                        .collect();
                    println!("{}", serde_json::json!({"isomorphic": true, "map": pairs}));
                    Ok(0)
                }
                None => {
                    println!("{}", serde_json::json!({"isomorphic": false}));
                    Ok(1)
                }
            }
        }
        (None, None, Some(b)) => {
            let text = fs::read_to_string(&b).map_err(|e| usage(format!("{}: {e}", b.display())))?;
            let mut all_agree = true;
            for (ln, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let mut it = line.split_whitespace();
                let bad = || usage(format!("{}: line {}: expected `seed [size]`", b.display(), ln + 1));
                let seed: u64 = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                let n: usize = match it.next() {
                    Some(s) => s.parse().map_err(|_| bad())?,
                    None => 5,
                };
                let (p, q) = batch_pair(seed, n)?;
                let g = scott::gamma_iso(&p, &q)?.is_some();
                let pi = poset_iso(&p, &q).is_some();
                all_agree &= g == pi;
                println!("seed {seed} size {n}: gamma_iso={g} poset_iso={pi} agree={}", g == pi);
            }
            Ok(if all_agree { 0 } else { 1 })
        }
        _ => Err(usage("give P and Q files, or --batch FILE")),
    }
}

/// The pair for one batch seed: a random poset and either a relabelled copy
/// or an independent random poset.
fn batch_pair(seed: u64, n: usize) -> Result<(FinitePoset, FinitePoset), Error> {
    use rand_chacha::rand_core::SeedableRng;
    let p = random_poset(n, 0.35, seed)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let q = if seed.is_multiple_of(2) {
        p.permuted(&random_permutation(n, &mut rng))
    } else {
        random_poset(n, 0.35, seed.wrapping_add(1))?
    };
    Ok((p, q))
}

// ---------------------------------------------------------------- verify

fn cmd_verify(suite: &str, cfg: SuiteConfig, json: bool) -> CliResult {
    if suite == "list" {
        for (name, what) in SUITES {
            println!("{name:18} {what}");
        }
        return Ok(0);
    }
    if !SUITES.iter().any(|(n, _)| *n == suite) {
        let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
        return Err(usage(format!("unknown suite {suite:?}; known: {}", names.join(", "))));
    }
    let rep = run_suite(suite, &cfg)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&rep).expect("serializable"));
    } else {
        print!("{}", rep.render());
    }
    Ok(if rep.passed() { 0 } else { 1 })
}

// ---------------------------------------------------------------- z

fn parse<T: std::str::FromStr<Err = Error>>(what: &str, text: &str) -> Result<T, Fail> {
    text.parse::<T>().map_err(|e| usage(format!("{what} {text:?}: {e}")))
}

fn cmd_z(cmd: ZCmd) -> CliResult {
    match cmd {
        ZCmd::Cmp { a, b } => {
            let a: ZElem = parse("element", &a)?;
            let b: ZElem = parse("element", &b)?;
            if let Some(w) = z_rel(&a, &b) {
                match &w.intermediate {
                    Some(c) => println!("({a}) {} ({b}) via ({c})", w.tag),
                    None => println!("({a}) {} ({b})", w.tag),
                }
                Ok(0)
            } else if let Some(w) = z_rel(&b, &a) {
                println!("({b}) {} ({a})", w.tag);
                Ok(0)
            } else {
                println!("incomparable");
                Ok(1)
            }
        }
        ZCmd::Sup {
            m,
            s,
            sup,
            samples,
            candidate,
        } => {
            let m: Ordinal = parse("ordinal", &m)?;
            let s: OrdString = parse("string", &s)?;
            let samples = samples
                .split(',')
                .map(|u| parse::<Ordinal>("ordinal", u.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let c = match sup {
                Some(u) => ChainDescriptor::countable(m, s, parse("ordinal", &u)?, samples),
                None => ChainDescriptor::uncountable(m, s, samples),
            };
            let z = chain_sup(&c)?;
            println!("sup = {z}");
            if let Some(cand) = candidate {
                let cand: ZElem = parse("element", &cand)?;
                match least_upper_bound_check(&c, &cand) {
                    Ok(true) => println!("sup ≤ {cand}"),
                    Ok(false) => {
                        println!("sup ≰ {cand}");
                        return Ok(1);
                    }
                    Err(Error::NotAnUpperBound(msg)) => {
                        println!("not an upper bound: {msg}");
                        return Ok(1);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(0)
        }
        ZCmd::Member { descr, elem } => {
            let d: ZClosedDescr = parse("descriptor", &descr)?;
            let z: ZElem = parse("element", &elem)?;
            let inside = closed_member(&d, &z);
            println!("{inside}");
            Ok(if inside { 0 } else { 1 })
        }
    }
}
