//! Command-line front end. Every subcommand prints a JSON report with
//! `--json`, or a short text summary otherwise.
//!
//! Exit codes: 0 on success, 2 on invalid input or usage, 1 when a check
//! fails or the computation breaks an expected property.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cocycle::{check_cocycle_condition, invariant_with_threads, verify_choices};
use crate::coloring::colorings;
use crate::error::{Error, Result};
use crate::families::{build_kn_colored, contribution_scaling_check, is_alternating, search_universal_four_color};
use crate::linalg::{check_odd_prime, knot_determinant, ColoringMatrix};
use crate::mincolor::{
    diagram_min_colors, normalize_four_palette, palette_reduction_search, theorem_lower_bound, SearchOptions,
    WitnessBundle,
};
use crate::pdcode::{bundled, bundled_table, parse_json, parse_pd, parse_table, Diagram};

#[derive(Parser, Debug)]
#[command(
    name = "mincol",
    version,
    about = "Fox colorings, cocycle invariants and minimal palettes of knot diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// PD file, text or JSON.
    #[arg(long, conflicts_with = "table")]
    pd: Option<PathBuf>,
    /// Knot table file; needs --name.
    #[arg(long, requires = "name")]
    table: Option<PathBuf>,
    /// Record name, from --table or the bundled table.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Print the full JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a diagram and report its combinatorics.
    Parse {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Fox p-colorings.
    Colorings {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        p: u64,
        /// Only the number of colorings.
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The cocycle multiset as a histogram of residues.
    Invariant {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Smallest palette over the nontrivial colorings of this diagram.
    Mincol {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        p: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Lower bound for primes above 7 from the zero count.
    Bound {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        p: u64,
        /// The input is known to be non-split.
        #[arg(long)]
        assert_nonsplit: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Reidemeister search for a diagram with a smaller palette.
    SearchPalette {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        p: u64,
        #[arg(long)]
        target: usize,
        #[arg(long)]
        depth: usize,
        /// Largest diagram explored; defaults to the input size plus 4.
        #[arg(long)]
        max_crossings: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Write the witness bundle here.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Replay and check a witness bundle.
    VerifyWitness {
        #[arg(long)]
        witness: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Connected sums of n copies of 5_2 at p = 7.
    FamilyKn {
        #[arg(short)]
        n: usize,
        /// Compute the exact zero count even when n > 3.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Braid closures carrying the {0,1,2,3} pattern.
    SearchUniversal {
        #[arg(long, default_value_t = 10)]
        max_length: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Cocycle identity and choice-independence suites.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

/// Machine-readable result of one invocation.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: Option<String>,
    pub parameters: Value,
    pub results: Value,
    pub ok: bool,
    pub timing_ms: u64,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn load(input: &Input) -> Result<(Diagram, String)> {
    match (&input.pd, &input.table, &input.name) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let d = if text.trim_start().starts_with('{') {
                parse_json(&text)?
            } else {
                parse_pd(&text)?
            };
            Ok((d, digest(text.as_bytes())))
        }
        (None, Some(path), Some(name)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let d = parse_table(&text)?
                .into_iter()
                .find(|d| d.name() == Some(name.as_str()))
                .ok_or_else(|| Error::UnknownKnot(name.clone()))?;
            let record = d.to_pd_text();
            Ok((d, digest(record.as_bytes())))
        }
        (None, None, Some(name)) => {
            let d = bundled(name)?;
            let record = d.to_pd_text();
            Ok((d, digest(record.as_bytes())))
        }
        _ => Err(Error::Io(
            "no input: give --pd FILE, --table FILE --name K or --name K".into(),
        )),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

struct Outcome {
    digest: Option<String>,
    parameters: Value,
    results: Value,
    summary: String,
    ok: bool,
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Parse { input, .. } => {
            let (d, dg) = load(input)?;
            let results = json!({
                "name": d.name(),
                "crossings": d.crossing_count(),
                "edges": d.edge_count(),
                "arcs": d.arc_count(),
                "components": d.components().len(),
                "faces": d.region_count(),
                "writhe": d.writhe(),
                "linking_numbers": d.linking_numbers(),
                "pd": d.to_json(),
            });
            let summary = format!(
                "{} crossings, {} arcs, {} components, {} faces",
                d.crossing_count(),
                d.arc_count(),
                d.components().len(),
                d.region_count()
            );
            Ok(Outcome {
                digest: Some(dg),
                parameters: json!({}),
                results,
                summary,
                ok: true,
            })
        }
        Command::Colorings { input, p, count, .. } => {
            check_odd_prime(*p)?;
            let (d, dg) = load(input)?;
            let all = colorings(&d, *p)?;
            let n = all.size();
            let mut results = json!({ "p": p, "kernel_dim": all.kernel_dim(), "count": n });
            if !count {
                if n > 1_000_000 {
                    return Err(Error::Io(format!("{n} colorings; use --count")));
                }
                let list: Vec<Vec<u64>> = all.map(|c| c.values).collect();
                results["colorings"] = to_value(&list);
            }
            Ok(Outcome {
                digest: Some(dg),
                parameters: json!({ "p": p, "count": count }),
                results,
                summary: n.to_string(),
                ok: true,
            })
        }
        Command::Invariant { input, p, threads, .. } => {
            check_odd_prime(*p)?;
            let (d, dg) = load(input)?;
            let m = invariant_with_threads(&d, *p, *threads)?;
            let summary = format!(
                "total {}, zeros {}, nonzero support {:?}",
                m.total,
                m.zeros(),
                m.nonzero_support()
            );
            let mut results = to_value(&m);
            results["zeros"] = json!(m.zeros());
            Ok(Outcome {
                digest: Some(dg),
                parameters: json!({ "p": p }),
                results,
                summary,
                ok: true,
            })
        }
        Command::Mincol { input, p, .. } => {
            let (d, dg) = load(input)?;
            let min = diagram_min_colors(&d, *p)?;
            let (results, summary) = match &min {
                None => (
                    json!({ "kind": "per-diagram minimum", "p": p, "nontrivial": false }),
                    "no nontrivial colorings".to_string(),
                ),
                Some(m) => {
                    let mut r = json!({
                        "kind": "per-diagram minimum",
                        "p": p,
                        "nontrivial": true,
                        "palette_size": m.palette_size,
                        "witness": m.witness.values,
                        "palette": m.witness.palette(),
                    });
                    if m.palette_size == 4 {
                        if let Ok((n, tag)) = normalize_four_palette(&d, &m.witness) {
                            r["normalized"] = to_value(&n.values);
                            r["case"] = to_value(&tag);
                        }
                    }
                    (r, m.palette_size.to_string())
                }
            };
            Ok(Outcome {
                digest: Some(dg),
                parameters: json!({ "p": p }),
                results,
                summary,
                ok: true,
            })
        }
        Command::Bound {
            input,
            p,
            assert_nonsplit,
            ..
        } => {
            let (d, dg) = load(input)?;
            let r = theorem_lower_bound(&d, *p, *assert_nonsplit)?;
            let summary = match &r.bound {
                Some(b) => b.clone(),
                None => format!("no bound: zero count {} against floor {}", r.phi0, r.floor),
            };
            Ok(Outcome {
                digest: Some(dg),
                parameters: json!({ "p": p, "assert_nonsplit": assert_nonsplit }),
                results: to_value(&r),
                summary,
                ok: true,
            })
        }
        Command::SearchPalette {
            input,
            p,
            target,
            depth,
            max_crossings,
            threads,
            witness,
            ..
        } => {
            let (d, dg) = load(input)?;
            let cap = max_crossings.unwrap_or(d.crossing_count() + 4);
            let opts = SearchOptions {
                depth: *depth,
                max_crossings: cap,
                threads: *threads,
            };
            let out = palette_reduction_search(&d, *p, *target, opts)?;
            let bundle = out.witness.as_ref().map(WitnessBundle::from_witness);
            if let (Some(path), Some(b)) = (witness, &bundle) {
                std::fs::write(path, b.to_json() + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            let summary = match &out.witness {
                Some(w) => format!(
                    "found after {} moves: {} crossings, {} colors",
                    w.trace.len(),
                    w.end.crossing_count(),
                    w.coloring.palette().len()
                ),
                None => format!("none within {depth} moves"),
            };
            Ok(Outcome {
                digest: Some(dg),
                parameters: json!({ "p": p, "target": target, "depth": depth, "max_crossings": cap }),
                results: json!({
                    "kind": "upper bound",
                    "found": bundle.is_some(),
                    "nodes": out.nodes,
                    "witness": bundle,
                }),
                summary,
                ok: true,
            })
        }
        Command::VerifyWitness { witness, .. } => {
            let text =
                std::fs::read_to_string(witness).map_err(|e| Error::Io(format!("{}: {e}", witness.display())))?;
            let b = WitnessBundle::from_json(&text)?;
            let r = crate::mincolor::verify_bundle(&b);
            let summary = if r.ok {
                format!("ok: {} moves, {} colors", r.steps, r.palette_size.unwrap_or(0))
            } else {
                format!("failed: {:?}", r.failure)
            };
            Ok(Outcome {
                digest: Some(digest(text.as_bytes())),
                parameters: json!({}),
                ok: r.ok,
                results: to_value(&r),
                summary,
            })
        }
        Command::FamilyKn { n, exact, threads, .. } => {
            let (d, c) = build_kn_colored(*n)?;
            let det = knot_determinant(&ColoringMatrix::from_diagram(&d))?;
            let s = contribution_scaling_check(*n)?;
            let zeros = if *n <= 3 || *exact {
                Some(invariant_with_threads(&d, 7, *threads)?.zeros())
            } else {
                None
            };
            let mut singles: Vec<u64> = s.rows.iter().flat_map(|r| r.single.clone()).collect();
            singles.sort_unstable();
            singles.dedup();
            let mut induced: Vec<u64> = s.rows.iter().flat_map(|r| r.induced.clone()).collect();
            induced.sort_unstable();
            induced.dedup();
            let summary = format!(
                "K{n}: {} crossings, determinant {det}, induced contributions {:?}, zero count {}",
                d.crossing_count(),
                induced,
                match zeros {
                    Some(z) => z.to_string(),
                    None => format!(">= {}", s.phi0_lower_bound()),
                }
            );
            Ok(Outcome {
                digest: Some(digest(d.to_pd_text().as_bytes())),
                parameters: json!({ "n": n, "p": 7 }),
                ok: s.scaling_holds,
                results: json!({
                    "crossings": d.crossing_count(),
                    "determinant": det.to_string(),
                    "alternating": is_alternating(&d),
                    "induced_coloring": c.values,
                    "single_contributions": singles,
                    "induced_contributions": induced,
                    "base_independent": s.base_independent,
                    "scaling_holds": s.scaling_holds,
                    "induced_zeros": s.induced_zeros,
                    "phi0_lower_bound": s.phi0_lower_bound(),
                    "phi0": zeros,
                    "pd": d.to_json(),
                }),
                summary,
            })
        }
        Command::SearchUniversal { max_length, .. } => {
            let s = search_universal_four_color(*max_length)?;
            let cands: Vec<Value> = s
                .candidates
                .iter()
                .map(|c| {
                    json!({
                        "word": c.word_text(),
                        "strands": c.strands,
                        "crossings": c.diagram.crossing_count(),
                        "components": c.diagram.components().len(),
                        "linking_numbers": c.linking_numbers,
                        "linked": c.linked(),
                        "coloring": c.coloring.values,
                        "pd": c.diagram.to_json(),
                    })
                })
                .collect();
            let linked = s.candidates.iter().filter(|c| c.linked()).count();
            Ok(Outcome {
                digest: None,
                parameters: json!({ "max_length": max_length }),
                results: json!({ "words_tried": s.words_tried, "candidates": cands }),
                summary: format!(
                    "{} candidates ({} with a linked pair) from {} words",
                    s.candidates.len(),
                    linked,
                    s.words_tried
                ),
                ok: true,
            })
        }
        Command::Selftest { .. } => {
            let mut cocycle = Vec::new();
            for p in [3, 5, 7] {
                cocycle.push(check_cocycle_condition(p)?);
            }
            let mut choices = Vec::new();
            for d in bundled_table() {
                for p in [3, 5, 7] {
                    let r = verify_choices(&d, p)?;
                    choices.push(json!({
                        "name": d.name(),
                        "p": p,
                        "crossings_checked": r.crossings_checked,
                        "adjacent_disagreements": r.adjacent_disagreements,
                        "all_choice_disagreements": r.all_choice_disagreements,
                    }));
                }
            }
            let cocycle_ok = cocycle.iter().all(|r| r.passed());
            let sum = |key: &str| -> u64 { choices.iter().map(|c| c[key].as_u64().unwrap()).sum() };
            let adjacent = sum("adjacent_disagreements");
            let all = sum("all_choice_disagreements");
            let ok = cocycle_ok && adjacent == 0 && all == 0;
            Ok(Outcome {
                digest: None,
                parameters: json!({ "primes": [3, 5, 7] }),
                results: json!({
                    "cocycle": cocycle,
                    "cocycle_ok": cocycle_ok,
                    "adjacent_disagreements": adjacent,
                    "all_choice_disagreements": all,
                    "choices": choices,
                }),
                summary: format!(
                    "cocycle identity {}; adjacent choices disagree {adjacent} times; all eight choices disagree {all} times",
                    if cocycle_ok { "holds" } else { "FAILS" }
                ),
                ok,
            })
        }
    }
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Parse { .. } => "parse",
        Command::Colorings { .. } => "colorings",
        Command::Invariant { .. } => "invariant",
        Command::Mincol { .. } => "mincol",
        Command::Bound { .. } => "bound",
        Command::SearchPalette { .. } => "search-palette",
        Command::VerifyWitness { .. } => "verify-witness",
        Command::FamilyKn { .. } => "family-kn",
        Command::SearchUniversal { .. } => "search-universal",
        Command::Selftest { .. } => "selftest",
    }
}

fn wants_json(cmd: &Command) -> bool {
    match cmd {
        Command::Parse { common, .. }
        | Command::Colorings { common, .. }
        | Command::Invariant { common, .. }
        | Command::Mincol { common, .. }
        | Command::Bound { common, .. }
        | Command::SearchPalette { common, .. }
        | Command::VerifyWitness { common, .. }
        | Command::FamilyKn { common, .. }
        | Command::SearchUniversal { common, .. }
        | Command::Selftest { common, .. } => common.json,
    }
}

/// Errors a user can fix by changing the input.
fn is_validation(e: &Error) -> bool {
    !matches!(e, Error::CaseOneKnot(_))
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("mincol")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(o) => {
            let report = RunReport {
                command: name(&cli.command).to_string(),
                input_digest: o.digest,
                parameters: o.parameters,
                results: o.results,
                ok: o.ok,
                timing_ms: start.elapsed().as_millis() as u64,
            };
            let text = if wants_json(&cli.command) {
                serde_json::to_string_pretty(&report).expect("report serializes")
            } else {
                o.summary
            };
            let _ = writeln!(out, "{text}");
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_validation(&e) {
                2
            } else {
                1
            }
        }
    }
}

/// Drops the `timing_ms` field so reports can be compared byte for byte.
pub fn strip_timing(report: &str) -> String {
    match serde_json::from_str::<Value>(report) {
        Ok(mut v) => {
            if let Some(o) = v.as_object_mut() {
                o.remove("timing_ms");
            }
            serde_json::to_string_pretty(&v).expect("value serializes")
        }
        Err(_) => report.to_string(),
    }
}
