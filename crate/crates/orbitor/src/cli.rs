//! Command-line front end: parses one subcommand, reads JSON input from a
//! file, stdin, or an inline argument, dispatches to the analyses, and
//! renders the report as text or JSON.
//!
//! Exit codes: 0 when the requested condition is certified (or holds),
//! 1 when it is inconclusive (or fails) — the full report is still printed —
//! and 2 for malformed input or usage errors.

use crate::charpair::{face_name, CharacteristicPair, PairInput};
use crate::complexes::{ComplexInput, FaceComplex};
use crate::linalg::{Int, IntMatrix, IntVector};
use crate::numio::JsonInt;
use crate::presentation::{emit_presentation, PresentationError};
use crate::qcw::analyze_family;
use crate::report::BssStatus;
use crate::retraction::{analyze, annotate_orders, enumerate_retractions, AnalyzeOptions};
use crate::wgrass::WeightedGrassmannian;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read as _;

#[derive(Parser)]
#[command(
    name = "orbitor",
    version,
    about = "Certifies p-torsion freeness of orbifold cohomology from combinatorial data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    /// Exit by the per-prime retraction criterion.
    Theorem,
    /// Exit by the stricter all-stages gcd condition.
    Bss,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a characteristic pair for p-torsion in cohomology
    AnalyzeToric {
        /// JSON file with the pair; '-' reads stdin
        #[arg(long)]
        input: Option<String>,
        /// Inline JSON instead of a file
        #[arg(long)]
        inline: Option<String>,
        /// Restrict the analysis to these primes (repeatable)
        #[arg(long = "prime")]
        primes: Vec<u64>,
        /// Which condition decides the exit code
        #[arg(long, value_enum, default_value = "theorem")]
        check: Check,
        /// Cap on search nodes per prime (env: ORBITOR_NODE_BUDGET)
        #[arg(long)]
        node_budget: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Also print the induced pair on the face with exactly these
        /// facet labels, comma-separated
        #[arg(long)]
        face: Option<String>,
        /// Basis hint for the induced pair: rows separated by ';',
        /// entries by ',', e.g. "1,0,0;2,1,0;0,0,1"
        #[arg(long)]
        basis_hint: Option<String>,
    },
    /// List retraction sequences of a complex or pair
    Retract {
        /// JSON file with a complex or a pair; '-' reads stdin
        #[arg(long)]
        input: Option<String>,
        /// Inline JSON instead of a file
        #[arg(long)]
        inline: Option<String>,
        /// Stop after this many sequences
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Analyze a q-CW building sequence or a family of them
    Qcw {
        /// JSON file with the cells; '-' reads stdin
        #[arg(long)]
        input: Option<String>,
        /// Inline JSON instead of a file
        #[arg(long)]
        inline: Option<String>,
        /// Analyze these primes (repeatable); without it, only the
        /// all-primes summary decides the exit code
        #[arg(long = "prime")]
        primes: Vec<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Torsion report for a weighted Grassmannian wGr(d, n)
    Grassmann {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Weights, comma-separated; defaults to all zeros
        #[arg(long, value_delimiter = ',')]
        w: Vec<i64>,
        #[arg(long, default_value_t = 1)]
        r: i64,
        /// Analyze these primes (repeatable)
        #[arg(long = "prime")]
        primes: Vec<u64>,
        /// Write the Young-lattice Hasse diagram (DOT) to this file
        #[arg(long)]
        dot: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Print the cohomology presentation of a certified pair
    Present {
        /// JSON file with the pair; '-' reads stdin
        #[arg(long)]
        input: Option<String>,
        /// Inline JSON instead of a file
        #[arg(long)]
        inline: Option<String>,
        /// Cap on search nodes per prime (env: ORBITOR_NODE_BUDGET)
        #[arg(long)]
        node_budget: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

/// Result of one invocation; the binary prints both streams and exits with
/// the code.
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_from_args<I, S>(args: I) -> RunOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => RunOutput {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => RunOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match execute(cli.command) {
        Ok((code, stdout)) => RunOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(message) => RunOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        },
    }
}

fn read_payload(input: &Option<String>, inline: &Option<String>) -> Result<String, String> {
    match (input, inline) {
        (Some(_), Some(_)) => Err("give either --input or --inline, not both".to_string()),
        (None, None) => {
            Err("an input is required: --input FILE ('-' for stdin) or --inline JSON".to_string())
        }
        (Some(path), None) if path == "-" => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(buf)
        }
        (Some(path), None) => {
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
        }
        (None, Some(text)) => Ok(text.clone()),
    }
}

fn node_budget_setting(flag: Option<u64>) -> Result<Option<u64>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("ORBITOR_NODE_BUDGET") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| format!("ORBITOR_NODE_BUDGET must be a nonnegative integer, got {text:?}")),
        Err(_) => Ok(None),
    }
}

fn parse_pair(payload: &str) -> Result<CharacteristicPair, String> {
    let input: PairInput =
        serde_json::from_str(payload).map_err(|e| format!("invalid pair JSON: {e}"))?;
    input.build().map_err(|e| e.to_string())
}

fn parse_matrix(text: &str) -> Result<IntMatrix, String> {
    let rows: Vec<IntVector> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|entry| {
                    entry
                        .trim()
                        .parse::<Int>()
                        .map_err(|_| format!("bad matrix entry {entry:?}"))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(IntVector::new)
        })
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map(IntVector::len).unwrap_or(0);
    if cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err("basis hint rows must be nonempty and of equal length".to_string());
    }
    Ok(IntMatrix::from_rows(rows))
}

/// Induced characteristic data on one face, in report form.
#[derive(Serialize)]
pub struct InducedSection {
    face: String,
    target_rank: usize,
    lambda: BTreeMap<String, Vec<JsonInt>>,
    orders: BTreeMap<String, JsonInt>,
}

/// Computes the induced pair on the face with exactly the comma-separated
/// facet labels, optionally with a basis hint in `"1,0;0,1"` form.
pub fn induced_section(
    pair: &CharacteristicPair,
    face_csv: &str,
    hint_text: Option<&str>,
) -> Result<InducedSection, String> {
    let labels: Vec<&str> = face_csv
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let complex = pair.complex();
    let face = *complex
        .faces_by_facet_labels(&labels)
        .first()
        .ok_or_else(|| format!("no face with facet set {{{face_csv}}}"))?;
    let hint = hint_text.map(parse_matrix).transpose()?;
    let induced = pair
        .induced(face, hint.as_ref())
        .map_err(|e| e.to_string())?;
    let lambda = induced
        .lambda
        .iter()
        .map(|(g, vector)| {
            (
                complex.facet_label(induced.source_facet[g]).to_string(),
                vector.iter().cloned().map(JsonInt).collect(),
            )
        })
        .collect();
    let orders = pair
        .corner_orders(face)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|(v, g)| (complex.vertex_name(v).to_string(), JsonInt(g)))
        .collect();
    Ok(InducedSection {
        face: face_name(complex, face),
        target_rank: induced.target_rank,
        lambda,
        orders,
    })
}

fn render_induced(section: &InducedSection) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "induced pair on {} (rank {}):",
        section.face, section.target_rank
    );
    for (label, vector) in &section.lambda {
        let entries: Vec<String> = vector.iter().map(JsonInt::to_string).collect();
        let _ = writeln!(out, "  lambda[{label}] = ({})", entries.join(", "));
    }
    for (vertex, g) in &section.orders {
        let _ = writeln!(out, "  g({vertex}) = {g}");
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SequenceRecord {
    vertices: Vec<String>,
    face_dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orders: Option<Vec<JsonInt>>,
}

#[derive(Serialize)]
struct Refusal {
    refused: bool,
    reason: String,
    inconclusive_primes: Vec<u64>,
}

fn execute(command: Command) -> Result<(i32, String), String> {
    match command {
        Command::AnalyzeToric {
            input,
            inline,
            primes,
            check,
            node_budget,
            format,
            face,
            basis_hint,
        } => {
            let pair = parse_pair(&read_payload(&input, &inline)?)?;
            let options = AnalyzeOptions {
                primes: if primes.is_empty() {
                    None
                } else {
                    Some(primes)
                },
                node_budget: node_budget_setting(node_budget)?,
            };
            let report = analyze(&pair, &options).map_err(|e| e.to_string())?;
            let induced = face
                .as_deref()
                .map(|csv| induced_section(&pair, csv, basis_hint.as_deref()))
                .transpose()?;
            let certified = match check {
                Check::Theorem => report.fully_certified(),
                Check::Bss => matches!(report.bss, BssStatus::Holds),
            };
            let out = match format {
                OutputFormat::Json => match &induced {
                    Some(section) => to_json(&serde_json::json!({
                        "report": report,
                        "induced": section,
                    }))?,
                    None => to_json(&report)?,
                },
                OutputFormat::Text => {
                    let mut text = report.render_text();
                    if let Some(section) = &induced {
                        text.push_str(&render_induced(section));
                    }
                    text
                }
            };
            Ok((if certified { 0 } else { 1 }, out))
        }
        Command::Retract {
            input,
            inline,
            limit,
            format,
        } => {
            let payload = read_payload(&input, &inline)?;
            // A pair document also contains its complex; accept both.
            let (complex, pair): (FaceComplex, Option<CharacteristicPair>) =
                match serde_json::from_str::<PairInput>(&payload) {
                    Ok(pair_input) => {
                        let pair = pair_input.build().map_err(|e| e.to_string())?;
                        (pair.complex().clone(), Some(pair))
                    }
                    Err(_) => {
                        let complex_input: ComplexInput = serde_json::from_str(&payload)
                            .map_err(|e| format!("invalid complex JSON: {e}"))?;
                        (complex_input.build().map_err(|e| e.to_string())?, None)
                    }
                };
            let sequences = enumerate_retractions(&complex, limit.unwrap_or(usize::MAX));
            let records: Vec<SequenceRecord> = sequences
                .iter()
                .map(|seq| {
                    let orders = pair
                        .as_ref()
                        .map(|p| {
                            annotate_orders(p, seq)
                                .map(|os| os.into_iter().map(JsonInt).collect::<Vec<_>>())
                        })
                        .transpose()
                        .map_err(|e| e.to_string())?;
                    Ok(SequenceRecord {
                        vertices: seq
                            .steps
                            .iter()
                            .map(|s| complex.vertex_name(s.vertex).to_string())
                            .collect(),
                        face_dims: seq.face_dims(),
                        orders,
                    })
                })
                .collect::<Result<_, String>>()?;
            let out = match format {
                OutputFormat::Json => to_json(&records)?,
                OutputFormat::Text => {
                    let mut text = format!("{} retraction sequence(s)\n", records.len());
                    for (i, rec) in records.iter().enumerate() {
                        let dims: Vec<String> =
                            rec.face_dims.iter().map(usize::to_string).collect();
                        let _ = write!(
                            text,
                            "{}. {} | face dims {}",
                            i + 1,
                            rec.vertices.join(" "),
                            dims.join(" ")
                        );
                        if let Some(orders) = &rec.orders {
                            let os: Vec<String> = orders.iter().map(JsonInt::to_string).collect();
                            let _ = write!(text, " | orders {}", os.join(" "));
                        }
                        text.push('\n');
                    }
                    text
                }
            };
            Ok((if records.is_empty() { 1 } else { 0 }, out))
        }
        Command::Qcw {
            input,
            inline,
            primes,
            format,
        } => {
            let payload = read_payload(&input, &inline)?;
            let qcw_input: crate::qcw::QcwInput =
                serde_json::from_str(&payload).map_err(|e| format!("invalid q-CW JSON: {e}"))?;
            let family = qcw_input.build().map_err(|e| e.to_string())?;
            let report = analyze_family(&family, &primes).map_err(|e| e.to_string())?;
            let out = match format {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Text => report.render_text(),
            };
            Ok((if report.fully_certified() { 0 } else { 1 }, out))
        }
        Command::Grassmann {
            d,
            n,
            w,
            r,
            primes,
            dot,
            format,
        } => {
            let weights: Vec<Int> = if w.is_empty() {
                vec![Int::ZERO; n]
            } else {
                w.iter().map(|&x| Int::from(x)).collect()
            };
            let grassmannian = WeightedGrassmannian::new(d, n, weights, Int::from(r))
                .map_err(|e| e.to_string())?;
            if let Some(path) = &dot {
                std::fs::write(path, grassmannian.hasse_dot())
                    .map_err(|e| format!("cannot write {path}: {e}"))?;
            }
            let report = grassmannian.report(&primes).map_err(|e| e.to_string())?;
            let out = match format {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Text => report.render_text(),
            };
            Ok((if report.fully_certified() { 0 } else { 1 }, out))
        }
        Command::Present {
            input,
            inline,
            node_budget,
            format,
        } => {
            let pair = parse_pair(&read_payload(&input, &inline)?)?;
            let options = AnalyzeOptions {
                primes: None,
                node_budget: node_budget_setting(node_budget)?,
            };
            let report = analyze(&pair, &options).map_err(|e| e.to_string())?;
            match emit_presentation(&pair, &report) {
                Ok(data) => {
                    let out = match format {
                        OutputFormat::Json => to_json(&data)?,
                        OutputFormat::Text => data.render_text(),
                    };
                    Ok((0, out))
                }
                Err(PresentationError::NotCertified) => {
                    let refusal = Refusal {
                        refused: true,
                        reason: PresentationError::NotCertified.to_string(),
                        inconclusive_primes: report.summary.inconclusive_primes.clone(),
                    };
                    let out = match format {
                        OutputFormat::Json => to_json(&refusal)?,
                        OutputFormat::Text => format!(
                            "refused: {} (inconclusive primes: {})\n",
                            refusal.reason,
                            if refusal.inconclusive_primes.is_empty() {
                                "none".to_string()
                            } else {
                                refusal
                                    .inconclusive_primes
                                    .iter()
                                    .map(u64::to_string)
                                    .collect::<Vec<_>>()
                                    .join(", ")
                            }
                        ),
                    };
                    Ok((1, out))
                }
                Err(other) => Err(other.to_string()),
            }
        }
    }
}
