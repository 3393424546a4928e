//! Command-line front end. Every command writes JSON lines (or TSV) to the
//! given writer and returns the process exit code: 0 on success, 1 on bad
//! input, 2 when a verification fails.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::index_sets::{self, IndexEntry, Truncation};
use crate::partition::PartitionA;
use crate::pbw;
use crate::polytope::WPolytope;
use crate::quiver::{DimVector, Quiver};
use crate::rational::{fmt_q, parse_q, Q};
use crate::shuffle::{self, KernelMode, Point, ShuffleExpr};
use crate::standard_form;
use crate::weights::{self, Weight};

/// Directory searched for `<name>.json` when `--quiver` is neither a
/// built-in name nor a path.
pub const QUIVER_DIR_ENV: &str = "HALLSOD_QUIVER_DIR";

#[derive(Debug, Parser)]
#[command(name = "hallsod", version, about = "Window categories, standard forms and shuffle products, computed exactly")]
pub struct Cli {
    /// Built-in quiver name, a JSON file, or a name looked up in $HALLSOD_QUIVER_DIR
    #[arg(long, global = true, default_value = "tripled-jordan")]
    quiver: String,
    /// Output format; pbw-table defaults to tsv, everything else to json
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for probabilistic checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Args)]
struct Dims {
    /// Dimension vector, comma separated for several vertices
    #[arg(long)]
    d: String,
}

#[derive(Debug, Args)]
struct Delta {
    /// delta as a rational multiple of tau_d
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    delta: String,
}

#[derive(Debug, Args)]
struct Bounds {
    /// Keep parts with |w_i/d_i - w/d| <= bound
    #[arg(long, allow_hyphen_values = true, default_value = "4")]
    slope_bound: String,
    #[arg(long)]
    max_parts: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetKind {
    S,
    T,
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Indexing {
    /// Partitions read off standard forms
    S,
    /// Slope-decreasing partitions
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Formal,
    A2,
    Degenerate,
}

impl From<Mode> for KernelMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Formal => KernelMode::Formal,
            Mode::A2 => KernelMode::A2,
            Mode::Degenerate => KernelMode::Degenerate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Exact,
    Probabilistic,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// r-invariant of a weight and the face cocharacter through it
    RInvariant {
        #[command(flatten)]
        dims: Dims,
        /// Weight coordinates, ';' between vertex blocks
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Standard form of chi + rho + delta
    Decompose {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[command(flatten)]
        delta: Delta,
    },
    /// Dominant weights of the window of total weight w
    Windows {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
        #[command(flatten)]
        delta: Delta,
    },
    /// Enumerate one of the partition sets S, T, U, V
    IndexSets {
        #[arg(long, value_enum)]
        set: SetKind,
        #[command(flatten)]
        dims: Dims,
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
        #[command(flatten)]
        delta: Delta,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Order two summands, given as [[d1,w1],[d2,w2],...]
    Compare {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value = "s")]
        index: Indexing,
    },
    /// Window counts m(d,w) and primitive dimensions p(d,w)
    PbwTable {
        #[arg(long)]
        dmax: u32,
        #[arg(long)]
        wmax: i64,
    },
    /// Check the weight-level bijection for the tripled Jordan quiver
    VerifyBijection {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
        #[arg(long, default_value_t = 8)]
        bound: i64,
    },
    /// Shuffle algebra products and evaluation
    Shuffle {
        #[command(subcommand)]
        op: ShuffleOp,
    },
    /// Twist a partition by omega_lambda (or undo the twist)
    OmegaShift {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        inverse: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ShuffleOp {
    /// Product of two elements
    Mul {
        #[arg(long, value_enum, default_value = "a2")]
        mode: Mode,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Evaluate an element, or a product of several with '*' between quoted factors
    Eval {
        #[arg(long, value_enum, default_value = "a2")]
        mode: Mode,
        /// Factors multiplied left to right with the shuffle product
        #[arg(required = true)]
        factors: Vec<String>,
        /// z coordinates
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        q1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q2: Option<String>,
        #[arg(long = "D", allow_hyphen_values = true)]
        dpar: Option<String>,
        #[arg(long = "K", allow_hyphen_values = true)]
        kpar: Option<String>,
    },
    /// Compare two elements
    Equals {
        #[arg(long, value_enum, default_value = "a2")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "exact")]
        strategy: Strategy,
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
}

/// A failed run: bad input or a failed check.
enum Failure {
    Domain(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(Error::Io(e.to_string()))
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            2
        }
    }
}

fn line(out: &mut dyn Write, v: &impl Serialize) -> Outcome {
    let text = serde_json::to_string(v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

pub fn load_quiver(name: &str) -> Result<Quiver> {
    if let Some(q) = Quiver::builtin(name) {
        return Ok(q);
    }
    let path = Path::new(name);
    if name.ends_with(".json") || name.contains(std::path::MAIN_SEPARATOR) {
        return Quiver::from_path(path);
    }
    if let Ok(dir) = std::env::var(QUIVER_DIR_ENV) {
        let candidate = PathBuf::from(dir).join(format!("{name}.json"));
        if candidate.exists() {
            return Quiver::from_path(&candidate);
        }
    }
    Err(Error::UnknownQuiver(name.to_string()))
}

pub fn parse_dims(s: &str) -> Result<DimVector> {
    let entries = s
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad dimension {x:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let d = DimVector::new(entries);
    if d.total() == 0 {
        return Err(Error::ZeroDimension);
    }
    Ok(d)
}

/// Comma-separated coordinates with ';' between vertex blocks.
pub fn parse_weight(s: &str, d: &DimVector) -> Result<Weight> {
    let blocks: Vec<&str> = s.split(';').collect();
    if blocks.len() != d.len() {
        return Err(Error::VertexMismatch {
            expected: d.len(),
            got: blocks.len(),
        });
    }
    let mut coords = Vec::new();
    for (block, &n) in blocks.iter().zip(d.entries()) {
        let vals: Vec<Q> = if block.trim().is_empty() {
            vec![]
        } else {
            block.split(',').map(|x| parse_q(x.trim())).collect::<Result<_>>()?
        };
        if vals.len() != n as usize {
            return Err(Error::SlotMismatch {
                expected: n as usize,
                got: vals.len(),
            });
        }
        coords.extend(vals);
    }
    Ok(Weight::new(coords))
}

pub fn parse_delta(s: &str, d: &DimVector) -> Result<Weight> {
    Ok(weights::tau(d)?.scale(&parse_q(s)?))
}

pub fn parse_partition(s: &str) -> Result<PartitionA> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("partition {s:?}: {e}")))?;
    PartitionA::from_json(&v)
}

fn qs(xs: &[Q]) -> Vec<String> {
    xs.iter().map(fmt_q).collect()
}

fn weight_json(w: &Weight) -> Value {
    match w.to_ints() {
        Some(v) => json!(v),
        None => json!(qs(w.coords())),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let format = cli.format;
    let json_only = |name: &str| -> Outcome {
        if format == Some(Format::Tsv) {
            return Err(Error::Unsupported(format!("{name} has no tsv output")).into());
        }
        Ok(())
    };
    match &cli.command {
        Command::RInvariant { dims, weight } => {
            json_only("r-invariant")?;
            let quiver = load_quiver(&cli.quiver)?;
            let d = parse_dims(&dims.d)?;
            let chi = parse_weight(weight, &d)?;
            let poly = WPolytope::new(&quiver, &d)?;
            let r = poly.r_invariant(&chi)?;
            let lambda = if r > Q::from_integer(0.into()) && chi.is_dominant(&d) {
                Some(poly.face_at(&chi, &r)?.coords().to_vec())
            } else {
                None
            };
            #[derive(Serialize)]
            struct Out {
                r: String,
                lambda: Option<Vec<i64>>,
            }
            line(out, &Out { r: fmt_q(&r), lambda })
        }
        Command::Decompose { dims, weight, delta } => {
            json_only("decompose")?;
            let quiver = load_quiver(&cli.quiver)?;
            let d = parse_dims(&dims.d)?;
            let chi = parse_weight(weight, &d)?;
            let delta = parse_delta(&delta.delta, &d)?;
            let form = standard_form::decompose(&quiver, &d, &chi, &delta)?;
            line(out, &form.to_json())
        }
        Command::Windows { dims, w, delta } => {
            let quiver = load_quiver(&cli.quiver)?;
            let d = parse_dims(&dims.d)?;
            let delta = parse_delta(&delta.delta, &d)?;
            let mut ws = index_sets::window_generators(&quiver, &d, *w, &delta)?;
            ws.sort();
            for chi in ws {
                let ints = chi.to_ints().expect("integral");
                if format == Some(Format::Tsv) {
                    let cells: Vec<String> = ints.iter().map(i64::to_string).collect();
                    writeln!(out, "{}", cells.join("\t"))?;
                } else {
                    line(out, &json!({ "chi": ints }))?;
                }
            }
            Ok(())
        }
        Command::IndexSets {
            set,
            dims,
            w,
            delta,
            bounds,
        } => {
            let quiver = load_quiver(&cli.quiver)?;
            let d = parse_dims(&dims.d)?;
            let delta = parse_delta(&delta.delta, &d)?;
            let trunc = Truncation::new(parse_q(&bounds.slope_bound)?, bounds.max_parts.unwrap_or(usize::MAX))?;
            let (entries, complete) = match set {
                SetKind::S => {
                    let e = index_sets::enum_s(&quiver, &d, *w, &delta, &trunc)?;
                    (e.items, e.complete_within_bounds)
                }
                SetKind::T => {
                    let e = index_sets::enum_t(&quiver, &d, *w, &delta, &trunc)?;
                    (e.items, e.complete_within_bounds)
                }
                SetKind::V => {
                    let e = index_sets::enum_v(&d, *w, &trunc);
                    let items = e
                        .items
                        .into_iter()
                        .map(|a| {
                            let r = if d.len() == 1 {
                                standard_form::slope_to_tree(&a)?.r_sequence()
                            } else {
                                vec![]
                            };
                            Ok(IndexEntry {
                                partition: a,
                                r_sequence: r,
                                realizing_chi: None,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    (items, e.complete_within_bounds)
                }
                SetKind::U => {
                    let items = index_sets::enum_u(&d, *w)
                        .into_iter()
                        .map(|a| IndexEntry {
                            partition: a,
                            r_sequence: vec![],
                            realizing_chi: None,
                        })
                        .collect();
                    (items, true)
                }
            };
            for e in entries {
                if format == Some(Format::Tsv) {
                    writeln!(out, "{}\t{}", e.partition.to_json(), qs(&e.r_sequence).join(","))?;
                } else {
                    line(
                        out,
                        &json!({
                            "parts": e.partition.to_json(),
                            "r_sequence": qs(&e.r_sequence),
                            "realizing_chi": e.realizing_chi.as_ref().map(weight_json),
                            "complete_within_bounds": complete,
                        }),
                    )?;
                }
            }
            Ok(())
        }
        Command::Compare { a, b, index } => {
            json_only("compare")?;
            let quiver = load_quiver(&cli.quiver)?;
            let a = parse_partition(a)?;
            let b = parse_partition(b)?;
            if a.total_dims() != b.total_dims() || a.total_weight() != b.total_weight() {
                return Err(Error::TotalMismatch.into());
            }
            let (va, vb, verdict) = match index {
                Indexing::S => {
                    let va = standard_form::omega_shift(&a, &quiver)?;
                    let vb = standard_form::omega_shift(&b, &quiver)?;
                    (va, vb, index_sets::compare(&a, &b, &quiver)?)
                }
                Indexing::V => (a.clone(), b.clone(), index_sets::compare_v(&a, &b)?),
            };
            let ra = standard_form::slope_to_tree(&va)?.r_sequence();
            let rb = standard_form::slope_to_tree(&vb)?.r_sequence();
            line(
                out,
                &json!({
                    "verdict": verdict,
                    "r_sequence_a": qs(&ra),
                    "r_sequence_b": qs(&rb),
                }),
            )
        }
        Command::PbwTable { dmax, wmax } => {
            let table = pbw::primitive_dims(*dmax, *wmax)?;
            if format == Some(Format::Json) {
                for (d, w, m, p) in table.cells() {
                    line(out, &json!({ "d": d, "w": w, "m": m, "p": p }))?;
                }
                line(out, &json!({ "status": table.status().to_string() }))?;
            } else {
                write!(out, "{}", table.to_tsv())?;
            }
            match table.status() {
                pbw::PbwStatus::Ok => Ok(()),
                s => Err(Failure::Verification(s.to_string())),
            }
        }
        Command::VerifyBijection { d, w, bound } => {
            json_only("verify-bijection")?;
            if *d == 0 {
                return Err(Error::ZeroDimension.into());
            }
            let report = pbw::verify_bijection(*d, *w, *bound)?;
            let images: Vec<Value> = report
                .images
                .iter()
                .map(|(a, n)| json!({ "parts": a.to_json(), "count": n }))
                .collect();
            line(
                out,
                &json!({
                    "d": report.d,
                    "w": report.w,
                    "bound": report.bound,
                    "domain_size": report.domain_size,
                    "images": images,
                    "tuples_checked": report.tuples_checked,
                    "violations": report.violations,
                    "holds": report.holds(),
                }),
            )?;
            if report.holds() {
                Ok(())
            } else {
                Err(Failure::Verification(format!("{} violations", report.violations.len())))
            }
        }
        Command::Shuffle { op } => {
            json_only("shuffle")?;
            shuffle_command(op, cli.seed, out)
        }
        Command::OmegaShift { a, inverse } => {
            json_only("omega-shift")?;
            let quiver = load_quiver(&cli.quiver)?;
            let a = parse_partition(a)?;
            let b = if *inverse {
                standard_form::omega_unshift(&a, &quiver)?
            } else {
                standard_form::omega_shift(&a, &quiver)?
            };
            line(
                out,
                &json!({
                    "A": a.to_json(),
                    "shifted": b.to_json(),
                    "decreasing_slopes": b.has_decreasing_slopes(),
                }),
            )
        }
    }
}

fn element(s: &str, mode: KernelMode) -> Result<shuffle::ShuffleElement> {
    let e = shuffle::parse_element(s)?;
    Ok(if mode == KernelMode::A2 { e.specialize_a2() } else { e })
}

fn shuffle_command(op: &ShuffleOp, seed: u64, out: &mut dyn Write) -> Outcome {
    match op {
        ShuffleOp::Mul { mode, f, g } => {
            let mode = KernelMode::from(*mode);
            let prod = element(f, mode)?.mul(&element(g, mode)?, mode);
            line(
                out,
                &json!({
                    "degree": prod.degree(),
                    "value": prod.to_string(),
                    "symmetric": prod.is_symmetric(),
                }),
            )
        }
        ShuffleOp::Eval {
            mode,
            factors,
            z,
            q1,
            q2,
            dpar,
            kpar,
        } => {
            let mode = KernelMode::from(*mode);
            let zs: Vec<Q> = if z.trim().is_empty() {
                vec![]
            } else {
                z.split(',').map(|x| parse_q(x.trim())).collect::<Result<_>>()?
            };
            let get = |x: &Option<String>, name: &str| -> Result<Q> {
                parse_q(x.as_deref().ok_or_else(|| Error::Parse(format!("--{name} is required in this mode")))?)
            };
            let point = match mode {
                KernelMode::Formal => Point::formal(get(dpar, "D")?, get(kpar, "K")?, zs),
                _ => Point::a2(get(q1, "q1")?, get(q2, "q2")?, zs),
            };
            let mut expr: Option<ShuffleExpr> = None;
            for f in factors {
                let e = ShuffleExpr::elem(element(f, mode)?);
                expr = Some(match expr {
                    None => e,
                    Some(acc) => acc.times(e),
                });
            }
            let expr = expr.expect("at least one factor");
            let v = expr.eval(&point, mode)?;
            line(out, &json!({ "value": fmt_q(&v) }))
        }
        ShuffleOp::Equals {
            mode,
            strategy,
            points,
            f,
            g,
        } => {
            let mode = KernelMode::from(*mode);
            let (a, b) = (element(f, mode)?, element(g, mode)?);
            let equal = match strategy {
                Strategy::Exact => a.equals_exact(&b),
                Strategy::Probabilistic => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    shuffle::probably_equal(
                        &ShuffleExpr::elem(a),
                        &ShuffleExpr::elem(b),
                        mode,
                        &mut rng,
                        (*points).max(5),
                        100,
                    )?
                }
            };
            line(out, &json!({ "equal": equal }))
        }
    }
}
