//! Argument parsing and the subcommand handlers.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hdx_core::cohomology::{
    dd_bound, expansion_h0, expansion_h1_exact, expansion_h1_search, h1_trivial, Cochain1, H1Mode,
};
use hdx_core::complex::SimplicialComplex;
use hdx_core::fixtures;
use hdx_core::ko::{ko_complex, ko_spectral_report, KoParams};
use hdx_core::matgroup::{check_kernel_orders, ko_group, subgroup_k, IndexedGroup};
use hdx_core::polyring::{enumerate_polys, TruncPoly};
use hdx_core::relations::{
    chamber_relation_sets, presentation_sl, presentation_unipotent, tilde_gamma_presentation, verify_in_matrices,
    Letter, Presentation,
};
use hdx_core::rootsys::{verify_propagation, Root};
use hdx_core::spectral::{local_spectral_report, second_eigenvalue, walk_matrix, SpectralReport};
use hdx_core::Rational;
use serde_json::{json, Value};

use crate::format::{load_complex, parse_lambda, write_complex, write_group_dump};
use crate::report::{opt_rational, rational, Report};
use crate::suite::{suite_result, Suite, SuiteOptions};

pub const DEFAULT_GROUP_CAP: usize = 1 << 24;
pub const DEFAULT_COCHAIN_CAP: u64 = 1 << 24;
pub const DEFAULT_RING_CAP: u64 = 1 << 20;

#[derive(Parser, Debug)]
#[command(name = "hdx", version, about = "Coset complexes, non-Abelian 1-cohomology and root-system checks")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output path; `-` is standard output.
    #[arg(long, global = true, default_value = "-")]
    pub out: String,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Worker count (recorded; the computations are single-threaded).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Arithmetic in F_p[t]/t^s.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Matrix group enumeration.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Building and inspecting complexes.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Non-Abelian first cohomology.
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// Coboundary and cosystolic expansion constants.
    #[command(subcommand)]
    Expansion(ExpansionCmd),
    /// Staged chamber propagation in the A_n root system.
    Propagate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        stages: usize,
    },
    /// Steinberg-type presentations.
    #[command(subcommand)]
    Relations(RelationsCmd),
    /// Random-walk spectra of links.
    #[command(subcommand)]
    Spectral(SpectralCmd),
    /// The acceptance battery.
    Suite {
        /// Smaller instances for the two expensive criteria.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

#[derive(Subcommand, Debug)]
pub enum RingCmd {
    /// Applies one operation; operands in text (`1+2*t`) or compact (`[1,2]@5,3`) form.
    Op {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum)]
        op: RingOp,
        a: String,
        b: Option<String>,
    },
    /// Lists every polynomial of degree at most d.
    Enum {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_RING_CAP)]
        cap: u64,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct KoArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    pub cap: usize,
}

impl KoArgs {
    fn params(&self) -> Result<KoParams> {
        Ok(KoParams::new(self.n, self.p, self.s, self.d)?)
    }

    fn json(&self) -> Value {
        json!({"n": self.n, "p": self.p, "s": self.s, "d": self.d})
    }
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Enumerates the group generated by K_0, ..., K_n; writes a group dump to --out.
    Enum(KoArgs),
    /// Enumerates one subgroup K_i.
    Subgroup {
        #[command(flatten)]
        ko: KoArgs,
        #[arg(long)]
        i: usize,
    },
    /// Checks element orders in the kernel of SL_{n+1}(F_p[t]/t^s_hi) -> SL_{n+1}(F_p[t]/t^s_lo).
    Kernel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        s_hi: usize,
        #[arg(long)]
        s_lo: usize,
        /// Enumerate the kernel exhaustively up to this size.
        #[arg(long, default_value_t = 1 << 20)]
        cap: u64,
        /// Uniform samples when the kernel is larger than the cap.
        #[arg(long, default_value_t = 2000)]
        samples: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Ko,
    Triangle,
    Sphere,
    Torus,
    S3,
}

#[derive(Subcommand, Debug)]
pub enum ComplexCmd {
    /// Builds a complex and writes it (JSON lines) to --out.
    Build {
        #[arg(long, value_enum)]
        preset: Preset,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
        cap: usize,
    },
    /// Face counts, weight sums and partiteness of a complex file.
    Stats { file: PathBuf },
    /// The link of a face, given as comma-separated vertex indices.
    Link {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        face: Vec<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Gauge,
    Brute,
}

#[derive(Subcommand, Debug)]
pub enum CohomologyCmd {
    /// Decides whether H^1(X, Lambda) is trivial.
    H1 {
        #[arg(long)]
        complex: PathBuf,
        /// zmod:m, sym:k or table:FILE.
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Gauge)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_COCHAIN_CAP)]
        cap: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum H1Method {
    Exact,
    Search,
}

#[derive(Subcommand, Debug)]
pub enum ExpansionCmd {
    /// Exact h^0 coboundary constant.
    H0 {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = DEFAULT_COCHAIN_CAP)]
        cap: u64,
    },
    /// h^1 constants, exhaustively or as a randomized upper bound.
    H1 {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = H1Method::Exact)]
        mode: H1Method,
        #[arg(long, default_value_t = DEFAULT_COCHAIN_CAP)]
        cap: u64,
        /// Cochains tried in search mode.
        #[arg(long, default_value_t = 10_000)]
        proposals: u64,
    },
    /// Cosystolic lower bound from local spectral and coboundary expansion.
    Dd {
        /// Local spectral expansion, as a rational `a/b`.
        #[arg(long, value_parser = parse_rational)]
        local_lambda: Rational,
        /// Local coboundary expansion, as a rational `a/b`.
        #[arg(long, value_parser = parse_rational)]
        beta: Rational,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RelPreset {
    Sl,
    Unip,
    Chamber,
    Prechamber,
    Tilde,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct RelArgs {
    #[arg(long, value_enum)]
    pub preset: RelPreset,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub d: usize,
}

#[derive(Subcommand, Debug)]
pub enum RelationsCmd {
    /// Emits a presentation as JSON.
    Emit(RelArgs),
    /// Evaluates every relation in SL_{n+1}(F_p[t]/t^target_s); exits 1 on violations.
    Verify {
        #[command(flatten)]
        rel: RelArgs,
        #[arg(long)]
        target_s: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpectralCmd {
    /// One link per face type of the KO complex.
    Links {
        #[arg(long, value_enum, default_value_t = Preset::Ko)]
        preset: Preset,
        #[command(flatten)]
        ko: KoArgs,
        /// Defaults to 1/(sqrt(p) - n) when that is positive, else 1.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Every link of a complex file, plus the whole complex.
    Complex {
        file: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        threshold: f64,
    },
}

/// What a handler produces: the report body, optional plain-text
/// rendering, and whether a verification failed.
struct Outcome {
    command: &'static str,
    params: Value,
    caps: Value,
    result: Value,
    text: Option<String>,
    failed: bool,
    /// Set when the handler already wrote its artifact to --out.
    artifact: bool,
}

impl Outcome {
    fn new(command: &'static str, params: Value, caps: Value, result: Value) -> Self {
        Outcome { command, params, caps, result, text: None, failed: false, artifact: false }
    }
}

/// Parses `args` and runs the command; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hdx: {e:#}");
            exit_code(&e)
        }
    }
}

/// Parameter and input errors are usage errors (2), exceeded caps are 3,
/// everything else is 1.
pub fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<hdx_core::Error>() {
        Some(hdx_core::Error::Parameter(_) | hdx_core::Error::Input(_)) => 2,
        Some(hdx_core::Error::Resource { .. }) => 3,
        _ => 1,
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let start = Instant::now();
    let outcome = dispatch(cli)?;
    if outcome.artifact && cli.out == "-" {
        return Ok(i32::from(outcome.failed));
    }
    let workers = cli.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut caps = outcome.caps;
    caps["workers"] = json!(workers);
    let mut report = Report::new(outcome.command, outcome.params, caps, cli.seed, outcome.result);
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    let body = match (cli.format, outcome.text) {
        (OutputFormat::Text, Some(t)) => t,
        (OutputFormat::Text, None) => text_lines(&report.to_json()),
        (OutputFormat::Json, _) => report.render(),
    };
    if outcome.artifact {
        // the artifact took --out, so the report goes to stdout
        std::io::stdout().write_all(body.as_bytes())?;
    } else {
        emit(&cli.out, body.as_bytes())?;
    }
    Ok(i32::from(outcome.failed))
}

fn emit(out: &str, bytes: &[u8]) -> Result<()> {
    if out == "-" {
        let mut so = std::io::stdout().lock();
        so.write_all(bytes)?;
        so.flush()?;
    } else {
        fs::write(out, bytes).with_context(|| format!("writing {out}"))?;
    }
    Ok(())
}

fn open_out(out: &str) -> Result<Box<dyn Write>> {
    Ok(if out == "-" {
        Box::new(std::io::BufWriter::new(std::io::stdout().lock()))
    } else {
        Box::new(std::io::BufWriter::new(fs::File::create(out).with_context(|| format!("creating {out}"))?))
    })
}

/// `path = value` lines for the text format.
fn text_lines(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    walk(&if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") }, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            _ => {
                out.push_str(prefix);
                out.push_str(" = ");
                out.push_str(&v.to_string());
                out.push('\n');
            }
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Ring(c) => ring(c),
        Command::Group(c) => group(c, cli),
        Command::Complex(c) => complex(c, cli),
        Command::Cohomology(CohomologyCmd::H1 { complex, lambda, mode, cap }) => {
            let x = load_complex(complex)?;
            let lam = parse_lambda(lambda)?;
            let m = match mode {
                ModeArg::Gauge => H1Mode::Gauge,
                ModeArg::Brute => H1Mode::Brute,
            };
            let r = h1_trivial(&x, &lam, m, *cap)?;
            let mode_name = if *mode == ModeArg::Gauge { "gauge" } else { "brute" };
            Ok(Outcome::new(
                "cohomology h1",
                json!({"complex": path_str(complex), "lambda": lambda, "mode": mode_name}),
                json!({"nodes": cap}),
                json!({
                    "trivial": r.trivial,
                    "classes": r.classes,
                    "witness": r.witness.as_ref().map(|w| cochain_json(&x, w)),
                }),
            ))
        }
        Command::Expansion(c) => expansion(c, cli.seed),
        Command::Propagate { n, stages } => {
            let rep = verify_propagation(*n, *stages)?;
            let stages_json: Vec<Value> = rep
                .stages
                .iter()
                .map(|s| {
                    json!({
                        "stage": s.stage,
                        "chambers": s.chambers,
                        "covered": s.covered,
                        "uncovered": s.uncovered.iter().map(|&(a, b)| json!([root_json(a), root_json(b)])).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Outcome::new(
                "propagate",
                json!({"n": n, "stages": stages}),
                json!({}),
                json!({
                    "total_pairs": rep.total_pairs,
                    "stages": stages_json,
                    "fully_covered": rep.fully_covered_at(*stages),
                    "monotonicity_violations": rep.monotonicity_violations,
                    "invariance_violations": rep.invariance_violations,
                }),
            ))
        }
        Command::Relations(c) => relations(c),
        Command::Spectral(c) => spectral(c),
        Command::Suite { quick } => {
            let suite = Suite::new(SuiteOptions { quick: *quick, seed: cli.seed });
            let results = suite.run_all();
            let mut text = String::new();
            for r in &results {
                text.push_str(&r.line());
                text.push('\n');
            }
            let mut o = Outcome::new(
                "suite",
                json!({"quick": quick}),
                json!({"cochains": crate::suite::COHOMOLOGY_CAP}),
                suite_result(&results, cli.timing),
            );
            o.failed = results.iter().any(|r| !r.pass);
            o.text = Some(text);
            Ok(o)
        }
    }
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.parse().map_err(|_| format!("{s:?} is not a rational a/b"))
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn root_json(r: Root) -> Value {
    json!([r.i, r.j])
}

fn cochain_json(x: &SimplicialComplex, phi: &Cochain1) -> Value {
    let edges = x.faces(1);
    let pairs: Vec<Value> = edges.iter().zip(&phi.values).map(|(e, v)| json!([e[0], e[1], v])).collect();
    json!(pairs)
}

fn parse_poly(text: &str, p: u32, s: usize) -> Result<TruncPoly> {
    let t = text.trim();
    let v = if t.starts_with('[') {
        let v = TruncPoly::parse_compact(t)?;
        if v.p() != p || v.s() != s {
            bail!("{t:?} is not in F_{p}[t]/t^{s}");
        }
        v
    } else {
        TruncPoly::parse_text(t, p, s)?
    };
    Ok(v)
}

fn poly_json(a: &TruncPoly) -> Value {
    json!({"text": a.to_string(), "compact": a.to_compact()})
}

fn ring(c: &RingCmd) -> Result<Outcome> {
    match c {
        RingCmd::Op { p, s, op, a, b } => {
            let x = parse_poly(a, *p, *s)?;
            let need_b = || -> Result<TruncPoly> {
                let b = b.as_deref().context("this operation needs a second operand")?;
                parse_poly(b, *p, *s)
            };
            let (name, value) = match op {
                RingOp::Add => ("add", x.add(&need_b()?)?),
                RingOp::Sub => ("sub", x.sub(&need_b()?)?),
                RingOp::Mul => ("mul", x.mul(&need_b()?)?),
                RingOp::Neg => ("neg", x.neg()),
                RingOp::Inv => ("inv", x.inverse()?),
            };
            Ok(Outcome::new(
                "ring op",
                json!({"p": p, "s": s, "op": name, "a": a, "b": b}),
                json!({}),
                json!({"value": poly_json(&value), "degree": value.deg().to_string(), "unit": value.is_unit()}),
            ))
        }
        RingCmd::Enum { p, s, d, cap } => {
            let count = (*p as u64).checked_pow(*d as u32 + 1);
            if count.is_none_or(|c| c > *cap) {
                return Err(hdx_core::Error::resource("enumerating polynomials", *cap, count.unwrap_or(u64::MAX)).into());
            }
            let v = enumerate_polys(*p, *s, *d)?;
            Ok(Outcome::new(
                "ring enum",
                json!({"p": p, "s": s, "d": d}),
                json!({"polynomials": cap}),
                json!({"count": v.len(), "polynomials": v.iter().map(TruncPoly::to_compact).collect::<Vec<_>>()}),
            ))
        }
    }
}

fn group(c: &GroupCmd, cli: &Cli) -> Result<Outcome> {
    match c {
        GroupCmd::Enum(ko) => {
            ko.params()?;
            let g = ko_group(ko.n, ko.p, ko.s, ko.d, ko.cap)?;
            let w = open_out(&cli.out)?;
            write_group_dump(&g, w)?;
            let mut o = Outcome::new(
                "group enum",
                ko.json(),
                json!({"group": ko.cap}),
                json!({"order": g.order(), "generators": g.generators().len(), "dump": cli.out}),
            );
            o.artifact = true;
            Ok(o)
        }
        GroupCmd::Subgroup { ko, i } => {
            ko.params()?;
            if *i > ko.n {
                return Err(hdx_core::Error::param(format!("subgroup index {i} must be at most n = {}", ko.n)).into());
            }
            let k = subgroup_k(ko.n, ko.p, ko.s, ko.d, *i, ko.cap)?;
            let mut params = ko.json();
            params["i"] = json!(i);
            let gens: Vec<String> = k.generators().iter().map(|&x| k.element(x).to_string()).collect();
            Ok(Outcome::new("group subgroup", params, json!({"group": ko.cap}), json!({"order": k.order(), "generators": gens})))
        }
        GroupCmd::Kernel { n, p, s_hi, s_lo, cap, samples } => {
            let rep = check_kernel_orders(*n, *p, *s_hi, *s_lo, *cap, *samples, cli.seed)?;
            let mut o = Outcome::new(
                "group kernel",
                json!({"n": n, "p": p, "s_hi": s_hi, "s_lo": s_lo}),
                json!({"exhaustive": cap, "samples": samples}),
                json!({
                    "checked": rep.checked,
                    "exhaustive": rep.exhaustive,
                    "violations": rep.violations,
                    "first_violation": rep.first_violation.as_ref().map(|(m, ord)| json!({"element": m.to_string(), "order": ord})),
                }),
            );
            o.failed = rep.violations > 0;
            Ok(o)
        }
    }
}

fn fixture_complex(preset: Preset) -> Option<SimplicialComplex> {
    match preset {
        Preset::Triangle => Some(fixtures::triangle()),
        Preset::Sphere => Some(fixtures::tetrahedron_boundary()),
        Preset::Torus => Some(fixtures::torus7()),
        Preset::S3 => Some(fixtures::s3_six_cycle().complex),
        Preset::Ko => None,
    }
}

fn complex_stats(x: &SimplicialComplex) -> Value {
    let w = x.weights();
    let partite = x.colors().is_some_and(|c| {
        x.facets().iter().all(|f| {
            let mut cs: Vec<u32> = f.iter().map(|&v| c[v as usize]).collect();
            cs.sort_unstable();
            cs.dedup();
            cs.len() == f.len()
        })
    });
    json!({
        "dim": x.dim(),
        "vertex_count": x.vertex_count(),
        "face_counts": x.face_counts(),
        "weight_sums": w.sums().into_iter().map(rational).collect::<Vec<_>>(),
        "weights_normalized": w.normalized(),
        "partite": partite,
        "connected": x.is_connected(),
    })
}

fn complex(c: &ComplexCmd, cli: &Cli) -> Result<Outcome> {
    match c {
        ComplexCmd::Build { preset, n, p, s, d, cap } => {
            let (x, params, extra) = match fixture_complex(*preset) {
                Some(x) => (x, json!({"preset": format!("{preset:?}").to_lowercase()}), json!({})),
                None => {
                    let missing = || hdx_core::Error::param("the ko preset needs --n, --p, --s and --d");
                    let ko = KoArgs {
                        n: n.ok_or_else(missing)?,
                        p: p.ok_or_else(missing)?,
                        s: s.ok_or_else(missing)?,
                        d: d.ok_or_else(missing)?,
                        cap: *cap,
                    };
                    let k = ko_complex(ko.params()?, ko.cap)?;
                    let mut params = ko.json();
                    params["preset"] = json!("ko");
                    let extra = json!({
                        "group_order": k.prediction.group_order,
                        "predicted_face_counts": k.prediction.per_dim,
                        "counts_match": k.complex.complex.face_counts().iter().map(|&c| c as u64).eq(k.prediction.per_dim.iter().copied()),
                    });
                    (k.complex.complex, params, extra)
                }
            };
            write_complex(&x, open_out(&cli.out)?)?;
            let mut result = json!({"face_counts": x.face_counts(), "vertex_count": x.vertex_count(), "file": cli.out});
            if let (Value::Object(r), Value::Object(e)) = (&mut result, extra) {
                r.extend(e);
            }
            let mut o = Outcome::new("complex build", params, json!({"group": cap}), result);
            o.artifact = true;
            Ok(o)
        }
        ComplexCmd::Stats { file } => {
            let x = load_complex(file)?;
            Ok(Outcome::new("complex stats", json!({"file": path_str(file)}), json!({}), complex_stats(&x)))
        }
        ComplexCmd::Link { file, face } => {
            let x = load_complex(file)?;
            let (link, map) = x.link(face)?;
            let mut result = complex_stats(&link);
            result["vertices"] = json!(map);
            result["lambda2"] = match walk_matrix(&link) {
                Ok(m) => json!(second_eigenvalue(&m)?),
                Err(_) => Value::Null,
            };
            Ok(Outcome::new("complex link", json!({"file": path_str(file), "face": face}), json!({}), result))
        }
    }
}

fn expansion(c: &ExpansionCmd, seed: u64) -> Result<Outcome> {
    match c {
        ExpansionCmd::H0 { complex, lambda, cap } => {
            let x = load_complex(complex)?;
            let lam = parse_lambda(lambda)?;
            let h = expansion_h0(&x, &lam, *cap)?;
            Ok(Outcome::new(
                "expansion h0",
                json!({"complex": path_str(complex), "lambda": lambda}),
                json!({"cochains": cap}),
                json!({"h0": opt_rational(h)}),
            ))
        }
        ExpansionCmd::H1 { complex, lambda, mode, cap, proposals } => {
            let x = load_complex(complex)?;
            let lam = parse_lambda(lambda)?;
            let params = json!({"complex": path_str(complex), "lambda": lambda, "mode": if *mode == H1Method::Exact { "exact" } else { "search" }});
            match mode {
                H1Method::Exact => {
                    let e = expansion_h1_exact(&x, &lam, *cap)?;
                    Ok(Outcome::new(
                        "expansion h1",
                        params,
                        json!({"cochains": cap}),
                        json!({"cobound": opt_rational(e.cobound), "cosys": opt_rational(e.cosys), "systole": opt_rational(e.systole)}),
                    ))
                }
                H1Method::Search => {
                    let b = expansion_h1_search(&x, &lam, *proposals, seed, *cap)?;
                    Ok(Outcome::new(
                        "expansion h1",
                        params,
                        json!({"cochains": cap, "proposals": proposals}),
                        json!({
                            "cobound_upper": opt_rational(b.cobound_upper),
                            "evaluated": b.evaluated,
                            "witness": b.witness.as_ref().map(|w| cochain_json(&x, w)),
                        }),
                    ))
                }
            }
        }
        ExpansionCmd::Dd { local_lambda, beta } => {
            let bound = dd_bound(*local_lambda, *beta)?;
            Ok(Outcome::new(
                "expansion dd",
                json!({"lambda": rational(*local_lambda), "beta": rational(*beta)}),
                json!({}),
                json!({"bound": bound, "positive": bound > 0.0}),
            ))
        }
    }
}

fn letter_str(l: &Letter) -> String {
    let r = &l.sym.r;
    let body = format!("x({},{};{})", l.sym.root.i, l.sym.root.j, if r.is_zero() { "0".into() } else { r.to_string() });
    if l.inverse {
        body + "^-1"
    } else {
        body
    }
}

fn presentation_for(rel: &RelArgs) -> Result<Presentation> {
    let RelArgs { preset, n, p, d } = *rel;
    Ok(match preset {
        RelPreset::Sl => presentation_sl(n, p, d)?,
        RelPreset::Unip => presentation_unipotent(n, p, d)?,
        RelPreset::Chamber => chamber_relation_sets(n, p, d)?.1,
        RelPreset::Prechamber => chamber_relation_sets(n, p, d)?.0,
        RelPreset::Tilde => tilde_gamma_presentation(n, p, d)?,
    })
}

fn rel_params(rel: &RelArgs) -> Value {
    json!({"preset": format!("{:?}", rel.preset).to_lowercase(), "n": rel.n, "p": rel.p, "d": rel.d})
}

fn presentation_json(pres: &Presentation) -> Value {
    let word = |w: &[Letter]| w.iter().map(letter_str).collect::<Vec<_>>();
    json!({
        "name": pres.name,
        "generators": pres.generators.iter().map(|g| letter_str(&Letter { sym: g.clone(), inverse: false })).collect::<Vec<_>>(),
        "relations": pres.relations.iter().map(|r| json!({
            "kind": r.kind.name(),
            "pair": [root_json(r.source_pair.0), root_json(r.source_pair.1)],
            "lhs": word(&r.lhs),
            "rhs": word(&r.rhs),
        })).collect::<Vec<_>>(),
    })
}

fn relations(c: &RelationsCmd) -> Result<Outcome> {
    match c {
        RelationsCmd::Emit(rel) => {
            let pres = presentation_for(rel)?;
            let mut o = Outcome::new("relations emit", rel_params(rel), json!({}), presentation_json(&pres));
            o.result["generator_count"] = json!(pres.generators.len());
            o.result["relation_count"] = json!(pres.relations.len());
            Ok(o)
        }
        RelationsCmd::Verify { rel, target_s } => {
            let pres = presentation_for(rel)?;
            let rep = verify_in_matrices(&pres, *target_s)?;
            let violated: Vec<Value> = rep
                .violations
                .iter()
                .take(20)
                .map(|&k| {
                    let r = &pres.relations[k];
                    json!({"index": k, "kind": r.kind.name(), "lhs": r.lhs.iter().map(letter_str).collect::<Vec<_>>(), "rhs": r.rhs.iter().map(letter_str).collect::<Vec<_>>()})
                })
                .collect();
            let mut params = rel_params(rel);
            params["target_s"] = json!(target_s);
            let mut o = Outcome::new(
                "relations verify",
                params,
                json!({}),
                json!({"checked": rep.checked, "violations": rep.violations.len(), "first_violations": violated}),
            );
            o.failed = !rep.ok();
            Ok(o)
        }
    }
}

fn spectral_json(rep: &SpectralReport) -> Value {
    json!({
        "threshold": rep.threshold,
        "max_lambda2": rep.max_lambda2,
        "pass": rep.pass,
        "links": rep.entries.iter().map(|e| json!({
            "face": e.face,
            "vertices": e.vertices,
            "edges": e.edges,
            "connected": e.connected,
            "lambda2": e.lambda2,
        })).collect::<Vec<_>>(),
    })
}

fn spectral(c: &SpectralCmd) -> Result<Outcome> {
    match c {
        SpectralCmd::Links { preset, ko, threshold } => {
            if *preset != Preset::Ko {
                bail!(hdx_core::Error::param("spectral links only supports the ko preset; use `spectral complex` for files"));
            }
            let params = ko.params()?;
            let natural = 1.0 / ((ko.p as f64).sqrt() - ko.n as f64);
            let t = threshold.unwrap_or(if natural > 0.0 { natural } else { 1.0 });
            let rep = ko_spectral_report(params, t, ko.cap)?;
            let mut p = ko.json();
            p["preset"] = json!("ko");
            Ok(Outcome::new("spectral links", p, json!({"group": ko.cap}), spectral_json(&rep)))
        }
        SpectralCmd::Complex { file, threshold } => {
            let x = load_complex(file)?;
            let rep = local_spectral_report(&x, *threshold)?;
            Ok(Outcome::new("spectral complex", json!({"file": path_str(file), "threshold": threshold}), json!({}), spectral_json(&rep)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn arguments_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&hdx_core::Error::param("x").into()), 2);
        assert_eq!(exit_code(&hdx_core::Error::resource("x", 1, 2).into()), 3);
        assert_eq!(exit_code(&hdx_core::Error::structural("x").into()), 1);
        assert_eq!(exit_code(&anyhow::anyhow!("io")), 1);
    }

    #[test]
    fn text_rendering_flattens() {
        let t = text_lines(&json!({"a": {"b": [1, 2]}, "c": [{"d": true}]}));
        assert_eq!(t, "a.b = [1,2]\nc[0].d = true\n");
    }
}
