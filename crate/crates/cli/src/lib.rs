//! `admrank` command-line front end.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use admrank::labels::PencilPartition;
use admrank::regions::default_epsilons;
use admrank::{
    boundary_tracks, label_set_with, min_weight_label, pencil_partition, rank_profile,
    real_rank_with, sample_labels, BinaryForm, Error, LabelOptions, LabelSet, RealRank,
    RealStructure, SampleOptions, Witness,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "admrank", version, about = "Ranks and labels of real binary forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Border, cactus, complex and admissible rank.
    Rank(FormArgs),
    /// Labels of minimal admissible decompositions.
    Labels(FormArgs),
    /// Real rank (smallest decomposition into real powers).
    Realrank(FormArgs),
    /// Sample random forms of a degree and tabulate label sets.
    Sample(SampleArgs),
    /// Two label tracks converging to a common boundary point.
    Boundary(BoundaryArgs),
    /// SVG of the λ-line partition of the rank pencil.
    PartitionSvg(FormArgs),
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value = "standard")]
    structure: StructureArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct FormArgs {
    /// `d:c0,...,cd` or `@path` with one form per line.
    input: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SampleArgs {
    degree: usize,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    bound: u64,
    #[arg(long, default_value_t = 0.01)]
    threshold: f64,
}

#[derive(Args, Debug)]
struct BoundaryArgs {
    r: usize,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    u: String,
    #[arg(long, default_value = "-2", allow_hyphen_values = true)]
    v: String,
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    w: String,
    /// Comma-separated positive rationals; defaults to 1/10, ..., 1/1000000.
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StructureArg {
    Standard,
    Fpf,
}

impl From<StructureArg> for RealStructure {
    fn from(s: StructureArg) -> Self {
        match s {
            StructureArg::Standard => RealStructure::Standard,
            StructureArg::Fpf => RealStructure::FixedPointFree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Failure with its exit code and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn domain(e: Error) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: e.to_string(),
        }
    }

    fn io(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

/// Successful output plus the exit code to report.
struct Output {
    text: String,
    code: i32,
    warnings: Vec<String>,
}

impl Output {
    fn new(text: String, code: i32) -> Self {
        Output {
            text,
            code,
            warnings: Vec::new(),
        }
    }

    /// Warn about every label set found by sampling rather than a full partition.
    fn warn_sampled(mut self, values: &[Value]) -> Self {
        for v in values {
            if v["exact"] == json!(false) {
                self.warnings.push(format!(
                    "labels of {} were sampled from a system of dimension >= 3 and may be incomplete",
                    v["form"].as_str().unwrap_or("?")
                ));
            }
        }
        self
    }
}

/// Run with process arguments (program name first), writing to the given
/// streams. Returns the exit code.
pub fn run_with<O: Write, E: Write>(argv: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let (result, target) = match &cli.command {
        Command::Rank(a) => (rank_cmd(a), a.common.out.clone()),
        Command::Labels(a) => (labels_cmd(a), a.common.out.clone()),
        Command::Realrank(a) => (realrank_cmd(a), a.common.out.clone()),
        Command::Sample(a) => (sample_cmd(a), a.common.out.clone()),
        Command::Boundary(a) => (boundary_cmd(a), a.common.out.clone()),
        Command::PartitionSvg(a) => (svg_cmd(a), a.common.out.clone()),
    };
    let written = result.and_then(|o| {
        for w in &o.warnings {
            let _ = writeln!(err, "admrank: warning: {w}");
        }
        match target {
            Some(path) => fs::write(path, &o.text).map_err(Failure::io)?,
            None => out.write_all(o.text.as_bytes()).map_err(Failure::io)?,
        }
        Ok(o.code)
    });
    match written {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "admrank: {}", f.message);
            f.code
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

fn parse_form(s: &str) -> Result<BinaryForm, Failure> {
    s.parse::<BinaryForm>()
        .map_err(|e| Failure::parse(format!("{e} (input {s:?})")))
}

fn read_forms(input: &str) -> Result<(Vec<BinaryForm>, bool), Failure> {
    match input.strip_prefix('@') {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))?;
            let forms = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(parse_form)
                .collect::<Result<Vec<_>, _>>()?;
            Ok((forms, true))
        }
        None => Ok((vec![parse_form(input)?], false)),
    }
}

fn json_only(format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(Failure::parse("csv output is only available for `sample`")),
    }
}

fn emit(values: Vec<Value>, many: bool) -> String {
    let v = if many {
        Value::Array(values)
    } else {
        values.into_iter().next().expect("one form")
    };
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn witness_json(label: admrank::Label, w: &Witness) -> Value {
    let mut v = json!({
        "a": label.a,
        "b": label.b,
        "witness": w.real_part().map(|f| f.to_string()),
    });
    if let Some(im) = w.imaginary_part() {
        v["witness_imag"] = json!(im.to_string());
    }
    if let Some(l) = w.lambda() {
        v["lambda"] = json!(l.to_string());
    }
    v
}

fn label_fields(set: &LabelSet) -> Value {
    json!({
        "labels": set.labels.iter().map(|(l, w)| witness_json(*l, w)).collect::<Vec<_>>(),
        "exact": set.exact,
        "structure": set.structure,
        "key": set.key(),
        "mode": set.mode,
    })
}

fn label_opts(seed: u64) -> LabelOptions {
    LabelOptions {
        seed,
        ..LabelOptions::default()
    }
}

fn rank_json(f: &BinaryForm, structure: RealStructure, seed: u64) -> Result<Value, Failure> {
    let p = rank_profile(f).map_err(Failure::domain)?;
    let set = label_set_with(f, structure, &label_opts(seed)).map_err(Failure::domain)?;
    let mut v = json!({
        "form": f.to_string(),
        "degree": p.degree,
        "border_rank": p.border_rank,
        "cactus_rank": p.cactus_rank,
        "complex_rank": p.complex_rank,
        "admissible_rank": set.rank,
        "generic_rank": p.generic_rank,
        "rho": p.rho,
        "certificate": p.certificate,
        "scheme_label": p.scheme_label.as_ref().map(|s| json!({
            "a": s.a, "b": s.b, "parts": s.parts, "support": s.support,
        })),
    });
    merge(&mut v, label_fields(&set));
    Ok(v)
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn rank_cmd(a: &FormArgs) -> Result<Output, Failure> {
    json_only(a.common.format)?;
    let (forms, many) = read_forms(&a.input)?;
    let values = forms
        .iter()
        .map(|f| rank_json(f, a.common.structure.into(), a.common.seed))
        .collect::<Result<Vec<_>, _>>()?;
    let text = emit(values.clone(), many);
    Ok(Output::new(text, EXIT_OK).warn_sampled(&values))
}

fn labels_cmd(a: &FormArgs) -> Result<Output, Failure> {
    json_only(a.common.format)?;
    let (forms, many) = read_forms(&a.input)?;
    let structure: RealStructure = a.common.structure.into();
    let values = forms
        .iter()
        .map(|f| {
            let mut v = rank_json(f, structure, a.common.seed)?;
            let m = min_weight_label(f, structure).map_err(Failure::domain)?;
            v["min_weight_label"] = json!(m);
            Ok(v)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let text = emit(values.clone(), many);
    Ok(Output::new(text, EXIT_OK).warn_sampled(&values))
}

fn realrank_cmd(a: &FormArgs) -> Result<Output, Failure> {
    json_only(a.common.format)?;
    let (forms, many) = read_forms(&a.input)?;
    let mut code = EXIT_OK;
    let mut values = Vec::new();
    for f in &forms {
        let r = real_rank_with(f, &label_opts(a.common.seed)).map_err(Failure::domain)?;
        let v = match r {
            RealRank::Exact { value } => json!({
                "form": f.to_string(), "degree": f.degree(), "real_rank": value,
                "lo": value, "hi": value, "exact": true,
            }),
            RealRank::Undecided { lo, hi } => {
                code = EXIT_UNDECIDED;
                json!({
                    "form": f.to_string(), "degree": f.degree(), "real_rank": null,
                    "lo": lo, "hi": hi, "exact": false,
                })
            }
        };
        values.push(v);
    }
    Ok(Output::new(emit(values, many), code))
}

/// Worker cap from `ADMRANK_THREADS`.
fn thread_cap() -> Result<Option<usize>, Failure> {
    match std::env::var("ADMRANK_THREADS") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map(|n| Some(n.max(1)))
            .map_err(|_| Failure::parse(format!("ADMRANK_THREADS must be a count, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn sample_cmd(a: &SampleArgs) -> Result<Output, Failure> {
    if !(0.0..=1.0).contains(&a.threshold) {
        return Err(Failure::parse("threshold must lie in [0, 1]"));
    }
    let opts = SampleOptions {
        degree: a.degree,
        structure: a.common.structure.into(),
        n: a.n,
        seed: a.common.seed,
        coeff_bound: a.bound,
        threshold: a.threshold,
        threads: thread_cap()?,
    };
    let report = sample_labels(&opts).map_err(Failure::domain)?;
    let text = match a.common.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => {
            let mut buf = Vec::new();
            report
                .write_csv(&mut buf)
                .map_err(|e| Failure::io(std::io::Error::other(e)))?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
    };
    Ok(Output::new(text, EXIT_OK))
}

fn parse_rational(s: &str) -> Result<num_rational::BigRational, Failure> {
    // a one-coefficient constant form parses exactly like a rational
    let (_, c) = admrank::forms::parse_coefficients(&format!("0:{s}"))
        .map_err(|e| Failure::parse(format!("{e} (value {s:?})")))?;
    Ok(c[0].clone())
}

fn boundary_cmd(a: &BoundaryArgs) -> Result<Output, Failure> {
    json_only(a.common.format)?;
    let eps = match &a.eps {
        Some(s) => s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?,
        None => default_epsilons(),
    };
    let seq = boundary_tracks(
        a.r,
        &parse_rational(&a.u)?,
        &parse_rational(&a.v)?,
        &parse_rational(&a.w)?,
        &eps,
    )
    .map_err(Failure::domain)?;
    Ok(Output::new(seq.to_json() + "\n", EXIT_OK))
}

fn svg_cmd(a: &FormArgs) -> Result<Output, Failure> {
    json_only(a.common.format)?;
    let (forms, many) = read_forms(&a.input)?;
    if many && forms.len() != 1 {
        return Err(Failure::parse("partition-svg takes exactly one form"));
    }
    let partition = pencil_partition(&forms[0]).map_err(Failure::domain)?;
    Ok(Output::new(partition_svg(&forms[0], &partition), EXIT_OK))
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 120.0;
const MARGIN: f64 = 20.0;
const AXIS_Y: f64 = 60.0;
const PALETTE: [&str; 6] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948"];

/// Horizontal position of λ after compactifying the line by arctangent.
fn screen_x(lambda: f64) -> f64 {
    let t = if lambda.is_infinite() {
        lambda.signum()
    } else {
        lambda.atan() * 2.0 / PI
    };
    MARGIN + (t + 1.0) / 2.0 * (WIDTH - 2.0 * MARGIN)
}

/// The λ-line, discriminant roots as ticks, and each region colored by the
/// label of its sampled member.
pub fn partition_svg(f: &BinaryForm, p: &PencilPartition) -> String {
    let mut labels = p.labels();
    labels.sort();
    let color = |l: Option<admrank::Label>| match l {
        Some(l) => PALETTE[labels.iter().position(|x| *x == l).unwrap() % PALETTE.len()],
        None => "#999999",
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<title>pencil partition of {f}</title>"#);
    for r in &p.regions {
        let x0 = screen_x(r.lo.as_ref().map_or(f64::NEG_INFINITY, |i| i.midpoint_f64()));
        let x1 = screen_x(r.hi.as_ref().map_or(f64::INFINITY, |i| i.midpoint_f64()));
        let text = r.label.map_or("not square-free".to_string(), |l| l.to_string());
        let _ = writeln!(
            s,
            r#"<rect class="region" x="{x0:.2}" y="{:.2}" width="{:.2}" height="16" fill="{}"><title>λ={} member {}</title></rect>"#,
            AXIS_Y - 8.0,
            (x1 - x0).max(0.0),
            color(r.label),
            r.lambda,
            r.member
        );
        let _ = writeln!(
            s,
            r#"<text class="label" x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{text}</text>"#,
            (x0 + x1) / 2.0,
            AXIS_Y - 14.0
        );
    }
    for root in &p.pencil.roots {
        let x = screen_x(root.midpoint_f64());
        let _ = writeln!(
            s,
            r#"<line class="tick" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            AXIS_Y - 12.0,
            AXIS_Y + 12.0
        );
    }
    let inf = &p.at_infinity;
    let _ = writeln!(
        s,
        r#"<text class="infinity" x="{:.2}" y="{:.2}" font-size="10">λ=∞: {} ({})</text>"#,
        MARGIN,
        HEIGHT - 10.0,
        inf.label.map_or("not square-free".to_string(), |l| l.to_string()),
        inf.member
    );
    s.push_str("</svg>\n");
    s
}
