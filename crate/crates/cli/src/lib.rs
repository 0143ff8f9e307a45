//! The `sturmlab` command line.
//!
//! Every subcommand is a thin adapter over the `sturmlab` library. Tabular
//! output is one row per line; `--json` prints the same rows as JSON
//! objects, one per line.

pub mod chart;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sturmlab::analysis::{
    bridge_check, equidistribution_report, estimate_within_discrepancy, monotone_diagnostics, star_discrepancy,
    verify_christoffel, verify_decomposition, verify_sturmian_permutation, verify_sturmian_word, Check,
    VerificationReport, DEFAULT_SEED,
};
use sturmlab::constructions::{
    example1_representative, slow_complexity_representative, sturmian_representative, thue_morse_representative,
    Example1Variant, NkSchedule,
};
use sturmlab::permutations::{
    canonical_estimate, detect_perm_period_bounded, find_n_extremal, greedy_monotone_chain, longest_monotone_chain,
    perm_complexity_profile, underlying_word, Direction,
};
use sturmlab::sturmian::{
    christoffel_extrema, christoffel_prefixes, enumerate_factors_exact, factorize, generate, standard_tower,
    Extremum, StandardWordTower,
};
use sturmlab::words::{complexity_profile, detect_period_bounded};
use sturmlab::{Convention, ExactReal, Pattern, Representative, SturmianSpec, Word};

use chart::ChartDocument;

pub const SEED_VAR: &str = "STURMLAB_SEED";

#[derive(Parser, Debug)]
#[command(name = "sturmlab", version, about = "Exact Sturmian words and infinite permutations")]
struct Cli {
    /// Print machine-readable records, one JSON object per line.
    #[arg(long, global = true)]
    json: bool,
    /// Write the primary output to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Binary words: Sturmian codings, factors, complexity, standard words.
    #[command(subcommand)]
    Word(WordCmd),
    /// Infinite permutations given by representatives.
    #[command(subcommand)]
    Perm(PermCmd),
    /// Discrepancy and equidistribution diagnostics.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Verification reports; exit status 1 if any check fails.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConventionArg {
    Lower,
    Upper,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Lower => Convention::Lower,
            ConventionArg::Upper => Convention::Upper,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct SlopeArg {
    /// Slope in the exact grammar, e.g. "(0+1*sqrt(2))/4".
    #[arg(long, allow_hyphen_values = true)]
    slope: String,
}

#[derive(Args, Debug, Clone)]
struct CodingArgs {
    #[command(flatten)]
    slope: SlopeArg,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    intercept: String,
    #[arg(long, value_enum, default_value = "lower")]
    convention: ConventionArg,
}

#[derive(Args, Debug, Clone)]
struct InputArg {
    /// Representative file, one exact value per line; "-" reads stdin.
    #[arg(long, default_value = "-")]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum WordCmd {
    /// Prefix of the rotation coding.
    Gen {
        #[command(flatten)]
        coding: CodingArgs,
        #[arg(long)]
        length: usize,
    },
    /// All factors of length n of any Sturmian word of the slope.
    Factors {
        #[command(flatten)]
        slope: SlopeArg,
        #[arg(long)]
        n: usize,
    },
    /// Distinct factor counts of a finite word.
    Complexity {
        /// The word itself; otherwise a coding prefix is generated.
        #[arg(long, conflicts_with_all = ["slope", "length"])]
        word: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        slope: Option<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        intercept: String,
        #[arg(long, value_enum, default_value = "lower")]
        convention: ConventionArg,
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        max_n: usize,
    },
    /// Standard words s_{-1}, s_0, ..., s_levels.
    Standard {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "quotients", required_unless_present = "quotients")]
        slope: Option<String>,
        /// Comma-separated d_1, d_2, ... instead of a slope.
        #[arg(long)]
        quotients: Option<String>,
        #[arg(long)]
        levels: usize,
    },
    /// Christoffel prefix lengths up to n_max with the extremum type.
    Christoffel {
        #[command(flatten)]
        slope: SlopeArg,
        #[arg(long)]
        n_max: usize,
    },
    /// Block factorization of a coding prefix at one tower level.
    Factorize {
        #[command(flatten)]
        slope: SlopeArg,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        level: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PermCmd {
    /// Build a representative, written one value per line.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Distinct pattern counts of a representative.
    Complexity {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        max_n: usize,
    },
    /// Letter i is 0 when value i is below value i+1.
    Underlying {
        #[command(flatten)]
        input: InputArg,
    },
    /// Point chart; bigger elements are higher.
    Chart {
        #[arg(long, conflicts_with = "pattern")]
        input: Option<PathBuf>,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, value_enum, default_value = "svg")]
        format: ChartFormat,
        /// Place points by value instead of by rank (svg only).
        #[arg(long)]
        values: bool,
        #[arg(long, default_value_t = 640.0)]
        width: f64,
        #[arg(long, default_value_t = 320.0)]
        height: f64,
        #[arg(long)]
        no_axes: bool,
    },
    /// Greedy and longest chains with steps of at most gap.
    Monotone {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        gap: usize,
        #[arg(long, value_enum, default_value = "decreasing")]
        direction: DirectionArg,
    },
    /// Positions above (below) all neighbours within radius.
    Extremal {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        radius: usize,
    },
    /// Rank-based estimates of the first count canonical values.
    Estimate {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Smallest period up to t_max with a bounded preperiod.
    Period {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        t_max: usize,
        /// Defaults to t_max.
        #[arg(long)]
        max_preperiod: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    Sturmian {
        #[command(flatten)]
        coding: CodingArgs,
        #[arg(long)]
        length: usize,
    },
    ThueMorse {
        #[arg(long)]
        length: usize,
    },
    Example1 {
        #[arg(long, value_enum, default_value = "a")]
        variant: VariantArg,
        #[arg(long)]
        length: usize,
    },
    Slow {
        /// "2^k" or a comma-separated strictly increasing list.
        #[arg(long, default_value = "2^k")]
        nk: String,
        #[arg(long)]
        length: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ChartFormat {
    Svg,
    Ascii,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    A,
    B,
}

#[derive(Subcommand, Debug)]
enum AnalyzeCmd {
    /// Exact star discrepancy of the first N values for each N.
    Discrepancy {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated prefix lengths; defaults to the whole input.
        #[arg(long)]
        schedule: Option<String>,
    },
    /// Discrepancy trend, estimate check, complexity bridge, monotone chains.
    Report {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    SturmianWord {
        #[command(flatten)]
        slope: SlopeArg,
        #[arg(long)]
        depth: usize,
    },
    SturmianPerm {
        #[command(flatten)]
        coding: CodingArgs,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        length: usize,
    },
    Decomposition {
        #[command(flatten)]
        slope: SlopeArg,
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        length: usize,
    },
    /// The default battery on the golden and sqrt(2)/4 slopes.
    All,
}

/// Failure modes of one invocation and their exit statuses.
enum Failure {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
    /// A verification check failed: exit 1, after the report is printed.
    Checks,
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Collected primary output.
struct Output {
    json: bool,
    text: String,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// One row; text mode prints the values separated by spaces.
    fn row(&mut self, fields: &[(&str, Value)]) {
        if self.json {
            let map: Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            self.line(Value::Object(map).to_string());
        } else {
            let parts: Vec<String> = fields
                .iter()
                .map(|(_, v)| match v {
                    Value::String(s) => s.clone(),
                    Value::Array(items) => {
                        items.iter().map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string)).collect::<Vec<_>>().join(",")
                    }
                    other => other.to_string(),
                })
                .collect();
            self.line(parts.join(" "));
        }
    }

    fn report(&mut self, report: &VerificationReport) {
        if self.json {
            for c in &report.checks {
                self.line(check_record(&report.title, c).to_string());
            }
        } else {
            self.text.push_str(&report.to_string());
        }
    }

    /// Raw document (chart); identical in both modes.
    fn document(&mut self, doc: &str) {
        self.text.push_str(doc);
        if !doc.ends_with('\n') {
            self.text.push('\n');
        }
    }
}

fn check_record(title: &str, c: &Check) -> Value {
    json!({
        "report": title,
        "name": c.name,
        "params": c.params,
        "status": c.status.to_string(),
        "instances": c.instances,
        "witness": c.witness,
    })
}

/// Runs one invocation and returns the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let mut out = Output { json: cli.json, text: String::new() };
    let mut diag = Vec::new();
    let outcome = dispatch(cli.command, &mut out, &mut diag);
    let _ = stderr.write_all(&diag);

    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.text),
        None => stdout.write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return 2;
    }
    match outcome {
        Ok(()) => 0,
        Err(Failure::Checks) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut Output, diag: &mut Vec<u8>) -> Outcome {
    match command {
        Command::Word(cmd) => word(cmd, out, diag),
        Command::Perm(cmd) => perm(cmd, out, diag),
        Command::Analyze(cmd) => analyze(cmd, out),
        Command::Verify(cmd) => verify(cmd, out, diag),
    }
}

/// Parses an exact real, warning on stderr when the radicand was reduced.
fn exact(text: &str, what: &str, diag: &mut Vec<u8>) -> Result<ExactReal, Failure> {
    let parsed = ExactReal::parse_reporting(text).map_err(|e| Failure::Usage(format!("--{what}: {e}")))?;
    if let Some((given, reduced)) = parsed.reduced_radicand {
        let _ = writeln!(diag, "warning: --{what}: sqrt({given}) rewritten over sqrt({reduced}); value is {}", parsed.value);
    }
    Ok(parsed.value)
}

fn coding_spec(c: &CodingArgs, diag: &mut Vec<u8>) -> Result<SturmianSpec, Failure> {
    let sigma = exact(&c.slope.slope, "slope", diag)?;
    let rho = exact(&c.intercept, "intercept", diag)?;
    Ok(SturmianSpec::new(sigma, rho, c.convention.into())?)
}

fn read_input(input: &InputArg) -> Result<Representative, Failure> {
    let text = if input.input.as_os_str() == "-" {
        io::read_to_string(io::stdin())?
    } else {
        std::fs::read_to_string(&input.input)
            .map_err(|e| Failure::Usage(format!("{}: {e}", input.input.display())))?
    };
    Ok(Representative::from_lines(&text)?)
}

fn word(cmd: WordCmd, out: &mut Output, diag: &mut Vec<u8>) -> Outcome {
    match cmd {
        WordCmd::Gen { coding, length } => {
            let spec = coding_spec(&coding, diag)?;
            out.row(&[("word", json!(generate(&spec, length).to_string()))]);
        }
        WordCmd::Factors { slope, n } => {
            let sigma = exact(&slope.slope, "slope", diag)?;
            for f in enumerate_factors_exact(&sigma, n)?.iter() {
                out.row(&[("factor", json!(f.to_string()))]);
            }
        }
        WordCmd::Complexity { word, slope, intercept, convention, length, max_n } => {
            let w: Word = match (word, slope, length) {
                (Some(w), _, _) => w.parse()?,
                (None, Some(slope), Some(length)) => {
                    let coding = CodingArgs { slope: SlopeArg { slope }, intercept, convention };
                    generate(&coding_spec(&coding, diag)?, length)
                }
                _ => return Err(Failure::Usage("give --word, or --slope with --length".into())),
            };
            for (n, count) in complexity_profile(&w, max_n)?.iter() {
                out.row(&[("n", json!(n)), ("count", json!(count))]);
            }
        }
        WordCmd::Standard { slope, quotients, levels } => {
            let tower = match (slope, quotients) {
                (Some(slope), _) => StandardWordTower::from_slope(&exact(&slope, "slope", diag)?, levels)?,
                (None, Some(q)) => {
                    let d = q
                        .split(',')
                        .map(|t| t.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("--quotients: bad entry {t:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    standard_tower(&d, levels)?
                }
                (None, None) => return Err(Failure::Usage("give --slope or --quotients".into())),
            };
            for n in -1..=levels as isize {
                let d = if n >= 1 { tower.d(n as usize).map_or(json!(null), |d| json!(d)) } else { json!(null) };
                let d_text = if d.is_null() { json!("-") } else { d.clone() };
                let s = tower.s(n).expect("level built").to_string();
                if out.json {
                    out.row(&[("level", json!(n)), ("d", d), ("length", json!(s.len())), ("word", json!(s))]);
                } else {
                    out.row(&[("level", json!(n)), ("d", d_text), ("length", json!(s.len())), ("word", json!(s))]);
                }
            }
        }
        WordCmd::Christoffel { slope, n_max } => {
            let sigma = exact(&slope.slope, "slope", diag)?;
            let extrema = christoffel_extrema(&sigma, n_max)?;
            let prefixes = christoffel_prefixes(&sigma, n_max)?;
            for ((n, kind), (_, w)) in extrema.into_iter().zip(prefixes) {
                let kind = match kind {
                    Extremum::Min => "min",
                    Extremum::Max => "max",
                    Extremum::Both => "both",
                };
                out.row(&[("length", json!(n)), ("extremum", json!(kind)), ("prefix", json!(w.to_string()))]);
            }
        }
        WordCmd::Factorize { slope, length, level } => {
            let sigma = exact(&slope.slope, "slope", diag)?;
            let spec = SturmianSpec::new(sigma.clone(), ExactReal::zero(), Convention::Lower)?;
            let w = generate(&spec, length);
            let tower = StandardWordTower::from_slope(&sigma, level)?;
            let f = factorize(&w, &tower, level)?;
            out.row(&[
                ("level", json!(level)),
                ("prefix", json!(f.prefix.to_string())),
                ("exponents", json!(f.exponents.iter().map(ToString::to_string).collect::<Vec<_>>())),
                ("residue", json!(f.residue.to_string())),
            ]);
        }
    }
    Ok(())
}

fn values_out(rep: &Representative, out: &mut Output) {
    for (i, v) in rep.values().iter().enumerate() {
        if out.json {
            out.row(&[("index", json!(i)), ("value", json!(v.to_string()))]);
        } else {
            out.line(v.to_string());
        }
    }
}

fn perm(cmd: PermCmd, out: &mut Output, diag: &mut Vec<u8>) -> Outcome {
    match cmd {
        PermCmd::Gen(g) => {
            let rep = match g {
                GenCmd::Sturmian { coding, length } => sturmian_representative(&coding_spec(&coding, diag)?, length)?,
                GenCmd::ThueMorse { length } => thue_morse_representative(length),
                GenCmd::Example1 { variant, length } => {
                    let v = match variant {
                        VariantArg::A => Example1Variant::A,
                        VariantArg::B => Example1Variant::B,
                    };
                    example1_representative(length, v)
                }
                GenCmd::Slow { nk, length } => slow_complexity_representative(&nk.parse::<NkSchedule>()?, length)?,
            };
            values_out(&rep, out);
        }
        PermCmd::Complexity { input, max_n } => {
            let rep = read_input(&input)?;
            for (n, count) in perm_complexity_profile(&rep, max_n)?.iter() {
                out.row(&[("n", json!(n)), ("count", json!(count))]);
            }
        }
        PermCmd::Underlying { input } => {
            let rep = read_input(&input)?;
            out.row(&[("word", json!(underlying_word(&rep).to_string()))]);
        }
        PermCmd::Chart { input, pattern, format, values, width, height, no_axes } => {
            let mut doc = match (input, pattern) {
                (_, Some(p)) => ChartDocument::from_pattern(&p.parse::<Pattern>()?)?,
                (input, None) => {
                    let input = InputArg { input: input.unwrap_or_else(|| PathBuf::from("-")) };
                    ChartDocument::from_representative(&read_input(&input)?, values)?
                }
            };
            doc.geometry.width = width;
            doc.geometry.height = height;
            doc.style.axes = !no_axes;
            out.document(&match format {
                ChartFormat::Svg => doc.to_svg(),
                ChartFormat::Ascii => doc.to_ascii(),
            });
        }
        PermCmd::Monotone { input, gap, direction } => {
            let rep = read_input(&input)?;
            let d = match direction {
                DirectionArg::Increasing => Direction::Increasing,
                DirectionArg::Decreasing => Direction::Decreasing,
            };
            let greedy = greedy_monotone_chain(&rep, gap, d);
            out.row(&[
                ("gap", json!(gap)),
                ("greedy_length", json!(greedy.indices.len())),
                ("greedy_monotone", json!(greedy.monotone)),
                ("longest", json!(longest_monotone_chain(&rep, gap, d))),
            ]);
        }
        PermCmd::Extremal { input, radius } => {
            let rep = read_input(&input)?;
            let e = find_n_extremal(&rep, radius);
            for (kind, idx) in [("maximal", e.maximal), ("minimal", e.minimal)] {
                let idx: Vec<String> = idx.iter().map(ToString::to_string).collect();
                out.row(&[("kind", json!(kind)), ("count", json!(idx.len())), ("indices", json!(idx))]);
            }
        }
        PermCmd::Estimate { input, count } => {
            let rep = read_input(&input)?;
            for i in 0..count.min(rep.len()) {
                let est = canonical_estimate(&rep, i)?;
                out.row(&[("index", json!(i)), ("estimate", json!(est.to_string())), ("value", json!(rep.values()[i].to_string()))]);
            }
        }
        PermCmd::Period { input, t_max, max_preperiod } => {
            let rep = read_input(&input)?;
            let cap = max_preperiod.unwrap_or(t_max);
            let perm_period = detect_perm_period_bounded(&rep, t_max, cap);
            let word_period = detect_period_bounded(&underlying_word(&rep), t_max, cap);
            for (kind, p) in [("permutation", perm_period), ("underlying", word_period)] {
                match p {
                    Some(p) => out.row(&[("kind", json!(kind)), ("period", json!(p.period)), ("preperiod", json!(p.preperiod))]),
                    None => out.row(&[("kind", json!(kind)), ("period", json!(null)), ("preperiod", json!(null))]),
                }
            }
        }
    }
    Ok(())
}

fn analyze(cmd: AnalyzeCmd, out: &mut Output) -> Outcome {
    match cmd {
        AnalyzeCmd::Discrepancy { input, schedule } => {
            let rep = read_input(&input)?;
            let schedule = match schedule {
                Some(s) => s
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("--schedule: bad entry {t:?}"))))
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![rep.len()],
            };
            for n in schedule {
                if n == 0 || n > rep.len() {
                    return Err(Failure::Usage(format!("--schedule: {n} is outside 1..={}", rep.len())));
                }
                let d = star_discrepancy(&rep.values()[..n])?;
                out.row(&[("N", json!(n)), ("discrepancy", json!(d.to_string())), ("approx", json!(format!("{:.6e}", d.to_f64())))]);
            }
        }
        AnalyzeCmd::Report { input, depth } => {
            let rep = read_input(&input)?;
            let schedule: Vec<usize> = std::iter::successors(Some(10usize), |n| n.checked_mul(10))
                .take_while(|&n| n < rep.len())
                .chain(std::iter::once(rep.len()))
                .collect();
            let mut report = equidistribution_report(&rep, &schedule)?;
            report.checks.push(estimate_within_discrepancy(&rep, depth)?);
            report.checks.push(bridge_check(&rep, depth)?);
            report.merge(monotone_diagnostics(&rep, depth.min(5)));
            out.report(&report);
            if !report.is_success() {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn seed(diag: &mut Vec<u8>) -> Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("{SEED_VAR}: not an unsigned integer: {s:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEED),
        Err(e) => {
            let _ = writeln!(diag, "warning: {SEED_VAR}: {e}; using the default seed");
            Ok(DEFAULT_SEED)
        }
    }
}

fn verify(cmd: VerifyCmd, out: &mut Output, diag: &mut Vec<u8>) -> Outcome {
    let reports = match cmd {
        VerifyCmd::SturmianWord { slope, depth } => vec![verify_sturmian_word(&exact(&slope.slope, "slope", diag)?, depth)?],
        VerifyCmd::SturmianPerm { coding, depth, length } => {
            vec![verify_sturmian_permutation(&coding_spec(&coding, diag)?, depth, length, seed(diag)?)?]
        }
        VerifyCmd::Decomposition { slope, levels, length } => {
            vec![verify_decomposition(&exact(&slope.slope, "slope", diag)?, levels, length)?]
        }
        VerifyCmd::All => {
            let seed = seed(diag)?;
            let golden = exact("(-1+1*sqrt(5))/2", "slope", diag)?;
            let root2 = exact("(0+1*sqrt(2))/4", "slope", diag)?;
            let mut all = Vec::new();
            for sigma in [&golden, &root2] {
                all.push(verify_sturmian_word(sigma, 50)?);
                all.push(verify_christoffel(sigma, 200)?);
                all.push(verify_decomposition(sigma, 6, 5000)?);
            }
            let spec = SturmianSpec::new(golden, exact("1/3", "intercept", diag)?, Convention::Lower)?;
            all.push(verify_sturmian_permutation(&spec, 100, 10_000, seed)?);
            all
        }
    };
    for report in &reports {
        out.report(report);
    }
    if reports.iter().all(VerificationReport::is_success) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}
