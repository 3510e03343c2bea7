use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcoinv::characters::{char_coinv_fermionic, char_coinv_supernomial, char_rep, CharacterValue};
use qcoinv::fermionic::SiteVector;
use qcoinv::qgauss::{qbin, qbin_plus};
use qcoinv::supernomial::{qsup, LVector};
use qcoinv::verify::{run, Identity, IdentityReport, SweepConfig};
use qcoinv::verlinde::{d_vector, ElementaryPair, FusionVector};
use qcoinv::BiLaurent;

#[derive(Parser, Debug)]
#[command(name = "qcoinv", version, about = "Exact q-series computations and identity sweeps")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for sweeps (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the full report, including wall time, to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Seed for randomized sweep cases.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a single object.
    Compute {
        #[command(subcommand)]
        object: Object,
    },
    /// Run an identity-verification sweep.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Clone, Debug)]
enum Object {
    /// Gaussian binomial [n, m].
    Qbin {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Extended q-binomial [n, m]^+.
    QbinPlus {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// q-supernomial S(L, a).
    Qsup {
        /// Comma-separated entries L_1,...,L_k.
        #[arg(long = "L", value_parser = parse_list)]
        l: IntList,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Dimension vector d_{p,r} of a list of elementary pairs.
    Dvec {
        #[arg(long)]
        p: usize,
        /// Pairs "i,j;i,j;...".
        #[arg(long, value_parser = parse_pairs, allow_hyphen_values = true)]
        pairs: PairList,
    },
    /// Truncated irreducible character.
    CharRep {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        r: i64,
        /// Maximal q-degree.
        #[arg(long = "D")]
        max_deg: i64,
        /// Maximal |z-degree|.
        #[arg(long)]
        zwin: i64,
    },
    /// Coinvariant character of a site vector.
    CharCoinv {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        r: i64,
        /// Site vector "N_+,N_-;N_0,...,N_{d-1}".
        #[arg(long = "N", value_parser = parse_site, allow_hyphen_values = true)]
        n: SiteSpec,
        /// Evaluation route.
        #[arg(long, value_enum, default_value_t = Route::Fermionic)]
        route: Route,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Fermionic,
    Supernomial,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity to sweep, or `all`.
    #[arg(value_parser = parse_target)]
    identity: Target,
    /// Range of p, as "lo..hi" or a single value.
    #[arg(long, value_parser = parse_range)]
    p: Option<(i64, i64)>,
    /// Bound on N entries.
    #[arg(long)]
    nmax: Option<i64>,
    /// Half-width of index windows.
    #[arg(long)]
    range: Option<i64>,
    /// Bound on supernomial L entries.
    #[arg(long)]
    lmax: Option<i64>,
    /// Bound on |a| in supernomial sweeps.
    #[arg(long)]
    amax: Option<i64>,
    /// Number of random recurrence cases.
    #[arg(long)]
    random_cases: Option<usize>,
    /// Sweep configuration as inline JSON or a path to a JSON file.
    #[arg(long)]
    config: Option<String>,
    /// Read fusion dimensions at -r mod p.
    #[arg(long)]
    dual_dims: bool,
    /// Corrupt every left-hand side to exercise the failure path.
    #[arg(long)]
    inject_fault: bool,
}

#[derive(Clone, Debug)]
struct IntList(Vec<i64>);

#[derive(Clone, Debug)]
struct PairList(Vec<ElementaryPair>);

#[derive(Clone, Debug)]
struct SiteSpec {
    n_plus: i64,
    n_minus: i64,
    n_h: Vec<i64>,
}

#[derive(Clone, Copy, Debug)]
enum Target {
    One(Identity),
    All,
}

fn parse_list(s: &str) -> Result<IntList, String> {
    if s.trim().is_empty() {
        return Ok(IntList(Vec::new()));
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad integer {t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(IntList)
}

fn parse_pairs(s: &str) -> Result<PairList, String> {
    s.split(';')
        .map(|chunk| match parse_list(chunk)?.0.as_slice() {
            [i, j] => Ok(ElementaryPair::new(*i, *j)),
            _ => Err(format!("pair {chunk:?} must have the form i,j")),
        })
        .collect::<Result<_, _>>()
        .map(PairList)
}

fn parse_site(s: &str) -> Result<SiteSpec, String> {
    let (pm, h) = s.split_once(';').unwrap_or((s, ""));
    match parse_list(pm)?.0.as_slice() {
        [n_plus, n_minus] => Ok(SiteSpec { n_plus: *n_plus, n_minus: *n_minus, n_h: parse_list(h)?.0 }),
        _ => Err(format!("{pm:?} must have the form N_+,N_-")),
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad integer {t:?}: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok((parse(lo)?, parse(hi)?))
        }
        None => parse(s).map(|v| (v, v)),
    }
}

fn parse_target(s: &str) -> Result<Target, String> {
    if s == "all" {
        return Ok(Target::All);
    }
    s.parse::<Identity>().map(Target::One).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Counterexample,
}

impl From<qcoinv::Error> for Failure {
    fn from(e: qcoinv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn render_poly(p: &BiLaurent, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(p).expect("polynomials serialize"),
        Format::Latex => p.to_latex(),
        Format::Text => p.to_text(),
    }
}

fn render_character(c: &CharacterValue, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(c).expect("characters serialize"),
        Format::Latex => format!("q^{{{}}} z^{{{}}} \\left({}\\right)", c.q_shift, c.z_shift, c.poly.to_latex()),
        Format::Text => format!("q^({}) z^({}) * ({})", c.q_shift, c.z_shift, c.poly.to_text()),
    }
}

fn render_fusion(v: &FusionVector, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(v).expect("fusion vectors serialize"),
        Format::Latex => {
            let parts: Vec<String> = v.dims().iter().map(ToString::to_string).collect();
            format!("\\left({}\\right)", parts.join(", "))
        }
        Format::Text => v.to_string(),
    }
}

fn compute(object: Object, format: Format) -> Result<String, Failure> {
    Ok(match object {
        Object::Qbin { n, m } => render_poly(&qbin(n, m), format),
        Object::QbinPlus { n, m } => render_poly(&qbin_plus(n, m), format),
        Object::Qsup { l, a } => render_poly(&qsup(&LVector::new(l.0)?, a)?, format),
        Object::Dvec { p, pairs } => render_fusion(&d_vector(p, &pairs.0)?, format),
        Object::CharRep { p, r, max_deg, zwin } => render_character(&char_rep(p, r, max_deg, zwin)?, format),
        Object::CharCoinv { p, r, n, route } => {
            let d = n.n_h.len();
            let site = SiteVector::new(p, d, n.n_plus, n.n_minus, n.n_h)?;
            let value = match route {
                Route::Fermionic => char_coinv_fermionic(p, r, &site, d)?,
                Route::Supernomial => char_coinv_supernomial(p, r, &site)?,
            };
            render_character(&value, format)
        }
    })
}

fn base_config(identity: Identity, args: &VerifyArgs, cli: &Cli) -> Result<SweepConfig, Failure> {
    let mut config = match &args.config {
        None => SweepConfig::for_identity(identity),
        Some(src) => {
            let text = if src.trim_start().starts_with('{') {
                src.clone()
            } else {
                fs::read_to_string(src).map_err(|e| Failure::Usage(format!("cannot read config {src}: {e}")))?
            };
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid config: {e}")))?
        }
    };
    if let Some((lo, hi)) = args.p {
        config.p_min = lo;
        config.p_max = hi;
    }
    if let Some(v) = args.nmax {
        config.nmax = v;
    }
    if let Some(v) = args.range {
        config.range = v;
    }
    if let Some(v) = args.lmax {
        config.lmax = v;
    }
    if let Some(v) = args.amax {
        config.amax = v;
    }
    if let Some(v) = args.random_cases {
        config.random_cases = v;
    }
    if let Some(v) = cli.seed {
        config.seed = v;
    }
    if cli.jobs.is_some() {
        config.jobs = cli.jobs;
    }
    config.dual_dims |= args.dual_dims;
    config.inject_fault |= args.inject_fault;
    config.validate(identity)?;
    Ok(config)
}

fn deterministic_view(report: &IdentityReport) -> Value {
    json!({"identity": report.identity, "cases": report.cases, "failures": report.failures})
}

fn summary_line(report: &IdentityReport, format: Format) -> String {
    let mut line = format!(
        "{}: {} cases, {} failures",
        report.identity,
        report.cases,
        report.failures.len()
    );
    if let Some(f) = report.failures.first() {
        let (lhs, rhs) = match format {
            Format::Latex => (f.lhs.to_latex(), f.rhs.to_latex()),
            _ => (f.lhs.to_text(), f.rhs.to_text()),
        };
        line.push_str(&format!("; first counterexample {} lhs = {lhs} rhs = {rhs}", f.params));
    }
    line
}

fn verify(args: &VerifyArgs, cli: &Cli) -> Result<String, Failure> {
    let identities: Vec<Identity> = match args.identity {
        Target::One(id) => vec![id],
        Target::All => Identity::ALL.to_vec(),
    };
    let configs = identities
        .iter()
        .map(|&id| base_config(id, args, cli).map(|c| (id, c)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut reports = Vec::new();
    for (id, config) in &configs {
        reports.push(run(*id, config)?);
    }
    if let Some(path) = &cli.report {
        let doc = match args.identity {
            Target::One(_) => serde_json::to_value(&reports[0]),
            Target::All => serde_json::to_value(&reports),
        }
        .expect("reports serialize");
        let text = serde_json::to_string_pretty(&doc).expect("reports serialize");
        fs::write(path, text + "\n").map_err(|e| Failure::Usage(format!("cannot write report {}: {e}", path.display())))?;
    }
    for report in &reports {
        if let Some(f) = report.failures.first() {
            eprintln!(
                "counterexample in {}: {} lhs = {} rhs = {}",
                report.identity,
                f.params,
                f.lhs.to_text(),
                f.rhs.to_text()
            );
        }
    }
    let out = match cli.format {
        Format::Json => {
            let views: Vec<Value> = reports.iter().map(deterministic_view).collect();
            let doc = match args.identity {
                Target::One(_) => views.into_iter().next().expect("one report"),
                Target::All => Value::Array(views),
            };
            serde_json::to_string(&doc).expect("reports serialize")
        }
        format => reports.iter().map(|r| summary_line(r, format)).collect::<Vec<_>>().join("\n"),
    };
    if reports.iter().all(IdentityReport::passed) {
        Ok(out)
    } else {
        println!("{out}");
        Err(Failure::Counterexample)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Compute { object } => compute(object.clone(), cli.format),
        Command::Verify(args) => verify(args, &cli),
    };
    match result {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Counterexample) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
