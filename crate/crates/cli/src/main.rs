//! `hodge-degrees`: exact degrees of Hodge classes on spaces of cyclic
//! admissible covers.
//!
//! Exit codes: 0 ok, 2 invalid input, 3 internal cross-check mismatch,
//! 4 unsupported combination, 5 verification failure.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hodge_core::degrees::{eigen_sum, lambda1_degree, lambda1_degree_compact, lambda1e_degree};
use hodge_core::localization::{nonorbifold_report, nonorbifold_relation_at, orbifold_relation, orbifold_report, solve};
use hodge_core::tautring::{
    canonicalize, evaluate_degree_4pt, graph_formula_lambda1, graph_formula_lambda1e_question,
};
use hodge_core::verify::{self, Orderings, SuiteReport};
use hodge_core::{Error, MonodromyDatum, Rational};

use hodge_degrees::output::{write_class, write_json, write_single, write_table, Format, OutputRecord, Provenance};

#[derive(Parser)]
#[command(name = "hodge-degrees", version, about = "Exact Hodge and Hurwitz-Hodge degrees on spaces of cyclic admissible covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree of lambda_1 on a 4-pointed space.
    Lambda1 {
        #[command(flatten)]
        datum: DatumArgs,
        /// Computation path.
        #[arg(long, value_enum, default_value = "closed-form")]
        via: Provenance,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Degree of the eigenbundle class lambda_1^e on a 4-pointed space.
    Lambda1e {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, required_unless_present = "all_e", conflicts_with = "all_e")]
        e: Option<u64>,
        /// Table over e = 0..d-1 with the sum checked against lambda_1.
        #[arg(long)]
        all_e: bool,
        /// Computation path for a single e: closed-form, localization or graph-pairing.
        #[arg(long, value_enum, default_value = "closed-form")]
        via: Provenance,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Graph formula for lambda_1 as a divisor class; with --e, the 4-pointed
    /// formula for lambda_1^e.
    GraphFormula {
        #[command(flatten)]
        datum: DatumArgs,
        /// Merge each boundary symbol into the representative containing point 1.
        #[arg(long)]
        canonical: bool,
        #[arg(long)]
        e: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Localization relation with its per-locus breakdown.
    Localize {
        #[command(flatten)]
        datum: DatumArgs,
        /// Orbifold relation for lambda_1^e instead of lambda_1.
        #[arg(long)]
        e: Option<u64>,
        /// Point mapped to zero in the lambda_1 relation.
        #[arg(long, default_value_t = 4, conflicts_with = "e")]
        point: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive verification suites.
    Verify(VerifyArgs),
    /// Cover genus, ramification, dimension and eigenbundle ranks.
    Info {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct DatumArgs {
    /// Group order.
    #[arg(long)]
    d: u64,
    /// Comma-separated monodromies, reduced mod d.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    m: Vec<i64>,
}

#[derive(Args)]
struct FormatArgs {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identity,
    Consistency,
    Prime,
    Localization,
    Graph,
    Question,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Largest group order swept (largest prime for the prime suite).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    dmax: u64,
    /// Largest number of points, graph suite only.
    #[arg(long, value_parser = clap::value_parser!(u64).range(4..=12))]
    nmax: Option<u64>,
    /// Worker threads.
    #[arg(long, env = "HODGE_DEGREES_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Visit every labeling instead of one sorted representative per multiset.
    #[arg(long)]
    all_orderings: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    CrossCheck(String),
    Unsupported(String),
    Verification,
    Io(io::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::CrossCheck(_) => 3,
            Failure::Unsupported(_) => 4,
            Failure::Verification => 5,
            Failure::Io(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Unsupported(_) => Failure::Unsupported(err.to_string()),
            Error::CrossCheck(_) | Error::Integrality(_) | Error::Degenerate { .. } => {
                Failure::CrossCheck(err.to_string())
            }
            _ => Failure::Invalid(err.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::Io(err)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Invalid(msg) | Failure::CrossCheck(msg) | Failure::Unsupported(msg) => {
                    eprintln!("error: {msg}")
                }
                Failure::Verification => {}
                Failure::Io(err) => eprintln!("error: {err}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Lambda1 { datum, via, format } => lambda1(&datum.parse()?, via, Format::from_flags(format.json, format.csv), out),
        Command::Lambda1e { datum, e, all_e, via, format } => {
            let x = datum.parse()?;
            let format = Format::from_flags(format.json, format.csv);
            match e {
                Some(e) if !all_e => lambda1e(&x, e, via, format, out),
                _ if via != Provenance::ClosedForm => {
                    Err(Failure::Unsupported("--all-e tabulates closed-form values; drop --via".into()))
                }
                _ => lambda1e_table(&x, format, out),
            }
        }
        Command::GraphFormula { datum, canonical, e, json } => graph_formula(&datum.parse()?, canonical, e, json, out),
        Command::Localize { datum, e, point, json } => localize(&datum.parse()?, e, point, json, out),
        Command::Verify(args) => run_verify(&args, out),
        Command::Info { datum, json } => info(&datum.parse()?, json, out),
    }
}

impl DatumArgs {
    fn parse(&self) -> Result<MonodromyDatum, Failure> {
        if self.d == 0 {
            return Err(Error::ZeroDegree.into());
        }
        let d = i128::from(self.d);
        if self.m.iter().any(|&x| !(0..d).contains(&i128::from(x))) {
            let reduced: Vec<String> = self.m.iter().map(|&x| i128::from(x).rem_euclid(d).to_string()).collect();
            eprintln!("warning: monodromies reduced mod {} to {}", self.d, reduced.join(","));
        }
        Ok(MonodromyDatum::new(self.d, &self.m)?)
    }
}

fn require_four_points(x: &MonodromyDatum) -> Outcome {
    if x.n() != 4 {
        return Err(Failure::Invalid(format!("expected 4 monodromies, got {}", x.n())));
    }
    Ok(())
}

fn warn_if_disconnected(x: &MonodromyDatum) {
    if !x.is_connected() {
        eprintln!("warning: {x} is disconnected (gcd {}); the formula is applied as plain arithmetic", x.gcd());
    }
}

fn lambda1(x: &MonodromyDatum, via: Provenance, format: Format, out: &mut impl Write) -> Outcome {
    require_four_points(x)?;
    let closed: Rational = lambda1_degree(x)?;
    let compact: Rational = lambda1_degree_compact(x)?;
    if closed != compact {
        return Err(Failure::CrossCheck(format!("lambda_1 on {x}: power-set form {closed} != half-size form {compact}")));
    }
    let value = match via {
        Provenance::ClosedForm => {
            warn_if_disconnected(x);
            closed.clone()
        }
        Provenance::EigenSum => eigen_sum(x)?,
        Provenance::Localization => solve(&nonorbifold_relation_at::<Rational>(x, 4)?)?,
        Provenance::GraphPairing => {
            warn_if_disconnected(x);
            evaluate_degree_4pt(&graph_formula_lambda1::<Rational>(x)?)?
        }
    };
    if value != closed {
        return Err(Failure::CrossCheck(format!("lambda_1 on {x}: {via:?} gives {value}, closed form {closed}")));
    }
    write_single(out, format, &OutputRecord::new(x, None, "lambda_1", &value, via))?;
    Ok(())
}

fn lambda1e(x: &MonodromyDatum, e: u64, via: Provenance, format: Format, out: &mut impl Write) -> Outcome {
    require_four_points(x)?;
    let closed: Rational = lambda1e_degree(x, e)?;
    let value = match via {
        Provenance::ClosedForm => closed.clone(),
        Provenance::Localization => solve(&orbifold_relation::<Rational>(x, e)?)?,
        Provenance::GraphPairing => evaluate_degree_4pt(&graph_formula_lambda1e_question::<Rational>(x, e)?)?,
        Provenance::EigenSum => {
            return Err(Failure::Unsupported("the eigen-sum path computes lambda_1, not a single lambda_1^e".into()))
        }
    };
    if value != closed {
        return Err(Failure::CrossCheck(format!("lambda_1^{e} on {x}: {via:?} gives {value}, closed form {closed}")));
    }
    write_single(out, format, &OutputRecord::new(x, Some(e), "lambda_1^e", &value, via))?;
    Ok(())
}

fn lambda1e_table(x: &MonodromyDatum, format: Format, out: &mut impl Write) -> Outcome {
    require_four_points(x)?;
    let mut records = Vec::new();
    let mut sum = Rational::from_integer(0.into());
    for e in 0..x.d() {
        let v: Rational = lambda1e_degree(x, e)?;
        records.push(OutputRecord::new(x, Some(e), "lambda_1^e", &v, Provenance::ClosedForm));
        sum += v;
    }
    let lambda: Rational = lambda1_degree(x)?;
    if sum != lambda {
        return Err(Failure::CrossCheck(format!("on {x}: sum of lambda_1^e = {sum}, lambda_1 = {lambda}")));
    }
    records.push(OutputRecord::new(x, None, "sum", &sum, Provenance::EigenSum));
    records.push(OutputRecord::new(x, None, "lambda_1", &lambda, Provenance::ClosedForm));
    write_table(out, format, &records)?;
    Ok(())
}

fn graph_formula(x: &MonodromyDatum, canonical: bool, e: Option<u64>, json: bool, out: &mut impl Write) -> Outcome {
    if x.n() < 4 {
        return Err(Failure::Unsupported(format!("graph formulas need at least 4 points, got {}", x.n())));
    }
    let class = match e {
        Some(_) if x.n() != 4 => {
            return Err(Failure::Unsupported(format!("--e needs 4 points, got {}", x.n())));
        }
        Some(e) => {
            x.require_connected()?;
            graph_formula_lambda1e_question::<Rational>(x, e)?
        }
        None => {
            warn_if_disconnected(x);
            graph_formula_lambda1::<Rational>(x)?
        }
    };
    let class = if canonical { canonicalize(&class) } else { class };
    if json {
        writeln!(out, "{}", class.to_json())?;
    } else {
        write_class(out, &class)?;
    }
    Ok(())
}

fn localize(x: &MonodromyDatum, e: Option<u64>, point: usize, json: bool, out: &mut impl Write) -> Outcome {
    require_four_points(x)?;
    let report = match e {
        Some(e) => orbifold_report::<Rational>(x, e)?,
        None => nonorbifold_report::<Rational>(x, point)?,
    };
    if json {
        write_json(out, &report)?;
    } else {
        for c in &report.contributions {
            let label: Vec<String> = c.label.iter().map(usize::to_string).collect();
            writeln!(out, "Gamma_{{{}}}  alpha {}  beta {}", label.join(","), c.alpha, c.beta)?;
        }
        writeln!(out, "relation  {} L + {} = 0", report.alpha, report.beta)?;
        writeln!(out, "solved  {}", report.solved)?;
        writeln!(out, "closed form  {}", report.closed_form)?;
    }
    if !report.agrees {
        return Err(Failure::CrossCheck(format!(
            "localization on {x} gives {}, closed form {}",
            report.solved, report.closed_form
        )));
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs, out: &mut impl Write) -> Outcome {
    if args.nmax.is_some() && args.suite != Suite::Graph {
        return Err(Failure::Unsupported("--nmax applies to the graph suite only".into()));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        pool = pool.num_threads(jobs as usize);
    }
    let pool = pool.build().map_err(|e| Failure::Invalid(e.to_string()))?;
    let orderings = if args.all_orderings { Orderings::All } else { Orderings::Sorted };
    let dmax = args.dmax;
    let report: SuiteReport = pool.install(|| match args.suite {
        Suite::Identity => verify::eigen_sum_identity(dmax, orderings),
        Suite::Consistency => verify::lambda1e_consistency(dmax, orderings),
        Suite::Prime => verify::prime_table(dmax, orderings),
        Suite::Localization => verify::localization(dmax, orderings),
        Suite::Graph => verify::graph_formula(dmax, args.nmax.unwrap_or(7) as usize, orderings),
        Suite::Question => verify::question_formula(dmax, orderings),
    });
    if args.json {
        write_json(out, &report)?;
    } else {
        for f in &report.failures {
            let tag = if f.geometric_caveat { " [disconnected induced datum]" } else { "" };
            writeln!(out, "FAIL {}{tag}: {}", f.datum, f.detail)?;
        }
        writeln!(
            out,
            "{}: {} data, {} passed, {} failed",
            report.suite,
            report.data,
            report.checked - report.failures.len(),
            report.failures.len()
        )?;
        if report.caveats > 0 {
            writeln!(out, "{} comparisons on disconnected induced data", report.caveats)?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(serde::Serialize)]
struct InfoRecord {
    d: u64,
    m: Vec<u64>,
    connected: bool,
    gcd: u64,
    genus: i64,
    q: Vec<u64>,
    r: Vec<u64>,
    dimension: usize,
    ranks: Vec<u64>,
}

fn info(x: &MonodromyDatum, json: bool, out: &mut impl Write) -> Outcome {
    let inv = x.cover_invariants();
    let ranks = (0..x.d()).map(|e| x.rank_eigenbundle(e)).collect::<Result<Vec<_>, _>>()?;
    let record = InfoRecord {
        d: x.d(),
        m: x.m().to_vec(),
        connected: x.is_connected(),
        gcd: x.gcd(),
        genus: inv.genus,
        q: inv.q,
        r: inv.r,
        dimension: x.dimension(),
        ranks,
    };
    if json {
        write_json(out, &record)?;
        return Ok(());
    }
    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    writeln!(out, "d          {}", record.d)?;
    writeln!(out, "m          {}", list(&record.m))?;
    writeln!(out, "connected  {} (gcd {})", record.connected, record.gcd)?;
    writeln!(out, "genus      {}", record.genus)?;
    writeln!(out, "q          {}", list(&record.q))?;
    writeln!(out, "r          {}", list(&record.r))?;
    writeln!(out, "dimension  {}", record.dimension)?;
    writeln!(out, "ranks      {}", list(&record.ranks))?;
    Ok(())
}
