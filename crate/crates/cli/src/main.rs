mod selftest;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mbar_core::genus0::{c1, ch0};
use mbar_core::graphs::{enumerate_stable, symbolic_weights, tree_oracle_equivariant, wick_sum};
use mbar_core::io::{load_table, render, table_to_series, Basis, Format};
use mbar_core::pipeline::{b0_closed, b1_closed, b2_closed, ch_direct, InputCharacteristics};
use mbar_core::algebra::parse_rational;
use mbar_core::{BigRat, Partition, SymSeries};

#[derive(Parser)]
#[command(name = "mbar", version, about = "Equivariant point counts of moduli of stable curves in genus ≤ 2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a genus-0 series as a table of fixed counts.
    Genus0 {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = What::Ch0)]
        what: What,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compute the compactified characteristic b_g from the open ones.
    ComputeB {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=2))]
        genus: u32,
        #[arg(long)]
        degree: u32,
        /// Genus-1 table (JSON); zero if omitted.
        #[arg(long)]
        a1: Option<PathBuf>,
        /// Genus-2 table (JSON); zero if omitted.
        #[arg(long)]
        a2: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(Oracle),
    /// Run the invariant checks at a given degree.
    Selftest {
        #[arg(long, default_value_t = 5)]
        degree: u32,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Fixed count on M̄_{0,n} of σ composed with Frobenius, summed over trees.
    Trees {
        #[arg(long)]
        n: u32,
        /// Cycle type of σ, e.g. "2,1,1"; identity if omitted.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Stable graphs of type (g, n) and their weighted sum over 1/|Aut|.
    Graphs {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        n: u32,
        /// JSON object {"g,n": "rational", ...}; symbolic weights if omitted.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long, value_enum, default_value_t = BasisArg::Powersum)]
    basis: BasisArg,
    /// Evaluate counts at this value of q (integer or a/b).
    #[arg(long)]
    eval_q: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Ch0,
    C1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Direct,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Powersum,
    Schur,
}

enum Failure {
    Invalid(String),
    Inconsistent(String),
}

impl From<mbar_core::Error> for Failure {
    fn from(e: mbar_core::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

impl OutputArgs {
    fn emit(&self, f: &SymSeries, caption: &str) -> Outcome {
        let format = match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        };
        let basis = match self.basis {
            BasisArg::Powersum => Basis::PowerSum,
            BasisArg::Schur => Basis::Schur,
        };
        let q = self.eval_q.as_deref().map(parse_rational).transpose()?;
        print!("{}", render(f, caption, basis, format, q.as_ref())?);
        Ok(())
    }

    fn is_text(&self) -> bool {
        matches!(self.format, FormatArg::Text)
    }
}

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    let parts: Result<Vec<u32>, _> =
        s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(str::parse).collect();
    match parts {
        Ok(p) if p.iter().all(|&x| x > 0) => Ok(Partition::new(p)),
        _ => Err(Failure::Invalid(format!("not a partition: {s:?}"))),
    }
}

fn load_input(path: Option<&Path>, genus: u32, bound: u32) -> Result<SymSeries, Failure> {
    let Some(path) = path else {
        return Ok(SymSeries::zero(bound));
    };
    let t = load_table(path)?;
    if t.genus != genus {
        return Err(Failure::Invalid(format!("{} holds genus {}, expected {genus}", path.display(), t.genus)));
    }
    table_to_series(&t, bound).map_err(|e| Failure::Invalid(format!("{}: {e} (need data through n = {bound})", path.display())))
}

fn genus0(degree: u32, what: What, out: &OutputArgs) -> Outcome {
    match what {
        What::Ch0 => out.emit(&ch0(degree), "ch0"),
        What::C1 => out.emit(&c1(degree), "c1"),
    }
}

fn compute_b(genus: u32, d: u32, a1: Option<&Path>, a2: Option<&Path>, method: Method, out: &OutputArgs) -> Outcome {
    let mut missing = Vec::new();
    if genus >= 1 && a1.is_none() {
        missing.push("--a1");
    }
    if genus == 2 && a2.is_none() {
        missing.push("--a2");
    }
    if !missing.is_empty() {
        let banner = format!(
            "*** BOUNDARY-ONLY: {} not given, the corresponding open characteristics are taken as zero ***",
            missing.join(" and ")
        );
        if out.is_text() {
            println!("{banner}");
        } else {
            eprintln!("{banner}");
        }
    }
    let inputs = InputCharacteristics::new(
        ch0(d + 4),
        if genus >= 1 { load_input(a1, 1, d + 2)? } else { SymSeries::zero(d + 2) },
        if genus == 2 { load_input(a2, 2, d)? } else { SymSeries::zero(d) },
    )?;
    let closed = || -> mbar_core::Result<SymSeries> {
        match genus {
            0 => b0_closed(&inputs.a0, d),
            1 => b1_closed(&inputs.a0, &inputs.a1, d),
            _ => b2_closed(&inputs.a0, &inputs.a1, &inputs.a2, d),
        }
    };
    let caption = format!("b{genus}");
    match method {
        Method::Closed => out.emit(&closed()?, &caption),
        Method::Direct => out.emit(&ch_direct(&inputs, genus, d)?, &caption),
        Method::Both => {
            let c = closed()?;
            let diff = c.sub(&ch_direct(&inputs, genus, d)?).truncated(d);
            if !diff.is_zero() {
                return Err(Failure::Inconsistent(format!("closed and direct paths differ by {diff}")));
            }
            out.emit(&c, &caption)?;
            let note = format!("paths agree: closed - direct = 0 through degree {d}");
            if out.is_text() {
                println!("{note}");
            } else {
                eprintln!("{note}");
            }
            Ok(())
        }
    }
}

fn oracle_trees(n: u32, sigma: Option<&str>) -> Outcome {
    let sigma = match sigma {
        Some(s) => parse_partition(s)?,
        None => Partition::new(vec![1; n as usize]),
    };
    println!("{}", tree_oracle_equivariant(n, &sigma)?);
    Ok(())
}

fn load_weights(path: &Path) -> Result<BTreeMap<(u32, u32), BigRat>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let raw: BTreeMap<String, String> =
        serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (k, v) in raw {
        let key = k
            .split_once(',')
            .and_then(|(g, n)| Some((g.trim().parse().ok()?, n.trim().parse().ok()?)))
            .ok_or_else(|| Failure::Invalid(format!("weight key {k:?} is not \"g,n\"")))?;
        out.insert(key, parse_rational(&v)?);
    }
    Ok(out)
}

fn oracle_graphs(g: u32, n: u32, weights: Option<&Path>) -> Outcome {
    let graphs = enumerate_stable(g, n)?;
    println!("{} stable graphs of type ({g}, {n})", graphs.len());
    for (gr, aut) in &graphs {
        println!("  genera {:?} edges {:?} legs {:?} |Aut| = {aut}", gr.vertices, gr.edges, gr.legs);
    }
    match weights {
        Some(p) => println!("sum = {}", wick_sum(g, n, &load_weights(p)?)?),
        None => println!("sum = {}", wick_sum(g, n, &symbolic_weights(g, n))?),
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Genus0 { degree, what, out } => genus0(degree, what, &out),
        Command::ComputeB { genus, degree, a1, a2, method, out } => {
            compute_b(genus, degree, a1.as_deref(), a2.as_deref(), method, &out)
        }
        Command::Oracle(Oracle::Trees { n, sigma }) => oracle_trees(n, sigma.as_deref()),
        Command::Oracle(Oracle::Graphs { genus, n, weights }) => oracle_graphs(genus, n, weights.as_deref()),
        Command::Selftest { degree } => selftest::run(degree),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Inconsistent(m)) => {
            eprintln!("inconsistency: {m}");
            ExitCode::from(2)
        }
    }
}
