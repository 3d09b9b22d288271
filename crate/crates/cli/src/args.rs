use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fairkit::measures::{Epsilon, MeasureKind};
use fairkit::{Identifier, Quantity};

const AFTER_HELP: &str = "\
Boolean measures print 0 or 1 in `eval` and `compare`; pipelines print the
root value, so b-typed pipelines print true or false.

Exit status: 0 on success, 1 for I/O or parse errors, 2 for type or
validation errors, 3 when a measure is undefined on the input (for example
an empty protected group).";

#[derive(Debug, Parser)]
#[command(name = "fairkit", version, about = "Evaluate fairness measures and typed measure pipelines")]
#[command(after_help = AFTER_HELP)]
pub struct Cli {
    /// Output format for the value stream.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a scenario file and report every violated invariant.
    Check {
        #[arg(value_name = "SCENARIO")]
        scenario: PathBuf,
    },
    /// Evaluate one measure on one outcome.
    #[command(after_help = AFTER_HELP)]
    Eval {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        outcome: PathBuf,
        #[arg(long, value_parser = parse_measure)]
        measure: MeasureKind,
        #[command(flatten)]
        bindings: BindingArgs,
    },
    /// Typecheck and evaluate a pipeline expression such as
    /// `all-equal(accumulates(all-agent))`.
    #[command(after_help = AFTER_HELP)]
    Pipeline {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        outcome: PathBuf,
        #[arg(long)]
        expr: String,
        /// Also write the pipeline as a Graphviz digraph.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[command(flatten)]
        bindings: BindingArgs,
    },
    /// Tabulate measures (columns) over outcomes (rows).
    #[command(after_help = AFTER_HELP)]
    Compare {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        outcomes: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_measure)]
        measures: Vec<MeasureKind>,
        #[command(flatten)]
        bindings: BindingArgs,
    },
    /// List the available measures with the bindings each one reads.
    ListMeasures,
}

/// Attribute names and parameters the measures and tiles look up.
#[derive(Debug, Clone, Args)]
pub struct BindingArgs {
    /// Resource attribute holding utilities.
    #[arg(long, default_value = "u", value_parser = parse_identifier)]
    pub utility: Identifier,
    /// Agent attribute holding needs.
    #[arg(long, default_value = "q", value_parser = parse_identifier)]
    pub need: Identifier,
    /// Similarity threshold for group fairness, as a decimal or p/q.
    #[arg(long, env = "FAIRKIT_EPSILON", default_value = "1/100", value_parser = parse_epsilon)]
    pub epsilon: Epsilon,
    /// Agent attribute holding preference rankings.
    #[arg(long, default_value = "v", value_parser = parse_identifier)]
    pub ranking: Identifier,
    /// Boolean agent attribute marking the protected group.
    #[arg(long, default_value = "p", value_parser = parse_identifier)]
    pub protected: Identifier,
    /// Boolean agent attribute individual fairness compares on.
    #[arg(long, default_value = "q", value_parser = parse_identifier)]
    pub essential: Identifier,
    /// Agent attribute naming the resource each agent should receive.
    #[arg(long = "ground-truth", default_value = "res", value_parser = parse_identifier)]
    pub ground_truth: Identifier,
    /// Resource whose receipt group and individual fairness examine.
    #[arg(long, value_parser = parse_identifier)]
    pub target: Option<Identifier>,
    /// The high-risk resource for equalized odds.
    #[arg(long, value_parser = parse_identifier)]
    pub high: Option<Identifier>,
}

fn parse_measure(s: &str) -> Result<MeasureKind, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = MeasureKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown measure `{s}` (expected one of: {})", names.join(", "))
    })
}

fn parse_identifier(s: &str) -> Result<Identifier, String> {
    Identifier::new(s).map_err(|e| e.to_string())
}

fn parse_epsilon(s: &str) -> Result<Epsilon, String> {
    let value = Quantity::parse(s).map_err(|e| e.to_string())?;
    Epsilon::new(value).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn epsilon_must_be_positive() {
        assert!(parse_epsilon("0").is_err());
        assert!(parse_epsilon("-1/2").is_err());
        assert!(parse_epsilon("0.05").is_ok());
    }
}
