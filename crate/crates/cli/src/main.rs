use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use poctl::checker::{ctl_sat, sat};
use poctl::logic::{embed_ctl, embed_ctl_alpha, parse_ctl, parse_formula, FormulaClass};
use poctl::oracle::{oracle_sat, OracleBudget};
use poctl::{
    parse_model, FuzzyMatrix, PossibilisticKripkeStructure, Possibility, PossibilityVector,
    StateFormula, StateSet,
};

const EXIT_FALSE: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

/// Model checker for possibilistic computation tree logic
#[derive(Parser)]
#[command(name = "poctl", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a PoCTL (or CTL) formula against a model
    Check {
        model: PathBuf,
        formula: String,
        #[command(flatten)]
        target: Target,
        /// Cross-check every value against the brute-force oracle
        #[arg(long)]
        oracle: bool,
        /// Check a CTL formula on the alpha-cut instead of the underlying system
        #[arg(long, value_parser = parse_level)]
        alpha: Option<Possibility>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Translate a CTL formula into PoCTL
    Translate {
        formula: String,
        /// Use the level-alpha translation
        #[arg(long, value_parser = parse_level)]
        alpha: Option<Possibility>,
    },
    /// Evaluate a PoCTL formula by path enumeration only
    Oracle {
        model: PathBuf,
        formula: String,
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print the model as a Graphviz digraph
    ExportDot {
        model: PathBuf,
        /// Keep only transitions of possibility at least alpha
        #[arg(long, value_parser = parse_level, conflicts_with = "plus")]
        alpha: Option<Possibility>,
        /// Export the transitive closure of the transition matrix
        #[arg(long)]
        plus: bool,
    },
    /// Check a model file for well-formedness and normality
    Validate { model: PathBuf },
}

#[derive(Args)]
struct Target {
    /// Restrict the verdict to a single state
    #[arg(long)]
    state: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Args)]
struct BudgetArgs {
    /// Longest lasso stem the oracle enumerates [default: number of states]
    #[arg(long)]
    max_stem: Option<usize>,
    /// Longest lasso cycle the oracle enumerates [default: number of states]
    #[arg(long)]
    max_cycle: Option<usize>,
    /// Longest path prefix the oracle enumerates [default: number of states]
    #[arg(long)]
    max_prefix: Option<usize>,
}

impl BudgetArgs {
    fn resolve(&self, states: usize) -> Result<OracleBudget> {
        let exact = OracleBudget::exact_for(states);
        let budget = OracleBudget {
            max_stem: self.max_stem.unwrap_or(exact.max_stem),
            max_cycle: self.max_cycle.unwrap_or(exact.max_cycle),
            max_prefix: self.max_prefix.unwrap_or(exact.max_prefix),
        };
        if budget.max_cycle == 0 || budget.max_prefix == 0 {
            bail!("oracle budgets must be at least 1");
        }
        Ok(budget)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    JsonLines,
}

fn parse_level(text: &str) -> Result<Possibility, String> {
    let p: Possibility = text.parse().map_err(|e| format!("{e}"))?;
    if p.is_zero() {
        return Err("level must be positive".into());
    }
    Ok(p)
}

/// The outcome of a `check` or `oracle` run.
struct RunReport {
    states: Vec<String>,
    /// The outer `Po` value per state, when the formula is a `Po` formula.
    values: Option<Vec<String>>,
    sat: StateSet,
    /// The states the verdict is about.
    scope: StateSet,
}

impl RunReport {
    fn verdict(&self) -> bool {
        self.scope.is_subset(&self.sat)
    }

    fn print(&self, format: OutputFormat) {
        let mut out = String::new();
        for (i, name) in self.states.iter().enumerate() {
            let value = self.values.as_ref().map(|v| v[i].as_str());
            let holds = self.sat.contains(i);
            match format {
                OutputFormat::Table => {
                    let yes = if holds { "yes" } else { "no" };
                    writeln!(out, "{name}\t{}\t{yes}", value.unwrap_or("-")).unwrap();
                }
                OutputFormat::JsonLines => {
                    let row = json!({ "state": name, "value": value, "sat": holds });
                    writeln!(out, "{row}").unwrap();
                }
            }
        }
        match format {
            OutputFormat::Table => writeln!(out, "verdict: {}", self.verdict()).unwrap(),
            OutputFormat::JsonLines => {
                writeln!(out, "{}", json!({ "verdict": self.verdict() })).unwrap()
            }
        }
        print!("{out}");
    }
}

fn load_model(path: &Path) -> Result<PossibilisticKripkeStructure> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_model(&text).with_context(|| format!("loading {}", path.display()))
}

fn verdict_scope(m: &PossibilisticKripkeStructure, state: Option<&str>) -> Result<StateSet> {
    Ok(match state {
        Some(name) => StateSet::from_indices(m.num_states(), [m.state_index(name)?]),
        None => m.initial_states(),
    })
}

fn render(v: &PossibilityVector) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

fn cmd_check(
    model: &Path,
    formula: &str,
    target: &Target,
    with_oracle: bool,
    alpha: Option<Possibility>,
    budget: &BudgetArgs,
) -> Result<u8> {
    let m = load_model(model)?;
    let phi = parse_formula(formula)?;
    let scope = verdict_scope(&m, target.state.as_deref())?;
    let started = Instant::now();
    let report = if phi.class()? == FormulaClass::Ctl {
        if with_oracle {
            bail!("--oracle applies to PoCTL formulae only");
        }
        let ts = match alpha {
            Some(a) => m.alpha_cut_ts(a)?,
            None => m.underlying_ts(),
        };
        RunReport {
            states: m.states().to_vec(),
            values: None,
            sat: ctl_sat(&ts, &phi)?,
            scope,
        }
    } else {
        if alpha.is_some() {
            bail!("--alpha applies to CTL formulae only");
        }
        let result = sat(&m, &phi)?;
        let top = matches!(phi, StateFormula::Po(..)).then(|| render(&result.po_values[&phi]));
        if with_oracle {
            let budget = budget.resolve(m.num_states())?;
            let reference = oracle_sat(&m, &phi, budget)?;
            let mut mismatches = Vec::new();
            if reference.sat != result.sat {
                mismatches.push(format!(
                    "satisfaction sets differ: checker {:?}, oracle {:?}",
                    result.sat, reference.sat
                ));
            }
            for (sub, values) in &result.po_values {
                let expected = reference.vector_of(sub);
                if expected.as_ref() != Some(values) {
                    mismatches.push(format!(
                        "{sub}: checker {:?}, oracle {:?}",
                        render(values),
                        expected.as_ref().map(render)
                    ));
                }
            }
            if !reference.exact() {
                eprintln!("warning: oracle budget too small, oracle values are lower bounds");
            }
            if !mismatches.is_empty() {
                for line in mismatches {
                    eprintln!("oracle mismatch: {line}");
                }
                return Ok(EXIT_MISMATCH);
            }
        }
        RunReport {
            states: m.states().to_vec(),
            values: top,
            sat: result.sat,
            scope,
        }
    };
    eprintln!("time: {} ms", started.elapsed().as_millis());
    report.print(target.format);
    Ok(if report.verdict() { 0 } else { EXIT_FALSE })
}

fn cmd_oracle(model: &Path, formula: &str, target: &Target, budget: &BudgetArgs) -> Result<u8> {
    let m = load_model(model)?;
    let phi = parse_formula(formula)?;
    let scope = verdict_scope(&m, target.state.as_deref())?;
    let budget = budget.resolve(m.num_states())?;
    let started = Instant::now();
    let result = oracle_sat(&m, &phi, budget)?;
    eprintln!("time: {} ms", started.elapsed().as_millis());
    let values = result.values_of(&phi).map(|vals| {
        vals.iter()
            .map(|v| {
                if v.exact {
                    v.value.to_string()
                } else {
                    format!(">={}", v.value)
                }
            })
            .collect()
    });
    if !result.exact() {
        eprintln!("warning: budget too small, some values are lower bounds");
    }
    let report = RunReport {
        states: m.states().to_vec(),
        values,
        sat: result.sat,
        scope,
    };
    report.print(target.format);
    Ok(if report.verdict() { 0 } else { EXIT_FALSE })
}

fn cmd_translate(formula: &str, alpha: Option<Possibility>) -> Result<u8> {
    let phi = parse_ctl(formula)?;
    let translated = match alpha {
        Some(a) => embed_ctl_alpha(&phi, a)?,
        None => embed_ctl(&phi)?,
    };
    println!("{translated}");
    Ok(0)
}

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

fn cmd_export_dot(model: &Path, alpha: Option<Possibility>, plus: bool) -> Result<u8> {
    let m = load_model(model)?;
    let shown: FuzzyMatrix = if plus {
        m.plus_structure().transitions().clone()
    } else {
        m.transitions().clone()
    };
    let threshold = alpha.unwrap_or(Possibility::ZERO);
    let mut out = String::from("digraph model {\n    rankdir=LR;\n");
    for (i, name) in m.states().iter().enumerate() {
        let labels: Vec<&str> = m.labels(i).iter().map(String::as_str).collect();
        let label = format!("{name}\\n{{{}}}", labels.join(", "));
        let init = m.initial()[i];
        let extra = if init.is_positive() {
            format!(", peripheries=2, xlabel=\"init {init}\"")
        } else {
            String::new()
        };
        writeln!(out, "    {} [label={}{extra}];", quote(name), quote(&label))?;
    }
    for i in 0..m.num_states() {
        for j in 0..m.num_states() {
            let p = shown.get(i, j);
            if p.is_positive() && p >= threshold {
                writeln!(
                    out,
                    "    {} -> {} [label=\"{p}\"];",
                    quote(m.state_name(i)),
                    quote(m.state_name(j))
                )?;
            }
        }
    }
    out.push_str("}\n");
    print!("{out}");
    Ok(0)
}

fn cmd_validate(model: &Path) -> Result<u8> {
    let text =
        std::fs::read_to_string(model).with_context(|| format!("reading {}", model.display()))?;
    let m = poctl::format::parse_model_unchecked(&text)
        .with_context(|| format!("loading {}", model.display()))?;
    let violations = m.validate();
    if violations.is_empty() {
        println!(
            "valid: {} states, {} propositions",
            m.num_states(),
            m.propositions().len()
        );
        return Ok(0);
    }
    for v in &violations {
        println!("{v}");
    }
    Ok(EXIT_FALSE)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check {
            model,
            formula,
            target,
            oracle,
            alpha,
            budget,
        } => cmd_check(&model, &formula, &target, oracle, alpha, &budget),
        Command::Translate { formula, alpha } => cmd_translate(&formula, alpha),
        Command::Oracle {
            model,
            formula,
            target,
            budget,
        } => cmd_oracle(&model, &formula, &target, &budget),
        Command::ExportDot { model, alpha, plus } => cmd_export_dot(&model, alpha, plus),
        Command::Validate { model } => cmd_validate(&model),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
