//! Command-line front end. Exit codes: 0 success, 1 a check failed,
//! 2 usage or input error.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::automata::oracle::{EndOracle, LnkOracle, RunLengthOracle, StartOracle};
use crate::automata::regular::{build_tt_with, specialize_regular};
use crate::automata::{automaton_to_string, infer_automaton, read_automaton, to_dot, Automaton};
use crate::contfrac::{alpha_value, cf_from_rational, cf_theorem_check, predicted_cf, MAX_ALPHA_N};
use crate::error::{Error, Result};
use crate::foldcore::{paperfolding_term, paperfolding_word, FoldCode, Sign};
use crate::runs::{find_palindromes, find_squares, runs_of, FactorWindow};
use crate::theorems::{run_suite, Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "paperfold", version, about = "Paperfolding sequences, their runs, and the automata computing them")]
pub struct Cli {
    /// Output format for tables and reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Tsv)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    JsonLines,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Instruction code over `+`, `-`, `0`, e.g. `++-+0`.
    #[arg(long, conflicts_with = "regular")]
    pub code: Option<String>,

    /// Use the regular code of `--length` plus signs.
    #[arg(long, requires = "length")]
    pub regular: bool,

    #[arg(long)]
    pub length: Option<usize>,
}

impl CodeArgs {
    fn resolve(&self) -> Result<FoldCode> {
        match (&self.code, self.regular, self.length) {
            (Some(c), false, None) => c.parse(),
            (None, true, Some(t)) => Ok(FoldCode::regular(t)),
            _ => Err(Error::Rejected(
                "give either --code <CODE> or --regular --length <T>".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RelationName {
    Lnk,
    Sp,
    Ep,
    Rl,
    SpReg,
    EpReg,
    Rlr,
    Tt,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the terms of a paperfolding word.
    Gen {
        #[command(flatten)]
        code: CodeArgs,
        /// Print only the first N terms.
        #[arg(long)]
        terms: Option<usize>,
        /// Print the single term at this index without building the word.
        #[arg(long, conflicts_with = "terms")]
        index: Option<u64>,
    },
    /// Print the run table, or a factor inventory of the run-length word.
    Runs {
        #[command(flatten)]
        code: CodeArgs,
        /// List the distinct squares instead.
        #[arg(long)]
        squares: bool,
        /// List palindromes up to this length instead.
        #[arg(long, conflicts_with = "squares")]
        palindromes: Option<usize>,
    },
    /// Infer an automaton and write it in the text format.
    Infer {
        #[arg(long, value_enum)]
        relation: RelationName,
        #[arg(long, default_value_t = 10)]
        sample_depth: usize,
        #[arg(long, default_value_t = 6)]
        test_depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteName::All)]
        suite: SuiteName,
        #[arg(long, default_value_t = 10)]
        max_code_len: usize,
        #[arg(long, default_value_t = 100_000)]
        max_index: u64,
    },
    /// Compare the expansion of α with the one predicted from run lengths.
    Cf {
        /// Signs ε₂,…,ε_n, e.g. `+,-,-,+`.
        #[arg(long, conflicts_with = "sweep")]
        eps: Option<String>,
        /// Check every sign vector with n up to this bound.
        #[arg(long)]
        sweep: Option<usize>,
    },
    /// Factor counts and right-special counts of the run-length word.
    Complexity {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long, default_value_t = 30)]
        to: usize,
    },
    /// Render an automaton as Graphviz DOT.
    Dot {
        #[arg(long, value_enum, conflicts_with = "input")]
        relation: Option<RelationName>,
        /// Automaton file in the text format.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    All,
    Sp,
    Runs,
    Regular,
    Cf,
}

impl From<SuiteName> for Suite {
    fn from(s: SuiteName) -> Suite {
        match s {
            SuiteName::All => Suite::All,
            SuiteName::Sp => Suite::Sp,
            SuiteName::Runs => Suite::Runs,
            SuiteName::Regular => Suite::Regular,
            SuiteName::Cf => Suite::Cf,
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs a parsed command; `Ok(false)` means a check failed.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let fmt = cli.format;
    match &cli.command {
        Command::Gen { code, terms, index } => gen(out, fmt, &code.resolve()?, *terms, *index),
        Command::Runs {
            code,
            squares,
            palindromes,
        } => runs(out, fmt, &code.resolve()?, *squares, *palindromes),
        Command::Infer {
            relation,
            sample_depth,
            test_depth,
            out: path,
        } => {
            let a = build_relation(*relation, *sample_depth, *test_depth)?;
            let text = automaton_to_string(&a);
            match path {
                Some(p) => {
                    std::fs::write(p, text)?;
                    let name = relation.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
                    match fmt {
                        Format::Tsv => writeln!(out, "relation\tstates\tlive")
                            .and_then(|_| {
                                writeln!(out, "{name}\t{}\t{}", a.num_states(), a.num_live_states())
                            })?,
                        Format::JsonLines => writeln!(
                            out,
                            "{}",
                            json!({"relation": name, "states": a.num_states(), "live": a.num_live_states()})
                        )?,
                    }
                }
                None => out.write_all(text.as_bytes())?,
            }
            Ok(true)
        }
        Command::Verify {
            suite,
            max_code_len,
            max_index,
        } => {
            let config = SuiteConfig {
                max_code_len: *max_code_len,
                max_index: *max_index,
            };
            let reports = run_suite((*suite).into(), &config)?;
            if fmt == Format::Tsv {
                writeln!(out, "check\tbound\tverdict\twitness")?;
            }
            for r in &reports {
                match fmt {
                    Format::Tsv => writeln!(out, "{}", r.to_tsv())?,
                    Format::JsonLines => writeln!(out, "{}", r.to_json())?,
                }
            }
            Ok(reports.iter().all(|r| r.passed()))
        }
        Command::Cf { eps, sweep } => match (eps, sweep) {
            (Some(e), None) => cf_single(out, fmt, &parse_eps(e)?),
            (None, Some(n)) => {
                if !(2..=MAX_ALPHA_N).contains(n) {
                    return Err(Error::Rejected(format!("--sweep must lie in 2..={MAX_ALPHA_N}")));
                }
                let r = cf_theorem_check(*n);
                match fmt {
                    Format::Tsv => writeln!(out, "{}", r.to_tsv())?,
                    Format::JsonLines => writeln!(out, "{}", r.to_json())?,
                }
                Ok(r.passed())
            }
            _ => Err(Error::Rejected("give either --eps or --sweep".into())),
        },
        Command::Complexity { code, from, to } => {
            let code = if code.code.is_none() && !code.regular {
                FoldCode::regular(14)
            } else {
                code.resolve()?
            };
            complexity(out, fmt, &code, *from, *to)
        }
        Command::Dot {
            relation,
            input,
            out: path,
        } => {
            let a = match (relation, input) {
                (Some(r), None) => build_relation(*r, 10, 6)?,
                (None, Some(p)) => read_automaton(BufReader::new(File::open(p)?))?,
                _ => return Err(Error::Rejected("give either --relation or --input".into())),
            };
            let dot = to_dot(&a);
            match path {
                Some(p) => std::fs::write(p, dot)?,
                None => out.write_all(dot.as_bytes())?,
            }
            Ok(true)
        }
    }
}

fn gen(
    out: &mut dyn Write,
    fmt: Format,
    code: &FoldCode,
    terms: Option<usize>,
    index: Option<u64>,
) -> Result<bool> {
    let rows: Vec<(u64, Sign)> = match index {
        Some(n) => vec![(n, paperfolding_term(code, n)?)],
        None => {
            let word = paperfolding_word(code)?;
            let count = terms.unwrap_or(word.len());
            if count > word.len() {
                return Err(Error::IndexOutOfRange {
                    index: count as u64,
                    lo: 1,
                    hi: word.len() as u64,
                });
            }
            word.iter().take(count).enumerate().map(|(i, s)| (i as u64 + 1, s)).collect()
        }
    };
    if fmt == Format::Tsv {
        writeln!(out, "n\tP")?;
    }
    for (n, s) in rows {
        match fmt {
            Format::Tsv => writeln!(out, "{n}\t{}", s.to_i8())?,
            Format::JsonLines => writeln!(out, "{}", json!({"n": n, "P": s.to_i8()}))?,
        }
    }
    Ok(true)
}

fn runs(
    out: &mut dyn Write,
    fmt: Format,
    code: &FoldCode,
    squares: bool,
    palindromes: Option<usize>,
) -> Result<bool> {
    let decomposition = runs_of(code)?;
    let word = decomposition.run_word();
    let inventory = match (squares, palindromes) {
        (true, _) => Some(find_squares(&word)),
        (false, Some(0)) => return Err(Error::Rejected("--palindromes needs a length >= 1".into())),
        (false, Some(max)) => Some(find_palindromes(&word, max)),
        (false, None) => None,
    };
    if let Some(inv) = inventory {
        for f in inv.sorted_strings() {
            match fmt {
                Format::Tsv => writeln!(out, "{f}")?,
                Format::JsonLines => writeln!(out, "{}", json!({"factor": f}))?,
            }
        }
        return Ok(true);
    }
    match fmt {
        Format::Tsv => out.write_all(decomposition.to_tsv().as_bytes())?,
        Format::JsonLines => {
            for i in 0..decomposition.len() {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "n": i + 1,
                        "R": decomposition.lengths()[i],
                        "S": decomposition.starts()[i],
                        "E": decomposition.ends()[i],
                    })
                )?;
            }
        }
    }
    Ok(true)
}

fn parse_eps(s: &str) -> Result<Vec<Sign>> {
    s.split(',')
        .map(|t| match t.trim() {
            "+" | "1" | "+1" => Ok(Sign::Plus),
            "-" | "-1" => Ok(Sign::Minus),
            other => Err(Error::Rejected(format!("bad sign {other:?} in --eps"))),
        })
        .collect()
}

fn cf_single(out: &mut dyn Write, fmt: Format, eps: &[Sign]) -> Result<bool> {
    let alpha = alpha_value(eps)?;
    let computed = cf_from_rational(&alpha);
    let predicted = predicted_cf(eps)?;
    let matched = computed == predicted.canonical();
    let verdict = if matched { "MATCH" } else { "MISMATCH" };
    let signs: Vec<String> = eps.iter().map(|s| s.as_char().to_string()).collect();
    match fmt {
        Format::Tsv => {
            writeln!(out, "eps\t{}", signs.join(","))?;
            writeln!(out, "alpha\t{}/{}", alpha.numer(), alpha.denom())?;
            writeln!(out, "computed\t{computed}")?;
            writeln!(out, "predicted\t{predicted}")?;
            writeln!(out, "verdict\t{verdict}")?;
        }
        Format::JsonLines => writeln!(
            out,
            "{}",
            json!({
                "eps": signs.join(","),
                "alpha": format!("{}/{}", alpha.numer(), alpha.denom()),
                "computed": computed.to_string(),
                "predicted": predicted.to_string(),
                "verdict": verdict,
            })
        )?,
    }
    Ok(matched)
}

fn complexity(out: &mut dyn Write, fmt: Format, code: &FoldCode, from: usize, to: usize) -> Result<bool> {
    if from == 0 || from > to {
        return Err(Error::Rejected("need 1 <= --from <= --to".into()));
    }
    let window = FactorWindow::new(code, to + 1)?;
    if fmt == Format::Tsv {
        writeln!(out, "n\tfactors\tright_special")?;
    }
    for n in from..=to {
        let p = window.complexity(n);
        let r = window.right_special_count(n);
        match fmt {
            Format::Tsv => writeln!(out, "{n}\t{p}\t{r}")?,
            Format::JsonLines => {
                writeln!(out, "{}", json!({"n": n, "factors": p, "right_special": r}))?
            }
        }
    }
    Ok(true)
}

/// Builds a named automaton by inference (and specialization).
pub fn build_relation(name: RelationName, sample: usize, test: usize) -> Result<Automaton> {
    let infer = |o: &dyn crate::automata::Oracle| infer_automaton(o, sample, test);
    match name {
        RelationName::Lnk => infer(&LnkOracle),
        RelationName::Sp => infer(&StartOracle),
        RelationName::Ep => infer(&EndOracle),
        RelationName::Rl => infer(&RunLengthOracle),
        RelationName::SpReg => specialize_regular(&infer(&StartOracle)?),
        RelationName::EpReg => specialize_regular(&infer(&EndOracle)?),
        RelationName::Rlr => specialize_regular(&infer(&RunLengthOracle)?),
        RelationName::Tt => build_tt_with(1 << (sample + test), sample, test),
    }
}
