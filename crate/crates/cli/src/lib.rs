//! Text format, word syntax and the `pfakit` command line.

pub mod format;
pub mod word;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use pfakit::ambiguity::{classify, AmbiguityClass};
use pfakit::gadgets::{quad_gadget, regex_union_gadget, verify_bundle, QuadInstance, QuadVariant, RegexUnionSpec};
use pfakit::linalg::Rational;
use pfakit::oracle::{oracle_decide, sweep_grid, sweep_unary, OracleOutcome};
use pfakit::pfa::{Mode, Pfa, Query};
use pfakit::unary::{decide, verify_witness, DecideOptions, UnaryError};

use format::{fmt_rational, parse_rational, read_pfa, write_pfa};
use word::{parse_word, Word};

/// Exit status: question answered positively (witness found, check holds).
pub const EXIT_OK: i32 = 0;
/// Exit status: empty / predicate false.
pub const EXIT_FALSE: i32 = 1;
/// Exit status: bad arguments or unusable input.
pub const EXIT_USAGE: i32 = 2;
/// Exit status: the exact scan would exceed `--budget`.
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pfakit", version, about = "Exact cutpoint questions on probabilistic finite automata")]
struct Cli {
    /// Output style; `machine` prints `key=value` lines.
    #[arg(long, value_enum, default_value_t = Output::Human, global = true)]
    format: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ambiguity class of the support automaton, with witnesses.
    Classify { file: PathBuf },
    /// Decide a cutpoint question on a unary automaton.
    Decide {
        file: PathBuf,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long, value_parser = parse_rational)]
        lambda: Rational,
        /// Maximum number of exponents scanned exactly.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Check the unary word of length `s + r·d` against a cutpoint question.
    Verify {
        file: PathBuf,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long, value_parser = parse_rational)]
        lambda: Rational,
        #[arg(long, value_parser = parse_big)]
        s: BigUint,
        #[arg(long, value_parser = parse_big)]
        r: BigUint,
    },
    /// Exact acceptance probability of one word.
    Eval {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Write a hardness gadget in the text format.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Search every word up to a length bound.
    Oracle {
        file: PathBuf,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long, value_parser = parse_rational)]
        lambda: Rational,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Rebuild a quadratic gadget and check every identity it should satisfy.
    Selfcheck {
        #[arg(long, value_parser = parse_variant)]
        variant: QuadVariant,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
        #[arg(long, default_value_t = 6)]
        grid: usize,
    },
    /// Probabilities of `a^k` (unary) or `h^x g^y` (two commuting letters) as CSV.
    Sweep {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        max: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum GadgetCommand {
    /// Gadget for `a·x² + b·y − c`.
    Quad {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
        #[arg(long, value_parser = parse_variant)]
        variant: QuadVariant,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Unary {0,1} automaton for a union of arithmetic progressions.
    RegexUnion {
        /// Pairs `z,r` separated by `;`.
        #[arg(long, value_parser = parse_pairs)]
        pairs: RegexUnionSpec,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<QuadVariant, String> {
    s.parse().map_err(|e: pfakit::gadgets::GadgetError| e.to_string())
}

fn parse_big(s: &str) -> Result<BigUint, String> {
    s.parse().map_err(|_| format!("`{s}` is not a non-negative integer"))
}

fn parse_pairs(s: &str) -> Result<RegexUnionSpec, String> {
    let pairs = s
        .split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (z, r) = p.split_once(',').ok_or_else(|| format!("pair `{p}` is not `z,r`"))?;
            let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("`{t}` is not a non-negative integer"));
            Ok((num(z)?, num(r)?))
        })
        .collect::<Result<Vec<_>, String>>()?;
    RegexUnionSpec::new(pairs).map_err(|e| e.to_string())
}

/// Command failure: message for stderr and the exit status.
struct Failure(i32, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

fn load(path: &Path) -> Result<Pfa, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    read_pfa(&text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn save(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn unary_failure(e: UnaryError) -> Failure {
    let code = if matches!(e, UnaryError::BudgetExceeded { .. }) { EXIT_BUDGET } else { EXIT_USAGE };
    Failure(code, e.to_string())
}

fn render_letters(pfa: &Pfa, w: &[usize]) -> String {
    Word::from_letters(w).render(pfa)
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit status. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut buf = String::new();
    let result = execute(cli, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn execute(cli: Cli, out: &mut String) -> Result<i32, Failure> {
    use std::fmt::Write as _;
    let machine = cli.format == Output::Machine;
    match cli.command {
        Command::Classify { file } => {
            let pfa = load(&file)?;
            let rep = classify(&pfa);
            let (name, upper) = match rep.class {
                AmbiguityClass::Exponential => ("exponential", "EXPONENTIAL"),
                AmbiguityClass::Polynomial => ("polynomial", "POLYNOMIAL"),
                AmbiguityClass::Finite => ("finite", "FINITE"),
            };
            let d = rep.degree_lower_bound();
            if machine {
                writeln!(out, "class={name}")?;
                if rep.class == AmbiguityClass::Polynomial {
                    writeln!(out, "degree_lower_bound={d}")?;
                }
            } else if rep.class == AmbiguityClass::Polynomial {
                writeln!(out, "{upper} d>={d}")?;
            } else {
                writeln!(out, "{upper}")?;
            }
            if let Some(w) = &rep.eda_witness {
                let word = render_letters(&pfa, &w.word);
                if machine {
                    writeln!(out, "eda.state={}\neda.word={word}\neda.split={},{}", w.state, w.split.0, w.split.1)?;
                } else {
                    writeln!(out, "  two cycles at state {} on `{word}`, diverging through {} and {}", w.state, w.split.0, w.split.1)?;
                }
            }
            for (i, link) in rep.degree_witness.iter().enumerate() {
                let v = render_letters(&pfa, &link.loop_word);
                let u = render_letters(&pfa, &link.connector);
                if machine {
                    writeln!(out, "ida.{i}.r={}\nida.{i}.s={}\nida.{i}.loop={v}\nida.{i}.connector={u}", link.r, link.s)?;
                } else {
                    writeln!(out, "  link {i}: {} -> {} on `{v}`, reached by `{u}`", link.r, link.s)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Decide { file, mode, lambda, budget } => {
            let pfa = load(&file)?;
            let q = Query::new(mode, lambda)?;
            let decision = decide(&pfa, &q, DecideOptions { budget }).map_err(unary_failure)?;
            match &decision.witness {
                Some(w) if machine => writeln!(
                    out,
                    "result=witness\nk={}\np={}\nresidue={}\nquotient={}",
                    w.length(),
                    fmt_rational(&w.probability),
                    w.residue,
                    w.quotient
                )?,
                Some(w) => writeln!(out, "WITNESS k={} p={}", w.length(), fmt_rational(&w.probability))?,
                None if machine => writeln!(out, "result=empty")?,
                None => writeln!(out, "EMPTY")?,
            }
            if machine {
                writeln!(out, "period={}", decision.period)?;
            } else {
                writeln!(out, "period {}", decision.period)?;
            }
            for rep in &decision.residues {
                let s = &rep.residue;
                if machine {
                    writeln!(out, "residue.{s}.limit={}", fmt_rational(rep.closed_form.limit()))?;
                    writeln!(out, "residue.{s}.k_star={}", rep.bound.k_star)?;
                    writeln!(out, "residue.{s}.scanned={}", rep.scanned)?;
                    for (name, value) in &rep.bound.audit {
                        writeln!(out, "residue.{s}.{name}={}", fmt_rational(value))?;
                    }
                } else {
                    writeln!(out, "residue {s}: limit {}, scanned {}", fmt_rational(rep.closed_form.limit()), rep.scanned)?;
                    for line in rep.bound.to_string().lines() {
                        writeln!(out, "  {line}")?;
                    }
                }
            }
            Ok(if decision.is_empty() { EXIT_FALSE } else { EXIT_OK })
        }
        Command::Verify { file, mode, lambda, s, r } => {
            let pfa = load(&file)?;
            let q = Query::new(mode, lambda)?;
            let check = verify_witness(&pfa, &q, &s, &r).map_err(unary_failure)?;
            let p = fmt_rational(&check.probability);
            if machine {
                writeln!(out, "holds={}\nk={}\np={p}\nperiod={}\nzero_one={}", check.holds, check.length, check.period, check.zero_one)?;
            } else {
                let verdict = if check.holds { "HOLDS" } else { "FAILS" };
                writeln!(out, "{verdict} k={} p={p}", check.length)?;
            }
            Ok(if check.holds { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Eval { file, word } => {
            let pfa = load(&file)?;
            let w = parse_word(&word, &pfa).map_err(|m| Failure(EXIT_USAGE, m))?;
            let p = fmt_rational(&pfa.accept_powers(&w.runs)?);
            if machine {
                writeln!(out, "p={p}")?;
            } else {
                writeln!(out, "{p}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Gadget(GadgetCommand::Quad { a, b, c, variant, output }) => {
            let bundle = quad_gadget(&QuadInstance::new(a, b, c)?, variant);
            save(&output, &write_pfa(&bundle.pfa))?;
            let lambda = fmt_rational(&bundle.lambda);
            if machine {
                writeln!(out, "states={}\nmode={}\nlambda={lambda}", bundle.pfa.states(), bundle.query().mode())?;
            } else {
                writeln!(out, "wrote {} ({} states), question {} lambda={lambda}", output.display(), bundle.pfa.states(), bundle.query().mode())?;
            }
            Ok(EXIT_OK)
        }
        Command::Gadget(GadgetCommand::RegexUnion { pairs, output }) => {
            let pfa = regex_union_gadget(&pairs);
            save(&output, &write_pfa(&pfa))?;
            if machine {
                writeln!(out, "states={}", pfa.states())?;
            } else {
                writeln!(out, "wrote {} ({} states)", output.display(), pfa.states())?;
            }
            Ok(EXIT_OK)
        }
        Command::Oracle { file, mode, lambda, max_len } => {
            let pfa = load(&file)?;
            let q = Query::new(mode, lambda)?;
            match oracle_decide(&pfa, &q, max_len) {
                OracleOutcome::Witness { word, probability } => {
                    let (w, p) = (render_letters(&pfa, &word), fmt_rational(&probability));
                    if machine {
                        writeln!(out, "result=witness\nword={w}\nlength={}\np={p}", word.len())?;
                    } else {
                        writeln!(out, "WITNESS word={w} p={p}")?;
                    }
                    Ok(EXIT_OK)
                }
                OracleOutcome::Unknown => {
                    if machine {
                        writeln!(out, "result=unknown\nmax_len={max_len}")?;
                    } else {
                        writeln!(out, "UNKNOWN no witness up to length {max_len}")?;
                    }
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Selfcheck { variant, a, b, c, grid } => {
            let bundle = quad_gadget(&QuadInstance::new(a, b, c)?, variant);
            let report = verify_bundle(&bundle, grid);
            if machine {
                for check in &report.checks {
                    writeln!(out, "{}={}", check.name, if check.passed { "pass" } else { "fail" })?;
                }
            } else {
                write!(out, "{report}")?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Sweep { file, max, output } => {
            let pfa = load(&file)?;
            let sweep = if pfa.is_unary() { sweep_unary(&pfa, max)? } else { sweep_grid(&pfa, max, max)? };
            let csv = sweep.to_csv();
            match output {
                Some(path) => save(&path, &csv)?,
                None => out.push_str(&csv),
            }
            Ok(EXIT_OK)
        }
    }
}
