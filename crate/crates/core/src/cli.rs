//! Command-line front end. Exit codes: 0 success or holds, 1 fails or a
//! check found a problem, 2 usage or internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::basis::{basis_instances, nonidentity_witnesses, verify_instances};
use crate::canon::{canonicalize, trace::write_trace};
use crate::decider::{
    decide, differential_test, oracle_decide, pair_corpus, Certificate, DiffConfig,
};
use crate::error::{Error, Result};
use crate::lattice::{containment, hasse_dot, satisfaction_matrix};
use crate::monoid::{catalog, catalog_names, format_assignment};
use crate::word::{analyze, decompose, fss, Word};

#[derive(Parser, Debug)]
#[command(
    name = "limvar",
    version,
    about = "Identities of the monoid variety generated by A1 x B1"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Catalog monoids.
    Monoid {
        #[command(subcommand)]
        action: MonoidAction,
    },
    /// Word statistics.
    Word {
        #[command(subcommand)]
        action: WordAction,
    },
    /// Canonical form of a word, optionally with its derivation.
    Canon {
        word: String,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Decide whether `u = v` holds in the variety.
    Decide {
        u: String,
        v: String,
        /// Use exhaustive substitution into A1 and B1 instead of canonical forms.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Check the basis or the non-identity witnesses.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Compare the decider with the oracle on a corpus of word pairs.
    Difftest {
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
        #[arg(long, default_value_t = 10_000)]
        random: usize,
        #[arg(long, default_value_t = DiffConfig::default().seed)]
        seed: u64,
    },
    /// Satisfaction matrix and Hasse diagram of the subvarieties.
    Lattice {
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
}

#[derive(Subcommand, Debug)]
enum MonoidAction {
    List,
    Show {
        name: String,
        #[arg(long)]
        table: bool,
    },
}

#[derive(Subcommand, Debug)]
enum WordAction {
    Analyze { word: String },
}

#[derive(Subcommand, Debug)]
enum VerifyWhat {
    Basis {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    Nonid,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// `run` with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn word(s: &str) -> Result<Word> {
    Ok(s.parse()?)
}

fn io(e: std::io::Error) -> Error {
    Error::from(e)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Monoid { action } => monoid(action, out),
        Command::Word {
            action: WordAction::Analyze { word: s },
        } => word_analyze(&word(&s)?, out),
        Command::Canon { word: s, trace } => {
            let (c, t) = canonicalize(&word(&s)?)?;
            writeln!(out, "{c}").map_err(io)?;
            writeln!(out, "{}", c.flatten()).map_err(io)?;
            if let Some(path) = trace {
                std::fs::write(path, write_trace(&t))?;
            }
            Ok(0)
        }
        Command::Decide {
            u,
            v,
            oracle,
            certificate,
        } => decide_cmd(&word(&u)?, &word(&v)?, oracle, certificate, out),
        Command::Verify { what } => verify(what, out),
        Command::Difftest {
            letters,
            maxlen,
            random,
            seed,
        } => difftest(
            DiffConfig {
                letters,
                max_len: maxlen,
                random,
                seed,
                ..DiffConfig::default()
            },
            out,
        ),
        Command::Lattice { dot, matrix, n_max } => lattice(dot, matrix, n_max, out),
    }
}

fn monoid(action: MonoidAction, out: &mut dyn Write) -> Result<i32> {
    match action {
        MonoidAction::List => {
            for name in catalog_names() {
                writeln!(out, "{name}\t{}", catalog(name)?.order()).map_err(io)?;
            }
        }
        MonoidAction::Show { name, table } => {
            let m = catalog(&name)?;
            let opt = |e: Option<_>| e.map_or("none".to_string(), |e| m.name(e).to_string());
            writeln!(out, "name\t{name}").map_err(io)?;
            writeln!(out, "order\t{}", m.order()).map_err(io)?;
            writeln!(out, "identity\t{}", opt(m.one())).map_err(io)?;
            writeln!(out, "zero\t{}", opt(m.zero())).map_err(io)?;
            writeln!(out, "aperiodic\t{}", m.is_aperiodic()).map_err(io)?;
            if table {
                write!(out, "{}", m.to_table_text()).map_err(io)?;
            }
        }
    }
    Ok(0)
}

fn word_analyze(w: &Word, out: &mut dyn Write) -> Result<i32> {
    let p = analyze(w);
    let set = |s: &crate::word::LetterSet| {
        s.iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    writeln!(out, "content\t{{{}}}", set(&p.content)).map_err(io)?;
    writeln!(out, "simple\t{{{}}}", set(&p.sim)).map_err(io)?;
    writeln!(out, "non-simple\t{{{}}}", set(&p.non)).map_err(io)?;
    let mult: Vec<String> = p.mult.iter().map(|(l, c)| format!("{l}:{c}")).collect();
    writeln!(out, "occurrences\t{}", mult.join(",")).map_err(io)?;
    let pairs: Vec<String> = fss(w).iter().map(|(a, b)| format!("{a}{b}")).collect();
    writeln!(out, "F_SS\t{{{}}}", pairs.join(", ")).map_err(io)?;
    let d = decompose(w);
    let show = |w: &Word| {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.to_string()
        }
    };
    let mut parts = vec![show(&d.w0)];
    for (s, b) in &d.pairs {
        parts.push(format!("[{}]", show(s)));
        parts.push(show(b));
    }
    writeln!(out, "blocks\t{}", parts.join(" ")).map_err(io)?;
    Ok(0)
}

fn decide_cmd(
    u: &Word,
    v: &Word,
    oracle: bool,
    certificate: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let d = if oracle {
        oracle_decide(u, v)?
    } else {
        decide(u, v)?
    };
    writeln!(out, "{}\t{}", d.verdict, d.reason).map_err(io)?;
    let a1b1 = catalog("A1xB1")?;
    let text = match &d.certificate {
        Some(Certificate::Traces {
            lhs,
            rhs,
            lhs_form,
            rhs_form,
        }) => {
            writeln!(out, "lhs form\t{lhs_form}").map_err(io)?;
            writeln!(out, "rhs form\t{rhs_form}").map_err(io)?;
            Some(format!("{}{}", write_trace(lhs), write_trace(rhs)))
        }
        Some(Certificate::Witness(w)) => {
            let line = format!(
                "witness\t{}\tlhs={}\trhs={}",
                format_assignment(&a1b1, &w.assignment),
                a1b1.name(w.lhs_value),
                a1b1.name(w.rhs_value)
            );
            writeln!(out, "{line}").map_err(io)?;
            Some(line + "\n")
        }
        None => None,
    };
    if let (Some(path), Some(text)) = (certificate, text) {
        std::fs::write(path, text)?;
    }
    Ok(if d.holds() { 0 } else { 1 })
}

fn verify(what: VerifyWhat, out: &mut dyn Write) -> Result<i32> {
    match what {
        VerifyWhat::Basis { n_max } => {
            let start = Instant::now();
            let (a1, b1) = (catalog("A1")?, catalog("B1")?);
            let r = verify_instances(("A1", &a1), ("B1", &b1), &basis_instances(n_max))?;
            for c in &r.checks {
                let status = match &c.failure {
                    None => "holds".to_string(),
                    Some((m, _)) => format!("fails in {m}"),
                };
                writeln!(out, "{}\t{}\t{status}", c.reference, c.identity).map_err(io)?;
            }
            let failed = r.failures().count();
            writeln!(
                out,
                "# {} identities, {failed} failures, {:.2}s",
                r.checks.len(),
                start.elapsed().as_secs_f64()
            )
            .map_err(io)?;
            Ok(if r.all_hold() { 0 } else { 1 })
        }
        VerifyWhat::Nonid => {
            for rec in nonidentity_witnesses()? {
                writeln!(out, "{rec}").map_err(io)?;
            }
            Ok(0)
        }
    }
}

fn difftest(cfg: DiffConfig, out: &mut dyn Write) -> Result<i32> {
    writeln!(out, "# seed {}", cfg.seed).map_err(io)?;
    let start = Instant::now();
    let pairs = pair_corpus(&cfg);
    let r = differential_test(&pairs);
    for d in &r.disagreements {
        writeln!(
            out,
            "disagree\t{}\t{}\tdecide={} ({})\toracle={}",
            d.lhs, d.rhs, d.decided, d.reason, d.oracle
        )
        .map_err(io)?;
    }
    for (u, v, e) in &r.errors {
        writeln!(out, "error\t{u}\t{v}\t{e}").map_err(io)?;
    }
    writeln!(
        out,
        "# {} pairs, {} hold, {} disagreements, {} errors, {:.1}s",
        r.pairs,
        r.holds,
        r.disagreements.len(),
        r.errors.len(),
        start.elapsed().as_secs_f64()
    )
    .map_err(io)?;
    Ok(if r.clean() { 0 } else { 1 })
}

fn lattice(
    dot: Option<PathBuf>,
    matrix: Option<PathBuf>,
    n_max: usize,
    out: &mut dyn Write,
) -> Result<i32> {
    if n_max < 2 {
        return Err(Error::SchemaRange {
            tag: "lattice".into(),
            n: n_max,
        });
    }
    let m = satisfaction_matrix(n_max);
    let l = containment(&m)?;
    for (lo, hi) in l.covers() {
        writeln!(out, "{lo} < {hi}").map_err(io)?;
    }
    if let Some(path) = dot {
        std::fs::write(path, hasse_dot(&l))?;
    }
    if let Some(path) = matrix {
        std::fs::write(path, m.to_tsv())?;
    }
    let unknown = m.cells.iter().flatten().any(|c| c.symbol() == '?');
    Ok(if unknown { 1 } else { 0 })
}
