//! Command-line front end.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chartable::{table_for, CharacterTable};
use crate::charops::decompose_product;
use crate::constructions::{build_from_text, BuildOptions, Built};
use crate::error::{Error, Result};
use crate::group::DEFAULT_CAP;
use crate::harness::{
    classify_product, eta_spectrum, reproduce_examples, run_corpus, run_group, to_json, verify_self_product_lemma,
    Corpus, Markdown,
};

#[derive(Debug, Parser)]
#[command(name = "charforge", version, about = "Character tables and products of prime-degree characters")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Allow the order-15625 wreath product.
    #[arg(long, global = true)]
    pub stretch: bool,
    /// Largest group order to enumerate.
    #[arg(long, global = true, env = "CHARFORGE_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Worker threads for the pair sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the character table.
    Table(GroupArg),
    /// Classify the product of two irreducibles.
    Product {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        chi: usize,
        #[arg(long)]
        psi: usize,
        /// Prime degree of chi (defaults to chi(1)).
        #[arg(long)]
        p: Option<u64>,
    },
    /// Decompose the product of two irreducibles.
    Decompose {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        chi: usize,
        #[arg(long)]
        psi: usize,
    },
    /// Classify every admissible pair on one group, or sweep the corpus.
    Verify {
        #[arg(long, conflicts_with = "corpus", required_unless_present = "corpus")]
        group: Option<String>,
        #[arg(long, required_unless_present = "corpus")]
        p: Option<u64>,
        /// Sweep the built-in corpus, or the manifest at this path.
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        corpus: Option<String>,
    },
    /// Shape of chi conj(chi) for a degree-p character of a p-group.
    SelfProduct {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        chi: usize,
    },
    /// Values of eta over pairs of degree-p irreducibles.
    Spectrum {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        p: u64,
    },
    /// Recompute the worked examples.
    Examples {
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
}

#[derive(Debug, Args)]
pub struct GroupArg {
    /// Group spec, or a file containing one.
    #[arg(long)]
    pub group: String,
}

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ClosureTooLarge { .. } => EXIT_CAP,
        Error::TheoremViolation(_) | Error::NotACharacter(_) | Error::Io(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn spec_text(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if !arg.contains(':') && path.is_file() {
        Ok(std::fs::read_to_string(path)?.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

struct Output {
    text: String,
    pass: bool,
}

fn render<T: Serialize + Markdown>(value: &T, format: Format, pass: bool) -> Result<Output> {
    let text = match format {
        Format::Json => to_json(value)?,
        Format::Markdown => value.to_markdown(),
    };
    Ok(Output { text, pass })
}

fn echo_row(table: &CharacterTable, name: &str, row: usize) -> Result<()> {
    table.check_row(row)?;
    eprintln!(
        "{name} = row {row}: degree {}, fingerprint {}",
        table.degree(row),
        table.fingerprint(row)
    );
    Ok(())
}

#[derive(Serialize)]
struct TableView<'a> {
    spec: String,
    fingerprints: Vec<String>,
    #[serde(flatten)]
    table: &'a crate::chartable::TableDocument,
}

impl Markdown for TableView<'_> {
    fn to_markdown(&self) -> String {
        let t = self.table;
        let mut s = format!("# Character table of `{}` (order {})\n\n", self.spec, t.order);
        let _ = write!(s, "| row | deg |");
        for c in 0..t.classes.len() {
            let _ = write!(s, " C{c} |");
        }
        let _ = write!(s, "\n|---|---|");
        s.push_str(&"---|".repeat(t.classes.len()));
        let _ = write!(s, "\n| size | |");
        for c in &t.classes {
            let _ = write!(s, " {} |", c.size);
        }
        let _ = write!(s, "\n| order | |");
        for c in &t.classes {
            let _ = write!(s, " {} |", c.rep_order);
        }
        for (r, row) in t.irreducibles.iter().enumerate() {
            let _ = write!(s, "\n| {r} | {} |", t.degrees[r]);
            for v in row {
                let _ = write!(s, " {v} |");
            }
        }
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
struct DecompositionView {
    chi: usize,
    psi: usize,
    eta: usize,
    constituents: Vec<ConstituentView>,
}

#[derive(Serialize)]
struct ConstituentView {
    row: usize,
    degree: u64,
    multiplicity: u64,
    fingerprint: String,
}

impl Markdown for DecompositionView {
    fn to_markdown(&self) -> String {
        let mut s = format!("# chi = {}, psi = {}: eta = {}\n\n", self.chi, self.psi, self.eta);
        s.push_str("| row | degree | multiplicity | fingerprint |\n|---|---|---|---|\n");
        for c in &self.constituents {
            let _ = writeln!(s, "| {} | {} | {} | {} |", c.row, c.degree, c.multiplicity, c.fingerprint);
        }
        s
    }
}

#[derive(Serialize)]
struct CaseView {
    chi: usize,
    psi: usize,
    prime: u64,
    case: crate::harness::ProductCase,
}

impl Markdown for CaseView {
    fn to_markdown(&self) -> String {
        let c = &self.case;
        format!(
            "# chi = {}, psi = {}, p = {}: {:?}\n\n- eta: {}\n- constituents: {:?}\n- degrees: {:?}\n- multiplicities: {:?}\n",
            self.chi, self.psi, self.prime, c.tag, c.eta, c.constituents.constituents, c.degree_histogram,
            c.multiplicity_profile
        )
    }
}

#[derive(Serialize)]
struct SelfProductView {
    chi: usize,
    shape: crate::harness::CaseTag,
    decomposition: crate::charops::Decomposition,
}

impl Markdown for SelfProductView {
    fn to_markdown(&self) -> String {
        format!(
            "# chi = {}: chi conj(chi) is {:?}\n\n- eta: {}\n- constituents: {:?}\n",
            self.chi, self.shape, self.decomposition.eta, self.decomposition.constituents
        )
    }
}

fn load(group: &str, opts: &BuildOptions) -> Result<(Built, CharacterTable)> {
    let built = build_from_text(&spec_text(group)?, opts)?;
    let table = table_for(&built);
    Ok((built, table))
}

fn execute(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    let opts = BuildOptions {
        cap: g.cap,
        stretch: g.stretch,
    };
    let fmt = g.format;
    match &cli.command {
        Command::Table(arg) => {
            let (built, table) = load(&arg.group, &opts)?;
            let doc = table.to_document();
            let view = TableView {
                spec: built.spec.to_string(),
                fingerprints: (0..table.len()).map(|r| table.fingerprint(r)).collect(),
                table: &doc,
            };
            render(&view, fmt, true)
        }
        Command::Product { group, chi, psi, p } => {
            let (_, table) = load(&group.group, &opts)?;
            echo_row(&table, "chi", *chi)?;
            echo_row(&table, "psi", *psi)?;
            let p = p.unwrap_or_else(|| table.degree(*chi));
            let case = classify_product(&table, *chi, *psi, p)?;
            let view = CaseView {
                chi: *chi,
                psi: *psi,
                prime: p,
                case,
            };
            render(&view, fmt, true)
        }
        Command::Decompose { group, chi, psi } => {
            let (_, table) = load(&group.group, &opts)?;
            echo_row(&table, "chi", *chi)?;
            echo_row(&table, "psi", *psi)?;
            let d = decompose_product(&table, *chi, *psi)?;
            let view = DecompositionView {
                chi: *chi,
                psi: *psi,
                eta: d.eta,
                constituents: d
                    .constituents
                    .iter()
                    .map(|&(row, multiplicity)| ConstituentView {
                        row,
                        degree: table.degree(row),
                        multiplicity,
                        fingerprint: table.fingerprint(row),
                    })
                    .collect(),
            };
            render(&view, fmt, true)
        }
        Command::Verify { group, p, corpus } => match corpus {
            Some(path) => {
                let corpus = if path.is_empty() {
                    Corpus::builtin()
                } else {
                    Corpus::parse(&std::fs::read_to_string(path)?)?
                };
                let report = run_corpus(&corpus, &opts)?;
                render(&report, fmt, report.pass)
            }
            None => {
                let spec = spec_text(group.as_deref().expect("clap enforces --group"))?;
                let p = p.expect("clap enforces --p");
                let report = run_group(&spec, &spec, p, &opts, true)?;
                eprintln!(
                    "{} ordered pairs in {:.2?}",
                    report.classification.pairs_checked, report.elapsed
                );
                render(&report, fmt, report.pass)
            }
        },
        Command::SelfProduct { group, chi } => {
            let (_, table) = load(&group.group, &opts)?;
            echo_row(&table, "chi", *chi)?;
            let (shape, decomposition) = verify_self_product_lemma(&table, *chi)?;
            render(
                &SelfProductView {
                    chi: *chi,
                    shape,
                    decomposition,
                },
                fmt,
                true,
            )
        }
        Command::Spectrum { group, p } => {
            let (_, table) = load(&group.group, &opts)?;
            render(&eta_spectrum(&table, *p)?, fmt, true)
        }
        Command::Examples { p } => {
            let start = Instant::now();
            let report = reproduce_examples(*p, &opts)?;
            eprintln!("examples at p = {p} in {:.2?}", start.elapsed());
            render(&report, fmt, report.pass)
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build();
    let outcome = match pool {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => Err(Error::Io(e.to_string())),
    };
    match outcome {
        Ok(out) => {
            let written = match &cli.global.output {
                Some(path) => std::fs::write(path, &out.text).map_err(Error::from),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_FAIL
                }
                Ok(()) if out.pass => EXIT_OK,
                Ok(()) => {
                    eprintln!("FAIL");
                    EXIT_FAIL
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
