//! The `frobkit` command line.
//!
//! Exit codes: 0 success, 1 internal failure, 2 bad input or configuration,
//! 3 resource budget exceeded, 4 a sweep finished but some row failed.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::frobenius::frobenius_q;
use crate::groebner::Budget;
use crate::ideal::{Ideal, MaximalIdeal};
use crate::ideal_io::{bad_prime_bound, parse_ideal_file, reduce_mod_p, IntegerIdealSpec};
use crate::linkage::{build_generic_linkage, run_comparison, SweepOptions};
use crate::monomial::MonomialOrder;
use crate::thresholds::{fpt_estimate, is_f_pure_level, lce_estimate, test_ideal};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_SWEEP_FAILED: i32 = 4;

const DEFAULT_PRIME: u64 = 32003;

#[derive(Debug, Parser)]
#[command(name = "frobkit", version, about = "Frobenius powers, thresholds and generic linkage over F_p")]
pub struct Cli {
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Budget overrides; unset values come from `FROBKIT_MAX_*` or defaults.
#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long, global = true)]
    pub max_basis: Option<usize>,
    #[arg(long, global = true)]
    pub max_degree: Option<u64>,
    #[arg(long, global = true)]
    pub max_generators: Option<usize>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Ideal file.
    #[arg(long)]
    pub ideal: PathBuf,
    /// Characteristic.
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub p: u64,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    #[arg(long)]
    pub ideal: PathBuf,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 2)]
    pub emax: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis, one generator per line.
    Gb {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
    },
    /// Colon ideal (I : J), printed as a reduced Gröbner basis.
    Colon {
        #[command(flatten)]
        input: InputArgs,
        /// The ideal J.
        #[arg(long)]
        by: PathBuf,
    },
    /// Krull dimension of R/I (−1 for the unit ideal).
    Dim {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Height as n − dim; assumes the ideal is equidimensional.
    Height {
        #[command(flatten)]
        input: InputArgs,
    },
    /// F-pure threshold bounds per level, as CSV.
    Fpt {
        #[command(flatten)]
        level: LevelArgs,
    },
    /// Least critical exponent bounds per level, as CSV.
    Lce {
        #[command(flatten)]
        level: LevelArgs,
        /// Binary search after a monotonicity pre-check.
        #[arg(long)]
        fast: bool,
    },
    /// Test ideal τ(I^t), as CSV rows `t,e,certified,generator`.
    Tau {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        t: Rational64,
    },
    /// F-purity of (R, I^t) at level e.
    Fpure {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: Rational64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Use ⌈tq⌉ instead of ⌊t(q−1)⌋.
        #[arg(long)]
        strong: bool,
    },
    /// Generic linkage data: S, the g_i, L and J.
    Link {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Threshold comparison of I, L and J across primes.
    Sweep {
        #[arg(long)]
        ideal: PathBuf,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        emax: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Format::Csv, Format::Md])]
        format: Vec<Format>,
        #[arg(long)]
        fast: bool,
    },
}

/// Maps an error to the documented exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Resource { .. } | Error::Overflow(_) => EXIT_RESOURCE,
        Error::NotPrime(_)
        | Error::AmbientMismatch
        | Error::Parse { .. }
        | Error::UnknownVariable { .. }
        | Error::ZeroGenerator { .. }
        | Error::VanishingGenerator { .. }
        | Error::BadPrime { .. }
        | Error::ImproperIdeal
        | Error::ZeroIdeal
        | Error::NotInMaximalIdeal
        | Error::DegenerateHeight { .. }
        | Error::EmptyRing
        | Error::Invalid(_)
        | Error::Config(_)
        | Error::Io(_) => EXIT_INPUT,
    }
}

fn budget(args: &BudgetArgs) -> Result<Budget> {
    let mut b = Budget::from_env()?;
    if let Some(v) = args.max_basis {
        b.max_basis = v;
    }
    if let Some(v) = args.max_degree {
        b.max_degree = v;
    }
    if let Some(v) = args.max_generators {
        b.max_generators = v;
    }
    if b.max_basis == 0 || b.max_degree == 0 || b.max_generators == 0 {
        return Err(Error::Config("budgets must be positive".into()));
    }
    Ok(b)
}

fn read_spec(path: &Path) -> Result<IntegerIdealSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_ideal_file(&text)
}

fn load(path: &Path, p: u64, budget: Budget) -> Result<(IntegerIdealSpec, Ideal)> {
    let spec = read_spec(path)?;
    let ideal = reduce_mod_p(&spec, p)?.with_budget(budget);
    Ok((spec, ideal))
}

fn id_of(spec: &IntegerIdealSpec, path: &Path) -> String {
    spec.label.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "ideal".into())
    })
}

fn print_gens(out: &mut impl Write, ideal: &Ideal) -> Result<()> {
    for g in ideal.groebner()?.polys() {
        writeln!(out, "{g}")?;
    }
    Ok(())
}

/// Writes `contents` to `dir/name` through a temporary file in the same
/// directory, so readers never see a partial report.
fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> Result<()> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(dir.join(name)).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
pub fn execute(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> Result<i32> {
    let budget = budget(&cli.budget)?;
    match &cli.command {
        Command::Gb { input, order } => {
            let (_, ideal) = load(&input.ideal, input.p, budget)?;
            let order = match order {
                OrderArg::Grevlex => MonomialOrder::Grevlex,
                OrderArg::Lex => MonomialOrder::Lex,
            };
            for g in ideal.groebner_in(order)?.polys() {
                writeln!(out, "{g}")?;
            }
        }
        Command::Colon { input, by } => {
            let (_, a) = load(&input.ideal, input.p, budget)?;
            let spec_b = read_spec(by)?;
            if spec_b.variables != a.ring().var_names() {
                return Err(Error::AmbientMismatch);
            }
            // same variables and prime, so the rings compare equal
            let b = reduce_mod_p(&spec_b, input.p)?;
            print_gens(out, &a.colon(&b)?)?;
        }
        Command::Dim { input } => {
            let (_, ideal) = load(&input.ideal, input.p, budget)?;
            writeln!(out, "{}", ideal.dimension()?)?;
        }
        Command::Height { input } => {
            let (_, ideal) = load(&input.ideal, input.p, budget)?;
            writeln!(err, "note: height is n - dim, valid for equidimensional ideals")?;
            writeln!(out, "{}", ideal.height()?)?;
        }
        Command::Fpt { level } => {
            let (spec, ideal) = load(&level.ideal, level.p, budget)?;
            let m = MaximalIdeal::origin(ideal.ring())?;
            let table = fpt_estimate(&ideal, &m, level.emax, &id_of(&spec, &level.ideal))?;
            table.write_csv(&mut *out, true)?;
        }
        Command::Lce { level, fast } => {
            let (spec, ideal) = load(&level.ideal, level.p, budget)?;
            let m = MaximalIdeal::origin(ideal.ring())?;
            let table = lce_estimate(&ideal, &m, level.emax, &id_of(&spec, &level.ideal), *fast)?;
            table.write_csv(&mut *out, true)?;
        }
        Command::Tau { level, t } => {
            let (_, ideal) = load(&level.ideal, level.p, budget)?;
            let tau = test_ideal(&ideal, *t, level.emax)?;
            let mut w = csv::Writer::from_writer(&mut *out);
            let io_err = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(["t", "e", "certified", "generator"]).map_err(io_err)?;
            for g in tau.ideal.groebner()?.polys() {
                w.write_record([
                    tau.t.to_string(),
                    tau.stabilized_at_e.to_string(),
                    tau.certified.to_string(),
                    g.to_string(),
                ])
                .map_err(io_err)?;
            }
            w.flush()?;
        }
        Command::Fpure { ideal, p, t, e, strong } => {
            let (_, ideal) = load(ideal, *p, budget)?;
            frobenius_q(*p, *e)?;
            let m = MaximalIdeal::origin(ideal.ring())?;
            writeln!(out, "{}", is_f_pure_level(&ideal, *t, *e, &m, *strong)?)?;
        }
        Command::Link { input } => {
            let (_, ideal) = load(&input.ideal, input.p, budget)?;
            let ld = build_generic_linkage(&ideal)?;
            writeln!(out, "S: {}", ld.ring.var_names().join(", "))?;
            writeln!(out, "c: {}", ld.height)?;
            for (i, g) in ld.generic.iter().enumerate() {
                writeln!(out, "g{}: {g}", i + 1)?;
            }
            writeln!(out, "L:")?;
            for g in ld.link_ideal.gens() {
                writeln!(out, "  {g}")?;
            }
            writeln!(out, "J:")?;
            for g in ld.linked.gens() {
                writeln!(out, "  {g}")?;
            }
        }
        Command::Sweep { ideal, primes, emax, jobs, out: dir, format, fast } => {
            let spec = read_spec(ideal)?;
            let bound = bad_prime_bound(&spec).0;
            let mut opts = SweepOptions::new(primes.clone(), *emax);
            opts.jobs = *jobs;
            opts.fast = *fast;
            opts.budget = budget;
            let mut report = run_comparison(&spec, &opts)?;
            if spec.label.is_none() {
                report.label = id_of(&spec, ideal);
            }
            std::fs::create_dir_all(dir)?;
            if format.contains(&Format::Csv) {
                write_atomic(dir, "report.csv", report.to_csv()?.as_bytes())?;
            }
            if format.contains(&Format::Md) {
                write_atomic(dir, "report.md", report.to_markdown().as_bytes())?;
            }
            writeln!(
                out,
                "rows: {}, failed cells: {}, chain_ok: {}, lce_eq: {}, structure: {}, bad-prime bound: {bound}",
                report.rows.len(),
                report.failures.len(),
                report.chain_ok(),
                report.lce_levelwise_equal(),
                report.structure_ok()
            )?;
            if !report.success() {
                return Ok(EXIT_SWEEP_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    match execute(&cli, &mut out, &mut err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
