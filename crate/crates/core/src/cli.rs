//! Command-line front end. Every command prints JSON lines on stdout and
//! exits with 0 on success, 2 on bad input and 3 when fuel runs out.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::kernel::{self, Fuel, Outcome, ProgramCode};
use crate::nat::Nat;
use crate::nplus;
use crate::reals::{self, RealSpec};
use crate::topology::{self, FiniteSpace, RelSDClaim};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("out of fuel after {steps} steps")]
    OutOfFuel { steps: u64 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::OutOfFuel { .. } => 3,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

impl From<reals::RealsError> for CliError {
    fn from(e: reals::RealsError) -> Self {
        match e {
            reals::RealsError::OutOfFuel { steps } => CliError::OutOfFuel { steps },
            other => input(other),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "efftop", version, about = "Computable topology on a register machine")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FuelArg {
    /// Step budget for the whole command.
    #[arg(long)]
    pub fuel: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operations on real names.
    #[command(subcommand)]
    Real(RealCommand),
    /// Diagonalization table over a machine list, with u_n = 2^-n and x = 0.
    Diag {
        /// Machine-list file: decimal codes, optional `#halts k` or `#loops`.
        #[arg(long)]
        machines: PathBuf,
        #[arg(long, default_value_t = 20)]
        bits: u64,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Membership of a real in an open, or of a point in a finite-space open.
    Member {
        /// Real spec, or a point index with `--space`.
        #[arg(long)]
        x: String,
        /// `full`, `empty` or intervals like `(0/1,1/1);(2,3)`; with
        /// `--space`, a comma-separated list of point indices.
        #[arg(long)]
        open: String,
        /// Finite-space JSON file.
        #[arg(long)]
        space: Option<PathBuf>,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Finds a finite point in a semi-decidable subset of ℕ⁺ containing ∞.
    Wso {
        /// `full`, `at-least:k`, `position:i=v,...`, `beta:c,...` or `code:N`.
        #[arg(long)]
        set: String,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Rebuilds a real name from its neighbourhood filter and queries it.
    SoberRecover {
        #[arg(long)]
        x: String,
        #[arg(long)]
        bits: u64,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Limit of a fixture sequence, optionally through a modulus.
    Limit {
        /// `pow2`, `neg-pow2`, `one-minus-pow2`, `reciprocal`, `sqrt2` or `const:q`.
        #[arg(long)]
        seq: String,
        /// `pow2` for the modulus n ↦ 2n + 2.
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        bits: u64,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Norm of an open around the limit of a fixture normed sequence,
    /// read back through the induced map out of ℕ⁺.
    NplusNorm {
        /// `pow2`, `one-minus-pow2` or `neg-pow2`.
        #[arg(long)]
        witness: String,
        #[arg(long)]
        open: String,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Finite spaces.
    #[command(subcommand)]
    Finite(FiniteCommand),
    /// Bounded search for a code separating B-names from A-names.
    NonsdSweep {
        /// Comma-separated A-names.
        #[arg(long, value_delimiter = ',')]
        a: Vec<Nat>,
        /// Comma-separated B-names.
        #[arg(long, value_delimiter = ',')]
        b: Vec<Nat>,
        #[arg(long)]
        max_code: u64,
        #[command(flatten)]
        fuel: FuelArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum RealCommand {
    /// `approx(x, bits)`.
    Approx {
        /// `rat:p/q`, `sqrt2` or `limit-fast:<file>`.
        #[arg(long)]
        x: String,
        #[arg(long)]
        bits: u64,
        #[arg(long, default_value_t = 1_000_000)]
        fuel: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FiniteCommand {
    /// Pairs (x, A) with x outside A but in its closure.
    Markov {
        #[arg(long)]
        space: PathBuf,
    },
    /// The open denoted by a semi-decider.
    TauFromSd {
        #[arg(long)]
        space: PathBuf,
        /// Semi-decider code, or `set:i,j,...` for the table-lookup acceptor.
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 12)]
        rounds: u32,
    },
}

/// Parses the arguments, runs the command and prints its JSON lines.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match run(&cli.command) {
        Ok(lines) => {
            for l in lines {
                use std::io::Write;
                // a closed pipe is not worth reporting
                let _ = writeln!(out, "{l}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("efftop: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Result<Vec<Value>, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(input)?;
    run(&cli.command)
}

/// Runs one command and returns its output lines.
pub fn run(cmd: &Command) -> Result<Vec<Value>, CliError> {
    match cmd {
        Command::Real(RealCommand::Approx { x, bits, fuel }) => {
            let name = RealSpec::parse(x)?.build()?;
            let (q, steps) = halted(reals::approx(&name, *bits, Fuel(*fuel)))?;
            Ok(vec![json!({"q": reals::format_rational(&reals::cq_decode(&q)), "steps": steps})])
        }
        Command::Diag { machines, bits, fuel } => {
            let list = kernel::parse_machine_list(&read(machines)?).map_err(input)?;
            let fam = nplus::diagonal_family(&reals::sequences::pow2_neg());
            let rows = nplus::diagonal_table(&fam, &BigRational::zero(), &list, *bits, Fuel(fuel.fuel))?;
            rows.iter().map(|r| serde_json::to_value(r).map_err(input)).collect()
        }
        Command::Member { x, open, space: Some(path), fuel } => {
            let space = FiniteSpace::from_json(&read(path)?).map_err(input)?;
            let point: usize = x.trim().parse().map_err(|_| input(format!("bad point index {x:?}")))?;
            let set = parse_indices(open)?;
            let idx = space.index_of(&set).ok_or_else(|| input(format!("{open:?} is not open")))?;
            let out = topology::member(space.descriptor(), &Nat::from(point), &space.open_name(idx), Fuel(fuel.fuel));
            let (_, steps) = halted(out)?;
            Ok(vec![json!({"member": true, "steps": steps})])
        }
        Command::Member { x, open, space: None, fuel } => {
            let name = RealSpec::parse(x)?.build()?;
            let o = reals::parse_open(open)?;
            let (_, steps) = halted(reals::member_real(&name, &o, Fuel(fuel.fuel)))?;
            Ok(vec![json!({"member": true, "steps": steps})])
        }
        Command::Wso { set, fuel } => {
            let a = parse_nplus_set(set)?;
            match nplus::wso_search(&a, &nplus::infinity_name(), Fuel(fuel.fuel)) {
                Some(p) => Ok(vec![json!({"n": p.n, "name": p.name.nat().to_string(), "steps": p.steps})]),
                None => Err(CliError::OutOfFuel { steps: fuel.fuel }),
            }
        }
        Command::SoberRecover { x, bits, fuel } => {
            let name = RealSpec::parse(x)?.build()?;
            let t = topology::nu_to_taustar(&reals::real_space(), name.nat());
            let (q, steps) = halted(reals::sober_recover_real(&t.code, *bits, Fuel(fuel.fuel)))?;
            Ok(vec![json!({"q": reals::format_rational(&reals::cq_decode(&q)), "steps": steps})])
        }
        Command::Limit { seq, modulus, bits, fuel } => {
            let s = parse_sequence(seq)?;
            let lim = match modulus.as_deref() {
                None => reals::limit_fast(&s),
                Some("pow2") => reals::limit_with_modulus(&s, &reals::sequences::pow2_modulus()),
                Some(other) => return Err(input(format!("unknown modulus {other:?}"))),
            };
            let (q, steps) = halted(reals::approx(&lim, *bits, Fuel(fuel.fuel)))?;
            Ok(vec![json!({"q": reals::format_rational(&reals::cq_decode(&q)), "steps": steps})])
        }
        Command::NplusNorm { witness, open, fuel } => {
            let (_, w, _) = nplus::real_normed_witnesses()
                .into_iter()
                .find(|(n, _, _)| n == witness)
                .ok_or_else(|| input(format!("unknown witness {witness:?}")))?;
            let map = nplus::map_from_normed(&w, &reals::real_space());
            let o = reals::parse_open(open)?;
            let (n, steps) = halted(nplus::norm_from_map(&map, o.nat(), Fuel(fuel.fuel)))?;
            Ok(vec![json!({"n": n.to_u64_saturating(), "steps": steps})])
        }
        Command::Finite(FiniteCommand::Markov { space }) => {
            let space = FiniteSpace::from_json(&read(space)?).map_err(input)?;
            Ok(vec![json!(topology::markov_obstructions(&space))])
        }
        Command::Finite(FiniteCommand::TauFromSd { space, set, rounds }) => {
            let space = FiniteSpace::from_json(&read(space)?).map_err(input)?;
            let sd = match set.strip_prefix("set:") {
                Some(list) => {
                    let pts: Vec<Nat> = parse_indices(list)?.into_iter().map(Nat::from).collect();
                    if pts.is_empty() { kernel::programs::diverge() } else { kernel::finite_acceptor(&pts) }
                }
                None => ProgramCode(set.trim().parse().map_err(|_| input(format!("bad code {set:?}")))?),
            };
            let found = topology::finite_tau_from_sd(&space, &sd, *rounds).map_err(input)?;
            let points: Vec<usize> = space.opens()[found.index].iter().copied().collect();
            Ok(vec![json!({"index": found.index, "points": points, "name": found.name.to_string()})])
        }
        Command::NonsdSweep { a, b, max_code, fuel } => {
            let claim = RelSDClaim { a_names: a.clone(), b_names: b.clone(), claimed: true, witness: None };
            let rep = nplus::bounded_nonsd_search(&claim, *max_code, Fuel(fuel.fuel));
            Ok(vec![json!({
                "refuted_by": rep.refuted_by.map(|c| c.nat().to_string()),
                "max_code": rep.max_code,
                "fuel": rep.fuel,
            })])
        }
    }
}

fn halted(o: Outcome) -> Result<(Nat, u64), CliError> {
    match o {
        Outcome::Halted { value, steps } => Ok((value, steps)),
        Outcome::OutOfFuel { steps } => Err(CliError::OutOfFuel { steps }),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn parse_indices(s: &str) -> Result<topology::finite::PointSet, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| input(format!("bad point index {t:?}"))))
        .collect()
}

fn parse_u64(s: &str) -> Result<u64, CliError> {
    s.trim().parse().map_err(|_| input(format!("bad number {s:?}")))
}

fn parse_nplus_set(spec: &str) -> Result<ProgramCode, CliError> {
    let spec = spec.trim();
    if spec == "full" {
        return Ok(kernel::programs::identity());
    }
    let (kind, arg) = spec.split_once(':').ok_or_else(|| input(format!("bad set {spec:?}")))?;
    match kind {
        "at-least" => match parse_u64(arg)? {
            0 => Ok(kernel::programs::identity()),
            k => Ok(nplus::position_test(&[(k - 1, 0)])),
        },
        "position" => {
            let conds = arg
                .split(',')
                .map(|c| {
                    let (i, v) = c.split_once('=').ok_or_else(|| input(format!("bad condition {c:?}")))?;
                    Ok((parse_u64(i)?, parse_u64(v)?))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(nplus::position_test(&conds))
        }
        "beta" => {
            let codes = arg.split(',').map(parse_u64).collect::<Result<Vec<_>, _>>()?;
            let o = nplus::basic_open(&codes);
            nplus::nplus_space()
                .malcev_semidecider(o.nat(), topology::CONSTRUCTION_FUEL)
                .map(|sd| sd.code)
                .ok_or_else(|| input("malcev translation did not finish"))
        }
        "code" => Ok(ProgramCode(arg.trim().parse().map_err(|_| input(format!("bad code {arg:?}")))?)),
        _ => Err(input(format!("bad set {spec:?}"))),
    }
}

fn parse_sequence(spec: &str) -> Result<ProgramCode, CliError> {
    use reals::sequences as s;
    match spec.trim() {
        "pow2" => Ok(s::pow2_neg()),
        "neg-pow2" => Ok(s::neg_pow2_neg()),
        "one-minus-pow2" => Ok(s::one_minus_pow2_neg()),
        "reciprocal" => Ok(s::reciprocal()),
        "sqrt2" => Ok(s::sqrt2_truncations()),
        other => match other.strip_prefix("const:") {
            Some(q) => Ok(s::constant(&reals::parse_rational(q).map_err(input)?)),
            None => Err(input(format!("unknown sequence {other:?}"))),
        },
    }
}
