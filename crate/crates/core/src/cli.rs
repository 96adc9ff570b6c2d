//! The `padic-charnet` command-line front end.
//!
//! Every command reads and writes JSON; `-` stands for stdin or stdout.
//! Exit codes: 0 success (or zero loss), 2 positive minimum, 3 solver
//! overflow, 4 unsupported compilation, 64 usage, 65 malformed input,
//! 74 I/O failure.

use std::fs;
use std::io::{self, Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characters::{Character, CharacterSpec, EvalMethod};
use crate::error::Error;
use crate::network::{CharacterNetwork, Dataset, DatasetFile, NetworkFile};
use crate::padic::{parse_int, reduce_signed, PadicContext, ScaledRepr};
use crate::polysys::{compile_residual, SystemFile, SystemInput, VariableLayout};
use crate::solver::{
    ddp_max_exponent, train, DdpReportFile, LossFile, NormKind, SolverConfig, DEFAULT_ENUMERATION_BUDGET,
    DEFAULT_FRONTIER_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_POSITIVE_LOSS: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_SCHEMA: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(name = "padic-charnet", version, about = "p-adic character networks, exactly")]
pub struct Cli {
    /// Prime p.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Precision exponent E (values are known mod p^E).
    #[arg(long = "E", global = true)]
    pub precision: Option<u32>,
    /// Denominator exponent F (outputs lie in p^-F Zp).
    #[arg(long = "F", global = true)]
    pub denominator_exp: Option<u32>,
    /// Largest number of witnesses kept per digit level.
    #[arg(long, global = true, default_value_t = DEFAULT_FRONTIER_BUDGET)]
    pub frontier_budget: usize,
    /// Largest number of points visited by exhaustive search.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub enumeration_budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct CharacterArgs {
    /// Base a of the character x -> a^x (a = 1 mod p).
    #[arg(long, conflicts_with = "exp")]
    pub a: Option<String>,
    /// Use the base exp_p(q) instead of an explicit a.
    #[arg(long)]
    pub exp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a^x mod p^E.
    CharEval {
        #[command(flatten)]
        chi: CharacterArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value_t = EvalMethod::Binary)]
        method: EvalMethod,
        /// Print all three methods and whether they agree.
        #[arg(long)]
        all_methods: bool,
    },
    /// Forward a dataset through a network and report residual valuations.
    Eval {
        #[arg(long)]
        network: String,
        #[arg(long)]
        data: String,
        #[arg(long, value_enum, default_value_t = EvalMethod::Binary)]
        method: EvalMethod,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Compile the training residual of a dataset into a polynomial system.
    Compile {
        #[arg(long)]
        data: String,
        /// N,D,M
        #[arg(long)]
        shape: String,
        #[command(flatten)]
        chi: CharacterArgs,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Largest e <= cap such that a polynomial system has a zero mod p^e.
    Ddp {
        #[arg(long)]
        system: String,
        /// Defaults to E.
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Fit a network of the given shape to a dataset with the exact minimum loss.
    Fit {
        #[arg(long)]
        data: String,
        /// N,D,M
        #[arg(long)]
        shape: String,
        #[arg(long, value_enum, default_value_t = NormKind::Linf)]
        norm: NormKind,
        #[command(flatten)]
        chi: CharacterArgs,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Time the three character evaluation methods over a (p, E) grid.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "4,8,16,32")]
        precisions: Vec<u32>,
        /// Evaluations per cell.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit JSON instead of a text table.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

/// A failed command: an exit code and a message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn schema(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_SCHEMA,
            message: message.into(),
        }
    }

    fn io(path: &str, err: io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{path}: {err}"),
        }
    }

    /// Errors raised while running a solver or compiler.
    fn solver(err: Error) -> Self {
        let code = match err {
            Error::FrontierOverflow { .. } | Error::BudgetExceeded { .. } => EXIT_OVERFLOW,
            Error::UnsupportedCompilation(_) => EXIT_UNSUPPORTED,
            Error::NotPrime(_) | Error::NonUnit { .. } => EXIT_USAGE,
            _ => EXIT_SCHEMA,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Hyperparameters gathered from flags and input files, checked before
/// any command runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub p: Option<u64>,
    pub precision: Option<u32>,
    pub denominator_exp: Option<u32>,
    pub hidden: Option<usize>,
    pub norm: NormKind,
    pub character: Option<CharacterSpec>,
    pub method: EvalMethod,
    pub solver: SolverConfig,
    pub seed: u64,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Self {
        Self {
            p: cli.p,
            precision: cli.precision,
            denominator_exp: cli.denominator_exp,
            hidden: None,
            norm: NormKind::Linf,
            character: None,
            method: EvalMethod::Binary,
            solver: SolverConfig {
                frontier_budget: cli.frontier_budget,
                enumeration_budget: cli.enumeration_budget,
            },
            seed: 0,
        }
    }

    /// Rejects out-of-range values, naming the offending field.
    pub fn validate(&self) -> CliResult<()> {
        if let Some(p) = self.p {
            if !crate::padic::is_prime(p) {
                return Err(Failure::usage(format!("--p: {p} is not prime")));
            }
        }
        if self.precision == Some(0) {
            return Err(Failure::usage("--E: precision must be at least 1"));
        }
        if self.hidden == Some(0) {
            return Err(Failure::usage("--shape: hidden dimension D must be at least 1"));
        }
        if self.solver.frontier_budget == 0 {
            return Err(Failure::usage("--frontier-budget: must be positive"));
        }
        if let Some(spec) = &self.character {
            spec.build().map_err(|e| Failure::usage(format!("character: {e}")))?;
        }
        Ok(())
    }

    fn require_p(&self) -> CliResult<u64> {
        self.p.ok_or_else(|| Failure::usage("--p is required"))
    }

    fn require_precision(&self) -> CliResult<u32> {
        self.precision.ok_or_else(|| Failure::usage("--E is required"))
    }

    /// Checks flags against the values a file declares; flags that were
    /// not given adopt the file's values.
    fn agree_with(&mut self, p: u64, precision: u32, denominator_exp: u32) -> CliResult<()> {
        let check = |flag: &str, given: Option<u64>, found: u64| -> CliResult<()> {
            match given {
                Some(g) if g != found => Err(Failure::usage(format!(
                    "{flag}: flag says {g}, input file says {found}"
                ))),
                _ => Ok(()),
            }
        };
        check("--p", self.p, p)?;
        check("--E", self.precision.map(u64::from), precision.into())?;
        check("--F", self.denominator_exp.map(u64::from), denominator_exp.into())?;
        self.p = Some(p);
        self.precision = Some(precision);
        self.denominator_exp = Some(denominator_exp);
        Ok(())
    }

    /// The configured character, known to `digits` p-adic digits.
    fn character_at(&self, digits: u32) -> CliResult<Character> {
        let spec = self.character.clone().unwrap_or(CharacterSpec {
            p: self.require_p()?,
            precision: digits,
            a: None,
            exp: Some(true),
        });
        let spec = CharacterSpec {
            precision: digits,
            ..spec
        };
        spec.build().map_err(|e| Failure::usage(format!("character: {e}")))
    }
}

fn character_spec(args: &CharacterArgs, p: Option<u64>, precision: u32) -> CliResult<Option<CharacterSpec>> {
    if args.a.is_none() && !args.exp {
        return Ok(None);
    }
    let p = p.ok_or_else(|| Failure::usage("--p is required to define a character"))?;
    Ok(Some(CharacterSpec {
        p,
        precision,
        a: args.a.clone(),
        exp: args.exp.then_some(true),
    }))
}

fn parse_shape(s: &str) -> CliResult<VariableLayout> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Failure::usage(format!("--shape: expected N,D,M, got {s:?}")))?;
    match parts.as_slice() {
        [n, d, m] => Ok(VariableLayout::new(*n, *d, *m)),
        _ => Err(Failure::usage(format!("--shape: expected N,D,M, got {s:?}"))),
    }
}

fn read_text(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::io("<stdin>", e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::io(path, e))
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> CliResult<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::schema(format!("{path}: {e}")))
}

fn write_text(path: &str, text: &str) -> CliResult<()> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| Failure::io("<stdout>", e))
    } else {
        fs::write(path, text).map_err(|e| Failure::io(path, e))
    }
}

fn write_json<T: Serialize>(path: &str, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    write_text(path, &text)
}

fn load_dataset(path: &str, config: &mut RunConfig) -> CliResult<Dataset> {
    let file: DatasetFile = read_json(path)?;
    config.agree_with(file.p, file.precision, file.denominator_exp)?;
    Dataset::from_file(&file).map_err(|e| Failure::schema(format!("{path}: {e}")))
}

/// Output of `eval`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalFile {
    pub outputs: Vec<Vec<ScaledRepr>>,
    /// `"k"` for an exact valuation, `">= E"` when zero mod `p^E`.
    pub residual_valuations: Vec<Vec<String>>,
}

/// Output of `fit`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitFile {
    pub network: NetworkFile,
    pub loss: LossFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<DdpReportFile>,
}

/// One cell of the `bench` table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub p: u64,
    #[serde(rename = "E")]
    pub precision: u32,
    pub method: EvalMethod,
    pub samples: usize,
    pub mean_ns: f64,
    pub agree: bool,
}

fn cmd_char_eval(config: &RunConfig, chi: &CharacterArgs, x: &str, method: EvalMethod, all: bool) -> CliResult<i32> {
    let p = config.require_p()?;
    let precision = config.require_precision()?;
    if chi.a.is_none() && !chi.exp {
        return Err(Failure::usage("one of --a or --exp is required"));
    }
    let spec = character_spec(chi, Some(p), precision)?.expect("checked above");
    let character = spec.build().map_err(|e| Failure::usage(format!("character: {e}")))?;
    let x = parse_int(x).map_err(|e| Failure::usage(format!("--x: {e}")))?;
    // x is a p-adic integer; only its class mod p^(E-1) matters
    let x = reduce_signed(&x, &character.context().pow(precision - 1));
    if !all {
        write_text("-", &format!("{}\n", character.eval(&x, method).value()))?;
        return Ok(EXIT_OK);
    }
    let values: Vec<(EvalMethod, BigUint)> = [EvalMethod::Mahler, EvalMethod::Taylor, EvalMethod::Binary]
        .into_iter()
        .map(|m| (m, character.eval(&x, m).into_value()))
        .collect();
    let agree = values.iter().all(|(_, v)| *v == values[0].1);
    let mut table = String::from("method  value\n");
    for (m, v) in &values {
        table.push_str(&format!("{:<7} {v}\n", m.to_string()));
    }
    table.push_str(&format!("agree   {}\n", if agree { "yes" } else { "no" }));
    write_text("-", &table)?;
    Ok(if agree { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_eval(config: &mut RunConfig, network: &str, data: &str, method: EvalMethod, out: &str) -> CliResult<i32> {
    if network == "-" && data == "-" {
        return Err(Failure::usage("--network and --data cannot both read stdin"));
    }
    let net_file: NetworkFile = read_json(network)?;
    let net = CharacterNetwork::from_file(&net_file).map_err(|e| Failure::schema(format!("{network}: {e}")))?;
    let data = load_dataset(data, config)?;
    if net.context() != data.context() || net.denominator_exp() != data.denominator_exp() {
        return Err(Failure::schema("network and dataset disagree on p, E or F"));
    }
    let mut outputs = Vec::with_capacity(data.len());
    for s in data.samples() {
        let y = net.forward_with(&s.x, method).map_err(Failure::solver)?;
        outputs.push(y.iter().map(|v| v.repr()).collect());
    }
    let residual_valuations = net
        .residual_valuations(&data)
        .map_err(Failure::solver)?
        .iter()
        .map(|row| row.iter().map(|v| v.to_string()).collect())
        .collect();
    write_json(
        out,
        &EvalFile {
            outputs,
            residual_valuations,
        },
    )?;
    Ok(EXIT_OK)
}

fn cmd_compile(config: &mut RunConfig, data: &str, shape: &str, chi: &CharacterArgs, out: &str) -> CliResult<i32> {
    let layout = parse_shape(shape)?;
    config.hidden = Some(layout.hidden);
    let data = load_dataset(data, config)?;
    let digits = config.require_precision()? + config.denominator_exp.unwrap_or(0);
    config.character = character_spec(chi, config.p, digits)?;
    config.validate()?;
    let character = config.character_at(digits)?;
    let system = compile_residual(layout, &character, &data).map_err(Failure::solver)?;
    write_json(out, &system.to_file())?;
    Ok(EXIT_OK)
}

fn cmd_ddp(config: &mut RunConfig, system: &str, cap: Option<u32>, out: &str) -> CliResult<i32> {
    let input: SystemInput = read_json(system)?;
    let file: SystemFile = input.into_file();
    let p = match (config.p, file.p) {
        (Some(a), Some(b)) if a != b => {
            return Err(Failure::usage(format!("--p: flag says {a}, system file says {b}")))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Failure::usage("--p is required")),
    };
    config.p = Some(p);
    config.validate()?;
    let cap = cap
        .or(config.precision)
        .or(file.precision)
        .ok_or_else(|| Failure::usage("--cap (or --E) is required"))?;
    let l = file.resolved_num_vars().map_err(|e| Failure::schema(e.to_string()))?;
    let polys = file.polynomials().map_err(|e| Failure::schema(e.to_string()))?;
    let report = ddp_max_exponent(&polys, p, l, cap, &config.solver).map_err(Failure::solver)?;
    write_json(out, &report.to_file())?;
    Ok(if report.hit_cap { EXIT_OK } else { EXIT_POSITIVE_LOSS })
}

fn cmd_fit(
    config: &mut RunConfig,
    data: &str,
    shape: &str,
    norm: NormKind,
    chi: &CharacterArgs,
    out: &str,
) -> CliResult<i32> {
    let layout = parse_shape(shape)?;
    config.hidden = Some(layout.hidden);
    config.norm = norm;
    let data = load_dataset(data, config)?;
    let digits = config.require_precision()? + config.denominator_exp.unwrap_or(0);
    config.character = character_spec(chi, config.p, digits)?;
    config.validate()?;
    let character = config.character_at(digits)?;
    let result = train(layout, &character, &data, norm, &config.solver).map_err(Failure::solver)?;
    write_json(
        out,
        &FitFile {
            network: result.network.to_file(),
            loss: result.loss.to_file(),
            report: result.report.as_ref().map(|r| r.to_file()),
        },
    )?;
    Ok(if result.loss.is_zero_within_precision() {
        EXIT_OK
    } else {
        EXIT_POSITIVE_LOSS
    })
}

fn bench_rows(primes: &[u64], precisions: &[u32], samples: usize, seed: u64) -> CliResult<Vec<BenchRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for &p in primes {
        for &precision in precisions {
            let ctx = PadicContext::new(p, precision).map_err(|e| Failure::usage(format!("--primes: {e}")))?;
            let chi = Character::new(&ctx, BigUint::from(p + 1)).map_err(Failure::solver)?;
            let modulus = ctx.pow(precision.saturating_sub(1));
            let xs: Vec<BigUint> = (0..samples)
                .map(|_| reduce_signed(&BigInt::from(rng.gen::<u128>()), &modulus))
                .collect();
            let reference: Vec<BigUint> = xs.iter().map(|x| chi.eval_binary(x).into_value()).collect();
            for method in [EvalMethod::Mahler, EvalMethod::Taylor, EvalMethod::Binary] {
                let start = Instant::now();
                let values: Vec<BigUint> = xs.iter().map(|x| chi.eval(x, method).into_value()).collect();
                let elapsed = start.elapsed();
                rows.push(BenchRow {
                    p,
                    precision,
                    method,
                    samples,
                    mean_ns: elapsed.as_nanos() as f64 / samples.max(1) as f64,
                    agree: values == reference,
                });
            }
        }
    }
    Ok(rows)
}

fn cmd_bench(primes: &[u64], precisions: &[u32], samples: usize, seed: u64, json: bool, out: &str) -> CliResult<i32> {
    if let Some(e) = precisions.iter().find(|&&e| e == 0) {
        return Err(Failure::usage(format!("--precisions: {e} is below 1")));
    }
    let rows = bench_rows(primes, precisions, samples, seed)?;
    if json {
        write_json(out, &rows)?;
    } else {
        let mut table = format!("{:>4} {:>4}  {:<7} {:>12}  agree\n", "p", "E", "method", "mean_ns");
        for r in &rows {
            table.push_str(&format!(
                "{:>4} {:>4}  {:<7} {:>12.0}  {}\n",
                r.p,
                r.precision,
                r.method.to_string(),
                r.mean_ns,
                if r.agree { "yes" } else { "no" }
            ));
        }
        write_text(out, &table)?;
    }
    Ok(if rows.iter().all(|r| r.agree) {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

/// Runs an already parsed command line and returns the exit code.
pub fn execute(cli: Cli) -> CliResult<i32> {
    let mut config = RunConfig::from_cli(&cli);
    config.validate()?;
    match &cli.command {
        Command::CharEval {
            chi,
            x,
            method,
            all_methods,
        } => {
            config.method = *method;
            cmd_char_eval(&config, chi, x, *method, *all_methods)
        }
        Command::Eval {
            network,
            data,
            method,
            out,
        } => {
            config.method = *method;
            cmd_eval(&mut config, network, data, *method, out)
        }
        Command::Compile { data, shape, chi, out } => cmd_compile(&mut config, data, shape, chi, out),
        Command::Ddp { system, cap, out } => cmd_ddp(&mut config, system, *cap, out),
        Command::Fit {
            data,
            shape,
            norm,
            chi,
            out,
        } => cmd_fit(&mut config, data, shape, *norm, chi, out),
        Command::Bench {
            primes,
            precisions,
            samples,
            seed,
            json,
            out,
        } => {
            config.seed = *seed;
            cmd_bench(primes, precisions, *samples, config.seed, *json, out)
        }
    }
}

/// Parses `args` and runs the command, reporting failures on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_parsing() {
        assert_eq!(parse_shape("2, 3,1").unwrap(), VariableLayout::new(2, 3, 1));
        assert_eq!(parse_shape("2,3").unwrap_err().code, EXIT_USAGE);
        assert_eq!(parse_shape("a,b,c").unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(
            run([
                "padic-charnet",
                "char-eval",
                "--p",
                "4",
                "--E",
                "3",
                "--a",
                "5",
                "--x",
                "1"
            ]),
            EXIT_USAGE
        );
        assert_eq!(
            run([
                "padic-charnet",
                "char-eval",
                "--p",
                "3",
                "--E",
                "3",
                "--a",
                "5",
                "--x",
                "1"
            ]),
            EXIT_USAGE
        );
        assert_eq!(
            run([
                "padic-charnet",
                "char-eval",
                "--p",
                "3",
                "--E",
                "3",
                "--a",
                "4",
                "--x",
                "1z"
            ]),
            EXIT_USAGE
        );
        assert_eq!(run(["padic-charnet", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["padic-charnet", "--help"]), EXIT_OK);
    }

    #[test]
    fn config_flags_must_match_files() {
        let mut config = RunConfig {
            p: Some(3),
            ..RunConfig::from_cli(&Cli::parse_from(["padic-charnet", "bench"]))
        };
        assert!(config.agree_with(3, 2, 0).is_ok());
        assert_eq!(config.precision, Some(2));
        assert_eq!(config.agree_with(5, 2, 0).unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn solver_error_codes() {
        let overflow = Error::FrontierOverflow {
            level: 1,
            size: 10,
            budget: 5,
        };
        assert_eq!(Failure::solver(overflow).code, EXIT_OVERFLOW);
        assert_eq!(
            Failure::solver(Error::UnsupportedCompilation(String::new())).code,
            EXIT_UNSUPPORTED
        );
        assert_eq!(Failure::solver(Error::ShapeMismatch(String::new())).code, EXIT_SCHEMA);
    }

    #[test]
    fn bench_methods_agree() {
        let rows = bench_rows(&[2, 5], &[3, 6], 10, 7).unwrap();
        assert_eq!(rows.len(), 12);
        assert!(rows.iter().all(|r| r.agree));
    }
}
