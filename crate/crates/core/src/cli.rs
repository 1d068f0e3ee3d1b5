//! Command-line front end. Every subcommand prints one JSON document (or CSV
//! for traces) carrying the truncation plan and the certificates behind each
//! number.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::acceptance;
use crate::argument::{self, Spacing, DEFAULT_MAX_WINDING_ERROR};
use crate::config::{OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::frontier::solve_sigma_theta;
use crate::primes::{PrimeTable, DEFAULT_MEMORY_BUDGET};
use crate::vortex::{self, AlignmentTarget, DEFAULT_SEARCH_BUDGET};
use crate::zeta::{self, parse_angle, ComplexPoint, IdentityMember, PhaseVector, TruncationPlan};

#[derive(Parser, Debug)]
#[command(
    name = "zeta-vortex",
    version,
    about = "Certified numerics for the zeta equivalence class"
)]
pub struct Cli {
    /// key=value configuration file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Sieve primes up to this bound (default 1e7).
    #[arg(long, global = true)]
    pub prime_limit: Option<String>,
    /// Binary prime cache, created on first use.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Certify only on σ ≥ 1 + delta (default 0.01).
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// json or csv.
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sieve (or load) a prime table.
    Primes {
        #[arg(long)]
        limit: Option<String>,
    },
    /// Evaluate ζ_x(s) with an error radius.
    Eval(EvalArgs),
    /// The argument functional A and the continuous argument φ.
    Arg(PointArgs),
    /// Turns of σ ↦ ζ_x(σ + it) over a segment.
    Winding(WindingArgs),
    /// Sample the curve σ ↦ ζ_x(σ + it) as CSV.
    Trace(TraceArgs),
    /// Root of A_{π/2}(σ) = θ.
    SigmaTheta(SigmaThetaArgs),
    /// Search and verify vortex times.
    #[command(subcommand)]
    Vortex(VortexCommand),
    /// Run the acceptance suite and print a pass/fail table.
    Acceptance,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MethodArg {
    Dirichlet,
    Euler,
    Identity,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, default_value = "zero")]
    x: String,
    #[arg(long)]
    sigma: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t: f64,
    #[arg(long, default_value = "1e6")]
    cutoff: String,
    /// Number of primes in the Euler product; defaults to the whole table.
    #[arg(long)]
    primes: Option<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Dirichlet)]
    method: MethodArg,
}

#[derive(Args, Debug)]
pub struct PointArgs {
    #[arg(long, default_value = "zero")]
    x: String,
    #[arg(long)]
    sigma: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t: f64,
    #[arg(long)]
    primes: Option<usize>,
}

#[derive(Args, Debug)]
pub struct WindingArgs {
    #[arg(long, default_value = "zero")]
    x: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t: f64,
    /// Segment `lo:hi`.
    #[arg(long)]
    strip: String,
    #[arg(long)]
    primes: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MAX_WINDING_ERROR)]
    max_error: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SpacingArg {
    Uniform,
    Geometric,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[arg(long, default_value = "zero")]
    x: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t: f64,
    #[arg(long)]
    strip: String,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = SpacingArg::Uniform)]
    spacing: SpacingArg,
    #[arg(long)]
    primes: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SigmaThetaArgs {
    /// Angle, e.g. `0.7`, `pi/4`.
    #[arg(long)]
    theta: String,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long)]
    primes: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum VortexCommand {
    /// Aligned times in a window.
    Find {
        #[arg(long, default_value = "zero")]
        x: String,
        #[arg(long = "K")]
        k: Option<usize>,
        #[arg(long, default_value_t = 0.15)]
        tol: f64,
        /// `t_min:t_max`.
        #[arg(long, default_value = "0:1e7", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value = "pi/2", allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = 100)]
        max_results: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: usize,
        /// Attach windings over this strip; also the strip for the default K.
        #[arg(long)]
        strip: Option<String>,
    },
    /// Winding and distance to ζ_{π/2} at one time.
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value = "zero")]
        x: String,
        #[arg(long, default_value = "1.2:3")]
        strip: String,
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long)]
        primes: Option<usize>,
    },
    /// Certified turn budget of ζ_{π/2}.
    Budget {
        #[arg(long)]
        n: f64,
        #[arg(long, default_value_t = 3.0)]
        sigma_hi: f64,
    },
}

fn parse_count(text: &str) -> Result<u64> {
    let mut c = RunConfig::default();
    c.set("prime_limit", text)?;
    Ok(c.prime_limit)
}

fn parse_range(text: &str) -> Result<(f64, f64)> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| Error::Usage(format!("expected lo:hi, got {text:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Usage(format!("bad number {s:?} in {text:?}")))
    };
    Ok((parse(a)?, parse(b)?))
}

impl Cli {
    /// Config file, then flags.
    pub fn run_config(&self) -> Result<RunConfig> {
        let mut config = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(limit) = &self.prime_limit {
            config.prime_limit = parse_count(limit)?;
        }
        if let Some(cache) = &self.cache {
            config.cache_path = Some(cache.clone());
        }
        if let Some(seed) = self.seed {
            config.rng_seed = seed;
        }
        if let Some(delta) = self.delta {
            config.default_delta = delta;
        }
        if let Some(format) = &self.format {
            config.output_format = format.parse()?;
        }
        config.validate()?;
        Ok(config)
    }
}

fn load_table(config: &RunConfig, limit: u64) -> Result<PrimeTable> {
    match &config.cache_path {
        Some(path) => PrimeTable::load_or_sieve(path, limit, DEFAULT_MEMORY_BUDGET),
        None => PrimeTable::sieve_with_budget(limit, DEFAULT_MEMORY_BUDGET),
    }
}

fn plan_for(table: &PrimeTable, primes: Option<usize>, delta: f64) -> Result<TruncationPlan> {
    TruncationPlan::new(table.limit(), primes.unwrap_or(table.len()), delta)
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}").map_err(|source| Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

/// Run one parsed command.
pub fn dispatch(command: &Command, config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let delta = config.default_delta;
    match command {
        Command::Primes { limit } => {
            let limit = match limit {
                Some(l) => parse_count(l)?,
                None => config.prime_limit,
            };
            let table = load_table(config, limit)?;
            emit(
                out,
                &json!({
                    "limit": table.limit(),
                    "count": table.len(),
                    "largest": table.primes().last(),
                    "source": table.source(),
                    "cache": config.cache_path,
                }),
            )
        }
        Command::Eval(a) => {
            let x = PhaseVector::parse(&a.x)?;
            let s = ComplexPoint::new(a.sigma, a.t)?;
            let cutoff = parse_count(&a.cutoff)?;
            let table = load_table(config, config.prime_limit.max(cutoff))?;
            let mut plan = plan_for(&table, a.primes, delta)?;
            plan.cutoff = cutoff;
            let v = match a.method {
                MethodArg::Dirichlet => zeta::dirichlet_eval(&x, &s, &plan, &table)?,
                MethodArg::Euler => zeta::euler_eval(&x, &s, &plan, &table)?,
                MethodArg::Identity => {
                    let member = if x.is_zeta() {
                        IdentityMember::Riemann
                    } else if x == PhaseVector::liouville() {
                        IdentityMember::Liouville
                    } else {
                        return Err(Error::Domain(
                            "identity evaluation covers x = zero and x = pi only".into(),
                        ));
                    };
                    zeta::identity_eval(member, &s, cutoff)?
                }
            };
            emit(
                out,
                &json!({
                    "x": a.x,
                    "sigma": a.sigma,
                    "t": a.t,
                    "re": v.value.re,
                    "im": v.value.im,
                    "abs": v.abs(),
                    "arg": v.arg(),
                    "error_radius": v.error_radius,
                    "arg_radius": v.arg_radius(),
                    "method": v.method,
                    "bound": v.bound,
                    "plan": v.plan,
                }),
            )
        }
        Command::Arg(a) => {
            let x = PhaseVector::parse(&a.x)?;
            let s = ComplexPoint::new(a.sigma, a.t)?;
            let table = load_table(config, config.prime_limit)?;
            let plan = plan_for(&table, a.primes, delta)?;
            let av = argument::a_eval(&x, &s, &plan, &table)?;
            let phi = argument::unwrapped_arg(&x, &s, &plan, &table)?;
            emit(
                out,
                &json!({
                    "x": a.x,
                    "sigma": a.sigma,
                    "t": a.t,
                    "a": av,
                    "a_lower": av.lower(),
                    "a_upper": av.upper(),
                    "phi": phi.phi,
                    "phi_tail_bound": phi.tail_bound,
                    "plan": plan,
                }),
            )
        }
        Command::Winding(a) => {
            let x = PhaseVector::parse(&a.x)?;
            let (lo, hi) = parse_range(&a.strip)?;
            let table = load_table(config, config.prime_limit)?;
            let plan = plan_for(&table, a.primes, delta)?;
            let w = argument::winding(&x, a.t, lo, hi, &plan, &table, a.max_error)?;
            emit(
                out,
                &json!({
                    "x": a.x,
                    "t": a.t,
                    "strip": [lo, hi],
                    "turns": w.turns,
                    "error": w.error,
                    "phi_lo": w.phi_lo,
                    "phi_hi": w.phi_hi,
                    "plan": plan,
                }),
            )
        }
        Command::Trace(a) => {
            let x = PhaseVector::parse(&a.x)?;
            let (lo, hi) = parse_range(&a.strip)?;
            let table = load_table(config, config.prime_limit)?;
            let plan = plan_for(&table, a.primes, delta)?;
            let spacing = match a.spacing {
                SpacingArg::Uniform => Spacing::Uniform,
                SpacingArg::Geometric => Spacing::Geometric,
            };
            let trace = argument::trace_curve(&x, a.t, lo, hi, a.samples, spacing, &plan, &table)?;
            match config.output_format {
                OutputFormat::Csv => {
                    out.write_all(trace.to_csv().as_bytes())
                        .map_err(|source| Error::Io {
                            path: PathBuf::from("<stdout>"),
                            source,
                        })
                }
                OutputFormat::Json => emit(out, &json!({ "trace": trace, "plan": plan })),
            }
        }
        Command::SigmaTheta(a) => {
            let theta = parse_angle(&a.theta)?;
            let table = load_table(config, config.prime_limit)?;
            let plan = plan_for(&table, a.primes, delta)?;
            let sol = solve_sigma_theta(theta, a.tol, &plan, &table)?;
            emit(
                out,
                &json!({
                    "theta": sol.theta,
                    "sigma": sol.sigma_theta_bound,
                    "bracket": [sol.bracket.0, sol.bracket.1],
                    "residual": sol.residual,
                    "tail_bound": sol.tail_bound,
                    "primes_used": sol.primes_used,
                    "tol": a.tol,
                }),
            )
        }
        Command::Vortex(v) => dispatch_vortex(v, config, out),
        Command::Acceptance => {
            let results = acceptance::run_all(&acceptance::Settings::full(config.rng_seed))?;
            let table = acceptance::render(&results);
            out.write_all(table.as_bytes())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
            if results.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Error::CertificateTooWeak(format!(
                    "{} acceptance criteria failed",
                    results.iter().filter(|r| !r.passed).count()
                )))
            }
        }
    }
}

fn dispatch_vortex(command: &VortexCommand, config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let table = load_table(config, config.prime_limit)?;
    let plan = plan_for(&table, None, config.default_delta)?;
    match command {
        VortexCommand::Find {
            x,
            k,
            tol,
            window,
            target,
            max_results,
            budget,
            strip,
        } => {
            let phases = PhaseVector::parse(x)?;
            let window = parse_range(window)?;
            let strip = strip.as_deref().map(parse_range).transpose()?;
            let k = match k {
                Some(k) => *k,
                None => {
                    let lo = strip.map_or(1.2, |s| s.0);
                    vortex::default_alignment_depth(lo, 64, &table)?.ok_or_else(|| {
                        Error::CertificateTooWeak(format!(
                            "no K <= 64 meets the tail rule at sigma {lo}; pass --K"
                        ))
                    })?
                }
            };
            let target = AlignmentTarget::new(phases.clone(), k, *tol)?
                .with_target_phase(parse_angle(target)?);
            let mut report =
                vortex::find_vortex_times(&target, window, *max_results, *budget, &table)?;
            if let Some(strip) = strip {
                report.attach_windings(&phases, strip, &plan, &table)?;
            }
            let phase_errors_ok = report
                .times
                .iter()
                .all(|vt| vt.max_phase_error <= target.tolerance);
            let empty = report.times.is_empty();
            emit(
                out,
                &json!({
                    "x": x,
                    "report": report,
                    "all_within_tolerance": phase_errors_ok,
                    "empty": empty,
                    "plan": plan,
                }),
            )
        }
        VortexCommand::Verify {
            t,
            x,
            strip,
            grid,
            primes,
        } => {
            let phases = PhaseVector::parse(x)?;
            let (lo, hi) = parse_range(strip)?;
            let plan = plan_for(&table, *primes, config.default_delta)?;
            let check = vortex::verify_vortex(*t, &phases, lo, hi, *grid, &plan, &table)?;
            let gap = check.winding_gap();
            emit(
                out,
                &json!({ "x": x, "check": check, "winding_gap": gap, "plan": plan }),
            )
        }
        VortexCommand::Budget { n, sigma_hi } => {
            let budget = vortex::fractional_turns_budget(*n, *sigma_hi, &plan, &table)?;
            emit(out, &json!({ "budget": budget, "plan": plan }))
        }
    }
}

/// Parse `argv` (program name first) and run it. Returns the exit status:
/// 0 on success, 64 on usage errors, otherwise [`Error::exit_code`].
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = cli
        .run_config()
        .and_then(|config| dispatch(&cli.command, &config, out));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
