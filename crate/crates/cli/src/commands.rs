use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cfmm::oracle::{direct_eval, direct_eval_subset, gaussian_charges, gen_uniform, gen_wobble2d_with, gen_wobble3d_with, rel_error, rel_error_subset, WobbleParams};
use cfmm::{evaluate, CVec, FmmConfig, FmmReport, Kernel, C64};

use crate::format::{PointCloud, ResultFile};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "cfmm", version, about = "Fast multipole sums at complex coordinates")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "CFMM_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Write a benchmark point cloud.
    Gen(GenArgs),
    /// Evaluate the potential with the FMM.
    Eval(EvalArgs),
    /// Evaluate the potential by direct summation.
    Direct(DirectArgs),
    /// Relative error of one result against another.
    Check(CheckArgs),
    /// Time FMM against direct summation over a list of sizes.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Wobble2d,
    Wobble3d,
    Uniform2d,
    Uniform3d,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub out: String,
    /// Wobble amplitude (default: the family's value).
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub t0: Option<f64>,
    /// Lipschitz bound of the random imaginary parts for the uniform families.
    #[arg(long, default_value_t = 0.1)]
    pub lipschitz: f64,
    /// Attach standard complex Gaussian charges.
    #[arg(long)]
    pub charges: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    /// lap2d, helm2d, lap3d or helm3d.
    #[arg(long)]
    pub kernel: String,
    /// Helmholtz wavenumber.
    #[arg(long)]
    pub wavenumber: Option<f64>,
}

impl KernelArgs {
    fn kernel(&self) -> Result<Kernel, CliError> {
        Ok(Kernel::parse(&self.kernel, self.wavenumber)?)
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[arg(long)]
    pub eps: f64,
    /// Colleague rings (1 or 2); chosen from the geometry when absent.
    #[arg(long)]
    pub k: Option<u8>,
    #[arg(long)]
    pub leaf_size: Option<usize>,
    /// Accepted for scripts; every run accumulates in a fixed order.
    #[arg(long)]
    pub deterministic: bool,
    /// Sources with charges.
    #[arg(long)]
    pub src: String,
    /// Targets; the sources themselves (self terms skipped) when absent.
    #[arg(long)]
    pub targ: Option<String>,
    #[arg(long)]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct DirectArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[arg(long)]
    pub src: String,
    #[arg(long)]
    pub targ: Option<String>,
    #[arg(long)]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub fmm_out: String,
    #[arg(long)]
    pub direct_out: String,
    /// Point cloud file whose charges enter the error denominator.
    #[arg(long)]
    pub charges: String,
    /// Fail with exit code 6 above this error.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[arg(long)]
    pub eps: f64,
    /// Comma-separated sizes; `1e4` style is accepted.
    #[arg(long, value_delimiter = ',', value_parser = parse_size)]
    pub n_list: Vec<usize>,
    #[arg(long)]
    pub out: String,
    /// Point family; the wobble geometry of the kernel's dimension when absent.
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long, default_value_t = 0.1)]
    pub lipschitz: f64,
    #[arg(long)]
    pub k: Option<u8>,
    /// Largest size timed against the full direct sum.
    #[arg(long, default_value_t = 100_000)]
    pub direct_cap: usize,
    /// Targets used for the error above the cap.
    #[arg(long, default_value_t = 1000)]
    pub subset: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

fn parse_size(s: &str) -> Result<usize, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("bad size {s}"))?;
    if v >= 1.0 && v.fract() == 0.0 && v < 1e15 {
        Ok(v as usize)
    } else {
        Err(format!("size {s} is not a positive integer"))
    }
}

pub fn run(cli: Cli, out: &mut (dyn Write + Send)) -> Result<(), CliError> {
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| CliError::Usage(e.to_string()))?;
            pool.install(|| dispatch(cli.cmd, out))
        }
        None => dispatch(cli.cmd, out),
    }
}

fn dispatch(cmd: Cmd, out: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: "stdout".into(), source };
    match cmd {
        Cmd::Gen(a) => cmd_gen(&a),
        Cmd::Eval(a) => {
            let rep = cmd_eval(&a)?;
            for (k, v) in rep.key_values() {
                writeln!(out, "{k}={v}").map_err(io)?;
            }
            Ok(())
        }
        Cmd::Direct(a) => {
            let t = cmd_direct(&a)?;
            writeln!(out, "t_direct={t:.6}").map_err(io)
        }
        Cmd::Check(a) => {
            let e = cmd_check(&a)?;
            writeln!(out, "relerr={e:e}").map_err(io)?;
            match a.tol {
                Some(tol) if !(e <= tol) => Err(CliError::CheckFailed(e, tol)),
                _ => Ok(()),
            }
        }
        Cmd::Bench(a) => cmd_bench(&a, out).map(|_| ()),
    }
}

fn wobble(defaults: WobbleParams, a: &GenArgs) -> Result<WobbleParams, CliError> {
    let p = WobbleParams { a: a.a.unwrap_or(defaults.a), b: a.b.unwrap_or(defaults.b), t0: a.t0.unwrap_or(defaults.t0) };
    p.validate()?;
    Ok(p)
}

fn generate(family: Family, n: usize, lipschitz: f64, params: Option<WobbleParams>, seed: u64) -> Result<PointCloud, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    if matches!(family, Family::Uniform2d | Family::Uniform3d) && !(0.0..1.0).contains(&lipschitz) {
        return Err(CliError::Usage(format!("--lipschitz {lipschitz} outside [0, 1)")));
    }
    Ok(match family {
        Family::Wobble2d => PointCloud::from_points(&gen_wobble2d_with(n, params.unwrap_or(WobbleParams::CURVE)), None),
        Family::Wobble3d => PointCloud::from_points(&gen_wobble3d_with(n, params.unwrap_or(WobbleParams::SURFACE)), None),
        Family::Uniform2d => PointCloud::from_points(&gen_uniform::<2>(n, lipschitz, seed), None),
        Family::Uniform3d => PointCloud::from_points(&gen_uniform::<3>(n, lipschitz, seed), None),
    })
}

pub fn cmd_gen(a: &GenArgs) -> Result<(), CliError> {
    let params = match a.family {
        Family::Wobble2d => Some(wobble(WobbleParams::CURVE, a)?),
        Family::Wobble3d => Some(wobble(WobbleParams::SURFACE, a)?),
        _ => {
            if a.a.is_some() || a.b.is_some() || a.t0.is_some() {
                return Err(CliError::Usage("--a, --b and --t0 only apply to the wobble families".into()));
            }
            None
        }
    };
    let mut pc = generate(a.family, a.n, a.lipschitz, params, a.seed)?;
    if a.charges {
        pc.charges = Some(gaussian_charges(a.n, a.seed));
    }
    pc.write(&a.out)
}

struct Inputs {
    src: PointCloud,
    targ: Option<PointCloud>,
}

fn load(kernel: Kernel, src: &str, targ: Option<&str>) -> Result<Inputs, CliError> {
    let s = PointCloud::read(src)?;
    s.require_charges(src)?;
    let t = match targ {
        Some(p) if p != src => Some(PointCloud::read(p)?),
        _ => None,
    };
    for (pc, path) in std::iter::once((&s, src)).chain(t.as_ref().zip(targ)) {
        if pc.dim != kernel.dim() {
            return Err(CliError::Format(path.into(), format!("{}-D points for the {}-D kernel {}", pc.dim, kernel.dim(), kernel.name())));
        }
    }
    Ok(Inputs { src: s, targ: t })
}

/// Runs `f` on the sources and targets; the target slice aliases the
/// source slice when no separate targets were given.
fn with_points<const D: usize, T>(inp: &Inputs, f: impl FnOnce(&[CVec<D>], &[C64], &[CVec<D>]) -> cfmm::Result<T>) -> cfmm::Result<T> {
    let s = inp.src.points::<D>();
    let q = inp.src.charges.as_deref().unwrap_or(&[]);
    match &inp.targ {
        Some(t) => f(&s, q, &t.points::<D>()),
        None => f(&s, q, &s),
    }
}

pub fn cmd_eval(a: &EvalArgs) -> Result<FmmReport, CliError> {
    let kernel = a.kernel.kernel()?;
    let mut cfg = FmmConfig::new(kernel, a.eps);
    cfg.k_override = a.k;
    cfg.leaf_size = a.leaf_size;
    cfg.deterministic = a.deterministic;
    cfg.validate()?;
    let inp = load(kernel, &a.src, a.targ.as_deref())?;
    let (u, rep) = match kernel.dim() {
        2 => with_points::<2, _>(&inp, |s, q, t| evaluate(s, q, t, &cfg))?,
        _ => with_points::<3, _>(&inp, |s, q, t| evaluate(s, q, t, &cfg))?,
    };
    ResultFile { dim: kernel.dim(), values: u }.write(&a.out)?;
    Ok(rep)
}

/// Returns the wall time of the sum.
pub fn cmd_direct(a: &DirectArgs) -> Result<f64, CliError> {
    let kernel = a.kernel.kernel()?;
    let inp = load(kernel, &a.src, a.targ.as_deref())?;
    let t0 = Instant::now();
    let u = match kernel.dim() {
        2 => with_points::<2, _>(&inp, |s, q, t| direct_eval(kernel, s, q, t))?,
        _ => with_points::<3, _>(&inp, |s, q, t| direct_eval(kernel, s, q, t))?,
    };
    let t = t0.elapsed().as_secs_f64();
    ResultFile { dim: kernel.dim(), values: u }.write(&a.out)?;
    Ok(t)
}

pub fn cmd_check(a: &CheckArgs) -> Result<f64, CliError> {
    let u = ResultFile::read(&a.fmm_out)?;
    let u0 = ResultFile::read(&a.direct_out)?;
    let pc = PointCloud::read(&a.charges)?;
    let q = pc.require_charges(&a.charges)?;
    if u.values.len() != u0.values.len() {
        return Err(CliError::Format(a.direct_out.clone(), format!("{} values against {} in {}", u0.values.len(), u.values.len(), a.fmm_out)));
    }
    Ok(rel_error(&u.values, &u0.values, q))
}

/// One row of the benchmark table.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub t_fmm: f64,
    /// Full direct time; absent above the cap.
    pub t_direct: Option<f64>,
    pub relerr: f64,
    pub p_max: usize,
    pub k: u8,
}

pub const BENCH_HEADER: &str = "n,t_fmm_seconds,t_direct_seconds,relerr,P_max,k";

impl BenchRow {
    pub fn csv(&self) -> String {
        let td = self.t_direct.map(|t| format!("{t:.6}")).unwrap_or_default();
        format!("{},{:.6},{},{:.3e},{},{}", self.n, self.t_fmm, td, self.relerr, self.p_max, self.k)
    }
}

fn bench_one<const D: usize>(kernel: Kernel, cfg: &FmmConfig, pts: &[CVec<D>], q: &[C64], a: &BenchArgs) -> Result<BenchRow, CliError> {
    let n = pts.len();
    let t0 = Instant::now();
    let (u, rep) = evaluate(pts, q, pts, cfg)?;
    let t_fmm = t0.elapsed().as_secs_f64();
    let (t_direct, relerr) = if n <= a.direct_cap {
        let t0 = Instant::now();
        let u0 = direct_eval(kernel, pts, q, pts)?;
        (Some(t0.elapsed().as_secs_f64()), rel_error(&u, &u0, q))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed ^ n as u64);
        let mut which = sample(&mut rng, n, a.subset.min(n)).into_vec();
        which.sort_unstable();
        let u0 = direct_eval_subset(kernel, pts, q, &which)?;
        (None, rel_error_subset(&u, &u0, q, &which))
    };
    Ok(BenchRow { n, t_fmm, t_direct, relerr, p_max: rep.p_max(), k: rep.k })
}

pub fn cmd_bench(a: &BenchArgs, out: &mut (dyn Write + Send)) -> Result<Vec<BenchRow>, CliError> {
    let kernel = a.kernel.kernel()?;
    let mut cfg = FmmConfig::new(kernel, a.eps);
    cfg.k_override = a.k;
    cfg.validate()?;
    if a.n_list.is_empty() {
        return Err(CliError::Usage("--n-list is empty".into()));
    }
    let family = a.family.unwrap_or(if kernel.dim() == 2 { Family::Wobble2d } else { Family::Wobble3d });
    let fdim = if matches!(family, Family::Wobble2d | Family::Uniform2d) { 2 } else { 3 };
    if fdim != kernel.dim() {
        return Err(CliError::Usage(format!("family {family:?} does not match kernel {}", kernel.name())));
    }
    let io = |path: &str| {
        let path = path.to_string();
        move |source| CliError::Io { path, source }
    };
    let mut csv = vec![BENCH_HEADER.to_string()];
    writeln!(out, "{BENCH_HEADER}").map_err(io("stdout"))?;
    let mut rows = Vec::new();
    for &n in &a.n_list {
        let pc = generate(family, n, a.lipschitz, None, a.seed)?;
        let q = gaussian_charges(n, a.seed);
        let row = match fdim {
            2 => bench_one::<2>(kernel, &cfg, &pc.points::<2>(), &q, a)?,
            _ => bench_one::<3>(kernel, &cfg, &pc.points::<3>(), &q, a)?,
        };
        writeln!(out, "{}", row.csv()).map_err(io("stdout"))?;
        csv.push(row.csv());
        rows.push(row);
    }
    std::fs::write(&a.out, csv.join("\n") + "\n").map_err(io(&a.out))?;
    Ok(rows)
}

/// Least-squares slope of `log t` against `log n`.
pub fn loglog_slope(n: &[f64], t: &[f64]) -> f64 {
    let x: Vec<f64> = n.iter().map(|v| v.ln()).collect();
    let y: Vec<f64> = t.iter().map(|v| v.ln()).collect();
    let m = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / m, y.iter().sum::<f64>() / m);
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
