//! The `bic` command-line front end.
//!
//! Reports are line-oriented `KEY=value`, optionally followed by blocks that
//! start with `--- name`. Exit codes: 0 success, 2 validation error, 3 a
//! verification finding (falsified condition, failed containment, gap above
//! half a bit).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::dmbic::{
    check_condition, derive_theorem1, dexp_formula, eval_dm_region, eval_simple_region, verify_equivalence,
    verify_timesharing_closure, ConditionKind, DexpKind, DmBicChannel, FactoredInput, InputLaw, RegionKind,
    SimpleInput, VerdictStatus,
};
use crate::error::{Error, Result};
use crate::gaussian::{
    boundary_slice, capacity_special, fig3_params, fig4_sweep, fig5_params, figure_slices, gap_report,
    regime_b_sum, sum_rate, write_slice_csv, write_sweep_csv, GbicParams, Regime, SpecialCapacity, SpecialKind,
    FIG3_BETAS, FIG5_BETAS,
};
use crate::oracle::{brute_vertices, random_instance, InstanceKind, InstanceSpec, LawKind};
use crate::polyhedra::{enumerate_vertices, format_system, pareto_filter, RatePoint};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_FINDING: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bic", version, about = "Rate regions and Gaussian bounds for the broadcast interference channel")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Project the split-rate system of a factored law and compare it with the closed form.
    Derive(DeriveArgs),
    /// Discrete memoryless channel tools.
    #[command(subcommand)]
    Dm(DmCommand),
    /// Gaussian channel bounds and figure data.
    #[command(subcommand)]
    Gauss(GaussCommand),
    /// Cross-checks against the brute-force oracle.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Args, Debug)]
pub struct Common {
    /// Write the report or CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct DeriveArgs {
    #[arg(long)]
    pub channel: PathBuf,
    /// Factored input law.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug)]
pub enum DmCommand {
    /// Evaluate a named region at an input law.
    Region {
        #[arg(long)]
        region: RegionKind,
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Dominant extreme points from the closed-form lemmas.
    Dexp {
        /// One of L3, L4, L5, L6.
        #[arg(long)]
        lemma: DexpKind,
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Try to falsify a channel condition by search over input laws.
    Check {
        /// oblivious, cognizant, strong or very_strong.
        #[arg(long)]
        cond: ConditionKind,
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check that reduced-region extreme points are dominated by the dominating constructions.
    Equiv {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        channel: PathBuf,
        /// Simple input laws; repeat for several.
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check time-sharing closure of a region under the merged-auxiliary law.
    Timeshare {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        channel: PathBuf,
        /// Exactly two simple input laws.
        #[arg(long, num_args = 2, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone, Copy)]
#[allow(non_snake_case)]
pub struct GaussParamsArgs {
    #[arg(long = "P1")]
    pub P1: f64,
    #[arg(long = "P2")]
    pub P2: f64,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
}

impl GaussParamsArgs {
    fn params(&self) -> Result<GbicParams> {
        GbicParams::new(self.P1, self.P2, self.a, self.b)
    }
}

#[derive(Subcommand, Debug)]
pub enum GaussCommand {
    /// Inner and outer boundary at `R3 = C(beta P2)` as CSV.
    Slice {
        #[command(flatten)]
        params: GaussParamsArgs,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 201)]
        grid: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Largest achievable sum rate.
    Sum {
        #[command(flatten)]
        params: GaussParamsArgs,
        #[arg(long, default_value_t = 201)]
        grid: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Region and sum-rate gaps between inner and outer bounds.
    Gap {
        #[command(flatten)]
        params: GaussParamsArgs,
        #[arg(long, default_value_t = 201)]
        grid: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Known capacity boxes and boundary points.
    Capacity {
        #[command(flatten)]
        params: GaussParamsArgs,
        /// A_VSTRONG, C_VSTRONG, T9_INNERFACE or T9_LOWBETA.
        #[arg(long)]
        kind: SpecialKindArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Curve data for figure 3, 4 or 5 with the published parameters.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(3..=5))]
        number: u8,
        #[arg(long, default_value_t = 201)]
        grid: usize,
        /// Output directory; one CSV file per curve.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct SpecialKindArg(pub SpecialKind);

impl std::str::FromStr for SpecialKindArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(SpecialKindArg)
    }
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Compare main code paths with the brute-force oracle on random instances.
    Oracle {
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Accumulates `KEY=value` lines and named blocks.
#[derive(Default)]
struct Report {
    text: String,
    finding: bool,
}

impl Report {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.text.push_str(&format!("{key}={value}\n"));
    }

    fn num(&mut self, key: &str, value: f64) {
        self.kv(key, format!("{:.6}", value + 0.0));
    }

    fn block(&mut self, name: &str, body: &str) {
        self.text.push_str(&format!("--- {name}\n{body}"));
        if !body.ends_with('\n') {
            self.text.push('\n');
        }
    }
}

fn point(p: &[f64]) -> String {
    let parts: Vec<String> = p.iter().map(|x| format!("{:.6}", x + 0.0)).collect();
    format!("({})", parts.join(","))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

fn load_channel(path: &Path) -> Result<DmBicChannel> {
    DmBicChannel::from_json(&read(path)?)
}

fn load_law(path: &Path, ch: &DmBicChannel) -> Result<InputLaw> {
    InputLaw::from_json(&read(path)?, ch)
}

fn load_simple(path: &Path, ch: &DmBicChannel) -> Result<SimpleInput> {
    match load_law(path, ch)? {
        InputLaw::Simple(s) => Ok(s),
        InputLaw::Factored(_) => Err(Error::Validation(format!("{}: expected a simple input law", path.display()))),
    }
}

fn load_factored(path: &Path, ch: &DmBicChannel) -> Result<FactoredInput> {
    match load_law(path, ch)? {
        InputLaw::Factored(f) => Ok(f),
        InputLaw::Simple(_) => Err(Error::Validation(format!("{}: expected a factored input law", path.display()))),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut so = io::stdout().lock();
            so.write_all(text.as_bytes())?;
            so.flush()?;
        }
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::Validation(format!("tol must be finite and nonnegative, got {tol}")));
    }
    Ok(())
}

fn derive(args: &DeriveArgs) -> Result<Report> {
    check_tol(args.common.tol)?;
    let ch = load_channel(&args.channel)?;
    let inp = load_factored(&args.input, &ch)?;
    let r = derive_theorem1(&ch, &inp, args.samples, args.common.seed)?;
    let mut rep = Report::default();
    rep.kv("command", "derive");
    rep.kv("binning_margin", format!("{:.6e}", r.binning_margin));
    match (&r.fallback, &r.mc) {
        (Some(fb), _) => {
            rep.kv("status", "fallback");
            rep.kv("replacement_margin", format!("{:.6e}", fb.replacement_margin));
            rep.kv("inside_outer", fb.inside_outer);
            rep.finding = !fb.inside_outer;
            rep.block("lemma1", &format_system(&r.lemma1));
            rep.block("replacement_region", &format_system(&fb.replacement_region));
        }
        (None, Some(mc)) => {
            rep.kv("status", if r.matches() { "match" } else { "mismatch" });
            rep.kv("mc_samples", mc.samples);
            rep.kv("exact_equal", r.exact_equal.unwrap_or(false));
            rep.kv("mc_witness", mc.witness.as_deref().map(point).unwrap_or_else(|| "none".into()));
            rep.finding = !r.matches();
            rep.block("lemma1", &format_system(&r.lemma1));
            if let Some(p) = &r.projected {
                rep.block("projected", &format_system(p));
            }
        }
        (None, None) => unreachable!("derive report without comparison or fallback"),
    }
    Ok(rep)
}

fn dm(cmd: &DmCommand) -> Result<(Report, Option<PathBuf>)> {
    let mut rep = Report::default();
    let out = match cmd {
        DmCommand::Region { region, channel, input, common } => {
            let ch = load_channel(channel)?;
            let law = load_law(input, &ch)?;
            let r = eval_dm_region(*region, &ch, &law)?;
            rep.kv("region", r.kind);
            if let Some(m) = r.binning_margin {
                rep.kv("binning_margin", format!("{m:.6e}"));
            }
            rep.kv("achievable_as_is", r.achievable_as_is);
            rep.block("system", &format_system(&r.system));
            common.out.clone()
        }
        DmCommand::Dexp { lemma, channel, input, common } => {
            let ch = load_channel(channel)?;
            let inp = load_simple(input, &ch)?;
            let pts = dexp_formula(*lemma, &ch, &inp)?;
            rep.kv("lemma", lemma);
            rep.kv("region", lemma.region());
            rep.kv("points", pts.len());
            for p in &pts {
                rep.kv(&format!("point_{}", p.label), point(&p.point));
            }
            common.out.clone()
        }
        DmCommand::Check { cond, channel, budget, common } => {
            let ch = load_channel(channel)?;
            let v = check_condition(*cond, &ch, *budget, common.seed)?;
            rep.kv("condition", v.kind);
            rep.kv("status", v.status);
            rep.kv("min_gap", format!("{:.6e}", v.min_gap));
            rep.kv("starts", v.starts);
            if let Some(w) = &v.witness {
                rep.kv("witness_margin", format!("{:.6e}", w.margin));
                let json = serde_json::to_string_pretty(&InputLaw::Simple(w.input.clone()))?;
                rep.block("witness", &json);
            }
            rep.finding = v.status == VerdictStatus::Violated;
            common.out.clone()
        }
        DmCommand::Equiv { which, channel, input, common } => {
            check_tol(common.tol)?;
            let ch = load_channel(channel)?;
            let laws = input.iter().map(|p| load_simple(p, &ch)).collect::<Result<Vec<_>>>()?;
            let r = verify_equivalence(*which, &ch, &laws, common.tol)?;
            rep.kv("which", r.which);
            rep.kv("checked", r.items.len());
            rep.kv("failures", r.failures());
            for it in r.items.iter().filter(|i| !i.dominated) {
                rep.block(
                    &format!("undominated input={} label={}", it.input, it.label),
                    &format!("point={}\n", point(&it.point)),
                );
            }
            rep.finding = r.failures() > 0;
            common.out.clone()
        }
        DmCommand::Timeshare { which, channel, input, lambda, common } => {
            let ch = load_channel(channel)?;
            let a = load_simple(&input[0], &ch)?;
            let b = load_simple(&input[1], &ch)?;
            let r = verify_timesharing_closure(*which, &ch, &a, &b, *lambda)?;
            rep.kv("which", r.which);
            rep.num("lambda", r.lambda);
            rep.kv("checked", r.checked);
            rep.kv("outside", r.outside.len());
            for p in &r.outside {
                rep.block("outside", &format!("point={}\n", point(p)));
            }
            rep.finding = !r.contained();
            common.out.clone()
        }
    };
    Ok((rep, out))
}

fn slice_csv(p: &GbicParams, beta: f64, grid: usize) -> Result<String> {
    let rows = boundary_slice(p, beta, grid)?;
    let mut buf = Vec::new();
    write_slice_csv(&mut buf, p, beta, &rows)?;
    Ok(String::from_utf8(buf).expect("csv is ascii"))
}

fn figure(number: u8, grid: usize, out: &Option<PathBuf>) -> Result<()> {
    let mut files: Vec<(String, String)> = Vec::new();
    match number {
        3 | 5 => {
            let (p, betas): (GbicParams, &[f64]) = if number == 3 {
                (fig3_params(), &FIG3_BETAS)
            } else {
                (fig5_params(), &FIG5_BETAS)
            };
            for s in figure_slices(&p, betas, grid)? {
                let mut buf = Vec::new();
                write_slice_csv(&mut buf, &p, s.beta, &s.rows)?;
                files.push((format!("fig{number}_beta{}.csv", s.beta), String::from_utf8(buf).expect("ascii")));
            }
        }
        4 => {
            let rows = fig4_sweep(grid)?;
            let mut buf = Vec::new();
            write_sweep_csv(&mut buf, 6.0, 3.0, 3.0, &rows)?;
            files.push(("fig4.csv".into(), String::from_utf8(buf).expect("ascii")));
        }
        _ => return Err(Error::Validation(format!("no figure {number}"))),
    }
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for (name, text) in &files {
                fs::write(dir.join(name), text)?;
            }
            let mut so = io::stdout().lock();
            for (name, _) in &files {
                writeln!(so, "wrote={}", dir.join(name).display())?;
            }
        }
        None => {
            let joined: Vec<String> = files.into_iter().map(|(n, t)| format!("# file: {n}\n{t}")).collect();
            emit(&None, &joined.join("\n"))?;
        }
    }
    Ok(())
}

fn gauss(cmd: &GaussCommand) -> Result<Option<(Report, Option<PathBuf>)>> {
    let mut rep = Report::default();
    let out = match cmd {
        GaussCommand::Slice { params, beta, grid, common } => {
            let csv = slice_csv(&params.params()?, *beta, *grid)?;
            emit(&common.out, &csv)?;
            return Ok(None);
        }
        GaussCommand::Figure { number, grid, out } => {
            figure(*number, *grid, out)?;
            return Ok(None);
        }
        GaussCommand::Sum { params, grid, common } => {
            let p = params.params()?;
            let s = sum_rate(&p, *grid)?;
            rep.kv("regime", p.regime());
            rep.num("sum_rate", s.value);
            rep.kv("branch", s.branch);
            if p.regime() == Regime::B {
                let b = regime_b_sum(&p, *grid)?;
                rep.num("Rs1", b.rs1);
                rep.num("Rs2", b.rs2);
                rep.num("Ro", b.ro);
            }
            common.out.clone()
        }
        GaussCommand::Gap { params, grid, common } => {
            let p = params.params()?;
            let g = gap_report(&p, *grid)?;
            rep.kv("regime", g.regime);
            rep.num("max_region_gap", g.max_region_gap);
            rep.kv("worst_alpha_beta", point(&[g.worst.0, g.worst.1]));
            if let Some(l) = g.max_region_gap_loose {
                rep.num("max_region_gap_loose", l);
            }
            rep.num("sum_rate", g.sum_rate.value);
            rep.num("sum_outer", g.sum_outer);
            rep.num("sum_gap", g.sum_gap);
            rep.kv("region_certified", g.region_certified);
            rep.kv("sum_certified", g.sum_certified);
            rep.finding = g.finding();
            common.out.clone()
        }
        GaussCommand::Capacity { params, kind, alpha, beta, common } => {
            let p = params.params()?;
            rep.kv("kind", kind.0);
            match capacity_special(kind.0, &p, *alpha, *beta)? {
                SpecialCapacity::Point(pt) => rep.kv("point", point(&pt)),
                SpecialCapacity::Region { system, corner } => {
                    rep.kv("corner", point(&corner));
                    rep.block("system", &format_system(&system));
                }
            }
            common.out.clone()
        }
    };
    Ok(Some((rep, out)))
}

fn same_points(a: &[RatePoint], b: &[RatePoint], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .all(|p| b.iter().any(|q| p.iter().zip(q).all(|(x, y)| (x - y).abs() <= tol)))
}

fn verify(cmd: &VerifyCommand) -> Result<(Report, Option<PathBuf>)> {
    let VerifyCommand::Oracle { count, samples, common } = cmd;
    check_tol(common.tol)?;
    let tol = common.tol.max(1e-12);
    let (mut dexp_bad, mut vert_bad, mut derive_bad, mut derive_run) = (0, 0, 0, 0);
    let mut rep = Report::default();
    for i in 0..*count {
        let seed = common.seed.wrapping_add(i);
        for (kind, ik) in [(DexpKind::L3, InstanceKind::Cognizant), (DexpKind::L5, InstanceKind::Oblivious)] {
            let inst = random_instance(&InstanceSpec::binary(seed, ik, LawKind::Simple))?;
            let s = inst.simple().expect("simple law");
            let sys = eval_simple_region(kind.region(), &inst.channel, s)?;
            let brute = brute_vertices(&sys)?;
            let formula: Vec<RatePoint> = dexp_formula(kind, &inst.channel, s)?.into_iter().map(|p| p.point).collect();
            if !same_points(&formula, &pareto_filter(&brute)?, tol) {
                dexp_bad += 1;
                rep.block(&format!("dexp_mismatch seed={seed} lemma={kind}"), &format_system(&sys));
            }
            if !same_points(&enumerate_vertices(&sys)?, &brute, tol) {
                vert_bad += 1;
                rep.block(&format!("vertex_mismatch seed={seed}"), &format_system(&sys));
            }
        }
        let spec = InstanceSpec {
            q: 1 + (seed % 2) as usize,
            ..InstanceSpec::binary(seed, InstanceKind::Generic, LawKind::Factored)
        };
        let inst = random_instance(&spec)?;
        let r = derive_theorem1(&inst.channel, inst.factored().expect("factored law"), *samples, seed)?;
        if r.fallback.is_none() {
            derive_run += 1;
            if !r.matches() {
                derive_bad += 1;
                rep.block(&format!("derive_mismatch seed={seed}"), &format_system(&r.lemma1));
            }
        }
    }
    let mut head = Report::default();
    head.kv("instances", count);
    head.kv("dexp_mismatches", dexp_bad);
    head.kv("vertex_mismatches", vert_bad);
    head.kv("derive_checked", derive_run);
    head.kv("derive_mismatches", derive_bad);
    head.text.push_str(&rep.text);
    head.finding = dexp_bad + vert_bad + derive_bad > 0;
    Ok((head, common.out.clone()))
}

fn dispatch(cli: &Cli) -> Result<bool> {
    let (rep, out) = match &cli.command {
        Command::Derive(a) => {
            let out = a.common.out.clone();
            (derive(a)?, out)
        }
        Command::Dm(c) => dm(c)?,
        Command::Gauss(c) => match gauss(c)? {
            Some(x) => x,
            None => return Ok(false),
        },
        Command::Verify(c) => verify(c)?,
    };
    emit(&out, &rep.text)?;
    Ok(rep.finding)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(false) => EXIT_OK,
        Ok(true) => EXIT_FINDING,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_VALIDATION
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os())
}
