//! `sdp-hsp`: classify semi-direct products, solve hidden-subgroup instances,
//! benchmark query counts and run the acceptance suite.
//!
//! Exit codes: 0 success, 1 solver mismatch or failed self-test, 2 invalid
//! input.

mod hidden;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use sdp_hsp::acceptance::{self, Mode};
use sdp_hsp::blackbox::{make_hidden_instance, Encoding, GeneratorPolicy, InstanceConfig, SaltPolicy};
use sdp_hsp::hsp_p::{self, Solution};
use sdp_hsp::hsp_zm::{self, ZmElement, ZmGroupSpec};
use sdp_hsp::qsim::{Backend, SolverOptions};
use sdp_hsp::reference::{closure, enumerate_all_subgroups};
use sdp_hsp::sdp_group::{enumerate_alphas, iso_map, Element, GroupClass, GroupSpec};
use sdp_hsp::{Error, Result};

use report::*;

#[derive(Parser)]
#[command(name = "sdp-hsp", version, about = "Hidden subgroup solvers for Z_{p^r} x| Z_q and Z_{p^r}^m x| Z_p")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the alphas of order q mod p^r with their classes and isomorphism families.
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Solve a hidden subgroup of P_{p,r} = Z_{p^r} x| Z_p.
    SolveP {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Solve a hidden subgroup of Z_{p^r}^m x| Z_p (unique encoding only).
    SolveZm {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Solve every subgroup of each grid group and print one CSV row per solve.
    Bench {
        /// Comma-separated cells: `p:r` for P_{p,r}, `p:r:m` for Z_{p^r}^m x| Z_p.
        #[arg(long, default_value = "")]
        grid: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the acceptance suite; exit 0 iff every criterion passes.
    Selftest {
        #[arg(long)]
        quick: bool,
        #[arg(long, value_enum, default_value_t = SelftestOutput::Text)]
        output: SelftestOutput,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    /// xpower:i | xpowery:i | cyclicxy:t,j | gens:[(..),...] | full | trivial | random
    #[arg(long)]
    hidden: Option<String>,
    /// Same as `--hidden random`.
    #[arg(long)]
    random: bool,
}

impl Target {
    fn spec(&self) -> &str {
        self.hidden.as_deref().unwrap_or("random")
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, env = "SDP_HSP_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
    backend: BackendArg,
    /// `unique` or `salted:S` with 1 <= S <= 16.
    #[arg(long, default_value = "unique", value_parser = parse_encoding)]
    encoding: Encoding,
    #[arg(long, value_enum, default_value_t = SaltArg::Zero)]
    salt_policy: SaltArg,
    #[arg(long, value_enum, default_value_t = GenArg::Canonical)]
    generators: GenArg,
    /// Target failure probability, in (0, 0.5].
    #[arg(long, default_value_t = 0.01, value_parser = parse_delta)]
    delta: f64,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Omit wall-clock times so reports are byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SelftestOutput {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Auto,
    Statevector,
    Annihilator,
}

#[derive(Clone, Copy, ValueEnum)]
enum SaltArg {
    Zero,
    Hash,
    Fresh,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenArg {
    Canonical,
    Scrambled,
}

fn parse_encoding(s: &str) -> std::result::Result<Encoding, String> {
    if s == "unique" {
        return Ok(Encoding::Unique);
    }
    let n = s
        .strip_prefix("salted:")
        .ok_or_else(|| format!("expected `unique` or `salted:S`, got {s:?}"))?;
    match n.parse::<u32>() {
        Ok(k) if (1..=16).contains(&k) => Ok(Encoding::Salted(k)),
        _ => Err(format!("salt count must be an integer in 1..=16, got {n:?}")),
    }
}

fn parse_delta(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(d) if d > 0.0 && d <= 0.5 => Ok(d),
        _ => Err(format!("delta must lie in (0, 0.5], got {s:?}")),
    }
}

impl RunArgs {
    fn backend(&self) -> Backend {
        match self.backend {
            BackendArg::Auto => Backend::Auto,
            BackendArg::Statevector => Backend::Statevector,
            BackendArg::Annihilator => Backend::Annihilator,
        }
    }

    fn salt_policy(&self) -> SaltPolicy {
        match self.salt_policy {
            SaltArg::Zero => SaltPolicy::Zero,
            SaltArg::Hash => SaltPolicy::HashOfOperands,
            SaltArg::Fresh => SaltPolicy::FreshRandom,
        }
    }

    fn gen_policy(&self) -> GeneratorPolicy {
        match self.generators {
            GenArg::Canonical => GeneratorPolicy::Canonical,
            GenArg::Scrambled => GeneratorPolicy::Scrambled,
        }
    }

    fn instance_config(&self, seed: u64) -> InstanceConfig {
        InstanceConfig { encoding: self.encoding, salt_policy: self.salt_policy(), generators: self.gen_policy(), seed }
    }

    fn options(&self, seed: u64) -> SolverOptions {
        SolverOptions { backend: self.backend(), delta: self.delta, seed }
    }

    fn config_info(&self) -> ConfigInfo {
        ConfigInfo {
            encoding: match self.encoding {
                Encoding::Unique => "unique".into(),
                Encoding::Salted(s) => format!("salted:{s}"),
            },
            salt_policy: match self.salt_policy {
                SaltArg::Zero => "zero",
                SaltArg::Hash => "hash",
                SaltArg::Fresh => "fresh",
            },
            generators: match self.generators {
                GenArg::Canonical => "canonical",
                GenArg::Scrambled => "scrambled",
            },
            backend: self.backend().name(),
            delta: self.delta,
        }
    }
}

/// Failure of a command, with its exit code.
enum Failure {
    Invalid(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAUnit { .. }
            | Error::Overflow(_)
            | Error::UnknownEncoding
            | Error::BackendUnavailable(_)
            | Error::YPrimeUnavailable
            | Error::NotPeriodic
            | Error::NotIsomorphic(_) => Failure::Internal(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type CmdResult = std::result::Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Classify { p, q, r, output } => cmd_classify(p, q, r, output),
        Cmd::SolveP { p, r, target, run } => cmd_solve_p(p, r, target.spec(), &run),
        Cmd::SolveZm { p, r, m, target, run } => cmd_solve_zm(p, r, m, target.spec(), &run),
        Cmd::Bench { grid, run } => cmd_bench(&grid, &run),
        Cmd::Selftest { quick, output } => cmd_selftest(quick, output),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn class_name(c: GroupClass) -> &'static str {
    match c {
        GroupClass::QHedral => "q-hedral",
        GroupClass::Dihedral => "dihedral",
        GroupClass::QuasiDihedral => "quasi-dihedral",
        GroupClass::PGroup => "p-group",
        GroupClass::DirectProduct => "direct product",
    }
}

fn cmd_classify(p: u64, q: u64, r: u32, output: Output) -> CmdResult {
    let alphas = enumerate_alphas(p, q, r)?;
    let groups: Vec<GroupSpec> = alphas.iter().map(|&a| GroupSpec::new(p, q, r, a)).collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for g in &groups {
        let c = g.classify()?;
        entries.push(AlphaEntry { alpha: g.alpha(), class: c.label(), class_name: class_name(c) });
    }
    let mut family_of: Vec<Option<usize>> = vec![None; groups.len()];
    let mut families: Vec<Vec<u64>> = Vec::new();
    for i in 0..groups.len() {
        if family_of[i].is_some() {
            continue;
        }
        let id = families.len();
        let mut fam = Vec::new();
        for j in i..groups.len() {
            if family_of[j].is_none() && iso_map(&groups[i], &groups[j], &groups[i].x()).is_ok() {
                family_of[j] = Some(id);
                fam.push(groups[j].alpha());
            }
        }
        families.push(fam);
    }
    let note = alphas.is_empty().then(|| {
        let why = if p != q { format!("{q} does not divide p - 1 = {}", p - 1) } else { format!("p = q with r = {r}") };
        format!("no alpha != 1 of order {q} mod {p}^{r} ({why}); only the direct product (class 5) exists")
    });
    let mut out = std::io::stdout().lock();
    match output {
        Output::Json => {
            let rep = ClassifyReport { schema_version: SCHEMA_VERSION, command: "classify", p, q, r, alphas: entries, families, note };
            serde_json::to_writer_pretty(&mut out, &rep)?;
            writeln!(out)?;
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["alpha", "class", "class_name", "family"])?;
            for (e, f) in entries.iter().zip(&family_of) {
                w.write_record([e.alpha.to_string(), e.class.to_string(), e.class_name.to_string(), f.unwrap_or(0).to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}

fn p_coords(e: &Element) -> Vec<u64> {
    vec![e.a, e.b]
}

fn zm_coords(e: &ZmElement) -> Vec<u64> {
    e.a.iter().copied().chain([e.b]).collect()
}

fn p_group(p: u64, r: u32) -> Result<GroupSpec> {
    let g = GroupSpec::p_group(p, r)?;
    g.require_p_group()?;
    Ok(g)
}

fn emit_solve(rep: &SolveReport, output: Output) -> std::result::Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match output {
        Output::Json => {
            serde_json::to_writer_pretty(&mut out, rep)?;
            writeln!(out)?;
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(SolveReport::CSV_HEADER)?;
            w.write_record(rep.csv_row())?;
            w.flush()?;
        }
    }
    Ok(())
}

struct Outcome {
    found_generators: Vec<Vec<u64>>,
    found_order: usize,
    matched: bool,
    solution: Solution,
    wall_ms: f64,
}

fn run_p(g: &GroupSpec, h: &sdp_hsp::reference::ElementSet<Element>, run: &RunArgs, seed: u64) -> Result<Outcome> {
    let start = Instant::now();
    let (inst, gens) = make_hidden_instance(g.clone(), h, &run.instance_config(seed))?;
    let solution = hsp_p::solve(&inst, &gens, &run.options(seed))?;
    let found = solution.reveal_elements(&inst)?;
    let span = closure(g, &found);
    Ok(Outcome {
        found_generators: found.iter().map(p_coords).collect(),
        found_order: span.len(),
        matched: &span == h,
        solution,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn run_zm(g: &ZmGroupSpec, h: &sdp_hsp::reference::ElementSet<ZmElement>, run: &RunArgs, seed: u64) -> Result<Outcome> {
    let start = Instant::now();
    let (inst, inputs) = hsp_zm::make_instance(g.clone(), h, &run.instance_config(seed))?;
    let solution = hsp_zm::solve(&inst, &inputs, &run.options(seed))?;
    let found = solution.reveal_elements(&inst)?;
    let span = closure(g, &found);
    Ok(Outcome {
        found_generators: found.iter().map(zm_coords).collect(),
        found_order: span.len(),
        matched: &span == h,
        solution,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn solve_report(command: &'static str, group: GroupInfo, hidden: String, truth: SubgroupInfo, o: Outcome, run: &RunArgs) -> SolveReport {
    let r = o.solution.report;
    SolveReport {
        schema_version: SCHEMA_VERSION,
        command,
        group,
        hidden,
        config: run.config_info(),
        seed: run.seed,
        found_generators: o.found_generators,
        found_order: o.found_order,
        truth,
        matched: o.matched,
        queries: r.queries.into(),
        rounds: r.rounds,
        samples: r.samples,
        low_confidence: r.low_confidence,
        branches: r.branches,
        backend_used: r.backend.name(),
        wall_ms: (!run.no_timing).then_some(o.wall_ms),
    }
}

fn cmd_solve_p(p: u64, r: u32, spec: &str, run: &RunArgs) -> CmdResult {
    let g = p_group(p, r)?;
    let hidden = hidden::parse_p(&g, spec, run.seed)?;
    let o = run_p(&g, &hidden.elements, run, run.seed)?;
    let matched = o.matched;
    let truth = SubgroupInfo { generators: hidden.generators.iter().map(p_coords).collect(), order: hidden.elements.len() };
    let group = GroupInfo { p, r, m: 1, order: sdp_hsp::sdp_group::FiniteGroup::order(&g) };
    emit_solve(&solve_report("solve-p", group, hidden.spelling, truth, o, run), run.output)?;
    Ok(matched)
}

fn require_unique(run: &RunArgs) -> std::result::Result<(), Failure> {
    if run.encoding != Encoding::Unique {
        return Err(Failure::Invalid("solve-zm requires the unique encoding (--encoding unique)".into()));
    }
    Ok(())
}

fn cmd_solve_zm(p: u64, r: u32, m: usize, spec: &str, run: &RunArgs) -> CmdResult {
    require_unique(run)?;
    let g = ZmGroupSpec::new(p, r, m)?;
    let hidden = hidden::parse_zm(&g, spec, run.seed)?;
    let o = run_zm(&g, &hidden.elements, run, run.seed)?;
    let matched = o.matched;
    let truth = SubgroupInfo { generators: hidden.generators.iter().map(zm_coords).collect(), order: hidden.elements.len() };
    let group = GroupInfo { p, r, m, order: sdp_hsp::sdp_group::FiniteGroup::order(&g) };
    emit_solve(&solve_report("solve-zm", group, hidden.spelling, truth, o, run), run.output)?;
    Ok(matched)
}

#[derive(Clone, Copy)]
enum Cell {
    P(u64, u32),
    Zm(u64, u32, usize),
}

fn parse_grid(grid: &str) -> std::result::Result<Vec<Cell>, Failure> {
    let bad = |c: &str| Failure::Invalid(format!("grid cells are p:r or p:r:m, got {c:?}"));
    grid.split(',')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(|c| {
            let parts: Vec<u64> = c.split(':').map(|t| t.trim().parse::<u64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad(c))?;
            match *parts.as_slice() {
                [p, r] => Ok(Cell::P(p, u32::try_from(r).map_err(|_| bad(c))?)),
                [p, r, m] => Ok(Cell::Zm(p, u32::try_from(r).map_err(|_| bad(c))?, m as usize)),
                _ => Err(bad(c)),
            }
        })
        .collect()
}

enum Job {
    P(GroupSpec, String, sdp_hsp::reference::ElementSet<Element>),
    Zm(ZmGroupSpec, String, sdp_hsp::reference::ElementSet<ZmElement>),
}

const BENCH_HEADER: [&str; 16] = [
    "solver", "p", "r", "m", "order", "subgroup", "subgroup_order", "seed", "mul", "inv", "eq", "f", "superposed_calls",
    "classical_evaluations", "wall_ms", "match",
];

fn cmd_bench(grid: &str, run: &RunArgs) -> CmdResult {
    let cells = parse_grid(grid)?;
    if cells.iter().any(|c| matches!(c, Cell::Zm(..))) {
        require_unique(run)?;
    }
    let mut jobs = Vec::new();
    for cell in cells {
        match cell {
            Cell::P(p, r) => {
                let g = p_group(p, r)?;
                for d in g.enumerate_subgroups()? {
                    jobs.push(Job::P(g.clone(), hidden::desc_spelling(&d), d.to_elements(&g)?));
                }
            }
            Cell::Zm(p, r, m) => {
                let g = ZmGroupSpec::new(p, r, m)?;
                for (k, h) in enumerate_all_subgroups(&g, 10_000)?.into_iter().enumerate() {
                    jobs.push(Job::Zm(g.clone(), format!("#{k}"), h));
                }
            }
        }
    }
    let rows: Vec<Vec<String>> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, job)| {
            let seed = run.seed.wrapping_add(i as u64);
            let (solver, p, r, m, order, label, sub_order, o) = match job {
                Job::P(g, label, h) => ("p", g.p(), g.r(), 1, sdp_hsp::sdp_group::FiniteGroup::order(g), label, h.len(), run_p(g, h, run, seed)?),
                Job::Zm(g, label, h) => ("zm", g.p(), g.r(), g.m(), sdp_hsp::sdp_group::FiniteGroup::order(g), label, h.len(), run_zm(g, h, run, seed)?),
            };
            let q = o.solution.report.queries;
            Ok(vec![
                solver.to_string(),
                p.to_string(),
                r.to_string(),
                m.to_string(),
                order.to_string(),
                label.clone(),
                sub_order.to_string(),
                seed.to_string(),
                q.mul.to_string(),
                q.inv.to_string(),
                q.eq.to_string(),
                q.f.to_string(),
                q.superposed_calls.to_string(),
                q.classical_evaluations().to_string(),
                fmt_ms((!run.no_timing).then_some(o.wall_ms)),
                o.matched.to_string(),
            ])
        })
        .collect::<Result<_>>()?;
    let all_matched = rows.iter().all(|r| r[15] == "true");
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    w.write_record(BENCH_HEADER)?;
    for row in &rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(all_matched)
}

fn cmd_selftest(quick: bool, output: SelftestOutput) -> CmdResult {
    let mode = if quick { Mode::Quick } else { Mode::Full };
    let reports = acceptance::run_all(mode);
    let passed = reports.iter().all(|r| r.passed);
    let mut out = std::io::stdout().lock();
    match output {
        SelftestOutput::Text => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
        }
        SelftestOutput::Json => {
            let rep = SelftestReport {
                schema_version: SCHEMA_VERSION,
                command: "selftest",
                mode: if quick { "quick" } else { "full" },
                passed,
                criteria: reports
                    .into_iter()
                    .map(|r| CriterionLine { id: r.id, title: r.title, passed: r.passed, detail: r.detail })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut out, &rep)?;
            writeln!(out)?;
        }
    }
    Ok(passed)
}
