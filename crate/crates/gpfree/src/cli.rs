//! `gpfree` subcommands.
//!
//! Exit status: 0 on success, 1 when a check fails or a computation is
//! rejected (the structured error name is printed), 2 on usage errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use gpfree_core::analysis::{
    default_sum_grid, feasibility_check, feasibility_point, fit_sum_constant, gap_report,
    interval_miss_in_family, lemma5_check, lemma7_partition, membership_bound_check, middle_separation,
    sum_s, verify_gp_free, FeasibilityForm, LemmaCheckResult, SumGridPoint, VerifyMode,
};
use gpfree_core::baselines::{sieve_power_free, sieve_variable_kfree};
use gpfree_core::enumerate::{enumerate_gk, enumerate_gk_star};
use gpfree_core::process::MinimalFamily;
use gpfree_core::{GapFunction, LengthFunction, SequenceWindow};

use crate::error::{CliError, Result};
use crate::functions::{gap_to_string, length_to_string, load_table};
use crate::manifest::RunManifest;
use crate::output::{
    csv_check_results, csv_exclusions, csv_progressions, csv_table, csv_witnesses, describe_witness,
    json_results, num, write_atomic, Format, ProgressionJson,
};
use crate::window_io::{encode_window, ingest_sequence, WindowHeader};

#[derive(Debug, Parser, Serialize)]
#[command(name = "gpfree", version, about = "Geometric-progression-free sequences with small gaps")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Window bound N.
    #[arg(long = "max", global = true, value_name = "N")]
    pub max: Option<u64>,
    /// Constant length function.
    #[arg(long, global = true, value_name = "V")]
    pub k_const: Option<f64>,
    /// Length function max(3, E ln n).
    #[arg(long, global = true, value_name = "E")]
    pub k_epslog: Option<f64>,
    /// Two-column (threshold, value) length table.
    #[arg(long, global = true, value_name = "FILE")]
    pub k_table: Option<PathBuf>,
    /// Round the length function to even integers >= 6 before use.
    #[arg(long, global = true)]
    pub k_even: bool,
    /// Constant gap function.
    #[arg(long, global = true, value_name = "V")]
    pub h_const: Option<f64>,
    /// Gap function N^A.
    #[arg(long, global = true, value_name = "A")]
    pub h_power: Option<f64>,
    /// Gap function exp(C ln N / ln ln N).
    #[arg(long, global = true, value_name = "C")]
    pub h_explog: Option<f64>,
    /// Two-column (threshold, value) gap table.
    #[arg(long, global = true, value_name = "FILE")]
    pub h_table: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0, value_name = "U64")]
    pub seed: u64,
    /// Monte Carlo trials.
    #[arg(long, global = true, default_value_t = 10_000, value_name = "T")]
    pub trials: u64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; a manifest is written next to it.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// List G_k, or G_k* with --minimal.
    Enumerate {
        #[arg(long)]
        minimal: bool,
    },
    /// Run the random process and write the resulting window.
    Build {
        /// CSV of exclusion records.
        #[arg(long, value_name = "PATH")]
        records: Option<PathBuf>,
    },
    /// Look for a forbidden progression in a window file or a freshly built window.
    Check {
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
        /// Only look for progressions of length >= k(N).
        #[arg(long)]
        definitional: bool,
    },
    /// Gap statistics of a window file or a freshly built window.
    Gaps {
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Middle-term multiplicity and membership probability bounds.
    Lemma5 {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        n_from: Option<u64>,
        #[arg(long)]
        n_to: Option<u64>,
    },
    /// Middle-term separation and interval-miss probability.
    Lemma6 {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        c: Vec<f64>,
        /// Skip the Monte Carlo interval estimate.
        #[arg(long)]
        no_mc: bool,
    },
    /// Power-divisible partition and smoothing bound; optionally fit the sum constant.
    Lemma7 {
        #[arg(long, value_delimiter = ',')]
        x: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        c: Vec<f64>,
        /// Use the built-in 50-point grid over x, h in {10,100}, C in {1,5}, k in {6,8}.
        #[arg(long)]
        default_grid: bool,
        /// Also fit B in S >= B C h^(1 - ln 2).
        #[arg(long)]
        fit: bool,
    },
    /// The interval sum S(x, h, k, C).
    SumS {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        c: Vec<f64>,
    },
    /// Feasibility inequalities over n in [from, to].
    Feasible {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// One row per n instead of a summary.
        #[arg(long)]
        pointwise: bool,
    },
    /// Power-free (--power T) or variable-exponent (--epsilon E) baseline windows.
    Sieve {
        #[arg(long, conflicts_with = "epsilon")]
        power: Option<u32>,
        #[arg(long)]
        epsilon: Option<f64>,
        /// CSV of exclusion witnesses (variable-exponent sieve only).
        #[arg(long, value_name = "PATH")]
        witnesses: Option<PathBuf>,
    },
    /// Re-run the command recorded in a manifest.
    Replay { manifest: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Enumerate { .. } => "enumerate",
            Command::Build { .. } => "build",
            Command::Check { .. } => "check",
            Command::Gaps { .. } => "gaps",
            Command::Lemma5 { .. } => "lemma5",
            Command::Lemma6 { .. } => "lemma6",
            Command::Lemma7 { .. } => "lemma7",
            Command::SumS { .. } => "sum-s",
            Command::Feasible { .. } => "feasible",
            Command::Sieve { .. } => "sieve",
            Command::Replay { .. } => "replay",
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => return report_error(&e),
    };
    match pool.install(|| dispatch(&cli, &argv)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => report_error(&e),
    }
}

fn report_error(e: &CliError) -> i32 {
    eprintln!("error[{}]: {e}", e.name());
    e.exit_code()
}

/// Worker pool sized by `GPFREE_THREADS` (unset or 0 means one per core).
fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var("GPFREE_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("GPFREE_THREADS must be a number, got `{v}`")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

impl GlobalArgs {
    fn max(&self) -> Result<u64> {
        match self.max {
            Some(0) => Err(CliError::Usage("--max must be positive".into())),
            Some(n) => Ok(n),
            None => Err(CliError::Usage("--max N is required".into())),
        }
    }

    fn length(&self) -> Result<LengthFunction> {
        let given = [self.k_const.is_some(), self.k_epslog.is_some(), self.k_table.is_some()];
        let k = match given.iter().filter(|&&g| g).count() {
            0 => return Err(CliError::Usage("one of --k-const, --k-epslog, --k-table is required".into())),
            1 => {
                if let Some(v) = self.k_const {
                    LengthFunction::constant(v)?
                } else if let Some(e) = self.k_epslog {
                    LengthFunction::eps_log(e)?
                } else {
                    LengthFunction::table(load_table(self.k_table.as_deref().unwrap())?)?
                }
            }
            _ => {
                return Err(CliError::Usage(
                    "--k-const, --k-epslog and --k-table are mutually exclusive".into(),
                ))
            }
        };
        Ok(if self.k_even { k.normalize() } else { k })
    }

    fn gap(&self) -> Result<GapFunction> {
        let given =
            [self.h_const.is_some(), self.h_power.is_some(), self.h_explog.is_some(), self.h_table.is_some()];
        match given.iter().filter(|&&g| g).count() {
            0 => {
                Err(CliError::Usage("one of --h-const, --h-power, --h-explog, --h-table is required".into()))
            }
            1 => Ok(if let Some(v) = self.h_const {
                GapFunction::constant(v)?
            } else if let Some(a) = self.h_power {
                GapFunction::power(a)?
            } else if let Some(c) = self.h_explog {
                GapFunction::exp_log_ratio(c)?
            } else {
                GapFunction::table(load_table(self.h_table.as_deref().unwrap())?)?
            }),
            _ => Err(CliError::Usage("gap function options are mutually exclusive".into())),
        }
    }
}

#[derive(Serialize)]
struct ResolvedParams<'a> {
    args: &'a Cli,
    k: Option<String>,
    h: Option<String>,
}

/// Collects what a command produced and writes it, with a manifest when an
/// output path is given.
struct Emitter<'a> {
    cli: &'a Cli,
    argv: &'a [String],
    outputs: Vec<PathBuf>,
}

impl<'a> Emitter<'a> {
    fn new(cli: &'a Cli, argv: &'a [String]) -> Self {
        Self { cli, argv, outputs: Vec::new() }
    }

    fn side_file(&mut self, path: &Path, text: &str) -> Result<()> {
        write_atomic(path, text)?;
        self.outputs.push(path.to_path_buf());
        Ok(())
    }

    fn main_output(mut self, text: &str) -> Result<()> {
        let Some(out) = self.cli.global.out.as_deref() else {
            print!("{text}");
            return Ok(());
        };
        write_atomic(out, text)?;
        self.outputs.insert(0, out.to_path_buf());
        let g = &self.cli.global;
        let params = ResolvedParams {
            args: self.cli,
            k: g.length().ok().map(|k| length_to_string(&k)),
            h: g.gap().ok().map(|h| gap_to_string(&h)),
        };
        let manifest = RunManifest {
            command: self.cli.command.name().to_string(),
            argv: self.argv.to_vec(),
            params: serde_json::to_value(&params)?,
            seed: g.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: self.outputs.clone(),
        };
        manifest.write_next_to(out)?;
        Ok(())
    }
}

fn render_checks(format: Format, results: &[LemmaCheckResult]) -> Result<String> {
    match format {
        Format::Json => json_results(results),
        Format::Csv => csv_check_results(results),
    }
}

/// Prints every failed check and reports whether all held.
fn all_hold(results: &[LemmaCheckResult]) -> bool {
    let mut ok = true;
    for r in results.iter().filter(|r| !r.holds) {
        ok = false;
        let params: Vec<String> = r.params.iter().map(|p| format!("{}={}", p.name, num(p.value))).collect();
        let witness = r.witness.as_ref().map(describe_witness).unwrap_or_default();
        eprintln!(
            "check failed: {:?} [{}] lhs={} rhs={} {witness}",
            r.claim,
            params.join(" "),
            num(r.lhs),
            num(r.rhs)
        );
    }
    ok
}

fn window_source(cli: &Cli, input: Option<&Path>) -> Result<SequenceWindow> {
    match input {
        Some(path) => ingest_sequence(path, cli.global.max),
        None => {
            let k = cli.global.length()?;
            let family = MinimalFamily::new(cli.global.max()?, &k)?;
            Ok(family.realize(cli.global.seed).0)
        }
    }
}

fn grid<T: Copy, U: Copy>(xs: &[T], cs: &[U]) -> Vec<(T, U)> {
    xs.iter().flat_map(|&x| cs.iter().map(move |&c| (x, c))).collect()
}

fn dispatch(cli: &Cli, argv: &[String]) -> Result<bool> {
    let g = &cli.global;
    let emit = Emitter::new(cli, argv);
    match &cli.command {
        Command::Enumerate { minimal } => {
            let k = g.length()?;
            let max = g.max()?;
            let ps = if *minimal { enumerate_gk_star(max, &k) } else { enumerate_gk(max, &k) };
            let text = match g.format {
                Format::Json => json_results(&ps.iter().map(ProgressionJson::from).collect::<Vec<_>>())?,
                Format::Csv => csv_progressions(&ps)?,
            };
            emit.main_output(&text)?;
            Ok(true)
        }
        Command::Build { records } => {
            let k = g.length()?;
            let family = MinimalFamily::new(g.max()?, &k)?;
            let (window, recs) = family.realize(g.seed);
            let header = WindowHeader { k_spec: Some(length_to_string(&k)), seed: Some(g.seed) };
            let mut emit = emit;
            if let Some(path) = records {
                emit.side_file(path, &csv_exclusions(&recs)?)?;
            }
            eprintln!(
                "built window N={} with {} exclusions from {} minimal progressions",
                window.max(),
                window.max() - window.count(),
                recs.len()
            );
            emit.main_output(&encode_window(&window, &header))?;
            Ok(true)
        }
        Command::Check { input, definitional } => {
            let k = g.length()?;
            let window = window_source(cli, input.as_deref())?;
            let mode = if *definitional { VerifyMode::Definitional } else { VerifyMode::Family };
            let found = verify_gp_free(&window, &k, mode);
            let mode_name = if *definitional { "definitional" } else { "family" };
            #[derive(Serialize)]
            struct CheckRow {
                max: u64,
                mode: &'static str,
                gp_free: bool,
                witness: Option<ProgressionJson>,
            }
            let row = CheckRow {
                max: window.max(),
                mode: mode_name,
                gp_free: found.is_none(),
                witness: found.as_ref().map(ProgressionJson::from),
            };
            let text = match g.format {
                Format::Json => json_results(&[row])?,
                Format::Csv => {
                    let w = found.map(|p| [p.a(), p.b(), p.c(), u64::from(p.len())].map(|v| v.to_string()));
                    let mut cells = vec![window.max().to_string(), mode_name.into(), w.is_none().to_string()];
                    cells.extend(w.unwrap_or_default());
                    csv_table(&["N", "mode", "gp_free", "a", "b", "c", "len"], vec![cells])?
                }
            };
            emit.main_output(&text)?;
            if let Some(p) = found {
                eprintln!(
                    "check failed: window contains a forbidden progression: {}",
                    describe_witness(&gpfree_core::analysis::Witness::Progression(p))
                );
                return Ok(false);
            }
            Ok(true)
        }
        Command::Gaps { input } => {
            let h = g.gap()?;
            let window = window_source(cli, input.as_deref())?;
            let report = gap_report(&window, &h)?;
            let text = match g.format {
                Format::Json => json_results(&[&report])?,
                Format::Csv => csv_table(
                    &["N", "members", "max_gap", "argmax", "leading_gap", "trailing_gap", "h", "fitted_c"],
                    vec![vec![
                        report.max.to_string(),
                        report.members.to_string(),
                        report.max_gap.to_string(),
                        report.argmax.map(|a| a.to_string()).unwrap_or_default(),
                        report.leading_gap.to_string(),
                        report.trailing_gap.to_string(),
                        num(report.gap_value),
                        num(report.fitted_c),
                    ]],
                )?,
            };
            emit.main_output(&text)?;
            Ok(true)
        }
        Command::Lemma5 { n, n_from, n_to } => {
            let k = g.length()?;
            let max = g.max()?;
            let ns: Vec<u64> = match (n, n_from, n_to) {
                (Some(n), None, None) => vec![*n],
                (None, Some(a), Some(b)) if a <= b => (*a..=*b).collect(),
                _ => return Err(CliError::Usage("give --n, or --n-from and --n-to with from <= to".into())),
            };
            let family = if g.trials > 0 { Some(MinimalFamily::new(max, &k)?) } else { None };
            let rows: Vec<Vec<LemmaCheckResult>> = ns
                .par_iter()
                .map(|&n| {
                    let mut out = vec![lemma5_check(n, max, &k)?];
                    if let Some(f) = &family {
                        out.push(membership_bound_check(f, n, &k, g.trials, g.seed)?);
                    }
                    Ok(out)
                })
                .collect::<std::result::Result<_, gpfree_core::Error>>()?;
            let results: Vec<LemmaCheckResult> = rows.into_iter().flatten().collect();
            emit.main_output(&render_checks(g.format, &results)?)?;
            Ok(all_hold(&results))
        }
        Command::Lemma6 { x, c, no_mc } => {
            let k = g.length()?;
            let max = g.max()?;
            let mut results: Vec<LemmaCheckResult> = x
                .par_iter()
                .map(|&x| middle_separation(max, &k, x))
                .collect::<std::result::Result<_, _>>()?;
            if !no_mc {
                let h = g.gap()?;
                let family = MinimalFamily::new(max, &k)?;
                let points = grid(x, c);
                let mc: Vec<LemmaCheckResult> = points
                    .par_iter()
                    .map(|&(x, cc)| interval_miss_in_family(&family, x, cc, &h, &k, g.trials, g.seed))
                    .collect::<std::result::Result<_, _>>()?;
                results.extend(mc);
            }
            emit.main_output(&render_checks(g.format, &results)?)?;
            Ok(all_hold(&results))
        }
        Command::Lemma7 { x, c, default_grid, fit } => {
            let points: Vec<SumGridPoint> = if *default_grid {
                default_sum_grid()
            } else {
                let h = g.gap()?;
                let k = g.length()?;
                if x.is_empty() {
                    return Err(CliError::Usage("give --x values or --default-grid".into()));
                }
                grid(x, c)
                    .into_iter()
                    .map(|(x, cc)| {
                        let kv = k.even_value(x)?;
                        Ok(SumGridPoint { x, h: h.eval(x), c: cc, k: kv })
                    })
                    .collect::<std::result::Result<_, gpfree_core::Error>>()?
            };
            let mut results: Vec<LemmaCheckResult> = points
                .par_iter()
                .map(|p| {
                    lemma7_partition(
                        p.x,
                        &GapFunction::constant(p.h)?,
                        &LengthFunction::constant(f64::from(p.k))?,
                        p.c,
                    )
                })
                .collect::<std::result::Result<_, _>>()?;
            if *fit {
                results.push(fit_sum_constant(&points)?.result);
            }
            emit.main_output(&render_checks(g.format, &results)?)?;
            Ok(all_hold(&results))
        }
        Command::SumS { x, c } => {
            let h = g.gap()?;
            let k = g.length()?;
            #[derive(Serialize)]
            struct SumRow {
                x: u64,
                c: f64,
                h: f64,
                k: f64,
                sum_s: f64,
                miss_bound: f64,
            }
            let rows: Vec<SumRow> = grid(x, c)
                .par_iter()
                .map(|&(x, cc)| {
                    let s = sum_s(x, &h, &k, cc)?;
                    Ok(SumRow { x, c: cc, h: h.eval(x), k: k.eval(x), sum_s: s, miss_bound: (-s).exp() })
                })
                .collect::<std::result::Result<_, gpfree_core::Error>>()?;
            let text = match g.format {
                Format::Json => json_results(&rows)?,
                Format::Csv => csv_table(
                    &["x", "C", "h", "k", "sum_s", "miss_bound"],
                    rows.iter()
                        .map(|r| {
                            vec![
                                r.x.to_string(),
                                num(r.c),
                                num(r.h),
                                num(r.k),
                                num(r.sum_s),
                                num(r.miss_bound),
                            ]
                        })
                        .collect(),
                )?,
            };
            emit.main_output(&text)?;
            Ok(true)
        }
        Command::Feasible { from, to, pointwise } => {
            let h = g.gap()?;
            let k = g.length()?;
            if *pointwise {
                if *from == 0 || from > to {
                    return Err(CliError::Usage("need 1 <= --from <= --to".into()));
                }
                #[derive(Serialize)]
                struct Row {
                    n: u64,
                    rhs: f64,
                    lhs_general: f64,
                    holds_general: bool,
                    lhs_reduced: f64,
                    holds_reduced: bool,
                }
                let rows: Vec<Row> = (*from..=*to)
                    .map(|n| {
                        let a = feasibility_point(&h, &k, n, FeasibilityForm::General);
                        let b = feasibility_point(&h, &k, n, FeasibilityForm::Reduced);
                        Row {
                            n,
                            rhs: a.rhs,
                            lhs_general: a.lhs,
                            holds_general: a.holds,
                            lhs_reduced: b.lhs,
                            holds_reduced: b.holds,
                        }
                    })
                    .collect();
                let text = match g.format {
                    Format::Json => json_results(&rows)?,
                    Format::Csv => csv_table(
                        &["n", "rhs", "lhs_general", "holds_general", "lhs_reduced", "holds_reduced"],
                        rows.iter()
                            .map(|r| {
                                vec![
                                    r.n.to_string(),
                                    num(r.rhs),
                                    num(r.lhs_general),
                                    r.holds_general.to_string(),
                                    num(r.lhs_reduced),
                                    r.holds_reduced.to_string(),
                                ]
                            })
                            .collect(),
                    )?,
                };
                emit.main_output(&text)?;
                return Ok(rows.iter().all(|r| r.holds_general && r.holds_reduced));
            }
            let results = feasibility_check(&h, &k, *from, *to)?;
            emit.main_output(&render_checks(g.format, &results)?)?;
            Ok(all_hold(&results))
        }
        Command::Sieve { power, epsilon, witnesses } => {
            let max = g.max()?;
            let mut emit = emit;
            let (window, header) = match (power, epsilon) {
                (Some(t), None) => {
                    if *t < 2 {
                        return Err(CliError::Usage("--power must be at least 2".into()));
                    }
                    if witnesses.is_some() {
                        return Err(CliError::Usage("--witnesses applies to --epsilon only".into()));
                    }
                    (
                        sieve_power_free(max, *t),
                        WindowHeader { k_spec: Some(format!("const:{t}")), seed: None },
                    )
                }
                (None, Some(e)) => {
                    let (w, wit) = sieve_variable_kfree(max, *e)?;
                    if let Some(path) = witnesses {
                        emit.side_file(path, &csv_witnesses(&wit)?)?;
                    }
                    (w, WindowHeader { k_spec: Some(format!("epslog:{e}")), seed: None })
                }
                _ => return Err(CliError::Usage("give exactly one of --power or --epsilon".into())),
            };
            eprintln!(
                "sieved N={max}: {} members, density {:.6}",
                window.count(),
                window.count() as f64 / max as f64
            );
            emit.main_output(&encode_window(&window, &header))?;
            Ok(true)
        }
        Command::Replay { manifest } => {
            let m = RunManifest::load(manifest)?;
            let mut args = vec![OsString::from("gpfree")];
            args.extend(m.argv.iter().map(OsString::from));
            let replayed = Cli::try_parse_from(&args)
                .map_err(|e| CliError::Usage(format!("manifest arguments do not parse: {e}")))?;
            if matches!(replayed.command, Command::Replay { .. }) {
                return Err(CliError::Usage("a manifest cannot replay another replay".into()));
            }
            dispatch(&replayed, &m.argv)
        }
    }
}
