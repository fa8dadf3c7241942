//! levdec: exact level decompositions of Borcherds superalgebras and tensor
//! hierarchy algebras over extended Kac-Moody algebras.
//!
//! Exit codes: 0 success / all selected checks pass, 1 a verification check
//! failed, 2 configuration error, 3 internal assertion, 4 column-fit
//! surplus.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use levdec::branching::BranchCache;
use levdec::cartan::{build_cartan, parse_algebra, AlgebraFamily, BaseSeries, CartanSpec};
use levdec::error::Error;
use levdec::render;
use levdec::tha::{self, AssembleMode};
use levdec::weyl::GradingData;

#[derive(Parser)]
#[command(name = "levdec", version, about)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Cache directory (or LEVDEC_CACHE_DIR; "none" disables).
    #[arg(long, global = true)]
    cache_dir: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
    Markdown,
}

#[derive(Args)]
struct WindowArgs {
    /// Maximum level (rows of the table).
    #[arg(long, default_value_t = 12)]
    max_level: i64,
    /// Maximum degree (columns of the table).
    #[arg(long, default_value_t = 10)]
    max_degree: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate Weyl elements with gl-dominant shifted images.
    WeylScan {
        /// Algebra selector: e10, e9, a1++, ...
        #[arg(long)]
        algebra: String,
        /// Grading node (defaults to the series convention).
        #[arg(long)]
        node: Option<i32>,
        /// Level: the scanned weight is ell times the fundamental weight at
        /// the leftmost node.
        #[arg(long, default_value_t = 1)]
        ell: i64,
        #[arg(long, default_value_t = 7)]
        max_degree: i64,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        format: OutFormat,
    },
    /// Full pipeline: branch, peel levels, assemble, fit columns, and emit
    /// the column-top table.
    Columns {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        node: Option<i32>,
        #[command(flatten)]
        window: WindowArgs,
        /// borcherds-only or conjecture content.
        #[arg(long, value_enum, default_value_t = ModeArg::Conjecture)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        format: OutFormat,
        /// Also write per-cell figure data (JSON) to this path.
        #[arg(long)]
        figure_data: Option<PathBuf>,
    },
    /// Emit the Borcherds level modules themselves.
    Levels {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        node: Option<i32>,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Run structural checks and report.
    Verify {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        node: Option<i32>,
        /// Comma-separated: conjecture,extras,reflection,free-diagonal,
        /// column-tops, all, none.
        #[arg(long, default_value = "all")]
        checks: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Coset Virasoro character chi(q) = phi(q^2)/phi(q).
    Virasoro {
        #[arg(long, default_value_t = 200)]
        order: usize,
        /// Also check chi - 1 - q chi for negative coefficients.
        #[arg(long, default_value_t = true)]
        check_shift: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    BorcherdsOnly,
    Conjecture,
}

struct Resolved {
    family: AlgebraFamily,
    spec: CartanSpec,
    grading_node: i32,
    lambda_node: i32,
    slope: i64,
    shift: i64,
}

fn resolve(algebra: &str, node: Option<i32>) -> Result<Resolved, Error> {
    let family = parse_algebra(algebra)?;
    let spec = build_cartan(family.base, family.n, false)?;
    let grading_node = node.unwrap_or_else(|| family.default_grading_node());
    let g = GradingData::new(&spec, grading_node)?;
    Ok(Resolved {
        family,
        spec,
        grading_node,
        lambda_node: family.lambda_node(),
        slope: g.slope,
        shift: family.duality_center_m2(),
    })
}

fn cache_from(dir: &Option<String>) -> BranchCache {
    let chosen = dir
        .clone()
        .or_else(|| std::env::var("LEVDEC_CACHE_DIR").ok())
        .unwrap_or_else(|| ".levdec-cache".to_string());
    if chosen == "none" {
        BranchCache::disabled()
    } else {
        BranchCache::new(Some(PathBuf::from(chosen)))
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::UnsupportedSeries(_)
        | Error::RankOutOfRange(_)
        | Error::UnknownNode(_)
        | Error::NotBosonic(_)
        | Error::InvalidCartan(_)
        | Error::RankMismatch { .. }
        | Error::NegativeArgument(_)
        | Error::InsufficientLevels { .. } => 2,
        Error::ColumnSurplus(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: could not configure worker pool: {err}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::WeylScan {
            algebra,
            node,
            ell,
            max_degree,
            format,
        } => {
            let r = resolve(algebra, *node)?;
            let mut lambda = vec![0i64; r.spec.rank()];
            lambda[r.spec.idx(r.lambda_node)?] = *ell;
            let rows =
                levdec::weyl::enumerate_gl_dominant(&r.spec, &lambda, r.grading_node, *max_degree)?;
            match format {
                OutFormat::Csv => print!("{}", render::weyl_scan_csv(&rows)),
                OutFormat::Markdown => print!("{}", render::weyl_scan_markdown(&rows)),
                OutFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&render::weyl_scan_json(&rows))?
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Columns {
            algebra,
            node,
            window,
            mode,
            format,
            figure_data,
        } => {
            let r = resolve(algebra, *node)?;
            if window.max_level < 1 {
                println!();
                return Ok(ExitCode::SUCCESS);
            }
            let cache = cache_from(&cli.cache_dir);
            let mode = match mode {
                ModeArg::BorcherdsOnly => AssembleMode::BorcherdsOnly,
                ModeArg::Conjecture => AssembleMode::Conjecture,
            };
            let need = match mode {
                AssembleMode::BorcherdsOnly => window.max_level as usize,
                AssembleMode::Conjecture => window.max_level as usize + 1,
            };
            let levels = levdec::borcherds::borcherds_levels(
                &r.spec,
                r.lambda_node,
                r.grading_node,
                need,
                window.max_degree,
                &cache,
            )?;
            let content = tha::assemble_content(
                &levels,
                mode,
                r.slope,
                r.shift,
                1,
                window.max_level,
                window.max_degree,
                None,
            )?;
            let fit = tha::column_fit(&content)?;
            match format {
                OutFormat::Csv => print!("{}", render::tops_csv(&fit, 1)),
                OutFormat::Markdown => print!("{}", render::tops_markdown(&fit, 1)),
                OutFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&render::tops_json(&fit))?)
                }
            }
            if let Some(path) = figure_data {
                let data = render::figure_data(&content, &fit);
                std::fs::write(path, serde_json::to_vec_pretty(&data)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Levels {
            algebra,
            node,
            window,
        } => {
            let r = resolve(algebra, *node)?;
            let cache = cache_from(&cli.cache_dir);
            let levels = levdec::borcherds::borcherds_levels(
                &r.spec,
                r.lambda_node,
                r.grading_node,
                window.max_level.max(0) as usize,
                window.max_degree,
                &cache,
            )?;
            println!(
                "{}",
                serde_json::to_string_pretty(&render::levels_json(&levels))?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            algebra,
            node,
            checks,
            window,
        } => run_verify(cli, algebra, *node, checks, window),
        Command::Virasoro { order, check_shift } => {
            let chi = levdec::virasoro::coset_character(*order);
            println!(
                "{}",
                chi.coeffs
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            if *check_shift {
                let report = levdec::virasoro::check_nonneg_shift(&chi);
                match report.first_negative {
                    None => println!("chi - 1 - q chi: no negative coefficients through q^{order}"),
                    Some(k) => {
                        println!("chi - 1 - q chi: first negative coefficient at q^{k}");
                        return Ok(ExitCode::from(1));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_verify(
    cli: &Cli,
    algebra: &str,
    node: Option<i32>,
    checks: &str,
    window: &WindowArgs,
) -> Result<ExitCode, Error> {
    let r = resolve(algebra, node)?;
    let is_e = matches!(r.family.base, BaseSeries::E8);
    let selected: Vec<String> = checks
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    let all = selected.iter().any(|s| s == "all");
    let has = |name: &str| all || selected.iter().any(|s| s == name);
    let mut report = serde_json::Map::new();
    report.insert(
        "schema".into(),
        serde_json::Value::String("levdec-verify/1".into()),
    );
    report.insert("algebra".into(), serde_json::Value::String(algebra.into()));
    let mut pass = true;

    if selected.iter().all(|s| s == "none") && !all {
        report.insert("pass".into(), serde_json::Value::Bool(true));
        println!("{}", serde_json::to_string_pretty(&report)?);
        return Ok(ExitCode::SUCCESS);
    }

    let cache = cache_from(&cli.cache_dir);
    let need_levels = window.max_level as usize + 1;
    let levels = levdec::borcherds::borcherds_levels(
        &r.spec,
        r.lambda_node,
        r.grading_node,
        need_levels,
        window.max_degree,
        &cache,
    )?;
    let root_table =
        levdec::rootmult::peterson_multiplicities(&r.spec, r.grading_node, window.max_degree)?;
    let adjoint =
        levdec::rootmult::adjoint_gl_grading(&r.spec, &root_table, r.grading_node, window.max_degree)?;

    if has("extras") {
        let content = tha::assemble_content(
            &levels,
            AssembleMode::BorcherdsOnly,
            r.slope,
            r.shift,
            0,
            window.max_level,
            window.max_degree,
            Some(&adjoint),
        )?;
        let extras = tha::detect_extras(&content)?;
        let list: Vec<serde_json::Value> = extras
            .iter()
            .map(|e| {
                serde_json::json!({
                    "level": e.level,
                    "degree": e.degree,
                    "content": e.content.render(),
                })
            })
            .collect();
        report.insert("extras".into(), serde_json::Value::Array(list));
    }

    let conjecture_content = if has("conjecture") || has("reflection") || has("free-diagonal")
        || has("column-tops")
    {
        Some(tha::assemble_content(
            &levels,
            AssembleMode::Conjecture,
            r.slope,
            r.shift,
            1,
            window.max_level,
            window.max_degree,
            None,
        )?)
    } else {
        None
    };

    if has("conjecture") {
        let content = conjecture_content.as_ref().unwrap();
        let c = tha::verify_conjecture(content)?;
        pass &= c.pass;
        report.insert("conjecture".into(), serde_json::to_value(&c)?);
        println!(
            "conjecture: {} ({} tops, {} deficits)",
            if c.pass { "pass" } else { "FAIL" },
            c.tops,
            c.deficits.len()
        );
    }
    if has("reflection") {
        let content = conjecture_content.as_ref().unwrap();
        let rr = tha::check_reflection(&levels, &adjoint, content, r.family.n)?;
        pass &= rr.pass;
        println!(
            "reflection: {} ({} pairs)",
            if rr.pass { "pass" } else { "FAIL" },
            rr.pairs_checked
        );
        report.insert("reflection".into(), serde_json::to_value(&rr)?);
    }
    if has("free-diagonal") && !is_e {
        let content = conjecture_content.as_ref().unwrap();
        let fr = tha::check_free_diagonal(content, r.family.r() as i64)?;
        pass &= fr.pass;
        println!(
            "free-diagonal: {} ({} degrees)",
            if fr.pass { "pass" } else { "FAIL" },
            fr.checked
        );
        report.insert("free_diagonal".into(), serde_json::to_value(&fr)?);
    }
    if has("column-tops") {
        let content = conjecture_content.as_ref().unwrap();
        let fit = tha::column_fit(content)?;
        let ct = tha::check_column_tops(&fit, &adjoint, is_e, r.family.r() as i64)?;
        pass &= ct.pass;
        println!(
            "column-tops: {} ({} degrees)",
            if ct.pass { "pass" } else { "FAIL" },
            ct.checked
        );
        report.insert("column_tops".into(), serde_json::to_value(&ct)?);
    }

    report.insert("pass".into(), serde_json::Value::Bool(pass));
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
