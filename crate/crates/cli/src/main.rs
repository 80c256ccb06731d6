use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use weyl_toric::cache::write_complex_to;
use weyl_toric::char_row::orbit_report;
use weyl_toric::coxeter::DEFAULT_MEMORY_BUDGET;
use weyl_toric::pipeline::{
    betti_with_context, complex_stats, euler_check, oracle, reduce_report, verify, BettiReport, Context,
    PipelineConfig, DEFAULT_PIECEWISE_ABOVE_RANK,
};
use weyl_toric::{Error, Execution, RootSystemSpec};

/// Rational Betti numbers of real toric varieties of Weyl chambers.
#[derive(Parser, Debug)]
#[command(name = "weyl-toric", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug)]
struct Options {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Memory budget in bytes for complex construction.
    #[arg(long, global = true, env = "WEYL_TORIC_MEMORY_BUDGET", default_value_t = DEFAULT_MEMORY_BUDGET)]
    memory_budget: u64,
    /// Seed for the random primes of the modular rank computations.
    #[arg(long, global = true, env = "WEYL_TORIC_PRIME_SEED")]
    prime_seed: Option<u64>,
    /// Seed the prime generator from OS entropy.
    #[arg(long, global = true, conflicts_with = "prime_seed")]
    random_primes: bool,
    /// Build induced subcomplexes piecewise above this rank.
    #[arg(long, global = true, env = "WEYL_TORIC_PIECEWISE_ABOVE_RANK", default_value_t = DEFAULT_PIECEWISE_ABOVE_RANK)]
    piecewise_above_rank: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "WEYL_TORIC_THREADS")]
    threads: Option<usize>,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Directory for resumable checkpoints.
    #[arg(long, global = true, env = "WEYL_TORIC_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Require integral acyclicity of links when removing vertices.
    #[arg(long, global = true)]
    integral_links: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers of the real toric variety.
    Betti { spec: String },
    /// Orbits of nonzero row elements of the characteristic matrix.
    Orbits { spec: String },
    /// Statistics or a dump of the Coxeter complex.
    Complex {
        spec: String,
        /// Print counts (default).
        #[arg(long, conflicts_with = "dump")]
        stats: bool,
        /// Write the facet list in the complex text format.
        #[arg(long)]
        dump: bool,
    },
    /// Build and reduce the induced subcomplex of one row element.
    Reduce {
        spec: String,
        /// Row element as a bit string `u_1 ... u_n`.
        #[arg(long)]
        orbit_rep: String,
    },
    /// Closed-form, reference, Z_2 and Euler characteristic data.
    Oracle { spec: String },
    /// Compute the Betti numbers and compare them with the oracles.
    Verify { spec: String },
}

const EXIT_MISMATCH: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INVALID: u8 = 4;

fn config(o: &Options) -> PipelineConfig {
    PipelineConfig {
        memory_budget: o.memory_budget,
        prime_seed: if o.random_primes {
            None
        } else {
            Some(o.prime_seed.unwrap_or(PipelineConfig::default().prime_seed.expect("seeded default")))
        },
        piecewise_above_rank: o.piecewise_above_rank,
        cache_dir: o.cache_dir.clone(),
        integral_links: o.integral_links,
        exec: if o.sequential { Execution::Sequential } else { Execution::Parallel },
        ..PipelineConfig::default()
    }
}

fn emit<T: Serialize>(json: bool, value: &T, table: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> io::Result<()> {
    let mut out = io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut out, value)?;
        writeln!(out)
    } else {
        table(&mut out)
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn betti_table(w: &mut dyn Write, r: &BettiReport) -> io::Result<()> {
    writeln!(w, "{}", r.spec)?;
    writeln!(
        w,
        "{:<10} {:>6} {:>8} {:>6} {:>9} {:>9}  reduced Betti",
        "rep", "size", "|S|", "label", "vertices", "reduced"
    )?;
    for o in &r.orbits {
        writeln!(
            w,
            "{:<10} {:>6} {:>8} {:>6} {:>9} {:>9}  {}",
            o.representative,
            o.orbit_size,
            o.subset_size,
            o.label.as_deref().unwrap_or("-"),
            o.complex_vertices,
            o.reduced_vertices,
            o.reduced_betti
        )?;
    }
    writeln!(w, "betti ({})", join(&r.betti))?;
    writeln!(w, "euler characteristic {}", r.euler_characteristic)
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let o = &cli.opts;
    weyl_toric::par::init_threads(o.threads);
    let cfg = config(o);
    let parse = |s: &str| -> Result<RootSystemSpec, Error> { s.parse() };
    match &cli.command {
        Command::Betti { spec } => {
            let ctx = Context::new(parse(spec)?, cfg)?;
            let report = betti_with_context(&ctx)?;
            euler_check(&report)?;
            emit(o.json, &report, |w| betti_table(w, &report))?;
        }
        Command::Orbits { spec } => {
            let ctx = Context::new(parse(spec)?, cfg)?;
            let orbits = orbit_report(ctx.group(), ctx.table());
            let value = serde_json::json!({
                "schema": weyl_toric::pipeline::REPORT_SCHEMA,
                "spec": ctx.spec().to_string(),
                "nonzero_rows": orbits.iter().map(|r| r.size).sum::<usize>(),
                "orbits": orbits,
            });
            emit(o.json, &value, |w| {
                writeln!(w, "{:<10} {:>6} {:>8} {:>6}", "rep", "size", "|S|", "label")?;
                for r in &orbits {
                    writeln!(
                        w,
                        "{:<10} {:>6} {:>8} {:>6}",
                        r.representative,
                        r.size,
                        r.subset_size,
                        r.label.unwrap_or("-")
                    )?;
                }
                writeln!(w, "{} nonzero rows in {} orbits", value["nonzero_rows"], orbits.len())
            })?;
        }
        Command::Complex { spec, dump, .. } => {
            let ctx = Context::new(parse(spec)?, cfg)?;
            if *dump {
                let k = ctx.coxeter()?;
                let mut out = io::BufWriter::new(io::stdout().lock());
                write_complex_to(&mut out, k.table(), &k.to_simplicial())?;
                out.flush()?;
            } else {
                let stats = complex_stats(&ctx, true)?;
                emit(o.json, &stats, |w| {
                    writeln!(w, "{}", stats.spec)?;
                    writeln!(w, "vertices {} (orbits {})", stats.vertices, join(&stats.orbit_sizes))?;
                    let how = if stats.facets_materialized { "built" } else { "|W|, not built" };
                    writeln!(w, "facets {} ({how})", stats.facets)?;
                    writeln!(
                        w,
                        "decomposition along co-weight {}: {} cosets, {} facets per piece",
                        stats.decomposition_coweight, stats.cosets, stats.facets_per_piece
                    )
                })?;
            }
        }
        Command::Reduce { spec, orbit_rep } => {
            let ctx = Context::new(parse(spec)?, cfg)?;
            let u = ctx.row(orbit_rep)?;
            let r = reduce_report(&ctx, u)?;
            emit(o.json, &r, |w| {
                let s = &r.structure;
                writeln!(w, "{} u={} label {}", r.spec, s.representative, s.label.as_deref().unwrap_or("-"))?;
                writeln!(
                    w,
                    "K_S: {} vertices, {} facets, {} components",
                    s.complex_vertices, s.complex_facets, s.complex_components
                )?;
                for p in &r.trace.passes {
                    writeln!(
                        w,
                        "  orbit {}: tested {}, removed {}, left {} vertices / {} facets",
                        p.orbit, p.tested, p.removed, p.vertices, p.facets
                    )?;
                }
                writeln!(
                    w,
                    "reduced: {} vertices, {} components, pure {}",
                    s.reduced_vertices, s.components, s.pure
                )?;
                writeln!(w, "component f-vector ({})", join(&s.component_f_vector))?;
                if let Some(iso) = &s.isomorphism {
                    writeln!(
                        w,
                        "components swapped by s_{} (at orbit member {})",
                        iso.reflection,
                        iso.member.as_deref().unwrap_or("-")
                    )?;
                }
                Ok(())
            })?;
        }
        Command::Oracle { spec } => {
            let r = oracle(parse(spec)?);
            emit(o.json, &r, |w| {
                writeln!(w, "{} |W| = {}", r.spec, r.weyl_group_order)?;
                if let Some(v) = &r.closed_form {
                    writeln!(w, "closed form ({})", join(v))?;
                }
                if let Some(v) = &r.reference {
                    writeln!(w, "reference ({})", join(v))?;
                }
                writeln!(w, "Z_2 betti ({})", join(&r.z2_betti))?;
                writeln!(w, "euler characteristic {}", r.euler_characteristic)
            })?;
        }
        Command::Verify { spec } => {
            let (_, v) = verify(parse(spec)?, &cfg)?;
            emit(o.json, &v, |w| {
                writeln!(w, "{} computed ({})", v.spec, join(&v.computed))?;
                match (&v.expected, &v.expected_source) {
                    (Some(e), Some(src)) => writeln!(w, "expected ({}) from {src}", join(e))?,
                    _ => writeln!(w, "no expected values for this type")?,
                }
                writeln!(w, "euler characteristic {} (expected {})", v.euler_characteristic, v.euler_expected)?;
                writeln!(w, "{}", if v.ok { "OK" } else { "MISMATCH" })
            })?;
            if !v.ok {
                return Ok(ExitCode::from(EXIT_MISMATCH));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidSpec(..) | Error::IndexOutOfRange { .. } => EXIT_INVALID,
                Error::BudgetExceeded { .. } => {
                    if cli.opts.cache_dir.is_some() {
                        eprintln!("completed orbits are checkpointed; rerun the same command to resume");
                    } else {
                        eprintln!("pass --cache-dir to keep completed orbits across runs");
                    }
                    EXIT_BUDGET
                }
                Error::Mismatch(_) => EXIT_MISMATCH,
                _ => 1,
            })
        }
    }
}
