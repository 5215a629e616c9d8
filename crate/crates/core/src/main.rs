use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cubicml::harness::badlocus::{run_badlocus, BADLOCUS_FIELDS};
use cubicml::harness::census::{census_f2, spot_check, DEFAULT_CENSUS_BOUND};
use cubicml::harness::lift::{parse_points, run_lift, LiftMode, LiftRequest};
use cubicml::harness::report::{analyze, render};
use cubicml::harness::scenarios::{self, Context, SCENARIOS};
use cubicml::harness::{field_from_order, load_surface, Format, HarnessError};

/// Cubic surfaces over finite fields and the 2-adics: points, lines,
/// admissible equivalences, loop tables and lifting experiments.
#[derive(Parser, Debug)]
#[command(name = "cubicml", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, default_value_t = 20240601)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report points, lines, Eckardt points, classes and the loop table.
    Analyze {
        /// Surface file, or builtin:NAME.
        #[arg(long)]
        surface: String,
        /// Analyze over GF(q) instead of the surface's own field.
        #[arg(long)]
        field: Option<u32>,
        /// Smoothness bound (extension degree).
        #[arg(long)]
        bound: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive census of cubic forms over GF(2).
    Census {
        #[arg(long, default_value_t = DEFAULT_CENSUS_BOUND)]
        bound: u32,
        /// Random records to re-derive with the slow path.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Write all records as TSV to this file.
        #[arg(long)]
        out: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a named scenario, or `all`, or `list`.
    Verify {
        scenario: String,
        #[command(flatten)]
        common: Common,
    },
    /// Hensel lifts and the tangent-limit experiment.
    Lift {
        #[arg(long)]
        surface: String,
        /// point, line, triple or tangent-limit.
        #[arg(long, default_value = "point")]
        mode: LiftMode,
        /// Reduced points as a,b,c,d separated by `;` (GF(4) codes 0..3).
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 64)]
        precision: u32,
        #[arg(long, default_value_t = 10)]
        depth: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Sample the bad-locus and point-count bounds.
    Badlocus {
        /// One field order; all of 2, 4, 8, 16 when omitted.
        #[arg(long)]
        field: Option<u32>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Analyze { surface, field, bound, common } => {
            let f = load_surface(&surface)?;
            let k = field.map(field_from_order).transpose()?;
            let a = analyze(&f, k.as_ref(), bound)?;
            emit(&render(&a, common.format));
            Ok(true)
        }
        Command::Census { bound, samples, out, common } => {
            let c = census_f2(bound, common.jobs).map_err(HarnessError::Usage)?;
            if let Some(path) = out {
                std::fs::write(&path, c.records_tsv()).map_err(|source| HarnessError::Io { path, source })?;
            }
            let bad = spot_check(&c, samples, common.seed);
            let mut text = c.summary.to_text();
            text.push_str(&format!("spot-check\t{samples} records, {} disagreements\n", bad.len()));
            for (fast, slow) in &bad {
                text.push_str(&format!("disagreement\t{}\t{}\n", fast.tsv_row(), slow.tsv_row()));
            }
            let ok = c.summary.holds() && bad.is_empty();
            if common.format == Format::Text {
                text = text.replace('\t', ": ");
                text.push_str(&format!("result: {}\n", if ok { "PASS" } else { "FAIL" }));
            }
            emit(&text);
            Ok(ok)
        }
        Command::Verify { scenario, common } => {
            let ctx = Context { jobs: common.jobs, seed: common.seed };
            let chosen: Vec<_> = match scenario.as_str() {
                "list" => {
                    for s in &SCENARIOS {
                        emit(&format!("{}\t{}\t{}\n", s.name, s.criterion, s.summary));
                    }
                    return Ok(true);
                }
                "all" => SCENARIOS.iter().collect(),
                name => vec![scenarios::find(name)
                    .ok_or_else(|| HarnessError::Usage(format!("unknown scenario `{name}` (try `verify list`)")))?],
            };
            let mut ok = true;
            for s in chosen {
                let r = scenarios::run_scenario(s, &ctx);
                ok &= r.passed();
                emit(&r.render());
            }
            Ok(ok)
        }
        Command::Lift { surface, mode, point, precision, depth, common } => {
            let f = load_surface(&surface)?;
            let req = LiftRequest { form: &f, mode, points: parse_points(&point)?, precision, depth };
            emit(&run_lift(&req, common.format)?);
            Ok(true)
        }
        Command::Badlocus { field, samples, common } => {
            let fields = match field {
                Some(q) => vec![q],
                None => BADLOCUS_FIELDS.to_vec(),
            };
            let r = run_badlocus(&fields, samples, common.seed)?;
            emit(&r.render(common.format));
            Ok(r.holds())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
