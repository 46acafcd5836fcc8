//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::duality::{scenario, verify_duality, Scenario};
use crate::error::{Error, Result};
use crate::grading::Block;
use crate::instance::{read_instance, Instance};
use crate::localcohomology::{ext_limit_oracle, generalized_local_cohomology, OracleValue};
use crate::resolutions::{free_resolution, krull_dimension};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gencohom", version, about = "Generalized local cohomology and graded duality over Z^r-graded rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// radius of the degree window around the origin
    #[arg(long, global = true)]
    pub window: Option<i64>,
    /// characteristic of the coefficient field
    #[arg(long = "char", global = true)]
    pub characteristic: Option<u64>,
    /// longest resolution tried when deciding finite projective dimension
    #[arg(long, global = true)]
    pub max_resolution: Option<usize>,
    /// compare against Ext(M/I^t M, N) for t up to this value
    #[arg(long, global = true)]
    pub oracle_tmax: Option<u32>,
    /// write the text report here and a TSV next to it
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide sharpness of the grading
    Sharp { input: PathBuf },
    /// Minimal free resolution and Betti numbers of a module
    Resolve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::N)]
        module: Which,
    },
    /// Graded pieces of H^i_I(M, N)
    Cohomology {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = BlockArg::P)]
        block: BlockArg,
    },
    /// Check the duality theorem on every cell of the window
    Duality { input: PathBuf },
    /// Run one of the classical special cases
    Scenario {
        input: PathBuf,
        /// local_duality, serre, suzuki or herzog_rahimi; defaults to the instance's
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Which {
    M,
    N,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BlockArg {
    P,
    Q,
}

struct Outcome {
    code: i32,
    text: String,
    tsv: Option<String>,
}

fn load(cli: &Cli, path: &Path) -> Result<Instance> {
    let mut inst = read_instance(path, cli.characteristic)?;
    if let Some(w) = cli.window {
        inst.params.window = w;
    }
    if let Some(l) = cli.max_resolution {
        inst.params.max_resolution = l;
    }
    if let Some(t) = cli.oracle_tmax {
        inst.params.oracle_tmax = t;
    }
    Ok(inst)
}

fn sharp(inst: &Instance) -> Outcome {
    let g = inst.ring().grading();
    match g.sharpness_witness() {
        None => Outcome {
            code: EXIT_PASS,
            text: "sharp\n".into(),
            tsv: None,
        },
        Some((a, b)) => Outcome {
            code: EXIT_FAIL,
            text: format!("not sharp\nwitness: alpha = {a:?}, beta = {b:?}\n"),
            tsv: None,
        },
    }
}

fn resolve(inst: &Instance, which: Which) -> Outcome {
    let module = match which {
        Which::M => &inst.m,
        Which::N => &inst.n,
    };
    let res = free_resolution(&inst.s, module, inst.params.max_resolution);
    let betti: Vec<String> = res.betti_numbers().iter().map(|b| b.to_string()).collect();
    let mut text = format!("betti numbers: {}\n", betti.join(" "));
    if res.complete {
        let _ = writeln!(text, "projective dimension: {}", res.length());
    } else {
        let _ = writeln!(text, "not complete after {} steps", inst.params.max_resolution);
    }
    let tsv = res.betti_tsv();
    text.push_str(&tsv);
    Outcome {
        code: EXIT_PASS,
        text,
        tsv: Some(tsv),
    }
}

fn cohomology(inst: &Instance, block: Block) -> Result<Outcome> {
    let dim = krull_dimension(&inst.s) as i64;
    let degrees: Vec<i64> = (0..=dim).collect();
    let window = inst.window();
    let table = generalized_local_cohomology(&inst.s, &inst.m, &inst.n, block, &degrees, &window, inst.params.truncation())?;
    let mut text = table.report();
    let mut code = EXIT_PASS;
    let t = inst.params.oracle_tmax;
    if t > 0 {
        let (mut agree, mut unstable, mut differ) = (0, 0, 0);
        for ((i, g), d) in &table.entries {
            match ext_limit_oracle(&inst.s, &inst.m, &inst.n, block, *i, g, t)? {
                OracleValue::Stable(v) if v == *d => agree += 1,
                OracleValue::Stable(v) => {
                    differ += 1;
                    let _ = writeln!(text, "oracle mismatch: H^{i} in degree {g}: {d} vs {v}");
                }
                OracleValue::Unstabilized(_) => unstable += 1,
            }
        }
        let _ = writeln!(text, "oracle: {agree} agree, {differ} differ, {unstable} unstabilized");
        if differ > 0 {
            code = EXIT_FAIL;
        }
    }
    Ok(Outcome {
        code,
        text,
        tsv: Some(table.to_tsv()),
    })
}

fn duality(inst: &Instance, name: Option<Scenario>) -> Result<Outcome> {
    let window = inst.window();
    let opts = inst.params.truncation();
    let rep = match name {
        Some(sc) => scenario(sc, &inst.s, &inst.m, &inst.n, &window, opts)?,
        None => verify_duality(&inst.s, &inst.m, &inst.n, &window, opts)?,
    };
    Ok(Outcome {
        code: if rep.passed() { EXIT_PASS } else { EXIT_FAIL },
        text: rep.to_text(),
        tsv: Some(rep.to_tsv()),
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Sharp { input } => Ok(sharp(&load(cli, input)?)),
        Command::Resolve { input, module } => Ok(resolve(&load(cli, input)?, *module)),
        Command::Cohomology { input, block } => {
            let b = match block {
                BlockArg::P => Block::P,
                BlockArg::Q => Block::Q,
            };
            cohomology(&load(cli, input)?, b)
        }
        Command::Duality { input } => duality(&load(cli, input)?, None),
        Command::Scenario { input, name } => {
            let inst = load(cli, input)?;
            let sc = match name {
                Some(n) => n.parse()?,
                None => inst
                    .params
                    .scenario
                    .ok_or_else(|| Error::WrongShape("no scenario given".into()))?,
            };
            duality(&inst, Some(sc))
        }
    }
}

fn write_report(path: &Path, o: &Outcome) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    std::fs::write(path, &o.text).map_err(io)?;
    if let Some(tsv) = &o.tsv {
        let mut p = path.as_os_str().to_owned();
        p.push(".tsv");
        std::fs::write(PathBuf::from(p), tsv).map_err(io)?;
    }
    Ok(())
}

/// Runs a parsed command line, writing the report to `out` and errors to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = dispatch(cli).and_then(|o| {
        if let Some(p) = &cli.report {
            write_report(p, &o)?;
        }
        Ok(o)
    });
    match outcome {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(Error::HypothesisViolation(msg)) => {
            let _ = writeln!(err, "hypothesis violated: {msg}");
            EXIT_HYPOTHESIS
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

/// Parses `args` (program name first) and runs them.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            EXIT_PASS
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            EXIT_INPUT
        }
    }
}
