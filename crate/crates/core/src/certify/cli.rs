//! Command-line front end shared by the binary and the integration tests.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::certificate::{FieldChoice, Verdict};
use super::commands::{
    cmd_betti, cmd_points, cmd_rank14, cmd_rank15, cmd_threshold, cmd_upper_bounds, cmd_verify,
    BettiOutput, BettiSource, CertifyOptions,
};
use crate::apolar::MatrixForm;
use crate::{Error, Result};

/// Exit code for malformed invocations.
pub const USAGE_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "waring-syzygy",
    version,
    about = "Apolarity and syzygy certificates for Waring rank lower bounds"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// rational, fp:<p> (p ≥ 5 prime) or cyclotomic6.
    #[arg(long, global = true, default_value = "rational")]
    pub field: String,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub imax: Option<usize>,
    #[arg(long, global = true)]
    pub jmax: Option<usize>,
    /// Force the named certificate step to FAIL ("*" for every step).
    #[arg(long, global = true, value_name = "STEP")]
    pub inject_failure: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormArg {
    Det3,
    Per3,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Betti table of T/F^perp (det3, per3, xyz, a JSON polynomial file) or of T/(tu,tv,uv) (tuv).
    Betti {
        form: String,
        /// Print only beta_{i,j}.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        strand: Option<Vec<usize>>,
    },
    /// Lower bound on beta_{i,i+1} over all h-vectors of a given degree.
    Threshold { n: usize, degree: usize, i: usize },
    /// Certificate for cactusrank >= 14.
    Rank14 { form: MatrixFormArg },
    /// Certificate for rank(det3) >= 15.
    Rank15,
    /// Betti table of a general set of points in P^8.
    Points { count: usize },
    /// Checks a witness file, or a shipped witness as builtin:<name>.
    Verify { witness: String },
    /// Certified upper bounds for det3 and per3.
    UpperBounds,
    /// Runs a named job from a TOML or JSON config (built in: paper-full).
    Run {
        job: String,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

/// Named jobs, each a list of argument vectors for the subcommands.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Config {
    #[serde(default)]
    pub jobs: BTreeMap<String, Vec<Vec<String>>>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        if path.extension().is_some_and(|e| e == "json") {
            Ok(serde_json::from_str(&text)?)
        } else {
            toml::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
        }
    }

    pub fn builtin() -> Self {
        let job = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let paper_full = vec![
            job(&["betti", "det3"]),
            job(&["betti", "per3"]),
            job(&["betti", "xyz"]),
            job(&["betti", "tuv"]),
            job(&["threshold", "9", "13", "5"]),
            job(&["threshold", "9", "14", "5"]),
            job(&["rank14", "det3"]),
            job(&["rank14", "per3"]),
            job(&["rank15"]),
            job(&["points", "13"]),
            job(&["verify", "builtin:xyz"]),
            job(&["verify", "builtin:krishna_makam"]),
            job(&["verify", "builtin:glynn_per3"]),
            job(&["verify", "builtin:det3_18"]),
            job(&["upper-bounds"]),
        ];
        Config {
            jobs: BTreeMap::from([("paper-full".to_string(), paper_full)]),
        }
    }
}

/// Output of one command: rendered text, JSON value and exit code.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

fn options(g: &GlobalOpts) -> Result<CertifyOptions> {
    Ok(CertifyOptions {
        field: g.field.parse::<FieldChoice>()?,
        seed: g.seed,
        inject_failure: g.inject_failure.clone(),
        i_max: g.imax,
        j_max: g.jmax,
    })
}

fn to_json(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

pub fn execute(cmd: &Command, g: &GlobalOpts) -> Result<Outcome> {
    let opts = options(g)?;
    Ok(match cmd {
        Command::Betti { form, strand } => {
            let strand = strand.as_ref().map(|v| (v[0], v[1]));
            let out = cmd_betti(&BettiSource::parse(form)?, strand, &opts)?;
            let text = match &out {
                BettiOutput::Table(t) => format!("{}\n{}", t.description, t.render_text()),
                BettiOutput::Strand {
                    form,
                    i,
                    j,
                    value,
                    field,
                } => {
                    format!("beta_{i},{j}({form}) = {value}  [{field}]\n")
                }
            };
            Outcome {
                text,
                json: to_json(&out),
                code: 0,
            }
        }
        Command::Threshold { n, degree, i } => {
            let r = cmd_threshold(*n, *degree, *i)?;
            let mut text = format!(
                "h-vector           beta_{i},{}  beta_{},{}  bound\n",
                i + 1,
                i - 1,
                i + 1
            );
            for h in &r.hvectors {
                text += &format!(
                    "{:<18} {:>8} {:>9} {:>6}\n",
                    h.h.to_string(),
                    h.beta_i_i1,
                    h.beta_im1_i1,
                    h.bound
                );
            }
            text += &format!("threshold {} attained by {}\n", r.threshold, r.argmin_h);
            Outcome {
                text,
                json: to_json(&r),
                code: 0,
            }
        }
        Command::Rank14 { form } => {
            let which = match form {
                MatrixFormArg::Det3 => MatrixForm::Det,
                MatrixFormArg::Per3 => MatrixForm::Per,
            };
            let c = cmd_rank14(which, &opts)?;
            Outcome {
                text: c.render_text(),
                code: c.verdict.exit_code(),
                json: to_json(&c),
            }
        }
        Command::Rank15 => {
            let c = cmd_rank15(&opts)?;
            Outcome {
                text: c.render_text(),
                code: c.verdict.exit_code(),
                json: to_json(&c),
            }
        }
        Command::Points { count } => {
            let r = cmd_points(*count, &opts)?;
            let text = format!(
                "{} (seed {}, {} re-rolls, Hilbert function {:?})\n{}",
                r.table.description,
                opts.seed,
                r.rerolls,
                r.hilbert_function,
                r.table.render_text()
            );
            let json = serde_json::json!({
                "seed": opts.seed,
                "rerolls": r.rerolls,
                "hilbert_function": r.hilbert_function,
                "points": r.points,
                "table": r.table,
            });
            Outcome {
                text,
                json,
                code: 0,
            }
        }
        Command::Verify { witness } => {
            let r = cmd_verify(witness)?;
            let verdict = Verdict::from_bool(r.holds);
            let mut text = format!(
                "{}: {} with {} terms over {} => rank <= {}: {verdict}\n",
                r.target, r.kind, r.terms, r.field, r.rank_bound
            );
            if !r.holds {
                text += &format!("residual ({} terms): {}\n", r.residual_terms, r.residual);
            }
            Outcome {
                text,
                json: to_json(&r),
                code: verdict.exit_code(),
            }
        }
        Command::UpperBounds => {
            let rows = cmd_upper_bounds()?;
            let mut text = String::new();
            for u in &rows {
                let v = Verdict::from_bool(u.verified);
                text += &format!("rank({}) <= {:>2}  {}  [{v}]\n", u.form, u.bound, u.method);
            }
            let code =
                Verdict::combine(rows.iter().map(|u| Verdict::from_bool(u.verified))).exit_code();
            Outcome {
                text,
                json: to_json(&rows),
                code,
            }
        }
        Command::Run { job, config } => {
            let cfg = match config {
                Some(p) => Config::load(p)?,
                None => Config::builtin(),
            };
            let steps = cfg
                .jobs
                .get(job)
                .ok_or_else(|| Error::Parse(format!("no job named {job:?}")))?;
            let mut text = String::new();
            let mut results = Vec::new();
            let mut code = 0;
            for argv in steps {
                let full = std::iter::once("waring-syzygy".to_string())
                    .chain(inherited_args(g))
                    .chain(argv.iter().cloned());
                let sub = Cli::try_parse_from(full)
                    .map_err(|e| Error::Parse(format!("job {job:?}: {e}")))?;
                if matches!(sub.command, Command::Run { .. }) {
                    return Err(Error::Parse("jobs may not nest".into()));
                }
                let out = execute(&sub.command, &sub.global)?;
                text += &format!("== {}\n{}\n", argv.join(" "), out.text);
                results.push(serde_json::json!({ "command": argv, "exit_code": out.code, "output": out.json }));
                code = worst(code, out.code);
            }
            Outcome {
                text,
                json: Value::Array(results),
                code,
            }
        }
    })
}

/// Global flags passed on to every step of a job; a step's own flags win.
fn inherited_args(g: &GlobalOpts) -> Vec<String> {
    let mut v = vec![
        "--field".to_string(),
        g.field.clone(),
        "--seed".into(),
        g.seed.to_string(),
    ];
    for (flag, val) in [("--imax", g.imax), ("--jmax", g.jmax)] {
        if let Some(x) = val {
            v.extend([flag.to_string(), x.to_string()]);
        }
    }
    if let Some(s) = &g.inject_failure {
        v.extend(["--inject-failure".to_string(), s.clone()]);
    }
    v
}

/// Combines exit codes: FAIL over INCONCLUSIVE over PASS.
fn worst(a: i32, b: i32) -> i32 {
    let rank = |c: i32| match c {
        0 => 0,
        2 => 1,
        _ => 2,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::BadModulus(_)
        | Error::OutOfRange { .. }
        | Error::MalformedWitness(_)
        | Error::Unsupported(_)
        | Error::Infeasible(_)
        | Error::InadmissibleHVector(_) => USAGE_ERROR,
        _ => Verdict::Fail.exit_code(),
    }
}

/// Parses `args`, runs the command and writes its report; returns the exit code.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return USAGE_ERROR;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            log::warn!("thread pool already initialised: {e}");
        }
    }
    match execute(&cli.command, &cli.global) {
        Ok(o) => {
            let _ = match cli.global.format {
                Format::Text => write!(out, "{}", o.text),
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("json")
                ),
            };
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}
