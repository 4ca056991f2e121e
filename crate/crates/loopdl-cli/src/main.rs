//! `loopdl`: command-line front end for the loopdl library.

mod commands;
mod config;
mod inputs;
mod output;
mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use loopdl::Error;
use serde_json::{json, Value};

use config::Settings;

#[derive(Parser)]
#[command(name = "loopdl", version, about = "Experiments with affine Deligne-Lusztig type spaces")]
struct Cli {
    #[command(subcommand)]
    group: Group,
    /// Flat TOML file whose keys mirror the flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Run the quick property checks of the module instead
    #[arg(long, global = true)]
    selftest: bool,
    #[command(flatten)]
    settings: Settings,
}

#[derive(Subcommand)]
enum Group {
    /// Weyl groups with a diagram automorphism
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Positive braid monoid
    Braid {
        #[command(subcommand)]
        cmd: BraidCmd,
    },
    /// Slopes and Kottwitz points of GL_n classes
    Bg {
        #[command(subcommand)]
        cmd: BgCmd,
    },
    /// Points of X_w(b)
    Dl {
        #[command(subcommand)]
        cmd: DlCmd,
    },
}

#[derive(Subcommand, Clone, Copy)]
enum WeylCmd {
    /// sigma-conjugacy classes with their minimal length elements
    Classes,
    /// Cyclic shift path from --w to --to
    Shift,
}

#[derive(Subcommand, Clone, Copy)]
enum BraidCmd {
    /// Left greedy normal form of (--w)^pow
    Nf,
    /// Smallest d with w_I dividing w sigma(w) ... sigma^(d-1)(w)
    Thm91,
    /// Good element certificate
    Good,
}

#[derive(Subcommand, Clone, Copy)]
enum BgCmd {
    /// Newton slopes and Kottwitz point of --b
    Slopes,
    /// Whether the class of --b meets a standard Levi
    MeetsLevi,
}

#[derive(Subcommand, Clone, Copy)]
enum DlCmd {
    /// Membership of --point in X_w(b) (or the cover, with --wdot)
    Member,
    /// Count points of X_w(b) in the window
    Count,
    /// The alpha invariant of a member
    Alpha,
    /// GL_2 counts against their formulas
    CheckTable1,
    /// GL_3 Lang image bound over monomial triples
    CheckGl3,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PrecisionExhausted { .. } | Error::DivByUnknown(_) => 2,
        Error::BudgetExceeded { .. } => 3,
        _ => 1,
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::PrecisionExhausted { .. } | Error::DivByUnknown(_) => "precision",
        Error::BudgetExceeded { .. } => "budget",
        Error::Parse(_) => "parse",
        _ => "invalid",
    }
}

fn dispatch(group: &Group, cfg: &config::Effective) -> loopdl::Result<Value> {
    use commands::*;
    match group {
        Group::Weyl { cmd: WeylCmd::Classes } => weyl_classes(cfg),
        Group::Weyl { cmd: WeylCmd::Shift } => weyl_shift(cfg),
        Group::Braid { cmd: BraidCmd::Nf } => braid_nf(cfg),
        Group::Braid { cmd: BraidCmd::Thm91 } => braid_thm91(cfg),
        Group::Braid { cmd: BraidCmd::Good } => braid_good(cfg),
        Group::Bg { cmd: BgCmd::Slopes } => bg_slopes(cfg),
        Group::Bg { cmd: BgCmd::MeetsLevi } => bg_meets_levi(cfg),
        Group::Dl { cmd: DlCmd::Member } => dl_member(cfg),
        Group::Dl { cmd: DlCmd::Count } => dl_count(cfg),
        Group::Dl { cmd: DlCmd::Alpha } => dl_alpha(cfg),
        Group::Dl { cmd: DlCmd::CheckTable1 } => dl_check_table1(cfg),
        Group::Dl { cmd: DlCmd::CheckGl3 } => dl_check_gl3(cfg),
    }
}

fn group_name(g: &Group) -> &'static str {
    match g {
        Group::Weyl { .. } => "weyl",
        Group::Braid { .. } => "braid",
        Group::Bg { .. } => "bg",
        Group::Dl { .. } => "dl",
    }
}

/// Exit status and text of one invocation.
struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

fn render(mut report: Value, cfg: &config::Effective) -> String {
    if let Value::Object(m) = &mut report {
        m.insert("config".into(), serde_json::to_value(cfg).unwrap());
    }
    if cfg.format == "csv" {
        output::csv(&report)
    } else {
        serde_json::to_string_pretty(&report).unwrap() + "\n"
    }
}

fn run(cli: &Cli) -> Result<(bool, String), Error> {
    let file = match &cli.config {
        Some(p) => config::load(p)?,
        None => Settings::default(),
    };
    let cfg = config::merge(&cli.settings, &file)?;
    let report = if cli.selftest { selftest::run(group_name(&cli.group)) } else { dispatch(&cli.group, &cfg)? };
    let pass = report.get("pass").map_or(true, |p| p == &json!(true));
    Ok((pass, render(report, &cfg)))
}

fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match run(&cli) {
        Ok((pass, text)) => Outcome { code: if pass { 0 } else { 1 }, stdout: text, stderr: String::new() },
        Err(e) => {
            let payload = json!({ "error": { "kind": kind(&e), "message": e.to_string() } });
            Outcome { code: exit_code(&e), stdout: serde_json::to_string_pretty(&payload).unwrap() + "\n", stderr: format!("loopdl: {e}\n") }
        }
    }
}

fn main() -> ExitCode {
    let out = execute(std::env::args_os());
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
