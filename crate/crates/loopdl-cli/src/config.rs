use std::path::Path;

use clap::Args;
use loopdl::dlspace::DEFAULT_BUDGET;
use loopdl::Error;
use serde::{Deserialize, Serialize};

/// Parameters shared by every subcommand. Each flag is also a key of the
/// config file; flags win over the file, the file over the defaults.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Coxeter type, e.g. A2, B3, G2, I2(5)
    #[arg(long = "type", global = true)]
    #[serde(rename = "type")]
    pub kind: Option<String>,
    /// Diagram automorphism as 1-based node images, e.g. "3,2,1"
    #[arg(long, global = true)]
    pub sigma: Option<String>,
    /// Weyl group element as a word, e.g. "s1 s2"
    #[arg(long, global = true)]
    pub w: Option<String>,
    /// Target element for `weyl shift`
    #[arg(long, global = true)]
    pub to: Option<String>,
    /// Simple reflections (1-based) or "all"
    #[arg(long = "I", global = true)]
    #[serde(rename = "I")]
    pub set: Option<String>,
    #[arg(long, global = true)]
    pub dmax: Option<usize>,
    /// Power used by `braid good` (default: the twisted order of w)
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Power taken by `braid nf`
    #[arg(long, global = true)]
    pub pow: Option<usize>,
    /// Size of GL_n
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// q = p^e0
    #[arg(long, global = true)]
    pub e0: Option<u32>,
    /// Coefficients in F_{q^m}
    #[arg(long, global = true)]
    pub m: Option<u32>,
    /// Lowest exponent is -N
    #[arg(long = "N", global = true)]
    #[serde(rename = "N")]
    pub neg: Option<u32>,
    /// Exponents below r
    #[arg(long, global = true)]
    pub r: Option<u32>,
    /// superbasic:c, diag:a,b,..., slopes:<class>, matrix:<rows>, identity
    #[arg(long, global = true)]
    pub b: Option<String>,
    /// Levi block sizes, e.g. "2,1"
    #[arg(long, global = true)]
    pub levi: Option<String>,
    /// "[x:y]" for n = 2, or matrix rows "a, b; c, d"
    #[arg(long, global = true)]
    pub point: Option<String>,
    /// Lift of w as a monomial matrix; switches `dl member` to the cover
    #[arg(long, global = true)]
    pub wdot: Option<String>,
    /// Exponent range for `dl check-gl3`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lo: Option<i64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub hi: Option<i64>,
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads for enumeration, 0 = all cores
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// json or csv
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Add wall time to count reports
    #[arg(long, global = true)]
    #[serde(default)]
    pub timing: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Effective {
    #[serde(rename = "type")]
    pub kind: String,
    pub sigma: Option<String>,
    pub w: String,
    pub to: Option<String>,
    #[serde(rename = "I")]
    pub set: String,
    pub dmax: Option<usize>,
    pub d: Option<usize>,
    pub pow: usize,
    pub n: usize,
    pub p: u32,
    pub e0: u32,
    pub m: u32,
    #[serde(rename = "N")]
    pub neg: u32,
    pub r: u32,
    pub b: String,
    pub levi: Option<String>,
    pub point: Option<String>,
    pub wdot: Option<String>,
    pub lo: i64,
    pub hi: i64,
    pub budget: u64,
    pub workers: usize,
    pub format: String,
    pub timing: bool,
}

pub fn load(path: &Path) -> Result<Settings, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

macro_rules! pick {
    ($flags:ident, $file:ident, $f:ident) => {
        $flags.$f.clone().or($file.$f.clone())
    };
}

pub fn merge(flags: &Settings, file: &Settings) -> Result<Effective, Error> {
    let format = pick!(flags, file, format).unwrap_or_else(|| "json".into());
    if format != "json" && format != "csv" {
        return Err(Error::Invalid(format!("format must be json or csv, got {format}")));
    }
    Ok(Effective {
        kind: pick!(flags, file, kind).unwrap_or_else(|| "A2".into()),
        sigma: pick!(flags, file, sigma),
        w: pick!(flags, file, w).unwrap_or_else(|| "e".into()),
        to: pick!(flags, file, to),
        set: pick!(flags, file, set).unwrap_or_else(|| "all".into()),
        dmax: pick!(flags, file, dmax),
        d: pick!(flags, file, d),
        pow: pick!(flags, file, pow).unwrap_or(1),
        n: pick!(flags, file, n).unwrap_or(2),
        p: pick!(flags, file, p).unwrap_or(2),
        e0: pick!(flags, file, e0).unwrap_or(1),
        m: pick!(flags, file, m).unwrap_or(1),
        neg: pick!(flags, file, neg).unwrap_or(0),
        r: pick!(flags, file, r).unwrap_or(2),
        b: pick!(flags, file, b).unwrap_or_else(|| "identity".into()),
        levi: pick!(flags, file, levi),
        point: pick!(flags, file, point),
        wdot: pick!(flags, file, wdot),
        lo: pick!(flags, file, lo).unwrap_or(-2),
        hi: pick!(flags, file, hi).unwrap_or(2),
        budget: pick!(flags, file, budget).unwrap_or(DEFAULT_BUDGET),
        workers: pick!(flags, file, workers).unwrap_or(0),
        format,
        timing: pick!(flags, file, timing).unwrap_or(false),
    })
}
