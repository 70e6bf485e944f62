//! Suite orchestration, data-file loading and report output for the
//! `widthcert` binary.

mod report;
mod suites;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::charclass::{parse_ring, CharClassError, CohomRing};
use crate::cubical::{parse_complex, CubicalComplex, CubicalError};

pub use report::{strip_runtime, CheckRecord, Format, Report, ReportConfig, Status};
pub use suites::run_suite;

/// Default output directory when `--out` is not given.
pub const OUT_DIR_ENV: &str = "WIDTHCERT_OUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: line {line}: {msg}")]
    Config {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("{path}: {source}")]
    Ring {
        path: PathBuf,
        source: CharClassError,
    },
    #[error("{path}: {source}")]
    Complex {
        path: PathBuf,
        source: CubicalError,
    },
    #[error("suite failed to run: {0}")]
    Internal(String),
}

impl CliError {
    /// `2` for usage and input errors, `1` for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Cocycle,
    Jailcells,
    Parity,
    Hopf,
    Volume,
    FiberRadius,
    Net,
    Homology,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 9] = [
        "cocycle",
        "jailcells",
        "parity",
        "hopf",
        "volume",
        "fiber-radius",
        "net",
        "homology",
        "all",
    ];

    pub fn name(self) -> &'static str {
        Self::NAMES[self as usize]
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        use Suite::*;
        const ALL: [Suite; 9] = [Cocycle, Jailcells, Parity, Hopf, Volume, FiberRadius, Net, Homology, All];
        ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown suite `{s}` (expected one of {})",
                Suite::NAMES.join(", ")
            ))
        })
    }
}

/// Everything that determines a suite run.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Lattice parameter: `(2n·ℤ)⁵` for cocycle sweeps, `Λₙ` for parity.
    pub n: i64,
    pub seed: u64,
    /// Tolerance for numeric round-trip and scaling checks.
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Extra ring file checked by the `hopf` suite.
    pub ring: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            n: 1,
            seed: 0,
            tol: 1e-6,
            out: None,
            format: Format::Json,
            ring: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n < 1 {
            return Err(CliError::Usage(format!("n must be at least 1, got {}", self.n)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    /// Apply one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("bad value `{v}` for `{key}`"))
        }
        match key {
            "suite" => self.suite = value.parse().map_err(|e: CliError| e.to_string())?,
            "n" => self.n = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "tol" => self.tol = num(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            "ring" => self.ring = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Read a flat `key = value` file; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = read(path)?;
        for (idx, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| CliError::Config {
                path: path.to_path_buf(),
                line: idx + 1,
                msg,
            };
            let (k, v) = body
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            self.set(k.trim(), v.trim()).map_err(err)?;
        }
        Ok(())
    }

    /// Where the report goes: `out` if set (a directory gets `<suite>.<ext>`),
    /// else the directory named by [`OUT_DIR_ENV`], else stdout.
    pub fn output_path(&self) -> Option<PathBuf> {
        let file = format!("{}.{}", self.suite, self.format.extension());
        match &self.out {
            Some(p) if p.is_dir() => Some(p.join(file)),
            Some(p) => Some(p.clone()),
            None => std::env::var_os(OUT_DIR_ENV).map(|d| PathBuf::from(d).join(file)),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Load and validate a ring presentation file.
pub fn load_ring(path: &Path) -> Result<CohomRing, CliError> {
    parse_ring(&read(path)?).map_err(|source| CliError::Ring {
        path: path.to_path_buf(),
        source,
    })
}

/// Load and validate a cubical complex file.
pub fn load_complex(path: &Path) -> Result<CubicalComplex, CliError> {
    parse_complex(&read(path)?).map_err(|source| CliError::Complex {
        path: path.to_path_buf(),
        source,
    })
}

/// Write the rendered report to its configured destination, or stdout.
pub fn emit_report(report: &Report, config: &SuiteConfig) -> Result<Option<PathBuf>, CliError> {
    let text = report.render(config.format);
    match config.output_path() {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.to_path_buf(),
                    source,
                })?;
            }
            std::fs::write(&path, text).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(Some(path))
        }
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}
