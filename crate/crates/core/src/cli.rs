//! Command-line front end. `run` never exits the process; it returns the
//! exit status: 0 success, 1 a checked predicate is false, 2 bad input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chm::{build_h3, build_h4, is_chm, realignment_singular_values, schmidt_rank, H3Params};
use crate::entangle::{
    build_uab, entanglement, ep_optimize, figure_curves, max_condition_residuals, rho_aa, sweep,
    x_grid, Alpha3Mode, ProductInput, SweepSpec,
};
use crate::error::{Error, Result};
use crate::io::{self, AnglesJson};
use crate::mub::{
    appendix_c_scan, exclusion_scan_products, exclusion_scan_with, trio_extension_search, ScanMode,
    TrioSearchConfig,
};
use crate::numerics::{numerical_rank, CMatrix, Tolerances, C64};
use crate::presets::Preset;

/// Residual bound for the maximality certificate.
pub const CERTIFY_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "chm-mub",
    version,
    about = "Schmidt-rank-three complex Hadamard matrices of order six"
)]
pub struct CommandConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Input JSON file (matrix, H3 parameters or angles, depending on the command)
    #[arg(long = "input", global = true)]
    pub input_path: Option<PathBuf>,

    /// Write the result here instead of stdout
    #[arg(long = "output", global = true)]
    pub output_path: Option<PathBuf>,

    /// Built-in parameter set: eq5, lemma2i, lemma2ii, example1
    #[arg(long, global = true)]
    pub preset: Option<String>,

    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Cap on worker threads
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(flatten)]
    pub tolerances: ToleranceArgs,
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    #[arg(long, global = true, env = "CHM_MUB_TOL")]
    pub unitarity_tol: Option<f64>,
    #[arg(long, global = true)]
    pub modulus_tol: Option<f64>,
    #[arg(long, global = true)]
    pub rank_rel_tol: Option<f64>,
    #[arg(long, global = true)]
    pub eig_clamp: Option<f64>,
}

impl ToleranceArgs {
    pub fn resolve(&self) -> Result<Tolerances> {
        let d = Tolerances::default();
        let t = Tolerances {
            unitarity_tol: self.unitarity_tol.unwrap_or(d.unitarity_tol),
            modulus_tol: self.modulus_tol.unwrap_or(d.modulus_tol),
            rank_rel_tol: self.rank_rel_tol.unwrap_or(d.rank_rel_tol),
            eig_clamp: self.eig_clamp.unwrap_or(d.eig_clamp),
        };
        t.validate()?;
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Alpha3Arg {
    Chm,
    Pinned,
}

impl From<Alpha3Arg> for Alpha3Mode {
    fn from(a: Alpha3Arg) -> Self {
        match a {
            Alpha3Arg::Chm => Alpha3Mode::Chm,
            Alpha3Arg::Pinned => Alpha3Mode::Pinned,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a 6x6 matrix from H3 parameters or a preset and print its JSON
    ChmBuild,
    /// Check unitarity and entry moduli of a matrix
    ChmCheck,
    /// Print the Schmidt rank and the four realignment singular values
    ChmRank,
    /// Print exclusion findings as JSON lines
    MubScan {
        /// Require literally real submatrices
        #[arg(long, conflicts_with = "dephased")]
        strict_real: bool,
        /// Allow independent row and column phases
        #[arg(long)]
        dephased: bool,
        /// Input is a JSON array of matrices; also scan every b_i^dagger b_j
        #[arg(long)]
        scan_products: bool,
    },
    /// Search for two CHMs completing the input to a MUB trio
    MubSearch {
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 20_000)]
        max_iters: usize,
    },
    /// Check that the three branch states are pairwise orthogonal
    EpCertify {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Maximize the entropy of rho_Aa over product inputs
    EpOptimize {
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Write the sweep CSV for a figure preset or a single custom curve
    EpSweep {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=5))]
        figure: Option<u8>,
        #[arg(long, default_value_t = 61)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Alpha3Arg::Chm)]
        alpha3_mode: Alpha3Arg,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta3: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        gamma1: f64,
        /// Weights d1,d2,d3 (default uniform)
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<f64>>,
        #[arg(long, default_value = "custom")]
        label: String,
    },
    /// Grid scan of the one-zero closed forms
    AppendixC {
        #[arg(long, default_value_t = 200)]
        grid_n: usize,
    },
}

/// Input state for the certificate; defaults to `c = (1/sqrt 2, 0, 1/sqrt 2)`
/// and uniform `d`.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// c1,c2,|c3|
    #[arg(long, value_delimiter = ',')]
    pub c: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c3_phase: f64,
    /// d1,d2,d3
    #[arg(long, value_delimiter = ',')]
    pub d: Option<Vec<f64>>,
}

impl InputArgs {
    fn product_input(&self) -> Result<ProductInput> {
        let s = 0.5f64.sqrt();
        let c = triple("--c", &self.c)?.unwrap_or([s, 0.0, s]);
        let d = triple("--d", &self.d)?.unwrap_or(ProductInput::uniform_d());
        ProductInput::new(c[0], c[1], C64::from_polar(c[2], self.c3_phase), d)
    }
}

fn triple(flag: &str, v: &Option<Vec<f64>>) -> Result<Option<[f64; 3]>> {
    match v.as_deref() {
        None => Ok(None),
        Some(&[a, b, c]) => Ok(Some([a, b, c])),
        Some(other) => Err(Error::Invalid(format!(
            "{flag} takes three comma-separated values, got {}",
            other.len()
        ))),
    }
}

/// Outcome of a command: its text output and whether the checked predicate held.
struct Outcome {
    text: String,
    ok: bool,
    diagnostic: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            ok: true,
            diagnostic: None,
        }
    }
}

pub fn run<W: Write, E: Write>(cfg: &CommandConfig, out: &mut W, err: &mut E) -> i32 {
    let result = match cfg.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(cfg)),
            Err(e) => Err(Error::Invalid(e.to_string())),
        },
        None => execute(cfg),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let written = match &cfg.output_path {
        Some(path) => fs::write(path, &outcome.text).map_err(Error::from),
        None => out.write_all(outcome.text.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    if let Some(d) = &outcome.diagnostic {
        let _ = writeln!(err, "{d}");
    }
    if outcome.ok {
        0
    } else {
        1
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<Option<(PathBuf, String)>> {
    match path {
        Some(p) => Ok(Some((p.clone(), fs::read_to_string(p)?))),
        None => Ok(None),
    }
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Json {
            line,
            column,
            message,
        } => Error::Json {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

fn preset(cfg: &CommandConfig) -> Result<Option<Preset>> {
    cfg.preset.as_deref().map(str::parse).transpose()
}

/// A 6x6 matrix from `--preset`, a matrix JSON file or an H3 parameter file.
fn load_matrix(cfg: &CommandConfig, tol: &Tolerances) -> Result<CMatrix> {
    if let Some(p) = preset(cfg)? {
        return p.matrix(tol);
    }
    let (path, text) = read_input(&cfg.input_path)?
        .ok_or_else(|| Error::Invalid("need --input or --preset".into()))?;
    let value: Value = io::from_json(&text).map_err(|e| with_path(&path, e))?;
    let m = if value.get("alpha").is_some() {
        let p: H3Params = serde_json::from_value(value).map_err(|e| with_path(&path, e.into()))?;
        build_h3(&p, tol)?
    } else {
        serde_json::from_value(value).map_err(|e| with_path(&path, e.into()))?
    };
    Ok(m)
}

fn load_params(cfg: &CommandConfig) -> Result<H3Params> {
    if let Some(p) = preset(cfg)? {
        return p
            .h3_params()
            .ok_or_else(|| Error::Invalid(format!("preset {p} has no H3 parameters")));
    }
    let (path, text) = read_input(&cfg.input_path)?
        .ok_or_else(|| Error::Invalid("need --input or --preset".into()))?;
    io::from_json(&text).map_err(|e| with_path(&path, e))
}

fn load_angles(cfg: &CommandConfig) -> Result<crate::chm::Angles> {
    if let Some(p) = preset(cfg)? {
        return p
            .angles()
            .ok_or_else(|| Error::Invalid(format!("preset {p} has no controlled-gate angles")));
    }
    let (path, text) = read_input(&cfg.input_path)?
        .ok_or_else(|| Error::Invalid("need --input or --preset".into()))?;
    let a: AnglesJson = io::from_json(&text).map_err(|e| with_path(&path, e))?;
    Ok(a.angles())
}

fn execute(cfg: &CommandConfig) -> Result<Outcome> {
    let tol = cfg.tolerances.resolve()?;
    match &cfg.command {
        Command::ChmBuild => {
            let m = match preset(cfg)? {
                Some(p) => p.matrix(&tol)?,
                None => build_h3(&load_params(cfg)?, &tol)?,
            };
            Ok(Outcome::ok(io::to_json_pretty(&m)? + "\n"))
        }
        Command::ChmCheck => {
            let m = load_matrix(cfg, &tol)?;
            m.expect_shape(6, 6)?;
            let chk = is_chm(&m, &tol);
            let text = io::to_json_pretty(&chk)? + "\n";
            let diagnostic = (!chk.is_chm).then(|| {
                format!(
                    "not a complex Hadamard matrix: modulus deviation {:e}, unitarity residual {:e}",
                    chk.modulus_deviation, chk.unitarity_residual
                )
            });
            Ok(Outcome {
                text,
                ok: chk.is_chm,
                diagnostic,
            })
        }
        Command::ChmRank => {
            let m = load_matrix(cfg, &tol)?;
            let rank = schmidt_rank(&m, &tol)?;
            let sigma = realignment_singular_values(&m)?;
            let sigma: Vec<String> = sigma.iter().map(|s| format!("{s:e}")).collect();
            Ok(Outcome::ok(format!("{rank}\n{}\n", sigma.join(" "))))
        }
        Command::MubScan {
            strict_real,
            dephased,
            scan_products,
        } => {
            let mode = if *strict_real {
                ScanMode::Strict
            } else if *dephased {
                ScanMode::Dephased
            } else {
                ScanMode::GlobalPhase
            };
            let findings = if *scan_products {
                let bases = match preset(cfg)? {
                    Some(p) => vec![CMatrix::identity(6), p.matrix(&tol)?],
                    None => {
                        let (path, text) = read_input(&cfg.input_path)?
                            .ok_or_else(|| Error::Invalid("need --input or --preset".into()))?;
                        io::from_json::<Vec<CMatrix>>(&text).map_err(|e| with_path(&path, e))?
                    }
                };
                for b in &bases {
                    b.expect_shape(6, 6)?;
                }
                exclusion_scan_products(&bases, &tol, mode)
            } else {
                let m = load_matrix(cfg, &tol)?;
                m.expect_shape(6, 6)?;
                exclusion_scan_with(&m, &tol, mode)
            };
            let mut buf = Vec::new();
            io::write_findings(&mut buf, &findings)?;
            Ok(Outcome::ok(String::from_utf8(buf).expect("JSON is UTF-8")))
        }
        Command::MubSearch {
            restarts,
            max_iters,
        } => {
            let m = load_matrix(cfg, &tol)?;
            let r = trio_extension_search(
                &m,
                &TrioSearchConfig {
                    restarts: *restarts,
                    max_iters: *max_iters,
                    seed: cfg.seed,
                },
                &tol,
            )?;
            Ok(Outcome::ok(io::to_json_pretty(&r)? + "\n"))
        }
        Command::EpCertify { input } => {
            let angles = load_angles(cfg)?;
            let inp = input.product_input()?;
            let u = build_uab(&angles);
            let residuals = max_condition_residuals(&u, &inp);
            let h4 = build_h4(&angles);
            let g = &h4 * &h4.adjoint();
            let half = [(1, 0), (2, 1), (0, 2)].map(|(j, k)| g[(j, k)].norm() / 2.0);
            let ent = entanglement(&rho_aa(&u, &inp), &tol)?;
            let certified = residuals.iter().all(|&r| r < CERTIFY_TOL);
            let text = io::to_json_pretty(&json!({
                "residuals": residuals,
                "h4_offdiagonal_half": half,
                "h4_rank": numerical_rank(&h4, &tol),
                "eigenvalues": ent.eigenvalues,
                "ep_lower_bound": ent.entropy_ebits,
                "certified": certified,
            }))? + "\n";
            Ok(Outcome {
                text,
                ok: certified,
                diagnostic: (!certified)
                    .then(|| format!("branch states not orthogonal: residuals {residuals:?}")),
            })
        }
        Command::EpOptimize { restarts } => {
            let u = build_uab(&load_angles(cfg)?);
            let best = ep_optimize(&u, *restarts, cfg.seed, &tol)?;
            Ok(Outcome::ok(format!(
                "{:.12}\n{}\n",
                best.value,
                io::to_json(&json!({
                    "value": best.value,
                    "restart": best.restart,
                    "input": best.input,
                }))?
            )))
        }
        Command::EpSweep {
            figure,
            points,
            alpha3_mode,
            beta1,
            beta3,
            gamma1,
            d,
            label,
        } => {
            if *points == 0 {
                return Err(Error::Invalid("--points must be positive".into()));
            }
            let mode = Alpha3Mode::from(*alpha3_mode);
            let curves = match figure {
                Some(f) => figure_curves(*f, *points, mode)?
                    .into_iter()
                    .map(|c| (c.label, c.spec))
                    .collect(),
                None => {
                    let d = triple("--d", d)?.unwrap_or(ProductInput::uniform_d());
                    let mut spec = SweepSpec::new(x_grid(*points), *beta1, *beta3, d);
                    spec.gamma1 = *gamma1;
                    spec.alpha3_mode = mode;
                    vec![(label.clone(), spec)]
                }
            };
            let mut rows = Vec::with_capacity(curves.len());
            for (label, spec) in curves {
                rows.push((label, sweep(&spec, &tol)?));
            }
            let mut buf = Vec::new();
            io::write_sweep_csv(&mut buf, &rows)?;
            Ok(Outcome::ok(String::from_utf8(buf).expect("CSV is UTF-8")))
        }
        Command::AppendixC { grid_n } => {
            let r = appendix_c_scan(*grid_n)?;
            let ok = r.no_solutions();
            Ok(Outcome {
                text: io::to_json_pretty(&r)? + "\n",
                ok,
                diagnostic: (!ok).then(|| "a forbidden solution pair was reached".to_string()),
            })
        }
    }
}
