//! The command-line surface.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use tamelimits::autmap;
use tamelimits::coeff::{QLambda, Rational, Ring, QT, QZ};
use tamelimits::degeneration::{self, DegenerationParams};
use tamelimits::lnd;
use tamelimits::multipoly::MultiPoly;
use tamelimits::plane::{self, PlaneMap, ReductionScalar, TamenessVerdict};
use tamelimits::sampling::{random_space_word, WordShape};
use tamelimits::subounds;
use tamelimits::AlgebraError;
use thiserror::Error;

use crate::emit::{emit, emit_poly, render_word, Format};
use crate::parse::{parse_map, Backend, ParseError, ParseScalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MATH: i32 = 3;

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Parser)]
#[command(name = "tamelimits", version, about = "Exact computations with polynomial automorphisms of affine 3-space")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum FieldArg {
    #[default]
    Auto,
    Q,
    Qt,
    Qz,
    Qlambda,
}

#[derive(Debug, Args)]
pub struct MapArg {
    /// A map such as "(x+y^2, y, z)", or a path to a file holding one.
    pub map: String,
    #[arg(long, value_enum, default_value_t = FieldArg::Auto)]
    pub field: FieldArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a map and print it in canonical form.
    Echo(MapArg),
    /// Print g∘f.
    Compose {
        g: String,
        f: String,
        #[arg(long, value_enum, default_value_t = FieldArg::Auto)]
        field: FieldArg,
    },
    /// Inverse of an automorphism.
    Invert(MapArg),
    /// Jacobian determinant.
    Jacobian(MapArg),
    /// Degree and sum of component degrees.
    Degree(MapArg),
    /// exp(λδ) for the derivation with parameters m, n.
    Explnd {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// A rational value, or "lambda" for a symbolic parameter.
        #[arg(long, default_value = "1")]
        lambda: String,
    },
    /// The family σ_t over Q(t).
    Sigma {
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Value at t = 0 of a map over Q(t), σ_t by default.
    Limit {
        map: Option<String>,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// The six checks on the degenerating family.
    Verify {
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Conjugated limit α and the triangular correction onto exp(λδ).
    VerifyMain {
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Tameness over Q[z] of a map fixing z.
    TameCheck(MapArg),
    /// Affine/elementary factorization of a plane automorphism.
    Vdk(MapArg),
    /// Degree and factor-count bounds.
    Bounds {
        #[arg(long, default_value_t = 2)]
        d: u64,
    },
    /// exp(tδ)∘σ for a seeded random tame σ.
    DenseDemo {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
}

#[derive(Debug, Error)]
pub enum CmdError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Math(#[from] AlgebraError),
    #[error("{0}")]
    Usage(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Parse(_) | CmdError::Usage(_) => EXIT_PARSE,
            CmdError::Math(_) => EXIT_MATH,
        }
    }
}

/// Exit code and text written to standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

type Report = (i32, String);

fn ok(s: String) -> Result<Report, CmdError> {
    Ok((EXIT_OK, s))
}

pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn source(arg: &str) -> Result<String, CmdError> {
    if arg.trim_start().starts_with('(') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg)
        .map(|s| s.trim().to_string())
        .map_err(|e| CmdError::Usage(format!("cannot read {arg}: {e}")))
}

fn backend(field: FieldArg, text: &str) -> Backend {
    match field {
        FieldArg::Auto => Backend::detect(text),
        FieldArg::Q => Backend::Q,
        FieldArg::Qt => Backend::QT,
        FieldArg::Qz => Backend::QZ,
        FieldArg::Qlambda => Backend::QLambda,
    }
}

macro_rules! on_backend {
    ($b:expr, $f:ident($($a:expr),*)) => {
        match $b {
            Backend::Q => $f::<Rational>($($a),*),
            Backend::QT => $f::<QT>($($a),*),
            Backend::QZ => $f::<QZ>($($a),*),
            Backend::QLambda => $f::<QLambda>($($a),*),
        }
    };
}

fn line(s: String) -> String {
    s + "\n"
}

fn dispatch(cli: &Cli) -> Result<Report, CmdError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Echo(a) => {
            let text = source(&a.map)?;
            on_backend!(backend(a.field, &text), echo(&text, fmt))
        }
        Command::Compose { g, f, field } => {
            let (g, f) = (source(g)?, source(f)?);
            on_backend!(backend(*field, &format!("{g} {f}")), compose(&g, &f, fmt))
        }
        Command::Invert(a) => {
            let text = source(&a.map)?;
            on_backend!(backend(a.field, &text), invert(&text, fmt))
        }
        Command::Jacobian(a) => {
            let text = source(&a.map)?;
            on_backend!(backend(a.field, &text), jacobian(&text, fmt))
        }
        Command::Degree(a) => {
            let text = source(&a.map)?;
            on_backend!(backend(a.field, &text), degree(&text, fmt))
        }
        Command::Explnd { m, n, lambda } => explnd(*m, *n, lambda, fmt),
        Command::Sigma { m } => {
            let sigma = degeneration::build_sigma(params(*m)?)?;
            ok(line(emit(sigma.map(), fmt)))
        }
        Command::Limit { map, m } => {
            let f = match map {
                Some(text) => parse_map::<QT>(&source(text)?)?,
                None => degeneration::build_sigma_unchecked(params(*m)?)?.map().clone(),
            };
            ok(line(emit(&autmap::specialize_t(&f)?, fmt)))
        }
        Command::Verify { m } => verify(*m, fmt),
        Command::VerifyMain { m } => match m {
            1 => verify_main::<1>(fmt),
            2 => verify_main::<2>(fmt),
            3 => verify_main::<3>(fmt),
            4 => verify_main::<4>(fmt),
            _ => Err(CmdError::Usage(format!("verify-main supports m in 1..=4, got {m}"))),
        },
        Command::TameCheck(a) => tame_check(&source(&a.map)?, a.field, fmt),
        Command::Vdk(a) => {
            let text = source(&a.map)?;
            match backend(a.field, &text) {
                Backend::QZ => vdk::<QZ>(&text, fmt),
                Backend::Q => vdk::<Rational>(&text, fmt),
                b => Err(CmdError::Usage(format!("vdk works over Q or Q(z), not {b}"))),
            }
        }
        Command::Bounds { d } => bounds(*d, fmt),
        Command::DenseDemo { m, n } => dense_demo(cli.seed, *m, *n, fmt),
    }
}

fn params(m: u32) -> Result<DegenerationParams, CmdError> {
    if m == 0 {
        return Err(CmdError::Usage("m must be positive".into()));
    }
    Ok(DegenerationParams::new(m))
}

fn echo<C: ParseScalar>(text: &str, fmt: Format) -> Result<Report, CmdError> {
    ok(line(emit(&parse_map::<C>(text)?, fmt)))
}

fn compose<C: ParseScalar>(g: &str, f: &str, fmt: Format) -> Result<Report, CmdError> {
    let (g, f) = (parse_map::<C>(g)?, parse_map::<C>(f)?);
    ok(line(emit(&autmap::compose(&g, &f)?, fmt)))
}

fn invert<C: ParseScalar>(text: &str, fmt: Format) -> Result<Report, CmdError> {
    let f = parse_map::<C>(text)?;
    ok(line(emit(&autmap::inverse(&f, None)?, fmt)))
}

fn jacobian<C: ParseScalar>(text: &str, fmt: Format) -> Result<Report, CmdError> {
    let f = parse_map::<C>(text)?;
    ok(line(emit_poly(&autmap::jacobian_det(&f), fmt)))
}

fn degree<C: ParseScalar>(text: &str, fmt: Format) -> Result<Report, CmdError> {
    let f = parse_map::<C>(text)?;
    let (d, s) = (f.degree().unwrap_or(0), autmap::sdeg(&f));
    ok(line(match fmt {
        Format::Json => json!({ "degree": d, "sdeg": s }).to_string(),
        _ => format!("degree {d}, sdeg {s}"),
    }))
}

fn explnd(m: u32, n: u32, lambda: &str, fmt: Format) -> Result<Report, CmdError> {
    if m == 0 {
        return Err(CmdError::Usage("m must be positive".into()));
    }
    if lambda == "lambda" {
        let phi = lnd::exp_lnd(&lnd::make_delta::<QLambda>(m, n), &QLambda::var(), lnd::DEFAULT_EXP_CAP)?;
        return ok(line(emit(&phi, fmt)));
    }
    let value: Rational = lambda
        .parse()
        .map_err(|_| CmdError::Usage(format!("lambda must be a rational or \"lambda\", got {lambda}")))?;
    let phi = lnd::exp_lnd(&lnd::make_delta::<Rational>(m, n), &value, lnd::DEFAULT_EXP_CAP)?;
    ok(line(emit(&phi, fmt)))
}

fn verify(m: u32, fmt: Format) -> Result<Report, CmdError> {
    let report = degeneration::verify_assertions(params(m)?);
    let code = if report.passed() { EXIT_OK } else { EXIT_VERIFICATION };
    let out = match fmt {
        Format::Json => report.to_json().to_string(),
        _ => {
            let mut lines = vec![format!("m = {m}")];
            for a in &report.assertions {
                lines.push(match &a.witness {
                    None => format!("PASS {}", a.id),
                    Some(w) => format!("FAIL {}: {w}", a.id),
                });
            }
            let passed = report.assertions.iter().filter(|a| a.pass).count();
            lines.push(format!("{passed}/{} assertions passed", report.assertions.len()));
            lines.join("\n")
        }
    };
    Ok((code, line(out)))
}

fn verify_main<const M: usize>(fmt: Format) -> Result<Report, CmdError> {
    let alpha = degeneration::build_alpha::<M>()?;
    let out = degeneration::correction_map(&alpha)?;
    let code = if out.recomposes { EXIT_OK } else { EXIT_VERIFICATION };
    let c = &out.correction;
    let text = match fmt {
        Format::Json => json!({
            "m": M,
            "alpha": alpha.alpha.to_json(),
            "d": c.d.to_json(),
            "p": c.p.to_json(),
            "p_in_q_lambda": c.p_is_lambda_rational(),
            "recomposes": out.recomposes,
        })
        .to_string(),
        Format::Latex => format!(
            "\\alpha = {}\\\\\nf = {}",
            alpha.alpha.latex(),
            c.to_map().latex()
        ),
        Format::Text => format!(
            "m = {M}\nalpha = {}\nd = {}\nP = {}\nP in Q(lambda)[y,z]: {}\nf o alpha = exp(lambda delta): {}",
            alpha.alpha,
            c.d,
            c.p,
            c.p_is_lambda_rational(),
            out.recomposes
        ),
    };
    Ok((code, line(text)))
}

fn plane_from_text(text: &str, field: FieldArg) -> Result<PlaneMap<QZ>, CmdError> {
    match backend(field, text) {
        Backend::QZ => Ok(PlaneMap::from_map(parse_map::<QZ>(text)?)?),
        Backend::Q => {
            let f = parse_map::<Rational>(text)?;
            if f.dim() == 2 {
                return Ok(PlaneMap::from_map(f.map_coeffs(QZ::from_rational))?);
            }
            let z = MultiPoly::var(f.vars().clone(), 2);
            if *f.component(2) != z {
                return Err(AlgebraError::NotPlaneAutomorphism(format!(
                    "third component is {}, not z",
                    f.component(2)
                ))
                .into());
            }
            Ok(PlaneMap::from_xyz(f.component(0), f.component(1))?)
        }
        b => Err(CmdError::Usage(format!("tame-check works over Q or Q(z), not {b}"))),
    }
}

fn tame_check(text: &str, field: FieldArg, fmt: Format) -> Result<Report, CmdError> {
    let f = plane_from_text(text, field)?;
    let verdict = plane::tame_check_over_kz(&f)?;
    ok(line(match fmt {
        Format::Json => verdict.to_json().to_string(),
        _ => match &verdict {
            TamenessVerdict::Tame(word) => format!("tame\n{}", render_word(word)),
            TamenessVerdict::Wild(cert) => format!(
                "wild\nstep {}: c = {}, degrees {:?}",
                cert.step, cert.c, cert.degs
            ),
        },
    }))
}

fn vdk<K: ReductionScalar + ParseScalar>(text: &str, fmt: Format) -> Result<Report, CmdError> {
    let f = PlaneMap::from_map(parse_map::<K>(text)?)?;
    let word = plane::vdk_factor(&f)?;
    let length = plane::word_length(&word);
    ok(line(match fmt {
        Format::Json => json!({ "word": word.to_json(), "length": length }).to_string(),
        _ => format!("length {length}\n{}", render_word(&word)),
    }))
}

fn bounds(d: u64, fmt: Format) -> Result<Report, CmdError> {
    if d == 0 {
        return Err(CmdError::Usage("d must be positive".into()));
    }
    let r = subounds::bound_report(d);
    ok(line(match fmt {
        Format::Json => r.to_json().to_string(),
        _ => format!(
            "d = {}: reductions {}, elementary degree {}, general degree {}, k {}, factors {}",
            r.d,
            r.reduction_count,
            r.elem_degree_bound,
            r.general_degree_bound,
            r.k(),
            r.factor_count
        ),
    }))
}

fn dense_demo(seed: u64, m: u32, n: u32, fmt: Format) -> Result<Report, CmdError> {
    if m == 0 {
        return Err(CmdError::Usage("m must be positive".into()));
    }
    let word = random_space_word(&mut ChaCha8Rng::seed_from_u64(seed), &WordShape::SPACE);
    let family = degeneration::wild_dense_family(&word, m, n)?;
    let code = if family.limit_matches { EXIT_OK } else { EXIT_VERIFICATION };
    let text = match fmt {
        Format::Json => json!({
            "seed": seed,
            "word": word.to_json(),
            "sigma": word.map().to_json(),
            "family": family.family.to_json(),
            "limit": family.limit.to_json(),
            "limit_matches": family.limit_matches,
        })
        .to_string(),
        _ => format!(
            "sigma = {}\nfamily = {}\nlimit at t = 0 = {}\nlimit equals sigma: {}",
            emit(word.map(), fmt),
            emit(&family.family, fmt),
            emit(&family.limit, fmt),
            family.limit_matches
        ),
    };
    Ok((code, line(text)))
}
