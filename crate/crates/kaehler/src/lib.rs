//! Command-line front end for `kaehler-core`.
//!
//! [`run`] does all the work and returns the process exit code, so tests
//! can drive the CLI in-process: 0 for any computed verdict, 1 for usage
//! and parse errors, 2 for violated preconditions, 3 for exhausted
//! Gröbner budgets.

pub mod cli;
pub mod input;
pub mod render;

use std::io::Write;

use clap::Parser;
use kaehler_core::{
    build_jacobian, jet_dimension, pd_certificate, presentation, rank_at_point, rank_generic_a, rank_generic_b,
    smoothness, torsion_check_ideal, Budget, Error, GroebnerOptions, ImageBasis, Polynomial, Ring,
};

use crate::cli::{Cli, Command};
use crate::render::Output;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn parse(text: &str, e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::InvalidLiteral { .. } => {
                CliError::Usage(format!("in `{text}`: {e}"))
            }
            other => CliError::Core(other),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                Error::ResourceLimit(_) => 3,
                Error::Syntax { .. }
                | Error::UnknownVariable { .. }
                | Error::InvalidLiteral { .. }
                | Error::NotPrime(_)
                | Error::InvalidOrder
                | Error::EmptyIdeal
                | Error::DimensionMismatch { .. }
                | Error::AmbientMismatch
                | Error::DegreeRange { .. } => 1,
                _ => 2,
            },
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Parse `args` (including the program name) and execute the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, err).and_then(|output| render::emit(&output, cli.common.format, out)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn single(gens: &[Polynomial]) -> Result<&Polynomial, CliError> {
    match gens {
        [f] => Ok(f),
        _ => Err(CliError::Core(Error::MultiGenerator(gens.len()))),
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Output, CliError> {
    let common = &cli.common;
    if common.polys.is_empty() {
        return Err(CliError::Usage("at least one -f/--poly generator is required".into()));
    }
    if common.order == 0 {
        return Err(CliError::Usage("the order -n must be at least 1".into()));
    }
    let mut texts: Vec<&str> = common.polys.iter().map(String::as_str).collect();
    match &cli.command {
        Command::Member { element } => texts.push(element),
        Command::Torsion { element, annihilator } => {
            texts.push(element);
            texts.push(annihilator);
        }
        _ => {}
    }
    let names = input::variable_names(common.vars.as_deref(), &texts)?;
    let field = input::field(common.characteristic)?;
    let ring = Ring::new(names, field);
    let gens = input::polynomials(&common.polys, &ring)?;
    let n = common.order;
    let options = GroebnerOptions {
        budget: Budget { max_degree: common.max_degree, max_steps: common.max_steps },
        track_cofactors: true,
    };

    Ok(match &cli.command {
        Command::Matrix => Output::Matrix(build_jacobian(&gens, n)?),
        Command::Smooth { point } => {
            let f = single(&gens)?;
            Output::Smoothness(smoothness(f, n, &input::point(point, &ring)?)?)
        }
        Command::Jetdim { point } => {
            let f = single(&gens)?;
            let report = jet_dimension(f, n, &input::point(point, &ring)?)?;
            for w in &report.warnings {
                writeln!(err, "warning: {w}")?;
            }
            Output::Jet(report)
        }
        Command::Presentation => Output::Presentation(presentation(single(&gens)?, n)?.1),
        Command::Rank { modf, point, .. } => {
            let jac = build_jacobian(&gens, n)?;
            let cert = match (modf, point) {
                (true, _) => rank_generic_b(jac.entries(), single(&gens)?)?,
                (_, Some(p)) => rank_at_point(&jac, &input::point(p, &ring)?)?,
                _ => rank_generic_a(jac.entries())?,
            };
            Output::Rank(cert)
        }
        Command::Member { element } => {
            let v = input::element(element, &ring, n)?;
            let image = ImageBasis::new(&gens, n, options)?;
            Output::Member(image.membership(&v)?)
        }
        Command::Torsion { element, annihilator } => {
            let m = input::element(element, &ring, n)?;
            let h = input::polynomials(std::slice::from_ref(annihilator), &ring)?.remove(0);
            Output::Torsion(torsion_check_ideal(&gens, n, &m, &h, options)?)
        }
        Command::Pd => Output::Pd(pd_certificate(single(&gens)?, n)?, ring.names().to_vec()),
    })
}
