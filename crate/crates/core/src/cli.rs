//! Batch command-line front end.
//!
//! Exit codes: 0 success (or "equivalent"), 1 invalid input, 2 decided
//! negative, 3 numerical or internal failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::coxeter::{
    coxeter_charpoly, hyperplane_equivalence, hyperplane_projections, recover_coxeter,
    tits_representation, CoxeterMatrix,
};
use crate::error::{Error, Result};
use crate::fixtures::{
    conjugate_pair, random_projection_pair, random_tuple, random_unitary, seeded_rng,
};
use crate::linalg::CMatrix;
use crate::pencil::{charpoly_det, charpoly_ps, MatrixTuple};
use crate::poly::MultiPoly;
use crate::projpair::{
    canonical_form, canonical_model, equivalent_pairs, factorization, FactorKind, HalmosInvariants,
    ProjectionPair, POLY_EQUAL_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

/// Default relative tolerance for `charpoly --method both`.
pub const AGREEMENT_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(
    name = "charpoly",
    version,
    about = "Multiparameter characteristic polynomials of matrix tuples",
    after_help = "Exit codes: 0 success/equivalent, 1 invalid input, 2 not equivalent, 3 numerical failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand det(z0 I + z1 A1 + ... + zn An) for a tuple file.
    Charpoly {
        /// Tuple file: {"k": k, "matrices": [...]}.
        tuple: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Det)]
        method: Method,
        /// Relative agreement tolerance for --method both.
        #[arg(long, default_value_t = AGREEMENT_TOL, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Pairs of orthogonal projections.
    Projpair {
        #[command(subcommand)]
        command: ProjpairCommand,
    },
    /// Coxeter matrices and their reflection representations.
    Coxeter {
        #[command(subcommand)]
        command: CoxeterCommand,
    },
    /// Deterministic pseudo-random fixtures.
    Gen {
        #[command(subcommand)]
        command: GenCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ProjpairCommand {
    /// Invariants, factorization and generic-position flag of a pair.
    Analyze {
        /// Pair file: {"k": k, "p": matrix, "q": matrix}.
        pair: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Decide unitary equivalence of two pairs (exit 0 equivalent, 2 not).
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Relative polynomial tolerance.
        #[arg(long, default_value_t = POLY_EQUAL_TOL, value_parser = positive)]
        tol: f64,
        /// Write the witness unitary here when equivalent.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
enum CoxeterCommand {
    /// Reflection representation of a Coxeter matrix file {"n", "m"}.
    Tits {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Characteristic polynomial of the reflection generators.
    Charpoly {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Read a Coxeter matrix back from a polynomial file.
    Recover {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Hyperplane projections (I + rho(g_i)) / 2 as a tuple file; with
    /// --against, decide similarity to another tuple of hyperplane
    /// projections (exit 0 similar, 2 not).
    Hyperplanes {
        file: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Two random projections with random ranks.
    RandomProjectionPair {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// n random k x k matrices with entries in the unit disc.
    RandomTuple {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Conjugate a pair or tuple file by a random unitary.
    Conjugate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args, Debug)]
struct OutArg {
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Symbolic determinant expansion.
    Det,
    /// Power traces and Newton's identities.
    Ps,
    /// Both, checked against each other.
    Both,
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {s}"))
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Results go to `out` unless redirected with `--out`;
/// diagnostics go to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Charpoly {
            tuple,
            method,
            tol,
            out: dest,
        } => {
            let t: MatrixTuple = read_json(&tuple)?;
            match method {
                Method::Det => emit(&charpoly_det(&t)?, &dest, out)?,
                Method::Ps => emit(&charpoly_ps(&t)?, &dest, out)?,
                Method::Both => {
                    let det = charpoly_det(&t)?;
                    let ps = charpoly_ps(&t)?;
                    if !det.canonical_equal(&ps, tol)? {
                        return Err(Error::Numerical(format!(
                            "determinant and power-trace expansions differ by {:.3e}",
                            det.max_coeff_diff(&ps)?
                        )));
                    }
                    let mut v = to_value(&det)?;
                    v.as_object_mut()
                        .expect("polynomial serializes to an object")
                        .insert("agreement".into(), Value::Bool(true));
                    emit(&v, &dest, out)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Projpair { command } => projpair(command, out),
        Command::Coxeter { command } => coxeter(command, out),
        Command::Gen { command } => generate(command, out),
    }
}

#[derive(Serialize)]
struct FactorView<'a> {
    #[serde(flatten)]
    kind: &'a FactorKind,
    multiplicity: u32,
    polynomial: &'a MultiPoly,
}

#[derive(Serialize)]
struct Analysis<'a> {
    k: usize,
    invariants: &'a HalmosInvariants,
    factors: Vec<FactorView<'a>>,
    generic: bool,
    reconstruction_residual: f64,
    near_band_edge: bool,
    polynomial: &'a MultiPoly,
}

fn projpair(command: ProjpairCommand, out: &mut dyn Write) -> Result<i32> {
    match command {
        ProjpairCommand::Analyze { pair, out: dest } => {
            let pp: ProjectionPair = read_json(&pair)?;
            let (u, inv) = canonical_form(&pp)?;
            let (cp, cq) = canonical_model(&inv);
            let residual = (&pp.p().conjugate_by(&u) - &cp)
                .frobenius()
                .max((&pp.q().conjugate_by(&u) - &cq).frobenius());
            let factors = factorization(&inv);
            let poly = pp.charpoly()?;
            let report = Analysis {
                k: pp.k(),
                invariants: &inv,
                factors: factors
                    .iter()
                    .map(|f| FactorView {
                        kind: &f.kind,
                        multiplicity: f.multiplicity,
                        polynomial: &f.poly,
                    })
                    .collect(),
                generic: inv.is_generic(),
                reconstruction_residual: residual,
                near_band_edge: inv.near_band_edge,
                polynomial: &poly,
            };
            emit(&report, &dest, out)?;
            Ok(EXIT_OK)
        }
        ProjpairCommand::Equiv {
            a,
            b,
            tol,
            witness_out,
            out: dest,
        } => {
            let pa: ProjectionPair = read_json(&a)?;
            let pb: ProjectionPair = read_json(&b)?;
            let verdict = equivalent_pairs(&pa, &pb, tol)?;
            if let (Some(path), Some(w)) = (&witness_out, &verdict.witness) {
                write_file(path, &render(w)?)?;
            }
            emit(&verdict, &dest, out)?;
            Ok(if verdict.equivalent {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

#[derive(Serialize)]
struct TitsView {
    n: usize,
    alphas: Vec<Vec<f64>>,
    generators: MatrixTuple,
    bform: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct SimilarityView {
    similar: bool,
    witness: Option<CMatrix>,
}

fn coxeter(command: CoxeterCommand, out: &mut dyn Write) -> Result<i32> {
    match command {
        CoxeterCommand::Tits { file, out: dest } => {
            let cm: CoxeterMatrix = read_json(&file)?;
            let rep = tits_representation(&cm);
            let n = rep.n;
            let view = TitsView {
                n,
                alphas: rep.alphas.chunks(n).map(<[f64]>::to_vec).collect(),
                generators: rep.tuple(),
                bform: rep.bform.chunks(n).map(<[f64]>::to_vec).collect(),
            };
            emit(&view, &dest, out)?;
        }
        CoxeterCommand::Charpoly { file, out: dest } => {
            let cm: CoxeterMatrix = read_json(&file)?;
            emit(&coxeter_charpoly(&cm)?, &dest, out)?;
        }
        CoxeterCommand::Recover { file, out: dest } => {
            let q = read_polynomial(&file)?;
            emit(&recover_coxeter(&q)?, &dest, out)?;
        }
        CoxeterCommand::Hyperplanes {
            file,
            against,
            out: dest,
        } => {
            let cm: CoxeterMatrix = read_json(&file)?;
            let p = hyperplane_projections(&cm);
            let Some(other) = against else {
                emit(&p, &dest, out)?;
                return Ok(EXIT_OK);
            };
            let p2: MatrixTuple = read_json(&other)?;
            let witness = hyperplane_equivalence(&p, &p2)?;
            let similar = witness.is_some();
            emit(&SimilarityView { similar, witness }, &dest, out)?;
            return Ok(if similar { EXIT_OK } else { EXIT_NEGATIVE });
        }
    }
    Ok(EXIT_OK)
}

fn generate(command: GenCommand, out: &mut dyn Write) -> Result<i32> {
    match command {
        GenCommand::RandomProjectionPair { k, seed, out: dest } => {
            require_k(k)?;
            emit(
                &random_projection_pair(k, &mut seeded_rng(seed)),
                &dest,
                out,
            )?;
        }
        GenCommand::RandomTuple {
            k,
            n,
            seed,
            out: dest,
        } => {
            require_k(k)?;
            if n == 0 {
                return Err(Error::Input("n must be at least 1".into()));
            }
            emit(&random_tuple(k, n, &mut seeded_rng(seed)), &dest, out)?;
        }
        GenCommand::Conjugate {
            input,
            seed,
            out: dest,
        } => {
            let value: Value = read_json(&input)?;
            let mut rng = seeded_rng(seed);
            if value.get("p").is_some() {
                let pp: ProjectionPair = from_value(value, &input)?;
                emit(&conjugate_pair(&pp, &mut rng), &dest, out)?;
            } else {
                let t: MatrixTuple = from_value(value, &input)?;
                let u = random_unitary(t.k(), &mut rng);
                emit(&t.conjugate_by(&u), &dest, out)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn require_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Input("k must be at least 1".into()));
    }
    Ok(())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn from_value<T: DeserializeOwned>(v: Value, path: &Path) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// Accepts a bare polynomial or `charpoly --method both` output.
fn read_polynomial(path: &Path) -> Result<MultiPoly> {
    let mut v: Value = read_json(path)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("agreement");
    }
    from_value(v, path)
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Numerical(format!("serialization failed: {e}")))
}

fn render<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)
        .map_err(|e| Error::Numerical(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(v: &T, dest: &OutArg, out: &mut dyn Write) -> Result<()> {
    let text = render(v)?;
    match &dest.out {
        Some(path) => write_file(path, &text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Input(format!("cannot write output: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("charpoly").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn help_and_bad_flags() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("charpoly"));
        let (code, _, _) = run_capture(&["charpoly", "x.json", "--bogus"]);
        assert_eq!(code, 1);
        let (code, _, err) = run_capture(&["charpoly", "x.json", "--tol=-1"]);
        assert_eq!(code, 1);
        assert!(err.contains("positive"), "{err}");
    }

    #[test]
    fn missing_file_is_invalid_input() {
        let (code, _, err) = run_capture(&["charpoly", "/nonexistent/tuple.json"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: invalid input"));
    }

    #[test]
    fn zero_k_rejected() {
        let (code, _, _) = run_capture(&["gen", "random-projection-pair", "--k", "0"]);
        assert_eq!(code, 1);
    }
}
