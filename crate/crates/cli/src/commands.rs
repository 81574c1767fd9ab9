use std::ffi::OsString;

use clap::{Parser, Subcommand};
use cliffrep::linalg::{
    big_phi, big_phi_inverse, cayley_hamilton, cliff_charpoly, cliff_exp, cliff_inverse, matrix_sharp,
    matrix_sharp_general, similar_check, SimilarityVerdict,
};
use cliffrep::random::{random_cmatrix, random_multivector};
use cliffrep::representation::{check_isomorphism, lemma3_t_report, phi, phi_inverse, sharp, sharp_general};
use cliffrep::universal::{build_p, SimilarityVerifier};
use cliffrep::{AlgebraSignature, CliffordMatrix, Complex, ComplexMatrix, Multivector, RepMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::parser::{parse_complex, parse_value, ParseError, Value};
use crate::render;

/// Complex Clifford algebras and their matrix representations.
#[derive(Debug, Parser)]
#[command(name = "cliffrep", version)]
struct Cli {
    /// Number of generators.
    #[arg(short = 'n', global = true)]
    n: Option<usize>,

    /// Comma-separated generator squares, e.g. "-1,2i" (default: all -1).
    #[arg(long, global = true, allow_hyphen_values = true)]
    squares: Option<String>,

    /// Tolerance for reported residuals.
    #[arg(long, global = true, default_value_t = cliffrep::DEFAULT_TOL)]
    tol: f64,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Matrix image of an element, or block image of a Clifford matrix.
    Rep { expr: String },
    /// Pull a complex matrix (or an odd-n pair) back to the algebra.
    Unrep {
        plus: String,
        minus: Option<String>,
        /// Rows of the Clifford matrix to recover (default: a single element).
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
    },
    /// Check P_n diag(a, ..., a) P_n^-1 against the matrix image of a.
    Verify {
        /// Element to check; random elements when omitted.
        expr: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// The universal matrix P_n and its inverse.
    Pbuild,
    /// Inverse of an element or a square Clifford matrix.
    Inv { expr: String },
    /// Determinant of the matrix image, with the sum-of-squares formula for n <= 2.
    Det2 { expr: String },
    /// Characteristic polynomial (ascending coefficients).
    Charpoly { expr: String },
    /// Cayley-Hamilton residual of a square matrix, or of random ones.
    ChCheck {
        expr: Option<String>,
        /// Size of the random matrices.
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Exponential of an element or a square Clifford matrix.
    Exp { expr: String },
    /// Decide whether two square Clifford matrices are similar.
    Similar {
        a: String,
        b: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// The conjugate whose image is the conjugate transpose.
    Sharp { expr: String },
    /// Rank of the span of the images of all basis blades.
    IsoRank,
    /// Check the stated T-variant of the two-generator factorization.
    LemmaTReport {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] cliffrep::Error),
}

impl CliError {
    fn to_json(&self) -> Json {
        let (kind, position) = match self {
            CliError::Usage(_) => ("usage", None),
            CliError::Parse(e) => ("parse", Some(e.position)),
            CliError::Algebra(_) => ("algebra", None),
        };
        let mut body = json!({"kind": kind, "message": self.to_string()});
        if let Some(p) = position {
            body["position"] = json!(p);
        }
        json!({ "error": body })
    }
}

/// A finished command: JSON document plus whether every reported check held.
struct Output {
    doc: Json,
    pass: bool,
}

impl Output {
    fn ok(doc: Json) -> Self {
        Output { doc, pass: true }
    }

    fn checked(doc: Json, pass: bool) -> Self {
        Output { doc, pass }
    }
}

struct Session {
    sig: AlgebraSignature,
    tol: f64,
    seed: u64,
}

impl Session {
    fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let squares = match &cli.squares {
            None => None,
            Some(text) => Some(
                text.split(',')
                    .map(|s| {
                        parse_complex(s.trim())
                            .map_err(|e| CliError::Usage(format!("bad --squares entry '{}': {e}", s.trim())))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let sig = match (cli.n, squares) {
            (None, None) => {
                return Err(CliError::Usage(
                    "the generator count -n (or --squares) is required".into(),
                ))
            }
            (Some(n), None) => AlgebraSignature::standard(n)?,
            (n, Some(sq)) => {
                if n.is_some_and(|n| n != sq.len()) {
                    return Err(CliError::Usage(format!(
                        "-n {} disagrees with {} squares",
                        n.unwrap_or(0),
                        sq.len()
                    )));
                }
                AlgebraSignature::new(sq)?
            }
        };
        if cli.tol.is_nan() || cli.tol < 0.0 {
            return Err(CliError::Usage("--tol must be a nonnegative number".into()));
        }
        Ok(Session {
            sig,
            tol: cli.tol,
            seed: cli.seed,
        })
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn value(&self, text: &str) -> Result<Value, CliError> {
        Ok(parse_value(text, &self.sig)?)
    }

    fn element(&self, text: &str) -> Result<Multivector, CliError> {
        match self.value(text)? {
            Value::Element(m) => Ok(m),
            Value::Matrix(_) => Err(CliError::Usage("expected an element, found a matrix literal".into())),
        }
    }

    /// Elements are promoted to 1x1 matrices.
    fn square_matrix(&self, text: &str) -> Result<CliffordMatrix, CliError> {
        let m = match self.value(text)? {
            Value::Element(a) => CliffordMatrix::scalar_diag(&self.sig, 1, &a),
            Value::Matrix(m) => m,
        };
        if !m.is_square() {
            return Err(CliError::Usage(format!(
                "expected a square matrix, found {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(m)
    }

    fn complex_matrix(&self, text: &str) -> Result<ComplexMatrix, CliError> {
        let scalars = AlgebraSignature::standard(0)?;
        match parse_value(text, &scalars)? {
            Value::Matrix(m) => Ok(ComplexMatrix::from_vec(
                m.rows(),
                m.cols(),
                m.entries().iter().map(|e| e.scalar_part()).collect(),
            )?),
            Value::Element(a) => Ok(ComplexMatrix::scalar(1, a.scalar_part())),
        }
    }
}

fn relative(residual: f64, scale: f64) -> f64 {
    residual / scale.max(1.0)
}

fn rep(s: &Session, expr: &str) -> Result<Output, CliError> {
    let image = match s.value(expr)? {
        Value::Element(a) => phi(&a)?,
        Value::Matrix(m) => big_phi(&m)?,
    };
    Ok(Output::ok(render::rep(&image)))
}

fn unrep(
    s: &Session,
    plus: &str,
    minus: Option<&str>,
    rows: Option<usize>,
    cols: Option<usize>,
) -> Result<Output, CliError> {
    let n = s.sig.n();
    let image = match (n % 2, minus) {
        (0, None) => RepMatrix::Even(s.complex_matrix(plus)?),
        (1, Some(minus)) => RepMatrix::Odd {
            plus: s.complex_matrix(plus)?,
            minus: s.complex_matrix(minus)?,
        },
        (0, Some(_)) => return Err(CliError::Usage(format!("n = {n} is even: pass a single matrix"))),
        _ => {
            return Err(CliError::Usage(format!(
                "n = {n} is odd: pass the plus and minus blocks"
            )))
        }
    };
    match (rows, cols) {
        (None, None) => Ok(Output::ok(render::multivector(&phi_inverse(&image, n)?))),
        (r, c) => {
            let (r, c) = (r.unwrap_or(1), c.unwrap_or(1));
            Ok(Output::ok(render::cmatrix(&big_phi_inverse(&image, n, r, c)?)))
        }
    }
}

fn verify(s: &Session, expr: Option<&str>, trials: usize) -> Result<Output, CliError> {
    let verifier = SimilarityVerifier::new(s.sig.n())?;
    let elements = match expr {
        Some(text) => vec![s.element(text)?],
        None => {
            let mut rng = s.rng();
            (0..trials).map(|_| random_multivector(&s.sig, &mut rng)).collect()
        }
    };
    let mut worst: f64 = 0.0;
    let mut details = Vec::with_capacity(elements.len());
    for (k, a) in elements.iter().enumerate() {
        let r = relative(verifier.residual(a)?, phi(a)?.max_abs());
        worst = worst.max(r);
        details.push(json!({"index": k, "residual": render::number(r)}));
    }
    Ok(Output::checked(
        render::report(worst <= s.tol, worst, details),
        worst <= s.tol,
    ))
}

fn pbuild(s: &Session) -> Result<Output, CliError> {
    let n = s.sig.n();
    let (p, p_inv) = build_p(n)?;
    let id = CliffordMatrix::identity(&p.signature().clone(), p.rows());
    let residual = p.try_mul(&p_inv)?.distance(&id).max(p_inv.try_mul(&p)?.distance(&id));
    let pass = residual <= s.tol;
    let doc = json!({
        "n": n,
        "extent": p.rows(),
        "pass": pass,
        "max_residual": render::number(residual),
        "p": render::cmatrix(&p),
        "p_inv": render::cmatrix(&p_inv),
    });
    Ok(Output::checked(doc, pass))
}

fn not_invertible(e: cliffrep::Error) -> Result<Output, CliError> {
    match e {
        cliffrep::Error::NotInvertible | cliffrep::Error::Singular => {
            Ok(Output::ok(json!({"invertible": false, "reason": e.to_string()})))
        }
        other => Err(other.into()),
    }
}

fn inv(s: &Session, expr: &str) -> Result<Output, CliError> {
    match s.value(expr)? {
        Value::Element(a) => {
            let b = match cliffrep::representation::inverse(&a) {
                Ok(b) => b,
                Err(e) => return not_invertible(e),
            };
            let one = Multivector::one(&s.sig);
            let r = a.try_mul(&b)?.distance(&one).max(b.try_mul(&a)?.distance(&one));
            let pass = r <= s.tol;
            let doc = json!({"invertible": true, "pass": pass, "max_residual": render::number(r), "inverse": render::multivector(&b)});
            Ok(Output::checked(doc, pass))
        }
        Value::Matrix(m) => {
            let b = match cliff_inverse(&m) {
                Ok(b) => b,
                Err(e) => return not_invertible(e),
            };
            let id = CliffordMatrix::identity(&s.sig, m.rows());
            let r = m.try_mul(&b)?.distance(&id).max(b.try_mul(&m)?.distance(&id));
            let pass = r <= s.tol;
            let doc = json!({"invertible": true, "pass": pass, "max_residual": render::number(r), "inverse": render::cmatrix(&b)});
            Ok(Output::checked(doc, pass))
        }
    }
}

fn det2(s: &Session, expr: &str) -> Result<Output, CliError> {
    let a = s.element(expr)?;
    let det = phi(&a)?.det()?;
    if a.n() > 2 {
        return Ok(Output::ok(json!({"det": render::complex(det)})));
    }
    let formula: Complex = a.coeffs().iter().map(|c| c * c).sum();
    let scale: f64 = a.coeffs().iter().map(|c| c.norm_sqr()).sum();
    let r = relative((det - formula).norm(), scale);
    let pass = r <= s.tol;
    let doc = json!({
        "det": render::complex(det),
        "formula": render::complex(formula),
        "pass": pass,
        "max_residual": render::number(r),
    });
    Ok(Output::checked(doc, pass))
}

fn charpoly(s: &Session, expr: &str) -> Result<Output, CliError> {
    Ok(Output::ok(render::polynomial(&cliff_charpoly(
        &s.square_matrix(expr)?,
    )?)))
}

fn ch_check(s: &Session, expr: Option<&str>, size: usize, trials: usize) -> Result<Output, CliError> {
    let matrices = match expr {
        Some(text) => vec![s.square_matrix(text)?],
        None => {
            let mut rng = s.rng();
            (0..trials)
                .map(|_| random_cmatrix(&s.sig, size, size, &mut rng))
                .collect()
        }
    };
    let mut worst: f64 = 0.0;
    let mut details = Vec::with_capacity(matrices.len());
    for (k, m) in matrices.iter().enumerate() {
        let ch = cayley_hamilton(m)?;
        let r = ch.relative();
        worst = worst.max(r);
        details.push(json!({
            "index": k,
            "size": m.rows(),
            "residual": render::number(r),
            "absolute": render::number(ch.absolute),
            "charpoly": render::polynomial(&ch.charpoly),
        }));
    }
    Ok(Output::checked(
        render::report(worst <= s.tol, worst, details),
        worst <= s.tol,
    ))
}

fn exp(s: &Session, expr: &str) -> Result<Output, CliError> {
    match s.value(expr)? {
        Value::Element(a) => {
            let e = cliff_exp(&CliffordMatrix::scalar_diag(&s.sig, 1, &a))?;
            Ok(Output::ok(render::multivector(e.get(0, 0))))
        }
        Value::Matrix(m) => Ok(Output::ok(render::cmatrix(&cliff_exp(&m)?))),
    }
}

fn similar(s: &Session, a: &str, b: &str, trials: usize) -> Result<Output, CliError> {
    let (a, b) = (s.square_matrix(a)?, s.square_matrix(b)?);
    let verdict = similar_check(&a, &b, trials, s.tol.max(1e-9), &mut s.rng())?;
    let label = verdict.label();
    Ok(match verdict {
        SimilarityVerdict::Similar { witness, residual } => {
            let scale = a.max_abs().max(b.max_abs()) * witness.max_abs() * a.rows() as f64;
            let r = relative(residual, scale);
            let pass = r <= s.tol;
            let doc = json!({"verdict": label, "pass": pass, "max_residual": render::number(r), "witness": render::cmatrix(&witness)});
            Output::checked(doc, pass)
        }
        SimilarityVerdict::NotSimilar { reason } => Output::ok(json!({"verdict": label, "reason": reason})),
        SimilarityVerdict::Inconclusive { nullity, trials } => {
            Output::ok(json!({"verdict": label, "nullity": nullity, "trials": trials}))
        }
    })
}

fn sharp_cmd(s: &Session, expr: &str) -> Result<Output, CliError> {
    let small = s.sig.n() <= 2;
    match s.value(expr)? {
        Value::Element(a) => Ok(Output::ok(render::multivector(&if small {
            sharp(&a)?
        } else {
            sharp_general(&a)?
        }))),
        Value::Matrix(m) => Ok(Output::ok(render::cmatrix(&if small {
            matrix_sharp(&m)?
        } else {
            matrix_sharp_general(&m)?
        }))),
    }
}

fn iso_rank(s: &Session) -> Result<Output, CliError> {
    let report = check_isomorphism(s.sig.n())?;
    let pass = report.pass();
    Ok(Output::checked(
        json!({"n": report.n, "rank": report.rank, "expected": report.expected, "pass": pass}),
        pass,
    ))
}

fn lemma_t(s: &Session, trials: usize) -> Result<Output, CliError> {
    if s.sig.n() != 2 {
        return Err(CliError::Usage(
            "lemma-t-report needs two generators (-n 2 or --squares u,v)".into(),
        ));
    }
    let (u, v) = (s.sig.square(1), s.sig.square(2));
    let report = lemma3_t_report(u, v, trials, &mut s.rng())?;
    let coeffs = |c: &[Complex; 4]| c.iter().map(|&x| render::complex(x)).collect::<Vec<_>>();
    let details: Vec<Json> = report
        .entries
        .iter()
        .zip(report.stated_entry_residuals)
        .map(|(e, r)| {
            json!({
                "row": e.row,
                "col": e.col,
                "matches": e.matches,
                "stated_residual": render::number(r),
                "stated": coeffs(&e.stated),
                "actual": coeffs(&e.actual),
            })
        })
        .collect();
    let pass = report.stated_max_residual <= s.tol && report.matches_stated_equation;
    let mut doc = render::report(pass, report.stated_max_residual, details);
    doc["verdict"] = json!(if report.matches_stated_equation {
        "stated map holds"
    } else {
        "stated map differs"
    });
    doc["u"] = render::complex(u);
    doc["v"] = render::complex(v);
    doc["trials"] = json!(trials);
    doc["t_involution_residual"] = render::number(report.t_involution_residual);
    doc["conjugation_scalar_residual"] = render::number(report.conjugation_scalar_residual);
    doc["corrected_max_residual"] = render::number(report.corrected_max_residual);
    Ok(Output::checked(doc, pass))
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let s = Session::from_cli(cli)?;
    match &cli.command {
        Command::Rep { expr } => rep(&s, expr),
        Command::Unrep {
            plus,
            minus,
            rows,
            cols,
        } => unrep(&s, plus, minus.as_deref(), *rows, *cols),
        Command::Verify { expr, trials } => verify(&s, expr.as_deref(), *trials),
        Command::Pbuild => pbuild(&s),
        Command::Inv { expr } => inv(&s, expr),
        Command::Det2 { expr } => det2(&s, expr),
        Command::Charpoly { expr } => charpoly(&s, expr),
        Command::ChCheck { expr, size, trials } => ch_check(&s, expr.as_deref(), *size, *trials),
        Command::Exp { expr } => exp(&s, expr),
        Command::Similar { a, b, trials } => similar(&s, a, b, *trials),
        Command::Sharp { expr } => sharp_cmd(&s, expr),
        Command::IsoRank => iso_rank(&s),
        Command::LemmaTReport { trials } => lemma_t(&s, *trials),
    }
}

/// Run the command line `args` (program name first); returns the text for
/// standard output and the exit code.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (e.to_string(), 0);
            }
            let text = e.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            let mut doc = CliError::Usage(first).to_json();
            doc["error"]["detail"] = json!(text.trim_end());
            return (doc.to_string(), 2);
        }
    };
    let (doc, code) = match dispatch(&cli) {
        Ok(out) => (out.doc, if out.pass { 0 } else { 1 }),
        Err(e) => (e.to_json(), 2),
    };
    let text = if cli.pretty {
        serde_json::to_string_pretty(&doc)
    } else {
        serde_json::to_string(&doc)
    };
    (text.expect("JSON values always serialize"), code)
}
