//! Command-line front end: argument parsing, dispatch and report printing.
//!
//! Exit status is 0 on success, 1 on domain errors (for example, asking to
//! decompose a polynomial that is not harmonic, or a certificate that fails
//! to replay) and 2 on usage errors, including malformed expressions.

use std::io::Read;

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use serde_json::{json, Value};

use crate::calculus::{dird, dird_symbol, laplacian_ell, replace_direction};
use crate::cert::{
    decomposition_doc, harmonic_gram_doc, nonsym_decomposition_doc, sos_doc, subharmonic_doc,
    two_var_sos_doc, verify_cert, verify_decomp,
};
use crate::error::{Error, Result};
use crate::eval::{evaluate_with_direction, MatrixTuple};
use crate::harmonic::{
    decompose_main, harmonic_kernel_basis_in, try_is_ell_harmonic, Decomposition,
};
use crate::linalg::Matrix;
use crate::nonsym::{alpha_components, nonsym_ell_harmonic_decompose};
use crate::poly::FreePoly;
use crate::subharmonic::{
    bounded_below_sos, harmonic_gram_rep, harmonic_gram_rep_with_basis, is_subharmonic, psd_check,
    sample_matrix_positivity, two_var_sos_decompose, Verdict,
};
use crate::symmetry::comm_collapse;
use crate::text::{format_poly, parse_poly, parse_poly_with, ParseOptions};
use crate::word::{Letter, Mode};

#[derive(Parser, Debug)]
#[command(
    name = "freeharm",
    version,
    about = "Exact calculus of noncommutative polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Expression; omit when using --file.
    #[arg(allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// Read the expression from a file.
    #[arg(long)]
    pub file: Option<String>,
    /// Nonsymmetric variables (x1' is the adjoint of x1).
    #[arg(long)]
    pub nonsym: bool,
    /// Alphabet size; inferred from the largest index when absent.
    #[arg(long)]
    pub g: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct EllArg {
    #[arg(long, default_value_t = 2)]
    pub ell: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Directional derivative D[p, x_i, dir], or D[p, q, h] for a symbol q.
    Diff {
        #[command(flatten)]
        common: Common,
        /// Variable index i.
        #[arg(long, conflicts_with = "symbol")]
        var: Option<usize>,
        /// Direction letter: h, h' or a variable such as x2.
        #[arg(long, default_value = "h")]
        dir: String,
        /// Commuting symbol such as "x1^2 + 2 x2".
        #[arg(long)]
        symbol: Option<String>,
    },
    /// The ℓ-Laplacian.
    Lap {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ell: EllArg,
    },
    /// Whether the ℓ-Laplacian vanishes
    IsHarmonic {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ell: EllArg,
    },
    /// Exact basis of the homogeneous ℓ-harmonics of a degree.
    HarmonicBasis {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        ell: EllArg,
        #[arg(long)]
        nonsym: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value_t = 6)]
        max_g: usize,
    },
    /// Permuted independent products of symmetrized ℓ-harmonics.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ell: EllArg,
    },
    /// Gram-matrix subharmonicity test, optionally with matrix sampling.
    IsSubharmonic {
        #[command(flatten)]
        common: Common,
        /// Also sample this many random tuples.
        #[arg(long, default_value_t = 0)]
        trials: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Harmonic squares: bounded-below form, or the two-variable form.
    Sos {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        two_var: bool,
    },
    /// p = HᵀAH over a harmonic basis (default: the kernel basis).
    HarmonicGram {
        #[command(flatten)]
        common: Common,
        /// Basis polynomials separated by ';'.
        #[arg(long)]
        basis: Option<String>,
    },
    /// Searches random matrix tuples for a negative Laplacian evaluation.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluates at matrices given as JSON, e.g. '[[[1,0],[0,2]]]'.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matrices: String,
        /// Direction matrix for h.
        #[arg(long)]
        h: Option<String>,
    },
    /// Transpose-pattern components, decomposed when ℓ-harmonic.
    NonsymSplit {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ell: EllArg,
    },
    /// Replays a certificate document (path or '-').
    VerifyCert { path: String },
    /// Replays a decomposition document (path or '-').
    VerifyDecomp { path: String },
}

/// Printed output and exit status of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_command(&cli.command),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run_command(cmd: &Command) -> Outcome {
    match execute(cmd) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Domain(m, stdout)) => Outcome {
            code: 1,
            stdout,
            stderr: format!("error: {m}\n"),
        },
    }
}

enum Failure {
    Usage(String),
    /// Message plus whatever was already printed.
    Domain(String, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. }
            | Error::IndexOutOfRange { .. }
            | Error::TransposeInSymmetricMode
            | Error::DirectionNotAllowed => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string(), String::new()),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read_source(path: &str) -> Run<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

impl Common {
    fn mode(&self) -> Mode {
        if self.nonsym {
            Mode::Nonsymmetric
        } else {
            Mode::Symmetric
        }
    }

    fn text(&self) -> Run<String> {
        match (&self.expr, &self.file) {
            (Some(e), None) => Ok(e.clone()),
            (None, Some(f)) => read_source(f),
            (Some(_), Some(_)) => Err(Failure::Usage(
                "give an expression or --file, not both".into(),
            )),
            (None, None) => Err(Failure::Usage("missing expression".into())),
        }
    }

    fn poly(&self) -> Run<FreePoly> {
        Ok(parse_poly(&self.text()?, self.mode(), self.g)?)
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn line(s: impl AsRef<str>) -> String {
    format!("{}\n", s.as_ref())
}

fn decomposition_text(d: &Decomposition) -> String {
    let mut out = format!("alphabet {}\n", d.alphabet());
    for s in d.summands() {
        let fs: Vec<String> = s
            .factors
            .iter()
            .map(|f| format!("({})", format_poly(f)))
            .collect();
        out.push_str(&format!("{} {}\n", s.sigma, fs.join(" ")));
    }
    out
}

fn parse_direction(s: &str, g: usize) -> Run<Letter> {
    let opts = ParseOptions::new(Mode::Nonsymmetric).with_direction();
    let p = parse_poly_with(s, &opts)?;
    match p.terms().collect::<Vec<_>>().as_slice() {
        [(w, c)] if c.is_one() && w.len() == 1 => {
            let l = w[0];
            if !l.is_dir() && l.index() > g {
                return Err(Failure::Usage(format!(
                    "direction {s} outside the alphabet"
                )));
            }
            Ok(l)
        }
        _ => Err(Failure::Usage(format!("{s:?} is not a single letter"))),
    }
}

fn parse_matrix(v: &Value) -> Run<DMatrix<f64>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Failure::Usage("matrix must be an array of rows".into()))?;
    let n = rows.len();
    let mut m = DMatrix::zeros(n, n);
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|a| a.len() == n)
            .ok_or_else(|| Failure::Usage("matrices must be square".into()))?;
        for (c, x) in row.iter().enumerate() {
            m[(r, c)] = x
                .as_f64()
                .ok_or_else(|| Failure::Usage("matrix entries must be numbers".into()))?;
        }
    }
    Ok(m)
}

fn parse_json(s: &str) -> Run<Value> {
    serde_json::from_str(s).map_err(|e| Failure::Usage(format!("bad JSON: {e}")))
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Subharmonic => "true",
        Verdict::NotSubharmonic => "false",
        Verdict::Undecided => "undecided",
    }
}

fn execute(cmd: &Command) -> Run<String> {
    match cmd {
        Command::Diff {
            common,
            var,
            dir,
            symbol,
        } => {
            let p = common.poly()?;
            let out = match (var, symbol) {
                (Some(i), None) => dird(&p, *i, parse_direction(dir, p.g())?)?,
                (None, Some(q)) => {
                    let q = parse_poly(q, Mode::Symmetric, Some(p.g()))?;
                    let out = dird_symbol(&p, &comm_collapse(&q))?;
                    match parse_direction(dir, p.g())? {
                        l if l.is_dir() && !l.adjoint() => out,
                        l if !l.is_dir() && !l.adjoint() => replace_direction(&out, l.index()),
                        _ => {
                            return Err(Failure::Usage(
                                "a symbol direction must be h or a plain variable".into(),
                            ))
                        }
                    }
                }
                _ => return Err(Failure::Usage("give --var or --symbol".into())),
            };
            Ok(if common.json {
                json_text(&json!({"result": format_poly(&out)}))
            } else {
                line(format_poly(&out))
            })
        }
        Command::Lap { common, ell } => {
            let out = laplacian_ell(&common.poly()?, ell.ell)?;
            Ok(if common.json {
                json_text(&json!({"result": format_poly(&out)}))
            } else {
                line(format_poly(&out))
            })
        }
        Command::IsHarmonic { common, ell } => {
            let b = try_is_ell_harmonic(&common.poly()?, ell.ell)?;
            Ok(if common.json {
                json_text(&json!({"harmonic": b, "ell": ell.ell}))
            } else {
                line(b.to_string())
            })
        }
        Command::HarmonicBasis {
            g,
            degree,
            ell,
            nonsym,
            json,
            max_degree,
            max_g,
        } => {
            if degree > max_degree || g > max_g {
                return Err(Failure::Usage(format!(
                    "degree {degree} or alphabet {g} above the caps ({max_degree}, {max_g}); raise --max-degree/--max-g"
                )));
            }
            let mode = if *nonsym {
                Mode::Nonsymmetric
            } else {
                Mode::Symmetric
            };
            let basis = harmonic_kernel_basis_in(*g, *degree, ell.ell, mode)?;
            Ok(if *json {
                json_text(&json!({
                    "alphabet": g, "degree": degree, "ell": ell.ell, "mode": mode.name(),
                    "dimension": basis.len(), "basis": basis.iter().map(format_poly).collect::<Vec<_>>()
                }))
            } else {
                let mut s = format!("dimension {}\n", basis.len());
                for b in &basis {
                    s.push_str(&line(format_poly(b)));
                }
                s
            })
        }
        Command::Decompose { common, ell } => {
            let p = common.poly()?;
            if p.mode() == Mode::Nonsymmetric {
                let pieces = nonsym_ell_harmonic_decompose(&p, ell.ell)?;
                return Ok(if common.json {
                    json_text(&nonsym_decomposition_doc(&p, ell.ell, &pieces))
                } else {
                    pieces
                        .iter()
                        .map(|x| {
                            format!(
                                "alpha {}\n{}",
                                x.alpha,
                                decomposition_text(&x.decomposition)
                            )
                        })
                        .collect()
                });
            }
            let d = decompose_main(&p, ell.ell)?;
            Ok(if common.json {
                json_text(&decomposition_doc(&p, &d))
            } else {
                decomposition_text(&d)
            })
        }
        Command::IsSubharmonic {
            common,
            trials,
            n,
            seed,
        } => {
            let p = common.poly()?;
            let report = is_subharmonic(&p)?;
            let sample = if *trials > 0 {
                Some(sample_matrix_positivity(&p, *n, *trials, *seed)?)
            } else {
                None
            };
            if common.json {
                let mut doc = subharmonic_doc(&p, &report);
                if let Some(s) = &sample {
                    doc["sampling"] = match s {
                        Some(c) => crate::cert::counterexample_doc(&p, c),
                        None => {
                            json!({"trials": trials, "n": n, "seed": seed, "counterexample": null})
                        }
                    };
                }
                return Ok(json_text(&doc));
            }
            let mut s = line(verdict_word(report.verdict));
            if let Some(w) = &report.asymmetry {
                s.push_str(&format!("laplacian not symmetric at {w}\n"));
            }
            for b in &report.blocks {
                let v = match &b.certificate {
                    Some(c) if c.is_psd() => "psd",
                    Some(_) => "not psd",
                    None => "odd",
                };
                s.push_str(&format!("block {}: {v}\n", b.degree));
            }
            if let Some(found) = &sample {
                s.push_str(&match found {
                    Some(c) => format!(
                        "sampling: counterexample at trial {} (eigenvalue {:.3e})\n",
                        c.trial, c.min_eigenvalue
                    ),
                    None => format!("sampling: no counterexample in {trials} trials\n"),
                });
            }
            Ok(s)
        }
        Command::Sos { common, two_var } => {
            let p = common.poly()?;
            if *two_var {
                let s = two_var_sos_decompose(&p)?;
                return Ok(if common.json {
                    json_text(&two_var_sos_doc(&p, &s))
                } else {
                    sos_text(&s.squares, &s.harmonic)
                });
            }
            match bounded_below_sos(&p)? {
                Some(sq) => {
                    let zero = FreePoly::zero(p.g(), p.mode());
                    Ok(if common.json {
                        json_text(&sos_doc(&p, &sq, &zero))
                    } else {
                        sos_text(&sq, &zero)
                    })
                }
                None => {
                    let rep = harmonic_gram_rep(&p)?;
                    let cert = if rep.a.is_symmetric() {
                        Some(psd_check(&rep.a)?)
                    } else {
                        None
                    };
                    let doc = harmonic_gram_doc(&rep, cert.as_ref());
                    Ok(if common.json {
                        json_text(&json!({"bounded_below": false, "harmonic_gram": doc}))
                    } else {
                        line("not bounded below: the harmonic Gram matrix is not PSD")
                    })
                }
            }
        }
        Command::HarmonicGram { common, basis } => {
            let p = common.poly()?;
            let rep = match basis {
                Some(b) => {
                    let list: Vec<FreePoly> = b
                        .split(';')
                        .map(|s| parse_poly(s, p.mode(), Some(p.g())))
                        .collect::<Result<_>>()?;
                    harmonic_gram_rep_with_basis(&p, &list)?
                }
                None => harmonic_gram_rep(&p)?,
            };
            let cert = if rep.a.is_symmetric() {
                Some(psd_check(&rep.a)?)
            } else {
                None
            };
            if common.json {
                return Ok(json_text(&harmonic_gram_doc(&rep, cert.as_ref())));
            }
            let mut s = String::new();
            for b in &rep.basis {
                s.push_str(&format!("basis {}\n", format_poly(b)));
            }
            s.push_str(&matrix_text(&rep.a));
            s.push_str(&line(match &cert {
                Some(c) if c.is_psd() => "psd",
                Some(_) => "not psd",
                None => "not symmetric",
            }));
            Ok(s)
        }
        Command::Sample {
            common,
            n,
            trials,
            seed,
        } => {
            let p = common.poly()?;
            let found = sample_matrix_positivity(&p, *n, *trials, *seed)?;
            Ok(match (&found, common.json) {
                (Some(c), true) => json_text(&crate::cert::counterexample_doc(&p, c)),
                (None, true) => json_text(&json!({"counterexample": null, "trials": trials})),
                (Some(c), false) => format!(
                    "counterexample at trial {}: least eigenvalue {:.6e}\n",
                    c.trial, c.min_eigenvalue
                ),
                (None, false) => line(format!("no counterexample in {trials} trials")),
            })
        }
        Command::Eval {
            common,
            matrices,
            h,
        } => {
            let p = common.poly()?;
            let list = parse_json(matrices)?;
            let mats: Vec<DMatrix<f64>> = list
                .as_array()
                .ok_or_else(|| Failure::Usage("--matrices must be a list".into()))?
                .iter()
                .map(parse_matrix)
                .collect::<Run<_>>()?;
            let x = MatrixTuple::new(mats, p.mode() == Mode::Symmetric)?;
            let h = match h {
                Some(s) => Some(parse_matrix(&parse_json(s)?)?),
                None => None,
            };
            let v = evaluate_with_direction(&p, &x, h.as_ref())?;
            let rows: Vec<Vec<f64>> = (0..v.nrows())
                .map(|r| (0..v.ncols()).map(|c| v[(r, c)]).collect())
                .collect();
            Ok(if common.json {
                json_text(&json!({ "value": rows }))
            } else {
                rows.iter()
                    .map(|r| {
                        line(
                            r.iter()
                                .map(|x| format!("{x}"))
                                .collect::<Vec<_>>()
                                .join(" "),
                        )
                    })
                    .collect()
            })
        }
        Command::NonsymSplit { common, ell } => {
            let mut common = common.clone();
            common.nonsym = true;
            let p = common.poly()?;
            let comps = alpha_components(&p);
            let harmonic = p.is_homogeneous() && try_is_ell_harmonic(&p, ell.ell)?;
            if common.json {
                if harmonic {
                    return Ok(json_text(&nonsym_decomposition_doc(
                        &p,
                        ell.ell,
                        &nonsym_ell_harmonic_decompose(&p, ell.ell)?,
                    )));
                }
                let c: serde_json::Map<String, Value> = comps
                    .iter()
                    .map(|(a, q)| (a.to_string(), json!(format_poly(q))))
                    .collect();
                return Ok(json_text(&json!({ "components": c, "harmonic": false })));
            }
            let mut s = String::new();
            for (a, q) in &comps {
                s.push_str(&format!("{a}: {}\n", format_poly(q)));
            }
            if harmonic {
                for piece in nonsym_ell_harmonic_decompose(&p, ell.ell)? {
                    s.push_str(&format!(
                        "alpha {}\n{}",
                        piece.alpha,
                        decomposition_text(&piece.decomposition)
                    ));
                }
            }
            Ok(s)
        }
        Command::VerifyCert { path } => verify_with(path, verify_cert),
        Command::VerifyDecomp { path } => verify_with(path, verify_decomp),
    }
}

fn verify_with(path: &str, check: fn(&Value) -> Result<()>) -> Run<String> {
    let doc = parse_json(&read_source(path)?)?;
    match check(&doc) {
        Ok(()) => Ok(line("ok")),
        Err(e) => Err(Failure::Domain(e.to_string(), line("rejected"))),
    }
}

fn sos_text(squares: &[(crate::scalar::Scalar, FreePoly)], harmonic: &FreePoly) -> String {
    let mut s = String::new();
    for (c, r) in squares {
        s.push_str(&format!("{c} * square({})\n", format_poly(r)));
    }
    s.push_str(&format!("harmonic {}\n", format_poly(harmonic)));
    s
}

fn matrix_text(m: &Matrix) -> String {
    (0..m.rows())
        .map(|r| {
            line(
                m.row(r)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            )
        })
        .collect()
}
