//! JSON documents for certificates and decompositions, and the exact
//! checkers that replay them.
//!
//! Every document carries `"schema": "freeharm-cert/1"` and a `"kind"`.
//! Rationals are `[num, den]` pairs (integers, or decimal strings when they
//! do not fit in 64 bits); complex scalars are `{"re": .., "im": ..}`.
//! Polynomials and words are canonical text, so they go back through the
//! parser.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::calculus::laplacian_ell;
use crate::error::{Error, Result};
use crate::harmonic::{try_is_ell_harmonic, Decomposition, Summand};
use crate::linalg::Matrix;
use crate::nonsym::{apply_alpha, AlphaPiece, AlphaTuple};
use crate::perm::Permutation;
use crate::poly::FreePoly;
use crate::scalar::Scalar;
use crate::subharmonic::{
    min_eigenvalue, Counterexample, GramBlock, GramRep, HarmonicGramRep, PsdCertificate,
    SubharmonicReport, TwoVarSos, Verdict, SAMPLING_TOLERANCE,
};
use crate::text::{format_poly, parse_poly_with, ParseOptions};
use crate::word::{Mode, Word};

pub const SCHEMA: &str = "freeharm-cert/1";

fn bad(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn int_from(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| bad(format!("non-integer number {n}"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("bad integer {s:?}"))),
        _ => Err(bad("expected an integer")),
    }
}

pub fn rational_json(q: &BigRational) -> Value {
    json!([int_json(q.numer()), int_json(q.denom())])
}

pub fn rational_from(v: &Value) -> Result<BigRational> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| bad("rational must be [num, den]"))?;
    let den = int_from(&pair[1])?;
    if den == BigInt::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(int_from(&pair[0])?, den))
}

pub fn scalar_json(c: &Scalar) -> Value {
    if c.is_real() {
        rational_json(c.re())
    } else {
        json!({"re": rational_json(c.re()), "im": rational_json(c.im())})
    }
}

pub fn scalar_from(v: &Value) -> Result<Scalar> {
    match v {
        Value::Object(o) => {
            let part = |k: &str| {
                o.get(k)
                    .ok_or_else(|| bad(format!("complex scalar lacks {k:?}")))
                    .and_then(rational_from)
            };
            Ok(Scalar::new(part("re")?, part("im")?))
        }
        _ => Ok(Scalar::real(rational_from(v)?)),
    }
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn vector_from(v: &Value) -> Result<Vec<Scalar>> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of scalars"))?
        .iter()
        .map(scalar_from)
        .collect()
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_json(m.row(r))).collect())
}

pub fn matrix_from(v: &Value) -> Result<Matrix> {
    let rows: Vec<Vec<Scalar>> = v
        .as_array()
        .ok_or_else(|| bad("expected a matrix"))?
        .iter()
        .map(vector_from)
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(rows)
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key)
        .ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn str_field<'a>(doc: &'a Value, key: &str) -> Result<&'a str> {
    field(doc, key)?
        .as_str()
        .ok_or_else(|| bad(format!("field {key:?} must be a string")))
}

fn usize_field(doc: &Value, key: &str) -> Result<usize> {
    field(doc, key)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| bad(format!("field {key:?} must be a count")))
}

fn array_field<'a>(doc: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    field(doc, key)?
        .as_array()
        .ok_or_else(|| bad(format!("field {key:?} must be an array")))
}

fn header(kind: &str, p: &FreePoly) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!(kind));
    m.insert("mode".into(), json!(p.mode().name()));
    m.insert("g".into(), json!(p.g()));
    m.insert("polynomial".into(), json!(format_poly(p)));
    m
}

struct Context {
    mode: Mode,
    g: usize,
}

impl Context {
    fn of(doc: &Value) -> Result<Context> {
        if str_field(doc, "schema")? != SCHEMA {
            return Err(bad("unknown schema"));
        }
        let mode = Mode::from_name(str_field(doc, "mode")?).ok_or_else(|| bad("unknown mode"))?;
        Ok(Context {
            mode,
            g: usize_field(doc, "g")?,
        })
    }

    fn poly_in(&self, text: &str, g: usize) -> Result<FreePoly> {
        parse_poly_with(
            text,
            &ParseOptions::new(self.mode)
                .with_g(Some(g))
                .with_direction(),
        )
    }

    fn poly(&self, text: &str) -> Result<FreePoly> {
        self.poly_in(text, self.g)
    }

    fn word(&self, text: &str) -> Result<Word> {
        let p = self.poly(text)?;
        match p.terms().collect::<Vec<_>>().as_slice() {
            [(w, c)] if c.is_one() => Ok((*w).clone()),
            _ => Err(bad(format!("{text:?} is not a single word"))),
        }
    }
}

/// `{verdict, M, P, D}` or `{verdict, M, witness}`.
pub fn psd_json(m: &Matrix, cert: &PsdCertificate) -> Value {
    match cert {
        PsdCertificate::Psd { p, d } => {
            json!({"verdict": "psd", "M": matrix_json(m), "P": matrix_json(p), "D": vector_json(d)})
        }
        PsdCertificate::NotPsd { witness } => {
            json!({"verdict": "not-psd", "M": matrix_json(m), "witness": vector_json(witness)})
        }
    }
}

/// Replays a PSD block; returns the claimed matrix and whether it is PSD.
fn check_psd(v: &Value) -> Result<(Matrix, bool)> {
    let m = matrix_from(field(v, "M")?)?;
    let (cert, psd) = match str_field(v, "verdict")? {
        "psd" => (
            PsdCertificate::Psd {
                p: matrix_from(field(v, "P")?)?,
                d: vector_from(field(v, "D")?)?,
            },
            true,
        ),
        "not-psd" => (
            PsdCertificate::NotPsd {
                witness: vector_from(field(v, "witness")?)?,
            },
            false,
        ),
        other => return Err(bad(format!("unknown PSD verdict {other:?}"))),
    };
    if !m.is_symmetric() {
        return Err(bad("certified matrix is not symmetric"));
    }
    if !cert.verify(&m) {
        return Err(bad(if psd {
            "PᵀDP ≠ M or a negative weight"
        } else {
            "witness does not give a negative value"
        }));
    }
    Ok((m, psd))
}

pub fn psd_certificate_doc(m: &Matrix, cert: &PsdCertificate) -> Value {
    let mut v = psd_json(m, cert);
    let o = v.as_object_mut().expect("object");
    o.insert("schema".into(), json!(SCHEMA));
    o.insert("kind".into(), json!("psd"));
    v
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Subharmonic => "subharmonic",
        Verdict::NotSubharmonic => "not-subharmonic",
        Verdict::Undecided => "undecided",
    }
}

fn gram_json(g: &GramRep) -> Value {
    Value::Array(g.basis.iter().map(|w| json!(w.to_string())).collect())
}

pub fn subharmonic_doc(p: &FreePoly, report: &SubharmonicReport) -> Value {
    let mut m = header("subharmonic", p);
    m.insert("verdict".into(), json!(verdict_name(report.verdict)));
    m.insert("laplacian".into(), json!(format_poly(&report.laplacian)));
    if let Some(w) = &report.asymmetry {
        m.insert("asymmetry".into(), json!(w.to_string()));
    }
    let blocks: Vec<Value> = report
        .blocks
        .iter()
        .map(|b: &GramBlock| match (&b.gram, &b.certificate) {
            (Some(g), Some(c)) => {
                let mut v = psd_json(&g.m, c);
                let o = v.as_object_mut().expect("object");
                o.insert("degree".into(), json!(b.degree));
                o.insert("basis".into(), gram_json(g));
                v
            }
            _ => json!({"degree": b.degree, "verdict": "odd"}),
        })
        .collect();
    m.insert("blocks".into(), Value::Array(blocks));
    Value::Object(m)
}

fn check_subharmonic(doc: &Value) -> Result<()> {
    let ctx = Context::of(doc)?;
    let p = ctx.poly(str_field(doc, "polynomial")?)?;
    let lap = laplacian_ell(&p, 2)?;
    if ctx.poly(str_field(doc, "laplacian")?)? != lap {
        return Err(bad("recorded Laplacian differs from the recomputed one"));
    }
    let verdict = str_field(doc, "verdict")?;
    if let Some(w) = doc.get("asymmetry") {
        let w = ctx.word(w.as_str().ok_or_else(|| bad("asymmetry must be a word"))?)?;
        if lap.coeff(&w) == lap.coeff(&w.transpose(ctx.mode == Mode::Nonsymmetric)) {
            return Err(bad("asymmetry word has a symmetric coefficient"));
        }
        return if verdict == "not-subharmonic" {
            Ok(())
        } else {
            Err(bad("asymmetric Laplacian with a positive verdict"))
        };
    }
    let toggle = ctx.mode == Mode::Nonsymmetric;
    let mut rebuilt = FreePoly::zero(lap.g(), lap.mode());
    let mut oks = Vec::new();
    let mut last_degree = None;
    for b in array_field(doc, "blocks")? {
        let degree = usize_field(b, "degree")?;
        if last_degree.is_some_and(|d| d >= degree) {
            return Err(bad("blocks out of order"));
        }
        last_degree = Some(degree);
        if str_field(b, "verdict")? == "odd" {
            if degree % 2 == 0 {
                return Err(bad("even block without a Gram matrix"));
            }
            rebuilt = &rebuilt + &lap.homogeneous_component(degree);
            oks.push(false);
            continue;
        }
        let (m, psd) = check_psd(b)?;
        let basis: Vec<Word> = array_field(b, "basis")?
            .iter()
            .map(|w| ctx.word(w.as_str().ok_or_else(|| bad("basis entries are words"))?))
            .collect::<Result<_>>()?;
        if basis.len() != m.rows() || basis.iter().any(|w| 2 * w.len() != degree) {
            return Err(bad("basis does not match the block"));
        }
        for (r, u) in basis.iter().enumerate() {
            for (c, v) in basis.iter().enumerate() {
                rebuilt.add_term(u.transpose(toggle).concat(v), m[(r, c)].clone());
            }
        }
        oks.push(psd);
    }
    if rebuilt != lap {
        return Err(bad("Gram blocks do not reassemble the Laplacian"));
    }
    let expected = if oks.iter().all(|&b| b) {
        "subharmonic"
    } else if !oks[0] || !oks[oks.len() - 1] {
        "not-subharmonic"
    } else {
        "undecided"
    };
    if verdict != expected {
        return Err(bad(format!(
            "verdict {verdict:?} but the blocks give {expected:?}"
        )));
    }
    Ok(())
}

pub fn harmonic_gram_doc(rep: &HarmonicGramRep, cert: Option<&PsdCertificate>) -> Value {
    let mut m = header("harmonic-gram", &rep.poly);
    m.insert(
        "basis".into(),
        Value::Array(rep.basis.iter().map(|b| json!(format_poly(b))).collect()),
    );
    m.insert("A".into(), matrix_json(&rep.a));
    if let Some(c) = cert {
        m.insert("certificate".into(), psd_json(&rep.a, c));
    }
    Value::Object(m)
}

fn check_harmonic_gram(doc: &Value) -> Result<()> {
    let ctx = Context::of(doc)?;
    let p = ctx.poly(str_field(doc, "polynomial")?)?;
    let basis: Vec<FreePoly> = array_field(doc, "basis")?
        .iter()
        .map(|b| {
            ctx.poly(
                b.as_str()
                    .ok_or_else(|| bad("basis entries are polynomials"))?,
            )
        })
        .collect::<Result<_>>()?;
    for b in &basis {
        if !try_is_ell_harmonic(b, 2)? {
            return Err(bad(format!(
                "basis element {} is not harmonic",
                format_poly(b)
            )));
        }
    }
    let a = matrix_from(field(doc, "A")?)?;
    if crate::subharmonic::quadratic_form_poly(&basis, &a, ctx.g, ctx.mode)? != p {
        return Err(bad("BᵀAB differs from the polynomial"));
    }
    if let Some(c) = doc.get("certificate") {
        let (m, _) = check_psd(c)?;
        if m != a {
            return Err(bad("certificate is for a different matrix"));
        }
    }
    Ok(())
}

pub fn sos_doc(p: &FreePoly, squares: &[(Scalar, FreePoly)], harmonic: &FreePoly) -> Value {
    let mut m = header("sos", p);
    let sq: Vec<Value> = squares
        .iter()
        .map(|(c, r)| json!({"weight": scalar_json(c), "square": format_poly(r)}))
        .collect();
    m.insert("squares".into(), Value::Array(sq));
    m.insert("harmonic".into(), json!(format_poly(harmonic)));
    Value::Object(m)
}

pub fn two_var_sos_doc(p: &FreePoly, s: &TwoVarSos) -> Value {
    sos_doc(p, &s.squares, &s.harmonic)
}

fn check_sos(doc: &Value) -> Result<()> {
    let ctx = Context::of(doc)?;
    let p = ctx.poly(str_field(doc, "polynomial")?)?;
    let mut acc = ctx.poly(str_field(doc, "harmonic")?)?;
    if !try_is_ell_harmonic(&acc, 2)? {
        return Err(bad("remainder is not harmonic"));
    }
    for s in array_field(doc, "squares")? {
        let w = scalar_from(field(s, "weight")?)?;
        if !w.is_real() || w.is_negative_real() {
            return Err(bad("negative weight"));
        }
        let r = ctx.poly(str_field(s, "square")?)?;
        if !try_is_ell_harmonic(&r, 2)? {
            return Err(bad(format!("{} is not harmonic", format_poly(&r))));
        }
        acc = acc.checked_add(&r.transpose().checked_mul(&r)?.scale(&w))?;
    }
    if acc != p {
        return Err(bad("squares plus harmonic differ from the polynomial"));
    }
    Ok(())
}

pub fn counterexample_doc(p: &FreePoly, c: &Counterexample) -> Value {
    let mat = |m: &nalgebra::DMatrix<f64>| -> Value {
        Value::Array(
            (0..m.nrows())
                .map(|r| json!((0..m.ncols()).map(|k| m[(r, k)]).collect::<Vec<f64>>()))
                .collect(),
        )
    };
    let mut m = header("counterexample", p);
    m.insert("trial".into(), json!(c.trial));
    m.insert(
        "X".into(),
        Value::Array(c.x.matrices().iter().map(mat).collect()),
    );
    m.insert("H".into(), mat(&c.h));
    m.insert("symmetric".into(), json!(c.x.is_symmetric()));
    m.insert("min_eigenvalue".into(), json!(c.min_eigenvalue));
    Value::Object(m)
}

/// Floating-point replay: the least eigenvalue is recomputed.
fn check_counterexample(doc: &Value) -> Result<()> {
    let ctx = Context::of(doc)?;
    let p = ctx.poly(str_field(doc, "polynomial")?)?;
    let mat = |v: &Value| -> Result<nalgebra::DMatrix<f64>> {
        let rows = v.as_array().ok_or_else(|| bad("matrix expected"))?;
        let n = rows.len();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for (r, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|a| a.len() == n)
                .ok_or_else(|| bad("square matrix expected"))?;
            for (k, x) in row.iter().enumerate() {
                m[(r, k)] = x
                    .as_f64()
                    .ok_or_else(|| bad("matrix entries are numbers"))?;
            }
        }
        Ok(m)
    };
    let xs: Vec<_> = array_field(doc, "X")?
        .iter()
        .map(mat)
        .collect::<Result<_>>()?;
    let symmetric = field(doc, "symmetric")?
        .as_bool()
        .ok_or_else(|| bad("symmetric flag"))?;
    let x = crate::eval::MatrixTuple::new(xs, symmetric)?;
    let h = mat(field(doc, "H")?)?;
    let value = crate::eval::evaluate_with_direction(&laplacian_ell(&p, 2)?, &x, Some(&h))?;
    if min_eigenvalue(&value) >= SAMPLING_TOLERANCE {
        return Err(bad("tuple does not produce a negative eigenvalue"));
    }
    Ok(())
}

fn summands_json(d: &Decomposition) -> Value {
    Value::Array(
        d.summands()
            .iter()
            .map(|s| json!({"sigma": s.sigma.images(), "factors": s.factors.iter().map(format_poly).collect::<Vec<_>>()}))
            .collect(),
    )
}

pub fn decomposition_doc(p: &FreePoly, d: &Decomposition) -> Value {
    let mut m = header("decomposition", p);
    m.insert("ell".into(), json!(d.ell()));
    m.insert("alphabet".into(), json!(d.alphabet()));
    m.insert("degree".into(), json!(d.degree()));
    m.insert("summands".into(), summands_json(d));
    Value::Object(m)
}

pub fn nonsym_decomposition_doc(p: &FreePoly, ell: u32, pieces: &[AlphaPiece]) -> Value {
    let mut m = header("nonsym-decomposition", p);
    m.insert("ell".into(), json!(ell));
    let ps: Vec<Value> = pieces
        .iter()
        .map(|piece| {
            let d = &piece.decomposition;
            json!({"alpha": piece.alpha.to_string(), "alphabet": d.alphabet(), "degree": d.degree(), "summands": summands_json(d)})
        })
        .collect();
    m.insert("pieces".into(), Value::Array(ps));
    Value::Object(m)
}

/// Rebuilds a validated decomposition from `{alphabet, degree, summands}`.
fn decomposition_from(v: &Value, ell: u32) -> Result<Decomposition> {
    let alphabet = usize_field(v, "alphabet")?;
    let degree = usize_field(v, "degree")?;
    let factor_ctx = Context {
        mode: Mode::Symmetric,
        g: alphabet,
    };
    let mut summands = Vec::new();
    for s in array_field(v, "summands")? {
        let images: Vec<usize> = array_field(s, "sigma")?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|k| k as usize)
                    .ok_or_else(|| bad("sigma entries are positions"))
            })
            .collect::<Result<_>>()?;
        let sigma = Permutation::from_images(&images)?;
        let factors = array_field(s, "factors")?
            .iter()
            .map(|f| factor_ctx.poly(f.as_str().ok_or_else(|| bad("factors are polynomials"))?))
            .collect::<Result<Vec<_>>>()?;
        summands.push(Summand { sigma, factors });
    }
    Decomposition::new(ell, alphabet, degree, summands)
}

fn same_up_to_alphabet(a: &FreePoly, b: &FreePoly) -> Result<bool> {
    let g = a.g().max(b.g());
    Ok(a.with_alphabet(g)? == b.with_alphabet(g)?)
}

fn check_decomposition(doc: &Value) -> Result<()> {
    let ctx = Context::of(doc)?;
    let p = ctx.poly(str_field(doc, "polynomial")?)?;
    let ell = usize_field(doc, "ell")? as u32;
    let d = decomposition_from(doc, ell)?;
    if !same_up_to_alphabet(&d.expand()?, &p)? {
        return Err(bad("summands do not re-expand to the polynomial"));
    }
    Ok(())
}

fn check_nonsym_decomposition(doc: &Value) -> Result<()> {
    let ctx = Context::of(doc)?;
    let p = ctx.poly(str_field(doc, "polynomial")?)?;
    let ell = usize_field(doc, "ell")? as u32;
    let mut total = FreePoly::zero(p.g(), Mode::Nonsymmetric);
    for piece in array_field(doc, "pieces")? {
        let alpha: AlphaTuple = str_field(piece, "alpha")?.parse()?;
        let d = decomposition_from(piece, ell)?;
        let e = apply_alpha(&d.expand()?, &alpha)?;
        let g = total.g().max(e.g());
        total = total.with_alphabet(g)?.checked_add(&e.with_alphabet(g)?)?;
    }
    if !same_up_to_alphabet(&total, &p)? {
        return Err(bad("pattern pieces do not re-expand to the polynomial"));
    }
    Ok(())
}

fn kind(doc: &Value) -> Result<&str> {
    str_field(doc, "kind")
}

/// Replays any certificate document: PSD blocks, subharmonic reports,
/// harmonic Gram forms, sums of squares and sampling counterexamples.
pub fn verify_cert(doc: &Value) -> Result<()> {
    match kind(doc)? {
        "psd" => {
            if str_field(doc, "schema")? != SCHEMA {
                return Err(bad("unknown schema"));
            }
            check_psd(doc).map(|_| ())
        }
        "subharmonic" => check_subharmonic(doc),
        "harmonic-gram" => check_harmonic_gram(doc),
        "sos" => check_sos(doc),
        "counterexample" => check_counterexample(doc),
        other => Err(bad(format!("{other:?} is not a certificate kind"))),
    }
}

/// Replays a decomposition document by exact re-expansion; every factor is
/// re-checked for symmetrization, harmonicity and disjoint supports.
pub fn verify_decomp(doc: &Value) -> Result<()> {
    match kind(doc)? {
        "decomposition" => check_decomposition(doc),
        "nonsym-decomposition" => check_nonsym_decomposition(doc),
        "sos" => check_sos(doc),
        other => Err(bad(format!("{other:?} is not a decomposition kind"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::decompose_main;
    use crate::subharmonic::{is_subharmonic, psd_check};
    use crate::text::parse_poly;

    #[test]
    fn rationals_round_trip() {
        let q = BigRational::new(BigInt::from(-3), BigInt::from(4));
        assert_eq!(rational_json(&q), json!([-3, 4]));
        assert_eq!(rational_from(&rational_json(&q)).unwrap(), q);
        let big = BigRational::from_integer(BigInt::from(10).pow(30));
        assert_eq!(rational_from(&rational_json(&big)).unwrap(), big);
        let z = Scalar::complex(Scalar::ratio(1, 2), Scalar::from_int(-1));
        assert_eq!(scalar_from(&scalar_json(&z)).unwrap(), z);
        assert!(rational_from(&json!([1, 0])).is_err());
    }

    #[test]
    fn psd_documents_replay() {
        for m in [
            Matrix::from_ints(2, 2, &[2, 1, 1, 2]),
            Matrix::from_ints(2, 2, &[1, 2, 2, 1]),
        ] {
            let doc = psd_certificate_doc(&m, &psd_check(&m).unwrap());
            verify_cert(&doc).unwrap();
        }
        let m = Matrix::from_ints(2, 2, &[2, 1, 1, 2]);
        let mut doc = psd_certificate_doc(&m, &psd_check(&m).unwrap());
        doc["D"] = json!([[1, 1], [1, 1]]);
        assert!(verify_cert(&doc).is_err());
    }

    #[test]
    fn subharmonic_document_replays() {
        let p = parse_poly("x1^2 + x1^3 + x1 x2 x2 x1", Mode::Symmetric, None).unwrap();
        let doc = subharmonic_doc(&p, &is_subharmonic(&p).unwrap());
        verify_cert(&doc).unwrap();
        let mut forged = doc.clone();
        forged["verdict"] = json!("subharmonic");
        assert!(verify_cert(&forged).is_err());
        let q = parse_poly("x1 x2 x2", Mode::Symmetric, None).unwrap();
        verify_cert(&subharmonic_doc(&q, &is_subharmonic(&q).unwrap())).unwrap();
    }

    #[test]
    fn decomposition_document_replays() {
        let p = parse_poly("x1^2 x3 - x2^2 x3", Mode::Symmetric, None).unwrap();
        let d = decompose_main(&p, 2).unwrap();
        let doc = decomposition_doc(&p, &d);
        verify_decomp(&doc).unwrap();
        let mut forged = doc.clone();
        forged["polynomial"] = json!("x1^2 x3");
        assert!(verify_decomp(&forged).is_err());
        assert!(verify_cert(&doc).is_err());
    }
}
