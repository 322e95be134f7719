//! JSON encodings of polytopes, canonical forms and pushforward inputs.
//!
//! Rationals travel as strings `"p/q"`; plain JSON integers are accepted on
//! input. Every parser here bounds its input before doing exact work.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::rat::{format_rat, parse_rat};
use crate::exact::{LinForm, Poly, Rat};
use crate::forms::{CanonicalForm, Pole, RatFunc};
use crate::polytope::Polytope;

pub const MAX_INPUT_BYTES: usize = 1 << 22;
pub const MAX_DIM: usize = 8;
pub const MAX_POINTS: usize = 512;
pub const MAX_TERMS: usize = 4096;
pub const MAX_EXPONENT: u32 = 64;

#[derive(Deserialize)]
#[serde(untagged)]
enum WireRat {
    Str(String),
    Int(i64),
}

impl WireRat {
    fn value(&self, at: &dyn Fn() -> String) -> Result<Rat> {
        match self {
            WireRat::Str(s) => parse_rat(s).map_err(|_| Error::Input(format!("{}: bad rational `{}`", at(), trunc(s)))),
            WireRat::Int(n) => Ok(Rat::from_integer((*n).into())),
        }
    }
}

fn trunc(s: &str) -> String {
    s.chars().take(32).collect()
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(Error::Input(format!("{what}: input exceeds {MAX_INPUT_BYTES} bytes")));
    }
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{what}: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    dim: usize,
    vertices: Option<Vec<Vec<WireRat>>>,
    facets: Option<Vec<FacetFile>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FacetFile {
    c0: WireRat,
    coeffs: Vec<WireRat>,
}

/// A parsed polytope, with the input indices of listed points that are not
/// vertices (interior, non-extreme or repeated points).
#[derive(Clone, Debug)]
pub struct ParsedPolytope {
    pub polytope: Polytope,
    pub dropped: Vec<usize>,
}

/// Reads a V-representation `{"dim", "vertices"}` or an H-representation
/// `{"dim", "facets"}`.
pub fn parse_polytope(text: &str) -> Result<ParsedPolytope> {
    let file: PolytopeFile = parse_json(text, "polytope")?;
    let d = file.dim;
    if d > MAX_DIM {
        return Err(Error::Input(format!("dim: {d} exceeds the limit {MAX_DIM}")));
    }
    match (file.vertices, file.facets) {
        (Some(_), Some(_)) => Err(Error::Input("polytope: give either `vertices` or `facets`, not both".into())),
        (None, None) => Err(Error::Input("polytope: missing `vertices` or `facets`".into())),
        (Some(vs), None) => {
            if vs.len() > MAX_POINTS {
                return Err(Error::Input(format!("vertices: more than {MAX_POINTS} points")));
            }
            let pts = vs
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    if row.len() != d {
                        return Err(Error::Input(format!(
                            "vertices[{i}]: expected {d} coordinates, found {}",
                            row.len()
                        )));
                    }
                    row.iter()
                        .enumerate()
                        .map(|(k, c)| c.value(&|| format!("vertices[{i}][{k}]")))
                        .collect()
                })
                .collect::<Result<Vec<Vec<Rat>>>>()?;
            let polytope = Polytope::from_vertices(d, &pts)?;
            let mut seen = vec![false; polytope.vertices().len()];
            let mut dropped = Vec::new();
            for (i, p) in pts.iter().enumerate() {
                match polytope.vertices().iter().position(|v| v == p) {
                    Some(k) if !seen[k] => seen[k] = true,
                    _ => dropped.push(i),
                }
            }
            Ok(ParsedPolytope { polytope, dropped })
        }
        (None, Some(fs)) => {
            if fs.len() > MAX_POINTS {
                return Err(Error::Input(format!("facets: more than {MAX_POINTS} halfspaces")));
            }
            let forms = fs
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    if f.coeffs.len() != d {
                        return Err(Error::Input(format!(
                            "facets[{i}].coeffs: expected {d} entries, found {}",
                            f.coeffs.len()
                        )));
                    }
                    let c0 = f.c0.value(&|| format!("facets[{i}].c0"))?;
                    let coeffs = f
                        .coeffs
                        .iter()
                        .enumerate()
                        .map(|(k, c)| c.value(&|| format!("facets[{i}].coeffs[{k}]")))
                        .collect::<Result<Vec<_>>>()?;
                    LinForm::new(c0, coeffs).map_err(|_| Error::Input(format!("facets[{i}]: zero form")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ParsedPolytope {
                polytope: Polytope::from_halfspaces(d, &forms)?,
                dropped: Vec::new(),
            })
        }
    }
}

/// Reads the `vertices` of a V-representation as a raw point set, without
/// taking a hull. Used for Minkowski summands, which may be lower-dimensional.
pub fn parse_point_set(text: &str) -> Result<Vec<Vec<Rat>>> {
    let file: PolytopeFile = parse_json(text, "point set")?;
    let d = file.dim;
    if d > MAX_DIM {
        return Err(Error::Input(format!("dim: {d} exceeds the limit {MAX_DIM}")));
    }
    let vs = file
        .vertices
        .ok_or_else(|| Error::Input("point set: missing `vertices`".into()))?;
    if vs.is_empty() || vs.len() > MAX_POINTS {
        return Err(Error::Input(format!("vertices: expected 1 to {MAX_POINTS} points")));
    }
    vs.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != d {
                return Err(Error::Input(format!(
                    "vertices[{i}]: expected {d} coordinates, found {}",
                    row.len()
                )));
            }
            row.iter()
                .enumerate()
                .map(|(k, c)| c.value(&|| format!("vertices[{i}][{k}]")))
                .collect()
        })
        .collect()
}

#[derive(Serialize)]
struct PolytopeOut<'a> {
    dim: usize,
    #[serde(with = "crate::exact::rat::serde_rat::vec2")]
    vertices: &'a [Vec<Rat>],
}

/// V-representation, the canonical output encoding.
pub fn polytope_to_json(p: &Polytope) -> Value {
    serde_json::to_value(PolytopeOut {
        dim: p.dim(),
        vertices: p.vertices(),
    })
    .expect("serializable")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormFile {
    vars: Vec<String>,
    sign: i8,
    numerator: Vec<TermFile>,
    poles: Vec<PoleFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    #[serde(with = "crate::exact::rat::serde_rat")]
    coeff: Rat,
    exp: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoleFile {
    #[serde(with = "crate::exact::rat::serde_rat")]
    c0: Rat,
    #[serde(with = "crate::exact::rat::serde_rat::vec")]
    coeffs: Vec<Rat>,
    mult: u32,
}

pub fn form_to_json(f: &CanonicalForm) -> Value {
    let file = FormFile {
        vars: f.varnames().to_vec(),
        sign: f.sign(),
        numerator: f
            .numerator()
            .terms()
            .map(|(m, c)| TermFile {
                coeff: c.clone(),
                exp: m.exps().to_vec(),
            })
            .collect(),
        poles: f
            .poles()
            .iter()
            .map(|p| PoleFile {
                c0: p.form.c0().clone(),
                coeffs: p.form.coeffs().to_vec(),
                mult: p.mult,
            })
            .collect(),
    };
    serde_json::to_value(file).expect("serializable")
}

/// Reads a canonical form; the result is reduced.
pub fn form_from_json(text: &str) -> Result<CanonicalForm> {
    let file: FormFile = parse_json(text, "form")?;
    let n = file.vars.len();
    if n > MAX_DIM {
        return Err(Error::Input(format!("vars: more than {MAX_DIM} variables")));
    }
    if file.sign != 1 && file.sign != -1 {
        return Err(Error::Input(format!("sign: expected 1 or -1, found {}", file.sign)));
    }
    if file.numerator.len() > MAX_TERMS || file.poles.len() > MAX_TERMS {
        return Err(Error::Input(format!("form: more than {MAX_TERMS} terms or poles")));
    }
    for (i, t) in file.numerator.iter().enumerate() {
        if t.exp.len() != n {
            return Err(Error::Input(format!(
                "numerator[{i}].exp: expected {n} exponents, found {}",
                t.exp.len()
            )));
        }
        if t.exp.iter().any(|&e| e > MAX_EXPONENT) {
            return Err(Error::Input(format!("numerator[{i}].exp: exponent above {MAX_EXPONENT}")));
        }
    }
    let numerator = Poly::from_terms(n, file.numerator.into_iter().map(|t| (t.coeff, t.exp)))?;
    let poles = file
        .poles
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            if p.coeffs.len() != n {
                return Err(Error::Input(format!(
                    "poles[{i}].coeffs: expected {n} entries, found {}",
                    p.coeffs.len()
                )));
            }
            if p.mult == 0 || p.mult > MAX_EXPONENT {
                return Err(Error::Input(format!("poles[{i}].mult: out of range")));
            }
            let form = LinForm::new(p.c0, p.coeffs).map_err(|_| Error::Input(format!("poles[{i}]: zero form")))?;
            Ok(Pole { form, mult: p.mult })
        })
        .collect::<Result<Vec<_>>>()?;
    CanonicalForm::from_parts(file.vars, file.sign, RatFunc::with_poles(numerator, poles)?)
}

/// Input to the pushforward check.
#[derive(Clone, Debug)]
pub struct PushforwardInput {
    pub w: Vec<Vec<Rat>>,
    pub v: Vec<Vec<i64>>,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PushforwardFile {
    #[serde(rename = "W")]
    w: Vec<Vec<WireRat>>,
    #[serde(rename = "V")]
    v: Vec<Vec<i64>>,
    samples: Option<usize>,
    tol: Option<f64>,
}

pub fn parse_pushforward_input(text: &str) -> Result<PushforwardInput> {
    let file: PushforwardFile = parse_json(text, "pushforward input")?;
    if file.w.len() > MAX_POINTS || file.v.len() > MAX_POINTS {
        return Err(Error::Input(format!("W/V: more than {MAX_POINTS} vectors")));
    }
    if file.w.iter().any(|r| r.len() > MAX_DIM + 1)
        || file.v.iter().any(|r| r.len() > MAX_DIM + 1)
    {
        return Err(Error::Input(format!("W/V: vectors longer than {}", MAX_DIM + 1)));
    }
    if file.v.iter().flatten().any(|e| e.unsigned_abs() > MAX_EXPONENT as u64) {
        return Err(Error::Input(format!("V: entries above {MAX_EXPONENT} in absolute value")));
    }
    if let Some(t) = file.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Input("tol: must be a positive number".into()));
        }
    }
    let w = file
        .w
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(k, c)| c.value(&|| format!("W[{i}][{k}]")))
                .collect()
        })
        .collect::<Result<Vec<Vec<Rat>>>>()?;
    Ok(PushforwardInput {
        w,
        v: file.v,
        samples: file.samples,
        tol: file.tol,
    })
}

/// Renders a rational vector as strings.
pub fn rat_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::canon_triangulation;

    const QUAD: &str = r#"{"dim": 2, "vertices": [["0","0"],["2","0"],["1","2"],["0","1"]]}"#;

    #[test]
    fn vrep_and_dropped_points() {
        let p = parse_polytope(QUAD).unwrap();
        assert_eq!(p.polytope.num_facets(), 4);
        assert!(p.dropped.is_empty());
        let q = parse_polytope(r#"{"dim": 2, "vertices": [[0,0],[2,0],["1/2","1/2"],[1,2],[0,1],[0,0]]}"#).unwrap();
        assert_eq!(q.dropped, vec![2, 5]);
    }

    #[test]
    fn hrep_square() {
        let p = parse_polytope(
            r#"{"dim": 2, "facets": [{"c0":"0","coeffs":["1","0"]},{"c0":"0","coeffs":["0","1"]},{"c0":"1","coeffs":["-1","0"]},{"c0":"1","coeffs":["0","-1"]}]}"#,
        )
        .unwrap();
        assert_eq!(p.polytope.vertices().len(), 4);
        let e = parse_polytope(r#"{"dim": 2, "facets": [{"c0":"0","coeffs":["1","0"]},{"c0":"0","coeffs":["0","1"]}]}"#);
        assert_eq!(e.unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn errors_name_fields() {
        let e = parse_polytope(r#"{"dim": 2, "vertices": [["0","0"],["1"]]}"#).unwrap_err();
        assert!(e.to_string().contains("vertices[1]"), "{e}");
        let e = parse_polytope(r#"{"dim": 2, "vertices": [["0","x"]]}"#).unwrap_err();
        assert!(e.to_string().contains("vertices[0][1]"), "{e}");
        assert!(parse_polytope("{").is_err());
    }

    #[test]
    fn form_round_trip() {
        let f = canon_triangulation(&parse_polytope(QUAD).unwrap().polytope).unwrap();
        let a = serde_json::to_string_pretty(&form_to_json(&f)).unwrap();
        let g = form_from_json(&a).unwrap();
        assert!(g.same_as(&f));
        let b = serde_json::to_string_pretty(&form_to_json(&g)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pushforward_input() {
        let i = parse_pushforward_input(r#"{"W": [[1,0],[1,1]], "V": [[1,0],[1,1]], "samples": 3, "tol": 1e-9}"#).unwrap();
        assert_eq!(i.samples, Some(3));
        assert!(parse_pushforward_input(r#"{"W": [], "V": [], "tol": -1}"#).is_err());
    }
}
