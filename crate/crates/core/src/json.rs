//! JSON interchange for Laurent polynomial supports and lattice polytopes.
//!
//! Coefficients travel as decimal strings (`"3"`, `"-2"`, or `"p/q"`) so the
//! format stays lossless across languages. Polytopes are either explicit
//! vertex lists `{"dim": n, "vertices": [[..], ..]}` or family constructors
//! `{"family": "prism" | "truncated_prism" | "pyramid", ...}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygon::MonomialSupport;
use crate::polytope::LatticePolytope;

/// Renders a rational as `"p"` or `"p/q"`.
pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"` with arbitrary-precision integers.
pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("cannot parse rational {s:?}"));
    let mut parts = s.trim().splitn(2, '/');
    let numer: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let denom: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}

#[derive(Debug, Serialize, Deserialize)]
struct LaurentTermJson {
    exp: Vec<i64>,
    coeff: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct LaurentJson {
    terms: Vec<LaurentTermJson>,
}

pub fn laurent_to_json(f: &MonomialSupport) -> serde_json::Value {
    let doc = LaurentJson {
        terms: f
            .terms
            .iter()
            .map(|(exp, coeff)| LaurentTermJson {
                exp: exp.clone(),
                coeff: rational_to_string(coeff),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("laurent serialization is infallible")
}

pub fn laurent_from_str(s: &str) -> Result<MonomialSupport> {
    let doc: LaurentJson =
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad Laurent JSON: {e}")))?;
    if doc.terms.is_empty() {
        return Err(Error::InvalidInput("Laurent JSON has no terms".into()));
    }
    let n = doc.terms[0].exp.len();
    let terms = doc
        .terms
        .into_iter()
        .map(|t| {
            if t.exp.len() != n {
                return Err(Error::InvalidInput(
                    "inconsistent exponent lengths in Laurent JSON".into(),
                ));
            }
            Ok((t.exp, rational_from_str(&t.coeff)?))
        })
        .collect::<Result<Vec<_>>>()?;
    MonomialSupport::new(n, terms)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum PolytopeJson {
    Family {
        family: String,
        sides: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        corner: Option<Vec<i64>>,
    },
    Vertices {
        dim: usize,
        vertices: Vec<Vec<i64>>,
    },
}

pub fn polytope_from_str(s: &str) -> Result<LatticePolytope> {
    let doc: PolytopeJson = serde_json::from_str(s)
        .map_err(|e| Error::InvalidInput(format!("bad polytope JSON: {e}")))?;
    match doc {
        PolytopeJson::Vertices { dim, vertices } => {
            if vertices.iter().any(|v| v.len() != dim) {
                return Err(Error::InvalidInput(
                    "vertex length disagrees with declared dimension".into(),
                ));
            }
            LatticePolytope::convex_hull(&vertices)
        }
        PolytopeJson::Family {
            family,
            sides,
            corner,
        } => match family.as_str() {
            "prism" => LatticePolytope::prism(&sides),
            "truncated_prism" => {
                let corner = corner.ok_or_else(|| {
                    Error::InvalidInput("truncated_prism needs a \"corner\" field".into())
                })?;
                LatticePolytope::truncated_prism(&sides, &corner)
            }
            "pyramid" => match sides[..] {
                [a, b, c] => LatticePolytope::pyramid(a, b, c),
                _ => Err(Error::InvalidInput(
                    "pyramid needs exactly three side lengths".into(),
                )),
            },
            other => Err(Error::InvalidInput(format!("unknown family {other:?}"))),
        },
    }
}

pub fn polytope_to_json(p: &LatticePolytope) -> serde_json::Value {
    serde_json::to_value(PolytopeJson::Vertices {
        dim: p.dim(),
        vertices: p.vertices().to_vec(),
    })
    .expect("polytope serialization is infallible")
}
