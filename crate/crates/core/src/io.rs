//! JSON documents for elements, tables, χ inputs and reports.
//!
//! Coefficients are written as exact fraction text (`"3"`, `"-1/2"`).
//! Terms follow the canonical monomial order, so serializing a parsed
//! document reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::detcalc::UXElem;
use crate::error::{Error, Result};
use crate::pbw::{Element, LoopGen, Monomial};
use crate::pyramid::{GenId, Pyramid};
use crate::scalar::Scalar;
use crate::shift::{AChiGen, Chi};
use crate::suga::SugaTable;
use crate::verify::{Case, Report};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenJson {
    pub i: usize,
    pub j: usize,
    pub r: i32,
    pub depth: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: String,
    pub monomial: Vec<GenJson>,
}

pub type ElementJson = Vec<TermJson>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UXTermJson {
    pub u: u32,
    pub x: u32,
    pub element: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorJson {
    pub k: usize,
    pub r: i32,
    pub selected: bool,
    pub element: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub pyramid: String,
    pub vectors: Vec<VectorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseJson {
    pub generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i32>,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difference: Option<ElementJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub check: String,
    pub pyramid: String,
    pub cases: Vec<CaseJson>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AChiGenJson {
    pub k: usize,
    pub r: i32,
    pub m: usize,
    pub element: ElementJson,
}

fn json_err(e: impl std::fmt::Display) -> Error {
    Error::Json(e.to_string())
}

pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S> {
    text.trim().parse::<S>().map_err(|_| Error::Parse {
        pos: 1,
        msg: format!("expected an exact fraction p/q, found {text:?}"),
    })
}

pub fn element_to_json<S: Scalar>(e: &Element<S>) -> ElementJson {
    e.terms()
        .map(|(m, c)| TermJson {
            coeff: c.to_string(),
            monomial: m
                .gens()
                .iter()
                .map(|g| GenJson {
                    i: g.gen.i,
                    j: g.gen.j,
                    r: g.gen.r,
                    depth: g.depth,
                })
                .collect(),
        })
        .collect()
}

/// Rejects unsorted monomials and duplicate terms so that the document is
/// in canonical form.
pub fn element_from_json<S: Scalar>(doc: &ElementJson) -> Result<Element<S>> {
    let mut out = Element::zero();
    let mut prev: Option<Monomial> = None;
    for (idx, term) in doc.iter().enumerate() {
        let gens: Vec<LoopGen> = term
            .monomial
            .iter()
            .map(|g| LoopGen::new(GenId::new(g.i, g.j, g.r), g.depth))
            .collect();
        let m = Monomial::from_sorted(gens)
            .ok_or_else(|| Error::Json(format!("term {idx}: monomial is not in PBW order")))?;
        if prev.as_ref().is_some_and(|p| *p >= m) {
            return Err(Error::Json(format!(
                "term {idx}: terms are not in canonical order"
            )));
        }
        let c: S = parse_scalar(&term.coeff)?;
        if c.is_zero() {
            return Err(Error::Json(format!("term {idx}: zero coefficient")));
        }
        prev = Some(m.clone());
        out.add_term(m, c);
    }
    Ok(out)
}

pub fn uxelem_to_json<S: Scalar>(v: &UXElem<S>) -> Vec<UXTermJson> {
    v.iter()
        .map(|(&(u, x), e)| UXTermJson {
            u,
            x,
            element: element_to_json(e),
        })
        .collect()
}

pub fn uxelem_from_json<S: Scalar>(doc: &[UXTermJson]) -> Result<UXElem<S>> {
    let mut out = UXElem::zero();
    for t in doc {
        out.add(t.u, t.x, &element_from_json(&t.element)?, &S::one());
    }
    Ok(out)
}

pub fn table_to_json<S: Scalar>(t: &SugaTable<S>) -> TableJson {
    TableJson {
        pyramid: t.pyramid.to_string(),
        vectors: t
            .indices()
            .into_iter()
            .map(|(k, r)| VectorJson {
                k,
                r,
                selected: t.is_selected(k, r),
                element: element_to_json(&t.get(k, r)),
            })
            .collect(),
    }
}

pub fn report_to_json<S: Scalar>(rep: &Report<S>) -> ReportJson {
    ReportJson {
        check: rep.check.clone(),
        pyramid: rep.pyramid.clone(),
        cases: rep.cases.iter().map(case_to_json).collect(),
        seed: rep.seed,
    }
}

fn case_to_json<S: Scalar>(c: &Case<S>) -> CaseJson {
    CaseJson {
        generator: c.generator.clone(),
        s: c.s,
        k: c.k,
        r: c.r,
        status: c.status.as_str().to_string(),
        difference: c.difference.as_ref().map(element_to_json),
    }
}

pub fn a_chi_to_json<S: Scalar>(gens: &[AChiGen<S>]) -> Vec<AChiGenJson> {
    gens.iter()
        .map(|g| AChiGenJson {
            k: g.k,
            r: g.r,
            m: g.m,
            element: element_to_json(&g.element),
        })
        .collect()
}

/// Parses `{"E[i,j,r]": "p/q", …}`; integer JSON numbers are accepted too.
pub fn parse_chi<S: Scalar>(p: &Pyramid, text: &str) -> Result<Chi<S>> {
    let doc: BTreeMap<String, Value> = serde_json::from_str(text).map_err(json_err)?;
    let mut values = BTreeMap::new();
    for (key, v) in doc {
        let g: GenId = key.parse()?;
        let c: S = match &v {
            Value::String(s) => parse_scalar(s)?,
            Value::Number(n) if n.is_i64() => S::from_i64(n.as_i64().expect("checked")),
            other => {
                return Err(Error::Json(format!(
                    "value for {key} must be a fraction string, found {other}"
                )))
            }
        };
        values.insert(g, c);
    }
    Chi::new(p, values)
}

pub fn chi_to_json<S: Scalar>(chi: &Chi<S>) -> BTreeMap<String, String> {
    chi.iter()
        .map(|(g, v)| (g.to_string(), v.to_string()))
        .collect()
}

pub fn to_pretty<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents are plain data")
}

pub fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(json_err)
}
