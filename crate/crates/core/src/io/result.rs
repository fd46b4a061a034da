//! Result documents. Serialization goes through `serde_json::Value`, whose
//! maps are ordered, so keys come out sorted and output is byte-stable.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::schema::{ElementData, Int, Rat, SCHEMA_VERSION};
use crate::cubic::CubicRun;
use crate::endgame::EndgameOutput;
use crate::error::{Error, Result};
use crate::norm::PatternSolution;
use crate::number::{OmegaKind, QuadraticElement};
use crate::quartic::QuarticRun;
use crate::tower::{relative_indices, CompositeElement, TowerSpec};

#[derive(Clone, Debug, Serialize)]
pub struct TowerSummary {
    pub radicand: Int,
    pub omega: &'static str,
    pub min_poly: Vec<Int>,
    pub degree: usize,
    pub denominator: Int,
    #[serde(rename = "D_M")]
    pub d_m: Int,
    #[serde(rename = "D_L")]
    pub d_l: Int,
    #[serde(rename = "D_K")]
    pub d_k: Int,
    pub norm_disc_k_over_m: Int,
    pub norm_disc_k_over_l: Int,
    pub disc_l_m: Int,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionData {
    pub c: [Int; 4],
    pub representative: usize,
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThueStage {
    pub target_norm: Int,
    pub exponent_bound: u32,
    pub solutions: Vec<SolutionData>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateData {
    pub uv: [Int; 4],
    pub sign: i32,
    pub r0: u32,
    /// `X_{i0}` as `[rational part, ω part]`.
    pub x: Vec<[Rat; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuarticStage {
    pub lambda: Rat,
    pub i0: Int,
    pub target: Int,
    pub candidates: Vec<CandidateData>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchData {
    pub x0: Vec<[Rat; 2]>,
    pub sigma: i32,
    pub s2: i32,
    pub s3: i32,
    /// `[deg_e, deg_y0]`.
    pub f2_degrees: [usize; 2],
    pub f3_degrees: [usize; 2],
    pub f4_degree: Option<usize>,
    pub y0_roots: Vec<Int>,
    pub h_values: Vec<i64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Stages {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m0: Option<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thue: Option<ThueStage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quartic: Option<QuarticStage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endgame: Option<Vec<BranchData>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub element: ElementData,
    pub abs_index: Int,
    pub rel_index_k_over_m: Int,
    pub rel_index_k_over_l: Int,
    pub co_index_m: Rat,
    pub co_index_l: Rat,
    pub mixed_l_m: Rat,
    /// The three product identities between the indices.
    pub identities: [bool; 3],
    pub power_basis: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Completeness {
    pub exponent_bound: Option<u32>,
    pub caveat: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub command: String,
    pub tower: TowerSummary,
    pub stages: Stages,
    pub generators: Vec<ElementData>,
    pub certification: Vec<Certificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    pub completeness: Completeness,
}

fn int(x: &BigInt) -> Int {
    Int(x.clone())
}

fn rat(x: &BigRational) -> Rat {
    Rat(x.clone())
}

fn m_pair(x: &QuadraticElement) -> [Rat; 2] {
    [rat(&x.a), rat(&x.b)]
}

pub fn element_data(e: &CompositeElement) -> ElementData {
    ElementData {
        xs: e.xs.iter().map(int).collect(),
        ys: e.ys.iter().map(int).collect(),
        den: int(&e.den),
    }
}

pub fn element_from_data(e: &ElementData) -> CompositeElement {
    CompositeElement::new(
        e.xs.iter().map(|i| i.0.clone()).collect(),
        e.ys.iter().map(|i| i.0.clone()).collect(),
        e.den.0.clone(),
    )
}

pub fn tower_summary(t: &TowerSpec) -> TowerSummary {
    TowerSummary {
        radicand: int(t.field().radicand()),
        omega: match t.field().kind() {
            OmegaKind::Sqrt => "sqrt",
            OmegaKind::Half => "half",
        },
        min_poly: t.min_poly_ints().iter().map(int).collect(),
        degree: t.degree(),
        denominator: int(t.den()),
        d_m: int(t.disc_m()),
        d_l: int(t.disc_l()),
        d_k: int(t.disc_k()),
        norm_disc_k_over_m: int(t.norm_rel_disc_km()),
        norm_disc_k_over_l: int(t.norm_rel_disc_kl()),
        disc_l_m: int(t.disc_lm()),
    }
}

pub fn certify(t: &TowerSpec, e: &CompositeElement) -> Result<Certificate> {
    let r = relative_indices(e, t)?;
    Ok(Certificate {
        element: element_data(e),
        abs_index: int(&r.abs_index),
        rel_index_k_over_m: int(&r.rel_index_km),
        rel_index_k_over_l: int(&r.rel_index_kl),
        co_index_m: rat(&r.co_index_jm),
        co_index_l: rat(&r.co_index_jl),
        mixed_l_m: rat(&r.mixed_jlm),
        identities: r.identities(),
        power_basis: r.is_power_basis(),
    })
}

fn solutions(sols: &[PatternSolution]) -> Vec<SolutionData> {
    sols.iter()
        .map(|s| SolutionData {
            c: [int(&s.c[0]), int(&s.c[1]), int(&s.c[2]), int(&s.c[3])],
            representative: s.representative,
            exponents: s.exponents.clone(),
        })
        .collect()
}

fn branches(out: &EndgameOutput) -> Vec<BranchData> {
    out.branches
        .iter()
        .map(|b| BranchData {
            x0: b.x0.iter().map(m_pair).collect(),
            sigma: b.sigma,
            s2: b.s2,
            s3: b.s3,
            f2_degrees: [b.f2_degrees.0, b.f2_degrees.1],
            f3_degrees: [b.f3_degrees.0, b.f3_degrees.1],
            f4_degree: b.f4_degree,
            y0_roots: b.y0_roots.iter().map(int).collect(),
            h_values: b.h_values.clone(),
        })
        .collect()
}

pub fn search_caveat(bound: u32) -> Completeness {
    Completeness {
        exponent_bound: Some(bound),
        caveat: format!(
            "complete only for solutions whose unit exponents satisfy max |a_i| <= A = {bound}; \
             A is an input and is not certified by this computation"
        ),
    }
}

fn no_search() -> Completeness {
    Completeness {
        exponent_bound: None,
        caveat: "no search was performed; nothing is claimed about other elements".into(),
    }
}

fn generator_part(
    t: &TowerSpec,
    gens: &[CompositeElement],
) -> Result<(Vec<ElementData>, Vec<Certificate>)> {
    let certs = gens
        .iter()
        .map(|g| certify(t, g))
        .collect::<Result<Vec<_>>>()?;
    Ok((gens.iter().map(element_data).collect(), certs))
}

pub fn cubic_document(
    t: &TowerSpec,
    run: &CubicRun,
    target: &BigInt,
    bound: u32,
) -> Result<ResultDocument> {
    let (generators, certification) = generator_part(t, &run.endgame.generators)?;
    Ok(ResultDocument {
        schema_version: SCHEMA_VERSION,
        command: "cubic".into(),
        tower: tower_summary(t),
        stages: Stages {
            m0: Some(int(&run.setup.m0)),
            thue: Some(ThueStage {
                target_norm: int(target),
                exponent_bound: bound,
                solutions: solutions(&run.solutions),
            }),
            quartic: None,
            endgame: Some(branches(&run.endgame)),
        },
        generators,
        certification,
        checks: Vec::new(),
        completeness: search_caveat(bound),
    })
}

pub fn quartic_document(
    t: &TowerSpec,
    run: &QuarticRun,
    target: &BigInt,
    bound: u32,
) -> Result<ResultDocument> {
    let (generators, certification) = generator_part(t, &run.endgame.generators)?;
    let s = &run.setup;
    let candidates = run
        .candidates
        .iter()
        .map(|c| CandidateData {
            uv: [int(&c.uv[0]), int(&c.uv[1]), int(&c.uv[2]), int(&c.uv[3])],
            sign: c.sign,
            r0: c.r0,
            x: c.x.iter().map(m_pair).collect(),
        })
        .collect();
    Ok(ResultDocument {
        schema_version: SCHEMA_VERSION,
        command: "quartic-tc".into(),
        tower: tower_summary(t),
        stages: Stages {
            m0: None,
            thue: Some(ThueStage {
                target_norm: int(target),
                exponent_bound: bound,
                solutions: solutions(&run.solutions),
            }),
            quartic: Some(QuarticStage {
                lambda: rat(&s.lambda),
                i0: int(&s.forms.i0),
                target: int(&s.target),
                candidates,
            }),
            endgame: Some(branches(&run.endgame)),
        },
        generators,
        certification,
        checks: Vec::new(),
        completeness: search_caveat(bound),
    })
}

pub fn index_document(t: &TowerSpec, e: &CompositeElement) -> Result<ResultDocument> {
    let (generators, certification) = generator_part(t, std::slice::from_ref(e))?;
    Ok(ResultDocument {
        schema_version: SCHEMA_VERSION,
        command: "index".into(),
        tower: tower_summary(t),
        stages: Stages::default(),
        generators,
        certification,
        checks: Vec::new(),
        completeness: no_search(),
    })
}

pub fn verify_document(
    t: &TowerSpec,
    certification: Vec<Certificate>,
    checks: Vec<Check>,
) -> ResultDocument {
    ResultDocument {
        schema_version: SCHEMA_VERSION,
        command: "verify".into(),
        tower: tower_summary(t),
        stages: Stages::default(),
        generators: certification.iter().map(|c| c.element.clone()).collect(),
        certification,
        checks,
        completeness: no_search(),
    }
}

pub fn document_to_string(doc: &ResultDocument) -> String {
    let v = serde_json::to_value(doc).expect("result document serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

/// Write to `path`, or to stdout when `None`.
pub fn write_result(doc: &ResultDocument, path: Option<&Path>) -> Result<()> {
    let s = document_to_string(doc);
    match path {
        Some(p) => std::fs::write(p, s).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(s.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
