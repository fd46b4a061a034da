//! Parsing and full validation of field-data documents.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::schema::{
    Basis, FieldDataFile, Int, NormEquationData, OmegaChoice, Rat, SCHEMA_VERSION,
};
use crate::cubic::{build_cubic_thue, cubic_pattern, TowerAmbient};
use crate::error::{Error, Result};
use crate::norm::{AmbientElem, NormEquation};
use crate::number::OmegaKind;
use crate::quartic::{quartic_forms, quartic_target, AuxField};
use crate::tower::{validate_tower, TowerData, TowerSpec};

/// The cubic relative Thue equation as a norm equation in `K`.
#[derive(Clone, Debug)]
pub struct CubicInput {
    pub ambient: TowerAmbient,
    pub equation: NormEquation,
}

/// The quartic pipeline's norm equation in the sextic field `H`.
#[derive(Clone, Debug)]
pub struct AuxInput {
    pub field: AuxField,
    pub equation: NormEquation,
}

/// A field-data document that passed every validation rule.
#[derive(Clone, Debug)]
pub struct FieldData {
    pub file: FieldDataFile,
    pub tower: TowerSpec,
    pub cubic: Option<CubicInput>,
    pub aux: Option<AuxInput>,
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    let s = path.to_string();
    if s == "." {
        return "/".into();
    }
    let mut out = String::new();
    for seg in s.split('.') {
        for part in seg.split('[') {
            out.push('/');
            out.push_str(part.trim_end_matches(']'));
        }
    }
    out
}

/// Parse without semantic validation.
pub fn parse_field_data(text: &str) -> Result<FieldDataFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let location = pointer(e.path());
        let inner = e.into_inner();
        match inner.classify() {
            serde_json::error::Category::Syntax | serde_json::error::Category::Eof => {
                Error::Syntax(inner.to_string())
            }
            _ => Error::Schema {
                location,
                detail: inner.to_string(),
            },
        }
    })
}

fn ints(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|i| i.0.clone()).collect()
}

pub(crate) fn rats(v: &[Rat]) -> Vec<BigRational> {
    v.iter().map(|r| r.0.clone()).collect()
}

pub fn tower_data(file: &FieldDataFile) -> TowerData {
    let q = &file.quadratic_field;
    TowerData {
        radicand: q.radicand.0.clone(),
        omega: match q.omega {
            OmegaChoice::Sqrt => OmegaKind::Sqrt,
            OmegaChoice::Half => OmegaKind::Half,
        },
        unit: (
            q.fundamental_unit[0].0.clone(),
            q.fundamental_unit[1].0.clone(),
        ),
        unit_norm: q.unit_norm,
        min_poly: ints(&file.extension.min_poly),
        den: file.denominator.0.clone(),
        disc_m: file.discriminants.d_m.0.clone(),
        disc_l: file.discriminants.d_l.0.clone(),
        disc_k: file.discriminants.d_k.0.clone(),
    }
}

fn check_target(
    eq: &NormEquationData,
    expected: &BigInt,
    location: &str,
    what: &str,
) -> Result<()> {
    if eq.target_norm.0.is_zero() {
        return Err(Error::validation(
            "target-norm-nonzero",
            format!("{location}/target_norm"),
            "target norm must be nonzero",
        ));
    }
    if eq.target_norm.0.abs() != *expected {
        return Err(Error::validation(
            "target-norm-matches",
            format!("{location}/target_norm"),
            format!(
                "target norm {} differs from ±{what} = ±{expected}",
                eq.target_norm.0
            ),
        ));
    }
    Ok(())
}

fn cubic_input(t: &TowerSpec, eq: &NormEquationData) -> Result<CubicInput> {
    let loc = "/norm_equation";
    let setup = build_cubic_thue(t)?;
    check_target(eq, &setup.m0, loc, "m0")?;
    let ambient = match &eq.generator {
        Some(g) => {
            if g.len() != 2 * t.degree() {
                return Err(Error::validation(
                    "vector-length",
                    format!("{loc}/generator"),
                    format!("expected {} tower coordinates", 2 * t.degree()),
                ));
            }
            let g = rats(g);
            let ell = t.degree();
            let theta = (0..ell)
                .map(|k| crate::number::QuadraticElement::new(g[k].clone(), g[ell + k].clone()))
                .collect();
            TowerAmbient::with_generator(t, theta)?
        }
        None if eq.basis == Basis::Power => {
            return Err(Error::validation(
                "power-basis-generator",
                format!("{loc}/generator"),
                "a power basis needs the generator it refers to",
            ))
        }
        None => TowerAmbient::new(t)?,
    };
    let convert = |vs: &[Vec<Rat>], key: &str| -> Result<Vec<AmbientElem>> {
        vs.iter()
            .enumerate()
            .map(|(i, v)| {
                let v = rats(v);
                match eq.basis {
                    Basis::Power => Ok(v),
                    Basis::Tower => ambient.to_power(&v, &format!("{loc}/{key}/{i}")),
                }
            })
            .collect()
    };
    let reps = convert(&eq.representatives, "representatives")?;
    let units = convert(&eq.units, "units")?;
    let pattern = cubic_pattern(t, &ambient, &setup);
    let equation = NormEquation::new(
        ambient.field.clone(),
        reps,
        units,
        eq.target_norm.0.clone(),
        eq.exponent_bound,
        pattern,
        loc,
    )?;
    Ok(CubicInput { ambient, equation })
}

fn aux_input(t: &TowerSpec, aux: &super::schema::AuxFieldData) -> Result<AuxInput> {
    let loc = "/aux_field/norm_equation";
    let forms = quartic_forms(t)?;
    let field = AuxField::new(
        t,
        &forms,
        ints(&aux.min_poly),
        rats(&aux.omega_coords),
        rats(&aux.rho_coords),
    )?;
    let eq = &aux.norm_equation;
    if eq.basis != Basis::Power || eq.generator.is_some() {
        return Err(Error::validation(
            "aux-basis-power",
            format!("{loc}/basis"),
            "the auxiliary equation is given in the power basis of the auxiliary field",
        ));
    }
    check_target(eq, &quartic_target(t, &forms)?, loc, "d^12/i0")?;
    let equation = NormEquation::new(
        field.field.clone(),
        eq.representatives.iter().map(|v| rats(v)).collect(),
        eq.units.iter().map(|v| rats(v)).collect(),
        eq.target_norm.0.clone(),
        eq.exponent_bound,
        field.pattern(),
        loc,
    )?;
    Ok(AuxInput { field, equation })
}

/// Apply every validation rule; the first failure is reported.
pub fn validate_field_data(file: FieldDataFile) -> Result<FieldData> {
    if file.schema_version != SCHEMA_VERSION {
        return Err(Error::validation(
            "schema-version",
            "/schema_version",
            format!(
                "unsupported schema version {}, expected {SCHEMA_VERSION}",
                file.schema_version
            ),
        ));
    }
    let tower = validate_tower(&tower_data(&file))?;
    if file.extension.degree != tower.degree() {
        return Err(Error::validation(
            "extension-degree-declared",
            "/extension/degree",
            format!(
                "declared degree {} but the minimal polynomial has degree {}",
                file.extension.degree,
                tower.degree()
            ),
        ));
    }
    let (mut cubic, mut aux) = (None, None);
    if tower.degree() == 3 {
        if file.aux_field.is_some() {
            return Err(Error::validation(
                "aux-field-quartic-only",
                "/aux_field",
                "an auxiliary field only applies to quartic extensions",
            ));
        }
        let eq = file.norm_equation.as_ref().ok_or_else(|| {
            Error::validation(
                "norm-equation-present",
                "/norm_equation",
                "a cubic extension needs its norm equation data",
            )
        })?;
        cubic = Some(cubic_input(&tower, eq)?);
    } else {
        if file.norm_equation.is_some() {
            return Err(Error::validation(
                "norm-equation-cubic-only",
                "/norm_equation",
                "quartic extensions carry their equation inside aux_field",
            ));
        }
        if let Some(a) = &file.aux_field {
            aux = Some(aux_input(&tower, a)?);
        }
    }
    Ok(FieldData {
        file,
        tower,
        cubic,
        aux,
    })
}

pub fn load_field_data_str(text: &str) -> Result<FieldData> {
    validate_field_data(parse_field_data(text)?)
}

pub fn load_field_data(path: &Path) -> Result<FieldData> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_field_data_str(&text)
}

/// Canonical serialization: sorted keys, two-space indentation, final newline.
pub fn field_data_to_string(file: &FieldDataFile) -> String {
    let v = serde_json::to_value(file).expect("field data serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}
