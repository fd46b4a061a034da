//! Field-data documents in, result documents out.

pub mod load;
pub mod result;
pub mod schema;

pub use load::{
    field_data_to_string, load_field_data, load_field_data_str, parse_field_data,
    validate_field_data, AuxInput, CubicInput, FieldData,
};
pub use result::{document_to_string, write_result, ResultDocument};
pub use schema::{FieldDataFile, SCHEMA_VERSION};

use crate::error::{Error, Result};
use crate::norm::ambient::has_abs_norm;
use crate::norm::solve::reconstruct;
use result::{certify, element_from_data, verify_document, Check};

/// Re-certify the known answers bundled in the document. Every check must
/// pass; the first failure is returned as a validation error.
pub fn verify_field_data(fd: &FieldData) -> Result<ResultDocument> {
    let t = &fd.tower;
    let mut checks = vec![Check {
        name: "field-data".into(),
        passed: true,
        detail: format!(
            "tower validated: N(D_K/M) = {}, N(D_K/L) = {}",
            t.norm_rel_disc_km(),
            t.norm_rel_disc_kl()
        ),
    }];
    let mut certs = Vec::new();
    let Some(expected) = &fd.file.expected else {
        return Ok(verify_document(t, certs, checks));
    };
    for (i, g) in expected.generators.iter().enumerate() {
        let loc = format!("/expected/generators/{i}");
        if g.xs.len() != t.degree() || g.ys.len() != t.degree() || g.den.0 <= 0.into() {
            return Err(Error::validation(
                "element-shape",
                loc,
                format!(
                    "need {} x's, {} y's and a positive denominator",
                    t.degree(),
                    t.degree()
                ),
            ));
        }
        let e = element_from_data(g);
        let c = certify(t, &e).map_err(|err| {
            Error::validation("expected-generator-index", loc.clone(), err.to_string())
        })?;
        if !c.power_basis || c.identities.iter().any(|x| !x) {
            return Err(Error::validation(
                "expected-generator-index",
                loc,
                format!("index is {}, not 1", c.abs_index.0),
            ));
        }
        checks.push(Check {
            name: format!("generator-{i}"),
            passed: true,
            detail: "index 1, product identities hold".into(),
        });
        certs.push(c);
    }
    let eq = fd
        .cubic
        .as_ref()
        .map(|c| &c.equation)
        .or(fd.aux.as_ref().map(|a| &a.equation));
    for (i, s) in expected.thue_solutions.iter().enumerate() {
        let loc = format!("/expected/thue_solutions/{i}");
        let eq = eq.ok_or_else(|| {
            Error::validation(
                "norm-equation-present",
                loc.clone(),
                "no norm equation to check against",
            )
        })?;
        let c = [
            s[0].0.clone(),
            s[1].0.clone(),
            s[2].0.clone(),
            s[3].0.clone(),
        ];
        if !has_abs_norm(&eq.ambient, &reconstruct(eq, &c), &eq.target_norm) {
            return Err(Error::validation(
                "expected-thue-norm",
                loc,
                "tuple does not solve the norm equation",
            ));
        }
        checks.push(Check {
            name: format!("thue-solution-{i}"),
            passed: true,
            detail: "norm matches the target".into(),
        });
    }
    Ok(verify_document(t, certs, checks))
}
