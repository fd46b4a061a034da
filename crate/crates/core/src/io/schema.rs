//! Serde mirror of the field-data document. Integers are JSON numbers or,
//! when they do not fit in 64 bits, decimal strings; rationals are
//! `[numerator, denominator]` pairs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Int, E> {
                Err(E::custom(format!(
                    "{v} is not an integer; floats are not accepted"
                )))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.parse::<BigInt>()
                    .map(Int)
                    .map_err(|_| E::custom(format!("{v:?} is not a decimal integer")))
            }
        }
        d.deserialize_any(V)
    }
}

/// A rational in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&Int(self.0.numer().clone()))?;
        seq.serialize_element(&Int(self.0.denom().clone()))?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [n, den] = <[Int; 2]>::deserialize(d)?;
        if den.0.is_zero() || den.0.is_negative() {
            return Err(de::Error::custom("rational denominators must be positive"));
        }
        Ok(Rat(BigRational::new(n.0, den.0)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaChoice {
    Sqrt,
    Half,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `(x_0..x_{ℓ−1}, y_0..y_{ℓ−1})`, the coordinates of `(Σx_iξ^i + ωΣy_iξ^i)`.
    Tower,
    /// Powers of the ambient generator.
    Power,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticFieldData {
    pub radicand: Int,
    pub omega: OmegaChoice,
    pub fundamental_unit: [Int; 2],
    pub unit_norm: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionData {
    pub min_poly: Vec<Int>,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Discriminants {
    #[serde(rename = "D_M")]
    pub d_m: Int,
    #[serde(rename = "D_L")]
    pub d_l: Int,
    #[serde(rename = "D_K")]
    pub d_k: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormEquationData {
    pub target_norm: Int,
    pub exponent_bound: u32,
    pub basis: Basis,
    /// Tower coordinates of the ambient generator; only with `"power"` in
    /// the top-level equation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Rat>>,
    pub representatives: Vec<Vec<Rat>>,
    pub units: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuxFieldData {
    pub min_poly: Vec<Int>,
    pub omega_coords: Vec<Rat>,
    pub rho_coords: Vec<Rat>,
    pub norm_equation: NormEquationData,
}

/// The element `(Σ xs_i ξ^i + ω Σ ys_i ξ^i)/den`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementData {
    pub xs: Vec<Int>,
    pub ys: Vec<Int>,
    pub den: Int,
}

/// Known answers that `verify` certifies without re-solving.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedData {
    pub generators: Vec<ElementData>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub thue_solutions: Vec<[Int; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDataFile {
    pub schema_version: u32,
    pub quadratic_field: QuadraticFieldData,
    pub extension: ExtensionData,
    pub denominator: Int,
    pub discriminants: Discriminants,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_equation: Option<NormEquationData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux_field: Option<AuxFieldData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedData>,
}
