//! Class-group data: the groups `H(Z[ζ_p])`, `H(Z[ζ_{p²}])` with their Galois
//! actions, plus optional extra unit generators for the `U_m` quotients.
//!
//! Nothing here is computed from field arithmetic. Built-in data covers the
//! primes whose class numbers are 1; anything else comes from a JSON file:
//!
//! ```json
//! {"p": 7,
//!  "H_p":  {"invariant_factors": [], "generator_residue": 3, "generator_matrix": []},
//!  "H_p2": {"invariant_factors": [43], "generator_residue": 3, "generator_matrix": [[3]]},
//!  "extra_R_unit_gens": [], "extra_ES_unit_gens": [],
//!  "provenance": "synthetic"}
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::abelian::{AbGroup, CyclicAction};
use crate::arith;
use crate::error::{Error, Result};
use crate::modring::{ExtraUnits, PolyMod};

/// File looked up by [`builtin`] for `p = 7`.
pub const P7_DATA_FILE: &str = "classdata_p7.json";

/// Environment variable overriding the directory searched for shipped data.
pub const DATA_DIR_ENV: &str = "CP2GENUS_DATA_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub p: u32,
    /// `G(p)` acting on `H(Z[ζ_p])`.
    pub h_p: CyclicAction,
    /// `G(p²)` acting on `H(Z[ζ_{p²}])`.
    pub h_p2: CyclicAction,
    pub extra_units: ExtraUnits,
    pub provenance: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawAction {
    invariant_factors: Vec<u64>,
    generator_residue: u64,
    generator_matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawClassData {
    p: u32,
    #[serde(rename = "H_p")]
    h_p: RawAction,
    #[serde(rename = "H_p2")]
    h_p2: RawAction,
    #[serde(default, rename = "extra_R_unit_gens")]
    extra_r: Vec<Vec<i64>>,
    #[serde(default, rename = "extra_ES_unit_gens")]
    extra_es: Vec<Vec<i64>>,
    #[serde(default)]
    provenance: String,
}

fn invalid(path: &str, msg: impl ToString) -> Error {
    Error::InvalidClassData {
        path: path.to_string(),
        msg: msg.to_string(),
    }
}

fn build_action(raw: RawAction, modulus: u64, field: &str) -> Result<CyclicAction> {
    let group = AbGroup::new(raw.invariant_factors)
        .map_err(|e| invalid(&format!("{field}.invariant_factors"), e))?;
    CyclicAction::new(group, modulus, raw.generator_residue, raw.generator_matrix)
        .map_err(|e| invalid(&format!("{field}.generator_matrix"), e))
}

fn build_units(p: u32, raw: &[Vec<i64>], m: usize, field: &str) -> Result<Vec<PolyMod>> {
    raw.iter()
        .enumerate()
        .map(|(i, c)| {
            let u = PolyMod::from_coeffs(p, m, c);
            if !u.is_unit() {
                return Err(invalid(&format!("{field}[{i}]"), "generator is not a unit"));
            }
            Ok(u)
        })
        .collect()
}

impl ClassData {
    /// Both class groups trivial; used for `p ∈ {2, 3, 5}`.
    pub fn trivial(p: u32) -> Result<Self> {
        check_prime(p)?;
        let p64 = p as u64;
        Ok(ClassData {
            p,
            h_p: CyclicAction::trivial(p64),
            h_p2: CyclicAction::trivial(p64 * p64),
            extra_units: ExtraUnits::default(),
            provenance: "class number 1 for Q(zeta_p) and Q(zeta_p^2)".into(),
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawClassData = serde_json::from_str(text)?;
        check_prime(raw.p).map_err(|e| invalid("p", e))?;
        let p = raw.p;
        let p64 = p as u64;
        let h_p = build_action(raw.h_p, p64, "H_p")?;
        let h_p2 = build_action(raw.h_p2, p64 * p64, "H_p2")?;
        if h_p.acting_order() != p64 - 1 {
            return Err(invalid("H_p", "acting order must be p-1"));
        }
        if h_p2.acting_order() != p64 * (p64 - 1) {
            return Err(invalid("H_p2", "acting order must be p(p-1)"));
        }
        let r_len = (p as usize).saturating_sub(1).max(1);
        let extra_units = ExtraUnits {
            r: build_units(p, &raw.extra_r, r_len, "extra_R_unit_gens")?,
            es: build_units(p, &raw.extra_es, p as usize, "extra_ES_unit_gens")?,
        };
        Ok(ClassData {
            p,
            h_p,
            h_p2,
            extra_units,
            provenance: raw.provenance,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let action = |a: &CyclicAction| RawAction {
            invariant_factors: a.target().invariant_factors().to_vec(),
            generator_residue: a.generator_residue(),
            generator_matrix: a.generator_matrix().to_vec(),
        };
        let units = |v: &[PolyMod]| -> Vec<Vec<i64>> {
            v.iter()
                .map(|u| u.coeffs().iter().map(|&c| c as i64).collect())
                .collect()
        };
        serde_json::to_value(RawClassData {
            p: self.p,
            h_p: action(&self.h_p),
            h_p2: action(&self.h_p2),
            extra_r: units(&self.extra_units.r),
            extra_es: units(&self.extra_units.es),
            provenance: self.provenance.clone(),
        })
        .expect("class data serializes")
    }

    /// `h_1 = |H(Z[ζ_p])|`.
    pub fn h1(&self) -> u128 {
        self.h_p.target().order()
    }

    /// `h_2 = |H(Z[ζ_{p²}])|`.
    pub fn h2(&self) -> u128 {
        self.h_p2.target().order()
    }
}

fn check_prime(p: u32) -> Result<()> {
    if !arith::is_prime(p as u64) {
        return Err(Error::OutOfRange(format!("{p} is not prime")));
    }
    Ok(())
}

fn data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data")))
}

/// Built-in class data for `p ∈ {2, 3, 5, 7}`.
///
/// For `p = 7`, `H(Z[ζ_49])` has order 43 but its Galois action is external
/// data; it is read from [`P7_DATA_FILE`] in the data directory when present.
pub fn builtin(p: u32) -> Result<ClassData> {
    match p {
        2 | 3 | 5 => ClassData::trivial(p),
        7 => {
            let path = data_dir().join(P7_DATA_FILE);
            if !path.exists() {
                return Err(Error::NeedsConfig(
                    7,
                    format!(
                        "H(Z[zeta_49]) has order 43 and its Galois action is not built in; \
                         pass --classdata or provide {}",
                        path.display()
                    ),
                ));
            }
            let data = load_config(&path)?;
            if data.p != 7 || data.h1() != 1 || data.h2() != 43 {
                return Err(invalid(
                    &path.display().to_string(),
                    "p = 7 data must have |H_p| = 1 and |H_p2| = 43",
                ));
            }
            Ok(data)
        }
        _ => Err(Error::UnsupportedPrime(p)),
    }
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ClassData> {
    let text = std::fs::read_to_string(path.as_ref())?;
    ClassData::from_json_str(&text)
}
