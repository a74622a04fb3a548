//! Configuration documents (TOML or JSON).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub system: SystemSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composition: Option<CompositionNode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rates: Option<RateSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub name: String,
    pub d: usize,
    #[serde(default)]
    pub characteristic: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    /// Monic integer polynomial in `x` (characteristic zero).
    #[serde(default)]
    pub min_poly: Option<String>,
    /// Size of the constant field of F_q(t) (must equal the characteristic).
    #[serde(default)]
    pub base_q: Option<u64>,
    pub generator_images: Vec<String>,
    #[serde(default)]
    pub maximality_attested: bool,
    #[serde(default)]
    pub explicit_places: Vec<ExplicitPlaceConfig>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExplicitPlaceConfig {
    pub prime: u64,
    pub ramification: u32,
    pub residue_degree: u32,
    pub ords: Vec<i64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSection {
    /// Rational base b > 1 of theta(k) = b^k, e.g. "2" or "3/2".
    #[serde(default)]
    pub theta_base: Option<String>,
    /// Explicit strictly increasing list of rationals theta(1), theta(2), ...
    #[serde(default)]
    pub theta_list: Option<Vec<String>>,
}

/// User-supplied stand-ins for the constants of the Property II rate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RateSection {
    #[serde(default = "one")]
    pub a: f64,
    #[serde(default = "one")]
    pub c1: f64,
    /// Overrides C2 = C/sigma - epsilon.
    #[serde(default)]
    pub c2: Option<f64>,
    #[serde(default = "default_eps")]
    pub epsilon: f64,
    /// Overrides B = 2/C.
    #[serde(default)]
    pub b: Option<f64>,
}

fn one() -> f64 {
    1.0
}

fn default_eps() -> f64 {
    1e-6
}

impl Default for RateSection {
    fn default() -> Self {
        RateSection {
            a: 1.0,
            c1: 1.0,
            c2: None,
            epsilon: default_eps(),
            b: None,
        }
    }
}

/// A node of a composition tree. Leaf paths are relative to the file that
/// mentions them.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CompositionNode {
    Leaf {
        config: String,
    },
    Sum {
        parts: Vec<CompositionNode>,
    },
    Extension {
        sub: Box<CompositionNode>,
        quotient: Box<CompositionNode>,
        /// One matrix per generator, rows indexed by sub coordinates and
        /// columns by quotient coordinates; entries are field expressions.
        coupling: Vec<Vec<Vec<String>>>,
        /// Coset representatives; empty means the zero section y -> (0, y).
        #[serde(default)]
        reps: Vec<RepEntry>,
    },
    Restrict {
        inner: Box<CompositionNode>,
        /// Coordinates (1-based, in the order of the inner leaves) that vanish
        /// on the submodule.
        #[serde(default)]
        vanish: Vec<usize>,
        #[serde(default)]
        zero: bool,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RepEntry {
    pub quotient: Vec<String>,
    pub sub: Vec<String>,
}

/// One term of a trigonometric polynomial in a functions file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub support: String,
    #[serde(default = "zero_str")]
    pub re: String,
    #[serde(default = "zero_str")]
    pub im: String,
}

fn zero_str() -> String {
    "0".into()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FunctionsFile {
    pub f: Vec<TermConfig>,
    #[serde(default)]
    pub g: Vec<TermConfig>,
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::malformed(path.display().to_string(), format!("cannot read: {e}")))
}

/// Parses a TOML or JSON document (chosen by extension, TOML otherwise).
pub fn parse_document<T: for<'de> Deserialize<'de>>(text: &str, json: bool, origin: &str) -> Result<T> {
    if json {
        serde_json::from_str(text).map_err(|e| {
            Error::malformed(origin, format!("line {} column {}: {e}", e.line(), e.column()))
        })
    } else {
        toml::from_str(text).map_err(|e| Error::malformed(origin, e.to_string().trim_end().to_string()))
    }
}

impl SystemConfig {
    pub fn from_str_toml(text: &str) -> Result<Self> {
        parse_document(text, false, "<inline>")
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = read(path)?;
        parse_document(&text, is_json(path), &path.display().to_string())
    }
}

impl FunctionsFile {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = read(path)?;
        parse_document(&text, is_json(path), &path.display().to_string())
    }
}

/// Resolves a leaf path against the directory of the referring file.
pub fn resolve(base: &Path, rel: &str) -> PathBuf {
    let p = Path::new(rel);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new(".")).join(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_toml() {
        let c = SystemConfig::from_str_toml(
            r#"
[system]
name = "x2"
d = 1

[field]
min_poly = "x - 1"
generator_images = ["2"]
maximality_attested = true
"#,
        )
        .unwrap();
        assert_eq!(c.system.d, 1);
        assert_eq!(c.field.unwrap().generator_images, vec!["2"]);
    }

    #[test]
    fn composition_nodes() {
        let c = SystemConfig::from_str_toml(
            r#"
[system]
name = "sum"
d = 1

[composition]
kind = "sum"
parts = [{ kind = "leaf", config = "x2.toml" }, { kind = "leaf", config = "x3.toml" }]
"#,
        )
        .unwrap();
        match c.composition.unwrap() {
            CompositionNode::Sum { parts } => assert_eq!(parts.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_keys_rejected_with_location() {
        let err = SystemConfig::from_str_toml("[system]\nname = \"a\"\nd = 1\nbogus = 3\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bogus"), "{msg}");
        assert!(msg.contains("line"), "{msg}");
    }
}
