use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use super::CliError;
use crate::exactalg::IntMatrix;
use crate::fan::Fan;

/// Integer accepted either as a JSON number or as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                BigInt::from_str(v.trim()).map(JsonInt).map_err(|_| E::custom(format!("invalid integer string {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for JsonInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dim: usize,
    pub rays: Vec<Vec<JsonInt>>,
    pub maximal_cones: Vec<Vec<usize>>,
    pub generator: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl InstanceFile {
    /// Structural checks only: vector lengths, matrix shape, index ranges.
    pub fn check_structure(&self) -> Result<(), CliError> {
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.dim {
                return Err(CliError::DimensionMismatch(format!("ray {i} has {} entries, dim is {}", r.len(), self.dim)));
            }
        }
        if self.generator.len() != self.dim || self.generator.iter().any(|row| row.len() != self.dim) {
            let cols = self.generator.iter().map(Vec::len).max().unwrap_or(0);
            return Err(CliError::DimensionMismatch(format!(
                "generator is {}x{}, dim is {}",
                self.generator.len(),
                cols,
                self.dim
            )));
        }
        for (c, cone) in self.maximal_cones.iter().enumerate() {
            if let Some(&bad) = cone.iter().find(|&&i| i >= self.rays.len()) {
                return Err(CliError::IndexOutOfRange(format!(
                    "cone {c} refers to ray {bad}, but there are {} rays",
                    self.rays.len()
                )));
            }
        }
        Ok(())
    }

    pub fn fan(&self) -> Fan {
        let rays = self.rays.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
        Fan::new(self.dim, rays, self.maximal_cones.clone())
    }

    pub fn generator_matrix(&self) -> IntMatrix {
        if self.dim == 0 {
            return IntMatrix::identity(0);
        }
        IntMatrix::from_rows(self.generator.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect())
    }

    pub fn from_parts(name: Option<String>, fan: &Fan, generator: &IntMatrix) -> Self {
        InstanceFile {
            dim: fan.dim,
            rays: fan.rays.iter().map(|r| r.iter().cloned().map(JsonInt).collect()).collect(),
            maximal_cones: fan.maximal_cones.clone(),
            generator: generator.to_rows().into_iter().map(|r| r.into_iter().map(JsonInt).collect()).collect(),
            name,
        }
    }
}

pub fn parse_instance_str(text: &str) -> Result<InstanceFile, CliError> {
    let inst: InstanceFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    inst.check_structure()?;
    Ok(inst)
}

pub fn parse_input(path: &Path) -> Result<InstanceFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_instance_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLANE: &str = r#"{
  "name": "projective-plane",
  "dim": 2,
  "rays": [[1, 0], [0, 1], [-1, -1]],
  "maximal_cones": [[0, 1], [1, 2], [0, 2]],
  "generator": [[0, -1], [1, -1]]
}"#;

    #[test]
    fn parses_plane() {
        let inst = parse_instance_str(PLANE).unwrap();
        assert_eq!(inst.rays.len(), 3);
        assert_eq!(inst.maximal_cones.len(), 3);
        assert_eq!(inst.name.as_deref(), Some("projective-plane"));
    }

    #[test]
    fn integer_strings_are_accepted() {
        let text = PLANE.replace("[[0, -1], [1, -1]]", r#"[["0", "-1"], ["1", "-1"]]"#);
        assert_eq!(parse_instance_str(&text).unwrap(), parse_instance_str(PLANE).unwrap());
    }

    #[test]
    fn generator_shape() {
        let text = PLANE.replace("[[0, -1], [1, -1]]", "[[0, -1, 0], [1, -1, 0]]");
        assert!(matches!(parse_instance_str(&text), Err(CliError::DimensionMismatch(_))));
    }

    #[test]
    fn cone_index_out_of_range() {
        let text = r#"{"dim": 2, "rays": [[1,0],[0,1],[-1,0],[0,-1]],
            "maximal_cones": [[0,1],[1,7]], "generator": [[1,0],[0,1]]}"#;
        assert!(matches!(parse_instance_str(text), Err(CliError::IndexOutOfRange(_))));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_instance_str("{\n  \"dim\": 2,\n  \"rays\": [[1, 0] [0, 1]]\n}") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_instance_str(r#"{"dim": 2, "rays": [], "maximal_cones": []}"#) {
            Err(CliError::Parse { message, .. }) => assert!(message.contains("generator")),
            other => panic!("{other:?}"),
        }
    }
}
