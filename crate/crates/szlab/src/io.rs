//! JSON artifacts.
//!
//! Every file carries `"schema": "sz/1"` at the top level. Readers accept a
//! missing schema field, reject any other value, and report errors with the
//! path of the offending field.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::disc::{FactoredComponent, FactoredDisc, LiftedDisc};
use crate::{Error, Result};

pub const SCHEMA: &str = "sz/1";

/// Parse an artifact, checking and stripping the schema tag.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut v: Value = serde_json::from_str(text).map_err(|e| Error::Input {
        path: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if let Value::Object(map) = &mut v {
        match map.remove("schema") {
            None => {}
            Some(Value::String(s)) if s == SCHEMA => {}
            Some(other) => {
                return Err(Error::Input {
                    path: "schema".into(),
                    message: format!("expected \"{SCHEMA}\", found {other}"),
                })
            }
        }
    }
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        Error::Input {
            path: if path == "." { "(root)".into() } else { path },
            message: e.into_inner().to_string(),
        }
    })
}

/// Serialize with the schema tag first. Non-object values are wrapped as
/// `{"schema", "data"}`.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Config(e.to_string()))?;
    let mut out = Map::new();
    out.insert("schema".into(), Value::String(SCHEMA.into()));
    match v {
        Value::Object(map) => out.extend(map),
        other => {
            out.insert("data".into(), other);
        }
    }
    serde_json::to_string_pretty(&Value::Object(out)).map_err(|e| Error::Config(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscKind {
    Factored,
    Lifted,
}

/// A disc file: `{dimension, components, kind?}`.
///
/// Without `kind`, `n` components in dimension `n` are a factored disc and
/// `n + 1` components are a lifting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDiscFile", into = "RawDiscFile")]
pub enum DiscFile {
    Factored(FactoredDisc),
    Lifted(LiftedDisc),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiscFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<DiscKind>,
    dimension: usize,
    components: Vec<FactoredComponent>,
}

impl TryFrom<RawDiscFile> for DiscFile {
    type Error = Error;
    fn try_from(r: RawDiscFile) -> Result<Self> {
        let inferred = match r.components.len() {
            k if k == r.dimension => DiscKind::Factored,
            k if k == r.dimension + 1 => DiscKind::Lifted,
            k => {
                return Err(Error::Disc(format!(
                    "{k} components fit neither a disc nor a lifting in dimension {}",
                    r.dimension
                )))
            }
        };
        if let Some(kind) = r.kind {
            if kind != inferred {
                return Err(Error::Disc(format!(
                    "kind {kind:?} does not match {} components",
                    r.components.len()
                )));
            }
        }
        match inferred {
            DiscKind::Factored => FactoredDisc::new(r.components).map(Self::Factored),
            DiscKind::Lifted => LiftedDisc::new(r.components).map(Self::Lifted),
        }
    }
}

impl From<DiscFile> for RawDiscFile {
    fn from(d: DiscFile) -> Self {
        match d {
            DiscFile::Factored(f) => RawDiscFile {
                kind: None,
                dimension: f.dimension(),
                components: f.components().to_vec(),
            },
            DiscFile::Lifted(l) => RawDiscFile {
                kind: None,
                dimension: l.dimension(),
                components: l.components().to_vec(),
            },
        }
    }
}

impl DiscFile {
    pub fn kind(&self) -> DiscKind {
        match self {
            Self::Factored(_) => DiscKind::Factored,
            Self::Lifted(_) => DiscKind::Lifted,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::SetGeometry;

    #[test]
    fn schema_is_checked() {
        let g = r#"{"schema":"sz/1","primitives":[{"ball":{"center":[[0,0]],"radius":1}}]}"#;
        assert!(from_json::<SetGeometry>(g).is_ok());
        let bad = g.replace("sz/1", "sz/2");
        assert!(matches!(from_json::<SetGeometry>(&bad), Err(Error::Input { path, .. }) if path == "schema"));
    }

    #[test]
    fn errors_carry_the_field_path() {
        let g = r#"{"primitives":[{"ball":{"center":[[0,0]],"radius":"x"}}]}"#;
        let Err(Error::Input { path, .. }) = from_json::<SetGeometry>(g) else {
            panic!("expected an input error");
        };
        assert_eq!(path, "primitives[0].ball.radius");
    }

    #[test]
    fn disc_kind_is_inferred() {
        let f = r#"{"dimension":1,"components":[{"outer":{"rational":{"num":[[2,0]],"den":[[1,0]]}}}]}"#;
        assert_eq!(from_json::<DiscFile>(f).unwrap().kind(), DiscKind::Factored);
        let l = r#"{"dimension":1,"components":[{"outer":{"rational":{"num":[[1,0]],"den":[[1,0]]}}},
                    {"outer":{"rational":{"num":[[2,0]],"den":[[1,0]]}}}]}"#;
        let d = from_json::<DiscFile>(l).unwrap();
        assert_eq!(d.kind(), DiscKind::Lifted);
        assert_eq!(from_json::<DiscFile>(&to_json(&d).unwrap()).unwrap(), d);
        assert!(from_json::<DiscFile>(&f.replace("\"dimension\":1", "\"dimension\":3")).is_err());
    }
}
