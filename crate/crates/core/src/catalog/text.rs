//! Text form of module specs: `kind ':' key '=' rational (',' key '=' rational)*`.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{registry, ModuleSpec};
use crate::scalar::{parse_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecParseError {
    #[error("parse error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown module kind `{0}`")]
    UnknownKind(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("highest weight must be a nonnegative integer, got {0}")]
    BadHighestWeight(String),
}

pub(crate) fn require(params: &BTreeMap<String, Scalar>, key: &str) -> Result<Scalar, SpecParseError> {
    params.get(key).cloned().ok_or_else(|| SpecParseError::MissingParameter(key.to_string()))
}

fn syntax(position: usize, message: impl Into<String>) -> SpecParseError {
    SpecParseError::Syntax { position, message: message.into() }
}

pub fn parse_spec(text: &str) -> Result<ModuleSpec, SpecParseError> {
    let (kind, body, body_start) = match text.find(':') {
        Some(p) => (&text[..p], &text[p + 1..], p + 1),
        None => return Err(syntax(text.len(), "expected `:` after the module kind")),
    };
    let kind = kind.trim();
    let family = registry()
        .family(kind)
        .ok_or_else(|| SpecParseError::UnknownKind(kind.to_string()))?;

    let mut params = BTreeMap::new();
    let mut offset = body_start;
    for item in body.split(',') {
        let Some(eq) = item.find('=') else {
            return Err(syntax(offset, format!("expected `key=value`, found `{item}`")));
        };
        let key = item[..eq].trim();
        if !family.parameters().contains(&key) {
            return Err(syntax(offset, format!("unknown parameter `{key}` for kind `{kind}`")));
        }
        let value_pos = offset + eq + 1;
        let value = parse_scalar(&item[eq + 1..]).map_err(|e| syntax(value_pos, e.to_string()))?;
        if params.insert(key.to_string(), value).is_some() {
            return Err(syntax(offset, format!("duplicate parameter `{key}`")));
        }
        offset += item.len() + 1;
    }
    family.from_params(&params)
}
