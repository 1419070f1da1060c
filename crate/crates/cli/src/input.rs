use std::path::Path;
use std::time::Duration;

use bialg_core::bd::AdmissibleTriple;
use bialg_core::field::parse_rational;
use bialg_core::{json, MatK, Rational};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Json(#[from] json::JsonError),
    #[error("malformed JSON in {0}")]
    Syntax(String),
    #[error("{0}")]
    Other(String),
}

pub fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}

/// Comma-separated rationals, e.g. `2,5,-1/3`.
pub fn parse_list(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',').map(parse_rational_arg).collect()
}

/// Seconds, with an optional `s` suffix.
pub fn parse_duration(s: &str) -> Result<Duration, String> {
    let t = s.trim().trim_end_matches('s');
    t.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite() && *x >= 0.0)
        .map(Duration::from_secs_f64)
        .ok_or_else(|| format!("not a duration: {s:?}"))
}

/// Inline JSON (starting with `{`) or the path of a JSON file.
fn load_json(src: &str) -> Result<serde_json::Value, InputError> {
    let (text, origin) = if src.trim_start().starts_with('{') {
        (src.to_string(), "argument".to_string())
    } else {
        let text = std::fs::read_to_string(Path::new(src)).map_err(|e| InputError::Io {
            path: src.to_string(),
            source: e,
        })?;
        (text, src.to_string())
    };
    serde_json::from_str(&text).map_err(|_| InputError::Syntax(origin))
}

/// `trivial` (needs `n`), inline JSON, or a file.
pub fn load_triple(src: &str, n: Option<usize>) -> Result<AdmissibleTriple, InputError> {
    if src == "trivial" {
        let n = n.ok_or_else(|| InputError::Other("--n is required with --triple trivial".into()))?;
        let t = AdmissibleTriple::trivial(n);
        t.check().map_err(InputError::Other)?;
        return Ok(t);
    }
    let t = json::parse_triple(&load_json(src)?)?;
    if let Some(n) = n {
        if n != t.n {
            return Err(InputError::Other(format!("--n {n} disagrees with the triple's n = {}", t.n)));
        }
    }
    Ok(t)
}

pub fn load_matrix(src: &str) -> Result<MatK, InputError> {
    Ok(json::parse_matrix(&load_json(src)?)?)
}

/// A comma-separated list of rationals as one argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatList(pub Vec<Rational>);

pub fn parse_rat_list(s: &str) -> Result<RatList, String> {
    parse_list(s).map(RatList)
}
