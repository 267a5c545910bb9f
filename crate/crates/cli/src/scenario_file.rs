//! Scenario files: one `key = value` pair per line, `#` starts a comment.
//!
//! ```text
//! num_terminals = 10
//! span_m        = 1000
//! altitude_m    = 100
//! power_dbm     = 10
//! ref_snr_db    = 80
//! speed_mps     = 30
//! traj_length_m = 500      # optional
//! epsilon       = 1e-5     # optional
//! scheme        = optimal  # optional: optimal | equal
//! ```

use std::collections::HashMap;
use std::path::Path;

use cma_core::model::Scenario;
use cma_core::search::Scheme;
use thiserror::Error;

pub const REQUIRED_KEYS: [&str; 6] = [
    "num_terminals",
    "span_m",
    "altitude_m",
    "power_dbm",
    "ref_snr_db",
    "speed_mps",
];
pub const OPTIONAL_KEYS: [&str; 3] = ["traj_length_m", "epsilon", "scheme"];

pub const DEFAULT_EPSILON: f64 = 1e-5;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: expected `key = value`, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("line {line}: invalid value for `{key}`: {reason}")]
    BadValue {
        line: usize,
        key: String,
        reason: String,
    },
    #[error("{0}")]
    Scenario(#[from] cma_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    /// Scenario with `traj_length` set from the file (0 when absent).
    pub scenario: Scenario,
    pub traj_length: Option<f64>,
    pub epsilon: f64,
    pub scheme: Scheme,
}

impl ScenarioFile {
    /// The reference scenario with no trajectory length.
    pub fn reference() -> Self {
        ScenarioFile {
            scenario: Scenario::reference(),
            traj_length: None,
            epsilon: DEFAULT_EPSILON,
            scheme: Scheme::Optimal,
        }
    }

    pub fn load(path: &Path) -> Result<Self, ParseError> {
        let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
            path: path.display().to_string(),
            source,
        })?;
        parse(&text)
    }
}

pub fn parse(text: &str) -> Result<ScenarioFile, ParseError> {
    let mut entries: HashMap<&str, (usize, &str)> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ParseError::Syntax {
            line,
            text: content.to_string(),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ParseError::Syntax {
                line,
                text: content.to_string(),
            });
        }
        if !REQUIRED_KEYS.contains(&key) && !OPTIONAL_KEYS.contains(&key) {
            return Err(ParseError::UnknownKey {
                line,
                key: key.to_string(),
            });
        }
        if entries.insert(key, (line, value)).is_some() {
            return Err(ParseError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
    }

    for key in REQUIRED_KEYS {
        if !entries.contains_key(key) {
            return Err(ParseError::MissingKey(key));
        }
    }

    let number = |key: &str| -> Result<Option<f64>, ParseError> {
        match entries.get(key) {
            None => Ok(None),
            Some(&(line, v)) => match v.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(Some(x)),
                _ => Err(ParseError::BadValue {
                    line,
                    key: key.to_string(),
                    reason: format!("{v:?} is not a finite number"),
                }),
            },
        }
    };

    let (k_line, k_text) = entries["num_terminals"];
    let num_terminals: usize = k_text.parse().map_err(|_| ParseError::BadValue {
        line: k_line,
        key: "num_terminals".into(),
        reason: format!("{k_text:?} is not a non-negative integer"),
    })?;

    let traj_length = number("traj_length_m")?;
    let epsilon = number("epsilon")?.unwrap_or(DEFAULT_EPSILON);
    if epsilon <= 0.0 {
        let line = entries["epsilon"].0;
        return Err(ParseError::BadValue {
            line,
            key: "epsilon".into(),
            reason: "must be positive".into(),
        });
    }
    let scheme = match entries.get("scheme") {
        None => Scheme::Optimal,
        Some(&(line, v)) => v.parse().map_err(|_| ParseError::BadValue {
            line,
            key: "scheme".into(),
            reason: format!("{v:?} is not one of optimal, equal"),
        })?,
    };

    let scenario = Scenario::builder()
        .num_terminals(num_terminals)
        .span(number("span_m")?.unwrap())
        .altitude(number("altitude_m")?.unwrap())
        .power_dbm(number("power_dbm")?.unwrap())
        .ref_snr_db(number("ref_snr_db")?.unwrap())
        .speed(number("speed_mps")?.unwrap())
        .traj_length(traj_length.unwrap_or(0.0))
        .build()?;

    Ok(ScenarioFile {
        scenario,
        traj_length,
        epsilon,
        scheme,
    })
}
