//! The line-oriented model file format.
//!
//! ```text
//! # comment
//! states: poor fair excellent
//! init: poor=1
//! label: poor = {poor}
//! label: fair = {}
//! trans: poor -> fair = 0.5
//! ```
//!
//! `states:` comes first. Omitted initial and transition entries are 0, omitted
//! labels are empty. An optional `ap: a b …` line declares the proposition set;
//! without it the propositions are those used by some label.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::algebra::{FuzzyMatrix, PossibilityVector};
use crate::kripke::{ModelError, PossibilisticKripkeStructure};
use crate::possibility::Possibility;

fn err(line: usize, message: impl Into<String>) -> ModelError {
    ModelError::Parse {
        line,
        message: message.into(),
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| !c.is_whitespace() && !matches!(c, '=' | '{' | '}' | ',' | '#'))
        && !s.contains("->")
}

fn parse_value(line: usize, text: &str) -> Result<Possibility, ModelError> {
    text.trim()
        .parse::<Possibility>()
        .map_err(|e| err(line, e.to_string()))
}

/// Parses and validates a model. Normality violations are reported as
/// [`ModelError::Invalid`].
pub fn parse_model(text: &str) -> Result<PossibilisticKripkeStructure, ModelError> {
    let m = parse_model_unchecked(text)?;
    let violations = m.validate();
    if violations.is_empty() {
        Ok(m)
    } else {
        Err(ModelError::Invalid(violations))
    }
}

/// Parses a model without checking the normality conditions.
pub fn parse_model_unchecked(text: &str) -> Result<PossibilisticKripkeStructure, ModelError> {
    let mut states: Option<Vec<String>> = None;
    let mut declared_ap: Option<BTreeSet<String>> = None;
    let mut init_lines = Vec::new();
    let mut label_lines = Vec::new();
    let mut trans_lines = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, format!("expected `key: ...`, found `{line}`")))?;
        let key = key.trim();
        let rest = rest.trim();
        if key != "states" && states.is_none() {
            return Err(err(line_no, "the `states:` line must come first"));
        }
        match key {
            "states" => {
                if states.is_some() {
                    return Err(err(line_no, "duplicate `states:` line"));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.is_empty() {
                    return Err(err(line_no, "no states declared"));
                }
                if let Some(bad) = names.iter().find(|n| !is_name(n)) {
                    return Err(err(line_no, format!("invalid state name `{bad}`")));
                }
                states = Some(names);
            }
            "ap" => {
                if declared_ap.is_some() {
                    return Err(err(line_no, "duplicate `ap:` line"));
                }
                declared_ap = Some(rest.split_whitespace().map(str::to_string).collect());
            }
            "init" => init_lines.push((line_no, rest.to_string())),
            "label" => label_lines.push((line_no, rest.to_string())),
            "trans" => trans_lines.push((line_no, rest.to_string())),
            other => return Err(err(line_no, format!("unknown directive `{other}`"))),
        }
    }

    let states = states.ok_or_else(|| err(0, "missing `states:` line"))?;
    let n = states.len();
    let lookup = |line: usize, name: &str| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| err(line, format!("unknown state `{name}`")))
    };

    let mut initial = vec![Possibility::ZERO; n];
    let mut init_seen = vec![false; n];
    for (line, rest) in &init_lines {
        // allow `s = v` as well as `s=v`
        let compact = rest.replace(" =", "=").replace("= ", "=");
        for item in compact.split(|c: char| c.is_whitespace() || c == ',') {
            if item.is_empty() {
                continue;
            }
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| err(*line, format!("expected `state=value`, found `{item}`")))?;
            let i = lookup(*line, name)?;
            if std::mem::replace(&mut init_seen[i], true) {
                return Err(err(*line, format!("duplicate initial value for `{name}`")));
            }
            initial[i] = parse_value(*line, value)?;
        }
    }

    let mut labels = vec![BTreeSet::new(); n];
    let mut label_seen = vec![false; n];
    for (line, rest) in &label_lines {
        let (name, set) = rest
            .split_once('=')
            .ok_or_else(|| err(*line, "expected `state = {a, b}`"))?;
        let i = lookup(*line, name.trim())?;
        if std::mem::replace(&mut label_seen[i], true) {
            return Err(err(
                *line,
                format!("duplicate label line for `{}`", name.trim()),
            ));
        }
        let inner = set
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| err(*line, "label set must be written `{a, b}`"))?;
        for a in inner.split(',').map(str::trim).filter(|a| !a.is_empty()) {
            if !is_name(a) {
                return Err(err(*line, format!("invalid proposition `{a}`")));
            }
            labels[i].insert(a.to_string());
        }
    }

    let mut matrix = FuzzyMatrix::zeros(n);
    let mut trans_seen = vec![false; n * n];
    for (line, rest) in &trans_lines {
        let (from, rest) = rest
            .split_once("->")
            .ok_or_else(|| err(*line, "expected `s -> t = value`"))?;
        let (to, value) = rest
            .split_once('=')
            .ok_or_else(|| err(*line, "expected `s -> t = value`"))?;
        let i = lookup(*line, from.trim())?;
        let j = lookup(*line, to.trim())?;
        if std::mem::replace(&mut trans_seen[i * n + j], true) {
            return Err(err(
                *line,
                format!("duplicate transition {} -> {}", from.trim(), to.trim()),
            ));
        }
        matrix.set(i, j, parse_value(*line, value)?);
    }

    let propositions =
        declared_ap.unwrap_or_else(|| labels.iter().flat_map(|l| l.iter().cloned()).collect());

    PossibilisticKripkeStructure::new(
        states,
        matrix,
        PossibilityVector::new(initial),
        propositions,
        labels,
    )
}

/// Renders a model in the file format. `parse_model_unchecked(&write_model(m)) == m`.
pub fn write_model(m: &PossibilisticKripkeStructure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", m.states().join(" "));
    let ap: Vec<&str> = m.propositions().iter().map(String::as_str).collect();
    let _ = writeln!(out, "ap: {}", ap.join(" "));
    let init: Vec<String> = (0..m.num_states())
        .filter(|&i| m.initial()[i].is_positive())
        .map(|i| format!("{}={}", m.state_name(i), m.initial()[i]))
        .collect();
    let _ = writeln!(out, "init: {}", init.join(" "));
    for i in 0..m.num_states() {
        let labels: Vec<&str> = m.labels(i).iter().map(String::as_str).collect();
        let _ = writeln!(
            out,
            "label: {} = {{{}}}",
            m.state_name(i),
            labels.join(", ")
        );
    }
    for i in 0..m.num_states() {
        for j in m.successors(i) {
            let _ = writeln!(
                out,
                "trans: {} -> {} = {}",
                m.state_name(i),
                m.state_name(j),
                m.transition(i, j)
            );
        }
    }
    out
}
