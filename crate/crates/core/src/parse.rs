//! Text formats: potential specs, key-value config files, and comparison
//! corpus files.
//!
//! All three parsers are total: any input, including hostile garbage, comes
//! back as either a parsed value or a [`ParseError`] with a 1-based line
//! number — never a panic. They are exercised directly by the fuzz targets.
//!
//! Grammar summary:
//!
//! * **Potential spec** — `family:key=value,key=value`, e.g.
//!   `oscillator:v=1`, `kratzer:a=0.1,v=1,c=0.5`. A `coulomb` with a `c`
//!   key folds into the shifted-Coulomb family.
//! * **Config** — `key = value` lines; `#` comments and blank lines ignored;
//!   duplicate keys rejected.
//! * **Corpus** — `pair <lhs> :: <rhs> [:: options]` lines; options are
//!   space-separated `key=value` tokens (`d`, `j2`, `tau`, `mode`, `nu`,
//!   `m`, `bracket-lhs`, `bracket-rhs`), where `j2`, `nu` take comma lists
//!   and dash ranges (`nu=0,2-4`) and `mode` takes a comma list; channels
//!   are the cross product of the expanded lists.

use crate::channels::{Channel, Sign, SymmetryMode};
use crate::compare::ComparisonCase;
use crate::potential::PotentialModel;
use std::collections::BTreeMap;
use std::fmt;

/// A parse failure at a specific line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number (1 for single-line inputs).
    pub line: usize,
    /// What went wrong.
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Strict finite-float parse.
fn parse_f64(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(x) => Err(format!("number '{x}' must be finite")),
        Err(_) => Err(format!("'{s}' is not a number")),
    }
}

fn parse_u32(s: &str) -> Result<u32, String> {
    s.trim().parse::<u32>().map_err(|_| format!("'{s}' is not a non-negative integer"))
}

/// Splits `key=value`; both sides non-empty after trimming.
fn split_kv(tok: &str) -> Result<(&str, &str), String> {
    match tok.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() && !v.trim().is_empty() => {
            Ok((k.trim(), v.trim()))
        }
        _ => Err(format!("expected key=value, found '{tok}'")),
    }
}

// ---------------------------------------------------------------------------
// Potential specs.
// ---------------------------------------------------------------------------

fn potential_from_parts(family: &str, params: &str) -> Result<PotentialModel, String> {
    let mut map: BTreeMap<&str, f64> = BTreeMap::new();
    if !params.is_empty() {
        for tok in params.split(',') {
            let (k, v) = split_kv(tok)?;
            let val = parse_f64(v)?;
            if map.insert(k, val).is_some() {
                return Err(format!("duplicate parameter '{k}'"));
            }
        }
    }
    let mut take = |k: &str| map.remove(k);
    let need = |k: &str, got: Option<f64>| -> Result<f64, String> {
        got.ok_or_else(|| format!("family '{family}' needs parameter '{k}'"))
    };
    let model = match family {
        "oscillator" => PotentialModel::Oscillator { v: need("v", take("v"))? },
        "linear" => PotentialModel::Linear { v: need("v", take("v"))? },
        "coulomb" => {
            let v = need("v", take("v"))?;
            // A shift on a Coulomb spec is just the shifted family.
            match take("c") {
                Some(c) => PotentialModel::ShiftedCoulomb { v, c },
                None => PotentialModel::Coulomb { v },
            }
        }
        "shifted-coulomb" => PotentialModel::ShiftedCoulomb {
            v: need("v", take("v"))?,
            c: take("c").unwrap_or(0.0),
        },
        "kratzer" => PotentialModel::Kratzer {
            a: need("a", take("a"))?,
            v: need("v", take("v"))?,
            c: take("c").unwrap_or(0.0),
        },
        "log" => PotentialModel::Log { v: need("v", take("v"))? },
        other => {
            return Err(format!(
                "unknown family '{other}' (expected oscillator, linear, coulomb, \
                 shifted-coulomb, kratzer, or log)"
            ));
        }
    };
    if let Some(stray) = map.keys().next() {
        return Err(format!("family '{family}' does not take parameter '{stray}'"));
    }
    Ok(model)
}

fn potential_spec_inner(spec: &str) -> Result<PotentialModel, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err("empty potential spec".into());
    }
    let (family, params) = match spec.split_once(':') {
        Some((f, p)) => (f.trim(), p.trim()),
        None => (spec, ""),
    };
    potential_from_parts(family, params)
}

/// Parses a potential spec such as `kratzer:a=0.1,v=1,c=0.5`.
pub fn parse_potential_spec(spec: &str) -> Result<PotentialModel, ParseError> {
    potential_spec_inner(spec).or_else(|m| err(1, m))
}

// ---------------------------------------------------------------------------
// Config files.
// ---------------------------------------------------------------------------

/// Parses a `key = value` config file into an ordered map. `#` starts a
/// comment; duplicate keys are rejected.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, ParseError> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = match split_kv(line) {
            Ok(kv) => kv,
            Err(m) => return err(line_no, m),
        };
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return err(line_no, format!("duplicate key '{k}'"));
        }
    }
    Ok(map)
}

// ---------------------------------------------------------------------------
// Corpus files.
// ---------------------------------------------------------------------------

/// Expands a comma list with dash ranges (`0,2-4`) into integers.
fn expand_int_list(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(format!("empty entry in list '{s}'"));
        }
        match tok.split_once('-') {
            // A leading '-' would be a negative number, not a range.
            Some((a, b)) if !a.is_empty() => {
                let lo = parse_u32(a)?;
                let hi = parse_u32(b)?;
                if hi < lo {
                    return Err(format!("range '{tok}' runs backwards"));
                }
                if hi - lo > 256 {
                    return Err(format!("range '{tok}' is unreasonably wide"));
                }
                out.extend(lo..=hi);
            }
            _ => out.push(parse_u32(tok)?),
        }
    }
    Ok(out)
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+1" | "+" | "1" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        other => Err(format!("'{other}' is not a sign (expected +1 or -1)")),
    }
}

fn parse_modes(s: &str) -> Result<Vec<SymmetryMode>, String> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        match tok.trim() {
            "spin" => out.push(SymmetryMode::Spin),
            "pseudo" => out.push(SymmetryMode::Pseudo),
            other => return Err(format!("'{other}' is not a mode (expected spin or pseudo)")),
        }
    }
    Ok(out)
}

fn parse_bracket(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("bracket '{s}' needs the form lo,hi"))?;
    let lo = parse_f64(a)?;
    let hi = parse_f64(b)?;
    if lo < hi {
        Ok((lo, hi))
    } else {
        Err(format!("bracket '{s}' must have lo < hi"))
    }
}

struct CorpusOptions {
    d: u32,
    j2s: Vec<u32>,
    tau: Sign,
    modes: Vec<SymmetryMode>,
    nus: Vec<u32>,
    m: f64,
    bracket_lhs: Option<(f64, f64)>,
    bracket_rhs: Option<(f64, f64)>,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            d: 3,
            j2s: vec![1],
            tau: Sign::Plus,
            modes: vec![SymmetryMode::Spin],
            nus: vec![0],
            m: 1.0,
            bracket_lhs: None,
            bracket_rhs: None,
        }
    }
}

fn parse_corpus_options(s: &str) -> Result<CorpusOptions, String> {
    let mut opts = CorpusOptions::default();
    for tok in s.split_whitespace() {
        let (k, v) = split_kv(tok)?;
        match k {
            "d" => opts.d = parse_u32(v)?,
            "j2" => opts.j2s = expand_int_list(v)?,
            "tau" => opts.tau = parse_sign(v)?,
            "mode" => opts.modes = parse_modes(v)?,
            "nu" => opts.nus = expand_int_list(v)?,
            "m" => opts.m = parse_f64(v)?,
            "bracket-lhs" => opts.bracket_lhs = Some(parse_bracket(v)?),
            "bracket-rhs" => opts.bracket_rhs = Some(parse_bracket(v)?),
            other => return Err(format!("unknown option '{other}'")),
        }
    }
    Ok(opts)
}

fn corpus_line(line: &str, line_no: usize) -> Result<ComparisonCase, String> {
    let rest = line
        .strip_prefix("pair")
        .ok_or_else(|| "expected a line of the form 'pair <lhs> :: <rhs> [:: options]'".to_string())?;
    if !rest.starts_with(char::is_whitespace) {
        return Err(format!("unknown directive '{}'", line.split_whitespace().next().unwrap_or("")));
    }
    let parts: Vec<&str> = rest.split("::").map(str::trim).collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err("expected 'pair <lhs> :: <rhs> [:: options]'".into());
    }
    let lhs = potential_spec_inner(parts[0])?;
    let rhs = potential_spec_inner(parts[1])?;
    let opts = if parts.len() == 3 {
        parse_corpus_options(parts[2])?
    } else {
        CorpusOptions::default()
    };
    let mut channels = Vec::new();
    for &j2 in &opts.j2s {
        for &mode in &opts.modes {
            for &nu in &opts.nus {
                channels.push(
                    Channel::new(opts.d, j2, opts.tau, mode, nu, opts.m)
                        .map_err(|e| e.to_string())?,
                );
            }
        }
    }
    Ok(ComparisonCase {
        label: format!("L{line_no}:{}-vs-{}", lhs.family_name(), rhs.family_name()),
        lhs,
        rhs,
        channels,
        search_lhs: opts.bracket_lhs,
        search_rhs: opts.bracket_rhs,
    })
}

/// Parses a corpus file into comparison cases. Lines starting with `#` and
/// blank lines are skipped; every other line must be a `pair` directive.
pub fn parse_corpus(text: &str) -> Result<Vec<ComparisonCase>, ParseError> {
    let mut cases = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match corpus_line(line, line_no) {
            Ok(case) => cases.push(case),
            Err(m) => return err(line_no, m),
        }
    }
    Ok(cases)
}
