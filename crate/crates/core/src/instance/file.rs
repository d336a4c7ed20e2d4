//! Line-oriented instance files.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{Instance, PSet, Tables};
use crate::presets::{make_preset, PresetId};
use crate::syntax::Signature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct InstanceFileError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> InstanceFileError {
    InstanceFileError {
        line,
        message: message.into(),
    }
}

fn is_sig_token(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphanumeric() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn sigs(line: usize, text: &str) -> Result<Vec<Signature>, InstanceFileError> {
    text.split_whitespace()
        .map(|t| {
            if is_sig_token(t) {
                Ok(Signature::new(t))
            } else {
                Err(err(line, format!("bad signature `{t}`")))
            }
        })
        .collect()
}

fn arrow(line: usize, text: &str) -> Result<(Vec<Signature>, Signature), InstanceFileError> {
    let (lhs, rhs) = text
        .split_once("->")
        .ok_or_else(|| err(line, "expected `->`"))?;
    let rhs = sigs(line, rhs)?;
    if rhs.len() != 1 {
        return Err(err(line, "expected exactly one signature after `->`"));
    }
    Ok((sigs(line, lhs)?, rhs.into_iter().next().unwrap()))
}

fn pset(line: usize, text: &str) -> Result<PSet, InstanceFileError> {
    let t = text.trim();
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| err(line, format!("bad natural `{}`", s.trim())))
    };
    match t {
        "all" => Ok(PSet::All),
        "none" => Ok(PSet::Empty),
        _ if t.starts_with(">=") => Ok(PSet::AtLeast(num(&t[2..])?)),
        _ if t.starts_with('{') && t.ends_with('}') => {
            let inner = &t[1..t.len() - 1];
            let mut set = BTreeSet::new();
            for part in inner.split(',').filter(|s| !s.trim().is_empty()) {
                set.insert(num(part)?);
            }
            Ok(PSet::Finite(set))
        }
        _ => Err(err(line, format!("bad p-set `{t}`"))),
    }
}

/// Parses an instance file. A `preset:` line replaces the explicit tables;
/// `order:`, `weak:`, `contr:` and `sample:` then parameterize sell and bsll.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceFileError> {
    let mut tables = Tables::default();
    let mut declared = false;
    let mut preset: Option<(usize, String)> = None;
    let mut order = Vec::new();
    let mut weak = None;
    let mut contr = None;
    let mut sample = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| err(line, "expected `key: value`"))?;
        let key = key.trim();
        let rest = rest.trim();
        let mut words = key.split_whitespace();
        match (words.next(), words.next(), words.next()) {
            (Some("signatures"), None, _) => {
                let s = sigs(line, rest)?;
                for e in &s {
                    if tables.signatures.contains(e) {
                        return Err(err(line, format!("duplicate signature `{e}`")));
                    }
                }
                tables.signatures.extend(s);
                declared = true;
            }
            (Some("de"), None, _) => tables.de.extend(sigs(line, rest)?),
            (Some("co"), Some(k), None) => {
                let k: usize = k
                    .parse()
                    .map_err(|_| err(line, format!("bad arity `{k}`")))?;
                let (from, to) = arrow(line, rest)?;
                if from.len() != k {
                    return Err(err(
                        line,
                        format!("co {k} expects {k} signatures, got {}", from.len()),
                    ));
                }
                tables.co.insert((from, to));
            }
            (Some("dg"), None, _) => {
                let (from, to) = arrow(line, rest)?;
                if from.len() != 2 {
                    return Err(err(line, "dg expects two signatures before `->`"));
                }
                tables.dg.insert((from[0].clone(), from[1].clone(), to));
            }
            (Some("p"), None, _) => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| err(line, "expected `p: sig = set`"))?;
                let set = pset(line, rhs)?;
                for e in sigs(line, lhs)? {
                    tables.p.insert(e, set.clone());
                }
            }
            (Some("preset"), None, _) => preset = Some((line, rest.to_string())),
            (Some("order"), None, _) => {
                for pair in rest.split(',') {
                    let (a, b) = pair
                        .split_once("<=")
                        .ok_or_else(|| err(line, "expected `a <= b`"))?;
                    let (a, b) = (sigs(line, a)?, sigs(line, b)?);
                    if a.len() != 1 || b.len() != 1 {
                        return Err(err(line, "expected `a <= b`"));
                    }
                    order.push((a[0].clone(), b[0].clone()));
                }
            }
            (Some("weak"), None, _) => weak = Some(sigs(line, rest)?),
            (Some("contr"), None, _) => contr = Some(sigs(line, rest)?),
            (Some("sample"), None, _) => {
                let mut v = Vec::new();
                for t in rest.split_whitespace() {
                    v.push(
                        t.parse::<u64>()
                            .map_err(|_| err(line, format!("bad numeral `{t}`")))?,
                    );
                }
                sample = Some(v);
            }
            _ => return Err(err(line, format!("unknown key `{key}`"))),
        }
    }

    if let Some((line, name)) = preset {
        let id = match PresetId::from_name(&name) {
            Some(PresetId::Sell(mut params)) => {
                if declared {
                    params.signatures = tables.signatures.clone();
                    params.order = order;
                    params.weak = weak.unwrap_or_default();
                    params.contr = contr.unwrap_or_default();
                }
                PresetId::Sell(params)
            }
            Some(PresetId::Bsll(mut params)) => {
                if let Some(s) = sample {
                    params.sample = s;
                }
                PresetId::Bsll(params)
            }
            Some(id) => id,
            None => return Err(err(line, format!("unknown preset `{name}`"))),
        };
        return make_preset(&id).map_err(|e| err(line, e.to_string()));
    }

    if !declared {
        return Err(err(0, "missing `signatures:` line"));
    }
    let check = |e: &Signature| -> Result<(), InstanceFileError> {
        if tables.signatures.contains(e) {
            Ok(())
        } else {
            Err(err(0, format!("unknown signature `{e}`")))
        }
    };
    for e in &tables.de {
        check(e)?;
    }
    for (from, to) in &tables.co {
        from.iter().try_for_each(check)?;
        check(to)?;
    }
    for (a, b, c) in &tables.dg {
        check(a)?;
        check(b)?;
        check(c)?;
    }
    for e in tables.p.keys() {
        check(e)?;
    }
    Ok(tables.into_instance("file"))
}
