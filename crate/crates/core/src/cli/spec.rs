//! Problem files: `key=value` lines for p, vars, gens and an optional label;
//! `#` starts a comment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::is_prime;
use crate::polyring::{parse_poly_at, MonomialOrder, Poly, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSpec {
    pub label: Option<String>,
    pub p: u32,
    pub vars: Vec<String>,
    pub gens: Vec<String>,
}

/// A parsed spec with its ring and generators.
#[derive(Debug, Clone)]
pub struct Problem {
    pub spec: IdealSpec,
    pub ring: Ring,
    pub ideal: Vec<Poly>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Byte offset to 1-based character column.
fn col(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

/// Split a comma list, returning each item trimmed with its starting byte offset.
fn split_items(value: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in value.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        out.push((base + start + lead, piece.trim()));
        start += piece.len() + 1;
    }
    out
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem> {
        let mut label: Option<String> = None;
        let mut p: Option<(u32, usize)> = None;
        let mut vars: Option<(Vec<String>, usize)> = None;
        // (text, line, column)
        let mut gens: Vec<(String, usize, usize)> = Vec::new();
        let mut saw_gens = false;

        for (k, raw) in text.lines().enumerate() {
            let ln = k + 1;
            let line = match raw.find('#') {
                Some(h) => &raw[..h],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            let Some(eq) = line.find('=') else {
                let c = col(raw, line.len() - line.trim_start().len());
                return Err(perr(ln, c, "expected key=value"));
            };
            let key = line[..eq].trim();
            let key_col = col(raw, line.len() - line.trim_start().len());
            let vstart = eq + 1;
            let value = &line[vstart..];
            match key {
                "p" => {
                    if p.is_some() {
                        return Err(perr(ln, key_col, "p given twice"));
                    }
                    let lead = value.len() - value.trim_start().len();
                    let c = col(raw, vstart + lead);
                    let v: u32 = value
                        .trim()
                        .parse()
                        .map_err(|_| perr(ln, c, format!("p must be a prime, got {:?}", value.trim())))?;
                    if !is_prime(v) || v >= 1024 {
                        return Err(perr(ln, c, format!("p must be a prime below 1024, got {v}")));
                    }
                    p = Some((v, ln));
                }
                "vars" => {
                    if vars.is_some() {
                        return Err(perr(ln, key_col, "vars given twice"));
                    }
                    let mut names = Vec::new();
                    for (off, name) in split_items(value, vstart) {
                        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                        if !valid {
                            return Err(perr(ln, col(raw, off), format!("bad variable name {name:?}")));
                        }
                        if names.contains(&name.to_string()) {
                            return Err(perr(ln, col(raw, off), format!("duplicate variable {name:?}")));
                        }
                        names.push(name.to_string());
                    }
                    vars = Some((names, ln));
                }
                "gens" => {
                    saw_gens = true;
                    if value.trim().is_empty() {
                        continue;
                    }
                    for (off, g) in split_items(value, vstart) {
                        if g.is_empty() {
                            return Err(perr(ln, col(raw, off), "empty generator"));
                        }
                        gens.push((g.to_string(), ln, col(raw, off)));
                    }
                }
                "label" => {
                    if label.is_some() {
                        return Err(perr(ln, key_col, "label given twice"));
                    }
                    label = Some(value.trim().to_string());
                }
                other => return Err(perr(ln, key_col, format!("unknown key {other:?}"))),
            }
        }

        let end = text.lines().count() + 1;
        let (p, _) = p.ok_or_else(|| perr(end, 1, "missing p="))?;
        let (vars, vars_line) = vars.ok_or_else(|| perr(end, 1, "missing vars="))?;
        if !saw_gens {
            return Err(perr(end, 1, "missing gens="));
        }
        let ring = Ring::new(p, vars.clone(), MonomialOrder::Grevlex).map_err(|e| perr(vars_line, 1, e.to_string()))?;
        let mut ideal = Vec::new();
        for (k, (g, ln, c)) in gens.iter().enumerate() {
            let f = parse_poly_at(&ring, g, *ln, c - 1)?;
            if !f.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!("generator {} ({g}) at line {ln}", k + 1)));
            }
            ideal.push(f);
        }
        Ok(Problem {
            spec: IdealSpec {
                label,
                p,
                vars,
                gens: gens.into_iter().map(|(g, _, _)| g).collect(),
            },
            ring,
            ideal,
        })
    }

    pub fn from_ideal(label: Option<String>, ring: &Ring, ideal: &[Poly]) -> Problem {
        Problem {
            spec: IdealSpec {
                label,
                p: ring.p(),
                vars: ring.names().to_vec(),
                gens: ideal.iter().map(|g| ring.fmt_poly(g)).collect(),
            },
            ring: ring.clone(),
            ideal: ideal.to_vec(),
        }
    }

    /// The spec in file syntax.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(l) = &self.spec.label {
            s.push_str(&format!("label={l}\n"));
        }
        s.push_str(&format!("p={}\nvars={}\ngens={}\n", self.spec.p, self.spec.vars.join(","), self.spec.gens.join(", ")));
        s
    }
}
