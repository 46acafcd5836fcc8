//! Sectioned plain-text instance files.
//!
//! ```text
//! # k[x1,x2,y1] bigraded, M = S, N = S/(x1*y1)
//! [ring]
//! vars = x1 x2 y1
//! degrees = (1,0) (1,0) (0,1)
//! char = 32003
//!
//! [quotient]
//!
//! [module N]
//! shifts = (0,0)
//! x1*y1
//!
//! [params]
//! window = 3
//! ```
//!
//! Variables are named `x1..xm` (inverted by p) and `y1..yn` (inverted by q).
//! Each non-key line of a module section is one relation, with one
//! comma-separated entry per generator. A missing module section means S.

use std::collections::HashMap;

use crate::duality::Scenario;
use crate::error::{Error, Result};
use crate::grading::{GradingData, Multidegree};
use crate::localcohomology::Truncation;
use crate::polyring::{FreeModule, ModuleElement, Monomial, Polynomial, Ring};
use crate::resolutions::{PresentedModule, QuotientRing};
use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub window: i64,
    pub max_resolution: usize,
    pub extra_depth: usize,
    pub oracle_tmax: u32,
    pub scenario: Option<Scenario>,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            window: 4,
            max_resolution: 8,
            extra_depth: 0,
            oracle_tmax: 0,
            scenario: None,
        }
    }
}

impl Params {
    pub fn truncation(&self) -> Truncation {
        Truncation {
            max_resolution: self.max_resolution,
            extra_depth: self.extra_depth,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub s: QuotientRing,
    pub m: PresentedModule,
    pub n: PresentedModule,
    pub params: Params,
}

impl Instance {
    pub fn ring(&self) -> &Ring {
        self.s.ring()
    }

    pub fn window(&self) -> Vec<Multidegree> {
        Multidegree::window(self.ring().grading().rank(), self.params.window)
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct Section {
    name: String,
    line: usize,
    keys: Vec<(usize, String, String)>,
    rows: Vec<(usize, String)>,
}

fn sections(text: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| perr(line, "unterminated section header"))?;
            let name = name.split_whitespace().collect::<Vec<_>>().join(" ");
            if out.iter().any(|s| s.name == name) {
                return Err(perr(line, format!("duplicate section [{name}]")));
            }
            out.push(Section {
                name,
                line,
                keys: vec![],
                rows: vec![],
            });
            continue;
        }
        let sec = out.last_mut().ok_or_else(|| perr(line, "content before the first section"))?;
        match body.split_once('=') {
            Some((k, v)) => sec.keys.push((line, k.trim().to_string(), v.trim().to_string())),
            None => sec.rows.push((line, body.to_string())),
        }
    }
    Ok(out)
}

fn parse_vector(line: usize, s: &str) -> Result<Multidegree> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s.trim());
    inner
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| perr(line, format!("bad degree entry '{}'", c.trim()))))
        .collect::<Result<Vec<_>>>()
        .map(Multidegree)
}

/// Splits `(1,0) (0,1)` or `1 2 3` into vectors.
fn parse_vectors(line: usize, s: &str) -> Result<Vec<Multidegree>> {
    if s.contains('(') {
        let mut out = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let close = rest.find(')').ok_or_else(|| perr(line, "missing ')'"))?;
            out.push(parse_vector(line, &rest[..=close])?);
            rest = rest[close + 1..].trim_start_matches([',', ' ', '\t']);
        }
        Ok(out)
    } else {
        s.split_whitespace().map(|t| parse_vector(line, t)).collect()
    }
}

/// Parses `x1^2*y1 + 3*x2 - 1` over `ring`.
pub fn parse_polynomial(ring: &Ring, line: usize, text: &str) -> Result<Polynomial> {
    let k = ring.field();
    let nv = ring.nvars();
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(perr(line, "empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    let mut pieces = Vec::new();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            pieces.push(&compact[start..i]);
            start = i;
        }
    }
    for piece in pieces {
        let (neg, body) = match piece.as_bytes()[0] {
            b'-' => (true, &piece[1..]),
            b'+' => (false, &piece[1..]),
            _ => (false, piece),
        };
        if body.is_empty() {
            return Err(perr(line, format!("dangling sign in '{text}'")));
        }
        let mut coeff: i64 = 1;
        let mut exps = vec![0u32; nv];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(perr(line, format!("empty factor in '{text}'")));
            }
            if factor.as_bytes()[0].is_ascii_digit() {
                let c: i64 = factor.parse().map_err(|_| perr(line, format!("bad coefficient '{factor}'")))?;
                coeff = coeff * k.reduce(c) as i64 % k.char() as i64;
                continue;
            }
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| perr(line, format!("bad exponent in '{factor}'")))?),
                None => (factor, 1),
            };
            let v = ring.var_index(name).ok_or_else(|| perr(line, format!("unknown variable '{name}'")))?;
            exps[v] += e;
        }
        let c = if neg { k.neg(k.reduce(coeff)) } else { k.reduce(coeff) };
        terms.push((Monomial::from_exponents(&exps), c));
    }
    Ok(Polynomial::from_terms(k, terms))
}

fn ring_from(sec: &Section, char_override: Option<u64>) -> Result<Ring> {
    let key = |k: &str| sec.keys.iter().find(|(_, n, _)| n == k);
    let (vl, _, vars) = key("vars").ok_or_else(|| perr(sec.line, "[ring] needs 'vars'"))?;
    let names: Vec<&str> = vars.split_whitespace().collect();
    let (dl, _, degs) = key("degrees").ok_or_else(|| perr(sec.line, "[ring] needs 'degrees'"))?;
    let degs = parse_vectors(*dl, degs)?;
    if degs.len() != names.len() {
        return Err(perr(*dl, format!("{} degrees for {} variables", degs.len(), names.len())));
    }
    let p = match (char_override, key("char")) {
        (Some(p), _) => p,
        (None, Some((l, _, v))) => v.parse().map_err(|_| perr(*l, format!("bad characteristic '{v}'")))?,
        (None, None) => Field::default().char() as u64,
    };
    let field = Field::new(p).map_err(|e| match key("char") {
        Some((l, _, _)) if char_override.is_none() => perr(*l, e.to_string()),
        _ => e,
    })?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (name, d) in names.iter().zip(&degs) {
        let is_x = name.starts_with('x');
        if !is_x && !name.starts_with('y') {
            return Err(perr(*vl, format!("variable '{name}' must start with x or y")));
        }
        if is_x && !ys.is_empty() {
            return Err(perr(*vl, "x-variables must precede y-variables"));
        }
        let block = if is_x { &mut xs } else { &mut ys };
        let expected = format!("{}{}", &name[..1], block.len() + 1);
        if *name != expected {
            return Err(perr(*vl, format!("expected variable '{expected}', found '{name}'")));
        }
        block.push(d.clone());
    }
    let grading = GradingData::new(xs, ys).map_err(|e| perr(*dl, e.to_string()))?;
    Ok(Ring::new(field, grading))
}

fn module_from(ring: &Ring, sec: Option<&Section>) -> Result<PresentedModule> {
    let Some(sec) = sec else {
        return Ok(PresentedModule::free(vec![ring.zero_degree()]));
    };
    let mut shifts = vec![ring.zero_degree()];
    for (line, k, v) in &sec.keys {
        match k.as_str() {
            "shifts" => shifts = parse_vectors(*line, v)?,
            _ => return Err(perr(*line, format!("unknown key '{k}' in [{}]", sec.name))),
        }
    }
    let r = ring.grading().rank();
    if let Some(bad) = shifts.iter().find(|d| d.rank() != r) {
        return Err(perr(sec.line, format!("shift {bad} has the wrong length")));
    }
    let ambient = FreeModule::new(shifts);
    let mut rels = Vec::new();
    for (line, row) in &sec.rows {
        let entries: Vec<&str> = row.split(',').collect();
        if entries.len() != ambient.rank() {
            return Err(perr(*line, format!("{} entries for {} generators", entries.len(), ambient.rank())));
        }
        let polys = entries
            .iter()
            .map(|e| parse_polynomial(ring, *line, e))
            .collect::<Result<Vec<_>>>()?;
        let elt = ModuleElement::from_entries(polys.into_iter().enumerate().collect());
        if elt.degree(ring.grading(), &ambient).is_none() && !elt.is_zero() {
            return Err(perr(*line, "relation is not homogeneous"));
        }
        rels.push(elt);
    }
    PresentedModule::from_elements(ring, ambient, rels)
}

fn params_from(sec: Option<&Section>) -> Result<Params> {
    let mut p = Params::default();
    let Some(sec) = sec else { return Ok(p) };
    if let Some((line, _)) = sec.rows.first() {
        return Err(perr(*line, "expected 'key = value' in [params]"));
    }
    for (line, k, v) in &sec.keys {
        let num = || v.parse::<u64>().map_err(|_| perr(*line, format!("bad value '{v}' for {k}")));
        match k.as_str() {
            "window" => p.window = num()? as i64,
            "max_resolution" => p.max_resolution = num()? as usize,
            "extra_depth" => p.extra_depth = num()? as usize,
            "oracle_tmax" => p.oracle_tmax = num()? as u32,
            "scenario" => p.scenario = Some(v.parse().map_err(|e: Error| perr(*line, e.to_string()))?),
            _ => return Err(perr(*line, format!("unknown parameter '{k}'"))),
        }
    }
    Ok(p)
}

/// Parses an instance; `char_override` replaces the `char` key.
pub fn parse_instance(text: &str, char_override: Option<u64>) -> Result<Instance> {
    let secs = sections(text)?;
    let by_name: HashMap<&str, &Section> = secs.iter().map(|s| (s.name.as_str(), s)).collect();
    for s in &secs {
        if !matches!(s.name.as_str(), "ring" | "quotient" | "module M" | "module N" | "params") {
            return Err(perr(s.line, format!("unknown section [{}]", s.name)));
        }
    }
    let ring_sec = by_name.get("ring").ok_or_else(|| perr(1, "missing [ring] section"))?;
    if let Some((line, _)) = ring_sec.rows.first() {
        return Err(perr(*line, "expected 'key = value' in [ring]"));
    }
    let ring = ring_from(ring_sec, char_override)?;
    let mut rels = Vec::new();
    if let Some(q) = by_name.get("quotient") {
        for (line, row) in &q.rows {
            for part in row.split(',').filter(|p| !p.trim().is_empty()) {
                let f = parse_polynomial(&ring, *line, part)?;
                if f.degree(ring.grading()).is_none() {
                    return Err(perr(*line, "quotient relation is not homogeneous"));
                }
                rels.push(f);
            }
        }
        if let Some((line, _, _)) = q.keys.first() {
            return Err(perr(*line, "[quotient] takes one polynomial per line"));
        }
    }
    let s = if rels.is_empty() {
        QuotientRing::polynomial_ring(ring.clone())
    } else {
        QuotientRing::new(ring.clone(), rels).map_err(|e| perr(by_name["quotient"].line, e.to_string()))?
    };
    let m = module_from(&ring, by_name.get("module M").copied())?;
    let n = module_from(&ring, by_name.get("module N").copied())?;
    let params = params_from(by_name.get("params").copied())?;
    Ok(Instance { s, m, n, params })
}

pub fn read_instance(path: &std::path::Path, char_override: Option<u64>) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text, char_override)
}
