//! Line-oriented ring specifications.
//!
//! ```text
//! # comment
//! name my_ring
//! ring custom 2,2
//! mult 1 1 = 1,0
//! mult 1 2 = 0,1
//! subring S gen e1+e2
//! ```
//!
//! `ring <builtin> <params>` may replace the `custom` block, e.g. `ring zn 8`,
//! `ring mat_full 2 2` or `ring mat_row(2)`. Missing `mult` entries are zero.
//! Generator expressions are integer combinations of `e1..ek`; with a single
//! basis element a bare integer `n` means `n e1`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use ringcomm::ring::{center, subring_closure, Builtin, FiniteRing, RingError, Subring};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Semantic { line: usize, source: RingError },
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
}

/// How the ring is given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSource {
    Builtin(Builtin),
    Custom {
        orders: Vec<u64>,
        /// `(i, j) -> coordinates of e_i e_j`, zero-based.
        mult: BTreeMap<(usize, usize), Vec<i64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubringSpec {
    pub name: String,
    /// Generators as integer coordinate vectors.
    pub generators: Vec<Vec<i64>>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpecDocument {
    pub name: Option<String>,
    pub source: RingSource,
    pub subrings: Vec<SubringSpec>,
    ring_line: usize,
}

/// A ring built from a document, with its named subrings.
#[derive(Debug, Clone)]
pub struct BuiltRing {
    pub ring: FiniteRing,
    pub subrings: Vec<(String, Subring)>,
}

impl BuiltRing {
    /// `R`, `0` and `Z` name the whole ring, the zero subring and the center.
    pub fn subring(&self, name: &str) -> Option<Subring> {
        match name {
            "R" => Some(self.ring.whole()),
            "0" => Some(self.ring.zero_subring()),
            "Z" => Some(center(&self.ring)),
            _ => self
                .subrings
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, s)| s.clone()),
        }
    }

    /// A subring by name, or the closure of a generator list such as `e1+e2, 2e2`.
    pub fn resolve_subring(&self, arg: &str) -> Result<Subring, SpecError> {
        if let Some(s) = self.subring(arg.trim()) {
            return Ok(s);
        }
        let line = format!("subring _ gen {}", arg.trim());
        let spec = parse_subring_line(1, &line, self.ring.rank())?;
        let gens: Vec<usize> = spec
            .generators
            .iter()
            .map(|g| self.ring.additive().index_of_ints(g))
            .collect();
        subring_closure(&self.ring, &gens).map_err(|e| SpecError::Semantic { line: 1, source: e })
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> SpecError {
    SpecError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits on whitespace and on commas outside parentheses, keeping 1-based columns.
fn split_params(text: &str, start_col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut begin: Option<usize> = None;
    for (i, ch) in text.char_indices() {
        let sep = depth == 0 && (ch.is_whitespace() || ch == ',');
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if sep {
            if let Some(b) = begin.take() {
                out.push((start_col + b, &text[b..i]));
            }
        } else if begin.is_none() {
            begin = Some(i);
        }
    }
    if let Some(b) = begin {
        out.push((start_col + b, &text[b..]));
    }
    out
}

/// Column (1-based) of byte offset `offset` in `line`.
fn column_of(line: &str, rest: &str) -> usize {
    line.len() - rest.len() + 1
}

fn parse_int(line_no: usize, column: usize, s: &str) -> Result<i64, SpecError> {
    s.parse::<i64>()
        .map_err(|_| syntax(line_no, column, format!("expected an integer, found `{s}`")))
}

/// Parses `2e1 - e3 + 3*e2` or a bare integer into coordinates.
fn parse_expression(
    line_no: usize,
    column: usize,
    expr: &str,
    rank: usize,
) -> Result<Vec<i64>, SpecError> {
    let bytes = expr.as_bytes();
    let mut coords = vec![0i64; rank];
    let mut i = 0;
    let mut terms = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        let mut sign = 1i64;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
            skip_ws(&mut i);
        } else if terms > 0 {
            if i >= bytes.len() {
                break;
            }
            return Err(syntax(line_no, column + i, "expected `+` or `-`"));
        }
        let term_col = column + i;
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coefficient = if i > digits_start {
            parse_int(line_no, term_col, &expr[digits_start..i])?
        } else {
            1
        };
        skip_ws(&mut i);
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
            skip_ws(&mut i);
        }
        if i < bytes.len() && bytes[i] == b'e' {
            let sym_col = column + i;
            i += 1;
            let idx_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if idx_start == i {
                return Err(syntax(line_no, sym_col, "expected a basis index after `e`"));
            }
            let idx: usize = expr[idx_start..i]
                .parse()
                .map_err(|_| syntax(line_no, sym_col, "basis index out of range"))?;
            if idx == 0 || idx > rank {
                return Err(syntax(
                    line_no,
                    sym_col,
                    format!("basis symbol e{idx} outside e1..e{rank}"),
                ));
            }
            coords[idx - 1] += sign * coefficient;
        } else if i > digits_start {
            if rank != 1 {
                return Err(syntax(
                    line_no,
                    term_col,
                    "a bare integer is only allowed when the ring has a single basis element",
                ));
            }
            coords[0] += sign * coefficient;
        } else {
            return Err(syntax(
                line_no,
                term_col,
                "expected a term such as `2e1` or `e2`",
            ));
        }
        terms += 1;
        skip_ws(&mut i);
        if i >= bytes.len() {
            break;
        }
    }
    if terms == 0 {
        return Err(syntax(line_no, column, "empty expression"));
    }
    Ok(coords)
}

fn rank_of(source: &RingSource) -> Result<usize, RingError> {
    Ok(match source {
        RingSource::Builtin(b) => b.build()?.rank(),
        RingSource::Custom { orders, .. } => orders.len(),
    })
}

/// Parses a ring specification document.
pub fn parse_ringspec(text: &str) -> Result<RingSpecDocument, SpecError> {
    let mut name = None;
    let mut source: Option<(usize, RingSource)> = None;
    let mut mult_lines: Vec<(usize, usize, String)> = Vec::new();
    let mut subring_lines: Vec<(usize, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let keyword_col = column_of(line, trimmed);
        let (keyword, rest) = trimmed
            .split_once(char::is_whitespace)
            .unwrap_or((trimmed.trim_end(), ""));
        let rest_col = column_of(line, rest);
        match keyword {
            "name" => {
                let n = rest.trim();
                if n.is_empty() {
                    return Err(syntax(line_no, rest_col, "expected a ring name"));
                }
                name = Some(n.to_string());
            }
            "ring" => {
                if source.is_some() {
                    return Err(syntax(line_no, keyword_col, "duplicate `ring` line"));
                }
                source = Some((line_no, parse_ring_line(line_no, rest, rest_col)?));
            }
            "mult" => mult_lines.push((line_no, rest_col, rest.to_string())),
            "subring" => subring_lines.push((line_no, line.to_string())),
            other => {
                return Err(syntax(
                    line_no,
                    keyword_col,
                    format!("unknown keyword `{other}` (expected name, ring, mult or subring)"),
                ))
            }
        }
    }
    let (ring_line, mut source) = source.ok_or_else(|| syntax(1, 1, "missing `ring` line"))?;
    if let RingSource::Custom { orders, mult } = &mut source {
        let k = orders.len();
        for (line_no, col, rest) in mult_lines {
            let (i, j, coords) = parse_mult_line(line_no, col, &rest, k)?;
            if mult.insert((i, j), coords).is_some() {
                return Err(syntax(
                    line_no,
                    col,
                    format!("duplicate product e{} e{}", i + 1, j + 1),
                ));
            }
        }
    } else if let Some((line_no, col, _)) = mult_lines.first() {
        return Err(syntax(*line_no, *col, "`mult` lines require `ring custom`"));
    }
    let rank = rank_of(&source).map_err(|e| SpecError::Semantic {
        line: ring_line,
        source: e,
    })?;
    let mut subrings: Vec<SubringSpec> = Vec::new();
    for (line_no, line) in subring_lines {
        let spec = parse_subring_line(line_no, &line, rank)?;
        if subrings.iter().any(|s| s.name == spec.name)
            || matches!(spec.name.as_str(), "R" | "0" | "Z")
        {
            return Err(syntax(
                line_no,
                1,
                format!("subring name `{}` is reserved or already used", spec.name),
            ));
        }
        subrings.push(spec);
    }
    Ok(RingSpecDocument {
        name,
        source,
        subrings,
        ring_line,
    })
}

fn parse_ring_line(line_no: usize, rest: &str, rest_col: usize) -> Result<RingSource, SpecError> {
    let body = rest.trim_end();
    let lead = body.len() - body.trim_start().len();
    let body = body.trim_start();
    let col = rest_col + lead;
    if body.is_empty() {
        return Err(syntax(line_no, col, "expected a builtin name or `custom`"));
    }
    let family_end = body
        .find(|c: char| c.is_whitespace() || c == '(')
        .unwrap_or(body.len());
    let family = &body[..family_end];
    if family == "custom" {
        let params = split_params(&body[family_end..], col + family_end);
        if params.is_empty() {
            return Err(syntax(
                line_no,
                col + family_end,
                "expected additive orders, e.g. `custom 2,4`",
            ));
        }
        let orders = params
            .iter()
            .map(|&(c, p)| {
                let d = parse_int(line_no, c, p)?;
                if d < 2 {
                    return Err(syntax(
                        line_no,
                        c,
                        format!("cyclic order {d} must be at least 2"),
                    ));
                }
                Ok(d as u64)
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(RingSource::Custom {
            orders,
            mult: BTreeMap::new(),
        });
    }
    let semantic = |e: RingError| SpecError::Semantic {
        line: line_no,
        source: e,
    };
    let builtin = if body[family_end..].starts_with('(') {
        body.parse::<Builtin>().map_err(semantic)?
    } else {
        let params = split_params(&body[family_end..], col + family_end);
        let texts: Vec<&str> = params.iter().map(|&(_, p)| p).collect();
        Builtin::from_parts(family, &texts).map_err(semantic)?
    };
    builtin.build().map_err(semantic)?;
    Ok(RingSource::Builtin(builtin))
}

fn parse_mult_line(
    line_no: usize,
    col: usize,
    rest: &str,
    k: usize,
) -> Result<(usize, usize, Vec<i64>), SpecError> {
    let (lhs, rhs) = rest
        .split_once('=')
        .ok_or_else(|| syntax(line_no, col, "expected `mult i j = c1,...,ck`"))?;
    let indices = split_params(lhs, col);
    if indices.len() != 2 {
        return Err(syntax(
            line_no,
            col,
            "expected two basis indices before `=`",
        ));
    }
    let mut ij = [0usize; 2];
    for (slot, &(c, p)) in ij.iter_mut().zip(&indices) {
        let v = parse_int(line_no, c, p)?;
        if v < 1 || v as usize > k {
            return Err(syntax(
                line_no,
                c,
                format!("basis index {v} outside 1..{k}"),
            ));
        }
        *slot = v as usize - 1;
    }
    let rhs_col = col + lhs.len() + 1;
    let coords = split_params(rhs, rhs_col)
        .iter()
        .map(|&(c, p)| parse_int(line_no, c, p))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != k {
        return Err(syntax(
            line_no,
            rhs_col,
            format!("expected {k} coordinates, found {}", coords.len()),
        ));
    }
    Ok((ij[0], ij[1], coords))
}

fn parse_subring_line(line_no: usize, line: &str, rank: usize) -> Result<SubringSpec, SpecError> {
    let trimmed = line.trim_start();
    let after_kw = trimmed["subring".len()..].trim_start();
    let name_col = column_of(line, after_kw);
    let (name, rest) = after_kw
        .split_once(char::is_whitespace)
        .ok_or_else(|| syntax(line_no, name_col, "expected `subring NAME gen EXPR,...`"))?;
    let rest = rest.trim_start();
    let gen_col = column_of(line, rest);
    let Some(exprs) = rest.strip_prefix("gen") else {
        return Err(syntax(line_no, gen_col, "expected `gen`"));
    };
    let mut generators = Vec::new();
    let mut offset = column_of(line, exprs);
    for part in exprs.split(',') {
        let lead = part.len() - part.trim_start().len();
        if part.trim().is_empty() {
            if exprs.trim().is_empty() {
                break;
            }
            return Err(syntax(line_no, offset, "empty generator expression"));
        }
        generators.push(parse_expression(line_no, offset + lead, part.trim(), rank)?);
        offset += part.len() + 1;
    }
    Ok(SubringSpec {
        name: name.to_string(),
        generators,
        line: line_no,
    })
}

impl RingSpecDocument {
    /// Builds and validates the ring and every named subring.
    pub fn build(&self) -> Result<BuiltRing, SpecError> {
        let semantic = |line: usize| move |e: RingError| SpecError::Semantic { line, source: e };
        let ring = match &self.source {
            RingSource::Builtin(b) => b.build().map_err(semantic(self.ring_line))?,
            RingSource::Custom { orders, mult } => {
                let k = orders.len();
                let mut table = vec![vec![vec![0u64; k]; k]; k];
                for (&(i, j), coords) in mult {
                    table[i][j] = coords
                        .iter()
                        .zip(orders)
                        .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
                        .collect();
                }
                FiniteRing::from_structure(orders.clone(), table, None)
                    .map_err(semantic(self.ring_line))?
            }
        };
        let ring = match &self.name {
            Some(n) => ring.renamed(n.clone()),
            None => ring,
        };
        let mut subrings = Vec::new();
        for s in &self.subrings {
            let gens: Vec<usize> = s
                .generators
                .iter()
                .map(|g| ring.additive().index_of_ints(g))
                .collect();
            let sub = subring_closure(&ring, &gens).map_err(semantic(s.line))?;
            subrings.push((s.name.clone(), sub));
        }
        Ok(BuiltRing { ring, subrings })
    }
}

/// A ring argument as given on the command line, with the text it resolved to.
#[derive(Debug, Clone)]
pub struct RingInput {
    pub label: String,
    pub text: String,
    pub built: BuiltRing,
}

/// Resolves `--ring`: a file path, inline text (`;` separates lines), or `name(params)`.
pub fn load_ring_arg(arg: &str) -> Result<RingInput, SpecError> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        fs::read_to_string(path).map_err(|e| SpecError::Io {
            path: arg.to_string(),
            message: e.to_string(),
        })?
    } else if arg.contains(';') || arg.contains('\n') || arg.trim_start().starts_with("ring ") {
        arg.split(';').map(str::trim).collect::<Vec<_>>().join("\n")
    } else {
        format!("ring {}", arg.trim())
    };
    let built = parse_ringspec(&text)?.build()?;
    Ok(RingInput {
        label: arg.to_string(),
        text,
        built,
    })
}
