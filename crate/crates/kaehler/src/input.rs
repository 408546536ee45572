//! Turning command-line strings into core values.

use std::sync::Arc;

use kaehler_core::{
    parse_multi_index, parse_polynomial, FieldElement, FieldSpec, ModuleVector, MultiIndex, Polynomial, Ring,
};

use crate::CliError;

/// Variable names: explicit `--vars` list, or `x1..xk` inferred from the
/// largest `x<k>` mentioned anywhere in `texts`.
pub fn variable_names(vars: Option<&str>, texts: &[&str]) -> Result<Vec<String>, CliError> {
    if let Some(list) = vars {
        let names: Vec<String> = list.split(',').map(|v| v.trim().to_string()).collect();
        if names.iter().any(|n| !is_identifier(n)) {
            return Err(CliError::Usage(format!("invalid --vars list `{list}`")));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(CliError::Usage(format!("variable `{n}` declared twice")));
            }
        }
        return Ok(names);
    }
    let mut highest = 0usize;
    for text in texts {
        for ident in identifiers(text) {
            let index = ident
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&k| k >= 1 && !ident[1..].starts_with('0'))
                .ok_or_else(|| {
                    CliError::Usage(format!("cannot infer variables from `{ident}`; pass --vars explicitly"))
                })?;
            highest = highest.max(index);
        }
    }
    Ok((1..=highest.max(1)).map(|i| format!("x{i}")).collect())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn identifiers(text: &str) -> Vec<&str> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(&text[start..i]);
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        } else {
            i += 1;
        }
    }
    out
}

pub fn polynomials(texts: &[String], ring: &Arc<Ring>) -> Result<Vec<Polynomial>, CliError> {
    texts.iter().map(|t| parse_polynomial(t, ring).map_err(|e| CliError::parse(t, e))).collect()
}

/// `"1,0"` or `"1/2,-3"`: one field element per variable.
pub fn point(text: &str, ring: &Arc<Ring>) -> Result<Vec<FieldElement>, CliError> {
    let coords: Vec<&str> = text.split(',').map(str::trim).collect();
    if coords.len() != ring.vars() {
        return Err(CliError::Usage(format!(
            "point `{text}` has {} coordinates, the ring has {} variables",
            coords.len(),
            ring.vars()
        )));
    }
    coords
        .into_iter()
        .map(|c| {
            let p = parse_polynomial(c, ring).map_err(|e| CliError::parse(c, e))?;
            if !p.is_constant() {
                return Err(CliError::Usage(format!("point coordinate `{c}` is not a constant")));
            }
            Ok(p.coefficient(&MultiIndex::zero(ring.vars())))
        })
        .collect()
}

/// `"(1,1):3*x2;(0,2):-2*x1"`.
pub fn element(text: &str, ring: &Arc<Ring>, n: u32) -> Result<ModuleVector, CliError> {
    let mut parts = Vec::new();
    for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let close = chunk
            .find(')')
            .ok_or_else(|| CliError::Usage(format!("element part `{chunk}` must look like (a,b):poly")))?;
        let (label, rest) = chunk.split_at(close + 1);
        let poly = rest
            .trim_start()
            .strip_prefix(':')
            .ok_or_else(|| CliError::Usage(format!("missing `:` after `{label}` in `{chunk}`")))?;
        let alpha = parse_multi_index(label.trim(), ring.vars()).map_err(|e| CliError::parse(label, e))?;
        if alpha.degree() == 0 || alpha.degree() > n {
            return Err(CliError::Usage(format!("index {alpha} needs 1 <= |alpha| <= {n}")));
        }
        parts.push((alpha, parse_polynomial(poly.trim(), ring).map_err(|e| CliError::parse(poly, e))?));
    }
    ModuleVector::from_components(ring, n, parts).map_err(CliError::Core)
}

pub fn field(characteristic: u64) -> Result<FieldSpec, CliError> {
    FieldSpec::new(characteristic).map_err(|e| CliError::Usage(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infers_indexed_names() {
        assert_eq!(variable_names(None, &["x1^3 - x4"]).unwrap(), ["x1", "x2", "x3", "x4"]);
        assert_eq!(variable_names(None, &["7"]).unwrap(), ["x1"]);
        assert!(variable_names(None, &["y^2"]).is_err());
        assert!(variable_names(None, &["x01"]).is_err());
        assert_eq!(variable_names(Some("u, v"), &[]).unwrap(), ["u", "v"]);
        assert!(variable_names(Some("u,u"), &[]).is_err());
    }

    #[test]
    fn element_syntax() {
        let r = Ring::standard(2, FieldSpec::RATIONALS);
        let v = element("(1,1):3*x2;(0,2):-2*x1", &r, 2).unwrap();
        assert_eq!(v.component(&MultiIndex::new(vec![1, 1])).to_string(), "3*x2");
        assert_eq!(v.component(&MultiIndex::new(vec![0, 2])).to_string(), "-2*x1");
        assert!(element("(0,0):1", &r, 2).is_err());
        assert!(element("(1,0)3", &r, 2).is_err());
        assert!(element("(1,0):x9", &r, 2).is_err());
    }

    #[test]
    fn points() {
        let r = Ring::standard(2, FieldSpec::RATIONALS);
        let p = point("1/2, -3", &r).unwrap();
        assert_eq!(p[0].to_string(), "1/2");
        assert_eq!(p[1].to_string(), "-3");
        assert!(point("1", &r).is_err());
        assert!(point("x1,0", &r).is_err());
    }
}
