//! Structure files: a TOML document naming the dimension, the Christoffel
//! symbols of a connection, and optional extras for the verification run.
//!
//! ```toml
//! n = 2
//! seed = 7                      # optional, recorded in reports
//! base = ["x", "y"]             # optional, defaults to x1..xn
//! fibre = ["p", "q"]            # optional, defaults to p1..pn
//! volume = "1"                  # optional density f in f dx1^...^dxn
//! conformal_factor = "1 + x"    # optional Ω, in base and fibre variables
//!
//! [christoffel]                 # Γ^c_ab with 1-based "c,a,b" keys
//! "1,2,2" = "x"
//!
//! [perturbation]                # added to g(∂x_a, ∂x_b), 1-based "a,b" keys
//! "1,2" = "1/2"
//! ```

use crate::expr::{parse_poly, ExprError};
use fefferman_core::exact::{MultiPoly, RatFunc};
use fefferman_core::projective::{is_special, ProjectiveStructure};
use fefferman_core::pw::PwStructure;
use fefferman_core::tensor::{Connection, TensorField, Variance};
use fefferman_core::verify::{perturbed_pw, Candidate, VerifyError};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;
use toml::Spanned;

#[derive(Debug, thiserror::Error)]
pub enum StructureError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Syntax(String),
    #[error("{line}:{column}: in {field}: {message}")]
    Expr { field: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Schema(String),
    #[error("Γ^{c}_{{{a}{b}}} = {left} but Γ^{c}_{{{b}{a}}} = {right}; Christoffel symbols must be symmetric")]
    Asymmetric { c: usize, a: usize, b: usize, left: String, right: String },
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    n: usize,
    seed: Option<u64>,
    base: Option<Vec<String>>,
    fibre: Option<Vec<String>>,
    volume: Option<Spanned<String>>,
    conformal_factor: Option<Spanned<String>>,
    #[serde(default)]
    christoffel: BTreeMap<String, Spanned<String>>,
    #[serde(default)]
    perturbation: BTreeMap<String, Spanned<String>>,
}

#[derive(Debug)]
pub struct Structure {
    pub name: String,
    pub n: usize,
    pub base: Vec<String>,
    pub fibre: Vec<String>,
    pub seed: Option<u64>,
    pub projective: ProjectiveStructure,
    /// Symmetric `n × n` block added to the Walker metric, in `2n` variables.
    pub perturbation: Option<Vec<Vec<RatFunc>>>,
    pub conformal_factor: Option<RatFunc>,
    /// Warnings produced while normalizing the input.
    pub notes: Vec<String>,
}

impl Structure {
    pub fn chart_names(&self) -> Vec<String> {
        self.base.iter().chain(&self.fibre).cloned().collect()
    }

    pub fn pw(&self) -> Result<PwStructure, VerifyError> {
        PwStructure::new(self.projective.clone()).map_err(|_| VerifyError::NotSpecial)
    }

    /// The Walker metric under test, with the seed and conformal factor attached.
    pub fn candidate(&self) -> Result<Candidate, VerifyError> {
        let mut c = match &self.perturbation {
            None => Candidate::from_projective(self.name.clone(), self.projective.clone())?,
            Some(b) => Candidate::from_walker(self.name.clone(), perturbed_pw(&self.pw()?, b)?)?,
        };
        if let Some(seed) = self.seed {
            c = c.with_seed(seed);
        }
        if let Some(omega) = &self.conformal_factor {
            c = c.with_scale(omega.clone())?;
        }
        Ok(c)
    }
}

pub fn read_structure(path: &Path) -> Result<Structure, StructureError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| StructureError::Io { path: path.display().to_string(), source })?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    parse_structure(&text, &name)
}

pub fn parse_structure(text: &str, name: &str) -> Result<Structure, StructureError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| StructureError::Syntax(e.to_string().trim_end().to_string()))?;
    let n = raw.n;
    if n < 2 {
        return Err(StructureError::Schema(format!("n must be at least 2, got {n}")));
    }
    let base = names(raw.base, n, "x", "base")?;
    let fibre = names(raw.fibre, n, "p", "fibre")?;
    let chart: Vec<String> = base.iter().chain(&fibre).cloned().collect();
    if let Some(dup) = chart.iter().enumerate().find(|(i, s)| chart[..*i].contains(s)) {
        return Err(StructureError::Schema(format!("variable '{}' declared twice", dup.1)));
    }
    let expr = |field: String, s: &Spanned<String>, vars: &[String]| {
        parse_poly(s.get_ref(), vars).map_err(|e| locate(text, s, field, e))
    };

    let mut entries: BTreeMap<(usize, usize, usize), (MultiPoly, String)> = BTreeMap::new();
    for (key, value) in &raw.christoffel {
        let idx = indices(key, 3, n, "christoffel")?;
        let poly = expr(format!("christoffel.\"{key}\""), value, &base)?;
        entries.insert((idx[0], idx[1], idx[2]), (poly, value.get_ref().clone()));
    }
    let mut gamma = TensorField::zeros(n, n, vec![Variance::Up, Variance::Down, Variance::Down]);
    for (&(c, a, b), (poly, src)) in &entries {
        if let Some((other, other_src)) = entries.get(&(c, b, a)) {
            if other != poly {
                return Err(StructureError::Asymmetric {
                    c: c + 1,
                    a: a + 1,
                    b: b + 1,
                    left: src.clone(),
                    right: other_src.clone(),
                });
            }
        }
        gamma.set(&[c, a, b], RatFunc::from_poly(poly.clone()));
        gamma.set(&[c, b, a], RatFunc::from_poly(poly.clone()));
    }
    let connection = Connection::new(gamma).expect("symmetrized above");

    let mut notes = Vec::new();
    let projective = match &raw.volume {
        Some(v) => {
            let vol = expr("volume".into(), v, &base)?;
            if vol.is_zero() {
                return Err(StructureError::Schema("volume density must be nonzero".into()));
            }
            if is_special(&connection, &vol) {
                ProjectiveStructure::new(connection, vol).map_err(|e| StructureError::Schema(e.to_string()))?
            } else {
                notes.push(format!(
                    "warning: the connection does not preserve the declared volume '{}'; using the coordinate volume",
                    v.get_ref()
                ));
                special(connection, &mut notes)?
            }
        }
        None => special(connection, &mut notes)?,
    };

    let d = 2 * n;
    let perturbation = if raw.perturbation.is_empty() {
        None
    } else {
        let mut block = vec![vec![RatFunc::zero(d); n]; n];
        let mut seen: BTreeMap<(usize, usize), MultiPoly> = BTreeMap::new();
        for (key, value) in &raw.perturbation {
            let idx = indices(key, 2, n, "perturbation")?;
            let poly = expr(format!("perturbation.\"{key}\""), value, &chart)?;
            if let Some(other) = seen.get(&(idx[1], idx[0])) {
                if *other != poly {
                    return Err(StructureError::Schema(format!(
                        "perturbation entries \"{},{}\" and \"{},{}\" differ; the block must be symmetric",
                        idx[0] + 1,
                        idx[1] + 1,
                        idx[1] + 1,
                        idx[0] + 1
                    )));
                }
            }
            block[idx[0]][idx[1]] = RatFunc::from_poly(poly.clone());
            block[idx[1]][idx[0]] = RatFunc::from_poly(poly.clone());
            seen.insert((idx[0], idx[1]), poly);
        }
        Some(block)
    };

    let conformal_factor = match &raw.conformal_factor {
        Some(s) => {
            let omega = expr("conformal_factor".into(), s, &chart)?;
            if omega.is_zero() {
                return Err(StructureError::Schema("conformal_factor must be nonzero".into()));
            }
            Some(RatFunc::from_poly(omega))
        }
        None => None,
    };

    Ok(Structure {
        name: name.to_string(),
        n,
        base,
        fibre,
        seed: raw.seed,
        projective,
        perturbation,
        conformal_factor,
        notes,
    })
}

fn special(connection: Connection, notes: &mut Vec<String>) -> Result<ProjectiveStructure, StructureError> {
    let p = ProjectiveStructure::from_connection(connection).map_err(|e| StructureError::Schema(e.to_string()))?;
    notes.extend(p.notes().iter().map(|s| format!("note: {s}")));
    Ok(p)
}

fn names(given: Option<Vec<String>>, n: usize, prefix: &str, field: &str) -> Result<Vec<String>, StructureError> {
    let v = given.unwrap_or_else(|| (1..=n).map(|i| format!("{prefix}{i}")).collect());
    if v.len() != n {
        return Err(StructureError::Schema(format!("{field} lists {} names but n = {n}", v.len())));
    }
    for s in &v {
        let ok = s.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && s.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(StructureError::Schema(format!("'{s}' is not a valid variable name")));
        }
    }
    Ok(v)
}

/// Parses a 1-based `"i,j,..."` key into 0-based indices below `n`.
fn indices(key: &str, count: usize, n: usize, table: &str) -> Result<Vec<usize>, StructureError> {
    let bad = || {
        StructureError::Schema(format!(
            "{table} key \"{key}\" must be {count} comma-separated indices between 1 and {n}"
        ))
    };
    let idx: Vec<usize> = key
        .split(',')
        .map(|s| s.trim().parse::<usize>().ok().filter(|&i| (1..=n).contains(&i)).map(|i| i - 1))
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    if idx.len() != count {
        return Err(bad());
    }
    Ok(idx)
}

/// Converts an expression-relative position into a file position.
fn locate(text: &str, s: &Spanned<String>, field: String, e: ExprError) -> StructureError {
    let start = s.span().start;
    let quote = ["\"\"\"", "'''"].iter().find(|q| text[start..].starts_with(**q)).map_or(1, |q| q.len());
    let mut body = start + quote;
    // multi-line strings drop a newline right after the opening delimiter
    if quote == 3 && text[body..].starts_with('\n') {
        body += 1;
    }
    let before = &text[..body];
    let line0 = before.matches('\n').count() + 1;
    let col0 = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    let (line, column) = if e.line == 1 { (line0, col0 + e.column - 1) } else { (line0 + e.line - 1, e.column) };
    StructureError::Expr { field, line, column, message: e.message }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fefferman_core::exact::rat;

    #[test]
    fn minimal_file() {
        let s = parse_structure("n = 2\n[christoffel]\n\"1,2,2\" = \"x1\"\n", "g").unwrap();
        let g = s.projective.connection();
        assert_eq!(g.g(0, 1, 1), &RatFunc::var(2, 0));
        assert!(g.g(1, 0, 0).is_zero());
        assert!(s.notes.is_empty());
        assert_eq!(s.chart_names(), ["x1", "x2", "p1", "p2"]);
    }

    #[test]
    fn rational_coefficients_and_custom_names() {
        let text = "n = 2\nbase = [\"u\", \"v\"]\n[christoffel]\n\"1,2,2\" = \"u^2/3 + 1/2\"\n";
        let s = parse_structure(text, "g").unwrap();
        let u = RatFunc::var(2, 0);
        let want = &(&u * &u).scale(&rat(1, 3)) + &RatFunc::constant(2, rat(1, 2));
        assert_eq!(s.projective.connection().g(0, 1, 1), &want);
    }

    #[test]
    fn asymmetric_symbols_are_rejected() {
        let text = "n = 2\n[christoffel]\n\"1,1,2\" = \"x1\"\n\"1,2,1\" = \"x2\"\n";
        let e = parse_structure(text, "g").unwrap_err();
        assert!(matches!(e, StructureError::Asymmetric { c: 1, .. }), "{e}");
    }

    #[test]
    fn expression_errors_point_into_the_file() {
        let text = "n = 2\n[christoffel]\n\"1,2,2\" = \"x1 + y\"\n";
        match parse_structure(text, "g").unwrap_err() {
            StructureError::Expr { line, column, message, .. } => {
                assert_eq!((line, column), (3, 17));
                assert!(message.contains("unknown variable"));
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn non_special_input_is_normalized_with_a_note() {
        let text = "n = 2\n[christoffel]\n\"1,1,1\" = \"x1\"\n";
        let s = parse_structure(text, "g").unwrap();
        assert!(s.projective.is_special());
        assert_eq!(s.notes.len(), 1);
    }

    #[test]
    fn schema_errors() {
        assert!(parse_structure("n = 1\n", "g").is_err());
        assert!(parse_structure("n = 2\nbase = [\"x\"]\n", "g").is_err());
        assert!(parse_structure("n = 2\n[christoffel]\n\"1,3,1\" = \"1\"\n", "g").is_err());
        assert!(parse_structure("n = 2\n[christoffel]\n\"1,2\" = \"1\"\n", "g").is_err());
        assert!(parse_structure("n = 2\ncolour = 3\n", "g").is_err());
        assert!(parse_structure("n = 2\nbase = [\"x\", \"p1\"]\n", "g").is_err());
    }

    #[test]
    fn perturbation_and_scale() {
        let text = "n = 2\nconformal_factor = \"1 + p1\"\n[perturbation]\n\"1,2\" = \"1/2\"\n";
        let s = parse_structure(text, "g").unwrap();
        let b = s.perturbation.as_ref().unwrap();
        assert_eq!(b[1][0], RatFunc::constant(4, rat(1, 2)));
        let c = s.candidate().unwrap();
        assert!(c.projective().is_none());
        assert!(c.scale().is_some());
    }
}
