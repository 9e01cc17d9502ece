//! Line-oriented text formats for labeled polytopes and reflection systems.

use coxdeform_core::linalg::{Covector, Vector};
use coxdeform_core::polytope::{CombinatorialPolytope, LabeledPolytope, PolytopeError};
use coxdeform_core::rational::{parse_rational, Rational};
use coxdeform_core::vinberg::{ReflectionSystem, VinbergError};
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error("invalid polytope: {0}")]
    Polytope(#[from] PolytopeError),
    #[error("invalid reflection system: {0}")]
    System(#[from] VinbergError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// A parsed polytope file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile {
    pub name: String,
    pub polytope: LabeledPolytope,
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((k + 1, tokens))
    })
}

fn index(line: usize, tok: &str) -> Result<usize, FormatError> {
    match tok.parse::<usize>() {
        Ok(0) => Err(syntax(line, "facet indices are 1-based")),
        Ok(i) => Ok(i - 1),
        Err(_) => Err(syntax(line, format!("expected a facet index, got {tok:?}"))),
    }
}

fn label(line: usize, tok: &str) -> Result<u32, FormatError> {
    if tok.eq_ignore_ascii_case("inf") || tok == "∞" {
        return Err(syntax(line, "infinite labels are written by leaving facets non-adjacent"));
    }
    tok.parse::<u32>().map_err(|_| syntax(line, format!("expected an integer label, got {tok:?}")))
}

pub fn parse_polytope(text: &str) -> Result<PolytopeFile, FormatError> {
    let mut name = None;
    let mut facets = None;
    let mut edges = Vec::new();
    let mut vertices = Vec::new();
    for (line, tokens) in content_lines(text) {
        match tokens[0] {
            "polytope" => {
                if name.is_some() {
                    return Err(syntax(line, "second `polytope` line"));
                }
                if tokens.len() < 2 {
                    return Err(syntax(line, "`polytope` needs a name"));
                }
                name = Some(tokens[1..].join(" "));
            }
            "facets" => {
                if facets.is_some() {
                    return Err(syntax(line, "second `facets` line"));
                }
                if tokens.len() != 2 {
                    return Err(syntax(line, "`facets` takes one count"));
                }
                let f = tokens[1].parse::<usize>().map_err(|_| syntax(line, format!("bad facet count {:?}", tokens[1])))?;
                facets = Some(f);
            }
            "edge" => {
                if tokens.len() != 4 {
                    return Err(syntax(line, "`edge` takes two facet indices and a label"));
                }
                edges.push((index(line, tokens[1])?, index(line, tokens[2])?, label(line, tokens[3])?));
            }
            "vertex" => {
                if tokens.len() < 4 {
                    return Err(syntax(line, "`vertex` needs at least three facet indices"));
                }
                let v = tokens[1..].iter().map(|t| index(line, t)).collect::<Result<Vec<_>, _>>()?;
                vertices.push(v);
            }
            other => return Err(syntax(line, format!("unknown keyword {other:?}"))),
        }
    }
    let name = name.ok_or(FormatError::Missing("polytope"))?;
    let facets = facets.ok_or(FormatError::Missing("facets"))?;
    let polytope = LabeledPolytope::from_labeled_ridges(facets, &edges, vertices)?;
    Ok(PolytopeFile { name, polytope })
}

/// Writes ridges and vertices in the stored (sorted) order, 1-based.
pub fn serialize_polytope(name: &str, p: &LabeledPolytope) -> String {
    let mut out = String::new();
    let poly = p.polytope();
    let _ = writeln!(out, "polytope {name}");
    let _ = writeln!(out, "facets {}", poly.facet_count());
    for (i, j, m) in p.labeled_ridges() {
        let _ = writeln!(out, "edge {} {} {}", i + 1, j + 1, m);
    }
    for v in poly.vertices() {
        out.push_str("vertex");
        for x in v {
            let _ = write!(out, " {}", x + 1);
        }
        out.push('\n');
    }
    out
}

/// Catalog entries carry no labels; every ridge is written with label 2.
pub fn serialize_combinatorial(name: &str, p: &CombinatorialPolytope) -> String {
    let labeled = LabeledPolytope::uniform(p.clone(), 2).expect("2 is a valid label");
    serialize_polytope(name, &labeled)
}

fn coords(line: usize, tokens: &[&str]) -> Result<[Rational; 4], FormatError> {
    if tokens.len() != 4 {
        return Err(syntax(line, format!("expected 4 coordinates, got {}", tokens.len())));
    }
    let mut out: [Rational; 4] = Default::default();
    for (slot, tok) in out.iter_mut().zip(tokens) {
        *slot = parse_rational(tok).ok_or_else(|| syntax(line, format!("bad rational {tok:?}")))?;
    }
    Ok(out)
}

fn place<T>(line: usize, slots: &mut Vec<Option<T>>, i: usize, value: T, what: &str) -> Result<(), FormatError> {
    if slots.len() <= i {
        slots.resize_with(i + 1, || None);
    }
    if slots[i].is_some() {
        return Err(syntax(line, format!("{what} {} given twice", i + 1)));
    }
    slots[i] = Some(value);
    Ok(())
}

/// `alpha <i> a b c d` and `v <i> a b c d` lines, indices 1-based.
pub fn parse_system(text: &str) -> Result<ReflectionSystem, FormatError> {
    let mut alphas: Vec<Option<Covector>> = Vec::new();
    let mut vectors: Vec<Option<Vector>> = Vec::new();
    for (line, tokens) in content_lines(text) {
        if tokens.len() < 2 {
            return Err(syntax(line, "expected `alpha <i> ...` or `v <i> ...`"));
        }
        let i = index(line, tokens[1])?;
        let c = coords(line, &tokens[2..])?;
        match tokens[0] {
            "alpha" => place(line, &mut alphas, i, Covector::new(c), "alpha")?,
            "v" => place(line, &mut vectors, i, Vector::new(c), "v")?,
            other => return Err(syntax(line, format!("unknown keyword {other:?}"))),
        }
    }
    let alphas: Vec<Covector> = alphas.into_iter().collect::<Option<_>>().ok_or(FormatError::Missing("alpha"))?;
    let vectors: Vec<Vector> = vectors.into_iter().collect::<Option<_>>().ok_or(FormatError::Missing("v"))?;
    Ok(ReflectionSystem::new(alphas, vectors)?)
}

pub fn serialize_system(s: &ReflectionSystem) -> String {
    let mut out = String::new();
    for (i, a) in s.alphas().iter().enumerate() {
        let c: Vec<String> = a.coords().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "alpha {} {}", i + 1, c.join(" "));
    }
    for (i, v) in s.vectors().iter().enumerate() {
        let c: Vec<String> = v.coords().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "v {} {}", i + 1, c.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TETRA: &str = "# all-3 tetrahedron\npolytope tetra\nfacets 4\nedge 1 2 3\nedge 1 3 3\nedge 1 4 3\nedge 2 3 3\nedge 2 4 3\nedge 3 4 3\nvertex 1 2 3\nvertex 1 2 4\nvertex 1 3 4\nvertex 2 3 4\n";

    #[test]
    fn tetrahedron_round_trip() {
        let f = parse_polytope(TETRA).unwrap();
        assert_eq!(f.name, "tetra");
        let s = f.polytope.edge_stats();
        assert_eq!((f.polytope.facet_count(), s.e, s.e2), (4, 6, 0));
        let text = serialize_polytope(&f.name, &f.polytope);
        assert_eq!(text, TETRA.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
    }

    #[test]
    fn syntax_error_reports_line() {
        let bad = TETRA.replace("edge 2 4 3", "edge 2 x 3");
        assert!(matches!(parse_polytope(&bad), Err(FormatError::Syntax { line: 8, .. })));
        let bad = TETRA.replace("edge 2 4 3", "edge 2 0 3");
        assert!(matches!(parse_polytope(&bad), Err(FormatError::Syntax { line: 8, .. })));
        let bad = TETRA.replace("edge 2 4 3", "edge 2 4 inf");
        assert!(matches!(parse_polytope(&bad), Err(FormatError::Syntax { line: 8, .. })));
    }

    #[test]
    fn invariant_error_is_named() {
        let bad = TETRA.replace("vertex 2 3 4\n", "");
        let err = parse_polytope(&bad).unwrap_err();
        assert!(matches!(err, FormatError::Polytope(PolytopeError::Euler { .. })), "{err}");
        assert!(err.to_string().contains("Euler"));
    }

    #[test]
    fn system_round_trip() {
        let text = "alpha 1 1 0 0 0\nalpha 2 0 1 0 0\nv 1 2 -1/2 0 0\nv 2 -3/2 2 0 0\n";
        let s = parse_system(text).unwrap();
        assert_eq!(serialize_system(&s), text);
        assert!(matches!(parse_system("alpha 1 1 0 0\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_system("alpha 1 1 0 0 0\nv 2 1 0 0 0\n"), Err(FormatError::Missing("v"))));
    }
}
