//! Parsing of graphs, polynomials, quadratic irrationals and lists.

use geodlab_core::ff::{FqPoly, QuadIrr, RatFunc};
use geodlab_core::graph::{fixtures, GraphOfGroups, Subgraph};

use crate::error::{CliError, Context};

/// Loads a graph document from a path, or a bundled fixture as
/// `builtin:<name>`.
pub fn load_graph(spec: &str) -> Result<GraphOfGroups, CliError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return fixtures::all()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| CliError::Usage(format!("unknown builtin graph {name}")));
    }
    let text =
        std::fs::read_to_string(spec).map_err(|e| CliError::Io { path: spec.into(), message: e.to_string() })?;
    GraphOfGroups::from_json_str(&text).op("graph", "load_validate")
}

/// A named subgraph, or the single vertex with that id.
pub fn subgraph(g: &GraphOfGroups, name: &str) -> Result<Subgraph, CliError> {
    if let Some(s) = g.subgraph(name) {
        return Ok(s.clone());
    }
    g.vertex_index(name)
        .map(|v| g.point(v))
        .ok_or_else(|| CliError::Usage(format!("{name} is neither a subgraph nor a vertex id")))
}

pub fn vertex(g: &GraphOfGroups, id: &str) -> Result<usize, CliError> {
    g.vertex_index(id).ok_or_else(|| CliError::Usage(format!("unknown vertex {id}")))
}

/// `[c0,c1,...]` (little-endian coefficients) or an expression in `Y`.
pub fn poly(q: u32, s: &str) -> Result<FqPoly, CliError> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
        let c: Vec<i64> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad coefficient {x:?}"))))
                .collect::<Result<_, _>>()?
        };
        return FqPoly::new(q, &c).op("ff", "parse");
    }
    let r = RatFunc::parse(q, t).op("ff", "parse")?;
    if !r.is_polynomial() {
        return Err(CliError::Usage(format!("{s} is not a polynomial")));
    }
    Ok(r.num().clone())
}

pub fn ratfunc(q: u32, s: &str) -> Result<RatFunc, CliError> {
    RatFunc::parse(q, s).op("ff", "parse")
}

/// `A X² + B X + C = 0`, given as `A;B;C` polynomials.
pub fn quad(q: u32, s: &str, upper: bool) -> Result<QuadIrr, CliError> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!("quadratic needs A;B;C, got {s:?}")));
    }
    QuadIrr::new(poly(q, parts[0])?, poly(q, parts[1])?, poly(q, parts[2])?, upper).op("ff", "quad")
}

pub fn reals(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad number {x:?}"))))
        .collect()
}

pub fn indices(s: &str) -> Result<Vec<u32>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| CliError::Usage(format!("bad index {x:?}"))))
        .collect()
}

/// Rows of a 0/1 matrix: `1,1;1,0`.
pub fn bool_matrix(s: &str) -> Result<Vec<Vec<bool>>, CliError> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| match x.trim() {
                    "1" => Ok(true),
                    "0" => Ok(false),
                    o => Err(CliError::Usage(format!("matrix entries must be 0 or 1, got {o:?}"))),
                })
                .collect()
        })
        .collect()
}

pub fn require_seed(seed: Option<u64>) -> Result<u64, CliError> {
    seed.ok_or_else(|| CliError::Usage("--seed is required for sampling".into()))
}
