//! Plain-text edge lists: `n m` on the first line, then `m` lines `u v` with
//! 0-based endpoints, `u < v`, no duplicates.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context};
use hfrac_core::{Graph, GraphExpr, Limits};

pub fn parse(text: &str) -> anyhow::Result<Graph> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().context("empty graph file")?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .context("header must be `n m`")?;
    let [n, m] = nums[..] else { bail!("header must be `n m`") };
    let mut g = Graph::new(n);
    let mut seen = HashSet::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let ends: Vec<usize> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .with_context(|| format!("line {lineno}: expected `u v`"))?;
        let [u, v] = ends[..] else { bail!("line {lineno}: expected `u v`") };
        if u >= v {
            bail!("line {lineno}: endpoints must satisfy u < v");
        }
        if v >= n {
            bail!("line {lineno}: vertex {v} out of range for n = {n}");
        }
        if !seen.insert((u, v)) {
            bail!("line {lineno}: duplicate edge {u} {v}");
        }
        g.add_edge(u, v)?;
    }
    if seen.len() != m {
        bail!("header declares {m} edges, file lists {}", seen.len());
    }
    Ok(g)
}

pub fn write(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_file(path: &Path) -> anyhow::Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Resolves a graph expression, or a bare path to an edge-list file. Returns
/// the graph and the canonical expression string.
pub fn resolve(input: &str, limits: &Limits) -> anyhow::Result<(Graph, String)> {
    let expr: GraphExpr = match input.parse() {
        Ok(e) => e,
        Err(_) if Path::new(input).is_file() => GraphExpr::File(input.to_string()),
        Err(e) => return Err(e.into()),
    };
    let mut load_err = None;
    let built = expr.build_with(limits, &mut |p| {
        read_file(Path::new(p)).map_err(|e| {
            let msg = format!("{e:#}");
            load_err = Some(e);
            hfrac_core::Error::FileUnsupported(msg)
        })
    });
    match (built, load_err) {
        (Ok(g), _) => Ok((g, expr.to_string())),
        (Err(_), Some(e)) => Err(e),
        (Err(e), None) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = hfrac_core::graph::cycle(5).unwrap();
        let text = write(&g);
        assert!(text.starts_with("5 5\n0 1\n"));
        assert_eq!(parse(&text).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_files() {
        for bad in ["", "3", "3 1\n1 0\n", "3 1\n0 3\n", "3 2\n0 1\n0 1\n", "3 2\n0 1\n", "3 1\n0 x\n"] {
            assert!(parse(bad).is_err(), "{bad:?}");
        }
        assert_eq!(parse("2 0\n").unwrap().n(), 2);
    }

    #[test]
    fn resolves_files_inside_expressions() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.txt");
        std::fs::write(&path, "3 2\n0 1\n1 2\n").unwrap();
        let lim = Limits::default();
        let (g, canon) = resolve(path.to_str().unwrap(), &lim).unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 2));
        assert!(canon.starts_with("file:"));
        let (g, _) = resolve(&format!("complement(file:{})", path.display()), &lim).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(resolve("file:/nonexistent/x.txt", &lim).is_err());
        assert!(resolve("cycle:2", &lim).is_err());
    }
}
