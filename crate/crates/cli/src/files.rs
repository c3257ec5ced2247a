//! Readers for the auxiliary input formats: graphs, affine maps,
//! character tables, and class-value lists. All of them are
//! whitespace-separated text with one record per line.

use polychi_core::combinat::Graph;
use polychi_core::rat::parse_rat;
use polychi_core::symmetry::{AffineMap, CharacterTable};
use polychi_core::Rat;

fn nonblank_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty())
}

fn rational_row(line: &str) -> Result<Vec<Rat>, String> {
    line.split_whitespace()
        .map(|tok| parse_rat(tok).ok_or_else(|| format!("'{tok}' is not a rational number")))
        .collect()
}

/// A graph: the first non-blank line is the vertex count, every later
/// line one zero-indexed edge "u v".
pub fn parse_graph(text: &str) -> Result<Graph, String> {
    let mut lines = nonblank_lines(text);
    let n: usize = lines
        .next()
        .ok_or("the graph file is empty")?
        .parse()
        .map_err(|_| "the first line must be the vertex count".to_string())?;
    let mut edges = Vec::new();
    for line in lines {
        let mut ends = line.split_whitespace().map(|tok| {
            tok.parse::<usize>().map_err(|_| format!("'{tok}' is not a vertex index"))
        });
        match (ends.next(), ends.next(), ends.next()) {
            (Some(u), Some(v), None) => edges.push((u?, v?)),
            _ => return Err(format!("expected an edge 'u v', found '{line}'")),
        }
    }
    Graph::new(n, &edges).map_err(|e| format!("invalid graph: {e}"))
}

/// An affine map x -> Mx + b on R^d: d matrix rows of d rationals,
/// then one translation row of d rationals.
pub fn parse_affine_map(text: &str) -> Result<AffineMap, String> {
    let rows: Vec<Vec<Rat>> = nonblank_lines(text).map(rational_row).collect::<Result<_, _>>()?;
    let Some(d) = rows.first().map(Vec::len) else {
        return Err("the map file is empty".to_string());
    };
    if rows.len() != d + 1 {
        return Err(format!(
            "a map on R^{d} needs {d} matrix rows and one translation row, found {} rows",
            rows.len()
        ));
    }
    if let Some(row) = rows.iter().find(|r| r.len() != d) {
        return Err(format!("expected {d} entries per row, found {}", row.len()));
    }
    let translation = rows[d].clone();
    AffineMap::new(rows[..d].to_vec(), translation).map_err(|e| format!("invalid map: {e}"))
}

/// A character table: the first line lists the conjugacy class sizes,
/// each later line is one irreducible character's row of class values.
pub fn parse_table(text: &str) -> Result<CharacterTable, String> {
    let mut lines = nonblank_lines(text);
    let sizes: Vec<usize> = lines
        .next()
        .ok_or("the table file is empty")?
        .split_whitespace()
        .map(|tok| tok.parse::<usize>().map_err(|_| format!("'{tok}' is not a class size")))
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<Rat>> = lines.map(rational_row).collect::<Result<_, _>>()?;
    CharacterTable::new(sizes, rows).map_err(|e| format!("invalid character table: {e}"))
}

/// A whitespace-separated list of rationals, one value per conjugacy
/// class.
pub fn parse_values(text: &str) -> Result<Vec<Rat>, String> {
    let values: Vec<Rat> = text
        .split_whitespace()
        .map(|tok| parse_rat(tok).ok_or_else(|| format!("'{tok}' is not a rational number")))
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err("the values file is empty".to_string());
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polychi_core::rat_int;

    #[test]
    fn reads_a_triangle_graph() {
        let g = parse_graph("3\n0 1\n0 2\n1 2\n").unwrap();
        assert_eq!(g.n_vertices(), 3);
        assert_eq!(g.edges().len(), 3);
        assert!(parse_graph("2\n0 3\n").is_err());
        assert!(parse_graph("x\n").is_err());
        assert!(parse_graph("3\n0 1 2\n").is_err());
    }

    #[test]
    fn reads_an_affine_map() {
        let m = parse_affine_map("-1 -1\n1 0\n1 0\n").unwrap();
        assert_eq!(m.apply(&[rat_int(0), rat_int(0)]), vec![rat_int(1), rat_int(0)]);
        assert_eq!(m.apply(&[rat_int(1), rat_int(0)]), vec![rat_int(0), rat_int(1)]);
        assert!(parse_affine_map("1 0\n0 1\n").is_err());
        assert!(parse_affine_map("").is_err());
    }

    #[test]
    fn reads_a_character_table() {
        let t = parse_table("1 3 2\n1 1 1\n1 -1 1\n2 0 -1\n").unwrap();
        assert_eq!(t.group_order(), 6);
        assert_eq!(t.class_count(), 3);
        assert!(parse_table("1 3 2\n1 1 1\n").is_err());
    }

    #[test]
    fn reads_values() {
        assert_eq!(parse_values("3 -1 0\n").unwrap(), vec![rat_int(3), rat_int(-1), rat_int(0)]);
        assert_eq!(parse_values("1/2\n-2/3").unwrap().len(), 2);
        assert!(parse_values("3 x").is_err());
        assert!(parse_values("").is_err());
    }
}
