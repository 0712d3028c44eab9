//! Checkerboard multigraphs and their `m`-reductions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::jones::PretzelSpec;

/// Largest vertex count the isomorphism search accepts.
pub const MAX_ISOMORPHISM_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("reduction cap must be at least 1")]
    ZeroCap,
    #[error("{0} vertices exceeds the isomorphism limit of {MAX_ISOMORPHISM_VERTICES}")]
    TooLarge(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An undirected loopless multigraph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: BTreeMap<(usize, usize), u32>,
}

impl Multigraph {
    pub fn new(vertex_count: usize) -> Self {
        Self { vertex_count, edges: BTreeMap::new() }
    }

    /// Adds `mult` parallel edges between `u` and `v`.
    pub fn add_edge(&mut self, u: usize, v: usize, mult: u32) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.vertex_count {
                return Err(GraphError::VertexOutOfRange { vertex: w, count: self.vertex_count });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if mult == 0 {
            return Err(GraphError::ZeroMultiplicity);
        }
        *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += mult;
        Ok(())
    }

    /// The triangle with edge multiplicities `m1, m2, m3`.
    pub fn triangle(m1: u32, m2: u32, m3: u32) -> Result<Self, GraphError> {
        let mut g = Self::new(3);
        g.add_edge(0, 1, m1)?;
        g.add_edge(1, 2, m2)?;
        g.add_edge(2, 0, m3)?;
        Ok(g)
    }

    /// The B-checkerboard graph of the pretzel knot `spec`.
    pub fn of_pretzel(spec: &PretzelSpec) -> Self {
        let [a, b, c] = spec.twists();
        Self::triangle(a, b, c).expect("pretzel twists are positive")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.edges
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    fn weighted_degrees(&self) -> Vec<(u32, usize)> {
        let mut deg = vec![(0u32, 0usize); self.vertex_count];
        for (&(u, v), &m) in &self.edges {
            for w in [u, v] {
                deg[w].0 += m;
                deg[w].1 += 1;
            }
        }
        deg
    }
}

/// Caps every multiplicity at `m`.
pub fn m_reduce(g: &Multigraph, m: u32) -> Result<Multigraph, GraphError> {
    if m == 0 {
        return Err(GraphError::ZeroCap);
    }
    Ok(Multigraph {
        vertex_count: g.vertex_count,
        edges: g.edges.iter().map(|(&k, &mult)| (k, mult.min(m))).collect(),
    })
}

/// Whether some vertex bijection carries one graph's multiplicities onto the
/// other's.
pub fn isomorphic(g1: &Multigraph, g2: &Multigraph) -> Result<bool, GraphError> {
    for g in [g1, g2] {
        if g.vertex_count > MAX_ISOMORPHISM_VERTICES {
            return Err(GraphError::TooLarge(g.vertex_count));
        }
    }
    if g1.vertex_count != g2.vertex_count || g1.edges.len() != g2.edges.len() {
        return Ok(false);
    }
    let (d1, d2) = (g1.weighted_degrees(), g2.weighted_degrees());
    let (mut s1, mut s2) = (d1.clone(), d2.clone());
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(false);
    }
    let mut map = vec![usize::MAX; g1.vertex_count];
    let mut used = vec![false; g2.vertex_count];
    Ok(extend(g1, g2, &d1, &d2, &mut map, &mut used, 0))
}

fn extend(
    g1: &Multigraph,
    g2: &Multigraph,
    d1: &[(u32, usize)],
    d2: &[(u32, usize)],
    map: &mut [usize],
    used: &mut [bool],
    next: usize,
) -> bool {
    if next == map.len() {
        return true;
    }
    for cand in 0..used.len() {
        if used[cand] || d1[next] != d2[cand] {
            continue;
        }
        let consistent = (0..next).all(|prev| g1.multiplicity(prev, next) == g2.multiplicity(map[prev], cand));
        if !consistent {
            continue;
        }
        map[next] = cand;
        used[cand] = true;
        if extend(g1, g2, d1, d2, map, used, next + 1) {
            return true;
        }
        used[cand] = false;
    }
    map[next] = usize::MAX;
    false
}

/// Whether the `(m+1)`-reductions of the two graphs are isomorphic.
pub fn same_higher_stability(g1: &Multigraph, g2: &Multigraph, m: u32) -> Result<bool, GraphError> {
    isomorphic(&m_reduce(g1, m + 1)?, &m_reduce(g2, m + 1)?)
}

/// Parses `vertices=k; edge u v mult` with statements separated by `;` or
/// newlines.
impl FromStr for Multigraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut graph: Option<Multigraph> = None;
        let statements = s.lines().enumerate().flat_map(|(i, l)| l.split(';').map(move |p| (i + 1, p.trim())));
        for (line, stmt) in statements {
            let err = |message: String| GraphError::Parse { line, message };
            if stmt.is_empty() || stmt.starts_with('#') {
                continue;
            }
            if let Some(count) = stmt.strip_prefix("vertices=") {
                if graph.is_some() {
                    return Err(err("vertex count declared twice".into()));
                }
                let n = count.trim().parse().map_err(|e| err(format!("vertex count {count:?}: {e}")))?;
                graph = Some(Multigraph::new(n));
                continue;
            }
            let words: Vec<&str> = stmt.split_whitespace().collect();
            match words.as_slice() {
                ["edge", u, v, mult] => {
                    let g = graph.as_mut().ok_or_else(|| err("edge before vertices=".into()))?;
                    let parse = |w: &str| w.parse::<usize>().map_err(|e| err(format!("{w:?}: {e}")));
                    let m = mult.parse::<u32>().map_err(|e| err(format!("{mult:?}: {e}")))?;
                    g.add_edge(parse(u)?, parse(v)?, m).map_err(|e| err(e.to_string()))?;
                }
                _ => return Err(err(format!("unrecognized statement {stmt:?}"))),
            }
        }
        graph.ok_or(GraphError::Parse { line: 1, message: "missing vertices=".into() })
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices={}", self.vertex_count)?;
        for (&(u, v), m) in &self.edges {
            write!(f, "; edge {u} {v} {m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: u32, b: u32, c: u32) -> Multigraph {
        Multigraph::triangle(a, b, c).unwrap()
    }

    fn path3() -> Multigraph {
        let mut g = Multigraph::new(4);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        g.add_edge(2, 3, 1).unwrap();
        g
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(m_reduce(&tri(5, 1, 2), 1).unwrap(), tri(1, 1, 1));
        assert_eq!(m_reduce(&tri(5, 1, 2), 2).unwrap(), tri(2, 1, 2));
        assert_eq!(m_reduce(&tri(2, 1, 2), 2).unwrap(), tri(2, 1, 2));
        assert_eq!(m_reduce(&tri(1, 1, 1), 0), Err(GraphError::ZeroCap));
    }

    #[test]
    fn isomorphism_examples() {
        assert!(isomorphic(&tri(1, 2, 3), &tri(2, 3, 1)).unwrap());
        assert!(isomorphic(&tri(1, 2, 3), &tri(3, 2, 1)).unwrap());
        assert!(!isomorphic(&tri(1, 1, 1), &path3()).unwrap());
        assert!(!isomorphic(&tri(1, 1, 2), &tri(1, 2, 2)).unwrap());
        let mut reordered = Multigraph::new(3);
        reordered.add_edge(2, 1, 2).unwrap();
        reordered.add_edge(1, 0, 1).unwrap();
        reordered.add_edge(0, 2, 1).unwrap();
        assert!(isomorphic(&tri(2, 1, 1), &reordered).unwrap());
        assert_eq!(isomorphic(&Multigraph::new(11), &Multigraph::new(11)), Err(GraphError::TooLarge(11)));
    }

    #[test]
    fn higher_stability_examples() {
        assert!(same_higher_stability(&tri(2, 1, 1), &tri(3, 1, 1), 1).unwrap());
        assert!(!same_higher_stability(&tri(2, 1, 1), &tri(3, 1, 1), 2).unwrap());
        for m in 1..5 {
            assert!(same_higher_stability(&tri(4, 2, 1), &tri(4, 2, 1), m).unwrap());
        }
    }

    #[test]
    fn literal_round_trip() {
        let g: Multigraph = "vertices=3; edge 0 1 5; edge 1 2 1; edge 2 0 2".parse().unwrap();
        assert_eq!(g, tri(5, 1, 2));
        assert_eq!(g.to_string().parse::<Multigraph>().unwrap(), g);
        let multi_line: Multigraph = "vertices=4\nedge 0 1 1\nedge 1 2 1\nedge 2 3 1\n".parse().unwrap();
        assert_eq!(multi_line, path3());
        assert!("edge 0 1 1".parse::<Multigraph>().is_err());
        assert!("vertices=2; edge 0 0 1".parse::<Multigraph>().is_err());
        assert!("vertices=2; edge 0 5 1".parse::<Multigraph>().is_err());
        assert!("vertices=2; bogus".parse::<Multigraph>().is_err());
    }
}
