//! Surgery on codings and the combinatorial surgery graph.
//!
//! Two oriented edges `x`, `y` on distinct edges are intertwined when the
//! chord joining the sides `x`, `y` crosses the chord joining `x̄`, `ȳ` in the
//! polygon. Read cyclically from `x` this is either `x w2 x̄ w3 y w4 ȳ w1` or
//! `x w2 ȳ w3 y w4 x̄ w1`; the second shape is the first one written for
//! the pair `(x̄, ȳ)`, so the relation is symmetric under barring both.
//!
//! Cutting the four occurrences out of the cyclic word leaves four blocks.
//! Surgery swaps the block ending just before `x` with the block ending just
//! before `y`; on `w1 x w2 x̄ w3 y w4 ȳ` this is `w3 x w2 x̄ w1 y w4 ȳ`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde_json::json;

use crate::coding::{analyze, canonical_form, enumerate_maps, equivalent, Coding, Letter};
use crate::error::{Error, Result};

pub type OrientedEdge = Letter;

fn locate(c: &Coding, l: Letter) -> Result<usize> {
    c.position(l).ok_or(Error::EdgeNotPresent {
        edge: l.edge,
        edge_count: c.edge_count(),
    })
}

/// Positions of `x̄`, `y`, `ȳ` measured cyclically from `x`.
fn relative_positions(c: &Coding, x: Letter, y: Letter) -> Result<(usize, [usize; 3])> {
    let n = c.len();
    let px = locate(c, x)?;
    let rel = |p: usize| (p + n - px) % n;
    let xb = rel(locate(c, x.bar())?);
    let py = rel(locate(c, y)?);
    let yb = rel(locate(c, y.bar())?);
    if x.edge == y.edge {
        return Err(Error::SelfPair {
            x: x.to_string(),
            y: y.to_string(),
        });
    }
    Ok((px, [xb, py, yb]))
}

pub fn intertwined(c: &Coding, x: OrientedEdge, y: OrientedEdge) -> Result<bool> {
    let (_, [xb, py, yb]) = relative_positions(c, x, y)?;
    Ok((xb < py) != (yb < py))
}

fn not_intertwined(x: Letter, y: Letter) -> Error {
    Error::NotIntertwined {
        x: x.to_string(),
        xb: x.bar().to_string(),
        y: y.to_string(),
        yb: y.bar().to_string(),
    }
}

/// Rewrites `c` along the intertwined pair `(x, y)`.
///
/// Letters keep their ids and bars, so `x` and `y` still name the same
/// oriented edges in the result. When `c` reads `w1 x w2 x̄ w3 y w4 ȳ`
/// literally, the output is exactly `w3 x w2 x̄ w1 y w4 ȳ`.
pub fn do_surgery(c: &Coding, x: OrientedEdge, y: OrientedEdge) -> Result<Coding> {
    let (px, [xb, py, yb]) = relative_positions(c, x, y)?;
    if (xb < py) == (yb < py) {
        return Err(not_intertwined(x, y));
    }
    let n = c.len();
    let word = c.rotated(px);
    let w = word.letters();
    let mid = xb.min(yb);
    let last = xb.max(yb);
    // x B0 m1 B1 y B2 m3 B3, with B3 the block before x
    let b0 = &w[1..mid];
    let b1 = &w[mid + 1..py];
    let b2 = &w[py + 1..last];
    let b3 = &w[last + 1..n];
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(b1);
    out.push(w[0]);
    out.extend_from_slice(b0);
    out.push(w[mid]);
    out.extend_from_slice(b3);
    out.push(w[py]);
    out.extend_from_slice(b2);
    out.push(w[last]);
    let result = Coding::from_letters(out)?;

    let before = analyze(c);
    let after = analyze(&result);
    if after.genus != before.genus || after.degree_partition != before.degree_partition {
        return Err(Error::Internal(format!(
            "surgery {x},{y} on {c} changed genus/degrees: {result}"
        )));
    }
    Ok(result)
}

/// Every admissible ordered pair with its surgered map in canonical form.
/// Pairs on a single edge are skipped: that surgery fixes the map.
pub fn all_surgeries(c: &Coding) -> Vec<(OrientedEdge, OrientedEdge, Coding)> {
    let e = c.edge_count();
    let oriented: Vec<Letter> = (0..e)
        .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
        .collect();
    let mut out = Vec::new();
    for &x in &oriented {
        for &y in &oriented {
            if x.edge == y.edge {
                continue;
            }
            if intertwined(c, x, y).expect("letters of c") {
                let s = do_surgery(c, x, y).expect("intertwined pair");
                out.push((x, y, canonical_form(&s)));
            }
        }
    }
    out
}

/// Applies `σ_{x̄,ȳ} ∘ σ_{x,y}` and tests whether the map comes back.
pub fn double_surgery_identity(c: &Coding, x: OrientedEdge, y: OrientedEdge) -> Result<bool> {
    let once = do_surgery(c, x, y)?;
    let twice = do_surgery(&once, x.bar(), y.bar())?;
    Ok(equivalent(&twice, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphMode {
    Full,
    Bfs,
}

/// One surgery realizing an edge: `x`, `y` are letters of node `on`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub on: usize,
    pub x: OrientedEdge,
    pub y: OrientedEdge,
}

#[derive(Debug, Clone)]
pub struct SurgeryGraph {
    pub genus: usize,
    pub degrees: Vec<usize>,
    pub mode: GraphMode,
    pub nodes: Vec<Coding>,
    /// `(i, j, witness)` with `i < j`; loops are dropped, multi-edges merged.
    pub edges: Vec<(usize, usize, Witness)>,
}

impl SurgeryGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(i, j, _) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph surgery {\n");
        for (i, c) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{c}\"];\n"));
        }
        for (i, j, w) in &self.edges {
            s.push_str(&format!("  n{i} -- n{j} [label=\"{},{}\"];\n", w.x, w.y));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let metrics = graph_metrics(self);
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(
                |(i, j, w)| json!([i, j, {"on": w.on, "x": w.x.to_string(), "y": w.y.to_string()}]),
            )
            .collect();
        json!({
            "genus": self.genus,
            "degrees": self.degrees,
            "mode": match self.mode { GraphMode::Full => "full", GraphMode::Bfs => "bfs" },
            "nodes": self.nodes.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "edges": edges,
            "metrics": metrics.to_json(),
        })
    }
}

fn collect_edges(
    index: &HashMap<Coding, usize>,
    from: usize,
    moves: Vec<(Letter, Letter, Coding)>,
    edges: &mut BTreeMap<(usize, usize), Witness>,
) -> Result<()> {
    for (x, y, target) in moves {
        let to = *index.get(&target).ok_or_else(|| {
            Error::Internal(format!("surgery result {target} missing from node set"))
        })?;
        if to == from {
            continue;
        }
        let key = (from.min(to), from.max(to));
        let w = Witness { on: from, x, y };
        // prefer a witness read on the lower endpoint
        match edges.get(&key) {
            Some(old) if old.on == key.0 || from != key.0 => {}
            _ => {
                edges.insert(key, w);
            }
        }
    }
    Ok(())
}

/// Builds the surgery graph with the given genus and degree partition.
///
/// `Full` enumerates every map; `Bfs` closes `seed` under surgery.
pub fn build_surgery_graph(
    genus: usize,
    degrees: &[usize],
    mode: GraphMode,
    seed: Option<&Coding>,
) -> Result<SurgeryGraph> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let nodes = match mode {
        GraphMode::Full => enumerate_maps(genus, &sorted)?,
        GraphMode::Bfs => {
            let seed = seed.ok_or(Error::MissingSeed)?;
            let s = analyze(seed);
            if s.genus != genus || s.degree_partition != sorted {
                return Err(Error::SeedMismatch {
                    genus: s.genus,
                    degrees: s.degree_partition,
                });
            }
            bfs_closure(canonical_form(seed))
        }
    };
    let index: HashMap<Coding, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let moves: Vec<_> = nodes.par_iter().map(all_surgeries).collect();
    let mut edges = BTreeMap::new();
    for (from, m) in moves.into_iter().enumerate() {
        collect_edges(&index, from, m, &mut edges)?;
    }
    Ok(SurgeryGraph {
        genus,
        degrees: sorted,
        mode,
        nodes,
        edges: edges.into_iter().map(|((i, j), w)| (i, j, w)).collect(),
    })
}

/// Closure under surgery, returned sorted so node indices are reproducible.
fn bfs_closure(seed: Coding) -> Vec<Coding> {
    let mut seen = std::collections::HashSet::new();
    seen.insert(seed.clone());
    let mut frontier = vec![seed];
    while !frontier.is_empty() {
        let found: Vec<Coding> = frontier
            .par_iter()
            .flat_map_iter(|c| all_surgeries(c).into_iter().map(|(_, _, t)| t))
            .collect();
        frontier = found
            .into_iter()
            .filter(|t| seen.insert(t.clone()))
            .collect();
    }
    let mut nodes: Vec<Coding> = seen.into_iter().collect();
    nodes.sort();
    nodes
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMetrics {
    pub node_count: usize,
    pub edge_count: usize,
    pub components: usize,
    /// Exact diameter of each component, components ordered by smallest node.
    pub diameters: Vec<usize>,
}

impl GraphMetrics {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "nodes": self.node_count,
            "edges": self.edge_count,
            "components": self.components,
            "diameters": self.diameters,
        })
    }
}

pub fn graph_metrics(g: &SurgeryGraph) -> GraphMetrics {
    let n = g.nodes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for &(i, j, _) in &g.edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let adj = g.adjacency();
    let eccentricity: Vec<usize> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            let mut far = 0;
            while let Some(v) = q.pop_front() {
                far = far.max(dist[v]);
                for &w in &adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        q.push_back(w);
                    }
                }
            }
            far
        })
        .collect();
    let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        let d = by_root.entry(roots[v]).or_insert(0);
        *d = (*d).max(eccentricity[v]);
    }
    GraphMetrics {
        node_count: n,
        edge_count: g.edges.len(),
        components: by_root.len(),
        diameters: by_root.into_values().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::parse_coding;

    fn coding(s: &str) -> Coding {
        parse_coding(s).unwrap()
    }

    fn letter(c: &Coding, ch: char) -> Letter {
        let idx = c.to_string().find(ch).unwrap();
        c.letters()[idx]
    }

    #[test]
    fn symbolic_pattern() {
        // w1 = a, x = b, w2 = c, w3 = A, y = d, w4 = C
        let c = coding("abcBAdCD");
        let (x, y) = (letter(&c, 'b'), letter(&c, 'd'));
        assert!(intertwined(&c, x, y).unwrap());
        assert!(intertwined(&c, x.bar(), y.bar()).unwrap());
        assert!(!intertwined(&c, x, y.bar()).unwrap());
        let s = do_surgery(&c, x, y).unwrap();
        assert_eq!(s.to_string(), "AbcBadCD");
        assert_eq!(do_surgery(&s, x, y).unwrap(), c);
    }

    #[test]
    fn torus_has_no_surgery() {
        let c = coding("abAB");
        let (a, b) = (letter(&c, 'a'), letter(&c, 'b'));
        assert!(!intertwined(&c, a, b).unwrap());
        assert!(all_surgeries(&c).is_empty());
        assert!(all_surgeries(&coding("aA")).is_empty());
        assert!(matches!(
            do_surgery(&c, a, b),
            Err(Error::NotIntertwined { .. })
        ));
    }

    #[test]
    fn genus_two_word_pair() {
        let c = coding("abcdBeCfAEFD");
        let f = letter(&c, 'f');
        let dbar = letter(&c, 'D');
        assert!(intertwined(&c, f, dbar).unwrap());
        let s = do_surgery(&c, f, dbar).unwrap();
        let sum = analyze(&s);
        assert_eq!(s.len(), 12);
        assert_eq!(
            (sum.genus, sum.degree_partition.clone()),
            (2, vec![4, 4, 4])
        );
        assert!(double_surgery_identity(&c, f, dbar).unwrap());
    }

    #[test]
    fn self_pair_and_missing_edge() {
        let c = coding("abAB");
        let a = letter(&c, 'a');
        assert!(matches!(
            intertwined(&c, a, a.bar()),
            Err(Error::SelfPair { .. })
        ));
        assert!(matches!(
            intertwined(&c, a, Letter::new(7, false)),
            Err(Error::EdgeNotPresent { edge: 7, .. })
        ));
    }

    #[test]
    fn equal_blocks_swap_to_same_word() {
        // w1 = w3 = empty
        let c = coding("abAcBC");
        let (x, y) = (letter(&c, 'a'), letter(&c, 'c'));
        assert_eq!(do_surgery(&c, x, y).unwrap(), c);
    }

    #[test]
    fn single_node_metrics() {
        let g = build_surgery_graph(1, &[4], GraphMode::Full, None).unwrap();
        let m = graph_metrics(&g);
        assert_eq!((m.node_count, m.edge_count, m.components), (1, 0, 1));
        assert_eq!(m.diameters, vec![0]);
    }

    #[test]
    fn bfs_needs_matching_seed() {
        assert!(matches!(
            build_surgery_graph(1, &[4], GraphMode::Bfs, None),
            Err(Error::MissingSeed)
        ));
        let seed = coding("abAB");
        assert!(matches!(
            build_surgery_graph(2, &[4, 4, 4], GraphMode::Bfs, Some(&seed)),
            Err(Error::SeedMismatch { genus: 1, .. })
        ));
    }
}
