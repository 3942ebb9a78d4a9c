//! Rotation systems and mod-2 homology of unicellular maps.
//!
//! Darts are half-edges: dart `2e` is the tail of edge `e`, dart `2e + 1` its
//! head. A [`RibbonGraph`] stores the cyclic order of darts around each
//! vertex; faces are the orbits of `d -> next_at_vertex(flip(d))`.
//!
//! Since the single face of a unicellular map runs over every edge twice, its
//! boundary vanishes mod 2 and the cycle space of the graph is the whole of
//! `H_1(Σ; Z/2)`. Classes are written in the fundamental-cycle basis of a
//! breadth-first spanning tree; the intersection form is read off after
//! contracting that tree.

use std::collections::VecDeque;

use serde_json::json;

use crate::coding::{analyze, Coding, Letter};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    edge_count: usize,
    rotations: Vec<Vec<usize>>,
    vertex_of: Vec<usize>,
    next: Vec<usize>,
}

impl RibbonGraph {
    pub fn from_rotations(edge_count: usize, rotations: Vec<Vec<usize>>) -> Result<Self> {
        let darts = 2 * edge_count;
        let mut vertex_of = vec![usize::MAX; darts];
        let mut next = vec![usize::MAX; darts];
        for (v, rot) in rotations.iter().enumerate() {
            for (k, &d) in rot.iter().enumerate() {
                if d >= darts {
                    return Err(Error::InvalidRotation(format!("dart {d} out of range")));
                }
                if vertex_of[d] != usize::MAX {
                    return Err(Error::InvalidRotation(format!("dart {d} listed twice")));
                }
                vertex_of[d] = v;
                next[d] = rot[(k + 1) % rot.len()];
            }
        }
        if let Some(d) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidRotation(format!("dart {d} missing")));
        }
        Ok(RibbonGraph {
            edge_count,
            rotations,
            vertex_of,
            next,
        })
    }

    pub fn edge_of(dart: usize) -> usize {
        dart / 2
    }

    /// The other half of the same edge.
    pub fn flip(dart: usize) -> usize {
        dart ^ 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edge_count
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn vertex_of(&self, dart: usize) -> usize {
        self.vertex_of[dart]
    }

    pub fn next_at_vertex(&self, dart: usize) -> usize {
        self.next[dart]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rotations.iter().map(Vec::len).collect()
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dart_count()];
        let mut faces = Vec::new();
        for start in 0..self.dart_count() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.next[Self::flip(d)];
            }
            faces.push(face);
        }
        faces
    }

    pub fn face_count(&self) -> usize {
        if self.edge_count == 0 {
            // each isolated vertex is a sphere with one face
            return self.vertex_count();
        }
        self.faces().len()
    }

    pub fn euler_characteristic(&self) -> isize {
        self.vertex_count() as isize - self.edge_count as isize + self.face_count() as isize
    }

    /// Genus of the closed surface, assuming the graph is connected.
    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.bfs_tree().1.iter().all(|&v| v)
    }

    /// Tree edge flags and reached vertices of a breadth-first search from
    /// vertex 0, scanning each rotation in order.
    fn bfs_tree(&self) -> (Vec<bool>, Vec<bool>) {
        let mut tree = vec![false; self.edge_count];
        let mut reached = vec![false; self.vertex_count()];
        if self.vertex_count() == 0 {
            return (tree, reached);
        }
        let mut queue = VecDeque::from([0]);
        reached[0] = true;
        while let Some(v) = queue.pop_front() {
            for &d in &self.rotations[v] {
                let w = self.vertex_of[Self::flip(d)];
                if !reached[w] {
                    reached[w] = true;
                    tree[Self::edge_of(d)] = true;
                    queue.push_back(w);
                }
            }
        }
        (tree, reached)
    }

    /// Spanning tree edge flags.
    pub fn spanning_tree(&self) -> Result<Vec<bool>> {
        let (tree, reached) = self.bfs_tree();
        if reached.iter().any(|&r| !r) {
            return Err(Error::Disconnected);
        }
        Ok(tree)
    }

    /// Edges outside the spanning tree, in increasing order.
    pub fn cotree_edges(&self) -> Result<Vec<usize>> {
        let tree = self.spanning_tree()?;
        Ok((0..self.edge_count).filter(|&e| !tree[e]).collect())
    }

    /// Reads the boundary word of the unique face, starting at dart 0.
    pub fn to_coding(&self) -> Result<Coding> {
        if self.edge_count == 0 {
            return Err(Error::Empty);
        }
        let faces = self.faces();
        if faces.len() != 1 {
            return Err(Error::Internal(format!(
                "ribbon graph has {} faces, expected one",
                faces.len()
            )));
        }
        let letters = faces[0]
            .iter()
            .map(|&d| Letter::new(Self::edge_of(d), d % 2 == 1))
            .collect();
        Coding::renumbered(letters)
    }
}

/// Rotation system of a coding. Vertex `k` is the `k`-th corner cycle of
/// [`analyze`]; corner `i` contributes the dart leaving it along side
/// `i + 1`.
pub fn ribbon_from_coding(c: &Coding) -> Result<RibbonGraph> {
    let summary = analyze(c);
    let n = c.len();
    let letters = c.letters();
    let dart_at = |corner: usize| {
        let l = letters[(corner + 1) % n];
        2 * l.edge + l.barred as usize
    };
    let rotations = summary
        .vertex_orbits
        .iter()
        .map(|orbit| orbit.iter().map(|&i| dart_at(i)).collect())
        .collect();
    let ribbon = RibbonGraph::from_rotations(c.edge_count(), rotations)?;
    if ribbon.face_count() != 1 {
        return Err(Error::Internal(format!(
            "{c} produced {} faces",
            ribbon.face_count()
        )));
    }
    if ribbon.genus() != summary.genus {
        return Err(Error::Internal(format!(
            "{c}: ribbon genus {} but corner count gives {}",
            ribbon.genus(),
            summary.genus
        )));
    }
    Ok(ribbon)
}

/// Result of contracting a spanning tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneVertexMap {
    /// One vertex; edge `k` is the loop coming from `loops[k]`.
    pub ribbon: RibbonGraph,
    /// Original ids of the surviving (non-tree) edges, increasing.
    pub loops: Vec<usize>,
    /// Cyclic word around the vertex, as indices into `loops`.
    pub word: Vec<usize>,
}

pub fn contract_to_one_vertex(r: &RibbonGraph) -> Result<OneVertexMap> {
    let tree = r.spanning_tree()?;
    let nv = r.vertex_count();
    let mut rep: Vec<usize> = (0..nv).collect();
    let mut rot: Vec<Vec<usize>> = r.rotations().to_vec();
    fn find(rep: &mut [usize], mut v: usize) -> usize {
        while rep[v] != v {
            rep[v] = rep[rep[v]];
            v = rep[v];
        }
        v
    }
    for e in (0..r.edge_count()).filter(|&e| tree[e]) {
        let (h, t) = (2 * e, 2 * e + 1);
        let u = find(&mut rep, r.vertex_of(h));
        let v = find(&mut rep, r.vertex_of(t));
        if u == v {
            return Err(Error::Internal(format!("tree edge {e} closes a cycle")));
        }
        let ru = std::mem::take(&mut rot[u]);
        let rv = std::mem::take(&mut rot[v]);
        let ih = ru.iter().position(|&d| d == h).expect("dart at its vertex");
        let it = rv.iter().position(|&d| d == t).expect("dart at its vertex");
        let mut merged = Vec::with_capacity(ru.len() + rv.len() - 2);
        merged.extend(ru[ih + 1..].iter().chain(&ru[..ih]));
        merged.extend(rv[it + 1..].iter().chain(&rv[..it]));
        rot[u] = merged;
        rep[v] = u;
    }
    let root = find(&mut rep, 0);
    let loops: Vec<usize> = (0..r.edge_count()).filter(|&e| !tree[e]).collect();
    let mut index = vec![usize::MAX; r.edge_count()];
    for (k, &e) in loops.iter().enumerate() {
        index[e] = k;
    }
    let darts: Vec<usize> = rot[root]
        .iter()
        .map(|&d| 2 * index[RibbonGraph::edge_of(d)] + d % 2)
        .collect();
    let word = darts.iter().map(|&d| RibbonGraph::edge_of(d)).collect();
    let ribbon = RibbonGraph::from_rotations(loops.len(), vec![darts])?;
    if ribbon.face_count() != r.face_count() || ribbon.genus() != r.genus() {
        return Err(Error::Internal(
            "contraction changed the surface".to_string(),
        ));
    }
    Ok(OneVertexMap {
        ribbon,
        loops,
        word,
    })
}

/// Rank over GF(2) of a 0/1 matrix.
pub fn gf2_rank(matrix: &[Vec<u8>]) -> usize {
    let mut rows: Vec<Vec<u8>> = matrix.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] & 1 == 1 {
                for (a, b) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Mod-2 intersection pairing on the fundamental cycles of the non-tree
/// edges listed in `basis_edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod2Form {
    pub basis_edges: Vec<usize>,
    pub matrix: Vec<Vec<u8>>,
}

impl Mod2Form {
    pub fn dim(&self) -> usize {
        self.basis_edges.len()
    }

    pub fn rank(&self) -> usize {
        gf2_rank(&self.matrix)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.dim()).all(|i| self.matrix[i][i] == 0)
    }

    /// Rows printed as strings of 0/1.
    pub fn to_rows(&self) -> Vec<String> {
        self.matrix
            .iter()
            .map(|row| row.iter().map(|b| char::from(b'0' + b)).collect())
            .collect()
    }
}

/// Chord-interleaving rule on the contracted word: loops `i` and `j` pair to
/// 1 iff their occurrences alternate `i .. j .. i .. j`.
pub fn intersection_form(c: &Coding) -> Result<Mod2Form> {
    let ribbon = ribbon_from_coding(c)?;
    let one = contract_to_one_vertex(&ribbon)?;
    let k = one.loops.len();
    let mut pos = vec![Vec::with_capacity(2); k];
    for (i, &l) in one.word.iter().enumerate() {
        pos[l].push(i);
    }
    let mut matrix = vec![vec![0u8; k]; k];
    for i in 0..k {
        let (a, b) = (pos[i][0], pos[i][1]);
        for j in 0..k {
            if i == j {
                continue;
            }
            let inside = pos[j].iter().filter(|&&p| a < p && p < b).count();
            matrix[i][j] = (inside == 1) as u8;
        }
    }
    let form = Mod2Form {
        basis_edges: one.loops,
        matrix,
    };
    let expected = 2 * ribbon.genus();
    if form.dim() != expected {
        return Err(Error::Internal(format!(
            "basis of size {} for genus {}",
            form.dim(),
            ribbon.genus()
        )));
    }
    if !form.is_symmetric() || !form.has_zero_diagonal() {
        return Err(Error::Internal("form is not alternating".to_string()));
    }
    let rank = form.rank();
    if rank != expected {
        return Err(Error::Degenerate { rank, expected });
    }
    Ok(form)
}

/// A mod-2 class in fundamental-cycle coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleVector {
    pub basis_edges: Vec<usize>,
    pub bits: Vec<u8>,
}

impl CycleVector {
    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Coordinates of an edge set that is a cycle: its restriction to the
    /// non-tree edges.
    pub fn from_cycle(basis_edges: &[usize], edge_bits: &[u8]) -> Self {
        CycleVector {
            basis_edges: basis_edges.to_vec(),
            bits: basis_edges.iter().map(|&e| edge_bits[e] & 1).collect(),
        }
    }

    /// Unit vector on basis position `i`.
    pub fn basis(basis_edges: &[usize], i: usize) -> Self {
        let mut bits = vec![0; basis_edges.len()];
        bits[i] = 1;
        CycleVector {
            basis_edges: basis_edges.to_vec(),
            bits,
        }
    }
}

/// The surgery invariant `[G]`: the sum of all edges, which is a cycle when
/// every vertex has even degree.
pub fn graph_class(c: &Coding) -> Result<CycleVector> {
    let summary = analyze(c);
    if let Some(&odd) = summary.degree_partition.iter().find(|&&d| d % 2 == 1) {
        return Err(Error::WrongDegree {
            degree: odd,
            required: "of even degree",
        });
    }
    let ribbon = ribbon_from_coding(c)?;
    let basis = ribbon.cotree_edges()?;
    let all_edges = vec![1u8; c.edge_count()];
    let class = CycleVector::from_cycle(&basis, &all_edges);
    if summary.genus >= 1 && class.is_zero() {
        return Err(Error::Internal(format!("{c} has a zero surgery invariant")));
    }
    Ok(class)
}

/// `aᵀ · f · b` over GF(2).
pub fn pair_classes(a: &CycleVector, b: &CycleVector, form: &Mod2Form) -> Result<u8> {
    let n = form.dim();
    for len in [a.bits.len(), b.bits.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                left: len,
                right: n,
            });
        }
    }
    let mut acc = 0u8;
    for i in 0..n {
        for j in 0..n {
            acc ^= a.bits[i] & form.matrix[i][j] & b.bits[j];
        }
    }
    Ok(acc)
}

/// `{"basis_edges": [...], "form": [[...]], "graph_class": [...]}`; edge ids
/// are 1-based to match the extended coding syntax. The class is `null`
/// when some vertex has odd degree.
pub fn homology_json(c: &Coding) -> Result<serde_json::Value> {
    let form = intersection_form(c)?;
    let class = match graph_class(c) {
        Ok(v) => Some(v.bits),
        Err(Error::WrongDegree { .. }) => None,
        Err(e) => return Err(e),
    };
    let ids: Vec<usize> = form.basis_edges.iter().map(|e| e + 1).collect();
    Ok(json!({
        "basis_edges": ids,
        "form": form.matrix,
        "graph_class": class,
    }))
}
