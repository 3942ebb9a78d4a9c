//! Codings of unicellular maps.
//!
//! The complement of a unicellular graph is a single polygon. Reading its
//! sides along the boundary orientation gives a cyclic word in which every
//! edge appears twice, once as `x` and once as `x̄`. That word is a complete
//! invariant of the map up to rotation and relabeling.
//!
//! Corner convention: corner `i` is the polygon vertex sitting in the gap
//! after side `i`. Gluing side `p` to its partner side `q` (with reversal)
//! identifies corner `p - 1` with corner `q` and corner `p` with corner
//! `q - 1`, so the next corner around the same surface vertex is
//! `partner(i + 1)`. Vertices are the cycles of that corner permutation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::homology::{ribbon_from_coding, RibbonGraph};

/// Largest word length `enumerate_maps` will attempt.
pub const ENUMERATION_CAP: usize = 16;

const UNSET: usize = usize::MAX;

/// One side of the polygon: an edge traversed in its own direction (`x`) or
/// against it (`x̄`). Edge ids are dense and zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter {
    pub edge: usize,
    pub barred: bool,
}

impl Letter {
    pub fn new(edge: usize, barred: bool) -> Self {
        Letter { edge, barred }
    }

    pub fn bar(self) -> Self {
        Letter {
            edge: self.edge,
            barred: !self.barred,
        }
    }

    fn compact_char(self) -> Option<char> {
        if self.edge >= 26 {
            return None;
        }
        let base = if self.barred { b'A' } else { b'a' };
        Some((base + self.edge as u8) as char)
    }

    /// Signed 1-based form used by the extended text syntax.
    pub fn signed(self) -> i64 {
        let k = self.edge as i64 + 1;
        if self.barred {
            -k
        } else {
            k
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.compact_char() {
            Some(ch) => write!(f, "{ch}"),
            None => write!(f, "{:+}", self.signed()),
        }
    }
}

/// A validated coding: every edge id in `0..E` occurs exactly twice, once
/// barred and once unbarred.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coding {
    letters: Vec<Letter>,
    edge_count: usize,
}

impl Coding {
    /// Validates a word whose edge ids are already dense.
    pub fn from_letters(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Empty);
        }
        let mut seen: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for l in &letters {
            let entry = seen.entry(l.edge).or_default();
            if l.barred {
                entry.1 += 1;
            } else {
                entry.0 += 1;
            }
        }
        for (&edge, &(plain, barred)) in &seen {
            let name = Letter::new(edge, false).to_string();
            if plain + barred != 2 {
                return Err(Error::LetterCount {
                    letter: name,
                    count: plain + barred,
                });
            }
            if plain != 1 {
                return Err(Error::SameOrientation { letter: name });
            }
        }
        let edge_count = letters.len() / 2;
        if let Some((&max, _)) = seen.iter().next_back() {
            if max >= edge_count {
                return Err(Error::EdgeNotPresent {
                    edge: max,
                    edge_count,
                });
            }
        }
        Ok(Coding {
            letters,
            edge_count,
        })
    }

    /// Validates a word after renumbering its edges densely by first
    /// appearance. Bars are kept as given.
    pub fn renumbered(letters: Vec<Letter>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut out = Vec::with_capacity(letters.len());
        for l in letters {
            let next = map.len();
            let id = *map.entry(l.edge).or_insert(next);
            out.push(Letter::new(id, l.barred));
        }
        Coding::from_letters(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// `partners()[i]` is the position of the other side glued to side `i`.
    pub fn partners(&self) -> Vec<usize> {
        let mut first = vec![UNSET; self.edge_count];
        let mut partner = vec![UNSET; self.letters.len()];
        for (i, l) in self.letters.iter().enumerate() {
            let j = first[l.edge];
            if j == UNSET {
                first[l.edge] = i;
            } else {
                partner[i] = j;
                partner[j] = i;
            }
        }
        partner
    }

    pub fn position(&self, letter: Letter) -> Option<usize> {
        self.letters.iter().position(|&l| l == letter)
    }

    /// The same cyclic word read from position `k`.
    pub fn rotated(&self, k: usize) -> Coding {
        let n = self.letters.len();
        let letters = (0..n).map(|i| self.letters[(k + i) % n]).collect();
        Coding {
            letters,
            edge_count: self.edge_count,
        }
    }

    /// Case-encoded form, available up to 26 edges.
    pub fn to_compact(&self) -> Option<String> {
        self.letters.iter().map(|l| l.compact_char()).collect()
    }

    /// Whitespace-separated signed 1-based edge ids.
    pub fn to_extended(&self) -> String {
        self.letters
            .iter()
            .map(|l| format!("{:+}", l.signed()))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Coding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_compact() {
            Some(s) => f.write_str(&s),
            None => f.write_str(&self.to_extended()),
        }
    }
}

impl FromStr for Coding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_coding(s)
    }
}

/// Parses compact (`abAB`) or extended (`+1 +2 -1 -2`) text.
///
/// Edge ids are renumbered densely by first appearance.
pub fn parse_coding(text: &str) -> Result<Coding> {
    let mut raw: Vec<(u64, bool, String)> = Vec::new();
    if text.chars().any(|c| c.is_ascii_digit()) {
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v: i64 = tok.parse().map_err(|_| Error::BadToken(tok.to_string()))?;
            if v == 0 {
                return Err(Error::BadToken(tok.to_string()));
            }
            raw.push((v.unsigned_abs(), v < 0, v.unsigned_abs().to_string()));
        }
    } else {
        for ch in text.chars().filter(|c| !c.is_whitespace()) {
            if !ch.is_ascii_alphabetic() {
                return Err(Error::BadToken(ch.to_string()));
            }
            let lower = ch.to_ascii_lowercase();
            raw.push((lower as u64, ch.is_ascii_uppercase(), lower.to_string()));
        }
    }
    if raw.is_empty() {
        return Err(Error::Empty);
    }

    let mut stats: BTreeMap<u64, (usize, usize, String)> = BTreeMap::new();
    for (key, barred, name) in &raw {
        let e = stats.entry(*key).or_insert((0, 0, name.clone()));
        if *barred {
            e.1 += 1;
        } else {
            e.0 += 1;
        }
    }
    for (plain, barred, name) in stats.values() {
        if plain + barred != 2 {
            return Err(Error::LetterCount {
                letter: name.clone(),
                count: plain + barred,
            });
        }
        if *plain != 1 {
            return Err(Error::SameOrientation {
                letter: name.clone(),
            });
        }
    }

    let mut ids = BTreeMap::new();
    let letters = raw
        .into_iter()
        .map(|(key, barred, _)| {
            let next = ids.len();
            Letter::new(*ids.entry(key).or_insert(next), barred)
        })
        .collect();
    Coding::from_letters(letters)
}

/// Genus, vertex data and degree partition of a coding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapSummary {
    pub genus: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Vertex degrees in non-increasing order.
    pub degree_partition: Vec<usize>,
    /// Corner cycles, one per vertex, ordered by smallest corner. Each cycle
    /// lists corners in rotation order.
    pub vertex_orbits: Vec<Vec<usize>>,
}

impl MapSummary {
    pub fn to_json(&self, coding: &Coding) -> serde_json::Value {
        json!({
            "coding": coding.to_string(),
            "genus": self.genus,
            "vertices": self.vertex_count,
            "edges": self.edge_count,
            "degrees": self.degree_partition,
        })
    }
}

/// The corner permutation `i -> partner(i + 1)`.
pub(crate) fn corner_successor(c: &Coding) -> Vec<usize> {
    let n = c.len();
    let partner = c.partners();
    (0..n).map(|i| partner[(i + 1) % n]).collect()
}

pub fn analyze(c: &Coding) -> MapSummary {
    let succ = corner_successor(c);
    let n = succ.len();
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orbit.push(i);
            i = succ[i];
        }
        orbits.push(orbit);
    }
    let v = orbits.len() as isize;
    let e = c.edge_count() as isize;
    let chi = v - e + 1;
    assert!(
        chi <= 2 && chi % 2 == 0,
        "Euler characteristic {chi} of {c} is not that of a closed orientable surface"
    );
    let mut degrees: Vec<usize> = orbits.iter().map(Vec::len).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(degrees.iter().sum::<usize>(), 2 * c.edge_count());
    MapSummary {
        genus: ((2 - chi) / 2) as usize,
        vertex_count: orbits.len(),
        edge_count: c.edge_count(),
        degree_partition: degrees,
        vertex_orbits: orbits,
    }
}

/// Relabeling of the rotation starting at `start`: edges numbered by first
/// occurrence, first occurrence unbarred.
fn normalized_rotation(partner: &[usize], start: usize, out: &mut Vec<Letter>) {
    let n = partner.len();
    out.clear();
    let mut label = vec![UNSET; n];
    let mut next = 0;
    for k in 0..n {
        let pos = (start + k) % n;
        let other = partner[pos];
        if label[other] == UNSET {
            label[pos] = next;
            out.push(Letter::new(next, false));
            next += 1;
        } else {
            out.push(Letter::new(label[other], true));
        }
    }
}

/// Lexicographically least normalized rotation. Reflections are not
/// applied. Input bars are irrelevant since every edge is re-oriented so its
/// first occurrence is unbarred.
pub fn canonical_form(c: &Coding) -> Coding {
    canonical_from_partners(&c.partners())
}

fn canonical_from_partners(partner: &[usize]) -> Coding {
    let n = partner.len();
    let mut best = Vec::new();
    let mut cur = Vec::with_capacity(n);
    for start in 0..n {
        normalized_rotation(partner, start, &mut cur);
        if best.is_empty() || cur < best {
            std::mem::swap(&mut best, &mut cur);
        }
    }
    Coding {
        letters: best,
        edge_count: n / 2,
    }
}

/// Equality of unicellular maps.
pub fn equivalent(a: &Coding, b: &Coding) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

fn check_partition(genus: usize, degrees: &[usize]) -> Result<usize> {
    let sum: usize = degrees.iter().sum();
    let bad = || Error::InconsistentPartition {
        genus,
        degrees: degrees.to_vec(),
    };
    if degrees.is_empty() || degrees.contains(&0) || !sum.is_multiple_of(2) {
        return Err(bad());
    }
    if sum + 2 != 2 * degrees.len() + 4 * genus {
        return Err(bad());
    }
    Ok(sum)
}

/// Backtracking over chord diagrams. Position `i` is paired with a later
/// position `j`; each pairing fixes two arrows of the corner permutation and
/// a vertex cycle is checked against the remaining degree multiset as soon
/// as it closes.
struct Search {
    n: usize,
    partner: Vec<usize>,
    succ: Vec<usize>,
    need: Vec<i32>,
    letters: Vec<Letter>,
}

impl Search {
    fn new(n: usize, degrees: &[usize]) -> Self {
        let mut need = vec![0; n + 1];
        for &d in degrees {
            need[d] += 1;
        }
        Search {
            n,
            partner: vec![UNSET; n],
            succ: vec![UNSET; n],
            need,
            letters: vec![Letter::new(0, false); n],
        }
    }

    /// Length of the cycle closed by the arrow `from -> to`, if any.
    fn closed_cycle(&self, from: usize, to: usize) -> Option<usize> {
        let mut cur = to;
        let mut len = 1;
        while cur != from {
            cur = self.succ[cur];
            if cur == UNSET {
                return None;
            }
            len += 1;
        }
        Some(len)
    }

    /// Pairs `i < j` as edge `edge`. Returns the closed cycle lengths on
    /// success; on failure the state is left untouched.
    fn pair(&mut self, i: usize, j: usize, edge: usize) -> Option<Vec<usize>> {
        let n = self.n;
        self.partner[i] = j;
        self.partner[j] = i;
        self.letters[i] = Letter::new(edge, false);
        self.letters[j] = Letter::new(edge, true);
        let arrows = [((i + n - 1) % n, j), ((j + n - 1) % n, i)];
        let mut closed = Vec::new();
        let mut ok = true;
        let mut set = 0;
        for &(from, to) in &arrows {
            self.succ[from] = to;
            set += 1;
            if let Some(len) = self.closed_cycle(from, to) {
                if self.need[len] > 0 {
                    self.need[len] -= 1;
                    closed.push(len);
                } else {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(closed);
        }
        for &len in &closed {
            self.need[len] += 1;
        }
        for &(from, _) in arrows.iter().take(set) {
            self.succ[from] = UNSET;
        }
        self.partner[i] = UNSET;
        self.partner[j] = UNSET;
        None
    }

    fn unpair(&mut self, i: usize, j: usize, closed: Vec<usize>) {
        let n = self.n;
        for len in closed {
            self.need[len] += 1;
        }
        self.succ[(i + n - 1) % n] = UNSET;
        self.succ[(j + n - 1) % n] = UNSET;
        self.partner[i] = UNSET;
        self.partner[j] = UNSET;
    }

    /// Depth-first search; `emit` returns `false` to stop early.
    fn run(&mut self, edge: usize, emit: &mut dyn FnMut(&Search) -> bool) -> bool {
        let Some(i) = self.partner.iter().position(|&p| p == UNSET) else {
            return emit(self);
        };
        for j in i + 1..self.n {
            if self.partner[j] != UNSET {
                continue;
            }
            if let Some(closed) = self.pair(i, j, edge) {
                let go_on = self.run(edge + 1, emit);
                self.unpair(i, j, closed);
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

/// All unicellular maps with the given genus and degree partition, as sorted
/// canonical codings.
pub fn enumerate_maps(genus: usize, degrees: &[usize]) -> Result<Vec<Coding>> {
    let n = check_partition(genus, degrees)?;
    if n > ENUMERATION_CAP {
        return Err(Error::Infeasible {
            length: n,
            cap: ENUMERATION_CAP,
        });
    }
    let found: BTreeSet<Coding> = (1..n)
        .into_par_iter()
        .map(|j| {
            let mut out = BTreeSet::new();
            let mut search = Search::new(n, degrees);
            if let Some(_closed) = search.pair(0, j, 0) {
                search.run(1, &mut |s: &Search| {
                    out.insert(canonical_from_partners(&s.partner));
                    true
                });
            }
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(found.into_iter().collect())
}

/// First map found by the same search, without the enumeration cap. Used to
/// seed breadth-first closures at sizes where full enumeration is refused.
pub fn find_map(genus: usize, degrees: &[usize]) -> Result<Option<Coding>> {
    let n = check_partition(genus, degrees)?;
    let mut search = Search::new(n, degrees);
    let mut hit = None;
    search.run(0, &mut |s: &Search| {
        hit = Some(Coding {
            letters: s.letters.clone(),
            edge_count: n / 2,
        });
        false
    });
    Ok(hit)
}

/// Strands of a 4-valent map obtained by going straight through every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveDecomposition {
    /// Edge ids of each strand in traversal order.
    pub curves: Vec<Vec<usize>>,
    pub self_intersections: Vec<usize>,
    /// Pairwise crossing counts; the diagonal is zero.
    pub crossing_matrix: Vec<Vec<usize>>,
}

impl CurveDecomposition {
    pub fn is_simple(&self, curve: usize) -> bool {
        self.self_intersections[curve] == 0
    }

    /// Simple and meeting the rest of the collection exactly once.
    pub fn is_one_simple(&self, curve: usize) -> bool {
        self.is_simple(curve) && self.crossing_matrix[curve].iter().sum::<usize>() == 1
    }

    pub fn total_crossings(&self) -> usize {
        let pairs: usize = self.crossing_matrix.iter().flatten().sum();
        pairs / 2 + self.self_intersections.iter().sum::<usize>()
    }
}

pub fn constituent_curves(c: &Coding) -> Result<CurveDecomposition> {
    let ribbon = ribbon_from_coding(c)?;
    if let Some(rot) = ribbon.rotations().iter().find(|r| r.len() != 4) {
        return Err(Error::WrongDegree {
            degree: rot.len(),
            required: "4-valent",
        });
    }
    let darts = ribbon.dart_count();
    // straight-through partner of each dart
    let mut across = vec![0; darts];
    for rot in ribbon.rotations() {
        for k in 0..4 {
            across[rot[k]] = rot[(k + 2) % 4];
        }
    }
    let mut curve_of = vec![UNSET; ribbon.edge_count()];
    let mut curves = Vec::new();
    for start in 0..ribbon.edge_count() {
        if curve_of[start] != UNSET {
            continue;
        }
        let id = curves.len();
        let mut strand = Vec::new();
        let first = 2 * start;
        let mut d = first;
        loop {
            let e = RibbonGraph::edge_of(d);
            if curve_of[e] == UNSET {
                curve_of[e] = id;
                strand.push(e);
            }
            d = across[RibbonGraph::flip(d)];
            if d == first {
                break;
            }
        }
        curves.push(strand);
    }
    let k = curves.len();
    let mut self_intersections = vec![0; k];
    let mut crossing_matrix = vec![vec![0; k]; k];
    for rot in ribbon.rotations() {
        let a = curve_of[RibbonGraph::edge_of(rot[0])];
        let b = curve_of[RibbonGraph::edge_of(rot[1])];
        if a == b {
            self_intersections[a] += 1;
        } else {
            crossing_matrix[a][b] += 1;
            crossing_matrix[b][a] += 1;
        }
    }
    Ok(CurveDecomposition {
        curves,
        self_intersections,
        crossing_matrix,
    })
}

/// The chain of `2g` simple closed curves, consecutive ones crossing once.
///
/// Built as a rotation system on `2g - 1` four-valent vertices: curve `i`
/// crosses curve `i + 1` at vertex `i`, and the face is traced to produce the
/// coding.
pub fn chain_collection(genus: usize) -> Result<Coding> {
    if genus == 0 {
        return Err(Error::GenusTooSmall(0));
    }
    let n_curves = 2 * genus;
    let n_vertices = n_curves - 1;
    // passes[c] = vertices visited by curve c, in order
    let passes: Vec<Vec<usize>> = (0..n_curves)
        .map(|c| {
            let mut p = Vec::new();
            if c > 0 {
                p.push(c - 1);
            }
            if c < n_vertices {
                p.push(c);
            }
            p
        })
        .collect();

    // Segment k of curve c runs from pass k to pass k + 1; its tail dart is
    // the outgoing dart at pass k and its head dart the incoming one at k + 1.
    let mut edge_count = 0;
    // (vertex, curve) -> (out dart, in dart)
    let mut at: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (c, p) in passes.iter().enumerate() {
        let m = p.len();
        let first_edge = edge_count;
        edge_count += m;
        for (k, &v) in p.iter().enumerate() {
            let out = 2 * (first_edge + k);
            let inc = 2 * (first_edge + (k + m - 1) % m) + 1;
            at.insert((v, c), (out, inc));
        }
    }
    let rotations: Vec<Vec<usize>> = (0..n_vertices)
        .map(|v| {
            let (a_out, a_in) = at[&(v, v)];
            let (b_out, b_in) = at[&(v, v + 1)];
            vec![a_out, b_out, a_in, b_in]
        })
        .collect();
    let ribbon = RibbonGraph::from_rotations(edge_count, rotations)?;
    if ribbon.face_count() != 1 {
        return Err(Error::Internal(format!(
            "chain of {n_curves} curves has {} faces",
            ribbon.face_count()
        )));
    }
    let coding = ribbon.to_coding()?;
    let summary = analyze(&coding);
    if summary.genus != genus || summary.vertex_count != n_vertices {
        return Err(Error::Internal(format!(
            "chain coding {coding} has genus {} with {} vertices",
            summary.genus, summary.vertex_count
        )));
    }
    Ok(coding)
}
