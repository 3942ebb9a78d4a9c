//! Reference implementations used as oracles by the integration tests.
//! They work on plain signed words (`+k` / `-k` for edge `k`) and share no
//! code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use unicellular::{Coding, Letter};

pub type Word = Vec<i64>;

pub fn word_of(c: &Coding) -> Word {
    c.letters().iter().map(|l| l.signed()).collect()
}

pub fn letter_of(k: i64) -> Letter {
    Letter::new(k.unsigned_abs() as usize - 1, k < 0)
}

/// Compact text: `a`..`z` for positive, upper case for negative.
pub fn parse_word(s: &str) -> Word {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| {
            let k = (c.to_ascii_lowercase() as u8 - b'a') as i64 + 1;
            if c.is_ascii_uppercase() {
                -k
            } else {
                k
            }
        })
        .collect()
}

fn find(p: &mut [usize], mut v: usize) -> usize {
    while p[v] != v {
        v = p[v];
    }
    v
}

/// Glues the polygon sides and counts corners per vertex class. Polygon
/// vertex `i` sits between sides `i - 1` and `i`; side `i` runs from polygon
/// vertex `i` to `i + 1`. Opposite labels are glued head to tail.
pub fn degrees(w: &[i64]) -> Vec<usize> {
    let n = w.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..n {
            if w[j] == -w[i] && w[i] > 0 {
                for (a, b) in [(i, (j + 1) % n), ((i + 1) % n, j)] {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut count = vec![0; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        count[r] += 1;
    }
    let mut d: Vec<usize> = count.into_iter().filter(|&c| c > 0).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

pub fn genus(w: &[i64]) -> usize {
    let v = degrees(w).len() as i64;
    let e = (w.len() / 2) as i64;
    let chi = v - e + 1;
    ((2 - chi) / 2) as usize
}

/// Least rotation after renaming edges in order of first appearance, the
/// first appearance taken positive.
pub fn canonical(w: &[i64]) -> Word {
    let n = w.len();
    (0..n)
        .map(|r| {
            let mut names: Vec<(i64, i64)> = Vec::new();
            (0..n)
                .map(|i| {
                    let k = w[(r + i) % n];
                    match names.iter().find(|(e, _)| *e == k.abs()) {
                        Some(&(_, name)) => -name,
                        None => {
                            let name = names.len() as i64 + 1;
                            names.push((k.abs(), name));
                            name
                        }
                    }
                })
                .collect::<Word>()
        })
        .min()
        .unwrap_or_default()
}

pub fn is_rotation(a: &[i64], b: &[i64]) -> bool {
    a.len() == b.len()
        && (0..a.len().max(1)).any(|r| (0..a.len()).all(|i| a[(r + i) % a.len()] == b[i]))
}

/// Every unicellular map of the given genus and degree partition, by brute
/// force over all perfect matchings of the polygon sides.
pub fn brute_force_maps(genus_: usize, partition: &[usize]) -> BTreeSet<Word> {
    let mut want = partition.to_vec();
    want.sort_unstable_by(|a, b| b.cmp(a));
    let n: usize = want.iter().sum();
    let mut out = BTreeSet::new();
    let mut w = vec![0i64; n];
    fn rec(w: &mut Vec<i64>, next: i64, g: usize, want: &[usize], out: &mut BTreeSet<Word>) {
        let Some(i) = w.iter().position(|&k| k == 0) else {
            if degrees(w) == want && genus(w) == g {
                out.insert(canonical(w));
            }
            return;
        };
        w[i] = next;
        for j in i + 1..w.len() {
            if w[j] == 0 {
                w[j] = -next;
                rec(w, next + 1, g, want, out);
                w[j] = 0;
            }
        }
        w[i] = 0;
    }
    rec(&mut w, 1, genus_, &want, &mut out);
    out
}

/// Cyclic order starting at `x` reads `x, x̄, y, ȳ`.
pub fn literal_pattern(w: &[i64], x: i64, y: i64) -> bool {
    let n = w.len();
    let px = w.iter().position(|&k| k == x).unwrap();
    let rel = |k: i64| (w.iter().position(|&t| t == k).unwrap() + n - px) % n;
    let (xb, py, yb) = (rel(-x), rel(y), rel(-y));
    xb < py && py < yb
}

pub fn intertwined(w: &[i64], x: i64, y: i64) -> bool {
    x.abs() != y.abs() && (literal_pattern(w, x, y) || literal_pattern(w, -x, -y))
}

/// The four blocks of `w` cut at `x, x̄, y, ȳ`, read from `x`:
/// `x b[0] m1 b[1] m2 b[2] m3 b[3]`, together with the markers in order.
fn cut(w: &[i64], x: i64, y: i64) -> ([i64; 4], [Word; 4]) {
    let n = w.len();
    let px = w.iter().position(|&k| k == x).unwrap();
    let r: Word = (0..n).map(|i| w[(px + i) % n]).collect();
    let marks: Vec<usize> = (0..n).filter(|&i| [x, -x, y, -y].contains(&r[i])).collect();
    let blocks: Vec<Word> = (0..4)
        .map(|k| {
            let end = if k == 3 { n } else { marks[k + 1] };
            r[marks[k] + 1..end].to_vec()
        })
        .collect();
    let m = [r[marks[0]], r[marks[1]], r[marks[2]], r[marks[3]]];
    (m, blocks.try_into().unwrap())
}

/// The surgery word. For the literal pattern `w1 x w2 x̄ w3 y w4 ȳ` this is
/// `w3 x w2 x̄ w1 y w4 ȳ`; for the other admissible pattern the blocks in
/// front of `x` and `y` are swapped the same way.
pub fn surgery(w: &[i64], x: i64, y: i64) -> Word {
    let (m, b) = cut(w, x, y);
    if literal_pattern(w, x, y) {
        // read from x: x w2 x̄ w3 y w4 ȳ w1
        let (w2, w3, w4, w1) = (&b[0], &b[1], &b[2], &b[3]);
        let mut out = w3.clone();
        out.push(x);
        out.extend(w2);
        out.push(-x);
        out.extend(w1);
        out.push(y);
        out.extend(w4);
        out.push(-y);
        out
    } else {
        // read from x: x u ȳ v y t x̄ s; the block before x is s, before y is v
        assert_eq!(m, [x, -y, y, -x]);
        let (u, v, t, s) = (&b[0], &b[1], &b[2], &b[3]);
        let mut out = vec![x];
        out.extend(u);
        out.push(-y);
        out.extend(s);
        out.push(y);
        out.extend(t);
        out.push(-x);
        out.extend(v);
        out
    }
}

/// Ordered pairs of signed letters forming an admissible surgery.
pub fn admissible_pairs(w: &[i64]) -> Vec<(i64, i64)> {
    let e = (w.len() / 2) as i64;
    let letters: Vec<i64> = (1..=e).flat_map(|k| [k, -k]).collect();
    let mut out = Vec::new();
    for &x in &letters {
        for &y in &letters {
            if intertwined(w, x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Mod-2 rank by Gaussian elimination on rows of bits.
pub fn rank_mod2(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) {
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && m[r][c] == 1 {
                    let pivot = m[rank].clone();
                    for (a, b) in m[r].iter_mut().zip(pivot) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Partitions of `total` into parts from `parts`, non-increasing.
pub fn partitions(total: usize, max_part: usize, parts: &[usize]) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for &p in parts.iter().filter(|&&p| p <= max_part && p <= total) {
        for mut rest in partitions(total - p, p, parts) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}
