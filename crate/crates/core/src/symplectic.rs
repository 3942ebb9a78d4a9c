//! Transvections on `H_1(Σ_g)` over `Z` and `GF(2)`.
//!
//! Coordinates are ordered `(x1, y1, ..., xg, yg)` with `⟨x_i, y_i⟩ = +1`,
//! `⟨y_i, x_i⟩ = -1` and all other basis pairings zero. The twist along a
//! class `c` acts by `T_c^k(a) = a + k⟨a, c⟩c`. Under this convention the
//! squared twist that sends `x1 + 2y1` to `x1` has power `-2`.
//!
//! Over `GF(2)` a vector is a bitmask with bit `2i` for `x_{i+1}` and bit
//! `2i + 1` for `y_{i+1}`.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};

/// Default cap on the number of elements a group closure may reach.
pub const GROUP_BUDGET: usize = 2_000_000;

/// Integral homology class in the symplectic basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntVector(pub Vec<BigInt>);

impl IntVector {
    pub fn zero(genus: usize) -> Self {
        IntVector(vec![BigInt::zero(); 2 * genus])
    }

    /// `x_i`, 1-based.
    pub fn x(genus: usize, i: usize) -> Self {
        let mut v = Self::zero(genus);
        v.0[2 * (i - 1)] = BigInt::one();
        v
    }

    /// `y_i`, 1-based.
    pub fn y(genus: usize, i: usize) -> Self {
        let mut v = Self::zero(genus);
        v.0[2 * (i - 1) + 1] = BigInt::one();
        v
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn genus(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Nonnegative gcd of the coordinates; the zero vector has gcd 0.
    pub fn gcd(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn pairing(&self, other: &IntVector) -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..self.genus() {
            acc += &self.0[2 * i] * &other.0[2 * i + 1];
            acc -= &self.0[2 * i + 1] * &other.0[2 * i];
        }
        acc
    }

    pub fn add_scaled(&self, k: &BigInt, other: &IntVector) -> IntVector {
        IntVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + k * b)
                .collect(),
        )
    }

    pub fn mod2(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_odd())
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for IntVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::BadToken(t.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() || coords.len() % 2 != 0 {
            return Err(Error::DimensionMismatch {
                left: coords.len(),
                right: 2 * coords.len().div_ceil(2),
            });
        }
        Ok(IntVector(coords))
    }
}

fn json_int(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveTag {
    /// Twist along `ξ`, class `x1`.
    Xi,
    /// Even power of the twist along `η`, class `y1`.
    Eta,
    /// Twist along a class in `span{x1, x2, y2, ..., xg, yg}`.
    Complement,
}

impl MoveTag {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveTag::Xi => "xi",
            MoveTag::Eta => "eta",
            MoveTag::Complement => "complement",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransvectionMove {
    pub class: IntVector,
    pub power: BigInt,
    pub tag: MoveTag,
}

impl TransvectionMove {
    pub fn validate(&self) -> Result<()> {
        let g = self.class.genus();
        if g == 0 || !self.class.0.len().is_multiple_of(2) {
            return Err(Error::MalformedMove(format!("class {}", self.class)));
        }
        if self.class.is_zero() {
            return Err(Error::ZeroClass);
        }
        match self.tag {
            MoveTag::Xi if self.class != IntVector::x(g, 1) => Err(Error::MalformedMove(format!(
                "xi move on {} instead of x1",
                self.class
            ))),
            MoveTag::Eta if self.class != IntVector::y(g, 1) => Err(Error::MalformedMove(format!(
                "eta move on {} instead of y1",
                self.class
            ))),
            MoveTag::Eta if self.power.is_odd() => Err(Error::MalformedMove(format!(
                "eta move with odd power {}",
                self.power
            ))),
            MoveTag::Complement if !self.class.0[1].is_zero() => {
                Err(Error::OutsideAllowedSpan(self.class.to_string()))
            }
            _ => Ok(()),
        }
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        let k = &self.power * v.pairing(&self.class);
        v.add_scaled(&k, &self.class)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "class": self.class.0.iter().map(json_int).collect::<Vec<_>>(),
            "power": json_int(&self.power),
            "tag": self.tag.as_str(),
        })
    }
}

/// Moves applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveWord(pub Vec<TransvectionMove>);

impl MoveWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        self.0.iter().try_for_each(TransvectionMove::validate)
    }

    /// Reverse order, negated powers.
    pub fn inverse(&self) -> MoveWord {
        MoveWord(
            self.0
                .iter()
                .rev()
                .map(|m| TransvectionMove {
                    class: m.class.clone(),
                    power: -&m.power,
                    tag: m.tag,
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.0.iter().map(TransvectionMove::to_json).collect())
    }
}

pub fn apply_move_word(word: &MoveWord, v: &IntVector) -> Result<IntVector> {
    let mut cur = v.clone();
    for m in &word.0 {
        m.validate()?;
        if m.class.0.len() != v.0.len() {
            return Err(Error::DimensionMismatch {
                left: m.class.0.len(),
                right: v.0.len(),
            });
        }
        cur = m.apply(&cur);
    }
    Ok(cur)
}

/// Integer matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZMatrix {
    pub entries: Vec<Vec<BigInt>>,
}

impl ZMatrix {
    pub fn identity(dim: usize) -> Self {
        let entries = (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| {
                        if r == c {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        ZMatrix { entries }
    }

    /// Standard alternating form with `J[2i][2i+1] = 1`.
    pub fn standard_form(dim: usize) -> Self {
        let mut j = ZMatrix::identity(dim);
        for r in 0..dim {
            j.entries[r][r] = BigInt::zero();
        }
        for i in 0..dim / 2 {
            j.entries[2 * i][2 * i + 1] = BigInt::one();
            j.entries[2 * i + 1][2 * i] = -BigInt::one();
        }
        j
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, other: &ZMatrix) -> ZMatrix {
        let n = self.dim();
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        (0..n)
                            .map(|k| &self.entries[r][k] * &other.entries[k][c])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        ZMatrix { entries }
    }

    pub fn transpose(&self) -> ZMatrix {
        let n = self.dim();
        ZMatrix {
            entries: (0..n)
                .map(|r| (0..n).map(|c| self.entries[c][r].clone()).collect())
                .collect(),
        }
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        IntVector(
            self.entries
                .iter()
                .map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn is_symplectic(&self) -> bool {
        let j = ZMatrix::standard_form(self.dim());
        self.transpose().mul(&j).mul(self) == j
    }
}

/// Square matrix over GF(2); row `r` is a bitmask over columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    dim: usize,
    rows: Vec<u64>,
}

/// Exchanges the `x_i` and `y_i` bits of every pair.
fn swap_pairs(v: u64) -> u64 {
    const EVEN: u64 = 0x5555_5555_5555_5555;
    ((v & EVEN) << 1) | ((v >> 1) & EVEN)
}

/// Mod-2 pairing of two bit vectors.
pub fn pair_mod2(a: u64, b: u64) -> u8 {
    ((a & swap_pairs(b)).count_ones() & 1) as u8
}

impl GF2Matrix {
    pub fn identity(dim: usize) -> Self {
        assert!(dim <= 64, "GF(2) matrices are limited to 64 coordinates");
        GF2Matrix {
            dim,
            rows: (0..dim).map(|r| 1 << r).collect(),
        }
    }

    pub fn from_rows(dim: usize, rows: Vec<u64>) -> Self {
        assert_eq!(rows.len(), dim);
        GF2Matrix { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> u8 {
        ((self.rows[r] >> c) & 1) as u8
    }

    pub fn mul(&self, other: &GF2Matrix) -> GF2Matrix {
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                let mut acc = 0;
                let mut bits = row;
                while bits != 0 {
                    let c = bits.trailing_zeros() as usize;
                    acc ^= other.rows[c];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        GF2Matrix {
            dim: self.dim,
            rows,
        }
    }

    pub fn apply(&self, v: u64) -> u64 {
        self.rows.iter().enumerate().fold(0, |acc, (r, &row)| {
            acc | (((row & v).count_ones() as u64 & 1) << r)
        })
    }

    fn column(&self, c: usize) -> u64 {
        (0..self.dim).fold(0, |acc, r| acc | (((self.rows[r] >> c) & 1) << r))
    }

    pub fn is_symplectic(&self) -> bool {
        let cols: Vec<u64> = (0..self.dim).map(|c| self.column(c)).collect();
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| pair_mod2(cols[i], cols[j]) == pair_mod2(1 << i, 1 << j))
        })
    }

    /// Single-word key when every row fits in a byte.
    fn pack(&self) -> Option<u64> {
        (self.dim <= 8).then(|| {
            self.rows
                .iter()
                .enumerate()
                .fold(0, |acc, (r, &row)| acc | (row << (8 * r)))
        })
    }

    fn unpack(dim: usize, key: u64) -> Self {
        GF2Matrix {
            dim,
            rows: (0..dim).map(|r| (key >> (8 * r)) & 0xff).collect(),
        }
    }
}

/// Transvection `a -> a + k⟨a,c⟩c` over GF(2).
pub fn transvection_gf2(dim: usize, class: u64, power: i64) -> Result<GF2Matrix> {
    if class == 0 {
        return Err(Error::ZeroClass);
    }
    if power.rem_euclid(2) == 0 {
        return Ok(GF2Matrix::identity(dim));
    }
    let hit = swap_pairs(class);
    let rows = (0..dim)
        .map(|r| (1u64 << r) ^ if (class >> r) & 1 == 1 { hit } else { 0 })
        .collect();
    let m = GF2Matrix { dim, rows };
    debug_assert!(m.is_symplectic());
    Ok(m)
}

/// Transvection `a -> a + k⟨a,c⟩c` over Z.
pub fn transvection_z(class: &IntVector, power: &BigInt) -> Result<ZMatrix> {
    if class.is_zero() {
        return Err(Error::ZeroClass);
    }
    let n = class.0.len();
    let mut m = ZMatrix::identity(n);
    for col in 0..n {
        let mut e = IntVector(vec![BigInt::zero(); n]);
        e.0[col] = BigInt::one();
        let k = power * e.pairing(class);
        for r in 0..n {
            m.entries[r][col] += &k * &class.0[r];
        }
    }
    if !m.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Z,
    Gf2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymplecticMatrix {
    Z(ZMatrix),
    Gf2(GF2Matrix),
}

pub fn transvection(class: &IntVector, power: &BigInt, field: Field) -> Result<SymplecticMatrix> {
    match field {
        Field::Z => transvection_z(class, power).map(SymplecticMatrix::Z),
        Field::Gf2 => {
            let k = if power.is_odd() { 1 } else { 0 };
            transvection_gf2(class.0.len(), class.mod2(), k).map(SymplecticMatrix::Gf2)
        }
    }
}

/// `|Sp(2g, 2)| = 2^(g²) · Π_{i=1..g} (4^i − 1)`.
pub fn sp_order(genus: usize) -> u128 {
    assert!(
        genus <= 7,
        "|Sp(2g, 2)| does not fit in u128 beyond genus 7"
    );
    let mut order: u128 = 1 << (genus * genus);
    for i in 1..=genus {
        order *= (1u128 << (2 * i)) - 1;
    }
    order
}

/// Transvections at `x_i`, `y_i` and `y_i + y_{i+1}`.
pub fn standard_classes(genus: usize) -> Vec<u64> {
    let mut classes = Vec::new();
    for i in 0..genus {
        classes.push(1 << (2 * i));
        classes.push(1 << (2 * i + 1));
        if i + 1 < genus {
            classes.push((1 << (2 * i + 1)) | (1 << (2 * i + 3)));
        }
    }
    classes
}

pub fn standard_generators(genus: usize) -> Vec<GF2Matrix> {
    standard_classes(genus)
        .into_iter()
        .map(|c| transvection_gf2(2 * genus, c, 1).expect("nonzero class"))
        .collect()
}

/// Every nonzero class of `span{x1, x2, y2, ..., xg, yg}`.
pub fn full_span_classes(genus: usize) -> Vec<u64> {
    (1..1u64 << (2 * genus)).filter(|c| c & 0b10 == 0).collect()
}

/// Default 2g-element configuration inside `span{x1, x2, y2, ..., xg, yg}`.
///
/// For `g >= 3`: the chain `x2, y2, x2+x3, y3, ..., x_{g-1}+x_g, y_g, x_g`
/// (length `2g - 1`, consecutive classes pairing to 1) plus `x1 + x2`.
/// For `g = 2` the chain would repeat `x2`, so `x1` takes its place:
/// `x2, y2, x1, x1+x2`. Both are checked against the stabilizer order by
/// brute force at `g = 2, 3`. The variant ending in `x1` instead of `x_g`
/// generates a subgroup of index 6 at `g = 3`.
pub fn humphries_classes(genus: usize) -> Vec<u64> {
    let x = |i: usize| 1u64 << (2 * (i - 1));
    let y = |i: usize| 1u64 << (2 * (i - 1) + 1);
    match genus {
        0 => Vec::new(),
        1 => vec![x(1)],
        2 => vec![x(2), y(2), x(1), x(1) | x(2)],
        _ => {
            let mut classes = vec![x(2), y(2)];
            for i in 3..=genus {
                classes.push(x(i - 1) | x(i));
                classes.push(y(i));
            }
            classes.push(x(genus));
            classes.push(x(1) | x(2));
            classes
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupClosure {
    pub order: usize,
    pub elements: Option<Vec<GF2Matrix>>,
}

fn closure_by<K: Hash + Eq + Clone>(
    generators: &[GF2Matrix],
    dim: usize,
    budget: usize,
    key: impl Fn(&GF2Matrix) -> K,
    unkey: impl Fn(&K) -> GF2Matrix,
) -> Result<Vec<K>> {
    let id = GF2Matrix::identity(dim);
    let mut seen: HashSet<K> = HashSet::new();
    seen.insert(key(&id));
    let mut all = vec![key(&id)];
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in generators {
                let p = g.mul(m);
                let k = key(&p);
                if seen.insert(k.clone()) {
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    all.push(k);
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    let _ = &unkey;
    Ok(all)
}

/// Order of the subgroup of `Sp(2g, 2)` generated by `generators`, by
/// breadth-first closure from the identity.
pub fn group_bfs(
    generators: &[GF2Matrix],
    budget: usize,
    keep_elements: bool,
) -> Result<GroupClosure> {
    let dim = generators.first().map_or(0, GF2Matrix::dim);
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: g.dim(),
                right: dim,
            });
        }
        if !g.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
    }
    if dim <= 8 {
        let keys = closure_by(
            generators,
            dim,
            budget,
            |m| m.pack().expect("dim <= 8"),
            |&k| GF2Matrix::unpack(dim, k),
        )?;
        Ok(GroupClosure {
            order: keys.len(),
            elements: keep_elements
                .then(|| keys.iter().map(|&k| GF2Matrix::unpack(dim, k)).collect()),
        })
    } else {
        let keys = closure_by(
            generators,
            dim,
            budget,
            |m| m.rows.clone(),
            |rows| GF2Matrix::from_rows(dim, rows.clone()),
        )?;
        Ok(GroupClosure {
            order: keys.len(),
            elements: keep_elements.then(|| {
                keys.into_iter()
                    .map(|rows| GF2Matrix::from_rows(dim, rows))
                    .collect()
            }),
        })
    }
}

/// Cap on the number of vectors an orbit search may visit.
pub const ORBIT_BUDGET: usize = 1 << 24;

/// Size of the orbit of a nonzero vector.
pub fn orbit_of(v: u64, generators: &[GF2Matrix]) -> Result<usize> {
    if v == 0 {
        return Err(Error::ZeroClass);
    }
    let dim = generators.first().map_or(0, GF2Matrix::dim);
    if generators.iter().any(|g| g.dim() != dim) {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: 0,
        });
    }
    if dim < 64 && v >> dim != 0 {
        return Err(Error::DimensionMismatch {
            left: 64 - v.leading_zeros() as usize,
            right: dim,
        });
    }
    let mut seen = HashSet::from([v]);
    let mut frontier = vec![v];
    while let Some(u) = frontier.pop() {
        for g in generators {
            let w = g.apply(u);
            if seen.insert(w) {
                if seen.len() > ORBIT_BUDGET {
                    return Err(Error::BudgetExceeded(ORBIT_BUDGET));
                }
                frontier.push(w);
            }
        }
    }
    Ok(seen.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerReport {
    pub genus: usize,
    pub generator_count: usize,
    pub generated_order: u128,
    pub stabilizer_order: u128,
    pub equal: bool,
}

impl StabilizerReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "genus": self.genus,
            "generators": self.generator_count,
            "generated_order": self.generated_order as u64,
            "stabilizer_order": self.stabilizer_order as u64,
            "equal": self.equal,
        })
    }
}

/// Compares the group generated by transvections at `classes` (all inside
/// `span{x1, x2, y2, ..., xg, yg}`) with the stabilizer of `x1` in
/// `Sp(2g, 2)`, whose order is `|Sp(2g, 2)| / (4^g − 1)` because the action
/// on nonzero vectors is transitive.
pub fn stabilizer_check(genus: usize, classes: &[u64]) -> Result<StabilizerReport> {
    if genus == 0 {
        return Err(Error::GenusTooSmall(0));
    }
    if genus > 7 {
        return Err(Error::BudgetExceeded(GROUP_BUDGET));
    }
    let dim = 2 * genus;
    let mut gens = Vec::with_capacity(classes.len());
    for &c in classes {
        if c == 0 {
            return Err(Error::ZeroClass);
        }
        if c & 0b10 != 0 || c >> dim != 0 {
            return Err(Error::OutsideAllowedSpan(format_bits(c, dim)));
        }
        gens.push(transvection_gf2(dim, c, 1)?);
    }
    let generated = group_bfs(&gens, GROUP_BUDGET, false)?.order as u128;
    let stabilizer = sp_order(genus) / ((1u128 << dim) - 1);
    Ok(StabilizerReport {
        genus,
        generator_count: classes.len(),
        generated_order: generated,
        stabilizer_order: stabilizer,
        equal: generated == stabilizer,
    })
}

pub fn format_bits(v: u64, dim: usize) -> String {
    (0..dim)
        .map(|i| if (v >> i) & 1 == 1 { "1" } else { "0" })
        .collect::<Vec<_>>()
        .join(",")
}

/// `t` with `|n - t·m| <= |m| / 2`.
fn nearest_quotient(n: &BigInt, m: &BigInt) -> BigInt {
    let am = m.abs();
    let t = (BigInt::from(2) * n + &am).div_floor(&(BigInt::from(2) * &am));
    if m.is_negative() {
        -t
    } else {
        t
    }
}

/// Accumulates moves while tracking the image of the input vector.
struct Reducer {
    genus: usize,
    v: IntVector,
    word: Vec<TransvectionMove>,
}

impl Reducer {
    fn coord(&self, i: usize) -> &BigInt {
        &self.v.0[i]
    }

    fn push(&mut self, class: IntVector, power: BigInt, tag: MoveTag) {
        if power.is_zero() {
            return;
        }
        let m = TransvectionMove { class, power, tag };
        debug_assert!(m.validate().is_ok());
        self.v = m.apply(&self.v);
        // twists along one class compose by adding powers
        match self.word.last_mut() {
            Some(last) if last.class == m.class && last.tag == m.tag => {
                last.power += m.power;
                if last.power.is_zero() {
                    self.word.pop();
                }
            }
            _ => self.word.push(m),
        }
    }

    fn xi(&mut self, k: BigInt) {
        let c = IntVector::x(self.genus, 1);
        self.push(c, k, MoveTag::Xi);
    }

    fn eta(&mut self, k: BigInt) {
        let c = IntVector::y(self.genus, 1);
        self.push(c, k, MoveTag::Eta);
    }

    fn complement(&mut self, class: IntVector, k: BigInt) {
        self.push(class, k, MoveTag::Complement);
    }

    fn class_of(&self, terms: &[(usize, bool)]) -> IntVector {
        let mut c = IntVector::zero(self.genus);
        for &(i, is_y) in terms {
            c.0[2 * (i - 1) + is_y as usize] += 1;
        }
        c
    }

    /// Euclid on the `(x1, y1)` coordinates with xi-moves and even
    /// eta-moves until the `y1` coordinate vanishes. Keeps `a` odd and `b`
    /// even.
    fn euclid_first_pair(&mut self) {
        while !self.coord(1).is_zero() {
            let a = self.coord(0).clone();
            let t = nearest_quotient(self.coord(1), &(BigInt::from(2) * &a));
            self.eta(BigInt::from(-2) * t);
            if self.coord(1).is_zero() {
                break;
            }
            let m = nearest_quotient(self.coord(0), self.coord(1));
            self.xi(m);
        }
    }

    /// From `±d x1 + H'` to `d x1 + 2d y1 + H'`.
    fn reach_d_2d(&mut self) {
        debug_assert!(self.coord(1).is_zero());
        if self.coord(0).is_negative() {
            self.eta(BigInt::from(-2));
            self.xi(BigInt::from(-1));
        } else {
            self.eta(BigInt::from(2));
        }
    }

    /// Euclid inside the pair `(x_i, y_i)`, `i >= 2`, ending at `(p, 0)`.
    fn euclid_pair(&mut self, i: usize) {
        let (px, py) = (2 * (i - 1), 2 * (i - 1) + 1);
        while !self.coord(py).is_zero() {
            if self.coord(px).is_zero() {
                let c = self.class_of(&[(i, false)]);
                self.complement(c, BigInt::from(-1));
                continue;
            } else {
                let t = nearest_quotient(self.coord(py), self.coord(px));
                let c = self.class_of(&[(i, true)]);
                self.complement(c, -t);
            }
            if self.coord(py).is_zero() {
                break;
            }
            let m = nearest_quotient(self.coord(px), self.coord(py));
            let c = self.class_of(&[(i, false)]);
            self.complement(c, m);
        }
    }

    /// `x_i` coordinate += k · `x_j` coordinate, assuming both `y` coordinates
    /// are zero: `T_{x_i + y_j}^k` followed by `T_{y_j}^{-k}`.
    fn shear(&mut self, i: usize, j: usize, k: BigInt) {
        let c = self.class_of(&[(i, false), (j, true)]);
        self.complement(c, k.clone());
        let c = self.class_of(&[(j, true)]);
        self.complement(c, -k);
    }

    /// Brings the `H' = span{x2, y2, ..., xg, yg}` part to `c · x2`, `c >= 0`.
    fn normalize_h_prime(&mut self) {
        for i in 2..=self.genus {
            self.euclid_pair(i);
        }
        let p2 = 2;
        for j in 3..=self.genus {
            let pj = 2 * (j - 1);
            while !self.coord(pj).is_zero() {
                if self.coord(p2).is_zero() {
                    self.shear(2, j, BigInt::one());
                    continue;
                } else {
                    let t = nearest_quotient(self.coord(pj), self.coord(p2));
                    self.shear(j, 2, -t);
                }
                if self.coord(pj).is_zero() {
                    break;
                }
                let m = nearest_quotient(self.coord(p2), self.coord(pj));
                self.shear(2, j, -m);
            }
        }
        if self.coord(p2).is_negative() {
            let y2 = self.class_of(&[(2, true)]);
            let x2 = self.class_of(&[(2, false)]);
            self.complement(y2.clone(), BigInt::one());
            self.complement(x2, BigInt::from(2));
            self.complement(y2, BigInt::one());
        }
    }
}

/// Word of admissible moves taking a primitive `v ≡ x1 (mod 2)` to `x1`.
///
/// Stages: normalize the `H'` part to `c·x2`; Euclid on `(x1, y1)` to reach
/// `d x1 + 2d y1 + c x2`; one twist along `x1 + y2` and renormalization;
/// Euclid again (now `gcd(c − d, 2d) = 1`) to reach `x1 + 2y1 + 2d' x2`;
/// finish with twists along `x1 + x2`, `x1` and `y1`.
pub fn vector_reduce(v: &IntVector) -> Result<MoveWord> {
    let genus = v.genus();
    if !v.0.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            left: v.0.len(),
            right: 2 * genus + 2,
        });
    }
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let gcd = v.gcd();
    if !gcd.is_one() {
        return Err(Error::NotPrimitive(gcd.to_string()));
    }
    if v.mod2() != 1 {
        return Err(Error::WrongParity);
    }
    let target = IntVector::x(genus, 1);
    let mut r = Reducer {
        genus,
        v: v.clone(),
        word: Vec::new(),
    };
    if r.v != target {
        r.normalize_h_prime();
        if r.coord(2).is_zero() {
            r.euclid_first_pair();
            if r.coord(0).is_negative() {
                r.reach_d_2d();
                r.eta(BigInt::from(-2));
            }
        } else {
            r.euclid_first_pair();
            r.reach_d_2d();
            let zeta = r.class_of(&[(1, false), (2, true)]);
            r.complement(zeta, BigInt::one());
            r.normalize_h_prime();
            r.euclid_first_pair();
            r.reach_d_2d();
            if !r.coord(0).is_one() {
                return Err(Error::Internal(format!(
                    "x1 coefficient {} after the second Euclid pass",
                    r.coord(0)
                )));
            }
            // x1 + 2y1 + 2d' x2
            let d_prime: BigInt = r.coord(2).clone() / 2;
            let zeta_prime = r.class_of(&[(1, false), (2, false)]);
            r.complement(zeta_prime, d_prime.clone());
            r.xi(-d_prime);
            r.eta(BigInt::from(-2));
        }
    }
    if r.v != target {
        return Err(Error::Internal(format!(
            "reduction of {v} ended at {}",
            r.v
        )));
    }
    Ok(MoveWord(r.word))
}
