//! Partitions, skew shapes, cells and permutations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// An integer partition, stored without trailing zeros.
///
/// Indexing beyond the length reads zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition, dropping zero parts; fails unless the parts are non-increasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, ParseError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ParseError::Partition(fmt_parts(&parts)));
        }
        Ok(Partition(parts))
    }

    /// For literals known to be partitions.
    pub fn of(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("parts must be non-increasing")
    }

    /// The rectangle with `rows` rows of length `cols`.
    pub fn rectangle(rows: usize, cols: u32) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition(vec![cols; rows])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The `i`-th part, 1-indexed, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn first(&self) -> u32 {
        self.part(1)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.first();
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Containment of Young diagrams, `self ⊇ other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(o, s)| o <= s)
    }

    /// Dominance, `self ≥ other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let k = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 1..=k {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// The partition obtained by adding a box in row `r`, if it is one.
    pub fn add_box(&self, r: usize) -> Option<Partition> {
        if r == 0 || r > self.len() + 1 {
            return None;
        }
        if r > 1 && self.part(r - 1) == self.part(r) {
            return None;
        }
        let mut v = self.0.clone();
        if r > v.len() {
            v.push(1);
        } else {
            v[r - 1] += 1;
        }
        Some(Partition(v))
    }

    /// The partition obtained by deleting the last box of row `r`, if it is one.
    pub fn remove_box(&self, r: usize) -> Option<Partition> {
        let p = self.part(r);
        if p == 0 || self.part(r + 1) == p {
            return None;
        }
        let mut v = self.0.clone();
        v[r - 1] -= 1;
        Partition::new(v).ok()
    }

    /// Every `μ` with `self → μ` and at most `rows_cap` parts, with the row of
    /// the added box, by increasing row.
    pub fn add_box_successors(&self, rows_cap: usize) -> Vec<(usize, Partition)> {
        (1..=rows_cap.min(self.len() + 1)).filter_map(|r| self.add_box(r).map(|m| (r, m))).collect()
    }

    /// Whether `outer / self` has its cells in distinct rows and columns.
    pub fn is_tangle_to(&self, outer: &Partition) -> bool {
        if !outer.contains(self) {
            return false;
        }
        (1..=outer.len()).all(|i| outer.part(i) <= self.part(i) + 1 && outer.part(i + 1) <= self.part(i))
    }

    /// Every `μ ⊆ (cols_cap^rows_cap)` with `self ⇉ μ`, including `self`,
    /// in graded-lexicographic order.
    pub fn tangle_successors(&self, rows_cap: usize, cols_cap: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(rows_cap);
        fn rec(
            lam: &Partition,
            i: usize,
            rows_cap: usize,
            cols_cap: u32,
            cur: &mut Vec<u32>,
            out: &mut Vec<Partition>,
        ) {
            if i > rows_cap {
                out.push(Partition::new(cur.clone()).unwrap());
                return;
            }
            let base = lam.part(i);
            for add in 0..=1u32 {
                let v = base + add;
                let above = if i == 1 { cols_cap } else { cur[i - 2] };
                // distinct columns: the new box in row i must sit right of row i-1's old end
                if v > above || v > cols_cap || (add == 1 && i > 1 && v > lam.part(i - 1)) {
                    continue;
                }
                cur.push(v);
                rec(lam, i + 1, rows_cap, cols_cap, cur, out);
                cur.pop();
            }
        }
        rec(self, 1, rows_cap, cols_cap, &mut cur, &mut out);
        sort_graded_lex(&mut out);
        out
    }

    /// Whether the diagram fits in `rows` rows and `cols` columns.
    pub fn fits_in(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.first() <= cols
    }

    /// The cells, row by row.
    pub fn cells(&self) -> Vec<Cell> {
        SkewShape::straight(self.clone()).cells()
    }
}

fn fmt_parts(parts: &[u32]) -> String {
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Sorts by size, then lexicographically; a refinement of dominance order.
pub fn sort_graded_lex(v: &mut [Partition]) {
    v.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.0.cmp(&b.0)));
}

/// All partitions inside the `rows × cols` box, in graded-lexicographic order.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    partitions_between(&Partition::empty(), &Partition::rectangle(rows, cols))
}

/// All `ρ` with `inner ⊆ ρ ⊆ outer`, in graded-lexicographic order.
pub fn partitions_between(inner: &Partition, outer: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    if !outer.contains(inner) {
        return out;
    }
    let mut cur = Vec::new();
    fn rec(inner: &Partition, outer: &Partition, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i > outer.len() {
            out.push(Partition::new(cur.clone()).unwrap());
            return;
        }
        let hi = if i == 1 { outer.part(1) } else { outer.part(i).min(cur[i - 2]) };
        for v in inner.part(i)..=hi {
            cur.push(v);
            rec(inner, outer, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(inner, outer, 1, &mut cur, &mut out);
    sort_graded_lex(&mut out);
    out
}

/// All partitions of size exactly `k` with at most `rows` parts.
pub fn partitions_of(k: u32, rows: usize) -> Vec<Partition> {
    partitions_in_box(rows, k).into_iter().filter(|p| p.size() == k).collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&fmt_parts(&self.0))
        }
    }
}

impl FromStr for Partition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ParseError::Partition(s.to_string()))?;
        Partition::new(parts).map_err(|_| ParseError::Partition(s.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A box of a Young diagram, 1-indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }

    pub fn content(self) -> i32 {
        self.col as i32 - self.row as i32
    }

    /// `p + col - row`; the diagonal of the box when the main diagonal is numbered `p`.
    pub fn diagonal_number(self, p: i64) -> Result<u32> {
        let d = p + self.content() as i64;
        if d < 1 {
            return Err(Error::OutOfRange(d));
        }
        Ok(d as u32)
    }
}

/// A skew diagram `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, ParseError> {
        if !outer.contains(&inner) {
            return Err(ParseError::Skew(
                format!("{outer}/{inner}"),
                "inner partition is not contained in the outer one".into(),
            ));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.row >= 1 && self.inner.part(c.row as usize) < c.col && c.col <= self.outer.part(c.row as usize)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut v = Vec::with_capacity(self.size() as usize);
        for i in 1..=self.outer.len() {
            for j in self.inner.part(i) + 1..=self.outer.part(i) {
                v.push(Cell::new(i as u32, j));
            }
        }
        v
    }

    /// Cells in column-word order: columns right to left, top to bottom in each column.
    pub fn column_order(&self) -> Vec<Cell> {
        let mut v = self.cells();
        v.sort_by(|a, b| b.col.cmp(&a.col).then(a.row.cmp(&b.row)));
        v
    }

    /// Number of cells in the tallest column.
    pub fn max_column_height(&self) -> u32 {
        let (oc, ic) = (self.outer.conjugate(), self.inner.conjugate());
        (1..=oc.len()).map(|j| oc.part(j) - ic.part(j)).max().unwrap_or(0)
    }

    /// Number of columns containing a cell.
    pub fn column_count(&self) -> u32 {
        let (oc, ic) = (self.outer.conjugate(), self.inner.conjugate());
        (1..=oc.len()).filter(|&j| oc.part(j) > ic.part(j)).count() as u32
    }

    /// No two cells share a column.
    pub fn is_row_shape(&self) -> bool {
        self.max_column_height() <= 1
    }
}

impl From<Partition> for SkewShape {
    fn from(p: Partition) -> Self {
        SkewShape::straight(p)
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

impl FromStr for SkewShape {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let (o, i) = s.split_once('/').unwrap_or((s, ""));
        let outer: Partition = o.parse()?;
        let inner: Partition = i.parse()?;
        SkewShape::new(outer, inner)
    }
}

/// A permutation in one-line notation, fixing every point past its last entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(mut images: Vec<u32>) -> Result<Self, ParseError> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in &images {
            if x == 0 || x as usize > m || seen[x as usize] {
                return Err(ParseError::Permutation(fmt_parts(&images)));
            }
            seen[x as usize] = true;
        }
        while images.last().is_some_and(|&x| x as usize == images.len()) {
            images.pop();
        }
        Ok(Permutation(images))
    }

    /// The longest element of `S_m`.
    /// Every permutation of `1..=m`, in lexicographic order of one-line notation.
    pub fn all(m: usize) -> Vec<Self> {
        use itertools::Itertools;
        (1..=m as u32).permutations(m).map(|v| Permutation::new(v).expect("a permutation")).collect()
    }

    pub fn longest(m: usize) -> Self {
        Self::new((1..=m as u32).rev().collect()).unwrap()
    }

    /// `s_{i_1} s_{i_2} ⋯ s_{i_L}`.
    pub fn from_word(word: &[u32]) -> Self {
        word.iter().fold(Self::identity(), |w, &i| w.mul_simple(i))
    }

    /// `w(i)`.
    pub fn apply(&self, i: u32) -> u32 {
        self.0.get(i as usize - 1).copied().unwrap_or(i)
    }

    /// One-line notation on `[1, m]`, `m` at least the support.
    pub fn images(&self, m: usize) -> Vec<u32> {
        (1..=m.max(self.0.len()) as u32).map(|i| self.apply(i)).collect()
    }

    /// The largest moved point, zero for the identity.
    pub fn support(&self) -> usize {
        self.0.len()
    }

    /// `w s_i`, which swaps the values in positions `i` and `i+1`.
    pub fn mul_simple(&self, i: u32) -> Self {
        let mut v = self.images(i as usize + 1);
        v.swap(i as usize - 1, i as usize);
        Self::new(v).unwrap()
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![0; self.0.len()];
        for (k, &x) in self.0.iter().enumerate() {
            v[x as usize - 1] = k as u32 + 1;
        }
        Self::new(v).unwrap()
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count()).sum()
    }

    /// Whether `ℓ(w s_i) > ℓ(w)`.
    pub fn is_ascent(&self, i: u32) -> bool {
        self.apply(i) < self.apply(i + 1)
    }

    /// The right ascents `i` in `1..m` of `w` viewed in `S_m`.
    pub fn ascents(&self, m: usize) -> Vec<u32> {
        (1..m as u32).filter(|&i| self.is_ascent(i)).collect()
    }

    /// The Grassmannian permutation of `λ` with `p ≥ ℓ(λ)` and its reduced word.
    ///
    /// The word lists diagonal numbers of the boxes read from the bottom row up,
    /// right to left in each row.
    pub fn grassmannian(lam: &Partition, p: usize) -> Result<(Permutation, Vec<u32>)> {
        if lam.len() > p {
            return Err(Error::LengthExceedsN { len: lam.len(), n: p });
        }
        let conj = lam.conjugate();
        let m = p + lam.first() as usize;
        let images: Vec<u32> = (1..=m)
            .map(|i| if i <= p { i as u32 + lam.part(p + 1 - i) } else { i as u32 - conj.part(i - p) })
            .collect();
        let w = Permutation::new(images)?;
        let mut word = Vec::with_capacity(lam.size() as usize);
        for r in (1..=lam.len()).rev() {
            for c in (1..=lam.part(r)).rev() {
                word.push(Cell::new(r as u32, c).diagonal_number(p as i64)?);
            }
        }
        Ok((w, word))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("id")
        } else {
            f.write_str(&fmt_parts(&self.0))
        }
    }
}

impl FromStr for Permutation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(Permutation::identity());
        }
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ParseError::Permutation(s.to_string()))?;
        Permutation::new(v)
    }
}
