//! Semistandard set-valued tableaux on skew shapes and their column words.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::par::{self, Execution};
use crate::shapes::{Cell, Partition, SkewShape};

/// Bitmask of a subset of `[n]`; bit `k` stands for `k + 1`.
pub type Mask = u32;

pub fn mask_to_set(m: Mask) -> Vec<u32> {
    (0..32).filter(|k| m >> k & 1 == 1).map(|k| k + 1).collect()
}

pub fn set_to_mask(s: &[u32]) -> Mask {
    s.iter().fold(0, |m, &x| m | 1 << (x - 1))
}

fn mask_min(m: Mask) -> u32 {
    m.trailing_zeros() + 1
}

fn mask_max(m: Mask) -> u32 {
    32 - m.leading_zeros()
}

/// A set-valued tableau: a nonempty sorted subset of `[n]` in each cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetValuedTableau {
    shape: SkewShape,
    n: u32,
    entries: BTreeMap<Cell, Vec<u32>>,
}

impl SetValuedTableau {
    /// Builds and validates a tableau.
    pub fn new(shape: SkewShape, n: u32, entries: BTreeMap<Cell, Vec<u32>>) -> Result<Self> {
        let t = Self::new_unchecked(shape, n, entries);
        if !t.is_valid() {
            return Err(Error::InvalidTableau(t.to_json()));
        }
        Ok(t)
    }

    /// Builds a tableau without validation, for testing the validator.
    pub fn new_unchecked(shape: SkewShape, n: u32, mut entries: BTreeMap<Cell, Vec<u32>>) -> Self {
        for s in entries.values_mut() {
            s.sort_unstable();
            s.dedup();
        }
        SetValuedTableau { shape, n, entries }
    }

    /// From entries in column-word cell order, as produced by [`SvtLayout`].
    pub fn from_masks(layout: &SvtLayout, masks: &[Mask]) -> Self {
        let entries = layout.cells.iter().zip(masks).map(|(&c, &m)| (c, mask_to_set(m))).collect();
        SetValuedTableau { shape: layout.shape.clone(), n: layout.n, entries }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn get(&self, c: Cell) -> Option<&[u32]> {
        self.entries.get(&c).map(Vec::as_slice)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Cell, &[u32])> {
        self.entries.iter().map(|(&c, s)| (c, s.as_slice()))
    }

    /// `|T|`, the number of entries counted over all cells.
    pub fn total_entries(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    /// Checks the cell set, the alphabet and the row and column conditions.
    pub fn is_valid(&self) -> bool {
        let cells = self.shape.cells();
        if cells.len() != self.entries.len() || cells.iter().any(|c| !self.entries.contains_key(c)) {
            return false;
        }
        for (c, s) in &self.entries {
            if s.is_empty() || s[0] == 0 || *s.last().unwrap() > self.n {
                return false;
            }
            let max = *s.last().unwrap();
            if let Some(r) = self.entries.get(&Cell::new(c.row, c.col + 1)) {
                if max > r[0] {
                    return false;
                }
            }
            if let Some(b) = self.entries.get(&Cell::new(c.row + 1, c.col)) {
                if max >= b[0] {
                    return false;
                }
            }
        }
        true
    }

    /// Entries read column by column from the right, top to bottom, each
    /// cell in decreasing order.
    pub fn column_word(&self) -> Vec<u32> {
        let mut w = Vec::with_capacity(self.total_entries());
        for c in self.shape.column_order() {
            w.extend(self.entries[&c].iter().rev());
        }
        w
    }

    /// The chain of partitions the column word drives from `mu`, if it ends at `nu`.
    pub fn fits_sequence(&self, mu: &Partition, nu: &Partition) -> Option<Vec<Partition>> {
        word_chain(&self.column_word(), mu).filter(|ch| ch.last() == Some(nu))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(TableauJson::from(self)).expect("tableau json")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableauJson::from(self)).expect("tableau json")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let tj: TableauJson = serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
        let shape: SkewShape = tj.shape.parse()?;
        let entries = tj.cells.into_iter().map(|c| (Cell::new(c.r, c.c), c.set)).collect();
        Self::new(shape, tj.n, entries)
    }
}

/// Replays a word from `mu`, each letter `r` adding a box in row `r`.
pub fn word_chain(word: &[u32], mu: &Partition) -> Option<Vec<Partition>> {
    let mut chain = Vec::with_capacity(word.len() + 1);
    chain.push(mu.clone());
    for &r in word {
        let next = chain.last().unwrap().add_box(r as usize)?;
        chain.push(next);
    }
    Some(chain)
}

/// Occurrence counts of `1, 2, …` up to the largest letter.
pub fn content_of_word(w: &[u32]) -> Vec<u32> {
    let m = w.iter().copied().max().unwrap_or(0) as usize;
    let mut c = vec![0; m];
    for &x in w {
        c[x as usize - 1] += 1;
    }
    c
}

/// Every prefix has partition content.
pub fn is_lattice_word(w: &[u32]) -> bool {
    word_chain(w, &Partition::empty()).is_some()
}

/// `λ * μ`: the diagram of `μ` placed below and to the left of `λ`, corners touching.
pub fn star_concatenate(lam: &Partition, mu: &Partition) -> SkewShape {
    let s = mu.len();
    let l1 = lam.first();
    let mut outer: Vec<u32> = mu.parts().iter().map(|m| m + l1).collect();
    outer.extend_from_slice(lam.parts());
    let outer = Partition::new(outer).unwrap();
    let inner = Partition::rectangle(s, l1);
    SkewShape::new(outer, inner).unwrap()
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    r: u32,
    c: u32,
    set: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    shape: String,
    n: u32,
    cells: Vec<CellJson>,
}

impl From<&SetValuedTableau> for TableauJson {
    fn from(t: &SetValuedTableau) -> Self {
        TableauJson {
            shape: t.shape.to_string(),
            n: t.n,
            cells: t.entries.iter().map(|(c, s)| CellJson { r: c.row, c: c.col, set: s.clone() }).collect(),
        }
    }
}

/// Cells of a skew shape in column-word order with the neighbour data that
/// bounds each cell's entries during backtracking.
#[derive(Clone, Debug)]
pub struct SvtLayout {
    shape: SkewShape,
    n: u32,
    cells: Vec<Cell>,
    right: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    cap: Vec<u32>,
}

impl SvtLayout {
    pub fn new(shape: &SkewShape, n: u32) -> Self {
        let cells = shape.column_order();
        let index: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let right = cells.iter().map(|c| index.get(&Cell::new(c.row, c.col + 1)).copied()).collect();
        let above = cells
            .iter()
            .map(|c| (c.row > 1).then(|| index.get(&Cell::new(c.row - 1, c.col)).copied()).flatten())
            .collect();
        let cap = cells
            .iter()
            .map(|c| {
                let below = (c.row + 1..).take_while(|&r| shape.contains_cell(Cell::new(r, c.col))).count() as u32;
                n.saturating_sub(below)
            })
            .collect();
        SvtLayout { shape: shape.clone(), n, cells, right, above, cap }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Cells in column-word order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// The admissible entry sets of cell `k` given the sets of the earlier cells,
    /// in increasing mask order.
    pub fn choices(&self, k: usize, masks: &[Mask]) -> impl Iterator<Item = Mask> {
        let lo = self.above[k].map_or(1, |a| mask_max(masks[a]) + 1);
        let hi = self.right[k].map_or(self.n, |r| mask_min(masks[r])).min(self.cap[k]);
        let (width, shift) = if lo <= hi { (hi - lo + 1, lo - 1) } else { (0, 0) };
        (1..1u32 << width).map(move |m| m << shift)
    }

    /// Depth-first walk over all tableaux. `step` extends the state by one
    /// cell or prunes the branch by returning `None`; `leaf` sees every
    /// complete tableau.
    pub fn walk<S>(
        &self,
        masks: &mut Vec<Mask>,
        state: &S,
        step: &impl Fn(&S, usize, Mask) -> Option<S>,
        leaf: &mut impl FnMut(&[Mask], &S),
    ) {
        let k = masks.len();
        if k == self.cells.len() {
            leaf(masks, state);
            return;
        }
        for m in self.choices(k, masks).collect::<Vec<_>>() {
            if let Some(next) = step(state, k, m) {
                masks.push(m);
                self.walk(masks, &next, step, leaf);
                masks.pop();
            }
        }
    }

    /// Visits every tableau in canonical order.
    pub fn for_each(&self, mut f: impl FnMut(&[Mask])) {
        self.walk(&mut Vec::new(), &(), &|_, _, _| Some(()), &mut |m, _| f(m));
    }

    /// Prefixes of the first `depth` cells, in canonical order.
    fn prefixes(&self, depth: usize) -> Vec<Vec<Mask>> {
        let mut out = vec![Vec::new()];
        for k in 0..depth.min(self.cells.len()) {
            out = out
                .into_iter()
                .flat_map(|p| {
                    self.choices(k, &p)
                        .map(|m| {
                            let mut q = p.clone();
                            q.push(m);
                            q
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        out
    }

    /// Sums `leaf` over all tableaux, accumulating state with `step` along
    /// the way. Work is split on the first cells' entries when running in
    /// parallel; the partial sums are combined in canonical order.
    pub fn fold<S, R>(
        &self,
        exec: Execution,
        init: S,
        step: impl Fn(&S, usize, Mask) -> Option<S> + Sync,
        leaf: impl Fn(&[Mask], &S) -> R + Sync,
        zero: impl Fn() -> R + Sync,
        add: impl Fn(R, R) -> R + Sync,
    ) -> R
    where
        S: Send + Sync,
        R: Send,
    {
        let run = |prefix: &Vec<Mask>| -> R {
            let mut states: Vec<S> = Vec::with_capacity(prefix.len());
            for (k, &m) in prefix.iter().enumerate() {
                match step(states.last().unwrap_or(&init), k, m) {
                    Some(s) => states.push(s),
                    None => return zero(),
                }
            }
            let mut acc = Some(zero());
            let mut masks = prefix.clone();
            self.walk(&mut masks, states.last().unwrap_or(&init), &step, &mut |m, s| {
                let v = leaf(m, s);
                acc = Some(add(acc.take().unwrap(), v));
            });
            acc.unwrap()
        };
        let depth = match exec {
            Execution::Sequential => 0,
            Execution::Parallel => 2,
        };
        let parts = par::map(exec, &self.prefixes(depth), run);
        parts.into_iter().fold(zero(), add)
    }
}

/// All set-valued tableaux of shape `theta` with entries in `[n]`, in
/// canonical order, optionally restricted to `|T| ≤ max_total_entries`.
///
/// A column with more than `n` cells admits no tableau.
pub fn enumerate_svt(theta: &SkewShape, n: u32, max_total_entries: Option<usize>) -> Vec<SetValuedTableau> {
    let layout = SvtLayout::new(theta, n);
    let bound = max_total_entries.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    layout.walk(
        &mut Vec::new(),
        &0usize,
        &|&used, _, m| {
            let u = used + m.count_ones() as usize;
            (u <= bound).then_some(u)
        },
        &mut |m, _| out.push(SetValuedTableau::from_masks(&layout, m)),
    );
    out
}

/// Number of tableaux of shape `theta` with entries in `[n]`.
pub fn count_svt(theta: &SkewShape, n: u32) -> usize {
    let layout = SvtLayout::new(theta, n);
    let mut c = 0;
    layout.for_each(|_| c += 1);
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    fn intro_tableau() -> SetValuedTableau {
        let cells: [(u32, u32, &[u32]); 10] = [
            (1, 2, &[2, 3]),
            (1, 3, &[3, 4]),
            (1, 4, &[7]),
            (2, 1, &[1]),
            (2, 2, &[4]),
            (2, 3, &[5, 7]),
            (2, 4, &[8]),
            (3, 1, &[2, 6]),
            (3, 2, &[6, 7, 8]),
            (4, 1, &[9]),
        ];
        let entries = cells.iter().map(|&(r, c, s)| (Cell::new(r, c), s.to_vec())).collect();
        SetValuedTableau::new(shape("4,4,2,1/1"), 9, entries).unwrap()
    }

    #[test]
    fn intro_example() {
        let t = intro_tableau();
        assert!(t.is_valid());
        let w: String = t.column_word().iter().map(|d| d.to_string()).collect();
        assert_eq!(w, "7843753248761629");
        assert_eq!(SetValuedTableau::from_json(&t.to_json()).unwrap(), t);
        assert!(t.to_json().starts_with(r#"{"shape":"4,4,2,1/1","n":9,"cells":[{"r":1,"c":2,"set":[2,3]}"#));
    }

    #[test]
    fn small_enumerations() {
        let sets: Vec<Vec<u32>> =
            enumerate_svt(&shape("1"), 2, None).iter().map(|t| t.get(Cell::new(1, 1)).unwrap().to_vec()).collect();
        assert_eq!(sets, vec![vec![1], vec![2], vec![1, 2]]);
        assert!(enumerate_svt(&shape("1,1"), 1, None).is_empty());
        assert_eq!(count_svt(&shape("2,1/1"), 2), 9);
        assert_eq!(count_svt(&shape("1/1"), 3), 1);
        assert_eq!(enumerate_svt(&shape("2"), 3, Some(2)).len(), 6);
    }

    #[test]
    fn validator() {
        let mut e = BTreeMap::new();
        e.insert(Cell::new(1, 1), vec![1, 2, 3]);
        let t = SetValuedTableau::new_unchecked(shape("1"), 3, e);
        assert!(t.is_valid());
        assert_eq!(t.column_word(), vec![3, 2, 1]);
        let mut e = BTreeMap::new();
        e.insert(Cell::new(1, 1), vec![1]);
        e.insert(Cell::new(2, 1), vec![1, 2]);
        assert!(!SetValuedTableau::new_unchecked(shape("1,1"), 2, e).is_valid());
        let empty = SetValuedTableau::new(shape("2/2"), 2, BTreeMap::new()).unwrap();
        assert!(empty.column_word().is_empty());
    }

    #[test]
    fn words() {
        assert!(is_lattice_word(&[1, 1, 2, 1]));
        assert!(!is_lattice_word(&[1, 2, 2]));
        assert!(is_lattice_word(&[]));
        assert_eq!(content_of_word(&[1, 1, 2, 1]), vec![3, 1]);
        assert_eq!(content_of_word(&[]), Vec::<u32>::new());
        assert_eq!(content_of_word(&[3, 1, 2]), vec![1, 1, 1]);
    }

    #[test]
    fn fitting() {
        let p = |s: &str| -> Partition { s.parse().unwrap() };
        let single = |s: &[u32]| {
            let mut e = BTreeMap::new();
            e.insert(Cell::new(1, 1), s.to_vec());
            SetValuedTableau::new(shape("1"), 2, e).unwrap()
        };
        assert_eq!(single(&[1, 2]).fits_sequence(&p("1"), &p("2,1")), Some(vec![p("1"), p("1,1"), p("2,1")]));
        assert_eq!(single(&[1]).fits_sequence(&p(""), &p("1")), Some(vec![p(""), p("1")]));
        assert_eq!(word_chain(&[2], &p("")), None);
    }

    #[test]
    fn star() {
        let p = |s: &str| -> Partition { s.parse().unwrap() };
        assert_eq!(star_concatenate(&p(""), &p("2,1")), shape("2,1"));
        assert_eq!(star_concatenate(&p("1"), &p("1")), shape("2,1/1"));
        assert_eq!(star_concatenate(&p("2,1"), &p("1,1")).size(), 5);
    }

    #[test]
    fn parallel_fold_matches_sequential() {
        let layout = SvtLayout::new(&shape("3,2,1/1"), 3);
        let go = |exec| {
            layout.fold(
                exec,
                0u64,
                |s, _, m| Some(s * 7 + m as u64),
                |_, s| vec![*s],
                Vec::new,
                |mut a, b| {
                    a.extend(b);
                    a
                },
            )
        };
        assert_eq!(go(Execution::Sequential), go(Execution::Parallel));
    }
}
