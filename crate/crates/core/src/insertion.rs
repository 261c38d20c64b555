//! Forward and reverse row insertion of sets into set-valued rows and tableaux.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::shapes::{Cell, Partition, SkewShape};
use crate::tableaux::SetValuedTableau;

/// A set-valued row: each cell a nonempty increasing list.
pub type Row = Vec<Vec<u32>>;

/// Whether each cell is nonempty and sorted and `max ≤ min` of the next cell.
pub fn is_valid_row(r: &[Vec<u32>]) -> bool {
    r.iter().all(|c| !c.is_empty() && c.windows(2).all(|w| w[0] < w[1]))
        && r.windows(2).all(|w| w[0].last() <= w[1].first())
}

/// Inserts every element of `s` into `row` at once, each against the
/// original row, and returns the new row and the ejected set.
pub fn forward_row_insert(s: &BTreeSet<u32>, row: &[Vec<u32>]) -> Result<(Row, BTreeSet<u32>)> {
    let len = row.len();
    let mut inserted: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    let mut ejected: BTreeSet<(usize, u32)> = BTreeSet::new();
    for &x in s {
        let target = row.iter().position(|c| c.iter().all(|&e| x < e)).unwrap_or(len);
        inserted.entry(target).or_default().push(x);
        let left: Vec<(usize, u32)> = row[..target]
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.iter().filter(move |&&e| e > x).map(move |&e| (k, e)))
            .collect();
        if left.is_empty() {
            if target < len {
                ejected.extend(row[target].iter().map(|&e| (target, e)));
            }
        } else {
            ejected.extend(left);
        }
    }
    let values: Vec<u32> = ejected.iter().map(|&(_, e)| e).collect();
    let out_set: BTreeSet<u32> = values.iter().copied().collect();
    if out_set.len() != values.len() {
        return Err(Error::Insertion(format!("value ejected from two cells: {values:?}")));
    }
    let mut out: Row = Vec::with_capacity(len + 1);
    for k in 0..=len {
        let mut cell: Vec<u32> =
            row.get(k).map(|c| c.iter().copied().filter(|&e| !ejected.contains(&(k, e))).collect()).unwrap_or_default();
        if let Some(v) = inserted.get(&k) {
            cell.extend(v);
        }
        cell.sort_unstable();
        if k < len && cell.is_empty() {
            return Err(Error::Insertion(format!("cell {} emptied", k + 1)));
        }
        if !cell.is_empty() {
            out.push(cell);
        }
    }
    Ok((out, out_set))
}

/// The inverse of [`forward_row_insert`]; when `special_last` is set the
/// rightmost cell of `row` was created by the forward step.
pub fn reverse_row_insert(s: &BTreeSet<u32>, row: &[Vec<u32>], special_last: bool) -> Result<(BTreeSet<u32>, Row)> {
    let len = row.len();
    let normal = if special_last { len.saturating_sub(1) } else { len };
    let mut inserted: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    let mut removed: BTreeSet<(usize, u32)> = BTreeSet::new();
    for &x in s {
        let target = (0..normal)
            .rev()
            .find(|&k| row[k].iter().all(|&e| x > e))
            .ok_or_else(|| Error::Insertion(format!("no cell accepts {x} in reverse")))?;
        inserted.entry(target).or_default().push(x);
        let right: Vec<(usize, u32)> = row[target + 1..]
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.iter().filter(move |&&e| e < x).map(move |&e| (target + 1 + k, e)))
            .collect();
        if right.is_empty() {
            removed.extend(row[target].iter().map(|&e| (target, e)));
        } else {
            removed.extend(right);
        }
    }
    if special_last && len > 0 {
        removed.extend(row[len - 1].iter().map(|&e| (len - 1, e)));
    }
    let values: Vec<u32> = removed.iter().map(|&(_, e)| e).collect();
    let out_set: BTreeSet<u32> = values.iter().copied().collect();
    if out_set.len() != values.len() {
        return Err(Error::Insertion(format!("value removed from two cells: {values:?}")));
    }
    let mut out: Row = Vec::with_capacity(normal);
    for (k, src) in row.iter().enumerate().take(normal) {
        let mut cell: Vec<u32> = src.iter().copied().filter(|&e| !removed.contains(&(k, e))).collect();
        if let Some(v) = inserted.get(&k) {
            cell.extend(v);
        }
        cell.sort_unstable();
        if cell.is_empty() {
            return Err(Error::Insertion(format!("cell {} emptied in reverse", k + 1)));
        }
        out.push(cell);
    }
    Ok((out_set, out))
}

/// One step of tableau insertion: the set entering a row and the set leaving it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub row: usize,
    pub inserted: Vec<u32>,
    pub ejected: Vec<u32>,
}

fn rows_of(t: &SetValuedTableau) -> Result<Vec<Row>> {
    if !t.shape().is_straight() {
        return Err(Error::PreconditionViolated("insertion needs a straight shape".into()));
    }
    let lam = t.shape().outer();
    Ok((1..=lam.len())
        .map(|i| (1..=lam.part(i)).map(|j| t.get(Cell::new(i as u32, j)).unwrap().to_vec()).collect())
        .collect())
}

fn from_rows(rows: &[Row], n: u32) -> Result<SetValuedTableau> {
    let shape =
        Partition::new(rows.iter().map(|r| r.len() as u32).collect()).map_err(|e| Error::Insertion(e.to_string()))?;
    let mut entries = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in r.iter().enumerate() {
            entries.insert(Cell::new(i as u32 + 1, j as u32 + 1), c.clone());
        }
    }
    SetValuedTableau::new(SkewShape::straight(shape), n, entries)
}

/// `S ↪ T` with the row-by-row trace.
pub fn tableau_insert_traced(s: &BTreeSet<u32>, t: &SetValuedTableau) -> Result<(SetValuedTableau, Vec<TraceStep>)> {
    let mut rows = rows_of(t)?;
    let mut cur = s.clone();
    let mut trace = Vec::new();
    let mut k = 0;
    while !cur.is_empty() {
        if k == rows.len() {
            rows.push(Vec::new());
        }
        let (r, out) = forward_row_insert(&cur, &rows[k])?;
        trace.push(TraceStep {
            row: k + 1,
            inserted: cur.iter().copied().collect(),
            ejected: out.iter().copied().collect(),
        });
        rows[k] = r;
        cur = out;
        k += 1;
    }
    Ok((from_rows(&rows, t.n())?, trace))
}

/// `S ↪ T`.
pub fn tableau_insert(s: &BTreeSet<u32>, t: &SetValuedTableau) -> Result<SetValuedTableau> {
    tableau_insert_traced(s, t).map(|(t, _)| t)
}

/// Recovers `(S, T)` with `S ↪ T = t'` and `T` of shape `lam`.
pub fn tableau_reverse_insert(
    t_prime: &SetValuedTableau,
    lam: &Partition,
) -> Result<(BTreeSet<u32>, SetValuedTableau)> {
    let mu = t_prime.shape().outer().clone();
    if !lam.is_tangle_to(&mu) {
        return Err(Error::NotTangle { inner: lam.to_string(), outer: mu.to_string() });
    }
    let mut rows = rows_of(t_prime)?;
    let mut cur = BTreeSet::new();
    for k in (0..rows.len()).rev() {
        let special = mu.part(k + 1) > lam.part(k + 1);
        let (s, r) = reverse_row_insert(&cur, &rows[k], special)?;
        rows[k] = r;
        cur = s;
    }
    while rows.last().is_some_and(Vec::is_empty) {
        rows.pop();
    }
    Ok((cur, from_rows(&rows, t_prime.n())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(s: &str) -> Row {
        s.split_whitespace().map(|c| c.chars().map(|d| d.to_digit(10).unwrap()).collect()).collect()
    }

    fn set(s: &[u32]) -> BTreeSet<u32> {
        s.iter().copied().collect()
    }

    #[test]
    fn worked_example_display_reading() {
        let (r, s) = forward_row_insert(&set(&[1, 2, 4, 6, 7, 8]), &row("1 12 37 7 789 9")).unwrap();
        assert_eq!(r, row("1 1 12 467 7 789"));
        assert_eq!(s, set(&[2, 3, 7, 8, 9]));
        let (s0, r0) = reverse_row_insert(&s, &r, false).unwrap();
        assert_eq!((s0, r0), (set(&[1, 2, 4, 6, 7, 8]), row("1 12 37 7 789 9")));
    }

    #[test]
    fn worked_example_prose_reading() {
        let (r, s) = forward_row_insert(&set(&[1, 2, 3, 6, 7, 8]), &row("1 12 47 7 789 9")).unwrap();
        assert_eq!(r, row("1 1 123 67 7 789"));
        assert_eq!(s, set(&[2, 4, 7, 8, 9]));
        assert_ne!(r, row("1 1 12 467 7 789"));
    }

    #[test]
    fn trivial_rows() {
        let r = row("1 23");
        assert_eq!(forward_row_insert(&set(&[]), &r).unwrap(), (r.clone(), set(&[])));
        assert_eq!(forward_row_insert(&set(&[1]), &[]).unwrap(), (vec![vec![1]], set(&[])));
        assert_eq!(reverse_row_insert(&set(&[]), &r, false).unwrap(), (set(&[]), r));
    }

    #[test]
    fn single_cell_tableau() {
        let mut e = BTreeMap::new();
        e.insert(Cell::new(1, 1), vec![1]);
        let t = SetValuedTableau::new("1".parse().unwrap(), 2, e).unwrap();
        let t2 = tableau_insert(&set(&[1]), &t).unwrap();
        assert_eq!(t2.shape().outer(), &Partition::of(&[2]));
        assert_eq!(t2.column_word().len(), 2);
        let (s, back) = tableau_reverse_insert(&t2, &Partition::of(&[1])).unwrap();
        assert_eq!((s, back), (set(&[1]), t));
    }

    #[test]
    fn reverse_from_a_single_special_cell() {
        let mut e = BTreeMap::new();
        e.insert(Cell::new(1, 1), vec![1, 3]);
        let t = SetValuedTableau::new("1".parse().unwrap(), 3, e).unwrap();
        let (s, back) = tableau_reverse_insert(&t, &Partition::empty()).unwrap();
        assert_eq!(s, set(&[1, 3]));
        assert_eq!(back.shape().size(), 0);
        assert!(matches!(tableau_reverse_insert(&t, &Partition::of(&[2])), Err(Error::NotTangle { .. })));
    }
}
