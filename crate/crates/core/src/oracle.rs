//! Exhaustive ground truth for `n ≤ 3`.
//!
//! Enumerates every arrangement of `1..=n²` in lexicographic row-major order
//! with no symmetry pruning. The space can be split by the value of the
//! first cell; [`OracleTally::merge`] combines the parts in any order.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::ExactInt;
use crate::grid::{objective, Grid};

pub const MAX_ORACLE_N: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub value: ExactInt,
    /// Lexicographically smallest maximizer.
    pub witness: Grid,
    /// Number of distinct maximizing grids.
    pub maximizer_count: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleTally {
    best: Option<(ExactInt, Vec<i64>)>,
    count: u64,
    /// All maximizers, only collected when requested.
    maximizers: Option<Vec<Vec<i64>>>,
}

impl OracleTally {
    fn collecting() -> Self {
        OracleTally { maximizers: Some(Vec::new()), ..Default::default() }
    }

    fn record(&mut self, value: ExactInt, entries: &[i64]) {
        match &self.best {
            Some((b, _)) if value < *b => {}
            Some((b, w)) if value == *b => {
                self.count += 1;
                if entries < w.as_slice() {
                    self.best = Some((value, entries.to_vec()));
                }
                if let Some(all) = &mut self.maximizers {
                    all.push(entries.to_vec());
                }
            }
            _ => {
                self.best = Some((value, entries.to_vec()));
                self.count = 1;
                if let Some(all) = &mut self.maximizers {
                    all.clear();
                    all.push(entries.to_vec());
                }
            }
        }
    }

    /// Max plus count. Commutative and associative.
    pub fn merge(self, other: OracleTally) -> OracleTally {
        let collect = self.maximizers.is_some() && other.maximizers.is_some();
        let (a, b) = match (&self.best, &other.best) {
            (None, _) => return other,
            (_, None) => return self,
            (Some((va, _)), Some((vb, _))) if va < vb => (other, self),
            _ => (self, other),
        };
        let (va, wa) = a.best.clone().unwrap();
        let (vb, wb) = b.best.clone().unwrap();
        if va > vb {
            return a;
        }
        let mut maximizers = None;
        if collect {
            let mut all = a.maximizers.unwrap();
            all.extend(b.maximizers.unwrap());
            all.sort();
            maximizers = Some(all);
        }
        OracleTally {
            best: Some((va, if wa <= wb { wa } else { wb })),
            count: a.count + b.count,
            maximizers,
        }
    }

    fn into_result(self, n: usize) -> Result<OracleResult> {
        let (value, w) = self.best.ok_or(Error::EmptyGrid)?;
        Ok(OracleResult { value, witness: Grid::new(n, w)?, maximizer_count: self.count })
    }
}

/// Rearranges `v` into the next permutation in lexicographic order.
/// Returns `false` once `v` was the last one.
fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn check_n(n: usize) -> Result<()> {
    match n {
        0 => Err(Error::EmptyGrid),
        1..=MAX_ORACLE_N => Ok(()),
        _ => Err(Error::TooLarge(n)),
    }
}

fn enumerate_part(n: usize, first: i64, tally: &mut OracleTally) -> Result<()> {
    let size = (n * n) as i64;
    let mut entries: Vec<i64> = Vec::with_capacity(n * n);
    entries.push(first);
    entries.extend((1..=size).filter(|&v| v != first));
    loop {
        let g = Grid::new(n, entries.clone())?;
        tally.record(objective(&g)?, &entries);
        if !next_permutation(&mut entries[1..]) {
            return Ok(());
        }
    }
}

/// The part of the enumeration whose first cell holds `first`.
pub fn exhaustive_part(n: usize, first: i64) -> Result<OracleTally> {
    check_n(n)?;
    if first < 1 || first > (n * n) as i64 {
        return Err(Error::OutOfRange(first));
    }
    let mut tally = OracleTally::default();
    enumerate_part(n, first, &mut tally)?;
    Ok(tally)
}

/// Finalizes a merged tally.
pub fn finish(n: usize, tally: OracleTally) -> Result<OracleResult> {
    check_n(n)?;
    tally.into_result(n)
}

/// `p_n` by brute force over all `(n²)!` grids. Refuses `n > 3`.
pub fn exhaustive_pn(n: usize) -> Result<OracleResult> {
    check_n(n)?;
    let mut tally = OracleTally::default();
    for first in 1..=(n * n) as i64 {
        enumerate_part(n, first, &mut tally)?;
    }
    tally.into_result(n)
}

/// Every maximizing grid, in lexicographic order.
pub fn all_maximizers(n: usize) -> Result<Vec<Grid>> {
    check_n(n)?;
    let mut tally = OracleTally::collecting();
    for first in 1..=(n * n) as i64 {
        enumerate_part(n, first, &mut tally)?;
    }
    tally.maximizers.unwrap_or_default().into_iter().map(|e| Grid::new(n, e)).collect()
}
