//! Multi-restart hill climbing over permutation grids.
//!
//! The neighborhood is every transposition of two cells. Since the objective
//! is `Σₖ R_k·C_k`, a transposition touches at most two rows and two columns
//! and its gain is computed from at most four margin terms.
//!
//! Each restart draws from its own stream derived from `(seed, restart)`, so
//! restarts can run in any order or in parallel. [`SearchAccumulator`]
//! merges outcomes with a commutative max, which makes the final result
//! independent of scheduling.

use core::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::construction::build;
use crate::error::{Error, Result};
use crate::exact::{self, ExactInt};
use crate::grid::{validate_grid, Grid, Margins};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MovePolicy {
    /// Take the best transposition; ties go to the smallest `(p, q)` pair.
    #[default]
    BestImprovement,
    /// Take the first improving transposition in `(p, q)` order.
    FirstImprovement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitStrategy {
    #[default]
    RandomShuffle,
    /// Restart 0 starts from the construction `A_n`, the rest are shuffled.
    ConstructionSeeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClimbConfig {
    pub restarts: usize,
    pub seed: u64,
    pub move_policy: MovePolicy,
    pub init_strategy: InitStrategy,
    /// Cap on accepted moves per climb.
    pub max_iterations: Option<u64>,
}

impl ClimbConfig {
    pub fn new(restarts: usize, seed: u64) -> Result<Self> {
        if restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1"));
        }
        Ok(ClimbConfig {
            restarts,
            seed,
            move_policy: MovePolicy::default(),
            init_strategy: InitStrategy::default(),
            max_iterations: None,
        })
    }

    pub fn with_policy(mut self, policy: MovePolicy) -> Self {
        self.move_policy = policy;
        self
    }

    pub fn with_init(mut self, init: InitStrategy) -> Self {
        self.init_strategy = init;
        self
    }

    pub fn with_max_iterations(mut self, cap: Option<u64>) -> Self {
        self.max_iterations = cap;
        self
    }
}

/// Objective change from swapping the values at row-major cells `p` and `q`.
///
/// With `d = g[q] − g[p]`, the swap adds `d` to row/column of `p` and
/// subtracts it from row/column of `q`. Shared rows or columns cancel.
pub fn transposition_gain(g: &Grid, m: &Margins, p: usize, q: usize) -> Result<ExactInt> {
    let n = g.n();
    let size = n * n;
    for index in [p, q] {
        if index >= size {
            return Err(Error::IndexOutOfRange { index, size });
        }
    }
    let entries = g.entries();
    let d = exact::sub(entries[q].into(), entries[p].into())?;
    gain_for(&m.rows, &m.cols, p / n, p % n, q / n, q % n, d)
}

#[inline]
fn gain_for(
    rows: &[ExactInt],
    cols: &[ExactInt],
    r1: usize,
    c1: usize,
    r2: usize,
    c2: usize,
    d: ExactInt,
) -> Result<ExactInt> {
    let mut seen = [usize::MAX; 4];
    let mut gain: ExactInt = 0;
    for (slot, k) in [r1, r2, c1, c2].into_iter().enumerate() {
        if seen[..slot].contains(&k) {
            continue;
        }
        seen[slot] = k;
        let dr = if k == r1 { d } else { 0 } - if k == r2 { d } else { 0 };
        let dc = if k == c1 { d } else { 0 } - if k == c2 { d } else { 0 };
        if dr == 0 && dc == 0 {
            continue;
        }
        // (R+dr)(C+dc) − RC
        let term = exact::add(
            exact::add(exact::mul(rows[k], dc)?, exact::mul(cols[k], dr)?)?,
            exact::mul(dr, dc)?,
        )?;
        gain = exact::add(gain, term)?;
    }
    Ok(gain)
}

/// Objective of `g` after swapping cells `p` and `q`, given its margins and
/// current objective. Uses only the affected margin terms.
pub fn swap_delta(
    g: &Grid,
    m: &Margins,
    current: ExactInt,
    p: usize,
    q: usize,
) -> Result<ExactInt> {
    if p == q {
        return Err(Error::InvalidArgument("swap positions must differ"));
    }
    exact::add(current, transposition_gain(g, m, p, q)?)
}

/// A grid together with its margins and objective, kept in sync under swaps.
#[derive(Debug, Clone)]
pub struct IncrementalGrid {
    grid: Grid,
    margins: Margins,
    value: ExactInt,
}

impl IncrementalGrid {
    pub fn new(grid: Grid) -> Result<Self> {
        let margins = Margins::of(&grid)?;
        let value = margins.objective()?;
        Ok(IncrementalGrid { grid, margins, value })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn margins(&self) -> &Margins {
        &self.margins
    }

    pub fn value(&self) -> ExactInt {
        self.value
    }

    pub fn gain(&self, p: usize, q: usize) -> Result<ExactInt> {
        transposition_gain(&self.grid, &self.margins, p, q)
    }

    /// Applies the swap, updating margins and value incrementally.
    pub fn apply_swap(&mut self, p: usize, q: usize) -> Result<ExactInt> {
        let gain = self.gain(p, q)?;
        let n = self.grid.n();
        let e = self.grid.entries();
        let d = ExactInt::from(e[q]) - ExactInt::from(e[p]);
        let (r1, c1, r2, c2) = (p / n, p % n, q / n, q % n);
        let m = &mut self.margins;
        m.rows[r1] = exact::add(m.rows[r1], d)?;
        m.rows[r2] = exact::sub(m.rows[r2], d)?;
        m.cols[c1] = exact::add(m.cols[c1], d)?;
        m.cols[c2] = exact::sub(m.cols[c2], d)?;
        self.value = exact::add(self.value, gain)?;
        self.grid.swap_cells(p, q)?;
        debug_assert_eq!(Some(self.value), self.margins.objective().ok());
        Ok(gain)
    }

    pub fn into_grid(self) -> Grid {
        self.grid
    }
}

/// Best `(gain, p, q)` over all transpositions with positive gain, or the
/// first positive one in `(p, q)` order.
fn find_move(state: &IncrementalGrid, policy: MovePolicy) -> Result<Option<(ExactInt, usize, usize)>> {
    let g = state.grid();
    let n = g.n();
    let size = n * n;
    let entries = g.entries();
    let rows = &state.margins.rows;
    let cols = &state.margins.cols;
    let mut best: Option<(ExactInt, usize, usize)> = None;
    for p in 0..size {
        let (r1, c1) = (p / n, p % n);
        let a = ExactInt::from(entries[p]);
        for q in (p + 1)..size {
            let d = ExactInt::from(entries[q]) - a;
            let gain = gain_for(rows, cols, r1, c1, q / n, q % n, d)?;
            if gain > 0 && best.is_none_or(|(b, _, _)| gain > b) {
                best = Some((gain, p, q));
                if policy == MovePolicy::FirstImprovement {
                    return Ok(best);
                }
            }
        }
    }
    Ok(best)
}

/// Result of one climb.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Climb {
    pub grid: Grid,
    pub value: ExactInt,
    /// Accepted moves.
    pub iterations: u64,
    /// The climb stopped at `max_iterations`, not at a local optimum.
    pub capped: bool,
}

/// Climbs from `start` until no transposition improves the objective.
pub fn climb(start: Grid, policy: MovePolicy, max_iterations: Option<u64>) -> Result<Climb> {
    validate_grid(&start)?;
    let mut state = IncrementalGrid::new(start)?;
    let mut iterations = 0u64;
    loop {
        if max_iterations.is_some_and(|cap| iterations >= cap) {
            // capped only if an improving move still exists
            let capped = find_move(&state, policy)?.is_some();
            let value = state.value();
            return Ok(Climb { grid: state.into_grid(), value, iterations, capped });
        }
        match find_move(&state, policy)? {
            Some((_, p, q)) => {
                state.apply_swap(p, q)?;
                iterations += 1;
            }
            None => {
                let value = state.value();
                return Ok(Climb { grid: state.into_grid(), value, iterations, capped: false });
            }
        }
    }
}

/// `true` if no transposition of `g` increases the objective.
pub fn is_local_optimum(g: &Grid) -> Result<bool> {
    let state = IncrementalGrid::new(g.clone())?;
    Ok(find_move(&state, MovePolicy::FirstImprovement)?.is_none())
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The random stream for restart `index`: the seed and restart index are
/// mixed through two splitmix64 rounds and expanded into a xoshiro256++
/// state.
pub fn restart_stream(seed: u64, index: usize) -> Xoshiro256PlusPlus {
    let mixed = splitmix64(seed.wrapping_add(GOLDEN_GAMMA));
    let stream = splitmix64(mixed ^ (index as u64).wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    Xoshiro256PlusPlus::seed_from_u64(stream)
}

/// A uniformly random permutation grid (Fisher–Yates over `1..=n²`).
pub fn random_grid<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Grid> {
    if n == 0 {
        return Err(Error::EmptyGrid);
    }
    let size = n.checked_mul(n).ok_or(Error::Overflow)?;
    let mut entries: alloc::vec::Vec<i64> = (1..=size as i64).collect();
    entries.shuffle(rng);
    Grid::new(n, entries)
}

/// The starting grid of restart `index`.
pub fn initial_grid(n: usize, config: &ClimbConfig, index: usize) -> Result<Grid> {
    if index == 0 && config.init_strategy == InitStrategy::ConstructionSeeded {
        return build(n);
    }
    random_grid(n, &mut restart_stream(config.seed, index))
}

/// Outcome of a single restart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestartOutcome {
    pub index: usize,
    pub grid: Grid,
    pub value: ExactInt,
    pub iterations: u64,
    pub capped: bool,
}

pub fn run_restart(n: usize, config: &ClimbConfig, index: usize) -> Result<RestartOutcome> {
    let start = initial_grid(n, config, index)?;
    let c = climb(start, config.move_policy, config.max_iterations)?;
    Ok(RestartOutcome {
        index,
        grid: c.grid,
        value: c.value,
        iterations: c.iterations,
        capped: c.capped,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub best: Grid,
    pub value: ExactInt,
    pub restart_index: usize,
    pub total_iterations: u64,
    pub seed: u64,
}

/// Higher value wins; ties go to the lexicographically smaller row-major
/// grid, then to the smaller restart index.
fn better(a: &RestartOutcome, b: &RestartOutcome) -> bool {
    match a.value.cmp(&b.value) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match a.grid.entries().cmp(b.grid.entries()) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => a.index < b.index,
        },
    }
}

/// Order-independent reduction of restart outcomes.
#[derive(Debug, Clone, Default)]
pub struct SearchAccumulator {
    best: Option<RestartOutcome>,
    total_iterations: u64,
}

impl SearchAccumulator {
    pub fn absorb(&mut self, outcome: RestartOutcome) {
        self.total_iterations = self.total_iterations.saturating_add(outcome.iterations);
        if self.best.as_ref().is_none_or(|b| better(&outcome, b)) {
            self.best = Some(outcome);
        }
    }

    pub fn merge(mut self, other: SearchAccumulator) -> SearchAccumulator {
        self.total_iterations = self.total_iterations.saturating_add(other.total_iterations);
        if let Some(o) = other.best {
            if self.best.as_ref().is_none_or(|b| better(&o, b)) {
                self.best = Some(o);
            }
        }
        self
    }

    pub fn finish(self, seed: u64) -> Option<SearchResult> {
        let best = self.best?;
        Some(SearchResult {
            best: best.grid,
            value: best.value,
            restart_index: best.index,
            total_iterations: self.total_iterations,
            seed,
        })
    }
}

/// Runs every restart sequentially and returns the best grid found.
pub fn search_best(n: usize, config: &ClimbConfig) -> Result<SearchResult> {
    search_best_with(n, config, |_| {})
}

/// [`search_best`] with a callback invoked after each restart, in order.
pub fn search_best_with<F: FnMut(&RestartOutcome)>(
    n: usize,
    config: &ClimbConfig,
    mut on_restart: F,
) -> Result<SearchResult> {
    if config.restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1"));
    }
    let mut acc = SearchAccumulator::default();
    for i in 0..config.restarts {
        let outcome = run_restart(n, config, i)?;
        on_restart(&outcome);
        acc.absorb(outcome);
    }
    acc.finish(config.seed).ok_or(Error::InvalidArgument("restarts must be at least 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::objective;

    fn g(rows: &[&[i64]]) -> Grid {
        Grid::from_rows(rows).unwrap()
    }

    fn brute_after_swap(grid: &Grid, p: usize, q: usize) -> ExactInt {
        let mut h = grid.clone();
        h.swap_cells(p, q).unwrap();
        objective(&h).unwrap()
    }

    #[test]
    fn swap_delta_examples() {
        let a = g(&[&[1, 4], &[2, 3]]);
        let m = Margins::of(&a).unwrap();
        let cur = objective(&a).unwrap();
        assert_eq!(cur, 50);
        // (1,2) <-> (2,1)
        assert_eq!(swap_delta(&a, &m, cur, 1, 2), Ok(brute_after_swap(&a, 1, 2)));
        assert_eq!(swap_delta(&a, &m, cur, 1, 2), Ok(50));
        // (1,1) <-> (1,2): [[4,1],[2,3]], rows (5,5), cols (6,4)
        assert_eq!(swap_delta(&a, &m, cur, 0, 1), Ok(brute_after_swap(&a, 0, 1)));
        assert_eq!(swap_delta(&a, &m, cur, 0, 1), Ok(50));
        // same row: only columns move
        let b = g(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let mb = Margins::of(&b).unwrap();
        let cb = objective(&b).unwrap();
        assert_eq!(swap_delta(&b, &mb, cb, 3, 5), Ok(brute_after_swap(&b, 3, 5)));
        assert_eq!(swap_delta(&b, &mb, cb, 1, 7), Ok(brute_after_swap(&b, 1, 7)));
    }

    #[test]
    fn swap_delta_errors() {
        let a = g(&[&[1, 4], &[2, 3]]);
        let m = Margins::of(&a).unwrap();
        assert_eq!(swap_delta(&a, &m, 50, 0, 4), Err(Error::IndexOutOfRange { index: 4, size: 4 }));
        assert!(swap_delta(&a, &m, 50, 2, 2).is_err());
    }

    #[test]
    fn climb_examples() {
        let c = climb(g(&[&[1, 4], &[2, 3]]), MovePolicy::BestImprovement, None).unwrap();
        assert_eq!(c.value, 54);
        assert!(!c.capped);
        let c = climb(build(2).unwrap(), MovePolicy::BestImprovement, None).unwrap();
        assert_eq!((c.value, c.iterations), (54, 0));
        let c = climb(build(3).unwrap(), MovePolicy::BestImprovement, None).unwrap();
        assert_eq!(c.value, 761);
    }

    #[test]
    fn climb_cap_is_flagged() {
        let start = g(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let c = climb(start, MovePolicy::BestImprovement, Some(0)).unwrap();
        assert!(c.capped);
        assert_eq!(c.iterations, 0);
    }

    #[test]
    fn climb_rejects_non_permutation() {
        assert!(climb(g(&[&[1, 1], &[2, 3]]), MovePolicy::BestImprovement, None).is_err());
    }

    #[test]
    fn config_requires_restarts() {
        assert!(ClimbConfig::new(0, 1).is_err());
    }

    #[test]
    fn streams_differ_per_restart() {
        use rand::RngCore;
        let a = restart_stream(7, 0).next_u64();
        let b = restart_stream(7, 1).next_u64();
        let c = restart_stream(8, 0).next_u64();
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, restart_stream(7, 0).next_u64());
    }

    #[test]
    fn search_n2_any_seed() {
        for seed in 0..20 {
            let cfg = ClimbConfig::new(1, seed).unwrap();
            assert_eq!(search_best(2, &cfg).unwrap().value, 54);
        }
    }

    #[test]
    fn construction_seeded_start() {
        let cfg = ClimbConfig::new(1, 0).unwrap().with_init(InitStrategy::ConstructionSeeded);
        assert!(search_best(4, &cfg).unwrap().value >= 5276);
    }

    #[test]
    fn accumulator_is_order_independent() {
        let cfg = ClimbConfig::new(12, 3).unwrap();
        let outcomes: alloc::vec::Vec<_> = (0..12).map(|i| run_restart(4, &cfg, i).unwrap()).collect();
        let mut fwd = SearchAccumulator::default();
        outcomes.iter().cloned().for_each(|o| fwd.absorb(o));
        let mut rev = SearchAccumulator::default();
        outcomes.iter().rev().cloned().for_each(|o| rev.absorb(o));
        assert_eq!(fwd.finish(3), rev.finish(3));
    }
}
