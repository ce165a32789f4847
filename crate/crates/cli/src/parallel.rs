//! Parallel drivers. Work is split across a private rayon pool and merged
//! in index order, so output does not depend on the number of threads.

use matpow_core::oracle::{self, OracleResult, OracleTally};
use matpow_core::search::{run_restart, ClimbConfig, RestartOutcome, SearchAccumulator, SearchResult};
use rayon::prelude::*;

use crate::error::CliError;

pub const THREADS_ENV: &str = "MATPOW_THREADS";

/// Worker count from `MATPOW_THREADS`, defaulting to the available
/// parallelism.
pub fn thread_count() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => Err(CliError::usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |p| p.get())),
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::usage(format!("thread pool: {e}")))
}

/// Runs every restart on `threads` workers. Returns the merged result and
/// the per-restart outcomes in restart order.
pub fn search_best(
    n: usize,
    config: &ClimbConfig,
    threads: usize,
) -> Result<(SearchResult, Vec<RestartOutcome>), CliError> {
    let outcomes: Vec<RestartOutcome> = pool(threads)?.install(|| {
        (0..config.restarts)
            .into_par_iter()
            .map(|i| run_restart(n, config, i))
            .collect::<Result<_, _>>()
    })?;
    let mut acc = SearchAccumulator::default();
    for o in &outcomes {
        acc.absorb(o.clone());
    }
    let result = acc
        .finish(config.seed)
        .ok_or_else(|| CliError::usage("restarts must be at least 1"))?;
    Ok((result, outcomes))
}

/// The exhaustive oracle with the permutation space split by the value of
/// the first cell.
pub fn exhaustive_pn(n: usize, threads: usize) -> Result<OracleResult, CliError> {
    if n == 0 || n > oracle::MAX_ORACLE_N {
        return Ok(oracle::exhaustive_pn(n)?);
    }
    let parts: Vec<OracleTally> = pool(threads)?.install(|| {
        (1..=(n * n) as i64)
            .into_par_iter()
            .map(|first| oracle::exhaustive_part(n, first))
            .collect::<Result<_, _>>()
    })?;
    let merged = parts.into_iter().fold(OracleTally::default(), OracleTally::merge);
    Ok(oracle::finish(n, merged)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let cfg = ClimbConfig::new(16, 9).unwrap();
        let seq = matpow_core::search::search_best(5, &cfg).unwrap();
        for threads in [1, 3, 8] {
            let (par, outcomes) = search_best(5, &cfg, threads).unwrap();
            assert_eq!(par, seq);
            assert_eq!(outcomes.len(), 16);
            assert!(outcomes.iter().enumerate().all(|(i, o)| o.index == i));
        }
    }

    #[test]
    fn parallel_oracle_matches() {
        for n in 1..=2 {
            assert_eq!(exhaustive_pn(n, 4).unwrap(), oracle::exhaustive_pn(n).unwrap());
        }
        assert!(exhaustive_pn(4, 2).is_err());
    }
}
