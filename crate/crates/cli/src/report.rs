//! JSON records emitted by the command line.

use matpow_core::bounds::BoundsReport;
use matpow_core::construction::{ConditionReport, Witness};
use matpow_core::oracle::OracleResult;
use matpow_core::search::{RestartOutcome, SearchResult};
use matpow_core::{ExactInt, Margins};
use serde::{Deserialize, Serialize};

use crate::format::MatrixJson;

/// Bounds on `p_n` with rationals split into numerator and denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub n: usize,
    pub lower: ExactInt,
    pub trivial_lower_num: ExactInt,
    pub trivial_lower_den: ExactInt,
    pub upper_num: ExactInt,
    pub upper_den: ExactInt,
    pub known_exact: Option<ExactInt>,
}

impl From<&BoundsReport> for BoundsJson {
    fn from(r: &BoundsReport) -> Self {
        BoundsJson {
            n: r.n,
            lower: r.lower,
            trivial_lower_num: r.trivial_lower.num(),
            trivial_lower_den: r.trivial_lower.den(),
            upper_num: r.upper.num(),
            upper_den: r.upper.den(),
            known_exact: r.known_exact,
        }
    }
}

/// One progress line per restart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestartLine {
    pub restart: usize,
    pub value: ExactInt,
    pub iterations: u64,
}

impl From<&RestartOutcome> for RestartLine {
    fn from(o: &RestartOutcome) -> Self {
        RestartLine { restart: o.index, value: o.value, iterations: o.iterations }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchJson {
    pub n: usize,
    pub value: ExactInt,
    pub restart_index: usize,
    pub total_iterations: u64,
    pub seed: u64,
    pub best: MatrixJson<i64>,
}

impl From<&SearchResult> for SearchJson {
    fn from(r: &SearchResult) -> Self {
        SearchJson {
            n: r.best.n(),
            value: r.value,
            restart_index: r.restart_index,
            total_iterations: r.total_iterations,
            seed: r.seed,
            best: MatrixJson::from(&r.best),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub n: usize,
    pub value: ExactInt,
    pub maximizer_count: u64,
    pub witness: MatrixJson<i64>,
}

impl From<&OracleResult> for OracleJson {
    fn from(r: &OracleResult) -> Self {
        OracleJson {
            n: r.witness.n(),
            value: r.value,
            maximizer_count: r.maximizer_count,
            witness: MatrixJson::from(&r.witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    Asymmetric { i: usize, j: usize, diff: i64 },
    UnbalancedLine { i: usize, diff: ExactInt },
    OffByNotOne { i: usize, diff: ExactInt },
    PositiveCount { count: usize },
    NotOnDiagonal { value: i64 },
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        match *w {
            Witness::Asymmetric { i, j, diff } => WitnessJson::Asymmetric { i, j, diff },
            Witness::UnbalancedLine { i, diff } => WitnessJson::UnbalancedLine { i, diff },
            Witness::OffByNotOne { i, diff } => WitnessJson::OffByNotOne { i, diff },
            Witness::PositiveCount { count } => WitnessJson::PositiveCount { count },
            Witness::NotOnDiagonal { value } => WitnessJson::NotOnDiagonal { value },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsJson {
    pub cond_a: bool,
    pub cond_b: Option<bool>,
    pub cond_c: Option<bool>,
    pub cond_d: bool,
    pub witnesses: Vec<WitnessJson>,
}

impl From<&ConditionReport> for ConditionsJson {
    fn from(r: &ConditionReport) -> Self {
        ConditionsJson {
            cond_a: r.cond_a,
            cond_b: r.cond_b,
            cond_c: r.cond_c,
            cond_d: r.cond_d,
            witnesses: r.witnesses.iter().map(WitnessJson::from).collect(),
        }
    }
}

/// Everything the `objective` subcommand reports about one grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveJson {
    pub n: usize,
    pub objective: ExactInt,
    pub rows: Vec<ExactInt>,
    pub cols: Vec<ExactInt>,
    pub mu_implied: Option<f64>,
    pub conditions: ConditionsJson,
}

impl ObjectiveJson {
    pub fn new(
        n: usize,
        objective: ExactInt,
        margins: &Margins,
        mu_implied: Option<f64>,
        conditions: &ConditionReport,
    ) -> Self {
        ObjectiveJson {
            n,
            objective,
            rows: margins.rows.clone(),
            cols: margins.cols.clone(),
            mu_implied,
            conditions: ConditionsJson::from(conditions),
        }
    }
}
