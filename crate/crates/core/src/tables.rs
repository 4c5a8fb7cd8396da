//! Reference value tables for the standard parameter grid, with functions to
//! recompute every row. The embedded copies are the golden values used by the
//! regression gate (`table --diff` in the CLI and the acceptance suite).

use serde::Serialize;

use crate::adjacent::AdjacentSystem;
use crate::config::Config;
use crate::lowerbound::{combined_lower_bound, fl_bound, DesignSpec, LowerBoundError};
use crate::upperbound::{optimal_upper_4design, UpperBoundError};

/// Row of the ℓ-improvement table: the largest adjacent-system zero against
/// the universal bound.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Table1Row {
    pub dimension: usize,
    pub cardinality: u64,
    pub strength: usize,
    pub ell: f64,
    pub fl_bound: f64,
    pub new_bound: f64,
}

/// Golden copy, 18 rows: lower bounds t_{k,k}^{0,ℓ}, truncated to 6 digits.
pub const TABLE1: [Table1Row; 18] = [
    Table1Row { dimension: 3, cardinality: 10, strength: 4, ell: -0.97, fl_bound: 0.689897, new_bound: 0.694892 },
    Table1Row { dimension: 3, cardinality: 10, strength: 4, ell: -0.95, fl_bound: 0.689897, new_bound: 0.698664 },
    Table1Row { dimension: 3, cardinality: 10, strength: 4, ell: -0.9, fl_bound: 0.689897, new_bound: 0.710257 },
    Table1Row { dimension: 4, cardinality: 15, strength: 4, ell: -0.97, fl_bound: 0.607625, new_bound: 0.611772 },
    Table1Row { dimension: 4, cardinality: 15, strength: 4, ell: -0.95, fl_bound: 0.607625, new_bound: 0.614815 },
    Table1Row { dimension: 4, cardinality: 15, strength: 4, ell: -0.9, fl_bound: 0.607625, new_bound: 0.623682 },
    Table1Row { dimension: 3, cardinality: 17, strength: 6, ell: -0.97, fl_bound: 0.822824, new_bound: 0.825859 },
    Table1Row { dimension: 3, cardinality: 17, strength: 6, ell: -0.95, fl_bound: 0.822824, new_bound: 0.828450 },
    Table1Row { dimension: 3, cardinality: 17, strength: 6, ell: -0.9, fl_bound: 0.822824, new_bound: 0.839165 },
    Table1Row { dimension: 4, cardinality: 31, strength: 6, ell: -0.97, fl_bound: 0.760157, new_bound: 0.762785 },
    Table1Row { dimension: 4, cardinality: 31, strength: 6, ell: -0.95, fl_bound: 0.760157, new_bound: 0.764851 },
    Table1Row { dimension: 4, cardinality: 31, strength: 6, ell: -0.9, fl_bound: 0.760157, new_bound: 0.771819 },
    Table1Row { dimension: 3, cardinality: 26, strength: 8, ell: -0.97, fl_bound: 0.885791, new_bound: 0.887931 },
    Table1Row { dimension: 3, cardinality: 26, strength: 8, ell: -0.95, fl_bound: 0.885791, new_bound: 0.890171 },
    Table1Row { dimension: 3, cardinality: 26, strength: 8, ell: -0.9, fl_bound: 0.885791, new_bound: 0.914420 },
    Table1Row { dimension: 4, cardinality: 56, strength: 8, ell: -0.97, fl_bound: 0.838596, new_bound: 0.840453 },
    Table1Row { dimension: 4, cardinality: 56, strength: 8, ell: -0.95, fl_bound: 0.838596, new_bound: 0.842071 },
    Table1Row { dimension: 4, cardinality: 56, strength: 8, ell: -0.9, fl_bound: 0.838596, new_bound: 0.849410 },
];

/// Row of the strength-4 bound table: m(C), the refined lower bound at
/// ℓ = -0.97, and the closed-form upper bound.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Table2Row {
    pub dimension: usize,
    pub cardinality: u64,
    pub m_c: u64,
    pub fl_bound: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Golden copy, 16 rows: lower bounds truncated to 6 digits, upper bounds
/// rounded up in the fourth digit.
pub const TABLE2: [Table2Row; 16] = [
    Table2Row { dimension: 3, cardinality: 10, m_c: 3, fl_bound: 0.689897, lower: 0.724753, upper: 0.7545 },
    Table2Row { dimension: 3, cardinality: 11, m_c: 4, fl_bound: 0.689897, lower: 0.694717, upper: 0.7794 },
    Table2Row { dimension: 4, cardinality: 15, m_c: 5, fl_bound: 0.607625, lower: 0.616854, upper: 0.6918 },
    Table2Row { dimension: 4, cardinality: 16, m_c: 5, fl_bound: 0.607625, lower: 0.610537, upper: 0.7072 },
    Table2Row { dimension: 5, cardinality: 21, m_c: 7, fl_bound: 0.546918, lower: 0.550012, upper: 0.6503 },
    Table2Row { dimension: 5, cardinality: 22, m_c: 8, fl_bound: 0.546918, lower: 0.548132, upper: 0.6604 },
    Table2Row { dimension: 6, cardinality: 28, m_c: 10, fl_bound: 0.500000, lower: 0.501717, upper: 0.6198 },
    Table2Row { dimension: 6, cardinality: 29, m_c: 10, fl_bound: 0.500000, lower: 0.501288, upper: 0.6269 },
    Table2Row { dimension: 7, cardinality: 36, m_c: 13, fl_bound: 0.462475, lower: 0.463455, upper: 0.5960 },
    Table2Row { dimension: 7, cardinality: 37, m_c: 13, fl_bound: 0.462475, lower: 0.462961, upper: 0.6012 },
    Table2Row { dimension: 8, cardinality: 45, m_c: 16, fl_bound: 0.431662, lower: 0.431663, upper: 0.5766 },
    Table2Row { dimension: 8, cardinality: 46, m_c: 17, fl_bound: 0.431662, lower: 0.432103, upper: 0.5805 },
    Table2Row { dimension: 9, cardinality: 55, m_c: 20, fl_bound: 0.405827, lower: 0.405915, upper: 0.5602 },
    Table2Row { dimension: 9, cardinality: 56, m_c: 21, fl_bound: 0.405827, lower: 0.406039, upper: 0.5633 },
    Table2Row { dimension: 10, cardinality: 66, m_c: 25, fl_bound: 0.383795, lower: 0.383922, upper: 0.5461 },
    Table2Row { dimension: 10, cardinality: 67, m_c: 25, fl_bound: 0.383795, lower: 0.383972, upper: 0.5486 },
];

/// Truncate toward zero at 6 decimal digits, with a 1e-9 guard against values
/// sitting a hair under a digit boundary after bisection.
pub fn truncate6(x: f64) -> f64 {
    ((x * 1e6) + 1e-3).floor() / 1e6
}

/// Round up in the fourth digit (upper bounds stay valid after rounding).
pub fn ceil4(x: f64) -> f64 {
    ((x * 1e4) - 1e-9).ceil() / 1e4
}

/// Full-precision recomputation of one row of the ℓ-improvement table.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ComputedTable1Row {
    pub dimension: usize,
    pub cardinality: u64,
    pub strength: usize,
    pub ell: f64,
    pub fl_bound_raw: f64,
    pub new_bound_raw: f64,
}

pub fn compute_table1_row(row: &Table1Row) -> Result<ComputedTable1Row, LowerBoundError> {
    let k = row.strength / 2;
    let system = AdjacentSystem::<f64>::new(row.dimension, k, row.ell)?;
    Ok(ComputedTable1Row {
        dimension: row.dimension,
        cardinality: row.cardinality,
        strength: row.strength,
        ell: row.ell,
        fl_bound_raw: fl_bound::<f64>(row.dimension, row.strength),
        new_bound_raw: system.largest_zero(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComputedTable2Row {
    pub dimension: usize,
    pub cardinality: u64,
    pub m_c: u64,
    pub fl_bound_raw: f64,
    pub lower_raw: f64,
    pub upper_raw: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error(transparent)]
    Lower(#[from] LowerBoundError),
    #[error(transparent)]
    Upper(#[from] UpperBoundError),
    #[error("all branches infeasible for (n={0}, M={1})")]
    AllBranchesInfeasible(usize, u64),
}

pub fn compute_table2_row(
    dimension: usize,
    cardinality: u64,
    cfg: &Config,
) -> Result<ComputedTable2Row, TableError> {
    let spec = DesignSpec::new(dimension, 4, cardinality)?;
    let report = combined_lower_bound(&spec, -0.97f64, cfg)?;
    let lower = report
        .worst_case_bound
        .ok_or(TableError::AllBranchesInfeasible(dimension, cardinality))?;
    let upper = optimal_upper_4design(dimension, cardinality)?;
    Ok(ComputedTable2Row {
        dimension,
        cardinality,
        m_c: report.m_c,
        fl_bound_raw: report.t_fl,
        lower_raw: lower,
        upper_raw: upper.bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_handles_bisection_jitter() {
        assert_eq!(truncate6(0.4999999999997), 0.5);
        assert_eq!(truncate6(0.6948921), 0.694892);
        assert_eq!(truncate6(0.6948929), 0.694892);
    }

    #[test]
    fn ceil4_rounds_up() {
        assert_eq!(ceil4(0.7544424), 0.7545);
        assert_eq!(ceil4(0.6917755), 0.6918);
        assert_eq!(ceil4(0.5), 0.5);
    }
}
