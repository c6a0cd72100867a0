//! Dense integer matrices, column sets and solution witnesses.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major `rows x cols` integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl TryFrom<Vec<Vec<i64>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<i64>> {
    fn from(m: Matrix) -> Self {
        (0..m.rows).map(|i| m.row(i).to_vec()).collect()
    }
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("matrix rows differ in length".into()));
        }
        let n_rows = rows.len();
        Ok(Matrix { rows: n_rows, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(columns: &[Vec<i64>]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.len());
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Invalid("matrix columns differ in length".into()));
        }
        let data = (0..rows)
            .flat_map(|i| columns.iter().map(move |c| c[i]))
            .collect();
        Ok(Matrix { rows, cols: columns.len(), data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Max absolute entry (0 for an empty matrix).
    pub fn delta(&self) -> u64 {
        self.data.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0)
    }

    /// First pair of equal columns, if any.
    pub fn duplicate_columns(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        for j in 0..self.cols {
            if let Some(&i) = seen.get(&self.column(j)) {
                return Some((i, j));
            }
            seen.insert(self.column(j), j);
        }
        None
    }

    /// `A x` in i128.
    pub fn mul_vec(&self, x: &[i64]) -> Vec<i128> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum()
            })
            .collect()
    }
}

/// Duplicate-free set of equal-length integer vectors, kept in first-seen order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSet {
    dim: usize,
    columns: Vec<Vec<i64>>,
}

impl VectorSet {
    pub fn new(dim: usize, vectors: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut columns = Vec::new();
        for v in vectors {
            if v.len() != dim {
                return Err(Error::Invalid("vector dimension mismatch".into()));
            }
            if seen.insert(v.clone()) {
                columns.push(v);
            }
        }
        Ok(VectorSet { dim, columns })
    }

    pub fn of_matrix(a: &Matrix) -> Self {
        VectorSet::new(a.rows(), a.columns()).expect("columns share the row count")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.columns
    }
}

/// A certified solution. Re-evaluating it against its instance reproduces the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum SolveWitness {
    /// Indices into the input, increasing.
    SubsetOfIndices(Vec<usize>),
    /// One integer per variable.
    MultiplicityVector(Vec<i64>),
    /// One 0/1 entry per variable.
    BinaryVector(Vec<u8>),
}

impl SolveWitness {
    /// The witness as a dense integer assignment over `n` variables.
    pub fn to_assignment(&self, n: usize) -> Vec<i64> {
        match self {
            SolveWitness::SubsetOfIndices(idx) => {
                let mut x = vec![0; n];
                for &i in idx {
                    x[i] = 1;
                }
                x
            }
            SolveWitness::MultiplicityVector(v) => v.clone(),
            SolveWitness::BinaryVector(v) => v.iter().map(|&b| b as i64).collect(),
        }
    }
}

/// Outcome of a feasibility solver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witness", rename_all = "kebab-case")]
pub enum Outcome {
    Feasible(SolveWitness),
    Infeasible,
}

impl Outcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Outcome::Feasible(_))
    }

    pub fn witness(&self) -> Option<&SolveWitness> {
        match self {
            Outcome::Feasible(w) => Some(w),
            Outcome::Infeasible => None,
        }
    }
}
