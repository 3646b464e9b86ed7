//! Finite bipartite graphs stored as 0-1 biadjacency matrices.
//!
//! Row vertices and column vertices are kept apart; an edge `(r_i, c_j)`
//! is a 1 in position `(i, j)`. Equality is label-sensitive; use
//! [`BiGraph::is_isomorphic`] to compare graphs up to relabeling and
//! swapping the two sides.

mod catalog;
mod iso;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

pub use catalog::{catalog, GraphName};
pub use iso::CanonicalKey;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiGraph {
    m: usize,
    n: usize,
    bits: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct BiGraphJson {
    m: usize,
    n: usize,
    rows: Vec<String>,
}

impl BiGraph {
    pub fn empty(m: usize, n: usize) -> Self {
        Self { m, n, bits: vec![false; m * n] }
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                bits.push(f(i, j));
            }
        }
        Self { m, n, bits }
    }

    /// Builds an `m × n` graph from rows of '0'/'1' characters.
    pub fn from_bits<S: AsRef<str>>(m: usize, n: usize, rows: &[S]) -> Result<Self> {
        if rows.len() != m {
            return Err(Error::Parse {
                row: rows.len().min(m),
                msg: format!("expected {m} rows, found {}", rows.len()),
            });
        }
        let mut bits = Vec::with_capacity(m * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            let mut len = 0;
            for ch in row.chars() {
                match ch {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    other => {
                        return Err(Error::Parse { row: i, msg: format!("invalid symbol {other:?}") })
                    }
                }
                len += 1;
            }
            if len != n {
                return Err(Error::Parse { row: i, msg: format!("expected {n} entries, found {len}") });
            }
        }
        Ok(Self { m, n, bits })
    }

    /// Shorthand for [`from_bits`](Self::from_bits) with dimensions taken
    /// from the rows themselves.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.as_ref().chars().count());
        Self::from_bits(rows.len(), n, rows)
    }

    /// Builds a graph from a 0-1 matrix; any other value is an error.
    pub fn from_matrix(a: &DenseMatrix) -> Result<Self> {
        let mut bits = Vec::with_capacity(a.rows() * a.cols());
        for i in 0..a.rows() {
            for (j, &v) in a.row(i).iter().enumerate() {
                if v == 1.0 {
                    bits.push(true);
                } else if v == 0.0 {
                    bits.push(false);
                } else {
                    return Err(Error::Parse { row: i, msg: format!("entry {j} is {v}, not 0 or 1") });
                }
            }
        }
        Ok(Self { m: a.rows(), n: a.cols(), bits })
    }

    /// Parses either the text format (one row of '0'/'1' per line) or the
    /// JSON object `{"m":..,"n":..,"rows":[..]}`. Blank lines and lines
    /// starting with `#` are ignored in the text format.
    pub fn parse(input: &str) -> Result<Self> {
        let trimmed = input.trim_start();
        if trimmed.starts_with('{') {
            let raw: BiGraphJson = serde_json::from_str(trimmed)?;
            return Self::from_bits(raw.m, raw.n, &raw.rows);
        }
        let rows: Vec<String> = input
            .lines()
            .map(|l| l.split_whitespace().collect::<String>())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Self::from_rows(&rows)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn has_edges(&self) -> bool {
        self.bits.iter().any(|&b| b)
    }

    pub fn row_bits(&self, i: usize) -> &[bool] {
        &self.bits[i * self.n..(i + 1) * self.n]
    }

    pub fn col_bits(&self, j: usize) -> Vec<bool> {
        (0..self.m).map(|i| self.get(i, j)).collect()
    }

    pub fn rows_as_strings(&self) -> Vec<String> {
        (0..self.m)
            .map(|i| self.row_bits(i).iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.m, |i, j| self.get(j, i))
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.m).map(|i| self.row_bits(i).iter().filter(|&&b| b).count()).collect()
    }

    pub fn col_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|j| (0..self.m).filter(|&i| self.get(i, j)).count()).collect()
    }

    pub fn max_degree(&self) -> usize {
        let r = self.row_degrees().into_iter().max().unwrap_or(0);
        let c = self.col_degrees().into_iter().max().unwrap_or(0);
        r.max(c)
    }

    /// Induced subgraph on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Disjoint union, laid out block-diagonally.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_fn(self.m + other.m, self.n + other.n, |i, j| match (i < self.m, j < self.n) {
            (true, true) => self.get(i, j),
            (false, false) => other.get(i - self.m, j - self.n),
            _ => false,
        })
    }

    /// The biadjacency matrix as floating point 0/1 entries.
    pub fn to_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.m, self.n, |i, j| if self.get(i, j) { 1.0 } else { 0.0 })
    }

    /// Row and column index sets of the connected components, ordered by
    /// least vertex (rows numbered before columns).
    pub fn component_indices(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let total = self.m + self.n;
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..self.m {
            for j in 0..self.n {
                if self.get(i, j) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, self.m + j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut slot = vec![usize::MAX; total];
        for v in 0..total {
            let root = find(&mut parent, v);
            if slot[root] == usize::MAX {
                slot[root] = groups.len();
                groups.push((Vec::new(), Vec::new()));
            }
            let g = &mut groups[slot[root]];
            if v < self.m {
                g.0.push(v);
            } else {
                g.1.push(v - self.m);
            }
        }
        groups
    }

    /// Connected components as induced subgraphs. An isolated vertex gives
    /// a `1 × 0` or `0 × 1` graph.
    pub fn components(&self) -> Vec<BiGraph> {
        self.component_indices().iter().map(|(r, c)| self.select(r, c)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_indices().len() <= 1
    }

    /// Indices kept by [`twin_reduce`](Self::twin_reduce).
    pub fn twin_free_indices(&self) -> (Vec<usize>, Vec<usize>) {
        let mut rows: Vec<usize> = (0..self.m).collect();
        let mut cols: Vec<usize> = (0..self.n).collect();
        loop {
            let before = (rows.len(), cols.len());
            let mut kept_rows: Vec<usize> = Vec::new();
            for &i in &rows {
                let dup = kept_rows.iter().any(|&k| cols.iter().all(|&j| self.get(i, j) == self.get(k, j)));
                if !dup {
                    kept_rows.push(i);
                }
            }
            rows = kept_rows;
            let mut kept_cols: Vec<usize> = Vec::new();
            for &j in &cols {
                let dup = kept_cols.iter().any(|&k| rows.iter().all(|&i| self.get(i, j) == self.get(i, k)));
                if !dup {
                    kept_cols.push(j);
                }
            }
            cols = kept_cols;
            if (rows.len(), cols.len()) == before {
                return (rows, cols);
            }
        }
    }

    /// Deletes duplicate rows and columns until none remain, keeping the
    /// least index of each class.
    pub fn twin_reduce(&self) -> BiGraph {
        let (r, c) = self.twin_free_indices();
        self.select(&r, &c)
    }

    pub fn is_twin_free(&self) -> bool {
        let (r, c) = self.twin_free_indices();
        r.len() == self.m && c.len() == self.n
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }
}

impl Serialize for BiGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BiGraphJson { m: self.m, n: self.n, rows: self.rows_as_strings() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BiGraphJson::deserialize(d)?;
        BiGraph::from_bits(raw.m, raw.n, &raw.rows).map_err(serde::de::Error::custom)
    }
}

impl FromStr for BiGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for BiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows_as_strings();
        write!(f, "{}", rows.join("\n"))
    }
}

impl fmt::Debug for BiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiGraph({}x{} [{}])", self.m, self.n, self.rows_as_strings().join(" "))
    }
}
