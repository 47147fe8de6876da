//! Entry-revealing oracle and its observation ledger.
//!
//! Every recovery algorithm in this crate reads matrix entries exclusively
//! through [`EntryOracle`]. The oracle hands back ground-truth values and
//! records which cells were requested, so the ledger's distinct-entry count
//! is an audit of how much information a run actually consumed. Repeat
//! requests are free: the ledger counts cells, not calls.

use nalgebra::{DMatrix, DVector, RowDVector};

use crate::error::{Error, Result};

/// Classification of one cell in the ledger.
///
/// `Random` marks entries revealed by randomized probes; `Deterministic`
/// marks entries revealed by the full row/column sweeps an algorithm commits
/// to once it has located structure. A deterministic request supersedes an
/// earlier random tag on the same cell (the sweep reveals the cell whether
/// or not a probe got there first); the reverse never happens, and no cell
/// ever reverts to `Unobserved`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryTag {
    Unobserved,
    Random,
    Deterministic,
}

/// Counts taken from the ledger at one instant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationStats {
    /// Distinct cells observed so far.
    pub total: usize,
    /// Distinct cells currently tagged `Random`.
    pub random: usize,
    /// Distinct cells currently tagged `Deterministic`.
    pub deterministic: usize,
    /// Distinct observed cells per column.
    pub per_column: Vec<usize>,
}

/// Per-cell record of which entries have been revealed and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationLedger {
    nrows: usize,
    ncols: usize,
    tags: Vec<EntryTag>,
    total: usize,
    per_column: Vec<usize>,
}

impl ObservationLedger {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        ObservationLedger {
            nrows,
            ncols,
            tags: vec![EntryTag::Unobserved; nrows * ncols],
            total: 0,
            per_column: vec![0; ncols],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    fn idx(&self, row: usize, col: usize) -> usize {
        row * self.ncols + col
    }

    pub fn tag(&self, row: usize, col: usize) -> EntryTag {
        self.tags[self.idx(row, col)]
    }

    pub fn is_observed(&self, row: usize, col: usize) -> bool {
        self.tag(row, col) != EntryTag::Unobserved
    }

    /// Distinct cells observed so far. Never decreases.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn per_column(&self) -> &[usize] {
        &self.per_column
    }

    /// Record a request for one cell; returns whether the cell was new.
    ///
    /// Tag transitions: `Unobserved -> tag`; `Random -> Deterministic` when a
    /// deterministic request arrives; everything else is a no-op.
    pub(crate) fn record(&mut self, row: usize, col: usize, tag: EntryTag) -> bool {
        debug_assert_ne!(tag, EntryTag::Unobserved, "requests carry a real tag");
        let i = self.idx(row, col);
        match self.tags[i] {
            EntryTag::Unobserved => {
                self.tags[i] = tag;
                self.total += 1;
                self.per_column[col] += 1;
                true
            }
            EntryTag::Random => {
                if tag == EntryTag::Deterministic {
                    self.tags[i] = EntryTag::Deterministic;
                }
                false
            }
            EntryTag::Deterministic => false,
        }
    }

    /// Columns whose every cell has been observed (any tag).
    pub fn fully_observed_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|&j| self.per_column[j] == self.nrows)
            .collect()
    }

    /// Rows whose every cell has been observed (any tag).
    pub fn fully_observed_rows(&self) -> Vec<usize> {
        (0..self.nrows)
            .filter(|&i| (0..self.ncols).all(|j| self.is_observed(i, j)))
            .collect()
    }

    /// Columns whose every cell is tagged `Deterministic`.
    pub fn deterministic_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|&j| (0..self.nrows).all(|i| self.tag(i, j) == EntryTag::Deterministic))
            .collect()
    }

    /// Rows whose every cell is tagged `Deterministic`.
    pub fn deterministic_rows(&self) -> Vec<usize> {
        (0..self.nrows)
            .filter(|&i| (0..self.ncols).all(|j| self.tag(i, j) == EntryTag::Deterministic))
            .collect()
    }

    pub fn stats(&self) -> ObservationStats {
        let mut random = 0;
        let mut deterministic = 0;
        for tag in &self.tags {
            match tag {
                EntryTag::Random => random += 1,
                EntryTag::Deterministic => deterministic += 1,
                EntryTag::Unobserved => {}
            }
        }
        ObservationStats {
            total: self.total,
            random,
            deterministic,
            per_column: self.per_column.clone(),
        }
    }
}

/// Ground truth plus the ledger of everything revealed from it.
///
/// Observation calls return true matrix values and charge the ledger for
/// cells not seen before. [`EntryOracle::audit_truth`] exposes the full
/// matrix for after-the-fact verification; it bypasses the ledger and is
/// never consulted by the recovery algorithms themselves.
#[derive(Debug, Clone)]
pub struct EntryOracle {
    truth: DMatrix<f64>,
    ledger: ObservationLedger,
}

impl EntryOracle {
    pub fn new(truth: DMatrix<f64>) -> Result<Self> {
        if truth.nrows() == 0 || truth.ncols() == 0 {
            return Err(Error::InvalidDimensions(format!(
                "oracle needs a nonempty matrix, got {}x{}",
                truth.nrows(),
                truth.ncols()
            )));
        }
        let ledger = ObservationLedger::new(truth.nrows(), truth.ncols());
        Ok(EntryOracle { truth, ledger })
    }

    pub fn nrows(&self) -> usize {
        self.truth.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.truth.ncols()
    }

    fn check_range(&self, row: usize, col: usize) -> Result<()> {
        if row >= self.nrows() || col >= self.ncols() {
            return Err(Error::IndexOutOfRange {
                row,
                col,
                nrows: self.nrows(),
                ncols: self.ncols(),
            });
        }
        Ok(())
    }

    /// Reveal one entry. Re-observing a cell returns the same value without
    /// changing the ledger total.
    pub fn observe_entry(&mut self, row: usize, col: usize, tag: EntryTag) -> Result<f64> {
        self.check_range(row, col)?;
        self.ledger.record(row, col, tag);
        Ok(self.truth[(row, col)])
    }

    /// Reveal an entire column.
    pub fn observe_column(&mut self, col: usize, tag: EntryTag) -> Result<DVector<f64>> {
        self.check_range(0, col)?;
        for row in 0..self.nrows() {
            self.ledger.record(row, col, tag);
        }
        Ok(self.truth.column(col).into_owned())
    }

    /// Reveal an entire row.
    pub fn observe_row(&mut self, row: usize, tag: EntryTag) -> Result<RowDVector<f64>> {
        self.check_range(row, 0)?;
        for col in 0..self.ncols() {
            self.ledger.record(row, col, tag);
        }
        Ok(self.truth.row(row).into_owned())
    }

    /// Value of a cell that has already been revealed; does not touch the
    /// ledger. Errors on cells never observed.
    pub fn revealed(&self, row: usize, col: usize) -> Result<f64> {
        self.check_range(row, col)?;
        if !self.ledger.is_observed(row, col) {
            return Err(Error::NotObserved { row, col });
        }
        Ok(self.truth[(row, col)])
    }

    pub fn is_observed(&self, row: usize, col: usize) -> bool {
        self.ledger.is_observed(row, col)
    }

    pub fn ledger(&self) -> &ObservationLedger {
        &self.ledger
    }

    pub fn snapshot_stats(&self) -> ObservationStats {
        self.ledger.stats()
    }

    /// Full ground truth for verification after a run. Results are compared
    /// against this through a channel the algorithms never see; calling it
    /// leaves the ledger untouched.
    pub fn audit_truth(&self) -> &DMatrix<f64> {
        &self.truth
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::demo_matrix;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn fixture_oracle() -> EntryOracle {
        EntryOracle::new(demo_matrix()).unwrap()
    }

    #[test]
    fn observe_entry_returns_value_and_counts_once() {
        let mut oracle = fixture_oracle();
        assert_eq!(oracle.snapshot_stats().total, 0);
        let v = oracle.observe_entry(2, 0, EntryTag::Random).unwrap();
        assert_eq!(v, 1.0);
        assert_eq!(oracle.snapshot_stats().total, 1);

        // Same cell again: same value, no new charge.
        let v2 = oracle.observe_entry(2, 0, EntryTag::Random).unwrap();
        assert_eq!(v2, 1.0);
        assert_eq!(oracle.snapshot_stats().total, 1);

        assert_eq!(oracle.observe_entry(5, 3, EntryTag::Random).unwrap(), 6.0);
        assert_eq!(oracle.snapshot_stats().total, 2);
    }

    #[test]
    fn observe_column_charges_only_new_cells() {
        let mut oracle = fixture_oracle();
        oracle.observe_entry(0, 1, EntryTag::Random).unwrap();
        let col = oracle.observe_column(1, EntryTag::Deterministic).unwrap();
        assert_eq!(col.as_slice(), &[0.0, 0.0, 3.0, 0.0, 0.0, 6.0]);
        let stats = oracle.snapshot_stats();
        assert_eq!(stats.total, 6);
        assert_eq!(stats.per_column[1], 6);

        // Re-observing the column changes nothing.
        oracle.observe_column(1, EntryTag::Deterministic).unwrap();
        assert_eq!(oracle.snapshot_stats().total, 6);
    }

    #[test]
    fn observe_row_returns_values() {
        let mut oracle = fixture_oracle();
        let row = oracle.observe_row(2, EntryTag::Deterministic).unwrap();
        assert_eq!(row.iter().copied().collect::<Vec<_>>(), vec![1.0, 3.0, 2.0, 3.0]);
        let zeros = oracle.observe_row(0, EntryTag::Deterministic).unwrap();
        assert!(zeros.iter().all(|&v| v == 0.0));
        assert_eq!(oracle.snapshot_stats().total, 8);
    }

    #[test]
    fn deterministic_supersedes_random_but_not_conversely() {
        let mut oracle = fixture_oracle();
        oracle.observe_entry(1, 1, EntryTag::Random).unwrap();
        assert_eq!(oracle.ledger().tag(1, 1), EntryTag::Random);

        oracle.observe_entry(1, 1, EntryTag::Deterministic).unwrap();
        assert_eq!(oracle.ledger().tag(1, 1), EntryTag::Deterministic);

        oracle.observe_entry(1, 1, EntryTag::Random).unwrap();
        assert_eq!(oracle.ledger().tag(1, 1), EntryTag::Deterministic);
        assert_eq!(oracle.snapshot_stats().total, 1);
    }

    #[test]
    fn out_of_range_requests_error() {
        let mut oracle = fixture_oracle();
        assert!(matches!(
            oracle.observe_entry(6, 0, EntryTag::Random),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            oracle.observe_column(4, EntryTag::Random),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            oracle.observe_row(6, EntryTag::Random),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn revealed_requires_prior_observation() {
        let mut oracle = fixture_oracle();
        assert!(matches!(
            oracle.revealed(2, 2),
            Err(Error::NotObserved { row: 2, col: 2 })
        ));
        oracle.observe_entry(2, 2, EntryTag::Random).unwrap();
        assert_eq!(oracle.revealed(2, 2).unwrap(), 2.0);
        assert_eq!(oracle.snapshot_stats().total, 1);
    }

    #[test]
    fn full_and_deterministic_row_column_queries() {
        let mut oracle = fixture_oracle();
        oracle.observe_entry(0, 2, EntryTag::Random).unwrap();
        oracle.observe_column(2, EntryTag::Deterministic).unwrap();
        oracle.observe_row(2, EntryTag::Deterministic).unwrap();
        let ledger = oracle.ledger();
        assert_eq!(ledger.fully_observed_columns(), vec![2]);
        assert_eq!(ledger.fully_observed_rows(), vec![2]);
        // The random probe at (0, 2) was upgraded by the column sweep.
        assert_eq!(ledger.deterministic_columns(), vec![2]);
        assert_eq!(ledger.deterministic_rows(), vec![2]);
        let stats = oracle.snapshot_stats();
        assert_eq!(stats.total, 9);
        assert_eq!(stats.deterministic, 9);
        assert_eq!(stats.random, 0);
    }

    #[test]
    fn rejects_empty_matrices() {
        assert!(EntryOracle::new(DMatrix::zeros(0, 3)).is_err());
        assert!(EntryOracle::new(DMatrix::zeros(3, 0)).is_err());
    }

    proptest! {
        // The ledger total always equals the number of distinct requested
        // cells, no matter how requests repeat or what they are tagged.
        #[test]
        fn ledger_total_counts_distinct_cells(
            requests in proptest::collection::vec((0usize..6, 0usize..4, prop::bool::ANY), 0..60)
        ) {
            let mut oracle = fixture_oracle();
            let mut seen = HashSet::new();
            for (i, j, deterministic) in requests {
                let tag = if deterministic { EntryTag::Deterministic } else { EntryTag::Random };
                oracle.observe_entry(i, j, tag).unwrap();
                seen.insert((i, j));
            }
            let stats = oracle.snapshot_stats();
            prop_assert_eq!(stats.total, seen.len());
            prop_assert_eq!(stats.random + stats.deterministic, seen.len());
            let per_column_sum: usize = stats.per_column.iter().sum();
            prop_assert_eq!(per_column_sum, seen.len());
        }

        // Replaying the same request sequence yields an identical ledger.
        #[test]
        fn ledger_is_deterministic_in_the_request_log(
            requests in proptest::collection::vec((0usize..6, 0usize..4, prop::bool::ANY), 0..40)
        ) {
            let mut a = fixture_oracle();
            let mut b = fixture_oracle();
            for &(i, j, det) in &requests {
                let tag = if det { EntryTag::Deterministic } else { EntryTag::Random };
                a.observe_entry(i, j, tag).unwrap();
                b.observe_entry(i, j, tag).unwrap();
            }
            prop_assert_eq!(a.ledger(), b.ledger());
        }
    }
}
