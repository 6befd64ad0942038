//! Ranking problems and the operations of the base formalism: the matches
//! matrix, domain classes, the extremal transform, aggregation of two
//! journals, and entrywise sums.

use crate::rational::rat;
use crate::{Error, Rational, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

/// A journal ranking problem: `n` uniquely named journals and an `n` by `n`
/// nonnegative citation matrix. `citation(i, j)` is the number of citations
/// journal `i` *received* from journal `j`. Entries are exact rationals so
/// that tied comparisons are meaningful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    journals: Vec<String>,
    cells: Vec<Rational>, // row-major n * n
}

impl Problem {
    pub fn new(journals: Vec<String>, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = journals.len();
        if n == 0 {
            return Err(Error::EmptyProblem);
        }
        for (idx, name) in journals.iter().enumerate() {
            if journals[..idx].contains(name) {
                return Err(Error::DuplicateJournal(name.clone()));
            }
        }
        if rows.len() != n {
            return Err(Error::WrongRowCount {
                rows: rows.len(),
                expected: n,
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            for (j, value) in row.iter().enumerate() {
                if *value < Rational::zero() {
                    return Err(Error::NegativeEntry { row: i, col: j });
                }
            }
        }
        let cells = rows.into_iter().flatten().collect();
        Ok(Problem { journals, cells })
    }

    /// Journals named `J1..Jn`, for tables and tests.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let journals = (1..=rows.len()).map(|i| format!("J{i}")).collect();
        Self::new(journals, rows)
    }

    pub fn n(&self) -> usize {
        self.journals.len()
    }

    pub fn journals(&self) -> &[String] {
        &self.journals
    }

    pub fn journal(&self, i: usize) -> &str {
        &self.journals[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.journals.iter().position(|j| j == name)
    }

    /// Citations journal `i` received from journal `j`.
    pub fn citation(&self, i: usize, j: usize) -> Rational {
        self.cells[i * self.n() + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        let n = self.n();
        &self.cells[i * n..(i + 1) * n]
    }

    /// Total citation mass, for conservation checks.
    pub fn total(&self) -> Rational {
        self.cells.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(Rational::is_zero)
    }

    /// The symmetric matches matrix `M = C + C^T`.
    pub fn matches(&self) -> MatchesMatrix {
        let n = self.n();
        let cells = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                self.citation(i, j) + self.citation(j, i)
            })
            .collect();
        MatchesMatrix { n, cells }
    }

    /// Membership in the four domain classes.
    pub fn classify(&self) -> ClassFlags {
        let n = self.n();
        let m = self.matches();
        let row_sum = |i: usize| {
            (0..n)
                .filter(|&k| k != i)
                .fold(Rational::zero(), |acc, k| acc + m.entry(i, k))
        };
        let first = row_sum(0);
        let balanced = (1..n).all(|i| row_sum(i) == first);
        let unweighted = (0..n).all(|i| {
            (0..n).all(|j| i == j || m.entry(i, j).is_zero() || m.entry(i, j) == rat(1, 1))
        });
        let loopless = (0..n).all(|i| self.citation(i, i).is_zero());
        let extremal = (0..n).all(|i| {
            (0..n).all(|j| {
                let c = self.citation(i, j);
                let m = m.entry(i, j);
                c.is_zero() || c == m / 2 || c == m
            })
        });
        ClassFlags {
            balanced,
            unweighted,
            loopless,
            extremal,
        }
    }

    /// Rounds every citation pair to its nearest extreme: an edge becomes
    /// absent, a 0.5/0.5 tie, or a 1/0 win depending on which side carries
    /// more than two thirds of the matches between the two journals.
    /// Self-citations are dropped. The result is always unweighted, loopless
    /// and extremal, and the transform is the identity on such problems.
    pub fn extremal_transform(&self) -> Problem {
        let n = self.n();
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if i == j {
                    continue;
                }
                let received = self.citation(i, j);
                let total = received + self.citation(j, i);
                *cell = if total.is_zero() || received * 3 < total {
                    Rational::zero()
                } else if received * 3 <= total * 2 {
                    rat(1, 2)
                } else {
                    rat(1, 1)
                };
            }
        }
        Problem {
            journals: self.journals.clone(),
            cells: rows.into_iter().flatten().collect(),
        }
    }

    /// Merges journals `i` and `j` into a single journal sitting at position
    /// `min(i, j)`. Citations between the two disappear; citations to and
    /// from everyone else add up; the merged diagonal is the sum of the two
    /// old diagonals.
    pub fn aggregate(&self, i: usize, j: usize) -> Result<Problem> {
        let n = self.n();
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        if i == j {
            return Err(Error::IdenticalPair { index: i });
        }
        let (a, b) = (i.min(j), i.max(j));
        let kept: Vec<usize> = (0..n).filter(|&k| k != a && k != b).collect();
        let mut merged_name = format!("{}∪{}", self.journals[a], self.journals[b]);
        while kept.iter().any(|&k| self.journals[k] == merged_name) {
            merged_name.push('′');
        }
        // Old index -> new index; position a holds the merged journal.
        let map = |k: usize| if k < b { k } else { k - 1 };
        let mut journals: Vec<String> = Vec::with_capacity(n - 1);
        for k in 0..n {
            if k == b {
                continue;
            }
            journals.push(if k == a {
                merged_name.clone()
            } else {
                self.journals[k].clone()
            });
        }
        let mut rows = vec![vec![Rational::zero(); n - 1]; n - 1];
        rows[a][a] = self.citation(a, a) + self.citation(b, b);
        for &k in &kept {
            rows[map(k)][a] = self.citation(k, a) + self.citation(k, b);
            rows[a][map(k)] = self.citation(a, k) + self.citation(b, k);
            for &l in &kept {
                rows[map(k)][map(l)] = self.citation(k, l);
            }
        }
        Ok(Problem {
            journals,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    /// Entrywise sum. Both problems must list the same journals in the same
    /// order.
    pub fn sum(&self, other: &Problem) -> Result<Problem> {
        if self.journals != other.journals {
            return Err(Error::JournalMismatch);
        }
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Problem {
            journals: self.journals.clone(),
            cells,
        })
    }

    /// Relabelled copy: the journal at new position `k` is the old journal
    /// `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Problem> {
        let n = self.n();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::InvalidPermutation);
        }
        for &o in order {
            if o >= n || seen[o] {
                return Err(Error::InvalidPermutation);
            }
            seen[o] = true;
        }
        let journals = order.iter().map(|&o| self.journals[o].clone()).collect();
        let cells = (0..n * n)
            .map(|idx| self.citation(order[idx / n], order[idx % n]))
            .collect();
        Ok(Problem { journals, cells })
    }
}

/// `M = C + C^T`: `entry(i, j)` counts the matches played between `i` and
/// `j`. Symmetric by construction; the diagonal is twice the self-citations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchesMatrix {
    n: usize,
    cells: Vec<Rational>,
}

impl MatchesMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.cells[i * self.n + j]
    }

    /// Largest off-diagonal entry; zero when there are no edges at all.
    pub fn max_off_diagonal(&self) -> Rational {
        let mut best = Rational::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.entry(i, j) > best {
                    best = self.entry(i, j);
                }
            }
        }
        best
    }
}

/// Which of the four domain classes a problem belongs to.
///
/// * `balanced` — every journal plays the same number of matches
///   (off-diagonal row sums of `M` agree; self-matches don't count).
/// * `unweighted` — every off-diagonal matches entry is 0 or 1.
/// * `loopless` — no self-citations.
/// * `extremal` — every citation entry is 0, half its matches entry, or all
///   of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFlags {
    pub balanced: bool,
    pub unweighted: bool,
    pub loopless: bool,
    pub extremal: bool,
}

impl ClassFlags {
    pub fn all(&self) -> bool {
        self.balanced && self.unweighted && self.loopless && self.extremal
    }
}
