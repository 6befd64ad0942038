//! Weak orders over journals — ordered partitions into indifference classes,
//! best class first — and their exhaustive enumeration for small `n`.

use crate::{Error, Result};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write as _;

/// Largest journal count for which weak orders are enumerated exhaustively
/// (47 293 orders at 7; the count grows like n! * 2^n beyond that).
pub const MAX_ENUMERATED_JOURNALS: usize = 7;

/// How one journal stands relative to another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Above,
    Tied,
    Below,
}

impl Relation {
    pub fn flip(self) -> Relation {
        match self {
            Relation::Above => Relation::Below,
            Relation::Tied => Relation::Tied,
            Relation::Below => Relation::Above,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Above => "≻",
            Relation::Tied => "∼",
            Relation::Below => "≺",
        }
    }
}

/// A weak order on journal indices `0..n`: a sequence of disjoint,
/// exhaustive indifference classes, best first. Members of a class are kept
/// sorted, so equal orders compare equal structurally. The `Ord` instance
/// (lexicographic on the rank vector) is the canonical enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakOrder {
    classes: Vec<Vec<usize>>,
    ranks: Vec<usize>,
}

impl WeakOrder {
    pub fn new(classes: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = classes.iter().map(Vec::len).sum();
        let mut ranks = vec![usize::MAX; n];
        for (rank, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidPermutation);
            }
            for &j in class {
                if j >= n || ranks[j] != usize::MAX {
                    return Err(Error::InvalidPermutation);
                }
                ranks[j] = rank;
            }
        }
        let mut classes = classes;
        for class in &mut classes {
            class.sort_unstable();
        }
        Ok(WeakOrder { classes, ranks })
    }

    /// Builds the order from per-journal ranks (0 = best). The ranks must use
    /// exactly the values `0..=max`.
    pub fn from_ranks(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        if n == 0 {
            return Err(Error::TooFewJournals { n: 0, min: 1 });
        }
        let count = match ranks.iter().max() {
            Some(&m) if m < n => m + 1,
            _ => return Err(Error::InvalidPermutation),
        };
        let mut classes = vec![Vec::new(); count];
        for (j, &r) in ranks.iter().enumerate() {
            classes[r].push(j);
        }
        if classes.iter().any(Vec::is_empty) {
            return Err(Error::InvalidPermutation);
        }
        Ok(WeakOrder { classes, ranks })
    }

    /// Everybody tied.
    pub fn total_tie(n: usize) -> Self {
        WeakOrder {
            classes: vec![(0..n).collect()],
            ranks: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.ranks.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class index of journal `i`; 0 is the best class.
    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn compare(&self, i: usize, j: usize) -> Relation {
        match self.ranks[i].cmp(&self.ranks[j]) {
            Ordering::Less => Relation::Above,
            Ordering::Equal => Relation::Tied,
            Ordering::Greater => Relation::Below,
        }
    }

    /// `i` at least as good as `j`.
    pub fn weakly_above(&self, i: usize, j: usize) -> bool {
        self.ranks[i] <= self.ranks[j]
    }

    pub fn strictly_above(&self, i: usize, j: usize) -> bool {
        self.ranks[i] < self.ranks[j]
    }

    pub fn tied(&self, i: usize, j: usize) -> bool {
        self.ranks[i] == self.ranks[j]
    }

    /// Renders with journal names, e.g. `J1 ≻ (J2 ∼ J3) ≻ J4`.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (idx, class) in self.classes.iter().enumerate() {
            if idx > 0 {
                out.push_str(" ≻ ");
            }
            if class.len() == 1 {
                out.push_str(&names[class[0]]);
            } else {
                out.push('(');
                for (k, &j) in class.iter().enumerate() {
                    if k > 0 {
                        out.push_str(" ∼ ");
                    }
                    let _ = write!(out, "{}", names[j]);
                }
                out.push(')');
            }
        }
        out
    }
}

impl PartialOrd for WeakOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeakOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ranks.cmp(&other.ranks)
    }
}

/// All weak orders on `0..n` in canonical (rank-vector lexicographic) order;
/// the first entry is always the total tie. Counts follow the Fubini
/// recurrence `a(n) = sum of C(n,k) * a(n-k)`: 1, 3, 13, 75, 541, ...
pub fn enumerate_weak_orders(n: usize) -> Result<Vec<WeakOrder>> {
    if n == 0 {
        return Err(Error::TooFewJournals { n: 0, min: 1 });
    }
    if n > MAX_ENUMERATED_JOURNALS {
        return Err(Error::TooManyJournals {
            n,
            max: MAX_ENUMERATED_JOURNALS,
        });
    }
    let mut out = Vec::new();
    let mut ranks = vec![0usize; n];
    fill(&mut ranks, 0, n, &mut out);
    Ok(out)
}

fn fill(ranks: &mut Vec<usize>, pos: usize, n: usize, out: &mut Vec<WeakOrder>) {
    if pos == n {
        // Keep exactly the vectors whose values cover 0..=max: those are the
        // rank vectors of weak orders.
        let mut used = [false; MAX_ENUMERATED_JOURNALS];
        let mut max = 0;
        for &r in ranks.iter() {
            used[r] = true;
            max = max.max(r);
        }
        if used[..=max].iter().all(|&u| u) {
            out.push(WeakOrder::from_ranks(ranks.clone()).expect("covering rank vector"));
        }
        return;
    }
    for value in 0..n {
        ranks[pos] = value;
        fill(ranks, pos + 1, n, out);
    }
}
