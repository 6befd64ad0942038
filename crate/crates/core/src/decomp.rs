//! Decomposing a problem into unweighted layers.
//!
//! A decomposition writes the citation matrix as an entrywise sum of layers,
//! each of which is unweighted (every off-diagonal matches entry 0 or 1).
//! Such layers are what the self-consistency axiom quantifies over. Two
//! operations matter:
//!
//! * [`canonical_decomposition`] builds one witness decomposition greedily,
//! * [`enumerate_decompositions`] lists *all* of them within explicit bounds
//!   (citation grid, layer budget, result cap). The bounds make the search
//!   finite; searches can therefore miss exotic witnesses but never invent
//!   one, and every result re-validates.
//!
//! Layers are compared as multisets: enumeration strips all-zero layers
//! (they carry no competitor information), deduplicates layer orderings, and
//! reports results sorted. Self-citation mass is placed in the first layer
//! rather than searched over — invisible for loopless problems, which is
//! every problem the extremal class contains.

use crate::problem::Problem;
use crate::rational::on_grid;
use crate::{Error, Rational, Result};
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

/// One unweighted layer of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub problem: Problem,
    /// Position within the owning decomposition.
    pub index: usize,
}

/// A problem written as a sum of unweighted layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub source: Problem,
    pub layers: Vec<Layer>,
}

impl Decomposition {
    fn from_cells(source: &Problem, layer_cells: Vec<Vec<Rational>>) -> Decomposition {
        let n = source.n();
        let layers = layer_cells
            .into_iter()
            .enumerate()
            .map(|(index, cells)| {
                let rows = (0..n).map(|i| cells[i * n..(i + 1) * n].to_vec()).collect();
                let problem = Problem::new(source.journals().to_vec(), rows)
                    .expect("layer cells form a valid problem");
                Layer { problem, index }
            })
            .collect();
        Decomposition {
            source: source.clone(),
            layers,
        }
    }

    pub fn is_valid(&self) -> bool {
        validate_decomposition(&self.source, self)
    }

    /// Layers as a sorted multiset of cell vectors — the identity used for
    /// deduplication.
    pub fn layer_multiset(&self) -> Vec<Vec<Rational>> {
        let n = self.source.n();
        let mut key: Vec<Vec<Rational>> = self
            .layers
            .iter()
            .map(|layer| (0..n).flat_map(|i| layer.problem.row(i).to_vec()).collect())
            .collect();
        key.sort_unstable();
        key
    }
}

/// Checks that `d` really decomposes `p`: same journal labels everywhere,
/// every layer unweighted, sequential layer indices, and an exact entrywise
/// sum. (The stored `source` is informational and not part of the check.)
pub fn validate_decomposition(p: &Problem, d: &Decomposition) -> bool {
    let n = p.n();
    for (pos, layer) in d.layers.iter().enumerate() {
        if layer.index != pos || layer.problem.journals() != p.journals() {
            return false;
        }
        if !layer.problem.classify().unweighted {
            return false;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let sum = d.layers.iter().fold(Rational::zero(), |acc, layer| {
                acc + layer.problem.citation(i, j)
            });
            if sum != p.citation(i, j) {
                return false;
            }
        }
    }
    true
}

/// The journals a journal has played against in an unweighted layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompetitorSet {
    pub journal: usize,
    pub members: BTreeSet<usize>,
}

/// Competitors of `journal` in `layer`: everyone its matches entry is 1
/// with. Errors if the layer is not actually unweighted.
pub fn competitor_set(layer: &Layer, journal: usize) -> Result<CompetitorSet> {
    let p = &layer.problem;
    let n = p.n();
    if journal >= n {
        return Err(Error::IndexOutOfRange { index: journal, n });
    }
    let m = p.matches();
    for i in 0..n {
        for j in 0..n {
            if i != j && !m.entry(i, j).is_zero() && !m.entry(i, j).is_one() {
                return Err(Error::NotUnweighted { row: i, col: j });
            }
        }
    }
    let members = (0..n).filter(|&j| m.entry(journal, j).is_one()).collect();
    Ok(CompetitorSet { journal, members })
}

/// Bounds for all decomposition searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    /// Citation values inside layers live on multiples of this (must divide 1).
    pub granularity: Rational,
    /// Layer budget; `None` means exactly what the matches matrix requires.
    pub max_layers: Option<usize>,
    /// Stop after this many distinct decompositions.
    pub cap: usize,
}

pub const DEFAULT_CAP: usize = 128;

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            granularity: Rational::new(1, 2),
            max_layers: None,
            cap: DEFAULT_CAP,
        }
    }
}

impl SearchBounds {
    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 {
            return Err(Error::ZeroCap);
        }
        if self.granularity <= Rational::zero()
            || !(Rational::one() / self.granularity).is_integer()
        {
            return Err(Error::InvalidGranularity);
        }
        Ok(())
    }
}

fn required_layers(p: &Problem) -> Result<usize> {
    let m = p.matches();
    let n = p.n();
    for i in 0..n {
        for j in i + 1..n {
            if !m.entry(i, j).is_integer() {
                return Err(Error::NonIntegralMatches { row: i, col: j });
            }
        }
    }
    Ok((m.max_off_diagonal().to_integer().max(1)) as usize)
}

/// The greedy witness decomposition. Layer count is the largest off-diagonal
/// matches entry (at least one); every edge appears in that many leading
/// layers; citation mass flows to each layer from the larger remaining side
/// first, `min(1, remaining)` at a time, the rest from the other side, so
/// each layer's edge sums to exactly 1. Self-citations sit in the first
/// layer. Works for any problem whose off-diagonal matches entries are
/// integers; grid granularity plays no role here.
pub fn canonical_decomposition(p: &Problem) -> Result<Decomposition> {
    let n = p.n();
    let count = required_layers(p)?;
    let m = p.matches();
    let mut layers = vec![vec![Rational::zero(); n * n]; count];
    for i in 0..n {
        layers[0][i * n + i] = p.citation(i, i);
    }
    for i in 0..n {
        for j in i + 1..n {
            let edge_layers = m.entry(i, j).to_integer() as usize;
            let mut rem_ij = p.citation(i, j);
            let mut rem_ji = p.citation(j, i);
            for layer in layers.iter_mut().take(edge_layers) {
                let one = Rational::one();
                let (a, b) = if rem_ij >= rem_ji {
                    let a = rem_ij.min(one);
                    (a, one - a)
                } else {
                    let b = rem_ji.min(one);
                    (one - b, b)
                };
                layer[i * n + j] = a;
                layer[j * n + i] = b;
                rem_ij -= a;
                rem_ji -= b;
            }
        }
    }
    Ok(Decomposition::from_cells(p, layers))
}

/// An enumeration result; `truncated` reports that the cap (or the internal
/// work bound) cut the listing short, i.e. more distinct decompositions may
/// exist within the bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decompositions {
    pub items: Vec<Decomposition>,
    pub truncated: bool,
}

/// Every decomposition of `p` into unweighted layers within `bounds`,
/// deduplicated as layer multisets and sorted canonically.
///
/// Errors distinguish misconfiguration (`ZeroCap`, `InvalidGranularity`,
/// `MaxLayersTooSmall`) from data that admits no decomposition on the grid
/// (`OffGrid`, `NonIntegralMatches`).
pub fn enumerate_decompositions(p: &Problem, bounds: &SearchBounds) -> Result<Decompositions> {
    bounds.validate()?;
    let n = p.n();
    for i in 0..n {
        for j in 0..n {
            if !on_grid(p.citation(i, j), bounds.granularity) {
                return Err(Error::OffGrid { row: i, col: j });
            }
        }
    }
    let required = required_layers(p)?;
    let slots = match bounds.max_layers {
        None => required,
        Some(l) if l < required => return Err(Error::MaxLayersTooSmall { required, given: l }),
        Some(l) => l,
    };
    if p.is_zero() {
        // The trivial decomposition of the zero problem: one zero layer.
        let cells = vec![vec![Rational::zero(); n * n]];
        return Ok(Decompositions {
            items: vec![Decomposition::from_cells(p, cells)],
            truncated: false,
        });
    }

    let m = p.matches();
    let mut edges = Vec::new();
    let steps_per_unit = (Rational::one() / bounds.granularity).to_integer() as usize;
    for i in 0..n {
        for j in i + 1..n {
            if !m.entry(i, j).is_zero() {
                edges.push(Edge {
                    i,
                    j,
                    count: m.entry(i, j).to_integer() as usize,
                    row_steps: (p.citation(i, j) / bounds.granularity).to_integer() as usize,
                });
            }
        }
    }

    let mut gen = Gen {
        n,
        slots,
        steps_per_unit,
        granularity: bounds.granularity,
        edges,
        cells: vec![Rational::zero(); slots * n * n],
        found: BTreeSet::new(),
        cap: bounds.cap,
        work_left: bounds.cap.saturating_mul(4096),
        truncated: false,
    };
    for i in 0..n {
        gen.cells[i * n + i] = p.citation(i, i);
    }
    gen.assign_edge(0);

    let items = gen
        .found
        .into_iter()
        .map(|layer_cells| Decomposition::from_cells(p, layer_cells))
        .collect();
    Ok(Decompositions {
        items,
        truncated: gen.truncated,
    })
}

struct Edge {
    i: usize,
    j: usize,
    /// Matches between the two journals = number of layers the edge occupies.
    count: usize,
    /// Citation mass in the row direction, in grid steps.
    row_steps: usize,
}

struct Gen {
    n: usize,
    slots: usize,
    steps_per_unit: usize,
    granularity: Rational,
    edges: Vec<Edge>,
    /// slots * n * n working matrix stack.
    cells: Vec<Rational>,
    found: BTreeSet<Vec<Vec<Rational>>>,
    cap: usize,
    work_left: usize,
    truncated: bool,
}

impl Gen {
    fn done(&self) -> bool {
        self.truncated || self.work_left == 0
    }

    fn assign_edge(&mut self, e: usize) {
        if self.done() {
            return;
        }
        if e == self.edges.len() {
            self.leaf();
            return;
        }
        let count = self.edges[e].count;
        let mut chosen = Vec::with_capacity(count);
        self.choose_slots(e, 0, count, &mut chosen);
    }

    fn choose_slots(&mut self, e: usize, from: usize, remaining: usize, chosen: &mut Vec<usize>) {
        if self.done() {
            return;
        }
        if remaining == 0 {
            let slots = chosen.clone();
            self.split_mass(e, &slots, 0, self.edges[e].row_steps);
            return;
        }
        // Leave room for the still-unchosen slots.
        for slot in from..=self.slots - remaining {
            chosen.push(slot);
            self.choose_slots(e, slot + 1, remaining - 1, chosen);
            chosen.pop();
            if self.done() {
                return;
            }
        }
    }

    fn split_mass(&mut self, e: usize, slots: &[usize], pos: usize, rem: usize) {
        if self.done() {
            return;
        }
        if pos == slots.len() {
            debug_assert_eq!(rem, 0);
            self.assign_edge(e + 1);
            return;
        }
        let slots_after = slots.len() - pos - 1;
        let (i, j, n) = (self.edges[e].i, self.edges[e].j, self.n);
        for t in 0..=self.steps_per_unit.min(rem) {
            // The remaining slots must be able to absorb the rest.
            if rem - t > slots_after * self.steps_per_unit {
                continue;
            }
            let a = self.granularity * t as i64;
            let base = slots[pos] * n * n;
            self.cells[base + i * n + j] = a;
            self.cells[base + j * n + i] = Rational::one() - a;
            self.split_mass(e, slots, pos + 1, rem - t);
            self.cells[base + i * n + j] = Rational::zero();
            self.cells[base + j * n + i] = Rational::zero();
            if self.done() {
                return;
            }
        }
    }

    fn leaf(&mut self) {
        self.work_left -= 1;
        let nn = self.n * self.n;
        let mut key: Vec<Vec<Rational>> = (0..self.slots)
            .map(|s| self.cells[s * nn..(s + 1) * nn].to_vec())
            .filter(|layer| layer.iter().any(|c| !c.is_zero()))
            .collect();
        key.sort_unstable();
        if self.found.contains(&key) {
            return;
        }
        if self.found.len() == self.cap {
            // A distinct decomposition beyond the cap exists.
            self.truncated = true;
            return;
        }
        self.found.insert(key);
    }
}
