//! The self-consistency axiom.
//!
//! Journal `i` dominates journal `j` under a candidate weak order when some
//! decomposition into unweighted layers admits, in every layer, a bijection
//! from `i`'s competitors onto `j`'s such that `i` took at least as many
//! citations from each competitor as `j` took from its image, and each
//! competitor ranks at least as high as its image *in the candidate order
//! itself*. The axiom then demands `i` ranked weakly above `j`, strictly if
//! any single comparison in the witness is strict. Because the rank
//! conditions refer to the order being tested, admissibility is a fixed-point
//! property, checked here by filtering exhaustively enumerated weak orders.
//!
//! Witness searches run within [`SearchBounds`]; a bounded search can only
//! miss witnesses, never invent one, so reported violations are always real
//! while "no violation" means "none within bounds". Searches prefer strict
//! witnesses over non-strict ones and earlier decompositions, layers and
//! bijections (all in canonical order) over later ones.

use crate::decomp::{
    competitor_set, enumerate_decompositions, validate_decomposition, Decomposition, SearchBounds,
};
use crate::methods::{induced_order, ScoreVector};
use crate::order::{enumerate_weak_orders, Relation, WeakOrder};
use crate::problem::Problem;
use crate::Result;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::One;

/// The competitor bijection chosen for one layer: `(k, g(k))` pairs, sorted
/// by `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerMapping {
    pub layer: usize,
    pub pairs: Vec<(usize, usize)>,
}

/// Evidence that `i` dominates `j` under a given order: a decomposition, one
/// competitor bijection per layer, and whether any comparison is strict.
/// Everything needed to re-check the claim from scratch is embedded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceWitness {
    pub decomposition: Decomposition,
    pub mappings: Vec<LayerMapping>,
    pub strict: bool,
}

impl DominanceWitness {
    /// Full from-scratch re-check of the witness against `p`, the pair and
    /// the order, including the strictness flag.
    pub fn validate(&self, p: &Problem, i: usize, j: usize, order: &WeakOrder) -> bool {
        if !validate_decomposition(p, &self.decomposition) {
            return false;
        }
        if self.mappings.len() != self.decomposition.layers.len() {
            return false;
        }
        let mut any_strict = false;
        for (pos, mapping) in self.mappings.iter().enumerate() {
            if mapping.layer != pos {
                return false;
            }
            let layer = &self.decomposition.layers[pos];
            let (si, sj) = match (competitor_set(layer, i), competitor_set(layer, j)) {
                (Ok(a), Ok(b)) => (a.members, b.members),
                _ => return false,
            };
            if mapping.pairs.len() != si.len() || si.len() != sj.len() {
                return false;
            }
            let mut domain = BTreeSet::new();
            let mut image = BTreeSet::new();
            for &(k, g) in &mapping.pairs {
                if !si.contains(&k) || !sj.contains(&g) || !domain.insert(k) || !image.insert(g) {
                    return false;
                }
                let ck = layer.problem.citation(i, k);
                let cg = layer.problem.citation(j, g);
                if ck < cg || !order.weakly_above(k, g) {
                    return false;
                }
                if ck > cg || order.strictly_above(k, g) {
                    any_strict = true;
                }
            }
        }
        any_strict == self.strict
    }
}

/// A weak order failing the axiom: the witness forces a relation on `pair`
/// that the order (whose stance is `observed`) does not grant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScViolation {
    pub pair: (usize, usize),
    pub witness: DominanceWitness,
    pub observed: Relation,
}

/// Decompositions of a problem with per-layer competitor lists, computed
/// once and shared across pair and order checks.
struct Prepared {
    items: Vec<(Decomposition, Vec<Vec<Vec<usize>>>)>,
}

fn prepare(p: &Problem, bounds: &SearchBounds) -> Prepared {
    // Misconfigured bounds or off-grid data admit no decompositions, hence
    // no witnesses; entry points that can report errors have already done so.
    let items = match enumerate_decompositions(p, bounds) {
        Ok(d) => d.items,
        Err(_) => Vec::new(),
    };
    let items = items
        .into_iter()
        .map(|d| {
            let competitors = d
                .layers
                .iter()
                .map(|layer| {
                    let n = layer.problem.n();
                    let m = layer.problem.matches();
                    (0..n)
                        .map(|i| (0..n).filter(|&j| m.entry(i, j).is_one()).collect())
                        .collect()
                })
                .collect();
            (d, competitors)
        })
        .collect();
    Prepared { items }
}

/// Searches `bounds` for a witness that `i` dominates `j` under `order`.
/// Strict witnesses win over non-strict ones; ties break toward the
/// canonically first decomposition and bijection. `None` means no witness
/// within the bounds (including the case where the problem sits off the
/// search grid).
pub fn sc_dominates(
    p: &Problem,
    i: usize,
    j: usize,
    order: &WeakOrder,
    bounds: &SearchBounds,
) -> Option<DominanceWitness> {
    assert!(
        i != j && i < p.n() && j < p.n(),
        "pair must be two distinct journals"
    );
    assert_eq!(order.n(), p.n(), "order and problem must agree on n");
    find_witness(&prepare(p, bounds), i, j, order)
}

fn find_witness(
    prepared: &Prepared,
    i: usize,
    j: usize,
    order: &WeakOrder,
) -> Option<DominanceWitness> {
    let mut fallback: Option<DominanceWitness> = None;
    for (d, competitors) in &prepared.items {
        if let Some((mappings, strict)) = witness_in(d, competitors, i, j, order) {
            let witness = DominanceWitness {
                decomposition: d.clone(),
                mappings,
                strict,
            };
            if strict {
                return Some(witness);
            }
            if fallback.is_none() {
                fallback = Some(witness);
            }
        }
    }
    fallback
}

fn witness_in(
    d: &Decomposition,
    competitors: &[Vec<Vec<usize>>],
    i: usize,
    j: usize,
    order: &WeakOrder,
) -> Option<(Vec<LayerMapping>, bool)> {
    let mut chosen = Vec::with_capacity(d.layers.len());
    for (pos, layer) in d.layers.iter().enumerate() {
        chosen.push(first_bijection(
            &layer.problem,
            i,
            j,
            &competitors[pos][i],
            &competitors[pos][j],
            order,
            false,
        )?);
    }
    if !chosen.iter().any(|(_, strict)| *strict) {
        // The all-first selection is non-strict; a single strict layer
        // mapping, if one exists anywhere, upgrades the whole witness.
        for (pos, layer) in d.layers.iter().enumerate() {
            if let Some(found) = first_bijection(
                &layer.problem,
                i,
                j,
                &competitors[pos][i],
                &competitors[pos][j],
                order,
                true,
            ) {
                chosen[pos] = found;
                break;
            }
        }
    }
    let strict = chosen.iter().any(|(_, strict)| *strict);
    let mappings = chosen
        .into_iter()
        .enumerate()
        .map(|(layer, (pairs, _))| LayerMapping { layer, pairs })
        .collect();
    Some((mappings, strict))
}

/// First (by lexicographic image tuple) bijection from `si` onto `sj`
/// satisfying both the citation and the rank condition for every pair;
/// `require_strict` restricts the search to bijections with at least one
/// strict comparison. Empty competitor sets admit exactly the empty
/// bijection, which is never strict.
fn first_bijection(
    layer: &Problem,
    i: usize,
    j: usize,
    si: &[usize],
    sj: &[usize],
    order: &WeakOrder,
    require_strict: bool,
) -> Option<(Vec<(usize, usize)>, bool)> {
    if si.len() != sj.len() {
        return None;
    }
    let mut image = vec![usize::MAX; si.len()];
    let mut used = vec![false; sj.len()];
    struct Search<'a> {
        layer: &'a Problem,
        i: usize,
        j: usize,
        si: &'a [usize],
        sj: &'a [usize],
        order: &'a WeakOrder,
        require_strict: bool,
    }
    fn descend(
        s: &Search<'_>,
        pos: usize,
        strict_so_far: bool,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == s.si.len() {
            return strict_so_far || !s.require_strict;
        }
        let k = s.si[pos];
        for cand in 0..s.sj.len() {
            if used[cand] {
                continue;
            }
            let g = s.sj[cand];
            let ck = s.layer.citation(s.i, k);
            let cg = s.layer.citation(s.j, g);
            if ck < cg || !s.order.weakly_above(k, g) {
                continue;
            }
            let strict_here = ck > cg || s.order.strictly_above(k, g);
            image[pos] = g;
            used[cand] = true;
            if descend(s, pos + 1, strict_so_far || strict_here, image, used) {
                return true;
            }
            used[cand] = false;
            image[pos] = usize::MAX;
        }
        false
    }
    let search = Search {
        layer,
        i,
        j,
        si,
        sj,
        order,
        require_strict,
    };
    if !descend(&search, 0, false, &mut image, &mut used) {
        return None;
    }
    let pairs: Vec<(usize, usize)> = si.iter().copied().zip(image.iter().copied()).collect();
    let strict = pairs
        .iter()
        .any(|&(k, g)| layer.citation(i, k) > layer.citation(j, g) || order.strictly_above(k, g));
    Some((pairs, strict))
}

fn violation_against(prepared: &Prepared, order: &WeakOrder, n: usize) -> Option<ScViolation> {
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if let Some(witness) = find_witness(prepared, i, j, order) {
                let observed = order.compare(i, j);
                let violated = if witness.strict {
                    observed != Relation::Above
                } else {
                    observed == Relation::Below
                };
                if violated {
                    return Some(ScViolation {
                        pair: (i, j),
                        witness,
                        observed,
                    });
                }
            }
        }
    }
    None
}

/// Checks one weak order against the axiom; `None` means admissible (within
/// bounds). Violations come back for the canonically first offending pair.
pub fn sc_admissible(p: &Problem, order: &WeakOrder, bounds: &SearchBounds) -> Option<ScViolation> {
    assert_eq!(order.n(), p.n(), "order and problem must agree on n");
    violation_against(&prepare(p, bounds), order, p.n())
}

/// Every admissible weak order, in canonical order. Errors only when the
/// problem is too large to enumerate orders for, or the bounds are
/// misconfigured.
pub fn sc_admissible_set(p: &Problem, bounds: &SearchBounds) -> Result<Vec<WeakOrder>> {
    bounds.validate()?;
    let orders = enumerate_weak_orders(p.n())?;
    let prepared = prepare(p, bounds);
    Ok(orders
        .into_iter()
        .filter(|order| violation_against(&prepared, order, p.n()).is_none())
        .collect())
}

/// Checks the order induced by a score vector. This is how a scoring method
/// is tested for self-consistency on a concrete problem.
pub fn sc_check_scores(
    p: &Problem,
    scores: &ScoreVector,
    tie_tolerance: f64,
    bounds: &SearchBounds,
) -> Option<ScViolation> {
    assert_eq!(
        scores.values.len(),
        p.n(),
        "scores and problem must agree on n"
    );
    sc_admissible(p, &induced_order(scores, tie_tolerance), bounds)
}
