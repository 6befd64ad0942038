//! Checking scoring methods against the two axioms, and certifying when the
//! axioms cannot be satisfied together.
//!
//! Invariance to aggregation comes in two readings, both first-class here
//! because they genuinely differ and the difference is the point:
//!
//! * **weak** — the literal text: merging two other journals must never
//!   *reverse* a weak preference (`f_k >= f_l` before, `f_k < f_l` after).
//!   A strict preference collapsing to a tie is tolerated.
//! * **strict** — no surviving pair's relation may change at all. This is
//!   the reading impossibility arguments actually need.
//!
//! An [`ImpossibilityCertificate`] shows the two axioms clash on a concrete
//! problem: every self-consistent order ranks the target pair strictly one
//! way before a merge, and no self-consistent order of the merged problem
//! keeps that relation. Certificates embed both admissible sets in full and
//! re-validate from scratch.

use crate::decomp::SearchBounds;
use crate::methods::Method;
use crate::order::{Relation, WeakOrder};
use crate::problem::Problem;
use crate::sc::{sc_admissible_set, sc_check_scores, ScViolation};
use crate::{Error, Result};
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IaMode {
    Weak,
    Strict,
}

impl IaMode {
    pub fn name(self) -> &'static str {
        match self {
            IaMode::Weak => "ia-weak",
            IaMode::Strict => "ia-strict",
        }
    }
}

/// Score comparison with a tie band.
pub fn score_relation(a: f64, b: f64, tie_tolerance: f64) -> Relation {
    if a - b > tie_tolerance {
        Relation::Above
    } else if b - a > tie_tolerance {
        Relation::Below
    } else {
        Relation::Tied
    }
}

/// One aggregation-invariance failure: merging `merge` moved the relation of
/// the surviving pair `pair` from `before` to `after`. Indices refer to the
/// original problem, which is embedded so the violation is self-contained.
#[derive(Debug, Clone, PartialEq)]
pub struct IaViolation {
    pub problem: Problem,
    pub merge: (usize, usize),
    pub pair: (usize, usize),
    pub before: Relation,
    pub after: Relation,
    pub mode: IaMode,
}

/// Tries every merge of two journals and compares the method's scores on
/// all surviving unordered pairs, before and after — one violation per
/// changed pair, oriented so the report reads in the direction that broke.
/// Returns all violations in canonical order (merge pair major, witness
/// pair minor).
pub fn check_ia(
    method: Method,
    p: &Problem,
    mode: IaMode,
    tie_tolerance: f64,
) -> Result<Vec<IaViolation>> {
    let n = p.n();
    if n < 3 {
        return Err(Error::TooFewJournals { n, min: 3 });
    }
    let before = method.score(p).values;
    let mut violations = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let merged = p.aggregate(a, b).expect("a < b < n");
            let after = method.score(&merged).values;
            let map = |k: usize| if k < b { k } else { k - 1 };
            // One violation per surviving unordered pair: a changed relation
            // between k and l is a single fact. Weak mode is directional
            // (a weak preference turning into its strict opposite), so both
            // orientations are tried; at most one can fire because the
            // reversed orientation starts from the mirrored relation.
            for k in 0..n {
                for l in k + 1..n {
                    if k == a || k == b || l == a || l == b {
                        continue;
                    }
                    let rel_before = score_relation(before[k], before[l], tie_tolerance);
                    let rel_after = score_relation(after[map(k)], after[map(l)], tie_tolerance);
                    let pair = match mode {
                        IaMode::Weak => {
                            if rel_before != Relation::Below && rel_after == Relation::Below {
                                Some(((k, l), rel_before, rel_after))
                            } else if rel_before != Relation::Above && rel_after == Relation::Above
                            {
                                Some(((l, k), rel_before.flip(), rel_after.flip()))
                            } else {
                                None
                            }
                        }
                        IaMode::Strict => {
                            (rel_before != rel_after).then_some(((k, l), rel_before, rel_after))
                        }
                    };
                    if let Some((pair, before, after)) = pair {
                        violations.push(IaViolation {
                            problem: p.clone(),
                            merge: (a, b),
                            pair,
                            before,
                            after,
                            mode,
                        });
                    }
                }
            }
        }
    }
    Ok(violations)
}

/// Self-consistency check of a method's scores on one problem.
pub fn check_sc_method(
    method: Method,
    p: &Problem,
    tie_tolerance: f64,
    bounds: &SearchBounds,
) -> Option<ScViolation> {
    sc_check_scores(p, &method.score(p), tie_tolerance, bounds)
}

/// Proof that self-consistency and strict-mode invariance to aggregation
/// exclude each other on `problem`: every admissible order ranks the target
/// pair strictly the same way (`before_relation`), and after merging the
/// (disjoint) merge pair, every admissible order of the merged problem
/// agrees on a *different* relation for it (`after_relation` — tied, or
/// outright reversed). Any method satisfying self-consistency must land in
/// the before-set on the problem and in the after-set on the merged problem,
/// so strict-mode invariance is untenable. Both admissible sets are embedded
/// in full.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpossibilityCertificate {
    pub problem: Problem,
    pub target: (usize, usize),
    pub merge: (usize, usize),
    pub bounds: SearchBounds,
    pub before: Vec<WeakOrder>,
    pub after: Vec<WeakOrder>,
    pub before_relation: Relation,
    pub after_relation: Relation,
}

impl ImpossibilityCertificate {
    /// Target pair's indices inside the merged problem.
    pub fn target_after_merge(&self) -> (usize, usize) {
        let b = self.merge.0.max(self.merge.1);
        let map = |k: usize| if k < b { k } else { k - 1 };
        (map(self.target.0), map(self.target.1))
    }

    /// Recomputes both admissible sets and the uniform relations from
    /// scratch and checks they reproduce the embedded data and actually
    /// witness an impossibility.
    pub fn validate(&self) -> bool {
        let recomputed =
            certify_impossibility(&self.problem, self.target, self.merge, &self.bounds);
        match recomputed {
            Ok(Some(cert)) => cert == *self,
            _ => false,
        }
    }
}

pub(crate) fn uniform_relation(orders: &[WeakOrder], i: usize, j: usize) -> Option<Relation> {
    let first = orders.first()?.compare(i, j);
    orders
        .iter()
        .all(|o| o.compare(i, j) == first)
        .then_some(first)
}

/// Shared by [`certify_impossibility`] and the sweep: decides whether two
/// admissible sets witness an impossibility for `target`.
pub(crate) fn certificate_from_sets(
    p: &Problem,
    target: (usize, usize),
    merge: (usize, usize),
    bounds: &SearchBounds,
    before: &[WeakOrder],
    after: &[WeakOrder],
) -> Option<ImpossibilityCertificate> {
    let before_relation = uniform_relation(before, target.0, target.1)?;
    if before_relation == Relation::Tied {
        return None;
    }
    let b = merge.0.max(merge.1);
    let map = |k: usize| if k < b { k } else { k - 1 };
    let after_relation = uniform_relation(after, map(target.0), map(target.1))?;
    if after_relation == before_relation {
        return None;
    }
    Some(ImpossibilityCertificate {
        problem: p.clone(),
        target,
        merge,
        bounds: bounds.clone(),
        before: before.to_vec(),
        after: after.to_vec(),
        before_relation,
        after_relation,
    })
}

/// Looks for an impossibility certificate on `p` for the `target` pair under
/// the `merge` pair (the two pairs must be disjoint). `Ok(None)` means the
/// admissible sets don't clash — within the given bounds.
pub fn certify_impossibility(
    p: &Problem,
    target: (usize, usize),
    merge: (usize, usize),
    bounds: &SearchBounds,
) -> Result<Option<ImpossibilityCertificate>> {
    let n = p.n();
    for index in [target.0, target.1, merge.0, merge.1] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    if target.0 == target.1 {
        return Err(Error::IdenticalPair { index: target.0 });
    }
    if merge.0 == merge.1 {
        return Err(Error::IdenticalPair { index: merge.0 });
    }
    if [merge.0, merge.1]
        .iter()
        .any(|m| *m == target.0 || *m == target.1)
    {
        return Err(Error::OverlappingPairs);
    }
    let before = sc_admissible_set(p, bounds)?;
    let merged = p.aggregate(merge.0, merge.1)?;
    let after = sc_admissible_set(&merged, bounds)?;
    Ok(certificate_from_sets(
        p, target, merge, bounds, &before, &after,
    ))
}
