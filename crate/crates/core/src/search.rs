//! Exhaustive sweeps over finite families of citation problems.
//!
//! A [`FamilySpec`] describes every problem on `n` journals whose citation
//! matrix is assembled from a finite alphabet of per-pair states. The default
//! alphabet — no match, a win either way, or a draw — generates exactly the
//! unweighted, loopless, extremal problems with at most one match per pair,
//! the smallest arena where the two axioms already collide.
//!
//! Instances are numbered like base-`k` numerals: one digit per unordered
//! pair, pairs ordered `(0,1), (0,2), ..., (n-2,n-1)`, first pair most
//! significant. The numbering is part of the public contract so findings can
//! be replayed from an instance index alone.
//!
//! Sweeps run in parallel when the `parallel` feature is on; results are
//! always in ascending instance order either way.

use crate::axioms::{
    certificate_from_sets, check_ia, check_sc_method, uniform_relation, IaMode, IaViolation,
    ImpossibilityCertificate,
};
use crate::decomp::SearchBounds;
use crate::methods::Method;
use crate::order::{Relation, WeakOrder};
use crate::problem::{ClassFlags, Problem};
use crate::rational::rat;
use crate::sc::{sc_admissible_set, ScViolation};
use crate::{Error, Rational, Result};
use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

/// Default ceiling on family size, as a journal count.
pub const DEFAULT_FAMILY_MAX_N: usize = 5;

/// Restricts a sweep to instances carrying the requested class flags.
/// A `false` field means "don't care", so the default keeps everything.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassConstraints {
    pub balanced: bool,
    pub unweighted: bool,
    pub loopless: bool,
    pub extremal: bool,
}

impl ClassConstraints {
    pub fn satisfied_by(&self, flags: &ClassFlags) -> bool {
        (!self.balanced || flags.balanced)
            && (!self.unweighted || flags.unweighted)
            && (!self.loopless || flags.loopless)
            && (!self.extremal || flags.extremal)
    }
}

/// A finite, indexable family of problems on `n` journals.
///
/// Each unordered pair `{i, j}` with `i < j` independently takes one state
/// from `alphabet`; state `(a, b)` puts `a` in cell `(i, j)` and `b` in cell
/// `(j, i)`. Diagonals are zero throughout.
///
/// With `dedup_isomorphic` on, only one instance per relabeling orbit is
/// kept — the member with the smallest index. It is off by default so
/// instance counts stay checkable against closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub n: usize,
    pub constraints: ClassConstraints,
    pub alphabet: Vec<(Rational, Rational)>,
    pub max_n: usize,
    pub dedup_isomorphic: bool,
}

/// No match, home win, away win, draw.
pub fn default_alphabet() -> Vec<(Rational, Rational)> {
    let zero = Rational::zero();
    let one = rat(1, 1);
    let half = rat(1, 2);
    vec![(zero, zero), (one, zero), (zero, one), (half, half)]
}

impl FamilySpec {
    pub fn new(n: usize) -> Self {
        FamilySpec {
            n,
            constraints: ClassConstraints::default(),
            alphabet: default_alphabet(),
            max_n: DEFAULT_FAMILY_MAX_N,
            dedup_isomorphic: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::TooFewJournals { n: self.n, min: 2 });
        }
        if self.n > self.max_n {
            return Err(Error::TooManyJournals {
                n: self.n,
                max: self.max_n,
            });
        }
        let zero = Rational::zero();
        if self.alphabet.iter().any(|(a, b)| *a < zero || *b < zero) {
            return Err(Error::InvalidAlphabet);
        }
        Ok(())
    }

    pub fn pair_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Family size before constraint filtering.
    pub fn instance_count(&self) -> Result<u64> {
        let base = self.alphabet.len() as u64;
        base.checked_pow(self.pair_count() as u32)
            .ok_or(Error::FamilyTooLarge)
    }

    /// Decodes an instance index into its problem. The index must be below
    /// [`instance_count`](Self::instance_count); journals are named `J1..Jn`.
    pub fn problem_at(&self, index: u64) -> Problem {
        let base = self.alphabet.len() as u64;
        let pairs = self.pair_count();
        let mut digits = vec![0usize; pairs];
        let mut rest = index;
        for slot in (0..pairs).rev() {
            digits[slot] = (rest % base) as usize;
            rest /= base;
        }
        debug_assert_eq!(rest, 0, "instance index out of range");
        let mut rows = vec![vec![Rational::zero(); self.n]; self.n];
        let mut slot = 0;
        // Each pair writes both triangle halves, so iterating `rows` directly
        // cannot replace the indices here.
        #[allow(clippy::needless_range_loop)]
        for i in 0..self.n {
            for j in i + 1..self.n {
                let (received, returned) = self.alphabet[digits[slot]];
                rows[i][j] = received;
                rows[j][i] = returned;
                slot += 1;
            }
        }
        Problem::from_rows(rows).expect("alphabet entries validated nonnegative")
    }

    /// Iterates the family in instance order, skipping instances that miss
    /// the constraints (and orbit duplicates when deduplicating).
    pub fn iter(&self) -> Result<ProblemFamily<'_>> {
        self.validate()?;
        Ok(ProblemFamily {
            spec: self,
            next: 0,
            count: self.instance_count()?,
        })
    }

    /// Re-reads a problem's cells as instance digits. `None` when some pair
    /// state is missing from the alphabet.
    fn encode(&self, p: &Problem) -> Option<u64> {
        let base = self.alphabet.len() as u64;
        let mut index = 0u64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                let state = (p.citation(i, j), p.citation(j, i));
                let digit = self.alphabet.iter().position(|s| *s == state)?;
                index = index * base + digit as u64;
            }
        }
        Some(index)
    }

    /// An instance represents its relabeling orbit iff no relabeling of it
    /// encodes to a smaller index. Relabelings that fall outside the
    /// alphabet don't compete — they are not family members.
    fn is_canonical(&self, index: u64, p: &Problem) -> bool {
        let mut canonical = true;
        let mut items: Vec<usize> = (0..self.n).collect();
        for_each_permutation(&mut items, self.n, &mut |perm| {
            if canonical {
                let relabeled = p.permuted(perm).expect("0..n is a permutation");
                if let Some(other) = self.encode(&relabeled) {
                    if other < index {
                        canonical = false;
                    }
                }
            }
        });
        canonical
    }

    fn admits(&self, index: u64, p: &Problem) -> bool {
        self.constraints.satisfied_by(&p.classify())
            && (!self.dedup_isomorphic || self.is_canonical(index, p))
    }
}

/// Heap's algorithm; permutes `items` in place and calls `f` on each of the
/// `k!` arrangements of the first `k` entries.
fn for_each_permutation(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(items);
        return;
    }
    for i in 0..k {
        for_each_permutation(items, k - 1, f);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

pub struct ProblemFamily<'a> {
    spec: &'a FamilySpec,
    next: u64,
    count: u64,
}

impl Iterator for ProblemFamily<'_> {
    type Item = (u64, Problem);

    fn next(&mut self) -> Option<Self::Item> {
        while self.next < self.count {
            let index = self.next;
            self.next += 1;
            let p = self.spec.problem_at(index);
            if self.spec.admits(index, &p) {
                return Some((index, p));
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxiom {
    IaWeak,
    IaStrict,
    Sc,
}

impl SweepAxiom {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxiom::IaWeak => "ia-weak",
            SweepAxiom::IaStrict => "ia-strict",
            SweepAxiom::Sc => "sc",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepViolation {
    Ia(IaViolation),
    Sc {
        problem: Problem,
        violation: ScViolation,
    },
}

/// One axiom failure found by a sweep, tagged with the instance it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFinding {
    pub instance: u64,
    pub violation: SweepViolation,
}

/// Checks `method` against one axiom on every instance of the family.
/// Findings come back sorted by instance, then in the per-instance order of
/// the underlying checker.
pub fn sweep_violations(
    method: Method,
    spec: &FamilySpec,
    axiom: SweepAxiom,
    tie_tolerance: f64,
    bounds: &SearchBounds,
) -> Result<Vec<SweepFinding>> {
    spec.validate()?;
    bounds.validate()?;
    if matches!(axiom, SweepAxiom::IaWeak | SweepAxiom::IaStrict) && spec.n < 3 {
        return Err(Error::TooFewJournals { n: spec.n, min: 3 });
    }
    let count = usize::try_from(spec.instance_count()?).map_err(|_| Error::FamilyTooLarge)?;
    let per_instance = map_indices(count, |index| -> Result<Vec<SweepFinding>> {
        let index = index as u64;
        let p = spec.problem_at(index);
        if !spec.admits(index, &p) {
            return Ok(Vec::new());
        }
        let violations: Vec<SweepViolation> = match axiom {
            SweepAxiom::IaWeak => check_ia(method, &p, IaMode::Weak, tie_tolerance)?
                .into_iter()
                .map(SweepViolation::Ia)
                .collect(),
            SweepAxiom::IaStrict => check_ia(method, &p, IaMode::Strict, tie_tolerance)?
                .into_iter()
                .map(SweepViolation::Ia)
                .collect(),
            SweepAxiom::Sc => match check_sc_method(method, &p, tie_tolerance, bounds) {
                Some(violation) => vec![SweepViolation::Sc {
                    problem: p,
                    violation,
                }],
                None => Vec::new(),
            },
        };
        Ok(violations
            .into_iter()
            .map(|violation| SweepFinding {
                instance: index,
                violation,
            })
            .collect())
    });
    let mut findings = Vec::new();
    for chunk in per_instance {
        findings.extend(chunk?);
    }
    Ok(findings)
}

/// An impossibility certificate found by a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCertificate {
    pub instance: u64,
    pub certificate: ImpossibilityCertificate,
}

/// Hunts for axiom clashes across the whole family: for every instance,
/// every target pair ranked strictly and uniformly by the admissible set,
/// and every disjoint merge pair, reports a certificate when the merged
/// instance's admissible set abandons that relation. Certificates come back
/// sorted by instance, then target pair, then merge pair.
pub fn sweep_impossibility(
    spec: &FamilySpec,
    bounds: &SearchBounds,
) -> Result<Vec<SweepCertificate>> {
    spec.validate()?;
    bounds.validate()?;
    if spec.n < 4 {
        // A target pair and a disjoint merge pair need four journals, so
        // smaller families simply hold no certificates.
        return Ok(Vec::new());
    }
    let count = usize::try_from(spec.instance_count()?).map_err(|_| Error::FamilyTooLarge)?;
    let n = spec.n;
    let per_instance = map_indices(count, |index| -> Result<Vec<SweepCertificate>> {
        let index = index as u64;
        let p = spec.problem_at(index);
        if !spec.admits(index, &p) {
            return Ok(Vec::new());
        }
        let before = sc_admissible_set(&p, bounds)?;
        let mut after_sets: BTreeMap<(usize, usize), Vec<WeakOrder>> = BTreeMap::new();
        let mut found = Vec::new();
        for t0 in 0..n {
            for t1 in t0 + 1..n {
                // Only targets the admissible set already pins down strictly
                // can clash, so the expensive merges wait for one.
                match uniform_relation(&before, t0, t1) {
                    Some(Relation::Above) | Some(Relation::Below) => {}
                    _ => continue,
                }
                for m0 in 0..n {
                    for m1 in m0 + 1..n {
                        if m0 == t0 || m0 == t1 || m1 == t0 || m1 == t1 {
                            continue;
                        }
                        if let Entry::Vacant(slot) = after_sets.entry((m0, m1)) {
                            let merged = p.aggregate(m0, m1)?;
                            slot.insert(sc_admissible_set(&merged, bounds)?);
                        }
                        if let Some(certificate) = certificate_from_sets(
                            &p,
                            (t0, t1),
                            (m0, m1),
                            bounds,
                            &before,
                            &after_sets[&(m0, m1)],
                        ) {
                            found.push(SweepCertificate {
                                instance: index,
                                certificate,
                            });
                        }
                    }
                }
            }
        }
        Ok(found)
    });
    let mut certificates = Vec::new();
    for chunk in per_instance {
        certificates.extend(chunk?);
    }
    Ok(certificates)
}

#[cfg(feature = "parallel")]
fn map_indices<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_indices<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}
