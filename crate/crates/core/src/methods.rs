//! Scoring methods and the weak orders their scores induce.
//!
//! * `least_squares` — the classical fit: scores solve `L x = b` where `L`
//!   is the Laplacian of the matches graph (self-matches excluded) and
//!   `b_i` is journal `i`'s net citation flow. The system is consistent on
//!   every connected component; scores are pinned to sum to zero per
//!   component, so cross-component comparisons carry no information.
//! * `flat` — everyone scores zero. Useless as a ranking, perfectly immune
//!   to aggregation, which is exactly why it exists here.
//! * `net_sum` — `b` itself, a crude baseline.
//!
//! Scores are `f64`; everything feeding them is computed exactly first.

use crate::order::WeakOrder;
use crate::problem::Problem;
use crate::rational::to_f64;
use crate::Rational;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    LeastSquares,
    Flat,
    NetSum,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::LeastSquares => "ls",
            Method::Flat => "flat",
            Method::NetSum => "netsum",
        }
    }

    pub fn score(self, p: &Problem) -> ScoreVector {
        match self {
            Method::LeastSquares => least_squares(p),
            Method::Flat => flat(p),
            Method::NetSum => net_sum(p),
        }
    }
}

/// Scores for every journal of a problem, tagged with their provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    pub values: Vec<f64>,
    pub method: Method,
    /// All built-in methods normalise scores to sum to zero within each
    /// connected component of the matches graph.
    pub zero_sum_per_component: bool,
}

/// Net citation flow of each journal, exactly: `sum_j c[i][j] - c[j][i]`.
fn net_flows(p: &Problem) -> Vec<Rational> {
    let n = p.n();
    (0..n)
        .map(|i| {
            (0..n).fold(Rational::zero(), |acc, j| {
                acc + (p.citation(i, j) - p.citation(j, i))
            })
        })
        .collect()
}

/// Connected components of the matches graph (edges where any off-diagonal
/// matches entry is nonzero), each sorted, ordered by smallest member.
pub fn connected_components(p: &Problem) -> Vec<Vec<usize>> {
    let n = p.n();
    let m = p.matches();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut queue = vec![root];
        let mut members = Vec::new();
        seen[root] = true;
        while let Some(i) = queue.pop() {
            members.push(i);
            for (j, seen_j) in seen.iter_mut().enumerate() {
                if j != i && !*seen_j && !m.entry(i, j).is_zero() {
                    *seen_j = true;
                    queue.push(j);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

pub fn least_squares(p: &Problem) -> ScoreVector {
    let n = p.n();
    let m = p.matches();
    let b: Vec<f64> = net_flows(p).into_iter().map(to_f64).collect();
    let mut values = vec![0.0; n];
    for comp in connected_components(p) {
        let k = comp.len();
        if k == 1 {
            continue; // isolated journal: pinned at zero
        }
        // The Laplacian is singular (constants in its kernel); adding the
        // rank-one term (1/k) * ones forces the zero-sum solution of the
        // consistent system without disturbing it.
        let mut a = vec![vec![1.0 / k as f64; k]; k];
        let mut rhs = vec![0.0; k];
        for (r, &i) in comp.iter().enumerate() {
            rhs[r] = b[i];
            for (c, &j) in comp.iter().enumerate() {
                if r == c {
                    let degree = (0..n)
                        .filter(|&l| l != i)
                        .fold(Rational::zero(), |acc, l| acc + m.entry(i, l));
                    a[r][c] += to_f64(degree);
                } else {
                    a[r][c] -= to_f64(m.entry(i, j));
                }
            }
        }
        let y = solve_dense(a, rhs);
        let mean: f64 = y.iter().sum::<f64>() / k as f64;
        for (r, &i) in comp.iter().enumerate() {
            values[i] = y[r] - mean;
        }
    }
    ScoreVector {
        values,
        method: Method::LeastSquares,
        zero_sum_per_component: true,
    }
}

pub fn flat(p: &Problem) -> ScoreVector {
    ScoreVector {
        values: vec![0.0; p.n()],
        method: Method::Flat,
        zero_sum_per_component: true,
    }
}

pub fn net_sum(p: &Problem) -> ScoreVector {
    ScoreVector {
        values: net_flows(p).into_iter().map(to_f64).collect(),
        method: Method::NetSum,
        zero_sum_per_component: true,
    }
}

/// Max-norm residual of the least-squares system at `values` — the direct
/// optimality check: the exact solution satisfies `L x = b`.
pub fn least_squares_residual(p: &Problem, values: &[f64]) -> f64 {
    let n = p.n();
    let m = p.matches();
    let b: Vec<f64> = net_flows(p).into_iter().map(to_f64).collect();
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut lhs = 0.0;
        for j in 0..n {
            if i != j {
                let w = to_f64(m.entry(i, j));
                lhs += w * (values[i] - values[j]);
            }
        }
        let r = fabs(lhs - b[i]);
        if r > worst {
            worst = r;
        }
    }
    worst
}

/// Sorts journals by score and merges near-ties: walking down the sorted
/// scores, a journal joins the class above whenever the gap to its
/// predecessor is within `tie_tolerance` (single-link, so a class may span
/// more than the tolerance end to end). Within a class, journal indices
/// stay ascending.
pub fn induced_order(scores: &ScoreVector, tie_tolerance: f64) -> WeakOrder {
    let n = scores.values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| {
        scores.values[b]
            .partial_cmp(&scores.values[a])
            .expect("scores are finite")
            .then(a.cmp(&b))
    });
    let mut ranks = vec![0usize; n];
    let mut rank = 0;
    for w in 0..n {
        if w > 0 && scores.values[idx[w - 1]] - scores.values[idx[w]] > tie_tolerance {
            rank += 1;
        }
        ranks[idx[w]] = rank;
    }
    WeakOrder::from_ranks(ranks).expect("ranks cover an initial segment")
}

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

/// Gaussian elimination with partial pivoting. Callers only pass
/// nonsingular systems (Laplacian plus rank-one correction).
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let k = b.len();
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&r, &s| {
                fabs(a[r][col])
                    .partial_cmp(&fabs(a[s][col]))
                    .expect("finite")
            })
            .expect("nonempty column");
        a.swap(col, pivot);
        b.swap(col, pivot);
        let diag = a[col][col];
        debug_assert!(fabs(diag) > 1e-12, "system should be nonsingular");
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        let b_col = b[col];
        for (offset, target) in lower.iter_mut().enumerate() {
            let factor = target[col] / diag;
            if factor == 0.0 {
                continue;
            }
            for (t, above) in target[col..].iter_mut().zip(&pivot_row[col..]) {
                *t -= factor * above;
            }
            b[col + 1 + offset] -= factor * b_col;
        }
    }
    let mut x = vec![0.0; k];
    for row in (0..k).rev() {
        let mut acc = b[row];
        for c in row + 1..k {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    x
}
