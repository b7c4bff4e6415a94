//! Exact feasibility for systems of difference constraints `x_v - x_u <= w`.
//!
//! Supporting-payoff problems for a fixed matching reduce to this form once
//! each worker's payoff is written as its pair value minus the partner firm's
//! payoff. Bellman-Ford over an origin node decides feasibility exactly and
//! returns the componentwise largest and smallest solutions.

use crate::num::Scalar;

#[derive(Debug, Clone)]
pub struct DifferenceSystem<S> {
    vars: usize,
    /// `(from, to, weight)` meaning `x_to - x_from <= weight`; node 0 is the
    /// origin pinned at 0, variable `i` is node `i + 1`.
    edges: Vec<(usize, usize, S)>,
    /// A constraint with no variables was violated.
    trivially_infeasible: bool,
}

impl<S: Scalar> DifferenceSystem<S> {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            edges: Vec::new(),
            trivially_infeasible: false,
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// `x[a] - x[b] <= w`.
    pub fn diff_le(&mut self, a: usize, b: usize, w: S) {
        self.edges.push((b + 1, a + 1, w));
    }

    /// `x[a] <= w`.
    pub fn upper(&mut self, a: usize, w: S) {
        self.edges.push((0, a + 1, w));
    }

    /// `x[a] >= w`.
    pub fn lower(&mut self, a: usize, w: S) {
        self.edges.push((a + 1, 0, -w));
    }

    /// Records a constant constraint `0 <= w`.
    pub fn constant_nonneg(&mut self, w: &S) {
        if crate::num::gt(&S::zero(), w) {
            self.trivially_infeasible = true;
        }
    }

    fn shortest_from_origin(&self, reverse: bool) -> Option<Vec<S>> {
        let nodes = self.vars + 1;
        let mut dist: Vec<Option<S>> = vec![None; nodes];
        dist[0] = Some(S::zero());
        let relax = |dist: &mut Vec<Option<S>>| -> bool {
            let mut changed = false;
            for (from, to, w) in &self.edges {
                let (from, to) = if reverse { (*to, *from) } else { (*from, *to) };
                if let Some(d) = dist[from].clone() {
                    let cand = d + w.clone();
                    let improves = match &dist[to] {
                        None => true,
                        Some(cur) => crate::num::gt(cur, &cand),
                    };
                    if improves {
                        dist[to] = Some(cand);
                        changed = true;
                    }
                }
            }
            changed
        };
        for _ in 0..nodes {
            if !relax(&mut dist) {
                break;
            }
        }
        if relax(&mut dist) {
            return None; // negative cycle
        }
        dist.into_iter().skip(1).map(|d| d).collect()
    }

    /// Componentwise largest solution, or `None` if infeasible. Every variable
    /// must carry an upper bound.
    pub fn solve_max(&self) -> Option<Vec<S>> {
        if self.trivially_infeasible {
            return None;
        }
        self.shortest_from_origin(false)
    }

    /// Componentwise smallest solution. Every variable must carry a lower bound.
    pub fn solve_min(&self) -> Option<Vec<S>> {
        if self.trivially_infeasible {
            return None;
        }
        self.shortest_from_origin(true)
            .map(|d| d.into_iter().map(|x| -x).collect())
    }

    /// Midpoint of the extreme solutions: feasible by convexity and
    /// independent of constraint insertion order.
    pub fn solve_midpoint(&self) -> Option<Vec<S>> {
        let hi = self.solve_max()?;
        let lo = self.solve_min()?;
        let two = S::from_int(2);
        Some(
            hi.into_iter()
                .zip(lo)
                .map(|(h, l)| (h + l) / two.clone())
                .collect(),
        )
    }

    /// Checks a candidate assignment against every constraint.
    pub fn satisfied_by(&self, x: &[S]) -> bool {
        if self.trivially_infeasible || x.len() != self.vars {
            return false;
        }
        let value = |node: usize| {
            if node == 0 {
                S::zero()
            } else {
                x[node - 1].clone()
            }
        };
        self.edges
            .iter()
            .all(|(from, to, w)| crate::num::ge(&(value(*from) + w.clone()), &value(*to)))
    }
}
