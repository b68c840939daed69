//! Backtracking engine for triple-value constraint problems.
//!
//! Variables are equivalence classes of triples forced equal by partial
//! left-invariance. Every constraint demands that a small signed sum of
//! class values vanish (a 4-tuple alternating sum after degenerate faces
//! contribute zero). Search is chronological backtracking with unit
//! propagation, deterministic in the class order with +1 tried before -1,
//! and an exhausted tree is a refutation.

use super::CircularError;

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut current = x;
        while self.parent[current] != root {
            let next = self.parent[current];
            self.parent[current] = root;
            current = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root so class order follows the
            // lexicographic order of representative triples.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// A conjunction of linear constraints `sum coef * value(class) = 0` over
/// `{-1, +1}`-valued classes.
pub(crate) struct Problem {
    pub class_count: usize,
    pub constraints: Vec<Vec<(usize, i32)>>,
}

pub(crate) enum SolveOutcome {
    Satisfiable(Vec<i8>),
    Unsatisfiable,
}

struct SearchState {
    values: Vec<i8>,
    trail: Vec<usize>,
    watch: Vec<Vec<usize>>,
}

impl SearchState {
    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let class = self.trail.pop().expect("mark bounded by length");
            self.values[class] = 0;
        }
    }
}

/// Deterministic search; returns the found values or a refutation, plus the
/// number of decision nodes explored.
pub(crate) fn solve(
    problem: &Problem,
    max_nodes: u64,
) -> Result<(SolveOutcome, u64), CircularError> {
    let n = problem.class_count;
    let mut watch = vec![Vec::new(); n];
    for (ci, constraint) in problem.constraints.iter().enumerate() {
        for &(class, _) in constraint {
            watch[class].push(ci);
        }
    }
    let mut state = SearchState {
        values: vec![0; n],
        trail: Vec::new(),
        watch,
    };
    let mut nodes: u64 = 0;

    // Constraints can force values before any decision (or refute outright).
    let seed: Vec<usize> = (0..problem.constraints.len()).collect();
    if !propagate_constraints(problem, &mut state, &seed) {
        return Ok((SolveOutcome::Unsatisfiable, nodes));
    }

    struct Frame {
        class: usize,
        tried_minus: bool,
        mark: usize,
    }
    let mut frames: Vec<Frame> = Vec::new();

    loop {
        match (0..n).find(|&c| state.values[c] == 0) {
            None => {
                return Ok((SolveOutcome::Satisfiable(state.values.clone()), nodes));
            }
            Some(class) => {
                nodes += 1;
                if nodes > max_nodes {
                    return Err(CircularError::SearchBudget { nodes });
                }
                let mark = state.trail.len();
                frames.push(Frame {
                    class,
                    tried_minus: false,
                    mark,
                });
                if assign_and_propagate(problem, &mut state, class, 1) {
                    continue;
                }
                // Unwind decisions until some frame still has -1 untried.
                loop {
                    let Some(frame) = frames.last_mut() else {
                        return Ok((SolveOutcome::Unsatisfiable, nodes));
                    };
                    state.undo_to(frame.mark);
                    if frame.tried_minus {
                        frames.pop();
                        continue;
                    }
                    frame.tried_minus = true;
                    nodes += 1;
                    if nodes > max_nodes {
                        return Err(CircularError::SearchBudget { nodes });
                    }
                    let class = frame.class;
                    if assign_and_propagate(problem, &mut state, class, -1) {
                        break;
                    }
                }
            }
        }
    }
}

fn assign_and_propagate(
    problem: &Problem,
    state: &mut SearchState,
    class: usize,
    value: i8,
) -> bool {
    state.values[class] = value;
    state.trail.push(class);
    let touched = state.watch[class].clone();
    propagate_constraints(problem, state, &touched)
}

// Returns false on conflict. Assignments made during propagation land on
// the trail, so the caller's undo mark covers them.
fn propagate_constraints(
    problem: &Problem,
    state: &mut SearchState,
    seed: &[usize],
) -> bool {
    let mut queue: Vec<usize> = seed.to_vec();
    while let Some(ci) = queue.pop() {
        let constraint = &problem.constraints[ci];
        let mut sum: i32 = 0;
        let mut unassigned: Option<(usize, i32)> = None;
        let mut unassigned_weight: i32 = 0;
        let mut unassigned_count = 0;
        for &(class, coef) in constraint {
            let v = state.values[class];
            if v == 0 {
                unassigned = Some((class, coef));
                unassigned_weight += coef.abs();
                unassigned_count += 1;
            } else {
                sum += coef * i32::from(v);
            }
        }
        match unassigned_count {
            0 => {
                if sum != 0 {
                    return false;
                }
            }
            1 => {
                let (class, coef) = unassigned.expect("counted one");
                // coef * v = -sum with v in {-1, +1}.
                if sum.abs() != coef.abs() {
                    return false;
                }
                let v: i8 = if (-sum) * coef > 0 { 1 } else { -1 };
                state.values[class] = v;
                state.trail.push(class);
                queue.extend_from_slice(&state.watch[class]);
            }
            _ => {
                if sum.abs() > unassigned_weight {
                    return false;
                }
            }
        }
    }
    true
}
