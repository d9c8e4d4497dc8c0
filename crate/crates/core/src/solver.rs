//! Minimum set cover over the visibility matrix: every coverable boundary
//! point must be seen by at least one chosen candidate, with as few candidates
//! as possible.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, SolverError};
use crate::visibility::VisibilityMatrix;

/// Default refusal threshold for [`solve_bruteforce`].
pub const BRUTEFORCE_MAX_CANDIDATES: usize = 25;

/// A covering instance. Boundary points no candidate covers are set aside as
/// `uncoverable` and excluded from the constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverInstance {
    matrix: VisibilityMatrix,
    uncoverable: Vec<usize>,
}

impl CoverInstance {
    pub fn new(matrix: VisibilityMatrix) -> Self {
        let uncoverable = (0..matrix.n_boundary())
            .filter(|&b| matrix.row(b).is_empty())
            .collect();
        Self {
            matrix,
            uncoverable,
        }
    }

    pub fn matrix(&self) -> &VisibilityMatrix {
        &self.matrix
    }

    pub fn uncoverable(&self) -> &[usize] {
        &self.uncoverable
    }

    pub fn coverable_count(&self) -> usize {
        self.matrix.n_boundary() - self.uncoverable.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    FeasibleBoundGap,
    Infeasible,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCounts {
    pub essential_columns: usize,
    pub dominated_rows: usize,
    pub dominated_columns: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub nodes_explored: u64,
    pub reductions: ReductionCounts,
    /// Best proven lower bound on the objective.
    pub lower_bound: usize,
    pub solve_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    /// Chosen candidate indices, ascending.
    pub chosen: Vec<usize>,
    pub objective: usize,
    pub status: SolveStatus,
    pub diagnostics: Diagnostics,
    /// Boundary indices covered by each chosen candidate.
    pub per_camera_coverage: BTreeMap<usize, Vec<usize>>,
}

impl Solution {
    fn new(
        inst: &CoverInstance,
        mut chosen: Vec<usize>,
        status: SolveStatus,
        diagnostics: Diagnostics,
    ) -> Self {
        chosen.sort_unstable();
        chosen.dedup();
        let per_camera_coverage = chosen
            .iter()
            .map(|&c| (c, inst.matrix.col(c).to_vec()))
            .collect();
        Self {
            objective: chosen.len(),
            chosen,
            status,
            diagnostics,
            per_camera_coverage,
        }
    }
}

/// Partition of boundary indices into covered and missed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCheck {
    pub covered: Vec<usize>,
    pub missed: Vec<usize>,
}

/// Which boundary points the chosen candidates cover. Independent of any
/// solver internals.
pub fn verify_cover(matrix: &VisibilityMatrix, chosen: &[usize]) -> CoverCheck {
    let mut hit = vec![false; matrix.n_boundary()];
    for &c in chosen {
        for &b in matrix.col(c) {
            hit[b] = true;
        }
    }
    let (covered, missed): (Vec<usize>, Vec<usize>) =
        (0..matrix.n_boundary()).partition(|&b| hit[b]);
    CoverCheck { covered, missed }
}

/// Classic greedy: take the candidate covering the most uncovered points,
/// lowest index on ties, until every coverable point is covered.
pub fn solve_greedy(inst: &CoverInstance) -> Solution {
    let start = Instant::now();
    let chosen = greedy_cover(inst.matrix());
    let diagnostics = Diagnostics {
        solve_time_s: start.elapsed().as_secs_f64(),
        ..Diagnostics::default()
    };
    Solution::new(inst, chosen, SolveStatus::FeasibleBoundGap, diagnostics)
}

fn greedy_cover(m: &VisibilityMatrix) -> Vec<usize> {
    let mut covered = vec![false; m.n_boundary()];
    // Lazy evaluation: gains only shrink, so a popped entry whose recomputed
    // gain is unchanged is the true maximum. Ties pop lowest index first.
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = (0..m.n_candidates())
        .filter(|&c| !m.col(c).is_empty())
        .map(|c| (m.col(c).len(), Reverse(c)))
        .collect();
    let mut chosen = Vec::new();
    while let Some((gain, Reverse(c))) = heap.pop() {
        let fresh = m.col(c).iter().filter(|&&b| !covered[b]).count();
        if fresh == 0 {
            continue;
        }
        if fresh < gain {
            heap.push((fresh, Reverse(c)));
            continue;
        }
        for &b in m.col(c) {
            covered[b] = true;
        }
        chosen.push(c);
    }
    chosen
}

/// Exhaustive search over candidate subsets by increasing size, each size in
/// lexicographic order. The first feasible subset is optimal.
pub fn solve_bruteforce(inst: &CoverInstance, max_candidates: usize) -> Result<Solution, SolverError> {
    let start = Instant::now();
    let m = inst.matrix();
    let n = m.n_candidates();
    if n > max_candidates {
        return Err(SolverError::TooLarge {
            n,
            limit: max_candidates,
        });
    }
    let words = m.n_boundary().div_ceil(64).max(1);
    let masks: Vec<Vec<u64>> = (0..n)
        .map(|c| {
            let mut w = vec![0u64; words];
            for &b in m.col(c) {
                w[b / 64] |= 1 << (b % 64);
            }
            w
        })
        .collect();
    let mut target = vec![0u64; words];
    for b in 0..m.n_boundary() {
        if !m.row(b).is_empty() {
            target[b / 64] |= 1 << (b % 64);
        }
    }

    fn search(
        masks: &[Vec<u64>],
        target: &[u64],
        acc: &[u64],
        from: usize,
        left: usize,
        picked: &mut Vec<usize>,
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        if left == 0 {
            return acc.iter().zip(target).all(|(a, t)| a & t == *t);
        }
        for c in from..=masks.len() - left {
            let next: Vec<u64> = acc.iter().zip(&masks[c]).map(|(a, b)| a | b).collect();
            picked.push(c);
            if search(masks, target, &next, c + 1, left - 1, picked, nodes) {
                return true;
            }
            picked.pop();
        }
        false
    }

    let mut nodes = 0;
    for k in 0..=n {
        let mut picked = Vec::with_capacity(k);
        if search(&masks, &target, &vec![0; words], 0, k, &mut picked, &mut nodes) {
            let diagnostics = Diagnostics {
                nodes_explored: nodes,
                lower_bound: k,
                solve_time_s: start.elapsed().as_secs_f64(),
                ..Diagnostics::default()
            };
            return Ok(Solution::new(inst, picked, SolveStatus::Optimal, diagnostics));
        }
    }
    unreachable!("the full candidate set covers every coverable row")
}

/// Switches for the exact solver; all reductions are on by default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactOptions {
    pub time_budget: Duration,
    pub essential_columns: bool,
    pub dominated_rows: bool,
    pub dominated_columns: bool,
}

impl ExactOptions {
    pub fn with_budget(seconds: f64) -> Result<Self, ConfigError> {
        if !(seconds.is_finite() && seconds > 0.0) {
            return Err(ConfigError::TimeBudget(seconds));
        }
        Ok(Self {
            time_budget: Duration::from_secs_f64(seconds),
            essential_columns: true,
            dominated_rows: true,
            dominated_columns: true,
        })
    }
}

/// Branch-and-bound with reductions. Returns `Optimal` when optimality is
/// proven within `time_budget` seconds, otherwise the best cover found with
/// status `FeasibleBoundGap`.
pub fn solve_exact(inst: &CoverInstance, time_budget: f64) -> Result<Solution, SolverError> {
    solve_exact_with(inst, &ExactOptions::with_budget(time_budget)?)
}

pub fn solve_exact_with(inst: &CoverInstance, opts: &ExactOptions) -> Result<Solution, SolverError> {
    let start = Instant::now();
    let deadline = start + opts.time_budget;
    let m = inst.matrix();
    // With no candidates at all every row is trivially "uncoverable"; treat
    // that as infeasible rather than as a vacuous cover.
    if m.n_candidates() == 0 && m.n_boundary() > 0 {
        return Err(SolverError::NoCandidates(m.n_boundary()));
    }

    let greedy = greedy_cover(m);
    let mut diag = Diagnostics::default();

    let mut problem = Problem::from_matrix(m);
    let mut forced = Vec::new();
    problem.reduce(opts, &mut forced, &mut diag.reductions);

    let mut chosen = forced.clone();
    let mut proven = true;
    let mut lower = forced.len();
    for component in problem.components() {
        let sub = problem.restrict(&component);
        let mut bb = BranchAndBound::new(&sub, opts, deadline);
        let result = bb.run();
        diag.nodes_explored += bb.nodes;
        diag.reductions.essential_columns += bb.essential;
        proven &= result.proven;
        lower += result.lower_bound;
        chosen.extend(result.best.iter().map(|&c| sub.col_orig[c]));
    }

    let status = if proven {
        SolveStatus::Optimal
    } else {
        SolveStatus::FeasibleBoundGap
    };
    // Never worse than the greedy incumbent.
    if greedy.len() < chosen.len() {
        chosen = greedy;
    }
    diag.lower_bound = if proven { chosen.len() } else { lower };
    diag.solve_time_s = start.elapsed().as_secs_f64();
    Ok(Solution::new(inst, chosen, status, diag))
}

/// Bitset form of a covering problem with activity masks for reductions.
struct Problem {
    n_rows: usize,
    n_cols: usize,
    /// Columns covering each row.
    row_cols: Vec<FixedBitSet>,
    /// Rows covered by each column.
    col_rows: Vec<FixedBitSet>,
    col_orig: Vec<usize>,
    active_rows: FixedBitSet,
    active_cols: FixedBitSet,
}

impl Problem {
    fn from_matrix(m: &VisibilityMatrix) -> Self {
        let n_rows = m.n_boundary();
        let n_cols = m.n_candidates();
        let mut row_cols = vec![FixedBitSet::with_capacity(n_cols); n_rows];
        let mut col_rows = vec![FixedBitSet::with_capacity(n_rows); n_cols];
        let mut active_rows = FixedBitSet::with_capacity(n_rows);
        let mut active_cols = FixedBitSet::with_capacity(n_cols);
        for (c, rows) in col_rows.iter_mut().enumerate() {
            for &b in m.col(c) {
                row_cols[b].insert(c);
                rows.insert(b);
                active_rows.insert(b);
            }
            if !m.col(c).is_empty() {
                active_cols.insert(c);
            }
        }
        Self {
            n_rows,
            n_cols,
            row_cols,
            col_rows,
            col_orig: (0..n_cols).collect(),
            active_rows,
            active_cols,
        }
    }

    fn choose(&mut self, c: usize, forced: &mut Vec<usize>) {
        forced.push(self.col_orig[c]);
        self.active_cols.set(c, false);
        self.active_rows.difference_with(&self.col_rows[c]);
    }

    /// Applies the enabled reductions until none fires.
    fn reduce(&mut self, opts: &ExactOptions, forced: &mut Vec<usize>, counts: &mut ReductionCounts) {
        loop {
            let mut changed = false;
            if opts.essential_columns {
                changed |= self.fix_essential(forced, counts);
            }
            changed |= self.drop_empty_columns();
            if opts.dominated_columns {
                changed |= self.drop_dominated_columns(counts);
            }
            if opts.dominated_rows {
                changed |= self.drop_dominated_rows(counts);
            }
            if !changed {
                break;
            }
        }
    }

    fn fix_essential(&mut self, forced: &mut Vec<usize>, counts: &mut ReductionCounts) -> bool {
        let mut changed = false;
        let rows: Vec<usize> = self.active_rows.ones().collect();
        for r in rows {
            if !self.active_rows.contains(r) {
                continue;
            }
            let mut live = self.row_cols[r].intersection(&self.active_cols);
            if let (Some(c), None) = (live.next(), live.next()) {
                self.choose(c, forced);
                counts.essential_columns += 1;
                changed = true;
            }
        }
        changed
    }

    fn drop_empty_columns(&mut self) -> bool {
        let dead: Vec<usize> = self
            .active_cols
            .ones()
            .filter(|&c| self.col_rows[c].is_disjoint(&self.active_rows))
            .collect();
        for &c in &dead {
            self.active_cols.set(c, false);
        }
        !dead.is_empty()
    }

    /// A column whose live rows are a subset of another live column's rows is
    /// never needed; equal columns keep the lowest index.
    fn drop_dominated_columns(&mut self, counts: &mut ReductionCounts) -> bool {
        let live_rows: Vec<FixedBitSet> = (0..self.n_cols)
            .map(|c| {
                if self.active_cols.contains(c) {
                    let mut s = self.col_rows[c].clone();
                    s.intersect_with(&self.active_rows);
                    s
                } else {
                    FixedBitSet::new()
                }
            })
            .collect();
        let sizes: Vec<usize> = live_rows.iter().map(|s| s.count_ones(..)).collect();
        let row_degree: Vec<usize> = (0..self.n_rows)
            .map(|r| {
                if self.active_rows.contains(r) {
                    self.row_cols[r].intersection_count(&self.active_cols)
                } else {
                    0
                }
            })
            .collect();

        let mut dropped = 0;
        let cols: Vec<usize> = self.active_cols.ones().collect();
        for c1 in cols {
            let s1 = &live_rows[c1];
            let Some(pivot) = s1.ones().min_by_key(|&r| row_degree[r]) else {
                continue;
            };
            let dominated = self.row_cols[pivot].ones().any(|c2| {
                c2 != c1
                    && self.active_cols.contains(c2)
                    && (sizes[c2] > sizes[c1] || c2 < c1)
                    && s1.is_subset(&live_rows[c2])
            });
            if dominated {
                self.active_cols.set(c1, false);
                dropped += 1;
            }
        }
        counts.dominated_columns += dropped;
        dropped > 0
    }

    /// A row whose live columns are a superset of another row's is implied by
    /// it; equal rows keep the lowest index.
    fn drop_dominated_rows(&mut self, counts: &mut ReductionCounts) -> bool {
        let live_cols: Vec<FixedBitSet> = (0..self.n_rows)
            .map(|r| {
                if self.active_rows.contains(r) {
                    let mut s = self.row_cols[r].clone();
                    s.intersect_with(&self.active_cols);
                    s
                } else {
                    FixedBitSet::new()
                }
            })
            .collect();
        let sizes: Vec<usize> = live_cols.iter().map(|s| s.count_ones(..)).collect();
        let col_degree: Vec<usize> = (0..self.n_cols)
            .map(|c| {
                if self.active_cols.contains(c) {
                    self.col_rows[c].intersection_count(&self.active_rows)
                } else {
                    0
                }
            })
            .collect();

        let mut dropped = 0;
        let rows: Vec<usize> = self.active_rows.ones().collect();
        for r1 in rows {
            if !self.active_rows.contains(r1) {
                continue;
            }
            let s1 = &live_cols[r1];
            let Some(pivot) = s1.ones().min_by_key(|&c| col_degree[c]) else {
                continue;
            };
            let supersets: Vec<usize> = self.col_rows[pivot]
                .ones()
                .filter(|&r2| {
                    r2 != r1
                        && self.active_rows.contains(r2)
                        && (sizes[r2] > sizes[r1] || r2 > r1)
                        && s1.is_subset(&live_cols[r2])
                })
                .collect();
            for r2 in supersets {
                self.active_rows.set(r2, false);
                dropped += 1;
            }
        }
        counts.dominated_rows += dropped;
        dropped > 0
    }

    /// Groups of live rows connected through shared live columns.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.n_rows);
        let mut col_seen = FixedBitSet::with_capacity(self.n_cols);
        let mut out = Vec::new();
        for r0 in self.active_rows.ones() {
            if seen.contains(r0) {
                continue;
            }
            seen.insert(r0);
            let mut stack = vec![r0];
            let mut comp = Vec::new();
            while let Some(r) = stack.pop() {
                comp.push(r);
                for c in self.row_cols[r].intersection(&self.active_cols) {
                    if col_seen.put(c) {
                        continue;
                    }
                    for r2 in self.col_rows[c].intersection(&self.active_rows) {
                        if !seen.put(r2) {
                            stack.push(r2);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Compact sub-problem over `rows` and the live columns touching them.
    fn restrict(&self, rows: &[usize]) -> SubProblem {
        let mut cols: Vec<usize> = Vec::new();
        let mut col_index = vec![usize::MAX; self.n_cols];
        for &r in rows {
            for c in self.row_cols[r].intersection(&self.active_cols) {
                if col_index[c] == usize::MAX {
                    col_index[c] = 0;
                    cols.push(c);
                }
            }
        }
        cols.sort_unstable();
        for (i, &c) in cols.iter().enumerate() {
            col_index[c] = i;
        }
        let mut row_cols = vec![FixedBitSet::with_capacity(cols.len()); rows.len()];
        let mut col_rows = vec![FixedBitSet::with_capacity(rows.len()); cols.len()];
        for (i, &r) in rows.iter().enumerate() {
            for c in self.row_cols[r].intersection(&self.active_cols) {
                row_cols[i].insert(col_index[c]);
                col_rows[col_index[c]].insert(i);
            }
        }
        let col_list = col_rows.iter().map(|s| s.ones().collect()).collect();
        SubProblem {
            row_cols,
            col_rows,
            col_list,
            col_orig: cols.iter().map(|&c| self.col_orig[c]).collect(),
        }
    }
}

struct SubProblem {
    row_cols: Vec<FixedBitSet>,
    col_rows: Vec<FixedBitSet>,
    col_list: Vec<Vec<usize>>,
    col_orig: Vec<usize>,
}

struct BbResult {
    best: Vec<usize>,
    proven: bool,
    lower_bound: usize,
}

/// Lagrangian relaxation of the covering constraints at one node.
struct Relaxation {
    bound: f64,
    /// Reduced cost of each column at the best multipliers (allowed columns
    /// only; others are `f64::INFINITY`).
    reduced: Vec<f64>,
}

const ROOT_ITERATIONS: usize = 10000;
const NODE_ITERATIONS: usize = 60;
const LP_MAX_NONZEROS: usize = 400_000;
const LOCAL_SEARCH_STEPS: u64 = 1_000_000;
const LOCAL_SEARCH_SEED: u64 = 0x5eed;

struct BranchAndBound<'a> {
    p: &'a SubProblem,
    opts: &'a ExactOptions,
    deadline: Instant,
    best: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    essential: usize,
    timed_out: bool,
}

/// Rounds a relaxation value up to the integer bound it proves.
fn integral_bound(value: f64) -> usize {
    (value - 1e-6).ceil().max(0.0) as usize
}

impl<'a> BranchAndBound<'a> {
    fn new(p: &'a SubProblem, opts: &'a ExactOptions, deadline: Instant) -> Self {
        Self {
            p,
            opts,
            deadline,
            best: Vec::new(),
            chosen: Vec::new(),
            nodes: 0,
            essential: 0,
            timed_out: false,
        }
    }

    fn run(&mut self) -> BbResult {
        let n_rows = self.p.row_cols.len();
        let n_cols = self.p.col_rows.len();
        let mut uncovered = FixedBitSet::with_capacity(n_rows);
        uncovered.insert_range(..);
        let mut allowed = FixedBitSet::with_capacity(n_cols);
        allowed.insert_range(..);

        self.best = self.greedy(&uncovered, &allowed);
        let mut multipliers = self.lp_duals(n_rows).unwrap_or_else(|| self.initial_multipliers());
        let relax = self.relax(&uncovered, &allowed, &mut multipliers, ROOT_ITERATIONS, 2.0);
        self.improve_from(&uncovered, &allowed, &relax.reduced);
        let root_bound = self
            .cheap_bound(&uncovered, &allowed)
            .max(integral_bound(relax.bound));
        if root_bound < self.best.len() {
            // Cheap and usually closes the gap on its own.
            self.local_search(root_bound);
        }
        if root_bound < self.best.len() {
            self.search(uncovered, allowed, multipliers);
        }
        let proven = !self.timed_out;
        BbResult {
            lower_bound: if proven { self.best.len() } else { root_bound },
            best: self.best.clone(),
            proven,
        }
    }

    fn local_search(&mut self, target: usize) {
        let mut row_cols = vec![Vec::new(); self.p.row_cols.len()];
        for (c, rows) in self.p.col_list.iter().enumerate() {
            for &r in rows {
                row_cols[r].push(c);
            }
        }
        let found = crate::local_search::improve_cover(
            &self.p.col_list,
            &row_cols,
            &self.best,
            target,
            LOCAL_SEARCH_STEPS,
            LOCAL_SEARCH_SEED,
        );
        if found.len() < self.best.len() {
            self.best = found;
        }
    }

    /// Each row starts at the best per-row price of a column covering it.
    fn initial_multipliers(&self) -> Vec<f64> {
        self.p
            .row_cols
            .iter()
            .map(|cols| {
                cols.ones()
                    .map(|c| 1.0 / self.p.col_list[c].len() as f64)
                    .fold(0.0, f64::max)
            })
            .collect()
    }

    fn greedy(&self, uncovered: &FixedBitSet, allowed: &FixedBitSet) -> Vec<usize> {
        let mut left = uncovered.clone();
        let mut out = Vec::new();
        while !left.is_clear() {
            let Some(c) = allowed
                .ones()
                .map(|c| (self.p.col_rows[c].intersection_count(&left), Reverse(c)))
                .filter(|(g, _)| *g > 0)
                .max()
                .map(|(_, Reverse(c))| c)
            else {
                break;
            };
            left.difference_with(&self.p.col_rows[c]);
            out.push(c);
        }
        out
    }

    /// Optimal multipliers from the dual of the LP relaxation,
    /// `max sum_r y_r  s.t.  sum_{r in c} y_r <= 1, y >= 0`. Skipped for very
    /// large components or when the LP does not finish in time; the
    /// subgradient then starts from the heuristic multipliers instead.
    fn lp_duals(&self, n_rows: usize) -> Option<Vec<f64>> {
        let nnz: usize = self.p.col_list.iter().map(Vec::len).sum();
        if n_rows < 2 || nnz > LP_MAX_NONZEROS {
            return None;
        }
        let remaining = self.deadline.checked_duration_since(Instant::now())?;
        let mut lp = microlp::Problem::new(microlp::OptimizationDirection::Maximize);
        let vars: Vec<microlp::Variable> = (0..n_rows).map(|_| lp.add_var(1.0, (0.0, 1.0))).collect();
        for rows in &self.p.col_list {
            let expr: Vec<(microlp::Variable, f64)> = rows.iter().map(|&r| (vars[r], 1.0)).collect();
            lp.add_constraint(&expr[..], microlp::ComparisonOp::Le, 1.0);
        }
        lp.set_time_limit(remaining.mul_f64(0.25));
        match lp.solve() {
            Ok(microlp::SolveOutcome::Solution(sol)) => {
                Some(vars.iter().map(|&v| sol.var_value(v).max(0.0)).collect())
            }
            _ => None,
        }
    }

    /// max(disjoint-row packing, ceil(uncovered / largest column)).
    fn cheap_bound(&self, uncovered: &FixedBitSet, allowed: &FixedBitSet) -> usize {
        let mut rows: Vec<(usize, usize)> = uncovered
            .ones()
            .map(|r| (self.p.row_cols[r].intersection_count(allowed), r))
            .collect();
        rows.sort_unstable();
        let mut used = FixedBitSet::with_capacity(allowed.len());
        let mut packing = 0;
        for (_, r) in rows {
            if self.p.row_cols[r].is_disjoint(&used) {
                packing += 1;
                used.union_with(&self.p.row_cols[r]);
            }
        }
        let n_unc = uncovered.count_ones(..);
        let widest = allowed
            .ones()
            .map(|c| self.p.col_rows[c].intersection_count(uncovered))
            .max()
            .unwrap_or(0);
        let by_size = if widest == 0 { 0 } else { n_unc.div_ceil(widest) };
        packing.max(by_size)
    }

    /// Subgradient optimization of
    /// `L(u) = sum_r u_r + sum_c min(0, 1 - sum_{r in c} u_r)`,
    /// a valid lower bound for any `u >= 0`. Leaves the best multipliers in
    /// `u` for warm starts.
    fn relax(
        &mut self,
        uncovered: &FixedBitSet,
        allowed: &FixedBitSet,
        u: &mut [f64],
        iterations: usize,
        mut step_scale: f64,
    ) -> Relaxation {
        let rows: Vec<usize> = uncovered.ones().collect();
        let cols: Vec<(usize, Vec<usize>)> = allowed
            .ones()
            .map(|c| {
                let live: Vec<usize> = self.p.col_list[c]
                    .iter()
                    .copied()
                    .filter(|&r| uncovered.contains(r))
                    .collect();
                (c, live)
            })
            .filter(|(_, live)| !live.is_empty())
            .collect();
        let mut full = vec![f64::INFINITY; self.p.col_rows.len()];

        let mut best_bound = f64::NEG_INFINITY;
        let mut best_u: Vec<f64> = u.to_vec();
        let mut reduced = vec![0.0; cols.len()];
        let mut gradient = vec![0.0; u.len()];
        let mut stall = 0;
        for it in 0..iterations {
            let mut bound: f64 = rows.iter().map(|&r| u[r]).sum();
            for (k, (_, live)) in cols.iter().enumerate() {
                reduced[k] = 1.0 - live.iter().map(|&r| u[r]).sum::<f64>();
                bound += reduced[k].min(0.0);
            }
            if it % 10 == 0 {
                for (k, (c, _)) in cols.iter().enumerate() {
                    full[*c] = reduced[k];
                }
                self.improve_from(uncovered, allowed, &full);
            }
            // Aim slightly above the incumbent so steps stay informative as
            // the bound approaches it.
            let target = 1.05 * (self.best.len() - self.chosen.len()) as f64;
            if bound > best_bound + 1e-9 {
                best_bound = bound;
                best_u.copy_from_slice(u);
                stall = 0;
            } else {
                stall += 1;
                if stall >= 60 {
                    step_scale *= 0.5;
                    stall = 0;
                }
            }
            if self.chosen.len() + integral_bound(best_bound) >= self.best.len() || step_scale < 1e-5 {
                break;
            }

            for &r in &rows {
                gradient[r] = 1.0;
            }
            for (k, (_, live)) in cols.iter().enumerate() {
                if reduced[k] < 0.0 {
                    for &r in live {
                        gradient[r] -= 1.0;
                    }
                }
            }
            // Multipliers pinned at zero cannot move further down.
            for &r in &rows {
                if u[r] <= 0.0 && gradient[r] < 0.0 {
                    gradient[r] = 0.0;
                }
            }
            let norm: f64 = rows.iter().map(|&r| gradient[r] * gradient[r]).sum();
            if norm == 0.0 {
                break;
            }
            let step = step_scale * (target - bound).max(0.05) / norm;
            for &r in &rows {
                u[r] = (u[r] + step * gradient[r]).max(0.0);
            }
        }
        u.copy_from_slice(&best_u);

        for (c, live) in &cols {
            full[*c] = 1.0 - live.iter().map(|&r| u[r]).sum::<f64>();
        }
        // Allowed columns that touch no uncovered row are never useful.
        Relaxation {
            bound: best_bound.max(0.0),
            reduced: full,
        }
    }

    /// Lagrangian primal heuristic: seed with the columns of negative
    /// reduced cost, complete greedily by new
    /// coverage with lower scores breaking ties, then drop redundant columns.
    fn improve_from(&mut self, uncovered: &FixedBitSet, allowed: &FixedBitSet, scores: &[f64]) {
        let mut left = uncovered.clone();
        let mut picked = Vec::new();
        let mut seeds: Vec<usize> = allowed.ones().filter(|&c| scores[c] < -1e-9).collect();
        seeds.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
        for c in seeds {
            if !self.p.col_rows[c].is_disjoint(&left) {
                left.difference_with(&self.p.col_rows[c]);
                picked.push(c);
            }
        }
        while !left.is_clear() {
            let pick = allowed
                .ones()
                .filter(|&c| scores[c].is_finite())
                .map(|c| (self.p.col_rows[c].intersection_count(&left), c))
                .filter(|&(gain, _)| gain > 0)
                .max_by(|a, b| {
                    a.0.cmp(&b.0)
                        .then(scores[b.1].total_cmp(&scores[a.1]))
                        .then(b.1.cmp(&a.1))
                });
            let Some((_, c)) = pick else {
                return;
            };
            left.difference_with(&self.p.col_rows[c]);
            picked.push(c);
        }

        let mut count = vec![0u32; self.p.row_cols.len()];
        for &c in &picked {
            for &r in &self.p.col_list[c] {
                count[r] += 1;
            }
        }
        // Drop the worst-scored redundant columns first.
        picked.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(b.cmp(&a)));
        let mut keep = Vec::with_capacity(picked.len());
        for &c in &picked {
            let redundant = self.p.col_list[c]
                .iter()
                .all(|&r| !uncovered.contains(r) || count[r] >= 2);
            if redundant {
                for &r in &self.p.col_list[c] {
                    count[r] -= 1;
                }
            } else {
                keep.push(c);
            }
        }
        if self.chosen.len() + keep.len() < self.best.len() {
            let mut sol = self.chosen.clone();
            sol.extend(keep);
            self.best = sol;
        }
    }

    fn search(&mut self, mut uncovered: FixedBitSet, mut allowed: FixedBitSet, mut u: Vec<f64>) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if Instant::now() >= self.deadline {
            self.timed_out = true;
            return;
        }

        let depth = self.chosen.len();
        let infeasible = !self.propagate(&mut uncovered, &mut allowed);
        if infeasible {
            self.chosen.truncate(depth);
            return;
        }
        if uncovered.is_clear() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            self.chosen.truncate(depth);
            return;
        }
        if self.chosen.len() + self.cheap_bound(&uncovered, &allowed) >= self.best.len() {
            self.chosen.truncate(depth);
            return;
        }

        let relax = self.relax(&uncovered, &allowed, &mut u, NODE_ITERATIONS, 1.0);
        self.improve_from(&uncovered, &allowed, &relax.reduced);
        let base = self.chosen.len() as f64 + relax.bound;
        if integral_bound(base) >= self.best.len() {
            self.chosen.truncate(depth);
            return;
        }
        // Reduced-cost fixing: any cover using c costs at least base + rc(c).
        let limit = self.best.len();
        let fixed: Vec<usize> = allowed
            .ones()
            .filter(|&c| !relax.reduced[c].is_finite() || integral_bound(base + relax.reduced[c]) >= limit)
            .collect();
        for c in fixed {
            allowed.set(c, false);
        }

        // Branch on the hardest row; every cover contains one of its columns.
        let Some(row) = uncovered
            .ones()
            .min_by_key(|&r| (self.p.row_cols[r].intersection_count(&allowed), r))
        else {
            self.chosen.truncate(depth);
            return;
        };
        let mut options: Vec<usize> = self.p.row_cols[row].intersection(&allowed).collect();
        options.sort_by(|&a, &b| {
            relax.reduced[a]
                .total_cmp(&relax.reduced[b])
                .then(a.cmp(&b))
        });

        for c in options {
            if self.chosen.len() + 1 >= self.best.len() {
                break;
            }
            let mut next_uncovered = uncovered.clone();
            next_uncovered.difference_with(&self.p.col_rows[c]);
            allowed.set(c, false);
            self.chosen.push(c);
            self.search(next_uncovered, allowed.clone(), u.clone());
            self.chosen.pop();
            if self.timed_out {
                break;
            }
            // Later siblings exclude c, so their subtrees are disjoint.
        }
        self.chosen.truncate(depth);
    }

    /// Forces columns that are the last option for some row. Returns false
    /// if a row has no allowed column left.
    fn propagate(&mut self, uncovered: &mut FixedBitSet, allowed: &mut FixedBitSet) -> bool {
        loop {
            let mut forced = None;
            for r in uncovered.ones() {
                let mut it = self.p.row_cols[r].intersection(allowed);
                match (it.next(), it.next()) {
                    (None, _) => return false,
                    (Some(c), None) => {
                        forced = Some(c);
                        break;
                    }
                    _ => {}
                }
            }
            match forced {
                Some(c) if self.opts.essential_columns => {
                    self.essential += 1;
                    self.chosen.push(c);
                    allowed.set(c, false);
                    uncovered.difference_with(&self.p.col_rows[c]);
                }
                _ => return true,
            }
        }
    }
}
