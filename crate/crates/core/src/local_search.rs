//! Row-weighting local search for unicost set cover: shrink a cover one
//! column at a time, repairing with swaps guided by adaptive row weights.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tries to find a cover smaller than `start`, stopping at `target` columns
/// or after `max_steps` swaps. Columns are given as row lists and rows as
/// column lists. Deterministic for a fixed `seed`.
pub(crate) fn improve_cover(
    col_rows: &[Vec<usize>],
    row_cols: &[Vec<usize>],
    start: &[usize],
    target: usize,
    max_steps: u64,
    seed: u64,
) -> Vec<usize> {
    let mut st = State::new(col_rows, row_cols);
    for &c in start {
        st.add(c);
    }
    debug_assert!(st.uncovered.is_empty());
    let mut best = start.to_vec();
    if best.len() <= target {
        return best;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut step = 0u64;
    let mut last_added = usize::MAX;

    while step < max_steps {
        while st.uncovered.is_empty() {
            if st.chosen.len() < best.len() {
                best = st.chosen.clone();
                best.sort_unstable();
                if best.len() <= target {
                    return best;
                }
            }
            let c = st.best_to_remove(usize::MAX);
            st.remove(c, step);
        }
        step += 1;

        let c = st.best_to_remove(last_added);
        st.remove(c, step);

        let r = st.uncovered[rng.gen_range(0..st.uncovered.len())];
        let add = st.row_cols[r]
            .iter()
            .copied()
            .filter(|&c| st.can_add[c])
            .max_by(|&a, &b| st.score[a].cmp(&st.score[b]).then(st.stamp[b].cmp(&st.stamp[a])))
            .unwrap_or(st.row_cols[r][0]);
        st.add(add);
        st.stamp[add] = step;
        last_added = add;

        for &r in &st.uncovered {
            st.weight[r] += 1;
            for &c in &row_cols[r] {
                st.score[c] += 1;
            }
        }
    }
    best
}

struct State<'a> {
    col_rows: &'a [Vec<usize>],
    row_cols: &'a [Vec<usize>],
    in_cover: Vec<bool>,
    chosen: Vec<usize>,
    cover_count: Vec<u32>,
    weight: Vec<i64>,
    /// Outside the cover: weight of the uncovered rows the column would
    /// cover. Inside: minus the weight of the rows only it covers.
    score: Vec<i64>,
    stamp: Vec<u64>,
    can_add: Vec<bool>,
    uncovered: Vec<usize>,
    slot: Vec<usize>,
}

impl<'a> State<'a> {
    fn new(col_rows: &'a [Vec<usize>], row_cols: &'a [Vec<usize>]) -> Self {
        let n_rows = row_cols.len();
        let n_cols = col_rows.len();
        Self {
            col_rows,
            row_cols,
            in_cover: vec![false; n_cols],
            chosen: Vec::new(),
            cover_count: vec![0; n_rows],
            weight: vec![1; n_rows],
            score: col_rows.iter().map(|rows| rows.len() as i64).collect(),
            stamp: vec![0; n_cols],
            can_add: vec![true; n_cols],
            uncovered: (0..n_rows).collect(),
            slot: (0..n_rows).collect(),
        }
    }

    fn sole_cover(&self, r: usize, except: usize) -> Option<usize> {
        self.row_cols[r]
            .iter()
            .copied()
            .find(|&c| c != except && self.in_cover[c])
    }

    fn add(&mut self, c: usize) {
        let (col_rows, row_cols) = (self.col_rows, self.row_cols);
        self.in_cover[c] = true;
        self.chosen.push(c);
        self.score[c] = -self.score[c];
        for &r in &col_rows[c] {
            self.cover_count[r] += 1;
            match self.cover_count[r] {
                1 => {
                    let w = self.weight[r];
                    for &other in &row_cols[r] {
                        if other != c {
                            self.score[other] -= w;
                        }
                    }
                    self.unmark(r);
                }
                2 => {
                    if let Some(c0) = self.sole_cover(r, c) {
                        self.score[c0] += self.weight[r];
                    }
                }
                _ => {}
            }
            for &other in &row_cols[r] {
                self.can_add[other] = true;
            }
        }
    }

    fn remove(&mut self, c: usize, step: u64) {
        let (col_rows, row_cols) = (self.col_rows, self.row_cols);
        self.in_cover[c] = false;
        let pos = self.chosen.iter().position(|&x| x == c).expect("column in cover");
        self.chosen.swap_remove(pos);
        self.score[c] = -self.score[c];
        self.stamp[c] = step;
        for &r in &col_rows[c] {
            self.cover_count[r] -= 1;
            match self.cover_count[r] {
                0 => {
                    let w = self.weight[r];
                    for &other in &row_cols[r] {
                        if other != c {
                            self.score[other] += w;
                        }
                    }
                    self.mark(r);
                }
                1 => {
                    if let Some(c0) = self.sole_cover(r, c) {
                        self.score[c0] -= self.weight[r];
                    }
                }
                _ => {}
            }
            for &other in &row_cols[r] {
                self.can_add[other] = true;
            }
        }
        self.can_add[c] = false;
    }

    /// The cover column whose removal loses the least weight, oldest first.
    fn best_to_remove(&self, tabu: usize) -> usize {
        let pick = self
            .chosen
            .iter()
            .copied()
            .filter(|&c| c != tabu)
            .max_by(|&a, &b| {
                self.score[a]
                    .cmp(&self.score[b])
                    .then(self.stamp[b].cmp(&self.stamp[a]))
                    .then(b.cmp(&a))
            });
        pick.unwrap_or(self.chosen[0])
    }

    fn mark(&mut self, r: usize) {
        self.slot[r] = self.uncovered.len();
        self.uncovered.push(r);
    }

    fn unmark(&mut self, r: usize) {
        let i = self.slot[r];
        let last = *self.uncovered.last().expect("row is uncovered");
        self.uncovered.swap_remove(i);
        if last != r {
            self.slot[last] = i;
        }
    }
}
