//! Exact feasibility for small item sets in a box.
//!
//! Any packing can be pushed left and down until every coordinate is a sum
//! of side lengths of other items, so it suffices to search placements on
//! the grid of such sums. Cells of that grid are scanned bottom row first;
//! the first free cell either receives the lower-left corner of an item or
//! stays empty. Only packings in which no item can slide down are
//! searched, dead states are remembered, and cheap necessary conditions
//! reject most infeasible sets before the search starts.

use std::collections::{BTreeMap, HashSet};

use super::model::{Item, Placed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitOutcome {
    Packed(Vec<Placed>),
    Infeasible,
    /// The node budget ran out before the search finished.
    Undecided,
}

/// Above this box side the subset sums are kept in a set instead of a table.
const DENSE_SUMS: i64 = 1 << 16;

/// All subset sums of the given lengths that are at most `cap`, including 0 and `cap`.
fn subset_sums(choices: &[Vec<i64>], cap: i64) -> Vec<i64> {
    if cap > DENSE_SUMS {
        let mut reach = std::collections::BTreeSet::from([0i64]);
        for opts in choices {
            let next: Vec<i64> = reach
                .iter()
                .flat_map(|&s| opts.iter().map(move |&l| s + l))
                .filter(|&t| t <= cap)
                .collect();
            reach.extend(next);
        }
        reach.insert(cap);
        return reach.into_iter().collect();
    }
    let cap_us = cap as usize;
    let mut reach = vec![false; cap_us + 1];
    reach[0] = true;
    for opts in choices {
        let prev = reach.clone();
        for (s, &r) in prev.iter().enumerate() {
            if !r {
                continue;
            }
            for &l in opts {
                let t = s + l as usize;
                if t <= cap_us {
                    reach[t] = true;
                }
            }
        }
    }
    reach[cap_us] = true;
    reach
        .iter()
        .enumerate()
        .filter(|(_, &r)| r)
        .map(|(s, _)| s as i64)
        .collect()
}

/// A map on lengths with the image of the full side.
type Scaling = (Box<dyn Fn(i64) -> i64>, i64);

/// Scaled dual feasible functions on `[0, side]`: each maps `side` to the
/// returned scale and keeps the sum over any packable set within it.
fn scalings(side: i64, lengths: &[i64]) -> Vec<Scaling> {
    let mut out: Vec<Scaling> = vec![(Box::new(|x| x), side)];
    let mut cuts: Vec<i64> = lengths.iter().copied().filter(|&l| 2 * l <= side).collect();
    cuts.sort_unstable();
    cuts.dedup();
    for t in cuts {
        out.push((
            Box::new(move |x| {
                if x > side - t {
                    side
                } else if x < t {
                    0
                } else {
                    x
                }
            }),
            side,
        ));
    }
    for k in 1..=8i64 {
        out.push((
            Box::new(move |x| {
                if (k + 1) * x % side == 0 {
                    (k + 1) * x
                } else {
                    (k + 1) * x / side * side
                }
            }),
            (k + 1) * side,
        ));
    }
    out
}

/// Cheap necessary conditions: pairwise separability, stacks of items that
/// cannot sit side by side, and area bounds under dual feasible functions.
fn refuted(u: i64, v: i64, dims: &[Vec<(i64, i64)>]) -> bool {
    for (a, da) in dims.iter().enumerate() {
        for db in &dims[a + 1..] {
            let apart = da
                .iter()
                .any(|p| db.iter().any(|q| p.0 + q.0 <= u || p.1 + q.1 <= v));
            if !apart {
                return true;
            }
        }
    }
    let wide: i64 = dims
        .iter()
        .filter(|d| d.iter().all(|p| 2 * p.0 > u))
        .map(|d| d.iter().map(|p| p.1).min().unwrap_or(0))
        .sum();
    let tall: i64 = dims
        .iter()
        .filter(|d| d.iter().all(|p| 2 * p.1 > v))
        .map(|d| d.iter().map(|p| p.0).min().unwrap_or(0))
        .sum();
    if wide > v || tall > u {
        return true;
    }
    let ws: Vec<i64> = dims.iter().flatten().map(|p| p.0).collect();
    let hs: Vec<i64> = dims.iter().flatten().map(|p| p.1).collect();
    let fw = scalings(u, &ws);
    let fh = scalings(v, &hs);
    fw.iter().any(|(f, sf)| {
        fh.iter().any(|(g, sg)| {
            let total: i128 = dims
                .iter()
                .map(|d| {
                    d.iter()
                        .map(|p| f(p.0) as i128 * g(p.1) as i128)
                        .min()
                        .unwrap_or(0)
                })
                .sum();
            total > *sf as i128 * *sg as i128
        })
    })
}

struct Kind {
    dims: Vec<(i64, i64)>,
    area: i64,
    ids: Vec<u64>,
}

struct Grid {
    xs: Vec<i64>,
    ys: Vec<i64>,
    used: Vec<bool>,
    /// Cells covered by an item rather than left empty.
    filled: Vec<bool>,
    kinds: Vec<Kind>,
    left: Vec<usize>,
    out: Vec<Placed>,
    free_area: i64,
    need_area: i64,
    budget: u64,
    /// States (occupied cells, items left) already shown to be dead ends.
    dead: HashSet<Vec<u64>>,
}

/// Bound on remembered dead states.
const DEAD_CAP: usize = 1 << 21;

impl Grid {
    fn cols(&self) -> usize {
        self.xs.len() - 1
    }

    fn cell_area(&self, c: usize) -> i64 {
        let (i, j) = (c % self.cols(), c / self.cols());
        (self.xs[i + 1] - self.xs[i]) * (self.ys[j + 1] - self.ys[j])
    }

    /// Depth grows with placed items only; empty cells are marked in a loop.
    fn state_key(&self) -> Vec<u64> {
        let words = self.used.len().div_ceil(64);
        let mut key = vec![0u64; 2 * words];
        for c in 0..self.used.len() {
            key[c / 64] |= (self.used[c] as u64) << (c % 64);
            key[words + c / 64] |= (self.filled[c] as u64) << (c % 64);
        }
        key.extend(self.left.iter().map(|&l| l as u64));
        key
    }

    fn run(&mut self, from: usize) -> Option<bool> {
        let cols = self.cols();
        let mut wasted: Vec<usize> = Vec::new();
        let mut seen: Vec<Vec<u64>> = Vec::new();
        let mut from = from;
        let result = loop {
            if self.need_area == 0 {
                break Some(true);
            }
            if self.budget == 0 {
                break None;
            }
            self.budget -= 1;
            if self.need_area > self.free_area {
                break Some(false);
            }
            let Some(c) = (from..self.used.len()).find(|&c| !self.used[c]) else {
                break Some(false);
            };
            let key = self.state_key();
            if self.dead.contains(&key) {
                break Some(false);
            }
            seen.push(key);
            if !self.reachable_area_suffices() {
                break Some(false);
            }
            if let r @ (Some(true) | None) = self.try_items(c, cols) {
                break r;
            }
            self.used[c] = true;
            self.free_area -= self.cell_area(c);
            wasted.push(c);
            from = c + 1;
        };
        if result == Some(false) {
            for key in seen {
                if self.dead.len() < DEAD_CAP {
                    self.dead.insert(key);
                }
            }
        }
        if result != Some(true) {
            for c in wasted {
                self.used[c] = false;
                self.free_area += self.cell_area(c);
            }
        }
        result
    }

    /// Free cells no remaining item can cover are dead; the rest must hold
    /// the remaining area, and every remaining item needs some free spot.
    fn reachable_area_suffices(&self) -> bool {
        let cols = self.cols();
        let rows = self.ys.len() - 1;
        // prefix[(j)(cols+1)+i] counts used cells below row j and left of column i.
        let mut prefix = vec![0u32; (cols + 1) * (rows + 1)];
        for j in 0..rows {
            for i in 0..cols {
                prefix[(j + 1) * (cols + 1) + i + 1] = prefix[j * (cols + 1) + i + 1]
                    + prefix[(j + 1) * (cols + 1) + i]
                    - prefix[j * (cols + 1) + i]
                    + self.used[j * cols + i] as u32;
            }
        }
        let used_in = |i: usize, j: usize, i2: usize, j2: usize| {
            prefix[j2 * (cols + 1) + i2] + prefix[j * (cols + 1) + i]
                - prefix[j * (cols + 1) + i2]
                - prefix[j2 * (cols + 1) + i]
        };
        let mut diff = vec![0i32; (cols + 1) * (rows + 1)];
        for (k, kind) in self.kinds.iter().enumerate() {
            if self.left[k] == 0 {
                continue;
            }
            let mut spots = 0;
            for &(w, h) in &kind.dims {
                for j in 0..rows {
                    let Ok(j2) = self.ys.binary_search(&(self.ys[j] + h)) else {
                        continue;
                    };
                    for i in 0..cols {
                        let Ok(i2) = self.xs.binary_search(&(self.xs[i] + w)) else {
                            continue;
                        };
                        if used_in(i, j, i2, j2) == 0 {
                            spots += 1;
                            diff[j * (cols + 1) + i] += 1;
                            diff[j * (cols + 1) + i2] -= 1;
                            diff[j2 * (cols + 1) + i] -= 1;
                            diff[j2 * (cols + 1) + i2] += 1;
                        }
                    }
                }
            }
            if spots == 0 {
                return false;
            }
        }
        let mut reach = 0i64;
        let mut acc = vec![0i32; (cols + 1) * (rows + 1)];
        for j in 0..rows {
            for i in 0..cols {
                let at = j * (cols + 1) + i;
                let mut v = diff[at];
                if i > 0 {
                    v += acc[at - 1];
                }
                if j > 0 {
                    v += acc[at - (cols + 1)];
                }
                if i > 0 && j > 0 {
                    v -= acc[at - (cols + 1) - 1];
                }
                acc[at] = v;
                if v > 0 {
                    reach += self.cell_area(j * cols + i);
                }
            }
        }
        reach >= self.need_area
    }

    fn try_items(&mut self, c: usize, cols: usize) -> Option<bool> {
        let (i, j) = (c % cols, c / cols);
        let (x, y) = (self.xs[i], self.ys[j]);
        for k in 0..self.kinds.len() {
            if self.left[k] == 0 {
                continue;
            }
            for d in 0..self.kinds[k].dims.len() {
                let (w, h) = self.kinds[k].dims[d];
                let Ok(i2) = self.xs.binary_search(&(x + w)) else {
                    continue;
                };
                let Ok(j2) = self.ys.binary_search(&(y + h)) else {
                    continue;
                };
                let cells: Vec<usize> = (j..j2)
                    .flat_map(|r| (i..i2).map(move |q| r * cols + q))
                    .collect();
                if cells.iter().any(|&q| self.used[q]) {
                    continue;
                }
                // Only packings where nothing can slide down or left are
                // searched: the item must rest on the floor or an item, and
                // its left side must not face empty cells only.
                let rests = j == 0 || (i..i2).any(|q| self.filled[(j - 1) * cols + q]);
                let braced = i == 0
                    || (j..j2)
                        .any(|r| !self.used[r * cols + i - 1] || self.filled[r * cols + i - 1]);
                if !rests || !braced {
                    continue;
                }
                for &q in &cells {
                    self.used[q] = true;
                    self.filled[q] = true;
                }
                let area = self.kinds[k].area;
                self.left[k] -= 1;
                let id = self.kinds[k].ids[self.left[k]];
                self.out.push(Placed::new(id, x, y, w, h));
                self.free_area -= area;
                self.need_area -= area;
                let r = self.run(c + 1);
                if r != Some(false) {
                    return r;
                }
                self.need_area += area;
                self.free_area += area;
                self.out.pop();
                self.left[k] += 1;
                for &q in &cells {
                    self.used[q] = false;
                    self.filled[q] = false;
                }
            }
        }
        Some(false)
    }
}

/// Decides whether all items fit into a `u x v` box, optionally turning
/// items by 90 degrees; `budget` bounds the number of search nodes.
pub fn fit_in_box(u: i64, v: i64, items: &[Item], rotations: bool, budget: u64) -> FitOutcome {
    if items.is_empty() {
        return FitOutcome::Packed(Vec::new());
    }
    let orient = |it: &Item| -> Vec<(i64, i64)> {
        let mut d = vec![(it.w, it.h)];
        if rotations && it.w != it.h {
            d.push((it.h, it.w));
        }
        d.retain(|&(w, h)| w <= u && h <= v);
        d
    };
    if u < 1 || v < 1 || items.iter().any(|it| orient(it).is_empty()) {
        return FitOutcome::Infeasible;
    }
    let need: i64 = items.iter().map(|i| i.area()).sum();
    if need > u * v || refuted(u, v, &items.iter().map(orient).collect::<Vec<_>>()) {
        return FitOutcome::Infeasible;
    }
    let xs = subset_sums(
        &items
            .iter()
            .map(|it| orient(it).iter().map(|d| d.0).collect())
            .collect::<Vec<_>>(),
        u,
    );
    let ys = subset_sums(
        &items
            .iter()
            .map(|it| orient(it).iter().map(|d| d.1).collect())
            .collect::<Vec<_>>(),
        v,
    );
    let mut index: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut kinds: Vec<Kind> = Vec::new();
    for it in items {
        let key = if rotations {
            (it.long_side(), it.short_side())
        } else {
            (it.w, it.h)
        };
        let k = *index.entry(key).or_insert_with(|| {
            kinds.push(Kind {
                dims: orient(it),
                area: it.area(),
                ids: Vec::new(),
            });
            kinds.len() - 1
        });
        kinds[k].ids.push(it.id);
    }
    // Big pieces first keeps the search shallow.
    kinds.sort_by_key(|k| std::cmp::Reverse(k.area));
    let left = kinds.iter().map(|k| k.ids.len()).collect();
    let cells = (xs.len() - 1) * (ys.len() - 1);
    let mut g = Grid {
        xs,
        ys,
        used: vec![false; cells],
        filled: vec![false; cells],
        kinds,
        left,
        out: Vec::new(),
        free_area: u * v,
        need_area: need,
        budget,
        dead: HashSet::new(),
    };
    match g.run(0) {
        Some(true) => FitOutcome::Packed(g.out),
        Some(false) => FitOutcome::Infeasible,
        None => FitOutcome::Undecided,
    }
}
