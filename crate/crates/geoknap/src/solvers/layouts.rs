//! Container layouts tried by the solvers: single containers, two-piece
//! guillotine splits at candidate sizes, and shelf and column layouts.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::containers::{
    candidate_sizes_with, fill_containers, is_small, Container, ContainerKind, ContainerLayout,
    SIZE_CAP,
};
use crate::core::{Item, Placed, Rect};
use crate::error::Result;
use crate::Rat;

use super::SolveConfig;

const CUTS_PER_AXIS: usize = 16;
const SHELF_HEIGHTS: usize = 12;

use ContainerKind::{Area, Horizontal, Vertical};

/// Layouts inside `region` for the given items, at most `cfg.layout_budget`.
pub fn generate_layouts(
    region: Rect,
    items: &[Item],
    rotations: bool,
    eps: Rat,
    cfg: &SolveConfig,
) -> Result<Vec<ContainerLayout>> {
    layouts_within(region, items, rotations, eps, cfg, cfg.layout_budget)
}

pub(crate) fn layouts_within(
    region: Rect,
    items: &[Item],
    rotations: bool,
    eps: Rat,
    cfg: &SolveConfig,
    budget: usize,
) -> Result<Vec<ContainerLayout>> {
    if region.w < 1 || region.h < 1 || budget == 0 {
        return Ok(Vec::new());
    }
    let fitting: Vec<Item> = items
        .iter()
        .filter(|it| {
            (it.w <= region.w && it.h <= region.h)
                || (rotations && it.h <= region.w && it.w <= region.h)
        })
        .copied()
        .collect();
    if fitting.is_empty() {
        return Ok(Vec::new());
    }
    let any_small = |w: i64, h: i64| fitting.iter().any(|it| is_small(it.w, it.h, w, h, eps));
    let mut kinds = vec![Horizontal, Vertical];
    if any_small(region.w, region.h) {
        kinds.push(Area);
    }
    let mut out: Vec<Vec<Container>> = Vec::new();
    for &k in &kinds {
        out.push(vec![Container::at(k, region)]);
    }
    let singles = out.len();

    let (widths, heights) = cut_sizes(&fitting, rotations, cfg.size_k);
    let two_kinds = [Horizontal, Vertical];
    for s in spread(&widths, region.w) {
        let (a, b) = (
            Rect::new(region.x, region.y, s, region.h),
            Rect::new(region.x + s, region.y, region.w - s, region.h),
        );
        for ka in two_kinds {
            for kb in two_kinds {
                out.push(vec![Container::at(ka, a), Container::at(kb, b)]);
            }
        }
    }
    for s in spread(&heights, region.h) {
        let (a, b) = (
            Rect::new(region.x, region.y, region.w, s),
            Rect::new(region.x, region.y + s, region.w, region.h - s),
        );
        for ka in two_kinds {
            for kb in two_kinds {
                out.push(vec![Container::at(ka, a), Container::at(kb, b)]);
            }
        }
    }

    let side_set = |f: fn(&Item) -> i64, g: fn(&Item) -> i64, cap: i64| -> Vec<i64> {
        let mut v: BTreeSet<i64> = fitting.iter().map(f).filter(|&s| s <= cap).collect();
        if rotations {
            v.extend(fitting.iter().map(g).filter(|&s| s <= cap));
        }
        let v: Vec<i64> = v.into_iter().rev().collect();
        thin_out(&v, SHELF_HEIGHTS)
    };
    let shelf_h = side_set(|i| i.h, |i| i.w, region.h);
    for seq in nonincreasing_sums(&shelf_h, cfg.max_containers, region.h) {
        let mut cs = Vec::new();
        let mut y = region.y;
        for h in seq {
            cs.push(Container::new(Vertical, region.x, y, region.w, h));
            y += h;
        }
        if y < region.top() {
            cs.push(Container::new(
                Horizontal,
                region.x,
                y,
                region.w,
                region.top() - y,
            ));
        }
        out.push(cs);
    }
    let col_w = side_set(|i| i.w, |i| i.h, region.w);
    for seq in nonincreasing_sums(&col_w, cfg.max_containers, region.w) {
        let mut cs = Vec::new();
        let mut x = region.x;
        for w in seq {
            cs.push(Container::new(Horizontal, x, region.y, w, region.h));
            x += w;
        }
        if x < region.right() {
            cs.push(Container::new(
                Vertical,
                x,
                region.y,
                region.right() - x,
                region.h,
            ));
        }
        out.push(cs);
    }

    let mut seen = BTreeSet::new();
    let mut unique: Vec<Vec<Container>> = Vec::new();
    for cs in out {
        if seen.insert(cs.clone()) {
            unique.push(cs);
        }
    }
    if unique.len() > budget {
        let mut rest: Vec<usize> = (singles.min(budget)..unique.len()).collect();
        let salt = (region.x as u64) << 48
            ^ (region.y as u64) << 32
            ^ (region.w as u64) << 16
            ^ region.h as u64;
        rest.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed ^ salt));
        let mut keep: Vec<usize> = (0..singles.min(budget))
            .chain(rest.into_iter().take(budget.saturating_sub(singles)))
            .collect();
        keep.sort_unstable();
        unique = keep.into_iter().map(|k| unique[k].clone()).collect();
    }
    unique
        .into_iter()
        .map(|cs| ContainerLayout::new(region, cs))
        .collect()
}

/// Candidate container widths and heights; falls back to plain sides when
/// the size sets get too large.
fn cut_sizes(items: &[Item], rotations: bool, k: usize) -> (Vec<i64>, Vec<i64>) {
    for kk in (1..=k).rev() {
        if let Ok(s) = candidate_sizes_with(items, kk, rotations, SIZE_CAP) {
            return (s.widths, s.heights);
        }
    }
    let mut w: Vec<i64> = items.iter().map(|i| i.w).collect();
    let mut h: Vec<i64> = items.iter().map(|i| i.h).collect();
    if rotations {
        w.extend(items.iter().map(|i| i.h));
        h.extend(items.iter().map(|i| i.w));
    }
    w.sort_unstable();
    w.dedup();
    h.sort_unstable();
    h.dedup();
    (w, h)
}

/// At most `CUTS_PER_AXIS` cut positions strictly inside `(0, side)`.
fn spread(sizes: &[i64], side: i64) -> Vec<i64> {
    let inner: Vec<i64> = sizes
        .iter()
        .copied()
        .filter(|&s| s > 0 && s < side)
        .collect();
    thin_out(&inner, CUTS_PER_AXIS)
}

/// Evenly spaced subsequence of at most `k` elements.
fn thin_out(v: &[i64], k: usize) -> Vec<i64> {
    if v.len() <= k {
        return v.to_vec();
    }
    (0..k)
        .map(|i| v[i * (v.len() - 1) / (k - 1).max(1)])
        .collect()
}

/// Non-increasing sequences over `values` (given in decreasing order) of
/// length 1 to `max_len` with sum at most `cap`.
fn nonincreasing_sums(values: &[i64], max_len: usize, cap: i64) -> Vec<Vec<i64>> {
    fn rec(
        values: &[i64],
        from: usize,
        left: usize,
        cap: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for k in from..values.len() {
            if values[k] <= cap {
                cur.push(values[k]);
                rec(values, k, left - 1, cap - values[k], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(values, 0, max_len, cap, &mut Vec::new(), &mut out);
    out
}

/// Fills every layout and returns the `keep` best fills, best first.
pub(crate) fn best_fills(
    items: &[Item],
    rotations: bool,
    layouts: &[ContainerLayout],
    eps: Rat,
    cfg: &SolveConfig,
    keep: usize,
) -> Result<Vec<(i64, Vec<Placed>)>> {
    let fills: Vec<Result<(i64, Vec<Placed>)>> = layouts
        .par_iter()
        .map(|l| {
            fill_containers(items, rotations, l, eps, &cfg.containers).map(|f| (f.profit, f.placed))
        })
        .collect();
    let mut fills: Vec<(usize, (i64, Vec<Placed>))> = fills
        .into_iter()
        .enumerate()
        .map(|(k, r)| r.map(|f| (k, f)))
        .collect::<Result<_>>()?;
    fills.sort_by_key(|(k, (p, _))| (std::cmp::Reverse(*p), *k));
    Ok(fills.into_iter().take(keep).map(|(_, f)| f).collect())
}
