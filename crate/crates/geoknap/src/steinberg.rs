//! Steinberg-type packer for item sets satisfying the area condition
//! `2 a(I) <= w h - (2 w_max - w)_+ (2 h_max - h)_+`.
//!
//! The packer recursively applies stacking, splitting and corner moves,
//! each time only descending into sub-boxes where the condition holds
//! again. Every branch is checked; a MaxRects pass is used when no move
//! applies to a sub-box.

use crate::core::{fit_in_box, placed_is_valid, FitOutcome, Item, Packing, Placed, Rect};
use crate::error::{Error, Result};
use crate::Rat;

/// Right-hand side minus left-hand side of the area condition for a box.
pub fn condition_slack(items: &[Item], box_w: i64, box_h: i64) -> i128 {
    let (u, v) = (box_w as i128, box_h as i128);
    let a = items.iter().map(|i| i.w).max().unwrap_or(0) as i128;
    let b = items.iter().map(|i| i.h).max().unwrap_or(0) as i128;
    let s: i128 = items.iter().map(|i| i.area() as i128).sum();
    u * v - (2 * a - u).max(0) * (2 * b - v).max(0) - 2 * s
}

/// Whether the items satisfy the size bounds and the area condition for the box.
pub fn condition_holds(items: &[Item], box_w: i64, box_h: i64) -> bool {
    items.iter().all(|i| i.w <= box_w && i.h <= box_h) && condition_slack(items, box_w, box_h) >= 0
}

/// Greedy prefix in non-decreasing area order whose total area stays within `budget`.
pub fn area_prefix_select(items: &[Item], budget: i64) -> Vec<Item> {
    let mut order = items.to_vec();
    order.sort_by_key(|i| (i.area(), i.id));
    let mut used = 0i64;
    let mut out = Vec::new();
    for it in order {
        if used + it.area() > budget {
            break;
        }
        used += it.area();
        out.push(it);
    }
    out
}

/// Packs all items into a `box_w x box_h` box anchored at the origin.
pub fn steinberg_pack(items: &[Item], box_w: i64, box_h: i64) -> Result<Packing> {
    if let Some(it) = items.iter().find(|i| i.w > box_w || i.h > box_h) {
        return Err(Error::Input(format!(
            "item {} does not fit the {box_w}x{box_h} box",
            it.id
        )));
    }
    let slack = condition_slack(items, box_w, box_h);
    if slack < 0 {
        return Err(Error::Condition { slack });
    }
    let placed = steinberg_place(items, Rect::new(0, 0, box_w, box_h))?;
    Ok(Packing::unrotated(Rect::new(0, 0, box_w, box_h), &placed))
}

/// Footprints for all items inside `region`; fails only if the search finds nothing.
pub fn steinberg_place(items: &[Item], region: Rect) -> Result<Vec<Placed>> {
    let mut search = Search { budget: 20_000 };
    let local = search
        .solve(region.w, region.h, items)
        .or_else(|| maxrects_all(region.w, region.h, items))
        .ok_or_else(|| Error::Internal(format!("no packing found for {} items", items.len())))?;
    let placed: Vec<Placed> = local
        .iter()
        .map(|p| p.translated(region.x, region.y))
        .collect();
    if placed.len() != items.len() || !placed_is_valid(&region, &placed) {
        return Err(Error::Internal(
            "steinberg search produced an invalid packing".into(),
        ));
    }
    Ok(placed)
}

/// Packs items into `(1-alpha)N x (1-beta)N` when the item sizes and total
/// area respect the bounds derived from the area condition.
pub fn small_stein_pack(
    items: &[Item],
    alpha: Rat,
    beta: Rat,
    eps_large: Rat,
    n: i64,
) -> Result<Packing> {
    let half = Rat::new(1, 2);
    let nn = Rat::from_integer(n);
    let side_cap = (half + eps_large * 2) * nn;
    if items
        .iter()
        .any(|i| Rat::from_integer(i.w.max(i.h)) > side_cap)
    {
        return Err(Error::Input(
            "an item side exceeds (1/2 + 2 eps_large) N".into(),
        ));
    }
    let frac_cap = half - eps_large * 2;
    if alpha < Rat::from_integer(0)
        || beta < Rat::from_integer(0)
        || alpha > frac_cap
        || beta > frac_cap
    {
        return Err(Error::Parameter(
            "alpha and beta must lie in [0, 1/2 - 2 eps_large]".into(),
        ));
    }
    let budget =
        (half - (alpha + beta) * (half + eps_large * 2) - eps_large * eps_large * 8) * nn * nn;
    let area: i64 = items.iter().map(|i| i.area()).sum();
    if Rat::from_integer(area) > budget {
        let slack = (budget - Rat::from_integer(area)).floor().to_integer() as i128;
        return Err(Error::Condition { slack });
    }
    let bw = ((Rat::from_integer(1) - alpha) * nn).floor().to_integer();
    let bh = ((Rat::from_integer(1) - beta) * nn).floor().to_integer();
    let region = Rect::new(0, 0, bw, bh);
    let placed = steinberg_place(items, region)?;
    Ok(Packing::unrotated(region, &placed))
}

struct Search {
    budget: u32,
}

fn fits_all(items: &[Item], u: i64, v: i64) -> bool {
    items.iter().all(|i| i.w <= u && i.h <= v)
}

fn transpose_items(items: &[Item]) -> Vec<Item> {
    items.iter().map(|i| i.rotated()).collect()
}

impl Search {
    fn solve(&mut self, u: i64, v: i64, items: &[Item]) -> Option<Vec<Placed>> {
        if items.is_empty() {
            return Some(Vec::new());
        }
        if !fits_all(items, u, v) {
            return None;
        }
        if items.len() == 1 {
            return Some(vec![Placed::at(&items[0], 0, 0)]);
        }
        if self.budget == 0 {
            return maxrects_all(u, v, items).or_else(|| exact_small(u, v, items));
        }
        self.budget -= 1;
        if let Some(p) = self.stack_then_rest(u, v, items) {
            return Some(p);
        }
        if let Some(p) = self.transposed(u, v, items, |s, u, v, it| s.stack_then_rest(u, v, it)) {
            return Some(p);
        }
        if let Some(p) = self.split(u, v, items) {
            return Some(p);
        }
        if let Some(p) = self.transposed(u, v, items, |s, u, v, it| s.split(u, v, it)) {
            return Some(p);
        }
        if let Some(p) = self.corner(u, v, items) {
            return Some(p);
        }
        maxrects_all(u, v, items).or_else(|| exact_small(u, v, items))
    }

    /// Runs a move on the transposed box and maps the answer back.
    fn transposed(
        &mut self,
        u: i64,
        v: i64,
        items: &[Item],
        mv: impl Fn(&mut Search, i64, i64, &[Item]) -> Option<Vec<Placed>>,
    ) -> Option<Vec<Placed>> {
        let t = transpose_items(items);
        mv(self, v, u, &t).map(|ps| ps.iter().map(|p| p.transposed()).collect())
    }

    /// Stacks every item at least half as wide as the box, widest first, at
    /// the bottom; the rest goes above or to the right of the stack.
    fn stack_then_rest(&mut self, u: i64, v: i64, items: &[Item]) -> Option<Vec<Placed>> {
        let mut wide: Vec<Item> = items.iter().filter(|i| 2 * i.w >= u).copied().collect();
        if wide.is_empty() {
            return None;
        }
        wide.sort_by(|a, b| b.w.cmp(&a.w).then(a.id.cmp(&b.id)));
        let stack_h: i64 = wide.iter().map(|i| i.h).sum();
        if stack_h > v {
            return None;
        }
        let rest: Vec<Item> = items.iter().filter(|i| 2 * i.w < u).copied().collect();
        let mut out = Vec::with_capacity(items.len());
        let mut y = 0;
        for it in &wide {
            out.push(Placed::at(it, 0, y));
            y += it.h;
        }
        if rest.is_empty() {
            return Some(out);
        }
        let top_h = v - stack_h;
        if condition_holds(&rest, u, top_h) {
            if let Some(ps) = self.solve(u, top_h, &rest) {
                out.extend(ps.iter().map(|p| p.translated(0, stack_h)));
                return Some(out);
            }
        }
        // Staircase: for a level of the stack, the box right of that level
        // reaching the top, plus the band above the stack left of it.
        let mut by_h = rest.clone();
        by_h.sort_by(|a, b| b.h.cmp(&a.h).then(b.w.cmp(&a.w)).then(a.id.cmp(&b.id)));
        let mut level_y = 0;
        for lvl in &wide {
            let (sx, sy) = (lvl.w, level_y);
            level_y += lvl.h;
            let (rw, rh) = (u - sx, v - sy);
            if rw <= 0 {
                continue;
            }
            for k in 1..=by_h.len() {
                let (right, top) = by_h.split_at(k);
                if !condition_holds(right, rw, rh)
                    || !(top.is_empty() || condition_holds(top, sx, top_h))
                {
                    continue;
                }
                let r = self.solve(rw, rh, right);
                let t = r.as_ref().and_then(|_| self.solve(sx, top_h, top));
                if let (Some(r), Some(t)) = (r, t) {
                    out.extend(r.iter().map(|p| p.translated(sx, sy)));
                    out.extend(t.iter().map(|p| p.translated(0, stack_h)));
                    return Some(out);
                }
            }
        }
        None
    }

    /// Cuts the box vertically and sends a width-ordered prefix to the left part.
    fn split(&mut self, u: i64, v: i64, items: &[Item]) -> Option<Vec<Placed>> {
        let mut order = items.to_vec();
        order.sort_by(|a, b| b.w.cmp(&a.w).then(b.h.cmp(&a.h)).then(a.id.cmp(&b.id)));
        let n = order.len();
        let total: i128 = order.iter().map(|i| i.area() as i128).sum();
        let mut prefix: i128 = 0;
        let vv = v as i128;
        for k in 1..n {
            prefix += order[k - 1].area() as i128;
            let (left, right) = order.split_at(k);
            let a1 = left[0].w as i128;
            let a_next = right[0].w as i128;
            let lo = (2 * prefix + vv - 1) / vv;
            let hi = (u as i128) - (2 * (total - prefix) + vv - 1) / vv;
            let mut cands = vec![
                a1.max(lo),
                lo,
                a1,
                (u as i128) - a_next,
                hi,
                (a1.max(lo) + hi) / 2,
            ];
            cands.sort();
            cands.dedup();
            for c in cands {
                if c < 1 || c >= u as i128 {
                    continue;
                }
                let u1 = c as i64;
                if condition_holds(left, u1, v) && condition_holds(right, u - u1, v) {
                    let l = self.solve(u1, v, left);
                    let r = l.as_ref().and_then(|_| self.solve(u - u1, v, right));
                    if let (Some(l), Some(r)) = (l, r) {
                        let mut out = l;
                        out.extend(r.iter().map(|p| p.translated(u1, 0)));
                        return Some(out);
                    }
                }
            }
        }
        None
    }

    /// Largest item in the lower-left corner; the rest is shared between the
    /// column to its right and the box above it.
    fn corner(&mut self, u: i64, v: i64, items: &[Item]) -> Option<Vec<Placed>> {
        let mut order = items.to_vec();
        order.sort_by(|a, b| b.area().cmp(&a.area()).then(a.id.cmp(&b.id)));
        let big = order[0];
        let rest = &order[1..];
        let (rw, th) = (u - big.w, v - big.h);
        let mut right = Vec::new();
        let mut top = Vec::new();
        for it in rest {
            let into_right = it.w <= rw && it.h <= v && {
                let mut t = right.clone();
                t.push(*it);
                condition_holds(&t, rw, v)
            };
            if into_right {
                right.push(*it);
                continue;
            }
            let mut t = top.clone();
            t.push(*it);
            if it.w <= big.w && it.h <= th && condition_holds(&t, big.w, th) {
                top.push(*it);
            } else {
                return None;
            }
        }
        let r = self.solve(rw, v, &right)?;
        let t = self.solve(big.w, th, &top)?;
        let mut out = vec![Placed::at(&big, 0, 0)];
        out.extend(r.iter().map(|p| p.translated(big.w, 0)));
        out.extend(t.iter().map(|p| p.translated(0, big.h)));
        Some(out)
    }
}

fn exact_small(u: i64, v: i64, items: &[Item]) -> Option<Vec<Placed>> {
    if items.len() > 10 {
        return None;
    }
    match fit_in_box(u, v, items, false, 200_000) {
        FitOutcome::Packed(p) => Some(p),
        _ => None,
    }
}

type ItemOrder = fn(&Item) -> (i64, i64);

/// MaxRects with best-short-side-fit under several item orders; all items or nothing.
pub(crate) fn maxrects_all(u: i64, v: i64, items: &[Item]) -> Option<Vec<Placed>> {
    let orders: [ItemOrder; 4] = [
        |i| (-i.area(), -i.long_side()),
        |i| (-i.long_side(), -i.short_side()),
        |i| (-i.h, -i.w),
        |i| (-i.w, -i.h),
    ];
    for key in orders {
        let mut order = items.to_vec();
        order.sort_by_key(|i| (key(i), i.id));
        let (placed, rest) = maxrects(u, v, &order);
        if rest.is_empty() {
            return Some(placed);
        }
    }
    None
}

/// Places items in the given order into free maximal rectangles.
pub(crate) fn maxrects(u: i64, v: i64, order: &[Item]) -> (Vec<Placed>, Vec<Item>) {
    let mut free = vec![Rect::new(0, 0, u, v)];
    let mut placed = Vec::new();
    let mut rest = Vec::new();
    for it in order {
        let mut best: Option<(i64, i64, Rect)> = None;
        for f in &free {
            if it.w <= f.w && it.h <= f.h {
                let short = (f.w - it.w).min(f.h - it.h);
                let long = (f.w - it.w).max(f.h - it.h);
                if best.is_none_or(|(s, l, _)| (short, long) < (s, l)) {
                    best = Some((short, long, *f));
                }
            }
        }
        let Some((_, _, f)) = best else {
            rest.push(*it);
            continue;
        };
        let r = Rect::new(f.x, f.y, it.w, it.h);
        placed.push(Placed::at(it, r.x, r.y));
        let mut next = Vec::with_capacity(free.len() + 4);
        for g in free.drain(..) {
            if !g.overlaps(&r) {
                next.push(g);
                continue;
            }
            if r.x > g.x {
                next.push(Rect::new(g.x, g.y, r.x - g.x, g.h));
            }
            if r.right() < g.right() {
                next.push(Rect::new(r.right(), g.y, g.right() - r.right(), g.h));
            }
            if r.y > g.y {
                next.push(Rect::new(g.x, g.y, g.w, r.y - g.y));
            }
            if r.top() < g.top() {
                next.push(Rect::new(g.x, r.top(), g.w, g.top() - r.top()));
            }
        }
        let mut pruned: Vec<Rect> = Vec::with_capacity(next.len());
        for (k, g) in next.iter().enumerate() {
            let dominated = next
                .iter()
                .enumerate()
                .any(|(j, h)| j != k && h.contains(g) && (h != g || j < k));
            if !dominated {
                pruned.push(*g);
            }
        }
        free = pruned;
    }
    (placed, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn items(v: &[(i64, i64)]) -> Vec<Item> {
        v.iter()
            .enumerate()
            .map(|(k, &(w, h))| Item::new(k as u64, w, h, 1))
            .collect()
    }

    #[test]
    fn empty_set_packs_trivially() {
        assert!(steinberg_pack(&[], 10, 10).unwrap().is_empty());
    }

    #[test]
    fn three_quarter_boxes() {
        let it = items(&[(4, 4), (4, 4), (4, 4)]);
        assert_eq!(condition_slack(&it, 10, 10), 4);
        let p = steinberg_pack(&it, 10, 10).unwrap();
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn half_size_items_at_half_area() {
        let it = items(&[(5, 5), (5, 2), (2, 5), (2, 2)]);
        assert!(condition_holds(&it, 10, 10));
        assert_eq!(steinberg_pack(&it, 10, 10).unwrap().len(), 4);
    }

    #[test]
    fn violated_condition_reports_slack() {
        let it = items(&[(6, 6), (6, 6)]);
        assert_eq!(
            steinberg_pack(&it, 10, 10),
            Err(Error::Condition {
                slack: 100 - 4 - 144
            })
        );
    }

    #[test]
    fn prefix_by_area() {
        let it = items(&[(2, 2), (1, 1), (1, 3), (1, 2)]);
        let ids: Vec<_> = area_prefix_select(&it, 6).iter().map(|i| i.id).collect();
        assert_eq!(ids, vec![1, 3, 2]);
        assert!(area_prefix_select(&it, 0).is_empty());
        assert_eq!(area_prefix_select(&it, 100).len(), 4);
    }

    #[test]
    fn corollary_budget_example() {
        // (1/2 - 0.2 * 0.6 - 0.02) * 100^2 = 3600 into 90 x 90.
        let it: Vec<Item> = (0..36).map(|k| Item::new(k, 10, 10, 1)).collect();
        let p = small_stein_pack(&it, rat(1, 10), rat(1, 10), rat(1, 20), 100).unwrap();
        assert_eq!(p.region, Rect::new(0, 0, 90, 90));
        assert_eq!(p.len(), 36);
        let more: Vec<Item> = (0..37).map(|k| Item::new(k, 10, 10, 1)).collect();
        assert!(matches!(
            small_stein_pack(&more, rat(1, 10), rat(1, 10), rat(1, 20), 100),
            Err(Error::Condition { .. })
        ));
    }

    #[test]
    fn corollary_without_margins_is_half_area() {
        let it = items(&[(5, 5), (5, 5)]);
        let p = small_stein_pack(&it, rat(0, 1), rat(0, 1), rat(0, 1), 10).unwrap();
        assert_eq!(p.region, Rect::new(0, 0, 10, 10));
        assert!(small_stein_pack(&[], rat(0, 1), rat(0, 1), rat(0, 1), 10)
            .unwrap()
            .is_empty());
    }
}
