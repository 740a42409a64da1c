//! Resource contraction: repacking a large part of a packing into a knapsack
//! that is narrower by a small fraction, and the random strip deletion used
//! for the reduced knapsacks.
//!
//! Strip thresholds are rational; with integer coordinates every test
//! `v < t` becomes `v < ceil(t)` and `v > t` becomes `v > floor(t)`.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::core::{
    placed_is_valid, validate_packing, Instance, Item, ItemId, Packing, Placed, Rect,
};
use crate::error::{Error, Result};
use crate::shelf::nfdh_place;
use crate::steinberg::{area_prefix_select, steinberg_place};
use crate::Rat;

use super::{region_of, transpose_all};

fn floor_rat(t: Rat) -> i64 {
    t.floor().to_integer()
}

fn ceil_rat(t: Rat) -> i64 {
    t.ceil().to_integer()
}

fn valid_input(inst: &Instance, packing: &Packing) -> Result<Vec<Placed>> {
    let report = validate_packing(inst, packing)?;
    if !report.is_ok() {
        return Err(Error::Input(format!("packing is invalid: {report}")));
    }
    if packing.region != inst.knapsack() {
        return Err(Error::Input("packing region is not the knapsack".into()));
    }
    packing.placed(inst)
}

fn finish(inst: &Instance, region: Rect, placed: &[Placed], what: &str) -> Result<Packing> {
    if !placed_is_valid(&region, placed) {
        return Err(Error::Internal(format!(
            "{what} produced an invalid packing"
        )));
    }
    Packing::from_placed(region, placed, inst)
}

/// Which construction of the weighted contraction applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WeightedCase {
    /// The packing already fits the narrow knapsack, possibly turned.
    AlreadyNarrow,
    /// No item meets both the bottom strip and the thick top strip.
    NoCrossing,
    /// A crossing item avoids both side strips.
    CrossingInterior,
    /// A crossing item meets both side strips.
    CrossingWide,
    /// A crossing item meets exactly one side strip without lying in it.
    CrossingSide,
    /// All crossing items lie inside a side strip.
    CrossingContained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedContraction {
    /// Packing in the `floor((1 - eps/2) N) x N` region.
    pub packing: Packing,
    pub profit: i64,
    pub case: WeightedCase,
    /// The two halves of the partition.
    pub halves: [Vec<ItemId>; 2],
    /// Index of the half that was kept.
    pub kept: usize,
}

/// Strip predicates of the weighted construction, `d = eps N / 2`.
struct Strips {
    n: i64,
    d: Rat,
}

impl Strips {
    fn meets_bottom(&self, p: &Placed) -> bool {
        p.y < ceil_rat(self.d)
    }
    fn meets_top3(&self, p: &Placed) -> bool {
        p.top() > floor_rat(Rat::from_integer(self.n) - self.d * 3)
    }
    fn in_top3(&self, p: &Placed) -> bool {
        p.y >= ceil_rat(Rat::from_integer(self.n) - self.d * 3)
    }
    fn in_bottom(&self, p: &Placed) -> bool {
        p.top() <= floor_rat(self.d)
    }
    fn meets_left(&self, p: &Placed) -> bool {
        p.x < ceil_rat(self.d)
    }
    fn meets_right(&self, p: &Placed) -> bool {
        p.right() > floor_rat(Rat::from_integer(self.n) - self.d)
    }
    fn in_left(&self, p: &Placed) -> bool {
        p.right() <= floor_rat(self.d)
    }
    fn in_right(&self, p: &Placed) -> bool {
        p.x >= ceil_rat(Rat::from_integer(self.n) - self.d)
    }
    fn crosses(&self, p: &Placed) -> bool {
        self.meets_bottom(p) && self.meets_top3(p)
    }
    fn a(&self) -> i64 {
        floor_rat(self.d * 3)
    }
    fn b(&self) -> i64 {
        floor_rat(self.d)
    }
}

fn is_massive_footprint(p: &Placed, n: i64, eps: Rat) -> bool {
    let t = (Rat::one() - eps) * n;
    Rat::from_integer(p.w) >= t && Rat::from_integer(p.h) >= t
}

/// Splits a packing without massive items into two parts that each fit a
/// knapsack narrower by `eps/2` (after turning one of them if needed) and
/// keeps the more profitable part.
pub fn resource_contraction_weighted(
    inst: &Instance,
    packing: &Packing,
    eps: Rat,
) -> Result<WeightedContraction> {
    if eps <= Rat::zero() || eps > Rat::new(1, 5) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1/5], got {eps}"
        )));
    }
    if !inst.rotations {
        return Err(Error::Input(
            "the contraction turns items and needs rotations".into(),
        ));
    }
    let placed = valid_input(inst, packing)?;
    let n = inst.n;
    if let Some(m) = placed.iter().find(|p| is_massive_footprint(p, n, eps)) {
        return Err(Error::Input(format!("item {} is massive", m.id)));
    }
    let s = Strips { n, d: eps * n / 2 };
    let out_w = floor_rat(Rat::from_integer(n) - s.d);
    let (case, h1, h2) = if placed.iter().all(|p| p.right() <= out_w) {
        (WeightedCase::AlreadyNarrow, placed.clone(), Vec::new())
    } else if placed.iter().all(|p| p.top() <= out_w) {
        (
            WeightedCase::AlreadyNarrow,
            transpose_all(&placed),
            Vec::new(),
        )
    } else {
        weighted_halves(&s, &placed)
    };
    let by = inst.by_id();
    let profit = |h: &[Placed]| h.iter().map(|p| by[&p.id].p).sum::<i64>();
    let (p1, p2) = (profit(&h1), profit(&h2));
    let kept = usize::from(p2 > p1);
    let region = region_of(out_w, n);
    let ids = |h: &[Placed]| {
        let mut v: Vec<ItemId> = h.iter().map(|p| p.id).collect();
        v.sort_unstable();
        v
    };
    let halves = [ids(&h1), ids(&h2)];
    // Both halves are checked so that a broken construction cannot hide.
    let pk1 = finish(inst, region, &h1, "weighted contraction")?;
    let pk2 = finish(inst, region, &h2, "weighted contraction")?;
    let packing = if kept == 0 { pk1 } else { pk2 };
    Ok(WeightedContraction {
        packing,
        profit: p1.max(p2),
        case,
        halves,
        kept,
    })
}

/// Both halves as footprints inside `floor(N - d) x N`.
fn weighted_halves(s: &Strips, placed: &[Placed]) -> (WeightedCase, Vec<Placed>, Vec<Placed>) {
    let n = s.n;
    let crossing: Vec<&Placed> = {
        let mut c: Vec<&Placed> = placed.iter().filter(|p| s.crosses(p)).collect();
        c.sort_by_key(|p| p.id);
        c
    };
    if crossing.is_empty() {
        let m1: Vec<Placed> = placed.iter().filter(|p| s.meets_top3(p)).copied().collect();
        let (a, b) = top_band_halves(s, placed, &m1);
        return (WeightedCase::NoCrossing, a, b);
    }
    if let Some(i) = crossing
        .iter()
        .find(|p| !s.meets_left(p) && !s.meets_right(p))
    {
        let (a, b) = split_at_interior(s, placed, **i);
        return (WeightedCase::CrossingInterior, a, b);
    }
    if let Some(i) = crossing
        .iter()
        .find(|p| s.meets_left(p) && s.meets_right(p))
    {
        let i = **i;
        let side = |p: &Placed| s.in_left(p) || s.in_right(p);
        let above = |p: &Placed| p.y >= i.top();
        let half2: Vec<Placed> = placed
            .iter()
            .filter(|p| side(p) || above(p))
            .copied()
            .collect();
        let half1: Vec<Placed> = placed
            .iter()
            .filter(|p| !side(p) && !above(p))
            .copied()
            .collect();
        // Top(i) moves down to the floor; the side strips lie on top, turned.
        let mut out2: Vec<Placed> = half2
            .iter()
            .filter(|p| !side(p))
            .map(|p| p.translated(0, -i.top()))
            .collect();
        let base = n - i.top();
        out2.extend(turned_side_strips(s, &half2, base));
        return (
            WeightedCase::CrossingWide,
            transpose_all(&half1),
            transpose_all(&out2),
        );
    }
    if let Some(i) = crossing.iter().find(|p| !s.in_left(p) && !s.in_right(p)) {
        let i = **i;
        // i meets exactly one side strip; mirror so that it is the left one.
        let mirrored = s.meets_right(&i);
        let work: Vec<Placed> = if mirrored {
            placed.iter().map(|p| p.flipped_x(n)).collect()
        } else {
            placed.to_vec()
        };
        let i = if mirrored { i.flipped_x(n) } else { i };
        let (a, b) = split_at_side(s, &work, i);
        return (WeightedCase::CrossingSide, a, b);
    }
    let side = |p: &Placed| s.in_left(p) || s.in_right(p);
    let m1: Vec<Placed> = placed
        .iter()
        .filter(|p| s.meets_top3(p) && !side(p))
        .copied()
        .collect();
    let (a, b) = top_band_halves(s, placed, &m1);
    (WeightedCase::CrossingContained, a, b)
}

/// `m1` avoids the bottom strip and moves down; the rest stays, with the
/// side strip items turned into two bands above it.
fn top_band_halves(s: &Strips, placed: &[Placed], m1: &[Placed]) -> (Vec<Placed>, Vec<Placed>) {
    let in_m1: BTreeSet<ItemId> = m1.iter().map(|p| p.id).collect();
    let shift = ceil_rat(s.d);
    let half1: Vec<Placed> = m1.iter().map(|p| p.translated(0, -shift)).collect();
    let rest: Vec<Placed> = placed
        .iter()
        .filter(|p| !in_m1.contains(&p.id))
        .copied()
        .collect();
    let side = |p: &Placed| s.in_left(p) || s.in_right(p);
    let mut half2: Vec<Placed> = rest.iter().filter(|p| !side(p)).copied().collect();
    half2.extend(turned_side_strips(
        s,
        &rest,
        floor_rat(Rat::from_integer(s.n) - s.d * 3),
    ));
    (transpose_all(&half1), transpose_all(&half2))
}

/// Items of the left and right strips among `items`, turned into two
/// horizontal bands starting at height `base`.
fn turned_side_strips(s: &Strips, items: &[Placed], base: i64) -> Vec<Placed> {
    let right0 = ceil_rat(Rat::from_integer(s.n) - s.d);
    let mut out = Vec::new();
    for p in items {
        if s.in_left(p) {
            out.push(Placed::new(p.id, p.y, base + p.x, p.h, p.w));
        } else if s.in_right(p) {
            out.push(Placed::new(
                p.id,
                p.y,
                base + s.b() + p.x - right0,
                p.h,
                p.w,
            ));
        }
    }
    out
}

/// Items of the thick top and the bottom strip among `items`, turned into
/// two vertical bands starting at `x0`.
fn turned_top_bottom(s: &Strips, items: &[Placed], x0: i64) -> Vec<Placed> {
    let top0 = ceil_rat(Rat::from_integer(s.n) - s.d * 3);
    let mut out = Vec::new();
    for p in items {
        if s.in_top3(p) {
            out.push(Placed::new(p.id, x0 + p.y - top0, p.x, p.h, p.w));
        } else if s.in_bottom(p) {
            out.push(Placed::new(p.id, x0 + s.a() + p.y, p.x, p.h, p.w));
        }
    }
    out
}

/// A crossing item away from both side strips separates left and right.
fn split_at_interior(s: &Strips, placed: &[Placed], i: Placed) -> (Vec<Placed>, Vec<Placed>) {
    let n = s.n;
    let mirrored = 2 * i.x > n;
    let work: Vec<Placed> = if mirrored {
        placed.iter().map(|p| p.flipped_x(n)).collect()
    } else {
        placed.to_vec()
    };
    let i = if mirrored { i.flipped_x(n) } else { i };
    let right = |p: &Placed| p.id == i.id || p.x >= i.right();
    let shift = ceil_rat(s.d);
    let half2: Vec<Placed> = work
        .iter()
        .filter(|p| right(p))
        .map(|p| p.translated(-shift, 0))
        .collect();
    let rest: Vec<Placed> = work.iter().filter(|p| !right(p)).copied().collect();
    let strip = |p: &Placed| s.in_top3(p) || s.in_bottom(p);
    let mut half1: Vec<Placed> = rest.iter().filter(|p| !strip(p)).copied().collect();
    half1.extend(turned_top_bottom(s, &rest, i.x));
    (half1, half2)
}

/// A crossing item that meets the left strip without lying in it.
fn split_at_side(s: &Strips, work: &[Placed], i: Placed) -> (Vec<Placed>, Vec<Placed>) {
    let n = s.n;
    let strip = |p: &Placed| s.in_top3(p) || s.in_bottom(p);
    if 2 * i.right() <= n {
        let right = |p: &Placed| p.x >= i.right();
        let shift = ceil_rat(s.d);
        let half1: Vec<Placed> = work
            .iter()
            .filter(|p| right(p))
            .map(|p| p.translated(-shift, 0))
            .collect();
        let rest: Vec<Placed> = work.iter().filter(|p| !right(p)).copied().collect();
        let mut half2: Vec<Placed> = rest.iter().filter(|p| !strip(p)).copied().collect();
        half2.extend(turned_top_bottom(s, &rest, i.right()));
        (half1, half2)
    } else {
        let left = |p: &Placed| p.id == i.id || p.right() <= i.x;
        let half1: Vec<Placed> = work.iter().filter(|p| left(p)).copied().collect();
        let rest: Vec<Placed> = work.iter().filter(|p| !left(p)).copied().collect();
        let dx = s.a() + s.b() - i.right();
        let mut half2: Vec<Placed> = rest
            .iter()
            .filter(|p| !strip(p))
            .map(|p| p.translated(dx, 0))
            .collect();
        half2.extend(turned_top_bottom(s, &rest, 0));
        (half1, half2)
    }
}

/// Which construction of the cardinality contraction produced the output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CardinalityCase {
    /// Wide enough crossing columns: close their gaps and refill on the right.
    ColumnsMoved,
    /// Drop the top strip items and lay the crossing items on top.
    TopDropped,
    /// Repack the strip items by Steinberg into the narrow knapsack.
    SteinbergRepack,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CardinalityContraction {
    /// Packing in the `floor(N - eps * eps_s * N) x N` region.
    pub packing: Packing,
    /// Band index `i`; `eps_s = eps^i`.
    pub band: u32,
    pub eps_s: f64,
    /// Items large in both dimensions.
    pub dropped_large: Vec<ItemId>,
    /// Items of the removed height band.
    pub dropped_band: Vec<ItemId>,
    pub m2: usize,
    pub m3: usize,
    /// Whether the construction ran on the transposed packing.
    pub transposed: bool,
    /// Whether the strip area bound held in the chosen frame.
    pub area_condition: bool,
    pub case: CardinalityCase,
    /// Item counts of the three sets `X`, `Y`, `Z`.
    pub xyz: [usize; 3],
}

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn big_of(r: Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn big_floor(t: &BigRational) -> i64 {
    t.floor()
        .to_integer()
        .to_i64()
        .expect("threshold inside the knapsack")
}

fn big_ceil(t: &BigRational) -> i64 {
    t.ceil()
        .to_integer()
        .to_i64()
        .expect("threshold inside the knapsack")
}

/// Whether `eps_small < eps^(1/(2 eps) + 1)`, compared in logarithms.
fn small_enough(eps: Rat, eps_small: Rat) -> bool {
    let e = *eps.numer() as f64 / *eps.denom() as f64;
    let s = *eps_small.numer() as f64 / *eps_small.denom() as f64;
    s.ln() < (1.0 / (2.0 * e) + 1.0) * e.ln()
}

/// Items whose height lies in `((1 - 2 eps^i) N, (1 - eps^(i+1)) N]`.
fn band_members(placed: &[Placed], n: i64, eps: &BigRational, i: u32) -> Vec<ItemId> {
    let nn = big(n);
    let lo = (BigRational::one() - eps.pow(i as i32) * big(2)) * &nn;
    let hi = (BigRational::one() - eps.pow(i as i32 + 1)) * &nn;
    let (lo, hi) = (big_floor(&lo), big_floor(&hi));
    placed
        .iter()
        .filter(|p| p.h > lo && p.h <= hi)
        .map(|p| p.id)
        .collect()
}

/// The band of fewest items among those whose `eps^(i+1)` exceeds `eps_small`.
fn choose_band(placed: &[Placed], n: i64, eps: Rat, eps_small: Rat) -> (u32, Vec<ItemId>) {
    let e = big_of(eps);
    let es = big_of(eps_small);
    let top = (Rat::one() / (eps * 2)).ceil().to_integer() as u32;
    let mut best: Option<(u32, Vec<ItemId>)> = None;
    for i in 1..=top {
        if es >= e.pow(i as i32 + 1) {
            break;
        }
        let k = band_members(placed, n, &e, i);
        if best.as_ref().is_none_or(|b| k.len() < b.1.len()) {
            best = Some((i, k));
        }
    }
    best.expect("the first band always qualifies")
}

/// Strip cuts of the cardinality construction in one frame.
struct Frame {
    n: i64,
    band: u32,
    dropped: Vec<ItemId>,
    m3: Vec<Placed>,
    /// `eps_s N`
    ds: BigRational,
    /// `eps eps_s N`
    e: BigRational,
    area_ok: bool,
}

impl Frame {
    fn build(placed: &[Placed], n: i64, eps: Rat, eps_small: Rat) -> Frame {
        let (band, dropped) = choose_band(placed, n, eps, eps_small);
        let gone: BTreeSet<ItemId> = dropped.iter().copied().collect();
        let m3: Vec<Placed> = placed
            .iter()
            .filter(|p| !gone.contains(&p.id))
            .copied()
            .collect();
        let eb = big_of(eps);
        let ds = eb.pow(band as i32) * big(n);
        let e = &ds * &eb;
        let mut f = Frame {
            n,
            band,
            dropped,
            m3,
            ds,
            e,
            area_ok: false,
        };
        let area: i64 =
            f.m3.iter()
                .filter(|p| f.meets_top(p) || f.meets_bottom(p))
                .map(|p| p.area())
                .sum();
        let bound = (BigRational::one() + eb.pow(band as i32) * big(8)) * big(n) * big(n) / big(2);
        f.area_ok = big(area) <= bound;
        f
    }
    fn meets_top(&self, p: &Placed) -> bool {
        p.top() > big_floor(&(big(self.n) - &self.ds))
    }
    fn meets_bottom(&self, p: &Placed) -> bool {
        p.y < big_ceil(&self.ds)
    }
    fn out_width(&self) -> i64 {
        big_floor(&(big(self.n) - &self.e))
    }
}

/// Keeps about two thirds of the items of a packing while freeing a
/// vertical strip of width `eps^(i+1) N` on the right.
///
/// With `test_mode` the lower bound on the number of items is not enforced.
pub fn resource_contraction_cardinality(
    inst: &Instance,
    packing: &Packing,
    eps: Rat,
    eps_small: Rat,
    test_mode: bool,
) -> Result<CardinalityContraction> {
    if eps <= Rat::zero() || eps > Rat::new(1, 13) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1/13], got {eps}"
        )));
    }
    if eps_small <= Rat::zero() || !small_enough(eps, eps_small) {
        return Err(Error::Parameter(format!(
            "eps_small {eps_small} is not below eps^(1/(2 eps) + 1)"
        )));
    }
    if !inst.rotations {
        return Err(Error::Input(
            "the contraction turns items and needs rotations".into(),
        ));
    }
    let placed = valid_input(inst, packing)?;
    let es = *eps_small.numer() as f64 / *eps_small.denom() as f64;
    if !test_mode && (placed.len() as f64) < es.powi(-3) {
        return Err(Error::Input(format!(
            "{} items are fewer than 1/eps_small^3",
            placed.len()
        )));
    }
    let n = inst.n;
    let cut = floor_rat(eps_small * n);
    let (large, m2): (Vec<Placed>, Vec<Placed>) =
        placed.iter().partition(|p| p.w > cut && p.h > cut);
    let dropped_large: Vec<ItemId> = large.iter().map(|p| p.id).collect();

    let straight = Frame::build(&m2, n, eps, eps_small);
    let (frame, transposed) = if straight.area_ok {
        (straight, false)
    } else {
        let turned = Frame::build(&transpose_all(&m2), n, eps, eps_small);
        if turned.area_ok {
            (turned, true)
        } else {
            (straight, false)
        }
    };
    let x: Vec<Placed> = frame
        .m3
        .iter()
        .filter(|p| frame.meets_top(p) && frame.meets_bottom(p))
        .copied()
        .collect();
    let ny = frame
        .m3
        .iter()
        .filter(|p| frame.meets_top(p) || frame.meets_bottom(p))
        .count()
        - x.len();
    let xyz = [x.len(), ny, frame.m3.len() - x.len() - ny];
    let wx: i64 = x.iter().map(|p| p.w).sum();
    let out = frame.out_width();
    let (case, result) = if big(wx) >= &frame.e * big(12) {
        (CardinalityCase::ColumnsMoved, columns_moved(&frame, &x, wx))
    } else {
        let a = top_dropped(&frame, &x);
        let b = steinberg_repack(&frame)?;
        if b.len() > a.len() {
            (CardinalityCase::SteinbergRepack, b)
        } else {
            (CardinalityCase::TopDropped, a)
        }
    };
    let packing = finish(inst, region_of(out, n), &result, "cardinality contraction")?;
    let eps_s = (*eps.numer() as f64 / *eps.denom() as f64).powi(frame.band as i32);
    Ok(CardinalityContraction {
        packing,
        band: frame.band,
        eps_s,
        dropped_large,
        dropped_band: frame.dropped.clone(),
        m2: m2.len(),
        m3: frame.m3.len(),
        transposed,
        area_condition: frame.area_ok,
        case,
        xyz,
    })
}

/// Removes the crossing columns and the items of the thin top and bottom
/// strips, closes the gaps, and refills the freed strip on the right.
fn columns_moved(f: &Frame, x: &[Placed], wx: i64) -> Vec<Placed> {
    let n = f.n;
    let top0 = big_ceil(&(big(n) - &f.e));
    let bot1 = big_floor(&f.e);
    let in_top = |p: &Placed| p.y >= top0;
    let in_bot = |p: &Placed| p.top() <= bot1;
    let xs: BTreeSet<ItemId> = x.iter().map(|p| p.id).collect();
    let mut cols: Vec<(i64, i64)> = x.iter().map(|p| (p.x, p.w)).collect();
    cols.sort_unstable();
    let mut out = Vec::new();
    let x0 = n - wx;
    for p in &f.m3 {
        if xs.contains(&p.id) {
            continue;
        }
        if in_top(p) {
            out.push(Placed::new(p.id, x0 + p.y - top0, p.x, p.h, p.w));
        } else if in_bot(p) {
            out.push(Placed::new(p.id, x0 + bot1 + p.y, p.x, p.h, p.w));
        } else {
            let before: i64 = cols
                .iter()
                .filter(|&&(cx, cw)| cx + cw <= p.x)
                .map(|c| c.1)
                .sum();
            out.push(p.translated(-before, 0));
        }
    }
    let budget = big_floor(&(big(wx) - &f.e * big(3)));
    let mut order = x.to_vec();
    order.sort_by_key(|p| (p.w, p.id));
    let mut at = x0 + 2 * bot1;
    let mut used = 0;
    for p in order {
        if used + p.w > budget {
            break;
        }
        out.push(Placed::new(p.id, at, 0, p.w, p.h));
        at += p.w;
        used += p.w;
    }
    out
}

/// Keeps everything below the top strip on the side with fewer strip
/// items, lays the crossing items flat on top, and turns the result.
fn top_dropped(f: &Frame, x: &[Placed]) -> Vec<Placed> {
    let n = f.n;
    let xs: BTreeSet<ItemId> = x.iter().map(|p| p.id).collect();
    let t =
        f.m3.iter()
            .filter(|p| !xs.contains(&p.id) && f.meets_top(p))
            .count();
    let b =
        f.m3.iter()
            .filter(|p| !xs.contains(&p.id) && f.meets_bottom(p))
            .count();
    let work: Vec<Placed> = if t > b {
        f.m3.iter().map(|p| p.flipped_y(n)).collect()
    } else {
        f.m3.clone()
    };
    let mut out: Vec<Placed> = work.iter().filter(|p| !f.meets_top(p)).copied().collect();
    let mut y = big_floor(&(big(n) - &f.ds));
    let mut order = x.to_vec();
    order.sort_by_key(|p| p.id);
    for p in order {
        out.push(Placed::new(p.id, 0, y, p.h, p.w));
        y += p.w;
    }
    transpose_all(&out)
}

/// Packs a prefix by area of the strip items, each standing on its short
/// side, into `floor((1 - eps_s) N) x N`.
fn steinberg_repack(f: &Frame) -> Result<Vec<Placed>> {
    let n = f.n;
    let items: Vec<Item> =
        f.m3.iter()
            .filter(|p| f.meets_top(p) || f.meets_bottom(p))
            .map(|p| {
                if p.w <= p.h {
                    Item::new(p.id, p.w, p.h, 1)
                } else {
                    Item::new(p.id, p.h, p.w, 1)
                }
            })
            .collect();
    let u = big_floor(&(big(n) - &f.ds));
    let region = Rect::new(0, 0, u, n);
    let chosen: Vec<Item> = area_prefix_select(
        &items,
        ((u as i128 * n as i128) / 2).min(i64::MAX as i128) as i64,
    )
    .into_iter()
    .filter(|it| it.w <= u)
    .collect();
    match steinberg_place(&chosen, region) {
        Ok(p) => Ok(p),
        Err(Error::Internal(_)) => Ok(nfdh_place(&chosen, region)?.0),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StripOrientation {
    Horizontal,
    Vertical,
}

/// Deletes every item meeting a random strip of thickness `ceil(eps N)` and
/// closes the gap; the result fits `N x (N - ceil(eps N))` (or the transpose).
pub fn random_strip_delete(
    inst: &Instance,
    packing: &Packing,
    orientation: StripOrientation,
    eps: Rat,
    seed: u64,
) -> Result<Packing> {
    if eps <= Rat::zero() || eps >= Rat::one() {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    let placed = valid_input(inst, packing)?;
    let n = inst.n;
    let d = ceil_rat(eps * n).min(n);
    let t = ChaCha8Rng::seed_from_u64(seed).gen_range(0..=n - d);
    let vertical = orientation == StripOrientation::Vertical;
    let work: Vec<Placed> = if vertical {
        transpose_all(&placed)
    } else {
        placed
    };
    let kept: Vec<Placed> = work
        .iter()
        .filter(|p| !(p.y < t + d && p.top() > t))
        .map(|p| {
            if p.y >= t + d {
                p.translated(0, -d)
            } else {
                *p
            }
        })
        .collect();
    let (kept, region) = if vertical {
        (transpose_all(&kept), region_of(n - d, n))
    } else {
        (kept, region_of(n, n - d))
    };
    finish(inst, region, &kept, "strip deletion")
}
