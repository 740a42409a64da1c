//! Packings of long items into a boundary L: wide items stacked in the
//! bottom arm against the right edge, tall items side by side in the left
//! arm against the top edge.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use num::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::core::{parse_json, to_json, Instance, Item, ItemId, Packing, Placed, Rect};
use crate::error::{resource, Error, Result};
use crate::Rat;

/// `[0,N] x [0,h_l]` union `[0,w_l] x [0,N]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LShape {
    pub n: i64,
    pub h_l: i64,
    pub w_l: i64,
}

impl LShape {
    pub fn new(n: i64, h_l: i64, w_l: i64) -> Result<Self> {
        if n < 1 || !(0..=n).contains(&h_l) || !(0..=n).contains(&w_l) {
            return Err(Error::Input(format!(
                "invalid L shape: N={n}, h_L={h_l}, w_L={w_l}"
            )));
        }
        Ok(LShape { n, h_l, w_l })
    }

    /// Both arms as wide as the knapsack.
    pub fn full(n: i64) -> Self {
        LShape { n, h_l: n, w_l: n }
    }

    pub fn horizontal_arm(&self) -> Rect {
        Rect::new(0, 0, self.n, self.h_l)
    }

    pub fn vertical_arm(&self) -> Rect {
        Rect::new(0, 0, self.w_l, self.n)
    }

    pub fn contains(&self, p: &Placed) -> bool {
        self.horizontal_arm().contains(&p.rect()) || self.vertical_arm().contains(&p.rect())
    }
}

fn is_wide(it: &Item, n: i64) -> bool {
    2 * it.w > n
}

fn is_tall(it: &Item, n: i64) -> bool {
    2 * it.h > n
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LInstance {
    pub shape: LShape,
    pub hor: Vec<Item>,
    pub ver: Vec<Item>,
}

impl LInstance {
    pub fn new(shape: LShape, hor: Vec<Item>, ver: Vec<Item>) -> Result<Self> {
        let n = shape.n;
        if let Some(it) = hor.iter().find(|i| !is_wide(i, n)) {
            return Err(Error::Input(format!(
                "horizontal item {} has width {} <= N/2",
                it.id, it.w
            )));
        }
        if let Some(it) = ver.iter().find(|i| !is_tall(i, n)) {
            return Err(Error::Input(format!(
                "vertical item {} has height {} <= N/2",
                it.id, it.h
            )));
        }
        let mut ids = BTreeSet::new();
        for it in hor.iter().chain(&ver) {
            if !ids.insert(it.id) {
                return Err(Error::Input(format!("item {} appears twice", it.id)));
            }
            if it.w < 1 || it.h < 1 || it.w > n || it.h > n || it.p < 0 {
                return Err(Error::Input(format!(
                    "item {} does not fit the knapsack",
                    it.id
                )));
            }
        }
        Ok(LInstance { shape, hor, ver })
    }

    /// Splits items into wide and tall ones; an item long in both
    /// directions counts as wide. Fails on items with no long side.
    pub fn from_items(shape: LShape, items: &[Item]) -> Result<Self> {
        if let Some(it) = items
            .iter()
            .find(|i| !is_wide(i, shape.n) && !is_tall(i, shape.n))
        {
            return Err(Error::Input(format!(
                "item {} has no side longer than N/2",
                it.id
            )));
        }
        Self::long_items(shape, items)
    }

    /// Like [`LInstance::from_items`] but silently drops items with no long side.
    pub fn long_items(shape: LShape, items: &[Item]) -> Result<Self> {
        let n = shape.n;
        let hor = items.iter().filter(|i| is_wide(i, n)).copied().collect();
        let ver = items
            .iter()
            .filter(|i| !is_wide(i, n) && is_tall(i, n))
            .copied()
            .collect();
        Self::new(shape, hor, ver)
    }

    pub fn items(&self) -> Vec<Item> {
        self.hor.iter().chain(&self.ver).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.hor.len() + self.ver.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The items as a plain instance, for validation.
    pub fn instance(&self) -> Instance {
        Instance {
            n: self.shape.n,
            rotations: false,
            items: self.items(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LInstanceFile {
    n: i64,
    #[serde(default)]
    rotations: bool,
    items: Vec<Item>,
    w_l: i64,
    h_l: i64,
}

pub fn parse_l_instance(text: &str) -> Result<LInstance> {
    let f: LInstanceFile = parse_json(text)?;
    let as_parse = |e: Error| Error::Parse {
        location: "document".into(),
        message: e.to_string(),
    };
    if f.rotations {
        return Err(as_parse(Error::Input(
            "L-packing does not support rotations".into(),
        )));
    }
    let inst = Instance::new(f.n, false, f.items).map_err(as_parse)?;
    let shape = LShape::new(f.n, f.h_l, f.w_l).map_err(as_parse)?;
    LInstance::from_items(shape, &inst.items).map_err(as_parse)
}

pub fn load_l_instance(path: impl AsRef<Path>) -> Result<LInstance> {
    parse_l_instance(&std::fs::read_to_string(path)?)
}

pub fn l_instance_to_json(inst: &LInstance) -> Result<String> {
    let mut items = inst.items();
    items.sort_by_key(|i| i.id);
    to_json(&LInstanceFile {
        n: inst.shape.n,
        rotations: false,
        items,
        w_l: inst.shape.w_l,
        h_l: inst.shape.h_l,
    })
}

fn by_width_desc(items: &[Item]) -> Vec<Item> {
    let mut v = items.to_vec();
    v.sort_by(|a, b| b.w.cmp(&a.w).then(a.id.cmp(&b.id)));
    v
}

fn by_height_desc(items: &[Item]) -> Vec<Item> {
    let mut v = items.to_vec();
    v.sort_by(|a, b| b.h.cmp(&a.h).then(a.id.cmp(&b.id)));
    v
}

/// Places the selections in normal form and reports whether that is a
/// packing of the L. `Ok(None)` means the selections do not fit together.
pub fn normalize_l_packing(hor: &[Item], ver: &[Item], shape: LShape) -> Result<Option<Packing>> {
    Ok(normal_form(hor, ver, shape)?
        .map(|placed| Packing::unrotated(Rect::new(0, 0, shape.n, shape.n), &placed)))
}

pub(crate) fn normal_form(
    hor: &[Item],
    ver: &[Item],
    shape: LShape,
) -> Result<Option<Vec<Placed>>> {
    let n = shape.n;
    if let Some(it) = hor.iter().find(|i| !is_wide(i, n)) {
        return Err(Error::Input(format!(
            "horizontal item {} is not wider than N/2",
            it.id
        )));
    }
    if let Some(it) = ver.iter().find(|i| !is_tall(i, n)) {
        return Err(Error::Input(format!(
            "vertical item {} is not taller than N/2",
            it.id
        )));
    }
    if hor.iter().map(|i| i.h).sum::<i64>() > shape.h_l
        || ver.iter().map(|i| i.w).sum::<i64>() > shape.w_l
    {
        return Ok(None);
    }
    let mut hs = Vec::with_capacity(hor.len());
    let mut y = 0;
    for it in by_width_desc(hor) {
        hs.push(Placed::at(&it, n - it.w, y));
        y += it.h;
    }
    let mut vs = Vec::with_capacity(ver.len());
    let mut x = 0;
    for it in by_height_desc(ver) {
        vs.push(Placed::at(&it, x, n - it.h));
        x += it.w;
    }
    if hs.iter().any(|a| vs.iter().any(|b| a.overlaps(b))) {
        return Ok(None);
    }
    hs.extend(vs);
    Ok(Some(hs))
}

fn check_coordinate_set(name: &str, s: &[Rat]) -> Result<()> {
    if s.first() != Some(&Rat::zero()) {
        return Err(Error::Parameter(format!(
            "coordinate set {name} must start with 0"
        )));
    }
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(format!(
            "coordinate set {name} must be strictly increasing"
        )));
    }
    Ok(())
}

struct Dp<'a> {
    n: i64,
    hor: &'a [Item],
    ver: &'a [Item],
    tops: &'a [Rat],
    rights: &'a [Rat],
    memo: HashMap<(u32, u32, u32, u32), i64>,
}

impl Dp<'_> {
    /// Index of the smallest coordinate in `set` that is at least `from`.
    fn next(set: &[Rat], from: Rat) -> Option<usize> {
        let k = set.partition_point(|v| *v < from);
        (k < set.len()).then_some(k)
    }

    fn place_hor(&self, i: usize, ti: usize, ri: usize) -> Option<usize> {
        let it = &self.hor[i];
        if Rat::from_integer(self.n - it.w) < self.rights[ri] {
            return None;
        }
        Self::next(self.tops, self.tops[ti] + it.h)
    }

    fn place_ver(&self, j: usize, ti: usize, ri: usize) -> Option<usize> {
        let it = &self.ver[j];
        if Rat::from_integer(self.n - it.h) < self.tops[ti] {
            return None;
        }
        Self::next(self.rights, self.rights[ri] + it.w)
    }

    fn best(&mut self, i: usize, ti: usize, j: usize, ri: usize) -> i64 {
        if i == self.hor.len() && j == self.ver.len() {
            return 0;
        }
        let key = (i as u32, ti as u32, j as u32, ri as u32);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut v = 0;
        if i < self.hor.len() {
            v = v.max(self.best(i + 1, ti, j, ri));
            if let Some(t2) = self.place_hor(i, ti, ri) {
                v = v.max(self.hor[i].p + self.best(i + 1, t2, j, ri));
            }
        }
        if j < self.ver.len() {
            v = v.max(self.best(i, ti, j + 1, ri));
            if let Some(r2) = self.place_ver(j, ti, ri) {
                v = v.max(self.ver[j].p + self.best(i, ti, j + 1, r2));
            }
        }
        self.memo.insert(key, v);
        v
    }

    fn rebuild(&mut self) -> Vec<Placed> {
        let (mut i, mut ti, mut j, mut ri) = (0, 0, 0, 0);
        let mut out = Vec::new();
        let floor = |r: &Rat| r.floor().to_integer();
        while i < self.hor.len() || j < self.ver.len() {
            let target = self.best(i, ti, j, ri);
            if i < self.hor.len() {
                if let Some(t2) = self.place_hor(i, ti, ri) {
                    if self.hor[i].p + self.best(i + 1, t2, j, ri) == target {
                        let it = self.hor[i];
                        out.push(Placed::at(&it, self.n - it.w, floor(&self.tops[t2]) - it.h));
                        i += 1;
                        ti = t2;
                        continue;
                    }
                }
                if self.best(i + 1, ti, j, ri) == target {
                    i += 1;
                    continue;
                }
            }
            if let Some(r2) = (j < self.ver.len())
                .then(|| self.place_ver(j, ti, ri))
                .flatten()
            {
                if self.ver[j].p + self.best(i, ti, j + 1, r2) == target {
                    let it = self.ver[j];
                    out.push(Placed::at(
                        &it,
                        floor(&self.rights[r2]) - it.w,
                        self.n - it.h,
                    ));
                    j += 1;
                    ri = r2;
                    continue;
                }
            }
            j += 1;
        }
        out
    }
}

/// Best L-packing whose item tops lie in `tops` and whose item right
/// edges lie in `rights`.
pub fn lpack_exact_dp(inst: &LInstance, tops: &[Rat], rights: &[Rat]) -> Result<(i64, Packing)> {
    check_coordinate_set("T", tops)?;
    check_coordinate_set("R", rights)?;
    let shape = inst.shape;
    let tops: Vec<Rat> = tops
        .iter()
        .copied()
        .filter(|t| *t <= Rat::from_integer(shape.h_l))
        .collect();
    let rights: Vec<Rat> = rights
        .iter()
        .copied()
        .filter(|r| *r <= Rat::from_integer(shape.w_l))
        .collect();
    let hor = by_width_desc(&inst.hor);
    let ver = by_height_desc(&inst.ver);
    let mut dp = Dp {
        n: shape.n,
        hor: &hor,
        ver: &ver,
        tops: &tops,
        rights: &rights,
        memo: HashMap::new(),
    };
    let profit = dp.best(0, 0, 0, 0);
    let placed = dp.rebuild();
    let got: i64 = placed
        .iter()
        .map(|p| {
            inst.items()
                .iter()
                .find(|i| i.id == p.id)
                .map_or(0, |i| i.p)
        })
        .sum();
    let region = Rect::new(0, 0, shape.n, shape.n);
    if got != profit
        || !crate::core::placed_is_valid(&region, &placed)
        || !placed.iter().all(|p| shape.contains(p))
    {
        return Err(Error::Internal(
            "L-packing reconstruction is inconsistent".into(),
        ));
    }
    Ok((profit, Packing::unrotated(region, &placed)))
}

/// The integer grid `{0, 1, ..., n}`, which makes the DP exact.
pub fn full_grid(n: i64) -> Vec<Rat> {
    (0..=n).map(Rat::from_integer).collect()
}

/// Indices of the growing subsequence: the first element, then repeatedly
/// the next element at least as high as the last one taken.
pub fn growing_subsequence(heights: &[i64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut last: Option<i64> = None;
    for (k, &h) in heights.iter().enumerate() {
        if last.is_none_or(|l| h >= l) {
            out.push(k);
            last = Some(h);
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShiftResult {
    pub deleted: BTreeSet<ItemId>,
    /// New top coordinate of every kept item, relative to the bottom of the stack.
    pub shift: BTreeMap<ItemId, Rat>,
}

fn ceil_to(x: Rat, step: Rat) -> Rat {
    (x / step).ceil() * step
}

/// Rounds a stack of items (given bottom to top) down onto a small set of
/// possible top coordinates, deleting a few items to make room. `n` bounds
/// the number of items of the whole side; `r` is the recursion depth.
pub fn delete_and_shift(items: &[Item], r: u32, eps: Rat, n: usize) -> Result<ShiftResult> {
    if r < 1 {
        return Err(Error::Parameter(
            "round parameter must be at least 1".into(),
        ));
    }
    if eps <= Rat::zero() || eps > Rat::new(1, 2) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1/2], got {eps}"
        )));
    }
    if n < items.len() || n == 0 && !items.is_empty() {
        return Err(Error::Parameter(format!(
            "n = {n} is smaller than the stack size {}",
            items.len()
        )));
    }
    let inv = eps.recip().ceil().to_integer() as usize;
    Ok(shift_rec(items, r, inv, n as i64))
}

fn shift_rec(items: &[Item], r: u32, inv: usize, n: i64) -> ShiftResult {
    let mut res = ShiftResult::default();
    if items.is_empty() {
        return res;
    }
    let heights: Vec<i64> = items.iter().map(|i| i.h).collect();
    let g = growing_subsequence(&heights);
    let mut bottoms = Vec::with_capacity(items.len());
    let mut acc = 0i64;
    for &h in &heights {
        bottoms.push(acc);
        acc += h;
    }
    let block = |j: usize| {
        let end = g.get(j + 1).copied().unwrap_or(items.len());
        &items[g[j] + 1..end]
    };
    if r == 1 {
        for (j, &gj) in g.iter().enumerate() {
            res.deleted.insert(items[gj].id);
            let hg = Rat::from_integer(heights[gj]);
            let mut top = ceil_to(Rat::from_integer(bottoms[gj]), hg / 2);
            let step = hg / (2 * n);
            for it in block(j) {
                top += ceil_to(Rat::from_integer(it.h), step);
                res.shift.insert(it.id, top);
            }
        }
        return res;
    }
    let mut dropped = BTreeSet::new();
    if g.len() >= inv {
        let mut class_profit = vec![0i64; inv];
        for (j, &gj) in g.iter().enumerate() {
            class_profit[(j + 1) % inv] += items[gj].p;
        }
        let x = (0..inv).min_by_key(|&k| (class_profit[k], k)).unwrap();
        for (j, &gj) in g.iter().enumerate() {
            if (j + 1) % inv == x {
                dropped.insert(gj);
            }
        }
    }
    let mut level = Rat::zero();
    for (j, &gj) in g.iter().enumerate() {
        if dropped.contains(&gj) {
            res.deleted.insert(items[gj].id);
            level = ceil_to(
                Rat::from_integer(bottoms[gj]),
                Rat::from_integer(heights[gj]) / 2,
            );
        } else {
            level += heights[gj];
            res.shift.insert(items[gj].id, level);
        }
        let sub = shift_rec(block(j), r - 1, inv, n);
        res.deleted.extend(sub.deleted);
        let mut highest = Rat::zero();
        for (id, s) in sub.shift {
            res.shift.insert(id, level + s);
            highest = highest.max(s);
        }
        level += highest;
    }
    res
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedSets {
    pub r_level: u32,
    /// Candidate top coordinates of wide items, ascending, starting at 0.
    pub t: Vec<Rat>,
    /// Candidate right coordinates of tall items, ascending, starting at 0.
    pub r: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct LpackConfig {
    /// Largest number of items the oracle will enumerate subsets of.
    pub oracle_cap: usize,
    /// Largest coordinate grid (in units of 1/(2n)) a restricted set may span.
    pub grid_cap: u128,
}

impl Default for LpackConfig {
    fn default() -> Self {
        LpackConfig {
            oracle_cap: 16,
            grid_cap: 1 << 22,
        }
    }
}

/// Bit set over `0..len`.
#[derive(Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    fn new(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn set(&mut self, k: usize) {
        if k < self.len {
            self.words[k / 64] |= 1 << (k % 64);
        }
    }

    fn ones(&self) -> Vec<usize> {
        (0..self.len)
            .filter(|&k| self.words[k / 64] >> (k % 64) & 1 == 1)
            .collect()
    }

    /// `self |= src << s`, truncated.
    fn or_shifted(&mut self, src: &Bits, s: usize) {
        let (ws, bs) = (s / 64, s % 64);
        for k in (ws..self.words.len()).rev() {
            let lo = src.words[k - ws];
            let mut v = lo << bs;
            if bs > 0 && k > ws {
                v |= src.words[k - ws - 1] >> (64 - bs);
            }
            self.words[k] |= v;
        }
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= u64::MAX >> extra;
        }
    }

    /// `self ⊕ other`, truncated.
    fn sumset(&self, other: &Bits) -> Bits {
        let mut out = Bits::new(self.len);
        for s in other.ones() {
            out.or_shifted(self, s);
        }
        out
    }

    /// Sums of at most `c` members of `self`.
    fn up_to_sums(&self, c: usize) -> Bits {
        let mut acc = Bits::new(self.len);
        acc.set(0);
        for _ in 0..c {
            let next = {
                let mut t = acc.sumset(self);
                for (a, b) in t.words.iter_mut().zip(&acc.words) {
                    *a |= b;
                }
                t
            };
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }
}

/// Candidate coordinates for one side, per level, in units of `1/(2n)`.
fn side_levels(
    lengths: &[i64],
    cap: i64,
    levels: u32,
    inv: usize,
    eps: Rat,
    grid_cap: u128,
) -> Result<Vec<Vec<Rat>>> {
    let n = lengths.len() as i64;
    if n == 0 {
        return Ok(vec![vec![Rat::zero()]; levels as usize]);
    }
    let unit = 2 * n;
    let len = (cap as u128) * (unit as u128) + 1;
    if len > grid_cap {
        return Err(resource("restricted coordinate grid", len, grid_cap));
    }
    let len = len as usize;
    let distinct: BTreeSet<i64> = lengths.iter().copied().collect();
    let mut level = Bits::new(len);
    for &h in &distinct {
        for a in 1..=4 * n * n {
            match usize::try_from(a * h) {
                Ok(v) if v < len => level.set(v),
                _ => break,
            }
        }
    }
    level.set(0);
    let mut heights = Bits::new(len);
    for &h in &distinct {
        heights.set((h * unit) as usize);
    }
    let height_sums = heights.up_to_sums(inv - 1);
    let mut multiples = Bits::new(len);
    for &h in &distinct {
        for a in 0..2 * n {
            match usize::try_from(a * h * n) {
                Ok(v) if v < len => multiples.set(v),
                _ => break,
            }
        }
    }
    let base = multiples.sumset(&height_sums);
    let mut out = vec![];
    for r in 1..=levels {
        if r > 1 {
            level = base.sumset(&level.up_to_sums(inv));
            level.set(0);
        }
        let values: Vec<Rat> = level
            .ones()
            .into_iter()
            .map(|v| Rat::new(v as i64, unit))
            .collect();
        let exponent = (r as f64 + 2.0 + (r as f64 - 1.0) * eps.to_f64().unwrap_or(0.0))
            / eps.to_f64().unwrap_or(1.0).powi(r as i32 - 1);
        // One extra element for the adjoined 0.
        if ((values.len() - 1) as f64).ln() > exponent * ((2 * n) as f64).ln() + 1e-9 {
            return Err(Error::Internal(format!(
                "restricted set of level {r} exceeds its size bound"
            )));
        }
        out.push(values);
    }
    Ok(out)
}

/// Candidate top and right coordinates for every level `1..=ceil(1/eps)`.
pub fn build_restricted_sets(inst: &LInstance, eps: Rat) -> Result<Vec<RestrictedSets>> {
    build_restricted_sets_with(inst, eps, &LpackConfig::default())
}

pub fn build_restricted_sets_with(
    inst: &LInstance,
    eps: Rat,
    cfg: &LpackConfig,
) -> Result<Vec<RestrictedSets>> {
    check_eps(eps)?;
    let inv = eps.recip().ceil().to_integer() as usize;
    let levels = inv as u32;
    let hs: Vec<i64> = inst.hor.iter().map(|i| i.h).collect();
    let ws: Vec<i64> = inst.ver.iter().map(|i| i.w).collect();
    let t = side_levels(&hs, inst.shape.h_l, levels, inv, eps, cfg.grid_cap)?;
    let r = side_levels(&ws, inst.shape.w_l, levels, inv, eps, cfg.grid_cap)?;
    Ok(t.into_iter()
        .zip(r)
        .enumerate()
        .map(|(k, (t, r))| RestrictedSets {
            r_level: k as u32 + 1,
            t,
            r,
        })
        .collect())
}

fn check_eps(eps: Rat) -> Result<()> {
    if eps <= Rat::zero() || eps > Rat::new(1, 2) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1/2], got {eps}"
        )));
    }
    Ok(())
}

/// Higher profit wins; ties go to the canonically smaller packing.
pub(crate) fn better(a: &(i64, Packing), b: &(i64, Packing)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1.placements < b.1.placements)
}

/// Runs the restricted DP for every pair of levels and keeps the best.
pub fn lpack_ptas(inst: &LInstance, eps: Rat) -> Result<(i64, Packing)> {
    lpack_ptas_with(inst, eps, &LpackConfig::default())
}

pub fn lpack_ptas_with(inst: &LInstance, eps: Rat, cfg: &LpackConfig) -> Result<(i64, Packing)> {
    let sets = build_restricted_sets_with(inst, eps, cfg)?;
    let pairs: Vec<(usize, usize)> = (0..sets.len())
        .flat_map(|a| (0..sets.len()).map(move |b| (a, b)))
        .collect();
    let results: Vec<Result<(i64, Packing)>> = pairs
        .par_iter()
        .map(|&(a, b)| lpack_exact_dp(inst, &sets[a].t, &sets[b].r))
        .collect();
    let mut best = (
        0,
        Packing::empty(Rect::new(0, 0, inst.shape.n, inst.shape.n)),
    );
    for r in results {
        let r = r?;
        if better(&r, &best) {
            best = r;
        }
    }
    Ok(best)
}

/// Exact optimum by trying every subset pair in normal form.
pub fn lpack_oracle(inst: &LInstance) -> Result<(i64, Packing)> {
    lpack_oracle_with(inst, &LpackConfig::default())
}

pub fn lpack_oracle_with(inst: &LInstance, cfg: &LpackConfig) -> Result<(i64, Packing)> {
    let items = inst.items();
    if items.len() > cfg.oracle_cap {
        return Err(resource(
            "L-packing oracle items",
            items.len() as u128,
            cfg.oracle_cap as u128,
        ));
    }
    let nh = inst.hor.len();
    let region = Rect::new(0, 0, inst.shape.n, inst.shape.n);
    let mut best = (0, Packing::empty(region));
    for mask in 0u64..(1 << items.len()) {
        let profit: i64 = (0..items.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| items[k].p)
            .sum();
        if profit <= best.0 {
            continue;
        }
        let hor: Vec<Item> = (0..nh)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| items[k])
            .collect();
        let ver: Vec<Item> = (nh..items.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| items[k])
            .collect();
        if let Some(p) = normalize_l_packing(&hor, &ver, inst.shape)? {
            best = (profit, p);
        }
    }
    Ok(best)
}

/// Number of units of `1/(2n)` in a rational, if it is a multiple of that unit.
#[cfg(test)]
fn in_units(x: Rat, n: i64) -> Option<i64> {
    let v = x * (2 * n);
    v.is_integer().then(|| v.to_integer())
}
