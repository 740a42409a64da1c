//! Packings that contain a massive item: three candidate sets built around
//! the massive item after cutting out the cheapest vertical and horizontal
//! strips.

use std::collections::BTreeSet;

use num::{One, Zero};
use serde::Serialize;

use crate::core::{placed_is_valid, validate_packing, Instance, Item, ItemId, Packing, Placed};
use crate::error::{Error, Result};
use crate::steinberg::{condition_holds, steinberg_place};
use crate::Rat;

use super::{region_of, transpose_all};

/// Both sides at least `(1 - eps) N`.
pub fn is_massive(w: i64, h: i64, n: i64, eps: Rat) -> bool {
    let t = (Rat::one() - eps) * n;
    Rat::from_integer(w) >= t && Rat::from_integer(h) >= t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MassiveSet {
    pub name: String,
    pub ids: Vec<ItemId>,
    pub profit: i64,
    pub packing: Packing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MassiveSplit {
    pub massive: ItemId,
    /// Index of the cheapest vertical and horizontal strip.
    pub strip_x: usize,
    pub strip_y: usize,
    /// Items with an edge inside one of the two strips.
    pub removed: Vec<ItemId>,
    pub sets: Vec<MassiveSet>,
    /// Index of the most profitable set.
    pub chosen: usize,
}

/// Open intervals of the `k` strips covering `[eps N, (1 - eps) N]`.
fn strips(n: i64, eps: Rat) -> Vec<(Rat, Rat)> {
    let k = (Rat::one() / (eps * 3)).floor().to_integer().max(1);
    let start = eps * n;
    let s = (Rat::one() - eps * 2) * n / k;
    (0..k)
        .map(|t| (start + s * t, start + s * (t + 1)))
        .collect()
}

fn inside(v: i64, (a, b): (Rat, Rat)) -> bool {
    let v = Rat::from_integer(v);
    a < v && v < b
}

/// The strip whose items with an edge inside it are cheapest; ties go to
/// the lowest index.
fn cheapest(strips: &[(Rat, Rat)], edges: &[(i64, i64, i64)]) -> usize {
    (0..strips.len())
        .min_by_key(|&t| {
            let p: i64 = edges
                .iter()
                .filter(|&&(lo, hi, _)| inside(lo, strips[t]) || inside(hi, strips[t]))
                .map(|e| e.2)
                .sum();
            (p, t)
        })
        .unwrap_or(0)
}

/// Splits a packing with a massive item into three sets, each packed in
/// the knapsack, and picks the most profitable one.
pub fn massive_item_split(inst: &Instance, packing: &Packing, eps: Rat) -> Result<MassiveSplit> {
    if eps <= Rat::zero() || eps >= Rat::new(1, 6) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1/6), got {eps}"
        )));
    }
    let report = validate_packing(inst, packing)?;
    if !report.is_ok() || packing.region != inst.knapsack() {
        return Err(Error::Input(format!("packing is invalid: {report}")));
    }
    let n = inst.n;
    let placed = packing.placed(inst)?;
    let m = *placed
        .iter()
        .find(|p| is_massive(p.w, p.h, n, eps))
        .ok_or_else(|| Error::Input("the packing has no massive item".into()))?;
    let by = inst.by_id();
    let profit_of = |id: ItemId| by[&id].p;

    let st = strips(n, eps);
    let xe: Vec<(i64, i64, i64)> = placed
        .iter()
        .map(|p| (p.x, p.right(), profit_of(p.id)))
        .collect();
    let ye: Vec<(i64, i64, i64)> = placed
        .iter()
        .map(|p| (p.y, p.top(), profit_of(p.id)))
        .collect();
    let (si, tj) = (cheapest(&st, &xe), cheapest(&st, &ye));
    let (sx, ty) = (st[si], st[tj]);
    let hit = |p: &Placed| {
        inside(p.x, sx) || inside(p.right(), sx) || inside(p.y, ty) || inside(p.top(), ty)
    };
    let mut removed: Vec<ItemId> = placed.iter().filter(|p| hit(p)).map(|p| p.id).collect();
    removed.sort_unstable();
    let kept: Vec<Placed> = placed
        .iter()
        .filter(|p| !hit(p) && p.id != m.id)
        .copied()
        .collect();

    let overlaps = |lo: i64, hi: i64, (a, b): (Rat, Rat)| {
        Rat::from_integer(lo) < b && Rat::from_integer(hi) > a
    };
    let m_h: Vec<Placed> = kept
        .iter()
        .filter(|p| overlaps(p.x, p.right(), sx))
        .copied()
        .collect();
    let m_v: Vec<Placed> = kept
        .iter()
        .filter(|p| overlaps(p.y, p.top(), ty))
        .copied()
        .collect();
    let in_mh: BTreeSet<ItemId> = m_h.iter().map(|p| p.id).collect();
    let in_mv: BTreeSet<ItemId> = m_v.iter().map(|p| p.id).collect();
    let h_set: Vec<Placed> = kept
        .iter()
        .filter(|p| !in_mh.contains(&p.id) && (p.y >= m.top() || p.top() <= m.y))
        .copied()
        .collect();
    let v_set: Vec<Placed> = kept
        .iter()
        .filter(|p| !in_mv.contains(&p.id) && (p.x >= m.right() || p.right() <= m.x))
        .copied()
        .collect();

    let region = inst.knapsack();
    let mut sets = Vec::new();
    let rest: Vec<Placed> = placed.iter().filter(|p| p.id != m.id).copied().collect();
    sets.push(("without-massive", without_massive(inst, &rest, eps)));
    sets.push(("horizontal-stack", around_massive(n, m, &m_h, &v_set, ty)));
    let turned = around_massive(
        n,
        m.transposed(),
        &transpose_all(&m_v),
        &transpose_all(&h_set),
        sx,
    );
    sets.push(("vertical-stack", transpose_all(&turned)));

    let mut out = Vec::new();
    for (name, set) in sets {
        if !placed_is_valid(&region, &set) {
            return Err(Error::Internal(format!(
                "massive split set {name} is invalid"
            )));
        }
        let mut ids: Vec<ItemId> = set.iter().map(|p| p.id).collect();
        ids.sort_unstable();
        let profit = set.iter().map(|p| profit_of(p.id)).sum();
        out.push(MassiveSet {
            name: name.to_string(),
            ids,
            profit,
            packing: Packing::from_placed(region, &set, inst)?,
        });
    }
    let chosen = (0..out.len())
        .max_by_key(|&k| (out[k].profit, std::cmp::Reverse(k)))
        .unwrap_or(0);
    Ok(MassiveSplit {
        massive: m.id,
        strip_x: si,
        strip_y: tj,
        removed,
        sets: out,
        chosen,
    })
}

/// Everything but the massive item: laid flat and packed by Steinberg into
/// `N x floor(N / (1 + eps))` when allowed, otherwise where it was.
fn without_massive(inst: &Instance, rest: &[Placed], eps: Rat) -> Vec<Placed> {
    let n = inst.n;
    if inst.rotations && !rest.is_empty() {
        let flat: Vec<Item> = rest
            .iter()
            .map(|p| {
                if p.h <= p.w {
                    Item::new(p.id, p.w, p.h, 0)
                } else {
                    Item::new(p.id, p.h, p.w, 0)
                }
            })
            .collect();
        let v = (Rat::from_integer(n) / (Rat::one() + eps))
            .floor()
            .to_integer();
        if condition_holds(&flat, n, v) {
            if let Ok(p) = steinberg_place(&flat, region_of(n, v)) {
                return p;
            }
        }
    }
    rest.to_vec()
}

/// The horizontal stack at the bottom, the massive item above it at the
/// left wall, and the side items with the band `band` cut out to its right.
fn around_massive(
    n: i64,
    m: Placed,
    stack: &[Placed],
    side: &[Placed],
    band: (Rat, Rat),
) -> Vec<Placed> {
    let mut out = Vec::new();
    let mut order = stack.to_vec();
    order.sort_by_key(|p| (p.y, p.id));
    let mut y = 0;
    for p in order {
        out.push(Placed::new(p.id, 0, y, p.w, p.h));
        y += p.h;
    }
    let base = n - m.h;
    out.push(Placed::new(m.id, 0, base, m.w, m.h));
    let (a, b) = (band.0.floor().to_integer(), band.1.ceil().to_integer());
    for p in side {
        let x = if p.right() <= m.x { p.x } else { p.x - m.w };
        let y = if p.y >= b { p.y - (b - a) } else { p.y };
        out.push(Placed::new(p.id, m.w + x, base + y, p.w, p.h));
    }
    out
}
