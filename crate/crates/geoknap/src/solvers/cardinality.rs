//! Cardinality solver: best of an L-packing of the long items, container
//! packings of everything, and L-packings in the knapsack boundary with the
//! remaining square filled by short items.

use std::collections::BTreeSet;

use crate::core::{Instance, Item, ItemId, Packing, Placed, Rect};
use crate::error::{Error, Result};
use crate::longring::{ring_shift, ring_to_boundary_l};
use crate::lpack::{full_grid, lpack_exact_dp, lpack_ptas_with, LInstance, LShape};
use crate::shelf::nfdh_place;
use crate::steinberg::{area_prefix_select, condition_holds, steinberg_place};
use crate::Rat;

use super::layouts::{best_fills, layouts_within};
use super::{check_solver_eps, Pool, SolveConfig, SolveReport};

/// Container layouts whose fills are kept per search.
pub(crate) const KEEP_FILLS: usize = 3;
/// L shapes tried from guessed arm thicknesses.
const GUESSED_SHAPES: usize = 16;

pub fn solve_cardinality(inst: &Instance, eps: Rat) -> Result<SolveReport> {
    solve_cardinality_with(inst, eps, &SolveConfig::default())
}

pub fn solve_cardinality_with(inst: &Instance, eps: Rat, cfg: &SolveConfig) -> Result<SolveReport> {
    check_solver_eps(eps)?;
    inst.check()?;
    let mut pool = Pool::new(inst, cfg);
    offer_base_families(&mut pool, inst, eps, cfg)?;
    pool.finish()
}

/// The L, container, ring and guessed-L families, shared by all solvers.
pub(crate) fn offer_base_families(
    pool: &mut Pool,
    inst: &Instance,
    eps: Rat,
    cfg: &SolveConfig,
) -> Result<()> {
    if inst.items.is_empty() {
        return Ok(());
    }
    let long_l = l_pack(LShape::full(inst.n), &inst.items, eps, cfg)?;
    let mut cands = vec![long_l.clone()];
    cands.extend(complete_l(
        tight_shape(inst.n, &long_l),
        long_l.clone(),
        &inst.items,
        inst.rotations,
        eps,
        cfg,
    )?);
    pool.offer("long-L", cands)?;

    let layouts = layouts_within(
        inst.knapsack(),
        &inst.items,
        inst.rotations,
        eps,
        cfg,
        cfg.layout_budget,
    )?;
    let fills: Vec<Vec<Placed>> =
        best_fills(&inst.items, inst.rotations, &layouts, eps, cfg, KEEP_FILLS)?
            .into_iter()
            .map(|f| f.1)
            .collect();
    pool.offer("containers", fills)?;

    let sources = vec![long_l, pool.best_placed()?];
    pool.offer("ring-L", ring_candidates(inst, &sources, eps, cfg)?)?;
    pool.offer("guessed-L", guessed_l_candidates(inst, eps, cfg)?)?;
    Ok(())
}

/// Best packing of the long items of `items` into `shape`; exact on small
/// knapsacks, otherwise the restricted-grid DP with a coarser accuracy when
/// the grids get too large.
pub(crate) fn l_pack(
    shape: LShape,
    items: &[Item],
    eps: Rat,
    cfg: &SolveConfig,
) -> Result<Vec<Placed>> {
    let li = LInstance::long_items(shape, items)?;
    if li.is_empty() || (shape.h_l == 0 && shape.w_l == 0) {
        return Ok(Vec::new());
    }
    let packing = if shape.n <= cfg.exact_l_side {
        let grid = full_grid(shape.n);
        lpack_exact_dp(&li, &grid, &grid)?.1
    } else {
        let mut got = None;
        for e in [eps, Rat::new(1, 4), Rat::new(1, 2)] {
            match lpack_ptas_with(&li, e.min(Rat::new(1, 2)), &cfg.lpack) {
                Ok((_, p)) => {
                    got = Some(p);
                    break;
                }
                Err(Error::Resource { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        match got {
            Some(p) => p,
            None => return Ok(Vec::new()),
        }
    };
    packing.placed(&li.instance())
}

/// Items whose ids do not occur in `placed`.
pub(crate) fn unused(items: &[Item], placed: &[Placed]) -> Vec<Item> {
    let taken: BTreeSet<ItemId> = placed.iter().map(|p| p.id).collect();
    items
        .iter()
        .filter(|it| !taken.contains(&it.id))
        .copied()
        .collect()
}

/// The thinnest L holding an L packing in normal form: wide items below
/// the top of the highest one, the others left of the rightmost one.
pub(crate) fn tight_shape(n: i64, l: &[Placed]) -> LShape {
    let h_l = l
        .iter()
        .filter(|p| 2 * p.w > n)
        .map(|p| p.top())
        .max()
        .unwrap_or(0);
    let w_l = l
        .iter()
        .filter(|p| 2 * p.w <= n)
        .map(|p| p.right())
        .max()
        .unwrap_or(0);
    LShape { n, h_l, w_l }
}

/// The free square next to a boundary L.
pub(crate) fn l_complement(shape: LShape) -> Rect {
    Rect::new(
        shape.w_l,
        shape.h_l,
        shape.n - shape.w_l,
        shape.n - shape.h_l,
    )
}

/// Candidate fillings of `region`: a Steinberg packing of the smallest
/// items by area and the best container fills over a reduced layout budget.
pub(crate) fn region_fills(
    region: Rect,
    items: &[Item],
    rotations: bool,
    eps: Rat,
    cfg: &SolveConfig,
) -> Result<Vec<Vec<Placed>>> {
    if region.w < 1 || region.h < 1 {
        return Ok(vec![Vec::new()]);
    }
    let fitting: Vec<Item> = items
        .iter()
        .filter_map(|it| {
            if it.w <= region.w && it.h <= region.h {
                Some(*it)
            } else if rotations && it.h <= region.w && it.w <= region.h {
                Some(it.rotated())
            } else {
                None
            }
        })
        .collect();
    if fitting.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let mut out = vec![steinberg_fill(region, &fitting)?];
    let budget = (cfg.layout_budget / 8).max(8);
    let layouts = layouts_within(region, items, rotations, eps, cfg, budget)?;
    out.extend(
        best_fills(items, rotations, &layouts, eps, cfg, 1)?
            .into_iter()
            .map(|f| f.1),
    );
    Ok(out)
}

/// Smallest items by area until the Steinberg condition holds, packed into
/// `region`; NFDH takes over if the search gives up.
fn steinberg_fill(region: Rect, items: &[Item]) -> Result<Vec<Placed>> {
    let mut chosen = area_prefix_select(items, region.area() / 2);
    while !chosen.is_empty() && !condition_holds(&chosen, region.w, region.h) {
        chosen.pop();
    }
    if chosen.is_empty() {
        return Ok(Vec::new());
    }
    match steinberg_place(&chosen, region) {
        Ok(p) => Ok(p),
        Err(Error::Internal(_)) => Ok(nfdh_place(&chosen, region)?.0),
        Err(e) => Err(e),
    }
}

/// Completes an L packing with every fill of its free square.
pub(crate) fn complete_l(
    shape: LShape,
    l: Vec<Placed>,
    items: &[Item],
    rotations: bool,
    eps: Rat,
    cfg: &SolveConfig,
) -> Result<Vec<Vec<Placed>>> {
    let rest = unused(items, &l);
    let fills = region_fills(l_complement(shape), &rest, rotations, eps, cfg)?;
    Ok(fills
        .into_iter()
        .map(|f| {
            let mut all = l.clone();
            all.extend(f);
            all
        })
        .collect())
}

/// Pushes the long items of each source packing into a ring, turns the ring
/// into a boundary L and fills the remaining square.
pub(crate) fn ring_candidates(
    inst: &Instance,
    sources: &[Vec<Placed>],
    eps: Rat,
    cfg: &SolveConfig,
) -> Result<Vec<Vec<Placed>>> {
    let n = inst.n;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for src in sources {
        let long: Vec<Placed> = src
            .iter()
            .filter(|p| 2 * p.w > n || 2 * p.h > n)
            .copied()
            .collect();
        if long.is_empty() {
            continue;
        }
        let mut key: Vec<Placed> = long.clone();
        key.sort();
        if !seen.insert(key) {
            continue;
        }
        let items: Vec<Item> = long
            .iter()
            .map(|p| Item::new(p.id, p.w, p.h, inst.by_id()[&p.id].p))
            .collect();
        let ring_inst = Instance::new(n, false, items)?;
        let ring = ring_shift(&ring_inst, &Packing::unrotated(inst.knapsack(), &long))?;
        let rl = ring_to_boundary_l(&ring)?;
        let l = rl.packing.placed(&ring_inst)?;
        out.extend(complete_l(
            rl.shape,
            l,
            &inst.items,
            inst.rotations,
            eps,
            cfg,
        )?);
    }
    Ok(out)
}

/// Prefix sums of the given lengths, cheapest items first, up to `cap`.
fn prefix_thicknesses(mut items: Vec<Item>, side: fn(&Item) -> i64, cap: i64) -> Vec<i64> {
    items.sort_by_key(|it| (side(it), std::cmp::Reverse(it.p), it.id));
    let mut out = vec![0];
    let mut s = 0;
    for it in items {
        s += side(&it);
        if s > cap {
            break;
        }
        out.push(s);
    }
    out
}

/// L shapes whose arms hold a prefix of the thinnest wide and tall items,
/// each packed optimally and completed in its free square.
fn guessed_l_candidates(inst: &Instance, eps: Rat, cfg: &SolveConfig) -> Result<Vec<Vec<Placed>>> {
    let n = inst.n;
    let wide: Vec<Item> = inst
        .items
        .iter()
        .filter(|it| 2 * it.w > n)
        .copied()
        .collect();
    let tall: Vec<Item> = inst
        .items
        .iter()
        .filter(|it| 2 * it.w <= n && 2 * it.h > n)
        .copied()
        .collect();
    if wide.is_empty() && tall.is_empty() {
        return Ok(Vec::new());
    }
    let hs = prefix_thicknesses(wide, |i| i.h, n);
    let ws = prefix_thicknesses(tall, |i| i.w, n);
    let mut shapes: Vec<(i64, i64)> = hs
        .iter()
        .flat_map(|&h| ws.iter().map(move |&w| (h, w)))
        .collect();
    shapes.retain(|&(h, w)| (h, w) != (0, 0));
    if shapes.len() > GUESSED_SHAPES {
        let step = shapes.len() as f64 / GUESSED_SHAPES as f64;
        shapes = (0..GUESSED_SHAPES)
            .map(|k| shapes[(k as f64 * step) as usize])
            .collect();
    }
    let mut out = Vec::new();
    for (h, w) in shapes {
        let shape = LShape::new(n, h, w)?;
        let l = l_pack(shape, &inst.items, eps, cfg)?;
        out.extend(complete_l(shape, l, &inst.items, inst.rotations, eps, cfg)?);
    }
    Ok(out)
}
