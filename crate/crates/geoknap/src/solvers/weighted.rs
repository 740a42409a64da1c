//! Weighted solver: L&C packings over guessed long-item thresholds and
//! boundary L thicknesses, on top of the shared candidate families.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::containers::{fill_containers, ContainerLayout};
use crate::core::{Instance, Item, Placed, Rect};
use crate::error::{Error, Result};
use crate::lpack::LShape;
use crate::Rat;

use super::cardinality::{l_pack, offer_base_families, unused, KEEP_FILLS};
use super::fill::nfdh_into_free;
use super::layouts::layouts_within;
use super::{check_solver_eps, Pool, SolveConfig, SolveReport};

/// Boundary thicknesses tried per threshold.
const THICKNESSES: usize = 8;

/// An L&C packing skeleton: long items (longer side above `ell`) go into
/// the boundary L, all other items into the containers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LCCandidate {
    pub ell: i64,
    pub l_shape: LShape,
    pub layout: ContainerLayout,
}

impl LCCandidate {
    pub fn new(ell: i64, l_shape: LShape, layout: ContainerLayout) -> Result<Self> {
        let n = l_shape.n;
        if 2 * ell <= n || ell > n {
            return Err(Error::Parameter(format!(
                "threshold {ell} must lie in (N/2, N] for N={n}"
            )));
        }
        if layout.region != Rect::new(0, 0, n, n) {
            return Err(Error::Structural(
                "layout region is not the knapsack".into(),
            ));
        }
        let arms = [l_shape.horizontal_arm(), l_shape.vertical_arm()];
        if let Some(k) = layout
            .containers
            .iter()
            .position(|c| arms.iter().any(|a| a.overlaps(&c.rect())))
        {
            return Err(Error::Structural(format!(
                "container {k} overlaps the boundary L"
            )));
        }
        Ok(LCCandidate {
            ell,
            l_shape,
            layout,
        })
    }

    pub fn is_long(&self, it: &Item) -> bool {
        it.long_side() > self.ell
    }

    /// Packs long items into the L, short ones into the containers, and
    /// then small leftovers into the free space by NFDH.
    pub fn evaluate(&self, inst: &Instance, eps: Rat, cfg: &SolveConfig) -> Result<Vec<Placed>> {
        let n = inst.n;
        let long: Vec<Item> = inst
            .items
            .iter()
            .filter(|it| self.is_long(it))
            .copied()
            .collect();
        let mut placed = l_pack(self.l_shape, &long, eps, cfg)?;
        let short: Vec<Item> = inst
            .items
            .iter()
            .filter(|it| !self.is_long(it))
            .copied()
            .collect();
        let fill = fill_containers(&short, inst.rotations, &self.layout, eps, &cfg.containers)?;
        placed.extend(fill.placed);
        let small: Vec<Item> = unused(&short, &placed)
            .into_iter()
            .filter(|it| Rat::from_integer(it.long_side()) <= eps * n)
            .collect();
        nfdh_into_free(inst.knapsack(), &mut placed, &small);
        Ok(placed)
    }
}

pub fn solve_weighted(inst: &Instance, eps: Rat) -> Result<SolveReport> {
    solve_weighted_with(inst, eps, &SolveConfig::default())
}

pub fn solve_weighted_with(inst: &Instance, eps: Rat, cfg: &SolveConfig) -> Result<SolveReport> {
    check_solver_eps(eps)?;
    inst.check()?;
    let mut pool = Pool::new(inst, cfg);
    offer_base_families(&mut pool, inst, eps, cfg)?;
    offer_lc(&mut pool, inst, eps, cfg)?;
    pool.finish()
}

/// Evaluates all L&C candidates and offers the best few.
pub(crate) fn offer_lc(
    pool: &mut Pool,
    inst: &Instance,
    eps: Rat,
    cfg: &SolveConfig,
) -> Result<()> {
    if inst.items.is_empty() {
        return Ok(());
    }
    let cands = lc_candidates(inst, eps, cfg)?;
    let by = inst.by_id();
    let mut scored: Vec<(i64, usize, Vec<Placed>)> = cands
        .par_iter()
        .enumerate()
        .map(|(k, c)| {
            let placed = c.evaluate(inst, eps, cfg)?;
            Ok((placed.iter().map(|p| by[&p.id].p).sum(), k, placed))
        })
        .collect::<Result<_>>()?;
    scored.sort_by_key(|(p, k, _)| (std::cmp::Reverse(*p), *k));
    pool.offer(
        "l-and-c",
        scored.into_iter().take(KEEP_FILLS).map(|s| s.2).collect(),
    )
}

/// Thresholds: every item side above N/2, and N itself (no long items).
fn thresholds(inst: &Instance) -> Vec<i64> {
    let n = inst.n;
    let mut t: BTreeSet<i64> = inst
        .items
        .iter()
        .flat_map(|it| [it.w, it.h])
        .filter(|&s| 2 * s > n)
        .collect();
    t.insert(n);
    t.into_iter().collect()
}

/// Thicknesses: 0, the rounded `eps^2 N`, and the sums of the thinnest
/// long items up to N/2.
fn thicknesses(inst: &Instance, ell: i64, eps: Rat) -> Vec<i64> {
    let n = inst.n;
    let mut t = BTreeSet::from([0, (eps * eps * n).floor().to_integer()]);
    let mut short: Vec<i64> = inst
        .items
        .iter()
        .filter(|it| it.long_side() > ell)
        .map(|it| it.short_side())
        .collect();
    short.sort_unstable();
    let mut s = 0;
    for x in short {
        s += x;
        if 2 * s > n {
            break;
        }
        t.insert(s);
    }
    let t: Vec<i64> = t.into_iter().collect();
    if t.len() <= THICKNESSES {
        return t;
    }
    (0..THICKNESSES)
        .map(|k| t[k * (t.len() - 1) / (THICKNESSES - 1)])
        .collect()
}

fn lc_candidates(inst: &Instance, eps: Rat, cfg: &SolveConfig) -> Result<Vec<LCCandidate>> {
    let n = inst.n;
    let knapsack = inst.knapsack();
    let combos: Vec<(i64, i64)> = thresholds(inst)
        .into_iter()
        .flat_map(|ell| {
            thicknesses(inst, ell, eps)
                .into_iter()
                .map(move |t| (ell, t))
        })
        .collect();
    let budget = (cfg.layout_budget / combos.len().max(1)).max(8);
    let mut out = Vec::new();
    for (ell, t) in combos {
        let shape = LShape::new(n, t, t)?;
        let square = Rect::new(t, t, n - t, n - t);
        let short: Vec<Item> = inst
            .items
            .iter()
            .filter(|it| it.long_side() <= ell)
            .copied()
            .collect();
        let layouts = layouts_within(square, &short, inst.rotations, eps, cfg, budget)?;
        if layouts.is_empty() {
            out.push(LCCandidate::new(
                ell,
                shape,
                ContainerLayout::empty(knapsack),
            )?);
        }
        for l in layouts {
            out.push(LCCandidate::new(
                ell,
                shape,
                ContainerLayout::new(knapsack, l.containers)?,
            )?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containers::{Container, ContainerKind};
    use crate::rat;
    use crate::solvers::solve_cardinality;

    #[test]
    fn huge_profit_long_item_is_packed() {
        let items = vec![
            Item::new(0, 9, 6, 100),
            Item::new(1, 5, 5, 1),
            Item::new(2, 5, 5, 1),
        ];
        let inst = Instance::new(10, false, items).unwrap();
        let r = solve_weighted(&inst, rat(1, 13)).unwrap();
        assert_eq!(r.profit, 100);
    }

    #[test]
    fn empty_gives_zero() {
        let r = solve_weighted(&Instance::new(7, false, vec![]).unwrap(), rat(1, 13)).unwrap();
        assert_eq!(r.profit, 0);
    }

    #[test]
    fn container_may_not_cross_the_l() {
        let shape = LShape::new(10, 2, 2).unwrap();
        let bad = ContainerLayout::new(
            Rect::new(0, 0, 10, 10),
            vec![Container::new(ContainerKind::Horizontal, 1, 2, 3, 3)],
        )
        .unwrap();
        assert!(LCCandidate::new(6, shape, bad).is_err());
        assert!(
            LCCandidate::new(5, shape, ContainerLayout::empty(Rect::new(0, 0, 10, 10))).is_err()
        );
    }

    #[test]
    fn thresholds_and_thicknesses() {
        let items = vec![
            Item::new(0, 9, 2, 1),
            Item::new(1, 3, 7, 1),
            Item::new(2, 2, 2, 1),
        ];
        let inst = Instance::new(12, false, items).unwrap();
        assert_eq!(thresholds(&inst), vec![7, 9, 12]);
        assert_eq!(thicknesses(&inst, 7, rat(1, 4)), vec![0, 2]);
        assert_eq!(thicknesses(&inst, 6, rat(1, 4)), vec![0, 2, 5]);
    }

    #[test]
    fn unit_profits_never_lose_to_cardinality() {
        let items: Vec<Item> = [(9, 4), (4, 11), (5, 5), (3, 8), (12, 2), (6, 6), (2, 2)]
            .iter()
            .enumerate()
            .map(|(k, &(w, h))| Item::new(k as u64, w, h, 1))
            .collect();
        let inst = Instance::new(15, false, items).unwrap();
        let w = solve_weighted(&inst, rat(1, 13)).unwrap();
        let c = solve_cardinality(&inst, rat(1, 13)).unwrap();
        assert!(w.profit >= c.profit);
    }
}
