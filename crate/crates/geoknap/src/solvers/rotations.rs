//! Solver with rotations: the weighted families with rotation-aware
//! containers, L-packings with the long items turned, the contraction of
//! the best packing next to a vertical container, and the massive item split.

use crate::core::{Instance, Item, Packing, Placed, Rect};
use crate::error::{Error, Result};
use crate::lpack::LShape;
use crate::Rat;

use super::cardinality::{complete_l, l_pack, offer_base_families, tight_shape, unused};
use super::contraction::resource_contraction_weighted;
use super::fill::bottom_left_fill;
use super::layouts::{best_fills, layouts_within};
use super::massive::{is_massive, massive_item_split};
use super::weighted::offer_lc;
use super::{check_solver_eps, Pool, SolveConfig, SolveReport};

pub fn solve_rotations(inst: &Instance, eps: Rat) -> Result<SolveReport> {
    solve_rotations_with(inst, eps, &SolveConfig::default())
}

pub fn solve_rotations_with(inst: &Instance, eps: Rat, cfg: &SolveConfig) -> Result<SolveReport> {
    check_solver_eps(eps)?;
    inst.check()?;
    if !inst.rotations {
        return Err(Error::Input("instance does not allow rotations".into()));
    }
    let mut pool = Pool::new(inst, cfg);
    offer_base_families(&mut pool, inst, eps, cfg)?;
    offer_lc(&mut pool, inst, eps, cfg)?;
    if inst.items.is_empty() {
        return pool.finish();
    }
    for (name, wide) in [("long-L-wide", true), ("long-L-tall", false)] {
        let turned: Vec<Item> = inst
            .items
            .iter()
            .map(|it| {
                if (it.w >= it.h) == wide || it.w == it.h {
                    *it
                } else {
                    it.rotated()
                }
            })
            .collect();
        let l = l_pack(LShape::full(inst.n), &turned, eps, cfg)?;
        let mut cands = vec![l.clone()];
        cands.extend(complete_l(
            tight_shape(inst.n, &l),
            l,
            &inst.items,
            true,
            eps,
            cfg,
        )?);
        pool.offer(name, cands)?;
    }
    let best = pool.best_placed()?;
    if let Some(c) = contraction_with_strip(inst, &best, eps, cfg)? {
        pool.offer("contraction+strip", vec![c])?;
    }
    pool.offer("massive-split", massive_candidates(inst, eps)?)?;
    pool.finish()
}

/// Contracts `placed` to the left and fills the freed vertical strip with
/// the best container fill of the items left over.
fn contraction_with_strip(
    inst: &Instance,
    placed: &[Placed],
    eps: Rat,
    cfg: &SolveConfig,
) -> Result<Option<Vec<Placed>>> {
    let n = inst.n;
    if placed.iter().any(|p| is_massive(p.w, p.h, n, eps)) {
        return Ok(None);
    }
    let packing = Packing::from_placed(inst.knapsack(), placed, inst)?;
    let c = resource_contraction_weighted(inst, &packing, eps)?;
    let mut out = c.packing.placed(inst)?;
    let w = c.packing.region.w;
    let strip = Rect::new(w, 0, n - w, n);
    let rest = unused(&inst.items, &out);
    let layouts = layouts_within(strip, &rest, true, eps, cfg, (cfg.layout_budget / 8).max(8))?;
    if let Some((_, f)) = best_fills(&rest, true, &layouts, eps, cfg, 1)?
        .into_iter()
        .next()
    {
        out.extend(f);
    }
    Ok(Some(out))
}

/// For each item that can be massive: the item in the corner, everything
/// else filled around it, then split.
fn massive_candidates(inst: &Instance, eps: Rat) -> Result<Vec<Vec<Placed>>> {
    let n = inst.n;
    if eps >= Rat::new(1, 6) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for m in inst
        .items
        .iter()
        .filter(|it| is_massive(it.w, it.h, n, eps))
    {
        let mut placed = vec![Placed::at(m, 0, 0)];
        bottom_left_fill(inst.knapsack(), &mut placed, &inst.items, true);
        let packing = Packing::from_placed(inst.knapsack(), &placed, inst)?;
        let split = massive_item_split(inst, &packing, eps)?;
        for set in split.sets {
            out.push(set.packing.placed(inst)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::validate_packing;
    use crate::rat;
    use crate::solvers::{brute_force_oracle, solve_weighted};

    #[test]
    fn needs_rotations() {
        let inst = Instance::new(5, false, vec![]).unwrap();
        assert!(matches!(
            solve_rotations(&inst, rat(1, 13)),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn empty_gives_zero() {
        let inst = Instance::new(5, true, vec![]).unwrap();
        assert_eq!(solve_rotations(&inst, rat(1, 13)).unwrap().profit, 0);
    }

    #[test]
    fn turning_lets_two_bars_fit() {
        // 9x3 and 3x9 cannot share a 10x10 knapsack unless one is turned.
        let items = vec![Item::new(0, 9, 3, 1), Item::new(1, 3, 9, 1)];
        let inst = Instance::new(10, true, items.clone()).unwrap();
        let r = solve_rotations(&inst, rat(1, 13)).unwrap();
        assert_eq!(r.profit, 2);
        assert_eq!(brute_force_oracle(&inst).unwrap().0, 2);
        assert_eq!(
            brute_force_oracle(&inst.with_rotations(false)).unwrap().0,
            1
        );
        assert!(validate_packing(&inst, &r.best).unwrap().is_ok());
    }

    #[test]
    fn squares_ignore_rotations() {
        let items: Vec<Item> = [4, 3, 5, 2, 6]
            .iter()
            .enumerate()
            .map(|(k, &s)| Item::new(k as u64, s, s, s))
            .collect();
        let fixed = Instance::new(9, false, items).unwrap();
        let a = solve_weighted(&fixed, rat(1, 13)).unwrap();
        let b = solve_weighted(&fixed.with_rotations(true), rat(1, 13)).unwrap();
        assert_eq!(a.best, b.best);
        assert!(
            solve_rotations(&fixed.with_rotations(true), rat(1, 13))
                .unwrap()
                .profit
                >= a.profit
        );
    }

    #[test]
    fn massive_item_candidate() {
        let items = vec![
            Item::new(0, 28, 29, 50),
            Item::new(1, 30, 1, 1),
            Item::new(2, 1, 28, 1),
            Item::new(3, 2, 2, 1),
        ];
        let inst = Instance::new(30, true, items).unwrap();
        let r = solve_rotations(&inst, rat(1, 13)).unwrap();
        assert!(r.profit >= 52);
        assert!(r.candidates.iter().any(|c| c.name == "massive-split"));
    }
}
