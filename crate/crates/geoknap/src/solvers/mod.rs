//! Top-level solvers: the cardinality, weighted and rotation algorithms built
//! from L-packings and container packings, the resource contraction
//! transformations, and the brute-force oracle used to audit them.

mod cardinality;
mod contraction;
mod fill;
mod layouts;
mod massive;
mod oracle;
mod rotations;
mod weighted;

use serde::Serialize;

use crate::containers::ContainerConfig;
use crate::core::{placed_is_valid, validate_packing, Instance, Item, Packing, Placed, Rect};
use crate::error::{Error, Result};
use crate::lpack::{better, LpackConfig};
use crate::Rat;

pub use cardinality::{solve_cardinality, solve_cardinality_with};
pub use contraction::{
    random_strip_delete, resource_contraction_cardinality, resource_contraction_weighted,
    CardinalityCase, CardinalityContraction, StripOrientation, WeightedCase, WeightedContraction,
};
pub use fill::{bottom_left_fill, free_rectangles, nfdh_into_free};
pub use layouts::generate_layouts;
pub use massive::{is_massive, massive_item_split, MassiveSet, MassiveSplit};
pub use oracle::{brute_force_oracle, brute_force_oracle_with};
pub use rotations::{solve_rotations, solve_rotations_with};
pub use weighted::{solve_weighted, solve_weighted_with, LCCandidate};

/// Knobs shared by the top-level solvers.
#[derive(Clone, Debug)]
pub struct SolveConfig {
    /// Container layouts evaluated per region.
    pub layout_budget: usize,
    /// Containers per generated shelf layout.
    pub max_containers: usize,
    /// Summands in candidate container sizes.
    pub size_k: usize,
    /// Largest instance the brute-force oracle accepts.
    pub oracle_cap: usize,
    /// Run the oracle after solving and report the ratio.
    pub run_oracle: bool,
    /// Try to add unpacked items to every candidate at free corner points.
    pub post_fill: bool,
    /// Knapsack side up to which L-packings use the exact integer grid.
    pub exact_l_side: i64,
    /// Seed for layout subsampling.
    pub seed: u64,
    pub containers: ContainerConfig,
    pub lpack: LpackConfig,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            layout_budget: 400,
            max_containers: 4,
            size_k: 2,
            oracle_cap: 8,
            run_oracle: false,
            post_fill: true,
            exact_l_side: 64,
            seed: 0,
            containers: ContainerConfig::default(),
            lpack: LpackConfig::default(),
        }
    }
}

/// Profit of one candidate family, before and after the corner fill.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateScore {
    pub name: String,
    pub profit: i64,
    pub after_fill: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub best: Packing,
    pub profit: i64,
    pub candidates: Vec<CandidateScore>,
    pub oracle: Option<i64>,
    /// `profit / oracle`, 1 when the oracle value is 0.
    pub ratio: Option<f64>,
}

pub(crate) fn check_solver_eps(eps: Rat) -> Result<()> {
    if eps <= Rat::from_integer(0) || eps > Rat::new(1, 13) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1/13], got {eps}"
        )));
    }
    Ok(())
}

/// Collects candidate packings and keeps the best one.
pub(crate) struct Pool<'a> {
    inst: &'a Instance,
    cfg: &'a SolveConfig,
    best: (i64, Packing),
    scores: Vec<CandidateScore>,
}

impl<'a> Pool<'a> {
    pub(crate) fn new(inst: &'a Instance, cfg: &'a SolveConfig) -> Self {
        Pool {
            inst,
            cfg,
            best: (0, Packing::empty(inst.knapsack())),
            scores: Vec::new(),
        }
    }

    pub(crate) fn best_placed(&self) -> Result<Vec<Placed>> {
        self.best.1.placed(self.inst)
    }

    /// Scores a family of candidate packings; each is corner-filled
    /// afterwards when enabled.
    pub(crate) fn offer(&mut self, name: &str, candidates: Vec<Vec<Placed>>) -> Result<()> {
        let region = self.inst.knapsack();
        let by = self.inst.by_id();
        let mut raw_best = 0;
        let mut filled_best = 0;
        for placed in candidates {
            if !placed_is_valid(&region, &placed) {
                return Err(Error::Internal(format!(
                    "candidate {name} is not a valid packing"
                )));
            }
            let raw: i64 = placed.iter().map(|p| by[&p.id].p).sum();
            raw_best = raw_best.max(raw);
            let mut placed = placed;
            if self.cfg.post_fill {
                bottom_left_fill(region, &mut placed, &self.inst.items, self.inst.rotations);
            }
            let packing = Packing::from_placed(region, &placed, self.inst)?;
            let profit = packing.profit(self.inst);
            filled_best = filled_best.max(profit);
            let cand = (profit, packing);
            if better(&cand, &self.best) {
                self.best = cand;
            }
        }
        self.scores.push(CandidateScore {
            name: name.to_string(),
            profit: raw_best,
            after_fill: filled_best,
        });
        Ok(())
    }

    /// Adds the best single item, validates and attaches the oracle.
    pub(crate) fn finish(mut self) -> Result<SolveReport> {
        if let Some(single) = best_single(self.inst) {
            self.offer("single", vec![vec![single]])?;
        }
        let report = validate_packing(self.inst, &self.best.1)?;
        if !report.is_ok() {
            return Err(Error::Internal(format!(
                "best packing is invalid: {report}"
            )));
        }
        let (oracle, ratio) = if self.cfg.run_oracle {
            let (opt, _) = brute_force_oracle_with(self.inst, self.cfg.oracle_cap)?;
            let ratio = if opt == 0 {
                1.0
            } else {
                self.best.0 as f64 / opt as f64
            };
            (Some(opt), Some(ratio))
        } else {
            (None, None)
        };
        Ok(SolveReport {
            best: self.best.1,
            profit: self.best.0,
            candidates: self.scores,
            oracle,
            ratio,
        })
    }
}

/// The most profitable item that fits the knapsack, at the origin.
fn best_single(inst: &Instance) -> Option<Placed> {
    inst.items
        .iter()
        .filter_map(|it| {
            let dims = oriented(it, inst.rotations);
            dims.into_iter()
                .find(|&(w, h)| w <= inst.n && h <= inst.n)
                .map(|(w, h)| (it, w, h))
        })
        .max_by_key(|(it, _, _)| (it.p, std::cmp::Reverse(it.id)))
        .map(|(it, w, h)| Placed::new(it.id, 0, 0, w, h))
}

/// The orientations an item may take.
pub(crate) fn oriented(it: &Item, rotations: bool) -> Vec<(i64, i64)> {
    if rotations && it.w != it.h {
        vec![(it.w, it.h), (it.h, it.w)]
    } else {
        vec![(it.w, it.h)]
    }
}

/// Footprints mirrored across the diagonal.
pub(crate) fn transpose_all(placed: &[Placed]) -> Vec<Placed> {
    placed.iter().map(Placed::transposed).collect()
}

pub(crate) fn region_of(w: i64, h: i64) -> Rect {
    Rect::new(0, 0, w, h)
}
