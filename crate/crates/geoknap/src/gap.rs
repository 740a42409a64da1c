//! Maximum generalized assignment with a constant number of bins.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{resource, Error, Result};
use crate::Rat;

/// Size used for "this item can never go into this bin".
pub const NEVER: i64 = i64::MAX / 4;

/// Bins with capacities; `sizes[i][j]` and `profits[i][j]` are item `i` in bin `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapInstance {
    pub capacities: Vec<i64>,
    pub sizes: Vec<Vec<i64>>,
    pub profits: Vec<Vec<i64>>,
}

/// `bins[i]` is the bin of item `i`, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub bins: Vec<Option<usize>>,
}

impl Assignment {
    pub fn unassigned(n: usize) -> Self {
        Assignment {
            bins: vec![None; n],
        }
    }

    pub fn items_in(&self, bin: usize) -> Vec<usize> {
        (0..self.bins.len())
            .filter(|&i| self.bins[i] == Some(bin))
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GapConfig {
    /// Largest `(k+1)^n` the oracle will enumerate.
    pub oracle_cap: u128,
    /// Largest `prod (C_j + 1)` the DP table may have.
    pub dp_cap: u128,
    /// Largest number of guessed large-item sets in the PTAS.
    pub guess_budget: u128,
}

impl Default for GapConfig {
    fn default() -> Self {
        GapConfig {
            oracle_cap: 20_000_000,
            dp_cap: 4_000_000,
            guess_budget: 2_000_000,
        }
    }
}

impl GapInstance {
    pub fn new(capacities: Vec<i64>, sizes: Vec<Vec<i64>>, profits: Vec<Vec<i64>>) -> Result<Self> {
        let g = GapInstance {
            capacities,
            sizes,
            profits,
        };
        g.check()?;
        Ok(g)
    }

    pub fn k(&self) -> usize {
        self.capacities.len()
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn check(&self) -> Result<()> {
        if self.capacities.is_empty() {
            return Err(Error::Input("at least one bin is required".into()));
        }
        if self.capacities.iter().any(|&c| c < 0) {
            return Err(Error::Input("capacities must be non-negative".into()));
        }
        if self.profits.len() != self.sizes.len() {
            return Err(Error::Input(
                "sizes and profits list different item counts".into(),
            ));
        }
        let k = self.k();
        for (i, (s, p)) in self.sizes.iter().zip(&self.profits).enumerate() {
            if s.len() != k || p.len() != k {
                return Err(Error::Input(format!(
                    "item {i} must list one size and profit per bin"
                )));
            }
            if s.iter().chain(p).any(|&v| v < 0) {
                return Err(Error::Input(format!(
                    "item {i} has a negative size or profit"
                )));
            }
        }
        Ok(())
    }

    pub fn profit_of(&self, a: &Assignment) -> i64 {
        a.bins
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.map(|j| self.profits[i][j]))
            .sum()
    }

    pub fn loads(&self, a: &Assignment) -> Vec<i64> {
        let mut load = vec![0i64; self.k()];
        for (i, b) in a.bins.iter().enumerate() {
            if let Some(j) = b {
                load[*j] = load[*j].saturating_add(self.sizes[i][*j]);
            }
        }
        load
    }

    /// Every bin load is at most its capacity.
    pub fn is_feasible(&self, a: &Assignment) -> bool {
        a.bins.len() == self.n()
            && self
                .loads(a)
                .iter()
                .zip(&self.capacities)
                .all(|(l, c)| l <= c)
    }

    /// Every bin load is at most `factor` times its capacity.
    pub fn is_feasible_scaled(&self, a: &Assignment, factor: Rat) -> bool {
        a.bins.len() == self.n()
            && self
                .loads(a)
                .iter()
                .zip(&self.capacities)
                .all(|(&l, &c)| Rat::from_integer(l) <= factor * Rat::from_integer(c))
    }
}

/// Exact optimum by enumerating every assignment.
pub fn gap_oracle(g: &GapInstance, cfg: &GapConfig) -> Result<(i64, Assignment)> {
    g.check()?;
    let (n, k) = (g.n(), g.k());
    let total = (k as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > cfg.oracle_cap {
        return Err(resource("gap oracle assignments", total, cfg.oracle_cap));
    }
    let mut best = (0i64, Assignment::unassigned(n));
    let mut cur = vec![None; n];
    let mut load = vec![0i64; k];
    fn rec(
        g: &GapInstance,
        i: usize,
        profit: i64,
        cur: &mut Vec<Option<usize>>,
        load: &mut Vec<i64>,
        best: &mut (i64, Assignment),
    ) {
        if i == g.n() {
            if profit > best.0 {
                *best = (profit, Assignment { bins: cur.clone() });
            }
            return;
        }
        cur[i] = None;
        rec(g, i + 1, profit, cur, load, best);
        for j in 0..g.k() {
            let s = g.sizes[i][j];
            if load[j] + s <= g.capacities[j] {
                load[j] += s;
                cur[i] = Some(j);
                rec(g, i + 1, profit + g.profits[i][j], cur, load, best);
                load[j] -= s;
            }
        }
        cur[i] = None;
    }
    rec(g, 0, 0, &mut cur, &mut load, &mut best);
    Ok(best)
}

/// Mixed-radix index of a capacity vector.
struct Grid {
    dims: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

impl Grid {
    fn new(caps: &[i64], cap: u128) -> Result<Self> {
        let mut strides = Vec::with_capacity(caps.len());
        let mut len: u128 = 1;
        for &c in caps {
            strides.push(len as usize);
            len = len.saturating_mul(c.max(0) as u128 + 1);
        }
        if len > cap {
            return Err(resource("gap dp states", len, cap));
        }
        Ok(Grid {
            dims: caps.iter().map(|&c| c.max(0) as usize + 1).collect(),
            strides,
            len: len as usize,
        })
    }
}

/// Exact optimum by the dynamic program over per-bin remaining capacities.
pub fn gap_dp(g: &GapInstance, cfg: &GapConfig) -> Result<(i64, Assignment)> {
    g.check()?;
    let (n, k) = (g.n(), g.k());
    let grid = Grid::new(&g.capacities, cfg.dp_cap)?;
    // prev[c] = best profit of the items seen so far within capacity vector c.
    let mut prev = vec![0i64; grid.len];
    let mut choice = vec![0u8; n * grid.len];
    let mut coords = vec![0usize; k];
    for i in 0..n {
        let mut next = prev.clone();
        coords.iter_mut().for_each(|c| *c = 0);
        for idx in 0..grid.len {
            let mut best = prev[idx];
            let mut pick = 0u8;
            for j in 0..k {
                let s = g.sizes[i][j];
                if s <= coords[j] as i64 {
                    let v = g.profits[i][j] + prev[idx - s as usize * grid.strides[j]];
                    if v > best {
                        best = v;
                        pick = j as u8 + 1;
                    }
                }
            }
            next[idx] = best;
            choice[i * grid.len + idx] = pick;
            for (d, c) in coords.iter_mut().enumerate() {
                *c += 1;
                if *c < grid.dims[d] {
                    break;
                }
                *c = 0;
            }
        }
        prev = next;
    }
    let mut idx = grid.len - 1;
    let mut bins = vec![None; n];
    for i in (0..n).rev() {
        let pick = choice[i * grid.len + idx];
        if pick > 0 {
            let j = pick as usize - 1;
            bins[i] = Some(j);
            idx -= g.sizes[i][j] as usize * grid.strides[j];
        }
    }
    Ok((prev[grid.len - 1], Assignment { bins }))
}

/// Rounds one bin for the augmented DP; returns scaled sizes and capacity.
fn round_bin(sizes: impl Iterator<Item = i64>, cap: Rat, n: usize, eps: Rat) -> (Vec<i64>, i64) {
    let aug = (Rat::one() + eps) * cap;
    if eps * cap < Rat::from_integer(n as i64) {
        // Granularity would drop below one unit; exact sizes are already small.
        let c = aug.floor().to_integer();
        return (sizes.map(|s| if s > c { NEVER } else { s }).collect(), c);
    }
    let mu = eps * cap / Rat::from_integer(n as i64);
    let c = (aug / mu).floor().to_integer();
    let scaled = sizes
        .map(|s| {
            if Rat::from_integer(s) > aug {
                NEVER
            } else {
                (Rat::from_integer(s) / mu).ceil().to_integer()
            }
        })
        .collect();
    (scaled, c)
}

/// DP on rounded sizes with rational base capacities `caps`.
pub(crate) fn augmented_with_caps(
    g: &GapInstance,
    caps: &[Rat],
    eps: Rat,
    cfg: &GapConfig,
) -> Result<(i64, Assignment)> {
    let (n, k) = (g.n(), g.k());
    if n == 0 {
        return Ok((0, Assignment::unassigned(0)));
    }
    let mut sizes = vec![vec![0i64; k]; n];
    let mut rounded_caps = Vec::with_capacity(k);
    for j in 0..k {
        let (col, c) = round_bin((0..n).map(|i| g.sizes[i][j]), caps[j], n, eps);
        for i in 0..n {
            sizes[i][j] = col[i];
        }
        rounded_caps.push(c.max(0));
    }
    let rounded = GapInstance {
        capacities: rounded_caps,
        sizes,
        profits: g.profits.clone(),
    };
    gap_dp(&rounded, cfg)
}

/// Optimal profit for the original capacities, packed into `(1+eps)` times them.
pub fn gap_augmented(g: &GapInstance, eps: Rat, cfg: &GapConfig) -> Result<(i64, Assignment)> {
    g.check()?;
    if eps <= Rat::zero() {
        return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
    }
    let caps: Vec<Rat> = g.capacities.iter().map(|&c| Rat::from_integer(c)).collect();
    augmented_with_caps(g, &caps, eps, cfg)
}

/// Guesses the large items of every bin, then fills the residual capacity
/// (shrunk by `1-eps`) with the augmented DP. Feasible for the original capacities.
pub fn gap_ptas(g: &GapInstance, eps: Rat, cfg: &GapConfig) -> Result<(i64, Assignment)> {
    g.check()?;
    if eps <= Rat::zero() || eps >= Rat::new(1, 3) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1/3), got {eps}"
        )));
    }
    let (n, k) = (g.n(), g.k());
    let per_bin = (Rat::one() / (eps * eps)).floor().to_integer() as usize;
    let best_profit: Vec<i64> = (0..n)
        .map(|i| g.profits[i].iter().copied().max().unwrap_or(0))
        .collect();

    struct Search<'a> {
        g: &'a GapInstance,
        eps: Rat,
        cfg: &'a GapConfig,
        per_bin: usize,
        best_profit: Vec<i64>,
        guesses: u128,
        best: (i64, Assignment),
    }

    impl Search<'_> {
        fn finish(&mut self, cur: &[Option<usize>], load: &[i64], fixed: i64) -> Result<()> {
            let (n, k) = (self.g.n(), self.g.k());
            let rest: Vec<usize> = (0..n).filter(|&i| cur[i].is_none()).collect();
            let bound: i64 = fixed + rest.iter().map(|&i| self.best_profit[i]).sum::<i64>();
            if bound <= self.best.0 {
                return Ok(());
            }
            let residual = GapInstance {
                capacities: (0..k).map(|j| self.g.capacities[j] - load[j]).collect(),
                sizes: rest.iter().map(|&i| self.g.sizes[i].clone()).collect(),
                profits: rest.iter().map(|&i| self.g.profits[i].clone()).collect(),
            };
            let caps: Vec<Rat> = residual
                .capacities
                .iter()
                .map(|&r| (Rat::one() - self.eps) * Rat::from_integer(r))
                .collect();
            let (p, a) = augmented_with_caps(&residual, &caps, self.eps, self.cfg)?;
            if fixed + p > self.best.0 {
                let mut bins = cur.to_vec();
                for (t, &i) in rest.iter().enumerate() {
                    bins[i] = a.bins[t];
                }
                self.best = (fixed + p, Assignment { bins });
            }
            Ok(())
        }

        fn rec(
            &mut self,
            i: usize,
            cur: &mut Vec<Option<usize>>,
            load: &mut Vec<i64>,
            count: &mut Vec<usize>,
            fixed: i64,
        ) -> Result<()> {
            if i == self.g.n() {
                self.guesses += 1;
                if self.guesses > self.cfg.guess_budget {
                    return Err(resource(
                        "gap ptas guesses",
                        self.guesses,
                        self.cfg.guess_budget,
                    ));
                }
                return self.finish(cur, load, fixed);
            }
            self.rec(i + 1, cur, load, count, fixed)?;
            for j in 0..self.g.k() {
                let s = self.g.sizes[i][j];
                if count[j] < self.per_bin && load[j] + s <= self.g.capacities[j] {
                    cur[i] = Some(j);
                    load[j] += s;
                    count[j] += 1;
                    self.rec(i + 1, cur, load, count, fixed + self.g.profits[i][j])?;
                    count[j] -= 1;
                    load[j] -= s;
                    cur[i] = None;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        g,
        eps,
        cfg,
        per_bin,
        best_profit,
        guesses: 0,
        best: (0, Assignment::unassigned(n)),
    };
    search.rec(0, &mut vec![None; n], &mut vec![0; k], &mut vec![0; k], 0)?;
    let best = search.best;
    if !g.is_feasible(&best.1) {
        return Err(Error::Internal("gap ptas produced an over-full bin".into()));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn single_bin(cap: i64, items: &[(i64, i64)]) -> GapInstance {
        GapInstance::new(
            vec![cap],
            items.iter().map(|&(s, _)| vec![s]).collect(),
            items.iter().map(|&(_, p)| vec![p]).collect(),
        )
        .unwrap()
    }

    #[test]
    fn oracle_picks_best_subset() {
        let g = single_bin(7, &[(3, 4), (4, 5), (5, 6)]);
        let (p, a) = gap_oracle(&g, &GapConfig::default()).unwrap();
        assert_eq!(p, 9);
        assert_eq!(a.bins, vec![Some(0), Some(0), None]);
    }

    #[test]
    fn empty_instances_are_zero() {
        let g = GapInstance::new(vec![5], vec![], vec![]).unwrap();
        let cfg = GapConfig::default();
        assert_eq!(gap_oracle(&g, &cfg).unwrap().0, 0);
        assert_eq!(gap_dp(&g, &cfg).unwrap().0, 0);
        assert_eq!(gap_augmented(&g, rat(1, 2), &cfg).unwrap().0, 0);
        assert_eq!(gap_ptas(&g, rat(1, 4), &cfg).unwrap().0, 0);
    }

    #[test]
    fn dp_assigns_to_only_fitting_bin() {
        let g = GapInstance::new(vec![2, 5], vec![vec![4, 4]], vec![vec![3, 3]]).unwrap();
        let (p, a) = gap_dp(&g, &GapConfig::default()).unwrap();
        assert_eq!(p, 3);
        assert_eq!(a.bins, vec![Some(1)]);
    }

    #[test]
    fn nothing_fits() {
        let g = GapInstance::new(
            vec![2, 3],
            vec![vec![4, 4], vec![9, 9]],
            vec![vec![3, 3], vec![1, 1]],
        )
        .unwrap();
        assert_eq!(gap_dp(&g, &GapConfig::default()).unwrap().0, 0);
    }

    #[test]
    fn augmentation_admits_slightly_large_item() {
        // mu = 10, rounded size 2, rounded capacity 2.
        let g = single_bin(10, &[(11, 1)]);
        let (p, a) = gap_augmented(&g, rat(1, 1), &GapConfig::default()).unwrap();
        assert_eq!(p, 1);
        assert!(g.is_feasible_scaled(&a, rat(2, 1)));
        assert_eq!(gap_oracle(&g, &GapConfig::default()).unwrap().0, 0);
    }

    #[test]
    fn ptas_single_item_full_profit() {
        let g = single_bin(10, &[(6, 7)]);
        assert_eq!(gap_ptas(&g, rat(1, 4), &GapConfig::default()).unwrap().0, 7);
    }

    #[test]
    fn ptas_zero_profits() {
        let g = single_bin(10, &[(1, 0), (2, 0)]);
        assert_eq!(gap_ptas(&g, rat(1, 4), &GapConfig::default()).unwrap().0, 0);
    }

    #[test]
    fn symmetric_bins_are_interchangeable() {
        let g = GapInstance::new(
            vec![5, 5],
            vec![vec![3, 3], vec![4, 4], vec![2, 2]],
            vec![vec![2, 2], vec![5, 5], vec![1, 1]],
        )
        .unwrap();
        let (p, a) = gap_oracle(&g, &GapConfig::default()).unwrap();
        let swapped = Assignment {
            bins: a.bins.iter().map(|b| b.map(|j| 1 - j)).collect(),
        };
        assert!(g.is_feasible(&swapped));
        assert_eq!(g.profit_of(&swapped), p);
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let g = single_bin(3, &[(1, 1); 10]);
        let cfg = GapConfig {
            oracle_cap: 100,
            ..GapConfig::default()
        };
        assert!(matches!(gap_oracle(&g, &cfg), Err(Error::Resource { .. })));
    }
}
