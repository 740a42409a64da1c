use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::model::{Instance, Item, ItemId};
use crate::error::{Error, Result};
use crate::Rat;

/// A class threshold, as a fraction of N.
///
/// Chain values fall doubly exponentially; once a value drops below 1/N every
/// integer side exceeds it, so it is kept symbolically instead of as a huge
/// exact fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    Value(BigRational),
    BelowGrid,
}

impl Threshold {
    /// `side <= self * n`.
    pub fn admits(&self, side: i64, n: i64) -> bool {
        match self {
            Threshold::Value(t) => {
                BigRational::from_integer(BigInt::from(side)) <= t * BigInt::from(n)
            }
            Threshold::BelowGrid => false,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Value(t) => write!(f, "{t}"),
            Threshold::BelowGrid => write!(f, "<1/N"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ItemClass {
    Small,
    Large,
    Horizontal,
    Vertical,
    Intermediate,
}

#[derive(Clone, Debug)]
pub struct ItemClasses {
    pub eps_large: Threshold,
    pub eps_small: Threshold,
    /// Position of the chosen pair in the candidate chain (1-based, large side).
    pub pair_index: usize,
    pub intermediate_profit: i64,
    pub classes: BTreeMap<ItemId, ItemClass>,
}

impl ItemClasses {
    pub fn of(&self, id: ItemId) -> Option<ItemClass> {
        self.classes.get(&id).copied()
    }

    pub fn ids_in(&self, class: ItemClass) -> Vec<ItemId> {
        self.classes
            .iter()
            .filter(|(_, c)| **c == class)
            .map(|(id, _)| *id)
            .collect()
    }
}

/// Class of one item for a given threshold pair.
pub fn class_of(it: &Item, n: i64, large: &Threshold, small: &Threshold) -> ItemClass {
    let w_small = small.admits(it.w, n);
    let h_small = small.admits(it.h, n);
    let w_large = !large.admits(it.w, n);
    let h_large = !large.admits(it.h, n);
    if w_small && h_small {
        ItemClass::Small
    } else if w_large && h_large {
        ItemClass::Large
    } else if w_large && h_small {
        ItemClass::Horizontal
    } else if h_large && w_small {
        ItemClass::Vertical
    } else {
        ItemClass::Intermediate
    }
}

fn to_big(r: Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// The descending chain `c_1 = f(eps)`, `c_{i+1} = f(c_i)` of `ceil(2/eps) + 1` values.
pub fn threshold_chain(
    eps: Rat,
    n: i64,
    f: &dyn Fn(&BigRational) -> BigRational,
) -> Result<Vec<Threshold>> {
    if eps <= Rat::zero() || eps >= Rat::one() {
        return Err(Error::Parameter(format!(
            "eps must lie in (0,1), got {eps}"
        )));
    }
    let k = (Rat::from_integer(2) / eps).ceil().to_integer() as usize;
    let grid = BigRational::new(BigInt::one(), BigInt::from(n.max(1)));
    let mut chain = Vec::with_capacity(k + 1);
    let mut cur = to_big(eps);
    for _ in 0..=k {
        if cur < grid {
            chain.push(Threshold::BelowGrid);
            continue;
        }
        let next = f(&cur);
        if !next.is_positive() || next >= cur {
            return Err(Error::Parameter(format!(
                "f must map the chain into (0, x); f({cur}) = {next}"
            )));
        }
        chain.push(Threshold::Value(next.clone()));
        cur = next;
    }
    Ok(chain)
}

/// `f(x) = eps * x^3`.
pub fn default_shrink(eps: Rat) -> impl Fn(&BigRational) -> BigRational {
    let e = to_big(eps);
    move |x: &BigRational| &e * x * x * x
}

/// Picks the adjacent chain pair that minimizes the profit of items with a
/// side in `(eps_small N, eps_large N]`, and classifies every item.
pub fn classify_items(
    inst: &Instance,
    eps: Rat,
    f: &dyn Fn(&BigRational) -> BigRational,
) -> Result<ItemClasses> {
    let chain = threshold_chain(eps, inst.n, f)?;
    let n = inst.n;
    let mid_profit = |large: &Threshold, small: &Threshold| -> i64 {
        inst.items
            .iter()
            .filter(|it| {
                [it.w, it.h]
                    .iter()
                    .any(|&s| !small.admits(s, n) && large.admits(s, n))
            })
            .map(|it| it.p)
            .sum()
    };
    let mut best: Option<(i64, usize)> = None;
    for i in 0..chain.len() - 1 {
        let p = mid_profit(&chain[i], &chain[i + 1]);
        if best.is_none_or(|(bp, _)| p < bp) {
            best = Some((p, i));
        }
    }
    let (intermediate_profit, i) = best.expect("chain has at least two values");
    let (large, small) = (chain[i].clone(), chain[i + 1].clone());
    let classes = inst
        .items
        .iter()
        .map(|it| (it.id, class_of(it, n, &large, &small)))
        .collect();
    Ok(ItemClasses {
        eps_large: large,
        eps_small: small,
        pair_index: i + 1,
        intermediate_profit,
        classes,
    })
}

pub fn classify_items_default(inst: &Instance, eps: Rat) -> Result<ItemClasses> {
    let f = default_shrink(eps);
    classify_items(inst, eps, &f)
}
