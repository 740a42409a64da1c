//! Seeded instance and packing generators for tests, benchmarks and the CLI.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::core::{Instance, Item, Packing, Placed, Rect};
use crate::error::{Error, Result};
use crate::steinberg::{area_prefix_select, condition_holds, steinberg_pack};
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Profile {
    /// Sides uniform in `[1, N]`.
    Uniform,
    /// Every item has a side longer than `N/2`.
    LongHeavy,
    /// Both sides at most `N/4`.
    SmallOnly,
    /// Fixed shares of wide, tall, small and medium items.
    MixedSkewed,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Profile::Uniform),
            "long-heavy" => Ok(Profile::LongHeavy),
            "small-only" => Ok(Profile::SmallOnly),
            "mixed" | "mixed-skewed" => Ok(Profile::MixedSkewed),
            _ => Err(Error::Parameter(format!("unknown profile {s:?}"))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Uniform => "uniform",
            Profile::LongHeavy => "long-heavy",
            Profile::SmallOnly => "small-only",
            Profile::MixedSkewed => "mixed",
        })
    }
}

/// Shape classes of the mixed profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShapeClass {
    /// Width above `N/2`.
    Wide,
    /// Height above `N/2`, width at most `N/2`.
    Tall,
    /// Both sides at most `N/4`.
    Small,
    Medium,
}

/// Shares of the mixed profile, in the order wide, tall, small, medium.
pub const MIXED_SHARES: [(ShapeClass, u32); 4] = [
    (ShapeClass::Wide, 30),
    (ShapeClass::Tall, 30),
    (ShapeClass::Small, 20),
    (ShapeClass::Medium, 20),
];

pub fn shape_class(w: i64, h: i64, n: i64) -> ShapeClass {
    if 2 * w > n {
        ShapeClass::Wide
    } else if 2 * h > n {
        ShapeClass::Tall
    } else if 4 * w <= n && 4 * h <= n {
        ShapeClass::Small
    } else {
        ShapeClass::Medium
    }
}

/// Item counts per class for `n` items, by largest remainder.
pub fn class_counts(n: usize) -> Vec<(ShapeClass, usize)> {
    let total: u32 = MIXED_SHARES.iter().map(|s| s.1).sum();
    let mut counts: Vec<(ShapeClass, usize, u64)> = MIXED_SHARES
        .iter()
        .map(|&(c, s)| {
            let exact = n as u64 * s as u64;
            (c, (exact / total as u64) as usize, exact % total as u64)
        })
        .collect();
    let short = n - counts.iter().map(|c| c.1).sum::<usize>();
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by_key(|&k| (std::cmp::Reverse(counts[k].2), k));
    for &k in order.iter().take(short) {
        counts[k].1 += 1;
    }
    counts.into_iter().map(|(c, k, _)| (c, k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n: usize,
    pub big_n: i64,
    pub seed: u64,
    pub profile: Profile,
    pub unit_profit: bool,
    pub rotations: bool,
}

fn side(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo.max(1)..=hi.max(lo.max(1)))
}

fn class_item(rng: &mut ChaCha8Rng, class: ShapeClass, n: i64) -> (i64, i64) {
    let (half, quarter) = (n / 2, n / 4);
    match class {
        ShapeClass::Wide => (side(rng, half + 1, n), side(rng, 1, quarter)),
        ShapeClass::Tall => (side(rng, 1, quarter), side(rng, half + 1, n)),
        ShapeClass::Small => (side(rng, 1, quarter), side(rng, 1, quarter)),
        ShapeClass::Medium => {
            let a = side(rng, quarter + 1, half);
            let b = side(rng, 1, half);
            if rng.gen_bool(0.5) {
                (a, b)
            } else {
                (b, a)
            }
        }
    }
}

/// A random instance; the same configuration always gives the same instance.
pub fn gen_instance(cfg: &GenConfig) -> Result<Instance> {
    let n = cfg.big_n;
    if n < 1 {
        return Err(Error::Parameter(format!(
            "knapsack side must be positive, got {n}"
        )));
    }
    if matches!(cfg.profile, Profile::MixedSkewed | Profile::SmallOnly) && n < 4 {
        return Err(Error::Parameter(format!(
            "profile {} needs N >= 4",
            cfg.profile
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut dims: Vec<(i64, i64)> = match cfg.profile {
        Profile::Uniform => (0..cfg.n)
            .map(|_| (side(&mut rng, 1, n), side(&mut rng, 1, n)))
            .collect(),
        Profile::LongHeavy => (0..cfg.n)
            .map(|_| {
                let long = side(&mut rng, n / 2 + 1, n);
                let other = side(&mut rng, 1, n);
                if rng.gen_bool(0.5) {
                    (long, other)
                } else {
                    (other, long)
                }
            })
            .collect(),
        Profile::SmallOnly => (0..cfg.n)
            .map(|_| class_item(&mut rng, ShapeClass::Small, n))
            .collect(),
        Profile::MixedSkewed => {
            let mut v = Vec::with_capacity(cfg.n);
            for (class, k) in class_counts(cfg.n) {
                for _ in 0..k {
                    v.push(class_item(&mut rng, class, n));
                }
            }
            v.shuffle(&mut rng);
            v
        }
    };
    let items = dims
        .drain(..)
        .enumerate()
        .map(|(k, (w, h))| {
            let p = if cfg.unit_profit {
                1
            } else {
                rng.gen_range(1..=100)
            };
            Item::new(k as u64, w, h, p)
        })
        .collect();
    Instance::new(n, cfg.rotations, items)
}

/// Splits `region` by random guillotine cuts into at most `count` pieces and
/// puts one item in the lower left corner of each.
fn guillotine_fill(rng: &mut ChaCha8Rng, region: Rect, count: usize, out: &mut Vec<Placed>) {
    if region.w < 1 || region.h < 1 || count == 0 {
        return;
    }
    let can_x = region.w >= 2;
    let can_y = region.h >= 2;
    if count == 1 || (!can_x && !can_y) {
        let w = side(rng, (region.w + 1) / 2, region.w);
        let h = side(rng, (region.h + 1) / 2, region.h);
        out.push(Placed::new(out.len() as u64, region.x, region.y, w, h));
        return;
    }
    let left = rng.gen_range(1..count);
    let cut_x = can_x && (!can_y || rng.gen_bool(region.w as f64 / (region.w + region.h) as f64));
    let (a, b) = if cut_x {
        let c = rng.gen_range(1..region.w);
        (
            Rect::new(region.x, region.y, c, region.h),
            Rect::new(region.x + c, region.y, region.w - c, region.h),
        )
    } else {
        let c = rng.gen_range(1..region.h);
        (
            Rect::new(region.x, region.y, region.w, c),
            Rect::new(region.x, region.y + c, region.w, region.h - c),
        )
    };
    guillotine_fill(rng, a, left, out);
    guillotine_fill(rng, b, count - left, out);
}

fn instance_of(
    n: i64,
    rotations: bool,
    placed: &[Placed],
    rng: &mut ChaCha8Rng,
) -> Result<(Instance, Packing)> {
    let items: Vec<Item> = placed
        .iter()
        .map(|p| Item::new(p.id, p.w, p.h, rng.gen_range(1..=20)))
        .collect();
    let inst = Instance::new(n, rotations, items)?;
    let packing = Packing::unrotated(inst.knapsack(), placed);
    Ok((inst, packing))
}

/// A random guillotine packing of up to `count` items. With `avoid_massive`,
/// items are kept below `(1 - eps) N` in at least one side.
pub fn guillotine_packing(
    count: usize,
    n: i64,
    seed: u64,
    rotations: bool,
    avoid_massive: Option<Rat>,
) -> Result<(Instance, Packing)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut placed = Vec::new();
    guillotine_fill(&mut rng, Rect::new(0, 0, n, n), count, &mut placed);
    if let Some(eps) = avoid_massive {
        let cap = ((Rat::from_integer(1) - eps) * n).ceil().to_integer() - 1;
        for p in &mut placed {
            if p.w > cap && p.h > cap {
                p.w = cap.max(1);
            }
        }
    }
    instance_of(n, rotations, &placed, &mut rng)
}

/// Random items packed by Steinberg: the smallest by area that satisfy
/// the area condition for the knapsack.
pub fn steinberg_packing(
    count: usize,
    n: i64,
    seed: u64,
    rotations: bool,
) -> Result<(Instance, Packing)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<Item> = (0..count as u64)
        .map(|k| {
            let (w, h) = if rng.gen_bool(0.5) {
                (side(&mut rng, 1, n), side(&mut rng, 1, (n / 3).max(1)))
            } else {
                (side(&mut rng, 1, (n / 3).max(1)), side(&mut rng, 1, n))
            };
            Item::new(k, w, h, rng.gen_range(1..=20))
        })
        .collect();
    let mut chosen = area_prefix_select(&items, n * n / 2);
    while !chosen.is_empty() && !condition_holds(&chosen, n, n) {
        chosen.pop();
    }
    let packing = steinberg_pack(&chosen, n, n)?;
    let inst = Instance::new(n, rotations, chosen)?;
    Ok((inst, packing))
}

/// Knapsack side of the thin packings.
pub const THIN_N: i64 = 1 << 31;
/// `eps_small` matching [`THIN_N`]: `eps_small * N = 8`.
pub const THIN_EPS_SMALL: (i64, i64) = (1, 1 << 28);

/// A packing at `N = 2^31` whose items are at most 8 wide or high, apart
/// from a few large squares: columns spanning almost the full height, flat
/// items along the top and bottom, and medium items in between. With
/// `fill_bands`, three columns have heights that occupy the first five
/// height bands for `eps = 1/13`, so the construction works in a thin band.
pub fn thin_packing(seed: u64, fill_bands: bool) -> Result<(Instance, Packing)> {
    let n = THIN_N;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut placed: Vec<Placed> = Vec::new();
    let push = |placed: &mut Vec<Placed>, x, y, w, h| {
        let id = placed.len() as u64;
        placed.push(Placed::new(id, x, y, w, h));
    };
    let columns = if fill_bands {
        rng.gen_range(55..=80)
    } else {
        rng.gen_range(5..=40)
    };
    let mut x = 0;
    for _ in 0..columns {
        let w = rng.gen_range(1..=8);
        let r = rng.gen_range(0..=30);
        let y = rng.gen_range(0..=r);
        push(&mut placed, x, y, w, n - r);
        x += w;
    }
    if fill_bands {
        for h in [10_000, 1_000_000, 20_000_000] {
            push(&mut placed, x, 0, 8, n - h);
            x += 8;
        }
    }
    x += 16;
    let flats = rng.gen_range(3..=20);
    let mut bx = x;
    let mut tx = x;
    for k in 0..flats {
        let w = rng.gen_range(1..=1i64 << 24);
        let h = rng.gen_range(1..=8);
        if k % 2 == 0 {
            push(&mut placed, bx, 0, w, h);
            bx += w;
        } else {
            push(&mut placed, tx, n - h, w, h);
            tx += w;
        }
    }
    let mids = rng.gen_range(3..=30);
    let mut mx = x;
    for _ in 0..mids {
        let (w, h) = if rng.gen_bool(0.5) {
            (rng.gen_range(1..=8), rng.gen_range(1..=1i64 << 28))
        } else {
            (rng.gen_range(1..=1i64 << 22), rng.gen_range(1..=8))
        };
        push(&mut placed, mx, n / 4, w, h);
        mx += w;
    }
    for _ in 0..rng.gen_range(0..=2) {
        push(&mut placed, mx, n / 4, 20, 20);
        mx += 20;
    }
    instance_of(n, true, &placed, &mut rng)
}

/// A packing with a massive item of both sides at least `(1 - eps) N` and
/// random guillotine packings in the four margins around it.
pub fn massive_packing(
    n: i64,
    seed: u64,
    eps: Rat,
    per_margin: usize,
) -> Result<(Instance, Packing)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = ((Rat::from_integer(1) - eps) * n).ceil().to_integer();
    let (w, h) = (rng.gen_range(lo..=n), rng.gen_range(lo..=n));
    let (x, y) = (rng.gen_range(0..=n - w), rng.gen_range(0..=n - h));
    let mut placed = vec![Placed::new(0, x, y, w, h)];
    let margins = [
        Rect::new(0, 0, x, n),
        Rect::new(x + w, 0, n - x - w, n),
        Rect::new(x, 0, w, y),
        Rect::new(x, y + h, w, n - y - h),
    ];
    for m in margins {
        let mut part = Vec::new();
        guillotine_fill(&mut rng, m, per_margin, &mut part);
        for p in part {
            let id = placed.len() as u64;
            placed.push(Placed { id, ..p });
        }
    }
    instance_of(n, true, &placed, &mut rng)
}

/// A named list of instances with optional known optima.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub instance: Instance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimum: Option<i64>,
}

impl Corpus {
    pub fn parse(text: &str) -> Result<Corpus> {
        let c: Corpus = crate::core::parse_json(text)?;
        for e in &c.entries {
            e.instance.check()?;
        }
        Ok(c)
    }

    pub fn to_json(&self) -> Result<String> {
        crate::core::to_json(self)
    }
}
