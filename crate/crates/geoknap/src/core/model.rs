use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ItemId = u64;

/// An open axis-parallel rectangle to be packed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Item {
    pub id: ItemId,
    pub w: i64,
    pub h: i64,
    pub p: i64,
}

impl Item {
    pub fn new(id: ItemId, w: i64, h: i64, p: i64) -> Self {
        Item { id, w, h, p }
    }

    pub fn area(&self) -> i64 {
        self.w * self.h
    }

    /// The same item turned by 90 degrees.
    pub fn rotated(&self) -> Item {
        Item {
            id: self.id,
            w: self.h,
            h: self.w,
            p: self.p,
        }
    }

    pub fn long_side(&self) -> i64 {
        self.w.max(self.h)
    }

    pub fn short_side(&self) -> i64 {
        self.w.min(self.h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(rename = "n")]
    pub n: i64,
    pub rotations: bool,
    pub items: Vec<Item>,
}

impl Instance {
    /// Builds an instance after checking ids, side lengths and N.
    pub fn new(n: i64, rotations: bool, items: Vec<Item>) -> Result<Self> {
        let inst = Instance {
            n,
            rotations,
            items,
        };
        inst.check()?;
        Ok(inst)
    }

    pub fn check(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::Input(format!(
                "knapsack side must be positive, got {}",
                self.n
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for it in &self.items {
            if !seen.insert(it.id) {
                return Err(Error::Input(format!("duplicate item id {}", it.id)));
            }
            if it.w < 1 || it.h < 1 || it.p < 0 {
                return Err(Error::Input(format!(
                    "item {} has a non-positive side or negative profit",
                    it.id
                )));
            }
            if it.w > self.n || it.h > self.n {
                return Err(Error::Input(format!(
                    "item {} does not fit a {}x{} knapsack",
                    it.id, self.n, self.n
                )));
            }
        }
        Ok(())
    }

    pub fn item(&self, id: ItemId) -> Option<&Item> {
        self.items.iter().find(|it| it.id == id)
    }

    pub fn by_id(&self) -> BTreeMap<ItemId, Item> {
        self.items.iter().map(|it| (it.id, *it)).collect()
    }

    pub fn total_profit(&self) -> i64 {
        self.items.iter().map(|it| it.p).sum()
    }

    /// The knapsack as a region anchored at the origin.
    pub fn knapsack(&self) -> Rect {
        Rect::new(0, 0, self.n, self.n)
    }

    /// Same items, different flag.
    pub fn with_rotations(&self, rotations: bool) -> Instance {
        Instance {
            n: self.n,
            rotations,
            items: self.items.clone(),
        }
    }

    pub fn subset(&self, ids: &[ItemId]) -> Instance {
        let keep: std::collections::BTreeSet<_> = ids.iter().copied().collect();
        Instance {
            n: self.n,
            rotations: self.rotations,
            items: self
                .items
                .iter()
                .filter(|it| keep.contains(&it.id))
                .copied()
                .collect(),
        }
    }
}

/// Axis-parallel box given by its lower-left corner and size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rect {
    pub x: i64,
    pub y: i64,
    pub w: i64,
    pub h: i64,
}

impl Rect {
    pub fn new(x: i64, y: i64, w: i64, h: i64) -> Self {
        Rect { x, y, w, h }
    }

    pub fn right(&self) -> i64 {
        self.x + self.w
    }

    pub fn top(&self) -> i64 {
        self.y + self.h
    }

    pub fn area(&self) -> i64 {
        self.w * self.h
    }

    /// Interior intersection; shared edges do not count.
    pub fn overlaps(&self, o: &Rect) -> bool {
        self.w > 0
            && self.h > 0
            && o.w > 0
            && o.h > 0
            && self.x < o.right()
            && o.x < self.right()
            && self.y < o.top()
            && o.y < self.top()
    }

    pub fn contains(&self, o: &Rect) -> bool {
        o.x >= self.x && o.y >= self.y && o.right() <= self.right() && o.top() <= self.top()
    }

    pub fn transposed(&self) -> Rect {
        Rect::new(self.y, self.x, self.h, self.w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Placement {
    pub id: ItemId,
    pub x: i64,
    pub y: i64,
    #[serde(rename = "rot")]
    pub rotated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    pub region: Rect,
    pub placements: Vec<Placement>,
}

impl Packing {
    pub fn empty(region: Rect) -> Self {
        Packing {
            region,
            placements: Vec::new(),
        }
    }

    /// Sorts placements by item id, the canonical order.
    pub fn canonicalize(&mut self) {
        self.placements.sort();
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn ids(&self) -> Vec<ItemId> {
        self.placements.iter().map(|p| p.id).collect()
    }

    /// Total profit; placements with unknown ids contribute nothing.
    pub fn profit(&self, inst: &Instance) -> i64 {
        let by = inst.by_id();
        self.placements
            .iter()
            .filter_map(|p| by.get(&p.id))
            .map(|it| it.p)
            .sum()
    }

    /// Footprints of the placements, in placement order.
    pub fn placed(&self, inst: &Instance) -> Result<Vec<Placed>> {
        let by = inst.by_id();
        self.placements
            .iter()
            .map(|pl| {
                let it = by
                    .get(&pl.id)
                    .ok_or_else(|| Error::Structural(format!("unknown item id {}", pl.id)))?;
                let (w, h) = if pl.rotated {
                    (it.h, it.w)
                } else {
                    (it.w, it.h)
                };
                Ok(Placed {
                    id: pl.id,
                    x: pl.x,
                    y: pl.y,
                    w,
                    h,
                })
            })
            .collect()
    }

    /// Packing of footprints taken in their input orientation.
    pub fn unrotated(region: Rect, placed: &[Placed]) -> Packing {
        let placements = placed
            .iter()
            .map(|p| Placement {
                id: p.id,
                x: p.x,
                y: p.y,
                rotated: false,
            })
            .collect();
        Packing { region, placements }.canonical()
    }

    /// Builds a packing from footprints; an item counts as rotated when its
    /// footprint differs from its input orientation.
    pub fn from_placed(region: Rect, placed: &[Placed], inst: &Instance) -> Result<Packing> {
        let by = inst.by_id();
        let mut placements = Vec::with_capacity(placed.len());
        for pr in placed {
            let it = by
                .get(&pr.id)
                .ok_or_else(|| Error::Structural(format!("unknown item id {}", pr.id)))?;
            let rotated = if (pr.w, pr.h) == (it.w, it.h) {
                false
            } else if (pr.w, pr.h) == (it.h, it.w) {
                true
            } else {
                return Err(Error::Internal(format!(
                    "footprint {}x{} does not match item {} ({}x{})",
                    pr.w, pr.h, it.id, it.w, it.h
                )));
            };
            placements.push(Placement {
                id: pr.id,
                x: pr.x,
                y: pr.y,
                rotated,
            });
        }
        Ok(Packing { region, placements }.canonical())
    }
}

/// A placed footprint: the rectangle an item occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placed {
    pub id: ItemId,
    pub x: i64,
    pub y: i64,
    pub w: i64,
    pub h: i64,
}

impl Placed {
    pub fn new(id: ItemId, x: i64, y: i64, w: i64, h: i64) -> Self {
        Placed { id, x, y, w, h }
    }

    pub fn at(item: &Item, x: i64, y: i64) -> Self {
        Placed {
            id: item.id,
            x,
            y,
            w: item.w,
            h: item.h,
        }
    }

    pub fn rect(&self) -> Rect {
        Rect::new(self.x, self.y, self.w, self.h)
    }

    pub fn right(&self) -> i64 {
        self.x + self.w
    }

    pub fn top(&self) -> i64 {
        self.y + self.h
    }

    pub fn area(&self) -> i64 {
        self.w * self.h
    }

    pub fn overlaps(&self, o: &Placed) -> bool {
        self.rect().overlaps(&o.rect())
    }

    pub fn translated(&self, dx: i64, dy: i64) -> Placed {
        Placed {
            x: self.x + dx,
            y: self.y + dy,
            ..*self
        }
    }

    /// Mirror across the diagonal; the footprint turns by 90 degrees.
    pub fn transposed(&self) -> Placed {
        Placed {
            id: self.id,
            x: self.y,
            y: self.x,
            w: self.h,
            h: self.w,
        }
    }

    /// Mirror left-right inside a region of the given width starting at 0.
    pub fn flipped_x(&self, width: i64) -> Placed {
        Placed {
            x: width - self.x - self.w,
            ..*self
        }
    }

    /// Mirror top-bottom inside a region of the given height starting at 0.
    pub fn flipped_y(&self, height: i64) -> Placed {
        Placed {
            y: height - self.y - self.h,
            ..*self
        }
    }
}

/// True when no two footprints share interior points and all lie in `region`.
pub fn placed_is_valid(region: &Rect, placed: &[Placed]) -> bool {
    if placed
        .iter()
        .any(|p| p.w < 1 || p.h < 1 || !region.contains(&p.rect()))
    {
        return false;
    }
    let mut ids = std::collections::BTreeSet::new();
    if !placed.iter().all(|p| ids.insert(p.id)) {
        return false;
    }
    first_overlap(placed).is_none()
}

/// First overlapping pair found by a sweep over x.
pub fn first_overlap(placed: &[Placed]) -> Option<(ItemId, ItemId)> {
    let mut order: Vec<usize> = (0..placed.len()).collect();
    order.sort_by_key(|&i| (placed[i].x, placed[i].id));
    let mut active: Vec<usize> = Vec::new();
    for &i in &order {
        let a = &placed[i];
        active.retain(|&j| placed[j].right() > a.x);
        for &j in &active {
            if a.overlaps(&placed[j]) {
                let (p, q) = (a.id.min(placed[j].id), a.id.max(placed[j].id));
                return Some((p, q));
            }
        }
        active.push(i);
    }
    None
}

pub fn placed_profit(placed: &[Placed], by_id: &BTreeMap<ItemId, Item>) -> i64 {
    placed
        .iter()
        .filter_map(|p| by_id.get(&p.id))
        .map(|it| it.p)
        .sum()
}
