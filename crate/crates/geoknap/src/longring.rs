//! Long items pushed to the four sides of the knapsack, and the repacking
//! of three of the four resulting stacks into a boundary L.

use std::collections::BTreeMap;

use crate::core::{placed_is_valid, Instance, Item, ItemId, Packing, Placed, Rect};
use crate::error::{Error, Result};
use crate::lpack::{normal_form, LShape};

/// Long items stacked against the sides of an `N x N` knapsack. Each stack
/// lists its items from the knapsack side inwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPacking {
    pub n: i64,
    pub left: Vec<Placed>,
    pub right: Vec<Placed>,
    pub top: Vec<Placed>,
    pub bottom: Vec<Placed>,
    /// The packed items in their input orientation.
    pub items: BTreeMap<ItemId, Item>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Top,
    Right,
    Bottom,
    Left,
}

impl RingPacking {
    pub fn stack(&self, side: Side) -> &[Placed] {
        match side {
            Side::Top => &self.top,
            Side::Right => &self.right,
            Side::Bottom => &self.bottom,
            Side::Left => &self.left,
        }
    }

    pub fn all(&self) -> Vec<Placed> {
        [&self.left, &self.right, &self.top, &self.bottom]
            .into_iter()
            .flatten()
            .copied()
            .collect()
    }

    pub fn profit(&self, side: Side) -> i64 {
        self.stack(side).iter().map(|p| self.items[&p.id].p).sum()
    }

    pub fn total_profit(&self) -> i64 {
        self.items.values().map(|i| i.p).sum()
    }

    fn instance(&self) -> Instance {
        Instance {
            n: self.n,
            rotations: true,
            items: self.items.values().copied().collect(),
        }
    }

    pub fn to_packing(&self) -> Result<Packing> {
        Packing::from_placed(
            Rect::new(0, 0, self.n, self.n),
            &self.all(),
            &self.instance(),
        )
    }
}

fn wide(p: &Placed, n: i64) -> bool {
    2 * p.w > n
}

fn tall(p: &Placed, n: i64) -> bool {
    2 * p.h > n
}

/// Moves every wide item vertically and then every tall item horizontally
/// towards the nearer knapsack side until it hits an item or the side.
pub fn ring_shift(inst: &Instance, packing: &Packing) -> Result<RingPacking> {
    let n = inst.n;
    let mut placed = packing.placed(inst)?;
    if let Some(p) = placed.iter().find(|p| !wide(p, n) && !tall(p, n)) {
        return Err(Error::Input(format!(
            "item {} has no side longer than N/2",
            p.id
        )));
    }
    if !placed_is_valid(&inst.knapsack(), &placed) {
        return Err(Error::Input(
            "ring_shift needs a valid packing of the knapsack".into(),
        ));
    }
    let hor: Vec<usize> = (0..placed.len()).filter(|&k| wide(&placed[k], n)).collect();
    let ver: Vec<usize> = (0..placed.len())
        .filter(|&k| !wide(&placed[k], n))
        .collect();

    // A wide item in the lower half never has a tall item below it and one
    // in the upper half never has one above it, so the side it moves to is
    // fixed by its center.
    push_until_fixpoint(&mut placed, &hor, n, false);
    push_until_fixpoint(&mut placed, &ver, n, true);

    let mut ring = RingPacking {
        n,
        left: vec![],
        right: vec![],
        top: vec![],
        bottom: vec![],
        items: placed
            .iter()
            .map(|p| (p.id, *inst.item(p.id).unwrap()))
            .collect(),
    };
    for &k in &hor {
        let p = placed[k];
        if 2 * p.y + p.h > n {
            ring.top.push(p)
        } else {
            ring.bottom.push(p)
        }
    }
    for &k in &ver {
        let p = placed[k];
        if 2 * p.x + p.w > n {
            ring.right.push(p)
        } else {
            ring.left.push(p)
        }
    }
    ring.bottom.sort_by_key(|p| p.y);
    ring.top.sort_by_key(|p| -p.top());
    ring.left.sort_by_key(|p| p.x);
    ring.right.sort_by_key(|p| -p.right());
    check_flush(&ring)?;
    Ok(ring)
}

/// Moves the given items along one axis; `horizontal` selects x.
fn push_until_fixpoint(placed: &mut [Placed], idx: &[usize], n: i64, horizontal: bool) {
    let get = |p: &Placed| if horizontal { (p.x, p.w) } else { (p.y, p.h) };
    loop {
        let mut moved = false;
        for &k in idx {
            let (pos, len) = get(&placed[k]);
            let towards_far = 2 * pos + len > n;
            // Nearest obstacle in the direction of motion among all items
            // whose extent on the other axis overlaps.
            let me = placed[k];
            let mut target = if towards_far { n - len } else { 0 };
            for (j, o) in placed.iter().enumerate() {
                if j == k {
                    continue;
                }
                let overlap = if horizontal {
                    o.y < me.top() && me.y < o.top()
                } else {
                    o.x < me.right() && me.x < o.right()
                };
                if !overlap {
                    continue;
                }
                let (opos, olen) = get(o);
                if towards_far && opos >= pos + len {
                    target = target.min(opos - len);
                } else if !towards_far && opos + olen <= pos {
                    target = target.max(opos + olen);
                }
            }
            if target != pos {
                if horizontal {
                    placed[k].x = target;
                } else {
                    placed[k].y = target;
                }
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
}

fn check_flush(ring: &RingPacking) -> Result<()> {
    let n = ring.n;
    let chain = |s: &[Placed], start: i64, step: &dyn Fn(&Placed) -> (i64, i64)| {
        let mut cur = start;
        for p in s {
            let (at, next) = step(p);
            if at != cur {
                return false;
            }
            cur = next;
        }
        true
    };
    let ok = chain(&ring.bottom, 0, &|p| (p.y, p.top()))
        && chain(&ring.top, n, &|p| (p.top(), p.y))
        && chain(&ring.left, 0, &|p| (p.x, p.right()))
        && chain(&ring.right, n, &|p| (p.right(), p.x));
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(
            "ring stacks are not flush against the knapsack sides".into(),
        ))
    }
}

/// The L packing built from a ring after dropping its cheapest stack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingL {
    pub packing: Packing,
    pub profit: i64,
    pub shape: LShape,
    pub removed: Side,
}

/// Maps footprints so that `side` becomes the top side, and back.
#[derive(Clone, Copy)]
struct Frame {
    side: Side,
    n: i64,
}

impl Frame {
    fn to_work(self, p: Placed) -> Placed {
        match self.side {
            Side::Top => p,
            Side::Right => p.transposed(),
            Side::Bottom => p.flipped_y(self.n),
            Side::Left => p.transposed().flipped_y(self.n),
        }
    }
}

/// Drops the least profitable stack and repacks the other three into a
/// boundary L whose arms are as thick as the kept stacks.
pub fn ring_to_boundary_l(ring: &RingPacking) -> Result<RingL> {
    let n = ring.n;
    let sides = [Side::Top, Side::Right, Side::Bottom, Side::Left];
    let removed = *sides.iter().min_by_key(|&&s| (ring.profit(s), s)).unwrap();
    let frame = Frame { side: removed, n };
    let kept: Vec<Placed> = sides
        .iter()
        .filter(|&&s| s != removed)
        .flat_map(|&s| ring.stack(s).iter().copied())
        .collect();
    let work: Vec<Placed> = kept.iter().map(|&p| frame.to_work(p)).collect();
    let repacked = repack_three_stacks(&work, n)?;
    let arm_h: i64 = repacked.iter().filter(|p| wide(p, n)).map(|p| p.h).sum();
    let arm_w: i64 = repacked.iter().filter(|p| !wide(p, n)).map(|p| p.w).sum();
    let in_l = |p: &Placed| p.top() <= arm_h || p.right() <= arm_w;
    if !placed_is_valid(&Rect::new(0, 0, n, n), &repacked) || !repacked.iter().all(in_l) {
        return Err(Error::Internal(
            "repacked stacks do not form an L packing".into(),
        ));
    }

    let hor: Vec<Item> = kept
        .iter()
        .filter(|p| wide(p, n))
        .map(|p| footprint_item(ring, p))
        .collect();
    let ver: Vec<Item> = kept
        .iter()
        .filter(|p| !wide(p, n))
        .map(|p| footprint_item(ring, p))
        .collect();
    let shape = LShape::new(
        n,
        hor.iter().map(|i| i.h).sum(),
        ver.iter().map(|i| i.w).sum(),
    )?;
    let placed = normal_form(&hor, &ver, shape)?
        .ok_or_else(|| Error::Internal("kept stacks have no L packing in normal form".into()))?;
    let packing = Packing::from_placed(Rect::new(0, 0, n, n), &placed, &ring.instance())?;
    let profit = kept.iter().map(|p| ring.items[&p.id].p).sum();
    Ok(RingL {
        packing,
        profit,
        shape,
        removed,
    })
}

fn footprint_item(ring: &RingPacking, p: &Placed) -> Item {
    Item::new(p.id, p.w, p.h, ring.items[&p.id].p)
}

/// Repacks bottom, left and right stacks (top stack already gone) by
/// repeatedly cutting off one lonely item: a bottom item goes onto the
/// bottom arm, a left item onto the left arm, and a right item is moved to
/// the left arm after shifting everything else right by its width.
fn repack_three_stacks(work: &[Placed], n: i64) -> Result<Vec<Placed>> {
    let mut open: Vec<Placed> = work.to_vec();
    let mut done: Vec<Placed> = Vec::with_capacity(open.len());
    let (mut x0, mut y0) = (0i64, 0i64);
    while !open.is_empty() {
        let lonely_bottom = open
            .iter()
            .position(|j| wide(j, n) && open.iter().all(|o| o.id == j.id || o.y >= j.top()));
        if let Some(k) = lonely_bottom {
            let mut j = open.swap_remove(k);
            j.y = y0;
            y0 += j.h;
            done.push(j);
            continue;
        }
        let lonely_left = open
            .iter()
            .position(|j| !wide(j, n) && open.iter().all(|o| o.id == j.id || o.x >= j.right()));
        if let Some(k) = lonely_left {
            let mut j = open.swap_remove(k);
            j.x = x0;
            x0 += j.w;
            done.push(j);
            continue;
        }
        let lonely_right = open
            .iter()
            .position(|j| !wide(j, n) && open.iter().all(|o| o.id == j.id || o.right() <= j.x));
        if let Some(k) = lonely_right {
            let mut j = open.swap_remove(k);
            for o in open.iter_mut() {
                o.x += j.w;
            }
            j.x = x0;
            x0 += j.w;
            done.push(j);
            continue;
        }
        return Err(Error::Internal(
            "no guillotine cut isolates a lonely stack item".into(),
        ));
    }
    Ok(done)
}
