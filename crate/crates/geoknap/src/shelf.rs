//! Next-Fit-Decreasing-Height shelf packing.

use crate::core::{Item, Packing, Placed, Placement, Rect};
use crate::error::{Error, Result};

/// NFDH order: non-increasing height, then non-increasing width, then id.
pub fn nfdh_order(items: &[Item]) -> Vec<Item> {
    let mut v = items.to_vec();
    v.sort_by(|a, b| b.h.cmp(&a.h).then(b.w.cmp(&a.w)).then(a.id.cmp(&b.id)));
    v
}

/// Packs into `region` and returns the footprints plus the unpacked suffix.
pub fn nfdh_place(items: &[Item], region: Rect) -> Result<(Vec<Placed>, Vec<Item>)> {
    if let Some(it) = items.iter().find(|it| it.w > region.w || it.h > region.h) {
        return Err(Error::Input(format!(
            "item {} ({}x{}) is larger than the {}x{} box",
            it.id, it.w, it.h, region.w, region.h
        )));
    }
    let order = nfdh_order(items);
    let mut placed = Vec::with_capacity(order.len());
    let (mut shelf_y, mut shelf_h, mut x) = (0i64, 0i64, 0i64);
    for (k, it) in order.iter().enumerate() {
        if placed.is_empty() {
            shelf_h = it.h;
        } else if x + it.w > region.w {
            shelf_y += shelf_h;
            shelf_h = it.h;
            x = 0;
        }
        if shelf_y + it.h > region.h {
            return Ok((placed, order[k..].to_vec()));
        }
        placed.push(Placed::new(
            it.id,
            region.x + x,
            region.y + shelf_y,
            it.w,
            it.h,
        ));
        x += it.w;
    }
    Ok((placed, Vec::new()))
}

/// NFDH into a `box_w x box_h` box anchored at the origin.
///
/// Items are placed in their given orientation, so the packing is valid
/// against any instance holding these items unrotated.
pub fn nfdh_pack(items: &[Item], box_w: i64, box_h: i64) -> Result<(Packing, Vec<Item>)> {
    let region = Rect::new(0, 0, box_w, box_h);
    let (placed, leftover) = nfdh_place(items, region)?;
    let placements = placed
        .iter()
        .map(|p| Placement {
            id: p.id,
            x: p.x,
            y: p.y,
            rotated: false,
        })
        .collect();
    Ok((Packing { region, placements }.canonical(), leftover))
}
