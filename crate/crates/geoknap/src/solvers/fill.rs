//! Adding leftover items to a packing: bottom-left placement at corner
//! points and NFDH into maximal free rectangles.

use std::collections::BTreeSet;

use crate::core::{Item, Placed, Rect};
use crate::shelf::nfdh_place;

use super::oriented;

/// Places unpacked items, most profitable first, at the lowest then
/// leftmost corner point where they fit. Returns the number added.
pub fn bottom_left_fill(
    region: Rect,
    placed: &mut Vec<Placed>,
    items: &[Item],
    rotations: bool,
) -> usize {
    let used: BTreeSet<u64> = placed.iter().map(|p| p.id).collect();
    let mut order: Vec<&Item> = items.iter().filter(|it| !used.contains(&it.id)).collect();
    order.sort_by_key(|it| (std::cmp::Reverse(it.p), it.area(), it.id));
    let free_area = region.area() - placed.iter().map(|p| p.area()).sum::<i64>();
    let mut free_area = free_area;
    let mut added = 0;
    for it in order {
        if it.area() > free_area {
            continue;
        }
        let xs: BTreeSet<i64> = std::iter::once(region.x)
            .chain(placed.iter().map(|p| p.right()))
            .collect();
        let ys: BTreeSet<i64> = std::iter::once(region.y)
            .chain(placed.iter().map(|p| p.top()))
            .collect();
        let spot = ys.iter().find_map(|&y| {
            xs.iter().find_map(|&x| {
                oriented(it, rotations).into_iter().find_map(|(w, h)| {
                    let cand = Placed::new(it.id, x, y, w, h);
                    (region.contains(&cand.rect()) && placed.iter().all(|p| !p.overlaps(&cand)))
                        .then_some(cand)
                })
            })
        });
        if let Some(p) = spot {
            free_area -= p.area();
            placed.push(p);
            added += 1;
        }
    }
    added
}

/// Maximal empty rectangles of `region` not covered by `placed`.
pub fn free_rectangles(region: Rect, placed: &[Placed]) -> Vec<Rect> {
    let mut free = vec![region];
    for p in placed {
        let r = p.rect();
        let mut next = Vec::with_capacity(free.len() + 4);
        for f in free {
            if !f.overlaps(&r) {
                next.push(f);
                continue;
            }
            if r.x > f.x {
                next.push(Rect::new(f.x, f.y, r.x - f.x, f.h));
            }
            if r.right() < f.right() {
                next.push(Rect::new(r.right(), f.y, f.right() - r.right(), f.h));
            }
            if r.y > f.y {
                next.push(Rect::new(f.x, f.y, f.w, r.y - f.y));
            }
            if r.top() < f.top() {
                next.push(Rect::new(f.x, r.top(), f.w, f.top() - r.top()));
            }
        }
        next.sort();
        next.dedup();
        let keep: Vec<bool> = (0..next.len())
            .map(|i| !(0..next.len()).any(|j| j != i && next[j].contains(&next[i])))
            .collect();
        free = next
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(f, _)| f)
            .collect();
    }
    free
}

/// Packs `items` with NFDH into the free rectangles, largest first, in
/// their given orientation. Returns the number added.
pub fn nfdh_into_free(region: Rect, placed: &mut Vec<Placed>, items: &[Item]) -> usize {
    let used: BTreeSet<u64> = placed.iter().map(|p| p.id).collect();
    let mut rest: Vec<Item> = items
        .iter()
        .filter(|it| !used.contains(&it.id))
        .copied()
        .collect();
    let mut added = 0;
    let mut tried: BTreeSet<Rect> = BTreeSet::new();
    while !rest.is_empty() {
        let mut free = free_rectangles(region, placed);
        free.retain(|f| !tried.contains(f));
        free.sort_by_key(|f| (std::cmp::Reverse(f.area()), *f));
        let Some(&f) = free.first() else { break };
        tried.insert(f);
        let fitting: Vec<Item> = rest
            .iter()
            .filter(|it| it.w <= f.w && it.h <= f.h)
            .copied()
            .collect();
        if fitting.is_empty() {
            continue;
        }
        let Ok((got, _)) = nfdh_place(&fitting, f) else {
            continue;
        };
        if got.is_empty() {
            continue;
        }
        let ids: BTreeSet<u64> = got.iter().map(|p| p.id).collect();
        rest.retain(|it| !ids.contains(&it.id));
        added += got.len();
        placed.extend(got);
    }
    added
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::placed_is_valid;

    #[test]
    fn fills_the_gap_next_to_an_item() {
        let region = Rect::new(0, 0, 4, 4);
        let mut placed = vec![Placed::new(0, 0, 0, 2, 4)];
        let items = vec![
            Item::new(0, 2, 4, 1),
            Item::new(1, 4, 2, 5),
            Item::new(2, 2, 2, 3),
            Item::new(3, 2, 2, 1),
        ];
        assert_eq!(bottom_left_fill(region, &mut placed, &items, true), 1);
        assert!(placed_is_valid(&region, &placed));
        let ids: BTreeSet<u64> = placed.iter().map(|p| p.id).collect();
        assert!(ids.contains(&1), "the 4x2 item fits rotated");
    }

    #[test]
    fn no_rotation_means_no_turn() {
        let region = Rect::new(0, 0, 4, 4);
        let mut placed = vec![Placed::new(0, 0, 0, 2, 4)];
        let items = vec![Item::new(1, 4, 2, 5)];
        assert_eq!(bottom_left_fill(region, &mut placed, &items, false), 0);
    }

    #[test]
    fn free_rectangles_of_a_corner_item() {
        let free = free_rectangles(Rect::new(0, 0, 5, 5), &[Placed::new(0, 0, 0, 2, 3)]);
        assert_eq!(free, vec![Rect::new(0, 3, 5, 2), Rect::new(2, 0, 3, 5)]);
        assert_eq!(
            free_rectangles(Rect::new(0, 0, 2, 2), &[Placed::new(0, 0, 0, 2, 2)]),
            vec![]
        );
    }

    #[test]
    fn nfdh_uses_the_free_space() {
        let region = Rect::new(0, 0, 6, 6);
        let mut placed = vec![Placed::new(9, 0, 0, 6, 3)];
        let small: Vec<Item> = (0..9).map(|k| Item::new(k, 2, 1, 1)).collect();
        assert_eq!(nfdh_into_free(region, &mut placed, &small), 9);
        assert!(placed_is_valid(&region, &placed));
    }
}
