use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::model::{Instance, ItemId, Packing, Rect};
use crate::error::{Error, Result};

/// One broken packing invariant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    Overlap { a: ItemId, b: ItemId },
    OutsideRegion { id: ItemId, rect: Rect },
    Duplicate { id: ItemId },
    RotationForbidden { id: ItemId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Overlap { a, b } => write!(f, "items {a} and {b} overlap"),
            Violation::OutsideRegion { id, rect } => write!(
                f,
                "item {id} at ({},{}) size {}x{} leaves the region",
                rect.x, rect.y, rect.w, rect.h
            ),
            Violation::Duplicate { id } => write!(f, "item {id} placed more than once"),
            Violation::RotationForbidden { id } => {
                write!(f, "item {id} rotated but rotations are off")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks containment, pairwise disjointness, uniqueness and the rotation flag.
///
/// Unknown item ids are a structural error rather than a violation.
pub fn validate_packing(inst: &Instance, packing: &Packing) -> Result<ValidationReport> {
    let by: BTreeMap<ItemId, _> = inst.by_id();
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    let mut rects = Vec::with_capacity(packing.placements.len());
    for pl in &packing.placements {
        let it = by.get(&pl.id).ok_or_else(|| {
            Error::Structural(format!("packing places unknown item id {}", pl.id))
        })?;
        if !seen.insert(pl.id) {
            violations.push(Violation::Duplicate { id: pl.id });
            continue;
        }
        if pl.rotated && !inst.rotations && it.w != it.h {
            violations.push(Violation::RotationForbidden { id: pl.id });
        }
        let (w, h) = if pl.rotated {
            (it.h, it.w)
        } else {
            (it.w, it.h)
        };
        let r = Rect::new(pl.x, pl.y, w, h);
        if !packing.region.contains(&r) {
            violations.push(Violation::OutsideRegion { id: pl.id, rect: r });
        }
        rects.push((pl.id, r));
    }
    rects.sort_by_key(|(id, r)| (r.x, *id));
    let mut active: Vec<(ItemId, Rect)> = Vec::new();
    let mut pairs = Vec::new();
    for (id, r) in rects {
        active.retain(|(_, a)| a.right() > r.x);
        for (oid, o) in &active {
            if r.overlaps(o) {
                pairs.push(((*oid).min(id), (*oid).max(id)));
            }
        }
        active.push((id, r));
    }
    pairs.sort();
    violations.extend(pairs.into_iter().map(|(a, b)| Violation::Overlap { a, b }));
    Ok(ValidationReport { violations })
}
