//! Exact optimum for small instances.

use crate::core::{fit_in_box, FitOutcome, Instance, Item, Packing};
use crate::error::{resource, Error, Result};

/// Default item cap of [`brute_force_oracle`].
pub const ORACLE_CAP: usize = 8;

/// Exact optimum by subset enumeration and an exact fit test per subset.
pub fn brute_force_oracle(inst: &Instance) -> Result<(i64, Packing)> {
    brute_force_oracle_with(inst, ORACLE_CAP)
}

/// Subsets are visited by non-increasing profit, so the first one that fits
/// is optimal; ties go to the subset listed first in item order.
pub fn brute_force_oracle_with(inst: &Instance, cap: usize) -> Result<(i64, Packing)> {
    let n = inst.items.len();
    if n > cap {
        return Err(resource("brute-force oracle items", n as u128, cap as u128));
    }
    let area_cap = inst.n * inst.n;
    let mut subsets: Vec<(i64, u32)> = (0u32..1 << n)
        .filter(|&mask| {
            let area: i64 = (0..n)
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| inst.items[k].area())
                .sum();
            area <= area_cap
        })
        .map(|mask| {
            (
                (0..n)
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| inst.items[k].p)
                    .sum(),
                mask,
            )
        })
        .collect();
    subsets.sort_by_key(|&(p, mask)| (std::cmp::Reverse(p), mask.reverse_bits()));
    for (profit, mask) in subsets {
        let chosen: Vec<Item> = (0..n)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| inst.items[k])
            .collect();
        match fit_in_box(inst.n, inst.n, &chosen, inst.rotations, u64::MAX) {
            FitOutcome::Packed(placed) => {
                return Ok((
                    profit,
                    Packing::from_placed(inst.knapsack(), &placed, inst)?,
                ));
            }
            FitOutcome::Infeasible => {}
            FitOutcome::Undecided => {
                return Err(Error::Internal("unbounded fit search gave up".into()))
            }
        }
    }
    Ok((0, Packing::empty(inst.knapsack())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::validate_packing;

    #[test]
    fn single_item() {
        let inst = Instance::new(5, false, vec![Item::new(0, 3, 4, 7)]).unwrap();
        assert_eq!(brute_force_oracle(&inst).unwrap().0, 7);
    }

    #[test]
    fn two_big_squares_only_one_fits() {
        let inst = Instance::new(
            10,
            false,
            vec![Item::new(0, 6, 6, 12), Item::new(1, 6, 6, 10)],
        )
        .unwrap();
        let (p, pk) = brute_force_oracle(&inst).unwrap();
        assert_eq!(p, 12);
        assert_eq!(pk.ids(), vec![0]);
    }

    #[test]
    fn rotation_lets_both_fit() {
        let items = vec![
            Item::new(0, 9, 3, 1),
            Item::new(1, 3, 9, 1),
            Item::new(2, 6, 6, 1),
        ];
        let off = Instance::new(10, false, items.clone()).unwrap();
        let on = Instance::new(10, true, items).unwrap();
        assert_eq!(brute_force_oracle(&off).unwrap().0, 2);
        let (p, pk) = brute_force_oracle(&on).unwrap();
        assert_eq!(p, 2);
        assert!(validate_packing(&on, &pk).unwrap().is_ok());
        let two_flat = Instance::new(
            10,
            false,
            vec![Item::new(0, 9, 3, 1), Item::new(1, 3, 9, 1)],
        )
        .unwrap();
        assert_eq!(brute_force_oracle(&two_flat).unwrap().0, 1);
        assert_eq!(
            brute_force_oracle(&two_flat.with_rotations(true))
                .unwrap()
                .0,
            2
        );
    }

    #[test]
    fn cap_is_a_resource_error() {
        let items = (0..9).map(|k| Item::new(k, 1, 1, 1)).collect();
        let inst = Instance::new(5, false, items).unwrap();
        assert!(matches!(
            brute_force_oracle(&inst),
            Err(Error::Resource { .. })
        ));
        assert_eq!(brute_force_oracle_with(&inst, 9).unwrap().0, 9);
    }

    #[test]
    fn empty_instance() {
        let inst = Instance::new(3, false, vec![]).unwrap();
        assert_eq!(brute_force_oracle(&inst).unwrap().0, 0);
    }
}
