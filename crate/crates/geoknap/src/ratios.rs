//! Exact arithmetic behind the approximation-factor case analysis of the
//! cardinality algorithm: a bank of lower bounds on the packed fraction,
//! per-case linear programs over the share simplex, their duals, and the
//! worst-case profit mixes of the simpler algorithms.

use std::fmt::Write as _;

use num::rational::Ratio;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational with room for the products in the elimination.
pub type Q = Ratio<i128>;

fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// Number of bound rows in [`bound_bank`].
pub const BANK_SIZE: usize = 13;

/// Lower bounds `z >= c . x` on the packed fraction, with the shares
/// `x = (long thin, long fat, short thin, short fat)` and all epsilon terms
/// dropped. Row `j` (1-based) is `bound_bank()[j - 1]`.
pub fn bound_bank() -> [[Q; 4]; BANK_SIZE] {
    let (z, one) = (Q::zero(), Q::one());
    let (h, tq) = (q(1, 2), q(3, 4));
    [
        [tq, tq, one, h],
        [tq, tq, z, z],
        [h, h, tq, tq],
        [z, one, z, one],
        [h, one, z, h],
        [tq, tq, one, z],
        [tq, z, one, q(5, 6)],
        [tq, tq, q(5, 12), q(5, 12)],
        [tq, z, one, q(2, 3)],
        [tq, tq, one, q(7, 48)],
        [tq, tq, one, q(5, 36)],
        [h, h, one, tq],
        [tq, z, one, one],
    ]
}

/// Optimum of `min z` subject to `z >= row . x` for every row, `x` on the
/// probability simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub z: Q,
    pub x: Vec<Q>,
}

/// Solves a square system in place; `None` if singular.
fn solve_system(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col] / a[col][col];
                let pivot_row = a[col].clone();
                for (x, &p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= p * f;
                }
                let t = b[col] * f;
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// `min_x max_j rows[j] . x` over the simplex by enumerating vertices of
/// the LP in `(x, z)`. With no rows the value is 0.
pub fn min_max_over_simplex(rows: &[Vec<Q>]) -> Result<LpSolution> {
    let d = match rows.first() {
        Some(r) => r.len(),
        None => {
            return Ok(LpSolution {
                z: Q::zero(),
                x: vec![],
            })
        }
    };
    if d == 0 || rows.iter().any(|r| r.len() != d) {
        return Err(Error::Parameter(
            "all rows need the same positive length".into(),
        ));
    }
    // Inequalities as (coefficients on x, coefficient on z) >= 0:
    // z - row.x >= 0, x_i >= 0, z >= 0.
    let mut ineq: Vec<(Vec<Q>, Q)> = rows
        .iter()
        .map(|r| (r.iter().map(|c| -c).collect(), Q::one()))
        .collect();
    for i in 0..d {
        let mut e = vec![Q::zero(); d];
        e[i] = Q::one();
        ineq.push((e, Q::zero()));
    }
    ineq.push((vec![Q::zero(); d], Q::one()));
    let feasible = |x: &[Q], z: Q| {
        x.iter().all(|v| !v.is_negative())
            && !z.is_negative()
            && rows
                .iter()
                .all(|r| r.iter().zip(x).map(|(c, v)| c * v).sum::<Q>() <= z)
    };
    let mut best: Option<LpSolution> = None;
    let mut pick = vec![0usize; d];
    // All d-subsets of the inequalities, tight together with sum x = 1.
    fn subsets(
        m: usize,
        d: usize,
        start: usize,
        depth: usize,
        pick: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if depth == d {
            f(pick);
            return;
        }
        for i in start..m {
            pick[depth] = i;
            subsets(m, d, i + 1, depth + 1, pick, f);
        }
    }
    subsets(ineq.len(), d, 0, 0, &mut pick, &mut |idx| {
        let mut a = vec![[vec![Q::one(); d], vec![Q::zero()]].concat()];
        let mut b = vec![Q::one()];
        for &i in idx {
            a.push([ineq[i].0.clone(), vec![ineq[i].1]].concat());
            b.push(Q::zero());
        }
        let Some(sol) = solve_system(a, b) else {
            return;
        };
        let (x, z) = (&sol[..d], sol[d]);
        if !feasible(x, z) {
            return;
        }
        let better = match &best {
            None => true,
            Some(b) => z < b.z || (z == b.z && x < &b.x[..]),
        };
        if better {
            best = Some(LpSolution { z, x: x.to_vec() });
        }
    });
    best.ok_or_else(|| Error::Internal("no vertex found for a bounded simplex program".into()))
}

fn bank_rows(active: &[usize]) -> Result<Vec<Vec<Q>>> {
    let bank = bound_bank();
    active
        .iter()
        .map(|&j| {
            if (1..=BANK_SIZE).contains(&j) {
                Ok(bank[j - 1].to_vec())
            } else {
                Err(Error::Parameter(format!(
                    "bound index {j} is outside 1..={BANK_SIZE}"
                )))
            }
        })
        .collect()
}

/// Worst packed fraction when exactly the bank rows in `active` (1-based) hold.
pub fn solve_case_lp(active: &[usize]) -> Result<LpSolution> {
    min_max_over_simplex(&bank_rows(active)?)
}

/// Outcome of a dual check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCheck {
    pub feasible: bool,
    /// `-w`, a lower bound on the case value when feasible.
    pub bound: Q,
}

/// Smallest feasible `w` for the given duals: `-min_k sum_j c_jk y_j`.
pub fn tightest_w(active: &[usize], duals: &[Q]) -> Result<Q> {
    let rows = bank_rows(active)?;
    if rows.len() != duals.len() {
        return Err(Error::Parameter(
            "one dual value per active bound is required".into(),
        ));
    }
    let col = |k: usize| rows.iter().zip(duals).map(|(r, y)| r[k] * y).sum::<Q>();
    Ok(-(0..4).map(col).min().unwrap_or_else(Q::zero))
}

/// Checks `sum y <= 1`, `y >= 0` and `sum_j c_jk y_j + w >= 0` for every share `k`.
pub fn verify_dual(active: &[usize], duals: &[Q], w: Q) -> Result<DualCheck> {
    let rows = bank_rows(active)?;
    if rows.len() != duals.len() {
        return Err(Error::Parameter(
            "one dual value per active bound is required".into(),
        ));
    }
    let sum: Q = duals.iter().sum();
    let nonneg = duals.iter().all(|y| !y.is_negative());
    let cover =
        (0..4).all(|k| rows.iter().zip(duals).map(|(r, y)| r[k] * y).sum::<Q>() + w >= Q::zero());
    Ok(DualCheck {
        feasible: nonneg && sum <= Q::one() && cover,
        bound: -w,
    })
}

/// One case of the analysis with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub name: &'static str,
    pub active: Vec<usize>,
    pub duals: Vec<Q>,
    pub value: Q,
}

/// The six cases with their active bounds, dual solutions and values.
pub fn cases() -> Vec<Case> {
    let z = Q::zero();
    let case = |name, active: &[usize], duals: Vec<Q>, value| Case {
        name,
        active: active.to_vec(),
        duals,
        value,
    };
    vec![
        case("1", &[1, 3, 4, 5], vec![q(1, 2), q(1, 2), z, z], q(5, 8)),
        case(
            "2A(i)",
            &[3, 4, 5, 6, 7],
            vec![q(17, 54), z, q(1, 3), q(7, 54), q(2, 9)],
            q(127, 216),
        ),
        case(
            "2A(ii)",
            &[3, 4, 5, 6, 8],
            vec![q(4, 7), z, z, z, q(3, 7)],
            q(17, 28),
        ),
        case(
            "2A(iii)a",
            &[3, 4, 5, 9, 10],
            vec![q(124, 369), z, q(1, 3), q(2, 9), q(40, 369)],
            q(215, 369),
        ),
        case(
            "2A(iii)b",
            &[3, 4, 5, 9, 11],
            vec![q(94, 279), z, q(1, 3), q(2, 9), q(10, 93)],
            q(325, 558),
        ),
        case(
            "2B",
            &[2, 4, 5, 12, 13],
            vec![q(8, 41), z, q(9, 41), q(18, 41), q(6, 41)],
            q(24, 41),
        ),
    ]
}

/// A reproduced row: LP optimum and dual bound next to the expected value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub case: Case,
    pub lp: LpSolution,
    pub dual: DualCheck,
}

impl CaseResult {
    pub fn matches(&self) -> bool {
        self.dual.feasible && self.lp.z == self.case.value && self.dual.bound == self.case.value
    }
}

pub fn evaluate_cases() -> Result<Vec<CaseResult>> {
    cases()
        .into_iter()
        .map(|case| {
            let lp = solve_case_lp(&case.active)?;
            let w = tightest_w(&case.active, &case.duals)?;
            let dual = verify_dual(&case.active, &case.duals, w)?;
            Ok(CaseResult { case, lp, dual })
        })
        .collect()
}

/// Text table of the case analysis.
pub fn format_case_table(rows: &[CaseResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<10} {:<16} {:<52} {:>9} {:>9} {:>5}",
        "case", "bounds", "dual", "lp", "dual", "ok"
    );
    for r in rows {
        let active = r
            .case
            .active
            .iter()
            .map(|j| j.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let duals = r
            .case
            .active
            .iter()
            .zip(&r.case.duals)
            .map(|(j, y)| format!("y{j}={y}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            "{:<10} {:<16} {:<52} {:>9} {:>9} {:>5}",
            r.case.name,
            active,
            duals,
            r.lp.z.to_string(),
            r.dual.bound.to_string(),
            if r.matches() { "yes" } else { "NO" }
        );
    }
    if let Some(worst) = rows.iter().min_by(|a, b| a.lp.z.cmp(&b.lp.z)) {
        let _ = writeln!(
            out,
            "worst case {} with value {}",
            worst.case.name, worst.lp.z
        );
    }
    out
}

/// A named worst case of a max-of-bounds argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mix {
    pub name: &'static str,
    pub shares: Vec<&'static str>,
    pub solution: LpSolution,
}

/// Worst profit mixes: the cardinality algorithm choosing between the long
/// items in an L (3/4 of them) and strip deletion (half the long, 3/4 of the
/// short items), and the weighted algorithm's four structured packings over
/// long-thin, long-fat, short-fat and short-thin profit shares.
pub fn worst_case_mixes() -> Result<Vec<Mix>> {
    let (z, one, h, tq) = (Q::zero(), Q::one(), q(1, 2), q(3, 4));
    let card = vec![vec![tq, z], vec![h, tq]];
    let weighted = vec![
        vec![z, one, one, z],
        vec![h, one, h, z],
        vec![z, one, h, h],
        vec![tq, z, h, one],
    ];
    Ok(vec![
        Mix {
            name: "cardinality",
            shares: vec!["long", "short"],
            solution: min_max_over_simplex(&card)?,
        },
        Mix {
            name: "weighted",
            shares: vec!["long thin", "long fat", "short fat", "short thin"],
            solution: min_max_over_simplex(&weighted)?,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_values() {
        let rows = evaluate_cases().unwrap();
        let want = [
            q(5, 8),
            q(127, 216),
            q(17, 28),
            q(215, 369),
            q(325, 558),
            q(24, 41),
        ];
        for (r, w) in rows.iter().zip(want) {
            assert_eq!(r.lp.z, w, "{}", r.case.name);
            assert_eq!(r.dual.bound, w, "{}", r.case.name);
            assert!(r.matches());
        }
        assert_eq!(rows.iter().map(|r| r.lp.z).min().unwrap(), q(325, 558));
    }

    #[test]
    fn single_sum_bound_is_one() {
        let s = min_max_over_simplex(&[vec![Q::one(); 4]]).unwrap();
        assert_eq!(s.z, Q::one());
    }

    #[test]
    fn duals() {
        let z = Q::zero();
        let c = verify_dual(
            &[2, 4, 5, 12, 13],
            &[q(8, 41), z, q(9, 41), q(18, 41), q(6, 41)],
            q(-24, 41),
        )
        .unwrap();
        assert!(c.feasible);
        assert_eq!(c.bound, q(24, 41));
        let c = verify_dual(&[3, 4, 5, 6, 8], &[q(4, 7), z, z, z, q(3, 7)], q(-17, 28)).unwrap();
        assert!(c.feasible && c.bound == q(17, 28));
        let c = verify_dual(&[1, 3], &[z, z], z).unwrap();
        assert!(c.feasible && c.bound == z);
        // Claiming more than the duals support is rejected.
        let c = verify_dual(&[3, 4, 5, 6, 8], &[q(4, 7), z, z, z, q(3, 7)], q(-18, 28)).unwrap();
        assert!(!c.feasible);
        let c = verify_dual(&[1, 3], &[q(2, 3), q(2, 3)], q(-1, 2)).unwrap();
        assert!(!c.feasible);
        assert!(verify_dual(&[14], &[z], z).is_err());
        assert!(verify_dual(&[1, 2], &[z], z).is_err());
    }

    #[test]
    fn mixes() {
        let m = worst_case_mixes().unwrap();
        assert_eq!(m[0].solution.z, q(9, 16));
        assert_eq!(m[0].solution.x, vec![q(3, 4), q(1, 4)]);
        assert_eq!(m[1].solution.z, q(9, 17));
        assert_eq!(
            m[1].solution.x,
            vec![q(4, 17), q(5, 17), q(4, 17), q(4, 17)]
        );
    }

    #[test]
    fn degenerate_mix_is_the_coefficient() {
        assert_eq!(min_max_over_simplex(&[vec![q(2, 3)]]).unwrap().z, q(2, 3));
        assert_eq!(min_max_over_simplex(&[]).unwrap().z, Q::zero());
    }

    #[test]
    fn table_mentions_every_case() {
        let t = format_case_table(&evaluate_cases().unwrap());
        for c in cases() {
            assert!(t.contains(c.name));
        }
        assert!(t.contains("325/558"));
        assert!(!t.contains("NO"));
    }
}
