//! Acceptance suite: one PASS/FAIL line per criterion, then a failing
//! assertion if any criterion failed. Run with `--nocapture` to see the lines.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use geoknap::containers::{
    candidate_sizes, round_container, shrink_container, Container, ContainerKind,
};
use geoknap::core::{validate_packing, Instance, Item, Packing, Placed, Rect};
use geoknap::gap::{gap_augmented, gap_dp, gap_oracle, gap_ptas, GapConfig, GapInstance, NEVER};
use geoknap::generate::{
    guillotine_packing, steinberg_packing, thin_packing, Corpus, THIN_EPS_SMALL, THIN_N,
};
use geoknap::longring::{ring_shift, ring_to_boundary_l};
use geoknap::lpack::{full_grid, lpack_exact_dp, lpack_oracle, lpack_ptas, LInstance, LShape};
use geoknap::ratios::{cases, solve_case_lp, tightest_w, verify_dual, worst_case_mixes};
use geoknap::shelf::nfdh_pack;
use geoknap::solvers::{
    brute_force_oracle, resource_contraction_cardinality, resource_contraction_weighted,
    solve_cardinality,
};
use geoknap::steinberg::{condition_holds, steinberg_pack};
use geoknap::{rat, Rat};
use num::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_VALUES: [(&str, i64, i64); 6] = [
    ("1", 5, 8),
    ("2A(i)", 127, 216),
    ("2A(ii)", 17, 28),
    ("2A(iii)a", 215, 369),
    ("2A(iii)b", 325, 558),
    ("2B", 24, 41),
];
const TABLE_LIMIT: Duration = Duration::from_secs(1);
const LPACK_EXACT_RUNS: usize = 500;
const LPACK_EXACT_LIMIT: Duration = Duration::from_secs(60);
const LPACK_PTAS_RUNS: usize = 200;
const RING_RUNS: usize = 200;
const NFDH_RUNS: usize = 200;
const STEINBERG_RUNS: usize = 200;
const GAP_RUNS: usize = 200;
const CONTAINER_RUNS: usize = 200;
const WEIGHTED_RUNS: usize = 100;
const CARDINALITY_RUNS: usize = 100;
const RATIO_FLOOR: (i64, i64) = (9, 16);
const SUITE_LIMIT: Duration = Duration::from_secs(600);

static CHECKED: AtomicUsize = AtomicUsize::new(0);
static INVALID: AtomicUsize = AtomicUsize::new(0);

/// Validates and counts every packing the suite sees.
fn audit(inst: &Instance, packing: &Packing) -> bool {
    CHECKED.fetch_add(1, Ordering::Relaxed);
    let ok = validate_packing(inst, packing)
        .map(|r| r.is_ok())
        .unwrap_or(false);
    if !ok {
        INVALID.fetch_add(1, Ordering::Relaxed);
    }
    ok
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let all = cases();
    for (name, num, den) in TABLE_VALUES {
        let want = Rat::new(num, den);
        let Some(case) = all.iter().find(|c| c.name == name) else {
            bad.push(format!("{name} missing"));
            continue;
        };
        let lp = solve_case_lp(&case.active).unwrap().z;
        let w = tightest_w(&case.active, &case.duals).unwrap();
        let dual = verify_dual(&case.active, &case.duals, w).unwrap();
        let ok =
            |q: &num::rational::Ratio<i128>| *q.numer() == num as i128 && *q.denom() == den as i128;
        if !ok(&lp) || !ok(&dual.bound) || !dual.feasible {
            bad.push(format!(
                "{name}: lp {lp}, dual {} (want {want})",
                dual.bound
            ));
        }
    }
    let mixes = worst_case_mixes().unwrap();
    for (name, num, den) in [("cardinality", 9, 16), ("weighted", 9, 17)] {
        match mixes.iter().find(|m| m.name == name) {
            Some(m) if *m.solution.z.numer() == num && *m.solution.z.denom() == den => {}
            Some(m) => bad.push(format!("{name} mix {}", m.solution.z)),
            None => bad.push(format!("{name} mix missing")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= TABLE_LIMIT {
        bad.push(format!("took {elapsed:?}"));
    }
    outcome(
        bad.is_empty(),
        format!("6 cases + 2 mixes exact in {elapsed:?} {}", bad.join("; ")),
    )
}

/// Random long items for an L with random arm thicknesses.
fn random_l_instance(rng: &mut ChaCha8Rng, max_items: usize, max_n: i64) -> LInstance {
    let n = rng.gen_range(4..=max_n);
    let shape = LShape::new(n, rng.gen_range(0..=n), rng.gen_range(0..=n)).unwrap();
    let count = rng.gen_range(0..=max_items);
    let (mut hor, mut ver) = (Vec::new(), Vec::new());
    for k in 0..count as u64 {
        let long = rng.gen_range(n / 2 + 1..=n);
        let short = rng.gen_range(1..=(n / 2).max(1));
        let p = rng.gen_range(1..=20);
        if rng.gen_bool(0.5) {
            hor.push(Item::new(k, long, short, p));
        } else {
            ver.push(Item::new(k, short, long, p));
        }
    }
    LInstance::new(shape, hor, ver).unwrap()
}

fn l_packing_ok(inst: &LInstance, packing: &Packing) -> bool {
    let valid = audit(&inst.instance(), packing);
    valid
        && packing
            .placed(&inst.instance())
            .unwrap()
            .iter()
            .all(|p| inst.shape.contains(p))
}

fn lpack_exactness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut mismatches = 0;
    for _ in 0..LPACK_EXACT_RUNS {
        let inst = random_l_instance(&mut rng, 6, 12);
        let grid = full_grid(inst.shape.n);
        let (dp, dp_pk) = lpack_exact_dp(&inst, &grid, &grid).unwrap();
        let (opt, opt_pk) = lpack_oracle(&inst).unwrap();
        if dp != opt || !l_packing_ok(&inst, &dp_pk) || !l_packing_ok(&inst, &opt_pk) {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && elapsed < LPACK_EXACT_LIMIT,
        format!("{LPACK_EXACT_RUNS} instances, {mismatches} mismatches, {elapsed:?}"),
    )
}

fn lpack_ptas_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let eps = rat(1, 2);
    let (mut violations, mut ratio_sum) = (0, 0.0);
    for _ in 0..LPACK_PTAS_RUNS {
        let inst = random_l_instance(&mut rng, 8, 20);
        let (opt, opt_pk) = lpack_oracle(&inst).unwrap();
        let (got, pk) = lpack_ptas(&inst, eps).unwrap();
        if Rat::from_integer(got) < (Rat::one() - eps * 2) * opt
            || !l_packing_ok(&inst, &pk)
            || !l_packing_ok(&inst, &opt_pk)
        {
            violations += 1;
        }
        ratio_sum += if opt == 0 {
            1.0
        } else {
            got as f64 / opt as f64
        };
    }
    let mean = ratio_sum / LPACK_PTAS_RUNS as f64;
    outcome(
        violations == 0,
        format!("{LPACK_PTAS_RUNS} instances, {violations} violations, mean ratio {mean:.4}"),
    )
}

/// Long items dropped at random positions, kept when they do not overlap.
fn random_long_packing(rng: &mut ChaCha8Rng) -> (Instance, Packing) {
    let n = rng.gen_range(4..=30);
    let mut placed: Vec<Placed> = Vec::new();
    let mut items = Vec::new();
    for k in 0..rng.gen_range(0..16u64) {
        let long = rng.gen_range(n / 2 + 1..=n);
        let short = rng.gen_range(1..=(n / 3).max(1));
        let (w, h) = if rng.gen_bool(0.5) {
            (long, short)
        } else {
            (short, long)
        };
        let q = Placed::new(k, rng.gen_range(0..=n - w), rng.gen_range(0..=n - h), w, h);
        if placed.iter().all(|o| !o.overlaps(&q)) {
            placed.push(q);
            items.push(Item::new(k, w, h, rng.gen_range(1..=20)));
        }
    }
    let inst = Instance::new(n, false, items).unwrap();
    let packing = Packing::unrotated(inst.knapsack(), &placed);
    (inst, packing)
}

fn ring_to_l_keeps_three_quarters() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut violations = 0;
    for _ in 0..RING_RUNS {
        let (inst, packing) = random_long_packing(&mut rng);
        audit(&inst, &packing);
        let ring = ring_shift(&inst, &packing).unwrap();
        let l = ring_to_boundary_l(&ring).unwrap();
        let inside = l
            .packing
            .placed(&inst)
            .unwrap()
            .iter()
            .all(|p| l.shape.contains(p));
        if !audit(&inst, &ring.to_packing().unwrap()) || !audit(&inst, &l.packing) || !inside {
            violations += 1;
        }
        if 4 * l.profit < 3 * inst.total_profit() {
            violations += 1;
        }
    }
    // Four equal stacks in a pinwheel: exactly one is lost.
    let bars = [(0, 0, 9, 1), (9, 0, 1, 9), (1, 9, 9, 1), (0, 1, 1, 9)];
    let placed: Vec<Placed> = bars
        .iter()
        .enumerate()
        .map(|(k, &(x, y, w, h))| Placed::new(k as u64, x, y, w, h))
        .collect();
    let items: Vec<Item> = placed
        .iter()
        .map(|p| Item::new(p.id, p.w, p.h, 5))
        .collect();
    let inst = Instance::new(10, false, items).unwrap();
    let packing = Packing::unrotated(inst.knapsack(), &placed);
    let l = ring_to_boundary_l(&ring_shift(&inst, &packing).unwrap()).unwrap();
    let exact = 4 * l.profit == 3 * inst.total_profit() && audit(&inst, &l.packing);
    outcome(
        violations == 0 && exact,
        format!(
            "{RING_RUNS} packings, {violations} violations, pinwheel keeps {}/{}",
            l.profit,
            inst.total_profit()
        ),
    )
}

/// Items at most `eps` of the box in each side, added while `keep` allows.
fn small_items(rng: &mut ChaCha8Rng, bw: i64, bh: i64, eps: Rat, area_cap: i64) -> Vec<Item> {
    let mw = (eps * bw).floor().to_integer().max(1);
    let mh = (eps * bh).floor().to_integer().max(1);
    let mut items = Vec::new();
    let mut area = 0;
    for k in 0..10_000u64 {
        let (w, h) = (rng.gen_range(1..=mw), rng.gen_range(1..=mh));
        if area + w * h > area_cap {
            break;
        }
        area += w * h;
        items.push(Item::new(k, w, h, 1));
    }
    items
}

fn nfdh_guarantee() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut leftovers, mut bound_misses) = (0, 0);
    for run in 0..NFDH_RUNS {
        let eps = [rat(1, 10), rat(1, 5), rat(2, 5)][run % 3];
        let (bw, bh) = (rng.gen_range(10..=80), rng.gen_range(10..=80));
        let budget = ((Rat::one() - eps * 2) * (bw * bh)).floor().to_integer();
        // One input within the area budget and one overfull input per run.
        for cap in [budget, 2 * bw * bh] {
            let items = small_items(&mut rng, bw, bh, eps, cap);
            let (packing, leftover) = nfdh_pack(&items, bw, bh).unwrap();
            let inst = Instance::new(bw.max(bh), false, items.clone()).unwrap();
            audit(&inst, &packing);
            let packed: i64 = packing
                .placed(&inst)
                .unwrap()
                .iter()
                .map(Placed::area)
                .sum();
            let total: i64 = items.iter().map(Item::area).sum();
            if cap == budget && !leftover.is_empty() {
                leftovers += 1;
            }
            if Rat::from_integer(packed)
                < Rat::from_integer(total).min((Rat::one() - eps * 2) * (bw * bh))
            {
                bound_misses += 1;
            }
        }
    }
    outcome(
        leftovers == 0 && bound_misses == 0,
        format!("{NFDH_RUNS} runs x 2, {leftovers} non-empty leftovers, {bound_misses} area bound misses"),
    )
}

fn steinberg_guarantee() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = 0;
    let mut sizes = 0;
    for _ in 0..STEINBERG_RUNS {
        let (bw, bh) = (rng.gen_range(4..=60), rng.gen_range(4..=60));
        let mut items: Vec<Item> = Vec::new();
        for k in 0..rng.gen_range(1..=30u64) {
            let shape = rng.gen_range(0..3);
            let w = if shape == 0 {
                rng.gen_range(1..=bw)
            } else {
                rng.gen_range(1..=(bw / 3).max(1))
            };
            let h = if shape == 1 {
                rng.gen_range(1..=bh)
            } else {
                rng.gen_range(1..=(bh / 3).max(1))
            };
            let it = Item::new(k, w, h, 1);
            items.push(it);
            if !condition_holds(&items, bw, bh) {
                items.pop();
            }
        }
        sizes += items.len();
        let inst = Instance::new(bw.max(bh), false, items.clone()).unwrap();
        match steinberg_pack(&items, bw, bh) {
            Ok(p)
                if p.len() == items.len()
                    && audit(&inst, &p)
                    && p.region == Rect::new(0, 0, bw, bh) => {}
            _ => failures += 1,
        }
    }
    outcome(
        failures == 0,
        format!("{STEINBERG_RUNS} inputs ({sizes} items), {failures} failures"),
    )
}

fn random_gap(rng: &mut ChaCha8Rng) -> GapInstance {
    let k = rng.gen_range(1..=2);
    let n = rng.gen_range(0..=8);
    let capacities = (0..k).map(|_| rng.gen_range(0..=12)).collect();
    let sizes = (0..n)
        .map(|_| {
            (0..k)
                .map(|_| {
                    if rng.gen_bool(0.1) {
                        NEVER
                    } else {
                        rng.gen_range(1..=8)
                    }
                })
                .collect()
        })
        .collect();
    let profits = (0..n)
        .map(|_| (0..k).map(|_| rng.gen_range(0..=15)).collect())
        .collect();
    GapInstance::new(capacities, sizes, profits).unwrap()
}

fn gap_guarantees() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = GapConfig::default();
    let eps = rat(1, 4);
    let (mut dp_miss, mut aug_miss, mut ptas_miss) = (0, 0, 0);
    for _ in 0..GAP_RUNS {
        let g = random_gap(&mut rng);
        let (opt, oa) = gap_oracle(&g, &cfg).unwrap();
        let (dp, da) = gap_dp(&g, &cfg).unwrap();
        if dp != opt || !g.is_feasible(&da) || g.profit_of(&da) != dp || !g.is_feasible(&oa) {
            dp_miss += 1;
        }
        let (aug, aa) = gap_augmented(&g, eps, &cfg).unwrap();
        if aug < opt || !g.is_feasible_scaled(&aa, Rat::one() + eps) || g.profit_of(&aa) != aug {
            aug_miss += 1;
        }
        let (pt, pa) = gap_ptas(&g, eps, &cfg).unwrap();
        if Rat::from_integer(pt) < (Rat::one() - eps * 3) * opt
            || !g.is_feasible(&pa)
            || g.profit_of(&pa) != pt
        {
            ptas_miss += 1;
        }
    }
    outcome(
        dp_miss + aug_miss + ptas_miss == 0,
        format!(
            "{GAP_RUNS} instances, misses: dp {dp_miss}, augmented {aug_miss}, ptas {ptas_miss}"
        ),
    )
}

fn container_rounding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut shrink_miss, mut round_miss) = (0, 0);
    for run in 0..CONTAINER_RUNS {
        let eps = rat(1, 2 + (run as i64 % 4));
        let width = rng.gen_range(5..=40);
        let items: Vec<Item> = (0..rng.gen_range(0..=14u64))
            .map(|k| {
                Item::new(
                    k,
                    rng.gen_range(1..=width),
                    rng.gen_range(1..=9),
                    rng.gen_range(0..20),
                )
            })
            .collect();
        let height: i64 = items.iter().map(|it| it.h).sum();
        let c = Container::new(
            ContainerKind::Horizontal,
            0,
            0,
            width,
            height + rng.gen_range(0..=3),
        );
        let area: i64 = items.iter().map(Item::area).sum();
        let profit: i64 = items.iter().map(|it| it.p).sum();

        let s = shrink_container(&c, &items, eps).unwrap();
        let kept: i64 = items
            .iter()
            .filter(|it| !s.dropped.contains(&it.id))
            .map(|it| it.p)
            .sum();
        let shrunk_area: i64 = s.containers.iter().map(Container::area).sum();
        let inside = s.containers.iter().all(|sc| c.rect().contains(&sc.rect()));
        if shrunk_area > area
            || Rat::from_integer(kept) < (Rat::one() - eps * 3) * profit
            || !inside
        {
            shrink_miss += 1;
        }
        if !audit_placed(c.rect(), &items, &s.placed) {
            shrink_miss += 1;
        }

        let k = (Rat::one() / eps).ceil().to_integer() as usize;
        let r = round_container(&c, &items, eps, k).unwrap();
        let sets = candidate_sizes(&items, k).unwrap();
        let kept: i64 = items
            .iter()
            .filter(|it| Some(it.id) != r.dropped)
            .map(|it| it.p)
            .sum();
        let in_sets =
            items.is_empty() || (sets.has_width(r.container.w) && sets.has_height(r.container.h));
        let smaller = r.container.w <= c.w && r.container.h <= c.h;
        if !in_sets || !smaller || Rat::from_integer(kept) < (Rat::one() - eps) * profit {
            round_miss += 1;
        }
        if !audit_placed(r.container.rect(), &items, &r.placed) {
            round_miss += 1;
        }
    }
    outcome(
        shrink_miss + round_miss == 0,
        format!("{CONTAINER_RUNS} containers, misses: shrink {shrink_miss}, round {round_miss}"),
    )
}

/// Audits footprints of unrotated items inside `region`.
fn audit_placed(region: Rect, items: &[Item], placed: &[Placed]) -> bool {
    let n = region.right().max(region.top()).max(1);
    let inst = Instance::new(n, false, items.to_vec()).unwrap();
    let mut packing = Packing::unrotated(region, placed);
    packing.region = region;
    audit(&inst, &packing)
}

fn weighted_contraction() -> Outcome {
    let mut violations = 0;
    for seed in 0..WEIGHTED_RUNS as u64 {
        let eps = [rat(1, 5), rat(1, 8), rat(1, 10)][seed as usize % 3];
        let n = 20 + (seed as i64 % 5) * 10;
        let (inst, packing) = if seed % 2 == 0 {
            guillotine_packing(4 + seed as usize % 10, n, seed, true, Some(eps)).unwrap()
        } else {
            steinberg_packing(6 + seed as usize % 12, n, seed, true).unwrap()
        };
        audit(&inst, &packing);
        let r = resource_contraction_weighted(&inst, &packing, eps).unwrap();
        let width = (Rat::from_integer(n) * (Rat::one() - eps / 2))
            .floor()
            .to_integer();
        let fits = r.packing.region == Rect::new(0, 0, width, n);
        if !fits || !audit(&inst, &r.packing) || 2 * r.packing.profit(&inst) < packing.profit(&inst)
        {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!("{WEIGHTED_RUNS} packings, {violations} violations"),
    )
}

fn cardinality_contraction() -> Outcome {
    let eps = rat(1, 13);
    let es = Rat::new(THIN_EPS_SMALL.0, THIN_EPS_SMALL.1);
    let n = THIN_N as i128;
    let (mut violations, mut filter_misses) = (0, 0);
    for seed in 0..CARDINALITY_RUNS as u64 {
        let (inst, packing) = thin_packing(seed, seed % 2 == 0).unwrap();
        audit(&inst, &packing);
        let r = resource_contraction_cardinality(&inst, &packing, eps, es, true).unwrap();
        let pow = 13i128.pow(r.band);
        // Freed strip: eps^(band+1) N, which exceeds eps_small N.
        let width = (n * pow * 13 - n) / (pow * 13);
        let fits = r.packing.region == Rect::new(0, 0, width as i64, THIN_N)
            && (n - width) * *es.denom() as i128 > n;
        let enough = 3 * pow * r.packing.len() as i128 >= 2 * (pow - 10) * r.m3 as i128;
        if !fits || !enough || !audit(&inst, &r.packing) {
            violations += 1;
        }
        // Items large in both sides fit at most 1/eps_small^2 times by area.
        let side = (Rat::from_integer(THIN_N) * es).floor().to_integer() as i128 + 1;
        let large_ok = r.dropped_large.len() as i128 * side * side <= n * n;
        let band_ok = 13 * r.dropped_band.len() <= r.m2;
        if !large_ok || !band_ok {
            filter_misses += 1;
        }
    }
    outcome(
        violations + filter_misses == 0,
        format!(
            "{CARDINALITY_RUNS} packings, {violations} violations, {filter_misses} filter misses"
        ),
    )
}

fn end_to_end_ratio() -> Outcome {
    let corpus = Corpus::parse(include_str!("data/micro_corpus.json")).unwrap();
    let floor = Rat::new(RATIO_FLOOR.0, RATIO_FLOOR.1);
    let mut below = Vec::new();
    let mut stale = 0;
    let mut worst = Rat::one();
    for e in &corpus.entries {
        let inst = &e.instance;
        let report = solve_cardinality(inst, rat(1, 13)).unwrap();
        let (opt, opt_pk) = brute_force_oracle(inst).unwrap();
        audit(inst, &report.best);
        audit(inst, &opt_pk);
        if e.optimum != Some(opt) {
            stale += 1;
        }
        let ratio = if opt == 0 {
            Rat::one()
        } else {
            Rat::new(report.profit, opt)
        };
        worst = worst.min(ratio);
        if ratio < floor {
            below.push(format!("{} ({}/{opt})", e.name, report.profit));
        }
    }
    let count = corpus.entries.len();
    outcome(
        below.is_empty() && stale == 0 && count >= 100,
        format!(
            "{count} instances, worst ratio {worst}, {} below 9/16{}, {stale} stale optima",
            below.len(),
            below.iter().map(|b| format!(" {b}")).collect::<String>()
        ),
    )
}

type Criterion = fn() -> Outcome;

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: [(&str, Criterion); 11] = [
        ("case LP table and worst-case mixes", table_reproduction),
        ("exact L-packing DP equals the oracle", lpack_exactness),
        (
            "L-packing PTAS keeps (1-2eps) of the optimum",
            lpack_ptas_bound,
        ),
        (
            "ring to boundary L keeps 3/4",
            ring_to_l_keeps_three_quarters,
        ),
        (
            "NFDH packs small items within the area budget",
            nfdh_guarantee,
        ),
        (
            "Steinberg packs every input meeting its condition",
            steinberg_guarantee,
        ),
        ("GAP DP, augmented and PTAS bounds", gap_guarantees),
        ("container shrinking and rounding", container_rounding),
        (
            "weighted resource contraction keeps half",
            weighted_contraction,
        ),
        (
            "cardinality resource contraction keeps 2/3",
            cardinality_contraction,
        ),
        (
            "cardinality solver reaches 9/16 of the optimum",
            end_to_end_ratio,
        ),
    ];
    let mut lines = Vec::new();
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        all &= o.pass;
        let line = format!(
            "criterion {:>2} {}: {} [{}] ({:.1?})",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail.trim_end(),
            t.elapsed()
        );
        println!("{line}");
        lines.push(line);
    }
    let (checked, invalid) = (
        CHECKED.load(Ordering::Relaxed),
        INVALID.load(Ordering::Relaxed),
    );
    let pass12 = invalid == 0 && checked > 0;
    all &= pass12;
    println!(
        "criterion 12 {}: every emitted packing validates [{checked} packings, {invalid} invalid]",
        if pass12 { "PASS" } else { "FAIL" }
    );
    let total = start.elapsed();
    let in_time = total < SUITE_LIMIT;
    println!(
        "suite runtime {total:.1?} (limit {SUITE_LIMIT:?}): {}",
        if in_time { "PASS" } else { "FAIL" }
    );
    assert!(all && in_time, "acceptance failures:\n{}", lines.join("\n"));
}
