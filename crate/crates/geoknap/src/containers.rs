//! Containers: boxes with a fixed packing discipline, filled through a
//! reduction to generalized assignment, plus the operations that shrink and
//! round containers to a small family of candidate sizes.

use std::collections::BTreeSet;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::core::{
    parse_json, placed_is_valid, to_json, Instance, Item, ItemId, Packing, Placed, Rect,
};
use crate::error::{resource, Error, Result};
use crate::gap::{
    augmented_with_caps, gap_dp, gap_ptas, Assignment, GapConfig, GapInstance, NEVER,
};
use crate::shelf::nfdh_place;
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ContainerKind {
    /// Items stacked on top of each other.
    #[serde(rename = "h")]
    Horizontal,
    /// Items side by side.
    #[serde(rename = "v")]
    Vertical,
    /// Small items packed by NFDH.
    #[serde(rename = "a")]
    Area,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Container {
    pub kind: ContainerKind,
    pub x: i64,
    pub y: i64,
    pub w: i64,
    pub h: i64,
}

impl Container {
    pub fn new(kind: ContainerKind, x: i64, y: i64, w: i64, h: i64) -> Self {
        Container { kind, x, y, w, h }
    }

    pub fn at(kind: ContainerKind, r: Rect) -> Self {
        Container::new(kind, r.x, r.y, r.w, r.h)
    }

    pub fn rect(&self) -> Rect {
        Rect::new(self.x, self.y, self.w, self.h)
    }

    pub fn area(&self) -> i64 {
        self.w * self.h
    }

    /// Mirror along the main diagonal; horizontal and vertical swap.
    pub fn transposed(&self) -> Container {
        let kind = match self.kind {
            ContainerKind::Horizontal => ContainerKind::Vertical,
            ContainerKind::Vertical => ContainerKind::Horizontal,
            ContainerKind::Area => ContainerKind::Area,
        };
        Container::new(kind, self.y, self.x, self.h, self.w)
    }

    /// Whether a `w x h` footprint may enter this container at all.
    pub fn admits(&self, w: i64, h: i64, eps: Rat) -> bool {
        match self.kind {
            ContainerKind::Horizontal | ContainerKind::Vertical => w <= self.w && h <= self.h,
            ContainerKind::Area => is_small(w, h, self.w, self.h, eps),
        }
    }

    /// GAP capacity: height, width, or `(1-2eps)` of the area.
    fn capacity(&self, eps: Rat) -> i64 {
        match self.kind {
            ContainerKind::Horizontal => self.h,
            ContainerKind::Vertical => self.w,
            ContainerKind::Area => ((Rat::one() - eps * 2) * Rat::from_integer(self.area()))
                .floor()
                .to_integer()
                .max(0),
        }
    }

    fn size_of(&self, w: i64, h: i64) -> i64 {
        match self.kind {
            ContainerKind::Horizontal => h,
            ContainerKind::Vertical => w,
            ContainerKind::Area => w * h,
        }
    }
}

/// `w <= eps*a` and `h <= eps*b`.
pub fn is_small(w: i64, h: i64, a: i64, b: i64, eps: Rat) -> bool {
    Rat::from_integer(w) <= eps * a && Rat::from_integer(h) <= eps * b
}

/// Interior-disjoint containers inside a region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainerLayout {
    pub region: Rect,
    pub containers: Vec<Container>,
}

impl ContainerLayout {
    pub fn new(region: Rect, containers: Vec<Container>) -> Result<Self> {
        for (k, c) in containers.iter().enumerate() {
            if c.w < 0 || c.h < 0 {
                return Err(Error::Structural(format!(
                    "container {k} has a negative side"
                )));
            }
            if !region.contains(&c.rect()) {
                return Err(Error::Structural(format!(
                    "container {k} leaves the region"
                )));
            }
            if let Some(j) = containers[..k]
                .iter()
                .position(|o| o.rect().overlaps(&c.rect()))
            {
                return Err(Error::Structural(format!("containers {j} and {k} overlap")));
            }
        }
        Ok(ContainerLayout { region, containers })
    }

    pub fn empty(region: Rect) -> Self {
        ContainerLayout {
            region,
            containers: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.containers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.containers.is_empty()
    }
}

/// Reads a JSON list of `{"kind","x","y","w","h"}` objects.
pub fn parse_containers(text: &str) -> Result<Vec<Container>> {
    parse_json(text)
}

pub fn containers_to_json(containers: &[Container]) -> Result<String> {
    to_json(&containers)
}

/// Candidate container widths and heights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SizeSets {
    pub widths: Vec<i64>,
    pub heights: Vec<i64>,
}

impl SizeSets {
    pub fn has_width(&self, w: i64) -> bool {
        self.widths.binary_search(&w).is_ok()
    }

    pub fn has_height(&self, h: i64) -> bool {
        self.heights.binary_search(&h).is_ok()
    }
}

/// Default limit on the number of generated sizes.
pub const SIZE_CAP: usize = 1 << 20;

/// All values `p_1 + .. + p_l + i * p_{l+1}` with `p_j` from `values`
/// (repetition allowed), `l <= k` and `0 <= i <= n`. Sorted and deduplicated;
/// an empty value set gives `[0]`.
pub fn size_set(values: &[i64], k: usize, n: usize, cap: usize) -> Result<Vec<i64>> {
    let base: BTreeSet<i64> = values.iter().copied().collect();
    if base.is_empty() {
        return Ok(vec![0]);
    }
    let mut sums: BTreeSet<i64> = BTreeSet::from([0]);
    for _ in 0..k {
        let needed = (sums.len() as u128) * (base.len() as u128);
        if needed > cap as u128 {
            return Err(resource("candidate size sums", needed, cap as u128));
        }
        let next: Vec<i64> = sums
            .iter()
            .flat_map(|s| base.iter().map(move |p| s + p))
            .collect();
        sums.extend(next);
    }
    let needed = (sums.len() as u128) * (base.len() as u128) * (n as u128 + 1);
    if needed > cap as u128 {
        return Err(resource("candidate sizes", needed, cap as u128));
    }
    let mut out = BTreeSet::new();
    for &s in &sums {
        for &p in &base {
            for i in 0..=n as i64 {
                out.insert(s + i * p);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Width and height candidates over the items; `n` is the item count.
pub fn candidate_sizes(items: &[Item], k: usize) -> Result<SizeSets> {
    candidate_sizes_with(items, k, false, SIZE_CAP)
}

/// With `rotations`, both sets are built from all side lengths.
pub fn candidate_sizes_with(
    items: &[Item],
    k: usize,
    rotations: bool,
    cap: usize,
) -> Result<SizeSets> {
    let ws: Vec<i64> = items.iter().map(|i| i.w).collect();
    let hs: Vec<i64> = items.iter().map(|i| i.h).collect();
    if rotations {
        let all: Vec<i64> = ws.iter().chain(&hs).copied().collect();
        let s = size_set(&all, k, items.len(), cap)?;
        return Ok(SizeSets {
            widths: s.clone(),
            heights: s,
        });
    }
    Ok(SizeSets {
        widths: size_set(&ws, k, items.len(), cap)?,
        heights: size_set(&hs, k, items.len(), cap)?,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct ContainerConfig {
    pub gap: GapConfig,
    /// Guess limit for the GAP PTAS before falling back to the rounded DP.
    pub ptas_guesses: u128,
}

impl Default for ContainerConfig {
    fn default() -> Self {
        ContainerConfig {
            gap: GapConfig::default(),
            ptas_guesses: 200,
        }
    }
}

/// Items packed into a layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainerFill {
    pub profit: i64,
    /// Footprints in the orientation used.
    pub placed: Vec<Placed>,
    /// Item ids per container, in layout order.
    pub contents: Vec<Vec<ItemId>>,
}

/// Cheapest admissible orientation of `it` for `c`: `(w, h, size)`.
fn orientation(it: &Item, c: &Container, eps: Rat, rotations: bool) -> Option<(i64, i64, i64)> {
    let mut dims = vec![(it.w, it.h)];
    if rotations && it.w != it.h {
        dims.push((it.h, it.w));
    }
    dims.into_iter()
        .filter(|&(w, h)| c.admits(w, h, eps))
        .map(|(w, h)| (w, h, c.size_of(w, h)))
        .min_by_key(|&(_, _, s)| s)
}

/// Exact DP when the table is small, else the PTAS, else the rounded DP on
/// capacities shrunk by `1/(1+eps)`, else first fit by profit. Always
/// feasible for the real capacities.
fn solve_gap(
    g: &GapInstance,
    eps: Rat,
    cfg: &ContainerConfig,
) -> Result<(i64, Vec<Option<usize>>)> {
    let eps = eps.min(Rat::new(1, 4));
    let out = match gap_dp(g, &cfg.gap) {
        Err(Error::Resource { .. }) => {
            let ptas_cfg = GapConfig {
                guess_budget: cfg.ptas_guesses.min(cfg.gap.guess_budget),
                ..cfg.gap
            };
            match gap_ptas(g, eps, &ptas_cfg) {
                Err(Error::Resource { .. }) => {
                    let caps: Vec<Rat> = g
                        .capacities
                        .iter()
                        .map(|&c| Rat::from_integer(c) / (Rat::one() + eps))
                        .collect();
                    match augmented_with_caps(g, &caps, eps, &cfg.gap) {
                        Err(Error::Resource { .. }) => greedy_gap(g),
                        r => r?,
                    }
                }
                r => r?,
            }
        }
        r => r?,
    };
    if !g.is_feasible(&out.1) {
        return Err(Error::Internal(
            "container assignment overfills a container".into(),
        ));
    }
    Ok((out.0, out.1.bins))
}

fn greedy_gap(g: &GapInstance) -> (i64, Assignment) {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(g.profits[i].iter().copied().max().unwrap_or(0)));
    let mut load = vec![0i64; g.k()];
    let mut a = Assignment::unassigned(g.n());
    for i in order {
        if let Some(j) = (0..g.k()).find(|&j| load[j] + g.sizes[i][j] <= g.capacities[j]) {
            load[j] += g.sizes[i][j];
            a.bins[i] = Some(j);
        }
    }
    (g.profit_of(&a), a)
}

/// Packs a subset of `items` into the containers of `layout`.
pub fn fill_containers(
    items: &[Item],
    rotations: bool,
    layout: &ContainerLayout,
    eps: Rat,
    cfg: &ContainerConfig,
) -> Result<ContainerFill> {
    if eps <= Rat::zero() || eps >= Rat::new(1, 2) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1/2), got {eps}"
        )));
    }
    let k = layout.len();
    if k == 0 || items.is_empty() {
        return Ok(ContainerFill {
            profit: 0,
            placed: vec![],
            contents: vec![vec![]; k],
        });
    }
    let fits: Vec<Vec<Option<(i64, i64, i64)>>> = items
        .iter()
        .map(|it| {
            layout
                .containers
                .iter()
                .map(|c| orientation(it, c, eps, rotations))
                .collect()
        })
        .collect();
    let sizes: Vec<Vec<i64>> = fits
        .iter()
        .map(|row| row.iter().map(|f| f.map_or(NEVER, |t| t.2)).collect())
        .collect();
    // A capacity above the total admissible size changes nothing but the DP table.
    let capacities = layout
        .containers
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let total: i64 = sizes.iter().map(|s| s[j]).filter(|&s| s != NEVER).sum();
            c.capacity(eps).min(total)
        })
        .collect();
    let profits = items.iter().map(|it| vec![it.p; k]).collect();
    let g = GapInstance::new(capacities, sizes, profits)?;
    let (profit, bins) = solve_gap(&g, eps, cfg)?;

    let mut contents = vec![Vec::new(); k];
    let mut placed = Vec::new();
    for (j, c) in layout.containers.iter().enumerate() {
        let mut mine: Vec<Item> = (0..items.len())
            .filter(|&i| bins[i] == Some(j))
            .map(|i| {
                let (w, h, _) = fits[i][j].expect("assigned items are admissible");
                Item::new(items[i].id, w, h, items[i].p)
            })
            .collect();
        mine.sort_by_key(|it| it.id);
        contents[j] = mine.iter().map(|it| it.id).collect();
        placed.extend(realize(c, &mine)?);
    }
    if !placed_is_valid(&layout.region, &placed) {
        return Err(Error::Internal("container packing is not valid".into()));
    }
    Ok(ContainerFill {
        profit,
        placed,
        contents,
    })
}

/// Places items (already oriented) inside one container by its discipline.
pub fn realize(c: &Container, items: &[Item]) -> Result<Vec<Placed>> {
    match c.kind {
        ContainerKind::Horizontal => {
            let mut y = c.y;
            Ok(items
                .iter()
                .map(|it| {
                    let p = Placed::new(it.id, c.x, y, it.w, it.h);
                    y += it.h;
                    p
                })
                .collect())
        }
        ContainerKind::Vertical => {
            let mut x = c.x;
            Ok(items
                .iter()
                .map(|it| {
                    let p = Placed::new(it.id, x, c.y, it.w, it.h);
                    x += it.w;
                    p
                })
                .collect())
        }
        ContainerKind::Area => {
            let (placed, left) = nfdh_place(items, c.rect())?;
            if !left.is_empty() {
                return Err(Error::Internal(format!(
                    "NFDH left {} items outside an area container",
                    left.len()
                )));
            }
            Ok(placed)
        }
    }
}

/// Footprints inside `c` that follow its discipline: disjoint height ranges
/// for horizontal, disjoint width ranges for vertical, `eps`-small for area.
pub fn follows_discipline(c: &Container, placed: &[Placed], eps: Rat) -> bool {
    if !placed.iter().all(|p| c.rect().contains(&p.rect())) {
        return false;
    }
    let disjoint = |span: &dyn Fn(&Placed) -> (i64, i64)| {
        let mut s: Vec<(i64, i64)> = placed.iter().map(span).collect();
        s.sort();
        s.windows(2).all(|w| w[0].1 <= w[1].0)
    };
    match c.kind {
        ContainerKind::Horizontal => disjoint(&|p| (p.y, p.top())),
        ContainerKind::Vertical => disjoint(&|p| (p.x, p.right())),
        ContainerKind::Area => {
            placed_is_valid(&c.rect(), placed)
                && placed.iter().all(|p| is_small(p.w, p.h, c.w, c.h, eps))
        }
    }
}

/// Best container packing of the instance's items for a fixed layout.
pub fn pack_into_containers(
    inst: &Instance,
    layout: &ContainerLayout,
    eps: Rat,
) -> Result<(i64, Packing)> {
    let fill = fill_containers(
        &inst.items,
        inst.rotations,
        layout,
        eps,
        &ContainerConfig::default(),
    )?;
    Ok((
        fill.profit,
        Packing::from_placed(layout.region, &fill.placed, inst)?,
    ))
}

fn check_eps_open(eps: Rat) -> Result<()> {
    if eps <= Rat::zero() || eps >= Rat::one() {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    Ok(())
}

/// Checks that `items` (footprints) can be stacked in a horizontal container.
fn check_stackable(c: &Container, items: &[Item]) -> Result<()> {
    if c.kind != ContainerKind::Horizontal {
        return Err(Error::Parameter(
            "expected a horizontal or vertical container".into(),
        ));
    }
    if items.iter().any(|it| it.w > c.w) || items.iter().map(|it| it.h).sum::<i64>() > c.h {
        return Err(Error::Input("the items do not fit the container".into()));
    }
    Ok(())
}

fn transpose_items(items: &[Item]) -> Vec<Item> {
    items.iter().map(Item::rotated).collect()
}

/// Result of shrinking one container.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shrunk {
    pub containers: Vec<Container>,
    pub placed: Vec<Placed>,
    pub dropped: Vec<ItemId>,
}

impl Shrunk {
    fn transposed(self) -> Shrunk {
        Shrunk {
            containers: self.containers.iter().map(Container::transposed).collect(),
            placed: self.placed.iter().map(Placed::transposed).collect(),
            dropped: self.dropped,
        }
    }
}

/// Upper bound on the containers produced by [`shrink_container`]:
/// `max(1, ceil(log_{1+eps}(1/delta))) * ceil(1/eps)^2`.
pub fn shrink_count_bound(eps: Rat, delta: Rat) -> u64 {
    let (e, d) = (rat_f64(eps), rat_f64(delta));
    let groups = ((1.0 / d).ln() / (1.0 + e).ln() - 1e-9).ceil().max(1.0) as u64;
    let per = (Rat::one() / eps).ceil().to_integer() as u64;
    groups * per * per
}

fn rat_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Replaces a horizontal or vertical container by smaller containers of the
/// same kind, inside it, of total area at most the area of `items`, keeping
/// profit at least `(1-3eps)` of theirs. `items` carry their packed footprint.
pub fn shrink_container(c: &Container, items: &[Item], eps: Rat) -> Result<Shrunk> {
    check_eps_open(eps)?;
    match c.kind {
        ContainerKind::Horizontal => shrink_horizontal(c, items, eps),
        ContainerKind::Vertical => {
            Ok(shrink_horizontal(&c.transposed(), &transpose_items(items), eps)?.transposed())
        }
        ContainerKind::Area => Err(Error::Parameter("area containers are not shrunk".into())),
    }
}

fn shrink_horizontal(c: &Container, items: &[Item], eps: Rat) -> Result<Shrunk> {
    check_stackable(c, items)?;
    let mut order = items.to_vec();
    order.sort_by(|a, b| b.w.cmp(&a.w).then(a.id.cmp(&b.id)));
    // Width groups: every member is within a factor 1+eps of the widest.
    let mut groups: Vec<Vec<Item>> = Vec::new();
    for it in order {
        match groups.last_mut() {
            Some(g) if Rat::from_integer(g[0].w) <= (Rat::one() + eps) * it.w => g.push(it),
            _ => groups.push(vec![it]),
        }
    }
    let mut boxes: Vec<Vec<Item>> = Vec::new();
    let mut dropped = Vec::new();
    for g in groups {
        shrink_group(g, eps, &mut boxes, &mut dropped);
    }
    let mut out = Shrunk {
        containers: vec![],
        placed: vec![],
        dropped,
    };
    let mut y = c.y;
    for b in boxes {
        let w = b.iter().map(|it| it.w).max().unwrap_or(0);
        let h: i64 = b.iter().map(|it| it.h).sum();
        let sub = Container::new(ContainerKind::Horizontal, c.x, y, w, h);
        out.placed.extend(realize(&sub, &b)?);
        out.containers.push(sub);
        y += h;
    }
    out.dropped.sort_unstable();
    Ok(out)
}

/// One width group; pushes the item lists of the new containers.
fn shrink_group(
    mut rest: Vec<Item>,
    eps: Rat,
    boxes: &mut Vec<Vec<Item>>,
    dropped: &mut Vec<ItemId>,
) {
    let group_profit: i64 = rest.iter().map(|it| it.p).sum();
    loop {
        if rest.is_empty() {
            return;
        }
        let w = rest.iter().map(|it| it.w).max().unwrap();
        let h: i64 = rest.iter().map(|it| it.h).sum();
        let area: i64 = rest.iter().map(Item::area).sum();
        if w * h <= area {
            boxes.push(rest);
            return;
        }
        let cut = eps * h;
        let (tall, short): (Vec<Item>, Vec<Item>) =
            rest.iter().partition(|it| Rat::from_integer(it.h) > cut);
        if tall.is_empty() {
            // Drop the lowest profit per height until eps*h of height is gone.
            let mut by_density = rest.clone();
            by_density.sort_by(|a, b| {
                (a.p as i128 * b.h as i128)
                    .cmp(&(b.p as i128 * a.h as i128))
                    .then(a.id.cmp(&b.id))
            });
            let mut removed = 0i64;
            let mut gone = BTreeSet::new();
            for it in &by_density {
                if Rat::from_integer(removed) >= cut {
                    break;
                }
                removed += it.h;
                gone.insert(it.id);
            }
            dropped.extend(gone.iter().copied());
            rest.retain(|it| !gone.contains(&it.id));
            if !rest.is_empty() {
                boxes.push(rest);
            }
            return;
        }
        let tall_profit: i64 = tall.iter().map(|it| it.p).sum();
        if Rat::from_integer(tall_profit) <= eps * group_profit {
            dropped.extend(tall.iter().map(|it| it.id));
            if !short.is_empty() {
                boxes.push(short);
            }
            return;
        }
        boxes.extend(tall.into_iter().map(|it| vec![it]));
        rest = short;
    }
}

/// A horizontal or vertical container rounded to candidate sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rounded {
    pub container: Container,
    pub placed: Vec<Placed>,
    pub dropped: Option<ItemId>,
}

/// Shrinks a horizontal or vertical container so its sides lie in the
/// candidate sets with parameter `k` (at most one item is dropped).
pub fn round_container(c: &Container, items: &[Item], eps: Rat, k: usize) -> Result<Rounded> {
    check_eps_open(eps)?;
    if Rat::from_integer(k as i64) * eps < Rat::one() {
        return Err(Error::Parameter(format!(
            "k must be at least 1/eps, got k={k}, eps={eps}"
        )));
    }
    match c.kind {
        ContainerKind::Horizontal => round_horizontal(c, items, eps),
        ContainerKind::Vertical => {
            let r = round_horizontal(&c.transposed(), &transpose_items(items), eps)?;
            Ok(Rounded {
                container: r.container.transposed(),
                placed: r.placed.iter().map(Placed::transposed).collect(),
                dropped: r.dropped,
            })
        }
        ContainerKind::Area => Err(Error::Parameter(
            "use round_area_container for area containers".into(),
        )),
    }
}

fn round_horizontal(c: &Container, items: &[Item], eps: Rat) -> Result<Rounded> {
    check_stackable(c, items)?;
    let w = items.iter().map(|it| it.w).max().unwrap_or(0);
    let tall_count = (Rat::one() / eps).ceil().to_integer() as usize;
    let mut order = items.to_vec();
    order.sort_by(|a, b| b.h.cmp(&a.h).then(a.id.cmp(&b.id)));
    let (kept, h, dropped) = if order.len() <= tall_count {
        let h = order.iter().map(|it| it.h).sum();
        (order, h, None)
    } else {
        let tall = &order[..tall_count];
        let victim = *tall
            .iter()
            .min_by_key(|it| (it.p, std::cmp::Reverse(it.id)))
            .unwrap();
        // The dropped item's height is covered by the multiple below.
        let tall_h: i64 = tall
            .iter()
            .filter(|it| it.id != victim.id)
            .map(|it| it.h)
            .sum();
        let rest_h: i64 = order[tall_count..].iter().map(|it| it.h).sum();
        let times = (rest_h + victim.h - 1) / victim.h;
        let kept: Vec<Item> = order
            .iter()
            .filter(|it| it.id != victim.id)
            .copied()
            .collect();
        (kept, tall_h + times * victim.h, Some(victim.id))
    };
    let container = Container::new(ContainerKind::Horizontal, c.x, c.y, w, h);
    let placed = realize(&container, &kept)?;
    Ok(Rounded {
        container,
        placed,
        dropped,
    })
}

/// An area container shrunk to multiples of the largest item sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundedArea {
    pub container: Container,
    pub kept: Vec<Item>,
    pub dropped: Vec<ItemId>,
}

/// Shrinks an area container to integer multiples of the widest width and
/// tallest height and keeps a best profit-per-area subset of area at most
/// `(1-2eps)` of the (trimmed) original.
pub fn round_area_container(c: &Container, items: &[Item], eps: Rat) -> Result<RoundedArea> {
    if eps <= Rat::zero() || eps >= Rat::new(1, 2) {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, 1/2), got {eps}"
        )));
    }
    if c.kind != ContainerKind::Area {
        return Err(Error::Parameter("expected an area container".into()));
    }
    if items.iter().any(|it| !is_small(it.w, it.h, c.w, c.h, eps)) {
        return Err(Error::Input(
            "every item must be eps-small for the container".into(),
        ));
    }
    if items.iter().map(Item::area).sum::<i64>() > c.area() {
        return Err(Error::Input("the items exceed the container area".into()));
    }
    if items.is_empty() {
        return Ok(RoundedArea {
            container: Container::new(c.kind, c.x, c.y, 0, 0),
            kept: vec![],
            dropped: vec![],
        });
    }
    let wmax = items.iter().map(|it| it.w).max().unwrap();
    let hmax = items.iter().map(|it| it.h).max().unwrap();
    // Trim to at most max(n, ceil(1/eps)) multiples; items stay eps-small.
    let limit = (items.len() as i64).max((Rat::one() / eps).ceil().to_integer());
    let (tw, th) = (c.w.min(limit * wmax), c.h.min(limit * hmax));
    let container = Container::new(c.kind, c.x, c.y, wmax * (tw / wmax), hmax * (th / hmax));
    let budget = ((Rat::one() - eps * 2) * Rat::from_integer(tw * th))
        .floor()
        .to_integer();
    let mut order = items.to_vec();
    order.sort_by(|a, b| {
        (b.p as i128 * a.area() as i128)
            .cmp(&(a.p as i128 * b.area() as i128))
            .then(a.id.cmp(&b.id))
    });
    let (mut kept, mut dropped, mut used) = (Vec::new(), Vec::new(), 0i64);
    for it in order {
        if used + it.area() <= budget {
            used += it.area();
            kept.push(it);
        } else {
            dropped.push(it.id);
        }
    }
    kept.sort_by_key(|it| it.id);
    dropped.sort_unstable();
    Ok(RoundedArea {
        container,
        kept,
        dropped,
    })
}

/// Result of the greedy integral fill.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegralFill {
    pub placed: Vec<Placed>,
    pub contents: Vec<Vec<ItemId>>,
    /// At most one per container: the item that closed it.
    pub discarded: Vec<ItemId>,
    /// Items left once every container of their width was closed.
    pub unplaced: Vec<ItemId>,
}

/// Stacks items into horizontal containers of exactly their width, one
/// container at a time; the first item that does not fit is discarded and
/// closes the container.
pub fn greedy_integral_fill(containers: &[Container], items: &[Item]) -> Result<IntegralFill> {
    if containers
        .iter()
        .any(|c| c.kind != ContainerKind::Horizontal)
    {
        return Err(Error::Parameter(
            "greedy fill takes horizontal containers".into(),
        ));
    }
    if let Some(it) = items
        .iter()
        .find(|it| containers.iter().all(|c| c.w != it.w))
    {
        return Err(Error::Input(format!(
            "no container has the width {} of item {}",
            it.w, it.id
        )));
    }
    let mut queue: Vec<Option<Item>> = items.iter().copied().map(Some).collect();
    let mut out = IntegralFill {
        contents: vec![vec![]; containers.len()],
        ..Default::default()
    };
    for (j, c) in containers.iter().enumerate() {
        let mut y = c.y;
        for slot in queue.iter_mut() {
            let Some(it) = *slot else { continue };
            if it.w != c.w {
                continue;
            }
            *slot = None;
            if y + it.h > c.top() {
                out.discarded.push(it.id);
                break;
            }
            out.placed.push(Placed::new(it.id, c.x, y, it.w, it.h));
            out.contents[j].push(it.id);
            y += it.h;
        }
    }
    out.unplaced = queue.into_iter().flatten().map(|it| it.id).collect();
    Ok(out)
}

impl Container {
    fn top(&self) -> i64 {
        self.y + self.h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::validate_packing;
    use crate::rat;
    use ContainerKind::*;

    #[test]
    fn size_set_examples() {
        let s = size_set(&[3], 0, 4, SIZE_CAP).unwrap();
        assert_eq!(s, vec![0, 3, 6, 9, 12]);
        let s = size_set(&[2, 5], 1, 2, SIZE_CAP).unwrap();
        for v in [2, 5, 7, 12, 9] {
            assert!(s.contains(&v), "{v}");
        }
        // Brute force over the definition.
        let mut want = BTreeSet::new();
        for l in 0..=1 {
            for first in [2, 5] {
                for next in [2, 5] {
                    for i in 0..=2 {
                        want.insert(if l == 0 { 0 } else { first } + i * next);
                    }
                }
            }
        }
        assert_eq!(s, want.into_iter().collect::<Vec<_>>());
        assert_eq!(size_set(&[], 3, 0, SIZE_CAP).unwrap(), vec![0]);
    }

    #[test]
    fn size_set_cap() {
        let vals: Vec<i64> = (1..=50).map(|v| v * 101).collect();
        assert!(matches!(
            size_set(&vals, 3, 50, 1000),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn layout_checks() {
        let r = Rect::new(0, 0, 10, 10);
        assert!(ContainerLayout::new(
            r,
            vec![
                Container::new(Horizontal, 0, 0, 10, 5),
                Container::new(Area, 0, 5, 10, 5)
            ]
        )
        .is_ok());
        assert!(ContainerLayout::new(
            r,
            vec![
                Container::new(Horizontal, 0, 0, 10, 6),
                Container::new(Area, 0, 5, 10, 5)
            ]
        )
        .is_err());
        assert!(ContainerLayout::new(r, vec![Container::new(Vertical, 5, 5, 6, 1)]).is_err());
    }

    #[test]
    fn layout_json_round_trip() {
        let cs = vec![
            Container::new(Horizontal, 0, 0, 10, 5),
            Container::new(Area, 1, 5, 9, 5),
        ];
        let text = containers_to_json(&cs).unwrap();
        assert!(text.contains("\"kind\": \"h\""));
        assert_eq!(parse_containers(&text).unwrap(), cs);
        assert!(matches!(
            parse_containers("[{\"kind\":\"q\"}]"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn horizontal_container_is_a_knapsack() {
        let inst = Instance::new(
            10,
            false,
            vec![
                Item::new(1, 10, 3, 5),
                Item::new(2, 9, 3, 4),
                Item::new(3, 8, 2, 2),
            ],
        )
        .unwrap();
        let layout = ContainerLayout::new(
            inst.knapsack(),
            vec![Container::new(Horizontal, 0, 0, 10, 5)],
        )
        .unwrap();
        let (p, packing) = pack_into_containers(&inst, &layout, rat(1, 4)).unwrap();
        assert_eq!(p, 7);
        assert_eq!(packing.ids(), vec![1, 3]);
        assert!(validate_packing(&inst, &packing).unwrap().is_ok());
    }

    #[test]
    fn empty_layout_is_zero() {
        let inst = Instance::new(10, false, vec![Item::new(1, 1, 1, 5)]).unwrap();
        let (p, packing) =
            pack_into_containers(&inst, &ContainerLayout::empty(inst.knapsack()), rat(1, 4))
                .unwrap();
        assert_eq!(p, 0);
        assert!(packing.is_empty());
    }

    #[test]
    fn area_container_takes_twenty_units() {
        let items: Vec<Item> = (0..20).map(|k| Item::new(k, 1, 1, 1)).collect();
        let inst = Instance::new(10, false, items).unwrap();
        let c = Container::new(Area, 0, 0, 10, 10);
        let layout = ContainerLayout::new(inst.knapsack(), vec![c]).unwrap();
        let fill = fill_containers(
            &inst.items,
            false,
            &layout,
            rat(1, 5),
            &ContainerConfig::default(),
        )
        .unwrap();
        assert_eq!(fill.profit, 20);
        assert!(follows_discipline(&c, &fill.placed, rat(1, 5)));
    }

    #[test]
    fn area_container_rejects_large_items() {
        let inst = Instance::new(
            10,
            false,
            vec![Item::new(0, 3, 1, 9), Item::new(1, 2, 2, 1)],
        )
        .unwrap();
        let layout =
            ContainerLayout::new(inst.knapsack(), vec![Container::new(Area, 0, 0, 10, 10)])
                .unwrap();
        let (p, packing) = pack_into_containers(&inst, &layout, rat(1, 5)).unwrap();
        assert_eq!((p, packing.ids()), (1, vec![1]));
    }

    #[test]
    fn rotation_picks_the_flat_orientation() {
        let inst =
            Instance::new(10, true, vec![Item::new(0, 2, 9, 3), Item::new(1, 9, 2, 3)]).unwrap();
        let c = Container::new(Horizontal, 0, 0, 10, 4);
        let layout = ContainerLayout::new(inst.knapsack(), vec![c]).unwrap();
        let fill = fill_containers(
            &inst.items,
            true,
            &layout,
            rat(1, 4),
            &ContainerConfig::default(),
        )
        .unwrap();
        assert_eq!(fill.profit, 6);
        assert!(fill.placed.iter().all(|p| p.h == 2));
        let (_, packing) = pack_into_containers(&inst, &layout, rat(1, 4)).unwrap();
        assert!(validate_packing(&inst, &packing).unwrap().is_ok());
    }

    #[test]
    fn large_layout_uses_fallback_and_stays_feasible() {
        let items: Vec<Item> = (0..14)
            .map(|k| Item::new(k, 40 + k as i64, 7 + (k as i64 * 5) % 11, 1 + k as i64 % 4))
            .collect();
        let inst = Instance::new(400, false, items).unwrap();
        let cs = vec![
            Container::new(Horizontal, 0, 0, 60, 40),
            Container::new(Horizontal, 60, 0, 55, 37),
            Container::new(Vertical, 0, 40, 300, 20),
            Container::new(Horizontal, 120, 0, 200, 39),
        ];
        let layout = ContainerLayout::new(inst.knapsack(), cs.clone()).unwrap();
        for dp_cap in [1000, 5_000_000] {
            let cfg = ContainerConfig {
                gap: GapConfig {
                    dp_cap,
                    ..GapConfig::default()
                },
                ptas_guesses: 10,
            };
            let fill = fill_containers(&inst.items, false, &layout, rat(1, 4), &cfg).unwrap();
            assert!(fill.profit > 0);
            for (c, ids) in cs.iter().zip(&fill.contents) {
                let mine: Vec<Placed> = fill
                    .placed
                    .iter()
                    .filter(|p| ids.contains(&p.id))
                    .copied()
                    .collect();
                assert!(follows_discipline(c, &mine, rat(1, 4)));
            }
        }
    }

    fn total_area(cs: &[Container]) -> i64 {
        cs.iter().map(Container::area).sum()
    }

    #[test]
    fn shrink_same_width_is_one_container() {
        let c = Container::new(Horizontal, 0, 0, 10, 20);
        let items: Vec<Item> = (0..4).map(|k| Item::new(k, 7, 2 + k as i64, 1)).collect();
        let s = shrink_container(&c, &items, rat(1, 4)).unwrap();
        assert_eq!(s.containers, vec![Container::new(Horizontal, 0, 0, 7, 14)]);
        assert!(s.dropped.is_empty());
        assert!(shrink_container(&c, &[], rat(1, 4))
            .unwrap()
            .containers
            .is_empty());
    }

    #[test]
    fn shrink_eight_items() {
        let c = Container::new(Horizontal, 0, 0, 20, 40);
        let dims = [
            (20, 3, 4),
            (19, 6, 2),
            (18, 2, 1),
            (12, 9, 7),
            (11, 4, 3),
            (9, 2, 2),
            (8, 5, 5),
            (5, 7, 1),
        ];
        let items: Vec<Item> = dims
            .iter()
            .enumerate()
            .map(|(k, &(w, h, p))| Item::new(k as u64, w, h, p))
            .collect();
        let s = shrink_container(&c, &items, rat(1, 4)).unwrap();
        let area: i64 = items.iter().map(Item::area).sum();
        assert!(total_area(&s.containers) <= area);
        let kept: i64 = items
            .iter()
            .filter(|it| !s.dropped.contains(&it.id))
            .map(|it| it.p)
            .sum();
        assert!(4 * kept >= 25 - 3 * 25 / 4);
        assert!(s.containers.iter().all(|sc| c.rect().contains(&sc.rect())));
        assert!(placed_is_valid(&c.rect(), &s.placed));
        let v = shrink_container(&c.transposed(), &transpose_items(&items), rat(1, 4)).unwrap();
        assert_eq!(
            v.containers,
            s.containers
                .iter()
                .map(Container::transposed)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn round_keeps_small_sets_exact() {
        let c = Container::new(Horizontal, 0, 0, 10, 20);
        let items = vec![Item::new(0, 4, 3, 1), Item::new(1, 6, 5, 1)];
        let r = round_container(&c, &items, rat(1, 3), 3).unwrap();
        assert_eq!((r.container.w, r.container.h, r.dropped), (6, 8, None));
        let e = round_container(&c, &[], rat(1, 3), 3).unwrap();
        assert_eq!((e.container.w, e.container.h), (0, 0));
        assert!(round_container(&c, &items, rat(1, 3), 2).is_err());
    }

    #[test]
    fn round_ten_items_drops_one() {
        let c = Container::new(Horizontal, 0, 0, 30, 60);
        let items: Vec<Item> = (0..10)
            .map(|k| {
                Item::new(
                    k,
                    10 + k as i64,
                    1 + (k as i64 * 7) % 10,
                    1 + (k as i64 * 3) % 5,
                )
            })
            .collect();
        let r = round_container(&c, &items, rat(1, 3), 3).unwrap();
        let mut tall = items.clone();
        tall.sort_by(|a, b| b.h.cmp(&a.h).then(a.id.cmp(&b.id)));
        let victim = tall[..3]
            .iter()
            .min_by_key(|it| (it.p, std::cmp::Reverse(it.id)))
            .unwrap()
            .id;
        assert_eq!(r.dropped, Some(victim));
        let sizes = candidate_sizes(&items, 3).unwrap();
        assert!(sizes.has_width(r.container.w) && sizes.has_height(r.container.h));
        assert!(r.container.w <= c.w && r.container.h <= c.h);
        assert!(placed_is_valid(&r.container.rect(), &r.placed));
        assert_eq!(r.placed.len(), 9);
    }

    #[test]
    fn round_area_no_drops_when_tiny() {
        let c = Container::new(Area, 0, 0, 100, 100);
        let items: Vec<Item> = (0..5).map(|k| Item::new(k, 2, 3, 1)).collect();
        let r = round_area_container(&c, &items, rat(1, 10)).unwrap();
        assert!(r.dropped.is_empty());
        assert_eq!((r.container.w, r.container.h), (20, 30));
        let e = round_area_container(&c, &[], rat(1, 10)).unwrap();
        assert_eq!((e.container.w, e.container.h), (0, 0));
    }

    #[test]
    fn round_area_greedy_drop() {
        let c = Container::new(Area, 0, 0, 20, 20);
        let items: Vec<Item> = (0..30u64)
            .map(|k| Item::new(k, 2, 2 + (k % 3 == 0) as i64 * 2, 1 + (k % 5) as i64))
            .collect();
        let eps = rat(1, 5);
        let area: i64 = items.iter().map(Item::area).sum();
        assert!(area <= 400);
        let r = round_area_container(&c, &items, eps).unwrap();
        let p: i64 = items.iter().map(|it| it.p).sum();
        let kept: i64 = r.kept.iter().map(|it| it.p).sum();
        assert!(Rat::from_integer(kept) >= (Rat::one() - eps * 3) * p);
        assert!(r.kept.iter().map(Item::area).sum::<i64>() <= r.container.area());
        let small = eps / (Rat::one() - eps);
        assert!(r
            .kept
            .iter()
            .all(|it| is_small(it.w, it.h, r.container.w, r.container.h, small)));
        assert_eq!(r.container.w % 2, 0);
        assert_eq!(r.container.h % 4, 0);
    }

    #[test]
    fn greedy_fill_cases() {
        let c = Container::new(Horizontal, 0, 0, 5, 6);
        let exact = vec![Item::new(0, 5, 2, 1), Item::new(1, 5, 4, 1)];
        let f = greedy_integral_fill(&[c], &exact).unwrap();
        assert!(f.discarded.is_empty() && f.unplaced.is_empty());
        let over = vec![Item::new(0, 5, 4, 1), Item::new(1, 5, 4, 1)];
        let f = greedy_integral_fill(&[c], &over).unwrap();
        assert_eq!(f.discarded, vec![1]);
        assert!(greedy_integral_fill(&[c], &[Item::new(0, 4, 1, 1)]).is_err());
    }

    #[test]
    fn greedy_fill_five_containers() {
        let cs: Vec<Container> = (0..5)
            .map(|k| Container::new(Horizontal, 0, 10 * k, 3 + (k % 2), 10))
            .collect();
        let items: Vec<Item> = (0..24)
            .map(|k| Item::new(k, 3 + (k % 2) as i64, 1 + (k as i64 * 5) % 4, 1))
            .collect();
        let f = greedy_integral_fill(&cs, &items).unwrap();
        assert!(f.discarded.len() <= 5);
        assert!(placed_is_valid(&Rect::new(0, 0, 4, 50), &f.placed));
        for (c, ids) in cs.iter().zip(&f.contents) {
            let mine: Vec<Placed> = f
                .placed
                .iter()
                .filter(|p| ids.contains(&p.id))
                .copied()
                .collect();
            assert!(follows_discipline(c, &mine, rat(1, 4)));
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::core::validate_packing;
    use crate::rat;
    use proptest::prelude::*;
    use ContainerKind::*;

    /// Independent reference: every assignment, checked per container.
    fn best_container_packing(items: &[Item], rotations: bool, cs: &[Container], eps: Rat) -> i64 {
        let k = cs.len();
        let mut best = 0;
        let total = (k + 1).pow(items.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut load = vec![0i64; k];
            let mut profit = 0;
            let mut ok = true;
            for it in items {
                let b = c % (k + 1);
                c /= k + 1;
                if b == k {
                    continue;
                }
                let con = &cs[b];
                let mut dims = vec![(it.w, it.h)];
                if rotations {
                    dims.push((it.h, it.w));
                }
                let size = dims
                    .iter()
                    .filter_map(|&(w, h)| match con.kind {
                        Horizontal if w <= con.w && h <= con.h => Some(h),
                        Vertical if w <= con.w && h <= con.h => Some(w),
                        Area if is_small(w, h, con.w, con.h, eps) => Some(w * h),
                        _ => None,
                    })
                    .min();
                match size {
                    Some(s) => load[b] += s,
                    None => ok = false,
                }
                profit += it.p;
            }
            let fits = cs.iter().zip(&load).all(|(con, &l)| match con.kind {
                Horizontal => l <= con.h,
                Vertical => l <= con.w,
                Area => Rat::from_integer(l) <= (Rat::one() - eps * 2) * con.area(),
            });
            if ok && fits {
                best = best.max(profit);
            }
        }
        best
    }

    fn items_strategy(n: i64, max: usize) -> impl Strategy<Value = Vec<Item>> {
        prop::collection::vec((1..=n, 1..=n, 1i64..10), 0..=max).prop_map(|v| {
            v.into_iter()
                .enumerate()
                .map(|(k, (w, h, p))| Item::new(k as u64, w, h, p))
                .collect()
        })
    }

    /// Two or three containers cut from a guillotine split of the square.
    fn layout_strategy(n: i64) -> impl Strategy<Value = Vec<Container>> {
        let kind = prop_oneof![Just(Horizontal), Just(Vertical), Just(Area)];
        (1..n, 1..n, kind.clone(), kind.clone(), kind, any::<bool>()).prop_map(
            move |(a, b, k1, k2, k3, three)| {
                let mut cs = vec![
                    Container::new(k1, 0, 0, a, n),
                    Container::new(k2, a, 0, n - a, b),
                ];
                if three {
                    cs.push(Container::new(k3, a, b, n - a, n - b));
                }
                cs
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn fill_matches_reference(
            items in items_strategy(12, 6),
            cs in layout_strategy(12),
            rotations in any::<bool>(),
            e in 1i64..=4,
        ) {
            let eps = rat(e, 10);
            let inst = Instance::new(12, rotations, items).unwrap();
            let layout = ContainerLayout::new(inst.knapsack(), cs.clone()).unwrap();
            let fill = fill_containers(&inst.items, rotations, &layout, eps, &ContainerConfig::default()).unwrap();
            prop_assert_eq!(fill.profit, best_container_packing(&inst.items, rotations, &cs, eps));
            let packing = Packing::from_placed(layout.region, &fill.placed, &inst).unwrap();
            prop_assert!(validate_packing(&inst, &packing).unwrap().is_ok());
            prop_assert_eq!(packing.profit(&inst), fill.profit);
            for (c, ids) in cs.iter().zip(&fill.contents) {
                let mine: Vec<Placed> = fill.placed.iter().filter(|p| ids.contains(&p.id)).copied().collect();
                prop_assert!(follows_discipline(c, &mine, eps));
            }
        }

        #[test]
        fn shrink_bounds(
            raw in prop::collection::vec((1i64..=40, 1i64..=12, 0i64..20), 0..12),
            e in 1i64..=4,
            vertical in any::<bool>(),
        ) {
            let eps = rat(1, e + 1);
            let items: Vec<Item> = raw.iter().enumerate().map(|(k, &(w, h, p))| Item::new(k as u64, w, h, p)).collect();
            let height: i64 = items.iter().map(|it| it.h).sum();
            let mut c = Container::new(Horizontal, 3, 5, 40, height + 2);
            let mut its = items.clone();
            if vertical {
                c = c.transposed();
                its = transpose_items(&items);
            }
            let s = shrink_container(&c, &its, eps).unwrap();
            let area: i64 = items.iter().map(Item::area).sum();
            prop_assert!(s.containers.iter().map(Container::area).sum::<i64>() <= area);
            let p: i64 = items.iter().map(|it| it.p).sum();
            let kept: i64 = items.iter().filter(|it| !s.dropped.contains(&it.id)).map(|it| it.p).sum();
            prop_assert!(Rat::from_integer(kept) >= (Rat::one() - eps * 3) * p);
            prop_assert!(s.containers.iter().all(|sc| sc.kind == c.kind && c.rect().contains(&sc.rect())));
            prop_assert!(placed_is_valid(&c.rect(), &s.placed));
            prop_assert_eq!(s.placed.len() + s.dropped.len(), items.len());
            if !items.is_empty() {
                let wmin = items.iter().map(|it| it.w).min().unwrap();
                prop_assert!(s.containers.len() as u64 <= shrink_count_bound(eps, rat(wmin, 40)));
            }
            for sc in &s.containers {
                let inside: Vec<Placed> = s.placed.iter().filter(|p| sc.rect().contains(&p.rect())).copied().collect();
                prop_assert!(follows_discipline(sc, &inside, eps));
            }
        }

        #[test]
        fn round_bounds(
            raw in prop::collection::vec((1i64..=30, 1i64..=9, 0i64..20), 0..14),
            e in 2i64..=5,
            extra in 0usize..2,
        ) {
            let eps = rat(1, e);
            let k = e as usize + extra;
            let items: Vec<Item> = raw.iter().enumerate().map(|(k, &(w, h, p))| Item::new(k as u64, w, h, p)).collect();
            let height: i64 = items.iter().map(|it| it.h).sum();
            for c in [Container::new(Horizontal, 0, 0, 31, height + 1), Container::new(Vertical, 0, 0, height + 1, 31)] {
                let its = if c.kind == Vertical { transpose_items(&items) } else { items.clone() };
                let r = round_container(&c, &its, eps, k).unwrap();
                prop_assert!(r.container.w <= c.w && r.container.h <= c.h);
                let sizes = candidate_sizes(&its, k).unwrap();
                prop_assert!(sizes.has_width(r.container.w) && sizes.has_height(r.container.h));
                let p: i64 = items.iter().map(|it| it.p).sum();
                let lost = r.dropped.map_or(0, |id| items[id as usize].p);
                prop_assert!(Rat::from_integer(p - lost) >= (Rat::one() - eps) * p);
                prop_assert!(placed_is_valid(&r.container.rect(), &r.placed));
                prop_assert_eq!(r.placed.len() + r.dropped.is_some() as usize, items.len());
            }
        }

        #[test]
        fn round_area_bounds(
            raw in prop::collection::vec((1i64..=4, 1i64..=4, 0i64..20), 0..40),
            e in 5i64..=10,
            cw in 40i64..=80,
            ch in 40i64..=80,
        ) {
            let eps = rat(1, e);
            let c = Container::new(Area, 0, 0, cw, ch);
            let mut items = Vec::new();
            let mut area = 0;
            for (k, &(w, h, p)) in raw.iter().enumerate() {
                if area + w * h <= cw * ch && is_small(w, h, cw, ch, eps) {
                    area += w * h;
                    items.push(Item::new(k as u64, w, h, p));
                }
            }
            let r = round_area_container(&c, &items, eps).unwrap();
            let p: i64 = items.iter().map(|it| it.p).sum();
            let kept: i64 = r.kept.iter().map(|it| it.p).sum();
            prop_assert!(Rat::from_integer(kept) >= (Rat::one() - eps * 3) * p);
            prop_assert!(r.kept.iter().map(Item::area).sum::<i64>() <= r.container.area());
            prop_assert!(r.container.w <= c.w && r.container.h <= c.h);
            let small = eps / (Rat::one() - eps);
            prop_assert!(r.kept.iter().all(|it| is_small(it.w, it.h, r.container.w, r.container.h, small)));
            if !items.is_empty() {
                let s0 = candidate_sizes_with(&items, 0, false, SIZE_CAP).unwrap();
                let limit = (items.len() as i64).max(e);
                let wmax = items.iter().map(|it| it.w).max().unwrap();
                let hmax = items.iter().map(|it| it.h).max().unwrap();
                prop_assert_eq!(r.container.w % wmax, 0);
                prop_assert_eq!(r.container.h % hmax, 0);
                prop_assert!(r.container.w / wmax <= limit && r.container.h / hmax <= limit);
                if limit == items.len() as i64 {
                    prop_assert!(s0.has_width(r.container.w) && s0.has_height(r.container.h));
                }
            }
        }

        #[test]
        fn greedy_fill_bounds(
            caps in prop::collection::vec((1i64..=3, 1i64..=20), 1..6),
            raw in prop::collection::vec((0usize..6, 1i64..=8), 0..30),
        ) {
            let cs: Vec<Container> = caps
                .iter()
                .enumerate()
                .map(|(j, &(w, h))| Container::new(Horizontal, 0, 20 * j as i64, w, h))
                .collect();
            let items: Vec<Item> = raw
                .iter()
                .enumerate()
                .map(|(k, &(j, h))| Item::new(k as u64, cs[j % cs.len()].w, h, 1))
                .collect();
            let f = greedy_integral_fill(&cs, &items).unwrap();
            prop_assert!(f.discarded.len() <= cs.len());
            prop_assert_eq!(f.placed.len() + f.discarded.len() + f.unplaced.len(), items.len());
            for w in 1..=3 {
                let cap: i64 = cs.iter().filter(|c| c.w == w).map(|c| c.h).sum();
                let need: i64 = items.iter().filter(|it| it.w == w).map(|it| it.h).sum();
                if need <= cap {
                    prop_assert!(f.unplaced.iter().all(|&id| items[id as usize].w != w));
                }
            }
            prop_assert!(placed_is_valid(&Rect::new(0, 0, 3, 120), &f.placed));
        }
    }
}
