use std::fmt::Write;

use geoknap::core::{Instance, Packing};
use geoknap::Result;

/// Hue in degrees derived from the item id; neighbouring ids get distant hues.
fn hue(id: u64) -> u64 {
    let mut z = id.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    (z ^ (z >> 31)) % 360
}

/// SVG with the region as view box, y pointing up, one `rect` per placement.
pub fn render_svg(inst: &Instance, packing: &Packing) -> Result<String> {
    let r = packing.region;
    let scale = (800 / r.w.max(r.h).max(1)).max(1);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        r.x,
        r.y,
        r.w,
        r.h,
        r.w * scale,
        r.h * scale
    );
    let _ = writeln!(
        out,
        r#"  <path d="M{} {}h{}v{}h{}z" fill="white" stroke="black" vector-effect="non-scaling-stroke"/>"#,
        r.x, r.y, r.w, r.h, -r.w
    );
    let _ = writeln!(
        out,
        r#"  <g transform="matrix(1 0 0 -1 0 {})">"#,
        2 * r.y + r.h
    );
    let mut placed = packing.placed(inst)?;
    placed.sort_by_key(|p| p.id);
    for p in placed {
        let _ = writeln!(
            out,
            r#"    <rect x="{}" y="{}" width="{}" height="{}" fill="hsl({},65%,70%)" stroke="black" vector-effect="non-scaling-stroke" data-id="{}"/>"#,
            p.x,
            p.y,
            p.w,
            p.h,
            hue(p.id),
            p.id
        );
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
