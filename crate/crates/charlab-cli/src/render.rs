//! SVG lozenge tilings via the standard correspondence: a plane partition in
//! an `a x b x c` box is a stack of unit cubes, and its visible surface in
//! isometric projection is a rhombus tiling of the hexagon with side lengths
//! `a, b, c, a, b, c`. The all-zero partition shows the box floor and back
//! walls; each cube contributes its top and two exposed side faces.

use charlab::combinat::PlanePartition;

const SQRT3_2: f64 = 0.866_025_403_784_438_6;
const SCALE: f64 = 30.0;
const MARGIN: f64 = 12.0;

const TOP_FILL: &str = "#e8e8e8";
const LEFT_FILL: &str = "#b9b9b9";
const RIGHT_FILL: &str = "#8a8a8a";

/// Isometric projection; SVG y grows downward.
fn project(x: f64, y: f64, z: f64) -> (f64, f64) {
    ((y - x) * SQRT3_2, (x + y) * 0.5 - z)
}

type Quad = [(f64, f64); 4];

fn quad(corners: [(f64, f64, f64); 4]) -> Quad {
    corners.map(|(x, y, z)| project(x, y, z))
}

pub fn render_pp_svg(pp: &PlanePartition) -> String {
    let b = pp.rows();
    let c = pp.cols();
    let a = pp.height_bound() as usize;

    let mut faces: Vec<(Quad, &str)> = Vec::with_capacity(b * c + a * (b + c));

    // Top faces: one per base cell, at the column height (the floor at 0).
    for i in 0..b {
        for j in 0..c {
            let (x, y, z) = (i as f64, j as f64, pp.entry(i, j) as f64);
            faces.push((
                quad([
                    (x, y, z),
                    (x + 1.0, y, z),
                    (x + 1.0, y + 1.0, z),
                    (x, y + 1.0, z),
                ]),
                TOP_FILL,
            ));
        }
    }
    // Side faces along each row: at level k the surface crosses at the
    // number of columns still rising above k (the back wall when none do).
    for i in 0..b {
        for k in 0..a {
            let r = (0..c).filter(|&j| pp.entry(i, j) > k as u32).count() as f64;
            let (x, z) = (i as f64, k as f64);
            faces.push((
                quad([
                    (x, r, z),
                    (x + 1.0, r, z),
                    (x + 1.0, r, z + 1.0),
                    (x, r, z + 1.0),
                ]),
                LEFT_FILL,
            ));
        }
    }
    // Side faces along each column.
    for j in 0..c {
        for k in 0..a {
            let r = (0..b).filter(|&i| pp.entry(i, j) > k as u32).count() as f64;
            let (y, z) = (j as f64, k as f64);
            faces.push((
                quad([
                    (r, y, z),
                    (r, y + 1.0, z),
                    (r, y + 1.0, z + 1.0),
                    (r, y, z + 1.0),
                ]),
                RIGHT_FILL,
            ));
        }
    }

    let mut min_x = f64::MAX;
    let mut min_y = f64::MAX;
    let mut max_x = f64::MIN;
    let mut max_y = f64::MIN;
    for (q, _) in &faces {
        for &(x, y) in q {
            min_x = min_x.min(x * SCALE);
            min_y = min_y.min(y * SCALE);
            max_x = max_x.max(x * SCALE);
            max_y = max_y.max(y * SCALE);
        }
    }
    if faces.is_empty() {
        min_x = 0.0;
        min_y = 0.0;
        max_x = 1.0;
        max_y = 1.0;
    }
    let width = max_x - min_x + 2.0 * MARGIN;
    let height = max_y - min_y + 2.0 * MARGIN;
    let ox = MARGIN - min_x;
    let oy = MARGIN - min_y;

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">\n"
    ));
    for (q, fill) in &faces {
        let points: Vec<String> = q
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", x * SCALE + ox, y * SCALE + oy))
            .collect();
        svg.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"{}\" stroke=\"#303030\" stroke-width=\"1.2\"/>\n",
            points.join(" "),
            fill
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
