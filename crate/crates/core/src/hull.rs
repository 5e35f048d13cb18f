//! Time-sharing between two sampled two-user regions.

use alloc::vec::Vec;

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Pareto frontier of the convex hull of two down-closed regions given by
/// sampled boundary points `(R_1, R_2)`. Vertices are returned by increasing `R_1`.
pub fn time_sharing_hull(region_a: &[[f64; 2]], region_b: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = region_a.iter().chain(region_b).copied().filter(|p| p[0].is_finite() && p[1].is_finite()).collect();
    if pts.is_empty() {
        return pts;
    }
    let y_max = pts.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max);
    let x_max = pts.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
    pts.push([0.0, y_max]);
    pts.push([x_max, 0.0]);
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(b[1].total_cmp(&a[1])));
    pts.dedup_by(|b, a| a[0] == b[0]);

    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) > 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// Height of a frontier (vertices by increasing `R_1`) at abscissa `x`; `None` outside its span.
pub fn frontier_height(frontier: &[[f64; 2]], x: f64) -> Option<f64> {
    let first = frontier.first()?;
    if x < first[0] {
        return None;
    }
    for w in frontier.windows(2) {
        let ([x0, y0], [x1, y1]) = (w[0], w[1]);
        if x <= x1 {
            return Some(if x1 > x0 { y0 + (y1 - y0) * (x - x0) / (x1 - x0) } else { y0.max(y1) });
        }
    }
    (x == frontier[frontier.len() - 1][0]).then(|| frontier[frontier.len() - 1][1])
}
