//! Minimal static SVG charts: line plots and counting staircases.
//! Output is deterministic (fixed-precision coordinates, no timestamps).

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

fn scale(points: &[(f64, f64)]) -> impl Fn(f64, f64) -> (f64, f64) {
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() || x1 <= x0 {
        x0 = 0.0;
        x1 = 1.0;
    }
    if !y0.is_finite() || y1 <= y0 {
        y0 -= 0.5;
        y1 = y0 + 1.0;
    }
    move |x, y| {
        let px = MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let py = HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
        (px, py)
    }
}

fn document(title: &str, body: String) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" ",
            "font-size=\"14\">{title}</text>\n",
            "<line x1=\"{m}\" y1=\"{ym}\" x2=\"{xm}\" y2=\"{ym}\" stroke=\"black\"/>\n",
            "<line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{ym}\" stroke=\"black\"/>\n",
            "{body}</svg>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        tx = WIDTH / 2.0,
        title = title,
        m = MARGIN,
        ym = HEIGHT - MARGIN,
        xm = WIDTH - MARGIN,
        body = body,
    )
}

/// A polyline through the given `(x, y)` points.
pub fn line_chart(title: &str, series: &[(f64, f64)]) -> String {
    let to_px = scale(series);
    let mut path = String::from("<polyline fill=\"none\" stroke=\"#1f6feb\" stroke-width=\"1.5\" points=\"");
    for &(x, y) in series {
        let (px, py) = to_px(x, y);
        path.push_str(&format!("{px:.2},{py:.2} "));
    }
    path.push_str("\"/>\n");
    document(title, path)
}

/// A right-continuous staircase through the jump points `(x_i, y_i)`:
/// the curve holds `y_{i-1}` until `x_i`, then steps up.
pub fn staircase_chart(title: &str, jumps: &[(f64, f64)]) -> String {
    let mut expanded: Vec<(f64, f64)> = vec![(0.0, 0.0)];
    let mut prev_y = 0.0;
    for &(x, y) in jumps {
        expanded.push((x, prev_y));
        expanded.push((x, y));
        prev_y = y;
    }
    if let Some(&(last_x, last_y)) = jumps.last() {
        expanded.push((last_x * 1.05, last_y));
    }
    let to_px = scale(&expanded);
    let mut path = String::from("<polyline fill=\"none\" stroke=\"#d29922\" stroke-width=\"1.5\" points=\"");
    for &(x, y) in &expanded {
        let (px, py) = to_px(x, y);
        path.push_str(&format!("{px:.2},{py:.2} "));
    }
    path.push_str("\"/>\n");
    document(title, path)
}
