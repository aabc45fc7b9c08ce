//! Static SVG rendering of the plot CSVs.
//!
//! Output is a pure function of the CSV text. Data markers carry
//! `class="marker"` and bars `class="bar"`, so figures can be checked
//! mechanically.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::{Classification, PlotKind};
use crate::error::{Error, Result};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;
const TICKS: usize = 5;

const CITY_COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn class_color(c: Classification) -> &'static str {
    match c {
        Classification::Optimal => "#2ca02c",
        Classification::Suboptimal => "#ff7f0e",
        Classification::Trivial => "#d62728",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn malformed(line: usize, message: impl std::fmt::Display) -> Error {
    Error::Csv(format!("record {line}: {message}"))
}

fn parse_field<T: std::str::FromStr>(rec: &csv::StringRecord, idx: usize, line: usize) -> Result<T> {
    let raw = rec.get(idx).ok_or_else(|| malformed(line, "missing field"))?;
    raw.parse()
        .map_err(|_| malformed(line, format!("cannot parse `{raw}`")))
}

struct ScatterPoint {
    city: String,
    n: usize,
    x: f64,
    ratio: f64,
    class: Classification,
    true_opt: usize,
}

struct Bar {
    city: String,
    n: usize,
    class: Classification,
    count: usize,
}

/// Linear map from a data interval onto a pixel interval.
#[derive(Clone, Copy)]
struct Scale {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Scale {
    fn new(lo: f64, hi: f64, px_lo: f64, px_hi: f64) -> Self {
        let (lo, hi) = if hi - lo < 1e-12 { (lo - 0.5, hi + 0.5) } else { (lo, hi) };
        Self { lo, hi, px_lo, px_hi }
    }

    fn map(&self, v: f64) -> f64 {
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }

    fn ticks(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=TICKS).map(move |i| self.lo + (self.hi - self.lo) * i as f64 / TICKS as f64)
    }
}

struct Canvas {
    out: String,
}

impl Canvas {
    fn new(title: &str) -> Self {
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            out,
            r#"<text class="title" x="{:.2}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
            LEFT + (WIDTH - LEFT - RIGHT) / 2.0,
            escape(title)
        );
        Self { out }
    }

    fn axes(&mut self, x: Option<&Scale>, y: &Scale, x_label: &str, y_label: &str) {
        let (x0, x1) = (LEFT, WIDTH - RIGHT);
        let (y0, y1) = (HEIGHT - BOTTOM, TOP);
        let o = &mut self.out;
        let _ = writeln!(o, r#"<line class="axis" x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black"/>"#);
        let _ = writeln!(o, r#"<line class="axis" x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black"/>"#);
        for t in y.ticks() {
            let py = y.map(t);
            let _ = writeln!(o, r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0:.2}" y2="{py:.2}" stroke="black"/>"#, x0 - 5.0);
            let _ = writeln!(
                o,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{t:.2}</text>"#,
                x0 - 8.0,
                py + 4.0
            );
        }
        if let Some(x) = x {
            for t in x.ticks() {
                let px = x.map(t);
                let _ = writeln!(o, r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#, y0 + 5.0);
                let _ = writeln!(
                    o,
                    r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{t:.2}</text>"#,
                    y0 + 20.0
                );
            }
        }
        let _ = writeln!(
            o,
            r#"<text class="x-label" x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            (x0 + x1) / 2.0,
            HEIGHT - 20.0,
            escape(x_label)
        );
        let _ = writeln!(
            o,
            r#"<text class="y-label" x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
            (y0 + y1) / 2.0,
            (y0 + y1) / 2.0,
            escape(y_label)
        );
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

/// Marker glyph for city index `k`: circle, triangle, square, diamond.
fn marker(out: &mut String, class: &str, k: usize, cx: f64, cy: f64, color: &str, extra: &str) {
    let r = 5.0;
    let _ = match k % 4 {
        0 => writeln!(
            out,
            r#"<circle class="{class}" cx="{cx:.2}" cy="{cy:.2}" r="{r}" fill="{color}" fill-opacity="0.75"{extra}/>"#
        ),
        1 => writeln!(
            out,
            r#"<polygon class="{class}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{color}" fill-opacity="0.75"{extra}/>"#,
            cx,
            cy - r,
            cx - r,
            cy + r,
            cx + r,
            cy + r
        ),
        2 => writeln!(
            out,
            r#"<rect class="{class}" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{color}" fill-opacity="0.75"{extra}/>"#,
            cx - r,
            cy - r,
            2.0 * r,
            2.0 * r
        ),
        _ => writeln!(
            out,
            r#"<polygon class="{class}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{color}" fill-opacity="0.75"{extra}/>"#,
            cx,
            cy - r,
            cx + r,
            cy,
            cx,
            cy + r,
            cx - r,
            cy
        ),
    };
}

fn scatter(kind: PlotKind, points: &[ScatterPoint]) -> String {
    let (title, x_label) = if kind == PlotKind::ConnectivityScatter {
        (
            "Approximation ratio vs algebraic connectivity",
            "algebraic connectivity (Fiedler value)",
        )
    } else {
        ("Approximation ratio vs degree variance", "degree variance")
    };

    let mut cities: Vec<&str> = Vec::new();
    for p in points {
        if !cities.contains(&p.city.as_str()) {
            cities.push(&p.city);
        }
    }
    let limits: BTreeSet<(usize, usize)> = points
        .iter()
        .filter(|p| p.true_opt > 0)
        .map(|p| (p.n, p.true_opt))
        .collect();
    let limit_values: Vec<((usize, usize), f64)> = limits
        .iter()
        .map(|&(n, opt)| ((n, opt), n as f64 / opt as f64))
        .collect();

    let x_max = points.iter().map(|p| p.x).fold(1.0, f64::max);
    let x_min = points.iter().map(|p| p.x).fold(0.0, f64::min);
    let y_max = points
        .iter()
        .map(|p| p.ratio)
        .chain(limit_values.iter().map(|l| l.1))
        .fold(2.0, f64::max);
    let xs = Scale::new(x_min, x_max * 1.05, LEFT, WIDTH - RIGHT);
    let ys = Scale::new(0.8, y_max * 1.05, HEIGHT - BOTTOM, TOP);

    let mut c = Canvas::new(title);
    c.axes(Some(&xs), &ys, x_label, "approximation ratio");

    for ((n, opt), v) in &limit_values {
        let py = ys.map(*v);
        let _ = writeln!(
            c.out,
            r##"<line class="trivial-limit" x1="{LEFT:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#555" stroke-dasharray="6 4"/>"##,
            WIDTH - RIGHT
        );
        let _ = writeln!(
            c.out,
            r##"<text x="{:.2}" y="{:.2}" text-anchor="end" fill="#555" font-size="10">trivial limit N={n}, opt={opt}</text>"##,
            WIDTH - RIGHT - 4.0,
            py - 4.0
        );
    }

    for p in points {
        let k = cities.iter().position(|&c| c == p.city).unwrap_or(0);
        let extra = format!(
            r#" data-city="{}" data-n="{}" data-classification="{}""#,
            escape(&p.city),
            p.n,
            p.class
        );
        marker(
            &mut c.out,
            "marker",
            k,
            xs.map(p.x),
            ys.map(p.ratio),
            CITY_COLORS[k % CITY_COLORS.len()],
            &extra,
        );
    }

    let lx = WIDTH - RIGHT + 20.0;
    for (k, city) in cities.iter().enumerate() {
        let ly = TOP + 20.0 + 22.0 * k as f64;
        marker(&mut c.out, "legend-marker", k, lx, ly, CITY_COLORS[k % CITY_COLORS.len()], "");
        let _ = writeln!(
            c.out,
            r#"<text class="legend" x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 12.0,
            ly + 4.0,
            escape(city)
        );
    }
    c.finish()
}

fn bars(data: &[Bar]) -> String {
    let mut groups: Vec<(&str, usize)> = Vec::new();
    for b in data {
        if !groups.contains(&(b.city.as_str(), b.n)) {
            groups.push((&b.city, b.n));
        }
    }
    let y_max = data.iter().map(|b| b.count).max().unwrap_or(0).max(1) as f64;
    let ys = Scale::new(0.0, y_max, HEIGHT - BOTTOM, TOP);

    let mut c = Canvas::new("QAOA outcome distribution");
    c.axes(None, &ys, "city, subgraph size", "runs");

    let plot_w = WIDTH - LEFT - RIGHT;
    let group_w = plot_w / groups.len().max(1) as f64;
    let bar_w = group_w * 0.8 / 3.0;
    for (gi, &(city, n)) in groups.iter().enumerate() {
        let gx = LEFT + group_w * gi as f64 + group_w * 0.1;
        for b in data.iter().filter(|b| b.city == city && b.n == n) {
            let slot = Classification::ALL.iter().position(|&k| k == b.class).unwrap_or(0);
            let x = gx + bar_w * slot as f64;
            let top = ys.map(b.count as f64);
            let _ = writeln!(
                c.out,
                r#"<rect class="bar" x="{x:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="{}" data-city="{}" data-n="{n}" data-classification="{}" data-count="{}"/>"#,
                bar_w,
                (HEIGHT - BOTTOM) - top,
                class_color(b.class),
                escape(city),
                b.class,
                b.count
            );
        }
        let _ = writeln!(
            c.out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{} (N={n})</text>"#,
            gx + bar_w * 1.5,
            HEIGHT - BOTTOM + 18.0,
            escape(city)
        );
    }

    let lx = WIDTH - RIGHT + 20.0;
    for (k, class) in Classification::ALL.into_iter().enumerate() {
        let ly = TOP + 20.0 + 22.0 * k as f64;
        let _ = writeln!(
            c.out,
            r#"<rect class="legend-marker" x="{:.2}" y="{:.2}" width="10" height="10" fill="{}"/>"#,
            lx - 5.0,
            ly - 5.0,
            class_color(class)
        );
        let _ = writeln!(
            c.out,
            r#"<text class="legend" x="{:.2}" y="{:.2}">{class}</text>"#,
            lx + 12.0,
            ly + 4.0
        );
    }
    c.finish()
}

/// Renders one plot CSV (any kind produced by `emit_plot_data`) as SVG.
pub fn emit_figure(csv_text: &str) -> Result<String> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(csv_text.as_bytes());
    let header = rdr.headers().map_err(|e| Error::Csv(e.to_string()))?.clone();
    let fields: Vec<&str> = header.iter().collect();
    let kind = PlotKind::from_header(&fields)
        .ok_or_else(|| Error::Csv(format!("unrecognized header {fields:?}")))?;

    let records: Vec<csv::StringRecord> = rdr
        .records()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Csv(e.to_string()))?;

    match kind {
        PlotKind::OutcomeBars => {
            let data = records
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    Ok(Bar {
                        city: parse_field(r, 0, i + 1)?,
                        n: parse_field(r, 1, i + 1)?,
                        class: parse_field(r, 2, i + 1)?,
                        count: parse_field(r, 3, i + 1)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(bars(&data))
        }
        _ => {
            let points = records
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let p = ScatterPoint {
                        city: parse_field(r, 0, i + 1)?,
                        n: parse_field(r, 1, i + 1)?,
                        x: parse_field(r, 2, i + 1)?,
                        ratio: parse_field(r, 3, i + 1)?,
                        class: parse_field(r, 4, i + 1)?,
                        true_opt: parse_field(r, 5, i + 1)?,
                    };
                    if !(p.x.is_finite() && p.ratio.is_finite()) {
                        return Err(malformed(i + 1, "non-finite coordinate"));
                    }
                    Ok(p)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(scatter(kind, &points))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn outcome_bars_render_one_chart() {
        let csv = "city,N,classification,count\na,8,optimal,6\na,8,suboptimal,1\na,8,trivial,3\n";
        let svg = emit_figure(csv).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(count(&svg, r#"class="bar""#), 3);
        assert_eq!(count(&svg, "<svg"), 1);
    }

    #[test]
    fn two_cities_get_two_marker_styles() {
        let csv = "city,N,fiedler,approximation_ratio,classification,true_opt\n\
                   planned,8,0.5,1,optimal,4\n\
                   organic,8,0.2,2.5,trivial,3\n";
        let svg = emit_figure(csv).unwrap();
        assert_eq!(count(&svg, r#"class="marker""#), 2);
        assert!(svg.contains(r#"<circle class="marker""#));
        assert!(svg.contains(r#"<polygon class="marker""#));
        assert_eq!(count(&svg, r#"class="trivial-limit""#), 2);
    }

    #[test]
    fn empty_csv_draws_axes_only() {
        let svg = emit_figure("city,N,degree_variance,approximation_ratio,classification,true_opt\n").unwrap();
        assert_eq!(count(&svg, r#"class="axis""#), 2);
        assert_eq!(count(&svg, r#"class="marker""#), 0);
    }

    #[test]
    fn deterministic() {
        let csv = "city,N,degree_variance,approximation_ratio,classification,true_opt\nx,8,0.75,1.333,suboptimal,3\n";
        assert_eq!(emit_figure(csv).unwrap(), emit_figure(csv).unwrap());
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(emit_figure("a,b\n1,2\n"), Err(Error::Csv(_))));
        assert!(matches!(
            emit_figure("city,N,classification,count\na,eight,optimal,1\n"),
            Err(Error::Csv(_))
        ));
        assert!(matches!(
            emit_figure("city,N,classification,count\na,8,great,1\n"),
            Err(Error::Csv(_))
        ));
        assert!(matches!(
            emit_figure("city,N,classification,count\na,8,optimal\n"),
            Err(Error::Csv(_))
        ));
    }

    #[test]
    fn labels_are_escaped() {
        let csv = "city,N,classification,count\n<a&b>,8,optimal,1\n";
        let svg = emit_figure(csv).unwrap();
        assert!(svg.contains("&lt;a&amp;b&gt;"));
    }
}
