//! Line charts of yearly pass percentages, as SVG and as plain text.

use std::fmt::Write as _;

use crate::dataset::{Percent, SubjectTrend};

pub const WIDTH: u32 = 640;
pub const HEIGHT: u32 = 400;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

fn plot_height() -> f64 {
    HEIGHT as f64 - TOP - BOTTOM
}

fn plot_width() -> f64 {
    WIDTH as f64 - LEFT - RIGHT
}

/// Vertical SVG coordinate of a percentage; 100 maps to the top margin.
pub fn y_for(pct: Percent) -> f64 {
    TOP + (10_000 - pct.hundredths()) as f64 / 10_000.0 * plot_height()
}

fn x_for(index: usize, count: usize) -> f64 {
    if count <= 1 {
        LEFT + plot_width() / 2.0
    } else {
        LEFT + index as f64 / (count - 1) as f64 * plot_width()
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Fixed 640x400 viewport, year on x, pass percentage (0 to 100) on y.
pub fn svg_chart(series: &SubjectTrend) -> String {
    let n = series.points.len();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="16">Pass percentage: {}</text>"#,
        WIDTH as f64 / 2.0,
        escape(&series.subject)
    );
    let bottom = TOP + plot_height();
    let right = LEFT + plot_width();
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT:.2}" y1="{bottom:.2}" x2="{right:.2}" y2="{bottom:.2}" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT:.2}" y1="{TOP:.2}" x2="{LEFT:.2}" y2="{bottom:.2}" stroke="black"/>"#
    );
    for tick in (0..=100).step_by(20) {
        let y = y_for(Percent::from_hundredths(tick * 100));
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-size="11">{tick}</text>"#,
            LEFT - 6.0,
            y + 4.0
        );
    }
    for (i, p) in series.points.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="11">{}</text>"#,
            x_for(i, n),
            bottom + 18.0,
            p.year
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12">Year</text>"#,
        LEFT + plot_width() / 2.0,
        HEIGHT as f64 - 8.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" font-size="12" transform="rotate(-90 16 {:.2})">Pass %</text>"#,
        TOP + plot_height() / 2.0,
        TOP + plot_height() / 2.0
    );
    let points: Vec<String> = series
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| format!("{:.2},{:.2}", x_for(i, n), y_for(p.pass_pct)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
        points.join(" ")
    );
    s.push_str("</svg>\n");
    s
}

/// One row per year with a bar scaled to `width` columns at 100%.
pub fn ascii_chart(series: &SubjectTrend, width: usize) -> String {
    let mut s = format!("{}\n", series.subject);
    for p in &series.points {
        let filled = (p.pass_pct.hundredths() as usize * width + 5_000) / 10_000;
        let _ = writeln!(
            s,
            "{} |{}{}| {:>6}",
            p.year,
            "#".repeat(filled),
            " ".repeat(width - filled),
            p.pass_pct.to_string()
        );
    }
    s
}
