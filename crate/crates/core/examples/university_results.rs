//! Trend analysis, charts and band sequences for the bundled results table.

use seqmine::dataset::{bundled_results, discretize, trend, BandScheme, Percent};
use seqmine::format::write_patterns;
use seqmine::plot::{ascii_chart, svg_chart};
use seqmine::sequence::prefixspan_mine;
use seqmine::Constraints;

fn main() -> seqmine::Result<()> {
    let records = bundled_results();
    let summary = trend(&records, Percent::parse("20").expect("valid"))?;
    for subject in &summary.subjects {
        print!("{}", ascii_chart(subject, 40));
    }
    for a in &summary.anomalies {
        println!("anomaly: {} {} {}", a.subject, a.year, a.delta);
    }

    let dir = std::env::temp_dir().join("seqmine-charts");
    std::fs::create_dir_all(&dir)?;
    for subject in &summary.subjects {
        std::fs::write(
            dir.join(format!("{}.svg", subject.subject)),
            svg_chart(subject),
        )?;
    }
    println!("charts written to {}", dir.display());

    // Each subject becomes a sequence of yearly grade bands.
    let db = discretize(&records, &BandScheme::default())?;
    let patterns = prefixspan_mine(&db, &Constraints::with_min_support(0.4).max_length(3))?;
    write_patterns(
        &mut std::io::stdout().lock(),
        &patterns.patterns,
        db.alphabet(),
    )?;
    Ok(())
}
