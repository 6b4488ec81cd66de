//! How time and index gap bounds change the support of one pattern.

use seqmine::dataset::load_sequence_db;
use seqmine::format::{parse_pattern, render_pattern};
use seqmine::model::support;
use seqmine::Constraints;

const VISITS: &str = "\
p1,1,checkup
p1,2,xray
p1,9,surgery
p2,1,checkup
p2,6,surgery
p3,1,checkup
p3,3,bloodwork
p3,4,surgery
p4,2,checkup
p4,3,surgery
";

fn main() -> seqmine::Result<()> {
    let db = load_sequence_db(VISITS.as_bytes())?;
    let pattern = parse_pattern("<{checkup},{surgery}>", db.alphabet())?;
    let base = Constraints::default();
    let settings = [
        ("no constraints", base.clone()),
        ("max_gap 5", base.clone().max_gap(5)),
        ("max_gap 3", base.clone().max_gap(3)),
        ("max_gap 3, min_gap 1", base.clone().max_gap(3).min_gap(1)),
        ("max_index_gap 0", base.clone().max_index_gap(0)),
    ];
    println!("{}", render_pattern(&pattern, db.alphabet()));
    for (label, constraints) in settings {
        let s = support(&pattern, &db, &constraints)?;
        println!("  {label:<22} count={} support={:.4}", s.count, s.support);
    }
    Ok(())
}
