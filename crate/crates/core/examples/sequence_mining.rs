//! Mines the same database with both sequential miners and compares them.

use seqmine::dataset::load_sequence_db;
use seqmine::format::write_patterns;
use seqmine::sequence::Algorithm;
use seqmine::Constraints;

const CUSTOMERS: &str = "\
# customer,day,items bought
c1,1,a
c1,2,a b
c1,3,c
c2,1,a
c2,2,c
c2,3,b
c3,1,b
c3,2,a b
c3,3,c
c4,1,a
c4,5,b
";

fn main() -> seqmine::Result<()> {
    let db = load_sequence_db(CUSTOMERS.as_bytes())?;
    let constraints = Constraints::with_min_support(0.5);

    let mut outputs = Vec::new();
    for algorithm in [Algorithm::Gsp, Algorithm::PrefixSpan] {
        let result = algorithm.mine(&db, &constraints)?;
        println!(
            "{}: {} patterns, {} candidates counted, {} passes",
            algorithm.name(),
            result.patterns.len(),
            result.stats.candidates_generated,
            result.stats.database_passes
        );
        let mut text = Vec::new();
        write_patterns(&mut text, &result.patterns, db.alphabet())?;
        outputs.push(text);
    }
    assert_eq!(outputs[0], outputs[1]);
    print!("{}", String::from_utf8_lossy(&outputs[0]));
    Ok(())
}
