//! Shrinks a frequent pattern set to its closed patterns.

use seqmine::dataset::load_sequence_db;
use seqmine::format::write_patterns;
use seqmine::sequence::{filter_closed, prefixspan_mine};
use seqmine::Constraints;

const SESSIONS: &str = "\
u1,1,home
u1,2,search
u1,3,product
u1,4,cart
u2,1,home
u2,2,product
u2,3,cart
u2,4,checkout
u3,1,home
u3,2,search
u3,3,product
u4,1,search
u4,2,product
u4,3,cart
u4,4,checkout
";

fn main() -> seqmine::Result<()> {
    let db = load_sequence_db(SESSIONS.as_bytes())?;
    let all = prefixspan_mine(&db, &Constraints::with_min_support(0.5))?;
    let mut out = std::io::stdout().lock();
    println!("all frequent patterns ({}):", all.patterns.len());
    write_patterns(&mut out, &all.patterns, db.alphabet())?;
    let closed = filter_closed(all);
    println!("\nclosed patterns ({}):", closed.patterns.len());
    write_patterns(&mut out, &closed.patterns, db.alphabet())?;
    Ok(())
}
