//! Frequent itemsets and association rules over a small basket file.

use seqmine::dataset::load_transactions;
use seqmine::format::{write_itemsets, write_rules};
use seqmine::itemset::{generate_rules, mine_frequent_itemsets};

const BASKETS: &str = "\
t1,bread milk
t2,bread diapers beer eggs
t3,milk diapers beer cola
t4,bread milk diapers beer
t5,bread milk diapers cola
";

fn main() -> seqmine::Result<()> {
    let (alphabet, transactions) = load_transactions(BASKETS.as_bytes())?;
    let frequent = mine_frequent_itemsets(&transactions, 0.6)?;
    let rules = generate_rules(&frequent, 0.7)?;

    let mut out = std::io::stdout().lock();
    println!("frequent itemsets (support >= 0.6):");
    write_itemsets(&mut out, &frequent, &alphabet)?;
    println!("\nrules (confidence >= 0.7):");
    write_rules(&mut out, &rules, &alphabet)?;
    Ok(())
}
