//! Orbit counts in M*_I × M*_L for every pair of ideals, and one refined census.
use pairorbits::refined::{refined_census, refined_matrix};
use pairorbits::{n_lambda, Partition, ResultStore};

fn main() -> pairorbits::Result<()> {
    let lambda: Partition = std::env::args().nth(1).unwrap_or_else(|| "2,1".into()).parse()?;
    let m = refined_matrix(&lambda)?;
    for (i, row) in m.totals.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|p| format!("{:>10}", p.to_string())).collect();
        println!("{:>8} | {}", m.ideals[i].to_string(), cells.join(" "));
    }
    let store = ResultStore::in_memory();
    println!("grand total {}   n_lambda {}", m.grand_total(), n_lambda(&lambda, &store)?);

    let top = m.ideals.last().unwrap();
    println!("census of M*_top x M*_top:");
    for (size, count) in &refined_census(&lambda, top, top)?.rows {
        println!("  {:>16}  {}", size.factored(), count);
    }
    Ok(())
}
