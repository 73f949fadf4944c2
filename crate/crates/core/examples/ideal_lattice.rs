//! Order ideals of the fundamental poset restricted to the rows of a partition.
use pairorbits::{IdealLattice, Partition};

fn main() -> pairorbits::Result<()> {
    let lambda: Partition = std::env::args().nth(1).unwrap_or_else(|| "3,1".into()).parse()?;
    let lattice = IdealLattice::new(&lambda);
    println!("{lambda}: {} ideals", lattice.len());
    for (i, ideal) in lattice.ideals().iter().enumerate() {
        let levels: Vec<String> = lambda
            .rows()
            .iter()
            .map(|&k| match ideal.boundary(k) {
                Some(b) => format!("{k}->{b}"),
                None => format!("{k}->-"),
            })
            .collect();
        println!(
            "  {i:2}  {:12}  size {:2}  boundaries {}",
            ideal.to_string(),
            ideal.weighted_size(&lambda),
            levels.join(" ")
        );
    }

    let full = lattice.len() - 1;
    println!("mobius(I, top):");
    for a in lattice.lower_set(full) {
        let mu = lattice.mobius_idx(a, full);
        if mu != 0 {
            println!("  {:12} {mu:+}", lattice.ideals()[a].to_string());
        }
    }
    Ok(())
}
