//! Orbits of the stabilizer of m(I) on M, grouped by size.
//!
//! cargo run --example census -- "5,4,4,2,1" "1:4,0:1"
use pairorbits::{canonical_split, orbit_census, OrderIdeal, Partition};

fn main() -> pairorbits::Result<()> {
    let mut args = std::env::args().skip(1);
    let lambda: Partition = args.next().unwrap_or_else(|| "5,4,4,2,1".into()).parse()?;
    let ideal: OrderIdeal = args.next().unwrap_or_else(|| "1:4,0:1".into()).parse()?;

    let split = canonical_split(&lambda, &ideal)?;
    println!("lambda' = {}   lambda'' = {}   quotient = {}", split.lambda_prime, split.lambda_dprime, split.quotient);

    let census = orbit_census(&lambda, &ideal)?;
    println!("{:>20}  orbits", "cardinality");
    for (size, count) in &census.rows {
        println!("{:>20}  {}", size.factored(), count.factored());
    }
    println!("{} classes, total {}", census.len(), census.total());
    println!("mass {}", census.mass());
    Ok(())
}
