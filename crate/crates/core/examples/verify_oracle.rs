//! Explicit orbit enumeration over Z/p^k compared with the formulas.
use pairorbits::oracle::{verify, Mode};
use pairorbits::{partitions_of, Error, ResultStore};

fn main() -> pairorbits::Result<()> {
    let store = ResultStore::in_memory();
    for (p, n_max) in [(2u64, 5u32), (3, 4)] {
        for n in 1..=n_max {
            for lambda in partitions_of(n) {
                for mode in [Mode::Quick, Mode::FullEndos] {
                    match verify(&lambda, p, mode, &store) {
                        Ok(r) => {
                            let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
                            println!("p={p} {:18} {mode:?}: {} checks, failed {failed:?}", lambda.to_string(), r.checks.len());
                        }
                        Err(Error::BudgetExceeded(why)) => println!("p={p} {:18} {mode:?}: skipped ({why})", lambda.to_string()),
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(())
}
