//! n_λ(q) for every partition up to a given size, cached on disk if asked.
//!
//! cargo run --release --example nlambda_table -- 12 /tmp/nlambda.json
use std::time::Instant;

use pairorbits::cli::table_rows;
use pairorbits::ResultStore;

fn main() -> pairorbits::Result<()> {
    let mut args = std::env::args().skip(1);
    let n_max: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(6);
    let store = match args.next() {
        Some(path) => {
            let (s, warn) = ResultStore::open(path);
            if let Some(w) = warn {
                eprintln!("warning: {w}");
            }
            s
        }
        None => ResultStore::in_memory(),
    };
    let start = Instant::now();
    for n in 1..=n_max {
        println!("n = {n}");
        for (p, v) in table_rows(n, &store)? {
            println!("  {:24} {v}", p.to_string());
        }
    }
    store.save()?;
    eprintln!("{} entries in {:?}", store.len(), start.elapsed());
    Ok(())
}
