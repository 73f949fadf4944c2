//! Representations (A, x, y) of dimension (n, 1): formula against brute force.
use pairorbits::oracle::{quiver_orbits_brute, similarity_classes_brute};
use pairorbits::quiver::{c_tau, enumerate_types, genfunc_check, r_n1};
use pairorbits::{QPoly, ResultStore};

fn main() -> pairorbits::Result<()> {
    let store = ResultStore::in_memory();
    for n in 1..=5 {
        let r = r_n1(n, &store)?;
        println!("R_{n},1 = {r}");
    }
    for (n, q) in [(1usize, 2u64), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let r = r_n1(n as u32, &store)?;
        let classes: QPoly = enumerate_types(n as u32).iter().map(c_tau).sum();
        println!(
            "n={n} q={q}: formula {} brute {}   classes {} brute {}",
            r.eval_int(q),
            quiver_orbits_brute(n, q)?,
            classes.eval_int(q),
            similarity_classes_brute(n, q)?
        );
    }
    println!("generating function agrees to n=3: {}", genfunc_check(3, &store)?);
    Ok(())
}
