//! Exact polynomial arithmetic in q.
use pairorbits::QPoly;

fn main() -> pairorbits::Result<()> {
    let q = QPoly::q();
    let one = QPoly::one();
    let p = QPoly::from_ints(&[2, 3, 1]);
    println!("p          = {p}");
    println!("p / (q+1)  = {}", p.exact_div(&(&q + &one))?);
    println!("p(q^2)     = {}", p.compose_power(2));
    println!("p(3)       = {}", p.eval_int(3));

    // q^5 (1 - q^-1)(1 - q^-2): the size of an orbit with two unit factors.
    let orbit = QPoly::laurent_product(5, &[1, 2])?;
    println!("orbit      = {orbit}  =  {}", orbit.factored());
    println!("latex      = {}", orbit.to_latex());

    let half = QPoly::from_ints(&[0, -1, 1]).exact_div(&QPoly::from_int(2))?;
    println!("rational   = {half}");
    println!("json       = {}", serde_json::to_string(&half).unwrap());

    match p.exact_div(&(&q + &QPoly::from_int(5))) {
        Ok(_) => unreachable!(),
        Err(e) => println!("inexact    : {e}"),
    }
    Ok(())
}
