//! Solve one equation over a two-element chain and print its irreducible
//! components. Mirrors what `semichain decompose` does on the command line.

fn main() -> Result<(), Box<dyn std::error::Error>> {
    use semichain::{decompose, parse_equation, solve, Chain};

    let chain = Chain::new(2)?;
    let eq = parse_equation("x1x2 = x1x3", 3)?;

    let solutions = solve(&eq, chain, 3)?;
    println!("{eq} has {} solutions over the chain a1 < a2", solutions.len());

    for c in decompose(&eq, chain, 3)? {
        println!(
            "{} size {} canonical {}",
            c.partition,
            c.set.len(),
            c.partition.canonical_point()
        );
    }
    Ok(())
}
