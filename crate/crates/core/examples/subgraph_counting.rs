//! Embedding and subgraph counts from a homomorphism expansion.

use tw_core::graph::{cycle, make_grid, path};
use tw_core::subcount::{brute_force_sub, emb_to_hom_expansion, SubgraphCounter};

fn main() -> tw_core::Result<()> {
    let c4 = cycle(4)?;
    let expansion = emb_to_hom_expansion(&c4)?;
    println!("#Emb(C4, G) =");
    for term in expansion.grouped()? {
        println!(
            "  {:+} * #Hom(quotient on {} vertices, {} edges)",
            term.coefficient,
            term.quotient.n(),
            term.quotient.m()
        );
    }
    let grid = make_grid(3)?;
    for (name, h) in [("C4", c4), ("P3", path(3)), ("P4", path(4))] {
        let mut counter = SubgraphCounter::new(&h)?;
        println!(
            "{name} in 3x3 grid: {} embeddings, {} copies (brute force {})",
            counter.emb(&grid)?,
            counter.sub(&grid)?,
            brute_force_sub(&h, &grid)?
        );
    }
    Ok(())
}
