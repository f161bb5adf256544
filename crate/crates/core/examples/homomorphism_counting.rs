//! Homomorphism counts through the CSP engine, checked by enumeration.

use rand::SeedableRng;
use tw_core::graph::{cycle, petersen, random_gnp};
use tw_core::homcount::{brute_force_hom, count_hom};

fn main() -> tw_core::Result<()> {
    let c4 = cycle(4)?;
    // closed 4-walks in the Petersen graph: trace of A^4
    println!("#Hom(C4, Petersen) = {}", count_hom(&c4, &petersen()));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let g = random_gnp(6, 0.5, &mut rng);
    println!(
        "#Hom(C5, G) = {} (brute force {})",
        count_hom(&cycle(5)?, &g),
        brute_force_hom(&cycle(5)?, &g)?
    );
    Ok(())
}
