//! Maximum independent set by branching, by tree-decomposition DP and by
//! exhaustive search.

use rand::SeedableRng;
use tw_core::decomposition::minfill_decompose;
use tw_core::graph::{petersen, random_gnp};
use tw_core::mis::{mis_branching_stats, mis_bruteforce, mis_td};

fn main() -> tw_core::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (name, g) in [
        ("Petersen", petersen()),
        ("G(20, 0.2)", random_gnp(20, 0.2, &mut rng)),
    ] {
        let (size, stats) = mis_branching_stats(&g);
        let td = minfill_decompose(&g);
        println!(
            "{name}: {size} by branching ({} branch nodes, {} leaves), {} by DP at width {}, {} by brute force",
            stats.branch_nodes,
            stats.leaves,
            mis_td(&g, &td)?,
            td.width(),
            mis_bruteforce(&g)?
        );
    }
    Ok(())
}
