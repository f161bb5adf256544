//! Pattern containment and occurrence counting in permutations.

use tw_core::permpattern::{
    brute_force_count, contains, count_occurrences, find_occurrence, incidence_graph, Permutation,
};

fn main() -> tw_core::Result<()> {
    let sigma: Permutation = "3 4 5 2 1 7 8 6".parse()?;
    for pattern in ["2 1 3 4", "4 3 2 1", "2 1"] {
        let pi: Permutation = pattern.parse()?;
        println!(
            "({pi}) in ({sigma}): contains {}, {} occurrences (brute force {}), first {:?}",
            contains(&pi, &sigma),
            count_occurrences(&pi, &sigma),
            brute_force_count(&pi, &sigma)?,
            find_occurrence(&pi, &sigma)
        );
    }
    let g = incidence_graph(&"2 1 3 4".parse()?);
    println!(
        "incidence graph of 2 1 3 4: {} vertices, {} edges",
        g.n(),
        g.m()
    );
    Ok(())
}
