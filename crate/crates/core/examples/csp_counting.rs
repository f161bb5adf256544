//! Count the proper 3-colourings of a 5-cycle as solutions of a binary CSP.

use std::sync::Arc;

use tw_core::csp::{
    brute_force_count, constraint_graph, count_solutions, solve, CspInstance, Relation,
};
use tw_core::decomposition::minfill_decompose;

fn main() -> tw_core::Result<()> {
    let colours = 3;
    let differ = Arc::new(Relation::from_fn(colours, |a, b| a != b));
    let mut inst = CspInstance::new(5, colours);
    for v in 0..5 {
        inst.add_constraint(v, (v + 1) % 5, differ.clone())?;
    }
    let td = minfill_decompose(&constraint_graph(&inst));
    let count = count_solutions(&inst, &td)?;
    println!(
        "3-colourings of C5: {count} (exhaustive: {})",
        brute_force_count(&inst)?
    );
    if let Some(f) = solve(&inst, &td)? {
        println!("one colouring: {:?}", f.0);
    }
    Ok(())
}
