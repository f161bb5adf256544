//! Build tree decompositions three ways and check them.

use tw_core::decomposition::{
    exact_treewidth, make_nice, minfill_decompose, mmd_lower_bound, validate, write_td,
};
use tw_core::graph::{make_grid, petersen};

fn main() -> tw_core::Result<()> {
    for (name, g) in [("3x3 grid", make_grid(3)?), ("Petersen", petersen())] {
        let heuristic = minfill_decompose(&g);
        let exact = exact_treewidth(&g, g.n())?;
        println!(
            "{name}: lower bound {}, treewidth {}, min-fill width {}",
            mmd_lower_bound(&g),
            exact.width().unwrap(),
            heuristic.width()
        );
        assert!(validate(&g, &heuristic).is_ok());
        let nice = make_nice(&heuristic)?;
        println!(
            "  nice form: {} nodes, width {}",
            nice.nodes().len(),
            nice.width()
        );
    }
    print!("{}", write_td(&minfill_decompose(&make_grid(3)?), 9));
    Ok(())
}
