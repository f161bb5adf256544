//! The planar win/win k-path decision and the branch it takes.

use tw_core::graph::{grid, longest_path_bruteforce, make_grid};
use tw_core::kpath::{kpath_planar, kpath_planar_with, WinWinConfig};

fn main() -> tw_core::Result<()> {
    let g = make_grid(3)?;
    for k in [4, 9, 10] {
        let r = kpath_planar(&g, k, true)?;
        println!(
            "3x3 grid, k={k}: {} via {} (width {}, threshold {})",
            if r.answer { "YES" } else { "NO" },
            r.branch.name(),
            r.width,
            r.threshold
        );
    }
    // pretend only width 1 is cheap, forcing the other branches
    let forced = WinWinConfig {
        acceptance_width: Some(1),
    };
    let r = kpath_planar_with(&g, 9, true, &forced)?;
    println!("forced: {} via {}", r.answer, r.branch.name());
    let wide = grid(4, 4)?;
    println!(
        "4x4 grid longest path: {} vertices",
        longest_path_bruteforce(&wide)?
    );
    Ok(())
}
