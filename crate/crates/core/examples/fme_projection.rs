//! Eliminate a split rate from a small system and list the projected vertices.

use bic_regions::polyhedra::*;

fn main() -> bic_regions::Result<()> {
    let mut s = LinSystem::new(&["R1", "R2", "T"])?.all_nonneg();
    s.add_int(&[("R1", 1), ("T", 1)], Sense::Le, 4)?;
    s.add_int(&[("R2", 1), ("T", -1)], Sense::Le, 1)?;
    s.add_int(&[("R1", 1), ("R2", 1)], Sense::Le, 4)?;
    s.add_int(&[("T", 1)], Sense::Le, 2)?;

    let proj = remove_redundant(&fme_eliminate(&s, "T")?)?;
    println!("{}", format_system(&proj));
    for v in pareto_filter(&enumerate_vertices(&proj)?)? {
        println!("corner ({:.3}, {:.3})", v[0], v[1]);
    }
    Ok(())
}
