//! Evaluate every reduced-law region on the bundled binary channel.

use bic_regions::dmbic::*;
use bic_regions::polyhedra::{enumerate_vertices, pareto_filter};

fn main() -> bic_regions::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let ch = DmBicChannel::from_json(&std::fs::read_to_string(format!("{dir}/channel_binary.json"))?)?;
    let law = InputLaw::from_json(&std::fs::read_to_string(format!("{dir}/input_simple.json"))?, &ch)?;

    for kind in RegionKind::ALL.into_iter().filter(|k| !k.needs_factored()) {
        let r = eval_dm_region(kind, &ch, &law)?;
        let corners = pareto_filter(&enumerate_vertices(&r.system)?)?;
        println!("{kind}: {} dominant corners", corners.len());
        for c in corners {
            println!("  R1={:.4} R2={:.4} R3={:.4}", c[0], c[1], c[2]);
        }
    }
    if let InputLaw::Simple(s) = &law {
        for kind in DexpKind::ALL {
            let pts = dexp_formula(kind, &ch, s)?;
            let labels: String = pts.iter().map(|p| p.label).collect();
            println!("{kind} closed-form points: {labels}");
        }
    }
    Ok(())
}
