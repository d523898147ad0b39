//! Project the split-rate system of the bundled factored law and compare it
//! with the closed-form region.

use bic_regions::dmbic::*;
use bic_regions::polyhedra::format_system;

fn main() -> bic_regions::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let ch = DmBicChannel::from_json(&std::fs::read_to_string(format!("{dir}/channel_binary.json"))?)?;
    let InputLaw::Factored(inp) = InputLaw::from_json(&std::fs::read_to_string(format!("{dir}/input_factored.json"))?, &ch)? else {
        unreachable!("input_factored.json holds a factored law");
    };

    let r = derive_theorem1(&ch, &inp, 10_000, 0)?;
    println!("binning margin {:.6}", r.binning_margin);
    match (&r.projected, &r.fallback) {
        (Some(p), _) => {
            println!("projection:\n{}", format_system(p));
            println!("matches closed form: {}", r.matches());
        }
        (None, Some(fb)) => println!("fallback, inside outer region: {}", fb.inside_outer),
        (None, None) => unreachable!(),
    }
    Ok(())
}
