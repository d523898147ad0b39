//! Check that the reduced regions cover the unreduced extreme points, and that
//! time-sharing two laws stays inside the merged-law region.

use bic_regions::dmbic::*;
use bic_regions::oracle::{random_instance, InstanceKind, InstanceSpec, LawKind};

fn main() -> bic_regions::Result<()> {
    for (which, kind) in [(1u8, InstanceKind::Oblivious), (2, InstanceKind::Cognizant)] {
        let inputs: Vec<_> = (0..4)
            .map(|seed| random_instance(&InstanceSpec::binary(seed, kind, LawKind::Simple)))
            .collect::<Result<_, _>>()?;
        let ch = &inputs[0].channel;
        let laws: Vec<SimpleInput> = inputs.iter().filter_map(|i| i.simple().cloned()).collect();
        let rep = verify_equivalence(which, ch, &laws, 1e-9)?;
        println!("equivalence {which}: {} points, {} uncovered", rep.items.len(), rep.failures());

        let ts = verify_timesharing_closure(which, ch, &laws[0], &laws[1], 0.3)?;
        println!("time-sharing {which}: {} mixtures, contained={}", ts.checked, ts.contained());
    }
    Ok(())
}
