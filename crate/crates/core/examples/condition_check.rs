//! Search for input laws that violate each channel condition.

use bic_regions::dmbic::*;
use bic_regions::oracle::{random_instance, InstanceKind, InstanceSpec, LawKind};

fn main() -> bic_regions::Result<()> {
    let inst = random_instance(&InstanceSpec::binary(11, InstanceKind::Generic, LawKind::Simple))?;
    for kind in ConditionKind::ALL {
        let v = check_condition(kind, &inst.channel, 200, 0)?;
        print!("{kind}: {} (min gap {:.5}, {} starts)", v.status, v.min_gap, v.starts);
        if let Some(w) = &v.witness {
            print!(", witness margin {:.5}", w.margin);
        }
        println!();
    }
    Ok(())
}
