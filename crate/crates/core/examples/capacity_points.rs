//! Sum rates and the special parameter families where the bounds meet.

use bic_regions::gaussian::*;

fn main() -> bic_regions::Result<()> {
    let p = GbicParams::new(6.0, 3.0, 4.0, 1.0)?;
    let s = sum_rate(&p, 201)?;
    println!("sum rate {:.6} ({}) outer {:.6}", s.value, s.branch, sum_outer(&p, 201)?);

    let b = regime_b_sum(&GbicParams::new(6.0, 3.0, 2.0, 3.0)?, 201)?;
    println!("regime B: Rs1 {:.4} Rs2 {:.4} Rs {:.4} Ro {:.4}", b.rs1, b.rs2, b.rs, b.ro);

    let cases = [
        (SpecialKind::AVstrong, GbicParams::new(0.1, 0.1, 3.0, 3.0)?),
        (SpecialKind::T9InnerFace, fig5_params()),
        (SpecialKind::T9LowBeta, fig5_params()),
    ];
    for (kind, p) in cases {
        match capacity_special(kind, &p, 0.5, 0.1) {
            Ok(c) => {
                let [r1, r2] = [c.corner()[0], c.corner()[1]];
                println!("{kind}: corner ({r1:.4}, {r2:.4})");
            }
            Err(e) => println!("{kind}: {e}"),
        }
    }
    Ok(())
}
