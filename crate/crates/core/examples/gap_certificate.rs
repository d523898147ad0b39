//! Report the inner/outer gap for one parameter set in each regime.

use bic_regions::gaussian::*;

fn main() -> bic_regions::Result<()> {
    for (p1, p2, a, b) in [(6.0, 3.0, 4.0, 1.0), (6.0, 3.0, 2.0, 3.0), (1.0, 0.8, 0.5, 0.4)] {
        let p = GbicParams::new(p1, p2, a, b)?;
        let g = gap_report(&p, 41)?;
        println!(
            "P1={p1} P2={p2} a={a} b={b}: regime {}, region gap {:.4} at alpha={:.2} beta={:.2}",
            g.regime, g.max_region_gap, g.worst.0, g.worst.1
        );
        println!(
            "  sum {:.4} / outer {:.4}, certified region={} sum={}",
            g.sum_rate.value, g.sum_outer, g.region_certified, g.sum_certified
        );
    }
    Ok(())
}
