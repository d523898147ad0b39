//! Write the boundary slices and the sum-rate sweep as CSV into a directory
//! (default `./curves`).

use std::fs::File;
use std::io::BufWriter;

use bic_regions::gaussian::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "curves".into());
    std::fs::create_dir_all(&dir)?;

    for (tag, p, betas) in [("fig3", fig3_params(), &FIG3_BETAS[..]), ("fig5", fig5_params(), &FIG5_BETAS[..])] {
        for s in figure_slices(&p, betas, 101)? {
            let path = format!("{dir}/{tag}_beta{}.csv", s.beta);
            write_slice_csv(&mut BufWriter::new(File::create(&path)?), &p, s.beta, &s.rows)?;
            println!("wrote {path}");
        }
    }
    let rows = fig4_sweep(101)?;
    let path = format!("{dir}/fig4.csv");
    write_sweep_csv(&mut BufWriter::new(File::create(&path)?), 6.0, 3.0, 1.0, &rows)?;
    println!("wrote {path}");
    Ok(())
}
