//! Every check on a batch of instances, verified in parallel, reported as
//! JSON in fingerprint order.

use cone_thom::cli::render;
use cone_thom::instance::{batch_seeds, generate, GenConfig};
use cone_thom::verify::{run_batch, CheckName};

fn main() -> cone_thom::Result<()> {
    let instances = batch_seeds(2024, 4)
        .into_iter()
        .map(|seed| generate(&GenConfig::new(2, 3, seed).with_t_degree(1)))
        .collect::<cone_thom::Result<Vec<_>>>()?;
    let reports = run_batch(CheckName::All, &instances);
    print!("{}", render("all", &reports, false)?);
    let json = render("all", &reports[..1], true)?;
    println!("first report as JSON:\n{json}");
    Ok(())
}
