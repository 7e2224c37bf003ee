//! With omega = 0 and phi = 0 the pair construction reduces to the classical
//! Mathai–Quillen form, computed here by a separate single-form pipeline.

use cone_thom::classical::{check_classical_compare, classical_thom_form};
use cone_thom::instance::{generate, GenConfig};
use cone_thom::thom::build_u;

fn main() -> cone_thom::Result<()> {
    let data = generate(&GenConfig::new(2, 2, 17).classical())?;
    let classical = classical_thom_form(data.chart, &data.eta);
    let pair = build_u(&data)?.u;
    println!("classical U = {classical}");
    println!("pair U = {pair}");
    println!("{}", check_classical_compare(&data));
    Ok(())
}
