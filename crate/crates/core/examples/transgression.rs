//! Transgression along a polynomial family in t: Y, Z and the exact identity
//! dU/dt = d^omega (normalization ∫^B (Y, Z) ∧ e^{-A}).

use cone_thom::instance::{generate, GenConfig};
use cone_thom::thom::{build_yz, check_transgression};

fn main() -> cone_thom::Result<()> {
    let data = generate(&GenConfig::new(2, 2, 3).with_t_degree(2))?;
    let (y, z) = build_yz(&data);
    println!("Y = {y}");
    println!("Z = {z}");
    let report = check_transgression(&data);
    println!("{report}");
    for (name, value) in &report.counters {
        println!("  {name} = {value}");
    }
    Ok(())
}
