//! The skew-adjoint Bianchi identity 𝔸(Q, S) = (0, 0) on a generated instance.

use cone_thom::instance::{generate, GenConfig};
use cone_thom::thom::{bianchi_residual, build_qs, check_bianchi};

fn main() -> cone_thom::Result<()> {
    let data = generate(&GenConfig::new(2, 3, 42))?;
    let (q, s) = build_qs(&data);
    println!("Q = {q}");
    println!("S = {s}");
    println!("A(Q, S) = {}", bianchi_residual(&data));
    println!("{}", check_bianchi(&data));
    Ok(())
}
