//! Changing omega by an exact form: d^omega ϱ = ϱ d^(omega + d mu) with
//! ϱ(α, β) = (α + μ∧β, β).

use cone_thom::form::ChartSpec;
use cone_thom::instance::{check_rng, generate, random_pair, FormSpec, GenConfig};
use cone_thom::thom::{rho, rho_conjugation_check};
use cone_thom::verify::rho_test_forms;

fn main() -> cone_thom::Result<()> {
    let data = generate(&GenConfig::new(2, 2, 9))?;
    let chart: ChartSpec = data.chart;
    let fp = data.fingerprint();
    let mut rng = check_rng(&fp, 1);
    let p = random_pair(&mut rng, chart, &FormSpec::total());
    for mu in rho_test_forms(&mut rng, chart) {
        println!("mu = {mu}");
        println!(
            "  rho(p) first slot has {} terms",
            rho(&mu, &p).first.monomial_count()
        );
        println!("  {}", rho_conjugation_check(&mu, &p, &data.omega, &fp));
    }
    Ok(())
}
