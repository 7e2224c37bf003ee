//! Seeded instance generation, batch seeds, fingerprints and instance files.

use cone_thom::instance::{batch_seeds, generate, load, save, GenConfig};

fn main() -> cone_thom::Result<()> {
    let config = GenConfig::new(2, 2, 1).with_t_degree(1);
    let data = generate(&config)?;
    println!("eta[1][2] = {}", data.eta.entry(0, 1));
    println!("phi[1][2] = {}", data.phi.entry(0, 1));
    println!("omega = {}", data.omega);
    println!("fingerprint = {}", data.fingerprint());

    println!("batch seeds from 7: {:?}", batch_seeds(7, 4));

    let path = std::env::temp_dir().join(format!("cone-thom-example-{}.json", std::process::id()));
    save(&path, &data, Some(config))?;
    let back = load(&path)?;
    println!("round trip equal: {}", back == data);
    std::fs::remove_file(&path)?;
    Ok(())
}
