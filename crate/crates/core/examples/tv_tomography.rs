//! Total-variation tomography on a Shepp-Logan phantom. The unknown is
//! `(u, p)` with `p = ∇u`; the objective is `½‖u‖² + λ Σ_j |p_j|₂ + ½‖p‖²`.
//! Writes PGM images next to the system temp dir.
//!
//! `cargo run --release --example tv_tomography [size]`

use bpsfp::experiments::{run_tomography, TomoVariant, TomographyConfig};

fn main() -> bpsfp::Result<()> {
    let size = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(32);
    let cfg = TomographyConfig {
        size,
        variants: vec![TomoVariant::Plain, TomoVariant::Pos, TomoVariant::One],
        ..TomographyConfig::default()
    };
    let report = run_tomography(&cfg)?;
    println!(
        "{size}x{size} image, {} angles x {} rays, delta = {:.3}",
        cfg.angles, cfg.rays, report.setup.delta
    );
    for r in &report.runs {
        println!(
            "{:<9} {:>5} passes ({:?})  |u - u_true| = {:.3}  {:.3} ms/pass",
            r.variant.name(),
            r.iterations,
            r.termination,
            r.error,
            r.ms_per_iteration()
        );
    }
    let dir = std::env::temp_dir().join("bpsfp_tv_tomography");
    report.write(&dir)?;
    println!("images in {}", dir.display());
    Ok(())
}
