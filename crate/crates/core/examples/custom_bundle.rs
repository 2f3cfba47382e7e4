//! A bundle described in TOML. Trivial bundles have builtin seeds; others need a seed file.
//!
//!     cargo run --example custom_bundle -- path/to/bundle.toml [path/to/seeds]

use fano_qc::qde::{self, DifferentialSystem};
use fano_qc::reconstruct::{checks, reconstruct};
use fano_qc::ring::{BundleSpec, CohRing};
use fano_qc::seeds::{load_seeds, SeedSource};

fn main() -> fano_qc::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let spec = match args.first() {
        Some(path) => BundleSpec::from_toml(&std::fs::read_to_string(path)?)?,
        // P^2 x P^2
        None => BundleSpec::from_toml("n = 2\nr = 3\nchern = [0, 0, 0]\n")?,
    };
    let ring = CohRing::new(&spec)?;
    let source = match args.get(1) {
        Some(path) => SeedSource::Table(load_seeds(&ring, std::path::Path::new(path))?),
        None => SeedSource::builtin(&ring)
            .ok_or_else(|| fano_qc::Error::Unsupported("no builtin seeds for this bundle; pass a seed file".into()))?,
    };
    println!(
        "n = {}, r = {}, c = {:?}, {} basis classes",
        spec.n(),
        spec.r(),
        spec.chern(),
        ring.size()
    );
    let q = reconstruct(&ring, &source)?;
    println!(
        "commutator {:?}, symmetry {:?}",
        checks::commutator(&q),
        checks::three_point_symmetry(&ring, &q.mp)
    );
    let sys = DifferentialSystem::new(&ring, &q);
    let c = qde::identity_row_coefficients(&sys, 5)?;
    print!("c_ab:\n{}", qde::coefficient_csv(&c, 4));
    Ok(())
}
