//! Identity component of J for the flagship, normalized to the integer matrix A.

use std::time::Instant;

use fano_qc::qde::{self, DifferentialSystem};
use fano_qc::reconstruct::reconstruct;
use fano_qc::ring::{BundleSpec, CohRing};
use fano_qc::seeds::SeedSource;

fn main() -> fano_qc::Result<()> {
    let ring = CohRing::new(&BundleSpec::flagship())?;
    let q = reconstruct(&ring, &SeedSource::Blowup)?;
    let sys = DifferentialSystem::new(&ring, &q);

    let t = Instant::now();
    let j = qde::j_series(&sys, 6)?;
    j.check_homogeneity()?;
    println!(
        "full fundamental solution to order 6: {:.1?}, {} mixed indices flat",
        t.elapsed(),
        j.flat_checked
    );
    let c = qde::identity_coefficients(&j)?;
    println!("c_11 = {}, c_02 = {}", c[&(1, 1)], c[&(0, 2)]);

    let t = Instant::now();
    let c = qde::identity_row_coefficients(&sys, 18)?;
    println!("identity row to order 18: {:.1?}", t.elapsed());
    let table = qde::apery_table(&c, 10, sys.weights())?;
    println!("i!^2 j!^6 c_ij:");
    for row in &table {
        println!("{}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join("\t"));
    }
    let diag: Vec<String> = (0..10).map(|i| table[i][i].to_string()).collect();
    println!("diagonal: {}", diag.join(", "));
    Ok(())
}
