//! P^1 x P^1 as the trivial rank-2 bundle on P^1: the whole pipeline at size 4.

use fano_qc::qde::{self, DifferentialSystem};
use fano_qc::reconstruct::{reconstruct, verify_relation};
use fano_qc::ring::{BundleSpec, CohRing};
use fano_qc::seeds::SeedSource;

fn main() -> fano_qc::Result<()> {
    let ring = CohRing::new(&BundleSpec::p1_trivial())?;
    let q = reconstruct(&ring, &SeedSource::Product)?;
    println!(
        "basis: {:?}",
        ring.basis().iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    print!("M_p\n{}M_xi\n{}", q.mp.to_dense_text(), q.mxi.to_dense_text());
    for rel in ["p^2 - q1", "xi^2 - q2"] {
        let zero = verify_relation(&q, rel)?.iter().all(|x| x.is_zero());
        println!("{rel} = 0: {zero}");
    }
    let sys = DifferentialSystem::new(&ring, &q);
    let c = qde::identity_row_coefficients(&sys, 6)?;
    println!("a!^2 b!^2 c_ab:");
    print!(
        "{}",
        qde::apery_table(&c, 4, sys.weights())?
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",") + "\n")
            .collect::<String>()
    );
    Ok(())
}
