//! Full quantum multiplication by p and xi on the flagship, plus the structural checks.

use std::time::Instant;

use fano_qc::expr::named_lines;
use fano_qc::fixtures;
use fano_qc::novikov::QuantumMatrix;
use fano_qc::reconstruct::{checks, reconstruct, verify_relation};
use fano_qc::ring::{BundleSpec, CohRing};
use fano_qc::seeds::{describe_column, SeedSource};

fn main() -> fano_qc::Result<()> {
    let ring = CohRing::new(&BundleSpec::flagship())?;
    let t = Instant::now();
    let q = reconstruct(&ring, &SeedSource::Blowup)?;
    println!("reconstructed in {:.1?}", t.elapsed());

    for name in ["p^4", "xi^5", "p^4*xi^5"] {
        let i = ring.basis().iter().position(|m| m.to_string() == name).unwrap();
        println!("p * {name} = {}", describe_column(&ring, &q.mp.column(i)));
    }

    let mp = QuantumMatrix::from_triplet_text(ring.size(), fixtures::FLAGSHIP_MP)?;
    let mxi = QuantumMatrix::from_triplet_text(ring.size(), fixtures::FLAGSHIP_MXI)?;
    println!("M_p vs fixture: {:?}", q.mp.first_difference(&mp));
    println!("M_xi vs fixture: {:?}", q.mxi.first_difference(&mxi));

    for (_, name, body) in named_lines(fixtures::RELATIONS)? {
        let zero = verify_relation(&q, &body)?.iter().all(|x| x.is_zero());
        println!("{name} vanishes: {zero}");
    }
    println!("commutator: {:?}", checks::commutator(&q));
    println!(
        "symmetry: {:?} {:?}",
        checks::three_point_symmetry(&ring, &q.mp),
        checks::three_point_symmetry(&ring, &q.mxi)
    );
    println!(
        "grading: {:?} {:?}",
        checks::grading(&ring, &q.mp),
        checks::grading(&ring, &q.mxi)
    );
    Ok(())
}
