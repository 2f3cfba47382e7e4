//! Apply the four quantum differential operators to J and report residuals.

use fano_qc::fixtures;
use fano_qc::qde::{self, DifferentialSystem};
use fano_qc::reconstruct::reconstruct;
use fano_qc::ring::{BundleSpec, CohRing};
use fano_qc::seeds::SeedSource;

fn main() -> fano_qc::Result<()> {
    let ring = CohRing::new(&BundleSpec::flagship())?;
    let q = reconstruct(&ring, &SeedSource::Blowup)?;
    let sys = DifferentialSystem::new(&ring, &q);
    let j = qde::j_series(&sys, 8)?;
    for (name, op) in qde::parse_operator_file(fixtures::DELTA_OPS)? {
        let deg = op.homogeneous_degree(sys.weights());
        let res = qde::apply_operator(&sys, &op, &j);
        println!(
            "{name}: {} terms, degree {:?}, zero at {} certified indices: {}",
            op.len(),
            deg,
            res.certified(),
            res.is_zero()
        );
    }
    let (_, printed) = qde::parse_operator_file(fixtures::DELTA1_PRINTED)?.remove(0);
    if let Err(i) = printed.homogeneous_degree(sys.weights()) {
        println!(
            "printed Delta1: term {} ({}) is off-degree",
            i + 1,
            printed.term_text(i)
        );
    }
    let res = qde::apply_operator(&sys, &printed, &j);
    println!("printed Delta1 residual nonzero at {:?}", &res.nonzero_indices()[..3]);
    Ok(())
}
