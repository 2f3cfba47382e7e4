//! Verify the shipped Picard-Fuchs operator and rediscover it from 62 period terms.

use std::time::Instant;

use fano_qc::fixtures;
use fano_qc::lefschetz::{self, Annihilator, IntersectionSpec, PFOp};
use fano_qc::qde::{self, DifferentialSystem};
use fano_qc::rational::int;
use fano_qc::reconstruct::reconstruct;
use fano_qc::ring::{BundleSpec, CohRing};
use fano_qc::seeds::SeedSource;

fn main() -> fano_qc::Result<()> {
    let t = Instant::now();
    let ring = CohRing::new(&BundleSpec::flagship())?;
    let q = reconstruct(&ring, &SeedSource::Blowup)?;
    let sys = DifferentialSystem::new(&ring, &q);
    let terms = 62;
    let c = qde::identity_row_coefficients(&sys, terms as u32 - 1)?;
    let cut = IntersectionSpec::parse("p,xi^5")?;
    let d = lefschetz::hypergeometric_modify(&c, &cut);
    let mm = lefschetz::mirror_map_correction(&d, sys.weights(), &cut)?;
    let reg = lefschetz::regularize(&lefschetz::period_sequence(&d, &mm.multiplier, terms)?);
    println!("{terms} regularized terms in {:.1?}", t.elapsed());

    let shipped = PFOp::parse(fixtures::FLAGSHIP_PF)?;
    let res = lefschetz::pf_apply(&shipped, &reg);
    println!(
        "shipped operator: order {}, degree {}, {} terms; residual zero at all {} positions: {}",
        shipped.order(),
        shipped.degree(),
        shipped.len(),
        res.len(),
        res.iter().all(|x| *x == int(0))
    );

    let t = Instant::now();
    match lefschetz::find_annihilator(&reg, 4, 9)? {
        Annihilator::Unique(op) => {
            println!(
                "search (order 4, degree 9) in {:.1?}: proportional to shipped: {}",
                t.elapsed(),
                op.proportional(&shipped)
            );
            print!("{op}");
        }
        other => println!("search: {other:?}"),
    }
    Ok(())
}
