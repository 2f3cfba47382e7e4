//! Quantum Lefschetz for the p, xi^5 complete intersection: plain and regularized periods.

use fano_qc::lefschetz::{self, IntersectionSpec};
use fano_qc::novikov::QPoly;
use fano_qc::qde::{self, DifferentialSystem};
use fano_qc::reconstruct::reconstruct;
use fano_qc::ring::{BundleSpec, CohRing};
use fano_qc::seeds::SeedSource;

fn main() -> fano_qc::Result<()> {
    let ring = CohRing::new(&BundleSpec::flagship())?;
    let q = reconstruct(&ring, &SeedSource::Blowup)?;
    let sys = DifferentialSystem::new(&ring, &q);
    let terms = 16;
    let c = qde::identity_row_coefficients(&sys, terms as u32 - 1)?;

    let cut = IntersectionSpec::parse("p,xi^5")?;
    let d = lefschetz::hypergeometric_modify(&c, &cut);
    let mm = lefschetz::mirror_map_correction(&d, sys.weights(), &cut)?;
    let show = |t: &lefschetz::Table| QPoly { terms: t.clone() }.to_string();
    println!("cut {cut}: F = {}, G0 non-constant = {}", show(&mm.f), show(&mm.g0));
    let plain = lefschetz::period_sequence(&d, &mm.multiplier, terms)?;
    let reg = lefschetz::regularize(&plain);
    println!("{:>3}  {:>28}  regularized", "m", "plain");
    for (m, (x, y)) in plain.iter().zip(&reg).enumerate() {
        println!("{m:>3}  {x:>28}  {y}");
    }
    Ok(())
}
