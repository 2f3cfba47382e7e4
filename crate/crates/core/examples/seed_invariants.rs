//! The seed two-point invariants the reconstruction starts from.

use fano_qc::rational::int;
use fano_qc::ring::{BundleSpec, CohRing};
use fano_qc::seeds::{demanded_invariants, format_seeds, seed_classes, seed_table, SeedSource};

fn main() -> fano_qc::Result<()> {
    let ring = CohRing::new(&BundleSpec::flagship())?;
    println!("curve classes reaching the seeded columns: {:?}", seed_classes(&ring));
    println!("{} invariants demanded", demanded_invariants(&ring).len());
    let table = seed_table(&ring, &SeedSource::Blowup)?;
    let nonzero = table.iter().filter(|(_, _, _, v)| **v != int(0)).count();
    println!("{nonzero} of them nonzero\n");
    print!("{}", format_seeds(&ring, &table));
    Ok(())
}
