//! The classical ring of the flagship bundle: basis, relation, pushforward, pairing.

use fano_qc::ring::{BundleSpec, CohRing, Monomial};

fn main() -> fano_qc::Result<()> {
    let spec = BundleSpec::flagship();
    let ring = CohRing::new(&spec)?;
    println!(
        "n = {}, r = {}, c = {:?}, dim X = {}",
        spec.n(),
        spec.r(),
        spec.chern(),
        spec.dim()
    );
    println!("-K . A1 = {}, -K . A2 = {}", spec.d1(), spec.d2());
    println!("basis ({} classes):", ring.size());
    for (i, m) in ring.basis().iter().enumerate() {
        println!("  {:>2}  {m}", i + 1);
    }

    println!("xi^6 = {}", ring.describe(&ring.reduce_monomial(0, 6)));
    println!("p^2 xi^7 = {}", ring.describe(&ring.reduce_monomial(2, 7)));
    let top = ring.monomial(Monomial { p: 4, xi: 5 });
    println!("integral of p^4 xi^5 = {}", ring.integrate(&top));
    println!(
        "pushforward of xi^7 to P^4: {:?}",
        ring.pushforward_to_base(&ring.reduce_monomial(0, 7))
    );

    let x = ring.monomial(Monomial { p: 2, xi: 1 });
    println!(
        "dual of p^2 xi = {}",
        ring.describe(&ring.dual_class(ring.position(Monomial { p: 2, xi: 1 }).unwrap()))
    );
    println!("<p^2 xi, dual> = {}", ring.pairing(&x, &ring.dual_class(5)));
    Ok(())
}
