//! Schubert calculus on G(2,5) and the blow-up route to a two-point invariant.

use fano_qc::ring::{BundleSpec, CohRing};
use fano_qc::schubert::{restrict_to_d, Grassmannian, ProjQDual};

fn main() -> fano_qc::Result<()> {
    let g = Grassmannian::g25();
    println!("partitions in the 2 x 3 box: {:?}", g.partitions());
    let mut x = g.one();
    for k in 1..=6 {
        x = g.pieri(&x, 1);
        println!("s1^{k} = {x}");
    }
    println!("degree of G(2,5) = {}", g.integrate(&x));
    println!("s2 * s21 = {}", g.mul(&g.sigma(&[2]), &g.sigma(&[2, 1])));
    println!(
        "c(Q*): {}",
        (1..=3)
            .map(|i| g.chern_qdual(i).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );

    // <p^4, p^2 xi^4> in the base direction, through D = P(Q*) over G(2,5)
    let ring = CohRing::new(&BundleSpec::flagship())?;
    let pq = ProjQDual::over_g25();
    let a = pq.pushforward(&restrict_to_d(&ring, &ring.reduce_monomial(4, 0))?);
    let b = pq.pushforward(&restrict_to_d(&ring, &ring.reduce_monomial(2, 4))?);
    println!("push(p^4|D) = {a}");
    println!("push(p^2 xi^4|D) = {b}");
    println!("<p^4, p^2 xi^4>_A1 = {}", g.integrate(&g.mul(&a, &b)));
    Ok(())
}
