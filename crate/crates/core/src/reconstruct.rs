//! Fills the quantum multiplication matrices above degree `n` from the seed columns,
//! alternating the p-recursion (for `M_p`) and the xi-recursion (for `M_xi`).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::parse_poly;
use crate::novikov::{QPoly, QuantumMatrix};
use crate::rational::{int, Rational};
use crate::ring::{CohRing, Monomial};
use crate::seeds::{seed_columns, SeedColumns, SeedSource};

/// `M_p` and `M_xi`, fully populated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumProducts {
    pub mp: QuantumMatrix,
    pub mxi: QuantumMatrix,
}

fn unit(size: usize, i: usize) -> Vec<QPoly> {
    let mut v = vec![QPoly::default(); size];
    v[i] = QPoly::constant(Rational::one());
    v
}

fn apply_checked(ring: &CohRing, m: &QuantumMatrix, filled: &[bool], v: &[QPoly]) -> Result<Vec<QPoly>> {
    if let Some(j) = (0..v.len()).find(|&j| !v[j].is_zero() && !filled[j]) {
        return Err(Error::Dependency {
            column: ring.basis()[j].to_string(),
        });
    }
    Ok(m.apply(v))
}

fn column(ring: &CohRing, d: u32, k: u32) -> Result<usize> {
    ring.basis_index(d, k).map(|i| i - 1)
}

/// `M_p` column of `p^k xi^(d-k)`:
/// `M_xi M_p V(d-1,k) - M_p (M_xi V(d-1,k) - V(d,k))`.
pub fn p_column_step(state: &mut SeedColumns, ring: &CohRing, d: u32, k: u32) -> Result<()> {
    let size = ring.size();
    let col = column(ring, d, k)?;
    if d == 0 || d - k == 0 {
        return Err(Error::OutOfBasis { d, k });
    }
    let prev = column(ring, d - 1, k)?;
    let v_prev = unit(size, prev);
    let mp_prev = apply_checked(ring, &state.mp, &state.filled_p, &v_prev)?;
    let first = apply_checked(ring, &state.mxi, &state.filled_xi, &mp_prev)?;
    let mut w = apply_checked(ring, &state.mxi, &state.filled_xi, &v_prev)?;
    w[col].add_term((0, 0), -Rational::one());
    let second = apply_checked(ring, &state.mp, &state.filled_p, &w)?;
    let out = first.iter().zip(&second).map(|(x, y)| x.sub(y)).collect();
    state.mp.set_column(col, out);
    state.filled_p[col] = true;
    Ok(())
}

/// `M_xi` column of `p^k xi^(d-k)` from the matching `M_p` column: quantum terms
/// scaled by `b/a`, the classical product by `xi`, and `q2` at row `p^k` when
/// the column is `p^k xi^(r-1)`.
pub fn xi_column_step(state: &mut SeedColumns, ring: &CohRing, d: u32, k: u32) -> Result<()> {
    let col = column(ring, d, k)?;
    if !state.filled_p[col] {
        return Err(Error::Dependency {
            column: ring.basis()[col].to_string(),
        });
    }
    let size = ring.size();
    let mut out = vec![QPoly::default(); size];
    for (i, slot) in out.iter_mut().enumerate() {
        for (&(a, b), v) in &state.mp.get(i, col).terms {
            if a >= 1 && b >= 1 {
                slot.add_term((a, b), Rational::new(b.into(), a.into()) * v);
            }
        }
    }
    let classical = ring.reduce_monomial(k, d - k + 1);
    for (i, v) in classical.support() {
        out[i].add_term((0, 0), v.clone());
    }
    if d - k == ring.spec().r() - 1 {
        let row = column(ring, k, k)?;
        out[row].add_term((0, 1), Rational::one());
    }
    state.mxi.set_column(col, out);
    state.filled_xi[col] = true;
    Ok(())
}

/// Runs both recursions over degrees `n+1 .. n+r-1`, p-power descending within a degree.
pub fn fill(mut state: SeedColumns, ring: &CohRing) -> Result<QuantumProducts> {
    let spec = ring.spec();
    for d in spec.n() + 1..=spec.dim() {
        for k in (0..=d.min(spec.n())).rev() {
            if d - k >= spec.r() {
                continue;
            }
            p_column_step(&mut state, ring, d, k)?;
            xi_column_step(&mut state, ring, d, k)?;
        }
    }
    Ok(QuantumProducts {
        mp: state.mp,
        mxi: state.mxi,
    })
}

pub fn reconstruct(ring: &CohRing, source: &SeedSource) -> Result<QuantumProducts> {
    fill(seed_columns(ring, source)?, ring)
}

/// Keeps the degree `<= n` columns of `products` and rebuilds the rest.
pub fn refill(ring: &CohRing, products: &QuantumProducts) -> Result<QuantumProducts> {
    let size = ring.size();
    let n = ring.spec().n();
    let keep: Vec<bool> = (0..size).map(|i| ring.degree(i) <= n).collect();
    let mut mp = QuantumMatrix::zero(size);
    let mut mxi = QuantumMatrix::zero(size);
    for j in (0..size).filter(|&j| keep[j]) {
        mp.set_column(j, products.mp.column(j));
        mxi.set_column(j, products.mxi.column(j));
    }
    fill(
        SeedColumns {
            mp,
            mxi,
            filled_p: keep.clone(),
            filled_xi: keep,
        },
        ring,
    )
}

/// Evaluates a star-polynomial in `p, xi, q1, q2` on the identity; zero means the relation holds.
pub fn verify_relation(products: &QuantumProducts, relation: &str) -> Result<Vec<QPoly>> {
    let poly = parse_poly(relation, &["p", "xi", "q1", "q2"])?;
    let size = products.mp.size();
    let mut total = vec![QPoly::default(); size];
    for (e, c) in &poly.terms {
        let mut v = unit(size, 0);
        for _ in 0..e[1] {
            v = products.mxi.apply(&v);
        }
        for _ in 0..e[0] {
            v = products.mp.apply(&v);
        }
        let q = QPoly::monomial((e[2], e[3]), c.clone());
        for (t, x) in total.iter_mut().zip(&v) {
            t.add_product(&q, x);
        }
    }
    Ok(total)
}

/// Same as [`verify_relation`] with every `q` set to zero: the classical ring.
pub fn verify_classical_relation(ring: &CohRing, relation: &str) -> Result<Vec<Rational>> {
    let poly = parse_poly(relation, &["p", "xi", "q1", "q2"])?;
    let mut total = vec![Rational::zero(); ring.size()];
    for (e, c) in &poly.terms {
        if e[2] + e[3] > 0 {
            continue;
        }
        let m = ring.monomial(Monomial { p: e[0], xi: e[1] });
        for (i, v) in m.support() {
            total[i] += c * v;
        }
    }
    Ok(total)
}

/// Structural checks on reconstructed matrices. Each returns the first offending
/// `(row, col)` (0-based), or `None`.
pub mod checks {
    use super::*;

    pub fn commutator(products: &QuantumProducts) -> Option<(usize, usize)> {
        let ab = products.mp.mul(&products.mxi);
        let ba = products.mxi.mul(&products.mp);
        ab.first_difference(&ba)
    }

    /// `G M` symmetric, i.e. `(M phi_i, phi_j) = (M phi_j, phi_i)`.
    pub fn three_point_symmetry(ring: &CohRing, m: &QuantumMatrix) -> Option<(usize, usize)> {
        let g = QuantumMatrix::from_constant(ring.pairing_matrix());
        let gm = g.mul(m);
        gm.first_difference(&gm.transpose())
    }

    /// Entry `(j, i)` may carry `q1^a q2^b` only if `deg phi_j = deg phi_i + 1 - a d1 - b d2`.
    pub fn grading(ring: &CohRing, m: &QuantumMatrix) -> Option<(usize, usize)> {
        let (d1, d2) = (ring.spec().d1() as i64, ring.spec().d2() as i64);
        for (j, i, (a, b), _) in m.triplets() {
            let lhs = ring.degree(j) as i64;
            let rhs = ring.degree(i) as i64 + 1 - a as i64 * d1 - b as i64 * d2;
            if lhs != rhs {
                return Some((j, i));
            }
        }
        None
    }

    /// Terms `q1^a q2^b` with `a == 0, b >= 1` (`pure_q1 = false`) or `a >= 1, b == 0`.
    pub fn pure_terms(m: &QuantumMatrix, pure_q1: bool) -> Option<(usize, usize)> {
        m.triplets()
            .into_iter()
            .find(|&(_, _, (a, b), _)| if pure_q1 { a >= 1 && b == 0 } else { a == 0 && b >= 1 })
            .map(|(i, j, _, _)| (i, j))
    }

    /// `b M_p^(a,b) = a M_xi^(a,b)` at every mixed `(a, b)`.
    pub fn divisor_ratio(products: &QuantumProducts) -> Option<(usize, usize)> {
        let size = products.mp.size();
        for i in 0..size {
            for j in 0..size {
                let (p, x) = (products.mp.get(i, j), products.mxi.get(i, j));
                let keys = p.terms.keys().chain(x.terms.keys()).filter(|(a, b)| *a >= 1 && *b >= 1);
                for &(a, b) in keys {
                    if int(b as i64) * p.coeff((a, b)) != int(a as i64) * x.coeff((a, b)) {
                        return Some((i, j));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::BundleSpec;
    use crate::seeds::seed_columns;

    fn flagship() -> (CohRing, QuantumProducts) {
        let ring = CohRing::new(&BundleSpec::flagship()).unwrap();
        let q = reconstruct(&ring, &SeedSource::Blowup).unwrap();
        (ring, q)
    }

    #[test]
    fn relations_hold() {
        let (_, q) = flagship();
        let r1 = "p^5 + q1^2*p - 2*q1^2*xi + 2*q1*p^3 - 2*q1*p^2*xi - q1*p*xi^2 - q1*xi^3";
        let r2 = "xi^6 - 3*p*xi^5 + 5*p^2*xi^4 - 5*p^3*xi^3 - q2 - 5*q1*p*xi^3 + 10*q1*xi^4";
        assert!(verify_relation(&q, r1).unwrap().iter().all(QPoly::is_zero));
        assert!(verify_relation(&q, r2).unwrap().iter().all(QPoly::is_zero));
        assert!(!verify_relation(&q, "p^5").unwrap().iter().all(QPoly::is_zero));
        // with the q1^2 signs the other way round, exactly -2 q1^2 p + 4 q1^2 xi is left over
        let flipped = verify_relation(&q, &r1.replace("+ q1^2*p - 2*q1^2*xi", "- q1^2*p + 2*q1^2*xi")).unwrap();
        assert_eq!(flipped[1], QPoly::monomial((2, 0), int(-2)));
        assert_eq!(flipped[2], QPoly::monomial((2, 0), int(4)));
        assert_eq!(flipped.iter().filter(|x| !x.is_zero()).count(), 2);
    }

    #[test]
    fn classical_limit() {
        let (ring, q) = flagship();
        assert_eq!(q.mp.classical(), ring.mul_matrix(Monomial { p: 1, xi: 0 }));
        assert_eq!(q.mxi.classical(), ring.mul_matrix(Monomial { p: 0, xi: 1 }));
        assert!(verify_classical_relation(&ring, "p^5")
            .unwrap()
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn top_column() {
        let (ring, q) = flagship();
        let top = ring.basis_index(9, 4).unwrap() - 1;
        let col = q.mp.column(top);
        let terms: Vec<String> = col.iter().filter(|p| !p.is_zero()).map(|p| p.to_string()).collect();
        assert!(terms.contains(&"2*q1^2*q2".to_string()), "{terms:?}");
        assert!(terms.contains(&"q1*q2".to_string()), "{terms:?}");
    }

    #[test]
    fn xi_column_of_xi5() {
        let (ring, q) = flagship();
        let c = ring.basis_index(5, 0).unwrap() - 1;
        assert_eq!(q.mxi.get(0, c), &QPoly::monomial((0, 1), int(1)));
        let at = |d, k| q.mxi.get(ring.basis_index(d, k).unwrap() - 1, c).clone();
        assert_eq!(at(6, 1), QPoly::constant(int(3)));
        assert_eq!(at(6, 2), QPoly::constant(int(-5)));
        assert_eq!(at(6, 3), QPoly::constant(int(5)));
    }

    #[test]
    fn structure() {
        let (ring, q) = flagship();
        assert_eq!(checks::commutator(&q), None);
        assert_eq!(checks::three_point_symmetry(&ring, &q.mp), None);
        assert_eq!(checks::three_point_symmetry(&ring, &q.mxi), None);
        assert_eq!(checks::grading(&ring, &q.mp), None);
        assert_eq!(checks::grading(&ring, &q.mxi), None);
        assert_eq!(checks::pure_terms(&q.mp, false), None);
        assert_eq!(checks::pure_terms(&q.mxi, true), None);
        assert_eq!(checks::divisor_ratio(&q), None);
    }

    #[test]
    fn idempotent() {
        let (ring, q) = flagship();
        assert_eq!(refill(&ring, &q).unwrap(), q);
    }

    #[test]
    fn dependency_violation_is_reported() {
        let ring = CohRing::new(&BundleSpec::flagship()).unwrap();
        let mut state = seed_columns(&ring, &SeedSource::Blowup).unwrap();
        // p xi^5 needs columns of degree 5 first
        let err = p_column_step(&mut state, &ring, 6, 1).unwrap_err();
        assert!(matches!(err, Error::Dependency { .. }), "{err}");
        let err = xi_column_step(&mut state, &ring, 6, 1).unwrap_err();
        assert!(matches!(err, Error::Dependency { .. }), "{err}");
    }

    #[test]
    fn trivial_product_without_corrections_is_classical() {
        // P^2 x P^2: seeds exist but the top product columns stay classical up to q-terms
        let ring = CohRing::new(&BundleSpec::new(2, 3, &[]).unwrap()).unwrap();
        let q = reconstruct(&ring, &SeedSource::Product).unwrap();
        assert!(verify_relation(&q, "p^3 - q1").unwrap().iter().all(QPoly::is_zero));
        assert!(verify_relation(&q, "xi^3 - q2").unwrap().iter().all(QPoly::is_zero));
    }
}
