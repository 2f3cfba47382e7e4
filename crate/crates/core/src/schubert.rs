//! Schubert calculus on `G(k, m)` and the projective bundle `P(Q*)` over it.
//!
//! The flagship exceptional divisor is `P(Q*)` over `G(2,5)`, with
//! `H(P(Q*)) = H(G)[eta] / (eta^3 - s1 eta^2 + s2 eta - s3)` (Chern classes of `Q*`).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::ring::{CohClass, CohRing};

/// Weakly decreasing, padded to `k` parts.
pub type Partition = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchubertClass {
    pub terms: BTreeMap<Partition, Rational>,
}

impl SchubertClass {
    pub fn coeff(&self, lambda: &[u32]) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, lambda: Partition, v: Rational) {
        let slot = self.terms.entry(lambda.clone()).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn add_scaled(&mut self, other: &SchubertClass, s: &Rational) {
        for (l, v) in &other.terms {
            self.add_term(l.clone(), v * s);
        }
    }
}

impl fmt::Display for SchubertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, v)| {
                let idx: Vec<String> = l.iter().map(u32::to_string).collect();
                format!("{}*s({})", format_rational(v), idx.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `G(k, m)`: `k`-planes in an `m`-dimensional space; partitions fit a `k x (m-k)` box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grassmannian {
    k: usize,
    m: usize,
}

impl Grassmannian {
    pub fn new(k: usize, m: usize) -> Self {
        assert!(0 < k && k < m, "need 0 < k < m");
        Grassmannian { k, m }
    }

    pub fn g25() -> Self {
        Self::new(2, 5)
    }

    pub fn parts(&self) -> usize {
        self.k
    }

    pub fn width(&self) -> u32 {
        (self.m - self.k) as u32
    }

    pub fn dim(&self) -> u32 {
        (self.k * (self.m - self.k)) as u32
    }

    pub fn partitions(&self) -> Vec<Partition> {
        fn go(prefix: &mut Vec<u32>, left: usize, cap: u32, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(prefix.clone());
                return;
            }
            for a in 0..=cap {
                prefix.push(a);
                go(prefix, left - 1, a, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), self.k, self.width(), &mut out);
        out.sort_by_key(|l| (l.iter().sum::<u32>(), std::cmp::Reverse(l.clone())));
        out
    }

    fn pad(&self, lambda: &[u32]) -> Option<Partition> {
        if lambda.len() > self.k && lambda[self.k..].iter().any(|&x| x > 0) {
            return None;
        }
        let mut l: Partition = lambda.iter().take(self.k).copied().collect();
        l.resize(self.k, 0);
        let ok = l.windows(2).all(|w| w[0] >= w[1]) && l.first().is_none_or(|&a| a <= self.width());
        ok.then_some(l)
    }

    /// `sigma_lambda`, or zero if `lambda` does not fit the box.
    pub fn sigma(&self, lambda: &[u32]) -> SchubertClass {
        let mut x = SchubertClass::default();
        if let Some(l) = self.pad(lambda) {
            x.add_term(l, Rational::one());
        }
        x
    }

    pub fn one(&self) -> SchubertClass {
        self.sigma(&[])
    }

    /// Special class `sigma_i`.
    pub fn special(&self, i: u32) -> SchubertClass {
        self.sigma(&[i])
    }

    pub fn full_box(&self) -> Partition {
        vec![self.width(); self.k]
    }

    pub fn complement(&self, lambda: &[u32]) -> Partition {
        let l = self.pad(lambda).expect("partition in box");
        l.iter().rev().map(|&a| self.width() - a).collect()
    }

    /// Pieri rule: multiply by `sigma_i`, summing over horizontal strips of size `i`.
    pub fn pieri(&self, x: &SchubertClass, i: u32) -> SchubertClass {
        let mut out = SchubertClass::default();
        for (lambda, v) in &x.terms {
            let mut mu = Vec::with_capacity(self.k);
            self.strips(lambda, 0, i, &mut mu, &mut |m| out.add_term(m.to_vec(), v.clone()));
        }
        out
    }

    fn strips(&self, lambda: &[u32], row: usize, left: u32, mu: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
        if row == self.k {
            if left == 0 {
                emit(mu);
            }
            return;
        }
        let upper = if row == 0 { self.width() } else { lambda[row - 1] };
        for m in lambda[row]..=upper.min(lambda[row] + left) {
            mu.push(m);
            self.strips(lambda, row + 1, left - (m - lambda[row]), mu, emit);
            mu.pop();
        }
    }

    /// Product with `sigma_lambda` via the Jacobi–Trudi determinant in special classes.
    pub fn mul_sigma(&self, x: &SchubertClass, lambda: &[u32]) -> SchubertClass {
        let l = self.pad(lambda).expect("partition in box");
        let k = self.k;
        let mut out = SchubertClass::default();
        for perm in permutations(k) {
            let sign = if inversions(&perm).is_multiple_of(2) {
                Rational::one()
            } else {
                -Rational::one()
            };
            let mut term = x.clone();
            for (row, &col) in perm.iter().enumerate() {
                let idx = l[row] as i64 + col as i64 - row as i64;
                if idx < 0 {
                    term = SchubertClass::default();
                    break;
                }
                if idx > 0 {
                    term = self.pieri(&term, idx as u32);
                }
            }
            out.add_scaled(&term, &sign);
        }
        out
    }

    pub fn mul(&self, x: &SchubertClass, y: &SchubertClass) -> SchubertClass {
        let mut out = SchubertClass::default();
        for (lambda, v) in &y.terms {
            out.add_scaled(&self.mul_sigma(x, lambda), v);
        }
        out
    }

    /// Coefficient of the point class.
    pub fn integrate(&self, x: &SchubertClass) -> Rational {
        x.coeff(&self.full_box())
    }

    /// Total Chern class of `Q*` by degree: `(-1)^i sigma_i`.
    pub fn chern_qdual(&self, i: u32) -> SchubertClass {
        let mut s = self.special(i);
        if i % 2 == 1 {
            s = SchubertClass::default().tap_add(&s, &-Rational::one());
        }
        s
    }

    /// `s_i(Q*)` with `s(Q*) c(Q*) = 1`.
    pub fn segre_qdual(&self, i: u32) -> SchubertClass {
        let mut s = vec![self.one()];
        for deg in 1..=i {
            let mut acc = SchubertClass::default();
            for j in 1..=deg.min(self.width()) {
                let t = self.mul(&s[(deg - j) as usize], &self.chern_qdual(j));
                acc.add_scaled(&t, &-Rational::one());
            }
            s.push(acc);
        }
        s.pop().expect("nonempty")
    }
}

impl SchubertClass {
    fn tap_add(mut self, other: &SchubertClass, s: &Rational) -> Self {
        self.add_scaled(other, s);
        self
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
        .sum()
}

/// Class on `P(Q*)`: Schubert coefficients of `1, eta, .., eta^(rank-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PQClass {
    pub eta: Vec<SchubertClass>,
}

impl PQClass {
    pub fn coeff(&self, lambda: &[u32], e: usize) -> Rational {
        self.eta.get(e).map_or_else(Rational::zero, |s| s.coeff(lambda))
    }
}

/// The projective bundle `P(Q*) -> G(k, m)`.
#[derive(Debug, Clone, Copy)]
pub struct ProjQDual {
    pub grass: Grassmannian,
}

impl ProjQDual {
    pub fn over_g25() -> Self {
        ProjQDual {
            grass: Grassmannian::g25(),
        }
    }

    /// Rank of `Q*`, so the fibre is `P^(rank-1)`.
    pub fn rank(&self) -> u32 {
        self.grass.width()
    }

    /// `eta^e * x`, with `eta^rank = s1 eta^(rank-1) - s2 eta^(rank-2) + ..`.
    pub fn eta_power(&self, e: u32, x: &SchubertClass) -> PQClass {
        let q = self.rank();
        let mut by_power: BTreeMap<u32, SchubertClass> = BTreeMap::new();
        by_power.insert(e, x.clone());
        while let Some((&top, _)) = by_power.iter().next_back().filter(|(&t, _)| t >= q) {
            let cls = by_power.remove(&top).expect("present");
            for j in 1..=q {
                let c = self.grass.chern_qdual(j);
                let t = self.grass.mul(&cls, &c);
                by_power.entry(top - j).or_default().add_scaled(&t, &-Rational::one());
            }
        }
        let mut eta = vec![SchubertClass::default(); q as usize];
        for (e, cls) in by_power {
            eta[e as usize] = cls;
        }
        PQClass { eta }
    }

    /// `pi_*(sigma eta^(rank-1+i)) = sigma s_i(Q*)`, for a reduced class.
    pub fn pushforward(&self, x: &PQClass) -> SchubertClass {
        x.eta.last().cloned().unwrap_or_default()
    }

    /// Pushforward of an unreduced `eta^e * x`, straight from the Segre classes.
    pub fn pushforward_power(&self, e: u32, x: &SchubertClass) -> SchubertClass {
        let q = self.rank();
        if e + 1 < q {
            return SchubertClass::default();
        }
        self.grass.mul(x, &self.grass.segre_qdual(e + 1 - q))
    }
}

/// Restriction along the exceptional divisor: `p -> eta`, `xi -> sigma_1`.
pub fn restrict_to_d(ring: &CohRing, x: &CohClass) -> Result<PQClass> {
    if !ring.spec().is_flagship() {
        return Err(Error::Unsupported(
            "exceptional divisor geometry is only known for the flagship bundle".into(),
        ));
    }
    let pq = ProjQDual::over_g25();
    let g = pq.grass;
    let mut out = PQClass {
        eta: vec![SchubertClass::default(); pq.rank() as usize],
    };
    for (i, v) in x.support() {
        let m = ring.basis()[i];
        let mut s = g.one();
        for _ in 0..m.xi {
            s = g.pieri(&s, 1);
        }
        let r = pq.eta_power(m.p, &s);
        for (slot, cls) in out.eta.iter_mut().zip(&r.eta) {
            slot.add_scaled(cls, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::ring::BundleSpec;

    fn g() -> Grassmannian {
        Grassmannian::g25()
    }

    fn cls(terms: &[(&[u32], i64)]) -> SchubertClass {
        let mut x = SchubertClass::default();
        for (l, v) in terms {
            x.add_scaled(&g().sigma(l), &int(*v));
        }
        x
    }

    #[test]
    fn pieri_examples() {
        let g = g();
        assert_eq!(g.pieri(&g.special(1), 1), cls(&[(&[2], 1), (&[1, 1], 1)]));
        // (3,3)/(2,2) is a vertical strip, so nothing survives.
        assert!(g.pieri(&g.sigma(&[2, 2]), 2).is_zero());
        assert_eq!(g.pieri(&g.special(3), 3), cls(&[(&[3, 3], 1)]));
        assert_eq!(g.partitions().len(), 10);
    }

    #[test]
    fn integrals() {
        let g = g();
        let mut x = g.one();
        for _ in 0..6 {
            x = g.pieri(&x, 1);
        }
        assert_eq!(g.integrate(&x), int(5));
        assert_eq!(g.integrate(&g.mul(&g.sigma(&[2, 2]), &g.sigma(&[1, 1]))), int(1));
        assert_eq!(g.integrate(&g.special(1)), int(0));
    }

    #[test]
    fn duality_on_g25() {
        let g = g();
        for a in g.partitions() {
            for b in g.partitions() {
                let v = g.integrate(&g.mul(&g.sigma(&a), &g.sigma(&b)));
                let expect = if b == g.complement(&a) { 1 } else { 0 };
                assert_eq!(v, int(expect), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn chern_segre_inverse() {
        let g = g();
        for deg in 1..=6 {
            let mut total = SchubertClass::default();
            for j in 0..=deg.min(3) {
                total.add_scaled(&g.mul(&g.segre_qdual(deg - j), &g.chern_qdual(j)), &int(1));
            }
            assert!(total.is_zero(), "degree {deg}");
        }
    }

    #[test]
    fn restriction_and_pushforward() {
        let ring = CohRing::new(&BundleSpec::flagship()).unwrap();
        let pq = ProjQDual::over_g25();
        let p = restrict_to_d(&ring, &ring.reduce_monomial(1, 0)).unwrap();
        assert_eq!(p.eta[1], g().one());
        let xi2 = restrict_to_d(&ring, &ring.reduce_monomial(0, 2)).unwrap();
        assert_eq!(xi2.eta[0], cls(&[(&[2], 1), (&[1, 1], 1)]));
        let p4 = restrict_to_d(&ring, &ring.reduce_monomial(4, 0)).unwrap();
        assert_eq!(p4.eta[2], cls(&[(&[1, 1], 1)]));
        assert_eq!(p4.eta[1], cls(&[(&[2, 1], -1)]));
        assert_eq!(p4.eta[0], cls(&[(&[3, 1], 1)]));
        assert_eq!(pq.pushforward(&p4), cls(&[(&[1, 1], 1)]));
        let eta = pq.eta_power(2, &g().one());
        assert_eq!(pq.pushforward(&eta), g().one());
        assert!(pq.pushforward(&pq.eta_power(1, &g().sigma(&[2, 1]))).is_zero());
        assert!(restrict_to_d(&CohRing::new(&BundleSpec::p1_trivial()).unwrap(), &ring.one()).is_err());
    }

    #[test]
    fn relation_and_segre_pushforwards_agree() {
        let pq = ProjQDual::over_g25();
        for e in 0..=6 {
            for lam in g().partitions() {
                let x = g().sigma(&lam);
                assert_eq!(
                    pq.pushforward(&pq.eta_power(e, &x)),
                    pq.pushforward_power(e, &x),
                    "eta^{e} {lam:?}"
                );
            }
        }
    }
}
