//! The classical cohomology ring `Q[p, xi] / (p^(n+1), xi^r + c1 p xi^(r-1) + ... + cr p^r)`
//! of the projectivisation of a split-Chern-data bundle over `P^n`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// Input geometry: base dimension, rank, and Chern coefficients `c_i(E) = c_i p^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleSpec {
    n: u32,
    r: u32,
    chern: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleConfig {
    n: u32,
    r: u32,
    #[serde(default)]
    chern: Vec<i64>,
}

impl BundleSpec {
    pub fn new(n: u32, r: u32, chern: &[i64]) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidBundle(format!(
                "base dimension n = {n} must be at least 1"
            )));
        }
        if r < 2 {
            return Err(Error::InvalidBundle(format!("rank r = {r} must be at least 2")));
        }
        if chern.len() > r as usize {
            return Err(Error::InvalidBundle(format!(
                "{} Chern coefficients given for a rank {r} bundle",
                chern.len()
            )));
        }
        let mut c = chern.to_vec();
        c.resize(r as usize, 0);
        let c1 = c[0];
        if r as i64 + 1 + c1 <= 0 {
            return Err(Error::InvalidBundle(format!(
                "r + 1 + c1 > 0 fails ({r} + 1 + {c1} = {})",
                r as i64 + 1 + c1
            )));
        }
        if n as i64 + 1 + c1 <= 0 {
            return Err(Error::InvalidBundle(format!(
                "Fano positivity n + 1 + c1 > 0 fails ({n} + 1 + {c1} = {})",
                n as i64 + 1 + c1
            )));
        }
        Ok(BundleSpec { n, r, chern: c })
    }

    /// `c(E) = 1 - 3p + 5p^2 - 5p^3` on `P^4`, rank 6.
    pub fn flagship() -> Self {
        Self::new(4, 6, &[-3, 5, -5]).expect("flagship bundle is valid")
    }

    /// Trivial rank-2 bundle on `P^1`, so `X = P^1 x P^1`.
    pub fn p1_trivial() -> Self {
        Self::new(1, 2, &[]).expect("trivial bundle is valid")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: BundleConfig = toml::from_str(text).map_err(|e| Error::Parse {
            position: e.span().map_or(0, |s| s.start),
            message: e.message().to_string(),
        })?;
        Self::new(cfg.n, cfg.r, &cfg.chern)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `c_1 .. c_r`, zero padded.
    pub fn chern(&self) -> &[i64] {
        &self.chern
    }

    /// `c_i` with `c_0 = 1` and zero outside `0..=r`.
    pub fn c(&self, i: u32) -> i64 {
        match i {
            0 => 1,
            i if i <= self.r => self.chern[i as usize - 1],
            _ => 0,
        }
    }

    /// Degree of `q1`, i.e. `-K . A1 = n + 1 + c1`.
    pub fn d1(&self) -> u32 {
        (self.n as i64 + 1 + self.chern[0]) as u32
    }

    /// Degree of `q2`, i.e. `-K . A2 = r`.
    pub fn d2(&self) -> u32 {
        self.r
    }

    pub fn basis_size(&self) -> usize {
        (self.r * (self.n + 1)) as usize
    }

    pub fn dim(&self) -> u32 {
        self.n + self.r - 1
    }

    pub fn is_flagship(&self) -> bool {
        *self == Self::flagship()
    }
}

/// A basis monomial `p^k xi^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub p: u32,
    pub xi: u32,
}

impl Monomial {
    pub fn degree(self) -> u32 {
        self.p + self.xi
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |name: &str, e: u32| match e {
            0 => None,
            1 => Some(name.to_string()),
            e => Some(format!("{name}^{e}")),
        };
        let parts: Vec<String> = [part("p", self.p), part("xi", self.xi)].into_iter().flatten().collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Dense coefficient vector over the monomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohClass(pub Vec<Rational>);

impl CohClass {
    pub fn zero(size: usize) -> Self {
        CohClass(vec![Rational::zero(); size])
    }

    pub fn unit(size: usize, i: usize) -> Self {
        let mut v = Self::zero(size);
        v.0[i] = Rational::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add_scaled(&mut self, other: &CohClass, s: &Rational) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            if !y.is_zero() {
                *x += s * y;
            }
        }
    }

    pub fn scaled(&self, s: &Rational) -> CohClass {
        CohClass(self.0.iter().map(|x| x * s).collect())
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    /// `"num/den"` strings in basis order, as a JSON array.
    pub fn to_json(&self) -> String {
        let v: Vec<String> = self.0.iter().map(format_rational).collect();
        serde_json::to_string(&v).expect("string arrays serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Vec<String> = serde_json::from_str(text).map_err(|e| Error::Parse {
            position: e.column(),
            message: e.to_string(),
        })?;
        v.iter().map(|s| parse_rational(s)).collect::<Result<_>>().map(CohClass)
    }
}

/// Precomputed arithmetic for one bundle.
#[derive(Debug, Clone)]
pub struct CohRing {
    spec: BundleSpec,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    segre: Vec<Rational>,
    pairing: Matrix,
    dual: Matrix,
}

impl CohRing {
    pub fn new(spec: &BundleSpec) -> Result<Self> {
        let (n, r) = (spec.n, spec.r);
        let mut basis = Vec::with_capacity(spec.basis_size());
        for d in 0..=spec.dim() {
            for k in (0..=d.min(n)).rev() {
                if d - k < r {
                    basis.push(Monomial { p: k, xi: d - k });
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut segre = vec![Rational::one()];
        for i in 1..=n {
            let s: Rational = (1..=i).map(|j| -int(spec.c(j)) * &segre[(i - j) as usize]).sum();
            segre.push(s);
        }
        let mut ring = CohRing {
            spec: spec.clone(),
            basis,
            index,
            segre,
            pairing: Vec::new(),
            dual: Vec::new(),
        };
        let size = ring.size();
        ring.pairing = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        let (a, b) = (ring.basis[i], ring.basis[j]);
                        ring.integrate(&ring.reduce_monomial(a.p + b.p, a.xi + b.xi))
                    })
                    .collect()
            })
            .collect();
        ring.dual = linalg::inverse(&ring.pairing).ok_or(Error::SingularPairing)?;
        Ok(ring)
    }

    pub fn spec(&self) -> &BundleSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.basis[i].degree()
    }

    /// 1-based position of `p^k xi^(d-k)`.
    pub fn basis_index(&self, d: u32, k: u32) -> Result<usize> {
        if k > d {
            return Err(Error::OutOfBasis { d, k });
        }
        self.index
            .get(&Monomial { p: k, xi: d - k })
            .map(|i| i + 1)
            .ok_or(Error::OutOfBasis { d, k })
    }

    /// 0-based position of a monomial, if it lies in the basis.
    pub fn position(&self, m: Monomial) -> Option<usize> {
        self.index.get(&m).copied()
    }

    /// Closed-form position, valid when `r > n`.
    pub fn closed_form_index(&self, d: u32, k: u32) -> Option<usize> {
        let (n, r) = (self.spec.n as i64, self.spec.r as i64);
        let (d, k) = (d as i64, k as i64);
        if r <= n {
            return None;
        }
        let twice = if d <= n {
            (d + 2) * (d + 1) - 2 * k
        } else if d < r {
            (n + 1) * (2 * d - n + 2) - 2 * k
        } else {
            (n + 1) * (2 * r - n) + (d - r + 1) * (2 * n - d + r) + 2 * (d + 1 - r - k)
        };
        Some((twice / 2) as usize)
    }

    pub fn monomial(&self, m: Monomial) -> CohClass {
        self.reduce_monomial(m.p, m.xi)
    }

    pub fn basis_class(&self, i: usize) -> CohClass {
        CohClass::unit(self.size(), i)
    }

    pub fn one(&self) -> CohClass {
        self.basis_class(0)
    }

    /// Reduces `p^a xi^b` using `p^(n+1) = 0` and `xi^r = -sum c_i p^i xi^(r-i)`.
    pub fn reduce_monomial(&self, a: u32, b: u32) -> CohClass {
        let mut out = CohClass::zero(self.size());
        self.reduce_into(a, b, &Rational::one(), &mut out);
        out
    }

    fn reduce_into(&self, a: u32, b: u32, coef: &Rational, out: &mut CohClass) {
        if a > self.spec.n {
            return;
        }
        if b < self.spec.r {
            let i = self.index[&Monomial { p: a, xi: b }];
            out.0[i] += coef;
            return;
        }
        for i in 1..=self.spec.r {
            let c = self.spec.c(i);
            if c != 0 {
                self.reduce_into(a + i, b - i, &(coef * int(-c)), out);
            }
        }
    }

    pub fn classical_mul(&self, x: &CohClass, y: &CohClass) -> CohClass {
        let mut out = CohClass::zero(self.size());
        for (i, u) in x.support() {
            for (j, v) in y.support() {
                let (a, b) = (self.basis[i], self.basis[j]);
                self.reduce_into(a.p + b.p, a.xi + b.xi, &(u * v), &mut out);
            }
        }
        out
    }

    /// Matrix of `x -> divisor * x`; column `j` is the image of basis class `j`.
    pub fn mul_matrix(&self, divisor: Monomial) -> Matrix {
        let size = self.size();
        let mut m = vec![vec![Rational::zero(); size]; size];
        for (j, b) in self.basis.iter().enumerate() {
            let col = self.reduce_monomial(b.p + divisor.p, b.xi + divisor.xi);
            for (i, v) in col.support() {
                m[i][j] = v.clone();
            }
        }
        m
    }

    /// `s_0 .. s_n` with `s(E) c(E) = 1`.
    pub fn segre(&self) -> &[Rational] {
        &self.segre
    }

    /// Pushforward to `P^n` as coefficients of `1, p, .., p^n`.
    pub fn pushforward_to_base(&self, x: &CohClass) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.spec.n as usize + 1];
        for (i, v) in x.support() {
            let m = self.basis[i];
            for (k, s) in self.push_monomial(m.p, m.xi) {
                out[k] += v * s;
            }
        }
        out
    }

    /// `pi_*(p^a xi^(r-1+i)) = p^a s_i`, for any unreduced monomial.
    pub fn push_monomial(&self, a: u32, b: u32) -> Vec<(usize, Rational)> {
        let n = self.spec.n;
        if b + 1 < self.spec.r {
            return Vec::new();
        }
        let i = b + 1 - self.spec.r;
        if a + i > n {
            return Vec::new();
        }
        vec![((a + i) as usize, self.segre[i as usize].clone())]
    }

    pub fn integrate(&self, x: &CohClass) -> Rational {
        self.pushforward_to_base(x).pop().unwrap_or_else(Rational::zero)
    }

    /// Poincaré pairing matrix `G_ij = int phi_i phi_j`.
    pub fn pairing_matrix(&self) -> &Matrix {
        &self.pairing
    }

    /// `G^-1`; the dual class `phi^i` is `sum_j (G^-1)_ij phi_j`.
    pub fn dual_basis(&self) -> &Matrix {
        &self.dual
    }

    pub fn dual_class(&self, i: usize) -> CohClass {
        CohClass(self.dual[i].clone())
    }

    pub fn pairing(&self, x: &CohClass, y: &CohClass) -> Rational {
        let mut total = Rational::zero();
        for (i, u) in x.support() {
            for (j, v) in y.support() {
                if !self.pairing[i][j].is_zero() {
                    total += u * v * &self.pairing[i][j];
                }
            }
        }
        total
    }

    /// Single degree of a nonzero homogeneous class.
    pub fn homogeneous_degree(&self, x: &CohClass) -> Option<u32> {
        let mut degs = x.support().map(|(i, _)| self.degree(i));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn describe(&self, x: &CohClass) -> String {
        let terms: Vec<String> = x
            .support()
            .map(|(i, v)| format!("{}*{}", format_rational(v), self.basis[i]))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
