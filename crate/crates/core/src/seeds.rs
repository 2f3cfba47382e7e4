//! Seed two-point invariants and the quantum columns they determine.
//!
//! Only columns of degree `<= n` are seeded; everything above is reconstructed.
//! Fibre classes `b A2` use the pushforward formula on `P^n` (and vanish for
//! `b >= 2`). Base classes `a A1` come from the flagship blow-up geometry, from
//! the second projection of a trivial bundle, or from a user table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::novikov::{QExp, QPoly, QuantumMatrix};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::ring::{CohClass, CohRing, Monomial};
use crate::schubert::{restrict_to_d, ProjQDual};

/// `<phi_alpha, phi_beta>_{0,2,a A1 + b A2}`, keyed by 0-based basis indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeedTable {
    entries: BTreeMap<(usize, usize, u32, u32), Rational>,
}

impl SeedTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, alpha: usize, beta: usize, class: QExp) -> Option<&Rational> {
        let (a, b) = class;
        self.entries
            .get(&(alpha, beta, a, b))
            .or_else(|| self.entries.get(&(beta, alpha, a, b)))
    }

    /// Inserts after the symmetry and dimension checks.
    pub fn insert(
        &mut self,
        ring: &CohRing,
        alpha: usize,
        beta: usize,
        class: QExp,
        value: Rational,
    ) -> std::result::Result<(), String> {
        let spec = ring.spec();
        let (a, b) = class;
        if (a, b) == (0, 0) {
            return Err("curve class must be nonzero".into());
        }
        let weight = a * spec.d1() + b * spec.d2();
        if weight > spec.n() + 1 {
            return Err(format!(
                "class {a}A1 + {b}A2 has degree {weight} > n + 1 = {}; it is not a seed",
                spec.n() + 1
            ));
        }
        let lhs = ring.degree(alpha) + ring.degree(beta);
        let rhs = spec.dim() - 1 + weight;
        if lhs != rhs {
            return Err(format!("degree mismatch: deg alpha + deg beta = {lhs}, expected {rhs}"));
        }
        if let Some(old) = self.get(alpha, beta, class) {
            if *old != value {
                return Err(format!(
                    "conflicting values {} and {} (invariants are symmetric)",
                    format_rational(old),
                    format_rational(&value)
                ));
            }
            return Ok(());
        }
        self.entries.insert((alpha, beta, a, b), value);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, QExp, &Rational)> {
        self.entries.iter().map(|(&(i, j, a, b), v)| (i, j, (a, b), v))
    }
}

fn parse_pair(text: &str) -> Option<(u32, u32)> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (d, k) = inner.split_once(',')?;
    Some((d.trim().parse().ok()?, k.trim().parse().ok()?))
}

/// Reads `(d_alpha,k_alpha) (d_beta,k_beta) a b value` records; `#` starts a comment.
pub fn parse_seeds(ring: &CohRing, text: &str) -> Result<SeedTable> {
    let mut table = SeedTable::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::SeedFile {
            line: lineno + 1,
            message,
        };
        let close = line.find(')').ok_or_else(|| err("expected '(d,k)' for alpha".into()))?;
        let (first, rest) = line.split_at(close + 1);
        let rest = rest.trim_start();
        let close = rest.find(')').ok_or_else(|| err("expected '(d,k)' for beta".into()))?;
        let (second, tail) = rest.split_at(close + 1);
        let fields: Vec<&str> = tail.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(format!(
                "expected 'a b value' after the classes, found {} fields",
                fields.len()
            )));
        }
        let index = |pair: &str| -> Result<usize> {
            let (d, k) = parse_pair(pair).ok_or_else(|| err(format!("bad class '{pair}'")))?;
            ring.basis_index(d, k)
                .map(|i| i - 1)
                .map_err(|_| err(format!("class ({d},{k}) is not a basis monomial")))
        };
        let alpha = index(first)?;
        let beta = index(second)?;
        let a: u32 = fields[0]
            .parse()
            .map_err(|_| err(format!("bad multiplicity '{}'", fields[0])))?;
        let b: u32 = fields[1]
            .parse()
            .map_err(|_| err(format!("bad multiplicity '{}'", fields[1])))?;
        let value = parse_rational(fields[2]).map_err(|_| err(format!("bad value '{}'", fields[2])))?;
        table.insert(ring, alpha, beta, (a, b), value).map_err(err)?;
    }
    Ok(table)
}

pub fn load_seeds(ring: &CohRing, path: &std::path::Path) -> Result<SeedTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_seeds(ring, &text)
}

pub fn format_seeds(ring: &CohRing, table: &SeedTable) -> String {
    let mut s = String::from("# (d_alpha,k_alpha) (d_beta,k_beta) a b value\n");
    for (i, j, (a, b), v) in table.iter() {
        let (x, y) = (ring.basis()[i], ring.basis()[j]);
        let _ = writeln!(
            s,
            "({},{}) ({},{}) {a} {b} {}",
            x.degree(),
            x.p,
            y.degree(),
            y.p,
            format_rational(v)
        );
    }
    s
}

/// Fibre-class invariant `<alpha, beta>_{k A2} = int_{P^n} pi_* alpha . pi_* beta` for `k = 1`, else 0.
pub fn fiber_invariant(ring: &CohRing, alpha: &CohClass, beta: &CohClass, k: u32) -> Rational {
    if k != 1 {
        return Rational::zero();
    }
    let x = ring.pushforward_to_base(alpha);
    let y = ring.pushforward_to_base(beta);
    let n = x.len() - 1;
    (0..=n).map(|i| &x[i] * &y[n - i]).sum()
}

/// Blow-up invariant `<alpha, beta>_{k A1}` of the flagship bundle, through the
/// exceptional divisor `P(Q*)` over `G(2,5)`.
pub fn blowup_invariant(ring: &CohRing, alpha: &CohClass, beta: &CohClass, k: u32) -> Result<Rational> {
    let pq = ProjQDual::over_g25();
    let x = pq.pushforward(&restrict_to_d(ring, alpha)?);
    let y = pq.pushforward(&restrict_to_d(ring, beta)?);
    if k != 1 {
        return Ok(Rational::zero());
    }
    Ok(pq.grass.integrate(&pq.grass.mul(&x, &y)))
}

/// Base-direction invariant `<alpha, beta>_{k A1}` for a trivial bundle, where
/// `X = P^n x P^(r-1)` and lines in the base are fibres of the second projection.
pub fn product_invariant(ring: &CohRing, alpha: &CohClass, beta: &CohClass, k: u32) -> Result<Rational> {
    let spec = ring.spec();
    if spec.chern().iter().any(|&c| c != 0) {
        return Err(Error::Unsupported("product seeds need a trivial bundle".into()));
    }
    if k != 1 {
        return Ok(Rational::zero());
    }
    let push = |x: &CohClass| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); spec.r() as usize];
        for (i, v) in x.support() {
            let m = ring.basis()[i];
            if m.p == spec.n() {
                out[m.xi as usize] += v;
            }
        }
        out
    };
    let (x, y) = (push(alpha), push(beta));
    let top = spec.r() as usize - 1;
    Ok((0..=top).map(|i| &x[i] * &y[top - i]).sum())
}

/// Where the base-direction seeds come from.
#[derive(Debug, Clone)]
pub enum SeedSource {
    /// Flagship exceptional-divisor geometry.
    Blowup,
    /// Trivial bundle, product geometry.
    Product,
    /// User table; fibre classes missing from it fall back to the fibre formula.
    Table(SeedTable),
}

impl SeedSource {
    /// Builtin source for the bundle, if one exists.
    pub fn builtin(ring: &CohRing) -> Option<SeedSource> {
        let spec = ring.spec();
        if spec.is_flagship() {
            Some(SeedSource::Blowup)
        } else if spec.chern().iter().all(|&c| c == 0) {
            Some(SeedSource::Product)
        } else {
            None
        }
    }

    pub fn invariant(&self, ring: &CohRing, alpha: usize, beta: usize, class: QExp) -> Result<Rational> {
        let x = ring.basis_class(alpha);
        let y = ring.basis_class(beta);
        let missing = || Error::MissingSeed {
            alpha: ring.basis()[alpha].to_string(),
            beta: ring.basis()[beta].to_string(),
            a: class.0,
            b: class.1,
        };
        match (self, class) {
            (SeedSource::Table(t), _) => match t.get(alpha, beta, class) {
                Some(v) => Ok(v.clone()),
                None if class.0 == 0 => Ok(fiber_invariant(ring, &x, &y, class.1)),
                None => Err(missing()),
            },
            (_, (0, b)) => Ok(fiber_invariant(ring, &x, &y, b)),
            (SeedSource::Blowup, (a, 0)) => blowup_invariant(ring, &x, &y, a),
            (SeedSource::Product, (a, 0)) => product_invariant(ring, &x, &y, a),
            _ => Err(missing()),
        }
    }
}

/// Curve classes that can contribute to columns of degree `<= n`.
pub fn seed_classes(ring: &CohRing) -> Vec<QExp> {
    let spec = ring.spec();
    let bound = spec.n() + 1;
    let mut out = Vec::new();
    for a in 0..=bound / spec.d1() {
        for b in 0..=(bound - a * spec.d1()) / spec.d2() {
            if (a, b) != (0, 0) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Every `(alpha, beta, class)` whose invariant the seed columns read.
pub fn demanded_invariants(ring: &CohRing) -> Vec<(usize, usize, QExp)> {
    let spec = ring.spec();
    let mut out = Vec::new();
    for gamma in (0..ring.size()).filter(|&g| ring.degree(g) <= spec.n()) {
        for class in seed_classes(ring) {
            let target = spec.dim() - 1 + class.0 * spec.d1() + class.1 * spec.d2();
            for phi in 0..ring.size() {
                if ring.degree(gamma) + ring.degree(phi) == target {
                    out.push((gamma, phi, class));
                }
            }
        }
    }
    out
}

/// Every demanded invariant evaluated through `source`.
pub fn seed_table(ring: &CohRing, source: &SeedSource) -> Result<SeedTable> {
    let mut table = SeedTable::default();
    for (g, phi, class) in demanded_invariants(ring) {
        let v = source.invariant(ring, g, phi, class)?;
        table
            .insert(ring, g, phi, class, v)
            .map_err(|m| Error::Io(format!("computed seed rejected: {m}")))?;
    }
    Ok(table)
}

/// Quantum matrices with only the seeded columns present.
#[derive(Debug, Clone)]
pub struct SeedColumns {
    pub mp: QuantumMatrix,
    pub mxi: QuantumMatrix,
    pub filled_p: Vec<bool>,
    pub filled_xi: Vec<bool>,
}

/// Columns of degree `<= n`: classical product plus
/// `sum_(a,b) (D . curve) sum_i <gamma, phi_i>_(a,b) phi^i q1^a q2^b`.
pub fn seed_columns(ring: &CohRing, source: &SeedSource) -> Result<SeedColumns> {
    let size = ring.size();
    let n = ring.spec().n();
    let mut mp = QuantumMatrix::zero(size);
    let mut mxi = QuantumMatrix::zero(size);
    let mut filled = vec![false; size];
    let cp = ring.mul_matrix(Monomial { p: 1, xi: 0 });
    let cx = ring.mul_matrix(Monomial { p: 0, xi: 1 });
    for gamma in (0..size).filter(|&g| ring.degree(g) <= n) {
        for i in 0..size {
            mp.get_mut(i, gamma).add_term((0, 0), cp[i][gamma].clone());
            mxi.get_mut(i, gamma).add_term((0, 0), cx[i][gamma].clone());
        }
        filled[gamma] = true;
    }
    for (gamma, phi, class) in demanded_invariants(ring) {
        let v = source.invariant(ring, gamma, phi, class)?;
        if v.is_zero() {
            continue;
        }
        let dual = ring.dual_class(phi);
        for (l, w) in dual.support() {
            let t = &v * w;
            if class.0 > 0 {
                mp.get_mut(l, gamma)
                    .add_term(class, Rational::from_integer(class.0.into()) * &t);
            }
            if class.1 > 0 {
                mxi.get_mut(l, gamma)
                    .add_term(class, Rational::from_integer(class.1.into()) * &t);
            }
        }
    }
    Ok(SeedColumns {
        mp,
        mxi,
        filled_p: filled.clone(),
        filled_xi: filled,
    })
}

/// Column of `M_p` as a polynomial vector, for display.
pub fn describe_column(ring: &CohRing, col: &[QPoly]) -> String {
    let parts: Vec<String> = col
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(i, p)| format!("({})*{}", p, ring.basis()[i]))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
