//! Quantum Lefschetz for complete intersections of nef divisors `rho = u p + v xi`:
//! hypergeometric modification, mirror-map prefactor, period sequence, and
//! Picard–Fuchs operators in `D = t d/dt`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::parse_poly;
use crate::linalg::{nullspace, Matrix};
use crate::novikov::QExp;
use crate::rational::{factorial, Rational};

/// Line bundles `O(u p + v xi)` cutting out the complete intersection.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntersectionSpec {
    pub bundles: Vec<(u32, u32)>,
}

impl IntersectionSpec {
    /// Comma-separated divisors; a power means repeated copies, so `"p,xi^5"`
    /// is one `p` and five `xi`, and `"p+2*xi"` is a single bundle.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bundles = Vec::new();
        let mut offset = 0;
        for item in text.split(',') {
            let err = |message: String| Error::Parse {
                position: offset,
                message,
            };
            let poly = parse_poly(item, &["p", "xi"]).map_err(|e| match e {
                Error::Parse { position, message } => Error::Parse {
                    position: offset + position,
                    message,
                },
                other => other,
            })?;
            let terms: Vec<(&Vec<u32>, &Rational)> = poly.terms.iter().collect();
            let as_count = |c: &Rational| -> Option<u32> {
                (c.is_integer() && c.is_positive())
                    .then(|| c.to_integer().try_into().ok())
                    .flatten()
            };
            match terms.as_slice() {
                [(e, c)] if c.is_one() && (e[0] == 0 || e[1] == 0) && e[0] + e[1] > 1 => {
                    let unit = if e[0] > 0 { (1, 0) } else { (0, 1) };
                    bundles.extend(std::iter::repeat_n(unit, (e[0] + e[1]) as usize));
                }
                _ => {
                    let (mut u, mut v) = (0, 0);
                    for (e, c) in &terms {
                        let k = as_count(c).ok_or_else(|| {
                            err(format!("coefficient in '{}' must be a positive integer", item.trim()))
                        })?;
                        match (e[0], e[1]) {
                            (1, 0) => u += k,
                            (0, 1) => v += k,
                            _ => return Err(err(format!("'{}' is not a divisor u*p + v*xi", item.trim()))),
                        }
                    }
                    if (u, v) == (0, 0) {
                        return Err(err("empty divisor".into()));
                    }
                    bundles.push((u, v));
                }
            }
            offset += item.len() + 1;
        }
        Ok(IntersectionSpec { bundles })
    }

    /// `sum rho . (a, b)`.
    pub fn degree(&self, (a, b): QExp) -> u32 {
        self.bundles.iter().map(|(u, v)| u * a + v * b).sum()
    }
}

impl fmt::Display for IntersectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut counts: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for b in &self.bundles {
            *counts.entry(*b).or_default() += 1;
        }
        let items: Vec<String> = counts
            .iter()
            .rev()
            .map(|(&(u, v), &k)| {
                let base = match (u, v) {
                    (1, 0) => "p".to_string(),
                    (0, 1) => "xi".to_string(),
                    (u, 0) => format!("{u}*p"),
                    (0, v) => format!("{v}*xi"),
                    (u, v) => format!("{u}*p+{v}*xi"),
                };
                match (k, u == 0 || v == 0) {
                    (1, _) => base,
                    (k, true) if base == "p" || base == "xi" => format!("{base}^{k}"),
                    (k, _) => vec![base; k].join(","),
                }
            })
            .collect();
        write!(f, "{}", items.join(","))
    }
}

pub type Table = BTreeMap<QExp, Rational>;

/// `d_ab = c_ab prod_rho (rho . (a, b))!`.
pub fn hypergeometric_modify(c: &Table, cut: &IntersectionSpec) -> Table {
    c.iter()
        .map(|(&(a, b), v)| {
            let f: BigInt = cut.bundles.iter().map(|(u, w)| factorial(u * a + w * b)).product();
            ((a, b), v * Rational::from_integer(f))
        })
        .collect()
}

/// `d_ab` sits at `z^-(a d1 + b d2 - rho . (a, b))`; returns that excess.
fn excess(weights: (u32, u32), cut: &IntersectionSpec, (a, b): QExp) -> i64 {
    (a * weights.0 + b * weights.1) as i64 - cut.degree((a, b)) as i64
}

#[derive(Debug, Clone)]
pub struct MirrorMap {
    /// `z^0` part of the modified identity component (must be exactly 1).
    pub f: Table,
    /// `z^-1` part, no constant term.
    pub g0: Table,
    /// `exp(-g0)`, truncated like the input table.
    pub multiplier: Table,
}

/// Truncated product of two `q`-series, keeping total degree `<= order`.
fn series_mul(x: &Table, y: &Table, order: u32) -> Table {
    let mut out = Table::new();
    for (&(a1, b1), v1) in x {
        for (&(a2, b2), v2) in y {
            if a1 + b1 + a2 + b2 <= order {
                *out.entry((a1 + a2, b1 + b2)).or_insert_with(Rational::zero) += v1 * v2;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `exp(-g)` for `g` without constant term, through total degree `order`.
pub fn exp_neg(g: &Table, order: u32) -> Table {
    let mut out = Table::new();
    out.insert((0, 0), Rational::one());
    let mut power = out.clone();
    let neg: Table = g.iter().map(|(k, v)| (*k, -v.clone())).collect();
    for k in 1..=order {
        power = series_mul(&power, &neg, order);
        if power.is_empty() {
            break;
        }
        let inv = Rational::new(BigInt::one(), BigInt::from(k));
        power.values_mut().for_each(|v| *v *= &inv);
        for (e, v) in &power {
            *out.entry(*e).or_insert_with(Rational::zero) += v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Splits the modified identity component by `z`-power and builds `exp(-G0_nc / F)`.
pub fn mirror_map_correction(d: &Table, weights: (u32, u32), cut: &IntersectionSpec) -> Result<MirrorMap> {
    let order = d.keys().map(|(a, b)| a + b).max().unwrap_or(0);
    let mut f = Table::new();
    let mut g0 = Table::new();
    for (&k, v) in d {
        if v.is_zero() {
            continue;
        }
        match excess(weights, cut, k) {
            e if e < 0 => return Err(Error::DilatonShift),
            0 => {
                f.insert(k, v.clone());
            }
            1 => {
                g0.insert(k, v.clone());
            }
            _ => {}
        }
    }
    let trivial = f.len() == 1 && f.get(&(0, 0)).is_some_and(One::is_one);
    if !trivial {
        return Err(Error::DilatonShift);
    }
    let multiplier = exp_neg(&g0, order);
    Ok(MirrorMap { f, g0, multiplier })
}

/// Coefficients of `t^m`, `m < terms`, of `multiplier * sum d_ab q1^a q2^b` at `q1 = q2 = t`.
pub fn period_sequence(d: &Table, multiplier: &Table, terms: usize) -> Result<Vec<Rational>> {
    let complete = (0..)
        .take_while(|&m: &u32| (0..=m).all(|a| d.contains_key(&(a, m - a))))
        .count();
    if terms > complete {
        return Err(Error::Truncation {
            needed: terms,
            achievable: complete,
        });
    }
    let collapse = |t: &Table| {
        let mut out = vec![Rational::zero(); terms];
        for (&(a, b), v) in t {
            if let Some(slot) = out.get_mut((a + b) as usize) {
                *slot += v;
            }
        }
        out
    };
    let x = collapse(d);
    let y = collapse(multiplier);
    Ok((0..terms).map(|m| (0..=m).map(|k| &y[k] * &x[m - k]).sum()).collect())
}

/// `m!` times the `m`-th term.
pub fn regularize(seq: &[Rational]) -> Vec<Rational> {
    seq.iter()
        .enumerate()
        .map(|(m, v)| v * Rational::from_integer(factorial(m as u32)))
        .collect()
}

/// `sum coeff t^m D^e`, `D = t d/dt`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PFOp {
    /// `(m, e) -> coeff`.
    pub terms: BTreeMap<(u32, u32), Rational>,
}

impl PFOp {
    /// One expression in `t` and `D`, possibly split over several lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        let mut seen = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            seen = true;
            let poly = parse_poly(line, &["t", "D"]).map_err(|e| match e {
                Error::Parse { position, message } => Error::Parse {
                    position,
                    message: format!("line {}: {message}", lineno + 1),
                },
                other => other,
            })?;
            for (e, c) in poly.terms {
                *terms.entry((e[0], e[1])).or_insert_with(Rational::zero) += c;
            }
        }
        if !seen {
            return Err(Error::Parse {
                position: 0,
                message: "empty operator".into(),
            });
        }
        terms.retain(|_, v| !v.is_zero());
        Ok(PFOp { terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|&(_, e)| e).max().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(m, _)| m).max().unwrap_or(0)
    }

    /// Equal up to a nonzero rational scalar.
    pub fn proportional(&self, other: &PFOp) -> bool {
        if self.terms.keys().ne(other.terms.keys()) {
            return false;
        }
        let Some(((_, a), (_, b))) = self.terms.iter().zip(&other.terms).next() else {
            return true;
        };
        let ratio = b / a;
        self.terms
            .iter()
            .zip(&other.terms)
            .all(|((_, x), (_, y))| x * &ratio == *y)
    }

    /// Primitive integer coefficients; the lowest `t`-term of the top `D`-power is positive.
    pub fn normalized(&self) -> PFOp {
        if self.terms.is_empty() {
            return self.clone();
        }
        let lcm = self.terms.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let top = self.order();
        let lead = self
            .terms
            .iter()
            .filter(|((_, e), _)| *e == top)
            .map(|(_, v)| v)
            .next()
            .expect("top power present");
        let sign = if lead.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        PFOp {
            terms: self
                .terms
                .keys()
                .zip(ints)
                .map(|(k, v)| (*k, Rational::from_integer(v / &gcd * &sign)))
                .collect(),
        }
    }
}

impl fmt::Display for PFOp {
    /// One `c*t^m*D^e` term per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((m, e), c) in &self.terms {
            writeln!(f, "{c}*t^{m}*D^{e}")?;
        }
        Ok(())
    }
}

/// Residual of `op` on `sum seq[d] t^d`: term `(m, e)` sends `seq[d]` to `coeff d^e` at `d + m`.
/// Positions `0..seq.len()` are certified, since every input they read is present.
pub fn pf_apply(op: &PFOp, seq: &[Rational]) -> Vec<Rational> {
    (0..seq.len())
        .map(|pos| {
            op.terms
                .iter()
                .filter(|((m, _), _)| *m as usize <= pos)
                .map(|(&(m, e), c)| {
                    let d = pos - m as usize;
                    c * Rational::from_integer(BigInt::from(d).pow(e)) * &seq[d]
                })
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Annihilator {
    /// One-dimensional solution space, normalized.
    Unique(PFOp),
    None,
    /// Solution space of this dimension (more than one).
    Degenerate(usize),
}

/// Searches `sum_{m <= max_degree, e <= max_order} c_me t^m D^e` annihilating `seq`,
/// using one equation per sequence position.
pub fn find_annihilator(seq: &[Rational], max_order: u32, max_degree: u32) -> Result<Annihilator> {
    let unknowns: Vec<(u32, u32)> = (0..=max_degree)
        .flat_map(|m| (0..=max_order).map(move |e| (m, e)))
        .collect();
    if seq.len() <= unknowns.len() {
        return Err(Error::Underdetermined {
            required: unknowns.len(),
            got: seq.len(),
        });
    }
    let rows: Matrix = (0..seq.len())
        .map(|pos| {
            unknowns
                .iter()
                .map(|&(m, e)| match pos.checked_sub(m as usize) {
                    Some(d) => Rational::from_integer(BigInt::from(d).pow(e)) * &seq[d],
                    None => Rational::zero(),
                })
                .collect()
        })
        .collect();
    let ns = nullspace(&rows, unknowns.len());
    Ok(match ns.len() {
        0 => Annihilator::None,
        1 => Annihilator::Unique(
            PFOp {
                terms: unknowns
                    .iter()
                    .zip(&ns[0])
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| (*k, v.clone()))
                    .collect(),
            }
            .normalized(),
        ),
        k => Annihilator::Degenerate(k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn cut_parsing() {
        let cut = IntersectionSpec::parse("p,xi^5").unwrap();
        assert_eq!(cut.bundles, vec![(1, 0), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(cut.to_string(), "p,xi^5");
        assert_eq!(IntersectionSpec::parse("p+2*xi").unwrap().bundles, vec![(1, 2)]);
        assert!(IntersectionSpec::parse("p*xi").is_err());
        assert!(IntersectionSpec::parse("p,").is_err());
        assert!(IntersectionSpec::parse("-p").is_err());
    }

    #[test]
    fn modification() {
        let mut c = Table::new();
        c.insert((1, 1), int(5));
        c.insert((2, 3), int(1));
        let cut = IntersectionSpec::parse("p,xi^5").unwrap();
        let d = hypergeometric_modify(&c, &cut);
        assert_eq!(d[&(1, 1)], int(5));
        assert_eq!(d[&(2, 3)], int(2 * 6i64.pow(5)));
        assert_eq!(hypergeometric_modify(&c, &IntersectionSpec::default()), c);
    }

    #[test]
    fn exp_series() {
        let mut g = Table::new();
        g.insert((0, 1), int(1));
        let e = exp_neg(&g, 3);
        assert_eq!(e[&(0, 3)], Rational::new((-1).into(), 6.into()));
        assert_eq!(e.len(), 4);
    }

    #[test]
    fn regularization() {
        assert_eq!(regularize(&ints(&[1, 0, 5])), ints(&[1, 0, 10]));
        assert!(regularize(&[]).is_empty());
        assert_eq!(regularize(&ints(&[1])), ints(&[1]));
    }

    #[test]
    fn pf_basics() {
        let d = PFOp::parse("D").unwrap();
        assert_eq!(pf_apply(&d, &ints(&[1, 1, 1, 1])), ints(&[0, 1, 2, 3]));
        assert!(pf_apply(&d, &ints(&[7, 0, 0])).iter().all(Zero::is_zero));
        let op = PFOp::parse("-3*t^2*D\n+ 5 # comment\n").unwrap();
        assert_eq!(op.terms[&(2, 1)], int(-3));
        assert_eq!(op.to_string(), "5*t^0*D^0\n-3*t^2*D^1\n");
        assert_eq!(PFOp::parse(&op.to_string()).unwrap(), op);
        assert!(PFOp::parse("# nothing").is_err());
    }

    #[test]
    fn geometric_annihilator() {
        let seq = ints(&[1; 12]);
        let expect = PFOp::parse("D - t*D - t").unwrap();
        assert_eq!(find_annihilator(&seq, 1, 1).unwrap(), Annihilator::Unique(expect));
        assert!(matches!(
            find_annihilator(&ints(&[0; 12]), 1, 1).unwrap(),
            Annihilator::Degenerate(4)
        ));
        assert!(matches!(
            find_annihilator(&ints(&[1; 4]), 1, 1),
            Err(Error::Underdetermined { .. })
        ));
        // factorials need a degree-2 polynomial coefficient; nothing at order 0
        let fact: Vec<Rational> = (0..12).map(|m| Rational::from_integer(factorial(m))).collect();
        assert_eq!(find_annihilator(&fact, 0, 1).unwrap(), Annihilator::None);
    }

    #[test]
    fn proportionality() {
        let a = PFOp::parse("2*D - 4*t").unwrap();
        let b = PFOp::parse("-D + 2*t").unwrap();
        assert!(a.proportional(&b));
        assert!(!a.proportional(&PFOp::parse("D + 2*t").unwrap()));
        assert_eq!(a.normalized(), PFOp::parse("D - 2*t").unwrap());
    }

    #[test]
    fn mirror_map_trivial_and_shifted() {
        let mut d = Table::new();
        d.insert((0, 0), int(1));
        d.insert((1, 0), int(0));
        d.insert((0, 1), int(1));
        d.insert((1, 1), int(5));
        let cut = IntersectionSpec::parse("p,xi^5").unwrap();
        let mm = mirror_map_correction(&d, (2, 6), &cut).unwrap();
        assert_eq!(mm.g0.keys().copied().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(mm.multiplier[&(0, 2)], Rational::new(1.into(), 2.into()));
        let plain = mirror_map_correction(&d, (2, 6), &IntersectionSpec::default()).unwrap();
        assert_eq!(plain.multiplier.len(), 1);
        d.insert((1, 0), int(3));
        let too_big = IntersectionSpec::parse("p^2").unwrap();
        assert!(matches!(
            mirror_map_correction(&d, (2, 6), &too_big),
            Err(Error::DilatonShift)
        ));
    }
}
