//! Polynomials in the Novikov variables `q1, q2` and matrices over them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{format_rational, parse_rational, Rational};

/// `(a, b)` stands for `q1^a q2^b`.
pub type QExp = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct QPoly {
    pub terms: BTreeMap<QExp, Rational>,
}

impl QPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial((0, 0), c)
    }

    pub fn monomial(e: QExp, c: Rational) -> Self {
        let mut p = QPoly::default();
        p.add_term(e, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: QExp) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: QExp, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_scaled(&mut self, other: &QPoly, s: &Rational) {
        for (&e, v) in &other.terms {
            self.add_term(e, v * s);
        }
    }

    /// `self += x * y`.
    pub fn add_product(&mut self, x: &QPoly, y: &QPoly) {
        for (&(a1, b1), v1) in &x.terms {
            for (&(a2, b2), v2) in &y.terms {
                self.add_term((a1 + a2, b1 + b2), v1 * v2);
            }
        }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::default();
        out.add_product(self, other);
        out
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), v) in &self.terms {
            let mut mono = Vec::new();
            for (name, e) in [("q1", a), ("q2", b)] {
                match e {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    e => mono.push(format!("{name}^{e}")),
                }
            }
            let neg = v < &Rational::zero();
            let mag = if neg { -v.clone() } else { v.clone() };
            let body = if mono.is_empty() {
                format_rational(&mag)
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", format_rational(&mag), mono.join("*"))
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Square matrix over `Q[q1, q2]`; column `j` is the image of basis class `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumMatrix {
    size: usize,
    entries: Vec<Vec<QPoly>>,
}

impl QuantumMatrix {
    pub fn zero(size: usize) -> Self {
        QuantumMatrix {
            size,
            entries: vec![vec![QPoly::default(); size]; size],
        }
    }

    pub fn from_constant(m: &Matrix) -> Self {
        let mut out = Self::zero(m.len());
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out.entries[i][j].add_term((0, 0), v.clone());
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &QPoly {
        &self.entries[row][col]
    }

    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut QPoly {
        &mut self.entries[row][col]
    }

    pub fn column(&self, col: usize) -> Vec<QPoly> {
        self.entries.iter().map(|row| row[col].clone()).collect()
    }

    pub fn set_column(&mut self, col: usize, v: Vec<QPoly>) {
        for (row, x) in self.entries.iter_mut().zip(v) {
            row[col] = x;
        }
    }

    pub fn column_is_zero(&self, col: usize) -> bool {
        self.entries.iter().all(|row| row[col].is_zero())
    }

    pub fn apply(&self, v: &[QPoly]) -> Vec<QPoly> {
        let mut out = vec![QPoly::default(); self.size];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, row) in self.entries.iter().enumerate() {
                if !row[j].is_zero() {
                    out[i].add_product(&row[j], x);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &QuantumMatrix) -> QuantumMatrix {
        let mut out = Self::zero(self.size);
        for j in 0..self.size {
            out.set_column(j, self.apply(&other.column(j)));
        }
        out
    }

    pub fn transpose(&self) -> QuantumMatrix {
        let mut out = Self::zero(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                out.entries[j][i] = self.entries[i][j].clone();
            }
        }
        out
    }

    /// Entries as `(row, col, (a, b), value)`, 0-based, in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, QExp, Rational)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                for (&e, v) in &p.terms {
                    out.push((i, j, e, v.clone()));
                }
            }
        }
        out
    }

    /// Splits into constant coefficient matrices, keyed by `q1^a q2^b`.
    pub fn coefficients(&self) -> BTreeMap<QExp, Matrix> {
        let mut out: BTreeMap<QExp, Matrix> = BTreeMap::new();
        for (i, j, e, v) in self.triplets() {
            out.entry(e)
                .or_insert_with(|| vec![vec![Rational::zero(); self.size]; self.size])[i][j] = v;
        }
        out
    }

    /// `q1 = q2 = 0`.
    pub fn classical(&self) -> Matrix {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.coeff((0, 0))).collect())
            .collect()
    }

    /// One `row col a b value` line per term, 1-based.
    pub fn to_triplet_text(&self) -> String {
        let mut s = String::new();
        for (i, j, (a, b), v) in self.triplets() {
            s.push_str(&format!("{} {} {} {} {}\n", i + 1, j + 1, a, b, format_rational(&v)));
        }
        s
    }

    pub fn from_triplet_text(size: usize, text: &str) -> Result<Self> {
        let mut out = Self::zero(size);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: String| Error::Parse {
                position: lineno + 1,
                message: m,
            };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 5 {
                return Err(bad(format!("expected 5 fields, found {}", f.len())));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("bad integer '{s}'")));
            let (i, j, a, b) = (num(f[0])?, num(f[1])?, num(f[2])?, num(f[3])?);
            if i == 0 || j == 0 || i > size || j > size {
                return Err(bad(format!("position ({i}, {j}) outside a {size}x{size} matrix")));
            }
            let v = parse_rational(f[4]).map_err(|_| bad(format!("bad value '{}'", f[4])))?;
            out.entries[i - 1][j - 1].add_term((a as u32, b as u32), v);
        }
        Ok(out)
    }

    /// Dense grid, one tab-separated row per line.
    pub fn to_dense_text(&self) -> String {
        let mut s = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(QPoly::to_string).collect();
            s.push_str(&cells.join("\t"));
            s.push('\n');
        }
        s
    }

    /// First differing entry, 0-based.
    pub fn first_difference(&self, other: &QuantumMatrix) -> Option<(usize, usize)> {
        (0..self.size)
            .flat_map(|i| (0..self.size).map(move |j| (i, j)))
            .find(|&(i, j)| self.entries[i][j] != other.entries[i][j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn qpoly_display() {
        let mut p = QPoly::monomial((2, 1), int(2));
        p.add_term((1, 0), int(-1));
        p.add_term((0, 0), ratio(1, 2));
        assert_eq!(p.to_string(), "1/2 - q1 + 2*q1^2*q2");
        assert_eq!(QPoly::default().to_string(), "0");
        assert_eq!(QPoly::monomial((0, 1), int(-1)).to_string(), "-q2");
    }

    #[test]
    fn qpoly_cancellation() {
        let p = QPoly::monomial((1, 1), int(3));
        assert!(p.sub(&p).is_zero());
        let sq = p.mul(&p);
        assert_eq!(sq.coeff((2, 2)), int(9));
    }

    #[test]
    fn triplet_round_trip() {
        let mut m = QuantumMatrix::zero(3);
        m.get_mut(0, 2).add_term((1, 0), int(-2));
        m.get_mut(2, 1).add_term((0, 0), ratio(5, 3));
        let text = m.to_triplet_text();
        assert_eq!(text, "1 3 1 0 -2\n3 2 0 0 5/3\n");
        assert_eq!(QuantumMatrix::from_triplet_text(3, &text).unwrap(), m);
        assert!(QuantumMatrix::from_triplet_text(3, "4 1 0 0 1").is_err());
        assert!(QuantumMatrix::from_triplet_text(3, "1 1 0 1").is_err());
    }

    #[test]
    fn products() {
        let mut a = QuantumMatrix::zero(2);
        a.get_mut(1, 0).add_term((0, 0), int(1));
        a.get_mut(0, 1).add_term((1, 0), int(1));
        let sq = a.mul(&a);
        assert_eq!(sq.get(0, 0), &QPoly::monomial((1, 0), int(1)));
        assert_eq!(sq.get(1, 1), &QPoly::monomial((1, 0), int(1)));
        assert!(sq.get(0, 1).is_zero());
        assert_eq!(a.coefficients().len(), 2);
    }
}
