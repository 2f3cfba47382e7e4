//! The quantum differential system `z q_i d/dq_i S = M_i S`, its J-function, and
//! differential operators in `D1 = z q1 d/dq1`, `D2 = z q2 d/dq2`.
//!
//! With the prefactor `q1^(p/z) q2^(xi/z)` absorbed, the fundamental solution
//! `T = sum T_ab q1^a q2^b` satisfies
//! `a z T_ab + P T_ab - T_ab P = sum_{(c,d) != 0} T_{a-c,b-d} M_p^(c,d)`
//! (and the same with `b`, `xi`), where `P` is classical cup product by `p`.
//! The J-function is the identity column of `T`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::{format_monomial, named_lines, parse_poly};
use crate::linalg::Matrix;
use crate::novikov::QExp;
use crate::rational::{factorial, format_rational, Rational};
use crate::reconstruct::QuantumProducts;
use crate::ring::{CohRing, Monomial};

/// Finite Laurent polynomial in `z`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentZ {
    pub terms: BTreeMap<i32, Rational>,
}

impl LaurentZ {
    pub fn monomial(e: i32, c: Rational) -> Self {
        let mut l = LaurentZ::default();
        l.add_term(e, c);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// `self += s z^shift x`.
    pub fn add_scaled(&mut self, x: &LaurentZ, s: &Rational, shift: i32) {
        for (&e, v) in &x.terms {
            self.add_term(e + shift, v * s);
        }
    }
}

type SparseMatrix = Vec<(usize, usize, Rational)>;
type LaurentVec = Vec<LaurentZ>;
type LaurentMatrix = Vec<Vec<LaurentZ>>;

fn sparse(m: &Matrix) -> SparseMatrix {
    let mut out = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                out.push((i, j, v.clone()));
            }
        }
    }
    out
}

fn zero_vec(n: usize) -> LaurentVec {
    vec![LaurentZ::default(); n]
}

fn zero_mat(n: usize) -> LaurentMatrix {
    vec![zero_vec(n); n]
}

fn vec_is_zero(v: &[LaurentZ]) -> bool {
    v.iter().all(LaurentZ::is_zero)
}

fn mat_is_zero(m: &LaurentMatrix) -> bool {
    m.iter().all(|r| vec_is_zero(r))
}

/// `out += M v` (column vector).
fn add_left_vec(out: &mut LaurentVec, m: &SparseMatrix, v: &[LaurentZ], s: &Rational) {
    for (i, j, c) in m {
        if !v[*j].is_zero() {
            out[*i].add_scaled(&v[*j], &(c * s), 0);
        }
    }
}

/// `out += u M` (row vector).
fn add_right_vec(out: &mut LaurentVec, u: &[LaurentZ], m: &SparseMatrix, s: &Rational) {
    for (i, j, c) in m {
        if !u[*i].is_zero() {
            out[*j].add_scaled(&u[*i], &(c * s), 0);
        }
    }
}

/// `out += s M X`.
fn add_left(out: &mut LaurentMatrix, m: &SparseMatrix, x: &LaurentMatrix, s: &Rational) {
    for (i, k, c) in m {
        let f = c * s;
        for (j, entry) in x[*k].iter().enumerate() {
            if !entry.is_zero() {
                out[*i][j].add_scaled(entry, &f, 0);
            }
        }
    }
}

/// `out += s X M`.
fn add_right(out: &mut LaurentMatrix, x: &LaurentMatrix, m: &SparseMatrix, s: &Rational) {
    for (k, j, c) in m {
        let f = c * s;
        for (row, xr) in out.iter_mut().zip(x) {
            if !xr[*k].is_zero() {
                row[*j].add_scaled(&xr[*k], &f, 0);
            }
        }
    }
}

/// Constant-coefficient pieces of `M_p`, `M_xi` and the grading data.
#[derive(Debug, Clone)]
pub struct DifferentialSystem {
    size: usize,
    degrees: Vec<u32>,
    weights: (u32, u32),
    cup: [SparseMatrix; 2],
    quantum: [Vec<(QExp, SparseMatrix)>; 2],
}

impl DifferentialSystem {
    pub fn new(ring: &CohRing, products: &QuantumProducts) -> Self {
        let split = |m: &crate::novikov::QuantumMatrix| {
            let mut parts: Vec<(QExp, SparseMatrix)> = m.coefficients().iter().map(|(e, c)| (*e, sparse(c))).collect();
            parts.retain(|(e, _)| *e != (0, 0));
            parts
        };
        DifferentialSystem {
            size: ring.size(),
            degrees: (0..ring.size()).map(|i| ring.degree(i)).collect(),
            weights: (ring.spec().d1(), ring.spec().d2()),
            cup: [
                sparse(&ring.mul_matrix(Monomial { p: 1, xi: 0 })),
                sparse(&ring.mul_matrix(Monomial { p: 0, xi: 1 })),
            ],
            quantum: [split(&products.mp), split(&products.mxi)],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn weights(&self) -> (u32, u32) {
        self.weights
    }

    fn max_shift(&self) -> u32 {
        self.quantum
            .iter()
            .flatten()
            .map(|((c, d), _)| c + d)
            .max()
            .unwrap_or(1)
    }

    /// Solves `s z X + P X - X P = R` as `sum_k (-1)^k A^k(R) / (s z)^(k+1)`, `A(X) = P X - X P`.
    fn solve_matrix(&self, rhs: LaurentMatrix, dir: usize, s: u32) -> LaurentMatrix {
        let n = self.size;
        let cup = &self.cup[dir];
        let s = Rational::from_integer(s.into());
        let mut out = zero_mat(n);
        let mut term = rhs;
        let mut scale = s.recip();
        let mut k = 0;
        while !mat_is_zero(&term) {
            assert!(k <= 4 * n, "cup product failed to be nilpotent");
            for (orow, trow) in out.iter_mut().zip(&term) {
                for (o, t) in orow.iter_mut().zip(trow) {
                    o.add_scaled(t, &scale, -(k as i32 + 1));
                }
            }
            let mut next = zero_mat(n);
            add_left(&mut next, cup, &term, &Rational::one());
            add_right(&mut next, &term, cup, &-Rational::one());
            term = next;
            scale = -scale / &s;
            k += 1;
        }
        out
    }

    /// Solves `u (s z - P) = rhs` for a row vector: `u = sum_k rhs P^k / (s z)^(k+1)`.
    fn solve_row(&self, rhs: LaurentVec, dir: usize, s: u32) -> LaurentVec {
        let n = self.size;
        let s = Rational::from_integer(s.into());
        let mut out = zero_vec(n);
        let mut term = rhs;
        let mut scale = s.recip();
        let mut k = 0;
        while !vec_is_zero(&term) {
            assert!(k <= 4 * n, "cup product failed to be nilpotent");
            for (o, t) in out.iter_mut().zip(&term) {
                o.add_scaled(t, &scale, -(k as i32 + 1));
            }
            let mut next = zero_vec(n);
            add_right_vec(&mut next, &term, &self.cup[dir], &Rational::one());
            term = next;
            scale /= &s;
            k += 1;
        }
        out
    }

    fn step_matrix(&self, t: &HashMap<QExp, LaurentMatrix>, (a, b): QExp, dir: usize) -> LaurentMatrix {
        let mut rhs = zero_mat(self.size);
        for ((c, d), m) in &self.quantum[dir] {
            if *c <= a && *d <= b {
                if let Some(src) = t.get(&(a - c, b - d)) {
                    add_right(&mut rhs, src, m, &Rational::one());
                }
            }
        }
        self.solve_matrix(rhs, dir, if dir == 0 { a } else { b })
    }

    fn step_row(&self, u: &HashMap<QExp, LaurentVec>, (a, b): QExp, dir: usize) -> LaurentVec {
        let mut rhs = zero_vec(self.size);
        for ((c, d), m) in &self.quantum[dir] {
            if *c <= a && *d <= b {
                if let Some(src) = u.get(&(a - c, b - d)) {
                    add_right_vec(&mut rhs, src, m, &Rational::one());
                }
            }
        }
        self.solve_row(rhs, dir, if dir == 0 { a } else { b })
    }
}

fn indices(order: u32) -> impl Iterator<Item = QExp> {
    (0..=order).flat_map(|m| (0..=m).rev().map(move |a| (a, m - a)))
}

/// J-function coefficients `J_ab` (prefactor absorbed) for all `a + b <= order`.
#[derive(Debug, Clone)]
pub struct JSeries {
    pub order: u32,
    pub weights: (u32, u32),
    pub degrees: Vec<u32>,
    pub coeffs: BTreeMap<QExp, LaurentVec>,
    /// Mixed indices at which both recursions were run and agreed.
    pub flat_checked: usize,
}

/// Solves the system through total `q`-degree `order`. Every mixed index is
/// solved along both directions; disagreement is a flatness failure.
pub fn j_series(system: &DifferentialSystem, order: u32) -> Result<JSeries> {
    let n = system.size;
    let keep = system.max_shift();
    let mut t: HashMap<QExp, LaurentMatrix> = HashMap::new();
    let mut id = zero_mat(n);
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = LaurentZ::monomial(0, Rational::one());
    }
    t.insert((0, 0), id);
    let mut coeffs = BTreeMap::new();
    let mut flat_checked = 0;
    for (a, b) in indices(order) {
        if (a, b) != (0, 0) {
            let dir = if a >= 1 { 0 } else { 1 };
            let x = system.step_matrix(&t, (a, b), dir);
            if a >= 1 && b >= 1 {
                if system.step_matrix(&t, (a, b), 1) != x {
                    return Err(Error::Flatness { a, b });
                }
                flat_checked += 1;
            }
            t.insert((a, b), x);
            if a == 0 {
                t.retain(|&(c, d), _| c + d + keep >= b);
            }
        }
        coeffs.insert((a, b), t[&(a, b)].iter().map(|row| row[0].clone()).collect());
    }
    Ok(JSeries {
        order,
        weights: system.weights,
        degrees: system.degrees.clone(),
        coeffs,
        flat_checked,
    })
}

impl JSeries {
    pub fn get(&self, a: u32, b: u32) -> Option<&LaurentVec> {
        self.coeffs.get(&(a, b))
    }

    /// z-exponent forced on component `j` of `J_ab`.
    pub fn forced_exponent(&self, (a, b): QExp, j: usize) -> i32 {
        -((self.degrees[j] + a * self.weights.0 + b * self.weights.1) as i32)
    }

    /// Every component sits at its forced exponent.
    pub fn check_homogeneity(&self) -> Result<()> {
        for (&(a, b), v) in &self.coeffs {
            for (j, l) in v.iter().enumerate() {
                let e = self.forced_exponent((a, b), j);
                if l.terms.keys().any(|&k| k != e) {
                    return Err(Error::Homogeneity { a, b, component: j });
                }
            }
        }
        Ok(())
    }
}

/// `c_ab`: the coefficient of `z^-(a d1 + b d2)` in the identity component of `J_ab`.
pub fn identity_coefficients(j: &JSeries) -> Result<BTreeMap<QExp, Rational>> {
    let mut out = BTreeMap::new();
    for (&(a, b), v) in &j.coeffs {
        let e = j.forced_exponent((a, b), 0);
        if v[0].terms.keys().any(|&k| k != e) {
            return Err(Error::Homogeneity { a, b, component: 0 });
        }
        out.insert((a, b), v[0].coeff(e));
    }
    Ok(out)
}

/// The identity row of the fundamental solution alone:
/// `u_ab (a z - P) = sum u_{a-c,b-d} M^(c,d)`, with flatness checked at mixed indices.
/// Much cheaper than [`j_series`]; used for long coefficient tables.
pub fn identity_row_coefficients(system: &DifferentialSystem, order: u32) -> Result<BTreeMap<QExp, Rational>> {
    let n = system.size;
    let keep = system.max_shift();
    let mut u: HashMap<QExp, LaurentVec> = HashMap::new();
    let mut start = zero_vec(n);
    start[0] = LaurentZ::monomial(0, Rational::one());
    u.insert((0, 0), start);
    let mut out = BTreeMap::new();
    let (d1, d2) = system.weights;
    for (a, b) in indices(order) {
        if (a, b) != (0, 0) {
            let dir = if a >= 1 { 0 } else { 1 };
            let x = system.step_row(&u, (a, b), dir);
            if a >= 1 && b >= 1 && system.step_row(&u, (a, b), 1) != x {
                return Err(Error::Flatness { a, b });
            }
            u.insert((a, b), x);
            if a == 0 {
                u.retain(|&(c, d), _| c + d + keep >= b);
            }
        }
        let e = -((a * d1 + b * d2) as i32);
        let l = &u[&(a, b)][0];
        if l.terms.keys().any(|&k| k != e) {
            return Err(Error::Homogeneity { a, b, component: 0 });
        }
        out.insert((a, b), l.coeff(e));
    }
    Ok(out)
}

/// `a_{i+1,j+1} = i!^d1 j!^d2 c_ij` for `0 <= i, j < size`; entries must be integers.
pub fn apery_table(c: &BTreeMap<QExp, Rational>, size: u32, weights: (u32, u32)) -> Result<Vec<Vec<BigInt>>> {
    let mut out = Vec::new();
    for i in 0..size {
        let mut row = Vec::new();
        for j in 0..size {
            let v = c.get(&(i, j)).ok_or(Error::Truncation {
                needed: (i + j) as usize,
                achievable: c.keys().map(|(a, b)| a + b).max().unwrap_or(0) as usize,
            })?;
            let f = Rational::from_integer(factorial(i).pow(weights.0) * factorial(j).pow(weights.1));
            let x = v * f;
            if !x.denom().is_one() {
                return Err(Error::NonInteger {
                    row: i as usize,
                    col: j as usize,
                });
            }
            row.push(x.to_integer());
        }
        out.push(row);
    }
    Ok(out)
}

/// CSV of exact rationals, rows indexed by the `q1` power.
pub fn coefficient_csv(c: &BTreeMap<QExp, Rational>, size: u32) -> String {
    let mut s = String::new();
    for i in 0..size {
        let row: Vec<String> = (0..size)
            .map(|j| c.get(&(i, j)).map_or_else(String::new, format_rational))
            .collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

/// One term `coef * q1^a q2^b z^k D1^e1 D2^e2` (normal ordered: the D's act first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTerm {
    pub d1: u32,
    pub d2: u32,
    pub q: QExp,
    pub z: u32,
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    pub terms: Vec<OpTerm>,
}

const OP_VARS: [&str; 5] = ["D1", "D2", "q1", "q2", "z"];

pub fn parse_operator(text: &str) -> Result<DiffOp> {
    let poly = parse_poly(text, &OP_VARS)?;
    let terms = poly
        .terms
        .into_iter()
        .map(|(e, coeff)| OpTerm {
            d1: e[0],
            d2: e[1],
            q: (e[2], e[3]),
            z: e[4],
            coeff,
        })
        .collect();
    Ok(DiffOp { terms })
}

/// Named operators, one `name: expression` per line; `#` starts a comment.
pub fn parse_operator_file(text: &str) -> Result<Vec<(String, DiffOp)>> {
    named_lines(text)?
        .into_iter()
        .map(|(lineno, name, body)| {
            let op = parse_operator(&body).map_err(|e| match e {
                Error::Parse { position, message } => Error::Parse {
                    position,
                    message: format!("line {lineno}: {message}"),
                },
                other => other,
            })?;
            Ok((name, op))
        })
        .collect()
}

impl DiffOp {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weighted degree of each term (`D`, `z` weight 1; `q1`, `q2` weights `d1`, `d2`).
    pub fn term_degrees(&self, weights: (u32, u32)) -> Vec<u32> {
        self.terms
            .iter()
            .map(|t| t.d1 + t.d2 + t.z + t.q.0 * weights.0 + t.q.1 * weights.1)
            .collect()
    }

    /// The common degree, or the first term breaking homogeneity.
    pub fn homogeneous_degree(&self, weights: (u32, u32)) -> std::result::Result<Option<u32>, usize> {
        let degs = self.term_degrees(weights);
        match degs.first() {
            None => Ok(None),
            Some(&d) => match degs.iter().position(|&x| x != d) {
                Some(i) => Err(i),
                None => Ok(Some(d)),
            },
        }
    }

    pub fn term_text(&self, i: usize) -> String {
        let t = &self.terms[i];
        let mono = format_monomial(&OP_VARS, &[t.d1, t.d2, t.q.0, t.q.1, t.z]);
        format!("{}*{}", format_rational(&t.coeff), mono)
    }
}

/// Residual of an operator on `J`, at every index where it is certified.
#[derive(Debug, Clone)]
pub struct Residual {
    pub coeffs: BTreeMap<QExp, LaurentVec>,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|v| vec_is_zero(v))
    }

    pub fn nonzero_indices(&self) -> Vec<QExp> {
        self.coeffs
            .iter()
            .filter(|(_, v)| !vec_is_zero(v))
            .map(|(k, _)| *k)
            .collect()
    }

    pub fn certified(&self) -> usize {
        self.coeffs.len()
    }
}

/// `D1` acts on `J_ab` as `p cup + a z`, `D2` as `xi cup + b z`; `q`'s shift indices.
/// Certified indices are those whose shifted sources all lie inside the truncation.
pub fn apply_operator(system: &DifferentialSystem, op: &DiffOp, j: &JSeries) -> Residual {
    let n = system.size;
    let mut cache: HashMap<(QExp, u32, u32), LaurentVec> = HashMap::new();
    let mut coeffs = BTreeMap::new();
    for &(a, b) in j.coeffs.keys() {
        let certified = op
            .terms
            .iter()
            .all(|t| t.q.0 > a || t.q.1 > b || j.coeffs.contains_key(&(a - t.q.0, b - t.q.1)));
        if !certified {
            continue;
        }
        let mut res = zero_vec(n);
        for t in &op.terms {
            if t.q.0 > a || t.q.1 > b {
                continue;
            }
            let src = (a - t.q.0, b - t.q.1);
            let v = cache
                .entry((src, t.d1, t.d2))
                .or_insert_with(|| {
                    let mut v = j.coeffs[&src].clone();
                    for _ in 0..t.d2 {
                        v = apply_d(system, &v, 1, src.1);
                    }
                    for _ in 0..t.d1 {
                        v = apply_d(system, &v, 0, src.0);
                    }
                    v
                })
                .clone();
            for (r, x) in res.iter_mut().zip(&v) {
                r.add_scaled(x, &t.coeff, t.z as i32);
            }
        }
        coeffs.insert((a, b), res);
    }
    Residual { coeffs }
}

fn apply_d(system: &DifferentialSystem, v: &[LaurentZ], dir: usize, s: u32) -> LaurentVec {
    let mut out = zero_vec(system.size);
    add_left_vec(&mut out, &system.cup[dir], v, &Rational::one());
    let s = Rational::from_integer(s.into());
    for (o, x) in out.iter_mut().zip(v) {
        o.add_scaled(x, &s, 1);
    }
    out
}
