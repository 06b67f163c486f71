//! Sparse multivariate polynomials over arbitrary-precision integers, with
//! the exact linear algebra the minor computations need: fraction-free
//! Bareiss determinants, exact division, and a primitive-PRS gcd.
//!
//! Monomials are exponent vectors ordered by graded lexicographic order, so
//! term maps are canonical and the leading term is the largest key.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::from_bigint(nvars, BigInt::from(c))
    }

    pub fn from_bigint(nvars: usize, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(nvars), c);
        }
        Poly { nvars, terms }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable `z_{idx+1}`.
    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(nvars, idx), BigInt::one());
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one(self.nvars))
                .is_some_and(|c| c.is_one())
    }

    /// Constant `1` or `-1`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one(self.nvars))
                .is_some_and(|c| c.abs().is_one())
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            return self.terms.get(&Monomial::one(self.nvars)).cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn insert_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; errors if `self` is not a polynomial multiple of `d`.
    /// When the quotient has integer coefficients the long division never
    /// leaves the integers, so pure BigInt arithmetic suffices.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        if d.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let (dm, dc) = d.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Err(Error::InexactDivision(format!(
                    "leading monomial not divisible ({} by {})",
                    rem, d
                )));
            }
            let (q, r) = num_integer::div_rem(rc.clone(), dc.clone());
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "leading coefficient not divisible ({} by {})",
                    rc, dc
                )));
            }
            let qm = rm.div(dm);
            let mut t = Poly::zero(self.nvars);
            t.insert_term(qm.clone(), q.clone());
            rem = &rem - &(&t * d);
            quot.insert_term(qm, q);
        }
        Ok(quot)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_exact(self).is_ok()
    }

    /// Substitute `assignments[i]` for variable `i`. The assignments may live
    /// in a ring with a different variable count.
    pub fn substitute(&self, nvars_out: usize, assignments: &[Poly]) -> Poly {
        assert_eq!(assignments.len(), self.nvars);
        let mut acc = Poly::zero(nvars_out);
        for (m, c) in &self.terms {
            let mut term = Poly::from_bigint(nvars_out, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &assignments[i].pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Rename variable `i` to variable `perm[i]` of a ring with `nvars_out` variables.
    pub fn permute_vars(&self, nvars_out: usize, perm: &[usize]) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars_out];
            for (i, &exp) in m.0.iter().enumerate() {
                if exp > 0 {
                    e[perm[i]] += exp;
                }
            }
            terms.insert(Monomial(e), c.clone());
        }
        Poly {
            nvars: nvars_out,
            terms,
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::gcd(g, c.abs());
        }
        g
    }

    pub fn primitive_part(&self) -> Poly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v / &c;
        }
        out
    }

    /// Sign-normalize so the leading coefficient is positive.
    pub fn normalized(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Gcd by primitive pseudo-remainder sequences, recursing on the number
    /// of variables. Adequate for desk-scale inputs.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        if let (Some(a), Some(b)) = (self.as_constant(), other.as_constant()) {
            return Poly::from_bigint(self.nvars, num_integer::gcd(a, b));
        }
        let var = (0..self.nvars)
            .rev()
            .find(|&v| self.degree_in(v) > 0 || other.degree_in(v) > 0)
            .expect("nonconstant input has a variable");
        let fu = self.to_univariate(var);
        let gu = other.to_univariate(var);
        let content = |u: &[Poly]| -> Poly {
            let mut acc = Poly::zero(self.nvars);
            for c in u {
                acc = acc.gcd(c);
            }
            acc
        };
        let (fc, gc) = (content(&fu), content(&gu));
        let cont = fc.gcd(&gc);
        let mut a = divide_univariate(&fu, &fc);
        let mut b = divide_univariate(&gu, &gc);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.iter().all(Poly::is_zero) {
                let prim = primitive_univariate(&a);
                let g = Poly::from_univariate(self.nvars, var, &prim);
                return (&g * &cont).normalized();
            }
            let r = pseudo_rem(&a, &b);
            a = b;
            b = primitive_univariate(&r);
        }
    }

    /// Coefficient vector in `var`, each coefficient a polynomial with the
    /// same ambient variable set (exponent of `var` zeroed).
    fn to_univariate(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut reduced = m.clone();
            reduced.0[var] = 0;
            out[e].insert_term(reduced, c.clone());
        }
        out
    }

    fn from_univariate(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut acc = Poly::zero(nvars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, coef) in &c.terms {
                let mut m2 = m.clone();
                m2.0[var] += e as u32;
                acc.insert_term(m2, coef.clone());
            }
        }
        acc
    }

    /// Render with a custom variable namer.
    pub fn to_string_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut mono = String::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&name(i));
                if e > 1 {
                    mono.push_str(&format!("^{e}"));
                }
            }
            let abs = c.abs();
            let lead_coef = !abs.is_one() || mono.is_empty();
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if lead_coef {
                out.push_str(&abs.to_string());
                if !mono.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&mono);
        }
        out
    }

    /// Canonical sparse term list `[[coeff, [e1, e2, ...]], ...]`, descending.
    pub fn to_term_list(&self) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| serde_json::json!([c.to_string(), m.0]))
            .collect();
        serde_json::Value::Array(items)
    }
}

fn trim_univariate(u: &mut Vec<Poly>) {
    while u.last().is_some_and(Poly::is_zero) {
        u.pop();
    }
}

fn primitive_univariate(u: &[Poly]) -> Vec<Poly> {
    let mut cont = u
        .first()
        .map(|p| Poly::zero(p.nvars()))
        .unwrap_or_else(|| Poly::zero(0));
    for c in u {
        cont = cont.gcd(c);
    }
    divide_univariate(u, &cont)
}

fn divide_univariate(u: &[Poly], d: &Poly) -> Vec<Poly> {
    if d.is_zero() || d.is_one() {
        return u.to_vec();
    }
    u.iter()
        .map(|c| {
            if c.is_zero() {
                c.clone()
            } else {
                c.div_exact(d).expect("content divides")
            }
        })
        .collect()
}

/// Pseudo-remainder of univariate polynomials with `Poly` coefficients.
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim_univariate(&mut a);
    trim_univariate(&mut b);
    let db = b.len() - 1;
    let lb = b[db].clone();
    while a.len() >= b.len() {
        let da = a.len() - 1;
        let la = a[da].clone();
        // a := lb * a - la * x^{da-db} * b
        let shift = da - db;
        for c in a.iter_mut() {
            *c = &*c * &lb;
        }
        for (k, bc) in b.iter().enumerate() {
            let t = &la * bc;
            a[k + shift] = &a[k + shift] - &t;
        }
        trim_univariate(&mut a);
        if a.is_empty() {
            break;
        }
    }
    a
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&|i| format!("z{}", i + 1)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Dense matrix over the polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub n: usize,
    pub entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut entries = vec![Poly::zero(nvars); n * n];
        for i in 0..n {
            entries[i * n + i] = Poly::one(nvars);
        }
        PolyMatrix { n, entries }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Poly) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        PolyMatrix { n, entries }
    }

    pub fn at(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, p: Poly) {
        self.entries[row * self.n + col] = p;
    }

    pub fn nvars(&self) -> usize {
        self.entries[0].nvars()
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n);
        let nvars = self.nvars();
        PolyMatrix::from_fn(self.n, |i, j| {
            let mut acc = Poly::zero(nvars);
            for k in 0..self.n {
                acc = &acc + &(self.at(i, k) * rhs.at(k, j));
            }
            acc
        })
    }

    pub fn eval(&self, point: &[BigRational]) -> Vec<Vec<BigRational>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j).eval(point)).collect())
            .collect()
    }

    /// Determinant by fraction-free Bareiss elimination. Row swaps flip the
    /// sign; the divisions are exact by the Bareiss identity.
    pub fn det_bareiss(&self) -> Poly {
        let n = self.n;
        let nvars = self.nvars();
        if n == 0 {
            return Poly::one(nvars);
        }
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign = 1i64;
        let mut prev = Poly::one(nvars);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Poly::zero(nvars);
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            for row in m.iter_mut().take(n).skip(k + 1) {
                row[k] = Poly::zero(nvars);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign < 0 {
            -&det
        } else {
            det
        }
    }

    /// Determinant by cofactor expansion, as an independent small-n oracle.
    pub fn det_cofactor(&self) -> Poly {
        let n = self.n;
        let nvars = self.nvars();
        if n == 0 {
            return Poly::one(nvars);
        }
        if n == 1 {
            return self.at(0, 0).clone();
        }
        let mut acc = Poly::zero(nvars);
        for j in 0..n {
            if self.at(0, j).is_zero() {
                continue;
            }
            let sub = PolyMatrix::from_fn(n - 1, |r, c| {
                self.at(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = &self.at(0, j).clone() * &sub.det_cofactor();
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Minor on the given rows and columns (0-based, strictly increasing).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Poly {
        assert_eq!(rows.len(), cols.len());
        let sub = PolyMatrix::from_fn(rows.len(), |r, c| self.at(rows[r], cols[c]).clone());
        if rows.len() <= 3 {
            sub.det_cofactor()
        } else {
            sub.det_bareiss()
        }
    }

    /// Generic rank: rank over the fraction field, computed fraction-free.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Poly>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.n {
            let Some(p) = (row..self.n).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let pivot = m[row][col].clone();
            for r in row + 1..self.n {
                let factor = m[r][col].clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..self.n {
                    m[r][c] = &(&m[r][c] * &pivot) - &(&m[row][c] * &factor);
                }
            }
            rank += 1;
            row += 1;
            if row == self.n {
                break;
            }
        }
        rank
    }
}
