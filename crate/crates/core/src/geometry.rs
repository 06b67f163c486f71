//! Exact SL_n polynomial-matrix layer: braid matrices, parametrizations of
//! (double) braid varieties, braid-variety equations, relative position,
//! the cosets `Z_c = Y_c^{-1} X_c`, and grid/chamber minors.
//!
//! All matrices live over `Z[z_1..z_l]`; minors are computed fraction-free
//! and signs always come from the chosen lifts, never from hardcoded tables.

use crate::braid::{BraidWord, DoubleBraidWord, WSequence};
use crate::cartan::CartanData;
use crate::poly::{Poly, PolyMatrix};
use crate::weyl::Perm;
use crate::{braid, Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// `B_i(p) = x_i(p) s_i_dot`: the 2x2 block `[[p, -1], [1, 0]]` at `(i, i+1)`.
pub fn b_matrix_of(n: usize, nvars: usize, i: usize, p: &Poly) -> PolyMatrix {
    assert!((1..n).contains(&i), "index {i} out of range for SL_{n}");
    let mut m = PolyMatrix::identity(n, nvars);
    m.set(i - 1, i - 1, p.clone());
    m.set(i - 1, i, Poly::constant(nvars, -1));
    m.set(i, i - 1, Poly::one(nvars));
    m.set(i, i, Poly::zero(nvars));
    m
}

/// `B_i(z_{var+1})`.
pub fn b_matrix(n: usize, nvars: usize, i: usize, var: usize) -> PolyMatrix {
    b_matrix_of(n, nvars, i, &Poly::var(nvars, var))
}

/// `B_i(z)^{-1}`: the block `[[0, 1], [-1, z]]`.
pub fn b_matrix_inv(n: usize, nvars: usize, i: usize, var: usize) -> PolyMatrix {
    let mut m = PolyMatrix::identity(n, nvars);
    m.set(i - 1, i - 1, Poly::zero(nvars));
    m.set(i - 1, i, Poly::one(nvars));
    m.set(i, i - 1, Poly::constant(nvars, -1));
    m.set(i, i, Poly::var(nvars, var));
    m
}

/// Exponentiated Chevalley generator `x_i(p) = 1 + p E_{i,i+1}`.
pub fn chevalley_x(n: usize, nvars: usize, i: usize, p: &Poly) -> PolyMatrix {
    let mut m = PolyMatrix::identity(n, nvars);
    m.set(i - 1, i, p.clone());
    m
}

/// Lift `s_i_dot = B_i(0)`.
pub fn s_dot(n: usize, nvars: usize, i: usize) -> PolyMatrix {
    b_matrix_of(n, nvars, i, &Poly::zero(nvars))
}

/// Integer lift of a permutation: product of `s_i_dot` over the
/// lexicographically smallest reduced word.
pub fn lift_int(w: &Perm) -> Vec<Vec<i64>> {
    let n = w.n();
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
        .collect();
    for i in w.lex_min_reduced_word() {
        // right-multiply by s_i_dot: col i-1 <- col i, col i <- -old col i-1
        for row in m.iter_mut() {
            let a = row[i - 1];
            let b = row[i];
            row[i - 1] = b;
            row[i] = -a;
        }
    }
    m
}

pub fn lift_poly(nvars: usize, w: &Perm) -> PolyMatrix {
    let ints = lift_int(w);
    PolyMatrix::from_fn(w.n(), |r, c| Poly::constant(nvars, ints[r][c]))
}

fn int_minor(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> i64 {
    let k = rows.len();
    if k == 0 {
        return 1;
    }
    let sub: Vec<Vec<i64>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| m[r][c]).collect())
        .collect();
    fn det(rows: &[Vec<i64>]) -> i64 {
        if rows.len() == 1 {
            return rows[0][0];
        }
        let mut acc = 0;
        for (j, &top) in rows[0].iter().enumerate() {
            if top == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            acc += if j % 2 == 0 { 1 } else { -1 } * top * det(&minor);
        }
        acc
    }
    det(&sub)
}

/// Equations and open conditions cutting `X(beta)` out of affine space:
/// `w0_dot B_beta(z) in B_+` means the strictly-below-diagonal entries vanish
/// and the diagonal entries do not.
pub fn braid_variety_ideal(
    cartan: &CartanData,
    beta: &BraidWord,
) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let n = cartan.rank() + 1;
    let l = beta.0.len();
    if crate::weyl::demazure_product(n, &beta.0) != Perm::longest(n) {
        return Err(Error::DemazureNotLongest);
    }
    let mut m = lift_poly(l, &Perm::longest(n));
    for (k, &i) in beta.0.iter().enumerate() {
        m = m.mul(&b_matrix(n, l, i, k));
    }
    let mut equations = Vec::new();
    let mut opens = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if r > c {
                equations.push(m.at(r, c).clone());
            } else if r == c {
                opens.push(m.at(r, c).clone());
            }
        }
    }
    Ok((equations, opens))
}

/// Explicit coordinates for a double braid word: the Y-chain matrices `g'_c`,
/// the X-chain matrices `g_c`, the flags `F_d` of the associated braid
/// variety, and the variable bijection `phi` with `z'_d = z_{phi(d)}`.
pub struct Parametrization {
    pub n: usize,
    pub nvars: usize,
    pub gprime: Vec<PolyMatrix>,
    pub g: Vec<PolyMatrix>,
    pub f: Vec<PolyMatrix>,
    /// `phi[d-1]` is the 1-based index `phi(d)`.
    pub phi: Vec<usize>,
    pub single: BraidWord,
}

pub fn parametrize(cartan: &CartanData, b: &DoubleBraidWord) -> Result<Parametrization> {
    b.validate(cartan)?;
    let n = cartan.rank() + 1;
    let l = b.len();
    let mut gprime = vec![PolyMatrix::identity(n, l)];
    for c in 1..=l {
        let i = b.0[c - 1];
        let next = if i > 0 {
            gprime[c - 1].clone()
        } else {
            let starred = cartan.star(i.unsigned_abs() as usize)?;
            gprime[c - 1].mul(&b_matrix(n, l, starred, c - 1))
        };
        gprime.push(next);
    }
    let mut g = vec![PolyMatrix::identity(n, l); l + 1];
    g[l] = gprime[l].clone();
    for c in (1..=l).rev() {
        let i = b.0[c - 1];
        g[c - 1] = if i > 0 {
            g[c].mul(&b_matrix(n, l, i as usize, c - 1))
        } else {
            g[c].clone()
        };
    }
    let negatives = b.negative_positions();
    let positives = b.positive_positions();
    let mut phi = negatives.clone();
    phi.extend(positives.iter().rev());
    let single = braid::to_single(cartan, b)?;
    let mut f = vec![PolyMatrix::identity(n, l)];
    for d in 1..=l {
        f.push(f[d - 1].mul(&b_matrix(n, l, single.0[d - 1], phi[d - 1] - 1)));
    }
    Ok(Parametrization {
        n,
        nvars: l,
        gprime,
        g,
        f,
        phi,
        single,
    })
}

/// Relative position of `(U_+, m U_+)` read off generic southwest ranks, with
/// the Cartan part extracted from leading minors against the lift sign.
pub fn bruhat_position_poly(m: &PolyMatrix) -> Result<(Perm, Vec<(Poly, Poly)>)> {
    let n = m.n;
    let nvars = m.nvars();
    let mut rk = vec![vec![0usize; n + 1]; n + 2];
    for r in (1..=n).rev() {
        for c in 1..=n {
            let sub = PolyMatrix::from_fn(n, |rr, cc| {
                if rr < n - r + 1 && cc < c {
                    m.at(rr + r - 1, cc).clone()
                } else {
                    Poly::zero(nvars)
                }
            });
            rk[r][c] = sub.rank();
        }
    }
    let mut window = vec![0usize; n];
    for c in 1..=n {
        let r = (1..=n)
            .find(|&r| rk[r][c] + rk[r + 1][c - 1] == rk[r + 1][c] + rk[r][c - 1] + 1)
            .ok_or(Error::SingularMatrix)?;
        window[c - 1] = r;
    }
    let w = Perm::from_window(window).map_err(|_| Error::SingularMatrix)?;
    let lift = lift_int(&w);
    let mut h = Vec::with_capacity(n);
    let mut prev = Poly::one(nvars);
    for i in 1..=n {
        let rows: Vec<usize> = w.image_of_interval(i).iter().map(|&r| r - 1).collect();
        let cols: Vec<usize> = (0..i).collect();
        let lrows: Vec<usize> = rows.clone();
        let eps = int_minor(&lift, &lrows, &cols);
        if eps.abs() != 1 {
            return Err(Error::Convention("lift minor is not a unit".into()));
        }
        let raw = m.minor(&rows, &cols);
        let delta = if eps < 0 { -&raw } else { raw };
        h.push((delta.clone(), prev.clone()));
        prev = delta;
    }
    Ok((w, h))
}

/// Rational-point variant of [`bruhat_position_poly`].
pub fn bruhat_position_rat(m: &[Vec<BigRational>]) -> Result<(Perm, Vec<BigRational>)> {
    let n = m.len();
    let rank = |rows_from: usize, cols_to: usize| -> usize {
        let mut sub: Vec<Vec<BigRational>> = (rows_from..n)
            .map(|r| m[r][..cols_to].to_vec())
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols_to {
            let Some(p) = (row..sub.len()).find(|&r| !sub[r][col].is_zero()) else {
                continue;
            };
            sub.swap(row, p);
            for r in row + 1..sub.len() {
                let ratio = &sub[r][col] / &sub[row][col];
                for c in col..cols_to {
                    let t = &sub[row][c] * &ratio;
                    sub[r][c] -= t;
                }
            }
            rank += 1;
            row += 1;
            if row == sub.len() {
                break;
            }
        }
        rank
    };
    let mut window = vec![0usize; n];
    for c in 1..=n {
        let r = (1..=n)
            .find(|&r| {
                rank(r - 1, c) + rank(r, c - 1) == rank(r, c) + rank(r - 1, c - 1) + 1
            })
            .ok_or(Error::SingularMatrix)?;
        window[c - 1] = r;
    }
    let w = Perm::from_window(window).map_err(|_| Error::SingularMatrix)?;
    let lift = lift_int(&w);
    let minor = |rows: &[usize], cols: &[usize]| -> BigRational {
        fn det(rows: &[Vec<BigRational>]) -> BigRational {
            if rows.len() == 1 {
                return rows[0][0].clone();
            }
            let mut acc = BigRational::zero();
            for (j, top) in rows[0].iter().enumerate() {
                if top.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigRational>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = top * det(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        let sub: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        det(&sub)
    };
    let mut h = Vec::with_capacity(n);
    let mut prev = BigRational::one();
    for i in 1..=n {
        let rows: Vec<usize> = w.image_of_interval(i).iter().map(|&r| r - 1).collect();
        let cols: Vec<usize> = (0..i).collect();
        let eps = int_minor(&lift, &rows, &cols);
        let delta = minor(&rows, &cols) * BigRational::from_integer(BigInt::from(eps));
        if delta.is_zero() {
            return Err(Error::SingularMatrix);
        }
        h.push(&delta / &prev);
        prev = delta;
    }
    Ok((w, h))
}

/// Cached geometric data of one double braid word: cosets, Demazure
/// sequence, and minors.
pub struct BraidGeometry {
    pub cartan: CartanData,
    pub word: DoubleBraidWord,
    pub n: usize,
    pub nvars: usize,
    pub ws: WSequence,
    pub params: Parametrization,
    z: Vec<PolyMatrix>,
    lift_cache: HashMap<Vec<usize>, Vec<Vec<i64>>>,
}

impl BraidGeometry {
    pub fn new(cartan: &CartanData, b: &DoubleBraidWord) -> Result<Self> {
        let params = parametrize(cartan, b)?;
        let ws = braid::w_sequence(cartan, b)?;
        let n = params.n;
        let l = b.len();
        // Z_c = g'_c^{-1} g_c, with the inverse accumulated from B^{-1} factors
        let mut gprime_inv = vec![PolyMatrix::identity(n, l)];
        for c in 1..=l {
            let i = b.0[c - 1];
            let next = if i > 0 {
                gprime_inv[c - 1].clone()
            } else {
                let starred = cartan.star(i.unsigned_abs() as usize)?;
                b_matrix_inv(n, l, starred, c - 1).mul(&gprime_inv[c - 1])
            };
            gprime_inv.push(next);
        }
        let z = (0..=l)
            .map(|c| gprime_inv[c].mul(&params.g[c]))
            .collect();
        Ok(BraidGeometry {
            cartan: cartan.clone(),
            word: b.clone(),
            n,
            nvars: l,
            ws,
            params,
            z,
            lift_cache: HashMap::new(),
        })
    }

    pub fn z_coset(&self, c: usize) -> (&PolyMatrix, &Perm) {
        (&self.z[c], &self.ws.w[c])
    }

    fn lift(&mut self, w: &Perm) -> &Vec<Vec<i64>> {
        self.lift_cache
            .entry(w.window().to_vec())
            .or_insert_with(|| lift_int(w))
    }

    /// Grid minor `Delta_{c,i}` for signed `i`; always a polynomial, with the
    /// sign normalized by the corresponding minor of the lift.
    pub fn grid_minor(&mut self, c: usize, i: i64) -> Result<Poly> {
        let a = i.unsigned_abs() as usize;
        if a == 0 || a >= self.n {
            return Err(Error::IndexOutOfRange(a, self.n - 1));
        }
        let wc = self.ws.w[c].clone();
        let (rows, cols): (Vec<usize>, Vec<usize>) = if i > 0 {
            (
                wc.image_of_interval(a).iter().map(|&r| r - 1).collect(),
                (0..a).collect(),
            )
        } else {
            let u_inv = Perm::longest(self.n).mul(&wc).inverse();
            let mut cols: Vec<usize> = (1..=a).map(|k| u_inv.apply(k) - 1).collect();
            cols.sort_unstable();
            ((self.n - a..self.n).collect(), cols)
        };
        let eps = int_minor(self.lift(&wc), &rows, &cols);
        if eps.abs() != 1 {
            return Err(Error::Convention(format!(
                "lift minor at (c={c}, i={i}) is {eps}, expected a unit"
            )));
        }
        let raw = self.z[c].minor(&rows, &cols);
        Ok(if eps < 0 { -&raw } else { raw })
    }

    /// Chamber minor `Delta_c = Delta_{c-1, i_c}`.
    pub fn chamber_minor(&mut self, c: usize) -> Result<Poly> {
        if c == 0 || c > self.word.len() {
            return Err(Error::IndexOutOfRange(c, self.word.len()));
        }
        self.grid_minor(c - 1, self.word.0[c - 1])
    }

    /// Cartan part of `Z_c` as diagonal `(num, den)` ratios of grid minors.
    pub fn h_plus(&mut self, c: usize) -> Result<Vec<(Poly, Poly)>> {
        let mut out = Vec::with_capacity(self.n);
        let mut prev = Poly::one(self.nvars);
        for i in 1..=self.n - 1 {
            let delta = self.grid_minor(c, i as i64)?;
            out.push((delta.clone(), prev.clone()));
            prev = delta;
        }
        out.push((Poly::one(self.nvars), prev));
        Ok(out)
    }

    /// Independent route to the negative grid minor: the product of
    /// `u_c`-permuted diagonal entries of `h^+_c`, as one exact fraction.
    pub fn negative_minor_ratio(&mut self, c: usize, a: usize) -> Result<(Poly, Poly)> {
        let h = self.h_plus(c)?;
        let u_inv = Perm::longest(self.n).mul(&self.ws.w[c]).inverse();
        let mut num = Poly::one(self.nvars);
        let mut den = Poly::one(self.nvars);
        for k in 1..=a {
            let (hn, hd) = &h[u_inv.apply(k) - 1];
            num = &num * hn;
            den = &den * hd;
        }
        Ok((num, den))
    }
}

/// Evaluate the defining relative positions of the parametrized tuples at a
/// rational point; errors if any condition fails.
pub fn check_positions_at(
    cartan: &CartanData,
    b: &DoubleBraidWord,
    geo: &BraidGeometry,
    point: &[BigRational],
) -> Result<()> {
    let n = geo.n;
    for c in 1..=b.len() {
        let i = b.0[c - 1];
        let (expected, m) = if i > 0 {
            let m = geo.params.g[c]
                .eval(point)
                .iter()
                .map(|r| r.to_vec())
                .collect::<Vec<_>>();
            // X_{c-1} = X_c B_i(z_c): check the step matrix directly
            (i as usize, mat_mul_rat(&mat_inv_rat(&m)?, &geo.params.g[c - 1].eval(point)))
        } else {
            let starred = cartan.star(i.unsigned_abs() as usize)?;
            let m = geo.params.gprime[c - 1].eval(point);
            (
                starred,
                mat_mul_rat(&mat_inv_rat(&m)?, &geo.params.gprime[c].eval(point)),
            )
        };
        let (w, h) = bruhat_position_rat(&m)?;
        if w != Perm::transposition(n, expected) {
            return Err(Error::Convention(format!(
                "step {c} is in position {:?}, expected s_{expected}",
                w.window()
            )));
        }
        if h.iter().any(|v| v != &BigRational::one()) {
            return Err(Error::Convention(format!(
                "step {c} has a nontrivial Cartan part"
            )));
        }
    }
    let z0 = geo.z[0].eval(point);
    let (w, _) = bruhat_position_rat(&z0)?;
    if w != Perm::longest(n) {
        return Err(Error::Convention("Y_0, X_0 not in position w0".into()));
    }
    Ok(())
}

pub fn mat_mul_rat(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_inv_rat(m: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Err(Error::SingularMatrix);
        };
        a.swap(col, p);
        inv.swap(col, p);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &pivot;
            inv[col][j] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &a[col][j] * &f;
                a[r][j] -= t;
                let t = &inv[col][j] * &f;
                inv[r][j] -= t;
            }
        }
    }
    Ok(inv)
}
