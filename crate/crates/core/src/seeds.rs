//! Cluster seeds assembled both ways: cluster variables by unitriangular
//! inversion of chamber-minor exponents, and exchange matrices from the
//! Deodhar 2-form and the weave 2-form. The Main-Theorem verifier checks
//! torus equality, the cross-route Cartan identity, and 2-form equality.

use crate::braid::{self, DoubleBraidWord, MoveKind};
use crate::cartan::{CartanData, CoweightVec, RootVec};
use crate::geometry::BraidGeometry;
use crate::poly::Poly;
use crate::tropical::CocharWeaveTable;
use crate::weyl::Perm;
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;
use std::collections::HashMap;
use std::fmt::Write as _;

/// Skew matrix of `dlog x_e ^ dlog x_f` coefficients, stored doubled so the
/// half-integer intermediates of the Deodhar route stay integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFormMatrix {
    /// Solid Deodhar indices, ascending.
    pub indices: Vec<usize>,
    /// `doubled[e][f] = 2 * Omega_{ef}`.
    pub doubled: Vec<Vec<i64>>,
}

impl TwoFormMatrix {
    pub fn zero(indices: Vec<usize>) -> Self {
        let k = indices.len();
        TwoFormMatrix {
            indices,
            doubled: vec![vec![0; k]; k],
        }
    }

    fn add_wedge(&mut self, scale2: i64, v: &[i64], w: &[i64]) {
        let k = self.indices.len();
        for e in 0..k {
            if v[e] == 0 && w[e] == 0 {
                continue;
            }
            for f in 0..k {
                self.doubled[e][f] += scale2 * (v[e] * w[f] - v[f] * w[e]);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.doubled.iter().all(|row| row.iter().all(|&v| v == 0))
    }

    /// The integral 2-form matrix itself.
    pub fn omega(&self) -> Result<Vec<Vec<i64>>> {
        self.doubled
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        if v % 2 != 0 {
                            Err(Error::SeedInconsistency(
                                "2-form has non-integral coefficients".into(),
                            ))
                        } else {
                            Ok(v / 2)
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Deodhar-indexed cocharacter table `gamma[c][e]`, defined through the weave
/// route with mirrored indices.
pub struct CocharTable {
    pub indices: Vec<usize>,
    len: usize,
    gamma: Vec<HashMap<usize, CoweightVec>>,
}

impl CocharTable {
    pub fn cocharacter(&self, c: usize, e: usize) -> &CoweightVec {
        &self.gamma[c][&e]
    }

    /// Order of vanishing of the grid minor `Delta_{c,i}` along hypersurface `e`.
    pub fn ord(&self, c: usize, i: usize, e: usize) -> i64 {
        self.gamma[c][&e].coord(i)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

pub fn cochar_table(cartan: &CartanData, b: &DoubleBraidWord) -> Result<CocharTable> {
    let weave_table = CocharWeaveTable::build(cartan, b)?;
    cochar_table_from(cartan, b, &weave_table)
}

fn cochar_table_from(
    cartan: &CartanData,
    b: &DoubleBraidWord,
    weave_table: &CocharWeaveTable,
) -> Result<CocharTable> {
    let l = b.len();
    let solids = braid::solid_indices(cartan, b)?;
    let mut gamma = Vec::with_capacity(l + 1);
    for c in 0..=l {
        let mut row = HashMap::new();
        for &e in &solids {
            row.insert(
                e,
                weave_table.cocharacter(b.mirror(c), b.mirror(e)).clone(),
            );
        }
        gamma.push(row);
    }
    Ok(CocharTable {
        indices: solids,
        len: l,
        gamma,
    })
}

/// Everything the seed pipeline derives from one double braid word.
pub struct SeedPipeline {
    pub cartan: CartanData,
    pub word: DoubleBraidWord,
    pub geometry: BraidGeometry,
    pub weave_table: CocharWeaveTable,
    pub cochars: CocharTable,
    pub chamber_minors: Vec<Poly>,
}

impl SeedPipeline {
    pub fn new(cartan: &CartanData, b: &DoubleBraidWord) -> Result<Self> {
        let ws = braid::w_sequence(cartan, b)?;
        if !ws.is_longest_terminal() {
            return Err(Error::DemazureNotLongest);
        }
        let mut geometry = BraidGeometry::new(cartan, b)?;
        let weave_table = CocharWeaveTable::build(cartan, b)?;
        let cochars = cochar_table_from(cartan, b, &weave_table)?;
        let chamber_minors = (0..=b.len())
            .map(|c| {
                if c == 0 {
                    Ok(Poly::one(b.len()))
                } else {
                    geometry.chamber_minor(c)
                }
            })
            .collect::<Result<_>>()?;
        Ok(SeedPipeline {
            cartan: cartan.clone(),
            word: b.clone(),
            geometry,
            weave_table,
            cochars,
            chamber_minors,
        })
    }

    /// Exponent of cluster variable `e` in the chamber minor `Delta_c`:
    /// the `|i_c|` coordinate of the cocharacter at `c-1`, conjugated by
    /// `u_{c-1} = w0 w_{c-1}` for negative letters.
    pub fn exponent(&self, c: usize, e: usize) -> i64 {
        let i = self.word.0[c - 1];
        let gamma = self.cochars.cocharacter(c - 1, e);
        if i > 0 {
            gamma.coord(i as usize)
        } else {
            let u = Perm::longest(self.geometry.n).mul(&self.geometry.ws.w[c - 1]);
            let conj = self.cartan.act_coweight(&u.lex_min_reduced_word(), gamma);
            conj.coord(i.unsigned_abs() as usize)
        }
    }

    /// Exponent matrix over solid rows and columns; unitriangular up to signs
    /// by the vanishing pattern of the cocharacters.
    pub fn exponent_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let solids = &self.cochars.indices;
        let k = solids.len();
        let mut a = vec![vec![0i64; k]; k];
        for (ri, &c) in solids.iter().enumerate() {
            for (ci, &e) in solids.iter().enumerate() {
                a[ri][ci] = self.exponent(c, e);
            }
        }
        for (ri, row) in a.iter().enumerate() {
            for (ci, &v) in row.iter().enumerate() {
                if ci < ri && v != 0 {
                    return Err(Error::Convention(format!(
                        "exponent matrix not triangular at ({ri},{ci})"
                    )));
                }
            }
            if row[ri].abs() != 1 {
                return Err(Error::Convention(format!(
                    "exponent matrix diagonal {} at row {ri}, expected a unit",
                    row[ri]
                )));
            }
        }
        Ok(a)
    }

    /// Solve `Delta = x^A` for the cluster variables by integer back
    /// substitution and exact polynomial division.
    pub fn cluster_variables(&self) -> Result<Vec<Poly>> {
        let solids = &self.cochars.indices;
        let a = self.exponent_matrix()?;
        let k = solids.len();
        let inv = invert_unitriangular(&a)?;
        let nvars = self.word.len();
        let mut out = Vec::with_capacity(k);
        for e in 0..k {
            let mut num = Poly::one(nvars);
            let mut den = Poly::one(nvars);
            for (ci, &c) in solids.iter().enumerate() {
                let exp = inv[e][ci];
                let delta = &self.chamber_minors[c];
                if exp > 0 {
                    num = &num * &delta.pow(exp as u32);
                } else if exp < 0 {
                    den = &den * &delta.pow((-exp) as u32);
                }
            }
            let x = num.div_exact(&den).map_err(|_| {
                Error::SeedInconsistency(format!(
                    "cluster variable {} is not polynomial",
                    solids[e]
                ))
            })?;
            if x.is_zero() || x.as_constant().is_some() {
                return Err(Error::SeedInconsistency(format!(
                    "cluster variable {} degenerated to a constant",
                    solids[e]
                )));
            }
            out.push(x);
        }
        Ok(out)
    }

    fn pairing_vector(&self, c: usize, i: i64) -> Vec<i64> {
        let solids = &self.cochars.indices;
        let a = i.unsigned_abs() as usize;
        let alpha = RootVec::simple(self.cartan.rank(), a);
        solids
            .iter()
            .map(|&e| {
                let gamma = self.cochars.cocharacter(c, e);
                if i > 0 {
                    self.cartan.pair(&alpha, gamma)
                } else {
                    let u = Perm::longest(self.geometry.n).mul(&self.geometry.ws.w[c]);
                    let conj = self.cartan.act_coweight(&u.lex_min_reduced_word(), gamma);
                    self.cartan.pair(&alpha, &conj)
                }
            })
            .collect()
    }

    /// Deodhar 2-form: per-letter wedges of the `L_{c,i}` one-forms. Hollow
    /// letters are verified to contribute zero. The orientation pairs the
    /// later minor index first, matching the weave scan.
    pub fn deodhar_exchange(&self) -> Result<TwoFormMatrix> {
        let solids = self.cochars.indices.clone();
        let mut omega = TwoFormMatrix::zero(solids.clone());
        for c in 1..=self.word.len() {
            let i = self.word.0[c - 1];
            let d = self.cartan.symmetrizer(i.unsigned_abs() as usize);
            let sign = if i > 0 { 1 } else { -1 };
            let v_prev = self.pairing_vector(c - 1, i);
            let v_cur = self.pairing_vector(c, i);
            // contribution sign * 2 d * (1/2 v_cur) ^ (1/2 v_prev), doubled
            let mut contrib = TwoFormMatrix::zero(solids.clone());
            contrib.add_wedge(sign * d, &v_cur, &v_prev);
            if !solids.contains(&c) && !contrib.is_zero() {
                return Err(Error::SeedInconsistency(format!(
                    "hollow letter {c} contributes to the Deodhar 2-form"
                )));
            }
            for e in 0..solids.len() {
                for f in 0..solids.len() {
                    omega.doubled[e][f] += contrib.doubled[e][f];
                }
            }
        }
        Ok(omega)
    }

    /// Weave 2-form: bottom-slice form plus local contributions of trivalent
    /// and 6-valent vertices (4-valent contribute zero), everything expanded
    /// in cluster variables through the vertex cycles, then relabeled to
    /// Deodhar indices.
    pub fn weave_exchange(&self) -> Result<TwoFormMatrix> {
        let weave = &self.weave_table.weave;
        let crossings = &self.weave_table.crossings;
        let cycles = &self.weave_table.cycles;
        let k = crossings.len();
        let exps = |edge| -> Vec<i64> { cycles.iter().map(|cy| cy.value(edge)).collect() };
        let mut doubled = vec![vec![0i64; k]; k];
        let wedge = |scale2: i64, v: &[i64], w: &[i64], m: &mut Vec<Vec<i64>>| {
            for e in 0..k {
                for f in 0..k {
                    m[e][f] += scale2 * (v[e] * w[f] - v[f] * w[e]);
                }
            }
        };
        // bottom slice
        let bottom = weave.bottom_edges();
        let word = weave.slice_word(weave.depth_count())?;
        let chis = crate::cartan::inversion_coroots(&self.cartan, &word);
        let alphas = crate::cartan::inversion_roots(&self.cartan, &word);
        for i in 0..bottom.len() {
            let pi = exps(bottom[i]);
            for kk in i + 1..bottom.len() {
                let pk = exps(bottom[kk]);
                let coef = self.cartan.symmetrizer(word[i]) * self.cartan.pair(&alphas[i], &chis[kk]);
                wedge(2 * coef, &pi, &pk, &mut doubled);
            }
        }
        // internal vertices
        for strip in weave.strips() {
            for rw in &strip.rewrites {
                if rw.kind == crate::weyl::MoveKind::Commutation {
                    continue;
                }
                let d = self.cartan.symmetrizer(weave.color(rw.inputs[0]));
                let top: Vec<Vec<i64>> = rw.inputs.iter().map(|&e| exps(e)).collect();
                let bot: Vec<Vec<i64>> = rw.outputs.iter().map(|&e| exps(e)).collect();
                for (u, v) in [(0, 1), (1, 2), (2, 0)] {
                    wedge(2 * d, &top[u], &top[v], &mut doubled);
                    wedge(-2 * d, &bot[u], &bot[v], &mut doubled);
                }
            }
            if let Some(t) = &strip.trivalent {
                let d = self.cartan.symmetrizer(t.color);
                // cyclic order: left input, output, right input
                let tri = [exps(t.inputs[0]), exps(t.output), exps(t.inputs[1])];
                for (u, v) in [(0, 1), (1, 2), (2, 0)] {
                    wedge(4 * d, &tri[u], &tri[v], &mut doubled);
                }
            }
        }
        // relabel weave crossings to Deodhar indices, ascending
        let solids = self.cochars.indices.clone();
        let mut out = TwoFormMatrix::zero(solids.clone());
        let pos_of = |e: usize| -> usize {
            let weave_idx = self.word.mirror(e);
            crossings.iter().position(|&x| x == weave_idx).unwrap()
        };
        for (ei, &e) in solids.iter().enumerate() {
            for (fi, &f) in solids.iter().enumerate() {
                out.doubled[ei][fi] = doubled[pos_of(e)][pos_of(f)];
            }
        }
        Ok(out)
    }

    /// The full seed via the minor route, with frozen flags from the
    /// v-sequences and the exchange matrix from the Deodhar 2-form (equality
    /// with the weave route is a theorem, checked in `verify_main_theorem`).
    pub fn seed(&self) -> Result<Seed> {
        let variables = self.cluster_variables()?;
        let indices = self.cochars.indices.clone();
        let frozen = indices
            .iter()
            .map(|&e| Ok(!braid::is_mutable(&self.cartan, &self.word, e)?))
            .collect::<Result<Vec<bool>>>()?;
        let d: Vec<i64> = indices
            .iter()
            .map(|&e| self.cartan.symmetrizer(self.word.0[e - 1].unsigned_abs() as usize))
            .collect();
        let omega = self.deodhar_exchange()?;
        let epsilon = extract_epsilon(&omega, &d, &frozen)?;
        Ok(Seed {
            indices,
            variables,
            frozen,
            epsilon,
            d,
            nvars: self.word.len(),
        })
    }
}

fn invert_unitriangular(a: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let k = a.len();
    let mut inv = vec![vec![0i64; k]; k];
    for col in (0..k).rev() {
        let mut rhs = vec![0i64; k];
        rhs[col] = 1;
        // back substitution against the upper-triangular A with unit diagonal
        let mut x = vec![0i64; k];
        for r in (0..k).rev() {
            let mut acc = rhs[r];
            for c in r + 1..k {
                acc -= a[r][c] * x[c];
            }
            let diag = a[r][r];
            if acc % diag != 0 {
                return Err(Error::Convention("exponent matrix is not unimodular".into()));
            }
            x[r] = acc / diag;
        }
        for r in 0..k {
            inv[r][col] = x[r];
        }
    }
    Ok(inv)
}

/// `epsilon_{ef} = Omega_{ef} / (2 d_e)`. Entries with both indices frozen
/// are outside the exchange matrix (they may be half-integral) and are set
/// to zero; integrality is asserted whenever an index is mutable.
pub fn extract_epsilon(
    omega: &TwoFormMatrix,
    d: &[i64],
    frozen: &[bool],
) -> Result<Vec<Vec<i64>>> {
    let k = omega.indices.len();
    let mut eps = vec![vec![0i64; k]; k];
    for e in 0..k {
        for f in 0..k {
            if frozen[e] && frozen[f] {
                continue;
            }
            let doubled = omega.doubled[e][f];
            let div = 4 * d[e];
            if doubled % div != 0 {
                return Err(Error::SeedInconsistency(format!(
                    "2-form entry ({e},{f}) = {}/2 is not divisible by 2 d_e",
                    doubled
                )));
            }
            eps[e][f] = doubled / div;
        }
    }
    for e in 0..k {
        for f in 0..k {
            if frozen[e] && frozen[f] {
                continue;
            }
            if d[e] * eps[e][f] != -d[f] * eps[f][e] {
                return Err(Error::SeedInconsistency(
                    "exchange matrix is not skew-symmetrizable".into(),
                ));
            }
        }
    }
    Ok(eps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    /// Solid Deodhar indices, ascending.
    pub indices: Vec<usize>,
    pub variables: Vec<Poly>,
    pub frozen: Vec<bool>,
    pub epsilon: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub nvars: usize,
}

impl Seed {
    pub fn position_of(&self, index: usize) -> Option<usize> {
        self.indices.iter().position(|&e| e == index)
    }

    /// Standard seed mutation at the seed position of `index`.
    pub fn mutate(&self, index: usize) -> Result<Seed> {
        let k = self
            .position_of(index)
            .ok_or_else(|| Error::InvalidMove(format!("no seed index {index}")))?;
        if self.frozen[k] {
            return Err(Error::InvalidMove(format!("index {index} is frozen")));
        }
        let m = self.indices.len();
        let mut eps = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in 0..m {
                if self.frozen[i] && self.frozen[j] {
                    continue;
                }
                eps[i][j] = if i == k || j == k {
                    -self.epsilon[i][j]
                } else {
                    self.epsilon[i][j]
                        + self.epsilon[i][k].signum()
                            * (self.epsilon[i][k] * self.epsilon[k][j]).max(0)
                };
            }
        }
        let mut plus = Poly::one(self.nvars);
        let mut minus = Poly::one(self.nvars);
        for j in 0..m {
            let e = self.epsilon[j][k];
            if e > 0 {
                plus = &plus * &self.variables[j].pow(e as u32);
            } else if e < 0 {
                minus = &minus * &self.variables[j].pow((-e) as u32);
            }
        }
        let exchange = &plus + &minus;
        let new_var = exchange.div_exact(&self.variables[k]).map_err(|_| {
            Error::SeedInconsistency(format!("exchange at {index} is not polynomial"))
        })?;
        let mut out = self.clone();
        out.epsilon = eps;
        out.variables[k] = new_var;
        Ok(out)
    }

    /// Coprimality and non-unit checks on the cluster.
    pub fn check_variables(&self) -> Result<()> {
        for (i, x) in self.variables.iter().enumerate() {
            if x.as_constant().is_some() {
                return Err(Error::SeedInconsistency(format!(
                    "variable {} is constant",
                    self.indices[i]
                )));
            }
        }
        for i in 0..self.variables.len() {
            for j in i + 1..self.variables.len() {
                let g = self.variables[i].gcd(&self.variables[j]);
                if !g.is_one() {
                    return Err(Error::SeedInconsistency(format!(
                        "variables {} and {} share the factor {}",
                        self.indices[i], self.indices[j], g
                    )));
                }
            }
        }
        Ok(())
    }

    /// Variables written in the coordinates of the associated braid variety,
    /// renaming `z_{phi(d)} -> z'_d`.
    pub fn variables_x_side(&self, phi: &[usize]) -> Vec<Poly> {
        let mut perm = vec![0usize; self.nvars];
        for (d, &p) in phi.iter().enumerate() {
            perm[p - 1] = d;
        }
        self.variables
            .iter()
            .map(|v| v.permute_vars(self.nvars, &perm))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let variables: Vec<_> = self
            .indices
            .iter()
            .zip(&self.variables)
            .zip(&self.frozen)
            .map(|((&index, poly), &frozen)| {
                json!({
                    "index": index,
                    "poly": poly.to_string(),
                    "terms": poly.to_term_list(),
                    "frozen": frozen,
                })
            })
            .collect();
        let weave_map: HashMap<String, usize> = self
            .indices
            .iter()
            .map(|&e| (e.to_string(), self.nvars - e))
            .collect();
        json!({
            "variables": variables,
            "epsilon": self.epsilon,
            "d": self.d,
            "weave_index_map": weave_map,
        })
    }

    /// Quiver in DOT format, frozen vertices boxed, arrow multiplicities from
    /// the exchange matrix.
    pub fn quiver_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for (i, &e) in self.indices.iter().enumerate() {
            let shape = if self.frozen[i] { "box" } else { "ellipse" };
            let _ = writeln!(out, "  n{e} [label=\"x{e}\", shape={shape}];");
        }
        for (i, &e) in self.indices.iter().enumerate() {
            for (j, &f) in self.indices.iter().enumerate() {
                let mult = self.epsilon[i][j];
                if mult > 0 {
                    let _ = writeln!(out, "  n{e} -> n{f} [label=\"{mult}\"];");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Equality up to a bijection of indices, induced by matching variables.
    pub fn equal_up_to_relabeling(&self, other: &Seed) -> bool {
        let k = self.indices.len();
        if k != other.indices.len() {
            return false;
        }
        let mut map = Vec::with_capacity(k);
        for i in 0..k {
            let Some(j) = other.variables.iter().position(|v| v == &self.variables[i]) else {
                return false;
            };
            if map.contains(&j) {
                return false;
            }
            map.push(j);
        }
        for i in 0..k {
            if self.frozen[i] != other.frozen[map[i]] || self.d[i] != other.d[map[i]] {
                return false;
            }
            for j in 0..k {
                if self.epsilon[i][j] != other.epsilon[map[i]][map[j]] {
                    return false;
                }
            }
        }
        true
    }
}

pub fn seed_of(cartan: &CartanData, b: &DoubleBraidWord) -> Result<Seed> {
    SeedPipeline::new(cartan, b)?.seed()
}

/// Outcome of the three Main-Theorem checks for one word.
#[derive(Debug, Clone)]
pub struct MainTheoremReport {
    pub torus_points_checked: usize,
    pub torus_ok: bool,
    pub h_identity_ok: bool,
    pub forms_equal: bool,
    pub witness: Option<String>,
}

impl MainTheoremReport {
    pub fn all_ok(&self) -> bool {
        self.torus_ok && self.h_identity_ok && self.forms_equal
    }
}

/// Check (1) torus-membership equivalence at random rational points,
/// (2) the cross-route Cartan identity `Delta_{c,i} = prod x_e^ord` at every
/// depth and both signs, and (3) exact equality of the two exchange forms.
pub fn verify_main_theorem(
    cartan: &CartanData,
    b: &DoubleBraidWord,
    points: usize,
    rng: &mut impl rand::Rng,
) -> Result<MainTheoremReport> {
    let pipeline = SeedPipeline::new(cartan, b)?;
    let variables = pipeline.cluster_variables()?;
    let solids = pipeline.cochars.indices.clone();
    let mut witness = None;

    // (2) cross-route identity, which subsumes the monomial factorization of
    // every grid minor into cluster variables
    let mut geo = BraidGeometry::new(cartan, b)?;
    let mut h_identity_ok = true;
    'outer: for c in 0..=b.len() {
        for i in 1..=cartan.rank() {
            for sign in [1i64, -1] {
                let delta = geo.grid_minor(c, sign * i as i64)?;
                let mut mono = Poly::one(b.len());
                for (ei, &e) in solids.iter().enumerate() {
                    let gamma = pipeline.cochars.cocharacter(c, e);
                    let ord = if sign > 0 {
                        gamma.coord(i)
                    } else {
                        let u = Perm::longest(geo.n).mul(&geo.ws.w[c]);
                        cartan
                            .act_coweight(&u.lex_min_reduced_word(), gamma)
                            .coord(i)
                    };
                    if ord < 0 {
                        h_identity_ok = false;
                        witness = Some(format!("negative vanishing order at (c={c}, i={i})"));
                        break 'outer;
                    }
                    if ord > 0 {
                        mono = &mono * &variables[ei].pow(ord as u32);
                    }
                }
                if delta != mono {
                    h_identity_ok = false;
                    witness = Some(format!(
                        "grid minor ({c},{}) differs from its cluster monomial",
                        sign * i as i64
                    ));
                    break 'outer;
                }
            }
        }
    }

    // (1) torus equality via evaluation
    let mut torus_ok = true;
    let mut checked = 0;
    while checked < points {
        let point: Vec<BigRational> = (0..b.len())
            .map(|_| BigRational::from_integer(rng.gen_range(-50i64..=50).into()))
            .collect();
        let minors_nonzero = solids
            .iter()
            .all(|&c| !pipeline.chamber_minors[c].eval(&point).is_zero());
        let vars_nonzero = variables.iter().all(|x| !x.eval(&point).is_zero());
        if minors_nonzero != vars_nonzero {
            torus_ok = false;
            witness.get_or_insert(format!("torus membership differs at {point:?}"));
            break;
        }
        checked += 1;
    }

    // (3) the two exchange forms agree exactly
    let deodhar = pipeline.deodhar_exchange()?;
    let weave = pipeline.weave_exchange()?;
    let forms_equal = deodhar == weave;
    if !forms_equal {
        witness.get_or_insert_with(|| {
            format!(
                "2-forms differ: deodhar {:?} vs weave {:?}",
                deodhar.doubled, weave.doubled
            )
        });
    }

    Ok(MainTheoremReport {
        torus_points_checked: checked,
        torus_ok,
        h_identity_ok,
        forms_equal,
        witness,
    })
}

/// The coordinate substitution pulling functions on `R(moved word)` back to
/// `R(original word)`, as assignments `z'_k -> poly in z`.
pub fn move_substitution(
    nvars: usize,
    kind: MoveKind,
    pos: usize,
) -> Vec<Poly> {
    let mut assign: Vec<Poly> = (0..nvars).map(|v| Poly::var(nvars, v)).collect();
    match kind {
        MoveKind::B1 | MoveKind::B2 => {
            assign[pos - 1] = Poly::var(nvars, pos);
            assign[pos] = Poly::var(nvars, pos - 1);
        }
        MoveKind::B3 => {
            let (zp, zq, zr) = (
                Poly::var(nvars, pos - 1),
                Poly::var(nvars, pos),
                Poly::var(nvars, pos + 1),
            );
            assign[pos - 1] = zr.clone();
            assign[pos] = &(&zp * &zr) - &zq;
            assign[pos + 1] = zp;
        }
        MoveKind::B4 | MoveKind::B5 => {}
    }
    assign
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveEffect {
    Equal,
    Relabeled,
    Mutation(usize),
    OutOfScope,
}

/// Apply a double braid move and compare the seed of the new word, pulled
/// back along the move isomorphism, against the original seed (possibly
/// after one mutation). Returns the verified effect.
pub fn compare_seeds_after_move(
    cartan: &CartanData,
    b: &DoubleBraidWord,
    kind: MoveKind,
    pos: usize,
) -> Result<MoveEffect> {
    let outcome = braid::apply_move(cartan, b, kind, pos)?;
    if kind == MoveKind::B5 {
        return Ok(MoveEffect::OutOfScope);
    }
    let seed = seed_of(cartan, b)?;
    let moved = seed_of(cartan, &outcome.word)?;
    let subst = move_substitution(b.len(), kind, pos);
    let pulled = Seed {
        variables: moved
            .variables
            .iter()
            .map(|v| v.substitute(b.len(), &subst))
            .collect(),
        ..moved
    };
    match outcome.mutation_index {
        Some(c) => {
            let mutated = seed.mutate(c)?;
            if pulled.equal_up_to_relabeling(&mutated) {
                Ok(MoveEffect::Mutation(c))
            } else {
                Err(Error::SeedInconsistency(format!(
                    "{kind:?} at {pos} did not act as mutation at {c}"
                )))
            }
        }
        None => {
            if pulled == seed {
                Ok(MoveEffect::Equal)
            } else if pulled.equal_up_to_relabeling(&seed) {
                Ok(MoveEffect::Relabeled)
            } else {
                Err(Error::SeedInconsistency(format!(
                    "{kind:?} at {pos} produced an unrelated seed"
                )))
            }
        }
    }
}
