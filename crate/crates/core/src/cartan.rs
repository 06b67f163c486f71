//! Finite-type symmetrizable Cartan data and root/coroot arithmetic.
//!
//! The pairing convention is `a[i][j] = (alpha_i, chi_j)`: rows are indexed by
//! simple roots, columns by simple coroots. Reflections act by
//! `s_i(chi_k) = chi_k - a[i][k] chi_i` and `s_i(alpha_k) = alpha_k - a[k][i] alpha_i`.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    TypeA,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    rank: usize,
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
    family: Family,
}

/// Integer vector in the simple-coroot basis `chi_1..chi_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoweightVec(pub Vec<i64>);

/// Integer vector in the simple-root basis `alpha_1..alpha_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootVec(pub Vec<i64>);

/// Integer vector in the fundamental-weight basis `omega_1..omega_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightVec(pub Vec<i64>);

impl CoweightVec {
    pub fn zero(rank: usize) -> Self {
        CoweightVec(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        CoweightVec(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn add(&self, other: &CoweightVec) -> CoweightVec {
        CoweightVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> CoweightVec {
        CoweightVec(self.0.iter().map(|c| c * k).collect())
    }
}

impl RootVec {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        RootVec(v)
    }

    pub fn neg(&self) -> RootVec {
        RootVec(self.0.iter().map(|c| -c).collect())
    }
}

impl CartanData {
    /// Type `A_{n-1}` data for `SL_n`: tridiagonal Cartan matrix, all symmetrizers 1.
    pub fn type_a(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be positive");
        let a = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        CartanData {
            rank,
            a,
            d: vec![1; rank],
            family: Family::TypeA,
        }
    }

    /// Generic finite-type data from an explicit matrix and symmetrizers.
    pub fn from_matrix(a: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self> {
        let rank = a.len();
        if rank == 0 || a.iter().any(|row| row.len() != rank) || d.len() != rank {
            return Err(Error::InvalidCartan("matrix must be square, d of matching length".into()));
        }
        if d.iter().any(|&di| di <= 0) {
            return Err(Error::InvalidCartan("symmetrizers must be positive".into()));
        }
        for i in 0..rank {
            if a[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("a[{i}][{i}] != 2")));
            }
            for j in 0..rank {
                if i != j {
                    if a[i][j] > 0 {
                        return Err(Error::InvalidCartan(format!("a[{i}][{j}] > 0 off-diagonal")));
                    }
                    if (a[i][j] == 0) != (a[j][i] == 0) {
                        return Err(Error::InvalidCartan(format!("a[{i}][{j}] zero pattern asymmetric")));
                    }
                }
                if d[i] * a[i][j] != d[j] * a[j][i] {
                    return Err(Error::InvalidCartan(format!("d does not symmetrize at ({i},{j})")));
                }
            }
        }
        // Finite type: the symmetrized matrix d_i a_{ij} must be positive definite.
        let sym: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| d[i] * a[i][j]).collect())
            .collect();
        for k in 1..=rank {
            if leading_minor(&sym, k) <= 0 {
                return Err(Error::InvalidCartan(format!(
                    "symmetrized matrix not positive definite (minor {k})"
                )));
            }
        }
        Ok(CartanData {
            rank,
            a,
            d,
            family: Family::Generic,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(t) = v.get("type").and_then(|t| t.as_str()) {
            if t != "A" {
                return Err(Error::Parse(format!("unknown Cartan type {t:?}")));
            }
            let rank = v
                .get("rank")
                .and_then(|r| r.as_u64())
                .ok_or_else(|| Error::Parse("missing rank".into()))? as usize;
            return Ok(CartanData::type_a(rank));
        }
        let a: Vec<Vec<i64>> = serde_json::from_value(
            v.get("matrix")
                .cloned()
                .ok_or_else(|| Error::Parse("missing matrix".into()))?,
        )
        .map_err(|e| Error::Parse(e.to_string()))?;
        let d: Vec<i64> = serde_json::from_value(
            v.get("symmetrizers")
                .cloned()
                .ok_or_else(|| Error::Parse("missing symmetrizers".into()))?,
        )
        .map_err(|e| Error::Parse(e.to_string()))?;
        CartanData::from_matrix(a, d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self.family {
            Family::TypeA => serde_json::json!({"type": "A", "rank": self.rank}),
            Family::Generic => serde_json::json!({"matrix": self.a, "symmetrizers": self.d}),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Cartan entry `a_{ij} = (alpha_i, chi_j)`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i - 1][j - 1]
    }

    pub fn symmetrizer(&self, i: usize) -> i64 {
        self.d[i - 1]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= 1 && i <= self.rank {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(i, self.rank))
        }
    }

    /// Bond order `m_{ij}` of the Coxeter relation `(s_i s_j)^{m_{ij}} = 1`.
    pub fn bond(&self, i: usize, j: usize) -> usize {
        match self.entry(i, j) * self.entry(j, i) {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => usize::MAX,
        }
    }

    pub fn reflect_coweight(&self, i: usize, c: &CoweightVec) -> CoweightVec {
        let pairing: i64 = (1..=self.rank).map(|k| self.entry(i, k) * c.coord(k)).sum();
        let mut out = c.0.clone();
        out[i - 1] -= pairing;
        CoweightVec(out)
    }

    pub fn reflect_root(&self, i: usize, r: &RootVec) -> RootVec {
        let pairing: i64 = (1..=self.rank).map(|k| r.0[k - 1] * self.entry(k, i)).sum();
        let mut out = r.0.clone();
        out[i - 1] -= pairing;
        RootVec(out)
    }

    /// Weyl action of a word on a coweight, rightmost letter acting first.
    pub fn act_coweight(&self, word: &[usize], c: &CoweightVec) -> CoweightVec {
        let mut v = c.clone();
        for &i in word.iter().rev() {
            v = self.reflect_coweight(i, &v);
        }
        v
    }

    pub fn act_root(&self, word: &[usize], r: &RootVec) -> RootVec {
        let mut v = r.clone();
        for &i in word.iter().rev() {
            v = self.reflect_root(i, &v);
        }
        v
    }

    /// Bilinear pairing extending `(alpha_i, chi_j) = a_{ij}`.
    pub fn pair(&self, r: &RootVec, c: &CoweightVec) -> i64 {
        let mut acc = 0;
        for j in 1..=self.rank {
            for k in 1..=self.rank {
                acc += r.0[j - 1] * c.coord(k) * self.entry(j, k);
            }
        }
        acc
    }

    /// A reduced word for the longest element, found by descending from a
    /// strictly dominant weight. Letters multiply left-to-right with the
    /// rightmost acting first, i.e. `w0 = s_{j_1} ... s_{j_N}`.
    pub fn longest_word(&self) -> Vec<usize> {
        let mut lambda = vec![1i64; self.rank];
        let mut rev = Vec::new();
        loop {
            let Some(i) = (1..=self.rank).find(|&i| lambda[i - 1] > 0) else {
                break;
            };
            let li = lambda[i - 1];
            for j in 1..=self.rank {
                lambda[j - 1] -= li * self.entry(i, j);
            }
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    /// The involution `i -> i*` with `w0 s_i w0 = s_{i*}`.
    pub fn star(&self, i: usize) -> Result<usize> {
        self.check_index(i)?;
        if self.family == Family::TypeA {
            return Ok(self.rank + 1 - i);
        }
        let w0 = self.longest_word();
        let image = self.act_root(&w0, &RootVec::simple(self.rank, i));
        let neg = image.neg();
        for j in 1..=self.rank {
            if neg == RootVec::simple(self.rank, j) {
                return Ok(j);
            }
        }
        Err(Error::InvalidCartan("w0 does not permute the simple roots".into()))
    }

    pub fn star_signed(&self, i: i64) -> Result<i64> {
        let s = self.star(i.unsigned_abs() as usize)? as i64;
        Ok(if i < 0 { -s } else { s })
    }
}

/// Inversion coroots of a reduced word `j`: `chi^j_k = s_{j_l}...s_{j_{k+1}} . chi_{j_k}`.
pub fn inversion_coroots(cartan: &CartanData, word: &[usize]) -> Vec<CoweightVec> {
    let l = word.len();
    (0..l)
        .map(|k| {
            let mut v = CoweightVec::simple(cartan.rank(), word[k]);
            for &j in &word[k + 1..] {
                v = cartan.reflect_coweight(j, &v);
            }
            v
        })
        .collect()
}

/// Inversion roots of a word `j`: `alpha^j_k = s_{j_l}...s_{j_{k+1}} . alpha_{j_k}`.
pub fn inversion_roots(cartan: &CartanData, word: &[usize]) -> Vec<RootVec> {
    let l = word.len();
    (0..l)
        .map(|k| {
            let mut v = RootVec::simple(cartan.rank(), word[k]);
            for &j in &word[k + 1..] {
                v = cartan.reflect_root(j, &v);
            }
            v
        })
        .collect()
}

fn leading_minor(m: &[Vec<i64>], k: usize) -> i64 {
    fn det(rows: &[Vec<i64>]) -> i64 {
        let n = rows.len();
        if n == 1 {
            return rows[0][0];
        }
        let mut acc = 0i64;
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
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += sign * top * det(&minor);
        }
        acc
    }
    let sub: Vec<Vec<i64>> = (0..k).map(|i| m[i][..k].to_vec()).collect();
    det(&sub)
}

pub fn g2() -> CartanData {
    // alpha_1 long, alpha_2 short: a = [[2,-3],[-1,2]], d = (1,3).
    CartanData::from_matrix(vec![vec![2, -3], vec![-1, 2]], vec![1, 3]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_a_matrices() {
        let a2 = CartanData::type_a(2);
        assert_eq!(a2.entry(1, 1), 2);
        assert_eq!(a2.entry(1, 2), -1);
        assert_eq!(a2.entry(2, 1), -1);
        let a1 = CartanData::type_a(1);
        assert_eq!(a1.entry(1, 1), 2);
        let a3 = CartanData::type_a(3);
        assert_eq!(a3.entry(1, 3), 0);
        assert_eq!(a3.entry(2, 3), -1);
    }

    #[test]
    fn star_involution() {
        let a2 = CartanData::type_a(2);
        assert_eq!(a2.star(1).unwrap(), 2);
        assert_eq!(a2.star(2).unwrap(), 1);
        let a1 = CartanData::type_a(1);
        assert_eq!(a1.star(1).unwrap(), 1);
        // generic route agrees with the type A shortcut
        let generic = CartanData::from_matrix(
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            vec![1, 1, 1],
        )
        .unwrap();
        for i in 1..=3 {
            assert_eq!(generic.star(i).unwrap(), 4 - i);
        }
        let g2 = g2();
        assert_eq!(g2.star(1).unwrap(), 1);
        assert_eq!(g2.star(2).unwrap(), 2);
    }

    #[test]
    fn reflections() {
        let a2 = CartanData::type_a(2);
        let chi2 = CoweightVec::simple(2, 2);
        assert_eq!(a2.reflect_coweight(1, &chi2), CoweightVec(vec![1, 1]));
        let chi1 = CoweightVec::simple(2, 1);
        assert_eq!(a2.reflect_coweight(1, &chi1), CoweightVec(vec![-1, 0]));
        // s_2 s_1 . chi_2 = chi_1 in SL_3
        let v = a2.reflect_coweight(2, &a2.reflect_coweight(1, &chi2));
        assert_eq!(v, CoweightVec(vec![1, 0]));
        let alpha2 = RootVec::simple(2, 2);
        assert_eq!(a2.reflect_root(1, &alpha2), RootVec(vec![1, 1]));
        assert_eq!(a2.reflect_root(1, &RootVec::simple(2, 1)), RootVec(vec![-1, 0]));
    }

    #[test]
    fn reflections_are_involutions() {
        let g2 = g2();
        for i in 1..=2 {
            for coords in [[1, 0], [0, 1], [3, -2], [5, 7]] {
                let c = CoweightVec(coords.to_vec());
                assert_eq!(g2.reflect_coweight(i, &g2.reflect_coweight(i, &c)), c);
                let r = RootVec(coords.to_vec());
                assert_eq!(g2.reflect_root(i, &g2.reflect_root(i, &r)), r);
            }
        }
    }

    #[test]
    fn pairing_weyl_invariance() {
        let g2 = g2();
        for i in 1..=2 {
            for rc in [[1, 0], [2, -1], [0, 3]] {
                for cc in [[0, 1], [1, 1], [-2, 5]] {
                    let r = RootVec(rc.to_vec());
                    let c = CoweightVec(cc.to_vec());
                    assert_eq!(
                        g2.pair(&g2.reflect_root(i, &r), &g2.reflect_coweight(i, &c)),
                        g2.pair(&r, &c)
                    );
                }
            }
        }
    }

    #[test]
    fn pairing_values() {
        let a2 = CartanData::type_a(2);
        assert_eq!(a2.pair(&RootVec::simple(2, 1), &CoweightVec::simple(2, 1)), 2);
        assert_eq!(a2.pair(&RootVec::simple(2, 1), &CoweightVec::simple(2, 2)), -1);
        let g2 = g2();
        assert_eq!(g2.pair(&RootVec::simple(2, 1), &CoweightVec::simple(2, 2)), -3);
    }

    #[test]
    fn g2_inversion_sequences() {
        let g2 = g2();
        let word = [2, 1, 2, 1, 2, 1];
        let chis = inversion_coroots(&g2, &word);
        let expected_chis = [[0, 1], [1, 1], [3, 2], [2, 1], [3, 1], [1, 0]];
        for (v, e) in chis.iter().zip(expected_chis) {
            assert_eq!(v.0, e.to_vec());
        }
        let alphas = inversion_roots(&g2, &word);
        let expected_alphas = [[0, 1], [1, 3], [1, 2], [2, 3], [1, 1], [1, 0]];
        for (v, e) in alphas.iter().zip(expected_alphas) {
            assert_eq!(v.0, e.to_vec());
        }
    }

    #[test]
    fn g2_pairing_matrix_symmetry() {
        let g2 = g2();
        let word = [2, 1, 2, 1, 2, 1];
        let chis = inversion_coroots(&g2, &word);
        let alphas = inversion_roots(&g2, &word);
        for i in 0..6 {
            for k in 0..6 {
                let m_ik = g2.symmetrizer(word[i]) * g2.pair(&alphas[i], &chis[k]);
                let m_ki = g2.symmetrizer(word[k]) * g2.pair(&alphas[k], &chis[i]);
                assert_eq!(m_ik, m_ki);
            }
        }
    }

    #[test]
    fn longest_word_type_a() {
        let a2 = CartanData::type_a(2);
        assert_eq!(a2.longest_word().len(), 3);
        let a3 = CartanData::type_a(3);
        assert_eq!(a3.longest_word().len(), 6);
        let g2 = g2();
        assert_eq!(g2.longest_word().len(), 6);
    }

    #[test]
    fn rejects_bad_cartan() {
        assert!(CartanData::from_matrix(vec![vec![2, -1], vec![0, 2]], vec![1, 1]).is_err());
        assert!(CartanData::from_matrix(vec![vec![2, -2], vec![-2, 2]], vec![1, 1]).is_err());
        assert!(CartanData::from_matrix(vec![vec![2, 1], vec![1, 2]], vec![1, 1]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a2 = CartanData::from_json(r#"{"type":"A","rank":2}"#).unwrap();
        assert_eq!(a2, CartanData::type_a(2));
        let g = CartanData::from_json(r#"{"matrix":[[2,-3],[-1,2]],"symmetrizers":[1,3]}"#).unwrap();
        assert_eq!(g, g2());
    }
}
