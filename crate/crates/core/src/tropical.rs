//! Lusztig cycles on weaves, their tropical propagation, Lusztig data and
//! coweights, and the double-Lusztig-datum calculus with moves B1-B4 and the
//! `e_top` operators.

use crate::braid::DoubleBraidWord;
use crate::cartan::{inversion_coroots, CartanData, CoweightVec};
use crate::weave::{self, EdgeId, Weave};
use crate::weyl::{MoveKind, Perm};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{HashMap, HashSet, VecDeque};

/// Nonnegative edge weighting satisfying the tropical Lusztig rules below its
/// source vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    /// Vertex-crossing index of the seeding trivalent vertex.
    pub source: usize,
    values: HashMap<EdgeId, i64>,
}

impl Cycle {
    pub fn value(&self, e: EdgeId) -> i64 {
        self.values.get(&e).copied().unwrap_or(0)
    }

    pub fn values_at(&self, w: &Weave, depth: usize) -> Result<Vec<i64>> {
        Ok(w.edges_at(depth)?.iter().map(|&e| self.value(e)).collect())
    }
}

/// Tropical rule at a 6-valent vertex, inputs left to right.
pub fn braid_rule(a: [i64; 3]) -> [i64; 3] {
    let m = a[0].min(a[2]);
    [a[1] + a[2] - m, m, a[1] + a[0] - m]
}

/// Propagate the vertex cycle seeded at the trivalent vertex with crossing
/// index `e`: value 1 on its southern edge, 0 elsewhere above, tropical rules
/// below, fresh lines carry 0.
pub fn vertex_cycle(w: &Weave, e: usize) -> Result<Cycle> {
    let strips = w.strips();
    let step = e + 1;
    let seed = strips
        .get(step - 1)
        .and_then(|s| s.trivalent.as_ref())
        .ok_or_else(|| Error::InvalidMove(format!("{e} is not a vertex crossing")))?;
    let mut values: HashMap<EdgeId, i64> = HashMap::new();
    values.insert(seed.output, 1);
    for strip in &strips[step..] {
        for rw in &strip.rewrites {
            match rw.kind {
                MoveKind::Commutation => {
                    let a = [rw.inputs[0], rw.inputs[1]].map(|e| values.get(&e).copied().unwrap_or(0));
                    values.insert(rw.outputs[0], a[1]);
                    values.insert(rw.outputs[1], a[0]);
                }
                MoveKind::Braid => {
                    let a = rw.inputs.map(|e| values.get(&e).copied().unwrap_or(0));
                    let b = braid_rule(a);
                    for s in 0..3 {
                        values.insert(rw.outputs[s], b[s]);
                    }
                }
            }
        }
        if let Some(t) = &strip.trivalent {
            let a = t.inputs.map(|e| values.get(&e).copied().unwrap_or(0));
            values.insert(t.output, a[0].min(a[1]));
        }
    }
    debug_assert!(values.values().all(|&v| v >= 0));
    Ok(Cycle { source: e, values })
}

/// Weighted reduced expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LusztigDatum {
    pub word: Vec<usize>,
    pub weights: Vec<i64>,
}

/// Lusztig datum of vertex cycle `e` read along the slice at `depth`; weights
/// vanish at depths above the vertex.
pub fn lusztig_datum(w: &Weave, depth: usize, e: usize) -> Result<LusztigDatum> {
    let cycle = vertex_cycle(w, e)?;
    Ok(LusztigDatum {
        word: w.slice_word(depth)?,
        weights: cycle.values_at(w, depth)?,
    })
}

/// Coweight of a Lusztig datum: weighted sum of inversion coroots.
pub fn coweight(cartan: &CartanData, datum: &LusztigDatum) -> Result<CoweightVec> {
    if !Perm::is_reduced(cartan.rank() + 1, &datum.word) {
        return Err(Error::NotReduced(datum.word.clone()));
    }
    let chis = inversion_coroots(cartan, &datum.word);
    let mut acc = CoweightVec::zero(cartan.rank());
    for (f, chi) in datum.weights.iter().zip(&chis) {
        acc = acc.add(&chi.scale(*f));
    }
    Ok(acc)
}

/// All weave cocharacters of a word at once: `gamma[c][e]` for depths
/// `c in 0..=m+n` and vertex crossings `e`.
pub struct CocharWeaveTable {
    pub weave: Weave,
    pub crossings: Vec<usize>,
    pub cycles: Vec<Cycle>,
    pub gamma: Vec<HashMap<usize, CoweightVec>>,
}

impl CocharWeaveTable {
    pub fn build(cartan: &CartanData, b: &DoubleBraidWord) -> Result<Self> {
        let weave = weave::build_for_word(cartan, b)?;
        Self::from_weave(cartan, weave)
    }

    pub fn from_weave(cartan: &CartanData, weave: Weave) -> Result<Self> {
        let crossings = weave.vertex_crossings().0;
        let cycles: Vec<Cycle> = crossings
            .iter()
            .map(|&e| vertex_cycle(&weave, e))
            .collect::<Result<_>>()?;
        let mut gamma = Vec::with_capacity(weave.depth_count() + 1);
        for depth in 0..=weave.depth_count() {
            let word = weave.slice_word(depth)?;
            let chis = inversion_coroots(cartan, &word);
            let edges = weave.edges_at(depth)?;
            let mut row = HashMap::new();
            for (ci, &e) in crossings.iter().enumerate() {
                let mut acc = CoweightVec::zero(cartan.rank());
                for (pos, &edge) in edges.iter().enumerate() {
                    let v = cycles[ci].value(edge);
                    if v != 0 {
                        acc = acc.add(&chis[pos].scale(v));
                    }
                }
                row.insert(e, acc);
            }
            gamma.push(row);
        }
        Ok(CocharWeaveTable {
            weave,
            crossings,
            cycles,
            gamma,
        })
    }

    pub fn cocharacter(&self, depth: usize, e: usize) -> &CoweightVec {
        &self.gamma[depth][&e]
    }
}

/// `gamma^We(b, c, e)`: coweight of the Lusztig datum of vertex `e` sliced at
/// depth `c`.
pub fn weave_cocharacter(
    cartan: &CartanData,
    b: &DoubleBraidWord,
    depth: usize,
    e: usize,
) -> Result<CoweightVec> {
    let w = weave::build_for_word(cartan, b)?;
    coweight(cartan, &lusztig_datum(&w, depth, e)?)
}

/// Langlands-dual cycle values along a slice: `v_dual(k) = v(k) d_{j_k} / d_c`.
pub fn dual_cycle_values(
    cartan: &CartanData,
    source_color: usize,
    slice_word: &[usize],
    values: &[i64],
) -> Vec<BigRational> {
    let dc = BigInt::from(cartan.symmetrizer(source_color));
    slice_word
        .iter()
        .zip(values)
        .map(|(&j, &v)| {
            BigRational::new(BigInt::from(v * cartan.symmetrizer(j)), dc.clone())
        })
        .collect()
}

/// Antisymmetrized slice intersection
/// `1/2 sum sign(k-i) v_c_dual(i) v_d(k) (alpha_i^j, chi_k^j)`.
pub fn slice_intersection(
    cartan: &CartanData,
    slice_word: &[usize],
    dual_c: &[BigRational],
    d_vals: &[i64],
) -> Result<BigRational> {
    if !Perm::is_reduced(cartan.rank() + 1, slice_word) {
        return Err(Error::NotReduced(slice_word.to_vec()));
    }
    let chis = inversion_coroots(cartan, slice_word);
    let alphas = crate::cartan::inversion_roots(cartan, slice_word);
    let mut acc = BigRational::zero();
    for i in 0..slice_word.len() {
        for k in 0..slice_word.len() {
            if i == k {
                continue;
            }
            let sign = if k > i { 1 } else { -1 };
            let pairing = cartan.pair(&alphas[i], &chis[k]);
            let term = &dual_c[i]
                * BigRational::from_integer(BigInt::from(sign * d_vals[k] * pairing));
            acc += term;
        }
    }
    Ok(acc / BigRational::from_integer(BigInt::from(2)))
}

/// Double weighted expression in the double-reduced-word calculus: the word
/// has signed letters, `delta(word) = w` with `len = l(w)`, and the moves
/// B1-B4 below act positionally (B4 resigns the first letter).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoubleLusztigDatum {
    pub word: Vec<i64>,
    pub weights: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DoubleMove {
    /// Swap opposite-sign letters at `pos, pos+1`.
    B1(usize),
    /// Swap same-sign commuting letters.
    B2(usize),
    /// Tropical braid move on a same-sign `(i, j, i)` window at `pos..pos+2`.
    B3(usize),
    /// Resign the first letter.
    B4,
}

/// Demazure product of a double word in the double-reduced-word convention:
/// `delta(j) = s^-_{j_l*} ... s^-_{j_1*} . s^+_{j_1} ... s^+_{j_l}`.
pub fn delta_double_word(cartan: &CartanData, word: &[i64]) -> Result<Perm> {
    let mirrored = DoubleBraidWord(word.iter().rev().copied().collect());
    crate::braid::demazure_of_double(cartan, &mirrored)
}

pub fn is_double_reduced(cartan: &CartanData, word: &[i64], w: &Perm) -> Result<bool> {
    Ok(word.len() == w.length() && delta_double_word(cartan, word)? == *w)
}

impl DoubleLusztigDatum {
    pub fn validate(&self, cartan: &CartanData) -> Result<Perm> {
        let w = delta_double_word(cartan, &self.word)?;
        if self.word.len() != w.length() || self.weights.len() != self.word.len() {
            return Err(Error::InvalidWord(
                "not a double reduced word with matching weights".into(),
            ));
        }
        if self.weights.iter().any(|&f| f < 0) {
            return Err(Error::InvalidWord("weights must be nonnegative".into()));
        }
        Ok(w)
    }
}

pub fn available_double_moves(cartan: &CartanData, word: &[i64]) -> Vec<DoubleMove> {
    let mut moves = Vec::new();
    for p in 1..word.len() {
        let (i, j) = (word[p - 1], word[p]);
        if (i > 0) != (j > 0) {
            moves.push(DoubleMove::B1(p));
        } else if cartan.bond(i.unsigned_abs() as usize, j.unsigned_abs() as usize) == 2 {
            moves.push(DoubleMove::B2(p));
        }
    }
    for p in 1..word.len().saturating_sub(1) {
        let (i, j, k) = (word[p - 1], word[p], word[p + 1]);
        if i == k
            && i != j
            && (i > 0) == (j > 0)
            && cartan.bond(i.unsigned_abs() as usize, j.unsigned_abs() as usize) == 3
        {
            moves.push(DoubleMove::B3(p));
        }
    }
    if !word.is_empty() {
        moves.push(DoubleMove::B4);
    }
    moves
}

/// Tropical weight transport for the B3 move `(a,b,c) -> (b+c-min(a,c), min(a,c), a+b-min(a,c))`.
pub fn tropical_triple(a: i64, b: i64, c: i64) -> (i64, i64, i64) {
    let m = a.min(c);
    (b + c - m, m, a + b - m)
}

pub fn double_lusztig_move(
    cartan: &CartanData,
    datum: &DoubleLusztigDatum,
    mv: DoubleMove,
) -> Result<DoubleLusztigDatum> {
    let mut word = datum.word.clone();
    let mut weights = datum.weights.clone();
    match mv {
        DoubleMove::B1(p) | DoubleMove::B2(p) => {
            let valid = available_double_moves(cartan, &word)
                .into_iter()
                .any(|m| m == mv);
            if !valid {
                return Err(Error::InvalidMove(format!("{mv:?} on {word:?}")));
            }
            word.swap(p - 1, p);
            weights.swap(p - 1, p);
        }
        DoubleMove::B3(p) => {
            let valid = available_double_moves(cartan, &word)
                .into_iter()
                .any(|m| m == mv);
            if !valid {
                return Err(Error::InvalidMove(format!("{mv:?} on {word:?}")));
            }
            let (i, j) = (word[p - 1], word[p]);
            word[p - 1] = j;
            word[p] = i;
            word[p + 1] = j;
            let (a, b, c) = (weights[p - 1], weights[p], weights[p + 1]);
            let (a2, b2, c2) = tropical_triple(a, b, c);
            weights[p - 1] = a2;
            weights[p] = b2;
            weights[p + 1] = c2;
        }
        DoubleMove::B4 => {
            if word.is_empty() {
                return Err(Error::InvalidMove("B4 on empty word".into()));
            }
            word[0] = -cartan.star_signed(word[0])?;
        }
    }
    Ok(DoubleLusztigDatum { word, weights })
}

const ETOP_GUARD: usize = 10;

fn guard_word(cartan: &CartanData, word: &[i64]) -> Result<()> {
    let w0len = cartan.longest_word().len();
    if w0len > ETOP_GUARD || word.len() > ETOP_GUARD {
        return Err(Error::SizeGuard(format!(
            "double-reduced-word search capped at length {ETOP_GUARD}"
        )));
    }
    Ok(())
}

/// BFS over the double-reduced-word move graph, carrying weights, until
/// `pred` holds for the word. Returns the first matching datum
/// (lexicographically smallest word at minimal distance).
fn normalize_to(
    cartan: &CartanData,
    datum: &DoubleLusztigDatum,
    pred: impl Fn(&[i64]) -> bool,
) -> Result<Option<DoubleLusztigDatum>> {
    guard_word(cartan, &datum.word)?;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut level: Vec<DoubleLusztigDatum> = vec![datum.clone()];
    seen.insert(datum.word.clone());
    loop {
        let mut hits: Vec<&DoubleLusztigDatum> = level.iter().filter(|d| pred(&d.word)).collect();
        if !hits.is_empty() {
            hits.sort_by(|a, b| a.word.cmp(&b.word));
            return Ok(Some(hits[0].clone()));
        }
        let mut next = Vec::new();
        for d in &level {
            for mv in available_double_moves(cartan, &d.word) {
                let nd = double_lusztig_move(cartan, d, mv)?;
                if seen.insert(nd.word.clone()) {
                    next.push(nd);
                }
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        level = next;
    }
}

/// Canonical representative of the equivalence class: transport to the
/// lexicographically smallest reachable word.
pub fn canonical_datum(cartan: &CartanData, datum: &DoubleLusztigDatum) -> Result<DoubleLusztigDatum> {
    guard_word(cartan, &datum.word)?;
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(datum.word.clone(), datum.weights.clone());
    queue.push_back(datum.clone());
    let mut best = datum.clone();
    while let Some(d) = queue.pop_front() {
        if d.word < best.word {
            best = d.clone();
        }
        for mv in available_double_moves(cartan, &d.word) {
            let nd = double_lusztig_move(cartan, &d, mv)?;
            match seen.get(&nd.word) {
                Some(known) => {
                    if *known != nd.weights {
                        return Err(Error::SeedInconsistency(format!(
                            "weights not well-defined at word {:?}",
                            nd.word
                        )));
                    }
                }
                None => {
                    seen.insert(nd.word.clone(), nd.weights.clone());
                    queue.push_back(nd);
                }
            }
        }
    }
    Ok(best)
}

/// Terminal-letter condition for `e_top_i`: some double reduced word for `w`
/// ends with `i`, i.e. `s^-_{i*} w s^+_i < w`.
pub fn etop_applicable(cartan: &CartanData, w: &Perm, i: i64) -> Result<bool> {
    let a = i.unsigned_abs() as usize;
    Ok(if i > 0 {
        !w.right_ascent(a)
    } else {
        !w.left_ascent(cartan.star(a)?)
    })
}

/// `e_top_i`: normalize the datum to a word ending with `i` and zero out the
/// final weight.
pub fn etop(cartan: &CartanData, datum: &DoubleLusztigDatum, i: i64) -> Result<DoubleLusztigDatum> {
    let w = datum.validate(cartan)?;
    if !etop_applicable(cartan, &w, i)? {
        return Err(Error::InvalidMove(format!(
            "no double reduced word for this element ends with {i}"
        )));
    }
    let normalized = normalize_to(cartan, datum, |word| word.last() == Some(&i))?
        .ok_or_else(|| Error::InvalidMove("normalization search failed".into()))?;
    let mut out = normalized;
    *out.weights.last_mut().unwrap() = 0;
    Ok(out)
}

/// Single Lusztig datum from a double one: negatives starred in decreasing
/// position order, then positives in increasing order, weights carried along.
pub fn datum_to_single(cartan: &CartanData, datum: &DoubleLusztigDatum) -> Result<LusztigDatum> {
    let mut word = Vec::with_capacity(datum.word.len());
    let mut weights = Vec::with_capacity(datum.word.len());
    for (pos, &l) in datum.word.iter().enumerate().rev() {
        if l < 0 {
            word.push(cartan.star(l.unsigned_abs() as usize)?);
            weights.push(datum.weights[pos]);
        }
    }
    for (pos, &l) in datum.word.iter().enumerate() {
        if l > 0 {
            word.push(l as usize);
            weights.push(datum.weights[pos]);
        }
    }
    Ok(LusztigDatum { word, weights })
}
