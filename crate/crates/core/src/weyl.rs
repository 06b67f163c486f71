//! Symmetric-group Weyl elements: lengths, Demazure products, Bruhat order,
//! reduced words and the commutation/braid move graph between them.
//!
//! Words multiply so that `w = s_{j_1} ... s_{j_k}` applies `s_{j_k}` first.

use crate::{Error, Result};
use std::collections::{HashMap, HashSet};

/// Permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    window: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            window: (1..=n).collect(),
        }
    }

    pub fn from_window(window: Vec<usize>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidWord(format!("not a permutation: {window:?}")));
            }
            seen[v] = true;
        }
        Ok(Perm { window })
    }

    pub fn transposition(n: usize, i: usize) -> Self {
        let mut w = Perm::identity(n);
        w.window.swap(i - 1, i);
        w
    }

    pub fn longest(n: usize) -> Self {
        Perm {
            window: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[usize] {
        &self.window
    }

    pub fn apply(&self, x: usize) -> usize {
        self.window[x - 1]
    }

    /// Image of `{1..=i}` under the permutation.
    pub fn image_of_interval(&self, i: usize) -> Vec<usize> {
        let mut rows: Vec<usize> = self.window[..i].to_vec();
        rows.sort_unstable();
        rows
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Composition `(self * other)(x) = self(other(x))`.
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm {
            window: other.window.iter().map(|&x| self.window[x - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut window = vec![0; self.n()];
        for (i, &v) in self.window.iter().enumerate() {
            window[v - 1] = i + 1;
        }
        Perm { window }
    }

    pub fn length(&self) -> usize {
        let mut inv = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.window[i] > self.window[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// `w s_i`: swaps the window entries at positions `i, i+1`.
    pub fn mul_right_s(&self, i: usize) -> Perm {
        let mut w = self.clone();
        w.window.swap(i - 1, i);
        w
    }

    /// `s_i w`: swaps the values `i, i+1` wherever they occur.
    pub fn mul_left_s(&self, i: usize) -> Perm {
        let window = self
            .window
            .iter()
            .map(|&v| {
                if v == i {
                    i + 1
                } else if v == i + 1 {
                    i
                } else {
                    v
                }
            })
            .collect();
        Perm { window }
    }

    /// True iff `l(w s_i) > l(w)`.
    pub fn right_ascent(&self, i: usize) -> bool {
        self.window[i - 1] < self.window[i]
    }

    /// True iff `l(s_i w) > l(w)`.
    pub fn left_ascent(&self, i: usize) -> bool {
        self.inverse().right_ascent(i)
    }

    pub fn from_word(n: usize, word: &[usize]) -> Perm {
        let mut w = Perm::identity(n);
        for &i in word {
            w = w.mul_right_s(i);
        }
        // built as id * s_{j_1} * ... * s_{j_k}; right multiplication appends
        // letters so the rightmost acts first under `apply`
        w
    }

    pub fn is_reduced(n: usize, word: &[usize]) -> bool {
        Perm::from_word(n, word).length() == word.len()
    }

    /// Lexicographically smallest reduced word, built from smallest left descents.
    pub fn lex_min_reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while !w.is_identity() {
            let i = (1..w.n())
                .find(|&i| !w.left_ascent(i))
                .expect("non-identity permutation has a left descent");
            word.push(i);
            w = w.mul_left_s(i);
        }
        word
    }
}

/// Demazure step: multiply by `s_i` only if the length grows.
pub fn demazure_step(w: &Perm, i: usize, side: Side) -> Perm {
    match side {
        Side::Right => {
            if w.right_ascent(i) {
                w.mul_right_s(i)
            } else {
                w.clone()
            }
        }
        Side::Left => {
            if w.left_ascent(i) {
                w.mul_left_s(i)
            } else {
                w.clone()
            }
        }
    }
}

/// Demazure product of a word, folded left to right.
pub fn demazure_product(n: usize, word: &[usize]) -> Perm {
    word.iter()
        .fold(Perm::identity(n), |w, &i| demazure_step(&w, i, Side::Right))
}

/// Demazure product of two group elements via a reduced word of the second.
pub fn demazure_mul(w: &Perm, v: &Perm) -> Perm {
    let mut acc = w.clone();
    for i in v.lex_min_reduced_word() {
        acc = demazure_step(&acc, i, Side::Right);
    }
    acc
}

/// Bruhat order via the rank-matrix criterion.
pub fn bruhat_leq(u: &Perm, w: &Perm) -> Result<bool> {
    if u.n() != w.n() {
        return Err(Error::InvalidWord("size mismatch in Bruhat comparison".into()));
    }
    let n = u.n();
    let rank = |p: &Perm, i: usize, j: usize| -> usize {
        (1..=i).filter(|&k| p.apply(k) <= j).count()
    };
    for i in 1..=n {
        for j in 1..=n {
            if rank(u, i, j) < rank(w, i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const ENUMERATION_GUARD: usize = 8;

/// All reduced words of `w`, enumerated by left descents.
pub fn reduced_words(w: &Perm) -> Result<Vec<Vec<usize>>> {
    if w.n() > ENUMERATION_GUARD {
        return Err(Error::SizeGuard(format!(
            "reduced-word enumeration capped at n = {ENUMERATION_GUARD}, got n = {}",
            w.n()
        )));
    }
    fn go(w: &Perm, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if w.is_identity() {
            out.push(acc.clone());
            return;
        }
        for i in 1..w.n() {
            if !w.left_ascent(i) {
                acc.push(i);
                go(&w.mul_left_s(i), acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(w, &mut Vec::new(), &mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// `m_{ij} = 2` commutation, a 4-valent weave vertex.
    Commutation,
    /// `m_{ij} = 3` braid move, a 6-valent weave vertex.
    Braid,
}

/// A move applied at 1-based `pos` of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WordMove {
    pub pos: usize,
    pub kind: MoveKind,
}

/// Apply a commutation or braid move in place; errors if invalid there.
pub fn apply_word_move(word: &[usize], mv: WordMove) -> Result<Vec<usize>> {
    let mut out = word.to_vec();
    let p = mv.pos - 1;
    match mv.kind {
        MoveKind::Commutation => {
            if p + 1 >= word.len() || word[p].abs_diff(word[p + 1]) < 2 {
                return Err(Error::InvalidMove(format!("commutation at {}", mv.pos)));
            }
            out.swap(p, p + 1);
        }
        MoveKind::Braid => {
            if p + 2 >= word.len()
                || word[p] != word[p + 2]
                || word[p].abs_diff(word[p + 1]) != 1
            {
                return Err(Error::InvalidMove(format!("braid move at {}", mv.pos)));
            }
            out[p] = word[p + 1];
            out[p + 1] = word[p];
            out[p + 2] = word[p + 1];
        }
    }
    Ok(out)
}

/// Moves applicable to `word`, listed left to right, commutations first.
pub fn available_moves(word: &[usize]) -> Vec<WordMove> {
    let mut moves = Vec::new();
    for p in 1..word.len() {
        if word[p - 1].abs_diff(word[p]) >= 2 {
            moves.push(WordMove {
                pos: p,
                kind: MoveKind::Commutation,
            });
        }
    }
    for p in 1..word.len().saturating_sub(1) {
        if word[p - 1] == word[p + 1] && word[p - 1].abs_diff(word[p]) == 1 {
            moves.push(WordMove {
                pos: p,
                kind: MoveKind::Braid,
            });
        }
    }
    moves
}

pub struct ReducedWordGraph {
    pub words: Vec<Vec<usize>>,
    /// Edges `(from, to, move)` with indices into `words`.
    pub edges: Vec<(usize, usize, WordMove)>,
}

pub fn reduced_word_graph(w: &Perm) -> Result<ReducedWordGraph> {
    let mut words = reduced_words(w)?;
    words.sort();
    let index: HashMap<&[usize], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let mut edges = Vec::new();
    for (i, word) in words.iter().enumerate() {
        for mv in available_moves(word) {
            let next = apply_word_move(word, mv).expect("listed move is applicable");
            let j = index[next.as_slice()];
            edges.push((i, j, mv));
        }
    }
    Ok(ReducedWordGraph { words, edges })
}

/// Shortest chain of moves from `source` to `target`; both must be reduced
/// words for the same element.
pub fn move_chain(n: usize, source: &[usize], target: &[usize]) -> Result<Vec<WordMove>> {
    if !Perm::is_reduced(n, source) {
        return Err(Error::NotReduced(source.to_vec()));
    }
    if !Perm::is_reduced(n, target) {
        return Err(Error::NotReduced(target.to_vec()));
    }
    if Perm::from_word(n, source) != Perm::from_word(n, target) {
        return Err(Error::InvalidWord(
            "source and target are words for different elements".into(),
        ));
    }
    chain_to(source, |w| w == target, false)
        .ok_or_else(|| Error::InvalidWord("no move chain found".into()))
}

/// BFS from `word` to the first (canonically: lexicographically smallest at
/// minimal distance) reduced word satisfying `pred`. `reverse_ties` flips the
/// move enumeration order; the reached word set per level is unaffected.
pub fn chain_to(
    word: &[usize],
    pred: impl Fn(&[usize]) -> bool,
    reverse_ties: bool,
) -> Option<Vec<WordMove>> {
    #[allow(clippy::type_complexity)]
    let mut parent: HashMap<Vec<usize>, (Vec<usize>, WordMove)> = HashMap::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut level: Vec<Vec<usize>> = vec![word.to_vec()];
    seen.insert(word.to_vec());
    loop {
        let mut hits: Vec<&Vec<usize>> = level.iter().filter(|w| pred(w)).collect();
        if !hits.is_empty() {
            hits.sort();
            let mut chain = Vec::new();
            let mut cur = hits[0].clone();
            while let Some((prev, mv)) = parent.get(&cur) {
                chain.push(*mv);
                cur = prev.clone();
            }
            chain.reverse();
            return Some(chain);
        }
        let mut next_level = Vec::new();
        for w in &level {
            let mut moves = available_moves(w);
            if reverse_ties {
                moves.reverse();
            }
            for mv in moves {
                let next = apply_word_move(w, mv).expect("listed move is applicable");
                if seen.insert(next.clone()) {
                    parent.insert(next.clone(), (w.clone(), mv));
                    next_level.push(next);
                }
            }
        }
        if next_level.is_empty() {
            return None;
        }
        level = next_level;
    }
}

/// Brute-force Demazure product: enumerate all subwords, keep those that are
/// reduced, and return the unique Bruhat maximum among the elements they
/// spell. Exponential; for oracle use in tests.
pub fn demazure_product_bruteforce(n: usize, word: &[usize]) -> Perm {
    let l = word.len();
    assert!(l <= 16, "oracle capped at 16 letters");
    let mut elements: HashSet<Perm> = HashSet::new();
    for mask in 0u32..(1 << l) {
        let mut w = Perm::identity(n);
        let mut picked = 0;
        for (k, &i) in word.iter().enumerate() {
            if mask & (1 << k) != 0 {
                w = w.mul_right_s(i);
                picked += 1;
            }
        }
        if w.length() == picked {
            elements.insert(w);
        }
    }
    let best = elements
        .iter()
        .max_by_key(|w| w.length())
        .expect("the empty subword is always present")
        .clone();
    for w in &elements {
        assert!(
            bruhat_leq(w, &best).unwrap(),
            "subword elements have no Bruhat maximum"
        );
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn perm_basics() {
        let w = Perm::from_word(3, &[1, 2]);
        assert_eq!(w.window(), &[2, 3, 1]);
        assert_eq!(w.length(), 2);
        assert_eq!(w.inverse().mul(&w), Perm::identity(3));
        assert_eq!(Perm::longest(3).window(), &[3, 2, 1]);
    }

    #[test]
    fn demazure_steps() {
        let id = Perm::identity(2);
        assert_eq!(demazure_step(&id, 1, Side::Right), Perm::transposition(2, 1));
        let s1 = Perm::transposition(2, 1);
        assert_eq!(demazure_step(&s1, 1, Side::Right), s1);
        // folding 1221121 in S_3 gives w0
        let w = demazure_product(3, &[1, 2, 2, 1, 1, 2, 1]);
        assert_eq!(w, Perm::longest(3));
    }

    #[test]
    fn demazure_examples() {
        assert_eq!(demazure_product(2, &[]), Perm::identity(2));
        assert_eq!(demazure_product(2, &[1, 1]), Perm::transposition(2, 1));
        // prefix (2, 1) of the running-example single word in reverse order:
        // w_5 = s_2 s_1
        let w5 = demazure_product(3, &[2, 1]);
        assert_eq!(w5, Perm::from_word(3, &[2, 1]));
        assert_eq!(w5.length(), 2);
    }

    #[test]
    fn demazure_matches_bruteforce() {
        let words: [&[usize]; 5] = [
            &[1, 2, 2, 1, 1, 2, 1],
            &[2, 1, 2, 1],
            &[1, 1, 1],
            &[3, 1, 2, 3, 1],
            &[2, 3, 2, 3, 1, 2],
        ];
        for word in words {
            let n = word.iter().max().unwrap() + 1;
            assert_eq!(
                demazure_product(n, word),
                demazure_product_bruteforce(n, word),
                "word {word:?}"
            );
        }
    }

    #[test]
    fn bruhat() {
        let w0 = Perm::longest(3);
        let s1 = Perm::transposition(3, 1);
        assert!(bruhat_leq(&Perm::identity(3), &w0).unwrap());
        assert!(!bruhat_leq(&w0, &s1).unwrap());
        let s1s2 = Perm::from_word(3, &[1, 2]);
        let s2s1 = Perm::from_word(3, &[2, 1]);
        assert!(!bruhat_leq(&s1s2, &s2s1).unwrap());
        assert!(!bruhat_leq(&s2s1, &s1s2).unwrap());
        assert!(bruhat_leq(&s1, &s1s2).unwrap());
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        // u <= w iff some reduced word of w contains a reduced word of u as a subword
        fn subword_leq(u: &Perm, w: &Perm) -> bool {
            let uwords = reduced_words(u).unwrap();
            let wwords = reduced_words(w).unwrap();
            wwords.iter().any(|ww| {
                uwords.iter().any(|uw| {
                    let mut it = ww.iter();
                    uw.iter().all(|l| it.any(|m| m == l))
                })
            })
        }
        let mut perms = vec![Perm::identity(3)];
        for _ in 0..3 {
            let mut next = perms.clone();
            for p in &perms {
                for i in 1..3 {
                    next.push(p.mul_right_s(i));
                }
            }
            next.sort();
            next.dedup();
            perms = next;
        }
        for u in &perms {
            for w in &perms {
                assert_eq!(bruhat_leq(u, w).unwrap(), subword_leq(u, w), "{u:?} vs {w:?}");
            }
        }
    }

    #[test]
    fn reduced_word_sets() {
        let w0 = Perm::longest(3);
        let mut words = reduced_words(&w0).unwrap();
        words.sort();
        assert_eq!(words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        let graph = reduced_word_graph(&w0).unwrap();
        assert_eq!(graph.edges.len(), 2); // one braid move each way
        assert_eq!(reduced_words(&Perm::transposition(2, 1)).unwrap(), vec![vec![1]]);
        assert_eq!(reduced_words(&Perm::longest(4)).unwrap().len(), 16);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            reduced_words(&Perm::identity(9)),
            Err(Error::SizeGuard(_))
        ));
    }

    #[test]
    fn move_chains_replay() {
        let chain = move_chain(3, &[1, 2, 1], &[2, 1, 2]).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].kind, MoveKind::Braid);
        assert!(move_chain(3, &[1, 2, 1], &[1, 2, 1]).unwrap().is_empty());
        let source = [1, 3, 2, 1, 3, 2];
        let target_perm = Perm::from_word(4, &source);
        for target in reduced_words(&target_perm).unwrap() {
            let chain = move_chain(4, &source, &target).unwrap();
            let mut word = source.to_vec();
            for mv in chain {
                word = apply_word_move(&word, mv).unwrap();
                assert!(Perm::is_reduced(4, &word));
            }
            assert_eq!(word, target);
        }
    }

    #[test]
    fn move_chain_rejects_bad_input() {
        assert!(move_chain(3, &[1, 1], &[1]).is_err());
        assert!(move_chain(3, &[1, 2], &[2, 1]).is_err());
    }

    proptest! {
        #[test]
        fn demazure_fold_direction_irrelevant(word in proptest::collection::vec(1usize..4, 0..9)) {
            let n = 4;
            let left = word.iter().fold(Perm::identity(n), |w, &i| demazure_step(&w, i, Side::Right));
            let right = word.iter().rev().fold(Perm::identity(n), |w, &i| demazure_step(&w, i, Side::Left));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn demazure_equals_bruteforce_prop(word in proptest::collection::vec(1usize..4, 0..8)) {
            prop_assert_eq!(
                demazure_product(4, &word),
                demazure_product_bruteforce(4, &word)
            );
        }
    }
}
