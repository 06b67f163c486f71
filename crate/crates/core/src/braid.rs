//! Braid words, double braid words, double strings, and the double braid
//! moves B1-B5. Letters of a double braid word are nonzero signed indices;
//! positive letters drive the X-flag chain, negative letters the Y-chain.

use crate::cartan::{CartanData, Family};
use crate::weyl::{demazure_step, Perm, Side};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DoubleBraidWord(pub Vec<i64>);

/// One entry of a double string: a letter of `I` and the side on which the
/// corresponding weave line enters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringEntry {
    pub letter: usize,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleString(pub Vec<StringEntry>);

impl Side {
    fn tag(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

impl Serialize for Side {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_char(self.tag())
    }
}

impl<'de> Deserialize<'de> for Side {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = char::deserialize(d)?;
        match c {
            'L' => Ok(Side::Left),
            'R' => Ok(Side::Right),
            _ => Err(serde::de::Error::custom("side must be 'L' or 'R'")),
        }
    }
}

impl DoubleBraidWord {
    pub fn parse(text: &str) -> Result<Self> {
        let letters: Vec<i64> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(pos) = letters.iter().position(|&l| l == 0) {
            return Err(Error::Parse(format!("letter 0 at position {}", pos + 1)));
        }
        Ok(DoubleBraidWord(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, cartan: &CartanData) -> Result<()> {
        for (pos, &l) in self.0.iter().enumerate() {
            if l == 0 || l.unsigned_abs() as usize > cartan.rank() {
                return Err(Error::InvalidWord(format!(
                    "letter {l} at position {} invalid for rank {}",
                    pos + 1,
                    cartan.rank()
                )));
            }
        }
        Ok(())
    }

    /// Positions (1-based) of negative letters.
    pub fn negative_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&c| self.0[c - 1] < 0).collect()
    }

    pub fn positive_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&c| self.0[c - 1] > 0).collect()
    }

    /// The mirrored index `c -> m+n-c` between Deodhar and weave-depth order.
    pub fn mirror(&self, c: usize) -> usize {
        self.len() - c
    }
}

impl fmt::Display for DoubleBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl DoubleString {
    /// Display with starred letters on the left side, mirroring how the
    /// entries arise from negative letters.
    pub fn display(&self, cartan: &CartanData) -> String {
        self.0
            .iter()
            .map(|e| match e.side {
                Side::Right => format!("{}R", e.letter),
                Side::Left => format!("{}*L", cartan.star(e.letter).unwrap_or(e.letter)),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Braid word spelled by the double string: entries grow the word on
    /// their side, left entries prepend, right entries append.
    pub fn braid_word(&self) -> BraidWord {
        let mut word = Vec::new();
        for e in &self.0 {
            match e.side {
                Side::Right => word.push(e.letter),
                Side::Left => word.insert(0, e.letter),
            }
        }
        BraidWord(word)
    }
}

fn require_type_a(cartan: &CartanData) -> Result<usize> {
    if cartan.family() != Family::TypeA {
        return Err(Error::InvalidCartan(
            "Weyl-group operations are realized for type A data only".into(),
        ));
    }
    Ok(cartan.rank() + 1)
}

/// `(-|+)` braid word: starred negatives in position order, then positives in
/// reverse position order.
pub fn to_single(cartan: &CartanData, b: &DoubleBraidWord) -> Result<BraidWord> {
    b.validate(cartan)?;
    let mut letters = Vec::with_capacity(b.len());
    for &c in &b.negative_positions() {
        letters.push(cartan.star(b.0[c - 1].unsigned_abs() as usize)?);
    }
    for &c in b.positive_positions().iter().rev() {
        letters.push(b.0[c - 1] as usize);
    }
    Ok(BraidWord(letters))
}

/// Demazure sequence `w_{m+n} = id, w_{c-1} = s^-_{i_c*} * w_c * s^+_{i_c}`,
/// stored as `w[c]` for `c in 0..=m+n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WSequence {
    pub w: Vec<Perm>,
}

impl WSequence {
    /// Entry in the mirrored (double-string) order: `w^s_k = w_{m+n-k}`.
    pub fn at_string_order(&self, k: usize) -> &Perm {
        &self.w[self.w.len() - 1 - k]
    }

    pub fn demazure(&self) -> &Perm {
        &self.w[0]
    }

    pub fn is_longest_terminal(&self) -> bool {
        self.w[0] == Perm::longest(self.w[0].n())
    }
}

pub fn w_sequence(cartan: &CartanData, b: &DoubleBraidWord) -> Result<WSequence> {
    let n = require_type_a(cartan)?;
    b.validate(cartan)?;
    let l = b.len();
    let mut w = vec![Perm::identity(n); l + 1];
    for c in (1..=l).rev() {
        let i = b.0[c - 1];
        w[c - 1] = if i > 0 {
            demazure_step(&w[c], i as usize, Side::Right)
        } else {
            let starred = cartan.star(i.unsigned_abs() as usize)?;
            demazure_step(&w[c], starred, Side::Left)
        };
    }
    Ok(WSequence { w })
}

pub fn demazure_of_double(cartan: &CartanData, b: &DoubleBraidWord) -> Result<Perm> {
    Ok(w_sequence(cartan, b)?.w[0].clone())
}

/// Solid crossings: positions where the Demazure sequence stalls.
pub fn solid_indices(cartan: &CartanData, b: &DoubleBraidWord) -> Result<Vec<usize>> {
    let ws = w_sequence(cartan, b)?;
    Ok((1..=b.len()).filter(|&e| ws.w[e - 1] == ws.w[e]).collect())
}

/// Double string read off the word right to left: positive letters become
/// right entries, negative letters become starred left entries.
pub fn double_string_of(cartan: &CartanData, b: &DoubleBraidWord) -> Result<DoubleString> {
    b.validate(cartan)?;
    let mut entries = Vec::with_capacity(b.len());
    for &i in b.0.iter().rev() {
        if i > 0 {
            entries.push(StringEntry {
                letter: i as usize,
                side: Side::Right,
            });
        } else {
            entries.push(StringEntry {
                letter: cartan.star(i.unsigned_abs() as usize)?,
                side: Side::Left,
            });
        }
    }
    Ok(DoubleString(entries))
}

/// Inverse of [`double_string_of`].
pub fn double_word_of(cartan: &CartanData, s: &DoubleString) -> Result<DoubleBraidWord> {
    let mut letters = Vec::with_capacity(s.0.len());
    for e in s.0.iter().rev() {
        if e.letter == 0 || e.letter > cartan.rank() {
            return Err(Error::InvalidWord(format!("letter {} in double string", e.letter)));
        }
        match e.side {
            Side::Right => letters.push(e.letter as i64),
            Side::Left => letters.push(-(cartan.star(e.letter)? as i64)),
        }
    }
    Ok(DoubleBraidWord(letters))
}

/// Demazure sequence of a double string: `w^s_k` is the Demazure product of
/// the braid word spelled by the first `k` entries.
pub fn w_sequence_of_string(cartan: &CartanData, s: &DoubleString) -> Result<Vec<Perm>> {
    let n = require_type_a(cartan)?;
    let mut w = vec![Perm::identity(n)];
    for e in &s.0 {
        w.push(demazure_step(w.last().unwrap(), e.letter, e.side));
    }
    Ok(w)
}

/// Sequence `v^(e)`: follows the Demazure recursion but takes the plain
/// product at the solid index `e`.
#[derive(Debug, Clone)]
pub struct VSequence {
    pub e: usize,
    pub v: Vec<Perm>,
}

pub fn v_sequence(cartan: &CartanData, b: &DoubleBraidWord, e: usize) -> Result<VSequence> {
    let n = require_type_a(cartan)?;
    if !solid_indices(cartan, b)?.contains(&e) {
        return Err(Error::InvalidMove(format!("index {e} is not solid")));
    }
    let l = b.len();
    let mut v = vec![Perm::identity(n); l + 1];
    for c in (1..=l).rev() {
        let i = b.0[c - 1];
        let letter = if i > 0 {
            i as usize
        } else {
            cartan.star(i.unsigned_abs() as usize)?
        };
        v[c - 1] = if c == e {
            if i > 0 {
                v[c].mul_right_s(letter)
            } else {
                v[c].mul_left_s(letter)
            }
        } else if i > 0 {
            demazure_step(&v[c], letter, Side::Right)
        } else {
            demazure_step(&v[c], letter, Side::Left)
        };
    }
    Ok(VSequence { e, v })
}

/// A solid index is mutable iff its v-sequence still reaches the longest element.
pub fn is_mutable(cartan: &CartanData, b: &DoubleBraidWord, e: usize) -> Result<bool> {
    let n = cartan.rank() + 1;
    Ok(v_sequence(cartan, b, e)?.v[0] == Perm::longest(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveKind {
    B1,
    B2,
    B3,
    B4,
    B5,
}

impl std::str::FromStr for MoveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "B1" => Ok(MoveKind::B1),
            "B2" => Ok(MoveKind::B2),
            "B3" => Ok(MoveKind::B3),
            "B4" => Ok(MoveKind::B4),
            "B5" => Ok(MoveKind::B5),
            _ => Err(Error::Parse(format!("unknown move kind {s:?}"))),
        }
    }
}

/// Outcome of a double braid move, with the seed-effect bookkeeping read off
/// the original word.
#[derive(Debug, Clone)]
pub struct MoveOutcome {
    pub word: DoubleBraidWord,
    /// All letters in the move window are solid.
    pub all_solid: bool,
    /// For B1: the window is all solid and `w_c s_|i| = s_|j*| w_c`.
    pub special: bool,
    /// Seed index the mutation happens at, when the move mutates.
    pub mutation_index: Option<usize>,
}

/// Apply a double braid move at `pos` (1-based, leftmost letter of the window).
/// B4 acts on the last letter, B5 on the first; their `pos` must match.
pub fn apply_move(
    cartan: &CartanData,
    b: &DoubleBraidWord,
    kind: MoveKind,
    pos: usize,
) -> Result<MoveOutcome> {
    b.validate(cartan)?;
    let l = b.len();
    let solid = solid_indices(cartan, b)?;
    let mut letters = b.0.clone();
    match kind {
        MoveKind::B1 => {
            if pos == 0 || pos + 1 > l {
                return Err(Error::InvalidMove(format!("B1 window at {pos} out of range")));
            }
            let (i, j) = (letters[pos - 1], letters[pos]);
            if (i > 0) == (j > 0) {
                return Err(Error::InvalidMove("B1 needs opposite signs".into()));
            }
            letters.swap(pos - 1, pos);
            let all_solid = solid.contains(&pos) && solid.contains(&(pos + 1));
            let c = pos + 1;
            let wc = &w_sequence(cartan, b)?.w[c];
            // special iff w_c s_p = s_{q*} w_c, with p the positive letter of
            // the window and q the negative one
            let (p, q) = if i > 0 { (i, j) } else { (j, i) };
            let ap = p.unsigned_abs() as usize;
            let aq = cartan.star(q.unsigned_abs() as usize)?;
            let special = all_solid && wc.mul_right_s(ap) == wc.mul_left_s(aq);
            Ok(MoveOutcome {
                word: DoubleBraidWord(letters),
                all_solid,
                special,
                mutation_index: special.then_some(c),
            })
        }
        MoveKind::B2 => {
            if pos == 0 || pos + 1 > l {
                return Err(Error::InvalidMove(format!("B2 window at {pos} out of range")));
            }
            let (i, j) = (letters[pos - 1], letters[pos]);
            let (ai, aj) = (i.unsigned_abs() as usize, j.unsigned_abs() as usize);
            if (i > 0) != (j > 0) || cartan.bond(ai, aj) != 2 {
                return Err(Error::InvalidMove(
                    "B2 needs same-sign commuting letters".into(),
                ));
            }
            letters.swap(pos - 1, pos);
            Ok(MoveOutcome {
                word: DoubleBraidWord(letters),
                all_solid: solid.contains(&pos) && solid.contains(&(pos + 1)),
                special: false,
                mutation_index: None,
            })
        }
        MoveKind::B3 => {
            let (i, j) = match letters.get(pos - 1..pos + 2) {
                Some(&[i, j, i2]) if i == i2 && i != j => (i, j),
                _ => return Err(Error::InvalidMove(format!("B3 window at {pos} invalid"))),
            };
            let (ai, aj) = (i.unsigned_abs() as usize, j.unsigned_abs() as usize);
            if (i > 0) != (j > 0) {
                return Err(Error::InvalidMove("B3 needs same-sign letters".into()));
            }
            let m = cartan.bond(ai, aj);
            if m < 3 {
                return Err(Error::InvalidMove("B3 needs a bond of order >= 3".into()));
            }
            if m == 3 {
                letters[pos - 1] = j;
                letters[pos] = i;
                letters[pos + 1] = j;
            } else {
                // long move: alternate the other way through the whole window
                if pos + m - 1 > l {
                    return Err(Error::InvalidMove("B3 long window out of range".into()));
                }
                for (k, slot) in letters[pos - 1..pos + m - 1].iter_mut().enumerate() {
                    *slot = if k % 2 == 0 { j } else { i };
                }
            }
            let all_solid = (pos..pos + 3).all(|c| solid.contains(&c));
            let c = pos + 2;
            Ok(MoveOutcome {
                word: DoubleBraidWord(letters),
                all_solid,
                special: false,
                mutation_index: (m == 3 && all_solid).then_some(c),
            })
        }
        MoveKind::B4 => {
            if pos != l || l == 0 {
                return Err(Error::InvalidMove("B4 acts on the last letter".into()));
            }
            let i = letters[l - 1];
            letters[l - 1] = -cartan.star_signed(i)?;
            Ok(MoveOutcome {
                word: DoubleBraidWord(letters),
                all_solid: solid.contains(&l),
                special: false,
                mutation_index: None,
            })
        }
        MoveKind::B5 => {
            if pos != 1 || l == 0 {
                return Err(Error::InvalidMove("B5 acts on the first letter".into()));
            }
            letters[0] = -letters[0];
            Ok(MoveOutcome {
                word: DoubleBraidWord(letters),
                all_solid: solid.contains(&1),
                special: false,
                mutation_index: None,
            })
        }
    }
}

/// Concatenation `beta . reverse(w_word)` identifying a Richardson variety
/// with a braid variety; `v_word` must be a reduced word (for `w0 v`).
pub fn richardson_to_braid(
    cartan: &CartanData,
    v_word: &[usize],
    w_word: &[usize],
) -> Result<BraidWord> {
    let n = require_type_a(cartan)?;
    if !Perm::is_reduced(n, v_word) {
        return Err(Error::NotReduced(v_word.to_vec()));
    }
    if !Perm::is_reduced(n, w_word) {
        return Err(Error::NotReduced(w_word.to_vec()));
    }
    let mut letters = v_word.to_vec();
    letters.extend(w_word.iter().rev());
    Ok(BraidWord(letters))
}
