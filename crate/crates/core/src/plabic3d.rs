//! Type A 3D plabic graph combinatorics: the solidity scan and the
//! compilation to a right-inductive weave, working directly in Demazure
//! coordinates (the geometric reflection step is a coordinate convention).

use crate::braid::{BraidWord, DoubleString, StringEntry};
use crate::cartan::CartanData;
use crate::weave::{self, Weave};
use crate::weyl::{demazure_step, Perm, Side};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A 3D plabic graph for `u = w0`: the strand count `n` of `SL_n` and an
/// all-positive word, scanned right to left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlabicGraph3D {
    /// Strand count of `SL_n`; letters lie in `1..n`.
    pub rank: usize,
    pub word: Vec<usize>,
}

impl PlabicGraph3D {
    pub fn parse(text: &str) -> Result<Self> {
        let g: PlabicGraph3D =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank < 2 {
            return Err(Error::InvalidWord("strand count must be at least 2".into()));
        }
        for (pos, &l) in self.word.iter().enumerate() {
            if l == 0 || l >= self.rank {
                return Err(Error::InvalidWord(format!(
                    "letter {l} at position {} invalid for SL_{}",
                    pos + 1,
                    self.rank
                )));
            }
        }
        Ok(())
    }

    pub fn cartan(&self) -> CartanData {
        CartanData::type_a(self.rank - 1)
    }

    /// The `(-|+)` braid word of the all-positive double braid word: its reverse.
    pub fn single_word(&self) -> BraidWord {
        BraidWord(self.word.iter().rev().copied().collect())
    }
}

/// Solidity flags per position (left to right): a crossing is solid iff the
/// Demazure product of the braid suffix to its right does not grow when the
/// crossing is prepended.
pub fn scan_solidity(g: &PlabicGraph3D) -> Result<Vec<bool>> {
    g.validate()?;
    let n = g.rank;
    let mut flags = vec![false; g.word.len()];
    let mut delta = Perm::identity(n);
    for pos in (0..g.word.len()).rev() {
        let next = demazure_step(&delta, g.word[pos], Side::Left);
        flags[pos] = next == delta;
        delta = next;
    }
    Ok(flags)
}

/// Compile the 3D plabic graph to a weave: scan right to left in Demazure
/// coordinates, appending a line for each hollow crossing and rewriting to a
/// trivalent attachment for each solid one. The output is the right-inductive
/// weave of the reversed word.
pub fn compile_weave(g: &PlabicGraph3D) -> Result<Weave> {
    g.validate()?;
    let cartan = g.cartan();
    let flags = scan_solidity(g)?;
    let entries: Vec<StringEntry> = g
        .word
        .iter()
        .rev()
        .map(|&letter| StringEntry {
            letter,
            side: Side::Right,
        })
        .collect();
    let weave = weave::build_double_inductive(&cartan, &DoubleString(entries))?;
    // cross-check: trivalent vertices appear exactly at solid crossings
    let solid_count = flags.iter().filter(|&&s| s).count();
    if weave.trivalent_vertices().len() != solid_count {
        return Err(Error::Convention(
            "solidity scan disagrees with the weave builder".into(),
        ));
    }
    for (j, &solid) in flags.iter().rev().enumerate() {
        let strip = &weave.strips()[j];
        if strip.grew == solid {
            return Err(Error::Convention(format!(
                "crossing at scan step {} is {} but the weave {}",
                j + 1,
                if solid { "solid" } else { "hollow" },
                if strip.grew { "grew" } else { "stalled" },
            )));
        }
    }
    Ok(weave)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weave::right_inductive;

    #[test]
    fn paper_example_solidity() {
        let g = PlabicGraph3D {
            rank: 3,
            word: vec![1, 2, 2, 1, 2, 2, 1, 1],
        };
        let flags = scan_solidity(&g).unwrap();
        // hollow exactly at positions 4, 6, 8 counting from the left
        let hollow: Vec<usize> = flags
            .iter()
            .enumerate()
            .filter(|(_, &s)| !s)
            .map(|(i, _)| i + 1)
            .collect();
        assert_eq!(hollow, vec![4, 6, 8]);
    }

    #[test]
    fn reduced_word_all_hollow() {
        let g = PlabicGraph3D {
            rank: 3,
            word: vec![1, 2, 1],
        };
        assert!(scan_solidity(&g).unwrap().iter().all(|&s| !s));
    }

    #[test]
    fn repeated_letter_solidity() {
        let g = PlabicGraph3D {
            rank: 2,
            word: vec![1, 1, 1],
        };
        // rightmost occurrence grows the product, the ones to its left stall
        assert_eq!(scan_solidity(&g).unwrap(), vec![true, true, false]);
    }

    #[test]
    fn compiles_to_right_inductive() {
        let g = PlabicGraph3D {
            rank: 3,
            word: vec![1, 2, 2, 1, 2, 2, 1, 1],
        };
        let compiled = compile_weave(&g).unwrap();
        let direct = right_inductive(&g.cartan(), &g.single_word()).unwrap();
        assert_eq!(compiled, direct);
        assert_eq!(compiled.trivalent_vertices().len(), 5);
    }

    #[test]
    fn reduced_word_compiles_vertex_free() {
        let g = PlabicGraph3D {
            rank: 4,
            word: vec![1, 2, 3, 1, 2, 1],
        };
        assert!(compile_weave(&g).unwrap().trivalent_vertices().is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PlabicGraph3D::parse(r#"{"rank":3,"word":[1,3]}"#).is_err());
        assert!(PlabicGraph3D::parse(r#"{"rank":1,"word":[]}"#).is_err());
        let g = PlabicGraph3D::parse(r#"{"rank":3,"word":[1,2,2,1,2,2,1,1]}"#).unwrap();
        assert_eq!(g.word.len(), 8);
    }
}
