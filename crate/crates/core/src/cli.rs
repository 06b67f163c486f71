//! Batch front end: parse inputs, run the pipelines, emit tables/JSON/DOT,
//! and run the verification suites. All randomness flows from one seeded
//! generator echoed in the report header, so failures replay.

use crate::braid::{self, DoubleBraidWord, MoveKind};
use crate::cartan::CartanData;
use crate::plabic3d::{self, PlabicGraph3D};
use crate::seeds::{self, MoveEffect};
use crate::tropical::CocharWeaveTable;
use crate::weave;
use crate::weyl::Perm;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Table,
    Svg,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "table" => Ok(Format::Table),
            "svg" => Ok(Format::Svg),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// Resolve `--word`/`--input` arguments: `@path` reads a file, `-` stdin.
pub fn resolve_input(arg: &str) -> Result<String> {
    if arg == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(e.to_string()))?;
        Ok(buf.trim().to_string())
    } else if let Some(path) = arg.strip_prefix('@') {
        Ok(std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{path}: {e}")))?
            .trim()
            .to_string())
    } else {
        Ok(arg.to_string())
    }
}

pub fn parse_word(text: &str) -> Result<DoubleBraidWord> {
    DoubleBraidWord::parse(text)
}

/// Cartan data from `--cartan`, or type A with the rank inferred from the word.
pub fn resolve_cartan(cartan_arg: Option<&str>, word: &DoubleBraidWord) -> Result<CartanData> {
    match cartan_arg {
        Some(text) => CartanData::from_json(text),
        None => {
            let rank = word
                .0
                .iter()
                .map(|l| l.unsigned_abs() as usize)
                .max()
                .ok_or_else(|| Error::InvalidWord("empty word: pass --cartan".into()))?;
            Ok(CartanData::type_a(rank))
        }
    }
}

fn header(cmd: &str, seed: u64) -> String {
    format!("# braidvar {cmd}  seed={seed}\n")
}

pub fn cmd_seed(
    cartan: &CartanData,
    b: &DoubleBraidWord,
    format: Format,
    x_side: bool,
    seed_echo: u64,
) -> Result<String> {
    let pipeline = seeds::SeedPipeline::new(cartan, b)?;
    let seed = pipeline.seed()?;
    match format {
        Format::Dot => Ok(seed.quiver_dot()),
        Format::Json => {
            let mut v = seed.to_json();
            v["word"] = json!(b.0);
            v["phi"] = json!(pipeline.geometry.params.phi);
            if x_side {
                let xs = seed.variables_x_side(&pipeline.geometry.params.phi);
                v["variables_x_side"] = json!(xs
                    .iter()
                    .map(|p| p.to_string_with(&|i| format!("z'{}", i + 1)))
                    .collect::<Vec<_>>());
            }
            Ok(format!("{:#}\n", v))
        }
        Format::Table => {
            let mut out = header("seed", seed_echo);
            let _ = writeln!(out, "word: {b}");
            let _ = writeln!(out, "solid indices: {:?}", seed.indices);
            for ((&e, x), &f) in seed.indices.iter().zip(&seed.variables).zip(&seed.frozen) {
                let tag = if f { "frozen " } else { "mutable" };
                let _ = writeln!(out, "x{e} [{tag}] = {x}");
            }
            let _ = writeln!(out, "epsilon:");
            for row in &seed.epsilon {
                let _ = writeln!(out, "  {row:?}");
            }
            Ok(out)
        }
        Format::Svg => Err(Error::Parse("seed has no svg format".into())),
    }
}

fn coweight_symbolic(word: &[usize], weights: &[i64]) -> String {
    let mut parts = Vec::new();
    for (r, &f) in weights.iter().enumerate() {
        if f == 0 {
            continue;
        }
        let prefix: String = word[r + 1..]
            .iter()
            .rev()
            .map(|j| format!("s{j}"))
            .collect::<Vec<_>>()
            .join("");
        let base = if prefix.is_empty() {
            format!("chi{}", word[r])
        } else {
            format!("{prefix}.chi{}", word[r])
        };
        parts.push(if f == 1 { base } else { format!("{f}*{base}") });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn cmd_lusztig_table(
    cartan: &CartanData,
    b: &DoubleBraidWord,
    format: Format,
    seed_echo: u64,
) -> Result<String> {
    let table = CocharWeaveTable::build(cartan, b)?;
    let crossings = table.crossings.clone();
    let mut rows = Vec::new();
    for depth in 1..=b.len() {
        let word = table.weave.slice_word(depth)?;
        let mut cols = Vec::new();
        for (ci, &e) in crossings.iter().enumerate() {
            let values = table.cycles[ci].values_at(&table.weave, depth)?;
            let gamma = table.cocharacter(depth, e);
            cols.push((values.clone(), coweight_symbolic(&word, &values), gamma.0.clone()));
        }
        rows.push((depth, word, cols));
    }
    match format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(depth, word, cols)| {
                    let mut obj = json!({"depth": depth, "word": word});
                    for ((values, symbolic, coords), &e) in cols.iter().zip(&crossings) {
                        obj[format!("nu{e}")] = json!(values);
                        obj[format!("chi{e}")] =
                            json!({"symbolic": symbolic, "coords": coords});
                    }
                    obj
                })
                .collect();
            Ok(format!("{:#}\n", serde_json::Value::Array(items)))
        }
        Format::Table => {
            let mut head = vec!["depth".to_string(), "word".to_string()];
            for &e in &crossings {
                head.push(format!("nu{e}"));
                head.push(format!("chi{e}"));
            }
            let mut body = Vec::new();
            for (depth, word, cols) in &rows {
                let mut row = vec![
                    depth.to_string(),
                    word.iter().map(ToString::to_string).collect::<String>(),
                ];
                for (values, symbolic, coords) in cols {
                    row.push(values.iter().map(ToString::to_string).collect::<String>());
                    row.push(format!("{symbolic} = {coords:?}"));
                }
                body.push(row);
            }
            let widths: Vec<usize> = (0..head.len())
                .map(|c| {
                    body.iter()
                        .map(|r| r[c].len())
                        .chain(std::iter::once(head[c].len()))
                        .max()
                        .unwrap()
                })
                .collect();
            let mut out = header("lusztig-table", seed_echo);
            let fmt_row = |row: &[String]| {
                row.iter()
                    .enumerate()
                    .map(|(c, v)| format!("{:width$}", v, width = widths[c]))
                    .collect::<Vec<_>>()
                    .join(" | ")
            };
            let _ = writeln!(out, "{}", fmt_row(&head));
            let _ = writeln!(out, "{}", "-".repeat(widths.iter().sum::<usize>() + 3 * (head.len() - 1)));
            for row in &body {
                let _ = writeln!(out, "{}", fmt_row(row));
            }
            Ok(out)
        }
        _ => Err(Error::Parse("lusztig-table supports table or json".into())),
    }
}

pub fn cmd_weave(cartan: &CartanData, b: &DoubleBraidWord, format: Format) -> Result<String> {
    let w = weave::build_for_word(cartan, b)?;
    match format {
        Format::Dot => Ok(weave::serialize_dot(&w)),
        Format::Json => Ok(weave::serialize_json(&w)),
        Format::Svg => Ok(weave::render_svg(&w)),
        Format::Table => Err(Error::Parse("weave supports dot, json or svg".into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckSet {
    pub tori: bool,
    pub vars: bool,
    pub forms: bool,
    pub moves: bool,
}

impl CheckSet {
    pub fn all() -> Self {
        CheckSet {
            tori: true,
            vars: true,
            forms: true,
            moves: true,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut set = CheckSet {
            tori: false,
            vars: false,
            forms: false,
            moves: false,
        };
        for part in text.split(',') {
            match part.trim() {
                "tori" => set.tori = true,
                "vars" => set.vars = true,
                "forms" => set.forms = true,
                "moves" => set.moves = true,
                other => return Err(Error::Parse(format!("unknown check {other:?}"))),
            }
        }
        Ok(set)
    }
}

/// Random double braid word with Demazure product w0, by rejection.
pub fn random_longest_word(
    cartan: &CartanData,
    max_len: usize,
    rng: &mut impl Rng,
) -> Result<DoubleBraidWord> {
    let rank = cartan.rank();
    let w0len = cartan.longest_word().len();
    if max_len < w0len {
        return Err(Error::SizeGuard(format!(
            "max length {max_len} below l(w0) = {w0len}"
        )));
    }
    let n = rank + 1;
    loop {
        let l = rng.gen_range(w0len..=max_len);
        let letters: Vec<i64> = (0..l)
            .map(|_| {
                let a = rng.gen_range(1..=rank) as i64;
                if rng.gen_bool(0.5) {
                    a
                } else {
                    -a
                }
            })
            .collect();
        let b = DoubleBraidWord(letters);
        if braid::demazure_of_double(cartan, &b)? == Perm::longest(n) {
            return Ok(b);
        }
    }
}

fn applicable_moves(cartan: &CartanData, b: &DoubleBraidWord) -> Vec<(MoveKind, usize)> {
    let mut out = Vec::new();
    let l = b.len();
    for pos in 1..l {
        let (i, j) = (b.0[pos - 1], b.0[pos]);
        let (ai, aj) = (i.unsigned_abs() as usize, j.unsigned_abs() as usize);
        if (i > 0) != (j > 0) {
            out.push((MoveKind::B1, pos));
        } else if cartan.bond(ai, aj) == 2 {
            out.push((MoveKind::B2, pos));
        }
    }
    for pos in 1..l.saturating_sub(1) {
        let (i, j, k) = (b.0[pos - 1], b.0[pos], b.0[pos + 1]);
        if i == k
            && i != j
            && (i > 0) == (j > 0)
            && cartan.bond(i.unsigned_abs() as usize, j.unsigned_abs() as usize) == 3
        {
            out.push((MoveKind::B3, pos));
        }
    }
    if l > 0 {
        out.push((MoveKind::B4, l));
    }
    out
}

/// Verify one word; returns the per-check report lines and overall success.
pub fn verify_word(
    cartan: &CartanData,
    b: &DoubleBraidWord,
    checks: CheckSet,
    points: usize,
    rng: &mut impl Rng,
) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut ok = true;
    let report = seeds::verify_main_theorem(cartan, b, points, rng)?;
    if checks.tori {
        let _ = writeln!(
            out,
            "  tori  : {} ({} points)",
            if report.torus_ok { "pass" } else { "FAIL" },
            report.torus_points_checked
        );
        ok &= report.torus_ok;
    }
    if checks.vars {
        let _ = writeln!(
            out,
            "  vars  : {}",
            if report.h_identity_ok { "pass" } else { "FAIL" }
        );
        ok &= report.h_identity_ok;
    }
    if checks.forms {
        let _ = writeln!(
            out,
            "  forms : {}",
            if report.forms_equal { "pass" } else { "FAIL" }
        );
        ok &= report.forms_equal;
    }
    if let (false, Some(w)) = (ok, &report.witness) {
        let _ = writeln!(out, "  witness: {w}");
    }
    if checks.moves {
        let mut checked = 0;
        let mut failed = 0;
        for (kind, pos) in applicable_moves(cartan, b) {
            match seeds::compare_seeds_after_move(cartan, b, kind, pos) {
                Ok(_) => checked += 1,
                Err(e) => {
                    failed += 1;
                    let _ = writeln!(out, "  move {kind:?}@{pos} FAIL: {e}");
                }
            }
        }
        let _ = writeln!(
            out,
            "  moves : {} ({checked} applicable)",
            if failed == 0 { "pass" } else { "FAIL" }
        );
        ok &= failed == 0;
    }
    Ok((out, ok))
}

pub fn cmd_verify(
    cartan_arg: Option<&str>,
    word_arg: Option<&str>,
    random: usize,
    max_len: usize,
    checks: CheckSet,
    points: usize,
    seed: u64,
) -> Result<(String, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = header("verify", seed);
    let mut all_ok = true;
    let mut run = |cartan: &CartanData, b: &DoubleBraidWord, out: &mut String| -> Result<bool> {
        let _ = writeln!(out, "word {b}");
        let (lines, ok) = verify_word(cartan, b, checks, points, &mut rng)?;
        out.push_str(&lines);
        Ok(ok)
    };
    if let Some(word_text) = word_arg {
        let b = parse_word(word_text)?;
        let cartan = resolve_cartan(cartan_arg, &b)?;
        all_ok &= run(&cartan, &b, &mut out)?;
    }
    if random > 0 {
        let cartan = match cartan_arg {
            Some(text) => CartanData::from_json(text)?,
            None => CartanData::type_a(2),
        };
        let mut word_rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        for _ in 0..random {
            let b = random_longest_word(&cartan, max_len, &mut word_rng)?;
            all_ok &= run(&cartan, &b, &mut out)?;
        }
    }
    let _ = writeln!(out, "result: {}", if all_ok { "PASS" } else { "FAIL" });
    Ok((out, all_ok))
}

pub fn cmd_move(
    cartan: &CartanData,
    b: &DoubleBraidWord,
    kind: MoveKind,
    pos: usize,
    seed_echo: u64,
) -> Result<(String, bool)> {
    let outcome = braid::apply_move(cartan, b, kind, pos)?;
    let mut out = header("move", seed_echo);
    let _ = writeln!(out, "word     : {b}");
    let _ = writeln!(out, "move     : {kind:?} at {pos}");
    let _ = writeln!(out, "new word : {}", outcome.word);
    let _ = writeln!(out, "all solid: {}", outcome.all_solid);
    if kind == MoveKind::B1 {
        let _ = writeln!(out, "special  : {}", outcome.special);
    }
    if kind == MoveKind::B5 {
        let _ = writeln!(
            out,
            "seed     : quasi-cluster transformation, outside the seed comparison scope"
        );
        return Ok((out, true));
    }
    if braid::demazure_of_double(cartan, b)? != Perm::longest(cartan.rank() + 1) {
        let _ = writeln!(out, "seed     : skipped (Demazure product is not w0)");
        return Ok((out, true));
    }
    match seeds::compare_seeds_after_move(cartan, b, kind, pos) {
        Ok(MoveEffect::Equal) => {
            let _ = writeln!(out, "seed     : equal");
            Ok((out, true))
        }
        Ok(MoveEffect::Relabeled) => {
            let _ = writeln!(out, "seed     : equal up to relabeling");
            Ok((out, true))
        }
        Ok(MoveEffect::Mutation(c)) => {
            let _ = writeln!(out, "seed     : mutation at {c} verified");
            Ok((out, true))
        }
        Ok(MoveEffect::OutOfScope) => {
            let _ = writeln!(out, "seed     : out of scope");
            Ok((out, true))
        }
        Err(e) => {
            let _ = writeln!(out, "seed     : FAIL ({e})");
            Ok((out, false))
        }
    }
}

pub fn cmd_plabic(
    input: &str,
    format: Format,
    opposite_quiver: bool,
    seed_echo: u64,
) -> Result<(String, bool)> {
    let g = PlabicGraph3D::parse(input)?;
    let cartan = g.cartan();
    let flags = plabic3d::scan_solidity(&g)?;
    let compiled = plabic3d::compile_weave(&g)?;
    let single = g.single_word();
    let direct = weave::right_inductive(&cartan, &single)?;
    let mut slice_identical = compiled.vertex_crossings() == direct.vertex_crossings();
    for depth in 0..=g.word.len() {
        slice_identical &= compiled.slice_word(depth)? == direct.slice_word(depth)?;
    }
    // the compiled weave corresponds to the all-positive double braid word
    let b = DoubleBraidWord(g.word.iter().map(|&l| l as i64).collect());
    let mut seed = seeds::seed_of(&cartan, &b)?;
    if opposite_quiver {
        for row in seed.epsilon.iter_mut() {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
    }
    match format {
        Format::Dot => {
            let mut out = weave::serialize_dot(&compiled);
            out.push_str(&seed.quiver_dot());
            Ok((out, slice_identical))
        }
        Format::Json => {
            let v = json!({
                "rank": g.rank,
                "word": g.word,
                "solid": flags,
                "weave": serde_json::from_str::<serde_json::Value>(&weave::serialize_json(&compiled)).unwrap(),
                "seed": seed.to_json(),
                "opposite_quiver": opposite_quiver,
                "right_inductive_equivalent": slice_identical,
            });
            Ok((format!("{v:#}\n"), slice_identical))
        }
        Format::Table => {
            let mut out = header("plabic", seed_echo);
            let _ = writeln!(out, "word : {:?}", g.word);
            let _ = writeln!(
                out,
                "solid: {}",
                flags
                    .iter()
                    .map(|&s| if s { 'S' } else { 'h' })
                    .collect::<String>()
            );
            let _ = writeln!(out, "trivalent vertices: {}", compiled.trivalent_vertices().len());
            let _ = writeln!(
                out,
                "right-inductive comparison: {}",
                if slice_identical { "identical slices" } else { "MISMATCH" }
            );
            Ok((out, slice_identical))
        }
        Format::Svg => Ok((weave::render_svg(&compiled), slice_identical)),
    }
}
