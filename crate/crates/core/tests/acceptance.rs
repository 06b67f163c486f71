//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! All comparisons are exact; runtime bounds are asserted where stated.

use braidvar::braid::{self, BraidWord, DoubleBraidWord, MoveKind};
use braidvar::cartan::{self, CartanData, CoweightVec};
use braidvar::geometry::{self, BraidGeometry};
use braidvar::plabic3d::{self, PlabicGraph3D};
use braidvar::poly::{Poly, PolyMatrix};
use braidvar::seeds::{self, MoveEffect};
use braidvar::tropical::{self, CocharWeaveTable, DoubleLusztigDatum};
use braidvar::weave;
use braidvar::weyl::Perm;
use braidvar::cli;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn running() -> DoubleBraidWord {
    DoubleBraidWord(vec![-2, 1, 2, 1, -1, 1, 2])
}

fn a2() -> CartanData {
    CartanData::type_a(2)
}

struct Criterion(&'static str);

impl Criterion {
    fn pass(self) {
        println!("criterion {}: PASS", self.0);
    }
}

#[test]
fn criterion_1_running_example_pipeline() {
    let started = Instant::now();
    let cartan = a2();
    let b = running();

    // (a) single braid word and double string
    let single = braid::to_single(&cartan, &b).unwrap();
    assert_eq!(single, BraidWord(vec![1, 2, 2, 1, 1, 2, 1]));
    let s = braid::double_string_of(&cartan, &b).unwrap();
    assert_eq!(s.display(&cartan), "2R 1R 1*L 1R 2R 1R 2*L");

    // (b) Demazure sequence, solid crossings, vertex crossings
    let ws = braid::w_sequence(&cartan, &b).unwrap();
    let expect: [&[usize]; 8] = [
        &[1, 2, 1],
        &[1, 2, 1],
        &[1, 2, 1],
        &[2, 1],
        &[2, 1],
        &[2, 1],
        &[2],
        &[],
    ];
    for (c, word) in expect.iter().enumerate() {
        assert_eq!(ws.w[c], Perm::from_word(3, word), "w_{c}");
    }
    let mut solids = braid::solid_indices(&cartan, &b).unwrap();
    solids.sort_unstable_by(|x, y| y.cmp(x));
    assert_eq!(solids, vec![5, 4, 2, 1]);
    let w = weave::build_for_word(&cartan, &b).unwrap();
    assert_eq!(w.vertex_crossings().0, vec![2, 3, 5, 6]);

    // (c) the full Lusztig-data table: words, cycle values, and coweights
    let table = CocharWeaveTable::build(&cartan, &b).unwrap();
    let words: [&[usize]; 7] = [
        &[2],
        &[2, 1],
        &[2, 1],
        &[2, 1],
        &[2, 1, 2],
        &[1, 2, 1],
        &[1, 2, 1],
    ];
    let nu: [(usize, [&[i64]; 7]); 4] = [
        (2, [&[0], &[0, 0], &[1, 0], &[1, 0], &[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
        (3, [&[0], &[0, 0], &[0, 0], &[0, 1], &[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]),
        (5, [&[0], &[0, 0], &[0, 0], &[0, 0], &[0, 0, 0], &[0, 0, 1], &[0, 0, 1]]),
        (6, [&[0], &[0, 0], &[0, 0], &[0, 0], &[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]),
    ];
    let chi: [(usize, [[i64; 2]; 7]); 4] = [
        (2, [[0, 0], [0, 0], [1, 1], [1, 1], [1, 0], [0, 0], [0, 0]]),
        (3, [[0, 0], [0, 0], [0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]),
        (5, [[0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [1, 0], [1, 0]]),
        (6, [[0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 1]]),
    ];
    for depth in 1..=7usize {
        assert_eq!(
            table.weave.slice_word(depth).unwrap(),
            words[depth - 1].to_vec(),
            "word at depth {depth}"
        );
    }
    for ((e, rows), (e2, coords)) in nu.iter().zip(&chi) {
        assert_eq!(e, e2);
        let ci = table.crossings.iter().position(|x| x == e).unwrap();
        for depth in 1..=7usize {
            assert_eq!(
                table.cycles[ci].values_at(&table.weave, depth).unwrap(),
                rows[depth - 1].to_vec(),
                "nu_{e} at depth {depth}"
            );
            assert_eq!(
                table.cocharacter(depth, *e),
                &CoweightVec(coords[depth - 1].to_vec()),
                "chi_{e} at depth {depth}"
            );
        }
    }

    // (d) the coset Z_4 and the Cartan element h+_4
    let geo = BraidGeometry::new(&cartan, &b).unwrap();
    let z = |i: usize| Poly::var(7, i - 1);
    let (z4, _) = geo.z_coset(4);
    let expect_z4 = [
        [z(6), Poly::constant(7, -1), Poly::constant(7, 0)],
        [
            &(&z(5) * &z(7)) - &Poly::one(7),
            Poly::constant(7, 0),
            -&z(5),
        ],
        [z(7), Poly::constant(7, 0), Poly::constant(7, -1)],
    ];
    for (r, row) in expect_z4.iter().enumerate() {
        for (c, val) in row.iter().enumerate() {
            assert_eq!(z4.at(r, c), val, "Z_4 entry ({r},{c})");
        }
    }
    let mut geo = geo;
    let h4 = geo.h_plus(4).unwrap();
    assert_eq!(h4[0], (z(7), Poly::one(7)));
    assert_eq!(h4[1], (z(7), z(7)));
    assert_eq!(h4[2], (Poly::one(7), z(7)));

    // (e) the variable bijection phi*
    assert_eq!(geo.params.phi, vec![1, 5, 7, 6, 4, 3, 2]);

    // (f) cluster variables, up to sign and order, in braid-variety coordinates
    let pipeline = seeds::SeedPipeline::new(&cartan, &b).unwrap();
    let seed = pipeline.seed().unwrap();
    let xs = seed.variables_x_side(&pipeline.geometry.params.phi);
    let expected = [
        z(3),
        z(5),
        &(&(&z(3) * &z(5)) * &z(7)) - &(&(&z(3) * &z(6)) + &Poly::one(7)),
        &(&(&z(3) * &z(6)) - &(&z(5) * &z(4))) + &Poly::one(7),
    ];
    for target in &expected {
        assert!(
            xs.iter().any(|x| x == target || &-x == target),
            "missing cluster variable {target}"
        );
    }
    assert_eq!(xs.len(), 4);

    // (g) dimension bookkeeping: 7 variables, 3 closed equations, 4 cluster variables
    let (eqs, opens) = geometry::braid_variety_ideal(&cartan, &single).unwrap();
    assert_eq!(eqs.len(), 3);
    assert_eq!(opens.len(), 3);
    assert!(eqs.iter().all(|p| p.nvars() == 7));
    assert_eq!(seed.variables.len(), 4);

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "running example took {elapsed:?}, budget 5 s"
    );
    Criterion("1 (running-example pipeline)").pass();
}

#[test]
fn criterion_2_main_theorem_property_suite() {
    let started = Instant::now();
    let mut point_rng = ChaCha8Rng::seed_from_u64(2024);
    let mut word_rng = ChaCha8Rng::seed_from_u64(2025);
    let mut checked = 0;
    while checked < 200 {
        let rank = word_rng.gen_range(1..=3usize);
        let cartan = CartanData::type_a(rank);
        let b = cli::random_longest_word(&cartan, 10, &mut word_rng).unwrap();
        let report = seeds::verify_main_theorem(&cartan, &b, 20, &mut point_rng).unwrap();
        assert!(
            report.all_ok(),
            "word {b} failed: {:?}",
            report.witness
        );
        assert_eq!(report.torus_points_checked, 20);
        checked += 1;
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "property suite took {elapsed:?}, budget 5 min"
    );
    Criterion("2 (Main-Theorem property suite, 200 words)").pass();
}

#[test]
fn criterion_3_move_dictionary_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut b1_special = 0usize;
    let mut b1_plain = 0usize;
    let mut b2 = 0usize;
    let mut b3_solid = 0usize;
    let mut b4 = 0usize;
    let mut attempts = 0usize;
    while (b1_special < 100 || b1_plain < 100 || b2 < 100 || b3_solid < 100 || b4 < 100)
        && attempts < 40_000
    {
        attempts += 1;
        let rank = rng.gen_range(2..=3usize);
        let cartan = CartanData::type_a(rank);
        let b = cli::random_longest_word(&cartan, 11, &mut rng).unwrap();
        let l = b.len();
        for pos in 1..l {
            let (i, j) = (b.0[pos - 1], b.0[pos]);
            let (ai, aj) = (i.unsigned_abs() as usize, j.unsigned_abs() as usize);
            if (i > 0) != (j > 0) {
                let outcome = braid::apply_move(&cartan, &b, MoveKind::B1, pos).unwrap();
                if outcome.special && b1_special < 100 {
                    let eff = seeds::compare_seeds_after_move(&cartan, &b, MoveKind::B1, pos)
                        .unwrap_or_else(|e| panic!("B1-special {b} at {pos}: {e}"));
                    assert_eq!(eff, MoveEffect::Mutation(pos + 1), "B1-special {b} at {pos}");
                    b1_special += 1;
                } else if !outcome.special && b1_plain < 100 {
                    let eff = seeds::compare_seeds_after_move(&cartan, &b, MoveKind::B1, pos)
                        .unwrap_or_else(|e| panic!("B1 {b} at {pos}: {e}"));
                    assert!(
                        matches!(eff, MoveEffect::Equal | MoveEffect::Relabeled),
                        "B1 non-special {b} at {pos} gave {eff:?}"
                    );
                    b1_plain += 1;
                }
            } else if cartan.bond(ai, aj) == 2 && b2 < 100 {
                let eff = seeds::compare_seeds_after_move(&cartan, &b, MoveKind::B2, pos)
                    .unwrap_or_else(|e| panic!("B2 {b} at {pos}: {e}"));
                assert!(
                    matches!(eff, MoveEffect::Equal | MoveEffect::Relabeled),
                    "B2 {b} at {pos} gave {eff:?}"
                );
                b2 += 1;
            }
        }
        for pos in 1..l.saturating_sub(1) {
            let (i, j, k) = (b.0[pos - 1], b.0[pos], b.0[pos + 1]);
            if i == k
                && i != j
                && (i > 0) == (j > 0)
                && cartan.bond(i.unsigned_abs() as usize, j.unsigned_abs() as usize) == 3
            {
                let outcome = braid::apply_move(&cartan, &b, MoveKind::B3, pos).unwrap();
                if outcome.all_solid && b3_solid < 100 {
                    let eff = seeds::compare_seeds_after_move(&cartan, &b, MoveKind::B3, pos)
                        .unwrap_or_else(|e| panic!("B3 {b} at {pos}: {e}"));
                    assert_eq!(eff, MoveEffect::Mutation(pos + 2), "B3 all-solid {b} at {pos}");
                    b3_solid += 1;
                }
            }
        }
        if b4 < 100 {
            let eff = seeds::compare_seeds_after_move(&cartan, &b, MoveKind::B4, l)
                .unwrap_or_else(|e| panic!("B4 {b}: {e}"));
            assert_eq!(eff, MoveEffect::Equal, "B4 on {b}");
            b4 += 1;
        }
    }
    assert!(
        b1_special >= 100 && b1_plain >= 100 && b2 >= 100 && b3_solid >= 100 && b4 >= 100,
        "instance counts: B1-special {b1_special}, B1 {b1_plain}, B2 {b2}, B3 {b3_solid}, B4 {b4}"
    );
    Criterion("3 (move dictionary, >=100 instances each)").pass();
}

#[test]
fn criterion_4_tropical_well_definedness() {
    // Matsumoto invariance: exhaustive over all reduced words of w0 in S3 and
    // S4; the canonical-form BFS errors if any two move chains between the
    // same words transport weights differently.
    for n in [3usize, 4] {
        let cartan = CartanData::type_a(n - 1);
        let w0 = Perm::longest(n);
        for word in braidvar::weyl::reduced_words(&w0).unwrap() {
            for pattern in 0..(1 << word.len().min(6)) {
                let weights: Vec<i64> = (0..word.len())
                    .map(|k| i64::from(pattern >> (k % 6) & 1 == 1))
                    .collect();
                let datum = DoubleLusztigDatum {
                    word: word.iter().map(|&l| l as i64).collect(),
                    weights,
                };
                tropical::canonical_datum(&cartan, &datum).unwrap();
            }
        }
    }

    // the B3 tropical rule reproduces the two fixture transports
    assert_eq!(tropical::tropical_triple(1, 0, 0), (0, 0, 1));
    assert_eq!(tropical::tropical_triple(0, 0, 1), (1, 0, 0));
    assert_eq!(tropical::tropical_triple(0, 1, 0), (1, 0, 1));
    assert_eq!(tropical::tropical_triple(1, 0, 1), (0, 1, 0));

    // e_top independence, exhaustive on all double reduced words of length <= 4
    // over ranks 2 and 3 with all 0/1 weights
    for rank in [2usize, 3] {
        let cartan = CartanData::type_a(rank);
        let letters: Vec<i64> = (1..=rank as i64).flat_map(|a| [a, -a]).collect();
        let mut words: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &words {
                for &l in &letters {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            words.extend(next.clone());
            words = words.into_iter().filter(|w| w.len() <= 4).collect();
            words.dedup();
            if words.iter().all(|w| w.len() == 4) {
                break;
            }
        }
        words.sort();
        words.dedup();
        for word in words.iter().filter(|w| (1..=4).contains(&w.len())) {
            let delta = tropical::delta_double_word(&cartan, word).unwrap();
            if delta.length() != word.len() {
                continue;
            }
            for pattern in 0..(1u32 << word.len()) {
                let weights: Vec<i64> = (0..word.len())
                    .map(|k| i64::from(pattern >> k & 1 == 1))
                    .collect();
                let datum = DoubleLusztigDatum {
                    word: word.clone(),
                    weights: weights.clone(),
                };
                for i in letters.iter().copied() {
                    if !tropical::etop_applicable(&cartan, &delta, i).unwrap() {
                        continue;
                    }
                    let direct = tropical::etop(&cartan, &datum, i).unwrap();
                    let canon = tropical::canonical_datum(&cartan, &datum).unwrap();
                    let detour = tropical::etop(&cartan, &canon, i).unwrap();
                    assert_eq!(
                        tropical::canonical_datum(&cartan, &direct).unwrap(),
                        tropical::canonical_datum(&cartan, &detour).unwrap(),
                        "e_top_{i} path-dependent on {word:?} weights {weights:?}"
                    );
                }
            }
        }
    }
    Criterion("4 (tropical well-definedness)").pass();
}

#[test]
fn criterion_5_g2_pairing_fixture() {
    let g2 = cartan::g2();
    let word = [2usize, 1, 2, 1, 2, 1];
    let chis = cartan::inversion_coroots(&g2, &word);
    let alphas = cartan::inversion_roots(&g2, &word);
    let expected: [[i64; 6]; 6] = [
        [6, 3, 3, 0, -3, -3],
        [3, 2, 3, 1, 0, -1],
        [3, 3, 6, 3, 3, 0],
        [0, 1, 3, 2, 3, 1],
        [-3, 0, 3, 3, 6, 3],
        [-3, -1, 0, 1, 3, 2],
    ];
    for i in 0..6 {
        for k in 0..6 {
            let m = g2.symmetrizer(word[i]) * g2.pair(&alphas[i], &chis[k]);
            assert_eq!(m, expected[i][k], "m[{i}][{k}]");
        }
    }
    Criterion("5 (G2 pairing matrix)").pass();
}

#[test]
fn criterion_6_plabic_compilation() {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut checked = 0;
    while checked < 100 {
        let rank = rng.gen_range(1..=3usize);
        let cartan = CartanData::type_a(rank);
        let w0len = cartan.longest_word().len();
        let l = rng.gen_range(w0len..=10);
        let word: Vec<usize> = (0..l).map(|_| rng.gen_range(1..=rank)).collect();
        let b = DoubleBraidWord(word.iter().map(|&x| x as i64).collect());
        if braid::demazure_of_double(&cartan, &b).unwrap() != Perm::longest(rank + 1) {
            continue;
        }
        let g = PlabicGraph3D {
            rank: rank + 1,
            word: word.clone(),
        };
        let compiled = plabic3d::compile_weave(&g).unwrap();
        let direct = weave::right_inductive(&cartan, &g.single_word()).unwrap();
        assert_eq!(compiled.vertex_crossings(), direct.vertex_crossings());
        for depth in 0..=l {
            assert_eq!(
                compiled.slice_word(depth).unwrap(),
                direct.slice_word(depth).unwrap(),
                "slice {depth} of {word:?}"
            );
        }
        // identical seeds through the two weaves
        let via_compiled = CocharWeaveTable::from_weave(&cartan, compiled).unwrap();
        let via_direct = CocharWeaveTable::from_weave(&cartan, direct).unwrap();
        for depth in 0..=l {
            for &e in &via_compiled.crossings {
                assert_eq!(
                    via_compiled.cocharacter(depth, e),
                    via_direct.cocharacter(depth, e)
                );
            }
        }
        let seed = seeds::seed_of(&cartan, &b).unwrap();
        let solid_count = plabic3d::scan_solidity(&g)
            .unwrap()
            .iter()
            .filter(|&&s| s)
            .count();
        assert_eq!(seed.variables.len(), solid_count);
        checked += 1;
    }
    Criterion("6 (plabic compilation, 100 words)").pass();
}

#[test]
fn criterion_7_geometry_self_tests() {
    // Bruhat round-trip on 500 random factorizations
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let rational = |v: i64| BigRational::from_integer(v.into());
    for _ in 0..500 {
        let n = rng.gen_range(2..=4usize);
        let window = {
            let mut v: Vec<usize> = (1..=n).collect();
            for i in (1..n).rev() {
                v.swap(i, rng.gen_range(0..=i));
            }
            v
        };
        let w = Perm::from_window(window).unwrap();
        let mut h: Vec<BigRational> = (0..n - 1)
            .map(|_| rational([1, 2, 3, -1, -2, 5, -7][rng.gen_range(0..7)]))
            .collect();
        let prod: BigRational = h.iter().product();
        h.push(BigRational::one() / prod);
        let mut tri = |upper: bool| -> Vec<Vec<BigRational>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                BigRational::one()
                            } else if (i < j) == upper {
                                rational(rng.gen_range(-4..=4))
                            } else {
                                BigRational::from_integer(0.into())
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let u = tri(true);
        let u2 = tri(true);
        let lift = geometry::lift_poly(1, &w);
        let wh: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        lift.at(i, j)
                            .eval(&[BigRational::one()])
                            * &h[j]
                    })
                    .collect()
            })
            .collect();
        let m = geometry::mat_mul_rat(&u, &geometry::mat_mul_rat(&wh, &u2));
        let (w2, h2) = geometry::bruhat_position_rat(&m).unwrap();
        assert_eq!(w2, w);
        assert_eq!(h2, h);
    }

    // unimodularity of B_beta for 200 random words
    for _ in 0..200 {
        let rank = rng.gen_range(1..=3usize);
        let n = rank + 1;
        let l = rng.gen_range(1..=8);
        let word: Vec<usize> = (0..l).map(|_| rng.gen_range(1..=rank)).collect();
        let mut m = PolyMatrix::identity(n, l);
        for (k, &i) in word.iter().enumerate() {
            m = m.mul(&geometry::b_matrix(n, l, i, k));
        }
        assert!(m.det_bareiss().is_unit(), "det B_{word:?}");
    }

    // parametrized tuples satisfy the defining positions at random points
    let mut words_checked = 0;
    while words_checked < 10 {
        let rank = rng.gen_range(1..=3usize);
        let cartan = CartanData::type_a(rank);
        let b = cli::random_longest_word(&cartan, 9, &mut rng).unwrap();
        let geo = BraidGeometry::new(&cartan, &b).unwrap();
        let mut points_checked = 0;
        let mut tries = 0;
        while points_checked < 5 && tries < 40 {
            tries += 1;
            let point: Vec<BigRational> = (0..b.len())
                .map(|_| rational(rng.gen_range(-1_000_000i64..=1_000_000)))
                .collect();
            match geometry::check_positions_at(&cartan, &b, &geo, &point) {
                Ok(()) => points_checked += 1,
                Err(braidvar::Error::SingularMatrix) => continue,
                Err(e) => panic!("{b} at {point:?}: {e}"),
            }
        }
        assert!(points_checked >= 5, "not enough generic points for {b}");
        words_checked += 1;
    }
    Criterion("7 (geometry self-tests)").pass();
}

/// A rank-3 commutation move and an all-solid braid move at the word level,
/// outside the randomized suites.
#[test]
fn extra_word_level_move_checks() {
    let cartan = CartanData::type_a(3);
    let b = DoubleBraidWord(vec![1, 3, 2, 1, 3, 2, 1, 3]);
    if braid::demazure_of_double(&cartan, &b).unwrap() == Perm::longest(4) {
        let eff = seeds::compare_seeds_after_move(&cartan, &b, MoveKind::B2, 1).unwrap();
        assert!(matches!(eff, MoveEffect::Equal | MoveEffect::Relabeled));
    }
    let a2 = CartanData::type_a(2);
    let b = DoubleBraidWord(vec![1, 2, 1, 1, 2, 1]);
    let eff = seeds::compare_seeds_after_move(&a2, &b, MoveKind::B3, 1).unwrap();
    assert_eq!(eff, MoveEffect::Mutation(3));
}
