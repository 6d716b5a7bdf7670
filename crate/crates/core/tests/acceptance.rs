//! The acceptance battery: ten numbered criteria covering figure fidelity,
//! codec laws, capture correspondence, the cover-to-slalom construction,
//! witness extraction, diagonalization, closure and transport, union
//! arithmetic, the encoding pipelines, and the powerset splitting identity.
//! Each criterion is one test; its name is the pass/fail line.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;

use raisonnier::codec::{binary_to_slalom, decode_seq, encode_point, slalom_to_binary};
use raisonnier::filterlab::{
    check_certificate, diagonalize, eventual_closure_cover, powerset_points,
    prepend_cover_transport, union_certificate, unprepend_cover_transport, DiagonalOutcome,
    FilterCertificate,
};
use raisonnier::generate::{
    self, binary_slalom, boundary_witnesses, bounded_seq, budget_witness, captured_word,
    catalog_instance, certificate, cover_from_witness, diagonal_instance, family, partition,
};
use raisonnier::pipelines::{
    encode_family, pair_union_bound, pull_capture_through_encoding, sigma_union_witness,
    CatalogLookup, SlalomCatalog,
};
use raisonnier::rapidity::{slalom_from_cover, witness_from_binary_slalom, CoverFamily};
use raisonnier::slalom::{goes_through_point, Slalom};
use raisonnier::{make_partition, shift_set, split_set, NatSet, WidthFunction, WidthVerdict, Word};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn criterion_01_figure_fidelity() {
    let started = Instant::now();
    let d = make_partition(&[4, 2, 3, 5, 1, 3]).unwrap();
    assert_eq!(d.points(), &[0, 4, 6, 9, 14, 15, 18]);

    let x = w("110001001101110010");
    assert_eq!(encode_point(&x, &d).unwrap(), vec![12, 1, 1, 23, 0, 2]);

    let decoded = decode_seq(&[12, 5, 5, 15, 42, 2], &d).unwrap();
    let segments = ["1100", "01", "101", "01111", "0", "010"];
    for (n, segment) in segments.iter().enumerate() {
        assert_eq!(decoded.restrict(d.interval(n)), w(segment));
    }
    assert_eq!(decoded, w(&segments.concat()));

    let elapsed = started.elapsed();
    assert!(elapsed.as_micros() < 1000, "took {elapsed:?}, budget 1 ms");
    println!("criterion 01 figure fidelity: PASS ({elapsed:?})");
}

#[test]
fn criterion_02_codec_laws() {
    let started = Instant::now();
    let mut rng = generate::rng(0x02);
    for _ in 0..50 {
        // Horizon stays within 2^10 bits: at most 16 intervals of width
        // at most 64.
        let d = partition(&mut rng, 16, 64);
        assert!(d.horizon() <= 1 << 10);
        for _ in 0..10_000 {
            let x = generate::word(&mut rng, d.horizon());
            let f = encode_point(&x, &d).unwrap();
            assert_eq!(decode_seq(&f, &d).unwrap(), x, "decode∘encode ≠ id");
        }
        for _ in 0..200 {
            let f = bounded_seq(&mut rng, &d);
            let x = decode_seq(&f, &d).unwrap();
            assert_eq!(encode_point(&x, &d).unwrap(), f, "encode∘decode ≠ id");
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}, budget 10 s");
    println!("criterion 02 codec laws: PASS ({elapsed:?})");
}

#[test]
fn criterion_03_capture_correspondence() {
    let started = Instant::now();
    let mut rng = generate::rng(0x03);
    for i in 0..1000 {
        let d = partition(&mut rng, 10, 8);
        let b = binary_slalom(&mut rng, &d, WidthFunction::Constant(3));
        let x = if i % 2 == 0 {
            generate::word(&mut rng, d.horizon())
        } else {
            let from = rng.random_range(0..=d.num_intervals());
            captured_word(&mut rng, &b, from)
        };
        let direct = goes_through_point(&x, &b).unwrap();
        let translated = binary_to_slalom(&b).unwrap();
        let f = encode_point(&x, &d).unwrap();
        assert_eq!(direct, translated.goes_through_seq(&f).unwrap());
    }
    for _ in 0..1000 {
        let d = partition(&mut rng, 10, 8);
        let s = generate::slalom(&mut rng, d.num_intervals(), WidthFunction::Constant(3), 100);
        let f = bounded_seq(&mut rng, &d);
        let b = slalom_to_binary(&s, &d).unwrap();
        let x = decode_seq(&f, &d).unwrap();
        if let Some(original) = s.goes_through_seq(&f).unwrap() {
            let transported = goes_through_point(&x, &b)
                .unwrap()
                .expect("capture survives translation");
            assert!(transported.threshold <= original.threshold);
        }
    }
    let elapsed = started.elapsed();
    println!("criterion 03 capture correspondence: PASS ({elapsed:?})");
}

#[test]
fn criterion_04_cover_to_slalom_construction() {
    let started = Instant::now();
    let mut rng = generate::rng(0x04);
    for _ in 0..500 {
        let pieces = rng.random_range(1..=16usize);
        let intervals = ((pieces - 1) * (pieces - 1) + 2).max(18) + rng.random_range(0..8usize);
        let deltas: Vec<u64> = (0..intervals).map(|_| rng.random_range(1..=3)).collect();
        let d = make_partition(&deltas).unwrap();
        let witness = budget_witness(&mut rng, &d);
        let cover = cover_from_witness(&mut rng, &witness, d.horizon(), pieces, 32);
        assert!(cover.pieces.iter().all(|p| p.len() <= 32));

        let b = slalom_from_cover(&cover, &witness, &d).unwrap();
        assert_eq!(
            b.check_width().unwrap(),
            WidthVerdict::Ok,
            "identity width violated"
        );

        for (n, piece) in cover.pieces.iter().enumerate() {
            let splits = split_set(piece.iter()).unwrap();
            for m in 0..d.num_intervals() {
                let upper = d.point(m + 1);
                let prefixes: BTreeSet<Word> = piece.iter().map(|x| x.restrict(0..upper)).collect();
                assert!(
                    prefixes.len() as u64 <= 1 << splits.count_below(upper),
                    "counting inequality violated at interval {m}"
                );
            }
            if n * n + 2 <= d.num_intervals() {
                for x in piece {
                    let cert = goes_through_point(x, &b)
                        .unwrap()
                        .unwrap_or_else(|| panic!("piece {n} point not captured"));
                    assert!(cert.threshold <= n * n + 1);
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}, budget 30 s");
    println!("criterion 04 cover-to-slalom construction: PASS ({elapsed:?})");
}

#[test]
fn criterion_05_witness_extraction() {
    let started = Instant::now();
    let mut rng = generate::rng(0x05);
    for _ in 0..500 {
        let deltas: Vec<u64> = (0..rng.random_range(2..10usize))
            .map(|_| rng.random_range(1..=4))
            .collect();
        let d = make_partition(&deltas).unwrap();
        let b = binary_slalom(&mut rng, &d, WidthFunction::Identity);
        let recipe = witness_from_binary_slalom(&b).unwrap();

        // Pair bound |a ∩ [0, d(n))| ≤ n(n−1)/2 along the partition points.
        let report = recipe.rapidity_report().unwrap();
        assert!(
            report.is_rapid(),
            "witness exceeds the pair bound: {report:?}"
        );

        // A point captured from k belongs to the piece of its d(k)-prefix.
        let k = rng.random_range(1..=d.num_intervals());
        let x = captured_word(&mut rng, &b, k);
        let s = x.prefix(d.point(k) as usize);
        assert!(
            recipe.piece_contains(k, &s, &x).unwrap(),
            "captured point outside its piece"
        );
    }
    let elapsed = started.elapsed();
    println!("criterion 05 witness extraction: PASS ({elapsed:?})");
}

#[test]
fn criterion_06_diagonalization() {
    let started = Instant::now();
    let mut rng = generate::rng(0x06);
    for i in 0..500 {
        let len = rng.random_range(12..=64u64);
        let pieces = rng.random_range(1..=6usize).min(len as usize);
        let block = (i % 2 == 1).then(|| rng.random_range(0..pieces));
        let inst = diagonal_instance(&mut rng, len, pieces, block);
        let outcome = diagonalize(
            &inst.characteristic,
            &inst.enumeration,
            &inst.cover,
            inst.steps,
        )
        .unwrap();
        match (inst.expected_block, outcome) {
            (None, DiagonalOutcome::Escaped { point, .. }) => {
                assert!(point.is_bitwise_subset(&inst.characteristic));
                let positions: Vec<u64> = inst.enumeration.iter().take(inst.steps).collect();
                for (stage, &position) in positions.iter().enumerate() {
                    let through = position as usize + 1;
                    for z in &inst.cover.pieces[stage] {
                        assert_ne!(
                            z.prefix(through),
                            point.prefix(through),
                            "stage {stage} piece still compatible"
                        );
                    }
                }
            }
            (
                Some(expected),
                DiagonalOutcome::Blocked {
                    stage,
                    position,
                    left,
                    right,
                    ..
                },
            ) => {
                assert_eq!(stage, expected, "blocked at the wrong stage");
                let positions: Vec<u64> = inst.enumeration.iter().collect();
                assert_eq!(position, positions[stage]);
                assert_ne!(left.bit(position as usize), right.bit(position as usize));
            }
            (expected, outcome) => panic!("expected {expected:?}, got {outcome:?}"),
        }
    }
    let elapsed = started.elapsed();
    println!("criterion 06 diagonalization: PASS ({elapsed:?})");
}

#[test]
fn criterion_07_closure_and_transport() {
    let started = Instant::now();
    let mut rng = generate::rng(0x07);

    for _ in 0..1000 {
        let len = rng.random_range(4..=16u64);
        let prefix_len = rng.random_range(0..=len / 2);
        let piece: BTreeSet<Word> = (0..rng.random_range(1..=8))
            .map(|_| generate::word(&mut rng, len))
            .collect();
        let cover = CoverFamily::new(vec![piece.clone()]);
        let s = generate::word(&mut rng, prefix_len);
        let t = generate::word(&mut rng, prefix_len);
        let z = eventual_closure_cover(&cover, 0, &s, &t, len).unwrap();
        assert!(split_set(z.iter())
            .unwrap()
            .is_subset(&split_set(piece.iter()).unwrap()));
    }

    for _ in 0..1000 {
        let c = certificate(&mut rng, 20, 4, 6).unwrap();
        let prefix_len = rng.random_range(0..=6);
        let s = generate::word(&mut rng, prefix_len);
        let moved = prepend_cover_transport(&c, &s).unwrap();
        assert!(check_certificate(&moved).is_valid());
        assert_eq!(unprepend_cover_transport(&moved, &s).unwrap(), c);
    }

    // Shift closure: a family of common tails behind every length-n prefix
    // certifies its witness as the tail witness shifted by n.
    for _ in 0..200 {
        let n = rng.random_range(1..=4u64);
        let tail_len = rng.random_range(2..=8u64);
        let tails: BTreeSet<Word> = (0..rng.random_range(2..=6))
            .map(|_| generate::word(&mut rng, tail_len))
            .collect();
        let prefixes: BTreeSet<Word> = (0..rng.random_range(1..=4))
            .map(|_| generate::word(&mut rng, n))
            .collect();
        let a = split_set(tails.iter()).unwrap();
        let tail_certificate = FilterCertificate {
            subject: tails.clone(),
            cover: CoverFamily::new(vec![tails.clone()]),
            witness: a.clone(),
        };
        let per_class: Vec<FilterCertificate> = prefixes
            .iter()
            .map(|s| prepend_cover_transport(&tail_certificate, s).unwrap())
            .collect();
        let merged = union_certificate(&per_class).unwrap();
        assert!(check_certificate(&merged).is_valid());
        assert_eq!(merged.witness, shift_set(&a, n).unwrap());
        let product: BTreeSet<Word> = prefixes
            .iter()
            .flat_map(|s| tails.iter().map(move |t| s.concat(t)))
            .collect();
        assert_eq!(merged.subject, product);
    }

    let elapsed = started.elapsed();
    println!("criterion 07 closure and transport: PASS ({elapsed:?})");
}

#[test]
fn criterion_08_union_arithmetic() {
    let started = Instant::now();
    let mut rng = generate::rng(0x08);
    for _ in 0..1000 {
        let len = rng.random_range(2..=10usize);
        let mut f = Vec::with_capacity(len);
        let mut acc = 0u64;
        for _ in 0..len {
            acc += rng.random_range(1..=6);
            f.push(acc);
        }
        let witnesses = boundary_witnesses(&mut rng, &f, len);
        let sigma = sigma_union_witness(&witnesses, &f).unwrap();
        for (n, &cut) in f.iter().enumerate() {
            let n = n as u64;
            assert!(
                sigma.union.count_below(cut) <= n * n,
                "quadratic bound violated"
            );
            for tail in &sigma.tails[n as usize..] {
                assert_eq!(tail.count_below(cut), 0, "tail reaches below its cut");
            }
        }

        let pair =
            pair_union_bound(&witnesses[0], &witnesses[1], &f, &WidthFunction::Identity).unwrap();
        assert!(
            pair.holds(),
            "pair union exceeded twice the bound: {pair:?}"
        );
    }
    let elapsed = started.elapsed();
    println!("criterion 08 union arithmetic: PASS ({elapsed:?})");
}

#[test]
fn criterion_09_encoding_pipelines() {
    let started = Instant::now();
    let mut rng = generate::rng(0x09);
    for _ in 0..200 {
        let count = rng.random_range(1..=32usize);
        let len = rng.random_range(1..=64usize);
        let fam = family(&mut rng, count, len, 30);
        let encoded = encode_family(&fam).unwrap();
        let distinct: BTreeSet<&Word> = encoded.points.iter().collect();
        assert_eq!(distinct.len(), fam.len(), "encoding not injective");

        // A slalom whose cells hold exactly the clipped values captures
        // everything with zero thresholds.
        let cells: Vec<BTreeSet<u64>> = (0..len)
            .map(|n| encoded.clipped.iter().map(|r| r.clipped[n]).collect())
            .collect();
        let width = WidthFunction::Constant(cells.iter().map(BTreeSet::len).max().unwrap() as u64);
        let slalom = Slalom { cells, width };
        let report = pull_capture_through_encoding(&fam, &slalom).unwrap();
        assert!(
            report.all_captured(),
            "uncaptured members: {:?}",
            report.uncaptured()
        );
        assert!(report
            .certificates
            .iter()
            .all(|c| c.unwrap().threshold == 0));
    }

    // Catalog lookups built from members must hit and re-validate.
    for _ in 0..50 {
        let inst = catalog_instance(&mut rng, 4, 4, 8, 12).unwrap();
        let catalog = SlalomCatalog::build(&inst.families, inst.dominators).unwrap();
        for q in &inst.queries {
            match catalog.lookup(q).unwrap() {
                CatalogLookup::Hit(hit) => {
                    let entry = &catalog.entries[hit.entry_index];
                    let clipped = raisonnier::pipelines::clip_to_bound(
                        q,
                        &catalog.dominators[hit.dominator_index],
                    )
                    .unwrap();
                    let cert = entry
                        .slalom
                        .goes_through_seq(&clipped.clipped)
                        .unwrap()
                        .expect("hit re-validates");
                    assert_eq!(cert, hit.capture);
                }
                miss => panic!("query {q:?} missed: {miss:?}"),
            }
        }
    }
    let elapsed = started.elapsed();
    println!("criterion 09 encoding pipelines: PASS ({elapsed:?})");
}

#[test]
fn criterion_10_powerset_splitting_identity() {
    let started = Instant::now();
    for mask in 0u32..256 {
        let a = NatSet::from_elements((0..8).filter(|i| (mask >> i) & 1 == 1));
        let points = powerset_points(&a, 8).unwrap();
        assert_eq!(points.len(), 1 << a.len());
        assert_eq!(
            split_set(points.iter()).unwrap(),
            a,
            "identity fails for {a:?}"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 1, "took {elapsed:?}, budget 1 s");
    println!("criterion 10 powerset splitting identity: PASS ({elapsed:?})");
}
