//! Property tests for the exact/heuristic pairs and the serialization
//! round trips.

use num_bigint::BigInt;
use proptest::prelude::*;
use treewidth_core::cuts::{self, CyclePath};
use treewidth_core::mesh::{parse_smesh, write_smesh};
use treewidth_core::powergap::{power_gap_min, PowerGapQuery};
use treewidth_core::testutil::bipyramid;

/// Exhaustive signed power-sum minimum, no pruning.
fn exhaustive_gap(p: u32, n: u32, m: u32) -> BigInt {
    let target = (BigInt::from(p).pow(n) - 1) / (p - 1);
    let h_bound = n + 1;
    let choices = 2 * (h_bound as usize + 1);
    let mut idx = vec![0usize; m as usize];
    let mut best: Option<BigInt> = None;
    loop {
        let mut sum = BigInt::from(0);
        for &i in &idx {
            let t = BigInt::from(p).pow((i / 2) as u32);
            if i % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
        }
        let diff: BigInt = &target - &sum;
        let gap = BigInt::from(diff.magnitude().clone());
        best = Some(match best {
            None => gap,
            Some(b) => b.min(gap),
        });
        let mut k = 0;
        loop {
            if k == idx.len() {
                return best.unwrap();
            }
            idx[k] += 1;
            if idx[k] < choices {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn power_gap_matches_exhaustive(p in 3u32..=5, n in 2u32..=5, m_off in 0u32..4) {
        let m = 1 + m_off % (n - 1);
        let got = power_gap_min(&PowerGapQuery::new(p, n, m)).unwrap();
        let want = exhaustive_gap(p, n, m);
        prop_assert_eq!(got.min_value, want);
        prop_assert!(got.holds);
    }

    #[test]
    fn heuristic_cut_matches_exact(n in 3usize..=7, stretch in 0.7f64..1.5, seed in 0u64..200) {
        let mesh = bipyramid(n, stretch);
        let tol = 1.0; // one face of slack
        let exact = cuts::exact_balanced_cut(&mesh, tol).unwrap();
        let found = cuts::find_balanced_cut(&mesh, tol, 6_000, seed).unwrap();
        prop_assert!((found.length - exact.length).abs() < 1e-12,
            "heuristic {} vs exact {}", found.length, exact.length);
    }

    #[test]
    fn smesh_roundtrip(n in 3usize..=9, stretch in 0.6f64..2.0) {
        let mesh = bipyramid(n, stretch);
        let text = write_smesh(&mesh);
        let parsed = parse_smesh(&text).unwrap();
        prop_assert_eq!(write_smesh(&parsed), text);
    }

    #[test]
    fn filling_of_face_set_boundary_is_min_side(n in 3usize..=8, k in 1usize..4) {
        // boundary of a connected prefix of faces fills with the smaller side
        let mesh = bipyramid(n, 1.0);
        let take = k.min(mesh.face_count() - 1);
        // faces 0..take around the top fan are connected
        let mut in_a = vec![false; mesh.face_count()];
        let mut area = 0.0f64;
        for f in 0..take {
            in_a[2 * f] = true; // top faces of the bipyramid fixture
            area += 1.0;
        }
        let boundary = cuts::boundary_edges(&mesh, &in_a).unwrap();
        let cycles = cuts::edges_to_cycles(&mesh, &boundary).unwrap();
        if cycles.len() == 1 {
            let fill = cuts::filling_area(&mesh, &cycles[0]).unwrap();
            let total = mesh.total_area();
            prop_assert!((fill - area.min(total - area)).abs() < 1e-12);
        }
    }

    #[test]
    fn cycle_vertex_sequence_threads(n in 3usize..=8) {
        let mesh = bipyramid(n, 1.0);
        // equator cycle
        let eq: Vec<u32> = (0..n as u32).collect();
        let c = CyclePath::from_edges(&mesh, eq).unwrap();
        let seq = c.vertex_sequence(&mesh);
        prop_assert_eq!(seq.len(), n);
        for (i, &e) in c.edges.iter().enumerate() {
            let edge = &mesh.edges[e as usize];
            let (a, b) = (seq[i], seq[(i + 1) % n]);
            prop_assert!(edge.touches(a) && edge.touches(b));
        }
    }
}
