mod common;

use common::{random_polygon, subsets_brute};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratpoly::geom::{k_rational_points, tally};
use ratpoly::normal_form::{anfk_key, PolyKey};
use ratpoly::subpolygons::{box_classification, has_primitive_vertices, subpolygons, EnumerationOptions};
use ratpoly::ScaledPolygon;
use std::collections::HashSet;

const SEEDS: usize = 600;
const MAX_POINTS: usize = 14;

fn keys(p: &ScaledPolygon, opts: &EnumerationOptions) -> HashSet<PolyKey> {
    let out = subpolygons(std::slice::from_ref(p), opts).unwrap();
    let set: HashSet<PolyKey> = out.keys().cloned().collect();
    assert_eq!(set.len(), out.total(), "a class landed in two buckets");
    set
}

#[test]
fn matches_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seeds = 0;
    let mut with_interior = 0;
    while seeds < SEEDS {
        let k = rng.gen_range(1..=3);
        let p = random_polygon(&mut rng, k, 3..=6, 3 * k);
        if k_rational_points(&p).unwrap().len() > MAX_POINTS {
            continue;
        }
        seeds += 1;
        assert_eq!(keys(&p, &EnumerationOptions::default()), subsets_brute(&p, false), "{p:?}");
        if tally(&p).unwrap().i > 0 {
            with_interior += 1;
            let opts = EnumerationOptions { preserve_interior: true, ..Default::default() };
            assert_eq!(keys(&p, &opts), subsets_brute(&p, true), "preserve_interior {p:?}");
        }
    }
    assert!(with_interior >= 50, "only {with_interior} seeds with interior points");
}

#[test]
fn primitive_only_filters_the_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let k = rng.gen_range(1..=2);
        let p = random_polygon(&mut rng, k, 3..=6, 3 * k);
        if k_rational_points(&p).unwrap().len() > MAX_POINTS {
            continue;
        }
        let all = subpolygons(std::slice::from_ref(&p), &EnumerationOptions::default()).unwrap().polygons().unwrap();
        let want: HashSet<PolyKey> =
            all.iter().filter(|q| has_primitive_vertices(q).unwrap()).map(|q| anfk_key(q).unwrap()).collect();
        let opts = EnumerationOptions { primitive_only: true, ..Default::default() };
        assert_eq!(keys(&p, &opts), want);
    }
}

#[test]
fn box_counts_by_brute_force() {
    // Cumulative classes of lattice subpolygons of [0,m]², by subsets of
    // the (m+1)² points, for m ≤ 3.
    let mut prev = 0;
    for m in 1..=3 {
        let sq = ScaledPolygon::lattice(&[(0, 0), (m, 0), (m, m), (0, m)]).unwrap();
        let all = subsets_brute(&sq, false);
        let row = box_classification(m).unwrap();
        assert_eq!(row.count_new, all.len() - prev, "m={m}");
        prev = all.len();
    }
}
