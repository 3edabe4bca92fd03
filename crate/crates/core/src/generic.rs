//! The general route to k-maximal polygons: lattice polygons Q grown by
//! number of lattice points, filtered to internal ones, and moved out to
//! P = (1/k)·Q^(−1). Also the LDP filter and vertex statistics.

use crate::error::{Error, Result};
use crate::geom::{convex_hull, lattice_points, tally, Point, ScaledPolygon};
use crate::maximality::{boundary_points, integral_moved_out, is_internal, is_k_maximal, moved_out};
use crate::normal_form::{anfk_key, anfk_key_of, PolyKey};
use crate::storage::{decode_key, encode_key, CheckpointConfig, RunStore};
use crate::strip::classify_m1p1;
use num_rational::Ratio;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use std::collections::BTreeMap;

/// max(k²(4i+5), ½k(k+2)²(i+1)).
pub fn volume_bound(k: i64, i: i64) -> Ratio<i64> {
    let a = Ratio::from_integer(k * k * (4 * i + 5));
    let b = Ratio::new(k * (k + 2) * (k + 2) * (i + 1), 2);
    a.max(b)
}

/// ⌊max(k²(2i+5/2), ¼k(k+2)²(i+1)) − ½⌋.
pub fn l_max(k: i64, i: i64) -> i64 {
    let m = (k * k * (8 * i + 10)).max(k * (k + 2) * (k + 2) * (i + 1));
    (m - 2).div_euclid(4)
}

/// Classes of lattice polygons (anf_1 keys) by number of lattice points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrowthFrontier {
    pub levels: BTreeMap<u64, Vec<PolyKey>>,
}

impl GrowthFrontier {
    pub fn total(&self) -> usize {
        self.levels.values().map(|v| v.len()).sum()
    }

    pub fn counts(&self) -> Vec<(u64, usize)> {
        self.levels.iter().map(|(&l, v)| (l, v.len())).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct GrowthOptions {
    /// Keep only classes that can still be (kP)^(1) for some P with i
    /// interior lattice points: some residue class mod k holds at most i
    /// of their lattice points.
    pub prune: Option<(i64, u64)>,
    pub checkpoint: Option<CheckpointConfig>,
}

/// Smallest number of lattice points of Q in a residue class of kZ².
pub fn min_coset_count(q: &ScaledPolygon, k: i64) -> Result<u64> {
    Ok(*coset_counts(q, k)?.iter().min().unwrap())
}

/// Lattice points of Q per residue (x mod k, y mod k), row-major.
fn coset_counts(q: &ScaledPolygon, k: i64) -> Result<Vec<u64>> {
    let mut c = vec![0u64; (k * k) as usize];
    for (p, _) in lattice_points(q)? {
        let (x, y) = (p.x / q.k(), p.y / q.k());
        c[(y.rem_euclid(k) * k + x.rem_euclid(k)) as usize] += 1;
    }
    Ok(c)
}

fn extensions(key: &PolyKey, l: u64, opts: &GrowthOptions) -> Result<Vec<PolyKey>> {
    let q = key.to_polygon(1)?;
    let mut out = Vec::new();
    let mut pts = q.vertices().to_vec();
    pts.push(Point::new(0, 0));
    for v in boundary_points(&moved_out(&q).halfplanes)? {
        *pts.last_mut().unwrap() = v;
        let r = ScaledPolygon::from_trusted(1, convex_hull(&pts));
        if tally(&r)?.l != l + 1 {
            continue;
        }
        if let Some((k, i)) = opts.prune {
            if min_coset_count(&r, k)? > i {
                continue;
            }
        }
        out.push(anfk_key_of(r.vertices(), 1)?);
    }
    Ok(out)
}

/// Lattice polygons with 3..=max_l lattice points, one per affine class.
/// Level l+1 is obtained from level l by adjoining single lattice points
/// on the boundary of Q^(−1).
pub fn grow_by_lattice_points(max_l: u64, opts: &GrowthOptions) -> Result<GrowthFrontier> {
    if max_l < 3 {
        return Err(Error::Invalid("need at least 3 lattice points".into()));
    }
    let mut fr = GrowthFrontier::default();
    let seed = anfk_key(&ScaledPolygon::lattice(&[(0, 0), (1, 0), (0, 1)])?)?;
    let mut store = None;
    let mut start = 3;
    if let Some(cfg) = &opts.checkpoint {
        let params = serde_json::json!({ "max_l": max_l, "prune": opts.prune });
        let (st, resumed) = RunStore::open(cfg, "grow", params)?;
        if resumed {
            for (name, lines) in st.load()? {
                let l: u64 = name.trim_start_matches("level_").parse().map_err(|_| Error::Invalid(name.clone()))?;
                let keys = lines.iter().map(|s| decode_key(s).map(|d| d.1)).collect::<Result<Vec<_>>>()?;
                fr.levels.insert(l, keys);
            }
            start = st.watermark().map_or(3, |w| w as u64);
        }
        store = Some(st);
    }
    if let std::collections::btree_map::Entry::Vacant(e) = fr.levels.entry(3) {
        let line = encode_key(1, &seed);
        e.insert(vec![seed]);
        if let Some(st) = store.as_mut() {
            st.append("level_3", &[line])?;
            st.commit(Some(3), max_l == 3)?;
        }
    }
    for l in start..max_l {
        let cur = &fr.levels[&l];
        let found: Vec<Vec<PolyKey>> = cur.par_iter().map(|key| extensions(key, l, opts)).collect::<Result<Vec<_>>>()?;
        let mut next: Vec<PolyKey> = found.into_iter().flatten().collect::<FxHashSet<_>>().into_iter().collect();
        next.sort_unstable();
        if let Some(st) = store.as_mut() {
            let lines: Vec<String> = next.iter().map(|key| encode_key(1, key)).collect();
            st.append(&format!("level_{}", l + 1), &lines)?;
            st.commit(Some(l as i64 + 1), l + 1 == max_l)?;
        }
        fr.levels.insert(l + 1, next);
    }
    Ok(fr)
}

/// Members of the frontier that are interior hulls of lattice polygons.
pub fn internal_polygons(fr: &GrowthFrontier) -> Result<GrowthFrontier> {
    let mut out = GrowthFrontier::default();
    for (&l, keys) in &fr.levels {
        let keep: Vec<Option<PolyKey>> = keys
            .par_iter()
            .map(|key| Ok(if is_internal(&key.to_polygon(1)?)? { Some(key.clone()) } else { None }))
            .collect::<Result<Vec<_>>>()?;
        out.levels.insert(l, keep.into_iter().flatten().collect());
    }
    Ok(out)
}

/// k-maximal polygons P with i interior lattice points whose Q = (kP)^(1)
/// is a frontier member.
fn maximal_from_frontier(k: i64, i: u64, fr: &GrowthFrontier) -> Result<FxHashSet<PolyKey>> {
    let keys: Vec<&PolyKey> = fr.levels.values().flatten().collect();
    let found: Vec<Vec<PolyKey>> = keys
        .par_iter()
        .map(|key| -> Result<Vec<PolyKey>> {
            let q = key.to_polygon(1)?;
            let counts = coset_counts(&q, k)?;
            if !counts.contains(&i) || !is_internal(&q)? {
                return Ok(Vec::new());
            }
            let Some(big) = integral_moved_out(&q)? else { return Ok(Vec::new()) };
            let mut out = Vec::new();
            for (idx, &c) in counts.iter().enumerate() {
                if c != i {
                    continue;
                }
                // residue (x, y) holds i points; shift it onto kZ²
                let (rx, ry) = ((idx as i64) % k, (idx as i64) / k);
                let shifted = big.translate(Point::new(-rx, -ry))?;
                let p = ScaledPolygon::new(k, shifted.vertices().to_vec())?;
                if tally(&p)?.i != i {
                    return Err(Error::Verification("interior count differs from residue count".into()));
                }
                if is_k_maximal(&p)? {
                    out.push(anfk_key(&p)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// All k-maximal polygons with i interior lattice points: those from the
/// frontier up to l_max(k, i), and those in ℝ×[−1,1]. Lattice polygons
/// (k = 1) are covered for i ≥ 2.
pub fn k_maximal_generic(k: i64, i: u64, checkpoint: Option<CheckpointConfig>) -> Result<Vec<ScaledPolygon>> {
    if k < 1 || (k == 1 && i < 2) {
        return Err(Error::Invalid(format!("the general route needs k >= 2, or k = 1 with i >= 2; got k={k}, i={i}")));
    }
    let opts = GrowthOptions { prune: Some((k, i)), checkpoint };
    let fr = grow_by_lattice_points(l_max(k, i as i64).max(3) as u64, &opts)?;
    let mut all = maximal_from_frontier(k, i, &fr)?;
    for p in classify_m1p1(k, i as i64)? {
        all.insert(anfk_key(&p)?);
    }
    let mut keys: Vec<PolyKey> = all.into_iter().collect();
    keys.sort_unstable();
    keys.iter().map(|key| key.to_polygon(k)).collect()
}

/// Translates P so that its unique interior lattice point is the origin.
pub fn center_interior_point(p: &ScaledPolygon) -> Result<ScaledPolygon> {
    let inner = crate::maximality::interior_lattice_points(p)?;
    if inner.len() != 1 {
        return Err(Error::Invalid(format!("expected one interior lattice point, found {}", inner.len())));
    }
    p.translate(Point::new(-inner[0].x * p.k(), -inner[0].y * p.k()))
}

/// Keeps the polygons whose scaled vertices are primitive. Every input must
/// have the origin as its only interior lattice point.
pub fn ldp_filter(polys: &[ScaledPolygon]) -> Result<Vec<ScaledPolygon>> {
    let mut out = Vec::new();
    for p in polys {
        let inner = crate::maximality::interior_lattice_points(p)?;
        if inner != [Point::new(0, 0)] {
            return Err(Error::Invalid("polygon does not have the origin as its only interior lattice point".into()));
        }
        if p.vertices().iter().all(|v| v.is_primitive()) {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Largest vertex count and how many polygons attain it.
pub fn vertex_statistics(polys: &[ScaledPolygon]) -> (usize, usize) {
    let n = polys.iter().map(|p| p.len()).max().unwrap_or(0);
    (n, polys.iter().filter(|p| p.len() == n).count())
}
