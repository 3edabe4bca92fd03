//! All subpolygons of a seed set up to k-affine equivalence, enumerated by
//! descending normalized volume.

use crate::cone::shave_vertex;
use crate::error::{Error, Result};
use crate::geom::{normalized_volume, Point, ScaledPolygon};
use crate::maximality::interior_lattice_points;
use crate::normal_form::{anfk_key, anfk_key_of, PolyKey};
use crate::storage::{decode_key, encode_key, fingerprint, CheckpointConfig, RunStore};
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use std::collections::BTreeMap;
use std::sync::Arc;

pub type Predicate = Arc<dyn Fn(&ScaledPolygon) -> bool + Send + Sync>;

#[derive(Clone, Default)]
pub struct EnumerationOptions {
    /// Drop shavings that move an interior lattice point to the boundary.
    pub preserve_interior: bool,
    /// Keep only polygons with one interior lattice point whose scaled
    /// vertices are primitive relative to it. Applied to the final output.
    pub primitive_only: bool,
    /// Extra filter applied to every shaving before insertion.
    pub custom_predicate: Option<Predicate>,
    /// Label describing the predicate, recorded in checkpoints.
    pub predicate_label: Option<String>,
    pub checkpoint: Option<CheckpointConfig>,
}

/// Canonical forms grouped by normalized volume.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VolumeBuckets {
    pub k: i64,
    pub buckets: BTreeMap<i64, FxHashSet<PolyKey>>,
}

impl VolumeBuckets {
    pub fn new(k: i64) -> Self {
        VolumeBuckets { k, buckets: BTreeMap::new() }
    }

    pub fn total(&self) -> usize {
        self.buckets.values().map(|b| b.len()).sum()
    }

    pub fn contains(&self, key: &PolyKey) -> bool {
        self.buckets.values().any(|b| b.contains(key))
    }

    pub fn keys(&self) -> impl Iterator<Item = &PolyKey> {
        self.buckets.values().flat_map(|b| b.iter())
    }

    /// All keys in a deterministic order.
    pub fn sorted_keys(&self) -> Vec<PolyKey> {
        let mut v: Vec<PolyKey> = self.keys().cloned().collect();
        v.sort_unstable();
        v
    }

    pub fn polygons(&self) -> Result<Vec<ScaledPolygon>> {
        self.sorted_keys().iter().map(|key| key.to_polygon(self.k)).collect()
    }

    fn insert(&mut self, vol: i64, key: PolyKey) -> bool {
        self.buckets.entry(vol).or_default().insert(key)
    }
}

fn shave_children(p: &ScaledPolygon, opts: &EnumerationOptions) -> Result<Vec<(i64, PolyKey)>> {
    let mut out = Vec::with_capacity(p.len());
    for j in 0..p.len() {
        let s = shave_vertex(p, j)?;
        let Some(q) = s.polygon else { continue };
        if opts.preserve_interior && s.boundary_hit {
            continue;
        }
        if let Some(pred) = &opts.custom_predicate {
            if !pred(&q) {
                continue;
            }
        }
        out.push((normalized_volume(&q)?, anfk_key_of(q.vertices(), q.k())?));
    }
    Ok(out)
}

/// Whether P has exactly one interior lattice point z and every vertex of kP
/// minus kz is primitive.
pub fn has_primitive_vertices(p: &ScaledPolygon) -> Result<bool> {
    let inner = interior_lattice_points(p)?;
    if inner.len() != 1 {
        return Ok(false);
    }
    let z = Point::new(inner[0].x * p.k(), inner[0].y * p.k());
    Ok(p.vertices().iter().all(|&v| (v - z).is_primitive()))
}

/// Algorithm 1: every two-dimensional subpolygon of the seeds, one per
/// k-affine class, grouped by Vol_k.
pub fn subpolygons(seeds: &[ScaledPolygon], opts: &EnumerationOptions) -> Result<VolumeBuckets> {
    let k = seeds.first().map_or(1, |s| s.k());
    if seeds.iter().any(|s| s.k() != k) {
        return Err(Error::Invalid("seeds have different k".into()));
    }
    let mut seed_keys = Vec::with_capacity(seeds.len());
    for s in seeds {
        seed_keys.push((normalized_volume(s)?, anfk_key(s)?));
    }
    let mut out = VolumeBuckets::new(k);
    let mut store = None;
    let mut watermark = i64::MAX;
    if let Some(cfg) = &opts.checkpoint {
        let mut lines: Vec<String> = seed_keys.iter().map(|(_, key)| encode_key(k, key)).collect();
        lines.sort_unstable();
        let params = serde_json::json!({
            "k": k,
            "seeds": fingerprint(lines.iter().map(|s| s.as_str())),
            "preserve_interior": opts.preserve_interior,
            "primitive_only": opts.primitive_only,
            "predicate": opts.predicate_label,
        });
        let (st, resumed) = RunStore::open(cfg, "subpolygons", params)?;
        if resumed {
            for (name, lines) in st.load()? {
                let vol: i64 = name.trim_start_matches("vol_").parse().map_err(|_| Error::Invalid(name.clone()))?;
                for l in lines {
                    out.insert(vol, decode_key(&l)?.1);
                }
            }
            watermark = st.watermark().unwrap_or(i64::MAX);
            if st.is_complete() {
                watermark = 0;
            }
        }
        store = Some((st, resumed));
    }
    let resumed = store.as_ref().is_some_and(|s| s.1);
    if !resumed {
        let mut fresh: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for (vol, key) in seed_keys {
            if out.insert(vol, key.clone()) {
                fresh.entry(vol).or_default().push(encode_key(k, &key));
            }
        }
        if let Some((st, _)) = store.as_mut() {
            for (vol, mut lines) in fresh {
                lines.sort_unstable();
                st.append(&format!("vol_{vol}"), &lines)?;
            }
            st.commit(Some(i64::MAX), false)?;
        }
    }
    while let Some(&a) = out.buckets.range(..=watermark).next_back().map(|(a, _)| a) {
        if a < 1 {
            break;
        }
        let work: Vec<PolyKey> = out.buckets[&a].iter().cloned().collect();
        let mut added: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for chunk in work.chunks(8192) {
            let children: Vec<Vec<(i64, PolyKey)>> = chunk
                .par_iter()
                .map(|key| shave_children(&key.to_polygon(k)?, opts))
                .collect::<Result<Vec<_>>>()?;
            for (vol, key) in children.into_iter().flatten() {
                debug_assert!(vol < a);
                if out.insert(vol, key.clone()) && store.is_some() {
                    added.entry(vol).or_default().push(encode_key(k, &key));
                }
            }
        }
        watermark = a - 1;
        if let Some((st, _)) = store.as_mut() {
            for (vol, mut lines) in added {
                lines.sort_unstable();
                st.append(&format!("vol_{vol}"), &lines)?;
            }
            st.commit(Some(watermark), false)?;
        }
    }
    if let Some((st, _)) = store.as_mut() {
        if !st.is_complete() {
            st.commit(Some(0), true)?;
        }
    }
    if opts.primitive_only {
        for bucket in out.buckets.values_mut() {
            let mut keep = FxHashSet::default();
            for key in bucket.drain() {
                if has_primitive_vertices(&key.to_polygon(k)?)? {
                    keep.insert(key);
                }
            }
            *bucket = keep;
        }
    }
    out.buckets.retain(|_, b| !b.is_empty());
    Ok(out)
}

/// One row of the box table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxRow {
    pub m: i64,
    /// Classes in [0,m]² that do not fit into [0,m−1]².
    pub count_new: usize,
    /// Largest vertex count among the new classes.
    pub n_max: usize,
    /// How many new classes attain it.
    pub m_count: usize,
}

fn square(m: i64) -> Result<ScaledPolygon> {
    ScaledPolygon::lattice(&[(0, 0), (m, 0), (m, m), (0, m)])
}

/// Rows m = 1..=max_m of the box table.
pub fn box_table(max_m: i64) -> Result<Vec<BoxRow>> {
    let mut prev: FxHashSet<PolyKey> = FxHashSet::default();
    let mut rows = Vec::new();
    for m in 1..=max_m {
        let all = subpolygons(&[square(m)?], &EnumerationOptions::default())?;
        let cur: FxHashSet<PolyKey> = all.keys().cloned().collect();
        let new: Vec<&PolyKey> = cur.iter().filter(|key| !prev.contains(*key)).collect();
        let n_max = new.iter().map(|key| key.num_vertices()).max().unwrap_or(0);
        let m_count = new.iter().filter(|key| key.num_vertices() == n_max).count();
        rows.push(BoxRow { m, count_new: new.len(), n_max, m_count });
        prev = cur;
    }
    Ok(rows)
}

pub fn box_classification(m: i64) -> Result<BoxRow> {
    if m < 1 {
        return Err(Error::Invalid("box size must be positive".into()));
    }
    Ok(*box_table(m)?.last().unwrap())
}
