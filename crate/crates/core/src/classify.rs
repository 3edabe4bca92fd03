//! Full classifications for fixed (k, i): maximal polygons, all polygons and
//! their Ehrhart quasipolynomials.

use crate::error::{Error, Result};
use crate::geom::{fits_in_strip, ScaledPolygon};
use crate::generic::k_maximal_generic;
use crate::storage::CheckpointConfig;
use crate::strip::{classify_one_interior, classify_zero_interior};
use crate::subpolygons::{subpolygons, EnumerationOptions, VolumeBuckets};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Strip sweeps; available for i ∈ {0, 1}.
    Strip,
    /// Moved-out interior hulls; k ≥ 2, or k = 1 with i ≥ 2.
    Generic,
    /// Strip for i ≤ 1, generic otherwise.
    Auto,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        match s {
            "strip" => Ok(Method::Strip),
            "generic" => Ok(Method::Generic),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::Invalid(format!("unknown method {s:?}"))),
        }
    }
}

/// All k-maximal polygons with i interior lattice points, sorted by key.
pub fn maximal_polygons(k: i64, i: u64, method: Method, checkpoint: Option<CheckpointConfig>) -> Result<Vec<ScaledPolygon>> {
    if k < 1 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let method = match method {
        Method::Auto if i <= 1 => Method::Strip,
        Method::Auto => Method::Generic,
        m => m,
    };
    let mut out = match (method, i) {
        (Method::Strip, 0) => {
            let (a, b) = classify_zero_interior(k)?;
            [a, b].concat()
        }
        (Method::Strip, 1) => {
            let (a, b, c) = classify_one_interior(k)?;
            [a, b, c].concat()
        }
        (Method::Strip, _) => return Err(Error::Invalid("the strip method covers i = 0 and i = 1".into())),
        _ => k_maximal_generic(k, i, checkpoint)?,
    };
    out.sort_by_cached_key(|p| crate::normal_form::anfk_key(p).ok());
    Ok(out)
}

/// Every k-rational polygon with i interior lattice points, as subpolygons
/// of the maximal ones. For i = 0 polygons realizable in ℝ×[0,1] are left
/// out, as there are infinitely many.
pub fn all_polygons(maximal: &[ScaledPolygon], i: u64, checkpoint: Option<CheckpointConfig>) -> Result<VolumeBuckets> {
    let opts = EnumerationOptions { preserve_interior: true, checkpoint, ..Default::default() };
    let mut out = subpolygons(maximal, &opts)?;
    if i == 0 {
        let k = out.k;
        for bucket in out.buckets.values_mut() {
            let mut keep = rustc_hash::FxHashSet::default();
            for key in bucket.drain() {
                if fits_in_strip(&key.to_polygon(k)?, 1).is_none() {
                    keep.insert(key);
                }
            }
            *bucket = keep;
        }
        out.buckets.retain(|_, b| !b.is_empty());
    }
    Ok(out)
}
