//! Ehrhart quasipolynomials t ↦ |tP ∩ Z²| of k-rational polygons.

use crate::error::{Error, Result};
use crate::geom::{normalized_volume, tally, ScaledPolygon};
use num_rational::Ratio;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use std::fmt;

type Q = Ratio<i128>;

/// ehr(t) = A·t² + c1[t mod period]·t + c2[t mod period], stored with the
/// minimal period.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuasiPolynomial {
    pub area: Q,
    pub period: i64,
    pub c1: Vec<Q>,
    pub c2: Vec<Q>,
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Q]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}|{}|{}", self.area, self.period, list(&self.c1), list(&self.c2))
    }
}

fn count(p: &ScaledPolygon, t: i64) -> Result<i128> {
    Ok(tally(&p.dilate(t)?)?.l as i128)
}

pub fn ehrhart(p: &ScaledPolygon) -> Result<QuasiPolynomial> {
    let k = p.k();
    let area = Q::new(normalized_volume(p)? as i128, 2 * (k as i128) * (k as i128));
    let mut c1 = Vec::with_capacity(k as usize);
    let mut c2 = Vec::with_capacity(k as usize);
    for r in 0..k {
        let t1 = if r == 0 { k } else { r };
        let t2 = t1 + k;
        let t3 = t2 + k;
        let rest = |t: i64| -> Result<Q> { Ok(Q::from_integer(count(p, t)?) - area * Q::from_integer((t as i128) * (t as i128))) };
        let (y1, y2) = (rest(t1)?, rest(t2)?);
        let a = (y2 - y1) / Q::from_integer(k as i128);
        let b = y1 - a * Q::from_integer(t1 as i128);
        if rest(t3)? != a * Q::from_integer(t3 as i128) + b {
            return Err(Error::Verification(format!("Ehrhart samples disagree at t={t3}")));
        }
        c1.push(a);
        c2.push(b);
    }
    let period = (1..=k)
        .find(|&d| k % d == 0 && (0..k as usize).all(|r| c1[r] == c1[r % d as usize] && c2[r] == c2[r % d as usize]))
        .unwrap();
    c1.truncate(period as usize);
    c2.truncate(period as usize);
    Ok(QuasiPolynomial { area, period, c1, c2 })
}

pub fn evaluate(q: &QuasiPolynomial, t: i64) -> Result<i128> {
    if t < 1 {
        return Err(Error::Invalid("t must be positive".into()));
    }
    let r = (t % q.period) as usize;
    let tq = Q::from_integer(t as i128);
    let v = q.area * tq * tq + q.c1[r] * tq + q.c2[r];
    if !v.is_integer() {
        return Err(Error::Verification(format!("quasipolynomial value {v} at t={t} is not an integer")));
    }
    Ok(v.to_integer())
}

/// Number of distinct quasipolynomials, optionally only over polygons with
/// at least `min_boundary` boundary lattice points.
pub fn distinct_count(polys: &[ScaledPolygon], min_boundary: Option<u64>) -> Result<usize> {
    let qs: Vec<Option<QuasiPolynomial>> = polys
        .par_iter()
        .map(|p| {
            if let Some(b) = min_boundary {
                if tally(p)?.b < b {
                    return Ok(None);
                }
            }
            ehrhart(p).map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(qs.into_iter().flatten().collect::<FxHashSet<_>>().len())
}

/// (9/2)i³ + 36i² + (175/2)i + 53.
pub fn conjecture_ehrhart_value(i: i64) -> Result<i128> {
    if i < 2 {
        return Err(Error::Invalid("the formula is stated for i >= 2".into()));
    }
    let x = i as i128;
    let num = 9 * x * x * x + 72 * x * x + 175 * x + 106;
    if num % 2 != 0 {
        return Err(Error::Verification(format!("Ehrhart formula is not integral at i={i}")));
    }
    Ok(num / 2)
}
