//! Direct classification of k-maximal polygons lying in strips of lattice
//! width at most four, by sweeping supporting lines through fixed lattice
//! anchors.
//!
//! Every candidate line passes through an anchor and a k-rational point of
//! a region strictly above or below the anchor's row, so it bounds each row
//! from one side. A line through a left anchor keeps the side east of it, a
//! line through a right anchor the side west of it. The polygon cut out by
//! one line per anchor is described by a left and a right integer bound per
//! row, and the surrounding polygon is the hull of those row endpoints.

use crate::error::{Error, Result};
use crate::geom::{ceil_div, fits_in_strip, floor_div, k_rational_points, tally, Point, ScaledPolygon};
use crate::maximality::is_k_maximal;
use crate::normal_form::{anfk_key, PolyKey};
use crate::subpolygons::{subpolygons, EnumerationOptions, VolumeBuckets};
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

/// Closed half-plane to the right of the directed line v → w, in scaled
/// coordinates.
pub fn halfplane_through(v: Point, w: Point) -> Result<crate::geom::HalfPlane> {
    if v == w {
        return Err(Error::Invalid("half-plane needs two distinct points".into()));
    }
    let d = (w - v).primitive();
    let n = Point::new(d.y, -d.x);
    Ok(crate::geom::HalfPlane { n, c: n.dot(v) as i64 })
}

/// A region polygon (unscaled lattice vertices) with one excluded row.
#[derive(Clone, Debug)]
pub struct RegionSpec {
    pub name: String,
    pub verts: Vec<(i64, i64)>,
    pub excluded_row: i64,
}

impl RegionSpec {
    fn new(name: &str, verts: &[(i64, i64)], excluded_row: i64) -> Self {
        RegionSpec { name: name.to_string(), verts: verts.to_vec(), excluded_row }
    }

    /// k-rational points of the region, scaled by k.
    pub fn points(&self, k: i64) -> Result<Vec<Point>> {
        let pts: Vec<Point> = self.verts.iter().map(|&(x, y)| Point::new(x * k, y * k)).collect();
        let poly = ScaledPolygon::from_points(1, &pts)?;
        Ok(k_rational_points(&poly)?.into_iter().filter(|p| p.y != self.excluded_row * k).collect())
    }
}

/// T(i) of the strip ℝ×[−1,1].
pub fn region_t(i: i64) -> RegionSpec {
    RegionSpec::new("T", &[(0, 0), (i + 1, 0), (i + 2, 1), (0, 1)], 0)
}

/// Regions A and B for polygons without interior lattice points.
pub fn regions_zero() -> (RegionSpec, RegionSpec) {
    (
        RegionSpec::new("A", &[(0, 1), (1, 1), (2, 2), (-1, 2)], 1),
        RegionSpec::new("B", &[(0, 0), (-1, -1), (2, -1), (1, 0)], 0),
    )
}

/// Regions A and B for polygons with the single interior point 0.
pub fn regions_one() -> (RegionSpec, RegionSpec) {
    (
        RegionSpec::new("A", &[(-1, 1), (0, 1), (0, 2), (-2, 2)], 1),
        RegionSpec::new("B", &[(-1, 0), (-2, -1), (3, -1), (1, 0)], 0),
    )
}

/// Region C_q, q ∈ 1..=5, below the row y = −1.
pub fn region_c(q: i64) -> Result<RegionSpec> {
    let v: &[(i64, i64)] = match q {
        1 => &[(-3, -2), (-2, -2), (-1, -1), (-2, -1)],
        2 => &[(-2, -2), (0, -2), (0, -1), (-1, -1)],
        3 => &[(0, -2), (2, -2), (1, -1), (0, -1)],
        4 => &[(2, -2), (3, -2), (2, -1), (1, -1)],
        5 => &[(3, -2), (5, -2), (3, -1), (2, -1)],
        _ => return Err(Error::Invalid(format!("q must be in 1..=5, got {q}"))),
    };
    Ok(RegionSpec::new(&format!("C{q}"), v, -1))
}

/// Lines through one anchor and each candidate point.
#[derive(Clone, Debug)]
struct Group {
    anchor: Point,
    cands: Vec<Point>,
    left: bool,
}

/// A distinct line of a group: its row bounds and the candidates on it.
struct Line {
    bounds: Vec<i64>,
    points: Vec<Point>,
}

/// A deduplicated side profile and the line choices producing it.
struct Side {
    bounds: Vec<i64>,
    /// Each entry is one way of choosing a line per group; the requirement
    /// is that some candidate on each chosen line survives.
    combos: Vec<Vec<u32>>,
}

struct Sweep {
    y0: i64,
    rows: usize,
}

impl Sweep {
    fn lines(&self, g: &Group) -> Vec<Line> {
        let mut map: FxHashMap<Vec<i64>, Vec<Point>> = FxHashMap::default();
        for &p in &g.cands {
            let a = g.anchor;
            let dy = (p.y - a.y) as i128;
            debug_assert!(dy != 0);
            let bounds: Vec<i64> = (0..self.rows)
                .map(|r| {
                    let y = self.y0 + r as i64;
                    let num = a.x as i128 * dy + (p.x - a.x) as i128 * (y - a.y) as i128;
                    (if g.left { ceil_div(num, dy) } else { floor_div(num, dy) }) as i64
                })
                .collect();
            map.entry(bounds).or_default().push(p);
        }
        let mut out: Vec<Line> = map.into_iter().map(|(bounds, points)| Line { bounds, points }).collect();
        out.sort_by(|a, b| a.bounds.cmp(&b.bounds));
        out
    }

    fn row(&self, p: Point) -> usize {
        (p.y - self.y0) as usize
    }

    /// Combines one line per group on one side, keeping combinations in
    /// which every line still carries a candidate not cut off by the others.
    fn side(&self, groups: &[&Group], lines: &[Vec<Line>]) -> Vec<Side> {
        let left = groups[0].left;
        let mut map: FxHashMap<Vec<i64>, Vec<Vec<u32>>> = FxHashMap::default();
        let mut idx = vec![0usize; groups.len()];
        if lines.iter().any(|l| l.is_empty()) {
            return Vec::new();
        }
        loop {
            let mut bounds = lines[0][idx[0]].bounds.clone();
            for (g, &i) in idx.iter().enumerate().skip(1) {
                for (b, &o) in bounds.iter_mut().zip(&lines[g][i].bounds) {
                    *b = if left { (*b).max(o) } else { (*b).min(o) };
                }
            }
            let ok = idx.iter().enumerate().all(|(g, &i)| {
                lines[g][i].points.iter().any(|&p| {
                    let b = bounds[self.row(p)];
                    if left { p.x >= b } else { p.x <= b }
                })
            });
            if ok {
                map.entry(bounds).or_default().push(idx.iter().map(|&i| i as u32).collect());
            }
            let mut g = 0;
            loop {
                idx[g] += 1;
                if idx[g] < lines[g].len() {
                    break;
                }
                idx[g] = 0;
                g += 1;
                if g == idx.len() {
                    let mut out: Vec<Side> = map.into_iter().map(|(bounds, combos)| Side { bounds, combos }).collect();
                    out.sort_by(|a, b| a.bounds.cmp(&b.bounds));
                    return out;
                }
            }
        }
    }
}

fn satisfied(sweep: &Sweep, combos: &[Vec<u32>], lines: &[Vec<Line>], lo: &[i64], hi: &[i64]) -> bool {
    combos.iter().any(|c| {
        c.iter().enumerate().all(|(g, &i)| {
            lines[g][i as usize].points.iter().any(|&p| {
                let r = sweep.row(p);
                lo[r] <= p.x && p.x <= hi[r]
            })
        })
    })
}

#[derive(Clone, Debug, Default)]
pub struct SweepStats {
    pub left_profiles: usize,
    pub right_profiles: usize,
    pub pairs: usize,
    /// Candidate hulls checked, distinct per left profile.
    pub polygons: usize,
    pub maximal: usize,
}

/// Maximal polygons with `i` interior points among the surrounding polygons
/// of all line choices. Rows span [k·ylo, k·yhi].
fn sweep(k: i64, ylo: i64, yhi: i64, groups: &[Group], i: u64) -> Result<(FxHashSet<PolyKey>, SweepStats)> {
    let sw = Sweep { y0: ylo * k, rows: ((yhi - ylo) * k + 1) as usize };
    let left: Vec<&Group> = groups.iter().filter(|g| g.left).collect();
    let right: Vec<&Group> = groups.iter().filter(|g| !g.left).collect();
    let llines: Vec<Vec<Line>> = left.iter().map(|g| sw.lines(g)).collect();
    let rlines: Vec<Vec<Line>> = right.iter().map(|g| sw.lines(g)).collect();
    let ls = sw.side(&left, &llines);
    let rs = sw.side(&right, &rlines);
    let mut stats = SweepStats { left_profiles: ls.len(), right_profiles: rs.len(), ..Default::default() };
    // candidates are filtered per left profile; pairs almost never repeat a
    // hull, so collecting them first would only cost memory
    let results: Vec<(usize, usize, Vec<PolyKey>)> = ls
        .par_iter()
        .map(|l| -> Result<(usize, usize, Vec<PolyKey>)> {
            let mut pairs = 0;
            let mut hulls = Vec::new();
            let mut pts = Vec::with_capacity(2 * sw.rows);
            for r in &rs {
                if !satisfied(&sw, &l.combos, &llines, &l.bounds, &r.bounds)
                    || !satisfied(&sw, &r.combos, &rlines, &l.bounds, &r.bounds)
                {
                    continue;
                }
                pairs += 1;
                pts.clear();
                for row in 0..sw.rows {
                    let (a, b) = (l.bounds[row], r.bounds[row]);
                    if a <= b {
                        let y = sw.y0 + row as i64;
                        pts.push(Point::new(a, y));
                        pts.push(Point::new(b, y));
                    }
                }
                let h = crate::geom::convex_hull(&pts);
                if h.len() >= 3 {
                    hulls.push(h);
                }
            }
            hulls.sort_unstable();
            hulls.dedup();
            let mut keys = Vec::new();
            for h in &hulls {
                let p = ScaledPolygon::new(k, h.clone())?;
                if tally(&p)?.i == i && is_k_maximal(&p)? {
                    keys.push(anfk_key(&p)?);
                }
            }
            Ok((pairs, hulls.len(), keys))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out: FxHashSet<PolyKey> = FxHashSet::default();
    for (pairs, hulls, keys) in results {
        stats.pairs += pairs;
        stats.polygons += hulls;
        out.extend(keys);
    }
    stats.maximal = out.len();
    Ok((out, stats))
}

fn scaled(p: (i64, i64), k: i64) -> Point {
    Point::new(p.0 * k, p.1 * k)
}

fn group(anchor: (i64, i64), regions: &[&RegionSpec], left: bool, k: i64) -> Result<Group> {
    let mut cands = Vec::new();
    for r in regions {
        cands.extend(r.points(k)?);
    }
    let anchor = scaled(anchor, k);
    cands.retain(|p| p.y != anchor.y);
    cands.sort_unstable();
    cands.dedup();
    Ok(Group { anchor, cands, left })
}

fn sorted(k: i64, set: FxHashSet<PolyKey>) -> Result<Vec<ScaledPolygon>> {
    let mut keys: Vec<PolyKey> = set.into_iter().collect();
    keys.sort_unstable();
    keys.iter().map(|key| key.to_polygon(k)).collect()
}

fn m1p1_keys(k: i64, i: i64) -> Result<FxHashSet<PolyKey>> {
    if k < 1 || i < 0 {
        return Err(Error::Invalid("need k >= 1 and i >= 0".into()));
    }
    let t = region_t(i);
    let groups = [group((0, 0), &[&t], true, k)?, group((i + 1, 0), &[&t], false, k)?];
    Ok(sweep(k, -1, 1, &groups, i as u64)?.0)
}

/// k-maximal polygons with i interior lattice points in ℝ×[−1,1].
pub fn classify_m1p1(k: i64, i: i64) -> Result<Vec<ScaledPolygon>> {
    sorted(k, m1p1_keys(k, i)?)
}

fn sweep_zero(k: i64) -> Result<(FxHashSet<PolyKey>, SweepStats)> {
    let (a, b) = regions_zero();
    let groups = [
        group((0, 1), &[&a], true, k)?,
        group((1, 1), &[&a], false, k)?,
        group((0, 0), &[&b], true, k)?,
        group((1, 0), &[&b], false, k)?,
    ];
    sweep(k, -1, 2, &groups, 0)
}

fn sweep_one(k: i64, q: Option<i64>) -> Result<(FxHashSet<PolyKey>, SweepStats)> {
    let (a, b) = regions_one();
    let mut groups = vec![group((-1, 1), &[&a], true, k)?, group((0, 1), &[&a], false, k)?];
    let ylo = match q {
        Some(q) => {
            // a supporting line through b_j may touch P below y = −1 and
            // one through c_j above it
            let c = region_c(q)?;
            groups.push(group((-1, 0), &[&b, &c], true, k)?);
            groups.push(group((1, 0), &[&b, &c], false, k)?);
            groups.push(group((q - 3, -1), &[&c, &b], true, k)?);
            groups.push(group((q - 2, -1), &[&c, &b], false, k)?);
            -2
        }
        None => {
            groups.push(group((-1, 0), &[&b], true, k)?);
            groups.push(group((1, 0), &[&b], false, k)?);
            -1
        }
    };
    sweep(k, ylo, 2, &groups, 1)
}

/// Splits a set of classes by the smallest strip height they fit in.
fn split_by_strip(k: i64, set: FxHashSet<PolyKey>, heights: &[i64]) -> Result<Vec<Vec<ScaledPolygon>>> {
    let mut out = vec![Vec::new(); heights.len() + 1];
    for p in sorted(k, set)? {
        let slot = heights.iter().position(|&n| fits_in_strip(&p, n).is_some()).unwrap_or(heights.len());
        out[slot].push(p);
    }
    Ok(out)
}

/// k-maximal polygons without interior lattice points, split into those
/// realizable in ℝ×[−1,1] and the rest (all realizable in ℝ×[−1,2]).
pub fn classify_zero_interior(k: i64) -> Result<(Vec<ScaledPolygon>, Vec<ScaledPolygon>)> {
    let mut all = m1p1_keys(k, 0)?;
    all.extend(sweep_zero(k)?.0);
    let mut parts = split_by_strip(k, all, &[2]).map(|v| v.into_iter())?;
    let s1 = parts.next().unwrap();
    let s2 = parts.next().unwrap();
    Ok((s1, s2))
}

/// k-maximal polygons with one interior lattice point, split by the
/// strips ℝ×[−1,1], ℝ×[−1,2] and ℝ×[−2,2].
pub fn classify_one_interior(k: i64) -> Result<(Vec<ScaledPolygon>, Vec<ScaledPolygon>, Vec<ScaledPolygon>)> {
    let mut all = m1p1_keys(k, 1)?;
    all.extend(sweep_one(k, None)?.0);
    for q in 1..=5 {
        all.extend(sweep_one(k, Some(q))?.0);
    }
    let mut parts = split_by_strip(k, all, &[2, 3])?.into_iter();
    let s1 = parts.next().unwrap();
    let s2 = parts.next().unwrap();
    let s3 = parts.next().unwrap();
    Ok((s1, s2, s3))
}

/// Sweep statistics of the largest sweep for (k, i ∈ {0, 1}), for profiling.
pub fn sweep_statistics(k: i64, i: i64, q: Option<i64>) -> Result<SweepStats> {
    match i {
        0 => Ok(sweep_zero(k)?.1),
        1 => Ok(sweep_one(k, q)?.1),
        _ => Err(Error::Invalid("statistics exist for i = 0 and i = 1".into())),
    }
}

/// All k-rational polygons with i > k interior lattice points, which are
/// then collinear.
pub fn classify_collinear(k: i64, i: i64, opts: &EnumerationOptions) -> Result<VolumeBuckets> {
    if i <= k {
        return Err(Error::Invalid(format!("collinear classification needs i > k, got i={i}, k={k}")));
    }
    let seeds = classify_m1p1(k, i)?;
    let mut o = opts.clone();
    o.preserve_interior = true;
    subpolygons(&seeds, &o)
}

/// (i+1)(512i⁶ + 12928i⁵ + 137740i⁴ + 685145i³ + 1582743i² + 1665222i + 710640)/1260.
pub fn conjecture_collinear_value(i: i64) -> Result<i128> {
    if i < 3 {
        return Err(Error::Invalid("the formula is stated for i >= 3".into()));
    }
    let x = i as i128;
    let coeffs: [i128; 7] = [512, 12928, 137740, 685145, 1582743, 1665222, 710640];
    let mut poly = 0i128;
    for c in coeffs {
        poly = poly * x + c;
    }
    let num = (x + 1) * poly;
    if num % 1260 != 0 {
        return Err(Error::Verification(format!("collinear formula is not integral at i={i}")));
    }
    Ok(num / 1260)
}
