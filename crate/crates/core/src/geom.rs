//! Exact planar geometry on scaled polygons.
//!
//! A k-rational polygon P is stored as the integer vertex list of kP. All
//! predicates work on these scaled coordinates; the lattice Z² of the
//! unscaled plane is kZ² here.

use crate::error::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// Largest absolute coordinate accepted in a polygon.
pub const COORD_LIMIT: i64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn cross(self, o: Point) -> i128 {
        self.x as i128 * o.y as i128 - self.y as i128 * o.x as i128
    }

    pub fn dot(self, o: Point) -> i128 {
        self.x as i128 * o.x as i128 + self.y as i128 * o.y as i128
    }

    pub fn is_primitive(self) -> bool {
        gcd(self.x, self.y) == 1
    }

    /// Divides out the content of a nonzero vector.
    pub fn primitive(self) -> Point {
        let g = gcd(self.x, self.y);
        debug_assert!(g > 0);
        Point::new(self.x / g, self.y / g)
    }

    pub fn scale(self, t: i64) -> Result<Point> {
        let x = self.x.checked_mul(t).ok_or(Error::Overflow("scale"))?;
        let y = self.y.checked_mul(t).ok_or(Error::Overflow("scale"))?;
        Ok(Point::new(x, y))
    }

    fn in_range(self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<Point> for i64 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        Point::new(self * p.x, self * p.y)
    }
}

/// Orientation of the turn a → b → c.
pub fn orient(a: Point, b: Point, c: Point) -> i128 {
    (b - a).cross(c - b)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// Returns (g, x, y) with a·x + b·y = g = gcd(a, b) ≥ 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

pub fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

pub fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

pub(crate) fn to_i64(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// A 2×2 integer matrix [[a, b], [c, d]].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    pub fn apply(&self, p: Point) -> Result<Point> {
        let x = self.a as i128 * p.x as i128 + self.b as i128 * p.y as i128;
        let y = self.c as i128 * p.x as i128 + self.d as i128 * p.y as i128;
        Ok(Point::new(to_i64(x, "matrix product")?, to_i64(y, "matrix product")?))
    }

    pub fn mul(&self, o: &Mat2) -> Result<Mat2> {
        let f = |x: i128| to_i64(x, "matrix product");
        Ok(Mat2 {
            a: f(self.a as i128 * o.a as i128 + self.b as i128 * o.c as i128)?,
            b: f(self.a as i128 * o.b as i128 + self.b as i128 * o.d as i128)?,
            c: f(self.c as i128 * o.a as i128 + self.d as i128 * o.c as i128)?,
            d: f(self.c as i128 * o.b as i128 + self.d as i128 * o.d as i128)?,
        })
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<Mat2> {
        match self.det() {
            1 => Ok(Mat2::new(self.d, -self.b, -self.c, self.a)),
            -1 => Ok(Mat2::new(-self.d, self.b, self.c, -self.a)),
            _ => Err(Error::Invalid("matrix is not unimodular".into())),
        }
    }
}

/// An affine unimodular map x ↦ U·x + b in scaled coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub u: Mat2,
    pub b: Point,
}

impl AffineMap {
    pub fn new(u: Mat2, b: Point) -> Result<Self> {
        if u.det().abs() != 1 {
            return Err(Error::Invalid("affine map needs |det U| = 1".into()));
        }
        Ok(AffineMap { u, b })
    }

    pub fn identity() -> Self {
        AffineMap { u: Mat2::IDENTITY, b: Point::default() }
    }

    pub fn apply(&self, p: Point) -> Result<Point> {
        let q = self.u.apply(p)?;
        let x = q.x.checked_add(self.b.x).ok_or(Error::Overflow("affine map"))?;
        let y = q.y.checked_add(self.b.y).ok_or(Error::Overflow("affine map"))?;
        Ok(Point::new(x, y))
    }
}

/// Closed half-plane {x : ⟨n, x⟩ ≥ c} in scaled coordinates, n primitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub n: Point,
    pub c: i64,
}

impl HalfPlane {
    /// ⟨n, p⟩ − c; this is k times the lattice distance of p/k.
    pub fn eval(&self, p: Point) -> i128 {
        self.n.dot(p) - self.c as i128
    }

    pub fn contains(&self, p: Point) -> bool {
        self.eval(p) >= 0
    }
}

/// Counterclockwise convex hull starting at the lexicographically smallest
/// point. Collinear boundary points are dropped. Inputs of dimension < 2
/// return their one or two extreme points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() == 2 && hull[0] == hull[1] {
        hull.pop();
    }
    hull
}

/// Drops cyclically collinear or repeated points from a convex boundary walk.
pub(crate) fn clean_cycle(mut v: Vec<Point>) -> Vec<Point> {
    loop {
        v.dedup();
        while v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        let n = v.len();
        if n < 3 {
            return v;
        }
        match (0..n).find(|&j| orient(v[(j + n - 1) % n], v[j], v[(j + 1) % n]) == 0) {
            Some(j) => {
                v.remove(j);
            }
            None => return v,
        }
    }
}

/// Interior, boundary and total counts of Z² points of a k-rational polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeTally {
    pub i: u64,
    pub b: u64,
    pub l: u64,
}

/// A k-rational polygon given by the counterclockwise vertices of kP.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledPolygon {
    k: i64,
    verts: Vec<Point>,
}

impl ScaledPolygon {
    /// Validates that `verts` is a strictly convex counterclockwise cycle.
    pub fn new(k: i64, verts: Vec<Point>) -> Result<Self> {
        if k < 1 {
            return Err(Error::Invalid(format!("scale must be positive, got {k}")));
        }
        if verts.iter().any(|p| !p.in_range()) {
            return Err(Error::Overflow("polygon coordinates"));
        }
        let hull = convex_hull(&verts);
        if hull.len() < 3 {
            return Err(Error::Degenerate);
        }
        let n = verts.len();
        let start = hull.iter().position(|&p| p == verts[0]);
        let ok = hull.len() == n
            && start.is_some_and(|s| (0..n).all(|j| hull[(s + j) % n] == verts[j]));
        if !ok {
            return Err(Error::Invalid("vertices are not a counterclockwise convex cycle".into()));
        }
        Ok(ScaledPolygon { k, verts })
    }

    /// Convex hull of scaled points.
    pub fn from_points(k: i64, points: &[Point]) -> Result<Self> {
        if k < 1 {
            return Err(Error::Invalid(format!("scale must be positive, got {k}")));
        }
        if points.iter().any(|p| !p.in_range()) {
            return Err(Error::Overflow("polygon coordinates"));
        }
        let hull = convex_hull(points);
        if hull.len() < 3 {
            return Err(Error::Degenerate);
        }
        Ok(ScaledPolygon { k, verts: hull })
    }

    /// Builds from a convex boundary cycle of either orientation.
    pub fn from_cycle(k: i64, mut verts: Vec<Point>) -> Result<Self> {
        if verts.len() >= 3 && signed_area2(&verts) < 0 {
            verts.reverse();
        }
        ScaledPolygon::new(k, verts)
    }

    /// Lattice polygon (k = 1).
    pub fn lattice(verts: &[(i64, i64)]) -> Result<Self> {
        let pts: Vec<Point> = verts.iter().map(|&(x, y)| Point::new(x, y)).collect();
        ScaledPolygon::from_points(1, &pts)
    }

    pub(crate) fn from_trusted(k: i64, verts: Vec<Point>) -> Self {
        debug_assert!(ScaledPolygon::new(k, verts.clone()).is_ok());
        ScaledPolygon { k, verts }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// The same point set seen with another denominator.
    pub fn with_k(&self, k: i64) -> Result<Self> {
        ScaledPolygon::new(k, self.verts.clone())
    }

    /// Edge half-planes {⟨n,x⟩ ≥ c} of kP with primitive inward normals.
    pub fn edge_halfplanes(&self) -> Vec<HalfPlane> {
        let n = self.verts.len();
        (0..n)
            .map(|j| {
                let a = self.verts[j];
                let b = self.verts[(j + 1) % n];
                let d = (b - a).primitive();
                let normal = Point::new(-d.y, d.x);
                HalfPlane { n: normal, c: (normal.dot(a)) as i64 }
            })
            .collect()
    }

    /// Whether the scaled point p lies in kP.
    pub fn contains(&self, p: Point) -> bool {
        let n = self.verts.len();
        (0..n).all(|j| orient(self.verts[j], self.verts[(j + 1) % n], p) >= 0)
    }

    /// Whether the scaled point p lies in the interior of kP.
    pub fn contains_strictly(&self, p: Point) -> bool {
        let n = self.verts.len();
        (0..n).all(|j| orient(self.verts[j], self.verts[(j + 1) % n], p) > 0)
    }

    /// Translates kP by a scaled vector.
    pub fn translate(&self, t: Point) -> Result<Self> {
        let verts = self
            .verts
            .iter()
            .map(|&p| {
                let q = Point::new(
                    p.x.checked_add(t.x).ok_or(Error::Overflow("translate"))?,
                    p.y.checked_add(t.y).ok_or(Error::Overflow("translate"))?,
                );
                if q.in_range() { Ok(q) } else { Err(Error::Overflow("translate")) }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ScaledPolygon { k: self.k, verts })
    }

    /// The dilation tP, kept at the same scale k.
    pub fn dilate(&self, t: i64) -> Result<Self> {
        if t < 1 {
            return Err(Error::Invalid("dilation factor must be positive".into()));
        }
        let verts = self
            .verts
            .iter()
            .map(|&p| {
                let q = p.scale(t)?;
                if q.in_range() { Ok(q) } else { Err(Error::Overflow("dilate")) }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ScaledPolygon { k: self.k, verts })
    }

    /// Whether every vertex of kP lies in kZ², i.e. P is a lattice polygon.
    pub fn is_lattice(&self) -> bool {
        self.verts.iter().all(|p| p.x % self.k == 0 && p.y % self.k == 0)
    }

    /// The least d dividing k with dP integral.
    pub fn denominator(&self) -> i64 {
        let mut g = self.k;
        for p in &self.verts {
            g = gcd(g, gcd(p.x, p.y));
        }
        self.k / g
    }
}

pub(crate) fn signed_area2(v: &[Point]) -> i128 {
    let n = v.len();
    (0..n).map(|j| v[j].cross(v[(j + 1) % n])).sum()
}

/// Integer points of one row of a convex polygon, in units of `step`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RowSpan {
    pub lo: i64,
    pub hi: i64,
    pub lo_on_boundary: bool,
    pub hi_on_boundary: bool,
    pub all_boundary: bool,
}

/// Points (step·X, y) of the convex CCW polygon `v` on the row with scaled
/// ordinate y, as a range of X.
pub(crate) fn row_span(v: &[Point], y: i64, step: i64) -> Option<RowSpan> {
    let n = v.len();
    let mut lo = i128::MIN;
    let mut hi = i128::MAX;
    let mut all_boundary = false;
    let (mut ymin, mut ymax) = (i64::MAX, i64::MIN);
    for j in 0..n {
        let a = v[j];
        let b = v[(j + 1) % n];
        ymin = ymin.min(a.y);
        ymax = ymax.max(a.y);
        let dy = (b.y - a.y) as i128;
        let dx = (b.x - a.x) as i128;
        let num = dy * a.x as i128 + dx * (y - a.y) as i128;
        if dy > 0 {
            hi = hi.min(floor_div(num, step as i128 * dy));
        } else if dy < 0 {
            lo = lo.max(ceil_div(num, step as i128 * dy));
        } else {
            let s = dx * (y - a.y) as i128;
            if s < 0 {
                return None;
            }
            if s == 0 {
                all_boundary = true;
            }
        }
    }
    if y < ymin || y > ymax || lo > hi {
        return None;
    }
    if y == ymin || y == ymax {
        all_boundary = true;
    }
    let on_edge = |x: i128| {
        let p = Point::new((x * step as i128) as i64, y);
        (0..n).any(|j| orient(v[j], v[(j + 1) % n], p) == 0)
    };
    Some(RowSpan {
        lo: lo as i64,
        hi: hi as i64,
        lo_on_boundary: all_boundary || on_edge(lo),
        hi_on_boundary: all_boundary || on_edge(hi),
        all_boundary,
    })
}

fn y_range(v: &[Point]) -> (i64, i64) {
    let ymin = v.iter().map(|p| p.y).min().unwrap();
    let ymax = v.iter().map(|p| p.y).max().unwrap();
    (ymin, ymax)
}

/// Interior, boundary and total Z² point counts of P.
pub fn tally(p: &ScaledPolygon) -> Result<LatticeTally> {
    let k = p.k;
    let (ymin, ymax) = y_range(&p.verts);
    let (mut i, mut b) = (0u64, 0u64);
    let y0 = ceil_div(ymin as i128, k as i128) as i64;
    let y1 = floor_div(ymax as i128, k as i128) as i64;
    for yy in y0..=y1 {
        let y = yy.checked_mul(k).ok_or(Error::Overflow("tally"))?;
        let Some(r) = row_span(&p.verts, y, k) else { continue };
        let cnt = (r.hi - r.lo + 1) as u64;
        if r.all_boundary {
            b += cnt;
        } else {
            let mut bd = 0;
            if r.lo_on_boundary {
                bd += 1;
            }
            if r.hi_on_boundary && r.hi != r.lo {
                bd += 1;
            }
            let bd = bd.min(cnt);
            b += bd;
            i += cnt - bd;
        }
    }
    Ok(LatticeTally { i, b, l: i + b })
}

/// All integer points of kP (the k-rational points of P, scaled), sorted by
/// row and then by abscissa.
pub fn k_rational_points(p: &ScaledPolygon) -> Result<Vec<Point>> {
    let (ymin, ymax) = y_range(&p.verts);
    let mut out = Vec::new();
    for y in ymin..=ymax {
        if let Some(r) = row_span(&p.verts, y, 1) {
            out.extend((r.lo..=r.hi).map(|x| Point::new(x, y)));
        }
    }
    Ok(out)
}

/// Scaled points of kP lying in kZ² (lattice points of P), with a flag
/// telling whether each lies in the interior.
pub fn lattice_points(p: &ScaledPolygon) -> Result<Vec<(Point, bool)>> {
    let k = p.k;
    let (ymin, ymax) = y_range(&p.verts);
    let mut out = Vec::new();
    let y0 = ceil_div(ymin as i128, k as i128) as i64;
    let y1 = floor_div(ymax as i128, k as i128) as i64;
    for yy in y0..=y1 {
        let y = yy * k;
        let Some(r) = row_span(&p.verts, y, k) else { continue };
        for x in r.lo..=r.hi {
            let boundary = r.all_boundary
                || (x == r.lo && r.lo_on_boundary)
                || (x == r.hi && r.hi_on_boundary);
            out.push((Point::new(x * k, y), !boundary));
        }
    }
    Ok(out)
}

/// Twice the euclidean area of kP.
pub fn normalized_volume(p: &ScaledPolygon) -> Result<i64> {
    to_i64(signed_area2(&p.verts), "normalized volume")
}

/// Width of kP in direction w.
pub fn width_in_direction(verts: &[Point], w: Point) -> i128 {
    let (mut lo, mut hi) = (i128::MAX, i128::MIN);
    for &v in verts {
        let s = w.dot(v);
        lo = lo.min(s);
        hi = hi.max(s);
    }
    hi - lo
}

fn canonical_sign(w: Point) -> Point {
    if w.x < 0 || (w.x == 0 && w.y < 0) { -w } else { w }
}

/// Sign-canonical primitive directions w with width_w(kP) ≤ bound.
///
/// Soundness: pick points a, b, c of kP spanning a triangle. Any w of width
/// at most `bound` has |⟨w, b−a⟩|, |⟨w, c−a⟩| ≤ bound, which confines w to a
/// parallelogram whose bounding box is scanned.
pub fn directions_with_width_at_most(verts: &[Point], bound: i128) -> Vec<(Point, i128)> {
    let n = verts.len();
    let (mut ia, mut ib, mut best) = (0, 1, -1i128);
    for s in 0..n {
        for t in s + 1..n {
            let d = verts[t] - verts[s];
            let len = d.dot(d);
            if len > best {
                best = len;
                ia = s;
                ib = t;
            }
        }
    }
    let d1 = verts[ib] - verts[ia];
    let (mut ic, mut area) = (0, 0i128);
    for (s, &v) in verts.iter().enumerate() {
        let c = d1.cross(v - verts[ia]).abs();
        if c > area {
            area = c;
            ic = s;
        }
    }
    let d2 = verts[ic] - verts[ia];
    let det = d1.cross(d2).abs();
    debug_assert!(det > 0);
    let bx = bound * (d1.y.unsigned_abs() as i128 + d2.y.unsigned_abs() as i128) / det;
    let by = bound * (d1.x.unsigned_abs() as i128 + d2.x.unsigned_abs() as i128) / det;
    let (bx, by) = (bx as i64, by as i64);
    let mut out = Vec::new();
    for wx in 0..=bx {
        let ylo = if wx == 0 { 1 } else { -by };
        for wy in ylo..=by {
            if gcd(wx, wy) != 1 {
                continue;
            }
            let w = Point::new(wx, wy);
            if w.dot(d1).abs() > bound || w.dot(d2).abs() > bound {
                continue;
            }
            let width = width_in_direction(verts, w);
            if width <= bound {
                out.push((canonical_sign(w), width));
            }
        }
    }
    out
}

/// Lattice width of kP and every sign-canonical direction attaining it.
pub fn lattice_width(p: &ScaledPolygon) -> Result<(i64, Vec<Point>)> {
    let v = &p.verts;
    let start = [Point::new(1, 0), Point::new(0, 1), Point::new(1, 1), Point::new(1, -1)]
        .iter()
        .map(|&w| width_in_direction(v, w))
        .min()
        .unwrap();
    let cands = directions_with_width_at_most(v, start);
    let lw = cands.iter().map(|c| c.1).min().ok_or(Error::Verification("no width direction".into()))?;
    let mut dirs: Vec<Point> = cands.into_iter().filter(|c| c.1 == lw).map(|c| c.0).collect();
    dirs.sort_unstable();
    Ok((to_i64(lw, "lattice width")?, dirs))
}

/// A map (linear part unimodular, translation in kZ²) sending P into
/// ℝ × [0, n], when one exists.
pub fn fits_in_strip(p: &ScaledPolygon, n: i64) -> Option<AffineMap> {
    let k = p.k as i128;
    let bound = n as i128 * k;
    let mut cands = directions_with_width_at_most(&p.verts, bound);
    cands.sort_unstable_by_key(|c| (c.1, c.0));
    for (w, _) in cands {
        let lo = p.verts.iter().map(|&v| w.dot(v)).min().unwrap();
        let hi = p.verts.iter().map(|&v| w.dot(v)).max().unwrap();
        let c = floor_div(lo, k);
        if hi <= k * (c + n as i128) {
            let (_, s, t) = ext_gcd(w.x, w.y);
            // rows (t, -s) and w: det = t·w.y + s·w.x = 1
            let u = Mat2::new(-t, s, w.x, w.y);
            debug_assert_eq!(u.det().abs(), 1);
            let b = Point::new(0, (-(c * k)) as i64);
            return Some(AffineMap { u, b });
        }
    }
    None
}

/// Image of P under an affine unimodular map, reoriented counterclockwise.
pub fn apply_map(p: &ScaledPolygon, m: &AffineMap) -> Result<ScaledPolygon> {
    let mut verts = p.verts.iter().map(|&v| m.apply(v)).collect::<Result<Vec<_>>>()?;
    if verts.iter().any(|q| !q.in_range()) {
        return Err(Error::Overflow("apply_map"));
    }
    if m.u.det() < 0 {
        verts.reverse();
    }
    let s = (0..verts.len()).min_by_key(|&j| verts[j]).unwrap();
    verts.rotate_left(s);
    Ok(ScaledPolygon { k: p.k, verts })
}
