#![allow(dead_code)]

use rand::Rng;
use ratpoly::geom::{convex_hull, k_rational_points, orient, tally, AffineMap, Mat2};
use ratpoly::normal_form::{anfk_key, PolyKey};
use std::collections::HashSet;
use ratpoly::{Point, ScaledPolygon};
use std::ops::RangeInclusive;

/// Hull of a random number (in `n`) of scaled points in [0, bound]²,
/// retried until 2D.
pub fn random_polygon<R: Rng>(rng: &mut R, k: i64, n: RangeInclusive<usize>, bound: i64) -> ScaledPolygon {
    loop {
        let n = rng.gen_range(n.clone());
        let pts: Vec<Point> = (0..n).map(|_| Point::new(rng.gen_range(0..=bound), rng.gen_range(0..=bound))).collect();
        if let Ok(p) = ScaledPolygon::from_points(k, &pts) {
            return p;
        }
    }
}

/// Product of a few random elementary matrices and a sign flip.
pub fn random_unimodular<R: Rng>(rng: &mut R, steps: usize, entry: i64) -> Mat2 {
    let mut u = Mat2::IDENTITY;
    for _ in 0..steps {
        let t = rng.gen_range(-entry..=entry);
        let e = if rng.gen_bool(0.5) { Mat2::new(1, t, 0, 1) } else { Mat2::new(1, 0, t, 1) };
        u = e.mul(&u).unwrap();
    }
    if rng.gen_bool(0.5) {
        u = Mat2::new(0, 1, 1, 0).mul(&u).unwrap();
    }
    u
}

/// Random map x ↦ Ux + k·t in scaled coordinates.
pub fn random_map<R: Rng>(rng: &mut R, k: i64) -> AffineMap {
    let u = random_unimodular(rng, 3, 2);
    let t = Point::new(k * rng.gen_range(-3..=3), k * rng.gen_range(-3..=3));
    AffineMap::new(u, t).unwrap()
}

/// Whether some map x ↦ Ux + t (U unimodular, t ∈ kZ²) sends the vertex
/// cycle `a` onto `b` index by index. U is fixed by the two edges at a₀.
pub fn maps_cycle_onto(a: &[Point], b: &[Point], k: i64) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let (e1, e2) = (a[1] - a[0], a[n - 1] - a[0]);
    let (f1, f2) = (b[1] - b[0], b[n - 1] - b[0]);
    let det = e1.x * e2.y - e1.y * e2.x;
    // U = F · E⁻¹ with E = [e1 e2], F = [f1 f2] as columns.
    let num = [
        f1.x * e2.y - f2.x * e1.y,
        -f1.x * e2.x + f2.x * e1.x,
        f1.y * e2.y - f2.y * e1.y,
        -f1.y * e2.x + f2.y * e1.x,
    ];
    if num.iter().any(|v| v % det != 0) {
        return false;
    }
    let u = Mat2::new(num[0] / det, num[1] / det, num[2] / det, num[3] / det);
    if u.det().abs() != 1 {
        return false;
    }
    let t = b[0] - u.apply(a[0]).unwrap();
    if t.x.rem_euclid(k) != 0 || t.y.rem_euclid(k) != 0 {
        return false;
    }
    (0..n).all(|j| u.apply(a[j]).unwrap() + t == b[j])
}

/// The vertex cycle of `b` read from `s` in either direction.
pub fn relabelings(b: &[Point]) -> Vec<Vec<Point>> {
    let n = b.len();
    let mut out = Vec::with_capacity(2 * n);
    for s in 0..n {
        out.push((0..n).map(|j| b[(s + j) % n]).collect());
        out.push((0..n).map(|j| b[(s + n - j) % n]).collect());
    }
    out
}

/// Decides k-affine equivalence by matching vertex cycles directly.
pub fn equivalent_by_orbit(p: &ScaledPolygon, q: &ScaledPolygon) -> bool {
    p.k() == q.k() && relabelings(q.vertices()).iter().any(|c| maps_cycle_onto(p.vertices(), c, p.k()))
}

/// Scaled coordinates of the k-rational points of P, by scanning the
/// bounding box.
pub fn rational_points_brute(p: &ScaledPolygon) -> Vec<Point> {
    let v = p.vertices();
    let (x0, x1) = (v.iter().map(|q| q.x).min().unwrap(), v.iter().map(|q| q.x).max().unwrap());
    let (y0, y1) = (v.iter().map(|q| q.y).min().unwrap(), v.iter().map(|q| q.y).max().unwrap());
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            if p.contains(Point::new(x, y)) {
                out.push(Point::new(x, y));
            }
        }
    }
    out
}

/// Interior and total counts of Z² points, by scanning multiples of k.
pub fn lattice_counts_brute(p: &ScaledPolygon) -> (u64, u64) {
    let k = p.k();
    let (mut i, mut l) = (0, 0);
    for q in rational_points_brute(p) {
        if q.x.rem_euclid(k) == 0 && q.y.rem_euclid(k) == 0 {
            l += 1;
            if p.contains_strictly(q) {
                i += 1;
            }
        }
    }
    (i, l)
}

/// Lattice points of cone(r1, r2) in the closed parallelogram on the rays.
pub fn parallelogram_points(r1: Point, r2: Point) -> Vec<Point> {
    let det = r1.cross(r2);
    let xs = [0, r1.x, r2.x, r1.x + r2.x];
    let ys = [0, r1.y, r2.y, r1.y + r2.y];
    let mut out = Vec::new();
    for x in *xs.iter().min().unwrap()..=*xs.iter().max().unwrap() {
        for y in *ys.iter().min().unwrap()..=*ys.iter().max().unwrap() {
            let p = Point::new(x, y);
            // p = λ1 r1 + λ2 r2 with 0 ≤ λ ≤ 1
            let l1 = p.cross(r2) * det.signum();
            let l2 = r1.cross(p) * det.signum();
            if p != Point::new(0, 0) && l1 >= 0 && l2 >= 0 && l1 <= det.abs() && l2 <= det.abs() {
                out.push(p);
            }
        }
    }
    out
}

/// Irreducible elements of the cone monoid, ordered from r1 to r2. Every
/// one lies in the parallelogram, and so does every summand.
pub fn hilbert_brute(r1: Point, r2: Point) -> Vec<Point> {
    let pts = parallelogram_points(r1, r2);
    let set: std::collections::HashSet<Point> = pts.iter().copied().collect();
    let mut out: Vec<Point> = pts
        .iter()
        .copied()
        .filter(|&p| !pts.iter().any(|&q| q != p && set.contains(&(p - q))))
        .collect();
    let sign = r1.cross(r2).signum();
    out.sort_by(|&a, &b| (0i128).cmp(&(a.cross(b) * sign)));
    out
}

/// Which of the ordered basis points are vertices of the hull of the
/// nonzero cone points: the compact boundary is made of basis points, so a
/// non-vertex lies strictly between two other ones.
pub fn vertex_flags_brute(basis: &[Point]) -> Vec<bool> {
    basis
        .iter()
        .map(|&p| {
            !basis.iter().any(|&a| {
                basis.iter().any(|&b| {
                    a != p && b != p && orient(a, b, p) == 0 && (a - p).dot(b - p) < 0
                })
            })
        })
        .collect()
}

/// Classes of conv(S) over all subsets S of the k-rational points of P.
pub fn subsets_brute(p: &ScaledPolygon, same_interior: bool) -> HashSet<PolyKey> {
    let pts = k_rational_points(p).unwrap();
    let i0 = tally(p).unwrap().i;
    let mut hulls: HashSet<Vec<Point>> = HashSet::new();
    for mask in 1u32..(1 << pts.len()) {
        if mask.count_ones() < 3 {
            continue;
        }
        let sub: Vec<Point> = (0..pts.len()).filter(|&j| mask >> j & 1 == 1).map(|j| pts[j]).collect();
        let h = convex_hull(&sub);
        if h.len() >= 3 {
            hulls.insert(h);
        }
    }
    hulls
        .into_iter()
        .map(|h| ScaledPolygon::new(p.k(), h).unwrap())
        .filter(|q| !same_interior || tally(q).unwrap().i == i0)
        .map(|q| anfk_key(&q).unwrap())
        .collect()
}
