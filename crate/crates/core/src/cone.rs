//! Hirzebruch–Jung continued fractions and Hilbert bases of two-dimensional
//! cones, used to remove a vertex from a polygon without enumerating its
//! points.

use crate::error::{Error, Result};
use crate::geom::{clean_cycle, ext_gcd, gcd, Mat2, Point, ScaledPolygon};
use num_rational::Ratio;

/// cone(e₂, d·e₁ − a·e₂) together with the map U taking the input rays to
/// e₂ and (d, −a).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeStd {
    pub d: i64,
    pub a: i64,
    pub u: Mat2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HjExpansion(pub Vec<i64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasisData {
    /// u₀, …, u_{r+1} ordered from the first ray to the second.
    pub points: Vec<Point>,
    /// Marks the vertices of the convex hull of the nonzero cone points.
    pub vertex_flags: Vec<bool>,
}

impl HilbertBasisData {
    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().zip(&self.vertex_flags).filter(|(_, &f)| f).map(|(&p, _)| p)
    }
}

/// Expansion d/a = ⟦b₁, …, b_r⟧ with every b_i ≥ 2. Empty for (1, 0).
pub fn hj_expand(d: i64, a: i64) -> Result<HjExpansion> {
    if d < 1 || a < 0 || a >= d || gcd(d, a) != 1 {
        return Err(Error::Invalid(format!("need 0 <= a < d coprime, got d={d}, a={a}")));
    }
    let (mut num, mut den) = (d, a);
    let mut out = Vec::new();
    while den != 0 {
        let b = (num + den - 1) / den;
        out.push(b);
        (num, den) = (den, b * den - num);
    }
    Ok(HjExpansion(out))
}

pub fn evaluate_hj(e: &HjExpansion) -> Result<Ratio<i64>> {
    let mut it = e.0.iter().rev();
    let last = *it.next().ok_or_else(|| Error::Invalid("empty expansion".into()))?;
    let mut v = Ratio::from_integer(last);
    for &b in it {
        v = Ratio::from_integer(b) - v.recip();
    }
    Ok(v)
}

/// Normalizes the cone spanned by two primitive rays.
pub fn normalize_cone(r1: Point, r2: Point) -> Result<ConeStd> {
    if !r1.is_primitive() || !r2.is_primitive() {
        return Err(Error::Invalid("cone rays must be primitive".into()));
    }
    if r1.cross(r2) == 0 {
        return Err(Error::Invalid("cone rays are collinear".into()));
    }
    // U0 = [[q, -p], [x, y]] with x·p + y·q = 1 sends r1 = (p, q) to e₂.
    let (_, x, y) = ext_gcd(r1.x, r1.y);
    let mut u = Mat2::new(r1.y, -r1.x, x, y);
    let mut img = u.apply(r2)?;
    if img.x < 0 {
        u = Mat2::new(-u.a, -u.b, u.c, u.d);
        img.x = -img.x;
    }
    let d = img.x;
    let a = (-img.y).rem_euclid(d);
    let t = (-a - img.y) / d;
    let shear = Mat2::new(1, 0, t, 1);
    let u = shear.mul(&u)?;
    debug_assert_eq!(u.apply(r1)?, Point::new(0, 1));
    debug_assert_eq!(u.apply(r2)?, Point::new(d, -a));
    Ok(ConeStd { d, a, u })
}

/// Hilbert basis of cone(ray1, ray2), ordered from ray1 to ray2.
pub fn hilbert_basis(ray1: Point, ray2: Point) -> Result<HilbertBasisData> {
    let std = normalize_cone(ray1, ray2)?;
    let e = hj_expand(std.d, std.a)?;
    let r = e.0.len();
    let mut pts = Vec::with_capacity(r + 2);
    pts.push(Point::new(0, 1));
    pts.push(Point::new(1, 0));
    for i in 1..=r {
        let b = e.0[i - 1];
        let next = b * pts[i] - pts[i - 1];
        pts.push(next);
    }
    debug_assert_eq!(pts[r + 1], Point::new(std.d, -std.a));
    let mut flags = vec![true; r + 2];
    for (f, &b) in flags[1..=r].iter_mut().zip(&e.0) {
        *f = b != 2;
    }
    let inv = std.u.inverse_unimodular()?;
    let points = pts.into_iter().map(|p| inv.apply(p)).collect::<Result<Vec<_>>>()?;
    Ok(HilbertBasisData { points, vertex_flags: flags })
}

/// Outcome of removing one vertex from a polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shaved {
    /// conv of the remaining k-rational points, if still two-dimensional.
    pub polygon: Option<ScaledPolygon>,
    /// Some interior lattice point of P lies on the boundary of the result.
    pub boundary_hit: bool,
}

/// conv((P ∩ (1/k)Z²) ∖ {v_j}) from the Hilbert basis of the vertex cone.
pub fn shave_vertex(p: &ScaledPolygon, j: usize) -> Result<Shaved> {
    let v = p.vertices();
    let n = v.len();
    if j >= n {
        return Err(Error::Invalid(format!("vertex index {j} out of range")));
    }
    let k = p.k();
    let cur = v[j];
    let prev = v[(j + n - 1) % n];
    let next = v[(j + 1) % n];
    let hb = hilbert_basis((prev - cur).primitive(), (next - cur).primitive())?;
    let last = hb.points.len() - 1;
    let mut boundary_hit = false;
    for &u in &hb.points[1..last] {
        let q = cur + u;
        if q.x % k == 0 && q.y % k == 0 && p.contains_strictly(q) {
            boundary_hit = true;
            break;
        }
    }
    let mut cycle = Vec::with_capacity(n + hb.points.len());
    for t in 1..n {
        cycle.push(v[(j + t) % n]);
    }
    // cycle now runs next, …, prev; close it through the cone vertices
    for u in hb.vertices() {
        cycle.push(cur + u);
    }
    let cycle = clean_cycle(cycle);
    let polygon = if cycle.len() >= 3 { Some(ScaledPolygon::from_trusted(k, cycle)) } else { None };
    Ok(Shaved { polygon, boundary_hit })
}
