//! Moved-out polygons, the k-maximality criterion, interior hulls and the
//! internality test for lattice polygons.

use crate::error::{Error, Result};
use crate::geom::{
    ceil_div, convex_hull, ext_gcd, floor_div, gcd, lattice_points, HalfPlane, Point, ScaledPolygon,
};
use num_rational::Ratio;

/// P^(−1): the edge half-planes of kP, each relaxed by one scaled unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovedOutPolygon {
    pub k: i64,
    pub halfplanes: Vec<HalfPlane>,
}

pub fn moved_out(p: &ScaledPolygon) -> MovedOutPolygon {
    let halfplanes = p.edge_halfplanes().into_iter().map(|h| HalfPlane { n: h.n, c: h.c - 1 }).collect();
    MovedOutPolygon { k: p.k(), halfplanes }
}

/// Integer points on the boundary of ⋂ halfplanes, which must be bounded.
pub fn boundary_points(hps: &[HalfPlane]) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for (e, h) in hps.iter().enumerate() {
        let (_, s, t) = ext_gcd(h.n.x, h.n.y);
        let x0 = Point::new(s * h.c, t * h.c);
        let d = Point::new(-h.n.y, h.n.x);
        let (mut lo, mut hi) = (i128::MIN, i128::MAX);
        for (f, g) in hps.iter().enumerate() {
            if f == e {
                continue;
            }
            let base = g.eval(x0);
            let slope = g.n.dot(d);
            if slope > 0 {
                lo = lo.max(ceil_div(-base, slope));
            } else if slope < 0 {
                hi = hi.min(floor_div(-base, slope));
            } else if base < 0 {
                lo = 1;
                hi = 0;
            }
        }
        if lo == i128::MIN || hi == i128::MAX {
            return Err(Error::Invalid("half-plane region is unbounded".into()));
        }
        for l in lo..=hi {
            let x = x0.x as i128 + l * d.x as i128;
            let y = x0.y as i128 + l * d.y as i128;
            out.push(Point::new(x as i64, y as i64));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Per-edge data used by the maximality criterion.
struct EdgeData {
    hps: Vec<HalfPlane>,
    /// Edge j (from v_j to v_{j+1}) has a lattice point in its relative interior.
    edge_lattice: Vec<bool>,
    /// v_j is a lattice point.
    vertex_lattice: Vec<bool>,
}

fn edge_data(p: &ScaledPolygon) -> EdgeData {
    let v = p.vertices();
    let n = v.len();
    let k = p.k();
    let hps = p.edge_halfplanes();
    let on_lattice = |q: Point| q.x % k == 0 && q.y % k == 0;
    let mut edge_lattice = vec![false; n];
    for j in 0..n {
        let d = v[(j + 1) % n] - v[j];
        let g = gcd(d.x, d.y);
        let step = Point::new(d.x / g, d.y / g);
        // solutions are periodic with period dividing k
        for t in 1..g.min(k + 1) {
            if on_lattice(v[j] + t * step) {
                edge_lattice[j] = true;
                break;
            }
        }
    }
    let vertex_lattice = v.iter().map(|&q| on_lattice(q)).collect();
    EdgeData { hps, edge_lattice, vertex_lattice }
}

/// Whether P is k-maximal: no k-rational polygon properly containing P has
/// the same number of interior lattice points.
pub fn is_k_maximal(p: &ScaledPolygon) -> Result<bool> {
    let ed = edge_data(p);
    let n = p.len();
    let mo = moved_out(p);
    for z in boundary_points(&mo.halfplanes)? {
        let mut blocked = false;
        for j in 0..n {
            if ed.edge_lattice[j] && ed.hps[j].eval(z) < 0 {
                blocked = true;
                break;
            }
            let prev = (j + n - 1) % n;
            if ed.vertex_lattice[j] && ed.hps[prev].eval(z) < 0 && ed.hps[j].eval(z) < 0 {
                blocked = true;
                break;
            }
        }
        if !blocked {
            return Ok(false);
        }
    }
    Ok(true)
}

/// conv of the interior lattice points, in unscaled coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InteriorHull {
    Empty,
    Point(Point),
    Segment(Point, Point),
    Polygon(ScaledPolygon),
}

impl InteriorHull {
    pub fn dim(&self) -> i32 {
        match self {
            InteriorHull::Empty => -1,
            InteriorHull::Point(_) => 0,
            InteriorHull::Segment(..) => 1,
            InteriorHull::Polygon(_) => 2,
        }
    }
}

/// Interior lattice points of P in unscaled coordinates.
pub fn interior_lattice_points(p: &ScaledPolygon) -> Result<Vec<Point>> {
    let k = p.k();
    Ok(lattice_points(p)?
        .into_iter()
        .filter(|e| e.1)
        .map(|(q, _)| Point::new(q.x / k, q.y / k))
        .collect())
}

pub fn interior_hull(p: &ScaledPolygon) -> Result<InteriorHull> {
    let h = convex_hull(&interior_lattice_points(p)?);
    Ok(match h.len() {
        0 => InteriorHull::Empty,
        1 => InteriorHull::Point(h[0]),
        2 => InteriorHull::Segment(h[0], h[1]),
        _ => InteriorHull::Polygon(ScaledPolygon::new(1, h)?),
    })
}

/// Whether a lattice polygon with two-dimensional interior hull satisfies
/// P = P^(1)(−1).
///
/// P equals the region exactly when every edge half-plane of P is among the
/// moved-out half-planes of P^(1) and P lies inside that region.
pub fn is_1_maximal_lattice(p: &ScaledPolygon) -> Result<bool> {
    if p.k() != 1 {
        return Err(Error::Invalid("expected a lattice polygon with k = 1".into()));
    }
    let InteriorHull::Polygon(q) = interior_hull(p)? else {
        return Err(Error::Invalid("interior hull is not two-dimensional".into()));
    };
    let mo = moved_out(&q).halfplanes;
    let inside = p.vertices().iter().all(|&v| mo.iter().all(|h| h.contains(v)));
    let supported = p.edge_halfplanes().iter().all(|h| mo.contains(h));
    Ok(inside && supported)
}

/// Vertices of a bounded nonempty half-plane region, as exact rationals.
pub fn region_vertices(hps: &[HalfPlane]) -> Vec<(Ratio<i128>, Ratio<i128>)> {
    let mut out = Vec::new();
    for a in 0..hps.len() {
        for b in a + 1..hps.len() {
            let (h, g) = (hps[a], hps[b]);
            let det = h.n.cross(g.n);
            if det == 0 {
                continue;
            }
            // n_h·x = c_h, n_g·x = c_g
            let xn = h.c as i128 * g.n.y as i128 - g.c as i128 * h.n.y as i128;
            let yn = h.n.x as i128 * g.c as i128 - g.n.x as i128 * h.c as i128;
            let ok = hps.iter().all(|f| {
                (f.n.x as i128 * xn + f.n.y as i128 * yn - f.c as i128 * det) * det.signum() >= 0
            });
            if ok {
                out.push((Ratio::new(xn, det), Ratio::new(yn, det)));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// All integer points of a bounded half-plane region.
pub fn region_lattice_points(hps: &[HalfPlane]) -> Vec<Point> {
    let verts = region_vertices(hps);
    if verts.is_empty() {
        return Vec::new();
    }
    let ymin = verts.iter().map(|v| v.1.floor().to_integer()).min().unwrap();
    let ymax = verts.iter().map(|v| v.1.ceil().to_integer()).max().unwrap();
    let mut out = Vec::new();
    for y in ymin..=ymax {
        let (mut lo, mut hi) = (i128::MIN, i128::MAX);
        let mut empty = false;
        for h in hps {
            // n.x·x ≥ c − n.y·y
            let rhs = h.c as i128 - h.n.y as i128 * y;
            let a = h.n.x as i128;
            if a > 0 {
                lo = lo.max(ceil_div(rhs, a));
            } else if a < 0 {
                hi = hi.min(floor_div(rhs, a));
            } else if rhs > 0 {
                empty = true;
            }
        }
        if empty || lo > hi {
            continue;
        }
        for x in lo..=hi {
            out.push(Point::new(x as i64, y as i64));
        }
    }
    out
}

/// Whether the lattice polygon Q is the interior hull of some lattice polygon.
pub fn is_internal(q: &ScaledPolygon) -> Result<bool> {
    if q.k() != 1 {
        return Err(Error::Invalid("expected a lattice polygon with k = 1".into()));
    }
    let pts = region_lattice_points(&moved_out(q).halfplanes);
    let r = match ScaledPolygon::from_points(1, &pts) {
        Ok(r) => r,
        Err(Error::Degenerate) => return Ok(false),
        Err(e) => return Err(e),
    };
    let mut inner = convex_hull(&interior_lattice_points(&r)?);
    let mut mine = q.vertices().to_vec();
    inner.sort_unstable();
    mine.sort_unstable();
    Ok(inner == mine)
}

/// Q^(−1) when all of its vertices are integral.
pub fn integral_moved_out(q: &ScaledPolygon) -> Result<Option<ScaledPolygon>> {
    let verts = region_vertices(&moved_out(q).halfplanes);
    if verts.iter().any(|v| !v.0.is_integer() || !v.1.is_integer()) {
        return Ok(None);
    }
    let pts: Vec<Point> = verts.iter().map(|v| Point::new(v.0.to_integer() as i64, v.1.to_integer() as i64)).collect();
    Ok(Some(ScaledPolygon::from_points(q.k(), &pts)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(v: &[(i64, i64)]) -> ScaledPolygon {
        ScaledPolygon::lattice(v).unwrap()
    }

    #[test]
    fn moved_out_regions() {
        let mo = moved_out(&lat(&[(0, 0), (2, 0), (0, 2)]));
        let mut got = mo.halfplanes.clone();
        got.sort_by_key(|h| (h.n, h.c));
        let mut want = vec![
            HalfPlane { n: Point::new(0, 1), c: -1 },
            HalfPlane { n: Point::new(-1, -1), c: -3 },
            HalfPlane { n: Point::new(1, 0), c: -1 },
        ];
        want.sort_by_key(|h| (h.n, h.c));
        assert_eq!(got, want);
        let sq = moved_out(&lat(&[(0, 0), (1, 0), (1, 1), (0, 1)]));
        let pts = region_lattice_points(&sq.halfplanes);
        assert_eq!(pts.len(), 16);
    }

    #[test]
    fn maximality_examples() {
        assert!(is_k_maximal(&lat(&[(0, 0), (2, 0), (0, 2)])).unwrap());
        assert!(!is_k_maximal(&lat(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap());
        assert!(is_k_maximal(&lat(&[(0, 0), (3, 0), (0, 3)])).unwrap());
    }

    #[test]
    fn interior_hulls() {
        assert_eq!(interior_hull(&lat(&[(0, 0), (2, 0), (0, 2)])).unwrap(), InteriorHull::Empty);
        assert_eq!(interior_hull(&lat(&[(0, 0), (3, 0), (0, 3)])).unwrap(), InteriorHull::Point(Point::new(1, 1)));
        let h = interior_hull(&lat(&[(0, 0), (4, 0), (0, 4)])).unwrap();
        assert_eq!(h, InteriorHull::Polygon(lat(&[(1, 1), (2, 1), (1, 2)])));
    }

    #[test]
    fn one_maximal_lattice() {
        assert!(is_1_maximal_lattice(&lat(&[(0, 0), (4, 0), (0, 4)])).unwrap());
        assert!(!is_1_maximal_lattice(&lat(&[(0, 0), (3, 0), (3, 1), (0, 4)])).unwrap());
        assert!(is_1_maximal_lattice(&lat(&[(0, 0), (3, 0), (0, 3)])).is_err());
    }

    #[test]
    fn internal_examples() {
        assert!(is_internal(&lat(&[(1, 1), (2, 1), (1, 2)])).unwrap());
        assert!(is_internal(&lat(&[(0, 0), (1, 0), (0, 1)])).unwrap());
    }
}
