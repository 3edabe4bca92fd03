//! Hermite normal forms and the unimodular / affine normal forms of vertex
//! matrices.
//!
//! Matrices are 2×n with the polygon vertices as columns. Candidates are
//! compared by their row-major flattened entries.

use crate::error::{Error, Result};
use crate::geom::{ext_gcd, floor_div, to_i64, Mat2, Point, ScaledPolygon};
use std::cmp::Ordering;
use std::fmt;

/// Row-style Hermite normal form H = U·M with its witness U.
///
/// Pivot columns j1 < j2: H[1][j1] > 0, H[2][j1] = 0, H[2][j2] > 0 and
/// 0 ≤ H[1][j2] < H[2][j2].
pub fn hnf(cols: &[Point]) -> Result<(Vec<Point>, Mat2)> {
    let u = hnf_transform(cols)?;
    let h = cols.iter().map(|&c| u.apply(c)).collect::<Result<Vec<_>>>()?;
    Ok((h, u))
}

/// The unimodular U bringing `cols` to Hermite normal form.
pub fn hnf_transform(cols: &[Point]) -> Result<Mat2> {
    let rank_err = || Error::Invalid("matrix has rank < 2".into());
    let j1 = cols.iter().position(|c| c.x != 0 || c.y != 0).ok_or_else(rank_err)?;
    let (a, c) = (cols[j1].x, cols[j1].y);
    let (g, x, y) = ext_gcd(a, c);
    let (mut p, mut q) = (-c / g, a / g);
    let mut found = None;
    for col in &cols[j1 + 1..] {
        let r2 = p as i128 * col.x as i128 + q as i128 * col.y as i128;
        if r2 != 0 {
            found = Some((*col, r2));
            break;
        }
    }
    let (col, mut r2) = found.ok_or_else(rank_err)?;
    if r2 < 0 {
        p = -p;
        q = -q;
        r2 = -r2;
    }
    let r1 = x as i128 * col.x as i128 + y as i128 * col.y as i128;
    let t = floor_div(r1, r2);
    let a1 = to_i64(x as i128 - t * p as i128, "hnf")?;
    let b1 = to_i64(y as i128 - t * q as i128, "hnf")?;
    Ok(Mat2::new(a1, b1, p, q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormKind {
    Unimodular,
    Affine1,
    AffineK,
}

/// A normal form: the canonical vertex matrix of an equivalence class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub kind: FormKind,
    pub k: i64,
    /// Columns of the normal form, in the canonical boundary order.
    pub cols: Vec<Point>,
}

impl CanonicalForm {
    /// Row-major flattened entries.
    pub fn flat(&self) -> Vec<i64> {
        flatten(&self.cols)
    }

    /// The polygon with these vertices, reoriented counterclockwise.
    pub fn to_polygon(&self) -> Result<ScaledPolygon> {
        ScaledPolygon::from_cycle(self.k, self.cols.clone())
    }

    pub fn key(&self) -> Result<PolyKey> {
        PolyKey::from_cols(&self.cols)
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.kind, self.k, self.cols.len())
            .cmp(&(other.kind, other.k, other.cols.len()))
            .then_with(|| self.flat().cmp(&other.flat()))
    }
}

fn flatten(cols: &[Point]) -> Vec<i64> {
    cols.iter().map(|c| c.x).chain(cols.iter().map(|c| c.y)).collect()
}

/// Compact dedup key: the row-major entries of a normal form as i32.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyKey(pub Box<[i32]>);

impl PolyKey {
    pub fn from_cols(cols: &[Point]) -> Result<PolyKey> {
        let n = cols.len();
        let mut v = vec![0i32; 2 * n];
        for (j, c) in cols.iter().enumerate() {
            v[j] = i32::try_from(c.x).map_err(|_| Error::Overflow("normal form key"))?;
            v[n + j] = i32::try_from(c.y).map_err(|_| Error::Overflow("normal form key"))?;
        }
        Ok(PolyKey(v.into_boxed_slice()))
    }

    pub fn cols(&self) -> Vec<Point> {
        let n = self.0.len() / 2;
        (0..n).map(|j| Point::new(self.0[j] as i64, self.0[n + j] as i64)).collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.0.len() / 2
    }

    pub fn to_polygon(&self, k: i64) -> Result<ScaledPolygon> {
        ScaledPolygon::from_cycle(k, self.cols())
    }
}

impl fmt::Debug for PolyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyKey({:?})", self.cols())
    }
}

/// One candidate ordering V_i^(s): start vertex i, direction s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub start: usize,
    pub forward: bool,
    pub u: Mat2,
}

/// Result of maximizing Hermite forms over a set of candidate orderings.
struct Search {
    best: Vec<i64>,
    argmax: Vec<Candidate>,
    evaluated: usize,
}

fn search(verts: &[Point], translate: bool, starts: &[usize]) -> Result<Search> {
    let n = verts.len();
    let mut seq = vec![Point::default(); n];
    let mut cand = vec![0i64; 2 * n];
    let mut best: Vec<i64> = Vec::new();
    let mut argmax = Vec::new();
    let mut evaluated = 0;
    for &i in starts {
        for forward in [true, false] {
            let origin = if translate { verts[i] } else { Point::default() };
            for (j, s) in seq.iter_mut().enumerate() {
                let idx = if forward { (i + j) % n } else { (i + n - j) % n };
                *s = verts[idx] - origin;
            }
            let u = hnf_transform(&seq)?;
            evaluated += 1;
            for j in 0..n {
                let p = u.apply(seq[j])?;
                cand[j] = p.x;
                cand[n + j] = p.y;
            }
            let c = Candidate { start: i, forward, u };
            match cand.as_slice().cmp(best.as_slice()) {
                Ordering::Greater => {
                    best.clear();
                    best.extend_from_slice(&cand);
                    argmax.clear();
                    argmax.push(c);
                }
                Ordering::Equal => argmax.push(c),
                Ordering::Less => {}
            }
        }
    }
    Ok(Search { best, argmax, evaluated })
}

fn unflatten(flat: &[i64]) -> Vec<Point> {
    let n = flat.len() / 2;
    (0..n).map(|j| Point::new(flat[j], flat[n + j])).collect()
}

fn all_starts(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Unimodular normal form: max over rotations and reversal of the HNF.
pub fn unf(p: &ScaledPolygon) -> Result<CanonicalForm> {
    let s = search(p.vertices(), false, &all_starts(p.len()))?;
    Ok(CanonicalForm { kind: FormKind::Unimodular, k: p.k(), cols: unflatten(&s.best) })
}

/// Affine normal form for integral translations of the scaled matrix.
pub fn anf1(p: &ScaledPolygon) -> Result<CanonicalForm> {
    let s = search(p.vertices(), true, &all_starts(p.len()))?;
    Ok(CanonicalForm { kind: FormKind::Affine1, k: p.k(), cols: unflatten(&s.best) })
}

/// The affine maps x ↦ U(x − v_i) realizing anf1 are exactly the candidates
/// in the argmax set, so anf_k is anf1 shifted by the lexicographically least
/// residue U·v_i mod k over that set.
fn anfk_parts(verts: &[Point], k: i64) -> Result<(Vec<i64>, Point, Vec<Candidate>)> {
    let s = search(verts, true, &all_starts(verts.len()))?;
    let mut best_r: Option<Point> = None;
    for c in &s.argmax {
        let r = residue(c, verts, k)?;
        if best_r.is_none_or(|b| r < b) {
            best_r = Some(r);
        }
    }
    Ok((s.best, best_r.unwrap(), s.argmax))
}

fn residue(c: &Candidate, verts: &[Point], k: i64) -> Result<Point> {
    let q = c.u.apply(verts[c.start])?;
    Ok(Point::new(q.x.rem_euclid(k), q.y.rem_euclid(k)))
}

/// k-affine normal form: anf1 plus the least admissible shift in {0..k-1}².
pub fn anfk(p: &ScaledPolygon) -> Result<CanonicalForm> {
    let (best, r, _) = anfk_parts(p.vertices(), p.k())?;
    let cols = unflatten(&best).into_iter().map(|c| c + r).collect();
    Ok(CanonicalForm { kind: FormKind::AffineK, k: p.k(), cols })
}

/// The anf_k columns as a compact key.
pub fn anfk_key(p: &ScaledPolygon) -> Result<PolyKey> {
    anfk_key_of(p.vertices(), p.k())
}

pub(crate) fn anfk_key_of(verts: &[Point], k: i64) -> Result<PolyKey> {
    let (mut best, r, _) = anfk_parts(verts, k)?;
    let n = verts.len();
    for j in 0..n {
        best[j] += r.x;
        best[n + j] += r.y;
    }
    let mut v = Vec::with_capacity(2 * n);
    for x in best {
        v.push(i32::try_from(x).map_err(|_| Error::Overflow("normal form key"))?);
    }
    Ok(PolyKey(v.into_boxed_slice()))
}

/// Vertices maximizing |det(v_{i+1} − v_i, v_i − v_{i−1})|.
pub fn special_vertices(p: &ScaledPolygon) -> Vec<usize> {
    let v = p.vertices();
    let n = v.len();
    let dets: Vec<i128> = (0..n)
        .map(|i| (v[(i + 1) % n] - v[i]).cross(v[i] - v[(i + n - 1) % n]).abs())
        .collect();
    let m = *dets.iter().max().unwrap();
    (0..n).filter(|&i| dets[i] == m).collect()
}

/// Unimodular normal form over rotations anchored at special vertices only,
/// with the number of Hermite forms evaluated.
pub fn unf_special_counted(p: &ScaledPolygon) -> Result<(CanonicalForm, usize)> {
    let s = search(p.vertices(), false, &special_vertices(p))?;
    Ok((CanonicalForm { kind: FormKind::Unimodular, k: p.k(), cols: unflatten(&s.best) }, s.evaluated))
}

pub fn unf_special(p: &ScaledPolygon) -> Result<CanonicalForm> {
    Ok(unf_special_counted(p)?.0)
}

/// Symmetry group of P under affine unimodular maps with translations in kZ².
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub order: usize,
    pub dihedral: bool,
}

pub fn automorphism_group(p: &ScaledPolygon) -> Result<AutomorphismGroup> {
    let (_, r, argmax) = anfk_parts(p.vertices(), p.k())?;
    let mut order = 0;
    let (mut fwd, mut bwd) = (false, false);
    for c in &argmax {
        if residue(c, p.vertices(), p.k())? == r {
            order += 1;
            if c.forward {
                fwd = true;
            } else {
                bwd = true;
            }
        }
    }
    Ok(AutomorphismGroup { order, dihedral: fwd && bwd })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hnf(&pts(&[(1, 0), (0, 1)])).unwrap();
        assert_eq!(h, pts(&[(1, 0), (0, 1)]));
        assert_eq!(u, Mat2::IDENTITY);
        // rows [[2,1],[4,3]] → columns (2,4), (1,3)
        let (h, u) = hnf(&pts(&[(2, 4), (1, 3)])).unwrap();
        assert_eq!(h, pts(&[(2, 0), (0, 1)]));
        assert_eq!(u.det().abs(), 1);
    }

    #[test]
    fn hnf_rank_deficient() {
        assert!(hnf(&pts(&[(1, 2), (2, 4)])).is_err());
        assert!(hnf(&pts(&[(0, 0), (0, 0)])).is_err());
    }

    #[test]
    fn special_vertex_count() {
        let p = ScaledPolygon::lattice(&[(0, 0), (3, 0), (4, 2), (0, 1)]).unwrap();
        assert_eq!(special_vertices(&p).len(), 1);
        assert_eq!(unf_special_counted(&p).unwrap().1, 2);
    }

    #[test]
    fn automorphisms() {
        let sq = ScaledPolygon::lattice(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(automorphism_group(&sq).unwrap(), AutomorphismGroup { order: 8, dihedral: true });
        let t = ScaledPolygon::lattice(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(automorphism_group(&t).unwrap(), AutomorphismGroup { order: 6, dihedral: true });
        let q = ScaledPolygon::lattice(&[(0, 0), (3, 0), (4, 2), (0, 1)]).unwrap();
        assert_eq!(automorphism_group(&q).unwrap(), AutomorphismGroup { order: 1, dihedral: false });
    }

    #[test]
    fn anfk_translation_classes() {
        let t = ScaledPolygon::new(2, pts(&[(0, 0), (2, 1), (1, 3)])).unwrap();
        let t2 = t.translate(Point::new(2, 0)).unwrap();
        let t1 = t.translate(Point::new(1, 0)).unwrap();
        assert_eq!(anfk(&t).unwrap(), anfk(&t2).unwrap());
        assert_eq!(anf1(&t).unwrap(), anf1(&t1).unwrap());
        assert_ne!(anfk(&t).unwrap(), anfk(&t1).unwrap());
        let l = t.with_k(1).unwrap();
        assert_eq!(anfk(&l).unwrap().cols, anf1(&l).unwrap().cols);
    }
}
