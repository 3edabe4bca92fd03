//! Exact classification of k-rational polygons.
//!
//! A k-rational polygon is stored through the integer vertices of its
//! k-fold dilation ([`geom::ScaledPolygon`]). On top of exact geometry the
//! crate provides normal forms for equivalence up to affine unimodular maps,
//! subpolygon enumeration, maximality tests, direct classifications in
//! narrow strips, a general pipeline through interior hulls, and Ehrhart
//! quasipolynomials.

pub mod classify;
pub mod cone;
pub mod ehrhart;
pub mod error;
pub mod generic;
pub mod geom;
pub mod maximality;
pub mod normal_form;
pub mod storage;
pub mod strip;
pub mod subpolygons;

pub use error::{Error, Result};
pub use geom::{Point, ScaledPolygon};
