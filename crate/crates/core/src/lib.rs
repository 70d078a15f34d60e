//! Exact local contact-order invariants of polynomial ideals at the origin.
//!
//! The crate computes, over the rationals, the classical measurements of
//! how closely parameterized holomorphic curves can touch the zero set of
//! an ideal of germs: the first order of contact and its q-dimensional
//! refinements, the generic value of the sliced contact order, the
//! branch-based slicing quantity, and the colength (multiplicity) of
//! zero-dimensional ideals. Rigid real hypersurfaces of the special form
//! `Re(h) + sum |f_j|^2` are translated to ideal invariants through the
//! factor-of-two correspondence.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals,
//! curve coefficients live in explicit towers of number fields, and all
//! reported values carry a certification status plus witnesses that can
//! be re-validated.

pub mod curve;
pub mod engine;
pub mod factor;
pub mod hyper;
pub mod ideal;
pub mod lang;
pub mod linalg;
pub mod mult;
pub mod poly;
pub mod puiseux;
pub mod report;
pub mod tower;
pub mod unipoly;
pub mod verify;

pub use ideal::IdealPresentation;
pub use poly::{LinearForm, Order, Polynomial, Rat};
pub use report::{InvariantReport, ReportValue, Status};

