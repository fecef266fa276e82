//! Ellipses inscribed in convex quadrilaterals.
//!
//! Every convex quadrilateral can be moved by a similarity onto a normal form
//! with vertices `(0,0), (0,1), (s,t), (v,w)`. In that frame the inscribed
//! ellipses form a one-parameter family indexed by `r in (0,1)`, whose conic
//! coefficients and foci have closed forms. This crate implements
//!
//! - [`quad`]: quadrilaterals, the normal form, and the cyclic / orthodiagonal /
//!   trapezoid predicates together with the circumcenter `EP` and the diagonal
//!   intersection `IP`;
//! - [`conic`]: general conics with center, foci, axes, area and a line
//!   tangency oracle;
//! - [`inscribed`]: the inscribed-ellipse family and the maximal-area member;
//! - [`marden`]: the foci of each family member as roots of a complex quadratic
//!   obtained from Marden's theorem;
//! - [`besant`]: Besant quadrilaterals (cyclic quadrilaterals admitting an
//!   inscribed ellipse with a focus at `EP`) and their unique Besant ellipse,
//!   whose foci are `EP` and `IP`.

pub mod besant;
pub mod conic;
mod error;
pub mod geom;
pub mod inscribed;
pub mod marden;
pub mod quad;

pub use besant::{
    besant_ellipse, classify_besant, generate_besant_quad, scan_focus_match, verify_theorem_besant,
    BesantReason, BesantResult, FocusScan, FocusTarget, VerificationReport,
};
pub use conic::{Conic, EllipseGeometry, FocalTerms, TangencyKind, TangencyResult};
pub use error::{Error, Result};
pub use geom::{Point, Similarity, Tolerance};
pub use inscribed::{InellipseParam, MaxArea};
pub use marden::{FociQuadratic, TriangleWeights};
pub use quad::{CanonicalQuad, ConvexQuad, DerivedQuantities};
