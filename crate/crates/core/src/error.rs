use thiserror::Error;

use crate::besant::BesantReason;

/// Errors produced by the geometry operations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrilateral is not strictly convex")]
    NotConvex,
    #[error("no vertex ordering yields a valid canonical form")]
    Degenerate,
    #[error("canonical parameters violate the quadrilateral constraints: {0}")]
    ConstraintViolation(String),
    #[error("quadrilateral is not cyclic")]
    NotCyclic,
    #[error("quadrilateral is not orthodiagonal")]
    NotOrthodiagonal,
    #[error("side midpoints are collinear")]
    CollinearMidpoints,
    #[error("conic has vanishing quadratic part")]
    ZeroQuadraticPart,
    #[error("conic is degenerate (4AC - B^2 vanishes)")]
    DegenerateConic,
    #[error("conic is not a real ellipse")]
    NotEllipse,
    #[error("line endpoints coincide")]
    DegenerateLine,
    #[error("parameter {0} lies outside the open interval (0, 1)")]
    ParamOutOfRange(f64),
    #[error("input is a trapezoid; use the trapezoid form")]
    TrapezoidInput,
    #[error("trapezoid parameters do not describe a cyclic non-parallelogram trapezoid: {0}")]
    InvalidTrapezoid(String),
    #[error("triangle vertices are collinear or repeated")]
    CollinearVertices,
    #[error("triangle weights must sum to 1 with positive product")]
    InvalidWeights,
    #[error("quadrilateral is not Besant: {0:?}")]
    NotBesant(BesantReason),
    #[error("cyclic orthodiagonal trapezoid with s != t")]
    NonIsoscelesTrapezoid,
    #[error("inscribed ellipse is a circle")]
    CircleEllipse,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
