use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid size {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("derivative order {0} outside 1..=4")]
    UnsupportedOrder(u32),
    #[error("matrix is not unimodular: det - 1 = {0:e}")]
    NonUnimodular(f64),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("polygon is not star-shaped: {0}")]
    NotStarShaped(String),
    #[error("closure violated: residual {0:e} exceeds eps_close")]
    ClosureViolation(f64),
    #[error("even n = {0} has a one-parameter fiber of polygons over a ray configuration")]
    EvenN(usize),
    #[error("degenerate rays: consecutive cross-product {0:e}")]
    DegenerateRays(f64),
    #[error("index range ({i}, {j}) needs j - i >= 2")]
    IndexRange { i: i64, j: i64 },
    #[error("odd harmonic {0}; only even harmonics are admitted")]
    OddHarmonic(i64),
    #[error("not a diffeomorphism: f' reaches {0}, below delta_diffeo = 0.05")]
    NotADiffeo(f64),
    #[error("alpha = {0} outside (0, pi)")]
    AlphaOutOfRange(f64),
    #[error("radial Wronskian [g, g'] = {0:e} vanishes")]
    SingularRadial(f64),
    #[error("curve is not unit speed: max | |g'| - 1 | = {0:e}")]
    NotUnitSpeed(f64),
    #[error("not strictly convex: {0}")]
    NotConvex(String),
    #[error("point is inside (or on) the table")]
    InteriorPoint,
    #[error("outer billiard map undefined on the extension of an edge")]
    UndefinedOnSingularSet,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
