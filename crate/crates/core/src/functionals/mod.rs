//! Smooth centro-affine functionals of centrally symmetric curves: the
//! diffeomorphism picture, `I(alpha)`, its Hessian at the circle, Hill
//! potentials and Schwarzians, chord averages and a counterexample search.

mod chord;
mod diffeo;
mod hessian;
mod hill;
mod ialpha;
pub mod search;

pub use chord::{chord_average, luko_average, ChordAverage, EPS_UNIT_SPEED};
pub use diffeo::{curve_from_diffeo, DiffeoCurve};
pub use hessian::{
    cot_ratio, f_n_alpha, hessian_mode_closed, hessian_mode_numeric, positivity_scan, HessianMode, PositivityReport,
    PositivityRow,
};
pub use hill::{
    average_schwarzian, average_schwarzian_circle, hill_potential, hill_potential_of_diffeo, petty_product, schwarzian,
    HillPotential,
};
pub use ialpha::{areal_energy, criticality_residual, i_alpha, i_alpha_formula};
pub use search::{conjecture_search, SearchOptions, SearchReport};
