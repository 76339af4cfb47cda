//! Bounds on the equilibrium radius, bracketed root finding along the
//! bisector rays, equilibrium enumeration and the auxiliary polynomials.

pub mod bounds;
pub mod equilibria;
pub mod poly;
pub mod roots;

pub use bounds::{apothem_bound, bound_pair, lower_bound, small_beta_bound, BoundPair};
pub use equilibria::{
    classify, enumerate_equilibria, find_bisector_equilibria, Classification, EquilibriumPoint, EquilibriumSet,
    SolveOptions,
};
pub use poly::{
    descartes_sign_changes, example_polynomials, f_beta_root, f_beta_triangle, pn_eval, pn_polynomial,
    pn_roots_in_unit_interval, ExamplePolynomial, PolynomialSource,
};
pub use roots::{refine_root, Root};
