//! Search for small Salem numbers.
//!
//! A Salem polynomial `P` of degree `2d` is reciprocal, so `P(x) = x^d Q(x + 1/x)`
//! for a monic `Q` of degree `d` with `d - 1` roots in `(-2, 2)` and one root in
//! `(2, eta + 1/eta)`. Sampling separator points in `(-2, 2)` turns the search
//! for such `Q` into integer linear feasibility problems, which are solved
//! exactly; every hit is factored and certified before it is recorded.
//!
//! Module map:
//!
//! - [`polycore`]: integer polynomials, Sturm chains, exact bisection
//! - [`transform`]: `P <-> Q` trace transform
//! - [`constraints`]: separator sampling and the feasibility system
//! - [`ilpsolve`]: exact simplex plus branch-and-bound
//! - [`factorize`]: Zassenhaus factorization and irreducibility
//! - [`certify`]: Salem certification and 12-decimal values
//! - [`hunt`]: search driver and result store
//! - [`cli`]: command-line front end

pub mod certify;
pub mod cli;
pub mod constraints;
pub mod factorize;
pub mod hunt;
pub mod ilpsolve;
pub mod polycore;
pub mod scalar;
pub mod transform;

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Fixed-width rational, usable by the solver on small systems.
pub type SmallRational = num_rational::Ratio<i64>;

pub use certify::{certify, compute_tau, SalemCertificate, SalemRecord};
pub use constraints::{build_system, sample_separators, ConstraintSystem, SeparatorTuple, Threshold};
pub use factorize::{factor, is_irreducible, select_salem_factor, Factorization};
pub use hunt::{run_search, run_trial, ResultStore, SearchConfig};
pub use ilpsolve::{ilp_feasible, lp_feasible, FeasibilityResult};
pub use polycore::{count_roots, refine_root, sturm_chain, IntPoly, Interval};
pub use scalar::ExactField;
pub use transform::{is_reciprocal, p_to_q, q_to_p};
