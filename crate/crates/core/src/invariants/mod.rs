//! Exact transforms among the GW, GV, abc and Dirichlet representations.

mod abc;
mod coeffs;
mod dirichlet;
mod tables;
mod transform;

pub use abc::{abc_to_gw, gv_to_abc, AbcTable};
pub use coeffs::{arcsin_alpha, arcsin_alpha_oracle, sine_coeff, sine_coeff_oracle, SineTable};
pub use dirichlet::{dirichlet_relations_check, DirichletFailure, DirichletReport};
pub use tables::{GenusBound, GvTable, GwTable};
pub use transform::{gv_to_gw, gw_to_gv};
