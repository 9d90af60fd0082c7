//! Exact Jacobian syzygies of plane curve arrangements.
//!
//! The crate builds closed-form generators for the module of syzygies
//! `a f_x + b f_y + c f_z = 0` of a nodal arrangement `f = f_1 ... f_m` with
//! smooth components, predicts exponents and Betti tables, and checks every
//! prediction against a module Gröbner engine and a linear-algebra oracle.

pub mod arrangement;
pub mod closedform;
pub mod diffforms;
pub mod groebner;
pub mod polyring;
