//! Finite-dimensional verification engine for the stringor representation of
//! the string 2-group: a discretised loop-group model acting on a fermionic
//! Fock space, modular theory of the half-circle Clifford algebra, and a
//! generic strict 2-group layer.

pub mod numeric;
pub mod clifford;
pub mod sampling;
pub mod bogoliubov;
pub mod algebra;
pub mod string_model;
pub mod stringor;
pub mod twogroup;
pub mod report;
