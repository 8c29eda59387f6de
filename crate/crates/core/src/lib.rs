pub mod error;
pub mod lattice;
pub mod tridiagonal;
pub mod eigensolver;
pub mod quadrature;
pub mod quantization;
pub mod continuum;
pub mod measurement;
pub mod convergence;
pub mod selfcheck;
pub mod cli;
