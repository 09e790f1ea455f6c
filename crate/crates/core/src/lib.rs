//! Numerical core of a shock-capturing PDE solver.
//!
//! The library couples three ingredients:
//!
//! * **DSC collocation derivatives** ([`dsc`]): wide banded stencils obtained by
//!   sampling derivatives of the regularized Shannon kernel
//!   `sinc(πx/Δ)·exp(-x²/2σ²)`, giving spectral-like accuracy on uniform grids
//!   with periodic or homogeneous-Dirichlet boundary extension.
//! * **Gradient-sensitive diffusion** ([`ador`]): edge-detecting diffusivity
//!   functions (logarithmic, fractional-power, Perona-Malik) feeding
//!   conservative `∇·[d(‖∇u‖)∇u]` and non-conservative `Γ₁∇²u + Γ₂∇⁴u`
//!   augmentation terms that switch on only near steep fronts, suppressing the
//!   spurious oscillations of high-order schemes at shocks.
//! * **Method-of-lines steppers** ([`integrators`]): classical RK4 and
//!   fixed-point implicit θ-schemes (backward Euler, Crank-Nicolson).
//!
//! [`problems`] assembles these into right-hand sides and exact-solution
//! oracles for the benchmark experiments: viscous/inviscid Burgers flow in one
//! and two dimensions, and incompressible Navier-Stokes/Euler flow in
//! vorticity-streamfunction form (Taylor-Green vortex, double shear layer).

pub mod ador;
pub mod dsc;
pub mod error;
pub mod grid;
pub mod integrators;
pub mod problems;

pub use error::CoreError;
pub use grid::{error_report, Axis, BoundaryKind, ErrorReport, Field, Grid, NormKind};
