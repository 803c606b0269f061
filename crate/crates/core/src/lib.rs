//! Invariants of the Siegel paramodular newform attached to a Hilbert modular
//! newform over a real quadratic field.
//!
//! The crate is `no_std` with `alloc`. Modules, bottom-up:
//!
//! * [`exactalg`]: exact Laurent polynomials over the rationals, Euler factors.
//! * [`quadfield`]: real quadratic fields, prime splitting, paramodular level,
//!   the quadratic character at `-1`.
//! * [`localdata`]: characters and GL(2) local representations with their
//!   conductors, Hecke and Atkin–Lehner eigenvalues, and Euler factors.
//! * [`packets`]: symplectic L-parameter constructions and the L-packet table.
//! * [`invariants`]: the paramodular invariant table and its cross-checks.
//! * [`transfer`]: the global pipeline from Hilbert form data to the Siegel
//!   form report.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod exactalg;
pub mod invariants;
pub mod localdata;
pub mod packets;
pub mod quadfield;
pub mod transfer;

pub use exactalg::{EulerFactor, QSpec, Rational, Relations, RingElt};
