//! Exact arithmetic for the polynomial family
//! `f_{1,n}(x) = x^{n-1} + 2x^{n-2} + ... + (n-1)x + n` and its relatives.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: primes, binomials and integer factorization.
//! * [`polyz`]: dense polynomials over the integers and the family constructors.
//! * [`modp`]: polynomials over prime fields and Frobenius cycle types.
//! * [`roots`]: simultaneous complex root finding with certified error radii.
//! * [`irred`]: irreducibility certificates and the degree-set sieve.
//! * [`discrim`]: Sylvester/Bareiss resultants, discriminants, quadratic subfields.
//! * [`galois`]: permutation groups and Galois group identification.
//! * [`qfield`]: `Z[sqrt(-2)]`, its ray class group mod `(5 sqrt(-2))`, the
//!   Hecke theta series and eta-product comparison.

pub mod arith;
pub mod discrim;
pub mod error;
pub mod galois;
pub mod irred;
pub mod modp;
pub mod polyz;
pub mod qfield;
pub mod roots;

pub use error::{Error, Result};
pub use modp::{CycleType, ModPolynomial, PrimeModulus};
pub use polyz::IntPolynomial;
