//! Computational toolkit for Wajsberg hoops, the algebraic semantics of
//! positive Łukasiewicz logic.
//!
//! The crate builds the Wajsberg chains `Ł_n`, `Ł_{n,k}` and `C_ω` exactly,
//! evaluates terms over them and over the one-variable McNaughton functions,
//! constructs comb axiomatizations and the canonical one-generated free
//! algebra `B_Δ`, and decides structurality, structural cores, ordering and
//! (partially) primitivity of the (quasi)varieties named by reduced
//! presentations `(I, J, K)`.
//!
//! All arithmetic is exact. The algebraic core is generic over an integer
//! scalar (see [`Scalar`]); the aliases at the crate root fix it to
//! arbitrary-precision [`BigInt`], which is what the command-line tool uses.

pub mod bdelta;
pub mod chains;
pub mod checker;
pub mod mcnaughton;
pub mod presentations;
pub mod scalar;
pub mod terms;

pub use num_bigint::BigInt;
pub use scalar::Scalar;

pub use chains::{ChainDescriptor, Hoop, Operation, ProductAlgebra};

pub use presentations::{Presentation, QuasiDescriptor};
pub use terms::Term;

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::Ratio<BigInt>;

/// Carrier element of a single Wajsberg chain.
pub type Element = chains::Element<BigInt>;

/// Carrier element of a finite product of Wajsberg chains.
pub type ProductElement = chains::ProductElement<BigInt>;

/// One-variable Wajsberg function with rational nodes.
pub type PlFunction = mcnaughton::PlFunction<BigInt>;

/// Machine-word instantiations, handy for exhaustive loops where the values
/// stay small.
pub mod word {
    pub type Rational = num_rational::Ratio<i64>;
    pub type Element = crate::chains::Element<i64>;
    pub type ProductElement = crate::chains::ProductElement<i64>;
    pub type PlFunction = crate::mcnaughton::PlFunction<i64>;
}
