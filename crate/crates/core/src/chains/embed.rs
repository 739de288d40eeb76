use std::fmt;

use super::ChainDescriptor;
use crate::scalar::gcd;

/// A positive integer or the infinity marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extent {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(n) => write!(f, "{n}"),
            Extent::Infinite => f.write_str("inf"),
        }
    }
}

/// Whether `src` is isomorphic to a subalgebra of `dst`, by the divisibility
/// criteria on ranks and divisibility indices.
pub fn embeds(src: ChainDescriptor, dst: ChainDescriptor) -> bool {
    use ChainDescriptor::*;
    match (src, dst) {
        (Fin(n), Fin(m)) => m % n == 0,
        // gcd(r, 0) = r, so this also covers Ł_r^∞
        (Fin(n), Lex(r, j)) => gcd(r, j).is_multiple_of(n),
        (Fin(_), NegCone) => false,
        (Lex(n, k), Lex(m, j)) => n == m && gcd(m, j).is_multiple_of(gcd(n, k)),
        (Lex(..), Fin(_) | NegCone) => false,
        (NegCone, Lex(..) | NegCone) => true,
        (NegCone, Fin(_)) => false,
    }
}

/// `(rank, divisibility index)`; `C_ω` gets `(∞, 1)`.
pub fn rank_and_div_index(d: ChainDescriptor) -> (Extent, Extent) {
    match d {
        ChainDescriptor::Fin(n) => (Extent::Finite(n), Extent::Finite(n)),
        ChainDescriptor::Lex(n, k) => (Extent::Finite(n), Extent::Finite(gcd(n, k))),
        ChainDescriptor::NegCone => (Extent::Infinite, Extent::Finite(1)),
    }
}
