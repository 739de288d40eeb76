use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Chain, ChainError};
use crate::scalar::Scalar;

/// Names one of the chains `Ł_n`, `Ł_{n,k}` (with `Ł_n^∞ = Ł_{n,0}`) or `C_ω`.
///
/// Text form: `L3`, `L(6,4)`, `Linf5`, `Comega`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ChainDescriptor {
    Fin(u64),
    Lex(u64, u64),
    NegCone,
}

impl ChainDescriptor {
    pub fn is_bounded(self) -> bool {
        !matches!(self, ChainDescriptor::NegCone)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ChainDescriptor::Fin(_))
    }

    pub fn chain<S: Scalar>(self) -> Chain<S> {
        Chain::new(self)
    }
}

impl fmt::Display for ChainDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainDescriptor::Fin(n) => write!(f, "L{n}"),
            ChainDescriptor::Lex(n, 0) => write!(f, "Linf{n}"),
            ChainDescriptor::Lex(n, k) => write!(f, "L({n},{k})"),
            ChainDescriptor::NegCone => f.write_str("Comega"),
        }
    }
}

impl FromStr for ChainDescriptor {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, ChainError> {
        let text = s.trim();
        let bad = || ChainError::parse("chain descriptor", s);
        let positive = |t: &str| t.trim().parse::<u64>().ok().filter(|&n| n >= 1).ok_or_else(bad);
        if text == "Comega" {
            return Ok(ChainDescriptor::NegCone);
        }
        if let Some(rest) = text.strip_prefix("Linf") {
            return Ok(ChainDescriptor::Lex(positive(rest)?, 0));
        }
        if let Some(inner) = text.strip_prefix("L(").and_then(|t| t.strip_suffix(')')) {
            let (n, k) = inner.split_once(',').ok_or_else(bad)?;
            let k = k.trim().parse::<u64>().map_err(|_| bad())?;
            return Ok(ChainDescriptor::Lex(positive(n)?, k));
        }
        if let Some(rest) = text.strip_prefix('L') {
            return Ok(ChainDescriptor::Fin(positive(rest)?));
        }
        Err(bad())
    }
}

/// Parses a product `L3 x Comega x L(2,1)` into its factor list.
pub fn parse_descriptor_list(text: &str) -> Result<Vec<ChainDescriptor>, ChainError> {
    text.split(" x ").map(str::parse).collect()
}
