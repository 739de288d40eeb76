use std::fmt;

use super::{Chain, ChainDescriptor, ChainError, Element, Hoop, Operation};
use crate::scalar::Scalar;

/// Finite direct product of chains; operations act coordinatewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductAlgebra<S> {
    factors: Vec<Chain<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductElement<S>(pub Vec<Element<S>>);

impl<S: Scalar> ProductAlgebra<S> {
    pub fn new(factors: impl IntoIterator<Item = ChainDescriptor>) -> Self {
        ProductAlgebra {
            factors: factors.into_iter().map(Chain::new).collect(),
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = ChainDescriptor> + '_ {
        self.factors.iter().map(Chain::descriptor)
    }

    pub fn factor(&self, i: usize) -> &Chain<S> {
        &self.factors[i]
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    /// Parses `[1, (1,0), -1]`; a one-factor product also accepts a bare element.
    pub fn parse_element(&self, text: &str) -> Result<ProductElement<S>, ChainError> {
        let t = text.trim();
        let parts: Vec<&str> = match t.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            Some(inner) => split_top_level(inner),
            None if self.factors.len() == 1 => vec![t],
            None => return Err(ChainError::parse("product element", text)),
        };
        if parts.len() != self.factors.len() {
            return Err(ChainError::parse("product element", text));
        }
        self.factors
            .iter()
            .zip(parts)
            .map(|(c, p)| c.parse_element(p))
            .collect::<Result<_, _>>()
            .map(ProductElement)
    }

    fn check(&self, x: &ProductElement<S>) -> Result<(), ChainError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(ChainError::ForeignElement {
                element: x.to_string(),
                algebra: self.name(),
            })
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl<S: Scalar> Hoop for ProductAlgebra<S> {
    type Elem = ProductElement<S>;

    fn top(&self) -> ProductElement<S> {
        ProductElement(self.factors.iter().map(Hoop::top).collect())
    }

    fn contains(&self, x: &ProductElement<S>) -> bool {
        x.0.len() == self.factors.len() && self.factors.iter().zip(&x.0).all(|(c, e)| c.contains(e))
    }

    fn op_apply(
        &self,
        op: Operation,
        args: &[ProductElement<S>],
    ) -> Result<ProductElement<S>, ChainError> {
        if args.len() != op.arity() {
            return Err(ChainError::Arity {
                op,
                expected: op.arity(),
                got: args.len(),
            });
        }
        for a in args {
            self.check(a)?;
        }
        let coords = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let coord: Vec<Element<S>> = args.iter().map(|a| a.0[i].clone()).collect();
                c.op_apply(op, &coord)
            })
            .collect::<Result<_, _>>()?;
        Ok(ProductElement(coords))
    }

    fn elements(&self) -> Option<Vec<ProductElement<S>>> {
        let mut acc: Vec<Vec<Element<S>>> = vec![Vec::new()];
        for c in &self.factors {
            let carrier = c.elements()?;
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    carrier.iter().map(move |e| {
                        let mut p = prefix.clone();
                        p.push(e.clone());
                        p
                    })
                })
                .collect();
        }
        Some(acc.into_iter().map(ProductElement).collect())
    }

    fn name(&self) -> String {
        self.factors
            .iter()
            .map(|c| c.descriptor().to_string())
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

impl<S: Scalar> fmt::Display for ProductElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}
