use std::collections::{BTreeSet, VecDeque};

use super::{ChainError, Hoop};

/// Result of a budgeted subalgebra closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure<E> {
    Finite(BTreeSet<E>),
    Exceeded(BTreeSet<E>),
}

impl<E> Closure<E> {
    pub fn elements(&self) -> &BTreeSet<E> {
        match self {
            Closure::Finite(s) | Closure::Exceeded(s) => s,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Closure::Finite(_))
    }
}

/// Breadth-first closure of `generators ∪ {1}` under `·, →, ∧, ∨`.
///
/// Returns `Exceeded` with the elements found so far as soon as more than
/// `budget` distinct elements are known.
pub fn generate_subalgebra<A: Hoop>(
    alg: &A,
    generators: &[A::Elem],
    budget: usize,
) -> Result<Closure<A::Elem>, ChainError> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut done: Vec<A::Elem> = Vec::new();
    for g in generators.iter().cloned().chain(std::iter::once(alg.top())) {
        if seen.insert(g.clone()) {
            queue.push_back(g);
        }
    }
    if seen.len() > budget {
        return Ok(Closure::Exceeded(seen));
    }
    while let Some(x) = queue.pop_front() {
        done.push(x.clone());
        for y in &done {
            let products = [
                alg.mul(&x, y)?,
                alg.imp(&x, y)?,
                alg.imp(y, &x)?,
                alg.meet(&x, y)?,
                alg.join(&x, y)?,
            ];
            for z in products {
                if seen.insert(z.clone()) {
                    if seen.len() > budget {
                        return Ok(Closure::Exceeded(seen));
                    }
                    queue.push_back(z);
                }
            }
        }
    }
    Ok(Closure::Finite(seen))
}

/// Values of all terms of depth at most `depth` in the given generators:
/// level 0 is `generators ∪ {1}`, level `d + 1` adds every binary operation
/// applied to level-`d` values.
pub fn bounded_closure<A: Hoop>(
    alg: &A,
    generators: &[A::Elem],
    depth: usize,
) -> Result<BTreeSet<A::Elem>, ChainError> {
    let mut level: BTreeSet<A::Elem> = generators.iter().cloned().collect();
    level.insert(alg.top());
    for _ in 0..depth {
        let mut next = level.clone();
        for x in &level {
            for y in &level {
                next.insert(alg.mul(x, y)?);
                next.insert(alg.imp(x, y)?);
                next.insert(alg.meet(x, y)?);
                next.insert(alg.join(x, y)?);
            }
        }
        if next.len() == level.len() {
            break;
        }
        level = next;
    }
    Ok(level)
}
