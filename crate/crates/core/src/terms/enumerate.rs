use rand::Rng;

use super::{BinOp, Term};

/// Deterministic stream of pairwise distinct terms, layer by layer.
///
/// Layer 0 holds the variables (in the given order) followed by `1`; layer
/// `d + 1` holds every `op(a, b)` with `a, b` of depth at most `d` and at least
/// one of them of depth exactly `d`, ordered by operator, then `a`, then `b`.
pub struct TermEnumerator {
    max_depth: usize,
    remaining: usize,
    // every term of depth <= the current layer - 1, grouped by depth
    layers: Vec<Vec<Term>>,
    current: Vec<Term>,
    cursor: usize,
    depth: usize,
    op: usize,
    left: usize,
    right: usize,
}

impl TermEnumerator {
    fn prefix_len(&self, depth: usize) -> usize {
        self.layers[..=depth].iter().map(Vec::len).sum()
    }

    fn nth_below(&self, mut idx: usize) -> &Term {
        for layer in &self.layers {
            if idx < layer.len() {
                return &layer[idx];
            }
            idx -= layer.len();
        }
        unreachable!("index out of range")
    }

    fn next_compound(&mut self) -> Option<Term> {
        loop {
            if self.depth > self.max_depth {
                return None;
            }
            let below = self.prefix_len(self.depth - 1);
            let fresh_start = below - self.layers[self.depth - 1].len();
            if self.op == BinOp::ALL.len() {
                // layer finished
                self.layers.push(std::mem::take(&mut self.current));
                self.depth += 1;
                self.op = 0;
                self.left = 0;
                self.right = 0;
                continue;
            }
            if self.left == below {
                self.op += 1;
                self.left = 0;
                self.right = 0;
                continue;
            }
            if self.right == below {
                self.left += 1;
                self.right = 0;
                continue;
            }
            let (l, r) = (self.left, self.right);
            self.right += 1;
            if l < fresh_start && r < fresh_start {
                continue;
            }
            let t = Term::binary(
                BinOp::ALL[self.op],
                self.nth_below(l).clone(),
                self.nth_below(r).clone(),
            );
            self.current.push(t.clone());
            return Some(t);
        }
    }
}

impl Iterator for TermEnumerator {
    type Item = Term;

    fn next(&mut self) -> Option<Term> {
        if self.remaining == 0 {
            return None;
        }
        let t = if self.cursor < self.layers[0].len() {
            self.cursor += 1;
            Some(self.layers[0][self.cursor - 1].clone())
        } else {
            self.next_compound()
        }?;
        self.remaining -= 1;
        Some(t)
    }
}

/// Enumerates distinct terms over `vars` of depth at most `max_depth`,
/// stopping after `budget` terms.
pub fn enumerate_terms(vars: &[&str], max_depth: usize, budget: usize) -> TermEnumerator {
    let mut base: Vec<Term> = vars.iter().map(|v| Term::var(v)).collect();
    base.push(Term::One);
    TermEnumerator {
        max_depth,
        remaining: budget,
        layers: vec![base],
        current: Vec::new(),
        cursor: 0,
        depth: 1,
        op: 0,
        left: 0,
        right: 0,
    }
}

/// Random term of depth at most `max_depth`. Leaves are drawn from `vars`
/// and the constant, with the constant picked a fifth of the time.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, vars: &[&str], max_depth: usize) -> Term {
    let leaf = max_depth == 0 || rng.gen_ratio(1, 4);
    if leaf {
        if vars.is_empty() || rng.gen_ratio(1, 5) {
            Term::One
        } else {
            Term::var(vars[rng.gen_range(0..vars.len())])
        }
    } else {
        let op = BinOp::ALL[rng.gen_range(0..4)];
        let l = random_term(rng, vars, max_depth - 1);
        let r = random_term(rng, vars, max_depth - 1);
        Term::binary(op, l, r)
    }
}
