//! Seeded random generation of closed lambda terms, for differential
//! testing.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::term::Term;

/// Deterministic generator of closed terms of bounded size.
pub struct TermGen {
    rng: ChaCha8Rng,
    pub max_size: usize,
}

impl TermGen {
    pub fn new(seed: u64, max_size: usize) -> TermGen {
        TermGen { rng: ChaCha8Rng::seed_from_u64(seed), max_size }
    }

    /// Next closed term with `1 <= size <= max_size` constructors.
    pub fn closed_term(&mut self) -> Term {
        let budget = self.rng.gen_range(1..=self.max_size);
        self.go(budget, 0)
    }

    /// `depth` counts enclosing binders; with none, only an abstraction can
    /// start the term.
    fn go(&mut self, budget: usize, depth: usize) -> Term {
        if budget <= 1 {
            if depth == 0 {
                // smallest closed term
                return Term::abs("x0", Term::var("x0"));
            }
            let k = self.rng.gen_range(0..depth);
            return Term::var(format!("x{k}"));
        }
        let choice = if depth == 0 {
            0
        } else if budget < 3 {
            // no room for an application
            *[0usize, 8].get(self.rng.gen_range(0..2)).unwrap()
        } else {
            self.rng.gen_range(0..10)
        };
        match choice {
            0..=3 => {
                let name = format!("x{depth}");
                Term::abs(name, self.go(budget - 1, depth + 1))
            }
            4..=7 => {
                let left = self.rng.gen_range(1..=budget - 2);
                let f = self.go(left, depth);
                let a = self.go(budget - 1 - left, depth);
                Term::app(f, a)
            }
            _ => {
                let k = self.rng.gen_range(0..depth);
                Term::var(format!("x{k}"))
            }
        }
    }
}
