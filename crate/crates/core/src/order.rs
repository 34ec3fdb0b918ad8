//! Orders on the terms `m·e_i` of a graded free module.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::monomial::Monomial;

/// A module term order together with the degrees of the basis vectors
/// (`e_i` has degree `degrees[i]`, i.e. the summand is `S(-degrees[i])`).
#[derive(Clone, Debug)]
pub struct ModuleOrder {
    degrees: Arc<Vec<i32>>,
    kind: OrderKind,
}

#[derive(Clone, Debug)]
enum OrderKind {
    /// Total degree, then degrevlex, then lower index first.
    TermOverPosition,
    /// Components `< split` dominate every component `>= split`;
    /// term-over-position inside each block.
    Elimination { split: usize },
    /// `m·e_i > n·e_j` iff `m·lead(g_i) > n·lead(g_j)` in the previous
    /// order, ties broken by the lower index.
    Schreyer {
        leads: Arc<Vec<(Monomial, usize)>>,
        prev: Arc<ModuleOrder>,
    },
}

impl ModuleOrder {
    pub fn top(degrees: Vec<i32>) -> Self {
        ModuleOrder {
            degrees: Arc::new(degrees),
            kind: OrderKind::TermOverPosition,
        }
    }

    pub fn elimination(degrees: Vec<i32>, split: usize) -> Self {
        ModuleOrder {
            degrees: Arc::new(degrees),
            kind: OrderKind::Elimination { split },
        }
    }

    /// Order induced on the free module whose basis maps to elements with
    /// the given leading terms.
    pub fn schreyer(prev: &ModuleOrder, leads: Vec<(Monomial, usize)>) -> Self {
        let degrees = leads
            .iter()
            .map(|(m, c)| m.degree() as i32 + prev.degrees[*c])
            .collect();
        ModuleOrder {
            degrees: Arc::new(degrees),
            kind: OrderKind::Schreyer {
                leads: Arc::new(leads),
                prev: Arc::new(prev.clone()),
            },
        }
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_schreyer(&self) -> bool {
        matches!(self.kind, OrderKind::Schreyer { .. })
    }

    fn top_cmp(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        let da = a.0.degree() as i64 + self.degrees[a.1] as i64;
        let db = b.0.degree() as i64 + self.degrees[b.1] as i64;
        da.cmp(&db)
            .then_with(|| a.0.cmp(b.0))
            .then_with(|| b.1.cmp(&a.1))
    }

    pub fn cmp(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        match &self.kind {
            OrderKind::TermOverPosition => self.top_cmp(a, b),
            OrderKind::Elimination { split } => {
                let ba = a.1 >= *split;
                let bb = b.1 >= *split;
                // block 0 (false) is the larger block
                bb.cmp(&ba).then_with(|| self.top_cmp(a, b))
            }
            OrderKind::Schreyer { leads, prev } => {
                let (la, ca) = &leads[a.1];
                let (lb, cb) = &leads[b.1];
                let ia = a.0.mul(la);
                let ib = b.0.mul(lb);
                prev.cmp((&ia, *ca), (&ib, *cb)).then_with(|| b.1.cmp(&a.1))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_prefers_degree_then_position() {
        let o = ModuleOrder::top(vec![0, 1]);
        let x = Monomial::new(&[1, 0]);
        let one = Monomial::one(2);
        // x*e0 (deg 1) vs 1*e1 (deg 1): degrevlex x > 1
        assert_eq!(o.cmp((&x, 0), (&one, 1)), Ordering::Greater);
        assert_eq!(o.cmp((&x, 0), (&x, 1)), Ordering::Less);
        assert_eq!(o.cmp((&one, 0), (&one, 1)), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = ModuleOrder::elimination(vec![0, 0], 1);
        let big = Monomial::new(&[5, 5]);
        let one = Monomial::one(2);
        assert_eq!(o.cmp((&one, 0), (&big, 1)), Ordering::Greater);
    }

    #[test]
    fn schreyer_ties_by_index() {
        let base = ModuleOrder::top(vec![0]);
        let x = Monomial::new(&[1, 0]);
        let y = Monomial::new(&[0, 1]);
        let o = ModuleOrder::schreyer(&base, vec![(x.clone(), 0), (y.clone(), 0)]);
        assert_eq!(o.degrees(), &[1, 1]);
        // y*e0 -> xy, x*e1 -> xy: tie, lower index wins
        assert_eq!(o.cmp((&y, 0), (&x, 1)), Ordering::Greater);
    }
}
