//! Finite chains `a_1 < a_2 < ... < a_l` under the meet operation
//! `a_i * a_j = a_min(i,j)`, and points of their direct powers.
//!
//! Every linearly ordered semilattice of order `l` is this chain up to
//! isomorphism, so a [`Chain`] is identified by its order alone. The order
//! relation is definable from the meet: `a <= b` iff `a * b = a`.

use std::fmt;

use crate::error::{Error, Result};
use crate::term::Term;

/// The linearly ordered semilattice with elements ranked `1..=order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Chain {
    order: u32,
}

impl Chain {
    pub fn new(order: u32) -> Result<Chain> {
        if order == 0 {
            return Err(Error::InvalidChainOrder);
        }
        Ok(Chain { order })
    }

    pub fn order(self) -> u32 {
        self.order
    }

    /// The element of the given 1-based rank.
    pub fn element(self, rank: u32) -> Result<Element> {
        if rank == 0 || rank > self.order {
            return Err(Error::RankOutOfRange {
                rank,
                order: self.order,
            });
        }
        Ok(Element {
            rank,
            order: self.order,
        })
    }

    /// All elements, bottom to top.
    pub fn elements(self) -> impl Iterator<Item = Element> {
        let order = self.order;
        (1..=order).map(move |rank| Element { rank, order })
    }

    pub fn bottom(self) -> Element {
        Element {
            rank: 1,
            order: self.order,
        }
    }

    pub fn top(self) -> Element {
        Element {
            rank: self.order,
            order: self.order,
        }
    }
}

/// An element `a_rank` of a specific chain.
///
/// Elements remember their chain's order so that combining elements from
/// different chains is an error rather than a silent rank comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    rank: u32,
    order: u32,
}

impl Element {
    pub fn rank(self) -> u32 {
        self.rank
    }

    pub fn chain(self) -> Chain {
        Chain { order: self.order }
    }

    /// The meet `a_i * a_j = a_min(i,j)`.
    pub fn meet(self, other: Element) -> Result<Element> {
        if self.order != other.order {
            return Err(Error::ChainMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(Element {
            rank: self.rank.min(other.rank),
            order: self.order,
        })
    }

    /// The induced order: `a <= b` iff `a * b = a`.
    pub fn leq(self, other: Element) -> Result<bool> {
        Ok(self.meet(other)? == self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.rank)
    }
}

/// A point of the direct power `L^n`: one rank per variable `x1..xn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    order: u32,
    ranks: Vec<u32>,
}

impl Point {
    /// Builds a point from 1-based ranks; the slot `ranks[i - 1]` is the
    /// value assigned to `x_i`.
    pub fn new(chain: Chain, ranks: Vec<u32>) -> Result<Point> {
        if ranks.is_empty() {
            return Err(Error::DimensionMismatch);
        }
        for &r in &ranks {
            if r == 0 || r > chain.order {
                return Err(Error::RankOutOfRange {
                    rank: r,
                    order: chain.order,
                });
            }
        }
        Ok(Point {
            order: chain.order,
            ranks,
        })
    }

    pub fn chain(&self) -> Chain {
        Chain { order: self.order }
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.ranks.len()
    }

    /// Rank assigned to `x_i` (1-based), if in range.
    pub fn rank_of(&self, var: u32) -> Option<u32> {
        if var == 0 {
            return None;
        }
        self.ranks.get(var as usize - 1).copied()
    }

    /// Element assigned to `x_i` (1-based).
    pub fn element_of(&self, var: u32) -> Result<Element> {
        match self.rank_of(var) {
            Some(rank) => Ok(Element {
                rank,
                order: self.order,
            }),
            None => Err(Error::VarOutOfRange {
                var,
                n: self.ranks.len() as u32,
            }),
        }
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    /// Value of a term at this point.
    ///
    /// A term evaluates to the meet of its variables' values, which on a
    /// chain is the minimum rank among them.
    pub fn eval(&self, term: &Term) -> Result<Element> {
        let mut min = u32::MAX;
        for var in term.vars().iter() {
            match self.rank_of(var) {
                Some(r) => min = min.min(r),
                None => {
                    return Err(Error::VarOutOfRange {
                        var,
                        n: self.ranks.len() as u32,
                    });
                }
            }
        }
        Ok(Element {
            rank: min,
            order: self.order,
        })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.ranks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_equation;

    #[test]
    fn meet_laws_hold_exhaustively_up_to_order_8() {
        for l in 1..=8 {
            let chain = Chain::new(l).unwrap();
            for a in chain.elements() {
                assert_eq!(a.meet(a).unwrap(), a);
                for b in chain.elements() {
                    let ab = a.meet(b).unwrap();
                    assert_eq!(ab, b.meet(a).unwrap());
                    for c in chain.elements() {
                        let bc = b.meet(c).unwrap();
                        assert_eq!(ab.meet(c).unwrap(), a.meet(bc).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn leq_matches_rank_order() {
        let chain = Chain::new(5).unwrap();
        for a in chain.elements() {
            for b in chain.elements() {
                assert_eq!(a.leq(b).unwrap(), a.rank() <= b.rank());
            }
        }
        assert_eq!(chain.bottom().rank(), 1);
        assert_eq!(chain.top().rank(), 5);
    }

    #[test]
    fn mixed_chains_are_rejected() {
        let a = Chain::new(2).unwrap().top();
        let b = Chain::new(3).unwrap().top();
        assert_eq!(
            a.meet(b).unwrap_err(),
            Error::ChainMismatch { left: 2, right: 3 }
        );
        assert!(a.leq(b).is_err());
    }

    #[test]
    fn rank_bounds_are_checked() {
        let chain = Chain::new(3).unwrap();
        assert!(chain.element(0).is_err());
        assert!(chain.element(4).is_err());
        assert!(Chain::new(0).is_err());
        assert!(Point::new(chain, vec![1, 4]).is_err());
    }

    #[test]
    fn eval_takes_minimum_rank_over_the_term() {
        let chain = Chain::new(3).unwrap();
        let p = Point::new(chain, vec![2, 1, 3]).unwrap();
        let eq = parse_equation("x1x2 = x1x3", 3).unwrap();
        assert_eq!(p.eval(eq.lhs()).unwrap().rank(), 1);
        assert_eq!(p.eval(eq.rhs()).unwrap().rank(), 2);
    }

    #[test]
    fn eval_rejects_out_of_range_variables() {
        let chain = Chain::new(2).unwrap();
        let p = Point::new(chain, vec![1, 2]).unwrap();
        let eq = parse_equation("x1 = x3", 3).unwrap();
        assert_eq!(
            p.eval(eq.rhs()).unwrap_err(),
            Error::VarOutOfRange { var: 3, n: 2 }
        );
    }
}
