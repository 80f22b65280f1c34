//! Exhaustive enumeration of all algebraic sets in small ambient spaces,
//! and a decomposition oracle built on it.
//!
//! A set is algebraic when it solves some system, i.e. when it is an
//! intersection of single-equation solution sets. Enumerating every basic
//! set `V(t = s)` and closing under pairwise intersection therefore yields
//! the complete lattice of algebraic sets. From that lattice, the
//! irreducible components of an algebraic `y` are the maximal irreducible
//! algebraic subsets of `y` — computed here by definition, with no use of
//! the partition machinery, so the two routes can check each other.

use std::collections::HashSet;

use crate::coordinate::is_irreducible;
use crate::error::{Error, Result};
use crate::semilattice::Chain;
use crate::solution::{solve, AlgebraicSet};
use crate::term::{Equation, Term};
use crate::varset::VarSet;

/// Dimension guard for [`all_algebraic_sets`].
pub const ORACLE_MAX_VARS: usize = 4;
/// Chain-order guard for [`all_algebraic_sets`].
pub const ORACLE_MAX_ORDER: u32 = 3;

/// Every algebraic set of `L^n`, deduplicated.
#[derive(Debug, Clone)]
pub struct AlgebraicLattice {
    chain: Chain,
    n: usize,
    sets: Vec<AlgebraicSet>,
}

/// Computes the full lattice of algebraic sets of `L^n`.
///
/// Only small spaces are supported; the closure is quadratic in the number
/// of distinct sets and exists to cross-check cleverer code.
pub fn all_algebraic_sets(chain: Chain, n: usize) -> Result<AlgebraicLattice> {
    if n == 0 {
        return Err(Error::DimensionMismatch);
    }
    if n > ORACLE_MAX_VARS || chain.order() > ORACLE_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "all_algebraic_sets",
        });
    }

    let mut sets: Vec<AlgebraicSet> = Vec::new();
    let mut seen: HashSet<AlgebraicSet> = HashSet::new();
    let full = VarSet::full(n as u32)?.bits();
    for t_bits in 1..=full {
        // V(t = s) = V(s = t), so unordered pairs cover all basic sets;
        // t = t contributes the full space.
        for s_bits in t_bits..=full {
            let eq = Equation::equality(
                Term::new(VarSet::from_bits(t_bits))?,
                Term::new(VarSet::from_bits(s_bits))?,
            );
            let v = solve(&eq, chain, n)?;
            if seen.insert(v.clone()) {
                sets.push(v);
            }
        }
    }

    let mut i = 0;
    while i < sets.len() {
        for j in 0..i {
            let meet = sets[i].intersection(&sets[j])?;
            if seen.insert(meet.clone()) {
                sets.push(meet);
            }
        }
        i += 1;
    }

    sets.sort_by_key(|s| s.points());
    Ok(AlgebraicLattice { chain, n, sets })
}

impl AlgebraicLattice {
    pub fn chain(&self) -> Chain {
        self.chain
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// All algebraic sets, sorted by their point lists.
    pub fn sets(&self) -> &[AlgebraicSet] {
        &self.sets
    }

    pub fn contains(&self, y: &AlgebraicSet) -> bool {
        self.sets.iter().any(|s| s == y)
    }

    /// The irreducible components of `y`: its maximal irreducible algebraic
    /// subsets. `y` itself must be algebraic.
    pub fn irreducible_components(&self, y: &AlgebraicSet) -> Result<Vec<AlgebraicSet>> {
        if y.chain() != self.chain {
            return Err(Error::ChainMismatch {
                left: self.chain.order(),
                right: y.chain().order(),
            });
        }
        if y.dim() != self.n {
            return Err(Error::DimensionMismatch);
        }
        if !self.contains(y) {
            return Err(Error::NotAlgebraic);
        }
        let candidates: Vec<&AlgebraicSet> = self
            .sets
            .iter()
            .filter(|s| s.is_subset_of(y).unwrap() && is_irreducible(s).unwrap())
            .collect();
        let maximal: Vec<AlgebraicSet> = candidates
            .iter()
            .filter(|s| {
                !candidates
                    .iter()
                    .any(|t| *t != **s && s.is_subset_of(t).unwrap())
            })
            .map(|s| (*s).clone())
            .collect();
        debug_assert_eq!(
            maximal.iter().try_fold(
                AlgebraicSet::from_points(self.chain, self.n, &[])?,
                |acc, s| { acc.union(s) }
            )?,
            *y,
            "components must cover the whole set"
        );
        Ok(maximal)
    }
}

/// Convenience wrapper: builds the lattice for `y`'s ambient space and
/// reads off the components. Prefer holding an [`AlgebraicLattice`] when
/// decomposing many sets of the same space.
pub fn irreducible_components_oracle(y: &AlgebraicSet) -> Result<Vec<AlgebraicSet>> {
    all_algebraic_sets(y.chain(), y.dim())?.irreducible_components(y)
}
