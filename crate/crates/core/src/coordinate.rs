//! Coordinate semilattices of point sets, the irreducibility test, and
//! isomorphism of coordinate semilattices.
//!
//! Two terms are identified over a point set `Y` when they evaluate equally
//! at every point of `Y`; the classes form a semilattice under the meet
//! inherited from term products. A term's behaviour on `Y` is captured by
//! its fingerprint: the vector of its values at the points of `Y` in a
//! fixed order. Classes are exactly fingerprint groups, and the meet of two
//! classes is the class of the pointwise minimum of their fingerprints.
//!
//! A nonempty `Y` over a chain of order `l` is irreducible exactly when its
//! coordinate semilattice embeds into that chain, i.e. when the classes
//! form a chain of at most `l` elements.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::solution::AlgebraicSet;
use crate::varset::VarSet;

/// Largest dimension accepted when grouping all `2^n - 1` terms.
pub const MAX_COORDINATE_VARS: usize = 20;

/// The semilattice of term classes over a fixed point set.
#[derive(Debug, Clone)]
pub struct CoordinateSemilattice {
    n: usize,
    class_of_mask: Vec<u32>,
    classes: Vec<Vec<VarSet>>,
    meet: Vec<u32>,
}

/// Groups the terms over `y.dim()` variables by their values on `y`.
///
/// Class indices follow the first appearance of each fingerprint when terms
/// are scanned in ascending bitmask order, so class 0 always contains `x1`.
pub fn coordinate_semilattice(y: &AlgebraicSet) -> Result<CoordinateSemilattice> {
    if y.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = y.dim();
    if n > MAX_COORDINATE_VARS {
        return Err(Error::CapExceeded {
            what: "coordinate_semilattice",
        });
    }

    let singleton: Vec<Vec<u32>> = {
        let mut columns = vec![Vec::with_capacity(y.len() as usize); n];
        for p in y.iter() {
            for (slot, column) in columns.iter_mut().enumerate() {
                column.push(p.ranks()[slot]);
            }
        }
        columns
    };

    let full = VarSet::full(n as u32)?.bits();
    let mut class_of_mask = vec![0u32; full as usize];
    let mut classes: Vec<Vec<VarSet>> = Vec::new();
    let mut class_fp: Vec<Vec<u32>> = Vec::new();
    let mut by_fp: HashMap<Vec<u32>, u32> = HashMap::new();

    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let low_fp = &singleton[low.trailing_zeros() as usize];
        let rest = mask ^ low;
        let fp: Vec<u32> = if rest == 0 {
            low_fp.clone()
        } else {
            let rest_fp = &class_fp[class_of_mask[rest as usize - 1] as usize];
            rest_fp
                .iter()
                .zip(low_fp)
                .map(|(&a, &b)| a.min(b))
                .collect()
        };
        let id = *by_fp.entry(fp.clone()).or_insert_with(|| {
            classes.push(Vec::new());
            class_fp.push(fp);
            classes.len() as u32 - 1
        });
        class_of_mask[mask as usize - 1] = id;
        classes[id as usize].push(VarSet::from_bits(mask));
    }

    let k = classes.len();
    let mut meet = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..=i {
            let glb: Vec<u32> = class_fp[i]
                .iter()
                .zip(&class_fp[j])
                .map(|(&a, &b)| a.min(b))
                .collect();
            let id = by_fp[&glb];
            meet[i * k + j] = id;
            meet[j * k + i] = id;
        }
    }

    Ok(CoordinateSemilattice {
        n,
        class_of_mask,
        classes,
        meet,
    })
}

impl CoordinateSemilattice {
    /// Number of variables the grouped terms range over.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Each class's member terms (as variable sets), ascending by bitmask.
    pub fn classes(&self) -> &[Vec<VarSet>] {
        &self.classes
    }

    /// Index of the class containing the term with this variable set.
    pub fn class_of(&self, vars: VarSet) -> Result<usize> {
        if vars.is_empty() {
            return Err(Error::EmptyTerm);
        }
        let full = VarSet::full(self.n as u32)?;
        if !vars.is_subset_of(full) {
            return Err(Error::VarOutOfRange {
                var: vars.max_var().unwrap_or(0),
                n: self.n as u32,
            });
        }
        Ok(self.class_of_mask[vars.bits() as usize - 1] as usize)
    }

    /// Class of the product of representatives of two classes.
    pub fn meet_classes(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.classes.len() + j] as usize
    }

    /// Induced order: `i <= j` iff their meet is `i`.
    pub fn leq_classes(&self, i: usize, j: usize) -> bool {
        self.meet_classes(i, j) == i
    }

    /// Whether every pair of classes is comparable.
    pub fn is_chain(&self) -> bool {
        let k = self.class_count();
        (0..k).all(|i| {
            (0..i).all(|j| {
                let m = self.meet_classes(i, j);
                m == i || m == j
            })
        })
    }

    /// Whether a meet-preserving bijection onto `other` exists.
    pub fn isomorphic_to(&self, other: &CoordinateSemilattice) -> bool {
        let k = self.class_count();
        if k != other.class_count() {
            return false;
        }
        // Order the search by each class's number of lower bounds; an
        // isomorphism must preserve that count.
        let lower_counts = |s: &CoordinateSemilattice| -> Vec<usize> {
            (0..k)
                .map(|i| (0..k).filter(|&j| s.leq_classes(j, i)).count())
                .collect()
        };
        let ours = lower_counts(self);
        let theirs = lower_counts(other);
        let mut image = vec![usize::MAX; k];
        let mut used = vec![false; k];
        fn assign(
            s: &CoordinateSemilattice,
            t: &CoordinateSemilattice,
            ours: &[usize],
            theirs: &[usize],
            image: &mut [usize],
            used: &mut [bool],
            i: usize,
        ) -> bool {
            if i == image.len() {
                return true;
            }
            for j in 0..image.len() {
                if used[j] || ours[i] != theirs[j] {
                    continue;
                }
                // A meet of already-placed classes may itself be unplaced;
                // defer that constraint by only checking placed meets.
                let consistent = (0..i).all(|prev| {
                    let m = s.meet_classes(i, prev);
                    image[m] == usize::MAX || t.meet_classes(j, image[prev]) == image[m]
                });
                if !consistent {
                    continue;
                }
                image[i] = j;
                used[j] = true;
                if assign(s, t, ours, theirs, image, used, i + 1) {
                    return true;
                }
                image[i] = usize::MAX;
                used[j] = false;
            }
            false
        }
        if !assign(self, other, &ours, &theirs, &mut image, &mut used, 0) {
            return false;
        }
        // The backtracking only enforced meets whose value was already
        // placed; verify the full tables agree under the found bijection.
        (0..k).all(|i| {
            (0..k).all(|j| image[self.meet_classes(i, j)] == other.meet_classes(image[i], image[j]))
        })
    }
}

/// Whether `y` is not a union of finitely many proper algebraic subsets.
///
/// Equivalent to its coordinate semilattice being a chain of at most
/// `l` classes, which is checked directly.
pub fn is_irreducible(y: &AlgebraicSet) -> Result<bool> {
    let gamma = coordinate_semilattice(y)?;
    Ok(gamma.class_count() <= y.chain().order() as usize && gamma.is_chain())
}

/// Whether two nonempty sets have isomorphic coordinate semilattices.
pub fn are_isomorphic(a: &AlgebraicSet, b: &AlgebraicSet) -> Result<bool> {
    Ok(coordinate_semilattice(a)?.isomorphic_to(&coordinate_semilattice(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::{Chain, Point};
    use crate::solution::{solve_system, AlgebraicSet};
    use crate::term::parse_equation;

    fn chain(l: u32) -> Chain {
        Chain::new(l).unwrap()
    }

    fn monotone_chain_set(l: u32, reversed: bool) -> AlgebraicSet {
        let (a, b) = if reversed { ("x3", "x1") } else { ("x1", "x3") };
        let eqs = [
            parse_equation(&format!("{a} <= x2"), 3).unwrap(),
            parse_equation(&format!("x2 <= {b}"), 3).unwrap(),
        ];
        solve_system(&eqs, chain(l), 3).unwrap()
    }

    #[test]
    fn a_monotone_chain_of_conditions_yields_a_three_class_chain() {
        let gamma = coordinate_semilattice(&monotone_chain_set(3, false)).unwrap();
        assert_eq!(gamma.class_count(), 3);
        assert!(gamma.is_chain());
        assert!(is_irreducible(&monotone_chain_set(3, false)).unwrap());
        // Over the order-2 chain the same set needs three distinct levels,
        // one more than the chain can host.
        assert!(!is_irreducible(&monotone_chain_set(2, false)).unwrap());
    }

    #[test]
    fn single_variable_full_space_has_one_class() {
        let full = AlgebraicSet::full_space(chain(2), 1).unwrap();
        let gamma = coordinate_semilattice(&full).unwrap();
        assert_eq!(gamma.class_count(), 1);
        assert!(is_irreducible(&full).unwrap());
    }

    #[test]
    fn full_space_classes_are_free_on_three_variables() {
        let full = AlgebraicSet::full_space(chain(2), 3).unwrap();
        let gamma = coordinate_semilattice(&full).unwrap();
        assert_eq!(gamma.class_count(), 7);
        assert!(!gamma.is_chain());
        assert!(!is_irreducible(&full).unwrap());
    }

    #[test]
    fn classes_merge_terms_with_equal_values() {
        let eq = parse_equation("x1x2x3 = x1", 3).unwrap();
        let v = crate::solution::solve(&eq, chain(2), 3).unwrap();
        let gamma = coordinate_semilattice(&v).unwrap();
        let x1 = gamma.class_of(VarSet::singleton(1).unwrap()).unwrap();
        let x123 = gamma.class_of(VarSet::full(3).unwrap()).unwrap();
        let x2 = gamma.class_of(VarSet::singleton(2).unwrap()).unwrap();
        assert_eq!(x1, x123);
        assert_ne!(x1, x2);
        assert!(gamma.leq_classes(x1, x2));
        assert_eq!(gamma.meet_classes(x2, x1), x1);
    }

    #[test]
    fn mirrored_chains_of_conditions_are_isomorphic() {
        let a = monotone_chain_set(3, false);
        let b = monotone_chain_set(3, true);
        assert_ne!(a, b);
        assert!(are_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn chain_and_non_chain_are_not_isomorphic() {
        let full = AlgebraicSet::full_space(chain(2), 2).unwrap();
        let diag = AlgebraicSet::diagonal(chain(2), 2).unwrap();
        assert!(!are_isomorphic(&full, &diag).unwrap());
        assert!(are_isomorphic(&diag, &diag).unwrap());
    }

    #[test]
    fn singleton_sets_are_irreducible() {
        let single =
            AlgebraicSet::from_points(chain(2), 3, &[Point::new(chain(2), vec![1, 1, 1]).unwrap()])
                .unwrap();
        assert!(is_irreducible(&single).unwrap());
    }

    #[test]
    fn empty_sets_are_rejected() {
        let empty = AlgebraicSet::from_points(chain(2), 2, &[]).unwrap();
        assert_eq!(coordinate_semilattice(&empty).unwrap_err(), Error::EmptySet);
        assert_eq!(is_irreducible(&empty).unwrap_err(), Error::EmptySet);
    }
}
