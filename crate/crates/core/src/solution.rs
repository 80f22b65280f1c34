//! Solution sets of equations and systems in a finite power `L^n`.
//!
//! A solution set is stored as a bitset over all `l^n` points, indexed in
//! lexicographic order of rank vectors (first coordinate most significant).
//! That keeps set algebra cheap for the exhaustive sweeps this crate runs;
//! the explicit points are materialized on demand, always sorted.

use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::semilattice::{Chain, Point};
use crate::term::Equation;

/// Largest number of points (`l^n`) a solution set may range over.
pub const MAX_SOLVE_POINTS: u64 = 10_000_000;

/// A set of points of `L^n`, closed under nothing in particular: values of
/// this type are produced by solving, intersecting, or explicit listing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicSet {
    order: u32,
    n: usize,
    words: Vec<u64>,
    count: u64,
}

fn space_size(chain: Chain, n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::DimensionMismatch);
    }
    let size = u32::try_from(n)
        .ok()
        .and_then(|n| u64::from(chain.order()).checked_pow(n))
        .filter(|&s| s <= MAX_SOLVE_POINTS);
    match size {
        Some(s) => Ok(s),
        None => Err(Error::CapExceeded {
            what: "solution set storage",
        }),
    }
}

impl AlgebraicSet {
    fn blank(chain: Chain, n: usize) -> Result<AlgebraicSet> {
        let size = space_size(chain, n)?;
        let words = vec![0u64; (size as usize).div_ceil(64)];
        Ok(AlgebraicSet {
            order: chain.order(),
            n,
            words,
            count: 0,
        })
    }

    /// The whole space `L^n`.
    pub fn full_space(chain: Chain, n: usize) -> Result<AlgebraicSet> {
        let mut set = AlgebraicSet::blank(chain, n)?;
        let size = space_size(chain, n)?;
        for i in 0..size {
            set.insert_index(i);
        }
        Ok(set)
    }

    /// The `l` constant points `(a_k, ..., a_k)`.
    pub fn diagonal(chain: Chain, n: usize) -> Result<AlgebraicSet> {
        let mut set = AlgebraicSet::blank(chain, n)?;
        for rank in 1..=chain.order() {
            let p = Point::new(chain, vec![rank; n])?;
            set.insert_index(set.index_of(&p));
        }
        Ok(set)
    }

    /// Builds a set from explicit points; duplicates collapse.
    pub fn from_points(chain: Chain, n: usize, points: &[Point]) -> Result<AlgebraicSet> {
        let mut set = AlgebraicSet::blank(chain, n)?;
        for p in points {
            if p.dim() != n {
                return Err(Error::DimensionMismatch);
            }
            if p.chain() != chain {
                return Err(Error::ChainMismatch {
                    left: chain.order(),
                    right: p.chain().order(),
                });
            }
            set.insert_index(set.index_of(p));
        }
        Ok(set)
    }

    /// Builds the set of all points satisfying `keep`, which is handed each
    /// rank vector in lexicographic order.
    pub(crate) fn from_predicate(
        chain: Chain,
        n: usize,
        mut keep: impl FnMut(&[u32]) -> bool,
    ) -> Result<AlgebraicSet> {
        let mut set = AlgebraicSet::blank(chain, n)?;
        let size = space_size(chain, n)?;
        let mut ranks = vec![1u32; n];
        for index in 0..size {
            if keep(&ranks) {
                set.insert_index(index);
            }
            for slot in (0..n).rev() {
                if ranks[slot] < chain.order() {
                    ranks[slot] += 1;
                    break;
                }
                ranks[slot] = 1;
            }
        }
        Ok(set)
    }

    pub fn chain(&self) -> Chain {
        Chain::new(self.order).unwrap()
    }

    /// Number of coordinates of each point.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of points in the set.
    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    fn index_of(&self, p: &Point) -> u64 {
        let mut index = 0u64;
        for &r in p.ranks() {
            index = index * u64::from(self.order) + u64::from(r - 1);
        }
        index
    }

    fn point_at(&self, mut index: u64) -> Point {
        let mut ranks = vec![1u32; self.n];
        for slot in (0..self.n).rev() {
            ranks[slot] = (index % u64::from(self.order)) as u32 + 1;
            index /= u64::from(self.order);
        }
        Point::new(self.chain(), ranks).unwrap()
    }

    fn insert_index(&mut self, index: u64) {
        let word = &mut self.words[(index / 64) as usize];
        let bit = 1u64 << (index % 64);
        if *word & bit == 0 {
            *word |= bit;
            self.count += 1;
        }
    }

    fn contains_index(&self, index: u64) -> bool {
        self.words[(index / 64) as usize] & (1u64 << (index % 64)) != 0
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        if p.dim() != self.n {
            return Err(Error::DimensionMismatch);
        }
        if p.chain().order() != self.order {
            return Err(Error::ChainMismatch {
                left: self.order,
                right: p.chain().order(),
            });
        }
        Ok(self.contains_index(self.index_of(p)))
    }

    /// All points, in lexicographic order of rank vectors.
    pub fn points(&self) -> Vec<Point> {
        self.iter().collect()
    }

    /// Iterates points in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.words.iter().enumerate().flat_map(move |(w, &bits)| {
            let mut rest = bits;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(self.point_at(w as u64 * 64 + u64::from(b)))
            })
        })
    }

    fn check_same_space(&self, other: &AlgebraicSet) -> Result<()> {
        if self.order != other.order {
            return Err(Error::ChainMismatch {
                left: self.order,
                right: other.order,
            });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch);
        }
        Ok(())
    }

    fn combine(&self, other: &AlgebraicSet, op: impl Fn(u64, u64) -> u64) -> Result<AlgebraicSet> {
        self.check_same_space(other)?;
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| op(a, b))
            .collect();
        let count = words.iter().map(|w| u64::from(w.count_ones())).sum();
        Ok(AlgebraicSet {
            order: self.order,
            n: self.n,
            words,
            count,
        })
    }

    pub fn intersection(&self, other: &AlgebraicSet) -> Result<AlgebraicSet> {
        self.combine(other, |a, b| a & b)
    }

    pub fn union(&self, other: &AlgebraicSet) -> Result<AlgebraicSet> {
        self.combine(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &AlgebraicSet) -> Result<AlgebraicSet> {
        self.combine(other, |a, b| a & !b)
    }

    pub fn is_subset_of(&self, other: &AlgebraicSet) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0))
    }
}

impl fmt::Display for AlgebraicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for AlgebraicSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AlgebraicSet", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("l", &self.order)?;
        let points: Vec<Vec<u32>> = self.iter().map(|p| p.ranks().to_vec()).collect();
        s.serialize_field("points", &points)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for AlgebraicSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            l: u32,
            points: Vec<Vec<u32>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let chain = Chain::new(repr.l).map_err(D::Error::custom)?;
        let points = repr
            .points
            .into_iter()
            .map(|ranks| Point::new(chain, ranks))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        AlgebraicSet::from_points(chain, repr.n, &points).map_err(D::Error::custom)
    }
}

/// Whether the point satisfies the equation: both sides must evaluate to
/// the same chain element.
pub fn is_solution(p: &Point, eq: &Equation) -> Result<bool> {
    Ok(p.eval(eq.lhs())? == p.eval(eq.rhs())?)
}

/// The solution set of a single equation in `L^n`.
pub fn solve(eq: &Equation, chain: Chain, n: usize) -> Result<AlgebraicSet> {
    solve_system(std::slice::from_ref(eq), chain, n)
}

/// The solution set of a system: points satisfying every equation. The
/// empty system has the whole space as its solution set.
pub fn solve_system(eqs: &[Equation], chain: Chain, n: usize) -> Result<AlgebraicSet> {
    for eq in eqs {
        let var = eq.max_var();
        if var as usize > n {
            return Err(Error::VarOutOfRange { var, n: n as u32 });
        }
    }
    let min_rank = |ranks: &[u32], term: &crate::term::Term| {
        term.vars()
            .iter()
            .map(|v| ranks[v as usize - 1])
            .min()
            .unwrap()
    };
    AlgebraicSet::from_predicate(chain, n, |ranks| {
        eqs.iter()
            .all(|eq| min_rank(ranks, eq.lhs()) == min_rank(ranks, eq.rhs()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{enumerate_equations, parse_equation};

    fn chain(l: u32) -> Chain {
        Chain::new(l).unwrap()
    }

    fn pts(set: &AlgebraicSet) -> Vec<Vec<u32>> {
        set.iter().map(|p| p.ranks().to_vec()).collect()
    }

    #[test]
    fn solve_lists_points_in_lexicographic_order() {
        let eq = parse_equation("x1x2x3 = x1", 3).unwrap();
        let v = solve(&eq, chain(2), 3).unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!(
            pts(&v),
            vec![
                vec![1, 1, 1],
                vec![1, 1, 2],
                vec![1, 2, 1],
                vec![1, 2, 2],
                vec![2, 2, 2]
            ]
        );
    }

    #[test]
    fn systems_intersect_their_equations() {
        let le12 = parse_equation("x1 <= x2", 3).unwrap();
        let le23 = parse_equation("x2 <= x3", 3).unwrap();
        let v = solve_system(&[le12, le23], chain(2), 3).unwrap();
        assert_eq!(
            pts(&v),
            vec![vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]
        );
        let both = solve(&le12, chain(2), 3)
            .unwrap()
            .intersection(&solve(&le23, chain(2), 3).unwrap())
            .unwrap();
        assert_eq!(v, both);
        assert_eq!(solve_system(&[le12, le23], chain(3), 3).unwrap().len(), 10);
    }

    #[test]
    fn opposite_inequalities_cut_the_diagonal() {
        let eqs = [
            parse_equation("x1 <= x2", 2).unwrap(),
            parse_equation("x2 <= x1", 2).unwrap(),
        ];
        let v = solve_system(&eqs, chain(3), 2).unwrap();
        assert_eq!(v, AlgebraicSet::diagonal(chain(3), 2).unwrap());
    }

    #[test]
    fn empty_system_solves_to_the_full_space() {
        let v = solve_system(&[], chain(2), 3).unwrap();
        assert_eq!(v, AlgebraicSet::full_space(chain(2), 3).unwrap());
        assert_eq!(v.len(), 8);
    }

    #[test]
    fn mirrored_equations_have_equal_solution_sets() {
        for l in 1..=3 {
            for n in 1..=3 {
                for eq in enumerate_equations(n).unwrap() {
                    let v = solve(&eq, chain(l), n as usize).unwrap();
                    let w = solve(&eq.swapped(), chain(l), n as usize).unwrap();
                    assert_eq!(v, w, "{eq} over order {l}");
                }
            }
        }
    }

    #[test]
    fn solutions_match_the_shared_minimum_criterion() {
        // A point solves t = s exactly when some variable of t and some
        // variable of s both take the point's minimal value.
        for n in 1..=4u32 {
            for l in [2u32, 3] {
                for eq in enumerate_equations(n).unwrap() {
                    let v = solve(&eq, chain(l), n as usize).unwrap();
                    for p in AlgebraicSet::full_space(chain(l), n as usize)
                        .unwrap()
                        .iter()
                    {
                        let global_min = *p.ranks().iter().min().unwrap();
                        let witness = |vars: crate::varset::VarSet| {
                            vars.iter().any(|v| p.rank_of(v).unwrap() == global_min)
                        };
                        let criterion = witness(eq.lhs().vars()) && witness(eq.rhs().vars());
                        assert_eq!(is_solution(&p, &eq).unwrap(), criterion, "{eq} at {p}");
                        assert_eq!(v.contains(&p).unwrap(), criterion);
                    }
                }
            }
        }
    }

    #[test]
    fn solve_caps_the_space_size() {
        let eq = parse_equation("x1 = x2", 2).unwrap();
        assert_eq!(
            solve(&eq, chain(10), 8).unwrap_err(),
            Error::CapExceeded {
                what: "solution set storage"
            }
        );
        assert_eq!(
            solve(&eq, chain(10), 7).unwrap().len(),
            10u64.pow(6) // p1 = p2 leaves the other five coordinates free
        );
    }

    #[test]
    fn solve_rejects_variables_outside_the_ambient_space() {
        let eq = parse_equation("x1 = x3", 3).unwrap();
        assert_eq!(
            solve(&eq, chain(2), 2).unwrap_err(),
            Error::VarOutOfRange { var: 3, n: 2 }
        );
    }

    #[test]
    fn set_algebra_checks_ambient_spaces() {
        let a = AlgebraicSet::full_space(chain(2), 2).unwrap();
        let b = AlgebraicSet::full_space(chain(2), 3).unwrap();
        let c = AlgebraicSet::full_space(chain(3), 2).unwrap();
        assert_eq!(a.intersection(&b).unwrap_err(), Error::DimensionMismatch);
        assert_eq!(
            a.union(&c).unwrap_err(),
            Error::ChainMismatch { left: 2, right: 3 }
        );
        assert!(AlgebraicSet::diagonal(chain(2), 2)
            .unwrap()
            .is_subset_of(&a)
            .unwrap());
    }

    #[test]
    fn json_form_is_the_documented_schema() {
        let diag = AlgebraicSet::diagonal(chain(2), 2).unwrap();
        let json = serde_json::to_string(&diag).unwrap();
        assert_eq!(json, r#"{"n":2,"l":2,"points":[[1,1],[2,2]]}"#);
        let back: AlgebraicSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, diag);
    }

    #[test]
    fn json_points_may_arrive_unsorted() {
        let parsed: AlgebraicSet =
            serde_json::from_str(r#"{"n":2,"l":2,"points":[[2,2],[1,1],[2,2]]}"#).unwrap();
        assert_eq!(parsed, AlgebraicSet::diagonal(chain(2), 2).unwrap());
        assert!(serde_json::from_str::<AlgebraicSet>(r#"{"n":2,"l":2,"points":[[1,3]]}"#).is_err());
    }

    proptest::proptest! {
        #[test]
        fn json_round_trip_preserves_arbitrary_sets(mask in 0u32..512) {
            // The space of 2 variables over a 3-chain has 9 points; the
            // mask picks any subset of them.
            let space = AlgebraicSet::full_space(chain(3), 2).unwrap();
            let points: Vec<Point> = space
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| p)
                .collect();
            let set = AlgebraicSet::from_points(chain(3), 2, &points).unwrap();
            let text = serde_json::to_string(&set).unwrap();
            let back: AlgebraicSet = serde_json::from_str(&text).unwrap();
            proptest::prop_assert_eq!(back, set);
        }
    }
}
