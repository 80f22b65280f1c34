//! Ordered partitions of the variable set and the decomposition of
//! solution sets into irreducible components.
//!
//! An ordered partition `(X_1, ..., X_l)` splits the variables into `l`
//! disjoint nonempty blocks. It induces the system "all variables within a
//! block are equal; variables in lower blocks are below variables in higher
//! blocks", whose solution set consists of the points constant on blocks
//! with block values weakly increasing along the block order.
//!
//! For an equation `t = s` mentioning every variable, the sets induced by
//! partitions whose bottom block meets both `Var(t)` and `Var(s)` are
//! exactly the irreducible components of the equation's solution set.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::coordinate::{are_isomorphic, coordinate_semilattice};
use crate::counting::{binomial, labelled_stirling};
use crate::error::{Error, Result};
use crate::semilattice::{Chain, Point};
use crate::solution::{is_solution, AlgebraicSet};
use crate::term::Equation;
use crate::varset::VarSet;

/// Largest number of partitions [`enumerate_ordered_partitions`] will agree
/// to walk.
pub const MAX_PARTITIONS: u64 = 100_000_000;

/// A sequence of disjoint nonempty blocks covering `{x1, ..., xn}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    n: usize,
    blocks: Vec<VarSet>,
}

impl OrderedPartition {
    pub fn new(n: usize, blocks: Vec<VarSet>) -> Result<OrderedPartition> {
        let full = VarSet::full(n as u32)?;
        let mut seen = VarSet::EMPTY;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition(
                    "blocks must be nonempty".to_string(),
                ));
            }
            if !seen.intersection(*b).is_empty() {
                return Err(Error::InvalidPartition(
                    "blocks must be disjoint".to_string(),
                ));
            }
            seen = seen.union(*b);
        }
        if seen != full {
            return Err(Error::InvalidPartition(format!(
                "blocks must cover x1..x{n} exactly"
            )));
        }
        Ok(OrderedPartition { n, blocks })
    }

    /// Builds a partition from 1-based block indices: `assignment[i - 1]`
    /// is the block of `x_i`.
    pub fn from_assignment(assignment: &[u32]) -> Result<OrderedPartition> {
        let l = assignment.iter().copied().max().unwrap_or(0) as usize;
        let mut blocks = vec![VarSet::EMPTY; l];
        for (slot, &k) in assignment.iter().enumerate() {
            if k == 0 {
                return Err(Error::InvalidPartition(
                    "block indices are 1-based".to_string(),
                ));
            }
            blocks[k as usize - 1] = blocks[k as usize - 1].with(slot as u32 + 1)?;
        }
        OrderedPartition::new(assignment.len(), blocks)
    }

    /// Number of variables covered.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[VarSet] {
        &self.blocks
    }

    /// 0-based index of the block containing `x_var`.
    pub fn block_of(&self, var: u32) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(var))
    }

    /// The chain the induced solution set lives over: one element per
    /// block.
    pub fn chain(&self) -> Chain {
        Chain::new(self.blocks.len() as u32).unwrap()
    }

    /// The point assigning rank `k` to every variable of the `k`-th block.
    pub fn canonical_point(&self) -> Point {
        let mut ranks = vec![0u32; self.n];
        for (k, block) in self.blocks.iter().enumerate() {
            for v in block.iter() {
                ranks[v as usize - 1] = k as u32 + 1;
            }
        }
        Point::new(self.chain(), ranks).unwrap()
    }

    /// The defining system: equalities inside each block, then one
    /// inequality per variable pair in strictly ordered blocks.
    pub fn system(&self) -> Vec<Equation> {
        let mut eqs = Vec::new();
        let term = |v: u32| crate::term::Term::new(VarSet::singleton(v).unwrap()).unwrap();
        for block in &self.blocks {
            let vars: Vec<u32> = block.iter().collect();
            for (i, &a) in vars.iter().enumerate() {
                for &b in &vars[i + 1..] {
                    eqs.push(Equation::equality(term(a), term(b)));
                }
            }
        }
        for (lo, lower) in self.blocks.iter().enumerate() {
            for upper in &self.blocks[lo + 1..] {
                for a in lower.iter() {
                    for b in upper.iter() {
                        eqs.push(Equation::le(term(a), term(b)));
                    }
                }
            }
        }
        eqs
    }

    /// The induced solution set, read off directly: one point per weakly
    /// increasing sequence of block values. Equals the solution set of
    /// [`OrderedPartition::system`] over the chain with one element per
    /// block; there are `C(2l - 1, l)` such points for `l` blocks.
    pub fn solution_set(&self) -> Result<AlgebraicSet> {
        let l = self.blocks.len() as u32;
        let chain = self.chain();
        let mut points = Vec::new();
        let mut values: Vec<u32> = (1..=l).map(|_| 1).collect();
        loop {
            let mut ranks = vec![0u32; self.n];
            for (k, block) in self.blocks.iter().enumerate() {
                for v in block.iter() {
                    ranks[v as usize - 1] = values[k];
                }
            }
            points.push(Point::new(chain, ranks)?);
            // Advance to the next weakly increasing value sequence.
            let mut slot = values.len();
            loop {
                if slot == 0 {
                    return AlgebraicSet::from_points(chain, self.n, &points);
                }
                slot -= 1;
                if values[slot] < l {
                    break;
                }
            }
            let v = values[slot] + 1;
            for value in values.iter_mut().skip(slot) {
                *value = v;
            }
        }
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (i, v) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for OrderedPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.blocks.len()))?;
        for block in &self.blocks {
            seq.serialize_element(&block.iter().collect::<Vec<u32>>())?;
        }
        seq.end()
    }
}

/// Lazily enumerates all ordered partitions of `{x1..xn}` into exactly `l`
/// nonempty blocks, in lexicographic order of the block-index vector
/// `(block(x1), ..., block(xn))`. There are `l! * S(n, l)` of them.
pub fn enumerate_ordered_partitions(n: usize, l: usize) -> Result<OrderedPartitions> {
    if n == 0 || l == 0 || l > n {
        return Err(Error::InvalidArgument(
            "enumerate_ordered_partitions: need 1 <= l <= n",
        ));
    }
    if n > crate::varset::MAX_VARS as usize {
        return Err(Error::CapExceeded {
            what: "enumerate_ordered_partitions",
        });
    }
    if labelled_stirling(n as u32, l as u32) > MAX_PARTITIONS.into() {
        return Err(Error::CapExceeded {
            what: "enumerate_ordered_partitions",
        });
    }
    Ok(OrderedPartitions {
        n,
        l: l as u32,
        assignment: Vec::new(),
        counts: vec![0u32; l + 1],
        unused: l as u32,
        done: false,
    })
}

/// Iterator returned by [`enumerate_ordered_partitions`].
#[derive(Debug, Clone)]
pub struct OrderedPartitions {
    n: usize,
    l: u32,
    assignment: Vec<u32>,
    counts: Vec<u32>,
    unused: u32,
    done: bool,
}

impl OrderedPartitions {
    fn place(&mut self, value: u32) {
        self.assignment.push(value);
        self.counts[value as usize] += 1;
        if self.counts[value as usize] == 1 {
            self.unused -= 1;
        }
    }

    fn unplace(&mut self) -> u32 {
        let value = self.assignment.pop().unwrap();
        self.counts[value as usize] -= 1;
        if self.counts[value as usize] == 0 {
            self.unused += 1;
        }
        value
    }

    /// Extends the current prefix with the lexicographically smallest
    /// feasible suffix. Feasible means the positions left can still name
    /// every unused block.
    fn fill_minimal(&mut self) {
        while self.assignment.len() < self.n {
            let remaining = (self.n - self.assignment.len()) as u32;
            let value = if self.unused >= remaining {
                // Every remaining slot is needed for a fresh block; take
                // the smallest unused one.
                (1..=self.l)
                    .find(|&v| self.counts[v as usize] == 0)
                    .unwrap()
            } else {
                1
            };
            self.place(value);
        }
    }
}

impl Iterator for OrderedPartitions {
    type Item = OrderedPartition;

    fn next(&mut self) -> Option<OrderedPartition> {
        if self.done {
            return None;
        }
        if self.assignment.is_empty() {
            self.fill_minimal();
        } else {
            // Lexicographic successor: bump the rightmost position that
            // can grow while leaving a feasible suffix.
            loop {
                if self.assignment.is_empty() {
                    self.done = true;
                    return None;
                }
                let old = self.unplace();
                let remaining = (self.n - self.assignment.len() - 1) as u32;
                let mut chosen = None;
                for value in old + 1..=self.l {
                    let fresh = u32::from(self.counts[value as usize] == 0);
                    if self.unused - fresh <= remaining {
                        chosen = Some(value);
                        break;
                    }
                }
                if let Some(value) = chosen {
                    self.place(value);
                    self.fill_minimal();
                    break;
                }
            }
        }
        // The walk only produces surjective assignments, so the partition
        // invariants hold by construction.
        let mut blocks = vec![VarSet::EMPTY; self.l as usize];
        for (slot, &k) in self.assignment.iter().enumerate() {
            blocks[k as usize - 1] = blocks[k as usize - 1].with(slot as u32 + 1).unwrap();
        }
        Some(OrderedPartition { n: self.n, blocks })
    }
}

/// Whether the partition's bottom block meets both sides of the equation.
///
/// Exactly these partitions induce irreducible components of the
/// equation's solution set. The partition must cover the same variables
/// the equation mentions.
pub fn is_component_partition(sigma: &OrderedPartition, eq: &Equation) -> Result<bool> {
    if eq.variables() != VarSet::full(sigma.n as u32)? {
        return Err(Error::DimensionMismatch);
    }
    let bottom = sigma.blocks[0];
    Ok(!bottom.intersection(eq.lhs().vars()).is_empty()
        && !bottom.intersection(eq.rhs().vars()).is_empty())
}

/// One irreducible component: the inducing partition and its point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub partition: OrderedPartition,
    pub set: AlgebraicSet,
}

/// Decomposes the solution set of `eq` over the chain into irreducible
/// components, in the enumeration order of the inducing partitions.
///
/// Requires an equation mentioning every variable and more variables than
/// chain elements; below that threshold the partition picture does not
/// describe the components.
pub fn decompose(eq: &Equation, chain: Chain, n: usize) -> Result<Vec<Component>> {
    if eq.variables() != VarSet::full(n as u32)? {
        return Err(Error::MissingVariables { n: n as u32 });
    }
    let l = chain.order();
    if n <= l as usize {
        return Err(Error::UnsupportedRegime { n: n as u32, l });
    }
    let mut components = Vec::new();
    for sigma in enumerate_ordered_partitions(n, l as usize)? {
        if is_component_partition(&sigma, eq)? {
            let set = sigma.solution_set()?;
            components.push(Component {
                partition: sigma,
                set,
            });
        }
    }
    Ok(components)
}

/// Rebuilds the inducing partition of a component from one of its points.
///
/// Starting from the level classes of `p` (variables grouped by value,
/// lowest first), classes are split until there are exactly `l`: each step
/// picks the lowest class that still has a variable not serving as an
/// anchor, moves its smallest such variable into a fresh class immediately
/// above, and repeats. The anchors are the smallest-index variables of the
/// bottom class appearing in each side of the equation; keeping them at the
/// bottom keeps the partition's set inside the equation's solutions.
pub fn extend_point_to_partition(p: &Point, eq: &Equation) -> Result<OrderedPartition> {
    let n = p.dim();
    let l = p.chain().order();
    if eq.variables() != VarSet::full(n as u32)? {
        return Err(Error::MissingVariables { n: n as u32 });
    }
    if n <= l as usize {
        return Err(Error::UnsupportedRegime { n: n as u32, l });
    }
    if !is_solution(p, eq)? {
        return Err(Error::NotASolution);
    }

    let mut levels: Vec<u32> = p.ranks().to_vec();
    levels.sort_unstable();
    levels.dedup();
    let mut classes: Vec<Vec<u32>> = levels
        .iter()
        .map(|&rank| {
            (1..=n as u32)
                .filter(|&v| p.rank_of(v) == Some(rank))
                .collect()
        })
        .collect();

    // Both sides attain the point's minimum, so both anchors exist.
    let bottom = &classes[0];
    let anchor_lhs = *bottom.iter().find(|&&v| eq.lhs().contains(v)).unwrap();
    let anchor_rhs = *bottom.iter().find(|&&v| eq.rhs().contains(v)).unwrap();

    while classes.len() < l as usize {
        let (which, slot) = classes
            .iter()
            .enumerate()
            .find_map(|(k, class)| {
                if class.len() < 2 {
                    return None;
                }
                class
                    .iter()
                    .position(|&v| v != anchor_lhs && v != anchor_rhs)
                    .map(|slot| (k, slot))
            })
            .expect("a splittable class exists whenever n exceeds the chain order");
        let moved = classes[which].remove(slot);
        classes.insert(which + 1, vec![moved]);
    }

    let blocks = classes
        .into_iter()
        .map(|vars| VarSet::from_indices(&vars))
        .collect::<Result<Vec<_>>>()?;
    OrderedPartition::new(n, blocks)
}

/// How thoroughly the components of one equation overlap.
#[derive(Debug, Clone)]
pub struct RedundancyReport {
    pub component_count: usize,
    /// Common points of all components.
    pub intersection: AlgebraicSet,
    /// Whether the intersection is exactly the `l` constant points.
    pub intersection_is_diagonal: bool,
    /// Whether each component minus all others leaves exactly the
    /// inducing partition's canonical point.
    pub exclusive_residues_are_canonical: bool,
    /// Whether all components have isomorphic coordinate semilattices.
    pub components_pairwise_isomorphic: bool,
    /// Whether every component has `C(2l - 1, l)` points.
    pub sizes_match_formula: bool,
}

impl RedundancyReport {
    pub fn all_hold(&self) -> bool {
        self.intersection_is_diagonal
            && self.exclusive_residues_are_canonical
            && self.components_pairwise_isomorphic
            && self.sizes_match_formula
    }
}

/// Decomposes `eq` and verifies the expected overlap structure of the
/// components: diagonal-only mutual intersection, one exclusive point per
/// component, pairwise isomorphism, and the closed-form component size.
pub fn redundancy_report(eq: &Equation, chain: Chain, n: usize) -> Result<RedundancyReport> {
    let components = decompose(eq, chain, n)?;
    if components.is_empty() {
        return Err(Error::EmptySet);
    }
    let l = chain.order();

    let mut intersection = components[0].set.clone();
    for c in &components[1..] {
        intersection = intersection.intersection(&c.set)?;
    }
    let intersection_is_diagonal = intersection == AlgebraicSet::diagonal(chain, n)?;

    // Union of all components except one, via prefix/suffix sweeps.
    let empty = AlgebraicSet::from_points(chain, n, &[])?;
    let m = components.len();
    let mut prefix = vec![empty.clone(); m + 1];
    for (i, c) in components.iter().enumerate() {
        prefix[i + 1] = prefix[i].union(&c.set)?;
    }
    let mut suffix = vec![empty; m + 1];
    for (i, c) in components.iter().enumerate().rev() {
        suffix[i] = suffix[i + 1].union(&c.set)?;
    }
    let mut exclusive_residues_are_canonical = true;
    for (i, c) in components.iter().enumerate() {
        let others = prefix[i].union(&suffix[i + 1])?;
        let residue = c.set.difference(&others)?;
        let canonical = AlgebraicSet::from_points(chain, n, &[c.partition.canonical_point()])?;
        if residue != canonical {
            exclusive_residues_are_canonical = false;
        }
    }

    let first = coordinate_semilattice(&components[0].set)?;
    let mut components_pairwise_isomorphic = first.is_chain() && first.class_count() == l as usize;
    for c in &components[1..] {
        if !are_isomorphic(&components[0].set, &c.set)? {
            components_pairwise_isomorphic = false;
            break;
        }
    }

    let expected_size = binomial(2 * i64::from(l) - 1, i64::from(l))?;
    let sizes_match_formula = components
        .iter()
        .all(|c| num_bigint::BigInt::from(c.set.len()) == expected_size);

    Ok(RedundancyReport {
        component_count: m,
        intersection,
        intersection_is_diagonal,
        exclusive_residues_are_canonical,
        components_pairwise_isomorphic,
        sizes_match_formula,
    })
}
