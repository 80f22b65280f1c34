//! Equations over linearly ordered semilattices.
//!
//! A linearly ordered semilattice of order `l` is the chain
//! `a_1 < a_2 < ... < a_l` under minimum. This crate parses and evaluates
//! term equations over such chains, computes their solution sets in `L^n`,
//! decomposes each solution set into its irreducible components via ordered
//! partitions of the variables, and counts those components in closed form
//! with exact arithmetic.

pub mod checks;
pub mod coordinate;
pub mod counting;
pub mod error;
pub mod oracle;
pub mod partition;
pub mod semilattice;
pub mod solution;
pub mod table;
pub mod term;
pub mod varset;

pub use checks::{run_all_checks, CheckReport};
pub use coordinate::{
    are_isomorphic, coordinate_semilattice, is_irreducible, CoordinateSemilattice,
};
pub use error::{Error, ParseError, Result};
pub use oracle::{all_algebraic_sets, irreducible_components_oracle, AlgebraicLattice};
pub use partition::{
    decompose, enumerate_ordered_partitions, extend_point_to_partition, is_component_partition,
    redundancy_report, Component, OrderedPartition, OrderedPartitions, RedundancyReport,
};
pub use semilattice::{Chain, Element, Point};
pub use solution::{is_solution, solve, solve_system, AlgebraicSet};
pub use table::{reference_table, ReferenceTable, TableRow};
pub use term::{
    classify, count_equations, enumerate_equations, parse_equation, Equation, EquationClass,
    Equations, SourceForm, Term,
};
pub use varset::VarSet;
