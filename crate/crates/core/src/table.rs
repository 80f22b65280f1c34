//! The merged component-count table for equations in three variables over
//! the two-element chain.
//!
//! All 25 equations mentioning `x1, x2, x3` are decomposed over `L_2`.
//! An equation and its side-swapped twin have the same solution set and
//! the same components, so the two are merged into one row, leaving 13
//! rows. Rows are grouped by shape in a fixed presentation order: the
//! trivial equation, one variable against the product of all three, one
//! variable against the product of the other two, products of two
//! overlapping pairs, and a pair against the product of all three.

use num_rational::BigRational;

use crate::error::Result;
use crate::partition::{decompose, Component};
use crate::semilattice::Chain;
use crate::term::{classify, enumerate_equations, Equation};

const TABLE_VARS: usize = 3;
const TABLE_ORDER: u32 = 2;
const SHAPE_ORDER: [(u32, u32); 5] = [(0, 0), (0, 2), (1, 2), (1, 1), (0, 1)];

/// One table row: an equation, its side-swapped twin when distinct, and
/// the shared irreducible components.
#[derive(Debug, Clone)]
pub struct TableRow {
    primary: Equation,
    mirror: Option<Equation>,
    components: Vec<Component>,
}

impl TableRow {
    /// The form with no more exclusive variables on the left than on the
    /// right; mask order breaks the tie between symmetric shapes.
    pub fn primary(&self) -> &Equation {
        &self.primary
    }

    /// The side-swapped form, absent for the symmetric equation.
    pub fn mirror(&self) -> Option<&Equation> {
        self.mirror.as_ref()
    }

    /// How many ordered equations the row stands for: 1 or 2.
    pub fn equation_count(&self) -> u64 {
        if self.mirror.is_some() {
            2
        } else {
            1
        }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_count(&self) -> u64 {
        self.components.len() as u64
    }
}

/// The full table in presentation order.
#[derive(Debug, Clone)]
pub struct ReferenceTable {
    rows: Vec<TableRow>,
}

impl ReferenceTable {
    pub fn dim(&self) -> usize {
        TABLE_VARS
    }

    pub fn chain(&self) -> Chain {
        Chain::new(TABLE_ORDER).unwrap()
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    /// Total number of ordered equations covered: 25.
    pub fn equation_total(&self) -> u64 {
        self.rows.iter().map(TableRow::equation_count).sum()
    }

    /// Component count summed over all ordered equations: 90.
    pub fn component_sum(&self) -> u64 {
        self.rows
            .iter()
            .map(|r| r.equation_count() * r.component_count())
            .sum()
    }

    /// Average component count per equation, reduced.
    pub fn average(&self) -> BigRational {
        BigRational::new(self.component_sum().into(), self.equation_total().into())
    }
}

/// Builds the table by decomposing every equation in three variables over
/// the two-element chain and merging side-swapped pairs.
pub fn reference_table() -> Result<ReferenceTable> {
    let chain = Chain::new(TABLE_ORDER)?;
    let key = |eq: &Equation| -> Result<(u32, u32, u32, u32)> {
        let class = classify(eq, TABLE_VARS as u32)?;
        Ok((
            class.k1(),
            class.k2(),
            eq.lhs().vars().bits(),
            eq.rhs().vars().bits(),
        ))
    };
    let mut rows: Vec<TableRow> = Vec::new();
    for eq in enumerate_equations(TABLE_VARS as u32)? {
        let swapped = eq.swapped();
        if key(&swapped)? < key(&eq)? {
            // The twin is the primary form and owns the row.
            continue;
        }
        let components = decompose(&eq, chain, TABLE_VARS)?;
        let mirror = if swapped == eq { None } else { Some(swapped) };
        rows.push(TableRow {
            primary: eq,
            mirror,
            components,
        });
    }

    rows.sort_by_key(|row| {
        let class = classify(&row.primary, TABLE_VARS as u32).unwrap();
        let shape = SHAPE_ORDER
            .iter()
            .position(|&(k1, k2)| (class.k1(), class.k2()) == (k1, k2))
            .expect("every merged row falls in one of the five shapes");
        (
            shape,
            row.primary.lhs().vars().bits(),
            row.primary.rhs().vars().bits(),
        )
    });
    Ok(ReferenceTable { rows })
}
