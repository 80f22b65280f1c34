//! Terms, equations, parsing, and equation enumeration.
//!
//! Terms are products of variables under an idempotent commutative
//! operation, so a term is determined by the set of variables it mentions.
//! Parsing canonicalizes immediately: `x1*x2*x1` and `x2x1` both become the
//! term with variable set `{1, 2}`.
//!
//! An equation is an ordered pair of terms; `t = s` and `s = t` are distinct
//! objects even though they have the same solutions. The inequality
//! `t <= s` is shorthand for `t*s = t` and is desugared at parse time, with
//! the original form kept as metadata.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;

use crate::counting::binomial;
use crate::error::{Error, ParseError, Result};
use crate::varset::VarSet;

/// Largest ambient variable count accepted by [`enumerate_equations`];
/// there are `3^n - 2` equations over `n` variables.
pub const MAX_ENUMERATION_VARS: u32 = 20;

/// A nonempty product of variables, canonicalized to its variable set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    vars: VarSet,
}

impl Term {
    pub fn new(vars: VarSet) -> Result<Term> {
        if vars.is_empty() {
            return Err(Error::EmptyTerm);
        }
        Ok(Term { vars })
    }

    pub fn from_indices(indices: &[u32]) -> Result<Term> {
        Term::new(VarSet::from_indices(indices)?)
    }

    pub fn vars(self) -> VarSet {
        self.vars
    }

    pub fn contains(self, var: u32) -> bool {
        self.vars.contains(var)
    }

    pub fn max_var(self) -> u32 {
        self.vars.max_var().unwrap_or(0)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.vars.iter() {
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// How an equation was written before desugaring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceForm {
    Equality,
    Inequality,
}

/// An ordered pair of terms `lhs = rhs`.
#[derive(Debug, Clone, Copy)]
pub struct Equation {
    lhs: Term,
    rhs: Term,
    source: SourceForm,
}

impl Equation {
    /// The equation `t = s`.
    pub fn equality(t: Term, s: Term) -> Equation {
        Equation {
            lhs: t,
            rhs: s,
            source: SourceForm::Equality,
        }
    }

    /// The inequality `t <= s`, desugared to `t*s = t`.
    pub fn le(t: Term, s: Term) -> Equation {
        Equation {
            lhs: Term {
                vars: t.vars.union(s.vars),
            },
            rhs: t,
            source: SourceForm::Inequality,
        }
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    /// The form the equation was written in; provenance only, ignored by
    /// comparisons.
    pub fn source_form(&self) -> SourceForm {
        self.source
    }

    /// Union of both sides' variables.
    pub fn variables(&self) -> VarSet {
        self.lhs.vars.union(self.rhs.vars)
    }

    pub fn max_var(&self) -> u32 {
        self.variables().max_var().unwrap_or(0)
    }

    /// The mirrored pair `rhs = lhs`.
    pub fn swapped(&self) -> Equation {
        Equation {
            lhs: self.rhs,
            rhs: self.lhs,
            source: SourceForm::Equality,
        }
    }
}

impl PartialEq for Equation {
    fn eq(&self, other: &Self) -> bool {
        self.lhs == other.lhs && self.rhs == other.rhs
    }
}

impl Eq for Equation {}

impl Hash for Equation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lhs.hash(state);
        self.rhs.hash(state);
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// The shape `(k1, k2)` of an equation `t = s` over `n` variables, where
/// `k1 = |Var(t) \ Var(s)|` and `k2 = |Var(s) \ Var(t)|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EquationClass {
    k1: u32,
    k2: u32,
    n: u32,
}

impl EquationClass {
    pub fn new(k1: u32, k2: u32, n: u32) -> Result<EquationClass> {
        if n == 0 || k1 + k2 > n {
            return Err(Error::InvalidClass { k1, k2, n });
        }
        Ok(EquationClass { k1, k2, n })
    }

    pub fn k1(self) -> u32 {
        self.k1
    }

    pub fn k2(self) -> u32 {
        self.k2
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// Whether any equation mentioning all `n` variables has this class.
    ///
    /// The boundary classes `(0, n)` and `(n, 0)` would force one side to
    /// be empty, so no equation realizes them.
    pub fn is_realizable(self) -> bool {
        !((self.k1 == 0 && self.k2 == self.n) || (self.k1 == self.n && self.k2 == 0))
    }
}

/// Classifies an equation that mentions every variable `x1..xn`.
pub fn classify(eq: &Equation, n: u32) -> Result<EquationClass> {
    let full = VarSet::full(n)?;
    if eq.variables() != full {
        return Err(Error::MissingVariables { n });
    }
    let k1 = eq.lhs.vars.difference(eq.rhs.vars).len();
    let k2 = eq.rhs.vars.difference(eq.lhs.vars).len();
    EquationClass::new(k1, k2, n)
}

/// Number of equations of class `(k1, k2)` among those mentioning all `n`
/// variables: `C(n, k1) * C(n - k1, k2)`.
pub fn count_equations(class: EquationClass) -> Result<BigInt> {
    if !class.is_realizable() {
        return Err(Error::InvalidClass {
            k1: class.k1,
            k2: class.k2,
            n: class.n,
        });
    }
    let n = i64::from(class.n);
    let k1 = i64::from(class.k1);
    let k2 = i64::from(class.k2);
    Ok(binomial(n, k1)? * binomial(n - k1, k2)?)
}

/// Lazily enumerates every equation over `n` variables that mentions each
/// of `x1..xn` at least once.
///
/// Pairs `(T, S)` of variable sets are emitted in ascending order of
/// `(bitmask(T), bitmask(S))`, where bit `i - 1` stands for `x_i`. The
/// sequence has length `3^n - 2`.
pub fn enumerate_equations(n: u32) -> Result<Equations> {
    if n > MAX_ENUMERATION_VARS {
        return Err(Error::CapExceeded {
            what: "enumerate_equations",
        });
    }
    let full = VarSet::full(n)?.bits();
    Ok(Equations {
        full,
        mask_t: 1,
        sub: 0,
        sub_done: false,
        remaining: 3u64.pow(n) - 2,
    })
}

/// Iterator returned by [`enumerate_equations`].
#[derive(Debug, Clone)]
pub struct Equations {
    full: u32,
    mask_t: u32,
    sub: u32,
    sub_done: bool,
    remaining: u64,
}

impl Iterator for Equations {
    type Item = Equation;

    fn next(&mut self) -> Option<Equation> {
        while self.mask_t <= self.full {
            if self.sub_done {
                self.mask_t += 1;
                self.sub = 0;
                self.sub_done = false;
                continue;
            }
            let required = self.full & !self.mask_t;
            let mask_s = required | self.sub;
            let next_sub = self.sub.wrapping_sub(self.mask_t) & self.mask_t;
            if next_sub == 0 {
                self.sub_done = true;
            } else {
                self.sub = next_sub;
            }
            if mask_s == 0 {
                // Only T = {x1..xn} with the empty subset lands here; an
                // empty right side is not a term.
                continue;
            }
            self.remaining -= 1;
            return Some(Equation::equality(
                Term {
                    vars: VarSet::from_bits(self.mask_t),
                },
                Term {
                    vars: VarSet::from_bits(mask_s),
                },
            ));
        }
        None
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Parses `term ("=" | "<=") term` where a term is a product of variables
/// `x<digits>` joined by juxtaposition or `*`. Whitespace between tokens is
/// ignored. Variables must lie in `x1..xn`.
pub fn parse_equation(text: &str, n: u32) -> Result<Equation> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        n,
    }
    .equation()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    n: u32,
}

impl<'a> Parser<'a> {
    fn equation(&mut self) -> Result<Equation> {
        let lhs = self.term()?;
        let relation_pos = self.pos;
        let le = match self.peek() {
            Some(b'=') => {
                self.pos += 1;
                false
            }
            Some(b'<') => {
                self.pos += 1;
                if self.peek() != Some(b'=') {
                    return Err(self.syntax("expected '=' after '<'"));
                }
                self.pos += 1;
                true
            }
            Some(_) => return Err(self.syntax("expected '=' or '<='")),
            None => return Err(self.syntax("missing relation and right side")),
        };
        let _ = relation_pos;
        let rhs = self.term()?;
        self.skip_ws();
        if self.pos < self.bytes.len() {
            return Err(self.syntax("trailing input after equation"));
        }
        Ok(if le {
            Equation::le(lhs, rhs)
        } else {
            Equation::equality(lhs, rhs)
        })
    }

    fn term(&mut self) -> Result<Term> {
        let mut vars = VarSet::EMPTY;
        let start = self.skip_ws();
        loop {
            match self.peek() {
                Some(b'x') => vars = vars.with(self.var()?)?,
                Some(b'*') => {
                    if vars.is_empty() {
                        return Err(self.syntax("expected variable before '*'"));
                    }
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek() != Some(b'x') {
                        return Err(self.syntax("expected variable after '*'"));
                    }
                }
                _ => break,
            }
            self.skip_ws();
        }
        if vars.is_empty() {
            return Err(Error::Parse(ParseError {
                position: start,
                message: "empty side: expected at least one variable".to_string(),
            }));
        }
        Ok(Term { vars })
    }

    fn var(&mut self) -> Result<u32> {
        let start = self.pos;
        self.pos += 1;
        let digits_start = self.pos;
        while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.syntax("expected digits after 'x'"));
        }
        let text = std::str::from_utf8(&self.bytes[digits_start..self.pos]).unwrap();
        let index: u32 = text.parse().map_err(|_| Error::VarOutOfRange {
            var: u32::MAX,
            n: self.n,
        })?;
        if index == 0 || index > self.n {
            return Err(Error::VarOutOfRange {
                var: index,
                n: self.n,
            });
        }
        Ok(index)
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) -> usize {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos
    }

    fn syntax(&self, message: &str) -> Error {
        Error::Parse(ParseError {
            position: self.pos,
            message: message.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eq(lhs: &[u32], rhs: &[u32]) -> Equation {
        Equation::equality(
            Term::from_indices(lhs).unwrap(),
            Term::from_indices(rhs).unwrap(),
        )
    }

    #[test]
    fn parse_canonicalizes_duplicates_and_order() {
        let parsed = parse_equation("x2 * x1x2 = x1", 2).unwrap();
        assert_eq!(parsed, eq(&[1, 2], &[1]));
        assert_eq!(parsed.source_form(), SourceForm::Equality);
        assert_eq!(
            parse_equation("  x1  x2=x1 ", 2).unwrap(),
            eq(&[1, 2], &[1])
        );
    }

    #[test]
    fn inequality_desugars_to_meet_equation() {
        let parsed = parse_equation("x2 <= x1", 2).unwrap();
        assert_eq!(parsed, eq(&[1, 2], &[2]));
        assert_eq!(parsed.source_form(), SourceForm::Inequality);
        // Desugaring produces the same object as writing the equality.
        assert_eq!(parsed, parse_equation("x1x2 = x2", 2).unwrap());
    }

    #[test]
    fn equations_are_ordered_pairs() {
        let a = parse_equation("x1 = x1x2", 2).unwrap();
        let b = parse_equation("x1x2 = x1", 2).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.swapped(), b);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_equation("x1 + x2 = x1", 2) {
            Err(Error::Parse(e)) => assert_eq!(e.position, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_equation("= x1", 1) {
            Err(Error::Parse(e)) => assert!(e.message.contains("empty side"), "{e}"),
            other => panic!("expected empty-side error, got {other:?}"),
        }
        assert!(parse_equation("x1 = ", 1).is_err());
        assert!(parse_equation("x1 < x2", 2).is_err());
        assert!(parse_equation("x1 = x2 x", 2).is_err());
        assert!(parse_equation("x1 * = x2", 2).is_err());
    }

    #[test]
    fn parse_rejects_out_of_range_variables() {
        assert_eq!(
            parse_equation("x3 = x1", 2).unwrap_err(),
            Error::VarOutOfRange { var: 3, n: 2 }
        );
        assert_eq!(
            parse_equation("x0 = x1", 2).unwrap_err(),
            Error::VarOutOfRange { var: 0, n: 2 }
        );
    }

    #[test]
    fn classify_splits_symmetric_differences() {
        let e = parse_equation("x1x2 = x1x3x4", 4).unwrap();
        let class = classify(&e, 4).unwrap();
        assert_eq!((class.k1(), class.k2()), (1, 2));
        assert!(classify(&parse_equation("x1 = x2", 3).unwrap(), 3).is_err());
    }

    #[test]
    fn enumeration_order_and_length_for_two_variables() {
        let all: Vec<Equation> = enumerate_equations(2).unwrap().collect();
        assert_eq!(
            all,
            vec![
                eq(&[1], &[2]),
                eq(&[1], &[1, 2]),
                eq(&[2], &[1]),
                eq(&[2], &[1, 2]),
                eq(&[1, 2], &[1]),
                eq(&[1, 2], &[2]),
                eq(&[1, 2], &[1, 2]),
            ]
        );
    }

    #[test]
    fn enumeration_matches_class_counts_up_to_seven_variables() {
        for n in 1..=7u32 {
            let mut total = 0u64;
            let mut by_class = std::collections::HashMap::new();
            for e in enumerate_equations(n).unwrap() {
                assert_eq!(e.variables(), VarSet::full(n).unwrap());
                let c = classify(&e, n).unwrap();
                *by_class.entry((c.k1(), c.k2())).or_insert(0u64) += 1;
                total += 1;
            }
            assert_eq!(total, 3u64.pow(n) - 2);
            for ((k1, k2), count) in by_class {
                let class = EquationClass::new(k1, k2, n).unwrap();
                assert_eq!(BigInt::from(count), count_equations(class).unwrap());
            }
        }
    }

    #[test]
    fn class_counts_reject_unrealizable_shapes() {
        assert!(count_equations(EquationClass::new(0, 3, 3).unwrap()).is_err());
        assert!(count_equations(EquationClass::new(3, 0, 3).unwrap()).is_err());
        assert!(EquationClass::new(2, 2, 3).is_err());
        let c = EquationClass::new(1, 2, 3).unwrap();
        assert_eq!(count_equations(c).unwrap(), BigInt::from(3));
    }

    #[test]
    fn enumeration_cap_refuses_oversized_ambient() {
        assert!(enumerate_equations(21).is_err());
        assert_eq!(
            enumerate_equations(20).unwrap().size_hint().0,
            3usize.pow(20) - 2
        );
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(lhs_bits in 1u32..128, rhs_bits in 1u32..128) {
            let e = Equation::equality(
                Term::new(VarSet::from_bits(lhs_bits)).unwrap(),
                Term::new(VarSet::from_bits(rhs_bits)).unwrap(),
            );
            let reparsed = parse_equation(&e.to_string(), 7).unwrap();
            prop_assert_eq!(e, reparsed);
            prop_assert_eq!(e.to_string(), reparsed.to_string());
        }

        #[test]
        fn spacing_and_stars_do_not_change_the_parse(
            vars in proptest::collection::vec(1u32..=6, 1..6),
            stars in proptest::collection::vec(proptest::bool::ANY, 6),
            spaces in proptest::collection::vec(proptest::bool::ANY, 6),
        ) {
            let mut text = String::new();
            for (i, v) in vars.iter().enumerate() {
                if i > 0 {
                    if stars[i - 1] { text.push('*'); }
                    if spaces[i - 1] { text.push(' '); }
                }
                text.push_str(&format!("x{v}"));
            }
            let noisy = parse_equation(&format!("{text} = x1"), 6).unwrap();
            let canonical = Equation::equality(
                Term::from_indices(&vars).unwrap(),
                Term::from_indices(&[1]).unwrap(),
            );
            prop_assert_eq!(noisy, canonical);
        }
    }
}
