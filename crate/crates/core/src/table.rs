//! Finite partial magmas given by Cayley tables.
//!
//! A [`PartialMagma`] stores its carrier as an ordered list of element names
//! and the operation as an `n × n` grid of optional element indices. The row
//! is the left operand and the column the right operand, so `product(x, y)`
//! reads cell `(x, y)`.
//!
//! The text format is line oriented:
//!
//! ```text
//! # right-zero band
//! elements: x y
//! x: x y
//! y: x y
//! ```
//!
//! Rows must follow the element order of the header, `-` marks an undefined
//! product and `#` starts a comment.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of an element in the carrier of a [`PartialMagma`].
pub type Elem = usize;

/// What a [`Witness`] demonstrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `(x, y, z)`: the triple triggers the associativity law but one side
    /// is undefined or the sides differ.
    Associativity,
    /// `(x)`: no unit is effective on one side of `x`.
    MissingUnit,
    /// `(x, candidates...)`: `x` does not have exactly one inverse.
    NonUniqueInverse,
    /// `(x, candidates...)`: `x` does not have exactly one left unit acting
    /// as a local right unit.
    LeftUnitClash,
    /// `(a, b)`: distinct left units with `a ≤ b` and `b ≤ a`.
    Antisymmetry,
    /// `(x, y)`: `φ_x φ_y` and `φ_y φ_x` are defined but `φ_x ≠ φ_y`.
    Normality,
    /// `(a, b)`: left units without a greatest lower bound.
    NoMeet,
    /// `(x, y)`: an undefined product.
    NotTotal,
    /// `(units...)`: the number of units is not one.
    UnitCount,
    /// `(x, y)`: the product or composite leaves the set.
    NotClosed,
    /// `(f, g)`: `dom(f) ⊇ im(g)` but `dom(f) ≠ cod(g)`.
    Composability,
    /// `(f)`: an identity map required by `f` is not a member.
    MissingIdentity,
    /// `(x, y)`: a product is not preserved by a map.
    ProductMismatch,
    /// `(e)`: a unit is not sent to a unit or identity.
    UnitImage,
    /// `(x, y)`: images compose although `xy` is undefined.
    Reflection,
    /// `(elements...)`: the restricted operation is undefined everywhere.
    EmptyOperation,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::Associativity => "associativity",
            WitnessKind::MissingUnit => "missing-unit",
            WitnessKind::NonUniqueInverse => "non-unique-inverse",
            WitnessKind::LeftUnitClash => "left-unit-clash",
            WitnessKind::Antisymmetry => "antisymmetry",
            WitnessKind::Normality => "normality",
            WitnessKind::NoMeet => "no-meet",
            WitnessKind::NotTotal => "not-total",
            WitnessKind::UnitCount => "unit-count",
            WitnessKind::NotClosed => "not-closed",
            WitnessKind::Composability => "composability",
            WitnessKind::MissingIdentity => "missing-identity",
            WitnessKind::ProductMismatch => "product-mismatch",
            WitnessKind::UnitImage => "unit-image",
            WitnessKind::Reflection => "reflection",
            WitnessKind::EmptyOperation => "empty-operation",
        }
    }
}

/// A tuple of element (or member) indices demonstrating why a property fails.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub elements: Vec<usize>,
}

impl Witness {
    pub fn new(kind: WitnessKind, elements: impl Into<Vec<usize>>) -> Self {
        Witness {
            kind,
            elements: elements.into(),
        }
    }

    /// Renders the witness with element names instead of indices.
    pub fn describe(&self, names: &[String]) -> String {
        let parts: Vec<&str> = self
            .elements
            .iter()
            .map(|&i| names.get(i).map(String::as_str).unwrap_or("?"))
            .collect();
        format!("{} ({})", self.kind.as_str(), parts.join(", "))
    }

    /// Replays a table-level witness against `m`.
    ///
    /// Returns `None` for kinds that refer to map magmas or morphisms rather
    /// than to a single table.
    pub fn replays_on(&self, m: &PartialMagma) -> Option<bool> {
        let n = m.size();
        if self.elements.iter().any(|&i| i >= n) {
            return Some(false);
        }
        let el = &self.elements;
        let local_right_left_units = |x: Elem| -> usize {
            (0..n)
                .filter(|&l| m.is_left_unit(l) && m.product(x, l) == Some(x))
                .count()
        };
        let replay = match self.kind {
            WitnessKind::Associativity => {
                let [x, y, z] = el[..] else { return Some(false) };
                let xy = m.product(x, y);
                let yz = m.product(y, z);
                let left = xy.and_then(|a| m.product(a, z));
                let right = yz.and_then(|b| m.product(x, b));
                let trigger = (xy.is_some() && yz.is_some()) || left.is_some() || right.is_some();
                trigger && !(left.is_some() && left == right)
            }
            WitnessKind::MissingUnit => {
                let [x] = el[..] else { return Some(false) };
                let units = m.units();
                !units.iter().any(|&e| m.is_defined(e, x)) || !units.iter().any(|&e| m.is_defined(x, e))
            }
            WitnessKind::NonUniqueInverse => {
                let Some(&x) = el.first() else { return Some(false) };
                let count = (0..n)
                    .filter(|&y| {
                        matches!(m.product(x, y), Some(u) if m.is_unit(u))
                            && matches!(m.product(y, x), Some(u) if m.is_unit(u))
                    })
                    .count();
                count != 1
            }
            WitnessKind::LeftUnitClash => {
                let Some(&x) = el.first() else { return Some(false) };
                local_right_left_units(x) != 1
            }
            WitnessKind::Antisymmetry => {
                let [a, b] = el[..] else { return Some(false) };
                a != b
                    && m.is_left_unit(a)
                    && m.is_left_unit(b)
                    && m.product(b, a) == Some(a)
                    && m.product(a, b) == Some(b)
            }
            WitnessKind::Normality => {
                let [x, y] = el[..] else { return Some(false) };
                let phi = |x: Elem| (0..n).find(|&l| m.is_left_unit(l) && m.product(x, l) == Some(x));
                match (phi(x), phi(y)) {
                    (Some(a), Some(b)) => a != b && m.is_defined(a, b) && m.is_defined(b, a),
                    _ => false,
                }
            }
            WitnessKind::NotTotal => {
                let [x, y] = el[..] else { return Some(false) };
                !m.is_defined(x, y)
            }
            WitnessKind::UnitCount => m.units().len() != 1 && m.units() == *el,
            _ => return None,
        };
        Some(replay)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(ToString::to_string).collect();
        write!(f, "{} ({})", self.kind.as_str(), parts.join(", "))
    }
}

/// Outcome of a property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

impl From<Result<(), Witness>> for Verdict {
    fn from(r: Result<(), Witness>) -> Self {
        match r {
            Ok(()) => Verdict::Holds,
            Err(w) => Verdict::Fails(w),
        }
    }
}

/// A finite set with a partial binary operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialMagma {
    names: Vec<String>,
    cells: Vec<Option<Elem>>,
}

fn valid_token(tok: &str) -> bool {
    !tok.is_empty() && tok != "-" && !tok.contains(':') && !tok.chars().any(char::is_whitespace)
}

/// Default element names: `a`..`z` for small carriers, `e0`, `e1`, ... otherwise.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("e{i}")).collect()
    }
}

impl PartialMagma {
    /// Builds a magma from element names and a row-major table of `n²` cells.
    pub fn new(names: Vec<String>, cells: Vec<Option<Elem>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Syntax {
                line: 0,
                message: "a magma needs at least one element".into(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_token(name) {
                return Err(Error::Syntax {
                    line: 0,
                    message: format!("invalid element name `{name}`"),
                });
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateName {
                    line: 0,
                    name: name.clone(),
                });
            }
        }
        if cells.len() != n * n {
            return Err(Error::RowCountMismatch {
                expected: n * n,
                found: cells.len(),
            });
        }
        if let Some(&bad) = cells.iter().flatten().find(|&&c| c >= n) {
            return Err(Error::OutOfRange { index: bad, size: n });
        }
        if cells.iter().all(Option::is_none) {
            return Err(Error::EmptyOperation);
        }
        Ok(PartialMagma { names, cells })
    }

    /// Builds a magma with [`default_names`].
    pub fn with_default_names(cells: Vec<Option<Elem>>) -> Result<Self> {
        let n = (cells.len() as f64).sqrt() as usize;
        if n * n != cells.len() {
            return Err(Error::RowCountMismatch {
                expected: n * n,
                found: cells.len(),
            });
        }
        Self::new(default_names(n), cells)
    }

    /// Builds a magma from element names and rows of optional products.
    pub fn from_rows(names: &[&str], rows: &[&[Option<Elem>]]) -> Result<Self> {
        let n = names.len();
        if rows.len() != n {
            return Err(Error::RowCountMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        let mut cells = Vec::with_capacity(n * n);
        for (line, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::WidthMismatch {
                    line: line + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            cells.extend_from_slice(row);
        }
        Self::new(names.iter().map(|s| s.to_string()).collect(), cells)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[Option<Elem>] {
        &self.cells
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    /// The product `xy`, or `None` when undefined.
    #[inline]
    pub fn product(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.cells[x * self.size() + y]
    }

    #[inline]
    pub fn is_defined(&self, x: Elem, y: Elem) -> bool {
        self.product(x, y).is_some()
    }

    /// Product of possibly-undefined operands; undefined propagates.
    #[inline]
    pub fn product_opt(&self, x: Option<Elem>, y: Option<Elem>) -> Option<Elem> {
        self.product(x?, y?)
    }

    /// `x ≺ y`: `xy` is defined, or `x(yz)` is defined for some `z`, or
    /// `(zx)y` is defined for some `z`.
    pub fn precedes(&self, x: Elem, y: Elem) -> bool {
        self.is_defined(x, y)
            || self.elements().any(|z| {
                self.product_opt(Some(x), self.product(y, z)).is_some()
                    || self.product_opt(self.product(z, x), Some(y)).is_some()
            })
    }

    /// `ex = x` whenever `ex` is defined.
    pub fn is_left_unit(&self, e: Elem) -> bool {
        self.elements().all(|x| self.product(e, x).is_none_or(|p| p == x))
    }

    /// `xe = x` whenever `xe` is defined.
    pub fn is_right_unit(&self, e: Elem) -> bool {
        self.elements().all(|x| self.product(x, e).is_none_or(|p| p == x))
    }

    pub fn is_unit(&self, e: Elem) -> bool {
        self.is_left_unit(e) && self.is_right_unit(e)
    }

    /// All units, including vacuous ones whose products are all undefined.
    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&e| self.is_unit(e)).collect()
    }

    pub fn left_units(&self) -> Vec<Elem> {
        self.elements().filter(|&e| self.is_left_unit(e)).collect()
    }

    pub fn right_units(&self) -> Vec<Elem> {
        self.elements().filter(|&e| self.is_right_unit(e)).collect()
    }

    /// Units `e` with `ex` defined, and units `e` with `xe` defined.
    pub fn effective_units(&self, x: Elem) -> (Vec<Elem>, Vec<Elem>) {
        let units = self.units();
        let lefts = units.iter().copied().filter(|&e| self.is_defined(e, x)).collect();
        let rights = units.iter().copied().filter(|&e| self.is_defined(x, e)).collect();
        (lefts, rights)
    }

    pub fn is_total(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// The total magma `P⁰ = P ∪ {0}` where undefined products become the
    /// absorbing element `0`, appended as the last element.
    pub fn adjoin_zero(&self) -> PartialMagma {
        let n = self.size();
        let mut zero = String::from("0");
        while self.names.contains(&zero) {
            zero.push('\'');
        }
        let mut names = self.names.clone();
        names.push(zero);
        let m = n + 1;
        let mut cells = vec![Some(n); m * m];
        for x in 0..n {
            for y in 0..n {
                cells[x * m + y] = Some(self.product(x, y).unwrap_or(n));
            }
        }
        PartialMagma { names, cells }
    }

    /// Renders the table in the magma file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("elements:");
        for name in &self.names {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for x in self.elements() {
            out.push_str(&self.names[x]);
            out.push(':');
            for y in self.elements() {
                out.push(' ');
                match self.product(x, y) {
                    Some(p) => out.push_str(&self.names[p]),
                    None => out.push('-'),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Parses the magma file format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (header_line, header) = lines.next().ok_or(Error::Syntax {
            line: 0,
            message: "missing `elements:` header".into(),
        })?;
        let rest = header.strip_prefix("elements:").ok_or_else(|| Error::Syntax {
            line: header_line,
            message: "expected `elements:` header".into(),
        })?;
        let mut names: Vec<String> = Vec::new();
        for tok in rest.split_whitespace() {
            if !valid_token(tok) {
                return Err(Error::Syntax {
                    line: header_line,
                    message: format!("invalid element name `{tok}`"),
                });
            }
            if names.iter().any(|n| n == tok) {
                return Err(Error::DuplicateName {
                    line: header_line,
                    name: tok.to_string(),
                });
            }
            names.push(tok.to_string());
        }
        let n = names.len();
        if n == 0 {
            return Err(Error::Syntax {
                line: header_line,
                message: "no elements declared".into(),
            });
        }
        let lookup = |line: usize, tok: &str| -> Result<Option<Elem>> {
            if tok == "-" {
                return Ok(None);
            }
            names
                .iter()
                .position(|n| n == tok)
                .map(Some)
                .ok_or_else(|| Error::UnknownToken {
                    line,
                    token: tok.to_string(),
                })
        };
        let mut cells = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (line, content) in lines {
            let (label, entries) = content.split_once(':').ok_or_else(|| Error::Syntax {
                line,
                message: "expected `<element>: <entries>`".into(),
            })?;
            let label = label.trim();
            if rows >= n {
                return Err(Error::RowCountMismatch {
                    expected: n,
                    found: rows + 1,
                });
            }
            match lookup(line, label)? {
                Some(x) if x == rows => {}
                Some(_) => {
                    return Err(Error::Syntax {
                        line,
                        message: format!("row `{label}` out of order, expected `{}`", names[rows]),
                    })
                }
                None => {
                    return Err(Error::UnknownToken {
                        line,
                        token: label.to_string(),
                    })
                }
            }
            let entries: Vec<&str> = entries.split_whitespace().collect();
            if entries.len() != n {
                return Err(Error::WidthMismatch {
                    line,
                    expected: n,
                    found: entries.len(),
                });
            }
            for tok in entries {
                cells.push(lookup(line, tok)?);
            }
            rows += 1;
        }
        if rows != n {
            return Err(Error::RowCountMismatch {
                expected: n,
                found: rows,
            });
        }
        if cells.iter().all(Option::is_none) {
            return Err(Error::EmptyOperation);
        }
        Ok(PartialMagma { names, cells })
    }
}

impl fmt::Display for PartialMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for PartialMagma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Non-blank lines with `#` comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}
