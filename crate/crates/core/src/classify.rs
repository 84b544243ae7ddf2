//! Axiom checkers for the hierarchy of partial magmas.
//!
//! Two-sided: semigroupoid ⊇ poloid ⊇ groupoid, with monoids and groups as
//! the single-unit cases. One-sided: right-directed semigroupoid ⊇ right
//! poloid, refined by normality and the unit-posetal property.
//!
//! Every checker scans in lexicographic index order and reports the first
//! failure it meets, so witnesses are deterministic.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::{Elem, PartialMagma, Verdict, Witness, WitnessKind};

/// The named verdicts of a [`ClassReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Semigroupoid,
    Poloid,
    Groupoid,
    Total,
    Monoid,
    Group,
    RightDirectedSemigroupoid,
    RightPoloid,
    Normal,
    UnitPosetal,
}

impl Class {
    pub const ALL: [Class; 10] = [
        Class::Semigroupoid,
        Class::Poloid,
        Class::Groupoid,
        Class::Total,
        Class::Monoid,
        Class::Group,
        Class::RightDirectedSemigroupoid,
        Class::RightPoloid,
        Class::Normal,
        Class::UnitPosetal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Class::Semigroupoid => "semigroupoid",
            Class::Poloid => "poloid",
            Class::Groupoid => "groupoid",
            Class::Total => "total",
            Class::Monoid => "monoid",
            Class::Group => "group",
            Class::RightDirectedSemigroupoid => "right_directed_semigroupoid",
            Class::RightPoloid => "right_poloid",
            Class::Normal => "normal",
            Class::UnitPosetal => "unit_posetal",
        }
    }

    /// Runs the checker for this class. Classes with preconditions report
    /// the failed precondition's witness.
    pub fn check(self, m: &PartialMagma) -> Verdict {
        match self {
            Class::Semigroupoid => is_semigroupoid(m),
            Class::Poloid => is_poloid(m),
            Class::Groupoid => is_groupoid(m),
            Class::Total => is_total(m),
            Class::Monoid => is_monoid(m),
            Class::Group => is_group(m),
            Class::RightDirectedSemigroupoid => is_right_directed_semigroupoid(m),
            Class::RightPoloid => is_right_poloid(m),
            Class::Normal => flatten(is_normal(m)),
            Class::UnitPosetal => flatten(is_unit_posetal(m)),
        }
    }
}

fn flatten(r: Result<Verdict>) -> Verdict {
    match r {
        Ok(v) => v,
        Err(Error::Precondition { witness, .. }) => Verdict::Fails(witness),
        Err(e) => unreachable!("checkers only fail on preconditions: {e}"),
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        Class::ALL
            .into_iter()
            .find(|c| c.as_str() == key)
            .ok_or_else(|| Error::Syntax {
                line: 0,
                message: format!("unknown class `{s}`"),
            })
    }
}

fn associativity_scan(m: &PartialMagma, two_sided: bool) -> Verdict {
    for x in m.elements() {
        for y in m.elements() {
            let xy = m.product(x, y);
            for z in m.elements() {
                let yz = m.product(y, z);
                let left = m.product_opt(xy, Some(z));
                let right = m.product_opt(Some(x), yz);
                let trigger = (xy.is_some() && yz.is_some()) || left.is_some() || (two_sided && right.is_some());
                if trigger && !(left.is_some() && left == right) {
                    return Verdict::Fails(Witness::new(WitnessKind::Associativity, [x, y, z]));
                }
            }
        }
    }
    Verdict::Holds
}

/// `(xy)z` and `x(yz)` are defined and equal whenever `xy` and `yz` are
/// defined, or `(xy)z` is, or `x(yz)` is.
pub fn is_semigroupoid(m: &PartialMagma) -> Verdict {
    associativity_scan(m, true)
}

/// Like [`is_semigroupoid`] without the `x(yz)` trigger.
pub fn is_right_directed_semigroupoid(m: &PartialMagma) -> Verdict {
    associativity_scan(m, false)
}

pub fn is_total(m: &PartialMagma) -> Verdict {
    for x in m.elements() {
        for y in m.elements() {
            if !m.is_defined(x, y) {
                return Verdict::Fails(Witness::new(WitnessKind::NotTotal, [x, y]));
            }
        }
    }
    Verdict::Holds
}

/// A verified poloid with its effective units.
#[derive(Debug, Clone)]
pub struct Poloid<'a> {
    magma: &'a PartialMagma,
    units: Vec<Elem>,
    eps: Vec<Elem>,
    vareps: Vec<Elem>,
}

impl<'a> Poloid<'a> {
    pub fn verify(m: &'a PartialMagma) -> Result<Self, Witness> {
        if let Verdict::Fails(w) = is_semigroupoid(m) {
            return Err(w);
        }
        let units = m.units();
        let mut eps = Vec::with_capacity(m.size());
        let mut vareps = Vec::with_capacity(m.size());
        for x in m.elements() {
            let lefts: Vec<Elem> = units.iter().copied().filter(|&e| m.is_defined(e, x)).collect();
            let rights: Vec<Elem> = units.iter().copied().filter(|&e| m.is_defined(x, e)).collect();
            match (lefts.as_slice(), rights.as_slice()) {
                ([l], [r]) => {
                    eps.push(*l);
                    vareps.push(*r);
                }
                ([], _) | (_, []) => return Err(Witness::new(WitnessKind::MissingUnit, [x])),
                // two effective units on one side contradict associativity
                _ => return Err(Witness::new(WitnessKind::LeftUnitClash, [x])),
            }
        }
        Ok(Poloid {
            magma: m,
            units,
            eps,
            vareps,
        })
    }

    pub fn magma(&self) -> &'a PartialMagma {
        self.magma
    }

    /// The set `E` of units.
    pub fn units(&self) -> &[Elem] {
        &self.units
    }

    /// The effective left unit `ϵ_x`, the unique unit with `ϵ_x x` defined.
    pub fn eps(&self, x: Elem) -> Elem {
        self.eps[x]
    }

    /// The effective right unit `ε_x`, the unique unit with `x ε_x` defined.
    pub fn vareps(&self, x: Elem) -> Elem {
        self.vareps[x]
    }

    /// `s: x ↦ ϵ_x`.
    pub fn eps_map(&self) -> &[Elem] {
        &self.eps
    }

    /// `t: x ↦ ε_x`.
    pub fn vareps_map(&self) -> &[Elem] {
        &self.vareps
    }

    /// Unique two-sided inverses, or a witness for the first element without one.
    pub fn inverses(&self) -> Result<Vec<Elem>, Witness> {
        let m = self.magma;
        let is_unit = |u: Option<Elem>| u.is_some_and(|u| self.units.contains(&u));
        let mut inv = Vec::with_capacity(m.size());
        for x in m.elements() {
            let candidates: Vec<Elem> = m
                .elements()
                .filter(|&y| is_unit(m.product(x, y)) && is_unit(m.product(y, x)))
                .collect();
            if candidates.len() != 1 {
                let mut elements = vec![x];
                elements.extend(candidates);
                return Err(Witness::new(WitnessKind::NonUniqueInverse, elements));
            }
            let y = candidates[0];
            debug_assert_eq!(m.product(x, y), Some(self.eps[x]));
            debug_assert_eq!(self.eps[x], self.vareps[y]);
            debug_assert_eq!(m.product(y, x), Some(self.vareps[x]));
            debug_assert_eq!(self.vareps[x], self.eps[y]);
            inv.push(y);
        }
        Ok(inv)
    }

    /// Units `ϵ` such that for every unit `e` exactly one `x` has `ϵx` and
    /// `xe` defined.
    pub fn initial_units(&self) -> Vec<Elem> {
        let m = self.magma;
        self.units
            .iter()
            .copied()
            .filter(|&i| {
                self.units.iter().all(|&e| {
                    m.elements()
                        .filter(|&x| m.is_defined(i, x) && m.is_defined(x, e))
                        .count()
                        == 1
                })
            })
            .collect()
    }
}

/// A verified right poloid with its map `x ↦ φ_x`.
#[derive(Debug, Clone)]
pub struct RightPoloid<'a> {
    magma: &'a PartialMagma,
    left_units: Vec<Elem>,
    phi: Vec<Elem>,
}

impl<'a> RightPoloid<'a> {
    pub fn verify(m: &'a PartialMagma) -> Result<Self, Witness> {
        if let Verdict::Fails(w) = is_right_directed_semigroupoid(m) {
            return Err(w);
        }
        let left_units = m.left_units();
        let mut phi = Vec::with_capacity(m.size());
        for x in m.elements() {
            let candidates: Vec<Elem> = left_units
                .iter()
                .copied()
                .filter(|&l| m.product(x, l) == Some(x))
                .collect();
            if candidates.len() != 1 {
                let mut elements = vec![x];
                elements.extend(candidates);
                return Err(Witness::new(WitnessKind::LeftUnitClash, elements));
            }
            phi.push(candidates[0]);
        }
        Ok(RightPoloid {
            magma: m,
            left_units,
            phi,
        })
    }

    pub fn magma(&self) -> &'a PartialMagma {
        self.magma
    }

    pub fn left_units(&self) -> &[Elem] {
        &self.left_units
    }

    /// The unique left unit that is a local right unit for `x`.
    pub fn phi(&self, x: Elem) -> Elem {
        self.phi[x]
    }

    pub fn phi_map(&self) -> &[Elem] {
        &self.phi
    }

    /// Normal: `φ_x φ_y` and `φ_y φ_x` both defined forces `φ_x = φ_y`.
    pub fn is_normal(&self) -> Verdict {
        let m = self.magma;
        for x in m.elements() {
            for y in m.elements() {
                let (a, b) = (self.phi[x], self.phi[y]);
                if a != b && m.is_defined(a, b) && m.is_defined(b, a) {
                    return Verdict::Fails(Witness::new(WitnessKind::Normality, [x, y]));
                }
            }
        }
        Verdict::Holds
    }

    /// `x ≤ y` iff `y φ_x` is defined and equals `x`.
    pub fn natural_preorder(&self) -> Relation {
        let m = self.magma;
        let n = m.size();
        let mut rel = Relation::empty(n);
        for x in 0..n {
            for y in 0..n {
                if m.product(y, self.phi[x]) == Some(x) {
                    rel.set(x, y);
                }
            }
        }
        rel
    }

    /// Antisymmetry of the natural preorder on left units.
    pub fn is_unit_posetal(&self) -> Verdict {
        let le = self.natural_preorder();
        for &a in &self.left_units {
            for &b in &self.left_units {
                if a != b && le.holds(a, b) && le.holds(b, a) {
                    return Verdict::Fails(Witness::new(WitnessKind::Antisymmetry, [a, b]));
                }
            }
        }
        Verdict::Holds
    }

    /// Every pair of left units has a greatest lower bound among left units.
    pub fn is_meet_semilattice_on_left_units(&self) -> Verdict {
        let le = self.natural_preorder();
        let lus = &self.left_units;
        for (i, &a) in lus.iter().enumerate() {
            for &b in &lus[i + 1..] {
                let lower: Vec<Elem> = lus
                    .iter()
                    .copied()
                    .filter(|&c| le.holds(c, a) && le.holds(c, b))
                    .collect();
                let has_meet = lower.iter().any(|&g| lower.iter().all(|&c| le.holds(c, g)));
                if !has_meet {
                    return Verdict::Fails(Witness::new(WitnessKind::NoMeet, [a, b]));
                }
            }
        }
        Verdict::Holds
    }
}

/// A binary relation on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn holds(&self, x: usize, y: usize) -> bool {
        self.bits[x * self.n + y]
    }

    pub fn set(&mut self, x: usize, y: usize) {
        self.bits[x * self.n + y] = true;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |x| (0..self.n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.holds(x, y))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.holds(x, x))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs()
            .all(|(x, y)| (0..self.n).all(|z| !self.holds(y, z) || self.holds(x, z)))
    }
}

fn require_poloid(m: &PartialMagma) -> Result<Poloid<'_>> {
    Poloid::verify(m).map_err(|witness| Error::Precondition {
        class: "poloid",
        witness,
    })
}

fn require_right_poloid(m: &PartialMagma) -> Result<RightPoloid<'_>> {
    RightPoloid::verify(m).map_err(|witness| Error::Precondition {
        class: "right poloid",
        witness,
    })
}

/// A semigroupoid where every element has effective left and right units.
pub fn is_poloid(m: &PartialMagma) -> Verdict {
    Poloid::verify(m).map(|_| ()).into()
}

/// A poloid where every element has a unique two-sided inverse.
pub fn is_groupoid(m: &PartialMagma) -> Verdict {
    Poloid::verify(m).and_then(|p| p.inverses()).map(|_| ()).into()
}

/// A total poloid with exactly one unit. Totality is checked, not inferred.
pub fn is_monoid(m: &PartialMagma) -> Verdict {
    let check = || -> Result<(), Witness> {
        let p = Poloid::verify(m)?;
        if p.units().len() != 1 {
            return Err(Witness::new(WitnessKind::UnitCount, p.units()));
        }
        if let Verdict::Fails(w) = is_total(m) {
            return Err(w);
        }
        Ok(())
    };
    check().into()
}

/// A groupoid with exactly one unit.
pub fn is_group(m: &PartialMagma) -> Verdict {
    let check = || -> Result<(), Witness> {
        let p = Poloid::verify(m)?;
        p.inverses()?;
        if p.units().len() != 1 {
            return Err(Witness::new(WitnessKind::UnitCount, p.units()));
        }
        Ok(())
    };
    check().into()
}

/// A right-directed semigroupoid where every `x` has exactly one left unit
/// `φ_x` with `x φ_x = x`.
pub fn is_right_poloid(m: &PartialMagma) -> Verdict {
    RightPoloid::verify(m).map(|_| ()).into()
}

pub fn is_normal(m: &PartialMagma) -> Result<Verdict> {
    Ok(require_right_poloid(m)?.is_normal())
}

pub fn natural_preorder(m: &PartialMagma) -> Result<Relation> {
    Ok(require_right_poloid(m)?.natural_preorder())
}

pub fn is_unit_posetal(m: &PartialMagma) -> Result<Verdict> {
    Ok(require_right_poloid(m)?.is_unit_posetal())
}

/// Requires a unit-posetal right poloid.
pub fn is_meet_semilattice_on_left_units(m: &PartialMagma) -> Result<Verdict> {
    let rp = require_right_poloid(m)?;
    if let Verdict::Fails(witness) = rp.is_unit_posetal() {
        return Err(Error::Precondition {
            class: "unit-posetal right poloid",
            witness,
        });
    }
    Ok(rp.is_meet_semilattice_on_left_units())
}

/// Requires a poloid; see [`Poloid::initial_units`].
pub fn initial_units(m: &PartialMagma) -> Result<Vec<Elem>> {
    Ok(require_poloid(m)?.initial_units())
}

/// The ten verdicts of a [`ClassReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub semigroupoid: bool,
    pub poloid: bool,
    pub groupoid: bool,
    pub total: bool,
    pub monoid: bool,
    pub group: bool,
    pub right_directed_semigroupoid: bool,
    pub right_poloid: bool,
    pub normal: bool,
    pub unit_posetal: bool,
}

impl Verdicts {
    pub fn get(&self, class: Class) -> bool {
        match class {
            Class::Semigroupoid => self.semigroupoid,
            Class::Poloid => self.poloid,
            Class::Groupoid => self.groupoid,
            Class::Total => self.total,
            Class::Monoid => self.monoid,
            Class::Group => self.group,
            Class::RightDirectedSemigroupoid => self.right_directed_semigroupoid,
            Class::RightPoloid => self.right_poloid,
            Class::Normal => self.normal,
            Class::UnitPosetal => self.unit_posetal,
        }
    }
}

/// A failed verdict and the witness explaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedVerdict {
    pub verdict: Class,
    pub kind: WitnessKind,
    pub elements: Vec<Elem>,
}

/// Verdicts, unit inventories and witnesses for one magma. Element
/// references are indices into `elements`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub elements: Vec<String>,
    pub verdicts: Verdicts,
    pub units: Vec<Elem>,
    pub left_units: Vec<Elem>,
    pub right_units: Vec<Elem>,
    /// `x ↦ ϵ_x`, present iff the magma is a poloid.
    pub eps: Option<Vec<Elem>>,
    /// `x ↦ ε_x`, present iff the magma is a poloid.
    pub vareps: Option<Vec<Elem>>,
    /// `x ↦ φ_x`, present iff the magma is a right poloid.
    pub phi: Option<Vec<Elem>>,
    /// `x ↦ x⁻¹`, present iff the magma is a groupoid.
    pub inverses: Option<Vec<Elem>>,
    pub witnesses: Vec<FailedVerdict>,
}

/// Runs every checker on `m`.
pub fn classify(m: &PartialMagma) -> ClassReport {
    let mut checks: Vec<(Class, Verdict)> = Vec::with_capacity(Class::ALL.len());
    let poloid = Poloid::verify(m).ok();
    let right = RightPoloid::verify(m).ok();
    for class in Class::ALL {
        checks.push((class, class.check(m)));
    }
    let get = |c: Class| checks.iter().find(|(k, _)| *k == c).expect("all classes").1.holds();
    let verdicts = Verdicts {
        semigroupoid: get(Class::Semigroupoid),
        poloid: get(Class::Poloid),
        groupoid: get(Class::Groupoid),
        total: get(Class::Total),
        monoid: get(Class::Monoid),
        group: get(Class::Group),
        right_directed_semigroupoid: get(Class::RightDirectedSemigroupoid),
        right_poloid: get(Class::RightPoloid),
        normal: get(Class::Normal),
        unit_posetal: get(Class::UnitPosetal),
    };
    let witnesses = checks
        .into_iter()
        .filter_map(|(verdict, v)| match v {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(FailedVerdict {
                verdict,
                kind: w.kind,
                elements: w.elements,
            }),
        })
        .collect();
    ClassReport {
        elements: m.names().to_vec(),
        verdicts,
        units: m.units(),
        left_units: m.left_units(),
        right_units: m.right_units(),
        eps: poloid.as_ref().map(|p| p.eps_map().to_vec()),
        vareps: poloid.as_ref().map(|p| p.vareps_map().to_vec()),
        phi: right.as_ref().map(|r| r.phi_map().to_vec()),
        inverses: poloid.as_ref().and_then(|p| p.inverses().ok()),
        witnesses,
    }
}

impl ClassReport {
    /// Line-oriented rendering: one `class: yes|no` line per verdict, then
    /// unit inventories, structure maps and witnesses.
    pub fn to_text(&self) -> String {
        let names = &self.elements;
        let set = |s: &[Elem]| {
            let v: Vec<&str> = s.iter().map(|&i| names[i].as_str()).collect();
            format!("{{{}}}", v.join(", "))
        };
        let map = |m: &Option<Vec<Elem>>| match m {
            None => "-".to_string(),
            Some(m) => {
                let v: Vec<String> = m
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| format!("{}->{}", names[x], names[y]))
                    .collect();
                format!("{{{}}}", v.join(", "))
            }
        };
        let mut out = format!("elements: {}\n", names.join(" "));
        for class in Class::ALL {
            let yes = if self.verdicts.get(class) { "yes" } else { "no" };
            out.push_str(&format!("{class}: {yes}\n"));
        }
        out.push_str(&format!("units: {}\n", set(&self.units)));
        out.push_str(&format!("left_units: {}\n", set(&self.left_units)));
        out.push_str(&format!("right_units: {}\n", set(&self.right_units)));
        out.push_str(&format!("eps: {}\n", map(&self.eps)));
        out.push_str(&format!("vareps: {}\n", map(&self.vareps)));
        out.push_str(&format!("phi: {}\n", map(&self.phi)));
        out.push_str(&format!("inverses: {}\n", map(&self.inverses)));
        for f in &self.witnesses {
            let w = Witness::new(f.kind, f.elements.clone());
            out.push_str(&format!("witness {}: {}\n", f.verdict, w.describe(names)));
        }
        out
    }
}
