//! Prefunctions and partial functions on a finite ground set, and magmas of them.
//!
//! Points of the ground set are indices `0..n` with `n ≤ 64`; sets of points
//! are bitmasks ([`PointSet`]). A [`Prefunction`] has a domain and an
//! assignment, a [`PartialFn`] additionally carries a codomain containing its
//! image. A [`MapMagma`] is a set of maps of one kind together with a
//! composition [`Mode`] that decides when `f ∘ g` is defined.
//!
//! Map-magma files look like this:
//!
//! ```text
//! set: 1 2 3
//! mode: supset
//! map f: 1->1 2->2
//! map g: 2->2 3->3
//! cod g: 2 3
//! ```
//!
//! A `cod` line turns its map into a partial function; either every map has
//! one or none does.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::table::{content_lines, PartialMagma, Verdict, Witness, WitnessKind};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

/// Default bound on `|X|` for the full (pre)transformation magma generators.
pub const DEFAULT_FULL_MAGMA_BOUND: usize = 4;

/// A subset of the ground set `0..n`, stored as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The whole ground set `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(p: usize) -> Self {
        PointSet(1 << p)
    }

    pub fn contains(self, p: usize) -> bool {
        p < 64 && self.0 >> p & 1 == 1
    }

    pub fn insert(&mut self, p: usize) {
        self.0 |= 1 << p;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_superset(self, other: PointSet) -> bool {
        other.is_subset(self)
    }

    pub fn intersects(self, other: PointSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&p| self.contains(p))
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PointSet::EMPTY;
        for p in iter {
            s.insert(p);
        }
        s
    }
}

/// A non-empty partial self-map on `0..n` without a designated codomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Prefunction {
    assign: Vec<Option<usize>>,
}

impl Prefunction {
    /// `assign[p]` is the image of `p`, or `None` outside the domain.
    pub fn new(assign: Vec<Option<usize>>) -> Result<Self> {
        let n = assign.len();
        if n > MAX_GROUND {
            return Err(Error::BoundExceeded {
                what: "ground set",
                size: n,
                bound: MAX_GROUND,
            });
        }
        if let Some(&bad) = assign.iter().flatten().find(|&&q| q >= n) {
            return Err(Error::OutOfRange { index: bad, size: n });
        }
        if assign.iter().all(Option::is_none) {
            return Err(Error::EmptyMap);
        }
        Ok(Prefunction { assign })
    }

    /// `Id_S` on a ground set of size `n`.
    pub fn identity(n: usize, set: PointSet) -> Result<Self> {
        Self::new((0..n).map(|p| set.contains(p).then_some(p)).collect())
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut assign = vec![None; n];
        for &(p, q) in pairs {
            if p >= n {
                return Err(Error::OutOfRange { index: p, size: n });
            }
            assign[p] = Some(q);
        }
        Self::new(assign)
    }

    pub fn ground_size(&self) -> usize {
        self.assign.len()
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assign
    }

    pub fn apply(&self, p: usize) -> Option<usize> {
        self.assign.get(p).copied().flatten()
    }

    pub fn dom(&self) -> PointSet {
        self.assign
            .iter()
            .enumerate()
            .filter_map(|(p, q)| q.map(|_| p))
            .collect()
    }

    pub fn im(&self) -> PointSet {
        self.assign.iter().flatten().copied().collect()
    }

    /// True when this is `Id_dom`.
    pub fn is_identity(&self) -> bool {
        self.assign.iter().enumerate().all(|(p, q)| q.is_none_or(|q| q == p))
    }

    /// Restriction of the assignment to the points of `dom`.
    fn restricted(&self, dom: PointSet, f: impl Fn(usize) -> Option<usize>) -> Prefunction {
        Prefunction {
            assign: (0..self.assign.len())
                .map(|p| if dom.contains(p) { f(p) } else { None })
                .collect(),
        }
    }
}

impl Ord for Prefunction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dom()
            .cmp(&other.dom())
            .then_with(|| self.assign.cmp(&other.assign))
    }
}

impl PartialOrd for Prefunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A prefunction together with a codomain `im ⊆ cod ⊆ X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialFn {
    pre: Prefunction,
    cod: PointSet,
}

impl PartialFn {
    pub fn new(pre: Prefunction, cod: PointSet) -> Result<Self> {
        if !pre.im().is_subset(cod) {
            return Err(Error::CodomainTooSmall);
        }
        if !cod.is_subset(PointSet::full(pre.ground_size())) {
            return Err(Error::OutOfRange {
                index: cod.iter().last().unwrap_or(0),
                size: pre.ground_size(),
            });
        }
        Ok(PartialFn { pre, cod })
    }

    /// The identity transformation `Id_S`, with `dom = cod = S`.
    pub fn identity(n: usize, set: PointSet) -> Result<Self> {
        Self::new(Prefunction::identity(n, set)?, set)
    }

    pub fn prefunction(&self) -> &Prefunction {
        &self.pre
    }

    pub fn cod(&self) -> PointSet {
        self.cod
    }
}

/// A member of a [`MapMagma`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PartialMap {
    Pre(Prefunction),
    Fn(PartialFn),
}

impl PartialMap {
    pub fn prefunction(&self) -> &Prefunction {
        match self {
            PartialMap::Pre(p) => p,
            PartialMap::Fn(f) => &f.pre,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.prefunction().ground_size()
    }

    pub fn apply(&self, p: usize) -> Option<usize> {
        self.prefunction().apply(p)
    }

    pub fn dom(&self) -> PointSet {
        self.prefunction().dom()
    }

    pub fn im(&self) -> PointSet {
        self.prefunction().im()
    }

    pub fn cod(&self) -> Option<PointSet> {
        match self {
            PartialMap::Pre(_) => None,
            PartialMap::Fn(f) => Some(f.cod),
        }
    }

    pub fn has_codomain(&self) -> bool {
        matches!(self, PartialMap::Fn(_))
    }

    /// `Id_S` of the same kind as `self`; for partial functions `cod = S`.
    pub fn identity_like(&self, set: PointSet) -> Result<PartialMap> {
        let n = self.ground_size();
        Ok(match self {
            PartialMap::Pre(_) => PartialMap::Pre(Prefunction::identity(n, set)?),
            PartialMap::Fn(_) => PartialMap::Fn(PartialFn::identity(n, set)?),
        })
    }

    /// An identity pretransformation, or an identity transformation with
    /// `dom = cod`.
    pub fn is_identity(&self) -> bool {
        self.prefunction().is_identity() && self.cod().is_none_or(|c| c == self.dom())
    }

    fn sort_key(&self) -> (PointSet, &[Option<usize>], Option<PointSet>) {
        (self.dom(), self.prefunction().assignment(), self.cod())
    }
}

impl Ord for PartialMap {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for PartialMap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// When the composite `f ∘ g` is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `dom(f) ⊇ im(g)`.
    Supset,
    /// `dom(f) ∩ im(g) ≠ ∅`; the composite is defined on the `g`-preimage of `dom(f)`.
    Overlap,
    /// `dom(f) = im(g)`.
    ExactImage,
    /// `dom(f) = cod(g)`; partial functions only.
    Codomain,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Supset => "supset",
            Mode::Overlap => "overlap",
            Mode::ExactImage => "exact-image",
            Mode::Codomain => "codomain",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "supset" => Ok(Mode::Supset),
            "overlap" => Ok(Mode::Overlap),
            "exact-image" => Ok(Mode::ExactImage),
            "codomain" => Ok(Mode::Codomain),
            other => Err(Error::Syntax {
                line: 0,
                message: format!("unknown composition mode `{other}`"),
            }),
        }
    }
}

/// The composite `f ∘ g` (apply `g` first) under `mode`, or `None` when undefined.
///
/// The composite has `dom(g)` as domain except in [`Mode::Overlap`], and
/// carries `cod(f)` when `f` is a partial function.
pub fn compose(mode: Mode, f: &PartialMap, g: &PartialMap) -> Option<PartialMap> {
    let (df, ig, dg) = (f.dom(), g.im(), g.dom());
    let defined = match mode {
        Mode::Supset => df.is_superset(ig),
        Mode::Overlap => df.intersects(ig),
        Mode::ExactImage => df == ig,
        Mode::Codomain => g.cod() == Some(df),
    };
    if !defined {
        return None;
    }
    let gp = g.prefunction();
    let dom = match mode {
        Mode::Overlap => dg
            .iter()
            .filter(|&p| gp.apply(p).is_some_and(|q| df.contains(q)))
            .collect(),
        _ => dg,
    };
    let pre = gp.restricted(dom, |p| gp.apply(p).and_then(|q| f.apply(q)));
    Some(match f {
        PartialMap::Pre(_) => PartialMap::Pre(pre),
        PartialMap::Fn(ff) => PartialMap::Fn(PartialFn { pre, cod: ff.cod }),
    })
}

/// A finite set of maps of one kind with a composition mode.
///
/// Members are kept in canonical order: by domain bitmask, then assignment,
/// then codomain. Each member has one or more names; the first is primary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapMagma {
    ground: Vec<String>,
    members: Vec<PartialMap>,
    labels: Vec<Vec<String>>,
    mode: Mode,
}

fn valid_point(tok: &str) -> bool {
    !tok.is_empty() && !tok.contains("->") && !tok.contains(':') && !tok.chars().any(char::is_whitespace)
}

impl MapMagma {
    /// Builds a map magma from named maps; equal maps under different names
    /// become aliases of one member.
    pub fn new(ground: Vec<String>, named: Vec<(String, PartialMap)>, mode: Mode) -> Result<Self> {
        let n = ground.len();
        if n == 0 {
            return Err(Error::Syntax {
                line: 0,
                message: "ground set is empty".into(),
            });
        }
        if n > MAX_GROUND {
            return Err(Error::BoundExceeded {
                what: "ground set",
                size: n,
                bound: MAX_GROUND,
            });
        }
        for (i, p) in ground.iter().enumerate() {
            if !valid_point(p) {
                return Err(Error::Syntax {
                    line: 0,
                    message: format!("invalid point `{p}`"),
                });
            }
            if ground[..i].contains(p) {
                return Err(Error::DuplicateName {
                    line: 0,
                    name: p.clone(),
                });
            }
        }
        if named.is_empty() {
            return Err(Error::Syntax {
                line: 0,
                message: "map magma has no members".into(),
            });
        }
        let with_cod = named[0].1.has_codomain();
        let mut seen_names = BTreeSet::new();
        for (name, map) in &named {
            if map.ground_size() != n {
                return Err(Error::OutOfRange {
                    index: map.ground_size(),
                    size: n,
                });
            }
            if map.has_codomain() != with_cod {
                return Err(Error::WrongMemberKind {
                    expected: "all prefunctions or all partial functions",
                });
            }
            if !seen_names.insert(name.as_str()) {
                return Err(Error::DuplicateName {
                    line: 0,
                    name: name.clone(),
                });
            }
        }
        if mode == Mode::Codomain && !with_cod {
            return Err(Error::WrongMemberKind {
                expected: "partial functions with codomains",
            });
        }
        let mut members: Vec<PartialMap> = named.iter().map(|(_, m)| m.clone()).collect();
        members.sort();
        members.dedup();
        let mut labels = vec![Vec::new(); members.len()];
        for (name, map) in named {
            let i = members.binary_search(&map).expect("member present");
            labels[i].push(name);
        }
        Ok(MapMagma {
            ground,
            members,
            labels,
            mode,
        })
    }

    /// Builds a map magma naming members `{prefix}0, {prefix}1, ...` in canonical order.
    pub fn with_generated_names(
        ground: Vec<String>,
        maps: impl IntoIterator<Item = PartialMap>,
        mode: Mode,
        prefix: &str,
    ) -> Result<Self> {
        let mut maps: Vec<PartialMap> = maps.into_iter().collect();
        maps.sort();
        maps.dedup();
        let named = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| (format!("{prefix}{i}"), m))
            .collect();
        Self::new(ground, named, mode)
    }

    /// All non-empty prefunctions on `ground`, composed under [`Mode::Supset`].
    pub fn full_pretransformation_magma(ground: Vec<String>) -> Result<Self> {
        Self::full_pretransformation_magma_bounded(ground, DEFAULT_FULL_MAGMA_BOUND)
    }

    pub fn full_pretransformation_magma_bounded(ground: Vec<String>, bound: usize) -> Result<Self> {
        let n = ground.len();
        if n > bound {
            return Err(Error::BoundExceeded {
                what: "ground set",
                size: n,
                bound,
            });
        }
        let maps = all_prefunctions(n).into_iter().map(PartialMap::Pre);
        Self::with_generated_names(ground, maps, Mode::Supset, "f")
    }

    /// All non-empty partial functions `(f, cod)` on `ground` with `im ⊆ cod`,
    /// composed under [`Mode::Supset`].
    pub fn full_transformation_magma(ground: Vec<String>) -> Result<Self> {
        Self::full_transformation_magma_bounded(ground, DEFAULT_FULL_MAGMA_BOUND)
    }

    pub fn full_transformation_magma_bounded(ground: Vec<String>, bound: usize) -> Result<Self> {
        let n = ground.len();
        if n > bound {
            return Err(Error::BoundExceeded {
                what: "ground set",
                size: n,
                bound,
            });
        }
        let mut maps = Vec::new();
        for pre in all_prefunctions(n) {
            let im = pre.im().bits();
            // codomains are the supersets of the image inside 0..n
            for bits in 0..(1u64 << n) {
                if bits & im == im {
                    maps.push(PartialMap::Fn(PartialFn {
                        pre: pre.clone(),
                        cod: PointSet(bits),
                    }));
                }
            }
        }
        Self::with_generated_names(ground, maps, Mode::Supset, "f")
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn members(&self) -> &[PartialMap] {
        &self.members
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Primary names, one per member.
    pub fn names(&self) -> Vec<String> {
        self.labels.iter().map(|l| l[0].clone()).collect()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.labels[i][0]
    }

    /// Every name of member `i`, primary first.
    pub fn labels(&self, i: usize) -> &[String] {
        &self.labels[i]
    }

    /// Whether members carry codomains.
    pub fn has_codomains(&self) -> bool {
        self.members[0].has_codomain()
    }

    pub fn index_of(&self, map: &PartialMap) -> Option<usize> {
        self.members.binary_search(map).ok()
    }

    /// Resolves a member by any of its names.
    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.iter().any(|n| n == name))
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.ground.iter().position(|p| p == name)
    }

    /// `f ∘ g` for members `f` and `g`; the composite need not be a member.
    pub fn compose(&self, f: &PartialMap, g: &PartialMap) -> Result<Option<PartialMap>> {
        if self.index_of(f).is_none() || self.index_of(g).is_none() {
            return Err(Error::NotMember);
        }
        Ok(compose(self.mode, f, g))
    }

    /// `members[i] ∘ members[j]`.
    pub fn compose_at(&self, i: usize, j: usize) -> Option<PartialMap> {
        compose(self.mode, &self.members[i], &self.members[j])
    }

    /// Every defined composite of members is a member.
    pub fn is_closed(&self) -> Verdict {
        for i in 0..self.len() {
            for j in 0..self.len() {
                if let Some(c) = self.compose_at(i, j) {
                    if self.index_of(&c).is_none() {
                        return Verdict::Fails(Witness::new(WitnessKind::NotClosed, [i, j]));
                    }
                }
            }
        }
        Verdict::Holds
    }

    /// The smallest closed map magma containing the members. Added composites
    /// are named `{prefix}0, {prefix}1, ...` avoiding existing names.
    pub fn closure(&self, prefix: &str) -> Result<MapMagma> {
        let mut all: BTreeSet<PartialMap> = self.members.iter().cloned().collect();
        loop {
            let current: Vec<PartialMap> = all.iter().cloned().collect();
            let mut grew = false;
            for f in &current {
                for g in &current {
                    if let Some(c) = compose(self.mode, f, g) {
                        grew |= all.insert(c);
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut named: Vec<(String, PartialMap)> = Vec::new();
        for (i, m) in self.members.iter().enumerate() {
            for label in &self.labels[i] {
                named.push((label.clone(), m.clone()));
            }
        }
        let mut counter = 0;
        for m in all {
            if self.index_of(&m).is_some() {
                continue;
            }
            let name = loop {
                let candidate = format!("{prefix}{counter}");
                counter += 1;
                if self.index_of_name(&candidate).is_none() {
                    break candidate;
                }
            };
            named.push((name, m));
        }
        MapMagma::new(self.ground.clone(), named, self.mode)
    }

    fn require_supset(&self) -> Result<()> {
        if self.mode != Mode::Supset {
            return Err(Error::ModeMismatch {
                expected: Mode::Supset.as_str(),
                found: self.mode.as_str(),
            });
        }
        Ok(())
    }

    fn require_closed(&self) -> Result<()> {
        match self.is_closed() {
            Verdict::Holds => Ok(()),
            Verdict::Fails(witness) => Err(Error::Precondition {
                class: "closed map magma",
                witness,
            }),
        }
    }

    /// Whenever `dom(f) ⊇ im(g)`, also `dom(f) = cod(g)`.
    pub fn is_transformation_semigroupoid(&self) -> Result<Verdict> {
        if !self.has_codomains() {
            return Err(Error::WrongMemberKind {
                expected: "partial functions with codomains",
            });
        }
        self.require_supset()?;
        for (i, f) in self.members.iter().enumerate() {
            for (j, g) in self.members.iter().enumerate() {
                if f.dom().is_superset(g.im()) && g.cod() != Some(f.dom()) {
                    return Ok(Verdict::Fails(Witness::new(WitnessKind::Composability, [i, j])));
                }
            }
        }
        Ok(Verdict::Holds)
    }

    /// A closed transformation semigroupoid containing `Id_dom(f)` and
    /// `Id_cod(f)` for every member `f`.
    pub fn is_transformation_poloid(&self) -> Result<Verdict> {
        if let Verdict::Fails(witness) = self.is_transformation_semigroupoid()? {
            return Err(Error::Precondition {
                class: "transformation semigroupoid",
                witness,
            });
        }
        self.require_closed()?;
        for (i, f) in self.members.iter().enumerate() {
            let cod = f.cod().expect("partial functions");
            for set in [f.dom(), cod] {
                let id = f.identity_like(set)?;
                if self.index_of(&id).is_none() {
                    return Ok(Verdict::Fails(Witness::new(WitnessKind::MissingIdentity, [i])));
                }
            }
        }
        Ok(Verdict::Holds)
    }

    /// A closed pretransformation magma containing `Id_dom(f)` for every member `f`.
    pub fn is_domain_pretransformation_magma(&self) -> Result<Verdict> {
        if self.has_codomains() {
            return Err(Error::WrongMemberKind {
                expected: "prefunctions",
            });
        }
        self.require_supset()?;
        self.require_closed()?;
        for (i, f) in self.members.iter().enumerate() {
            let id = f.identity_like(f.dom())?;
            if self.index_of(&id).is_none() {
                return Ok(Verdict::Fails(Witness::new(WitnessKind::MissingIdentity, [i])));
            }
        }
        Ok(Verdict::Holds)
    }

    /// The Cayley table of a closed map magma, with members as elements.
    pub fn as_partial_magma(&self) -> Result<PartialMagma> {
        self.require_closed()?;
        let n = self.len();
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                cells.push(self.compose_at(i, j).map(|c| self.index_of(&c).expect("closed")));
            }
        }
        PartialMagma::new(self.names(), cells)
    }

    /// Renders a map as `p->q ...`, followed by `| cod ...` for partial functions.
    pub fn render_map(&self, map: &PartialMap) -> String {
        let pre = map.prefunction();
        let mut parts: Vec<String> = (0..pre.ground_size())
            .filter_map(|p| pre.apply(p).map(|q| format!("{}->{}", self.ground[p], self.ground[q])))
            .collect();
        if let Some(cod) = map.cod() {
            parts.push("| cod".into());
            parts.extend(cod.iter().map(|p| self.ground[p].clone()));
        }
        parts.join(" ")
    }

    /// Renders the map magma in the file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("set: {}\nmode: {}\n", self.ground.join(" "), self.mode);
        for (i, map) in self.members.iter().enumerate() {
            let pre = map.prefunction();
            let entries: Vec<String> = (0..pre.ground_size())
                .filter_map(|p| pre.apply(p).map(|q| format!("{}->{}", self.ground[p], self.ground[q])))
                .collect();
            for label in &self.labels[i] {
                out.push_str(&format!("map {label}: {}\n", entries.join(" ")));
                if let Some(cod) = map.cod() {
                    let pts: Vec<&str> = cod.iter().map(|p| self.ground[p].as_str()).collect();
                    out.push_str(&format!("cod {label}: {}\n", pts.join(" ")));
                }
            }
        }
        out
    }

    /// Parses the map-magma file format. A missing `mode:` line means `supset`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ground: Option<Vec<String>> = None;
        let mut mode = Mode::Supset;
        let mut maps: Vec<(String, Vec<Option<usize>>, usize)> = Vec::new();
        let mut cods: Vec<(String, PointSet, usize)> = Vec::new();
        for (line, content) in content_lines(text) {
            let (head, body) = content.split_once(':').ok_or_else(|| Error::Syntax {
                line,
                message: "expected `<keyword>: ...`".into(),
            })?;
            let head = head.trim();
            if head == "set" {
                if ground.is_some() {
                    return Err(Error::Syntax {
                        line,
                        message: "duplicate `set:` line".into(),
                    });
                }
                let mut pts: Vec<String> = Vec::new();
                for tok in body.split_whitespace() {
                    if !valid_point(tok) {
                        return Err(Error::Syntax {
                            line,
                            message: format!("invalid point `{tok}`"),
                        });
                    }
                    if pts.iter().any(|p| p == tok) {
                        return Err(Error::DuplicateName {
                            line,
                            name: tok.to_string(),
                        });
                    }
                    pts.push(tok.to_string());
                }
                if pts.is_empty() {
                    return Err(Error::Syntax {
                        line,
                        message: "ground set is empty".into(),
                    });
                }
                if pts.len() > MAX_GROUND {
                    return Err(Error::BoundExceeded {
                        what: "ground set",
                        size: pts.len(),
                        bound: MAX_GROUND,
                    });
                }
                ground = Some(pts);
                continue;
            }
            if head == "mode" {
                mode = body.trim().parse().map_err(|e| match e {
                    Error::Syntax { message, .. } => Error::Syntax { line, message },
                    other => other,
                })?;
                continue;
            }
            let pts = ground.as_ref().ok_or_else(|| Error::Syntax {
                line,
                message: "`set:` must come first".into(),
            })?;
            let point = |tok: &str| {
                pts.iter().position(|p| p == tok).ok_or_else(|| Error::UnknownToken {
                    line,
                    token: tok.to_string(),
                })
            };
            if let Some(name) = head.strip_prefix("map ") {
                let name = name.trim().to_string();
                if maps.iter().any(|(n, _, _)| *n == name) {
                    return Err(Error::DuplicateName { line, name });
                }
                let mut assign = vec![None; pts.len()];
                for entry in body.split_whitespace() {
                    let (p, q) = entry.split_once("->").ok_or_else(|| Error::Syntax {
                        line,
                        message: format!("expected `p->q`, found `{entry}`"),
                    })?;
                    let (p, q) = (point(p)?, point(q)?);
                    if assign[p].is_some() {
                        return Err(Error::Syntax {
                            line,
                            message: format!("point `{}` assigned twice", pts[p]),
                        });
                    }
                    assign[p] = Some(q);
                }
                maps.push((name, assign, line));
            } else if let Some(name) = head.strip_prefix("cod ") {
                let name = name.trim().to_string();
                if !maps.iter().any(|(n, _, _)| *n == name) {
                    return Err(Error::UnknownToken { line, token: name });
                }
                if cods.iter().any(|(n, _, _)| *n == name) {
                    return Err(Error::DuplicateName { line, name });
                }
                let mut set = PointSet::EMPTY;
                for tok in body.split_whitespace() {
                    set.insert(point(tok)?);
                }
                cods.push((name, set, line));
            } else {
                return Err(Error::Syntax {
                    line,
                    message: format!("unknown keyword `{head}`"),
                });
            }
        }
        let ground = ground.ok_or(Error::Syntax {
            line: 0,
            message: "missing `set:` line".into(),
        })?;
        if !cods.is_empty() && cods.len() != maps.len() {
            let missing = maps
                .iter()
                .find(|(n, _, _)| !cods.iter().any(|(c, _, _)| c == n))
                .expect("some map lacks a codomain");
            return Err(Error::Syntax {
                line: missing.2,
                message: format!("map `{}` has no `cod` line", missing.0),
            });
        }
        let mut named = Vec::with_capacity(maps.len());
        for (name, assign, line) in maps {
            let pre = Prefunction::new(assign).map_err(|e| match e {
                Error::EmptyMap => Error::Syntax {
                    line,
                    message: format!("map `{name}` has an empty domain"),
                },
                other => other,
            })?;
            let map = match cods.iter().find(|(c, _, _)| *c == name) {
                Some(&(_, cod, _)) => PartialMap::Fn(PartialFn::new(pre, cod)?),
                None => PartialMap::Pre(pre),
            };
            named.push((name, map));
        }
        MapMagma::new(ground, named, mode)
    }
}

impl FromStr for MapMagma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for MapMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// All non-empty prefunctions on `0..n`.
pub fn all_prefunctions(n: usize) -> Vec<Prefunction> {
    let base = n + 1;
    let total = base.pow(n as u32);
    (1..total)
        .map(|mut code| {
            let assign = (0..n)
                .map(|_| {
                    let digit = code % base;
                    code /= base;
                    digit.checked_sub(1)
                })
                .collect();
            Prefunction { assign }
        })
        .collect()
}

/// First triple `(f, g, h)` of prefunctions on `0..n` with `f∘g` and `g∘h`
/// defined under `mode` but `(f∘g)∘h` and `f∘(g∘h)` not both defined and
/// equal. Under [`Mode::Supset`] there is none.
pub fn find_association_failure(mode: Mode, n: usize) -> Option<[PartialMap; 3]> {
    let maps: Vec<PartialMap> = all_prefunctions(n).into_iter().map(PartialMap::Pre).collect();
    for f in &maps {
        for g in &maps {
            let Some(fg) = compose(mode, f, g) else { continue };
            for h in &maps {
                let Some(gh) = compose(mode, g, h) else { continue };
                let left = compose(mode, &fg, h);
                let right = compose(mode, f, &gh);
                if left.is_none() || left != right {
                    return Some([f.clone(), g.clone(), h.clone()]);
                }
            }
        }
    }
    None
}

/// Ground names `1..=n`.
pub fn numbered_ground(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}
