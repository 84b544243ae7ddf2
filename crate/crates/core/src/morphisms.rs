//! Homomorphisms, isomorphisms, subpoloids, image poloids and actions.

use crate::classify::Poloid;
use crate::error::{Error, Result};
use crate::maps::{MapMagma, Mode, PartialMap};
use crate::table::{content_lines, Elem, PartialMagma, Verdict, Witness, WitnessKind};

/// Largest carrier [`find_isomorphism`] searches by default.
pub const DEFAULT_ISO_BOUND: usize = 8;

/// A total map between carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism<'a> {
    source: &'a PartialMagma,
    target: &'a PartialMagma,
    map: Vec<Elem>,
}

impl<'a> Morphism<'a> {
    pub fn new(source: &'a PartialMagma, target: &'a PartialMagma, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::RowCountMismatch {
                expected: source.size(),
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.size()) {
            return Err(Error::OutOfRange {
                index: bad,
                size: target.size(),
            });
        }
        Ok(Morphism { source, target, map })
    }

    pub fn identity(m: &'a PartialMagma) -> Self {
        Morphism {
            source: m,
            target: m,
            map: m.elements().collect(),
        }
    }

    pub fn source(&self) -> &'a PartialMagma {
        self.source
    }

    pub fn target(&self) -> &'a PartialMagma {
        self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        self.source.size() == self.target.size() && self.map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    /// The inverse of a bijective morphism.
    pub fn inverse(&self) -> Option<Morphism<'a>> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Morphism {
            source: self.target,
            target: self.source,
            map: inv,
        })
    }

    /// `self ∘ other`, defined when `other` lands in `self`'s source.
    pub fn after(&self, other: &Morphism<'a>) -> Result<Morphism<'a>> {
        if other.target != self.source {
            return Err(Error::Syntax {
                line: 0,
                message: "morphisms are not composable".into(),
            });
        }
        Ok(Morphism {
            source: other.source,
            target: self.target,
            map: other.map.iter().map(|&y| self.map[y]).collect(),
        })
    }

    /// One `hom: <src> -> <dst>` line per source element.
    pub fn to_text(&self) -> String {
        self.map
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("hom: {} -> {}\n", self.source.name(x), self.target.name(y)))
            .collect()
    }

    /// Parses the morphism file format against known source and target.
    pub fn parse(text: &str, source: &'a PartialMagma, target: &'a PartialMagma) -> Result<Self> {
        let mut map: Vec<Option<Elem>> = vec![None; source.size()];
        for (line, content) in content_lines(text) {
            let rest = content.strip_prefix("hom:").ok_or_else(|| Error::Syntax {
                line,
                message: "expected `hom: <source> -> <target>`".into(),
            })?;
            let (x, y) = rest.split_once("->").ok_or_else(|| Error::Syntax {
                line,
                message: "missing `->`".into(),
            })?;
            let (x, y) = (x.trim(), y.trim());
            let xi = source.index_of(x).ok_or_else(|| Error::UnknownToken {
                line,
                token: x.to_string(),
            })?;
            let yi = target.index_of(y).ok_or_else(|| Error::UnknownToken {
                line,
                token: y.to_string(),
            })?;
            if map[xi].replace(yi).is_some() {
                return Err(Error::DuplicateName {
                    line,
                    name: x.to_string(),
                });
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(x, y)| {
                y.ok_or_else(|| Error::Syntax {
                    line: 0,
                    message: format!("no image for `{}`", source.name(x)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source, target, map)
    }
}

fn require_poloid(m: &PartialMagma) -> Result<Poloid<'_>> {
    Poloid::verify(m).map_err(|witness| Error::Precondition {
        class: "poloid",
        witness,
    })
}

/// Products are preserved (`xy` defined gives `φ(x)φ(y) = φ(xy)`) and units
/// go to units. The source must be a poloid.
pub fn is_homomorphism(m: &Morphism<'_>) -> Result<Verdict> {
    let p = require_poloid(m.source)?;
    let (s, t) = (m.source, m.target);
    for x in s.elements() {
        for y in s.elements() {
            if let Some(xy) = s.product(x, y) {
                if t.product(m.apply(x), m.apply(y)) != Some(m.apply(xy)) {
                    return Ok(Verdict::Fails(Witness::new(WitnessKind::ProductMismatch, [x, y])));
                }
            }
        }
    }
    for &e in p.units() {
        if !t.is_unit(m.apply(e)) {
            return Ok(Verdict::Fails(Witness::new(WitnessKind::UnitImage, [e])));
        }
    }
    if let Ok(q) = Poloid::verify(t) {
        for x in s.elements() {
            if m.apply(p.eps(x)) != q.eps(m.apply(x)) || m.apply(p.vareps(x)) != q.vareps(m.apply(x)) {
                return Err(Error::Internal(format!(
                    "homomorphism does not carry the effective units of `{}`",
                    s.name(x)
                )));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `φ(x)φ(y)` defined forces `xy` defined.
pub fn reflects_definedness(m: &Morphism<'_>) -> Verdict {
    let (s, t) = (m.source, m.target);
    for x in s.elements() {
        for y in s.elements() {
            if !s.is_defined(x, y) && t.is_defined(m.apply(x), m.apply(y)) {
                return Verdict::Fails(Witness::new(WitnessKind::Reflection, [x, y]));
            }
        }
    }
    Verdict::Holds
}

/// The sub-table of `m` on `subset`, with cells leaving the subset dropped.
pub fn restrict(m: &PartialMagma, subset: &[Elem]) -> Result<PartialMagma> {
    let names = subset.iter().map(|&x| m.name(x).to_string()).collect();
    let mut cells = Vec::with_capacity(subset.len() * subset.len());
    for &x in subset {
        for &y in subset {
            cells.push(m.product(x, y).and_then(|z| subset.iter().position(|&w| w == z)));
        }
    }
    PartialMagma::new(names, cells)
}

/// The target restricted to the image of a definedness-reflecting
/// homomorphism, which is a poloid.
pub fn image_poloid(m: &Morphism<'_>) -> Result<PartialMagma> {
    if let Verdict::Fails(witness) = is_homomorphism(m)? {
        return Err(Error::Precondition {
            class: "homomorphism",
            witness,
        });
    }
    if let Verdict::Fails(witness) = reflects_definedness(m) {
        return Err(Error::Precondition {
            class: "definedness-reflecting morphism",
            witness,
        });
    }
    let mut image = m.map.clone();
    image.sort_unstable();
    image.dedup();
    let q = restrict(m.target, &image)?;
    if let Verdict::Fails(w) = crate::classify::is_poloid(&q) {
        return Err(Error::Internal(format!("image is not a poloid: {w}")));
    }
    Ok(q)
}

/// A bijective homomorphism whose inverse is a homomorphism.
pub fn is_isomorphism(m: &Morphism<'_>) -> Result<bool> {
    let Some(inv) = m.inverse() else {
        return Ok(false);
    };
    if !is_homomorphism(m)?.holds() || Poloid::verify(m.target).is_err() {
        return Ok(false);
    }
    Ok(is_homomorphism(&inv)?.holds())
}

/// Left unit, right unit, unit, row and column definedness counts, and whether
/// the square is idempotent (`None` when undefined).
type Profile = (bool, bool, bool, usize, usize, Option<bool>);

/// Per-element data every isomorphism preserves.
fn profile(m: &PartialMagma, x: Elem) -> Profile {
    let row = m.elements().filter(|&y| m.is_defined(x, y)).count();
    let col = m.elements().filter(|&y| m.is_defined(y, x)).count();
    (
        m.is_left_unit(x),
        m.is_right_unit(x),
        m.is_unit(x),
        row,
        col,
        m.product(x, x).map(|xx| xx == x),
    )
}

/// First isomorphism in lexicographic order of assignments, if any.
pub fn find_isomorphism<'a>(p: &'a PartialMagma, q: &'a PartialMagma) -> Result<Option<Morphism<'a>>> {
    find_isomorphism_bounded(p, q, DEFAULT_ISO_BOUND)
}

pub fn find_isomorphism_bounded<'a>(
    p: &'a PartialMagma,
    q: &'a PartialMagma,
    bound: usize,
) -> Result<Option<Morphism<'a>>> {
    let n = p.size();
    if n.max(q.size()) > bound {
        return Err(Error::BoundExceeded {
            what: "isomorphism search carrier",
            size: n.max(q.size()),
            bound,
        });
    }
    if n != q.size() {
        return Ok(None);
    }
    let pp: Vec<_> = p.elements().map(|x| profile(p, x)).collect();
    let qp: Vec<_> = q.elements().map(|y| profile(q, y)).collect();
    let (mut ps, mut qs) = (pp.clone(), qp.clone());
    ps.sort();
    qs.sort();
    if ps != qs {
        return Ok(None);
    }

    struct Ctx<'c> {
        p: &'c PartialMagma,
        q: &'c PartialMagma,
        pp: &'c [Profile],
        qp: &'c [Profile],
        sigma: Vec<Option<Elem>>,
        used: Vec<bool>,
    }

    impl Ctx<'_> {
        fn cell_ok(&self, x: Elem, y: Elem) -> bool {
            let (sx, sy) = (self.sigma[x].unwrap(), self.sigma[y].unwrap());
            match (self.p.product(x, y), self.q.product(sx, sy)) {
                (None, None) => true,
                (Some(z), Some(w)) => match self.sigma[z] {
                    Some(sz) => sz == w,
                    None => !self.used[w],
                },
                _ => false,
            }
        }

        /// Checks every cell whose operands are both among `0..=x`.
        fn consistent(&self, x: Elem) -> bool {
            (0..=x).all(|y| self.cell_ok(x, y) && self.cell_ok(y, x))
                && (0..=x).all(|a| (0..=x).all(|b| self.cell_ok(a, b)))
        }

        fn go(&mut self, x: Elem) -> bool {
            if x == self.p.size() {
                return true;
            }
            for y in 0..self.q.size() {
                if self.used[y] || self.pp[x] != self.qp[y] {
                    continue;
                }
                self.sigma[x] = Some(y);
                self.used[y] = true;
                if self.consistent(x) && self.go(x + 1) {
                    return true;
                }
                self.sigma[x] = None;
                self.used[y] = false;
            }
            false
        }
    }

    let mut ctx = Ctx {
        p,
        q,
        pp: &pp,
        qp: &qp,
        sigma: vec![None; n],
        used: vec![false; n],
    };
    if !ctx.go(0) {
        return Ok(None);
    }
    let map = ctx.sigma.into_iter().map(|s| s.expect("complete")).collect();
    Ok(Some(Morphism::new(p, q, map)?))
}

/// `subset` is closed under the table, forms a poloid, and its units are
/// units of `p`. Witness elements are indices of `p`.
pub fn is_subpoloid(p: &PartialMagma, subset: &[Elem]) -> Result<Verdict> {
    if let Some(&bad) = subset.iter().find(|&&x| x >= p.size()) {
        return Err(Error::OutOfRange {
            index: bad,
            size: p.size(),
        });
    }
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Ok(Verdict::Fails(Witness::new(WitnessKind::EmptyOperation, [])));
    }
    for &x in &s {
        for &y in &s {
            if let Some(z) = p.product(x, y) {
                if s.binary_search(&z).is_err() {
                    return Ok(Verdict::Fails(Witness::new(WitnessKind::NotClosed, [x, y])));
                }
            }
        }
    }
    let sub = match restrict(p, &s) {
        Ok(sub) => sub,
        Err(Error::EmptyOperation) => return Ok(Verdict::Fails(Witness::new(WitnessKind::EmptyOperation, s))),
        Err(e) => return Err(e),
    };
    if let Err(w) = Poloid::verify(&sub) {
        let elements = w.elements.iter().map(|&i| s[i]).collect::<Vec<_>>();
        return Ok(Verdict::Fails(Witness::new(w.kind, elements)));
    }
    for u in sub.units() {
        if !p.is_unit(s[u]) {
            return Ok(Verdict::Fails(Witness::new(WitnessKind::UnitImage, [s[u]])));
        }
    }
    Ok(Verdict::Holds)
}

/// A poloid acting on a ground set through partial maps.
#[derive(Debug, Clone)]
pub struct ActionSpec<'a> {
    pub poloid: &'a PartialMagma,
    pub ground: Vec<String>,
    /// One map per poloid element.
    pub assignment: Vec<PartialMap>,
}

/// Result of [`is_poloid_action`].
#[derive(Debug, Clone)]
pub struct ActionReport {
    pub verdict: Verdict,
    /// The closure of the assigned maps, read as a magma.
    pub image: MapMagma,
    /// Whether the assigned maps were already closed under composition.
    pub image_was_closed: bool,
    /// Member index of each element's map in `image`.
    pub assignment: Vec<usize>,
}

/// The assignment is a homomorphism into the magma of its (closed) image and
/// every unit goes to an identity (with equal domain and codomain when maps
/// carry codomains).
pub fn is_poloid_action(a: &ActionSpec<'_>) -> Result<ActionReport> {
    let p = require_poloid(a.poloid)?;
    if a.assignment.len() != a.poloid.size() {
        return Err(Error::RowCountMismatch {
            expected: a.poloid.size(),
            found: a.assignment.len(),
        });
    }
    let named = a
        .assignment
        .iter()
        .enumerate()
        .map(|(x, f)| (format!("a_{}", a.poloid.name(x)), f.clone()))
        .collect();
    let assigned = MapMagma::new(a.ground.clone(), named, Mode::Supset)?;
    let image_was_closed = assigned.is_closed().holds();
    let image = if image_was_closed {
        assigned
    } else {
        assigned.closure("c")?
    };
    let table = image.as_partial_magma()?;
    let assignment: Vec<usize> = a
        .assignment
        .iter()
        .map(|f| image.index_of(f).expect("assigned maps are members"))
        .collect();
    let mut verdict = is_homomorphism(&Morphism::new(a.poloid, &table, assignment.clone())?)?;
    if verdict.holds() {
        if let Some(&e) = p.units().iter().find(|&&e| !a.assignment[e].is_identity()) {
            verdict = Verdict::Fails(Witness::new(WitnessKind::UnitImage, [e]));
        }
    }
    Ok(ActionReport {
        verdict,
        image,
        image_was_closed,
        assignment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::maps::{numbered_ground, PointSet, Prefunction};

    fn total(a: &[usize]) -> PartialMap {
        PartialMap::Pre(Prefunction::new(a.iter().map(|&q| Some(q)).collect()).unwrap())
    }

    #[test]
    fn identity_is_homomorphism() {
        for (_, p) in corpus::poloids() {
            let id = Morphism::identity(&p);
            assert!(is_homomorphism(&id).unwrap().holds());
            assert!(reflects_definedness(&id).holds());
            assert!(is_isomorphism(&id).unwrap());
            assert_eq!(image_poloid(&id).unwrap(), p);
        }
    }

    #[test]
    fn collapse_onto_trivial_group() {
        let g = corpus::two_unit_groupoid();
        let t = corpus::trivial_group();
        let m = Morphism::new(&g, &t, vec![0, 0]).unwrap();
        assert!(is_homomorphism(&m).unwrap().holds());
        assert_eq!(
            reflects_definedness(&m),
            Verdict::Fails(Witness::new(WitnessKind::Reflection, [0, 1]))
        );
        assert!(!is_isomorphism(&m).unwrap());
        assert!(matches!(image_poloid(&m), Err(Error::Precondition { .. })));
        let z = corpus::z2();
        assert!(is_homomorphism(&Morphism::new(&z, &t, vec![0, 0]).unwrap())
            .unwrap()
            .holds());
    }

    #[test]
    fn swap_is_automorphism() {
        let g = corpus::two_unit_groupoid();
        let m = Morphism::new(&g, &g, vec![1, 0]).unwrap();
        assert!(is_isomorphism(&m).unwrap());
        let img = image_poloid(&m).unwrap();
        assert!(find_isomorphism(&img, &g).unwrap().is_some());
    }

    #[test]
    fn non_homomorphisms() {
        let z = corpus::z2();
        let b = corpus::band_monoid();
        let m = Morphism::new(&z, &b, vec![0, 1]).unwrap();
        assert_eq!(
            is_homomorphism(&m).unwrap().witness().unwrap().kind,
            WitnessKind::ProductMismatch
        );
        let rz = corpus::right_zero_band(2);
        assert!(matches!(
            is_homomorphism(&Morphism::identity(&rz)),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn isomorphism_search() {
        let z = corpus::z2();
        assert_eq!(find_isomorphism(&z, &z).unwrap().unwrap().map(), &[0, 1]);
        assert!(find_isomorphism(&z, &corpus::band_monoid()).unwrap().is_none());
        let a = corpus::disjoint_union(&corpus::z2(), &corpus::trivial_group());
        let b = corpus::disjoint_union(&corpus::trivial_group(), &corpus::z2());
        let iso = find_isomorphism(&a, &b).unwrap().unwrap();
        assert_eq!(iso.map(), &[1, 2, 0]);
        assert!(find_isomorphism(&corpus::cyclic_group(4), &corpus::klein_four())
            .unwrap()
            .is_none());
        let big = corpus::disjoint_union(&corpus::klein_four(), &corpus::cyclic_group(4));
        let big = corpus::disjoint_union(&big, &corpus::trivial_group());
        assert!(matches!(find_isomorphism(&big, &big), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn subpoloids() {
        let g = corpus::two_unit_groupoid();
        assert!(is_subpoloid(&g, &[0]).unwrap().holds());
        assert!(is_subpoloid(&g, &[0, 1]).unwrap().holds());
        let z = corpus::z2();
        assert_eq!(
            is_subpoloid(&z, &[1]).unwrap(),
            Verdict::Fails(Witness::new(WitnessKind::NotClosed, [1, 1]))
        );
        // {a} is a subpoloid of the band monoid as a set, but its unit a is not a unit of the whole
        let b = corpus::band_monoid();
        assert_eq!(
            is_subpoloid(&b, &[1]).unwrap(),
            Verdict::Fails(Witness::new(WitnessKind::UnitImage, [1]))
        );
        assert!(!is_subpoloid(&corpus::right_zero_band(2), &[0, 1]).unwrap().holds());
    }

    #[test]
    fn group_actions() {
        let z = corpus::z2();
        let ground = numbered_ground(2);
        let a = ActionSpec {
            poloid: &z,
            ground: ground.clone(),
            assignment: vec![total(&[0, 1]), total(&[1, 0])],
        };
        let r = is_poloid_action(&a).unwrap();
        assert!(r.verdict.holds());
        assert!(r.image_was_closed);

        let a = ActionSpec {
            poloid: &z,
            ground,
            assignment: vec![total(&[0, 1]), total(&[0, 0])],
        };
        let r = is_poloid_action(&a).unwrap();
        assert_eq!(
            r.verdict,
            Verdict::Fails(Witness::new(WitnessKind::ProductMismatch, [1, 1]))
        );
    }

    #[test]
    fn action_image_is_closed_on_demand() {
        let t = corpus::trivial_group();
        let id = PartialMap::Pre(Prefunction::identity(2, PointSet::full(2)).unwrap());
        let a = ActionSpec {
            poloid: &t,
            ground: numbered_ground(2),
            assignment: vec![id],
        };
        let r = is_poloid_action(&a).unwrap();
        assert!(r.verdict.holds() && r.image_was_closed);
        let a = ActionSpec {
            poloid: &t,
            ground: numbered_ground(2),
            assignment: vec![total(&[1, 0])],
        };
        let r = is_poloid_action(&a).unwrap();
        assert!(!r.image_was_closed);
        assert_eq!(r.image.len(), 2);
        assert_eq!(
            r.verdict,
            Verdict::Fails(Witness::new(WitnessKind::ProductMismatch, [0, 0]))
        );
    }

    #[test]
    fn morphism_files() {
        let g = corpus::two_unit_groupoid();
        let t = corpus::trivial_group();
        let m = Morphism::new(&g, &t, vec![0, 0]).unwrap();
        let text = m.to_text();
        assert_eq!(text, "hom: e1 -> e\nhom: e2 -> e\n");
        assert_eq!(Morphism::parse(&text, &g, &t).unwrap(), m);
        assert!(Morphism::parse("hom: e1 -> e\n", &g, &t).is_err());
        assert!(Morphism::parse("hom: e1 -> q\nhom: e2 -> e\n", &g, &t).is_err());
        assert!(Morphism::parse("hom: e1 -> e\nhom: e1 -> e\n", &g, &t).is_err());
    }
}
