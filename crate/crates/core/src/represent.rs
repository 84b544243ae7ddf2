//! Left-translation representations.
//!
//! `μ(x)` is the prefunction `t ↦ xt` on the carrier, defined where `xt` is.
//! For a poloid, `τ` equips `μ(x)` with the codomain `dom(μ(ϵ_x))`, and
//! `α = τ ∘ μ` embeds the poloid in a transformation poloid. A normal right
//! poloid embeds in a domain pretransformation magma through `μ` alone.

use crate::classify::{Poloid, RightPoloid};
use crate::error::{Error, Result};
use crate::maps::{compose, MapMagma, Mode, PartialFn, PartialMap, Prefunction};
use crate::table::{content_lines, Elem, PartialMagma, Verdict};

/// A source magma, a magma of maps on its carrier and the element-to-map
/// assignment. The assignment is injective except for [`mu`] on right
/// poloids that are not normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    source: PartialMagma,
    image: MapMagma,
    assignment: Vec<usize>,
}

impl Embedding {
    pub fn source(&self) -> &PartialMagma {
        &self.source
    }

    pub fn image(&self) -> &MapMagma {
        &self.image
    }

    /// Member index in the image of each source element.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn map_of(&self, x: Elem) -> &PartialMap {
        &self.image.members()[self.assignment[x]]
    }

    pub fn is_injective(&self) -> bool {
        let mut a = self.assignment.clone();
        a.sort_unstable();
        a.dedup();
        a.len() == self.assignment.len()
    }

    /// The image map magma followed by an `iso:` block of `element -> map` lines.
    pub fn to_text(&self) -> String {
        let mut out = self.image.to_text();
        out.push_str("iso:\n");
        for (x, &i) in self.assignment.iter().enumerate() {
            out.push_str(&format!("{} -> {}\n", self.source.name(x), self.image.name(i)));
        }
        out
    }
}

/// Splits an embedding file into its image and its `element -> map` pairs.
pub fn parse_embedding(text: &str) -> Result<(MapMagma, Vec<(String, String)>)> {
    let lines: Vec<&str> = text.lines().collect();
    let split = lines
        .iter()
        .position(|l| l.split('#').next().unwrap_or("").trim() == "iso:")
        .ok_or_else(|| Error::Syntax {
            line: 0,
            message: "missing `iso:` block".into(),
        })?;
    let image = MapMagma::parse(&lines[..split].join("\n"))?;
    let mut pairs = Vec::new();
    for (line, content) in content_lines(&lines[split + 1..].join("\n")) {
        let line = line + split + 1;
        let (x, f) = content.split_once("->").ok_or_else(|| Error::Syntax {
            line,
            message: "expected `<element> -> <map>`".into(),
        })?;
        let f = f.trim();
        if image.index_of_name(f).is_none() {
            return Err(Error::UnknownToken {
                line,
                token: f.to_string(),
            });
        }
        pairs.push((x.trim().to_string(), f.to_string()));
    }
    Ok((image, pairs))
}

fn translation(p: &PartialMagma, x: Elem) -> Prefunction {
    Prefunction::new(p.elements().map(|t| p.product(x, t)).collect()).expect("non-empty left translation")
}

fn internal(what: impl Into<String>) -> Error {
    Error::Internal(what.into())
}

/// `x ↦ μ(x)`, named `m_<x>`. Requires a right poloid.
pub fn mu(p: &PartialMagma) -> Result<Embedding> {
    RightPoloid::verify(p).map_err(|witness| Error::Precondition {
        class: "right poloid",
        witness,
    })?;
    let named = p
        .elements()
        .map(|x| (format!("m_{}", p.name(x)), PartialMap::Pre(translation(p, x))))
        .collect();
    let image = MapMagma::new(p.names().to_vec(), named, Mode::Supset)?;
    let assignment = p
        .elements()
        .map(|x| image.index_of(&PartialMap::Pre(translation(p, x))).expect("member"))
        .collect();
    Ok(Embedding {
        source: p.clone(),
        image,
        assignment,
    })
}

/// Upgrades each `μ(x)` to the partial function with codomain
/// `dom(μ(ϵ_x))`, named `a_<x>`. Requires a poloid source.
pub fn tau(mu: &Embedding) -> Result<Embedding> {
    let p = &mu.source;
    let pol = Poloid::verify(p).map_err(|witness| Error::Precondition {
        class: "poloid",
        witness,
    })?;
    let alpha: Vec<PartialMap> = p
        .elements()
        .map(|x| {
            let pre = mu.map_of(x).prefunction().clone();
            let cod = mu.map_of(pol.eps(x)).dom();
            PartialFn::new(pre, cod).map(PartialMap::Fn)
        })
        .collect::<Result<_>>()?;
    let named = p
        .elements()
        .map(|x| (format!("a_{}", p.name(x)), alpha[x].clone()))
        .collect();
    let image = MapMagma::new(p.names().to_vec(), named, Mode::Supset)?;
    let assignment = alpha.iter().map(|f| image.index_of(f).expect("member")).collect();
    Ok(Embedding {
        source: p.clone(),
        image,
        assignment,
    })
}

/// `α = τ ∘ μ`, verified to be an isomorphism onto a transformation poloid
/// whose units are identity transformations.
pub fn cayley(p: &PartialMagma) -> Result<Embedding> {
    let pol = Poloid::verify(p).map_err(|witness| Error::Precondition {
        class: "poloid",
        witness,
    })?;
    let m = mu(p)?;
    let e = tau(&m)?;
    if !m.is_injective() || !e.is_injective() {
        return Err(internal("left translations are not injective"));
    }
    for &u in pol.units() {
        let mu_u = m.map_of(u);
        if mu_u != &mu_u.identity_like(mu_u.dom())? || !e.map_of(u).is_identity() {
            return Err(internal(format!("unit `{}` is not sent to an identity", p.name(u))));
        }
    }
    for x in p.elements() {
        if !m.map_of(x).dom().contains(pol.vareps(x)) {
            return Err(internal(format!("dom(μ({})) misses its right unit", p.name(x))));
        }
        for y in p.elements() {
            let (ax, ay) = (e.map_of(x), e.map_of(y));
            let links = ax.dom() == ay.cod().expect("partial functions");
            let units_meet = pol.vareps(x) == pol.eps(y);
            let composite = compose(Mode::Supset, ax, ay);
            let xy = p.product(x, y);
            if links != units_meet || units_meet != xy.is_some() || xy.is_some() != composite.is_some() {
                return Err(internal(format!(
                    "definedness chain broken at ({}, {})",
                    p.name(x),
                    p.name(y)
                )));
            }
            if let Some(xy) = xy {
                if composite.as_ref() != Some(e.map_of(xy)) {
                    return Err(internal(format!("α({}{}) is not a composite", p.name(x), p.name(y))));
                }
            }
        }
    }
    let image = e.image();
    if image.is_transformation_semigroupoid()? != Verdict::Holds || image.is_transformation_poloid()? != Verdict::Holds
    {
        return Err(internal("image is not a transformation poloid"));
    }
    Ok(e)
}

/// Embeds a normal right poloid in a domain pretransformation magma via `μ`,
/// adding the identities `Id_dom(μ(x))` and closing under composition.
pub fn embed_right_poloid(p: &PartialMagma) -> Result<Embedding> {
    let rp = RightPoloid::verify(p).map_err(|witness| Error::Precondition {
        class: "right poloid",
        witness,
    })?;
    if let Verdict::Fails(witness) = rp.is_normal() {
        return Err(Error::Precondition {
            class: "normal right poloid",
            witness,
        });
    }
    let maps: Vec<PartialMap> = p.elements().map(|x| PartialMap::Pre(translation(p, x))).collect();
    let mut named: Vec<(String, PartialMap)> = p
        .elements()
        .map(|x| (format!("m_{}", p.name(x)), maps[x].clone()))
        .collect();
    for x in p.elements() {
        let id = maps[x].identity_like(maps[x].dom())?;
        if !named.iter().any(|(_, f)| f == &id) {
            named.push((format!("id_{}", p.name(x)), id));
        }
    }
    let mut image = MapMagma::new(p.names().to_vec(), named, Mode::Supset)?;
    if !image.is_closed().holds() {
        image = image.closure("c")?;
    }
    let assignment: Vec<usize> = maps.iter().map(|f| image.index_of(f).expect("member")).collect();
    let e = Embedding {
        source: p.clone(),
        image,
        assignment,
    };
    if !e.is_injective() {
        return Err(internal("left translations of a normal right poloid are not injective"));
    }
    for x in p.elements() {
        let mx = e.map_of(x);
        if e.map_of(rp.phi(x)) != &mx.identity_like(mx.dom())? {
            return Err(internal(format!("μ(φ_{0}) differs from Id_dom(μ({0}))", p.name(x))));
        }
        for y in p.elements() {
            let composite = compose(Mode::Supset, mx, e.map_of(y));
            match p.product(x, y) {
                Some(xy) if composite.as_ref() != Some(e.map_of(xy)) => {
                    return Err(internal(format!("μ({}{}) is not a composite", p.name(x), p.name(y))));
                }
                None if composite.is_some() => {
                    return Err(internal(format!(
                        "μ({})∘μ({}) defined without the product",
                        p.name(x),
                        p.name(y)
                    )));
                }
                _ => {}
            }
        }
    }
    if e.image.is_domain_pretransformation_magma()? != Verdict::Holds {
        return Err(internal("image is not a domain pretransformation magma"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::maps::PointSet;

    #[test]
    fn mu_collapses_on_right_zero_band() {
        let p = corpus::right_zero_band(2);
        let m = mu(&p).unwrap();
        assert!(!m.is_injective());
        assert_eq!(m.map_of(0), m.map_of(1));
        assert!(m.map_of(0).is_identity());
        assert_eq!(m.map_of(0).dom(), PointSet::full(2));
        assert!(matches!(
            embed_right_poloid(&p),
            Err(Error::Precondition {
                class: "normal right poloid",
                ..
            })
        ));
    }

    #[test]
    fn mu_on_groupoids() {
        let g = corpus::two_unit_groupoid();
        let m = mu(&g).unwrap();
        assert!(m.is_injective());
        assert_eq!(m.map_of(0).dom(), PointSet::singleton(0));
        assert_eq!(m.map_of(1).dom(), PointSet::singleton(1));
        let z = corpus::z2();
        let m = mu(&z).unwrap();
        assert_eq!(m.map_of(1).prefunction().assignment(), &[Some(1), Some(0)]);
    }

    #[test]
    fn tau_codomains() {
        let g = corpus::two_unit_groupoid();
        let t = tau(&mu(&g).unwrap()).unwrap();
        assert_eq!(t.map_of(0).cod(), Some(PointSet::singleton(0)));
        let z = corpus::z2();
        let t = tau(&mu(&z).unwrap()).unwrap();
        assert_eq!(t.map_of(1).cod(), Some(PointSet::full(2)));
        assert!(tau(&mu(&corpus::right_zero_band(2)).unwrap()).is_err());
    }

    #[test]
    fn cayley_examples() {
        let g = corpus::two_unit_groupoid();
        let c = cayley(&g).unwrap();
        assert!(c.map_of(0).is_identity() && c.map_of(1).is_identity());
        let t = c.image().as_partial_magma().unwrap();
        assert_eq!(t.cells(), &[Some(0), None, None, Some(1)]);
        assert_eq!(cayley(&corpus::trivial_group()).unwrap().image().len(), 1);
        assert!(matches!(
            cayley(&corpus::right_zero_band(2)),
            Err(Error::Precondition { class: "poloid", .. })
        ));
    }

    #[test]
    fn cayley_on_corpus() {
        for (name, p) in corpus::poloids() {
            let c = cayley(&p).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(c.image().len(), p.size(), "{name}");
        }
    }

    #[test]
    fn right_poloid_embedding_of_poloids_matches_mu() {
        for (name, p) in corpus::poloids() {
            let e = embed_right_poloid(&p).unwrap();
            let m = mu(&p).unwrap();
            assert_eq!(e.image().members(), m.image().members(), "{name}");
        }
    }

    #[test]
    fn final_example_embeds() {
        let a = corpus::two_identities().as_partial_magma().unwrap();
        let e = embed_right_poloid(&a).unwrap();
        assert_eq!(e.image().len(), 2);
    }

    #[test]
    fn embedding_file_roundtrip() {
        let e = cayley(&corpus::z2()).unwrap();
        let text = e.to_text();
        assert!(text.contains("iso:\ne -> a_e\ng -> a_g\n"));
        let (image, pairs) = parse_embedding(&text).unwrap();
        assert_eq!(&image, e.image());
        assert_eq!(pairs, vec![("e".into(), "a_e".into()), ("g".into(), "a_g".into())]);
        assert!(parse_embedding("set: 1\nmap f: 1->1\n").is_err());
    }
}
