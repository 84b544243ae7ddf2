use poloid::classify::{self, Class};
use poloid::enumerate::{canonical_form, relabel};
use poloid::maps::{compose, numbered_ground, Mode, PartialFn, PartialMap, PointSet, Prefunction};
use poloid::morphisms::find_isomorphism;
use poloid::table::default_names;
use poloid::{MapMagma, PartialMagma};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn magma(max: usize) -> impl Strategy<Value = PartialMagma> {
    (1..=max)
        .prop_flat_map(|n| prop::collection::vec(prop::option::of(0..n), n * n))
        .prop_filter_map("empty operation", |cells| PartialMagma::with_default_names(cells).ok())
}

fn permuted(m: &PartialMagma) -> impl Strategy<Value = (PartialMagma, Vec<usize>)> {
    let m = m.clone();
    Just((0..m.size()).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |sigma| {
            let cells = relabel(m.cells(), m.size(), &sigma);
            (PartialMagma::new(default_names(m.size()), cells).unwrap(), sigma)
        })
}

fn prefunction(n: usize) -> impl Strategy<Value = Prefunction> {
    prop::collection::vec(prop::option::of(0..n), n).prop_filter_map("empty domain", |a| Prefunction::new(a).ok())
}

fn partial_fn(n: usize) -> impl Strategy<Value = PartialFn> {
    (prefunction(n), any::<u64>()).prop_map(move |(f, extra)| {
        let cod = PointSet::from_bits((f.im().bits() | extra) & PointSet::full(n).bits());
        PartialFn::new(f, cod).unwrap()
    })
}

proptest! {
    #[test]
    fn text_roundtrip(m in magma(5)) {
        prop_assert_eq!(m.to_text().parse::<PartialMagma>().unwrap(), m);
    }

    #[test]
    fn units_are_two_sided(m in magma(4)) {
        let (l, r) = (m.left_units(), m.right_units());
        for e in m.units() {
            prop_assert!(l.contains(&e) && r.contains(&e));
        }
    }

    #[test]
    fn defined_products_precede(m in magma(4)) {
        for x in m.elements() {
            for y in m.elements() {
                prop_assert!(!m.is_defined(x, y) || m.precedes(x, y));
            }
        }
    }

    #[test]
    fn zero_adjunction_is_total_and_conservative(m in magma(4)) {
        let z = m.adjoin_zero();
        let zero = m.size();
        prop_assert!(z.is_total());
        for x in z.elements() {
            prop_assert_eq!(z.product(x, zero), Some(zero));
            prop_assert_eq!(z.product(zero, x), Some(zero));
        }
        for x in m.elements() {
            for y in m.elements() {
                let p = z.product(x, y).filter(|&v| v != zero);
                prop_assert_eq!(p, m.product(x, y));
            }
        }
    }

    #[test]
    fn witnesses_replay(m in magma(4)) {
        for class in [Class::Semigroupoid, Class::RightDirectedSemigroupoid, Class::Total] {
            if let Some(w) = class.check(&m).witness() {
                prop_assert_eq!(w.replays_on(&m), Some(true));
            }
        }
    }

    #[test]
    fn hierarchy(m in magma(4)) {
        let r = classify::classify(&m);
        let v = r.verdicts;
        prop_assert!(!v.group || v.monoid);
        prop_assert!(!v.group || v.groupoid);
        prop_assert!(!v.monoid || v.poloid);
        prop_assert!(!v.groupoid || v.poloid);
        prop_assert!(!v.poloid || v.semigroupoid);
        prop_assert!(!v.semigroupoid || v.right_directed_semigroupoid);
        prop_assert!(!v.poloid || v.right_poloid);
        prop_assert!(!v.right_poloid || v.right_directed_semigroupoid);
        prop_assert_eq!(v.normal, v.unit_posetal);
        if v.poloid {
            prop_assert_eq!(r.phi, r.vareps);
        }
        let failed: Vec<Class> = r.witnesses.iter().map(|f| f.verdict).collect();
        for class in Class::ALL {
            prop_assert_eq!(failed.contains(&class), !v.get(class));
        }
    }

    #[test]
    fn verdicts_invariant_under_relabelling((m, q) in magma(4).prop_flat_map(|m| (Just(m.clone()), permuted(&m)))) {
        let (q, sigma) = q;
        prop_assert_eq!(classify::classify(&m).verdicts, classify::classify(&q).verdicts);
        prop_assert_eq!(canonical_form(&m), canonical_form(&q));
        let iso = find_isomorphism(&m, &q).unwrap();
        prop_assert!(iso.is_some());
        prop_assert!(find_isomorphism(&q, &m).unwrap().is_some());
        if sigma.iter().enumerate().all(|(i, &s)| i == s) {
            let map = iso.unwrap().map().to_vec();
            prop_assert_eq!(map, sigma);
        }
    }

    #[test]
    fn supset_facts(f in prefunction(3), g in prefunction(3), h in prefunction(3)) {
        let (f, g, h) = (PartialMap::Pre(f), PartialMap::Pre(g), PartialMap::Pre(h));
        let c = |a: &PartialMap, b: &PartialMap| compose(Mode::Supset, a, b);
        let left = c(&f, &g).and_then(|fg| c(&fg, &h));
        let right = c(&g, &h).and_then(|gh| c(&f, &gh));
        if let (Some(l), Some(r)) = (&left, &right) {
            prop_assert_eq!(l, r);
        }
        if c(&f, &g).is_some() && c(&g, &h).is_some() {
            prop_assert!(left.is_some() && right.is_some());
        }
        prop_assert!(left.is_none() || right.is_some());
        if let Some(fg) = c(&f, &g) {
            prop_assert!(f.im().is_superset(fg.im()));
            prop_assert_eq!(fg.dom(), g.dom());
        }
        let id = f.identity_like(f.dom()).unwrap();
        prop_assert_eq!(c(&f, &id), Some(f.clone()));
    }

    #[test]
    fn codomains_survive_composition(f in partial_fn(3), g in partial_fn(3)) {
        let (f, g) = (PartialMap::Fn(f), PartialMap::Fn(g));
        if let Some(fg) = compose(Mode::Supset, &f, &g) {
            prop_assert_eq!(fg.cod(), f.cod());
            prop_assert!(fg.cod().unwrap().is_superset(fg.im()));
        }
        let cod = compose(Mode::Codomain, &f, &g);
        prop_assert_eq!(cod.is_some(), Some(f.dom()) == g.cod());
    }

    #[test]
    fn map_magma_text_roundtrip(maps in subsequence(poloid::maps::all_prefunctions(3), 1..12)) {
        let named = maps.into_iter().enumerate().map(|(i, f)| (format!("f{i}"), PartialMap::Pre(f))).collect();
        let a = MapMagma::new(numbered_ground(3), named, Mode::Supset).unwrap();
        prop_assert_eq!(a.to_text().parse::<MapMagma>().unwrap(), a);
    }
}
