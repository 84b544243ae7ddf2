//! Hand-built structures used by tests, benches and the CLI examples.

use crate::maps::{numbered_ground, MapMagma, Mode, PartialMap, PointSet, Prefunction};
use crate::table::{Elem, PartialMagma};

fn table(names: &[&str], rows: &[&[Option<Elem>]]) -> PartialMagma {
    PartialMagma::from_rows(names, rows).expect("corpus table is valid")
}

fn from_fn(names: Vec<String>, f: impl Fn(Elem, Elem) -> Option<Elem>) -> PartialMagma {
    let n = names.len();
    let cells = (0..n * n).map(|k| f(k / n, k % n)).collect();
    PartialMagma::new(names, cells).expect("corpus table is valid")
}

pub fn trivial_group() -> PartialMagma {
    table(&["e"], &[&[Some(0)]])
}

pub fn z2() -> PartialMagma {
    cyclic_group(2)
}

/// `e, g, g2, ...` with `g^i g^j = g^(i+j mod n)`.
pub fn cyclic_group(n: usize) -> PartialMagma {
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    from_fn(names, |x, y| Some((x + y) % n))
}

pub fn klein_four() -> PartialMagma {
    from_fn(["e", "a", "b", "c"].map(String::from).to_vec(), |x, y| Some(x ^ y))
}

/// Two units whose cross products are undefined.
pub fn two_unit_groupoid() -> PartialMagma {
    table(&["e1", "e2"], &[&[Some(0), None], &[None, Some(1)]])
}

/// `xy = y` for all `x, y`. For `n = 2` this is a right poloid that is not normal.
pub fn right_zero_band(n: usize) -> PartialMagma {
    let names = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).take(n).collect();
    from_fn(names, |_, y| Some(y))
}

/// The monoid `{e, a}` with `aa = a`.
pub fn band_monoid() -> PartialMagma {
    table(&["e", "a"], &[&[Some(0), Some(1)], &[Some(1), Some(1)]])
}

/// The chain `1 > a > 0` under meet.
pub fn chain_monoid() -> PartialMagma {
    from_fn(["1", "a", "0"].map(String::from).to_vec(), |x, y| Some(x.max(y)))
}

/// The category with objects `A, B` and one arrow `f: A → B`; products are
/// composites, left factor applied last.
pub fn arrow_category() -> PartialMagma {
    // 1A 1B f
    table(
        &["1A", "1B", "f"],
        &[
            &[Some(0), None, None],
            &[None, Some(1), Some(2)],
            &[Some(2), None, None],
        ],
    )
}

/// Objects `A, B` with mutually inverse arrows `f: A → B`, `g: B → A`.
pub fn pair_groupoid() -> PartialMagma {
    // 1A 1B f g
    table(
        &["1A", "1B", "f", "g"],
        &[
            &[Some(0), None, None, Some(3)],
            &[None, Some(1), Some(2), None],
            &[Some(2), None, None, Some(1)],
            &[None, Some(3), Some(0), None],
        ],
    )
}

/// Objects `A, B` with two parallel arrows `f, g: A → B`.
pub fn parallel_arrows() -> PartialMagma {
    // 1A 1B f g
    table(
        &["1A", "1B", "f", "g"],
        &[
            &[Some(0), None, None, None],
            &[None, Some(1), Some(2), Some(3)],
            &[Some(2), None, None, None],
            &[Some(3), None, None, None],
        ],
    )
}

/// The full transformation monoid on two points: `id`, `sw`, `c1`, `c2`.
pub fn transformation_monoid_2() -> PartialMagma {
    let maps = [("id", [0, 1]), ("sw", [1, 0]), ("c1", [0, 0]), ("c2", [1, 1])];
    let named = maps
        .iter()
        .map(|(name, a)| {
            let pre = Prefunction::new(a.iter().map(|&q| Some(q)).collect()).expect("total map");
            (name.to_string(), PartialMap::Pre(pre))
        })
        .collect();
    MapMagma::new(numbered_ground(2), named, Mode::Supset)
        .and_then(|m| m.as_partial_magma())
        .expect("closed")
}

/// Disjoint union; colliding names on the right get a `'` suffix.
pub fn disjoint_union(a: &PartialMagma, b: &PartialMagma) -> PartialMagma {
    let n = a.size();
    let mut names = a.names().to_vec();
    for name in b.names() {
        let mut name = name.clone();
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
    }
    from_fn(names, |x, y| match (x < n, y < n) {
        (true, true) => a.product(x, y),
        (false, false) => b.product(x - n, y - n).map(|z| z + n),
        _ => None,
    })
}

/// `{Id_{1,2}, Id_{2,3}}` over `{1, 2, 3}`: a domain pretransformation magma
/// whose left units have no meet.
pub fn two_identities() -> MapMagma {
    let id = |pts: &[usize]| {
        PartialMap::Pre(Prefunction::identity(3, pts.iter().copied().collect::<PointSet>()).expect("non-empty"))
    };
    MapMagma::new(
        numbered_ground(3),
        vec![("i12".into(), id(&[0, 1])), ("i23".into(), id(&[1, 2]))],
        Mode::Supset,
    )
    .expect("valid")
}

/// `f = h = Id_{1}` and `g = Id_{1,2}` over `{1, 2}`, where associativity of
/// prefunction composition fails.
pub fn nonassociative_identities() -> MapMagma {
    let id = |pts: &[usize]| {
        PartialMap::Pre(Prefunction::identity(2, pts.iter().copied().collect::<PointSet>()).expect("non-empty"))
    };
    MapMagma::new(
        numbered_ground(2),
        vec![
            ("f".into(), id(&[0])),
            ("g".into(), id(&[0, 1])),
            ("h".into(), id(&[0])),
        ],
        Mode::Supset,
    )
    .expect("valid")
}

/// Hand-built poloids of size 3 and 4: groupoids, monoids, categories and
/// disjoint unions of groups.
pub fn poloids() -> Vec<(&'static str, PartialMagma)> {
    vec![
        ("trivial", trivial_group()),
        ("z2", z2()),
        ("two-units", two_unit_groupoid()),
        ("band", band_monoid()),
        ("z3", cyclic_group(3)),
        ("z4", cyclic_group(4)),
        ("klein", klein_four()),
        ("chain", chain_monoid()),
        ("arrow", arrow_category()),
        ("pair-groupoid", pair_groupoid()),
        ("parallel", parallel_arrows()),
        ("t2", transformation_monoid_2()),
        ("z2+trivial", disjoint_union(&z2(), &trivial_group())),
        ("z2+z2", disjoint_union(&z2(), &z2())),
        ("three-units", disjoint_union(&two_unit_groupoid(), &trivial_group())),
        ("arrow+trivial", disjoint_union(&arrow_category(), &trivial_group())),
        ("band+band", disjoint_union(&band_monoid(), &band_monoid())),
    ]
}
