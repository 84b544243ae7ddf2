//! Exhaustive enumeration of small partial magmas.
//!
//! Raw enumeration walks every non-empty table on `n ≤ 3` elements in
//! row-major base-`(n+1)` order, digit 0 meaning undefined. Filtered
//! enumeration goes up to `n = 4` by backtracking over cells and pruning on
//! the associativity triples that are already decided.

use std::collections::BTreeSet;

use crate::classify::Class;
use crate::error::{Error, Result};
use crate::table::{default_names, Elem, PartialMagma};

/// Largest carrier for raw enumeration.
pub const RAW_BOUND: usize = 3;
/// Largest carrier for filtered enumeration.
pub const FILTER_BOUND: usize = 4;

/// Number of non-empty tables on `n` elements, `(n+1)^(n²) − 1`.
pub fn raw_count(n: usize) -> u128 {
    (n as u128 + 1).pow((n * n) as u32) - 1
}

/// Iterator over all non-empty tables on `n` elements, named `a, b, ...`.
pub struct AllTables {
    n: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for AllTables {
    type Item = PartialMagma;

    fn next(&mut self) -> Option<PartialMagma> {
        if self.done {
            return None;
        }
        // odometer increment, last cell fastest; skips the all-zero start
        let mut k = self.digits.len();
        loop {
            if k == 0 {
                self.done = true;
                return None;
            }
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] <= self.n {
                break;
            }
            self.digits[k] = 0;
        }
        let cells = self.digits.iter().map(|&d| d.checked_sub(1)).collect();
        Some(PartialMagma::new(default_names(self.n), cells).expect("non-empty valid table"))
    }
}

pub fn all_tables(n: usize) -> Result<AllTables> {
    if n == 0 || n > RAW_BOUND {
        return Err(Error::BoundExceeded {
            what: "raw enumeration carrier",
            size: n,
            bound: RAW_BOUND,
        });
    }
    Ok(AllTables {
        n,
        digits: vec![0; n * n],
        done: false,
    })
}

const UNSET: i8 = -2;
const UNDEF: i8 = -1;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axiom {
    TwoSided,
    RightDirected,
}

struct Search<'f> {
    n: usize,
    cells: Vec<i8>,
    axiom: Option<Axiom>,
    allow_undefined: bool,
    needs_local_right_unit: bool,
    keep: &'f mut dyn FnMut(&PartialMagma),
}

impl Search<'_> {
    fn cell(&self, x: usize, y: usize) -> i8 {
        self.cells[x * self.n + y]
    }

    fn mul(&self, x: i8, y: usize) -> i8 {
        if x < 0 {
            x
        } else {
            self.cell(x as usize, y)
        }
    }

    fn mul_right(&self, x: usize, y: i8) -> i8 {
        if y < 0 {
            y
        } else {
            self.cell(x, y as usize)
        }
    }

    /// `false` only when the triple is fully decided and violates the axiom.
    fn triple_ok(&self, axiom: Axiom, x: usize, y: usize, z: usize) -> bool {
        let xy = self.cell(x, y);
        let yz = self.cell(y, z);
        if xy == UNSET || yz == UNSET {
            return true;
        }
        let left = if xy == UNDEF { UNDEF } else { self.mul(xy, z) };
        let right = if yz == UNDEF { UNDEF } else { self.mul_right(x, yz) };
        if left == UNSET || right == UNSET {
            return true;
        }
        let trigger = (xy >= 0 && yz >= 0) || left >= 0 || (axiom == Axiom::TwoSided && right >= 0);
        !trigger || (left >= 0 && left == right)
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        if let Some(axiom) = self.axiom {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !self.triple_ok(axiom, x, y, z) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn row_has_self(&self, x: usize) -> bool {
        (0..self.n).any(|y| self.cell(x, y) == x as i8)
    }

    fn run(&mut self, k: usize) {
        let n = self.n;
        if k == n * n {
            if self.cells.iter().all(|&c| c == UNDEF) {
                return;
            }
            let cells = self.cells.iter().map(|&c| (c >= 0).then_some(c as Elem)).collect();
            let m = PartialMagma::new(default_names(n), cells).expect("valid table");
            (self.keep)(&m);
            return;
        }
        let first = if self.allow_undefined { UNDEF } else { 0 };
        for v in first..n as i8 {
            self.cells[k] = v;
            let row_done = (k + 1).is_multiple_of(n);
            if self.needs_local_right_unit && row_done && !self.row_has_self(k / n) {
                continue;
            }
            if self.consistent() {
                self.run(k + 1);
            }
        }
        self.cells[k] = UNSET;
    }
}

/// Every table on `n` elements in the given class, in row-major base-`(n+1)`
/// order, i.e. the same order as [`all_tables`].
pub fn enumerate(n: usize, class: Class) -> Result<Vec<PartialMagma>> {
    let mut out = Vec::new();
    for_each_in_class(n, class, |m| out.push(m.clone()))?;
    Ok(out)
}

/// Calls `f` on every table on `n` elements in `class`.
pub fn for_each_in_class(n: usize, class: Class, mut f: impl FnMut(&PartialMagma)) -> Result<()> {
    if n == 0 || n > FILTER_BOUND {
        return Err(Error::BoundExceeded {
            what: "filtered enumeration carrier",
            size: n,
            bound: FILTER_BOUND,
        });
    }
    if class == Class::Total && n > RAW_BOUND {
        // every one of the n^(n²) total tables would survive, nothing to prune
        return Err(Error::BoundExceeded {
            what: "total enumeration carrier",
            size: n,
            bound: RAW_BOUND,
        });
    }
    let axiom = match class {
        Class::Total => None,
        Class::Semigroupoid | Class::Poloid | Class::Groupoid | Class::Monoid | Class::Group => Some(Axiom::TwoSided),
        Class::RightDirectedSemigroupoid | Class::RightPoloid | Class::Normal | Class::UnitPosetal => {
            Some(Axiom::RightDirected)
        }
    };
    let allow_undefined = !matches!(class, Class::Total | Class::Monoid | Class::Group);
    let needs_local_right_unit = !matches!(
        class,
        Class::Total | Class::Semigroupoid | Class::RightDirectedSemigroupoid
    );
    let mut keep = |m: &PartialMagma| {
        if class.check(m).holds() {
            f(m);
        }
    };
    let mut search = Search {
        n,
        cells: vec![UNSET; n * n],
        axiom,
        allow_undefined,
        needs_local_right_unit,
        keep: &mut keep,
    };
    search.run(0);
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The table relabelled by `sigma`: the product of `sigma(x)` and `sigma(y)`
/// is `sigma(xy)`.
pub fn relabel(cells: &[Option<Elem>], n: usize, sigma: &[usize]) -> Vec<Option<Elem>> {
    let mut out = vec![None; n * n];
    for x in 0..n {
        for y in 0..n {
            out[sigma[x] * n + sigma[y]] = cells[x * n + y].map(|z| sigma[z]);
        }
    }
    out
}

/// Lexicographically least relabelling over all permutations of the
/// carrier, undefined ordered before every element.
pub fn canonical_form(m: &PartialMagma) -> Vec<Option<Elem>> {
    let n = m.size();
    permutations(n)
        .iter()
        .map(|sigma| relabel(m.cells(), n, sigma))
        .min()
        .expect("at least one permutation")
}

/// Keeps the first table of each isomorphism class, preserving order.
pub fn up_to_iso(tables: Vec<PartialMagma>) -> Vec<PartialMagma> {
    let mut seen = BTreeSet::new();
    tables.into_iter().filter(|m| seen.insert(canonical_form(m))).collect()
}
