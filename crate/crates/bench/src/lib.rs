//! Inputs shared by the benchmarks under `benches/`.

use poloid::classify::Class;
use poloid::enumerate::enumerate;
use poloid::{corpus, PartialMagma};

/// The hand-built corpus followed by every poloid on three elements.
pub fn sample_poloids() -> Vec<PartialMagma> {
    let mut out: Vec<PartialMagma> = corpus::poloids().into_iter().map(|(_, p)| p).collect();
    out.extend(enumerate(3, Class::Poloid).expect("within bound"));
    out
}

/// A shuffled copy of `p`, so isomorphism search has work to do.
pub fn reversed(p: &PartialMagma) -> PartialMagma {
    let n = p.size();
    let flip = |x: usize| n - 1 - x;
    let cells = (0..n * n)
        .map(|i| p.product(flip(i / n), flip(i % n)).map(flip))
        .collect();
    let names = (0..n).map(|x| p.name(flip(x)).to_string()).collect();
    PartialMagma::new(names, cells).expect("relabelled table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use poloid::find_isomorphism;

    #[test]
    fn reversal_is_an_isomorphism() {
        for p in sample_poloids().iter().take(20) {
            assert!(find_isomorphism(p, &reversed(p)).unwrap().is_some());
        }
    }
}
