//! Shared test infrastructure: a deliberately naive free-algebra
//! rewriting oracle.  Elements are linear combinations of free words;
//! normalization repeatedly applies a two-letter rewrite rule to the
//! leftmost reducible position.  No PBW bookkeeping, no exponent
//! arithmetic — the slow path the kernel engines are checked against.

use std::collections::BTreeMap;

use qpadic::PadicScalar;

pub type FreeElement<G> = BTreeMap<Vec<G>, PadicScalar>;

/// A rule maps an adjacent pair to `None` (already normal) or a linear
/// combination of replacement words.
pub type PairRule<G> = dyn Fn(G, G) -> Option<Vec<(Vec<G>, PadicScalar)>>;

pub fn add_term<G: Ord + Clone>(acc: &mut FreeElement<G>, word: Vec<G>, coeff: PadicScalar) {
    match acc.get_mut(&word) {
        Some(e) => {
            *e = &*e + &coeff;
            if e.is_zero() {
                acc.remove(&word);
            }
        }
        None if coeff.is_zero() => {}
        None => {
            acc.insert(word, coeff);
        }
    }
}

/// Normalize a single word against the rule set.
pub fn normalize_word<G: Ord + Copy>(word: Vec<G>, rule: &PairRule<G>) -> FreeElement<G> {
    let mut out: FreeElement<G> = BTreeMap::new();
    let mut work: Vec<(Vec<G>, PadicScalar)> = vec![(word, PadicScalar::one())];
    while let Some((w, c)) = work.pop() {
        let mut reduced = None;
        for i in 0..w.len().saturating_sub(1) {
            if let Some(replacements) = rule(w[i], w[i + 1]) {
                reduced = Some((i, replacements));
                break;
            }
        }
        match reduced {
            None => add_term(&mut out, w, c),
            Some((i, replacements)) => {
                for (mid, rc) in replacements {
                    let mut nw = Vec::with_capacity(w.len() + mid.len());
                    nw.extend_from_slice(&w[..i]);
                    nw.extend_from_slice(&mid);
                    nw.extend_from_slice(&w[i + 2..]);
                    work.push((nw, &c * &rc));
                }
            }
        }
    }
    out
}
