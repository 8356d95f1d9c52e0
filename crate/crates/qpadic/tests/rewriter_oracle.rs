//! The normal-form engines against a naive free-word rewriter built
//! directly from the defining relations of each algebra.

mod common;

use std::collections::BTreeMap;

use common::{normalize_word, FreeElement};
use qpadic::qalgebra::{Gen, PBWMonomial, UqAlgebra, Variant};
use qpadic::qdouble::{DoubleAlgebra, DoubleGen, DoubleMonomial};
use qpadic::scalars::{PadicScalar, QParams};
use qpadic::slq2::{CoordGen, MqAlgebra, MqMonomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn qp() -> QParams {
    QParams::default_params()
}

fn w_inv(qp: &QParams) -> PadicScalar {
    qp.q_minus_q_inv().inv().unwrap()
}

// ----------------------------------------------------------------------
// U_q(sl2), standard and breve
// ----------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum U {
    E,
    K,
    Ki,
    F,
}

fn uq_rule(qp: &QParams, variant: Variant) -> impl Fn(U, U) -> Option<Vec<(Vec<U>, PadicScalar)>> {
    let ke = if variant == Variant::Breve { 1 } else { 2 };
    let w = w_inv(qp);
    // commutator Cartan part: K^{+-1} for standard, K^{+-2} for breve
    let kpow = if variant == Variant::Breve { 2 } else { 1 };
    let q = qp.clone();
    move |a, b| match (a, b) {
        (U::K, U::Ki) | (U::Ki, U::K) => Some(vec![(vec![], PadicScalar::one())]),
        (U::K, U::E) => Some(vec![(vec![U::E, U::K], q.q_pow(ke))]),
        (U::Ki, U::E) => Some(vec![(vec![U::E, U::Ki], q.q_pow(-ke))]),
        (U::F, U::K) => Some(vec![(vec![U::K, U::F], q.q_pow(ke))]),
        (U::F, U::Ki) => Some(vec![(vec![U::Ki, U::F], q.q_pow(-ke))]),
        (U::F, U::E) => Some(vec![
            (vec![U::E, U::F], PadicScalar::one()),
            (vec![U::K; kpow], -&w),
            (vec![U::Ki; kpow], w.clone()),
        ]),
        _ => None,
    }
}

fn uq_from_free(alg: &UqAlgebra, x: &FreeElement<U>) -> qpadic::qalgebra::PBWElement {
    let mut out = alg.zero();
    for (word, c) in x {
        let n_e = word.iter().filter(|g| **g == U::E).count() as u32;
        let n_f = word.iter().filter(|g| **g == U::F).count() as u32;
        let n_k = word.iter().filter(|g| **g == U::K).count() as i64
            - word.iter().filter(|g| **g == U::Ki).count() as i64;
        out = alg
            .add(&out, &alg.monomial_elem(PBWMonomial::new(n_e, n_k, n_f), c.clone()))
            .unwrap();
    }
    out
}

#[test]
fn uq_engines_match_the_free_rewriter() {
    let qp = qp();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let alphabet = [U::E, U::K, U::Ki, U::F];
    for variant in [Variant::Standard, Variant::Breve] {
        let alg = UqAlgebra::new(qp.clone(), variant);
        let rule = uq_rule(&qp, variant);
        for _ in 0..150 {
            let len = rng.gen_range(0..=7);
            let word: Vec<U> = (0..len).map(|_| alphabet[rng.gen_range(0..4)]).collect();
            let engine_word: Vec<Gen> = word
                .iter()
                .map(|g| match g {
                    U::E => Gen::E,
                    U::K => Gen::K,
                    U::Ki => Gen::KInv,
                    U::F => Gen::F,
                })
                .collect();
            let by_oracle = uq_from_free(&alg, &normalize_word(word.clone(), &rule));
            let by_engine = alg.normalize(&engine_word).unwrap();
            assert_eq!(by_engine, by_oracle, "mismatch on {word:?} ({variant:?})");
        }
    }
}

// ----------------------------------------------------------------------
// the quantum double
// ----------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum D {
    E,
    K,
    Ki,
    Km,
    Kmi,
    F,
}

fn double_rule(qp: &QParams) -> impl Fn(D, D) -> Option<Vec<(Vec<D>, PadicScalar)>> {
    let w = w_inv(qp);
    let q = qp.clone();
    move |a, b| {
        let one = PadicScalar::one;
        match (a, b) {
            (D::K, D::Ki) | (D::Ki, D::K) | (D::Km, D::Kmi) | (D::Kmi, D::Km) => {
                Some(vec![(vec![], one())])
            }
            // both Cartan families act on E by q^2 and on F by q^-2
            (D::K, D::E) => Some(vec![(vec![D::E, D::K], q.q_pow(2))]),
            (D::Ki, D::E) => Some(vec![(vec![D::E, D::Ki], q.q_pow(-2))]),
            (D::Km, D::E) => Some(vec![(vec![D::E, D::Km], q.q_pow(2))]),
            (D::Kmi, D::E) => Some(vec![(vec![D::E, D::Kmi], q.q_pow(-2))]),
            (D::F, D::K) => Some(vec![(vec![D::K, D::F], q.q_pow(2))]),
            (D::F, D::Ki) => Some(vec![(vec![D::Ki, D::F], q.q_pow(-2))]),
            (D::F, D::Km) => Some(vec![(vec![D::Km, D::F], q.q_pow(2))]),
            (D::F, D::Kmi) => Some(vec![(vec![D::Kmi, D::F], q.q_pow(-2))]),
            // the two Cartan families commute; sort K before K_-
            (D::Km, D::K) => Some(vec![(vec![D::K, D::Km], one())]),
            (D::Km, D::Ki) => Some(vec![(vec![D::Ki, D::Km], one())]),
            (D::Kmi, D::K) => Some(vec![(vec![D::K, D::Kmi], one())]),
            (D::Kmi, D::Ki) => Some(vec![(vec![D::Ki, D::Kmi], one())]),
            // EF - FE = (K - K_-^{-1}) (q - q^{-1})^{-1}
            (D::F, D::E) => Some(vec![
                (vec![D::E, D::F], one()),
                (vec![D::K], -&w),
                (vec![D::Kmi], w.clone()),
            ]),
            _ => None,
        }
    }
}

#[test]
fn double_engine_matches_the_free_rewriter() {
    let qp = qp();
    let d = DoubleAlgebra::new(qp.clone());
    let rule = double_rule(&qp);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let alphabet = [D::E, D::K, D::Ki, D::Km, D::Kmi, D::F];
    for _ in 0..150 {
        let len = rng.gen_range(0..=7);
        let word: Vec<D> = (0..len).map(|_| alphabet[rng.gen_range(0..6)]).collect();
        let engine_word: Vec<DoubleGen> = word
            .iter()
            .map(|g| match g {
                D::E => DoubleGen::E,
                D::K => DoubleGen::K(1),
                D::Ki => DoubleGen::K(-1),
                D::Km => DoubleGen::KMinus(1),
                D::Kmi => DoubleGen::KMinus(-1),
                D::F => DoubleGen::F,
            })
            .collect();
        let free = normalize_word(word.clone(), &rule);
        let mut by_oracle = d.zero();
        for (w, c) in &free {
            let n_e = w.iter().filter(|g| **g == D::E).count() as u32;
            let n_f = w.iter().filter(|g| **g == D::F).count() as u32;
            let n_k = w.iter().filter(|g| **g == D::K).count() as i64
                - w.iter().filter(|g| **g == D::Ki).count() as i64;
            let n_km = w.iter().filter(|g| **g == D::Km).count() as i64
                - w.iter().filter(|g| **g == D::Kmi).count() as i64;
            by_oracle = d.add(
                &by_oracle,
                &d.monomial_elem(DoubleMonomial::new(n_e, n_k, n_km, n_f), c.clone()),
            );
        }
        let by_engine = d.normalize_gens(&engine_word);
        assert_eq!(by_engine, by_oracle, "mismatch on {word:?}");
    }
}

// ----------------------------------------------------------------------
// the quantum 2x2 matrix bialgebra
// ----------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum M {
    A,
    B,
    C,
    D,
}

fn mq_rule(qp: &QParams) -> impl Fn(M, M) -> Option<Vec<(Vec<M>, PadicScalar)>> {
    let q = qp.clone();
    move |x, y| {
        let one = PadicScalar::one;
        match (x, y) {
            (M::B, M::A) => Some(vec![(vec![M::A, M::B], q.q_inv().clone())]),
            (M::C, M::A) => Some(vec![(vec![M::A, M::C], q.q_inv().clone())]),
            (M::C, M::B) => Some(vec![(vec![M::B, M::C], one())]),
            (M::D, M::B) => Some(vec![(vec![M::B, M::D], q.q_inv().clone())]),
            (M::D, M::C) => Some(vec![(vec![M::C, M::D], q.q_inv().clone())]),
            (M::D, M::A) => Some(vec![
                (vec![M::A, M::D], one()),
                (vec![M::B, M::C], -&q.q_minus_q_inv()),
            ]),
            _ => None,
        }
    }
}

#[test]
fn mq_engine_matches_the_free_rewriter() {
    let qp = qp();
    let mq = MqAlgebra::new(qp.clone());
    let rule = mq_rule(&qp);
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let alphabet = [M::A, M::B, M::C, M::D];
    for _ in 0..150 {
        let len = rng.gen_range(0..=7);
        let word: Vec<M> = (0..len).map(|_| alphabet[rng.gen_range(0..4)]).collect();
        let engine_word: Vec<CoordGen> = word
            .iter()
            .map(|g| match g {
                M::A => CoordGen::A,
                M::B => CoordGen::B,
                M::C => CoordGen::C,
                M::D => CoordGen::D,
            })
            .collect();
        let free = normalize_word(word.clone(), &rule);
        let mut by_oracle: BTreeMap<MqMonomial, PadicScalar> = BTreeMap::new();
        for (w, c) in &free {
            let m = MqMonomial {
                na: w.iter().filter(|g| **g == M::A).count() as u32,
                nb: w.iter().filter(|g| **g == M::B).count() as u32,
                nc: w.iter().filter(|g| **g == M::C).count() as u32,
                nd: w.iter().filter(|g| **g == M::D).count() as u32,
            };
            let e = by_oracle.entry(m).or_insert_with(PadicScalar::zero);
            *e = &*e + c;
        }
        by_oracle.retain(|_, v| !v.is_zero());
        let by_engine = mq.normalize(&engine_word);
        assert_eq!(by_engine, by_oracle, "mismatch on {word:?}");
    }
}
