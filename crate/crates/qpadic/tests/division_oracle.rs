//! Weierstrass division against classical polynomial long division.
//!
//! Over the scalar base with the trivial Ore structure the ring is a
//! commutative polynomial ring, so long division by any divisor with an
//! invertible leading coefficient is exact and unique.  The iterative
//! divider must reproduce it: exactly when the divisor equals its own
//! distinguished part, and up to the precision floor otherwise.

use std::collections::BTreeMap;

use qpadic::scalars::{PPower, PadicScalar, QParams};
use qpadic::skewseries::{OreData, ScalarField, SkewElem, SkewSeriesAlgebra};
use qpadic::weierstrass::wdivide;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Poly = BTreeMap<u32, PadicScalar>;

fn tate() -> SkewSeriesAlgebra<ScalarField> {
    SkewSeriesAlgebra::new(ScalarField::new(QParams::default_params()), OreData::trivial(), 0)
}

fn trim(p: &mut Poly) {
    p.retain(|_, c| !c.is_zero());
}

/// Plain schoolbook division g = q f + r, deg r < deg f.  Exact over a
/// field; no norms, no iteration.
fn long_divide(g: &Poly, f: &Poly) -> (Poly, Poly) {
    let (&d, lead) = f.iter().next_back().expect("nonzero divisor");
    let lead_inv = lead.inv().expect("unit leading coefficient");
    let mut rem = g.clone();
    let mut quo: Poly = BTreeMap::new();
    loop {
        let (n, c) = match rem.iter().next_back() {
            Some((&n, c)) if n >= d => (n, c.clone()),
            _ => break,
        };
        let t = &c * &lead_inv;
        quo.insert(n - d, t.clone());
        for (&k, fc) in f {
            let e = rem.entry(n - d + k).or_insert_with(PadicScalar::zero);
            *e = &*e - &(&t * fc);
        }
        trim(&mut rem);
    }
    (quo, rem)
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: u32, p: i64) -> Poly {
    let mut out = BTreeMap::new();
    for deg in 0..=max_deg {
        if rng.gen_bool(0.7) {
            let num = rng.gen_range(-4 * p..=4 * p);
            let den = if rng.gen_bool(0.3) { p } else { 1 };
            let c = PadicScalar::from_ratio(num, den).unwrap();
            if !c.is_zero() {
                out.insert(deg, c);
            }
        }
    }
    out
}

fn to_elem(alg: &SkewSeriesAlgebra<ScalarField>, p: &Poly) -> SkewElem<ScalarField> {
    alg.from_coeffs(p.iter().map(|(d, c)| (*d, c.clone())))
}

#[test]
fn exact_agreement_on_distinguished_divisors() {
    // Divisor coefficients are canonical residue representatives, so the
    // defect vanishes and the division must terminate exactly in one pass.
    let alg = tate();
    let p = 5i64;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..120 {
        let d = rng.gen_range(1..=4u32);
        let mut f: Poly = BTreeMap::new();
        f.insert(d, PadicScalar::from_integer(rng.gen_range(1..p)));
        for k in 0..d {
            let c = rng.gen_range(0..p);
            if c != 0 {
                f.insert(k, PadicScalar::from_integer(c));
            }
        }
        let g = random_poly(&mut rng, d + 3, p);
        let (quo, rem) = long_divide(&g, &f);
        let div = wdivide(&alg, &to_elem(&alg, &g), &to_elem(&alg, &f), PPower::Pow(-40)).unwrap();
        assert_eq!(div.residual_floor, PPower::Zero, "expected an exact division");
        assert_eq!(div.quotient.coeffs, quo);
        assert_eq!(div.remainder.coeffs, rem);
    }
}

#[test]
fn floor_agreement_on_defective_divisors() {
    // A small perturbation of norm < 1 makes the defect nonzero; the
    // iterative answer must match classical division to the floor, and
    // the residual g - (q f + r) must itself drop below the floor.
    let alg = tate();
    let p = 5i64;
    let floor = PPower::Pow(-40);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..120 {
        let d = rng.gen_range(1..=4u32);
        let mut f: Poly = BTreeMap::new();
        f.insert(d, PadicScalar::from_integer(rng.gen_range(1..p)));
        for k in 0..d {
            // c = a + b/p with p | a forces a genuinely defective divisor
            let c = PadicScalar::from_ratio(rng.gen_range(-3..=3) * p * p + rng.gen_range(0..p), p)
                .unwrap();
            if !c.is_zero() {
                f.insert(k, c);
            }
        }
        let fe = to_elem(&alg, &f);
        if !qpadic::weierstrass::check_regular(&alg, &fe).unwrap().is_regular {
            continue;
        }
        let g = random_poly(&mut rng, d + 3, p);
        let ge = to_elem(&alg, &g);
        let div = wdivide(&alg, &ge, &fe, floor).unwrap();
        assert!(div.residual_floor <= floor);
        assert!(div.remainder.degree().map_or(true, |m| m < d));
        // direct multiplication residual
        let qf = alg.skew_multiply(&div.quotient, &fe).unwrap();
        let resid = alg.sub(&ge, &alg.add(&qf, &div.remainder).unwrap()).unwrap();
        assert!(alg.gauss_norm(&resid) <= floor);
        // uniqueness: classical quotient/remainder agree to the floor
        let (quo, rem) = long_divide(&g, &f);
        let dq = alg.sub(&div.quotient, &to_elem(&alg, &quo)).unwrap();
        let dr = alg.sub(&div.remainder, &to_elem(&alg, &rem)).unwrap();
        assert!(alg.gauss_norm(&dq) <= floor);
        assert!(alg.gauss_norm(&dr) <= floor);
    }
}

#[test]
fn oracle_itself_reconstructs_products() {
    // Sanity for the oracle: (q f + r) divided by f gives (q, r) back.
    let alg = tate();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let d = rng.gen_range(1..=3u32);
        let mut f = random_poly(&mut rng, d - 1, 5);
        f.insert(d, PadicScalar::from_integer(rng.gen_range(1..5)));
        let q = random_poly(&mut rng, 3, 5);
        let mut r = random_poly(&mut rng, d.saturating_sub(1), 5);
        trim(&mut r);
        let fe = to_elem(&alg, &f);
        let qe = to_elem(&alg, &q);
        let prod = alg.skew_multiply(&qe, &fe).unwrap();
        let ge = alg.add(&prod, &to_elem(&alg, &r)).unwrap();
        let g: Poly = ge.coeffs.clone();
        let (quo, rem) = long_divide(&g, &f);
        assert_eq!(quo, q);
        assert_eq!(rem, r);
    }
}
