//! Named invariant suites: exhaustive and randomized checks of the
//! algebraic laws the kernel is supposed to satisfy, reusable from the
//! test harness and from the CLI's `check` command.
//!
//! Every suite is deterministic (seeded sampling) and exact: all
//! comparisons are equalities or norm comparisons of exact rationals.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qalgebra::{
    PBWElement, PBWMonomial, RadiusSpec, SecondConstruction, UqAlgebra, Variant,
};
use crate::qdouble::{DoubleAlgebra, DoubleMonomial};
use crate::scalars::{gamma_constant, q_factorial, PPower, PadicScalar, QParams, Valuation};
use crate::skewseries::{
    LaurentAlgebra, LaurentPoly, NormedAlgebra, OreData, ScalarField, SkewSeriesAlgebra,
};
use crate::slq2::{uq_pairing_via_breve, CoordKind, CoordMonomial, Slq2};
use crate::weierstrass::wdivide;

/// Outcome of one acceptance suite.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    /// Stable suite identifier, also the CLI argument.
    pub suite: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(suite: &'static str, detail: String) -> Self {
        CheckOutcome {
            suite,
            passed: true,
            detail,
        }
    }

    fn fail(suite: &'static str, detail: String) -> Self {
        CheckOutcome {
            suite,
            passed: false,
            detail,
        }
    }
}

/// All suite names, in report order.
pub const SUITES: &[&str] = &[
    "hopf",
    "double-engines",
    "second-construction",
    "weierstrass",
    "norm-laws",
    "boundedness",
    "duality",
    "factorial",
    "graded-commutativity",
    "pairing-routes",
];

/// Run one suite by name, or every suite for `"all"`.
pub fn run_suite(name: &str) -> Result<Vec<CheckOutcome>> {
    let run = |s: &&str| -> CheckOutcome {
        let r = match *s {
            "hopf" => check_hopf(),
            "double-engines" => check_double_engines(),
            "second-construction" => check_second_construction(),
            "weierstrass" => check_weierstrass(),
            "norm-laws" => check_norm_laws(),
            "boundedness" => check_boundedness(),
            "duality" => check_duality(),
            "factorial" => check_factorial(),
            "graded-commutativity" => check_graded_commutativity(),
            "pairing-routes" => check_pairing_routes(),
            _ => unreachable!(),
        };
        match r {
            Ok(o) => o,
            Err(e) => CheckOutcome::fail(suite_static(s), format!("error: {e}")),
        }
    };
    if name == "all" {
        return Ok(SUITES.iter().map(run).collect());
    }
    match SUITES.iter().find(|s| **s == name) {
        Some(s) => Ok(vec![run(s)]),
        None => Err(Error::Config(format!(
            "unknown suite {name:?}; available: all, {}",
            SUITES.join(", ")
        ))),
    }
}

fn suite_static(s: &&str) -> &'static str {
    SUITES.iter().find(|t| *t == s).copied().unwrap_or("?")
}

// ----------------------------------------------------------------------
// shared samplers and enumerators
// ----------------------------------------------------------------------

fn sweep_params() -> Vec<QParams> {
    [3u64, 5, 7]
        .iter()
        .map(|&p| {
            QParams::new(p, PadicScalar::from_integer(p as i64 + 1))
                .expect("sweep parameters are valid")
        })
        .collect()
}

fn sample_scalar(qp: &QParams, rng: &mut dyn RngCore) -> PadicScalar {
    ScalarField::new(qp.clone()).sample(rng)
}

fn uq_monomials(max_deg: u32, borel: Option<bool>) -> Vec<PBWMonomial> {
    let d = max_deg as i64;
    let mut out = Vec::new();
    for e in 0..=max_deg {
        for f in 0..=max_deg {
            for k in -d..=d {
                let m = PBWMonomial::new(e, k, f);
                if e + f + k.unsigned_abs() as u32 > max_deg {
                    continue;
                }
                match borel {
                    Some(true) if f > 0 => continue,
                    Some(false) if e > 0 => continue,
                    _ => {}
                }
                out.push(m);
            }
        }
    }
    out
}

fn double_monomials(max_deg: u32) -> Vec<DoubleMonomial> {
    let d = max_deg as i64;
    let mut out = Vec::new();
    for e in 0..=max_deg {
        for f in 0..=max_deg {
            for k in -d..=d {
                for km in -d..=d {
                    let m = DoubleMonomial::new(e, k, km, f);
                    if m.total_degree() <= max_deg {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn coord_monomials(max_deg: u32) -> Vec<CoordMonomial> {
    let mut out = vec![CoordMonomial::ONE];
    for kind in [CoordKind::A, CoordKind::D] {
        for total in 1..=max_deg {
            for s in 0..=total {
                for r in 0..=(total - s) {
                    let t = total - s - r;
                    if kind == CoordKind::D && s == 0 {
                        continue;
                    }
                    out.push(CoordMonomial::new(kind, s, r, t).expect("valid monomial"));
                }
            }
        }
    }
    out
}

fn random_uq_elem(
    alg: &UqAlgebra,
    monos: &[PBWMonomial],
    rng: &mut ChaCha8Rng,
) -> PBWElement {
    let terms = 1 + rng.gen_range(0..3usize);
    let mut x = alg.zero();
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())];
        x = alg
            .add(&x, &alg.monomial_elem(m, sample_scalar(&alg.qp, rng)))
            .expect("same variant");
    }
    x
}

// ----------------------------------------------------------------------
// 1. Hopf axiom suite
// ----------------------------------------------------------------------

fn check_hopf() -> Result<CheckOutcome> {
    let qp = QParams::default_params();
    let mut cases = 0usize;

    // the enveloping algebra and its breve variant: dedicated tensor-cube
    // helpers make coassociativity a direct comparison
    for variant in [Variant::Standard, Variant::Breve] {
        let alg = UqAlgebra::new(qp.clone(), variant);
        for m in uq_monomials(4, None) {
            let x = alg.monomial_elem(m, PadicScalar::one());
            if alg.coproduct3_left(&x)? != alg.coproduct3_right(&x)? {
                return Ok(CheckOutcome::fail(
                    "hopf",
                    format!("coassociativity fails at {m:?} ({variant:?})"),
                ));
            }
            let d = alg.coproduct(&x)?;
            let mut recovered = alg.zero();
            for ((l, r), c) in &d.terms {
                let el = alg.counit(&alg.monomial_elem(*l, PadicScalar::one()))?;
                recovered = alg.add(
                    &recovered,
                    &alg.monomial_elem(*r, &(c * &el) * &PadicScalar::one()),
                )?;
            }
            if recovered != x {
                return Ok(CheckOutcome::fail(
                    "hopf",
                    format!("counit axiom fails at {m:?} ({variant:?})"),
                ));
            }
            let expected = alg.scalar_elem(alg.counit(&x)?);
            if alg.antipode_convolution(&x, true)? != expected
                || alg.antipode_convolution(&x, false)? != expected
            {
                return Ok(CheckOutcome::fail(
                    "hopf",
                    format!("antipode axiom fails at {m:?} ({variant:?})"),
                ));
            }
            cases += 1;
        }
    }

    // the double
    let d = DoubleAlgebra::new(qp.clone());
    for m in double_monomials(4) {
        let x = d.monomial_elem(m, PadicScalar::one());
        let dx = d.double_coproduct(&x);
        let mut left: BTreeMap<(DoubleMonomial, DoubleMonomial, DoubleMonomial), PadicScalar> =
            BTreeMap::new();
        let mut right = left.clone();
        for ((l, r), c) in &dx.terms {
            for ((l2, r2), c2) in d
                .double_coproduct(&d.monomial_elem(*l, PadicScalar::one()))
                .terms
            {
                let e = left.entry((l2, r2, *r)).or_insert_with(PadicScalar::zero);
                *e = &*e + &(c * &c2);
            }
            for ((l2, r2), c2) in d
                .double_coproduct(&d.monomial_elem(*r, PadicScalar::one()))
                .terms
            {
                let e = right.entry((*l, l2, r2)).or_insert_with(PadicScalar::zero);
                *e = &*e + &(c * &c2);
            }
        }
        left.retain(|_, v| !v.is_zero());
        right.retain(|_, v| !v.is_zero());
        if left != right {
            return Ok(CheckOutcome::fail(
                "hopf",
                format!("double coassociativity fails at {m:?}"),
            ));
        }
        let mut recovered = d.zero();
        for ((l, r), c) in &dx.terms {
            let el = d.double_counit(&d.monomial_elem(*l, PadicScalar::one()));
            recovered = d.add(&recovered, &d.monomial_elem(*r, c * &el));
        }
        if recovered != x {
            return Ok(CheckOutcome::fail(
                "hopf",
                format!("double counit axiom fails at {m:?}"),
            ));
        }
        let expected = d.scalar_mul(&d.double_counit(&x), &d.one());
        if d.antipode_convolution(&x, true) != expected
            || d.antipode_convolution(&x, false) != expected
        {
            return Ok(CheckOutcome::fail(
                "hopf",
                format!("double antipode axiom fails at {m:?}"),
            ));
        }
        cases += 1;
    }

    // the coordinate algebra
    let s = Slq2::new(qp);
    for m in coord_monomials(4) {
        let x = s.monomial_elem(m, PadicScalar::one());
        let dx = s.coproduct(&x);
        let mut left: BTreeMap<(CoordMonomial, CoordMonomial, CoordMonomial), PadicScalar> =
            BTreeMap::new();
        let mut right = left.clone();
        for ((l, r), c) in &dx.terms {
            for ((l2, r2), c2) in s.coproduct(&s.monomial_elem(*l, PadicScalar::one())).terms {
                let e = left.entry((l2, r2, *r)).or_insert_with(PadicScalar::zero);
                *e = &*e + &(c * &c2);
            }
            for ((l2, r2), c2) in s.coproduct(&s.monomial_elem(*r, PadicScalar::one())).terms {
                let e = right.entry((*l, l2, r2)).or_insert_with(PadicScalar::zero);
                *e = &*e + &(c * &c2);
            }
        }
        left.retain(|_, v| !v.is_zero());
        right.retain(|_, v| !v.is_zero());
        if left != right {
            return Ok(CheckOutcome::fail(
                "hopf",
                format!("coordinate coassociativity fails at {m:?}"),
            ));
        }
        let mut recovered = s.zero();
        for ((l, r), c) in &dx.terms {
            let el = s.counit(&s.monomial_elem(*l, PadicScalar::one()));
            recovered = s.add(&recovered, &s.monomial_elem(*r, c * &el));
        }
        if recovered != x {
            return Ok(CheckOutcome::fail(
                "hopf",
                format!("coordinate counit axiom fails at {m:?}"),
            ));
        }
        let expected = s.scalar_mul(&s.counit(&x), &s.one());
        if s.antipode_convolution(&x, true) != expected
            || s.antipode_convolution(&x, false) != expected
        {
            return Ok(CheckOutcome::fail(
                "hopf",
                format!("coordinate antipode axiom fails at {m:?}"),
            ));
        }
        cases += 1;
    }

    Ok(CheckOutcome::pass(
        "hopf",
        format!("coassociativity, counit, antipode on {cases} monomials across 4 algebras"),
    ))
}

// ----------------------------------------------------------------------
// 2. Cross-engine double equivalence
// ----------------------------------------------------------------------

fn check_double_engines() -> Result<CheckOutcome> {
    let d = DoubleAlgebra::new(QParams::default_params());
    let monos = double_monomials(5);
    let mut cases = 0usize;
    for m1 in &monos {
        for m2 in &monos {
            if m1.total_degree() + m2.total_degree() > 5 {
                continue;
            }
            let x = d.monomial_elem(*m1, PadicScalar::one());
            let y = d.monomial_elem(*m2, PadicScalar::one());
            let by_formula = d.double_mul_formula(&x, &y)?;
            let by_relations = d.double_mul_relations(&x, &y);
            if by_formula != by_relations {
                return Ok(CheckOutcome::fail(
                    "double-engines",
                    format!("engines disagree at {m1:?} * {m2:?}"),
                ));
            }
            cases += 1;
        }
    }
    Ok(CheckOutcome::pass(
        "double-engines",
        format!("formula product = relations product on {cases} monomial pairs"),
    ))
}

// ----------------------------------------------------------------------
// 3. Second construction agreement
// ----------------------------------------------------------------------

fn check_second_construction() -> Result<CheckOutcome> {
    let mut cases = 0usize;
    for qp in [QParams::default_params(), sweep_params().remove(0)] {
        let uq = UqAlgebra::new(qp.clone(), Variant::Standard);
        let tower = SecondConstruction::new(qp, 0, 1, 0)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5ec0);
        for _ in 0..120 {
            let m1 = PBWMonomial::new(
                rng.gen_range(0..4),
                rng.gen_range(-3..=3),
                rng.gen_range(0..4),
            );
            let m2 = PBWMonomial::new(
                rng.gen_range(0..4),
                rng.gen_range(-3..=3),
                rng.gen_range(0..4),
            );
            let via_tower = tower.mul(&tower.embed_monomial(m1)?, &tower.embed_monomial(m2)?)?;
            let via_pbw = tower.embed(&uq.mul_monomials(m1, m2)?)?;
            if via_tower != via_pbw {
                return Ok(CheckOutcome::fail(
                    "second-construction",
                    format!("tower product disagrees at {m1:?} * {m2:?}"),
                ));
            }
            cases += 1;
        }
    }
    Ok(CheckOutcome::pass(
        "second-construction",
        format!("skew-tower products match the normal-form engine on {cases} random pairs"),
    ))
}

// ----------------------------------------------------------------------
// 4. Weierstrass division
// ----------------------------------------------------------------------

fn scalar_tate(qp: &QParams) -> SkewSeriesAlgebra<ScalarField> {
    SkewSeriesAlgebra::new(ScalarField::new(qp.clone()), OreData::trivial(), 0)
}

/// The Cartan Laurent base with the Ore twist alpha(K) = q^2 K.
fn cartan_tate(qp: &QParams) -> SkewSeriesAlgebra<LaurentAlgebra> {
    let base = LaurentAlgebra::new(qp.clone(), 0);
    let alpha: Arc<dyn Fn(&LaurentAlgebra, &LaurentPoly) -> LaurentPoly + Send + Sync> = {
        let q = qp.clone();
        Arc::new(move |_b, e| LaurentPoly {
            terms: e
                .terms
                .iter()
                .map(|(d, c)| (*d, &q.q_pow(2 * d) * c))
                .collect(),
        })
    };
    let ore = OreData::new(
        alpha,
        Arc::new(|b: &LaurentAlgebra, _e: &LaurentPoly| b.zero()),
        PPower::ONE,
        PPower::Zero,
        true,
    );
    SkewSeriesAlgebra::new(base, ore, 0)
}

/// A random element of the base with norm <= 1.
fn sample_unit_ball<A: NormedAlgebra>(base: &A, rng: &mut ChaCha8Rng) -> A::Elem {
    let mut e = base.sample(rng);
    if let PPower::Pow(v) = base.norm(&e) {
        if v > 0 {
            e = base.scalar_mul(&base.qparams().p_pow(v), &e);
        }
    }
    e
}

fn weierstrass_sweep<A: NormedAlgebra>(
    alg: &SkewSeriesAlgebra<A>,
    rng: &mut ChaCha8Rng,
    rounds: usize,
) -> Result<Option<String>> {
    let qp = alg.base.qparams().clone();
    for i in 0..rounds {
        let d = 1 + (i % 4) as u32;
        // regular divisor: unit scalar leading coefficient, unit-ball tail
        let p = qp.prime() as i64;
        let mut lead = rng.gen_range(-20i64..20);
        if lead % p == 0 || lead == 0 {
            lead += 1;
        }
        let mut f = alg.monomial(d, alg.base.scalar_mul(&PadicScalar::from_integer(lead), &alg.base.one()));
        for j in 0..d {
            if rng.gen_range(0..3) > 0 {
                f = alg.add(&f, &alg.monomial(j, sample_unit_ball(&alg.base, rng)))?;
            }
        }
        let mut g = alg.from_coeffs([]);
        for j in 0..=(d + 3) {
            if rng.gen_range(0..4) > 0 {
                g = alg.add(&g, &alg.monomial(j, alg.base.sample(rng)))?;
            }
        }
        let div = wdivide(alg, &g, &f, PPower::Pow(-40))?;
        if div.residual_floor > PPower::Pow(-40) {
            return Ok(Some(format!("residual above p^-40 at round {i}")));
        }
        if div.remainder.degree().map_or(false, |m| m >= d) {
            return Ok(Some(format!("remainder degree >= {d} at round {i}")));
        }
        let lhs = alg.gauss_norm(&g);
        let rhs = alg
            .gauss_norm(&div.quotient)
            .max(alg.gauss_norm(&div.remainder));
        if lhs != rhs {
            return Ok(Some(format!(
                "norm identity fails at round {i}: ||g|| = {lhs}, max = {rhs}"
            )));
        }
    }
    Ok(None)
}

fn check_weierstrass() -> Result<CheckOutcome> {
    let qp = QParams::default_params();
    let mut rng = ChaCha8Rng::seed_from_u64(0x2e1);
    if let Some(msg) = weierstrass_sweep(&scalar_tate(&qp), &mut rng, 120)? {
        return Ok(CheckOutcome::fail(
            "weierstrass",
            format!("scalar base: {msg}"),
        ));
    }
    if let Some(msg) = weierstrass_sweep(&cartan_tate(&qp), &mut rng, 120)? {
        return Ok(CheckOutcome::fail(
            "weierstrass",
            format!("Cartan base: {msg}"),
        ));
    }
    Ok(CheckOutcome::pass(
        "weierstrass",
        "240 random divisions (degrees 1-4, two coefficient algebras): residual <= p^-40, \
         deg r < d, ||g|| = max(||q||, ||r||)"
            .into(),
    ))
}

// ----------------------------------------------------------------------
// 5. Norm laws
// ----------------------------------------------------------------------

fn check_norm_laws() -> Result<CheckOutcome> {
    // R_E R_F >= |w| = |(q - q^{-1})^{-1}|: below that threshold the
    // EF-commutator correction outweighs the product norm and the Gauss
    // norm is not even submultiplicative
    let radii = [
        RadiusSpec { e_e: 1, e_f: 0 },
        RadiusSpec { e_e: 1, e_f: 2 },
        RadiusSpec { e_e: 2, e_f: 2 },
    ];
    let borel_radii = [
        RadiusSpec { e_e: 0, e_f: 0 },
        RadiusSpec { e_e: 1, e_f: 2 },
        RadiusSpec { e_e: 2, e_f: 2 },
    ];
    let mut multiplicative = 0usize;
    let mut submultiplicative = 0usize;
    for qp in [QParams::default_params(), sweep_params().remove(0)] {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9a11);
        // multiplicative: the Borel halves ...
        for borel in [true, false] {
            let variant = if borel {
                Variant::BorelPlus
            } else {
                Variant::BorelMinus
            };
            let alg = UqAlgebra::new(qp.clone(), variant);
            let monos = uq_monomials(4, Some(borel));
            for i in 0..90 {
                let rs = borel_radii[i % borel_radii.len()];
                let x = random_uq_elem(&alg, &monos, &mut rng);
                let y = random_uq_elem(&alg, &monos, &mut rng);
                let xy = alg.mul(&x, &y)?;
                if alg.nu_norm(&xy, rs) != alg.nu_norm(&x, rs) * alg.nu_norm(&y, rs) {
                    return Ok(CheckOutcome::fail(
                        "norm-laws",
                        format!("multiplicativity fails on {variant:?}"),
                    ));
                }
                multiplicative += 1;
            }
        }
        // ... and the double
        let d = DoubleAlgebra::new(qp.clone());
        let dmonos = double_monomials(3);
        for i in 0..90 {
            let rs = radii[i % radii.len()];
            let mut x = d.zero();
            let mut y = d.zero();
            for _ in 0..2 {
                x = d.add(
                    &x,
                    &d.monomial_elem(
                        dmonos[rng.gen_range(0..dmonos.len())],
                        sample_scalar(&qp, &mut rng),
                    ),
                );
                y = d.add(
                    &y,
                    &d.monomial_elem(
                        dmonos[rng.gen_range(0..dmonos.len())],
                        sample_scalar(&qp, &mut rng),
                    ),
                );
            }
            let xy = d.double_mul_relations(&x, &y);
            if d.nu_norm(&xy, rs) != d.nu_norm(&x, rs) * d.nu_norm(&y, rs) {
                return Ok(CheckOutcome::fail(
                    "norm-laws",
                    "multiplicativity fails on the double".into(),
                ));
            }
            multiplicative += 1;
        }
        // submultiplicative on the full algebras
        for variant in [Variant::Standard, Variant::Breve] {
            let alg = UqAlgebra::new(qp.clone(), variant);
            let monos = uq_monomials(4, None);
            for i in 0..60 {
                let rs = radii[i % radii.len()];
                let x = random_uq_elem(&alg, &monos, &mut rng);
                let y = random_uq_elem(&alg, &monos, &mut rng);
                let xy = alg.mul(&x, &y)?;
                if alg.nu_norm(&xy, rs) > alg.nu_norm(&x, rs) * alg.nu_norm(&y, rs) {
                    return Ok(CheckOutcome::fail(
                        "norm-laws",
                        format!("submultiplicativity fails on {variant:?}"),
                    ));
                }
                submultiplicative += 1;
            }
        }
    }
    Ok(CheckOutcome::pass(
        "norm-laws",
        format!(
            "{multiplicative} multiplicative pairs (Borel halves, double), \
             {submultiplicative} submultiplicative pairs (full algebras)"
        ),
    ))
}

// ----------------------------------------------------------------------
// 6. Boundedness of the Hopf maps and the pairing
// ----------------------------------------------------------------------

fn check_boundedness() -> Result<CheckOutcome> {
    // same threshold as in the norm laws: R_E R_F >= |w|
    let radii = [
        RadiusSpec { e_e: 1, e_f: 0 },
        RadiusSpec { e_e: 1, e_f: 2 },
        RadiusSpec { e_e: 2, e_f: 2 },
    ];
    let mut cases = 0usize;
    for qp in sweep_params() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xb0b0);
        for variant in [Variant::Standard, Variant::Breve] {
            let alg = UqAlgebra::new(qp.clone(), variant);
            let monos = uq_monomials(4, None);
            for i in 0..45 {
                let rs = radii[i % radii.len()];
                let x = random_uq_elem(&alg, &monos, &mut rng);
                let n = alg.nu_norm(&x, rs);
                if alg.tensor2_nu_norm(&alg.coproduct(&x)?, rs) > n {
                    return Ok(CheckOutcome::fail(
                        "boundedness",
                        format!("||Delta|| > 1 on {variant:?}"),
                    ));
                }
                if qp.norm(&alg.counit(&x)?) > n {
                    return Ok(CheckOutcome::fail(
                        "boundedness",
                        format!("||eps|| > 1 on {variant:?}"),
                    ));
                }
                if alg.nu_norm(&alg.antipode(&x)?, rs) > n {
                    return Ok(CheckOutcome::fail(
                        "boundedness",
                        format!("||S|| > 1 on {variant:?}"),
                    ));
                }
                cases += 1;
            }
        }
        // pairing bound |sigma(x, y)| <= nu(x) nu(y) for R_E R_F > |w|
        let d = DoubleAlgebra::new(qp.clone());
        let plus = UqAlgebra::new(qp.clone(), Variant::BorelPlus);
        let minus = UqAlgebra::new(qp.clone(), Variant::BorelMinus);
        let pm = uq_monomials(4, Some(true));
        let mm = uq_monomials(4, Some(false));
        for rs in [RadiusSpec { e_e: 1, e_f: 1 }, RadiusSpec { e_e: 2, e_f: 2 }] {
            for _ in 0..40 {
                let x = random_uq_elem(&plus, &pm, &mut rng);
                let y = random_uq_elem(&minus, &mm, &mut rng);
                let v = d.sigma(&x, &y)?;
                if qp.norm(&v) > plus.nu_norm(&x, rs) * minus.nu_norm(&y, rs) {
                    return Ok(CheckOutcome::fail(
                        "boundedness",
                        "pairing bound fails".into(),
                    ));
                }
                cases += 1;
            }
        }
    }
    Ok(CheckOutcome::pass(
        "boundedness",
        format!("Delta, eps, S contractive and pairing bounded on {cases} sweep cases"),
    ))
}

// ----------------------------------------------------------------------
// 7. Duality numerics
// ----------------------------------------------------------------------

fn check_duality() -> Result<CheckOutcome> {
    let mut gamma_cases = 0usize;
    let mut pairing_cases = 0usize;
    let mut dual_cases = 0usize;
    for qp in sweep_params() {
        let p = qp.prime() as u32;
        // |gamma| = |[n]!| |[l]!| exactly; in particular |gamma| = 1
        // whenever the factorials are units (n, l < p)
        for s in -6..=6i64 {
            for r in 0..=6u32 {
                for t in 0..=6u32 {
                    for m in -6..=6i64 {
                        for n in 0..=6u32 {
                            for l in 0..=6u32 {
                                let g = gamma_constant(s, r, t, m, n, l, &qp);
                                let expect = qp.norm(&q_factorial(n, &qp))
                                    * qp.norm(&q_factorial(l, &qp));
                                if qp.norm(&g) != expect {
                                    return Ok(CheckOutcome::fail(
                                        "duality",
                                        format!(
                                            "|gamma| != |[n]!||[l]!| at p={p}, \
                                             s={s} r={r} t={t} m={m} n={n} l={l}"
                                        ),
                                    ));
                                }
                                if n < p && l < p && qp.norm(&g) != PPower::ONE {
                                    return Ok(CheckOutcome::fail(
                                        "duality",
                                        format!("|gamma| != 1 in the unit range at p={p}"),
                                    ));
                                }
                                gamma_cases += 1;
                            }
                        }
                    }
                }
            }
        }
        // |<K^m E^n F^l, a^s c^r b^t>| = delta delta |[n]!| |[l]!|
        let sl = Slq2::new(qp.clone());
        let uq = UqAlgebra::new(qp.clone(), Variant::Standard);
        for m in -8..=8i64 {
            for n in 0..=8u32 {
                for l in 0..=8u32 {
                    let x = uq.monomial_elem(PBWMonomial::new(n, m, l), PadicScalar::one());
                    for s in 0..=8u32 {
                        for r in 0..=8u32 {
                            for t in 0..=8u32 {
                                let y = sl.monomial_elem(
                                    CoordMonomial::new(CoordKind::A, s, r, t)?,
                                    PadicScalar::one(),
                                );
                                let v = sl.uq_pairing(&x, &y)?;
                                let expect = if r == n && t == l {
                                    qp.norm(&q_factorial(n, &qp)) * qp.norm(&q_factorial(l, &qp))
                                } else {
                                    PPower::Zero
                                };
                                if qp.norm(&v) != expect {
                                    return Ok(CheckOutcome::fail(
                                        "duality",
                                        format!(
                                            "pairing norm fails at p={p}, m={m} n={n} l={l} \
                                             s={s} r={r} t={t}"
                                        ),
                                    ));
                                }
                                pairing_cases += 1;
                            }
                        }
                    }
                }
            }
        }
        // dual norms: closed form on basis monomials, attained by the
        // truncated supremum over nu'-normalized monomials
        let rs = RadiusSpec { e_e: 2, e_f: 3 };
        for kind in [CoordKind::A, CoordKind::D] {
            for s in 0..=3u32 {
                if kind == CoordKind::D && s == 0 {
                    continue;
                }
                for r in 0..=10u32 {
                    for t in 0..=10u32 {
                        let y = sl.monomial_elem(
                            CoordMonomial::new(kind, s, r, t)?,
                            PadicScalar::one(),
                        );
                        let expect = PPower::Pow(-(rs.e_e * r as i64 + rs.e_f * t as i64));
                        if sl.dual_norm(&y, rs) != expect {
                            return Ok(CheckOutcome::fail(
                                "duality",
                                format!("dual norm closed form fails at p={p}, {kind:?} s={s} r={r} t={t}"),
                            ));
                        }
                        dual_cases += 1;
                    }
                }
            }
        }
        for (r, t) in [(0u32, 0u32), (1, 0), (0, 1), (2, 3), (4, 2)] {
            let y = sl.monomial_elem(
                CoordMonomial::new(CoordKind::A, 1, r, t)?,
                PadicScalar::one(),
            );
            let mut sup = PPower::Zero;
            for n in 0..=6u32 {
                for l in 0..=6u32 {
                    for m in -2..=2i64 {
                        let x = uq.monomial_elem(PBWMonomial::new(n, m, l), PadicScalar::one());
                        let v = sl.uq_pairing(&x, &y)?;
                        let ratio = qp.norm(&v) * uq.nu_prime_norm(&x, rs)?.inverse()?;
                        sup = sup.max(ratio);
                    }
                }
            }
            if sup != sl.dual_norm(&y, rs) {
                return Ok(CheckOutcome::fail(
                    "duality",
                    format!("truncated supremum misses the dual norm at p={p}, r={r} t={t}"),
                ));
            }
            dual_cases += 1;
        }
    }
    Ok(CheckOutcome::pass(
        "duality",
        format!(
            "{gamma_cases} gamma norms, {pairing_cases} pairing norms, \
             {dual_cases} dual-norm cases over p = 3, 5, 7"
        ),
    ))
}

// ----------------------------------------------------------------------
// 8. Factorial estimate
// ----------------------------------------------------------------------

fn check_factorial() -> Result<CheckOutcome> {
    let mut cases = 0usize;
    for qp in sweep_params() {
        let p = qp.prime();
        let mut qfact = PadicScalar::one();
        for n in 1..=100u32 {
            qfact = &qfact * &crate::scalars::q_integer(n, &qp);
            // Legendre: v_p(n!) = sum_{i >= 1} floor(n / p^i)
            let mut legendre = 0i64;
            let mut m = n as u64 / p;
            while m > 0 {
                legendre += m as i64;
                m /= p;
            }
            if qp.valuation(&qfact) != Valuation::Finite(legendre) {
                return Ok(CheckOutcome::fail(
                    "factorial",
                    format!("v_p([{n}]_q!) != v_p({n}!) at p = {p}"),
                ));
            }
            cases += 1;
        }
    }
    Ok(CheckOutcome::pass(
        "factorial",
        format!("v_p([n]_q!) = v_p(n!) for n <= 100 over p = 3, 5, 7 ({cases} cases)"),
    ))
}

// ----------------------------------------------------------------------
// 9. Graded-commutativity surrogate
// ----------------------------------------------------------------------

fn check_graded_commutativity() -> Result<CheckOutcome> {
    let mut cases = 0usize;
    for qp in [QParams::default_params(), sweep_params().remove(2)] {
        let d = DoubleAlgebra::new(qp);
        let monos = double_monomials(4);
        for rs in [RadiusSpec { e_e: 1, e_f: 1 }, RadiusSpec { e_e: 2, e_f: 2 }] {
            for m1 in &monos {
                for m2 in &monos {
                    if m1 >= m2 {
                        continue;
                    }
                    let x = d.monomial_elem(*m1, PadicScalar::one());
                    let y = d.monomial_elem(*m2, PadicScalar::one());
                    let report = d.graded_commutativity_defect(&x, &y, rs);
                    if !report.strict {
                        return Ok(CheckOutcome::fail(
                            "graded-commutativity",
                            format!(
                                "|[x, y]| = {} not below {} at {m1:?}, {m2:?}",
                                report.defect_norm, report.bound
                            ),
                        ));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(CheckOutcome::pass(
        "graded-commutativity",
        format!("strict commutator contraction on {cases} monomial pairs"),
    ))
}

// ----------------------------------------------------------------------
// 10. Pairing-route consistency
// ----------------------------------------------------------------------

fn check_pairing_routes() -> Result<CheckOutcome> {
    let mut cases = 0usize;
    for qp in sweep_params() {
        let sl = Slq2::new(qp.clone());
        let uq = UqAlgebra::new(qp.clone(), Variant::Standard);
        let breve = UqAlgebra::new(qp, Variant::Breve);
        for mx in uq_monomials(3, None) {
            let x = uq.monomial_elem(mx, PadicScalar::one());
            for my in coord_monomials(3) {
                let y = sl.monomial_elem(my, PadicScalar::one());
                let direct = sl.uq_pairing(&x, &y)?;
                let composite = uq_pairing_via_breve(&sl, &breve, &x, &y)?;
                if direct != composite {
                    return Ok(CheckOutcome::fail(
                        "pairing-routes",
                        format!("routes disagree at {mx:?}, {my:?}"),
                    ));
                }
                cases += 1;
            }
        }
    }
    Ok(CheckOutcome::pass(
        "pairing-routes",
        format!("direct pairing = transposed-breve composite on {cases} pairs over p = 3, 5, 7"),
    ))
}
