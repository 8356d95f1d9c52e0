//! U_q(sl2) and its breve variant as PBW-normal-form Hopf algebras, the
//! Borel halves, the norms nu_R and nu'_R, the maps phi and theta_alpha,
//! and the alternative multiplication engine built as a tower of skew-Tate
//! algebras over U_q(h).
//!
//! Monomials are kept in E-K-F order.  All rewriting happens through the
//! one-relation steps K E = q^{ke} E K (ke = 2 standard, 1 breve),
//! K F = q^{-ke} F K and F E = E F - comm, where comm is
//! (K - K^{-1})/(q - q^{-1}) for the standard algebra and
//! (K^2 - K^{-2})/(q - q^{-1}) for the breve one.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::scalars::{q_factorial, PPower, PadicScalar, QParams};
use crate::skewseries::{LaurentAlgebra, LaurentPoly, NormedAlgebra, OreData, SkewElem, SkewSeriesAlgebra};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PBWMonomial {
    pub n_e: u32,
    pub n_k: i64,
    pub n_f: u32,
}

impl PBWMonomial {
    pub const ONE: PBWMonomial = PBWMonomial { n_e: 0, n_k: 0, n_f: 0 };

    pub fn new(n_e: u32, n_k: i64, n_f: u32) -> Self {
        PBWMonomial { n_e, n_k, n_f }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    Standard,
    Breve,
    BorelPlus,
    BorelMinus,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Standard => "standard",
            Variant::Breve => "breve",
            Variant::BorelPlus => "borel+",
            Variant::BorelMinus => "borel-",
        }
    }

    pub fn from_str_tag(s: &str) -> Result<Self> {
        Ok(match s {
            "standard" => Variant::Standard,
            "breve" => Variant::Breve,
            "borel+" => Variant::BorelPlus,
            "borel-" => Variant::BorelMinus,
            other => return Err(Error::Structure(format!("unknown variant '{other}'"))),
        })
    }

    fn allows(&self, g: Gen) -> bool {
        match (self, g) {
            (Variant::BorelPlus, Gen::F) => false,
            (Variant::BorelMinus, Gen::E) => false,
            _ => true,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    E,
    F,
    K,
    KInv,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PBWElement {
    pub terms: BTreeMap<PBWMonomial, PadicScalar>,
    pub variant: Variant,
}

impl PBWElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Radii for the weighted norms: R_E = p^{e_e}, R_F = p^{e_f}, R_K = 1
/// (forced for Hopf-compatible norms).  `e_k` appears only in the second
/// construction, where it is passed separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadiusSpec {
    pub e_e: i64,
    pub e_f: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2 {
    pub terms: BTreeMap<(PBWMonomial, PBWMonomial), PadicScalar>,
    pub variant: Variant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    pub terms: BTreeMap<(PBWMonomial, PBWMonomial, PBWMonomial), PadicScalar>,
    pub variant: Variant,
}

/// PBW engine for one variant of the quantized algebra.
#[derive(Clone, Debug)]
pub struct UqAlgebra {
    pub qp: QParams,
    pub variant: Variant,
    // normal form of F^c E, memoized by c
    fz_cache: RefCell<HashMap<u32, Vec<(PBWMonomial, PadicScalar)>>>,
}

impl UqAlgebra {
    pub fn new(qp: QParams, variant: Variant) -> Self {
        UqAlgebra {
            qp,
            variant,
            fz_cache: RefCell::new(HashMap::new()),
        }
    }

    /// K-exponent step in K E = q^{ke} E K.
    fn ke(&self) -> i64 {
        match self.variant {
            Variant::Breve => 1,
            _ => 2,
        }
    }

    /// The commutator term of F E = E F - comm, as (K-exponent, coeff).
    fn comm_terms(&self) -> Vec<(i64, PadicScalar)> {
        let w = self
            .qp
            .q_minus_q_inv()
            .inv()
            .expect("q - q^{-1} != 0 since q^2 != 1");
        let j = match self.variant {
            Variant::Breve => 2,
            _ => 1,
        };
        vec![(j, w.clone()), (-j, -&w)]
    }

    pub fn zero(&self) -> PBWElement {
        PBWElement {
            terms: BTreeMap::new(),
            variant: self.variant,
        }
    }

    pub fn monomial_elem(&self, m: PBWMonomial, coeff: PadicScalar) -> PBWElement {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        PBWElement {
            terms,
            variant: self.variant,
        }
    }

    pub fn one(&self) -> PBWElement {
        self.monomial_elem(PBWMonomial::ONE, PadicScalar::one())
    }

    pub fn scalar_elem(&self, c: PadicScalar) -> PBWElement {
        self.monomial_elem(PBWMonomial::ONE, c)
    }

    pub fn gen_elem(&self, g: Gen) -> Result<PBWElement> {
        if !self.variant.allows(g) {
            return Err(Error::Structure(format!(
                "generator {g:?} is not part of the {} algebra",
                self.variant.as_str()
            )));
        }
        let m = match g {
            Gen::E => PBWMonomial::new(1, 0, 0),
            Gen::F => PBWMonomial::new(0, 0, 1),
            Gen::K => PBWMonomial::new(0, 1, 0),
            Gen::KInv => PBWMonomial::new(0, -1, 0),
        };
        Ok(self.monomial_elem(m, PadicScalar::one()))
    }

    fn check_variant(&self, x: &PBWElement) -> Result<()> {
        if x.variant != self.variant {
            return Err(Error::Structure(format!(
                "variant mismatch: element is {}, algebra is {}",
                x.variant.as_str(),
                self.variant.as_str()
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &PBWElement, b: &PBWElement) -> Result<PBWElement> {
        self.check_variant(a)?;
        self.check_variant(b)?;
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            let e = terms.entry(*m).or_insert_with(PadicScalar::zero);
            *e = &*e + c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Ok(PBWElement {
            terms,
            variant: self.variant,
        })
    }

    pub fn neg(&self, a: &PBWElement) -> PBWElement {
        PBWElement {
            terms: a.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            variant: a.variant,
        }
    }

    pub fn sub(&self, a: &PBWElement, b: &PBWElement) -> Result<PBWElement> {
        self.add(a, &self.neg(b))
    }

    pub fn scalar_mul(&self, s: &PadicScalar, a: &PBWElement) -> PBWElement {
        if s.is_zero() {
            return self.zero();
        }
        PBWElement {
            terms: a.terms.iter().map(|(m, c)| (*m, s * c)).collect(),
            variant: a.variant,
        }
    }

    /// Normal form of F^c E.
    fn fz_e(&self, c: u32) -> Vec<(PBWMonomial, PadicScalar)> {
        if let Some(v) = self.fz_cache.borrow().get(&c) {
            return v.clone();
        }
        let result = if c == 0 {
            vec![(PBWMonomial::new(1, 0, 0), PadicScalar::one())]
        } else {
            // F^c E = (F^{c-1} E) F - F^{c-1} comm
            //       = (F^{c-1} E) F - sum_j c_j q^{ke j (c-1)} K^j F^{c-1}
            let prev = self.fz_e(c - 1);
            let mut acc: BTreeMap<PBWMonomial, PadicScalar> = BTreeMap::new();
            for (m, co) in prev {
                let m2 = PBWMonomial::new(m.n_e, m.n_k, m.n_f + 1);
                let e = acc.entry(m2).or_insert_with(PadicScalar::zero);
                *e = &*e + &co;
            }
            for (j, cj) in self.comm_terms() {
                let factor = self.qp.q_pow(self.ke() * j * (c as i64 - 1));
                let m = PBWMonomial::new(0, j, c - 1);
                let e = acc.entry(m).or_insert_with(PadicScalar::zero);
                *e = &*e - &(&cj * &factor);
            }
            acc.retain(|_, v| !v.is_zero());
            acc.into_iter().collect()
        };
        self.fz_cache.borrow_mut().insert(c, result.clone());
        result
    }

    /// Right-multiply one PBW monomial by a generator, in normal form.
    fn mul_mono_gen(&self, m: PBWMonomial, g: Gen) -> Result<Vec<(PBWMonomial, PadicScalar)>> {
        if !self.variant.allows(g) {
            return Err(Error::Structure(format!(
                "generator {g:?} is not part of the {} algebra",
                self.variant.as_str()
            )));
        }
        let ke = self.ke();
        Ok(match g {
            Gen::F => vec![(PBWMonomial::new(m.n_e, m.n_k, m.n_f + 1), PadicScalar::one())],
            Gen::K => vec![(
                PBWMonomial::new(m.n_e, m.n_k + 1, m.n_f),
                self.qp.q_pow(ke * m.n_f as i64),
            )],
            Gen::KInv => vec![(
                PBWMonomial::new(m.n_e, m.n_k - 1, m.n_f),
                self.qp.q_pow(-ke * m.n_f as i64),
            )],
            Gen::E => {
                // E^a K^b (F^c E) with K^b E^{a'} = q^{ke b a'} E^{a'} K^b
                let mut out = Vec::new();
                for (t, co) in self.fz_e(m.n_f) {
                    let factor = self.qp.q_pow(ke * m.n_k * t.n_e as i64);
                    out.push((
                        PBWMonomial::new(m.n_e + t.n_e, m.n_k + t.n_k, t.n_f),
                        &co * &factor,
                    ));
                }
                out
            }
        })
    }

    fn mul_elem_gen(&self, x: &PBWElement, g: Gen) -> Result<PBWElement> {
        let mut terms: BTreeMap<PBWMonomial, PadicScalar> = BTreeMap::new();
        for (m, c) in &x.terms {
            for (m2, c2) in self.mul_mono_gen(*m, g)? {
                let e = terms.entry(m2).or_insert_with(PadicScalar::zero);
                *e = &*e + &(c * &c2);
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Ok(PBWElement {
            terms,
            variant: self.variant,
        })
    }

    pub fn mul_monomials(&self, m1: PBWMonomial, m2: PBWMonomial) -> Result<PBWElement> {
        let mut acc = self.monomial_elem(m1, PadicScalar::one());
        for _ in 0..m2.n_e {
            acc = self.mul_elem_gen(&acc, Gen::E)?;
        }
        let (kg, reps) = if m2.n_k >= 0 {
            (Gen::K, m2.n_k)
        } else {
            (Gen::KInv, -m2.n_k)
        };
        for _ in 0..reps {
            acc = self.mul_elem_gen(&acc, kg)?;
        }
        for _ in 0..m2.n_f {
            acc = self.mul_elem_gen(&acc, Gen::F)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, a: &PBWElement, b: &PBWElement) -> Result<PBWElement> {
        self.check_variant(a)?;
        self.check_variant(b)?;
        let mut out = self.zero();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let prod = self.mul_monomials(*m1, *m2)?;
                out = self.add(&out, &self.scalar_mul(&(c1 * c2), &prod))?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &PBWElement, n: u32) -> Result<PBWElement> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Normal form of a word in the generators.
    pub fn normalize(&self, word: &[Gen]) -> Result<PBWElement> {
        let mut acc = self.one();
        for g in word {
            acc = self.mul_elem_gen(&acc, *g)?;
        }
        Ok(acc)
    }

    // ------------------------------------------------------------------
    // Hopf structure
    // ------------------------------------------------------------------

    pub fn tensor2_zero(&self) -> Tensor2 {
        Tensor2 {
            terms: BTreeMap::new(),
            variant: self.variant,
        }
    }

    pub fn tensor2_one(&self) -> Tensor2 {
        let mut t = self.tensor2_zero();
        t.terms
            .insert((PBWMonomial::ONE, PBWMonomial::ONE), PadicScalar::one());
        t
    }

    pub fn tensor2_add(&self, a: &Tensor2, b: &Tensor2) -> Tensor2 {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            let e = terms.entry(*m).or_insert_with(PadicScalar::zero);
            *e = &*e + c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Tensor2 {
            terms,
            variant: self.variant,
        }
    }

    pub fn tensor2_scalar_mul(&self, s: &PadicScalar, a: &Tensor2) -> Tensor2 {
        if s.is_zero() {
            return self.tensor2_zero();
        }
        Tensor2 {
            terms: a.terms.iter().map(|(m, c)| (*m, s * c)).collect(),
            variant: a.variant,
        }
    }

    pub fn tensor2_mul(&self, a: &Tensor2, b: &Tensor2) -> Result<Tensor2> {
        let mut out = self.tensor2_zero();
        for ((l1, r1), c1) in &a.terms {
            for ((l2, r2), c2) in &b.terms {
                let left = self.mul_monomials(*l1, *l2)?;
                let right = self.mul_monomials(*r1, *r2)?;
                let c = c1 * c2;
                for (lm, lc) in &left.terms {
                    for (rm, rc) in &right.terms {
                        let coeff = &(&c * lc) * rc;
                        let e = out
                            .terms
                            .entry((*lm, *rm))
                            .or_insert_with(PadicScalar::zero);
                        *e = &*e + &coeff;
                    }
                }
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn tensor2_from_legs(&self, l: &PBWElement, r: &PBWElement) -> Tensor2 {
        let mut out = self.tensor2_zero();
        for (lm, lc) in &l.terms {
            for (rm, rc) in &r.terms {
                out.terms.insert((*lm, *rm), lc * rc);
            }
        }
        out
    }

    /// Coproduct of a single generator.
    fn coproduct_gen(&self, g: Gen) -> Result<Tensor2> {
        let e = PBWMonomial::new(1, 0, 0);
        let f = PBWMonomial::new(0, 0, 1);
        let k = PBWMonomial::new(0, 1, 0);
        let ki = PBWMonomial::new(0, -1, 0);
        let one = PBWMonomial::ONE;
        if !self.variant.allows(g) {
            return Err(Error::Structure(format!(
                "generator {g:?} is not part of the {} algebra",
                self.variant.as_str()
            )));
        }
        let mut t = self.tensor2_zero();
        let breve = self.variant == Variant::Breve;
        match g {
            Gen::K => {
                t.terms.insert((k, k), PadicScalar::one());
            }
            Gen::KInv => {
                t.terms.insert((ki, ki), PadicScalar::one());
            }
            Gen::E => {
                // standard: E (x) K + 1 (x) E; breve: E (x) K + K^{-1} (x) E
                t.terms.insert((e, k), PadicScalar::one());
                t.terms
                    .insert((if breve { ki } else { one }, e), PadicScalar::one());
            }
            Gen::F => {
                // standard: F (x) 1 + K^{-1} (x) F; breve: F (x) K + K^{-1} (x) F
                t.terms
                    .insert((f, if breve { k } else { one }), PadicScalar::one());
                t.terms.insert((ki, f), PadicScalar::one());
            }
        }
        Ok(t)
    }

    pub fn coproduct(&self, x: &PBWElement) -> Result<Tensor2> {
        self.check_variant(x)?;
        let de = self.coproduct_gen(Gen::E).ok();
        let df = self.coproduct_gen(Gen::F).ok();
        let mut out = self.tensor2_zero();
        for (m, c) in &x.terms {
            let mut t = self.tensor2_one();
            for _ in 0..m.n_e {
                t = self.tensor2_mul(&t, de.as_ref().expect("E allowed"))?;
            }
            let dk = if m.n_k >= 0 {
                self.coproduct_gen(Gen::K)?
            } else {
                self.coproduct_gen(Gen::KInv)?
            };
            for _ in 0..m.n_k.abs() {
                t = self.tensor2_mul(&t, &dk)?;
            }
            for _ in 0..m.n_f {
                t = self.tensor2_mul(&t, df.as_ref().expect("F allowed"))?;
            }
            out = self.tensor2_add(&out, &self.tensor2_scalar_mul(c, &t));
        }
        Ok(out)
    }

    pub fn counit(&self, x: &PBWElement) -> Result<PadicScalar> {
        self.check_variant(x)?;
        let mut s = PadicScalar::zero();
        for (m, c) in &x.terms {
            if m.n_e == 0 && m.n_f == 0 {
                s = &s + c;
            }
        }
        Ok(s)
    }

    /// Antipode of a single generator.
    fn antipode_gen(&self, g: Gen) -> Result<PBWElement> {
        if !self.variant.allows(g) {
            return Err(Error::Structure(format!(
                "generator {g:?} is not part of the {} algebra",
                self.variant.as_str()
            )));
        }
        Ok(match (self.variant, g) {
            (_, Gen::K) => self.monomial_elem(PBWMonomial::new(0, -1, 0), PadicScalar::one()),
            (_, Gen::KInv) => self.monomial_elem(PBWMonomial::new(0, 1, 0), PadicScalar::one()),
            (Variant::Breve, Gen::E) => {
                // S(E) = -q E
                self.monomial_elem(PBWMonomial::new(1, 0, 0), -&self.qp.q_pow(1))
            }
            (Variant::Breve, Gen::F) => {
                // S(F) = -q^{-1} F
                self.monomial_elem(PBWMonomial::new(0, 0, 1), -&self.qp.q_pow(-1))
            }
            (_, Gen::E) => {
                // S(E) = -E K^{-1}
                self.monomial_elem(PBWMonomial::new(1, -1, 0), -&PadicScalar::one())
            }
            (_, Gen::F) => {
                // S(F) = -K F
                self.monomial_elem(PBWMonomial::new(0, 1, 1), -&PadicScalar::one())
            }
        })
    }

    pub fn antipode(&self, x: &PBWElement) -> Result<PBWElement> {
        self.check_variant(x)?;
        let mut out = self.zero();
        for (m, c) in &x.terms {
            // anti-homomorphism: S(E^a K^b F^c) = S(F)^c S(K)^b S(E)^a
            let mut t = if m.n_f > 0 {
                self.pow(&self.antipode_gen(Gen::F)?, m.n_f)?
            } else {
                self.one()
            };
            let sk = if m.n_k >= 0 {
                self.antipode_gen(Gen::K)?
            } else {
                self.antipode_gen(Gen::KInv)?
            };
            for _ in 0..m.n_k.abs() {
                t = self.mul(&t, &sk)?;
            }
            if m.n_e > 0 {
                t = self.mul(&t, &self.pow(&self.antipode_gen(Gen::E)?, m.n_e)?)?;
            }
            out = self.add(&out, &self.scalar_mul(c, &t))?;
        }
        Ok(out)
    }

    /// (Delta (x) id) Delta and (id (x) Delta) Delta.
    pub fn coproduct3_left(&self, x: &PBWElement) -> Result<Tensor3> {
        let d = self.coproduct(x)?;
        let mut out = Tensor3 {
            terms: BTreeMap::new(),
            variant: self.variant,
        };
        for ((l, r), c) in &d.terms {
            let dl = self.coproduct(&self.monomial_elem(*l, PadicScalar::one()))?;
            for ((a, b), c2) in &dl.terms {
                let e = out
                    .terms
                    .entry((*a, *b, *r))
                    .or_insert_with(PadicScalar::zero);
                *e = &*e + &(c * c2);
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn coproduct3_right(&self, x: &PBWElement) -> Result<Tensor3> {
        let d = self.coproduct(x)?;
        let mut out = Tensor3 {
            terms: BTreeMap::new(),
            variant: self.variant,
        };
        for ((l, r), c) in &d.terms {
            let dr = self.coproduct(&self.monomial_elem(*r, PadicScalar::one()))?;
            for ((a, b), c2) in &dr.terms {
                let e = out
                    .terms
                    .entry((*l, *a, *b))
                    .or_insert_with(PadicScalar::zero);
                *e = &*e + &(c * c2);
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// m (S (x) id) Delta and m (id (x) S) Delta, for the antipode axiom.
    pub fn antipode_convolution(&self, x: &PBWElement, s_on_left: bool) -> Result<PBWElement> {
        let d = self.coproduct(x)?;
        let mut out = self.zero();
        for ((l, r), c) in &d.terms {
            let le = self.monomial_elem(*l, PadicScalar::one());
            let re = self.monomial_elem(*r, PadicScalar::one());
            let prod = if s_on_left {
                self.mul(&self.antipode(&le)?, &re)?
            } else {
                self.mul(&le, &self.antipode(&re)?)?
            };
            out = self.add(&out, &self.scalar_mul(c, &prod))?;
        }
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Norms
    // ------------------------------------------------------------------

    fn term_weight(&self, m: &PBWMonomial, rs: RadiusSpec) -> PPower {
        PPower::Pow(rs.e_e * m.n_e as i64 + rs.e_f * m.n_f as i64)
    }

    /// nu_R(x) = max |a| R_E^{nE} R_F^{nF}.
    pub fn nu_norm(&self, x: &PBWElement, rs: RadiusSpec) -> PPower {
        x.terms
            .iter()
            .map(|(m, c)| self.qp.norm(c) * self.term_weight(m, rs))
            .max()
            .unwrap_or(PPower::Zero)
    }

    /// nu'_R(x) = max |a| |[nE]_q!| |[nF]_q!| R_E^{nE} R_F^{nF}.
    pub fn nu_prime_norm(&self, x: &PBWElement, rs: RadiusSpec) -> Result<PPower> {
        let mut best = PPower::Zero;
        for (m, c) in &x.terms {
            let fe = q_factorial(m.n_e, &self.qp);
            let ff = q_factorial(m.n_f, &self.qp);
            let n = self.qp.norm(c)
                * self.qp.norm(&fe)
                * self.qp.norm(&ff)
                * self.term_weight(m, rs);
            best = best.max(n);
        }
        Ok(best)
    }

    pub fn tensor2_nu_norm(&self, t: &Tensor2, rs: RadiusSpec) -> PPower {
        t.terms
            .iter()
            .map(|((l, r), c)| {
                self.qp.norm(c) * self.term_weight(l, rs) * self.term_weight(r, rs)
            })
            .max()
            .unwrap_or(PPower::Zero)
    }

    // ------------------------------------------------------------------
    // JSON
    // ------------------------------------------------------------------

    pub fn element_to_json(&self, x: &PBWElement) -> serde_json::Value {
        let terms: Vec<_> = x
            .terms
            .iter()
            .map(|(m, c)| json!({"nE": m.n_e, "nK": m.n_k, "nF": m.n_f, "coeff": c}))
            .collect();
        json!({"variant": x.variant.as_str(), "terms": terms})
    }

    pub fn element_from_json(&self, v: &serde_json::Value) -> Result<PBWElement> {
        let variant = Variant::from_str_tag(
            v.get("variant")
                .and_then(|s| s.as_str())
                .ok_or_else(|| Error::Structure("element JSON needs a variant".into()))?,
        )?;
        if variant != self.variant {
            return Err(Error::Structure("variant mismatch in JSON element".into()));
        }
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Structure("element JSON needs a terms array".into()))?;
        let mut out = self.zero();
        for t in terms {
            let n_e = t.get("nE").and_then(|x| x.as_u64()).ok_or_else(|| {
                Error::Structure("term needs a nonnegative nE".into())
            })? as u32;
            let n_k = t
                .get("nK")
                .and_then(|x| x.as_i64())
                .ok_or_else(|| Error::Structure("term needs an integer nK".into()))?;
            let n_f = t.get("nF").and_then(|x| x.as_u64()).ok_or_else(|| {
                Error::Structure("term needs a nonnegative nF".into())
            })? as u32;
            let coeff: PadicScalar = t
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Structure("term needs a coeff string".into()))?
                .parse()?;
            out = self.add(&out, &self.monomial_elem(PBWMonomial::new(n_e, n_k, n_f), coeff))?;
        }
        Ok(out)
    }
}

// ----------------------------------------------------------------------
// phi and theta_alpha
// ----------------------------------------------------------------------

/// The embedding U_q(sl2) -> breve algebra: E -> EK, F -> K^{-1}F, K -> K^2.
pub fn phi(src: &UqAlgebra, dst: &UqAlgebra, x: &PBWElement) -> Result<PBWElement> {
    if src.variant != Variant::Standard || dst.variant != Variant::Breve {
        return Err(Error::Structure(
            "phi maps the standard algebra into the breve algebra".into(),
        ));
    }
    src.check_variant(x)?;
    let mut out = dst.zero();
    for (m, c) in &x.terms {
        let mut word = Vec::new();
        for _ in 0..m.n_e {
            word.push(Gen::E);
            word.push(Gen::K);
        }
        let kg = if m.n_k >= 0 { Gen::K } else { Gen::KInv };
        for _ in 0..(2 * m.n_k.abs()) {
            word.push(kg);
        }
        for _ in 0..m.n_f {
            word.push(Gen::KInv);
            word.push(Gen::F);
        }
        let img = dst.normalize(&word)?;
        out = dst.add(&out, &dst.scalar_mul(c, &img))?;
    }
    Ok(out)
}

/// theta_alpha: E -> alpha E, F -> alpha^{-1} F, K -> K.
pub fn theta_alpha(alg: &UqAlgebra, x: &PBWElement, alpha: &PadicScalar) -> Result<PBWElement> {
    alg.check_variant(x)?;
    let alpha_inv = alpha
        .inv()
        .map_err(|_| Error::Domain("theta_alpha requires alpha != 0".into()))?;
    let mut out = alg.zero();
    for (m, c) in &x.terms {
        let factor = &alpha.pow(m.n_e as i64).expect("alpha != 0")
            * &alpha_inv.pow(m.n_f as i64).expect("alpha != 0");
        out = alg.add(&out, &alg.monomial_elem(*m, &factor * c))?;
    }
    Ok(out)
}

// ----------------------------------------------------------------------
// Second construction: U_q(b_-)_{R_K, R_F} { E/R_E, alpha_1, delta }
// ----------------------------------------------------------------------

pub type BorelMinusTate = SkewSeriesAlgebra<LaurentAlgebra>;
/// Element of the Borel-minus half (series in F over U_q(h)).
pub type MidElem = SkewElem<LaurentAlgebra>;
/// Element of the full tower (series in E over the Borel-minus half).
pub type SecondElem = SkewElem<BorelMinusTate>;

/// The tower engine: F over U_q(h), then E over the Borel-minus half,
/// with alpha_1(K) = q^{-2} K, alpha_1(F) = F and
/// delta(c(K) F^n) = alpha_1(c)(K) s_n(K) F^{n-1},
/// s_n(K) = sum_{i<n} (q^{2i} K - q^{-2i} K^{-1})/(q - q^{-1}).
pub struct SecondConstruction {
    pub qp: QParams,
    pub e_k: i64,
    pub e_f: i64,
    pub e_e: i64,
    pub mid: BorelMinusTate,
    pub top: SkewSeriesAlgebra<BorelMinusTate>,
}

fn laurent_substitute(qp: &QParams, step: i64, e: &LaurentPoly) -> LaurentPoly {
    // K^l -> q^{step * l} K^l
    LaurentPoly {
        terms: e
            .terms
            .iter()
            .map(|(l, c)| (*l, &qp.q_pow(step * l) * c))
            .collect(),
    }
}

impl SecondConstruction {
    pub fn new(qp: QParams, e_k: i64, e_f: i64, e_e: i64) -> Result<Self> {
        let w = qp
            .q_minus_q_inv()
            .inv()
            .expect("q - q^{-1} != 0");
        let w_norm = qp.norm(&w);
        // hypothesis |1/(q - q^{-1})| R_K <= R_F
        if w_norm * PPower::Pow(e_k) > PPower::Pow(e_f) {
            return Err(Error::Config(format!(
                "radius hypothesis violated: |1/(q-q^{{-1}})| p^{e_k} > p^{e_f}"
            )));
        }
        let base = LaurentAlgebra::new(qp.clone(), e_k);
        // F K = q^2 K F
        let alpha0: Arc<dyn Fn(&LaurentAlgebra, &LaurentPoly) -> LaurentPoly + Send + Sync> = {
            let qp = qp.clone();
            Arc::new(move |_b, e| laurent_substitute(&qp, 2, e))
        };
        let ore0 = OreData::new(
            alpha0,
            Arc::new(|b: &LaurentAlgebra, _e: &LaurentPoly| b.zero()),
            PPower::ONE,
            PPower::Zero,
            true,
        );
        let mid = SkewSeriesAlgebra::new(base, ore0, e_f);

        // alpha_1 maps K -> q^{-2} K coefficient-wise, fixing F
        let alpha1: Arc<
            dyn Fn(&BorelMinusTate, &MidElem) -> MidElem + Send + Sync,
        > = {
            let qp = qp.clone();
            Arc::new(move |b: &BorelMinusTate, e: &MidElem| {
                b.from_coeffs(
                    e.coeffs
                        .iter()
                        .map(|(n, c)| (*n, laurent_substitute(&qp, -2, c))),
                )
            })
        };
        let delta1: Arc<
            dyn Fn(&BorelMinusTate, &MidElem) -> MidElem + Send + Sync,
        > = {
            let qp = qp.clone();
            let w = w.clone();
            Arc::new(move |b: &BorelMinusTate, e: &MidElem| {
                let mut out = b.from_coeffs([]);
                for (n, c) in &e.coeffs {
                    if *n == 0 {
                        continue;
                    }
                    // s_n(K)
                    let mut s = b.base.zero();
                    for i in 0..*n {
                        let hi = LaurentPoly::monomial(1, &w * &qp.q_pow(2 * i as i64));
                        let lo = LaurentPoly::monomial(-1, -&(&w * &qp.q_pow(-2 * (i as i64))));
                        s = b.base.add(&s, &b.base.add(&hi, &lo));
                    }
                    let coeff = b.base.mul(&laurent_substitute(&qp, -2, c), &s);
                    out = b
                        .add(&out, &b.monomial(n - 1, coeff))
                        .expect("same radius");
                }
                out
            })
        };
        let delta_bound = w_norm * PPower::Pow(e_k - e_f);
        let ore1 = OreData::new(alpha1, delta1, PPower::ONE, delta_bound, true);
        let top = SkewSeriesAlgebra::new(mid.clone(), ore1, e_e);
        Ok(SecondConstruction {
            qp,
            e_k,
            e_f,
            e_e,
            mid,
            top,
        })
    }

    /// E^a K^b F^c as a tower element.
    pub fn embed_monomial(&self, m: PBWMonomial) -> Result<SecondElem> {
        let kb = self.mid.base.k_pow(m.n_k);
        let mid_elem = self.mid.monomial(m.n_f, kb);
        let mut acc = self.top.embed(mid_elem);
        let e = self.top.var();
        for _ in 0..m.n_e {
            acc = self.top.skew_multiply(&e, &acc)?;
        }
        Ok(acc)
    }

    pub fn embed(&self, x: &PBWElement) -> Result<SecondElem> {
        if x.variant != Variant::Standard {
            return Err(Error::Structure(
                "the second construction realizes the standard algebra".into(),
            ));
        }
        let mut out = self.top.from_coeffs([]);
        for (m, c) in &x.terms {
            let t = self.top.scalar_times(c, &self.embed_monomial(*m)?);
            out = self.top.add(&out, &t)?;
        }
        Ok(out)
    }

    pub fn mul(&self, a: &SecondElem, b: &SecondElem) -> Result<SecondElem> {
        self.top.skew_multiply(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qp() -> QParams {
        QParams::default_params()
    }

    fn std_alg() -> UqAlgebra {
        UqAlgebra::new(qp(), Variant::Standard)
    }

    fn breve_alg() -> UqAlgebra {
        UqAlgebra::new(qp(), Variant::Breve)
    }

    fn w_inv(qp: &QParams) -> PadicScalar {
        qp.q_minus_q_inv().inv().unwrap()
    }

    #[test]
    fn fe_rewrites_to_ef_minus_commutator() {
        let alg = std_alg();
        let fe = alg.normalize(&[Gen::F, Gen::E]).unwrap();
        let w = w_inv(&alg.qp);
        let mut expected = alg.monomial_elem(PBWMonomial::new(1, 0, 1), PadicScalar::one());
        expected = alg
            .add(&expected, &alg.monomial_elem(PBWMonomial::new(0, 1, 0), -&w))
            .unwrap();
        expected = alg
            .add(&expected, &alg.monomial_elem(PBWMonomial::new(0, -1, 0), w))
            .unwrap();
        assert_eq!(fe, expected);
    }

    #[test]
    fn k_times_k_inverse_is_one() {
        let alg = std_alg();
        assert_eq!(alg.normalize(&[Gen::K, Gen::KInv]).unwrap(), alg.one());
    }

    #[test]
    fn ke_reorders_with_q_squared() {
        let alg = std_alg();
        let ke = alg.normalize(&[Gen::K, Gen::E]).unwrap();
        let expected = alg.monomial_elem(PBWMonomial::new(1, 1, 0), alg.qp.q_pow(2));
        assert_eq!(ke, expected);
        // breve: KE = q EK
        let b = breve_alg();
        let ke = b.normalize(&[Gen::K, Gen::E]).unwrap();
        assert_eq!(
            ke,
            b.monomial_elem(PBWMonomial::new(1, 1, 0), b.qp.q_pow(1))
        );
    }

    #[test]
    fn breve_fe_uses_k_squared_commutator() {
        let b = breve_alg();
        let fe = b.normalize(&[Gen::F, Gen::E]).unwrap();
        let w = w_inv(&b.qp);
        let mut expected = b.monomial_elem(PBWMonomial::new(1, 0, 1), PadicScalar::one());
        expected = b
            .add(&expected, &b.monomial_elem(PBWMonomial::new(0, 2, 0), -&w))
            .unwrap();
        expected = b
            .add(&expected, &b.monomial_elem(PBWMonomial::new(0, -2, 0), w))
            .unwrap();
        assert_eq!(fe, expected);
    }

    #[test]
    fn normalize_is_associativity_compatible() {
        let alg = std_alg();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let gens = [Gen::E, Gen::F, Gen::K, Gen::KInv];
        for _ in 0..30 {
            let len = 2 + (rng.next_u32() % 5) as usize;
            let word: Vec<Gen> = (0..len)
                .map(|_| gens[(rng.next_u32() % 4) as usize])
                .collect();
            let cut1 = 1 + (rng.next_u32() as usize) % (len - 1);
            let a = alg.normalize(&word[..cut1]).unwrap();
            let b = alg.normalize(&word[cut1..]).unwrap();
            assert_eq!(alg.mul(&a, &b).unwrap(), alg.normalize(&word).unwrap());
        }
    }

    #[test]
    fn borel_variants_reject_forbidden_generators() {
        let bm = UqAlgebra::new(qp(), Variant::BorelMinus);
        assert!(bm.normalize(&[Gen::E]).is_err());
        assert!(bm.normalize(&[Gen::K, Gen::F]).is_ok());
        let bp = UqAlgebra::new(qp(), Variant::BorelPlus);
        assert!(bp.normalize(&[Gen::F]).is_err());
        assert!(bp.normalize(&[Gen::E, Gen::K]).is_ok());
    }

    #[test]
    fn coproduct_counit_antipode_on_generators() {
        let alg = std_alg();
        let k = alg.gen_elem(Gen::K).unwrap();
        let dk = alg.coproduct(&k).unwrap();
        let km = PBWMonomial::new(0, 1, 0);
        assert_eq!(dk.terms.len(), 1);
        assert_eq!(dk.terms.get(&(km, km)), Some(&PadicScalar::one()));
        // S(K) = K^{-1}, S(S(K)) = K
        let sk = alg.antipode(&k).unwrap();
        assert_eq!(
            sk,
            alg.monomial_elem(PBWMonomial::new(0, -1, 0), PadicScalar::one())
        );
        assert_eq!(alg.antipode(&sk).unwrap(), k);
        assert_eq!(alg.counit(&k).unwrap(), PadicScalar::one());
        assert_eq!(
            alg.counit(&alg.gen_elem(Gen::E).unwrap()).unwrap(),
            PadicScalar::zero()
        );
    }

    fn small_monomials() -> Vec<PBWMonomial> {
        let mut v = Vec::new();
        for a in 0..3u32 {
            for b in -2..=2i64 {
                for c in 0..3u32 {
                    if a + c + b.unsigned_abs() as u32 <= 4 {
                        v.push(PBWMonomial::new(a, b, c));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn hopf_axioms_on_small_monomials() {
        for alg in [std_alg(), breve_alg()] {
            for m in small_monomials() {
                let x = alg.monomial_elem(m, PadicScalar::one());
                // coassociativity
                assert_eq!(
                    alg.coproduct3_left(&x).unwrap(),
                    alg.coproduct3_right(&x).unwrap(),
                    "coassociativity failed at {m:?} in {:?}",
                    alg.variant
                );
                // counit axiom
                let d = alg.coproduct(&x).unwrap();
                let mut left = alg.zero();
                let mut right = alg.zero();
                for ((l, r), c) in &d.terms {
                    let le = alg.monomial_elem(*l, PadicScalar::one());
                    let re = alg.monomial_elem(*r, PadicScalar::one());
                    left = alg
                        .add(&left, &alg.scalar_mul(&(c * &alg.counit(&le).unwrap()), &re))
                        .unwrap();
                    right = alg
                        .add(&right, &alg.scalar_mul(&(c * &alg.counit(&re).unwrap()), &le))
                        .unwrap();
                }
                assert_eq!(left, x);
                assert_eq!(right, x);
                // antipode axiom
                let eps = alg.counit(&x).unwrap();
                let expected = alg.scalar_mul(&eps, &alg.one());
                assert_eq!(
                    alg.antipode_convolution(&x, true).unwrap(),
                    expected,
                    "antipode axiom (left) failed at {m:?} in {:?}",
                    alg.variant
                );
                assert_eq!(alg.antipode_convolution(&x, false).unwrap(), expected);
            }
        }
    }

    #[test]
    fn antipode_convolution_of_ef_vanishes() {
        let alg = std_alg();
        let ef = alg.normalize(&[Gen::E, Gen::F]).unwrap();
        assert_eq!(alg.counit(&ef).unwrap(), PadicScalar::zero());
        assert!(alg.antipode_convolution(&ef, true).unwrap().is_zero());
    }

    #[test]
    fn norm_examples() {
        let alg = std_alg();
        let rs = RadiusSpec { e_e: 1, e_f: 2 };
        let e = alg.gen_elem(Gen::E).unwrap();
        assert_eq!(alg.nu_norm(&e, rs), PPower::Pow(1));
        let k5 = alg.monomial_elem(PBWMonomial::new(0, 5, 0), PadicScalar::one());
        assert_eq!(alg.nu_norm(&k5, rs), PPower::ONE);
        // nu'(E^n) = |[n]_q!| R_E^n
        for n in 0..6u32 {
            let en = alg.monomial_elem(PBWMonomial::new(n, 0, 0), PadicScalar::one());
            let expected =
                alg.qp.norm(&q_factorial(n, &alg.qp)) * PPower::Pow(n as i64);
            assert_eq!(alg.nu_prime_norm(&en, rs).unwrap(), expected);
        }
    }

    #[test]
    fn hopf_maps_are_norm_bounded() {
        let alg = std_alg();
        let rs = RadiusSpec { e_e: 1, e_f: 1 };
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let gens = [Gen::E, Gen::F, Gen::K, Gen::KInv];
        for _ in 0..25 {
            let len = 1 + (rng.next_u32() % 4) as usize;
            let word: Vec<Gen> = (0..len)
                .map(|_| gens[(rng.next_u32() % 4) as usize])
                .collect();
            let x = alg.normalize(&word).unwrap();
            let nx = alg.nu_norm(&x, rs);
            assert!(alg.tensor2_nu_norm(&alg.coproduct(&x).unwrap(), rs) <= nx);
            assert!(alg.nu_norm(&alg.antipode(&x).unwrap(), rs) <= nx);
            assert!(alg.qp.norm(&alg.counit(&x).unwrap()) <= nx);
        }
    }

    #[test]
    fn nu_norm_submultiplicative_and_multiplicative_on_borel() {
        let alg = std_alg();
        let rs = RadiusSpec { e_e: 1, e_f: 1 };
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let gens = [Gen::E, Gen::F, Gen::K, Gen::KInv];
        for _ in 0..25 {
            let mk = |rng: &mut ChaCha8Rng| {
                let len = 1 + (rng.next_u32() % 4) as usize;
                let word: Vec<Gen> = (0..len)
                    .map(|_| gens[(rng.next_u32() % 4) as usize])
                    .collect();
                alg.normalize(&word).unwrap()
            };
            let x = mk(&mut rng);
            let y = mk(&mut rng);
            assert!(
                alg.nu_norm(&alg.mul(&x, &y).unwrap(), rs)
                    <= alg.nu_norm(&x, rs) * alg.nu_norm(&y, rs)
            );
        }
        // multiplicative on the Borel-minus half
        let bm = UqAlgebra::new(qp(), Variant::BorelMinus);
        let bgens = [Gen::F, Gen::K, Gen::KInv];
        for _ in 0..25 {
            let mk = |rng: &mut ChaCha8Rng| {
                let len = 1 + (rng.next_u32() % 4) as usize;
                let word: Vec<Gen> = (0..len)
                    .map(|_| bgens[(rng.next_u32() % 3) as usize])
                    .collect();
                bm.normalize(&word).unwrap()
            };
            let x = mk(&mut rng);
            let y = mk(&mut rng);
            assert_eq!(
                bm.nu_norm(&bm.mul(&x, &y).unwrap(), rs),
                bm.nu_norm(&x, rs) * bm.nu_norm(&y, rs)
            );
        }
    }

    #[test]
    fn phi_maps_generators_and_preserves_relations() {
        let s = std_alg();
        let b = breve_alg();
        let k = s.gen_elem(Gen::K).unwrap();
        assert_eq!(
            phi(&s, &b, &k).unwrap(),
            b.monomial_elem(PBWMonomial::new(0, 2, 0), PadicScalar::one())
        );
        // phi(EF - FE) = phi((K - K^{-1})/(q - q^{-1}))
        let ef = s.normalize(&[Gen::E, Gen::F]).unwrap();
        let fe = s.normalize(&[Gen::F, Gen::E]).unwrap();
        let lhs = phi(&s, &b, &s.sub(&ef, &fe).unwrap()).unwrap();
        let w = w_inv(&s.qp);
        let mut comm = s.monomial_elem(PBWMonomial::new(0, 1, 0), w.clone());
        comm = s
            .add(&comm, &s.monomial_elem(PBWMonomial::new(0, -1, 0), -&w))
            .unwrap();
        let rhs = phi(&s, &b, &comm).unwrap();
        assert_eq!(lhs, rhs);
        // phi is an algebra map on random pairs
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let gens = [Gen::E, Gen::F, Gen::K, Gen::KInv];
        for _ in 0..15 {
            let mk = |rng: &mut ChaCha8Rng| {
                let len = 1 + (rng.next_u32() % 3) as usize;
                let word: Vec<Gen> = (0..len)
                    .map(|_| gens[(rng.next_u32() % 4) as usize])
                    .collect();
                s.normalize(&word).unwrap()
            };
            let x = mk(&mut rng);
            let y = mk(&mut rng);
            let lhs = phi(&s, &b, &s.mul(&x, &y).unwrap()).unwrap();
            let rhs = b
                .mul(&phi(&s, &b, &x).unwrap(), &phi(&s, &b, &y).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn phi_is_injective_on_small_monomials() {
        let s = std_alg();
        let b = breve_alg();
        let mut seen = Vec::new();
        for m in small_monomials() {
            let img = phi(&s, &b, &s.monomial_elem(m, PadicScalar::one())).unwrap();
            // distinct monomials map to single distinct breve monomials
            assert_eq!(img.terms.len(), 1);
            let key = *img.terms.keys().next().unwrap();
            assert!(!seen.contains(&key), "phi collided at {m:?}");
            seen.push(key);
        }
    }

    #[test]
    fn theta_alpha_examples() {
        let alg = std_alg();
        let ef = alg.normalize(&[Gen::E, Gen::F]).unwrap();
        let a = PadicScalar::from_integer(3);
        assert_eq!(theta_alpha(&alg, &ef, &a).unwrap(), ef);
        let e = alg.gen_elem(Gen::E).unwrap();
        assert_eq!(
            theta_alpha(&alg, &e, &a).unwrap(),
            alg.scalar_mul(&a, &e)
        );
        assert!(theta_alpha(&alg, &e, &PadicScalar::zero()).is_err());
        // theta is an algebra endomorphism
        let fe = alg.normalize(&[Gen::F, Gen::E]).unwrap();
        let lhs = theta_alpha(&alg, &alg.mul(&fe, &ef).unwrap(), &a).unwrap();
        let rhs = alg
            .mul(
                &theta_alpha(&alg, &fe, &a).unwrap(),
                &theta_alpha(&alg, &ef, &a).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn second_construction_matches_normalize() {
        let qp = qp();
        // |1/(q - q^{-1})| = |36/1295|... v(q - q^{-1}) = v(1295/36) = 1
        // so |w| = p; need e_k + 1 <= e_f
        let sc = SecondConstruction::new(qp.clone(), 0, 1, 0).unwrap();
        let alg = std_alg();
        // E*F -> EF
        let e = alg.gen_elem(Gen::E).unwrap();
        let f = alg.gen_elem(Gen::F).unwrap();
        let ef = alg.mul(&e, &f).unwrap();
        let got = sc.mul(&sc.embed(&e).unwrap(), &sc.embed(&f).unwrap()).unwrap();
        assert_eq!(got, sc.embed(&ef).unwrap());
        // F*E matches the commutation relation
        let fe = alg.mul(&f, &e).unwrap();
        let got = sc.mul(&sc.embed(&f).unwrap(), &sc.embed(&e).unwrap()).unwrap();
        assert_eq!(got, sc.embed(&fe).unwrap());
        // random monomial pairs
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..20 {
            let m1 = PBWMonomial::new(
                rng.next_u32() % 3,
                (rng.next_u32() % 5) as i64 - 2,
                rng.next_u32() % 3,
            );
            let m2 = PBWMonomial::new(
                rng.next_u32() % 3,
                (rng.next_u32() % 5) as i64 - 2,
                rng.next_u32() % 3,
            );
            let x = alg.monomial_elem(m1, PadicScalar::one());
            let y = alg.monomial_elem(m2, PadicScalar::one());
            let direct = sc.embed(&alg.mul(&x, &y).unwrap()).unwrap();
            let engine = sc.mul(&sc.embed(&x).unwrap(), &sc.embed(&y).unwrap()).unwrap();
            assert_eq!(engine.coeffs, direct.coeffs, "mismatch at {m1:?} * {m2:?}");
        }
    }

    #[test]
    fn second_construction_rejects_bad_radii() {
        // |w| R_K > R_F
        assert!(SecondConstruction::new(qp(), 0, 0, 0).is_err());
    }

    #[test]
    fn second_construction_ore_data_spot_checks() {
        let sc = SecondConstruction::new(qp(), 0, 1, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        sc.top.ore.spot_check(&sc.mid, &mut rng, 15).unwrap();
        sc.mid.ore.spot_check(&sc.mid.base, &mut rng, 15).unwrap();
    }

    #[test]
    fn json_round_trip() {
        let alg = std_alg();
        let x = alg.normalize(&[Gen::F, Gen::E, Gen::K]).unwrap();
        let v = alg.element_to_json(&x);
        assert_eq!(alg.element_from_json(&v).unwrap(), x);
    }
}
