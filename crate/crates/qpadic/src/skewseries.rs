//! Ore extensions A[x, alpha, delta] over abstract normed base algebras,
//! Gauss R-norms, finitely supported skew-series representatives with
//! precision floors, and residue reduction.
//!
//! Completions are never materialized: every element is a finite
//! representative together with a floor epsilon below which terms are
//! considered indistinguishable from zero.  Products use the one-step rule
//! x * a = alpha(a) x + delta(a) recursively.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use rand::RngCore;
use serde_json::json;

use crate::error::{Error, Result};
use crate::scalars::{PPower, PadicScalar, QParams};

/// Capability bundle for a normed L-algebra with solid, non-archimedean,
/// submultiplicative norm taking values in p^Z or 0.
pub trait NormedAlgebra: Clone + 'static {
    type Elem: Clone + PartialEq + Debug + 'static;

    fn qparams(&self) -> &QParams;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, e: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scalar_mul(&self, s: &PadicScalar, a: &Self::Elem) -> Self::Elem;
    fn norm(&self, e: &Self::Elem) -> PPower;

    /// Declared capability: the norm is multiplicative (not merely
    /// submultiplicative) on this instance.
    fn norm_is_multiplicative(&self) -> bool;

    /// Canonical representative of the residue class of `e` in
    /// A^0 / A^00.  Requires ||e|| <= 1.
    fn residue(&self, e: &Self::Elem) -> Result<Self::Elem>;

    /// A scalar lambda with |lambda| = 1 and ||e - lambda * 1|| < 1, when
    /// the residue of `e` is an invertible scalar.
    fn unit_scalar_part(&self, e: &Self::Elem) -> Option<PadicScalar>;

    /// A random element, used by spot-checks and norm-law sweeps.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn elem_to_json(&self, e: &Self::Elem) -> serde_json::Value;
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

fn sample_scalar(qp: &QParams, rng: &mut dyn RngCore) -> PadicScalar {
    // valuations spread over [-2, 3], unit part a small non-multiple of p
    let p = qp.prime() as i64;
    let v = (rng.next_u32() % 6) as i64 - 2;
    let mut unit = (rng.next_u32() % 40) as i64 - 20;
    if unit % p == 0 {
        unit += 1;
    }
    if unit == 0 {
        unit = 1;
    }
    &PadicScalar::from_integer(unit) * &qp.p_pow(v)
}

/// The ground field L itself: exact rationals with the p-adic norm.
#[derive(Clone, Debug)]
pub struct ScalarField {
    qp: QParams,
}

impl ScalarField {
    pub fn new(qp: QParams) -> Self {
        ScalarField { qp }
    }
}

impl NormedAlgebra for ScalarField {
    type Elem = PadicScalar;

    fn qparams(&self) -> &QParams {
        &self.qp
    }
    fn zero(&self) -> PadicScalar {
        PadicScalar::zero()
    }
    fn one(&self) -> PadicScalar {
        PadicScalar::one()
    }
    fn is_zero(&self, e: &PadicScalar) -> bool {
        e.is_zero()
    }
    fn add(&self, a: &PadicScalar, b: &PadicScalar) -> PadicScalar {
        a + b
    }
    fn neg(&self, a: &PadicScalar) -> PadicScalar {
        -a
    }
    fn mul(&self, a: &PadicScalar, b: &PadicScalar) -> PadicScalar {
        a * b
    }
    fn scalar_mul(&self, s: &PadicScalar, a: &PadicScalar) -> PadicScalar {
        s * a
    }
    fn norm(&self, e: &PadicScalar) -> PPower {
        self.qp.norm(e)
    }
    fn norm_is_multiplicative(&self) -> bool {
        true
    }
    fn residue(&self, e: &PadicScalar) -> Result<PadicScalar> {
        e.residue(self.qp.prime())
    }
    fn unit_scalar_part(&self, e: &PadicScalar) -> Option<PadicScalar> {
        (self.qp.norm(e) == PPower::ONE).then(|| e.clone())
    }
    fn sample(&self, rng: &mut dyn RngCore) -> PadicScalar {
        sample_scalar(&self.qp, rng)
    }
    fn elem_to_json(&self, e: &PadicScalar) -> serde_json::Value {
        serde_json::to_value(e).expect("scalar serializes")
    }
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<PadicScalar> {
        let s = v
            .as_str()
            .ok_or_else(|| Error::Structure("scalar JSON must be a string".into()))?;
        s.parse()
    }
}

/// Finitely supported Laurent polynomial in K, the Cartan algebra U_q(h)
/// at radius R_K = p^{radius_exp}.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LaurentPoly {
    pub terms: BTreeMap<i64, PadicScalar>,
}

impl LaurentPoly {
    pub fn monomial(deg: i64, coeff: PadicScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(deg, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: PadicScalar) -> Self {
        Self::monomial(0, c)
    }
}

/// U_q(h) = L[K, K^{-1}] with the norm max |f_n| R_K^n.
#[derive(Clone, Debug)]
pub struct LaurentAlgebra {
    qp: QParams,
    pub radius_exp: i64,
}

impl LaurentAlgebra {
    pub fn new(qp: QParams, radius_exp: i64) -> Self {
        LaurentAlgebra { qp, radius_exp }
    }

    pub fn k_pow(&self, deg: i64) -> LaurentPoly {
        LaurentPoly::monomial(deg, PadicScalar::one())
    }

    fn term_norm(&self, deg: i64, coeff: &PadicScalar) -> PPower {
        self.qp.norm(coeff) * PPower::Pow(self.radius_exp * deg)
    }
}

impl NormedAlgebra for LaurentAlgebra {
    type Elem = LaurentPoly;

    fn qparams(&self) -> &QParams {
        &self.qp
    }
    fn zero(&self) -> LaurentPoly {
        LaurentPoly::default()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::constant(PadicScalar::one())
    }
    fn is_zero(&self, e: &LaurentPoly) -> bool {
        e.terms.is_empty()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut terms = a.terms.clone();
        for (deg, c) in &b.terms {
            let entry = terms.entry(*deg).or_insert_with(PadicScalar::zero);
            *entry = &*entry + c;
            if entry.is_zero() {
                terms.remove(deg);
            }
        }
        LaurentPoly { terms }
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: a.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut out = self.zero();
        for (da, ca) in &a.terms {
            for (db, cb) in &b.terms {
                out = self.add(&out, &LaurentPoly::monomial(da + db, ca * cb));
            }
        }
        out
    }
    fn scalar_mul(&self, s: &PadicScalar, a: &LaurentPoly) -> LaurentPoly {
        if s.is_zero() {
            return self.zero();
        }
        LaurentPoly {
            terms: a.terms.iter().map(|(d, c)| (*d, s * c)).collect(),
        }
    }
    fn norm(&self, e: &LaurentPoly) -> PPower {
        e.terms
            .iter()
            .map(|(d, c)| self.term_norm(*d, c))
            .max()
            .unwrap_or(PPower::Zero)
    }
    fn norm_is_multiplicative(&self) -> bool {
        true
    }
    fn residue(&self, e: &LaurentPoly) -> Result<LaurentPoly> {
        if self.norm(e) > PPower::ONE {
            return Err(Error::Domain("residue of element with norm > 1".into()));
        }
        let p = self.qp.prime();
        let mut out = self.zero();
        for (deg, c) in &e.terms {
            if self.term_norm(*deg, c) < PPower::ONE {
                continue;
            }
            // scale the coefficient to norm 1, reduce, scale back
            let scale = self.qp.p_pow(-self.radius_exp * deg);
            let unit = c * &scale;
            let lift = unit.residue(p)?;
            let back = &lift * &scale.inv().expect("p-power is nonzero");
            out = self.add(&out, &LaurentPoly::monomial(*deg, back));
        }
        Ok(out)
    }
    fn unit_scalar_part(&self, e: &LaurentPoly) -> Option<PadicScalar> {
        // the residue must be an invertible scalar: the degree-0 coefficient
        // carries norm 1 and every other term norm < 1
        let mut lambda = None;
        for (deg, c) in &e.terms {
            let tn = self.term_norm(*deg, c);
            if *deg == 0 && tn == PPower::ONE {
                lambda = Some(c.clone());
            } else if tn >= PPower::ONE {
                return None;
            }
        }
        lambda
    }
    fn sample(&self, rng: &mut dyn RngCore) -> LaurentPoly {
        let nterms = 1 + (rng.next_u32() % 3);
        let mut out = self.zero();
        for _ in 0..nterms {
            let deg = (rng.next_u32() % 5) as i64 - 2;
            out = self.add(
                &out,
                &LaurentPoly::monomial(deg, sample_scalar(&self.qp, rng)),
            );
        }
        out
    }
    fn elem_to_json(&self, e: &LaurentPoly) -> serde_json::Value {
        let terms: Vec<_> = e
            .terms
            .iter()
            .map(|(d, c)| json!({"deg": d, "coeff": c}))
            .collect();
        json!({ "terms": terms })
    }
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<LaurentPoly> {
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Structure("Laurent JSON needs a terms array".into()))?;
        let mut out = self.zero();
        for t in terms {
            let deg = t
                .get("deg")
                .and_then(|d| d.as_i64())
                .ok_or_else(|| Error::Structure("term needs an integer deg".into()))?;
            let coeff: PadicScalar = t
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Structure("term needs a coeff string".into()))?
                .parse()?;
            out = self.add(&out, &LaurentPoly::monomial(deg, coeff));
        }
        Ok(out)
    }
}

/// The twisting data of an Ore extension: an endomorphism alpha, an
/// alpha-derivation delta, and declared operator-norm bounds for both.
/// The bounds are hypotheses that can be spot-checked, not proven.
pub struct OreData<A: NormedAlgebra> {
    alpha: Arc<dyn Fn(&A, &A::Elem) -> A::Elem + Send + Sync>,
    delta: Arc<dyn Fn(&A, &A::Elem) -> A::Elem + Send + Sync>,
    pub alpha_bound: PPower,
    pub delta_bound: PPower,
    pub alpha_is_isometry: bool,
}

impl<A: NormedAlgebra> Clone for OreData<A> {
    fn clone(&self) -> Self {
        OreData {
            alpha: Arc::clone(&self.alpha),
            delta: Arc::clone(&self.delta),
            alpha_bound: self.alpha_bound,
            delta_bound: self.delta_bound,
            alpha_is_isometry: self.alpha_is_isometry,
        }
    }
}

impl<A: NormedAlgebra> OreData<A> {
    pub fn new(
        alpha: Arc<dyn Fn(&A, &A::Elem) -> A::Elem + Send + Sync>,
        delta: Arc<dyn Fn(&A, &A::Elem) -> A::Elem + Send + Sync>,
        alpha_bound: PPower,
        delta_bound: PPower,
        alpha_is_isometry: bool,
    ) -> Self {
        OreData {
            alpha,
            delta,
            alpha_bound,
            delta_bound,
            alpha_is_isometry,
        }
    }

    /// alpha = id, delta = 0: the commutative-variable case.
    pub fn trivial() -> Self {
        OreData {
            alpha: Arc::new(|_base: &A, e: &A::Elem| e.clone()),
            delta: Arc::new(|base: &A, _e: &A::Elem| base.zero()),
            alpha_bound: PPower::ONE,
            delta_bound: PPower::Zero,
            alpha_is_isometry: true,
        }
    }

    pub fn alpha(&self, base: &A, e: &A::Elem) -> A::Elem {
        (self.alpha)(base, e)
    }

    pub fn delta(&self, base: &A, e: &A::Elem) -> A::Elem {
        (self.delta)(base, e)
    }

    /// Spot-check the alpha-derivation law delta(ab) = delta(a)b + alpha(a)delta(b)
    /// and the declared operator-norm bounds on random pairs.
    pub fn spot_check(&self, base: &A, rng: &mut dyn RngCore, rounds: usize) -> Result<()> {
        for _ in 0..rounds {
            let a = base.sample(rng);
            let b = base.sample(rng);
            let lhs = self.delta(base, &base.mul(&a, &b));
            let rhs = base.add(
                &base.mul(&self.delta(base, &a), &b),
                &base.mul(&self.alpha(base, &a), &self.delta(base, &b)),
            );
            if lhs != rhs {
                return Err(Error::Structure(
                    "delta violates the alpha-derivation law".into(),
                ));
            }
            if base.norm(&self.alpha(base, &a)) > self.alpha_bound * base.norm(&a) {
                return Err(Error::Structure("alpha exceeds its declared bound".into()));
            }
            if base.norm(&self.delta(base, &a)) > self.delta_bound * base.norm(&a) {
                return Err(Error::Structure("delta exceeds its declared bound".into()));
            }
        }
        Ok(())
    }
}

/// Finitely supported series in the Ore variable, tagged with its radius
/// exponent and a precision floor.  The element stands for its coset
/// modulo terms of Gauss norm <= floor (`None` = exact).
#[derive(Clone, Debug, PartialEq)]
pub struct SkewSeriesElement<E> {
    pub coeffs: BTreeMap<u32, E>,
    pub radius_exp: i64,
    pub precision_floor_exp: Option<i64>,
}

impl<E> SkewSeriesElement<E> {
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn floor(&self) -> PPower {
        match self.precision_floor_exp {
            Some(e) => PPower::Pow(e),
            None => PPower::Zero,
        }
    }
}

fn floor_exp(p: PPower) -> Option<i64> {
    p.exponent()
}

/// The Ore extension A[x, alpha, delta] carrying the Gauss R-norm with
/// R = p^{radius_exp}.
#[derive(Clone)]
pub struct SkewSeriesAlgebra<A: NormedAlgebra> {
    pub base: A,
    pub ore: OreData<A>,
    pub radius_exp: i64,
}

pub type SkewElem<A> = SkewSeriesElement<<A as NormedAlgebra>::Elem>;

impl<A: NormedAlgebra> SkewSeriesAlgebra<A> {
    pub fn new(base: A, ore: OreData<A>, radius_exp: i64) -> Self {
        SkewSeriesAlgebra {
            base,
            ore,
            radius_exp,
        }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, A::Elem)>>(&self, coeffs: I) -> SkewElem<A> {
        let mut map = BTreeMap::new();
        for (deg, c) in coeffs {
            if !self.base.is_zero(&c) {
                map.insert(deg, c);
            }
        }
        SkewSeriesElement {
            coeffs: map,
            radius_exp: self.radius_exp,
            precision_floor_exp: None,
        }
    }

    pub fn monomial(&self, deg: u32, coeff: A::Elem) -> SkewElem<A> {
        self.from_coeffs([(deg, coeff)])
    }

    /// The Ore variable x.
    pub fn var(&self) -> SkewElem<A> {
        self.monomial(1, self.base.one())
    }

    pub fn embed(&self, c: A::Elem) -> SkewElem<A> {
        self.monomial(0, c)
    }

    fn check_radius(&self, f: &SkewElem<A>) -> Result<()> {
        if f.radius_exp != self.radius_exp {
            return Err(Error::Structure(format!(
                "radius mismatch: element has e = {}, algebra has e = {}",
                f.radius_exp, self.radius_exp
            )));
        }
        Ok(())
    }

    fn term_norm(&self, deg: u32, coeff: &A::Elem) -> PPower {
        self.base.norm(coeff) * PPower::Pow(self.radius_exp * deg as i64)
    }

    /// ||f||_R = max_n ||f_n|| R^n, 0 for the zero representative.
    pub fn gauss_norm(&self, f: &SkewElem<A>) -> PPower {
        f.coeffs
            .iter()
            .map(|(d, c)| self.term_norm(*d, c))
            .max()
            .unwrap_or(PPower::Zero)
    }

    /// x * f, by the one-step rule x*a = alpha(a)x + delta(a) applied
    /// degree-wise.
    fn var_times_map(&self, coeffs: &BTreeMap<u32, A::Elem>) -> BTreeMap<u32, A::Elem> {
        let mut out: BTreeMap<u32, A::Elem> = BTreeMap::new();
        let mut put = |deg: u32, val: A::Elem, base: &A| {
            if base.is_zero(&val) {
                return;
            }
            match out.remove(&deg) {
                Some(prev) => {
                    let s = base.add(&prev, &val);
                    if !base.is_zero(&s) {
                        out.insert(deg, s);
                    }
                }
                None => {
                    out.insert(deg, val);
                }
            }
        };
        for (deg, c) in coeffs {
            put(deg + 1, self.ore.alpha(&self.base, c), &self.base);
            put(*deg, self.ore.delta(&self.base, c), &self.base);
        }
        out
    }

    /// Exact product of the finite representatives; the precision floor is
    /// propagated submultiplicatively.
    pub fn skew_multiply(&self, f: &SkewElem<A>, g: &SkewElem<A>) -> Result<SkewElem<A>> {
        self.check_radius(f)?;
        self.check_radius(g)?;
        let nf = self.gauss_norm(f);
        let ng = self.gauss_norm(g);
        let floor = (f.floor() * ng).max(nf * g.floor()).max(f.floor() * g.floor());

        let mut acc: BTreeMap<u32, A::Elem> = BTreeMap::new();
        let max_n = f.degree().unwrap_or(0);
        // x^n * g, computed incrementally for n = 0, 1, ...
        let mut xng = g.coeffs.clone();
        for n in 0..=max_n {
            if let Some(fn_) = f.coeffs.get(&n) {
                for (k, c) in &xng {
                    let term = self.base.mul(fn_, c);
                    if self.base.is_zero(&term) {
                        continue;
                    }
                    match acc.remove(k) {
                        Some(prev) => {
                            let s = self.base.add(&prev, &term);
                            if !self.base.is_zero(&s) {
                                acc.insert(*k, s);
                            }
                        }
                        None => {
                            acc.insert(*k, term);
                        }
                    }
                }
            }
            if n < max_n {
                xng = self.var_times_map(&xng);
            }
        }
        Ok(SkewSeriesElement {
            coeffs: acc,
            radius_exp: self.radius_exp,
            precision_floor_exp: floor_exp(floor),
        })
    }

    pub fn add(&self, f: &SkewElem<A>, g: &SkewElem<A>) -> Result<SkewElem<A>> {
        self.check_radius(f)?;
        self.check_radius(g)?;
        let mut coeffs = f.coeffs.clone();
        for (deg, c) in &g.coeffs {
            match coeffs.remove(deg) {
                Some(prev) => {
                    let s = self.base.add(&prev, c);
                    if !self.base.is_zero(&s) {
                        coeffs.insert(*deg, s);
                    }
                }
                None => {
                    coeffs.insert(*deg, c.clone());
                }
            }
        }
        Ok(SkewSeriesElement {
            coeffs,
            radius_exp: self.radius_exp,
            precision_floor_exp: floor_exp(f.floor().max(g.floor())),
        })
    }

    pub fn neg(&self, f: &SkewElem<A>) -> SkewElem<A> {
        SkewSeriesElement {
            coeffs: f
                .coeffs
                .iter()
                .map(|(d, c)| (*d, self.base.neg(c)))
                .collect(),
            radius_exp: f.radius_exp,
            precision_floor_exp: f.precision_floor_exp,
        }
    }

    pub fn sub(&self, f: &SkewElem<A>, g: &SkewElem<A>) -> Result<SkewElem<A>> {
        self.add(f, &self.neg(g))
    }

    pub fn scalar_times(&self, s: &PadicScalar, f: &SkewElem<A>) -> SkewElem<A> {
        if s.is_zero() {
            return self.from_coeffs([]);
        }
        let sn = self.base.qparams().norm(s);
        SkewSeriesElement {
            coeffs: f
                .coeffs
                .iter()
                .map(|(d, c)| (*d, self.base.scalar_mul(s, c)))
                .collect(),
            radius_exp: f.radius_exp,
            precision_floor_exp: floor_exp(f.floor() * sn),
        }
    }

    /// The isomorphism A{x/R, alpha, delta} = A{z, alpha, s^{-1} delta}
    /// with x -> s z, for |s| = R.  Returns the target algebra (radius
    /// exponent 0) together with the image; the Gauss norm is preserved.
    pub fn rescale(&self, f: &SkewElem<A>, s: &PadicScalar) -> Result<(Self, SkewElem<A>)> {
        self.check_radius(f)?;
        let qp = self.base.qparams().clone();
        if qp.norm(s) != PPower::Pow(self.radius_exp) {
            return Err(Error::Domain(format!(
                "rescale requires |s| = R = p^{}, got |s| = {}",
                self.radius_exp,
                qp.norm(s)
            )));
        }
        let s_inv = s.inv().expect("|s| = R != 0");
        let old_delta = Arc::clone(&self.ore.delta);
        let new_delta: Arc<dyn Fn(&A, &A::Elem) -> A::Elem + Send + Sync> = {
            let s_inv = s_inv.clone();
            Arc::new(move |base: &A, e: &A::Elem| base.scalar_mul(&s_inv, &(old_delta)(base, e)))
        };
        let target = SkewSeriesAlgebra {
            base: self.base.clone(),
            ore: OreData {
                alpha: Arc::clone(&self.ore.alpha),
                delta: new_delta,
                alpha_bound: self.ore.alpha_bound,
                delta_bound: self.ore.delta_bound * PPower::Pow(-self.radius_exp),
                alpha_is_isometry: self.ore.alpha_is_isometry,
            },
            radius_exp: 0,
        };
        let mut coeffs = BTreeMap::new();
        for (deg, c) in &f.coeffs {
            let sn = s.pow(*deg as i64).expect("s != 0");
            let img = self.base.scalar_mul(&sn, c);
            if !self.base.is_zero(&img) {
                coeffs.insert(*deg, img);
            }
        }
        let img = SkewSeriesElement {
            coeffs,
            radius_exp: 0,
            precision_floor_exp: f.precision_floor_exp,
        };
        Ok((target, img))
    }

    /// Degree-wise residue reduction: coefficients of term norm < 1 vanish,
    /// the rest are replaced by canonical coset representatives.
    /// Requires ||f|| <= 1.
    pub fn residue_reduce(&self, f: &SkewElem<A>) -> Result<SkewElem<A>> {
        self.check_radius(f)?;
        if self.gauss_norm(f) > PPower::ONE {
            return Err(Error::Domain(
                "residue reduction requires Gauss norm <= 1".into(),
            ));
        }
        let qp = self.base.qparams().clone();
        let mut coeffs = BTreeMap::new();
        for (deg, c) in &f.coeffs {
            if self.term_norm(*deg, c) < PPower::ONE {
                continue;
            }
            // scale to base norm 1, reduce, scale back
            let scale = qp.p_pow(-self.radius_exp * *deg as i64);
            let unit = self.base.scalar_mul(&scale, c);
            let red = self.base.residue(&unit)?;
            let back = self
                .base
                .scalar_mul(&scale.inv().expect("p-power nonzero"), &red);
            if !self.base.is_zero(&back) {
                coeffs.insert(*deg, back);
            }
        }
        Ok(SkewSeriesElement {
            coeffs,
            radius_exp: self.radius_exp,
            precision_floor_exp: None,
        })
    }

    pub fn elem_is_zero(&self, f: &SkewElem<A>) -> bool {
        f.coeffs.is_empty()
    }
}

impl<A: NormedAlgebra> NormedAlgebra for SkewSeriesAlgebra<A> {
    type Elem = SkewSeriesElement<A::Elem>;

    fn qparams(&self) -> &QParams {
        self.base.qparams()
    }
    fn zero(&self) -> Self::Elem {
        self.from_coeffs([])
    }
    fn one(&self) -> Self::Elem {
        self.embed(self.base.one())
    }
    fn is_zero(&self, e: &Self::Elem) -> bool {
        e.coeffs.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        SkewSeriesAlgebra::add(self, a, b).expect("radius match")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        SkewSeriesAlgebra::neg(self, a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.skew_multiply(a, b).expect("radius match")
    }
    fn scalar_mul(&self, s: &PadicScalar, a: &Self::Elem) -> Self::Elem {
        self.scalar_times(s, a)
    }
    fn norm(&self, e: &Self::Elem) -> PPower {
        self.gauss_norm(e)
    }
    fn norm_is_multiplicative(&self) -> bool {
        self.base.norm_is_multiplicative() && self.ore.alpha_is_isometry
    }
    fn residue(&self, e: &Self::Elem) -> Result<Self::Elem> {
        self.residue_reduce(e)
    }
    fn unit_scalar_part(&self, e: &Self::Elem) -> Option<PadicScalar> {
        let mut lambda = None;
        for (deg, c) in &e.coeffs {
            if *deg == 0 {
                match self.base.unit_scalar_part(c) {
                    Some(l) => lambda = Some(l),
                    None => {
                        if self.term_norm(*deg, c) >= PPower::ONE {
                            return None;
                        }
                    }
                }
            } else if self.term_norm(*deg, c) >= PPower::ONE {
                return None;
            }
        }
        lambda
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let nterms = 1 + (rng.next_u32() % 3);
        let mut out = self.zero();
        for _ in 0..nterms {
            let deg = rng.next_u32() % 4;
            out = NormedAlgebra::add(self, &out, &self.monomial(deg, self.base.sample(rng)));
        }
        out
    }
    fn elem_to_json(&self, e: &Self::Elem) -> serde_json::Value {
        let terms: Vec<_> = e
            .coeffs
            .iter()
            .map(|(d, c)| json!({"deg": d, "coeff": self.base.elem_to_json(c)}))
            .collect();
        json!({
            "radius_exp": e.radius_exp,
            "precision_floor_exp": e.precision_floor_exp,
            "terms": terms,
        })
    }
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Self::Elem> {
        let radius_exp = v
            .get("radius_exp")
            .and_then(|r| r.as_i64())
            .ok_or_else(|| Error::Structure("skew JSON needs radius_exp".into()))?;
        if radius_exp != self.radius_exp {
            return Err(Error::Structure("radius mismatch in JSON element".into()));
        }
        let floor = v.get("precision_floor_exp").and_then(|f| f.as_i64());
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Structure("skew JSON needs a terms array".into()))?;
        let mut coeffs = BTreeMap::new();
        for t in terms {
            let deg = t
                .get("deg")
                .and_then(|d| d.as_u64())
                .ok_or_else(|| Error::Structure("term needs a nonnegative deg".into()))?
                as u32;
            let coeff = self.base.elem_from_json(
                t.get("coeff")
                    .ok_or_else(|| Error::Structure("term needs a coeff".into()))?,
            )?;
            if !self.base.is_zero(&coeff) {
                coeffs.insert(deg, coeff);
            }
        }
        Ok(SkewSeriesElement {
            coeffs,
            radius_exp,
            precision_floor_exp: floor,
        })
    }
}
