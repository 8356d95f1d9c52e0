//! Exact p-adic scalar arithmetic over the rationals, together with the
//! q-combinatorial constants (q-integers, q-factorials, q-binomials,
//! q-Pochhammer symbols and the gamma constants of the duality pairing).
//!
//! The ground field is realized as Q with the p-adic valuation, a dense
//! subfield of Q_p; every value in scope is an exact rational, so norm
//! identities can be asserted with zero tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact p-adic valuation; `Infinite` is the distinguished value of 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// norm(x) = p^{-v}; norm(0) = 0.
    pub fn norm(&self) -> PPower {
        match self {
            Valuation::Finite(v) => PPower::Pow(-v),
            Valuation::Infinite => PPower::Zero,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A value in p^Z or 0.  All norms in this crate are solid, so this is the
/// full codomain of every norm; arithmetic on norms is integer arithmetic
/// on exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PPower {
    Zero,
    /// p^e
    Pow(i64),
}

impl PPower {
    pub const ONE: PPower = PPower::Pow(0);

    pub fn is_zero(&self) -> bool {
        matches!(self, PPower::Zero)
    }

    pub fn exponent(&self) -> Option<i64> {
        match self {
            PPower::Zero => None,
            PPower::Pow(e) => Some(*e),
        }
    }

    pub fn inverse(&self) -> Result<PPower> {
        match self {
            PPower::Zero => Err(Error::Domain("inverse of zero norm".into())),
            PPower::Pow(e) => Ok(PPower::Pow(-e)),
        }
    }
}

impl Mul for PPower {
    type Output = PPower;
    fn mul(self, rhs: PPower) -> PPower {
        match (self, rhs) {
            (PPower::Zero, _) | (_, PPower::Zero) => PPower::Zero,
            (PPower::Pow(a), PPower::Pow(b)) => PPower::Pow(a + b),
        }
    }
}

impl PartialOrd for PPower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PPower {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PPower::Zero, PPower::Zero) => Ordering::Equal,
            (PPower::Zero, _) => Ordering::Less,
            (_, PPower::Zero) => Ordering::Greater,
            (PPower::Pow(a), PPower::Pow(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for PPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PPower::Zero => write!(f, "0"),
            PPower::Pow(0) => write!(f, "1"),
            PPower::Pow(e) => write!(f, "p^{e}"),
        }
    }
}

/// An exact rational scalar.  The p-adic structure (valuation, norm,
/// residue) is obtained by passing the prime explicitly or through
/// [`QParams`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PadicScalar(BigRational);

impl PadicScalar {
    pub fn zero() -> Self {
        PadicScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        PadicScalar(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        PadicScalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(PadicScalar(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn inv(&self) -> Result<PadicScalar> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(PadicScalar(self.0.recip()))
    }

    /// Exact integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<PadicScalar> {
        if e == 0 {
            return Ok(PadicScalar::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = BigRational::one();
        let mut sq = base.0;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc *= &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(PadicScalar(acc))
    }

    /// Exact p-adic valuation v_p(a/b) = v_p(a) - v_p(b).
    pub fn valuation(&self, p: u64) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let p = BigInt::from(p);
        Valuation::Finite(int_valuation(self.0.numer(), &p) - int_valuation(self.0.denom(), &p))
    }

    /// |x|_p = p^{-v_p(x)}, |0|_p = 0.
    pub fn norm(&self, p: u64) -> PPower {
        self.valuation(p).norm()
    }

    /// Canonical representative of the residue class in F_p, lifted back to
    /// {0, ..., p-1}.  Requires |x|_p <= 1.
    pub fn residue(&self, p: u64) -> Result<PadicScalar> {
        if self.is_zero() {
            return Ok(PadicScalar::zero());
        }
        match self.valuation(p) {
            Valuation::Finite(v) if v < 0 => {
                Err(Error::Domain(format!("residue of element with |x| > 1 (v = {v})")))
            }
            Valuation::Finite(v) if v > 0 => Ok(PadicScalar::zero()),
            _ => {
                let pb = BigInt::from(p);
                let num = self.0.numer().mod_floor(&pb);
                let den = self.0.denom().mod_floor(&pb);
                let den_inv = mod_inverse(&den, &pb)
                    .ok_or_else(|| Error::Domain("denominator not invertible mod p".into()))?;
                let r = (num * den_inv).mod_floor(&pb);
                Ok(PadicScalar(BigRational::from_integer(r)))
            }
        }
    }
}

trait ModFloor {
    fn mod_floor(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    // extended Euclid
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &qt * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.is_one() {
        Some(s0.mod_floor(m))
    } else {
        None
    }
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut v = 0i64;
    let mut cur = n.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&cur, p);
        if r.is_zero() {
            v += 1;
            cur = q;
        } else {
            return v;
        }
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for PadicScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Domain(format!("bad integer literal `{t}`")))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(Error::Domain("zero denominator".into()));
                }
                Ok(PadicScalar(BigRational::new(parse_int(n)?, den)))
            }
            None => Ok(PadicScalar(BigRational::from_integer(parse_int(s)?))),
        }
    }
}

impl Serialize for PadicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for PadicScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: PadicScalar) -> PadicScalar {
                PadicScalar(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a PadicScalar> for &'a PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: &'a PadicScalar) -> PadicScalar {
                PadicScalar(&self.0 $op &rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        PadicScalar(-self.0)
    }
}

impl Neg for &PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        PadicScalar(-&self.0)
    }
}

/// The deformation environment: an odd prime p and a square root u of q
/// with |u| = 1 and |1 - u^2| < 1, so that |q| = 1 and |1 - q| < 1.
#[derive(Debug, Clone)]
pub struct QParams {
    p: u64,
    u: PadicScalar,
    q: PadicScalar,
    q_inv: PadicScalar,
}

impl QParams {
    /// Default desk-scale parameters: p = 5, u = 6 (so q = 36).
    pub fn default_params() -> QParams {
        QParams::new(5, PadicScalar::from_integer(6)).expect("default parameters are valid")
    }

    pub fn new(p: u64, u: PadicScalar) -> Result<QParams> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::Config(format!("p = {p} is not an odd prime")));
        }
        if u.valuation(p) != Valuation::Finite(0) {
            return Err(Error::Config("u must satisfy v_p(u) = 0".into()));
        }
        let q = &u * &u;
        let one_minus_q = PadicScalar::one() - q.clone();
        if one_minus_q.is_zero() {
            return Err(Error::Config("q = 1 is not a deformation (q - q^-1 = 0)".into()));
        }
        match one_minus_q.valuation(p) {
            Valuation::Finite(v) if v > 0 => {}
            _ => return Err(Error::Config("u must satisfy v_p(1 - u^2) > 0".into())),
        }
        let q_inv = q.inv()?;
        Ok(QParams { p, u, q, q_inv })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> &PadicScalar {
        &self.q
    }

    pub fn q_inv(&self) -> &PadicScalar {
        &self.q_inv
    }

    /// u = q^{1/2}
    pub fn u(&self) -> &PadicScalar {
        &self.u
    }

    pub fn q_pow(&self, e: i64) -> PadicScalar {
        self.q.pow(e).expect("q is nonzero")
    }

    /// q^{e/2} = u^e, exact for any integer e.
    pub fn q_half_pow(&self, e: i64) -> PadicScalar {
        self.u.pow(e).expect("u is nonzero")
    }

    /// q - q^{-1}, nonzero by construction.
    pub fn q_minus_q_inv(&self) -> PadicScalar {
        &self.q - &self.q_inv
    }

    pub fn valuation(&self, x: &PadicScalar) -> Valuation {
        x.valuation(self.p)
    }

    pub fn norm(&self, x: &PadicScalar) -> PPower {
        x.norm(self.p)
    }

    /// p^e as an exact scalar.
    pub fn p_pow(&self, e: i64) -> PadicScalar {
        PadicScalar::from_integer(self.p as i64)
            .pow(e)
            .expect("p is nonzero")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Balanced q-integer [n]_q = (q^n - q^{-n})/(q - q^{-1}); [0]_q = 0.
pub fn q_integer(n: u32, qp: &QParams) -> PadicScalar {
    q_integer_in(n, qp.q())
}

/// [n]_b in an arbitrary nonzero base b with b != b^{-1}.
pub fn q_integer_in(n: u32, base: &PadicScalar) -> PadicScalar {
    if n == 0 {
        return PadicScalar::zero();
    }
    let b_inv = base.inv().expect("base must be nonzero");
    let denom = base - &b_inv;
    assert!(!denom.is_zero(), "base must satisfy b != b^-1");
    let num = base.pow(n as i64).unwrap() - base.pow(-(n as i64)).unwrap();
    let inv = denom.inv().unwrap();
    &num * &inv
}

/// [n]_q! = prod_{k=1..n} [k]_q.
pub fn q_factorial(n: u32, qp: &QParams) -> PadicScalar {
    q_factorial_in(n, qp.q())
}

pub fn q_factorial_in(n: u32, base: &PadicScalar) -> PadicScalar {
    let mut acc = PadicScalar::one();
    for k in 1..=n {
        acc = &acc * &q_integer_in(k, base);
    }
    acc
}

/// Balanced q-binomial [s over k]_base = [s]!/([k]![s-k]!) with q-integers in
/// the given base.  Errors when k > s.
pub fn q_binomial(s: u32, k: u32, base: &PadicScalar, _qp: &QParams) -> Result<PadicScalar> {
    if k > s {
        return Err(Error::Domain(format!("q-binomial with k = {k} > s = {s}")));
    }
    let num = q_factorial_in(s, base);
    let den = &q_factorial_in(k, base) * &q_factorial_in(s - k, base);
    Ok(&num * &den.inv().expect("q-factorials are nonzero"))
}

/// q-Pochhammer (a; q)_n = (1 - a)(1 - aq)...(1 - aq^{n-1}).
pub fn q_pochhammer(a: &PadicScalar, q: &PadicScalar, n: u32) -> PadicScalar {
    let mut acc = PadicScalar::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc = &acc * &(PadicScalar::one() - aq.clone());
        aq = &aq * q;
    }
    acc
}

/// The gamma constant of the breve pairing:
///
///   gamma^{srt}_{mnl} = q^{m(s+r-t)/2} q^{-s(n+l)/2}
///                       / (q^{n(n-1)/2} q^{l(l-1)/2})
///                       * (q^2;q^2)_l (q^2;q^2)_n / (1-q^2)^{l+n}
///
/// Half-integer exponents are exact because u = q^{1/2} is part of the
/// parameter set.  `s` and `m` may be negative (the a-led pairing uses -s,
/// and m is a Laurent exponent).
pub fn gamma_constant(s: i64, r: u32, t: u32, m: i64, n: u32, l: u32, qp: &QParams) -> PadicScalar {
    let q2 = qp.q_pow(2);
    let half = qp.q_half_pow(m * (s + r as i64 - t as i64) - s * (n as i64 + l as i64));
    let denom_pow = qp.q_pow((n as i64 * (n as i64 - 1)) / 2 + (l as i64 * (l as i64 - 1)) / 2);
    let poch = &q_pochhammer(&q2, &q2, l) * &q_pochhammer(&q2, &q2, n);
    let one_minus_q2 = PadicScalar::one() - q2;
    let scale = one_minus_q2
        .pow(-((l + n) as i64))
        .expect("1 - q^2 != 0 by construction");
    &(&(&half * &denom_pow.inv().unwrap()) * &poch) * &scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp() -> QParams {
        QParams::default_params()
    }

    #[test]
    fn valuation_examples() {
        let p5 = PadicScalar::from_integer(5);
        assert_eq!(p5.valuation(5), Valuation::Finite(1));
        let x = PadicScalar::from_ratio(1, 25).unwrap();
        assert_eq!(x.valuation(5), Valuation::Finite(-2));
        assert_eq!(PadicScalar::zero().valuation(5), Valuation::Infinite);
        assert_eq!(PadicScalar::zero().norm(5), PPower::Zero);
        assert_eq!(p5.norm(5), PPower::Pow(-1));
    }

    #[test]
    fn qparams_construction() {
        assert!(QParams::new(5, PadicScalar::from_integer(6)).is_ok());
        // v_p(1 - u^2) = 0
        assert!(QParams::new(5, PadicScalar::from_integer(2)).is_err());
        // u = 1 gives q = 1
        assert!(QParams::new(5, PadicScalar::from_integer(1)).is_err());
        // not an odd prime
        assert!(QParams::new(4, PadicScalar::from_integer(6)).is_err());
    }

    #[test]
    fn q_integer_examples() {
        let qp = qp();
        assert!(q_integer(0, &qp).is_zero());
        assert!(q_integer(1, &qp).is_one());
        // [2]_q for q = 36: (q^2 - q^-2)/(q - q^-1) = q + q^-1 = 36 + 1/36
        let expected = PadicScalar::from_ratio(1297, 36).unwrap();
        assert_eq!(q_integer(2, &qp), expected);
    }

    #[test]
    fn pochhammer_identity() {
        // (q^2; q^2)_m = [m]_q! (1-q^2)^m q^{m(m-1)/2} for m <= 10
        let qp = qp();
        let q2 = qp.q_pow(2);
        for m in 0..=10u32 {
            let lhs = q_pochhammer(&q2, &q2, m);
            let rhs = &(&q_factorial(m, &qp)
                * &(PadicScalar::one() - q2.clone()).pow(m as i64).unwrap())
                * &qp.q_pow((m as i64 * (m as i64 - 1)) / 2);
            assert_eq!(lhs, rhs, "m = {m}");
        }
        assert!(q_pochhammer(&qp.q_pow(3), qp.q(), 0).is_one());
    }

    #[test]
    fn q_factorial_valuation_matches_legendre() {
        let qp = qp();
        let mut fact_val = 0i64;
        for n in 1..=100u32 {
            let qn = q_integer(n, &qp);
            match qp.valuation(&qn) {
                Valuation::Finite(v) => fact_val += v,
                Valuation::Infinite => panic!("[{n}]_q = 0"),
            }
            // Legendre: v_p(n!) = sum_{i>=1} floor(n/p^i)
            let mut legendre = 0i64;
            let mut pk = 5u64;
            while pk <= n as u64 {
                legendre += (n as u64 / pk) as i64;
                pk *= 5;
            }
            assert_eq!(fact_val, legendre, "n = {n}");
        }
    }

    #[test]
    fn q_binomial_domain() {
        let qp = qp();
        let q2 = qp.q_pow(2);
        assert!(q_binomial(2, 3, &q2, &qp).is_err());
        assert!(q_binomial(4, 0, &q2, &qp).unwrap().is_one());
        assert!(q_binomial(4, 4, &q2, &qp).unwrap().is_one());
    }

    #[test]
    fn gamma_examples() {
        let qp = qp();
        // n = l = 0, m = 0: empty products, zero exponents
        assert!(gamma_constant(3, 2, 1, 0, 0, 0, &qp).is_one());
        // gamma^{010}_{110} (with l = 0) = q^{1/2} = u
        assert_eq!(gamma_constant(0, 1, 0, 1, 1, 0, &qp), *qp.u());
    }

    #[test]
    fn gamma_is_unit_for_small_indices() {
        let qp = qp();
        for s in 0..=4i64 {
            for r in 0..=4u32 {
                for t in 0..=4u32 {
                    for m in -4..=4i64 {
                        for n in 0..=4u32 {
                            for l in 0..=4u32 {
                                let g = gamma_constant(s, r, t, m, n, l, &qp);
                                assert_eq!(
                                    qp.norm(&g),
                                    PPower::ONE,
                                    "gamma({s},{r},{t};{m},{n},{l})"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn residue_reduction() {
        let x = PadicScalar::from_ratio(7, 3).unwrap();
        // 7 * 3^{-1} mod 5 = 7 * 2 mod 5 = 4
        assert_eq!(x.residue(5).unwrap(), PadicScalar::from_integer(4));
        assert_eq!(
            PadicScalar::from_integer(10).residue(5).unwrap(),
            PadicScalar::zero()
        );
        assert!(PadicScalar::from_ratio(1, 5).unwrap().residue(5).is_err());
    }

    #[test]
    fn scalar_string_roundtrip() {
        for s in ["3/4", "-7", "0", "22/7", "-1/36"] {
            let x: PadicScalar = s.parse().unwrap();
            let y: PadicScalar = x.to_string().parse().unwrap();
            assert_eq!(x, y);
        }
    }
}
