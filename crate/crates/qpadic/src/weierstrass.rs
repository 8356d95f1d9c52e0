//! Regularity detection, Weierstrass division and Weierstrass preparation
//! in skew-Tate algebras, following the constructive proof: exact long
//! division by the distinguished part f0, then the geometric iteration
//! g_{n+1} = q_n * D until the residual drops below the target floor.

use crate::error::{Error, Result};
use crate::scalars::{PPower, PadicScalar};
use crate::skewseries::{NormedAlgebra, SkewElem, SkewSeriesAlgebra};

/// Outcome of `check_regular`.  For regular f the witness decomposition
/// f = f0 - defect has ||defect|| < 1 and f0 = lambda z^d + lower terms
/// with integral canonical coefficients.
#[derive(Clone, Debug)]
pub struct RegularityReport<A: NormedAlgebra> {
    pub is_regular: bool,
    pub data: Option<RegularData<A>>,
}

#[derive(Clone, Debug)]
pub struct RegularData<A: NormedAlgebra> {
    pub degree: u32,
    /// Scalar leading coefficient of the residue, lifted; |lambda| R^d = 1.
    pub lambda: PadicScalar,
    /// Canonical distinguished part: the residue lift of f.
    pub f0: SkewElem<A>,
    /// D = f0 - f, of Gauss norm < 1.
    pub defect: SkewElem<A>,
}

/// Result of Weierstrass division g = q f + r, deg r < d.
#[derive(Clone, Debug)]
pub struct Division<A: NormedAlgebra> {
    pub quotient: SkewElem<A>,
    pub remainder: SkewElem<A>,
    /// Gauss norm of the discarded tail; `Zero` means the answer is exact.
    pub residual_floor: PPower,
    pub iterations: u32,
}

/// Result of Weierstrass preparation: w = x^d - r is regular of degree d
/// and omega = e' f holds, so f = e'^{-1} w = e_inv * w to the floor.
#[derive(Clone, Debug)]
pub struct Preparation<A: NormedAlgebra> {
    pub w: SkewElem<A>,
    pub e_prime: SkewElem<A>,
    pub e_inv: SkewElem<A>,
    pub residual_floor: PPower,
    pub iterations: u32,
}

pub fn check_regular<A: NormedAlgebra>(
    alg: &SkewSeriesAlgebra<A>,
    f: &SkewElem<A>,
) -> Result<RegularityReport<A>> {
    let not_regular = Ok(RegularityReport {
        is_regular: false,
        data: None,
    });
    if alg.gauss_norm(f) != PPower::ONE {
        return not_regular;
    }
    let f0 = alg.residue_reduce(f)?;
    let (d, top) = match f0.coeffs.iter().next_back() {
        Some((d, c)) => (*d, c.clone()),
        None => return not_regular,
    };
    // the leading residue must be an invertible scalar; test on the
    // coefficient rescaled to base norm 1
    let qp = alg.base.qparams().clone();
    let scale = qp.p_pow(-alg.radius_exp * d as i64);
    let scaled = alg.base.scalar_mul(&scale, &top);
    let lam_unit = match alg.base.unit_scalar_part(&scaled) {
        Some(l) => l,
        None => return not_regular,
    };
    let lambda = &lam_unit * &scale.inv().expect("p-power nonzero");
    let defect = alg.sub(&f0, f)?;
    debug_assert!(alg.gauss_norm(&defect) < PPower::ONE);
    Ok(RegularityReport {
        is_regular: true,
        data: Some(RegularData {
            degree: d,
            lambda,
            f0,
            defect,
        }),
    })
}

/// Exact long division by the distinguished part: g = q f0 + r with
/// deg r < d.  Terminates because the leading coefficient of f0 is the
/// scalar lambda, which commutes with the Ore variable.
fn divide_by_f0<A: NormedAlgebra>(
    alg: &SkewSeriesAlgebra<A>,
    g: &SkewElem<A>,
    data: &RegularData<A>,
) -> Result<(SkewElem<A>, SkewElem<A>)> {
    let d = data.degree;
    let lambda_inv = data.lambda.inv().expect("lambda is a unit");
    let mut cur = g.clone();
    let mut q = alg.from_coeffs([]);
    loop {
        let (n, c) = match cur.coeffs.iter().next_back() {
            Some((n, c)) if *n >= d => (*n, c.clone()),
            _ => break,
        };
        let t = alg.base.scalar_mul(&lambda_inv, &c);
        let qterm = alg.monomial(n - d, t);
        cur = alg.sub(&cur, &alg.skew_multiply(&qterm, &data.f0)?)?;
        debug_assert!(cur.degree().map_or(true, |m| m < n));
        q = alg.add(&q, &qterm)?;
    }
    Ok((q, cur))
}

/// Weierstrass division of g by a regular f: returns q, r with
/// g = q f + r up to `target_floor`, deg r < d, and
/// ||g|| = max(||q||, ||r||) on the returned representatives.
pub fn wdivide<A: NormedAlgebra>(
    alg: &SkewSeriesAlgebra<A>,
    g: &SkewElem<A>,
    f: &SkewElem<A>,
    target_floor: PPower,
) -> Result<Division<A>> {
    let report = check_regular(alg, f)?;
    let data = report
        .data
        .ok_or_else(|| Error::Domain("wdivide requires a regular divisor".into()))?;
    let norm_d = alg.gauss_norm(&data.defect);
    if norm_d >= PPower::ONE {
        return Err(Error::NonConvergence(
            "defect of the divisor does not contract".into(),
        ));
    }
    let mut q_tot = alg.from_coeffs([]);
    let mut r_tot = alg.from_coeffs([]);
    let mut g_n = g.clone();
    let mut iterations = 0u32;
    let residual = loop {
        let ng = alg.gauss_norm(&g_n);
        if ng == PPower::Zero || ng <= target_floor {
            break ng;
        }
        if iterations > 100_000 {
            return Err(Error::NonConvergence(
                "division iteration exceeded 100000 rounds".into(),
            ));
        }
        let (q_n, r_n) = divide_by_f0(alg, &g_n, &data)?;
        q_tot = alg.add(&q_tot, &q_n)?;
        r_tot = alg.add(&r_tot, &r_n)?;
        g_n = alg.skew_multiply(&q_n, &data.defect)?;
        iterations += 1;
    };
    let floor = residual.exponent();
    q_tot.precision_floor_exp = floor;
    r_tot.precision_floor_exp = floor;
    Ok(Division {
        quotient: q_tot,
        remainder: r_tot,
        residual_floor: residual,
        iterations,
    })
}

/// Invert a unit u whose residue is an invertible scalar, by the
/// geometric series u^{-1} = lambda^{-1} sum (-h)^k for u = lambda(1+h).
pub fn invert_unit<A: NormedAlgebra>(
    alg: &SkewSeriesAlgebra<A>,
    u: &SkewElem<A>,
    target_floor: PPower,
) -> Result<SkewElem<A>> {
    let lambda = NormedAlgebra::unit_scalar_part(alg, u).ok_or_else(|| {
        Error::Domain("invert_unit requires a unit with scalar residue".into())
    })?;
    let lambda_inv = lambda.inv().expect("unit scalar");
    let one = NormedAlgebra::one(alg);
    let h = alg.sub(&alg.scalar_times(&lambda_inv, u), &one)?;
    if alg.gauss_norm(&h) >= PPower::ONE {
        return Err(Error::Domain("element is not a unit of scalar type".into()));
    }
    let mut sum = one.clone();
    let mut pow = one;
    loop {
        pow = alg.skew_multiply(&pow, &alg.neg(&h))?;
        let n = alg.gauss_norm(&pow);
        if n == PPower::Zero || n <= target_floor {
            break;
        }
        sum = alg.add(&sum, &pow)?;
    }
    let mut inv = alg.scalar_times(&lambda_inv, &sum);
    if !alg.elem_is_zero(&h) {
        inv.precision_floor_exp = target_floor.exponent();
    }
    Ok(inv)
}

/// Weierstrass preparation: w = x^d - r from dividing x^d by f, together
/// with the proof's unit e' (omega = e' f) and its inverse to precision,
/// so that f = e_inv * w up to the floor.
pub fn wprepare<A: NormedAlgebra>(
    alg: &SkewSeriesAlgebra<A>,
    f: &SkewElem<A>,
    target_floor: PPower,
) -> Result<Preparation<A>> {
    let report = check_regular(alg, f)?;
    let data = report
        .data
        .ok_or_else(|| Error::Domain("wprepare requires a regular element".into()))?;
    let xd = alg.monomial(data.degree, alg.base.one());
    let div = wdivide(alg, &xd, f, target_floor)?;
    let w = alg.sub(&xd, &div.remainder)?;
    let e_inv = invert_unit(alg, &div.quotient, target_floor)?;
    Ok(Preparation {
        w,
        e_prime: div.quotient,
        e_inv,
        residual_floor: div.residual_floor,
        iterations: div.iterations,
    })
}
