//! Artin-Schreier L-functions: exponential sums S_n, the L-polynomial by two
//! independent routes (power-series exponential of point counts, and
//! character sums over monic polynomials), functional equation, Riemann
//! hypothesis check, genus, and both approximate functional equations.

use crate::error::{Error, Result};
use crate::exact::{real::Precision, CycInt, CycRat, ExactNum};
use crate::gf::{abs_trace, embed, make_field, FieldCtx};
use crate::polyring::{
    divisor_k, enumerate_monic, factorize, power_sums, root_sum_eval, Poly, RatFn,
};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use std::sync::Arc;

/// Which of the three curve families f belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FamilyKind {
    Polynomial,
    OddPolynomial,
    Ordinary,
}

/// A member of one of the Artin-Schreier families.
#[derive(Clone, Debug)]
pub struct CurveParams {
    pub f: RatFn,
    pub kind: FamilyKind,
    pub d: usize,
}

impl CurveParams {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.f.num.ctx
    }

    /// Expected degree of L(u, f, psi).
    pub fn l_degree(&self) -> usize {
        match self.kind {
            FamilyKind::Polynomial | FamilyKind::OddPolynomial => self.d - 1,
            FamilyKind::Ordinary => 2 * self.d - 2,
        }
    }

    /// Value at infinity when finite: Some(tr f(inf)) as an F_p class.
    pub fn infinity_trace(&self) -> Option<u32> {
        if self.f.is_polynomial() {
            return None; // pole at infinity
        }
        let dh = self.f.num.degree().map(|d| d as i64).unwrap_or(-1);
        let dg = self.f.den.deg() as i64;
        if dh > dg {
            None
        } else if dh < dg {
            Some(0)
        } else {
            let ctx = self.ctx();
            let v = ctx.mul_idx(self.f.num.leading(), ctx.inv_idx(self.f.den.leading()));
            let el = crate::gf::FieldElem { ctx: ctx.clone(), idx: v };
            Some(abs_trace(&el))
        }
    }
}

/// An L-function as a polynomial in u with coefficients in Z[zeta_p].
#[derive(Clone, PartialEq, Eq)]
pub struct LPoly {
    pub p: u32,
    pub a: Vec<CycInt>,
}

impl std::fmt::Debug for LPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LPoly{:?}", self.a)
    }
}

impl LPoly {
    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    /// L(1/sqrt(q)) = sum a_j t^{-pj} as an element of R.
    pub fn value_at_inv_sqrt_q(&self, q: u64) -> ExactNum {
        let p = self.p;
        let mut acc = ExactNum::zero(p, q);
        for (j, aj) in self.a.iter().enumerate() {
            let term = ExactNum::from_cyc_int(q, aj)
                .mul(&ExactNum::sqrt_q_pow(p, q, -(j as i64)));
            acc = acc.add(&term);
        }
        acc
    }

    /// Multiply by (1 - u), i.e. the (1-u) L(u) polynomial.
    pub fn mul_one_minus_u(&self) -> LPoly {
        let n = self.a.len();
        let mut a = Vec::with_capacity(n + 1);
        a.push(self.a[0].clone());
        for j in 1..n {
            a.push(self.a[j].sub(&self.a[j - 1]));
        }
        a.push(self.a[n - 1].neg());
        LPoly { p: self.p, a }
    }
}

/// psi_f value class: a * tr(root sum) mod p, for psi = zeta^(a * .).
fn psi_class(ctx: &FieldCtx, value_idx: u32, psi_a: u32) -> u32 {
    (ctx.trace_idx(value_idx) * psi_a) % ctx.p
}

/// S_n(f, psi^a) = sum over alpha in F_{q^n}, g(alpha) != 0, of
/// psi(tr_{q^n/p} f(alpha))^a, exactly in Z[zeta_p] (affine sum only).
pub fn point_count_sum(fam: &CurveParams, n: usize, psi_a: u32) -> Result<CycInt> {
    let base = fam.ctx();
    let p = base.p;
    let tower = make_field(p, base.e * n)?;
    let num: Vec<u32> = fam
        .f
        .num
        .c
        .iter()
        .map(|&c| embed(&crate::gf::FieldElem { ctx: base.clone(), idx: c }, &tower).map(|e| e.idx))
        .collect::<Result<_>>()?;
    let den: Vec<u32> = fam
        .f
        .den
        .c
        .iter()
        .map(|&c| embed(&crate::gf::FieldElem { ctx: base.clone(), idx: c }, &tower).map(|e| e.idx))
        .collect::<Result<_>>()?;
    let is_poly = fam.f.is_polynomial();
    let mut counts = vec![0i64; p as usize];
    let horner = |coeffs: &[u32], x: u32| -> u32 {
        let mut acc = 0u32;
        for &c in coeffs.iter().rev() {
            acc = tower.add_idx(tower.mul_idx(acc, x), c);
        }
        acc
    };
    for alpha in 0..tower.q as u32 {
        let hv = horner(&num, alpha);
        let v = if is_poly {
            hv
        } else {
            let gv = horner(&den, alpha);
            if gv == 0 {
                continue; // pole excluded
            }
            tower.mul_idx(hv, tower.inv_idx(gv))
        };
        counts[psi_class(&tower, v, psi_a) as usize] += 1;
    }
    Ok(CycInt::from_class_counts(p, &counts))
}

/// L(u, f, psi^a) by exact power-series exponentiation of sum S_n u^n / n,
/// with integrality asserted and the two coefficients past the expected
/// degree checked to vanish. For the ordinary family with f finite at
/// infinity, the infinity place is included (its Euler factor is part of the
/// curve L-function).
pub fn l_from_point_counts(fam: &CurveParams, psi_a: u32) -> Result<LPoly> {
    let p = fam.ctx().p;
    let dd = fam.l_degree();
    let upto = dd + 2;
    let mut s = vec![CycRat::zero(p); upto + 1];
    let inf = fam.infinity_trace();
    for n in 1..=upto {
        let mut sn = point_count_sum(fam, n, psi_a)?;
        if let Some(t) = inf {
            // psi(tr f(inf))^n = zeta^(a t n)
            sn = sn.add(&CycInt::zeta_pow(p, (psi_a * t * n as u32) % p));
        }
        s[n] = sn.to_rat();
    }
    // a_n = (1/n) sum_{m<=n} S_m a_{n-m}
    let mut a = vec![CycRat::zero(p); upto + 1];
    a[0] = CycRat::one(p);
    for n in 1..=upto {
        let mut acc = CycRat::zero(p);
        for m in 1..=n {
            acc = acc.add(&s[m].mul(&a[n - m]));
        }
        let inv_n = BigRational::new(num_bigint::BigInt::one(), num_bigint::BigInt::from(n));
        a[n] = acc.scale(&inv_n);
    }
    for (n, an) in a.iter().enumerate() {
        if !an.is_integral() {
            return Err(Error::InternalConsistency(format!(
                "L coefficient a_{n} not in Z[zeta_p]"
            )));
        }
    }
    for n in dd + 1..=dd + 2 {
        if !a[n].is_zero() {
            return Err(Error::InternalConsistency(format!(
                "L coefficient a_{n} past expected degree {dd} is nonzero"
            )));
        }
    }
    Ok(LPoly {
        p,
        a: a[..=dd].iter().map(|r| r.to_int().unwrap()).collect(),
    })
}

/// psi_f(F) class (exponent of zeta) for monic F, or None when the value is
/// zero (ordinary family, gcd(F, g) != 1).
pub fn psi_f_class(fam: &CurveParams, ff: &Poly, psi_a: u32) -> Result<Option<u32>> {
    let ctx = fam.ctx();
    if ff.is_one() {
        return Ok(Some(0));
    }
    if !fam.f.is_polynomial() && !ff.gcd(&fam.f.den).is_one() {
        return Ok(None);
    }
    let rs = root_sum_eval(&fam.f, ff)?;
    Ok(Some(psi_class(ctx, rs, psi_a)))
}

/// a_j(f, psi) = sum over monic F of degree j of psi_f(F): the character-sum
/// route to the same L-polynomial. For the ordinary family the raw series is
/// the Dirichlet series of chi_f; the (1 - delta u) factor is stripped when
/// f is finite at infinity, per the correspondence.
pub fn l_from_char_sums(fam: &CurveParams, psi_a: u32) -> Result<LPoly> {
    let p = fam.ctx().p;
    let dd = fam.l_degree();
    let series_deg = match fam.kind {
        FamilyKind::Polynomial | FamilyKind::OddPolynomial => dd + 2,
        FamilyKind::Ordinary => {
            if fam.infinity_trace().is_some() {
                2 * fam.d - 1 + 1
            } else {
                dd + 2
            }
        }
    };
    let mut b = Vec::with_capacity(series_deg + 1);
    for j in 0..=series_deg {
        let mut counts = vec![0i64; p as usize];
        for ff in enumerate_monic(fam.ctx(), j) {
            if let Some(c) = psi_f_class(fam, &ff, psi_a)? {
                counts[c as usize] += 1;
            }
        }
        b.push(CycInt::from_class_counts(p, &counts));
    }
    match fam.kind {
        FamilyKind::Polynomial | FamilyKind::OddPolynomial => {
            for j in dd + 1..=series_deg {
                if !b[j].is_zero() {
                    return Err(Error::InternalConsistency(format!(
                        "char-sum coefficient a_{j} past degree {dd} is nonzero"
                    )));
                }
            }
            b.truncate(dd + 1);
            Ok(LPoly { p, a: b })
        }
        FamilyKind::Ordinary => {
            match fam.infinity_trace() {
                None => {
                    // infinity-pole subfamily: the series is the L-function
                    for j in dd + 1..=series_deg {
                        if !b[j].is_zero() {
                            return Err(Error::InternalConsistency(format!(
                                "ordinary char-sum coefficient b_{j} past degree {dd} nonzero"
                            )));
                        }
                    }
                    b.truncate(dd + 1);
                    Ok(LPoly { p, a: b })
                }
                Some(t) => {
                    // chi_f series = (1 - delta u) L: divide exactly
                    let delta = CycInt::zeta_pow(p, (t * psi_a) % p);
                    let mut a = Vec::with_capacity(dd + 1);
                    a.push(b[0].clone());
                    for j in 1..=series_deg {
                        let prev: &CycInt = &a[j - 1];
                        a.push(b[j].add(&delta.mul(prev)));
                    }
                    for item in a.iter().skip(dd + 1) {
                        if !item.is_zero() {
                            return Err(Error::InternalConsistency(
                                "(1 - delta u) division left a remainder".into(),
                            ));
                        }
                    }
                    a.truncate(dd + 1);
                    Ok(LPoly { p, a })
                }
            }
        }
    }
}

/// Recover epsilon from the top coefficient and check the functional
/// equation a_j = eps q^{j-(d-1)/2} conj(a_{d-1-j}) exactly in R.
/// Returns (epsilon, |epsilon| == 1).
pub fn functional_equation_check(l: &LPoly, q: u64) -> Result<(ExactNum, bool)> {
    let p = l.p;
    let dd = l.degree();
    if dd == 0 {
        return Ok((ExactNum::one(p, q), true));
    }
    // eps = a_D / q^{D/2}
    let eps = ExactNum::from_cyc_int(q, &l.a[dd]).mul(&ExactNum::sqrt_q_pow(p, q, -(dd as i64)));
    for j in 0..=dd {
        let lhs = ExactNum::from_cyc_int(q, &l.a[j]);
        let rhs = eps
            .mul(&ExactNum::q_power(p, q, (2 * j as i64 - dd as i64) * p as i64))
            .mul(&ExactNum::from_cyc_int(q, &l.a[dd - j]).conj());
        if lhs != rhs {
            return Err(Error::FunctionalEquationViolation(format!(
                "coefficient {j} of degree-{dd} L-polynomial"
            )));
        }
    }
    let abs2 = eps.mul(&eps.conj());
    Ok((eps, abs2 == ExactNum::one(p, q)))
}

/// Roots of the complex polynomial sum c_j u^j by Durand-Kerner.
fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(vec![]);
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let radius = 1.0
        + monic
            .iter()
            .take(n)
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(radius * 0.7, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                z[k] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let step = eval(z[k]) / denom;
            z[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-13 {
            return Ok(z);
        }
    }
    Err(Error::NumericalFailure("root finder did not converge".into()))
}

/// All complex roots of embed(L) satisfy | |u| - q^{-1/2} | < tol.
pub fn rh_check(l: &LPoly, q: u64, tol: f64) -> Result<bool> {
    if l.degree() == 0 {
        return Ok(true);
    }
    let prec = Precision::new(106);
    let coeffs: Vec<Complex64> = l.a.iter().map(|c| c.embed(&prec).to_complex64()).collect();
    let roots = polynomial_roots(&coeffs)?;
    let target = (q as f64).powf(-0.5);
    Ok(roots.iter().all(|r| (r.norm() - target).abs() < tol))
}

/// Genus of the curve y^p - y = f(x) from the pole structure:
/// (p-1)/2 * (r - 1 + sum d_j) over the r+1 geometric poles of orders d_j.
pub fn genus(f: &RatFn) -> Result<i64> {
    let p = f.num.ctx.p as i64;
    let mut poles = 0i64; // number of geometric pole points
    let mut order_sum = 0i64;
    if !f.den.is_one() {
        let (_, fac) = factorize(&f.den)?;
        for (pf, m) in fac {
            if m as i64 % p == 0 {
                return Err(Error::UnsupportedRamification(format!(
                    "pole order {m} divisible by p"
                )));
            }
            poles += pf.deg() as i64;
            order_sum += pf.deg() as i64 * m as i64;
        }
    }
    let dh = f.num.degree().map(|d| d as i64).unwrap_or(i64::MIN);
    let dg = f.den.degree().map(|d| d as i64).unwrap_or(0);
    if dh > dg {
        let ord = dh - dg;
        if ord % p == 0 {
            return Err(Error::UnsupportedRamification(format!(
                "pole order {ord} at infinity divisible by p"
            )));
        }
        poles += 1;
        order_sum += ord;
    }
    Ok((p - 1) / 2 * (poles - 2 + order_sum))
}

/// B_k(m) = sum over monic F of degree m of d_k(F) psi_f(F).
fn weighted_char_sum(fam: &CurveParams, m: usize, k: u64, psi_a: u32, require_unit_at_zero: bool) -> Result<CycInt> {
    let p = fam.ctx().p;
    let mut acc = CycInt::zero(p);
    for ff in enumerate_monic(fam.ctx(), m) {
        if require_unit_at_zero && ff.constant_term() == 0 {
            continue;
        }
        if let Some(c) = psi_f_class(fam, &ff, psi_a)? {
            let dk = divisor_k(&ff, k)? as i64;
            acc = acc.add(&CycInt::zeta_pow(p, c).mul_int(dk));
        }
    }
    Ok(acc)
}

/// Lemma 4.1 approximate functional equation, exactly in R:
/// |L(1/sqrt q, f, psi)|^{2k} equals the two double sums over monic pairs
/// cut at k(d-1) and k(d-1) - 1.
pub fn afe_absolute_identity(fam: &CurveParams, k: u64, psi_a: u32) -> Result<bool> {
    assert!(matches!(fam.kind, FamilyKind::Polynomial | FamilyKind::OddPolynomial));
    let p = fam.ctx().p;
    let q = fam.ctx().q;
    let l = l_from_char_sums(fam, psi_a)?;
    let val = l.value_at_inv_sqrt_q(q);
    let lhs = val.mul(&val.conj()).pow(k);

    let cut = (k as usize) * (fam.d - 1);
    let b: Vec<CycInt> = (0..=cut)
        .map(|m| weighted_char_sum(fam, m, k, psi_a, false))
        .collect::<Result<_>>()?;
    let mut rhs = ExactNum::zero(p, q);
    for (m, bm) in b.iter().enumerate() {
        for (l2, bl) in b.iter().enumerate() {
            if m + l2 > cut {
                continue;
            }
            let mut term = ExactNum::from_cyc_int(q, bm)
                .mul(&ExactNum::from_cyc_int(q, bl).conj())
                .mul(&ExactNum::sqrt_q_pow(p, q, -((m + l2) as i64)));
            if m + l2 <= cut - 1 {
                term = term.mul(&ExactNum::from_int(p, q, 2));
            }
            rhs = rhs.add(&term);
        }
    }
    Ok(lhs == rhs)
}

/// Lemma 5.2 approximate functional equation for the odd family, exactly in
/// R: L(1/sqrt q, chi_f)^2 equals the three-sum right side.
pub fn afe_odd_identity(fam: &CurveParams, psi_a: u32) -> Result<bool> {
    assert_eq!(fam.kind, FamilyKind::OddPolynomial);
    let p = fam.ctx().p;
    let q = fam.ctx().q;
    let d = fam.d;
    let l = l_from_char_sums(fam, psi_a)?;
    let lchi = l.mul_one_minus_u();
    let val = lchi.value_at_inv_sqrt_q(q);
    let lhs = val.mul(&val);

    // C(j) = sum over monic F of degree j, F(0) != 0, of d_2(F) chi_f(F)
    let c: Vec<CycInt> = (0..=d - 1)
        .map(|j| weighted_char_sum(fam, j, 2, psi_a, true))
        .collect::<Result<_>>()?;
    let one = ExactNum::one(p, q);
    let u = ExactNum::sqrt_q_pow(p, q, -1); // q^{-1/2}
    let mut t1 = ExactNum::zero(p, q);
    for (j, cj) in c.iter().enumerate().take(d.saturating_sub(1)) {
        t1 = t1.add(&ExactNum::from_cyc_int(q, cj).mul(&ExactNum::sqrt_q_pow(p, q, -(j as i64))));
    }
    t1 = t1.mul(&ExactNum::from_int(p, q, 2));
    let omu = one.sub(&u);
    let t2 = omu
        .mul(&omu)
        .mul(&ExactNum::from_cyc_int(q, &c[d - 1]))
        .mul(&ExactNum::sqrt_q_pow(p, q, -((d - 1) as i64)));
    let mut t3 = ExactNum::zero(p, q);
    let sqrt_q = ExactNum::sqrt_q_pow(p, q, 1);
    for (j, cj) in c.iter().enumerate().take(d.saturating_sub(1)) {
        let weight = u
            .sub(&sqrt_q)
            .scale(&BigRational::from(num_bigint::BigInt::from((d - j) as i64)))
            .sub(&ExactNum::from_int(p, q, 2));
        t3 = t3.add(&weight.mul(&ExactNum::from_cyc_int(q, cj)));
    }
    t3 = t3.mul(&ExactNum::sqrt_q_pow(p, q, -(d as i64)));
    let rhs = t1.add(&t2).add(&t3);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{enumerate_family, FamilySpec};
    use crate::gf::make_field;

    fn fam_poly(ctx: &Arc<FieldCtx>, coeffs: &[i64], d: usize, kind: FamilyKind) -> CurveParams {
        CurveParams { f: RatFn::from_poly(Poly::from_ints(ctx, coeffs)), kind, d }
    }

    #[test]
    fn s_n_of_linear_f_vanishes() {
        let f3 = make_field(3, 1).unwrap();
        let fam = fam_poly(&f3, &[0, 1], 1, FamilyKind::Polynomial);
        for n in 1..=4 {
            assert!(point_count_sum(&fam, n, 1).unwrap().is_zero());
        }
    }

    #[test]
    fn s_1_of_x_squared() {
        // sum zeta^{a^2} over F_3 = 1 + 2 zeta
        let f3 = make_field(3, 1).unwrap();
        let fam = fam_poly(&f3, &[0, 0, 1], 2, FamilyKind::Polynomial);
        let s1 = point_count_sum(&fam, 1, 1).unwrap();
        let mut expect = CycInt::zero(3);
        expect.c[0] = 1.into();
        expect.c[1] = 2.into();
        assert_eq!(s1, expect);
    }

    #[test]
    fn conj_of_s_n_is_s_n_of_minus_f() {
        let f3 = make_field(3, 1).unwrap();
        let fam = fam_poly(&f3, &[0, 2, 1, 0, 1], 4, FamilyKind::Polynomial);
        let neg = fam_poly(&f3, &[0, 1, 2, 0, 2], 4, FamilyKind::Polynomial);
        for n in 1..=3 {
            assert_eq!(
                point_count_sum(&fam, n, 1).unwrap().conj(),
                point_count_sum(&neg, n, 1).unwrap()
            );
        }
    }

    #[test]
    fn degree_one_family_has_unit_l() {
        let f3 = make_field(3, 1).unwrap();
        let fam = fam_poly(&f3, &[0, 1], 1, FamilyKind::Polynomial);
        let l = l_from_point_counts(&fam, 1).unwrap();
        assert_eq!(l.degree(), 0);
        assert_eq!(l.a[0], CycInt::one(3));
    }

    #[test]
    fn frobenius_trivial_f_has_psi_f_one() {
        // f = x^3 - x: psi_f(x - a) = psi(a^3 - a) = psi(0) = 1 for all a
        let f3 = make_field(3, 1).unwrap();
        let fam = fam_poly(&f3, &[0, 2, 0, 1], 3, FamilyKind::Polynomial);
        for a in 0..3i64 {
            let c = Poly::from_ints(&f3, &[-a, 1]);
            assert_eq!(psi_f_class(&fam, &c, 1).unwrap(), Some(0));
        }
    }

    #[test]
    fn dual_route_agreement_random_members() {
        // 50 pseudo-random f with d <= 5, q = 3
        let f3 = make_field(3, 1).unwrap();
        let mut seed = 42u64;
        let mut done = 0;
        while done < 50 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let d = 2 + (seed >> 7) as usize % 4; // 2..5
            if d % 3 == 0 {
                continue;
            }
            let mut coeffs = vec![0i64; d + 1];
            let mut s = seed;
            for (j, slot) in coeffs.iter_mut().enumerate().skip(1) {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(97);
                *slot = if j % 3 == 0 { 0 } else { (s >> 33) as i64 % 3 };
            }
            if coeffs[d] == 0 {
                coeffs[d] = 1;
            }
            s = s.wrapping_mul(6364136223846793005).wrapping_add(97);
            coeffs[0] = (s >> 22) as i64 % 3;
            let fam = fam_poly(&f3, &coeffs, d, FamilyKind::Polynomial);
            let l1 = l_from_point_counts(&fam, 1).unwrap();
            let l2 = l_from_char_sums(&fam, 1).unwrap();
            assert_eq!(l1, l2, "f = {coeffs:?}");
            done += 1;
        }
    }

    #[test]
    fn shift_law() {
        // a_j(f + b) = psi(tr b)^j a_j(f)
        let f3 = make_field(3, 1).unwrap();
        let base = [0i64, 2, 1, 0, 1];
        let l0 = l_from_char_sums(&fam_poly(&f3, &base, 4, FamilyKind::Polynomial), 1).unwrap();
        for b in 1..3i64 {
            let mut shifted = base;
            shifted[0] = b;
            let lb =
                l_from_char_sums(&fam_poly(&f3, &shifted, 4, FamilyKind::Polynomial), 1).unwrap();
            for (j, (a0, ab)) in l0.a.iter().zip(&lb.a).enumerate() {
                let tw = CycInt::zeta_pow(3, (b as u32 * j as u32) % 3);
                assert_eq!(ab, &a0.mul(&tw));
            }
        }
    }

    #[test]
    fn functional_equation_and_epsilon() {
        let f3 = make_field(3, 1).unwrap();
        // all of AS^0_2 over F_3: |eps| = 1 exactly
        let spec = FamilySpec { kind: FamilyKind::Polynomial, d: 2, p: 3, e: 1 };
        for fam in enumerate_family(&spec).unwrap() {
            let l = l_from_char_sums(&fam, 1).unwrap();
            let (_, ok) = functional_equation_check(&l, 3).unwrap();
            assert!(ok);
        }
        // odd family members have eps = 1
        let spec = FamilySpec { kind: FamilyKind::OddPolynomial, d: 5, p: 3, e: 1 };
        for fam in enumerate_family(&spec).unwrap() {
            let l = l_from_char_sums(&fam, 1).unwrap();
            let (eps, ok) = functional_equation_check(&l, 3).unwrap();
            assert!(ok);
            assert_eq!(eps, ExactNum::one(3, 3), "eps = 1 for odd members");
        }
        // degree 0 is vacuous
        let l = LPoly { p: 3, a: vec![CycInt::one(3)] };
        assert!(functional_equation_check(&l, 3).unwrap().1);
    }

    #[test]
    fn rh_holds_and_negative_control_fails() {
        let f3 = make_field(3, 1).unwrap();
        let fam = fam_poly(&f3, &[1, 2, 1, 0, 2], 4, FamilyKind::Polynomial);
        let l = l_from_point_counts(&fam, 1).unwrap();
        assert!(rh_check(&l, 3, 1e-8).unwrap());
        // L = 1 - u has its root at 1, not q^{-1/2}
        let bad = LPoly { p: 3, a: vec![CycInt::one(3), CycInt::one(3).neg()] };
        assert!(!rh_check(&bad, 3, 1e-8).unwrap());
        // L = 1 vacuous
        let unit = LPoly { p: 3, a: vec![CycInt::one(3)] };
        assert!(rh_check(&unit, 3, 1e-8).unwrap());
    }

    #[test]
    fn genus_values() {
        let f3 = make_field(3, 1).unwrap();
        // AS^0_4, p = 3: genus 3
        let f = RatFn::from_poly(Poly::from_ints(&f3, &[0, 1, 0, 0, 1]));
        assert_eq!(genus(&f).unwrap(), 3);
        // f = x: genus 0
        let f = RatFn::from_poly(Poly::from_ints(&f3, &[0, 1]));
        assert_eq!(genus(&f).unwrap(), 0);
        // ordinary d = 3: g = squarefree cubic, genus (p-1)(d-1) = 4
        let den = Poly::from_ints(&f3, &[0, 2, 0, 1]); // x(x-1)(x+1) = x^3 - x
        let f = RatFn::new(Poly::from_ints(&f3, &[1]), den).unwrap();
        assert_eq!(genus(&f).unwrap(), 4);
        // pole order divisible by p rejected
        let f = RatFn::new(Poly::from_ints(&f3, &[1]), Poly::from_ints(&f3, &[0, 0, 0, 1])).unwrap();
        assert!(genus(&f).is_err());
    }

    #[test]
    fn psi_independence_family_level() {
        // multiset of L over AS^0_2 invariant under psi -> psi^2
        let spec = FamilySpec { kind: FamilyKind::Polynomial, d: 2, p: 3, e: 1 };
        let mut l1: Vec<String> = vec![];
        let mut l2: Vec<String> = vec![];
        for fam in enumerate_family(&spec).unwrap() {
            l1.push(format!("{:?}", l_from_char_sums(&fam, 1).unwrap()));
            l2.push(format!("{:?}", l_from_char_sums(&fam, 2).unwrap()));
        }
        l1.sort();
        l2.sort();
        assert_eq!(l1, l2);
    }

    #[test]
    fn afe_identities() {
        let f3 = make_field(3, 1).unwrap();
        // k=1 over all of AS^0_2
        let spec = FamilySpec { kind: FamilyKind::Polynomial, d: 2, p: 3, e: 1 };
        for fam in enumerate_family(&spec).unwrap() {
            assert!(afe_absolute_identity(&fam, 1, 1).unwrap());
        }
        // k=2, d=2, all members
        for fam in enumerate_family(&spec).unwrap() {
            assert!(afe_absolute_identity(&fam, 2, 1).unwrap());
        }
        // k=1, d=4, a few members
        let mut seed = 9u64;
        for _ in 0..5 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(3);
            let coeffs = [
                (seed >> 10) as i64 % 3,
                (seed >> 20) as i64 % 3,
                (seed >> 30) as i64 % 3,
                0,
                1 + (seed >> 40) as i64 % 2,
            ];
            let fam = fam_poly(&f3, &coeffs, 4, FamilyKind::Polynomial);
            assert!(afe_absolute_identity(&fam, 1, 1).unwrap());
        }
        // odd AFE for all 6 members at d = 5
        let spec = FamilySpec { kind: FamilyKind::OddPolynomial, d: 5, p: 3, e: 1 };
        for fam in enumerate_family(&spec).unwrap() {
            assert!(afe_odd_identity(&fam, 1).unwrap());
        }
        // degenerate d = 1
        let fam = fam_poly(&f3, &[0, 1], 1, FamilyKind::OddPolynomial);
        assert!(afe_odd_identity(&fam, 1).unwrap());
    }

    #[test]
    fn ordinary_dual_route() {
        let f3 = make_field(3, 1).unwrap();
        // g = x(x-1) squarefree, d = 2: h of degree < 2 coprime to g, plus shifts
        let g = Poly::from_ints(&f3, &[0, 2, 1]); // x^2 + 2x = x(x+2) = x(x-1)
        for h_ints in [[1i64, 0], [1, 1], [2, 1], [1, 2]] {
            let h = Poly::from_ints(&f3, &h_ints);
            if !h.gcd(&g).is_one() {
                continue;
            }
            let fam = CurveParams {
                f: RatFn::new(h, g.clone()).unwrap(),
                kind: FamilyKind::Ordinary,
                d: 2,
            };
            let l1 = l_from_point_counts(&fam, 1).unwrap();
            let l2 = l_from_char_sums(&fam, 1).unwrap();
            assert_eq!(l1, l2, "h = {h_ints:?}");
            assert_eq!(l1.degree(), 2);
        }
        // infinity-pole member: g = x (d-1 = 1), h = x^2 + 1
        let fam = CurveParams {
            f: RatFn::new(Poly::from_ints(&f3, &[1, 0, 1]), Poly::x(&f3)).unwrap(),
            kind: FamilyKind::Ordinary,
            d: 2,
        };
        let l1 = l_from_point_counts(&fam, 1).unwrap();
        let l2 = l_from_char_sums(&fam, 1).unwrap();
        assert_eq!(l1, l2);
        assert_eq!(l1.degree(), 2);
    }
}
