//! Exact arithmetic in Z[zeta_p], Q(zeta_p), and the radical ring
//! R = Q(zeta_p)[t]/(t^{2p} - q), where t embeds to the positive real
//! q^{1/(2p)}. So sqrt(q) = t^p and q^{1/p} = t^2, and every radical quantity
//! in the moment formulas lives in R.
//!
//! R need not be a field (t^{2p} - q can factor over Q(zeta_p), e.g. q = 9,
//! p = 3); division solves a linear system over Q and reports a
//! non-field-configuration error when the divisor is a zero divisor.

pub mod real;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use real::{PrecComplex, PrecReal};

/// An element of Z[zeta_p] in the power basis 1, zeta, ..., zeta^{p-2},
/// reduced with zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    pub p: u32,
    pub c: Vec<BigInt>,
}

impl std::fmt::Debug for CycInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycInt{:?}", self.c.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt { p, c: vec![BigInt::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u32) -> Self {
        let mut z = Self::zero(p);
        z.c[0] = BigInt::one();
        z
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        let mut z = Self::zero(p);
        z.c[0] = BigInt::from(n);
        z
    }

    /// zeta_p^k, k arbitrary.
    pub fn zeta_pow(p: u32, k: u32) -> Self {
        let k = k % p;
        let mut z = Self::zero(p);
        if k < p - 1 {
            z.c[k as usize] = BigInt::one();
        } else {
            // zeta^{p-1} = -(1 + ... + zeta^{p-2})
            for v in z.c.iter_mut() {
                *v = -BigInt::one();
            }
        }
        z
    }

    /// Build sum_{c mod p} counts[c] * zeta^c from class counts.
    pub fn from_class_counts(p: u32, counts: &[i64]) -> Self {
        debug_assert_eq!(counts.len(), p as usize);
        let mut z = Self::zero(p);
        for i in 0..(p - 1) as usize {
            z.c[i] = BigInt::from(counts[i]) - BigInt::from(counts[(p - 1) as usize]);
        }
        z
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        CycInt {
            p: self.p,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        CycInt {
            p: self.p,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycInt { p: self.p, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let p = self.p as usize;
        // convolve into exponents 0..2p-4, reduce zeta^k for k >= p-1
        let mut acc = vec![BigInt::zero(); 2 * p - 3];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] += a * b;
            }
        }
        let mut out = vec![BigInt::zero(); p - 1];
        for (k, v) in acc.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let k = k % p; // zeta^p = 1
            if k < p - 1 {
                out[k] += v;
            } else {
                for slot in out.iter_mut() {
                    *slot -= &v;
                }
            }
        }
        CycInt { p: self.p, c: out }
    }

    pub fn mul_int(&self, n: i64) -> Self {
        CycInt { p: self.p, c: self.c.iter().map(|a| a * n).collect() }
    }

    /// Galois conjugation zeta -> zeta^{-1} (complex conjugation).
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut out = vec![BigInt::zero(); p - 1];
        for (k, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let k = (p - k % p) % p; // zeta^k -> zeta^{p-k}
            if k < p - 1 {
                out[k] += v;
            } else {
                for slot in out.iter_mut() {
                    *slot -= v;
                }
            }
        }
        CycInt { p: self.p, c: out }
    }

    pub fn to_rat(&self) -> CycRat {
        CycRat {
            p: self.p,
            c: self.c.iter().map(|a| BigRational::from(a.clone())).collect(),
        }
    }

    pub fn embed(&self, prec: &real::Precision) -> PrecComplex {
        self.to_rat().embed(prec)
    }
}

/// An element of Q(zeta_p) in the same basis.
#[derive(Clone, PartialEq, Eq)]
pub struct CycRat {
    pub p: u32,
    pub c: Vec<BigRational>,
}

impl std::fmt::Debug for CycRat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycRat{:?}", self.c.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

impl CycRat {
    pub fn zero(p: u32) -> Self {
        CycRat { p, c: vec![BigRational::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u32) -> Self {
        let mut z = Self::zero(p);
        z.c[0] = BigRational::one();
        z
    }

    pub fn from_rational(p: u32, r: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.c[0] = r;
        z
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        CycRat {
            p: self.p,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CycRat {
            p: self.p,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycRat { p: self.p, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p as usize;
        let mut acc = vec![BigRational::zero(); 2 * p - 3];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] += a * b;
            }
        }
        let mut out = vec![BigRational::zero(); p - 1];
        for (k, v) in acc.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let k = k % p;
            if k < p - 1 {
                out[k] += v;
            } else {
                for slot in out.iter_mut() {
                    *slot -= &v;
                }
            }
        }
        CycRat { p: self.p, c: out }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycRat { p: self.p, c: self.c.iter().map(|a| a * r).collect() }
    }

    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut out = vec![BigRational::zero(); p - 1];
        for (k, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let k = (p - k % p) % p;
            if k < p - 1 {
                out[k] += v;
            } else {
                for slot in out.iter_mut() {
                    *slot -= v;
                }
            }
        }
        CycRat { p: self.p, c: out }
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|r| r.is_integer())
    }

    pub fn to_int(&self) -> Option<CycInt> {
        if !self.is_integral() {
            return None;
        }
        Some(CycInt {
            p: self.p,
            c: self.c.iter().map(|r| r.to_integer()).collect(),
        })
    }

    pub fn embed(&self, prec: &real::Precision) -> PrecComplex {
        let zeta = prec.root_of_unity(self.p);
        let mut acc = PrecComplex::zero(prec.clone());
        let mut pw = PrecComplex::one(prec.clone());
        for coeff in &self.c {
            acc = acc.add(&pw.scale_rat(coeff));
            pw = pw.mul(&zeta);
        }
        acc
    }
}

/// Configurable-precision complex value; see [`real`].
pub type ComplexVal = PrecComplex;

/// An element of R = Q(zeta_p)[t]/(t^{2p} - q): coefficients of t^0..t^{2p-1}
/// over Q(zeta_p).
#[derive(Clone, PartialEq, Eq)]
pub struct ExactNum {
    pub p: u32,
    pub q: u64,
    pub c: Vec<CycRat>,
}

impl std::fmt::Debug for ExactNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExactNum(p={}, q={})[", self.p, self.q)?;
        for (i, t) in self.c.iter().enumerate() {
            if !t.is_zero() {
                write!(f, " t^{i}*{t:?}")?;
            }
        }
        write!(f, " ]")
    }
}

impl ExactNum {
    pub fn zero(p: u32, q: u64) -> Self {
        ExactNum { p, q, c: vec![CycRat::zero(p); 2 * p as usize] }
    }

    pub fn one(p: u32, q: u64) -> Self {
        let mut z = Self::zero(p, q);
        z.c[0] = CycRat::one(p);
        z
    }

    pub fn from_cyc(p: u32, q: u64, x: &CycRat) -> Self {
        let mut z = Self::zero(p, q);
        z.c[0] = x.clone();
        z
    }

    pub fn from_cyc_int(q: u64, x: &CycInt) -> Self {
        Self::from_cyc(x.p, q, &x.to_rat())
    }

    pub fn from_rational(p: u32, q: u64, r: BigRational) -> Self {
        Self::from_cyc(p, q, &CycRat::from_rational(p, r))
    }

    pub fn from_int(p: u32, q: u64, n: i64) -> Self {
        Self::from_rational(p, q, BigRational::from(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert!(self.p == o.p && self.q == o.q);
        ExactNum {
            p: self.p,
            q: self.q,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ExactNum {
            p: self.p,
            q: self.q,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ExactNum { p: self.p, q: self.q, c: self.c.iter().map(|a| a.neg()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert!(self.p == o.p && self.q == o.q);
        let n = 2 * self.p as usize;
        let qrat = BigRational::from(BigInt::from(self.q));
        let mut acc = vec![CycRat::zero(self.p); 2 * n - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] = acc[i + j].add(&a.mul(b));
            }
        }
        let mut out = vec![CycRat::zero(self.p); n];
        for (k, v) in acc.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if k < n {
                out[k] = out[k].add(&v);
            } else {
                // t^{2p} = q
                out[k - n] = out[k - n].add(&v.scale(&qrat));
            }
        }
        ExactNum { p: self.p, q: self.q, c: out }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        ExactNum { p: self.p, q: self.q, c: self.c.iter().map(|a| a.scale(r)).collect() }
    }

    /// Complex conjugation: zeta -> zeta^{-1}, t fixed (t is real positive).
    pub fn conj(&self) -> Self {
        ExactNum { p: self.p, q: self.q, c: self.c.iter().map(|a| a.conj()).collect() }
    }

    /// q^{num/(2p)} as an element of R (num may be negative).
    pub fn q_power(p: u32, q: u64, num: i64) -> Self {
        let n = 2 * p as i64;
        let mut k = num.rem_euclid(n);
        let mut scale_pow = (num - k) / n; // num = n*scale_pow + k
        let mut z = Self::zero(p, q);
        z.c[k as usize] = CycRat::one(p);
        let mut r = BigRational::one();
        let qq = BigInt::from(q);
        while scale_pow > 0 {
            r *= BigRational::from(qq.clone());
            scale_pow -= 1;
        }
        while scale_pow < 0 {
            r /= BigRational::from(qq.clone());
            scale_pow += 1;
        }
        k = 0;
        let _ = k;
        z.c = z.c.into_iter().map(|v| v.scale(&r)).collect();
        z
    }

    /// sqrt(q)^k = t^{pk}.
    pub fn sqrt_q_pow(p: u32, q: u64, k: i64) -> Self {
        Self::q_power(p, q, k * p as i64)
    }

    /// zeta_p^k as an element of R.
    pub fn zeta_pow(p: u32, q: u64, k: u32) -> Self {
        Self::from_cyc(p, q, &CycInt::zeta_pow(p, k).to_rat())
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut r = Self::one(self.p, self.q);
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        r
    }

    /// Flat coordinates (length 2p(p-1)) in the basis t^i zeta^j.
    fn flat(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(2 * self.p as usize * (self.p - 1) as usize);
        for t in &self.c {
            out.extend(t.c.iter().cloned());
        }
        out
    }

    fn from_flat(p: u32, q: u64, v: &[BigRational]) -> Self {
        let m = (p - 1) as usize;
        let c = v
            .chunks(m)
            .map(|ch| CycRat { p, c: ch.to_vec() })
            .collect();
        ExactNum { p, q, c }
    }

    /// Exact division; errors if `b` is zero or a zero divisor in R.
    pub fn div(&self, b: &Self) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // solve M_b x = a where M_b is multiplication by b on the flat basis
        let p = self.p;
        let dim = 2 * p as usize * (p - 1) as usize;
        let mut cols = Vec::with_capacity(dim);
        for i in 0..2 * p as usize {
            for j in 0..(p - 1) as usize {
                let mut basis = Self::zero(p, self.q);
                basis.c[i].c[j] = BigRational::one();
                cols.push(b.mul(&basis).flat());
            }
        }
        // gaussian elimination on [M | a]
        let mut m = vec![vec![BigRational::zero(); dim + 1]; dim];
        for (ci, col) in cols.iter().enumerate() {
            for r in 0..dim {
                m[r][ci] = col[r].clone();
            }
        }
        let a = self.flat();
        for r in 0..dim {
            m[r][dim] = a[r].clone();
        }
        for col in 0..dim {
            let piv = (col..dim).find(|&r| !m[r][col].is_zero());
            let piv = match piv {
                Some(r) => r,
                None => {
                    return Err(Error::NonFieldConfiguration(format!(
                        "divisor is a zero divisor in Q(zeta_{p})[t]/(t^{} - {})",
                        2 * p, self.q
                    )))
                }
            };
            m.swap(col, piv);
            let inv = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &inv;
            }
            for r in 0..dim {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for cc in col..=dim {
                        let sub = &m[col][cc] * &f;
                        m[r][cc] -= sub;
                    }
                }
            }
        }
        let x: Vec<BigRational> = (0..dim).map(|r| m[r][dim].clone()).collect();
        let res = Self::from_flat(p, self.q, &x);
        debug_assert!(res.mul(b).sub(self).is_zero());
        Ok(res)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one(self.p, self.q).div(self)
    }

    /// Evaluate at zeta_p = exp(2 pi i / p), t = q^{1/(2p)} > 0.
    pub fn embed(&self, prec: &real::Precision) -> PrecComplex {
        let zeta = prec.root_of_unity(self.p);
        let t = prec.nth_root(self.q, 2 * self.p);
        let mut acc = PrecComplex::zero(prec.clone());
        let mut tp = PrecReal::one(prec.clone());
        for coeff in &self.c {
            let mut zp = PrecComplex::from_real(tp.clone());
            for r in &coeff.c {
                acc = acc.add(&zp.scale_rat(r));
                zp = zp.mul(&zeta);
            }
            tp = tp.mul(&t);
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let prec = real::Precision::new(106);
        let v = self.embed(&prec);
        (v.re.to_f64(), v.im.to_f64())
    }

    /// Lossless serialization as nested rational strings: c[i][j] = num/den.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self
            .c
            .iter()
            .map(|t| t.c.iter().map(|r| r.to_string()).collect())
            .collect();
        serde_json::json!({ "p": self.p, "q": self.q, "t_coords": rows })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let p = v.get("p")?.as_u64()? as u32;
        let q = v.get("q")?.as_u64()?;
        let rows = v.get("t_coords")?.as_array()?;
        let mut c = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array()?;
            let mut cr = Vec::with_capacity(row.len());
            for s in row {
                cr.push(parse_rational(s.as_str()?)?);
            }
            c.push(CycRat { p, c: cr });
        }
        Some(ExactNum { p, q, c })
    }

    /// Decimal rendering of the real embedding to 15 significant digits.
    pub fn to_decimal_string(&self) -> String {
        let (re, im) = self.to_f64();
        if im.abs() < 1e-30 || im.abs() < re.abs() * 1e-18 {
            format!("{re:.15e}")
        } else {
            format!("{re:.15e}{im:+.15e}i")
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        Some(BigRational::new(n.parse().ok()?, d.parse().ok()?))
    } else {
        Some(BigRational::from(s.parse::<BigInt>().ok()?))
    }
}

/// Exact division in Q(zeta_p) via the R machinery is overkill; CycRat gets
/// its own inverse through the norm when needed.
pub fn cyc_div(a: &CycRat, b: &CycRat, q_context: u64) -> Result<CycRat> {
    let ea = ExactNum::from_cyc(a.p, q_context, a);
    let eb = ExactNum::from_cyc(b.p, q_context, b);
    let r = ea.div(&eb)?;
    for t in &r.c[1..] {
        if !t.is_zero() {
            return Err(Error::InternalConsistency("cyc_div left the subfield".into()));
        }
    }
    Ok(r.c[0].clone())
}

/// Conjugation operation on CycInt, exposed with the spec's name.
pub fn cyc_conj(x: &CycInt) -> CycInt {
    x.conj()
}

/// Exact division in R, exposed with the spec's name.
pub fn exact_div(a: &ExactNum, b: &ExactNum) -> Result<ExactNum> {
    a.div(b)
}

/// Complex embedding at a given binary precision (>= 53 bits).
pub fn embed_complex(x: &ExactNum, precision_bits: u32) -> Result<ComplexVal> {
    if precision_bits < 53 {
        return Err(Error::RejectedParameter("precision must be >= 53 bits".into()));
    }
    Ok(x.embed(&real::Precision::new(precision_bits)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn conj_basics() {
        assert_eq!(cyc_conj(&CycInt::one(3)), CycInt::one(3));
        // conj(zeta_3) = zeta_3^2 = -1 - zeta_3
        let z = CycInt::zeta_pow(3, 1);
        let c = cyc_conj(&z);
        assert_eq!(c.c, vec![BigInt::from(-1), BigInt::from(-1)]);
        // involution
        assert_eq!(cyc_conj(&c), z);
    }

    #[test]
    fn conj_gives_modulus_squared() {
        let prec = real::Precision::new(80);
        let mut state = 1234567u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let a = (state >> 5) as i64 % 10;
            let b = (state >> 20) as i64 % 10;
            let x = CycInt { p: 5, c: vec![a.into(), b.into(), 3.into(), (-2).into()] };
            let m2 = x.mul(&cyc_conj(&x));
            let e = x.embed(&prec);
            let norm = e.re.mul(&e.re).add(&e.im.mul(&e.im)).to_f64();
            let (mre, mim) = (m2.embed(&prec).re.to_f64(), m2.embed(&prec).im.to_f64());
            assert!((mre - norm).abs() < 1e-9 && mim.abs() < 1e-9);
        }
    }

    #[test]
    fn galois_sum() {
        // sum_j zeta^{jn} = p * [p | n]
        for p in [3u32, 5] {
            for n in 0..2 * p {
                let mut s = CycInt::zero(p);
                for j in 0..p {
                    s = s.add(&CycInt::zeta_pow(p, j * n));
                }
                let expect = if n % p == 0 { CycInt::from_int(p, p as i64) } else { CycInt::zero(p) };
                assert_eq!(s, expect, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn minimal_polynomial_relations() {
        // Phi_p(zeta) = 0 and t^{2p} = q as ExactNum identities
        for (p, q) in [(3u32, 3u64), (3, 9), (5, 5)] {
            let mut phi = ExactNum::zero(p, q);
            for k in 0..p {
                phi = phi.add(&ExactNum::zeta_pow(p, q, k));
            }
            assert!(phi.is_zero());
            let t = ExactNum::q_power(p, q, 1);
            let lhs = t.pow(2 * p as u64);
            assert_eq!(lhs, ExactNum::from_int(p, q, q as i64));
        }
    }

    #[test]
    fn division_and_radicals() {
        for (p, q) in [(3u32, 3u64), (3, 9), (5, 5)] {
            // (t^p)^2 / q = 1
            let sq = ExactNum::sqrt_q_pow(p, q, 1);
            let qn = ExactNum::from_int(p, q, q as i64);
            assert_eq!(sq.mul(&sq).div(&qn).unwrap(), ExactNum::one(p, q));
            // a/a = 1
            let a = ExactNum::q_power(p, q, 3)
                .add(&ExactNum::zeta_pow(p, q, 1).scale(&rat(7, 2)));
            assert_eq!(a.div(&a).unwrap(), ExactNum::one(p, q));
            // 1/(1 - t^p zeta) * (1 - t^p zeta) = 1
            let b = ExactNum::one(p, q)
                .sub(&ExactNum::sqrt_q_pow(p, q, 1).mul(&ExactNum::zeta_pow(p, q, 1)));
            let binv = b.inv().unwrap();
            assert_eq!(binv.mul(&b), ExactNum::one(p, q));
        }
        let z = ExactNum::zero(3, 3);
        assert!(matches!(z.inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn zero_divisor_detected_for_q9() {
        // t^6 - 9 = (t^3-3)(t^3+3) over Q(zeta_3): t^3 - 3 is a zero divisor
        let d = ExactNum::sqrt_q_pow(3, 9, 1).sub(&ExactNum::from_int(3, 9, 3));
        assert!(matches!(
            ExactNum::one(3, 9).div(&d),
            Err(Error::NonFieldConfiguration(_))
        ));
    }

    #[test]
    fn embedding_values() {
        // t^p = sqrt(3) for q = 3
        let v = embed_complex(&ExactNum::sqrt_q_pow(3, 3, 1), 106).unwrap();
        assert!((v.re.to_f64() - 3f64.sqrt()).abs() < 1e-15);
        assert!(v.im.to_f64().abs() < 1e-15);
        // 1 + zeta_3 = 0.5 + 0.866...i
        let w = ExactNum::one(3, 3).add(&ExactNum::zeta_pow(3, 3, 1));
        let e = embed_complex(&w, 106).unwrap();
        assert!((e.re.to_f64() - 0.5).abs() < 1e-15);
        assert!((e.im.to_f64() - 0.8660254037844386).abs() < 1e-15);
        assert!(embed_complex(&w, 52).is_err());
    }

    #[test]
    fn embed_respects_division() {
        let prec = real::Precision::new(106);
        let mut state = 99u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 7) - 3
        };
        for _ in 0..100 {
            let mut a = ExactNum::zero(3, 3);
            let mut b = ExactNum::zero(3, 3);
            for i in 0..6 {
                a.c[i] = CycRat { p: 3, c: vec![rat(next(), 1), rat(next(), 1)] };
                b.c[i] = CycRat { p: 3, c: vec![rat(next(), 1), rat(next(), 1)] };
            }
            if b.is_zero() {
                continue;
            }
            let r = match a.div(&b) {
                Ok(r) => r,
                Err(_) => continue,
            };
            let ea = a.embed(&prec).to_complex64();
            let eb = b.embed(&prec).to_complex64();
            let er = r.embed(&prec).to_complex64();
            let expect = ea / eb;
            let denom = expect.norm().max(1.0);
            assert!((er - expect).norm() / denom < 1e-12);
        }
    }

    #[test]
    fn ring_axioms_randomized() {
        let mut state = 7u64;
        let mut next = || {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            ((state >> 40) as i64 % 9) - 4
        };
        for _ in 0..50 {
            let mk = |next: &mut dyn FnMut() -> i64| {
                let mut a = ExactNum::zero(5, 5);
                for i in 0..10 {
                    a.c[i] = CycRat {
                        p: 5,
                        c: (0..4).map(|_| rat(next(), 1)).collect(),
                    };
                }
                a
            };
            let a = mk(&mut next);
            let b = mk(&mut next);
            let c = mk(&mut next);
            assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b), b.mul(&a));
        }
    }

    #[test]
    fn json_round_trip() {
        let a = ExactNum::q_power(3, 3, -5).add(&ExactNum::zeta_pow(3, 3, 2).scale(&rat(22, 7)));
        let j = a.to_json();
        let b = ExactNum::from_json(&j).unwrap();
        assert_eq!(a, b);
        let _ = a.to_f64().0.to_f64();
    }
}
