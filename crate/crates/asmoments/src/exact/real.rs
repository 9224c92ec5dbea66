//! Fixed-point arbitrary-precision reals: value = mant * 2^(-bits).
//! Enough machinery to embed cyclotomic-radical numbers (pi via Machin,
//! sin/cos via Taylor, integer Newton for n-th roots). Each operation
//! truncates; callers get ~bits-32 trustworthy bits (32 guard bits are
//! added internally).

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

const GUARD: u32 = 32;

/// Working precision plus constant generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Precision {
    pub bits: u32,
}

impl Precision {
    pub fn new(bits: u32) -> Self {
        Precision { bits }
    }

    fn scale(&self) -> BigInt {
        BigInt::from(1) << (self.bits + GUARD)
    }

    /// pi at working precision (Machin's formula).
    pub fn pi(&self) -> PrecReal {
        let s = self.scale();
        let a = atan_inv(&s, 5);
        let b = atan_inv(&s, 239);
        let mant = a * 16 - b * 4;
        PrecReal { prec: self.clone(), mant }
    }

    /// exp(2 pi i / p) at working precision.
    pub fn root_of_unity(&self, p: u32) -> PrecComplex {
        let two_pi_over_p = self
            .pi()
            .mul_int(2)
            .div_int(p as i64);
        PrecComplex {
            re: two_pi_over_p.cos(),
            im: two_pi_over_p.sin(),
        }
    }

    /// Positive real n-th root of the integer q.
    pub fn nth_root(&self, q: u64, n: u32) -> PrecReal {
        let shift = self.bits + GUARD;
        // solve y^n = q * 2^(n*shift) over integers by Newton
        let target = BigInt::from(q) << (n * shift) as usize;
        let guess = (q as f64).powf(1.0 / n as f64) * 2f64.powi(shift as i32);
        let mut y = f64_to_bigint(guess);
        let n_big = BigInt::from(n);
        loop {
            // y' = ((n-1)y + target / y^(n-1)) / n
            let ypow = pow_bigint(&y, n - 1);
            if ypow.is_zero() {
                y = BigInt::from(1);
                continue;
            }
            let next = ((&n_big - 1) * &y + &target / ypow) / &n_big;
            let delta: BigInt = &next - &y;
            let diff = delta.abs();
            y = next;
            if diff <= BigInt::from(1) {
                break;
            }
        }
        // polish: ensure y = floor(root)
        while pow_bigint(&(&y + 1), n) <= target {
            y += 1;
        }
        while pow_bigint(&y, n) > target {
            y -= 1;
        }
        PrecReal { prec: self.clone(), mant: y }
    }
}

fn f64_to_bigint(x: f64) -> BigInt {
    // exact conversion through the mantissa
    if x == 0.0 {
        return BigInt::zero();
    }
    let (m, e, s) = {
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64 - 1075;
        let man = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
        (man, exp, sign)
    };
    let mut v = BigInt::from(m) * s;
    if e >= 0 {
        v <<= e as usize;
    } else {
        v >>= (-e) as usize;
    }
    v
}

fn pow_bigint(b: &BigInt, mut n: u32) -> BigInt {
    let mut r = BigInt::from(1);
    let mut base = b.clone();
    while n > 0 {
        if n & 1 == 1 {
            r *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    r
}

/// arctan(1/x) scaled by s.
fn atan_inv(s: &BigInt, x: i64) -> BigInt {
    let x2 = x * x;
    let mut term = s / x;
    let mut acc = term.clone();
    let mut k = 1i64;
    loop {
        term /= x2;
        if term.is_zero() {
            break;
        }
        let contrib = &term / (2 * k + 1);
        if k % 2 == 1 {
            acc -= contrib;
        } else {
            acc += contrib;
        }
        k += 1;
    }
    acc
}

/// Fixed-point real at a given precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecReal {
    pub prec: Precision,
    mant: BigInt,
}

impl PrecReal {
    pub fn zero(prec: Precision) -> Self {
        PrecReal { prec, mant: BigInt::zero() }
    }

    pub fn one(prec: Precision) -> Self {
        let mant = prec.scale();
        PrecReal { prec, mant }
    }

    pub fn from_rational(prec: Precision, r: &BigRational) -> Self {
        let mant = r.numer() * prec.scale() / r.denom();
        PrecReal { prec, mant }
    }

    pub fn add(&self, o: &Self) -> Self {
        PrecReal { prec: self.prec.clone(), mant: &self.mant + &o.mant }
    }

    pub fn sub(&self, o: &Self) -> Self {
        PrecReal { prec: self.prec.clone(), mant: &self.mant - &o.mant }
    }

    pub fn neg(&self) -> Self {
        PrecReal { prec: self.prec.clone(), mant: -&self.mant }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let shift = self.prec.bits + GUARD;
        PrecReal {
            prec: self.prec.clone(),
            mant: (&self.mant * &o.mant) >> shift as usize,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        PrecReal { prec: self.prec.clone(), mant: &self.mant * k }
    }

    pub fn div_int(&self, k: i64) -> Self {
        PrecReal { prec: self.prec.clone(), mant: &self.mant / k }
    }

    pub fn div(&self, o: &Self) -> Self {
        let shift = self.prec.bits + GUARD;
        PrecReal {
            prec: self.prec.clone(),
            mant: (&self.mant << shift as usize) / &o.mant,
        }
    }

    pub fn scale_rat(&self, r: &BigRational) -> Self {
        PrecReal {
            prec: self.prec.clone(),
            mant: &self.mant * r.numer() / r.denom(),
        }
    }

    pub fn abs(&self) -> Self {
        PrecReal { prec: self.prec.clone(), mant: self.mant.abs() }
    }

    /// Taylor sine; the argument is expected in [-2 pi, 2 pi].
    pub fn sin(&self) -> Self {
        let x = self.clone();
        let x2 = x.mul(&x);
        let mut term = x.clone();
        let mut acc = x;
        let mut k = 1i64;
        loop {
            term = term.mul(&x2).div_int(2 * k).div_int(2 * k + 1).neg();
            if term.mant.is_zero() {
                break;
            }
            acc = acc.add(&term);
            k += 1;
        }
        acc
    }

    /// Taylor cosine; the argument is expected in [-2 pi, 2 pi].
    pub fn cos(&self) -> Self {
        let x2 = self.mul(self);
        let mut term = PrecReal::one(self.prec.clone());
        let mut acc = term.clone();
        let mut k = 1i64;
        loop {
            term = term.mul(&x2).div_int(2 * k - 1).div_int(2 * k).neg();
            if term.mant.is_zero() {
                break;
            }
            acc = acc.add(&term);
            k += 1;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let shift = self.prec.bits + GUARD;
        bigint_to_f64_shifted(&self.mant, shift)
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }
}

fn bigint_to_f64_shifted(m: &BigInt, shift: u32) -> f64 {
    // m / 2^shift without overflow: use the top 96 bits
    if m.is_zero() {
        return 0.0;
    }
    let bits = m.bits() as i64;
    let drop = (bits - 96).max(0);
    let top = (m >> drop as usize).to_f64().unwrap_or(0.0);
    top * 2f64.powi((drop - shift as i64) as i32)
}

/// Fixed-point complex value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecComplex {
    pub re: PrecReal,
    pub im: PrecReal,
}

impl PrecComplex {
    pub fn zero(prec: Precision) -> Self {
        PrecComplex { re: PrecReal::zero(prec.clone()), im: PrecReal::zero(prec) }
    }

    pub fn one(prec: Precision) -> Self {
        PrecComplex { re: PrecReal::one(prec.clone()), im: PrecReal::zero(prec) }
    }

    pub fn from_real(re: PrecReal) -> Self {
        let prec = re.prec.clone();
        PrecComplex { re, im: PrecReal::zero(prec) }
    }

    pub fn add(&self, o: &Self) -> Self {
        PrecComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        PrecComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        PrecComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale_rat(&self, r: &BigRational) -> Self {
        PrecComplex { re: self.re.scale_rat(r), im: self.im.scale_rat(r) }
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_and_trig() {
        let prec = Precision::new(106);
        let pi = prec.pi();
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let z3 = prec.root_of_unity(3);
        assert!((z3.re.to_f64() + 0.5).abs() < 1e-15);
        assert!((z3.im.to_f64() - 0.8660254037844386).abs() < 1e-15);
        let z5 = prec.root_of_unity(5).to_complex64();
        assert!((z5.powi(5) - num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn roots() {
        let prec = Precision::new(106);
        let r = prec.nth_root(3, 6);
        assert!((r.to_f64() - 3f64.powf(1.0 / 6.0)).abs() < 1e-15);
        let s = prec.nth_root(9, 6);
        assert!((s.to_f64().powi(3) - 3.0).abs() < 1e-13);
    }
}
