//! Dense polynomials and rational functions over F_q: enumeration of monics,
//! deterministic factorization, the arithmetic functions d_k / mu / phi /
//! square-free, root symmetric sums (companion matrices and Newton power
//! sums), and irreducibility machinery.

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use std::sync::Arc;

/// Dense polynomial over F_q, constant coefficient first, trailing zeros
/// trimmed. The zero polynomial has an empty vector (degree() = None).
#[derive(Clone)]
pub struct Poly {
    pub ctx: Arc<FieldCtx>,
    pub c: Vec<u32>, // packed field-element indices
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.c == other.c
    }
}
impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl Poly {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        Poly { ctx: ctx.clone(), c: vec![] }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Poly { ctx: ctx.clone(), c: vec![1] }
    }

    pub fn x(ctx: &Arc<FieldCtx>) -> Self {
        Poly { ctx: ctx.clone(), c: vec![0, 1] }
    }

    pub fn from_indices(ctx: &Arc<FieldCtx>, c: Vec<u32>) -> Self {
        let mut p = Poly { ctx: ctx.clone(), c };
        p.trim();
        p
    }

    /// Constant-first coefficients given as integers (prime subfield).
    pub fn from_ints(ctx: &Arc<FieldCtx>, c: &[i64]) -> Self {
        let c = c.iter().map(|&v| v.rem_euclid(ctx.p as i64) as u32).collect();
        Poly::from_indices(ctx, c)
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }

    pub fn constant_term(&self) -> u32 {
        self.c.first().copied().unwrap_or(0)
    }

    pub fn leading(&self) -> u32 {
        *self.c.last().expect("leading of zero")
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let f = &self.ctx;
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(f.add_idx(self.coeff(i), o.coeff(i)));
        }
        Poly::from_indices(f, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.ctx;
        Poly::from_indices(f, self.c.iter().map(|&a| f.neg_idx(a)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let f = &self.ctx;
        let mut c = vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                if b != 0 {
                    c[i + j] = f.add_idx(c[i + j], f.mul_idx(a, b));
                }
            }
        }
        Poly::from_indices(f, c)
    }

    pub fn scale(&self, k: u32) -> Poly {
        let f = &self.ctx;
        Poly::from_indices(f, self.c.iter().map(|&a| f.mul_idx(a, k)).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = &self.ctx;
        if self.c.len() < d.c.len() {
            return (Poly::zero(f), self.clone());
        }
        let inv_lead = f.inv_idx(d.leading());
        let mut rem = self.c.clone();
        let mut quo = vec![0u32; self.c.len() - d.c.len() + 1];
        while rem.len() >= d.c.len() {
            let lead = *rem.last().unwrap();
            if lead != 0 {
                let c = f.mul_idx(lead, inv_lead);
                let k = rem.len() - d.c.len();
                quo[k] = c;
                for (i, &dc) in d.c.iter().enumerate() {
                    if dc != 0 {
                        rem[k + i] = f.add_idx(rem[k + i], f.neg_idx(f.mul_idx(c, dc)));
                    }
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
        }
        (Poly::from_indices(f, quo), Poly::from_indices(f, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divmod(d).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.ctx.inv_idx(self.leading()))
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.ctx;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| {
                let k = (i as u64 % f.p as u64) as i64;
                f.mul_idx(a, f.from_int(k).idx)
            })
            .collect();
        Poly::from_indices(f, c)
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut r = Poly::one(&self.ctx);
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

    pub fn pow_mod(&self, mut k: u64, m: &Poly) -> Poly {
        let mut r = Poly::one(&self.ctx);
        let mut b = self.rem(m);
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            k >>= 1;
        }
        r
    }

    /// Evaluate at a base-field point (packed index).
    pub fn eval_idx(&self, x: u32) -> u32 {
        let f = &self.ctx;
        let mut acc = 0u32;
        for &c in self.c.iter().rev() {
            acc = f.add_idx(f.mul_idx(acc, x), c);
        }
        acc
    }

    /// Reverse the coefficients (x^deg * f(1/x)) and make monic.
    /// Requires a nonzero constant term.
    pub fn reverse_monic(&self) -> Poly {
        assert!(self.constant_term() != 0, "reverse needs f(0) != 0");
        let mut c: Vec<u32> = self.c.iter().rev().copied().collect();
        let f = &self.ctx;
        let inv = f.inv_idx(c.last().copied().unwrap());
        for a in c.iter_mut() {
            *a = f.mul_idx(*a, inv);
        }
        Poly::from_indices(f, c)
    }

    /// Substitute x -> x^k.
    pub fn compose_xk(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0u32; (self.c.len() - 1) * k + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[i * k] = a;
        }
        Poly::from_indices(&self.ctx, c)
    }
}

/// Reduced rational function h/g with g monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::RejectedParameter("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (num, _) = num.divmod(&g);
        let (den, _) = den.divmod(&g);
        let lead_inv = den.ctx.inv_idx(den.leading());
        Ok(RatFn { num: num.scale(lead_inv), den: den.monic() })
    }

    pub fn from_poly(p: Poly) -> RatFn {
        let one = Poly::one(&p.ctx);
        RatFn { num: p, den: one }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
}

/// Iterator over the q^n monic polynomials of degree n, in lexicographic
/// order of the coefficient vector (low coefficient varies fastest is NOT
/// the order here: index i maps to digits of i, least significant digit at
/// the constant coefficient). Seekable by index for parallel sharding.
pub struct MonicIter {
    ctx: Arc<FieldCtx>,
    n: usize,
    idx: u64,
    count: u64,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.idx >= self.count {
            return None;
        }
        let p = monic_by_index(&self.ctx, self.n, self.idx);
        self.idx += 1;
        Some(p)
    }
}

/// The idx-th monic polynomial of degree n (base-q digits of idx are the
/// low coefficients).
pub fn monic_by_index(ctx: &Arc<FieldCtx>, n: usize, idx: u64) -> Poly {
    let q = ctx.q;
    let mut c = vec![0u32; n + 1];
    let mut t = idx;
    for slot in c.iter_mut().take(n) {
        *slot = (t % q) as u32;
        t /= q;
    }
    c[n] = 1;
    Poly { ctx: ctx.clone(), c }
}

/// Stream of all monic polynomials of degree n over F_q.
pub fn enumerate_monic(ctx: &Arc<FieldCtx>, n: usize) -> MonicIter {
    let count = (ctx.q as u64).pow(n as u32);
    MonicIter { ctx: ctx.clone(), n, idx: 0, count }
}

pub fn monic_count(ctx: &Arc<FieldCtx>, n: usize) -> u64 {
    (ctx.q as u64).pow(n as u32)
}

/// Rabin irreducibility test.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let q = f.ctx.q;
    let x = Poly::x(&f.ctx);
    // x^{q^k} mod f iteratively
    let mut xq = x.clone();
    let mut frob = Vec::with_capacity(n);
    for _ in 0..n {
        xq = xq.pow_mod(q, f);
        frob.push(xq.clone());
    }
    // x^{q^n} == x
    if frob[n - 1] != x.rem(f) {
        return false;
    }
    // gcd(x^{q^{n/ell}} - x, f) = 1 for each prime ell | n
    let mut m = n;
    let mut primes = vec![];
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            primes.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for ell in primes {
        let g = frob[n / ell - 1].sub(&x).gcd(f);
        if !g.is_one() {
            return false;
        }
    }
    true
}

/// All monic irreducibles of degree 1..=max_deg, ascending by (degree, index).
pub fn irreducibles_up_to(ctx: &Arc<FieldCtx>, max_deg: usize) -> Vec<Poly> {
    let mut out = vec![];
    for n in 1..=max_deg {
        for f in enumerate_monic(ctx, n) {
            // cheap prefilter: no roots in F_q for n >= 2
            if n >= 2 {
                let mut has_root = false;
                for a in 0..ctx.q as u32 {
                    if f.eval_idx(a) == 0 {
                        has_root = true;
                        break;
                    }
                }
                if has_root {
                    continue;
                }
            }
            if is_irreducible(&f) {
                out.push(f);
            }
        }
    }
    out
}

/// Number of monic irreducibles of degree n over F_q:
/// (1/n) sum_{d | n} mu(d) q^{n/d}.
pub fn irreducible_count(q: u64, n: u64) -> u64 {
    let mut s: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            let m = int_moebius(d);
            if m != 0 {
                s += m as i128 * (q as i128).pow((n / d) as u32);
            }
        }
    }
    (s / n as i128) as u64
}

fn int_moebius(mut n: u64) -> i64 {
    let mut m = 1i64;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            m = -m;
        }
        d += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Factorization: square-free + distinct-degree + deterministic equal-degree
/// splitting. Returns monic irreducible factors with multiplicities and the
/// leading unit.
pub fn factorize(f: &Poly) -> Result<(u32, Vec<(Poly, usize)>)> {
    if f.is_zero() {
        return Err(Error::RejectedParameter("factorize(0)".into()));
    }
    let unit = f.leading();
    let mut out: Vec<(Poly, usize)> = vec![];
    factor_rec(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| (a.0.c.len(), &a.0.c).cmp(&(b.0.c.len(), &b.0.c)));
    // merge duplicates
    let mut merged: Vec<(Poly, usize)> = vec![];
    for (p, m) in out {
        if let Some(last) = merged.last_mut() {
            if last.0 == p {
                last.1 += m;
                continue;
            }
        }
        merged.push((p, m));
    }
    Ok((unit, merged))
}

fn factor_rec(f: &Poly, mult: usize, out: &mut Vec<(Poly, usize)>) {
    if f.is_one() {
        return;
    }
    let der = f.derivative();
    if der.is_zero() {
        // f = g(x^p) = (frobenius-adjusted g)^p in F_q
        let p = f.ctx.p as usize;
        let e = f.ctx.e;
        let root_pow = (f.ctx.q / f.ctx.p as u64) as u64; // q/p = p^{e-1}
        let mut g = vec![0u32; (f.c.len() - 1) / p + 1];
        for (i, slot) in g.iter_mut().enumerate() {
            let c = f.coeff(i * p);
            // p-th root of a coefficient: c^(q/p) since c^q = c
            *slot = f.ctx.pow_idx(c, root_pow.pow(1));
            let _ = e;
        }
        let g = Poly::from_indices(&f.ctx, g);
        factor_rec(&g, mult * p, out);
        return;
    }
    let g = f.gcd(&der);
    if !g.is_one() {
        // square-free part, then recurse on the cofactor
        let (h, _) = f.divmod(&g);
        factor_squarefree(&h, mult, out);
        let (rest, r) = f.divmod(&h);
        debug_assert!(r.is_zero());
        factor_rec(&rest, mult, out);
        return;
    }
    factor_squarefree(f, mult, out);
}

/// Distinct-degree then equal-degree splitting of a square-free monic f.
fn factor_squarefree(f: &Poly, mult: usize, out: &mut Vec<(Poly, usize)>) {
    let mut f = f.clone();
    let q = f.ctx.q;
    let x = Poly::x(&f.ctx);
    let mut d = 1usize;
    let mut xq = x.clone();
    while f.degree().unwrap_or(0) >= 2 * d {
        xq = xq.pow_mod(q, &f);
        let g = xq.sub(&x).gcd(&f);
        if !g.is_one() {
            equal_degree(&g, d, mult, out);
            let (fq, r) = f.divmod(&g);
            debug_assert!(r.is_zero());
            f = fq;
            xq = xq.rem(&f);
        }
        d += 1;
    }
    if !f.is_one() {
        out.push((f, mult));
    }
}

/// Deterministic equal-degree splitting: try a fixed sequence of elements
/// h and split with gcd(h^{(q^d-1)/2} - 1, f).
fn equal_degree(f: &Poly, d: usize, mult: usize, out: &mut Vec<(Poly, usize)>) {
    let deg = f.deg();
    if deg == d {
        out.push((f.clone(), mult));
        return;
    }
    let q = f.ctx.q;
    let e = ((q as u128).pow(d as u32) - 1) / 2;
    // deterministic trial sequence: x+1, x+2, ..., then degree-2 polys, ...
    let mut trial_idx = 0u64;
    loop {
        trial_idx += 1;
        let tdeg = 1 + (trial_idx / (q * 4)) as usize;
        let h = monic_by_index(&f.ctx, tdeg, trial_idx % monic_count(&f.ctx, tdeg));
        let hp = pow_mod_u128(&h, e, f);
        if hp.is_zero() {
            continue;
        }
        let g = hp.sub(&Poly::one(&f.ctx)).gcd(f);
        if !g.is_one() && g != *f {
            equal_degree(&g, d, mult, out);
            let (rest, r) = f.divmod(&g);
            debug_assert!(r.is_zero());
            equal_degree(&rest, d, mult, out);
            return;
        }
    }
}

fn pow_mod_u128(b: &Poly, mut k: u128, m: &Poly) -> Poly {
    let mut r = Poly::one(&b.ctx);
    let mut b = b.rem(m);
    while k > 0 {
        if k & 1 == 1 {
            r = r.mul(&b).rem(m);
        }
        b = b.mul(&b).rem(m);
        k >>= 1;
    }
    r
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out as u64
}

/// d_k(f): number of ordered k-tuples of monics with product f, computed as
/// prod over prime powers of binom(a_i + k - 1, k - 1).
pub fn divisor_k(f: &Poly, k: u64) -> Result<u64> {
    if !f.is_monic() {
        return Err(Error::RejectedParameter("divisor_k needs monic input".into()));
    }
    if k == 0 {
        return Ok(if f.is_one() { 1 } else { 0 });
    }
    let (_, fac) = factorize(f)?;
    let mut out: u64 = 1;
    for (_, m) in fac {
        out *= binomial(m as u64 + k - 1, k - 1);
    }
    Ok(out)
}

pub fn moebius(f: &Poly) -> Result<i64> {
    if !f.is_monic() {
        return Err(Error::RejectedParameter("moebius needs monic input".into()));
    }
    let (_, fac) = factorize(f)?;
    if fac.iter().any(|(_, m)| *m > 1) {
        return Ok(0);
    }
    Ok(if fac.len() % 2 == 0 { 1 } else { -1 })
}

/// phi(g) = |(F_q[x]/g)^x| = prod (|P|^a - |P|^{a-1}).
pub fn euler_phi(f: &Poly) -> Result<u64> {
    if !f.is_monic() {
        return Err(Error::RejectedParameter("euler_phi needs monic input".into()));
    }
    let q = f.ctx.q;
    let (_, fac) = factorize(f)?;
    let mut out: u64 = 1;
    for (pf, m) in fac {
        let pn = q.pow(pf.deg() as u32);
        out *= pn.pow(m as u32 - 1) * (pn - 1);
    }
    Ok(out)
}

pub fn is_squarefree(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::RejectedParameter("is_squarefree(0)".into()));
    }
    let der = f.derivative();
    if der.is_zero() {
        return Ok(f.degree() == Some(0));
    }
    Ok(f.gcd(&der).is_one())
}

/// Newton power sums p_0..p_kmax (mod p, as packed base-field elements) of
/// the roots of a monic polynomial, with multiplicity.
pub fn power_sums(f: &Poly, kmax: usize) -> Vec<u32> {
    let ctx = &f.ctx;
    let n = f.deg();
    // e_i = (-1)^i * coeff_{n-i}
    let mut e = vec![0u32; n + 1];
    e[0] = 1;
    for i in 1..=n {
        let c = f.coeff(n - i);
        e[i] = if i % 2 == 0 { c } else { ctx.neg_idx(c) };
    }
    let mut ps = vec![0u32; kmax + 1];
    ps[0] = ctx.from_int(n as i64).idx;
    for k in 1..=kmax {
        let mut s = 0u32;
        let top = k.saturating_sub(1).min(n);
        for i in 1..=top {
            let term = ctx.mul_idx(e[i], ps[k - i]);
            s = ctx.add_idx(s, if i % 2 == 1 { term } else { ctx.neg_idx(term) });
        }
        if k <= n {
            let term = ctx.mul_idx(e[k], ctx.from_int(k as i64).idx);
            s = ctx.add_idx(s, if k % 2 == 1 { term } else { ctx.neg_idx(term) });
        }
        ps[k] = s;
    }
    ps
}

/// Reciprocal power sums p_{-1}..p_{-kmax}: power sums of 1/roots, i.e. of
/// the reversed (monicized) polynomial. Requires f(0) != 0; depends only on
/// the coefficients c_0..c_kmax.
pub fn reciprocal_power_sums(f: &Poly, kmax: usize) -> Vec<u32> {
    power_sums(&f.reverse_monic(), kmax)
}

/// Companion matrix of a monic polynomial, as a dense row-major matrix of
/// packed indices.
fn companion(c: &Poly) -> Vec<Vec<u32>> {
    let n = c.deg();
    let ctx = &c.ctx;
    let mut m = vec![vec![0u32; n]; n];
    for i in 1..n {
        m[i][i - 1] = 1;
    }
    for i in 0..n {
        m[i][n - 1] = ctx.neg_idx(c.coeff(i));
    }
    m
}

fn mat_mul(ctx: &FieldCtx, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = a.len();
    let mut out = vec![vec![0u32; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                if b[k][j] != 0 {
                    out[i][j] = ctx.add_idx(out[i][j], ctx.mul_idx(aik, b[k][j]));
                }
            }
        }
    }
    out
}

fn mat_eval_poly(ctx: &FieldCtx, m: &[Vec<u32>], f: &Poly) -> Vec<Vec<u32>> {
    let n = m.len();
    let mut acc = vec![vec![0u32; n]; n];
    let mut pw: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1 } else { 0 }).collect())
        .collect();
    for &c in &f.c {
        if c != 0 {
            for i in 0..n {
                for j in 0..n {
                    acc[i][j] = ctx.add_idx(acc[i][j], ctx.mul_idx(c, pw[i][j]));
                }
            }
        }
        pw = mat_mul(ctx, &pw, m);
    }
    acc
}

fn mat_inv(ctx: &FieldCtx, m: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1 } else { 0 }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = ctx.inv_idx(a[col][col]);
        for x in a[col].iter_mut() {
            *x = ctx.mul_idx(*x, inv);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for cc in 0..2 * n {
                    let sub = ctx.mul_idx(f, a[col][cc]);
                    a[r][cc] = ctx.add_idx(a[r][cc], ctx.neg_idx(sub));
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn mat_trace(ctx: &FieldCtx, m: &[Vec<u32>]) -> u32 {
    let mut t = 0u32;
    for (i, row) in m.iter().enumerate() {
        t = ctx.add_idx(t, row[i]);
    }
    t
}

/// Sum of f over the roots of c (with multiplicity, in the algebraic
/// closure), as an element of F_q: trace of num(C_c) * den(C_c)^{-1}.
pub fn root_sum_eval(f: &RatFn, c: &Poly) -> Result<u32> {
    if !c.is_monic() || c.degree().is_none() || c.deg() == 0 {
        return Err(Error::RejectedParameter("root_sum_eval needs monic c, deg >= 1".into()));
    }
    if !f.den.is_one() && !c.gcd(&f.den).is_one() {
        return Err(Error::NonCoprimeModulus(
            "denominator shares a factor with c".into(),
        ));
    }
    let ctx = &c.ctx;
    let m = companion(c);
    let num = mat_eval_poly(ctx, &m, &f.num);
    if f.den.is_one() {
        return Ok(mat_trace(ctx, &num));
    }
    let den = mat_eval_poly(ctx, &m, &f.den);
    let den_inv = mat_inv(ctx, &den).ok_or_else(|| {
        Error::NonCoprimeModulus("denominator not invertible at c".into())
    })?;
    Ok(mat_trace(ctx, &mat_mul(ctx, &num, &den_inv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use std::collections::HashSet;

    fn f3() -> Arc<FieldCtx> {
        make_field(3, 1).unwrap()
    }

    fn poly(ctx: &Arc<FieldCtx>, c: &[i64]) -> Poly {
        Poly::from_indices(
            ctx,
            c.iter().map(|&v| v.rem_euclid(ctx.p as i64) as u32).collect(),
        )
    }

    #[test]
    fn enumeration_counts_and_uniqueness() {
        let f = f3();
        assert_eq!(enumerate_monic(&f, 0).collect::<Vec<_>>(), vec![Poly::one(&f)]);
        assert_eq!(enumerate_monic(&f, 2).count(), 9);
        let f9 = make_field(3, 2).unwrap();
        let all: HashSet<Vec<u32>> = enumerate_monic(&f9, 3).map(|p| p.c).collect();
        assert_eq!(all.len(), 729);
    }

    #[test]
    fn factorization_basics() {
        let f = f3();
        // x^2 + 1 irreducible over F_3
        let (u, fac) = factorize(&poly(&f, &[1, 0, 1])).unwrap();
        assert_eq!(u, 1);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 1);
        // x^2 - 1 = (x-1)(x+1)
        let (_, fac) = factorize(&poly(&f, &[-1, 0, 1])).unwrap();
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().all(|(_, m)| *m == 1));
        assert!(factorize(&Poly::zero(&f)).is_err());
    }

    #[test]
    fn factorization_multiply_back() {
        let f9 = make_field(3, 2).unwrap();
        let mut seed = 5u64;
        for _ in 0..20 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            let idx = seed % monic_count(&f9, 6);
            let g = monic_by_index(&f9, 6, idx);
            let (unit, fac) = factorize(&g).unwrap();
            let mut prod = Poly::one(&f9).scale(unit);
            for (pf, m) in &fac {
                assert!(is_irreducible(pf), "non-irreducible factor {pf:?}");
                assert!(pf.is_monic());
                prod = prod.mul(&pf.pow(*m as u64));
            }
            assert_eq!(prod, g);
        }
    }

    #[test]
    fn inseparable_factorization() {
        let f = f3();
        // (x^2+1)^3 has zero derivative
        let g = poly(&f, &[1, 0, 1]).pow(3);
        let (_, fac) = factorize(&g).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 3);
        // over F_9 the p-th root needs the coefficient Frobenius
        let f9 = make_field(3, 2).unwrap();
        let a = Poly::from_indices(&f9, vec![4, 1]); // x + (nontrivial element)
        let g = a.pow(3);
        let (_, fac) = factorize(&g).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 3);
        assert_eq!(fac[0].0, a.monic());
    }

    #[test]
    fn divisor_function() {
        let f = f3();
        assert_eq!(divisor_k(&Poly::one(&f), 2).unwrap(), 1);
        assert_eq!(divisor_k(&poly(&f, &[1, 0, 1]), 2).unwrap(), 2);
        // d_3(x^2) = binom(4,2) = 6; enumeration oracle over ordered triples
        let x2 = poly(&f, &[0, 0, 1]);
        assert_eq!(divisor_k(&x2, 3).unwrap(), 6);
        let mut count = 0;
        for a in 0..=2usize {
            for b in 0..=2 - a {
                let c = 2 - a - b;
                let _ = c;
                count += 1;
            }
        }
        assert_eq!(count, 6);
        assert!(divisor_k(&poly(&f, &[0, 2]), 2).is_err());
    }

    #[test]
    fn dk_multiplicative_on_coprime() {
        let f = f3();
        let mut seed = 11u64;
        for _ in 0..20 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(7);
            let a = monic_by_index(&f, 3, seed % 27);
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(7);
            let b = monic_by_index(&f, 4, seed % 81);
            if !a.gcd(&b).is_one() {
                continue;
            }
            for k in [2u64, 3] {
                assert_eq!(
                    divisor_k(&a.mul(&b), k).unwrap(),
                    divisor_k(&a, k).unwrap() * divisor_k(&b, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn moebius_phi_squarefree() {
        let f = f3();
        let x = Poly::x(&f);
        assert_eq!(euler_phi(&x).unwrap(), 2); // q - 1
        assert_eq!(moebius(&x.mul(&x)).unwrap(), 0);
        let xm1 = poly(&f, &[-1, 1]);
        assert_eq!(moebius(&x.mul(&xm1)).unwrap(), 1);
        assert!(is_squarefree(&x.mul(&xm1)).unwrap());
        assert!(!is_squarefree(&x.mul(&x)).unwrap());
        // phi by exhaustive residue oracle for deg g <= 3
        for n in 1..=3usize {
            for g in enumerate_monic(&f, n) {
                let mut units = 0u64;
                for rdeg_idx in 0..monic_count(&f, n) {
                    // all residues: enumerate polynomials of degree < n via indices
                    let mut c = vec![0u32; n];
                    let mut t = rdeg_idx;
                    for slot in c.iter_mut() {
                        *slot = (t % 3) as u32;
                        t /= 3;
                    }
                    let r = Poly::from_indices(&f, c);
                    if r.gcd(&g).is_one() {
                        units += 1;
                    }
                }
                assert_eq!(euler_phi(&g).unwrap(), units, "g = {g:?}");
            }
        }
    }

    #[test]
    fn irreducible_counts_match_formula() {
        let f = f3();
        for n in 1..=6usize {
            let listed = irreducibles_up_to(&f, n)
                .into_iter()
                .filter(|p| p.deg() == n)
                .count() as u64;
            assert_eq!(listed, irreducible_count(3, n as u64), "degree {n}");
        }
        assert_eq!(irreducible_count(3, 12), 44220);
    }

    #[test]
    fn root_sums() {
        let f = f3();
        // f = x, c monic of degree k: sum of roots = -c_{k-1}
        let c = poly(&f, &[2, 1, 2, 1]); // x^3 + 2x^2 + x + 2
        let x = RatFn::from_poly(Poly::x(&f));
        assert_eq!(root_sum_eval(&x, &c).unwrap(), 1); // -2 = 1 mod 3
        // f = 1/x, c = x - a: value 1/a
        let inv_x = RatFn::new(Poly::one(&f), Poly::x(&f)).unwrap();
        let c = poly(&f, &[-2, 1]); // x - 2
        assert_eq!(root_sum_eval(&inv_x, &c).unwrap(), 2); // 1/2 = 2 mod 3
        // pole clash
        assert!(root_sum_eval(&inv_x, &Poly::x(&f)).is_err());
    }

    #[test]
    fn root_sum_matches_extension_field_oracle() {
        // random rational f, c irreducible cubic over F_3: compare with
        // direct evaluation f(a) + f(a^3) + f(a^9) in F_27
        let f3 = f3();
        let f27 = make_field(3, 3).unwrap();
        let c = irreducibles_up_to(&f3, 3)
            .into_iter()
            .find(|p| p.deg() == 3)
            .unwrap();
        // root of c in F_27
        let root = f27
            .elements()
            .find(|a| {
                let mut acc = f27.zero();
                let mut pw = f27.one();
                for &cc in &c.c {
                    acc = acc.add(&f27.from_int(cc as i64).mul(&pw));
                    pw = pw.mul(a);
                }
                acc.is_zero()
            })
            .unwrap();
        let num = poly(&f3, &[1, 2, 0, 1]);
        let den = poly(&f3, &[1, 1]);
        let f = RatFn::new(num.clone(), den.clone()).unwrap();
        let v = root_sum_eval(&f, &c).unwrap();
        let eval = |a: &crate::gf::FieldElem| {
            let ev = |p: &Poly| {
                let mut acc = f27.zero();
                let mut pw = f27.one();
                for &cc in &p.c {
                    acc = acc.add(&f27.from_int(cc as i64).mul(&pw));
                    pw = pw.mul(a);
                }
                acc
            };
            ev(&f.num).mul(&ev(&f.den).inv())
        };
        let mut s = f27.zero();
        let mut a = root;
        for _ in 0..3 {
            s = s.add(&eval(&a));
            a = a.pow(3);
        }
        let cs = s.coeffs();
        assert!(cs[1] == 0 && cs[2] == 0);
        assert_eq!(cs[0], v);
    }

    #[test]
    fn root_sum_additive_over_coprime_products() {
        let f3 = f3();
        let f = RatFn::from_poly(poly(&f3, &[0, 2, 1, 1]));
        let c1 = poly(&f3, &[1, 0, 1]);
        let c2 = poly(&f3, &[2, 1]);
        let lhs = root_sum_eval(&f, &c1.mul(&c2)).unwrap();
        let rhs = (root_sum_eval(&f, &c1).unwrap() + root_sum_eval(&f, &c2).unwrap()) % 3;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_sums_match_companion_route() {
        let f3 = f3();
        let mut seed = 3u64;
        for deg in 1..=6usize {
            for _ in 0..10 {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(11);
                let c = monic_by_index(&f3, deg, seed % monic_count(&f3, deg));
                let ps = power_sums(&c, 8);
                for k in 1..=8usize {
                    let xk = RatFn::from_poly(Poly::from_indices(
                        &f3,
                        (0..=k).map(|i| if i == k { 1 } else { 0 }).collect(),
                    ));
                    assert_eq!(ps[k], root_sum_eval(&xk, &c).unwrap(), "deg {deg} k {k}");
                }
            }
        }
    }

    #[test]
    fn reciprocal_power_sums_are_class_functions() {
        // p_{-k}(c) for k >= 1 depends only on c mod x^{k+1} (p_0 is the degree)
        let f3 = f3();
        let a = poly(&f3, &[1, 2, 0, 1, 0, 0, 1]);
        let b = poly(&f3, &[1, 2, 0, 1, 2, 1, 0, 2, 1]);
        let pa = reciprocal_power_sums(&a, 3);
        let pb = reciprocal_power_sums(&b, 3);
        assert_eq!(pa[1..], pb[1..]);
    }
}
