//! Enumeration of the three Artin-Schreier families, their cardinality
//! formulas, and exact brute-force moments (parallel sweeps with a work
//! budget). Enumeration order is lexicographic in the stored coefficient
//! data, so runs and shards are reproducible.

use crate::error::{Error, Result};
use crate::exact::{CycInt, ExactNum};
use crate::gf::{make_field, FieldCtx};
use crate::lfun::{CurveParams, FamilyKind, LPoly};
use crate::polyring::{
    enumerate_monic, euler_phi, is_squarefree, monic_count, Poly, RatFn,
};
use rayon::prelude::*;
use std::sync::Arc;

/// Which family, at which degree parameter, over which field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub d: usize,
    pub p: u32,
    /// Extension degree: q = p^e.
    pub e: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, p: u32, q: u64, d: usize) -> Result<FamilySpec> {
        let mut e = 0usize;
        let mut v = 1u64;
        while v < q {
            v *= p as u64;
            e += 1;
        }
        if v != q || e == 0 {
            return Err(Error::RejectedParameter(format!("q = {q} is not a power of p = {p}")));
        }
        let spec = FamilySpec { kind, d, p, e };
        spec.validate()?;
        Ok(spec)
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e as u32)
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            FamilyKind::Polynomial => {
                if self.d == 0 || self.d % self.p as usize == 0 {
                    return Err(Error::RejectedParameter(format!(
                        "polynomial family needs gcd(d, p) = 1, got d = {}",
                        self.d
                    )));
                }
            }
            FamilyKind::OddPolynomial => {
                if self.d == 0 || self.d % self.p as usize == 0 || self.d % 2 == 0 {
                    return Err(Error::RejectedParameter(format!(
                        "odd family needs gcd(d, 2p) = 1, got d = {}",
                        self.d
                    )));
                }
            }
            FamilyKind::Ordinary => {
                if self.d == 0 {
                    return Err(Error::RejectedParameter("ordinary family needs d >= 1".into()));
                }
            }
        }
        Ok(())
    }

    /// Exponents of the free coefficients for the polynomial-type families
    /// (excluding the leading one); the leading exponent is d.
    fn free_exponents(&self) -> Vec<usize> {
        match self.kind {
            FamilyKind::Polynomial => (0..self.d)
                .filter(|&j| j == 0 || j % self.p as usize != 0)
                .collect(),
            FamilyKind::OddPolynomial => (1..self.d)
                .step_by(2)
                .filter(|&j| j % self.p as usize != 0)
                .collect(),
            FamilyKind::Ordinary => unreachable!(),
        }
    }
}

/// Closed-form family cardinality: q(q-1)q^{d-floor(d/p)-1} for the
/// polynomial family, (q-1)q^{(d-1)/2-floor((d-1)/p)+floor((d-1)/(2p))} for
/// the odd one, and the exact pre-asymptotic divisor sums for the ordinary
/// one.
pub fn family_size_formula(spec: &FamilySpec) -> Result<u64> {
    let q = spec.q();
    let d = spec.d;
    let p = spec.p as usize;
    Ok(match spec.kind {
        FamilyKind::Polynomial => q * (q - 1) * q.pow((d - d / p - 1) as u32),
        FamilyKind::OddPolynomial => {
            (q - 1) * q.pow(((d - 1) / 2 - (d - 1) / p + (d - 1) / (2 * p)) as u32)
        }
        FamilyKind::Ordinary => {
            let ctx = make_field(spec.p, spec.e)?;
            let mut total = 0u64;
            for g in enumerate_monic(&ctx, d) {
                if is_squarefree(&g)? {
                    total += q * euler_phi(&g)?;
                }
            }
            if d >= 1 {
                for g in enumerate_monic(&ctx, d - 1) {
                    if is_squarefree(&g)? {
                        total += q * (q - 1) * euler_phi(&g)?;
                    }
                }
            }
            total
        }
    })
}

/// Exact member list in deterministic (lexicographic) order. The count is
/// asserted against the closed-form cardinality.
pub fn enumerate_family(spec: &FamilySpec) -> Result<Vec<CurveParams>> {
    spec.validate()?;
    let ctx = make_field(spec.p, spec.e)?;
    let q = spec.q();
    let mut out = vec![];
    match spec.kind {
        FamilyKind::Polynomial | FamilyKind::OddPolynomial => {
            let free = spec.free_exponents();
            let nfree = free.len();
            let total = q.pow(nfree as u32) * (q - 1);
            for lead in 1..q as u32 {
                for idx in 0..q.pow(nfree as u32) {
                    let mut c = vec![0u32; spec.d + 1];
                    c[spec.d] = lead;
                    let mut t = idx;
                    for &j in &free {
                        c[j] = (t % q) as u32;
                        t /= q;
                    }
                    out.push(CurveParams {
                        f: RatFn::from_poly(Poly::from_indices(&ctx, c)),
                        kind: spec.kind,
                        d: spec.d,
                    });
                }
            }
            debug_assert_eq!(out.len() as u64, total);
        }
        FamilyKind::Ordinary => {
            // deg g = d, deg h <= d, gcd(h, g) = 1
            for g in enumerate_monic(&ctx, spec.d) {
                if !is_squarefree(&g)? {
                    continue;
                }
                for hidx in 0..q.pow(spec.d as u32 + 1) {
                    let mut c = vec![0u32; spec.d + 1];
                    let mut t = hidx;
                    for slot in c.iter_mut() {
                        *slot = (t % q) as u32;
                        t /= q;
                    }
                    let h = Poly::from_indices(&ctx, c);
                    if h.is_zero() || !h.gcd(&g).is_one() {
                        continue;
                    }
                    out.push(CurveParams {
                        f: RatFn::new(h, g.clone())?,
                        kind: spec.kind,
                        d: spec.d,
                    });
                }
            }
            // deg g = d-1, deg h = d
            for g in enumerate_monic(&ctx, spec.d - 1) {
                if !is_squarefree(&g)? {
                    continue;
                }
                for hidx in 0..q.pow(spec.d as u32) {
                    for lead in 1..q as u32 {
                        let mut c = vec![0u32; spec.d + 1];
                        let mut t = hidx;
                        for slot in c.iter_mut().take(spec.d) {
                            *slot = (t % q) as u32;
                            t /= q;
                        }
                        c[spec.d] = lead;
                        let h = Poly::from_indices(&ctx, c);
                        if !h.gcd(&g).is_one() {
                            continue;
                        }
                        out.push(CurveParams {
                            f: RatFn::new(h, g.clone())?,
                            kind: spec.kind,
                            d: spec.d,
                        });
                    }
                }
            }
        }
    }
    let expect = family_size_formula(spec)?;
    if out.len() as u64 != expect {
        return Err(Error::InternalConsistency(format!(
            "family size {} does not match the cardinality formula {expect}",
            out.len()
        )));
    }
    Ok(out)
}

/// Precomputed Newton power sums for every monic polynomial of degree <= max
/// over the base field, packed as u8 field indices. Row (j, idx) holds
/// p_0..p_dmax of the idx-th monic of degree j.
pub struct PowerSumTable {
    pub ctx: Arc<FieldCtx>,
    pub dmax: usize,
    tables: Vec<Vec<u8>>,
}

impl PowerSumTable {
    pub fn build(ctx: &Arc<FieldCtx>, max_deg: usize, dmax: usize) -> PowerSumTable {
        assert!(ctx.q <= 256, "u8 packing requires q <= 256");
        let mut tables = Vec::with_capacity(max_deg + 1);
        for j in 0..=max_deg {
            let count = monic_count(ctx, j);
            let mut tab = vec![0u8; count as usize * (dmax + 1)];
            let rows: Vec<(u64, Vec<u8>)> = (0..count)
                .into_par_iter()
                .map(|idx| {
                    let f = crate::polyring::monic_by_index(ctx, j, idx);
                    let ps = crate::polyring::power_sums(&f, dmax);
                    (idx, ps.into_iter().map(|v| v as u8).collect::<Vec<u8>>())
                })
                .collect();
            for (idx, row) in rows {
                let off = idx as usize * (dmax + 1);
                tab[off..off + dmax + 1].copy_from_slice(&row);
            }
            tables.push(tab);
        }
        PowerSumTable { ctx: ctx.clone(), dmax, tables }
    }

    /// a_j coefficients (as psi-class counts) of L(u, f, psi^a) for a
    /// polynomial-family member, degrees 0..=jmax.
    pub fn char_sum_coeffs(&self, coeffs: &[u32], jmax: usize, psi_a: u32) -> Vec<CycInt> {
        let ctx = &self.ctx;
        let p = ctx.p;
        let prime_field = ctx.e == 1;
        let mut out = Vec::with_capacity(jmax + 1);
        for j in 0..=jmax {
            let tab = &self.tables[j];
            let stride = self.dmax + 1;
            let rows = tab.len() / stride;
            let mut counts = vec![0i64; p as usize];
            if prime_field {
                // dot product then reduce mod p once
                for r in 0..rows {
                    let row = &tab[r * stride..(r + 1) * stride];
                    let mut acc: u32 = 0;
                    for (m, &cm) in coeffs.iter().enumerate() {
                        if cm != 0 {
                            acc += cm * row[m] as u32;
                        }
                    }
                    counts[((acc % p) * psi_a % p) as usize] += 1;
                }
            } else {
                for r in 0..rows {
                    let row = &tab[r * stride..(r + 1) * stride];
                    let mut acc: u32 = 0;
                    for (m, &cm) in coeffs.iter().enumerate() {
                        if cm != 0 && row[m] != 0 {
                            acc = ctx.add_idx(acc, ctx.mul_idx(cm, row[m] as u32));
                        }
                    }
                    counts[(ctx.trace_idx(acc) * psi_a % p) as usize] += 1;
                }
            }
            out.push(CycInt::from_class_counts(p, &counts));
        }
        out
    }
}

/// Work budget for exhaustive sweeps.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        // sized so every desk-profile acceptance case stays well under 5 min
        Budget { limit: 50_000_000_000 }
    }
}

/// One computed moment: the exact averaged value plus bookkeeping.
#[derive(Clone, Debug)]
pub struct MomentResult {
    pub value: ExactNum,
    pub family_size: u64,
    pub kind: FamilyKind,
    pub d: usize,
    pub k: u64,
    pub absolute: bool,
    /// Units of work performed (member count x series terms).
    pub work: u64,
}

fn estimate_work(spec: &FamilySpec) -> Result<u64> {
    let q = spec.q();
    let size = family_size_formula(spec)?;
    let series: u64 = match spec.kind {
        FamilyKind::Polynomial | FamilyKind::OddPolynomial => {
            (0..spec.d).map(|j| q.pow(j as u32)).sum()
        }
        FamilyKind::Ordinary => (0..2 * spec.d).map(|j| q.pow(j as u32)).sum(),
    };
    Ok(size.saturating_mul(series.max(1)))
}

/// Exact brute-force moment: (1/|family|) sum of L(1/sqrt q)^k, or of
/// |L(1/sqrt q)|^{2k} when `absolute` is set. Everything is exact in R;
/// parallel accumulation is order-independent because ring addition is.
pub fn brute_moment(
    spec: &FamilySpec,
    k: u64,
    absolute: bool,
    budget: &Budget,
    psi_a: u32,
) -> Result<MomentResult> {
    if k == 0 {
        return Err(Error::RejectedParameter("k must be >= 1".into()));
    }
    let est = estimate_work(spec)?;
    if est > budget.limit {
        return Err(Error::BudgetExceeded { estimated: est, limit: budget.limit });
    }
    let p = spec.p;
    let q = spec.q();
    let values = member_l_values(spec, psi_a)?;
    let family_size = values.len() as u64;
    let total = values
        .into_par_iter()
        .map(|v| {
            if absolute {
                v.mul(&v.conj()).pow(k)
            } else {
                v.pow(k)
            }
        })
        .reduce(|| ExactNum::zero(p, q), |a, b| a.add(&b));
    let avg = total.div(&ExactNum::from_int(p, q, family_size as i64))?;
    Ok(MomentResult {
        value: avg,
        family_size,
        kind: spec.kind,
        d: spec.d,
        k,
        absolute,
        work: est,
    })
}

/// L(1/sqrt q) for every family member, in enumeration order.
pub fn member_l_values(spec: &FamilySpec, psi_a: u32) -> Result<Vec<ExactNum>> {
    spec.validate()?;
    let q = spec.q();
    match spec.kind {
        FamilyKind::Polynomial | FamilyKind::OddPolynomial => {
            let ctx = make_field(spec.p, spec.e)?;
            let dd = spec.d - 1;
            let table = PowerSumTable::build(&ctx, dd, spec.d);
            let members = enumerate_family(spec)?;
            Ok(members
                .par_iter()
                .map(|fam| {
                    let a = table.char_sum_coeffs(&fam.f.num.c, dd, psi_a);
                    LPoly { p: spec.p, a }.value_at_inv_sqrt_q(q)
                })
                .collect())
        }
        FamilyKind::Ordinary => ordinary_l_values(spec, psi_a),
    }
}

/// Ordinary-family sweep: for each squarefree g precompute, per monic F, the
/// trace vector m -> tr(C_F^m g(C_F)^{-1}), so each member is a dot product.
fn ordinary_l_values(spec: &FamilySpec, psi_a: u32) -> Result<Vec<ExactNum>> {
    let ctx = make_field(spec.p, spec.e)?;
    let q = spec.q();
    let p = spec.p;
    let d = spec.d;
    let mut out = vec![];
    for (gdeg, hdeg_max, lead_nonzero) in [(d, d, false), (d - 1, d, true)] {
        if gdeg == 0 {
            continue;
        }
        for g in enumerate_monic(&ctx, gdeg) {
            if !is_squarefree(&g)? {
                continue;
            }
            let series_deg = if lead_nonzero { 2 * d - 2 } else { 2 * d - 1 };
            let tv = trace_vectors(&g, series_deg, d)?;
            // members for this g, in the same order as enumerate_family
            let mut members: Vec<Vec<u32>> = vec![];
            if !lead_nonzero {
                for hidx in 0..q.pow(hdeg_max as u32 + 1) {
                    let mut c = vec![0u32; hdeg_max + 1];
                    let mut t = hidx;
                    for slot in c.iter_mut() {
                        *slot = (t % q) as u32;
                        t /= q;
                    }
                    let h = Poly::from_indices(&ctx, c.clone());
                    if h.is_zero() || !h.gcd(&g).is_one() {
                        continue;
                    }
                    members.push(c);
                }
            } else {
                for hidx in 0..q.pow(d as u32) {
                    for lead in 1..q as u32 {
                        let mut c = vec![0u32; d + 1];
                        let mut t = hidx;
                        for slot in c.iter_mut().take(d) {
                            *slot = (t % q) as u32;
                            t /= q;
                        }
                        c[d] = lead;
                        let h = Poly::from_indices(&ctx, c.clone());
                        if !h.gcd(&g).is_one() {
                            continue;
                        }
                        members.push(c);
                    }
                }
            }
            let g_lead_inv = ctx.inv_idx(g.leading());
            let vals: Vec<ExactNum> = members
                .par_iter()
                .map(|h| {
                    // b_j class counts via dot products
                    let mut b: Vec<CycInt> = Vec::with_capacity(series_deg + 1);
                    for row_deg in 0..=series_deg {
                        let mut counts = vec![0i64; p as usize];
                        for row in &tv[row_deg] {
                            match row {
                                None => {}
                                Some(vec_m) => {
                                    let mut acc = 0u32;
                                    for (m, &hm) in h.iter().enumerate() {
                                        if hm != 0 && vec_m[m] != 0 {
                                            acc = ctx.add_idx(acc, ctx.mul_idx(hm, vec_m[m]));
                                        }
                                    }
                                    counts[(ctx.trace_idx(acc) * psi_a % p) as usize] += 1;
                                }
                            }
                        }
                        b.push(CycInt::from_class_counts(p, &counts));
                    }
                    let dd = 2 * d - 2;
                    let a = if lead_nonzero {
                        // infinity pole: series is L itself
                        debug_assert!(b[dd + 1].is_zero());
                        b.truncate(dd + 1);
                        b
                    } else {
                        // delta = psi(tr(lead h / lead g)) ^ psi_a
                        let hl = *h.last().unwrap();
                        let delta_t = if hl == 0 {
                            0
                        } else {
                            ctx.trace_idx(ctx.mul_idx(hl, g_lead_inv)) * psi_a % p
                        };
                        let delta = CycInt::zeta_pow(p, delta_t);
                        let mut a: Vec<CycInt> = Vec::with_capacity(dd + 1);
                        a.push(b[0].clone());
                        for j in 1..=series_deg {
                            let nxt = b[j].add(&delta.mul(&a[j - 1]));
                            a.push(nxt);
                        }
                        debug_assert!(a[dd + 1].is_zero());
                        a.truncate(dd + 1);
                        a
                    };
                    LPoly { p, a }.value_at_inv_sqrt_q(q)
                })
                .collect();
            out.extend(vals);
        }
    }
    Ok(out)
}

/// For each monic F of degree <= series_deg: None when gcd(F, g) != 1, else
/// the vector [m] -> tr(C_F^m g(C_F)^{-1}) for m <= hmax, so the root sum of
/// h/g over F's roots is the dot product with h's coefficients.
#[allow(clippy::type_complexity)]
fn trace_vectors(g: &Poly, series_deg: usize, hmax: usize) -> Result<Vec<Vec<Option<Vec<u32>>>>> {
    let ctx = &g.ctx;
    let mut out = Vec::with_capacity(series_deg + 1);
    for j in 0..=series_deg {
        let count = monic_count(ctx, j);
        let rows: Vec<Option<Vec<u32>>> = (0..count)
            .into_par_iter()
            .map(|idx| {
                let f = crate::polyring::monic_by_index(ctx, j, idx);
                if j == 0 {
                    return Some(vec![0u32; hmax + 1]);
                }
                if !f.gcd(g).is_one() {
                    return None;
                }
                // companion matrix powers and g(C)^{-1}
                let n = j;
                let mut comp = vec![vec![0u32; n]; n];
                for i in 1..n {
                    comp[i][i - 1] = 1;
                }
                for i in 0..n {
                    comp[i][n - 1] = ctx.neg_idx(f.coeff(i));
                }
                let geval = mat_eval(ctx, &comp, g);
                let ginv = mat_inverse(ctx, &geval)?;
                // w_m = tr(C^m * ginv)
                let mut vecs = vec![0u32; hmax + 1];
                let mut cur = ginv;
                vecs[0] = trace_of(ctx, &cur);
                for slot in vecs.iter_mut().skip(1) {
                    cur = mat_mul_local(ctx, &cur, &comp);
                    *slot = trace_of(ctx, &cur);
                }
                Some(vecs)
            })
            .collect();
        out.push(rows);
    }
    Ok(out)
}

fn mat_mul_local(ctx: &FieldCtx, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
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

fn mat_eval(ctx: &FieldCtx, m: &[Vec<u32>], f: &Poly) -> Vec<Vec<u32>> {
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
        pw = mat_mul_local(ctx, &pw, m);
    }
    acc
}

fn mat_inverse(ctx: &FieldCtx, m: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
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

fn trace_of(ctx: &FieldCtx, m: &[Vec<u32>]) -> u32 {
    let mut t = 0u32;
    for (i, row) in m.iter().enumerate() {
        t = ctx.add_idx(t, row[i]);
    }
    t
}

/// Sweep over a list of degree parameters.
pub fn moment_sweep(
    kind: FamilyKind,
    p: u32,
    e: usize,
    ds: &[usize],
    k: u64,
    absolute: bool,
    budget: &Budget,
    psi_a: u32,
) -> Result<Vec<MomentResult>> {
    let mut out = Vec::with_capacity(ds.len());
    for &d in ds {
        let spec = FamilySpec { kind, d, p, e };
        out.push(brute_moment(&spec, k, absolute, budget, psi_a)?);
    }
    Ok(out)
}
