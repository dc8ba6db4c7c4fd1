//! Clebsch–Gordan coefficients from Racah's closed-form sum in exact
//! big-integer arithmetic, and the irreducible tensor operators `T_Kq`.
//!
//! A coefficient is stored as its *signed square*: the exact rational `r`
//! with `C = sign(r)·√|r|`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::spin::SpinLabel;

/// Key for `C^{S m'}_{S m, K q}` with `m' = m + q`; every field is doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CGKey {
    pub two_s: u32,
    pub two_m: i32,
    pub two_k: u32,
    pub two_q: i32,
    pub two_m_out: i32,
}

impl CGKey {
    pub fn new(spin: SpinLabel, two_m: i32, k: u32, q: i32) -> Self {
        Self {
            two_s: spin.two_s(),
            two_m,
            two_k: 2 * k,
            two_q: 2 * q,
            two_m_out: two_m + 2 * q,
        }
    }
}

/// An exact coefficient and its double-precision value.
#[derive(Clone, Debug, PartialEq)]
pub struct CGValue {
    pub signed_square: BigRational,
    pub float_value: f64,
}

impl CGValue {
    fn zero() -> Self {
        Self {
            signed_square: BigRational::zero(),
            float_value: 0.0,
        }
    }
}

static FACTORIALS: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();

/// `n!` from a shared, grow-on-demand table.
pub fn factorial(n: usize) -> BigUint {
    let table = FACTORIALS.get_or_init(|| RwLock::new(vec![BigUint::one()]));
    {
        let t = table.read().expect("factorial table poisoned");
        if let Some(f) = t.get(n) {
            return f.clone();
        }
    }
    let mut t = table.write().expect("factorial table poisoned");
    while t.len() <= n {
        let next = t.last().expect("nonempty") * BigUint::from(t.len());
        t.push(next);
    }
    t[n].clone()
}

/// Makes sure `0! … n!` are tabulated.
pub fn reserve_factorials(n: usize) {
    let _ = factorial(n);
}

fn with_factorials<R>(max: usize, f: impl FnOnce(&[BigUint]) -> R) -> R {
    reserve_factorials(max);
    let t = FACTORIALS
        .get()
        .expect("initialized")
        .read()
        .expect("factorial table poisoned");
    f(&t)
}

/// Pieces of Racah's formula: `C = sign · √(pref_num / pref_den) · sum_num / sum_den`.
struct RacahParts {
    negative: bool,
    pref_num: BigUint,
    pref_den: BigUint,
    sum_num: BigUint,
    sum_den: BigUint,
}

/// General `⟨j1 m1; j2 m2 | J M⟩` (all arguments doubled) as Racah parts;
/// `None` when the coefficient vanishes by selection rules.
fn racah_parts(
    two_j1: i64,
    two_m1: i64,
    two_j2: i64,
    two_m2: i64,
    two_j: i64,
    two_m: i64,
) -> Option<RacahParts> {
    if two_j1 < 0 || two_j2 < 0 || two_j < 0 {
        return None;
    }
    if two_m1 + two_m2 != two_m || two_m1.abs() > two_j1 || two_m2.abs() > two_j2 || two_m.abs() > two_j {
        return None;
    }
    if (two_j1 + two_m1) % 2 != 0 || (two_j2 + two_m2) % 2 != 0 || (two_j + two_m) % 2 != 0 {
        return None;
    }
    if (two_j1 + two_j2 + two_j) % 2 != 0 || two_j > two_j1 + two_j2 || two_j < (two_j1 - two_j2).abs() {
        return None;
    }
    let half = |x: i64| (x / 2) as usize;
    let a = half(two_j1 + two_j2 - two_j);
    let b = half(two_j1 - two_m1);
    let c = half(two_j2 + two_m2);
    let d = (two_j - two_j2 + two_m1) / 2;
    let e = (two_j - two_j1 - two_m2) / 2;
    let k_min = 0.max(-d).max(-e) as usize;
    let k_max = a.min(b).min(c);
    if k_min > k_max {
        return None;
    }
    let top = half(two_j1 + two_j2 + two_j) + 1;
    with_factorials(top, |f| {
        let pref_num = BigUint::from((two_j + 1) as u64)
            * &f[half(two_j + two_j1 - two_j2)]
            * &f[half(two_j - two_j1 + two_j2)]
            * &f[a]
            * &f[half(two_j + two_m)]
            * &f[half(two_j - two_m)]
            * &f[b]
            * &f[half(two_j1 + two_m1)]
            * &f[half(two_j2 - two_m2)]
            * &f[c];
        let pref_den = f[top].clone();

        // Σ_k (−1)^k / [k!(a−k)!(b−k)!(c−k)!(d+k)!(e+k)!], factored as
        // t_{k_min}·(1 + r_0(1 + r_1(1 + …))) with small-integer ratios r_k.
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        let mut negative_tail = false;
        for k in (k_min..k_max).rev() {
            let rn = ((a - k) * (b - k) * (c - k)) as u64;
            let rd = ((k + 1) as i64 * (d + k as i64 + 1) * (e + k as i64 + 1)) as u64;
            // acc = 1 − (rn/rd)·acc, tracked as a signed fraction num/den
            let scaled_den = &den * rd;
            let scaled_num = &num * rn;
            if !negative_tail {
                if scaled_num > scaled_den {
                    num = scaled_num - &scaled_den;
                    negative_tail = true;
                } else {
                    num = &scaled_den - scaled_num;
                }
            } else {
                num = &scaled_den + scaled_num;
                negative_tail = false;
            }
            den = scaled_den;
        }
        if num.is_zero() {
            return None;
        }
        let ik = k_min as i64;
        let first_den = f[k_min].clone()
            * &f[a - k_min]
            * &f[b - k_min]
            * &f[c - k_min]
            * &f[(d + ik) as usize]
            * &f[(e + ik) as usize];
        let negative = (k_min % 2 == 1) ^ negative_tail;
        Some(RacahParts {
            negative,
            pref_num,
            pref_den,
            sum_num: num,
            sum_den: den * first_den,
        })
    })
}

impl RacahParts {
    fn signed_square(&self) -> BigRational {
        let num = &self.pref_num * &self.sum_num * &self.sum_num;
        let den = &self.pref_den * &self.sum_den * &self.sum_den;
        let sign = if self.negative { Sign::Minus } else { Sign::Plus };
        BigRational::new(BigInt::from_biguint(sign, num), BigInt::from_biguint(Sign::Plus, den))
    }

    fn to_f64(&self) -> f64 {
        // |C|² ≤ 1 as a single ratio; the factors alone can overflow
        let num = &self.pref_num * &self.sum_num * &self.sum_num;
        let den = &self.pref_den * &self.sum_den * &self.sum_den;
        let magnitude = ratio_to_f64(&num, &den).sqrt();
        if self.negative {
            -magnitude
        } else {
            magnitude
        }
    }
}

/// `num / den` rounded to double precision without overflowing intermediates.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift = num.bits() as i64 - den.bits() as i64;
    // scale to a 64+ bit quotient, then restore the exponent
    let extra = 64i64;
    let q = if shift >= extra {
        num / (den << (shift - extra) as usize)
    } else {
        (num << (extra - shift) as usize) / den
    };
    let mantissa = q.to_f64().expect("finite quotient");
    mantissa * 2f64.powi((shift - extra) as i32)
}

/// Double-precision value of an exact signed square.
pub fn signed_square_to_f64(r: &BigRational) -> f64 {
    let num = r.numer().abs().to_biguint().expect("nonnegative");
    let den = r.denom().to_biguint().expect("positive denominator");
    let v = ratio_to_f64(&num, &den).sqrt();
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// General Clebsch–Gordan coefficient `⟨j1 m1; j2 m2 | J M⟩` with doubled
/// arguments. Total: invalid combinations give exact zero.
pub fn clebsch_gordan_general(
    two_j1: i64,
    two_m1: i64,
    two_j2: i64,
    two_m2: i64,
    two_j: i64,
    two_m: i64,
) -> CGValue {
    match racah_parts(two_j1, two_m1, two_j2, two_m2, two_j, two_m) {
        None => CGValue::zero(),
        Some(parts) => CGValue {
            float_value: parts.to_f64(),
            signed_square: parts.signed_square(),
        },
    }
}

fn cg_cache() -> &'static RwLock<HashMap<CGKey, CGValue>> {
    static CACHE: OnceLock<RwLock<HashMap<CGKey, CGValue>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `C^{S m'}_{S m, K q}`, exact, memoized. Keys outside the physical range
/// (or with `K > 2S`) give zero.
pub fn clebsch_gordan(key: CGKey) -> CGValue {
    if let Some(v) = cg_cache().read().expect("cg cache poisoned").get(&key) {
        return v.clone();
    }
    let value = if key.two_k > 2 * key.two_s {
        CGValue::zero()
    } else {
        clebsch_gordan_general(
            i64::from(key.two_s),
            i64::from(key.two_m),
            i64::from(key.two_k),
            i64::from(key.two_q),
            i64::from(key.two_s),
            i64::from(key.two_m_out),
        )
    };
    cg_cache()
        .write()
        .expect("cg cache poisoned")
        .insert(key, value.clone());
    value
}

/// Double-precision coefficients `C^{S,m+q}_{S m, K q}` for one spin,
/// organised by `(K, q)` band and indexed by `k = S + m`.
///
/// Bands are computed on first use from the exact formula and shared.
pub struct CgBands {
    spin: SpinLabel,
    bands: Vec<OnceLock<Vec<f64>>>,
}

impl CgBands {
    fn new(spin: SpinLabel) -> Self {
        let n = spin.n_stars();
        let count = (n + 1) * (n + 1);
        Self {
            spin,
            bands: (0..count).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn spin(&self) -> SpinLabel {
        self.spin
    }

    fn slot(k: u32, q: i32) -> usize {
        let k = k as usize;
        k * k + (q + k as i32) as usize
    }

    /// Coefficients for band `(K, q)`, entry `k` being `C^{S,m+q}_{S m,K q}`
    /// with `m = k − S` (zero where `|m + q| > S`).
    pub fn band(&self, k: u32, q: i32) -> &[f64] {
        assert!(k <= self.spin.two_s() && q.unsigned_abs() <= k, "band out of range");
        self.bands[Self::slot(k, q)].get_or_init(|| self.compute_band(k, q))
    }

    fn compute_band(&self, k: u32, q: i32) -> Vec<f64> {
        let two_s = i64::from(self.spin.two_s());
        (0..self.spin.dim())
            .map(|idx| {
                let two_m = 2 * idx as i64 - two_s;
                let two_m_out = two_m + 2 * i64::from(q);
                racah_parts(two_s, two_m, 2 * i64::from(k), 2 * i64::from(q), two_s, two_m_out)
                    .map_or(0.0, |p| p.to_f64())
            })
            .collect()
    }
}

/// Shared band table for `spin`.
pub fn cg_bands(spin: SpinLabel) -> Arc<CgBands> {
    static TABLES: OnceLock<RwLock<HashMap<u32, Arc<CgBands>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.read().expect("band cache poisoned").get(&spin.two_s()) {
        return t.clone();
    }
    let mut w = tables.write().expect("band cache poisoned");
    w.entry(spin.two_s())
        .or_insert_with(|| Arc::new(CgBands::new(spin)))
        .clone()
}

/// Dense irreducible tensor operator `T_Kq` on the spin-S space.
#[derive(Clone, Debug)]
pub struct TensorOp {
    pub spin: SpinLabel,
    pub k: u32,
    pub q: i32,
    pub matrix: DMatrix<Complex64>,
}

impl TensorOp {
    /// `Tr(self · other†)`.
    pub fn trace_inner(&self, other: &TensorOp) -> Complex64 {
        hs_inner(&self.matrix, &other.matrix)
    }
}

/// Hilbert–Schmidt inner product `Tr(a · b†)`.
pub fn hs_inner(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

/// `T_Kq = √((2K+1)/(2S+1)) Σ C^{S m'}_{S m, K q} |S, m'⟩⟨S, m|`, cached per
/// `(S, K, q)`.
pub fn tensor_operator(spin: SpinLabel, k: u32, q: i32) -> Result<Arc<TensorOp>> {
    if k > spin.two_s() || q.unsigned_abs() > k {
        return Err(Error::OutOfRange(format!("(K, q) = ({k}, {q}) for 2S = {}", spin.two_s())));
    }
    static OPS: OnceLock<RwLock<HashMap<(u32, u32, i32), Arc<TensorOp>>>> = OnceLock::new();
    let ops = OPS.get_or_init(Default::default);
    let key = (spin.two_s(), k, q);
    if let Some(op) = ops.read().expect("tensor cache poisoned").get(&key) {
        return Ok(op.clone());
    }
    let dim = spin.dim();
    let pref = ((2 * k + 1) as f64 / dim as f64).sqrt();
    let mut matrix = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    let two_s = spin.two_s() as i32;
    for col in 0..dim {
        let two_m = 2 * col as i32 - two_s;
        let two_m_out = two_m + 2 * q;
        if two_m_out.abs() > two_s {
            continue;
        }
        let row = ((two_m_out + two_s) / 2) as usize;
        let cg = clebsch_gordan(CGKey::new(spin, two_m, k, q)).float_value;
        matrix[(row, col)] = Complex64::new(pref * cg, 0.0);
    }
    let op = Arc::new(TensorOp { spin, k, q, matrix });
    ops.write()
        .expect("tensor cache poisoned")
        .insert(key, op.clone());
    Ok(op)
}
