//! Elementary symmetric polynomials of star coordinates and Newton's identities.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `e_0 … e_n` of the finite star coordinates. Stars at infinity are not
/// variables; `n_infinite` records how many were set aside.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPolySet {
    e: Vec<Complex64>,
    n_infinite: usize,
}

impl Default for SymPolySet {
    fn default() -> Self {
        Self::empty()
    }
}

impl SymPolySet {
    /// The empty variable set, `e = [1]`.
    pub fn empty() -> Self {
        Self {
            e: vec![Complex64::new(1.0, 0.0)],
            n_infinite: 0,
        }
    }

    pub fn with_infinite(mut self, n_infinite: usize) -> Self {
        self.n_infinite = n_infinite;
        self
    }

    /// Number of finite variables.
    pub fn n(&self) -> usize {
        self.e.len() - 1
    }

    pub fn n_infinite(&self) -> usize {
        self.n_infinite
    }

    pub fn e(&self) -> &[Complex64] {
        &self.e
    }

    /// `e_j`, zero for `j > n`.
    pub fn get(&self, j: usize) -> Complex64 {
        self.e.get(j).copied().unwrap_or_default()
    }

    /// Appends one root: `e'_k = ζ·e_{k−1} + e_k`.
    pub fn add_root(&self, zeta: Complex64) -> Self {
        let mut next = self.clone();
        next.push_root(zeta);
        next
    }

    fn push_root(&mut self, zeta: Complex64) {
        self.e.push(Complex64::new(0.0, 0.0));
        for k in (1..self.e.len()).rev() {
            let prev = self.e[k - 1];
            self.e[k] += zeta * prev;
        }
    }

    /// Power sums `p_1 … p_{up_to}` via Newton's identities.
    pub fn power_sums(&self, up_to: usize) -> Result<Vec<Complex64>> {
        if up_to > self.n() {
            return Err(Error::OutOfRange(format!(
                "power sum order {up_to} for {} variables",
                self.n()
            )));
        }
        let mut p: Vec<Complex64> = Vec::with_capacity(up_to);
        for k in 1..=up_to {
            // p_k = (−1)^{k−1} k e_k + Σ_{i=1}^{k−1} (−1)^{k−1+i} e_{k−i} p_i
            let mut acc = self.e[k] * (k as f64) * sign(k - 1);
            for i in 1..k {
                acc += self.e[k - i] * p[i - 1] * sign(k - 1 + i);
            }
            p.push(acc);
        }
        Ok(p)
    }

    /// Number of consecutive highest-order polynomials `e_n, e_{n−1}, …` whose
    /// modulus is at most `tol` (relative to the largest `|e_j|`). For a
    /// constellation this is the number of stars sitting at the north pole.
    pub fn trailing_zeros(&self, tol: f64) -> usize {
        let scale = self.e.iter().map(|z| z.norm()).fold(0.0, f64::max);
        self.e
            .iter()
            .skip(1)
            .rev()
            .take_while(|z| z.norm() <= tol * scale)
            .count()
    }
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `e_j` of the given roots, built one root at a time.
pub fn elementary_from_roots(roots: &[Complex64]) -> SymPolySet {
    let mut set = SymPolySet::empty();
    set.e.reserve(roots.len());
    for &z in roots {
        set.push_root(z);
    }
    set
}

/// Power sums `p_1 … p_k` of the roots (see [`SymPolySet::power_sums`]).
pub fn power_sums_from_elementary(set: &SymPolySet, up_to: usize) -> Result<Vec<Complex64>> {
    set.power_sums(up_to)
}

/// Inverse of [`power_sums_from_elementary`]: `e_0 … e_n` from `p_1 … p_n`.
pub fn elementary_from_power_sums(p: &[Complex64]) -> SymPolySet {
    let mut e = Vec::with_capacity(p.len() + 1);
    e.push(Complex64::new(1.0, 0.0));
    for k in 1..=p.len() {
        // k e_k = Σ_{i=1}^{k} (−1)^{i−1} e_{k−i} p_i
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=k {
            acc += e[k - i] * p[i - 1] * sign(i - 1);
        }
        e.push(acc / k as f64);
    }
    SymPolySet { e, n_infinite: 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Direct expansion over subsets, used as the oracle.
    fn brute_elementary(roots: &[Complex64]) -> Vec<Complex64> {
        let n = roots.len();
        let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
        for mask in 0u32..(1 << n) {
            let prod = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .fold(Complex64::new(1.0, 0.0), |acc, i| acc * roots[i]);
            e[mask.count_ones() as usize] += prod;
        }
        e
    }

    fn roots_of_unity(two_s: usize) -> Vec<Complex64> {
        let s = two_s as f64 / 2.0;
        (1..=two_s)
            .map(|j| Complex64::from_polar(1.0, PI * j as f64 / s))
            .collect()
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary_from_roots(&[]).e(), &[c(1.0)]);
        assert_eq!(
            elementary_from_roots(&[c(1.0), c(2.0), c(3.0)]).e(),
            &[c(1.0), c(6.0), c(11.0), c(6.0)]
        );
        let e = elementary_from_roots(&roots_of_unity(6));
        for j in 1..6 {
            assert!(e.get(j).norm() < 1e-12, "e_{j} = {}", e.get(j));
        }
        assert!((e.get(6) - c(-1.0)).norm() < 1e-12);
    }

    #[test]
    fn add_root_examples() {
        let two = elementary_from_roots(&[c(1.0), c(2.0)]);
        assert_eq!(two.e(), &[c(1.0), c(3.0), c(2.0)]);
        assert_eq!(two.add_root(c(3.0)).e(), &[c(1.0), c(6.0), c(11.0), c(6.0)]);
        let grown = two.add_root(c(0.0));
        assert_eq!(grown.e(), &[c(1.0), c(3.0), c(2.0), c(0.0)]);
        let z = Complex64::new(0.3, -0.8);
        assert_eq!(SymPolySet::empty().add_root(z).e(), &[c(1.0), z]);
    }

    #[test]
    fn power_sum_examples() {
        let e = elementary_from_roots(&[c(1.0), c(2.0), c(3.0)]);
        assert_eq!(e.power_sums(3).unwrap(), vec![c(6.0), c(14.0), c(36.0)]);
        assert!(e.power_sums(4).is_err());
        let unity = elementary_from_roots(&roots_of_unity(8));
        let p = unity.power_sums(8).unwrap();
        for k in 0..7 {
            assert!(p[k].norm() < 1e-12);
        }
        assert!((p[7] - c(8.0)).norm() < 1e-12);
        let z = Complex64::new(0.6, 0.9);
        let single = elementary_from_roots(&[z]).power_sums(1).unwrap();
        assert!((single[0] - z).norm() < 1e-15);
    }

    #[test]
    fn north_pole_degeneracy() {
        let mut roots = vec![Complex64::new(0.4, 0.2), Complex64::new(-1.1, 0.5), c(2.0)];
        for d in 0..4 {
            let set = elementary_from_roots(&roots);
            assert_eq!(set.trailing_zeros(1e-12), d);
            roots.push(c(0.0));
        }
    }

    fn root_strategy(max: usize) -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((0.0..2.0f64, 0.0..(2.0 * PI)), 1..=max)
            .prop_map(|v| v.into_iter().map(|(r, a)| Complex64::from_polar(r, a)).collect())
    }

    proptest! {
        #[test]
        fn matches_subset_expansion(roots in root_strategy(10)) {
            let fast = elementary_from_roots(&roots);
            let slow = brute_elementary(&roots);
            let scale = slow.iter().map(|z| z.norm()).fold(1.0, f64::max);
            for (a, b) in fast.e().iter().zip(&slow) {
                prop_assert!((a - b).norm() < 1e-10 * scale);
            }
        }

        #[test]
        fn permutation_invariant(roots in root_strategy(20), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let base = elementary_from_roots(&roots);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let scale = base.e().iter().map(|z| z.norm()).fold(1.0, f64::max);
            for _ in 0..20 {
                let mut shuffled = roots.clone();
                shuffled.shuffle(&mut rng);
                let other = elementary_from_roots(&shuffled);
                for (a, b) in base.e().iter().zip(other.e()) {
                    prop_assert!((a - b).norm() < 1e-10 * scale);
                }
            }
        }

        #[test]
        fn newton_round_trip(roots in root_strategy(20)) {
            let e = elementary_from_roots(&roots);
            let p = e.power_sums(e.n()).unwrap();
            let back = elementary_from_power_sums(&p);
            let scale = e.e().iter().map(|z| z.norm()).fold(1.0, f64::max);
            for (a, b) in e.e().iter().zip(back.e()) {
                prop_assert!((a - b).norm() < 1e-9 * scale);
            }
        }

        #[test]
        fn incremental_matches_scratch(roots in root_strategy(15)) {
            let mut inc = SymPolySet::empty();
            for &z in &roots {
                inc = inc.add_root(z);
            }
            let scratch = elementary_from_roots(&roots);
            let scale = scratch.e().iter().map(|z| z.norm()).fold(1.0, f64::max);
            for (a, b) in inc.e().iter().zip(scratch.e()) {
                prop_assert!((a - b).norm() <= 1e-10 * scale);
            }
        }
    }
}
