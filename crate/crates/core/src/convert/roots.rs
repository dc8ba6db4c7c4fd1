//! Polynomial roots for stellar polynomials.
//!
//! Aberth–Ehrlich simultaneous iteration, companion-matrix eigenvalues as a
//! fallback, then cluster detection with Weierstrass inclusion discs and
//! polishing of multiple roots on the `(m−1)`-th derivative.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub const MAX_ITERATIONS: usize = 200;
pub const RELATIVE_TOLERANCE: f64 = 1e-13;

/// Why the simultaneous iteration stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    Converged(usize),
    MaxIterations,
    /// Aberth did not converge and companion eigenvalues were used.
    CompanionFallback,
}

#[derive(Clone, Debug)]
pub struct Roots {
    pub roots: Vec<Complex64>,
    pub stop_reason: StopReason,
}

/// `p(z)/p'(z)` for `p = Σ coeffs[k] z^k`, evaluated on the reversed
/// polynomial when `|z| > 1` to keep powers bounded.
fn newton_ratio(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let n = coeffs.len() - 1;
    if z.norm() <= 1.0 {
        let (p, dp) = horner_with_derivative(coeffs.iter().rev().copied(), z);
        p / dp
    } else {
        // p(z) = z^n q(w), w = 1/z, q(w) = Σ coeffs[n−k] w^k
        let w = z.inv();
        let (q, dq) = horner_with_derivative(coeffs.iter().copied(), w);
        // p/p' = z q / (n q − w q')
        z * q / (q * n as f64 - w * dq)
    }
}

/// Horner over coefficients given from the highest power down.
fn horner_with_derivative(from_top: impl Iterator<Item = Complex64>, z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in from_top {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `ln|p(z)|`, stable for large `|z|`.
fn ln_abs_eval(coeffs: &[Complex64], z: Complex64) -> f64 {
    let n = coeffs.len() - 1;
    if z.norm() <= 1.0 {
        horner_with_derivative(coeffs.iter().rev().copied(), z).0.norm().ln()
    } else {
        let w = z.inv();
        let q = horner_with_derivative(coeffs.iter().copied(), w).0;
        q.norm().ln() + n as f64 * z.norm().ln()
    }
}

/// `ln Σ|a_k||z|^k`, the scale of rounding error in evaluating `p(z)`.
fn ln_abs_bound(coeffs: &[Complex64], z: Complex64) -> f64 {
    let n = coeffs.len() - 1;
    let r = z.norm();
    if r <= 1.0 {
        coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm()).ln()
    } else {
        let w = r.recip();
        coeffs.iter().fold(0.0, |acc, c| acc * w + c.norm()).ln() + n as f64 * r.ln()
    }
}

/// Positive root of `|a_n| r^n = Σ_{k<n} |a_k| r^k`: every root lies in the
/// disc of this radius.
fn cauchy_radius(coeffs: &[Complex64]) -> f64 {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    let mags: Vec<f64> = coeffs.iter().map(|c| c.norm() / lead).collect();
    let g = |r: f64| {
        let mut acc = 0.0;
        for k in (0..n).rev() {
            acc = acc * r + mags[k];
        }
        r.powi(n as i32) - acc
    };
    // bracket: g(0) ≤ 0, g(1 + max) > 0
    let mut lo = 0.0;
    let mut hi = 1.0 + mags[..n].iter().copied().fold(0.0, f64::max);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    hi
}

/// Initial guesses on circles: the Cauchy radius scaled down to the
/// geometric mean of the root moduli, with an irrational angular offset.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let geometric = (coeffs[0].norm() / coeffs[n].norm()).powf(1.0 / n as f64);
    let cauchy = cauchy_radius(coeffs);
    let radius = if geometric > 0.0 && geometric.is_finite() {
        geometric.min(cauchy)
    } else {
        cauchy
    };
    (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect()
}

fn aberth(coeffs: &[Complex64], guesses: &mut [Complex64]) -> StopReason {
    let n = guesses.len();
    let mut done = vec![false; n];
    let ln_noise = (2.0 * n as f64 * f64::EPSILON).ln();
    for iteration in 1..=MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let z = guesses[i];
            // |p(z)| inside its own rounding error: nothing left to resolve
            if ln_abs_eval(coeffs, z) <= ln_noise + ln_abs_bound(coeffs, z) {
                done[i] = true;
                continue;
            }
            let ratio = newton_ratio(coeffs, z);
            if ratio.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let repulsion: Complex64 = guesses
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &w)| (z - w).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                all_done = false;
                continue;
            }
            guesses[i] = z - step;
            if step.norm() <= RELATIVE_TOLERANCE * guesses[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            return StopReason::Converged(iteration);
        }
    }
    StopReason::MaxIterations
}

/// Eigenvalues of the companion matrix of the monic polynomial.
pub fn companion_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    m.schur().eigenvalues().map_or_else(Vec::new, |v| v.iter().copied().collect())
}

/// All roots of `Σ coeffs[k] z^k` (the leading coefficient must be nonzero).
pub fn find_roots(coeffs: &[Complex64]) -> Roots {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Roots {
            roots: Vec::new(),
            stop_reason: StopReason::Converged(0),
        };
    }
    // exact zeros at the origin come off first
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros..];
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let m = reduced.len() - 1;
    let mut stop_reason = StopReason::Converged(0);
    if m == 1 {
        roots.push(-reduced[0] / reduced[1]);
    } else if m > 1 {
        let mut guesses = initial_guesses(reduced);
        stop_reason = aberth(reduced, &mut guesses);
        if stop_reason == StopReason::MaxIterations {
            let eig = companion_roots(reduced);
            if eig.len() == m && eig.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                guesses = eig;
                stop_reason = StopReason::CompanionFallback;
            }
        }
        roots.extend(polish_clusters(reduced, guesses));
    }
    Roots { roots, stop_reason }
}

/// Groups roots whose Weierstrass inclusion discs overlap. A group becomes
/// one multiple root when it is as tight as rounding noise allows, and is
/// split at its widest gap otherwise.
fn polish_clusters(coeffs: &[Complex64], roots: Vec<Complex64>) -> Vec<Complex64> {
    let n = roots.len();
    let ln_lead = coeffs[n].norm().ln();
    let radii: Vec<f64> = (0..n)
        .map(|i| {
            let z = roots[i];
            // a computed |p(z)| below the evaluation error carries no information
            let ln_noise = (4.0 * n as f64 * f64::EPSILON).ln() + ln_abs_bound(coeffs, z);
            let ln_p = ln_abs_eval(coeffs, z).max(ln_noise);
            let ln_prod: f64 = (0..n).filter(|&j| j != i).map(|j| (z - roots[j]).norm().ln()).sum();
            let r = n as f64 * (ln_p - ln_lead - ln_prod).exp();
            // floor at a few ulps of the root itself
            r.max(8.0 * f64::EPSILON * z.norm())
        })
        .collect();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut i = i;
        while parent[i] != r {
            let next = parent[i];
            parent[i] = r;
            i = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let overlap = (roots[i] - roots[j]).norm() <= radii[i] + radii[j];
            let unresolved = !(radii[i].is_finite() && radii[j].is_finite());
            if overlap || unresolved && (roots[i] - roots[j]).norm() == 0.0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut label = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if label[r] == usize::MAX {
            label[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[label[r]].push(i);
    }

    let mut out = Vec::with_capacity(n);
    let mut pending: Vec<Vec<Complex64>> = groups
        .into_iter()
        .map(|g| g.into_iter().map(|i| roots[i]).collect())
        .collect();
    while let Some(members) = pending.pop() {
        if members.len() == 1 {
            out.push(members[0]);
            continue;
        }
        if let Some((root, m)) = largest_multiple_root(coeffs, &members) {
            // the m members closest to the root are its copies
            let mut by_distance = members.clone();
            by_distance.sort_by(|a, b| (a - root).norm().total_cmp(&(b - root).norm()));
            out.extend(std::iter::repeat_n(root, m));
            if by_distance.len() > m {
                pending.push(by_distance.split_off(m));
            }
        } else {
            let (a, b) = split_longest_edge(&members);
            pending.push(a.into_iter().map(|i| members[i]).collect());
            pending.push(b.into_iter().map(|i| members[i]).collect());
        }
    }
    out
}

/// The highest-multiplicity root the group supports, trying Newton starts at
/// its centroid and medoid.
fn largest_multiple_root(coeffs: &[Complex64], members: &[Complex64]) -> Option<(Complex64, usize)> {
    let centroid = members.iter().sum::<Complex64>() / members.len() as f64;
    let medoid = *members
        .iter()
        .min_by(|a, b| {
            let spread = |z: &Complex64| members.iter().map(|w| (z - w).norm()).sum::<f64>();
            spread(a).total_cmp(&spread(b))
        })
        .expect("nonempty group");
    (2..=members.len())
        .rev()
        .find_map(|m| [centroid, medoid].into_iter().find_map(|start| fit_multiple_root(coeffs, start, m)).map(|x| (x, m)))
}

/// Cuts the longest edge of the minimum spanning tree of `points`.
fn split_longest_edge(points: &[Complex64]) -> (Vec<usize>, Vec<usize>) {
    let n = points.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![(f64::INFINITY, 0usize); n];
    let mut parent = vec![0usize; n];
    in_tree[0] = true;
    for j in 1..n {
        best[j] = ((points[j] - points[0]).norm(), 0);
    }
    let mut longest = (0.0, 0usize);
    for _ in 1..n {
        let (j, (d, from)) = (0..n)
            .filter(|&j| !in_tree[j])
            .map(|j| (j, best[j]))
            .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
            .expect("vertices left");
        in_tree[j] = true;
        parent[j] = from;
        if d >= longest.0 {
            longest = (d, j);
        }
        for k in 0..n {
            let dk = (points[k] - points[j]).norm();
            if !in_tree[k] && dk < best[k].0 {
                best[k] = (dk, j);
            }
        }
    }
    // the subtree below the cut edge
    let cut = longest.1;
    let below = |mut v: usize| {
        while v != 0 {
            if v == cut {
                return true;
            }
            v = parent[v];
        }
        false
    };
    (0..n).partition(|&v| !below(v))
}

/// Coefficients of `p(x + h)` in powers of `h`, by repeated synthetic division.
fn taylor_shift<T>(coeffs: &[T], x: T) -> Vec<T>
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
{
    let mut c = coeffs.to_vec();
    let n = c.len() - 1;
    for j in 0..n {
        for k in (j..n).rev() {
            c[k] = c[k] + x * c[k + 1];
        }
    }
    c
}

/// Newton from `start` on `p^{(m−1)}`; accepts the limit `x` as an `m`-fold
/// root when the Taylor coefficients of `p` at `x` below order `m` vanish to
/// rounding level and the one at order `m` does not.
fn fit_multiple_root(coeffs: &[Complex64], start: Complex64, m: usize) -> Option<Complex64> {
    let inverted = start.norm() > 1.0;
    let (poly, start) = if inverted {
        (coeffs.iter().rev().copied().collect::<Vec<_>>(), start.inv())
    } else {
        (coeffs.to_vec(), start)
    };
    let x = refine_on_derivative(&poly, start, m);
    if !(x.re.is_finite() && x.im.is_finite()) || inverted && x.norm() == 0.0 {
        return None;
    }
    let n = poly.len() - 1;
    let c = taylor_shift(&poly, x);
    let scale = taylor_shift(&poly.iter().map(|a| a.norm()).collect::<Vec<f64>>(), x.norm());
    let noise = 16.0 * n as f64 * f64::EPSILON;
    if !(c[m].norm() > noise * scale[m]) {
        return None;
    }
    // uncertainty in x from the last Newton step, floored at rounding
    let dx = (c[m - 1].norm() / (m as f64 * c[m].norm())).max(f64::EPSILON * (1.0 + x.norm()));
    if dx > 1e-8 * (1.0 + x.norm()) {
        return None;
    }
    let mut binom = 1.0;
    for j in (0..m).rev() {
        // binom = C(m, j)
        binom *= (j + 1) as f64 / (m - j) as f64;
        let allowed = noise * scale[j] + 16.0 * binom * c[m].norm() * dx.powi((m - j) as i32);
        if c[j].norm() > allowed {
            return None;
        }
    }
    Some(if inverted { x.inv() } else { x })
}

fn derivative(coeffs: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut d = coeffs.to_vec();
    for _ in 0..order {
        if d.len() <= 1 {
            return vec![Complex64::new(0.0, 0.0)];
        }
        d = d.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
    }
    d
}

/// Newton on `p^{(m−1)}`, where an `m`-fold root of `p` is simple. Keeps
/// `x` unless the derivative residual decreases.
fn refine_on_derivative(poly: &[Complex64], start: Complex64, m: usize) -> Complex64 {
    let d = derivative(poly, m - 1);
    if d.len() < 2 {
        return start;
    }
    let eval = |x: Complex64| horner_with_derivative(d.iter().rev().copied(), x);
    let mut x = start;
    let mut residual = eval(x).0.norm();
    for _ in 0..64 {
        let (p, dp) = eval(x);
        if dp.norm() == 0.0 {
            break;
        }
        let candidate = x - p / dp;
        let r = eval(candidate).0.norm();
        if !(r < residual) {
            break;
        }
        x = candidate;
        residual = r;
    }
    x
}
