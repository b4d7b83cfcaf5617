//! Power sums, elementary symmetric functions, and the reflection identity
//! satisfied by multisets of unit complex numbers.

use num_complex::Complex64;

use crate::error::SymmetricError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    PowerSumsToElementary,
    ElementaryToPowerSums,
}

/// Newton–Girard conversion between `s_1..s_v` and `sigma_1..sigma_v`
/// (`sigma_0 = 1` is implicit), using
/// `k sigma_k = sum_{i=1..k} (-1)^(i-1) sigma_(k-i) s_i`.
///
/// Input and output are indexed from 1: element 0 holds index 1.
pub fn newton_girard(input: &[Complex64], direction: Direction) -> Vec<Complex64> {
    let v = input.len();
    let one = Complex64::new(1.0, 0.0);
    let sign = |i: usize| if i % 2 == 1 { 1.0 } else { -1.0 };
    match direction {
        Direction::PowerSumsToElementary => {
            let s = input;
            let mut sigma = vec![one];
            for k in 1..=v {
                let acc: Complex64 = (1..=k).map(|i| sign(i) * sigma[k - i] * s[i - 1]).sum();
                sigma.push(acc / k as f64);
            }
            sigma.split_off(1)
        }
        Direction::ElementaryToPowerSums => {
            let mut sigma = vec![one];
            sigma.extend_from_slice(input);
            let mut s: Vec<Complex64> = Vec::with_capacity(v);
            for k in 1..=v {
                // the i = k term of the identity is (-1)^(k-1) s_k
                let rest: Complex64 = (1..k).map(|i| sign(i) * sigma[k - i] * s[i - 1]).sum();
                s.push(sign(k) * (k as f64 * sigma[k] - rest));
            }
            s
        }
    }
}

/// Power sums `s_1..s_count` of a multiset.
pub fn power_sums(points: &[Complex64], count: usize) -> Vec<Complex64> {
    let mut powers = points.to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(powers.iter().sum());
        for (p, &x) in powers.iter_mut().zip(points) {
            *p *= x;
        }
    }
    out
}

/// `sigma_0..sigma_n` of a multiset of size `n`, by direct expansion.
pub fn elementary_symmetric(points: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(1.0, 0.0)];
    for &x in points {
        e.push(Complex64::new(0.0, 0.0));
        for k in (1..e.len()).rev() {
            let prev = e[k - 1];
            e[k] += x * prev;
        }
    }
    e
}

/// Coefficients `g_0..g_order` of `exp(-sum_k p_k x^k / k)`, computed with
/// the Newton–Girard recursion `k g_k = -sum_{j=1..k} p_j g_(k-j)`.
///
/// When `p` are the power sums of a multiset this is `prod_j (1 - x_j x)`,
/// so `g_k = (-1)^k sigma_k`. `p` is indexed from 1 and must hold at least
/// `order` terms.
pub fn series_from_power_sums(p: &[Complex64], order: usize) -> Vec<Complex64> {
    assert!(p.len() >= order, "need {order} power sums, got {}", p.len());
    let mut g = vec![Complex64::new(1.0, 0.0)];
    for k in 1..=order {
        let acc: Complex64 = (1..=k).map(|j| p[j - 1] * g[k - j]).sum();
        g.push(-acc / k as f64);
    }
    g
}

/// Output of [`reflect_sigma`].
#[derive(Debug, Clone, PartialEq)]
pub struct Reflection {
    /// `sigma_0..sigma_M`.
    pub sigma: Vec<Complex64>,
    /// `max_k |conj(sigma_k) sigma_M - sigma_(M-k)|` over the completed
    /// sequence; zero for every multiset of unit complex numbers.
    pub consistency: f64,
}

/// Completes `sigma_0..sigma_M` from the known `sigma_0..sigma_N` and
/// `sigma_M`, using `sigma_(M-k) = conj(sigma_k) sigma_M`, which holds when
/// every element of the multiset has modulus 1.
pub fn reflect_sigma(
    sigma: &[Complex64],
    sigma_m: Complex64,
    m: usize,
) -> Result<Reflection, SymmetricError> {
    if sigma.is_empty() || m == 0 || m + 1 > 2 * sigma.len() {
        return Err(SymmetricError::BadDegree {
            m,
            known: sigma.len(),
        });
    }
    if sigma_m.norm() == 0.0 {
        return Err(SymmetricError::ZeroProduct);
    }
    let n = sigma.len() - 1;
    let mut out: Vec<Complex64> = sigma.iter().take(m).copied().collect();
    for nu in out.len()..m {
        debug_assert!(nu > n && m - nu <= n);
        out.push(sigma[m - nu].conj() * sigma_m);
    }
    out.push(sigma_m);
    let consistency = (0..=m)
        .map(|k| (out[k].conj() * sigma_m - out[m - k]).norm())
        .fold(0.0, f64::max);
    Ok(Reflection {
        sigma: out,
        consistency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-13)
    }

    #[test]
    fn newton_girard_examples() {
        assert!(close(
            &newton_girard(&[c(0.0, 0.0), c(2.0, 0.0)], PowerSumsToElementary),
            &[c(0.0, 0.0), c(-1.0, 0.0)]
        ));
        assert!(close(
            &newton_girard(&[c(2.0, 0.0), c(2.0, 0.0)], PowerSumsToElementary),
            &[c(2.0, 0.0), c(1.0, 0.0)]
        ));
        assert!(close(&newton_girard(&[c(1.0, 0.0)], PowerSumsToElementary), &[c(1.0, 0.0)]));
        assert!(close(
            &newton_girard(&[c(0.0, 0.0), c(-1.0, 0.0)], ElementaryToPowerSums),
            &[c(0.0, 0.0), c(2.0, 0.0)]
        ));
    }

    #[test]
    fn newton_girard_matches_direct_expansion() {
        let pts = [c(0.3, 0.4), c(-1.0, 0.2), c(0.0, 1.0), c(2.0, -0.5)];
        let s = power_sums(&pts, 4);
        let sigma = elementary_symmetric(&pts);
        assert!(close(&newton_girard(&s, PowerSumsToElementary), &sigma[1..]));
        assert!(close(&newton_girard(&sigma[1..], ElementaryToPowerSums), &s));
    }

    #[test]
    fn series_is_signed_sigma() {
        let pts = [c(0.6, 0.8), c(-1.0, 0.0), c(0.0, -1.0)];
        let g = series_from_power_sums(&power_sums(&pts, 5), 5);
        let sigma = elementary_symmetric(&pts);
        for k in 0..=5 {
            let expect = if k <= 3 {
                sigma[k] * if k % 2 == 0 { 1.0 } else { -1.0 }
            } else {
                c(0.0, 0.0)
            };
            assert!((g[k] - expect).norm() < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn reflect_pair() {
        let r = reflect_sigma(&[c(1.0, 0.0), c(0.0, 0.0)], c(-1.0, 0.0), 2).unwrap();
        assert!(close(&r.sigma, &[c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]));
        assert!(r.consistency < 1e-15);
    }

    #[test]
    fn reflect_fourth_roots() {
        let r = reflect_sigma(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], c(-1.0, 0.0), 4).unwrap();
        assert!(close(&r.sigma, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]));
    }

    #[test]
    fn reflect_reports_consistency() {
        // {i, i}: sigma_1 = 2i, sigma_2 = -1
        let known = [c(1.0, 0.0), c(0.0, 2.0)];
        let good = reflect_sigma(&known, c(-1.0, 0.0), 2).unwrap();
        assert!(close(&good.sigma, &[c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 0.0)]));
        assert!(good.consistency < 1e-15);
        let bad = reflect_sigma(&known, c(1.0, 0.0), 2).unwrap();
        assert_eq!(bad.sigma[2], c(1.0, 0.0));
        // conj(2i) * 1 - 2i = -4i
        assert!((bad.consistency - 4.0).abs() < 1e-15);
    }

    #[test]
    fn reflect_errors() {
        assert_eq!(
            reflect_sigma(&[c(1.0, 0.0)], c(0.0, 0.0), 1),
            Err(SymmetricError::ZeroProduct)
        );
        assert!(matches!(
            reflect_sigma(&[c(1.0, 0.0), c(0.0, 0.0)], c(1.0, 0.0), 4),
            Err(SymmetricError::BadDegree { .. })
        ));
    }
}
