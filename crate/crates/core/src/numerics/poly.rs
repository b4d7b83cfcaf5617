use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

/// Dense polynomial with complex coefficients in ascending degree.
///
/// Trailing zero coefficients are trimmed, so the stored leading
/// coefficient is nonzero unless the polynomial is zero. The same type is
/// used for truncated power series via [`Polynomial::truncated`] and
/// [`Polynomial::mul_truncated`].
#[derive(Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0)])
    }

    /// Monic polynomial `prod_j (z - r_j)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            coeffs.push(Complex64::new(0.0, 0.0));
            for k in (1..coeffs.len()).rev() {
                let lower = coeffs[k - 1];
                coeffs[k] = lower - r * coeffs[k];
            }
            coeffs[0] *= -r;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn monic(&self) -> Option<Self> {
        let lead = self.leading();
        if lead == Complex64::new(0.0, 0.0) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().map(|c| c / lead).collect()))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and derivative at `z` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Keeps the coefficients of degree `0..=order`.
    pub fn truncated(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order + 1).copied().collect())
    }

    /// Product truncated at degree `order`.
    pub fn mul_truncated(&self, other: &Self, order: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(order + 1);
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Coefficients in reverse order, padded to `degree + 1` terms.
    pub fn reversed(&self, degree: usize) -> Self {
        let mut c: Vec<Complex64> = (0..=degree).map(|k| self.coeff(k)).collect();
        c.reverse();
        Self::new(c)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let order = self.degree() + rhs.degree();
        self.mul_truncated(rhs, order)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}
