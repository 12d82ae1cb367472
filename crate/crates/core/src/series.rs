//! Truncated formal power series over exact rationals.
//!
//! A [`QSeries`] stores the coefficients of `q^0 .. q^(prec-1)` densely.
//! Binary operations truncate to the smaller precision; no operation ever
//! claims coefficients it cannot know. Values are immutable after
//! construction and all operations are pure, so series can be shared across
//! threads freely.

use num_traits::{One, Zero};

use crate::arith::DirichletCharacter;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Q>,
}

impl QSeries {
    /// Build from explicit coefficients; the precision is the length.
    pub fn new(coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "a series must have positive precision");
        QSeries { coeffs }
    }

    pub fn zero(prec: usize) -> Self {
        assert!(prec >= 1);
        QSeries {
            coeffs: vec![Q::zero(); prec],
        }
    }

    pub fn one(prec: usize) -> Self {
        let mut s = Self::zero(prec);
        s.coeffs[0] = Q::one();
        s
    }

    /// `c * q^exp`, truncated to `prec`.
    pub fn monomial(c: Q, exp: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if exp < prec {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::rational::q_int(c)).collect())
    }

    /// Number of known coefficients.
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^n`; panics if `n` is beyond the precision.
    pub fn coeff(&self, n: usize) -> &Q {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponent of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drop coefficients from `q^new_prec` on.
    pub fn truncate(&self, new_prec: usize) -> Self {
        assert!(new_prec >= 1 && new_prec <= self.prec());
        QSeries {
            coeffs: self.coeffs[..new_prec].to_vec(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let prec = self.prec().min(other.prec());
        let coeffs = (0..prec)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        QSeries { coeffs }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let prec = self.prec().min(other.prec());
        let coeffs = (0..prec)
            .map(|i| &self.coeffs[i] - &other.coeffs[i])
            .collect();
        QSeries { coeffs }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.prec());
        }
        QSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller precision.
    ///
    /// Schoolbook accumulation; zero coefficients are skipped, which matters
    /// for the sparse theta-type factors.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let prec = self.prec().min(other.prec());
        let mut acc = vec![Q::zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(prec - i) {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] += a * b;
            }
        }
        QSeries { coeffs: acc }
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn invert(&self) -> QSeries {
        let prec = self.prec();
        let a0 = &self.coeffs[0];
        assert!(
            !a0.is_zero(),
            "cannot invert a series with zero constant term"
        );
        let inv_a0 = a0.recip();
        let mut out = vec![Q::zero(); prec];
        out[0] = inv_a0.clone();
        for n in 1..prec {
            let mut s = Q::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !out[n - k].is_zero() {
                    s += &self.coeffs[k] * &out[n - k];
                }
            }
            out[n] = -(s * &inv_a0);
        }
        QSeries { coeffs: out }
    }

    /// Integer power; negative exponents invert first (constant term must be
    /// nonzero in that case).
    pub fn pow(&self, e: i32) -> QSeries {
        if e == 0 {
            return QSeries::one(self.prec());
        }
        let (mut base, mut e) = if e < 0 {
            (self.invert(), e.unsigned_abs())
        } else {
            (self.clone(), e as u32)
        };
        let mut acc = QSeries::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `q^e * f`, truncated to the original precision.
    pub fn shift(&self, e: usize) -> QSeries {
        let prec = self.prec();
        let mut out = vec![Q::zero(); prec];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + e >= prec {
                break;
            }
            out[i + e] = c.clone();
        }
        QSeries { coeffs: out }
    }

    /// Dilation `f(z) -> f(dz)`: the coefficient at `d*n` is the input
    /// coefficient at `n`, everything else 0. Precision is preserved, which
    /// is safe: every claimed coefficient comes from known data.
    pub fn dilate(&self, d: usize) -> QSeries {
        assert!(d >= 1, "dilation factor must be positive");
        if d == 1 {
            return self.clone();
        }
        let prec = self.prec();
        let mut out = vec![Q::zero(); prec];
        let mut i = 0;
        while i * d < prec {
            out[i * d] = self.coeffs[i].clone();
            i += 1;
        }
        QSeries { coeffs: out }
    }

    /// Twist by a character: the coefficient at `n >= 1` becomes
    /// `chi(n) * a(n)`; the constant term becomes 0.
    pub fn twist(&self, chi: &DirichletCharacter) -> QSeries {
        let mut out = vec![Q::zero(); self.prec()];
        for (n, c) in self.coeffs.iter().enumerate().skip(1) {
            match chi.eval(n as i64) {
                0 => {}
                1 => out[n] = c.clone(),
                -1 => out[n] = -c,
                _ => unreachable!("real character values are 0, 1, -1"),
            }
        }
        QSeries { coeffs: out }
    }
}

impl std::fmt::Display for QSeries {
    /// Compact `a0 + a1*q + ...` rendering of the nonzero terms (at most 12).
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut shown = 0;
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if shown == 12 {
                write!(f, " + ...")?;
                break;
            }
            if !first {
                write!(f, " + ")?;
            }
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{n}")?,
            }
            first = false;
            shown += 1;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec())
    }
}
