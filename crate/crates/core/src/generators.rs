//! q-expansions of the generating functions: the one-dimensional theta
//! function, the hexagonal-lattice (Borwein) theta function, Dedekind eta
//! quotients, and Eisenstein series with and without characters.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{self, DirichletCharacter};
use crate::error::{Error, Result};
use crate::rational::{q_int, Q};
use crate::series::QSeries;

/// `Theta(z) = sum_{n in Z} q^(n^2)`: coefficient 1 at 0, 2 at nonzero
/// perfect squares, 0 otherwise.
pub fn theta_series(prec: usize) -> QSeries {
    assert!(prec >= 1);
    let mut coeffs = vec![Q::zero(); prec];
    coeffs[0] = q_int(1);
    let mut m = 1usize;
    while m * m < prec {
        coeffs[m * m] = q_int(2);
        m += 1;
    }
    QSeries::new(coeffs)
}

/// The two-dimensional theta function of the hexagonal lattice,
/// `F(z) = sum_{x,y in Z} q^(x^2 + xy + y^2)`, by direct enumeration.
///
/// `x^2 + xy + y^2 >= (3/4) max(x^2, y^2)`, so `|x|, |y| <= sqrt(4 prec / 3)`
/// covers every lattice vector below the truncation.
pub fn borwein_f(prec: usize) -> QSeries {
    assert!(prec >= 1);
    let counts = hex_counts(prec - 1);
    QSeries::new(counts.into_iter().map(|c| q_int(c as i64)).collect())
}

/// `counts[v] = #{(x,y) : x^2 + xy + y^2 = v}` for `0 <= v <= max_value`.
pub(crate) fn hex_counts(max_value: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max_value + 1];
    let bound = hex_coord_bound(max_value as i64);
    for x in -bound..=bound {
        for y in -bound..=bound {
            let v = x * x + x * y + y * y;
            if v >= 0 && (v as usize) <= max_value {
                counts[v as usize] += 1;
            }
        }
    }
    counts
}

/// Smallest `B` with `(3/4) B^2 > budget`, i.e. coordinates beyond `B` cannot
/// reach values `<= budget`.
pub(crate) fn hex_coord_bound(budget: i64) -> i64 {
    if budget < 0 {
        return -1;
    }
    let mut b = 0i64;
    while 3 * (b + 1) * (b + 1) <= 4 * budget {
        b += 1;
    }
    b + 1
}

/// A finite product `prod_i eta(d_i z)^(r_i)`, stored as its (dilation,
/// exponent) pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EtaQuotientSpec {
    factors: Vec<(u32, i32)>,
}

impl EtaQuotientSpec {
    /// Dilations must be distinct and positive, exponents nonzero.
    pub fn new(mut factors: Vec<(u32, i32)>) -> Result<Self> {
        factors.sort_by_key(|&(d, _)| d);
        for w in factors.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Parse(format!(
                    "duplicate dilation {} in eta spec",
                    w[0].0
                )));
            }
        }
        if factors.iter().any(|&(d, r)| d == 0 || r == 0) {
            return Err(Error::Parse(
                "eta spec factors need d >= 1 and r != 0".into(),
            ));
        }
        Ok(EtaQuotientSpec { factors })
    }

    /// Parse the compact notation `"1^2 2^2 3^2 6^2"` (exponent defaults to 1).
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for token in text.split_whitespace() {
            let (d, r) = match token.split_once('^') {
                Some((d, r)) => (d, r),
                None => (token, "1"),
            };
            let d: u32 = d
                .parse()
                .map_err(|_| Error::Parse(format!("bad dilation in eta factor {token:?}")))?;
            let r: i32 = r
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in eta factor {token:?}")))?;
            factors.push((d, r));
        }
        if factors.is_empty() {
            return Err(Error::Parse("empty eta quotient spec".into()));
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[(u32, i32)] {
        &self.factors
    }

    /// Twice the weight, `sum r_i`.
    pub fn weight_times_two(&self) -> i32 {
        self.factors.iter().map(|&(_, r)| r).sum()
    }

    /// `sum d_i r_i`; the leading exponent is this over 24.
    pub fn dilation_weighted_sum(&self) -> i64 {
        self.factors.iter().map(|&(d, r)| d as i64 * r as i64).sum()
    }

    /// The order of vanishing at infinity, `sum(d_i r_i) / 24`, which must be
    /// a non-negative integer for a power-series expansion to exist.
    pub fn leading_exponent(&self) -> Result<usize> {
        let sum = self.dilation_weighted_sum();
        if sum % 24 != 0 {
            return Err(Error::NonIntegralLeadingExponent {
                spec: self.to_string(),
                sum,
            });
        }
        let e = sum / 24;
        if e < 0 {
            return Err(Error::NegativeLeadingExponent {
                spec: self.to_string(),
                exponent: e,
            });
        }
        Ok(e as usize)
    }

    /// The spec of `f(tz)`: every dilation multiplied by `t`
    /// (`eta(d(tz)) = eta((td)z)`).
    pub fn dilated(&self, t: u32) -> Self {
        assert!(t >= 1);
        EtaQuotientSpec {
            factors: self.factors.iter().map(|&(d, r)| (d * t, r)).collect(),
        }
    }
}

impl std::fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for &(d, r) in &self.factors {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{d}^{r}")?;
            first = false;
        }
        Ok(())
    }
}

/// `prod_{n >= 1} (1 - q^(d n))`, truncated.
fn euler_product(d: u32, prec: usize) -> QSeries {
    let d = d as usize;
    let mut coeffs = vec![Q::zero(); prec];
    coeffs[0] = q_int(1);
    let mut n = 1usize;
    while n * d < prec {
        // multiply in place by (1 - q^(d n)): new[i] = old[i] - old[i - d n]
        let step = n * d;
        for i in (step..prec).rev() {
            let t = coeffs[i - step].clone();
            coeffs[i] -= t;
        }
        n += 1;
    }
    QSeries::new(coeffs)
}

/// Expand an eta quotient as an exact power series in `q`.
///
/// The `q^(1/24)` prefactors combine into `q^(sum d_i r_i / 24)`, which must
/// be a non-negative integer; each remaining factor is a unit power series,
/// so negative exponents expand by exact series inversion.
pub fn eta_quotient(spec: &EtaQuotientSpec, prec: usize) -> Result<QSeries> {
    assert!(prec >= 1);
    let e = spec.leading_exponent()?;
    let mut unit = QSeries::one(prec);
    for &(d, r) in spec.factors() {
        unit = unit.mul(&euler_product(d, prec).pow(r));
    }
    Ok(unit.shift(e))
}

/// Normalized Eisenstein series
/// `E_k(z) = 1 - (2k / B_k) sum_{n >= 1} sigma_(k-1)(n) q^n`, for even k >= 4.
pub fn eisenstein_ek(k: u32, prec: usize) -> QSeries {
    assert!(k >= 4 && k.is_multiple_of(2), "E_k needs even k >= 4");
    assert!(prec >= 1);
    let factor = -q_int(2 * k as i64) / arith::bernoulli(k);
    let mut coeffs = vec![Q::zero(); prec];
    coeffs[0] = q_int(1);
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = &factor * Q::from_integer(arith::sigma(k - 1, n as i64));
    }
    QSeries::new(coeffs)
}

/// Eisenstein series attached to a pair of primitive characters:
/// `E_(k,chi,psi)(z) = c0 + sum_{n >= 1} (sum_{d|n} psi(d) chi(n/d) d^(k-1)) q^n`
/// with `c0 = -B_(k,psi) / 2k` when `chi` is trivial and 0 otherwise.
///
/// Requires `chi(-1) psi(-1) = (-1)^k`; otherwise the target space is zero
/// and the request is rejected.
pub fn eisenstein_char(
    k: u32,
    chi: &DirichletCharacter,
    psi: &DirichletCharacter,
    prec: usize,
) -> Result<QSeries> {
    assert!(k >= 1 && prec >= 1);
    assert!(
        chi.is_primitive() && psi.is_primitive(),
        "E_(k,chi,psi) needs primitive characters"
    );
    assert!(
        chi.modulus() > 1 || psi.modulus() > 1,
        "both characters trivial: use eisenstein_ek"
    );
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    if chi.eval(-1) * psi.eval(-1) != sign {
        return Err(Error::ParityMismatch {
            k,
            chi: chi.to_string(),
            psi: psi.to_string(),
        });
    }
    let mut coeffs = vec![Q::zero(); prec];
    if chi.modulus() == 1 {
        coeffs[0] = -arith::gen_bernoulli(k, psi) / q_int(2 * k as i64);
    }
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = arith::sigma_twisted(k - 1, chi, psi, n as u64);
    }
    Ok(QSeries::new(coeffs))
}

/// Coefficient of `q^n` in the series, as a plain integer when it is one.
pub fn integer_coeff(series: &QSeries, n: usize) -> Option<BigInt> {
    let c = series.coeff(n);
    if c.denom() == &BigInt::from(1) {
        Some(c.numer().clone())
    } else {
        None
    }
}
