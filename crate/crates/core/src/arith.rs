//! Number-theoretic scalar kernel.
//!
//! Kronecker symbols, the real Dirichlet characters used by the level-24
//! spaces, divisor sums (plain and character-twisted), and Bernoulli /
//! generalized Bernoulli numbers. All values are exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{q_int, Q};

/// Full Kronecker symbol `(a|n)`, defined for all integers.
///
/// Extends the Jacobi symbol by `(a|2) = 0, +1, -1` for `a` even, `a = ±1 (8)`,
/// `a = ±3 (8)`, together with `(a|-1) = sign(a)` (with `(0|-1) = 1`) and
/// `(a|0) = 1` iff `a = ±1`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result: i32 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    if n % 2 == 0 {
        if a % 2 == 0 {
            return 0;
        }
        let mut twos = 0u32;
        while n % 2 == 0 {
            n /= 2;
            twos += 1;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi part: n odd positive.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Symbolic names for the characters in the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharLabel {
    One,
    Chi4,
    Chi8,
    Chi12,
    Chi24,
    ChiMinus3,
    ChiMinus4,
    ChiMinus8,
    ChiMinus12,
}

impl CharLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CharLabel::One => "1",
            CharLabel::Chi4 => "chi4",
            CharLabel::Chi8 => "chi8",
            CharLabel::Chi12 => "chi12",
            CharLabel::Chi24 => "chi24",
            CharLabel::ChiMinus3 => "chi-3",
            CharLabel::ChiMinus4 => "chi-4",
            CharLabel::ChiMinus8 => "chi-8",
            CharLabel::ChiMinus12 => "chi-12",
        }
    }

    /// The Kronecker-symbol top argument, or 0 for the trivial character.
    fn top(self) -> i64 {
        match self {
            CharLabel::One => 0,
            CharLabel::Chi4 => 4,
            CharLabel::Chi8 => 8,
            CharLabel::Chi12 => 12,
            CharLabel::Chi24 => 24,
            CharLabel::ChiMinus3 => -3,
            CharLabel::ChiMinus4 => -4,
            CharLabel::ChiMinus8 => -8,
            CharLabel::ChiMinus12 => -12,
        }
    }
}

impl std::fmt::Display for CharLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A real Dirichlet character: either the trivial character modulo 1 or a
/// Kronecker symbol `(m|.)` with a fixed top argument `m`.
///
/// Completely multiplicative and periodic with period [`Self::modulus`];
/// vanishes exactly on arguments sharing a factor with the modulus (never,
/// for the trivial character).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    label: CharLabel,
    modulus: i64,
}

impl DirichletCharacter {
    pub fn new(label: CharLabel) -> Self {
        let modulus = match label {
            CharLabel::One => 1,
            other => other.top().abs(),
        };
        DirichletCharacter { label, modulus }
    }

    /// The trivial character modulo 1: identically 1.
    pub fn one() -> Self {
        Self::new(CharLabel::One)
    }

    pub fn from_name(name: &str) -> crate::error::Result<Self> {
        let label = match name {
            "1" | "one" | "triv" => CharLabel::One,
            "chi4" => CharLabel::Chi4,
            "chi8" => CharLabel::Chi8,
            "chi12" => CharLabel::Chi12,
            "chi24" => CharLabel::Chi24,
            "chi-3" => CharLabel::ChiMinus3,
            "chi-4" => CharLabel::ChiMinus4,
            "chi-8" => CharLabel::ChiMinus8,
            "chi-12" => CharLabel::ChiMinus12,
            other => return Err(crate::Error::Parse(format!("unknown character {other:?}"))),
        };
        Ok(Self::new(label))
    }

    /// Every character in the catalog.
    pub fn catalog() -> Vec<Self> {
        use CharLabel::*;
        [
            One, Chi4, Chi8, Chi12, Chi24, ChiMinus3, ChiMinus4, ChiMinus8, ChiMinus12,
        ]
        .into_iter()
        .map(Self::new)
        .collect()
    }

    pub fn label(&self) -> CharLabel {
        self.label
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// Evaluate at `n`. The trivial character returns 1 for every `n`.
    pub fn eval(&self, n: i64) -> i32 {
        if self.label == CharLabel::One {
            1
        } else {
            kronecker(self.label.top(), n)
        }
    }

    pub fn is_even(&self) -> bool {
        self.eval(-1) == 1
    }

    /// Conductor of the underlying primitive character. `chi4` is the only
    /// imprimitive entry in the catalog (it induces the trivial character).
    pub fn conductor(&self) -> i64 {
        match self.label {
            CharLabel::One | CharLabel::Chi4 => 1,
            other => other.top().abs(),
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.label == CharLabel::One || self.conductor() == self.modulus
    }
}

impl std::fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label.as_str())
    }
}

/// Positive divisors of `n >= 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Divisor sum `sigma_k(n)`, or 0 when `n <= 0`.
pub fn sigma(k: u32, n: i64) -> BigInt {
    if n <= 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    for d in divisors(n as u64) {
        acc += BigInt::from(d).pow(k);
    }
    acc
}

/// `sigma_k(x)` extended by 0 to non-integral or non-positive arguments.
///
/// Realizes terms like `sigma_3(n/2)`, which vanish unless `2 | n`.
pub fn sigma_rat(k: u32, x: &Q) -> BigInt {
    if !x.denom().is_one() || !x.numer().is_positive() {
        return BigInt::zero();
    }
    let n: i64 = x.numer().try_into().expect("sigma argument too large");
    sigma(k, n)
}

/// `sigma_k(n/t)`, or 0 when `t` does not divide `n`.
pub fn sigma_div(k: u32, n: u64, t: u64) -> BigInt {
    if n == 0 || !n.is_multiple_of(t) {
        BigInt::zero()
    } else {
        sigma(k, (n / t) as i64)
    }
}

/// Twisted divisor sum `sum_{d|n} psi(d) chi(n/d) d^k`.
///
/// Note the argument roles: `psi` weights the divisor carrying the power,
/// `chi` weights the codivisor.
pub fn sigma_twisted(k: u32, chi: &DirichletCharacter, psi: &DirichletCharacter, n: u64) -> Q {
    assert!(n >= 1);
    let mut acc = BigInt::zero();
    for d in divisors(n) {
        let psi_d = psi.eval(d as i64);
        if psi_d == 0 {
            continue;
        }
        let chi_cod = chi.eval((n / d) as i64);
        if chi_cod == 0 {
            continue;
        }
        let term = BigInt::from(d).pow(k) * (psi_d * chi_cod);
        acc += term;
    }
    Q::from_integer(acc)
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli number `B_k` in the convention `x/(e^x - 1) = sum B_m x^m / m!`,
/// so `B_1 = -1/2`.
pub fn bernoulli(k: u32) -> Q {
    bernoulli_upto(k).pop().unwrap()
}

fn bernoulli_upto(k: u32) -> Vec<Q> {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    let mut b = vec![q_int(1)];
    for m in 1..=k {
        let mut acc = Q::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Q::from_integer(binomial(m + 1, j as u32)) * bj;
        }
        b.push(-acc / q_int(m as i64 + 1));
    }
    b
}

/// Bernoulli polynomial `B_k(x) = sum_j C(k, j) B_j x^(k-j)`.
pub fn bernoulli_poly(k: u32, x: &Q) -> Q {
    let b = bernoulli_upto(k);
    let mut acc = Q::zero();
    let mut xpow = Q::one();
    // Accumulate from j = k down to 0 so the power of x grows by one each step.
    for j in (0..=k).rev() {
        acc += Q::from_integer(binomial(k, j)) * &b[j as usize] * &xpow;
        xpow *= x;
    }
    acc
}

/// Generalized Bernoulli number `B_{k,psi}` for a primitive character `psi`
/// of modulus `f`, via `B_{k,psi} = f^(k-1) sum_{a=1}^{f} psi(a) B_k(a/f)`.
///
/// For the trivial character modulo 1 this is the ordinary `B_k`.
pub fn gen_bernoulli(k: u32, psi: &DirichletCharacter) -> Q {
    let f = psi.modulus();
    if f == 1 {
        return bernoulli(k);
    }
    let mut acc = Q::zero();
    for a in 1..=f {
        let v = psi.eval(a);
        if v == 0 {
            continue;
        }
        acc += bernoulli_poly(k, &crate::rational::q_ratio(a, f)) * q_int(v as i64);
    }
    let scale = if k >= 1 {
        Q::from_integer(BigInt::from(f).pow(k - 1))
    } else {
        Q::new(BigInt::one(), BigInt::from(f))
    };
    scale * acc
}
