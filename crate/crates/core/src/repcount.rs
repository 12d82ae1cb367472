//! The quadratic-form catalog and the ground-truth representation counts.
//!
//! Two families are covered. Family A is
//! `a1 x1^2 + a2 x2^2 + a3 x3^2 + a4 x4^2 + b1 (x5^2+x5x6+x6^2) + b2 (x7^2+x7x8+x8^2)`
//! with `a_i in {1,2,3}` sorted and `b_i in {1,2,4}` sorted; family B is
//! `(x1^2+x1x2+x2^2) + c1 (...) + c2 (...) + c3 (...)` with `c_i in {1,2,4,8}`
//! sorted. Counts come from direct nested lattice enumeration with the
//! residual budget passed inward, entirely independent of the q-series
//! pipeline; [`theta_product`] builds the matching generating function.

use crate::bases::SpaceId;
use crate::error::{Error, Result};
use crate::generators::{borwein_f, hex_coord_bound, hex_counts, theta_series};
use crate::series::QSeries;

const FAMILY_A_SQUARE_COEFFS: [u32; 3] = [1, 2, 3];
const FAMILY_A_HEX_COEFFS: [u32; 3] = [1, 2, 4];
const FAMILY_B_HEX_COEFFS: [u32; 4] = [1, 2, 4, 8];

/// A form from family A (`(a1..a4, b1, b2)`) or family B (`(c1, c2, c3)`,
/// with the implicit unit hexagonal summand in front).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadraticForm {
    A { a: [u32; 4], b: [u32; 2] },
    B { c: [u32; 3] },
}

fn check_sorted_members(field: &str, values: &[u32], allowed: &[u32]) -> Result<()> {
    for pair in values.windows(2) {
        if pair[0] > pair[1] {
            return Err(Error::ConstraintViolation {
                field: field.into(),
                message: format!("coefficients must be sorted ascending, got {values:?}"),
            });
        }
    }
    for &v in values {
        if !allowed.contains(&v) {
            return Err(Error::ConstraintViolation {
                field: field.into(),
                message: format!("coefficient {v} not in allowed set {allowed:?}"),
            });
        }
    }
    Ok(())
}

impl QuadraticForm {
    pub fn family_a(a: [u32; 4], b: [u32; 2]) -> Result<Self> {
        check_sorted_members("a", &a, &FAMILY_A_SQUARE_COEFFS)?;
        check_sorted_members("b", &b, &FAMILY_A_HEX_COEFFS)?;
        Ok(QuadraticForm::A { a, b })
    }

    pub fn family_b(c: [u32; 3]) -> Result<Self> {
        check_sorted_members("c", &c, &FAMILY_B_HEX_COEFFS)?;
        Ok(QuadraticForm::B { c })
    }

    /// Parse `"A:a1,a2,a3,a4,b1,b2"` or `"B:c1,c2,c3"`.
    pub fn parse(label: &str) -> Result<Self> {
        let (family, rest) = label.split_once(':').ok_or_else(|| {
            Error::Parse(format!("form label {label:?} needs a 'A:' or 'B:' prefix"))
        })?;
        let nums: Vec<u32> = rest
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?} in {label:?}")))
            })
            .collect::<Result<_>>()?;
        match family {
            "A" | "a" => {
                if nums.len() != 6 {
                    return Err(Error::Parse(format!(
                        "family A takes 6 coefficients, got {}",
                        nums.len()
                    )));
                }
                Self::family_a([nums[0], nums[1], nums[2], nums[3]], [nums[4], nums[5]])
            }
            "B" | "b" => {
                if nums.len() != 3 {
                    return Err(Error::Parse(format!(
                        "family B takes 3 coefficients, got {}",
                        nums.len()
                    )));
                }
                Self::family_b([nums[0], nums[1], nums[2]])
            }
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }

    pub fn label(&self) -> String {
        match self {
            QuadraticForm::A { a, b } => {
                format!("A:{},{},{},{},{},{}", a[0], a[1], a[2], a[3], b[0], b[1])
            }
            QuadraticForm::B { c } => format!("B:{},{},{}", c[0], c[1], c[2]),
        }
    }

    /// Row label used by the embedded coefficient tables:
    /// `"(1123,14)"` for family A, `"(1,1,2,4)"` for family B.
    pub fn table_row_label(&self) -> String {
        match self {
            QuadraticForm::A { a, b } => {
                format!("({}{}{}{},{}{})", a[0], a[1], a[2], a[3], b[0], b[1])
            }
            QuadraticForm::B { c } => format!("(1,{},{},{})", c[0], c[1], c[2]),
        }
    }

    /// The character space the form's theta product lives in. For family A
    /// this is decided by `a1 a2 a3 a4` modulo squares (1 -> trivial,
    /// 2 -> chi8, 3 -> chi12, 6 -> chi24); family B is always trivial.
    pub fn space(&self) -> SpaceId {
        match self {
            QuadraticForm::A { a, .. } => {
                let mut squarefree: u32 = 1;
                for &ai in a {
                    squarefree = squarefree_part(squarefree * ai);
                }
                match squarefree {
                    1 => SpaceId::Trivial,
                    2 => SpaceId::Chi8,
                    3 => SpaceId::Chi12,
                    6 => SpaceId::Chi24,
                    other => unreachable!("squarefree part {other} cannot arise from {{1,2,3}}"),
                }
            }
            QuadraticForm::B { .. } => SpaceId::Trivial,
        }
    }

    /// Exact number of integer solutions of `form = n`, by nested enumeration.
    ///
    /// Hexagonal pairs are iterated outermost with the remaining budget passed
    /// inward; square variables run over `x >= 0` with a sign multiplicity,
    /// and the innermost variable is resolved by a perfect-square or
    /// table-lookup test rather than a loop.
    pub fn count_representations(&self, n: u64) -> u64 {
        match self {
            QuadraticForm::A { a, b } => count_family_a(*a, *b, n as i64),
            QuadraticForm::B { c } => count_family_b(*c, n as i64),
        }
    }

    /// The generating function of the representation counts: a product of
    /// dilated theta / hexagonal-theta series.
    pub fn theta_product(&self, prec: usize) -> QSeries {
        assert!(prec >= 1);
        match self {
            QuadraticForm::A { a, b } => {
                let theta = theta_series(prec);
                let hex = borwein_f(prec);
                let mut acc = theta.dilate(a[0] as usize);
                for &ai in &a[1..] {
                    acc = acc.mul(&theta.dilate(ai as usize));
                }
                for &bi in b {
                    acc = acc.mul(&hex.dilate(bi as usize));
                }
                acc
            }
            QuadraticForm::B { c } => {
                let hex = borwein_f(prec);
                let mut acc = hex.clone();
                for &ci in c {
                    acc = acc.mul(&hex.dilate(ci as usize));
                }
                acc
            }
        }
    }
}

impl std::fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

fn squarefree_part(n: u32) -> u32 {
    let mut n = n;
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d * d) {
            n /= d * d;
        }
        d += 1;
    }
    n
}

/// Iterate hexagonal pairs `(x, y)` with `x^2 + xy + y^2 <= budget`.
fn for_each_hex_value(budget: i64, mut f: impl FnMut(i64)) {
    let bound = hex_coord_bound(budget);
    for x in -bound..=bound {
        for y in -bound..=bound {
            let v = x * x + x * y + y * y;
            if v <= budget {
                f(v);
            }
        }
    }
}

fn is_perfect_square(v: i64) -> bool {
    if v < 0 {
        return false;
    }
    let r = (v as f64).sqrt() as i64;
    for cand in [r - 1, r, r + 1] {
        if cand >= 0 && cand * cand == v {
            return true;
        }
    }
    false
}

fn count_family_a(a: [u32; 4], b: [u32; 2], n: i64) -> u64 {
    let (b1, b2) = (b[0] as i64, b[1] as i64);
    let (a1, a2, a3, a4) = (a[0] as i64, a[1] as i64, a[2] as i64, a[3] as i64);
    let mut total = 0u64;
    for_each_hex_value(n / b1, |h1| {
        let rem1 = n - b1 * h1;
        for_each_hex_value(rem1 / b2, |h2| {
            let rem2 = rem1 - b2 * h2;
            let mut x1 = 0i64;
            while a1 * x1 * x1 <= rem2 {
                let m1 = if x1 == 0 { 1 } else { 2 };
                let rem3 = rem2 - a1 * x1 * x1;
                let mut x2 = 0i64;
                while a2 * x2 * x2 <= rem3 {
                    let m2 = if x2 == 0 { 1 } else { 2 };
                    let rem4 = rem3 - a2 * x2 * x2;
                    let mut x3 = 0i64;
                    while a3 * x3 * x3 <= rem4 {
                        let m3 = if x3 == 0 { 1 } else { 2 };
                        let rem5 = rem4 - a3 * x3 * x3;
                        if rem5 % a4 == 0 {
                            let v = rem5 / a4;
                            if v == 0 {
                                total += m1 * m2 * m3;
                            } else if is_perfect_square(v) {
                                total += m1 * m2 * m3 * 2;
                            }
                        }
                        x3 += 1;
                    }
                    x2 += 1;
                }
                x1 += 1;
            }
        });
    });
    total
}

fn count_family_b(c: [u32; 3], n: i64) -> u64 {
    let (c1, c2, c3) = (c[0] as i64, c[1] as i64, c[2] as i64);
    // Innermost pair resolved by table lookup of hexagonal counts.
    let hex = hex_counts((n / c3) as usize);
    let mut total = 0u64;
    for_each_hex_value(n, |h0| {
        let rem1 = n - h0;
        for_each_hex_value(rem1 / c1, |h1| {
            let rem2 = rem1 - c1 * h1;
            for_each_hex_value(rem2 / c2, |h2| {
                let rem3 = rem2 - c2 * h2;
                if rem3 % c3 == 0 {
                    total += hex[(rem3 / c3) as usize];
                }
            });
        });
    });
    total
}

/// The full catalog: 90 family-A forms (36/18/18/18 across the four character
/// spaces) followed by the 19 family-B forms, both in lexicographic order.
/// `(1,1,1,1)` from family B is excluded (its formula is classical); it
/// remains constructible for self-tests.
pub fn enumerate_forms() -> Vec<QuadraticForm> {
    let mut forms = Vec::with_capacity(109);
    let s = FAMILY_A_SQUARE_COEFFS;
    let h = FAMILY_A_HEX_COEFFS;
    for a1 in s {
        for a2 in s.into_iter().filter(|&v| v >= a1) {
            for a3 in s.into_iter().filter(|&v| v >= a2) {
                for a4 in s.into_iter().filter(|&v| v >= a3) {
                    for b1 in h {
                        for b2 in h.into_iter().filter(|&v| v >= b1) {
                            forms.push(QuadraticForm::A {
                                a: [a1, a2, a3, a4],
                                b: [b1, b2],
                            });
                        }
                    }
                }
            }
        }
    }
    let hb = FAMILY_B_HEX_COEFFS;
    for c1 in hb {
        for c2 in hb.into_iter().filter(|&v| v >= c1) {
            for c3 in hb.into_iter().filter(|&v| v >= c2) {
                if [c1, c2, c3] == [1, 1, 1] {
                    continue;
                }
                forms.push(QuadraticForm::B { c: [c1, c2, c3] });
            }
        }
    }
    forms
}

/// The family-A forms belonging to one character space, in catalog order.
pub fn forms_for_space(space: SpaceId) -> Vec<QuadraticForm> {
    enumerate_forms()
        .into_iter()
        .filter(|f| match f {
            QuadraticForm::A { .. } => f.space() == space,
            QuadraticForm::B { .. } => false,
        })
        .collect()
}

/// The family-B forms, in catalog order.
pub fn family_b_forms() -> Vec<QuadraticForm> {
    enumerate_forms()
        .into_iter()
        .filter(|f| matches!(f, QuadraticForm::B { .. }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_int;

    #[test]
    fn catalog_counts() {
        let forms = enumerate_forms();
        assert_eq!(forms.len(), 109);
        let a_forms: Vec<_> = forms
            .iter()
            .filter(|f| matches!(f, QuadraticForm::A { .. }))
            .collect();
        assert_eq!(a_forms.len(), 90);
        assert_eq!(family_b_forms().len(), 19);
        let count_in = |space| a_forms.iter().filter(|f| f.space() == space).count();
        assert_eq!(count_in(SpaceId::Trivial), 36);
        assert_eq!(count_in(SpaceId::Chi8), 18);
        assert_eq!(count_in(SpaceId::Chi12), 18);
        assert_eq!(count_in(SpaceId::Chi24), 18);
    }

    #[test]
    fn space_assignment_examples() {
        let f = QuadraticForm::family_a([1, 1, 2, 3], [1, 1]).unwrap();
        assert_eq!(f.space(), SpaceId::Chi24);
        let f = QuadraticForm::family_a([1, 1, 3, 3], [2, 4]).unwrap();
        assert_eq!(f.space(), SpaceId::Trivial);
        let f = QuadraticForm::family_a([1, 2, 3, 3], [1, 1]).unwrap();
        assert_eq!(f.space(), SpaceId::Chi8);
        let f = QuadraticForm::family_a([1, 3, 3, 3], [4, 4]).unwrap();
        assert_eq!(f.space(), SpaceId::Chi12);
        let f = QuadraticForm::family_b([2, 4, 8]).unwrap();
        assert_eq!(f.space(), SpaceId::Trivial);
    }

    #[test]
    fn constraint_violations() {
        assert!(QuadraticForm::family_a([3, 1, 1, 1], [1, 1]).is_err());
        assert!(QuadraticForm::family_a([1, 1, 1, 4], [1, 1]).is_err());
        assert!(QuadraticForm::family_a([1, 1, 1, 1], [4, 1]).is_err());
        assert!(QuadraticForm::family_a([1, 1, 1, 1], [1, 3]).is_err());
        assert!(QuadraticForm::family_b([8, 1, 1]).is_err());
        assert!(QuadraticForm::family_b([1, 1, 3]).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for label in ["A:1,1,2,3,1,4", "B:1,2,8"] {
            let f = QuadraticForm::parse(label).unwrap();
            assert_eq!(f.label(), label);
        }
        assert!(QuadraticForm::parse("A:3,1,1,1,1,1").is_err());
        assert!(QuadraticForm::parse("C:1,1,1").is_err());
        assert!(QuadraticForm::parse("A:1,1,1").is_err());
        assert!(QuadraticForm::parse("B:1,x,1").is_err());
    }

    #[test]
    fn count_base_cases() {
        let f = QuadraticForm::family_a([1, 1, 1, 1], [1, 1]).unwrap();
        assert_eq!(f.count_representations(0), 1);
        assert_eq!(f.count_representations(1), 20);
        let f = QuadraticForm::family_b([1, 1, 2]).unwrap();
        assert_eq!(f.count_representations(0), 1);
        assert_eq!(f.count_representations(1), 18);
        assert_eq!(f.count_representations(2), 114);
        let f = QuadraticForm::family_a([1, 1, 2, 3], [1, 1]).unwrap();
        assert_eq!(f.count_representations(1), 16);
    }

    #[test]
    fn theta_product_matches_counts() {
        let prec = 25usize;
        for form in [
            QuadraticForm::family_a([1, 1, 1, 1], [1, 1]).unwrap(),
            QuadraticForm::family_a([1, 2, 2, 3], [2, 4]).unwrap(),
            QuadraticForm::family_a([2, 3, 3, 3], [1, 4]).unwrap(),
            QuadraticForm::family_b([1, 1, 2]).unwrap(),
            QuadraticForm::family_b([2, 4, 8]).unwrap(),
        ] {
            let series = form.theta_product(prec);
            for n in 0..prec {
                assert_eq!(
                    series.coeff(n),
                    &q_int(form.count_representations(n as u64) as i64),
                    "{form} at {n}"
                );
            }
        }
    }

    #[test]
    fn row_labels() {
        let f = QuadraticForm::family_a([1, 1, 2, 3], [1, 4]).unwrap();
        assert_eq!(f.table_row_label(), "(1123,14)");
        let f = QuadraticForm::family_b([2, 4, 8]).unwrap();
        assert_eq!(f.table_row_label(), "(1,2,4,8)");
    }
}
