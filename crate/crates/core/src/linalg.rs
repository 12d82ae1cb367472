//! Exact rational linear algebra: fraction-free Gauss-Jordan elimination
//! with gcd normalization, rank computation, and overdetermined solving.
//!
//! Rows are cleared to integer vectors (times the lcm of their denominators)
//! and combined by cross-multiplication, so no fraction ever appears during
//! elimination; each combined row is divided by the gcd of its entries to
//! keep growth down. Pivots are chosen by minimal bit length.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    /// The usable columns span fewer dimensions than requested.
    RankDeficient { rank: usize },
    /// A row of the system contradicts the others (0-based row index).
    Inconsistent { row: usize },
}

/// Incremental row-echelon structure over integer rows of fixed width.
/// Pivot columns are restricted to `0..pivot_limit`; trailing columns ride
/// along (used for augmented right-hand sides).
struct Echelon {
    width: usize,
    pivot_limit: usize,
    /// `(pivot column, row)`; rows are mutually reduced: each row is zero on
    /// every other row's pivot column.
    pivots: Vec<(usize, Vec<BigInt>)>,
}

fn normalize(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_negative = row
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    if lead_negative {
        g = -g;
    }
    if !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

impl Echelon {
    fn new(width: usize, pivot_limit: usize) -> Self {
        assert!(pivot_limit <= width);
        Echelon {
            width,
            pivot_limit,
            pivots: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the current pivots (cross-multiplication).
    fn reduce(&self, mut row: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(row.len(), self.width);
        for (pc, pv) in &self.pivots {
            if row[*pc].is_zero() {
                continue;
            }
            let a = pv[*pc].clone();
            let b = row[*pc].clone();
            for i in 0..self.width {
                row[i] = &row[i] * &a - &pv[i] * &b;
            }
            normalize(&mut row);
        }
        row
    }

    /// Insert an already-reduced row; returns its pivot column, or `None`
    /// when the row has no usable nonzero entry (it is dependent).
    fn insert_reduced(&mut self, row: Vec<BigInt>) -> Option<usize> {
        let pc = (0..self.pivot_limit)
            .filter(|&j| !row[j].is_zero())
            .min_by_key(|&j| row[j].bits())?;
        // Keep the pivot rows mutually reduced (Jordan step).
        for (_, qv) in self.pivots.iter_mut() {
            if qv[pc].is_zero() {
                continue;
            }
            let a = row[pc].clone();
            let b = qv[pc].clone();
            for i in 0..self.width {
                qv[i] = &qv[i] * &a - &row[i] * &b;
            }
            normalize(qv);
        }
        self.pivots.push((pc, row));
        Some(pc)
    }
}

/// Clear denominators: the integer row `lcm * row`, concatenated with
/// `lcm * extra` when an augmented entry is supplied.
fn to_integer_row(row: &[Q], extra: Option<&Q>) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for x in row.iter().chain(extra) {
        lcm = lcm.lcm(x.denom());
    }
    row.iter()
        .chain(extra)
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Rank of a list of rational vectors (all the same length).
pub fn rank_of(vectors: &[Vec<Q>]) -> usize {
    let width = match vectors.first() {
        Some(v) => v.len(),
        None => return 0,
    };
    let mut ech = Echelon::new(width, width);
    for v in vectors {
        let row = ech.reduce(to_integer_row(v, None));
        ech.insert_reduced(row);
    }
    ech.rank()
}

/// Indices (0-based, in input order) of vectors that are linear combinations
/// of the vectors before them.
pub fn dependent_members(vectors: &[Vec<Q>]) -> Vec<usize> {
    let width = match vectors.first() {
        Some(v) => v.len(),
        None => return Vec::new(),
    };
    let mut ech = Echelon::new(width, width);
    let mut dependent = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let row = ech.reduce(to_integer_row(v, None));
        if ech.insert_reduced(row).is_none() {
            dependent.push(idx);
        }
    }
    dependent
}

/// Solve the overdetermined system `rows * x = rhs` exactly.
///
/// Rows are consumed greedily in the given order until full column rank is
/// reached; every remaining row is then checked as a residual. Fails with
/// [`LinalgError::RankDeficient`] if the columns never span, and with
/// [`LinalgError::Inconsistent`] naming the first offending row otherwise.
pub fn solve_overdetermined(rows: &[Vec<Q>], rhs: &[Q]) -> Result<Vec<Q>, LinalgError> {
    assert_eq!(rows.len(), rhs.len());
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut ech = Echelon::new(cols + 1, cols);
    for (idx, (row, b)) in rows.iter().zip(rhs).enumerate() {
        debug_assert_eq!(row.len(), cols);
        let reduced = ech.reduce(to_integer_row(row, Some(b)));
        if reduced[..cols].iter().all(Zero::is_zero) {
            if !reduced[cols].is_zero() {
                return Err(LinalgError::Inconsistent { row: idx });
            }
            continue;
        }
        ech.insert_reduced(reduced);
    }
    if ech.rank() < cols {
        return Err(LinalgError::RankDeficient { rank: ech.rank() });
    }
    let mut solution = vec![Q::zero(); cols];
    for (pc, pv) in &ech.pivots {
        solution[*pc] = Q::new(pv[cols].clone(), pv[*pc].clone());
    }
    Ok(solution)
}
