//! Express theta products exactly in their bases, evaluate the resulting
//! closed formulas, and audit the embedded reference tables.
//!
//! Solving is deliberately overdetermined: the linear system is formed from
//! every known q-coefficient (rows `n = 0 .. prec-1`), the first
//! `dim`-many independent rows determine the solution, and all remaining
//! rows are checked as residuals. Any residual failure is a transcription or
//! construction bug and surfaces as [`Error::InconsistentSystem`].

use num_traits::Zero;

use crate::bases::{coefficient_matrix, Basis, SpaceId};
use crate::error::{Error, Result};
use crate::linalg::{self, LinalgError};
use crate::rational::Q;
use crate::repcount::QuadraticForm;
use crate::series::QSeries;
use crate::tables::{self, TableId};

/// Exact coordinates of a theta product in a space's basis, aligned with the
/// reference table columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientVector {
    pub space: SpaceId,
    pub entries: Vec<Q>,
}

/// Solve `sum_i v_i * basis_i = theta_product(form)` exactly.
///
/// `prec` rows are used; the solution must satisfy every one of them.
pub fn solve_coefficients(
    form: &QuadraticForm,
    basis: &Basis,
    prec: usize,
) -> Result<CoefficientVector> {
    let dim = basis.dimension();
    assert!(
        prec >= 2 * dim + 8,
        "prec {prec} too small for a {dim}-dimensional solve"
    );
    assert!(basis.prec() >= prec, "basis not expanded far enough");
    assert_eq!(
        form.space(),
        basis.space,
        "form belongs to a different space"
    );
    let product = form.theta_product(prec);
    let rows = coefficient_matrix(&basis.elements, prec - 1);
    let rhs: Vec<Q> = (0..prec).map(|n| product.coeff(n).clone()).collect();
    match linalg::solve_overdetermined(&rows, &rhs) {
        Ok(entries) => Ok(CoefficientVector {
            space: basis.space,
            entries,
        }),
        Err(LinalgError::RankDeficient { rank }) => Err(Error::RankDeficient {
            space: basis.space.to_string(),
            rank,
            expected: dim,
            dependent: Vec::new(),
        }),
        Err(LinalgError::Inconsistent { row }) => Err(Error::InconsistentSystem {
            context: form.label(),
            row,
        }),
    }
}

/// `sum_i v_i * (coefficient of q^n in basis element i)`.
pub fn eval_formula(v: &CoefficientVector, basis: &Basis, n: usize) -> Q {
    assert_eq!(v.entries.len(), basis.dimension());
    let mut acc = Q::zero();
    for (coeff, elem) in v.entries.iter().zip(&basis.elements) {
        if !coeff.is_zero() {
            acc += coeff * elem.series.coeff(n);
        }
    }
    acc
}

/// One disagreement between the solved formula and the lattice count.
#[derive(Debug, Clone)]
pub struct Violation {
    pub n: u64,
    pub formula: Q,
    pub count: u64,
}

/// Outcome of checking a form's formula against brute-force counts.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub form: String,
    pub n_max: u64,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check `eval_formula(solve(form), n) == count_representations(form, n)` for
/// all `0 <= n <= n_max`. Violations are reported as data, not errors.
pub fn verify_form(
    form: &QuadraticForm,
    basis: &Basis,
    prec: usize,
    n_max: u64,
) -> Result<VerifyReport> {
    assert!(
        (n_max as usize) < prec,
        "verification range exceeds precision"
    );
    let v = solve_coefficients(form, basis, prec)?;
    let mut violations = Vec::new();
    for n in 0..=n_max {
        let formula = eval_formula(&v, basis, n as usize);
        let count = form.count_representations(n);
        if formula != Q::from_integer(count.into()) {
            violations.push(Violation { n, formula, count });
        }
    }
    Ok(VerifyReport {
        form: form.label(),
        n_max,
        violations,
    })
}

/// One table entry compared against the solved value.
#[derive(Debug, Clone)]
pub struct TableDiff {
    pub table: TableId,
    pub row_label: String,
    /// 1-based column (basis element index).
    pub column: usize,
    pub reference: Q,
    pub computed: Q,
}

impl TableDiff {
    pub fn matches(&self) -> bool {
        self.reference == self.computed
    }
}

/// Brute-force arbitration for a mismatched row: which of the two coordinate
/// vectors actually reproduces the representation counts.
#[derive(Debug, Clone)]
pub struct ErratumRecord {
    pub table: TableId,
    pub row_label: String,
    pub columns: Vec<usize>,
    pub reference_row_matches_counts: bool,
    pub solved_row_matches_counts: bool,
}

/// Full audit of one embedded table.
#[derive(Debug, Clone)]
pub struct TableAudit {
    pub table: TableId,
    pub diffs: Vec<TableDiff>,
    pub errata: Vec<ErratumRecord>,
    pub remediation: Option<crate::bases::RemediationReport>,
}

impl TableAudit {
    pub fn mismatch_count(&self) -> usize {
        self.diffs.iter().filter(|d| !d.matches()).count()
    }
}

/// Forms covered by a table, in row order.
pub fn forms_for_table(table: TableId) -> Result<Vec<QuadraticForm>> {
    Ok(match table {
        3..=6 => crate::repcount::forms_for_space(tables::space_for_table(table)?),
        7 => crate::repcount::family_b_forms(),
        other => return Err(Error::Parse(format!("unknown table id {other}"))),
    })
}

/// Solve every form of a table and diff the coordinates against the embedded
/// reference rows. Mismatched rows are arbitrated against the brute-force
/// counts (`n <= arbitration_n_max`) and reported as erratum records; a
/// mismatch is data, not a failure, unless the solved row itself fails the
/// counts.
pub fn diff_table(
    table: TableId,
    basis: &Basis,
    prec: usize,
    arbitration_n_max: u64,
) -> Result<TableAudit> {
    assert_eq!(basis.space, tables::space_for_table(table)?);
    let reference = tables::reference_tables();
    let mut diffs = Vec::new();
    let mut errata = Vec::new();
    for form in forms_for_table(table)? {
        let label = form.table_row_label();
        let row = reference
            .get(table, &label)
            .ok_or_else(|| Error::Parse(format!("table {table} has no row {label}")))?;
        let solved = solve_coefficients(&form, basis, prec)?;
        let mut bad_columns = Vec::new();
        for (i, (reference, computed)) in row.entries.iter().zip(&solved.entries).enumerate() {
            let diff = TableDiff {
                table,
                row_label: label.clone(),
                column: i + 1,
                reference: reference.clone(),
                computed: computed.clone(),
            };
            if !diff.matches() {
                bad_columns.push(i + 1);
            }
            diffs.push(diff);
        }
        if !bad_columns.is_empty() {
            let reference_vec = CoefficientVector {
                space: basis.space,
                entries: row.entries.clone(),
            };
            let reference_ok = (0..=arbitration_n_max).all(|n| {
                eval_formula(&reference_vec, basis, n as usize)
                    == Q::from_integer(form.count_representations(n).into())
            });
            let solved_ok = (0..=arbitration_n_max).all(|n| {
                eval_formula(&solved, basis, n as usize)
                    == Q::from_integer(form.count_representations(n).into())
            });
            errata.push(ErratumRecord {
                table,
                row_label: label,
                columns: bad_columns,
                reference_row_matches_counts: reference_ok,
                solved_row_matches_counts: solved_ok,
            });
        }
    }
    Ok(TableAudit {
        table,
        diffs,
        errata,
        remediation: basis.remediation.clone(),
    })
}

/// Check a solved vector against the stated catalog row (used by tests and
/// the acceptance suite).
pub fn reference_row_for(form: &QuadraticForm) -> Option<&'static [Q]> {
    let table = match form {
        QuadraticForm::A { .. } => tables::table_for_space(form.space()),
        QuadraticForm::B { .. } => 7,
    };
    tables::reference_tables()
        .get(table, &form.table_row_label())
        .map(|row| row.entries.as_slice())
}

/// The theta product reconstructed from basis coordinates; used to assert
/// uniqueness-style identities in tests.
pub fn contract(v: &CoefficientVector, basis: &Basis, prec: usize) -> QSeries {
    let mut acc = QSeries::zero(prec);
    for (coeff, elem) in v.entries.iter().zip(&basis.elements) {
        acc = acc.add(&elem.series.truncate(prec).scale(coeff));
    }
    acc
}
