//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test -p octonary-core --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use std::sync::OnceLock;

use rayon::prelude::*;

use octonary_core::arith::{self, CharLabel, DirichletCharacter};
use octonary_core::bases::{build_basis, coefficient_matrix, SpaceId};
use octonary_core::engine::Engine;
use octonary_core::generators;
use octonary_core::linalg;
use octonary_core::rational::{q_int, q_ratio, Q};
use octonary_core::repcount::{enumerate_forms, QuadraticForm};
use octonary_core::series::QSeries;
use octonary_core::solver;
use octonary_core::Error;

/// Rows n = 0..=200 participate in every solve, pinning the
/// overdetermination criterion.
const ACCEPT_PREC: usize = 201;

fn engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(|| Engine::new(ACCEPT_PREC).expect("engine must build"))
}

#[test]
fn criterion_1_full_oracle_equivalence() {
    let engine = engine();
    let forms = enumerate_forms();
    assert_eq!(forms.len(), 109);
    // Generating-function identity: the theta product IS the count series.
    forms.par_iter().for_each(|form| {
        let product = form.theta_product(41);
        for n in 0..41u64 {
            assert_eq!(
                product.coeff(n as usize),
                &q_int(form.count_representations(n) as i64),
                "{form} product vs count at {n}"
            );
        }
    });
    // Formula identity: eval(solve(form), n) equals the count exactly.
    let reports = engine.verify_all(40).expect("verification must run");
    let failures: Vec<_> = reports.iter().filter(|r| !r.ok()).collect();
    assert!(failures.is_empty(), "violations: {failures:?}");
    println!(
        "PASS criterion 1: formula == brute-force count for {} forms, 0 <= n <= 40 (exact)",
        reports.len()
    );
}

#[test]
fn criterion_2_table_reproduction() {
    let engine = engine();
    // Tables 3, 5, 7 must match entry-for-entry against the printed listings
    // (their spaces need no repair).
    for table in [3u8, 5, 7] {
        let audit = engine.diff_table(table).expect("audit must run");
        assert!(
            audit.remediation.is_none(),
            "table {table} space should not need repair"
        );
        assert_eq!(
            audit.mismatch_count(),
            0,
            "table {table} mismatches: {:?}",
            audit.errata
        );
    }
    // Tables 4 and 6 match under the documented listing repairs; every
    // deviation (if any) must itself pass the brute-force counts.
    for table in [4u8, 6] {
        let audit = engine.diff_table(table).expect("audit must run");
        let remediation = audit
            .remediation
            .as_ref()
            .unwrap_or_else(|| panic!("table {table} audit carries its repair report"));
        for erratum in &audit.errata {
            assert!(
                erratum.solved_row_matches_counts,
                "solved row {} fails counts",
                erratum.row_label
            );
        }
        assert_eq!(
            audit.mismatch_count(),
            0,
            "table {table} should match exactly once the listing is repaired ({remediation})"
        );
    }
    let chi24 = engine.remediation(SpaceId::Chi24).unwrap();
    assert_eq!(chi24.dependent_columns, vec![11]);
    println!(
        "PASS criterion 2: tables 3,5,7 match entry-for-entry as printed; tables 4 and 6 \
         match entry-for-entry under the documented listing repairs (0 value errata)"
    );
}

#[test]
fn criterion_3_dimensions_and_ranks() {
    let engine = engine();
    for space in [SpaceId::Trivial, SpaceId::Chi8, SpaceId::Chi12] {
        let basis = engine.basis(space);
        let rows = coefficient_matrix(&basis.elements, 2 * space.dimension());
        assert_eq!(linalg::rank_of(&rows), space.dimension(), "{space}");
    }
    // The printed chi24 listing must be detected as rank-deficient...
    match build_basis(SpaceId::Chi24, 64) {
        Err(Error::RankDeficient {
            rank,
            expected,
            dependent,
            ..
        }) => {
            assert_eq!((rank, expected), (13, 14));
            assert_eq!(dependent, vec![11]);
        }
        other => panic!("expected RankDeficient for printed chi24 listing, got {other:?}"),
    }
    // ...and the repaired basis has full rank.
    let chi24 = engine.basis(SpaceId::Chi24);
    let rows = coefficient_matrix(&chi24.elements, 2 * SpaceId::Chi24.dimension());
    assert_eq!(linalg::rank_of(&rows), 14);
    println!(
        "PASS criterion 3: ranks 16/14/16 for trivial/chi8/chi12; chi24 deficiency detected \
         (rank 13, column 11) and repaired to rank 14"
    );
}

#[test]
fn criterion_4_classical_identities() {
    // M(1,1,1,1;n) = 24 sigma_3(n) + 216 sigma_3(n/3) for n <= 500. The
    // (1,1,1,1) form sits outside the catalog, so also tie its direct
    // enumerator into the identity on a prefix.
    let form = QuadraticForm::family_b([1, 1, 1]).expect("the classical form is constructible");
    let series = form.theta_product(501);
    for n in 1..=500u64 {
        let expected =
            Q::from_integer(arith::sigma(3, n as i64) * 24 + arith::sigma_div(3, n, 3) * 216);
        assert_eq!(series.coeff(n as usize), &expected, "n = {n}");
        if n <= 30 {
            assert_eq!(
                q_int(form.count_representations(n) as i64),
                expected,
                "count at {n}"
            );
        }
    }
    // Hexagonal counts: r(n) = 6 sum_{d|n} chi_{-3}(d) for n <= 10^4.
    let n_max = 10_000usize;
    let hex = generators::borwein_f(n_max + 1);
    let chi = DirichletCharacter::new(CharLabel::ChiMinus3);
    for n in 1..=n_max {
        let s: i64 = arith::divisors(n as u64)
            .into_iter()
            .map(|d| chi.eval(d as i64) as i64)
            .sum();
        assert_eq!(hex.coeff(n), &q_int(6 * s), "n = {n}");
    }
    println!(
        "PASS criterion 4: M(1,1,1,1;n) = 24 sigma3(n) + 216 sigma3(n/3) for n <= 500; \
         r(n) = 6 sum chi_-3(d) for n <= 10^4 (exact)"
    );
}

/// One additive term of a sample formula from the reference data.
enum Term {
    /// `c * sigma_3(n/t)`
    S3(Q, u64),
    /// `c * sigma_(3;chi,psi)(n/t)`
    St(Q, CharLabel, CharLabel, u64),
    /// `c * a(n/t)` for a named cusp expansion
    Eta(Q, &'static str, u64),
}

fn r(p: i64, q: i64) -> Q {
    q_ratio(p, q)
}

/// Coefficient reads for the named cusp forms in the sample formulas,
/// resolved through the repaired bases: the sample formulas refer to the
/// expansions the tables were computed with, so a repaired entry (trailing
/// `*`) shadows its printed definition.
fn cusp_series(name: &str, prec: usize) -> QSeries {
    let repaired = format!("{name}*");
    for space in SpaceId::all() {
        for e in &engine().basis(space).elements {
            if let Some((n, 1)) = e.descriptor.eta_name() {
                if n == name || n == repaired {
                    return e.series.truncate(prec);
                }
            }
        }
    }
    panic!("no basis element named {name}");
}

fn eval_terms(terms: &[Term], n: u64, prec: usize) -> Q {
    let mut acc = Q::from_integer(0.into());
    for term in terms {
        match term {
            Term::S3(c, t) => acc += c * Q::from_integer(arith::sigma_div(3, n, *t)),
            Term::St(c, chi, psi, t) => {
                if n.is_multiple_of(*t) {
                    let chi = DirichletCharacter::new(*chi);
                    let psi = DirichletCharacter::new(*psi);
                    acc += c * arith::sigma_twisted(3, &chi, &psi, n / t);
                }
            }
            Term::Eta(c, name, t) => {
                if n.is_multiple_of(*t) {
                    acc += c * cusp_series(name, prec).coeff((n / t) as usize);
                }
            }
        }
    }
    acc
}

fn sample_formulas() -> Vec<(QuadraticForm, Vec<Term>)> {
    use CharLabel::*;
    vec![
        (
            QuadraticForm::parse("A:1,1,1,1,1,1").unwrap(),
            vec![
                Term::S3(r(112, 5), 1),
                Term::S3(r(-84, 5), 2),
                Term::S3(r(-432, 5), 3),
                Term::S3(r(-448, 5), 4),
                Term::S3(r(324, 5), 6),
                Term::S3(r(1728, 5), 12),
                Term::Eta(r(-72, 5), "f4_6", 1),
                Term::Eta(r(-288, 5), "f4_6", 2),
                Term::Eta(q_int(12), "f4_12", 1),
            ],
        ),
        (
            QuadraticForm::parse("A:1,1,1,1,1,2").unwrap(),
            vec![
                Term::S3(r(52, 5), 1),
                Term::S3(r(-78, 5), 2),
                Term::S3(r(108, 5), 3),
                Term::S3(r(416, 5), 4),
                Term::S3(r(-324, 5), 6),
                Term::S3(r(864, 5), 12),
                Term::Eta(r(48, 5), "f4_6", 1),
                Term::Eta(r(96, 5), "f4_6", 2),
                Term::Eta(q_int(-6), "f4_12", 1),
            ],
        ),
        (
            QuadraticForm::parse("A:1,1,1,2,1,1").unwrap(),
            vec![
                Term::St(r(-26, 451), One, Chi8, 1),
                Term::St(r(108, 451), One, Chi8, 3),
                Term::St(r(6656, 451), Chi8, One, 1),
                Term::St(r(27648, 451), Chi8, One, 3),
                Term::Eta(r(168, 451), "f4_8_chi8_1", 1),
                Term::Eta(r(11448, 451), "f4_8_chi8_1", 3),
                Term::Eta(r(-2496, 451), "f4_8_chi8_2", 1),
                Term::Eta(r(-17280, 451), "f4_8_chi8_2", 3),
                Term::Eta(r(24, 41), "f4_24_chi8_1", 1),
                Term::Eta(r(936, 41), "f4_24_chi8_2", 1),
                Term::Eta(r(144, 41), "f4_24_chi8_3", 1),
                Term::Eta(r(-384, 41), "f4_24_chi8_4", 1),
                Term::Eta(r(4032, 41), "f4_24_chi8_5", 1),
                Term::Eta(r(-48, 41), "f4_24_chi8_6", 1),
            ],
        ),
        (
            QuadraticForm::parse("A:1,1,1,2,1,2").unwrap(),
            vec![
                Term::St(r(28, 451), One, Chi8, 1),
                Term::St(r(54, 451), One, Chi8, 3),
                Term::St(r(3584, 451), Chi8, One, 1),
                Term::St(r(-6912, 451), Chi8, One, 3),
                Term::Eta(r(480, 451), "f4_8_chi8_1", 1),
                Term::Eta(r(-2052, 451), "f4_8_chi8_1", 3),
                Term::Eta(r(-2688, 451), "f4_8_chi8_2", 1),
                Term::Eta(r(1728, 451), "f4_8_chi8_2", 3),
                Term::Eta(r(-60, 41), "f4_24_chi8_1", 1),
                Term::Eta(r(216, 41), "f4_24_chi8_2", 1),
                Term::Eta(r(-108, 41), "f4_24_chi8_3", 1),
                Term::Eta(r(-2112, 41), "f4_24_chi8_4", 1),
                Term::Eta(r(-1440, 41), "f4_24_chi8_5", 1),
                Term::Eta(r(288, 41), "f4_24_chi8_6", 1),
            ],
        ),
        (
            QuadraticForm::parse("A:1,1,1,3,1,1").unwrap(),
            vec![
                Term::St(r(1, 23), One, Chi12, 1),
                Term::St(r(288, 23), Chi12, One, 1),
                Term::St(r(32, 23), ChiMinus4, ChiMinus3, 1),
                Term::St(r(9, 23), ChiMinus3, ChiMinus4, 1),
                Term::Eta(r(84, 23), "f4_12_chi12_1", 1),
                Term::Eta(r(720, 23), "f4_12_chi12_2", 1),
                Term::Eta(r(336, 23), "f4_12_chi12_3", 1),
                Term::Eta(r(864, 23), "f4_12_chi12_4", 1),
            ],
        ),
        (
            QuadraticForm::parse("A:1,1,1,3,1,2").unwrap(),
            vec![
                Term::St(r(1, 23), One, Chi12, 1),
                Term::St(r(144, 23), Chi12, One, 1),
                Term::St(r(-16, 23), ChiMinus4, ChiMinus3, 1),
                Term::St(r(-9, 23), ChiMinus3, ChiMinus4, 1),
                Term::Eta(r(156, 23), "f4_12_chi12_1", 1),
                Term::Eta(r(-48, 23), "f4_12_chi12_2", 1),
                Term::Eta(r(-168, 23), "f4_12_chi12_3", 1),
                Term::Eta(r(-456, 23), "f4_12_chi12_4", 1),
            ],
        ),
        (
            QuadraticForm::parse("A:1,1,2,3,1,1").unwrap(),
            vec![
                Term::St(r(1, 261), One, Chi24, 1),
                Term::St(r(256, 29), Chi24, One, 1),
                Term::St(r(-256, 261), ChiMinus8, ChiMinus3, 1),
                Term::St(r(-1, 29), ChiMinus3, ChiMinus8, 1),
                Term::Eta(r(1808, 87), "f4_24_chi24_1", 1),
                Term::Eta(r(656, 29), "f4_24_chi24_2", 1),
                Term::Eta(r(-2056, 87), "f4_24_chi24_3", 1),
                Term::Eta(r(-3808, 29), "f4_24_chi24_4", 1),
                Term::Eta(r(-4144, 29), "f4_24_chi24_5", 1),
                Term::Eta(r(736, 3), "f4_24_chi24_6", 1),
                Term::Eta(r(472, 3), "f4_24_chi24_7", 1),
                Term::Eta(r(-41984, 87), "f4_24_chi24_8", 1),
                Term::Eta(r(-1096, 87), "f4_24_chi24_9", 1),
                Term::Eta(r(-968, 87), "f4_24_chi24_10", 1),
            ],
        ),
        (
            QuadraticForm::parse("A:1,1,2,3,1,2").unwrap(),
            vec![
                Term::St(r(1, 261), One, Chi24, 1),
                Term::St(r(128, 29), Chi24, One, 1),
                Term::St(r(128, 261), ChiMinus8, ChiMinus3, 1),
                Term::St(r(1, 29), ChiMinus3, ChiMinus8, 1),
                Term::Eta(r(208, 87), "f4_24_chi24_1", 1),
                Term::Eta(r(-32, 29), "f4_24_chi24_2", 1),
                Term::Eta(r(-284, 87), "f4_24_chi24_3", 1),
                Term::Eta(r(-368, 29), "f4_24_chi24_4", 1),
                Term::Eta(r(1048, 29), "f4_24_chi24_5", 1),
                Term::Eta(r(-6224, 87), "f4_24_chi24_6", 1),
                Term::Eta(r(-7100, 87), "f4_24_chi24_7", 1),
                Term::Eta(r(21248, 87), "f4_24_chi24_8", 1),
                Term::Eta(r(8, 3), "f4_24_chi24_9", 1),
                Term::Eta(r(500, 87), "f4_24_chi24_10", 1),
            ],
        ),
        (
            QuadraticForm::parse("B:1,1,2").unwrap(),
            vec![
                Term::S3(q_int(18), 1),
                Term::S3(q_int(-48), 2),
                Term::S3(q_int(-162), 3),
                Term::S3(q_int(432), 6),
            ],
        ),
        (
            QuadraticForm::parse("B:1,1,4").unwrap(),
            vec![
                Term::S3(r(36, 5), 1),
                Term::S3(q_int(-48), 2),
                Term::S3(r(324, 5), 3),
                Term::S3(r(192, 5), 4),
                Term::S3(r(-972, 5), 6),
                Term::S3(r(1728, 5), 12),
                Term::Eta(r(54, 5), "f4_6", 1),
                Term::Eta(r(432, 5), "f4_6", 2),
            ],
        ),
    ]
}

/// The two printed constants that disagree with their own (verified) table
/// rows; the corrected values are the table coordinates scaled by the E4
/// normalization 240.
fn corrected_formulas() -> Vec<(QuadraticForm, Vec<Term>)> {
    let mut formulas = sample_formulas();
    // N(1,1,1,1,1,2): sigma_3(n/6) carries alpha_5 * 240 = -162/5 (printed -324/5).
    formulas[1].1[4] = Term::S3(r(-162, 5), 6);
    // M(1,1,1,4): sigma_3(n/2) carries nu_2 * 240 = -108/5 (printed -48).
    formulas[9].1[1] = Term::S3(r(-108, 5), 2);
    formulas
}

#[test]
fn criterion_5_sample_formulas() {
    let n_max = 100u64;
    let prec = n_max as usize + 1;
    let engine = engine();

    // The corrected formulas must match the pipeline and the brute-force
    // counts everywhere, exactly.
    let corrected = corrected_formulas();
    for (form, terms) in &corrected {
        let solved = engine.solve(form).expect("solve must succeed");
        for n in 1..=n_max {
            let value = eval_terms(terms, n, prec);
            assert_eq!(value, engine.eval(&solved, n as usize), "{form} at n = {n}");
            assert_eq!(
                value,
                Q::from_integer(form.count_representations(n).into()),
                "{form} against counts at n = {n}"
            );
        }
    }

    // The formulas as printed deviate in exactly two places; everything
    // else matches verbatim.
    let printed = sample_formulas();
    let mut deviating = Vec::new();
    for (form, terms) in &printed {
        let mismatch = (1..=n_max).any(|n| {
            eval_terms(terms, n, prec) != Q::from_integer(form.count_representations(n).into())
        });
        if mismatch {
            deviating.push(form.label());
        }
    }
    assert_eq!(
        deviating,
        vec!["A:1,1,1,1,1,2".to_string(), "B:1,1,4".to_string()],
        "printed-formula errata set changed"
    );

    println!(
        "PASS criterion 5: all {} sample formulas match the pipeline and the counts for \
         1 <= n <= {n_max} exactly, after correcting two printed constants \
         (sigma3(n/6): -324/5 -> -162/5 in the second trivial-space formula; \
         sigma3(n/2): -48 -> -108/5 in the second hexagonal-family formula); \
         the other eight match verbatim as printed",
        corrected.len()
    );
}

#[test]
fn criterion_6_sturm_overdetermination() {
    let engine = engine();
    assert!(engine.prec() >= 201);
    let forms = enumerate_forms();
    // Every solve consumes rows n = 0..=200; any residual row would already
    // have failed the solve with InconsistentSystem. Re-assert the contract
    // explicitly by reconstructing each product from its solved vector.
    forms.par_iter().for_each(|form| {
        let v = engine.solve(form).expect("solve must satisfy all rows");
        let contracted = solver::contract(&v, engine.basis(form.space()), ACCEPT_PREC);
        assert_eq!(
            contracted,
            form.theta_product(ACCEPT_PREC),
            "{form}: solved vector must reproduce the product on all rows n <= 200"
        );
    });
    println!(
        "PASS criterion 6: all {} solved vectors satisfy every row n <= 200 \
         (solved on first independent rows, residual-checked on the rest)",
        forms.len()
    );
}

#[test]
fn criterion_7_property_suites() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0xC0FFEE);

    // Series ring axioms on random small series at fixed precision.
    let prec = 12usize;
    let rand_series = |rng: &mut StdRng| {
        QSeries::new(
            (0..prec)
                .map(|_| q_ratio(rng.random_range(-9..=9), rng.random_range(1..=4)))
                .collect(),
        )
    };
    for _ in 0..200 {
        let f = rand_series(&mut rng);
        let g = rand_series(&mut rng);
        let h = rand_series(&mut rng);
        assert_eq!(f.add(&g), g.add(&f));
        assert_eq!(f.mul(&g), g.mul(&f));
        assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    // Multiplication precision contract on mixed precisions.
    for _ in 0..100 {
        let p = rng.random_range(1..=20);
        let q = rng.random_range(1..=20);
        let f = QSeries::one(p);
        let g = QSeries::one(q);
        assert_eq!(f.mul(&g).prec(), p.min(q));
    }

    // Dilation composition on the overlap of known coefficients.
    let theta = generators::theta_series(240);
    for _ in 0..50 {
        let a = rng.random_range(1..=5usize);
        let b = rng.random_range(1..=5usize);
        assert_eq!(theta.dilate(a).dilate(b), theta.dilate(a * b));
    }

    // Character multiplicativity and periodicity on random pairs.
    for chi in DirichletCharacter::catalog() {
        for _ in 0..10_000 {
            let m = rng.random_range(-3000i64..=3000);
            let n = rng.random_range(-3000i64..=3000);
            assert_eq!(chi.eval(m * n), chi.eval(m) * chi.eval(n), "{chi}({m}*{n})");
        }
        for _ in 0..2_000 {
            let n = rng.random_range(-3000i64..=3000);
            assert_eq!(
                chi.eval(n),
                chi.eval(n + chi.modulus()),
                "{chi} period at {n}"
            );
        }
    }

    // Twist involutivity on indices coprime to the modulus.
    let f = generators::borwein_f(120);
    for chi in DirichletCharacter::catalog() {
        let twice = f.twist(&chi).twist(&chi);
        for n in 1..120usize {
            if num_integer::gcd(n as i64, chi.modulus()) == 1 {
                assert_eq!(twice.coeff(n), f.coeff(n), "{chi} at {n}");
            }
        }
    }

    println!(
        "PASS criterion 7: ring axioms, precision contract, dilation composition, character \
         multiplicativity/periodicity and twist involutivity hold on seeded random inputs"
    );
}
