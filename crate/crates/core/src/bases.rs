//! Explicit bases of the four spaces `M_4(Gamma_0(24), chi)` for chi trivial,
//! chi8, chi12, chi24.
//!
//! Each basis element is described by a [`Descriptor`], an Eisenstein series
//! or a (combination of) eta quotients, optionally dilated and twisted; the
//! descriptor alone reproduces the q-expansion. The element ordering matches
//! the reference coefficient tables column for column.
//!
//! Two of the shipped listings are defective. The chi24 cusp list contains an
//! exact duplicate (`f4_24_chi24_7` repeats `f4_24_chi24_6`), so as printed it
//! spans 13 of 14 dimensions; [`build_basis`] detects and reports this. The
//! chi8 list has full rank but its second level-8 entry is not the element
//! the reference tables were computed with. [`build_basis_remediated`] repairs
//! both by reconstructing the broken columns from the reference rows together
//! with the brute-force theta products, identifying each reconstruction as an
//! eta quotient, and returning the repaired basis along with a
//! [`RemediationReport`]. Substitutes are verified, never assumed.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::arith::{CharLabel, DirichletCharacter};
use crate::error::{Error, Result};
use crate::generators::{eisenstein_char, eisenstein_ek, eta_quotient, EtaQuotientSpec};
use crate::linalg;
use crate::rational::{parse_q, Q};
use crate::series::QSeries;
use crate::tables;

/// The four character spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceId {
    Trivial,
    Chi8,
    Chi12,
    Chi24,
}

impl SpaceId {
    pub fn all() -> [SpaceId; 4] {
        [
            SpaceId::Trivial,
            SpaceId::Chi8,
            SpaceId::Chi12,
            SpaceId::Chi24,
        ]
    }

    pub fn character_label(self) -> &'static str {
        match self {
            SpaceId::Trivial => "trivial",
            SpaceId::Chi8 => "chi8",
            SpaceId::Chi12 => "chi12",
            SpaceId::Chi24 => "chi24",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "trivial" | "1" => SpaceId::Trivial,
            "chi8" => SpaceId::Chi8,
            "chi12" => SpaceId::Chi12,
            "chi24" => SpaceId::Chi24,
            other => return Err(Error::Parse(format!("unknown space {other:?}"))),
        })
    }

    pub fn dimension(self) -> usize {
        match self {
            SpaceId::Trivial | SpaceId::Chi12 => 16,
            SpaceId::Chi8 | SpaceId::Chi24 => 14,
        }
    }

    pub fn eisenstein_dim(self) -> usize {
        match self {
            SpaceId::Trivial | SpaceId::Chi12 => 8,
            SpaceId::Chi8 | SpaceId::Chi24 => 4,
        }
    }

    pub fn cusp_dim(self) -> usize {
        self.dimension() - self.eisenstein_dim()
    }
}

impl std::fmt::Display for SpaceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.character_label())
    }
}

/// A rational linear combination of eta quotients (most entries are a single
/// term with coefficient 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaCombination {
    pub terms: Vec<(Q, EtaQuotientSpec)>,
}

impl EtaCombination {
    pub fn single(spec: EtaQuotientSpec) -> Self {
        EtaCombination {
            terms: vec![(Q::one(), spec)],
        }
    }

    /// Parse `"[p/q *] d^r d^r ... [+|- term]..."`.
    pub fn parse(text: &str) -> Result<Self> {
        // Split into signed terms on top-level + / - (exponent signs are
        // glued to '^', so a bare +/- token is always a term separator).
        let mut terms = Vec::new();
        let mut sign = Q::one();
        let mut current = String::new();
        let flush =
            |buf: &mut String, sign: &Q, terms: &mut Vec<(Q, EtaQuotientSpec)>| -> Result<()> {
                let t = buf.trim();
                if t.is_empty() {
                    return Err(Error::Parse("empty term in eta combination".into()));
                }
                let (coeff, factors) = match t.split_once('*') {
                    Some((c, rest)) => (parse_q(c)? * sign, rest.to_string()),
                    None => (sign.clone(), t.to_string()),
                };
                terms.push((coeff, EtaQuotientSpec::parse(&factors)?));
                buf.clear();
                Ok(())
            };
        for token in text.split_whitespace() {
            match token {
                "+" => {
                    flush(&mut current, &sign, &mut terms)?;
                    sign = Q::one();
                }
                "-" => {
                    flush(&mut current, &sign, &mut terms)?;
                    sign = -Q::one();
                }
                _ => {
                    current.push(' ');
                    current.push_str(token);
                }
            }
        }
        flush(&mut current, &sign, &mut terms)?;
        Ok(EtaCombination { terms })
    }

    pub fn expand(&self, prec: usize) -> Result<QSeries> {
        let mut acc = QSeries::zero(prec);
        for (coeff, spec) in &self.terms {
            acc = acc.add(&eta_quotient(spec, prec)?.scale(coeff));
        }
        Ok(acc)
    }

    /// Twice the weight of every term (they must agree).
    pub fn weight_times_two(&self) -> i32 {
        self.terms[0].1.weight_times_two()
    }
}

impl std::fmt::Display for EtaCombination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (coeff, spec)) in self.terms.iter().enumerate() {
            if i > 0 {
                if coeff.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let mag = coeff.abs();
                if !mag.is_one() {
                    write!(f, "{mag} * ")?;
                }
            } else if !coeff.is_one() {
                write!(f, "{coeff} * ")?;
            }
            write!(f, "{spec}")?;
        }
        Ok(())
    }
}

/// The named eta quotients, in catalog file order.
pub struct EtaCatalog {
    entries: Vec<(String, EtaCombination)>,
    by_name: BTreeMap<String, usize>,
}

impl EtaCatalog {
    fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut by_name = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, body) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("catalog line {}: missing '='", lineno + 1)))?;
            let name = name.trim().to_string();
            let combo = EtaCombination::parse(body)?;
            // Catalog sanity: weight 4 and an integral leading exponent >= 1
            // for every term.
            for (_, spec) in &combo.terms {
                if spec.weight_times_two() != 8 {
                    return Err(Error::Parse(format!(
                        "catalog entry {name}: term {spec} has weight {}/2, expected 4",
                        spec.weight_times_two()
                    )));
                }
                let e = spec.leading_exponent()?;
                if e == 0 {
                    return Err(Error::Parse(format!(
                        "catalog entry {name}: term {spec} is not cuspidal"
                    )));
                }
            }
            by_name.insert(name.clone(), entries.len());
            entries.push((name, combo));
        }
        Ok(EtaCatalog { entries, by_name })
    }

    pub fn get(&self, name: &str) -> Option<&EtaCombination> {
        self.by_name.get(name).map(|&i| &self.entries[i].1)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }
}

/// The catalog embedded from `data/eta_catalog.txt`, parsed once.
pub fn eta_catalog() -> &'static EtaCatalog {
    static CATALOG: OnceLock<EtaCatalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        EtaCatalog::parse(include_str!("../data/eta_catalog.txt"))
            .expect("embedded eta catalog must parse")
    })
}

/// How a basis element is built; the descriptor is the source of truth and
/// its expansion reproduces the stored series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Descriptor {
    /// `E_k(t z)`.
    EisensteinEk { weight: u32, dilation: u32 },
    /// `E_(k,chi,psi)(t z)`.
    EisensteinChar {
        weight: u32,
        chi: DirichletCharacter,
        psi: DirichletCharacter,
        dilation: u32,
    },
    /// `combo(t z)`, optionally twisted by a character.
    EtaCombo {
        name: String,
        combo: EtaCombination,
        dilation: u32,
        twist: Option<DirichletCharacter>,
    },
}

impl Descriptor {
    pub fn expand(&self, prec: usize) -> Result<QSeries> {
        match self {
            Descriptor::EisensteinEk { weight, dilation } => {
                Ok(eisenstein_ek(*weight, prec).dilate(*dilation as usize))
            }
            Descriptor::EisensteinChar {
                weight,
                chi,
                psi,
                dilation,
            } => Ok(eisenstein_char(*weight, chi, psi, prec)?.dilate(*dilation as usize)),
            Descriptor::EtaCombo {
                combo,
                dilation,
                twist,
                ..
            } => {
                let mut s = combo.expand(prec)?.dilate(*dilation as usize);
                if let Some(chi) = twist {
                    s = s.twist(chi);
                }
                Ok(s)
            }
        }
    }

    /// True for descriptors of cusp forms (every eta entry in the catalog is
    /// cuspidal).
    pub fn is_cuspidal(&self) -> bool {
        matches!(self, Descriptor::EtaCombo { .. })
    }

    /// Name and dilation of an eta-built element (repaired entries carry a
    /// trailing `*`).
    pub fn eta_name(&self) -> Option<(&str, u32)> {
        match self {
            Descriptor::EtaCombo { name, dilation, .. } => Some((name, *dilation)),
            _ => None,
        }
    }
}

impl std::fmt::Display for Descriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dil = |d: u32| {
            if d == 1 {
                "z".to_string()
            } else {
                format!("{d}z")
            }
        };
        match self {
            Descriptor::EisensteinEk { weight, dilation } => {
                write!(f, "E{weight}({})", dil(*dilation))
            }
            Descriptor::EisensteinChar {
                weight,
                chi,
                psi,
                dilation,
            } => {
                write!(f, "E{weight}[{chi},{psi}]({})", dil(*dilation))
            }
            Descriptor::EtaCombo {
                name,
                dilation,
                twist,
                ..
            } => {
                write!(f, "{name}")?;
                if let Some(chi) = twist {
                    write!(f, "*{chi}")?;
                }
                write!(f, "({})", dil(*dilation))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct BasisElement {
    /// 1-based position, aligned with the reference table columns.
    pub index: usize,
    pub descriptor: Descriptor,
    pub series: QSeries,
}

impl BasisElement {
    /// The catalog name behind an eta descriptor, or the display form.
    fn descriptor_base_name(&self) -> String {
        match &self.descriptor {
            Descriptor::EtaCombo { name, .. } => name.clone(),
            other => other.to_string(),
        }
    }
}

/// One repaired column of a broken listing. Entries are shown with any
/// dilation folded into the eta specs.
#[derive(Debug, Clone)]
pub struct ReplacedColumn {
    /// 1-based basis position (= table column).
    pub index: usize,
    pub printed: EtaCombination,
    pub substitute: EtaCombination,
}

/// Outcome of a listing repair. Two defect shapes are handled: a
/// rank-deficient listing (duplicated entries, with the lost entry
/// reconstructed), and a full-rank listing whose printed entries do not
/// match the numerics of the reference tables (re-normalized entries,
/// reconstructed as combinations of the printed ones).
#[derive(Debug, Clone)]
pub struct RemediationReport {
    pub space: SpaceId,
    /// 1-based positions that were linear combinations of earlier ones
    /// (empty when the printed listing had full rank).
    pub dependent_columns: Vec<usize>,
    /// Columns whose printed entry was replaced, ascending by index.
    pub replaced: Vec<ReplacedColumn>,
}

impl std::fmt::Display for RemediationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} basis:", self.space)?;
        if self.dependent_columns.is_empty() {
            write!(f, " full rank as listed;")?;
        } else {
            write!(
                f,
                " columns {:?} dependent as listed;",
                self.dependent_columns
            )?;
        }
        for r in &self.replaced {
            write!(
                f,
                " element {} rebuilt as [{}] (listed: [{}]);",
                r.index, r.substitute, r.printed
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Basis {
    pub space: SpaceId,
    pub elements: Vec<BasisElement>,
    pub remediation: Option<RemediationReport>,
}

impl Basis {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    pub fn prec(&self) -> usize {
        self.elements[0].series.prec()
    }
}

fn named_combo(name: &str) -> EtaCombination {
    eta_catalog()
        .get(name)
        .unwrap_or_else(|| panic!("catalog entry {name} missing"))
        .clone()
}

fn eta_element(name: &str, dilation: u32, twist: Option<CharLabel>) -> Descriptor {
    Descriptor::EtaCombo {
        name: name.to_string(),
        combo: named_combo(name),
        dilation,
        twist: twist.map(DirichletCharacter::new),
    }
}

fn eis_char(chi: CharLabel, psi: CharLabel, dilation: u32) -> Descriptor {
    Descriptor::EisensteinChar {
        weight: 4,
        chi: DirichletCharacter::new(chi),
        psi: DirichletCharacter::new(psi),
        dilation,
    }
}

/// The printed element listing for a space, in table column order.
pub fn descriptors(space: SpaceId) -> Vec<Descriptor> {
    use CharLabel::*;
    let mut out = Vec::new();
    match space {
        SpaceId::Trivial => {
            for t in [1u32, 2, 3, 4, 6, 8, 12, 24] {
                out.push(Descriptor::EisensteinEk {
                    weight: 4,
                    dilation: t,
                });
            }
            for t in [1u32, 2, 4] {
                out.push(eta_element("f4_6", t, None));
            }
            for t in [1u32, 3] {
                out.push(eta_element("f4_8", t, None));
            }
            for t in [1u32, 2] {
                out.push(eta_element("f4_12", t, None));
            }
            out.push(eta_element("f4_24", 1, Some(Chi4)));
        }
        SpaceId::Chi8 => {
            for t in [1u32, 3] {
                out.push(eis_char(One, Chi8, t));
            }
            for t in [1u32, 3] {
                out.push(eis_char(Chi8, One, t));
            }
            for name in ["f4_8_chi8_1", "f4_8_chi8_2"] {
                for t in [1u32, 3] {
                    out.push(eta_element(name, t, None));
                }
            }
            for j in 1..=6 {
                out.push(eta_element(&format!("f4_24_chi8_{j}"), 1, None));
            }
        }
        SpaceId::Chi12 => {
            // the four Eisenstein series at t = 1, then the same four at t = 2
            for t in [1u32, 2] {
                out.push(eis_char(One, Chi12, t));
                out.push(eis_char(Chi12, One, t));
                out.push(eis_char(ChiMinus4, ChiMinus3, t));
                out.push(eis_char(ChiMinus3, ChiMinus4, t));
            }
            for t in [1u32, 2] {
                for j in 1..=4 {
                    out.push(eta_element(&format!("f4_12_chi12_{j}"), t, None));
                }
            }
        }
        SpaceId::Chi24 => {
            out.push(eis_char(One, Chi24, 1));
            out.push(eis_char(Chi24, One, 1));
            out.push(eis_char(ChiMinus8, ChiMinus3, 1));
            out.push(eis_char(ChiMinus3, ChiMinus8, 1));
            for j in 1..=10 {
                out.push(eta_element(&format!("f4_24_chi24_{j}"), 1, None));
            }
        }
    }
    debug_assert_eq!(out.len(), space.dimension());
    out
}

fn expand_elements(descs: Vec<Descriptor>, prec: usize) -> Result<Vec<BasisElement>> {
    descs
        .into_iter()
        .enumerate()
        .map(|(i, descriptor)| {
            let series = descriptor.expand(prec)?;
            Ok(BasisElement {
                index: i + 1,
                descriptor,
                series,
            })
        })
        .collect()
}

fn series_columns(elements: &[BasisElement]) -> Vec<Vec<Q>> {
    elements
        .iter()
        .map(|e| e.series.coeffs().to_vec())
        .collect()
}

/// The exact rational matrix with rows `n = 0..=n_max` and one column per
/// basis element: entry `(n, i)` is the coefficient of `q^n` in element `i`.
pub fn coefficient_matrix(elements: &[BasisElement], n_max: usize) -> Vec<Vec<Q>> {
    assert!(elements.iter().all(|e| e.series.prec() > n_max));
    (0..=n_max)
        .map(|n| elements.iter().map(|e| e.series.coeff(n).clone()).collect())
        .collect()
}

/// Build the printed basis listing for a space and verify it has full rank.
///
/// For chi24 the shipped listing is rank-deficient; the error names the
/// dependent columns. Use [`build_basis_remediated`] to repair it.
pub fn build_basis(space: SpaceId, prec: usize) -> Result<Basis> {
    assert!(
        prec >= space.dimension() + 8,
        "prec too small to certify a basis"
    );
    let elements = expand_elements(descriptors(space), prec)?;
    let dependent = linalg::dependent_members(&series_columns(&elements));
    if !dependent.is_empty() {
        return Err(Error::RankDeficient {
            space: space.to_string(),
            rank: space.dimension() - dependent.len(),
            expected: space.dimension(),
            dependent: dependent.iter().map(|i| i + 1).collect(),
        });
    }
    Ok(Basis {
        space,
        elements,
        remediation: None,
    })
}

/// Like [`build_basis`], but repair the listing when it disagrees with the
/// reference tables.
///
/// Two defects are handled, both with the same reconstruction engine:
///
/// - a rank-deficient listing (chi24 ships with a duplicated entry): the
///   repair is mandatory, since nothing can be solved against a deficient
///   basis;
/// - a full-rank listing whose numerics don't reproduce the reference rows
///   (the printed definition of an element differs from the one the rows
///   were computed with): the repair is attempted, and if none is found the
///   printed listing is kept so the table audit can record the
///   disagreements as errata.
///
/// Repairs are recorded in [`Basis::remediation`]; nothing is silent.
pub fn build_basis_remediated(space: SpaceId, prec: usize) -> Result<Basis> {
    let elements = expand_elements(descriptors(space), prec)?;
    let dependent0 = linalg::dependent_members(&series_columns(&elements));

    let (rows, products) = table_data(space, prec)?;
    // Full discrepancy per table row: product - sum_i row_i * elem_i.
    let base_residuals: Vec<QSeries> = rows
        .iter()
        .zip(&products)
        .map(|(row, product)| {
            let mut rest = product.clone();
            for (coeff, elem) in row.entries.iter().zip(&elements) {
                rest = rest.sub(&elem.series.scale(coeff));
            }
            rest
        })
        .collect();
    let clean = base_residuals.iter().all(QSeries::is_zero);

    if dependent0.is_empty() && clean {
        return Ok(Basis {
            space,
            elements,
            remediation: None,
        });
    }
    match repair(
        space,
        prec,
        elements.clone(),
        &dependent0,
        &rows,
        &base_residuals,
    ) {
        Ok(basis) => Ok(basis),
        // A full-rank listing that cannot be repaired still solves; keep it
        // and let the audit record the row-level errata.
        Err(_) if dependent0.is_empty() => Ok(Basis {
            space,
            elements,
            remediation: None,
        }),
        Err(e) => Err(e),
    }
}

/// Reference rows constraining a space's basis (family A, plus family B for
/// the trivial space), together with the forms' theta products.
fn table_data(
    space: SpaceId,
    prec: usize,
) -> Result<(Vec<&'static tables::TableRow>, Vec<QSeries>)> {
    let reference = tables::reference_tables();
    let mut forms = crate::repcount::forms_for_space(space);
    let mut table_ids = vec![tables::table_for_space(space); forms.len()];
    if space == SpaceId::Trivial {
        let b = crate::repcount::family_b_forms();
        table_ids.extend(std::iter::repeat_n(7u8, b.len()));
        forms.extend(b);
    }
    let mut rows = Vec::new();
    let mut products = Vec::new();
    for (form, table) in forms.iter().zip(table_ids) {
        let label = form.table_row_label();
        let row = reference
            .get(table, &label)
            .ok_or_else(|| Error::RemediationFailed(format!("no table row for {label}")))?;
        rows.push(row);
        products.push(form.theta_product(prec));
    }
    Ok((rows, products))
}

/// The reconstruction engine.
///
/// Defect model: some columns of the printed listing are misprints of the
/// underlying basis the reference rows were computed with. For a
/// hypothesized set of broken columns, the trusted columns are subtracted
/// from each form's theta product and the broken columns' q-expansions are
/// solved for coefficientwise from the resulting overdetermined system (at
/// least 18 rows against a handful of unknowns), so consistency across all
/// rows is a sharp test of the hypothesis. The set is seeded with the
/// dependent columns and their duplicate partners and grown one column at a
/// time; the smallest consistent set wins, ties broken by column order.
///
/// Each reconstructed column must then be admissible:
/// either an eta quotient with dilations dividing 24, integer exponents
/// bounded by 14, weight 4 and integral cusp order (recovered through the
/// formal logarithm), or an exact rational combination of the printed cusp
/// entries (a re-normalization). Candidates are accepted only if their
/// re-expansion reproduces the reconstruction exactly, the repaired listing
/// has full rank, and every reference row reproduces its theta product.
fn repair(
    space: SpaceId,
    prec: usize,
    elements: Vec<BasisElement>,
    dependent0: &[usize],
    rows: &[&tables::TableRow],
    base_residuals: &[QSeries],
) -> Result<Basis> {
    let dim = elements.len();
    let mut seed: Vec<usize> = dependent0.to_vec();
    for &d in dependent0 {
        for i in 0..dim {
            if i != d && elements[i].series == elements[d].series && !seed.contains(&i) {
                seed.push(i);
            }
        }
    }
    seed.sort_unstable();

    let extras: Vec<usize> = (0..dim).filter(|i| !seed.contains(i)).collect();
    for grow in 0..=3usize {
        if seed.is_empty() && grow == 0 {
            continue;
        }
        for extra in combinations(&extras, grow) {
            let mut slots = seed.clone();
            slots.extend(extra);
            slots.sort_unstable();
            if let Some(basis) =
                try_repair_subset(space, prec, &elements, dependent0, &slots, rows, base_residuals)
            {
                return Ok(basis);
            }
        }
    }
    Err(Error::RemediationFailed(
        "no small set of broken columns reconstructs consistently from the reference rows".into(),
    ))
}

/// Attempt the full repair for one hypothesized set of broken columns:
/// reconstruction, admissibility, re-expansion, rank and row validation all
/// have to hold, otherwise the candidate set is rejected.
fn try_repair_subset(
    space: SpaceId,
    prec: usize,
    elements: &[BasisElement],
    dependent0: &[usize],
    slots: &[usize],
    rows: &[&tables::TableRow],
    base_residuals: &[QSeries],
) -> Option<Basis> {
    let targets = reconstruct_columns(elements, slots, rows, base_residuals)?;

    let mut repaired = elements.to_vec();
    let mut replaced = Vec::new();
    for (&slot, target) in slots.iter().zip(&targets) {
        let printed = folded_cusp_combo(&elements[slot])?;
        let substitute = admit_column(target, elements, prec)?;
        let reexpanded = substitute.expand(prec).ok()?;
        if &reexpanded != target {
            return None;
        }
        if printed == substitute {
            continue;
        }
        repaired[slot] = BasisElement {
            index: slot + 1,
            descriptor: Descriptor::EtaCombo {
                name: format!("{}*", elements[slot].descriptor_base_name()),
                combo: substitute.clone(),
                dilation: 1,
                twist: None,
            },
            series: reexpanded,
        };
        replaced.push(ReplacedColumn {
            index: slot + 1,
            printed,
            substitute,
        });
    }
    if replaced.is_empty() {
        return None;
    }

    // Gate 1: full rank.
    if !linalg::dependent_members(&series_columns(&repaired)).is_empty() {
        return None;
    }
    // Gate 2: every reference row reproduces its theta product against the
    // repaired listing. Only the replaced columns changed, so adjust the
    // stored residuals instead of recombining from scratch.
    for (row, base) in rows.iter().zip(base_residuals) {
        let mut residual = base.clone();
        for r in &replaced {
            let coeff = &row.entries[r.index - 1];
            residual = residual
                .add(&elements[r.index - 1].series.scale(coeff))
                .sub(&repaired[r.index - 1].series.scale(coeff));
        }
        if !residual.is_zero() {
            return None;
        }
    }

    let report = RemediationReport {
        space,
        dependent_columns: dependent0.iter().map(|i| i + 1).collect(),
        replaced,
    };
    Some(Basis {
        space,
        elements: repaired,
        remediation: Some(report),
    })
}

/// A cusp element's eta combination with its dilation folded into the specs.
fn folded_cusp_combo(element: &BasisElement) -> Option<EtaCombination> {
    match &element.descriptor {
        Descriptor::EtaCombo {
            combo,
            dilation,
            twist: None,
            ..
        } => Some(EtaCombination {
            terms: combo
                .terms
                .iter()
                .map(|(c, spec)| (c.clone(), spec.dilated(*dilation)))
                .collect(),
        }),
        _ => None,
    }
}

/// Admit a reconstructed column: a single admissible eta quotient if the
/// formal-logarithm recovery succeeds, otherwise an exact combination of the
/// printed cusp entries.
fn admit_column(target: &QSeries, printed: &[BasisElement], prec: usize) -> Option<EtaCombination> {
    if let Some(spec) = eta_spec_from_series(target) {
        if let Ok(expanded) = eta_quotient(&spec, prec) {
            if &expanded == target {
                return Some(EtaCombination::single(spec));
            }
        }
    }
    // Solve target = sum_i c_i * printed_i over all known coefficients.
    let rows: Vec<Vec<Q>> = (0..prec)
        .map(|n| printed.iter().map(|e| e.series.coeff(n).clone()).collect())
        .collect();
    let rhs: Vec<Q> = (0..prec).map(|n| target.coeff(n).clone()).collect();
    let coeffs = linalg::solve_overdetermined(&rows, &rhs).ok()?;
    let mut terms = Vec::new();
    for (c, elem) in coeffs.iter().zip(printed) {
        if c.is_zero() {
            continue;
        }
        let folded = folded_cusp_combo(elem)?;
        for (w, spec) in folded.terms {
            terms.push((c * w, spec));
        }
    }
    if terms.is_empty() {
        return None;
    }
    Some(EtaCombination { terms })
}

/// All `k`-element subsets of `pool`, in lexicographic order.
fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in pool.iter().enumerate() {
        for mut rest in combinations(&pool[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Solve for the q-expansions of the hypothesized broken columns from the
/// reference rows; `None` unless every row is consistent.
///
/// `base_residuals[j]` is the full discrepancy of row `j` with every printed
/// column trusted; adding back the hypothesized columns' contributions gives
/// the right-hand side `sum_{i in slots} row_i * X_i`.
fn reconstruct_columns(
    elements: &[BasisElement],
    slots: &[usize],
    rows: &[&tables::TableRow],
    base_residuals: &[QSeries],
) -> Option<Vec<QSeries>> {
    let prec = base_residuals[0].prec();
    let mut residuals = Vec::with_capacity(rows.len());
    let mut coeff_rows = Vec::with_capacity(rows.len());
    for (row, base) in rows.iter().zip(base_residuals) {
        let mut rest = base.clone();
        for &i in slots {
            rest = rest.add(&elements[i].series.scale(&row.entries[i]));
        }
        residuals.push(rest);
        coeff_rows.push(
            slots
                .iter()
                .map(|&s| row.entries[s].clone())
                .collect::<Vec<Q>>(),
        );
    }
    let mut columns = vec![Vec::with_capacity(prec); slots.len()];
    for n in 0..prec {
        let rhs: Vec<Q> = residuals.iter().map(|r| r.coeff(n).clone()).collect();
        let sol = linalg::solve_overdetermined(&coeff_rows, &rhs).ok()?;
        for (col, value) in columns.iter_mut().zip(sol) {
            col.push(value);
        }
    }
    Some(columns.into_iter().map(QSeries::new).collect())
}

/// Invert the eta-quotient expansion map on a candidate series.
///
/// Writing the series as `q^v * u(q)` with `u(0) = 1`, the formal logarithm
/// of `u` is `-sum_{d} r_d sum_{n,m} q^(dnm)/m`, so the exponents satisfy the
/// triangular system `r_N = -[q^N] log u - sum_{d|N, d<N} r_d sigma(N/d)/(N/d)`.
/// The result is admitted only if it uses dilations dividing 24 with integer
/// exponents bounded by 14, weight 4 and the correct cusp order; soundness
/// comes from the caller re-expanding the spec and comparing exactly.
fn eta_spec_from_series(series: &QSeries) -> Option<EtaQuotientSpec> {
    let v = series.valuation()?;
    if !series.coeff(v).is_one() {
        return None;
    }
    let prec = series.prec();
    let span = (prec - v).min(64);
    let mut unit: Vec<Q> = (0..span).map(|i| series.coeff(v + i).clone()).collect();
    // log u via log(1 + w) = sum (-1)^(m+1) w^m / m, truncated.
    let mut log_u = vec![Q::zero(); span];
    unit[0] = Q::zero(); // u = 1 + w
    let w = QSeries::new(unit);
    let mut wpow = QSeries::one(span);
    for m in 1..span {
        wpow = wpow.mul(&w);
        if wpow.is_zero() {
            break;
        }
        let sign = if m % 2 == 1 { Q::one() } else { -Q::one() };
        let inv_m = sign / crate::rational::q_int(m as i64);
        for (acc, c) in log_u.iter_mut().zip(wpow.coeffs()) {
            if !c.is_zero() {
                *acc += c * &inv_m;
            }
        }
    }
    // Triangular recovery of the exponents.
    let mut r = vec![Q::zero(); span];
    for n in 1..span {
        let mut acc = -log_u[n].clone();
        for d in crate::arith::divisors(n as u64) {
            let d = d as usize;
            if d == n {
                continue;
            }
            let m = (n / d) as i64;
            let sig = Q::from_integer(crate::arith::sigma(1, m)) / crate::rational::q_int(m);
            acc -= &r[d] * sig;
        }
        r[n] = acc;
    }
    let mut factors = Vec::new();
    for (n, rn) in r.iter().enumerate().skip(1) {
        if rn.is_zero() {
            continue;
        }
        if !rn.denom().is_one() || n > 24 || 24 % n != 0 {
            return None;
        }
        let exp: i64 = rn.numer().try_into().ok()?;
        if exp.unsigned_abs() > 14 {
            return None;
        }
        factors.push((n as u32, exp as i32));
    }
    let spec = EtaQuotientSpec::new(factors).ok()?;
    if spec.weight_times_two() != 8 || spec.leading_exponent().ok()? != v {
        return None;
    }
    Some(spec)
}
