//! Certification of inverse-based S-boxes against invariant affine
//! subspaces.
//!
//! For f(x) = A(inv0(x)) + b with A invertible and b nonzero, the quantity
//! t = b^-1 A(b^-1) decides the hard part: when t lies in no proper subfield
//! there is no invariant affine subspace U with 2 < |U| < p^n. That test is
//! sufficient for general A (failing it is `Inconclusive`, never a claim of
//! existence), and the scalar family f(x) = alpha * inv0(x) + b admits a
//! complete criterion covering fixed points and two-element invariants as
//! well. Every certificate records the exhaustively computed fixed points
//! and 2-cycles when the field is small enough to tabulate.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescription, FieldElement};
use crate::sbox::SBox;
use crate::subspace::{subfield_subspace, AffineSubspace};

/// Fields up to this order get exhaustive fixed-point / 2-cycle scans
/// inside certificates.
pub const SMALL_SCAN_CAP: u64 = 1 << 20;

/// An invertible-by-requirement n x n matrix over F_p acting on the
/// coefficient coordinates of field elements.
#[derive(Clone)]
pub struct LinearMap {
    field: Field,
    rows: Vec<Vec<u64>>,
    rank: usize,
}

impl LinearMap {
    /// Builds a map from matrix rows (entries are reduced modulo p).
    pub fn from_rows(field: &Field, rows: Vec<Vec<u64>>) -> Result<LinearMap> {
        let n = field.degree();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DegreeMismatch {
                expected: n,
                got: rows.iter().map(Vec::len).max().unwrap_or(rows.len()),
            });
        }
        let p = field.characteristic();
        let rows: Vec<Vec<u64>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|c| c % p).collect())
            .collect();
        let rank = crate::linalg::rank(&rows, p);
        Ok(LinearMap {
            field: field.clone(),
            rows,
            rank,
        })
    }

    pub fn identity(field: &Field) -> LinearMap {
        let n = field.degree();
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0u64; n];
                r[i] = 1;
                r
            })
            .collect();
        LinearMap {
            field: field.clone(),
            rows,
            rank: n,
        }
    }

    /// The multiplication map x -> gamma * x.
    pub fn scalar_mul(gamma: &FieldElement) -> LinearMap {
        let field = gamma.field().clone();
        let map = from_columns(&field, |basis| gamma * basis);
        debug_assert!(gamma.is_zero() || map.rank == field.degree());
        map
    }

    /// The F_p-linear map x -> x^(p^k).
    pub fn frobenius_power(field: &Field, k: usize) -> LinearMap {
        from_columns(field, |basis| basis.frobenius(k))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank == self.field.degree()
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        if !self.field.same_field(x.field()) {
            return Err(Error::FieldMismatch);
        }
        let p = self.field.characteristic();
        let coeffs = x.coeffs();
        let out: Vec<u64> = self
            .rows
            .iter()
            .map(|row| row.iter().zip(&coeffs).map(|(m, c)| m * c).sum::<u64>() % p)
            .collect();
        self.field.element(&out)
    }

    /// self after inner: (self.compose(inner))(x) = self(inner(x)).
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if !self.field.same_field(&inner.field) {
            return Err(Error::FieldMismatch);
        }
        let n = self.field.degree();
        let p = self.field.characteristic();
        let mut rows = vec![vec![0u64; n]; n];
        for (out_row, self_row) in rows.iter_mut().zip(&self.rows) {
            for (j, cell) in out_row.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (a, inner_row) in self_row.iter().zip(&inner.rows) {
                    acc += a * inner_row[j] % p;
                }
                *cell = acc % p;
            }
        }
        let rank = crate::linalg::rank(&rows, p);
        Ok(LinearMap {
            field: self.field.clone(),
            rows,
            rank,
        })
    }
}

fn from_columns(
    field: &Field,
    image_of_basis: impl Fn(&FieldElement) -> FieldElement,
) -> LinearMap {
    let n = field.degree();
    let mut rows = vec![vec![0u64; n]; n];
    for j in 0..n {
        let mut e = vec![0u64; n];
        e[j] = 1;
        let img = image_of_basis(&field.element(&e).unwrap());
        for (i, c) in img.coeffs().into_iter().enumerate() {
            rows[i][j] = c;
        }
    }
    let rank = crate::linalg::rank(&rows, field.characteristic());
    LinearMap {
        field: field.clone(),
        rows,
        rank,
    }
}

impl std::fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LinearMap(n={}, rank={})",
            self.field.degree(),
            self.rank
        )
    }
}

/// Evaluates A(inv0(x)) + b.
pub fn inv_affine_apply(
    map: &LinearMap,
    b: &FieldElement,
    x: &FieldElement,
) -> Result<FieldElement> {
    if !map.is_invertible() {
        return Err(Error::SingularMap);
    }
    Ok(&map.apply(&x.inv0())? + b)
}

// ---------------------------------------------------------------------------
// Report types
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NontrivialVerdict {
    /// No invariant affine subspace U with 2 < |U| < p^n exists.
    CertifiedNone,
    /// The sufficient condition failed; existence is undetermined.
    Inconclusive,
    /// A nontrivial invariant subspace exists; the report carries a verified
    /// witness.
    ExistsWithWitness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallVerdict {
    /// The whole field is the only invariant affine subspace.
    NoInvariantExceptWholeField,
    /// Some fixed point or two-element invariant subspace exists (and no
    /// nontrivial one is asserted).
    HasSmallInvariant,
    /// A nontrivial invariant affine subspace exists.
    HasNontrivialInvariant,
    Inconclusive,
}

/// Which functional form was certified.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertifiedForm {
    /// f(x) = A(inv0(x)) + b for an explicit matrix A.
    General { b: FieldElement },
    /// Like `General`, but certified from the tabulated values alone via
    /// u = b^-1 f(b).
    TableValue { b: FieldElement, sbox_id: String },
    /// f(x) = alpha * inv0(x) + b.
    Scalar {
        alpha: FieldElement,
        b: FieldElement,
    },
}

#[derive(Debug, Serialize)]
pub struct CertReport {
    pub field: FieldDescription,
    pub form: CertifiedForm,
    /// The tested quantity: b^-1 A(b^-1), b^-1 f(b), or alpha * b^-2.
    pub t_value: FieldElement,
    /// Degrees of the subfields containing `t_value`.
    pub t_divisors: BTreeSet<usize>,
    pub nontrivial_verdict: NontrivialVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AffineSubspace>,
    pub fixed_points: Vec<FieldElement>,
    pub two_cycles: Vec<(FieldElement, FieldElement)>,
    /// False when the field was too large to tabulate; the small-invariant
    /// lists are then empty by omission, not by certification.
    pub small_scan_complete: bool,
    pub overall: OverallVerdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

// ---------------------------------------------------------------------------
// Small-invariant scans
// ---------------------------------------------------------------------------

/// All fixed points of a table, in canonical order.
pub fn fixed_points(f: &SBox) -> Vec<FieldElement> {
    let field = f.field();
    f.table()
        .iter()
        .enumerate()
        .filter(|&(x, &y)| x as u64 == y as u64)
        .map(|(x, _)| field.from_value(x as u64).unwrap())
        .collect()
}

/// All genuine 2-cycles {u, v}, u != v, f(u) = v, f(v) = u; each unordered
/// pair reported once with the smaller canonical value first. Fixed points
/// are excluded.
pub fn two_cycles(f: &SBox) -> Vec<(FieldElement, FieldElement)> {
    let field = f.field();
    let t = f.table();
    let mut out = Vec::new();
    for x in 0..t.len() {
        let y = t[x] as usize;
        if y > x && t[y] == x as u32 {
            out.push((
                field.from_value(x as u64).unwrap(),
                field.from_value(y as u64).unwrap(),
            ));
        }
    }
    out
}

fn degree_one_note(field: &Field, notes: &mut Vec<String>) {
    if field.degree() == 1 {
        notes.push(
            "degree-1 field: there are no proper subfields, so every element counts as a full-field generator".into(),
        );
    }
}

/// Shared report assembly for the general (sufficient-condition) paths.
fn general_report(
    field: &Field,
    form: CertifiedForm,
    t: FieldElement,
    table: Option<&SBox>,
) -> CertReport {
    let p = field.characteristic();
    let q = field.order();
    let t_divisors = t.subfield_degrees();
    let nontrivial_verdict = if t.generates_field() {
        NontrivialVerdict::CertifiedNone
    } else {
        NontrivialVerdict::Inconclusive
    };
    let (fixed, cycles, complete) = match table {
        Some(sb) => (fixed_points(sb), two_cycles(sb), true),
        None => (Vec::new(), Vec::new(), false),
    };
    // A 2-cycle spans a two-element affine subspace only in characteristic
    // 2, and that subspace is proper only when the field has more than two
    // elements.
    let small_blocking = !fixed.is_empty() || (p == 2 && q > 2 && !cycles.is_empty());
    let overall = match (nontrivial_verdict, complete) {
        (_, true) if small_blocking => OverallVerdict::HasSmallInvariant,
        (NontrivialVerdict::CertifiedNone, true) => OverallVerdict::NoInvariantExceptWholeField,
        _ => OverallVerdict::Inconclusive,
    };
    let mut notes = Vec::new();
    degree_one_note(field, &mut notes);
    if !complete {
        notes.push("field too large for the exhaustive fixed-point and 2-cycle scan".into());
    }
    CertReport {
        field: field.description(),
        form,
        t_value: t,
        t_divisors,
        nontrivial_verdict,
        witness: None,
        fixed_points: fixed,
        two_cycles: cycles,
        small_scan_complete: complete,
        overall,
        notes,
    }
}

/// Certifies f(x) = A(inv0(x)) + b through t = b^-1 A(b^-1). The condition
/// is sufficient only: a failing test yields `Inconclusive`, never a claim
/// that a nontrivial invariant exists.
pub fn certify_affine_inverse(map: &LinearMap, b: &FieldElement) -> Result<CertReport> {
    let field = map.field().clone();
    if !field.same_field(b.field()) {
        return Err(Error::FieldMismatch);
    }
    if !map.is_invertible() {
        return Err(Error::SingularMap);
    }
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    let b_inv = b.inv0();
    let t = &b_inv * map.apply(&b_inv)?;
    let table = if field.order() <= SMALL_SCAN_CAP {
        Some(SBox::from_inv_affine(map, b)?)
    } else {
        None
    };
    Ok(general_report(
        &field,
        CertifiedForm::General { b: b.clone() },
        t,
        table.as_ref(),
    ))
}

/// Certifies a tabulated f through u = b^-1 f(b) alone. When f was built
/// from (A, b) this agrees with [`certify_affine_inverse`]: u = t + 1, and
/// adding 1 never moves an element in or out of a subfield.
pub fn certify_from_value(f: &SBox, b: &FieldElement) -> Result<CertReport> {
    let field = f.field().clone();
    if !field.same_field(b.field()) {
        return Err(Error::FieldMismatch);
    }
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    let u = b.inv0() * f.apply(b)?;
    Ok(general_report(
        &field,
        CertifiedForm::TableValue {
            b: b.clone(),
            sbox_id: f.digest(),
        },
        u,
        Some(f),
    ))
}

/// Rescales A so the certificate succeeds by construction: with
/// beta = (b^-1 A(b^-1))^-1 and a full-field generator alpha, the map
/// A'(x) = alpha * beta * A(x) satisfies b^-1 A'(b^-1) = alpha exactly.
pub fn repair_map(map: &LinearMap, b: &FieldElement, alpha: &FieldElement) -> Result<LinearMap> {
    let field = map.field().clone();
    if !field.same_field(b.field()) || !field.same_field(alpha.field()) {
        return Err(Error::FieldMismatch);
    }
    if !map.is_invertible() {
        return Err(Error::SingularMap);
    }
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    if !alpha.generates_field() {
        return Err(Error::AlphaInProperSubfield);
    }
    let b_inv = b.inv0();
    let t = &b_inv * map.apply(&b_inv)?;
    debug_assert!(!t.is_zero(), "A invertible and b nonzero force t nonzero");
    let gamma = alpha * t.inv0();
    let repaired = LinearMap::scalar_mul(&gamma).compose(map)?;
    debug_assert!(repaired.is_invertible());
    Ok(repaired)
}

/// Membership in the binary admissible set: full-field generators of trace
/// one. alpha * inv0(x) + b has no invariant affine subspace except the
/// whole field iff alpha * b^-2 lands here (p = 2).
pub fn trace_one_generator(x: &FieldElement) -> Result<bool> {
    if x.field().characteristic() != 2 {
        return Err(Error::WrongCharacteristic { expected: "2" });
    }
    Ok(x.generates_field() && x.trace_scalar() == 1)
}

/// Membership in the odd-characteristic admissible set: non-square
/// full-field generators. The scalar criterion tests alpha * b^-2 + 4^-1
/// against this set (p odd).
pub fn nonsquare_generator(x: &FieldElement) -> Result<bool> {
    if x.field().characteristic() == 2 {
        return Err(Error::WrongCharacteristic { expected: "odd" });
    }
    Ok(x.generates_field() && !x.is_square())
}

/// Complete certification of f(x) = alpha * inv0(x) + b. The overall
/// verdict is decisive in both directions:
///
/// * p = 2: no invariant affine subspace except the whole field iff
///   c = alpha * b^-2 is a trace-one full-field generator;
/// * p odd: iff c + 4^-1 is a non-square full-field generator.
///
/// Sub-results: a nontrivial invariant subspace exists iff c lies in a
/// proper subfield K with |K| > 2 (witness b K, verified by evaluation);
/// fixed points solve y^2 - y - c = 0; the only possible genuine 2-cycle is
/// {0, b}, present iff c = -1.
pub fn certify_scalar(alpha: &FieldElement, b: &FieldElement) -> Result<CertReport> {
    let field = alpha.field().clone();
    if !field.same_field(b.field()) {
        return Err(Error::FieldMismatch);
    }
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    let p = field.characteristic();
    let n = field.degree();
    let q = field.order();
    let b_inv = b.inv0();
    let c = alpha * &b_inv * &b_inv;

    let admissible = if p == 2 {
        trace_one_generator(&c)?
    } else {
        nonsquare_generator(&(&c + field.scalar(4).inv0()))?
    };

    let mut notes = Vec::new();
    degree_one_note(&field, &mut notes);

    // Nontrivial invariant subspaces are exactly b K for proper subfields K
    // containing c with more than two elements: for x = b u, u in K*,
    // f(x) = (c u^-1 + 1) b stays in b K, and f(0) = b does too.
    let witness_degree = (1..n)
        .filter(|&k| n.is_multiple_of(k) && (p as u128).pow(k as u32) > 2)
        .find(|&k| c.frobenius(k) == c);
    let (nontrivial_verdict, witness) = match witness_degree {
        Some(k) => {
            let sub = AffineSubspace::new(&field.zero(), subfield_subspace(&field, k)?)?;
            (NontrivialVerdict::ExistsWithWitness, Some(sub.scaled(b)?))
        }
        None => {
            if !c.generates_field() {
                // p = 2, c in F_2, n prime: the only proper subfield holding
                // c has two elements, too small for a subspace with |U| > 2.
                notes.push(
                    "c lies only in the two-element subfield, which cannot host a nontrivial invariant subspace".into(),
                );
            }
            (NontrivialVerdict::CertifiedNone, None)
        }
    };

    // Verify the witness by direct evaluation of the map.
    let eval = |x: &FieldElement| -> FieldElement { &(alpha * x.inv0()) + b };
    if let Some(w) = &witness {
        for u in w.elements()? {
            if !w.contains(&eval(&u))? {
                return Err(Error::Internal("scalar witness failed direct verification"));
            }
        }
    }

    let table = if q <= SMALL_SCAN_CAP {
        Some(SBox::from_scalar(alpha, b)?)
    } else {
        None
    };
    let (fixed, cycles, complete) = match &table {
        Some(sb) => (fixed_points(sb), two_cycles(sb), true),
        None => (Vec::new(), Vec::new(), false),
    };
    if !complete {
        notes.push("field too large for the exhaustive fixed-point and 2-cycle scan".into());
    }

    if complete {
        // Closed-form cross-checks against the exhaustive lists.
        let fixed_predicted = if p == 2 {
            c.trace_scalar() == 0
        } else {
            (&c + field.scalar(4).inv0()).is_square()
        };
        if fixed_predicted != !fixed.is_empty() {
            return Err(Error::Internal(
                "fixed-point criterion disagrees with the table",
            ));
        }
        let minus_one = -field.one();
        let zero_b_expected = c == minus_one;
        let zero_b_found = cycles.len() == 1 && cycles[0].0.is_zero() && cycles[0].1 == *b;
        // Any 2-cycle other than {0, b} would consist of solutions of the
        // fixed-point equation, i.e. of fixed points, which is absurd.
        if cycles.len() > 1
            || zero_b_found != zero_b_expected
            || (!cycles.is_empty() && !zero_b_found)
        {
            return Err(Error::Internal("a 2-cycle other than {0, b} appeared"));
        }
    }

    let overall = if admissible {
        OverallVerdict::NoInvariantExceptWholeField
    } else if witness.is_some() {
        OverallVerdict::HasNontrivialInvariant
    } else {
        OverallVerdict::HasSmallInvariant
    };

    if complete {
        // The criterion is an iff; make the report self-contradicting
        // impossible.
        let small_blocking = !fixed.is_empty() || (p == 2 && q > 2 && !cycles.is_empty());
        let exhaustive_clear = !small_blocking && witness.is_none();
        if admissible != exhaustive_clear {
            return Err(Error::Internal(
                "scalar criterion disagrees with the exhaustive scan",
            ));
        }
    }

    let t_divisors = c.subfield_degrees();
    Ok(CertReport {
        field: field.description(),
        form: CertifiedForm::Scalar {
            alpha: alpha.clone(),
            b: b.clone(),
        },
        t_value: c,
        t_divisors,
        nontrivial_verdict,
        witness,
        fixed_points: fixed,
        two_cycles: cycles,
        small_scan_complete: complete,
        overall,
        notes,
    })
}
