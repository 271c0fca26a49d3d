//! F_p-linear and affine subspace algebra over GF(p^n).
//!
//! Subspaces are kept in reduced row echelon form over the coefficient
//! coordinates of the field, with a canonical coset representative whose
//! pivot coordinates are zero. RREF uniqueness makes equality of canonical
//! forms equality of subspaces, which the classification and scan modules
//! lean on for deduplication.
//!
//! Enumeration walks pivot-column sets in lexicographic order and then the
//! free entries of the echelon pattern, so streams are deterministic and
//! splittable by index range for parallel consumption.

use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, MAX_EXTENSION_DEGREE};
use crate::linalg::{kernel_basis, RrefBasis};

/// Default refusal threshold for subspace/element streams.
pub const DEFAULT_SUBSPACE_CAP: u64 = 1 << 30;

const MAX_N: usize = MAX_EXTENSION_DEGREE;

/// Number of k-dimensional subspaces of an n-dimensional space over F_p.
pub fn gaussian_binomial(n: usize, k: usize, p: u64) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (p.pow((n - k + i) as u32) - 1) / (p.pow(i as u32) - 1);
    }
    acc
}

/// Number of k-dimensional affine subspaces of GF(p^n):
/// `[n choose k]_p * p^(n-k)`.
pub fn affine_subspace_count(field: &Field, k: usize) -> u128 {
    let n = field.degree();
    gaussian_binomial(n, k, field.characteristic())
        * (field.characteristic() as u128).pow((n - k) as u32)
}

// ---------------------------------------------------------------------------
// Linear subspaces
// ---------------------------------------------------------------------------

/// A linear F_p-subspace of GF(p^n) in canonical (RREF) form.
#[derive(Clone)]
pub struct LinearSubspace {
    field: Field,
    basis: RrefBasis,
}

impl LinearSubspace {
    pub fn zero(field: &Field) -> Self {
        LinearSubspace {
            field: field.clone(),
            basis: RrefBasis::new(field.characteristic(), field.degree()),
        }
    }

    pub fn whole(field: &Field) -> Self {
        let n = field.degree();
        let rows = (0..n).map(|i| {
            let mut r = vec![0u64; n];
            r[i] = 1;
            r
        });
        LinearSubspace {
            field: field.clone(),
            basis: RrefBasis::from_rows(field.characteristic(), n, rows),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn cardinality(&self) -> u128 {
        (self.field.characteristic() as u128).pow(self.dim() as u32)
    }

    /// Basis vectors as field elements, in pivot order.
    pub fn basis(&self) -> Vec<FieldElement> {
        self.basis_values()
            .into_iter()
            .map(|v| self.field.from_value(v).expect("basis rows are reduced"))
            .collect()
    }

    /// Canonical integer encodings of the basis rows, in pivot order.
    pub fn basis_values(&self) -> Vec<u64> {
        self.basis
            .rows()
            .iter()
            .map(|row| row_value(&self.field, row))
            .collect()
    }

    pub fn contains(&self, x: &FieldElement) -> Result<bool> {
        if !self.field.same_field(x.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.basis.contains(&x.coeffs()))
    }

    /// The subspace { q*v : v in self } for q != 0; dimension is preserved.
    pub fn scaled(&self, q: &FieldElement) -> Result<LinearSubspace> {
        if !self.field.same_field(q.field()) {
            return Err(Error::FieldMismatch);
        }
        if q.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let scaled: Vec<FieldElement> = self.basis().iter().map(|b| b * q).collect();
        span(&self.field, &scaled)
    }

    /// Sum over all elements of the subspace. Zero whenever the cardinality
    /// exceeds 2.
    pub fn sum_of_elements(&self) -> Result<FieldElement> {
        let coset = AffineSubspace::new(&self.field.zero(), self.clone())?;
        let mut acc = self.field.zero();
        for e in coset.elements()? {
            acc = acc + e;
        }
        Ok(acc)
    }

    fn sort_key(&self) -> (usize, Vec<u64>) {
        (self.dim(), self.basis_values())
    }
}

impl fmt::Debug for LinearSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearSubspace(dim={}, basis={:?})",
            self.dim(),
            self.basis_values()
        )
    }
}

impl PartialEq for LinearSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.basis.rows() == other.basis.rows()
    }
}
impl Eq for LinearSubspace {}

impl Hash for LinearSubspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis_values().hash(state);
    }
}

impl PartialOrd for LinearSubspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for LinearSubspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl Serialize for LinearSubspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LinearSubspace", 2)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("basis", &self.basis_values())?;
        s.end()
    }
}

fn row_value(field: &Field, row: &[u64]) -> u64 {
    let mut buf = [0u64; MAX_N];
    buf[..row.len()].copy_from_slice(row);
    field.compose(&buf)
}

/// RREF span of a set of field elements; `span(f, &[])` is the zero
/// subspace.
pub fn span(field: &Field, vectors: &[FieldElement]) -> Result<LinearSubspace> {
    let mut basis = RrefBasis::new(field.characteristic(), field.degree());
    for v in vectors {
        if !field.same_field(v.field()) {
            return Err(Error::FieldMismatch);
        }
        basis.insert(v.coeffs());
    }
    Ok(LinearSubspace {
        field: field.clone(),
        basis,
    })
}

/// The subfield F_{p^k} of GF(p^n) as a linear subspace: the fixed space of
/// the k-th Frobenius power, computed as a kernel over F_p. Requires k | n.
pub fn subfield_subspace(field: &Field, k: usize) -> Result<LinearSubspace> {
    let n = field.degree();
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotADivisor { k, n });
    }
    // Matrix of frobenius^k - identity in the coordinate basis.
    let mut rows = vec![vec![0u64; n]; n];
    let p = field.characteristic();
    for j in 0..n {
        let mut e = vec![0u64; n];
        e[j] = 1;
        let img = field.element(&e)?.frobenius(k);
        for (i, c) in img.coeffs().into_iter().enumerate() {
            rows[i][j] = c;
        }
        rows[j][j] = (rows[j][j] + p - 1) % p;
    }
    let ker = kernel_basis(&rows, p);
    let basis = RrefBasis::from_rows(p, n, ker);
    debug_assert_eq!(
        basis.rank(),
        k,
        "fixed space of frobenius^k has dimension k"
    );
    Ok(LinearSubspace {
        field: field.clone(),
        basis,
    })
}

// ---------------------------------------------------------------------------
// Affine subspaces
// ---------------------------------------------------------------------------

/// An affine subspace rep + L in canonical form: the representative has zero
/// coordinates at every pivot column of L's basis, so equal cosets compare
/// equal structurally.
#[derive(Clone)]
pub struct AffineSubspace {
    linear: LinearSubspace,
    rep: FieldElement,
}

impl AffineSubspace {
    /// Canonicalizes `point + linear`.
    pub fn new(point: &FieldElement, linear: LinearSubspace) -> Result<AffineSubspace> {
        if !linear.field.same_field(point.field()) {
            return Err(Error::FieldMismatch);
        }
        let mut coeffs = point.coeffs();
        linear.basis.reduce(&mut coeffs);
        let rep = linear.field.element(&coeffs)?;
        Ok(AffineSubspace { linear, rep })
    }

    /// The affine hull test: returns the canonical subspace when `set` is an
    /// affine subspace, `None` otherwise. The result does not depend on the
    /// choice of base point.
    pub fn from_set(set: &[FieldElement]) -> Result<Option<AffineSubspace>> {
        let first = set.first().ok_or(Error::EmptySet)?;
        let field = first.field().clone();
        let mut values = std::collections::BTreeSet::new();
        for e in set {
            if !field.same_field(e.field()) {
                return Err(Error::FieldMismatch);
            }
            values.insert(e.value());
        }
        let base = field.from_value(*values.iter().next().unwrap())?;
        let diffs: Vec<FieldElement> = values
            .iter()
            .map(|&v| field.from_value(v).unwrap() - &base)
            .collect();
        let linear = span(&field, &diffs)?;
        if linear.cardinality() == values.len() as u128 {
            Ok(Some(AffineSubspace::new(&base, linear)?))
        } else {
            Ok(None)
        }
    }

    pub fn field(&self) -> &Field {
        &self.linear.field
    }

    pub fn linear(&self) -> &LinearSubspace {
        &self.linear
    }

    pub fn rep(&self) -> &FieldElement {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn cardinality(&self) -> u128 {
        self.linear.cardinality()
    }

    /// True when the coset is a linear subspace (contains zero).
    pub fn is_linear(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn contains(&self, x: &FieldElement) -> Result<bool> {
        let shifted = x.try_sub(&self.rep)?;
        self.linear.contains(&shifted)
    }

    /// All p^dim elements, in deterministic (mixed-radix counter) order.
    pub fn elements(&self) -> Result<Vec<FieldElement>> {
        self.elements_capped(DEFAULT_SUBSPACE_CAP)
    }

    pub fn elements_capped(&self, cap: u64) -> Result<Vec<FieldElement>> {
        let card = self.cardinality();
        if card > cap as u128 {
            return Err(Error::CapExceeded { needed: card, cap });
        }
        let field = self.field();
        let basis = self.linear.basis();
        let p = field.characteristic();
        let mut out = Vec::with_capacity(card as usize);
        let mut digits = vec![0u64; self.dim()];
        let mut cur = self.rep.clone();
        loop {
            out.push(cur.clone());
            // Odometer step: digit i wrapping from p-1 to 0 still adds
            // basis[i] once, because p * b = 0.
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    return Ok(out);
                }
                cur = cur + &basis[pos];
                digits[pos] += 1;
                if digits[pos] < p {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    /// The canonical form of { q*u : u in self } for q != 0.
    pub fn scaled(&self, q: &FieldElement) -> Result<AffineSubspace> {
        let linear = self.linear.scaled(q)?;
        AffineSubspace::new(&(&self.rep * q), linear)
    }

    fn sort_key(&self) -> (usize, Vec<u64>, u64) {
        (self.dim(), self.linear.basis_values(), self.rep.value())
    }
}

impl fmt::Debug for AffineSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AffineSubspace(dim={}, basis={:?}, rep={})",
            self.dim(),
            self.linear.basis_values(),
            self.rep.value()
        )
    }
}

impl PartialEq for AffineSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.linear == other.linear && self.rep == other.rep
    }
}
impl Eq for AffineSubspace {}

impl Hash for AffineSubspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.linear.hash(state);
        self.rep.value().hash(state);
    }
}

impl PartialOrd for AffineSubspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for AffineSubspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl Serialize for AffineSubspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AffineSubspace", 3)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("basis", &self.linear.basis_values())?;
        s.serialize_field("rep", &self.rep.value())?;
        s.end()
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// One RREF pivot pattern: which columns carry pivots and which matrix
/// entries are free.
pub(crate) struct PivotSet {
    pub cols: Vec<usize>,
    pub non_cols: Vec<usize>,
    pub free: Vec<(usize, usize)>,
    pub count: u128,
    pub offset: u128,
}

/// Index plan over every k-dimensional RREF basis: pivot-column sets in
/// lexicographic order, then free entries in lexicographic order (first
/// free entry most significant).
pub(crate) struct PivotPlan {
    pub p: u64,
    pub n: usize,
    pub k: usize,
    pub sets: Vec<PivotSet>,
    pub total: u128,
}

/// Stack-allocated decoded basis rows; digit entries in 0..p.
#[derive(Clone)]
pub(crate) struct RawRows {
    pub k: usize,
    pub rows: [[u16; MAX_N]; MAX_N],
}

impl RawRows {
    pub fn new() -> Self {
        RawRows {
            k: 0,
            rows: [[0u16; MAX_N]; MAX_N],
        }
    }
}

impl PivotPlan {
    pub fn new(p: u64, n: usize, k: usize) -> PivotPlan {
        assert!(k <= n && n <= MAX_N);
        let mut sets = Vec::new();
        let mut offset: u128 = 0;
        for cols in (0..n).combinations(k) {
            let non_cols: Vec<usize> = (0..n).filter(|c| !cols.contains(c)).collect();
            let mut free = Vec::new();
            for (i, &pc) in cols.iter().enumerate() {
                for &j in &non_cols {
                    if j > pc {
                        free.push((i, j));
                    }
                }
            }
            free.sort_unstable();
            let count = (p as u128).pow(free.len() as u32);
            sets.push(PivotSet {
                cols,
                non_cols,
                free,
                count,
                offset,
            });
            offset += count;
        }
        PivotPlan {
            p,
            n,
            k,
            sets,
            total: offset,
        }
    }

    /// Locates the pivot set containing global index `idx`.
    pub fn locate(&self, idx: u128) -> (usize, u64) {
        debug_assert!(idx < self.total);
        let si = self.sets.partition_point(|s| s.offset + s.count <= idx);
        let local = idx - self.sets[si].offset;
        (si, local as u64)
    }

    /// Decodes basis rows for (pivot set, local free-entry index).
    pub fn decode_rows(&self, set_idx: usize, local: u64, out: &mut RawRows) {
        let set = &self.sets[set_idx];
        out.k = self.k;
        for row in out.rows.iter_mut().take(self.k) {
            row.fill(0);
        }
        for (i, &c) in set.cols.iter().enumerate() {
            out.rows[i][c] = 1;
        }
        let mut v = local;
        for &(r, c) in set.free.iter().rev() {
            out.rows[r][c] = (v % self.p) as u16;
            v /= self.p;
        }
    }

    /// Decodes a canonical coset representative for the pivot set: digits at
    /// the non-pivot columns, first column most significant.
    pub fn decode_rep(&self, set_idx: usize, rep_idx: u64, out: &mut [u16; MAX_N]) {
        let set = &self.sets[set_idx];
        out.fill(0);
        let mut v = rep_idx;
        for &c in set.non_cols.iter().rev() {
            out[c] = (v % self.p) as u16;
            v /= self.p;
        }
    }
}

/// Deterministic, index-addressable stream of every k-dimensional linear
/// subspace.
pub struct LinearEnumerator {
    field: Field,
    plan: PivotPlan,
}

impl LinearEnumerator {
    pub fn len(&self) -> u64 {
        self.plan.total as u64
    }

    pub fn is_empty(&self) -> bool {
        self.plan.total == 0
    }

    pub fn get(&self, i: u64) -> LinearSubspace {
        let (si, local) = self.plan.locate(i as u128);
        let mut raw = RawRows::new();
        self.plan.decode_rows(si, local, &mut raw);
        raw_to_linear(&self.field, &self.plan, si, &raw)
    }

    pub fn iter(&self) -> impl Iterator<Item = LinearSubspace> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    pub(crate) fn plan(&self) -> &PivotPlan {
        &self.plan
    }
}

fn raw_to_linear(field: &Field, plan: &PivotPlan, set_idx: usize, raw: &RawRows) -> LinearSubspace {
    let n = plan.n;
    let rows: Vec<Vec<u64>> = (0..raw.k)
        .map(|i| raw.rows[i][..n].iter().map(|&d| d as u64).collect())
        .collect();
    let pivots = plan.sets[set_idx].cols.clone();
    LinearSubspace {
        field: field.clone(),
        basis: RrefBasis::from_rref_unchecked(plan.p, n, rows, pivots),
    }
}

/// Deterministic stream of every k-dimensional affine subspace, linear
/// subspace major, canonical representative minor.
pub struct AffineEnumerator {
    field: Field,
    plan: PivotPlan,
    reps_per_linear: u64,
}

impl AffineEnumerator {
    pub fn len(&self) -> u64 {
        self.plan.total as u64 * self.reps_per_linear
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub(crate) fn plan(&self) -> &PivotPlan {
        &self.plan
    }

    pub(crate) fn reps_per_linear(&self) -> u64 {
        self.reps_per_linear
    }

    pub fn get(&self, i: u64) -> AffineSubspace {
        let lin_idx = i / self.reps_per_linear;
        let rep_idx = i % self.reps_per_linear;
        let (si, local) = self.plan.locate(lin_idx as u128);
        let mut raw = RawRows::new();
        self.plan.decode_rows(si, local, &mut raw);
        let linear = raw_to_linear(&self.field, &self.plan, si, &raw);
        let mut rep_digits = [0u16; MAX_N];
        self.plan.decode_rep(si, rep_idx, &mut rep_digits);
        let rep_coeffs: Vec<u64> = rep_digits[..self.plan.n]
            .iter()
            .map(|&d| d as u64)
            .collect();
        let rep = self.field.element(&rep_coeffs).expect("digits are reduced");
        debug_assert!(self.plan.sets[si].cols.iter().all(|&c| rep_coeffs[c] == 0));
        AffineSubspace { linear, rep }
    }

    pub fn iter(&self) -> impl Iterator<Item = AffineSubspace> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

/// Every k-dimensional linear subspace of the field, under the default cap.
pub fn enumerate_linear(field: &Field, k: usize) -> Result<LinearEnumerator> {
    enumerate_linear_capped(field, k, DEFAULT_SUBSPACE_CAP)
}

pub fn enumerate_linear_capped(field: &Field, k: usize, cap: u64) -> Result<LinearEnumerator> {
    let n = field.degree();
    if k > n {
        return Err(Error::PreconditionViolated(
            "subspace dimension exceeds field degree",
        ));
    }
    let plan = PivotPlan::new(field.characteristic(), n, k);
    if plan.total > cap as u128 {
        return Err(Error::CapExceeded {
            needed: plan.total,
            cap,
        });
    }
    Ok(LinearEnumerator {
        field: field.clone(),
        plan,
    })
}

/// Every k-dimensional affine subspace of the field, under the default cap.
pub fn enumerate_affine(field: &Field, k: usize) -> Result<AffineEnumerator> {
    enumerate_affine_capped(field, k, DEFAULT_SUBSPACE_CAP)
}

pub fn enumerate_affine_capped(field: &Field, k: usize, cap: u64) -> Result<AffineEnumerator> {
    let n = field.degree();
    if k > n {
        return Err(Error::PreconditionViolated(
            "subspace dimension exceeds field degree",
        ));
    }
    let plan = PivotPlan::new(field.characteristic(), n, k);
    let reps = (field.characteristic() as u128).pow((n - k) as u32);
    let total = plan.total * reps;
    if total > cap as u128 {
        return Err(Error::CapExceeded { needed: total, cap });
    }
    Ok(AffineEnumerator {
        field: field.clone(),
        plan,
        reps_per_linear: reps as u64,
    })
}
