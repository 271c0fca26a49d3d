//! Brute-force scanners over S-box tables.
//!
//! Three exhaustive passes share one kernel: invariant affine subspaces
//! (f(U) contained in U), affine-to-affine images (f(U) again a subspace),
//! and a coset-permutation survey (f(u + L) = v + L). Candidates stream out
//! of the deterministic subspace enumeration, split by index range across
//! workers; findings are re-verified through the public subspace operations
//! before they enter a report, and reports are byte-identical across worker
//! counts.
//!
//! The per-candidate state lives in fixed-size stacks (digits are u16,
//! n <= 16), so the hot loop does no heap allocation. A full GF(2^8) sweep
//! visits ~7.9 million affine subspaces.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescription, FieldElement, MAX_EXTENSION_DEGREE};
use crate::par;
use crate::sbox::SBox;
use crate::subspace::{
    enumerate_affine_capped, enumerate_linear_capped, AffineSubspace, LinearSubspace, RawRows,
    DEFAULT_SUBSPACE_CAP,
};

const MAX_N: usize = MAX_EXTENSION_DEGREE;

/// Largest field order the scanners tabulate (digit tables are O(q * n)).
pub const MAX_SCAN_ORDER: u64 = 1 << 20;

const CHUNK: u64 = 4096;

#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Dimensions to scan; defaults to all of 0..=n (invariant scan) or all
    /// dims holding at least `min_card` elements (image scan).
    pub dims: Option<Vec<usize>>,
    /// Smallest subspace cardinality considered by the image scan.
    pub min_card: u64,
    /// Candidate-count refusal threshold.
    pub cap: u64,
    /// Stream per-dimension counters to stderr.
    pub progress: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            dims: None,
            min_card: 3,
            cap: DEFAULT_SUBSPACE_CAP,
            progress: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FoundKind {
    Invariant,
    AffineImage,
}

#[derive(Debug, Serialize)]
pub struct FoundSubspace {
    pub subspace: AffineSubspace,
    pub kind: FoundKind,
    /// Cardinality 1 or 2: outside the nontrivial range the classification
    /// theorems speak about, reported anyway for fixed-point/2-cycle audits.
    pub small: bool,
}

#[derive(Debug, Serialize)]
pub struct ScanReport {
    pub sbox_id: String,
    pub field: FieldDescription,
    pub found: Vec<FoundSubspace>,
    pub dims_scanned: Vec<usize>,
    pub subspace_count_scanned: u64,
    /// Wall-clock time; deliberately not serialized so JSON reports stay
    /// byte-identical across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Serialize)]
pub struct CosetSurveyEntry {
    pub linear: LinearSubspace,
    /// Canonical coset representatives (u, v) with f(u + L) = v + L.
    pub pairs: Vec<(FieldElement, FieldElement)>,
}

#[derive(Debug, Serialize)]
pub struct CosetSurvey {
    pub sbox_id: String,
    pub field: FieldDescription,
    /// Only subspaces with at least one mapped coset appear; scanned totals
    /// record the full coverage.
    pub entries: Vec<CosetSurveyEntry>,
    pub dims_scanned: Vec<usize>,
    pub linear_scanned: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

// ---------------------------------------------------------------------------
// Kernel
// ---------------------------------------------------------------------------

/// Immutable per-scan context: the table plus digit decompositions of every
/// canonical index.
struct Ctx {
    p: u64,
    n: usize,
    q: usize,
    table: Vec<u32>,
    digits: Vec<u16>,
    pow: [u64; MAX_N + 1],
}

impl Ctx {
    fn new(f: &SBox) -> Result<Ctx> {
        let field = f.field();
        let q = field.order();
        if q > MAX_SCAN_ORDER {
            return Err(Error::CapExceeded {
                needed: q as u128,
                cap: MAX_SCAN_ORDER,
            });
        }
        let p = field.characteristic();
        let n = field.degree();
        let q = q as usize;
        let mut digits = vec![0u16; q * n];
        for v in 0..q {
            let mut rem = v as u64;
            for d in digits[v * n..(v + 1) * n].iter_mut() {
                *d = (rem % p) as u16;
                rem /= p;
            }
        }
        let mut pow = [0u64; MAX_N + 1];
        pow[0] = 1;
        for i in 1..=n {
            pow[i] = pow[i - 1] * p;
        }
        Ok(Ctx {
            p,
            n,
            q,
            table: f.table().to_vec(),
            digits,
            pow,
        })
    }

    #[inline]
    fn digits_of(&self, v: u32) -> &[u16] {
        &self.digits[v as usize * self.n..(v as usize + 1) * self.n]
    }

    #[inline]
    fn compose(&self, d: &[u16; MAX_N]) -> u32 {
        let mut acc = 0u64;
        for i in (0..self.n).rev() {
            acc = acc * self.p + d[i] as u64;
        }
        acc as u32
    }
}

/// Per-worker scratch: the current candidate's basis, odometer, membership
/// temporaries, a tiny echelon accumulator for image spans, and a stamp set
/// for distinct counting.
struct Scratch {
    rows: RawRows,
    pivots: Vec<usize>,
    rep: [u16; MAX_N],
    cur: [u16; MAX_N],
    counter: [u64; MAX_N],
    tmp: [u16; MAX_N],
    span_rows: [[u16; MAX_N]; MAX_N],
    span_pivots: [usize; MAX_N],
    span_rank: usize,
    stamp: Vec<u32>,
    stamp_gen: u32,
    last_linear: Option<u64>,
}

impl Scratch {
    fn new(ctx: &Ctx) -> Scratch {
        Scratch {
            rows: RawRows::new(),
            pivots: Vec::new(),
            rep: [0; MAX_N],
            cur: [0; MAX_N],
            counter: [0; MAX_N],
            tmp: [0; MAX_N],
            span_rows: [[0; MAX_N]; MAX_N],
            span_pivots: [0; MAX_N],
            span_rank: 0,
            stamp: vec![u32::MAX; ctx.q],
            stamp_gen: 0,
            last_linear: None,
        }
    }

    #[inline]
    fn next_stamp_gen(&mut self) -> u32 {
        if self.stamp_gen == u32::MAX {
            self.stamp.fill(u32::MAX);
            self.stamp_gen = 0;
        }
        self.stamp_gen += 1;
        self.stamp_gen - 1
    }
}

#[inline]
fn digit_sub(p: u64, a: u16, b: u16) -> u16 {
    ((a as u64 + p - b as u64) % p) as u16
}

/// tmp <- tmp - c * row (digit-wise mod p).
#[inline]
fn row_subtract(p: u64, tmp: &mut [u16; MAX_N], row: &[u16; MAX_N], c: u16, n: usize) {
    let c = c as u64;
    for j in 0..n {
        tmp[j] = ((tmp[j] as u64 + (p - 1) * c * row[j] as u64) % p) as u16;
    }
}

/// Is v in rep + span(rows)? Rows are RREF with the given pivot columns.
#[inline]
fn member(ctx: &Ctx, s: &mut Scratch, v: u32) -> bool {
    let n = ctx.n;
    let vd = ctx.digits_of(v);
    for ((t, &d), &r) in s.tmp.iter_mut().zip(vd).zip(&s.rep) {
        *t = digit_sub(ctx.p, d, r);
    }
    for (i, &piv) in s.pivots.iter().enumerate() {
        let c = s.tmp[piv];
        if c != 0 {
            let row = s.rows.rows[i];
            row_subtract(ctx.p, &mut s.tmp, &row, c, n);
        }
    }
    s.tmp[..n].iter().all(|&d| d == 0)
}

/// One odometer step over the candidate's elements: returns false once the
/// counter has wrapped completely (all elements visited).
#[inline]
fn advance(ctx: &Ctx, s: &mut Scratch) -> bool {
    let k = s.rows.k;
    let n = ctx.n;
    let p = ctx.p;
    let mut pos = 0;
    loop {
        if pos == k {
            return false;
        }
        let row = s.rows.rows[pos];
        for (c, &r) in s.cur.iter_mut().take(n).zip(&row) {
            *c = ((*c as u64 + r as u64) % p) as u16;
        }
        s.counter[pos] += 1;
        if s.counter[pos] < p {
            return true;
        }
        s.counter[pos] = 0;
        pos += 1;
    }
}

fn begin_candidate(s: &mut Scratch) {
    s.cur = s.rep;
    s.counter.fill(0);
}

/// f(U) subset of U, early exit on the first escapee.
fn candidate_invariant(ctx: &Ctx, s: &mut Scratch) -> bool {
    begin_candidate(s);
    loop {
        let u = ctx.compose(&s.cur);
        let v = ctx.table[u as usize];
        if !member(ctx, s, v) {
            return false;
        }
        if !advance(ctx, s) {
            return true;
        }
    }
}

/// Inserts d (digits) into the span accumulator, keeping reduced row
/// echelon form; returns true when the rank grew.
fn span_insert(ctx: &Ctx, s: &mut Scratch, d: &[u16; MAX_N]) -> bool {
    let n = ctx.n;
    let p = ctx.p;
    let mut v = *d;
    for i in 0..s.span_rank {
        let c = v[s.span_pivots[i]];
        if c != 0 {
            let row = s.span_rows[i];
            row_subtract(p, &mut v, &row, c, n);
        }
    }
    let Some(piv) = (0..n).find(|&j| v[j] != 0) else {
        return false;
    };
    // Normalize the pivot and clear its column upward.
    let inv = crate::poly::mod_inv(v[piv] as u64, p) as u16;
    for d in v.iter_mut().take(n) {
        *d = ((*d as u64 * inv as u64) % p) as u16;
    }
    for i in 0..s.span_rank {
        let c = s.span_rows[i][piv];
        if c != 0 {
            let vv = v;
            row_subtract(p, &mut s.span_rows[i], &vv, c, n);
        }
    }
    let at = (0..s.span_rank)
        .find(|&i| s.span_pivots[i] > piv)
        .unwrap_or(s.span_rank);
    for i in (at..s.span_rank).rev() {
        s.span_rows[i + 1] = s.span_rows[i];
        s.span_pivots[i + 1] = s.span_pivots[i];
    }
    s.span_rows[at] = v;
    s.span_pivots[at] = piv;
    s.span_rank += 1;
    true
}

/// Is the image set f(U) an affine subspace? Tracks the span of image
/// differences (early exit once its dimension exceeds dim U) and the number
/// of distinct images; affine iff |f(U)| = p^rank at the end.
fn candidate_image_affine(ctx: &Ctx, s: &mut Scratch) -> bool {
    begin_candidate(s);
    let k = s.rows.k;
    s.span_rank = 0;
    let gen = s.next_stamp_gen();
    let base = ctx.table[ctx.compose(&s.cur) as usize];
    let base_digits: [u16; MAX_N] = {
        let mut b = [0u16; MAX_N];
        b[..ctx.n].copy_from_slice(ctx.digits_of(base));
        b
    };
    let mut distinct: u64 = 0;
    loop {
        let u = ctx.compose(&s.cur);
        let v = ctx.table[u as usize];
        if s.stamp[v as usize] != gen {
            s.stamp[v as usize] = gen;
            distinct += 1;
        }
        let vd = ctx.digits_of(v);
        let mut diff = [0u16; MAX_N];
        for j in 0..ctx.n {
            diff[j] = digit_sub(ctx.p, vd[j], base_digits[j]);
        }
        if span_insert(ctx, s, &diff) && s.span_rank > k {
            return false;
        }
        if !advance(ctx, s) {
            break;
        }
    }
    distinct == ctx.pow[s.span_rank]
}

/// Decodes affine candidate `idx` into the scratch basis/rep, reusing the
/// previous basis when only the representative changed.
fn load_candidate(
    ctx: &Ctx,
    plan: &crate::subspace::PivotPlan,
    reps_per_linear: u64,
    idx: u64,
    s: &mut Scratch,
) {
    let lin_idx = idx / reps_per_linear;
    let rep_idx = idx % reps_per_linear;
    let (si, local) = plan.locate(lin_idx as u128);
    if s.last_linear != Some(lin_idx) {
        plan.decode_rows(si, local, &mut s.rows);
        s.pivots.clear();
        s.pivots.extend_from_slice(&plan.sets[si].cols);
        s.last_linear = Some(lin_idx);
    }
    plan.decode_rep(si, rep_idx, &mut s.rep);
    let _ = ctx;
}

// ---------------------------------------------------------------------------
// Public scans
// ---------------------------------------------------------------------------

fn checked_dims(field: &Field, opts: &ScanOptions, min_card: Option<u64>) -> Result<Vec<usize>> {
    let n = field.degree();
    let p = field.characteristic();
    let all: Vec<usize> = match &opts.dims {
        Some(ds) => {
            let mut ds = ds.clone();
            ds.sort_unstable();
            ds.dedup();
            if ds.iter().any(|&k| k > n) {
                return Err(Error::PreconditionViolated(
                    "requested dimension exceeds field degree",
                ));
            }
            ds
        }
        None => (0..=n).collect(),
    };
    Ok(match min_card {
        Some(m) => all
            .into_iter()
            .filter(|&k| (p as u128).pow(k as u32) >= m as u128)
            .collect(),
        None => all,
    })
}

fn scan_with(
    f: &SBox,
    opts: &ScanOptions,
    dims: Vec<usize>,
    kind: FoundKind,
    check: impl Fn(&Ctx, &mut Scratch) -> bool + Sync,
) -> Result<ScanReport> {
    let start = Instant::now();
    let field = f.field().clone();
    let ctx = Ctx::new(f)?;

    // Refuse oversized streams before doing any work.
    let mut grand_total: u128 = 0;
    for &k in &dims {
        grand_total += crate::subspace::affine_subspace_count(&field, k);
    }
    if grand_total > opts.cap as u128 {
        return Err(Error::CapExceeded {
            needed: grand_total,
            cap: opts.cap,
        });
    }

    let mut found = Vec::new();
    let mut scanned: u64 = 0;
    for &k in &dims {
        let enumerator = enumerate_affine_capped(&field, k, opts.cap)?;
        let total = enumerator.len();
        let plan = enumerator.plan();
        let reps = enumerator.reps_per_linear();
        let hits: Vec<u64> = par::chunked_collect(
            total,
            CHUNK,
            || Scratch::new(&ctx),
            |s, range, out| {
                s.last_linear = None;
                for i in range {
                    load_candidate(&ctx, plan, reps, i, s);
                    if check(&ctx, s) {
                        out.push(i);
                    }
                }
            },
        );
        if opts.progress {
            eprintln!("dim {k}: {total} candidates, {} hit", hits.len());
        }
        scanned += total;
        for i in hits {
            let subspace = enumerator.get(i);
            verify_finding(f, &subspace, kind)?;
            let small = subspace.cardinality() <= 2;
            found.push(FoundSubspace {
                subspace,
                kind,
                small,
            });
        }
    }
    found.sort_by(|a, b| a.subspace.cmp(&b.subspace));
    Ok(ScanReport {
        sbox_id: f.digest(),
        field: field.description(),
        found,
        dims_scanned: dims,
        subspace_count_scanned: scanned,
        elapsed: start.elapsed(),
    })
}

/// Kernel findings are re-verified through the public element/membership
/// path before they are reported.
fn verify_finding(f: &SBox, u: &AffineSubspace, kind: FoundKind) -> Result<()> {
    let elems = u.elements()?;
    match kind {
        FoundKind::Invariant => {
            let mut image = std::collections::BTreeSet::new();
            for e in &elems {
                let fe = f.apply(e)?;
                if !u.contains(&fe)? {
                    return Err(Error::Internal("invariant finding failed re-verification"));
                }
                image.insert(fe.value());
            }
            // For permutations, containment forces equality of U and f(U).
            if f.is_permutation() && image.len() as u128 != u.cardinality() {
                return Err(Error::Internal("permutation image lost cardinality"));
            }
        }
        FoundKind::AffineImage => {
            let image: Vec<FieldElement> =
                elems.iter().map(|e| f.apply(e)).collect::<Result<_>>()?;
            if AffineSubspace::from_set(&image)?.is_none() {
                return Err(Error::Internal("image finding failed re-verification"));
            }
        }
    }
    Ok(())
}

/// Every affine subspace U (in the requested dimensions) with f(u) in U for
/// all u in U. For permutations this is exactly f(U) = U.
pub fn scan_invariant(f: &SBox, opts: &ScanOptions) -> Result<ScanReport> {
    let dims = checked_dims(f.field(), opts, None)?;
    scan_with(f, opts, dims, FoundKind::Invariant, candidate_invariant)
}

/// Every affine subspace U with |U| >= min_card whose image set f(U) is an
/// affine subspace.
pub fn scan_affine_images(f: &SBox, opts: &ScanOptions) -> Result<ScanReport> {
    let dims = checked_dims(f.field(), opts, Some(opts.min_card))?;
    scan_with(
        f,
        opts,
        dims,
        FoundKind::AffineImage,
        candidate_image_affine,
    )
}

/// For each proper linear subspace L, the cosets u + L that f maps onto a
/// coset v + L. Entries with no mapped coset are omitted; `linear_scanned`
/// records the coverage.
pub fn coset_survey(f: &SBox, opts: &ScanOptions) -> Result<CosetSurvey> {
    let start = Instant::now();
    let field = f.field().clone();
    let ctx = Ctx::new(f)?;
    let n = field.degree();
    let dims: Vec<usize> = checked_dims(&field, opts, None)?
        .into_iter()
        .filter(|&k| k < n)
        .collect();

    let mut entries = Vec::new();
    let mut linear_scanned = 0u64;
    for &k in &dims {
        let enumerator = enumerate_linear_capped(&field, k, opts.cap)?;
        let lin_total = enumerator.len();
        linear_scanned += lin_total;
        let plan = enumerator.plan();
        let reps = (field.characteristic() as u128).pow((n - k) as u32) as u64;

        // Chunk over linear subspaces; inner loop walks every coset.
        let hits: Vec<(u64, Vec<(u64, u64)>)> = par::chunked_collect(
            lin_total,
            (CHUNK / reps.max(1)).max(1),
            || Scratch::new(&ctx),
            |s, range, out| {
                for li in range {
                    let (si, local) = plan.locate(li as u128);
                    plan.decode_rows(si, local, &mut s.rows);
                    s.pivots.clear();
                    s.pivots.extend_from_slice(&plan.sets[si].cols);
                    let mut pairs = Vec::new();
                    for ri in 0..reps {
                        plan.decode_rep(si, ri, &mut s.rep);
                        if let Some(pair) = coset_maps_to_coset(&ctx, s) {
                            pairs.push(pair);
                        }
                    }
                    if !pairs.is_empty() {
                        out.push((li, pairs));
                    }
                }
            },
        );
        for (li, pairs) in hits {
            let linear = enumerator.get(li);
            let pairs: Vec<(FieldElement, FieldElement)> = pairs
                .into_iter()
                .map(|(u, v)| {
                    (
                        field.from_value(u).expect("canonical rep"),
                        field.from_value(v).expect("canonical rep"),
                    )
                })
                .collect();
            entries.push(CosetSurveyEntry { linear, pairs });
        }
    }
    entries.sort_by(|a, b| a.linear.cmp(&b.linear));
    Ok(CosetSurvey {
        sbox_id: f.digest(),
        field: field.description(),
        entries,
        dims_scanned: dims,
        linear_scanned,
        elapsed: start.elapsed(),
    })
}

/// Checks f(rep + L) = v + L for some v; returns canonical (u, v) on
/// success. Requires all images to fall in one coset of L and to cover it.
fn coset_maps_to_coset(ctx: &Ctx, s: &mut Scratch) -> Option<(u64, u64)> {
    let k = s.rows.k;
    let n = ctx.n;
    let gen = s.next_stamp_gen();
    begin_candidate(s);
    let base = ctx.table[ctx.compose(&s.cur) as usize];
    let u_rep = ctx.compose(&s.rep) as u64;

    // Canonicalize the image representative against the same basis.
    let mut v_rep = [0u16; MAX_N];
    v_rep[..n].copy_from_slice(ctx.digits_of(base));
    for (i, &piv) in s.pivots.iter().enumerate() {
        let c = v_rep[piv];
        if c != 0 {
            let row = s.rows.rows[i];
            row_subtract(ctx.p, &mut v_rep, &row, c, n);
        }
    }

    let saved_rep = s.rep;
    s.rep = v_rep;
    let mut distinct = 0u64;
    let mut ok = true;
    // Walk the source coset: elements are saved_rep + combos, i.e. v_rep is
    // only used for membership, so rebuild cur from the saved rep.
    s.cur = saved_rep;
    s.counter.fill(0);
    loop {
        let u = ctx.compose(&s.cur);
        let v = ctx.table[u as usize];
        if !member(ctx, s, v) {
            ok = false;
            break;
        }
        if s.stamp[v as usize] != gen {
            s.stamp[v as usize] = gen;
            distinct += 1;
        }
        if !advance(ctx, s) {
            break;
        }
    }
    s.rep = saved_rep;
    if ok && distinct == ctx.pow[k] {
        Some((u_rep, ctx.compose(&v_rep) as u64))
    } else {
        None
    }
}
