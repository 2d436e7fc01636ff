//! Quadratic triples on the local model of a regular pair.
//!
//! A [`LocalTriple`] is a symmetric n x n matrix over k[t], modeling a
//! quadratic triple on `(Spec k[t]_(t), V(t))` with both line bundles
//! trivialized; over the local base every line bundle is trivial, so
//! equivalence of triples collapses to congruence plus unit scaling. The
//! module computes rank profiles, discriminants (exactly, by fraction-free
//! Bareiss elimination), degeneration multiplicities as t-adic valuations,
//! reduced triples of mildly degenerating families, twists, orthogonal sums,
//! the standard one-parameter model, base change, and the symbolic
//! right-hand side of the degeneration boundary formula.

mod scalar;

pub use scalar::{FieldSpec, PolyT, Scalar};

use crate::error::{Error, Result};
use crate::gralg::PolyF2;
use crate::gysin::{delta, GysinDatum};
use serde_json::Value;
use std::fmt;

/// A symmetric matrix of polynomials in t over an exact coefficient field.
///
/// The degeneration calculus targets families whose special fiber (t = 0) is
/// not identically zero; inputs outside that range are accepted (the model
/// summand `[t]` itself has zero special fiber) and diagnosed by
/// [`LocalTriple::mildness`] where it matters.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalTriple {
    field: FieldSpec,
    n: usize,
    entries: Vec<Vec<PolyT>>,
}

/// Whether a family degenerates mildly, with the witnessing ranks.
#[derive(Clone, Debug)]
pub struct Mildness {
    pub n: usize,
    pub generic_rank: usize,
    pub special_rank: usize,
    pub mild: bool,
    pub diagnosis: String,
}

/// Equivalence verdict for reduced triples under congruence and unit
/// scaling. Fully decided over prime fields; over Q a matching invariant
/// pair is only `Undetermined` (deciding needs invariants out of scope).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    Inequivalent,
    Undetermined,
}

/// The special-fiber form of a mildly degenerating triple, reduced modulo
/// its kernel line and diagonalized. The class is defined up to congruence
/// and unit scaling.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedTriple {
    field: FieldSpec,
    diag: Vec<Scalar>,
}

impl LocalTriple {
    pub fn new(field: FieldSpec, entries: Vec<Vec<PolyT>>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::contract(format!(
                    "matrix must be square; row has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::contract(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(LocalTriple { field, n, entries })
    }

    /// The empty (rank 0) triple: the unit for orthogonal sums.
    pub fn empty(field: FieldSpec) -> Self {
        LocalTriple {
            field,
            n: 0,
            entries: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entry(&self, i: usize, j: usize) -> &PolyT {
        &self.entries[i][j]
    }

    /// Parse the triple JSON schema:
    /// `{"field":"Q"|"Fp","p":<odd prime>,"n":int,"entries":[[[coeffs]]]}`
    /// with polynomial coefficient lists, constant term first; rational
    /// coefficients may be written as strings like `"3/4"`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        let field = match value.get("field").and_then(Value::as_str) {
            Some("Q") => FieldSpec::Q,
            Some("Fp") => {
                let p = value
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::schema("p", "Fp requires an odd prime p"))?;
                FieldSpec::fp(p).map_err(|e| Error::schema("p", e.to_string()))?
            }
            other => {
                return Err(Error::schema(
                    "field",
                    format!("expected \"Q\" or \"Fp\", got {other:?}"),
                ))
            }
        };
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::schema("n", "missing dimension"))? as usize;
        let rows = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::schema("entries", "missing entry matrix"))?;
        if rows.len() != n {
            return Err(Error::schema(
                "entries",
                format!("expected {n} rows, got {}", rows.len()),
            ));
        }
        let mut entries = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            let cols = row
                .as_array()
                .ok_or_else(|| Error::schema(format!("entries[{i}]"), "row must be an array"))?;
            if cols.len() != n {
                return Err(Error::schema(
                    format!("entries[{i}]"),
                    format!("expected {n} entries, got {}", cols.len()),
                ));
            }
            let mut out_row = Vec::with_capacity(n);
            for (j, cell) in cols.iter().enumerate() {
                out_row.push(parse_poly_json(&field, cell, &format!("entries[{i}][{j}]"))?);
            }
            entries.push(out_row);
        }
        Self::new(field, entries)
    }

    /// Serialize in the same schema `from_json_str` accepts.
    pub fn to_json_value(&self) -> Value {
        let mut obj = serde_json::Map::new();
        match self.field {
            FieldSpec::Q => {
                obj.insert("field".into(), Value::String("Q".into()));
            }
            FieldSpec::Fp(p) => {
                obj.insert("field".into(), Value::String("Fp".into()));
                obj.insert("p".into(), Value::from(p));
            }
        }
        obj.insert("n".into(), Value::from(self.n as u64));
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|p| {
                            Value::Array(
                                p.coeffs()
                                    .iter()
                                    .map(|c| match c {
                                        Scalar::Fp(v) => Value::from(*v),
                                        Scalar::Rat(_) => Value::String(c.to_string()),
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        obj.insert("entries".into(), Value::Array(entries));
        Value::Object(obj)
    }

    /// (rank over k(t), rank of the special fiber over k).
    pub fn rank_profile(&self) -> (usize, usize) {
        let generic = bareiss(&self.field, self.entries.clone()).0;
        let special = field_rank(&self.field, self.special_fiber());
        (generic, special)
    }

    fn special_fiber(&self) -> Vec<Vec<Scalar>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.at_zero(&self.field)).collect())
            .collect()
    }

    /// Exact determinant of the form.
    pub fn discriminant(&self) -> PolyT {
        if self.n == 0 {
            return PolyT::constant(&self.field, self.field.one());
        }
        let (rank, det) = bareiss(&self.field, self.entries.clone());
        if rank < self.n {
            PolyT::zero()
        } else {
            det
        }
    }

    /// t-adic valuation of the discriminant; errors when the discriminant
    /// vanishes identically (the family is not mildly degenerating).
    pub fn multiplicity(&self) -> Result<usize> {
        let det = self.discriminant();
        det.valuation(&self.field).ok_or_else(|| {
            Error::contract(
                "discriminant vanishes identically: not a mildly degenerating family",
            )
        })
    }

    pub fn mildness(&self) -> Mildness {
        let (generic_rank, special_rank) = self.rank_profile();
        let n = self.n;
        let (mild, diagnosis) = if generic_rank < n {
            (
                false,
                format!("generic rank {generic_rank} < {n}: degenerate off the divisor"),
            )
        } else if special_rank == n {
            (
                false,
                "nondegenerate at t = 0: the family does not degenerate".to_string(),
            )
        } else if special_rank + 1 < n {
            (
                false,
                format!(
                    "special rank {special_rank} = n-{}: not minimally degenerate",
                    n - special_rank
                ),
            )
        } else {
            (
                true,
                "nondegenerate off t = 0, minimally degenerate at t = 0".to_string(),
            )
        };
        Mildness {
            n,
            generic_rank,
            special_rank,
            mild,
            diagnosis,
        }
    }

    pub fn is_mildly_degenerating(&self) -> bool {
        self.mildness().mild
    }

    /// The associated nondegenerate triple of the special fiber: quotient by
    /// the kernel line, diagonalized over k.
    pub fn reduced_triple(&self) -> Result<ReducedTriple> {
        let mildness = self.mildness();
        if !mildness.mild {
            return Err(Error::contract(format!(
                "reduced triple needs a mildly degenerating family: {}",
                mildness.diagnosis
            )));
        }
        let b0 = self.special_fiber();
        let kernel = field_kernel_vector(&self.field, &b0).ok_or_else(|| {
            Error::contract("special fiber is nondegenerate; no kernel line")
        })?;
        // complete to a basis: drop the coordinate of the kernel's leading entry
        let lead = kernel
            .iter()
            .position(|c| !self.field.is_zero(c))
            .expect("kernel vector is nonzero");
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != lead).collect();
        let mut q = vec![vec![self.field.zero(); self.n - 1]; self.n - 1];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                q[a][b] = b0[i][j].clone();
            }
        }
        let diag = diagonalize_symmetric(&self.field, q)?;
        Ok(ReducedTriple {
            field: self.field,
            diag,
        })
    }

    /// Scale the form by a unit of the local ring (u(0) != 0).
    pub fn twist_by_unit(&self, u: &PolyT) -> Result<LocalTriple> {
        if self.field.is_zero(&u.at_zero(&self.field)) {
            return Err(Error::contract(
                "twist requires a unit: u(0) must be nonzero",
            ));
        }
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.mul(u, &self.field)).collect())
            .collect();
        LocalTriple::new(self.field, entries)
    }

    /// Block-diagonal orthogonal sum; discriminants multiply and
    /// multiplicities add.
    pub fn orthogonal_sum(&self, other: &LocalTriple) -> Result<LocalTriple> {
        if self.field != other.field {
            return Err(Error::contract(
                "orthogonal sum requires the same coefficient field",
            ));
        }
        let n = self.n + other.n;
        let mut entries = vec![vec![PolyT::zero(); n]; n];
        for i in 0..self.n {
            for j in 0..self.n {
                entries[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                entries[self.n + i][self.n + j] = other.entries[i][j].clone();
            }
        }
        LocalTriple::new(self.field, entries)
    }

    /// Substitute `t -> u * s^m`; the degeneration multiplicity scales by m.
    pub fn base_change(&self, m: usize, u: &PolyT) -> Result<LocalTriple> {
        if m < 1 {
            return Err(Error::contract("base change exponent must be >= 1"));
        }
        if self.field.is_zero(&u.at_zero(&self.field)) {
            return Err(Error::contract(
                "base change requires a unit: u(0) must be nonzero",
            ));
        }
        let mut sm = PolyT::constant(&self.field, self.field.one());
        let t = PolyT::t(&self.field);
        for _ in 0..m {
            sm = sm.mul(&t, &self.field);
        }
        let g = u.mul(&sm, &self.field);
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.substitute(&g, &self.field))
                    .collect()
            })
            .collect();
        LocalTriple::new(self.field, entries)
    }
}

fn parse_scalar_json(field: &FieldSpec, v: &Value, loc: &str) -> Result<Scalar> {
    match v {
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(field.from_i64(i))
            } else {
                Err(Error::schema(loc, "coefficients must be integers or strings"))
            }
        }
        Value::String(s) => {
            let s = s.trim();
            if let Some((num, den)) = s.split_once('/') {
                let n: i64 = num.trim().parse().map_err(|_| {
                    Error::schema(loc, format!("bad rational numerator `{num}`"))
                })?;
                let d: i64 = den.trim().parse().map_err(|_| {
                    Error::schema(loc, format!("bad rational denominator `{den}`"))
                })?;
                field.from_ratio(n, d).map_err(|e| Error::schema(loc, e.to_string()))
            } else {
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::schema(loc, format!("bad integer `{s}`")))?;
                Ok(field.from_i64(n))
            }
        }
        _ => Err(Error::schema(loc, "coefficient must be a number or string")),
    }
}

fn parse_poly_json(field: &FieldSpec, v: &Value, loc: &str) -> Result<PolyT> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::schema(loc, "polynomial must be a coefficient list"))?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for (k, c) in arr.iter().enumerate() {
        coeffs.push(parse_scalar_json(field, c, &format!("{loc}[{k}]"))?);
    }
    Ok(PolyT::from_coeffs(field, coeffs))
}

/// The standard local model `diag(t) (+) q` for a nondegenerate symmetric
/// matrix q over k: degeneration multiplicity exactly 1, reduced triple
/// equivalent to q.
pub fn model_triple(field: FieldSpec, q: &[Vec<Scalar>]) -> Result<LocalTriple> {
    let m = q.len();
    for row in q {
        if row.len() != m {
            return Err(Error::contract("model input must be square"));
        }
    }
    if field_rank(&field, q.to_vec()) < m {
        return Err(Error::contract("model input form must be nondegenerate"));
    }
    let n = m + 1;
    let mut entries = vec![vec![PolyT::zero(); n]; n];
    entries[0][0] = PolyT::t(&field);
    for i in 0..m {
        for j in 0..m {
            entries[i + 1][j + 1] = PolyT::constant(&field, q[i][j].clone());
        }
    }
    LocalTriple::new(field, entries)
}

/// Fraction-free Bareiss elimination with full pivoting.
/// Returns (rank, determinant); the determinant entry is only meaningful
/// for square full-rank input and is exact including sign.
fn bareiss(field: &FieldSpec, mut m: Vec<Vec<PolyT>>) -> (usize, PolyT) {
    let rows = m.len();
    if rows == 0 {
        return (0, PolyT::constant(field, field.one()));
    }
    let cols = m[0].len();
    let mut prev = PolyT::constant(field, field.one());
    let mut sign_flip = false;
    let steps = rows.min(cols);
    for k in 0..steps {
        // first nonzero entry in the remaining block, scanning columns then rows
        let mut pivot = None;
        'search: for c in k..cols {
            for r in k..rows {
                if !m[r][c].is_zero() {
                    pivot = Some((r, c));
                    break 'search;
                }
            }
        }
        let Some((pr, pc)) = pivot else {
            return (k, PolyT::zero());
        };
        if pr != k {
            m.swap(pr, k);
            sign_flip = !sign_flip;
        }
        if pc != k {
            for row in m.iter_mut() {
                row.swap(pc, k);
            }
            sign_flip = !sign_flip;
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let high = m[k][k].mul(&m[i][j], field);
                let low = m[i][k].mul(&m[k][j], field);
                let num = high.sub(&low, field);
                m[i][j] = num
                    .divexact(&prev, field)
                    .expect("Bareiss division is exact over an integral domain");
            }
            m[i][k] = PolyT::zero();
        }
        prev = m[k][k].clone();
    }
    let mut det = m[steps - 1][steps - 1].clone();
    if sign_flip {
        det = det.scale(&field.neg(&field.one()), field);
    }
    (steps, det)
}

/// Rank of a scalar matrix by Gaussian elimination over the field.
fn field_rank(field: &FieldSpec, mut m: Vec<Vec<Scalar>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !field.is_zero(&m[r][c])) else {
            continue;
        };
        m.swap(p, rank);
        let inv = field.inv(&m[rank][c]).unwrap();
        for j in 0..cols {
            m[rank][j] = field.mul(&m[rank][j], &inv);
        }
        for r in 0..rows {
            if r != rank && !field.is_zero(&m[r][c]) {
                let factor = m[r][c].clone();
                for j in 0..cols {
                    let sub = field.mul(&factor, &m[rank][j]);
                    m[r][j] = field.sub(&m[r][j], &sub);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// One kernel vector of a scalar matrix (deterministic: first free column of
/// the reduced echelon form); `None` when the matrix is invertible.
fn field_kernel_vector(field: &FieldSpec, m: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    let rows = m.len();
    let cols = if rows == 0 { return None } else { m[0].len() };
    let mut work: Vec<Vec<Scalar>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !field.is_zero(&work[r][c])) else {
            continue;
        };
        work.swap(p, rank);
        let inv = field.inv(&work[rank][c]).unwrap();
        for j in 0..cols {
            work[rank][j] = field.mul(&work[rank][j], &inv);
        }
        for r in 0..rows {
            if r != rank && !field.is_zero(&work[r][c]) {
                let factor = work[r][c].clone();
                for j in 0..cols {
                    let sub = field.mul(&factor, &work[rank][j]);
                    work[r][j] = field.sub(&work[r][j], &sub);
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![field.zero(); cols];
    v[free] = field.one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = field.neg(&work[row][free]);
    }
    Some(v)
}

/// Diagonalize a symmetric matrix over k (char != 2) by the classical
/// congruence sweep; zero-diagonal pivots are repaired by adding a row and
/// column. Deterministic pivot order.
fn diagonalize_symmetric(field: &FieldSpec, mut q: Vec<Vec<Scalar>>) -> Result<Vec<Scalar>> {
    let n = q.len();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if field.is_zero(&q[k][k]) {
            // prefer a later basis vector with nonzero norm
            if let Some(j) = (k + 1..n).find(|&j| !field.is_zero(&q[j][j])) {
                q.swap(k, j);
                for row in q.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !field.is_zero(&q[k][j])) {
                // v_k <- v_k + v_j makes the norm 2*q[k][j] != 0 (char != 2)
                for c in 0..n {
                    let add = q[j][c].clone();
                    q[k][c] = field.add(&q[k][c], &add);
                }
                for r in 0..n {
                    let add = q[r][j].clone();
                    q[r][k] = field.add(&q[r][k], &add);
                }
            } else {
                return Err(Error::contract(
                    "form is degenerate; cannot diagonalize a singular block",
                ));
            }
        }
        let pivot = q[k][k].clone();
        let pivot_inv = field.inv(&pivot)?;
        for r in k + 1..n {
            if field.is_zero(&q[r][k]) {
                continue;
            }
            let factor = field.mul(&q[r][k], &pivot_inv);
            // row r -= factor * row k, then the same on columns
            for c in 0..n {
                let sub = field.mul(&factor, &q[k][c]);
                q[r][c] = field.sub(&q[r][c], &sub);
            }
            for c in 0..n {
                let sub = field.mul(&factor, &q[c][k]);
                q[c][r] = field.sub(&q[c][r], &sub);
            }
        }
        diag.push(q[k][k].clone());
    }
    Ok(diag)
}

impl ReducedTriple {
    pub fn from_diagonal(field: FieldSpec, diag: Vec<Scalar>) -> Result<Self> {
        if diag.iter().any(|d| field.is_zero(d)) {
            return Err(Error::contract("reduced triple must be nondegenerate"));
        }
        Ok(ReducedTriple { field, diag })
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn diagonal(&self) -> &[Scalar] {
        &self.diag
    }

    pub fn discriminant(&self) -> Scalar {
        let mut acc = self.field.one();
        for d in &self.diag {
            acc = self.field.mul(&acc, d);
        }
        acc
    }

    /// Square class of the discriminant as an invariant string, adjusted for
    /// nothing (raw value class).
    pub fn square_class(&self) -> String {
        self.field.square_class(&self.discriminant())
    }

    /// Equivalence up to congruence and unit scaling.
    ///
    /// Over F_p: rank plus (for even rank) the square class of the
    /// discriminant decide completely — scaling by u multiplies the
    /// discriminant by u^rank, which for odd rank reaches both classes.
    /// Over Q the same invariants refute; agreement stays `Undetermined`.
    pub fn equivalent_to(&self, other: &ReducedTriple) -> Equivalence {
        if self.field != other.field {
            return Equivalence::Inequivalent;
        }
        if self.rank() != other.rank() {
            return Equivalence::Inequivalent;
        }
        let m = self.rank();
        match self.field {
            FieldSpec::Fp(_) => {
                if m % 2 == 1 {
                    Equivalence::Equivalent
                } else {
                    let a = self.field.is_square(&self.discriminant());
                    let b = self.field.is_square(&other.discriminant());
                    if a == b {
                        Equivalence::Equivalent
                    } else {
                        Equivalence::Inequivalent
                    }
                }
            }
            FieldSpec::Q => {
                if m % 2 == 0 {
                    let a = self.field.is_square(&self.discriminant());
                    let b = self.field.is_square(&other.discriminant());
                    match (a, b) {
                        (Some(x), Some(y)) if x != y => return Equivalence::Inequivalent,
                        _ => {}
                    }
                    let sa = self.square_class();
                    let sb = other.square_class();
                    if !sa.contains("unknown") && !sb.contains("unknown") && sa != sb {
                        return Equivalence::Inequivalent;
                    }
                }
                Equivalence::Undetermined
            }
        }
    }
}

impl fmt::Display for ReducedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.diag.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "rank {}, diag = [{}], disc = {} (square class: {})",
            self.rank(),
            entries.join(", "),
            self.discriminant(),
            self.square_class()
        )
    }
}

/// The symbolic right-hand side of the degeneration boundary formula for one
/// concrete family.
#[derive(Clone, Debug)]
pub struct DegenerationBoundary {
    pub multiplicity: usize,
    /// `multiplicity mod 2`: with F2 coefficients the multiplicity acts
    /// through its parity.
    pub parity: u8,
    /// `delta(alpha)` in the rank n-1 ring.
    pub delta_class: PolyF2,
    /// The evaluated boundary: `delta(alpha)` for odd multiplicity, zero for
    /// even.
    pub boundary_class: PolyF2,
    /// The associated nondegenerate triple at which any downstream consumer
    /// evaluates the class.
    pub reduced: ReducedTriple,
}

/// Evaluate the boundary formula `parity(nu) * delta(alpha)` on a mildly
/// degenerating family. `target` is the Gysin datum of the rank n-1 pair.
pub fn degeneration_boundary(
    alpha: &PolyF2,
    triple: &LocalTriple,
    target: &GysinDatum,
) -> Result<DegenerationBoundary> {
    let mildness = triple.mildness();
    if !mildness.mild {
        return Err(Error::contract(format!(
            "boundary formula needs a mildly degenerating family: {}",
            mildness.diagnosis
        )));
    }
    let multiplicity = triple.multiplicity()?;
    let delta_class = delta(triple.n(), alpha, target)?;
    let parity = (multiplicity % 2) as u8;
    let boundary_class = if parity == 1 {
        delta_class.clone()
    } else {
        PolyF2::zero()
    };
    Ok(DegenerationBoundary {
        multiplicity,
        parity,
        delta_class,
        boundary_class,
        reduced: triple.reduced_triple()?,
    })
}
