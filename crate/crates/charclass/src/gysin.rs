//! Gysin data and the degeneration map.
//!
//! A [`GysinDatum`] packages one codimension-1 pair: the ring `A` of the
//! ambient stack, the degree-2 Euler class of the line bundle realizing the
//! pair, the ring `B` of the complement, the restriction `A -> B`, and a
//! partial boundary table `B -> A` of degree -1. The boundary map is extended
//! from the table by the projection formula `d(res(y) * x) = y * d(x)`:
//! a class of `B` is decomposed over the spanning set `{res(y) * t}` with `t`
//! ranging over table monomials, degreewise by linear algebra. Values the
//! table does not reach are reported as underdetermined, never silently zero.
//!
//! `check_exactness` verifies the long exact sequence
//! `... -> A^{i-2} -(cup e)-> A^i -(res)-> B^i -(d)-> A^{i-1} -> ...`
//! node by node; it is the acceptance oracle for every shipped presentation
//! file.
//!
//! `delta` is the composite `d_{n-1} . B(v)*` on primitive classes: the
//! universal degeneration boundary from rank n to rank n-1.

use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vec};
use crate::gralg::{
    tensor, AlgebraMorphism, GradedAlgebraPresentation, Monomial, PolyF2, DEFAULT_CAP,
};
use crate::primitive::builtin_mu_odd;
use crate::rings::{bgm_capped, bgo_odd_capped, bo_capped, TWIST_GEN};
use std::collections::BTreeMap;
use std::fmt;

/// Data of one Gysin pair.
#[derive(Clone)]
pub struct GysinDatum {
    ring: GradedAlgebraPresentation,
    euler: PolyF2,
    complement: GradedAlgebraPresentation,
    res: AlgebraMorphism,
    d_table: Vec<(Monomial, PolyF2)>,
}

/// Outcome of a boundary evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryResult {
    Determined(PolyF2),
    /// The table plus the projection formula do not reach these monomials.
    Underdetermined { monomials: Vec<Monomial> },
}

impl BoundaryResult {
    pub fn determined(self) -> Result<PolyF2> {
        match self {
            BoundaryResult::Determined(p) => Ok(p),
            BoundaryResult::Underdetermined { monomials } => Err(Error::Underdetermined(
                monomials.iter().map(|m| m.to_string()).collect(),
            )),
        }
    }
}

/// Where in the sequence an exactness failure sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactNode {
    /// At `A^i`: image of cup-with-Euler vs kernel of restriction.
    Ring,
    /// At `B^i`: image of restriction vs kernel of the boundary.
    Complement,
    /// At `A^{i-1}`: image of the boundary vs kernel of cup-with-Euler.
    RingBelow,
}

impl fmt::Display for ExactNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactNode::Ring => write!(f, "ring"),
            ExactNode::Complement => write!(f, "complement"),
            ExactNode::RingBelow => write!(f, "ring (one below)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExactnessFailure {
    pub degree: usize,
    pub node: ExactNode,
    /// A witness class in the kernel that is not hit, or whose image fails
    /// to die, rendered in the presentation that hosts it.
    pub witness: String,
    pub detail: String,
}

impl fmt::Display for ExactnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "exactness fails at degree {} ({} node): {} [witness {}]",
            self.degree, self.node, self.detail, self.witness
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExactnessReport {
    pub failures: Vec<ExactnessFailure>,
    pub checked_to: usize,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Spanning data for one degree of the complement: columns `res(y) * t`
/// with their boundary values `y * d(t)`.
struct DegreeSpan {
    matrix: F2Matrix,
    values: Vec<PolyF2>,
}

impl GysinDatum {
    pub fn new(
        ring: GradedAlgebraPresentation,
        euler: PolyF2,
        complement: GradedAlgebraPresentation,
        res: AlgebraMorphism,
        d_table: Vec<(Monomial, PolyF2)>,
    ) -> Result<Self> {
        match ring.degree_of(&euler)? {
            None | Some(2) => {}
            Some(d) => {
                return Err(Error::contract(format!(
                    "Euler class must be homogeneous of degree 2, got degree {d}"
                )));
            }
        }
        if res.source() != &ring || res.target() != &complement {
            return Err(Error::contract(
                "restriction morphism does not connect the given rings",
            ));
        }
        for (mono, value) in &d_table {
            let kdeg = complement.monomial_degree(mono)?;
            if kdeg == 0 {
                return Err(Error::contract(
                    "boundary table keys must have positive degree (d(1) = 0 is built in)",
                ));
            }
            if let Some(vdeg) = ring.degree_of(value)? {
                if vdeg != kdeg - 1 {
                    return Err(Error::contract(format!(
                        "boundary of {mono} must drop degree by 1 (got {vdeg}, key degree {kdeg})"
                    )));
                }
            }
        }
        Ok(GysinDatum {
            ring,
            euler,
            complement,
            res,
            d_table,
        })
    }

    pub fn ring(&self) -> &GradedAlgebraPresentation {
        &self.ring
    }

    pub fn complement(&self) -> &GradedAlgebraPresentation {
        &self.complement
    }

    pub fn euler(&self) -> &PolyF2 {
        &self.euler
    }

    pub fn res(&self) -> &AlgebraMorphism {
        &self.res
    }

    pub fn d_table(&self) -> &[(Monomial, PolyF2)] {
        &self.d_table
    }

    fn span_for_degree(&self, degree: usize) -> Result<DegreeSpan> {
        let bslice = self.complement.slice(degree)?;
        let mut columns: Vec<F2Vec> = Vec::new();
        let mut values: Vec<PolyF2> = Vec::new();
        // the implicit table entry (1, 0): columns res(y)
        let mut entries: Vec<(PolyF2, PolyF2)> = vec![(PolyF2::one(), PolyF2::zero())];
        entries.extend(self.d_table.iter().map(|(m, v)| {
            (PolyF2::from_monomial(m.clone()), v.clone())
        }));
        for (t, value) in entries {
            let tdeg = self
                .complement
                .degree_of(&t)?
                .expect("table monomials are nonzero");
            if tdeg > degree {
                continue;
            }
            for y in self.ring.basis(degree - tdeg)? {
                let y_poly = PolyF2::from_monomial(y);
                let res_y = self.res.apply(&y_poly)?;
                let span_elt = self.complement.multiply(&res_y, &t)?;
                columns.push(bslice.vectorize(&span_elt)?);
                values.push(self.ring.multiply(&y_poly, &value)?);
            }
        }
        let mut matrix = F2Matrix::zeros(bslice.monomial_count(), columns.len());
        for (j, col) in columns.iter().enumerate() {
            for i in col.iter_ones() {
                matrix.set(i, j, true);
            }
        }
        Ok(DegreeSpan { matrix, values })
    }

    /// Boundary of a homogeneous class of the complement, via the table and
    /// the projection formula. Linear in the input.
    pub fn gysin_d(&self, x: &PolyF2) -> Result<BoundaryResult> {
        let Some(degree) = self.complement.degree_of(x)? else {
            return Ok(BoundaryResult::Determined(PolyF2::zero()));
        };
        let nf = self.complement.normal_form(x)?;
        if nf.is_zero() {
            return Ok(BoundaryResult::Determined(PolyF2::zero()));
        }
        let bslice = self.complement.slice(degree)?;
        let span = self.span_for_degree(degree)?;
        let target = bslice.vectorize(&nf)?;
        match span.matrix.solve(&target)? {
            Some(coeffs) => {
                let mut out = PolyF2::zero();
                for j in coeffs.iter_ones() {
                    out = out.add(&span.values[j]);
                }
                Ok(BoundaryResult::Determined(self.ring.normal_form(&out)?))
            }
            None => {
                // residual after reducing against the span: the unresolved part
                let span_rows = span.matrix.transpose().rref();
                let mut residual = target;
                span_rows.reduce(&mut residual);
                let monomials = bslice.devectorize(&residual);
                Ok(BoundaryResult::Underdetermined {
                    monomials: monomials.monomials().cloned().collect(),
                })
            }
        }
    }

    /// Matrix of the boundary on quotient bases, `B^degree -> A^{degree-1}`.
    /// Errors if any basis monomial is underdetermined.
    fn boundary_matrix(&self, degree: usize) -> Result<F2Matrix> {
        let bslice = self.complement.slice(degree)?;
        let below = self.ring.slice(degree.saturating_sub(1))?;
        let basis = bslice.basis();
        let rows = if degree == 0 { 0 } else { below.dim() };
        let mut m = F2Matrix::zeros(rows, basis.len());
        let mut unresolved = Vec::new();
        for (j, mono) in basis.iter().enumerate() {
            match self.gysin_d(&PolyF2::from_monomial(mono.clone()))? {
                BoundaryResult::Determined(value) => {
                    if degree > 0 {
                        for i in below.basis_coords(&value)?.iter_ones() {
                            m.set(i, j, true);
                        }
                    }
                }
                BoundaryResult::Underdetermined { monomials } => {
                    unresolved.extend(monomials.iter().map(|m| m.to_string()));
                }
            }
        }
        if !unresolved.is_empty() {
            unresolved.sort();
            unresolved.dedup();
            return Err(Error::Underdetermined(unresolved));
        }
        Ok(m)
    }

    /// Matrix of cup product with the Euler class, `A^from -> A^{from+2}`.
    fn cup_matrix(&self, from: usize) -> Result<F2Matrix> {
        let src = self.ring.slice(from)?;
        let dst = self.ring.slice(from + 2)?;
        let basis = src.basis();
        let mut m = F2Matrix::zeros(dst.dim(), basis.len());
        for (j, mono) in basis.iter().enumerate() {
            let prod = self
                .ring
                .multiply(&PolyF2::from_monomial(mono.clone()), &self.euler)?;
            for i in dst.basis_coords(&prod)?.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Verify `ker = image` at every node of the long exact sequence up to
    /// `cap`. The ring presentation must carry `cap + 2` headroom so the
    /// cup-with-Euler maps out of the top degrees stay computable.
    pub fn check_exactness(&self, cap: usize) -> Result<ExactnessReport> {
        if cap + 2 > self.ring.degree_cap() {
            return Err(Error::contract(format!(
                "exactness to degree {cap} needs ring cap >= {}, have {}",
                cap + 2,
                self.ring.degree_cap()
            )));
        }
        if cap > self.complement.degree_cap() {
            return Err(Error::CapExceeded {
                degree: cap,
                cap: self.complement.degree_cap(),
            });
        }
        let mut failures = Vec::new();
        for i in 0..=cap {
            let res_m = self.res.matrix(i)?;
            let d_m = self.boundary_matrix(i)?;

            // node A^i: im(cup e: A^{i-2} -> A^i) vs ker(res)
            let cup_in = if i >= 2 {
                self.cup_matrix(i - 2)?
            } else {
                F2Matrix::zeros(self.ring.dim(i)?, 0)
            };
            self.compare_subspaces(
                &cup_in,
                &res_m,
                i,
                ExactNode::Ring,
                &self.ring,
                i,
                &mut failures,
            )?;

            // node B^i: im(res) vs ker(d)
            self.compare_subspaces(
                &res_m,
                &d_m,
                i,
                ExactNode::Complement,
                &self.complement,
                i,
                &mut failures,
            )?;

            // node A^{i-1}: im(d) vs ker(cup e: A^{i-1} -> A^{i+1})
            if i >= 1 {
                let cup_out = self.cup_matrix(i - 1)?;
                self.compare_subspaces(
                    &d_m,
                    &cup_out,
                    i,
                    ExactNode::RingBelow,
                    &self.ring,
                    i - 1,
                    &mut failures,
                )?;
            }
        }
        Ok(ExactnessReport {
            failures,
            checked_to: cap,
        })
    }

    /// Check `im(into) = ker(out_of)` where both matrices act on the same
    /// middle space; `space`/`space_degree` render witnesses.
    #[allow(clippy::too_many_arguments)]
    fn compare_subspaces(
        &self,
        into: &F2Matrix,
        out_of: &F2Matrix,
        degree: usize,
        node: ExactNode,
        space: &GradedAlgebraPresentation,
        space_degree: usize,
        failures: &mut Vec<ExactnessFailure>,
    ) -> Result<()> {
        let slice = space.slice(space_degree)?;
        let composite = out_of.mul(into)?;
        if !composite.is_zero() {
            for j in 0..into.cols() {
                let col = column(into, j);
                let img = out_of.mul_vec(&col)?;
                if !img.is_zero() {
                    let witness = slice.from_basis_coords(&col);
                    failures.push(ExactnessFailure {
                        degree,
                        node,
                        witness: space.poly_string(&witness),
                        detail: "composite of consecutive maps is nonzero".to_string(),
                    });
                    break;
                }
            }
            return Ok(());
        }
        let rank_into = into.rank();
        let ker_dim = out_of.cols() - out_of.rank();
        if rank_into != ker_dim {
            // find a kernel vector not in the image
            let image_rows = into.transpose().rref();
            let witness = out_of
                .kernel_basis()
                .into_iter()
                .find(|v| !image_rows.contains(v));
            let witness_str = witness
                .map(|v| space.poly_string(&slice.from_basis_coords(&v)))
                .unwrap_or_else(|| "<none>".to_string());
            failures.push(ExactnessFailure {
                degree,
                node,
                witness: witness_str,
                detail: format!("image has dimension {rank_into}, kernel has dimension {ker_dim}"),
            });
        }
        Ok(())
    }
}

fn column(m: &F2Matrix, j: usize) -> F2Vec {
    let mut v = F2Vec::zeros(m.rows());
    for i in 0..m.rows() {
        if m.get(i, j) {
            v.set(i, true);
        }
    }
    v
}

/// Total Stiefel-Whitney classes of `(L_1 + ... + L_m) (x) D` from the
/// classes of the sum and the class `t` of the twisting line: the splitting
/// principle gives
/// `w'_k = sum_j binom(m - j, k - j) w_j t^{k-j}` mod 2.
///
/// `classes` lists `w_1 .. w_m` (entries may be zero); `t` is homogeneous of
/// degree 1 or 2, and each nonzero `w_j` must have degree `j * deg(t)`.
pub fn tensor_by_line(
    ambient: &GradedAlgebraPresentation,
    classes: &[PolyF2],
    t: &PolyF2,
) -> Result<Vec<PolyF2>> {
    let m = classes.len();
    let Some(tdeg) = ambient.degree_of(t)? else {
        // t = 0: twisting by a trivialized line changes nothing
        return classes
            .iter()
            .map(|w| ambient.normal_form(w))
            .collect();
    };
    if tdeg != 1 && tdeg != 2 {
        return Err(Error::contract(format!(
            "twisting class must have degree 1 or 2, got {tdeg}"
        )));
    }
    for (j, w) in classes.iter().enumerate() {
        if let Some(d) = ambient.degree_of(w)? {
            if d != (j + 1) * tdeg {
                return Err(Error::contract(format!(
                    "class w_{} must have degree {}, got {d}",
                    j + 1,
                    (j + 1) * tdeg
                )));
            }
        }
    }
    let mut t_powers = vec![PolyF2::one()];
    for k in 1..=m {
        let prev = &t_powers[k - 1];
        t_powers.push(ambient.multiply(prev, t)?);
    }
    let mut out = Vec::with_capacity(m);
    for k in 1..=m {
        let mut acc = PolyF2::zero();
        for j in 0..=k {
            if !binom_mod2(m - j, k - j) {
                continue;
            }
            let w_j = if j == 0 {
                PolyF2::one()
            } else {
                classes[j - 1].clone()
            };
            if w_j.is_zero() {
                continue;
            }
            let term = ambient.multiply(&w_j, &t_powers[k - j])?;
            acc = acc.add(&term);
        }
        out.push(ambient.normal_form(&acc)?);
    }
    Ok(out)
}

/// `binom(n, k)` mod 2 via Lucas: odd iff `k AND (n - k)` has no carries.
fn binom_mod2(n: usize, k: usize) -> bool {
    k <= n && (k & (n - k)) == 0
}

/// The restriction `H*(BGO_n) -> H*(BO_{n-1})` induced by embedding the
/// orthogonal group one rank down (fix the first coordinate). Built in for
/// odd n: the BGm class restricts to the square of the determinant class and
/// the special orthogonal bundle becomes `(1 + F) (x) det(F)`.
pub fn bv_star(n: usize) -> Result<AlgebraMorphism> {
    bv_star_capped(n, DEFAULT_CAP)
}

pub fn bv_star_capped(n: usize, cap: usize) -> Result<AlgebraMorphism> {
    if n < 3 {
        return Err(Error::contract(format!(
            "restriction to rank n-1 needs n >= 3, got {n}"
        )));
    }
    if n % 2 == 0 {
        return Err(Error::DataRequired(format!(
            "restriction images from even rank {n} are external data; \
             no shipped schema carries them"
        )));
    }
    let source = bgo_odd_capped(n, cap)?;
    let target = bo_capped(n - 1, cap)?;
    let images = twisted_images(&target, n, n - 1)?;
    AlgebraMorphism::new(source, target, images)
}

/// The restriction `H*(BGO_n) -> H*(BO_n)` of the same pair (odd n):
/// same twist formulas with the full-rank bundle.
pub fn odd_restriction_capped(n: usize, cap: usize) -> Result<AlgebraMorphism> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::contract(format!(
            "built-in restriction requires odd n >= 3, got {n}"
        )));
    }
    let source = bgo_odd_capped(n, cap)?;
    let target = bo_capped(n, cap)?;
    let images = twisted_images(&target, n, n)?;
    AlgebraMorphism::new(source, target, images)
}

/// Images of `c, w_2..w_n` in `H*(BO_m)`: the orthogonal bundle is
/// `(1^(n-m) + F) (x) det(F)` with `w_1(det F) = w1`, so `c -> w1^2` and the
/// `w_i` twist by `tensor_by_line` with m = n line factors.
fn twisted_images(
    target: &GradedAlgebraPresentation,
    n: usize,
    bundle_rank: usize,
) -> Result<BTreeMap<String, PolyF2>> {
    let classes: Vec<PolyF2> = (1..=n)
        .map(|j| {
            if j <= bundle_rank {
                PolyF2::generator(&format!("w{j}"))
            } else {
                PolyF2::zero()
            }
        })
        .collect();
    let t = PolyF2::generator("w1");
    let twisted = tensor_by_line(target, &classes, &t)?;
    debug_assert!(twisted[0].is_zero(), "w'_1 of a special orthogonal bundle");
    let mut images = BTreeMap::new();
    images.insert(
        "c".to_string(),
        PolyF2::from_monomial(Monomial::power("w1", 2)),
    );
    for i in 2..=n {
        images.insert(format!("w{i}"), twisted[i - 1].clone());
    }
    Ok(images)
}

/// The Gysin datum of the odd pair `(L_n, BGO_n)` with complement `BO_n`.
///
/// For odd n the Euler class vanishes (the multiplier character is a
/// square), which forces `d(1) = 0` and `d(w1) = 1`; together with the
/// projection formula this determines the whole boundary. The datum is
/// accepted through the exactness verifier like any file-driven datum.
pub fn odd_pair_datum(n: usize) -> Result<GysinDatum> {
    odd_pair_datum_capped(n, DEFAULT_CAP)
}

pub fn odd_pair_datum_capped(n: usize, cap: usize) -> Result<GysinDatum> {
    let pres_cap = cap + 2;
    let ring = bgo_odd_capped(n, pres_cap)?;
    let complement = bo_capped(n, pres_cap)?;
    let images = twisted_images(&complement, n, n)?;
    let res = AlgebraMorphism::new(ring.clone(), complement.clone(), images)?;
    GysinDatum::new(
        ring,
        PolyF2::zero(),
        complement,
        res,
        vec![(Monomial::generator("w1"), PolyF2::one())],
    )
}

/// The degeneration map `delta = d_{n-1} . B(v)*` from primitive classes of
/// rank n to classes of rank n-1.
///
/// `target` is the Gysin datum of the rank n-1 pair (loaded from a
/// presentation file when n-1 is even, or [`odd_pair_datum`] when odd).
pub fn delta(n: usize, alpha: &PolyF2, target: &GysinDatum) -> Result<PolyF2> {
    let bv = bv_star_capped(n, target.complement().degree_cap())?;
    let twist = builtin_mu_odd(n)?;
    if !twist.is_primitive(alpha)? {
        let residue = twist.residue(alpha)?;
        return Err(Error::contract(format!(
            "alpha is not primitive; mu*(alpha) - alpha (x) 1 = {}",
            twist.mu().target().poly_string(&residue)
        )));
    }
    // the target pair's complement must be BO(n-1)
    let expected: Vec<(String, usize)> = (1..=n - 1).map(|i| (format!("w{i}"), i)).collect();
    let got: Vec<(String, usize)> = target
        .complement()
        .generators()
        .iter()
        .map(|g| (g.name.clone(), g.degree))
        .collect();
    if got != expected {
        return Err(Error::contract(format!(
            "target datum complement is not H*(BO_{}) (generators {:?})",
            n - 1,
            got
        )));
    }
    let x = bv.apply(alpha)?;
    target.gysin_d(&x)?.determined()
}

/// Report of the primitivity-commutation check.
#[derive(Clone, Debug, Default)]
pub struct CommutationReport {
    pub checked: usize,
    pub failures: Vec<(usize, String)>,
}

impl CommutationReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every primitive basis element alpha of degree <= cap, verify
/// `(B(v)* (x) id)(mu*(alpha)) = B(v)*(alpha) (x) 1` — the assertable form of
/// the statement that on primitives the full twisted restriction factors
/// through the projection. This is the in-repo arbiter for the derived
/// twist-coproduct and restriction images.
pub fn bv_commutation_check(n: usize, cap: usize) -> Result<CommutationReport> {
    let twist = builtin_mu_odd(n)?;
    let bv = bv_star_capped(n, cap)?;
    // extend B(v)* over the twist factor: tensor(A, cK) -> tensor(BO(n-1), cK)
    let ext_target = tensor(&bo_capped(n - 1, cap)?, &bgm_capped(TWIST_GEN, cap)?)?;
    let mut images: BTreeMap<String, PolyF2> = bv.images().clone();
    images.insert(TWIST_GEN.to_string(), PolyF2::generator(TWIST_GEN));
    let ext = AlgebraMorphism::new(twist.mu().target().clone(), ext_target.clone(), images)?;

    let mut report = CommutationReport::default();
    for degree in 0..=cap {
        for alpha in twist.primitive_basis(degree)? {
            let lhs = ext.apply(&twist.mu().apply(&alpha)?)?;
            let rhs = ext_target.normal_form(&bv.apply(&alpha)?)?;
            report.checked += 1;
            if lhs != rhs {
                report
                    .failures
                    .push((degree, twist.ring().poly_string(&alpha)));
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Presentation completion search (developer tool)
// ---------------------------------------------------------------------------

/// Search for a homogeneous relation set on the given even-rank generators
/// that makes the Gysin sequence against `H*(BO_n)` exact.
///
/// The quotient dimensions are forced degreewise by the exactness count
/// `dim A^d = r_d + r_{d-1} + dim A^{d-2} - dim B^{d-1}` where `r_d` is the
/// rank of the restriction on degree-d monomials (computable from the
/// generator images alone). New relations are drawn from the kernel of the
/// restriction modulo the ideal built so far. This is a bounded heuristic
/// for producing candidate files; its output is only accepted through
/// [`GysinDatum::check_exactness`].
pub fn complete_even_relations(
    generators: &[crate::gralg::Generator],
    res_images: &BTreeMap<String, PolyF2>,
    n: usize,
    cap: usize,
) -> Result<Vec<PolyF2>> {
    let pres_cap = cap + 2;
    let bo_n = bo_capped(n, pres_cap)?;
    let free = GradedAlgebraPresentation::free(generators.to_vec(), pres_cap)?;
    let free_res = AlgebraMorphism::define(free.clone(), bo_n.clone(), res_images.clone())?;

    // forced dimensions
    let mut r = vec![0usize; cap + 1];
    for (d, slot) in r.iter_mut().enumerate() {
        *slot = free_res.matrix(d)?.rank();
    }
    let b_dims = bo_n.poincare_series(cap)?;
    let mut a_dims = vec![0usize; cap + 1];
    a_dims[0] = 1;
    if cap >= 1 {
        a_dims[1] = r[1];
    }
    for d in 2..=cap {
        let forced = r[d] as isize + r[d - 1] as isize + a_dims[d - 2] as isize
            - b_dims[d - 1] as isize;
        if forced < 0 {
            return Err(Error::contract(format!(
                "restriction data is inconsistent at degree {d}"
            )));
        }
        a_dims[d] = forced as usize;
    }

    let mut relations: Vec<PolyF2> = Vec::new();
    for d in 1..=cap {
        let current = GradedAlgebraPresentation::new(
            generators.to_vec(),
            relations.clone(),
            pres_cap,
        )?;
        let have = current.dim(d)?;
        let want = a_dims[d];
        if have < want {
            return Err(Error::contract(format!(
                "over-quotiented at degree {d}: have {have}, need {want}"
            )));
        }
        let need = have - want;
        if need == 0 {
            continue;
        }
        // candidates: kernel of res on the current quotient basis
        let cur_res = AlgebraMorphism::define(current.clone(), bo_n.clone(), res_images.clone())?;
        let kernel = cur_res.matrix(d)?.kernel_basis();
        if kernel.len() < need {
            return Err(Error::contract(format!(
                "no admissible relations at degree {d}: need {need}, kernel of the \
                 restriction has dimension {}",
                kernel.len()
            )));
        }
        if kernel.len() != need {
            return Err(Error::contract(format!(
                "ambiguous completion at degree {d}: need {need} of {} kernel \
                 directions; refusing to guess",
                kernel.len()
            )));
        }
        let slice = current.slice(d)?;
        for v in kernel {
            relations.push(slice.from_basis_coords(&v));
        }
    }
    Ok(relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gralg::Generator;
    use crate::rings::{even_datum_from_json, verify_even_datum};

    fn n2_datum() -> crate::rings::EvenGODatum {
        even_datum_from_json(
            r#"{
                "family": "BGO_even", "n": 2,
                "generators": [
                    {"name": "lambda", "degree": 2},
                    {"name": "a1", "degree": 1},
                    {"name": "b4", "degree": 4}
                ],
                "relations": ["a1*lambda"],
                "res": {"lambda": "0", "a1": "w1", "b4": "w2^2"},
                "mu": {"lambda": "lambda", "a1": "a1",
                       "b4": "b4 + a1^2*cK + lambda*cK + cK^2"},
                "d_table": {"w2": "a1"},
                "provenance": "test fixture"
            }"#,
            12,
        )
        .unwrap()
    }

    #[test]
    fn tensor_by_line_zero_twist_is_identity() {
        let ambient = bo_capped(3, 12).unwrap();
        let classes: Vec<PolyF2> = (1..=3).map(|i| PolyF2::generator(&format!("w{i}"))).collect();
        let out = tensor_by_line(&ambient, &classes, &PolyF2::zero()).unwrap();
        assert_eq!(out, classes);
    }

    #[test]
    fn tensor_by_line_single_line() {
        let ambient = GradedAlgebraPresentation::free(
            vec![Generator::new("w1", 1), Generator::new("t", 1)],
            8,
        )
        .unwrap();
        let out = tensor_by_line(
            &ambient,
            &[PolyF2::generator("w1")],
            &PolyF2::generator("t"),
        )
        .unwrap();
        assert_eq!(out, vec![ambient.parse_poly("w1 + t").unwrap()]);
    }

    #[test]
    fn tensor_by_line_matches_splitting_principle() {
        // Oracle: in F2[x1..x3, t], elementary symmetric functions of the
        // shifted roots x_i + t must match the twist formula applied to the
        // elementary symmetric functions of the x_i.
        let m = 3;
        let mut gens: Vec<Generator> = (1..=m)
            .map(|i| Generator::new(format!("x{i}"), 1))
            .collect();
        gens.push(Generator::new("t", 1));
        let ambient = GradedAlgebraPresentation::free(gens, 12).unwrap();
        let t = PolyF2::generator("t");

        // e_k(x)
        let elementary = |shift: bool| -> Vec<PolyF2> {
            let mut es = Vec::new();
            for k in 1..=m {
                let mut acc = PolyF2::zero();
                for mask in 0u32..(1 << m) {
                    if mask.count_ones() as usize != k {
                        continue;
                    }
                    let mut term = PolyF2::one();
                    for i in 1..=m {
                        if mask >> (i - 1) & 1 == 1 {
                            let factor = if shift {
                                PolyF2::generator(&format!("x{i}")).add(&t)
                            } else {
                                PolyF2::generator(&format!("x{i}"))
                            };
                            term = ambient.multiply(&term, &factor).unwrap();
                        }
                    }
                    acc = acc.add(&term);
                }
                es.push(ambient.normal_form(&acc).unwrap());
            }
            es
        };
        let base = elementary(false);
        let shifted = elementary(true);
        let formula = tensor_by_line(&ambient, &base, &t).unwrap();
        assert_eq!(formula, shifted);
    }

    #[test]
    fn bv_star_rank_three_images() {
        let bv = bv_star(3).unwrap();
        let target = bv.target().clone();
        assert_eq!(bv.image_of("c").unwrap(), &target.parse_poly("w1^2").unwrap());
        assert_eq!(
            bv.image_of("w2").unwrap(),
            &target.parse_poly("w2 + w1^2").unwrap()
        );
        assert_eq!(
            bv.image_of("w3").unwrap(),
            &target.parse_poly("w1*w2").unwrap()
        );
        assert!(bv_star(4).is_err());
        assert!(matches!(bv_star(4), Err(Error::DataRequired(_))));
    }

    #[test]
    fn gysin_d_kills_restrictions() {
        let datum = n2_datum().gysin_datum().unwrap();
        // res(a1^2) = w1^2; the boundary of a restriction vanishes
        let x = datum.complement().parse_poly("w1^2").unwrap();
        assert_eq!(
            datum.gysin_d(&x).unwrap(),
            BoundaryResult::Determined(PolyF2::zero())
        );
    }

    #[test]
    fn gysin_d_definitional_and_projection_values() {
        let datum = n2_datum().gysin_datum().unwrap();
        let a1 = PolyF2::generator("a1");
        let w2 = datum.complement().parse_poly("w2").unwrap();
        assert_eq!(
            datum.gysin_d(&w2).unwrap(),
            BoundaryResult::Determined(a1.clone())
        );
        // d(w2^3) = d(res(b4) * w2) = b4 * a1
        let w2cubed = datum.complement().parse_poly("w2^3").unwrap();
        let expected = datum.ring().parse_poly("a1*b4").unwrap();
        assert_eq!(
            datum.gysin_d(&w2cubed).unwrap(),
            BoundaryResult::Determined(datum.ring().normal_form(&expected).unwrap())
        );
    }

    #[test]
    fn gysin_projection_formula_coherence() {
        // d(res(y) * x) = y * d(x) for table x and a few y
        let datum = n2_datum().gysin_datum().unwrap();
        let ring = datum.ring().clone();
        let complement = datum.complement().clone();
        for y_text in ["a1", "b4", "a1^2", "a1*b4"] {
            let y = ring.parse_poly(y_text).unwrap();
            let res_y = datum.res().apply(&y).unwrap();
            let w2 = complement.parse_poly("w2").unwrap();
            let lhs_arg = complement.multiply(&res_y, &w2).unwrap();
            let lhs = datum.gysin_d(&lhs_arg).unwrap().determined().unwrap();
            let rhs = ring
                .multiply(&y, &datum.gysin_d(&w2).unwrap().determined().unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "projection formula on y = {y_text}");
        }
    }

    #[test]
    fn trivial_bgm_datum_is_exact() {
        // A = F2[c] with Euler class c, B = F2: the complement of the zero
        // section of the universal line bundle.
        let a = bgm_capped("c", 18).unwrap();
        let b = GradedAlgebraPresentation::free(vec![], 18).unwrap();
        let res = AlgebraMorphism::new(
            a.clone(),
            b.clone(),
            BTreeMap::from([("c".to_string(), PolyF2::zero())]),
        )
        .unwrap();
        let datum = GysinDatum::new(a, PolyF2::generator("c"), b, res, vec![]).unwrap();
        let report = datum.check_exactness(16).unwrap();
        assert!(report.is_exact(), "failures: {:?}", report.failures);
    }

    #[test]
    fn zero_euler_on_polynomial_ring_fails() {
        // euler = 0 with B = A and res = id cannot be exact in positive
        // degrees: the cup arm kills nothing.
        let a = bgm_capped("c", 12).unwrap();
        let res = AlgebraMorphism::identity(&a);
        let datum =
            GysinDatum::new(a.clone(), PolyF2::zero(), a, res, vec![]).unwrap();
        let report = datum.check_exactness(6).unwrap();
        assert!(!report.is_exact());
        let first = report.failures.first().unwrap();
        assert!(first.degree <= 1, "first failure at degree {}", first.degree);
    }

    #[test]
    fn underdetermined_is_reported_not_zero() {
        // strip the d-table: w2 is then unreachable
        let datum = n2_datum();
        let gysin = GysinDatum::new(
            datum.presentation.clone(),
            PolyF2::generator("lambda"),
            datum.res.target().clone(),
            datum.res.clone(),
            vec![],
        )
        .unwrap();
        let w2 = gysin.complement().parse_poly("w2").unwrap();
        match gysin.gysin_d(&w2).unwrap() {
            BoundaryResult::Underdetermined { monomials } => {
                assert_eq!(monomials, vec![Monomial::generator("w2")]);
            }
            other => panic!("expected underdetermined, got {other:?}"),
        }
        assert!(matches!(
            gysin.check_exactness(4),
            Err(Error::Underdetermined(_))
        ));
    }

    #[test]
    fn shipped_rank_two_datum_is_exact() {
        let datum = n2_datum();
        let report = verify_even_datum(&datum, 12).unwrap();
        assert!(report.is_clean(), "failures: {:?}", report.failures);
    }

    #[test]
    fn odd_pair_datum_is_exact() {
        for n in [3usize, 5] {
            let datum = odd_pair_datum_capped(n, 10).unwrap();
            let report = datum.check_exactness(10).unwrap();
            assert!(report.is_exact(), "n = {n}: {:?}", report.failures);
        }
    }

    #[test]
    fn delta_of_unit_vanishes() {
        let target = n2_datum().gysin_datum().unwrap();
        assert!(delta(3, &PolyF2::one(), &target).unwrap().is_zero());
    }

    #[test]
    fn delta_goldens_for_rank_three() {
        // recorded after the shipped rank-2 file first passed the exactness
        // oracle: delta(w2) = a1, delta(w3) = a1^2, delta(w2*w3) = a1^4
        let datum = n2_datum();
        assert!(verify_even_datum(&datum, 12).unwrap().is_clean());
        let target = datum.gysin_datum().unwrap();
        let ring3 = crate::rings::bgo_odd(3).unwrap();
        let cases = [("w2", "a1"), ("w3", "a1^2"), ("w2*w3", "a1^4")];
        for (alpha_text, expected_text) in cases {
            let alpha = ring3.parse_poly(alpha_text).unwrap();
            let expected = datum.presentation.parse_poly(expected_text).unwrap();
            let got = delta(3, &alpha, &target).unwrap();
            assert_eq!(
                got,
                datum.presentation.normal_form(&expected).unwrap(),
                "delta({alpha_text})"
            );
        }
    }

    #[test]
    fn delta_is_linear() {
        let datum = n2_datum();
        let target = datum.gysin_datum().unwrap();
        let ring3 = crate::rings::bgo_odd(3).unwrap();
        let alphas = ["w2^3", "w3^2", "w2^2*w3"];
        for a_text in alphas {
            for b_text in alphas {
                let a = ring3.parse_poly(a_text).unwrap();
                let b = ring3.parse_poly(b_text).unwrap();
                if ring3.degree_of(&a).unwrap() != ring3.degree_of(&b).unwrap() {
                    continue;
                }
                let sum = a.add(&b);
                let lhs = delta(3, &sum, &target).unwrap();
                let rhs = delta(3, &a, &target)
                    .unwrap()
                    .add(&delta(3, &b, &target).unwrap());
                assert_eq!(lhs, datum.presentation.normal_form(&rhs).unwrap());
            }
        }
    }

    #[test]
    fn delta_rejects_non_primitive() {
        let target = n2_datum().gysin_datum().unwrap();
        let ring3 = crate::rings::bgo_odd(3).unwrap();
        let c = ring3.parse_poly("c").unwrap();
        let err = delta(3, &c, &target).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("not primitive"), "{msg}");
        assert!(msg.contains("cK"), "{msg}");
    }

    #[test]
    fn commutation_check_rank_three() {
        let report = bv_commutation_check(3, 8).unwrap();
        assert!(report.is_clean(), "failures: {:?}", report.failures);
        assert!(report.checked > 0);
    }

    #[test]
    fn completion_search_recovers_rank_two_relations() {
        let gens = crate::rings::expected_even_inventory(2).unwrap();
        let bo2 = bo_capped(2, 14).unwrap();
        let images = BTreeMap::from([
            ("lambda".to_string(), PolyF2::zero()),
            ("a1".to_string(), PolyF2::generator("w1")),
            (
                "b4".to_string(),
                bo2.parse_poly("w2^2").unwrap(),
            ),
        ]);
        let relations = complete_even_relations(&gens, &images, 2, 12).unwrap();
        assert_eq!(relations.len(), 1);
        let free = GradedAlgebraPresentation::free(gens, 14).unwrap();
        assert_eq!(relations[0], free.parse_poly("a1*lambda").unwrap());
    }

}
