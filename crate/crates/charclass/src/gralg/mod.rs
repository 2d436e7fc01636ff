//! Graded-commutative algebra presentations over F2.
//!
//! A presentation is a list of named generators with positive degrees plus a
//! list of homogeneous relations. Degreewise bases and normal forms come from
//! row-reducing the slice of the relation ideal in each degree: relations in
//! scope are few and degrees are capped, so enumerating the degree-d
//! monomials and eliminating the span of `relation * complementary monomial`
//! is exactly correct with no Gröbner machinery. The quotient basis is the
//! set of non-pivot monomials in a fixed graded-lexicographic order (by
//! generator declaration order, higher exponents on earlier generators
//! first), which makes every basis and normal form canonical.
//!
//! Coefficients are always F2; multiplication is unconditionally commutative
//! and a polynomial is just a finite set of monomials (presence = 1).

mod parse;

pub use parse::parse_poly_expr;

use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vec, Rref};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

/// Default degree cap for presentations; flag-overridable at every surface.
pub const DEFAULT_CAP: usize = 16;

/// A named generator with a positive cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: usize) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A commutative monomial: generator name -> positive exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: BTreeMap<String, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn generator(name: &str) -> Self {
        Monomial::power(name, 1)
    }

    pub fn power(name: &str, e: u32) -> Self {
        let mut exps = BTreeMap::new();
        if e > 0 {
            exps.insert(name.to_string(), e);
        }
        Monomial { exps }
    }

    pub fn from_pairs<I: IntoIterator<Item = (String, u32)>>(pairs: I) -> Self {
        let mut exps = BTreeMap::new();
        for (name, e) in pairs {
            if e > 0 {
                *exps.entry(name).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.exps.get(name).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.exps.iter().map(|(n, &e)| (n.as_str(), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (name, &e) in &other.exps {
            *exps.entry(name.clone()).or_insert(0) += e;
        }
        Monomial { exps }
    }

    /// Doubles every exponent (the Frobenius square over F2).
    fn squared(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|(n, &e)| (n.clone(), 2 * e)).collect(),
        }
    }

    fn rename(&self, renames: &BTreeMap<String, String>) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|(n, &e)| (renames.get(n).cloned().unwrap_or_else(|| n.clone()), e))
                .collect(),
        }
    }
}

impl fmt::Display for Monomial {
    /// Name-alphabetical factor order; presentations render the canonical
    /// declaration order via [`GradedAlgebraPresentation::monomial_string`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial over F2: a finite set of monomials, presence meaning
/// coefficient 1. Addition cancels pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyF2 {
    monomials: BTreeSet<Monomial>,
}

impl PolyF2 {
    pub fn zero() -> Self {
        PolyF2::default()
    }

    pub fn one() -> Self {
        PolyF2::from_monomial(Monomial::one())
    }

    pub fn generator(name: &str) -> Self {
        PolyF2::from_monomial(Monomial::generator(name))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut monomials = BTreeSet::new();
        monomials.insert(m);
        PolyF2 { monomials }
    }

    /// Sum of monomials mod 2 (duplicates cancel).
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut p = PolyF2::zero();
        for m in iter {
            p.toggle(m);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    /// Add a single monomial mod 2.
    pub fn toggle(&mut self, m: Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    /// Mod-2 sum (symmetric difference of monomial sets).
    pub fn add(&self, other: &PolyF2) -> PolyF2 {
        let mut out = self.clone();
        for m in &other.monomials {
            out.toggle(m.clone());
        }
        out
    }

    /// Plain polynomial product with no relation reduction.
    pub fn mul_raw(&self, other: &PolyF2) -> PolyF2 {
        let mut out = PolyF2::zero();
        for a in &self.monomials {
            for b in &other.monomials {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    /// `self^k` with no reduction, via Frobenius (squaring doubles exponents
    /// termwise over F2) and binary exponentiation.
    pub fn pow_raw(&self, k: u32) -> PolyF2 {
        if k == 0 {
            return PolyF2::one();
        }
        let mut acc = PolyF2::one();
        let mut base = self.clone();
        let mut rem = k;
        loop {
            if rem & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            rem >>= 1;
            if rem == 0 {
                break;
            }
            base = PolyF2::from_monomials(base.monomials.iter().map(Monomial::squared));
        }
        acc
    }

    fn rename(&self, renames: &BTreeMap<String, String>) -> PolyF2 {
        PolyF2::from_monomials(self.monomials.iter().map(|m| m.rename(renames)))
    }

    /// All generator names occurring in the polynomial.
    pub fn names(&self) -> BTreeSet<&str> {
        self.monomials
            .iter()
            .flat_map(|m| m.iter().map(|(n, _)| n))
            .collect()
    }
}

impl fmt::Display for PolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for m in &self.monomials {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// One degree slice of a presentation: the ordered degree-d monomials and
/// the row-reduced span of the relation ideal in that degree.
pub struct DegreeSlice {
    pub degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    rref: Rref,
    pivot_of_col: Vec<Option<usize>>,
    basis_cols: Vec<usize>,
}

impl DegreeSlice {
    /// Number of monomials of this degree (before quotienting).
    pub fn monomial_count(&self) -> usize {
        self.monomials.len()
    }

    /// Dimension of the quotient in this degree.
    pub fn dim(&self) -> usize {
        self.basis_cols.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// The normal-form monomials spanning this degree, in the canonical
    /// monomial order.
    pub fn basis(&self) -> Vec<Monomial> {
        self.basis_cols
            .iter()
            .map(|&c| self.monomials[c].clone())
            .collect()
    }

    /// Coordinates of a homogeneous polynomial over the full monomial list.
    pub fn vectorize(&self, p: &PolyF2) -> Result<F2Vec> {
        let mut v = F2Vec::zeros(self.monomials.len());
        for m in p.monomials() {
            let Some(&i) = self.index.get(m) else {
                return Err(Error::contract(format!(
                    "monomial {m} does not live in degree {}",
                    self.degree
                )));
            };
            v.set(i, true);
        }
        Ok(v)
    }

    pub fn devectorize(&self, v: &F2Vec) -> PolyF2 {
        PolyF2::from_monomials(v.iter_ones().map(|i| self.monomials[i].clone()))
    }

    fn reduce_vec(&self, v: &mut F2Vec) {
        self.rref.reduce(v);
    }

    /// Coordinates of an already-reduced polynomial over the quotient basis.
    pub fn basis_coords(&self, reduced: &PolyF2) -> Result<F2Vec> {
        let mut out = F2Vec::zeros(self.basis_cols.len());
        for m in reduced.monomials() {
            let Some(&col) = self.index.get(m) else {
                return Err(Error::contract(format!(
                    "monomial {m} does not live in degree {}",
                    self.degree
                )));
            };
            debug_assert!(self.pivot_of_col[col].is_none(), "input not in normal form");
            let pos = self
                .basis_cols
                .binary_search(&col)
                .map_err(|_| Error::contract("input not in normal form".to_string()))?;
            out.set(pos, true);
        }
        Ok(out)
    }

    pub fn from_basis_coords(&self, v: &F2Vec) -> PolyF2 {
        PolyF2::from_monomials(
            v.iter_ones()
                .map(|i| self.monomials[self.basis_cols[i]].clone()),
        )
    }
}

struct PresentationInner {
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    relations: Vec<PolyF2>,
    relation_degrees: Vec<usize>,
    degree_cap: usize,
    slices: Mutex<BTreeMap<usize, Arc<DegreeSlice>>>,
}

/// A graded-commutative F2-algebra given by generators and homogeneous
/// relations. Immutable after construction; cloning is cheap and clones share
/// the lazily populated per-degree cache.
#[derive(Clone)]
pub struct GradedAlgebraPresentation {
    inner: Arc<PresentationInner>,
}

impl fmt::Debug for GradedAlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2[")?;
        for (i, g) in self.inner.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", g.name, g.degree)?;
        }
        write!(f, "]")?;
        if !self.inner.relations.is_empty() {
            write!(f, " / ({} relations)", self.inner.relations.len())?;
        }
        Ok(())
    }
}

impl PartialEq for GradedAlgebraPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.inner.generators == other.inner.generators
            && self.inner.relations == other.inner.relations
            && self.inner.degree_cap == other.inner.degree_cap
    }
}

impl GradedAlgebraPresentation {
    pub fn new(
        generators: Vec<Generator>,
        relations: Vec<PolyF2>,
        degree_cap: usize,
    ) -> Result<Self> {
        if degree_cap == 0 {
            return Err(Error::contract("degree cap must be positive"));
        }
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::contract(format!(
                    "generator {} has degree 0; degrees must be >= 1",
                    g.name
                )));
            }
            if !is_identifier(&g.name) {
                return Err(Error::contract(format!(
                    "generator name `{}` is not an identifier",
                    g.name
                )));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::contract(format!(
                    "duplicate generator name `{}`",
                    g.name
                )));
            }
        }
        let proto = GradedAlgebraPresentation {
            inner: Arc::new(PresentationInner {
                generators: generators.clone(),
                index: index.clone(),
                relations: Vec::new(),
                relation_degrees: Vec::new(),
                degree_cap,
            slices: Mutex::new(BTreeMap::new()),
            }),
        };
        let mut relation_degrees = Vec::with_capacity(relations.len());
        for (i, r) in relations.iter().enumerate() {
            let deg = proto.degree_of(r)?.ok_or_else(|| {
                Error::contract(format!("relation {i} is zero; relations must be nonzero"))
            })?;
            if deg == 0 {
                return Err(Error::contract(format!(
                    "relation {i} has degree 0 (would impose 1 = 0)"
                )));
            }
            if deg > degree_cap {
                return Err(Error::CapExceeded {
                    degree: deg,
                    cap: degree_cap,
                });
            }
            relation_degrees.push(deg);
        }
        Ok(GradedAlgebraPresentation {
            inner: Arc::new(PresentationInner {
                generators,
                index,
                relations,
                relation_degrees,
                degree_cap,
                slices: Mutex::new(BTreeMap::new()),
            }),
        })
    }

    /// Free polynomial algebra on the given generators.
    pub fn free(generators: Vec<Generator>, degree_cap: usize) -> Result<Self> {
        Self::new(generators, Vec::new(), degree_cap)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.inner.generators
    }

    pub fn relations(&self) -> &[PolyF2] {
        &self.inner.relations
    }

    pub fn degree_cap(&self) -> usize {
        self.inner.degree_cap
    }

    /// Same presentation with a different cap (fresh cache).
    pub fn with_cap(&self, degree_cap: usize) -> Result<Self> {
        Self::new(
            self.inner.generators.clone(),
            self.inner.relations.clone(),
            degree_cap,
        )
    }

    pub fn generator_degree(&self, name: &str) -> Option<usize> {
        self.inner
            .index
            .get(name)
            .map(|&i| self.inner.generators[i].degree)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Result<usize> {
        let mut total = 0usize;
        for (name, e) in m.iter() {
            let Some(d) = self.generator_degree(name) else {
                return Err(Error::contract(format!("unknown generator `{name}`")));
            };
            total += d * e as usize;
        }
        Ok(total)
    }

    /// Common degree of a homogeneous polynomial; `None` for zero.
    /// Inhomogeneous input is a contract violation.
    pub fn degree_of(&self, p: &PolyF2) -> Result<Option<usize>> {
        let mut degree = None;
        for m in p.monomials() {
            let d = self.monomial_degree(m)?;
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::contract(format!(
                        "polynomial is not homogeneous (degrees {prev} and {d} occur)"
                    )));
                }
                _ => {}
            }
        }
        Ok(degree)
    }

    /// Exponent vector in declaration order (for the monomial order).
    fn exp_vec(&self, m: &Monomial) -> Vec<u32> {
        self.inner
            .generators
            .iter()
            .map(|g| m.exponent(&g.name))
            .collect()
    }

    /// Canonical monomial order: graded, then lexicographic by declaration
    /// order with higher exponents on earlier generators listed first.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let da = self.monomial_degree(a).unwrap_or(usize::MAX);
        let db = self.monomial_degree(b).unwrap_or(usize::MAX);
        da.cmp(&db)
            .then_with(|| self.exp_vec(b).cmp(&self.exp_vec(a)))
    }

    fn enumerate_monomials(&self, degree: usize) -> Vec<Monomial> {
        fn rec(
            gens: &[Generator],
            idx: usize,
            remaining: usize,
            stack: &mut Vec<(String, u32)>,
            out: &mut Vec<Monomial>,
        ) {
            if idx == gens.len() {
                if remaining == 0 {
                    out.push(Monomial::from_pairs(stack.iter().cloned()));
                }
                return;
            }
            let w = gens[idx].degree;
            for e in (0..=(remaining / w) as u32).rev() {
                stack.push((gens[idx].name.clone(), e));
                rec(gens, idx + 1, remaining - e as usize * w, stack, out);
                stack.pop();
            }
        }
        let mut out = Vec::new();
        let mut stack = Vec::new();
        rec(&self.inner.generators, 0, degree, &mut stack, &mut out);
        out
    }

    /// The degree slice, computed on first use and cached. Results are
    /// identical whether computed eagerly or lazily.
    pub fn slice(&self, degree: usize) -> Result<Arc<DegreeSlice>> {
        if degree > self.inner.degree_cap {
            return Err(Error::CapExceeded {
                degree,
                cap: self.inner.degree_cap,
            });
        }
        if let Some(s) = self.inner.slices.lock().unwrap().get(&degree) {
            return Ok(Arc::clone(s));
        }
        let slice = Arc::new(self.compute_slice(degree));
        let mut cache = self.inner.slices.lock().unwrap();
        let entry = cache.entry(degree).or_insert_with(|| Arc::clone(&slice));
        Ok(Arc::clone(entry))
    }

    fn compute_slice(&self, degree: usize) -> DegreeSlice {
        let monomials = self.enumerate_monomials(degree);
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut rows: Vec<F2Vec> = Vec::new();
        for (r, rdeg) in self
            .inner
            .relations
            .iter()
            .zip(&self.inner.relation_degrees)
        {
            if *rdeg > degree {
                continue;
            }
            for cof in self.enumerate_monomials(degree - rdeg) {
                let prod = r.mul_raw(&PolyF2::from_monomial(cof));
                let mut v = F2Vec::zeros(monomials.len());
                for m in prod.monomials() {
                    v.set(index[m], true);
                }
                rows.push(v);
            }
        }
        let matrix = F2Matrix::from_rows(&rows, monomials.len());
        let rref = matrix.rref();
        let mut pivot_of_col = vec![None; monomials.len()];
        for (row, &col) in rref.pivots.iter().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        let basis_cols = (0..monomials.len())
            .filter(|&c| pivot_of_col[c].is_none())
            .collect();
        DegreeSlice {
            degree,
            monomials,
            index,
            rref,
            pivot_of_col,
            basis_cols,
        }
    }

    /// Normal-form monomials spanning the degree-d part, in monomial order.
    pub fn basis(&self, degree: usize) -> Result<Vec<Monomial>> {
        Ok(self.slice(degree)?.basis())
    }

    pub fn dim(&self, degree: usize) -> Result<usize> {
        Ok(self.slice(degree)?.dim())
    }

    /// Canonical representative of `p` modulo the relation ideal.
    ///
    /// Linear: `normal_form(p + q) = normal_form(p) + normal_form(q)`.
    pub fn normal_form(&self, p: &PolyF2) -> Result<PolyF2> {
        let Some(degree) = self.degree_of(p)? else {
            return Ok(PolyF2::zero());
        };
        let slice = self.slice(degree)?;
        let mut v = slice.vectorize(p)?;
        slice.reduce_vec(&mut v);
        Ok(slice.devectorize(&v))
    }

    /// Cup product: normal form of the polynomial product.
    pub fn multiply(&self, p: &PolyF2, q: &PolyF2) -> Result<PolyF2> {
        let (Some(dp), Some(dq)) = (self.degree_of(p)?, self.degree_of(q)?) else {
            return Ok(PolyF2::zero());
        };
        if dp + dq > self.inner.degree_cap {
            return Err(Error::CapExceeded {
                degree: dp + dq,
                cap: self.inner.degree_cap,
            });
        }
        self.normal_form(&p.mul_raw(q))
    }

    /// `[dim H^0, ..., dim H^cap]`.
    pub fn poincare_series(&self, cap: usize) -> Result<Vec<usize>> {
        if cap > self.inner.degree_cap {
            return Err(Error::CapExceeded {
                degree: cap,
                cap: self.inner.degree_cap,
            });
        }
        (0..=cap).map(|d| self.dim(d)).collect()
    }

    /// Parse an expression of the polynomial grammar and check every name
    /// against this presentation's generators.
    pub fn parse_poly(&self, text: &str) -> Result<PolyF2> {
        let p = parse_poly_expr(text)?;
        for name in p.names() {
            if self.generator_degree(name).is_none() {
                return Err(Error::contract(format!(
                    "unknown generator `{name}` in expression `{text}`"
                )));
            }
        }
        Ok(p)
    }

    /// Render a monomial with factors in generator declaration order.
    pub fn monomial_string(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for g in &self.inner.generators {
            let e = m.exponent(&g.name);
            if e == 1 {
                parts.push(g.name.clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", g.name, e));
            }
        }
        parts.join("*")
    }

    /// Render a polynomial with monomials in the canonical order.
    pub fn poly_string(&self, p: &PolyF2) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut ms: Vec<&Monomial> = p.monomials().collect();
        ms.sort_by(|a, b| self.cmp_monomials(a, b));
        ms.iter()
            .map(|m| self.monomial_string(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Tensor product of presentations: union of generators (second factor's
/// names deterministically suffixed with `_2`, `_3`, ... on collision) and
/// union of relations. Degreewise dimensions are the convolution of the
/// factors' dimensions.
pub fn tensor(
    a: &GradedAlgebraPresentation,
    b: &GradedAlgebraPresentation,
) -> Result<GradedAlgebraPresentation> {
    let mut gens = a.generators().to_vec();
    let mut taken: HashSet<String> = gens.iter().map(|g| g.name.clone()).collect();
    let mut renames = BTreeMap::new();
    for g in b.generators() {
        let mut name = g.name.clone();
        let mut k = 2;
        while taken.contains(&name) {
            name = format!("{}_{}", g.name, k);
            k += 1;
        }
        if name != g.name {
            renames.insert(g.name.clone(), name.clone());
        }
        taken.insert(name.clone());
        gens.push(Generator::new(name, g.degree));
    }
    let mut relations = a.relations().to_vec();
    relations.extend(b.relations().iter().map(|r| r.rename(&renames)));
    GradedAlgebraPresentation::new(
        gens,
        relations,
        a.degree_cap().min(b.degree_cap()),
    )
}

/// A source relation whose image fails to vanish in the target.
#[derive(Clone, Debug)]
pub struct MorphismViolation {
    pub relation: PolyF2,
    pub image: PolyF2,
}

/// A degree-preserving algebra morphism given by a generator-image table.
#[derive(Clone)]
pub struct AlgebraMorphism {
    source: GradedAlgebraPresentation,
    target: GradedAlgebraPresentation,
    images: BTreeMap<String, PolyF2>,
}

impl fmt::Debug for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraMorphism {{ ")?;
        for (name, img) in &self.images {
            write!(f, "{name} -> {img}; ")?;
        }
        write!(f, "}}")
    }
}

impl AlgebraMorphism {
    /// Degree-checked construction without the well-definedness certificate.
    pub fn define(
        source: GradedAlgebraPresentation,
        target: GradedAlgebraPresentation,
        images: BTreeMap<String, PolyF2>,
    ) -> Result<Self> {
        for g in source.generators() {
            let Some(img) = images.get(&g.name) else {
                return Err(Error::contract(format!(
                    "morphism is missing an image for generator `{}`",
                    g.name
                )));
            };
            match target.degree_of(img)? {
                None => {}
                Some(d) if d == g.degree => {}
                Some(d) => {
                    return Err(Error::contract(format!(
                        "image of `{}` has degree {d}, expected {}",
                        g.name, g.degree
                    )));
                }
            }
        }
        for name in images.keys() {
            if source.generator_degree(name).is_none() {
                return Err(Error::contract(format!(
                    "morphism maps unknown generator `{name}`"
                )));
            }
        }
        Ok(AlgebraMorphism {
            source,
            target,
            images,
        })
    }

    /// Construction with the well-definedness certificate: every source
    /// relation must map to 0 in the target.
    pub fn new(
        source: GradedAlgebraPresentation,
        target: GradedAlgebraPresentation,
        images: BTreeMap<String, PolyF2>,
    ) -> Result<Self> {
        let f = Self::define(source, target, images)?;
        let violations = f.check_well_defined()?;
        if violations.is_empty() {
            Ok(f)
        } else {
            let list = violations
                .iter()
                .map(|v| format!("{} -> {}", v.relation, v.image))
                .collect::<Vec<_>>()
                .join("; ");
            Err(Error::contract(format!(
                "morphism is not well defined on relations: {list}"
            )))
        }
    }

    pub fn identity(p: &GradedAlgebraPresentation) -> Self {
        let images = p
            .generators()
            .iter()
            .map(|g| (g.name.clone(), PolyF2::generator(&g.name)))
            .collect();
        AlgebraMorphism {
            source: p.clone(),
            target: p.clone(),
            images,
        }
    }

    pub fn source(&self) -> &GradedAlgebraPresentation {
        &self.source
    }

    pub fn target(&self) -> &GradedAlgebraPresentation {
        &self.target
    }

    pub fn image_of(&self, name: &str) -> Option<&PolyF2> {
        self.images.get(name)
    }

    pub fn images(&self) -> &BTreeMap<String, PolyF2> {
        &self.images
    }

    /// Every source relation whose image does not normalize to 0; empty
    /// result means certified.
    pub fn check_well_defined(&self) -> Result<Vec<MorphismViolation>> {
        let mut out = Vec::new();
        for r in self.source.relations() {
            let image = self.apply(r)?;
            if !image.is_zero() {
                out.push(MorphismViolation {
                    relation: r.clone(),
                    image,
                });
            }
        }
        Ok(out)
    }

    /// Substitute generator images and reduce in the target.
    pub fn apply(&self, p: &PolyF2) -> Result<PolyF2> {
        self.source.degree_of(p)?;
        let mut out = PolyF2::zero();
        'mono: for m in p.monomials() {
            let mut acc = PolyF2::one();
            for (name, e) in m.iter() {
                let img = self.images.get(name).ok_or_else(|| {
                    Error::contract(format!("no image for generator `{name}`"))
                })?;
                if img.is_zero() {
                    continue 'mono;
                }
                for _ in 0..e {
                    acc = self.target.multiply(&acc, img)?;
                }
                if acc.is_zero() {
                    continue 'mono;
                }
            }
            out = out.add(&acc);
        }
        self.target.normal_form(&out)
    }

    /// Matrix of the morphism on the degree-d quotient bases
    /// (rows: target basis, columns: source basis).
    pub fn matrix(&self, degree: usize) -> Result<F2Matrix> {
        let src = self.source.slice(degree)?;
        let tgt = self.target.slice(degree)?;
        let src_basis = src.basis();
        let mut m = F2Matrix::zeros(tgt.dim(), src_basis.len());
        for (j, mono) in src_basis.iter().enumerate() {
            let img = self.apply(&PolyF2::from_monomial(mono.clone()))?;
            let coords = tgt.basis_coords(&img)?;
            for i in coords.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }
}
