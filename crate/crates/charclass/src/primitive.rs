//! The twist coproduct and primitive classes.
//!
//! A class alpha is primitive when the twist coproduct and the projection
//! agree on it: `mu*(alpha) = alpha (x) 1`. Primitives are exactly the
//! classes that descend from quadratic triples to quadric bundles, and they
//! form a subring. Primitivity is computed as a literal degreewise kernel of
//! `mu* - (-)(x)1`, never by pattern-matching generator names, so built-in
//! odd-rank rings and file-driven even-rank rings share one code path.

use crate::error::{Error, Result};
use crate::f2linalg::F2Matrix;
use crate::gralg::{tensor, AlgebraMorphism, GradedAlgebraPresentation, PolyF2};
use crate::rings::{bgm_capped, bgo_odd_capped, EvenGODatum, TWIST_GEN};
use std::collections::BTreeMap;

/// A ring together with its twist coproduct `mu*: A -> A (x) F2[cK]`.
///
/// Construction certifies the coproduct (well defined on relations) and the
/// counit law: substituting `cK -> 0` into `mu*(g)` must recover `g` for
/// every generator.
#[derive(Clone)]
pub struct TwistStructure {
    ring: GradedAlgebraPresentation,
    mu: AlgebraMorphism,
}

impl TwistStructure {
    pub fn new(ring: GradedAlgebraPresentation, mu: AlgebraMorphism) -> Result<Self> {
        if mu.source() != &ring {
            return Err(Error::contract("twist coproduct source is not the ring"));
        }
        let target = mu.target();
        let expected_names: Vec<&str> = ring
            .generators()
            .iter()
            .map(|g| g.name.as_str())
            .chain(std::iter::once(TWIST_GEN))
            .collect();
        let got_names: Vec<&str> = target.generators().iter().map(|g| g.name.as_str()).collect();
        if got_names != expected_names {
            return Err(Error::contract(format!(
                "twist target must be ring (x) F2[{TWIST_GEN}]; generators are {got_names:?}"
            )));
        }
        let violations = mu.check_well_defined()?;
        if !violations.is_empty() {
            let list: Vec<String> = violations
                .iter()
                .map(|v| format!("{} -> {}", v.relation, v.image))
                .collect();
            return Err(Error::contract(format!(
                "twist coproduct is not well defined: {}",
                list.join("; ")
            )));
        }
        let t = TwistStructure { ring, mu };
        t.check_counit()?;
        Ok(t)
    }

    /// Twist structure of a loaded even-rank datum.
    pub fn from_even_datum(datum: &EvenGODatum) -> Result<Self> {
        Self::new(datum.presentation.clone(), datum.mu.clone())
    }

    pub fn ring(&self) -> &GradedAlgebraPresentation {
        &self.ring
    }

    pub fn mu(&self) -> &AlgebraMorphism {
        &self.mu
    }

    /// Counit law: `cK -> 0` collapses `mu*(g)` back to `g`.
    fn check_counit(&self) -> Result<()> {
        let mut images: BTreeMap<String, PolyF2> = self
            .ring
            .generators()
            .iter()
            .map(|g| (g.name.clone(), PolyF2::generator(&g.name)))
            .collect();
        images.insert(TWIST_GEN.to_string(), PolyF2::zero());
        let counit =
            AlgebraMorphism::new(self.mu.target().clone(), self.ring.clone(), images)?;
        for g in self.ring.generators() {
            let back = counit.apply(self.mu.image_of(&g.name).unwrap())?;
            let expected = self.ring.normal_form(&PolyF2::generator(&g.name))?;
            if back != expected {
                return Err(Error::contract(format!(
                    "counit law fails on generator {}",
                    g.name
                )));
            }
        }
        Ok(())
    }

    /// `mu*(p) - p (x) 1`, the obstruction to primitivity, in the tensor
    /// ring.
    pub fn residue(&self, p: &PolyF2) -> Result<PolyF2> {
        let image = self.mu.apply(p)?;
        let included = self.mu.target().normal_form(p)?;
        Ok(image.add(&included))
    }

    /// `true` iff `mu*(p) = p (x) 1`.
    pub fn is_primitive(&self, p: &PolyF2) -> Result<bool> {
        self.ring.degree_of(p)?;
        Ok(self.residue(p)?.is_zero())
    }

    /// Basis of the primitive classes in one degree: the kernel of
    /// `mu* - (-)(x)1` on the degree-d basis, computed by exact linear
    /// algebra. Deterministic by the echelon pivot convention.
    pub fn primitive_basis(&self, degree: usize) -> Result<Vec<PolyF2>> {
        let src = self.ring.slice(degree)?;
        let tgt = self.mu.target().slice(degree)?;
        let basis = src.basis();
        let mut m = F2Matrix::zeros(tgt.dim(), basis.len());
        for (j, mono) in basis.iter().enumerate() {
            let p = PolyF2::from_monomial(mono.clone());
            let diff = self.residue(&p)?;
            for i in tgt.basis_coords(&diff)?.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m.kernel_basis()
            .into_iter()
            .map(|v| src.from_basis_coords(&v))
            .collect())
    }
}

/// The built-in twist coproduct for odd rank: on `F2[c, w2..wn]` the
/// product decomposition through BGm x BSO forces `c -> c + cK` (the line
/// class shifts by the twisting class; its square term vanishes mod 2) and
/// `w_i -> w_i` (the special orthogonal part is twist-invariant). These
/// images are derived rather than tabulated; the commutation check in the
/// gysin module is their in-repo arbiter.
pub fn builtin_mu_odd(n: usize) -> Result<TwistStructure> {
    builtin_mu_odd_capped(n, crate::gralg::DEFAULT_CAP)
}

pub fn builtin_mu_odd_capped(n: usize, cap: usize) -> Result<TwistStructure> {
    if n % 2 == 0 {
        return Err(Error::contract(format!(
            "built-in twist structure requires odd n, got {n}; load an even-rank \
             presentation file instead"
        )));
    }
    let ring = bgo_odd_capped(n, cap)?;
    let target = tensor(&ring, &bgm_capped(TWIST_GEN, cap)?)?;
    let mut images = BTreeMap::new();
    images.insert(
        "c".to_string(),
        PolyF2::generator("c").add(&PolyF2::generator(TWIST_GEN)),
    );
    for i in 2..=n {
        let name = format!("w{i}");
        images.insert(name.clone(), PolyF2::generator(&name));
    }
    let mu = AlgebraMorphism::new(ring.clone(), target, images)?;
    TwistStructure::new(ring, mu)
}
