//! Registry of the concrete cohomology rings and standard morphisms, plus the
//! file format for even-rank general-orthogonal presentations.
//!
//! Odd-rank rings are built in: `H*(BO_n) = F2[w1..wn]`,
//! `H*(BGL_n) = F2[c1..cn]` with `deg c_i = 2i`, and for odd n
//! `H*(BGO_n) = F2[c, w2..wn]` via the Kunneth product of `BGm` and the odd
//! special orthogonal ring. Even-rank general-orthogonal relations are not
//! derivable here, so they are *data*: a JSON file carries the presentation,
//! the restriction and twist tables, and a partial boundary table, and the
//! Gysin exactness verifier is the acceptance oracle for any such file.

use crate::error::{Error, Result};
use crate::gralg::{
    tensor, AlgebraMorphism, Generator, GradedAlgebraPresentation, Monomial, PolyF2, DEFAULT_CAP,
};
use crate::gysin::{ExactnessFailure, GysinDatum};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

/// Reserved name for the degree-2 generator of the BGm tensor factor in
/// twist-coproduct images.
pub const TWIST_GEN: &str = "cK";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingFamily {
    BO,
    BGL,
    BGm,
    BSOOdd,
    BGOOdd,
    BGOEven,
}

impl fmt::Display for RingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RingFamily::BO => "BO",
            RingFamily::BGL => "BGL",
            RingFamily::BGm => "BGm",
            RingFamily::BSOOdd => "BSO_odd",
            RingFamily::BGOOdd => "BGO_odd",
            RingFamily::BGOEven => "BGO_even",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingId {
    pub family: RingFamily,
    pub n: usize,
}

impl RingId {
    pub fn new(family: RingFamily, n: usize) -> Result<Self> {
        match family {
            RingFamily::BSOOdd | RingFamily::BGOOdd => {
                if n % 2 == 0 || n == 0 {
                    return Err(Error::contract(format!("{family} requires odd n >= 1, got {n}")));
                }
            }
            RingFamily::BGOEven => {
                if n % 2 == 1 || n < 2 {
                    return Err(Error::contract(format!(
                        "{family} requires even n >= 2, got {n}"
                    )));
                }
            }
            RingFamily::BGm => {}
            _ => {
                if n < 1 {
                    return Err(Error::contract(format!("{family} requires n >= 1")));
                }
            }
        }
        Ok(RingId { family, n })
    }

    /// Resolve a CLI family name plus rank; `BSO`/`BGO` dispatch on the
    /// parity of n.
    pub fn parse(family: &str, n: usize) -> Result<Self> {
        let family = match family {
            "BO" => RingFamily::BO,
            "BGL" => RingFamily::BGL,
            "BGm" => RingFamily::BGm,
            "BSO" => RingFamily::BSOOdd,
            "BGO" if n % 2 == 1 => RingFamily::BGOOdd,
            "BGO" => RingFamily::BGOEven,
            other => {
                return Err(Error::contract(format!(
                    "unknown ring family `{other}` (expected BO, BGL, BGm, BSO or BGO)"
                )));
            }
        };
        RingId::new(family, n)
    }
}

/// `H*(BO_n) = F2[w1, ..., wn]`, `deg w_i = i`.
pub fn bo(n: usize) -> Result<GradedAlgebraPresentation> {
    bo_capped(n, DEFAULT_CAP)
}

pub fn bo_capped(n: usize, cap: usize) -> Result<GradedAlgebraPresentation> {
    if n < 1 {
        return Err(Error::contract(format!("BO rank must be >= 1, got {n}")));
    }
    let gens = (1..=n).map(|i| Generator::new(format!("w{i}"), i)).collect();
    GradedAlgebraPresentation::free(gens, cap)
}

/// `H*(BGL_n) = F2[c1, ..., cn]`, `deg c_i = 2i` (mod-2 Chern classes).
pub fn bgl(n: usize) -> Result<GradedAlgebraPresentation> {
    bgl_capped(n, DEFAULT_CAP)
}

pub fn bgl_capped(n: usize, cap: usize) -> Result<GradedAlgebraPresentation> {
    if n < 1 {
        return Err(Error::contract(format!("BGL rank must be >= 1, got {n}")));
    }
    let gens = (1..=n)
        .map(|i| Generator::new(format!("c{i}"), 2 * i))
        .collect();
    GradedAlgebraPresentation::free(gens, cap)
}

/// `H*(BGm) = F2[c]` with one degree-2 generator, named by the caller
/// (`c` in ring contexts, `cK` as the twist factor).
pub fn bgm(name: &str) -> Result<GradedAlgebraPresentation> {
    bgm_capped(name, DEFAULT_CAP)
}

pub fn bgm_capped(name: &str, cap: usize) -> Result<GradedAlgebraPresentation> {
    GradedAlgebraPresentation::free(vec![Generator::new(name, 2)], cap)
}

/// `H*(BSO_n) = F2[w2, ..., wn]` for odd n >= 3.
pub fn bso_odd(n: usize) -> Result<GradedAlgebraPresentation> {
    bso_odd_capped(n, DEFAULT_CAP)
}

pub fn bso_odd_capped(n: usize, cap: usize) -> Result<GradedAlgebraPresentation> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::contract(format!(
            "BSO_odd requires odd n >= 3, got {n}"
        )));
    }
    let gens = (2..=n).map(|i| Generator::new(format!("w{i}"), i)).collect();
    GradedAlgebraPresentation::free(gens, cap)
}

/// `H*(BGO_n) = F2[c, w2, ..., wn]` for odd n, as the Kunneth product of
/// `BGm` and `BSO_n`.
pub fn bgo_odd(n: usize) -> Result<GradedAlgebraPresentation> {
    bgo_odd_capped(n, DEFAULT_CAP)
}

pub fn bgo_odd_capped(n: usize, cap: usize) -> Result<GradedAlgebraPresentation> {
    tensor(&bgm_capped("c", cap)?, &bso_odd_capped(n, cap)?)
}

/// The restriction `H*(BGL_n) -> H*(BO_n)`: `c_i -> w_i^2`.
pub fn chern_to_sw(n: usize) -> Result<AlgebraMorphism> {
    chern_to_sw_capped(n, DEFAULT_CAP)
}

pub fn chern_to_sw_capped(n: usize, cap: usize) -> Result<AlgebraMorphism> {
    let source = bgl_capped(n, cap)?;
    let target = bo_capped(n, cap)?;
    let images = (1..=n)
        .map(|i| {
            (
                format!("c{i}"),
                PolyF2::from_monomial(Monomial::power(&format!("w{i}"), 2)),
            )
        })
        .collect();
    AlgebraMorphism::new(source, target, images)
}

// ---------------------------------------------------------------------------
// Even-rank general-orthogonal presentations: file-driven data
// ---------------------------------------------------------------------------

/// A loaded even-rank presentation with its restriction map, twist coproduct
/// and partial boundary table. Structurally checked on load; semantic
/// validity is established separately by [`verify_even_datum`].
#[derive(Clone, Debug)]
pub struct EvenGODatum {
    pub n: usize,
    pub presentation: GradedAlgebraPresentation,
    /// Restriction to `H*(BO_n)`; degree-checked, certified by the verifier.
    pub res: AlgebraMorphism,
    /// Twist coproduct into `presentation (x) F2[cK]`.
    pub mu: AlgebraMorphism,
    /// Boundary table: monomial in the `w_i` -> value in the presentation.
    pub d_table: Vec<(Monomial, PolyF2)>,
    pub provenance: String,
}

#[derive(Deserialize)]
struct FileGenerator {
    name: String,
    degree: usize,
}

#[derive(Deserialize)]
struct EvenGOFile {
    family: String,
    n: usize,
    generators: Vec<FileGenerator>,
    relations: Vec<String>,
    res: BTreeMap<String, String>,
    mu: BTreeMap<String, String>,
    d_table: BTreeMap<String, String>,
    provenance: String,
}

/// The generator inventory forced for rank n: `lambda` in degree 2,
/// `a(2i-1)` in degree 2i-1 and `b(4j)` in degree 4j for i, j up to n/2, and
/// `d_T` in degree 2*sum(T) - 1 for each subset T of {1..n/2} with at least
/// two elements (named by concatenated indices, e.g. `d12`).
pub fn expected_even_inventory(n: usize) -> Result<Vec<Generator>> {
    if n % 2 == 1 || n < 2 {
        return Err(Error::contract(format!(
            "even-rank inventory requires even n >= 2, got {n}"
        )));
    }
    let half = n / 2;
    if half > 9 {
        return Err(Error::contract(
            "ranks above 18 are out of scope for the d_T naming scheme",
        ));
    }
    let mut gens = vec![Generator::new("lambda", 2)];
    for i in 1..=half {
        gens.push(Generator::new(format!("a{}", 2 * i - 1), 2 * i - 1));
    }
    for j in 1..=half {
        gens.push(Generator::new(format!("b{}", 4 * j), 4 * j));
    }
    for mask in 0u32..(1 << half) {
        if mask.count_ones() < 2 {
            continue;
        }
        let indices: Vec<usize> = (1..=half).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let name = format!(
            "d{}",
            indices.iter().map(|i| i.to_string()).collect::<String>()
        );
        let degree = 2 * indices.iter().sum::<usize>() - 1;
        gens.push(Generator::new(name, degree));
    }
    Ok(gens)
}

pub fn load_even_presentation(path: &Path) -> Result<EvenGODatum> {
    load_even_presentation_capped(path, DEFAULT_CAP)
}

pub fn load_even_presentation_capped(path: &Path, cap: usize) -> Result<EvenGODatum> {
    let text = std::fs::read_to_string(path)?;
    even_datum_from_json(&text, cap)
}

/// Parse and structurally validate an even-GO presentation file.
///
/// Internal presentations are built with `cap + 2` headroom so that the
/// exactness verifier can inspect every node up to `cap`.
pub fn even_datum_from_json(text: &str, cap: usize) -> Result<EvenGODatum> {
    let file: EvenGOFile = serde_json::from_str(text)?;
    if file.family != "BGO_even" {
        return Err(Error::schema(
            "family",
            format!("expected \"BGO_even\", got \"{}\"", file.family),
        ));
    }
    let n = file.n;
    let expected = expected_even_inventory(n).map_err(|e| Error::schema("n", e.to_string()))?;
    let pres_cap = cap + 2;

    // generator inventory must match the forced list exactly
    let mut got: Vec<Generator> = file
        .generators
        .iter()
        .map(|g| Generator::new(g.name.clone(), g.degree))
        .collect();
    let mut want = expected.clone();
    got.sort();
    want.sort();
    if got != want {
        let missing: Vec<String> = want
            .iter()
            .filter(|g| !got.contains(g))
            .map(|g| format!("{}:{}", g.name, g.degree))
            .collect();
        let extra: Vec<String> = got
            .iter()
            .filter(|g| !want.contains(g))
            .map(|g| format!("{}:{}", g.name, g.degree))
            .collect();
        return Err(Error::schema(
            "generators",
            format!(
                "inventory mismatch for rank {n}: missing [{}], unexpected [{}]",
                missing.join(", "),
                extra.join(", ")
            ),
        ));
    }

    // declaration order is taken from the file
    let gens: Vec<Generator> = file
        .generators
        .iter()
        .map(|g| Generator::new(g.name.clone(), g.degree))
        .collect();
    let free = GradedAlgebraPresentation::free(gens.clone(), pres_cap)
        .map_err(|e| Error::schema("generators", e.to_string()))?;

    let mut relations = Vec::new();
    for (i, text) in file.relations.iter().enumerate() {
        let loc = format!("relations[{i}]");
        let p = free
            .parse_poly(text)
            .map_err(|e| Error::schema(&loc, e.to_string()))?;
        match free.degree_of(&p) {
            Err(e) => return Err(Error::schema(&loc, e.to_string())),
            Ok(None) => return Err(Error::schema(&loc, "relation is zero")),
            Ok(Some(_)) => {}
        }
        relations.push(p);
    }
    let presentation = GradedAlgebraPresentation::new(gens, relations, pres_cap)
        .map_err(|e| Error::schema("relations", e.to_string()))?;

    // restriction table into BO(n)
    let bo_n = bo_capped(n, pres_cap)?;
    let res_images =
        parse_morphism_table(&file.res, &presentation, &bo_n, "res")?;
    let res = AlgebraMorphism::define(presentation.clone(), bo_n.clone(), res_images)
        .map_err(|e| Error::schema("res", e.to_string()))?;

    // twist coproduct table into presentation (x) F2[cK]
    let mu_target = tensor(&presentation, &bgm_capped(TWIST_GEN, pres_cap)?)?;
    let mu_images = parse_morphism_table(&file.mu, &presentation, &mu_target, "mu")?;
    let mu = AlgebraMorphism::define(presentation.clone(), mu_target, mu_images)
        .map_err(|e| Error::schema("mu", e.to_string()))?;

    // boundary table: single monomials in the w_i, values one degree lower
    let mut d_table = Vec::new();
    for (key, value) in &file.d_table {
        let loc = format!("d_table[\"{key}\"]");
        let kp = bo_n
            .parse_poly(key)
            .map_err(|e| Error::schema(&loc, e.to_string()))?;
        if kp.len() != 1 {
            return Err(Error::schema(&loc, "key must be a single monomial"));
        }
        let mono = kp.monomials().next().unwrap().clone();
        let kdeg = bo_n
            .monomial_degree(&mono)
            .map_err(|e| Error::schema(&loc, e.to_string()))?;
        if kdeg == 0 {
            return Err(Error::schema(&loc, "key must have positive degree"));
        }
        let vp = presentation
            .parse_poly(value)
            .map_err(|e| Error::schema(&loc, e.to_string()))?;
        match presentation.degree_of(&vp) {
            Err(e) => return Err(Error::schema(&loc, e.to_string())),
            Ok(Some(d)) if d != kdeg - 1 => {
                return Err(Error::schema(
                    &loc,
                    format!("value degree {d} does not drop the key degree {kdeg} by 1"),
                ));
            }
            _ => {}
        }
        d_table.push((mono, vp));
    }

    Ok(EvenGODatum {
        n,
        presentation,
        res,
        mu,
        d_table,
        provenance: file.provenance,
    })
}

fn parse_morphism_table(
    table: &BTreeMap<String, String>,
    source: &GradedAlgebraPresentation,
    target: &GradedAlgebraPresentation,
    which: &str,
) -> Result<BTreeMap<String, PolyF2>> {
    let mut images = BTreeMap::new();
    for g in source.generators() {
        let loc = format!("{which}.{}", g.name);
        let Some(text) = table.get(&g.name) else {
            return Err(Error::schema(&loc, "missing image"));
        };
        let p = target
            .parse_poly(text)
            .map_err(|e| Error::schema(&loc, e.to_string()))?;
        images.insert(g.name.clone(), p);
    }
    for key in table.keys() {
        if source.generator_degree(key).is_none() {
            return Err(Error::schema(
                format!("{which}.{key}"),
                "image for a generator that is not in the inventory",
            ));
        }
    }
    Ok(images)
}

impl EvenGODatum {
    /// The Gysin datum of the pair: ring = this presentation, Euler class =
    /// lambda, complement = `H*(BO_n)`.
    pub fn gysin_datum(&self) -> Result<GysinDatum> {
        GysinDatum::new(
            self.presentation.clone(),
            PolyF2::generator("lambda"),
            self.res.target().clone(),
            self.res.clone(),
            self.d_table.clone(),
        )
    }
}

/// One failure found by [`verify_even_datum`].
#[derive(Clone, Debug)]
pub enum VerifyFailure {
    /// `res` or `mu` does not kill a relation.
    Morphism {
        which: &'static str,
        relation: String,
        image: String,
    },
    /// A long-exact-sequence node fails.
    Exactness(ExactnessFailure),
    /// A boundary value inside the checked range is not determined.
    Underdetermined { detail: String },
    /// A definitional boundary value is missing or wrong in the table.
    Definitional {
        monomial: String,
        expected: String,
        found: Option<String>,
    },
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::Morphism {
                which,
                relation,
                image,
            } => write!(f, "{which} does not kill relation {relation}: image {image}"),
            VerifyFailure::Exactness(e) => write!(f, "{e}"),
            VerifyFailure::Underdetermined { detail } => {
                write!(f, "boundary underdetermined: {detail}")
            }
            VerifyFailure::Definitional {
                monomial,
                expected,
                found,
            } => match found {
                Some(got) => write!(
                    f,
                    "definitional value d({monomial}) = {expected} violated: table has {got}"
                ),
                None => write!(f, "definitional value d({monomial}) = {expected} missing from table"),
            },
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub failures: Vec<VerifyFailure>,
    pub checked_to: usize,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Semantic verification of a loaded datum: (a) `res` and `mu` must be well
/// defined, (b) the Gysin sequence with Euler class lambda against
/// `H*(BO_n)` must be exact up to `cap`, (c) the definitional boundary
/// values `a(2i-1) = d(w(2i))` and `d_T = d(prod w(2i))` must be present in
/// the table.
pub fn verify_even_datum(datum: &EvenGODatum, cap: usize) -> Result<VerifyReport> {
    if cap + 2 > datum.presentation.degree_cap() {
        return Err(Error::contract(format!(
            "datum was loaded with cap {}; reload with cap >= {cap} to verify",
            datum.presentation.degree_cap().saturating_sub(2)
        )));
    }
    let mut failures = Vec::new();

    for (which, morphism) in [("res", &datum.res), ("mu", &datum.mu)] {
        for v in morphism.check_well_defined()? {
            failures.push(VerifyFailure::Morphism {
                which,
                relation: datum.presentation.poly_string(&v.relation),
                image: morphism.target().poly_string(&v.image),
            });
        }
    }

    let gysin = datum.gysin_datum()?;
    match gysin.check_exactness(cap) {
        Ok(report) => {
            failures.extend(report.failures.into_iter().map(VerifyFailure::Exactness));
        }
        Err(Error::Underdetermined(monos)) => {
            failures.push(VerifyFailure::Underdetermined {
                detail: monos.join(", "),
            });
        }
        Err(e) => return Err(e),
    }

    let bo_n = datum.res.target();
    let half = datum.n / 2;
    let mut definitional: Vec<(Monomial, String)> = Vec::new();
    for i in 1..=half {
        definitional.push((
            Monomial::generator(&format!("w{}", 2 * i)),
            format!("a{}", 2 * i - 1),
        ));
    }
    for g in expected_even_inventory(datum.n)? {
        if !g.name.starts_with('d') {
            continue;
        }
        let indices: Vec<usize> = g.name[1..]
            .chars()
            .map(|c| c.to_digit(10).unwrap() as usize)
            .collect();
        let mono = Monomial::from_pairs(
            indices
                .iter()
                .map(|&i| (format!("w{}", 2 * i), 1u32)),
        );
        definitional.push((mono, g.name.clone()));
    }
    for (mono, gen_name) in definitional {
        let expected = datum
            .presentation
            .normal_form(&PolyF2::generator(&gen_name))?;
        let found = datum.d_table.iter().find(|(m, _)| *m == mono);
        match found {
            None => failures.push(VerifyFailure::Definitional {
                monomial: bo_n.monomial_string(&mono),
                expected: datum.presentation.poly_string(&expected),
                found: None,
            }),
            Some((_, value)) => {
                let got = datum.presentation.normal_form(value)?;
                if got != expected {
                    failures.push(VerifyFailure::Definitional {
                        monomial: bo_n.monomial_string(&mono),
                        expected: datum.presentation.poly_string(&expected),
                        found: Some(datum.presentation.poly_string(&got)),
                    });
                }
            }
        }
    }

    Ok(VerifyReport {
        failures,
        checked_to: cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_id_parity_constraints() {
        assert!(RingId::new(RingFamily::BSOOdd, 4).is_err());
        assert!(RingId::new(RingFamily::BGOOdd, 2).is_err());
        assert!(RingId::new(RingFamily::BGOEven, 3).is_err());
        assert!(RingId::new(RingFamily::BGOEven, 0).is_err());
        assert!(RingId::new(RingFamily::BO, 0).is_err());
        assert_eq!(
            RingId::parse("BGO", 3).unwrap().family,
            RingFamily::BGOOdd
        );
        assert_eq!(
            RingId::parse("BGO", 4).unwrap().family,
            RingFamily::BGOEven
        );
        assert!(RingId::parse("XX", 1).is_err());
    }

    #[test]
    fn bo_ring_shape() {
        let a = bo(1).unwrap();
        assert_eq!(a.poincare_series(10).unwrap(), vec![1; 11]);
        let b = bo(2).unwrap();
        let gens: Vec<(String, usize)> = b
            .generators()
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect();
        assert_eq!(gens, vec![("w1".into(), 1), ("w2".into(), 2)]);
        // partition count oracle: parts <= 3, degree 6
        assert_eq!(bo(3).unwrap().dim(6).unwrap(), 7);
        assert!(bo(0).is_err());
    }

    #[test]
    fn bgl_ring_shape() {
        let a = bgl(1).unwrap();
        assert_eq!(a.generators().len(), 1);
        assert_eq!(a.generators()[0].degree, 2);
        for d in [1usize, 3, 5, 7] {
            assert_eq!(a.dim(d).unwrap(), 0);
        }
        assert_eq!(bgl(2).unwrap().dim(4).unwrap(), 2);
    }

    #[test]
    fn bso_odd_shape() {
        let a = bso_odd(3).unwrap();
        let gens: Vec<&str> = a.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(gens, vec!["w2", "w3"]);
        assert_eq!(a.dim(5).unwrap(), 1);
        assert_eq!(a.dim(1).unwrap(), 0);
        assert!(bso_odd(4).is_err());
        assert!(bso_odd(1).is_err());
    }

    #[test]
    fn bgo_odd_shape_and_kunneth() {
        let a = bgo_odd(3).unwrap();
        let gens: Vec<(String, usize)> = a
            .generators()
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect();
        assert_eq!(
            gens,
            vec![("c".into(), 2), ("w2".into(), 2), ("w3".into(), 3)]
        );
        assert_eq!(a.dim(4).unwrap(), 3);
        assert_eq!(bgo_odd(5).unwrap().dim(2).unwrap(), 2);
        // Kunneth: dims equal the convolution of factor series
        let c = bgm("c").unwrap();
        let so = bso_odd(3).unwrap();
        for d in 0..=DEFAULT_CAP {
            let conv: usize = (0..=d)
                .map(|e| c.dim(e).unwrap() * so.dim(d - e).unwrap())
                .sum();
            assert_eq!(a.dim(d).unwrap(), conv, "degree {d}");
        }
        assert!(bgo_odd(4).is_err());
    }

    #[test]
    fn chern_to_sw_images_and_injectivity() {
        for n in 1..=4 {
            let f = chern_to_sw(n).unwrap();
            for i in 1..=n {
                let img = f.image_of(&format!("c{i}")).unwrap();
                assert_eq!(
                    img,
                    &PolyF2::from_monomial(Monomial::power(&format!("w{i}"), 2))
                );
            }
            // squares of independent elements stay independent
            for d in (0..=12).step_by(2) {
                let m = f.matrix(d).unwrap();
                assert!(m.kernel_basis().is_empty(), "n={n} degree {d}");
            }
        }
    }

    #[test]
    fn chern_to_sw_multiplicative() {
        let f = chern_to_sw(2).unwrap();
        let src = f.source().clone();
        let p = src.parse_poly("c1*c2").unwrap();
        let expected = f.target().parse_poly("w1^2*w2^2").unwrap();
        assert_eq!(f.apply(&p).unwrap(), expected);
    }

    #[test]
    fn inventory_for_rank_two_and_four() {
        let inv2 = expected_even_inventory(2).unwrap();
        let names: Vec<(String, usize)> =
            inv2.iter().map(|g| (g.name.clone(), g.degree)).collect();
        assert_eq!(
            names,
            vec![
                ("lambda".into(), 2),
                ("a1".into(), 1),
                ("b4".into(), 4)
            ]
        );
        let inv4 = expected_even_inventory(4).unwrap();
        assert!(inv4.iter().any(|g| g.name == "d12" && g.degree == 5));
        assert_eq!(inv4.len(), 6);
        assert!(expected_even_inventory(3).is_err());
    }

    const GOOD_N2: &str = r#"{
        "family": "BGO_even", "n": 2,
        "generators": [
            {"name": "lambda", "degree": 2},
            {"name": "a1", "degree": 1},
            {"name": "b4", "degree": 4}
        ],
        "relations": ["a1*lambda"],
        "res": {"lambda": "0", "a1": "w1", "b4": "w2^2"},
        "mu": {"lambda": "lambda", "a1": "a1", "b4": "b4 + a1^2*cK + lambda*cK + cK^2"},
        "d_table": {"w2": "a1"},
        "provenance": "test fixture"
    }"#;

    #[test]
    fn load_well_formed_rank_two() {
        let datum = even_datum_from_json(GOOD_N2, 12).unwrap();
        assert_eq!(datum.n, 2);
        assert_eq!(datum.presentation.generators().len(), 3);
        assert_eq!(datum.d_table.len(), 1);
        assert_eq!(datum.presentation.dim(3).unwrap(), 1);
    }

    #[test]
    fn load_rejects_missing_generator() {
        let text = GOOD_N2.replace(
            r#"{"name": "a1", "degree": 1},"#,
            "",
        );
        let err = even_datum_from_json(&text, 12).unwrap_err();
        assert!(matches!(err, Error::Schema { ref location, .. } if location == "generators"));
    }

    #[test]
    fn load_rejects_inhomogeneous_relation() {
        let text = GOOD_N2.replace("\"a1*lambda\"", "\"a1 + lambda\"");
        let err = even_datum_from_json(&text, 12).unwrap_err();
        assert!(matches!(err, Error::Schema { ref location, .. } if location.starts_with("relations")));
    }

    #[test]
    fn load_rejects_degree_breaking_table() {
        let text = GOOD_N2.replace("\"w2\": \"a1\"", "\"w2\": \"lambda\"");
        let err = even_datum_from_json(&text, 12).unwrap_err();
        assert!(matches!(err, Error::Schema { ref location, .. } if location.starts_with("d_table")));
    }

    #[test]
    fn verify_flags_missing_definitional_value() {
        let text = GOOD_N2.replace(r#""d_table": {"w2": "a1"}"#, r#""d_table": {}"#);
        let datum = even_datum_from_json(&text, 8).unwrap();
        let report = verify_even_datum(&datum, 8).unwrap();
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, VerifyFailure::Definitional { found: None, .. })));
    }

    #[test]
    fn verify_flags_wrong_res_image() {
        // res(b4) = w1^4 collapses the image ring; w2^2 becomes unreachable
        // and the boundary is reported underdetermined, never silently zero
        let text = GOOD_N2.replace("\"b4\": \"w2^2\"", "\"b4\": \"w1^4\"");
        let datum = even_datum_from_json(&text, 8).unwrap();
        let report = verify_even_datum(&datum, 8).unwrap();
        assert!(!report.is_clean());
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, VerifyFailure::Underdetermined { .. })));
    }

    #[test]
    fn verify_flags_wrong_boundary_value() {
        // d(w2) = 0 keeps the boundary total but kills exactness early: the
        // image of d can no longer cover the annihilator of the Euler class
        let text = GOOD_N2.replace("\"w2\": \"a1\"", "\"w2\": \"0\"");
        let datum = even_datum_from_json(&text, 8).unwrap();
        let report = verify_even_datum(&datum, 8).unwrap();
        assert!(!report.is_clean());
        let min_degree = report
            .failures
            .iter()
            .filter_map(|f| match f {
                VerifyFailure::Exactness(e) => Some(e.degree),
                _ => None,
            })
            .min();
        assert!(min_degree.is_some_and(|d| d <= 8), "report: {report:?}");
        // and the definitional value a1 = d(w2) is flagged
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, VerifyFailure::Definitional { .. })));
    }

    #[test]
    fn verify_accepts_valid_rank_two_datum() {
        let datum = even_datum_from_json(GOOD_N2, 12).unwrap();
        let report = verify_even_datum(&datum, 12).unwrap();
        assert!(report.is_clean(), "failures: {:?}", report.failures);
        // determinism: same input, same report shape
        let report2 = verify_even_datum(&datum, 12).unwrap();
        assert_eq!(report.failures.len(), report2.failures.len());
    }
}
