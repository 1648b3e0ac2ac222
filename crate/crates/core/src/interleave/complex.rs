use super::certificate::homotopy_witnesses;
use super::enumerate::{candidate_count, Coefficients};
use super::{CertificateMaps, InterleavingCertificate, Level};
use crate::complexes::{
    chain_map_space, homotopy_operator, lift_resolution, nullhomotopic_span, ChainMap,
    FreeChainComplex, Homotopy,
};
use crate::error::{Error, Result};
use crate::exact::{is_negative, Field, Matrix, Rational, Scalar};
use crate::presentation::{free_resolution, FPMorphism, Presentation};

/// Witness homotopies for `ψ[ε]φ ≃ s_{2ε}` and `φ[ε]ψ ≃ s_{2ε}`, or `None`.
pub fn verify_homotopy_interleaving(
    phi: &ChainMap,
    psi: &ChainMap,
    epsilon: &Rational,
) -> Option<(Homotopy, Homotopy)> {
    if is_negative(epsilon) || !phi.is_chain_map() || !psi.is_chain_map() {
        return None;
    }
    homotopy_witnesses(phi, psi, epsilon)
}

/// Chain maps `X → Y` spanning the homotopy classes, one per class basis
/// element.
fn class_representatives(x: &FreeChainComplex, y: &FreeChainComplex) -> Vec<ChainMap> {
    let (layout, mut span) = nullhomotopic_span(x, y);
    chain_map_space(x, y)
        .into_iter()
        .filter(|f| span.insert(&f.flatten(&layout)))
        .collect()
}

/// Searches for a homotopy ε-interleaving over the prime field `field`.
///
/// One side is enumerated over GF(p)-combinations of homotopy-class
/// representatives of chain maps; the interleaving conditions only depend
/// on homotopy classes, so this covers every chain map up to homotopy. For
/// each candidate the other map and both homotopies are solved for jointly.
pub fn search_homotopy_interleaving(
    x: &FreeChainComplex,
    y: &FreeChainComplex,
    epsilon: &Rational,
    field: Field,
    budget: u64,
) -> Result<Option<InterleavingCertificate>> {
    search_complexes(x, y, epsilon, field, budget, Level::Homotopy)
}

fn search_complexes(
    x: &FreeChainComplex,
    y: &FreeChainComplex,
    epsilon: &Rational,
    field: Field,
    budget: u64,
    level: Level,
) -> Result<Option<InterleavingCertificate>> {
    if is_negative(epsilon) {
        return Err(Error::InvalidArgument("ε must be nonnegative".into()));
    }
    if !matches!(field, Field::Prime(_)) {
        return Err(Error::InvalidField("searches run over a prime field".into()));
    }
    if x.n() != y.n() {
        return Err(Error::Dimension("complexes over different gradings".into()));
    }
    let (x, y) = (x.convert(field)?, y.convert(field)?);
    let forward = class_representatives(&x, &y.shift(epsilon));
    let backward = class_representatives(&y, &x.shift(epsilon));
    let found = if forward.len() <= backward.len() {
        search_side(&x, &y, epsilon, &forward, &backward, budget)?
    } else {
        search_side(&y, &x, epsilon, &backward, &forward, budget)?.map(|(f, g)| (g, f))
    };
    Ok(found.and_then(|(f, g)| {
        let cert = InterleavingCertificate::complex(level, epsilon.clone(), f, g);
        debug_assert!(cert.is_some());
        cert
    }))
}

fn stack(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = a.to_vec();
    out.extend_from_slice(b);
    out
}

fn search_side(
    x: &FreeChainComplex,
    y: &FreeChainComplex,
    epsilon: &Rational,
    enumerated: &[ChainMap],
    solved: &[ChainMap],
    budget: u64,
) -> Result<Option<(ChainMap, ChainMap)>> {
    let field = x.field();
    let two = epsilon + epsilon;
    let (x2, y2) = (x.shift(&two), y.shift(&two));
    let (_, layout_x, op_x) = homotopy_operator(x, &x2);
    let (_, layout_y, op_y) = homotopy_operator(y, &y2);
    let rhs = stack(
        &ChainMap::smoothing(x, &two)?.flatten(&layout_x),
        &ChainMap::smoothing(y, &two)?.flatten(&layout_y),
    );

    // columns[i][k]: the composites of enumerated[i] with solved[k]
    let mut columns: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(enumerated.len());
    for f in enumerated {
        let shifted = f.shift(epsilon);
        let mut per = Vec::with_capacity(solved.len());
        for g in solved {
            per.push(stack(
                &g.shift(epsilon).compose(f)?.flatten(&layout_x),
                &shifted.compose(g)?.flatten(&layout_y),
            ));
        }
        columns.push(per);
    }

    let rows = layout_x.len() + layout_y.len();
    let (hx, hy) = (op_x.cols(), op_y.cols());
    let width = solved.len() + hx + hy;
    let mut base = Matrix::zeros(field, rows, width);
    let minus_one = -field.one();
    for r in 0..op_x.rows() {
        for c in 0..hx {
            let v = op_x.get(r, c);
            if !v.is_zero() {
                base.set(r, solved.len() + c, v * &minus_one);
            }
        }
    }
    for r in 0..op_y.rows() {
        for c in 0..hy {
            let v = op_y.get(r, c);
            if !v.is_zero() {
                base.set(layout_x.len() + r, solved.len() + hx + c, v * &minus_one);
            }
        }
    }

    let total = candidate_count(field, enumerated.len());
    for (tried, coeffs) in Coefficients::new(field, enumerated.len())?.enumerate() {
        if tried as u64 >= budget {
            return Err(Error::BudgetExhausted { budget });
        }
        let mut system = base.clone();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, col) in columns[i].iter().enumerate() {
                for (r, v) in col.iter().enumerate() {
                    if !v.is_zero() {
                        let sum = system.get(r, k) + &(c * v);
                        system.set(r, k, sum);
                    }
                }
            }
        }
        if let Some(sol) = system.solve(&rhs)? {
            let y_eps = y.shift(epsilon);
            let x_eps = x.shift(epsilon);
            let f = ChainMap::combination(x, &y_eps, enumerated, &coeffs)?;
            let g = ChainMap::combination(y, &x_eps, solved, &sol[..solved.len()])?;
            return Ok(Some((f, g)));
        }
        if tried as u64 + 1 >= total {
            break;
        }
    }
    Ok(None)
}

/// How the derived level is decided.
#[derive(Clone, Debug)]
pub enum DerivedMode {
    /// Search on projective replacements over a prime field.
    Search { field: Field, budget: u64 },
    /// Lift a given module-level pair to the replacements and verify it.
    Lift {
        forward: FPMorphism,
        backward: FPMorphism,
    },
}

/// Derived ε-interleaving of two modules, decided on projective
/// replacements.
///
/// The replacements are the free resolutions starting from the
/// presentations as given (not minimized), a second, independent choice of
/// projective replacement next to the minimal resolutions used at the
/// homotopy level.
pub fn derived_interleaving(
    m: &Presentation,
    n: &Presentation,
    epsilon: &Rational,
    mode: DerivedMode,
) -> Result<Option<InterleavingCertificate>> {
    if is_negative(epsilon) {
        return Err(Error::InvalidArgument("ε must be nonnegative".into()));
    }
    match mode {
        DerivedMode::Search { field, budget } => {
            let (m, n) = (m.convert(field)?, n.convert(field)?);
            let px = free_resolution(&m)?;
            let py = free_resolution(&n)?;
            search_complexes(&px, &py, epsilon, field, budget, Level::Derived)
        }
        DerivedMode::Lift { forward, backward } => {
            let px = free_resolution(forward.source())?;
            let py = free_resolution(backward.source())?;
            if forward.source() != m || backward.source() != n {
                return Err(Error::InvalidArgument(
                    "the given maps do not start at the given modules".into(),
                ));
            }
            let f = lift_resolution(&forward, &px, &py.shift(epsilon))?;
            let g = lift_resolution(&backward, &py, &px.shift(epsilon))?;
            Ok(InterleavingCertificate::complex(Level::Derived, epsilon.clone(), f, g))
        }
    }
}

impl InterleavingCertificate {
    /// The chain maps of a homotopy or derived certificate.
    pub fn chain_maps(&self) -> Option<(&ChainMap, &ChainMap)> {
        match &self.maps {
            CertificateMaps::Complex { forward, backward, .. } => Some((forward, backward)),
            CertificateMaps::Module { .. } => None,
        }
    }

    /// The module maps of a module certificate.
    pub fn module_maps(&self) -> Option<(&FPMorphism, &FPMorphism)> {
        match &self.maps {
            CertificateMaps::Module { forward, backward } => Some((forward, backward)),
            CertificateMaps::Complex { .. } => None,
        }
    }
}
