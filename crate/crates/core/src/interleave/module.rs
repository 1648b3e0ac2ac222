use super::enumerate::{candidate_count, Coefficients};
use super::InterleavingCertificate;
use crate::error::{Error, Result};
use crate::exact::{is_negative, Field, Matrix, Rational, Scalar};
use crate::presentation::{hom_space, smoothing_fp, FPMorphism, Presentation};

/// Whether `g[ε]∘f = s_{2ε}` on `M` and `f[ε]∘g = s_{2ε}` on `N`, exactly.
pub fn verify_module_interleaving(f: &FPMorphism, g: &FPMorphism, epsilon: &Rational) -> bool {
    let (m, n) = (f.source(), g.source());
    if is_negative(epsilon) || f.target() != &n.shift(epsilon) || g.target() != &m.shift(epsilon) {
        return false;
    }
    if !f.is_well_defined() || !g.is_well_defined() {
        return false;
    }
    let two = epsilon + epsilon;
    let check = |outer: &FPMorphism, inner: &FPMorphism, p: &Presentation| {
        matches!(
            (outer.shift(epsilon).compose(inner), smoothing_fp(p, &two)),
            (Ok(c), Ok(s)) if c == s
        )
    };
    check(g, f, m) && check(f, g, n)
}

/// Searches for an ε-interleaving over the prime field `field`.
///
/// Enumerates the smaller of the two Hom spaces over GF(p) in lexicographic
/// coefficient order; for each candidate the two composite conditions are
/// linear in the other map and are solved exactly. `Ok(None)` means no
/// interleaving exists with coefficients in `field`; `BudgetExhausted` means
/// the budget ran out first.
pub fn search_module_interleaving(
    m: &Presentation,
    n: &Presentation,
    epsilon: &Rational,
    field: Field,
    budget: u64,
) -> Result<Option<InterleavingCertificate>> {
    if is_negative(epsilon) {
        return Err(Error::InvalidArgument("ε must be nonnegative".into()));
    }
    if !matches!(field, Field::Prime(_)) {
        return Err(Error::InvalidField("searches run over a prime field".into()));
    }
    let (m, n) = (m.convert(field)?, n.convert(field)?);
    let forward = hom_space(&m, &n.shift(epsilon))?;
    let backward = hom_space(&n, &m.shift(epsilon))?;
    if forward.len() <= backward.len() {
        search_side(&m, &n, epsilon, &forward, &backward, budget)
    } else {
        let found = search_side(&n, &m, epsilon, &backward, &forward, budget)?;
        Ok(found.map(|c| match c.maps {
            super::CertificateMaps::Module { forward, backward } => {
                InterleavingCertificate::module(c.epsilon, backward, forward)
            }
            _ => unreachable!("module search returns module certificates"),
        }))
    }
}

/// Enumerates `f` over `enumerated` and solves for `g` in the span of
/// `solved`.
fn search_side(
    m: &Presentation,
    n: &Presentation,
    epsilon: &Rational,
    enumerated: &[FPMorphism],
    solved: &[FPMorphism],
    budget: u64,
) -> Result<Option<InterleavingCertificate>> {
    let field = m.field();
    let two = epsilon + epsilon;
    let target_m = smoothing_fp(m, &two)?.flatten();
    let target_n = smoothing_fp(n, &two)?.flatten();
    let zero_f = FPMorphism::zero(m, &n.shift(epsilon))?;
    let zero_g = FPMorphism::zero(n, &m.shift(epsilon))?;

    // columns[i][k] = (g_k[ε]∘f_i, f_i[ε]∘g_k), flattened and stacked
    let mut columns: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(enumerated.len());
    for f in enumerated {
        let shifted = f.shift(epsilon);
        let mut per_g = Vec::with_capacity(solved.len());
        for g in solved {
            let mut col = g.shift(epsilon).compose(f)?.flatten();
            col.extend(shifted.compose(g)?.flatten());
            per_g.push(col);
        }
        columns.push(per_g);
    }
    let rows = target_m.len() + target_n.len();
    let mut rhs = target_m;
    rhs.extend(target_n);

    let total = candidate_count(field, enumerated.len());
    for (tried, coeffs) in Coefficients::new(field, enumerated.len())?.enumerate() {
        if tried as u64 >= budget {
            return Err(Error::BudgetExhausted { budget });
        }
        let mut system = Matrix::zeros(field, rows, solved.len());
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
        if let Some(y) = system.solve(&rhs)? {
            let f = if enumerated.is_empty() {
                zero_f.clone()
            } else {
                FPMorphism::combination(enumerated, &coeffs)
            };
            let g = if solved.is_empty() {
                zero_g.clone()
            } else {
                FPMorphism::combination(solved, &y)
            };
            let cert = InterleavingCertificate::module(epsilon.clone(), f, g);
            debug_assert!(cert.verify());
            return Ok(Some(cert));
        }
        if tried as u64 + 1 >= total {
            break;
        }
    }
    Ok(None)
}
