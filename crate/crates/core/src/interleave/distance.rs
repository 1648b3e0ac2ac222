use std::collections::BTreeSet;
use std::fmt;

use super::complex::{derived_interleaving, search_homotopy_interleaving, DerivedMode};
use super::module::search_module_interleaving;
use super::{InterleavingCertificate, Level};
use crate::complexes::{cohomology_presentation, FreeChainComplex};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, is_negative, Field, Rational};
use crate::grading::{critical_grid, Grade};
use crate::presentation::{minimal_free_resolution, Presentation};

fn all_grades(p: &Presentation) -> Vec<Grade> {
    p.grades().cloned().collect()
}

/// Rank test for the impossibility of an ε-interleaving.
///
/// If `M` and `N` are ε-interleaved then `s_{2ε}` on `M` factors through
/// `N(s + ε)`, so `rank M(s ≤ s + 2ε) ≤ dim N(s + ε)` at every `s`, and
/// symmetrically. Returns `true` when this fails somewhere on the critical
/// grid, which proves no ε-interleaving exists.
pub fn rank_obstruction(m: &Presentation, n: &Presentation, epsilon: &Rational) -> Result<bool> {
    if m.n() != n.n() {
        return Err(Error::Dimension("modules over different gradings".into()));
    }
    if is_negative(epsilon) {
        return Err(Error::InvalidArgument("ε must be nonnegative".into()));
    }
    let mut grades = all_grades(m);
    grades.extend(all_grades(n));
    if grades.is_empty() {
        return Ok(false);
    }
    let two = epsilon + epsilon;
    let grid = critical_grid(&grades, &[epsilon.clone(), two.clone()])?;
    for s in grid.points() {
        let (near, far) = (s.translate(epsilon), s.translate(&two));
        for (a, b) in [(m, n), (n, m)] {
            if a.structure_map(&s, &far)?.rank() > b.evaluate(&near).dim() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Rank obstruction on every cohomology module; a homotopy ε-interleaving
/// of complexes induces ε-interleavings of all of them.
pub fn complex_rank_obstruction(
    x: &FreeChainComplex,
    y: &FreeChainComplex,
    epsilon: &Rational,
) -> Result<bool> {
    let mut degrees: BTreeSet<i32> = x.degrees().into_iter().collect();
    degrees.extend(y.degrees());
    for j in degrees {
        let (hx, hy) = (cohomology_presentation(x, j)?, cohomology_presentation(y, j)?);
        if rank_obstruction(&hx, &hy, epsilon)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `{0} ∪ {|u − v|, |u − v|/2}` over pairs of coordinates on the same axis.
pub fn candidate_epsilons<'a>(grades: impl IntoIterator<Item = &'a Grade>) -> Vec<Rational> {
    let mut axes: Vec<BTreeSet<Rational>> = Vec::new();
    for g in grades {
        if axes.len() < g.dim() {
            axes.resize(g.dim(), BTreeSet::new());
        }
        for (axis, c) in axes.iter_mut().zip(g.coords()) {
            axis.insert(c.clone());
        }
    }
    let mut out = BTreeSet::from([int(0)]);
    let two = int(2);
    for axis in &axes {
        for u in axis {
            for v in axis.range(u.clone()..) {
                let d = v - u;
                out.insert(&d / &two);
                out.insert(d);
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchStatus {
    Found,
    NotFound,
    Exhausted,
}

impl SearchStatus {
    pub fn name(self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::NotFound => "none",
            SearchStatus::Exhausted => "budget-exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The rank obstruction rules out an interleaving at this ε.
    Obstruction { epsilon: Rational },
    /// A verified certificate exists at this ε.
    Certificate { epsilon: Rational },
    /// Exhaustive search over the field found nothing at this ε.
    NoCertificate { epsilon: Rational },
    /// The search budget ran out at this ε.
    BudgetExhausted { epsilon: Rational, budget: u64 },
}

impl Evidence {
    pub fn epsilon(&self) -> &Rational {
        match self {
            Evidence::Obstruction { epsilon }
            | Evidence::Certificate { epsilon }
            | Evidence::NoCertificate { epsilon }
            | Evidence::BudgetExhausted { epsilon, .. } => epsilon,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::Obstruction { .. } => "obstruction",
            Evidence::Certificate { .. } => "certificate",
            Evidence::NoCertificate { .. } => "no-certificate",
            Evidence::BudgetExhausted { .. } => "budget-exhausted",
        }
    }
}

/// A verified bracket `lower ≤ d ≤ upper` for an interleaving distance.
///
/// `lower_excluded` records that no interleaving exists at `lower` itself;
/// `upper_attained` that a certificate exists at `upper` itself rather than
/// at every larger value. Lower bounds come only from rank obstructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceBracket {
    pub level: Level,
    pub field: Field,
    pub lower: Rational,
    pub lower_excluded: bool,
    pub upper: Option<Rational>,
    pub upper_attained: bool,
    pub evidence: Vec<Evidence>,
    pub certificate: Option<InterleavingCertificate>,
}

impl DistanceBracket {
    /// Upper equals lower.
    pub fn is_tight(&self) -> bool {
        self.upper.as_ref() == Some(&self.lower)
    }
}

impl fmt::Display for DistanceBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let upper = self
            .upper
            .as_ref()
            .map_or_else(|| "inf".to_string(), format_rational);
        write!(
            f,
            "[{}, {}{}",
            format_rational(&self.lower),
            upper,
            if self.upper_attained { "]" } else { ")" }
        )
    }
}

fn sweep(
    level: Level,
    field: Field,
    candidates: &[Rational],
    mut obstructed: impl FnMut(&Rational) -> Result<bool>,
    mut search: impl FnMut(&Rational) -> Result<Option<InterleavingCertificate>>,
) -> Result<DistanceBracket> {
    let mut bracket = DistanceBracket {
        level,
        field,
        lower: int(0),
        lower_excluded: false,
        upper: None,
        upper_attained: false,
        evidence: Vec::new(),
        certificate: None,
    };
    // status is constant strictly between consecutive candidates, so each
    // candidate and one interior point of each gap decide everything
    let two = int(2);
    let mut points: Vec<(Rational, Option<Rational>)> = Vec::new();
    for (k, c) in candidates.iter().enumerate() {
        points.push((c.clone(), None));
        let next = candidates.get(k + 1).cloned().unwrap_or_else(|| c + int(1));
        points.push(((c + &next) / &two, Some(next)));
    }
    for (k, (t, gap_end)) in points.iter().enumerate() {
        if obstructed(t)? {
            bracket.evidence.push(Evidence::Obstruction { epsilon: t.clone() });
            match gap_end {
                Some(end) if k + 1 < points.len() => {
                    bracket.lower = end.clone();
                    bracket.lower_excluded = false;
                }
                Some(_) => {}
                None => {
                    bracket.lower = t.clone();
                    bracket.lower_excluded = true;
                }
            }
            continue;
        }
        match search(t) {
            Ok(Some(cert)) => {
                bracket.evidence.push(Evidence::Certificate { epsilon: t.clone() });
                match gap_end {
                    None => {
                        bracket.upper = Some(t.clone());
                        bracket.upper_attained = true;
                    }
                    Some(_) => {
                        // every value in the open gap works, so the gap's
                        // left end bounds the infimum
                        bracket.upper = Some(candidates[k / 2].clone());
                        bracket.upper_attained = false;
                    }
                }
                bracket.certificate = Some(cert);
                break;
            }
            Ok(None) => bracket.evidence.push(Evidence::NoCertificate { epsilon: t.clone() }),
            Err(Error::BudgetExhausted { budget }) => bracket
                .evidence
                .push(Evidence::BudgetExhausted { epsilon: t.clone(), budget }),
            Err(e) => return Err(e),
        }
    }
    if let Some(u) = &bracket.upper {
        if u < &bracket.lower {
            bracket.lower = u.clone();
        }
    }
    Ok(bracket)
}

/// Brackets the interleaving distance of `M` and `N` at the given level.
///
/// Searches run over the prime field `field`, and all modules are
/// converted to it first; the bracket is about the modules over that field.
pub fn estimate_distance(
    m: &Presentation,
    n: &Presentation,
    level: Level,
    field: Field,
    budget: u64,
) -> Result<DistanceBracket> {
    if m.n() != n.n() {
        return Err(Error::Dimension("modules over different gradings".into()));
    }
    let (m, n) = (m.convert(field)?, n.convert(field)?);
    let candidates = candidate_epsilons(m.grades().chain(n.grades()));
    let obstruct = |t: &Rational| rank_obstruction(&m, &n, t);
    match level {
        Level::Module => sweep(level, field, &candidates, obstruct, |t| {
            search_module_interleaving(&m, &n, t, field, budget)
        }),
        Level::Homotopy => {
            let (px, py) = (minimal_free_resolution(&m)?, minimal_free_resolution(&n)?);
            sweep(level, field, &candidates, obstruct, |t| {
                search_homotopy_interleaving(&px, &py, t, field, budget)
            })
        }
        Level::Derived => sweep(level, field, &candidates, obstruct, |t| {
            derived_interleaving(&m, &n, t, DerivedMode::Search { field, budget })
        }),
    }
}

/// Brackets the homotopy interleaving distance of two complexes, with lower
/// bounds from rank obstructions on their cohomology modules.
pub fn estimate_complex_distance(
    x: &FreeChainComplex,
    y: &FreeChainComplex,
    field: Field,
    budget: u64,
) -> Result<DistanceBracket> {
    if x.n() != y.n() {
        return Err(Error::Dimension("complexes over different gradings".into()));
    }
    let (x, y) = (x.convert(field)?, y.convert(field)?);
    let candidates = candidate_epsilons(x.grades().chain(y.grades()));
    sweep(
        Level::Homotopy,
        field,
        &candidates,
        |t| complex_rank_obstruction(&x, &y, t),
        |t| search_homotopy_interleaving(&x, &y, t, field, budget),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryRow {
    pub epsilon: Rational,
    pub module: SearchStatus,
    pub homotopy: SearchStatus,
    pub derived: SearchStatus,
}

impl IsometryRow {
    /// All conclusive levels agree.
    pub fn agrees(&self) -> bool {
        let conclusive: Vec<SearchStatus> = [self.module, self.homotopy, self.derived]
            .into_iter()
            .filter(|s| *s != SearchStatus::Exhausted)
            .collect();
        conclusive.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryReport {
    pub field: Field,
    pub rows: Vec<IsometryRow>,
}

impl IsometryReport {
    /// Values of ε at which the levels disagree.
    pub fn violations(&self) -> Vec<&Rational> {
        self.rows
            .iter()
            .filter(|r| !r.agrees())
            .map(|r| &r.epsilon)
            .collect()
    }
}

fn status(result: Result<Option<InterleavingCertificate>>) -> Result<SearchStatus> {
    match result {
        Ok(Some(cert)) => {
            debug_assert!(cert.verify());
            Ok(SearchStatus::Found)
        }
        Ok(None) => Ok(SearchStatus::NotFound),
        Err(Error::BudgetExhausted { .. }) => Ok(SearchStatus::Exhausted),
        Err(e) => Err(e),
    }
}

/// Decides ε-interleaving existence at all three levels for each ε.
pub fn isometry_check(
    m: &Presentation,
    n: &Presentation,
    epsilons: &[Rational],
    field: Field,
    budget: u64,
) -> Result<IsometryReport> {
    let (m, n) = (m.convert(field)?, n.convert(field)?);
    let (px, py) = (minimal_free_resolution(&m)?, minimal_free_resolution(&n)?);
    let mut rows = Vec::with_capacity(epsilons.len());
    for eps in epsilons {
        rows.push(IsometryRow {
            epsilon: eps.clone(),
            module: status(search_module_interleaving(&m, &n, eps, field, budget))?,
            homotopy: status(search_homotopy_interleaving(&px, &py, eps, field, budget))?,
            derived: status(derived_interleaving(
                &m,
                &n,
                eps,
                DerivedMode::Search { field, budget },
            ))?,
        });
    }
    Ok(IsometryReport { field, rows })
}
