use std::collections::BTreeMap;

use super::{ChainMap, FreeChainComplex};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::freemod::GradedMatrix;
use crate::grading::Grid;
use crate::presentation::{kernel_presentation, minimize, FPMorphism, Presentation};

/// Solves `d · u = v` using only the columns of `d` alive at `a`, and
/// returns `u` as a full vector over the source of `d`.
fn solve_alive(d: &GradedMatrix, alive_at: &crate::grading::Grade, v: &[Scalar]) -> Option<Vec<Scalar>> {
    let field = d.field();
    let alive = d.source().evaluate(alive_at);
    let rows: Vec<usize> = (0..d.target().rank()).collect();
    let u = d.entries().select(&rows, &alive).solve(v).expect("lengths agree")?;
    let mut full = vec![field.zero(); d.source().rank()];
    for (value, &i) in u.into_iter().zip(&alive) {
        full[i] = value;
    }
    Some(full)
}

/// A chain map `PX → PY` inducing `f` on degree-0 cokernels.
///
/// The source and target of `f` must have the same generators as the
/// cokernel presentations of `PX` and `PY` and the same relation span at
/// every point (for instance `PY` may be a shifted resolution when `f` maps
/// into a shifted module). Built degree by degree, each column solved over
/// the generators alive at its grade.
pub fn lift_resolution(f: &FPMorphism, px: &FreeChainComplex, py: &FreeChainComplex) -> Result<ChainMap> {
    if !presents_same(f.source(), &px.cokernel_presentation()) {
        return Err(Error::LiftInconsistent(
            "source complex does not present the source module".into(),
        ));
    }
    if !presents_same(f.target(), &py.cokernel_presentation()) {
        return Err(Error::LiftInconsistent(
            "target complex does not present the target module".into(),
        ));
    }
    let field = f.source().field();
    let mut components = BTreeMap::new();
    let lifts: Vec<Vec<Scalar>> = (0..f.source().num_generators())
        .map(|j| f.image_lift(j))
        .collect();
    let top = GradedMatrix::new(
        px.term(0).clone(),
        py.term(0).clone(),
        Matrix::from_columns(field, py.term(0).rank(), &lifts),
    )?;
    let lowest = px.support().map_or(0, |(lo, _)| lo);
    let mut previous = top.clone();
    components.insert(0, top);
    for k in (lowest..0).rev() {
        let dx = px.differential(k);
        let pushed = previous.compose(&dx)?;
        let dy = py.differential(k);
        let mut columns = Vec::with_capacity(dx.source().rank());
        for c in 0..dx.source().rank() {
            let v = pushed.entries().column(c);
            let u = solve_alive(&dy, dx.source().grade(c), &v).ok_or_else(|| {
                Error::LiftInconsistent(format!("no lift for column {c} in degree {k}"))
            })?;
            columns.push(u);
        }
        let component = GradedMatrix::new(
            px.term(k).clone(),
            py.term(k).clone(),
            Matrix::from_columns(field, py.term(k).rank(), &columns),
        )?;
        previous = component.clone();
        components.insert(k, component);
    }
    ChainMap::new(px.clone(), py.clone(), components)
}

/// The morphism `H⁰(φ)` between the degree-0 cokernels.
pub fn induced_cokernel_map(phi: &ChainMap) -> Result<FPMorphism> {
    let top = phi.component(0);
    let lifts: Vec<Vec<Scalar>> = (0..top.source().rank())
        .map(|j| top.entries().column(j))
        .collect();
    FPMorphism::from_lifts(
        phi.source().cokernel_presentation(),
        phi.target().cokernel_presentation(),
        &lifts,
    )
}

/// A minimal presentation of the cohomology `H^j(X) = ker ∂^j / im ∂^{j−1}`.
pub fn cohomology_presentation(x: &FreeChainComplex, j: i32) -> Result<Presentation> {
    let field = x.field();
    let (kernel, incl) = kernel_presentation(&x.differential(j))?;
    let below = x.differential(j - 1);
    let mut relations = Vec::with_capacity(below.source().rank());
    for c in 0..below.source().rank() {
        let a = below.source().grade(c);
        let v = below.entries().column(c);
        let u = solve_alive(&incl, a, &v).expect("boundaries are cycles");
        relations.push((a.clone(), u));
    }
    Ok(minimize(&Presentation::new(field, kernel, relations)?))
}

/// Equal generators and equal relation spans everywhere, so that both
/// presentations share their evaluation bases.
pub(crate) fn presents_same(p: &Presentation, q: &Presentation) -> bool {
    if p == q {
        return true;
    }
    if p.n() != q.n() || p.field() != q.field() {
        return false;
    }
    match Grid::spanned_by(p.grades().chain(q.grades())) {
        Ok(grid) => same_module(p, q, &grid),
        Err(_) => p.generators() == q.generators(),
    }
}

fn same_module(p: &Presentation, q: &Presentation, grid: &Grid) -> bool {
    p.generators() == q.generators()
        && grid
            .points()
            .iter()
            .all(|s| p.evaluate(s).relation_span() == q.evaluate(s).relation_span())
}

/// Whether `X` is a free resolution of the module presented by `p`.
///
/// Checks the complex axiom, that nothing sits in positive degrees,
/// exactness in negative degrees at every point of the grid spanned by all
/// grades, and that `coker(∂^{-1})` is `p` or its minimization with the
/// same relation spans pointwise.
pub fn verify_resolution(p: &Presentation, x: &FreeChainComplex) -> bool {
    if x.n() != p.n() || x.field() != p.field() || !x.validate() {
        return false;
    }
    let Some((lowest, highest)) = x.support() else {
        // only a presentation of the zero module
        return minimize(p).num_generators() == 0;
    };
    if highest > 0 {
        return false;
    }
    let Ok(grid) = Grid::spanned_by(x.grades().chain(p.grades())) else {
        return false;
    };
    let q = x.cokernel_presentation();
    if !same_module(p, &q, &grid) && !same_module(&minimize(p), &q, &grid) {
        return false;
    }
    grid.points().iter().all(|s| {
        (lowest..0).all(|k| {
            let d = x.differential(k).at(s);
            let kernel_dim = d.cols() - d.rank();
            kernel_dim == x.differential(k - 1).at(s).rank()
        })
    })
}
