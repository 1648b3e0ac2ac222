//! Minimal generators, syzygies and free resolutions by grid linear algebra.
//!
//! Everything here walks the product grid of the relevant coordinates in
//! lexicographic order, which is a linear extension of the product order.
//! At each point `s` the span of what was already chosen at grades `≤ s`
//! stands in for the image from the grid predecessors of `s`; new
//! generators complete it to the full space at `s`.

use std::collections::BTreeMap;

use super::Presentation;
use crate::complexes::FreeChainComplex;
use crate::error::Result;
use crate::exact::{Echelon, Field, Matrix, Scalar};
use crate::freemod::{FreeModule, GradedMatrix};
use crate::grading::{Grade, Grid};

/// Greedy minimal generators of a pointwise kernel inside a free module,
/// each scaled so its first nonzero entry is one.
///
/// `map_at(s, alive)` returns the matrix of the map at `s` whose columns are
/// indexed by the alive generators of `source`.
fn minimal_kernel_generators(
    field: Field,
    source: &FreeModule,
    points: &[Grade],
    mut map_at: impl FnMut(&Grade, &[usize]) -> Matrix,
) -> Vec<(Grade, Vec<Scalar>)> {
    let mut chosen: Vec<(Grade, Vec<Scalar>)> = Vec::new();
    for s in points {
        let alive = source.evaluate(s);
        if alive.is_empty() {
            continue;
        }
        let kernel = map_at(s, &alive).kernel_basis();
        if kernel.is_empty() {
            continue;
        }
        let mut below = Echelon::spanned_by(
            field,
            source.rank(),
            chosen
                .iter()
                .filter(|(g, _)| g.le(s))
                .map(|(_, v)| v.as_slice()),
        );
        if below.rank() >= kernel.len() {
            // everything at s already comes from below
            continue;
        }
        for k in kernel {
            let mut full = vec![field.zero(); source.rank()];
            for (value, &idx) in k.into_iter().zip(&alive) {
                full[idx] = value;
            }
            if below.insert(&full) {
                let lead = full.iter().find(|x| !x.is_zero()).expect("nonzero kernel vector");
                let inv = lead.inverse().expect("nonzero");
                let full = full.iter().map(|x| x * &inv).collect();
                chosen.push((s.clone(), full));
            }
        }
    }
    chosen
}

/// Minimal generators of `ker φ` and the inclusion `K → source(φ)`.
pub fn kernel_presentation(phi: &GradedMatrix) -> Result<(FreeModule, GradedMatrix)> {
    let field = phi.field();
    let source = phi.source();
    let n = source.n();
    if source.is_zero() {
        let k = FreeModule::empty(n);
        return Ok((k.clone(), GradedMatrix::zero(field, k, source.clone())));
    }
    let grid = Grid::spanned_by(source.grades().iter().chain(phi.target().grades()))?;
    let all_rows: Vec<usize> = (0..phi.target().rank()).collect();
    let chosen = minimal_kernel_generators(field, source, &grid.points(), |_, alive| {
        phi.entries().select(&all_rows, alive)
    });
    let (grades, columns): (Vec<Grade>, Vec<Vec<Scalar>>) = chosen.into_iter().unzip();
    let kernel = FreeModule::new(n, grades)?;
    let incl = GradedMatrix::new(
        kernel.clone(),
        source.clone(),
        Matrix::from_columns(field, source.rank(), &columns),
    )?;
    Ok((kernel, incl))
}

/// An isomorphic presentation with minimal generators and minimal relations.
///
/// Generators are a subset of the input generators, ordered by grade; the
/// relations are minimal generators of the kernel of the induced map from
/// the free module on that subset onto the module.
pub fn minimize(p: &Presentation) -> Presentation {
    let field = p.field();
    let gens = p.generators();
    let n = p.n();
    if gens.is_zero() {
        return Presentation::free(field, FreeModule::empty(n));
    }

    let mut gen_points: Vec<Grade> = gens.grades().to_vec();
    gen_points.sort();
    gen_points.dedup();
    let mut selected: Vec<usize> = Vec::new();
    for s in &gen_points {
        let eval = p.evaluate(s);
        let mut below = Echelon::new(field, eval.dim());
        for &k in &selected {
            if gens.grade(k).le(s) {
                below.insert(&eval.generator(k));
            }
        }
        for &b in eval.basis() {
            if gens.grade(b) == s && below.insert(&eval.generator(b)) {
                selected.push(b);
            }
        }
    }

    let kept = gens.restrict(&selected);
    let points = p.grid().expect("non-empty presentation").points();
    let relations = minimal_kernel_generators(field, &kept, &points, |s, alive| {
        let eval = p.evaluate(s);
        let columns: Vec<Vec<Scalar>> = alive
            .iter()
            .map(|&a| eval.generator(selected[a]))
            .collect();
        Matrix::from_columns(field, eval.dim(), &columns)
    });
    Presentation::new(field, kept, relations).expect("minimal relations are admissible")
}

fn resolve_from(start: &Presentation) -> Result<FreeChainComplex> {
    let field = start.field();
    let n = start.n();
    let mut terms = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    terms.insert(0, start.generators().clone());
    if start.num_relations() > 0 {
        terms.insert(-1, start.relation_module().clone());
        differentials.insert(-1, start.relation_matrix().clone());
        let mut degree = -1;
        loop {
            let (kernel, incl) = kernel_presentation(&differentials[&degree])?;
            if kernel.is_zero() {
                break;
            }
            degree -= 1;
            terms.insert(degree, kernel);
            differentials.insert(degree, incl);
            assert!(
                degree >= -(n as i32) - 2,
                "resolution longer than the syzygy bound allows"
            );
        }
    }
    FreeChainComplex::new(n, field, terms, differentials)
}

/// The minimal free resolution `0 → F^{-k} → … → F^{-1} → F^0 → 0`.
///
/// Its degree-0 cokernel is exactly [`minimize`]`(p)`.
pub fn minimal_free_resolution(p: &Presentation) -> Result<FreeChainComplex> {
    resolve_from(&minimize(p))
}

/// A free resolution whose first two terms are the presentation as given;
/// its degree-0 cokernel is exactly `p`. Not minimal in general.
pub fn free_resolution(p: &Presentation) -> Result<FreeChainComplex> {
    resolve_from(p)
}

/// `β^i(P) = ξ(π^{-i}(P))`; empty beyond the resolution length.
pub fn betti(p: &Presentation, i: usize) -> Result<BTreeMap<Grade, usize>> {
    let res = minimal_free_resolution(p)?;
    Ok(res.term(-(i as i32)).xi())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Field};
    use crate::standard;

    const Q: Field = Field::Rational;

    fn g(c: &[i64]) -> Grade {
        Grade::from_ints(c)
    }

    #[test]
    fn kernel_of_the_box_relations() {
        let mid = FreeModule::from_ints(2, &[&[1, 0], &[0, 1]]);
        let bottom = FreeModule::from_ints(2, &[&[0, 0]]);
        let phi = GradedMatrix::new(mid, bottom, Matrix::from_i64(Q, &[&[1, 1]])).unwrap();
        let (k, incl) = kernel_presentation(&phi).unwrap();
        assert_eq!(k.grades(), &[g(&[1, 1])]);
        assert_eq!(incl.entries(), &Matrix::from_i64(Q, &[&[1], &[-1]]));
        assert!(phi.compose(&incl).unwrap().is_zero());
    }

    #[test]
    fn kernel_trivial_cases() {
        let f = FreeModule::from_ints(2, &[&[0, 0]]);
        let (k, _) = kernel_presentation(&GradedMatrix::identity(Q, f.clone())).unwrap();
        assert!(k.is_zero());
        let zero = GradedMatrix::zero(Q, f.clone(), FreeModule::from_ints(2, &[&[0, 0]]));
        let (k, incl) = kernel_presentation(&zero).unwrap();
        assert_eq!(k, f);
        assert_eq!(incl, GradedMatrix::identity(Q, f));
    }

    #[test]
    fn minimize_keeps_minimal_input() {
        let n1 = standard::quadrant_plus_box(Q, &int(1));
        let m = minimize(&n1);
        assert_eq!(m.num_generators(), 2);
        assert_eq!(m.num_relations(), 2);
        assert_eq!(minimize(&m), m);
    }

    #[test]
    fn minimize_drops_cancelled_generator() {
        // F_(0,0) plus a second generator at (0,0) killed by a relation at (0,0)
        let p = Presentation::from_ints(Q, &[&[0, 0], &[0, 0]], &[(&[0, 0], &[0, 1])]).unwrap();
        let m = minimize(&p);
        assert_eq!(m.num_generators(), 1);
        assert_eq!(m.num_relations(), 0);
    }

    #[test]
    fn minimize_drops_identified_generator() {
        // a generator at (1,1) identified with the image of the one at (0,0)
        let p = Presentation::from_ints(Q, &[&[0, 0], &[1, 1]], &[(&[1, 1], &[1, -1])]).unwrap();
        let m = minimize(&p);
        assert_eq!(m.generators().grades(), &[g(&[0, 0])]);
        assert_eq!(m.num_relations(), 0);
    }

    #[test]
    fn resolutions_of_the_running_examples() {
        let m = standard::quadrant(Q, 2);
        let res = minimal_free_resolution(&m).unwrap();
        assert_eq!(res.support(), Some((0, 0)));
        assert_eq!(res.term(0).grades(), &[g(&[0, 0])]);

        let n1 = standard::quadrant_plus_box(Q, &int(1));
        let res = minimal_free_resolution(&n1).unwrap();
        assert_eq!(res.term(0).grades(), &[g(&[0, 0]), g(&[0, 0])]);
        assert_eq!(res.term(-1).grades(), &[g(&[0, 1]), g(&[1, 0])]);
        assert_eq!(res.term(-2).grades(), &[g(&[1, 1])]);
        assert!(res.validate());

        let open_box = standard::open_box(Q, &int(1));
        let res = minimal_free_resolution(&open_box).unwrap();
        assert_eq!(res.term(0).xi(), FreeModule::from_ints(2, &[&[0, 0]]).xi());
        assert_eq!(res.term(-1).xi(), FreeModule::from_ints(2, &[&[1, 0], &[0, 1]]).xi());
        assert_eq!(res.term(-2).xi(), FreeModule::from_ints(2, &[&[1, 1]]).xi());
    }

    #[test]
    fn betti_of_the_running_examples() {
        let n1 = standard::quadrant_plus_box(Q, &int(1));
        assert_eq!(betti(&n1, 0).unwrap(), BTreeMap::from([(g(&[0, 0]), 2)]));
        assert_eq!(
            betti(&n1, 1).unwrap(),
            BTreeMap::from([(g(&[0, 1]), 1), (g(&[1, 0]), 1)])
        );
        assert_eq!(betti(&n1, 2).unwrap(), BTreeMap::from([(g(&[1, 1]), 1)]));
        assert!(betti(&n1, 3).unwrap().is_empty());
        let m = standard::quadrant(Q, 2);
        assert_eq!(betti(&m, 0).unwrap(), BTreeMap::from([(g(&[0, 0]), 1)]));
        assert!(betti(&m, 1).unwrap().is_empty());
    }
}
