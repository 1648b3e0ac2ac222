//! Finitely presented persistence modules as cokernels of graded matrices.
//!
//! A [`Presentation`] holds a relation map `d: R → G` between free modules;
//! the module it presents is `coker d`. Values at a grade `s` are computed by
//! [`Presentation::evaluate`]: the span of the generators alive at `s`
//! modulo the relation columns alive at `s`. The quotient basis is the set of
//! alive generators that are not pivots of the reduced relation span, so
//! coordinates are canonical and morphisms can be compared entrywise.

mod morphism;
mod resolution;

pub use morphism::{hom_space, smoothing_fp, FPMorphism};
pub use resolution::{
    betti, free_resolution, kernel_presentation, minimal_free_resolution, minimize,
};

use crate::error::{Error, Result};
use crate::exact::{Echelon, Field, Matrix, Rational, Scalar};
use crate::freemod::{FreeModule, GradedMatrix};
use crate::grading::{Grade, Grid};

/// `coker(d)` for a relation matrix `d` from relations to generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    relations: GradedMatrix,
}

impl Presentation {
    pub fn from_matrix(relations: GradedMatrix) -> Presentation {
        Presentation { relations }
    }

    /// Builds a presentation from relation grades and coefficient vectors
    /// indexed by generator order.
    pub fn new(
        field: Field,
        generators: FreeModule,
        relations: Vec<(Grade, Vec<Scalar>)>,
    ) -> Result<Presentation> {
        let n = generators.n();
        let mut grades = Vec::with_capacity(relations.len());
        let mut columns = Vec::with_capacity(relations.len());
        for (grade, coeffs) in relations {
            if coeffs.len() != generators.rank() {
                return Err(Error::Shape(format!(
                    "relation at {grade} has {} coefficients for {} generators",
                    coeffs.len(),
                    generators.rank()
                )));
            }
            grades.push(grade);
            columns.push(coeffs);
        }
        let source = FreeModule::new(n, grades)?;
        if columns.iter().flatten().any(|c| c.field() != field) {
            return Err(Error::InvalidField(format!("relation coefficients not over {field}")));
        }
        let entries = Matrix::from_columns(field, generators.rank(), &columns);
        Ok(Presentation {
            relations: GradedMatrix::new(source, generators, entries)?,
        })
    }

    /// Presentation with integer coefficients, for tests and examples.
    pub fn from_ints(
        field: Field,
        generators: &[&[i64]],
        relations: &[(&[i64], &[i64])],
    ) -> Result<Presentation> {
        let n = generators
            .first()
            .map(|g| g.len())
            .or_else(|| relations.first().map(|r| r.0.len()))
            .ok_or_else(|| Error::EmptyInput("cannot infer the dimension".into()))?;
        let gens = FreeModule::new(n, generators.iter().map(|g| Grade::from_ints(g)).collect())?;
        let rels = relations
            .iter()
            .map(|(g, c)| {
                (
                    Grade::from_ints(g),
                    c.iter().map(|&v| field.from_i64(v)).collect(),
                )
            })
            .collect();
        Presentation::new(field, gens, rels)
    }

    /// The free module itself, presented with no relations.
    pub fn free(field: Field, generators: FreeModule) -> Presentation {
        let source = FreeModule::empty(generators.n());
        Presentation {
            relations: GradedMatrix::zero(field, source, generators),
        }
    }

    pub fn field(&self) -> Field {
        self.relations.field()
    }

    pub fn n(&self) -> usize {
        self.relations.target().n()
    }

    pub fn generators(&self) -> &FreeModule {
        self.relations.target()
    }

    pub fn relation_module(&self) -> &FreeModule {
        self.relations.source()
    }

    pub fn relation_matrix(&self) -> &GradedMatrix {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators().rank()
    }

    pub fn num_relations(&self) -> usize {
        self.relation_module().rank()
    }

    /// The `r`-th relation as a coefficient vector over the generators.
    pub fn relation(&self, r: usize) -> (&Grade, Vec<Scalar>) {
        (self.relation_module().grade(r), self.relations.entries().column(r))
    }

    /// Every generator and relation grade.
    pub fn grades(&self) -> impl Iterator<Item = &Grade> {
        self.generators()
            .grades()
            .iter()
            .chain(self.relation_module().grades())
    }

    /// Product grid over all generator and relation coordinates; `None` for
    /// the presentation with no generators and no relations.
    pub fn grid(&self) -> Option<Grid> {
        Grid::spanned_by(self.grades()).ok()
    }

    pub fn convert(&self, field: Field) -> Result<Presentation> {
        Ok(Presentation {
            relations: self.relations.convert(field)?,
        })
    }

    /// `P[ε]`: both free modules shifted, entries unchanged.
    pub fn shift(&self, epsilon: &Rational) -> Presentation {
        Presentation {
            relations: self.relations.shift(epsilon),
        }
    }

    /// Direct sum with block-diagonal relations.
    pub fn direct_sum(&self, other: &Presentation) -> Result<Presentation> {
        Ok(Presentation {
            relations: self.relations.direct_sum(&other.relations)?,
        })
    }

    /// Reorders generators and relations by the given permutations
    /// (`gen_order[k]` is the old index of new generator `k`).
    pub fn permuted(&self, gen_order: &[usize], rel_order: &[usize]) -> Result<Presentation> {
        let gens = self.generators().restrict(gen_order);
        let rels = self.relation_module().restrict(rel_order);
        let entries = self.relations.entries().select(gen_order, rel_order);
        Ok(Presentation {
            relations: GradedMatrix::new(rels, gens, entries)?,
        })
    }

    /// The module value at `s`.
    pub fn evaluate(&self, s: &Grade) -> Evaluation {
        let field = self.field();
        let gens = self.generators();
        let alive = gens.evaluate(s);
        let mut relations = Echelon::new(field, gens.rank());
        for r in self.relation_module().evaluate(s) {
            relations.insert(&self.relations.entries().column(r));
        }
        let mut is_pivot = vec![false; gens.rank()];
        for &p in relations.pivots() {
            is_pivot[p] = true;
        }
        let basis = alive.iter().copied().filter(|&g| !is_pivot[g]).collect();
        Evaluation {
            point: s.clone(),
            field,
            relations,
            alive,
            basis,
        }
    }

    /// Matrix of the structure map `M(s) → M(t)` in the evaluation bases.
    pub fn structure_map(&self, s: &Grade, t: &Grade) -> Result<Matrix> {
        if !s.leq(t)? {
            return Err(Error::InvalidArgument(format!(
                "structure map needs {s} ≤ {t}"
            )));
        }
        let from = self.evaluate(s);
        let to = self.evaluate(t);
        Ok(from.transport(&to))
    }
}

/// The vector space `M(s)` with a canonical basis.
#[derive(Clone, Debug)]
pub struct Evaluation {
    point: Grade,
    field: Field,
    relations: Echelon,
    alive: Vec<usize>,
    basis: Vec<usize>,
}

impl Evaluation {
    pub fn point(&self) -> &Grade {
        &self.point
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Generator indices whose classes form the basis of `M(s)`.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Generator indices alive at `s`.
    pub fn alive(&self) -> &[usize] {
        &self.alive
    }

    /// Reduced echelon basis of the relation span at `s`.
    pub fn relation_span(&self) -> &Echelon {
        &self.relations
    }

    /// Coordinates in `M(s)` of the class of a generator-space vector.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let normal = self.relations.reduce(v);
        self.basis.iter().map(|&b| normal[b].clone()).collect()
    }

    /// Canonical generator-space representative of `M(s)` coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let mut v = vec![self.field.zero(); self.relations.ambient_dim()];
        for (c, &b) in coords.iter().zip(&self.basis) {
            v[b] = c.clone();
        }
        v
    }

    /// Coordinates of the generator `g` (which must be alive).
    pub fn generator(&self, g: usize) -> Vec<Scalar> {
        debug_assert!(self.alive.contains(&g), "generator {g} is not alive");
        let mut v = vec![self.field.zero(); self.relations.ambient_dim()];
        v[g] = self.field.one();
        self.reduce(&v)
    }

    /// Structure map from this value to a later one of the same module.
    pub fn transport(&self, later: &Evaluation) -> Matrix {
        let columns: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|k| {
                let mut unit = vec![self.field.zero(); self.dim()];
                unit[k] = self.field.one();
                later.reduce(&self.lift(&unit))
            })
            .collect();
        Matrix::from_columns(self.field, later.dim(), &columns)
    }
}

/// `dim M(s)`.
pub fn evaluate(p: &Presentation, s: &Grade) -> Evaluation {
    p.evaluate(s)
}

/// `M(s ≤ t)`.
pub fn structure_map(p: &Presentation, s: &Grade, t: &Grade) -> Result<Matrix> {
    p.structure_map(s, t)
}

/// `shift_presentation(P, ε) = P[ε]`.
pub fn shift_presentation(p: &Presentation, epsilon: &Rational) -> Presentation {
    p.shift(epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::standard;

    const Q: Field = Field::Rational;

    fn half() -> Grade {
        Grade::new(vec![rat(1, 2), rat(1, 2)])
    }

    #[test]
    fn evaluate_examples() {
        let n1 = standard::quadrant_plus_box(Q, &int(1));
        assert_eq!(n1.evaluate(&half()).dim(), 2);
        assert_eq!(n1.evaluate(&Grade::from_ints(&[1, 1])).dim(), 1);
        assert_eq!(n1.evaluate(&Grade::from_ints(&[1, 0])).dim(), 1);
        assert_eq!(n1.evaluate(&Grade::from_ints(&[-1, 0])).dim(), 0);
        let m = standard::quadrant(Q, 2);
        for s in [[0, 0], [3, 0], [5, 7]] {
            assert_eq!(m.evaluate(&Grade::from_ints(&s)).dim(), 1);
        }
    }

    #[test]
    fn structure_map_examples() {
        let n1 = standard::quadrant_plus_box(Q, &int(1));
        let s = Grade::from_ints(&[0, 0]);
        assert_eq!(n1.structure_map(&s, &s).unwrap(), Matrix::identity(Q, 2));
        assert_eq!(
            n1.structure_map(&s, &Grade::from_ints(&[1, 1])).unwrap().rank(),
            1
        );
        let open_box = standard::open_box(Q, &int(1));
        assert!(open_box
            .structure_map(&s, &Grade::from_ints(&[1, 0]))
            .unwrap()
            .is_zero());
        assert!(n1.structure_map(&Grade::from_ints(&[1, 0]), &s).is_err());
    }

    #[test]
    fn structure_maps_compose_on_the_grid() {
        let p = Presentation::from_ints(
            Q,
            &[&[0, 0], &[1, 0], &[0, 1]],
            &[(&[1, 1], &[1, -1, 0]), (&[2, 1], &[0, 1, 1]), (&[1, 2], &[0, 0, 1])],
        )
        .unwrap();
        let points = p.grid().unwrap().points();
        for s in &points {
            for t in points.iter().filter(|t| s.le(t)) {
                for u in points.iter().filter(|u| t.le(u)) {
                    let st = p.structure_map(s, t).unwrap();
                    let tu = p.structure_map(t, u).unwrap();
                    assert_eq!(&tu * &st, p.structure_map(s, u).unwrap());
                }
            }
        }
    }

    #[test]
    fn relations_must_be_admissible() {
        let err = Presentation::from_ints(Q, &[&[1, 1]], &[(&[0, 0], &[1])]);
        assert!(matches!(err, Err(Error::Inadmissible(_))));
        let err = Presentation::from_ints(Q, &[&[1, 1]], &[(&[2, 2], &[1, 0])]);
        assert!(matches!(err, Err(Error::Shape(_))));
    }
}
