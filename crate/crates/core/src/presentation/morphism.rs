use super::{Evaluation, Presentation};
use crate::error::{Error, Result};
use crate::exact::{axpy, is_negative, is_zero_vector, Matrix, Rational, Scalar};
use crate::grading::Grade;

/// A module morphism between finitely presented modules, given by the image
/// of each source generator in the target's value at that generator's grade.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FPMorphism {
    source: Presentation,
    target: Presentation,
    images: Vec<Vec<Scalar>>,
}

impl FPMorphism {
    /// Checks lengths, fields and well-definedness.
    pub fn new(source: Presentation, target: Presentation, images: Vec<Vec<Scalar>>) -> Result<FPMorphism> {
        let m = FPMorphism::unchecked(source, target, images)?;
        if let Some(r) = m.first_violated_relation() {
            return Err(Error::NotWellDefined(format!(
                "relation {r} of the source does not map to zero"
            )));
        }
        Ok(m)
    }

    fn unchecked(source: Presentation, target: Presentation, images: Vec<Vec<Scalar>>) -> Result<FPMorphism> {
        if source.field() != target.field() {
            return Err(Error::InvalidField("source and target fields differ".into()));
        }
        if source.n() != target.n() {
            return Err(Error::Dimension("source and target gradings differ".into()));
        }
        if images.len() != source.num_generators() {
            return Err(Error::Shape(format!(
                "{} images for {} generators",
                images.len(),
                source.num_generators()
            )));
        }
        for (j, image) in images.iter().enumerate() {
            let dim = target.evaluate(source.generators().grade(j)).dim();
            if image.len() != dim {
                return Err(Error::Shape(format!(
                    "image of generator {j} has {} coordinates, target has dimension {dim}",
                    image.len()
                )));
            }
        }
        Ok(FPMorphism {
            source,
            target,
            images,
        })
    }

    /// Builds a morphism from generator-space representatives of the images
    /// (vectors over the target's generators, each supported on generators
    /// alive at the source generator's grade).
    pub fn from_lifts(source: Presentation, target: Presentation, lifts: &[Vec<Scalar>]) -> Result<FPMorphism> {
        if lifts.len() != source.num_generators() {
            return Err(Error::Shape("one lift per source generator".into()));
        }
        let mut images = Vec::with_capacity(lifts.len());
        for (j, lift) in lifts.iter().enumerate() {
            let a = source.generators().grade(j);
            let eval = target.evaluate(a);
            if lift.len() != target.num_generators() {
                return Err(Error::Shape("lift length differs from target rank".into()));
            }
            if lift
                .iter()
                .enumerate()
                .any(|(i, v)| !v.is_zero() && !target.generators().grade(i).le(a))
            {
                return Err(Error::Inadmissible(format!(
                    "image of generator {j} uses a target generator not alive at {a}"
                )));
            }
            images.push(eval.reduce(lift));
        }
        FPMorphism::new(source, target, images)
    }

    pub fn identity(p: &Presentation) -> FPMorphism {
        let images = (0..p.num_generators())
            .map(|j| p.evaluate(p.generators().grade(j)).generator(j))
            .collect();
        FPMorphism {
            source: p.clone(),
            target: p.clone(),
            images,
        }
    }

    pub fn zero(source: &Presentation, target: &Presentation) -> Result<FPMorphism> {
        let field = target.field();
        let images = source
            .generators()
            .grades()
            .iter()
            .map(|a| vec![field.zero(); target.evaluate(a).dim()])
            .collect();
        FPMorphism::unchecked(source.clone(), target.clone(), images)
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    /// Image coordinates of each source generator.
    pub fn images(&self) -> &[Vec<Scalar>] {
        &self.images
    }

    /// Canonical target-generator representative of the image of generator `j`.
    pub fn image_lift(&self, j: usize) -> Vec<Scalar> {
        let a = self.source.generators().grade(j);
        self.target.evaluate(a).lift(&self.images[j])
    }

    fn lifts(&self) -> Vec<Vec<Scalar>> {
        (0..self.source.num_generators())
            .map(|j| self.image_lift(j))
            .collect()
    }

    /// Applies the morphism to a source-generator vector, returning an
    /// unreduced target-generator vector.
    pub fn push_forward(&self, v: &[Scalar]) -> Vec<Scalar> {
        push_forward(&self.lifts(), v, self.target.field().zero(), self.target.num_generators())
    }

    /// The linear map `M(s) → N(s)` in the evaluation bases.
    pub fn at(&self, s: &Grade) -> Matrix {
        let from = self.source.evaluate(s);
        let to = self.target.evaluate(s);
        let lifts = self.lifts();
        let field = self.target.field();
        let columns: Vec<Vec<Scalar>> = from
            .basis()
            .iter()
            .map(|&b| to.reduce(&lifts[b]))
            .collect();
        Matrix::from_columns(field, to.dim(), &columns)
    }

    fn first_violated_relation(&self) -> Option<usize> {
        let lifts = self.lifts();
        let zero = self.target.field().zero();
        (0..self.source.num_relations()).find(|&r| {
            let (grade, coeffs) = self.source.relation(r);
            let image = push_forward(&lifts, &coeffs, zero.clone(), self.target.num_generators());
            !is_zero_vector(&self.target.evaluate(grade).reduce(&image))
        })
    }

    pub fn is_well_defined(&self) -> bool {
        self.first_violated_relation().is_none()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FPMorphism) -> Result<FPMorphism> {
        if other.target != self.source {
            return Err(Error::Shape("composing morphisms whose middle modules differ".into()));
        }
        let outer = self.lifts();
        let zero = self.target.field().zero();
        let rank = self.target.num_generators();
        let images = (0..other.source.num_generators())
            .map(|j| {
                let a = other.source.generators().grade(j);
                let v = push_forward(&outer, &other.image_lift(j), zero.clone(), rank);
                self.target.evaluate(a).reduce(&v)
            })
            .collect();
        Ok(FPMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// `f[ε]: M[ε] → N[ε]`. Evaluation bases are translation invariant, so
    /// the coordinates carry over unchanged.
    pub fn shift(&self, epsilon: &Rational) -> FPMorphism {
        FPMorphism {
            source: self.source.shift(epsilon),
            target: self.target.shift(epsilon),
            images: self.images.clone(),
        }
    }

    pub fn add(&self, other: &FPMorphism) -> Result<FPMorphism> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FPMorphism) -> Result<FPMorphism> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Scalar) -> FPMorphism {
        FPMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self
                .images
                .iter()
                .map(|im| im.iter().map(|v| v * factor).collect())
                .collect(),
        }
    }

    fn zip(&self, other: &FPMorphism, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<FPMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("morphisms have different source or target".into()));
        }
        Ok(FPMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| op(x, y)).collect())
                .collect(),
        })
    }

    /// All image coordinates concatenated in generator order.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.images.iter().flatten().cloned().collect()
    }

    /// Linear combination of parallel morphisms (at least one).
    pub fn combination(basis: &[FPMorphism], coeffs: &[Scalar]) -> FPMorphism {
        assert_eq!(basis.len(), coeffs.len());
        let mut out = basis[0].scale(&coeffs[0]);
        for (b, c) in basis.iter().zip(coeffs).skip(1) {
            if c.is_zero() {
                continue;
            }
            for (acc, im) in out.images.iter_mut().zip(&b.images) {
                axpy(acc, c, im);
            }
        }
        out
    }
}

fn push_forward(lifts: &[Vec<Scalar>], v: &[Scalar], zero: Scalar, rank: usize) -> Vec<Scalar> {
    let mut out = vec![zero; rank];
    for (coeff, lift) in v.iter().zip(lifts) {
        axpy(&mut out, coeff, lift);
    }
    out
}

/// Basis of `Hom(P, Q)`.
///
/// Unknowns are the coordinates of each generator image in `Q` at the
/// generator's grade; each relation of `P` contributes the linear condition
/// that its image vanishes in `Q` at the relation's grade.
pub fn hom_space(p: &Presentation, q: &Presentation) -> Result<Vec<FPMorphism>> {
    if p.n() != q.n() {
        return Err(Error::Dimension("Hom between different gradings".into()));
    }
    if p.field() != q.field() {
        return Err(Error::InvalidField("Hom between different fields".into()));
    }
    let field = q.field();
    let gen_evals: Vec<Evaluation> = p
        .generators()
        .grades()
        .iter()
        .map(|a| q.evaluate(a))
        .collect();
    let mut offsets = Vec::with_capacity(gen_evals.len() + 1);
    offsets.push(0);
    for e in &gen_evals {
        offsets.push(offsets.last().unwrap() + e.dim());
    }
    let unknowns = *offsets.last().unwrap();

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in 0..p.num_relations() {
        let (grade, coeffs) = p.relation(r);
        let at_relation = q.evaluate(grade);
        let mut block = vec![vec![field.zero(); unknowns]; at_relation.dim()];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let transport = gen_evals[j].transport(&at_relation);
            for i in 0..transport.rows() {
                for k in 0..transport.cols() {
                    let v = transport.get(i, k);
                    if !v.is_zero() {
                        let slot = &mut block[i][offsets[j] + k];
                        *slot = &*slot + &(c * v);
                    }
                }
            }
        }
        rows.extend(block);
    }
    let system = Matrix::from_rows(field, unknowns, rows)?;
    system
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let images = (0..gen_evals.len())
                .map(|j| v[offsets[j]..offsets[j + 1]].to_vec())
                .collect();
            FPMorphism::unchecked(p.clone(), q.clone(), images)
        })
        .collect()
}

/// The ε-smoothing `P → P[ε]`: each generator goes to its own class.
pub fn smoothing_fp(p: &Presentation, epsilon: &Rational) -> Result<FPMorphism> {
    if is_negative(epsilon) {
        return Err(Error::InvalidArgument("smoothing needs ε ≥ 0".into()));
    }
    let target = p.shift(epsilon);
    let images = (0..p.num_generators())
        .map(|j| target.evaluate(p.generators().grade(j)).generator(j))
        .collect();
    Ok(FPMorphism {
        source: p.clone(),
        target,
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, Field};
    use crate::standard;

    const Q: Field = Field::Rational;

    #[test]
    fn hom_dimensions() {
        let f00 = standard::quadrant(Q, 2);
        assert_eq!(hom_space(&f00, &f00).unwrap().len(), 1);
        let n1 = standard::quadrant_plus_box(Q, &int(1));
        let half = rat(1, 2);
        // the box generator is forced to zero by the relation at (1,0)
        assert_eq!(hom_space(&n1, &f00.shift(&half)).unwrap().len(), 1);
        assert_eq!(hom_space(&f00, &n1.shift(&half)).unwrap().len(), 2);
    }

    #[test]
    fn hom_basis_elements_are_well_defined() {
        let n1 = standard::quadrant_plus_box(Q, &int(1));
        for eps in [rat(1, 4), rat(1, 2), int(2)] {
            for f in hom_space(&n1, &n1.shift(&eps)).unwrap() {
                assert!(f.is_well_defined());
            }
        }
    }

    #[test]
    fn smoothing_examples() {
        let n1 = standard::quadrant_plus_box(Q, &int(1));
        assert_eq!(smoothing_fp(&n1, &int(0)).unwrap(), FPMorphism::identity(&n1));
        let s = smoothing_fp(&n1, &int(1)).unwrap();
        assert!(s.is_well_defined());
        assert_eq!(s.at(&Grade::from_ints(&[0, 0])).rank(), 1);
        let (a, b) = (rat(1, 4), rat(2, 3));
        let first = smoothing_fp(&n1, &a).unwrap();
        let second = smoothing_fp(&n1, &b).unwrap().shift(&a);
        assert_eq!(
            second.compose(&first).unwrap(),
            smoothing_fp(&n1, &(&a + &b)).unwrap()
        );
        assert!(smoothing_fp(&n1, &int(-1)).is_err());
    }

    #[test]
    fn ill_defined_morphisms_are_rejected() {
        let n1 = standard::quadrant_plus_box(Q, &int(1));
        let m = standard::quadrant(Q, 2);
        // sending the box generator onto the free generator of M[1/2] breaks
        // the relation at (1,0)
        let target = m.shift(&rat(1, 2));
        let images = vec![vec![Q.one()], vec![Q.one()]];
        assert!(matches!(
            FPMorphism::new(n1, target, images),
            Err(Error::NotWellDefined(_))
        ));
    }
}
