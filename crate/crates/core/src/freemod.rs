//! Free persistence modules `⊕ F_a` and the grade-admissible matrices
//! between them.
//!
//! A morphism `F_a → F_b` is nonzero only when `b ≤ a`, so a matrix from
//! `source` to `target` (rows indexed by target generators, columns by source
//! generators) may carry a nonzero entry at `(i, j)` only if
//! `grade(target_i) ≤ grade(source_j)`. Every constructor enforces this.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Rational, Scalar};
use crate::grading::Grade;

/// A finite direct sum of free modules `F_a`. The order of `grades` fixes
/// the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    n: usize,
    grades: Vec<Grade>,
}

impl FreeModule {
    pub fn new(n: usize, grades: Vec<Grade>) -> Result<FreeModule> {
        if n == 0 {
            return Err(Error::Dimension("grading dimension must be positive".into()));
        }
        if let Some(bad) = grades.iter().find(|g| g.dim() != n) {
            return Err(Error::Dimension(format!(
                "generator grade {bad} in a module over R^{n}"
            )));
        }
        Ok(FreeModule { n, grades })
    }

    pub fn empty(n: usize) -> FreeModule {
        FreeModule { n, grades: Vec::new() }
    }

    /// Free module on generators with integer grades.
    pub fn from_ints(n: usize, grades: &[&[i64]]) -> FreeModule {
        FreeModule::new(n, grades.iter().map(|g| Grade::from_ints(g)).collect())
            .expect("grade dimensions")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.grades.len()
    }

    pub fn is_zero(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn grade(&self, i: usize) -> &Grade {
        &self.grades[i]
    }

    /// Multiplicity of each generator grade.
    pub fn xi(&self) -> BTreeMap<Grade, usize> {
        let mut out = BTreeMap::new();
        for g in &self.grades {
            *out.entry(g.clone()).or_insert(0) += 1;
        }
        out
    }

    /// `F[ε]`: every generator grade lowered by `ε·(1,…,1)`.
    pub fn shift(&self, epsilon: &Rational) -> FreeModule {
        FreeModule {
            n: self.n,
            grades: self.grades.iter().map(|g| g.shift(epsilon)).collect(),
        }
    }

    /// Indices of the generators alive at `s`; `dim F(s)` is its length.
    pub fn evaluate(&self, s: &Grade) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.grades[i].le(s)).collect()
    }

    pub fn direct_sum(&self, other: &FreeModule) -> Result<FreeModule> {
        if self.n != other.n {
            return Err(Error::Dimension("direct sum across dimensions".into()));
        }
        let mut grades = self.grades.clone();
        grades.extend(other.grades.iter().cloned());
        Ok(FreeModule { n: self.n, grades })
    }

    /// Picks out generators by index, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> FreeModule {
        FreeModule {
            n: self.n,
            grades: indices.iter().map(|&i| self.grades[i].clone()).collect(),
        }
    }
}

/// `ξ(F)`: multiplicity of each generator grade.
pub fn xi(module: &FreeModule) -> BTreeMap<Grade, usize> {
    module.xi()
}

/// `shift_free(F, ε) = F[ε]`.
pub fn shift_free(module: &FreeModule, epsilon: &Rational) -> FreeModule {
    module.shift(epsilon)
}

/// `evaluate_free(F, s)`: sorted indices of generators with grade `≤ s`.
pub fn evaluate_free(module: &FreeModule, s: &Grade) -> Result<Vec<usize>> {
    if s.dim() != module.n() {
        return Err(Error::Dimension(format!(
            "evaluating a module over R^{} at {s}",
            module.n()
        )));
    }
    Ok(module.evaluate(s))
}

/// A morphism of free modules in the fixed bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMatrix {
    source: FreeModule,
    target: FreeModule,
    entries: Matrix,
}

impl GradedMatrix {
    pub fn new(source: FreeModule, target: FreeModule, entries: Matrix) -> Result<GradedMatrix> {
        if source.n() != target.n() {
            return Err(Error::Dimension("source and target gradings differ".into()));
        }
        if entries.rows() != target.rank() || entries.cols() != source.rank() {
            return Err(Error::Shape(format!(
                "{}x{} entries for a map from rank {} to rank {}",
                entries.rows(),
                entries.cols(),
                source.rank(),
                target.rank()
            )));
        }
        let m = GradedMatrix {
            source,
            target,
            entries,
        };
        if let Some((i, j)) = m.first_inadmissible() {
            return Err(Error::Inadmissible(format!(
                "entry ({i},{j}) maps F_{} into F_{}",
                m.source.grade(j),
                m.target.grade(i)
            )));
        }
        Ok(m)
    }

    pub fn zero(field: Field, source: FreeModule, target: FreeModule) -> GradedMatrix {
        let entries = Matrix::zeros(field, target.rank(), source.rank());
        GradedMatrix {
            source,
            target,
            entries,
        }
    }

    pub fn identity(field: Field, module: FreeModule) -> GradedMatrix {
        GradedMatrix {
            entries: Matrix::identity(field, module.rank()),
            source: module.clone(),
            target: module,
        }
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn field(&self) -> Field {
        self.entries.field()
    }

    /// Whether a nonzero entry is permitted at `(row, col)`.
    pub fn position_admissible(&self, row: usize, col: usize) -> bool {
        self.target.grade(row).le(self.source.grade(col))
    }

    fn first_inadmissible(&self) -> Option<(usize, usize)> {
        for i in 0..self.entries.rows() {
            for j in 0..self.entries.cols() {
                if !self.entries.get(i, j).is_zero() && !self.position_admissible(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_admissible(&self) -> bool {
        self.first_inadmissible().is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.source != other.target {
            return Err(Error::Shape(
                "composing maps whose middle modules differ".into(),
            ));
        }
        Ok(GradedMatrix {
            source: other.source.clone(),
            target: self.target.clone(),
            entries: self.entries.try_mul(&other.entries)?,
        })
    }

    pub fn add(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.check_parallel(other)?;
        Ok(GradedMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self.entries.try_add(&other.entries)?,
        })
    }

    pub fn sub(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.check_parallel(other)?;
        Ok(GradedMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self.entries.try_sub(&other.entries)?,
        })
    }

    pub fn scale(&self, factor: &Scalar) -> GradedMatrix {
        GradedMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self.entries.scale(factor),
        }
    }

    fn check_parallel(&self, other: &GradedMatrix) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("maps have different source or target".into()));
        }
        Ok(())
    }

    /// `φ[ε]`: same entries between the shifted modules.
    pub fn shift(&self, epsilon: &Rational) -> GradedMatrix {
        GradedMatrix {
            source: self.source.shift(epsilon),
            target: self.target.shift(epsilon),
            entries: self.entries.clone(),
        }
    }

    /// The linear map `F(s) → G(s)` in the bases of alive generators.
    pub fn at(&self, s: &Grade) -> Matrix {
        let rows = self.target.evaluate(s);
        let cols = self.source.evaluate(s);
        self.entries.select(&rows, &cols)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        let field = self.field();
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let mut entries = Matrix::zeros(field, target.rank(), source.rank());
        let (r0, c0) = (self.target.rank(), self.source.rank());
        for i in 0..r0 {
            for j in 0..c0 {
                entries.set(i, j, self.entries.get(i, j).clone());
            }
        }
        for i in 0..other.target.rank() {
            for j in 0..other.source.rank() {
                entries.set(r0 + i, c0 + j, other.entries.get(i, j).clone());
            }
        }
        Ok(GradedMatrix {
            source,
            target,
            entries,
        })
    }

    /// Re-expresses the entries in another field.
    pub fn convert(&self, field: Field) -> Result<GradedMatrix> {
        GradedMatrix::new(
            self.source.clone(),
            self.target.clone(),
            self.entries.convert(field)?,
        )
    }
}

/// `compose(g, f) = g ∘ f`.
pub fn compose(g: &GradedMatrix, f: &GradedMatrix) -> Result<GradedMatrix> {
    g.compose(f)
}

/// The ε-smoothing `F → F[ε]`, which on free modules is the identity matrix.
pub fn smoothing_free(field: Field, module: &FreeModule, epsilon: &Rational) -> Result<GradedMatrix> {
    if crate::exact::is_negative(epsilon) {
        return Err(Error::InvalidArgument("smoothing needs ε ≥ 0".into()));
    }
    GradedMatrix::new(
        module.clone(),
        module.shift(epsilon),
        Matrix::identity(field, module.rank()),
    )
}
