//! Bounded cochain complexes of free persistence modules.
//!
//! Degrees follow the cohomological convention: the differential `∂^j` maps
//! the term in degree `j` to the term in degree `j + 1`, and resolutions live
//! in degrees `≤ 0`. Chain maps, homotopies and the linear solvers over them
//! are in the submodules.

mod layout;
mod maps;
mod resolve;
mod solve;

pub use layout::EntryLayout;
pub use maps::{ChainMap, Homotopy};
pub use resolve::{cohomology_presentation, induced_cokernel_map, lift_resolution, verify_resolution};
pub use solve::{chain_map_space, homotopy_operator, is_nullhomotopic, nullhomotopic_span};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Field, Rational};
use crate::freemod::{FreeModule, GradedMatrix};
use crate::presentation::Presentation;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeChainComplex {
    n: usize,
    field: Field,
    terms: BTreeMap<i32, FreeModule>,
    differentials: BTreeMap<i32, GradedMatrix>,
    empty: FreeModule,
}

impl FreeChainComplex {
    /// Assembles a complex. Zero terms are dropped, and `differentials[j]`
    /// must map `terms[j]` to `terms[j + 1]`. The complex axiom `∂∂ = 0` is
    /// not enforced here; see [`FreeChainComplex::validate`].
    pub fn new(
        n: usize,
        field: Field,
        terms: BTreeMap<i32, FreeModule>,
        differentials: BTreeMap<i32, GradedMatrix>,
    ) -> Result<FreeChainComplex> {
        let terms: BTreeMap<i32, FreeModule> =
            terms.into_iter().filter(|(_, t)| !t.is_zero()).collect();
        if let Some(t) = terms.values().find(|t| t.n() != n) {
            return Err(Error::Dimension(format!(
                "term over R^{} in a complex over R^{n}",
                t.n()
            )));
        }
        let empty = FreeModule::empty(n);
        let mut kept = BTreeMap::new();
        for (j, d) in differentials {
            let source = terms.get(&j).unwrap_or(&empty);
            let target = terms.get(&(j + 1)).unwrap_or(&empty);
            if d.source() != source || d.target() != target {
                return Err(Error::Shape(format!(
                    "differential in degree {j} does not match the terms"
                )));
            }
            if d.field() != field {
                return Err(Error::InvalidField(format!("differential in degree {j}")));
            }
            if !source.is_zero() && !target.is_zero() {
                kept.insert(j, d);
            }
        }
        Ok(FreeChainComplex {
            n,
            field,
            terms,
            differentials: kept,
            empty,
        })
    }

    pub fn zero(n: usize, field: Field) -> FreeChainComplex {
        FreeChainComplex {
            n,
            field,
            terms: BTreeMap::new(),
            differentials: BTreeMap::new(),
            empty: FreeModule::empty(n),
        }
    }

    /// `F` placed in degree 0.
    pub fn concentrated(field: Field, module: FreeModule) -> FreeChainComplex {
        let n = module.n();
        FreeChainComplex::new(n, field, BTreeMap::from([(0, module)]), BTreeMap::new())
            .expect("single term")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn term(&self, j: i32) -> &FreeModule {
        self.terms.get(&j).unwrap_or(&self.empty)
    }

    pub fn terms(&self) -> &BTreeMap<i32, FreeModule> {
        &self.terms
    }

    /// `∂^j`, or `None` when it is zero for lack of terms.
    pub fn differential_ref(&self, j: i32) -> Option<&GradedMatrix> {
        self.differentials.get(&j)
    }

    pub fn differentials(&self) -> &BTreeMap<i32, GradedMatrix> {
        &self.differentials
    }

    /// `∂^j` as a (possibly zero) graded matrix.
    pub fn differential(&self, j: i32) -> GradedMatrix {
        self.differentials.get(&j).cloned().unwrap_or_else(|| {
            GradedMatrix::zero(self.field, self.term(j).clone(), self.term(j + 1).clone())
        })
    }

    /// Lowest and highest degrees with a nonzero term.
    pub fn support(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every term grade, across all degrees.
    pub fn grades(&self) -> impl Iterator<Item = &crate::grading::Grade> {
        self.terms.values().flat_map(|t| t.grades())
    }

    /// `∂^{j+1} ∘ ∂^j = 0` for all `j`, and every differential admissible.
    pub fn validate(&self) -> bool {
        self.differentials.iter().all(|(j, d)| {
            d.is_admissible()
                && self
                    .differentials
                    .get(&(j + 1))
                    .is_none_or(|next| next.compose(d).map(|c| c.is_zero()).unwrap_or(false))
        })
    }

    /// `X[ε]`, shifted degreewise.
    pub fn shift(&self, epsilon: &Rational) -> FreeChainComplex {
        FreeChainComplex {
            n: self.n,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(&j, t)| (j, t.shift(epsilon)))
                .collect(),
            differentials: self
                .differentials
                .iter()
                .map(|(&j, d)| (j, d.shift(epsilon)))
                .collect(),
            empty: self.empty.clone(),
        }
    }

    /// Degreewise direct sum with block-diagonal differentials.
    pub fn direct_sum(&self, other: &FreeChainComplex) -> Result<FreeChainComplex> {
        if self.n != other.n || self.field != other.field {
            return Err(Error::Dimension("direct sum of incompatible complexes".into()));
        }
        let mut degrees: Vec<i32> = self.degrees();
        degrees.extend(other.degrees());
        degrees.sort();
        degrees.dedup();
        let mut terms = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for &j in &degrees {
            terms.insert(j, self.term(j).direct_sum(other.term(j))?);
            differentials.insert(j, self.differential(j).direct_sum(&other.differential(j))?);
        }
        let empty = FreeModule::empty(self.n);
        differentials.retain(|j, _| {
            !terms.get(j).unwrap_or(&empty).is_zero()
                && !terms.get(&(j + 1)).unwrap_or(&empty).is_zero()
        });
        FreeChainComplex::new(self.n, self.field, terms, differentials)
    }

    /// `coker(∂^{-1})`, the degree-0 cohomology of a resolution.
    pub fn cokernel_presentation(&self) -> Presentation {
        Presentation::from_matrix(self.differential(-1))
    }

    pub fn convert(&self, field: Field) -> Result<FreeChainComplex> {
        let differentials = self
            .differentials
            .iter()
            .map(|(&j, d)| Ok((j, d.convert(field)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        FreeChainComplex::new(self.n, field, self.terms.clone(), differentials)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, Matrix};
    use crate::grading::Grade;
    use crate::standard;

    const Q: Field = Field::Rational;
    const GF2: Field = Field::Prime(2);

    #[test]
    fn sign_corrected_resolution_is_a_complex() {
        let res = standard::quadrant_plus_box_resolution(Q, &int(1));
        assert!(res.validate());
        assert!(standard::box_complex(Q, &int(1)).validate());
    }

    #[test]
    fn literal_signs_fail_over_the_rationals_only() {
        let literal = standard::literal_quadrant_plus_box_resolution(Q, &int(1));
        assert!(!literal.validate());
        let composite = literal
            .differential(-1)
            .compose(&literal.differential(-2))
            .unwrap();
        assert_eq!(composite.entries(), &Matrix::from_i64(Q, &[&[2], &[0]]));
        let over_gf2 = standard::literal_quadrant_plus_box_resolution(GF2, &int(1));
        assert!(over_gf2.validate());
    }

    #[test]
    fn shifted_terms_of_the_box_complex() {
        let c1 = standard::box_complex(Q, &int(1));
        let shifted = c1.shift(&rat(3, 2));
        let grades = |j| shifted.term(j).grades().to_vec();
        let r = |a, b| Grade::new(vec![a, b]);
        assert_eq!(grades(-2), vec![r(rat(-1, 2), rat(-1, 2))]);
        assert_eq!(
            grades(-1),
            vec![r(rat(-1, 2), rat(-3, 2)), r(rat(-3, 2), rat(-1, 2))]
        );
        assert_eq!(grades(0), vec![r(rat(-3, 2), rat(-3, 2))]);
        assert!(shifted.validate());
    }

    #[test]
    fn mismatched_differentials_are_rejected() {
        let c1 = standard::box_complex(Q, &int(1));
        let mut terms = c1.terms().clone();
        terms.remove(&-2);
        let bad = FreeChainComplex::new(2, Q, terms, c1.differentials().clone());
        assert!(matches!(bad, Err(Error::Shape(_))));
    }
}
