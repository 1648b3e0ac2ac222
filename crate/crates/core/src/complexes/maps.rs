use std::collections::BTreeMap;

use super::{EntryLayout, FreeChainComplex};
use crate::error::{Error, Result};
use crate::exact::{is_negative, Field, Rational, Scalar};
use crate::freemod::GradedMatrix;

/// A degreewise family `f^i: X^i → Y^i` commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: FreeChainComplex,
    target: FreeChainComplex,
    components: BTreeMap<i32, GradedMatrix>,
}

fn check_components(
    source: &FreeChainComplex,
    target: &FreeChainComplex,
    components: BTreeMap<i32, GradedMatrix>,
    offset: i32,
) -> Result<BTreeMap<i32, GradedMatrix>> {
    if source.n() != target.n() || source.field() != target.field() {
        return Err(Error::Dimension("complexes over different bases".into()));
    }
    let mut kept = BTreeMap::new();
    for (i, m) in components {
        if m.source() != source.term(i) || m.target() != target.term(i + offset) {
            return Err(Error::Shape(format!("component in degree {i} does not match the terms")));
        }
        if m.field() != source.field() {
            return Err(Error::InvalidField(format!("component in degree {i}")));
        }
        if !m.source().is_zero() && !m.target().is_zero() {
            kept.insert(i, m);
        }
    }
    Ok(kept)
}

fn combine(
    a: &BTreeMap<i32, GradedMatrix>,
    b: &BTreeMap<i32, GradedMatrix>,
    op: impl Fn(&GradedMatrix, &GradedMatrix) -> Result<GradedMatrix>,
    negate_lone_b: bool,
) -> Result<BTreeMap<i32, GradedMatrix>> {
    let mut out = BTreeMap::new();
    for (i, m) in a {
        let value = match b.get(i) {
            Some(other) => op(m, other)?,
            None => m.clone(),
        };
        out.insert(*i, value);
    }
    for (i, m) in b {
        if !a.contains_key(i) {
            let field = m.field();
            let value = if negate_lone_b { m.scale(&-field.one()) } else { m.clone() };
            out.insert(*i, value);
        }
    }
    Ok(out)
}

impl ChainMap {
    /// Checks shapes and commutation with the differentials.
    pub fn new(
        source: FreeChainComplex,
        target: FreeChainComplex,
        components: BTreeMap<i32, GradedMatrix>,
    ) -> Result<ChainMap> {
        let components = check_components(&source, &target, components, 0)?;
        let map = ChainMap {
            source,
            target,
            components,
        };
        if !map.is_chain_map() {
            return Err(Error::NotWellDefined(
                "components do not commute with the differentials".into(),
            ));
        }
        Ok(map)
    }

    pub(crate) fn unchecked(
        source: FreeChainComplex,
        target: FreeChainComplex,
        components: BTreeMap<i32, GradedMatrix>,
    ) -> ChainMap {
        ChainMap {
            source,
            target,
            components,
        }
    }

    pub fn identity(x: &FreeChainComplex) -> ChainMap {
        let components = x
            .terms()
            .iter()
            .map(|(&i, t)| (i, GradedMatrix::identity(x.field(), t.clone())))
            .collect();
        ChainMap::unchecked(x.clone(), x.clone(), components)
    }

    pub fn zero(x: &FreeChainComplex, y: &FreeChainComplex) -> ChainMap {
        ChainMap::unchecked(x.clone(), y.clone(), BTreeMap::new())
    }

    /// `s_ε: X → X[ε]`, identity matrices in every degree.
    pub fn smoothing(x: &FreeChainComplex, epsilon: &Rational) -> Result<ChainMap> {
        if is_negative(epsilon) {
            return Err(Error::InvalidArgument("smoothing needs ε ≥ 0".into()));
        }
        let target = x.shift(epsilon);
        let components = x
            .terms()
            .iter()
            .map(|(&i, t)| {
                let m = GradedMatrix::new(
                    t.clone(),
                    target.term(i).clone(),
                    crate::exact::Matrix::identity(x.field(), t.rank()),
                )
                .expect("grades only decrease under a nonnegative shift");
                (i, m)
            })
            .collect();
        Ok(ChainMap::unchecked(x.clone(), target, components))
    }

    /// Coordinates in `layout` to chain map; no commutation check.
    pub fn from_coordinates(
        source: &FreeChainComplex,
        target: &FreeChainComplex,
        layout: &EntryLayout,
        values: &[Scalar],
    ) -> ChainMap {
        ChainMap::unchecked(source.clone(), target.clone(), layout.assemble(values))
    }

    pub fn source(&self) -> &FreeChainComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeChainComplex {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn components(&self) -> &BTreeMap<i32, GradedMatrix> {
        &self.components
    }

    pub fn component(&self, i: i32) -> GradedMatrix {
        self.components.get(&i).cloned().unwrap_or_else(|| {
            GradedMatrix::zero(
                self.field(),
                self.source.term(i).clone(),
                self.target.term(i).clone(),
            )
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|m| m.is_zero())
    }

    /// `∂_Y^j ∘ f^j = f^{j+1} ∘ ∂_X^j` in every degree, and all
    /// components admissible.
    pub fn is_chain_map(&self) -> bool {
        if !self.components.values().all(|m| m.is_admissible()) {
            return false;
        }
        let mut degrees: Vec<i32> = self.source.degrees();
        degrees.extend(self.target.degrees().iter().map(|d| d - 1));
        degrees.sort();
        degrees.dedup();
        degrees.into_iter().all(|j| {
            let left = self.target.differential(j).compose(&self.component(j));
            let right = self.component(j + 1).compose(&self.source.differential(j));
            matches!((left, right), (Ok(l), Ok(r)) if l == r)
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if other.target != self.source {
            return Err(Error::Shape("composing chain maps whose middle complexes differ".into()));
        }
        let mut components = BTreeMap::new();
        for (&i, f) in &other.components {
            if let Some(g) = self.components.get(&i) {
                components.insert(i, g.compose(f)?);
            }
        }
        Ok(ChainMap::unchecked(
            other.source.clone(),
            self.target.clone(),
            components,
        ))
    }

    fn check_parallel(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("chain maps have different source or target".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.check_parallel(other)?;
        let components = combine(&self.components, &other.components, |a, b| a.add(b), false)?;
        Ok(ChainMap::unchecked(self.source.clone(), self.target.clone(), components))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.check_parallel(other)?;
        let components = combine(&self.components, &other.components, |a, b| a.sub(b), true)?;
        Ok(ChainMap::unchecked(self.source.clone(), self.target.clone(), components))
    }

    pub fn scale(&self, factor: &Scalar) -> ChainMap {
        let components = self
            .components
            .iter()
            .map(|(&i, m)| (i, m.scale(factor)))
            .collect();
        ChainMap::unchecked(self.source.clone(), self.target.clone(), components)
    }

    /// `f[ε]: X[ε] → Y[ε]`.
    pub fn shift(&self, epsilon: &Rational) -> ChainMap {
        ChainMap::unchecked(
            self.source.shift(epsilon),
            self.target.shift(epsilon),
            self.components
                .iter()
                .map(|(&i, m)| (i, m.shift(epsilon)))
                .collect(),
        )
    }

    /// `Σ coeffs[k] · basis[k]`; all basis maps must be parallel.
    pub fn combination(
        source: &FreeChainComplex,
        target: &FreeChainComplex,
        basis: &[ChainMap],
        coeffs: &[Scalar],
    ) -> Result<ChainMap> {
        let mut acc = ChainMap::zero(source, target);
        for (b, c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c))?;
            }
        }
        Ok(acc)
    }

    pub fn flatten(&self, layout: &EntryLayout) -> Vec<Scalar> {
        layout.flatten(&self.components)
    }

    pub fn convert(&self, field: Field) -> Result<ChainMap> {
        let components = self
            .components
            .iter()
            .map(|(&i, m)| Ok((i, m.convert(field)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(ChainMap::unchecked(
            self.source.convert(field)?,
            self.target.convert(field)?,
            components,
        ))
    }
}

/// A degree-lowering family `h^i: X^i → Y^{i−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    source: FreeChainComplex,
    target: FreeChainComplex,
    components: BTreeMap<i32, GradedMatrix>,
}

impl Homotopy {
    /// Checks shapes and admissibility of every component.
    pub fn new(
        source: FreeChainComplex,
        target: FreeChainComplex,
        components: BTreeMap<i32, GradedMatrix>,
    ) -> Result<Homotopy> {
        let components = check_components(&source, &target, components, -1)?;
        if let Some(i) = components.iter().find(|(_, m)| !m.is_admissible()).map(|(i, _)| i) {
            return Err(Error::Inadmissible(format!("homotopy component in degree {i}")));
        }
        Ok(Homotopy {
            source,
            target,
            components,
        })
    }

    pub(crate) fn unchecked(
        source: FreeChainComplex,
        target: FreeChainComplex,
        components: BTreeMap<i32, GradedMatrix>,
    ) -> Homotopy {
        Homotopy {
            source,
            target,
            components,
        }
    }

    pub fn zero(x: &FreeChainComplex, y: &FreeChainComplex) -> Homotopy {
        Homotopy::unchecked(x.clone(), y.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &FreeChainComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeChainComplex {
        &self.target
    }

    pub fn components(&self) -> &BTreeMap<i32, GradedMatrix> {
        &self.components
    }

    pub fn component(&self, i: i32) -> GradedMatrix {
        self.components.get(&i).cloned().unwrap_or_else(|| {
            GradedMatrix::zero(
                self.source.field(),
                self.source.term(i).clone(),
                self.target.term(i - 1).clone(),
            )
        })
    }

    /// `∂h + h∂`, the chain map this homotopy connects to zero.
    pub fn boundary(&self) -> ChainMap {
        let mut components = BTreeMap::new();
        for &i in self.source.terms().keys() {
            if self.target.term(i).is_zero() {
                continue;
            }
            let a = self
                .target
                .differential(i - 1)
                .compose(&self.component(i))
                .expect("shapes match");
            let b = self
                .component(i + 1)
                .compose(&self.source.differential(i))
                .expect("shapes match");
            components.insert(i, a.add(&b).expect("parallel"));
        }
        ChainMap::unchecked(self.source.clone(), self.target.clone(), components)
    }

    /// Exact re-check of `φ = ∂h + h∂`.
    pub fn witnesses(&self, phi: &ChainMap) -> bool {
        if phi.source() != &self.source || phi.target() != &self.target {
            return false;
        }
        let b = self.boundary();
        let mut degrees: Vec<i32> = b.components().keys().copied().collect();
        degrees.extend(phi.components().keys());
        degrees.into_iter().all(|i| b.component(i) == phi.component(i))
    }

    pub fn flatten(&self, layout: &EntryLayout) -> Vec<Scalar> {
        layout.flatten(&self.components)
    }

    pub fn shift(&self, epsilon: &Rational) -> Homotopy {
        Homotopy::unchecked(
            self.source.shift(epsilon),
            self.target.shift(epsilon),
            self.components
                .iter()
                .map(|(&i, m)| (i, m.shift(epsilon)))
                .collect(),
        )
    }
}
