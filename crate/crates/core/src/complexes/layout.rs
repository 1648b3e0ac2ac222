use std::collections::{BTreeMap, HashMap};

use super::FreeChainComplex;
use crate::exact::{Field, Matrix, Scalar};
use crate::freemod::{FreeModule, GradedMatrix};

#[derive(Clone, Debug)]
struct Block {
    degree: i32,
    source: FreeModule,
    target: FreeModule,
    positions: Vec<(usize, usize)>,
    start: usize,
}

/// Coordinates for families of graded matrices `X^i → Y^{i+offset}`.
///
/// Only admissible positions get a coordinate; everything else is
/// structurally zero. Offset 0 describes chain maps, offset −1 homotopies.
#[derive(Clone, Debug)]
pub struct EntryLayout {
    field: Field,
    offset: i32,
    blocks: Vec<Block>,
    index: HashMap<(i32, usize, usize), usize>,
    len: usize,
}

impl EntryLayout {
    pub fn new(x: &FreeChainComplex, y: &FreeChainComplex, offset: i32) -> EntryLayout {
        let field = x.field();
        let mut blocks = Vec::new();
        let mut index = HashMap::new();
        let mut len = 0;
        for (&degree, source) in x.terms() {
            let target = y.term(degree + offset);
            if target.is_zero() {
                continue;
            }
            let start = len;
            let mut positions = Vec::new();
            for r in 0..target.rank() {
                for c in 0..source.rank() {
                    if target.grade(r).le(source.grade(c)) {
                        index.insert((degree, r, c), len);
                        positions.push((r, c));
                        len += 1;
                    }
                }
            }
            blocks.push(Block {
                degree,
                source: source.clone(),
                target: target.clone(),
                positions,
                start,
            });
        }
        EntryLayout {
            field,
            offset,
            blocks,
            index,
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn offset(&self) -> i32 {
        self.offset
    }

    /// Coordinate of entry `(row, col)` of the degree-`degree` component.
    pub fn index(&self, degree: i32, row: usize, col: usize) -> Option<usize> {
        self.index.get(&(degree, row, col)).copied()
    }

    /// `(coordinate, degree, row, col)` for every coordinate, in order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i32, usize, usize)> + '_ {
        self.blocks.iter().flat_map(|b| {
            b.positions
                .iter()
                .enumerate()
                .map(move |(k, &(r, c))| (b.start + k, b.degree, r, c))
        })
    }

    /// Reads the coordinates of a family of components; missing degrees
    /// count as zero.
    pub fn flatten(&self, components: &BTreeMap<i32, GradedMatrix>) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.len];
        for b in &self.blocks {
            if let Some(m) = components.get(&b.degree) {
                for (k, &(r, c)) in b.positions.iter().enumerate() {
                    out[b.start + k] = m.entries().get(r, c).clone();
                }
            }
        }
        out
    }

    /// Builds the components described by a coordinate vector.
    pub fn assemble(&self, values: &[Scalar]) -> BTreeMap<i32, GradedMatrix> {
        assert_eq!(values.len(), self.len, "coordinate vector length");
        self.blocks
            .iter()
            .map(|b| {
                let mut m = Matrix::zeros(self.field, b.target.rank(), b.source.rank());
                for (k, &(r, c)) in b.positions.iter().enumerate() {
                    m.set(r, c, values[b.start + k].clone());
                }
                let g = GradedMatrix::new(b.source.clone(), b.target.clone(), m)
                    .expect("layout positions are admissible");
                (b.degree, g)
            })
            .collect()
    }
}
