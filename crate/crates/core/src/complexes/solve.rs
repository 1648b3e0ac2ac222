use std::collections::HashMap;

use super::{ChainMap, EntryLayout, FreeChainComplex, Homotopy};
use crate::exact::{Echelon, Matrix, Scalar};

fn add_to(m: &mut Matrix, r: usize, c: usize, value: &Scalar) {
    if !value.is_zero() {
        let sum = m.get(r, c) + value;
        m.set(r, c, sum);
    }
}

/// The linear map `h ↦ ∂h + h∂` from homotopy coordinates to chain-map
/// coordinates, with both layouts.
pub fn homotopy_operator(
    x: &FreeChainComplex,
    y: &FreeChainComplex,
) -> (EntryLayout, EntryLayout, Matrix) {
    let hl = EntryLayout::new(x, y, -1);
    let ml = EntryLayout::new(x, y, 0);
    let mut op = Matrix::zeros(x.field(), ml.len(), hl.len());
    for (idx, j, k, c) in hl.entries() {
        // ∂_Y^{j-1} h^j lands in φ^j, column c
        if let Some(dy) = y.differential_ref(j - 1) {
            for r in 0..dy.target().rank() {
                if let Some(row) = ml.index(j, r, c) {
                    add_to(&mut op, row, idx, dy.entries().get(r, k));
                }
            }
        }
        // h^j ∂_X^{j-1} lands in φ^{j-1}, row k
        if let Some(dx) = x.differential_ref(j - 1) {
            for c2 in 0..dx.source().rank() {
                if let Some(row) = ml.index(j - 1, k, c2) {
                    add_to(&mut op, row, idx, dx.entries().get(c, c2));
                }
            }
        }
    }
    (hl, ml, op)
}

/// A witness `h` with `φ = ∂h + h∂`, or `None` when `φ` is not
/// nullhomotopic over the active field.
pub fn is_nullhomotopic(phi: &ChainMap) -> Option<Homotopy> {
    let (x, y) = (phi.source(), phi.target());
    let (hl, ml, op) = homotopy_operator(x, y);
    let rhs = phi.flatten(&ml);
    let h = op.solve(&rhs).expect("layout lengths agree")?;
    let witness = Homotopy::unchecked(x.clone(), y.clone(), hl.assemble(&h));
    debug_assert!(witness.witnesses(phi));
    Some(witness)
}

/// The subspace of nullhomotopic maps `X → Y`, in the coordinates of the
/// returned chain-map layout.
pub fn nullhomotopic_span(x: &FreeChainComplex, y: &FreeChainComplex) -> (EntryLayout, Echelon) {
    let (_, ml, op) = homotopy_operator(x, y);
    let span = Echelon::spanned_by(
        x.field(),
        ml.len(),
        op.transpose().to_rows().iter().map(|v| v.as_slice()),
    );
    (ml, span)
}

/// The linear constraints `∂_Y f − f ∂_X = 0` on chain-map coordinates.
pub(crate) fn commutation_matrix(
    x: &FreeChainComplex,
    y: &FreeChainComplex,
    layout: &EntryLayout,
) -> Matrix {
    let mut equations: HashMap<(i32, usize, usize), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut row_of = |key: (i32, usize, usize)| {
        let next = equations.len();
        *equations.entry(key).or_insert(next)
    };
    for (idx, j, k, c) in layout.entries() {
        if let Some(dy) = y.differential_ref(j) {
            for r in 0..dy.target().rank() {
                let v = dy.entries().get(r, k);
                if !v.is_zero() {
                    entries.push((row_of((j, r, c)), idx, v.clone()));
                }
            }
        }
        if let Some(dx) = x.differential_ref(j - 1) {
            for c2 in 0..dx.source().rank() {
                let v = dx.entries().get(c, c2);
                if !v.is_zero() {
                    entries.push((row_of((j - 1, k, c2)), idx, -v));
                }
            }
        }
    }
    let mut m = Matrix::zeros(x.field(), equations.len(), layout.len());
    for (r, c, v) in entries {
        add_to(&mut m, r, c, &v);
    }
    m
}

/// A basis of the space of chain maps `X → Y`.
pub fn chain_map_space(x: &FreeChainComplex, y: &FreeChainComplex) -> Vec<ChainMap> {
    let layout = EntryLayout::new(x, y, 0);
    if layout.is_empty() {
        return Vec::new();
    }
    commutation_matrix(x, y, &layout)
        .kernel_basis()
        .into_iter()
        .map(|v| ChainMap::from_coordinates(x, y, &layout, &v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, Field, Matrix};
    use crate::presentation::minimal_free_resolution;
    use crate::standard;

    const Q: Field = Field::Rational;

    fn smoothing_of_box(eta: crate::exact::Rational) -> ChainMap {
        let c1 = standard::box_complex(Q, &int(1));
        ChainMap::smoothing(&c1, &(eta * int(2))).unwrap()
    }

    #[test]
    fn box_smoothing_nullhomotopy_thresholds() {
        for (eta, feasible) in [
            (rat(3, 4), true),
            (rat(1, 2), true),
            (rat(1, 4), false),
            (rat(49, 100), false),
        ] {
            let phi = smoothing_of_box(eta.clone());
            let h = is_nullhomotopic(&phi);
            assert_eq!(h.is_some(), feasible, "η = {eta}");
            if let Some(h) = h {
                assert!(h.witnesses(&phi));
            }
        }
    }

    #[test]
    fn explicit_box_witness_rechecks() {
        let phi = smoothing_of_box(rat(3, 4));
        let h = standard::box_homotopy(Q, &int(1), &rat(3, 4)).unwrap();
        assert!(h.witnesses(&phi));
        assert_eq!(h.component(-1).entries(), &Matrix::from_i64(Q, &[&[1, 0]]));
        assert_eq!(h.component(0).entries(), &Matrix::from_i64(Q, &[&[0], &[1]]));
    }

    #[test]
    fn zero_map_has_zero_homotopy() {
        let c1 = standard::box_complex(Q, &int(1));
        let h = is_nullhomotopic(&ChainMap::zero(&c1, &c1)).unwrap();
        assert!(h.components().values().all(|m| m.is_zero()));
    }

    #[test]
    fn chain_map_space_dimensions() {
        let m = minimal_free_resolution(&standard::quadrant(Q, 2)).unwrap();
        assert_eq!(chain_map_space(&m, &m).len(), 1);
        let zero = FreeChainComplex::zero(2, Q);
        assert!(chain_map_space(&zero, &m).is_empty());
        let c1 = standard::box_complex(Q, &int(1));
        let eta = rat(3, 4);
        // f^0 ∘ (1 1) must vanish when the target has no degree -1 term
        assert!(chain_map_space(&c1, &m.shift(&eta)).is_empty());
        let space = chain_map_space(&m, &c1.shift(&eta));
        assert_eq!(space.len(), 1);
        assert!(space.iter().all(|f| f.is_chain_map()));
        assert!(!space[0].component(0).is_zero());
    }

    #[test]
    fn smoothing_is_a_chain_map_and_composes() {
        let c1 = standard::box_complex(Q, &int(1));
        let a = ChainMap::smoothing(&c1, &rat(1, 3)).unwrap();
        let b = ChainMap::smoothing(&c1.shift(&rat(1, 3)), &rat(1, 6)).unwrap();
        assert!(a.is_chain_map());
        assert_eq!(b.compose(&a).unwrap(), ChainMap::smoothing(&c1, &rat(1, 2)).unwrap());
        assert_eq!(ChainMap::smoothing(&c1, &int(0)).unwrap(), ChainMap::identity(&c1));
    }
}
