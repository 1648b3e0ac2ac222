//! The small worked examples used throughout the guide and the tests.
//!
//! With `ε > 0` over `ℝ²`:
//!
//! * `M = F_(0,0)`, the free module on one generator at the origin;
//! * the box `k_[0,ε)²`, presented as `coker((1 1): F_(ε,0) ⊕ F_(0,ε) → F_(0,0))`;
//! * `N_ε = M ⊕ box`, ordered (free summand, box summand).
//!
//! `N_ε` has two generators in degree 0 while `M` has one, yet the two are
//! `ε/2`-interleaved. The box is resolved by the complex `C_ε`
//! `0 → F_(ε,ε) → F_(ε,0) ⊕ F_(0,ε) → F_(0,0) → 0`.

use std::collections::BTreeMap;

use crate::complexes::{FreeChainComplex, Homotopy};
use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Rational};
use crate::freemod::{FreeModule, GradedMatrix};
use crate::grading::Grade;
use crate::presentation::{FPMorphism, Presentation};

fn grade(a: &Rational, b: &Rational) -> Grade {
    Grade::new(vec![a.clone(), b.clone()])
}

fn zero() -> Rational {
    Rational::from_integer(0.into())
}

/// `F_0` over `ℝⁿ`, with no relations.
pub fn quadrant(field: Field, n: usize) -> Presentation {
    let gens = FreeModule::new(n, vec![Grade::diagonal(n, zero())]).expect("one grade");
    Presentation::free(field, gens)
}

/// The half-open box `k_[0,ε)²`.
pub fn open_box(field: Field, epsilon: &Rational) -> Presentation {
    let z = zero();
    let gens = FreeModule::new(2, vec![grade(&z, &z)]).expect("2-d grade");
    Presentation::new(
        field,
        gens,
        vec![
            (grade(epsilon, &z), vec![field.one()]),
            (grade(&z, epsilon), vec![field.one()]),
        ],
    )
    .expect("relations above the generator")
}

/// `N_ε = F_(0,0) ⊕ k_[0,ε)²`.
pub fn quadrant_plus_box(field: Field, epsilon: &Rational) -> Presentation {
    let z = zero();
    let gens = FreeModule::new(2, vec![grade(&z, &z), grade(&z, &z)]).expect("2-d grades");
    Presentation::new(
        field,
        gens,
        vec![
            (grade(epsilon, &z), vec![field.zero(), field.one()]),
            (grade(&z, epsilon), vec![field.zero(), field.one()]),
        ],
    )
    .expect("relations above the generators")
}

fn three_term(
    field: Field,
    epsilon: &Rational,
    top: usize,
    d2: &[&[i64]],
    d1: &[&[i64]],
) -> FreeChainComplex {
    let z = zero();
    let f0 = FreeModule::new(2, vec![grade(&z, &z); top]).expect("2-d grades");
    let f1 = FreeModule::new(2, vec![grade(epsilon, &z), grade(&z, epsilon)]).expect("2-d grades");
    let f2 = FreeModule::new(2, vec![grade(epsilon, epsilon)]).expect("2-d grade");
    let d2 = GradedMatrix::new(f2.clone(), f1.clone(), Matrix::from_i64(field, d2))
        .expect("admissible");
    let d1 = GradedMatrix::new(f1.clone(), f0.clone(), Matrix::from_i64(field, d1))
        .expect("admissible");
    FreeChainComplex::new(
        2,
        field,
        BTreeMap::from([(-2, f2), (-1, f1), (0, f0)]),
        BTreeMap::from([(-2, d2), (-1, d1)]),
    )
    .expect("consistent shapes")
}

/// `C_ε`, the resolution of the open box, with `∂^{-2} = (1, −1)ᵀ` and
/// `∂^{-1} = (1 1)`.
pub fn box_complex(field: Field, epsilon: &Rational) -> FreeChainComplex {
    three_term(field, epsilon, 1, &[&[1], &[-1]], &[&[1, 1]])
}

/// A resolution of `N_ε`: the resolution of `M` plus `C_ε`, summands
/// ordered as in [`quadrant_plus_box`].
pub fn quadrant_plus_box_resolution(field: Field, epsilon: &Rational) -> FreeChainComplex {
    three_term(field, epsilon, 2, &[&[1], &[-1]], &[&[0, 0], &[1, 1]])
}

/// The same shape with `∂^{-2} = (1, 1)ᵀ` and `∂^{-1} = (1 1; 0 0)`. Over a
/// field of characteristic other than 2 this is not a complex.
pub fn literal_quadrant_plus_box_resolution(field: Field, epsilon: &Rational) -> FreeChainComplex {
    three_term(field, epsilon, 2, &[&[1], &[1]], &[&[1, 1], &[0, 0]])
}

/// The explicit homotopy from `s_{2η}` on `C_ε` to zero, with
/// `h^{-1} = (1 0)` and `h^0 = (0, 1)ᵀ`. Admissible exactly when
/// `ε ≤ 2η`.
pub fn box_homotopy(field: Field, epsilon: &Rational, eta: &Rational) -> Result<Homotopy> {
    let c = box_complex(field, epsilon);
    let shifted = c.shift(&(eta * Rational::from_integer(2.into())));
    let h1 = GradedMatrix::new(
        c.term(-1).clone(),
        shifted.term(-2).clone(),
        Matrix::from_i64(field, &[&[1, 0]]),
    )?;
    let h0 = GradedMatrix::new(
        c.term(0).clone(),
        shifted.term(-1).clone(),
        Matrix::from_i64(field, &[&[0], &[1]]),
    )?;
    Homotopy::new(c, shifted, BTreeMap::from([(-1, h1), (0, h0)]))
}

/// The interleaving pair `f = (s, 0)ᵀ: M → N_ε[η]` and
/// `g = (s 0): N_ε → M[η]`.
pub fn quadrant_box_interleaving(
    field: Field,
    epsilon: &Rational,
    eta: &Rational,
) -> Result<(FPMorphism, FPMorphism)> {
    if crate::exact::is_negative(eta) {
        return Err(Error::InvalidArgument("η must be nonnegative".into()));
    }
    let m = quadrant(field, 2);
    let n = quadrant_plus_box(field, epsilon);
    let f = FPMorphism::from_lifts(m.clone(), n.shift(eta), &[vec![field.one(), field.zero()]])?;
    let g = FPMorphism::from_lifts(n, m.shift(eta), &[vec![field.one()], vec![field.zero()]])?;
    Ok((f, g))
}
