//! Bifiltered simplicial complexes and the persistence modules of their
//! sublevel-set homology.
//!
//! A simplex enters at its grade, and the sublevel complex at `s` consists
//! of the simplices with grade `≤ s`. The simplicial chain complex becomes a
//! complex of free modules (the `k`-chains in degree `−k`), and `H_i` is its
//! cohomology in degree `−i`.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{cohomology_presentation, FreeChainComplex};
use crate::error::{Error, Result};
use crate::exact::{alternating_sign, int, is_negative, Field, Matrix, Rational};
use crate::freemod::{FreeModule, GradedMatrix};
use crate::grading::Grade;
use crate::presentation::Presentation;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub grade: Grade,
}

impl Simplex {
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-one faces, the `j`-th omitting vertex `j`.
    pub fn faces(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let k = self.vertices.len();
        (0..if k > 1 { k } else { 0 }).map(move |j| {
            let mut f = self.vertices.clone();
            f.remove(j);
            f
        })
    }
}

/// A finite simplicial complex with monotone grades in `ℝ²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bifiltration {
    simplices: Vec<Simplex>,
}

impl Bifiltration {
    /// Validates and normalizes: vertex lists are sorted, simplices ordered
    /// by dimension then vertices. Fails unless the input is closed under
    /// faces and every face enters no later than its cofaces.
    pub fn new(simplices: Vec<Simplex>) -> Result<Bifiltration> {
        let mut simplices: Vec<Simplex> = simplices
            .into_iter()
            .map(|mut s| {
                s.vertices.sort_unstable();
                s
            })
            .collect();
        simplices.sort_by(|a, b| {
            (a.vertices.len(), &a.vertices).cmp(&(b.vertices.len(), &b.vertices))
        });
        let mut grade_of: HashMap<&[usize], &Grade> = HashMap::new();
        for s in &simplices {
            if s.vertices.is_empty() {
                return Err(Error::InvalidBifiltration("empty simplex".into()));
            }
            if s.vertices.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidBifiltration(format!(
                    "repeated vertex in {:?}",
                    s.vertices
                )));
            }
            if s.grade.dim() != 2 {
                return Err(Error::InvalidBifiltration(format!(
                    "grade {} of {:?} is not in R^2",
                    s.grade, s.vertices
                )));
            }
            for face in s.faces() {
                match grade_of.get(face.as_slice()) {
                    None => {
                        return Err(Error::InvalidBifiltration(format!(
                            "face {face:?} of {:?} is missing",
                            s.vertices
                        )))
                    }
                    Some(g) if !Grade::le(g, &s.grade) => {
                        return Err(Error::InvalidBifiltration(format!(
                            "face {face:?} enters after {:?}",
                            s.vertices
                        )))
                    }
                    Some(_) => {}
                }
            }
            if grade_of.insert(&s.vertices, &s.grade).is_some() {
                return Err(Error::InvalidBifiltration(format!(
                    "simplex {:?} listed twice",
                    s.vertices
                )));
            }
        }
        Ok(Bifiltration { simplices })
    }

    /// Convenience constructor from vertex lists and integer grades.
    pub fn from_ints(simplices: &[(&[usize], [i64; 2])]) -> Result<Bifiltration> {
        Bifiltration::new(
            simplices
                .iter()
                .map(|(v, g)| Simplex {
                    vertices: v.to_vec(),
                    grade: Grade::from_ints(g),
                })
                .collect(),
        )
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest simplex dimension, if any.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(Simplex::dimension)
    }

    /// The `k`-simplices in order.
    pub fn simplices_of_dimension(&self, k: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.dimension() == k)
    }

    /// The simplicial chain complex as free modules, `k`-chains in degree
    /// `−k`, with boundary signs `(−1)^j` for the face omitting vertex `j`.
    pub fn chain_complex(&self, field: Field) -> FreeChainComplex {
        let top = self.dimension().map_or(0, |d| d + 1);
        let mut index: Vec<HashMap<&[usize], usize>> = vec![HashMap::new(); top];
        let mut terms = BTreeMap::new();
        for k in 0..top {
            let mut grades = Vec::new();
            for s in self.simplices_of_dimension(k) {
                index[k].insert(&s.vertices, grades.len());
                grades.push(s.grade.clone());
            }
            terms.insert(-(k as i32), FreeModule::new(2, grades).expect("2-d grades"));
        }
        let mut differentials = BTreeMap::new();
        for k in 1..top {
            let (rows, cols) = (index[k - 1].len(), index[k].len());
            let mut m = Matrix::zeros(field, rows, cols);
            for s in self.simplices_of_dimension(k) {
                let c = index[k][s.vertices.as_slice()];
                for (j, face) in s.faces().enumerate() {
                    m.set(index[k - 1][face.as_slice()], c, alternating_sign(field, j));
                }
            }
            let d = GradedMatrix::new(
                terms[&-(k as i32)].clone(),
                terms[&-(k as i32 - 1)].clone(),
                m,
            )
            .expect("faces enter first");
            differentials.insert(-(k as i32), d);
        }
        FreeChainComplex::new(2, field, terms, differentials).expect("consistent shapes")
    }
}

/// A minimal presentation of `H_i` of the sublevel filtration.
pub fn homology_presentation(k: &Bifiltration, i: usize, field: Field) -> Result<Presentation> {
    cohomology_presentation(&k.chain_complex(field), -(i as i32))
}

/// Moves every grade by a seeded pseudorandom offset of sup-norm at most
/// `δ`, then restores monotonicity by joining each grade with the final
/// grades of its faces.
///
/// Offsets are multiples of `δ/10`. The output stays within `δ` of the
/// input in sup-norm, since a join of values each within `δ` of values
/// bounded by the original grade is itself within `δ` of it.
pub fn perturb(k: &Bifiltration, delta: &Rational, seed: u64) -> Result<Bifiltration> {
    if is_negative(delta) {
        return Err(Error::InvalidArgument("δ must be nonnegative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = delta / int(10);
    let mut final_grade: HashMap<Vec<usize>, Grade> = HashMap::new();
    let mut out = Vec::with_capacity(k.len());
    for s in k.simplices() {
        let coords = s
            .grade
            .coords()
            .iter()
            .map(|c| c + &step * int(rng.gen_range(-10..=10)))
            .collect();
        let mut g = Grade::new(coords);
        for face in s.faces() {
            g = g.join(&final_grade[&face]);
        }
        final_grade.insert(s.vertices.clone(), g.clone());
        out.push(Simplex {
            vertices: s.vertices.clone(),
            grade: g,
        });
    }
    Bifiltration::new(out)
}

/// Largest coordinate difference between matching simplices.
pub fn sup_distance(a: &Bifiltration, b: &Bifiltration) -> Result<Rational> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument("different simplex sets".into()));
    }
    let mut best = int(0);
    for (x, y) in a.simplices().iter().zip(b.simplices()) {
        if x.vertices != y.vertices {
            return Err(Error::InvalidArgument("different simplex sets".into()));
        }
        for (u, v) in x.grade.coords().iter().zip(y.grade.coords()) {
            let d = if u > v { u - v } else { v - u };
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}
