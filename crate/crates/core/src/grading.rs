//! The grading poset (ℝⁿ, ≤) with exact rational points, diagonal shifts,
//! and the finite evaluation grids modules are computed on.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{format_rational, int, Rational};

/// A point of ℝⁿ with exact rational coordinates.
///
/// `Ord` is lexicographic. It is a linear extension of the product order, not
/// the product order itself; use [`Grade::leq`] for the latter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grade(Vec<Rational>);

impl Grade {
    pub fn new(coords: Vec<Rational>) -> Grade {
        assert!(!coords.is_empty(), "grades have dimension at least one");
        Grade(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Grade {
        Grade::new(coords.iter().map(|&c| int(c)).collect())
    }

    /// The constant grade `(value, …, value)` in dimension `n`.
    pub fn diagonal(n: usize, value: Rational) -> Grade {
        Grade::new(vec![value; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// Product order, `self ≤ other`.
    pub fn leq(&self, other: &Grade) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "comparing grades of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self.le(other))
    }

    /// Product order without the dimension check. Panics on mismatch.
    pub fn le(&self, other: &Grade) -> bool {
        assert_eq!(self.dim(), other.dim(), "grade dimension mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Coordinatewise maximum.
    pub fn join(&self, other: &Grade) -> Grade {
        assert_eq!(self.dim(), other.dim(), "grade dimension mismatch");
        Grade(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        )
    }

    /// The grade of a free generator after the module shift `·[ε]`:
    /// `a − ε·(1,…,1)`, since `F_a[ε] = F_{a−ε·1}`.
    pub fn shift(&self, epsilon: &Rational) -> Grade {
        Grade(self.0.iter().map(|a| a - epsilon).collect())
    }

    /// `a + ε·(1,…,1)`.
    pub fn translate(&self, epsilon: &Rational) -> Grade {
        Grade(self.0.iter().map(|a| a + epsilon).collect())
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `shift_grade(a, ε) = a − ε·(1,…,1)`.
pub fn shift_grade(grade: &Grade, epsilon: &Rational) -> Grade {
    grade.shift(epsilon)
}

/// A finite product grid: one strictly increasing list of values per axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    axes: Vec<Vec<Rational>>,
}

impl Grid {
    /// Product grid of the coordinates of `grades`. Errors on empty input or
    /// mixed dimensions.
    pub fn spanned_by<'a>(grades: impl IntoIterator<Item = &'a Grade>) -> Result<Grid> {
        critical_grid_iter(grades, &[])
    }

    pub fn from_axes(axes: Vec<Vec<Rational>>) -> Result<Grid> {
        if axes.is_empty() {
            return Err(Error::EmptyInput("grid with no axes".into()));
        }
        for axis in &axes {
            if axis.is_empty() || axis.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument(
                    "grid axes must be non-empty and strictly increasing".into(),
                ));
            }
        }
        Ok(Grid { axes })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Vec<Rational>] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, grade: &Grade) -> bool {
        grade.dim() == self.dim()
            && grade
                .coords()
                .iter()
                .zip(&self.axes)
                .all(|(c, axis)| axis.binary_search(c).is_ok())
    }

    /// All grid points in lexicographic order (a linear extension of ≤).
    pub fn points(&self) -> Vec<Grade> {
        let mut out = vec![Vec::new()];
        for axis in &self.axes {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Rational>| {
                    axis.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v.clone());
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Grade::new).collect()
    }
}

/// The evaluation grid for `grades` under the given diagonal `shifts`.
///
/// Each axis holds every coordinate `c` of every grade, together with `c − δ`
/// for each shift `δ` and `c − δᵢ − δⱼ` for each pair of distinct shifts.
pub fn critical_grid(grades: &[Grade], shifts: &[Rational]) -> Result<Grid> {
    critical_grid_iter(grades, shifts)
}

fn critical_grid_iter<'a>(
    grades: impl IntoIterator<Item = &'a Grade>,
    shifts: &[Rational],
) -> Result<Grid> {
    let mut offsets: BTreeSet<Rational> = BTreeSet::new();
    offsets.insert(int(0));
    for (i, a) in shifts.iter().enumerate() {
        offsets.insert(a.clone());
        for b in &shifts[i + 1..] {
            offsets.insert(a + b);
        }
    }
    let mut axes: Option<Vec<BTreeSet<Rational>>> = None;
    for grade in grades {
        let axes = axes.get_or_insert_with(|| vec![BTreeSet::new(); grade.dim()]);
        if axes.len() != grade.dim() {
            return Err(Error::Dimension(format!(
                "grade {grade} in a grid of dimension {}",
                axes.len()
            )));
        }
        for (axis, c) in axes.iter_mut().zip(grade.coords()) {
            for off in &offsets {
                axis.insert(c - off);
            }
        }
    }
    let axes = axes.ok_or_else(|| Error::EmptyInput("critical grid of no grades".into()))?;
    Ok(Grid {
        axes: axes.into_iter().map(|a| a.into_iter().collect()).collect(),
    })
}
