use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};

/// Coefficient vectors over GF(p) of length `dim` in lexicographic order,
/// first coordinate most significant.
pub(crate) struct Coefficients {
    field: Field,
    p: u64,
    current: Option<Vec<u64>>,
}

impl Coefficients {
    pub(crate) fn new(field: Field, dim: usize) -> Result<Coefficients> {
        let Field::Prime(p) = field else {
            return Err(Error::InvalidField(
                "searches enumerate over a prime field".into(),
            ));
        };
        Ok(Coefficients {
            field,
            p,
            current: Some(vec![0; dim]),
        })
    }
}

impl Iterator for Coefficients {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        let digits = self.current.as_mut()?;
        let out = digits
            .iter()
            .map(|&d| self.field.from_i64(d as i64))
            .collect();
        let mut k = digits.len();
        loop {
            if k == 0 {
                self.current = None;
                break;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < self.p {
                break;
            }
            digits[k] = 0;
        }
        Some(out)
    }
}

/// `p^dim`, saturating.
pub(crate) fn candidate_count(field: Field, dim: usize) -> u64 {
    match field {
        Field::Prime(p) => p.saturating_pow(dim.min(u32::MAX as usize) as u32),
        Field::Rational => u64::MAX,
    }
}
