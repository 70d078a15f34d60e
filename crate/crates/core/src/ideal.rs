//! Ideal presentations: a finite generator list in a named variable set.
//!
//! Generators are kept exactly as given; no normalization or Groebner
//! preprocessing happens at this layer, so witness reporting can refer
//! back to the user's presentation.

use std::fmt;

use num_traits::Zero;

use crate::linalg::RatMatrix;
use crate::poly::{LinearForm, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealError {
    EmptyGeneratorList,
    NonVanishingGenerator { index: usize },
    ArityMismatch { expected: usize, found: usize },
    ZeroLinearForm,
    SingularMatrix,
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::EmptyGeneratorList => write!(f, "ideal needs at least one generator"),
            IdealError::NonVanishingGenerator { index } => {
                write!(f, "generator {} does not vanish at the origin", index + 1)
            }
            IdealError::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} variables, found {found}")
            }
            IdealError::ZeroLinearForm => write!(f, "cannot adjoin the zero form"),
            IdealError::SingularMatrix => write!(f, "coordinate change matrix is singular"),
        }
    }
}

impl std::error::Error for IdealError {}

/// Finitely generated ideal of germs vanishing at the origin.
#[derive(Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    nvars: usize,
    generators: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Result<Self, IdealError> {
        if generators.is_empty() {
            return Err(IdealError::EmptyGeneratorList);
        }
        for (i, g) in generators.iter().enumerate() {
            if g.nvars() != nvars {
                return Err(IdealError::ArityMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
            if !g.constant_term().is_zero() {
                return Err(IdealError::NonVanishingGenerator { index: i });
            }
        }
        Ok(IdealPresentation { nvars, generators })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Extend the generator list by linear forms; the variable count is
    /// unchanged. Zero forms are rejected.
    pub fn adjoin(&self, forms: &[LinearForm]) -> Result<IdealPresentation, IdealError> {
        let mut gens = self.generators.clone();
        for form in forms {
            if form.nvars() != self.nvars {
                return Err(IdealError::ArityMismatch {
                    expected: self.nvars,
                    found: form.nvars(),
                });
            }
            if form.is_zero() {
                return Err(IdealError::ZeroLinearForm);
            }
            gens.push(form.to_polynomial());
        }
        Ok(IdealPresentation {
            nvars: self.nvars,
            generators: gens,
        })
    }

    /// Compose every generator with the linear map `z -> M z`.
    pub fn change_coordinates(&self, m: &RatMatrix) -> Result<IdealPresentation, IdealError> {
        if m.rows != self.nvars || m.cols != self.nvars {
            return Err(IdealError::ArityMismatch {
                expected: self.nvars,
                found: m.rows,
            });
        }
        if m.det().is_zero() {
            return Err(IdealError::SingularMatrix);
        }
        let images: Vec<Polynomial> = (0..self.nvars)
            .map(|i| {
                Polynomial::from_terms(
                    self.nvars,
                    (0..self.nvars).map(|j| {
                        let mut e = vec![0; self.nvars];
                        e[j] = 1;
                        (e, m[(i, j)].clone())
                    }),
                )
            })
            .collect();
        let gens = self
            .generators
            .iter()
            .map(|g| g.substitute(&images))
            .collect();
        Ok(IdealPresentation {
            nvars: self.nvars,
            generators: gens,
        })
    }
}

impl fmt::Display for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Rat};

    fn poly(nvars: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    fn prop1_ideal() -> IdealPresentation {
        IdealPresentation::new(
            3,
            vec![
                poly(3, &[(&[3, 0, 0], 1), (&[0, 1, 1], -1)]),
                poly(3, &[(&[0, 2, 0], 1)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn adjoin_examples() {
        let ideal = prop1_ideal();
        let with_z3 = ideal.adjoin(&[LinearForm::coordinate(3, 2)]).unwrap();
        assert_eq!(with_z3.generators().len(), 3);
        assert_eq!(with_z3.generators()[2].to_string(), "z3");

        let same = ideal.adjoin(&[]).unwrap();
        assert_eq!(same, ideal);

        let twice = ideal
            .adjoin(&[LinearForm::coordinate(3, 2)])
            .unwrap()
            .adjoin(&[LinearForm::coordinate(3, 0)])
            .unwrap();
        let once = ideal
            .adjoin(&[LinearForm::coordinate(3, 2), LinearForm::coordinate(3, 0)])
            .unwrap();
        assert_eq!(twice, once);

        let zero = LinearForm::new(vec![Rat::zero(); 3]);
        assert_eq!(ideal.adjoin(&[zero]), Err(IdealError::ZeroLinearForm));
    }

    #[test]
    fn change_coordinates_swap_and_identity() {
        let ideal = IdealPresentation::new(2, vec![poly(2, &[(&[1, 0], 1)])]).unwrap();
        let swap = RatMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let swapped = ideal.change_coordinates(&swap).unwrap();
        assert_eq!(swapped.generators()[0].to_string(), "z2");

        let id = RatMatrix::identity(2);
        assert_eq!(ideal.change_coordinates(&id).unwrap(), ideal);

        let singular = RatMatrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            ideal.change_coordinates(&singular),
            Err(IdealError::SingularMatrix)
        );
    }

    #[test]
    fn change_coordinates_round_trip() {
        let ideal = prop1_ideal();
        let m = RatMatrix::from_int_rows(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        let there = ideal.change_coordinates(&m).unwrap();
        let back = there.change_coordinates(&inv).unwrap();
        assert_eq!(back, ideal);
    }

    #[test]
    fn proposition_substitution_lands_in_ideal() {
        // w3 = z3 + a*z1 + b*z2 sends the first generator to
        // w1^3 + a*w1*w2 + b*w2^2 - w2*w3; with the w3 generator adjoined
        // this matches the slice polynomial from the worked example.
        let ideal = prop1_ideal();
        // z -> M w with z1 = w1, z2 = w2, z3 = w3 - w1 - w2 (a = b = 1).
        let m = RatMatrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 1]]);
        let changed = ideal.change_coordinates(&m).unwrap();
        let expected = poly(
            3,
            &[(&[3, 0, 0], 1), (&[1, 1, 0], 1), (&[0, 2, 0], 1), (&[0, 1, 1], -1)],
        );
        assert_eq!(changed.generators()[0], expected);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(
            IdealPresentation::new(2, vec![]),
            Err(IdealError::EmptyGeneratorList)
        );
        let with_const = poly(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        assert_eq!(
            IdealPresentation::new(2, vec![with_const]),
            Err(IdealError::NonVanishingGenerator { index: 0 })
        );
    }
}
