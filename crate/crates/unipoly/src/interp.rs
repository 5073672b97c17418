//! Exact univariate Lagrange interpolation over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::mpoly::{Layout, MPoly};
use crate::scalar::{RingTag, Scalar};

/// Fit a univariate polynomial of degree at most `degree_bound` through the
/// given `(node, value)` samples, exactly over the rationals.
///
/// The first `degree_bound + 1` samples determine the candidate; every
/// remaining sample is then checked against it and any disagreement is
/// reported with the offending node and both values. Nodes must be distinct
/// and all values rational. The result lives in the single-variable layout
/// `[t(1)]`.
pub fn lagrange_fit(samples: &[(i64, Scalar)], degree_bound: usize) -> Result<MPoly> {
    let needed = degree_bound + 1;
    if samples.len() < needed {
        return Err(Error::NotEnoughSamples { needed, got: samples.len() });
    }
    for (i, (node, value)) in samples.iter().enumerate() {
        if value.as_rational().is_none() {
            return Err(Error::RationalRequired(format!("sample value at node {node}")));
        }
        if samples[..i].iter().any(|(other, _)| other == node) {
            return Err(Error::DuplicateNode(*node));
        }
    }

    let layout = Layout::single("t", 1);
    let t = MPoly::var(layout.clone(), RingTag::Rational, 0)?;
    let mut fit = MPoly::zero(RingTag::Rational, layout.clone());
    for (i, (node_i, value_i)) in samples.iter().take(needed).enumerate() {
        // Basis polynomial L_i with L_i(node_i) = 1 and zeros at the others.
        let mut basis = MPoly::constant(Scalar::Rat(BigRational::from_integer(BigInt::from(1))), layout.clone());
        let mut denom = BigRational::from_integer(BigInt::from(1));
        for (j, (node_j, _)) in samples.iter().take(needed).enumerate() {
            if i == j {
                continue;
            }
            let node_j_poly = MPoly::constant(Scalar::from_int(*node_j), layout.clone());
            basis = basis.mul(&t.sub(&node_j_poly)?)?;
            denom *= BigRational::from_integer(BigInt::from(node_i - node_j));
        }
        let weight = value_i.as_rational().unwrap() / denom;
        fit = fit.add(&basis.scale(&Scalar::Rat(weight))?)?;
    }

    for (node, value) in samples {
        let predicted = fit.eval(&[Scalar::from_int(*node)])?;
        if &predicted != value {
            return Err(Error::SurplusSampleMismatch {
                node: *node,
                expected: predicted.to_string(),
                actual: value.to_string(),
            });
        }
    }
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::Degree;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d).unwrap()
    }

    #[test]
    fn fits_a_line_through_two_points() {
        let samples = vec![(0, q(1, 1)), (1, q(3, 1))];
        let p = lagrange_fit(&samples, 1).unwrap();
        assert_eq!(p.eval(&[q(0, 1)]).unwrap(), q(1, 1));
        assert_eq!(p.eval(&[q(1, 1)]).unwrap(), q(3, 1));
        assert_eq!(p.eval(&[q(5, 1)]).unwrap(), q(11, 1));
        assert_eq!(p.total_degree(), Degree::Fin(1));
    }

    #[test]
    fn fits_binomial_coefficient_values_with_rational_coefficients() {
        // Values of t(t-1)/2 at 0..=3.
        let samples = vec![(0, q(0, 1)), (1, q(0, 1)), (2, q(1, 1)), (3, q(3, 1))];
        let p = lagrange_fit(&samples, 2).unwrap();
        assert_eq!(p.eval(&[q(10, 1)]).unwrap(), q(45, 1));
        assert_eq!(p.total_degree(), Degree::Fin(2));
    }

    #[test]
    fn surplus_samples_are_verified() {
        // The line through (0,0), (1,1) is t, but the third sample lies off it.
        let samples = vec![(0, q(0, 1)), (1, q(1, 1)), (2, q(3, 1))];
        let err = lagrange_fit(&samples, 1).unwrap_err();
        assert_eq!(
            err,
            Error::SurplusSampleMismatch { node: 2, expected: "2".into(), actual: "3".into() }
        );
    }

    #[test]
    fn consistent_surplus_samples_pass() {
        let samples = vec![(0, q(0, 1)), (1, q(1, 1)), (2, q(2, 1)), (7, q(7, 1))];
        let p = lagrange_fit(&samples, 1).unwrap();
        assert_eq!(p.eval(&[q(-1, 1)]).unwrap(), q(-1, 1));
    }

    #[test]
    fn duplicate_nodes_are_rejected() {
        let samples = vec![(4, q(0, 1)), (4, q(1, 1))];
        assert_eq!(lagrange_fit(&samples, 1).unwrap_err(), Error::DuplicateNode(4));
    }

    #[test]
    fn too_few_samples_are_rejected() {
        let samples = vec![(0, q(0, 1))];
        assert_eq!(
            lagrange_fit(&samples, 1).unwrap_err(),
            Error::NotEnoughSamples { needed: 2, got: 1 }
        );
    }

    #[test]
    fn constant_fit_with_degree_bound_zero() {
        let samples = vec![(3, q(5, 2)), (8, q(5, 2))];
        let p = lagrange_fit(&samples, 0).unwrap();
        assert!(p.is_constant());
        assert_eq!(p.constant_term(), q(5, 2));
    }

    #[test]
    fn modular_values_are_rejected() {
        let samples = vec![(0, Scalar::modular(1, 5).unwrap()), (1, q(1, 1))];
        assert!(matches!(lagrange_fit(&samples, 1), Err(Error::RationalRequired(_))));
    }
}
