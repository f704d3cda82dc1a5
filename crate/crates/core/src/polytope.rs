//! Membership of a point in the convex hull of the incidence columns, and in
//! its relative interior.
//!
//! The relative interior of a finite convex hull is the set of strictly
//! positive convex combinations of its generators, so both questions are
//! answered by one LP: maximize the smallest coefficient `t` over all convex
//! combinations reproducing the point. `t* > 0` means interior, `t* = 0`
//! boundary, and infeasibility means the point is outside.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lp::{lp_max_min_coefficient, LpOutcome};
use crate::matrix::Matrix;
use crate::model::StepGraphon;
use crate::scalar::Scalar;
use crate::skeleton::SkeletonGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Outside,
    Boundary,
    Interior,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Outside => "outside",
            Status::Boundary => "boundary",
            Status::Interior => "interior",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipVerdict<T> {
    pub status: Status,
    /// Convex coefficients `λ` with `B λ = x`; absent when outside.
    pub certificate: Option<Vec<T>>,
    /// `t* = min λ` at the max-min optimum; absent when outside.
    pub margin: Option<T>,
    /// Farkas vector `y` with `yᵀx > max_j yᵀb_j`; present only when outside.
    pub separating_certificate: Option<Vec<T>>,
}

impl<T: Scalar> MembershipVerdict<T> {
    /// Re-checks the attached certificate against `(b, x)` from scratch.
    pub fn verify(&self, b: &Matrix<T>, x: &[T]) -> bool {
        match self.status {
            Status::Outside => self
                .separating_certificate
                .as_ref()
                .is_some_and(|y| verify_separation(b, x, y)),
            Status::Boundary | Status::Interior => {
                let (Some(lambda), Some(margin)) = (&self.certificate, &self.margin) else {
                    return false;
                };
                let min = lambda
                    .iter()
                    .cloned()
                    .reduce(|a, c| if c < a { c } else { a });
                let margin_ok = match self.status {
                    Status::Interior => margin.is_strictly_positive(),
                    _ => margin.is_negligible(),
                };
                let min_ok = min.is_none_or(|m| (m - margin.clone()).is_negligible());
                margin_ok && min_ok && verify_convex_combination(b, x, lambda)
            }
        }
    }
}

/// `B λ = x`, `λ >= 0` and `Σλ = 1`, up to the scalar's tolerance.
pub fn verify_convex_combination<T: Scalar>(b: &Matrix<T>, x: &[T], lambda: &[T]) -> bool {
    if lambda.len() != b.cols() || x.len() != b.rows() {
        return false;
    }
    if lambda.iter().any(Scalar::is_strictly_negative) {
        return false;
    }
    let total = lambda.iter().cloned().fold(T::zero(), |a, v| a + v);
    if !(total - T::one()).is_negligible() {
        return false;
    }
    b.mul_vec(lambda)
        .into_iter()
        .zip(x)
        .all(|(lhs, rhs)| (lhs - rhs.clone()).is_negligible())
}

/// Strict separation `yᵀx > max_j yᵀb_j`.
pub fn verify_separation<T: Scalar>(b: &Matrix<T>, x: &[T], y: &[T]) -> bool {
    if y.len() != b.rows() || x.len() != b.rows() {
        return false;
    }
    let yx = y
        .iter()
        .zip(x)
        .fold(T::zero(), |a, (u, v)| a + u.clone() * v.clone());
    b.left_mul_vec(y)
        .into_iter()
        .all(|yb| (yx.clone() - yb).is_strictly_positive())
}

/// Classifies `x` against the polytope spanned by the columns of `b`.
pub fn polytope_membership<T: Scalar>(b: &Matrix<T>, x: &[T]) -> Result<MembershipVerdict<T>> {
    if x.len() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, polytope lives in dimension {}",
            x.len(),
            b.rows()
        )));
    }
    let verdict = match lp_max_min_coefficient(b, x)? {
        LpOutcome::Infeasible { farkas } => MembershipVerdict {
            status: Status::Outside,
            certificate: None,
            margin: None,
            separating_certificate: Some(farkas),
        },
        LpOutcome::Optimal { t, lambda } => {
            let status = if t.is_strictly_positive() {
                Status::Interior
            } else {
                Status::Boundary
            };
            MembershipVerdict {
                status,
                certificate: Some(lambda),
                margin: Some(t),
                separating_certificate: None,
            }
        }
    };
    Ok(verdict)
}

/// Conditions B / B': the concentration vector against the edge polytope of
/// the skeleton.
pub fn step_membership<T: Scalar>(g: &StepGraphon) -> MembershipVerdict<T> {
    let b = SkeletonGraph::from_step_graphon(g).incidence_matrix::<T>();
    let x: Vec<T> = g
        .concentration_vector()
        .entries()
        .iter()
        .map(T::from_rational)
        .collect();
    polytope_membership(&b, &x).expect("probability-vector columns give a bounded program")
}

#[derive(Serialize, Deserialize)]
struct RawVerdict {
    status: Status,
    certificate: Option<Vec<String>>,
    margin: Option<String>,
    separating_certificate: Option<Vec<String>>,
}

fn to_strings<T: Scalar>(v: &Option<Vec<T>>) -> Option<Vec<String>> {
    v.as_ref()
        .map(|v| v.iter().map(ToString::to_string).collect())
}

fn parse_scalar<T: Scalar, E: serde::de::Error>(s: &str) -> std::result::Result<T, E> {
    T::from_str(s).map_err(|_| E::custom(format!("invalid number {s:?}")))
}

impl<T: Scalar> Serialize for MembershipVerdict<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawVerdict {
            status: self.status,
            certificate: to_strings(&self.certificate),
            margin: self.margin.as_ref().map(ToString::to_string),
            separating_certificate: to_strings(&self.separating_certificate),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for MembershipVerdict<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawVerdict::deserialize(deserializer)?;
        let parse_vec = |v: Option<Vec<String>>| -> std::result::Result<Option<Vec<T>>, D::Error> {
            v.map(|v| v.iter().map(|s| parse_scalar::<T, D::Error>(s)).collect())
                .transpose()
        };
        Ok(MembershipVerdict {
            status: raw.status,
            certificate: parse_vec(raw.certificate)?,
            margin: raw
                .margin
                .as_deref()
                .map(parse_scalar::<T, D::Error>)
                .transpose()?,
            separating_certificate: parse_vec(raw.separating_certificate)?,
        })
    }
}

/// Serde helper for an optional scalar stored as its display string.
pub(crate) mod opt_scalar_string {
    use super::*;

    pub fn serialize<T: Scalar, S: Serializer>(
        v: &Option<T>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref().map(ToString::to_string).serialize(s)
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<T>, D::Error> {
        Option::<String>::deserialize(d)?
            .as_deref()
            .map(parse_scalar::<T, D::Error>)
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{example_three_block, validate_step_graphon};
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn example_is_interior() {
        let v = step_membership::<BigRational>(&example_three_block());
        assert_eq!(v.status, Status::Interior);
        assert_eq!(v.margin, Some(q(1, 5)));
        let g = example_three_block();
        let b = SkeletonGraph::from_step_graphon(&g).incidence_matrix::<BigRational>();
        let x = g.concentration_vector().entries().to_vec();
        assert!(v.verify(&b, &x));
        let hand = [q(3, 20), q(3, 10), q(3, 10), q(1, 4)];
        assert!(verify_convex_combination(&b, &x, &hand));
    }

    #[test]
    fn single_point_polytope() {
        let b = Matrix::from_rows(&[vec![q(1, 1)]]);
        let v = polytope_membership(&b, &[q(1, 1)]).unwrap();
        assert_eq!(v.status, Status::Interior);
        assert_eq!(v.margin, Some(q(1, 1)));
    }

    #[test]
    fn outside_with_witness() {
        let b = Matrix::from_columns(2, &[vec![q(1, 1), q(0, 1)], vec![q(1, 2), q(1, 2)]]);
        let x = [q(3, 10), q(7, 10)];
        let v = polytope_membership(&b, &x).unwrap();
        assert_eq!(v.status, Status::Outside);
        assert!(v.certificate.is_none() && v.margin.is_none());
        assert!(v.verify(&b, &x));
        // the textbook witness also separates
        assert!(verify_separation(&b, &x, &[q(0, 1), q(1, 1)]));
    }

    #[test]
    fn boundary_case() {
        // loop at u1 and edge u1-u2, x = (1/2, 1/2): only λ = (0, 1) works
        let g =
            validate_step_graphon(&["0", "0.5", "1"], &[vec!["1", "1"], vec!["1", "0"]]).unwrap();
        let v = step_membership::<BigRational>(&g);
        assert_eq!(v.status, Status::Boundary);
        assert_eq!(v.margin, Some(q(0, 1)));
        let f = step_membership::<f64>(&g);
        assert_eq!(f.status, Status::Boundary);
    }

    #[test]
    fn dimension_mismatch() {
        let b = Matrix::from_rows(&[vec![q(1, 1)]]);
        assert!(matches!(
            polytope_membership(&b, &[q(1, 2), q(1, 2)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let v = step_membership::<BigRational>(&example_three_block());
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"1/5\""));
        let back: MembershipVerdict<BigRational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let f = step_membership::<f64>(&example_three_block());
        let back: MembershipVerdict<f64> =
            serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
