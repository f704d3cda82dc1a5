//! Graphons: partitions, step-graphons, grid and closed-form families.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{common_denominator, parse_rational};

/// Breakpoints `0 = s_0 < s_1 < ... < s_q = 1`, stored exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    breakpoints: Vec<BigRational>,
    approx: Vec<f64>,
}

impl Partition {
    pub fn new(breakpoints: Vec<BigRational>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::EndpointsNot01);
        }
        for (index, w) in breakpoints.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::NonMonotonePartition { index: index + 1 });
            }
        }
        if !breakpoints[0].is_zero() || !breakpoints[breakpoints.len() - 1].is_one() {
            return Err(Error::EndpointsNot01);
        }
        let approx = breakpoints
            .iter()
            .map(|b| b.to_f64().unwrap_or(f64::NAN))
            .collect();
        Ok(Self {
            breakpoints,
            approx,
        })
    }

    pub fn from_decimals<S: AsRef<str>>(raw: &[S]) -> Result<Self> {
        let bp = raw
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(bp)
    }

    /// The uniform partition `(0, 1/n, ..., 1)`.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "uniform partition needs at least one cell");
        let n_big = BigRational::from_integer(n.into());
        let bp = (0..=n)
            .map(|i| BigRational::from_integer(i.into()) / n_big.clone())
            .collect();
        Self::new(bp).expect("uniform partition is valid")
    }

    /// Number of intervals.
    pub fn q(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn interval_lengths(&self) -> Vec<BigRational> {
        self.breakpoints.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    /// Cell containing `x`, using half-open cells with the last one closed at 1.
    /// The caller guarantees `x` in `[0, 1]`.
    pub fn cell_of(&self, x: f64) -> usize {
        // number of interior breakpoints <= x
        let interior = &self.approx[1..self.approx.len() - 1];
        interior.partition_point(|&b| b <= x)
    }

    pub fn cell_of_exact(&self, x: &BigRational) -> usize {
        let interior = &self.breakpoints[1..self.breakpoints.len() - 1];
        interior.partition_point(|b| b <= x)
    }

    /// True iff every breakpoint is a multiple of `1/n`.
    pub fn aligned_to_grid(&self, n: usize) -> bool {
        if n == 0 {
            return false;
        }
        let n_big = BigRational::from_integer(n.into());
        self.breakpoints.iter().all(|b| (b * &n_big).is_integer())
    }

    /// Least `n` such that the uniform grid of `n` cells refines this partition.
    pub fn least_aligned_resolution(&self) -> Option<usize> {
        common_denominator(&self.breakpoints)
    }
}

/// Interval lengths of a step-graphon's partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcentrationVector(Vec<BigRational>);

impl ConcentrationVector {
    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

/// A graphon constant on each rectangle of a partition.
#[derive(Debug, Clone, PartialEq)]
pub struct StepGraphon {
    partition: Partition,
    values: Vec<Vec<BigRational>>,
    approx: Vec<Vec<f64>>,
}

impl StepGraphon {
    pub fn new(partition: Partition, values: Vec<Vec<BigRational>>) -> Result<Self> {
        let q = partition.q();
        if values.len() != q || values.iter().any(|row| row.len() != q) {
            return Err(Error::DimensionMismatch(format!(
                "value matrix must be {q}x{q} to match the partition"
            )));
        }
        let one = BigRational::one();
        for (i, row) in values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_negative() || *v > one {
                    return Err(Error::ValueOutOfRange {
                        row: i,
                        col: j,
                        value: v.to_string(),
                    });
                }
                if *v != values[j][i] {
                    return Err(Error::AsymmetricValues { row: i, col: j });
                }
            }
        }
        let approx = values
            .iter()
            .map(|row| row.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
            .collect();
        Ok(Self {
            partition,
            values,
            approx,
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn q(&self) -> usize {
        self.partition.q()
    }

    pub fn values(&self) -> &[Vec<BigRational>] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> &BigRational {
        &self.values[i][j]
    }

    pub fn concentration_vector(&self) -> ConcentrationVector {
        ConcentrationVector(self.partition.interval_lengths())
    }

    /// Value at `(x, y)`; coordinates must already be range-checked.
    #[inline]
    pub(crate) fn eval_unchecked(&self, x: f64, y: f64) -> f64 {
        self.approx[self.partition.cell_of(x)][self.partition.cell_of(y)]
    }

    pub fn evaluate(&self, x: f64, y: f64) -> Result<f64> {
        check_unit_square(x, y)?;
        Ok(self.eval_unchecked(x, y))
    }

    pub fn evaluate_exact(&self, x: &BigRational, y: &BigRational) -> Result<&BigRational> {
        let in_range = |v: &BigRational| !v.is_negative() && *v <= BigRational::one();
        if !in_range(x) || !in_range(y) {
            return Err(Error::CoordinateOutOfRange {
                x: x.to_f64().unwrap_or(f64::NAN),
                y: y.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(&self.values[self.partition.cell_of_exact(x)][self.partition.cell_of_exact(y)])
    }

    /// The `{0,1}`-valued step-graphon with the same support, on the same partition.
    pub fn saturate(&self) -> Self {
        let values = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        if v.is_positive() {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(self.partition.clone(), values).expect("saturation preserves validity")
    }

    /// Inserts extra breakpoints, duplicating block values into the split cells.
    /// Breakpoints already present, or outside the open interval (0, 1), are ignored.
    pub fn refine(&self, extra: &[BigRational]) -> Self {
        let mut bp: Vec<BigRational> = self.partition.breakpoints().to_vec();
        bp.extend(
            extra
                .iter()
                .filter(|b| b.is_positive() && **b < BigRational::one())
                .cloned(),
        );
        bp.sort();
        bp.dedup();
        let refined = Partition::new(bp).expect("refined breakpoints stay valid");

        // parent cell of each refined cell, located via its left endpoint
        let parent: Vec<usize> = refined.breakpoints()[..refined.q()]
            .iter()
            .map(|left| self.partition.cell_of_exact(left))
            .collect();
        let values = parent
            .iter()
            .map(|&pi| {
                parent
                    .iter()
                    .map(|&pj| self.values[pi][pj].clone())
                    .collect()
            })
            .collect();
        Self::new(refined, values).expect("refinement preserves validity")
    }

    /// Multiplies every block value by `factor`, which must keep values within [0, 1].
    pub fn scaled(&self, factor: &BigRational) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| v * factor).collect())
            .collect();
        Self::new(self.partition.clone(), values)
    }
}

/// Validates raw decimal strings into a step-graphon.
pub fn validate_step_graphon<S: AsRef<str>>(sigma: &[S], values: &[Vec<S>]) -> Result<StepGraphon> {
    let partition = Partition::from_decimals(sigma)?;
    let values = values
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_rational(s.as_ref()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    StepGraphon::new(partition, values)
}

/// Closed-form graphon families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `W(x, y) = p`.
    Constant(BigRational),
    /// `W(x, y) = x y`.
    Product,
    /// `W(x, y) = (x + y) / 2`.
    Mean,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Constant(_) => "constant",
            Family::Product => "product",
            Family::Mean => "mean",
        }
    }

    #[inline]
    fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Family::Constant(p) => p.to_f64().unwrap_or(f64::NAN),
            Family::Product => x * y,
            Family::Mean => 0.5 * (x + y),
        }
    }
}

/// A graphon given as a step-graphon, a uniform grid, a closed-form family,
/// or the saturation of one of those.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneralGraphon {
    Step(StepGraphon),
    /// Uniform `N x N` grid; stored as a step-graphon on the uniform partition.
    Grid(StepGraphon),
    Family(Family),
    Saturated(Box<GeneralGraphon>),
}

impl GeneralGraphon {
    pub fn grid(values: Vec<Vec<BigRational>>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimensionMismatch(
                "grid resolution must be at least 1".into(),
            ));
        }
        let partition = Partition::uniform(values.len());
        Ok(GeneralGraphon::Grid(StepGraphon::new(partition, values)?))
    }

    pub fn constant(p: BigRational) -> Result<Self> {
        if p.is_negative() || p > BigRational::one() {
            return Err(Error::InvalidParameter(format!(
                "constant p = {p} is outside [0, 1]"
            )));
        }
        Ok(GeneralGraphon::Family(Family::Constant(p)))
    }

    pub fn evaluate(&self, x: f64, y: f64) -> Result<f64> {
        check_unit_square(x, y)?;
        Ok(self.eval_unchecked(x, y))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, x: f64, y: f64) -> f64 {
        match self {
            GeneralGraphon::Step(g) | GeneralGraphon::Grid(g) => g.eval_unchecked(x, y),
            GeneralGraphon::Family(f) => f.eval(x, y),
            GeneralGraphon::Saturated(inner) => {
                if inner.eval_unchecked(x, y) > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Pointwise indicator of `W > 0`. Step and grid inputs stay piecewise constant.
    pub fn saturate(&self) -> Self {
        match self {
            GeneralGraphon::Step(g) => GeneralGraphon::Step(g.saturate()),
            GeneralGraphon::Grid(g) => GeneralGraphon::Grid(g.saturate()),
            GeneralGraphon::Family(Family::Constant(p)) => {
                let v = if p.is_positive() {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                GeneralGraphon::Family(Family::Constant(v))
            }
            GeneralGraphon::Saturated(_) => self.clone(),
            other => GeneralGraphon::Saturated(Box::new(other.clone())),
        }
    }

    /// The exact step-graphon form, when the graphon is piecewise constant.
    pub fn as_step(&self) -> Option<StepGraphon> {
        match self {
            GeneralGraphon::Step(g) | GeneralGraphon::Grid(g) => Some(g.clone()),
            GeneralGraphon::Family(Family::Constant(p)) => Some(
                StepGraphon::new(Partition::uniform(1), vec![vec![p.clone()]])
                    .expect("constant in [0,1] is a valid step-graphon"),
            ),
            GeneralGraphon::Saturated(inner) => inner.as_step().map(|g| g.saturate()),
            GeneralGraphon::Family(_) => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GeneralGraphon::Step(_) => "step",
            GeneralGraphon::Grid(_) => "grid",
            GeneralGraphon::Family(_) => "family",
            GeneralGraphon::Saturated(_) => "saturated",
        }
    }
}

impl From<StepGraphon> for GeneralGraphon {
    fn from(g: StepGraphon) -> Self {
        GeneralGraphon::Step(g)
    }
}

fn check_unit_square(x: f64, y: f64) -> Result<()> {
    let ok = |v: f64| (0.0..=1.0).contains(&v);
    if ok(x) && ok(y) {
        Ok(())
    } else {
        Err(Error::CoordinateOutOfRange { x, y })
    }
}

/// The step-graphon drawn in the introductory example: three blocks on
/// `(0, 0.3, 0.6, 1)`, support on blocks (1,1), (1,2), (2,3), (3,3).
pub fn example_three_block() -> StepGraphon {
    validate_step_graphon(
        &["0", "0.3", "0.6", "1"],
        &[
            vec!["1", "0.7", "0"],
            vec!["0.7", "0", "0.4"],
            vec!["0", "0.4", "1"],
        ],
    )
    .expect("example graphon is valid")
}
