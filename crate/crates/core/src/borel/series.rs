//! Truncated power series (exp, log, Neumann inverse) on graded elements.

use std::fmt::Display;

use super::element::BorelElement;
use super::tensor::TensorElement;
use crate::error::{Error, Result};
use crate::scalar::{rat, GaussianRational};

/// The operations the series routines need. Grade is A-degree, and every
/// product of grade-positive elements terminates after `order` factors.
pub trait GradedAlgebra: Clone + Display {
    fn order(&self) -> usize;
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn grade_part(&self, g: usize) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &GaussianRational) -> Self;
}

impl GradedAlgebra for BorelElement {
    fn order(&self) -> usize {
        BorelElement::order(self)
    }
    fn one_like(&self) -> Self {
        BorelElement::one(self.order())
    }
    fn zero_like(&self) -> Self {
        BorelElement::zero(self.order())
    }
    fn is_zero(&self) -> bool {
        BorelElement::is_zero(self)
    }
    fn grade_part(&self, g: usize) -> Self {
        BorelElement::grade_part(self, g)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        BorelElement::scale(self, c)
    }
}

impl GradedAlgebra for TensorElement {
    fn order(&self) -> usize {
        TensorElement::order(self)
    }
    fn one_like(&self) -> Self {
        TensorElement::one(self.legs(), self.order())
    }
    fn zero_like(&self) -> Self {
        TensorElement::zero(self.legs(), self.order())
    }
    fn is_zero(&self) -> bool {
        TensorElement::is_zero(self)
    }
    fn grade_part(&self, g: usize) -> Self {
        TensorElement::grade_part(self, g)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        TensorElement::scale(self, c)
    }
}

fn require_nilpotent<T: GradedAlgebra>(x: &T) -> Result<()> {
    let g0 = x.grade_part(0);
    if !g0.is_zero() {
        return Err(Error::SeriesPrecondition { component: g0.to_string(), required: "zero" });
    }
    Ok(())
}

/// Splits `x = 1 + y` and checks that `y` has no grade-0 part.
fn unit_offset<T: GradedAlgebra>(x: &T) -> Result<T> {
    let y = x.add(&x.one_like().scale(&-GaussianRational::one()));
    let g0 = y.grade_part(0);
    if !g0.is_zero() {
        return Err(Error::SeriesPrecondition { component: x.grade_part(0).to_string(), required: "1" });
    }
    Ok(y)
}

/// `Σ_{j ≤ N} x^j / j!` for `x` of grade ≥ 1.
pub fn exp_series<T: GradedAlgebra>(x: &T) -> Result<T> {
    require_nilpotent(x)?;
    let mut sum = x.one_like();
    let mut power = x.one_like();
    for j in 1..=x.order() {
        power = power.mul(x).scale(&GaussianRational::ratio(1, j as i64));
        if power.is_zero() {
            break;
        }
        sum = sum.add(&power);
    }
    Ok(sum)
}

/// `log(1 + y) = Σ_{j ≤ N} (-1)^(j+1) y^j / j` for `y` of grade ≥ 1.
pub fn log_series<T: GradedAlgebra>(x: &T) -> Result<T> {
    let y = unit_offset(x)?;
    let mut sum = x.zero_like();
    let mut power = x.one_like();
    for j in 1..=x.order() {
        power = power.mul(&y);
        if power.is_zero() {
            break;
        }
        let sign = if j % 2 == 1 { 1 } else { -1 };
        sum = sum.add(&power.scale(&GaussianRational::real(rat(sign, j as i64))));
    }
    Ok(sum)
}

/// Neumann series `(1 + y)^{-1} = Σ (-y)^j`, finite because `y` has grade ≥ 1.
pub fn inverse_series<T: GradedAlgebra>(x: &T) -> Result<T> {
    let y = unit_offset(x).map_err(|_| Error::NotInvertible(x.grade_part(0).to_string()))?;
    let minus_y = y.scale(&-GaussianRational::one());
    let mut sum = x.one_like();
    let mut power = x.one_like();
    for _ in 1..=x.order() {
        power = power.mul(&minus_y);
        if power.is_zero() {
            break;
        }
        sum = sum.add(&power);
    }
    Ok(sum)
}
