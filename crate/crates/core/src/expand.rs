//! Rendered expansions of the twist, its Hopf structure and the realizations.

use serde::Serialize;

use crate::borel::log_series;
use crate::error::Result;
use crate::scalar::{format_rational, Rational};
use crate::twist::{Generator, TwistFamily};
use crate::weyl::{realize_xhat, realize_yhat, RealizationSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub u: String,
    pub order: usize,
    pub sections: Vec<Section>,
}

impl Expansion {
    pub fn section(&self, name: &str) -> Option<&str> {
        self.sections.iter().find(|s| s.name == name).map(|s| s.value.as_str())
    }
}

/// Expands `F`, `F⁻¹`, `ln F`, `R`, the deformed coproducts and antipodes to
/// grade `order`, and the realizations `x̂^μ`, `ŷ^μ` for `a = h·v`.
pub fn expand(u: &Rational, order: usize, v: &[Rational]) -> Result<Expansion> {
    let fam = TwistFamily::build(u, order)?;
    let spec = RealizationSpec::new(u.clone(), v.to_vec())?;
    let mut sections = Vec::new();
    let mut push = |name: &str, value: String| sections.push(Section { name: name.to_string(), value });
    push("F", fam.twist.to_string());
    push("F^-1", fam.inverse.to_string());
    push("log F", log_series(&fam.twist)?.to_string());
    push("R", fam.r_matrix().to_string());
    push("Δp", fam.deformed_coproduct(Generator::E).to_string());
    push("ΔD", fam.deformed_coproduct(Generator::D).to_string());
    push("S(p)", fam.deformed_antipode(Generator::E)?.to_string());
    push("S(D)", fam.deformed_antipode(Generator::D)?.to_string());
    for (mu, x) in realize_xhat(&spec, order).iter().enumerate() {
        push(&format!("x̂^{mu}"), x.to_string());
    }
    for (mu, y) in realize_yhat(&spec, order).iter().enumerate() {
        push(&format!("ŷ^{mu}"), y.to_string());
    }
    Ok(Expansion { u: format_rational(u), order, sections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn first_order_log_at_half() {
        let e = expand(&rat(1, 2), 1, &[rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(e.section("log F"), Some("1/2 D⊗A - 1/2 A⊗D"));
        assert_eq!(e.sections.len(), 12);
    }
}
