use crate::scalar::GaussianRational;

/// Joins `(monomial, coefficient)` pairs into `c1 m1 + c2 m2 - ...`.
///
/// The scalar monomial is passed as `"1"` and renders as the bare coefficient;
/// coefficients `±1` are elided in front of every other monomial.
pub(crate) fn render_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (String, &'a GaussianRational)>,
{
    let mut out = String::new();
    for (mono, c) in terms {
        let term = if mono == "1" {
            c.to_string()
        } else if c.is_one() {
            mono
        } else if (-c).is_one() {
            format!("-{mono}")
        } else if c.is_simple() {
            format!("{c} {mono}")
        } else {
            format!("({c}) {mono}")
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
