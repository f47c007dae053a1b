//! Text, LaTeX and JSON renderings of polynomials.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use crate::exactmath::{EvenLaurentPoly, PolyDocument, Rational};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            _ => Err(crate::Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

pub fn render(p: &EvenLaurentPoly, format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(p.to_string()),
        Format::Latex => Ok(latex(p)),
        Format::Json => PolyDocument::from(p).to_json(),
    }
}

fn latex_coefficient(c: &Rational, has_monomial: bool) -> String {
    if c.is_one() && has_monomial {
        String::new()
    } else if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn latex_monomial(exps: &[i32]) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(j, &a)| format!("t_{{{}}}^{{{}}}", j + 1, 2 * a))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One line per total degree in `t`, highest first, each preceded by a
/// `%` comment naming the degree.
pub fn latex(p: &EvenLaurentPoly) -> String {
    if p.is_zero() {
        return "0\n".into();
    }
    let mut groups: BTreeMap<i64, Vec<(&Vec<i32>, &Rational)>> = BTreeMap::new();
    for (e, c) in p.terms() {
        groups
            .entry(EvenLaurentPoly::total_degree(e))
            .or_default()
            .push((e, c));
    }
    let mut out = String::new();
    for (deg, mut terms) in groups.into_iter().rev() {
        terms.sort_by(|a, b| b.0.cmp(a.0));
        out.push_str(&format!("% total degree {}\n", 2 * deg));
        let line: Vec<String> = terms
            .iter()
            .map(|(e, c)| {
                let mono = latex_monomial(e);
                let coef = latex_coefficient(&c.abs(), !mono.is_empty());
                let sign = if c.is_negative() { "-" } else { "+" };
                let body = [coef, mono]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("{sign} {body}")
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

const SUBSCRIPT: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUPERSCRIPT: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn digits(n: u32, table: &[char; 10]) -> String {
    n.to_string()
        .bytes()
        .map(|b| table[(b - b'0') as usize])
        .collect()
}

/// `⟨τ₁τ₀³⟩` for the degrees `[1, 0, 0, 0]`; repeated degrees become powers.
pub fn intersection_label(degrees: &[u32]) -> String {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = String::from("⟨");
    let mut k = 0;
    while k < sorted.len() {
        let d = sorted[k];
        let run = sorted[k..].iter().take_while(|&&x| x == d).count();
        out.push('τ');
        out.push_str(&digits(d, &SUBSCRIPT));
        if run > 1 {
            out.push_str(&digits(run as u32, &SUPERSCRIPT));
        }
        k += run;
    }
    out.push('⟩');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    #[test]
    fn latex_groups_by_degree() {
        let s = latex(&golden::lt03());
        assert_eq!(
            s,
            "% total degree 0\n- \\frac{1}{16}\n% total degree -6\n+ \\frac{1}{16} t_{1}^{-2} t_{2}^{-2} t_{3}^{-2}\n"
        );
        let s = latex(&golden::l04());
        assert!(s.starts_with("% total degree 2\n+ \\frac{3}{256} t_{1}^{2}"));
    }

    #[test]
    fn intersection_labels() {
        assert_eq!(intersection_label(&[1]), "⟨τ₁⟩");
        assert_eq!(intersection_label(&[0, 0, 0]), "⟨τ₀³⟩");
        assert_eq!(intersection_label(&[0, 1, 0, 0]), "⟨τ₁τ₀³⟩");
        assert_eq!(intersection_label(&[12]), "⟨τ₁₂⟩");
    }

    #[test]
    fn json_parses_back() {
        let p = golden::l12();
        let s = render(&p, Format::Json).unwrap();
        assert_eq!(PolyDocument::from_json(&s).unwrap().to_poly().unwrap(), p);
        assert_eq!(render(&p, Format::Text).unwrap(), p.to_string());
    }
}
