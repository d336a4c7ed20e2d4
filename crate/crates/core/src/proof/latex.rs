//! LaTeX export with `bussproofs`; `\parr` and `\with` come from `cmll`.

use super::{Proof, Rule};
use crate::syntax::{Formula, Sequent, Signature};

fn sig(e: &Signature) -> String {
    let s = e.name().replace('_', "\\_");
    if s.chars().count() == 1 {
        s
    } else {
        format!("{{{s}}}")
    }
}

fn is_binary(f: &Formula) -> bool {
    matches!(
        f,
        Formula::Tensor(..) | Formula::Par(..) | Formula::With(..) | Formula::Plus(..)
    )
}

fn formula(f: &Formula) -> String {
    let child = |g: &Formula| {
        if is_binary(g) {
            format!("({})", formula(g))
        } else {
            formula(g)
        }
    };
    match f {
        Formula::Atom(x) => x.to_string(),
        Formula::NegAtom(x) => format!("{x}^\\perp"),
        Formula::Tensor(a, b) => format!("{} \\otimes {}", child(a), child(b)),
        Formula::Par(a, b) => format!("{} \\parr {}", child(a), child(b)),
        Formula::With(a, b) => format!("{} \\with {}", child(a), child(b)),
        Formula::Plus(a, b) => format!("{} \\oplus {}", child(a), child(b)),
        Formula::One => "1".into(),
        Formula::Bot => "\\bot".into(),
        Formula::Top => "\\top".into(),
        Formula::Zero => "0".into(),
        Formula::Bang(e, a) => format!("!_{} {}", sig(e), child(a)),
        Formula::Quest(e, a) => format!("?_{} {}", sig(e), child(a)),
    }
}

fn sequent(s: &Sequent) -> String {
    let parts: Vec<String> = s.iter().map(formula).collect();
    format!("$\\vdash {}$", parts.join(", "))
}

fn label(r: &Rule) -> String {
    match r {
        Rule::Ax(_) => "ax".into(),
        Rule::Cut { .. } => "cut".into(),
        Rule::Exchange(_) => "ex".into(),
        Rule::Tensor { .. } => "$\\otimes$".into(),
        Rule::Parr { .. } => "$\\parr$".into(),
        Rule::One => "$1$".into(),
        Rule::Bot => "$\\bot$".into(),
        Rule::With { .. } => "$\\with$".into(),
        Rule::Plus1 { .. } => "$\\oplus_1$".into(),
        Rule::Plus2 { .. } => "$\\oplus_2$".into(),
        Rule::Top { .. } => "$\\top$".into(),
        Rule::De { e, .. } => format!("de$_{}$", sig(e)),
        Rule::Co { from, .. } => format!("co$_{}$", from.len()),
        Rule::Dg { .. } => "dg".into(),
        Rule::Prom { e, .. } => format!("p$_{}$", sig(e)),
        Rule::PromGirard { e, .. } => format!("p$_g$ $_{}$", sig(e)),
        Rule::PromOrdered { e, .. } => format!("p$_\\leq$ $_{}$", sig(e)),
    }
}

fn emit(p: &Proof, out: &mut String) {
    for q in &p.premises {
        emit(q, out);
    }
    let infer = match p.premises.len() {
        0 => {
            out.push_str("  \\AxiomC{}\n");
            "UnaryInfC"
        }
        1 => "UnaryInfC",
        _ => "BinaryInfC",
    };
    out.push_str(&format!(
        "  \\RightLabel{{\\scriptsize {}}}\n",
        label(&p.rule)
    ));
    out.push_str(&format!("  \\{infer}{{{}}}\n", sequent(&p.conclusion)));
}

/// One `prooftree` environment for the whole proof.
pub fn to_latex(p: &Proof) -> String {
    let mut out = String::from("\\begin{prooftree}\n");
    emit(p, &mut out);
    out.push_str("\\end{prooftree}\n");
    out
}
