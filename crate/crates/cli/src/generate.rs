//! Formulas printed by `pi1 generate`.

use pi1_core::diffjet::LenardTable;
use pi1_core::exact::{LambdaSeries, MultiPoly};
use pi1_core::identify;
use pi1_core::isomono::{oper_transform, symbolic_point, IrregularTimes, OperPoint};
use pi1_core::exact::Atom;
use pi1_core::minimal::{build_ag, build_u, build_u2n1, LaxMat};
use pi1_core::render;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Lenard,
    U,
    Ag,
    OperL,
    HatL,
    Hamiltonians,
    Dictionary,
}

impl Target {
    pub const NAMES: [&'static str; 7] = ["lenard", "U", "Ag", "oper-L", "hatL", "hamiltonians", "dictionary"];

    pub fn parse(s: &str) -> Option<Target> {
        use Target::*;
        let t = [Lenard, U, Ag, OperL, HatL, Hamiltonians, Dictionary];
        Self::NAMES.iter().position(|n| *n == s).map(|i| t[i])
    }

    pub fn name(self) -> &'static str {
        Self::NAMES[self as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub g: usize,
    /// Highest Lenard index `l` in `R_{2l+1}`.
    pub lmax: usize,
    /// `U_{2n+1}` instead of the full series `U`.
    pub n: Option<usize>,
    /// Number of negative powers kept in the series `U`.
    pub depth: usize,
}

/// One formula with its plain and LaTeX forms.
#[derive(Clone, Debug, PartialEq)]
pub struct Item {
    pub name: String,
    pub name_latex: String,
    pub text: String,
    pub latex: String,
}

fn item(name: String, name_latex: String, text: String, latex: String) -> Item {
    Item { name, name_latex, text, latex }
}

fn poly_item(name: String, name_latex: String, p: &MultiPoly) -> Item {
    item(name, name_latex, p.to_string(), render::poly(p))
}

fn mat_item(name: String, name_latex: String, m: &LaxMat<MultiPoly>) -> Item {
    item(name, name_latex, m.to_string(), render::matrix(m))
}

fn ratfn_text(num: &[MultiPoly], den: &[MultiPoly]) -> String {
    let p = |c: &[MultiPoly]| LambdaSeries::from_poly(c.to_vec()).to_string();
    format!("({}) / ({})", p(num), p(den))
}

/// Hamiltonians in oper coordinates when they are polynomial there (g = 1),
/// otherwise in symmetric coordinates.
fn hamiltonians(g: usize) -> Result<(&'static str, Vec<MultiPoly>), String> {
    let atoms = |f: fn(u16) -> Atom| (1..=g as u16).map(|i| MultiPoly::atom(f(i))).collect::<Vec<_>>();
    let times = IrregularTimes::new(g, (0..g as u16).map(|i| MultiPoly::atom(Atom::ITime(2 * i + 1))).collect());
    let oper = OperPoint::new(atoms(Atom::OperQ), atoms(Atom::OperP), times);
    if let Ok(h) = (1..=g).map(|k| oper.ham(k)).collect::<Result<Vec<_>, _>>() {
        return Ok(("oper", h));
    }
    let sym = symbolic_point(g);
    Ok(("symmetric", (1..=g).map(|k| sym.ham(k)).collect()))
}

pub fn items(target: Target, p: &Params) -> Result<Vec<Item>, String> {
    let g = p.g;
    let err = |e: &dyn std::fmt::Display| e.to_string();
    Ok(match target {
        Target::Lenard => {
            let t = LenardTable::new(p.lmax + 1);
            (0..=p.lmax)
                .map(|l| poly_item(format!("R_{}", 2 * l + 1), format!("R_{{{}}}", 2 * l + 1), t.r(l + 1)))
                .collect()
        }
        Target::U => match p.n {
            Some(n) => {
                let m = build_u2n1(&LenardTable::new(n + 1), n).map_err(|e| err(&e))?;
                vec![mat_item(format!("U_{}", 2 * n + 1), format!("\\mathcal{{U}}_{{{}}}", 2 * n + 1), &m)]
            }
            None => {
                let m = build_u(&LenardTable::new(p.depth), p.depth).map_err(|e| err(&e))?;
                vec![mat_item("U".into(), "U(\\lambda)".into(), &m)]
            }
        },
        Target::Ag => {
            let m = build_ag(&LenardTable::new(g + 1), g).map_err(|e| err(&e))?;
            vec![mat_item(format!("A^({g})"), format!("\\mathcal{{A}}^{{({g})}}"), &m)]
        }
        Target::HatL => {
            vec![mat_item("hatL".into(), "\\hat{L}".into(), &symbolic_point(g).hatl())]
        }
        Target::OperL => {
            let l = oper_transform(&symbolic_point(g).hatl()).map_err(|e| err(&e))?;
            [("L_21", "L_{21}", &l.l21), ("L_22", "L_{22}", &l.l22)]
                .into_iter()
                .map(|(n, nl, r)| item(n.into(), nl.into(), ratfn_text(&r.num, &r.den), render::ratfn(&r.num, &r.den)))
                .collect()
        }
        Target::Hamiltonians => {
            let (_, hs) = hamiltonians(g)?;
            hs.iter()
                .enumerate()
                .map(|(i, h)| {
                    let e = 2 * i + 1;
                    poly_item(format!("Ham^(e_{e})"), format!("\\mathrm{{Ham}}^{{(e_{{{e}}})}}"), h)
                })
                .collect()
        }
        Target::Dictionary => {
            return Err("dictionary has no item form".into());
        }
    })
}

/// The rendered document for `target`.
pub fn render(target: Target, p: &Params, format: Format) -> Result<String, String> {
    if target == Target::Dictionary {
        let d = identify::dictionary(p.g);
        return match format {
            Format::Json => Ok(d.to_string()),
            Format::Text => Ok(serde_json::to_string_pretty(&d).expect("json")),
            Format::Latex => Err("dictionary is available as json or text only".into()),
        };
    }
    let its = items(target, p)?;
    Ok(match format {
        Format::Text => its.iter().map(|i| format!("{} = {}", i.name, i.text)).collect::<Vec<_>>().join("\n"),
        Format::Latex => its.iter().map(|i| format!("{} = {}", i.name_latex, i.latex)).collect::<Vec<_>>().join("\n"),
        Format::Json => {
            let mut doc = json!({
                "target": target.name(),
                "items": its.iter().map(|i| json!({"name": i.name, "text": i.text, "latex": i.latex})).collect::<Vec<Value>>(),
            });
            match target {
                Target::Lenard => doc["lmax"] = json!(p.lmax),
                Target::U => match p.n {
                    Some(n) => doc["n"] = json!(n),
                    None => doc["depth"] = json!(p.depth),
                },
                Target::Hamiltonians => {
                    doc["g"] = json!(p.g);
                    doc["coordinates"] = json!(hamiltonians(p.g)?.0);
                }
                _ => doc["g"] = json!(p.g),
            }
            doc.to_string()
        }
    })
}
