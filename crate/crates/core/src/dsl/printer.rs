//! Canonical source text for syntax trees; reparsing the output yields an equal tree.

use std::fmt::Write;

use crate::poly::MultiPoly;

use super::ast::*;

pub fn print(file: &SourceFile) -> String {
    let mut out = String::new();
    for item in &file.items {
        out.push_str(&print_decl(&item.decl));
        out.push('\n');
    }
    out
}

fn coeff_text(c: &MultiPoly) -> String {
    if c.is_zero() {
        "0".to_string()
    } else if c.num_terms() == 1 {
        c.to_string()
    } else {
        format!("({c})")
    }
}

fn term_text(t: &Term) -> String {
    let g = &t.generator.name;
    if t.coeff == MultiPoly::one() {
        g.clone()
    } else if t.coeff == -MultiPoly::one() {
        format!("-{g}")
    } else {
        format!("{} {g}", coeff_text(&t.coeff))
    }
}

pub fn value_text(v: &Value) -> String {
    if v.terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in v.terms.iter().enumerate() {
        let s = term_text(t);
        if i == 0 {
            out.push_str(&s);
        } else if let Some(rest) = s.strip_prefix('-') {
            write!(out, " - {rest}").unwrap();
        } else {
            write!(out, " + {s}").unwrap();
        }
    }
    out
}

fn names(ids: &[Ident]) -> String {
    ids.iter()
        .map(|i| i.name.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

pub(crate) fn entry_lhs(e: &Entry) -> String {
    match &e.head {
        Some(h) => format!("{}({})", h.name, names(&e.args)),
        None => format!("[{}]", names(&e.args)),
    }
}

fn body(generators: Option<&[Ident]>, lines: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from("{\n");
    if let Some(g) = generators {
        writeln!(out, "  generators: {};", names(g)).unwrap();
    }
    for l in lines {
        writeln!(out, "  {l}").unwrap();
    }
    out.push('}');
    out
}

fn entry_lines(entries: &[Entry]) -> Vec<String> {
    entries
        .iter()
        .map(|e| format!("{} = {};", entry_lhs(e), value_text(&e.value)))
        .collect()
}

fn block_text(b: &Block) -> String {
    match b {
        Block::Named(n) => n.name.clone(),
        Block::Generators(g) => format!("[{}]", names(g)),
    }
}

fn powers_text(p: &Option<(u32, u32)>) -> String {
    p.map(|(k, l)| format!(" powers {k} {l}"))
        .unwrap_or_default()
}

fn twisted_text(t: &Option<Ident>) -> String {
    t.as_ref()
        .map(|c| format!(" twisted {}", c.name))
        .unwrap_or_default()
}

pub fn directive_text(d: &Directive) -> String {
    match d {
        Directive::CheckLie(a) => format!("check lie {}", a.name),
        Directive::CheckModule(a) => format!("check module {}", a.name),
        Directive::CheckRb(a) => format!("check rb {}", a.name),
        Directive::CheckTwistedRb { map, cochain } => {
            format!("check twisted-rb {} {}", map.name, cochain.name)
        }
        Directive::CheckNijenhuis { map, powers } => {
            format!("check nijenhuis {}{}", map.name, powers_text(powers))
        }
        Directive::CheckReynolds(a) => format!("check reynolds {}", a.name),
        Directive::CheckCcybe(a) => format!("check ccybe {}", a.name),
        Directive::CheckNSLie(a) => format!("check nslie {}", a.name),
        Directive::Twist {
            algebra,
            blocks,
            map,
        } => {
            let b = blocks
                .as_ref()
                .map(|(b1, b2)| format!(" as {} + {}", block_text(b1), block_text(b2)))
                .unwrap_or_default();
            format!("twist {}{b} by {}", algebra.name, map.name)
        }
        Directive::Classify { algebra, blocks } => {
            format!(
                "classify {} as {} + {}",
                algebra.name,
                block_text(&blocks.0),
                block_text(&blocks.1)
            )
        }
        Directive::Cohomology {
            map,
            twist,
            max_arity,
            element,
        } => {
            let e = element
                .as_ref()
                .map(|v| format!(" element {}", value_text(v)))
                .unwrap_or_default();
            format!(
                "cohomology {}{} max-arity {max_arity}{e}",
                map.name,
                twisted_text(twist)
            )
        }
    }
}

pub fn print_decl(d: &Decl) -> String {
    match d {
        Decl::Algebra { name, body: b } => match b {
            AlgebraBody::Explicit {
                generators,
                entries,
            } => {
                format!(
                    "algebra {} {}",
                    name.name,
                    body(Some(generators), entry_lines(entries))
                )
            }
            AlgebraBody::Semidirect { module, twist } => {
                format!(
                    "algebra {} = semidirect {}{};",
                    name.name,
                    module.name,
                    twisted_text(twist)
                )
            }
        },
        Decl::Module {
            name,
            over,
            generators,
            entries,
        } => format!(
            "module {} over {} {}",
            name.name,
            over.name,
            body(Some(generators), entry_lines(entries))
        ),
        Decl::Rep { name, body: b } => match b {
            RepBody::Adjoint(a) => format!("rep {} = adjoint {};", name.name, a.name),
            RepBody::Dual(m) => format!("rep {} = dual {};", name.name, m.name),
        },
        Decl::Map {
            name,
            source,
            target,
            entries,
        } => format!(
            "map {} : {} -> {} {}",
            name.name,
            source.name,
            target.name,
            body(None, entry_lines(entries))
        ),
        Decl::Cochain {
            name,
            source,
            arity,
            target,
            entries,
        } => format!(
            "cochain {} : {}^{arity} -> {} {}",
            name.name,
            source.name,
            target.name,
            body(None, entry_lines(entries))
        ),
        Decl::Tensor {
            name,
            over,
            entries,
        } => {
            let lines = entries
                .iter()
                .map(|e| format!("({}) = {};", names(&e.args), e.coeff));
            format!(
                "tensor {} over {} {}",
                name.name,
                over.name,
                body(None, lines)
            )
        }
        Decl::NSLie { name, body: b } => match b {
            NSLieBody::Explicit {
                generators,
                entries,
            } => {
                format!(
                    "nslie {} {}",
                    name.name,
                    body(Some(generators), entry_lines(entries))
                )
            }
            NSLieBody::Nijenhuis { map, powers } => {
                format!(
                    "nslie {} = nijenhuis {}{};",
                    name.name,
                    map.name,
                    powers_text(powers)
                )
            }
            NSLieBody::RotaBaxter { map, twist } => {
                format!(
                    "nslie {} = rota-baxter {}{};",
                    name.name,
                    map.name,
                    twisted_text(twist)
                )
            }
        },
        Decl::Directive(d) => format!("{};", directive_text(d)),
    }
}
