//! A small document tree rendered as JSON, LaTeX or plain text.

use num::{One, Signed};
use opde::algebra::{format_rational, BivariatePoly, PolyVector, Rational, RationalMatrix};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone)]
pub enum Node {
    Text(String),
    Bool(bool),
    Int(u64),
    Rational(Rational),
    Poly(BivariatePoly),
    Vector(PolyVector),
    Matrix(RationalMatrix),
    List(Vec<Node>),
    Map(Vec<(String, Node)>),
}

impl Node {
    pub fn map<K: Into<String>>(entries: impl IntoIterator<Item = (K, Node)>) -> Node {
        Node::Map(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn text(s: impl Into<String>) -> Node {
        Node::Text(s.into())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Node::Text(s) => json!(s),
            Node::Bool(b) => json!(b),
            Node::Int(k) => json!(k),
            Node::Rational(r) => json!(format_rational(r)),
            Node::Poly(p) => serde_json::to_value(p).expect("polynomials serialize"),
            Node::Vector(v) => serde_json::to_value(v).expect("vectors serialize"),
            Node::Matrix(m) => serde_json::to_value(m).expect("matrices serialize"),
            Node::List(items) => Value::Array(items.iter().map(Node::to_json).collect()),
            Node::Map(entries) => {
                Value::Object(entries.iter().map(|(k, v)| (k.clone(), v.to_json())).collect::<Map<_, _>>())
            }
        }
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        self.latex_into(&mut out, "");
        out
    }

    fn latex_into(&self, out: &mut String, path: &str) {
        match self {
            Node::Map(entries) => {
                for (k, v) in entries {
                    let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    v.latex_into(out, &p);
                }
            }
            Node::List(items) => {
                for (i, v) in items.iter().enumerate() {
                    v.latex_into(out, &format!("{path}[{i}]"));
                }
            }
            leaf => {
                out.push_str(&format!("% {path}\n"));
                let body = match leaf {
                    Node::Text(s) => format!("\\text{{{s}}}"),
                    Node::Bool(b) => format!("\\text{{{b}}}"),
                    Node::Int(k) => k.to_string(),
                    Node::Rational(r) => latex_rational(r),
                    Node::Poly(p) => latex_poly(p),
                    Node::Vector(v) => latex_vector(v),
                    Node::Matrix(m) => latex_matrix(m),
                    Node::List(_) | Node::Map(_) => unreachable!(),
                };
                out.push_str(&format!("\\[ {body} \\]\n"));
            }
        }
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        self.pretty_into(&mut out, 0);
        out
    }

    fn pretty_into(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        match self {
            Node::Map(entries) => {
                for (k, v) in entries {
                    match v {
                        Node::Map(_) | Node::List(_) | Node::Matrix(_) | Node::Vector(_) => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            v.pretty_into(out, indent + 1);
                        }
                        leaf => out.push_str(&format!("{pad}{k}: {}\n", leaf.to_pretty().trim_end())),
                    }
                }
            }
            Node::List(items) => {
                for (i, v) in items.iter().enumerate() {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    v.pretty_into(out, indent + 1);
                }
            }
            Node::Matrix(m) => {
                if m.rows() == 0 || m.cols() == 0 {
                    out.push_str(&format!("{pad}({}x{} empty)\n", m.rows(), m.cols()));
                }
                for line in m.to_string().lines() {
                    out.push_str(&format!("{pad}{line}\n"));
                }
            }
            Node::Vector(v) => {
                for p in v.iter() {
                    out.push_str(&format!("{pad}{p}\n"));
                }
            }
            Node::Text(s) => out.push_str(&format!("{pad}{s}\n")),
            Node::Bool(b) => out.push_str(&format!("{pad}{b}\n")),
            Node::Int(k) => out.push_str(&format!("{pad}{k}\n")),
            Node::Rational(r) => out.push_str(&format!("{pad}{}\n", format_rational(r))),
            Node::Poly(p) => out.push_str(&format!("{pad}{p}\n")),
        }
    }
}

/// `p`, `-p` or `\frac{p}{q}` with the sign in front.
pub fn latex_rational(r: &Rational) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.abs();
    if a.denom().is_one() {
        format!("{sign}{}", a.numer())
    } else {
        format!("{sign}\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

pub fn latex_poly(p: &BivariatePoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let terms: Vec<_> = p.terms().collect();
    let mut out = String::new();
    for (idx, (m, c)) in terms.into_iter().rev().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        if !mag.is_one() || m.degree() == 0 {
            out.push_str(&latex_rational(&mag));
        }
        for (v, e) in [("x", m.x), ("y", m.y)] {
            match e {
                0 => {}
                1 => out.push_str(v),
                _ => out.push_str(&format!("{v}^{{{e}}}")),
            }
        }
    }
    out
}

pub fn latex_matrix(m: &RationalMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("0_{{{} \\times {}}}", m.rows(), m.cols());
    }
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(latex_rational).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
}

pub fn latex_vector(v: &PolyVector) -> String {
    let rows: Vec<String> = v.iter().map(latex_poly).collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use opde::algebra::rational::{int, rat};

    #[test]
    fn latex_forms() {
        assert_eq!(latex_rational(&rat(-1, 3)), "-\\frac{1}{3}");
        assert_eq!(latex_rational(&int(4)), "4");
        let p = BivariatePoly::from_terms([(2, 0, int(1)), (0, 1, rat(-2, 5)), (0, 0, int(1))]);
        assert_eq!(latex_poly(&p), "x^{2} - \\frac{2}{5}y + 1");
        let m = RationalMatrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(-1), int(3)]]).unwrap();
        assert_eq!(latex_matrix(&m), "\\begin{pmatrix} \\frac{1}{2} & 0 \\\\ -1 & 3 \\end{pmatrix}");
        assert_eq!(latex_matrix(&RationalMatrix::zeros(2, 0)), "0_{2 \\times 0}");
    }

    #[test]
    fn json_keeps_rationals_as_strings() {
        let n = Node::map([("r", Node::Rational(rat(-1, 3))), ("k", Node::Int(2))]);
        assert_eq!(n.to_json(), json!({"r": "-1/3", "k": 2}));
    }
}
