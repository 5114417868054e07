//! Graphviz rendering of an assembly as a tree, with a dashed edge from each
//! square to the `τ` that binds it.

use std::fmt::Write;

use thiserror::Error;

use crate::assembly::{Assembly, Node, RelSign};

pub const DEFAULT_MAX_NODES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("tree has more than {max} nodes")]
pub struct DotError {
    pub max: usize,
}

struct Emitter {
    out: String,
    next: usize,
    max: usize,
    taus: Vec<usize>,
}

impl Emitter {
    fn node(&mut self, label: &str, shape: &str) -> Result<usize, DotError> {
        if self.next == self.max {
            return Err(DotError { max: self.max });
        }
        let id = self.next;
        self.next += 1;
        let _ = writeln!(self.out, "  n{id} [label=\"{label}\", shape={shape}];");
        Ok(id)
    }

    fn edge(&mut self, from: usize, to: usize) {
        let _ = writeln!(self.out, "  n{from} -> n{to};");
    }

    fn walk(&mut self, a: &Assembly) -> Result<usize, DotError> {
        let id = match a.node() {
            Node::Letter(l) => self.node(l.as_str(), "plaintext")?,
            Node::Bound(depth) => {
                let id = self.node("□", "box")?;
                let tau = self.taus[self.taus.len() - *depth as usize];
                let _ = writeln!(self.out, "  n{id} -> n{tau} [style=dashed, constraint=false];");
                id
            }
            Node::Not(b) => {
                let id = self.node("¬", "circle")?;
                let c = self.walk(b)?;
                self.edge(id, c);
                id
            }
            Node::Or(l, r) | Node::Rel(_, l, r) => {
                let label = match a.node() {
                    Node::Rel(RelSign::Eq, ..) => "=",
                    Node::Rel(RelSign::In, ..) => "∈",
                    _ => "∨",
                };
                let id = self.node(label, "circle")?;
                for child in [l, r] {
                    let c = self.walk(child)?;
                    self.edge(id, c);
                }
                id
            }
            Node::Tau(body) => {
                let id = self.node("τ", "circle")?;
                self.taus.push(id);
                let c = self.walk(body)?;
                self.taus.pop();
                self.edge(id, c);
                id
            }
        };
        Ok(id)
    }
}

pub fn to_dot(a: &Assembly, max_nodes: usize) -> Result<String, DotError> {
    let mut e = Emitter {
        out: String::from("digraph assembly {\n  ordering=out;\n"),
        next: 0,
        max: max_nodes,
        taus: vec![],
    };
    e.walk(a)?;
    e.out.push_str("}\n");
    Ok(e.out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::empty_set;

    #[test]
    fn empty_set_tree() {
        let dot = to_dot(&empty_set(), 100).unwrap();
        assert_eq!(dot.matches("style=dashed").count(), 3);
        assert_eq!(dot.matches("[label=").count(), 12);
        for (b, t) in [(9, 5), (10, 0), (11, 0)] {
            assert!(dot.contains(&format!("n{b} -> n{t} [style=dashed")));
        }
        assert!(dot.starts_with("digraph assembly {") && dot.ends_with("}\n"));
    }

    #[test]
    fn budget() {
        assert_eq!(to_dot(&empty_set(), 11), Err(DotError { max: 11 }));
        assert!(to_dot(&Assembly::var("x"), 1).is_ok());
    }
}
