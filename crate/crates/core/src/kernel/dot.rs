use std::fmt::Write;

use super::{DiagramManager, Family, NodeRef};
use crate::error::Result;

impl DiagramManager {
    /// Graphviz rendering: hi-arcs solid, lo-arcs dashed, terminals as boxes.
    pub fn export_dot(&self, f: Family) -> Result<String> {
        let root = self.check(f)?;
        let mut nodes = self.reachable(root);
        nodes.sort_by_key(|r| (self.level(*r), r.0));
        let mut out = String::from("digraph family {\n  node [shape=circle];\n");
        for &r in &nodes {
            match r {
                NodeRef::BOTTOM => out.push_str("  n0 [label=\"⊥\", shape=box];\n"),
                NodeRef::TOP => out.push_str("  n1 [label=\"⊤\", shape=box];\n"),
                _ => {
                    let label = escape(self.order.name(self.level(r) as usize));
                    let _ = writeln!(out, "  n{} [label=\"{}\"];", r.0, label);
                }
            }
        }
        for &r in &nodes {
            if r.is_terminal() {
                continue;
            }
            let node = self.node(r);
            let _ = writeln!(out, "  n{} -> n{} [style=dashed];", r.0, node.lo.0);
            let _ = writeln!(out, "  n{} -> n{} [style=solid];", r.0, node.hi.0);
        }
        out.push_str("}\n");
        Ok(out)
    }
}

fn escape(name: &str) -> String {
    name.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explicit::ExplicitFamily;

    #[test]
    fn terminal_only() {
        let mgr = DiagramManager::zdd(["a"]).unwrap();
        let dot = mgr.export_dot(mgr.base()).unwrap();
        assert!(dot.contains("label=\"⊤\", shape=box"));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn singleton_edges() {
        let mut mgr = DiagramManager::zdd(["a", "b"]).unwrap();
        let f = mgr
            .from_explicit(&ExplicitFamily::from_named_sets(["a"], [vec!["a"]]).unwrap())
            .unwrap();
        let dot = mgr.export_dot(f).unwrap();
        assert_eq!(dot.matches("style=solid").count(), 1);
        assert_eq!(dot.matches("style=dashed").count(), 1);
        assert!(dot.contains("label=\"a\""));
    }

    #[test]
    fn quotes_escaped() {
        let mut mgr = DiagramManager::zdd(["say \"hi\""]).unwrap();
        let f = mgr
            .from_explicit(
                &ExplicitFamily::from_named_sets(["say \"hi\""], [vec!["say \"hi\""]]).unwrap(),
            )
            .unwrap();
        assert!(mgr.export_dot(f).unwrap().contains("say \\\"hi\\\""));
    }
}
