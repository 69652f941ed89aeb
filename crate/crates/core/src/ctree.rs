//! Computation trees: the bulk-lambda/@ tree representation of a term,
//! together with node arity, the enabling relation and the
//! external/internal classification.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::term::{Ident, Term};

/// Directed path from the root: the sequence of child indices to follow.
///
/// A lambda node's unique child sits at component 0. An @-node's operator is
/// component 0 and its operands are components `1..=arity`. A variable
/// node's operands are components `1..=arity` (the component equals the
/// enabling label).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct NodePath(pub Vec<usize>);

impl NodePath {
    pub fn root() -> NodePath {
        NodePath(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, index: usize) -> NodePath {
        let mut steps = self.0.clone();
        steps.push(index);
        NodePath(steps)
    }

    pub fn parent(&self) -> Option<(NodePath, usize)> {
        let mut steps = self.0.clone();
        let last = steps.pop()?;
        Some((NodePath(steps), last))
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_char('.')?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

/// Label of a computation-tree node. `Lam([])` is a dummy lambda.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeLabel {
    Lam(Vec<Ident>),
    App,
    Var(Ident),
}

impl NodeLabel {
    pub fn is_lam(&self) -> bool {
        matches!(self, NodeLabel::Lam(_))
    }
}

/// Reference to an extended node: a structural node of the tree, or a ghost.
/// Ghosts carry no tree identity; in a sequence they are identified by their
/// justifier occurrence and link label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExtNodeRef {
    Structural(NodePath),
    GhostLam,
    GhostVar,
}

#[derive(Debug, Clone)]
struct NodeInfo {
    label: NodeLabel,
    arity: usize,
    /// For variable nodes: binder path and 1-based binding label. Free
    /// variables point at the root with their free-variable label.
    binder: Option<(NodePath, usize)>,
    external: bool,
}

/// Errors raised by tree queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CTreeError {
    #[error("invalid path {0}")]
    InvalidPath(NodePath),
    #[error("node {0} has no enabler")]
    NoEnabler(NodePath),
}

/// Computation tree of a term. Immutable after construction.
#[derive(Debug, Clone)]
pub struct CTree {
    nodes: BTreeMap<NodePath, NodeInfo>,
    /// Free variables in order of first occurrence (leftmost depth-first);
    /// the k-th entry (1-based) gets root link label `root_binders + k`.
    free_vars: Vec<Ident>,
    root_binders: usize,
}

impl CTree {
    pub fn paths(&self) -> impl Iterator<Item = &NodePath> {
        self.nodes.keys()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn label(&self, p: &NodePath) -> Result<&NodeLabel, CTreeError> {
        self.nodes
            .get(p)
            .map(|n| &n.label)
            .ok_or_else(|| CTreeError::InvalidPath(p.clone()))
    }

    pub fn contains(&self, p: &NodePath) -> bool {
        self.nodes.contains_key(p)
    }

    /// Arity of an extended node: binder count for lambdas, child count for
    /// variables, child count minus one for @, and 0 for ghosts.
    pub fn arity(&self, n: &ExtNodeRef) -> Result<usize, CTreeError> {
        match n {
            ExtNodeRef::GhostLam | ExtNodeRef::GhostVar => Ok(0),
            ExtNodeRef::Structural(p) => self
                .nodes
                .get(p)
                .map(|n| n.arity)
                .ok_or_else(|| CTreeError::InvalidPath(p.clone())),
        }
    }

    pub fn arity_at(&self, p: &NodePath) -> Result<usize, CTreeError> {
        self.arity(&ExtNodeRef::Structural(p.clone()))
    }

    /// The enabler of a non-root node with its link label: binder (or root)
    /// for variables, parent for everything else.
    pub fn enabler(&self, p: &NodePath) -> Result<(NodePath, usize), CTreeError> {
        let info = self
            .nodes
            .get(p)
            .ok_or_else(|| CTreeError::InvalidPath(p.clone()))?;
        if p.is_root() {
            return Err(CTreeError::NoEnabler(p.clone()));
        }
        match &info.label {
            NodeLabel::Var(_) => Ok(info.binder.clone().expect("non-root variable has a binder")),
            _ => Ok(p.parent().expect("non-root node has a parent")),
        }
    }

    /// Binder data for a variable node (also reachable through `enabler`).
    pub fn binder(&self, p: &NodePath) -> Result<(NodePath, usize), CTreeError> {
        let info = self
            .nodes
            .get(p)
            .ok_or_else(|| CTreeError::InvalidPath(p.clone()))?;
        match (&info.label, &info.binder) {
            (NodeLabel::Var(_), Some(b)) => Ok(b.clone()),
            _ => Err(CTreeError::InvalidPath(p.clone())),
        }
    }

    /// True when the node is hereditarily enabled by the root. Enabling
    /// chains stop at @-nodes, which makes those (and everything below them
    /// in the chain) internal.
    pub fn is_external(&self, p: &NodePath) -> Result<bool, CTreeError> {
        self.nodes
            .get(p)
            .map(|n| n.external)
            .ok_or_else(|| CTreeError::InvalidPath(p.clone()))
    }

    /// Root link label assigned to a free variable, or None if the name is
    /// not free in the term.
    pub fn free_label(&self, name: &str) -> Option<usize> {
        self.free_vars
            .iter()
            .position(|v| v == name)
            .map(|k| self.root_binders + k + 1)
    }

    pub fn free_vars(&self) -> &[Ident] {
        &self.free_vars
    }

    /// The unique child of a lambda node.
    pub fn lam_child(&self, p: &NodePath) -> Result<NodePath, CTreeError> {
        match self.label(p)? {
            NodeLabel::Lam(_) => Ok(p.child(0)),
            _ => Err(CTreeError::InvalidPath(p.clone())),
        }
    }

    /// The i-th child of a variable or @ node, when it exists structurally
    /// (label 0 is an @-node's operator).
    pub fn child_by_label(&self, p: &NodePath, i: usize) -> Option<NodePath> {
        let info = self.nodes.get(p)?;
        match info.label {
            NodeLabel::App if i <= info.arity => Some(p.child(i)),
            NodeLabel::Var(_) if i >= 1 && i <= info.arity => Some(p.child(i)),
            _ => None,
        }
    }

    /// DOT rendering of the labelled tree.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ctree {\n  node [shape=plaintext];\n");
        for (p, info) in &self.nodes {
            let label = match &info.label {
                NodeLabel::Lam(bs) if bs.is_empty() => "λ".to_string(),
                NodeLabel::Lam(bs) => format!("λ {}", bs.join(" ")),
                NodeLabel::App => "@".to_string(),
                NodeLabel::Var(x) => x.clone(),
            };
            let _ = writeln!(out, "  \"{p}\" [label=\"{label}\"];");
            if let Some((parent, idx)) = p.parent() {
                let _ = writeln!(out, "  \"{parent}\" -> \"{p}\" [label=\"{idx}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Build the computation tree of a term: consecutive abstractions merge into
/// bulk lambda nodes, iterated applications merge into one @-node whose 0th
/// child is the operator, and operands that are not abstractions get a dummy
/// lambda above them so levels alternate.
pub fn build_ctree(t: &Term) -> CTree {
    struct Builder {
        nodes: BTreeMap<NodePath, NodeInfo>,
        free_vars: Vec<Ident>,
        root_binders: usize,
    }

    impl Builder {
        /// `scope` holds the bulk-lambda binders in force, innermost last.
        fn lam(&mut self, path: NodePath, t: &Term, scope: &mut Vec<(NodePath, Vec<Ident>)>) {
            let mut binders = Vec::new();
            let mut cur = t;
            while let Term::Abs(x, b) = cur {
                binders.push(x.clone());
                cur = b;
            }
            if path.is_root() {
                self.root_binders = binders.len();
            }
            let child = path.child(0);
            scope.push((path.clone(), binders.clone()));
            let arity = binders.len();
            self.nodes.insert(
                path,
                NodeInfo { label: NodeLabel::Lam(binders), arity, binder: None, external: false },
            );
            self.body(child, cur, scope);
            scope.pop();
        }

        fn body(&mut self, path: NodePath, t: &Term, scope: &mut Vec<(NodePath, Vec<Ident>)>) {
            // unwind the application spine
            let mut operands = Vec::new();
            let mut head = t;
            while let Term::App(f, a) = head {
                operands.push(a.as_ref());
                head = f;
            }
            operands.reverse();
            match head {
                Term::Var(x) => {
                    let binder = scope
                        .iter()
                        .rev()
                        .find_map(|(bp, bs)| {
                            bs.iter().rposition(|b| b == x).map(|i| (bp.clone(), i + 1))
                        })
                        .unwrap_or_else(|| {
                            if !self.free_vars.iter().any(|v| v == x) {
                                self.free_vars.push(x.clone());
                            }
                            let label = self.root_binders
                                + self.free_vars.iter().position(|v| v == x).unwrap()
                                + 1;
                            (NodePath::root(), label)
                        });
                    self.nodes.insert(
                        path.clone(),
                        NodeInfo {
                            label: NodeLabel::Var(x.clone()),
                            arity: operands.len(),
                            binder: Some(binder),
                            external: false,
                        },
                    );
                    for (k, s) in operands.iter().enumerate() {
                        self.lam(path.child(k + 1), s, scope);
                    }
                }
                Term::Abs(_, _) => {
                    self.nodes.insert(
                        path.clone(),
                        NodeInfo {
                            label: NodeLabel::App,
                            arity: operands.len(),
                            binder: None,
                            external: false,
                        },
                    );
                    self.lam(path.child(0), head, scope);
                    for (k, s) in operands.iter().enumerate() {
                        self.lam(path.child(k + 1), s, scope);
                    }
                }
                Term::App(_, _) => unreachable!("spine fully unwound"),
            }
        }
    }

    let mut b = Builder { nodes: BTreeMap::new(), free_vars: Vec::new(), root_binders: 0 };
    b.lam(NodePath::root(), t, &mut Vec::new());

    let mut tree =
        CTree { nodes: b.nodes, free_vars: b.free_vars, root_binders: b.root_binders };
    mark_external(&mut tree);
    tree
}

fn mark_external(tree: &mut CTree) {
    let paths: Vec<NodePath> = tree.nodes.keys().cloned().collect();
    for p in paths {
        let ext = chase(tree, &p);
        tree.nodes.get_mut(&p).unwrap().external = ext;
    }
}

fn chase(tree: &CTree, p: &NodePath) -> bool {
    // enabling chains go up; memoized values for shorter paths may already
    // be in place but a plain walk is cheap enough
    let mut cur = p.clone();
    loop {
        if cur.is_root() {
            return true;
        }
        let info = &tree.nodes[&cur];
        match info.label {
            NodeLabel::App => return false,
            NodeLabel::Var(_) => {
                let (b, _) = info.binder.clone().expect("variable has binder");
                cur = b;
            }
            NodeLabel::Lam(_) => {
                cur = cur.parent().expect("non-root has parent").0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;

    fn path(steps: &[usize]) -> NodePath {
        NodePath(steps.to_vec())
    }

    #[test]
    fn ctree_of_ghost_materialization_example() {
        // \x.(\y z.z) u
        let t = parse("\\x.(\\y z.z) u").unwrap();
        let tree = build_ctree(&t);
        let expected: Vec<(NodePath, NodeLabel)> = vec![
            (path(&[]), NodeLabel::Lam(vec!["x".into()])),
            (path(&[0]), NodeLabel::App),
            (path(&[0, 0]), NodeLabel::Lam(vec!["y".into(), "z".into()])),
            (path(&[0, 0, 0]), NodeLabel::Var("z".into())),
            (path(&[0, 1]), NodeLabel::Lam(vec![])),
            (path(&[0, 1, 0]), NodeLabel::Var("u".into())),
        ];
        let got: Vec<(NodePath, NodeLabel)> =
            tree.nodes.iter().map(|(p, n)| (p.clone(), n.label.clone())).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn ctree_of_identity() {
        let tree = build_ctree(&parse("\\x.x").unwrap());
        assert_eq!(tree.node_count(), 2);
        assert_eq!(tree.label(&path(&[])).unwrap(), &NodeLabel::Lam(vec!["x".into()]));
        assert_eq!(tree.label(&path(&[0])).unwrap(), &NodeLabel::Var("x".into()));
    }

    #[test]
    fn ctree_of_church_increment() {
        // add 1 has root dummy lambda, @ with operator \x y s z and operand \s z
        let t = parse("(\\x y s z. x s (y s z)) (\\s z. s z)").unwrap();
        let tree = build_ctree(&t);
        assert_eq!(tree.label(&path(&[])).unwrap(), &NodeLabel::Lam(vec![]));
        assert_eq!(tree.label(&path(&[0])).unwrap(), &NodeLabel::App);
        assert_eq!(
            tree.label(&path(&[0, 0])).unwrap(),
            &NodeLabel::Lam(vec!["x".into(), "y".into(), "s".into(), "z".into()])
        );
        assert_eq!(
            tree.label(&path(&[0, 1])).unwrap(),
            &NodeLabel::Lam(vec!["s".into(), "z".into()])
        );
        // x is applied to two operands
        assert_eq!(tree.arity_at(&path(&[0, 0, 0])).unwrap(), 2);
    }

    #[test]
    fn arity_examples() {
        let tree = build_ctree(&parse("\\x.(\\y z.z) u").unwrap());
        assert_eq!(tree.arity_at(&path(&[0])).unwrap(), 1);
        assert_eq!(tree.arity_at(&path(&[0, 0])).unwrap(), 2);
        assert_eq!(tree.arity(&ExtNodeRef::GhostVar).unwrap(), 0);
        assert_eq!(tree.arity(&ExtNodeRef::GhostLam).unwrap(), 0);
    }

    #[test]
    fn enabler_examples() {
        let tree = build_ctree(&parse("\\x.(\\y z.z) u").unwrap());
        // bound z: (00, 2)
        assert_eq!(tree.enabler(&path(&[0, 0, 0])).unwrap(), (path(&[0, 0]), 2));
        // operator lambda: (0, 0)
        assert_eq!(tree.enabler(&path(&[0, 0])).unwrap(), (path(&[0]), 0));
        // free u: root binder count is 1, u is the first free variable
        assert_eq!(tree.enabler(&path(&[0, 1, 0])).unwrap(), (path(&[]), 2));
        assert!(tree.enabler(&path(&[])).is_err());
    }

    #[test]
    fn externality() {
        let tree = build_ctree(&parse("\\x.(\\y z.z) u").unwrap());
        assert!(tree.is_external(&path(&[])).unwrap());
        // operator lambda child of @ is internal
        assert!(!tree.is_external(&path(&[0, 0])).unwrap());
        // free variable is external
        assert!(tree.is_external(&path(&[0, 1, 0])).unwrap());
        // bound z: binder internal, so internal
        assert!(!tree.is_external(&path(&[0, 0, 0])).unwrap());
    }

    #[test]
    fn alternation_of_levels() {
        let tree = build_ctree(&parse("(\\u . u (y1 u)) (\\v . v y2)").unwrap());
        for p in tree.paths() {
            let is_lam = tree.label(p).unwrap().is_lam();
            assert_eq!(p.0.len() % 2 == 0, is_lam, "parity mismatch at {p}");
        }
    }

    #[test]
    fn free_vars_in_dfs_order() {
        let tree = build_ctree(&parse("(\\u . u (y1 u)) (\\v . v y2)").unwrap());
        assert_eq!(tree.free_vars(), &["y1".to_string(), "y2".to_string()]);
        assert_eq!(tree.free_label("y1"), Some(1));
        assert_eq!(tree.free_label("y2"), Some(2));
    }
}
