//! Reconstruction of the beta-normal form from core P-views: the induced
//! labelled tree, ghost relabelling, and the end-to-end traversal
//! normalization pipeline.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::ctree::{build_ctree, CTree, ExtNodeRef, NodeLabel};
use crate::jseq::{core, effective_binders, occ_kind, pview, JSeq, OccKind};
use crate::term::{Ident, Term};
use crate::traversal::{enumerate_maximal, Mode, TraversalError};

/// Errors of the readout stage.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReadoutError {
    #[error("incoherent paths: {0}")]
    IncoherentPaths(String),
    #[error("ghost variable at {0:?} has no usable binder")]
    UnboundGhost(Vec<usize>),
}

/// Errors of the whole normalization pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error(transparent)]
    Traversal(#[from] TraversalError),
    #[error(transparent)]
    Readout(#[from] ReadoutError),
    #[error(transparent)]
    Seq(#[from] crate::jseq::JSeqError),
}

/// One node of the induced tree. Lambda nodes sit at the target of their
/// justification label, variables at child index 1 below their lambda.
#[derive(Debug, Clone, PartialEq, Eq)]
struct InducedNode {
    kind: OccKind,
    ghost: bool,
    /// Effective binder list for lambda nodes (binders with pending merged).
    binders: Vec<Ident>,
    /// Variable name for structural variable nodes.
    var_name: Option<Ident>,
    /// Structural occurrence of a free variable (keeps its name; everything
    /// else resolves positionally through its pointer).
    free: bool,
    /// Path of the justifier (a strict prefix), empty-and-rootless for none.
    justifier: Option<Vec<usize>>,
    label: usize,
}

/// Labelled tree induced by a set of justified sequences that are the paths
/// of some term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedTree {
    nodes: BTreeMap<Vec<usize>, InducedNode>,
}

impl InducedTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Generate the induced labelled tree from justified sequences over `tree`.
///
/// Paths are generated along each sequence: a variable occurrence extends
/// its predecessor's path with child index 1, a lambda occurrence with its
/// justification label. Two sequences generating the same path must agree on
/// the stored node data.
pub fn induced_tree(tree: &CTree, paths: &[JSeq]) -> Result<InducedTree, ReadoutError> {
    let mut nodes: BTreeMap<Vec<usize>, InducedNode> = BTreeMap::new();
    for s in paths {
        let mut cur: Vec<usize> = Vec::new();
        let mut occ_paths: Vec<Vec<usize>> = Vec::with_capacity(s.len());
        for (i, o) in s.0.iter().enumerate() {
            let kind = occ_kind(tree, o);
            if i == 0 {
                if kind != OccKind::Lam {
                    return Err(ReadoutError::IncoherentPaths(
                        "sequence does not start with a lambda".into(),
                    ));
                }
            } else {
                let step = match kind {
                    OccKind::Lam => o.label,
                    OccKind::Var => 1,
                    OccKind::App => {
                        return Err(ReadoutError::IncoherentPaths(
                            "@ occurrence in a normal-form path".into(),
                        ))
                    }
                };
                cur.push(step);
            }
            occ_paths.push(cur.clone());
            let justifier = if o.dist == 0 {
                None
            } else {
                let j = i.checked_sub(o.dist).ok_or_else(|| {
                    ReadoutError::IncoherentPaths(format!("occurrence {i} points out of range"))
                })?;
                Some(occ_paths[j].clone())
            };
            let (var_name, free) = match &o.node {
                ExtNodeRef::Structural(p) => match tree.label(p) {
                    Ok(NodeLabel::Var(x)) => {
                        let free = match tree.binder(p) {
                            Ok((bp, bl)) => {
                                bp.is_root() && tree.free_label(x) == Some(bl)
                            }
                            Err(_) => false,
                        };
                        (Some(x.clone()), free)
                    }
                    _ => (None, false),
                },
                _ => (None, false),
            };
            let node = InducedNode {
                kind,
                ghost: o.is_ghost(),
                binders: if kind == OccKind::Lam {
                    effective_binders(tree, o)
                } else {
                    Vec::new()
                },
                var_name,
                free,
                justifier,
                label: o.label,
            };
            match nodes.get(&cur) {
                None => {
                    nodes.insert(cur.clone(), node);
                }
                Some(existing) => {
                    if *existing != node {
                        return Err(ReadoutError::IncoherentPaths(format!(
                            "sequences disagree at generated path {cur:?}"
                        )));
                    }
                }
            }
        }
    }
    Ok(InducedTree { nodes })
}

/// Relabel the induced tree and rebuild a term.
///
/// Ghost lambdas get fresh binder groups sized by the largest incoming
/// ghost-variable label; structural lambdas are widened the same way when a
/// ghost variable points beyond their arity. Free variables keep their
/// names; every bound variable (ghost or structural) resolves positionally
/// through its justification pointer, so binder-slot names are made
/// pairwise distinct (primed on collision) to keep name-based binding
/// faithful to the pointers.
pub fn readout(induced: &InducedTree) -> Result<Term, ReadoutError> {
    // largest incoming ghost-variable label per lambda path
    let mut need: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for node in induced.nodes.values() {
        if node.kind == OccKind::Var && node.ghost {
            let b = node.justifier.clone().ok_or_else(|| {
                ReadoutError::UnboundGhost(Vec::new())
            })?;
            let e = need.entry(b).or_insert(0);
            *e = (*e).max(node.label);
        }
    }

    // free-variable names are fixed; binder slots must avoid them
    let mut used: BTreeSet<Ident> = induced
        .nodes
        .values()
        .filter(|n| n.free)
        .filter_map(|n| n.var_name.clone())
        .collect();

    // assign binder lists in depth-first (= path) order
    let mut binders: BTreeMap<Vec<usize>, Vec<Ident>> = BTreeMap::new();
    let mut group = 0usize;
    for (path, node) in &induced.nodes {
        if node.kind != OccKind::Lam {
            continue;
        }
        let want = need.get(path).copied().unwrap_or(0);
        let mut bs = Vec::with_capacity(node.binders.len().max(want));
        for suggested in &node.binders {
            let mut name = suggested.clone();
            while used.contains(&name) {
                name.push('\'');
            }
            used.insert(name.clone());
            bs.push(name);
        }
        if want > bs.len() {
            group += 1;
            while used.iter().any(|n| n.starts_with(&format!("g{group}_"))) {
                group += 1;
            }
            for i in bs.len() + 1..=want {
                let name = format!("g{group}_{i}");
                used.insert(name.clone());
                bs.push(name);
            }
        }
        binders.insert(path.clone(), bs);
    }

    // free variables by name, bound variables positionally
    let name_of = |path: &Vec<usize>, node: &InducedNode| -> Result<Ident, ReadoutError> {
        if node.free {
            return Ok(node.var_name.clone().expect("free variables are named"));
        }
        let b = node
            .justifier
            .as_ref()
            .ok_or_else(|| ReadoutError::UnboundGhost(path.clone()))?;
        let bs = binders
            .get(b)
            .ok_or_else(|| ReadoutError::UnboundGhost(path.clone()))?;
        bs.get(node.label.checked_sub(1).ok_or_else(|| ReadoutError::UnboundGhost(path.clone()))?)
            .cloned()
            .ok_or_else(|| ReadoutError::UnboundGhost(path.clone()))
    };

    fn build(
        induced: &InducedTree,
        binders: &BTreeMap<Vec<usize>, Vec<Ident>>,
        name_of: &dyn Fn(&Vec<usize>, &InducedNode) -> Result<Ident, ReadoutError>,
        path: &Vec<usize>,
    ) -> Result<Term, ReadoutError> {
        let node = induced
            .nodes
            .get(path)
            .ok_or_else(|| ReadoutError::IncoherentPaths(format!("missing node {path:?}")))?;
        match node.kind {
            OccKind::Lam => {
                let mut child = path.clone();
                child.push(1);
                let mut body = build(induced, binders, name_of, &child)?;
                for b in binders[path].iter().rev() {
                    body = Term::abs(b.clone(), body);
                }
                Ok(body)
            }
            OccKind::Var => {
                let mut t = Term::var(name_of(path, node)?);
                let max_child = induced
                    .nodes
                    .range(path.clone()..)
                    .take_while(|(p, _)| p.starts_with(path.as_slice()))
                    .filter(|(p, _)| p.len() == path.len() + 1)
                    .map(|(p, _)| *p.last().unwrap())
                    .max()
                    .unwrap_or(0);
                for i in 1..=max_child {
                    let mut child = path.clone();
                    child.push(i);
                    if !induced.nodes.contains_key(&child) {
                        return Err(ReadoutError::IncoherentPaths(format!(
                            "variable at {path:?} is missing operand {i}"
                        )));
                    }
                    t = Term::app(t, build(induced, binders, name_of, &child)?);
                }
                Ok(t)
            }
            OccKind::App => Err(ReadoutError::IncoherentPaths(
                "@ node in a normal-form tree".into(),
            )),
        }
    }

    if induced.nodes.is_empty() {
        return Err(ReadoutError::IncoherentPaths("empty path set".into()));
    }
    build(induced, &binders, &name_of, &Vec::new())
}

/// Full pipeline: enumerate maximal normalizing traversals, project each to
/// its core P-view, and read the beta-normal form back from the induced
/// tree.
pub fn normalize_by_traversals(t: &Term, fuel: usize) -> Result<Term, NormalizeError> {
    let tree = build_ctree(t);
    let maximal = enumerate_maximal(&tree, Mode::Normalizing, fuel)?;
    let mut views = Vec::with_capacity(maximal.len());
    for trav in &maximal {
        let c = core(&tree, trav, &[]);
        views.push(pview(&tree, &c)?);
    }
    let induced = induced_tree(&tree, &views)?;
    Ok(readout(&induced)?)
}

/// The STLC pipeline body shared with the `stlc` module: same readout from
/// a different traversal mode.
pub fn normalize_tree_with_mode(
    term: &Term,
    mode: Mode,
    fuel: usize,
) -> Result<Term, NormalizeError> {
    let tree = build_ctree(term);
    let maximal = enumerate_maximal(&tree, mode, fuel)?;
    let mut views = Vec::with_capacity(maximal.len());
    for trav in &maximal {
        let c = core(&tree, trav, &[]);
        views.push(pview(&tree, &c)?);
    }
    let induced = induced_tree(&tree, &views)?;
    Ok(readout(&induced)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{alpha_eq, parse};

    fn p(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn pipeline_baby_example() {
        let nf = normalize_by_traversals(&p("(\\x. x x)(\\y. y)"), 10_000).unwrap();
        assert!(alpha_eq(&nf, &p("\\y. y")), "got {nf}");
    }

    #[test]
    fn pipeline_missing_operand() {
        let nf = normalize_by_traversals(&p("(\\u . u (y1 u)) (\\v . v y2)"), 10_000).unwrap();
        assert!(alpha_eq(&nf, &p("y1 (\\z. z y2) y2")), "got {nf}");
    }

    #[test]
    fn pipeline_church_increment() {
        let nf = normalize_by_traversals(&p("(\\x y s z. x s (y s z)) (\\s z. s z)"), 10_000).unwrap();
        assert!(alpha_eq(&nf, &p("\\y s z. s (y s z)")), "got {nf}");
    }

    #[test]
    fn pipeline_varity_two() {
        let varity = "\\t. t (\\n a x. n (\\s z. a s (x s z))) (\\a. a) (\\z0. z0)";
        let two = "\\s2 z2. s2 (s2 z2)";
        let term = Term::app(p(varity), p(two));
        let nf = normalize_by_traversals(&term, 10_000).unwrap();
        assert!(alpha_eq(&nf, &p("\\x y s z. s (x s (y s z))")), "got {nf}");
    }

    #[test]
    fn pipeline_identity_on_normal_forms() {
        for src in ["\\y. y", "\\x. x (\\y. y)", "y1 (\\z. z y2) y2", "\\x y s z. s (x s (y s z))"] {
            let t = p(src);
            let nf = normalize_by_traversals(&t, 10_000).unwrap();
            assert!(alpha_eq(&nf, &t), "{src} -> {nf}");
        }
    }

    #[test]
    fn pipeline_is_idempotent() {
        let t = p("(\\u . u (y1 u)) (\\v . v y2)");
        let once = normalize_by_traversals(&t, 10_000).unwrap();
        let twice = normalize_by_traversals(&once, 10_000).unwrap();
        assert!(alpha_eq(&once, &twice));
    }

    #[test]
    fn induced_tree_rejects_disagreeing_paths() {
        use crate::jseq::{JSeq, Occurrence};
        use crate::ctree::NodePath;
        // two single-path sequences over the identity tree that disagree on
        // the generated path [1]
        let tree = build_ctree(&p("\\x. x"));
        let root = Occurrence::structural(NodePath::root(), 0, 0);
        let a = JSeq(vec![root.clone(), Occurrence::structural(NodePath(vec![0]), 1, 1)]);
        let b = JSeq(vec![root, Occurrence::ghost_var(1, 1)]);
        let err = induced_tree(&tree, &[a, b]).unwrap_err();
        assert!(matches!(err, ReadoutError::IncoherentPaths(_)));
    }

    #[test]
    fn readout_single_ghost_path() {
        // {lambda . ghost-var^1} reads out as \g. g up to naming
        use crate::jseq::{JSeq, Occurrence};
        use crate::ctree::NodePath;
        let tree = build_ctree(&p("(\\x. x x)(\\y. y)"));
        let mut root = Occurrence::structural(NodePath::root(), 0, 0);
        root.pending.push("y".to_string());
        let path = JSeq(vec![root, Occurrence::ghost_var(1, 1)]);
        let induced = induced_tree(&tree, &[path]).unwrap();
        let t = readout(&induced).unwrap();
        assert!(alpha_eq(&t, &p("\\y. y")), "got {t}");
    }
}
