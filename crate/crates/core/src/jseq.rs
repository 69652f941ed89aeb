//! Justified sequences in quadruplet encoding: views, projections, core,
//! strands and the arity threshold.

use serde::{Deserialize, Serialize};

use crate::ctree::{CTree, ExtNodeRef, NodeLabel, NodePath};
use crate::term::Ident;

/// Node kind of an occurrence, ghosts included under their kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OccKind {
    Lam,
    Var,
    App,
}

/// One occurrence of an extended node: `(node, pending lambdas, pointer
/// distance, link label)`. `dist == 0` means no pointer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occurrence {
    pub node: ExtNodeRef,
    pub pending: Vec<Ident>,
    pub dist: usize,
    pub label: usize,
}

impl Occurrence {
    pub fn structural(path: NodePath, dist: usize, label: usize) -> Occurrence {
        Occurrence { node: ExtNodeRef::Structural(path), pending: Vec::new(), dist, label }
    }

    pub fn ghost_lam(dist: usize, label: usize) -> Occurrence {
        Occurrence { node: ExtNodeRef::GhostLam, pending: Vec::new(), dist, label }
    }

    pub fn ghost_var(dist: usize, label: usize) -> Occurrence {
        Occurrence { node: ExtNodeRef::GhostVar, pending: Vec::new(), dist, label }
    }

    pub fn has_pointer(&self) -> bool {
        self.dist > 0
    }

    pub fn is_ghost(&self) -> bool {
        matches!(self.node, ExtNodeRef::GhostLam | ExtNodeRef::GhostVar)
    }
}

/// A justified sequence of occurrences.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct JSeq(pub Vec<Occurrence>);

/// Errors raised by sequence operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JSeqError {
    #[error("dangling pointer: occurrence {occ} retained but its justifier {justifier} is not")]
    DanglingPointer { occ: usize, justifier: usize },
    #[error("occurrence {0} is not an external variable")]
    NotExternalVariable(usize),
    #[error("malformed sequence: {0}")]
    Malformed(String),
}

impl JSeq {
    pub fn new() -> JSeq {
        JSeq(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, occ: Occurrence) {
        self.0.push(occ);
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }

    pub fn last(&self) -> Option<&Occurrence> {
        self.0.last()
    }

    /// Index of the justifier of occurrence `i`, if it has a pointer.
    pub fn justifier(&self, i: usize) -> Option<usize> {
        let o = &self.0[i];
        if o.dist == 0 || o.dist > i {
            None
        } else {
            Some(i - o.dist)
        }
    }

    /// Kind of occurrence `i`, resolved against the tree for structural
    /// nodes.
    pub fn kind(&self, tree: &CTree, i: usize) -> OccKind {
        occ_kind(tree, &self.0[i])
    }

    /// Externality of each occurrence, decided dynamically: an occurrence is
    /// external when its justifier chain terminates at a root occurrence.
    pub fn externality(&self) -> Vec<bool> {
        let mut ext = Vec::with_capacity(self.0.len());
        for (i, o) in self.0.iter().enumerate() {
            let e = if o.dist == 0 || o.dist > i {
                matches!(&o.node, ExtNodeRef::Structural(p) if p.is_root())
            } else {
                ext[i - o.dist]
            };
            ext.push(e);
        }
        ext
    }

    /// Arity of the node underlying occurrence `i` (0 for ghosts).
    pub fn arity(&self, tree: &CTree, i: usize) -> usize {
        match &self.0[i].node {
            ExtNodeRef::Structural(p) => tree.arity_at(p).unwrap_or(0),
            _ => 0,
        }
    }

    /// Check that every pointer targets an in-range occurrence that enables
    /// the source with the stated label under the extended enabling
    /// relation.
    pub fn validate(&self, tree: &CTree) -> Result<(), JSeqError> {
        for (i, o) in self.0.iter().enumerate() {
            if o.dist > i {
                return Err(JSeqError::Malformed(format!(
                    "occurrence {i} points before the sequence start"
                )));
            }
            if o.dist == 0 {
                match &o.node {
                    ExtNodeRef::Structural(p) => {
                        let ok = p.is_root()
                            || matches!(tree.label(p), Ok(NodeLabel::App))
                            || i == 0;
                        if !ok {
                            return Err(JSeqError::Malformed(format!(
                                "occurrence {i} of {p} lacks a pointer"
                            )));
                        }
                    }
                    _ => {
                        return Err(JSeqError::Malformed(format!(
                            "ghost occurrence {i} lacks a pointer"
                        )))
                    }
                }
                continue;
            }
            let j = i - o.dist;
            let target = &self.0[j];
            let tk = occ_kind(tree, target);
            match &o.node {
                ExtNodeRef::Structural(p) => match tree.label(p).map_err(|e| {
                    JSeqError::Malformed(format!("occurrence {i}: {e}"))
                })? {
                    NodeLabel::Var(_) => {
                        let (bp, bl) = tree.binder(p).expect("variable has binder data");
                        let matches_binder =
                            matches!(&target.node, ExtNodeRef::Structural(tp) if *tp == bp);
                        if !(matches_binder && o.label == bl) {
                            return Err(JSeqError::Malformed(format!(
                                "variable occurrence {i} does not point at its binder"
                            )));
                        }
                    }
                    NodeLabel::Lam(_) => {
                        let (parent, idx) = p.parent().expect("pointered lambda is not the root");
                        let matches_parent =
                            matches!(&target.node, ExtNodeRef::Structural(tp) if *tp == parent);
                        if !(matches_parent && o.label == idx && tk != OccKind::Lam) {
                            return Err(JSeqError::Malformed(format!(
                                "lambda occurrence {i} does not point at its parent"
                            )));
                        }
                    }
                    NodeLabel::App => {
                        return Err(JSeqError::Malformed(format!(
                            "@ occurrence {i} must not have a pointer"
                        )))
                    }
                },
                ExtNodeRef::GhostLam => {
                    let target_arity = self.arity(tree, j);
                    if !(tk != OccKind::Lam && o.label > target_arity) {
                        return Err(JSeqError::Malformed(format!(
                            "ghost lambda occurrence {i} has label {} within justifier arity {}",
                            o.label, target_arity
                        )));
                    }
                }
                ExtNodeRef::GhostVar => {
                    let target_arity = self.arity(tree, j);
                    if !(tk == OccKind::Lam && o.label > target_arity) {
                        return Err(JSeqError::Malformed(format!(
                            "ghost variable occurrence {i} has label {} within justifier arity {}",
                            o.label, target_arity
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn occ_kind(tree: &CTree, o: &Occurrence) -> OccKind {
    match &o.node {
        ExtNodeRef::GhostLam => OccKind::Lam,
        ExtNodeRef::GhostVar => OccKind::Var,
        ExtNodeRef::Structural(p) => match tree.label(p) {
            Ok(NodeLabel::Lam(_)) => OccKind::Lam,
            Ok(NodeLabel::App) => OccKind::App,
            Ok(NodeLabel::Var(_)) => OccKind::Var,
            Err(_) => OccKind::Var,
        },
    }
}

/// Structural binders of a lambda occurrence followed by its pending list
/// (the occurrence's effective label under the pending-merge equivalence).
pub fn effective_binders(tree: &CTree, o: &Occurrence) -> Vec<Ident> {
    let mut out = match &o.node {
        ExtNodeRef::Structural(p) => match tree.label(p) {
            Ok(NodeLabel::Lam(bs)) => bs.clone(),
            _ => Vec::new(),
        },
        _ => Vec::new(),
    };
    out.extend(o.pending.iter().cloned());
    out
}

/// Positions (ascending) retained by the P-view of `s`.
pub fn pview_indices(tree: &CTree, s: &JSeq) -> Vec<usize> {
    let mut kept = Vec::new();
    let mut i = s.len() as isize - 1;
    while i >= 0 {
        let idx = i as usize;
        let o = &s.0[idx];
        kept.push(idx);
        match occ_kind(tree, o) {
            OccKind::Var | OccKind::App => i -= 1,
            OccKind::Lam => {
                if o.dist == 0 {
                    break;
                }
                let j = idx - o.dist;
                kept.push(j);
                i = j as isize - 1;
            }
        }
    }
    kept.reverse();
    kept
}

/// Positions (ascending) retained by the O-view of `s`.
pub fn oview_indices(tree: &CTree, s: &JSeq) -> Vec<usize> {
    let mut kept = Vec::new();
    let mut i = s.len() as isize - 1;
    while i >= 0 {
        let idx = i as usize;
        let o = &s.0[idx];
        kept.push(idx);
        match occ_kind(tree, o) {
            OccKind::Lam => i -= 1,
            OccKind::App => break,
            OccKind::Var => {
                if o.dist == 0 {
                    break;
                }
                let j = idx - o.dist;
                kept.push(j);
                i = j as isize - 1;
            }
        }
    }
    kept.reverse();
    kept
}

/// Re-index the pointers of the subsequence of `s` given by `kept`
/// (ascending positions). A retained occurrence whose justifier was dropped
/// is an error when `strict`, and loses its pointer otherwise.
fn subsequence(s: &JSeq, kept: &[usize], strict: bool) -> Result<JSeq, JSeqError> {
    let mut pos_of = vec![usize::MAX; s.len()];
    for (new, &old) in kept.iter().enumerate() {
        pos_of[old] = new;
    }
    let mut out = Vec::with_capacity(kept.len());
    for (new, &old) in kept.iter().enumerate() {
        let mut o = s.0[old].clone();
        if o.dist > 0 {
            let j = old - o.dist;
            if pos_of[j] == usize::MAX {
                if strict {
                    return Err(JSeqError::DanglingPointer { occ: old, justifier: j });
                }
                o.dist = 0;
                o.label = 0;
            } else {
                o.dist = new - pos_of[j];
            }
        }
        out.push(o);
    }
    Ok(JSeq(out))
}

/// The P-view of `s`, pointers re-indexed into the retained subsequence.
pub fn pview(tree: &CTree, s: &JSeq) -> Result<JSeq, JSeqError> {
    let kept = pview_indices(tree, s);
    subsequence(s, &kept, true)
}

/// The O-view of `s`, dual to [`pview`].
pub fn oview(tree: &CTree, s: &JSeq) -> Result<JSeq, JSeqError> {
    let kept = oview_indices(tree, s);
    subsequence(s, &kept, true)
}

/// Subsequence of occurrences hereditarily justified by a root occurrence.
pub fn filter_root(s: &JSeq) -> JSeq {
    let ext = s.externality();
    let kept: Vec<usize> = (0..s.len()).filter(|&i| ext[i]).collect();
    subsequence(s, &kept, false).expect("external occurrences are pointer-closed")
}

/// Core projection: drop internal occurrences while threading the stack of
/// pending lambdas onto the next retained lambda occurrence. `seed` is the
/// initial stack.
pub fn core(tree: &CTree, s: &JSeq, seed: &[Ident]) -> JSeq {
    let ext = s.externality();
    let mut pending: Vec<Ident> = seed.to_vec();
    let mut kept: Vec<usize> = Vec::new();
    let mut replaced: Vec<Occurrence> = Vec::new();
    for i in (0..s.len()).rev() {
        let o = &s.0[i];
        match occ_kind(tree, o) {
            OccKind::Var if ext[i] => {
                kept.push(i);
                replaced.push(o.clone());
                pending.clear();
            }
            OccKind::Var | OccKind::App => {
                let arity = s.arity(tree, i);
                let n = arity.min(pending.len());
                pending.drain(0..n);
            }
            OccKind::Lam if ext[i] => {
                let mut occ = o.clone();
                occ.pending.extend(pending.iter().cloned());
                kept.push(i);
                replaced.push(occ);
                pending.clear();
            }
            OccKind::Lam => {
                let mut front = effective_binders(tree, o);
                front.extend(pending.drain(..));
                pending = front;
            }
        }
    }
    kept.reverse();
    replaced.reverse();
    // re-index pointers of the retained occurrences
    let mut pos_of = vec![usize::MAX; s.len()];
    for (new, &old) in kept.iter().enumerate() {
        pos_of[old] = new;
    }
    for (new, (&old, occ)) in kept.iter().zip(replaced.iter_mut()).enumerate() {
        if occ.dist > 0 {
            let j = old - occ.dist;
            if pos_of[j] == usize::MAX {
                occ.dist = 0;
                occ.label = 0;
            } else {
                occ.dist = new - pos_of[j];
            }
        }
    }
    JSeq(replaced)
}

/// Occurrence equality modulo pending-lambda merging: same kind, pointer and
/// label, and equal `binders ++ pending` lists for lambdas.
pub fn eq_mod_pending(
    tree_a: &CTree,
    a: &Occurrence,
    tree_b: &CTree,
    b: &Occurrence,
) -> bool {
    let ka = occ_kind(tree_a, a);
    let kb = occ_kind(tree_b, b);
    if ka != kb || a.dist != b.dist || a.label != b.label {
        return false;
    }
    match ka {
        OccKind::Lam => effective_binders(tree_a, a) == effective_binders(tree_b, b),
        _ => true,
    }
}

/// Element-wise [`eq_mod_pending`] over two sequences.
pub fn jseq_eq(tree_a: &CTree, a: &JSeq, tree_b: &CTree, b: &JSeq) -> bool {
    a.len() == b.len()
        && a.0
            .iter()
            .zip(b.0.iter())
            .all(|(x, y)| eq_mod_pending(tree_a, x, tree_b, y))
}

/// Name-free representation: one `(kind, dist, label)` triple per
/// occurrence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Structure(pub Vec<(OccKind, usize, usize)>);

pub fn structure_of(tree: &CTree, s: &JSeq) -> Structure {
    Structure(
        s.0.iter()
            .map(|o| (occ_kind(tree, o), o.dist, o.label))
            .collect(),
    )
}

/// Rebuild the canonical justified sequence with a given structure over
/// `tree`. Succeeds only for rule-generated shapes: the first occurrence is
/// the root and every variable/@ occurrence is the child of the lambda
/// occurrence immediately preceding it.
pub fn jseq_from_structure(tree: &CTree, st: &Structure) -> Result<JSeq, JSeqError> {
    let mut out = JSeq::new();
    for (i, &(kind, dist, label)) in st.0.iter().enumerate() {
        let node = match kind {
            OccKind::Lam => {
                if dist == 0 {
                    if i != 0 {
                        return Err(JSeqError::Malformed(format!(
                            "non-initial lambda at {i} lacks a pointer"
                        )));
                    }
                    ExtNodeRef::Structural(NodePath::root())
                } else {
                    let j = i - dist;
                    match &out.0[j].node {
                        ExtNodeRef::Structural(p)
                            if tree.child_by_label(p, label).is_some() =>
                        {
                            ExtNodeRef::Structural(p.child(label))
                        }
                        _ => ExtNodeRef::GhostLam,
                    }
                }
            }
            OccKind::App | OccKind::Var => {
                if i == 0 {
                    return Err(JSeqError::Malformed("sequence starts with a non-lambda".into()));
                }
                let node = match &out.0[i - 1].node {
                    ExtNodeRef::Structural(p) if matches!(tree.label(p), Ok(NodeLabel::Lam(_))) => {
                        ExtNodeRef::Structural(p.child(0))
                    }
                    ExtNodeRef::GhostLam => ExtNodeRef::GhostVar,
                    other => {
                        return Err(JSeqError::Malformed(format!(
                            "occurrence {i} does not follow a lambda: {other:?}"
                        )))
                    }
                };
                if let ExtNodeRef::Structural(p) = &node {
                    let expect_app = matches!(tree.label(p), Ok(NodeLabel::App));
                    if expect_app != (kind == OccKind::App) {
                        return Err(JSeqError::Malformed(format!(
                            "occurrence {i} kind does not match the node at {p}"
                        )));
                    }
                } else if kind == OccKind::App {
                    return Err(JSeqError::Malformed(format!(
                        "occurrence {i} declared @ but follows a ghost lambda"
                    )));
                }
                node
            }
        };
        out.push(Occurrence { node, pending: Vec::new(), dist, label });
    }
    Ok(out)
}

/// A strand: the maximal internal-only run from an external lambda to the
/// external variable at `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub start: usize,
    pub end: usize,
}

impl Strand {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The strand ending at occurrence `i`, which must be an external variable.
pub fn strand_ending_at(tree: &CTree, s: &JSeq, i: usize) -> Result<Strand, JSeqError> {
    let ext = s.externality();
    if !(ext[i] && s.kind(tree, i) == OccKind::Var) {
        return Err(JSeqError::NotExternalVariable(i));
    }
    let mut j = i;
    while j > 0 && !ext[j - 1] {
        j -= 1;
    }
    if j == 0 {
        return Err(JSeqError::Malformed("strand has no external lambda start".into()));
    }
    let start = j - 1;
    if s.kind(tree, start) != OccKind::Lam {
        return Err(JSeqError::Malformed(format!(
            "strand start {start} is not a lambda occurrence"
        )));
    }
    Ok(Strand { start, end: i })
}

/// Arity threshold of a sequence ending with an external variable: running
/// backward over the final strand, add variable/@ arities and subtract
/// internal-lambda arities; the threshold is the running maximum, never
/// below zero.
pub fn arity_threshold(tree: &CTree, s: &JSeq) -> Result<usize, JSeqError> {
    let last = s.len().checked_sub(1).ok_or(JSeqError::NotExternalVariable(0))?;
    let ext = s.externality();
    if !(ext[last] && s.kind(tree, last) == OccKind::Var) {
        return Err(JSeqError::NotExternalVariable(last));
    }
    let mut sum: isize = 0;
    let mut max: isize = 0;
    for i in (0..s.len()).rev() {
        let arity = s.arity(tree, i) as isize;
        match s.kind(tree, i) {
            OccKind::Lam if ext[i] => break,
            OccKind::Lam => sum -= arity,
            OccKind::Var | OccKind::App => {
                sum += arity;
                max = max.max(sum);
            }
        }
    }
    Ok(max as usize)
}

/// Serializable record of one occurrence: the `--trace` payload and the
/// golden-fixture format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccRecord {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub path: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub binders: Option<Vec<Ident>>,
    pub pending: Vec<Ident>,
    pub dist: usize,
    pub label: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rule: Option<String>,
}

pub fn occ_record(tree: &CTree, o: &Occurrence, rule: Option<&str>) -> OccRecord {
    let (kind, path, binders) = match &o.node {
        ExtNodeRef::GhostLam => ("ghost-lam", None, None),
        ExtNodeRef::GhostVar => ("ghost-var", None, None),
        ExtNodeRef::Structural(p) => {
            let binders = match tree.label(p) {
                Ok(NodeLabel::Lam(bs)) => Some(bs.clone()),
                _ => None,
            };
            let kind = match tree.label(p) {
                Ok(NodeLabel::Lam(_)) => "lam",
                Ok(NodeLabel::App) => "app",
                _ => "var",
            };
            (kind, Some(p.0.clone()), binders)
        }
    };
    OccRecord {
        kind: kind.to_string(),
        path,
        binders,
        pending: o.pending.clone(),
        dist: o.dist,
        label: o.label,
        rule: rule.map(|r| r.to_string()),
    }
}

pub fn jseq_records(tree: &CTree, s: &JSeq) -> Vec<OccRecord> {
    s.0.iter().map(|o| occ_record(tree, o, None)).collect()
}

/// Compact one-line rendering, for logs and test failure messages.
pub fn format_jseq(tree: &CTree, s: &JSeq) -> String {
    let parts: Vec<String> = s
        .0
        .iter()
        .map(|o| {
            let ptr = if o.dist > 0 { format!("({},{})", o.dist, o.label) } else { String::new() };
            let pend = if o.pending.is_empty() {
                String::new()
            } else {
                format!("^[{}]", o.pending.join(" "))
            };
            match &o.node {
                ExtNodeRef::GhostLam => format!("{{}}{pend}{ptr}"),
                ExtNodeRef::GhostVar => format!("#{ptr}"),
                ExtNodeRef::Structural(p) => match tree.label(p) {
                    Ok(NodeLabel::Lam(bs)) => format!("[{}]{pend}{ptr}", bs.join(" ")),
                    Ok(NodeLabel::App) => "@".to_string(),
                    Ok(NodeLabel::Var(x)) => format!("{x}{ptr}"),
                    Err(_) => format!("?{p}"),
                },
            }
        })
        .collect();
    parts.join("--")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctree::build_ctree;
    use crate::term::parse;

    fn tree_of(src: &str) -> CTree {
        build_ctree(&parse(src).unwrap())
    }

    fn path(steps: &[usize]) -> NodePath {
        NodePath(steps.to_vec())
    }

    /// The baby-example tree: (\x. x x)(\y. y).
    fn baby() -> CTree {
        tree_of("(\\x. x x)(\\y. y)")
    }

    /// lambda . @ . lambda-x . x . lambda-y over the baby tree.
    fn lam_at_lamx_x_lamy() -> JSeq {
        JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 0, 0),
            Occurrence::structural(path(&[0, 0]), 1, 0),
            Occurrence::structural(path(&[0, 0, 0]), 1, 1),
            Occurrence::structural(path(&[0, 1]), 3, 1),
        ])
    }

    #[test]
    fn pview_of_singleton_root() {
        let tree = baby();
        let s = JSeq(vec![Occurrence::structural(path(&[]), 0, 0)]);
        assert_eq!(pview(&tree, &s).unwrap(), s);
    }

    #[test]
    fn pview_jumps_over_skipped_operand() {
        // pview(lam @ lam-x x lam-y) = lam @ lam-y with the pointer
        // re-indexed to distance 1
        let tree = baby();
        let s = lam_at_lamx_x_lamy();
        let pv = pview(&tree, &s).unwrap();
        assert_eq!(
            pv,
            JSeq(vec![
                Occurrence::structural(path(&[]), 0, 0),
                Occurrence::structural(path(&[0]), 0, 0),
                Occurrence::structural(path(&[0, 1]), 1, 1),
            ])
        );
    }

    #[test]
    fn pview_rejects_dangling_pointer() {
        let tree = tree_of("\\x. f (\\y. y x)");
        // lam-y jumps over f straight to the root, so a ghost variable
        // pointing at the skipped f dangles in the P-view
        let s = JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 1, 2),
            Occurrence::structural(path(&[0, 1]), 2, 1),
            Occurrence { node: ExtNodeRef::GhostVar, pending: vec![], dist: 2, label: 3 },
        ]);
        assert!(matches!(
            pview(&tree, &s),
            Err(JSeqError::DanglingPointer { .. })
        ));
    }

    #[test]
    fn oview_restarts_on_app() {
        let tree = baby();
        let s = JSeq(vec![Occurrence::structural(path(&[0]), 0, 0)]);
        assert_eq!(oview(&tree, &s).unwrap(), s);
        let s2 = JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 0, 0),
        ]);
        assert_eq!(
            oview(&tree, &s2).unwrap(),
            JSeq(vec![Occurrence::structural(path(&[0]), 0, 0)])
        );
    }

    #[test]
    fn oview_jumps_on_variables() {
        // oview(lam @ lam-x x) = @ lam-x x: the variable jumps to its
        // binder and the @ before it restarts the view
        let tree = baby();
        let s = JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 0, 0),
            Occurrence::structural(path(&[0, 0]), 1, 0),
            Occurrence::structural(path(&[0, 0, 0]), 1, 1),
        ]);
        let ov = oview(&tree, &s).unwrap();
        assert_eq!(
            ov,
            JSeq(vec![
                Occurrence::structural(path(&[0]), 0, 0),
                Occurrence::structural(path(&[0, 0]), 1, 0),
                Occurrence::structural(path(&[0, 0, 0]), 1, 1),
            ])
        );
    }

    #[test]
    fn filter_root_drops_unrooted_occurrences() {
        let tree = baby();
        // lam . @ -> lam (the @ has no pointer and is not the root)
        let s = JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 0, 0),
        ]);
        assert_eq!(
            filter_root(&s),
            JSeq(vec![Occurrence::structural(path(&[]), 0, 0)])
        );
        // a sequence with only external occurrences is unchanged
        let tree2 = tree_of("\\y. y");
        let s2 = JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 1, 1),
        ]);
        assert_eq!(filter_root(&s2), s2);
        let _ = tree2;
    }

    #[test]
    fn core_threads_pending_lambdas() {
        // core(lam-w @ lam-xy x lam z, eps) = lam-w^[y] z
        let tree = tree_of("\\w. (\\x y. x) z");
        let t = JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 0, 0),
            Occurrence::structural(path(&[0, 0]), 1, 0),
            Occurrence::structural(path(&[0, 0, 0]), 1, 1),
            Occurrence::structural(path(&[0, 1]), 3, 1),
            Occurrence::structural(path(&[0, 1, 0]), 5, 2),
        ]);
        let c = core(&tree, &t, &[]);
        assert_eq!(c.len(), 2);
        assert_eq!(c.0[0].node, ExtNodeRef::Structural(path(&[])));
        assert_eq!(c.0[0].pending, vec!["y".to_string()]);
        assert_eq!(c.0[1].node, ExtNodeRef::Structural(path(&[0, 1, 0])));
        assert_eq!((c.0[1].dist, c.0[1].label), (1, 2));
    }

    #[test]
    fn core_of_all_external_sequence_is_identity() {
        let tree = tree_of("\\y. y");
        let s = JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 1, 1),
        ]);
        assert_eq!(core(&tree, &s, &[]), s);
    }

    #[test]
    fn eq_mod_pending_merges_binder_lists() {
        // lam-x^[g] equals lam-xg
        let a_tree = tree_of("\\x. x g");
        let mut a = Occurrence::structural(path(&[]), 0, 0);
        a.pending.push("g".to_string());
        let b_tree = tree_of("\\x g. x");
        let b = Occurrence::structural(path(&[]), 0, 0);
        assert!(eq_mod_pending(&a_tree, &a, &b_tree, &b));
        // lam-xyzwt and lam-x have the same structure but differ under eq
        let c_tree = tree_of("\\x y z w t. x");
        let c = Occurrence::structural(path(&[]), 0, 0);
        let d_tree = tree_of("\\x. x");
        let d = Occurrence::structural(path(&[]), 0, 0);
        assert!(!eq_mod_pending(&c_tree, &c, &d_tree, &d));
        let sc = structure_of(&c_tree, &JSeq(vec![c, Occurrence::structural(path(&[0]), 1, 1)]));
        let sd = structure_of(&d_tree, &JSeq(vec![d, Occurrence::structural(path(&[0]), 1, 1)]));
        assert_eq!(sc, sd, "same structure (lam,0).(var,1)");
    }

    #[test]
    fn jseq_eq_ignores_names_only_through_pointers() {
        // lam-xy . x and lam-zy . z are equivalent structures but compare
        // unequal under jseq_eq when binder lists differ
        let a_tree = tree_of("\\x y. x");
        let b_tree = tree_of("\\z y. z");
        let a = JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 1, 1),
        ]);
        assert!(!jseq_eq(&a_tree, &a, &b_tree, &a.clone()));
        assert_eq!(structure_of(&a_tree, &a), structure_of(&b_tree, &a));
    }

    #[test]
    fn strand_of_two_occurrence_traversal() {
        let tree = tree_of("\\x. x");
        let s = JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 1, 1),
        ]);
        let strand = strand_ending_at(&tree, &s, 1).unwrap();
        assert_eq!((strand.start, strand.end), (0, 1));
        assert_eq!(strand.len(), 2);
    }

    #[test]
    fn strand_requires_external_variable() {
        let tree = baby();
        let s = JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 0, 0),
        ]);
        assert!(matches!(
            strand_ending_at(&tree, &s, 1),
            Err(JSeqError::NotExternalVariable(1))
        ));
        assert!(matches!(
            arity_threshold(&tree, &s),
            Err(JSeqError::NotExternalVariable(1))
        ));
    }

    #[test]
    fn arity_threshold_of_normal_form_traversal_is_variable_arity() {
        // in a beta-normal term the threshold at an external variable is
        // its arity, so structural children stay reachable
        let tree = tree_of("\\x. x (\\y. y)");
        let s = JSeq(vec![
            Occurrence::structural(path(&[]), 0, 0),
            Occurrence::structural(path(&[0]), 1, 1),
        ]);
        assert_eq!(arity_threshold(&tree, &s).unwrap(), 1);
    }
}
