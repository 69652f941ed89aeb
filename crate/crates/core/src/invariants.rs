//! Runtime checks for the structural invariants of sequences and
//! traversals. The acceptance suite runs these on everything it produces.

use crate::ctree::{CTree, ExtNodeRef};
use crate::jseq::{occ_kind, pview_indices, JSeq, OccKind};

/// A violated invariant, with enough context to debug it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invariant {name} violated at occurrence {position}: {detail}")]
pub struct Violation {
    pub name: &'static str,
    pub position: usize,
    pub detail: String,
}

fn violation(name: &'static str, position: usize, detail: impl Into<String>) -> Violation {
    Violation { name, position, detail: detail.into() }
}

/// Alternation: first occurrence is a lambda, kinds alternate afterwards.
pub fn check_alternation(tree: &CTree, s: &JSeq) -> Result<(), Violation> {
    for (i, o) in s.0.iter().enumerate() {
        let is_lam = occ_kind(tree, o) == OccKind::Lam;
        if (i % 2 == 0) != is_lam {
            return Err(violation("alternation", i, "kind does not match parity"));
        }
    }
    Ok(())
}

/// Pointer validity under the extended enabling relation.
pub fn check_pointers(tree: &CTree, s: &JSeq) -> Result<(), Violation> {
    s.validate(tree)
        .map_err(|e| violation("pointer-validity", 0, e.to_string()))
}

/// Ghost-iff-overflow: a pointered occurrence is a ghost exactly when its
/// label exceeds the justifier's arity. Free variables are the one
/// exception: they point at the root with their free-variable label, which
/// lies beyond the root's binders by convention.
pub fn check_ghost_overflow(tree: &CTree, s: &JSeq) -> Result<(), Violation> {
    for (i, o) in s.0.iter().enumerate() {
        if o.dist == 0 {
            continue;
        }
        let j = i - o.dist;
        let justifier_arity = s.arity(tree, j);
        if o.is_ghost() {
            if o.label <= justifier_arity {
                return Err(violation(
                    "ghost-iff-overflow",
                    i,
                    format!("ghost label {} within justifier arity {justifier_arity}", o.label),
                ));
            }
        } else if o.label > justifier_arity {
            let is_free_variable = match &o.node {
                ExtNodeRef::Structural(p) => match tree.label(p) {
                    Ok(crate::ctree::NodeLabel::Var(x)) => {
                        matches!(&s.0[j].node, ExtNodeRef::Structural(jp) if jp.is_root())
                            && tree.free_label(x) == Some(o.label)
                    }
                    _ => false,
                },
                _ => false,
            };
            if !is_free_variable {
                return Err(violation(
                    "ghost-iff-overflow",
                    i,
                    format!("label {} vs justifier arity {justifier_arity}", o.label),
                ));
            }
        }
    }
    Ok(())
}

/// P-views of prefixes ending at structural nodes are ghost-free structural
/// paths from the root.
pub fn check_pview_paths(tree: &CTree, s: &JSeq) -> Result<(), Violation> {
    for end in 0..s.len() {
        if s.0[end].is_ghost() {
            continue;
        }
        let prefix = JSeq(s.0[..=end].to_vec());
        let kept = pview_indices(tree, &prefix);
        let mut expected = Vec::new();
        for (step, &i) in kept.iter().enumerate() {
            let o = &prefix.0[i];
            let p = match &o.node {
                ExtNodeRef::Structural(p) => p,
                _ => {
                    return Err(violation(
                        "pview-is-path",
                        end,
                        format!("ghost occurrence {i} in the P-view of a structural prefix"),
                    ))
                }
            };
            if step == 0 {
                if !p.is_root() {
                    return Err(violation("pview-is-path", end, "P-view does not start at the root"));
                }
            } else if p.0.len() != expected.len() + 1 || !p.0.starts_with(&expected) {
                return Err(violation(
                    "pview-is-path",
                    end,
                    format!("occurrence {i} at {p} is not a child of the previous P-view node"),
                ));
            }
            expected = p.0.clone();
        }
    }
    Ok(())
}

/// All invariants a traversal must satisfy.
pub fn check_traversal(tree: &CTree, s: &JSeq) -> Result<(), Violation> {
    check_alternation(tree, s)?;
    check_pointers(tree, s)?;
    check_ghost_overflow(tree, s)?;
    check_pview_paths(tree, s)?;
    Ok(())
}
