//! Normalization of untyped lambda terms by enumerating normalizing
//! traversals of their computation trees, with two independent reduction
//! semantics (leftmost-linear and normal-order) for cross-validation.

pub mod ctree;
pub mod gen;
pub mod invariants;
pub mod jseq;
pub mod linred;
pub mod readout;
pub mod stlc;
pub mod term;
pub mod traversal;

pub use ctree::{build_ctree, CTree, ExtNodeRef, NodeLabel, NodePath};
pub use jseq::{
    arity_threshold, core, filter_root, oview, pview, JSeq, OccKind, Occurrence, Structure,
};
pub use linred::{
    arg_lookup, gen_redexes, hoc, lambda_list, linear_fire, ll_reduce, lloc, normal_order,
    trivial_finish, AstPath, OccRef,
};
pub use readout::{induced_tree, normalize_by_traversals, readout, InducedTree};
pub use stlc::{eta_long, infer, normalize_stlc, SimpleType};
pub use term::{alpha_eq, parse, pretty, substitute, NameSupply, Term};
pub use traversal::{enumerate_maximal, eta_expansion_of, extensions, step_with, Mode, Rule};
