//! Leftmost linear reduction: lambda-lists, generalized redexes, hoc/lloc,
//! single-occurrence firing, quasi-normal forms and the trivial finishing
//! strategy, plus the normal-order oracle.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ctree::NodePath;
use crate::term::{pretty, substitute, Ident, NameSupply, Term};

/// Path into the plain AST: one step per constructor. `App`: 0 operator,
/// 1 operand; `Abs`: 0 body.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct AstPath(pub Vec<usize>);

impl AstPath {
    pub fn root() -> AstPath {
        AstPath(Vec::new())
    }

    pub fn child(&self, step: usize) -> AstPath {
        let mut v = self.0.clone();
        v.push(step);
        AstPath(v)
    }
}

impl std::fmt::Display for AstPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// Reference to a specific occurrence (a subterm position) in a term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OccRef {
    pub path: AstPath,
}

impl OccRef {
    pub fn new(path: AstPath) -> OccRef {
        OccRef { path }
    }
}

/// A generalized redex: a binder occurrence paired with its argument
/// occurrence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GenRedex {
    pub binder: OccRef,
    pub argument: OccRef,
}

/// Head lambda-list: pending binder occurrences, outermost first.
pub type LambdaList = Vec<OccRef>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinredError {
    #[error("invalid path {0}")]
    InvalidPath(AstPath),
    #[error("occurrence {0} is not involved in a generalized redex")]
    NotInvolved(AstPath),
    #[error("term is not in quasi-normal form (lloc at {0})")]
    NotQuasiNormal(AstPath),
    #[error("reduction exceeded the fuel limit of {fuel} steps")]
    Divergence { fuel: usize },
}

pub fn subterm_at<'a>(t: &'a Term, path: &AstPath) -> Result<&'a Term, LinredError> {
    let mut cur = t;
    for &step in &path.0 {
        cur = match (cur, step) {
            (Term::App(f, _), 0) => f,
            (Term::App(_, a), 1) => a,
            (Term::Abs(_, b), 0) => b,
            _ => return Err(LinredError::InvalidPath(path.clone())),
        };
    }
    Ok(cur)
}

fn replace_at(t: &Term, path: &[usize], replacement: Term) -> Term {
    match path.split_first() {
        None => replacement,
        Some((&step, rest)) => match (t, step) {
            (Term::App(f, a), 0) => Term::app(replace_at(f, rest, replacement), a.as_ref().clone()),
            (Term::App(f, a), 1) => Term::app(f.as_ref().clone(), replace_at(a, rest, replacement)),
            (Term::Abs(x, b), 0) => Term::abs(x.clone(), replace_at(b, rest, replacement)),
            _ => unreachable!("path validated before replacement"),
        },
    }
}

/// The head lambda-list of the subterm at `at`, as absolute binder paths.
pub fn lambda_list(t: &Term, at: &OccRef) -> Result<LambdaList, LinredError> {
    let sub = subterm_at(t, &at.path)?;
    Ok(lambda_list_in(sub, &at.path))
}

fn lambda_list_in(t: &Term, base: &AstPath) -> LambdaList {
    match t {
        Term::Var(_) => Vec::new(),
        Term::Abs(_, b) => {
            let mut l = vec![OccRef::new(base.clone())];
            l.extend(lambda_list_in(b, &base.child(0)));
            l
        }
        Term::App(f, _) => {
            let mut l = lambda_list_in(f, &base.child(0));
            if l.is_empty() {
                Vec::new()
            } else {
                l.remove(0);
                l
            }
        }
    }
}

/// The set of generalized redexes of `t`, ordered by binder path.
pub fn gen_redexes(t: &Term) -> Vec<GenRedex> {
    fn go(t: &Term, base: &AstPath, acc: &mut Vec<GenRedex>) {
        match t {
            Term::Var(_) => {}
            Term::Abs(_, b) => go(b, &base.child(0), acc),
            Term::App(f, a) => {
                let l = lambda_list_in(f, &base.child(0));
                if let Some(binder) = l.first() {
                    acc.push(GenRedex {
                        binder: binder.clone(),
                        argument: OccRef::new(base.child(1)),
                    });
                }
                go(f, &base.child(0), acc);
                go(a, &base.child(1), acc);
            }
        }
    }
    let mut acc = Vec::new();
    go(t, &AstPath::root(), &mut acc);
    acc.sort();
    acc
}

/// Binder occurrence of the variable occurrence at `occ`, or None when free.
pub fn binder_of(t: &Term, occ: &OccRef) -> Result<Option<OccRef>, LinredError> {
    match subterm_at(t, &occ.path)? {
        Term::Var(x) => {
            let mut prefix = occ.path.0.clone();
            let mut cur = t;
            let mut binders: Vec<(usize, &Ident)> = Vec::new();
            for (depth, &step) in occ.path.0.iter().enumerate() {
                if let Term::Abs(b, _) = cur {
                    binders.push((depth, b));
                }
                cur = match (cur, step) {
                    (Term::App(f, _), 0) => f,
                    (Term::App(_, a), 1) => a,
                    (Term::Abs(_, b), 0) => b,
                    _ => unreachable!("path validated"),
                };
            }
            for (depth, b) in binders.into_iter().rev() {
                if b == x {
                    prefix.truncate(depth);
                    return Ok(Some(OccRef::new(AstPath(prefix))));
                }
            }
            Ok(None)
        }
        _ => Err(LinredError::InvalidPath(occ.path.clone())),
    }
}

/// The generalized redex involving the variable occurrence at `occ`, if any.
pub fn redex_involving(t: &Term, occ: &OccRef) -> Result<Option<GenRedex>, LinredError> {
    let binder = match binder_of(t, occ)? {
        Some(b) => b,
        None => return Ok(None),
    };
    Ok(gen_redexes(t).into_iter().find(|r| r.binder == binder))
}

/// Leftmost linear variable occurrence; None means `t` is in quasi-normal
/// form.
pub fn lloc(t: &Term) -> Option<OccRef> {
    let redexes = gen_redexes(t);
    fn go(
        whole: &Term,
        redexes: &[GenRedex],
        t: &Term,
        base: &AstPath,
        scope: &mut Vec<(AstPath, Ident)>,
    ) -> Option<OccRef> {
        match t {
            Term::Var(x) => {
                let binder = scope.iter().rev().find(|(_, b)| b == x).map(|(p, _)| p.clone());
                match binder {
                    Some(bp) if redexes.iter().any(|r| r.binder.path == bp) => {
                        Some(OccRef::new(base.clone()))
                    }
                    _ => None,
                }
            }
            Term::Abs(x, b) => {
                scope.push((base.clone(), x.clone()));
                let r = go(whole, redexes, b, &base.child(0), scope);
                scope.pop();
                r
            }
            Term::App(f, a) => {
                if let Some(r) = go(whole, redexes, f, &base.child(0), scope) {
                    return Some(r);
                }
                if lambda_list_in(f, &base.child(0)).is_empty() {
                    go(whole, redexes, a, &base.child(1), scope)
                } else {
                    None
                }
            }
        }
    }
    go(t, &redexes, t, &AstPath::root(), &mut Vec::new())
}

/// Head (leftmost) variable occurrence.
pub fn hoc(t: &Term) -> OccRef {
    let mut path = AstPath::root();
    let mut cur = t;
    loop {
        match cur {
            Term::Var(_) => return OccRef::new(path),
            Term::Abs(_, b) => {
                path = path.child(0);
                cur = b;
            }
            Term::App(f, _) => {
                path = path.child(0);
                cur = f;
            }
        }
    }
}

/// Argument lookup for a variable occurrence: walk the spinal ancestors with
/// the index recurrence, popping one application run per lambda run, until
/// the index lands within an application's operand count.
pub fn arg_lookup(t: &Term, var_occ: &OccRef) -> Result<Option<OccRef>, LinredError> {
    match subterm_at(t, &var_occ.path)? {
        Term::Var(_) => {}
        _ => return Err(LinredError::InvalidPath(var_occ.path.clone())),
    }
    let binder = match binder_of(t, var_occ)? {
        Some(b) => b,
        None => return Ok(None),
    };

    // index of the binder within its maximal run of consecutive abstractions,
    // and the path to the top of that run
    let mut top = binder.path.clone();
    while let Some((parent, step)) = split_parent(&top) {
        if step == 0 && matches!(subterm_at(t, &parent).ok(), Some(Term::Abs(_, _))) {
            top = parent;
        } else {
            break;
        }
    }
    let mut i = 1 + (binder.path.0.len() - top.0.len());

    loop {
        // the lambda run at `top` must sit in operator position of an
        // application run
        let (mut app, step) = match split_parent(&top) {
            Some(x) => x,
            None => return Ok(None),
        };
        if step != 0 || !matches!(subterm_at(t, &app).ok(), Some(Term::App(_, _))) {
            return Ok(None);
        }
        // collect the application run upward: (((op) a1) a2) ... ak — the
        // innermost App is the parent; walk up while in operator position
        let mut operands = vec![app.child(1)];
        while let Some((parent, pstep)) = split_parent(&app) {
            if pstep == 0 && matches!(subterm_at(t, &parent).ok(), Some(Term::App(_, _))) {
                app = parent;
                operands.push(app.child(1));
            } else {
                break;
            }
        }
        // operands[j-1] is the j-th operand counting from the innermost App
        if i <= operands.len() {
            return Ok(Some(OccRef::new(operands[i - 1].clone())));
        }
        // pop this run, climb into the enclosing lambda run if any
        let (next, step) = match split_parent(&app) {
            Some(x) => x,
            None => return Ok(None),
        };
        if step != 0 {
            return Ok(None);
        }
        match subterm_at(t, &next).ok() {
            Some(Term::Abs(_, _)) => {
                let mut lam_top = next;
                let mut lam_count = 1;
                while let Some((parent, pstep)) = split_parent(&lam_top) {
                    if pstep == 0 && matches!(subterm_at(t, &parent).ok(), Some(Term::Abs(_, _))) {
                        lam_top = parent;
                        lam_count += 1;
                    } else {
                        break;
                    }
                }
                i = i - operands.len() + lam_count;
                top = lam_top;
            }
            _ => return Ok(None),
        }
    }
}

fn split_parent(p: &AstPath) -> Option<(AstPath, usize)> {
    let mut v = p.0.clone();
    let step = v.pop()?;
    Some((AstPath(v), step))
}

/// Linearly fire the generalized redex involving the variable occurrence at
/// `occ`: only that occurrence is replaced, by a copy of the argument with
/// freshly renamed bound variables. Binders between the argument's
/// application node and the occurrence that would capture a free variable of
/// the argument are alpha-renamed first.
pub fn linear_fire(t: &Term, occ: &OccRef, supply: &mut NameSupply) -> Result<Term, LinredError> {
    let redex = redex_involving(t, occ)?.ok_or_else(|| LinredError::NotInvolved(occ.path.clone()))?;
    let argument = subterm_at(t, &redex.argument.path)?.clone();
    let arg_free = argument.free_vars();

    // binders on the path from the application's operator entry down to the
    // occurrence can capture free variables of the argument copy
    let mut result = t.clone();
    let app_path = {
        let mut v = redex.argument.path.0.clone();
        v.pop();
        v
    };
    let avoid: BTreeSet<Ident> = t.all_idents().union(&arg_free).cloned().collect();
    for depth in app_path.len()..occ.path.0.len() {
        let prefix = AstPath(occ.path.0[..depth].to_vec());
        if let Term::Abs(x, _) = subterm_at(&result, &prefix)? {
            if arg_free.contains(x) {
                let fresh = supply.fresh(&avoid);
                let renamed = rename_binder(subterm_at(&result, &prefix)?, fresh, supply);
                result = replace_at(&result, &prefix.0, renamed);
            }
        }
    }

    let copy = crate::term::refresh_bound(&argument, supply, &avoid);
    Ok(replace_at(&result, &occ.path.0, copy))
}

fn rename_binder(abs: &Term, fresh: Ident, supply: &mut NameSupply) -> Term {
    match abs {
        Term::Abs(x, b) => {
            let renamed = substitute(b, x, &Term::var(fresh.clone()), supply);
            Term::abs(fresh, renamed)
        }
        _ => abs.clone(),
    }
}

/// One leftmost-linear step record, for `--trace-linear`.
#[derive(Debug, Clone, Serialize)]
pub struct LinearStep {
    pub step: usize,
    pub lloc_path: String,
    pub redex_binder_path: String,
    pub argument_path: String,
    pub term: String,
}

/// Iterate leftmost linear reduction to the quasi-normal form.
pub fn ll_reduce(t: &Term, fuel: usize) -> Result<Term, LinredError> {
    ll_reduce_traced(t, fuel, false).map(|(t, _)| t)
}

/// As [`ll_reduce`], optionally recording one entry per step.
pub fn ll_reduce_traced(
    t: &Term,
    fuel: usize,
    record: bool,
) -> Result<(Term, Vec<LinearStep>), LinredError> {
    let mut cur = t.clone();
    let mut supply = NameSupply::new("r");
    let mut steps = Vec::new();
    for step in 0..fuel {
        let occ = match lloc(&cur) {
            None => return Ok((cur, steps)),
            Some(occ) => occ,
        };
        let redex = redex_involving(&cur, &occ)?.expect("lloc occurrence is involved");
        if record {
            steps.push(LinearStep {
                step,
                lloc_path: occ.path.to_string(),
                redex_binder_path: redex.binder.path.to_string(),
                argument_path: redex.argument.path.to_string(),
                term: pretty(&cur),
            });
        }
        cur = linear_fire(&cur, &occ, &mut supply)?;
    }
    Err(LinredError::Divergence { fuel })
}

/// Head-linear reduction: stops as soon as the head occurrence is not
/// involved in a generalized redex (quasi head-normal form).
pub fn hl_reduce(t: &Term, fuel: usize) -> Result<Term, LinredError> {
    let mut cur = t.clone();
    let mut supply = NameSupply::new("r");
    for _ in 0..fuel {
        let h = hoc(&cur);
        if redex_involving(&cur, &h)?.is_none() {
            return Ok(cur);
        }
        cur = linear_fire(&cur, &h, &mut supply)?;
    }
    Err(LinredError::Divergence { fuel })
}

/// Leftmost spinal-innermost redex: the leftmost redex whose operator body
/// contains no redex.
fn leftmost_spinal_innermost(t: &Term, base: &AstPath) -> Option<AstPath> {
    fn has_redex(t: &Term) -> bool {
        match t {
            Term::Var(_) => false,
            Term::Abs(_, b) => has_redex(b),
            Term::App(f, a) => {
                matches!(f.as_ref(), Term::Abs(_, _)) || has_redex(f) || has_redex(a)
            }
        }
    }
    match t {
        Term::Var(_) => None,
        Term::Abs(_, b) => leftmost_spinal_innermost(b, &base.child(0)),
        Term::App(f, a) => {
            if let Term::Abs(_, body) = f.as_ref() {
                if !has_redex(body) {
                    return Some(base.clone());
                }
            }
            leftmost_spinal_innermost(f, &base.child(0))
                .or_else(|| leftmost_spinal_innermost(a, &base.child(1)))
        }
    }
}

/// Reduce a quasi-normal form to its beta-normal form by firing leftmost
/// spinal-innermost redexes, each of which is trivial on a qnf.
pub fn trivial_finish(t: &Term) -> Result<Term, LinredError> {
    let mut cur = t.clone();
    let mut supply = NameSupply::new("t");
    loop {
        if let Some(occ) = lloc(&cur) {
            return Err(LinredError::NotQuasiNormal(occ.path));
        }
        let redex = match leftmost_spinal_innermost(&cur, &AstPath::root()) {
            None => return Ok(cur),
            Some(p) => p,
        };
        let fired = match subterm_at(&cur, &redex)? {
            Term::App(f, a) => match f.as_ref() {
                Term::Abs(x, b) => substitute(b, x, a, &mut supply),
                _ => unreachable!("redex position holds a redex"),
            },
            _ => unreachable!("redex position holds a redex"),
        };
        cur = replace_at(&cur, &redex.0, fired);
    }
}

/// Arguments of the head occurrence, outermost application last.
pub fn args_of_hoc(t: &Term) -> Vec<OccRef> {
    fn go(t: &Term, base: &AstPath, acc: &mut Vec<OccRef>) {
        match t {
            Term::Var(_) => {}
            Term::Abs(_, b) => go(b, &base.child(0), acc),
            Term::App(f, _) => {
                go(f, &base.child(0), acc);
                if lambda_list_in(f, &base.child(0)).is_empty() {
                    acc.push(OccRef::new(base.child(1)));
                }
            }
        }
    }
    let mut acc = Vec::new();
    go(t, &AstPath::root(), &mut acc);
    acc
}

/// Normal-order (leftmost-outermost) beta reduction: the ground-truth
/// oracle.
pub fn normal_order(t: &Term, fuel: usize) -> Result<Term, LinredError> {
    fn step(t: &Term, supply: &mut NameSupply) -> Option<Term> {
        match t {
            Term::Var(_) => None,
            Term::App(f, a) => {
                if let Term::Abs(x, b) = f.as_ref() {
                    return Some(substitute(b, x, a, supply));
                }
                if let Some(f2) = step(f, supply) {
                    return Some(Term::app(f2, a.as_ref().clone()));
                }
                step(a, supply).map(|a2| Term::app(f.as_ref().clone(), a2))
            }
            Term::Abs(x, b) => step(b, supply).map(|b2| Term::abs(x.clone(), b2)),
        }
    }
    let mut cur = t.clone();
    let mut supply = NameSupply::new("n");
    for _ in 0..fuel {
        match step(&cur, &mut supply) {
            None => return Ok(cur),
            Some(next) => cur = next,
        }
    }
    if step(&cur, &mut supply).is_none() {
        Ok(cur)
    } else {
        Err(LinredError::Divergence { fuel })
    }
}

/// Translate an AST occurrence path to the corresponding computation-tree
/// path. Runs of abstractions collapse onto their bulk node and application
/// spines onto their @-node, so several AST positions share one tree path.
pub fn ctree_path_of(t: &Term, occ: &OccRef) -> Result<NodePath, LinredError> {
    fn go(t: &Term, rest: &[usize], out: &mut Vec<usize>) -> Result<(), LinredError> {
        // `t` is the subterm at the current tree node boundary (a lambda
        // node): strip its abstractions, then resolve within the body spine.
        let mut cur = t;
        let mut consumed = 0;
        while let Term::Abs(_, b) = cur {
            if rest.len() == consumed {
                // an abstraction of the run maps to the bulk lambda node
                return Ok(());
            }
            cur = b;
            consumed += 1;
        }
        let rest = &rest[consumed..];
        // unwind the application spine of `cur`
        let mut spine = Vec::new();
        let mut head = cur;
        while let Term::App(f, a) = head {
            spine.push(a.as_ref());
            head = f;
        }
        spine.reverse();
        let spine_len = spine.len();
        // the spine and its head share one tree node (@ when the head is an
        // abstraction, the head variable otherwise)
        out.push(0);
        let mut zeros = 0;
        while zeros < rest.len() && rest[zeros] == 0 && zeros < spine_len {
            zeros += 1;
        }
        if zeros == rest.len() && zeros < spine_len {
            // an inner application of the spine: same merged node
            return Ok(());
        }
        if zeros < spine_len {
            // descends into operand number (spine_len - zeros), counting
            // operands left to right
            if rest[zeros] != 1 {
                return Err(LinredError::InvalidPath(AstPath(rest.to_vec())));
            }
            let operand_index = spine_len - zeros;
            out.push(operand_index);
            return go(spine[operand_index - 1], &rest[zeros + 1..], out);
        }
        // descended through the whole spine into the head
        let rest = &rest[spine_len..];
        match head {
            Term::Var(_) => {
                if rest.is_empty() {
                    Ok(())
                } else {
                    Err(LinredError::InvalidPath(AstPath(rest.to_vec())))
                }
            }
            Term::Abs(_, _) => {
                // only reachable with spine_len > 0: the operator lambda
                out.push(0);
                go(head, rest, out)
            }
            Term::App(_, _) => unreachable!("spine unwound"),
        }
    }
    subterm_at(t, &occ.path)?;
    let mut out = Vec::new();
    go(t, &occ.path.0, &mut out)?;
    Ok(NodePath(out))
}
