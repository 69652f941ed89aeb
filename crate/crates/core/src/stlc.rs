//! Simple types: principal-type inference, eta-long expansion, and the
//! traversal normalization pipeline for simply-typed terms.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use crate::readout::{normalize_tree_with_mode, NormalizeError};
use crate::term::{Ident, NameSupply, Term};
use crate::traversal::Mode;

/// Simple types over named base types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimpleType {
    Base(String),
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn arrow(domain: SimpleType, codomain: SimpleType) -> SimpleType {
        SimpleType::Arrow(Box::new(domain), Box::new(codomain))
    }

    /// Argument types and final base of the arrow spine.
    pub fn uncurry(&self) -> (Vec<&SimpleType>, &SimpleType) {
        let mut args = Vec::new();
        let mut cur = self;
        while let SimpleType::Arrow(d, c) = cur {
            args.push(d.as_ref());
            cur = c;
        }
        (args, cur)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Base(b) => f.write_str(b),
            SimpleType::Arrow(d, c) => {
                match d.as_ref() {
                    SimpleType::Arrow(_, _) => write!(f, "({d}) -> {c}"),
                    _ => write!(f, "{d} -> {c}"),
                }
            }
        }
    }
}

/// Types of the free variables of the inferred term.
pub type TypedContext = BTreeMap<Ident, SimpleType>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StlcError {
    #[error("untypable: {0}")]
    Untypable(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error(transparent)]
    Normalize(#[from] Box<NormalizeError>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum MTy {
    Var(usize),
    Base(String),
    Arrow(Box<MTy>, Box<MTy>),
}

struct Unifier {
    subst: Vec<Option<MTy>>,
}

impl Unifier {
    fn new() -> Unifier {
        Unifier { subst: Vec::new() }
    }

    fn fresh(&mut self) -> MTy {
        self.subst.push(None);
        MTy::Var(self.subst.len() - 1)
    }

    fn resolve(&self, t: &MTy) -> MTy {
        match t {
            MTy::Var(v) => match &self.subst[*v] {
                Some(bound) => self.resolve(&bound.clone()),
                None => t.clone(),
            },
            MTy::Base(_) => t.clone(),
            MTy::Arrow(d, c) => MTy::Arrow(Box::new(self.resolve(d)), Box::new(self.resolve(c))),
        }
    }

    fn occurs(&self, v: usize, t: &MTy) -> bool {
        match self.resolve(t) {
            MTy::Var(w) => v == w,
            MTy::Base(_) => false,
            MTy::Arrow(d, c) => self.occurs(v, &d) || self.occurs(v, &c),
        }
    }

    fn unify(&mut self, a: &MTy, b: &MTy) -> Result<(), String> {
        let a = self.resolve(a);
        let b = self.resolve(b);
        match (&a, &b) {
            (MTy::Var(v), MTy::Var(w)) if v == w => Ok(()),
            (MTy::Var(v), other) | (other, MTy::Var(v)) => {
                if self.occurs(*v, other) {
                    return Err(format!("occurs check fails binding t{v}"));
                }
                self.subst[*v] = Some(other.clone());
                Ok(())
            }
            (MTy::Base(x), MTy::Base(y)) => {
                if x == y {
                    Ok(())
                } else {
                    Err(format!("cannot unify base types {x} and {y}"))
                }
            }
            (MTy::Arrow(d1, c1), MTy::Arrow(d2, c2)) => {
                self.unify(d1, d2)?;
                self.unify(c1, c2)
            }
            _ => Err("cannot unify an arrow with a base type".to_string()),
        }
    }
}

enum Typed {
    Var(Ident, MTy),
    App(Box<Typed>, Box<Typed>, MTy),
    Abs(Ident, Box<Typed>, MTy),
}

impl Typed {
    fn ty(&self) -> &MTy {
        match self {
            Typed::Var(_, t) => t,
            Typed::App(_, _, t) => t,
            Typed::Abs(_, _, t) => t,
        }
    }
}

fn infer_typed(
    t: &Term,
    env: &mut Vec<(Ident, MTy)>,
    free: &mut BTreeMap<Ident, MTy>,
    u: &mut Unifier,
) -> Result<Typed, String> {
    match t {
        Term::Var(x) => {
            let ty = match env.iter().rev().find(|(b, _)| b == x) {
                Some((_, t)) => t.clone(),
                None => free.entry(x.clone()).or_insert_with(|| u.fresh()).clone(),
            };
            Ok(Typed::Var(x.clone(), ty))
        }
        Term::App(f, a) => {
            let tf = infer_typed(f, env, free, u)?;
            let ta = infer_typed(a, env, free, u)?;
            let result = u.fresh();
            u.unify(
                tf.ty(),
                &MTy::Arrow(Box::new(ta.ty().clone()), Box::new(result.clone())),
            )
            .map_err(|e| format!("at application of {f}: {e}"))?;
            Ok(Typed::App(Box::new(tf), Box::new(ta), result))
        }
        Term::Abs(x, b) => {
            let ax = u.fresh();
            env.push((x.clone(), ax.clone()));
            let tb = infer_typed(b, env, free, u)?;
            env.pop();
            let ty = MTy::Arrow(Box::new(ax), Box::new(tb.ty().clone()));
            Ok(Typed::Abs(x.clone(), Box::new(tb), ty))
        }
    }
}

/// Assign base names to the unresolved metas of `tys` (in order of first
/// appearance), skipping names in `taken`.
struct BaseNamer {
    assigned: BTreeMap<usize, String>,
    taken: BTreeSet<String>,
    next: usize,
}

impl BaseNamer {
    fn new(taken: BTreeSet<String>) -> BaseNamer {
        BaseNamer { assigned: BTreeMap::new(), taken, next: 0 }
    }

    fn name_for(&mut self, v: usize) -> String {
        if let Some(n) = self.assigned.get(&v) {
            return n.clone();
        }
        loop {
            let k = self.next;
            self.next += 1;
            let letter = (b'a' + (k % 26) as u8) as char;
            let name = if k < 26 { letter.to_string() } else { format!("{}{}", letter, k / 26) };
            if !self.taken.contains(&name) {
                self.assigned.insert(v, name.clone());
                return name;
            }
        }
    }

    fn to_simple(&mut self, u: &Unifier, t: &MTy) -> SimpleType {
        match u.resolve(t) {
            MTy::Var(v) => SimpleType::Base(self.name_for(v)),
            MTy::Base(b) => SimpleType::Base(b),
            MTy::Arrow(d, c) => {
                SimpleType::arrow(self.to_simple(u, &d), self.to_simple(u, &c))
            }
        }
    }
}

/// Principal simple type of `t` (single base-type family `a, b, ...`),
/// together with the types of its free variables.
pub fn infer(t: &Term) -> Result<(TypedContext, SimpleType), StlcError> {
    let mut u = Unifier::new();
    let mut free = BTreeMap::new();
    let typed = infer_typed(t, &mut Vec::new(), &mut free, &mut u)
        .map_err(StlcError::Untypable)?;
    let mut namer = BaseNamer::new(BTreeSet::new());
    let ty = namer.to_simple(&u, typed.ty());
    let ctx = free
        .into_iter()
        .map(|(x, mty)| {
            let st = namer.to_simple(&u, &mty);
            (x, st)
        })
        .collect();
    Ok((ctx, ty))
}

fn lift(t: &SimpleType) -> MTy {
    match t {
        SimpleType::Base(b) => MTy::Base(b.clone()),
        SimpleType::Arrow(d, c) => MTy::Arrow(Box::new(lift(d)), Box::new(lift(c))),
    }
}

fn base_names(t: &SimpleType, acc: &mut BTreeSet<String>) {
    match t {
        SimpleType::Base(b) => {
            acc.insert(b.clone());
        }
        SimpleType::Arrow(d, c) => {
            base_names(d, acc);
            base_names(c, acc);
        }
    }
}

/// Eta-long expansion of `t` with respect to `ty`: every subterm becomes
/// fully abstracted and fully applied for its type. Fails when `t` does not
/// inhabit `ty`.
pub fn eta_long(t: &Term, ty: &SimpleType, supply: &mut NameSupply) -> Result<Term, StlcError> {
    let mut u = Unifier::new();
    let mut free = BTreeMap::new();
    let typed = infer_typed(t, &mut Vec::new(), &mut free, &mut u)
        .map_err(StlcError::Untypable)?;
    u.unify(typed.ty(), &lift(ty))
        .map_err(StlcError::TypeMismatch)?;
    let mut taken = BTreeSet::new();
    base_names(ty, &mut taken);
    let mut namer = BaseNamer::new(taken);
    let mut avoid = t.all_idents();

    fn el(
        tt: &Typed,
        u: &Unifier,
        namer: &mut BaseNamer,
        supply: &mut NameSupply,
        avoid: &mut BTreeSet<Ident>,
    ) -> Term {
        let ty = namer.to_simple(u, tt.ty());
        let (arg_tys, _) = ty.uncurry();
        let arity = arg_tys.len();
        let arg_tys: Vec<SimpleType> = arg_tys.into_iter().cloned().collect();

        // strip existing leading abstractions
        let mut binders: Vec<Ident> = Vec::new();
        let mut cur = tt;
        while let Typed::Abs(x, b, _) = cur {
            binders.push(x.clone());
            cur = b;
        }
        // fresh binders for the missing arguments
        let mut extra: Vec<(Ident, SimpleType)> = Vec::new();
        for aty in arg_tys.iter().skip(binders.len()).take(arity - binders.len()) {
            let z = supply.fresh(avoid);
            avoid.insert(z.clone());
            extra.push((z, aty.clone()));
        }

        // application spine of the stripped body
        let mut args: Vec<&Typed> = Vec::new();
        let mut head = cur;
        while let Typed::App(f, a, _) = head {
            args.push(a);
            head = f;
        }
        args.reverse();

        let mut body = match head {
            Typed::Var(x, _) => Term::var(x.clone()),
            Typed::Abs(_, _, _) => el(head, u, namer, supply, avoid),
            Typed::App(_, _, _) => unreachable!("spine unwound"),
        };
        for a in args {
            body = Term::app(body, el(a, u, namer, supply, avoid));
        }
        for (z, zty) in &extra {
            body = Term::app(body, el_var(z, zty, supply, avoid));
        }
        for (z, _) in extra.iter().rev() {
            body = Term::abs(z.clone(), body);
        }
        for x in binders.iter().rev() {
            body = Term::abs(x.clone(), body);
        }
        body
    }

    fn el_var(
        name: &str,
        ty: &SimpleType,
        supply: &mut NameSupply,
        avoid: &mut BTreeSet<Ident>,
    ) -> Term {
        let (arg_tys, _) = ty.uncurry();
        let arg_tys: Vec<SimpleType> = arg_tys.into_iter().cloned().collect();
        let mut ws: Vec<(Ident, SimpleType)> = Vec::new();
        for aty in &arg_tys {
            let w = supply.fresh(avoid);
            avoid.insert(w.clone());
            ws.push((w, aty.clone()));
        }
        let mut body = Term::var(name.to_string());
        for (w, wty) in &ws {
            body = Term::app(body, el_var(w, wty, supply, avoid));
        }
        for (w, _) in ws.iter().rev() {
            body = Term::abs(w.clone(), body);
        }
        body
    }

    Ok(el(&typed, &u, &mut namer, supply, &mut avoid))
}

/// Result of the STLC pipeline.
#[derive(Debug, Clone)]
pub struct StlcNormalization {
    pub context: TypedContext,
    pub ty: SimpleType,
    pub eta_long_input: Term,
    pub normal_form: Term,
}

/// Infer, eta-long expand, enumerate branching traversals (the `Stlc` rule
/// set) and read out the eta-long beta-normal form.
pub fn normalize_stlc(t: &Term, fuel: usize) -> Result<StlcNormalization, StlcError> {
    let (context, ty) = infer(t)?;
    let mut supply = NameSupply::new("e");
    let expanded = eta_long(t, &ty, &mut supply)?;
    let normal_form =
        normalize_tree_with_mode(&expanded, Mode::Stlc, fuel).map_err(Box::new)?;
    Ok(StlcNormalization { context, ty, eta_long_input: expanded, normal_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{alpha_eq, parse};

    fn p(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn infer_identity() {
        let (ctx, ty) = infer(&p("\\x.x")).unwrap();
        assert!(ctx.is_empty());
        assert_eq!(ty.to_string(), "a -> a");
    }

    #[test]
    fn infer_church_two() {
        let (_, ty) = infer(&p("\\s z. s (s z)")).unwrap();
        assert_eq!(ty.to_string(), "(a -> a) -> a -> a");
    }

    #[test]
    fn infer_self_application_fails() {
        let err = infer(&p("\\x. x x")).unwrap_err();
        assert!(matches!(err, StlcError::Untypable(_)));
    }

    #[test]
    fn eta_long_of_eta_short_identity() {
        // \f.f at (a->a)->(a->a) expands to \f x. f x
        let ty = SimpleType::arrow(
            SimpleType::arrow(SimpleType::Base("a".into()), SimpleType::Base("a".into())),
            SimpleType::arrow(SimpleType::Base("a".into()), SimpleType::Base("a".into())),
        );
        let mut supply = NameSupply::new("e");
        let r = eta_long(&p("\\f.f"), &ty, &mut supply).unwrap();
        assert!(alpha_eq(&r, &p("\\f x. f x")), "got {r}");
    }

    #[test]
    fn eta_long_fixed_point_of_saturated_term() {
        let t = p("\\s z. s (s z)");
        let (_, ty) = infer(&t).unwrap();
        let mut supply = NameSupply::new("e");
        let r = eta_long(&t, &ty, &mut supply).unwrap();
        assert!(alpha_eq(&r, &t), "got {r}");
    }

    #[test]
    fn eta_long_variable_at_base_type() {
        let t = p("x");
        let (_, ty) = infer(&t).unwrap();
        let mut supply = NameSupply::new("e");
        let r = eta_long(&t, &ty, &mut supply).unwrap();
        assert_eq!(r, t);
    }

    #[test]
    fn eta_long_idempotent() {
        for src in ["\\f.f", "\\f x. f (f x)", "(\\x.x)(\\y.y)", "\\x y. y (x y)"] {
            let t = p(src);
            let (_, ty) = infer(&t).unwrap();
            let mut supply = NameSupply::new("e");
            let once = eta_long(&t, &ty, &mut supply).unwrap();
            let (_, ty2) = infer(&once).unwrap();
            let mut supply2 = NameSupply::new("f");
            let twice = eta_long(&once, &ty2, &mut supply2).unwrap();
            assert!(alpha_eq(&once, &twice), "{src}: {once} vs {twice}");
        }
    }
}
