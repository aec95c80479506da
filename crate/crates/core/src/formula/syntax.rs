use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Sort of a variable or argument position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sort {
    Singular,
    Plural,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Singular => f.write_str("singular"),
            Sort::Plural => f.write_str("plural"),
        }
    }
}

/// A variable. Its sort is read off the name: a name whose last two letters
/// (ignoring trailing primes and digits) coincide is plural, e.g. `xx`, `yy'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn sort(&self) -> Sort {
        sort_of_name(&self.0)
    }

    pub fn is_plural(&self) -> bool {
        self.sort() == Sort::Plural
    }

    /// The same name with one more prime; keeps the sort.
    pub fn primed(&self) -> Var {
        Var(format!("{}'", self.0))
    }

    /// First of `self, self', self'', ...` not in `avoid`.
    pub fn fresh(&self, avoid: &BTreeSet<Var>) -> Var {
        let mut v = self.clone();
        while avoid.contains(&v) {
            v = v.primed();
        }
        v
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn sort_of_name(name: &str) -> Sort {
    let stem = name.trim_end_matches(|c: char| c == '\'' || c.is_ascii_digit());
    let mut chars = stem.chars().rev();
    match (chars.next(), chars.next()) {
        (Some(a), Some(b)) if a == b => Sort::Plural,
        _ => Sort::Singular,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    Const(String),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Var::new(name))
    }

    pub fn constant(name: &str) -> Self {
        Term::Const(name.to_string())
    }

    pub fn sort(&self) -> Sort {
        match self {
            Term::Var(v) => v.sort(),
            Term::Const(_) => Sort::Singular,
        }
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => f.write_str(c),
        }
    }
}

impl From<Var> for Term {
    fn from(v: Var) -> Self {
        Term::Var(v)
    }
}

/// The two modalities: D (S4, interpretational) and G (S4.2, generative).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    D,
    G,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::D => f.write_str("D"),
            Mode::G => f.write_str("G"),
        }
    }
}

/// Formulas of the bimodal plural language. Quantifiers are singular or
/// plural according to the sort of the bound variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    /// `t pc xx`: t is one of xx.
    Prec(Term, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Nec(Mode, Box<Formula>),
    Poss(Mode, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

/// Fragments of the language, ordered by inclusion of the modal vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Language {
    /// No modal operators.
    L,
    /// D-modalities only.
    LD,
    /// G-modalities only.
    LG,
    /// Both.
    LBM,
}

impl Language {
    pub fn allows(self, mode: Mode) -> bool {
        matches!(
            (self, mode),
            (Language::LBM, _) | (Language::LD, Mode::D) | (Language::LG, Mode::G)
        )
    }

    /// Whether every formula of `other` is a formula of `self`.
    pub fn includes(self, other: Language) -> bool {
        match other {
            Language::L => true,
            Language::LD => self.allows(Mode::D),
            Language::LG => self.allows(Mode::G),
            Language::LBM => self == Language::LBM,
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Language::L => "L",
            Language::LD => "L^D",
            Language::LG => "L^G",
            Language::LBM => "L^BM",
        })
    }
}

impl Formula {
    pub fn atom(pred: &str, args: Vec<Term>) -> Self {
        Formula::Atom(pred.to_string(), args)
    }

    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    pub fn prec(t: Term, xx: Var) -> Self {
        Formula::Prec(t, xx)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// `a <-> b`, expanded as a conjunction of implications.
    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn nec(m: Mode, f: Formula) -> Self {
        Formula::Nec(m, Box::new(f))
    }

    pub fn poss(m: Mode, f: Formula) -> Self {
        Formula::Poss(m, Box::new(f))
    }

    pub fn box_d(f: Formula) -> Self {
        Formula::nec(Mode::D, f)
    }

    pub fn box_g(f: Formula) -> Self {
        Formula::nec(Mode::G, f)
    }

    pub fn dia_d(f: Formula) -> Self {
        Formula::poss(Mode::D, f)
    }

    pub fn dia_g(f: Formula) -> Self {
        Formula::poss(Mode::G, f)
    }

    pub fn forall(v: Var, f: Formula) -> Self {
        Formula::Forall(v, Box::new(f))
    }

    pub fn exists(v: Var, f: Formula) -> Self {
        Formula::Exists(v, Box::new(f))
    }

    /// `xx pe yy`: every one of xx is one of yy, bound through `z`.
    pub fn incl_via(z: Var, xx: Var, yy: Var) -> Self {
        let zt = Term::Var(z.clone());
        Formula::forall(
            z,
            Formula::implies(Formula::prec(zt.clone(), xx), Formula::prec(zt, yy)),
        )
    }

    pub fn incl(xx: Var, yy: Var) -> Self {
        Formula::incl_via(Var::new("z"), xx, yy)
    }

    /// `(forall v : guard) body`
    pub fn forall_such(v: Var, guard: Formula, body: Formula) -> Self {
        Formula::forall(v, Formula::implies(guard, body))
    }

    /// `(exists v : guard) body`
    pub fn exists_such(v: Var, guard: Formula, body: Formula) -> Self {
        Formula::exists(v, Formula::and(guard, body))
    }

    /// Conjunction of a nonempty list, associated to the left.
    pub fn conj(fs: impl IntoIterator<Item = Formula>) -> Option<Self> {
        fs.into_iter().reduce(Formula::and)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => 1,
            Formula::Not(a) | Formula::Nec(_, a) | Formula::Poss(_, a) => 1 + a.size(),
            Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Height of the syntax tree: atoms have depth 1, and each connective,
    /// quantifier or modality adds one.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => 1,
            Formula::Not(a) | Formula::Nec(_, a) | Formula::Poss(_, a) => 1 + a.depth(),
            Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let term = |t: &Term, bound: &Vec<Var>, out: &mut BTreeSet<Var>| {
            if let Term::Var(v) = t {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        };
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| term(t, bound, out)),
            Formula::Eq(a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            Formula::Prec(t, xx) => {
                term(t, bound, out);
                if !bound.contains(xx) {
                    out.insert(xx.clone());
                }
            }
            Formula::Not(a) | Formula::Nec(_, a) | Formula::Poss(_, a) => {
                a.collect_free(bound, out)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(v.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_free(&self, v: &Var) -> bool {
        self.free_vars().contains(v)
    }

    /// Every variable occurring anywhere, free or bound.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(_, args) => out.extend(args.iter().filter_map(|t| t.as_var().cloned())),
            Formula::Eq(a, b) => out.extend([a, b].into_iter().filter_map(|t| t.as_var().cloned())),
            Formula::Prec(t, xx) => {
                out.extend(t.as_var().cloned());
                out.insert(xx.clone());
            }
            Formula::Forall(v, _) | Formula::Exists(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut add = |t: &Term| {
            if let Term::Const(c) = t {
                out.insert(c.clone());
            }
        };
        self.visit(&mut |f| match f {
            Formula::Atom(_, args) => args.iter().for_each(&mut add),
            Formula::Eq(a, b) => {
                add(a);
                add(b);
            }
            Formula::Prec(t, _) => add(t),
            _ => {}
        });
        out
    }

    /// Predicate symbols with their argument sorts as used.
    pub fn predicates(&self) -> BTreeSet<(String, Vec<Sort>)> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p, args) = f {
                out.insert((p.clone(), args.iter().map(Term::sort).collect()));
            }
        });
        out
    }

    pub fn modes(&self) -> BTreeSet<Mode> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Nec(m, _) | Formula::Poss(m, _) = f {
                out.insert(*m);
            }
        });
        out
    }

    pub fn is_modal_free(&self) -> bool {
        self.modes().is_empty()
    }

    /// Whether any plural variable or membership occurs.
    pub fn is_plural(&self) -> bool {
        self.all_vars().iter().any(Var::is_plural)
    }

    pub fn language(&self) -> Language {
        let m = self.modes();
        match (m.contains(&Mode::D), m.contains(&Mode::G)) {
            (false, false) => Language::L,
            (true, false) => Language::LD,
            (false, true) => Language::LG,
            (true, true) => Language::LBM,
        }
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => {}
            Formula::Not(a) | Formula::Nec(_, a) | Formula::Poss(_, a) => a.visit(f),
            Formula::Forall(_, a) | Formula::Exists(_, a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => vec![],
            Formula::Not(a) | Formula::Nec(_, a) | Formula::Poss(_, a) => vec![a],
            Formula::Forall(_, a) | Formula::Exists(_, a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => vec![a, b],
        }
    }
}

/// Syntactic identity up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    alpha(a, b, &mut Vec::new())
}

fn alpha(a: &Formula, b: &Formula, env: &mut Vec<(Var, Var)>) -> bool {
    fn var_eq(x: &Var, y: &Var, env: &[(Var, Var)]) -> bool {
        for (l, r) in env.iter().rev() {
            if l == x || r == y {
                return l == x && r == y;
            }
        }
        x == y
    }
    let term_eq = |s: &Term, t: &Term, env: &[(Var, Var)]| match (s, t) {
        (Term::Var(x), Term::Var(y)) => var_eq(x, y, env),
        (Term::Const(c), Term::Const(d)) => c == d,
        _ => false,
    };
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(s, t)| term_eq(s, t, env))
        }
        (Formula::Eq(s1, t1), Formula::Eq(s2, t2)) => term_eq(s1, s2, env) && term_eq(t1, t2, env),
        (Formula::Prec(s1, x1), Formula::Prec(s2, x2)) => {
            term_eq(s1, s2, env) && var_eq(x1, x2, env)
        }
        (Formula::Not(x), Formula::Not(y)) => alpha(x, y, env),
        (Formula::And(x1, y1), Formula::And(x2, y2))
        | (Formula::Or(x1, y1), Formula::Or(x2, y2))
        | (Formula::Implies(x1, y1), Formula::Implies(x2, y2)) => {
            alpha(x1, x2, env) && alpha(y1, y2, env)
        }
        (Formula::Nec(m1, x), Formula::Nec(m2, y)) | (Formula::Poss(m1, x), Formula::Poss(m2, y)) => {
            m1 == m2 && alpha(x, y, env)
        }
        (Formula::Forall(v1, x), Formula::Forall(v2, y))
        | (Formula::Exists(v1, x), Formula::Exists(v2, y)) => {
            if v1.sort() != v2.sort() {
                return false;
            }
            env.push((v1.clone(), v2.clone()));
            let r = alpha(x, y, env);
            env.pop();
            r
        }
        _ => false,
    }
}

/// Canonical representative of the alpha-equivalence class: bound variables
/// are renamed `#0, #1, ...` (`#0##, ...` for plurals), names no parsed
/// formula can contain.
pub fn alpha_normalize(f: &Formula) -> Formula {
    fn go(f: &Formula, env: &mut Vec<(Var, Var)>, next: &mut usize) -> Formula {
        let rt = |t: &Term, env: &[(Var, Var)]| match t {
            Term::Var(v) => Term::Var(
                env.iter().rev().find(|(o, _)| o == v).map(|(_, n)| n.clone()).unwrap_or_else(|| v.clone()),
            ),
            c => c.clone(),
        };
        match f {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|t| rt(t, env)).collect()),
            Formula::Eq(a, b) => Formula::Eq(rt(a, env), rt(b, env)),
            Formula::Prec(t, xx) => {
                let xx = match rt(&Term::Var(xx.clone()), env) {
                    Term::Var(v) => v,
                    Term::Const(_) => unreachable!(),
                };
                Formula::Prec(rt(t, env), xx)
            }
            Formula::Not(a) => Formula::not(go(a, env, next)),
            Formula::And(a, b) => Formula::and(go(a, env, next), go(b, env, next)),
            Formula::Or(a, b) => Formula::or(go(a, env, next), go(b, env, next)),
            Formula::Implies(a, b) => Formula::implies(go(a, env, next), go(b, env, next)),
            Formula::Nec(m, a) => Formula::nec(*m, go(a, env, next)),
            Formula::Poss(m, a) => Formula::poss(*m, go(a, env, next)),
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                let n = match v.sort() {
                    Sort::Singular => Var::new(format!("#{next}")),
                    Sort::Plural => Var::new(format!("#{next}##")),
                };
                *next += 1;
                env.push((v.clone(), n.clone()));
                let body = go(a, env, next);
                env.pop();
                if matches!(f, Formula::Forall(..)) {
                    Formula::forall(n, body)
                } else {
                    Formula::exists(n, body)
                }
            }
        }
    }
    go(f, &mut Vec::new(), &mut 0)
}
