//! Syntax of the bimodal plural language: terms, formulas, signatures,
//! parsing, printing and substitution.

mod parse;
mod render;
mod signature;
mod subst;
mod syntax;

pub use parse::{member, parse, parse_infer, parse_with, ParseError, ParseErrorKind, ParseOptions};
pub use signature::{Designated, PredDecl, Signature, SignatureError};
pub use subst::{substitute, substitute_all, SortError};
pub use syntax::{alpha_eq, alpha_normalize, sort_of_name, Formula, Language, Mode, Sort, Term, Var};

/// Language of a formula: the least fragment containing it.
pub fn classify_language(f: &Formula) -> Language {
    f.language()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_infer(s).unwrap().0
    }

    #[test]
    fn sorts_from_names() {
        assert_eq!(sort_of_name("x"), Sort::Singular);
        assert_eq!(sort_of_name("xx"), Sort::Plural);
        assert_eq!(sort_of_name("yy''"), Sort::Plural);
        assert_eq!(sort_of_name("zz1"), Sort::Plural);
        assert_eq!(sort_of_name("x1"), Sort::Singular);
        assert_eq!(sort_of_name("ab"), Sort::Singular);
    }

    #[test]
    fn parses_nested_modal_quantifier() {
        let f = p("[]D forall x (Nat(x) -> <>G exists y Succ(x,y))");
        let x = Var::new("x");
        let y = Var::new("y");
        let want = Formula::box_d(Formula::forall(
            x.clone(),
            Formula::implies(
                Formula::atom("Nat", vec![Term::Var(x.clone())]),
                Formula::dia_g(Formula::exists(
                    y.clone(),
                    Formula::atom("Succ", vec![Term::Var(x), Term::Var(y)]),
                )),
            ),
        ));
        assert_eq!(f, want);
        assert_eq!(f.language(), Language::LBM);
    }

    #[test]
    fn precedence() {
        let f = p("~p & q | r -> s -> t");
        assert_eq!(f.to_string(), "~p & q | r -> s -> t");
        let Formula::Implies(a, b) = &f else { panic!() };
        assert!(matches!(**a, Formula::Or(..)));
        assert!(matches!(**b, Formula::Implies(..)));
    }

    #[test]
    fn plural_quantifier_needs_plural_name() {
        let e = parse_infer("forallp x P(x)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::SortMismatch);
        assert!(parse_infer("forallp xx exists y y pc xx").is_ok());
    }

    #[test]
    fn syntax_error_location() {
        let e = parse_infer("P(a) &").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        assert_eq!((e.line, e.col), (1, 7));
        let e = parse_infer("P(a) $ Q").unwrap_err();
        assert_eq!(e.col, 6);
    }

    #[test]
    fn unknown_predicate_in_strict_mode() {
        let sig = Signature::unary_binary();
        assert_eq!(parse("Q(x)", &sig).unwrap_err().kind, ParseErrorKind::UnknownSymbol);
        assert_eq!(parse("R(x)", &sig).unwrap_err().kind, ParseErrorKind::SortMismatch);
        assert!(parse("R(x, y) & P(x)", &sig).is_ok());
    }

    #[test]
    fn constants_and_variables() {
        let sig = Signature::unary_binary().with_constant("a").unwrap();
        let f = parse("P(a) & P(x)", &sig).unwrap();
        assert_eq!(f.constants().into_iter().collect::<Vec<_>>(), vec!["a".to_string()]);
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec![Var::new("x")]);
        // A bound occurrence is a variable even if a constant shares the name.
        let g = parse("exists a P(a)", &sig).unwrap();
        assert!(g.constants().is_empty());
    }

    #[test]
    fn derived_symbols_expand() {
        let f = p("xx pe yy");
        assert_eq!(f.to_string(), "forall z (z pc xx -> z pc yy)");
        let (g, sig) = parse_infer("x in y").unwrap();
        assert_eq!(g.to_string(), "existsp ss (Set(ss, y) & x pc ss)");
        assert!(sig.has_set());
        assert_eq!(p("p <-> q").to_string(), "(p -> q) & (q -> p)");
    }

    #[test]
    fn substitution_renames_bound_variable() {
        let f = parse("exists y y = x", &Signature::new()).unwrap();
        let g = substitute(&f, &Var::new("x"), &Term::var("y")).unwrap();
        assert_eq!(g.to_string(), "exists y' y' = y");
    }

    #[test]
    fn substitution_checks_sort() {
        let f = parse("x pc xx", &Signature::new()).unwrap();
        assert!(substitute(&f, &Var::new("xx"), &Term::var("y")).is_err());
        let g = substitute(&f, &Var::new("xx"), &Term::var("yy")).unwrap();
        assert_eq!(g.to_string(), "x pc yy");
    }

    #[test]
    fn alpha_equivalence() {
        let sig = Signature::unary_binary();
        let a = parse("forall x exists y R(x, y)", &sig).unwrap();
        let b = parse("forall y exists x R(y, x)", &sig).unwrap();
        let c = parse("forall y exists x R(x, y)", &sig).unwrap();
        assert!(alpha_eq(&a, &b));
        assert!(!alpha_eq(&a, &c));
        assert_eq!(alpha_normalize(&a), alpha_normalize(&b));
        let d = parse("forall x R(x, y)", &sig).unwrap();
        let e = parse("forall y R(y, y)", &sig).unwrap();
        assert!(!alpha_eq(&d, &e));
    }

    #[test]
    fn depth_and_size() {
        let f = p("[]D (P(a) -> <>G Q(a))");
        assert_eq!(f.depth(), 4);
        assert_eq!(f.size(), 5);
    }
}
