//! Worked examples for each module, checked through the public API.

use bimodal::formula::{
    alpha_eq, classify_language, parse_infer, parse_with, substitute, Formula, Language, Mode, ParseOptions, Signature, Term, Var,
};
use bimodal::kripke::{
    eval_classical, eval_forcing, parse_model, validate_frame, Assignment, BimodalFrame, Value, Violation,
};
use bimodal::proofs::{axiom_inventory, instantiate_schema, Instantiation, SchemaArg, SystemName, SystemSpec};
use bimodal::search::{
    find_countermodel, run_property_suite, FrameRestriction, ModelSpace, SearchBounds, Semantics, SuiteOptions,
};
use bimodal::translate::{ext_godel, ext_potentialist, godel, normalize, potentialist, reverse, star};

/// Unbound singular names are variables; predicates are declared on use.
fn f(s: &str) -> Formula {
    let mut sig = Signature::new();
    sig.add_constant("a").unwrap();
    parse_with(s, &mut sig, &ParseOptions { infer_predicates: true, ..Default::default() }).unwrap()
}

fn v(s: &str) -> Var {
    Var::new(s)
}

fn t(s: &str) -> Term {
    Term::var(s)
}

#[test]
fn parsing() {
    let expected = Formula::box_d(Formula::forall(
        v("x"),
        Formula::implies(
            Formula::atom("Nat", vec![t("x")]),
            Formula::dia_g(Formula::exists(v("y"), Formula::atom("Succ", vec![t("x"), t("y")]))),
        ),
    ));
    assert_eq!(f("[]D forall x (Nat(x) -> <>G exists y Succ(x,y))"), expected);
    assert_eq!(f("P(a)"), Formula::atom("P", vec![Term::constant("a")]));
    assert_eq!(f("x pc xx"), Formula::prec(t("x"), v("xx")));
}

#[test]
fn substitution() {
    let e = f("exists y x = y");
    assert_eq!(substitute(&e, &v("x"), &Term::constant("a")).unwrap(), f("exists y a = y"));
    // capture forces a rename of the bound y
    let renamed = substitute(&e, &v("x"), &t("y")).unwrap();
    assert_eq!(renamed, f("exists y' y = y'"));
    assert_eq!(substitute(&f("P(x)"), &v("z"), &Term::constant("a")).unwrap(), f("P(x)"));
}

#[test]
fn languages() {
    assert_eq!(classify_language(&f("P(x)")), Language::L);
    assert_eq!(classify_language(&f("[]D P(x)")), Language::LD);
    assert_eq!(classify_language(&f("[]D P(x) -> []G P(x)")), Language::LBM);
}

#[test]
fn translations() {
    let show = |r: Result<Formula, _>| -> String { r.map(|x: Formula| x.to_string()).unwrap() };
    assert_eq!(show(godel(&f("P(x)"))), "[]D P(x)");
    assert_eq!(show(godel(&f("P(x) -> Q(x)"))), "[]D ([]D P(x) -> []D Q(x))");
    assert_eq!(show(godel(&f("exists x P(x)"))), "exists x []D P(x)");

    assert_eq!(show(potentialist(&f("forall x exists y Succ(x,y)"))), "[]G forall x <>G exists y Succ(x, y)");
    assert_eq!(show(potentialist(&f("P(a)"))), "P(a)");
    assert_eq!(show(potentialist(&f("existsp xx P(x)"))), "<>G existsp xx P(x)");

    assert_eq!(show(star(&f("exists x P(x)"))), "<>G exists x []D P(x)");
    assert_eq!(show(star(&f("forall x P(x)"))), "[]D forall x []D P(x)");
    assert_eq!(show(star(&f("~P(a)"))), "[]D ~[]D P(a)");

    assert_eq!(show(ext_godel(&f("<>G P(x)"))), "<>G []D P(x)");
    assert_eq!(show(ext_godel(&f("[]G P(x)"))), "[]D []D P(x)");
    assert_eq!(show(ext_godel(&f("P(x)"))), "[]D P(x)");

    assert_eq!(show(ext_potentialist(&f("[]D exists x P(x)"))), "[]D <>G exists x P(x)");
    assert_eq!(show(ext_potentialist(&f("P(a)"))), "P(a)");
    assert_eq!(show(ext_potentialist(&f("forall x P(x)"))), "[]G forall x P(x)");

    let xx = v("xx");
    let r = reverse(&f("<>G existsp zz P(z)"), &xx).unwrap();
    let expected = f("existsp yy (forall z (z pc xx -> z pc yy) & existsp zz (forall z' (z' pc zz -> z' pc yy) & P(z)))");
    assert!(alpha_eq(&r, &expected), "{r}");
    let r = reverse(&f("[]D P(a)"), &xx).unwrap();
    assert!(alpha_eq(&r, &f("[]D forallp yy (forall z (z pc xx -> z pc yy) -> P(a))")), "{r}");
    assert_eq!(normalize(&r), f("[]D P(a)"));
    assert_eq!(reverse(&f("P(a)"), &xx).unwrap(), f("P(a)"));
}

/// Mixed-convergence failures by direct search over world triples.
fn mixed_failures(fr: &BimodalFrame) -> Vec<(usize, usize, usize)> {
    let n = fr.world_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if fr.leq(Mode::G, a, b)
                    && fr.leq(Mode::D, a, c)
                    && !(0..n).any(|d| fr.leq(Mode::D, b, d) && fr.leq(Mode::G, c, d))
                {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

#[test]
fn frames() {
    let single = BimodalFrame::with_sizes(1, 1).unwrap();
    let mut single = single;
    single.set_dom(0, 1);
    assert!(validate_frame(&single).is_valid());

    let mut chain = BimodalFrame::with_sizes(2, 1).unwrap();
    chain.set_dom(0, 1);
    chain.set_dom(1, 1);
    chain.add_leq(Mode::D, 0, 1);
    assert!(validate_frame(&chain).is_valid());

    let mut bad = BimodalFrame::with_sizes(3, 1).unwrap();
    for w in 0..3 {
        bad.set_dom(w, 1);
    }
    bad.add_leq(Mode::G, 0, 1);
    bad.add_leq(Mode::D, 0, 1);
    bad.add_leq(Mode::D, 0, 2);
    assert_eq!(mixed_failures(&bad), vec![(0, 1, 2)]);
    let r = validate_frame(&bad);
    let reported: Vec<(String, String, String)> = r
        .violations
        .iter()
        .filter_map(|v| match v {
            Violation::NotMixedConvergent { a, b, c } => Some((a.clone(), b.clone(), c.clone())),
            _ => None,
        })
        .collect();
    assert_eq!(reported, vec![("w0".into(), "w1".into(), "w2".into())]);
}

#[test]
fn evaluation() {
    let id = parse_model("worlds: w0\ndom w0: a\ninterp w0 P: (a)\n").unwrap().model;
    let sig = id.signature();
    let p = |s: &str| bimodal::formula::parse(s, &sig).unwrap();
    assert!(eval_classical(&id, 0, &Assignment::new(), &p("[]D P(a)")).unwrap());

    let chain = parse_model("worlds: w0 w1\nleqD: w0<=w1\ndom w0: a\ndom w1: a\ninterp w1 P: (a)\n").unwrap().model;
    let sig = chain.signature();
    let p = |s: &str| bimodal::formula::parse(s, &sig).unwrap();
    let none = Assignment::new();
    assert!(eval_classical(&chain, 0, &none, &p("<>D P(a)")).unwrap());
    assert!(!eval_classical(&chain, 0, &none, &p("[]D P(a)")).unwrap());
    assert!(!eval_forcing(&chain, 0, &none, &p("P(a) | ~P(a)")).unwrap());
    assert!(eval_classical(&chain, 0, &none, &p("P(a) | ~P(a)")).unwrap());
    let x = Assignment::new().with(v("x"), Value::Ind(0));
    assert!(eval_forcing(&chain, 1, &x, &p("P(x)")).unwrap());
}

#[test]
fn inventories() {
    let has = |n: SystemName, id: &str| axiom_inventory(&SystemSpec::named(n)).iter().any(|e| e.id == id);
    let bm = axiom_inventory(&SystemSpec::named(SystemName::BmFol));
    let subsump = bm.iter().find(|e| e.id == "Subsump").expect("Subsump in BM-FOL");
    assert_eq!(subsump.display, "[]D phi -> []G phi");
    let s42 = axiom_inventory(&SystemSpec::named(SystemName::S42IFol));
    assert!(s42.iter().any(|e| e.display.starts_with("<>G") && e.display.contains("-> []G")), "{s42:?}");
    for id in ["Dec-prec", "Omni-prec", "Omni-incl", "Dec-P-Sep"] {
        assert!(has(SystemName::IBpl, id), "{id}");
    }
}

#[test]
fn schema_instances() {
    let mut a = Instantiation::new();
    a.insert("phi".into(), SchemaArg::Formula(f("P(a)")));
    assert_eq!(instantiate_schema("Mixed.2", &a).unwrap(), f("<>G []D P(a) -> []D <>G P(a)"));
    let mut a = Instantiation::new();
    a.insert("phi".into(), SchemaArg::Formula(f("Q(x)")));
    let omni = instantiate_schema("Omni-prec", &a).unwrap();
    let expected = f("forall x (x pc aa -> Q(x) | ~Q(x)) -> exists x (x pc aa & Q(x)) | ~exists x (x pc aa & Q(x))");
    assert!(alpha_eq(&omni, &expected), "{omni}");
    let union = instantiate_schema("P-Union", &Instantiation::new()).unwrap();
    let expected = f("existsp zz forall x (x pc zz <-> x pc xx | x pc yy)");
    assert!(alpha_eq(&union, &expected), "{union}");
}

#[test]
fn enumeration() {
    let sig = Signature::new().with_pred("P", &[bimodal::formula::Sort::Singular]).unwrap();
    let b = SearchBounds { max_worlds: 1, max_domain: 1, ..Default::default() };
    let space = ModelSpace::new(&sig, &b, Default::default()).unwrap();
    assert_eq!(space.count(1), 2);

    // the two-world D-chain with P growing is among the models with leqG the identity
    let sig = sig.with_constant("a").unwrap();
    let b = SearchBounds { max_worlds: 2, max_domain: 1, frames: FrameRestriction::GIdentity, ..Default::default() };
    let space = ModelSpace::new(&sig, &b, Default::default()).unwrap();
    let em = (parse_infer("P(a) | ~P(a)").unwrap().0, Assignment::new());
    let found = space
        .models()
        .into_iter()
        .any(|(_, m)| (0..m.frame().world_count()).any(|w| !eval_forcing(&m, w, &em.1, &em.0).unwrap()));
    assert!(found);
}

#[test]
fn countermodels() {
    let b = |w: usize| SearchBounds { max_worlds: w, max_domain: 1, ..Default::default() };
    let search = |s: &str, w: usize| {
        let (g, _) = parse_infer(s).unwrap();
        find_countermodel(&g, Semantics::Classical, &b(w), Default::default(), 1).unwrap()
    };
    let c = search("P(a) -> []D <>D P(a)", 2);
    assert!(c.countermodel().unwrap().model.frame().world_count() <= 2);
    let c = search("<>D []D P(a) -> []D <>D P(a)", 3);
    assert_eq!(c.countermodel().unwrap().model.frame().world_count(), 3);
    assert!(search("<>G []D P(a) -> []D <>G P(a)", 3).countermodel().is_none());
    let rs = search("[]G P(a) -> []D P(a)", 3);
    let m = &rs.countermodel().unwrap().model;
    assert_eq!(m.frame().world_count(), 2);
    assert!((0..2).all(|w| m.frame().succ(Mode::G, w) == 1 << w), "leqG is the identity");
}

#[test]
fn small_suites() {
    let b = SearchBounds { max_worlds: 2, max_domain: 2, max_pool_depth: 2, plural_depth: 1, ..Default::default() };
    let o = SuiteOptions::default();
    let link = run_property_suite("link", &b, &o).unwrap();
    assert!(link.passed && link.failures == 0, "{}", link.render_text());
    let b3 = SearchBounds { max_worlds: 3, max_domain: 1, ..b };
    for s in ["spectra", "rs-failure", "ed-id"] {
        let r = run_property_suite(s, &b3, &o).unwrap();
        assert!(r.passed, "{}", r.render_text());
    }
    let id = SearchBounds { frames: FrameRestriction::Identity, ..b };
    assert!(run_property_suite("link", &id, &o).unwrap().passed);
}
