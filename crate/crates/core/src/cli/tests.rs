use super::document::{parse_document, print_document, read_document, Document};
use super::*;
use crate::dgla_mc::{gauge_act, sl2};
use crate::fixtures::{random_algebra, random_complex, random_dgla, random_in_degree, random_mc, rng};
use crate::graded_linear::frac;
use proptest::prelude::*;

const SL2: &str = include_str!("../../fixtures/sl2.dgla");
const COUNTER_A: &str = include_str!("../../fixtures/counterexample_algebra.alg");
const COUNTER_X: &str = include_str!("../../fixtures/counterexample_element.mc");
const COUNTER_TOP: &str = include_str!("../../fixtures/counterexample_top.ext");
const COUNTER_MID: &str = include_str!("../../fixtures/counterexample_mid.mc");
const PAIR: &str = include_str!("../../fixtures/acyclic_pair.alg");
const LINE: &str = include_str!("../../fixtures/line3.alg");

fn input(name: &str, text: &str) -> Input {
    Input {
        name: name.into(),
        text: text.into(),
    }
}

fn run1(command: &str, text: &str) -> Report {
    run(command, &[input("in", text)], None)
}

fn round_trip(doc: &Document) -> Result<(), TestCaseError> {
    let text = print_document(doc);
    let back = parse_document(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    prop_assert_eq!(&back, doc, "{}", text);
    Ok(())
}

#[test]
fn sl2_fixture_is_the_library_sl2() {
    assert_eq!(parse_document(SL2).unwrap(), Document::Dgla(sl2()));
}

#[test]
fn counterexample_fixtures_match_the_library() {
    let a = crate::fixtures::lifting_counterexample_algebra();
    assert_eq!(parse_document(COUNTER_A).unwrap(), Document::Algebra(a.clone()));
    let Document::McElement { lie, algebra, element } = parse_document(COUNTER_X).unwrap() else {
        panic!("kind")
    };
    let (b, _) = crate::fixtures::lifting_counterexample_quotient();
    assert_eq!(lie, sl2());
    assert_eq!(algebra, b);
    let t = TensorDgla::new(&lie, &b);
    let expected = t.from_components(&[vec![frac(0, 1), frac(0, 1), frac(-1, 2)], vec![frac(1, 1), frac(0, 1), frac(0, 1)]]);
    assert_eq!(element, expected.unwrap());
}

#[test]
fn empty_algebra_document_is_the_zero_algebra() {
    let doc = parse_document("kind = nilpotent_dg_algebra\n").unwrap();
    assert_eq!(doc, Document::Algebra(NilpotentDgAlgebra::zero()));
    let r = run1("validate", "kind = nilpotent_dg_algebra\n");
    assert_eq!((r.exit_code, r.verdict.as_deref()), (0, Some("valid")));
}

#[test]
fn syntax_errors_are_located() {
    let cases: &[(&str, usize, usize)] = &[
        ("kind = graded_space\nbasis {\n  x : 1/2\n}\n", 3, 7),
        ("kind = graded_space\nbasis {\n  x : y\n}\n", 3, 7),
        ("kind = dgla\nbasis {\n  x : 0\n}\nbracket {\n  [x, q] = x\n}\n", 6, 7),
        ("kind = complex\nbasis {\n  x : 0\n  y : 1\n}\ndifferential {\n  d x = 2 y +\n}\n", 7, 14),
        ("kind = complex\nbasis {\n  x : 0\n", 2, 1),
        ("kind = complex\n}\n", 2, 1),
        ("kind = frobnicator\n", 1, 1),
        ("kind = graded_space\nbasis {\n  x : 1\n  x : 2\n}\n", 4, 3),
        ("kind = graded_space\nbasis {\n  x : 3x\n}\n", 3, 7),
        ("kind = graded_space\nstuff = 1\n", 2, 1),
    ];
    for (text, line, column) in cases {
        let e = read_document(text).unwrap_err();
        assert_eq!((e.line, e.column), (Some(*line), Some(*column)), "{text}: {e}");
        let r = run1("validate", text);
        assert_eq!(r.exit_code, 2);
        assert_eq!(r.error.as_ref().unwrap().line, Some(*line));
    }
}

#[test]
fn conflicting_symmetric_entries_are_rejected() {
    let text = "kind = dgla\nbasis {\n  x : 0\n  y : 0\n}\nbracket {\n  [x, y] = x\n  [y, x] = x\n}\n";
    let e = read_document(text).unwrap_err();
    assert_eq!(e.line, Some(8));
    assert!(e.message.contains("graded symmetry"));
    let ok = "kind = dgla\nbasis {\n  x : 0\n  y : 0\n}\nbracket {\n  [x, y] = x\n  [y, x] = -x\n}\n";
    assert!(read_document(ok).is_ok());
}

#[test]
fn invariant_failures_give_an_invalid_verdict() {
    // Jacobi fails: [x, y] = z, [y, z] = y.
    let jacobi = "kind = dgla\nbasis {\n  x : 0\n  y : 0\n  z : 0\n}\nbracket {\n  [x, y] = z\n  [y, z] = y\n}\n";
    let r = run1("validate", jacobi);
    assert_eq!((r.exit_code, r.verdict.as_deref()), (1, Some("invalid")));
    assert!(!r.table("violations").unwrap().rows.is_empty());
    // Other commands refuse invalid input.
    assert_eq!(run1("tangent", jacobi).exit_code, 2);
    // d∘d ≠ 0.
    let dd = "kind = complex\nbasis {\n  x : 0\n  y : 1\n  z : 2\n}\ndifferential {\n  d x = y\n  d y = z\n}\n";
    assert_eq!(run1("validate", dd).exit_code, 1);
    // Non-small kernel.
    let big = COUNTER_TOP.replace("  dw\n}", "  w\n  dw\n}");
    assert_eq!(run1("validate", &big).exit_code, 1);
}

#[test]
fn tangent_of_sl2_is_three_dimensional_in_degree_zero() {
    let r = run1("tangent", SL2);
    assert_eq!(r.exit_code, 0);
    let t = r.table("tangent").unwrap();
    for (i, row) in t.rows.iter().enumerate() {
        let expected = if row[0] == "0" { "3" } else { "0" };
        assert_eq!(t.cell(i, "dim"), Some(expected));
    }
}

#[test]
fn counterexample_lift_is_obstructed() {
    let r = run("mc-lift", &[input("x", COUNTER_X), input("a", COUNTER_A)], None);
    assert_eq!((r.exit_code, r.verdict.as_deref()), (1, Some("obstructed")));
    let class = r.table("obstruction").unwrap().cell(0, "class").unwrap();
    assert!(class.trim_matches(['(', ')']).split(", ").any(|c| c != "0"), "{class}");
    // The element does lift to the square-zero algebra on u, v, w, dw.
    let flat = COUNTER_A.replace("  u * v = dw\n  u * w = dw\n", "");
    let r = run("mc-lift", &[input("x", COUNTER_X), input("a", &flat)], None);
    assert_eq!((r.exit_code, r.verdict.as_deref()), (0, Some("lifted")));
    let lift = r.document("lift").unwrap();
    assert_eq!(run1("mc-check", lift).verdict.as_deref(), Some("mc"));
}

#[test]
fn obstruction_through_the_top_step() {
    let r = run("obstruction", &[input("ext", COUNTER_TOP), input("x", COUNTER_MID)], None);
    assert_eq!((r.exit_code, r.verdict.as_deref()), (1, Some("obstructed")), "{}", r.render_text());
    assert_eq!(r.table("obstruction").unwrap().cell(0, "certificate"), Some("none"));
    // Wrong base.
    let r = run("obstruction", &[input("ext", COUNTER_TOP), input("x", COUNTER_X)], None);
    assert_eq!(r.exit_code, 2);
}

#[test]
fn prorepresent_sl2_gives_the_quadratic_differential() {
    let r = run1("prorepresent", SL2);
    assert_eq!(r.exit_code, 0);
    let d = r.table("differential").unwrap();
    let get = |g: &str| d.rows.iter().find(|row| row[0] == g).unwrap()[2].clone();
    assert_eq!(get("t_e"), "2 t_e*t_h");
    assert_eq!(get("t_f"), "-2 t_f*t_h");
    assert_eq!(get("t_h"), "-t_e*t_f");
    // Cross-check with the bracket reported by primary-bracket.
    let b = run1("primary-bracket", SL2);
    assert_eq!((b.exit_code, b.verdict.as_deref()), (0, Some("graded_lie")));
    let base = r.document("base").unwrap();
    let Document::FreeAlgebra(s) = parse_document(base).unwrap() else { panic!("kind") };
    let l = sl2();
    let c = cohomology(&l.complex()).unwrap().contraction;
    assert_eq!(s.component(2), crate::moduli_models::quadratic_from_bracket(&l, &c, &s));
}

#[test]
fn minimalize_removes_the_acyclic_pair() {
    let r = run1("minimalize", PAIR);
    assert_eq!((r.exit_code, r.verdict.as_deref()), (0, Some("verified")));
    let Document::FreeAlgebra(s) = parse_document(r.document("minimal").unwrap()).unwrap() else {
        panic!("kind")
    };
    assert_eq!(s.generators.names(), ["z", "s"]);
    assert_eq!(run1("minimalize", LINE).exit_code, 2);
}

#[test]
fn gauge_decides_orbits() {
    let l = sl2();
    let (b, _) = crate::fixtures::lifting_counterexample_quotient();
    let t = TensorDgla::new(&l, &b);
    let Document::McElement { element: x, .. } = parse_document(COUNTER_X).unwrap() else { panic!() };
    let mut r = rng(7);
    let a = random_in_degree(&mut r, &t.dgla.space, 0);
    let y = gauge_act(&t.dgla, &a, &x).unwrap();
    let doc = |v: Vec<Scalar>| {
        print_document(&Document::McElement {
            lie: l.clone(),
            algebra: b.clone(),
            element: v,
        })
    };
    let rep = run("gauge", &[input("x", COUNTER_X), input("y", &doc(y))], None);
    assert_eq!((rep.exit_code, rep.verdict.as_deref()), (0, Some("equivalent")));
    let other = doc(x.iter().map(|c| c * frac(2, 1)).collect());
    let rep = run("gauge", &[input("x", COUNTER_X), input("y", &other)], None);
    assert_eq!((rep.exit_code, rep.verdict.as_deref()), (1, Some("not_equivalent")));
}

#[test]
fn factor_extensions_of_the_line() {
    let r = run1("factor-extensions", LINE);
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.table("steps").unwrap().rows.len(), 3);
    let r = run1("factor-extensions", COUNTER_A);
    let steps = r.table("steps").unwrap();
    assert_eq!(steps.rows.len(), 2);
}

#[test]
fn linfty_commands_agree_with_the_dgla() {
    let r = run("dgla-to-linfty", &[input("l", SL2)], Some(3));
    assert_eq!((r.exit_code, r.verdict.as_deref()), (0, Some("valid")));
    let text = r.document("linfty").unwrap();
    assert_eq!(run1("linfty-check", text).exit_code, 0);
    // Perturb one arity-2 coefficient: [e, f] = h + c e breaks Jacobi.
    let broken: String = text
        .lines()
        .map(|l| if l.trim_start().starts_with("q(e, f)") { format!("{l} + e\n") } else { format!("{l}\n") })
        .collect();
    assert_ne!(broken, text);
    let check = run1("linfty-check", &broken);
    assert_eq!((check.exit_code, check.verdict.as_deref()), (1, Some("invalid")), "{broken}");
}

#[test]
fn schema_mismatches_and_bad_commands_exit_with_two() {
    assert_eq!(run1("frobnicate", SL2).exit_code, 2);
    assert_eq!(run1("mc-check", SL2).exit_code, 2);
    assert_eq!(run1("minimalize", SL2).exit_code, 2);
    assert_eq!(run("tangent", &[input("l", SL2)], Some(2)).exit_code, 2);
    assert_eq!(run("prorepresent", &[input("l", SL2)], Some(0)).exit_code, 2);
    assert_eq!(run("tangent", &[], None).exit_code, 2);
}

#[test]
fn reports_round_trip_through_json() {
    for r in [
        run1("prorepresent", SL2),
        run("mc-lift", &[input("x", COUNTER_X), input("a", COUNTER_A)], None),
        run1("validate", "kind = dgla\nbasis {\n"),
    ] {
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!([0, 1, 2].contains(&r.exit_code));
        for d in &r.documents {
            parse_document(&d.text).unwrap();
        }
    }
}

fn random_free(seed: u64) -> Option<crate::moduli_models::QuasismoothTrunc> {
    let mut r = rng(seed);
    let l = random_dgla(&mut r, 4);
    let c = cohomology(&l.complex()).ok()?.contraction;
    (c.harmonic.dim() <= 4).then(|| kuranishi_prorepresent(&l, &c, 3).unwrap().base)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, 6, -2, 2);
        round_trip(&Document::GradedSpace(c.space.clone()))?;
        round_trip(&Document::Complex(c))?;
        let a = random_algebra(&mut r, 5);
        round_trip(&Document::Algebra(a.clone()))?;
        let l = random_dgla(&mut r, 5);
        round_trip(&Document::Dgla(l.clone()))?;
        round_trip(&Document::LInfty(dgla_to_linfty(&l, 3)))?;
        let t = TensorDgla::new(&l, &a);
        let x = random_mc(&mut r, &t);
        round_trip(&Document::McElement { lie: l, algebra: a.clone(), element: x })?;
        let ann = a.annihilator();
        if let Some(v) = ann.first() {
            if let Ok(ext) = SmallExtension::from_ideal(&a, &[v.clone()]) {
                round_trip(&Document::SmallExtension { algebra: a.clone(), kernel: ext.kernel.clone() })?;
            }
        }
        if let Some(f) = random_free(seed) {
            round_trip(&Document::FreeAlgebra(f))?;
        }
    }

    #[test]
    fn every_run_exits_with_zero_one_or_two(seed in any::<u64>(), cut in 0usize..200) {
        let mut r = rng(seed);
        let l = random_dgla(&mut r, 4);
        let text = print_document(&Document::Dgla(l));
        let truncated: String = text.chars().take(cut).collect();
        for command in COMMANDS {
            let rep = run(command, &[input("l", &truncated)], None);
            prop_assert!([0, 1, 2].contains(&rep.exit_code));
        }
    }
}
