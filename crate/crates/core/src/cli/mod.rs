//! Command-line front end: documents, reports and command dispatch.
//!
//! [`run`] never panics on bad input; it always returns a report whose
//! exit code is 0 (success or a true verdict), 1 (a false verdict) or 2
//! (an input error).

pub mod document;
pub mod report;
pub mod syntax;

use crate::artin_dg::{check_morphism, factor_into_small_extensions, NilpotentDgAlgebra, SmallExtension};
use crate::dgla_mc::{
    def_tangent, gauge_equivalent, lift_through_surjection, mc_check, Dgla, GaugeMode, GaugeVerdict, StagedLift,
    TensorDgla,
};
use crate::graded_linear::{cohomology, Matrix, Scalar};
use crate::linfty::dgla_to_linfty;
use crate::moduli_models::{is_smooth_minimal, kuranishi_prorepresent, minimalize, Smoothness};
use crate::obstruction::{obstruction_class, tangent_bracket};
use document::{format_linear, format_polynomial, invariant_violations, parse_document, print_document, read_document, Document};
use num_traits::{One, Zero};
pub use report::{ErrorInfo, NamedDocument, Report, Table};

pub const COMMANDS: [&str; 13] = [
    "validate",
    "cohomology",
    "tangent",
    "mc-check",
    "mc-lift",
    "gauge",
    "obstruction",
    "primary-bracket",
    "linfty-check",
    "dgla-to-linfty",
    "minimalize",
    "prorepresent",
    "factor-extensions",
];

/// Default truncation order for commands that build towers.
pub const DEFAULT_ORDER: usize = 3;

#[derive(Clone, Debug)]
pub struct Input {
    pub name: String,
    pub text: String,
}

type Failure = ErrorInfo;

fn fail(message: impl Into<String>) -> Failure {
    ErrorInfo {
        message: message.into(),
        input: None,
        line: None,
        column: None,
    }
}

fn from_input_error(name: &str, e: syntax::InputError) -> Failure {
    ErrorInfo {
        message: e.message,
        input: Some(name.to_string()),
        line: e.line,
        column: e.column,
    }
}

fn from_error(e: crate::Error) -> Failure {
    fail(e.to_string())
}

pub fn run(command: &str, inputs: &[Input], order: Option<usize>) -> Report {
    let mut report = Report::new(command, inputs.iter().map(|i| i.name.clone()).collect());
    if let Err(e) = dispatch(command, inputs, order, &mut report) {
        report.input_error(e);
    }
    report
}

fn dispatch(command: &str, inputs: &[Input], order: Option<usize>, report: &mut Report) -> Result<(), Failure> {
    if !COMMANDS.contains(&command) {
        return Err(fail(format!("unknown command '{command}' (expected one of {})", COMMANDS.join(", "))));
    }
    if inputs.is_empty() {
        return Err(fail("no input documents given"));
    }
    let uses_order = matches!(command, "dgla-to-linfty" | "prorepresent");
    if order.is_some() && !uses_order {
        return Err(fail(format!("'{command}' does not take --order")));
    }
    let order = order.unwrap_or(DEFAULT_ORDER);
    if order == 0 {
        return Err(fail("--order must be at least 1"));
    }
    if command == "validate" {
        return validate(inputs, report);
    }
    // For linfty-check the generalized Jacobi identity is the verdict, not
    // a precondition.
    let load = if command == "linfty-check" { read_document } else { parse_document };
    let docs = inputs
        .iter()
        .map(|i| load(&i.text).map_err(|e| from_input_error(&i.name, e)))
        .collect::<Result<Vec<_>, _>>()?;
    match command {
        "cohomology" => cohomology_cmd(&docs, report),
        "tangent" => tangent(&docs, report),
        "mc-check" => mc_check_cmd(&docs, report),
        "mc-lift" => mc_lift(&docs, report),
        "gauge" => gauge(&docs, report),
        "obstruction" => obstruction(&docs, report),
        "primary-bracket" => primary_bracket(&docs, report),
        "linfty-check" => linfty_check(&docs, report),
        "dgla-to-linfty" => to_linfty(&docs, order, report),
        "minimalize" => minimalize_cmd(&docs, report),
        "prorepresent" => prorepresent(&docs, order, report),
        "factor-extensions" => factor(&docs, report),
        _ => unreachable!(),
    }
}

fn kinds(docs: &[Document]) -> String {
    docs.iter().map(|d| d.kind()).collect::<Vec<_>>().join(", ")
}

fn mismatch(command: &str, expected: &str, docs: &[Document]) -> Failure {
    fail(format!("'{command}' expects {expected}, got: {}", kinds(docs)))
}

fn vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn one_dgla<'a>(command: &str, docs: &'a [Document]) -> Result<&'a Dgla, Failure> {
    match docs {
        [Document::Dgla(l)] => Ok(l),
        _ => Err(mismatch(command, "one dgla", docs)),
    }
}

fn validate(inputs: &[Input], report: &mut Report) -> Result<(), Failure> {
    let mut kinds = Table::new("documents", &["input", "kind"]);
    let mut violations = Table::new("violations", &["input", "violation"]);
    for i in inputs {
        let doc = read_document(&i.text).map_err(|e| from_input_error(&i.name, e))?;
        kinds.row(vec![i.name.clone(), doc.kind().into()]);
        for v in invariant_violations(&doc) {
            violations.row(vec![i.name.clone(), v]);
        }
    }
    let ok = violations.rows.is_empty();
    report.tables.push(kinds);
    report.tables.push(violations);
    report.verdict(if ok { "valid" } else { "invalid" }, ok);
    Ok(())
}

fn cohomology_cmd(docs: &[Document], report: &mut Report) -> Result<(), Failure> {
    let complex = match docs {
        [Document::Complex(c)] => c.clone(),
        [Document::Dgla(l)] => l.complex(),
        [d @ (Document::Algebra(_) | Document::FreeAlgebra(_))] => d.as_algebra().expect("algebra").complex(),
        _ => return Err(mismatch("cohomology", "one complex, dgla or nilpotent_dg_algebra", docs)),
    };
    let h = cohomology(&complex).map_err(from_error)?;
    let mut dims = Table::new("cohomology", &["degree", "dim_Z", "dim_B", "dim_H"]);
    for k in complex.space.occurring_degrees() {
        let get = |m: &std::collections::BTreeMap<i64, usize>| m.get(&k).copied().unwrap_or(0).to_string();
        dims.row(vec![k.to_string(), get(&h.cocycle_dims), get(&h.boundary_dims), get(&h.dims)]);
    }
    report.tables.push(dims);
    report.tables.push(representatives(&complex.space, &h.contraction));
    Ok(())
}

fn representatives(space: &crate::graded_linear::GradedSpace, c: &crate::graded_linear::Contraction) -> Table {
    let mut t = Table::new("representatives", &["class", "degree", "representative"]);
    for k in 0..c.harmonic.dim() {
        t.row(vec![
            c.harmonic.name(k).to_string(),
            c.harmonic.degree(k).to_string(),
            format_linear(space, &c.inclusion.col(k)),
        ]);
    }
    t
}

fn tangent(docs: &[Document], report: &mut Report) -> Result<(), Failure> {
    let l = one_dgla("tangent", docs)?;
    let mut degrees: Vec<i64> = l.space.occurring_degrees();
    degrees.extend([-1, 0, 1, 2]);
    degrees.sort_unstable();
    degrees.dedup();
    let mut t = Table::new("tangent", &["degree", "dim"]);
    for &i in &degrees {
        t.row(vec![i.to_string(), def_tangent(l, i).map_err(from_error)?.dim.to_string()]);
    }
    report.tables.push(t);
    let h = cohomology(&l.complex()).map_err(from_error)?;
    report.tables.push(representatives(&l.space, &h.contraction));
    Ok(())
}

fn mc_element(doc: &Document) -> Option<(&Dgla, &NilpotentDgAlgebra, &Vec<Scalar>)> {
    match doc {
        Document::McElement { lie, algebra, element } => Some((lie, algebra, element)),
        _ => None,
    }
}

/// `L ⊗ A` element as one row per nonzero `A`-component.
fn components_table(name: &str, lie: &Dgla, algebra: &NilpotentDgAlgebra, v: &[Scalar]) -> Table {
    let t = TensorDgla::new(lie, algebra);
    let mut table = Table::new(name, &["component", "value"]);
    for (a, part) in t.components(v).iter().enumerate() {
        if part.iter().any(|x| !x.is_zero()) {
            table.row(vec![algebra.space.name(a).to_string(), format_linear(&lie.space, part)]);
        }
    }
    table
}

fn mc_check_cmd(docs: &[Document], report: &mut Report) -> Result<(), Failure> {
    let Some((lie, algebra, x)) = docs.first().and_then(mc_element).filter(|_| docs.len() == 1) else {
        return Err(mismatch("mc-check", "one mc_element", docs));
    };
    let t = TensorDgla::new(lie, algebra);
    let check = mc_check(&t.dgla, x).map_err(from_error)?;
    report.tables.push(components_table("defect", lie, algebra, &check.defect));
    report.verdict(if check.is_mc { "mc" } else { "not_mc" }, check.is_mc);
    Ok(())
}

/// `A → B` sending each basis element of `A` to the element of `B` with
/// the same name, or to zero.
fn map_by_names(a: &NilpotentDgAlgebra, b: &NilpotentDgAlgebra) -> Result<Matrix, Failure> {
    let mut f = Matrix::zeros(b.dim(), a.dim());
    for j in 0..b.dim() {
        let name = b.space.name(j);
        let i = a
            .space
            .index_of(name)
            .ok_or_else(|| fail(format!("basis element '{name}' of the base has no namesake in the source algebra")))?;
        f.set(j, i, Scalar::one());
    }
    check_morphism(a, b, &f).map_err(|e| fail(format!("matching basis names does not give a morphism: {e}")))?;
    Ok(f)
}

fn split_element_and_algebra<'a>(
    command: &str,
    docs: &'a [Document],
) -> Result<((&'a Dgla, &'a NilpotentDgAlgebra, &'a Vec<Scalar>), &'a Document), Failure> {
    match docs {
        [x, other] | [other, x] if mc_element(x).is_some() && mc_element(other).is_none() => {
            Ok((mc_element(x).expect("checked"), other))
        }
        _ => Err(mismatch(command, "one mc_element and one nilpotent_dg_algebra or small_extension", docs)),
    }
}

fn mc_lift(docs: &[Document], report: &mut Report) -> Result<(), Failure> {
    let ((lie, b, x), other) = split_element_and_algebra("mc-lift", docs)?;
    let a = match other {
        Document::SmallExtension { algebra, .. } => algebra.clone(),
        d => d.as_algebra().ok_or_else(|| mismatch("mc-lift", "a nilpotent_dg_algebra or small_extension", docs))?,
    };
    let f = map_by_names(&a, b)?;
    if f.rank() != b.dim() {
        return Err(fail("the map to the base is not surjective"));
    }
    match lift_through_surjection(lie, &a, b, &f, x).map_err(from_error)? {
        StagedLift::Lifted { lift, complete } => {
            let mut t = Table::new("lift", &["exhaustive"]);
            t.row(vec![complete.to_string()]);
            report.tables.push(t);
            report.tables.push(components_table("lifted_element", lie, &a, &lift));
            report.documents.push(NamedDocument {
                name: "lift".into(),
                text: print_document(&Document::McElement {
                    lie: lie.clone(),
                    algebra: a.clone(),
                    element: lift,
                }),
            });
            report.verdict("lifted", true);
        }
        StagedLift::Obstructed {
            stage,
            class,
            representative,
        } => {
            let mut t = Table::new("obstruction", &["stage", "class", "representative"]);
            t.row(vec![stage.to_string(), vector(&class), vector(&representative)]);
            report.tables.push(t);
            report.verdict("obstructed", false);
        }
        StagedLift::Unknown { stage } => {
            let mut t = Table::new("undecided", &["stage"]);
            t.row(vec![stage.to_string()]);
            report.tables.push(t);
            report.verdict("unknown", false);
        }
    }
    Ok(())
}

fn obstruction(docs: &[Document], report: &mut Report) -> Result<(), Failure> {
    let ((lie, b, x), other) = split_element_and_algebra("obstruction", docs)?;
    let Document::SmallExtension { algebra: a, kernel } = other else {
        return Err(mismatch("obstruction", "one mc_element and one small_extension", docs));
    };
    let ext = SmallExtension::from_ideal(a, kernel).map_err(from_error)?;
    let f = map_by_names(a, b)?;
    if kernel.iter().any(|v| f.apply(v).iter().any(|c| !c.is_zero())) || f.rank() + kernel.len() != a.dim() {
        return Err(fail("the base algebra is not the quotient by the listed kernel (matched by names)"));
    }
    // The quotient of `ext` is identified with `B` through the section.
    let to_b = f.mul(&ext.section);
    let from_b = to_b.inverse().ok_or_else(|| fail("the base algebra is not the quotient by the listed kernel"))?;
    let xq = TensorDgla::new(lie, b).algebra_map(&from_b).apply(x);
    let ob = obstruction_class(lie, &ext, &xq).map_err(from_error)?;
    let mut t = Table::new("obstruction", &["class", "representative", "certificate"]);
    t.row(vec![
        vector(&ob.class),
        vector(&ob.representative),
        ob.certificate.as_deref().map(vector).unwrap_or_else(|| "none".into()),
    ]);
    report.tables.push(t);
    let zero = ob.is_zero();
    report.verdict(if zero { "unobstructed" } else { "obstructed" }, zero);
    Ok(())
}

fn gauge(docs: &[Document], report: &mut Report) -> Result<(), Failure> {
    let (Some((l1, a1, x)), Some((l2, a2, y))) = (
        docs.first().and_then(mc_element),
        docs.get(1).and_then(mc_element),
    ) else {
        return Err(mismatch("gauge", "two mc_element documents", docs));
    };
    if docs.len() != 2 || l1 != l2 || a1 != a2 {
        return Err(fail("'gauge' expects two mc_element documents over the same dgla and algebra"));
    }
    let t = TensorDgla::new(l1, a1);
    for (v, which) in [(x, "first"), (y, "second")] {
        if !mc_check(&t.dgla, v).map_err(from_error)?.is_mc {
            return Err(fail(format!("the {which} element is not Maurer-Cartan")));
        }
    }
    match gauge_equivalent(&t, x, y, &GaugeMode::Decide).map_err(from_error)? {
        GaugeVerdict::Yes(a) => {
            let a = if a.is_empty() { vec![Scalar::zero(); t.dim()] } else { a };
            report.tables.push(components_table("gauge_witness", l1, a1, &a));
            report.verdict("equivalent", true);
        }
        GaugeVerdict::No => report.verdict("not_equivalent", false),
        GaugeVerdict::Unknown => report.verdict("unknown", false),
    }
    Ok(())
}

fn primary_bracket(docs: &[Document], report: &mut Report) -> Result<(), Failure> {
    let l = one_dgla("primary-bracket", docs)?;
    let tb = tangent_bracket(l).map_err(from_error)?;
    let c = &tb.cohomology.contraction;
    report.tables.push(representatives(&l.space, c));
    let mut t = Table::new("bracket", &["x", "y", "[x, y]"]);
    for p in 0..tb.space.dim() {
        for q in p..tb.space.dim() {
            let v = tb.bracket.get_dense(p, q);
            if v.iter().any(|x| !x.is_zero()) {
                t.row(vec![tb.space.name(p).into(), tb.space.name(q).into(), format_linear(&tb.space, &v)]);
            }
        }
    }
    report.tables.push(t);
    report.documents.push(NamedDocument {
        name: "cohomology_dgla".into(),
        text: print_document(&Document::Dgla(tb.as_dgla())),
    });
    let ok = tb.is_graded_lie() && tb.matches_cohomology_bracket();
    report.verdict(if ok { "graded_lie" } else { "not_graded_lie" }, ok);
    Ok(())
}

fn linfty_check(docs: &[Document], report: &mut Report) -> Result<(), Failure> {
    let [Document::LInfty(s)] = docs else {
        return Err(mismatch("linfty-check", "one linfty", docs));
    };
    let check = s.check();
    let mut t = Table::new("jacobi_defects", &["arity", "monomial", "value"]);
    for d in &check.defects {
        t.row(vec![d.arity.to_string(), d.monomial.clone(), vector(&d.value)]);
    }
    report.tables.push(t);
    let ok = check.is_valid();
    report.verdict(if ok { "valid" } else { "invalid" }, ok);
    Ok(())
}

fn to_linfty(docs: &[Document], order: usize, report: &mut Report) -> Result<(), Failure> {
    let l = one_dgla("dgla-to-linfty", docs)?;
    let s = dgla_to_linfty(l, order);
    let ok = s.check().is_valid();
    report.documents.push(NamedDocument {
        name: "linfty".into(),
        text: print_document(&Document::LInfty(s)),
    });
    report.verdict(if ok { "valid" } else { "invalid" }, ok);
    Ok(())
}

fn differential_table(r: &crate::moduli_models::QuasismoothTrunc) -> Table {
    let mut t = Table::new("differential", &["generator", "degree", "d"]);
    for g in 0..r.num_generators() {
        t.row(vec![
            r.generators.name(g).to_string(),
            r.generators.degree(g).to_string(),
            format_polynomial(&r.generators, &r.d[g]),
        ]);
    }
    t
}

fn smoothness_table(s: &crate::moduli_models::QuasismoothTrunc) -> Result<Table, Failure> {
    let mut t = Table::new("smoothness", &["smooth", "witness"]);
    match is_smooth_minimal(s).map_err(from_error)? {
        Smoothness::Smooth => t.row(vec!["true".into(), "none".into()]),
        Smoothness::NotSmooth(w) => t.row(vec![
            "false".into(),
            format!(
                "d {} has length-{} part {}",
                s.generators.name(w.generator),
                w.length,
                format_polynomial(&s.generators, &w.obstruction)
            ),
        ]),
    }
    Ok(t)
}

fn minimalize_cmd(docs: &[Document], report: &mut Report) -> Result<(), Failure> {
    let r = match docs {
        [Document::FreeAlgebra(r)] => r,
        _ => {
            return Err(mismatch(
                "minimalize",
                "one nilpotent_dg_algebra in generator form (order, generators, differential)",
                docs,
            ))
        }
    };
    let m = minimalize(r).map_err(from_error)?;
    let ok = m.verify(r);
    let mut dims = Table::new("dimensions", &["algebra", "generators", "dim"]);
    dims.row(vec!["input".into(), r.num_generators().to_string(), r.dim().to_string()]);
    dims.row(vec!["minimal".into(), m.minimal.num_generators().to_string(), m.minimal.dim().to_string()]);
    report.tables.push(dims);
    report.tables.push(differential_table(&m.minimal));
    let mut section = Table::new("section", &["generator", "image"]);
    for g in 0..m.minimal.num_generators() {
        let image = m.section.col(m.minimal.generator_index(g));
        section.row(vec![
            m.minimal.generators.name(g).to_string(),
            format_polynomial(&r.generators, &r.polynomial(&image)),
        ]);
    }
    report.tables.push(section);
    report.tables.push(smoothness_table(&m.minimal)?);
    report.documents.push(NamedDocument {
        name: "minimal".into(),
        text: print_document(&Document::FreeAlgebra(m.minimal.clone())),
    });
    report.verdict(if ok { "verified" } else { "verification_failed" }, ok);
    Ok(())
}

fn prorepresent(docs: &[Document], order: usize, report: &mut Report) -> Result<(), Failure> {
    let l = one_dgla("prorepresent", docs)?;
    let h = cohomology(&l.complex()).map_err(from_error)?;
    let p = kuranishi_prorepresent(l, &h.contraction, order).map_err(from_error)?;
    report.tables.push(representatives(&l.space, &h.contraction));
    report.tables.push(differential_table(&p.base));
    report.tables.push(smoothness_table(&p.base)?);
    let base = p.base.algebra();
    let mut versal = Table::new("versal_element", &["monomial", "value"]);
    let t = p.versal.tensor();
    for (a, part) in t.components(&p.versal.xi).iter().enumerate() {
        if part.iter().any(|x| !x.is_zero()) {
            versal.row(vec![base.space.name(a).to_string(), format_linear(&l.space, part)]);
        }
    }
    report.tables.push(versal);
    report.documents.push(NamedDocument {
        name: "base".into(),
        text: print_document(&Document::FreeAlgebra(p.base.clone())),
    });
    Ok(())
}

fn factor(docs: &[Document], report: &mut Report) -> Result<(), Failure> {
    let algebras: Vec<NilpotentDgAlgebra> = docs.iter().filter_map(|d| d.as_algebra()).collect();
    let (a, b, f) = match (algebras.as_slice(), docs.len()) {
        ([a], 1) => (a.clone(), NilpotentDgAlgebra::zero(), Matrix::zeros(0, a.dim())),
        ([a, b], 2) => (a.clone(), b.clone(), map_by_names(a, b)?),
        _ => return Err(mismatch("factor-extensions", "one or two nilpotent_dg_algebra documents", docs)),
    };
    let fac = factor_into_small_extensions(&a, &b, &f).map_err(from_error)?;
    let mut t = Table::new("steps", &["step", "dim_source", "dim_kernel", "kernel_degrees", "acyclic"]);
    for (k, s) in fac.steps.iter().enumerate() {
        let degrees: Vec<String> = s
            .kernel
            .iter()
            .map(|v| crate::artin_dg::vector_degree(&s.algebra.space, v).map(|d| d.to_string()).unwrap_or("?".into()))
            .collect();
        t.row(vec![
            k.to_string(),
            s.algebra.dim().to_string(),
            s.kernel.len().to_string(),
            degrees.join(" "),
            s.is_acyclic().to_string(),
        ]);
    }
    report.tables.push(t);
    Ok(())
}

#[cfg(test)]
mod tests;
