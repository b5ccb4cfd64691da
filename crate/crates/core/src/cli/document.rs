//! Typed input documents: reading, invariant checks and printing.
//!
//! `parse_document(print_document(x)) == x` for every document.

use super::syntax::{parse_blocks, tokenize, Block, Cursor, InputError, Line, Parsed, Tok};
use crate::artin_dg::{NilpotentDgAlgebra, Polynomial, SmallExtension};
use crate::dgla_mc::{Dgla, TensorDgla};
use crate::graded_linear::{sign, zero_vec, Bilinear, Complex, GradedSpace, Matrix, Scalar};
use crate::linfty::LInftyStructure;
use crate::moduli_models::QuasismoothTrunc;
use num_traits::{One, Signed, Zero};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    GradedSpace(GradedSpace),
    Complex(Complex),
    /// Explicit basis and structure constants.
    Algebra(NilpotentDgAlgebra),
    /// Truncated free algebra given by generators and `d` on them.
    FreeAlgebra(QuasismoothTrunc),
    Dgla(Dgla),
    LInfty(LInftyStructure),
    /// `A` and a basis of the kernel `I`, as written.
    SmallExtension { algebra: NilpotentDgAlgebra, kernel: Vec<Vec<Scalar>> },
    /// `Σ_a l_a ⊗ a` in `L ⊗ A`, in tensor coordinates.
    McElement { lie: Dgla, algebra: NilpotentDgAlgebra, element: Vec<Scalar> },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::GradedSpace(_) => "graded_space",
            Document::Complex(_) => "complex",
            Document::Algebra(_) | Document::FreeAlgebra(_) => "nilpotent_dg_algebra",
            Document::Dgla(_) => "dgla",
            Document::LInfty(_) => "linfty",
            Document::SmallExtension { .. } => "small_extension",
            Document::McElement { .. } => "mc_element",
        }
    }

    /// The algebra of an algebra document, in explicit form.
    pub fn as_algebra(&self) -> Option<NilpotentDgAlgebra> {
        match self {
            Document::Algebra(a) => Some(a.clone()),
            Document::FreeAlgebra(r) => Some(r.algebra().clone()),
            _ => None,
        }
    }

    pub fn small_extension(&self) -> Option<Parsed<SmallExtension>> {
        match self {
            Document::SmallExtension { algebra, kernel } => Some(
                SmallExtension::from_ideal(algebra, kernel).map_err(|e| InputError::semantic(format!("kernel: {e}"))),
            ),
            _ => None,
        }
    }
}

pub const KINDS: [&str; 7] = [
    "graded_space",
    "complex",
    "nilpotent_dg_algebra",
    "dgla",
    "linfty",
    "small_extension",
    "mc_element",
];

/// Parses and checks every invariant.
pub fn parse_document(text: &str) -> Parsed<Document> {
    let doc = read_document(text)?;
    let violations = invariant_violations(&doc);
    if let Some(v) = violations.first() {
        return Err(InputError::semantic(v.clone()));
    }
    Ok(doc)
}

/// Parses structure (names, degrees, shapes) without the algebraic axioms.
pub fn read_document(text: &str) -> Parsed<Document> {
    let root = parse_blocks(text)?;
    let Some((kind, at)) = root.value("kind") else {
        return Err(InputError::at(1, 1, "missing 'kind = …' line"));
    };
    match kind {
        "graded_space" => {
            root.expect_only(&["kind"], &["basis"])?;
            Ok(Document::GradedSpace(read_basis(&root, "basis")?))
        }
        "complex" => {
            root.expect_only(&["kind"], &["basis", "differential"])?;
            let space = read_basis(&root, "basis")?;
            let d = read_differential(&root, &space)?;
            Ok(Document::Complex(Complex { space, d }))
        }
        "nilpotent_dg_algebra" => read_algebra_like(&root, true),
        "dgla" => Ok(Document::Dgla(read_dgla(&root)?)),
        "linfty" => read_linfty(&root),
        "small_extension" => {
            root.expect_only(&["kind"], &["algebra", "kernel"])?;
            let algebra = read_sub_algebra(&root, "algebra", at)?;
            let kernel_block = root
                .block("kernel")
                .ok_or_else(|| InputError::at(at.line, at.column, "missing block 'kernel'"))?;
            let kernel = kernel_block
                .lines()
                .map(|l| read_linear(l, &mut Cursor::new(&tokenize(l)?, l), &algebra.space))
                .collect::<Parsed<Vec<_>>>()?;
            Ok(Document::SmallExtension { algebra, kernel })
        }
        "mc_element" => {
            root.expect_only(&["kind"], &["lie", "algebra", "element"])?;
            let lie_block = root
                .block("lie")
                .ok_or_else(|| InputError::at(at.line, at.column, "missing block 'lie'"))?;
            let lie = read_dgla(lie_block)?;
            let algebra = read_sub_algebra(&root, "algebra", at)?;
            let t = TensorDgla::new(&lie, &algebra);
            let mut parts = vec![zero_vec(lie.dim()); algebra.dim()];
            let block = root
                .block("element")
                .ok_or_else(|| InputError::at(at.line, at.column, "missing block 'element'"))?;
            let mut seen = vec![false; algebra.dim()];
            for l in block.lines() {
                let toks = tokenize(l)?;
                let mut c = Cursor::new(&toks, l);
                let (name, line, col) = c.name()?;
                let a = lookup(&algebra.space, name, line, col)?;
                if seen[a] {
                    return Err(InputError::at(line, col, format!("component '{name}' given twice")));
                }
                seen[a] = true;
                c.expect_sym('=')?;
                parts[a] = read_linear(l, &mut c, &lie.space)?;
            }
            let element = t.from_components(&parts).map_err(|e| InputError::semantic(e.to_string()))?;
            Ok(Document::McElement { lie, algebra, element })
        }
        other => Err(InputError::at(
            at.line,
            at.column,
            format!("unknown kind '{other}' (expected one of {})", KINDS.join(", ")),
        )),
    }
}

fn read_sub_algebra(root: &Block, name: &str, at: &Line) -> Parsed<NilpotentDgAlgebra> {
    let b = root
        .block(name)
        .ok_or_else(|| InputError::at(at.line, at.column, format!("missing block '{name}'")))?;
    match read_algebra_like(b, false)? {
        Document::Algebra(a) => Ok(a),
        Document::FreeAlgebra(r) => Ok(r.algebra().clone()),
        _ => unreachable!(),
    }
}

fn lookup(space: &GradedSpace, name: &str, line: usize, col: usize) -> Parsed<usize> {
    space
        .index_of(name)
        .ok_or_else(|| InputError::at(line, col, format!("unknown basis element '{name}'")))
}

fn read_basis(root: &Block, block: &str) -> Parsed<GradedSpace> {
    let Some(b) = root.block(block) else {
        if root.line == 0 && root.entries.is_empty() {
            return Ok(GradedSpace::zero());
        }
        return Ok(GradedSpace::zero());
    };
    let mut basis: Vec<(String, i64)> = Vec::new();
    for l in b.lines() {
        let toks = tokenize(l)?;
        let mut c = Cursor::new(&toks, l);
        let (name, line, col) = c.name()?;
        if basis.iter().any(|(n, _)| n == name) {
            return Err(InputError::at(line, col, format!("basis element '{name}' declared twice")));
        }
        c.expect_sym(':')?;
        let negative = c.eat_sym('-');
        let deg = match c.next() {
            Some(t) => match &t.tok {
                Tok::Number(x) if x.is_integer() => {
                    let v: i64 = x
                        .to_integer()
                        .try_into()
                        .map_err(|_| InputError::at(t.line, t.column, "degree out of range"))?;
                    if negative {
                        -v
                    } else {
                        v
                    }
                }
                _ => return Err(InputError::at(t.line, t.column, "degree must be an integer")),
            },
            None => return Err(c.error("missing degree")),
        };
        c.end()?;
        basis.push((name.to_string(), deg));
    }
    GradedSpace::new(basis).map_err(|e| InputError::semantic(e.to_string()))
}

/// `expr := 0 | [±] term (± term)*`, `term := [number] [*] [name (* name)*]`.
/// Returns words of basis indices with coefficients.
fn read_polynomial(l: &Line, c: &mut Cursor, space: &GradedSpace) -> Parsed<Vec<(Vec<usize>, Scalar, usize, usize)>> {
    let mut out = Vec::new();
    let mut first = true;
    loop {
        if c.done() {
            if first {
                return Err(c.error("expected an expression"));
            }
            break;
        }
        let mut s = Scalar::one();
        if c.eat_sym('-') {
            s = -s;
        } else if !c.eat_sym('+') && !first {
            return Err(c.error("expected '+' or '-'"));
        }
        first = false;
        let start = c.error("");
        let (line, col) = (start.line.unwrap_or(l.line), start.column.unwrap_or(l.column));
        let mut coeff = None;
        if let Some(Tok::Number(x)) = c.peek() {
            coeff = Some(x.clone());
            c.next();
            if c.eat_sym('*') && !matches!(c.peek(), Some(Tok::Name(_))) {
                return Err(c.error("expected a name after '*'"));
            }
        }
        let mut word = Vec::new();
        if let Some(Tok::Name(_)) = c.peek() {
            loop {
                let (name, nl, nc) = c.name()?;
                word.push(lookup(space, name, nl, nc)?);
                if !c.eat_sym('*') {
                    break;
                }
            }
        }
        if coeff.is_none() && word.is_empty() {
            return Err(c.error("expected a number or a name"));
        }
        out.push((word, s * coeff.unwrap_or_else(Scalar::one), line, col));
    }
    Ok(out)
}

fn read_linear(l: &Line, c: &mut Cursor, space: &GradedSpace) -> Parsed<Vec<Scalar>> {
    let mut v = zero_vec(space.dim());
    for (word, x, line, col) in read_polynomial(l, c, space)? {
        match word.len() {
            1 => v[word[0]] += x,
            0 if x.is_zero() => {}
            _ => return Err(InputError::at(line, col, "expected a linear combination of basis elements")),
        }
    }
    Ok(v)
}

fn read_differential(root: &Block, space: &GradedSpace) -> Parsed<Matrix> {
    let n = space.dim();
    let mut d = Matrix::zeros(n, n);
    let Some(b) = root.block("differential") else {
        return Ok(d);
    };
    let mut seen = vec![false; n];
    for l in b.lines() {
        let toks = tokenize(l)?;
        let mut c = Cursor::new(&toks, l);
        let (i, line, col) = read_d_head(&mut c, space)?;
        if seen[i] {
            return Err(InputError::at(line, col, "differential given twice"));
        }
        seen[i] = true;
        let v = read_linear(l, &mut c, space)?;
        for (r, x) in v.iter().enumerate() {
            d.set(r, i, x.clone());
        }
    }
    Ok(d)
}

/// `d NAME =`.
fn read_d_head(c: &mut Cursor, space: &GradedSpace) -> Parsed<(usize, usize, usize)> {
    match c.name()? {
        ("d", _, _) => {}
        (_, line, col) => return Err(InputError::at(line, col, "expected 'd <name> = …'")),
    }
    let (name, line, col) = c.name()?;
    let i = lookup(space, name, line, col)?;
    c.expect_sym('=')?;
    Ok((i, line, col))
}

/// Fills a structure table from one-sided entries and the graded symmetry
/// `t(y, x) = ε·(−1)^{|x||y|} t(x, y)`.
fn complete_table(
    b: &Block,
    space: &GradedSpace,
    symmetry: i64,
    head: impl Fn(&mut Cursor) -> Parsed<(usize, usize, usize, usize)>,
) -> Parsed<Bilinear> {
    let n = space.dim();
    let mut table = Bilinear::square(n);
    let mut given: Vec<Option<(usize, usize)>> = vec![None; n * n];
    for l in b.lines() {
        let toks = tokenize(l)?;
        let mut c = Cursor::new(&toks, l);
        let (x, y, line, col) = head(&mut c)?;
        let v = read_linear(l, &mut c, space)?;
        let s = sign(space.degree(x) * space.degree(y)) * Scalar::from_integer(symmetry.into());
        let mirrored: Vec<Scalar> = v.iter().map(|a| a * &s).collect();
        for (p, q, w) in [(x, y, &v), (y, x, &mirrored)] {
            if let Some((pl, pc)) = given[p * n + q] {
                if table.get_dense(p, q) != *w {
                    return Err(InputError::at(
                        line,
                        col,
                        format!("conflicts with the entry at line {pl}, column {pc} (graded symmetry)"),
                    ));
                }
            }
            table.set_dense(p, q, w);
            given[p * n + q] = Some((line, col));
        }
    }
    Ok(table)
}

fn read_algebra_like(root: &Block, top: bool) -> Parsed<Document> {
    let keys: &[&str] = if top { &["kind", "order"] } else { &["order"] };
    if root.block("generators").is_some() {
        root.expect_only(keys, &["generators", "differential"])?;
        let (order_text, at) = root
            .value("order")
            .ok_or_else(|| InputError::at(root.line.max(1), 1, "free algebras need 'order = N'"))?;
        let order: usize = order_text
            .parse()
            .map_err(|_| InputError::at(at.line, at.column, "order must be a positive integer"))?;
        let space = read_basis(root, "generators")?;
        let mut d: Vec<Polynomial> = vec![Vec::new(); space.dim()];
        if let Some(b) = root.block("differential") {
            let mut seen = vec![false; space.dim()];
            for l in b.lines() {
                let toks = tokenize(l)?;
                let mut c = Cursor::new(&toks, l);
                let (i, line, col) = read_d_head(&mut c, &space)?;
                if seen[i] {
                    return Err(InputError::at(line, col, "differential given twice"));
                }
                seen[i] = true;
                for (word, x, line, col) in read_polynomial(l, &mut c, &space)? {
                    if word.is_empty() && !x.is_zero() {
                        return Err(InputError::at(line, col, "constant terms are not allowed"));
                    }
                    if !word.is_empty() {
                        d[i].push((word, x));
                    }
                }
            }
        }
        let r = QuasismoothTrunc::unchecked(&space, &d, order).map_err(|e| InputError::semantic(e.to_string()))?;
        return Ok(Document::FreeAlgebra(r));
    }
    let keys: &[&str] = if top { &["kind"] } else { &[] };
    root.expect_only(keys, &["basis", "product", "differential"])?;
    let space = read_basis(root, "basis")?;
    let mult = match root.block("product") {
        Some(b) => complete_table(b, &space, 1, |c| {
            let (x, l1, c1) = c.name()?;
            let x = lookup(&space, x, l1, c1)?;
            c.expect_sym('*')?;
            let (y, l2, c2) = c.name()?;
            let y = lookup(&space, y, l2, c2)?;
            c.expect_sym('=')?;
            Ok((x, y, l1, c1))
        })?,
        None => Bilinear::square(space.dim()),
    };
    let d = read_differential(root, &space)?;
    Ok(Document::Algebra(NilpotentDgAlgebra { space, mult, d }))
}

fn read_dgla(root: &Block) -> Parsed<Dgla> {
    let keys: &[&str] = if root.line == 0 { &["kind"] } else { &[] };
    root.expect_only(keys, &["basis", "bracket", "differential"])?;
    let space = read_basis(root, "basis")?;
    let bracket = match root.block("bracket") {
        Some(b) => complete_table(b, &space, -1, |c| {
            c.expect_sym('[')?;
            let (x, l1, c1) = c.name()?;
            let x = lookup(&space, x, l1, c1)?;
            c.expect_sym(',')?;
            let (y, l2, c2) = c.name()?;
            let y = lookup(&space, y, l2, c2)?;
            c.expect_sym(']')?;
            c.expect_sym('=')?;
            Ok((x, y, l1, c1))
        })?,
        None => Bilinear::square(space.dim()),
    };
    let d = read_differential(root, &space)?;
    Ok(Dgla { space, bracket, d })
}

fn read_linfty(root: &Block) -> Parsed<Document> {
    root.expect_only(&["kind", "order"], &["basis", "taylor"])?;
    let (order_text, at) = root
        .value("order")
        .ok_or_else(|| InputError::at(1, 1, "linfty documents need 'order = N'"))?;
    let order: usize = match order_text.parse() {
        Ok(n) if n >= 1 => n,
        _ => return Err(InputError::at(at.line, at.column, "order must be a positive integer")),
    };
    let space = read_basis(root, "basis")?;
    let zero = LInftyStructure::zero(&space, order);
    let co = &zero.coalgebra;
    let mut taylor: Vec<Matrix> = zero.taylor.clone();
    if let Some(b) = root.block("taylor") {
        let mut seen = std::collections::HashSet::new();
        for l in b.lines() {
            let toks = tokenize(l)?;
            let mut c = Cursor::new(&toks, l);
            let (q, line, col) = c.name()?;
            if q != "q" {
                return Err(InputError::at(line, col, "expected 'q(<names>) = …'"));
            }
            c.expect_sym('(')?;
            let mut word = Vec::new();
            loop {
                let (name, nl, nc) = c.name()?;
                word.push(lookup(&space, name, nl, nc)?);
                if c.eat_sym(')') {
                    break;
                }
                c.expect_sym(',')?;
            }
            c.expect_sym('=')?;
            if word.len() > order {
                return Err(InputError::at(line, col, format!("arity {} exceeds order {order}", word.len())));
            }
            let v = read_linear(l, &mut c, &space)?;
            let Some((s, idx)) = co.monomial(&word) else {
                if v.iter().all(|x| x.is_zero()) {
                    continue;
                }
                return Err(InputError::at(line, col, "this symmetric word vanishes (odd element repeated)"));
            };
            if !seen.insert(idx) {
                return Err(InputError::at(line, col, "Taylor coefficient given twice"));
            }
            let k = word.len();
            let column = idx - co.of_length(k)[0];
            for (r, x) in v.iter().enumerate() {
                taylor[k - 1].set(r, column, x * &s);
            }
        }
    }
    LInftyStructure::new(&space, order, taylor)
        .map(Document::LInfty)
        .map_err(|e| InputError::semantic(e.to_string()))
}

/// Every violated invariant, as readable messages.
pub fn invariant_violations(doc: &Document) -> Vec<String> {
    let algebra_violations = |a: &NilpotentDgAlgebra, what: &str| -> Vec<String> {
        let mut out: Vec<String> = a.validate().violations.iter().map(|v| format!("{what}: {v}")).collect();
        if let Err(e) = crate::graded_linear::check_homogeneous(&a.space, &a.space, 1, &a.d) {
            out.push(format!("{what}: differential: {e}"));
        }
        out
    };
    let dgla_violations = |l: &Dgla| -> Vec<String> {
        let mut out: Vec<String> = l.validate().violations.iter().map(|v| format!("dgla: {v}")).collect();
        if let Err(e) = crate::graded_linear::check_homogeneous(&l.space, &l.space, 1, &l.d) {
            out.push(format!("dgla: differential: {e}"));
        }
        out
    };
    match doc {
        Document::GradedSpace(_) => Vec::new(),
        Document::Complex(c) => Complex::new(c.space.clone(), c.d.clone())
            .err()
            .map(|e| vec![format!("complex: {e}")])
            .unwrap_or_default(),
        Document::Algebra(a) => algebra_violations(a, "algebra"),
        Document::FreeAlgebra(r) => {
            let d = &r.algebra().d;
            if d.mul(d).is_zero() {
                Vec::new()
            } else {
                vec!["free algebra: d∘d ≠ 0 on the truncation".into()]
            }
        }
        Document::Dgla(l) => dgla_violations(l),
        Document::LInfty(s) => s
            .check()
            .defects
            .iter()
            .map(|d| format!("linfty: generalized Jacobi fails in arity {} on {}", d.arity, d.monomial))
            .collect(),
        Document::SmallExtension { algebra, kernel } => {
            let mut out = algebra_violations(algebra, "algebra");
            if out.is_empty() {
                if let Err(e) = SmallExtension::from_ideal(algebra, kernel) {
                    out.push(format!("kernel: {e}"));
                }
            }
            out
        }
        Document::McElement { lie, algebra, element } => {
            let mut out = dgla_violations(lie);
            out.extend(algebra_violations(algebra, "algebra"));
            if out.is_empty() {
                let t = TensorDgla::new(lie, algebra);
                if let Err(e) = crate::dgla_mc::check_degree(&t.dgla, element, 1) {
                    out.push(format!("element: {e}"));
                }
            }
            out
        }
    }
}

fn fmt_term(out: &mut String, first: &mut bool, c: &Scalar, word: &str) {
    let neg = c.is_negative();
    let a = c.abs();
    if *first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    *first = false;
    if a.is_one() && !word.is_empty() {
        out.push_str(word);
    } else if word.is_empty() {
        let _ = write!(out, "{a}");
    } else {
        let _ = write!(out, "{a} {word}");
    }
}

/// Linear combination of basis names; `0` when empty.
pub fn format_linear(space: &GradedSpace, v: &[Scalar]) -> String {
    let mut out = String::new();
    let mut first = true;
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            fmt_term(&mut out, &mut first, c, space.name(i));
        }
    }
    if first {
        out.push('0');
    }
    out
}

pub fn format_polynomial(space: &GradedSpace, p: &Polynomial) -> String {
    let mut out = String::new();
    let mut first = true;
    for (m, c) in p {
        if c.is_zero() {
            continue;
        }
        let word: Vec<&str> = m.iter().map(|&i| space.name(i)).collect();
        fmt_term(&mut out, &mut first, c, &word.join("*"));
    }
    if first {
        out.push('0');
    }
    out
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn print_basis(out: &mut String, name: &str, space: &GradedSpace, depth: usize) {
    indent(out, depth);
    let _ = writeln!(out, "{name} {{");
    for (n, d) in space.basis() {
        indent(out, depth + 1);
        let _ = writeln!(out, "{n} : {d}");
    }
    indent(out, depth);
    out.push_str("}\n");
}

fn print_differential(out: &mut String, space: &GradedSpace, d: &Matrix, depth: usize) {
    if d.is_zero() {
        return;
    }
    indent(out, depth);
    out.push_str("differential {\n");
    for i in 0..space.dim() {
        let col = d.col(i);
        if col.iter().any(|x| !x.is_zero()) {
            indent(out, depth + 1);
            let _ = writeln!(out, "d {} = {}", space.name(i), format_linear(space, &col));
        }
    }
    indent(out, depth);
    out.push_str("}\n");
}

fn print_table(out: &mut String, name: &str, space: &GradedSpace, t: &Bilinear, depth: usize, head: impl Fn(&str, &str) -> String) {
    if t.is_zero() {
        return;
    }
    indent(out, depth);
    let _ = writeln!(out, "{name} {{");
    for i in 0..space.dim() {
        for j in i..space.dim() {
            let v = t.get_dense(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                indent(out, depth + 1);
                let _ = writeln!(out, "{} = {}", head(space.name(i), space.name(j)), format_linear(space, &v));
            }
        }
    }
    indent(out, depth);
    out.push_str("}\n");
}

fn print_algebra(out: &mut String, a: &NilpotentDgAlgebra, depth: usize) {
    print_basis(out, "basis", &a.space, depth);
    print_table(out, "product", &a.space, &a.mult, depth, |x, y| format!("{x} * {y}"));
    print_differential(out, &a.space, &a.d, depth);
}

fn print_free(out: &mut String, r: &QuasismoothTrunc, depth: usize) {
    indent(out, depth);
    let _ = writeln!(out, "order = {}", r.order);
    print_basis(out, "generators", &r.generators, depth);
    if r.has_zero_differential() {
        return;
    }
    indent(out, depth);
    out.push_str("differential {\n");
    for (i, p) in r.d.iter().enumerate() {
        if !p.is_empty() {
            indent(out, depth + 1);
            let _ = writeln!(out, "d {} = {}", r.generators.name(i), format_polynomial(&r.generators, p));
        }
    }
    indent(out, depth);
    out.push_str("}\n");
}

fn print_dgla(out: &mut String, l: &Dgla, depth: usize) {
    print_basis(out, "basis", &l.space, depth);
    print_table(out, "bracket", &l.space, &l.bracket, depth, |x, y| format!("[{x}, {y}]"));
    print_differential(out, &l.space, &l.d, depth);
}

fn block(out: &mut String, name: &str, depth: usize, body: impl FnOnce(&mut String)) {
    indent(out, depth);
    let _ = writeln!(out, "{name} {{");
    body(out);
    indent(out, depth);
    out.push_str("}\n");
}

pub fn print_document(doc: &Document) -> String {
    let mut out = format!("kind = {}\n", doc.kind());
    match doc {
        Document::GradedSpace(s) => print_basis(&mut out, "basis", s, 0),
        Document::Complex(c) => {
            print_basis(&mut out, "basis", &c.space, 0);
            print_differential(&mut out, &c.space, &c.d, 0);
        }
        Document::Algebra(a) => print_algebra(&mut out, a, 0),
        Document::FreeAlgebra(r) => print_free(&mut out, r, 0),
        Document::Dgla(l) => print_dgla(&mut out, l, 0),
        Document::LInfty(s) => {
            let _ = writeln!(out, "order = {}", s.order());
            print_basis(&mut out, "basis", s.space(), 0);
            let co = &s.coalgebra;
            if s.taylor.iter().any(|m| !m.is_zero()) {
                out.push_str("taylor {\n");
                for (i, m) in co.monomials.iter().enumerate() {
                    let v = s.taylor_on(i);
                    if v.iter().any(|x| !x.is_zero()) {
                        let args: Vec<&str> = m.iter().map(|&g| s.space().name(g)).collect();
                        let _ = writeln!(out, "  q({}) = {}", args.join(", "), format_linear(s.space(), &v));
                    }
                }
                out.push_str("}\n");
            }
        }
        Document::SmallExtension { algebra, kernel } => {
            block(&mut out, "algebra", 0, |o| print_algebra(o, algebra, 1));
            block(&mut out, "kernel", 0, |o| {
                for v in kernel {
                    let _ = writeln!(o, "  {}", format_linear(&algebra.space, v));
                }
            });
        }
        Document::McElement { lie, algebra, element } => {
            block(&mut out, "lie", 0, |o| print_dgla(o, lie, 1));
            block(&mut out, "algebra", 0, |o| print_algebra(o, algebra, 1));
            let t = TensorDgla::new(lie, algebra);
            block(&mut out, "element", 0, |o| {
                for (a, part) in t.components(element).iter().enumerate() {
                    if part.iter().any(|x| !x.is_zero()) {
                        let _ = writeln!(o, "  {} = {}", algebra.space.name(a), format_linear(&lie.space, part));
                    }
                }
            });
        }
    }
    out
}
