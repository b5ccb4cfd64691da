use crate::error::{Error, Result};
use crate::graded_linear::{
    check_homogeneous, complete_basis, inverse, kernel, sign, span_basis, Bilinear, Complex, GradedSpace, Matrix,
    Scalar,
};
use num_traits::Zero;

/// Finite-dimensional graded-commutative nilpotent dg-algebra without unit,
/// given by structure constants on a homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentDgAlgebra {
    pub space: GradedSpace,
    pub mult: Bilinear,
    pub d: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails on ({})", self.axiom, self.witness.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub nilpotency_index: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<usize> {
        match self.violations.first() {
            Some(v) => Err(Error::Axiom {
                axiom: v.axiom.clone(),
                witness: v.witness.join(", "),
            }),
            None => Ok(self.nilpotency_index.unwrap_or(1)),
        }
    }
}

const MAX_WITNESSES: usize = 8;

/// Homogeneous basis of a subspace, computed degree by degree from a
/// spanning family of homogeneous vectors.
pub fn graded_span(space: &GradedSpace, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for k in space.occurring_degrees() {
        let in_k: Vec<Vec<Scalar>> = vectors
            .iter()
            .filter(|v| vector_degree(space, v) == Some(k))
            .cloned()
            .collect();
        out.extend(span_basis(&in_k, space.dim()));
    }
    out
}

/// Degree of a nonzero homogeneous vector; `None` for zero or mixed vectors.
pub fn vector_degree(space: &GradedSpace, v: &[Scalar]) -> Option<i64> {
    let mut deg = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        match deg {
            None => deg = Some(space.degree(i)),
            Some(d) if d != space.degree(i) => return None,
            _ => {}
        }
    }
    deg
}

/// Homogeneous basis of the kernel of a degree-`deg` map `m: space → target`.
pub fn graded_kernel(space: &GradedSpace, target: &GradedSpace, m: &Matrix, deg: i64) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    let n = space.dim();
    for k in space.occurring_degrees() {
        let src = space.indices_in_degree(k);
        let tgt = target.indices_in_degree(k + deg);
        let block = m.submatrix(&tgt, &src);
        for v in kernel(&block) {
            let mut full = vec![Scalar::zero(); n];
            for (x, &i) in v.into_iter().zip(&src) {
                full[i] = x;
            }
            out.push(full);
        }
    }
    out
}

/// Homogeneous complement of a graded subspace (unit vectors are preferred).
pub fn graded_complement(space: &GradedSpace, sub: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    let n = space.dim();
    for k in space.occurring_degrees() {
        let idx = space.indices_in_degree(k);
        let local: Vec<Vec<Scalar>> = sub
            .iter()
            .filter(|v| vector_degree(space, v) == Some(k))
            .map(|v| idx.iter().map(|&i| v[i].clone()).collect())
            .collect();
        for c in complete_basis(&span_basis(&local, idx.len()), idx.len()) {
            let mut full = vec![Scalar::zero(); n];
            for (x, &i) in c.into_iter().zip(&idx) {
                full[i] = x;
            }
            out.push(full);
        }
    }
    out
}

pub(crate) fn unit_name(space: &GradedSpace, v: &[Scalar], fallback: String) -> String {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if nz.len() == 1 && v[nz[0]] == Scalar::from_integer(1.into()) {
        space.name(nz[0]).to_string()
    } else {
        fallback
    }
}

impl NilpotentDgAlgebra {
    pub fn new(space: GradedSpace, mult: Bilinear, d: Matrix) -> Result<Self> {
        let n = space.dim();
        if mult.dims() != (n, n, n) || d.rows() != n || d.cols() != n {
            return Err(Error::Shape("structure constants do not match basis".into()));
        }
        Ok(NilpotentDgAlgebra { space, mult, d })
    }

    /// Builds and validates; fails on the first violated axiom.
    pub fn checked(space: GradedSpace, mult: Bilinear, d: Matrix) -> Result<Self> {
        let a = Self::new(space, mult, d)?;
        a.validate().into_result()?;
        Ok(a)
    }

    /// Trivial multiplication on a complex.
    pub fn trivial(c: &Complex) -> Self {
        let n = c.dim();
        NilpotentDgAlgebra {
            space: c.space.clone(),
            mult: Bilinear::square(n),
            d: c.d.clone(),
        }
    }

    pub fn zero() -> Self {
        Self::trivial(&Complex::zero_differential(GradedSpace::zero()))
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.space.degree(i)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.mult.apply(x, y)
    }

    pub fn diff(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.d.apply(x)
    }

    pub fn complex(&self) -> Complex {
        Complex {
            space: self.space.clone(),
            d: self.d.clone(),
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        crate::graded_linear::unit_vec(self.dim(), i)
    }

    pub fn has_trivial_product(&self) -> bool {
        self.mult.is_zero()
    }

    /// Checks homogeneity, graded commutativity, associativity, Leibniz,
    /// `d² = 0` and nilpotency on all basis pairs and triples.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut violations = Vec::new();
        let name = |i: usize| self.space.name(i).to_string();
        let push = |axiom: &str, witness: Vec<String>, violations: &mut Vec<Violation>| {
            if violations.len() < MAX_WITNESSES {
                violations.push(Violation {
                    axiom: axiom.to_string(),
                    witness,
                });
            }
        };
        if check_homogeneous(&self.space, &self.space, 1, &self.d).is_err() {
            push("differential has degree +1", vec![], &mut violations);
        }
        for i in 0..n {
            for j in 0..n {
                for (k, _) in self.mult.get(i, j) {
                    if self.degree(*k) != self.degree(i) + self.degree(j) {
                        push("product is homogeneous", vec![name(i), name(j)], &mut violations);
                    }
                }
            }
        }
        if !self.d.mul(&self.d).is_zero() {
            push("d∘d = 0", vec![], &mut violations);
        }
        let e: Vec<Vec<Scalar>> = (0..n).map(|i| self.basis_vector(i)).collect();
        for i in 0..n {
            for j in i..n {
                let ab = self.mult.get_dense(i, j);
                let ba = self.mult.get_dense(j, i);
                let s = sign(self.degree(i) * self.degree(j));
                if ab.iter().zip(&ba).any(|(x, y)| *x != &s * y) {
                    push("graded commutativity", vec![name(i), name(j)], &mut violations);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ab = self.mult.get_dense(i, j);
                // Leibniz: d(ab) = d(a) b + (-1)^a a d(b)
                let lhs = self.diff(&ab);
                let mut rhs = self.mul(&self.diff(&e[i]), &e[j]);
                let t = self.mul(&e[i], &self.diff(&e[j]));
                let s = sign(self.degree(i));
                for (r, x) in rhs.iter_mut().zip(&t) {
                    *r += &s * x;
                }
                if lhs != rhs {
                    push("Leibniz rule", vec![name(i), name(j)], &mut violations);
                }
                for k in 0..n {
                    let left = self.mul(&ab, &e[k]);
                    let right = self.mult.apply_left_basis(i, &self.mult.get_dense(j, k));
                    if left != right {
                        push("associativity", vec![name(i), name(j), name(k)], &mut violations);
                    }
                }
            }
        }
        let nilpotency_index = self.nilpotency_index();
        if nilpotency_index.is_none() {
            push("nilpotency", vec![], &mut violations);
        }
        ValidationReport {
            violations,
            nilpotency_index,
        }
    }

    /// Homogeneous basis of the product `U·W` of two graded subspaces.
    pub fn product_span(&self, u: &[Vec<Scalar>], w: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut prods = Vec::new();
        for x in u {
            for y in w {
                let p = self.mul(x, y);
                if p.iter().any(|c| !c.is_zero()) {
                    prods.push(p);
                }
            }
        }
        graded_span(&self.space, &prods)
    }

    /// Bases of `A, A², A³, …` down to the first zero power (excluded).
    pub fn powers(&self) -> Vec<Vec<Vec<Scalar>>> {
        let mut out = Vec::new();
        let full: Vec<Vec<Scalar>> = (0..self.dim()).map(|i| self.basis_vector(i)).collect();
        let mut cur = full.clone();
        while !cur.is_empty() && out.len() <= self.dim() + 1 {
            out.push(cur.clone());
            cur = self.product_span(&cur, &full);
        }
        out
    }

    /// Least `k` with `A^k = 0`; `None` if the powers do not vanish.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let p = self.powers();
        if p.len() > self.dim() + 1 {
            None
        } else {
            Some(p.len() + 1)
        }
    }

    /// Homogeneous basis of `{x : x·A = 0}`.
    pub fn annihilator(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        // x ↦ (x e_0, x e_1, …) stacked.
        let mut m = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.mult.get(i, j) {
                    m.set(j * n + k, i, c.clone());
                }
            }
        }
        let mut out = Vec::new();
        for k in self.space.occurring_degrees() {
            let src = self.space.indices_in_degree(k);
            let block = m.submatrix(&(0..n * n).collect::<Vec<_>>(), &src);
            for v in kernel(&block) {
                let mut full = vec![Scalar::zero(); n];
                for (x, &i) in v.into_iter().zip(&src) {
                    full[i] = x;
                }
                out.push(full);
            }
        }
        out
    }

    /// Re-expresses the algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix, names: Vec<String>) -> Result<Self> {
        let pinv = inverse(p).ok_or_else(|| Error::Invalid("basis change is singular".into()))?;
        let degrees: Vec<i64> = (0..p.cols())
            .map(|j| vector_degree(&self.space, &p.col(j)).unwrap_or(0))
            .collect();
        let space = GradedSpace::new(names.into_iter().zip(degrees).collect())?;
        let mult = self.mult.transform(p, p, &pinv);
        let d = pinv.mul(&self.d).mul(p);
        Ok(NilpotentDgAlgebra { space, mult, d })
    }

    /// Subalgebra spanned by homogeneous, independent `vectors` (must be
    /// closed under product and differential). Returns it with the inclusion.
    pub fn subalgebra(&self, vectors: &[Vec<Scalar>]) -> Result<(Self, Matrix)> {
        let n = self.dim();
        let incl = Matrix::from_cols(vectors, n);
        let complement = graded_complement(&self.space, vectors);
        let mut all = vectors.to_vec();
        all.extend(complement.iter().cloned());
        let p = Matrix::from_cols(&all, n);
        let pinv = inverse(&p).ok_or_else(|| Error::Invalid("dependent subalgebra basis".into()))?;
        let k = vectors.len();
        let coords = pinv.submatrix(&(0..k).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
        let rest = pinv.submatrix(&(k..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
        let names: Vec<String> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| unit_name(&self.space, v, format!("s{i}")))
            .collect();
        let names = crate::graded_linear::uniquify(names);
        let degrees: Vec<i64> = vectors
            .iter()
            .map(|v| vector_degree(&self.space, v).unwrap_or(0))
            .collect();
        let space = GradedSpace::new(names.into_iter().zip(degrees).collect())?;
        let mut mult = Bilinear::square(k);
        for i in 0..k {
            for j in 0..k {
                let prod = self.mul(&vectors[i], &vectors[j]);
                if rest.apply(&prod).iter().any(|c| !c.is_zero()) {
                    return Err(Error::Invalid("subspace not closed under product".into()));
                }
                mult.set_dense(i, j, &coords.apply(&prod));
            }
        }
        let dimg = self.d.mul(&incl);
        if !rest.mul(&dimg).is_zero() {
            return Err(Error::Invalid("subspace not closed under differential".into()));
        }
        let d = coords.mul(&dimg);
        Ok((NilpotentDgAlgebra { space, mult, d }, incl))
    }

    pub fn is_ideal(&self, vectors: &[Vec<Scalar>]) -> bool {
        let n = self.dim();
        if vectors.is_empty() {
            return true;
        }
        let sub = Matrix::from_cols(vectors, n);
        let inside = |v: &Vec<Scalar>| crate::graded_linear::in_image(&sub, v);
        for v in vectors {
            if !inside(&self.diff(v)) {
                return false;
            }
            for i in 0..n {
                if !inside(&self.mul(&self.basis_vector(i), v)) {
                    return false;
                }
            }
        }
        true
    }

    /// Quotient by a differential ideal. Returns the quotient, the
    /// projection `A → A/J` and a linear section.
    pub fn quotient(&self, ideal: &[Vec<Scalar>]) -> Result<(Self, Matrix, Matrix)> {
        if !self.is_ideal(ideal) {
            return Err(Error::Invalid("kernel is not a differential ideal".into()));
        }
        let n = self.dim();
        let ideal = graded_span(&self.space, ideal);
        let complement = graded_complement(&self.space, &ideal);
        let k = complement.len();
        let mut all = complement.clone();
        all.extend(ideal.iter().cloned());
        let p = Matrix::from_cols(&all, n);
        let pinv = inverse(&p).ok_or_else(|| Error::Invalid("ideal basis is dependent".into()))?;
        let rows: Vec<usize> = (0..k).collect();
        let projection = pinv.submatrix(&rows, &(0..n).collect::<Vec<_>>());
        let section = Matrix::from_cols(&complement, n);
        let names: Vec<String> = complement
            .iter()
            .enumerate()
            .map(|(i, v)| unit_name(&self.space, v, format!("q{i}")))
            .collect();
        let names = crate::graded_linear::uniquify(names);
        let degrees: Vec<i64> = complement
            .iter()
            .map(|v| vector_degree(&self.space, v).unwrap_or(0))
            .collect();
        let space = GradedSpace::new(names.into_iter().zip(degrees).collect())?;
        let mult = self.mult.transform(&section, &section, &projection);
        let d = projection.mul(&self.d).mul(&section);
        Ok((NilpotentDgAlgebra { space, mult, d }, projection, section))
    }

    /// Direct product `A × B`.
    pub fn product(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let space = self.space.direct_sum(&other.space, "'");
        let mut mult = Bilinear::square(n + m);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.mult.get(i, j) {
                    mult.add(i, j, *k, c);
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for (k, c) in other.mult.get(i, j) {
                    mult.add(n + i, n + j, n + k, c);
                }
            }
        }
        NilpotentDgAlgebra {
            space,
            mult,
            d: self.d.block_diag(&other.d),
        }
    }
}

/// A degree-0 map between algebras that is multiplicative and commutes with
/// the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgAlgebraMorphism {
    pub source: NilpotentDgAlgebra,
    pub target: NilpotentDgAlgebra,
    pub map: Matrix,
}

impl DgAlgebraMorphism {
    pub fn new(source: NilpotentDgAlgebra, target: NilpotentDgAlgebra, map: Matrix) -> Result<Self> {
        check_morphism(&source, &target, &map)?;
        Ok(DgAlgebraMorphism { source, target, map })
    }

    pub fn identity(a: &NilpotentDgAlgebra) -> Self {
        DgAlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            map: Matrix::identity(a.dim()),
        }
    }

    pub fn compose(&self, after: &DgAlgebraMorphism) -> DgAlgebraMorphism {
        DgAlgebraMorphism {
            source: self.source.clone(),
            target: after.target.clone(),
            map: after.map.mul(&self.map),
        }
    }
}

pub fn check_morphism(a: &NilpotentDgAlgebra, b: &NilpotentDgAlgebra, f: &Matrix) -> Result<()> {
    check_homogeneous(&a.space, &b.space, 0, f)?;
    if b.d.mul(f) != f.mul(&a.d) {
        return Err(Error::NotMorphism("does not commute with differentials".into()));
    }
    let cols: Vec<Vec<Scalar>> = (0..a.dim()).map(|j| f.col(j)).collect();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = f.apply(&a.mult.get_dense(i, j));
            let rhs = b.mul(&cols[i], &cols[j]);
            if lhs != rhs {
                return Err(Error::NotMorphism(format!(
                    "not multiplicative on ({}, {})",
                    a.space.name(i),
                    a.space.name(j)
                )));
            }
        }
    }
    Ok(())
}
