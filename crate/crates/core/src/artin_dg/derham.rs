//! Polynomial de Rham extensions `A[t,dt]_ε` and homotopies of morphisms.

use super::algebra::{check_morphism, vector_degree, NilpotentDgAlgebra};
use super::extension::SmallExtension;
use crate::error::{Error, Result};
use crate::graded_linear::{
    binomial, int, inverse, is_zero_vec, one, span_basis, zero, Bilinear, Complex, GradedSpace, Matrix, Scalar,
};
use num_traits::{Signed, ToPrimitive, Zero};

/// `ceil(n·ε)` for a positive rational `ε`.
pub fn ceil_mul(n: usize, eps: &Scalar) -> usize {
    (eps * int(n as i64)).ceil().to_integer().to_usize().expect("small")
}

/// Basis of `A` adapted to the power filtration `A ⊃ A² ⊃ …`, with the
/// level of each vector (largest `k` with the vector in `A^k`).
pub fn filtration_basis(a: &NilpotentDgAlgebra) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let powers = a.powers();
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    let mut levels = Vec::new();
    for (k, pk) in powers.iter().enumerate().rev() {
        for v in pk {
            let mut trial = basis.clone();
            trial.push(v.clone());
            if span_basis(&trial, a.dim()).len() == trial.len() {
                basis.push(v.clone());
                levels.push(k + 1);
            }
        }
    }
    (basis, levels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Term {
    base: usize,
    power: usize,
    dt: bool,
}

/// `A[t,dt]_ε = A ⊕ ⊕_{n>0} A^{⌈nε⌉}⊗(K tⁿ ⊕ K t^{n-1}dt)`, exact and finite.
#[derive(Clone, Debug)]
pub struct DeRham {
    pub base: NilpotentDgAlgebra,
    pub algebra: NilpotentDgAlgebra,
    pub epsilon: Scalar,
    pub max_power: usize,
    terms: Vec<Term>,
    adapted: Matrix,
    adapted_inv: Matrix,
    levels: Vec<usize>,
}

impl DeRham {
    pub fn new(a: &NilpotentDgAlgebra, epsilon: &Scalar) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::Invalid("epsilon must be positive".into()));
        }
        let (basis, levels) = filtration_basis(a);
        let n = a.dim();
        let adapted = Matrix::from_cols(&basis, n);
        let adapted_inv = if n == 0 {
            Matrix::zeros(0, 0)
        } else {
            inverse(&adapted).expect("filtration basis spans")
        };
        let top = levels.iter().copied().max().unwrap_or(0);
        let mut max_power = 0;
        while ceil_mul(max_power + 1, epsilon) <= top {
            max_power += 1;
        }
        let mut terms = Vec::new();
        for power in 0..=max_power {
            for (b, &lvl) in levels.iter().enumerate() {
                if power == 0 {
                    terms.push(Term { base: b, power, dt: false });
                } else if ceil_mul(power, epsilon) <= lvl {
                    terms.push(Term { base: b, power, dt: false });
                    terms.push(Term { base: b, power, dt: true });
                }
            }
        }
        let base_names: Vec<String> = basis
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let nz: Vec<usize> = (0..n).filter(|&j| !v[j].is_zero()).collect();
                if nz.len() == 1 && v[nz[0]] == one() {
                    a.space.name(nz[0]).to_string()
                } else {
                    format!("a{i}")
                }
            })
            .collect();
        let base_names = crate::graded_linear::uniquify(base_names);
        let base_degrees: Vec<i64> = basis.iter().map(|v| vector_degree(&a.space, v).unwrap_or(0)).collect();
        let space = GradedSpace::new(
            terms
                .iter()
                .map(|t| {
                    let name = match (t.power, t.dt) {
                        (0, _) => base_names[t.base].clone(),
                        (1, true) => format!("{}*dt", base_names[t.base]),
                        (p, false) => format!("{}*t^{p}", base_names[t.base]),
                        (p, true) => format!("{}*t^{}dt", base_names[t.base], p - 1),
                    };
                    (name, base_degrees[t.base] + t.dt as i64)
                })
                .collect(),
        )?;
        let mut mult = Bilinear::square(terms.len());
        let base_vecs: Vec<Vec<Scalar>> = (0..n).map(|j| adapted.col(j)).collect();
        // Products of adapted base vectors, shared by all t-powers.
        let base_products: Vec<Vec<Vec<Scalar>>> = (0..n)
            .map(|p| (0..n).map(|q| adapted_inv.apply(&a.mul(&base_vecs[p], &base_vecs[q]))).collect())
            .collect();
        let mut position: std::collections::HashMap<(usize, usize, bool), usize> = std::collections::HashMap::new();
        for (i, t) in terms.iter().enumerate() {
            position.insert((t.base, t.power, t.dt), i);
        }
        for (i, ti) in terms.iter().enumerate() {
            for (j, tj) in terms.iter().enumerate() {
                if ti.dt && tj.dt {
                    continue;
                }
                let prod = &base_products[ti.base][tj.base];
                if is_zero_vec(prod) {
                    continue;
                }
                let s = if ti.dt && base_degrees[tj.base].rem_euclid(2) == 1 {
                    -one()
                } else {
                    one()
                };
                for (k, c) in prod.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let pos = position
                        .get(&(k, ti.power + tj.power, ti.dt || tj.dt))
                        .copied()
                        .ok_or_else(|| Error::Invalid("de Rham product leaves the truncation".into()))?;
                    mult.add(i, j, pos, &(&s * c));
                }
            }
        }
        let mut d = Matrix::zeros(terms.len(), terms.len());
        for (j, t) in terms.iter().enumerate() {
            let db = adapted_inv.apply(&a.diff(&base_vecs[t.base]));
            for (k, c) in db.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let pos = position.get(&(k, t.power, t.dt)).copied().expect("d preserves powers");
                d.add_at(pos, j, c);
            }
            if !t.dt && t.power > 0 {
                let s = crate::graded_linear::sign(base_degrees[t.base]) * int(t.power as i64);
                let pos = position.get(&(t.base, t.power, true)).copied().expect("dt partner");
                d.add_at(pos, j, &s);
            }
        }
        let algebra = NilpotentDgAlgebra::new(space, mult, d)?;
        Ok(DeRham {
            base: a.clone(),
            algebra,
            epsilon: epsilon.clone(),
            max_power,
            terms,
            adapted,
            adapted_inv,
            levels,
        })
    }

    pub fn dim(&self) -> usize {
        self.terms.len()
    }

    /// Evaluation morphism `e_s: a⊗p(t,dt) ↦ p(s,0)·a`.
    pub fn evaluation(&self, s: &Scalar) -> Matrix {
        let n = self.base.dim();
        let mut m = Matrix::zeros(n, self.dim());
        for (j, t) in self.terms.iter().enumerate() {
            if t.dt {
                continue;
            }
            let mut c = one();
            for _ in 0..t.power {
                c *= s;
            }
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let x = self.adapted.get(i, t.base);
                if !x.is_zero() {
                    m.add_at(i, j, &(x * &c));
                }
            }
        }
        m
    }

    /// Inclusion `a ↦ a⊗1`.
    pub fn inclusion(&self) -> Matrix {
        let n = self.base.dim();
        let mut m = Matrix::zeros(self.dim(), n);
        for i in 0..n {
            let coords = self.adapted_inv.col(i);
            for (b, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    let pos = self.position(b, 0, false).expect("constant term");
                    m.set(pos, i, c.clone());
                }
            }
        }
        m
    }

    fn position(&self, base: usize, power: usize, dt: bool) -> Option<usize> {
        self.terms.iter().position(|t| *t == Term { base, power, dt })
    }

    /// Coordinates of `a⊗tⁿ` (or `a⊗t^{n-1}dt` when `dt`), for `a` given in
    /// coordinates of the base algebra.
    pub fn embed(&self, a: &[Scalar], power: usize, dt: bool) -> Result<Vec<Scalar>> {
        let coords = self.adapted_inv.apply(a);
        let mut out = vec![zero(); self.dim()];
        for (b, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if dt && power == 0 {
                return Err(Error::Invalid("dt needs power ≥ 1".into()));
            }
            let pos = self
                .position(b, power, dt)
                .ok_or_else(|| Error::Invalid("element outside A[t,dt]_ε".into()))?;
            out[pos] = c.clone();
        }
        Ok(out)
    }

    /// Reparametrization `a⊗p(t,dt) ↦ a⊗p(1−t, −dt)`.
    pub fn reverse(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (j, t) in self.terms.iter().enumerate() {
            let (top, base_sign) = if t.dt { (t.power - 1, -one()) } else { (t.power, one()) };
            for k in 0..=top {
                let c = &base_sign * int(binomial(top, k) as i64) * crate::graded_linear::sign(k as i64);
                let power = if t.dt { k + 1 } else { k };
                let pos = self.position(t.base, power, t.dt).expect("lower powers present");
                m.add_at(pos, j, &c);
            }
        }
        m
    }

    /// The underlying complex.
    pub fn complex(&self) -> Complex {
        self.algebra.complex()
    }

    /// `e₀` written as a chain of acyclic small extensions: successively
    /// divide out the `t`-dependent terms whose base lies in the deepest
    /// remaining filtration level, then the remaining `t`-terms vanish.
    pub fn evaluation_tower(&self) -> Result<Vec<SmallExtension>> {
        let mut levels: Vec<usize> = self.levels.clone();
        levels.sort_unstable();
        levels.dedup();
        let mut steps = Vec::new();
        let mut cur = self.algebra.clone();
        let mut proj = Matrix::identity(self.dim());
        for &lvl in levels.iter().rev() {
            let ideal: Vec<Vec<Scalar>> = self
                .terms
                .iter()
                .enumerate()
                .filter(|(_, t)| t.power > 0 && self.levels[t.base] == lvl)
                .map(|(j, _)| proj.col(j))
                .collect();
            if ideal.is_empty() {
                continue;
            }
            let step = SmallExtension::from_ideal(&cur, &ideal)?;
            proj = step.projection.mul(&proj);
            cur = step.quotient.clone();
            steps.push(step);
        }
        Ok(steps)
    }

    /// Filtration level of each adapted base vector.
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }
}

/// Largest `ε` for which terms `a⊗tⁿ` with `a ∈ A^level` fit in `A[t,dt]_ε`:
/// the minimum of `level/n` over the given `(level, n)` pairs with `n > 0`.
pub fn epsilon_threshold(pairs: &[(usize, usize)]) -> Option<Scalar> {
    pairs
        .iter()
        .filter(|(_, n)| *n > 0)
        .map(|&(l, n)| Scalar::new((l as i64).into(), (n as i64).into()))
        .min()
}

/// A morphism `H: A → B[t,dt]_ε`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub source: NilpotentDgAlgebra,
    pub target: DeRham,
    pub map: Matrix,
}

impl Homotopy {
    /// `H = ι∘f`, the constant homotopy from `f` to itself.
    pub fn constant(source: &NilpotentDgAlgebra, target: DeRham, f: &Matrix) -> Self {
        let map = target.inclusion().mul(f);
        Homotopy {
            source: source.clone(),
            target,
            map,
        }
    }

    /// The homotopy traversed backwards.
    pub fn reversed(&self) -> Self {
        Homotopy {
            source: self.source.clone(),
            target: self.target.clone(),
            map: self.target.reverse().mul(&self.map),
        }
    }
}

/// `true` iff `H` is a dg-algebra morphism with `e₀∘H = f` and `e₁∘H = g`.
pub fn check_homotopy(h: &Homotopy, f: &Matrix, g: &Matrix) -> bool {
    if check_morphism(&h.source, &h.target.algebra, &h.map).is_err() {
        return false;
    }
    let e0 = h.target.evaluation(&zero());
    let e1 = h.target.evaluation(&one());
    e0.mul(&h.map) == *f && e1.mul(&h.map) == *g
}

/// Polynomial de Rham complex `K[t,dt]` cut at `t`-degree `n`: basis
/// `1, t, …, tⁿ, dt, t dt, …, t^{n-1}dt`.
pub fn polynomial_de_rham_complex(n: usize) -> Complex {
    let mut basis: Vec<(String, i64)> = (0..=n).map(|k| (format!("t^{k}"), 0)).collect();
    basis.extend((0..n).map(|k| (format!("t^{k}dt"), 1)));
    let space = GradedSpace::new(basis).expect("distinct");
    let mut d = Matrix::zeros(2 * n + 1, 2 * n + 1);
    for k in 1..=n {
        d.set(n + k, k, int(k as i64));
    }
    Complex::new(space, d).expect("d² = 0")
}
