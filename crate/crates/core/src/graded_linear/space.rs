use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashSet};

/// Finite graded vector space given by a named homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedSpace {
    names: Vec<String>,
    degrees: Vec<i64>,
}

impl GradedSpace {
    pub fn new(basis: Vec<(String, i64)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (n, _) in &basis {
            if !seen.insert(n.clone()) {
                return Err(Error::Invalid(format!("duplicate basis name '{n}'")));
            }
        }
        let (names, degrees) = basis.into_iter().unzip();
        Ok(GradedSpace { names, degrees })
    }

    /// Basis names are generated as `prefix0, prefix1, …`.
    pub fn anonymous(prefix: &str, degrees: &[i64]) -> Self {
        GradedSpace {
            names: (0..degrees.len()).map(|i| format!("{prefix}{i}")).collect(),
            degrees: degrees.to_vec(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn basis(&self) -> Vec<(String, i64)> {
        self.names.iter().cloned().zip(self.degrees.iter().copied()).collect()
    }

    pub fn indices_in_degree(&self, k: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == k).collect()
    }

    /// Occurring degrees, sorted.
    pub fn occurring_degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.degrees.clone();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &d in &self.degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        m
    }

    /// `V[n]`: every degree lowered by `n`, names kept.
    pub fn shift(&self, n: i64) -> Self {
        GradedSpace {
            names: self.names.clone(),
            degrees: self.degrees.iter().map(|d| d - n).collect(),
        }
    }

    /// Direct sum; names of the second summand get `suffix` appended when
    /// they clash.
    pub fn direct_sum(&self, other: &GradedSpace, suffix: &str) -> Self {
        let mut names = self.names.clone();
        let mut degrees = self.degrees.clone();
        let mut taken: HashSet<String> = names.iter().cloned().collect();
        for (n, d) in other.names.iter().zip(&other.degrees) {
            let mut name = n.clone();
            while taken.contains(&name) {
                name.push_str(suffix);
            }
            taken.insert(name.clone());
            names.push(name);
            degrees.push(*d);
        }
        GradedSpace { names, degrees }
    }

    pub fn with_names(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::Shape("name count".into()));
        }
        GradedSpace::new(names.into_iter().zip(self.degrees.iter().copied()).collect())
    }
}

/// Renames repeated entries by appending primes, keeping first occurrences.
pub fn uniquify(names: Vec<String>) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    names
        .into_iter()
        .map(|mut n| {
            while !seen.insert(n.clone()) {
                n.push('\'');
            }
            n
        })
        .collect()
}
