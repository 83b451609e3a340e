//! Restricted root systems in the dual of a split torus.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, is_zero, Subspace, Vector, Q};
use num_traits::{Signed, Zero};

/// A linear functional on `Q^n`, stored by its values on the standard basis.
pub type Functional = Vector;

#[derive(Clone, Debug)]
pub struct RestrictedRootSystem {
    a_dim: usize,
    /// Positive roots sorted by height, followed by their negatives in the same order.
    roots: Vec<Functional>,
    n_positive: usize,
    simple: Vec<usize>,
    inner_product: Vec<Vector>,
    /// Coordinates of each root in the simple roots.
    simple_coords: Vec<Vector>,
}

impl RestrictedRootSystem {
    /// Builds the system from its roots, choosing positivity by a regular element.
    pub fn new(
        a_dim: usize,
        roots: &[Functional],
        inner_product: Vec<Vector>,
        regular: &[Q],
    ) -> Result<Self> {
        if inner_product.len() != a_dim || inner_product.iter().any(|r| r.len() != a_dim) {
            return Err(Error::DimensionMismatch("inner product size".into()));
        }
        for i in 0..a_dim {
            for j in 0..a_dim {
                if inner_product[i][j] != inner_product[j][i] {
                    return Err(Error::InvalidAlgebra("inner product not symmetric".into()));
                }
            }
        }
        if !positive_definite(&inner_product) {
            return Err(Error::InvalidAlgebra("inner product not positive definite".into()));
        }
        let mut pos: Vec<Functional> = Vec::new();
        for r in roots {
            if r.len() != a_dim || is_zero(r) {
                return Err(Error::InvalidAlgebra("bad root vector".into()));
            }
            let v = dot(r, regular);
            if v.is_zero() {
                return Err(Error::InvalidAlgebra("element is not regular".into()));
            }
            if !roots.contains(&linalg::neg(r)) {
                return Err(Error::InvalidAlgebra("root set not symmetric".into()));
            }
            if v.is_positive() && !pos.contains(r) {
                pos.push(r.clone());
            }
        }
        let simple_fns: Vec<Functional> = pos
            .iter()
            .filter(|r| {
                !pos.iter().any(|a| pos.iter().any(|b| &linalg::add(a, b) == *r))
            })
            .cloned()
            .collect();
        if linalg::rank(&simple_fns, a_dim) != simple_fns.len() {
            return Err(Error::InvalidAlgebra("simple roots are dependent".into()));
        }
        let coords_of = |r: &Functional| -> Option<Vector> { linalg::coordinates(&simple_fns, r) };
        let mut pos_coords = Vec::new();
        for r in &pos {
            let c = coords_of(r)
                .filter(|c| linalg::is_integer_vec(c) && c.iter().all(|x| !x.is_negative()))
                .ok_or_else(|| Error::InvalidAlgebra("positive root outside N[simple]".into()))?;
            pos_coords.push((r.clone(), c));
        }
        pos_coords.sort_by(|(_, a), (_, b)| {
            let ha: Q = a.iter().sum();
            let hb: Q = b.iter().sum();
            ha.cmp(&hb).then_with(|| linalg::cmp_vec(b, a))
        });
        let n_positive = pos_coords.len();
        let mut all_roots: Vec<Functional> = pos_coords.iter().map(|(r, _)| r.clone()).collect();
        let mut simple_coords: Vec<Vector> = pos_coords.iter().map(|(_, c)| c.clone()).collect();
        for (r, c) in &pos_coords {
            all_roots.push(linalg::neg(r));
            simple_coords.push(linalg::neg(c));
        }
        if all_roots.len() != dedup_len(roots) {
            return Err(Error::InvalidAlgebra("roots neither positive nor negative".into()));
        }
        let simple: Vec<usize> = (0..n_positive)
            .filter(|&i| simple_fns.contains(&all_roots[i]))
            .collect();
        Ok(RestrictedRootSystem {
            a_dim,
            roots: all_roots,
            n_positive,
            simple,
            inner_product,
            simple_coords,
        })
    }

    pub fn a_dim(&self) -> usize {
        self.a_dim
    }

    pub fn roots(&self) -> &[Functional] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Functional {
        &self.roots[i]
    }

    pub fn positive(&self) -> std::ops::Range<usize> {
        0..self.n_positive
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_positive
    }

    /// Index of `-root(i)`.
    pub fn negative_of(&self, i: usize) -> usize {
        if i < self.n_positive {
            i + self.n_positive
        } else {
            i - self.n_positive
        }
    }

    /// Root indices of the simple roots, in order `a1, a2, ...`.
    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn simple_roots(&self) -> Vec<Functional> {
        self.simple.iter().map(|&i| self.roots[i].clone()).collect()
    }

    pub fn inner_product(&self) -> &[Vector] {
        &self.inner_product
    }

    pub fn index_of(&self, f: &[Q]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == f)
    }

    /// Coordinates of a root in the simple roots.
    pub fn simple_coords(&self, i: usize) -> &Vector {
        &self.simple_coords[i]
    }

    /// Coordinates of an arbitrary functional in the span of the simple roots.
    pub fn coords_in_simple(&self, f: &[Q]) -> Option<Vector> {
        linalg::coordinates(&self.simple_roots(), f)
    }

    /// Positions (into the simple roots) of a subset given by root indices.
    fn check_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        subset
            .iter()
            .map(|i| {
                self.simple
                    .iter()
                    .position(|s| s == i)
                    .ok_or_else(|| Error::InvalidSubset(format!("root {i} is not simple")))
            })
            .collect()
    }

    /// Roots in the integer span of a subset of the simple roots.
    pub fn generated_subsystem(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let pos = self.check_subset(subset)?;
        Ok((0..self.roots.len())
            .filter(|&i| {
                self.simple_coords[i]
                    .iter()
                    .enumerate()
                    .all(|(k, c)| c.is_zero() || pos.contains(&k))
            })
            .collect())
    }

    /// `Hα` with `<Hα, X> = α(X)`.
    pub fn dual_vector(&self, f: &[Q]) -> Vector {
        let inv = linalg::inverse(&self.inner_product).expect("definite");
        linalg::mat_vec(&inv, f)
    }

    pub fn coroot(&self, i: usize) -> Vector {
        let h = self.dual_vector(&self.roots[i]);
        let n = dot(&self.roots[i], &h);
        linalg::scale(&(linalg::q(2) / n), &h)
    }

    /// `(a_F, a^F)`: the common kernel of `F` and the span of the coroots of `F`.
    pub fn parabolic_spaces(&self, subset: &[usize]) -> Result<(Subspace, Subspace)> {
        self.check_subset(subset)?;
        let fns: Vec<Vector> = subset.iter().map(|&i| self.roots[i].clone()).collect();
        let a_f = Subspace::new(self.a_dim, &linalg::nullspace(&fns, self.a_dim));
        let cor: Vec<Vector> = subset.iter().map(|&i| self.coroot(i)).collect();
        let a_upper = Subspace::new(self.a_dim, &cor);
        Ok((a_f, a_upper))
    }

    /// Positive roots outside `<F>` and positive roots inside `<F>`.
    pub fn parabolic_roots(&self, subset: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
        let gen = self.generated_subsystem(subset)?;
        let outside = self.positive().filter(|i| !gen.contains(i)).collect();
        let inside = self.positive().filter(|i| gen.contains(i)).collect();
        Ok((outside, inside))
    }

    /// Indices of the simple roots with nonzero coefficient in `f`, which must be
    /// a nonnegative integral combination of simple roots.
    pub fn support(&self, f: &[Q]) -> Result<Vec<usize>> {
        let c = self
            .coords_in_simple(f)
            .ok_or_else(|| Error::NotInPositiveLattice("not in the root span".into()))?;
        if !linalg::is_integer_vec(&c) || c.iter().any(|x| x.is_negative()) {
            return Err(Error::NotInPositiveLattice(linalg::fmt_vec(&c).join(",")));
        }
        Ok(c.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, _)| self.simple[k])
            .collect())
    }

    /// `ω'_β` for each simple `β`: `α(ω'_β) = δ` and orthogonal to the centre.
    pub fn fundamental_coweights(&self) -> Vec<Vector> {
        let simple = self.simple_roots();
        let h: Vec<Vector> = simple.iter().map(|s| self.dual_vector(s)).collect();
        let gram: Vec<Vector> = simple
            .iter()
            .map(|a| h.iter().map(|hb| dot(a, hb)).collect())
            .collect();
        let inv = linalg::inverse(&gram).unwrap_or_default();
        (0..simple.len())
            .map(|b| {
                let mut w = linalg::zeros(self.a_dim);
                for (g, hg) in h.iter().enumerate() {
                    linalg::axpy(&mut w, &inv[g][b], hg);
                }
                w
            })
            .collect()
    }

    /// Name of a root or nonnegative combination such as `a1+2a3`.
    pub fn name_of(&self, f: &[Q]) -> String {
        match self.coords_in_simple(f) {
            Some(c) => combination_name("a", &c),
            None => format!("[{}]", linalg::fmt_vec(f).join(",")),
        }
    }
}

pub fn combination_name(prefix: &str, c: &[Q]) -> String {
    let mut s = String::new();
    for (k, x) in c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let mag = x.abs();
        if x.is_negative() {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if mag != linalg::q(1) {
            s.push_str(&linalg::fmt_q(&mag));
        }
        s.push_str(&format!("{prefix}{}", k + 1));
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn dedup_len(v: &[Functional]) -> usize {
    let mut seen: Vec<&Functional> = Vec::new();
    for r in v {
        if !seen.contains(&r) {
            seen.push(r);
        }
    }
    seen.len()
}

fn positive_definite(m: &[Vector]) -> bool {
    // Sylvester's criterion through exact elimination.
    let n = m.len();
    let mut a = m.to_vec();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    true
}
