//! Real reductive Lie algebras with a basis graded by restricted roots.

use crate::error::{Error, Result};
use crate::linalg::{self, axpy, is_zero, zeros, Vector, Q};
use crate::rootsys::RestrictedRootSystem;
use num_traits::Zero;

pub use crate::linalg::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grade {
    /// The k-th basis vector of the split torus `a`.
    A(usize),
    /// Centraliser of `a` in the compact part.
    M,
    /// Root space of the root with this index.
    Root(usize),
}

/// Raw description of a graded Lie algebra.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub labels: Vec<String>,
    /// Basis indices spanning `a`, in the order used for root coordinates.
    pub a_basis: Vec<usize>,
    /// Nonzero structure constants `[e_i, e_j] = sum c e_k` for `i < j`.
    pub structure: Vec<(usize, usize, usize, Q)>,
    /// Invariant nondegenerate symmetric form; the Killing form when absent.
    pub form: Option<Vec<Vector>>,
    /// Cartan involution as a matrix acting on coordinate vectors.
    pub theta: Option<Vec<Vector>>,
    /// Element of `a` (in `a` coordinates) selecting the positive roots.
    pub regular: Vector,
}

#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    labels: Vec<String>,
    grades: Vec<Grade>,
    a_basis: Vec<usize>,
    brackets: Vec<Vec<Vec<(usize, Q)>>>,
    form: Vec<Vector>,
    theta: Option<Vec<Vector>>,
    roots: RestrictedRootSystem,
    root_spaces: Vec<Vec<usize>>,
    regular: Vector,
    structure: Vec<(usize, usize, usize, Q)>,
}

impl GradedLieAlgebra {
    /// Builds the algebra. With `verify` the Jacobi identity, the grading and
    /// the invariance of the form are checked.
    pub fn new(data: AlgebraData, verify: bool) -> Result<Self> {
        let n = data.labels.len();
        let mut brackets = vec![vec![Vec::<(usize, Q)>::new(); n]; n];
        let mut structure = Vec::new();
        for (i, j, k, c) in data.structure {
            if i >= n || j >= n || k >= n {
                return Err(Error::InvalidAlgebra("structure constant index out of range".into()));
            }
            if i == j || c.is_zero() {
                continue;
            }
            let (a, b, c) = if i < j { (i, j, c) } else { (j, i, -c) };
            if brackets[a][b].iter().any(|(kk, _)| *kk == k) {
                return Err(Error::InvalidAlgebra(format!("duplicate constant for [{a},{b}]")));
            }
            brackets[a][b].push((k, c.clone()));
            brackets[b][a].push((k, -c.clone()));
            structure.push((a, b, k, c));
        }
        structure.sort_by_key(|x| (x.0, x.1, x.2));
        for row in brackets.iter_mut() {
            for cell in row.iter_mut() {
                cell.sort_by_key(|(k, _)| *k);
            }
        }
        let a_dim = data.a_basis.len();
        if data.a_basis.iter().any(|&i| i >= n) {
            return Err(Error::InvalidAlgebra("a basis index out of range".into()));
        }
        if data.regular.len() != a_dim {
            return Err(Error::DimensionMismatch("regular element length".into()));
        }
        // weights of every basis vector under ad(a)
        let mut weights: Vec<Vector> = Vec::with_capacity(n);
        for i in 0..n {
            let mut w = zeros(a_dim);
            for (k, &h) in data.a_basis.iter().enumerate() {
                let br = &brackets[h][i];
                match br.as_slice() {
                    [] => {}
                    [(kk, c)] if *kk == i => w[k] = c.clone(),
                    _ => {
                        return Err(Error::InvalidAlgebra(format!(
                            "basis vector {} is not an a-weight vector",
                            data.labels[i]
                        )))
                    }
                }
            }
            weights.push(w);
        }
        let mut root_fns: Vec<Vector> = Vec::new();
        for w in &weights {
            if !is_zero(w) && !root_fns.contains(w) {
                root_fns.push(w.clone());
            }
        }
        let form = match data.form {
            Some(f) => {
                if f.len() != n || f.iter().any(|r| r.len() != n) {
                    return Err(Error::DimensionMismatch("form size".into()));
                }
                f
            }
            None => killing_form(n, &brackets),
        };
        if linalg::rank(&form, n) != n {
            return Err(Error::InvalidAlgebra("invariant form is degenerate".into()));
        }
        let ip: Vec<Vector> = data
            .a_basis
            .iter()
            .map(|&i| data.a_basis.iter().map(|&j| form[i][j].clone()).collect())
            .collect();
        let roots = RestrictedRootSystem::new(a_dim, &root_fns, ip, &data.regular)?;
        let mut grades = Vec::with_capacity(n);
        let mut root_spaces = vec![Vec::new(); roots.roots().len()];
        for (i, w) in weights.iter().enumerate() {
            if is_zero(w) {
                match data.a_basis.iter().position(|&h| h == i) {
                    Some(k) => grades.push(Grade::A(k)),
                    None => grades.push(Grade::M),
                }
            } else {
                let r = roots.index_of(w).expect("weight is a root");
                root_spaces[r].push(i);
                grades.push(Grade::Root(r));
            }
        }
        let g = GradedLieAlgebra {
            labels: data.labels,
            grades,
            a_basis: data.a_basis,
            brackets,
            form,
            theta: data.theta,
            roots,
            root_spaces,
            regular: data.regular,
            structure,
        };
        if verify {
            g.verify()?;
        }
        Ok(g)
    }

    fn verify(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let ei = linalg::unit(n, i);
                    let ej = linalg::unit(n, j);
                    let ek = linalg::unit(n, k);
                    let mut s = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let t = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let u = self.bracket(&ek, &self.bracket(&ei, &ej));
                    axpy(&mut s, &linalg::q(1), &t);
                    axpy(&mut s, &linalg::q(1), &u);
                    if !is_zero(&s) {
                        return Err(Error::InvalidAlgebra(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.form[i][j] != self.form[j][i] {
                    return Err(Error::InvalidAlgebra("form not symmetric".into()));
                }
                let eij = self.bracket_basis(i, j);
                for k in 0..n {
                    // B([ei,ej],ek) = B(ei,[ej,ek])
                    let lhs: Q = eij.iter().map(|(l, c)| c * &self.form[*l][k]).sum();
                    let rhs: Q = self.brackets[j][k].iter().map(|(l, c)| c * &self.form[i][*l]).sum();
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra("form is not invariant".into()));
                    }
                }
            }
        }
        if let Some(theta) = &self.theta {
            if theta.len() != n || theta.iter().any(|r| r.len() != n) {
                return Err(Error::DimensionMismatch("theta size".into()));
            }
            if linalg::mat_mul(theta, theta) != linalg::identity(n) {
                return Err(Error::InvalidAlgebra("theta is not an involution".into()));
            }
            for i in 0..n {
                for j in 0..n {
                    let ti = self.apply_theta(&linalg::unit(n, i)).unwrap();
                    let tj = self.apply_theta(&linalg::unit(n, j)).unwrap();
                    let lhs = self.apply_theta(&self.bracket(&linalg::unit(n, i), &linalg::unit(n, j))).unwrap();
                    if lhs != self.bracket(&ti, &tj) {
                        return Err(Error::InvalidAlgebra("theta is not an automorphism".into()));
                    }
                }
            }
            for (r, space) in self.root_spaces.iter().enumerate() {
                let target = self.root_space(self.roots.negative_of(r));
                for &i in space {
                    if !target.contains(&self.apply_theta(&linalg::unit(n, i)).unwrap()) {
                        return Err(Error::InvalidAlgebra("theta does not invert the grading".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn grade(&self, i: usize) -> &Grade {
        &self.grades[i]
    }

    pub fn roots(&self) -> &RestrictedRootSystem {
        &self.roots
    }

    pub fn a_basis(&self) -> &[usize] {
        &self.a_basis
    }

    pub fn a_dim(&self) -> usize {
        self.a_basis.len()
    }

    pub fn form(&self) -> &[Vector] {
        &self.form
    }

    pub fn theta(&self) -> Option<&[Vector]> {
        self.theta.as_deref()
    }

    pub fn regular(&self) -> &Vector {
        &self.regular
    }

    pub fn structure(&self) -> &[(usize, usize, usize, Q)] {
        &self.structure
    }

    pub fn apply_theta(&self, x: &[Q]) -> Option<Vector> {
        self.theta.as_ref().map(|t| linalg::mat_vec(t, x))
    }

    /// Basis indices of the root space of root `r`.
    pub fn root_space_indices(&self, r: usize) -> &[usize] {
        &self.root_spaces[r]
    }

    pub fn multiplicity(&self, r: usize) -> usize {
        self.root_spaces[r].len()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in &self.brackets[i][j] {
                    out[*k] += &c * s;
                }
            }
        }
        out
    }

    /// Matrix of `ad x`; column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Q]) -> Vec<Vector> {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket(x, &linalg::unit(n, j))).collect();
        linalg::transpose(&cols, n)
    }

    pub fn trace_ad(&self, x: &[Q]) -> Q {
        let n = self.dim();
        let mut t = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in &self.brackets[i][j] {
                    if *k == j {
                        t += xi * c;
                    }
                }
            }
        }
        t
    }

    /// Embeds an element of `a` given in `a` coordinates.
    pub fn from_a(&self, h: &[Q]) -> Vector {
        let mut v = zeros(self.dim());
        for (k, &i) in self.a_basis.iter().enumerate() {
            v[i] = h[k].clone();
        }
        v
    }

    /// `a` coordinates of a vector, which must lie in `a`.
    pub fn to_a(&self, v: &[Q]) -> Option<Vector> {
        let coords: Vector = self.a_basis.iter().map(|&i| v[i].clone()).collect();
        (self.from_a(&coords).as_slice() == v).then_some(coords)
    }

    pub fn span_of_grades(&self, pred: impl Fn(&Grade) -> bool) -> Subspace {
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| pred(&self.grades[i])).collect();
        Subspace::coordinate(self.dim(), &idx)
    }

    pub fn root_space(&self, r: usize) -> Subspace {
        Subspace::coordinate(self.dim(), &self.root_spaces[r])
    }

    pub fn a_space(&self) -> Subspace {
        self.span_of_grades(|g| matches!(g, Grade::A(_)))
    }

    /// `m ⊕ a`
    pub fn zero_grade(&self) -> Subspace {
        self.span_of_grades(|g| !matches!(g, Grade::Root(_)))
    }

    pub fn p_min(&self) -> Subspace {
        self.span_of_grades(|g| match g {
            Grade::Root(r) => self.roots.is_positive(*r),
            _ => true,
        })
    }

    /// Levi part `l_F`: zero grade plus the root spaces of `<F>`.
    pub fn levi(&self, subset: &[usize]) -> Result<Subspace> {
        let gen = self.roots.generated_subsystem(subset)?;
        Ok(self.span_of_grades(|g| match g {
            Grade::Root(r) => gen.contains(r),
            _ => true,
        }))
    }

    /// Nilradical `u_F` (positive roots outside `<F>`).
    pub fn nilradical(&self, subset: &[usize]) -> Result<Subspace> {
        let (out, _) = self.roots.parabolic_roots(subset)?;
        Ok(self.span_of_grades(|g| matches!(g, Grade::Root(r) if out.contains(r))))
    }

    /// Opposite nilradical `ū_F`.
    pub fn opposite_nilradical(&self, subset: &[usize]) -> Result<Subspace> {
        let (out, _) = self.roots.parabolic_roots(subset)?;
        let neg: Vec<usize> = out.iter().map(|&r| self.roots.negative_of(r)).collect();
        Ok(self.span_of_grades(|g| matches!(g, Grade::Root(r) if neg.contains(r))))
    }

    pub fn parabolic(&self, subset: &[usize]) -> Result<Subspace> {
        Ok(self.levi(subset)?.sum(&self.nilradical(subset)?))
    }

    pub fn opposite_parabolic(&self, subset: &[usize]) -> Result<Subspace> {
        Ok(self.levi(subset)?.sum(&self.opposite_nilradical(subset)?))
    }

    fn check_parent(&self, s: &Subspace) -> Result<()> {
        if s.ambient() != self.dim() {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.check_parent(s)?;
        let b = s.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !s.contains(&self.bracket(&b[i], &b[j])) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn normalizes(&self, x: &[Q], s: &Subspace) -> bool {
        s.basis().iter().all(|b| s.contains(&self.bracket(x, b)))
    }

    /// Trace of `ad x` on an `ad x`-invariant subspace.
    pub fn trace_on(&self, s: &Subspace, x: &[Q]) -> Result<Q> {
        self.check_parent(s)?;
        if !self.normalizes(x, s) {
            return Err(Error::NotNormalizing);
        }
        let mut t = Q::zero();
        for (b, &p) in s.basis().iter().zip(s.pivots()) {
            t += &self.bracket(x, b)[p];
        }
        Ok(t)
    }

    /// Trace of `ad x` on the quotient `g / s`.
    pub fn trace_ad_on_quotient(&self, s: &Subspace, x: &[Q]) -> Result<Q> {
        Ok(self.trace_ad(x) - self.trace_on(s, x)?)
    }

    /// Values of `X -> tr ad_{g/h}(X)` on the echelon basis of `h`.
    pub fn unimodularity_functional(&self, h: &Subspace) -> Result<Vector> {
        if !self.is_subalgebra(h)? {
            return Err(Error::NotSubalgebra);
        }
        h.basis().iter().map(|b| self.trace_ad_on_quotient(h, b)).collect()
    }

    pub fn is_unimodular(&self, h: &Subspace) -> Result<bool> {
        Ok(self.unimodularity_functional(h)?.iter().all(Zero::is_zero))
    }

    pub fn intersect(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_parent(a)?;
        self.check_parent(b)?;
        Ok(a.intersect(b))
    }

    pub fn sum(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_parent(a)?;
        self.check_parent(b)?;
        Ok(a.sum(b))
    }

    /// The Levi subalgebra `l_F` as an algebra in its own right, on the subset
    /// of parent basis vectors it contains. Returns the parent indices too.
    pub fn levi_algebra(&self, subset: &[usize]) -> Result<(GradedLieAlgebra, Vec<usize>)> {
        let gen = self.roots.generated_subsystem(subset)?;
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&i| match &self.grades[i] {
                Grade::Root(r) => gen.contains(r),
                _ => true,
            })
            .collect();
        let pos = |i: usize| keep.iter().position(|&k| k == i);
        let mut structure = Vec::new();
        for (i, j, k, c) in &self.structure {
            if let (Some(a), Some(b)) = (pos(*i), pos(*j)) {
                let kk = pos(*k).ok_or_else(|| Error::InvalidAlgebra("Levi not closed".into()))?;
                structure.push((a, b, kk, c.clone()));
            }
        }
        let form: Vec<Vector> = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.form[i][j].clone()).collect())
            .collect();
        let theta = self.theta.as_ref().map(|t| {
            keep.iter()
                .map(|&i| keep.iter().map(|&j| t[i][j].clone()).collect())
                .collect()
        });
        let data = AlgebraData {
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            a_basis: self.a_basis.iter().map(|&i| pos(i).unwrap()).collect(),
            structure,
            form: Some(form),
            theta,
            regular: self.regular.clone(),
        };
        Ok((GradedLieAlgebra::new(data, false)?, keep))
    }
}

/// Restricts parent vectors (supported on `keep`) to subalgebra coordinates.
pub fn restrict_coords(keep: &[usize], v: &[Q]) -> Vector {
    keep.iter().map(|&i| v[i].clone()).collect()
}

/// Inverse of [`restrict_coords`].
pub fn extend_coords(keep: &[usize], n: usize, v: &[Q]) -> Vector {
    let mut out = zeros(n);
    for (k, &i) in keep.iter().enumerate() {
        out[i] = v[k].clone();
    }
    out
}

fn killing_form(n: usize, brackets: &[Vec<Vec<(usize, Q)>>]) -> Vec<Vector> {
    // B(e_i,e_j) = sum_{k,l} c_{ik}^l c_{jl}^k
    let mut b = vec![zeros(n); n];
    for i in 0..n {
        for j in i..n {
            let mut s = Q::zero();
            for k in 0..n {
                for (l, c) in &brackets[i][k] {
                    for (kk, d) in &brackets[j][*l] {
                        if *kk == k {
                            s += c * d;
                        }
                    }
                }
            }
            b[i][j] = s.clone();
            b[j][i] = s;
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, to_q};

    /// sl2 with basis H, E, F.
    pub(crate) fn sl2() -> GradedLieAlgebra {
        let data = AlgebraData {
            labels: vec!["H".into(), "E".into(), "F".into()],
            a_basis: vec![0],
            structure: vec![(0, 1, 1, q(2)), (0, 2, 2, q(-2)), (1, 2, 0, q(1))],
            form: None,
            theta: None,
            regular: to_q(&[1]),
        };
        GradedLieAlgebra::new(data, true).unwrap()
    }

    #[test]
    fn sl2_grading_and_killing() {
        let g = sl2();
        assert_eq!(g.roots().rank(), 1);
        assert_eq!(g.form()[0][0], q(8));
        assert_eq!(g.form()[1][2], q(4));
        assert_eq!(*g.grade(1), Grade::Root(0));
    }

    #[test]
    fn trace_on_borel_quotient() {
        let g = sl2();
        let b = Subspace::new(3, &[to_q(&[1, 0, 0]), to_q(&[0, 1, 0])]);
        assert_eq!(g.trace_ad_on_quotient(&b, &to_q(&[1, 0, 0])).unwrap(), q(-2));
        assert_eq!(
            g.trace_ad_on_quotient(&b, &to_q(&[0, 0, 1])),
            Err(Error::NotNormalizing)
        );
        let f = g.unimodularity_functional(&b).unwrap();
        assert_eq!(f, vec![q(-2), q(0)]);
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        let data = AlgebraData {
            labels: vec!["H".into(), "E".into(), "F".into()],
            a_basis: vec![0],
            structure: vec![(0, 1, 1, q(2)), (0, 2, 2, q(-2)), (1, 2, 0, q(1)), (1, 2, 1, q(1))],
            form: Some(linalg::identity(3)),
            theta: None,
            regular: to_q(&[1]),
        };
        assert!(GradedLieAlgebra::new(data, true).is_err());
    }

    #[test]
    fn parent_mismatch() {
        let g = sl2();
        let s = Subspace::full(4);
        assert_eq!(g.intersect(&s, &Subspace::full(3)), Err(Error::ParentMismatch));
    }
}
