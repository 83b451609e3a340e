//! Matrix realizations of split-torus graded Lie algebras.

use crate::error::{Error, Result};
use crate::liealg::{AlgebraData, GradedLieAlgebra, Subspace};
use crate::linalg::{self, q, Vector, Q};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Square matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub n: usize,
    pub data: Vector,
}

impl Mat {
    pub fn zero(n: usize) -> Mat {
        Mat { n, data: linalg::zeros(n * n) }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn elementary(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zero(n);
        m.set(i, j, Q::one());
        m
    }

    pub fn diag(d: &[Q]) -> Mat {
        let mut m = Mat::zero(d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.n + j] = x;
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let n = self.n;
        let mut m = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        m.data[i * n + j] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn add(&self, o: &Mat) -> Mat {
        Mat { n: self.n, data: linalg::add(&self.data, &o.data) }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        Mat { n: self.n, data: linalg::sub(&self.data, &o.data) }
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat { n: self.n, data: linalg::scale(c, &self.data) }
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn commutator(&self, o: &Mat) -> Mat {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> Q {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn inverse(&self) -> Option<Mat> {
        let rows: Vec<Vector> = (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].to_vec())
            .collect();
        let inv = linalg::inverse(&rows)?;
        Some(Mat { n: self.n, data: inv.concat() })
    }

    /// `g X g^{-1}`
    pub fn conjugate(&self, x: &Mat) -> Mat {
        self.mul(x).mul(&self.inverse().expect("invertible"))
    }

    /// Exponential of a nilpotent matrix.
    pub fn exp_nilpotent(&self) -> Mat {
        let mut out = Mat::identity(self.n);
        let mut term = Mat::identity(self.n);
        for k in 1..=self.n {
            term = term.mul(self).scale(&(Q::one() / q(k as i64)));
            if linalg::is_zero(&term.data) {
                return out;
            }
            out = out.add(&term);
        }
        assert!(linalg::is_zero(&term.mul(self).data), "matrix is not nilpotent");
        out
    }

    pub fn permutation(perm: &[usize]) -> Mat {
        let mut m = Mat::zero(perm.len());
        for (i, &p) in perm.iter().enumerate() {
            m.set(p, i, Q::one());
        }
        m
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Mat::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        m
    }
}

/// A Lie algebra of `n x n` matrices with a basis adapted to a diagonal split
/// torus. The first `a_count` basis matrices span the torus.
#[derive(Clone, Debug)]
pub struct MatrixRealization {
    pub n: usize,
    pub labels: Vec<String>,
    pub basis: Vec<Mat>,
    pub a_count: usize,
    pub regular: Mat,
    /// Element of the group mapping the positive chamber to the negative one.
    pub longest: Mat,
    pivots: Vec<usize>,
    pivot_inverse: Vec<Vector>,
}

impl MatrixRealization {
    pub fn new(
        labels: Vec<String>,
        basis: Vec<Mat>,
        a_count: usize,
        regular: Mat,
        longest: Mat,
    ) -> Result<Self> {
        let n = regular.n;
        let dim = basis.len();
        let rows: Vec<Vector> = basis.iter().map(|b| b.data.clone()).collect();
        let (_, pivots) = linalg::rref(&rows, n * n);
        if pivots.len() != dim {
            return Err(Error::InvalidAlgebra("basis matrices are dependent".into()));
        }
        let sub: Vec<Vector> = rows
            .iter()
            .map(|r| pivots.iter().map(|&p| r[p].clone()).collect())
            .collect();
        let pivot_inverse = linalg::inverse(&sub).expect("independent pivots");
        Ok(MatrixRealization { n, labels, basis, a_count, regular, longest, pivots, pivot_inverse })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a matrix in the basis, if it lies in the algebra.
    pub fn coords(&self, m: &Mat) -> Option<Vector> {
        let d: Vector = self.pivots.iter().map(|&p| m.data[p].clone()).collect();
        let t = linalg::transpose(&self.pivot_inverse, self.dim());
        let c = linalg::mat_vec(&t, &d);
        let mut back = Mat::zero(self.n);
        for (ci, b) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                back = back.add(&b.scale(ci));
            }
        }
        (back == *m).then_some(c)
    }

    pub fn matrix_of(&self, v: &[Q]) -> Mat {
        let mut m = Mat::zero(self.n);
        for (ci, b) in v.iter().zip(&self.basis) {
            if !ci.is_zero() {
                m = m.add(&b.scale(ci));
            }
        }
        m
    }

    pub fn span(&self, mats: &[Mat]) -> Result<Subspace> {
        let v = mats
            .iter()
            .map(|m| {
                self.coords(m)
                    .ok_or_else(|| Error::InvalidAlgebra("matrix outside the algebra".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::new(self.dim(), &v))
    }

    pub fn to_algebra(&self) -> Result<GradedLieAlgebra> {
        let dim = self.dim();
        let mut structure = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let c = self
                    .coords(&self.basis[i].commutator(&self.basis[j]))
                    .ok_or_else(|| Error::InvalidAlgebra("not closed under brackets".into()))?;
                for (k, x) in c.into_iter().enumerate() {
                    if !x.is_zero() {
                        structure.push((i, j, k, x));
                    }
                }
            }
        }
        let form: Vec<Vector> = (0..dim)
            .map(|i| (0..dim).map(|j| self.basis[i].mul(&self.basis[j]).trace()).collect())
            .collect();
        let cols = self
            .basis
            .iter()
            .map(|b| self.coords(&b.transpose().scale(&q(-1))))
            .collect::<Option<Vec<_>>>();
        let theta = cols.map(|c| linalg::transpose(&c, dim));
        let regular = self
            .coords(&self.regular)
            .ok_or_else(|| Error::InvalidAlgebra("regular element outside a".into()))?;
        let data = AlgebraData {
            labels: self.labels.clone(),
            a_basis: (0..self.a_count).collect(),
            structure,
            form: Some(form),
            theta,
            regular: regular[..self.a_count].to_vec(),
        };
        GradedLieAlgebra::new(data, true)
    }

    /// Basis vectors on which the regular element acts with a negative
    /// eigenvalue, i.e. the matrices spanning the opposite nilradical.
    pub fn negative_root_vectors(&self) -> Vec<usize> {
        (self.a_count..self.dim())
            .filter(|&i| {
                let c = self.regular.commutator(&self.basis[i]);
                let ratio = first_ratio(&c, &self.basis[i]);
                ratio.is_some_and(|r| r < Q::zero())
            })
            .collect()
    }

    /// Negative root vectors whose root is minus a simple root.
    pub fn negative_simple_root_vectors(&self) -> Vec<usize> {
        let neg = self.negative_root_vectors();
        let weight = |i: usize| -> Vector {
            (0..self.a_count)
                .map(|k| first_ratio(&self.basis[k].commutator(&self.basis[i]), &self.basis[i]).unwrap_or_default())
                .collect()
        };
        let ws: Vec<Vector> = neg.iter().map(|&i| weight(i)).collect();
        neg.iter()
            .enumerate()
            .filter(|(a, _)| {
                !ws.iter().any(|x| ws.iter().any(|y| linalg::add(x, y) == ws[*a]))
            })
            .map(|(_, &i)| i)
            .collect()
    }
}

/// `c / b` when `c` is a multiple of `b`.
fn first_ratio(c: &Mat, b: &Mat) -> Option<Q> {
    let p = b.data.iter().position(|x| !x.is_zero())?;
    let r = &c.data[p] / &b.data[p];
    (c.data == linalg::scale(&r, &b.data)).then_some(r)
}

fn weight_of(diag: &[Vec<Q>], i: usize, j: usize) -> Vector {
    diag.iter().map(|d| &d[i] - &d[j]).collect()
}

/// `sl(n, R)` with the diagonal torus and elementary root vectors.
pub fn sl(n: usize) -> Result<MatrixRealization> {
    if n < 2 {
        return Err(Error::UnsupportedEntry(format!("sl({n})")));
    }
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for k in 0..n - 1 {
        labels.push(format!("H{}", k + 1));
        basis.push(Mat::elementary(n, k, k).sub(&Mat::elementary(n, k + 1, k + 1)));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels.push(format!("E{}{}", i + 1, j + 1));
                basis.push(Mat::elementary(n, i, j));
            }
        }
    }
    let d: Vector = (0..n).map(|i| q((n - 1) as i64 - 2 * i as i64)).collect();
    let rev: Vec<usize> = (0..n).rev().collect();
    MatrixRealization::new(labels, basis, n - 1, Mat::diag(&d), Mat::permutation(&rev))
}

/// The algebra `{X : X^T J + J X = 0}` graded by a diagonal torus.
pub fn orthogonal(j: &Mat, torus: &[Vec<Q>], regular: &[Q], longest: Mat) -> Result<MatrixRealization> {
    let n = j.n;
    let mut positions: Vec<(Vector, Vec<(usize, usize)>)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let w = weight_of(torus, a, b);
            match positions.iter_mut().find(|(x, _)| *x == w) {
                Some((_, v)) => v.push((a, b)),
                None => positions.push((w, vec![(a, b)])),
            }
        }
    }
    positions.sort_by(|x, y| linalg::cmp_vec(&y.0, &x.0));
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for (k, d) in torus.iter().enumerate() {
        labels.push(format!("H{}", k + 1));
        basis.push(Mat::diag(d));
    }
    let mut m_part = Vec::new();
    let mut roots = Vec::new();
    for (w, entries) in &positions {
        // X supported on `entries` with X^T J + J X = 0
        let eqs: Vec<Vector> = (0..n * n)
            .map(|e| {
                let (r, c) = (e / n, e % n);
                entries
                    .iter()
                    .map(|&(a, b)| {
                        let x = Mat::elementary(n, a, b);
                        x.transpose().mul(j).add(&j.mul(&x)).get(r, c).clone()
                    })
                    .collect()
            })
            .collect();
        for v in linalg::nullspace(&eqs, entries.len()) {
            let mut m = Mat::zero(n);
            for (x, &(a, b)) in v.iter().zip(entries) {
                m.set(a, b, x.clone());
            }
            if linalg::is_zero(w) {
                m_part.push(m);
            } else {
                roots.push(m);
            }
        }
    }
    // the compact part of the centraliser: complement of the torus
    let tor: Vec<Mat> = torus.iter().map(|d| Mat::diag(d)).collect();
    let zero_rows: Vec<Vector> = m_part.iter().map(|m| m.data.clone()).collect();
    let eqs: Vec<Vector> = tor
        .iter()
        .map(|t| m_part.iter().map(|m| m.mul(t).trace()).collect())
        .collect();
    for (k, c) in linalg::nullspace(&eqs, zero_rows.len()).into_iter().enumerate() {
        let mut m = Mat::zero(n);
        for (ci, z) in c.iter().zip(&m_part) {
            m = m.add(&z.scale(ci));
        }
        labels.push(format!("M{}", k + 1));
        basis.push(m);
    }
    for m in roots {
        let p = m.data.iter().position(|x| !x.is_zero()).unwrap();
        labels.push(format!("X{}{}", p / n + 1, p % n + 1));
        basis.push(m);
    }
    MatrixRealization::new(labels, basis, torus.len(), Mat::diag(regular), longest)
}

/// `so(1, n)`: real rank one, `m = so(n-1)`.
pub fn so_1n(n: usize) -> Result<MatrixRealization> {
    if n < 2 {
        return Err(Error::UnsupportedEntry(format!("so(1,{n})")));
    }
    let size = n + 1;
    let mut j = Mat::zero(size);
    j.set(0, n, Q::one());
    j.set(n, 0, Q::one());
    for i in 1..n {
        j.set(i, i, Q::one());
    }
    let mut d = linalg::zeros(size);
    d[0] = q(1);
    d[n] = q(-1);
    let mut perm: Vec<usize> = (0..size).collect();
    perm.swap(0, n);
    orthogonal(&j, &[d.clone()], &d, Mat::permutation(&perm))
}

/// `so(2, 2)`, split of rank two.
pub fn so_22() -> Result<MatrixRealization> {
    let mut j = Mat::zero(4);
    for i in 0..4 {
        j.set(i, 3 - i, Q::one());
    }
    let torus = vec![linalg::to_q(&[1, 0, 0, -1]), linalg::to_q(&[0, 1, -1, 0])];
    let rev: Vec<usize> = (0..4).rev().collect();
    orthogonal(&j, &torus, &linalg::to_q(&[2, 1, -1, -2]), Mat::permutation(&rev))
}

/// `sp(1, R)`, realised as 2 x 2 matrices preserving the standard symplectic form.
pub fn sp_1() -> Result<MatrixRealization> {
    sl(2)
}

/// Block diagonal direct sum; torus elements of all factors come first.
pub fn direct_sum(factors: &[MatrixRealization]) -> Result<MatrixRealization> {
    let sizes: Vec<usize> = factors.iter().map(|f| f.n).collect();
    let embed = |k: usize, m: &Mat| -> Mat {
        let blocks: Vec<Mat> = sizes
            .iter()
            .enumerate()
            .map(|(i, &s)| if i == k { m.clone() } else { Mat::zero(s) })
            .collect();
        Mat::block_diag(&blocks)
    };
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        for i in 0..f.a_count {
            labels.push(format!("{}:{}", k + 1, f.labels[i]));
            basis.push(embed(k, &f.basis[i]));
        }
    }
    let a_count = basis.len();
    for (k, f) in factors.iter().enumerate() {
        for i in f.a_count..f.dim() {
            labels.push(format!("{}:{}", k + 1, f.labels[i]));
            basis.push(embed(k, &f.basis[i]));
        }
    }
    // distinct scalings keep the regular element regular on the product
    let regs: Vec<Mat> = factors.iter().map(|f| f.regular.clone()).collect();
    let longest: Vec<Mat> = factors.iter().map(|f| f.longest.clone()).collect();
    MatrixRealization::new(labels, basis, a_count, Mat::block_diag(&regs), Mat::block_diag(&longest))
}

/// Embeds `X -> (g_1 X g_1^{-1}, ..., g_k X g_k^{-1})` into a direct sum of copies.
pub fn twisted_diagonal(factor: &MatrixRealization, sum: &MatrixRealization, twists: &[Mat]) -> Result<Subspace> {
    let mats: Vec<Mat> = factor
        .basis
        .iter()
        .map(|x| {
            let blocks: Vec<Mat> = twists.iter().map(|g| g.conjugate(x)).collect();
            Mat::block_diag(&blocks)
        })
        .collect();
    sum.span(&mats)
}


/// Subalgebra `{(x, A_2 x, ...)}` from the images of the factor basis under
/// each twist; `images[k][i]` is the image of basis element `i` in factor `k`.
pub fn diagonal_from_images(sum: &MatrixRealization, images: &[Vec<Mat>]) -> Result<Subspace> {
    let dim = images.first().map_or(0, |v| v.len());
    let mats: Vec<Mat> = (0..dim)
        .map(|i| {
            let blocks: Vec<Mat> = images.iter().map(|im| im[i].clone()).collect();
            Mat::block_diag(&blocks)
        })
        .collect();
    sum.span(&mats)
}

/// An `sl(2)`-triple `(h, e, f)` through the first positive root vector of a
/// rank one realization, with `f` a multiple of `e^T` and `h` in the torus.
pub fn sl2_triple(r: &MatrixRealization) -> Result<(Mat, Mat, Mat)> {
    let i = (r.a_count..r.dim())
        .find(|&i| first_ratio(&r.regular.commutator(&r.basis[i]), &r.basis[i]).is_some_and(|x| x > Q::zero()))
        .ok_or_else(|| Error::InvalidAlgebra("no root vectors".into()))?;
    let e = r.basis[i].clone();
    let h0 = e.commutator(&e.transpose());
    let c = first_ratio(&h0.commutator(&e), &e)
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::InvalidAlgebra("degenerate root vector".into()))?;
    let two_over_c = q(2) / c;
    Ok((h0.scale(&two_over_c), e.clone(), e.transpose().scale(&two_over_c)))
}

/// Images of the basis under the automorphism induced by the `2 x 2` matrix
/// `p` acting through [`sl2_triple`]. Needs `p[0][0] != 0` and even weights of
/// `h` on the algebra.
pub fn sl2_automorphism(r: &MatrixRealization, p: [[Q; 2]; 2]) -> Result<Vec<Mat>> {
    let (h, e, f) = sl2_triple(r)?;
    let [[a, b], [c, d]] = p;
    if a.is_zero() {
        return Err(Error::InvalidAlgebra("twist needs a nonzero corner".into()));
    }
    let det = &a * &d - &b * &c;
    if det.is_zero() {
        return Err(Error::InvalidAlgebra("singular twist".into()));
    }
    // p = lower(x) diag(a, det/a) upper(y)
    let x = &c / &a;
    let y = &b / &a;
    let ratio = &a * &a / &det;
    let upper = e.scale(&y).exp_nilpotent();
    let lower = f.scale(&x).exp_nilpotent();
    r.basis
        .iter()
        .map(|z| {
            let z = upper.conjugate(z);
            // weight decomposition of z under ad h, scaled by ratio^(k/2)
            let coords = r.coords(&z).ok_or_else(|| Error::InvalidAlgebra("twist leaves the algebra".into()))?;
            let mut out = Mat::zero(r.n);
            for (ci, bi) in coords.iter().zip(&r.basis) {
                if ci.is_zero() {
                    continue;
                }
                let k = first_ratio(&h.commutator(bi), bi)
                    .filter(|k| k.is_integer())
                    .ok_or_else(|| Error::InvalidAlgebra("basis not graded by h".into()))?;
                let k: num_bigint::BigInt = k.to_integer();
                if k.is_odd() {
                    return Err(Error::InvalidAlgebra("odd weight for the twist".into()));
                }
                let half: i32 = ToPrimitive::to_i32(&(k / 2)).unwrap_or(0);
                let s: Q = num_traits::Pow::pow(&ratio, half);
                out = out.add(&bi.scale(&(ci * s)));
            }
            Ok(lower.conjugate(&out))
        })
        .collect()
}
