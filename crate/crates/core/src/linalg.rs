//! Exact rational vectors, matrices and subspaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub type Q = BigRational;
pub type Vector = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn to_q(v: &[i64]) -> Vector {
    v.iter().map(|&x| q(x)).collect()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad rational `{s}`"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad rational `{s}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Q::new(n, d))
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vec(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn is_zero(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Q]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// `y += c * x`
pub fn axpy(y: &mut [Q], c: &Q, x: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += c * xi;
        }
    }
}

pub fn is_integer_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Positive multiple of `v` with coprime integer entries. Zero stays zero.
pub fn primitive(v: &[Q]) -> Vector {
    if is_zero(v) {
        return v.to_vec();
    }
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

pub fn cmp_vec(a: &[Q], b: &[Q]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Reduced row echelon form. Returns nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector], ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.iter().filter(|r| !is_zero(r)).cloned().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis (in reduced form) of `{x : row . x = 0 for every row}`.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (m, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = zeros(ncols);
        v[free] = Q::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    rref(&basis, ncols).0
}

/// Some solution of `A x = b` (free variables set to zero), if one exists.
pub fn solve(a: &[Vector], b: &[Q], ncols: usize) -> Option<Vector> {
    let aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zeros(ncols);
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Coefficients `c` with `sum c_i basis_i = v`, if `v` lies in the span.
pub fn coordinates(basis: &[Vector], v: &[Q]) -> Option<Vector> {
    let n = v.len();
    let a: Vec<Vector> = (0..n)
        .map(|j| basis.iter().map(|b| b[j].clone()).collect())
        .collect();
    solve(&a, v, basis.len())
}

pub fn transpose(m: &[Vector], ncols: usize) -> Vec<Vector> {
    (0..ncols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_vec(m: &[Vector], v: &[Q]) -> Vector {
    m.iter().map(|r| dot(r, v)).collect()
}

pub fn mat_mul(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let ncols = b.first().map_or(0, |r| r.len());
    let bt = transpose(b, ncols);
    a.iter()
        .map(|r| bt.iter().map(|c| dot(r, c)).collect())
        .collect()
}

pub fn identity(n: usize) -> Vec<Vector> {
    (0..n).map(|i| unit(n, i)).collect()
}

pub fn inverse(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let aug: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend(unit(n, i));
            row
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `a^T M b`
pub fn bilinear(m: &[Vector], a: &[Q], b: &[Q]) -> Q {
    dot(a, &mat_vec(m, b))
}

/// A linear subspace of `Q^ambient`, stored as a basis in reduced row echelon
/// form so that equality of subspaces is equality of bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize, vectors: &[Vector]) -> Self {
        let (basis, pivots) = rref(vectors, ambient);
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: vec![], pivots: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::new(ambient, &identity(ambient))
    }

    /// Span of the given coordinate axes.
    pub fn coordinate(ambient: usize, axes: &[usize]) -> Self {
        let v: Vec<Vector> = axes.iter().map(|&i| unit(ambient, i)).collect();
        Subspace::new(ambient, &v)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of a member with respect to the echelon basis.
    pub fn coords_of(&self, v: &[Q]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = zeros(self.ambient);
        for (ci, b) in c.iter().zip(&self.basis) {
            axpy(&mut w, ci, b);
        }
        (w.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::new(self.ambient, &v)
    }

    /// Vectors orthogonal to the subspace under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        Subspace::new(self.ambient, &nullspace(&self.basis, self.ambient))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let mut eqs = nullspace(&self.basis, self.ambient);
        eqs.extend(nullspace(&other.basis, self.ambient));
        Subspace::new(self.ambient, &nullspace(&eqs, self.ambient))
    }

    /// Orthogonal complement with respect to a symmetric bilinear form.
    pub fn perp(&self, form: &[Vector]) -> Subspace {
        let eqs: Vec<Vector> = self.basis.iter().map(|b| mat_vec(form, b)).collect();
        Subspace::new(self.ambient, &nullspace(&eqs, self.ambient))
    }

    /// Image under `v -> rows . v` as a subspace of `Q^rows.len()`.
    pub fn image(&self, rows: &[Vector]) -> Subspace {
        let v: Vec<Vector> = self.basis.iter().map(|b| mat_vec(rows, b)).collect();
        Subspace::new(rows.len(), &v)
    }
}

/// Projection onto `target` along `kernel`, expressed in `target` coordinates.
/// Requires `kernel ⊕ span(target)` to be the whole ambient space.
pub fn split_coordinates(kernel: &[Vector], target: &[Vector], v: &[Q]) -> Option<Vector> {
    let mut all = kernel.to_vec();
    all.extend(target.iter().cloned());
    let c = coordinates(&all, v)?;
    Some(c[kernel.len()..].to_vec())
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7/2", "5/9"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(fmt_q(&parse_q("4/6").unwrap()), "2/3");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn nullspace_of_rank_one_row() {
        let ns = nullspace(&[to_q(&[1, 1, 1])], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(v, &to_q(&[1, 1, 1])).is_zero());
        }
    }

    #[test]
    fn inverse_of_cartan_matrix() {
        let c = vec![to_q(&[2, -1]), to_q(&[-1, 2])];
        let inv = inverse(&c).unwrap();
        assert_eq!(mat_mul(&c, &inv), identity(2));
        assert_eq!(inv[0], vec![qf(2, 3), qf(1, 3)]);
    }

    #[test]
    fn subspace_intersection_and_sum() {
        let u = Subspace::new(3, &[to_q(&[1, 0, 0]), to_q(&[0, 1, 0])]);
        let w = Subspace::new(3, &[to_q(&[0, 1, 0]), to_q(&[0, 0, 1])]);
        assert_eq!(u.intersect(&w), Subspace::new(3, &[to_q(&[0, 1, 0])]));
        assert_eq!(u.sum(&w), Subspace::full(3));
    }

    #[test]
    fn primitive_vector() {
        assert_eq!(primitive(&[qf(1, 2), qf(-3, 4)]), to_q(&[2, -3]));
    }
}
