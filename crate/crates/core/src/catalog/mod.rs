//! Built-in spherical pairs with exact structure constants.

pub mod matrix;

use crate::error::{Error, Result};
use crate::liealg::{GradedLieAlgebra, Subspace};
use crate::linalg::{self, q, qf, Vector, Q};
use matrix::{Mat, MatrixRealization};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Sl(usize),
    So1n(usize),
    So22,
    Sp1,
}

impl AlgebraKind {
    pub fn name(&self) -> String {
        match self {
            AlgebraKind::Sl(n) => format!("sl({n},R)"),
            AlgebraKind::So1n(n) => format!("so(1,{n})"),
            AlgebraKind::So22 => "so(2,2)".into(),
            AlgebraKind::Sp1 => "sp(1,R)".into(),
        }
    }

    pub fn realization(&self) -> Result<MatrixRealization> {
        match *self {
            AlgebraKind::Sl(n) if (2..=4).contains(&n) => matrix::sl(n),
            AlgebraKind::So1n(n) if (2..=4).contains(&n) => matrix::so_1n(n),
            AlgebraKind::So22 => matrix::so_22(),
            AlgebraKind::Sp1 => matrix::sp_1(),
            _ => Err(Error::UnsupportedEntry(self.name())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// `h` is the opposite nilradical of the minimal parabolic.
    Nbar,
    /// `g' × g'` over a twisted diagonal.
    Group,
    /// `g' × g' × g'` over a twisted diagonal.
    Triple,
    /// Fixed points of the Cartan involution.
    Symmetric,
    /// `h = g`.
    Full,
    /// `(sl(2n+1,R), sp(n,R))`; only `n = 1` is built.
    NonWf1(usize),
}

/// Properties recorded for a catalog pair, checked by the test suites.
#[derive(Clone, Debug)]
pub struct Expected {
    pub rank: usize,
    pub spherical_roots: usize,
    pub wavefront: bool,
    pub unimodular: bool,
    pub f_q_size: usize,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: PairKind,
    pub algebra: AlgebraKind,
    pub expected: Expected,
}

const fn exp(rank: usize, s: usize, wf: bool, uni: bool, fq: usize) -> Expected {
    Expected { rank, spherical_roots: s, wavefront: wf, unimodular: uni, f_q_size: fq }
}

pub fn entries() -> Vec<CatalogEntry> {
    use AlgebraKind::*;
    use PairKind::*;
    let e = |name, kind, algebra, expected| CatalogEntry { name, kind, algebra, expected };
    vec![
        e("nbar-sl2", Nbar, Sl(2), exp(1, 0, false, true, 0)),
        e("nbar-sl3", Nbar, Sl(3), exp(2, 0, false, true, 0)),
        e("nbar-so13", Nbar, So1n(3), exp(1, 0, false, true, 0)),
        e("full-sl2", Full, Sl(2), exp(0, 0, true, true, 1)),
        e("group-sl2", Group, Sl(2), exp(1, 1, true, true, 0)),
        e("group-sl3", Group, Sl(3), exp(2, 2, true, true, 0)),
        e("group-so13", Group, So1n(3), exp(1, 1, true, true, 0)),
        e("triple-so12", Triple, So1n(2), exp(3, 3, true, true, 0)),
        e("triple-sl2", Triple, Sl(2), exp(3, 3, true, true, 0)),
        e("triple-so13", Triple, So1n(3), exp(3, 3, true, true, 0)),
        e("symmetric-sl2", Symmetric, Sl(2), exp(1, 1, true, true, 0)),
        e("symmetric-sl3", Symmetric, Sl(3), exp(2, 2, true, true, 0)),
        e("symmetric-sl4", Symmetric, Sl(4), exp(3, 3, true, true, 0)),
        e("symmetric-so13", Symmetric, So1n(3), exp(1, 1, true, true, 0)),
        e("symmetric-so14", Symmetric, So1n(4), exp(1, 1, true, true, 0)),
        e("symmetric-so22", Symmetric, So22, exp(2, 2, true, true, 0)),
        e("symmetric-sp1", Symmetric, Sp1, exp(1, 1, true, true, 0)),
        e("nonwf1-sl3-sp1", NonWf1(1), Sl(3), exp(2, 1, false, true, 0)),
    ]
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnsupportedEntry(name.into()))
}

/// Complex spherical pairs from Krämer's classification, kept as reference
/// data only; none of them is constructed.
pub const KRAMER_LIST: &[&str] = &[
    "SL(n)/SL(m)×SL(n-m), m ≠ n-m",
    "SL(2n+1)/Sp(2n)",
    "SL(2n+1)/Sp(2n)×GL(1)",
    "Sp(2n)/Sp(2n-2)×GL(1)",
    "SO(2n+1)/GL(n)",
    "SO(7)/G2",
    "SO(8)/G2",
    "SO(9)/Spin(7)",
    "SO(10)/Spin(7)×SO(2)",
    "G2/SL(3)",
    "E6/Spin(10)",
];

#[derive(Clone, Debug)]
pub struct BuiltPair {
    pub name: String,
    pub g: GradedLieAlgebra,
    pub h: Subspace,
}

pub fn build(name: &str) -> Result<BuiltPair> {
    let e = entry(name)?;
    let (g, h) = build_kind(e.kind, e.algebra)?;
    Ok(BuiltPair { name: name.into(), g, h })
}

pub fn build_kind(kind: PairKind, algebra: AlgebraKind) -> Result<(GradedLieAlgebra, Subspace)> {
    let r = algebra.realization()?;
    match kind {
        PairKind::Nbar => {
            let g = r.to_algebra()?;
            let h = g.opposite_nilradical(&[])?;
            Ok((g, h))
        }
        PairKind::Full => {
            let g = r.to_algebra()?;
            let h = Subspace::full(g.dim());
            Ok((g, h))
        }
        PairKind::Symmetric => {
            let g = r.to_algebra()?;
            let theta = g.theta().ok_or_else(|| Error::UnsupportedEntry("no involution".into()))?;
            let rows: Vec<Vector> = theta
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let mut row = row.clone();
                    row[i] -= linalg::q(1);
                    row
                })
                .collect();
            let fixed = linalg::nullspace(&rows, g.dim());
            Ok((g.clone(), Subspace::new(g.dim(), &fixed)))
        }
        PairKind::Group => {
            let sum = matrix::direct_sum(&[r.clone(), r.clone()])?;
            let g = sum.to_algebra()?;
            let h = matrix::twisted_diagonal(&r, &sum, &[Mat::identity(r.n), r.longest.clone()])?;
            Ok((g, h))
        }
        PairKind::Triple => {
            let sum = matrix::direct_sum(&[r.clone(), r.clone(), r.clone()])?;
            let g = sum.to_algebra()?;
            // h + (3/4) p2 h p2^-1 + (5/4) p3 h p3^-1 = 0 in sl(2), so the
            // orthogonal complement of the diagonal meets the torus regularly
            let p2 = inverse2([[q(1), q(1)], [qf(3, 4), qf(-3, 4)]]);
            let p3 = inverse2([[q(1), q(4)], [qf(-9, 4), q(1)]]);
            let images = vec![
                r.basis.clone(),
                matrix::sl2_automorphism(&r, p2)?,
                matrix::sl2_automorphism(&r, p3)?,
            ];
            let h = matrix::diagonal_from_images(&sum, &images)?;
            Ok((g, h))
        }
        PairKind::NonWf1(1) => {
            let g = r.to_algebra()?;
            // sp(1,R) = sl(2,R) acting on the first two coordinates
            let block = [
                Mat::elementary(3, 0, 0).sub(&Mat::elementary(3, 1, 1)),
                Mat::elementary(3, 0, 1),
                Mat::elementary(3, 1, 0),
            ];
            // E13 + E31 is orthogonal to the block and regular; p diagonalizes it
            let p = Mat {
                n: 3,
                data: [1, 0, 1, 0, 1, 0, 1, 0, -1].iter().map(|&x| q(x)).collect(),
            };
            let p_inv = p.inverse().expect("invertible");
            let p_min = g.p_min();
            for perm in permutations(3) {
                let conj = Mat::permutation(&perm).mul(&p_inv);
                let mats: Vec<Mat> = block.iter().map(|x| conj.conjugate(x)).collect();
                let h = r.span(&mats)?;
                if h.intersect(&p_min).dim() == 0
                    && h.sum(&p_min).dim() == g.dim()
                    && crate::spherical::standardize(&g, &h).is_ok()
                {
                    return Ok((g, h));
                }
            }
            Err(Error::UnsupportedEntry("no conjugate in standard position".into()))
        }
        PairKind::NonWf1(n) => Err(Error::UnsupportedEntry(format!("series NonWF1 with n = {n}"))),
    }
}

fn inverse2(m: [[Q; 2]; 2]) -> [[Q; 2]; 2] {
    let [[a, b], [c, d]] = m;
    let det = &a * &d - &b * &c;
    [[&d / &det, -&b / &det], [-&c / &det, &a / &det]]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut p = p.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}
