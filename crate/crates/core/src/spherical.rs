//! Spherical pairs in standard position, their spherical roots and compression
//! cone, degenerations and sign twists.

use crate::cones::{self, Cone};
use crate::error::{ensure, Error, Result};
use crate::liealg::{Grade, GradedLieAlgebra, Subspace};
use crate::linalg::{self, dot, is_zero, Vector, Q};
use crate::rootsys::combination_name;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Grade of a component of `T`: either the zero grade (`m ⊕ a`) or a root of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Beta {
    Zero,
    Root(usize),
}

/// `T(X_{-α})` for one basis vector of `g^{-α}`, split by grade.
#[derive(Clone, Debug)]
pub struct TEntry {
    pub alpha: usize,
    pub basis_index: usize,
    pub components: Vec<(Beta, Vector)>,
}

#[derive(Clone, Debug)]
pub struct SphericalPair {
    pub g: GradedLieAlgebra,
    pub h: Subspace,
    /// Root indices of the simple roots in the adapted parabolic.
    pub f_q: Vec<usize>,
    pub l_cap_h: Subspace,
    /// Positive roots outside `<F_Q>`.
    pub sigma_u: Vec<usize>,
    pub t: Vec<TEntry>,
}

impl SphericalPair {
    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn levi(&self) -> Subspace {
        self.g.levi(&self.f_q).expect("F_Q is simple")
    }

    pub fn ubar(&self) -> Subspace {
        self.g.opposite_nilradical(&self.f_q).expect("F_Q is simple")
    }

    pub fn u(&self) -> Subspace {
        self.g.nilradical(&self.f_q).expect("F_Q is simple")
    }

    pub fn is_unimodular(&self) -> bool {
        self.g.is_unimodular(&self.h).expect("h is a subalgebra")
    }

    /// `α + β` for a component of `T`.
    pub fn weight_of(&self, alpha: usize, beta: &Beta) -> Vector {
        let a = self.g.roots().root(alpha).clone();
        match beta {
            Beta::Zero => a,
            Beta::Root(b) => linalg::add(&a, self.g.roots().root(*b)),
        }
    }

    /// `l ∩ h + span{X + T'(X)}` for a modified table.
    fn graph_with(&self, keep: impl Fn(&TEntry, &Beta, &Vector) -> Option<Q>) -> Subspace {
        let n = self.dim();
        let mut vecs = self.l_cap_h.basis().to_vec();
        for e in &self.t {
            let mut v = linalg::unit(n, e.basis_index);
            for (beta, x) in &e.components {
                if let Some(c) = keep(e, beta, x) {
                    linalg::axpy(&mut v, &c, x);
                }
            }
            vecs.push(v);
        }
        Subspace::new(n, &vecs)
    }
}

/// All subsets of `0..n`, in binary counting order.
pub fn index_subsets(n: usize) -> Vec<Vec<usize>> {
    subsets(&(0..n).collect::<Vec<_>>())
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u64..1 << items.len())
        .map(|m| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

fn is_adapted(g: &GradedLieAlgebra, h: &Subspace, f: &[usize]) -> Result<bool> {
    for r in g.roots().generated_subsystem(f)? {
        if !h.contains_space(&g.root_space(r)) {
            return Ok(false);
        }
    }
    let q = g.parabolic(f)?;
    if !g.levi(f)?.contains_space(&h.intersect(&q)) {
        return Ok(false);
    }
    // the Levi must be the centraliser of an element of a_F lying in a_H + h^⊥
    let rs = g.roots();
    let a_dim = g.a_dim();
    let eqs: Vec<Vector> = h
        .basis()
        .iter()
        .map(|b| {
            let bf = linalg::mat_vec(g.form(), b);
            g.a_basis().iter().map(|&i| bf[i].clone()).collect()
        })
        .collect();
    let perp = Subspace::new(a_dim, &linalg::nullspace(&eqs, a_dim));
    let a_h: Vec<Vector> = h.intersect(&g.a_space()).basis().iter().map(|v| g.to_a(v).expect("in a")).collect();
    let fns: Vec<Vector> = f.iter().map(|&i| rs.root(i).clone()).collect();
    let a_f = Subspace::new(a_dim, &linalg::nullspace(&fns, a_dim));
    let candidates = perp.sum(&Subspace::new(a_dim, &a_h)).intersect(&a_f);
    let (outside, _) = rs.parabolic_roots(f)?;
    Ok(outside
        .iter()
        .all(|&r| candidates.basis().iter().any(|x| !dot(rs.root(r), x).is_zero())))
}

/// Finds the adapted parabolic and the operator `T` of the local structure
/// theorem with respect to the minimal parabolic of `g`.
pub fn standardize(g: &GradedLieAlgebra, h: &Subspace) -> Result<SphericalPair> {
    if h.ambient() != g.dim() {
        return Err(Error::ParentMismatch);
    }
    if !g.is_subalgebra(h)? {
        return Err(Error::NotSubalgebra);
    }
    let total = h.sum(&g.p_min()).dim();
    if total != g.dim() {
        return Err(Error::NotSpherical(total, g.dim()));
    }
    let mut found = Vec::new();
    for f in subsets(g.roots().simple()) {
        if is_adapted(g, h, &f)? {
            found.push(f);
        }
    }
    let f_q = match found.len() {
        0 => return Err(Error::NoAdaptedParabolic),
        1 => found.pop().unwrap(),
        _ => return Err(Error::ConsistencyFailure("several adapted parabolics".into())),
    };
    let n = g.dim();
    let levi = g.levi(&f_q)?;
    let l_cap_h = h.intersect(&levi);
    let perp = l_cap_h.perp(g.form()).intersect(&levi);
    if perp.dim() + l_cap_h.dim() != levi.dim() || perp.intersect(&l_cap_h).dim() != 0 {
        return Err(Error::ConsistencyFailure("form degenerate on l ∩ h".into()));
    }
    let (sigma_u, _) = g.roots().parabolic_roots(&f_q)?;
    let ubar_idx: Vec<usize> = sigma_u
        .iter()
        .flat_map(|&a| g.root_space_indices(g.roots().negative_of(a)).to_vec())
        .collect();
    let hb = h.basis();
    // rows of the linear system in the coefficients of the h basis
    let mut rows: Vec<Vector> = ubar_idx
        .iter()
        .map(|&j| hb.iter().map(|b| b[j].clone()).collect())
        .collect();
    let levi_axes: Vec<bool> = (0..n).map(|i| levi.contains(&linalg::unit(n, i))).collect();
    for z in l_cap_h.basis() {
        let bz = linalg::mat_vec(g.form(), z);
        rows.push(
            hb.iter()
                .map(|b| {
                    b.iter()
                        .enumerate()
                        .filter(|(i, _)| levi_axes[*i])
                        .map(|(i, x)| x * &bz[i])
                        .sum()
                })
                .collect(),
        );
    }
    if linalg::rank(&rows, hb.len()) != hb.len() {
        return Err(Error::ConsistencyFailure("graph of T is not unique".into()));
    }
    let mut t = Vec::new();
    for &alpha in &sigma_u {
        for &k in g.root_space_indices(g.roots().negative_of(alpha)) {
            let mut rhs: Vector = ubar_idx.iter().map(|&j| if j == k { Q::one() } else { Q::zero() }).collect();
            rhs.extend(linalg::zeros(l_cap_h.dim()));
            let c = linalg::solve(&rows, &rhs, hb.len())
                .ok_or_else(|| Error::ConsistencyFailure("no graph element over ū".into()))?;
            let mut v = linalg::zeros(n);
            for (ci, b) in c.iter().zip(hb) {
                linalg::axpy(&mut v, ci, b);
            }
            v[k] -= Q::one();
            let mut comps: Vec<(Beta, Vector)> = Vec::new();
            for (i, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let beta = match g.grade(i) {
                    Grade::Root(r) if sigma_u.contains(r) => Beta::Root(*r),
                    Grade::A(_) | Grade::M => Beta::Zero,
                    _ => {
                        return Err(Error::ConsistencyFailure(format!(
                            "T has a component on {}",
                            g.labels()[i]
                        )))
                    }
                };
                let pos = match comps.iter().position(|(b, _)| *b == beta) {
                    Some(p) => p,
                    None => {
                        comps.push((beta, linalg::zeros(n)));
                        comps.len() - 1
                    }
                };
                comps[pos].1[i] = x.clone();
            }
            comps.sort_by_key(|(b, _)| match b {
                Beta::Zero => 0,
                Beta::Root(r) => r + 1,
            });
            t.push(TEntry { alpha, basis_index: k, components: comps });
        }
    }
    Ok(SphericalPair { g: g.clone(), h: h.clone(), f_q, l_cap_h, sigma_u, t })
}

/// Spherical roots, compression cone and dual data of a standardized pair.
#[derive(Clone, Debug)]
pub struct SphericalRootDatum {
    /// `a ∩ h` in `a` coordinates.
    pub a_h: Subspace,
    /// Basis of the orthogonal complement of `a_H` in `a`.
    pub a_z: Vec<Vector>,
    /// Distinct monoid generators `α + β`, as functionals on `a`.
    pub generators: Vec<Vector>,
    /// Coordinates of each generator in the spherical roots.
    pub generator_coords: Vec<Vector>,
    pub spherical_roots: Vec<Vector>,
    /// `{X ∈ a_Z : γ(X) <= 0}` in coordinates of the `a_z` basis.
    pub cone: Cone,
    /// Basis of the edge in `a` coordinates.
    pub edge: Vec<Vector>,
    /// `ω_j ∈ a_Z`, dual to the spherical roots and orthogonal to the edge.
    pub omegas: Vec<Vector>,
}

impl SphericalRootDatum {
    pub fn rank(&self) -> usize {
        self.a_z.len()
    }

    pub fn s(&self) -> usize {
        self.spherical_roots.len()
    }

    pub fn names(&self) -> Vec<String> {
        (1..=self.s()).map(|i| format!("s{i}")).collect()
    }

    /// Coordinates of a functional vanishing on `a_H` in the spherical roots.
    pub fn coords_in_s(&self, f: &[Q]) -> Option<Vector> {
        linalg::coordinates(&self.spherical_roots, f)
    }

    /// `a_z` coordinates of a vector of `a_Z`.
    pub fn z_coords(&self, x: &[Q]) -> Option<Vector> {
        linalg::coordinates(&self.a_z, x)
    }

    pub fn from_z_coords(&self, c: &[Q]) -> Vector {
        let mut v = linalg::zeros(self.a_h.ambient());
        for (ci, b) in c.iter().zip(&self.a_z) {
            linalg::axpy(&mut v, ci, b);
        }
        v
    }

    /// Projection of `x ∈ a` onto `a_Z` along `a_H`.
    pub fn project(&self, x: &[Q]) -> Vector {
        let c = linalg::split_coordinates(self.a_h.basis(), &self.a_z, x).expect("a = a_H ⊕ a_Z");
        self.from_z_coords(&c)
    }

    fn check_subset(&self, subset: &[usize]) -> Result<()> {
        let s = self.s();
        if subset.iter().any(|&i| i >= s) {
            return Err(Error::InvalidSubset("spherical root index out of range".into()));
        }
        Ok(())
    }

    /// `a_I = span{ω_j : j ∉ I} + a_{Z,E}` in `a` coordinates.
    pub fn a_i_space(&self, subset: &[usize]) -> Result<Subspace> {
        self.check_subset(subset)?;
        let mut v: Vec<Vector> = (0..self.s())
            .filter(|j| !subset.contains(j))
            .map(|j| self.omegas[j].clone())
            .collect();
        v.extend(self.edge.iter().cloned());
        Ok(Subspace::new(self.a_h.ambient(), &v))
    }

    /// `X_I = -Σ_{j ∉ I} ω_j`.
    pub fn x_i(&self, subset: &[usize]) -> Result<Vector> {
        self.check_subset(subset)?;
        let mut x = linalg::zeros(self.a_h.ambient());
        for j in (0..self.s()).filter(|j| !subset.contains(j)) {
            linalg::axpy(&mut x, &linalg::q(-1), &self.omegas[j]);
        }
        Ok(x)
    }

    /// Whether a generator lies in `N_0[I]`.
    pub fn generator_in(&self, gen: usize, subset: &[usize]) -> bool {
        self.generator_coords[gen]
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || subset.contains(&i))
    }

    pub fn generator_index(&self, f: &[Q]) -> Option<usize> {
        self.generators.iter().position(|g| g.as_slice() == f)
    }
}

fn canonical_cmp(a: &Vector, b: &Vector) -> Ordering {
    let ha: Q = a.iter().sum();
    let hb: Q = b.iter().sum();
    ha.cmp(&hb).then_with(|| linalg::cmp_vec(b, a))
}

fn to_counts(v: &[Q]) -> Vec<usize> {
    v.iter().map(|x| x.to_integer().to_usize().expect("small nonnegative")).collect()
}

/// Elements of the monoid generated by `gens` lying coordinatewise below `target`.
fn reachable_below(gens: &[Vec<usize>], target: &[usize]) -> Vec<bool> {
    let radix: Vec<usize> = target.iter().map(|t| t + 1).collect();
    let total: usize = radix.iter().product();
    let decode = |mut idx: usize| -> Vec<usize> {
        radix
            .iter()
            .map(|r| {
                let d = idx % r;
                idx /= r;
                d
            })
            .collect()
    };
    let encode = |p: &[usize]| -> usize {
        let mut idx = 0;
        for (d, r) in p.iter().zip(&radix).rev() {
            idx = idx * r + d;
        }
        idx
    };
    let mut reach = vec![false; total];
    reach[0] = true;
    for idx in 1..total {
        let p = decode(idx);
        reach[idx] = gens.iter().any(|g| {
            g.iter().zip(&p).all(|(a, b)| a <= b) && {
                let d: Vec<usize> = p.iter().zip(g).map(|(a, b)| a - b).collect();
                reach[encode(&d)]
            }
        });
    }
    reach
}

fn is_irreducible(gens: &[Vec<usize>], target: &[usize]) -> bool {
    let reach = reachable_below(gens, target);
    let radix: Vec<usize> = target.iter().map(|t| t + 1).collect();
    let total = reach.len();
    (1..total - 1).all(|idx| {
        if !reach[idx] {
            return true;
        }
        // complement index: target - p
        let mut rest = idx;
        let mut comp = 0;
        let mut mult = 1;
        for (t, r) in target.iter().zip(&radix) {
            let d = rest % r;
            rest /= r;
            comp += (t - d) * mult;
            mult *= r;
        }
        !reach[comp]
    })
}

/// Whether `target` is a sum of elements of `gens` (nonnegative integer data).
pub fn in_monoid(gens: &[Vec<usize>], target: &[usize]) -> bool {
    *reachable_below(gens, target).last().expect("nonempty")
}

pub fn spherical_roots(sp: &SphericalPair) -> Result<SphericalRootDatum> {
    let g = &sp.g;
    let rs = g.roots();
    let a_dim = g.a_dim();
    let a_h_vecs: Vec<Vector> = sp
        .h
        .intersect(&g.a_space())
        .basis()
        .iter()
        .map(|v| g.to_a(v).expect("in a"))
        .collect();
    let a_h = Subspace::new(a_dim, &a_h_vecs);
    let a_z = a_h.perp(rs.inner_product()).basis().to_vec();
    let mut generators: Vec<Vector> = Vec::new();
    for e in &sp.t {
        for (beta, _) in &e.components {
            let w = sp.weight_of(e.alpha, beta);
            if a_h.basis().iter().any(|x| !dot(&w, x).is_zero()) {
                return Err(Error::GeneratorNotVanishingOnAH(rs.name_of(&w)));
            }
            if !generators.contains(&w) {
                generators.push(w);
            }
        }
    }
    let coords: Vec<Vector> = generators
        .iter()
        .map(|w| rs.coords_in_simple(w).expect("in root span"))
        .collect();
    let mut order: Vec<usize> = (0..generators.len()).collect();
    order.sort_by(|&a, &b| canonical_cmp(&coords[a], &coords[b]));
    let generators: Vec<Vector> = order.iter().map(|&i| generators[i].clone()).collect();
    let coords: Vec<Vector> = order.iter().map(|&i| coords[i].clone()).collect();
    let counts: Vec<Vec<usize>> = coords.iter().map(|c| to_counts(c)).collect();
    let spherical: Vec<Vector> = (0..generators.len())
        .filter(|&i| is_irreducible(&counts, &counts[i]))
        .map(|i| generators[i].clone())
        .collect();
    let s_counts: Vec<Vec<usize>> = spherical
        .iter()
        .map(|w| to_counts(&rs.coords_in_simple(w).unwrap()))
        .collect();
    for (c, w) in counts.iter().zip(&generators) {
        ensure(in_monoid(&s_counts, c), || format!("{} not in N[S]", rs.name_of(w)))?;
    }
    ensure(linalg::rank(&spherical, a_dim) == spherical.len(), || {
        "spherical roots are linearly dependent".into()
    })?;
    let generator_coords: Vec<Vector> = generators
        .iter()
        .map(|w| linalg::coordinates(&spherical, w).expect("in N[S]"))
        .collect();
    let ineqs: Vec<Vector> = generators
        .iter()
        .map(|w| a_z.iter().map(|b| dot(w, b)).collect())
        .collect();
    let cone = Cone::new(a_z.len(), ineqs)?;
    let to_a = |c: &Vector| -> Vector {
        let mut v = linalg::zeros(a_dim);
        for (ci, b) in c.iter().zip(&a_z) {
            linalg::axpy(&mut v, ci, b);
        }
        v
    };
    let edge: Vec<Vector> = Subspace::new(a_dim, &cones::edge(&cone).iter().map(to_a).collect::<Vec<_>>())
        .basis()
        .to_vec();
    let mut direct_eqs = spherical.clone();
    direct_eqs.extend(a_h.basis().iter().map(|x| linalg::mat_vec(rs.inner_product(), x)));
    let direct = Subspace::new(a_dim, &linalg::nullspace(&direct_eqs, a_dim));
    ensure(direct.basis() == edge.as_slice(), || "edge of the cone disagrees with the common kernel".into())?;
    ensure(a_z.len() == spherical.len() + edge.len(), || "#S != rank - dim edge".into())?;
    let mut omegas = Vec::new();
    for j in 0..spherical.len() {
        let mut rows = spherical.clone();
        let mut rhs: Vector = (0..spherical.len()).map(|i| if i == j { Q::one() } else { Q::zero() }).collect();
        for x in a_h.basis().iter().chain(&edge) {
            rows.push(linalg::mat_vec(rs.inner_product(), x));
            rhs.push(Q::zero());
        }
        omegas.push(linalg::solve(&rows, &rhs, a_dim).expect("dual basis exists"));
    }
    Ok(SphericalRootDatum {
        a_h,
        a_z,
        generators,
        generator_coords,
        spherical_roots: spherical,
        cone,
        edge,
        omegas,
    })
}

fn check_s_subset(srd: &SphericalRootDatum, subset: &[usize]) -> Result<()> {
    if subset.iter().any(|&i| i >= srd.s()) {
        return Err(Error::InvalidSubset("spherical root index out of range".into()));
    }
    Ok(())
}

/// The degeneration `h_I`: keeps the components of `T` whose weight lies in `N_0[I]`.
pub fn degenerate(sp: &SphericalPair, srd: &SphericalRootDatum, subset: &[usize]) -> Result<Subspace> {
    check_s_subset(srd, subset)?;
    let h_i = sp.graph_with(|e, beta, _| {
        let w = sp.weight_of(e.alpha, beta);
        let idx = srd.generator_index(&w).expect("generator");
        srd.generator_in(idx, subset).then(Q::one)
    });
    ensure(h_i.dim() == sp.h.dim(), || "dim h_I != dim h".into())?;
    ensure(sp.g.is_subalgebra(&h_i)?, || "h_I is not a subalgebra".into())?;
    ensure(h_i.sum(&sp.g.p_min()).dim() == sp.dim(), || "h_I + p_min != g".into())?;
    if subset.len() == srd.s() {
        ensure(h_i == sp.h, || "h_S != h".into())?;
    }
    if subset.is_empty() {
        ensure(h_i == sp.l_cap_h.sum(&sp.ubar()), || "h_∅ != l∩h + ū".into())?;
    }
    Ok(h_i)
}

/// Properties of `h_I` checked against `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationVerification {
    pub subalgebra: bool,
    pub same_dim: bool,
    /// `h_I + p_min = g`.
    pub open: bool,
    pub same_a_cap: bool,
    /// The spherical roots of `h_I` are exactly those indexed by `I`.
    pub roots_match: bool,
    /// The unimodularity functional of `h_I` vanishes.
    pub unimodular: bool,
}

impl DegenerationVerification {
    pub fn all(&self) -> bool {
        self.subalgebra && self.same_dim && self.open && self.same_a_cap && self.roots_match && self.unimodular
    }
}

pub fn verify_degeneration(
    sp: &SphericalPair,
    srd: &SphericalRootDatum,
    subset: &[usize],
) -> Result<(Subspace, DegenerationVerification)> {
    let g = &sp.g;
    let h_i = degenerate(sp, srd, subset)?;
    let sp_i = standardize(g, &h_i)?;
    let srd_i = spherical_roots(&sp_i)?;
    let mut expected: Vec<Vector> = subset.iter().map(|&i| srd.spherical_roots[i].clone()).collect();
    expected.sort_by(|a, b| linalg::cmp_vec(a, b));
    let mut got = srd_i.spherical_roots.clone();
    got.sort_by(|a, b| linalg::cmp_vec(a, b));
    let v = DegenerationVerification {
        subalgebra: g.is_subalgebra(&h_i)?,
        same_dim: h_i.dim() == sp.h.dim(),
        open: h_i.sum(&g.p_min()).dim() == g.dim(),
        same_a_cap: h_i.intersect(&g.a_space()) == sp.h.intersect(&g.a_space()),
        roots_match: got == expected,
        unimodular: linalg::is_zero(&g.unimodularity_functional(&h_i)?),
    };
    Ok((h_i, v))
}

/// A character of the lattice spanned by the spherical roots with values ±1,
/// recorded by its values on the spherical roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCharacter(pub Vec<i8>);

impl SignCharacter {
    /// Value on an integral combination of spherical roots.
    pub fn value(&self, coords: &[Q]) -> i8 {
        let mut v = 1i8;
        for (e, c) in self.0.iter().zip(coords) {
            if c.to_integer().is_odd() && *e < 0 {
                v = -v;
            }
        }
        v
    }

    /// Recovers the character from its values on the monoid generators.
    pub fn from_generator_signs(srd: &SphericalRootDatum, signs: &[i8]) -> Result<SignCharacter> {
        if signs.len() != srd.generators.len() || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::InconsistentSign);
        }
        let eps: Vec<i8> = srd
            .spherical_roots
            .iter()
            .map(|s| signs[srd.generator_index(s).expect("S ⊂ generators")])
            .collect();
        let chi = SignCharacter(eps);
        for (c, s) in srd.generator_coords.iter().zip(signs) {
            if chi.value(c) != *s {
                return Err(Error::InconsistentSign);
            }
        }
        Ok(chi)
    }
}

/// `h_w = l∩h + graph(T_w)` with `T_w(X_{-α}) = Σ ε(α+β) X_{α,β}`.
pub fn twist(sp: &SphericalPair, srd: &SphericalRootDatum, chi: &SignCharacter) -> Result<Subspace> {
    if chi.0.len() != srd.s() || chi.0.iter().any(|s| s.abs() != 1) {
        return Err(Error::InconsistentSign);
    }
    let hw = sp.graph_with(|e, beta, _| {
        let w = sp.weight_of(e.alpha, beta);
        let idx = srd.generator_index(&w).expect("generator");
        Some(linalg::q(chi.value(&srd.generator_coords[idx]) as i64))
    });
    Ok(hw)
}

/// All sign twists, each checked to be a subalgebra with the same adapted
/// parabolic and compression cone.
pub fn sign_twists(sp: &SphericalPair, srd: &SphericalRootDatum) -> Result<Vec<(SignCharacter, Subspace)>> {
    let s = srd.s();
    let mut out = Vec::new();
    for m in 0u64..1 << s {
        let chi = SignCharacter((0..s).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect());
        let hw = twist(sp, srd, &chi)?;
        ensure(sp.g.is_subalgebra(&hw)?, || "twist is not a subalgebra".into())?;
        let spw = standardize(&sp.g, &hw)?;
        ensure(spw.f_q == sp.f_q, || "twist changes F_Q".into())?;
        let srdw = spherical_roots(&spw)?;
        ensure(srdw.cone == srd.cone && srdw.spherical_roots == srd.spherical_roots, || {
            "twist changes the compression cone".into()
        })?;
        out.push((chi, hw));
    }
    Ok(out)
}

/// Names `s1..sk` for spherical roots and `a1..an` for simple roots.
pub fn spherical_root_name(sp: &SphericalPair, w: &[Q]) -> String {
    sp.g.roots().name_of(w)
}

pub fn s_combination_name(c: &[Q]) -> String {
    combination_name("s", c)
}

/// Whether every coordinate is a nonnegative integer.
pub fn is_natural(c: &[Q]) -> bool {
    linalg::is_integer_vec(c) && c.iter().all(|x| !x.is_negative())
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    is_zero(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn analyzed(name: &str) -> (SphericalPair, SphericalRootDatum) {
        let p = catalog::build(name).unwrap();
        let sp = standardize(&p.g, &p.h).unwrap();
        let srd = spherical_roots(&sp).unwrap();
        (sp, srd)
    }

    fn root_names(sp: &SphericalPair, srd: &SphericalRootDatum) -> Vec<String> {
        srd.spherical_roots.iter().map(|w| sp.g.roots().name_of(w)).collect()
    }

    #[test]
    fn spherical_roots_of_catalog_pairs() {
        let cases: &[(&str, &[&str], usize)] = &[
            ("nbar-sl3", &[], 2),
            ("group-sl2", &["a1+a2"], 0),
            ("group-sl3", &["a1+a4", "a2+a3"], 0),
            ("triple-so12", &["a1", "a2", "a3"], 0),
            ("symmetric-sl3", &["2a1", "2a2"], 0),
            ("symmetric-so22", &["2a1", "2a2"], 0),
            ("nonwf1-sl3-sp1", &["a1+a2"], 1),
        ];
        for (name, roots, edge) in cases {
            let (sp, srd) = analyzed(name);
            assert_eq!(root_names(&sp, &srd), *roots, "{name}");
            assert_eq!(srd.edge.len(), *edge, "{name}");
        }
    }

    #[test]
    fn h_is_l_cap_h_plus_graph_of_t() {
        for e in catalog::entries() {
            let (sp, _) = analyzed(e.name);
            assert_eq!(sp.graph_with(|_, _, _| Some(Q::one())), sp.h, "{}", e.name);
            // T maps ū into u ⊕ m ⊕ a, never back into ū
            for t in &sp.t {
                for (beta, _) in &t.components {
                    if let Beta::Root(b) = beta {
                        assert!(sp.sigma_u.contains(b));
                    }
                }
            }
        }
    }

    #[test]
    fn omegas_are_dual_to_spherical_roots() {
        let (_, srd) = analyzed("symmetric-sl4");
        for (i, w) in srd.spherical_roots.iter().enumerate() {
            for (j, o) in srd.omegas.iter().enumerate() {
                assert_eq!(dot(w, o), if i == j { Q::one() } else { Q::zero() });
            }
        }
    }

    #[test]
    fn full_degeneration_is_h() {
        let (sp, srd) = analyzed("triple-sl2");
        let all: Vec<usize> = (0..srd.s()).collect();
        assert_eq!(degenerate(&sp, &srd, &all).unwrap(), sp.h);
        assert!(matches!(degenerate(&sp, &srd, &[7]), Err(Error::InvalidSubset(_))));
    }

    #[test]
    fn twists_of_the_group_case() {
        let (sp, srd) = analyzed("group-sl2");
        let tw = sign_twists(&sp, &srd).unwrap();
        assert_eq!(tw.len(), 2);
        assert_eq!(tw[0].1, sp.h);
        assert_ne!(tw[1].1, sp.h);
        assert!(matches!(twist(&sp, &srd, &SignCharacter(vec![2])), Err(Error::InconsistentSign)));
    }

    #[test]
    fn monoid_membership() {
        assert!(in_monoid(&[vec![1, 0], vec![0, 1]], &[2, 3]));
        assert!(!in_monoid(&[vec![2]], &[3]));
        assert!(in_monoid(&[vec![2], vec![3]], &[7]));
    }

    #[test]
    fn subsets_in_counting_order() {
        assert_eq!(index_subsets(2), vec![vec![], vec![0], vec![1], vec![0, 1]]);
        assert_eq!(index_subsets(0), vec![Vec::<usize>::new()]);
    }
}
