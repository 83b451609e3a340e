//! Wave-front test, the sets `Π_σ`, interlacing parabolics and their checks.

use crate::cones::{self, Cone};
use crate::error::{ensure, Error, Result};
use crate::linalg::{self, dot, Subspace, Vector, Q};
use crate::spherical::{self, SphericalPair, SphericalRootDatum};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Interlacing data attached to one subset `I` of the spherical roots.
#[derive(Clone, Debug)]
pub struct Interlacing {
    /// Indices into `S`.
    pub subset: Vec<usize>,
    /// Root indices of simple roots.
    pub j: Vec<usize>,
    pub f: Vec<usize>,
    pub y: Vector,
    pub coefficients: BTreeMap<usize, Q>,
    pub interlaced_ok: bool,
}

/// `(J, F, Y, coefficients)` for one subset.
pub type InterlacingData = (Vec<usize>, Vec<usize>, Vector, BTreeMap<usize, Q>);

#[derive(Clone, Debug)]
pub struct WavefrontReport {
    pub is_wavefront: bool,
    /// For each spherical root, the simple roots (root indices) in `Π_σ`.
    pub pi_sigma: Vec<Vec<usize>>,
    pub per_subset: Vec<Interlacing>,
}

/// `a^-` as a cone in `a` coordinates.
pub fn negative_chamber(sp: &SphericalPair) -> Result<Cone> {
    let rs = sp.g.roots();
    Cone::new(rs.a_dim(), rs.simple_roots())
}

/// Wave-front test by projecting `a^-` along `a_H` and comparing with the
/// compression cone.
pub fn wavefront_by_projection(sp: &SphericalPair, srd: &SphericalRootDatum) -> Result<bool> {
    let image = cones::project_cone(&negative_chamber(sp)?, srd.a_h.basis(), &srd.a_z)?;
    Ok(image == srd.cone)
}

/// `Π_σ` for every spherical root: `α` with `σ(ω'_α) > 0` and `σ'(ω'_α) = 0`
/// for the other spherical roots.
pub fn pi_sigma(sp: &SphericalPair, srd: &SphericalRootDatum) -> Vec<Vec<usize>> {
    let rs = sp.g.roots();
    let coweights = rs.fundamental_coweights();
    (0..srd.s())
        .map(|k| {
            rs.simple()
                .iter()
                .zip(&coweights)
                .filter(|(_, w)| {
                    srd.spherical_roots.iter().enumerate().all(|(j, s)| {
                        let v = dot(s, w);
                        if j == k {
                            v.is_positive()
                        } else {
                            v.is_zero()
                        }
                    })
                })
                .map(|(&a, _)| a)
                .collect()
        })
        .collect()
}

/// Whether the projection of `a^-` contains the edge of the compression cone.
fn edge_reached(sp: &SphericalPair, srd: &SphericalRootDatum) -> Result<bool> {
    let rs = sp.g.roots();
    let n = rs.a_dim();
    let rays: Vec<Vector> = rs
        .fundamental_coweights()
        .iter()
        .map(|w| linalg::neg(&srd.project(w)))
        .collect();
    // directions on which every root vanishes
    let centre: Vec<Vector> = linalg::nullspace(&rs.simple_roots(), n)
        .iter()
        .map(|c| srd.project(c))
        .collect();
    let image = Cone::from_generators(n, &centre, &rays)?;
    Ok(srd.edge.iter().all(|e| image.contains(e) && image.contains(&linalg::neg(e))))
}

/// Wave-front test from the sets `Π_σ` together with the edge.
pub fn wavefront_by_pi_sigma(sp: &SphericalPair, srd: &SphericalRootDatum) -> Result<bool> {
    Ok(pi_sigma(sp, srd).iter().all(|p| !p.is_empty()) && edge_reached(sp, srd)?)
}

/// Both tests; they must agree.
pub fn is_wavefront(sp: &SphericalPair, srd: &SphericalRootDatum) -> Result<bool> {
    let a = wavefront_by_projection(sp, srd)?;
    let b = wavefront_by_pi_sigma(sp, srd)?;
    if a != b {
        return Err(Error::ConsistencyFailure(format!(
            "projection test says {a}, Π_σ test says {b}"
        )));
    }
    Ok(a)
}

/// Checks `Π_σ = supp(σ) ∖ ∪_{σ' ≠ σ} supp(σ')` for every spherical root.
pub fn pi_sigma_formula_check(sp: &SphericalPair, srd: &SphericalRootDatum) -> Result<bool> {
    let rs = sp.g.roots();
    let supports = srd
        .spherical_roots
        .iter()
        .map(|s| rs.support(s))
        .collect::<Result<Vec<_>>>()?;
    let direct = pi_sigma(sp, srd);
    Ok((0..srd.s()).all(|k| {
        let mut formula: Vec<usize> = supports[k]
            .iter()
            .copied()
            .filter(|a| !supports.iter().enumerate().any(|(j, s)| j != k && s.contains(a)))
            .collect();
        formula.sort();
        let mut d = direct[k].clone();
        d.sort();
        formula == d
    }))
}

fn require_wavefront(sp: &SphericalPair, srd: &SphericalRootDatum) -> Result<()> {
    if !is_wavefront(sp, srd)? {
        return Err(Error::NotWavefront);
    }
    Ok(())
}

fn check_subset(srd: &SphericalRootDatum, subset: &[usize]) -> Result<()> {
    if subset.iter().any(|&i| i >= srd.s()) {
        return Err(Error::InvalidSubset("spherical root index out of range".into()));
    }
    Ok(())
}

/// Positive `c` with `Σ c_k v_k = target`, all vectors given in the same
/// coordinates. `groups` lists index sets on which equal values are tried first.
fn positive_solution(vectors: &[Vector], target: &[Q], groups: &[Vec<usize>]) -> Option<Vector> {
    let k = vectors.len();
    let n = target.len();
    let cols = linalg::transpose(vectors, n);
    let check = |c: &Vector| {
        c.iter().all(|x| x.is_positive()) && {
            let mut s = linalg::zeros(n);
            for (ci, v) in c.iter().zip(vectors) {
                linalg::axpy(&mut s, ci, v);
            }
            s == target
        }
    };
    if k == 0 {
        return linalg::is_zero(target).then(Vec::new);
    }
    // one value per group
    let grouped: Vec<Vector> = groups
        .iter()
        .map(|g| {
            let mut s = linalg::zeros(n);
            for &i in g {
                s = linalg::add(&s, &vectors[i]);
            }
            s
        })
        .collect();
    if let Some(t) = linalg::solve(&linalg::transpose(&grouped, n), target, groups.len()) {
        let mut c = linalg::zeros(k);
        for (g, ti) in groups.iter().zip(&t) {
            for &i in g {
                c[i] = ti.clone();
            }
        }
        if check(&c) {
            return Some(c);
        }
    }
    // homogenized cone {(c, t) : A c = t b, c >= 0, t >= 0}; the sum of its
    // rays lies in the relative interior
    let mut eqs: Vec<Vector> = Vec::new();
    for (row, b) in cols.iter().zip(target) {
        let mut r = row.clone();
        r.push(-b.clone());
        eqs.push(r.clone());
        eqs.push(linalg::neg(&r));
    }
    for i in 0..=k {
        eqs.push(linalg::neg(&linalg::unit(k + 1, i)));
    }
    let cone = Cone::new(k + 1, eqs).ok()?;
    let gens = cone.generators();
    if !gens.lineality.is_empty() {
        return None;
    }
    let mut sum = linalg::zeros(k + 1);
    for r in &gens.rays {
        sum = linalg::add(&sum, r);
    }
    if !sum[k].is_positive() {
        return None;
    }
    let t = sum[k].clone();
    let c: Vector = sum[..k].iter().map(|x| x / &t).collect();
    check(&c).then_some(c)
}

/// `(J_I, F_I, Y_I)` for a wave-front pair.
pub fn interlacing_data(
    sp: &SphericalPair,
    srd: &SphericalRootDatum,
    subset: &[usize],
) -> Result<InterlacingData> {
    check_subset(srd, subset)?;
    require_wavefront(sp, srd)?;
    let rs = sp.g.roots();
    let pis = pi_sigma(sp, srd);
    let mut j: Vec<usize> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, p) in pis.iter().enumerate() {
        if subset.contains(&k) {
            continue;
        }
        let mut group = Vec::new();
        for &a in p {
            if !sp.f_q.contains(&a) && !j.contains(&a) {
                group.push(j.len());
                j.push(a);
            }
        }
        groups.push(group);
    }
    let f: Vec<usize> = rs.simple().iter().copied().filter(|a| !j.contains(a)).collect();
    let coweights = rs.fundamental_coweights();
    let coweight_of = |a: usize| -> &Vector {
        let pos = rs.simple().iter().position(|&s| s == a).expect("simple");
        &coweights[pos]
    };
    // Σ c_α proj(ω'_α) = -X_I inside a_Z
    let vecs: Vec<Vector> = j
        .iter()
        .map(|&a| srd.z_coords(&srd.project(coweight_of(a))).expect("in a_Z"))
        .collect();
    let minus_x = linalg::neg(&srd.x_i(subset)?);
    let target = srd.z_coords(&srd.project(&minus_x)).expect("in a_Z");
    let c = positive_solution(&vecs, &target, &groups)
        .ok_or_else(|| Error::NoPositiveSolution(format!("subset {subset:?}")))?;
    let mut y = linalg::zeros(rs.a_dim());
    let mut coefficients = BTreeMap::new();
    for (&a, ca) in j.iter().zip(&c) {
        linalg::axpy(&mut y, &-ca.clone(), coweight_of(a));
        coefficients.insert(a, ca.clone());
    }
    j.sort();
    let x = srd.x_i(subset)?;
    ensure(srd.a_h.contains(&linalg::sub(&y, &x)), || "Y_I + a_H != X_I".into())?;
    ensure(f.iter().all(|&a| dot(rs.root(a), &y).is_zero()), || "Y_I not in a_F".into())?;
    let (outside, _) = rs.parabolic_roots(&f)?;
    ensure(
        outside.iter().all(|&r| !sp.sigma_u.contains(&r) || dot(rs.root(r), &y).is_negative()),
        || "Y_I not negative on the roots of u outside <F>".into(),
    )?;
    Ok((j, f, y, coefficients))
}

/// Inclusion checks for `h_I` and the parabolic `P̄_F`, `F = F_I`.
pub fn verify_interlaced(sp: &SphericalPair, srd: &SphericalRootDatum, subset: &[usize]) -> Result<bool> {
    let (_, f, _, _) = interlacing_data(sp, srd, subset)?;
    let g = &sp.g;
    let h_i = spherical::degenerate(sp, srd, subset)?;
    let ubar_f = g.opposite_nilradical(&f)?;
    let pbar_f = g.opposite_parabolic(&f)?;
    let levi_cap_h = g.levi(&f)?.intersect(&sp.h);
    let sandwich = h_i.contains_space(&ubar_f)
        && pbar_f.contains_space(&h_i)
        && h_i.contains_space(&levi_cap_h.sum(&ubar_f));
    let rs = g.roots();
    let (a_f, _) = rs.parabolic_spaces(&f)?;
    let a_i = srd.a_i_space(subset)?.sum(&srd.a_h);
    let spaces = a_i == a_f.sum(&srd.a_h);
    // a generator lies in <I> iff its support lies in F
    let lattice = (0..srd.generators.len()).all(|k| {
        let in_i = srd.generator_in(k, subset);
        let supp = rs.support(&srd.generators[k]).unwrap_or_default();
        in_i == supp.iter().all(|a| f.contains(a))
    });
    Ok(sandwich && spaces && lattice)
}

/// Full report over all subsets of `S`.
pub fn report(sp: &SphericalPair, srd: &SphericalRootDatum) -> Result<WavefrontReport> {
    let is_wf = is_wavefront(sp, srd)?;
    let pis = pi_sigma(sp, srd);
    let mut per_subset = Vec::new();
    if is_wf {
        for subset in spherical::index_subsets(srd.s()) {
            let (j, f, y, coefficients) = interlacing_data(sp, srd, &subset)?;
            let interlaced_ok = verify_interlaced(sp, srd, &subset)?;
            per_subset.push(Interlacing { subset, j, f, y, coefficients, interlaced_ok });
        }
    }
    Ok(WavefrontReport { is_wavefront: is_wf, pi_sigma: pis, per_subset })
}

/// Cone form of the statement that `G/H_I A_I` stays wave-front:
/// `a_Z^- + a_I + a_H = a^- + a_I + a_H` inside `a`.
pub fn degeneration_wavefront_cones(sp: &SphericalPair, srd: &SphericalRootDatum, subset: &[usize]) -> Result<bool> {
    check_subset(srd, subset)?;
    let n = sp.g.a_dim();
    let mut extra = srd.a_i_space(subset)?.basis().to_vec();
    extra.extend(srd.a_h.basis().iter().cloned());
    let gens = srd.cone.generators();
    let mut lin: Vec<Vector> = gens.lineality.iter().map(|c| srd.from_z_coords(c)).collect();
    lin.extend(extra.iter().cloned());
    let rays: Vec<Vector> = gens.rays.iter().map(|c| srd.from_z_coords(c)).collect();
    let left = Cone::from_generators(n, &lin, &rays)?;
    let right = negative_chamber(sp)?.plus_subspace(&extra)?;
    Ok(left == right)
}

/// Runs the whole pipeline on `h_I + a_I` and reports whether it is
/// wave-front; `None` when that subalgebra is not in standard position with
/// respect to the fixed torus.
pub fn degeneration_wavefront_direct(
    sp: &SphericalPair,
    srd: &SphericalRootDatum,
    subset: &[usize],
) -> Result<Option<bool>> {
    let g = &sp.g;
    let h_i = spherical::degenerate(sp, srd, subset)?;
    let a_i: Vec<Vector> = srd.a_i_space(subset)?.basis().iter().map(|x| g.from_a(x)).collect();
    let h = h_i.sum(&Subspace::new(g.dim(), &a_i));
    ensure(g.is_subalgebra(&h)?, || "h_I + a_I is not a subalgebra".into())?;
    let sp2 = match spherical::standardize(g, &h) {
        Ok(sp2) => sp2,
        Err(Error::NoAdaptedParabolic) => return Ok(None),
        Err(e) => return Err(e),
    };
    let srd2 = spherical::spherical_roots(&sp2)?;
    Ok(Some(is_wavefront(&sp2, &srd2)?))
}

/// Outcome of the degeneration check over all subsets of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationCheck {
    /// Cone identity holds for every subset.
    pub cones_ok: bool,
    /// Subsets on which the direct pipeline ran, and whether all were wave-front.
    pub direct_checked: usize,
    pub direct_ok: bool,
}

/// Both forms of the degeneration check for every subset; `None` when `Z` is
/// not wave-front.
pub fn degeneration_check(sp: &SphericalPair, srd: &SphericalRootDatum) -> Result<Option<DegenerationCheck>> {
    if !is_wavefront(sp, srd)? {
        return Ok(None);
    }
    let mut out = DegenerationCheck { cones_ok: true, direct_checked: 0, direct_ok: true };
    for subset in spherical::index_subsets(srd.s()) {
        out.cones_ok &= degeneration_wavefront_cones(sp, srd, &subset)?;
        if let Some(ok) = degeneration_wavefront_direct(sp, srd, &subset)? {
            out.direct_checked += 1;
            out.direct_ok &= ok;
        }
    }
    Ok(Some(out))
}
