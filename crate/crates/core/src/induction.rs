//! Levi induction: the spherical pair `(g_F, h_F)` obtained by projecting
//! `h ∩ p_F` to the Levi, its compression cone and modular characters.

use crate::cones::Cone;
use crate::error::{ensure, Error, Result};
use crate::liealg::{extend_coords, restrict_coords, GradedLieAlgebra, Subspace};
use crate::linalg::{self, Vector, Q};
use crate::spherical::{self, Beta, SphericalPair, SphericalRootDatum};

#[derive(Clone, Debug)]
pub struct InducedPair {
    /// Root indices (in the parent) of the simple roots in `F`.
    pub f: Vec<usize>,
    pub g_f: GradedLieAlgebra,
    /// Parent basis indices spanning `g_F`, in the order of its basis.
    pub keep: Vec<usize>,
    pub parent_dim: usize,
    /// `h_F` in `g_F` coordinates.
    pub h_f: Subspace,
    /// `(g_F, h_F)` standardized.
    pub pair: SphericalPair,
}

impl InducedPair {
    pub fn to_parent(&self, v: &[Q]) -> Vector {
        extend_coords(&self.keep, self.parent_dim, v)
    }

    pub fn h_f_in_parent(&self) -> Subspace {
        let v: Vec<Vector> = self.h_f.basis().iter().map(|b| self.to_parent(b)).collect();
        Subspace::new(self.parent_dim, &v)
    }

    /// Root indices of `g_F` for parent root indices (matched as functionals).
    pub fn local_roots(&self, parent: &GradedLieAlgebra, roots: &[usize]) -> Vec<usize> {
        map_roots(parent, &self.g_f, roots)
    }
}

fn map_roots(from: &GradedLieAlgebra, to: &GradedLieAlgebra, roots: &[usize]) -> Vec<usize> {
    roots
        .iter()
        .map(|&r| to.roots().index_of(from.roots().root(r)).expect("root of the Levi"))
        .collect()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort();
    v
}

fn check_f(sp: &SphericalPair, f: &[usize]) -> Result<()> {
    let simple = sp.g.roots().simple();
    if f.iter().any(|a| !simple.contains(a)) {
        return Err(Error::InvalidSubset("F must consist of simple roots".into()));
    }
    if sp.f_q.iter().any(|a| !f.contains(a)) {
        return Err(Error::FQNotContained);
    }
    Ok(())
}

/// `h_F = l∩h + {X̄ + pr_F T(X̄) : X̄ ∈ ū ∩ g_F}` in parent coordinates.
fn induced_from_t(sp: &SphericalPair, f: &[usize]) -> Result<Subspace> {
    let g = &sp.g;
    let inside = g.roots().generated_subsystem(f)?;
    let n = g.dim();
    let mut vecs = sp.l_cap_h.basis().to_vec();
    for e in sp.t.iter().filter(|e| inside.contains(&e.alpha)) {
        let mut v = linalg::unit(n, e.basis_index);
        for (beta, x) in &e.components {
            let keep = match beta {
                Beta::Zero => true,
                Beta::Root(b) => inside.contains(b),
            };
            if keep {
                v = linalg::add(&v, x);
            }
        }
        vecs.push(v);
    }
    Ok(Subspace::new(n, &vecs))
}

/// `pr_F(h ∩ p_F)`, projecting along `u_F`.
fn induced_by_projection(sp: &SphericalPair, f: &[usize], keep: &[usize]) -> Result<Subspace> {
    let g = &sp.g;
    let cap = sp.h.intersect(&g.parabolic(f)?);
    let vecs: Vec<Vector> = cap
        .basis()
        .iter()
        .map(|b| {
            let mut v = linalg::zeros(g.dim());
            for &i in keep {
                v[i] = b[i].clone();
            }
            v
        })
        .collect();
    Ok(Subspace::new(g.dim(), &vecs))
}

pub fn induce(sp: &SphericalPair, f: &[usize]) -> Result<InducedPair> {
    check_f(sp, f)?;
    let g = &sp.g;
    let (g_f, keep) = g.levi_algebra(f)?;
    let h_parent = induced_from_t(sp, f)?;
    ensure(h_parent == induced_by_projection(sp, f, &keep)?, || {
        "pr_F(h ∩ p_F) disagrees with the graph of pr_F ∘ T".into()
    })?;
    let local: Vec<Vector> = h_parent.basis().iter().map(|b| restrict_coords(&keep, b)).collect();
    let h_f = Subspace::new(g_f.dim(), &local);
    ensure(g_f.is_subalgebra(&h_f)?, || "h_F is not a subalgebra".into())?;
    ensure(h_f.sum(&g_f.p_min()).dim() == g_f.dim(), || "h_F + p_min,F != g_F".into())?;
    let pair = spherical::standardize(&g_f, &h_f)?;
    let expected_fq = sorted(map_roots(g, &g_f, &sp.f_q));
    ensure(sorted(pair.f_q.clone()) == expected_fq, || "adapted parabolic of Z_F is not Q_F".into())?;
    let q_f = g_f.parabolic(&pair.f_q)?;
    let l_cap_h: Vec<Vector> = sp.l_cap_h.basis().iter().map(|b| restrict_coords(&keep, b)).collect();
    ensure(Subspace::new(g_f.dim(), &l_cap_h) == q_f.intersect(&h_f), || "l∩h != q_F ∩ h_F".into())?;
    let a_h = h_f.intersect(&g_f.a_space()).dim();
    ensure(a_h == sp.h.intersect(&g.a_space()).dim(), || "real ranks differ".into())?;
    Ok(InducedPair { f: f.to_vec(), g_f, keep, parent_dim: g.dim(), h_f, pair })
}

/// `a_F + a_Z^- = a_F + a_{Z_F}^-`, compared inside `a` modulo `a_H`.
pub fn induced_cone_check(sp: &SphericalPair, srd: &SphericalRootDatum, f: &[usize]) -> Result<bool> {
    let ip = induce(sp, f)?;
    let srd_f = spherical::spherical_roots(&ip.pair)?;
    let n = sp.g.a_dim();
    let (a_f, _) = sp.g.roots().parabolic_spaces(f)?;
    let mut extra = a_f.basis().to_vec();
    extra.extend(srd.a_h.basis().iter().cloned());
    let lift = |d: &SphericalRootDatum| -> Result<Cone> {
        let gens = d.cone.generators();
        let mut lin: Vec<Vector> = gens.lineality.iter().map(|c| d.from_z_coords(c)).collect();
        lin.extend(extra.iter().cloned());
        let rays: Vec<Vector> = gens.rays.iter().map(|c| d.from_z_coords(c)).collect();
        Cone::from_generators(n, &lin, &rays)
    };
    Ok(lift(srd)? == lift(&srd_f)?)
}

/// `X ↦ tr ad` on `u_F / (u_F ∩ h)` on the echelon basis of `p_F ∩ h`.
pub fn modular_character(sp: &SphericalPair, ip: &InducedPair) -> Result<(Subspace, Vector)> {
    let g = &sp.g;
    if !g.is_unimodular(&sp.h)? {
        return Err(Error::ParentNotUnimodular);
    }
    let cap = sp.h.intersect(&g.parabolic(&ip.f)?);
    let u = g.nilradical(&ip.f)?;
    let u_h = u.intersect(&sp.h);
    let values = cap
        .basis()
        .iter()
        .map(|x| Ok(g.trace_on(&u, x)? - g.trace_on(&u_h, x)?))
        .collect::<Result<Vector>>()?;
    // agrees with the modular character of Z_F evaluated on pr_F(X)
    for (x, v) in cap.basis().iter().zip(&values) {
        let px = restrict_coords(&ip.keep, x);
        let t = ip.g_f.trace_ad_on_quotient(&ip.h_f, &px)?;
        ensure(*v == -t, || "modular character disagrees with that of Z_F".into())?;
    }
    Ok((cap, values))
}

/// `ρ_Q` as a functional on `a`: half the sum of the roots of `u` with multiplicity.
pub fn rho_q_on_a(sp: &SphericalPair) -> Vector {
    let g = &sp.g;
    let mut rho = linalg::zeros(g.a_dim());
    for &a in &sp.sigma_u {
        let m = Q::from_integer((g.multiplicity(a) as i64).into());
        linalg::axpy(&mut rho, &(m / Q::from_integer(2.into())), g.roots().root(a));
    }
    rho
}

/// The modular character of `h + a_{Z,E}` on the edge is `-2ρ_Q`.
pub fn hat_modular_check(sp: &SphericalPair, srd: &SphericalRootDatum) -> Result<bool> {
    let g = &sp.g;
    if !g.is_unimodular(&sp.h)? {
        return Err(Error::ParentNotUnimodular);
    }
    let edge: Vec<Vector> = srd.edge.iter().map(|x| g.from_a(x)).collect();
    let hat = sp.h.sum(&Subspace::new(g.dim(), &edge));
    ensure(g.is_subalgebra(&hat)?, || "h + a_Z,E is not a subalgebra".into())?;
    let rho = rho_q_on_a(sp);
    for (x, xa) in edge.iter().zip(&srd.edge) {
        let delta = -g.trace_ad_on_quotient(&hat, x)?;
        let two_rho = linalg::dot(&rho, xa) * Q::from_integer(2.into());
        if delta != -two_rho {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::{q, qf};

    fn analyzed(name: &str) -> (SphericalPair, SphericalRootDatum) {
        let p = catalog::build(name).unwrap();
        let sp = spherical::standardize(&p.g, &p.h).unwrap();
        let srd = spherical::spherical_roots(&sp).unwrap();
        (sp, srd)
    }

    #[test]
    fn full_levi_returns_the_pair() {
        let (sp, srd) = analyzed("group-sl2");
        let all = sp.g.roots().simple().to_vec();
        let ip = induce(&sp, &all).unwrap();
        assert_eq!(ip.g_f.dim(), sp.g.dim());
        assert_eq!(ip.h_f_in_parent(), sp.h);
        assert!(induced_cone_check(&sp, &srd, &all).unwrap());
    }

    #[test]
    fn subset_errors() {
        let (sp, _) = analyzed("full-sl2");
        assert!(matches!(induce(&sp, &[]), Err(Error::FQNotContained)));
        let (sp, _) = analyzed("group-sl2");
        let not_simple = sp.g.roots().negative_of(sp.g.roots().simple()[0]);
        assert!(matches!(induce(&sp, &[not_simple]), Err(Error::InvalidSubset(_))));
    }

    #[test]
    fn rho_is_half_the_trace_on_u() {
        for name in ["triple-so13", "symmetric-sl4", "nonwf1-sl3-sp1"] {
            let (sp, _) = analyzed(name);
            let rho = rho_q_on_a(&sp);
            let u = sp.u();
            for k in 0..sp.g.a_dim() {
                let x = linalg::unit(sp.g.a_dim(), k);
                let tr = sp.g.trace_on(&u, &sp.g.from_a(&x)).unwrap();
                assert_eq!(tr / q(2), rho[k].clone(), "{name}");
            }
        }
    }

    #[test]
    fn triple_levi_of_two_factors_is_not_unimodular() {
        let (sp, _) = analyzed("triple-so12");
        let simple = sp.g.roots().simple().to_vec();
        let ip = induce(&sp, &simple[..2]).unwrap();
        assert!(!ip.g_f.is_unimodular(&ip.h_f).unwrap());
        let (cap, values) = modular_character(&sp, &ip).unwrap();
        assert_eq!(cap.dim(), 2);
        assert_eq!(values, vec![qf(-4, 5), qf(-3, 5)]);
    }

    #[test]
    fn induction_in_stages() {
        // inducing to F2 and then to F1 ⊂ F2 gives the same h_F1
        for name in ["triple-sl2", "group-sl3", "symmetric-sl4"] {
            let (sp, _) = analyzed(name);
            let simple = sp.g.roots().simple().to_vec();
            for f2 in spherical::index_subsets(simple.len()) {
                let f2: Vec<usize> = f2.iter().map(|&i| simple[i]).collect();
                let ip2 = induce(&sp, &f2).unwrap();
                for f1 in spherical::index_subsets(f2.len()) {
                    let f1: Vec<usize> = f1.iter().map(|&i| f2[i]).collect();
                    let direct = induce(&sp, &f1).unwrap();
                    let local = ip2.local_roots(&sp.g, &f1);
                    let staged = induce(&ip2.pair, &local).unwrap();
                    let lifted: Vec<Vector> =
                        staged.h_f_in_parent().basis().iter().map(|b| ip2.to_parent(b)).collect();
                    assert_eq!(Subspace::new(sp.g.dim(), &lifted), direct.h_f_in_parent(), "{name} {f2:?} {f1:?}");
                }
            }
        }
    }

    #[test]
    fn non_unimodular_parent() {
        let p = catalog::build("nbar-sl2").unwrap();
        let borel = p.h.sum(&p.g.a_space());
        let sp = spherical::standardize(&p.g, &borel).unwrap();
        let srd = spherical::spherical_roots(&sp).unwrap();
        let ip = induce(&sp, &[]).unwrap();
        assert!(matches!(modular_character(&sp, &ip), Err(Error::ParentNotUnimodular)));
        assert!(matches!(hat_modular_check(&sp, &srd), Err(Error::ParentNotUnimodular)));
    }
}
