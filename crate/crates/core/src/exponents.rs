//! Leading exponents and the combinatorial temperedness criteria.
//!
//! Functionals on `a_Z` are stored by their values on the adapted basis
//! `(ω_1, ..., ω_s, e_1, ..., e_k)` where `e_i` is the edge basis of the
//! root datum. In these coordinates `σ_i` is the `i`-th unit vector.

use crate::error::{ensure, Error, Result};
use crate::induction;
use crate::linalg::{self, Subspace, Vector, Q};
use crate::spherical::{self, SphericalPair, SphericalRootDatum};
use crate::wavefront;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexFunctional {
    pub re: Vector,
    pub im: Vector,
}

impl ComplexFunctional {
    pub fn real(re: Vector) -> Self {
        let im = linalg::zeros(re.len());
        ComplexFunctional { re, im }
    }

    pub fn dim(&self) -> usize {
        self.re.len()
    }

    fn select(&self, idx: &[usize]) -> ComplexFunctional {
        ComplexFunctional {
            re: idx.iter().map(|&i| self.re[i].clone()).collect(),
            im: idx.iter().map(|&i| self.im[i].clone()).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExponentData {
    /// Edge character, one value per edge basis vector.
    pub chi: ComplexFunctional,
    pub e_lead: Vec<ComplexFunctional>,
    /// Carried as metadata only.
    pub degree_bound: u32,
}

impl ExponentData {
    /// Checks lengths, non-emptiness and `λ|_edge = -χ`.
    pub fn new(
        srd: &SphericalRootDatum,
        chi: ComplexFunctional,
        e_lead: Vec<ComplexFunctional>,
        degree_bound: u32,
    ) -> Result<Self> {
        let s = srd.s();
        let k = srd.edge.len();
        if chi.re.len() != k || chi.im.len() != k {
            return Err(Error::DimensionMismatch(format!("edge character needs {k} values")));
        }
        if e_lead.is_empty() {
            return Err(Error::AssertionFailure("leading exponents must be nonempty".into()));
        }
        for l in &e_lead {
            if l.re.len() != s + k || l.im.len() != s + k {
                return Err(Error::DimensionMismatch(format!("exponents need {} values", s + k)));
            }
            let on_edge = l.select(&(s..s + k).collect::<Vec<_>>());
            if on_edge.re != linalg::neg(&chi.re) || on_edge.im != linalg::neg(&chi.im) {
                return Err(Error::EdgeMismatch);
            }
        }
        Ok(ExponentData { chi, e_lead, degree_bound })
    }
}

/// Coordinates of `x ∈ a_Z` (in `a` coordinates) in the adapted basis.
pub fn adapted_coords(srd: &SphericalRootDatum, x: &[Q]) -> Result<Vector> {
    let mut basis = srd.omegas.clone();
    basis.extend(srd.edge.iter().cloned());
    linalg::coordinates(&basis, x)
        .ok_or_else(|| Error::DimensionMismatch("vector outside a_Z".into()))
}

/// Value of a functional (adapted coordinates) at `x ∈ a_Z`.
fn eval(srd: &SphericalRootDatum, f: &[Q], x: &[Q]) -> Result<Q> {
    Ok(linalg::dot(f, &adapted_coords(srd, x)?))
}

/// `ρ_Q` restricted to `a_Z`, in adapted coordinates.
pub fn rho_q(sp: &SphericalPair, srd: &SphericalRootDatum) -> Vector {
    let rho = induction::rho_q_on_a(sp);
    srd.omegas.iter().chain(&srd.edge).map(|x| linalg::dot(&rho, x)).collect()
}

/// `Λ_{V,η}`: coordinatewise minimum of `Re λ(ω_j)`, and `-Re χ` on the edge.
pub fn lambda_v_eta(srd: &SphericalRootDatum, ed: &ExponentData) -> Vector {
    let s = srd.s();
    let mut out: Vector = (0..s)
        .map(|j| ed.e_lead.iter().map(|l| l.re[j].clone()).min().expect("nonempty"))
        .collect();
    out.extend(linalg::neg(&ed.chi.re));
    out
}

fn edge_condition(srd: &SphericalRootDatum, diff: &[Q]) -> bool {
    diff[srd.s()..].iter().all(Zero::is_zero)
}

pub fn is_tempered(sp: &SphericalPair, srd: &SphericalRootDatum, ed: &ExponentData) -> bool {
    let diff = linalg::sub(&lambda_v_eta(srd, ed), &rho_q(sp, srd));
    diff[..srd.s()].iter().all(|x| !x.is_negative()) && edge_condition(srd, &diff)
}

pub fn strong_inequality(sp: &SphericalPair, srd: &SphericalRootDatum, ed: &ExponentData) -> bool {
    let diff = linalg::sub(&lambda_v_eta(srd, ed), &rho_q(sp, srd));
    diff[..srd.s()].iter().all(|x| x.is_positive()) && edge_condition(srd, &diff)
}

/// `{σ_i : ρ_Q(ω_i) < Re λ(ω_i)}`.
pub fn i_eta_lambda(
    sp: &SphericalPair,
    srd: &SphericalRootDatum,
    ed: &ExponentData,
    lambda: &ComplexFunctional,
) -> Result<Vec<usize>> {
    let rho = rho_q(sp, srd);
    let big = lambda_v_eta(srd, ed);
    let mut out = Vec::new();
    for i in 0..srd.s() {
        if !(rho[i] <= big[i] && big[i] <= lambda.re[i]) {
            return Err(Error::NotTempered);
        }
        if rho[i] < lambda.re[i] {
            out.push(i);
        }
    }
    Ok(out)
}

/// Positions of the adapted basis spanning `a_I`: `ω_j` for `j ∉ I`, then the edge.
fn a_i_positions(srd: &SphericalRootDatum, subset: &[usize]) -> Vec<usize> {
    let s = srd.s();
    (0..s).filter(|j| !subset.contains(j)).chain(s..s + srd.edge.len()).collect()
}

/// `λ|_{a_I}` in the coordinates of [`a_i_positions`].
pub fn restrict_to_a_i(srd: &SphericalRootDatum, subset: &[usize], f: &ComplexFunctional) -> ComplexFunctional {
    f.select(&a_i_positions(srd, subset))
}

/// `𝓔_{lead,I}`: the restrictions `λ|_{a_I}` not lying strictly above another
/// one by an element of `N_0[S ∖ I]`.
pub fn lead_i(srd: &SphericalRootDatum, ed: &ExponentData, subset: &[usize]) -> Result<Vec<ComplexFunctional>> {
    if subset.iter().any(|&i| i >= srd.s()) {
        return Err(Error::InvalidSubset("spherical root index out of range".into()));
    }
    let free = srd.s() - subset.len();
    let restricted: Vec<ComplexFunctional> = ed.e_lead.iter().map(|l| restrict_to_a_i(srd, subset, l)).collect();
    // μ' < μ iff μ - μ' is a nonzero element of N_0 on the ω_j, zero elsewhere
    let below = |lo: &ComplexFunctional, hi: &ComplexFunctional| -> bool {
        lo.im == hi.im && {
            let d = linalg::sub(&hi.re, &lo.re);
            d[free..].iter().all(Zero::is_zero)
                && d[..free].iter().all(|x| x.is_integer() && !x.is_negative())
                && d[..free].iter().any(|x| !x.is_zero())
        }
    };
    let mut out: Vec<ComplexFunctional> = Vec::new();
    for mu in &restricted {
        if !restricted.iter().any(|lo| below(lo, mu)) && !out.contains(mu) {
            out.push(mu.clone());
        }
    }
    if out.is_empty() {
        return Err(Error::AssertionFailure("empty leading set for a subset".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct OptimalPair {
    /// Index into `e_lead`.
    pub lambda: usize,
    pub subset: Vec<usize>,
    pub mu: ComplexFunctional,
    /// `ω_{σ,I}` for `σ ∈ I`, in `a` coordinates.
    pub omega_sigma_i: Vec<Vector>,
    /// `Λ_{V,η,I}` in adapted coordinates.
    pub lambda_i: Vector,
    /// `F_I` when the space is wave-front.
    pub f_i: Option<Vec<usize>>,
    /// Whether `η_I` is nonzero is not decided here.
    pub status: &'static str,
}

#[derive(Clone, Debug)]
pub struct TemperedReport {
    pub lambda_v_eta: Vector,
    pub rho_q: Vector,
    pub is_tempered: bool,
    pub strong_inequality: bool,
    pub min_eta: usize,
    pub optimal: Vec<OptimalPair>,
}

/// `ω_σ` minus its orthogonal projection to `a_I`.
fn omega_sigma_i(sp: &SphericalPair, srd: &SphericalRootDatum, subset: &[usize], k: usize) -> Result<Vector> {
    let a_i = srd.a_i_space(subset)?;
    let ip = sp.g.roots().inner_product();
    let complement = a_i.perp(ip);
    let c = linalg::split_coordinates(complement.basis(), a_i.basis(), &srd.omegas[k])
        .expect("a = a_I ⊕ a_I^⊥");
    let mut x = srd.omegas[k].clone();
    for (ci, b) in c.iter().zip(a_i.basis()) {
        linalg::axpy(&mut x, &-ci, b);
    }
    Ok(x)
}

pub fn optimal_pairs(sp: &SphericalPair, srd: &SphericalRootDatum, ed: &ExponentData) -> Result<TemperedReport> {
    if !is_tempered(sp, srd, ed) {
        return Err(Error::NotTempered);
    }
    let rho = rho_q(sp, srd);
    let big = lambda_v_eta(srd, ed);
    let subsets = ed
        .e_lead
        .iter()
        .map(|l| i_eta_lambda(sp, srd, ed, l))
        .collect::<Result<Vec<_>>>()?;
    let min_eta = subsets.iter().map(Vec::len).min().expect("nonempty");
    let wf = wavefront::is_wavefront(sp, srd)?;
    let mut optimal = Vec::new();
    for (idx, (lambda, subset)) in ed.e_lead.iter().zip(&subsets).enumerate() {
        if subset.len() != min_eta {
            continue;
        }
        let mu = restrict_to_a_i(srd, subset, lambda);
        if !lead_i(srd, ed, subset)?.contains(&mu) {
            continue;
        }
        let pos = a_i_positions(srd, subset);
        let on_a_i = |v: &Vector| -> Vector { pos.iter().map(|&i| v[i].clone()).collect() };
        ensure(
            on_a_i(&rho) == on_a_i(&big) && on_a_i(&big) == mu.re,
            || "ρ_Q, Λ and Re λ differ on a_I".into(),
        )?;
        for (other, other_subset) in ed.e_lead.iter().zip(&subsets) {
            if restrict_to_a_i(srd, subset, other).re == mu.re {
                ensure(
                    other_subset.iter().all(|i| subset.contains(i)),
                    || "exponent with the same restriction has a larger subset".into(),
                )?;
            }
        }
        let mut lambda_i = rho.clone();
        let mut omegas = Vec::new();
        for &k in subset {
            let w = omega_sigma_i(sp, srd, subset, k)?;
            let mut best: Option<Q> = None;
            for g in &ed.e_lead {
                if restrict_to_a_i(srd, subset, g).re == mu.re {
                    let v = eval(srd, &g.re, &w)?;
                    best = Some(match best {
                        Some(b) if b <= v => b,
                        _ => v,
                    });
                }
            }
            let best = best.expect("λ itself qualifies");
            // Λ_I = ρ_Q on a_I; fix its value at ω_{σ,I} = ω_σ - (part in a_I)
            let at_w_rho = eval(srd, &rho, &w)?;
            lambda_i[k] = &rho[k] + (&best - &at_w_rho);
            ensure(
                eval(srd, &lambda_i, &w)? - at_w_rho > Q::zero(),
                || "Λ_I - ρ_Q is not positive at ω_σ,I".into(),
            )?;
            omegas.push(w);
        }
        let f_i = if wf {
            Some(wavefront::interlacing_data(sp, srd, subset)?.1)
        } else {
            None
        };
        optimal.push(OptimalPair {
            lambda: idx,
            subset: subset.clone(),
            mu,
            omega_sigma_i: omegas,
            lambda_i,
            f_i,
            status: "candidate",
        });
    }
    Ok(TemperedReport {
        lambda_v_eta: big,
        rho_q: rho,
        is_tempered: true,
        strong_inequality: strong_inequality(sp, srd, ed),
        min_eta,
        optimal,
    })
}

#[derive(Clone, Debug)]
pub struct EmbeddingStep {
    pub lambda: usize,
    pub subset: Vec<usize>,
    pub f: Vec<usize>,
    pub parabolic: Subspace,
    pub levi: Subspace,
    pub h_prime: Subspace,
}

/// For each optimal pair: the opposite parabolic `p̄_F`, `F = F_I`, its Levi
/// and `g_F ∩ h_I`.
pub fn embedding_pipeline(sp: &SphericalPair, srd: &SphericalRootDatum, ed: &ExponentData) -> Result<Vec<EmbeddingStep>> {
    if !wavefront::is_wavefront(sp, srd)? {
        return Err(Error::NotWavefront);
    }
    let report = optimal_pairs(sp, srd, ed)?;
    let g = &sp.g;
    report
        .optimal
        .iter()
        .map(|op| {
            let f = op.f_i.clone().expect("wave-front");
            let h_i = spherical::degenerate(sp, srd, &op.subset)?;
            let parabolic = g.opposite_parabolic(&f)?;
            let levi = g.levi(&f)?;
            ensure(
                h_i.contains_space(&g.opposite_nilradical(&f)?) && parabolic.contains_space(&h_i),
                || "h_I is not interlaced by the opposite parabolic".into(),
            )?;
            let h_prime = levi.intersect(&h_i);
            Ok(EmbeddingStep { lambda: op.lambda, subset: op.subset.clone(), f, parabolic, levi, h_prime })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::{q, qf, to_q};

    fn analyzed(name: &str) -> (SphericalPair, SphericalRootDatum) {
        let p = catalog::build(name).unwrap();
        let sp = spherical::standardize(&p.g, &p.h).unwrap();
        let srd = spherical::spherical_roots(&sp).unwrap();
        (sp, srd)
    }

    fn real(v: &[Q]) -> ComplexFunctional {
        ComplexFunctional::real(v.to_vec())
    }

    fn data(srd: &SphericalRootDatum, lead: &[Vector]) -> ExponentData {
        ExponentData::new(srd, real(&[]), lead.iter().map(|l| real(l)).collect(), 0).unwrap()
    }

    #[test]
    fn rho_on_catalog_pairs() {
        // σ_j = α_j in the triple space, so ρ_Q(ω_j) = 1/2
        let (sp, srd) = analyzed("triple-so12");
        assert_eq!(rho_q(&sp, &srd), vec![qf(1, 2); 3]);
        let (sp, srd) = analyzed("full-sl2");
        assert!(rho_q(&sp, &srd).is_empty());
        let (sp, srd) = analyzed("group-sl3");
        assert_eq!(rho_q(&sp, &srd), to_q(&[1, 1]));
    }

    #[test]
    fn lambda_is_the_coordinatewise_minimum() {
        let (sp, srd) = analyzed("group-sl3");
        let ed = data(&srd, &[vec![q(3), qf(1, 2)], vec![q(1), q(4)]]);
        assert_eq!(lambda_v_eta(&srd, &ed), vec![q(1), qf(1, 2)]);
        assert!(!is_tempered(&sp, &srd, &ed));
        let ed = data(&srd, &[to_q(&[1, 1])]);
        assert!(is_tempered(&sp, &srd, &ed) && !strong_inequality(&sp, &srd, &ed));
        let ed = data(&srd, &[to_q(&[2, 2])]);
        assert!(is_tempered(&sp, &srd, &ed) && strong_inequality(&sp, &srd, &ed));
        let ed = data(&srd, &[to_q(&[0, 2])]);
        assert!(!is_tempered(&sp, &srd, &ed));
        assert!(matches!(optimal_pairs(&sp, &srd, &ed), Err(Error::NotTempered)));
    }

    #[test]
    fn edge_condition_is_enforced() {
        let (sp, srd) = analyzed("nonwf1-sl3-sp1");
        let chi = real(&[q(1)]);
        let bad = ExponentData::new(&srd, chi.clone(), vec![real(&[q(2), q(1)])], 0);
        assert!(matches!(bad, Err(Error::EdgeMismatch)));
        let ed = ExponentData::new(&srd, chi.clone(), vec![real(&[q(2), q(-1)])], 3).unwrap();
        // Λ = -Re χ on the edge, where ρ_Q vanishes
        assert_eq!(lambda_v_eta(&srd, &ed), to_q(&[2, -1]));
        assert!(!is_tempered(&sp, &srd, &ed));
        let ed = ExponentData::new(&srd, real(&[q(0)]), vec![real(&[q(2), q(0)])], 3).unwrap();
        assert!(strong_inequality(&sp, &srd, &ed));
        assert!(ExponentData::new(&srd, chi, vec![], 0).is_err());
    }

    #[test]
    fn subsets_of_strict_positions() {
        let (sp, srd) = analyzed("group-sl3");
        let ed = data(&srd, &[to_q(&[1, 1]), to_q(&[2, 1]), to_q(&[2, 3])]);
        let got: Vec<Vec<usize>> = ed.e_lead.iter().map(|l| i_eta_lambda(&sp, &srd, &ed, l).unwrap()).collect();
        assert_eq!(got, vec![vec![], vec![0], vec![0, 1]]);
        let rep = optimal_pairs(&sp, &srd, &ed).unwrap();
        assert_eq!(rep.min_eta, 0);
        assert_eq!(rep.optimal.len(), 1);
        assert_eq!(rep.optimal[0].lambda_i, rho_q(&sp, &srd));
    }

    #[test]
    fn leading_sets_by_hand() {
        let (_, srd) = analyzed("group-sl3");
        // on a_I = span ω_1 the values 2 and 3 differ by σ_1, so only 2 survives
        let ed = data(&srd, &[vec![q(2), qf(3, 2)], vec![q(3), qf(3, 2)]]);
        assert_eq!(lead_i(&srd, &ed, &[1]).unwrap(), vec![real(&[q(2)])]);
        let ed = data(&srd, &[vec![q(2), qf(3, 2)], vec![qf(5, 2), qf(3, 2)]]);
        assert_eq!(lead_i(&srd, &ed, &[1]).unwrap().len(), 2);
        let ed = data(&srd, &[vec![q(2), qf(3, 2)], vec![q(3), qf(5, 2)]]);
        assert_eq!(lead_i(&srd, &ed, &[]).unwrap(), vec![real(&[q(2), qf(3, 2)])]);
        // different imaginary parts never dominate each other
        let mut shifted = real(&[q(3), qf(5, 2)]);
        shifted.im = to_q(&[1, 0]);
        let ed = ExponentData::new(&srd, real(&[]), vec![real(&[q(2), qf(3, 2)]), shifted], 0).unwrap();
        assert_eq!(lead_i(&srd, &ed, &[]).unwrap().len(), 2);
        // I = S leaves only the edge, where everything is -χ
        assert_eq!(lead_i(&srd, &ed, &[0, 1]).unwrap(), vec![real(&[])]);
        assert!(matches!(lead_i(&srd, &ed, &[5]), Err(Error::InvalidSubset(_))));
    }

    #[test]
    fn ties_are_all_reported() {
        let (sp, srd) = analyzed("group-sl3");
        let ed = data(&srd, &[to_q(&[2, 1]), to_q(&[1, 2]), to_q(&[3, 3])]);
        let rep = optimal_pairs(&sp, &srd, &ed).unwrap();
        assert_eq!(rep.min_eta, 1);
        let found: Vec<(usize, Vec<usize>)> = rep.optimal.iter().map(|o| (o.lambda, o.subset.clone())).collect();
        assert_eq!(found, vec![(0, vec![0]), (1, vec![1])]);
        assert!(rep.optimal.iter().all(|o| o.status == "candidate"));
    }

    #[test]
    fn strong_inequality_needs_no_induction() {
        let (sp, srd) = analyzed("group-sl2");
        let ed = data(&srd, &[to_q(&[2])]);
        let steps = embedding_pipeline(&sp, &srd, &ed).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].f, sp.g.roots().simple().to_vec());
        assert_eq!(steps[0].parabolic.dim(), sp.g.dim());
        assert_eq!(steps[0].h_prime, sp.h);
    }

    #[test]
    fn empty_subset_on_the_triple_space() {
        let (sp, srd) = analyzed("triple-sl2");
        let ed = data(&srd, &[vec![qf(1, 2); 3]]);
        let steps = embedding_pipeline(&sp, &srd, &ed).unwrap();
        assert_eq!(steps[0].subset, Vec::<usize>::new());
        assert!(steps[0].f.is_empty());
        assert!(steps[0].h_prime.contains_space(&sp.l_cap_h));
        let (sp, srd) = analyzed("nonwf1-sl3-sp1");
        let ed = ExponentData::new(&srd, real(&[q(0)]), vec![real(&[q(1), q(0)])], 0).unwrap();
        assert!(matches!(embedding_pipeline(&sp, &srd, &ed), Err(Error::NotWavefront)));
    }

    #[test]
    fn omega_sigma_i_is_orthogonal_to_a_i() {
        let (sp, srd) = analyzed("symmetric-sl3");
        let ip = sp.g.roots().inner_product();
        let w = omega_sigma_i(&sp, &srd, &[0], 0).unwrap();
        let a_i = srd.a_i_space(&[0]).unwrap();
        assert!(a_i.basis().iter().all(|b| linalg::bilinear(ip, b, &w).is_zero()));
        assert_eq!(linalg::dot(&srd.spherical_roots[0], &w), q(1));
    }
}
