//! Polyhedral cones `{x : f(x) <= 0 for every f}` over the rationals.
//!
//! Generators are computed with the double description method: the cone is
//! built up one inequality at a time, keeping a lineality basis and a list of
//! rays, and non-extremal rays are pruned by the rank of their tight set.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, is_zero, neg, primitive, rank, scale, sub, Subspace, Vector, Q};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    /// Basis of `c ∩ -c` in reduced echelon form.
    pub lineality: Vec<Vector>,
    /// Extremal rays of the pointed part, primitive integral, orthogonal to the
    /// lineality space and sorted.
    pub rays: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    inequalities: Vec<Vector>,
    generators: Generators,
}

impl Cone {
    pub fn new(dim: usize, inequalities: Vec<Vector>) -> Result<Cone> {
        if let Some(f) = inequalities.iter().find(|f| f.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "inequality of length {} in a cone of dimension {dim}",
                f.len()
            )));
        }
        let generators = double_description(dim, &inequalities);
        Ok(Cone { dim, inequalities, generators })
    }

    /// The cone generated by a lineality space and rays.
    pub fn from_generators(dim: usize, lineality: &[Vector], rays: &[Vector]) -> Result<Cone> {
        if lineality.iter().chain(rays).any(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch("generator length".into()));
        }
        Cone::new(dim, inequalities_of(dim, lineality, rays))
    }

    pub fn full(dim: usize) -> Cone {
        Cone::new(dim, vec![]).expect("no inequalities")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Vector] {
        &self.inequalities
    }

    pub fn generators(&self) -> &Generators {
        &self.generators
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.inequalities.iter().all(|f| !dot(f, x).is_positive())
    }

    /// Inequalities describing the facets, recomputed from the generators.
    pub fn facets(&self) -> Vec<Vector> {
        inequalities_of(self.dim, &self.generators.lineality, &self.generators.rays)
    }

    /// Cone plus a linear subspace.
    pub fn plus_subspace(&self, span: &[Vector]) -> Result<Cone> {
        let mut lin = self.generators.lineality.clone();
        lin.extend(span.iter().cloned());
        Cone::from_generators(self.dim, &lin, &self.generators.rays)
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Cone) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

/// Basis of the largest subspace contained in the cone.
pub fn edge(c: &Cone) -> Vec<Vector> {
    c.generators.lineality.clone()
}

pub fn cone_contains(outer: &Cone, inner: &Cone) -> bool {
    outer.dim == inner.dim
        && inner.generators.rays.iter().all(|r| outer.contains(r))
        && inner
            .generators
            .lineality
            .iter()
            .all(|l| outer.contains(l) && outer.contains(&neg(l)))
}

/// Image of `c` under the projection along `span(kernel)` onto `span(target)`,
/// as a cone in `target` coordinates.
pub fn project_cone(c: &Cone, kernel: &[Vector], target: &[Vector]) -> Result<Cone> {
    let mut all = kernel.to_vec();
    all.extend(target.iter().cloned());
    if all.iter().any(|v| v.len() != c.dim) || all.len() != c.dim || rank(&all, c.dim) != c.dim {
        return Err(Error::DimensionMismatch(
            "kernel and target do not form a direct sum decomposition".into(),
        ));
    }
    let pr = |v: &Vector| linalg::split_coordinates(kernel, target, v).expect("spanning");
    let lin: Vec<Vector> = c.generators.lineality.iter().map(pr).collect();
    let rays: Vec<Vector> = c.generators.rays.iter().map(pr).collect();
    Cone::from_generators(target.len(), &lin, &rays)
}

/// Inequalities of the cone generated by `lineality` and `rays`, obtained from
/// the generators of its dual cone.
fn inequalities_of(dim: usize, lineality: &[Vector], rays: &[Vector]) -> Vec<Vector> {
    let mut dual_ineqs: Vec<Vector> = Vec::new();
    for l in lineality {
        dual_ineqs.push(l.clone());
        dual_ineqs.push(neg(l));
    }
    dual_ineqs.extend(rays.iter().cloned());
    let dual = double_description(dim, &dual_ineqs);
    let mut out = dual.rays.clone();
    for l in &dual.lineality {
        out.push(l.clone());
        out.push(neg(l));
    }
    out
}

fn double_description(dim: usize, inequalities: &[Vector]) -> Generators {
    let mut lin: Vec<Vector> = linalg::identity(dim);
    let mut rays: Vec<Vector> = Vec::new();
    let mut seen: Vec<Vector> = Vec::new();
    for f in inequalities {
        if is_zero(f) {
            continue;
        }
        seen.push(f.clone());
        if let Some(pos) = lin.iter().position(|l| !dot(f, l).is_zero()) {
            let mut l0 = lin.swap_remove(pos);
            if dot(f, &l0).is_positive() {
                l0 = neg(&l0);
            }
            let f0 = dot(f, &l0);
            let shift = |v: &Vector| {
                let c = dot(f, v) / &f0;
                sub(v, &scale(&c, &l0))
            };
            lin = lin.iter().map(shift).collect();
            rays = rays.iter().map(shift).collect();
            rays.push(l0);
        } else {
            let mut next = Vec::new();
            let mut pos = Vec::new();
            let mut negs = Vec::new();
            for r in rays.drain(..) {
                let v = dot(f, &r);
                if v.is_positive() {
                    pos.push((v, r));
                } else {
                    if v.is_negative() {
                        negs.push((v.clone(), r.clone()));
                    }
                    next.push(r);
                }
            }
            for (fp, p) in &pos {
                for (fn_, n) in &negs {
                    next.push(sub(&scale(fp, n), &scale(fn_, p)));
                }
            }
            rays = next;
        }
        rays = normalize(dim, &lin, rays, &seen);
    }
    let lin = Subspace::new(dim, &lin).basis().to_vec();
    let rays = normalize(dim, &lin, rays, &seen);
    Generators { lineality: lin, rays }
}

/// Projects rays orthogonally to the lineality space, makes them primitive,
/// removes duplicates and drops rays that are not extremal.
fn normalize(dim: usize, lin: &[Vector], rays: Vec<Vector>, ineqs: &[Vector]) -> Vec<Vector> {
    let lin_space = Subspace::new(dim, lin);
    let comp = lin_space.annihilator();
    let pointed_dim = dim - lin_space.dim();
    let mut out: Vec<Vector> = Vec::new();
    for r in rays {
        let r = orth_project(&comp, lin_space.basis(), &r);
        if is_zero(&r) {
            continue;
        }
        let r = primitive(&r);
        if out.contains(&r) {
            continue;
        }
        let tight: Vec<Vector> = ineqs.iter().filter(|f| dot(f, &r).is_zero()).cloned().collect();
        if rank(&tight, dim) + 1 == pointed_dim {
            out.push(r);
        }
    }
    out.sort_by(|a, b| linalg::cmp_vec(a, b));
    out
}

fn orth_project(comp: &Subspace, lin: &[Vector], v: &Vector) -> Vector {
    if lin.is_empty() {
        return v.clone();
    }
    linalg::split_coordinates(lin, comp.basis(), v)
        .map(|c| {
            let mut w = linalg::zeros(v.len());
            for (ci, b) in c.iter().zip(comp.basis()) {
                linalg::axpy(&mut w, ci, b);
            }
            w
        })
        .expect("complementary subspaces")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::to_q;

    #[test]
    fn orthant_rays() {
        let c = Cone::new(2, vec![to_q(&[-1, 0]), to_q(&[0, -1])]).unwrap();
        assert!(c.generators().lineality.is_empty());
        assert_eq!(c.generators().rays, vec![to_q(&[0, 1]), to_q(&[1, 0])]);
    }

    #[test]
    fn half_plane_has_line_edge() {
        let c = Cone::new(2, vec![to_q(&[1, 1])]).unwrap();
        assert_eq!(edge(&c).len(), 1);
        assert_eq!(c.generators().rays, vec![to_q(&[-1, -1])]);
    }

    #[test]
    fn empty_inequalities_give_full_space() {
        let c = Cone::new(3, vec![]).unwrap();
        assert_eq!(edge(&c).len(), 3);
        assert!(c.generators().rays.is_empty());
    }

    #[test]
    fn redundant_inequalities_are_harmless() {
        let a = Cone::new(2, vec![to_q(&[-1, 0]), to_q(&[0, -1]), to_q(&[-1, -1])]).unwrap();
        let b = Cone::new(2, vec![to_q(&[-1, 0]), to_q(&[0, -1])]).unwrap();
        assert_eq!(a, b);
        assert!(cone_contains(&a, &b) && cone_contains(&b, &a));
    }

    #[test]
    fn projection_of_negative_chamber() {
        // {x <= 0, y <= 0} projected along (1,-1) onto span (1,1)
        let c = Cone::new(2, vec![to_q(&[1, 0]), to_q(&[0, 1])]).unwrap();
        let p = project_cone(&c, &[to_q(&[1, -1])], &[to_q(&[1, 1])]).unwrap();
        assert_eq!(p.generators().rays, vec![to_q(&[-1])]);
        assert!(project_cone(&c, &[to_q(&[1, 1])], &[to_q(&[2, 2])]).is_err());
    }

    #[test]
    fn square_pyramid_has_four_rays() {
        // x_i <= z style pyramid in 3d
        let ineqs = vec![
            to_q(&[1, 0, -1]),
            to_q(&[-1, 0, -1]),
            to_q(&[0, 1, -1]),
            to_q(&[0, -1, -1]),
        ];
        let c = Cone::new(3, ineqs).unwrap();
        assert_eq!(c.generators().rays.len(), 4);
        let back = Cone::from_generators(3, &[], &c.generators().rays).unwrap();
        assert_eq!(back, c);
    }
}
