//! Double description: H-representation to V-representation, exact.
//!
//! The polyhedron is homogenized to the cone `{(x, l) : f(x) l-scaled >= 0, l >= 0}`
//! and its extreme rays are built incrementally with integer vectors. The
//! lineality space is eliminated on the fly; adjacency uses the combinatorial
//! zero-set test.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{HPolyhedron, PolyError};
use crate::exact::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub vertices: Vec<Vec<Q>>,
    pub rays: Vec<Vec<Q>>,
}

impl VRep {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

type IVec = Vec<BigInt>;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: IVec) -> IVec {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

struct Ray {
    v: IVec,
    zeros: BTreeSet<usize>,
}

/// Exact V-representation of `p`; an empty polyhedron yields no generators.
pub fn dual_description(p: &HPolyhedron) -> Result<VRep, PolyError> {
    p.check_dims()?;
    let d = p.dim + 1;
    // homogenized constraint rows, all meaning `row . (x, l) >= 0`
    let mut rows: Vec<IVec> = Vec::new();
    let mut unit = vec![BigInt::zero(); d];
    unit[p.dim] = BigInt::from(1);
    rows.push(unit);
    for f in &p.inequalities {
        let (mut c, k) = f.to_integer_row();
        c.push(k);
        rows.push(c);
    }
    for f in &p.equalities {
        let (mut c, k) = f.to_integer_row();
        c.push(k);
        rows.push(c.iter().map(|x| -x).collect());
        rows.push(c);
    }

    let mut lineality: Vec<IVec> = (0..d)
        .map(|i| {
            let mut e = vec![BigInt::zero(); d];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, a) in rows.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -&*x);
                al = -al;
            }
            // project everything else onto a^perp along l
            let project = |v: &IVec| -> IVec {
                let av = dot(a, v);
                if av.is_zero() {
                    return v.clone();
                }
                primitive(v.iter().zip(&l).map(|(x, y)| &al * x - &av * y).collect())
            };
            lineality = lineality.iter().map(project).collect();
            for r in rays.iter_mut() {
                r.v = project(&r.v);
                r.zeros.insert(idx);
            }
            // lineality vectors are tight on every constraint seen so far
            rays.push(Ray { v: primitive(l), zeros: (0..idx).collect() });
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if minus.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &i in &plus {
            for &j in &minus {
                let common: BTreeSet<usize> = rays[i].zeros.intersection(&rays[j].zeros).copied().collect();
                let adjacent = (0..rays.len()).filter(|&k| k != i && k != j).all(|k| !common.is_subset(&rays[k].zeros));
                if !adjacent {
                    continue;
                }
                let (ap, an) = (&vals[i], -&vals[j]);
                let v = primitive(rays[j].v.iter().zip(&rays[i].v).map(|(n, p)| ap * n + &an * p).collect());
                let mut zeros = common;
                zeros.insert(idx);
                fresh.push(Ray { v, zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.insert(idx);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }

    let mut vertices = BTreeSet::new();
    let mut out_rays = BTreeSet::new();
    for r in &rays {
        let l = &r.v[p.dim];
        if l.is_zero() {
            out_rays.insert(r.v[..p.dim].to_vec());
        } else {
            let v: Vec<Q> = r.v[..p.dim].iter().map(|x| Q::new(x.clone(), l.clone())).collect();
            vertices.insert(v);
        }
    }
    if vertices.is_empty() {
        return Ok(VRep { vertices: Vec::new(), rays: Vec::new() });
    }
    if !lineality.is_empty() {
        return Err(PolyError::NotPointed);
    }
    Ok(VRep {
        vertices: vertices.into_iter().collect(),
        rays: out_rays.into_iter().map(|r| r.into_iter().map(Q::from_integer).collect()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::polyhedra::AffineForm;

    fn box_poly(n: usize) -> HPolyhedron {
        let mut p = HPolyhedron::new(n);
        for i in 0..n {
            p.add_inequality(AffineForm::coordinate(n, i));
            let mut hi = AffineForm::coordinate(n, i).negate();
            hi.constant = q(1);
            p.add_inequality(hi);
        }
        p
    }

    #[test]
    fn unit_square_has_four_vertices() {
        let v = dual_description(&box_poly(2)).unwrap();
        assert_eq!(v.vertices.len(), 4);
        assert!(v.rays.is_empty());
    }

    #[test]
    fn cube_dim4() {
        assert_eq!(dual_description(&box_poly(4)).unwrap().vertices.len(), 16);
    }

    #[test]
    fn standard_simplex() {
        for n in 1..=5 {
            let mut p = HPolyhedron::new(n);
            for i in 0..n {
                p.add_inequality(AffineForm::coordinate(n, i));
            }
            p.add_inequality(AffineForm::new(vec![q(-1); n], q(1)));
            let v = dual_description(&p).unwrap();
            assert_eq!(v.vertices.len(), n + 1);
        }
    }

    #[test]
    fn orthant_has_rays() {
        let mut p = HPolyhedron::new(2);
        p.add_inequality(AffineForm::from_i64(&[1, 0], -1));
        p.add_inequality(AffineForm::from_i64(&[0, 1], 0));
        let v = dual_description(&p).unwrap();
        assert_eq!(v.vertices, vec![vec![q(1), q(0)]]);
        assert_eq!(v.rays.len(), 2);
    }

    #[test]
    fn empty_and_non_pointed() {
        let mut p = HPolyhedron::new(1);
        p.add_inequality(AffineForm::from_i64(&[1], -2));
        p.add_inequality(AffineForm::from_i64(&[-1], 1));
        assert!(dual_description(&p).unwrap().is_empty());
        let mut h = HPolyhedron::new(2);
        h.add_inequality(AffineForm::from_i64(&[1, 0], 0));
        assert_eq!(dual_description(&h), Err(PolyError::NotPointed));
    }

    #[test]
    fn equality_cuts_square_to_diagonal() {
        let mut p = box_poly(2);
        p.add_equality(AffineForm::from_i64(&[1, -1], 0));
        let v = dual_description(&p).unwrap();
        assert_eq!(v.vertices, vec![vec![q(0), q(0)], vec![q(1), q(1)]]);
    }
}
