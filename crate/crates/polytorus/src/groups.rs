//! Finite isometry groups: closure, special and extended special groups,
//! the plane-reflection group that governs which lattices a polyhedron can
//! preserve, Coxeter-relation verification, and torus-isometry
//! representatives.

use std::collections::HashMap;

use crate::geom::{Mat3, Vec3};
use crate::isometry::{Iso3, IsometryKind, Order};
use crate::lattice::Lattice3;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generator {0} is not involutory")]
    NotInvolutory(usize),
    #[error("generator {0} is neither a plane reflection nor a half-turn")]
    NotReflectionOrHalfTurn(usize),
    #[error("linear part does not preserve the lattice")]
    NotNormalizing,
    #[error("lattice does not have full rank 3")]
    NotFullRank,
}

/// A finite group of exact isometries with deduplicated elements.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    elements: Vec<Iso3>,
    generators: Vec<Iso3>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Iso3] {
        &self.elements
    }

    pub fn generators(&self) -> &[Iso3] {
        &self.generators
    }

    pub fn contains(&self, g: &Iso3) -> bool {
        self.elements.contains(g)
    }

    pub fn count_kind(&self, want: fn(&IsometryKind) -> bool) -> usize {
        self.elements.iter().filter(|e| want(&e.classify())).count()
    }
}

/// Breadth-first closure under right multiplication by the generators.
/// Finite groups are reached completely; anything larger than `cap` errors
/// out (the expected outcome for apeirohedron symmetry groups).
pub fn closure(gens: &[Iso3], cap: usize) -> Result<FiniteGroup, GroupError> {
    assert!(cap >= 1);
    let mut elements = vec![Iso3::identity()];
    let mut seen: HashMap<Iso3, ()> = HashMap::new();
    seen.insert(Iso3::identity(), ());
    let mut head = 0;
    while head < elements.len() {
        let g = elements[head];
        head += 1;
        for h in gens {
            let prod = g.compose(h);
            if !seen.contains_key(&prod) {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                seen.insert(prod, ());
                elements.push(prod);
            }
        }
    }
    Ok(FiniteGroup {
        elements,
        generators: gens.to_vec(),
    })
}

/// Group of all orthogonal components of the generators' group.
pub fn special_group(gens: &[Iso3], cap: usize) -> Result<FiniteGroup, GroupError> {
    let linear: Vec<Iso3> = gens.iter().map(Iso3::linear_part).collect();
    closure(&linear, cap)
}

/// Special group together with the central inversion.
pub fn extended_special_group(gens: &[Iso3], cap: usize) -> Result<FiniteGroup, GroupError> {
    let mut linear: Vec<Iso3> = gens.iter().map(Iso3::linear_part).collect();
    linear.push(Iso3::from_linear(Mat3::identity().neg()));
    closure(&linear, cap)
}

/// Isomorphism classes of the finite reflection groups that can occur:
/// tetrahedral [3,3], octahedral [3,4], icosahedral [3,5], and the pyramidal
/// groups C_nv generated by two mirrors at angle pi/n.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ReflectionClass {
    Td,
    Oh,
    Ih,
    Cnv(u32),
}

impl ReflectionClass {
    pub fn label(&self) -> String {
        match self {
            ReflectionClass::Td => "[3,3]".into(),
            ReflectionClass::Oh => "[3,4]".into(),
            ReflectionClass::Ih => "[3,5]".into(),
            ReflectionClass::Cnv(n) => format!("C{n}v"),
        }
    }
}

/// Identify a reflection-generated finite group by order and mirror count
/// (invariants, no abstract isomorphism search).
pub fn identify_reflection_class(g: &FiniteGroup) -> Option<ReflectionClass> {
    let mirrors = g.count_kind(|k| matches!(k, IsometryKind::PlaneReflection));
    match (g.order(), mirrors) {
        (24, 6) => Some(ReflectionClass::Td),
        (48, 9) => Some(ReflectionClass::Oh),
        (120, 15) => Some(ReflectionClass::Ih),
        (n, m) if n == 2 * m as usize && m >= 1 => Some(ReflectionClass::Cnv(m as u32)),
        _ => None,
    }
}

/// Replace each involutory linear generator part by a plane reflection
/// (itself or its negative) and return the group these mirrors generate,
/// together with its identified class. For planar and blended polyhedra only
/// the two vertex-fixing generators enter.
pub fn reflection_group(linear_gens: &[Iso3]) -> Result<(FiniteGroup, ReflectionClass), GroupError> {
    let mut mirrors = Vec::new();
    for (i, g) in linear_gens.iter().enumerate() {
        let lin = g.linear_part();
        if !lin.is_involution() {
            return Err(GroupError::NotInvolutory(i));
        }
        let s = match lin.classify() {
            IsometryKind::PlaneReflection => lin,
            IsometryKind::HalfTurn | IsometryKind::CentralInversion => {
                Iso3::from_linear(lin.linear.neg())
            }
            _ => return Err(GroupError::NotReflectionOrHalfTurn(i)),
        };
        if s.classify() != IsometryKind::PlaneReflection {
            return Err(GroupError::NotReflectionOrHalfTurn(i));
        }
        mirrors.push(s);
    }
    let g = closure(&mirrors, 1000)?;
    let class = identify_reflection_class(&g).ok_or(GroupError::CapExceeded(1000))?;
    Ok((g, class))
}

/// Check the string Coxeter relations for a generator triple of Schläfli
/// type {p, q}: involutions, commuting outer pair, and the exact orders of
/// the two rotation words. `p = None` encodes an infinite face codegree and
/// is verified as "order exceeds the bound".
pub const INFINITE_ORDER_BOUND: u32 = 24;

pub fn verify_coxeter(gens: &[Iso3; 3], p: Option<u32>, q: u32) -> bool {
    let [r0, r1, r2] = gens;
    if !(r0.is_involution() && r1.is_involution() && r2.is_involution()) {
        return false;
    }
    let r02 = r0.compose(r2);
    if r02.is_identity() || !r02.compose(&r02).is_identity() {
        return false;
    }
    let face_word = r0.compose(r1).order(INFINITE_ORDER_BOUND);
    let vertex_word = r1.compose(r2).order(INFINITE_ORDER_BOUND);
    let p_ok = match p {
        Some(p) => face_word.is(p),
        None => matches!(face_word, Order::ExceedsBound(_)),
    };
    p_ok && vertex_word.is(q)
}

/// An isometry of the torus T^3 = E^3 / Λ: a lift whose linear part
/// preserves the lattice, with the translation reduced to the canonical
/// representative modulo Λ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TorusIsometry {
    pub linear: Mat3,
    /// Canonical translation representative (fractional lattice coordinates
    /// in [0,1), expressed back in Cartesian coordinates).
    pub shift: Vec3,
}

/// Reduction context for one full-rank lattice.
#[derive(Clone, Debug)]
pub struct TorusCtx {
    pub lattice: Lattice3,
    basis: Mat3,
    basis_inv: Mat3,
}

impl TorusCtx {
    pub fn new(lattice: Lattice3) -> Result<TorusCtx, GroupError> {
        if lattice.rank() != 3 {
            return Err(GroupError::NotFullRank);
        }
        let b = lattice.basis();
        let basis = Mat3::from_rows([b[0], b[1], b[2]]);
        let basis_inv = basis.inverse();
        Ok(TorusCtx {
            lattice,
            basis,
            basis_inv,
        })
    }

    /// Canonical representative of a point modulo the lattice: fractional
    /// basis coordinates in [0,1)^3, exact and half-open.
    pub fn reduce_point(&self, p: Vec3) -> Vec3 {
        let c = p * self.basis_inv;
        let frac = Vec3::from_fn3(|i| c[i].fract());
        frac * self.basis
    }

    /// Lattice coordinates of a point (exact).
    pub fn coords(&self, p: Vec3) -> Vec3 {
        p * self.basis_inv
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        let c = *p * self.basis_inv;
        (0..3).all(|i| c[i].is_integer())
    }

    /// Induce a torus isometry from a Euclidean one. Rejected unless the
    /// linear part preserves the lattice (the normalizer criterion).
    pub fn induce(&self, f: &Iso3) -> Result<TorusIsometry, GroupError> {
        if !self.lattice.invariant_under(&f.linear_part()) {
            return Err(GroupError::NotNormalizing);
        }
        Ok(TorusIsometry {
            linear: f.linear,
            shift: self.reduce_point(f.translation),
        })
    }

    pub fn compose(&self, a: &TorusIsometry, b: &TorusIsometry) -> TorusIsometry {
        TorusIsometry {
            linear: a.linear * b.linear,
            shift: self.reduce_point(a.shift * b.linear + b.shift),
        }
    }

    /// Apply to a canonical point, producing a canonical point.
    pub fn apply(&self, f: &TorusIsometry, p: Vec3) -> Vec3 {
        self.reduce_point(p * f.linear + f.shift)
    }

    /// Closure of torus isometries, capped.
    pub fn closure_torus(
        &self,
        gens: &[TorusIsometry],
        cap: usize,
    ) -> Result<Vec<TorusIsometry>, GroupError> {
        let id = TorusIsometry {
            linear: Mat3::identity(),
            shift: Vec3::zero(),
        };
        let mut elements = vec![id];
        let mut seen: HashMap<TorusIsometry, ()> = HashMap::new();
        seen.insert(id, ());
        let mut head = 0;
        while head < elements.len() {
            let g = elements[head];
            head += 1;
            for h in gens {
                let prod = self.compose(&g, h);
                if !seen.contains_key(&prod) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    seen.insert(prod, ());
                    elements.push(prod);
                }
            }
        }
        Ok(elements)
    }
}

impl Vec3 {
    fn from_fn3(f: impl Fn(usize) -> crate::surd::Surd) -> Vec3 {
        crate::geom::v3(f(0), f(1), f(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::geom::v3;
    use crate::lattice::{make_named, FamilyParams, LatticeFamily};
    use crate::surd::{sq, sq3, surd_int, Surd};

    fn v3i(x: i128, y: i128, z: i128) -> Vec3 {
        crate::geom::v3i(x, y, z)
    }

    #[test]
    fn closure_orders_of_finite_polyhedra() {
        // |[3,3]| = 24 and |[3,4]| = 48, derived by brute closure.
        let tet = catalog::spec("{3,3}").unwrap();
        assert_eq!(closure(&tet.generators, 1000).unwrap().order(), 24);
        let oct = catalog::spec("{3,4}").unwrap();
        assert_eq!(closure(&oct.generators, 1000).unwrap().order(), 48);
        assert_eq!(closure(&[Iso3::identity()], 10).unwrap().order(), 1);
    }

    #[test]
    fn closure_is_idempotent() {
        let oct = catalog::spec("{3,4}").unwrap();
        let g = closure(&oct.generators, 1000).unwrap();
        let again = closure(g.elements(), 1000).unwrap();
        assert_eq!(again.order(), g.order());
    }

    #[test]
    fn apeirohedron_group_exceeds_cap() {
        let p = catalog::spec("{4,6|4}").unwrap();
        assert!(matches!(closure(&p.generators, 500), Err(GroupError::CapExceeded(_))));
    }

    #[test]
    fn special_groups() {
        let sq = catalog::spec("{4,4}").unwrap();
        assert_eq!(special_group(&sq.generators, 1000).unwrap().order(), 8);
        let pc = catalog::spec("{4,6|4}").unwrap();
        assert_eq!(special_group(&pc.generators, 1000).unwrap().order(), 48);
        // A group already containing -id: extended equals special.
        let oct = catalog::spec("{3,4}").unwrap();
        let s = special_group(&oct.generators, 1000).unwrap();
        let e = extended_special_group(&oct.generators, 1000).unwrap();
        assert_eq!(s.order(), e.order());
        // Index of the special group in the extended one is 1 or 2.
        for name in ["{3,3}", "{4,4}", "{6,6|3}", "{4,4}#{}"] {
            let p = catalog::spec(name).unwrap();
            let s = special_group(&p.generators, 1000).unwrap().order();
            let e = extended_special_group(&p.generators, 1000).unwrap().order();
            assert!(e == s || e == 2 * s, "{name}: {e} vs {s}");
        }
    }

    #[test]
    fn coxeter_verification() {
        let oct = catalog::spec("{3,4}").unwrap();
        assert!(verify_coxeter(&oct.generators, Some(3), 4));
        let pc = catalog::spec("{4,6|4}").unwrap();
        assert!(verify_coxeter(&pc.generators, Some(4), 6));
        // Swapped generators: (R2 R1) has order 4, not 3.
        let swapped = [oct.generators[2], oct.generators[1], oct.generators[0]];
        assert!(!verify_coxeter(&swapped, Some(3), 4));
    }

    #[test]
    fn induce_torus_isometries() {
        let cubic = make_named(LatticeFamily::Cubic, FamilyParams::Scale(surd_int(1))).unwrap();
        let ctx = TorusCtx::new(cubic).unwrap();
        // Every translation induces an isometry of the torus.
        let t = Iso3::from_translation(v3(sq(7, 3), sq(1, 2), surd_int(5)));
        let ti = ctx.induce(&t).unwrap();
        assert_eq!(ti.shift, v3(sq(1, 3), sq(1, 2), Surd::ZERO));
        // The central inversion is accepted for every lattice.
        let minus = Iso3::from_linear(Mat3::identity().neg());
        assert!(ctx.induce(&minus).is_ok());
        // A 30-degree rotation about z does not preserve Z^3 (e1 lands at
        // (s3/2, 1/2, 0)) and is rejected.
        let rot30 = Iso3::from_linear(Mat3::from_rows([
            v3(sq3(1, 2), sq(1, 2), Surd::ZERO),
            v3(sq(-1, 2), sq3(1, 2), Surd::ZERO),
            v3i(0, 0, 1),
        ]));
        assert!(matches!(ctx.induce(&rot30), Err(GroupError::NotNormalizing)));
    }

    #[test]
    fn induce_respects_composition() {
        let bcc = make_named(LatticeFamily::Bcc, FamilyParams::Scale(surd_int(1))).unwrap();
        let ctx = TorusCtx::new(bcc).unwrap();
        let f = Iso3 {
            linear: Mat3::from_rows([v3i(0, 1, 0), v3i(1, 0, 0), v3i(0, 0, 1)]),
            translation: v3(sq(1, 2), surd_int(2), sq(5, 3)),
        };
        let g = Iso3 {
            linear: Mat3::from_rows([v3i(1, 0, 0), v3i(0, 0, 1), v3i(0, 1, 0)]),
            translation: v3(surd_int(-1), sq(1, 6), Surd::ZERO),
        };
        let lhs = ctx.compose(&ctx.induce(&f).unwrap(), &ctx.induce(&g).unwrap());
        let rhs = ctx.induce(&f.compose(&g)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
