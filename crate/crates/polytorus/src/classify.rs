//! Constructive classification of lattices invariant under the octahedral
//! group and under the pyramidal reflection groups C_nv (n = 2, 3, 4, 6),
//! following the structure lemmas: split off the mirror sublattice, classify
//! it in rank 2, then case-analyse the projection of the minimal layer
//! vector. Every result is certified by two-sided membership against the
//! named family it claims.

use crate::geom::{v2, v3, Mat2, Mat3};
use crate::groups::{self, GroupError};
use crate::isometry::{Iso2, Iso3, IsometryKind, Order, ORDER_BOUND};
use crate::lattice::{
    make_named, make_named2, reflection_split, FamilyParams, Lattice2, Lattice3, LatticeFamily,
};
use crate::surd::{sq, sq3, surd_int, Surd};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("lattice is not invariant under the required group")]
    NotInvariant,
    #[error("dihedral index must be one of 2, 3, 4, 6")]
    BadIndex,
    #[error("classification certificate failed for family {0}")]
    CertificateFailed(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A certified classification: `canonical(family) * diag == lattice`
/// (so `L * diag^{-1}` is the canonical family member), witnessed by the
/// unimodular coordinates of the input basis in the transformed canonical
/// basis.
#[derive(Clone, Debug)]
pub struct Classification {
    pub family: LatticeFamily,
    pub diag: [Surd; 3],
    /// Integer coordinates of the input basis in the transformed canonical
    /// basis; `|det| = 1`.
    pub witness: Vec<Vec<i128>>,
}

impl Classification {
    /// Scalar parameter for the cubic families (`diag = a*I`).
    pub fn scale(&self) -> Surd {
        self.diag[0]
    }
}

/// Rank-2 classification result against the mirror `x = 0`.
#[derive(Clone, Debug)]
pub struct Classification2 {
    pub family: LatticeFamily,
    /// `canonical(family) * diag == lattice`.
    pub diag: [Surd; 2],
}

impl Classification2 {
    /// The diagonal of the planar lemma, i.e. the `D` with `L D` canonical.
    pub fn lemma_d(&self) -> [Surd; 2] {
        [self.diag[0].recip(), self.diag[1].recip()]
    }
}

fn mirror2_x() -> Iso2 {
    Iso2::from_linear(Mat2::diagonal([surd_int(-1), Surd::ONE]))
}

/// Classify a rank-2 lattice invariant under the reflection in the line
/// x = 0: it is `Square` or `SquareCentred` up to a diagonal transform.
pub fn classify_rank2_reflection(l: &Lattice2) -> Result<Classification2, ClassifyError> {
    if !l.invariant_under(&mirror2_x()) {
        return Err(ClassifyError::NotInvariant);
    }
    let split = reflection_split(l, v2(Surd::ONE, Surd::ZERO)).map_err(|_| ClassifyError::NotInvariant)?;
    // Mirror sublattice along e2.
    let d2 = {
        let g = split.sub.basis()[0];
        g[1].abs()
    };
    let d1 = split.height; // minimal |x| over off-mirror points
    if split.vertical {
        let cl = Classification2 {
            family: LatticeFamily::Square,
            diag: [d1, d2],
        };
        certify2(l, &cl)?;
        Ok(cl)
    } else {
        // w projects to the midpoint (0, d2/2) of the mirror generator.
        let half = d2 / surd_int(2);
        let cl = Classification2 {
            family: LatticeFamily::SquareCentred,
            diag: [d1, half],
        };
        certify2(l, &cl)?;
        Ok(cl)
    }
}

fn certify2(l: &Lattice2, c: &Classification2) -> Result<(), ClassifyError> {
    let base = make_named2(c.family, Surd::ONE).unwrap();
    let m = Mat2::diagonal(c.diag);
    let canon = base.transform(&m).map_err(|_| ClassifyError::CertificateFailed(c.family.id_static()))?;
    if canon.mutually_contains(l) {
        Ok(())
    } else {
        Err(ClassifyError::CertificateFailed(c.family.id_static()))
    }
}

impl LatticeFamily {
    fn id_static(&self) -> &'static str {
        // `id` already returns 'static; this keeps error types copy-free.
        match self {
            LatticeFamily::Cubic => "cubic",
            LatticeFamily::Bcc => "bcc",
            LatticeFamily::Fcc => "fcc",
            LatticeFamily::Square => "square",
            LatticeFamily::SquareCentred => "square-centred",
            LatticeFamily::Tri => "tri",
            LatticeFamily::TriCentred => "tri-centred",
            LatticeFamily::SquareCentredE3 => "square-centred+e3",
            LatticeFamily::TwoSquareE1E3 => "2square+e1e3",
            LatticeFamily::TwoSquareE2E3 => "2square+e2e3",
            LatticeFamily::TriE3 => "tri+e3",
            LatticeFamily::TriCentredE3 => "tri-centred+e3",
            LatticeFamily::TriCentredU1E3 => "tri-centred+u1e3",
            LatticeFamily::TriCentredU2E3 => "tri-centred+u2e3",
            LatticeFamily::ThreeTriSumE3 => "3tri+u1+u2+e3",
            LatticeFamily::ThreeTriDiffE3 => "3tri+2u1-u2+e3",
        }
    }
}

/// Certify `canonical(family) * diag(d) == l` and record the witness.
fn certify3(l: &Lattice3, family: LatticeFamily, diag: [Surd; 3]) -> Result<Classification, ClassifyError> {
    let canon = make_named(family, FamilyParams::Diag(diag))
        .map_err(|_| ClassifyError::CertificateFailed(family.id_static()))?;
    if !canon.mutually_contains(l) {
        return Err(ClassifyError::CertificateFailed(family.id_static()));
    }
    let witness: Vec<Vec<i128>> = l
        .basis()
        .iter()
        .map(|b| {
            canon
                .solve_coords(b)
                .unwrap()
                .iter()
                .map(|c| c.as_integer().unwrap())
                .collect()
        })
        .collect();
    Ok(Classification {
        family,
        diag,
        witness,
    })
}

/// Generators of the standard pyramidal group C_nv: two plane reflections
/// through the z-axis at mirror angle pi/n. The triangular cases use the
/// mirrors through u1 and u2.
pub fn dihedral_generators(n: u32) -> Result<[Iso3; 2], ClassifyError> {
    let refl_x = Iso3::from_linear(Mat3::diagonal([surd_int(-1), Surd::ONE, Surd::ONE]));
    let refl_y = Iso3::from_linear(Mat3::diagonal([Surd::ONE, surd_int(-1), Surd::ONE]));
    let swap_xy = Iso3::from_linear(Mat3::from_rows([
        v3(Surd::ZERO, Surd::ONE, Surd::ZERO),
        v3(Surd::ONE, Surd::ZERO, Surd::ZERO),
        v3(Surd::ZERO, Surd::ZERO, Surd::ONE),
    ]));
    // Reflection across the line at angle theta (3D, z fixed):
    // [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
    let refl_60 = Iso3::from_linear(Mat3::from_rows([
        v3(sq(-1, 2), sq3(1, 2), Surd::ZERO),
        v3(sq3(1, 2), sq(1, 2), Surd::ZERO),
        v3(Surd::ZERO, Surd::ZERO, Surd::ONE),
    ]));
    let refl_30 = Iso3::from_linear(Mat3::from_rows([
        v3(sq(1, 2), sq3(1, 2), Surd::ZERO),
        v3(sq3(1, 2), sq(-1, 2), Surd::ZERO),
        v3(Surd::ZERO, Surd::ZERO, Surd::ONE),
    ]));
    Ok(match n {
        2 => [refl_x, refl_y],
        4 => [refl_x, swap_xy],
        3 => [refl_y, refl_60],
        6 => [refl_y, refl_30],
        _ => return Err(ClassifyError::BadIndex),
    })
}

fn octahedral_generators() -> [Iso3; 3] {
    let s = crate::catalog::spec("{3,4}").expect("catalog");
    s.generators
}

/// Classification of a lattice preserved by the octahedral group [3,4]:
/// a dilated cubic, body-centred or face-centred lattice.
pub fn classify_oct(l: &Lattice3) -> Result<Classification, ClassifyError> {
    for g in octahedral_generators() {
        if !l.invariant_under(&g.linear_part()) {
            return Err(ClassifyError::NotInvariant);
        }
    }
    let z = v3(Surd::ZERO, Surd::ZERO, Surd::ONE);
    let split = reflection_split(l, z).map_err(|_| ClassifyError::NotInvariant)?;
    let l0 = split.sub.to_plane_xy().ok_or(ClassifyError::NotInvariant)?;
    let c2 = classify_rank2_reflection(&l0)?;
    let [dx, dy] = c2.diag;
    if dx != dy {
        return Err(ClassifyError::NotInvariant);
    }
    let a = dx;
    match c2.family {
        LatticeFamily::Square => {
            if split.vertical {
                certify3(l, LatticeFamily::Cubic, [a, a, a])
            } else {
                let half = a / surd_int(2);
                certify3(l, LatticeFamily::Bcc, [half, half, half])
            }
        }
        LatticeFamily::SquareCentred => certify3(l, LatticeFamily::Fcc, [a, a, a]),
        _ => unreachable!(),
    }
}

/// Classification of a lattice preserved by C_nv for n in {2,3,4,6},
/// following the respective lemmas.
pub fn classify_dihedral(n: u32, l: &Lattice3) -> Result<Classification, ClassifyError> {
    let gens = dihedral_generators(n)?;
    for g in &gens {
        if !l.invariant_under(g) {
            return Err(ClassifyError::NotInvariant);
        }
    }
    match n {
        2 => classify_c2v(l),
        4 => {
            let c = classify_c2v(l)?;
            if c.diag[0] != c.diag[1] {
                return Err(ClassifyError::NotInvariant);
            }
            match c.family {
                LatticeFamily::Cubic
                | LatticeFamily::Bcc
                | LatticeFamily::Fcc
                | LatticeFamily::SquareCentredE3 => Ok(c),
                _ => Err(ClassifyError::NotInvariant),
            }
        }
        3 => classify_c3v(l),
        6 => {
            let c = classify_c3v(l)?;
            match c.family {
                LatticeFamily::TriE3 | LatticeFamily::TriCentredE3 => Ok(c),
                _ => Err(ClassifyError::NotInvariant),
            }
        }
        _ => Err(ClassifyError::BadIndex),
    }
}

fn classify_c2v(l: &Lattice3) -> Result<Classification, ClassifyError> {
    let z = v3(Surd::ZERO, Surd::ZERO, Surd::ONE);
    let split = reflection_split(l, z).map_err(|_| ClassifyError::NotInvariant)?;
    let l0 = split.sub.to_plane_xy().ok_or(ClassifyError::NotInvariant)?;
    let c2 = classify_rank2_reflection(&l0)?;
    let [d1, d2] = c2.diag;
    let hz = split.height;
    let w = split.w;
    match c2.family {
        LatticeFamily::Square => {
            // layer classes over the rectangular grid {d1 e1, d2 e2}
            let fx = (w[0] / d1).fract();
            let fy = (w[1] / d2).fract();
            let half = sq(1, 2);
            let h1 = d1 / surd_int(2);
            let h2 = d2 / surd_int(2);
            if fx.is_zero() && fy.is_zero() {
                certify3(l, LatticeFamily::Cubic, [d1, d2, hz])
            } else if fx == half && fy.is_zero() {
                certify3(l, LatticeFamily::TwoSquareE1E3, [h1, h2, hz])
            } else if fx.is_zero() && fy == half {
                certify3(l, LatticeFamily::TwoSquareE2E3, [h1, h2, hz])
            } else if fx == half && fy == half {
                certify3(l, LatticeFamily::Bcc, [h1, h2, hz])
            } else {
                Err(ClassifyError::NotInvariant)
            }
        }
        LatticeFamily::SquareCentred => {
            if split.vertical {
                certify3(l, LatticeFamily::SquareCentredE3, [d1, d2, hz])
            } else {
                certify3(l, LatticeFamily::Fcc, [d1, d2, hz])
            }
        }
        _ => unreachable!(),
    }
}

/// Rank-2 triangular classification: a lattice preserved by the mirrors
/// through u1 and u2 is a dilated `Tri` or `TriCentred`.
pub fn classify_tri2(l: &Lattice2) -> Result<(LatticeFamily, Surd), ClassifyError> {
    // Minimal positive lattice point on the u1-axis (y = 0).
    let axis = l.orthogonal_sublattice(&[v2(Surd::ZERO, Surd::ONE)]);
    if axis.rank() != 1 {
        return Err(ClassifyError::NotInvariant);
    }
    let t = axis.basis()[0][0].abs();
    // Tri has axis step s; TriCentred has axis step 3s.
    let tri = make_named2(LatticeFamily::Tri, t).unwrap();
    if tri.mutually_contains(l) {
        return Ok((LatticeFamily::Tri, t));
    }
    let s = t / surd_int(3);
    let tc = make_named2(LatticeFamily::TriCentred, s).unwrap();
    if tc.mutually_contains(l) {
        return Ok((LatticeFamily::TriCentred, s));
    }
    Err(ClassifyError::NotInvariant)
}

fn classify_c3v(l: &Lattice3) -> Result<Classification, ClassifyError> {
    let z = v3(Surd::ZERO, Surd::ZERO, Surd::ONE);
    let split = reflection_split(l, z).map_err(|_| ClassifyError::NotInvariant)?;
    let l0 = split.sub.to_plane_xy().ok_or(ClassifyError::NotInvariant)?;
    let (fam0, s) = classify_tri2(&l0)?;
    // Minimal positive point of L on the z-axis.
    let axis = l.orthogonal_sublattice(&[
        v3(Surd::ONE, Surd::ZERO, Surd::ZERO),
        v3(Surd::ZERO, Surd::ONE, Surd::ZERO),
    ]);
    if axis.rank() != 1 {
        return Err(ClassifyError::NotInvariant);
    }
    let b = axis.basis()[0][2].abs();
    let h = split.height;
    if split.vertical || h == b {
        // vertical translation lattice
        if !split.vertical {
            return Err(ClassifyError::NotInvariant);
        }
        let fam = match fam0 {
            LatticeFamily::Tri => LatticeFamily::TriE3,
            LatticeFamily::TriCentred => LatticeFamily::TriCentredE3,
            _ => unreachable!(),
        };
        certify3(l, fam, [s, s, b])
    } else {
        // The 3-fold-axis lemma forces the minimal layer at height b/3 over
        // the centred planar lattice.
        if fam0 != LatticeFamily::TriCentred || h != b / surd_int(3) {
            return Err(ClassifyError::NotInvariant);
        }
        let proj = v2(split.w[0], split.w[1]);
        let u1 = v2(Surd::ONE, Surd::ZERO).scale(s);
        let u2 = v2(sq(1, 2), sq3(1, 2)).scale(s);
        if l0.contains(&(proj - u1)) {
            certify3(l, LatticeFamily::TriCentredU1E3, [s, s, h])
        } else if l0.contains(&(proj - u2)) {
            certify3(l, LatticeFamily::TriCentredU2E3, [s, s, h])
        } else {
            Err(ClassifyError::NotInvariant)
        }
    }
}

/// Group input for the crystallographic restriction check.
pub enum CrystalInput<'a> {
    /// Explicit generators; the closure is taken (capped).
    Generators(&'a [Iso3]),
    /// An abstract rotation of the given period about an axis. Its trace is
    /// `1 + 2 cos(2 pi / n)`, rational only for n in {1,2,3,4,6}.
    RotationOrder(u32),
    /// A string Coxeter group [p, q]: contains rotations of periods p and q.
    CoxeterType(u32, u32),
}

#[derive(Clone, Debug)]
pub struct CrystalVerdict {
    pub ok: bool,
    /// Offending element (when explicit) and a trace/period description.
    pub offender: Option<String>,
}

/// Crystallographic restriction: a group preserving a lattice has rotation
/// periods only in {1, 2, 3, 4, 6}; equivalently every element's trace is an
/// integer. Both checks run on explicit groups. For abstract inputs the
/// period test applies directly (the trace 1 + 2cos(2 pi/n) is irrational for
/// every other period).
pub fn crystallographic_check(input: CrystalInput<'_>, cap: usize) -> Result<CrystalVerdict, ClassifyError> {
    const ALLOWED: [u32; 5] = [1, 2, 3, 4, 6];
    match input {
        CrystalInput::Generators(gens) => {
            let g = groups::closure(gens, cap)?;
            for e in g.elements() {
                let tr = e.linear.trace();
                let trace_ok = tr.is_integer();
                let period_ok = match e.linear_part().order(ORDER_BOUND) {
                    Order::Finite(k) => {
                        !matches!(e.classify(), IsometryKind::Rotation(_)) || ALLOWED.contains(&k)
                    }
                    Order::ExceedsBound(_) => false,
                };
                // The two criteria agree on orthogonal maps over Q(sqrt3).
                if !trace_ok || !period_ok {
                    return Ok(CrystalVerdict {
                        ok: false,
                        offender: Some(format!("element {:?} has trace {}", e.linear, tr)),
                    });
                }
            }
            Ok(CrystalVerdict {
                ok: true,
                offender: None,
            })
        }
        CrystalInput::RotationOrder(n) => {
            let ok = ALLOWED.contains(&n);
            Ok(CrystalVerdict {
                ok,
                offender: (!ok).then(|| {
                    format!("rotation of period {n}: trace 1 + 2cos(2pi/{n}) is not an integer")
                }),
            })
        }
        CrystalInput::CoxeterType(p, q) => {
            let bad = [p, q].into_iter().find(|x| !ALLOWED.contains(x));
            Ok(CrystalVerdict {
                ok: bad.is_none(),
                offender: bad.map(|n| {
                    format!("[{}, {}] contains a rotation of period {n}", p, q)
                }),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{v2i, v3i, Matrix};

    #[test]
    fn rank2_examples() {
        // Already diagonal.
        let l = Lattice2::new(vec![v2i(2, 0), v2i(0, 5)]).unwrap();
        let c = classify_rank2_reflection(&l).unwrap();
        assert_eq!(c.family, LatticeFamily::Square);
        assert_eq!(c.lemma_d(), [sq(1, 2), sq(1, 5)]);

        let l = Lattice2::new(vec![v2i(2, 1), v2i(2, -1)]).unwrap();
        let c = classify_rank2_reflection(&l).unwrap();
        assert_eq!(c.family, LatticeFamily::SquareCentred);
        assert_eq!(c.lemma_d(), [sq(1, 2), surd_int(1)]);

        let l = Lattice2::new(vec![v2i(1, 3), v2i(1, -3)]).unwrap();
        let c = classify_rank2_reflection(&l).unwrap();
        assert_eq!(c.family, LatticeFamily::SquareCentred);
        assert_eq!(c.lemma_d(), [surd_int(1), sq(1, 3)]);
    }

    #[test]
    fn oct_examples() {
        let fcc3 = make_named(LatticeFamily::Fcc, FamilyParams::Scale(surd_int(3))).unwrap();
        // Unimodular change of basis (same lattice, shuffled generators).
        let combo = |r: [i128; 3]| {
            fcc3.basis()[0].scale(surd_int(r[0]))
                + fcc3.basis()[1].scale(surd_int(r[1]))
                + fcc3.basis()[2].scale(surd_int(r[2]))
        };
        let shuffled =
            Lattice3::new(vec![combo([1, 0, 1]), combo([2, 1, 1]), combo([0, 0, 1])]).unwrap();
        let c = classify_oct(&shuffled).unwrap();
        assert_eq!(c.family, LatticeFamily::Fcc);
        assert_eq!(c.scale(), surd_int(3));

        let cubic = make_named(LatticeFamily::Cubic, FamilyParams::Scale(Surd::ONE)).unwrap();
        let c = classify_oct(&cubic).unwrap();
        assert_eq!((c.family, c.scale()), (LatticeFamily::Cubic, Surd::ONE));

        let halfbcc = make_named(LatticeFamily::Bcc, FamilyParams::Scale(sq(1, 2))).unwrap();
        let c = classify_oct(&halfbcc).unwrap();
        assert_eq!((c.family, c.scale()), (LatticeFamily::Bcc, sq(1, 2)));

        // Non-invariant input is rejected.
        let tri = make_named(LatticeFamily::TriE3, FamilyParams::Scale(Surd::ONE)).unwrap();
        assert!(matches!(classify_oct(&tri), Err(ClassifyError::NotInvariant)));
    }

    #[test]
    fn dihedral_examples() {
        // n=2: basis {2e1, 2e2, e1+e3}.
        let l = Lattice3::new(vec![v3i(2, 0, 0), v3i(0, 2, 0), v3i(1, 0, 1)]).unwrap();
        let c = classify_dihedral(2, &l).unwrap();
        assert_eq!(c.family, LatticeFamily::TwoSquareE1E3);

        // n=4: Λ(1,1)+e3 scaled by diag(2,2,5).
        let base = make_named(
            LatticeFamily::SquareCentredE3,
            FamilyParams::Diag([surd_int(2), surd_int(2), surd_int(5)]),
        )
        .unwrap();
        let c = classify_dihedral(4, &base).unwrap();
        assert_eq!(c.family, LatticeFamily::SquareCentredE3);
        assert_eq!(c.diag, [surd_int(2), surd_int(2), surd_int(5)]);

        // n=3: tri-centred with third-height layer.
        let l = make_named(
            LatticeFamily::TriCentredU1E3,
            FamilyParams::Diag([Surd::ONE, Surd::ONE, sq(1, 3)]),
        )
        .unwrap();
        let c = classify_dihedral(3, &l).unwrap();
        assert_eq!(c.family, LatticeFamily::TriCentredU1E3);
        assert_eq!(c.diag, [Surd::ONE, Surd::ONE, sq(1, 3)]);

        // n=6 rejects the u1-shifted family.
        assert!(matches!(classify_dihedral(6, &l), Err(ClassifyError::NotInvariant)));
        assert!(matches!(classify_dihedral(5, &l), Err(ClassifyError::BadIndex)));
    }

    #[test]
    fn crystallographic_examples() {
        let oct = octahedral_generators();
        let v = crystallographic_check(CrystalInput::Generators(&oct), 1000).unwrap();
        assert!(v.ok);
        let v = crystallographic_check(CrystalInput::Generators(&[Iso3::identity()]), 10).unwrap();
        assert!(v.ok);
        let v = crystallographic_check(CrystalInput::RotationOrder(5), 10).unwrap();
        assert!(!v.ok);
        assert!(v.offender.unwrap().contains("not an integer"));
        let v = crystallographic_check(CrystalInput::CoxeterType(3, 5), 10).unwrap();
        assert!(!v.ok);
        for n in [2, 3, 4, 6] {
            assert!(crystallographic_check(CrystalInput::RotationOrder(n), 10).unwrap().ok);
        }
        // A 30-degree rotation (order 12) is representable and rejected.
        let rot30 = Iso3::from_linear(Mat3::from_rows([
            v3(sq3(1, 2), sq(1, 2), Surd::ZERO),
            v3(sq(-1, 2), sq3(1, 2), Surd::ZERO),
            v3(Surd::ZERO, Surd::ZERO, Surd::ONE),
        ]));
        let v = crystallographic_check(CrystalInput::Generators(&[rot30]), 100).unwrap();
        assert!(!v.ok);
    }
}
