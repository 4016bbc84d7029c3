//! Exact lattices of rank 1..3 in E^2 / E^3: membership, equality with a
//! Hermite-form canonical key, plane intersection, reflection splitting, and
//! the named lattice families of the classification.

use crate::geom::{v2, v3, Matrix, Vec2, Vec3, Vector};
use crate::hnf;
use crate::isometry::Isometry;
use crate::rat::Rat;
use crate::surd::{sq, sq3, surd_int, Surd};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("vector lies in the span of the lattice")]
    InSpan,
    #[error("vector does not lie in the span of the lattice")]
    OutOfSpan,
    #[error("transform is singular")]
    SingularTransform,
    #[error("scale/diagonal parameters must be positive")]
    NonPositiveParam,
    #[error("parameter shape does not match the family")]
    BadParams,
    #[error("ambient dimension mismatch")]
    AmbientMismatch,
}

/// A free abelian point set given by an exact basis. `rank() <= N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice<const N: usize> {
    basis: Vec<Vector<N>>,
}

pub type Lattice2 = Lattice<2>;
pub type Lattice3 = Lattice<3>;

impl<const N: usize> Lattice<N> {
    pub fn new(basis: Vec<Vector<N>>) -> Result<Self, LatticeError> {
        let l = Lattice { basis };
        if l.gram_det().is_zero() {
            return Err(LatticeError::DependentBasis);
        }
        Ok(l)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector<N>] {
        &self.basis
    }

    fn gram_det(&self) -> Surd {
        let k = self.basis.len();
        let g: Vec<Vec<Surd>> = (0..k)
            .map(|i| (0..k).map(|j| self.basis[i].dot(&self.basis[j])).collect())
            .collect();
        det_dyn(&g)
    }

    /// Exact coordinates of `v` in the basis, if `v` lies in the span.
    pub fn solve_coords(&self, v: &Vector<N>) -> Option<Vec<Surd>> {
        let k = self.basis.len();
        // Solve the Gram system x G = v B^T (row conventions collapse to a
        // plain symmetric solve).
        let mut aug: Vec<Vec<Surd>> = (0..k)
            .map(|i| {
                let mut row: Vec<Surd> =
                    (0..k).map(|j| self.basis[i].dot(&self.basis[j])).collect();
                row.push(self.basis[i].dot(v));
                row
            })
            .collect();
        for c in 0..k {
            let p = (c..k).find(|&i| !aug[i][c].is_zero())?;
            aug.swap(c, p);
            let inv = aug[c][c].recip();
            for x in aug[c].iter_mut() {
                *x = *x * inv;
            }
            for i in 0..k {
                if i != c && !aug[i][c].is_zero() {
                    let f = aug[i][c];
                    for j in 0..=k {
                        let sub = aug[c][j] * f;
                        aug[i][j] = aug[i][j] - sub;
                    }
                }
            }
        }
        let coords: Vec<Surd> = (0..k).map(|i| aug[i][k]).collect();
        // Span check: the solution must reproduce v exactly.
        let mut rec = Vector::zero();
        for (c, b) in coords.iter().zip(&self.basis) {
            rec = rec + b.scale(*c);
        }
        (rec == *v).then_some(coords)
    }

    /// Membership: integer coordinate solution.
    pub fn contains(&self, v: &Vector<N>) -> bool {
        match self.solve_coords(v) {
            Some(coords) => coords.iter().all(Surd::is_integer),
            None => false,
        }
    }

    /// Canonical key: Hermite normal form of the basis embedded into the
    /// rational module Q^{2N} (rational and sqrt3 components side by side),
    /// scaled integral by the invariant denominator lcm.
    pub fn canonical_key(&self) -> (i128, Vec<Vec<i128>>) {
        let mut lcm: i128 = 1;
        for b in &self.basis {
            for x in &b.0 {
                lcm = num_integer::lcm(lcm, x.rat.den());
                lcm = num_integer::lcm(lcm, x.s3.den());
            }
        }
        let rows: Vec<Vec<i128>> = self
            .basis
            .iter()
            .map(|b| {
                b.0.iter()
                    .flat_map(|x| {
                        [
                            x.rat.num() * (lcm / x.rat.den()),
                            x.s3.num() * (lcm / x.s3.den()),
                        ]
                    })
                    .collect()
            })
            .collect();
        (lcm, hnf::hnf(&rows))
    }

    /// Exact lattice equality via the canonical key.
    pub fn equal(&self, other: &Lattice<N>) -> bool {
        self.rank() == other.rank() && self.canonical_key() == other.canonical_key()
    }

    /// Equality by two-sided membership of bases; used to certify
    /// classification results independently of the canonical key.
    pub fn mutually_contains(&self, other: &Lattice<N>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
            && self.basis.iter().all(|v| other.contains(v))
    }

    /// The lattice `{ v T : v in L }`.
    pub fn transform(&self, t: &Matrix<N>) -> Result<Self, LatticeError> {
        if t.det().is_zero() {
            return Err(LatticeError::SingularTransform);
        }
        Lattice::new(self.basis.iter().map(|b| *b * *t).collect())
    }

    pub fn scale(&self, s: Surd) -> Result<Self, LatticeError> {
        if s.is_zero() {
            return Err(LatticeError::SingularTransform);
        }
        Lattice::new(self.basis.iter().map(|b| b.scale(s)).collect())
    }

    /// `L (+) w`: adjoin a vector outside the span.
    pub fn extend(&self, w: Vector<N>) -> Result<Self, LatticeError> {
        if self.solve_coords(&w).is_some() {
            return Err(LatticeError::InSpan);
        }
        let mut basis = self.basis.clone();
        basis.push(w);
        Lattice::new(basis)
    }

    /// True iff the linear map `f` maps the lattice into itself (sufficient
    /// for invariance since `f` is invertible and the lattice has full rank
    /// in its own span).
    pub fn invariant_under(&self, f: &Isometry<N>) -> bool {
        assert!(f.is_linear(), "invariance is a property of linear parts");
        self.basis.iter().all(|b| self.contains(&(*b * f.linear)))
    }

    /// Sublattice of vectors orthogonal to every vector of `normals`
    /// (exact integer kernel computation).
    pub fn orthogonal_sublattice(&self, normals: &[Vector<N>]) -> Lattice<N> {
        let k = self.basis.len();
        // One Q(sqrt3) constraint = two rational columns.
        let mut lcm: i128 = 1;
        let dots: Vec<Vec<Surd>> = self
            .basis
            .iter()
            .map(|b| normals.iter().map(|n| b.dot(n)).collect())
            .collect();
        for row in &dots {
            for x in row {
                lcm = num_integer::lcm(lcm, x.rat.den());
                lcm = num_integer::lcm(lcm, x.s3.den());
            }
        }
        let rows: Vec<Vec<i128>> = dots
            .iter()
            .map(|row| {
                row.iter()
                    .flat_map(|x| {
                        [
                            x.rat.num() * (lcm / x.rat.den()),
                            x.s3.num() * (lcm / x.s3.den()),
                        ]
                    })
                    .collect()
            })
            .collect();
        let kernel = hnf::left_kernel(&rows);
        let basis: Vec<Vector<N>> = kernel
            .iter()
            .map(|coeffs| {
                let mut v = Vector::zero();
                for i in 0..k {
                    v = v + self.basis[i].scale(surd_int(coeffs[i]));
                }
                v
            })
            .collect();
        Lattice { basis }
    }

    /// Sublattice `{ v in L : v in other }` for `other` over the same span
    /// conventions; `other` may have smaller rank.
    pub fn intersect(&self, other: &Lattice<N>) -> Lattice<N> {
        // Coordinates of self's basis in other's basis; where a basis vector
        // leaves other's span the intersection drops rank accordingly, which
        // this implementation handles by solving in the joint embedding.
        let k = self.basis.len();
        // Integer model: x * C in Z^m, with C rational coords (or no solution
        // column when out of span -> treat via embedding kernel instead).
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut ok = true;
        for b in &self.basis {
            match other.solve_coords(b) {
                Some(c) if c.iter().all(Surd::is_rational) => {
                    rows.push(c.iter().map(|x| x.as_rat().unwrap()).collect())
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            // General case: intersect spans first.
            // Not needed by the classification; implemented as the trivial
            // fallback of testing multiples is avoided by requiring rational
            // relations in every in-scope call.
            panic!("lattice intersection requires commensurable spans");
        }
        let m = other.basis.len();
        let mut lcm: i128 = 1;
        for r in &rows {
            for x in r {
                lcm = num_integer::lcm(lcm, x.den());
            }
        }
        // x * (lcm C) = 0 (mod lcm): stack lcm*C over lcm*I and take the left
        // kernel; x-components of the kernel generate the solution set.
        let mut stacked: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.num() * (lcm / x.den())).collect())
            .collect();
        for j in 0..m {
            let mut row = vec![0i128; m];
            row[j] = lcm;
            stacked.push(row);
        }
        let kernel = hnf::left_kernel(&stacked);
        let combos: Vec<Vec<i128>> = kernel.iter().map(|r| r[..k].to_vec()).collect();
        let reduced = hnf::hnf(&combos);
        let basis: Vec<Vector<N>> = reduced
            .iter()
            .map(|coeffs| {
                let mut v = Vector::zero();
                for i in 0..k {
                    v = v + self.basis[i].scale(surd_int(coeffs[i]));
                }
                v
            })
            .collect();
        Lattice { basis }
    }

    /// Coordinates of the orthogonal projection of `v` onto the lattice
    /// span (Gram solve without the exactness check).
    pub fn span_coords(&self, v: &Vector<N>) -> Vec<Surd> {
        let k = self.basis.len();
        let mut aug: Vec<Vec<Surd>> = (0..k)
            .map(|i| {
                let mut row: Vec<Surd> =
                    (0..k).map(|j| self.basis[i].dot(&self.basis[j])).collect();
                row.push(self.basis[i].dot(v));
                row
            })
            .collect();
        for c in 0..k {
            let p = (c..k)
                .find(|&i| !aug[i][c].is_zero())
                .expect("independent basis has invertible Gram matrix");
            aug.swap(c, p);
            let inv = aug[c][c].recip();
            for x in aug[c].iter_mut() {
                *x = *x * inv;
            }
            for i in 0..k {
                if i != c && !aug[i][c].is_zero() {
                    let f = aug[i][c];
                    for j in 0..=k {
                        let sub = aug[c][j] * f;
                        aug[i][j] = aug[i][j] - sub;
                    }
                }
            }
        }
        (0..k).map(|i| aug[i][k]).collect()
    }

    /// Canonical representative of the orbit of `v` under the translation
    /// group of this lattice: span coordinates reduced into [0,1).
    pub fn orbit_rep(&self, v: &Vector<N>) -> Vector<N> {
        let coords = self.span_coords(v);
        let mut out = *v;
        for (c, b) in coords.iter().zip(&self.basis) {
            out = out - b.scale(crate::surd::surd_int(c.floor()));
        }
        out
    }

    /// Index `[self : sub]` for a full-rank sublattice of the same span.
    pub fn index_of(&self, sub: &Lattice<N>) -> Option<u64> {
        if sub.rank() != self.rank() {
            return None;
        }
        let coords: Vec<Vec<Surd>> = sub
            .basis
            .iter()
            .map(|b| self.solve_coords(b))
            .collect::<Option<_>>()?;
        if !coords.iter().flatten().all(Surd::is_integer) {
            return None;
        }
        let g: Vec<Vec<Surd>> = coords;
        let d = det_dyn(&g);
        let n = d.as_integer()?;
        Some(n.unsigned_abs() as u64)
    }
}

fn det_dyn(m: &[Vec<Surd>]) -> Surd {
    match m.len() {
        0 => Surd::ONE,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unreachable!("rank is at most 3"),
    }
}

impl Lattice3 {
    /// `L ∩ Π` for the plane through the origin with the given normal.
    pub fn intersect_plane(&self, normal: Vec3) -> Lattice3 {
        self.orthogonal_sublattice(&[normal])
    }

    /// Drop the z coordinate of a rank-2 lattice contained in z = 0.
    pub fn to_plane_xy(&self) -> Option<Lattice2> {
        if self.basis.iter().any(|b| !b[2].is_zero()) {
            return None;
        }
        Some(Lattice {
            basis: self.basis.iter().map(|b| v2(b[0], b[1])).collect(),
        })
    }
}

impl Lattice2 {
    pub fn lift_to_xy(&self) -> Lattice3 {
        Lattice {
            basis: self.basis.iter().map(|b| v3(b[0], b[1], Surd::ZERO)).collect(),
        }
    }
}

/// The split `L = L0 (+) w` of a reflection-invariant lattice.
#[derive(Clone, Debug)]
pub struct ReflectionSplit<const N: usize> {
    /// `L ∩ Π`, the mirror sublattice.
    pub sub: Lattice<N>,
    /// A lattice point of minimal positive distance to the mirror, reduced
    /// so that its in-plane projection has fractional `sub`-coordinates.
    pub w: Vector<N>,
    /// Signed height of `w` along the normal (positive side), as the exact
    /// value of `<w, n>`.
    pub height: Surd,
    /// True iff `w` projects to the origin.
    pub vertical: bool,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("lattice is not invariant under the reflection (heights are not discrete)")]
    NotDiscrete,
    #[error("mirror sublattice has rank {0}, expected {1}")]
    DegenerateIntersection(usize, usize),
}

/// Decompose a reflection-invariant lattice into mirror layers.
/// `normal` is the exact mirror normal; minimality of `w` is decided by the
/// discrete group of heights `<v, n>` over the lattice.
pub fn reflection_split<const N: usize>(
    l: &Lattice<N>,
    normal: Vector<N>,
) -> Result<ReflectionSplit<N>, SplitError> {
    let sub = l.orthogonal_sublattice(&[normal]);
    let expected = l.rank() - 1;
    if sub.rank() != expected {
        return Err(SplitError::DegenerateIntersection(sub.rank(), expected));
    }

    // Heights of the basis vectors form a Z-module inside Q + Q*sqrt3; it is
    // discrete iff it is cyclic, in which case the HNF generator is the
    // minimal positive height.
    let heights: Vec<Surd> = l.basis().iter().map(|b| b.dot(&normal)).collect();
    let mut lcm: i128 = 1;
    for h in &heights {
        lcm = num_integer::lcm(lcm, h.rat.den());
        lcm = num_integer::lcm(lcm, h.s3.den());
    }
    let rows: Vec<Vec<i128>> = heights
        .iter()
        .map(|h| vec![h.rat.num() * (lcm / h.rat.den()), h.s3.num() * (lcm / h.s3.den())])
        .collect();
    let (h, u, rank) = hnf::hnf_with_transform(&rows);
    if rank != 1 {
        return Err(SplitError::NotDiscrete);
    }
    let mut gen = Surd::new(Rat::new(h[0][0], lcm), Rat::new(h[0][1], lcm));
    let mut combo = u[0].clone();
    if gen.signum() < 0 {
        gen = -gen;
        for c in combo.iter_mut() {
            *c = -*c;
        }
    }
    let mut w = Vector::zero();
    for (c, b) in combo.iter().zip(l.basis()) {
        w = w + b.scale(surd_int(*c));
    }

    // Reduce the in-plane projection into the fundamental cell of `sub`.
    let n2 = normal.norm2();
    let proj = w - normal.scale(w.dot(&normal) / n2);
    let coords = sub
        .solve_coords(&proj)
        .expect("projection of a lattice point lies in the mirror span");
    for (c, b) in coords.iter().zip(sub.basis()) {
        w = w - b.scale(surd_int(c.floor()));
    }
    let proj = w - normal.scale(w.dot(&normal) / n2);
    Ok(ReflectionSplit {
        sub,
        height: gen,
        vertical: proj.is_zero(),
        w,
    })
}

/// The named lattice families of the classification lemmas.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum LatticeFamily {
    /// Λ(1,0,0) = Z^3.
    Cubic,
    /// Λ(1,1,1), basis {2e1, 2e2, e1+e2+e3}: integral vectors whose
    /// coordinates share a parity.
    Bcc,
    /// Λ(1,1,0), basis {e1+e2, e1-e2, e3-e2}: integral vectors with even
    /// coordinate sum.
    Fcc,
    /// Λ(1,0) = Z^2.
    Square,
    /// Λ(1,1), basis {(1,1), (1,-1)}.
    SquareCentred,
    /// Triangular lattice, basis {u1, u2} = {(1,0), (1/2, sqrt3/2)}.
    Tri,
    /// Triangle-centred lattice, basis {(3/2, sqrt3/2), (3/2, -sqrt3/2)}.
    TriCentred,
    /// Λ(1,1) (+) e3.
    SquareCentredE3,
    /// 2Λ(1,0) (+) (e1+e3).
    TwoSquareE1E3,
    /// 2Λ(1,0) (+) (e2+e3).
    TwoSquareE2E3,
    /// Tri (+) e3.
    TriE3,
    /// TriCentred (+) e3.
    TriCentredE3,
    /// TriCentred (+) (u1+e3).
    TriCentredU1E3,
    /// TriCentred (+) (u2+e3).
    TriCentredU2E3,
    /// 3 Tri (+) (u1+u2+e3).
    ThreeTriSumE3,
    /// 3 Tri (+) (2u1-u2+e3).
    ThreeTriDiffE3,
}

pub const U1: Vec2 = Vector([surd_int(1), surd_int(0)]);

pub fn u2() -> Vec2 {
    v2(sq(1, 2), sq3(1, 2))
}

impl LatticeFamily {
    pub const ALL: [LatticeFamily; 16] = [
        LatticeFamily::Cubic,
        LatticeFamily::Bcc,
        LatticeFamily::Fcc,
        LatticeFamily::Square,
        LatticeFamily::SquareCentred,
        LatticeFamily::Tri,
        LatticeFamily::TriCentred,
        LatticeFamily::SquareCentredE3,
        LatticeFamily::TwoSquareE1E3,
        LatticeFamily::TwoSquareE2E3,
        LatticeFamily::TriE3,
        LatticeFamily::TriCentredE3,
        LatticeFamily::TriCentredU1E3,
        LatticeFamily::TriCentredU2E3,
        LatticeFamily::ThreeTriSumE3,
        LatticeFamily::ThreeTriDiffE3,
    ];

    pub fn id(&self) -> &'static str {
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

    pub fn from_id(s: &str) -> Option<LatticeFamily> {
        LatticeFamily::ALL.into_iter().find(|f| f.id() == s)
    }

    pub fn is_planar(&self) -> bool {
        matches!(
            self,
            LatticeFamily::Square | LatticeFamily::SquareCentred | LatticeFamily::Tri | LatticeFamily::TriCentred
        )
    }

    /// Unscaled canonical basis (3-dimensional families).
    pub fn basis3(&self) -> Option<Vec<Vec3>> {
        let u1 = v3i(1, 0, 0);
        let u2 = v3(sq(1, 2), sq3(1, 2), Surd::ZERO);
        let e3 = v3i(0, 0, 1);
        let b = match self {
            LatticeFamily::Cubic => vec![v3i(1, 0, 0), v3i(0, 1, 0), v3i(0, 0, 1)],
            LatticeFamily::Bcc => vec![v3i(2, 0, 0), v3i(0, 2, 0), v3i(1, 1, 1)],
            LatticeFamily::Fcc => vec![v3i(1, 1, 0), v3i(1, -1, 0), v3i(0, -1, 1)],
            LatticeFamily::SquareCentredE3 => vec![v3i(1, 1, 0), v3i(1, -1, 0), v3i(0, 0, 1)],
            LatticeFamily::TwoSquareE1E3 => vec![v3i(2, 0, 0), v3i(0, 2, 0), v3i(1, 0, 1)],
            LatticeFamily::TwoSquareE2E3 => vec![v3i(2, 0, 0), v3i(0, 2, 0), v3i(0, 1, 1)],
            LatticeFamily::TriE3 => vec![u1, u2, e3],
            LatticeFamily::TriCentredE3 => vec![u1 + u2, u1 + u1 - u2, e3],
            LatticeFamily::TriCentredU1E3 => vec![u1 + u2, u1 + u1 - u2, u1 + e3],
            LatticeFamily::TriCentredU2E3 => vec![u1 + u2, u1 + u1 - u2, u2 + e3],
            LatticeFamily::ThreeTriSumE3 => {
                vec![u1.scale(surd_int(3)), u2.scale(surd_int(3)), u1 + u2 + e3]
            }
            LatticeFamily::ThreeTriDiffE3 => {
                vec![u1.scale(surd_int(3)), u2.scale(surd_int(3)), u1 + u1 - u2 + e3]
            }
            _ => return None,
        };
        Some(b)
    }

    pub fn basis2(&self) -> Option<Vec<Vec2>> {
        let b = match self {
            LatticeFamily::Square => vec![v2i(1, 0), v2i(0, 1)],
            LatticeFamily::SquareCentred => vec![v2i(1, 1), v2i(1, -1)],
            LatticeFamily::Tri => vec![U1, u2()],
            LatticeFamily::TriCentred => {
                vec![U1 + u2(), U1 + U1 - u2()]
            }
            _ => return None,
        };
        Some(b)
    }
}

fn v3i(x: i128, y: i128, z: i128) -> Vec3 {
    v3(surd_int(x), surd_int(y), surd_int(z))
}

fn v2i(x: i128, y: i128) -> Vec2 {
    v2(surd_int(x), surd_int(y))
}

/// Parameters for instantiating a named family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    /// Dilation by `a > 0`.
    Scale(Surd),
    /// Diagonal `diag(a, a, b)`.
    Aab(Surd, Surd),
    /// Full diagonal `diag(d1, d2, d3)`.
    Diag([Surd; 3]),
}

impl FamilyParams {
    pub fn diag3(&self) -> [Surd; 3] {
        match *self {
            FamilyParams::Scale(a) => [a, a, a],
            FamilyParams::Aab(a, b) => [a, a, b],
            FamilyParams::Diag(d) => d,
        }
    }
}

/// Instantiate a named 3-dimensional family: the canonical basis transformed
/// by the diagonal of `params`.
pub fn make_named(family: LatticeFamily, params: FamilyParams) -> Result<Lattice3, LatticeError> {
    let base = family.basis3().ok_or(LatticeError::BadParams)?;
    let d = params.diag3();
    if d.iter().any(|x| x.signum() <= 0) {
        return Err(LatticeError::NonPositiveParam);
    }
    let m = Matrix::diagonal(d);
    Lattice::new(base.into_iter().map(|b| b * m).collect())
}

/// Instantiate a named 2-dimensional family scaled by `a > 0`.
pub fn make_named2(family: LatticeFamily, a: Surd) -> Result<Lattice2, LatticeError> {
    let base = family.basis2().ok_or(LatticeError::BadParams)?;
    if a.signum() <= 0 {
        return Err(LatticeError::NonPositiveParam);
    }
    Lattice::new(base.into_iter().map(|b| b.scale(a)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::v3;

    fn cubic() -> Lattice3 {
        make_named(LatticeFamily::Cubic, FamilyParams::Scale(Surd::ONE)).unwrap()
    }

    fn bcc() -> Lattice3 {
        make_named(LatticeFamily::Bcc, FamilyParams::Scale(Surd::ONE)).unwrap()
    }

    fn fcc() -> Lattice3 {
        make_named(LatticeFamily::Fcc, FamilyParams::Scale(Surd::ONE)).unwrap()
    }

    #[test]
    fn named_bases_match_definitions() {
        assert_eq!(bcc().basis(), &[v3i(2, 0, 0), v3i(0, 2, 0), v3i(1, 1, 1)]);
        let tc = make_named2(LatticeFamily::TriCentred, Surd::ONE).unwrap();
        assert_eq!(tc.basis(), &[v2(sq(3, 2), sq3(1, 2)), v2(sq(3, 2), sq3(-1, 2))]);
        let c2 = make_named(LatticeFamily::Cubic, FamilyParams::Scale(surd_int(2))).unwrap();
        assert_eq!(c2.basis(), &[v3i(2, 0, 0), v3i(0, 2, 0), v3i(0, 0, 2)]);
        assert!(make_named(LatticeFamily::Cubic, FamilyParams::Scale(surd_int(-1))).is_err());
    }

    #[test]
    fn membership() {
        assert!(bcc().contains(&v3i(1, 1, 1)));
        assert!(bcc().contains(&v3i(3, 1, -1)));
        assert!(!bcc().contains(&v3i(1, 0, 0)));
        assert!(!fcc().contains(&v3i(1, 0, 0)));
        assert!(fcc().contains(&v3i(1, 0, 1)));
        assert!(cubic().contains(&Vector::zero()));
    }

    // Same-parity / even-sum brute enumeration pinned the alternative fcc
    // basis below: each vector has even coordinate sum and the index in Z^3
    // is 2 both ways.
    #[test]
    fn lattice_equality() {
        let alt = Lattice::new(vec![v3i(1, 1, 0), v3i(0, 1, 1), v3i(1, 0, 1)]).unwrap();
        assert!(alt.equal(&fcc()));
        assert!(alt.mutually_contains(&fcc()));
        assert!(fcc().equal(&fcc()));
        let double = cubic().scale(surd_int(2)).unwrap();
        assert!(!double.equal(&cubic()));
    }

    #[test]
    fn extend_examples() {
        let sq2d = make_named2(LatticeFamily::Square, Surd::ONE).unwrap().lift_to_xy();
        let ext = sq2d.extend(v3i(0, 0, 1)).unwrap();
        assert!(ext.equal(&cubic()));
        assert!(sq2d.extend(v3i(2, 1, 0)).is_err());

        let rank1 = Lattice::new(vec![v2i(1, 0)]).unwrap();
        let sq = rank1.extend(v2i(0, 1)).unwrap();
        assert!(sq.equal(&make_named2(LatticeFamily::Square, Surd::ONE).unwrap()));
    }

    #[test]
    fn transform_examples() {
        let sc = make_named2(LatticeFamily::SquareCentred, Surd::ONE).unwrap();
        let m = Matrix::diagonal([surd_int(2), Surd::ONE]);
        let t = sc.transform(&m).unwrap();
        assert_eq!(t.basis(), &[v2i(2, 1), v2i(2, -1)]);

        // Unimodular change of basis preserves the point set.
        let u = Matrix::from_rows([v3i(1, 2, 0), v3i(0, 1, 0), v3i(1, 1, 1)]);
        assert_eq!(u.det().as_integer(), Some(1));
        let shuffled = Lattice::new(cubic().basis().iter().map(|b| *b * u).collect()).unwrap();
        assert!(shuffled.equal(&cubic()));
    }

    #[test]
    fn invariance() {
        // All three [3,4] generators of the finite table preserve fcc.
        let r0 = Isometry::from_linear(Matrix::from_rows([v3i(0, 1, 0), v3i(1, 0, 0), v3i(0, 0, 1)]));
        let r1 = Isometry::from_linear(Matrix::from_rows([v3i(1, 0, 0), v3i(0, 0, 1), v3i(0, 1, 0)]));
        let r2 = Isometry::from_linear(Matrix::from_rows([v3i(1, 0, 0), v3i(0, 1, 0), v3i(0, 0, -1)]));
        for f in [&r0, &r1, &r2] {
            assert!(fcc().invariant_under(f));
            assert!(bcc().invariant_under(f));
            assert!(cubic().invariant_under(f));
        }
        // -id preserves every lattice.
        let minus = Isometry::from_linear(Matrix::<3>::identity().neg());
        for l in [cubic(), bcc(), fcc()] {
            assert!(l.invariant_under(&minus));
        }
        // (x,y,z) -> (y,x,z) preserves Λ(1,1)+e3.
        let sce3 = make_named(LatticeFamily::SquareCentredE3, FamilyParams::Scale(Surd::ONE)).unwrap();
        assert!(sce3.invariant_under(&r0));
    }

    // Oracle for the plane intersections: enumerate lattice points in a box
    // and compare the two point sets on the plane.
    fn enumerate_box(l: &Lattice3, r: i128) -> Vec<Vec3> {
        let mut pts = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                for c in -r..=r {
                    let p = l.basis()[0].scale(surd_int(a))
                        + l.basis()[1].scale(surd_int(b))
                        + l.basis()[2].scale(surd_int(c));
                    pts.push(p);
                }
            }
        }
        pts
    }

    #[test]
    fn plane_intersections() {
        let z = v3i(0, 0, 1);
        // bcc ∩ {z=0} = 2Λ(1,0): verified by enumeration.
        let got = bcc().intersect_plane(z);
        let expect = Lattice::new(vec![v3i(2, 0, 0), v3i(0, 2, 0)]).unwrap();
        assert_eq!(got.rank(), 2);
        assert!(got.mutually_contains(&expect));
        for p in enumerate_box(&bcc(), 2) {
            if p[2].is_zero() {
                assert!(got.contains(&p), "{p:?} missing from bcc ∩ z=0");
            }
        }
        // cubic ∩ {z=0} = Λ(1,0)
        let got = cubic().intersect_plane(z);
        assert!(got.mutually_contains(&Lattice::new(vec![v3i(1, 0, 0), v3i(0, 1, 0)]).unwrap()));
        // fcc ∩ {z=0} = Λ(1,1)
        let got = fcc().intersect_plane(z);
        assert!(got.mutually_contains(&Lattice::new(vec![v3i(1, 1, 0), v3i(1, -1, 0)]).unwrap()));
        for p in enumerate_box(&fcc(), 2) {
            if p[2].is_zero() {
                assert!(got.contains(&p));
            }
        }
    }

    #[test]
    fn reflection_splits() {
        let z = v3i(0, 0, 1);
        let s = reflection_split(&cubic(), z).unwrap();
        assert!(s.vertical);
        assert_eq!(s.w, v3i(0, 0, 1));

        let s = reflection_split(&bcc(), z).unwrap();
        assert!(!s.vertical);
        assert_eq!(s.height, Surd::ONE);
        assert_eq!(s.w, v3i(1, 1, 1));

        let s = reflection_split(&fcc(), z).unwrap();
        assert!(!s.vertical);
        assert_eq!(s.height, Surd::ONE);
        // (1,0,1) is the cell representative of the minimal layer.
        assert!(fcc().contains(&s.w));
        assert_eq!(s.w[2], Surd::ONE);
    }

    // Every lattice point lies in exactly one layer L0 + k w.
    #[test]
    fn layer_decomposition() {
        for l in [cubic(), bcc(), fcc()] {
            let s = reflection_split(&l, v3i(0, 0, 1)).unwrap();
            for p in enumerate_box(&l, 2) {
                let k = (p.dot(&v3i(0, 0, 1)) / s.height).as_integer().expect("integral layer");
                let residue = p - s.w.scale(surd_int(k));
                assert!(s.sub.contains(&residue), "{p:?} not in layer {k}");
            }
        }
    }

    #[test]
    fn non_invariant_split_fails() {
        // Heights along z are 0, 1 and sqrt3, a dense group: the mirror
        // sublattice degenerates to rank 1 and the split must refuse.
        let l = Lattice::new(vec![
            v3i(1, 0, 0),
            v3i(0, 1, 1),
            v3(Surd::ZERO, Surd::ZERO, sq3(1, 1)),
        ])
        .unwrap();
        assert!(reflection_split(&l, v3i(0, 0, 1)).is_err());
    }

    #[test]
    fn intersect_and_index() {
        let two_cubic = cubic().scale(surd_int(2)).unwrap();
        let i = bcc().intersect(&two_cubic);
        assert!(i.mutually_contains(&two_cubic));
        assert_eq!(bcc().index_of(&i), Some(2));
        assert_eq!(cubic().index_of(&bcc()), Some(4));
    }
}
