//! The 36 in-scope regular polyhedra of E^3: finite polyhedra with
//! tetrahedral/octahedral symmetry and their Petrials, the planar
//! apeirohedra, the blended apeirohedra (blend parameters fixed to 1 and
//! 1/3), and the pure apeirohedra — each with base vertex and generator
//! triple, patch generation, the Petrie operation, and translation
//! subgroups.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use crate::geom::{v3, Mat3, Vec3, Vector};
use crate::groups::ReflectionClass;
use crate::isometry::Iso3;
use crate::lattice::{Lattice3, LatticeFamily};
use crate::surd::{sq, surd_int, ParseSurdError, Surd};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown polyhedron `{0}`")]
    UnknownName(String),
    #[error("`{0}` is not a finite polyhedron")]
    NotFinite(String),
    #[error("`{0}` is not an apeirohedron")]
    NotApeirohedron(String),
    #[error("region too small: no complete face fits")]
    RegionTooSmall,
    #[error("patch generation exceeded {0} flags")]
    PatchTooLarge(usize),
    #[error("edge with {0} incident faces in the patch interior")]
    BadEdgeFaceCount(usize),
    #[error("face walk failed to close or find a period")]
    WalkDidNotResolve,
    #[error("bad map component: {0}")]
    BadComponent(String),
}

impl From<ParseSurdError> for CatalogError {
    fn from(e: ParseSurdError) -> Self {
        CatalogError::BadComponent(e.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum PolyhedronKind {
    Finite,
    Planar,
    BlendedFiniteFace,
    BlendedHelical,
    Pure,
}

impl PolyhedronKind {
    pub fn label(&self) -> &'static str {
        match self {
            PolyhedronKind::Finite => "finite",
            PolyhedronKind::Planar => "planar",
            PolyhedronKind::BlendedFiniteFace => "blended-finite-face",
            PolyhedronKind::BlendedHelical => "blended-helical",
            PolyhedronKind::Pure => "pure",
        }
    }

    pub fn is_blended(&self) -> bool {
        matches!(self, PolyhedronKind::BlendedFiniteFace | PolyhedronKind::BlendedHelical)
    }
}

/// One catalog row: name, Schläfli type, base vertex and generator triple.
#[derive(Clone, Debug)]
pub struct PolyhedronSpec {
    pub name: String,
    /// Face codegree; `None` encodes infinity.
    pub p: Option<u32>,
    /// Vertex degree.
    pub q: u32,
    pub kind: PolyhedronKind,
    pub base_vertex: Vec3,
    pub generators: [Iso3; 3],
    /// Coordinate frame for patch regions (rows are the frame vectors).
    pub frame: Mat3,
    pub blend_alpha: Option<Surd>,
    /// Petrie partner name, when distinct.
    pub petrie_partner: Option<&'static str>,
    /// Expected class of the mirror group H(P).
    pub h_class: ReflectionClass,
    /// Generator corrections applied to the source row (typo log).
    pub corrections: Vec<String>,
}

impl PolyhedronSpec {
    /// Admissible lattice families for symmetric torus quotients of this
    /// polyhedron, together with the number of free parameters (1 = scalar,
    /// 2 = diag(a,a,b)).
    pub fn lattice_families(&self) -> (Vec<LatticeFamily>, usize) {
        use LatticeFamily::*;
        match self.kind {
            PolyhedronKind::Finite | PolyhedronKind::Pure => (vec![Cubic, Fcc, Bcc], 1),
            _ => {
                if self.q == 4 {
                    // the {4,4} family
                    (vec![Cubic, Fcc, Bcc, SquareCentredE3], 2)
                } else if matches!(self.name.as_str(), "{3,6}#{inf}" | "{inf,6}_3#{inf}") {
                    (vec![TriE3, TriCentredE3, TriCentredU1E3, TriCentredU2E3], 2)
                } else if matches!(self.name.as_str(), "{6,3}#{}" | "{inf,3}_6#{}") {
                    (vec![TriE3, TriCentredE3, ThreeTriSumE3, ThreeTriDiffE3], 2)
                } else {
                    (vec![TriE3, TriCentredE3], 2)
                }
            }
        }
    }

    /// Generators entering H(P): all three for finite and pure polyhedra,
    /// the two vertex stabilizers for planar and blended ones.
    pub fn h_generators(&self) -> Vec<Iso3> {
        match self.kind {
            PolyhedronKind::Finite | PolyhedronKind::Pure => self.generators.to_vec(),
            _ => vec![self.generators[1], self.generators[2]],
        }
    }
}

/// Parse one affine map component like `1-x`, `y`, `a-z`,
/// `1/2*x+s3/2*y`: a sum of terms, each a constant, `a` (the blend
/// parameter), or a coefficient times x/y/z.
fn parse_component(s: &str, alpha: Surd) -> Result<(Vec3, Surd), CatalogError> {
    let mut linear = Vector::zero();
    let mut cst = Surd::ZERO;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = Surd::ONE;
        if bytes[i] == b'+' {
            i += 1;
        } else if bytes[i] == b'-' {
            sign = -Surd::ONE;
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &s[start..i];
        if term.is_empty() {
            return Err(CatalogError::BadComponent(s.into()));
        }
        let (coef_str, var) = match term.strip_suffix(['x', 'y', 'z']) {
            Some(rest) => {
                let var = term.as_bytes()[term.len() - 1];
                (rest.strip_suffix('*').unwrap_or(rest), Some(var))
            }
            None => (term, None),
        };
        let coef = if coef_str.is_empty() {
            Surd::ONE
        } else if coef_str == "a" {
            alpha
        } else if let Some(den) = coef_str.strip_prefix("s3/") {
            let d: i128 = den.parse().map_err(|_| CatalogError::BadComponent(s.into()))?;
            crate::surd::sq3(1, d)
        } else if coef_str == "s3" {
            crate::surd::sq3(1, 1)
        } else {
            coef_str.parse::<Surd>()?
        };
        match var {
            Some(b'x') => linear[0] = linear[0] + sign * coef,
            Some(b'y') => linear[1] = linear[1] + sign * coef,
            Some(b'z') => linear[2] = linear[2] + sign * coef,
            Some(_) => unreachable!(),
            None => cst = cst + sign * coef,
        }
    }
    Ok((linear, cst))
}

/// Build the isometry `(x,y,z) -> (c0, c1, c2)` from component strings.
fn iso(map: &str, alpha: Surd) -> Iso3 {
    let parts: Vec<&str> = map.split(',').collect();
    assert_eq!(parts.len(), 3, "map needs three components: {map}");
    let mut linear = Mat3::identity();
    let mut translation = Vector::zero();
    for (j, part) in parts.iter().enumerate() {
        let (lin, cst) = parse_component(part.trim(), alpha).expect("catalog map parses");
        for i in 0..3 {
            linear.rows[i].0[j] = lin[i];
        }
        translation[j] = cst;
    }
    Iso3::new(linear, translation).expect("catalog generators are isometries")
}

fn pt(s: &str) -> Vec3 {
    let parts: Vec<&str> = s.split(',').collect();
    assert_eq!(parts.len(), 3);
    let mut v = Vector::zero();
    for (j, part) in parts.iter().enumerate() {
        let (lin, cst) = parse_component(part.trim(), Surd::ZERO).expect("catalog point parses");
        assert!(lin.is_zero());
        v[j] = cst;
    }
    v
}

fn tri_frame() -> Mat3 {
    // rows u1, u2, e3
    Mat3::from_rows([
        v3(surd_int(1), Surd::ZERO, Surd::ZERO),
        v3(sq(1, 2), crate::surd::sq3(1, 2), Surd::ZERO),
        v3(Surd::ZERO, Surd::ZERO, surd_int(1)),
    ])
}

struct Row {
    name: &'static str,
    p: Option<u32>,
    q: u32,
    kind: PolyhedronKind,
    base: &'static str,
    maps: [&'static str; 3],
    alpha: Option<Surd>,
    tri: bool,
    petrie: Option<&'static str>,
    h: ReflectionClass,
    /// (what was printed, what restores the relations)
    correction: Option<(&'static str, &'static str)>,
    /// Petrials are generated from the partner row: (partner, p).
    derived_petrial: Option<(&'static str, Option<u32>)>,
}

const fn row(
    name: &'static str,
    p: Option<u32>,
    q: u32,
    kind: PolyhedronKind,
    base: &'static str,
    maps: [&'static str; 3],
    h: ReflectionClass,
) -> Row {
    Row {
        name,
        p,
        q,
        kind,
        base,
        maps,
        alpha: None,
        tri: false,
        petrie: None,
        h,
        correction: None,
        derived_petrial: None,
    }
}

fn rows() -> Vec<Row> {
    use PolyhedronKind::*;
    use ReflectionClass::*;
    let one = Surd::ONE;
    let third = sq(1, 3);
    let mut out = vec![
        // Finite polyhedra (vertex sets are the orbits of the base vertex).
        row("{3,3}", Some(3), 3, Finite, "1,1,1", ["-y,-x,z", "z,y,x", "y,x,z"], Td),
        row("{3,4}", Some(3), 4, Finite, "1,0,0", ["y,x,z", "x,z,y", "x,y,-z"], Oh),
        row("{4,3}", Some(4), 3, Finite, "1,1,1", ["x,y,-z", "x,z,y", "y,x,z"], Oh),
        // Planar apeirohedra.
        row("{4,4}", Some(4), 4, Planar, "0,0,0", ["1-x,y,z", "y,x,z", "x,-y,z"], Cnv(4)),
        row(
            "{3,6}",
            Some(3),
            6,
            Planar,
            "0,0,0",
            ["1-x,y,z", "1/2*x+s3/2*y,s3/2*x-1/2*y,z", "x,-y,z"],
            Cnv(6),
        ),
        row(
            "{6,3}",
            Some(6),
            3,
            Planar,
            "1/2,s3/6,0",
            ["x,-y,z", "1/2*x+s3/2*y,s3/2*x-1/2*y,z", "1-x,y,z"],
            Cnv(6),
        ),
        // Blended apeirohedra, alpha = 1 except the {6,3} blends at 1/3.
        row(
            "{4,4}#{}",
            Some(4),
            4,
            BlendedFiniteFace,
            "0,0,0",
            ["1-x,y,a-z", "y,x,z", "x,-y,z"],
            Cnv(4),
        ),
        row(
            "{6,3}#{}",
            Some(6),
            3,
            BlendedFiniteFace,
            "1/2,s3/6,0",
            ["x,-y,a-z", "1/2*x+s3/2*y,s3/2*x-1/2*y,z", "1-x,y,z"],
            Cnv(3),
        ),
        row(
            "{3,6}#{}",
            Some(6),
            6,
            BlendedFiniteFace,
            "0,0,0",
            ["1-x,y,a-z", "1/2*x+s3/2*y,s3/2*x-1/2*y,z", "x,-y,z"],
            Cnv(6),
        ),
        row(
            "{4,4}#{inf}",
            None,
            4,
            BlendedHelical,
            "0,0,0",
            ["1-x,y,a-z", "y,x,-z", "x,-y,z"],
            Cnv(4),
        ),
        // Blending the vertex figure (a triangle) with a segment doubles the
        // odd degree: the type is {inf, 6}.
        row(
            "{6,3}#{inf}",
            None,
            6,
            BlendedHelical,
            "1/2,s3/6,0",
            ["x,-y,a-z", "1/2*x+s3/2*y,s3/2*x-1/2*y,-z", "1-x,y,z"],
            Cnv(6),
        ),
        row(
            "{3,6}#{inf}",
            None,
            6,
            BlendedHelical,
            "0,0,0",
            ["1-x,y,a-z", "1/2*x+s3/2*y,s3/2*x-1/2*y,-z", "x,-y,z"],
            Cnv(3),
        ),
        // Pure apeirohedra.
        row("{4,6|4}", Some(4), 6, Pure, "0,0,0", ["1-x,y,z", "y,x,-z", "x,z,y"], Oh),
        row("{6,4|4}", Some(6), 4, Pure, "1/2,1/2,0", ["x,z,y", "y,x,-z", "1-x,y,z"], Oh),
        row("{6,6|3}", Some(6), 6, Pure, "0,0,0", ["x,1-z,1-y", "y,x,-z", "x,z,y"], Td),
        row("{inf,6}_4,4", None, 6, Pure, "0,0,0", ["1-x,z,y", "y,x,-z", "x,z,y"], Td),
        row("{inf,4}_6,4", None, 4, Pure, "1/2,1/2,0", ["1-x,z,y", "y,x,-z", "1-x,y,z"], Oh),
        row("{inf,6}_6,3", None, 6, Pure, "0,0,0", ["x,1-y,1-z", "y,x,-z", "x,z,y"], Oh),
        row("{6,6}_4", Some(6), 6, Pure, "0,0,0", ["1-y,1-x,-z", "x,z,y", "y,x,-z"], Td),
        row("{4,6}_6", Some(4), 6, Pure, "0,0,0", ["1-x,1-y,z", "x,z,y", "y,x,-z"], Oh),
        row("{inf,3}^b", None, 3, Pure, "0,0,0", ["1-y,1-x,-z", "z,-y,x", "y,x,-z"], Oh),
        row("{inf,3}^a", None, 3, Pure, "0,0,0", ["1-x,1-y,z", "z,-y,x", "y,x,-z"], Td),
        row("{6,4}_6", Some(6), 4, Pure, "1/2,1/2,1/2", ["y,x,-z", "x,z,y", "1-x,1-y,z"], Oh),
        row(
            "{inf,4}_*3",
            None,
            4,
            Pure,
            "1/2,1/2,1/2",
            ["y,x,-z", "1-x,z,y", "1-x,1-y,z"],
            Oh,
        ),
    ];
    // Blend parameters and triangular frames.
    for r in out.iter_mut() {
        if r.kind.is_blended() {
            r.alpha = Some(if r.name.starts_with("{6,3}#") { third } else { one });
        }
        // Triangular frames apply to the hexagonal planar/blended rows only;
        // pure apeirohedra live on the cubic frame.
        if r.kind != Pure && (r.name.contains("3,6") || r.name.contains("6,3")) {
            r.tri = true;
        }
    }
    // Source-row corrections, each restoring the Coxeter relations:
    // - {4,4}#{inf} R2 is printed "(x-y,z)" (two components); (x,-y,z)
    //   restores the relations and fixes the base vertex.
    // - {inf,6}_6,3 R0 is printed "(x,1-z,1-y)", identical to the {6,6|3}
    //   row; the Petrie image of {6,6|3}'s R0R2, (x,1-y,1-z), restores
    //   p = infinity.
    for r in out.iter_mut() {
        match r.name {
            "{4,4}#{inf}" => r.correction = Some(("R2 = (x-y,z)", "R2 = (x,-y,z)")),
            "{inf,6}_6,3" => r.correction = Some(("R0 = (x,1-z,1-y)", "R0 = (x,1-y,1-z)")),
            _ => {}
        }
    }
    // Petrials generated from partner rows (same skeleton, Petrie faces).
    let derived: [(&'static str, &'static str, Option<u32>, u32, ReflectionClass); 9] = [
        ("{4,3}_3", "{3,3}", Some(4), 3, Oh),
        ("{6,4}_3", "{3,4}", Some(6), 4, Oh),
        ("{6,3}_4", "{4,3}", Some(6), 3, Td),
        ("{inf,4}_4", "{4,4}", None, 4, Cnv(4)),
        ("{inf,6}_3", "{3,6}", None, 6, Cnv(6)),
        ("{inf,3}_6", "{6,3}", None, 3, Cnv(6)),
        ("{inf,4}_4#{}", "{4,4}#{}", None, 4, Cnv(4)),
        ("{inf,4}_4#{inf}", "{4,4}#{inf}", None, 4, Cnv(4)),
        ("{inf,6}_3#{}", "{3,6}#{}", None, 6, Cnv(6)),
    ];
    let more: [(&'static str, &'static str, Option<u32>, u32, ReflectionClass); 3] = [
        ("{inf,6}_3#{inf}", "{3,6}#{inf}", None, 6, Cnv(3)),
        ("{inf,3}_6#{}", "{6,3}#{}", None, 3, Cnv(3)),
        ("{inf,3}_6#{inf}", "{6,3}#{inf}", None, 6, Cnv(6)),
    ];
    for (name, partner, p, q, h) in derived.into_iter().chain(more) {
        let src = out.iter().position(|r| r.name == partner).unwrap();
        let mut r = row(name, p, q, out[src].kind, out[src].base, out[src].maps, h);
        r.alpha = out[src].alpha;
        r.tri = out[src].tri;
        r.derived_petrial = Some((partner, p));
        out.push(r);
    }
    for r in out.iter_mut() {
        r.petrie = petrie_partner_of(r.name);
    }
    out
}

/// Petrie partners; the two self-Petrie polyhedra map to themselves.
const PETRIE_PAIRS: [(&str, &str); 17] = [
    ("{3,3}", "{4,3}_3"),
    ("{3,4}", "{6,4}_3"),
    ("{4,3}", "{6,3}_4"),
    ("{4,4}", "{inf,4}_4"),
    ("{3,6}", "{inf,6}_3"),
    ("{6,3}", "{inf,3}_6"),
    ("{4,4}#{}", "{inf,4}_4#{}"),
    ("{4,4}#{inf}", "{inf,4}_4#{inf}"),
    ("{3,6}#{}", "{inf,6}_3#{}"),
    ("{3,6}#{inf}", "{inf,6}_3#{inf}"),
    ("{6,3}#{}", "{inf,3}_6#{}"),
    ("{6,3}#{inf}", "{inf,3}_6#{inf}"),
    ("{4,6|4}", "{inf,6}_4,4"),
    ("{6,4|4}", "{inf,4}_6,4"),
    ("{6,6|3}", "{inf,6}_6,3"),
    ("{6,6}_4", "{4,6}_6"),
    ("{inf,3}^b", "{inf,3}^a"),
];

pub fn petrie_partner_of(name: &str) -> Option<&'static str> {
    if name == "{6,4}_6" || name == "{inf,4}_*3" {
        return match name {
            "{6,4}_6" => Some("{6,4}_6"),
            _ => Some("{inf,4}_*3"),
        };
    }
    for (a, b) in PETRIE_PAIRS {
        if a == name {
            return Some(b);
        }
        if b == name {
            return Some(a);
        }
    }
    None
}

/// Canonical catalog order: finite, planar, blended, pure; Petrials next to
/// their partners.
pub fn names() -> Vec<String> {
    let mut v: Vec<(PolyhedronKind, String)> =
        rows().iter().map(|r| (r.kind, r.name.to_string())).collect();
    let rank = |k: &PolyhedronKind| match k {
        PolyhedronKind::Finite => 0,
        PolyhedronKind::Planar => 1,
        PolyhedronKind::BlendedFiniteFace => 2,
        PolyhedronKind::BlendedHelical => 3,
        PolyhedronKind::Pure => 4,
    };
    v.sort_by(|a, b| rank(&a.0).cmp(&rank(&b.0)).then(a.1.cmp(&b.1)));
    v.into_iter().map(|(_, n)| n).collect()
}

/// Catalog lookup. Petrials of table rows are constructed with the
/// generator triple (R0 R2, R1, R2) of the partner.
pub fn spec(name: &str) -> Result<PolyhedronSpec, CatalogError> {
    let all = rows();
    let r = all
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    let alpha = r.alpha.unwrap_or(Surd::ZERO);
    let g = [iso(r.maps[0], alpha), iso(r.maps[1], alpha), iso(r.maps[2], alpha)];
    let generators = if r.derived_petrial.is_some() {
        [g[0].compose(&g[2]), g[1], g[2]]
    } else {
        g
    };
    let mut corrections = Vec::new();
    if let Some((was, now)) = r.correction {
        corrections.push(format!(
            "{}: source row prints {was}; corrected to {now} (restores the type-{{{},{}}} relations)",
            r.name,
            r.p.map_or("inf".to_string(), |p| p.to_string()),
            r.q
        ));
    }
    Ok(PolyhedronSpec {
        name: r.name.to_string(),
        p: r.p,
        q: r.q,
        kind: r.kind,
        base_vertex: pt(r.base),
        generators,
        frame: if r.tri { tri_frame() } else { Mat3::identity() },
        blend_alpha: r.alpha,
        petrie_partner: r.petrie,
        h_class: r.h,
        corrections,
    })
}

/// All corrections applied anywhere in the catalog, for reports.
pub fn corrections_log() -> Vec<String> {
    let mut out = Vec::new();
    for n in names() {
        if let Ok(s) = spec(&n) {
            out.extend(s.corrections);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// An axis-aligned box of frame coordinates.
#[derive(Clone, Debug)]
pub struct Region {
    pub lo: Vec3,
    pub hi: Vec3,
}

impl Region {
    pub fn cube(lo: i128, hi: i128) -> Region {
        Region {
            lo: v3(surd_int(lo), surd_int(lo), surd_int(lo)),
            hi: v3(surd_int(hi), surd_int(hi), surd_int(hi)),
        }
    }

    pub fn box3(lo: [Surd; 3], hi: [Surd; 3]) -> Region {
        Region {
            lo: Vector(lo),
            hi: Vector(hi),
        }
    }

    /// Square region for planar polyhedra (z pinned to 0).
    pub fn square(lo: i128, hi: i128) -> Region {
        Region {
            lo: v3(surd_int(lo), surd_int(lo), Surd::ZERO),
            hi: v3(surd_int(hi), surd_int(hi), Surd::ZERO),
        }
    }

    pub fn contains(&self, c: &Vec3) -> bool {
        (0..3).all(|i| self.lo[i] <= c[i] && c[i] <= self.hi[i])
    }

    pub fn inflate(&self, m: Surd) -> Region {
        Region {
            lo: self.lo - v3(m, m, m),
            hi: self.hi + v3(m, m, m),
        }
    }
}

/// A face as an ordered vertex walk. Closed walks are complete polygons
/// (`verts` lists the cycle once); open walks are one full period of an
/// infinite helix or zigzag, with `verts.last() == verts[0] + period`.
#[derive(Clone, Debug)]
pub struct FaceWalk {
    pub verts: Vec<Vec3>,
    pub closed: bool,
    pub period: Option<Vec3>,
}

impl FaceWalk {
    /// Consecutive directed edges of the stored walk.
    pub fn steps(&self) -> Vec<(Vec3, Vec3)> {
        let n = self.verts.len();
        if self.closed {
            (0..n).map(|i| (self.verts[i], self.verts[(i + 1) % n])).collect()
        } else {
            (0..n - 1).map(|i| (self.verts[i], self.verts[i + 1])).collect()
        }
    }

    pub fn edge_count(&self) -> usize {
        if self.closed {
            self.verts.len()
        } else {
            self.verts.len() - 1
        }
    }

    /// Canonical signature: the sorted edge set, periodic walks reduced
    /// modulo their (sign-normalized) period.
    pub fn signature(&self) -> FaceSig {
        match self.period {
            None => {
                let mut edges: Vec<(Vec3, Vec3)> =
                    self.steps().into_iter().map(norm_edge).collect();
                edges.sort();
                FaceSig { period: None, edges }
            }
            Some(t) => {
                let t = if t < Vec3::zero() { -t } else { t };
                let t2 = t.norm2();
                let mut edges: Vec<(Vec3, Vec3)> = self
                    .steps()
                    .into_iter()
                    .map(|(a, b)| {
                        let k = (a.dot(&t) / t2).floor();
                        let shift = t.scale(surd_int(k));
                        norm_edge((a - shift, b - shift))
                    })
                    .collect();
                edges.sort();
                edges.dedup();
                FaceSig { period: Some(t), edges }
            }
        }
    }

    pub fn translated(&self, t: Vec3) -> FaceWalk {
        FaceWalk {
            verts: self.verts.iter().map(|v| *v + t).collect(),
            closed: self.closed,
            period: self.period,
        }
    }

    pub fn mapped(&self, g: &Iso3) -> FaceWalk {
        FaceWalk {
            verts: self.verts.iter().map(|v| g.apply(*v)).collect(),
            closed: self.closed,
            period: self.period.map(|t| t * g.linear),
        }
    }
}

fn norm_edge((a, b): (Vec3, Vec3)) -> (Vec3, Vec3) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FaceSig {
    pub period: Option<Vec3>,
    pub edges: Vec<(Vec3, Vec3)>,
}

/// Finite portion of a regular polyhedron: vertices and edges inside the
/// region, full face walks, plus the halo needed to keep boundary stars
/// available to the quotient machinery.
#[derive(Clone, Debug)]
pub struct Patch {
    pub spec: PolyhedronSpec,
    pub region: Option<Region>,
    /// Vertices with frame coordinates inside the region.
    pub vertices: Vec<Vec3>,
    /// Edges with both endpoints inside the region.
    pub edges: Vec<(Vec3, Vec3)>,
    /// Deduplicated faces meeting the patch.
    pub faces: Vec<FaceWalk>,
    /// All vertices discovered by the flag search (region + margin).
    pub halo_vertices: Vec<Vec3>,
    /// All edges with both endpoints in the halo.
    pub halo_edges: Vec<(Vec3, Vec3)>,
}

pub const PATCH_MARGIN: i128 = 3;
const FLAG_CAP: usize = 3_000_000;

/// The walk of the base face: the orbit of the base vertex under the
/// one-step map R1 R0 (each application advances the face walk by one
/// vertex). Finite faces close at a cycle; infinite ones are cut at the
/// first full translation period.
pub fn base_face_walk(spec: &PolyhedronSpec) -> Result<FaceWalk, CatalogError> {
    let v0 = spec.base_vertex;
    let step = spec.generators[1].compose(&spec.generators[0]);
    let mut verts = vec![v0];
    let mut pow = Iso3::identity();
    for _ in 1..=96 {
        pow = pow.compose(&step);
        let a = pow.apply(v0);
        if a == v0 {
            return Ok(FaceWalk {
                verts,
                closed: true,
                period: None,
            });
        }
        verts.push(a);
        if pow.linear.is_identity() {
            // pure translation: one full period collected, last = first + t
            return Ok(FaceWalk {
                verts,
                closed: false,
                period: Some(pow.translation),
            });
        }
    }
    Err(CatalogError::WalkDidNotResolve)
}

/// Generate a patch by breadth-first enumeration of flags (group words),
/// pruned to the region inflated by a fixed margin.
pub fn build_patch_from_spec(
    spec: &PolyhedronSpec,
    region: Option<&Region>,
) -> Result<Patch, CatalogError> {
    let frame_inv = spec.frame.inverse();
    let margin = surd_int(PATCH_MARGIN);
    let halo = region.map(|r| r.inflate(margin));
    let inside_halo =
        |p: &Vec3| halo.as_ref().map_or(true, |h| h.contains(&(*p * frame_inv)));

    let base_walk = base_face_walk(spec)?;
    if let (Some(r), true) = (region, base_walk.closed) {
        // A region must be able to host one complete face.
        let extent = r.hi - r.lo;
        let diam = base_walk
            .verts
            .iter()
            .map(|v| *v * frame_inv)
            .fold(None::<(Vec3, Vec3)>, |acc, c| match acc {
                None => Some((c, c)),
                Some((lo, hi)) => Some((
                    Vector([lo[0].min(c[0]), lo[1].min(c[1]), lo[2].min(c[2])]),
                    Vector([hi[0].max(c[0]), hi[1].max(c[1]), hi[2].max(c[2])]),
                )),
            })
            .map(|(lo, hi)| hi - lo)
            .unwrap();
        for i in 0..3 {
            if extent[i] + margin + margin < diam[i] {
                return Err(CatalogError::RegionTooSmall);
            }
        }
    }

    // Flags are enumerated as group words; faces are the components of the
    // flag graph under the face-preserving generators R0, R1, so one face
    // walk is laid out per component rather than per flag.
    let mut index: HashMap<Iso3, u32> = HashMap::new();
    let mut queue: Vec<Iso3> = vec![Iso3::identity()];
    index.insert(Iso3::identity(), 0);
    let mut face_root: Vec<u32> = vec![0];
    fn find(uf: &mut Vec<u32>, mut i: u32) -> u32 {
        while uf[i as usize] != i {
            let up = uf[uf[i as usize] as usize];
            uf[i as usize] = up;
            i = up;
        }
        i
    }
    let mut vertices: HashMap<Vec3, ()> = HashMap::new();
    let mut edges: HashMap<(Vec3, Vec3), ()> = HashMap::new();

    let v0 = spec.base_vertex;
    let v1 = spec.generators[0].apply(v0);

    let mut head = 0;
    while head < queue.len() {
        let g = queue[head];
        let gi = head as u32;
        head += 1;
        let gv0 = g.apply(v0);
        vertices.insert(gv0, ());
        let gv1 = g.apply(v1);
        if inside_halo(&gv1) {
            edges.insert(norm_edge((gv0, gv1)), ());
        }
        for (ri, r) in spec.generators.iter().enumerate() {
            let next = r.compose(&g);
            let ni = match index.get(&next) {
                Some(&i) => Some(i),
                None => {
                    if index.len() >= FLAG_CAP {
                        return Err(CatalogError::PatchTooLarge(FLAG_CAP));
                    }
                    if inside_halo(&next.apply(v0)) {
                        let i = queue.len() as u32;
                        index.insert(next, i);
                        queue.push(next);
                        face_root.push(i);
                        Some(i)
                    } else {
                        None
                    }
                }
            };
            if ri < 2 {
                if let Some(ni) = ni {
                    let (a, b) = (find(&mut face_root, gi), find(&mut face_root, ni));
                    face_root[a as usize] = b;
                }
            }
        }
    }

    // One representative flag per face component, deduplicated by exact
    // face signature.
    let mut face_sigs: HashMap<FaceSig, ()> = HashMap::new();
    let mut faces: Vec<FaceWalk> = Vec::new();
    let mut seen_roots: HashMap<u32, ()> = HashMap::new();
    for i in 0..queue.len() as u32 {
        let root = find(&mut face_root, i);
        if seen_roots.contains_key(&root) {
            continue;
        }
        seen_roots.insert(root, ());
        let fw = base_walk.mapped(&queue[i as usize]);
        let sig = fw.signature();
        if !face_sigs.contains_key(&sig) {
            face_sigs.insert(sig, ());
            faces.push(fw);
        }
    }

    let mut halo_vertices: Vec<Vec3> = vertices.into_keys().collect();
    halo_vertices.sort();
    let mut halo_edges: Vec<(Vec3, Vec3)> = edges.into_keys().collect();
    halo_edges.sort();

    let in_region = |p: &Vec3| region.map_or(true, |r| r.contains(&(*p * frame_inv)));
    let vertices: Vec<Vec3> = halo_vertices.iter().copied().filter(|p| in_region(p)).collect();
    let edges: Vec<(Vec3, Vec3)> = halo_edges
        .iter()
        .copied()
        .filter(|(a, b)| in_region(a) && in_region(b))
        .collect();
    faces.sort_by_key(|f| f.signature());

    Ok(Patch {
        spec: spec.clone(),
        region: region.cloned(),
        vertices,
        edges,
        faces,
        halo_vertices,
        halo_edges,
    })
}

/// Complete finite polyhedron (tetrahedron, cube, octahedron or a Petrial),
/// optionally rescaled.
pub fn build_finite(name: &str, edge_scale: Surd) -> Result<Patch, CatalogError> {
    let mut s = spec(name)?;
    if s.kind != PolyhedronKind::Finite {
        return Err(CatalogError::NotFinite(name.to_string()));
    }
    if edge_scale != Surd::ONE {
        s.base_vertex = s.base_vertex.scale(edge_scale);
        // Finite generators are linear, so scaling the base is enough.
    }
    build_patch_from_spec(&s, None)
}

/// Patch of an apeirohedron over a bounded region of frame coordinates.
pub fn build_patch(name: &str, region: &Region) -> Result<Patch, CatalogError> {
    let s = spec(name)?;
    if s.kind == PolyhedronKind::Finite {
        return Err(CatalogError::NotApeirohedron(name.to_string()));
    }
    build_patch_from_spec(&s, Some(region))
}

/// Cached patches for scan workloads, keyed by integer region bounds.
pub fn cached_patch(name: &str, region: &Region) -> Result<Arc<Patch>, CatalogError> {
    static CACHE: LazyLock<Mutex<HashMap<(String, [i128; 6]), Arc<Patch>>>> =
        LazyLock::new(|| Mutex::new(HashMap::new()));
    let key_bounds = [
        region.lo[0].floor(),
        region.lo[1].floor(),
        region.lo[2].floor(),
        region.hi[0].floor(),
        region.hi[1].floor(),
        region.hi[2].floor(),
    ];
    let key = (name.to_string(), key_bounds);
    if let Some(p) = CACHE.lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let built = Arc::new(build_patch(name, region)?);
    CACHE.lock().unwrap().insert(key, built.clone());
    Ok(built)
}

/// The Petrie dual of a patch: same skeleton, faces replaced by the walks
/// in which any two but not three consecutive edges share a face.
pub fn petrial(patch: &Patch) -> Result<Patch, CatalogError> {
    // Occurrences of each directed edge inside faces: (face, shift, successor).
    type Occ = (usize, Vec3, Vec3);
    let mut occ: HashMap<(Vec3, Vec3), Vec<Occ>> = HashMap::new();
    let bbox = patch
        .halo_vertices
        .iter()
        .fold(None::<(Vec3, Vec3)>, |acc, v| match acc {
            None => Some((*v, *v)),
            Some((lo, hi)) => Some((
                Vector([lo[0].min(v[0]), lo[1].min(v[1]), lo[2].min(v[2])]),
                Vector([hi[0].max(v[0]), hi[1].max(v[1]), hi[2].max(v[2])]),
            )),
        });
    let in_bbox = |p: &Vec3| {
        bbox.as_ref()
            .map_or(true, |(lo, hi)| (0..3).all(|i| lo[i] <= p[i] && p[i] <= hi[i]))
    };

    for (fi, f) in patch.faces.iter().enumerate() {
        let mut register = |shift: Vec3| {
            let verts: Vec<Vec3> = f.verts.iter().map(|v| *v + shift).collect();
            let n = verts.len();
            let idx = |i: usize| verts[i % n];
            let steps = if f.closed { n } else { n - 1 };
            for i in 0..steps {
                let (a, b) = (idx(i), idx(i + 1));
                let succ = if f.closed || i + 2 < n {
                    Some(idx(i + 2))
                } else {
                    f.period.map(|t| verts[1] + t)
                };
                if let Some(c) = succ {
                    occ.entry((a, b)).or_default().push((fi, shift, c));
                }
                // predecessor orientation: walking the face backwards
                let pred = if f.closed {
                    Some(idx((i + n - 1) % n))
                } else if i >= 1 {
                    Some(idx(i - 1))
                } else {
                    f.period.map(|t| verts[n - 2] - t)
                };
                if let Some(w) = pred {
                    occ.entry((b, a)).or_default().push((fi, shift, w));
                }
            }
        };
        match f.period {
            None => register(Vec3::zero()),
            Some(t) => {
                // Cover the patch bbox with period shifts.
                for k in -6i128..=6 {
                    let shift = t.scale(surd_int(k));
                    if f.verts.iter().any(|v| in_bbox(&(*v + shift))) {
                        register(shift);
                    }
                }
            }
        }
    }

    // Interior sanity: every patch-interior directed edge should see 2 faces.
    for (a, b) in &patch.edges {
        if let Some(list) = occ.get(&(*a, *b)) {
            if list.len() > 2 {
                return Err(CatalogError::BadEdgeFaceCount(list.len()));
            }
        }
    }

    let mut consumed: HashMap<(Vec3, Vec3, usize, Vec3), ()> = HashMap::new();
    let mut faces: Vec<FaceWalk> = Vec::new();
    let mut sigs: HashMap<FaceSig, ()> = HashMap::new();

    let mut starts: Vec<(Vec3, Vec3)> = occ.keys().copied().collect();
    starts.sort();
    for start in starts {
        let Some(list) = occ.get(&start) else { continue };
        if list.len() != 2 {
            continue;
        }
        for enter in 0..2 {
            let leave0 = 1 - enter;
            let key = (start.0, start.1, list[leave0].0, list[leave0].1);
            if consumed.contains_key(&key) {
                continue;
            }
            // Trace the Petrie walk: leave each edge through the face other
            // than the one we arrived by.
            let mut verts = vec![start.0, start.1];
            let mut cur = start;
            let mut arrived = enter;
            let mut closed = false;
            let mut period = None;
            let cap = 16 * patch.halo_edges.len() + 16;
            for _ in 0..cap {
                let Some(list) = occ.get(&cur) else { break };
                if list.len() != 2 {
                    break; // truncated at the patch boundary
                }
                let leave = 1 - arrived;
                consumed.insert((cur.0, cur.1, list[leave].0, list[leave].1), ());
                let next_pt = list[leave].2;
                let next = (cur.1, next_pt);
                // identify which occurrence of `next` corresponds to the face
                // we just used
                let Some(nlist) = occ.get(&next) else {
                    verts.push(next_pt);
                    break;
                };
                let used_face = (list[leave].0, list[leave].1);
                let Some(ai) = nlist
                    .iter()
                    .position(|(f, s, _)| (*f, *s) == used_face || occ_same_face(patch, (*f, *s), used_face))
                else {
                    verts.push(next_pt);
                    break;
                };
                if next == start && ai == enter {
                    closed = true;
                    break;
                }
                // Period: translate of the start state.
                let d0 = next.0 - start.0;
                if !d0.is_zero() && next.1 - start.1 == d0 {
                    let snlist = &occ[&start];
                    if snlist.len() == 2
                        && occ_shifted_face(patch, (nlist[ai].0, nlist[ai].1), (snlist[enter].0, snlist[enter].1), d0)
                    {
                        period = Some(d0);
                        verts.push(next_pt);
                        break;
                    }
                }
                verts.push(next_pt);
                cur = next;
                arrived = ai;
            }
            let walk = if closed {
                FaceWalk {
                    verts: {
                        let mut v = verts;
                        v.pop(); // drop the repeated start
                        v
                    },
                    closed: true,
                    period: None,
                }
            } else if let Some(t) = period {
                // verts currently ends exactly at start + t
                FaceWalk {
                    verts,
                    closed: false,
                    period: Some(t),
                }
            } else {
                FaceWalk {
                    verts,
                    closed: false,
                    period: None,
                }
            };
            let sig = walk.signature();
            if !sigs.contains_key(&sig) {
                sigs.insert(sig, ());
                faces.push(walk);
            }
        }
    }

    let mut spec = patch.spec.clone();
    spec.name = format!("petrial({})", spec.name);
    let closed_lens: Vec<usize> = faces.iter().filter(|f| f.closed).map(FaceWalk::edge_count).collect();
    spec.p = if faces.iter().all(|f| f.closed) && !closed_lens.is_empty() {
        let l = closed_lens[0];
        closed_lens.iter().all(|&x| x == l).then_some(l as u32)
    } else {
        None
    };
    faces.sort_by_key(|f| f.signature());
    Ok(Patch {
        spec,
        region: patch.region.clone(),
        vertices: patch.vertices.clone(),
        edges: patch.edges.clone(),
        faces,
        halo_vertices: patch.halo_vertices.clone(),
        halo_edges: patch.halo_edges.clone(),
    })
}

fn occ_same_face(patch: &Patch, a: (usize, Vec3), b: (usize, Vec3)) -> bool {
    a.0 == b.0 && {
        let f = &patch.faces[a.0];
        match f.period {
            None => a.1 == b.1,
            // shifts along the period are the same geometric face
            Some(t) => {
                let d = a.1 - b.1;
                d.is_zero() || is_integer_multiple(&d, &t)
            }
        }
    }
}

fn occ_shifted_face(patch: &Patch, a: (usize, Vec3), b: (usize, Vec3), shift: Vec3) -> bool {
    if a.0 == b.0 {
        let f = &patch.faces[a.0];
        let d = a.1 - (b.1 + shift);
        return match f.period {
            None => d.is_zero(),
            Some(t) => d.is_zero() || is_integer_multiple(&d, &t),
        };
    }
    patch.faces[a.0].translated(a.1).signature()
        == patch.faces[b.0].translated(b.1 + shift).signature()
}

fn is_integer_multiple(d: &Vec3, t: &Vec3) -> bool {
    let t2 = t.norm2();
    if t2.is_zero() {
        return false;
    }
    let k = d.dot(t) / t2;
    k.is_integer() && (*d - t.scale(k)).is_zero()
}

/// Translation subgroup T(P).
///
/// Pure apeirohedra use the table values (cross-checked against the
/// computed subgroup in tests); planar and blended polyhedra compute the
/// set of translations that preserve vertices, edges and faces of a patch.
pub fn translation_subgroup(name: &str) -> Result<Lattice3, CatalogError> {
    static CACHE: LazyLock<Mutex<HashMap<String, Arc<Lattice3>>>> =
        LazyLock::new(|| Mutex::new(HashMap::new()));
    if let Some(l) = CACHE.lock().unwrap().get(name) {
        return Ok((**l).clone());
    }
    let s = spec(name)?;
    let l = match s.kind {
        PolyhedronKind::Pure => pure_translation_table(name),
        PolyhedronKind::Finite => return Err(CatalogError::NotApeirohedron(name.to_string())),
        _ => computed_translation_subgroup(&s)?,
    };
    CACHE
        .lock()
        .unwrap()
        .insert(name.to_string(), Arc::new(l.clone()));
    Ok(l)
}

fn pure_translation_table(name: &str) -> Lattice3 {
    use crate::lattice::{make_named, FamilyParams};
    let two = surd_int(2);
    let scale = |f: LatticeFamily, s: Surd| make_named(f, FamilyParams::Scale(s)).unwrap();
    match name {
        "{4,6|4}" | "{6,4|4}" | "{inf,6}_4,4" | "{inf,4}_6,4" | "{inf,4}_*3" => {
            scale(LatticeFamily::Bcc, Surd::ONE)
        }
        "{6,6|3}" | "{inf,6}_6,3" => scale(LatticeFamily::Fcc, two),
        "{6,6}_4" | "{4,6}_6" | "{6,4}_6" => scale(LatticeFamily::Cubic, two),
        "{inf,3}^b" | "{inf,3}^a" => scale(LatticeFamily::Bcc, two),
        _ => unreachable!("pure catalog covered"),
    }
}

/// Translations mapping the patch into the polyhedron: candidate vectors are
/// vertex differences from the base; each is verified to map vertices,
/// edges and faces within the verification window onto vertices, edges and
/// faces.
pub fn computed_translation_subgroup(s: &PolyhedronSpec) -> Result<Lattice3, CatalogError> {
    let region = Region::cube(-4, 4);
    let patch = build_patch_from_spec(s, Some(&region))?;
    let vset: HashMap<Vec3, ()> = patch.halo_vertices.iter().map(|v| (*v, ())).collect();
    let eset: HashMap<(Vec3, Vec3), ()> = patch.halo_edges.iter().map(|e| (*e, ())).collect();
    let fsigs: HashMap<FaceSig, ()> = patch.faces.iter().map(|f| (f.signature(), ())).collect();

    let frame_inv = s.frame.inverse();
    let window = Region::cube(-2, 2);
    let in_window = |p: &Vec3| window.contains(&(*p * frame_inv));
    let halo = region.inflate(surd_int(PATCH_MARGIN));
    let in_halo = |p: &Vec3| halo.contains(&(*p * frame_inv));

    let mut accepted: Vec<Vec3> = Vec::new();
    for v in &patch.halo_vertices {
        let t = *v - s.base_vertex;
        if t.is_zero() || !in_window(&(s.base_vertex + t)) {
            continue;
        }
        // vertices
        let ok_v = patch
            .halo_vertices
            .iter()
            .filter(|x| in_window(x))
            .all(|x| !in_halo(&(*x + t)) || vset.contains_key(&(*x + t)));
        if !ok_v {
            continue;
        }
        // edges
        let ok_e = patch
            .halo_edges
            .iter()
            .filter(|(a, b)| in_window(a) && in_window(b))
            .all(|(a, b)| {
                let image = norm_edge((*a + t, *b + t));
                !(in_halo(&image.0) && in_halo(&image.1)) || eset.contains_key(&image)
            });
        if !ok_e {
            continue;
        }
        // faces: every face whose translate stays in the window must be a face
        let ok_f = patch.faces.iter().all(|f| {
            let moved = f.translated(t);
            if !moved.verts.iter().all(in_window) {
                return true;
            }
            fsigs.contains_key(&moved.signature())
        });
        if ok_f {
            accepted.push(t);
        }
    }
    // HNF-reduce the accepted vectors to a basis.
    let mut lcm: i128 = 1;
    for t in &accepted {
        for x in &t.0 {
            lcm = num_integer::lcm(lcm, x.rat.den());
            lcm = num_integer::lcm(lcm, x.s3.den());
        }
    }
    let rows: Vec<Vec<i128>> = accepted
        .iter()
        .map(|t| {
            t.0.iter()
                .flat_map(|x| {
                    [
                        x.rat.num() * (lcm / x.rat.den()),
                        x.s3.num() * (lcm / x.s3.den()),
                    ]
                })
                .collect()
        })
        .collect();
    let h = crate::hnf::hnf(&rows);
    let inv = crate::surd::sq(1, lcm);
    let basis: Vec<Vec3> = h
        .iter()
        .map(|r| {
            v3(
                Surd::new(crate::rat::Rat::new(r[0], 1), crate::rat::Rat::new(r[1], 1)),
                Surd::new(crate::rat::Rat::new(r[2], 1), crate::rat::Rat::new(r[3], 1)),
                Surd::new(crate::rat::Rat::new(r[4], 1), crate::rat::Rat::new(r[5], 1)),
            )
            .scale_components(inv)
        })
        .collect();
    Lattice3::new(basis).map_err(|_| CatalogError::WalkDidNotResolve)
}

trait ScaleComponents {
    fn scale_components(self, s: Surd) -> Self;
}

impl ScaleComponents for Vec3 {
    fn scale_components(self, s: Surd) -> Self {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::verify_coxeter;
    use crate::lattice::{make_named, make_named2, FamilyParams};

    fn v3i(x: i128, y: i128, z: i128) -> Vec3 {
        crate::geom::v3i(x, y, z)
    }

    #[test]
    fn catalog_has_36_names() {
        assert_eq!(names().len(), 36);
        assert!(spec("{10,5}").is_err(), "icosahedral family is out of scope");
    }

    #[test]
    fn spec_examples() {
        let oct = spec("{3,4}").unwrap();
        assert_eq!(oct.base_vertex, v3i(1, 0, 0));
        assert_eq!(oct.generators[0].apply(v3i(1, 0, 0)), v3i(0, 1, 0));
        let h = spec("{6,4|4}").unwrap();
        assert_eq!(h.base_vertex, v3(sq(1, 2), sq(1, 2), Surd::ZERO));
    }

    #[test]
    fn all_specs_satisfy_their_relations() {
        for name in names() {
            let s = spec(&name).unwrap();
            assert!(
                verify_coxeter(&s.generators, s.p, s.q),
                "{name} fails its type relations"
            );
            // Base vertex fixed by R1 and R2; base edge is genuine.
            assert_eq!(s.generators[1].apply(s.base_vertex), s.base_vertex, "{name}: R1");
            assert_eq!(s.generators[2].apply(s.base_vertex), s.base_vertex, "{name}: R2");
            assert_ne!(s.generators[0].apply(s.base_vertex), s.base_vertex, "{name}: R0");
        }
    }

    #[test]
    fn corrections_are_logged() {
        let log = corrections_log();
        assert_eq!(log.len(), 2, "{log:?}");
        assert!(log.iter().any(|l| l.contains("{4,4}#{inf}")));
        assert!(log.iter().any(|l| l.contains("{inf,6}_6,3")));
    }

    #[test]
    fn finite_counts() {
        let t = build_finite("{3,3}", Surd::ONE).unwrap();
        assert_eq!((t.vertices.len(), t.edges.len(), t.faces.len()), (4, 6, 4));
        assert!(t.faces.iter().all(|f| f.closed && f.edge_count() == 3));

        let o = build_finite("{3,4}", Surd::ONE).unwrap();
        assert_eq!((o.vertices.len(), o.edges.len(), o.faces.len()), (6, 12, 8));

        let c = build_finite("{4,3}", Surd::ONE).unwrap();
        assert_eq!((c.vertices.len(), c.edges.len(), c.faces.len()), (8, 12, 6));

        // Petrial of the cube: same skeleton, 4 skew hexagons.
        let pc = build_finite("{6,3}_4", Surd::ONE).unwrap();
        assert_eq!((pc.vertices.len(), pc.edges.len(), pc.faces.len()), (8, 12, 4));
        assert!(pc.faces.iter().all(|f| f.closed && f.edge_count() == 6));

        // The octahedron vertex set matches the published one.
        let want: Vec<Vec3> = vec![
            v3i(1, 0, 0),
            v3i(-1, 0, 0),
            v3i(0, 1, 0),
            v3i(0, -1, 0),
            v3i(0, 0, 1),
            v3i(0, 0, -1),
        ];
        for v in want {
            assert!(o.vertices.contains(&v));
        }
    }

    #[test]
    fn patch_of_square_tessellation() {
        let p = build_patch("{4,4}", &Region::square(0, 3)).unwrap();
        assert_eq!(p.vertices.len(), 16);
        // Interior vertices have degree 4.
        for v in &p.vertices {
            let deg = p
                .halo_edges
                .iter()
                .filter(|(a, b)| a == v || b == v)
                .count();
            assert_eq!(deg, 4, "vertex {v:?}");
        }
        let inner = v3i(1, 1, 0);
        let deg_region = p.edges.iter().filter(|(a, b)| *a == inner || *b == inner).count();
        assert_eq!(deg_region, 4);
    }

    #[test]
    fn patch_of_petrie_coxeter() {
        let p = build_patch("{4,6|4}", &Region::cube(0, 2)).unwrap();
        assert_eq!(p.vertices.len(), 27, "integer points of [0,2]^3");
        // Faces are squares; count those fully inside the region.
        let inside: Vec<_> = p
            .faces
            .iter()
            .filter(|f| f.closed && f.verts.iter().all(|v| Region::cube(0, 2).contains(v)))
            .collect();
        assert!(!inside.is_empty());
        assert!(inside.iter().all(|f| f.edge_count() == 4));
    }

    #[test]
    fn patch_of_triangle_blend_has_two_layers() {
        let r = Region::box3(
            [Surd::ZERO, Surd::ZERO, Surd::ZERO],
            [surd_int(2), surd_int(2), surd_int(1)],
        );
        let p = build_patch("{3,6}#{}", &r).unwrap();
        let mut zs: Vec<Surd> = p.vertices.iter().map(|v| v[2]).collect();
        zs.sort();
        zs.dedup();
        assert_eq!(zs, vec![Surd::ZERO, Surd::ONE]);
        assert_eq!(p.vertices.len(), 18);
    }

    #[test]
    fn petrial_involution_on_finite() {
        for name in ["{3,3}", "{3,4}", "{4,3}"] {
            let p = build_finite(name, Surd::ONE).unwrap();
            let pp = petrial(&p).unwrap();
            let ppp = petrial(&pp).unwrap();
            let sigs: Vec<FaceSig> = p.faces.iter().map(FaceWalk::signature).collect();
            let back: Vec<FaceSig> = ppp.faces.iter().map(FaceWalk::signature).collect();
            assert_eq!(sigs, back, "{name}");
        }
    }

    #[test]
    fn petrial_of_tetrahedron_is_4_cycles() {
        let t = build_finite("{3,3}", Surd::ONE).unwrap();
        let pt = petrial(&t).unwrap();
        assert_eq!(pt.faces.len(), 3);
        assert!(pt.faces.iter().all(|f| f.closed && f.edge_count() == 4));
        // It matches the catalog row for {4,3}_3.
        let direct = build_finite("{4,3}_3", Surd::ONE).unwrap();
        let a: Vec<FaceSig> = pt.faces.iter().map(FaceWalk::signature).collect();
        let b: Vec<FaceSig> = direct.faces.iter().map(FaceWalk::signature).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn petrial_of_petrie_coxeter_is_helical() {
        let p = build_patch("{4,6|4}", &Region::cube(-1, 3)).unwrap();
        let pp = petrial(&p).unwrap();
        assert!(pp.faces.iter().any(|f| f.period.is_some()), "zigzag faces have periods");
        assert!(pp.spec.p.is_none());
    }

    #[test]
    fn translation_subgroups() {
        // Pure rows come from the table.
        let t = translation_subgroup("{4,6|4}").unwrap();
        assert!(t.equal(&make_named(LatticeFamily::Bcc, FamilyParams::Scale(Surd::ONE)).unwrap()));
        let t = translation_subgroup("{6,6}_4").unwrap();
        assert!(t.equal(&make_named(LatticeFamily::Cubic, FamilyParams::Scale(surd_int(2))).unwrap()));
        // Planar {4,4}: the grid translations, horizontal rank 2.
        let t = translation_subgroup("{4,4}").unwrap();
        assert_eq!(t.rank(), 2);
        let grid = make_named2(LatticeFamily::Square, Surd::ONE).unwrap().lift_to_xy();
        assert!(t.equal(&grid));
    }

    #[test]
    fn computed_matches_table_for_pure_rows() {
        for name in ["{4,6|4}", "{6,6|3}", "{6,6}_4", "{inf,3}^b", "{inf,4}_*3"] {
            let s = spec(name).unwrap();
            let computed = computed_translation_subgroup(&s).unwrap();
            let table = pure_translation_table(name);
            assert!(computed.equal(&table), "{name}");
        }
    }

    #[test]
    fn blended_translation_subgroups() {
        // {4,4}#{}: the two-layer slab keeps only the chequerboard
        // translations, rank 2.
        let t = translation_subgroup("{4,4}#{}").unwrap();
        assert_eq!(t.rank(), 2);
        let check = Lattice3::new(vec![v3i(1, 1, 0), v3i(1, -1, 0)]).unwrap();
        assert!(t.equal(&check));
        // {4,4}#{inf}: rank 3.
        let t = translation_subgroup("{4,4}#{inf}").unwrap();
        assert_eq!(t.rank(), 3, "basis: {:?}", t.basis());
    }

    #[test]
    fn patch_growth_is_monotone() {
        let small = build_patch("{4,4}", &Region::square(0, 2)).unwrap();
        let big = build_patch("{4,4}", &Region::square(-1, 3)).unwrap();
        for v in &small.vertices {
            assert!(big.vertices.contains(v));
        }
        for e in &small.edges {
            assert!(big.edges.contains(e));
        }
    }

    #[test]
    fn translations_map_patch_into_polyhedron() {
        let p = build_patch("{4,6|4}", &Region::cube(-2, 4)).unwrap();
        let t_lat = translation_subgroup("{4,6|4}").unwrap();
        let vset: HashMap<Vec3, ()> = p.halo_vertices.iter().map(|v| (*v, ())).collect();
        let inner = Region::cube(0, 2);
        for t in t_lat.basis() {
            for v in p.halo_vertices.iter().filter(|v| inner.contains(v)) {
                assert!(vset.contains_key(&(*v + *t)), "vertex {v:?} + {t:?}");
            }
        }
    }
}
