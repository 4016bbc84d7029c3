//! The parameter tables for torus quotients: interval conditions for finite
//! polyhedra, congruence conditions for pure apeirohedra, admissible scales
//! for planar ones, and the blended identification tables over
//! (p, q, r, s, g) — together with brute-force oracle scans and the
//! orientation calibration the blended tables require.

use rayon::prelude::*;

use crate::catalog::{self, PolyhedronKind};
use crate::lattice::{make_named, FamilyParams, LatticeFamily};
use crate::rat::{rat_int, Rat};
use crate::surd::Surd;
use crate::torus::{self, Counts, QuotientOptions, RejectReason};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("no table covers `{0}` with family `{1}`")]
    NotCovered(String, String),
    #[error("parameters must be positive rationals")]
    BadParams,
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
}

fn is_int(a: Rat) -> Option<i128> {
    a.as_integer()
}

/// a in 2N = {2, 4, ...}
fn two_nat(a: Rat) -> bool {
    matches!(is_int(a), Some(n) if n >= 2 && n % 2 == 0)
}

/// a in 2(N \ {1}) = {4, 6, ...}
fn two_nat_ge2(a: Rat) -> bool {
    matches!(is_int(a), Some(n) if n >= 4 && n % 2 == 0)
}

fn nat(a: Rat) -> bool {
    matches!(is_int(a), Some(n) if n >= 1)
}

fn nat_ge2(a: Rat) -> bool {
    matches!(is_int(a), Some(n) if n >= 2)
}

fn congruent_pm4_mod12(x: i128) -> bool {
    let m = x.rem_euclid(12);
    m == 4 || m == 8
}

/// a = p/3 with p = +-4 (mod 12)
fn thirds(a: Rat) -> bool {
    matches!(is_int(a * rat_int(3)), Some(p) if congruent_pm4_mod12(p))
}

/// a = p/6 with p = +-4 (mod 12)
fn sixths(a: Rat) -> bool {
    matches!(is_int(a * rat_int(6)), Some(p) if congruent_pm4_mod12(p))
}

/// Finite-polyhedron skeleton rows: Petrials share the values.
fn finite_row_of(name: &str) -> Option<&'static str> {
    match name {
        "{3,3}" | "{4,3}_3" => Some("{3,3}"),
        "{3,4}" | "{6,4}_3" => Some("{3,4}"),
        "{4,3}" | "{6,3}_4" => Some("{4,3}"),
        _ => None,
    }
}

fn finite_predicate(name: &str, family: LatticeFamily, a: Rat) -> Option<bool> {
    use LatticeFamily::*;
    let row = finite_row_of(name)?;
    let one = rat_int(1);
    let two = rat_int(2);
    let half = Rat::new(1, 2);
    Some(match (row, family) {
        ("{3,3}", Bcc) => one < a && a <= two,
        ("{3,4}", Cubic) => one < a && a < two,
        ("{3,4}", Bcc) => half < a && a < one,
        ("{4,3}", Fcc) | ("{4,3}", Bcc) => one < a && a < two,
        (_, Cubic | Fcc | Bcc) => false,
        _ => return None,
    })
}

fn pure_predicate(name: &str, family: LatticeFamily, a: Rat) -> Option<bool> {
    use LatticeFamily::*;
    let col = match family {
        Cubic => 0,
        Fcc => 1,
        Bcc => 2,
        _ => return None,
    };
    let std3 = [two_nat(a), two_nat(a), nat(a)];
    let screw = [
        two_nat(a) || thirds(a),
        two_nat(a) || thirds(a),
        nat(a) || sixths(a),
    ];
    let row = match name {
        "{4,6|4}" | "{inf,6}_4,4" | "{4,6}_6" | "{inf,6}_6,3" => std3,
        "{6,4|4}" | "{inf,4}_6,4" | "{inf,3}^b" | "{inf,3}^a" => screw,
        "{6,6|3}" => [two_nat_ge2(a), two_nat_ge2(a), nat_ge2(a)],
        "{6,6}_4" => [two_nat_ge2(a), two_nat(a), nat(a)],
        "{6,4}_6" => [two_nat(a), nat_ge2(a), nat_ge2(a)],
        "{inf,4}_*3" => [two_nat(a), nat_ge2(a), nat(a)],
        _ => return None,
    };
    Some(row[col])
}

fn planar_predicate(name: &str, family: LatticeFamily, a: Rat) -> Option<bool> {
    use LatticeFamily::*;
    let two_a = a * rat_int(2);
    let three_a = a * rat_int(3);
    let row = match name {
        "{4,4}" | "{inf,4}_4" => match family {
            Cubic | Bcc => nat_ge2(a),
            Fcc | SquareCentredE3 => matches!(is_int(two_a), Some(n) if n >= 3),
            _ => return None,
        },
        "{3,6}" | "{inf,6}_3" => match family {
            TriE3 => nat_ge2(a),
            TriCentredE3 => matches!(is_int(three_a), Some(n) if n >= 2),
            _ => return None,
        },
        "{6,3}" | "{inf,3}_6" => match family {
            TriE3 => matches!(is_int(two_a), Some(n) if n >= 3),
            TriCentredE3 => matches!(is_int(two_a), Some(n) if n >= 1),
            _ => return None,
        },
        _ => return None,
    };
    Some(row)
}

/// Lowest-terms data for a blended parameter pair.
#[derive(Clone, Copy, Debug)]
pub struct BlendedData {
    pub p: i128,
    pub q: i128,
    pub r: i128,
    pub s: i128,
    pub g: i128,
}

impl BlendedData {
    pub fn new(a: Rat, b: Rat) -> Option<BlendedData> {
        if a.signum() <= 0 || b.signum() <= 0 {
            return None;
        }
        let (p, q) = (a.num(), a.den());
        let (r, s) = (b.num(), b.den());
        Some(BlendedData {
            p,
            q,
            r,
            s,
            g: num_integer::gcd(q, s),
        })
    }
}

fn odd(x: i128) -> bool {
    x % 2 != 0
}

fn even(x: i128) -> bool {
    x % 2 == 0
}

fn div(k: i128, x: i128) -> bool {
    x % k == 0
}

/// The identification bullets of the four blended tables, transcribed
/// clause by clause. `true` means the table lists an identification for
/// these parameters.
pub fn blended_bullets(name: &str, family: LatticeFamily, d: &BlendedData) -> Option<bool> {
    use LatticeFamily::*;
    let BlendedData { p, q, r, s, g } = *d;
    let skeleton = skeleton_name(name);
    let hit = match skeleton {
        "{4,4}#{}" => match family {
            Cubic => {
                (odd(p) && odd(r) && r <= g)
                    || (odd(p) && even(r) && r < g)
                    || (even(p) && odd(r) && 2 * r < g)
                    || (even(p) && even(r) && r < g)
            }
            Fcc => {
                (odd(p) && odd(r) && even(q / g) && 2 * r <= g)
                    || (odd(p) && odd(r) && odd(q / g) && odd(s / g) && r <= g)
                    || (odd(p) && odd(r) && odd(q / g) && even(s / g) && odd(g) && r <= g)
                    || (odd(p) && odd(r) && odd(q / g) && even(s / g) && even(g) && 2 * r <= g)
                    || (odd(p) && even(r) && 2 * r < g)
                    || (even(p) && odd(r) && 2 * r < g)
                    || (even(p) && even(r) && r < g)
            }
            Bcc => {
                (odd(p) && odd(r) && 2 * r <= g)
                    || (odd(p) && even(r) && even(q) && 2 * r < g)
                    || (odd(p) && even(r) && odd(q) && r < g)
                    || (even(p) && odd(r) && 2 * r < g)
                    || (even(p) && even(r) && 2 * r < g)
            }
            SquareCentredE3 => {
                (odd(p) && odd(r) && odd(q / g) && 2 * r <= g)
                    || (odd(p) && odd(r) && even(q / g) && r <= g)
                    || (odd(p) && even(r) && r < g)
                    || (even(p) && odd(r) && 2 * r < g)
                    || (even(p) && even(r) && r < g)
            }
            _ => return None,
        },
        "{4,4}#{inf}" => {
            let steep = congruent_pm4_mod12(r) && even(p);
            match family {
                Cubic => {
                    (g == 1 && odd(p) && odd(r)) || (g == 3 && !steep) || (g != 1 && g != 3)
                }
                Fcc => {
                    let m2 = r.rem_euclid(12);
                    let steep2 = (m2 == 2 || m2 == 10) && odd(p) && odd(q);
                    (g == 1 && odd(p) && odd(r) && odd(q) && odd(s))
                        || (g == 3 && !(steep || steep2))
                        || (g != 1 && g != 3)
                }
                Bcc => (g == 3 && !steep) || (g != 1 && g != 3),
                SquareCentredE3 => {
                    (g == 1 && odd(p) && odd(r) && even(q)) || (g == 3 && !steep) || (g != 1 && g != 3)
                }
                _ => return None,
            }
        }
        "{3,6}#{inf}" => match family {
            TriE3 => g != 1,
            TriCentredE3 => g != 1 && g != 3,
            TriCentredU1E3 => {
                (g == 3 && ((p * s / 3) - (r * q / 3)).rem_euclid(3) == 0) || (g != 1 && g != 3)
            }
            TriCentredU2E3 => {
                (g == 3 && ((p * s / 3) + (r * q / 3)).rem_euclid(3) == 0) || (g != 1 && g != 3)
            }
            _ => return None,
        },
        "{6,3}#{}" => match family {
            TriE3 | TriCentredE3 => 3 * r <= g,
            ThreeTriSumE3 | ThreeTriDiffE3 => {
                let sign = if family == ThreeTriSumE3 { 1 } else { -1 };
                let cong = ((r * q / g) - sign * (s * p / g)).rem_euclid(3) == 0;
                (!div(3, q) && 3 * r < g)
                    || (div(3, q / g) && 9 * r <= g)
                    || (div(3, q) && !div(3, q / g) && div(3, s / g) && 9 * r <= g)
                    || (div(3, q) && !div(3, q / g) && !div(3, s / g) && cong && 3 * r <= g)
                    || (div(3, q) && !div(3, q / g) && !div(3, s / g) && !cong && 9 * r <= g)
            }
            _ => return None,
        },
        "{3,6}#{}" => match family {
            TriE3 => r < g,
            TriCentredE3 => {
                (!div(3, q) && r < g)
                    || (div(3, q / g) && r < g)
                    || (!div(3, q / g) && div(3, g) && 3 * r < g)
            }
            _ => return None,
        },
        "{6,3}#{inf}" => match family {
            TriE3 | TriCentredE3 => {
                (g == 1 && !div(3, r) && odd(r))
                    || (g == 2 && !div(3, p) && !div(4, r))
                    || (g == 5 && !div(3, p))
                    || (g == 5 && odd(r))
                    || !(g == 1 || g == 2 || g == 5)
            }
            _ => return None,
        },
        _ => return None,
    };
    Some(hit)
}

fn skeleton_name(name: &str) -> &'static str {
    match name {
        "{4,4}#{}" | "{inf,4}_4#{}" => "{4,4}#{}",
        "{4,4}#{inf}" | "{inf,4}_4#{inf}" => "{4,4}#{inf}",
        "{3,6}#{inf}" | "{inf,6}_3#{inf}" => "{3,6}#{inf}",
        "{6,3}#{}" | "{inf,3}_6#{}" => "{6,3}#{}",
        "{3,6}#{}" | "{inf,6}_3#{}" => "{3,6}#{}",
        "{6,3}#{inf}" | "{inf,3}_6#{inf}" => "{6,3}#{inf}",
        _ => "",
    }
}

/// Per-polyhedron prose exclusions of the blended subsection, separate
/// conjuncts tagged by their source sentence. Returns the tag when the
/// parameters are excluded.
pub fn blended_prose_exclusion(
    name: &str,
    family: LatticeFamily,
    d: &BlendedData,
) -> Option<&'static str> {
    use LatticeFamily::*;
    let BlendedData { p, q, r, .. } = *d;
    match name {
        "{4,4}#{}" => {
            let hit = match family {
                Cubic | Fcc | SquareCentredE3 => p == 1,
                Bcc => p == 1 && even(q),
                _ => false,
            };
            hit.then_some("(1,1,0) in L breaks the diamond condition")
        }
        "{4,4}#{inf}" => {
            let hit = match family {
                Cubic | Fcc | SquareCentredE3 => p == 1,
                Bcc => p == 1 && even(q),
                _ => false,
            };
            hit.then_some("(1,1,2r) in L identifies two vertices of a face")
        }
        "{3,6}#{inf}" => {
            let hit = match family {
                TriE3 => p == 1 && !div(3, r),
                _ => p == 1 && !div(3, r) && div(3, q),
            };
            hit.then_some("(1,0,3k+1) in L breaks the diamond condition")
        }
        "{inf,6}_3#{inf}" => {
            (p == 1 && odd(r)).then_some("(1,(3r-1)/2,3r) in L moves a face off itself")
        }
        "{6,3}#{}" => {
            let hit = matches!(family, TriE3 | ThreeTriSumE3 | ThreeTriDiffE3) && p == 1;
            hit.then_some("p = 1 is forbidden for these lattices")
        }
        "{3,6}#{}" => {
            (family == TriE3 && p == 1).then_some("p = 1 identifies vertices of a hexagon")
        }
        "{6,3}#{inf}" => {
            (family == TriE3 && p == 1).then_some("(1,0,2r) in L moves a face off itself")
        }
        _ => None,
    }
}

/// Orientation of the blended tables: whether the bullet conditions list the
/// forbidden (identification) parameters or the admissible ones. The prose
/// exclusions always forbid.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    BulletsForbid,
    BulletsAdmit,
}

impl Orientation {
    pub fn label(&self) -> &'static str {
        match self {
            Orientation::BulletsForbid => "bullets-list-forbidden-parameters",
            Orientation::BulletsAdmit => "bullets-list-admissible-parameters",
        }
    }
}

/// The orientation resolved by oracle calibration (see `calibrate_blended`).
pub const RESOLVED_ORIENTATION: Orientation = Orientation::BulletsForbid;

pub fn blended_predicate_oriented(
    name: &str,
    family: LatticeFamily,
    a: Rat,
    b: Rat,
    orientation: Orientation,
) -> Option<bool> {
    let d = BlendedData::new(a, b)?;
    let bullets = blended_bullets(name, family, &d)?;
    let prose = blended_prose_exclusion(name, family, &d).is_some();
    Some(match orientation {
        Orientation::BulletsForbid => !bullets && !prose,
        Orientation::BulletsAdmit => bullets && !prose,
    })
}

/// The table prediction for a (polyhedron, family, params) triple.
pub fn table_predicate(name: &str, family: LatticeFamily, params: &[Rat]) -> Result<bool, ParamError> {
    let spec = catalog::spec(name)?;
    if params.iter().any(|x| x.signum() <= 0) {
        return Err(ParamError::BadParams);
    }
    let not_covered = || ParamError::NotCovered(name.to_string(), family.id().to_string());
    match spec.kind {
        PolyhedronKind::Finite => {
            finite_predicate(name, family, params[0]).ok_or_else(not_covered)
        }
        PolyhedronKind::Pure => pure_predicate(name, family, params[0]).ok_or_else(not_covered),
        PolyhedronKind::Planar => {
            planar_predicate(name, family, params[0]).ok_or_else(not_covered)
        }
        _ => {
            if params.len() != 2 {
                return Err(ParamError::BadParams);
            }
            blended_predicate_oriented(name, family, params[0], params[1], RESOLVED_ORIENTATION)
                .ok_or_else(not_covered)
        }
    }
}

/// One verification job result.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub polyhedron: String,
    pub family: LatticeFamily,
    pub params: Vec<Rat>,
    pub accepted: bool,
    pub reason: Option<RejectReason>,
    pub counts: Counts,
    pub table_prediction: bool,
    pub discrepancy: bool,
}

/// Build the lattice instance for a scan job.
pub fn lattice_for(
    name: &str,
    family: LatticeFamily,
    params: &[Rat],
) -> Result<crate::lattice::Lattice3, ParamError> {
    let fp = match params {
        [a] => FamilyParams::Scale(Surd::from_rat(*a)),
        [a, b] => FamilyParams::Aab(Surd::from_rat(*a), Surd::from_rat(*b)),
        _ => return Err(ParamError::BadParams),
    };
    let _ = name;
    make_named(family, fp).map_err(|_| ParamError::BadParams)
}

/// Run the oracle (quotient + regularity) over a parameter grid and compare
/// against the table predicate. Jobs are independent and run in parallel;
/// results are merged in sorted order.
pub fn scan_parameters(
    name: &str,
    family: LatticeFamily,
    grid: &[Vec<Rat>],
    opts: &QuotientOptions,
) -> Result<Vec<ScanRow>, ParamError> {
    let mut rows: Vec<ScanRow> = grid
        .par_iter()
        .map(|params| -> Result<ScanRow, ParamError> {
            let lattice = lattice_for(name, family, params)?;
            let predicted = table_predicate(name, family, params)?;
            let outcome = torus::quotient(name, &lattice, opts).map_err(|e| match e {
                torus::QuotientError::Catalog(c) => ParamError::Catalog(c),
                _ => ParamError::NotCovered(name.into(), family.id().into()),
            })?;
            Ok(ScanRow {
                polyhedron: name.to_string(),
                family,
                params: params.clone(),
                accepted: outcome.verdict.accepted,
                reason: outcome.verdict.reason,
                counts: outcome.verdict.counts,
                table_prediction: predicted,
                discrepancy: outcome.verdict.accepted != predicted,
            })
        })
        .collect::<Result<_, _>>()?;
    rows.sort_by(|a, b| a.params.cmp(&b.params));
    Ok(rows)
}

/// Grid of criterion-style finite scales: {k/8 : 1 <= k <= 24}.
pub fn finite_grid() -> Vec<Vec<Rat>> {
    (1..=24).map(|k| vec![Rat::new(k, 8)]).collect()
}

/// {k, k/2, k/3 : k <= 12, lowest terms}.
pub fn pure_grid() -> Vec<Vec<Rat>> {
    let mut v: Vec<Rat> = Vec::new();
    for k in 1..=12i128 {
        v.push(rat_int(k));
        if k % 2 != 0 {
            v.push(Rat::new(k, 2));
        }
        if k % 3 != 0 {
            v.push(Rat::new(k, 3));
        }
    }
    v.sort();
    v.into_iter().map(|a| vec![a]).collect()
}

/// Desk-scale planar grid: scales with denominators 1..3 up to 4, a few
/// heights b (the tables put no condition on b).
pub fn planar_grid() -> Vec<Vec<Rat>> {
    let mut scales: Vec<Rat> = Vec::new();
    for den in 1..=3i128 {
        for num in 1..=4 * den {
            let r = Rat::new(num, den);
            if r.den() == den {
                scales.push(r);
            }
        }
    }
    scales.sort();
    scales.dedup();
    let heights = [rat_int(1), Rat::new(1, 2), rat_int(2)];
    let mut out = Vec::new();
    for a in &scales {
        for b in &heights {
            out.push(vec![*a, *b]);
        }
    }
    out
}

/// All rationals p/q with value <= max_value and denominator <= max_den, in
/// lowest terms.
pub fn rational_grid(max_value: i128, max_den: i128) -> Vec<Rat> {
    let mut v = Vec::new();
    for den in 1..=max_den {
        for num in 1..=max_value * den {
            let r = Rat::new(num, den);
            if r.den() == den {
                v.push(r);
            }
        }
    }
    v.sort();
    v.dedup();
    v
}

/// The full blended calibration grid of (a, b) pairs.
pub fn blended_grid(max_value: i128, max_den: i128) -> Vec<Vec<Rat>> {
    let vals = rational_grid(max_value, max_den);
    let mut out = Vec::with_capacity(vals.len() * vals.len());
    for a in &vals {
        for b in &vals {
            out.push(vec![*a, *b]);
        }
    }
    out
}

/// Table membership for the verify-table command.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableId {
    Finite,
    Pure,
    Planar,
    Blended,
}

impl TableId {
    pub fn parse(s: &str) -> Option<TableId> {
        Some(match s {
            "finite" => TableId::Finite,
            "pure" => TableId::Pure,
            "planar" => TableId::Planar,
            "blended" => TableId::Blended,
            _ => return None,
        })
    }
}

/// (polyhedron, family) cells of each table.
pub fn table_rows(table: TableId) -> Vec<(String, LatticeFamily)> {
    use LatticeFamily::*;
    let mut out = Vec::new();
    match table {
        TableId::Finite => {
            for name in ["{3,3}", "{3,4}", "{4,3}"] {
                for f in [Cubic, Fcc, Bcc] {
                    out.push((name.to_string(), f));
                }
            }
        }
        TableId::Pure => {
            for name in catalog::names() {
                let s = catalog::spec(&name).unwrap();
                if s.kind == PolyhedronKind::Pure {
                    for f in [Cubic, Fcc, Bcc] {
                        out.push((name.clone(), f));
                    }
                }
            }
        }
        TableId::Planar => {
            for name in catalog::names() {
                let s = catalog::spec(&name).unwrap();
                if s.kind == PolyhedronKind::Planar {
                    for f in s.lattice_families().0 {
                        out.push((name.clone(), f));
                    }
                }
            }
        }
        TableId::Blended => {
            for name in catalog::names() {
                let s = catalog::spec(&name).unwrap();
                if s.kind.is_blended() {
                    for f in s.lattice_families().0 {
                        out.push((name.clone(), f));
                    }
                }
            }
        }
    }
    out
}

/// The four blended tables by skeleton, for calibration grouping.
pub fn blended_table_of(name: &str) -> Option<u8> {
    match skeleton_name(name) {
        "{4,4}#{}" | "{4,4}#{inf}" => Some(1),
        "{3,6}#{inf}" => Some(2),
        "{6,3}#{}" => Some(3),
        "{3,6}#{}" | "{6,3}#{inf}" => Some(4),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct Calibration {
    pub table: u8,
    pub orientation: Orientation,
    /// Rows where neither orientation matches, with the clause location.
    pub unresolved: Vec<String>,
}

/// Calibrate the orientation of one blended table against oracle rows:
/// counts mismatches under both readings and picks the exact one.
pub fn calibrate_blended(table: u8, rows: &[ScanRow]) -> Calibration {
    let mut mismatch_forbid = 0usize;
    let mut mismatch_admit = 0usize;
    let mut unresolved = Vec::new();
    for row in rows {
        if blended_table_of(&row.polyhedron) != Some(table) {
            continue;
        }
        let a = row.params[0];
        let b = row.params[1];
        let forbid =
            blended_predicate_oriented(&row.polyhedron, row.family, a, b, Orientation::BulletsForbid)
                .unwrap_or(false);
        let admit =
            blended_predicate_oriented(&row.polyhedron, row.family, a, b, Orientation::BulletsAdmit)
                .unwrap_or(false);
        if forbid != row.accepted {
            mismatch_forbid += 1;
        }
        if admit != row.accepted {
            mismatch_admit += 1;
        }
        if forbid != row.accepted && admit != row.accepted {
            let d = BlendedData::new(a, b).unwrap();
            unresolved.push(format!(
                "{} x {} at a={} b={}: oracle {} (g={}, bullets fire: {:?}, prose: {:?})",
                row.polyhedron,
                row.family.id(),
                a,
                b,
                if row.accepted { "accepts" } else { "rejects" },
                d.g,
                blended_bullets(&row.polyhedron, row.family, &d),
                blended_prose_exclusion(&row.polyhedron, row.family, &d),
            ));
        }
    }
    let orientation = if mismatch_forbid <= mismatch_admit {
        Orientation::BulletsForbid
    } else {
        Orientation::BulletsAdmit
    };
    Calibration {
        table,
        orientation,
        unresolved,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_table_examples() {
        assert!(table_predicate("{3,3}", LatticeFamily::Bcc, &[rat_int(2)]).unwrap());
        assert!(!table_predicate("{3,3}", LatticeFamily::Cubic, &[Rat::new(3, 2)]).unwrap());
        assert!(table_predicate("{3,4}", LatticeFamily::Cubic, &[Rat::new(3, 2)]).unwrap());
        assert!(!table_predicate("{3,4}", LatticeFamily::Cubic, &[rat_int(2)]).unwrap());
        // Petrials share the skeleton rows.
        assert!(table_predicate("{6,3}_4", LatticeFamily::Fcc, &[Rat::new(3, 2)]).unwrap());
    }

    #[test]
    fn pure_table_examples() {
        assert!(table_predicate("{6,4|4}", LatticeFamily::Cubic, &[Rat::new(4, 3)]).unwrap());
        assert!(!table_predicate("{6,4|4}", LatticeFamily::Cubic, &[Rat::new(2, 3)]).unwrap());
        assert!(table_predicate("{6,4|4}", LatticeFamily::Bcc, &[Rat::new(2, 3)]).unwrap());
        assert!(table_predicate("{6,6|3}", LatticeFamily::Bcc, &[rat_int(2)]).unwrap());
        assert!(!table_predicate("{6,6|3}", LatticeFamily::Bcc, &[rat_int(1)]).unwrap());
        assert!(table_predicate("{4,6|4}", LatticeFamily::Bcc, &[rat_int(1)]).unwrap());
    }

    #[test]
    fn planar_table_examples() {
        assert!(!table_predicate("{4,4}", LatticeFamily::SquareCentredE3, &[Rat::new(1, 2), rat_int(1)]).unwrap());
        assert!(table_predicate("{4,4}", LatticeFamily::SquareCentredE3, &[Rat::new(3, 2), rat_int(1)]).unwrap());
        assert!(table_predicate("{3,6}", LatticeFamily::TriCentredE3, &[Rat::new(2, 3), rat_int(1)]).unwrap());
        assert!(!table_predicate("{3,6}", LatticeFamily::TriCentredE3, &[Rat::new(1, 3), rat_int(1)]).unwrap());
    }

    #[test]
    fn blended_prose_clauses() {
        use LatticeFamily::*;
        let d = BlendedData::new(rat_int(1), rat_int(1)).unwrap();
        assert!(blended_prose_exclusion("{4,4}#{}", Cubic, &d).is_some());
        assert!(blended_prose_exclusion("{inf,4}_4#{}", Cubic, &d).is_none());
        let d2 = BlendedData::new(rat_int(2), rat_int(1)).unwrap();
        assert!(blended_prose_exclusion("{4,4}#{}", Cubic, &d2).is_none());
    }

    #[test]
    fn grids_are_lowest_terms() {
        for row in pure_grid() {
            let a = row[0];
            assert!(num_integer::gcd(a.num(), a.den()) == 1);
        }
        assert_eq!(rational_grid(4, 6).len(), 48);
    }
}
