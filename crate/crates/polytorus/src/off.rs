//! OFF mesh export. Exact coordinates are rendered as 12-digit decimal
//! approximations (export only; nothing here feeds back into decisions).
//! Truncated or infinite walks, and quotient edges split at the fundamental
//! cell boundary, go to a JSON sidecar next to the main file.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::catalog::Patch;
use crate::geom::Vec3;
use crate::groups::TorusCtx;
use crate::surd::{surd_int, Surd};
use crate::torus::QuotientPolyhedron;

fn fmt_coord(x: &Surd) -> String {
    format!("{:.12}", x.to_f64())
}

fn fmt_point(p: &Vec3) -> String {
    format!("{} {} {}", fmt_coord(&p[0]), fmt_coord(&p[1]), fmt_coord(&p[2]))
}

#[derive(Serialize)]
struct PatchSidecar {
    /// Open or truncated face walks as polylines of [x, y, z] triples.
    polylines: Vec<Vec<[f64; 3]>>,
}

/// Write a patch: vertices and complete faces to OFF, everything else as
/// polylines to `<path>.sidecar.json`.
pub fn write_patch_off(patch: &Patch, path: &Path) -> std::io::Result<()> {
    let index: HashMap<Vec3, usize> = patch
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i))
        .collect();
    let mut faces = Vec::new();
    let mut polylines = Vec::new();
    for f in &patch.faces {
        let idx: Option<Vec<usize>> = f.verts.iter().map(|v| index.get(v).copied()).collect();
        match (f.closed, idx) {
            (true, Some(ids)) => faces.push(ids),
            _ => polylines.push(f.verts.iter().map(|v| v.to_f64()).collect()),
        }
    }
    let mut out = std::fs::File::create(path)?;
    writeln!(out, "OFF")?;
    writeln!(out, "{} {} {}", patch.vertices.len(), faces.len(), patch.edges.len())?;
    for v in &patch.vertices {
        writeln!(out, "{}", fmt_point(v))?;
    }
    for f in &faces {
        let ids: Vec<String> = f.iter().map(usize::to_string).collect();
        writeln!(out, "{} {}", f.len(), ids.join(" "))?;
    }
    let sidecar = PatchSidecar { polylines };
    std::fs::write(
        sidecar_path(path),
        serde_json::to_string_pretty(&sidecar).unwrap(),
    )?;
    Ok(())
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(".sidecar.json");
    s.into()
}

#[derive(Serialize)]
struct QuotientSidecar {
    /// Edges that cross the fundamental-cell boundary, as fragment chains;
    /// consecutive fragments are identified across the boundary.
    split_edges: Vec<SplitEdge>,
    /// Faces with at least one split edge, as polyline fragments.
    boundary_faces: Vec<Vec<[f64; 3]>>,
}

#[derive(Serialize)]
struct SplitEdge {
    edge: usize,
    fragments: Vec<[[f64; 3]; 2]>,
}

/// Fragments of the segment `root -> root+dir` clipped to the fundamental
/// cell: each fragment starts at a canonical representative.
fn split_to_cell(root: &Vec3, dir: &Vec3, ctx: &TorusCtx) -> Vec<(Vec3, Vec3)> {
    // Crossing parameters: where any lattice coordinate of root + s dir hits
    // an integer.
    let c0 = ctx.coords(*root);
    let cd = ctx.coords(*dir);
    let mut cuts: Vec<Surd> = vec![Surd::ZERO, Surd::ONE];
    for i in 0..3 {
        if cd[i].is_zero() {
            continue;
        }
        // integers n with s = (n - c0_i)/cd_i inside (0,1)
        let lo = (c0[i].min(c0[i] + cd[i])).floor();
        let hi = (c0[i].max(c0[i] + cd[i])).floor() + 1;
        for n in lo..=hi {
            let s = (surd_int(n) - c0[i]) / cd[i];
            if s.signum() > 0 && (s - Surd::ONE).signum() < 0 {
                cuts.push(s);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut frags = Vec::new();
    for w in cuts.windows(2) {
        let (s0, s1) = (w[0], w[1]);
        let start = *root + dir.scale(s0);
        let canon_start = ctx.reduce_point(start);
        frags.push((canon_start, dir.scale(s1 - s0)));
    }
    frags
}

/// Write the fundamental-cell embedding of a quotient polyhedron: canonical
/// vertices, unsplit faces as index lists, split edges and boundary faces in
/// the sidecar.
pub fn write_quotient_off(qp: &QuotientPolyhedron, path: &Path) -> std::io::Result<()> {
    let ctx = TorusCtx::new(qp.lattice.clone()).expect("full-rank lattice");
    let index: HashMap<Vec3, usize> = qp
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i))
        .collect();

    let mut split_edges = Vec::new();
    let mut edge_splits: Vec<bool> = Vec::with_capacity(qp.edges.len());
    for (i, (root, dir)) in qp.edges.iter().enumerate() {
        let frags = split_to_cell(root, dir, &ctx);
        let is_split = frags.len() > 1;
        edge_splits.push(is_split);
        if is_split {
            split_edges.push(SplitEdge {
                edge: i,
                fragments: frags
                    .iter()
                    .map(|(a, d)| [a.to_f64(), (*a + *d).to_f64()])
                    .collect(),
            });
        }
    }

    let mut faces = Vec::new();
    let mut boundary_faces = Vec::new();
    for cycle in &qp.faces {
        // A face is exportable as an index list when every step stays at a
        // canonical vertex (no boundary crossing).
        let clean: Option<Vec<usize>> = cycle
            .iter()
            .map(|(root, dir)| {
                let stays = ctx.reduce_point(*root + *dir) == *root + *dir || {
                    // endpoint may be exactly another canonical vertex
                    index.contains_key(&(*root + *dir))
                };
                if stays {
                    index.get(root).copied()
                } else {
                    None
                }
            })
            .collect();
        match clean {
            Some(ids) => faces.push(ids),
            None => {
                let pts: Vec<[f64; 3]> = cycle
                    .iter()
                    .flat_map(|(root, dir)| {
                        split_to_cell(root, dir, &ctx)
                            .into_iter()
                            .flat_map(|(a, d)| [a.to_f64(), (a + d).to_f64()])
                    })
                    .collect();
                boundary_faces.push(pts);
            }
        }
    }

    let mut out = std::fs::File::create(path)?;
    writeln!(out, "OFF")?;
    writeln!(out, "{} {} {}", qp.vertices.len(), faces.len(), qp.edges.len())?;
    for v in &qp.vertices {
        writeln!(out, "{}", fmt_point(v))?;
    }
    for f in &faces {
        let ids: Vec<String> = f.iter().map(usize::to_string).collect();
        writeln!(out, "{} {}", f.len(), ids.join(" "))?;
    }
    let sidecar = QuotientSidecar {
        split_edges,
        boundary_faces,
    };
    std::fs::write(
        sidecar_path(path),
        serde_json::to_string_pretty(&sidecar).unwrap(),
    )?;
    Ok(())
}
