//! Combinatorial surfaces and ideal triangulations of their punctured
//! models.
//!
//! A compact orientable surface with boundary is stored as a genus plus an
//! ordered list of boundary labels; each boundary component is treated as a
//! puncture of the ideal triangulation.  Triangles are oriented
//! counterclockwise with corners `0,1,2`; side `i` is opposite corner `i`
//! and runs from corner `i+1` to corner `i+2`.  The gluing is a fixed-point
//! free involution on (triangle, side) slots, orientation-reversing by
//! construction.

use crate::error::{ArcGraphError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Signature of a compact orientable surface with boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: u32,
    pub boundary: Vec<String>,
}

impl SurfaceSig {
    /// Validates and builds a surface signature.
    pub fn new(genus: u32, boundary: Vec<String>) -> Result<Self> {
        if boundary.is_empty() {
            return Err(ArcGraphError::EmptyBoundary);
        }
        let mut seen = std::collections::BTreeSet::new();
        for label in &boundary {
            if !seen.insert(label.clone()) {
                return Err(ArcGraphError::DuplicateLabel(label.clone()));
            }
        }
        Ok(SurfaceSig { genus, boundary })
    }

    pub fn euler_char(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary.len() as i64
    }

    pub fn label_index(&self, label: &str) -> Result<u8> {
        self.boundary
            .iter()
            .position(|l| l == label)
            .map(|i| i as u8)
            .ok_or_else(|| ArcGraphError::UnknownLabel(label.to_string()))
    }
}

/// A (triangle, side) slot.  Side `i` is opposite corner `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Side {
    pub tri: u32,
    pub side: u8,
}

/// A (triangle, corner) slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub tri: u32,
    pub corner: u8,
}

impl Side {
    pub fn new(tri: u32, side: u8) -> Self {
        Side { tri, side }
    }
    pub fn slot(&self) -> usize {
        self.tri as usize * 3 + self.side as usize
    }
    pub fn from_slot(slot: usize) -> Self {
        Side {
            tri: (slot / 3) as u32,
            side: (slot % 3) as u8,
        }
    }
    /// Corner at the start of this side (ccw): corner `side+1`.
    pub fn lo_corner(&self) -> Corner {
        Corner {
            tri: self.tri,
            corner: (self.side + 1) % 3,
        }
    }
    /// Corner at the end of this side (ccw): corner `side+2`.
    pub fn hi_corner(&self) -> Corner {
        Corner {
            tri: self.tri,
            corner: (self.side + 2) % 3,
        }
    }
}

impl Corner {
    pub fn new(tri: u32, corner: u8) -> Self {
        Corner { tri, corner }
    }
    pub fn slot(&self) -> usize {
        self.tri as usize * 3 + self.corner as usize
    }
    pub fn from_slot(slot: usize) -> Self {
        Corner {
            tri: (slot / 3) as u32,
            corner: (slot % 3) as u8,
        }
    }
    /// Side opposite this corner.
    pub fn opposite_side(&self) -> Side {
        Side {
            tri: self.tri,
            side: self.corner,
        }
    }
}

pub type EdgeId = u32;

/// Ideal triangulation of the punctured model of a surface.
///
/// Values are immutable after construction; `flip` returns a new
/// triangulation.  Edge ids are stable under flips: the flipped edge keeps
/// its id, every other edge keeps its id and its slots (up to the local
/// re-seating inside the flip quadrilateral).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealTriangulation {
    sig: SurfaceSig,
    /// Gluing involution on side slots.
    glue: Vec<Side>,
    /// Puncture index at each corner slot.
    corner_punct: Vec<u8>,
    /// Edge id -> its two side slots (the lexicographically smaller first).
    edges: Vec<[Side; 2]>,
    /// Side slot -> edge id.
    side_edge: Vec<EdgeId>,
    fingerprint: u64,
}

fn fnv1a(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl IdealTriangulation {
    fn compute_fingerprint(sig: &SurfaceSig, glue: &[Side], corner_punct: &[u8]) -> u64 {
        let mut bytes = Vec::with_capacity(glue.len() * 8 + corner_punct.len() + 64);
        bytes.extend_from_slice(&sig.genus.to_le_bytes());
        for l in &sig.boundary {
            bytes.extend_from_slice(l.as_bytes());
            bytes.push(0);
        }
        for s in glue {
            bytes.extend_from_slice(&(s.slot() as u32).to_le_bytes());
        }
        bytes.extend_from_slice(corner_punct);
        fnv1a(&bytes)
    }

    fn assemble(sig: SurfaceSig, glue: Vec<Side>, corner_punct: Vec<u8>) -> Result<Self> {
        // Edge table: orbit of the gluing involution, in slot order.
        let n_slots = glue.len();
        let mut side_edge = vec![u32::MAX; n_slots];
        let mut edges = Vec::new();
        for slot in 0..n_slots {
            if side_edge[slot] != u32::MAX {
                continue;
            }
            let here = Side::from_slot(slot);
            let there = glue[slot];
            let id = edges.len() as u32;
            side_edge[slot] = id;
            side_edge[there.slot()] = id;
            edges.push([here, there]);
        }
        let fingerprint = Self::compute_fingerprint(&sig, &glue, &corner_punct);
        let t = IdealTriangulation {
            sig,
            glue,
            corner_punct,
            edges,
            side_edge,
            fingerprint,
        };
        t.validate()?;
        Ok(t)
    }

    /// Rebuilds edge/side tables and fingerprint after an in-place change.
    fn reassemble(sig: SurfaceSig, glue: Vec<Side>, corner_punct: Vec<u8>, edges: Vec<[Side; 2]>) -> Result<Self> {
        let n_slots = glue.len();
        let mut side_edge = vec![u32::MAX; n_slots];
        for (id, pair) in edges.iter().enumerate() {
            side_edge[pair[0].slot()] = id as u32;
            side_edge[pair[1].slot()] = id as u32;
        }
        if side_edge.iter().any(|&e| e == u32::MAX) {
            return Err(ArcGraphError::Internal("edge table incomplete".into()));
        }
        let fingerprint = Self::compute_fingerprint(&sig, &glue, &corner_punct);
        let t = IdealTriangulation {
            sig,
            glue,
            corner_punct,
            edges,
            side_edge,
            fingerprint,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn sig(&self) -> &SurfaceSig {
        &self.sig
    }
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
    pub fn num_triangles(&self) -> usize {
        self.glue.len() / 3
    }
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
    pub fn glued(&self, s: Side) -> Side {
        self.glue[s.slot()]
    }
    pub fn edge_of(&self, s: Side) -> EdgeId {
        self.side_edge[s.slot()]
    }
    pub fn edge_sides(&self, e: EdgeId) -> [Side; 2] {
        self.edges[e as usize]
    }
    pub fn puncture_at(&self, c: Corner) -> u8 {
        self.corner_punct[c.slot()]
    }
    pub fn puncture_label(&self, p: u8) -> &str {
        &self.sig.boundary[p as usize]
    }

    /// Both endpoint punctures of an edge (unordered, possibly equal).
    pub fn edge_endpoints(&self, e: EdgeId) -> (u8, u8) {
        let s = self.edges[e as usize][0];
        (
            self.puncture_at(s.lo_corner()),
            self.puncture_at(s.hi_corner()),
        )
    }

    /// The corner on the other side of a glued side, at the same puncture.
    ///
    /// `c` must be an endpoint corner of side `s` (so `c != s.side`).
    pub fn corner_across(&self, s: Side, c: Corner) -> Corner {
        debug_assert_eq!(s.tri, c.tri);
        debug_assert_ne!(s.side, c.corner);
        let t = self.glue[s.slot()];
        if c == s.lo_corner() {
            t.hi_corner()
        } else {
            t.lo_corner()
        }
    }

    /// Rotate a corner around its puncture by one sector, crossing the side
    /// `c+1` (direction `false`) or `c+2` (direction `true`).
    pub fn rotate_corner(&self, c: Corner, dir: bool) -> (Corner, Side) {
        let s = if dir {
            Side::new(c.tri, (c.corner + 2) % 3)
        } else {
            Side::new(c.tri, (c.corner + 1) % 3)
        };
        (self.corner_across(s, c), s)
    }

    /// Full validation of the structural invariants.
    pub fn validate(&self) -> Result<()> {
        let chi = self.sig.euler_char();
        if chi >= 0 {
            return Err(ArcGraphError::NonHyperbolicSurface(chi));
        }
        let f = self.num_triangles() as i64;
        if f != -2 * chi {
            return Err(ArcGraphError::Internal(format!(
                "triangle count {} != -2 chi {}",
                f,
                -2 * chi
            )));
        }
        if self.edges.len() as i64 != -3 * chi {
            return Err(ArcGraphError::Internal(format!(
                "edge count {} != -3 chi {}",
                self.edges.len(),
                -3 * chi
            )));
        }
        // Gluing is a fixed-point free involution.
        for slot in 0..self.glue.len() {
            let s = Side::from_slot(slot);
            let t = self.glue[slot];
            if t == s {
                return Err(ArcGraphError::Internal("side glued to itself".into()));
            }
            if self.glue[t.slot()] != s {
                return Err(ArcGraphError::Internal("gluing not an involution".into()));
            }
        }
        // Corner punctures are consistent across gluings.
        for slot in 0..self.glue.len() {
            let s = Side::from_slot(slot);
            for c in [s.lo_corner(), s.hi_corner()] {
                let across = self.corner_across(s, c);
                if self.puncture_at(c) != self.puncture_at(across) {
                    return Err(ArcGraphError::Internal(
                        "corner punctures disagree across a gluing".into(),
                    ));
                }
            }
        }
        // Every puncture appears, and the link of each puncture closes up:
        // rotating from any corner returns to it after visiting the full
        // corner orbit of that puncture.
        let orbits = self.corner_orbits();
        let mut punct_of_orbit = BTreeMap::new();
        for (corner_slot, orbit) in orbits.iter().enumerate() {
            let p = self.corner_punct[corner_slot];
            if let Some(prev) = punct_of_orbit.insert(*orbit, p) {
                if prev != p {
                    return Err(ArcGraphError::Internal(
                        "one corner orbit carries two puncture labels".into(),
                    ));
                }
            }
        }
        let mut seen = vec![false; self.sig.boundary.len()];
        for (_, p) in punct_of_orbit.iter() {
            if seen[*p as usize] {
                return Err(ArcGraphError::Internal(
                    "two corner orbits share a puncture label".into(),
                ));
            }
            seen[*p as usize] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(ArcGraphError::Internal("puncture without corners".into()));
        }
        Ok(())
    }

    /// Orbit id per corner slot under rotation around punctures.
    pub fn corner_orbits(&self) -> Vec<usize> {
        let n = self.corner_punct.len();
        let mut orbit = vec![usize::MAX; n];
        let mut next_id = 0;
        for start in 0..n {
            if orbit[start] != usize::MAX {
                continue;
            }
            let id = next_id;
            next_id += 1;
            let mut c = Corner::from_slot(start);
            loop {
                orbit[c.slot()] = id;
                let (nc, _) = self.rotate_corner(c, true);
                c = nc;
                if c.slot() == start {
                    break;
                }
            }
        }
        orbit
    }

    /// Corners of a puncture in rotational order, starting from `c`.
    pub fn corner_cycle(&self, c: Corner) -> Vec<Corner> {
        let mut cycle = vec![c];
        let (mut cur, _) = self.rotate_corner(c, true);
        while cur != c {
            cycle.push(cur);
            let (nc, _) = self.rotate_corner(cur, true);
            cur = nc;
        }
        cycle
    }

    /// An edge is flippable when its two sides lie in distinct triangles.
    pub fn is_flippable(&self, e: EdgeId) -> bool {
        let [a, b] = self.edges[e as usize];
        a.tri != b.tri
    }

    /// Quadrilateral data around a flippable edge, in the frame *before*
    /// the flip.  Quad corners `P1..P4` in cyclic order with `e = P1 P3`:
    /// `P2` is the apex of `T_a` (corner `sa`), `P4` the apex of `T_b`.
    pub fn quad(&self, e: EdgeId) -> Result<Quad> {
        let [a, b] = self.edges[e as usize];
        if a.tri == b.tri {
            return Err(ArcGraphError::Unflippable {
                edge: e as usize,
                reason: "both sides of the edge lie in one triangle".into(),
            });
        }
        Ok(Quad { e, a, b })
    }

    /// Diagonal exchange at `e`.
    pub fn flip(&self, e: EdgeId) -> Result<IdealTriangulation> {
        let q = self.quad(e)?;
        let (ta, sa) = (q.a.tri, q.a.side);
        let (tb, sb) = (q.b.tri, q.b.side);
        let old_s12 = Side::new(ta, (sa + 2) % 3);
        let old_s23 = Side::new(ta, (sa + 1) % 3);
        let old_s34 = Side::new(tb, (sb + 2) % 3);
        let old_s41 = Side::new(tb, (sb + 1) % 3);

        // Relocation of the four outer sides.
        let reloc = |s: Side| -> Side {
            if s == old_s12 {
                Side::new(ta, (sa + 1) % 3)
            } else if s == old_s41 {
                Side::new(ta, (sa + 2) % 3)
            } else if s == old_s34 {
                Side::new(tb, (sb + 1) % 3)
            } else if s == old_s23 {
                Side::new(tb, (sb + 2) % 3)
            } else {
                s
            }
        };

        let p1 = self.puncture_at(Corner::new(ta, (sa + 1) % 3));
        let p2 = self.puncture_at(Corner::new(ta, sa));
        let p3 = self.puncture_at(Corner::new(ta, (sa + 2) % 3));
        let p4 = self.puncture_at(Corner::new(tb, sb));

        let mut glue = self.glue.clone();
        let mut corner_punct = self.corner_punct.clone();
        let mut edges = self.edges.clone();

        // New gluings: for every slot, the partner is the relocation of the
        // old partner of the slot's old content.  Outer quad sides may be
        // glued to each other; the relocation map handles that uniformly.
        let mut new_glue_at = |new_slot: Side, old_slot: Side| {
            let old_partner = self.glue[old_slot.slot()];
            glue[new_slot.slot()] = reloc(old_partner);
        };
        new_glue_at(Side::new(ta, (sa + 1) % 3), old_s12);
        new_glue_at(Side::new(ta, (sa + 2) % 3), old_s41);
        new_glue_at(Side::new(tb, (sb + 1) % 3), old_s34);
        new_glue_at(Side::new(tb, (sb + 2) % 3), old_s23);
        // The diagonal keeps its slots.
        glue[Side::new(ta, sa).slot()] = Side::new(tb, sb);
        glue[Side::new(tb, sb).slot()] = Side::new(ta, sa);
        // Also fix partners pointing *into* the quad from outside.
        for s in [old_s12, old_s23, old_s34, old_s41] {
            let partner = self.glue[s.slot()];
            if ![old_s12, old_s23, old_s34, old_s41].contains(&partner) {
                glue[partner.slot()] = reloc(s);
            }
        }

        // New corner layout: T_a' = (sa: P1, sa+1: P4, sa+2: P2),
        // T_b' = (sb: P3, sb+1: P2, sb+2: P4).
        corner_punct[Corner::new(ta, sa).slot()] = p1;
        corner_punct[Corner::new(ta, (sa + 1) % 3).slot()] = p4;
        corner_punct[Corner::new(ta, (sa + 2) % 3).slot()] = p2;
        corner_punct[Corner::new(tb, sb).slot()] = p3;
        corner_punct[Corner::new(tb, (sb + 1) % 3).slot()] = p2;
        corner_punct[Corner::new(tb, (sb + 2) % 3).slot()] = p4;

        // Edge table: relocate slots of edges touching the quad.
        for pair in edges.iter_mut() {
            for s in pair.iter_mut() {
                *s = reloc(*s);
            }
            pair.sort();
        }

        IdealTriangulation::reassemble(self.sig.clone(), glue, corner_punct, edges)
    }

    /// Slot relabeling `rho_e` with `flip(flip(t, e)) == rho_e(t)`:
    /// apex-aligned swap of the two quad triangles.
    pub fn double_flip_relabel(&self, e: EdgeId) -> Result<SlotRelabel> {
        let q = self.quad(e)?;
        Ok(SlotRelabel {
            ta: q.a.tri,
            sa: q.a.side,
            tb: q.b.tri,
            sb: q.b.side,
        })
    }

    /// Cut the surface along an ideal edge and report the pieces.
    pub fn cut_along_edge(&self, e: EdgeId) -> CutResult {
        let [ea, eb] = self.edges[e as usize];
        let free = [ea, eb];
        // Component of each triangle, via the remaining gluings.
        let n_tris = self.num_triangles();
        let mut comp = vec![usize::MAX; n_tris];
        let mut n_comp = 0;
        for start in 0..n_tris {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = n_comp;
            n_comp += 1;
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(t) = stack.pop() {
                for s in 0..3 {
                    let here = Side::new(t as u32, s);
                    if free.contains(&here) {
                        continue;
                    }
                    let there = self.glue[here.slot()];
                    if free.contains(&there) {
                        continue;
                    }
                    let nt = there.tri as usize;
                    if comp[nt] == usize::MAX {
                        comp[nt] = id;
                        stack.push(nt);
                    }
                }
            }
        }

        // Boundary circles per piece: 2-regular graph on (slot, end) nodes.
        // Node encoding: slot * 2 + end, end 0 = lo corner, end 1 = hi.
        let n_nodes = self.glue.len() * 2;
        let mut succ = vec![usize::MAX; n_nodes]; // truncation link
        let mut pair = vec![usize::MAX; n_nodes]; // gluing / free-side link
        for t in 0..n_tris as u32 {
            for c in 0..3u8 {
                // truncation arc at corner c joins (side c+1, hi) and (side c+2, lo)
                let s_in = Side::new(t, (c + 1) % 3);
                let s_out = Side::new(t, (c + 2) % 3);
                let a = s_in.slot() * 2 + 1;
                let b = s_out.slot() * 2;
                succ[a] = b;
                succ[b] = a;
            }
        }
        for slot in 0..self.glue.len() {
            let s = Side::from_slot(slot);
            if free.contains(&s) {
                // the free side is itself a boundary edge joining its ends
                pair[slot * 2] = slot * 2 + 1;
                pair[slot * 2 + 1] = slot * 2;
            } else {
                let t = self.glue[slot];
                pair[slot * 2] = t.slot() * 2 + 1;
                pair[slot * 2 + 1] = t.slot() * 2;
            }
        }
        let mut circle_comp = vec![usize::MAX; n_nodes];
        let mut circles_per_piece = vec![0usize; n_comp];
        for start in 0..n_nodes {
            if circle_comp[start] != usize::MAX {
                continue;
            }
            let piece = comp[Side::from_slot(start / 2).tri as usize];
            circles_per_piece[piece] += 1;
            let mut node = start;
            loop {
                circle_comp[node] = start;
                circle_comp[succ[node]] = start;
                node = pair[succ[node]];
                if node == start {
                    break;
                }
            }
        }

        // Euler characteristic per piece: chi = 4F - 3Eg - Ef over the
        // compacted (truncated-corner) model.
        let mut f_per = vec![0i64; n_comp];
        let mut ef_per = vec![0i64; n_comp];
        let mut eg2_per = vec![0i64; n_comp]; // glued side slots (2 per glued edge)
        for t in 0..n_tris {
            f_per[comp[t]] += 1;
        }
        for slot in 0..self.glue.len() {
            let s = Side::from_slot(slot);
            let piece = comp[s.tri as usize];
            if free.contains(&s) {
                ef_per[piece] += 1;
            } else {
                eg2_per[piece] += 1;
            }
        }

        // Interior punctures: punctures that are not endpoints of e, assigned
        // to the piece holding their corners.
        let cut_punct = {
            let (p, q) = self.edge_endpoints(e);
            [p, q]
        };
        let mut interior: Vec<Vec<String>> = vec![Vec::new(); n_comp];
        let orbits = self.corner_orbits();
        let mut seen_orbit = std::collections::BTreeSet::new();
        for slot in 0..self.corner_punct.len() {
            if !seen_orbit.insert(orbits[slot]) {
                continue;
            }
            let p = self.corner_punct[slot];
            if cut_punct.contains(&p) {
                continue;
            }
            let piece = comp[Corner::from_slot(slot).tri as usize];
            interior[piece].push(self.sig.boundary[p as usize].clone());
        }
        for v in interior.iter_mut() {
            v.sort();
        }

        let mut components = Vec::new();
        for i in 0..n_comp {
            // eg2 counts glued slots; each glued edge contributes two.
            let eg = eg2_per[i] / 2;
            let chi = 4 * f_per[i] - 3 * eg - ef_per[i];
            let b_circles = circles_per_piece[i] as i64;
            let genus = (2 - chi - b_circles) / 2;
            components.push(CutComponent {
                genus: genus as u32,
                new_boundary_arcs: ef_per[i] as u32,
                interior_labels: interior[i].clone(),
                chi,
                boundary_circles: b_circles as u32,
            });
        }
        CutResult { components }
    }

    /// Serialize to the versioned JSON form.
    pub fn to_json(&self) -> serde_json::Value {
        let gluing: Vec<[[u32; 2]; 2]> = self
            .edges
            .iter()
            .map(|[a, b]| [[a.tri, a.side as u32], [b.tri, b.side as u32]])
            .collect();
        let corners: BTreeMap<String, String> = (0..self.corner_punct.len())
            .map(|slot| {
                let c = Corner::from_slot(slot);
                (
                    format!("{},{}", c.tri, c.corner),
                    self.sig.boundary[self.corner_punct[slot] as usize].clone(),
                )
            })
            .collect();
        serde_json::json!({
            "format": 1,
            "surface": {"genus": self.sig.genus, "boundary": self.sig.boundary},
            "triangles": self.num_triangles(),
            "gluing": gluing,
            "corners": corners,
        })
    }
}

/// Quadrilateral around a flippable edge.
#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub e: EdgeId,
    /// Side of `e` in `T_a`.
    pub a: Side,
    /// Side of `e` in `T_b`.
    pub b: Side,
}

impl Quad {
    pub fn outer_s12(&self) -> Side {
        Side::new(self.a.tri, (self.a.side + 2) % 3)
    }
    pub fn outer_s23(&self) -> Side {
        Side::new(self.a.tri, (self.a.side + 1) % 3)
    }
    pub fn outer_s34(&self) -> Side {
        Side::new(self.b.tri, (self.b.side + 2) % 3)
    }
    pub fn outer_s41(&self) -> Side {
        Side::new(self.b.tri, (self.b.side + 1) % 3)
    }
}

/// Triangle-swap relabeling produced by flipping the same edge twice.
#[derive(Debug, Clone, Copy)]
pub struct SlotRelabel {
    pub ta: u32,
    pub sa: u8,
    pub tb: u32,
    pub sb: u8,
}

impl SlotRelabel {
    pub fn map_side(&self, s: Side) -> Side {
        if s.tri == self.ta {
            let j = (3 + s.side - self.sa) % 3;
            Side::new(self.tb, (self.sb + j) % 3)
        } else if s.tri == self.tb {
            let j = (3 + s.side - self.sb) % 3;
            Side::new(self.ta, (self.sa + j) % 3)
        } else {
            s
        }
    }
    pub fn map_corner(&self, c: Corner) -> Corner {
        if c.tri == self.ta {
            let j = (3 + c.corner - self.sa) % 3;
            Corner::new(self.tb, (self.sb + j) % 3)
        } else if c.tri == self.tb {
            let j = (3 + c.corner - self.sb) % 3;
            Corner::new(self.ta, (self.sa + j) % 3)
        } else {
            c
        }
    }
}

/// Components of the surface cut along an ideal edge.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CutResult {
    pub components: Vec<CutComponent>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CutComponent {
    pub genus: u32,
    pub new_boundary_arcs: u32,
    /// Boundary labels of punctures strictly inside this piece.
    pub interior_labels: Vec<String>,
    pub chi: i64,
    /// Boundary circles of the compact model of the piece.
    pub boundary_circles: u32,
}

impl CutComponent {
    /// Annulus with exactly the one puncture `label` inside.
    pub fn is_annulus_around(&self, label: &str) -> bool {
        self.chi == 0
            && self.genus == 0
            && self.boundary_circles == 2
            && self.interior_labels.len() == 1
            && self.interior_labels[0] == label
    }
}

impl CutResult {
    pub fn chi_sum(&self) -> i64 {
        self.components.iter().map(|c| c.chi).sum()
    }
}

/// Letter in a polygon gluing word.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Letter {
    id: u32,
    inverse: bool,
}

/// Deterministic base triangulation: a fan over a one-polygon fundamental
/// domain.  The gluing word is chosen so no triangle has two of its own
/// sides glued to each other.
pub fn base_triangulation(sig: &SurfaceSig) -> Result<IdealTriangulation> {
    let chi = sig.euler_char();
    if chi >= 0 {
        return Err(ArcGraphError::NonHyperbolicSurface(chi));
    }
    let g = sig.genus;
    let b = sig.boundary.len() as u32;

    let mut word: Vec<Letter> = Vec::new();
    let com = |word: &mut Vec<Letter>, base: u32| {
        // one genus handle: x y x^-1 y^-1
        word.push(Letter { id: base, inverse: false });
        word.push(Letter { id: base + 1, inverse: false });
        word.push(Letter { id: base, inverse: true });
        word.push(Letter { id: base + 1, inverse: true });
    };
    let punct = |word: &mut Vec<Letter>, id: u32| {
        word.push(Letter { id, inverse: false });
        word.push(Letter { id, inverse: true });
    };
    if g == 0 {
        // (e1^-1, e2, e2^-1, ..., e_{b-1}, e_{b-1}^-1, e1)
        word.push(Letter { id: 1000, inverse: true });
        for i in 1..(b - 1) {
            punct(&mut word, 1000 + i);
        }
        word.push(Letter { id: 1000, inverse: false });
    } else if b == 1 {
        for h in 0..g {
            com(&mut word, 2 * h);
        }
    } else {
        // (e_{b-1}^-1, commutators, e1 e1^-1 ... e_{b-2} e_{b-2}^-1, e_{b-1})
        word.push(Letter { id: 1000 + b - 2, inverse: true });
        for h in 0..g {
            com(&mut word, 2 * h);
        }
        for i in 0..(b - 2) {
            punct(&mut word, 1000 + i);
        }
        word.push(Letter { id: 1000 + b - 2, inverse: false });
    }

    let n = word.len();
    debug_assert_eq!(n as i64, 4 * g as i64 + 2 * (b as i64 - 1));
    let n_tris = n - 2;

    // Fan triangles T_i = (v0, v_{i+1}, v_{i+2}) with
    //   side 0 = polygon side s_{i+1},
    //   side 1 = diagonal d_{i+2} (or s_{n-1} for the last triangle),
    //   side 2 = diagonal d_{i+1} (or s_0 for the first).
    let poly_slot = |j: usize| -> Side {
        if j == 0 {
            Side::new(0, 2)
        } else if j == n - 1 {
            Side::new((n_tris - 1) as u32, 1)
        } else {
            Side::new((j - 1) as u32, 0)
        }
    };

    let mut glue = vec![Side::new(u32::MAX, 0); n_tris * 3];
    // internal diagonals d_k (v0 - v_k), k = 2..=n-2:
    for k in 2..=(n - 2) {
        let s1 = Side::new((k - 2) as u32, 1);
        let s2 = Side::new((k - 1) as u32, 2);
        glue[s1.slot()] = s2;
        glue[s2.slot()] = s1;
    }
    // polygon sides, paired by letter:
    for i in 0..n {
        for j in (i + 1)..n {
            if word[i].id == word[j].id {
                let a = poly_slot(i);
                let bb = poly_slot(j);
                glue[a.slot()] = bb;
                glue[bb.slot()] = a;
            }
        }
    }
    if glue.iter().any(|s| s.tri == u32::MAX) {
        return Err(ArcGraphError::Internal("incomplete polygon gluing".into()));
    }

    // No triangle may have two of its own sides glued to each other.
    for t in 0..n_tris as u32 {
        for s in 0..3u8 {
            let here = Side::new(t, s);
            if glue[here.slot()].tri == t {
                return Err(ArcGraphError::Internal(format!(
                    "base triangulation word produced a self-glued triangle {t}"
                )));
            }
        }
    }

    // Polygon vertex orbits -> punctures.  Polygon vertex of each corner:
    // T_i corners: (v0, v_{i+1}, v_{i+2}).
    let vertex_of_corner = |c: Corner| -> usize {
        match c.corner {
            0 => 0,
            1 => c.tri as usize + 1,
            _ => c.tri as usize + 2,
        }
    };
    // Union-find over polygon vertices via side gluings.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for slot in 0..glue.len() {
        let s = Side::from_slot(slot);
        let t = glue[slot];
        let (a1, a2) = (
            vertex_of_corner(s.lo_corner()),
            vertex_of_corner(s.hi_corner()),
        );
        let (b1, b2) = (
            vertex_of_corner(t.hi_corner()),
            vertex_of_corner(t.lo_corner()),
        );
        let ra = find(&mut parent, a1);
        let rb = find(&mut parent, b1);
        parent[ra.max(rb)] = ra.min(rb);
        let ra = find(&mut parent, a2);
        let rb = find(&mut parent, b2);
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut distinct: Vec<usize> = {
        let mut d = roots.clone();
        d.sort();
        d.dedup();
        d
    };
    distinct.sort();
    if distinct.len() != b as usize {
        return Err(ArcGraphError::Internal(format!(
            "polygon word yields {} punctures, expected {}",
            distinct.len(),
            b
        )));
    }
    let punct_index: BTreeMap<usize, u8> = distinct
        .iter()
        .enumerate()
        .map(|(i, r)| (*r, i as u8))
        .collect();
    let mut corner_punct = vec![0u8; n_tris * 3];
    for slot in 0..corner_punct.len() {
        let c = Corner::from_slot(slot);
        let v = vertex_of_corner(c);
        corner_punct[slot] = punct_index[&roots[v]];
    }
    let _ = &mut roots;

    IdealTriangulation::assemble(sig.clone(), glue, corner_punct)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(g: u32, labels: &[&str]) -> SurfaceSig {
        SurfaceSig::new(g, labels.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn surface_sig_validation() {
        assert_eq!(sig(1, &["w"]).euler_char(), -1);
        assert_eq!(sig(0, &["c", "v1", "v2", "v3", "v4"]).euler_char(), -3);
        assert!(matches!(
            SurfaceSig::new(0, vec![]),
            Err(ArcGraphError::EmptyBoundary)
        ));
        assert!(matches!(
            SurfaceSig::new(0, vec!["x".into(), "x".into()]),
            Err(ArcGraphError::DuplicateLabel(_))
        ));
        // disk accepted, but no triangulation
        let disk = sig(0, &["x"]);
        assert_eq!(disk.euler_char(), 1);
        assert!(matches!(
            base_triangulation(&disk),
            Err(ArcGraphError::NonHyperbolicSurface(1))
        ));
    }

    #[test]
    fn base_counts() {
        for (g, labels, f, e) in [
            (1u32, vec!["w"], 2usize, 3usize),
            (0, vec!["a", "b", "c"], 2, 3),
            (0, vec!["a", "b", "c", "d"], 4, 6),
            (0, vec!["c", "v1", "v2", "v3", "v4"], 6, 9),
            (1, vec!["w1", "w2"], 4, 6),
            (2, vec!["w"], 6, 9),
            (2, vec!["u", "v", "w", "x", "y", "z"], 16, 24),
        ] {
            let s = SurfaceSig::new(g, labels.iter().map(|l| l.to_string()).collect()).unwrap();
            let t = base_triangulation(&s).unwrap();
            assert_eq!(t.num_triangles(), f, "triangles for g={g} b={}", labels.len());
            assert_eq!(t.num_edges(), e, "edges for g={g} b={}", labels.len());
            t.validate().unwrap();
        }
    }

    #[test]
    fn flips_preserve_invariants() {
        let s = sig(1, &["w"]);
        let t = base_triangulation(&s).unwrap();
        for e in 0..t.num_edges() as u32 {
            assert!(t.is_flippable(e));
            let t2 = t.flip(e).unwrap();
            t2.validate().unwrap();
            assert_eq!(t2.num_triangles(), 2);
            assert_eq!(t2.num_edges(), 3);
        }
    }

    #[test]
    fn double_flip_is_relabel() {
        for s in [sig(1, &["w"]), sig(0, &["a", "b", "c", "d"]), sig(1, &["w1", "w2"])] {
            let t = base_triangulation(&s).unwrap();
            for e in 0..t.num_edges() as u32 {
                if !t.is_flippable(e) {
                    continue;
                }
                let rho = t.double_flip_relabel(e).unwrap();
                let t2 = t.flip(e).unwrap().flip(e).unwrap();
                // applying rho to t should give t2
                let mut glue = vec![Side::new(0, 0); t.glue.len()];
                let mut cp = vec![0u8; t.corner_punct.len()];
                for slot in 0..t.glue.len() {
                    let s0 = Side::from_slot(slot);
                    glue[rho.map_side(s0).slot()] = rho.map_side(t.glue[slot]);
                }
                for slot in 0..t.corner_punct.len() {
                    let c0 = Corner::from_slot(slot);
                    cp[rho.map_corner(c0).slot()] = t.corner_punct[slot];
                }
                assert_eq!(glue, t2.glue, "glue after double flip of {e}");
                assert_eq!(cp, t2.corner_punct, "corners after double flip of {e}");
            }
        }
    }

    #[test]
    fn random_flip_walk_validates() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for s in [sig(0, &["a", "b", "c", "d"]), sig(2, &["w"]), sig(1, &["w1", "w2"])] {
            let mut t = base_triangulation(&s).unwrap();
            for _ in 0..1000 {
                let e = rng.gen_range(0..t.num_edges() as u32);
                if t.is_flippable(e) {
                    t = t.flip(e).unwrap();
                    t.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn cut_torus_edge() {
        let s = sig(1, &["w"]);
        let t = base_triangulation(&s).unwrap();
        for e in 0..3 {
            let cut = t.cut_along_edge(e);
            assert_eq!(cut.components.len(), 1);
            let c = &cut.components[0];
            assert_eq!(c.genus, 0);
            assert_eq!(c.chi, 0);
            assert_eq!(cut.chi_sum(), s.euler_char() + 1);
        }
    }

    #[test]
    fn cut_sphere_edge() {
        let s = sig(0, &["c", "v1", "v2", "v3", "v4"]);
        let t = base_triangulation(&s).unwrap();
        for e in 0..t.num_edges() as u32 {
            let cut = t.cut_along_edge(e);
            assert_eq!(cut.chi_sum(), s.euler_char() + 1);
            let (p, q) = t.edge_endpoints(e);
            if p != q {
                // cutting along an arc between distinct punctures of a sphere
                // leaves one piece
                assert_eq!(cut.components.len(), 1, "edge {e}");
                assert_eq!(cut.components[0].interior_labels.len(), 3);
            }
        }
    }

    #[test]
    fn corner_orbit_count_matches_boundary() {
        for s in [
            sig(0, &["a", "b", "c"]),
            sig(0, &["a", "b", "c", "d", "e", "f"]),
            sig(1, &["w1", "w2", "w3"]),
            sig(2, &["u", "v"]),
        ] {
            let t = base_triangulation(&s).unwrap();
            let orbits = t.corner_orbits();
            let distinct: std::collections::BTreeSet<_> = orbits.iter().collect();
            assert_eq!(distinct.len(), s.boundary.len());
        }
    }
}
