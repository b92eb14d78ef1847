//! Isotopy classes of essential simple arcs in normal coordinates, plus
//! the small amount of closed-curve support the witness machinery needs.
//!
//! An arc class is stored in a fixed frame (ideal triangulation) either as
//! the class of one of its edges or as a taut transverse position: one
//! crossing count per edge together with the two endpoint sectors.  That
//! data is a complete invariant of the unoriented isotopy class, so
//! structural equality is class equality.

use crate::drawn::{DrawnArc, Normalized};
use crate::error::{ArcGraphError, Result};
use crate::surface::{Corner, EdgeId, IdealTriangulation, Quad, Side};
use serde::{Deserialize, Serialize};

/// Canonical data of an arc class within a frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArcForm {
    /// Isotopic to an edge of the frame.
    EdgeParallel(EdgeId),
    /// Taut transverse position: per-edge crossing counts and the two
    /// terminal sectors (sorted).
    Transverse { coords: Vec<u32>, ends: [Corner; 2] },
}

/// An arc class tagged with the fingerprint of its frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcClass {
    pub frame: u64,
    pub form: ArcForm,
}

impl ArcClass {
    pub fn new(t: &IdealTriangulation, form: ArcForm) -> Self {
        ArcClass {
            frame: t.fingerprint(),
            form,
        }
    }

    pub fn check_frame(&self, t: &IdealTriangulation) -> Result<()> {
        if self.frame != t.fingerprint() {
            return Err(ArcGraphError::FrameMismatch(self.frame, t.fingerprint()));
        }
        Ok(())
    }

    /// Total coordinate weight (0 for an edge-parallel class).
    pub fn weight(&self) -> u64 {
        match &self.form {
            ArcForm::EdgeParallel(_) => 0,
            ArcForm::Transverse { coords, .. } => coords.iter().map(|&x| x as u64).sum(),
        }
    }

    /// Unordered endpoint puncture indices.
    pub fn endpoints(&self, t: &IdealTriangulation) -> (u8, u8) {
        match &self.form {
            ArcForm::EdgeParallel(e) => t.edge_endpoints(*e),
            ArcForm::Transverse { ends, .. } => {
                (t.puncture_at(ends[0]), t.puncture_at(ends[1]))
            }
        }
    }
}

fn sort_ends(a: Corner, b: Corner) -> [Corner; 2] {
    if a.slot() <= b.slot() {
        [a, b]
    } else {
        [b, a]
    }
}

/// Turn a normalization outcome into an arc form; `Inessential` is `None`.
pub fn form_from_normalized(t: &IdealTriangulation, n: Normalized) -> Option<ArcForm> {
    match n {
        Normalized::Inessential => None,
        Normalized::EdgeParallel(e) => Some(ArcForm::EdgeParallel(e)),
        Normalized::Taut(d) => {
            let mut coords = vec![0u32; t.num_edges()];
            for s in &d.steps {
                coords[t.edge_of(*s) as usize] += 1;
            }
            Some(ArcForm::Transverse {
                coords,
                ends: sort_ends(d.start, d.end),
            })
        }
    }
}

/// Normalize a drawn arc all the way to a class, or `None` if inessential.
pub fn class_of_drawn(t: &IdealTriangulation, d: DrawnArc) -> Result<Option<ArcClass>> {
    let n = d.normalize(t)?;
    Ok(form_from_normalized(t, n).map(|form| ArcClass::new(t, form)))
}

/// One crossing of the decoded arc: the edge, its position along the edge
/// in the edge's canonical orientation, and the side slot the strand
/// crosses from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingRec {
    pub edge: EdgeId,
    pub pos: u32,
    pub from: Side,
}

/// Fully decoded transverse arc: drawn form plus slot positions and the
/// per-triangle strand statistics.
#[derive(Debug, Clone)]
pub struct Decoded {
    pub start: Corner,
    pub end: Corner,
    pub crossings: Vec<CrossingRec>,
    pub coords: Vec<u32>,
    /// corner-arc count per (tri, corner) slot
    pub corner_counts: Vec<u32>,
    /// terminal count per (tri, corner) slot
    pub terminal_counts: Vec<u8>,
}

impl Decoded {
    pub fn drawn(&self) -> DrawnArc {
        DrawnArc {
            start: self.start,
            steps: self.crossings.iter().map(|c| c.from).collect(),
            end: self.end,
        }
    }

    /// Crossing indices on edge `e`, sorted by position along the edge.
    pub fn slots_on(&self, e: EdgeId) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.crossings.len())
            .filter(|&i| self.crossings[i].edge == e)
            .collect();
        v.sort_by_key(|&i| self.crossings[i].pos);
        v
    }
}

/// Strand occupying a slot of a triangle side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum StrandAt {
    /// Corner arc at (corner index), nesting index k (0 = innermost).
    CornerArc(u8, u32),
    /// Terminal at the opposite corner, index j among terminals there.
    Terminal(u8, u8),
}

/// Per-triangle strand statistics for a coordinate vector with ends.
pub struct TriangleStats {
    /// corner arcs per corner slot
    pub a: Vec<u32>,
    /// terminals per corner slot
    pub t: Vec<u8>,
}

/// Solve the per-triangle matching conditions.  Fails when the coordinates
/// plus endpoint data are not realizable.
pub fn triangle_stats(
    t: &IdealTriangulation,
    coords: &[u32],
    ends: &[Corner],
) -> Result<TriangleStats> {
    let n_corners = t.num_triangles() * 3;
    let mut term = vec![0u8; n_corners];
    for c in ends {
        term[c.slot()] += 1;
    }
    let mut a = vec![0u32; n_corners];
    for tri in 0..t.num_triangles() as u32 {
        let x = |s: u8| coords[t.edge_of(Side::new(tri, s)) as usize] as i64;
        let y = |s: u8| x(s) - term[Corner::new(tri, s).slot()] as i64;
        for c in 0..3u8 {
            let num = y((c + 1) % 3) + y((c + 2) % 3) - y(c);
            if num < 0 || num % 2 != 0 {
                return Err(ArcGraphError::Internal(format!(
                    "matching fails at triangle {tri} corner {c}"
                )));
            }
            a[Corner::new(tri, c).slot()] = (num / 2) as u32;
        }
    }
    Ok(TriangleStats { a, t: term })
}

pub(crate) struct SlotLayout<'a> {
    pub t: &'a IdealTriangulation,
    pub coords: &'a [u32],
    pub stats: &'a TriangleStats,
}

impl<'a> SlotLayout<'a> {
    /// Strand with an endpoint at (side, position-from-lo-corner).
    pub(crate) fn strand_at(&self, s: Side, q: u32) -> StrandAt {
        let lo = s.lo_corner();
        let hi = s.hi_corner();
        let op = Corner::new(s.tri, s.side);
        let a_lo = self.stats.a[lo.slot()];
        let t_op = self.stats.t[op.slot()] as u32;
        let x = self.coords[self.t.edge_of(s) as usize];
        if q < a_lo {
            StrandAt::CornerArc(lo.corner, q)
        } else if q < a_lo + t_op {
            StrandAt::Terminal(op.corner, (q - a_lo) as u8)
        } else {
            StrandAt::CornerArc(hi.corner, x - 1 - q)
        }
    }

    /// Side position of the terminal strand at corner `c`, index `j`.
    pub(crate) fn terminal_pos(&self, c: Corner, j: u8) -> (Side, u32) {
        let s = c.opposite_side();
        let a_lo = self.stats.a[s.lo_corner().slot()];
        (s, a_lo + j as u32)
    }

    /// Other endpoint of the corner arc at `c` with nesting index `k`,
    /// given the side it was entered from.
    pub(crate) fn corner_arc_other(&self, c: Corner, k: u32, entered: Side) -> (Side, u32) {
        let s1 = Side::new(c.tri, (c.corner + 1) % 3); // position x1-1-k (near hi = corner c)
        let s2 = Side::new(c.tri, (c.corner + 2) % 3); // position k (near lo = corner c)
        let x1 = self.coords[self.t.edge_of(s1) as usize];
        if entered == s1 {
            (s2, k)
        } else {
            debug_assert_eq!(entered, s2);
            (s1, x1 - 1 - k)
        }
    }

    /// Canonical along-edge position of (side, q).
    pub(crate) fn canonical_pos(&self, s: Side, q: u32) -> u32 {
        let e = self.t.edge_of(s);
        let [first, _] = self.t.edge_sides(e);
        if s == first {
            q
        } else {
            self.coords[e as usize] - 1 - q
        }
    }
}

/// Decode a transverse form into an explicit strand structure.
///
/// Fails when the data does not describe a single arc (matching violation,
/// several components, or leftover closed components).
pub fn decode(t: &IdealTriangulation, coords: &[u32], ends: [Corner; 2]) -> Result<Decoded> {
    if coords.len() != t.num_edges() {
        return Err(ArcGraphError::Internal("coordinate vector length".into()));
    }
    let stats = triangle_stats(t, coords, &ends)?;
    let layout = SlotLayout { t, coords, stats: &stats };

    let total_strands: u64 = stats.a.iter().map(|&x| x as u64).sum::<u64>()
        + stats.t.iter().map(|&x| x as u64).sum::<u64>();

    // Trace from the first end (terminal index 0 there).
    let start = ends[0];
    let (mut side, mut q) = layout.terminal_pos(start, 0);
    let mut crossings = Vec::new();
    let end;
    loop {
        crossings.push(CrossingRec {
            edge: t.edge_of(side),
            pos: layout.canonical_pos(side, q),
            from: side,
        });
        let partner = t.glued(side);
        let x = coords[t.edge_of(side) as usize];
        let pq = x - 1 - q;
        match layout.strand_at(partner, pq) {
            StrandAt::Terminal(corner, j) => {
                let c = Corner::new(partner.tri, corner);
                if c != ends[1] {
                    return Err(ArcGraphError::Internal(
                        "trace terminated at an unexpected corner".into(),
                    ));
                }
                if ends[0] == ends[1] && j != 1 {
                    return Err(ArcGraphError::Internal(
                        "trace closed back onto the starting terminal".into(),
                    ));
                }
                end = c;
                break;
            }
            StrandAt::CornerArc(corner, k) => {
                let c = Corner::new(partner.tri, corner);
                let (ns, nq) = layout.corner_arc_other(c, k, partner);
                side = ns;
                q = nq;
            }
        }
    }

    if crossings.len() as u64 + 1 != total_strands {
        return Err(ArcGraphError::Internal(format!(
            "decode left {} strands unused (closed components)",
            total_strands - crossings.len() as u64 - 1
        )));
    }

    Ok(Decoded {
        start,
        end,
        crossings,
        coords: coords.to_vec(),
        corner_counts: stats.a,
        terminal_counts: stats.t,
    })
}

/// Decode, accepting any `ArcForm` (edge-parallel forms have no crossings;
/// their drawn form is a crossing-free walk in a flanking triangle).
pub fn decode_form(t: &IdealTriangulation, form: &ArcForm) -> Result<Decoded> {
    match form {
        ArcForm::Transverse { coords, ends } => decode(t, coords, *ends),
        ArcForm::EdgeParallel(e) => {
            let [s, _] = t.edge_sides(*e);
            let mut terminal_counts = vec![0u8; t.num_triangles() * 3];
            terminal_counts[s.lo_corner().slot()] += 1;
            terminal_counts[s.hi_corner().slot()] += 1;
            Ok(Decoded {
                start: s.lo_corner(),
                end: s.hi_corner(),
                crossings: vec![],
                coords: vec![0; t.num_edges()],
                corner_counts: vec![0; t.num_triangles() * 3],
                terminal_counts,
            })
        }
    }
}

/// A flip with the data needed to transport drawn arcs across it.
pub struct FlipStep {
    pub e: EdgeId,
    pub quad: Quad,
    pub new_frame: IdealTriangulation,
}

pub fn flip_step(t: &IdealTriangulation, e: EdgeId) -> Result<FlipStep> {
    let quad = t.quad(e)?;
    let new_frame = t.flip(e)?;
    Ok(FlipStep { e, quad, new_frame })
}

#[derive(Debug, Clone, Copy)]
struct NewLoc {
    tris: [Option<u32>; 2],
}

impl NewLoc {
    fn single(t: u32) -> Self {
        NewLoc { tris: [Some(t), None] }
    }
    fn both(a: u32, b: u32) -> Self {
        NewLoc { tris: [Some(a), Some(b)] }
    }
    fn common(&self, other: &NewLoc) -> Option<u32> {
        for x in self.tris.iter().flatten() {
            for y in other.tris.iter().flatten() {
                if x == y {
                    return Some(*x);
                }
            }
        }
        None
    }
}

/// Transport a taut drawn arc across a flip; the result is not normalized.
///
/// Crossings of edges other than the flipped diagonal persist (with their
/// slots re-seated); crossings of the diagonal are dropped and crossings of
/// the new diagonal are inserted wherever a segment joins objects that the
/// new diagonal separates.
pub fn transport_drawn(t: &IdealTriangulation, step: &FlipStep, d: &DrawnArc) -> Result<DrawnArc> {
    let q = &step.quad;
    let (ta, sa) = (q.a.tri, q.a.side);
    let (tb, sb) = (q.b.tri, q.b.side);
    let old_s12 = q.outer_s12();
    let old_s23 = q.outer_s23();
    let old_s34 = q.outer_s34();
    let old_s41 = q.outer_s41();
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

    // Quad corner of an old corner slot: 1..4, or 0 when outside the quad.
    let quad_corner = |c: Corner| -> u8 {
        if c.tri == ta {
            match (3 + c.corner - sa) % 3 {
                0 => 2,
                1 => 1,
                _ => 3,
            }
        } else if c.tri == tb {
            match (3 + c.corner - sb) % 3 {
                0 => 4,
                1 => 3,
                _ => 1,
            }
        } else {
            0
        }
    };
    // New representatives of a quad corner.
    let new_reps = |qc: u8| -> [Option<Corner>; 2] {
        match qc {
            1 => [Some(Corner::new(ta, sa)), None],
            3 => [Some(Corner::new(tb, sb)), None],
            2 => [
                Some(Corner::new(ta, (sa + 2) % 3)),
                Some(Corner::new(tb, (sb + 1) % 3)),
            ],
            4 => [
                Some(Corner::new(ta, (sa + 1) % 3)),
                Some(Corner::new(tb, (sb + 2) % 3)),
            ],
            _ => [None, None],
        }
    };
    let corner_loc = |c: Corner| -> (NewLoc, [Option<Corner>; 2]) {
        let qc = quad_corner(c);
        if qc == 0 {
            (NewLoc::single(c.tri), [Some(c), None])
        } else {
            let reps = new_reps(qc);
            match (reps[0], reps[1]) {
                (Some(r), None) => (NewLoc::single(r.tri), reps),
                (Some(r1), Some(r2)) => (NewLoc::both(r1.tri, r2.tri), reps),
                _ => unreachable!(),
            }
        }
    };

    enum Ev {
        Corner(Corner),
        Cross(Side),
    }
    let mut events: Vec<Ev> = Vec::with_capacity(d.steps.len() + 2);
    events.push(Ev::Corner(d.start));
    for s in &d.steps {
        if t.edge_of(*s) == step.e {
            continue;
        }
        events.push(Ev::Cross(reloc(*s)));
    }
    events.push(Ev::Corner(d.end));

    let nf = &step.new_frame;
    let loc_after = |ev: &Ev| -> NewLoc {
        match ev {
            Ev::Corner(c) => corner_loc(*c).0,
            Ev::Cross(s) => NewLoc::single(nf.glued(*s).tri),
        }
    };
    let loc_before = |ev: &Ev| -> NewLoc {
        match ev {
            Ev::Corner(c) => corner_loc(*c).0,
            Ev::Cross(s) => NewLoc::single(s.tri),
        }
    };

    let mut steps: Vec<Side> = Vec::with_capacity(d.steps.len() + 2);
    let mut start_corner: Option<Corner> = None;
    let mut end_corner: Option<Corner> = None;

    for w in 0..events.len() - 1 {
        let (a, b) = (&events[w], &events[w + 1]);
        let la = loc_after(a);
        let lb = loc_before(b);
        let seg_tris: Vec<u32> = match la.common(&lb) {
            Some(x) => vec![x],
            None => {
                let from = la.tris[0]
                    .ok_or_else(|| ArcGraphError::Internal("transport lost a segment".into()))?;
                let to = lb.tris[0]
                    .ok_or_else(|| ArcGraphError::Internal("transport lost a segment".into()))?;
                if (from != ta && from != tb) || (to != ta && to != tb) {
                    return Err(ArcGraphError::Internal(
                        "disconnected transport segment outside the quad".into(),
                    ));
                }
                vec![from, to]
            }
        };
        if w == 0 {
            if let Ev::Corner(c) = a {
                let (_, reps) = corner_loc(*c);
                let tri0 = seg_tris[0];
                start_corner = Some(
                    *reps
                        .iter()
                        .flatten()
                        .find(|r| r.tri == tri0)
                        .ok_or_else(|| ArcGraphError::Internal("start corner relocation".into()))?,
                );
            }
        }
        if w + 1 == events.len() - 1 {
            if let Ev::Corner(c) = b {
                let (_, reps) = corner_loc(*c);
                let tri_last = *seg_tris.last().unwrap();
                end_corner = Some(
                    *reps
                        .iter()
                        .flatten()
                        .find(|r| r.tri == tri_last)
                        .ok_or_else(|| ArcGraphError::Internal("end corner relocation".into()))?,
                );
            }
        }
        if seg_tris.len() == 2 {
            let f_slot = if seg_tris[0] == ta {
                Side::new(ta, sa)
            } else {
                Side::new(tb, sb)
            };
            steps.push(f_slot);
        }
        if let Ev::Cross(s) = b {
            steps.push(*s);
        }
    }

    let out = DrawnArc {
        start: start_corner.ok_or_else(|| ArcGraphError::Internal("no start".into()))?,
        steps,
        end: end_corner.ok_or_else(|| ArcGraphError::Internal("no end".into()))?,
    };
    out.validate(nf)?;
    Ok(out)
}

/// Transport an arc form across a flip and re-normalize.
pub fn transport_form(t: &IdealTriangulation, step: &FlipStep, form: &ArcForm) -> Result<ArcForm> {
    let dec = decode_form(t, form)?;
    let moved = transport_drawn(t, step, &dec.drawn())?;
    match moved.normalize(&step.new_frame)? {
        Normalized::Inessential => Err(ArcGraphError::Internal(
            "transport produced an inessential arc".into(),
        )),
        n => Ok(form_from_normalized(&step.new_frame, n).unwrap()),
    }
}

/// Weight change of the decoded arc under flipping `e`, from local strand
/// statistics only.
pub fn flip_weight_delta(t: &IdealTriangulation, dec: &Decoded, e: EdgeId) -> Result<i64> {
    let q = t.quad(e)?;
    let (ta, sa) = (q.a.tri, q.a.side);
    let (tb, sb) = (q.b.tri, q.b.side);
    let x_e = dec.coords[e as usize] as i64;

    let n2 = dec.corner_counts[Corner::new(ta, sa).slot()] as i64;
    let n4 = dec.corner_counts[Corner::new(tb, sb).slot()] as i64;
    let u1 = dec.terminal_counts[Corner::new(ta, (sa + 1) % 3).slot()] as i64;
    let u3p = dec.terminal_counts[Corner::new(ta, (sa + 2) % 3).slot()] as i64;
    let u3 = dec.terminal_counts[Corner::new(tb, (sb + 1) % 3).slot()] as i64;
    let u1p = dec.terminal_counts[Corner::new(tb, (sb + 2) % 3).slot()] as i64;

    let stats = TriangleStats {
        a: dec.corner_counts.clone(),
        t: dec.terminal_counts.clone(),
    };
    let layout = SlotLayout { t, coords: &dec.coords, stats: &stats };
    let [sfirst, _] = t.edge_sides(e);
    let x = dec.coords[e as usize];
    let mut through = 0i64;
    for p in 0..x {
        let qa = if q.a == sfirst { p } else { x - 1 - p };
        let qb = if q.b == sfirst { p } else { x - 1 - p };
        let a_to_s12 = matches!(layout.strand_at(q.a, qa), StrandAt::CornerArc(c, _) if c == (sa + 1) % 3);
        let a_term = matches!(layout.strand_at(q.a, qa), StrandAt::Terminal(_, _));
        let b_to_s34 = matches!(layout.strand_at(q.b, qb), StrandAt::CornerArc(c, _) if c == (sb + 1) % 3);
        let b_term = matches!(layout.strand_at(q.b, qb), StrandAt::Terminal(_, _));
        if a_term || b_term {
            continue;
        }
        // crossing strands that still cross after the flip:
        // (toward s12, toward s34) or (toward s23, toward s41)
        if (a_to_s12 && b_to_s34) || (!a_to_s12 && !b_to_s34) {
            through += 1;
        }
    }

    let x_f = through + n2 + n4 + u1 + u1p + u3 + u3p;
    Ok(x_f - x_e)
}

/// Flips realizing an arc class as an edge.
pub struct Tightened {
    /// Frames after each flip; `frames[0]` is the input frame.
    pub frames: Vec<IdealTriangulation>,
    pub transcript: Vec<EdgeId>,
    /// The edge of the final frame carrying the class.
    pub edge: EdgeId,
}

impl Tightened {
    pub fn final_frame(&self) -> &IdealTriangulation {
        self.frames.last().unwrap()
    }
}

/// Flip a maximal-coordinate crossed edge (ties by lowest id) whose flip
/// strictly decreases total weight, until the class is an edge.
pub fn tighten(t0: &IdealTriangulation, form: &ArcForm) -> Result<Tightened> {
    let mut frames = vec![t0.clone()];
    let mut transcript = Vec::new();
    let mut cur = form.clone();
    loop {
        match cur {
            ArcForm::EdgeParallel(e) => {
                return Ok(Tightened {
                    frames,
                    transcript,
                    edge: e,
                });
            }
            ArcForm::Transverse { ref coords, ends } => {
                let t = frames.last().unwrap().clone();
                let dec = decode(&t, coords, ends)?;
                let mut candidates: Vec<(u32, EdgeId)> = (0..t.num_edges() as u32)
                    .filter(|&e| coords[e as usize] > 0 && t.is_flippable(e))
                    .map(|e| (coords[e as usize], e))
                    .collect();
                candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
                let weight: i64 = coords.iter().map(|&x| x as i64).sum();
                let mut chosen = None;
                for (_, e) in &candidates {
                    let delta = flip_weight_delta(&t, &dec, *e)?;
                    if delta < 0 {
                        chosen = Some(*e);
                        break;
                    }
                }
                let e = chosen.ok_or_else(|| {
                    ArcGraphError::InternalNonTermination(format!(
                        "no strictly reducing flip at weight {weight}"
                    ))
                })?;
                let step = flip_step(&t, e)?;
                let next = transport_form(&t, &step, &cur)?;
                let new_weight: i64 = match &next {
                    ArcForm::EdgeParallel(_) => 0,
                    ArcForm::Transverse { coords, .. } => coords.iter().map(|&x| x as i64).sum(),
                };
                if new_weight >= weight {
                    return Err(ArcGraphError::InternalNonTermination(format!(
                        "flip of edge {e} failed to reduce weight ({weight} -> {new_weight})"
                    )));
                }
                frames.push(step.new_frame);
                transcript.push(e);
                cur = next;
            }
        }
    }
}

/// Transport a form forward along a recorded transcript.
pub fn transport_along(
    frames: &[IdealTriangulation],
    transcript: &[EdgeId],
    form: &ArcForm,
) -> Result<ArcForm> {
    let mut cur = form.clone();
    for (i, &e) in transcript.iter().enumerate() {
        let step = flip_step(&frames[i], e)?;
        debug_assert_eq!(step.new_frame.fingerprint(), frames[i + 1].fingerprint());
        cur = transport_form(&frames[i], &step, &cur)?;
    }
    Ok(cur)
}

/// Transport a form backward along a recorded transcript, landing exactly
/// in `frames[0]`.  Flipping the same edge twice equals an apex-aligned
/// relabeling of the two quad triangles, which is inverted after each step.
pub fn transport_back(
    frames: &[IdealTriangulation],
    transcript: &[EdgeId],
    form: &ArcForm,
) -> Result<ArcForm> {
    let mut cur = form.clone();
    for (i, &e) in transcript.iter().enumerate().rev() {
        let here = &frames[i + 1];
        let target = &frames[i];
        let rho = target.double_flip_relabel(e)?;
        let step = flip_step(here, e)?;
        let moved = transport_form(here, &step, &cur)?;
        cur = relabel_form(&step.new_frame, target, &moved, &rho)?;
    }
    Ok(cur)
}

pub(crate) fn relabel_form(
    from: &IdealTriangulation,
    to: &IdealTriangulation,
    form: &ArcForm,
    rho: &crate::surface::SlotRelabel,
) -> Result<ArcForm> {
    match form {
        ArcForm::EdgeParallel(e) => {
            let [s, _] = from.edge_sides(*e);
            let new_e = to.edge_of(rho.map_side(s));
            Ok(ArcForm::EdgeParallel(new_e))
        }
        ArcForm::Transverse { .. } => {
            let dec = decode_form(from, form)?;
            let drawn = dec.drawn();
            let mapped = DrawnArc {
                start: rho.map_corner(drawn.start),
                steps: drawn.steps.iter().map(|s| rho.map_side(*s)).collect(),
                end: rho.map_corner(drawn.end),
            };
            match mapped.normalize(to)? {
                Normalized::Inessential => Err(ArcGraphError::Internal(
                    "relabel produced an inessential arc".into(),
                )),
                n => Ok(form_from_normalized(to, n).unwrap()),
            }
        }
    }
}

/// Geometric intersection number of two arc classes in the same frame:
/// tighten `a` to an edge, transport `b`, and read the crossing count
/// there.  Taut forms realize minimal position against every edge, so no
/// further correction applies.
pub fn intersection_number(t: &IdealTriangulation, a: &ArcClass, b: &ArcClass) -> Result<u64> {
    a.check_frame(t)?;
    b.check_frame(t)?;
    if a == b {
        return Ok(0);
    }
    let tightened = tighten(t, &a.form)?;
    let moved = transport_along(&tightened.frames, &tightened.transcript, &b.form)?;
    Ok(match moved {
        ArcForm::EdgeParallel(_) => 0,
        ArcForm::Transverse { coords, .. } => coords[tightened.edge as usize] as u64,
    })
}

/// Components of the complement of an arc.
pub fn complement_components(
    t: &IdealTriangulation,
    a: &ArcClass,
) -> Result<crate::surface::CutResult> {
    a.check_frame(t)?;
    let tightened = tighten(t, &a.form)?;
    Ok(tightened.final_frame().cut_along_edge(tightened.edge))
}

/// A closed normal curve: per-edge crossing counts, no terminals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalCurve {
    pub frame: u64,
    pub coords: Vec<u32>,
}

impl NormalCurve {
    pub fn new(t: &IdealTriangulation, coords: Vec<u32>) -> Result<Self> {
        let c = NormalCurve {
            frame: t.fingerprint(),
            coords,
        };
        c.validate(t)?;
        Ok(c)
    }

    pub fn validate(&self, t: &IdealTriangulation) -> Result<()> {
        if self.coords.len() != t.num_edges() {
            return Err(ArcGraphError::Internal("curve coordinate length".into()));
        }
        for tri in 0..t.num_triangles() as u32 {
            let x = |s: u8| self.coords[t.edge_of(Side::new(tri, s)) as usize] as i64;
            for c in 0..3u8 {
                let num = x((c + 1) % 3) + x((c + 2) % 3) - x(c);
                if num < 0 || num % 2 != 0 {
                    return Err(ArcGraphError::Internal(format!(
                        "curve matching fails at triangle {tri} corner {c}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Transport across a flip by the tropical corner rule.
    pub fn transport(&self, t: &IdealTriangulation, step: &FlipStep) -> Result<NormalCurve> {
        let q = &step.quad;
        let x = |s: Side| self.coords[t.edge_of(s) as usize] as i64;
        let e = q.e;
        let new_val = (x(q.outer_s12()) + x(q.outer_s34()))
            .max(x(q.outer_s23()) + x(q.outer_s41()))
            - self.coords[e as usize] as i64;
        let mut coords = self.coords.clone();
        coords[e as usize] = new_val as u32;
        NormalCurve::new(&step.new_frame, coords)
    }

    /// Number of components.
    pub fn num_components(&self, t: &IdealTriangulation) -> Result<usize> {
        let stats = triangle_stats(t, &self.coords, &[])?;
        let layout = SlotLayout { t, coords: &self.coords, stats: &stats };
        let total: u64 = stats.a.iter().map(|&x| x as u64).sum();
        if total == 0 {
            return Ok(0);
        }
        let mut visited = std::collections::BTreeSet::new();
        let mut comps = 0;
        for tri in 0..t.num_triangles() as u32 {
            for corner in 0..3u8 {
                let c0 = Corner::new(tri, corner);
                for k0 in 0..stats.a[c0.slot()] {
                    if visited.contains(&(c0.slot(), k0)) {
                        continue;
                    }
                    comps += 1;
                    // walk forward, exiting each strand through the side it
                    // was not entered through
                    let mut side = Side::new(c0.tri, (c0.corner + 2) % 3);
                    let mut q = k0;
                    visited.insert((c0.slot(), k0));
                    loop {
                        let partner = t.glued(side);
                        let x = self.coords[t.edge_of(side) as usize];
                        let pq = x - 1 - q;
                        match layout.strand_at(partner, pq) {
                            StrandAt::CornerArc(corner2, k2) => {
                                let c2 = Corner::new(partner.tri, corner2);
                                if !visited.insert((c2.slot(), k2)) {
                                    break;
                                }
                                let (ns, nq) = layout.corner_arc_other(c2, k2, partner);
                                side = ns;
                                q = nq;
                            }
                            StrandAt::Terminal(_, _) => {
                                return Err(ArcGraphError::Internal(
                                    "closed curve hit a terminal".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{base_triangulation, SurfaceSig};

    fn torus() -> IdealTriangulation {
        base_triangulation(&SurfaceSig::new(1, vec!["w".into()]).unwrap()).unwrap()
    }

    #[test]
    fn decode_roundtrip_single_crossing() {
        let t = torus();
        for tri in 0..t.num_triangles() as u32 {
            for side in 0..3u8 {
                let s = Side::new(tri, side);
                let entry = t.glued(s);
                let d = DrawnArc {
                    start: Corner::new(tri, side),
                    steps: vec![s],
                    end: Corner::new(entry.tri, entry.side),
                };
                let n = d.clone().normalize(&t).unwrap();
                let form = form_from_normalized(&t, n).unwrap();
                if let ArcForm::Transverse { coords, ends } = &form {
                    let dec = decode(&t, coords, *ends).unwrap();
                    assert_eq!(dec.crossings.len(), 1);
                    let d2 = dec.drawn();
                    let n2 = d2.normalize(&t).unwrap();
                    assert_eq!(form_from_normalized(&t, n2).unwrap(), form);
                }
            }
        }
    }

    #[test]
    fn edges_are_disjoint_classes() {
        let t = torus();
        for e1 in 0..3u32 {
            for e2 in 0..3u32 {
                let a = ArcClass::new(&t, ArcForm::EdgeParallel(e1));
                let b = ArcClass::new(&t, ArcForm::EdgeParallel(e2));
                assert_eq!(intersection_number(&t, &a, &b).unwrap(), 0);
            }
        }
    }
}
