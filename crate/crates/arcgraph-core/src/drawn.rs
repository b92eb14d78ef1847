//! Drawn arcs: concrete transverse positions of arcs with respect to an
//! ideal triangulation, and their reduction to taut (normal) position.
//!
//! A drawn arc starts in a corner sector, crosses a sequence of sides, and
//! ends in a corner sector.  Two reductions produce the taut form:
//!
//! * trivial returns — the arc crosses a side and immediately crosses back
//!   (a bigon against the edge), and
//! * end swings — the first (or last) crossing is over a side adjacent to
//!   the start (or end) corner, so the endpoint can rotate around its
//!   puncture past that side, losing the crossing.
//!
//! Lifting to the universal cover, the dual graph of the triangulation is a
//! tree and the reductions compute the geodesic between the two endpoint
//! horocycles, so the taut form is unique in the isotopy class and realizes
//! the minimal crossing count with every edge simultaneously.  The input
//! does not need to be embedded: any immersed drawing of a simple arc
//! reduces to the same taut form.

use crate::error::{ArcGraphError, Result};
use crate::surface::{Corner, EdgeId, IdealTriangulation, Side};
use serde::{Deserialize, Serialize};

/// A concrete drawing of an arc: start sector, exit sides in order, end
/// sector.  `steps[i]` is the (triangle, side) slot through which the arc
/// leaves the triangle it currently occupies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawnArc {
    pub start: Corner,
    pub steps: Vec<Side>,
    pub end: Corner,
}

/// Outcome of reduction to taut position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    /// Taut with at least one crossing.
    Taut(DrawnArc),
    /// The class of an edge of the triangulation.
    EdgeParallel(EdgeId),
    /// Bounds a half-disk; not a vertex of any arc graph.
    Inessential,
}

impl DrawnArc {
    /// Checks that the drawing is a valid walk.
    pub fn validate(&self, t: &IdealTriangulation) -> Result<()> {
        let mut tri = self.start.tri;
        if tri as usize >= t.num_triangles() {
            return Err(ArcGraphError::InvalidWalk("start triangle out of range".into()));
        }
        for (i, s) in self.steps.iter().enumerate() {
            if s.tri != tri {
                return Err(ArcGraphError::InvalidWalk(format!(
                    "step {i} exits triangle {} but the arc is in triangle {tri}",
                    s.tri
                )));
            }
            tri = t.glued(*s).tri;
        }
        if self.end.tri != tri {
            return Err(ArcGraphError::InvalidWalk(format!(
                "end corner lies in triangle {} but the walk finishes in {tri}",
                self.end.tri
            )));
        }
        Ok(())
    }

    /// Reverse with re-expression of each crossing from the other side.
    pub fn reversed_in(&self, t: &IdealTriangulation) -> DrawnArc {
        let steps = self.steps.iter().rev().map(|s| t.glued(*s)).collect();
        DrawnArc {
            start: self.end,
            steps,
            end: self.start,
        }
    }

    /// Reduce to taut position.
    pub fn normalize(mut self, t: &IdealTriangulation) -> Result<Normalized> {
        self.validate(t)?;
        loop {
            let mut changed = false;

            // trivial returns: exit through a side and come straight back
            let mut i = 0;
            while i + 1 < self.steps.len() {
                if self.steps[i + 1] == t.glued(self.steps[i]) {
                    self.steps.drain(i..=i + 1);
                    changed = true;
                    i = i.saturating_sub(2);
                } else {
                    i += 1;
                }
            }

            // end swings at the start
            while let Some(&first) = self.steps.first() {
                if first.side != self.start.corner {
                    self.start = t.corner_across(first, self.start);
                    self.steps.remove(0);
                    changed = true;
                } else {
                    break;
                }
            }

            // end swings at the end
            while let Some(&last) = self.steps.last() {
                let entry = t.glued(last);
                if entry.side != self.end.corner {
                    self.end = t.corner_across(entry, self.end);
                    self.steps.pop();
                    changed = true;
                } else {
                    break;
                }
            }

            if !changed {
                break;
            }
        }

        if self.steps.is_empty() {
            if self.start.tri != self.end.tri {
                return Err(ArcGraphError::Internal(
                    "crossing-free walk spans two triangles".into(),
                ));
            }
            if self.start.corner == self.end.corner {
                return Ok(Normalized::Inessential);
            }
            // parallel to the side joining the two corners
            let side = 3 - self.start.corner - self.end.corner;
            let e = t.edge_of(Side::new(self.start.tri, side));
            return Ok(Normalized::EdgeParallel(e));
        }
        Ok(Normalized::Taut(self))
    }
}

/// Input format for externally supplied arcs: edge ids crossed in order,
/// with the terminating punctures.  Corners may be given to disambiguate;
/// when omitted, the lexicographically smallest valid choice is taken.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossingSequence {
    pub start_label: String,
    #[serde(default)]
    pub start_corner: Option<Corner>,
    pub edges: Vec<EdgeId>,
    pub end_label: String,
    #[serde(default)]
    pub end_corner: Option<Corner>,
}

impl CrossingSequence {
    /// Resolve to a drawn arc.
    pub fn resolve(&self, t: &IdealTriangulation) -> Result<DrawnArc> {
        let start_p = t.sig().label_index(&self.start_label)?;
        let end_p = t.sig().label_index(&self.end_label)?;

        let start = match self.start_corner {
            Some(c) => {
                if t.puncture_at(c) != start_p {
                    return Err(ArcGraphError::InvalidWalk(
                        "start corner is not at the stated puncture".into(),
                    ));
                }
                c
            }
            None => {
                if self.edges.is_empty() {
                    return Err(ArcGraphError::InvalidWalk(
                        "crossing-free sequences need explicit corners".into(),
                    ));
                }
                let e = self.edges[0];
                let mut found = None;
                'outer: for tri in 0..t.num_triangles() as u32 {
                    for corner in 0..3u8 {
                        let c = Corner::new(tri, corner);
                        if t.puncture_at(c) == start_p && t.edge_of(c.opposite_side()) == e {
                            found = Some(c);
                            break 'outer;
                        }
                    }
                }
                found.ok_or_else(|| {
                    ArcGraphError::InvalidWalk(format!(
                        "no sector at `{}` faces edge {}",
                        self.start_label, self.edges[0]
                    ))
                })?
            }
        };

        let mut steps = Vec::with_capacity(self.edges.len());
        let mut tri = start.tri;
        for (i, &e) in self.edges.iter().enumerate() {
            if e as usize >= t.num_edges() {
                return Err(ArcGraphError::InvalidWalk(format!("edge {e} out of range")));
            }
            let [sa, sb] = t.edge_sides(e);
            let candidates: Vec<Side> = [sa, sb].into_iter().filter(|s| s.tri == tri).collect();
            let side = *candidates.first().ok_or_else(|| {
                ArcGraphError::InvalidWalk(format!(
                    "step {i}: edge {e} is not a side of triangle {tri}"
                ))
            })?;
            steps.push(side);
            tri = t.glued(side).tri;
        }

        let end = match self.end_corner {
            Some(c) => {
                if t.puncture_at(c) != end_p {
                    return Err(ArcGraphError::InvalidWalk(
                        "end corner is not at the stated puncture".into(),
                    ));
                }
                c
            }
            None => {
                let entry = t.glued(*steps.last().ok_or_else(|| {
                    ArcGraphError::InvalidWalk(
                        "crossing-free sequences need explicit corners".into(),
                    )
                })?);
                let c = Corner::new(entry.tri, entry.side);
                if t.puncture_at(c) != end_p {
                    return Err(ArcGraphError::InvalidWalk(
                        "final edge does not face the stated end puncture".into(),
                    ));
                }
                c
            }
        };

        let d = DrawnArc { start, steps, end };
        d.validate(t)?;
        Ok(d)
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
    fn bigon_cancels() {
        let t = torus();
        let s = Side::new(0, 0);
        let back = t.glued(s);
        let start = Corner::new(0, 0);
        let arc = DrawnArc {
            start,
            steps: vec![s, back],
            end: start,
        };
        assert_eq!(arc.normalize(&t).unwrap(), Normalized::Inessential);
    }

    #[test]
    fn idempotent_on_taut() {
        let t = torus();
        let s = Side::new(0, 0);
        let entry = t.glued(s);
        let arc = DrawnArc {
            start: Corner::new(0, 0),
            steps: vec![s],
            end: Corner::new(entry.tri, entry.side),
        };
        let out = arc.clone().normalize(&t).unwrap();
        assert_eq!(out, Normalized::Taut(arc));
    }

    #[test]
    fn crossing_free_classifies() {
        let t = torus();
        let e = t.edge_of(Side::new(0, 2));
        let arc = DrawnArc {
            start: Corner::new(0, 0),
            steps: vec![],
            end: Corner::new(0, 1),
        };
        assert_eq!(arc.normalize(&t).unwrap(), Normalized::EdgeParallel(e));
    }
}
