//! Prescribing graphs on the boundary components and the exact
//! classification of the prescribed arc graph.

use crate::error::{ArcGraphError, Result};
use crate::surface::SurfaceSig;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A relation on the boundary labels: a graph with loops allowed and no
/// multi-edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrescribingGraph {
    pub vertices: Vec<String>,
    /// Unordered pairs, stored sorted; loops as (v, v).
    pub edges: BTreeSet<(String, String)>,
}

impl PrescribingGraph {
    pub fn new<I, P>(vertices: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<(String, String)>,
    {
        let vset: BTreeSet<&String> = vertices.iter().collect();
        if vset.len() != vertices.len() {
            return Err(ArcGraphError::LabelMismatch);
        }
        let mut set = BTreeSet::new();
        for pair in edges {
            let (u, v) = pair.into();
            if !vset.contains(&u) {
                return Err(ArcGraphError::UnknownLabel(u));
            }
            if !vset.contains(&v) {
                return Err(ArcGraphError::UnknownLabel(v));
            }
            let (a, b) = if u <= v { (u, v) } else { (v, u) };
            set.insert((a, b));
        }
        Ok(PrescribingGraph {
            vertices,
            edges: set,
        })
    }

    pub fn from_pairs(vertices: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        PrescribingGraph::new(
            vertices.iter().map(|s| s.to_string()).collect(),
            pairs
                .iter()
                .map(|(u, v)| (u.to_string(), v.to_string())),
        )
    }

    /// Complete graph with all loops.
    pub fn complete_with_loops(vertices: &[&str]) -> Self {
        let mut edges = BTreeSet::new();
        for (i, u) in vertices.iter().enumerate() {
            for v in &vertices[i..] {
                let (a, b) = if u <= v { (*u, *v) } else { (*v, *u) };
                edges.insert((a.to_string(), b.to_string()));
            }
        }
        PrescribingGraph {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges,
        }
    }

    /// n-pointed star centred at `center`.
    pub fn star(center: &str, leaves: &[&str]) -> Self {
        let mut vertices = vec![center.to_string()];
        vertices.extend(leaves.iter().map(|s| s.to_string()));
        let edges = leaves
            .iter()
            .map(|l| {
                let (a, b) = if center <= *l { (center, *l) } else { (*l, center) };
                (a.to_string(), b.to_string())
            })
            .collect();
        PrescribingGraph { vertices, edges }
    }

    /// Cycle through the listed vertices.
    pub fn cycle(vertices: &[&str]) -> Self {
        let mut edges = BTreeSet::new();
        let n = vertices.len();
        for i in 0..n {
            let (u, v) = (vertices[i], vertices[(i + 1) % n]);
            let (a, b) = if u <= v { (u, v) } else { (v, u) };
            edges.insert((a.to_string(), b.to_string()));
        }
        PrescribingGraph {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges,
        }
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        self.edges.contains(&(a.to_string(), b.to_string()))
    }

    pub fn has_loop_at(&self, v: &str) -> bool {
        self.edges.contains(&(v.to_string(), v.to_string()))
    }

    pub fn loops(&self) -> Vec<String> {
        self.edges
            .iter()
            .filter(|(u, v)| u == v)
            .map(|(u, _)| u.clone())
            .collect()
    }

    pub fn non_loop_edges(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .filter(|(u, v)| u != v)
            .cloned()
            .collect()
    }

    /// True iff the endpoint pair of an arc is allowed.
    pub fn is_allowed(&self, u: &str, v: &str) -> Result<bool> {
        if !self.vertices.contains(&u.to_string()) {
            return Err(ArcGraphError::UnknownLabel(u.to_string()));
        }
        if !self.vertices.contains(&v.to_string()) {
            return Err(ArcGraphError::UnknownLabel(v.to_string()));
        }
        Ok(self.has_edge(u, v))
    }
}

/// Structural profile of a prescribing graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaProfile {
    pub loop_free: bool,
    pub bipartite: bool,
    /// Witness bipartition when bipartite (isolated vertices in the second
    /// part).
    pub bipartition: Option<(Vec<String>, Vec<String>)>,
    /// An odd cycle when loop-free but not bipartite.
    pub odd_cycle_witness: Option<Vec<String>>,
    /// Centre when the graph is an n-pointed star, n >= 1.
    pub star_center: Option<String>,
    pub has_edge: bool,
}

/// Analyze loops, bipartiteness (with witness), and star shape.
pub fn analyze_gamma(g: &PrescribingGraph) -> GammaProfile {
    let loops = g.loops();
    let loop_free = loops.is_empty();
    let has_edge = !g.edges.is_empty();

    // adjacency over non-loop edges
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for v in &g.vertices {
        adj.entry(v.as_str()).or_default();
    }
    for (u, v) in &g.edges {
        if u != v {
            adj.get_mut(u.as_str()).unwrap().push(v.as_str());
            adj.get_mut(v.as_str()).unwrap().push(u.as_str());
        }
    }

    // 2-coloring with parent tracking for an odd-cycle witness
    let mut color: BTreeMap<&str, u8> = BTreeMap::new();
    let mut parent: BTreeMap<&str, &str> = BTreeMap::new();
    let mut odd_cycle = None;
    'components: for v0 in g.vertices.iter() {
        let v0 = v0.as_str();
        if color.contains_key(v0) {
            continue;
        }
        color.insert(v0, 0);
        let mut queue = std::collections::VecDeque::from([v0]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u];
            for &w in &adj[u] {
                match color.get(w) {
                    None => {
                        color.insert(w, 1 - cu);
                        parent.insert(w, u);
                        queue.push_back(w);
                    }
                    Some(&cw) if cw == cu => {
                        // reconstruct an odd cycle through u and w
                        fn path_to_root<'a>(
                            parent: &BTreeMap<&'a str, &'a str>,
                            mut x: &'a str,
                        ) -> Vec<&'a str> {
                            let mut p = vec![x];
                            while let Some(&px) = parent.get(x) {
                                p.push(px);
                                x = px;
                            }
                            p
                        }
                        let pu = path_to_root(&parent, u);
                        let pw = path_to_root(&parent, w);
                        let su: BTreeSet<&&str> = pu.iter().collect();
                        let lca = *pw.iter().find(|x| su.contains(x)).unwrap();
                        let mut cyc: Vec<String> = pu
                            .iter()
                            .take_while(|x| **x != lca)
                            .map(|s| s.to_string())
                            .collect();
                        cyc.push(lca.to_string());
                        let mut tail: Vec<String> = pw
                            .iter()
                            .take_while(|x| **x != lca)
                            .map(|s| s.to_string())
                            .collect();
                        tail.reverse();
                        cyc.extend(tail);
                        odd_cycle = Some(cyc);
                        break 'components;
                    }
                    _ => {}
                }
            }
        }
    }

    let two_colorable = odd_cycle.is_none();
    let bipartite = loop_free && two_colorable;
    let bipartition = if bipartite && has_edge {
        let mut x1 = Vec::new();
        let mut x2 = Vec::new();
        for v in &g.vertices {
            let isolated = adj[v.as_str()].is_empty();
            if isolated {
                x2.push(v.clone());
            } else if color[v.as_str()] == 0 {
                x1.push(v.clone());
            } else {
                x2.push(v.clone());
            }
        }
        Some((x1, x2))
    } else {
        None
    };

    // star detection: loop-free, one centre adjacent to all others, no
    // other edges, every leaf's only neighbour is the centre
    let star_center = if loop_free && has_edge {
        let n = g.vertices.len();
        g.vertices
            .iter()
            .find(|c| {
                let deg_c = adj[c.as_str()].len();
                deg_c == n - 1
                    && g.vertices
                        .iter()
                        .filter(|v| v != c)
                        .all(|v| adj[v.as_str()] == vec![c.as_str()])
            })
            .cloned()
    } else {
        None
    };

    GammaProfile {
        loop_free,
        bipartite,
        bipartition,
        odd_cycle_witness: if loop_free { odd_cycle } else { None },
        star_center,
        has_edge,
    }
}

/// Verdict record for one (surface, prescribing graph) instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// Set when the graph is empty, a singleton, or finite.
    pub trivial: Option<TrivialKind>,
    pub connected: Option<bool>,
    pub infinite_diameter: Option<bool>,
    pub hyperbolic: Option<bool>,
    pub case_tag: String,
    /// Free-form caveats (for instance, the four-holed-sphere quasi-tree
    /// refinement over the blanket bipartite rule).
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TrivialKind {
    /// No allowed arcs at all.
    Empty,
    /// Exactly one vertex.
    Singleton,
    /// Finitely many vertices.
    Finite,
}

/// Exact decision table for connectivity, diameter, and hyperbolicity.
pub fn classify(s: &SurfaceSig, g: &PrescribingGraph) -> Result<Classification> {
    if g.vertices != s.boundary {
        return Err(ArcGraphError::LabelMismatch);
    }
    let chi = s.euler_char();
    let b = s.boundary.len();
    let genus = s.genus;
    let profile = analyze_gamma(g);

    let mut notes = Vec::new();

    if chi >= 0 {
        // disk or annulus: empty or a singleton
        let kind = if b == 2 && genus == 0 && g.has_edge(&s.boundary[0], &s.boundary[1]) {
            TrivialKind::Singleton
        } else {
            TrivialKind::Empty
        };
        return Ok(Classification {
            trivial: Some(kind),
            connected: None,
            infinite_diameter: None,
            hyperbolic: None,
            case_tag: "trivialLowComplexity".into(),
            notes,
        });
    }
    if !profile.has_edge {
        return Ok(Classification {
            trivial: Some(TrivialKind::Empty),
            connected: None,
            infinite_diameter: None,
            hyperbolic: None,
            case_tag: "trivialNoEdges".into(),
            notes,
        });
    }
    if genus == 0 && b == 3 {
        return Ok(Classification {
            trivial: Some(TrivialKind::Finite),
            connected: None,
            infinite_diameter: None,
            hyperbolic: None,
            case_tag: "trivialThriceHoledSphere".into(),
            notes,
        });
    }

    // non-trivial: connected with infinite diameter, hyperbolicity by case
    let (hyperbolic, case_tag) = if genus == 1 && b == 1 {
        (true, "farey")
    } else if genus == 0 && b == 4 {
        if profile.bipartite && profile.star_center.is_none() {
            notes.push(
                "four-holed sphere with bipartite non-star relation: hyperbolic \
                 as a quasi-tree, refining the blanket bipartite rule"
                    .into(),
            );
        }
        (true, "quasiTree")
    } else if genus == 1 && b == 2 {
        let loops = g.loops();
        let non_loop = g.non_loop_edges();
        if non_loop.len() == 1 && loops.is_empty() {
            (true, "sigma12NonLoopEdge")
        } else if non_loop.is_empty() && loops.len() == 1 {
            (true, "singleLoop")
        } else if non_loop.is_empty() && loops.len() == 2 {
            (true, "sigma12TwoLoops")
        } else {
            // contains a loop plus a non-loop edge: not bipartite
            (true, "loopNotBipartite")
        }
    } else if profile.star_center.is_some() && genus == 0 {
        (true, "star")
    } else if !profile.bipartite {
        let tag = if !profile.loop_free {
            "loopNotBipartite"
        } else {
            "oddCycle"
        };
        (true, tag)
    } else {
        (false, "bipartiteWitnesses")
    };

    Ok(Classification {
        trivial: None,
        connected: Some(true),
        infinite_diameter: Some(true),
        hyperbolic: Some(hyperbolic),
        case_tag: case_tag.into(),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(g: u32, labels: &[&str]) -> SurfaceSig {
        SurfaceSig::new(g, labels.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn star_profile() {
        let g = PrescribingGraph::star("c", &["v1", "v2", "v3", "v4"]);
        let p = analyze_gamma(&g);
        assert!(p.bipartite);
        assert_eq!(p.star_center.as_deref(), Some("c"));
    }

    #[test]
    fn loop_kills_bipartiteness() {
        let g = PrescribingGraph::from_pairs(&["w"], &[("w", "w")]).unwrap();
        let p = analyze_gamma(&g);
        assert!(!p.loop_free);
        assert!(!p.bipartite);
    }

    #[test]
    fn triangle_has_odd_cycle() {
        let g = PrescribingGraph::from_pairs(
            &["v1", "v2", "v3", "v4"],
            &[("v1", "v2"), ("v2", "v3"), ("v1", "v3")],
        )
        .unwrap();
        let p = analyze_gamma(&g);
        assert!(p.loop_free);
        assert!(!p.bipartite);
        let cyc = p.odd_cycle_witness.unwrap();
        assert_eq!(cyc.len() % 2, 1);
        assert_eq!(cyc.len(), 3);
    }

    #[test]
    fn bipartition_is_independent() {
        let g = PrescribingGraph::cycle(&["v1", "v2", "v3", "v4"]);
        let p = analyze_gamma(&g);
        let (x1, x2) = p.bipartition.unwrap();
        for part in [&x1, &x2] {
            for u in part {
                for v in part {
                    assert!(!g.has_edge(u, v), "{u}-{v} inside a part");
                }
            }
        }
    }

    #[test]
    fn classify_table_spot_checks() {
        // five-holed sphere with a 4-star: hyperbolic, star case
        let s = sig(0, &["c", "v1", "v2", "v3", "v4"]);
        let mut g = PrescribingGraph::star("c", &["v1", "v2", "v3", "v4"]);
        g.vertices = s.boundary.clone();
        let c = classify(&s, &g).unwrap();
        assert_eq!(c.hyperbolic, Some(true));
        assert_eq!(c.case_tag, "star");

        // C4 plus isolated centre: bipartite, not a star -> not hyperbolic
        let g = PrescribingGraph::from_pairs(
            &["c", "v1", "v2", "v3", "v4"],
            &[("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v1", "v4")],
        )
        .unwrap();
        let c = classify(&s, &g).unwrap();
        assert_eq!(c.hyperbolic, Some(false));
        assert_eq!(c.connected, Some(true));
        assert_eq!(c.infinite_diameter, Some(true));

        // once-holed torus with the loop: Farey
        let s = sig(1, &["w"]);
        let g = PrescribingGraph::from_pairs(&["w"], &[("w", "w")]).unwrap();
        let c = classify(&s, &g).unwrap();
        assert_eq!(c.hyperbolic, Some(true));
        assert_eq!(c.case_tag, "farey");

        // four-holed sphere, two disjoint edges: quasi-tree
        let s = sig(0, &["a", "b", "c", "d"]);
        let g = PrescribingGraph::from_pairs(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("c", "d")],
        )
        .unwrap();
        let c = classify(&s, &g).unwrap();
        assert_eq!(c.hyperbolic, Some(true));
        assert_eq!(c.case_tag, "quasiTree");
        assert!(!c.notes.is_empty());
    }
}
