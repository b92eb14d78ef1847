//! Computing with isotopy classes of essential simple arcs on punctured
//! surfaces.
//!
//! The library models a compact orientable surface with boundary as a
//! punctured surface carrying an ideal triangulation.  Arcs between
//! punctures are stored in normal coordinates (per-edge crossing counts
//! plus endpoint sectors), which are a complete isotopy invariant once the
//! arc is taut with respect to the triangulation.  On top of that kernel
//! sit:
//!
//! * `prescribing` — prescribing graphs on the boundary components and the
//!   exact classification of the prescribed arc graph (connectivity,
//!   diameter, hyperbolicity).
//! * `unicorns` — unicorn arcs, distance-reducing surgeries, and the
//!   `d(a,b) <= i(a,b) + 1` path machinery.
//! * `explorer` — exhaustive enumeration of finite arc-graph balls, BFS
//!   metrics, delta estimation, slimness and coarse-surjectivity audits.
//! * `witnesses` — witness subsurfaces as partition data and the disjoint
//!   witness pair construction for bipartite prescribing graphs.
//! * `mapclass` — mapping classes as flip loops, Dehn twists, and orbit
//!   growth reports.
//! * `sporadic` — the special maps for the star and two-loop cases.

pub mod drawn;
pub mod error;
pub mod explorer;
pub mod laminations;
pub mod mapclass;
pub mod overlay;
pub mod prescribing;
pub mod report;
pub mod ribbon;
pub mod sporadic;
pub mod surface;
pub mod unicorns;
pub mod witnesses;

pub use error::ArcGraphError;
pub use surface::{Corner, EdgeId, IdealTriangulation, Side, SurfaceSig};
