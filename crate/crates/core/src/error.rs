use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which rail of a two-rail model an endpoint sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rail {
    Top,
    Bottom,
}

impl std::fmt::Display for Rail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rail::Top => f.write_str("top"),
            Rail::Bottom => f.write_str("bottom"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex set contains {0} twice")]
    DuplicateVertex(Vertex),
    #[error("map is not a bijection: {0}")]
    NotBijective(String),

    #[error("coordinate {value} appears twice on the {rail} rail")]
    DuplicateCoordinate { rail: Rail, value: String },
    #[error("trapezoid {0} is degenerate (needs a < b and c < d)")]
    DegenerateTrapezoid(Vertex),
    #[error("trapezoid {0} is not a parallelogram (a - c != b - d)")]
    NotParallelogram(Vertex),
    #[error("vertex {0} has an empty interval")]
    EmptyInterval(Vertex),
    #[error("vertex {0} has a non-positive tolerance")]
    NonPositiveTolerance(Vertex),
    #[error("vertex {0} has a tolerance larger than its interval")]
    UnboundedTolerance(Vertex),
    #[error("representation has {rep} objects but graph has {graph} vertices")]
    IdMismatch { rep: usize, graph: usize },
    #[error("representation disagrees with the graph on {u}-{v}")]
    RepMismatch { u: Vertex, v: Vertex },
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error("ids must be exactly 0..{0}")]
    SparseIds(usize),

    #[error("pairs are not a perfect matching: {0}")]
    InvalidPairs(String),
    #[error("block lines are not isolated in their own slot: {0}")]
    BlockOverlap(String),
    #[error("crossing lines {0} and {1} have equal slope keys")]
    SlopeTie(Vertex, Vertex),
    #[error("representation is not acyclic")]
    NotAcyclic,
    #[error("no order-preserving parallelogram straightening exists")]
    Infeasible,

    #[error("component index {index} out of range ({count} components)")]
    InvalidComponentIndex { index: usize, count: usize },
    #[error("G \\ N[{0}] is empty")]
    NoComponents(Vertex),
    #[error("delta* of vertex {0} is empty")]
    EmptyDeltaStar(Vertex),
    #[error("split step {step}: delta* of vertex {vertex} is empty in the intermediate graph")]
    SplitPrecondition { step: usize, vertex: Vertex },

    #[error("cnf line {line}: {msg}")]
    Cnf { line: usize, msg: String },
    #[error("clause {clause}: {msg}")]
    Clause { clause: usize, msg: String },
    #[error("variable x{0} does not occur in any clause")]
    UnusedVariable(usize),
    #[error("assignment has {got} values, formula has {expected} variables")]
    AssignmentLength { got: usize, expected: usize },

    #[error("{what} = {value} exceeds the limit {limit}")]
    Guard { what: &'static str, value: usize, limit: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
