use crate::model::Vertex;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {0} out of range 1..={1}")]
    OutOfRange(Vertex, usize),
    #[error("triple has a repeated vertex {0}")]
    DegenerateTriple(Vertex),
    #[error("triple {0:?} is not present")]
    TripleAbsent([Vertex; 3]),
    #[error("triple set is not a spanning tree")]
    NotASpanningTree,
    #[error("malformed code: {0}")]
    MalformedCode(String),
    #[error("image sequence is not a bijection")]
    NotBijective,
    #[error("product of oriented triples is not a single long cycle")]
    ProductNotLongCycle,
    #[error("orientation does not cover triple {0:?}")]
    OrientationIncomplete([Vertex; 3]),
    #[error("vertices {0} and {1} have different links")]
    LinkConditionViolated(Vertex, Vertex),
    #[error("matrix dimension {0} is odd")]
    OddDimension(usize),
    #[error("matrix is not antisymmetric at ({0},{1})")]
    NotAntisymmetric(usize, usize),
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("instance has {0} triples, above the cap {1}")]
    TooManyTriples(usize, usize),
    #[error("instance has {0} vertices, above the cap {1}")]
    TooLarge(usize, usize),
    #[error("sequence is not a Hamiltonian cycle")]
    NotHamiltonianCycle,
    #[error("vertex count must be odd")]
    EvenVertexCount,
    #[error("3-graph is not a suspension with the expected apexes")]
    NotASuspension,
    #[error("quasi-perfect matchings live on different vertex sets")]
    MismatchedVertexSets,
    #[error("3-graph is not a partial Steiner triple system")]
    NotPsts,
    #[error("deleted-vertex residue still contains a cycle of triples")]
    CyclesPresent,
    #[error("input decides as 3-Pfaffian; nothing to reduce")]
    NotNonPfaffian,
    #[error("index {0} out of range (only {1} rows enumerated)")]
    IndexOutOfRange(usize, usize),
    #[error("order must be odd, got {0}")]
    EvenOrder(usize),
    #[error("no fixture with index {0}")]
    BadIndex(usize),
    #[error("bad family parameters: {0}")]
    BadParameters(String),
    #[error("no Steiner triple system generator for order {0}")]
    UnsupportedOrder(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
