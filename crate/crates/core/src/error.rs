use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop ({0}, {0}) is not allowed")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("graph is not a co-union of disjoint cliques")]
    NotCoCluster,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct DimacsError {
    pub line: usize,
    pub msg: String,
}

impl DimacsError {
    pub fn new(line: usize, msg: impl Into<String>) -> Self {
        DimacsError {
            line,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {0} appears in both blocks")]
    Overlap(usize),
    #[error("vertex {0} appears in neither block")]
    Missing(usize),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    OutOfRange(usize, usize),
}

/// An exhaustive operation was asked to run past its vertex bound.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("graph on {n} vertices exceeds the brute-force bound of {bound}")]
pub struct CapacityError {
    pub n: usize,
    pub bound: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrientationError {
    #[error("arc ({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("edge ({0}, {1}) oriented more than once")]
    DoubleOriented(usize, usize),
    #[error("edge ({0}, {1}) left unoriented")]
    Unoriented(usize, usize),
    #[error("orientation is not transitive: {0} -> {1} -> {2} does not close")]
    NotTransitive(usize, usize, usize),
}

/// The five clause-gadget contract checks, in verification order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractCheck {
    /// Every monopolar partition has exactly one terminal on the right.
    G1,
    /// Exactly three monopolar partitions, one per right terminal.
    G2,
    /// The stored orientation is transitive with all terminals as sinks.
    G3,
    /// The gadget graph is K4-free.
    G4,
    /// The hub is adjacent to all terminals and right in every partition.
    G5,
}

impl std::fmt::Display for ContractCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ContractCheck::G1 => "G1",
            ContractCheck::G2 => "G2",
            ContractCheck::G3 => "G3",
            ContractCheck::G4 => "G4",
            ContractCheck::G5 => "G5",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("expected a 5-vertex graph, got {0} vertices")]
    WrongVertexCount(usize),
    #[error("gadget contract violated at {check}: {detail}")]
    ContractViolation {
        check: ContractCheck,
        detail: String,
    },
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error("no gadget found within bounds (max_n = {0})")]
    SearchExhausted(usize),
    #[error("gadget bundle: {0}")]
    Bundle(String),
    #[error(transparent)]
    Orientation(#[from] OrientationError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("negated literal not allowed")]
    NegatedLiteral,
    #[error("clause must contain exactly three literals, got {0}")]
    Arity(usize),
    #[error("repeated variable in clause")]
    RepeatedVariable,
    #[error("variable {0} out of range 1..={1}")]
    VarOutOfRange(usize, usize),
    #[error("{0}")]
    Malformed(String),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<FormulaError>,
    },
}

impl FormulaError {
    pub fn at_line(self, line: usize) -> Self {
        FormulaError::AtLine {
            line,
            source: Box::new(self),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("clause gadget failed certification: {0}")]
    UncertifiedGadget(#[from] GadgetError),
    #[error("assignment is not a 1-in-3 model: clause {clause} has {true_count} true literals")]
    NotOneInThree { clause: usize, true_count: usize },
    #[error("assignment has {got} values but the formula has {expected} variables")]
    LengthMismatch { got: usize, expected: usize },
    #[error("not a valid monopolar partition of the reduction graph")]
    InvalidPartition,
    #[error(transparent)]
    Partition(#[from] PartitionError),
}
