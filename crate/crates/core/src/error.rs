use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("guard exceeded: {what} needs {needed}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph is not reflexive")]
    NotReflexive,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not fine")]
    NotFine,

    #[error("graph has an isolated vertex {0}")]
    IsolatedVertex(usize),

    #[error("group action is not free")]
    NotFree,

    #[error("action axiom violated: {0}")]
    ActionAxiom(String),

    #[error("actions are over different groups")]
    MismatchedGroups,

    #[error("map is not an endomap of the poset")]
    NotEndomap,

    #[error("map is not a closure map")]
    NotClosureMap,

    #[error("map is not order preserving")]
    NotMonotone,

    #[error("poset relation has a cycle through element {0}")]
    NotAntisymmetric(usize),

    #[error("coloring is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("cache entry corrupt: {0}")]
    CacheCorrupt(String),

    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Size limits for operations whose cost grows exponentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct Guards {
    /// Maximum number of elements of a Hom poset.
    pub hom_elements: usize,
    /// Maximum vertex count of an exponential graph.
    pub exponential_vertices: usize,
    /// Maximum vertex count for subset-exhaustive checks such as fineness.
    pub subset_vertices: usize,
    /// Maximum number of chains in a chain poset or order complex.
    pub chains: usize,
    /// Maximum number of cliques for the clique graph.
    pub cliques: usize,
    /// Maximum number of monotone maps enumerated between two posets.
    pub poset_maps: usize,
    /// Maximum group order when closing generators.
    pub group_order: usize,
    /// Maximum number of faces of a complex handed to homology.
    pub faces: usize,
    /// Maximum nonzeros of the residual matrix handed to dense Smith reduction.
    pub snf_nonzeros: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            hom_elements: 1_000_000,
            exponential_vertices: 100_000,
            subset_vertices: 20,
            chains: 2_000_000,
            cliques: 1_000_000,
            poset_maps: 2_000_000,
            group_order: 10_000,
            faces: 5_000_000,
            snf_nonzeros: 20_000,
        }
    }
}

impl Guards {
    pub(crate) fn check(what: &'static str, needed: usize, limit: usize) -> Result<()> {
        if needed > limit {
            Err(Error::GuardExceeded {
                what,
                needed: needed as u128,
                limit: limit as u128,
            })
        } else {
            Ok(())
        }
    }
}
