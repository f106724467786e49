use thiserror::Error;

use crate::hf::Set;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while evaluating set-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("not a Kuratowski pair")]
    NotAPair,
    #[error("argument not in the domain of the function")]
    NotInDomain,
    #[error("function is not single-valued at the argument")]
    NotSingleValued,
    #[error("not a relation: some element is not an ordered pair")]
    NotARelation,
    #[error("not a function")]
    NotAFunction,
    #[error("domain or codomain mismatch")]
    DomainMismatch,
    #[error("function is not injective")]
    NotInjective,

    #[error("powerset of a {0}-element set exceeds the size guard")]
    PowersetTooLarge(usize),
    #[error("element budget of {budget} interned sets exceeded")]
    BudgetExceeded { budget: usize },
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("relation is not well-founded")]
    NotWellFounded,
    #[error("relation is not transitive")]
    NotTransitive,
    #[error("neither zero nor a successor")]
    NotZeroOrSucc,
    #[error("not a natural number")]
    NotANat,

    #[error("operator is not bounded: h(D) is not a subset of D")]
    NotBounded,
    #[error("fixedpoint iteration did not converge within {0} steps")]
    NonConvergence(usize),

    #[error("rank-recursion guard: queried a set of rank {rank}, must be below {bound}")]
    VrecGuard { query: Set, rank: u32, bound: u32 },

    #[error("not a disjoint-sum element")]
    NotASum,
    #[error("not a list")]
    NotAList,
    #[error("not a term")]
    NotATerm,
    #[error("not a tree or forest")]
    NotATF,
    #[error("not the code of a proposition")]
    NotAPropCode,
}

impl Error {
    /// Errors caused by size limits rather than by bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::PowersetTooLarge(_) | Error::BoundExceeded(_)
        )
    }
}
