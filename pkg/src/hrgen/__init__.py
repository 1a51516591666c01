"""Uniform random generation of hypergraphs from hyperedge replacement grammars.

Pipeline: normalize a grammar to Chomsky normal form (`cnf.to_cnf`),
precompute exact derivation-count tables (`counting.pre`), then draw
size-n members of the language uniformly at random (`sampler.gen`).
An exhaustive enumeration oracle (`oracle`) provides independent ground
truth for counts, ambiguity and uniformity at small sizes.
"""

from .hypergraph import (
    CANONICAL_SIZE_BOUND,
    Hyperedge,
    Hypergraph,
    HypergraphError,
    canonical_form,
    graph,
    handle,
    is_isomorphic,
    replace,
    replace_all,
    size,
    validate,
)
from .grammar import (
    DerivationTree,
    Grammar,
    GrammarError,
    Production,
    direct_derive,
    grammar_from_json,
    grammar_to_json,
    has_start_empty_production,
    is_non_contracting,
    leftmost_sequence,
    validate_grammar,
    yield_of,
)
from .cnf import LAMBDA, NONTERMINAL, TERMINAL, Shorthand, is_cnf, shorthand, to_cnf
from .counting import (
    CountError,
    CountTables,
    grammar_digest,
    pre,
    production_weights,
    table_lookup,
    tables_from_json,
    tables_to_json,
)
from .sampler import (
    EmptySliceError,
    RandomSource,
    SampleReport,
    TablesMismatchError,
    gen,
    sample_many,
)
from .oracle import (
    AmbiguityVerdict,
    OracleError,
    SliceCensus,
    TreeEnumerator,
    census,
    check_n_ambiguity,
    enumerate_trees,
)
from . import fixtures

__all__ = [name for name in dir() if not name.startswith("_")]
