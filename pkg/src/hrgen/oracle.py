"""Exhaustive enumeration of derivation trees at small sizes.

This is the independent ground truth the rest of the package is checked
against: it never consults count tables.  Enumeration works on any
validated grammar (not only CNF ones) by distributing an exact size
budget over the nonterminal edges of each production; a guard raises if
the recursion is not size-well-founded (a cycle of productions that
consumes no budget would admit infinitely many trees).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from . import hypergraph
from .grammar import DerivationTree, Grammar, yield_of

DEFAULT_SIZE_CAP = 14
ORACLE_CAP_ENV = "HRGEN_ORACLE_CAP"


class OracleError(Exception):
    """Cap exceeded or enumeration not well-founded."""


def default_cap() -> int:
    value = os.environ.get(ORACLE_CAP_ENV)
    return int(value) if value else DEFAULT_SIZE_CAP


@dataclass
class CensusEntry:
    multiplicity: int
    witness: DerivationTree
    second: DerivationTree | None = None  # kept as an ambiguity certificate


@dataclass
class SliceCensus:
    """Language slice keyed by canonical form, with tree multiplicities."""
    entries: dict[bytes, CensusEntry]
    total_trees: int
    total_graphs: int


@dataclass
class AmbiguityVerdict:
    size: int
    ambiguous: bool
    witnesses: tuple[DerivationTree, DerivationTree] | None = None


class TreeEnumerator:
    """Memoized enumeration of ordered derivation trees by yield size.

    The memo is keyed by (nonterminal, budget) where the budget is the
    yield size minus the nonterminal's type; it may be shared across
    many queries on the same grammar.
    """

    def __init__(self, g: Grammar, cap: int | None = None):
        self.grammar = g
        self.cap = default_cap() if cap is None else cap
        self._memo: dict[tuple[str, int], tuple[DerivationTree, ...]] = {}
        self._busy: set[tuple[str, int]] = set()
        nts = set(g.nonterminals)
        self._per_production = []
        for p in g.productions:
            children = [e.label for e in p.rhs.edges if e.label in nts]
            # Every tree node contributes its internal nodes plus its
            # terminal edges to the yield size; the children share the rest.
            own = p.internal_count() + (len(p.rhs.edges) - len(children))
            self._per_production.append((p, own, children))
        self._by_lhs: dict[str, list[tuple]] = {}
        for item in self._per_production:
            self._by_lhs.setdefault(item[0].lhs, []).append(item)

    def trees(self, nonterminal: str, n: int) -> list[DerivationTree]:
        """All ordered derivation trees from ``nonterminal`` whose yield
        has size exactly ``n``."""
        if n > self.cap:
            raise OracleError(
                f"size {n} exceeds the oracle cap {self.cap}"
                f" (override with {ORACLE_CAP_ENV} or the cap argument)")
        arity = self.grammar.typing[nonterminal]
        if n < arity:
            return []
        return list(self._solve(nonterminal, n - arity))

    def _solve(self, symbol: str, budget: int) -> tuple[DerivationTree, ...]:
        key = (symbol, budget)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if key in self._busy:
            raise OracleError(
                f"enumeration is not size-well-founded at ({symbol}, {budget});"
                " the grammar has a budget-preserving production cycle")
        self._busy.add(key)
        found: list[DerivationTree] = []
        for p, own, children in self._by_lhs.get(symbol, ()):
            rest = budget - own
            if rest < 0:
                continue
            if not children:
                if rest == 0:
                    found.append(DerivationTree(p.name))
                continue
            for parts in _compositions(rest, len(children)):
                pools = [self._solve(c, part) for c, part in zip(children, parts)]
                if all(pools):
                    for combo in itertools.product(*pools):
                        found.append(DerivationTree(p.name, combo))
        self._busy.discard(key)
        result = tuple(found)
        self._memo[key] = result
        return result


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def enumerate_trees(g: Grammar, nonterminal: str, n: int,
                    cap: int | None = None) -> list[DerivationTree]:
    return TreeEnumerator(g, cap).trees(nonterminal, n)


def census(g: Grammar, nonterminal: str, n: int,
           cap: int | None = None,
           enumerator: TreeEnumerator | None = None) -> SliceCensus:
    """Enumerate the slice and bucket trees by their yields' canonical
    forms; multiplicity above one witnesses ambiguity."""
    if enumerator is None:
        enumerator = TreeEnumerator(g, cap)
    trees = enumerator.trees(nonterminal, n)
    entries: dict[bytes, CensusEntry] = {}
    for t in trees:
        form = hypergraph.canonical_form(yield_of(g, t))
        entry = entries.get(form)
        if entry is None:
            entries[form] = CensusEntry(multiplicity=1, witness=t)
        else:
            entry.multiplicity += 1
            if entry.second is None:
                entry.second = t
    return SliceCensus(entries=entries, total_trees=len(trees),
                       total_graphs=len(entries))


def check_n_ambiguity(g: Grammar, n: int, cap: int | None = None,
                      enumerator: TreeEnumerator | None = None) -> AmbiguityVerdict:
    """Exact ambiguity verdict for the size-n slice from the start symbol:
    ambiguous iff two distinct ordered derivation trees yield isomorphic
    graphs, with the witness pair attached."""
    slice_census = census(g, g.start, n, cap=cap, enumerator=enumerator)
    for entry in slice_census.entries.values():
        if entry.multiplicity >= 2:
            assert entry.second is not None
            return AmbiguityVerdict(size=n, ambiguous=True,
                                    witnesses=(entry.witness, entry.second))
    return AmbiguityVerdict(size=n, ambiguous=False)


def census_to_json(c: SliceCensus) -> dict:
    from .grammar import tree_to_json

    return {
        "total_trees": c.total_trees,
        "total_graphs": c.total_graphs,
        "entries": [
            {
                "form": form.hex(),
                "multiplicity": entry.multiplicity,
                "witness": tree_to_json(entry.witness),
            }
            for form, entry in sorted(c.entries.items())
        ],
    }
