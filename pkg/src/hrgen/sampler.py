"""Recursive weighted sampling of derivations from count tables.

``gen`` draws a derivation of a size-n hypergraph from a nonterminal:
at budget l it picks a production p with probability m2[p][l]/m1[A][l];
a nonterminal production then picks a split k of the remaining budget
with probability m1[B][k]*m1[C][l'-k]/m2[p][l] and recurses.  For an
n-unambiguous grammar the telescoping product of those choices makes
every size-n member of the language equally likely.

The recursion is run on an explicit stack (budgets can reach the
thousands) and the graph is assembled in one pre-order pass instead of
nested replacements; the result is the same graph the derivation tree
yields, with nodes and edges numbered in discovery order.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Iterator

from .cnf import NONTERMINAL, Shorthand, shorthand
from .counting import CountTables
from .grammar import DerivationTree, Grammar
from .hypergraph import Hyperedge, Hypergraph

# Split-weight sums are re-verified against m2 up to this budget; above
# it the cumulative walk early-exits and only undershoot is detected.
SPLIT_VERIFY_BOUND = 128

_MASK64 = (1 << 64) - 1


class EmptySliceError(Exception):
    """The requested (nonterminal, size) slice of the language is empty."""


class TablesMismatchError(Exception):
    """Weights disagree with the count tables; signals a counting bug."""


class RandomSource:
    """Deterministic seedable randomness with exact bounded draws.

    Wraps the stdlib Mersenne Twister.  ``uniform_below(m)`` returns
    every integer in [0, m) with equal probability for arbitrary
    precision m, by rejection sampling over ``getrandbits``.  ``split``
    derives an independent substream seed via SHA-256 of (seed, index),
    so per-sample streams do not depend on consumption order.
    """

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self._rng = random.Random(self.seed)

    def uniform_below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        bits = bound.bit_length()
        while True:
            value = self._rng.getrandbits(bits)
            if value < bound:
                return value

    def split(self, index: int) -> "RandomSource":
        digest = hashlib.sha256(f"{self.seed}:{index}".encode()).digest()
        return RandomSource(int.from_bytes(digest[:8], "big"))


@dataclass
class SampleReport:
    """One sample plus its audit trail.

    ``choices`` lists (step, production, split-or-None) in leftmost
    derivation order; the tree's yield is isomorphic to ``graph``.
    """
    graph: Hypergraph
    tree: DerivationTree
    choices: list[tuple[int, str, int | None]]


def gen(g: Grammar, tables: CountTables, start: str, n: int,
        rng: RandomSource, shorthands: list[Shorthand] | None = None) -> SampleReport:
    """Sample one size-n hypergraph derivable from ``start``.

    Raises :class:`EmptySliceError` when the slice is empty and
    :class:`TablesMismatchError` when the tables are internally
    inconsistent (weights not summing to the recorded totals).
    """
    if shorthands is None:
        shorthands = shorthand(g)
    if start not in tables.m1:
        raise ValueError(f"unknown nonterminal {start!r}")
    arity = g.typing[start]
    if n < arity:
        raise ValueError(f"size {n} is below type({start}) = {arity}")
    budget = n - arity
    if budget > tables.n_max:
        raise ValueError(f"size {n} needs tables up to {budget}, have {tables.n_max}")
    if tables.m1[start][budget] == 0:
        raise EmptySliceError(f"no size-{n} hypergraph derivable from {start!r}")

    sh_by_name = {sh.name: sh for sh in shorthands}
    by_symbol: dict[str, list[tuple]] = {a: [] for a in tables.m1}
    for p in g.productions:
        by_symbol[p.lhs].append((p, sh_by_name[p.name], tables.m2[p.name]))
    m1 = tables.m1

    nodes = [f"n{i}" for i in range(arity)]
    edges: list[tuple[str, tuple[str, ...]]] = []
    entries: list[tuple[str, list[int]]] = []
    choices: list[tuple[int, str, int | None]] = []

    # frame: (symbol, budget, attachment nodes, parent entry index)
    stack: list[tuple] = [(start, budget, tuple(nodes), None)]
    while stack:
        symbol, l, att, parent = stack.pop()

        total = m1[symbol][l]
        if total <= 0:
            raise TablesMismatchError(f"m1[{symbol}][{l}] = {total} reached while sampling")
        target = rng.uniform_below(total)
        cum = 0
        picked = None
        for p, sh, row in by_symbol[symbol]:
            cum += row[l]
            if picked is None and target < cum:
                picked = (p, sh, row)
        if cum != total:
            raise TablesMismatchError(
                f"production weights for ({symbol}, {l}) sum to {cum}, m1 says {total}")
        assert picked is not None
        p, sh, row = picked

        entry = len(entries)
        entries.append((p.name, []))
        if parent is not None:
            entries[parent][1].append(entry)
        step = entry + 1

        # Wire the right-hand side into the growing graph: externals
        # fuse with the attachment nodes, internals are fresh.
        sub = dict(zip(p.rhs.ext, att))
        for v in p.rhs.nodes:
            if v not in sub:
                fresh = f"n{len(nodes)}"
                sub[v] = fresh
                nodes.append(fresh)

        if sh.kind != NONTERMINAL:
            for e in p.edges_by_rank():
                edges.append((e.label, tuple(sub[v] for v in e.att)))
            choices.append((step, p.name, None))
            continue

        l2 = l - sh.internal
        b_row, c_row = m1[sh.labels[0]], m1[sh.labels[1]]
        split_total = row[l]
        target = rng.uniform_below(split_total)
        cum = 0
        k = None
        for cand in range(1, l2):
            cum += b_row[cand] * c_row[l2 - cand]
            if target < cum:
                k = cand
                break
        if k is None:
            raise TablesMismatchError(
                f"split weights for ({p.name}, {l}) sum below m2 = {split_total}")
        if l2 <= SPLIT_VERIFY_BOUND:
            full = sum(b_row[i] * c_row[l2 - i] for i in range(1, l2))
            if full != split_total:
                raise TablesMismatchError(
                    f"split weights for ({p.name}, {l}) sum to {full}, m2 says {split_total}")
        choices.append((step, p.name, k))

        e_alpha, e_beta = p.edges_by_rank()
        stack.append((e_beta.label, l2 - k, tuple(sub[v] for v in e_beta.att), entry))
        stack.append((e_alpha.label, k, tuple(sub[v] for v in e_alpha.att), entry))

    trees: list[DerivationTree | None] = [None] * len(entries)
    for i in range(len(entries) - 1, -1, -1):
        name, kids = entries[i]
        trees[i] = DerivationTree(name, tuple(trees[j] for j in kids))
    graph = Hypergraph(
        nodes=tuple(nodes),
        edges=tuple(Hyperedge(f"e{i}", lab, att) for i, (lab, att) in enumerate(edges)),
        ext=tuple(nodes[:arity]),
    )
    return SampleReport(graph=graph, tree=trees[0], choices=choices)


def sample_many(g: Grammar, tables: CountTables, start: str, n: int,
                seed: int, count: int) -> Iterator[SampleReport]:
    """A deterministic stream of samples; sample j uses substream j of
    ``seed``, so the stream only depends on (seed, j)."""
    shorthands = shorthand(g)
    root = RandomSource(seed)
    for j in range(count):
        yield gen(g, tables, start, n, root.split(j), shorthands)


def report_to_json(report: SampleReport) -> dict:
    from . import grammar, hypergraph

    return {
        "graph": hypergraph.to_json(report.graph),
        "tree": grammar.tree_to_json(report.tree),
        "choices": [
            {"step": s, "production": p, "split": k}
            for s, p, k in report.choices
        ],
    }
