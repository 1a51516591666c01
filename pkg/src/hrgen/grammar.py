"""Hyperedge replacement grammars, ordered derivation trees, and yields.

Marks on the right-hand-side edges are stored as integer ranks 1..n:
they fix the replacement order, derivation-tree child order and hence
the leftmost derivation.  Grammars are treated as immutable after
validation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import hypergraph
from .hypergraph import Hypergraph, TypingFunction


class GrammarError(Exception):
    """Malformed grammar or derivation tree."""


@dataclass
class Production:
    name: str
    lhs: str
    rhs: Hypergraph
    marks: dict[str, int]  # edge id -> rank, bijective onto 1..|edges|

    def edges_by_rank(self) -> list[hypergraph.Hyperedge]:
        return sorted(self.rhs.edges, key=lambda e: self.marks[e.id])

    def is_empty(self) -> bool:
        """No edges and every node external."""
        return not self.rhs.edges and len(self.rhs.ext) == len(self.rhs.nodes)

    def internal_count(self) -> int:
        return len(self.rhs.nodes) - len(self.rhs.ext)


@dataclass
class Grammar:
    typing: dict[str, int]
    nonterminals: list[str]
    terminals: list[str]
    productions: list[Production]
    start: str

    def productions_for(self, lhs: str) -> list[Production]:
        return [p for p in self.productions if p.lhs == lhs]

    def production(self, name: str) -> Production:
        for p in self.productions:
            if p.name == name:
                return p
        raise GrammarError(f"no production named {name!r}")

    def nonterminal_edges(self, p: Production) -> list[hypergraph.Hyperedge]:
        nts = set(self.nonterminals)
        return [e for e in p.edges_by_rank() if e.label in nts]

    def terminal_edges(self, p: Production) -> list[hypergraph.Hyperedge]:
        nts = set(self.nonterminals)
        return [e for e in p.edges_by_rank() if e.label not in nts]


@dataclass
class DerivationTree:
    """Ordered tree of production applications.

    Children correspond one-to-one, in mark order, to the nonterminal
    edges of the root production's right-hand side.
    """
    production: str
    children: tuple["DerivationTree", ...] = field(default_factory=tuple)


def validate_grammar(g: Grammar) -> list[str]:
    """All structural grammar invariants; empty list means valid."""
    violations = []
    nts, terms = set(g.nonterminals), set(g.terminals)
    if nts & terms:
        violations.append(f"labels both terminal and nonterminal: {sorted(nts & terms)}")
    if g.start not in nts:
        violations.append(f"start symbol {g.start!r} is not a nonterminal")
    for sym in list(nts) + list(terms):
        if sym not in g.typing:
            violations.append(f"symbol {sym!r} has no arity")
    seen_names = set()
    for p in g.productions:
        if p.name in seen_names:
            violations.append(f"duplicate production name {p.name!r}")
        seen_names.add(p.name)
        if p.lhs not in nts:
            violations.append(f"{p.name}: lhs {p.lhs!r} is not a nonterminal")
        for msg in hypergraph.validate(p.rhs, g.typing):
            violations.append(f"{p.name}: {msg}")
        for e in p.rhs.edges:
            if e.label not in nts and e.label not in terms:
                violations.append(f"{p.name}: edge label {e.label!r} not in the alphabets")
        if p.lhs in g.typing and len(p.rhs.ext) != g.typing[p.lhs]:
            violations.append(
                f"{p.name}: rhs has type {len(p.rhs.ext)} but lhs {p.lhs!r}"
                f" has type {g.typing[p.lhs]}")
        ranks = sorted(p.marks.get(e.id) for e in p.rhs.edges)
        if ranks != list(range(1, len(p.rhs.edges) + 1)):
            violations.append(f"{p.name}: marks are not a bijection onto 1..{len(p.rhs.edges)}")
    return violations


def yield_of(g: Grammar, tree: DerivationTree) -> Hypergraph:
    """The hypergraph derived by recursively replacing, in mark order,
    every nonterminal edge by the yield of the corresponding subtree."""
    p = g.production(tree.production)
    nt_edges = g.nonterminal_edges(p)
    if len(nt_edges) != len(tree.children):
        raise GrammarError(
            f"{p.name}: expected {len(nt_edges)} children, tree has {len(tree.children)}")
    assignment = {}
    for e, child in zip(nt_edges, tree.children):
        cp = g.production(child.production)
        if cp.lhs != e.label:
            raise GrammarError(
                f"{p.name}: child {cp.name} derives {cp.lhs!r},"
                f" edge is labelled {e.label!r}")
        assignment[e.id] = yield_of(g, child)
    return hypergraph.replace_all(p.rhs, assignment)


def leftmost_sequence(tree: DerivationTree) -> list[str]:
    """Pre-order production names; this is the leftmost derivation order."""
    out = []
    stack = [tree]
    while stack:
        t = stack.pop()
        out.append(t.production)
        stack.extend(reversed(t.children))
    return out


def direct_derive(g: Grammar, h: Hypergraph, edge_id: str, p: Production) -> Hypergraph:
    """One derivation step: replace the named edge by rhs(p)."""
    e = h.edge(edge_id)
    if e.label != p.lhs:
        raise GrammarError(
            f"edge {edge_id!r} is labelled {e.label!r}, production {p.name} derives {p.lhs!r}")
    return hypergraph.replace(h, edge_id, p.rhs)


def is_non_contracting(g: Grammar) -> bool:
    """True iff no direct derivation can shrink a graph.

    Replacing an edge (size contribution 1) by a rhs that fuses
    type(lhs) externals changes the size by size(rhs) - type(lhs) - 1,
    so the per-production test is size(rhs) - type(lhs) >= 1.
    """
    return all(
        hypergraph.size(p.rhs) - g.typing[p.lhs] >= 1 for p in g.productions)


def has_start_empty_production(g: Grammar) -> bool:
    """Diagnostic only: does the start symbol have an empty production?"""
    return any(p.lhs == g.start and p.is_empty() for p in g.productions)


# --- serialization --------------------------------------------------------


def grammar_to_json(g: Grammar) -> dict:
    return {
        "types": dict(g.typing),
        "nonterminals": list(g.nonterminals),
        "terminals": list(g.terminals),
        "start": g.start,
        "productions": [
            {
                "name": p.name,
                "lhs": p.lhs,
                "rhs": hypergraph.to_json(p.rhs),
                "marks": {eid: rank for eid, rank in p.marks.items()},
            }
            for p in g.productions
        ],
    }


def grammar_from_json(obj: dict) -> Grammar:
    try:
        return Grammar(
            typing={str(k): int(v) for k, v in obj["types"].items()},
            nonterminals=[str(s) for s in obj["nonterminals"]],
            terminals=[str(s) for s in obj["terminals"]],
            productions=[
                Production(
                    name=str(p["name"]),
                    lhs=str(p["lhs"]),
                    rhs=hypergraph.from_json(p["rhs"]),
                    marks={str(k): int(v) for k, v in p["marks"].items()},
                )
                for p in obj["productions"]
            ],
            start=str(obj["start"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise GrammarError(f"malformed grammar object: {exc}") from exc


def tree_to_json(tree: DerivationTree) -> dict:
    return {
        "production": tree.production,
        "children": [tree_to_json(c) for c in tree.children],
    }


def tree_from_json(obj: dict) -> DerivationTree:
    try:
        return DerivationTree(
            production=str(obj["production"]),
            children=tuple(tree_from_json(c) for c in obj["children"]),
        )
    except (KeyError, TypeError) as exc:
        raise GrammarError(f"malformed derivation tree object: {exc}") from exc
