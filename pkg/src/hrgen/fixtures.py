"""Bundled example grammars and their oracle-verified count sidecars.

Three term-graph grammars over the operators {*, +} and the constant 1
(an ambiguous one, an unambiguous one, and a CNF one), the small
mixed-shape grammar used to exercise every normalization rule, and a
string-graph grammar for the words a^n b^n c^n, which is not a
context-free string language.

Each ``<name>.json`` file ships with a ``<name>.counts.json`` sidecar
holding enumeration results (derivation trees and distinct graphs per
size, from the start symbol).  Sidecars are regenerated only from the
enumeration oracle; tests compare them against fresh runs.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .grammar import Grammar, Production
from .hypergraph import graph

FIXTURE_NAMES = (
    "fig2_ambiguous",
    "fig3_unambiguous",
    "fig4_cnf",
    "fig6_lemma_demo",
    "anbncn",
)

_TERM_GRAPH_TYPES = {"A": 1, "B": 3, "1": 1, "+": 3, "*": 3}


def _prod(name: str, lhs: str, nodes, edges, ext) -> Production:
    g = graph(nodes, [(f"e{i}", lab, att) for i, (lab, att) in enumerate(edges)], ext)
    return Production(name, lhs, g, {e.id: i + 1 for i, e in enumerate(g.edges)})


def build_fig2_grammar() -> Grammar:
    """Ambiguous term-graph grammar: sharing can be derived two ways."""
    return Grammar(
        typing=dict(_TERM_GRAPH_TYPES),
        nonterminals=["A", "B"],
        terminals=["1", "+", "*"],
        start="A",
        productions=[
            _prod("P1", "A", ["x", "n1", "n2"],
                  [("A", ["n1"]), ("B", ["x", "n1", "n2"]), ("A", ["n2"])], ["x"]),
            _prod("P2", "A", ["x", "n"],
                  [("B", ["x", "n", "n"]), ("A", ["n"])], ["x"]),
            _prod("P3", "A", ["x"], [("1", ["x"])], ["x"]),
            _prod("P4", "B", ["e1", "e2", "e3", "n"],
                  [("B", ["e1", "n", "e3"]), ("B", ["n", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P5", "B", ["e1", "e2", "e3", "n"],
                  [("B", ["e1", "e2", "n"]), ("B", ["n", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P6", "B", ["e1", "e2", "e3"], [("+", ["e1", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P7", "B", ["e1", "e2", "e3"], [("*", ["e1", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
        ],
    )


def build_fig3_grammar() -> Grammar:
    """Unambiguous term-graph grammar: the left factor of a composition
    is forced to a single operator symbol (nonterminal D)."""
    types = dict(_TERM_GRAPH_TYPES)
    types["D"] = 3
    return Grammar(
        typing=types,
        nonterminals=["A", "B", "D"],
        terminals=["1", "+", "*"],
        start="A",
        productions=[
            _prod("P1", "A", ["x", "n1", "n2"],
                  [("A", ["n1"]), ("B", ["x", "n1", "n2"]), ("A", ["n2"])], ["x"]),
            _prod("P2", "A", ["x", "n"],
                  [("B", ["x", "n", "n"]), ("A", ["n"])], ["x"]),
            _prod("P3", "A", ["x"], [("1", ["x"])], ["x"]),
            _prod("P4", "B", ["e1", "e2", "e3", "n"],
                  [("D", ["e1", "n", "e3"]), ("B", ["n", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P5", "B", ["e1", "e2", "e3", "n"],
                  [("D", ["e1", "e2", "n"]), ("B", ["n", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P6", "B", ["e1", "e2", "e3"], [("+", ["e1", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P7", "B", ["e1", "e2", "e3"], [("*", ["e1", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P8", "D", ["e1", "e2", "e3"], [("+", ["e1", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P9", "D", ["e1", "e2", "e3"], [("*", ["e1", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
        ],
    )


def build_fig4_grammar() -> Grammar:
    """CNF term-graph grammar.

    P1 and P8 carry one internal node each, so each production's
    internal-node count matches its shorthand form; composing P1 with P8
    reproduces the three-edge composition production of the ambiguous
    grammar exactly.
    """
    types = dict(_TERM_GRAPH_TYPES)
    types["C"] = 3
    types["D"] = 3
    return Grammar(
        typing=types,
        nonterminals=["A", "B", "C", "D"],
        terminals=["1", "+", "*"],
        start="A",
        productions=[
            _prod("P1", "A", ["x", "u"],
                  [("C", ["x", "u", "u"]), ("A", ["u"])], ["x"]),
            _prod("P2", "A", ["x", "u"],
                  [("B", ["x", "u", "u"]), ("A", ["u"])], ["x"]),
            _prod("P3", "A", ["x"], [("1", ["x"])], ["x"]),
            _prod("P4", "B", ["e1", "e2", "e3", "n"],
                  [("D", ["e1", "n", "e3"]), ("B", ["n", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P5", "B", ["e1", "e2", "e3", "n"],
                  [("D", ["e1", "e2", "n"]), ("B", ["n", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P6", "B", ["e1", "e2", "e3"], [("+", ["e1", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P7", "B", ["e1", "e2", "e3"], [("*", ["e1", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P8", "C", ["y1", "y2", "y3", "m"],
                  [("B", ["y1", "y2", "m"]), ("A", ["m"])], ["y1", "y2", "y3"]),
            _prod("P9", "D", ["e1", "e2", "e3"], [("+", ["e1", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
            _prod("P10", "D", ["e1", "e2", "e3"], [("*", ["e1", "e2", "e3"])],
                  ["e1", "e2", "e3"]),
        ],
    )


def build_fig6_grammar() -> Grammar:
    """Small grammar hitting all four normalization rules at once: an
    empty production (P3), a unit production (P2), a three-edge
    right-hand side (P1) and a mixed terminal/nonterminal one (P4)."""
    return Grammar(
        typing={"S": 2, "B": 3, "C": 2, "a": 2, "c": 2},
        nonterminals=["S", "B", "C"],
        terminals=["a", "c"],
        start="S",
        productions=[
            _prod("P1", "S", ["x1", "x2", "u", "w"],
                  [("B", ["x2", "u", "x1"]), ("B", ["u", "w", "x2"]), ("C", ["u", "x1"])],
                  ["x1", "x2"]),
            _prod("P2", "B", ["y1", "y2", "y3"], [("C", ["y1", "y3"])],
                  ["y1", "y2", "y3"]),
            _prod("P3", "B", ["z1", "z2", "z3"], [], ["z1", "z2", "z3"]),
            _prod("P4", "C", ["w1", "w2", "v"],
                  [("a", ["w1", "v"]), ("S", ["v", "w2"])], ["w1", "w2"]),
            _prod("P5", "C", ["w1", "w2"], [("c", ["w1", "w2"])], ["w1", "w2"]),
        ],
    )


def build_anbncn_grammar() -> Grammar:
    """String graphs of the words a^n b^n c^n, n >= 0.

    A word is encoded as a path of binary edges read left to right; the
    graph's externals are the path endpoints.  One type-6 nonterminal
    grows the three letter chains in lockstep, which is what puts the
    language beyond context-free string grammars.
    """
    return Grammar(
        typing={"S": 2, "X": 6, "a": 2, "b": 2, "c": 2},
        nonterminals=["S", "X"],
        terminals=["a", "b", "c"],
        start="S",
        productions=[
            _prod("S_empty", "S", ["s", "t"], [], ["s", "t"]),
            _prod("S_chain", "S", ["s", "t", "m1", "m2"],
                  [("X", ["s", "m1", "m1", "m2", "m2", "t"])], ["s", "t"]),
            _prod("X_base", "X", ["p1", "p2", "p3", "p4", "p5", "p6"],
                  [("a", ["p1", "p2"]), ("b", ["p3", "p4"]), ("c", ["p5", "p6"])],
                  ["p1", "p2", "p3", "p4", "p5", "p6"]),
            _prod("X_step", "X", ["p1", "p2", "p3", "p4", "p5", "p6", "q1", "q2", "q3"],
                  [("a", ["p1", "q1"]), ("b", ["p3", "q2"]), ("c", ["p5", "q3"]),
                   ("X", ["q1", "p2", "q2", "p4", "q3", "p6"])],
                  ["p1", "p2", "p3", "p4", "p5", "p6"]),
        ],
    )


_BUILDERS = {
    "fig2_ambiguous": build_fig2_grammar,
    "fig3_unambiguous": build_fig3_grammar,
    "fig4_cnf": build_fig4_grammar,
    "fig6_lemma_demo": build_fig6_grammar,
    "anbncn": build_anbncn_grammar,
}


def build_fixture(name: str) -> Grammar:
    return _BUILDERS[name]()


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("hrgen") / "fixtures" / f"{name}.json"))


def load_fixture(name: str) -> Grammar:
    from .grammar import grammar_from_json

    with open(fixture_path(name)) as fh:
        return grammar_from_json(json.load(fh))


def load_sidecar(name: str) -> dict:
    with open(fixture_path(name).parent / f"{name}.counts.json") as fh:
        return json.load(fh)
