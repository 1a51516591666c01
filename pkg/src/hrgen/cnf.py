"""Chomsky normal form for hyperedge replacement grammars.

A grammar is in CNF when every production has exactly two nonterminal
edges (marked alpha/beta, i.e. ranks 1/2), or a single terminal edge,
or no edges but at least one internal node; the start symbol may have
an empty production only if it occurs in no right-hand side.

``to_cnf`` applies four language-preserving rewrites in order:

1. empty-production elimination (nullable closure; every referencing
   production is expanded with each subset of its nullable edges
   removed, then non-start empty productions are dropped; a fresh start
   symbol is introduced when the old one is nullable and referenced),
2. unit-production inlining, iterated to a fixpoint,
3. splitting of right-hand sides with more than two edges via fresh
   bundle nonterminals,
4. outlining of terminal edges in multi-edge right-hand sides via one
   fresh nonterminal per terminal label.

Fresh nonterminals are named _T1, _T2, ... in first-use order (_S0 for
a fresh start symbol).  Rule 3 orders the fresh handle's external nodes
by first occurrence in the concatenated attachments of the moved edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import hypergraph
from .grammar import Grammar, GrammarError, Production, validate_grammar
from .hypergraph import Hyperedge, Hypergraph

NONTERMINAL = "nonterminal"
TERMINAL = "terminal"
LAMBDA = "lambda"


@dataclass(frozen=True)
class Shorthand:
    """A CNF production reduced to what counting and sampling need.

    ``labels`` is (B, C) for a nonterminal production (alpha then beta
    edge label), (a,) for a terminal one, and () for a lambda one;
    ``internal`` is the number of internal right-hand-side nodes.
    """
    name: str
    lhs: str
    kind: str
    labels: tuple[str, ...]
    internal: int


def is_cnf(g: Grammar) -> list[str]:
    """One message per production violating the CNF shape; empty = CNF."""
    violations = []
    nts = set(g.nonterminals)
    start_referenced = any(
        e.label == g.start for p in g.productions for e in p.rhs.edges)
    for p in g.productions:
        nt_edges = [e for e in p.rhs.edges if e.label in nts]
        t_edges = [e for e in p.rhs.edges if e.label not in nts]
        if len(nt_edges) == 2 and not t_edges:
            continue
        if len(t_edges) == 1 and not nt_edges:
            continue
        if not p.rhs.edges:
            if p.internal_count() > 0:
                continue
            if p.lhs == g.start and not start_referenced:
                continue
            if p.lhs != g.start:
                violations.append(f"{p.name}: empty production for non-start {p.lhs!r}")
            else:
                violations.append(
                    f"{p.name}: start-empty production but {g.start!r}"
                    " occurs in a right-hand side")
            continue
        violations.append(
            f"{p.name}: {len(nt_edges)} nonterminal and {len(t_edges)}"
            " terminal edges do not fit any CNF case")
    return violations


def shorthand(g: Grammar) -> list[Shorthand]:
    """Reduce every production of a CNF grammar to its shorthand."""
    problems = is_cnf(g)
    if problems:
        raise GrammarError("grammar is not in CNF: " + "; ".join(problems))
    nts = set(g.nonterminals)
    out = []
    for p in g.productions:
        ranked = p.edges_by_rank()
        if not ranked:
            out.append(Shorthand(p.name, p.lhs, LAMBDA, (), p.internal_count()))
        elif ranked[0].label in nts:
            out.append(Shorthand(p.name, p.lhs, NONTERMINAL,
                                 (ranked[0].label, ranked[1].label),
                                 p.internal_count()))
        else:
            out.append(Shorthand(p.name, p.lhs, TERMINAL,
                                 (ranked[0].label,), p.internal_count()))
    return out


# --- the transformation ----------------------------------------------------


class _Names:
    """Unique deterministic names for productions and fresh nonterminals."""

    def __init__(self, g: Grammar):
        self.taken = {p.name for p in g.productions}
        self.symbols = set(g.nonterminals) | set(g.terminals)
        self.fresh: list[str] = []
        self.fresh_count = 0

    def production(self, base: str) -> str:
        name = base
        k = 2
        while name in self.taken:
            name = f"{base}_{k}"
            k += 1
        self.taken.add(name)
        return name

    def nonterminal(self) -> str:
        while True:
            self.fresh_count += 1
            name = f"_T{self.fresh_count}"
            if name not in self.symbols:
                self.symbols.add(name)
                self.fresh.append(name)
                return name

    def start_symbol(self) -> str:
        name = "_S0"
        k = 1
        while name in self.symbols:
            name = f"_S{k}"
            k += 1
        self.symbols.add(name)
        self.fresh.append(name)
        return name


def _renorm(p: Production) -> Production:
    """Rewrite rhs so edge tuple order equals mark order with ids e0, e1, ..."""
    ranked = p.edges_by_rank()
    edges = tuple(Hyperedge(f"e{i}", e.label, e.att) for i, e in enumerate(ranked))
    marks = {f"e{i}": i + 1 for i in range(len(edges))}
    return Production(p.name, p.lhs, Hypergraph(p.rhs.nodes, edges, p.rhs.ext), marks)


def _mk(name: str, lhs: str, nodes, edges, ext) -> Production:
    rhs = Hypergraph(
        nodes=tuple(nodes),
        edges=tuple(Hyperedge(f"e{i}", lab, tuple(att)) for i, (lab, att) in enumerate(edges)),
        ext=tuple(ext))
    return Production(name, lhs, rhs, {e.id: i + 1 for i, e in enumerate(rhs.edges)})


def _key(p: Production) -> tuple:
    """Structural identity of a production up to node/edge renaming.

    Marks are significant, so ranks are folded into the edge labels
    before canonicalization.
    """
    tagged = Hypergraph(
        nodes=p.rhs.nodes,
        edges=tuple(Hyperedge(e.id, f"{e.label}\x00{p.marks[e.id]}", e.att)
                    for e in p.rhs.edges),
        ext=p.rhs.ext)
    return (p.lhs, hypergraph.canonical_form(tagged))


def _splice(p: Production, edge_id: str, q: Production, name: str) -> Production:
    """Inline rhs(q) for one edge of rhs(p); marks follow the edge order
    that replace_all produces (the replaced slot expands in place)."""
    rhs = hypergraph.replace_all(p.rhs, {edge_id: q.rhs})
    marks = {e.id: i + 1 for i, e in enumerate(rhs.edges)}
    return Production(name, p.lhs, rhs, marks)


def _drop_edges(p: Production, drop: set[str], name: str) -> Production:
    kept = [e for e in p.edges_by_rank() if e.id not in drop]
    return _mk(name, p.lhs, p.rhs.nodes, [(e.label, e.att) for e in kept], p.rhs.ext)


def _productive(productions: list[Production], nts: set[str]) -> set[str]:
    done: set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in productions:
            if p.lhs in done:
                continue
            if all(e.label not in nts or e.label in done for e in p.rhs.edges):
                done.add(p.lhs)
                changed = True
    return done


def _reachable(productions: list[Production], start: str) -> set[str]:
    seen = {start}
    frontier = [start]
    by_lhs: dict[str, list[Production]] = {}
    for p in productions:
        by_lhs.setdefault(p.lhs, []).append(p)
    while frontier:
        sym = frontier.pop()
        for p in by_lhs.get(sym, ()):
            for e in p.rhs.edges:
                if e.label not in seen:
                    seen.add(e.label)
                    frontier.append(e.label)
    return seen


def to_cnf(g: Grammar, trace: list[str] | None = None) -> Grammar:
    """An equivalent grammar in CNF (same language as sets of graphs).

    A grammar whose start symbol derives nothing is returned unchanged
    with a diagnostic appended to ``trace``.  Divergent unit-production
    cycles (a cycle of single-nonterminal right-hand sides that keeps
    adding internal nodes) raise :class:`GrammarError`.
    """
    if trace is None:
        trace = []
    problems = validate_grammar(g)
    if problems:
        raise GrammarError("invalid grammar: " + "; ".join(problems))

    nts = set(g.nonterminals)
    typing = dict(g.typing)
    names = _Names(g)
    prods = [_renorm(p) for p in g.productions]

    if g.start not in _productive(prods, nts):
        trace.append(f"language of start symbol {g.start!r} is empty; grammar left unchanged")
        return g

    start = g.start

    # Rule 1: empty-production elimination.
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in prods:
            if p.lhs in nullable or p.internal_count() > 0:
                continue
            if all(e.label in nullable for e in p.rhs.edges):
                nullable.add(p.lhs)
                changed = True
    if nullable:
        trace.append(f"rule 1: nullable nonterminals {sorted(nullable)}")
        expanded: list[Production] = []
        seen: set[tuple] = set()

        def emit(p: Production) -> None:
            k = _key(p)
            if k not in seen:
                seen.add(k)
                expanded.append(p)

        for p in prods:
            nullable_edges = [e.id for e in p.rhs.edges if e.label in nullable]
            emit(p)
            for r in range(1, len(nullable_edges) + 1):
                for combo in itertools.combinations(nullable_edges, r):
                    emit(_drop_edges(p, set(combo), names.production(p.name)))
        start_referenced = any(
            e.label == start for p in expanded for e in p.rhs.edges)
        start_empty = next(
            (p for p in expanded if p.is_empty() and p.lhs == start), None)
        dropped = sorted(p.name for p in expanded
                         if p.is_empty() and not (p is start_empty and not start_referenced))
        prods = [p for p in expanded
                 if not p.is_empty() or (p is start_empty and not start_referenced)]
        if dropped:
            trace.append(f"rule 1: removed empty productions {dropped}")
        if start in nullable:
            if start_referenced:
                new_start = names.start_symbol()
                typing[new_start] = typing[start]
                nts.add(new_start)
                h = hypergraph.handle(start, typing)
                prods.append(_mk(names.production(f"{new_start}.unit"), new_start,
                                 h.nodes, [(start, h.ext)], h.ext))
                prods.append(_mk(names.production(f"{new_start}.empty"), new_start,
                                 h.nodes, [], h.nodes))
                start = new_start
                trace.append(f"rule 1: start is nullable and referenced;"
                             f" fresh start {new_start!r}")
            elif start_empty is None:
                empty_rhs = tuple(f"n{i}" for i in range(typing[start]))
                prods.append(_mk(names.production(f"{start}.empty"), start,
                                 empty_rhs, [], empty_rhs))
                trace.append("rule 1: start is nullable; added the start-empty production")
            else:
                trace.append("rule 1: kept the start-empty production")
        reach = _reachable(prods, start)
        prods = [p for p in prods if p.lhs in reach]

    def is_unit(p: Production) -> bool:
        return len(p.rhs.edges) == 1 and p.rhs.edges[0].label in nts

    # Rule 2: unit-production inlining to a fixpoint.  A unit cycle that
    # keeps adding internal nodes has an infinite closure.
    units = [p for p in prods if is_unit(p)]
    if units:
        unit_targets: dict[str, set[str]] = {}
        for u in units:
            unit_targets.setdefault(u.lhs, set()).add(u.rhs.edges[0].label)

        def unit_reaches(src: str, dst: str) -> bool:
            seen_, frontier = {src}, [src]
            while frontier:
                s = frontier.pop()
                if dst in unit_targets.get(s, ()):
                    return True
                for t in unit_targets.get(s, ()):
                    if t not in seen_:
                        seen_.add(t)
                        frontier.append(t)
            return False

        for u in units:
            if u.internal_count() > 0 and unit_reaches(u.rhs.edges[0].label, u.lhs):
                raise GrammarError(
                    f"unit production cycle through {u.name} grows without bound")

        trace.append(f"rule 2: inlining unit productions {sorted(u.name for u in units)}")
        result = [p for p in prods if not is_unit(p)]
        keys = {_key(p) for p in result}
        grew = True
        while grew:
            grew = False
            for u in units:
                target = u.rhs.edges[0].label
                for q in [p for p in result if p.lhs == target]:
                    cand = _splice(u, u.rhs.edges[0].id, q,
                                   names.production(f"{u.name}.{q.name}"))
                    k = _key(cand)
                    if k not in keys:
                        keys.add(k)
                        result.append(cand)
                        grew = True
        prods = result
        reach = _reachable(prods, start)
        prods = [p for p in prods if p.lhs in reach]

    # Rule 3: split right-hand sides with more than two edges.  The
    # first edge (by mark) stays; the rest move behind a fresh bundle
    # nonterminal whose handle is attached to their attachment nodes in
    # first-occurrence order.
    queue = list(prods)
    prods = []
    while queue:
        p = queue.pop(0)
        if len(p.rhs.edges) <= 2:
            prods.append(p)
            continue
        ranked = p.edges_by_rank()
        head, rest = ranked[0], ranked[1:]
        bundle_ext: list[str] = []
        for e in rest:
            for v in e.att:
                if v not in bundle_ext:
                    bundle_ext.append(v)
        t = names.nonterminal()
        typing[t] = len(bundle_ext)
        nts.add(t)
        trace.append(f"rule 3: split {p.name} with fresh nonterminal {t}"
                     f" of type {len(bundle_ext)}")
        prods.append(_mk(p.name, p.lhs, p.rhs.nodes,
                         [(head.label, head.att), (t, bundle_ext)], p.rhs.ext))
        queue.append(_mk(names.production(f"{p.name}.s"), t, bundle_ext,
                         [(e.label, e.att) for e in rest], bundle_ext))

    # Rule 4: outline terminal edges of multi-edge right-hand sides.
    outlined: dict[str, str] = {}
    handles: list[Production] = []
    result = []
    for p in prods:
        if len(p.rhs.edges) < 2 or all(e.label in nts for e in p.rhs.edges):
            result.append(p)
            continue
        new_edges = []
        for e in p.edges_by_rank():
            if e.label in nts:
                new_edges.append((e.label, e.att))
                continue
            t = outlined.get(e.label)
            if t is None:
                t = names.nonterminal()
                typing[t] = typing[e.label]
                nts.add(t)
                outlined[e.label] = t
                h = hypergraph.handle(e.label, typing)
                handles.append(_mk(names.production(f"{t}.h"), t, h.nodes,
                                   [(e.label, h.ext)], h.ext))
                trace.append(f"rule 4: fresh nonterminal {t} covers terminal {e.label!r}")
            new_edges.append((t, e.att))
        result.append(_mk(p.name, p.lhs, p.rhs.nodes, new_edges, p.rhs.ext))
    prods = result + handles

    out = Grammar(
        typing=typing,
        nonterminals=[s for s in g.nonterminals if s in nts] + names.fresh,
        terminals=list(g.terminals),
        productions=prods,
        start=start,
    )
    leftover = is_cnf(out)
    if leftover:
        raise GrammarError("normalization left non-CNF productions: " + "; ".join(leftover))
    return out
