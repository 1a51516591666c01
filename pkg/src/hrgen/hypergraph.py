"""Hypergraphs with ordered attachments, external nodes, and hyperedge replacement.

A hypergraph is a finite set of nodes plus a finite set of labelled
hyperedges.  Each hyperedge is attached to an ordered sequence of nodes
(repetitions allowed) whose length must equal the arity of its label.
The graph itself carries an ordered sequence of pairwise distinct
external nodes.  Values are immutable; every operation returns a new
graph with freshly generated ids, so identity across operations is
positional, never nominal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

# Arity assignment for edge labels.  Must cover every label that occurs
# in a graph or grammar validated against it.
TypingFunction = Mapping[str, int]

# canonical_form() refuses larger graphs; exact isomorphism by
# backtracking is only meant for test-scale instances (>= 24 is enough
# for the whole test suite).
CANONICAL_SIZE_BOUND = 64


class HypergraphError(Exception):
    """Structurally impossible request (bad edge, type mismatch, ...)."""


@dataclass(frozen=True)
class Hyperedge:
    id: str
    label: str
    att: tuple[str, ...]


@dataclass(frozen=True)
class Hypergraph:
    nodes: tuple[str, ...]
    edges: tuple[Hyperedge, ...]
    ext: tuple[str, ...]

    def edge(self, edge_id: str) -> Hyperedge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise HypergraphError(f"no edge with id {edge_id!r}")

    def has_edge(self, edge_id: str) -> bool:
        return any(e.id == edge_id for e in self.edges)


EMPTY = Hypergraph(nodes=(), edges=(), ext=())


def graph(nodes: Iterable[str],
          edges: Iterable[tuple[str, str, Iterable[str]]],
          ext: Iterable[str]) -> Hypergraph:
    """Build a graph from plain sequences; edges are (id, label, att) triples."""
    return Hypergraph(
        nodes=tuple(nodes),
        edges=tuple(Hyperedge(i, lab, tuple(att)) for i, lab, att in edges),
        ext=tuple(ext),
    )


def size(h: Hypergraph) -> int:
    """Node count plus hyperedge count."""
    return len(h.nodes) + len(h.edges)


def edge_type(h: Hypergraph, edge_id: str) -> int:
    return len(h.edge(edge_id).att)


def validate(h: Hypergraph, typing: TypingFunction) -> list[str]:
    """Check all well-formedness invariants; returns one message per breach.

    Violations are data, not faults: an empty list means the graph is a
    well-formed hypergraph over ``typing``.
    """
    violations = []
    node_set = set(h.nodes)
    if len(node_set) != len(h.nodes):
        violations.append("duplicate node ids")
    seen_edge_ids = set()
    for e in h.edges:
        if e.id in seen_edge_ids:
            violations.append(f"duplicate edge id {e.id!r}")
        seen_edge_ids.add(e.id)
        for v in e.att:
            if v not in node_set:
                violations.append(f"edge {e.id!r} attached to unknown node {v!r}")
        if e.label not in typing:
            violations.append(f"edge {e.id!r} has untyped label {e.label!r}")
        elif typing[e.label] != len(e.att):
            violations.append(
                f"edge {e.id!r}: label {e.label!r} has arity {typing[e.label]}"
                f" but {len(e.att)} attachments")
    for v in h.ext:
        if v not in node_set:
            violations.append(f"unknown external node {v!r}")
    if len(set(h.ext)) != len(h.ext):
        violations.append("duplicate external node")
    return violations


def handle(label: str, typing: TypingFunction) -> Hypergraph:
    """The one-edge graph induced by ``label``: fresh nodes, all external."""
    if label not in typing:
        raise HypergraphError(f"unknown label {label!r}")
    nodes = tuple(f"n{i}" for i in range(typing[label]))
    return Hypergraph(nodes=nodes, edges=(Hyperedge("e0", label, nodes),), ext=nodes)


def replace(h: Hypergraph, edge_id: str, replacement: Hypergraph) -> Hypergraph:
    """Replace one hyperedge by a graph of matching type.

    The edge is removed, the replacement added disjointly, and its i-th
    external node fused with the edge's i-th attachment node.  External
    nodes of ``h`` are preserved.  Result ids are regenerated.
    """
    return replace_all(h, {edge_id: replacement})


def replace_all(h: Hypergraph, assignment: Mapping[str, Hypergraph]) -> Hypergraph:
    """Simultaneous replacement of several hyperedges.

    The result does not depend on the order the keys are processed (only
    on the edge order of ``h``): each replaced edge's slot is expanded
    in place into the edges of its replacement.
    """
    for edge_id, r in assignment.items():
        e = h.edge(edge_id)
        if len(e.att) != len(r.ext):
            raise HypergraphError(
                f"edge {edge_id!r} has type {len(e.att)} but replacement"
                f" has type {len(r.ext)}")

    node_map = {v: f"n{i}" for i, v in enumerate(h.nodes)}
    new_nodes = [node_map[v] for v in h.nodes]
    new_edges: list[tuple[str, tuple[str, ...]]] = []

    for e in h.edges:
        if e.id not in assignment:
            new_edges.append((e.label, tuple(node_map[v] for v in e.att)))
            continue
        r = assignment[e.id]
        # External nodes of the replacement vanish into the attachment
        # nodes; internal nodes come in fresh.
        sub = {}
        for i, v in enumerate(r.ext):
            sub[v] = node_map[e.att[i]]
        for v in r.nodes:
            if v not in sub:
                fresh = f"n{len(new_nodes)}"
                sub[v] = fresh
                new_nodes.append(fresh)
        for re_ in r.edges:
            new_edges.append((re_.label, tuple(sub[v] for v in re_.att)))

    return Hypergraph(
        nodes=tuple(new_nodes),
        edges=tuple(Hyperedge(f"e{i}", lab, att) for i, (lab, att) in enumerate(new_edges)),
        ext=tuple(node_map[v] for v in h.ext),
    )


# --- exact isomorphism ----------------------------------------------------
#
# Two graphs are isomorphic when label-, attachment- and ext-preserving
# node/edge bijections exist.  Since external sequences must map
# position-wise, only internal nodes may permute.  canonical_form runs a
# minimal-code search over internal-node orderings, pruned by iterated
# colour refinement with individualization: at every step only nodes of
# the (invariantly chosen) minimal colour class are tried.


def canonical_form(h: Hypergraph, max_size: int = CANONICAL_SIZE_BOUND) -> bytes:
    """A byte string equal for two graphs iff they are isomorphic."""
    if size(h) > max_size:
        raise HypergraphError(f"graph size {size(h)} exceeds canonical bound {max_size}")

    ext_index = {v: i for i, v in enumerate(h.ext)}
    internal = [v for v in h.nodes if v not in ext_index]
    # incidences[v] = list of (edge position in h.edges, tentacle index)
    incidences: dict[str, list[tuple[int, int]]] = {v: [] for v in h.nodes}
    for ei, e in enumerate(h.edges):
        for j, v in enumerate(e.att):
            incidences[v].append((ei, j))

    def refine(fixed: dict[str, int]) -> dict[str, tuple]:
        # Seed with what an isomorphism must preserve: ext position,
        # individualized rank, and then iterate incidence signatures.
        colour = {}
        for v in h.nodes:
            if v in ext_index:
                colour[v] = (0, ext_index[v])
            elif v in fixed:
                colour[v] = (1, fixed[v])
            else:
                colour[v] = (2, 0)
        while True:
            sig = {}
            for v in h.nodes:
                inc = sorted(
                    (h.edges[ei].label, j, tuple(colour[w] for w in h.edges[ei].att))
                    for ei, j in incidences[v])
                sig[v] = (colour[v], tuple(inc))
            ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
            new_colour = {v: (3, ranks[sig[v]]) for v in h.nodes}
            if len(set(new_colour.values())) == len(set(colour.values())):
                return new_colour
            colour = new_colour

    def encode(order: dict[str, int]) -> bytes:
        rows = sorted(
            (e.label, tuple(order[v] for v in e.att)) for e in h.edges)
        return repr((len(h.nodes), len(h.ext), rows)).encode()

    edge_multiset = sorted((e.label, e.att) for e in h.edges)

    def swap_is_automorphism(u: str, v: str) -> bool:
        # A transposition of two internal nodes is an automorphism iff
        # it permutes the edge multiset onto itself.
        table = {u: v, v: u}
        swapped = sorted(
            (e.label, tuple(table.get(w, w) for w in e.att)) for e in h.edges)
        return swapped == edge_multiset

    best: list[bytes | None] = [None]

    def search(fixed: dict[str, int]) -> None:
        remaining = [v for v in internal if v not in fixed]
        if not remaining:
            order = dict(fixed)
            for v, i in ext_index.items():
                order[v] = i
            code = encode(order)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        colour = refine(fixed)
        target = min(colour[v] for v in remaining)
        candidates = [v for v in remaining if colour[v] == target]
        # Candidates whose transposition with an earlier one is an
        # automorphism lead to the same minimum; try one per twin class.
        tried: list[str] = []
        for v in candidates:
            if any(swap_is_automorphism(u, v) for u in tried):
                continue
            tried.append(v)
            child = dict(fixed)
            child[v] = len(h.ext) + len(fixed)
            search(child)

    search({})
    assert best[0] is not None
    return best[0]


def is_isomorphic(h1: Hypergraph, h2: Hypergraph,
                  max_size: int = CANONICAL_SIZE_BOUND) -> bool:
    if len(h1.nodes) != len(h2.nodes) or len(h1.edges) != len(h2.edges):
        return False
    if len(h1.ext) != len(h2.ext):
        return False
    return canonical_form(h1, max_size) == canonical_form(h2, max_size)


# --- serialization --------------------------------------------------------


def to_json(h: Hypergraph) -> dict:
    return {
        "nodes": list(h.nodes),
        "ext": list(h.ext),
        "edges": [{"id": e.id, "label": e.label, "att": list(e.att)} for e in h.edges],
    }


def from_json(obj: dict) -> Hypergraph:
    try:
        return Hypergraph(
            nodes=tuple(str(v) for v in obj["nodes"]),
            edges=tuple(
                Hyperedge(str(e["id"]), str(e["label"]), tuple(str(v) for v in e["att"]))
                for e in obj["edges"]),
            ext=tuple(str(v) for v in obj["ext"]),
        )
    except (KeyError, TypeError) as exc:
        raise HypergraphError(f"malformed hypergraph object: {exc}") from exc


def to_dot(h: Hypergraph, name: str = "H") -> str:
    """Graphviz rendering: hyperedges as boxes, nodes as points,
    tentacles labelled with their 1-based index, externals with ext:i."""
    ext_index = {v: i + 1 for i, v in enumerate(h.ext)}
    lines = [f"graph {name} {{", "  node [shape=point];"]
    for v in h.nodes:
        if v in ext_index:
            lines.append(f'  "{v}" [xlabel="ext:{ext_index[v]}"];')
        else:
            lines.append(f'  "{v}";')
    for e in h.edges:
        lines.append(f'  "{e.id}" [shape=box, label="{e.label}"];')
        for j, v in enumerate(e.att, start=1):
            lines.append(f'  "{e.id}" -- "{v}" [label="{j}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
