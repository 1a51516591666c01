"""Shared test utilities: random instances and a brute-force matcher."""

import itertools

from hrgen import hypergraph as hg

TEST_TYPES = {"f": 3, "g": 2, "h": 1, "k": 0}


def random_graph(rnd, typing=TEST_TYPES, max_nodes=5, max_edges=4, ext_len=None):
    """A random small well-formed hypergraph over ``typing``."""
    low = ext_len if ext_len is not None else 0
    n = max(rnd.randint(low, max_nodes), low)
    nodes = [f"v{i}" for i in range(n)]
    labels = sorted(typing)
    edges = []
    for j in range(rnd.randint(0, max_edges)):
        lab = rnd.choice(labels)
        if typing[lab] > 0 and not nodes:
            continue
        att = [rnd.choice(nodes) for _ in range(typing[lab])]
        edges.append((f"e{j}", lab, att))
    k = ext_len if ext_len is not None else rnd.randint(0, n)
    ext = rnd.sample(nodes, k)
    return hg.graph(nodes, edges, ext)


def naive_isomorphic(h1, h2):
    """All-bijections matcher; the independent check for canonical_form."""
    if (len(h1.nodes), len(h1.edges), len(h1.ext)) != \
            (len(h2.nodes), len(h2.edges), len(h2.ext)):
        return False
    sig2 = sorted((e.label, tuple(e.att)) for e in h2.edges)
    for perm in itertools.permutations(h2.nodes):
        m = dict(zip(h1.nodes, perm))
        if tuple(m[v] for v in h1.ext) != h2.ext:
            continue
        if sorted((e.label, tuple(m[v] for v in e.att)) for e in h1.edges) == sig2:
            return True
    return False


def permuted_copy(rnd, h):
    """The same graph with node ids renamed and storage order shuffled."""
    perm = list(h.nodes)
    rnd.shuffle(perm)
    m = dict(zip(h.nodes, perm))
    edges = [hg.Hyperedge(e.id, e.label, tuple(m[v] for v in e.att)) for e in h.edges]
    rnd.shuffle(edges)
    return hg.Hypergraph(tuple(sorted(perm)), tuple(edges),
                         tuple(m[v] for v in h.ext))


def edge_image(g_after, orig_pos, removed_pos, r_edge_count):
    """Where an edge of the original graph lands after one replacement.

    replace() expands the removed edge's slot in place, so surviving
    edges keep their relative order.
    """
    if orig_pos < removed_pos:
        return g_after.edges[orig_pos]
    return g_after.edges[orig_pos - 1 + r_edge_count]


def path_word(h):
    """Follow binary edges from ext[0]; returns (word, final node)."""
    succ = {}
    for e in h.edges:
        succ[e.att[0]] = (e.label, e.att[1])
    out, cur = [], h.ext[0]
    while cur in succ:
        lab, cur = succ.pop(cur)
        out.append(lab)
    return "".join(out), cur


def fig1_term_graph():
    """The size-12 term graph with two shared subterms: the root is
    *(u, w) with u = +(one, one) and w = +(*(u, one2), one2)."""
    return hg.graph(
        ["A", "B", "C", "D", "E", "F"],
        [("s2", "*", ["A", "B", "D"]),
         ("p1", "+", ["B", "F", "F"]),
         ("o2", "1", ["F"]),
         ("p2", "+", ["D", "E", "C"]),
         ("s1", "*", ["E", "B", "C"]),
         ("o1", "1", ["C"])],
        ["A"])
