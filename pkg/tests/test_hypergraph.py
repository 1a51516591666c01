import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from hrgen import hypergraph as hg
from helpers import (TEST_TYPES, fig1_term_graph, naive_isomorphic,
                     permuted_copy, random_graph)

TERM_TYPES = {"A": 1, "B": 3, "1": 1, "+": 3, "*": 3}


class TestValidate:
    def test_empty_graph_is_valid(self):
        assert hg.validate(hg.EMPTY, {}) == []

    def test_duplicate_external_node(self):
        h = hg.graph(["v1"], [], ["v1", "v1"])
        violations = hg.validate(h, {})
        assert len(violations) == 1
        assert "duplicate external" in violations[0]

    def test_fig1_term_graph_is_valid(self):
        h = fig1_term_graph()
        assert hg.validate(h, TERM_TYPES) == []
        assert hg.size(h) == 12

    def test_arity_mismatch_and_unknown_label(self):
        h = hg.graph(["v"], [("e1", "+", ["v", "v"]), ("e2", "?", ["v"])], [])
        msgs = "\n".join(hg.validate(h, TERM_TYPES))
        assert "arity" in msgs
        assert "untyped" in msgs

    def test_unknown_node_reference(self):
        h = hg.graph(["v"], [("e1", "1", ["w"])], ["u"])
        msgs = "\n".join(hg.validate(h, TERM_TYPES))
        assert "unknown node" in msgs
        assert "unknown external" in msgs

    def test_duplicate_ids(self):
        h = hg.graph(["v", "v"], [("e", "1", ["v"]), ("e", "1", ["v"])], [])
        msgs = "\n".join(hg.validate(h, TERM_TYPES))
        assert "duplicate node ids" in msgs
        assert "duplicate edge id" in msgs


class TestSizeAndHandle:
    def test_empty_size(self):
        assert hg.size(hg.EMPTY) == 0

    def test_handle_arity_one(self):
        h = hg.handle("A", TERM_TYPES)
        assert len(h.nodes) == 1 and len(h.edges) == 1 and len(h.ext) == 1
        assert h.edges[0].att == h.ext

    def test_handle_arity_zero(self):
        h = hg.handle("k", TEST_TYPES)
        assert h.nodes == () and h.ext == () and len(h.edges) == 1

    def test_handle_size_is_type_plus_one(self):
        assert hg.size(hg.handle("B", TERM_TYPES)) == 4

    def test_handle_unknown_label(self):
        with pytest.raises(hg.HypergraphError):
            hg.handle("nope", TERM_TYPES)


class TestReplace:
    def test_handle_into_handle_is_identity(self):
        h = hg.handle("A", TERM_TYPES)
        res = hg.replace(h, h.edges[0].id, hg.handle("A", TERM_TYPES))
        assert hg.is_isomorphic(res, h)

    def test_missing_edge(self):
        with pytest.raises(hg.HypergraphError):
            hg.replace(hg.handle("A", TERM_TYPES), "nope", hg.EMPTY)

    def test_type_mismatch(self):
        h = hg.handle("B", TERM_TYPES)
        with pytest.raises(hg.HypergraphError):
            hg.replace(h, h.edges[0].id, hg.handle("A", TERM_TYPES))

    def test_empty_assignment_keeps_graph(self):
        h = fig1_term_graph()
        res = hg.replace_all(h, {})
        assert hg.is_isomorphic(res, h)

    def test_single_assignment_equals_replace(self):
        rnd = random.Random(1)
        for _ in range(50):
            h = random_graph(rnd)
            if not h.edges:
                continue
            e = rnd.choice(h.edges)
            r = random_graph(rnd, ext_len=len(e.att))
            assert hg.replace(h, e.id, r) == hg.replace_all(h, {e.id: r})

    def test_duplicate_attachments_fuse_replacement_externals(self):
        # g-edge attached twice to the same node: both externals of the
        # replacement land on that node.
        h = hg.graph(["v"], [("e0", "g", ["v", "v"])], [])
        r = hg.graph(["a", "b", "m"], [("e0", "g", ["a", "m"]), ("e1", "g", ["m", "b"])],
                     ["a", "b"])
        res = hg.replace(h, "e0", r)
        assert hg.size(res) == hg.size(h) - 1 + hg.size(r) - 2
        assert len(res.nodes) == 2  # v and the internal m

    def test_external_nodes_preserved_positionally(self):
        rnd = random.Random(2)
        for _ in range(200):
            h = random_graph(rnd)
            if not h.edges:
                continue
            e = rnd.choice(h.edges)
            r = random_graph(rnd, ext_len=len(e.att))
            res = hg.replace(h, e.id, r)
            index = {v: i for i, v in enumerate(h.nodes)}
            assert res.ext == tuple(f"n{index[v]}" for v in h.ext)


class TestCanonicalForm:
    def test_node_permutation_invariance(self):
        rnd = random.Random(3)
        for _ in range(200):
            h = random_graph(rnd)
            assert hg.canonical_form(h) == hg.canonical_form(permuted_copy(rnd, h))

    def test_label_difference_detected(self):
        a = hg.graph(["v"], [("e", "1", ["v"])], ["v"])
        b = hg.graph(["v"], [("e", "h", ["v"])], ["v"])
        assert hg.canonical_form(a) != hg.canonical_form(b)

    def test_matches_naive_matcher_on_random_pairs(self):
        rnd = random.Random(4)
        for _ in range(300):
            a = random_graph(rnd, max_nodes=4, max_edges=3)
            b = random_graph(rnd, max_nodes=4, max_edges=3)
            assert hg.is_isomorphic(a, b) == naive_isomorphic(a, b)

    def test_ext_order_matters(self):
        a = hg.graph(["u", "v"], [("e", "g", ["u", "v"])], ["u", "v"])
        b = hg.graph(["u", "v"], [("e", "g", ["u", "v"])], ["v", "u"])
        assert not hg.is_isomorphic(a, b)

    def test_size_bound(self):
        big = hg.graph([f"v{i}" for i in range(70)], [], [])
        with pytest.raises(hg.HypergraphError):
            hg.canonical_form(big)
        assert hg.canonical_form(big, max_size=100)

    def test_handles_at_least_size_24(self):
        rnd = random.Random(5)
        h = random_graph(rnd, max_nodes=14, max_edges=10)
        assert hg.size(h) <= 24
        assert hg.canonical_form(h) == hg.canonical_form(permuted_copy(rnd, h))


@st.composite
def graphs(draw):
    n = draw(st.integers(0, 5))
    nodes = [f"v{i}" for i in range(n)]
    labels = sorted(TEST_TYPES)
    edges = []
    for j in range(draw(st.integers(0, 4))):
        lab = draw(st.sampled_from(labels))
        if TEST_TYPES[lab] > 0 and not nodes:
            continue
        att = [draw(st.sampled_from(nodes)) for _ in range(TEST_TYPES[lab])]
        edges.append((f"e{j}", lab, att))
    ext = draw(st.permutations(nodes))[: draw(st.integers(0, n))]
    return hg.graph(nodes, edges, ext)


@settings(deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_replacement_size_arithmetic_property(h, rnd):
    if not h.edges:
        return
    e = rnd.choice(h.edges)
    r = random_graph(rnd, ext_len=len(e.att))
    assert hg.size(hg.replace(h, e.id, r)) == hg.size(h) - 1 + hg.size(r) - len(e.att)


@settings(deadline=None)
@given(graphs())
def test_canonical_form_is_stable_property(h):
    assert hg.canonical_form(h) == hg.canonical_form(h)
    assert hg.is_isomorphic(h, h)


class TestSerialization:
    def test_json_roundtrip(self):
        rnd = random.Random(6)
        for _ in range(50):
            h = random_graph(rnd)
            again = hg.from_json(json.loads(json.dumps(hg.to_json(h))))
            assert again == h

    def test_malformed_json(self):
        with pytest.raises(hg.HypergraphError):
            hg.from_json({"nodes": []})

    def test_dot_output_is_stable_and_annotated(self):
        h = fig1_term_graph()
        dot = hg.to_dot(h)
        assert dot == hg.to_dot(h)
        assert 'xlabel="ext:1"' in dot
        assert '[label="1"]' in dot  # tentacle indices
        assert 'shape=box' in dot
