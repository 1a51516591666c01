import json
import random

import pytest

from hrgen import grammar as gr
from hrgen import hypergraph as hg
from hrgen import oracle
from hrgen.grammar import DerivationTree as T
from helpers import fig1_term_graph

FIG7_TREE = T("P1", (
    T("P8", (
        T("P5", (T("P10"), T("P4", (T("P9"), T("P7"))))),
        T("P3"),
    )),
    T("P2", (T("P6"), T("P3"))),
))

FIG7_LEFTMOST = ["P1", "P8", "P5", "P10", "P4", "P9", "P7", "P3", "P2", "P6", "P3"]


def test_all_fixture_grammars_validate(fig2, fig3, fig4, fig6, anbncn):
    for g in (fig2, fig3, fig4, fig6, anbncn):
        assert gr.validate_grammar(g) == []


def test_rhs_type_mismatch_is_reported(fig4):
    bad = gr.Grammar(
        typing=dict(fig4.typing),
        nonterminals=list(fig4.nonterminals),
        terminals=list(fig4.terminals),
        productions=[gr.Production("Q", "B", hg.graph(["x"], [("e0", "1", ["x"])], ["x"]),
                                   {"e0": 1})],
        start="A")
    assert any("type" in v for v in gr.validate_grammar(bad))


def test_shared_mark_is_reported(fig4):
    p = fig4.production("P1")
    bad_p = gr.Production("P1", "A", p.rhs, {e.id: 1 for e in p.rhs.edges})
    bad = gr.Grammar(dict(fig4.typing), list(fig4.nonterminals),
                     list(fig4.terminals), [bad_p], "A")
    assert any("bijection" in v for v in gr.validate_grammar(bad))


class TestYield:
    def test_terminal_leaf_yields_its_rhs(self, fig4):
        p = fig4.production("P3")
        assert hg.is_isomorphic(gr.yield_of(fig4, T("P3")), p.rhs)

    def test_worked_example_tree_yields_the_term_graph(self, fig4):
        y = gr.yield_of(fig4, FIG7_TREE)
        assert hg.size(y) == 12
        assert hg.is_isomorphic(y, fig1_term_graph())

    def test_malformed_tree_wrong_child_label(self, fig4):
        with pytest.raises(gr.GrammarError):
            gr.yield_of(fig4, T("P1", (T("P3"), T("P3"))))  # alpha child must derive C

    def test_malformed_tree_missing_child(self, fig4):
        with pytest.raises(gr.GrammarError):
            gr.yield_of(fig4, T("P1", (T("P8", (T("P6"), T("P3"))),)))

    def test_yield_size_matches_budget_arithmetic(self, fig4, fig4_enumerator):
        # Size decomposes node-locally over the tree: each application
        # contributes its internal nodes plus its terminal edges (its
        # nonterminal edges are consumed by the children's replacements),
        # and the root adds its external nodes.
        nts = set(fig4.nonterminals)
        for n in (2, 4, 6, 8):
            for t in fig4_enumerator.trees("A", n):
                total = fig4.typing["A"]
                stack = [t]
                while stack:
                    node = stack.pop()
                    p = fig4.production(node.production)
                    nt_edges = sum(e.label in nts for e in p.rhs.edges)
                    total += hg.size(p.rhs) - len(p.rhs.ext) - nt_edges
                    stack.extend(node.children)
                assert hg.size(gr.yield_of(fig4, t)) == total == n


class TestLeftmost:
    def test_leaf(self):
        assert gr.leftmost_sequence(T("P3")) == ["P3"]

    def test_worked_example_preorder(self):
        assert gr.leftmost_sequence(FIG7_TREE) == FIG7_LEFTMOST

    def test_injective_over_a_slice(self, fig4, fig4_enumerator):
        trees = fig4_enumerator.trees("A", 8)
        seqs = {tuple(gr.leftmost_sequence(t)) for t in trees}
        assert len(seqs) == len(trees)


class TestNonContracting:
    def test_cnf_fixture_is_non_contracting(self, fig4):
        assert gr.is_non_contracting(fig4)

    def test_empty_production_contracts(self):
        g = gr.Grammar(
            typing={"A": 1},
            nonterminals=["A"],
            terminals=[],
            productions=[gr.Production("E", "A", hg.graph(["x"], [], ["x"]), {})],
            start="A")
        assert not gr.is_non_contracting(g)

    def test_cnf_of_fixtures_non_contracting_except_start_empty(self, fig6_cnf, anbncn_cnf):
        assert gr.is_non_contracting(fig6_cnf)
        # anbncn keeps its start-empty production, so the grammar is
        # only essentially non-contracting.
        assert not gr.is_non_contracting(anbncn_cnf)
        assert gr.has_start_empty_production(anbncn_cnf)


def test_direct_derive_label_mismatch(fig4):
    h = hg.handle("A", fig4.typing)
    with pytest.raises(gr.GrammarError):
        gr.direct_derive(fig4, h, h.edges[0].id, fig4.production("P6"))


def test_direct_derive_chain_reaches_language(fig4):
    h = hg.handle("A", fig4.typing)
    h = gr.direct_derive(fig4, h, h.edges[0].id, fig4.production("P3"))
    assert hg.size(h) == 2
    assert hg.validate(h, fig4.typing) == []


def test_grammar_json_roundtrip(fig2, fig3, fig4, fig6, anbncn):
    for g in (fig2, fig3, fig4, fig6, anbncn):
        again = gr.grammar_from_json(json.loads(json.dumps(gr.grammar_to_json(g))))
        assert gr.grammar_to_json(again) == gr.grammar_to_json(g)


def test_tree_json_roundtrip():
    again = gr.tree_from_json(json.loads(json.dumps(gr.tree_to_json(FIG7_TREE))))
    assert again == FIG7_TREE
