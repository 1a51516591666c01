"""Derivation-count tables for CNF grammars.

``pre`` fills two matrices of exact (arbitrary precision) integers:
m1[A][l] counts the ordered derivation trees from nonterminal A whose
yield has size l + type(A), and m2[p][l] the trees whose root is
production p.  Counts grow exponentially in l, so entries are plain
Python ints and serialize as decimal strings.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .cnf import LAMBDA, NONTERMINAL, TERMINAL, Shorthand, shorthand
from .grammar import Grammar, GrammarError, Production, grammar_to_json


class CountError(Exception):
    """Bad lookup or malformed table data."""


@dataclass
class CountTables:
    n_max: int
    m1: dict[str, list[int]]  # nonterminal -> counts indexed by l in 0..n_max
    m2: dict[str, list[int]]  # production name -> counts


def pre(g: Grammar, n: int, shorthands: list[Shorthand] | None = None) -> CountTables:
    """Build the count tables for all size offsets l with 0 <= l <= n.

    Terminal productions with i internal nodes seed m2[p][i+1] = 1 and
    lambda productions m2[p][i] = 1 (the l = 0 column exists solely for
    a start-empty production).  A nonterminal production A -> BC with i
    internal nodes accumulates, for every split of the remaining budget,

        m2[p][l] = sum over 0 < k < l - i of m1[B][k] * m1[C][l - i - k]

    and each m1 column is the sum of its productions' m2 column.  The
    columns are filled in ascending l with every m2 entry computed
    before the m1 fold of the same column, so the row-sum identity holds
    for every filled cell even when i = 0.
    """
    if n < 1:
        raise CountError(f"table size must be positive, got {n}")
    if shorthands is None:
        shorthands = shorthand(g)
    width = n + 1
    m1 = {a: [0] * width for a in g.nonterminals}
    m2 = {sh.name: [0] * width for sh in shorthands}

    nonterminal_shorthands = []
    for sh in shorthands:
        if sh.kind == TERMINAL:
            if sh.internal + 1 <= n:
                m2[sh.name][sh.internal + 1] = 1
        elif sh.kind == LAMBDA:
            if sh.internal <= n:
                m2[sh.name][sh.internal] = 1
        else:
            nonterminal_shorthands.append(sh)

    by_lhs: dict[str, list[str]] = {a: [] for a in g.nonterminals}
    for sh in shorthands:
        by_lhs[sh.lhs].append(sh.name)

    for a in g.nonterminals:
        m1[a][0] = sum(m2[name][0] for name in by_lhs[a])
    for l in range(1, width):
        for sh in nonterminal_shorthands:
            budget = l - sh.internal
            if budget < 2:
                continue
            b_row, c_row = m1[sh.labels[0]], m1[sh.labels[1]]
            m2[sh.name][l] = sum(
                b_row[k] * c_row[budget - k] for k in range(1, budget))
        for a in g.nonterminals:
            m1[a][l] = sum(m2[name][l] for name in by_lhs[a])

    return CountTables(n_max=n, m1=m1, m2=m2)


def table_lookup(tables: CountTables, nonterminal: str, l: int) -> int:
    if nonterminal not in tables.m1:
        raise CountError(f"unknown nonterminal {nonterminal!r}")
    if not 0 <= l <= tables.n_max:
        raise CountError(f"offset {l} outside 0..{tables.n_max}")
    return tables.m1[nonterminal][l]


def production_weights(tables: CountTables, g: Grammar,
                       nonterminal: str, l: int) -> list[tuple[Production, int]]:
    """Per-production derivation counts at offset l, in declaration order.

    The weights sum to m1[nonterminal][l] by the table invariant.
    """
    if not 0 <= l <= tables.n_max:
        raise CountError(f"offset {l} outside 0..{tables.n_max}")
    out = []
    for p in g.productions:
        if p.lhs == nonterminal:
            if p.name not in tables.m2:
                raise CountError(f"tables are missing production {p.name!r}")
            out.append((p, tables.m2[p.name][l]))
    return out


# --- serialization and caching ---------------------------------------------


def grammar_digest(g: Grammar) -> str:
    """Content digest of the grammar's canonical JSON encoding."""
    payload = json.dumps(grammar_to_json(g), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def tables_to_json(tables: CountTables, digest: str | None = None) -> dict:
    obj = {
        "n_max": tables.n_max,
        "m1": {a: [str(x) for x in row] for a, row in tables.m1.items()},
        "m2": {p: [str(x) for x in row] for p, row in tables.m2.items()},
    }
    if digest is not None:
        obj["grammar_digest"] = digest
    return obj


def tables_from_json(obj: dict) -> CountTables:
    try:
        return CountTables(
            n_max=int(obj["n_max"]),
            m1={str(a): [int(x) for x in row] for a, row in obj["m1"].items()},
            m2={str(p): [int(x) for x in row] for p, row in obj["m2"].items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CountError(f"malformed count tables: {exc}") from exc
