"""Isomorphism tests for structured posets (order plus ')."""

import itertools
from typing import Tuple

import networkx as nx

from src.poset_core.poset import StructuredPoset


def to_graph(sp: StructuredPoset) -> nx.DiGraph:
    """Strict order edges tagged 'leq' and operation edges tagged 'op' on one digraph."""
    p = sp.poset
    graph = nx.DiGraph()
    graph.add_nodes_from(range(p.size))
    for i in range(p.size):
        for j in range(p.size):
            if i != j and p.le(i, j):
                graph.add_edge(i, j, kinds=frozenset({"leq"}))
    for i in range(p.size):
        j = sp.prime(i)
        if graph.has_edge(i, j):
            graph[i][j]["kinds"] = graph[i][j]["kinds"] | {"op"}
        else:
            graph.add_edge(i, j, kinds=frozenset({"op"}))
    return graph


def invariant_vector(sp: StructuredPoset) -> Tuple:
    """Isomorphism invariant: size plus the sorted per-element cone and image profile."""
    p = sp.poset
    profile = sorted(
        (
            p.down[i].bit_count(),
            p.up[i].bit_count(),
            p.down[sp.prime(i)].bit_count(),
            p.up[sp.prime(i)].bit_count(),
            sp.prime(i) == i,
            sp.prime(sp.prime(i)) == i,
        )
        for i in range(p.size)
    )
    return (p.size, tuple(profile))


def are_isomorphic(a: StructuredPoset, b: StructuredPoset) -> bool:
    if invariant_vector(a) != invariant_vector(b):
        return False
    return nx.is_isomorphic(
        to_graph(a), to_graph(b), edge_match=lambda e1, e2: e1["kinds"] == e2["kinds"]
    )


def brute_force_key(sp: StructuredPoset) -> Tuple:
    """Least (order matrix, operation) over all relabellings; equal keys mean isomorphic."""
    p = sp.poset
    n = p.size
    best = None
    for sigma in itertools.permutations(range(n)):
        inverse = [0] * n
        for i, s in enumerate(sigma):
            inverse[s] = i
        order = tuple(p.le(inverse[u], inverse[v]) for u in range(n) for v in range(n))
        op = tuple(sigma[sp.prime(inverse[u])] for u in range(n))
        candidate = (order, op)
        if best is None or candidate < best:
            best = candidate
    return best
