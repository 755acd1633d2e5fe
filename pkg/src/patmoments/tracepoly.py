"""
Exact trace polynomials for diagram operators.

For a (k,k)-diagram P and a permutation g acting diagonally on words, the
trace of (word-permutation of g) composed with phi(P) counts the part
labelings compatible with g.  The combinatorics reduces to a directed graph on
the parts of P: each tensor position r contributes an edge from the part
containing r to the part containing r' (stored once; loops allowed).  Along
any edge the target label is g applied to the source label, so within a
connected component one label choice determines all of them, constrained by
the cycles: a cycle with l_plus forward and l_minus backward edges forces the
labels to be fixed by g^(l_plus - l_minus).

Writing l for the gcd of those imbalances over all cycles of the component
(0 if acyclic), the number of valid labels is Q_l = sum over divisors d of l
of d*m_d (the points fixed by g^l), and Q_0 = n.  The trace is the product of
Q_l over components: an exact polynomial in n, m_1, ..., m_k of weighted
degree at most k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .diagrams import SetPartitionKK
from .errors import InternalCheckError
from .mpoly import MPoly


@dataclass(frozen=True)
class PartGraph:
    """Directed graph on the parts of a diagram; edges deduplicated."""

    parts: tuple[tuple[int, ...], ...]
    edges: frozenset[tuple[int, int]]


def build_part_graph(P: SetPartitionKK) -> PartGraph:
    """One edge per tensor position r: part(r) -> part(r'), stored once.

    >>> g = build_part_graph(SetPartitionKK.parse("{1,1'}"))
    >>> sorted(g.edges)
    [(0, 0)]
    """
    edges = set()
    for r in range(P.k):
        edges.add((P.part_index(r), P.part_index(P.k + r)))
    return PartGraph(P.parts, frozenset(edges))


def connected_components(graph: PartGraph) -> list[tuple[int, ...]]:
    """Components of the underlying undirected graph, as sorted vertex tuples."""
    adj: dict[int, set[int]] = {i: set() for i in range(len(graph.parts))}
    for u, v in graph.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen: set[int] = set()
    comps = []
    for start in range(len(graph.parts)):
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        comps.append(tuple(sorted(comp)))
    return comps

def component_l_tot(graph: PartGraph, component: tuple[int, ...]) -> int:
    """gcd of the orientation imbalance |l_plus - l_minus| over the component's
    cycles, computed from spanning-tree potentials; 0 when the component is a tree.

    Each vertex gets an integer potential by tree traversal (+1 along an
    edge's direction, -1 against it); every non-tree edge u->v then closes a
    cycle of imbalance |potential(u) + 1 - potential(v)|, and the gcd over the
    fundamental cycles equals the gcd over all cycles.
    """
    comp = set(component)
    edges = [(u, v) for (u, v) in graph.edges if u in comp]
    adj: dict[int, list[tuple[int, int, int]]] = {u: [] for u in comp}
    for idx, (u, v) in enumerate(edges):
        if u == v:
            continue
        adj[u].append((v, +1, idx))
        adj[v].append((u, -1, idx))
    root = min(comp)
    pot = {root: 0}
    tree_edges: set[int] = set()
    stack = [root]
    while stack:
        u = stack.pop()
        for v, step, idx in adj[u]:
            if v not in pot:
                pot[v] = pot[u] + step
                tree_edges.add(idx)
                stack.append(v)
    g = 0
    for idx, (u, v) in enumerate(edges):
        if idx in tree_edges:
            continue
        g = math.gcd(g, abs(pot[u] + 1 - pot[v]))
    return g


def q_factor(l: int, k_bound: int) -> MPoly:
    """Number of labels fixed by g^l, as a polynomial: Q_0 = n, Q_l = sum_{d|l} d*m_d.

    >>> str(q_factor(6, 6))
    '6*m_6 + 3*m_3 + 2*m_2 + m_1'
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    if l > k_bound:
        raise InternalCheckError(f"cycle imbalance {l} exceeds the bound k={k_bound}")
    if l == 0:
        return MPoly.n_var().promote(k_bound)
    terms = {}
    for d in range(1, l + 1):
        if l % d == 0:
            key = [0] * (k_bound + 1)
            key[d] = 1
            terms[tuple(key)] = d
    return MPoly(k_bound, terms)


_TRACE_CACHE: dict[SetPartitionKK, MPoly] = {}


def trace_polynomial(P: SetPartitionKK) -> MPoly:
    """tr(g acting with P on words of length k) as a polynomial in n, m_1..m_k.

    Product of one Q-factor per connected component of the part graph; the
    weighted degree never exceeds k (asserted).

    >>> str(trace_polynomial(SetPartitionKK.parse("{1,2'}|{2,1'}")))
    '2*m_2 + m_1'
    """
    cached = _TRACE_CACHE.get(P)
    if cached is not None:
        return cached
    graph = build_part_graph(P)
    poly = MPoly.const(1, P.k)
    for comp in connected_components(graph):
        poly = poly * q_factor(component_l_tot(graph, comp), P.k)
    if poly.weighted_degree() > P.k:
        raise InternalCheckError(f"trace polynomial degree {poly.weighted_degree()} exceeds k={P.k}")
    _TRACE_CACHE[P] = poly
    return poly
