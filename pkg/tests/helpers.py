"""Shared test utilities: tiny brute-force checkers and graph enumeration."""

from __future__ import annotations

import itertools

import numpy as np

from linkclust import Hypergraph, Pattern, rng_from_seed


def is_valid_embedding(small: Hypergraph, host: Hypergraph, mapping: dict) -> bool:
    if len(set(mapping.values())) != small.n:
        return False
    return all(host.has_edge(tuple(mapping[v] for v in e)) for e in small)


def is_valid_coloring(host: Hypergraph, pattern: Pattern, colors) -> bool:
    allowed = set(pattern.edges)
    for e in host:
        vec = [0] * pattern.num_vertices
        for v in e:
            vec[colors[v]] += 1
        if tuple(vec) not in allowed:
            return False
    return True


def erdos_renyi(n: int, p: float, seed: int) -> Hypergraph:
    rng = rng_from_seed(seed)
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Hypergraph(2, n, edges)


def graphs_up_to_iso(n: int) -> list[tuple[tuple[int, int], ...]]:
    """All graphs on exactly n labeled vertices, one per isomorphism class."""
    pairs = list(itertools.combinations(range(n), 2))
    perms = list(itertools.permutations(range(n)))
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        edges = tuple(pairs[i] for i in range(len(pairs)) if mask >> i & 1)
        canon = min(
            tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
            for p in perms
        )
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return out


def brute_force_max_edges_without(small: Hypergraph, n: int) -> int:
    """Maximum edge count of an n-vertex graph avoiding ``small`` entirely,
    by exhaustive enumeration (tiny n only)."""
    from linkclust import find_embedding

    pairs = list(itertools.combinations(range(n), 2))
    best = 0
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if len(edges) <= best:
            continue
        g = Hypergraph(2, n, edges)
        if find_embedding(small, g) is None:
            best = len(edges)
    return best


def interior_points(dim: int, count: int, seed: int) -> np.ndarray:
    rng = rng_from_seed(seed)
    return rng.dirichlet(np.full(dim, 1.5), size=count)
