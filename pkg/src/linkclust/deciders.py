"""Deciders for dense hypergraphs built on link-distance clustering.

The shared mechanism clusters vertices into balls of small link distance
around greedily chosen seeds, then tests whether the class map of the
resulting partition legally colors every edge.  Above the documented degree
thresholds this is exact; below them the deciders either refuse (strict
mode) or fall back to the exhaustive oracles.

All degree and radius comparisons are exact integer or rational arithmetic;
no verdict ever depends on a float rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import (
    InvalidInput,
    NumericFailure,
    PatternNotMinimal,
    PatternNotRigid,
)
from .hypergraph import Hypergraph, Partition
from .lagrangian import OptConfig, is_minimal, lagrangian, rigidity_report
from .oracles import DEFAULT_BUDGET_S, find_embedding, find_homomorphism, turan_number
from .patterns import Pattern

__all__ = [
    "Verdict",
    "DecideStats",
    "Decision",
    "DeciderConfig",
    "PeelResult",
    "hamming_clustering",
    "decide_k_colorable",
    "decide_hom_minimal",
    "decide_shom_rigid",
    "embed_min_decide",
    "peel",
    "clique_avg_decide",
]


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    PRECONDITION_VIOLATED = "precondition_violated"


@dataclass
class DecideStats:
    """Exact work counters for the decider's main loops."""

    distance_evals: int = 0
    edges_scanned: int = 0
    work_units: int = 0
    z: Optional[int] = None


@dataclass(frozen=True)
class Decision:
    """Outcome of a decider.

    A yes-verdict carries the certifying partition; a no-verdict carries a
    violating edge or a machine-readable reason in ``details``.
    """

    verdict: Verdict
    partition: Optional[Partition] = None
    violating_edge: Optional[tuple[int, ...]] = None
    reason: Optional[str] = None
    details: dict = field(default_factory=dict)
    stats: DecideStats = field(default_factory=DecideStats)

    @property
    def is_yes(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def is_no(self) -> bool:
        return self.verdict is Verdict.NO


@dataclass(frozen=True)
class DeciderConfig:
    """Caller-supplied slack constants for the deciders.

    ``eps`` is the accepted slack below the theoretical degree threshold,
    ``n_small`` the host size under which the exhaustive oracle takes over
    (defaults per decider), and ``strict`` controls whether sub-threshold
    inputs refuse or silently fall back to the oracle (exponential worst
    case).
    """

    eps: float = 0.0
    n_small: Optional[int] = None
    strict: bool = True
    opt: OptConfig = OptConfig()
    oracle_budget_s: float = DEFAULT_BUDGET_S

    def __post_init__(self):
        if self.eps < 0:
            raise InvalidInput("eps must be nonnegative")
        if self.n_small is not None and self.n_small < 1:
            raise InvalidInput("n_small must be positive")


# -- the clustering core -------------------------------------------------------


def _cluster(
    hypergraph: Hypergraph, num_classes: int, delta: Fraction
) -> tuple[np.ndarray, int]:
    """Greedy ball clustering; returns (labels, distance evaluations).

    Seeds are the lowest-index vertices not yet covered.  Each of the first
    ``num_classes - 1`` seeds grabs the closed ball of link-distance radius
    ``delta * n**(r-1)`` around itself (within the whole vertex set); the
    last class absorbs the uncovered remainder.  A vertex falling into
    several balls lands in the latest one, and classes may come out empty.
    """
    n = hypergraph.n
    radius = int(delta * n ** (hypergraph.r - 1))  # Fraction floor; dist is integral
    labels = np.zeros(n, dtype=np.int64)
    covered = np.zeros(n, dtype=bool)
    evals = 0
    packed = hypergraph.packed_adjacency if (hypergraph.r == 2 and n) else None
    if packed is not None:
        xor_buf = np.empty_like(packed)
        dist_buf = np.empty(n, dtype=np.int64)
    for i in range(num_classes):
        if covered.all():
            break
        if i < num_classes - 1:
            seed = int(np.argmax(~covered))
            if packed is not None:
                np.bitwise_xor(packed, packed[seed], out=xor_buf)
                np.bitwise_count(xor_buf, out=xor_buf)
                xor_buf.sum(axis=1, dtype=np.int64, out=dist_buf)
                members = dist_buf <= radius
            else:
                members = hypergraph.distances_from(seed) <= radius
            evals += n - 1
        else:
            members = ~covered
        labels[members] = i
        covered |= members
    return labels, evals


def hamming_clustering(
    hypergraph: Hypergraph, num_classes: int, delta
) -> Partition:
    """Partition the vertex set by link-distance ball clustering.

    ``delta`` may be anything :class:`~fractions.Fraction` accepts; the ball
    radius comparison is exact.  Deterministic given the vertex order.
    """
    if num_classes < 2:
        raise InvalidInput("need at least 2 classes")
    frac = Fraction(delta)
    if frac < 0 or frac > 1:
        raise InvalidInput(f"delta must lie in [0, 1], got {delta!r}")
    labels, _ = _cluster(hypergraph, num_classes, frac)
    return Partition.from_labels(labels, num_classes)


# -- signature tests -----------------------------------------------------------


def _first_internal_edge(
    graph: Hypergraph, labels: np.ndarray, num_classes: int
) -> Optional[int]:
    """Index of the first edge with both ends in one class, or ``None``.

    The existence check runs as packed-row AND passes per class (uniform
    popcount-style work); the index is located only when a violation exists.
    """
    rows = graph.packed_adjacency
    width = rows.shape[1]
    violated = False
    for i in range(num_classes):
        members = np.nonzero(labels == i)[0]
        if len(members) < 2:
            continue
        mask = np.packbits(labels == i, bitorder="big")[:width]
        if np.any(rows[members] & mask[None, :]):
            violated = True
            break
    if not violated:
        return None
    arr = graph.edge_array
    step = 1 << 18
    for start in range(0, arr.shape[0], step):
        block = arr[start : start + step]
        lab = labels[block]
        hits = np.nonzero(lab[:, 0] == lab[:, 1])[0]
        if hits.size:
            return start + int(hits[0])
    return None


def _edge_signatures(
    hypergraph: Hypergraph, labels: np.ndarray, num_classes: int
) -> tuple[np.ndarray, np.ndarray]:
    """Distinct class-count vectors over the edges and one representative
    edge index (the lowest) per distinct vector."""
    m = len(hypergraph)
    if m == 0:
        return np.zeros((0, num_classes), dtype=np.int64), np.zeros(0, dtype=np.int64)
    lab = labels[hypergraph.edge_array]
    counts = np.zeros((m, num_classes), dtype=np.int64)
    rows = np.arange(m)
    for j in range(hypergraph.r):
        np.add.at(counts, (rows, lab[:, j]), 1)
    distinct, inverse = np.unique(counts, axis=0, return_inverse=True)
    reps = np.full(distinct.shape[0], m, dtype=np.int64)
    np.minimum.at(reps, inverse, rows)
    return distinct, reps


def _match_to_pattern(
    distinct: np.ndarray, pattern: Pattern
) -> Optional[dict[int, int]]:
    """An injective relabeling of clusters to pattern vertices under which
    every distinct signature is a pattern edge, or ``None``.

    Cluster indices come from seed discovery order, so the identity need
    not work even when some relabeling does.
    """
    allowed = set(pattern.edges)
    num = pattern.num_vertices
    active = sorted(
        {int(c) for sig in distinct for c in np.nonzero(sig)[0]}
    )
    sigs = [tuple(int(x) for x in sig) for sig in distinct]

    assignment: dict[int, int] = {}

    def feasible() -> bool:
        for sig in sigs:
            ok = False
            for a in allowed:
                if all(a[img] >= sig[c] for c, img in assignment.items()):
                    ok = True
                    break
            if not ok:
                return False
        return True

    def complete() -> bool:
        for sig in sigs:
            target = [0] * num
            leftover = 0
            for c, count in enumerate(sig):
                if count == 0:
                    continue
                if c in assignment:
                    target[assignment[c]] = count
                else:
                    leftover += count
            if leftover:
                return False  # unreachable: every active cluster is assigned
            if tuple(target) not in allowed:
                return False
        return True

    def search(i: int) -> bool:
        if i == len(active):
            return complete()
        for img in range(num):
            if img in assignment.values():
                continue
            assignment[active[i]] = img
            if feasible() and search(i + 1):
                return True
            del assignment[active[i]]
        return False

    if len(active) > num:
        return None
    if not search(0):
        return None
    leftover_imgs = [p for p in range(num) if p not in assignment.values()]
    for c in range(num):
        if c not in assignment:
            assignment[c] = leftover_imgs.pop(0)
    return assignment


def _signature_verdict(
    hypergraph: Hypergraph,
    pattern: Pattern,
    labels: np.ndarray,
    stats: DecideStats,
) -> tuple[Optional[np.ndarray], Optional[tuple[int, ...]]]:
    """Relabel clusters onto pattern vertices so the class map colors every
    edge, or return a violating edge.

    Returns (relabeled labels, None) on success, (None, edge) otherwise.
    """
    num = pattern.num_vertices
    distinct, reps = _edge_signatures(hypergraph, labels, num)
    stats.edges_scanned += len(hypergraph)

    # A class-count profile that no pattern edge has cannot be fixed by any
    # relabeling; report the earliest offending edge.
    allowed_profiles = {tuple(sorted(x for x in e if x)) for e in pattern.edges}
    bad = [
        int(reps[i])
        for i in range(distinct.shape[0])
        if tuple(sorted(int(x) for x in distinct[i] if x)) not in allowed_profiles
    ]
    if bad:
        edge = tuple(int(v) for v in hypergraph.edge_array[min(bad)])
        return None, edge

    mapping = _match_to_pattern(distinct, pattern)
    if mapping is None:
        # No single profile is wrong, but the signatures are jointly
        # unmatchable.  Report the earliest edge whose signature completes an
        # unmatchable prefix (in representative order).
        order = np.argsort(reps)
        for t in range(1, len(order) + 1):
            if _match_to_pattern(distinct[order[:t]], pattern) is None:
                idx = int(reps[order[t - 1]])
                edge = tuple(int(v) for v in hypergraph.edge_array[idx])
                return None, edge
        raise AssertionError("unmatchable signature set had no bad prefix")
    remap = np.zeros(num, dtype=np.int64)
    for cluster, img in mapping.items():
        remap[cluster] = img
    return remap[labels], None


# -- oracle fallbacks ----------------------------------------------------------


def _oracle_hom_decision(
    hypergraph: Hypergraph,
    pattern: Pattern,
    surjective: bool,
    stats: DecideStats,
    budget_s: float,
    note: str,
) -> Decision:
    coloring = find_homomorphism(hypergraph, pattern, surjective, budget_s)
    if coloring is None:
        return Decision(
            Verdict.NO,
            reason=f"exhaustive search found no coloring ({note})",
            stats=stats,
        )
    part = Partition.from_labels(np.array(coloring), pattern.num_vertices)
    return Decision(
        Verdict.YES,
        partition=part,
        reason=f"exhaustive search ({note})",
        stats=stats,
    )


def _precondition(
    reason: str, details: dict, stats: DecideStats
) -> Decision:
    return Decision(
        Verdict.PRECONDITION_VIOLATED, reason=reason, details=details, stats=stats
    )


def _finish_work(stats: DecideStats, hypergraph: Hypergraph) -> DecideStats:
    stats.work_units = (
        stats.distance_evals * hypergraph.n ** (hypergraph.r - 1)
        + hypergraph.r * stats.edges_scanned
    )
    return stats


# -- graph colorability under minimum degree ------------------------------------


def decide_k_colorable(
    graph: Hypergraph, num_colors: int, cfg: DeciderConfig = DeciderConfig()
) -> Decision:
    """Decide proper ``num_colors``-colorability of a dense graph.

    Requires minimum degree strictly above ``(3k-4)/(3k-1) * n`` (checked by
    exact cross-multiplication); above it the ball clustering recovers the
    unique coloring when one exists, so the answer is the independence of
    all classes.  Below it the decision is refused, or delegated to the
    exhaustive oracle when ``cfg.strict`` is false.
    """
    if graph.r != 2:
        raise InvalidInput("colorability decider expects a graph (r = 2)")
    if num_colors < 2:
        raise InvalidInput("need at least 2 colors")
    if graph.n == 0:
        raise InvalidInput("empty vertex set")
    stats = DecideStats()
    n, k = graph.n, num_colors
    dmin = graph.min_degree()
    if not (3 * k - 1) * dmin > (3 * k - 4) * n:
        if cfg.strict:
            return _precondition(
                f"minimum degree {dmin} is not above {3 * k - 4}/{3 * k - 1} of {n}",
                {"min_degree": dmin, "bound": (3 * k - 4, 3 * k - 1), "n": n},
                stats,
            )
        return _oracle_hom_decision(
            graph,
            Pattern.complete_graph(k),
            False,
            stats,
            cfg.oracle_budget_s,
            "sub-threshold fallback",
        )

    labels, evals = _cluster(graph, k, Fraction(2, 3 * k - 1))
    stats.distance_evals = evals
    idx = _first_internal_edge(graph, labels, k)
    if idx is not None:
        stats.edges_scanned = idx + 1
        _finish_work(stats, graph)
        edge = tuple(int(v) for v in graph.edge_array[idx])
        return Decision(
            Verdict.NO,
            violating_edge=edge,
            reason=f"edge {edge} lies inside class {int(labels[edge[0]])}",
            stats=stats,
        )
    stats.edges_scanned = len(graph)
    _finish_work(stats, graph)
    return Decision(
        Verdict.YES, partition=Partition.from_labels(labels, k), stats=stats
    )


# -- pattern colorability under minimum degree -----------------------------------


def _exact_fraction(value: float, exact: Optional[Fraction]) -> Fraction:
    return exact if exact is not None else Fraction(value)


def _clustering_radius(smallest_coord: Fraction, r: int) -> Fraction:
    return (smallest_coord / 2) ** (r - 1) / math.factorial(r - 1)


def _hom_core(
    hypergraph: Hypergraph,
    pattern: Pattern,
    cfg: DeciderConfig,
    threshold: Fraction,
    smallest_coord: Fraction,
    surjective: bool,
) -> Decision:
    stats = DecideStats()
    n = hypergraph.n
    n_small = (
        cfg.n_small
        if cfg.n_small is not None
        else 3 * pattern.num_vertices * hypergraph.r
    )
    if n < n_small:
        if cfg.strict:
            return _precondition(
                f"host has {n} vertices, below the small-instance cutoff {n_small}",
                {"n": n, "n_small": n_small},
                stats,
            )
        return _oracle_hom_decision(
            hypergraph, pattern, surjective, stats, cfg.oracle_budget_s, "small host"
        )
    dmin = hypergraph.min_degree()
    bound = (threshold - Fraction(cfg.eps)) * Fraction(n) ** (hypergraph.r - 1)
    if not Fraction(dmin) >= bound:
        if cfg.strict:
            return _precondition(
                f"minimum degree {dmin} below the threshold {float(bound):.6g}",
                {"min_degree": dmin, "threshold": str(bound)},
                stats,
            )
        return _oracle_hom_decision(
            hypergraph,
            pattern,
            surjective,
            stats,
            cfg.oracle_budget_s,
            "sub-threshold fallback",
        )

    if smallest_coord <= 0:
        raise NumericFailure(
            "clustering radius degenerated to zero", float(smallest_coord)
        )
    radius = _clustering_radius(smallest_coord, hypergraph.r)
    labels, evals = _cluster(hypergraph, pattern.num_vertices, radius)
    stats.distance_evals = evals
    relabeled, bad_edge = _signature_verdict(hypergraph, pattern, labels, stats)
    _finish_work(stats, hypergraph)
    if bad_edge is not None:
        return Decision(
            Verdict.NO,
            violating_edge=bad_edge,
            reason=f"edge {bad_edge} has no legal class signature",
            stats=stats,
        )
    part = Partition.from_labels(relabeled, pattern.num_vertices)
    if surjective and not part.has_full_support():
        empty = next(i for i, c in enumerate(part.classes) if not c)
        return Decision(
            Verdict.NO,
            reason=f"class {empty} is empty; no surjective coloring exists",
            details={"empty_class": empty},
            stats=stats,
        )
    return Decision(Verdict.YES, partition=part, stats=stats)


def decide_hom_minimal(
    hypergraph: Hypergraph, pattern: Pattern, cfg: DeciderConfig = DeciderConfig()
) -> Decision:
    """Decide colorability by a minimal pattern for dense hosts.

    The host's minimum degree must reach ``(r * L - eps) * n**(r-1)`` where
    L is the pattern's simplex maximum; the pattern must certify minimal.
    The certifying coloring, when it exists, is unique up to the pattern's
    automorphisms.
    """
    if hypergraph.r != pattern.r:
        raise InvalidInput("uniformity mismatch between host and pattern")
    mrep = is_minimal(pattern, cfg.opt)
    if not mrep.minimal:
        raise PatternNotMinimal(
            f"pattern is not minimal (margin {mrep.margin:.3g}); "
            "this decider requires a minimal pattern"
        )
    lam = lagrangian(pattern, cfg.opt)
    rig = rigidity_report(pattern, cfg.opt)
    threshold = hypergraph.r * _exact_fraction(lam.value, lam.value_exact)
    smallest = _exact_fraction(rig.smallest_coordinate, rig.smallest_exact)
    return _hom_core(hypergraph, pattern, cfg, threshold, smallest, surjective=False)


def decide_shom_rigid(
    hypergraph: Hypergraph, pattern: Pattern, cfg: DeciderConfig = DeciderConfig()
) -> Decision:
    """Decide surjective colorability by a rigid pattern for dense hosts.

    As :func:`decide_hom_minimal`, with the threshold taken from the maximin
    level of the pattern's partials and every class required nonempty.
    """
    if hypergraph.r != pattern.r:
        raise InvalidInput("uniformity mismatch between host and pattern")
    rig = rigidity_report(pattern, cfg.opt)
    if not rig.rigid:
        raise PatternNotRigid(
            f"pattern is not rigid ({(rig.certificate or {}).get('kind', 'unknown')}); "
            "this decider requires a rigid pattern"
        )
    threshold = _exact_fraction(rig.maximin, rig.maximin_exact)
    smallest = _exact_fraction(rig.smallest_coordinate, rig.smallest_exact)
    return _hom_core(hypergraph, pattern, cfg, threshold, smallest, surjective=True)


# -- freeness under minimum degree ----------------------------------------------


def embed_min_decide(
    hypergraph: Hypergraph,
    small: Hypergraph,
    pattern: Pattern,
    cfg: DeciderConfig = DeciderConfig(),
) -> Decision:
    """Decide whether a dense host avoids ``small`` entirely.

    The caller supplies the pairing: hosts colorable by ``pattern`` avoid
    ``small``, and dense ``small``-free hosts are pattern-colorable.  Small
    hosts go straight to the exhaustive embedding search; large ones are
    clustered and answered by the class-signature test.
    """
    if hypergraph.r != small.r or hypergraph.r != pattern.r:
        raise InvalidInput("uniformity mismatch")
    stats = DecideStats()
    n = hypergraph.n
    n_small = cfg.n_small if cfg.n_small is not None else 3 * small.n
    if n < n_small:
        emb = find_embedding(small, hypergraph, cfg.oracle_budget_s)
        if emb is None:
            return Decision(
                Verdict.YES,
                reason="exhaustive embedding search found none (small host)",
                stats=stats,
            )
        return Decision(
            Verdict.NO,
            reason="exhaustive embedding search found a copy (small host)",
            details={"embedding": emb},
            stats=stats,
        )

    lam = lagrangian(pattern, cfg.opt)
    rig = rigidity_report(pattern, cfg.opt)
    threshold = hypergraph.r * _exact_fraction(lam.value, lam.value_exact)
    bound = (threshold - Fraction(cfg.eps)) * Fraction(n) ** (hypergraph.r - 1)
    dmin = hypergraph.min_degree()
    if not Fraction(dmin) >= bound:
        if cfg.strict:
            return _precondition(
                f"minimum degree {dmin} below the threshold {float(bound):.6g}",
                {"min_degree": dmin, "threshold": str(bound)},
                stats,
            )
        emb = find_embedding(small, hypergraph, cfg.oracle_budget_s)
        if emb is None:
            return Decision(
                Verdict.YES,
                reason="exhaustive embedding search found none (sub-threshold)",
                stats=stats,
            )
        return Decision(
            Verdict.NO,
            reason="exhaustive embedding search found a copy (sub-threshold)",
            details={"embedding": emb},
            stats=stats,
        )

    smallest = _exact_fraction(rig.smallest_coordinate, rig.smallest_exact)
    if smallest <= 0:
        raise InvalidInput(
            "pattern admits no positive clustering radius; unusable pairing"
        )
    radius = _clustering_radius(smallest, hypergraph.r)
    labels, evals = _cluster(hypergraph, pattern.num_vertices, radius)
    stats.distance_evals = evals
    relabeled, bad_edge = _signature_verdict(hypergraph, pattern, labels, stats)
    _finish_work(stats, hypergraph)
    if bad_edge is not None:
        return Decision(
            Verdict.NO,
            violating_edge=bad_edge,
            reason=f"edge {bad_edge} has no legal class signature",
            stats=stats,
        )
    return Decision(
        Verdict.YES,
        partition=Partition.from_labels(relabeled, pattern.num_vertices),
        stats=stats,
    )


# -- peeling and near-extremal clique freeness -----------------------------------


@dataclass(frozen=True)
class PeelResult:
    order: tuple[int, ...]
    z: int
    survivors: tuple[int, ...]


def peel(graph: Hypergraph, num_parts: int) -> PeelResult:
    """Iterated minimum-degree removal until the survivor graph is dense.

    Repeatedly removes a minimum-degree vertex (lowest index on ties) until
    the survivor graph's minimum degree strictly exceeds
    ``(3k-4)/(3k-1) * (n - removed)`` by exact cross-multiplication, or the
    graph is exhausted, in which case ``z = n``.
    """
    if graph.r != 2:
        raise InvalidInput("peeling expects a graph (r = 2)")
    if num_parts < 2:
        raise InvalidInput("need at least 2 parts")
    n = graph.n
    k = num_parts
    rows = graph.packed_adjacency
    alive = np.ones(n, dtype=bool)
    deg = graph.degrees().astype(np.int64).copy()
    order: list[int] = []
    sentinel = np.int64(n + 1)
    for removed in range(n):
        masked = np.where(alive, deg, sentinel)
        v = int(np.argmin(masked))
        if (3 * k - 1) * int(masked[v]) > (3 * k - 4) * (n - removed):
            break
        order.append(v)
        alive[v] = False
        neigh = np.unpackbits(rows[v], count=n).astype(bool) & alive
        deg[neigh] -= 1
    survivors = tuple(int(v) for v in np.nonzero(alive)[0])
    return PeelResult(order=tuple(order), z=len(order), survivors=survivors)


def clique_avg_decide(
    graph: Hypergraph, num_parts: int, slack: int
) -> Decision:
    """Decide clique freeness for graphs within ``slack`` edges of the
    extremal multipartite count.

    Requires ``|G| >= ex(n) - slack`` and ``n >= max(6k^2, 30*slack*k)``.
    Peels low-degree vertices, refuses when too many peel off, clusters the
    dense survivor graph, reinserts the peeled vertices into classes they
    have no neighbors in, and accepts when the merged classes are all
    independent.
    """
    if graph.r != 2:
        raise InvalidInput("clique decider expects a graph (r = 2)")
    if num_parts < 2:
        raise InvalidInput("need at least 2 parts")
    if slack < 0:
        raise InvalidInput("edge slack must be nonnegative")
    stats = DecideStats()
    n, k = graph.n, num_parts
    extremal = turan_number(n, k)
    if len(graph) < extremal - slack:
        return _precondition(
            f"graph has {len(graph)} edges, below {extremal} - {slack}",
            {"edges": len(graph), "extremal": extremal, "slack": slack},
            stats,
        )
    gate = max(6 * k * k, 30 * slack * k)
    if n < gate:
        return _precondition(
            f"{n} vertices, below the size gate {gate}",
            {"n": n, "gate": gate},
            stats,
        )

    # step 1: peel; too many removals already certify a clique
    peeled = peel(graph, k)
    z = peeled.z
    stats.z = z
    if 8 * n * z > 12 * k * k * (8 * slack + k):
        _finish_work(stats, graph)
        return Decision(
            Verdict.NO,
            reason=f"{z} vertices peeled, above the bound "
            f"12k^2(slack + k/8)/n = {12 * k * k * (8 * slack + k) / (8 * n):.3f}",
            details={"z": z, "order": peeled.order},
            stats=stats,
        )

    # step 2: cluster the survivor graph
    survivors = np.array(peeled.survivors, dtype=np.int64)
    sub, _ = graph.induced(survivors)
    labels_sub, evals = _cluster(sub, k, Fraction(1, 3 * k + 1))
    stats.distance_evals = evals
    if len(sub):
        stats.edges_scanned += len(sub)
        idx = _first_internal_edge(sub, labels_sub, k)
        if idx is not None:
            edge = tuple(int(survivors[v]) for v in sub.edge_array[idx])
            _finish_work(stats, graph)
            return Decision(
                Verdict.NO,
                violating_edge=edge,
                reason=f"survivor edge {edge} lies inside a class",
                stats=stats,
            )

    # step 3: reinsert peeled vertices into classes where they have no neighbor
    rows = graph.packed_adjacency
    width = rows.shape[1] if rows.size else (n + 7) // 8
    class_masks = np.zeros((k, width), dtype=np.uint8)
    member_bits = np.zeros(n, dtype=bool)
    for j in range(k):
        member_bits[:] = False
        member_bits[survivors[labels_sub == j]] = True
        class_masks[j] = np.packbits(member_bits, bitorder="big")[:width]
    full_labels = np.full(n, -1, dtype=np.int64)
    full_labels[survivors] = labels_sub
    for v in peeled.order:
        row = rows[v]
        target = -1
        for j in range(k):
            if not np.any(row & class_masks[j]):
                target = j
                break
        if target == -1:
            _finish_work(stats, graph)
            return Decision(
                Verdict.NO,
                reason=f"peeled vertex {v} has neighbors in every class",
                details={"vertex": int(v)},
                stats=stats,
            )
        full_labels[v] = target

    # step 4: the merged partition must be proper
    stats.edges_scanned += len(graph)
    idx = _first_internal_edge(graph, full_labels, k)
    _finish_work(stats, graph)
    if idx is not None:
        edge = tuple(int(v) for v in graph.edge_array[idx])
        return Decision(
            Verdict.NO,
            violating_edge=edge,
            reason=f"merged class contains edge {edge}",
            stats=stats,
        )
    return Decision(
        Verdict.YES,
        partition=Partition.from_labels(full_labels, k),
        stats=stats,
    )
