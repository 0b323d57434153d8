"""Δ-class partitions, per-concept passkey Δ, Δ-key queries and the level x Δ
distribution.

A d-class is represented by its maximum, the d-closed concept reached from any
member by following Ref while Δ < d.  Partitions are computed by pointer
jumping on the array ``parent[c] = ref[c] if delta_cls[c] < d else c``; each
round squares the pointer (``p = p[p]``) so a chain of length L resolves in
ceil(log2 L) rounds.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .concepts import DEFAULT_CONCEPT_CAP, ConceptGraph, delta_closure, mine_graph
from .context import AttributeSet, FormalContext, derive_objects, members
from .levels import ClosureStructure, enumerate_levels


def class_pointers(graph: ConceptGraph, d: int) -> np.ndarray:
    """Representative (class maximum) of every concept at threshold d."""
    n = len(graph)
    ids = np.arange(n, dtype=np.int64)
    parent = np.where((graph.delta_cls < d) & (graph.ref >= 0), graph.ref, ids)
    while True:
        nxt = parent[parent]
        if np.array_equal(nxt, parent):
            return parent
        parent = nxt


@dataclass(frozen=True)
class DeltaClass:
    representative: int
    members: tuple[int, ...]
    level: int | None


@dataclass(eq=False)
class DeltaPartition:
    threshold: int
    classes: list[DeltaClass]
    class_of: np.ndarray

    def __len__(self):
        return len(self.classes)

    @property
    def representatives(self) -> list[int]:
        return [c.representative for c in self.classes]


def compute_partition(graph: ConceptGraph, d: int, structure: ClosureStructure | None = None) -> DeltaPartition:
    if not 1 <= d <= max(graph.n_objects, 1):
        raise ValueError(f"threshold d={d} outside [1, {graph.n_objects}]")
    cls = class_pointers(graph, d)
    order = np.argsort(cls, kind="stable")
    reps, starts = np.unique(cls[order], return_index=True)
    bounds = list(starts[1:]) + [len(order)]
    classes = []
    for r, lo, hi in zip(reps, starts, bounds):
        mem = tuple(int(x) for x in order[lo:hi])
        lv = None
        if structure is not None:
            lvs = structure.level[list(mem)]
            lvs = lvs[lvs >= 0]
            lv = int(lvs.min()) if lvs.size else None
        classes.append(DeltaClass(int(r), mem, lv))
    return DeltaPartition(d, classes, cls)


@dataclass(eq=False)
class DeltaAnnotation:
    graph: ConceptGraph
    structure: ClosureStructure
    delta_pk: np.ndarray

    @property
    def delta_cls(self) -> np.ndarray:
        return self.graph.delta_cls

    @property
    def merge_threshold(self) -> list[float]:
        """Smallest d at which a concept stops being d-closed; inf for the bottom."""
        bottom = self.graph.bottom
        return [math.inf if c == bottom else int(v) + 1 for c, v in enumerate(self.graph.delta_cls)]

    def class_of(self, c: int, d: int) -> int:
        delta, ref = self.graph.delta_cls, self.graph.ref
        while delta[c] < d and ref[c] >= 0:
            c = int(ref[c])
        return c


def _qualifying(graph: ConceptGraph, level: np.ndarray, d: int) -> np.ndarray:
    cls = class_pointers(graph, d)
    big = np.iinfo(np.int64).max
    lv = np.where(level >= 0, level, big)
    class_min = np.full(len(graph), big, dtype=np.int64)
    np.minimum.at(class_min, cls, lv)
    return (level >= 0) & (lv == class_min[cls])


def compute_pk_deltas(graph: ConceptGraph, structure: ClosureStructure) -> DeltaAnnotation:
    """Δ of every concept's passkeys.

    ``delta_pk[c]`` is the largest d in [1, |G|] for which c's level equals the
    minimum level inside its d-class (0 when |G| = 0).  Raising d only adds
    edges ``c -> ref[c]`` (edge c appears at ``delta_cls[c] + 1``), so classes
    only merge and class minima only fall.  A concept therefore qualifies up to
    the first merge that brings a lower level into its class.  Edges are
    replayed in threshold order with union-find; each class keeps the list of
    members still at its minimum, merged small into large.
    """
    n = graph.n_objects
    size = len(graph)
    if n == 0:
        return DeltaAnnotation(graph, structure, np.zeros(size, dtype=np.int64))
    level = structure.level
    delta_pk = np.ones(size, dtype=np.int64)
    big = np.iinfo(np.int64).max
    set_min = np.where(level >= 0, level, big).tolist()
    qualifying: list[list[int]] = [[c] if level[c] >= 0 else [] for c in range(size)]
    root = list(range(size))
    weight = [1] * size

    def find(x: int) -> int:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    ref, dc = graph.ref, graph.delta_cls
    active = np.flatnonzero((ref >= 0) & (dc + 1 <= n))
    order = active[np.argsort(dc[active], kind="stable")]
    for c, r, d in zip(order.tolist(), ref[order].tolist(), (dc[order] + 1).tolist()):
        a, b = find(c), find(r)
        if weight[a] < weight[b]:
            a, b = b, a
        root[b] = a
        weight[a] += weight[b]
        ma, mb = set_min[a], set_min[b]
        qa, qb = qualifying[a], qualifying[b]
        if ma == mb:
            if len(qa) < len(qb):
                qa, qb = qb, qa
            qa.extend(qb)
        else:
            loser = qb if ma < mb else qa
            for x in loser:
                delta_pk[x] = d - 1
            qa = qa if ma < mb else qb
            set_min[a] = min(ma, mb)
        qualifying[a], qualifying[b] = qa, []
    for x in range(size):
        if root[x] == x and qualifying[x]:
            delta_pk[qualifying[x]] = n
    return DeltaAnnotation(graph, structure, delta_pk)


def compute_pk_deltas_sweep(graph: ConceptGraph, structure: ClosureStructure) -> DeltaAnnotation:
    """Threshold-by-threshold version (every d from 2 to |G|); for cross-checking."""
    n = graph.n_objects
    delta_pk = np.full(len(graph), 1 if n else 0, dtype=np.int64)
    for d in range(2, n + 1):
        delta_pk[_qualifying(graph, structure.level, d)] = d
    return DeltaAnnotation(graph, structure, delta_pk)


# ---------------------------------------------------------------- itemset queries

def is_delta_key(ctx: FormalContext, graph: ConceptGraph, x: AttributeSet, d: int) -> bool:
    """Whether x is minimal in its d-class (no maximal proper subset shares φ_d)."""
    target = delta_closure(graph, ctx, x, d)
    return all(delta_closure(graph, ctx, x & ~(1 << m), d) != target for m in members(x))


def delta_key_value(ctx: FormalContext, graph: ConceptGraph, x: AttributeSet) -> int:
    """Largest d with x a d-key, 0 if x is not a key at all.

    Being a d-key is downward closed in d, so a binary search applies.
    """
    n = graph.n_objects
    if n == 0 or not is_delta_key(ctx, graph, x, 1):
        return 0
    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if is_delta_key(ctx, graph, x, mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def is_delta_free(ctx: FormalContext, x: AttributeSet, d: int) -> bool:
    """Every maximal proper subset of x has at least d more supporting objects."""
    sx = derive_objects(ctx, x).bit_count()
    return all(derive_objects(ctx, x & ~(1 << m)).bit_count() - sx >= d for m in members(x))


# ---------------------------------------------------------------- distribution

@dataclass(frozen=True)
class LevelDistribution:
    edges: tuple[float, ...]          # bin i is (edges[i], edges[i+1]]
    levels: tuple[int, ...]
    level_counts: tuple[int, ...]
    level_ratios: tuple[float, ...]
    bin_ratios: tuple[tuple[float, ...], ...]
    n_concepts: int

    @property
    def n_bins(self) -> int:
        return len(self.edges) - 1

    @property
    def bins(self) -> list[tuple[float, float]]:
        return list(zip(self.edges[:-1], self.edges[1:]))


def _bin_edges(values: np.ndarray, top: int, n_bins: int, binning: str) -> list[float]:
    if binning == "fixed":
        return [float(e) for e in np.linspace(0, top, n_bins + 1)]
    if binning != "quantile":
        raise ValueError(f"unknown binning {binning!r}")
    qs = np.quantile(values, np.arange(1, n_bins) / n_bins, method="inverted_cdf") if values.size else []
    edges = sorted({0, top, *(int(q) for q in qs if 0 < q < top)})
    return [float(e) for e in edges]


def level_distribution(annotation: DeltaAnnotation, structure: ClosureStructure | None = None,
                       n_bins: int = 10, binning: str = "quantile") -> LevelDistribution:
    """Share of concepts per level, and per level the share of each passkey-Δ bin."""
    if n_bins < 1:
        raise ValueError("n_bins must be at least 1")
    structure = structure or annotation.structure
    leveled = structure.level >= 0
    level = structure.level[leveled]
    values = annotation.delta_pk[leveled]
    top = int(max(annotation.graph.n_objects, values.max() if values.size else 1, 1))
    edges = _bin_edges(values, top, n_bins, binning)
    # bins are (lo, hi]; the first one also takes lo itself (Δ = 0 on object-free contexts)
    bin_idx = np.maximum(np.searchsorted(np.asarray(edges), values, side="left") - 1, 0)
    total = int(level.size)
    levels, counts, ratios, rows = [], [], [], []
    for k in range(int(level.max()) + 1 if total else 0):
        sel = level == k
        cnt = int(sel.sum())
        if cnt == 0:
            continue
        hist = np.bincount(bin_idx[sel], minlength=len(edges) - 1)
        levels.append(k)
        counts.append(cnt)
        ratios.append(cnt / total)
        rows.append(tuple(float(h) / cnt for h in hist))
    return LevelDistribution(tuple(edges), tuple(levels), tuple(counts), tuple(ratios), tuple(rows), total)


# ---------------------------------------------------------------- pipeline

def annotate_all(ctx: FormalContext, *, max_level: int | None = None, concept_cap: int = DEFAULT_CONCEPT_CAP,
                 passkey_cap: int | None = 64, workers: int = 1, timings: dict | None = None):
    """Concepts and levels, then Δ of intents (via the graph), then Δ of passkeys.

    Returns ``(graph, structure, annotation)``.  Stage wall-clock seconds are
    written into ``timings`` under ``"concepts"``, ``"levels"`` and ``"delta"``.
    """
    t0 = time.perf_counter()
    graph = mine_graph(ctx, cap=concept_cap, workers=workers)
    t1 = time.perf_counter()
    structure = enumerate_levels(ctx, graph, max_level, passkey_cap=passkey_cap)
    t2 = time.perf_counter()
    annotation = compute_pk_deltas(graph, structure)
    t3 = time.perf_counter()
    if timings is not None:
        timings.update(concepts=t1 - t0, levels=t2 - t1, delta=t3 - t2)
    return graph, structure, annotation
