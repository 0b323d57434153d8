"""Closed itemset enumeration, the covering graph, Ref pointers and Δ-measures.

Enumeration is Close-by-One with a prefix canonicity test.  At every node the
incidence matrix is projected onto the node's extent and a single product
``sub.T @ sub`` gives ``|A ∩ m' ∩ j'|`` for every attribute pair, so the
closure of every one-attribute extension is read off one row of that matrix:
``(B + j)'' = {m : counts[j, m] == counts[j, j]}``.  Rows with ``counts[j, j] == 0``
come out as the full attribute set, which is exactly the closure of an empty extent.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .context import (AttributeSet, FormalContext, ObjectSet, closure, derive_objects,
                      from_bool_array, members, to_index_array)
from .errors import ConceptCapExceeded, IntegrityError

DEFAULT_CONCEPT_CAP = 100_000_000


@dataclass(frozen=True)
class Concept:
    intent: AttributeSet
    support: int
    extent: ObjectSet | None = None

    def sort_key(self):
        return (-self.support, tuple(members(self.intent)))


@dataclass(eq=False)
class ConceptGraph:
    """All concepts in canonical order plus covering edges, Ref pointers and Δ."""

    concepts: list[Concept]
    lower_neighbors: list[tuple[int, ...]]
    ref: np.ndarray          # int64, -1 where there is no lower neighbour (bottom)
    delta_cls: np.ndarray    # int64
    n_objects: int
    n_attributes: int
    attribute_names: tuple[str, ...]
    index: dict[int, int] = field(repr=False)

    def __len__(self):
        return len(self.concepts)

    @property
    def supports(self) -> np.ndarray:
        return np.fromiter((c.support for c in self.concepts), dtype=np.int64, count=len(self.concepts))

    @property
    def top(self) -> int:
        return 0

    @property
    def bottom(self) -> int:
        return len(self.concepts) - 1

    def id_of(self, intent: AttributeSet) -> int:
        return self.index[intent]

    def intent(self, cid: int) -> AttributeSet:
        return self.concepts[cid].intent

    def upper_neighbors(self) -> list[tuple[int, ...]]:
        up: list[list[int]] = [[] for _ in self.concepts]
        for c, lows in enumerate(self.lower_neighbors):
            for lo in lows:
                up[lo].append(c)
        return [tuple(u) for u in up]

    @property
    def n_nonempty(self) -> int:
        """Concepts with non-empty extent (the count itemset miners usually report)."""
        return sum(1 for c in self.concepts if c.support > 0)


def _as_int(mask: np.ndarray) -> int:
    return from_bool_array(mask)


class _Enumerator:
    def __init__(self, ctx: FormalContext, cap: int, with_extents: bool):
        self.ctx = ctx
        self.cap = cap
        self.with_extents = with_extents
        self.k = ctx.n_attributes
        self.n = ctx.n_objects
        self.X = ctx.incidence.astype(np.float32)
        # strictly_before[j, m] is True for m < j
        self.strictly_before = np.tri(self.k, self.k, -1, dtype=bool)
        self.out: list[Concept] = []

    def emit(self, intent_mask: np.ndarray, rows: np.ndarray):
        if len(self.out) >= self.cap:
            raise ConceptCapExceeded(
                f"concept count exceeds the cap of {self.cap}; raise --concept-cap to continue")
        ext = None
        if self.with_extents:
            m = np.zeros(self.n, dtype=bool)
            m[rows] = True
            ext = _as_int(m)
        self.out.append(Concept(_as_int(intent_mask), int(len(rows)), ext))

    def top(self):
        rows = np.arange(self.n)
        intent = self.X.all(axis=0) if self.n else np.ones(self.k, dtype=bool)
        return self.X, rows, intent.astype(bool)

    def children(self, sub, rows, intent, y):
        """Canonical children of a node, in ascending generator order."""
        counts = sub.T @ sub
        diag = counts.diagonal()
        eq = counts == diag[:, None]
        cand = ~intent & (diag > 0)
        cand[: y + 1] = False
        if not cand.any():
            return
        viol = (eq & ~intent[None, :] & self.strictly_before).any(axis=1)
        for j in np.flatnonzero(cand & ~viol):
            sel = sub[:, j] > 0
            yield int(j), sub[sel], rows[sel], eq[j]

    def expand(self, sub, rows, intent, y):
        for j, csub, crows, cintent in self.children(sub, rows, intent, y):
            self.emit(cintent, crows)
            self.expand(csub, crows, cintent, j)


def _run_branch(args):
    ctx, cap, with_extents, j = args
    en = _Enumerator(ctx, cap, with_extents)
    sub, rows, intent = en.top()
    for jj, csub, crows, cintent in en.children(sub, rows, intent, -1):
        if jj == j:
            en.emit(cintent, crows)
            en.expand(csub, crows, cintent, jj)
    return en.out


def enumerate_closed(ctx: FormalContext, *, cap: int = DEFAULT_CONCEPT_CAP,
                     with_extents: bool = True, workers: int = 1) -> list[Concept]:
    """All formal concepts of ``ctx`` in canonical order.

    Canonical order is support descending, then the ascending tuple of intent
    indices.  The bottom concept (intent = every attribute) is always included,
    with empty extent if no object carries all attributes.  ``with_extents=False``
    skips materialising extents, which matters for wide datasets.
    """
    en = _Enumerator(ctx, cap, with_extents)
    sub, rows, intent = en.top()
    en.emit(intent, rows)
    if workers <= 1:
        en.expand(sub, rows, intent, -1)
        out = en.out
    else:
        branches = [j for j, *_ in en.children(sub, rows, intent, -1)]
        out = list(en.out)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_branch, [(ctx, cap, with_extents, j) for j in branches]):
                out.extend(part)
                if len(out) > cap:
                    raise ConceptCapExceeded(f"concept count exceeds the cap of {cap}")
    full = ctx.all_attributes
    if not any(c.intent == full for c in out):
        if len(out) >= cap:
            raise ConceptCapExceeded(f"concept count exceeds the cap of {cap}")
        out.append(Concept(full, 0, 0 if with_extents else None))
    out.sort(key=Concept.sort_key)
    return out


def build_graph(ctx: FormalContext, concepts: list[Concept]) -> ConceptGraph:
    """Covering graph (extent order), Ref pointers and Δ of every concept.

    For concept (A, B) the closures ``D_j = (B + j)''`` for all ``j`` outside B
    are computed at once; ``D_j`` is a lower neighbour iff every attribute it
    adds to B generates the same closure (its multiplicity among the ``D_j``
    equals ``|D_j - B|``).  Ref is the lower neighbour of largest support, ties
    broken by the smaller canonical id, which is just the smallest id.
    """
    concepts = sorted(concepts, key=Concept.sort_key)
    index: dict[int, int] = {}
    for cid, c in enumerate(concepts):
        if c.intent in index:
            raise IntegrityError(f"duplicate concept with intent {{{ctx.format_itemset(c.intent, ',')}}}")
        index[c.intent] = cid
    if closure(ctx, 0) not in index:
        raise IntegrityError("the top concept (closure of the empty set) is missing")

    n, k = ctx.n_objects, ctx.n_attributes
    X = ctx.incidence.astype(np.float32)
    full = ctx.all_attributes
    lower: list[tuple[int, ...]] = []
    ref = np.full(len(concepts), -1, dtype=np.int64)
    delta = np.zeros(len(concepts), dtype=np.int64)

    for cid, c in enumerate(concepts):
        B = c.intent
        ext = c.extent if c.extent is not None else derive_objects(ctx, B)
        if ext.bit_count() != c.support:
            raise IntegrityError(f"concept {cid} reports support {c.support}, extent has {ext.bit_count()}")
        if B == full:
            lower.append(())
            delta[cid] = n
            continue
        sub = X[to_index_array(ext, n)]
        counts = sub.T @ sub
        diag = counts.diagonal()
        notB = np.ones(k, dtype=bool)
        notB[list(members(B))] = False
        js = np.flatnonzero(notB)
        if np.any(diag[js] == c.support):
            raise IntegrityError(f"concept {cid} is not closed")
        closures = (counts == diag[:, None])[js]
        packed = np.packbits(closures, axis=1, bitorder="little")
        keys = [row.tobytes() for row in packed]
        mult = Counter(keys)
        added = (closures & notB[None, :]).sum(axis=1)
        covers = []
        seen = set()
        for key, a in zip(keys, added):
            if key in seen:
                continue
            seen.add(key)
            d_int = int.from_bytes(key, "little")
            cov = index.get(d_int)
            if cov is None:
                raise IntegrityError(
                    f"closure {{{ctx.format_itemset(d_int, ',')}}} of a one-attribute extension "
                    f"of concept {cid} is missing from the concept list")
            if mult[key] == a:
                covers.append(cov)
        covers.sort()
        lower.append(tuple(covers))
        ref[cid] = covers[0]
        delta[cid] = c.support - concepts[covers[0]].support

    return ConceptGraph(concepts, lower, ref, delta, n, k, ctx.attribute_names, index)


def mine_graph(ctx: FormalContext, *, cap: int = DEFAULT_CONCEPT_CAP, workers: int = 1) -> ConceptGraph:
    return build_graph(ctx, enumerate_closed(ctx, cap=cap, with_extents=False, workers=workers))


def _check_threshold(graph: ConceptGraph, d: int):
    if not 1 <= d <= max(graph.n_objects, 1):
        raise ValueError(f"threshold d={d} outside [1, {graph.n_objects}]")


def delta_closure(graph: ConceptGraph, ctx: FormalContext, x: AttributeSet, d: int) -> AttributeSet:
    """φ_d(x): close x, then follow Ref while the current concept's Δ is below d."""
    _check_threshold(graph, d)
    c = graph.id_of(closure(ctx, x))
    delta, ref = graph.delta_cls, graph.ref
    while delta[c] < d and ref[c] >= 0:
        c = int(ref[c])
    return graph.concepts[c].intent


def delta_of_itemset(graph: ConceptGraph, ctx: FormalContext, x: AttributeSet) -> int:
    """Largest d for which x is d-closed; 0 when x is not closed at all."""
    if closure(ctx, x) != x:
        return 0
    return int(graph.delta_cls[graph.id_of(x)])
