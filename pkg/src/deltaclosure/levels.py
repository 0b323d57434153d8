"""Level structure: passkeys (minimum-size generators) of every concept.

The search is breadth-first over itemset size.  Every proper subset of a
passkey is itself a passkey of a different concept, so the size-k candidates
are joined from the complete family of size-(k-1) passkeys (apriori join on a
shared (k-2)-prefix, then every other (k-1)-subset must be a passkey too).  A
candidate whose closure has not been leveled below k is a passkey of that
closure.  Passkey lists kept on the result may be truncated; the frontier used
for joining never is.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby

import numpy as np

from .concepts import ConceptGraph
from .context import AttributeSet, FormalContext, members
from .errors import CandidateCapExceeded, UnleveledError

DEFAULT_PASSKEY_CAP = 64
DEFAULT_CANDIDATE_CAP = 50_000_000


@dataclass(eq=False)
class ClosureStructure:
    level: np.ndarray                 # int64 per concept, -1 when not leveled
    passkeys: list[list[AttributeSet]]
    passkey_counts: np.ndarray        # exact number of passkeys, even when the list is truncated
    max_level_reached: int
    candidates_per_level: list[int]

    @property
    def complete(self) -> bool:
        return bool((self.level >= 0).all())

    @property
    def unleveled(self) -> np.ndarray:
        return np.flatnonzero(self.level < 0)

    @property
    def closure_index(self) -> int:
        return closure_index(self)

    @property
    def level_counts(self) -> list[int]:
        lv = self.level[self.level >= 0]
        if lv.size == 0:
            return []
        return np.bincount(lv).tolist()


def enumerate_levels(ctx: FormalContext, graph: ConceptGraph, max_level: int | None = None, *,
                     passkey_cap: int | None = DEFAULT_PASSKEY_CAP,
                     candidate_cap: int = DEFAULT_CANDIDATE_CAP) -> ClosureStructure:
    n_concepts = len(graph)
    cols = ctx.cols
    level = np.full(n_concepts, -1, dtype=np.int64)
    passkeys: list[list[int]] = [[] for _ in range(n_concepts)]
    counts = np.zeros(n_concepts, dtype=np.int64)
    index = graph.index

    def closure_of_extent(ext: int) -> int:
        out = 0
        for m, nc in enumerate(ctx.col_complements):
            if not ext & nc:
                out |= 1 << m
        return out

    top = index[closure_of_extent(ctx.all_objects)]
    level[top] = 0
    passkeys[top].append(0)
    counts[top] = 1
    remaining = n_concepts - 1
    frontier: dict[int, int] = {0: ctx.all_objects}   # passkeys of the last level -> extents
    k = 0
    per_level = [1]
    while remaining > 0 and frontier:
        if max_level is not None and k >= max_level:
            break
        k += 1
        nxt: dict[int, int] = {}
        n_cand = 0
        for cand, parent_ext, q in _candidates(frontier, k, ctx.n_attributes):
            n_cand += 1
            if n_cand > candidate_cap:
                raise CandidateCapExceeded(
                    f"level {k}: more than {candidate_cap} candidates; use --max-level to stop earlier")
            ext = parent_ext & cols[q]
            cid = index[closure_of_extent(ext)]
            lv = level[cid]
            if lv == -1:
                level[cid] = k
                remaining -= 1
            elif lv != k:
                continue
            counts[cid] += 1
            if passkey_cap is None or len(passkeys[cid]) < passkey_cap:
                passkeys[cid].append(cand)
            nxt[cand] = ext
        per_level.append(n_cand)
        frontier = nxt
    return ClosureStructure(level, passkeys, counts, k, per_level)


def _candidates(frontier: dict[int, int], k: int, n_attributes: int):
    """Size-k candidates as (itemset, extent of its prefix parent, added attribute)."""
    ordered = sorted((tuple(members(p)), p, e) for p, e in frontier.items())
    if k == 1:
        (_, _, ext), = ordered
        for q in range(n_attributes):
            yield 1 << q, ext, q
        return
    for _, group in groupby(ordered, key=lambda t: t[0][:-1]):
        group = list(group)
        for i, (pt, p, pext) in enumerate(group):
            for qt, _, _ in group[i + 1:]:
                q = qt[-1]
                cand = p | (1 << q)
                if any((cand & ~(1 << e)) not in frontier for e in pt[:-1]):
                    continue
                yield cand, pext, q


def closure_index(structure: ClosureStructure) -> int:
    """Largest passkey size over all concepts."""
    if not structure.complete:
        raise UnleveledError(
            f"{len(structure.unleveled)} concepts are not leveled (search stopped at level "
            f"{structure.max_level_reached}); the closure index is undefined")
    return int(structure.level.max()) if structure.level.size else 0


def level_histogram(structure: ClosureStructure) -> list[tuple[int, int, float]]:
    """(level, count, count / total) for every level 0..CI."""
    lc = structure.level_counts
    total = sum(lc)
    return [(k, c, c / total) for k, c in enumerate(lc)]
