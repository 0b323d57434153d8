"""Brute-force reference implementations over the full powerset of attributes.

Everything here works from the definitions: supports are counted row by row,
φ_d adds single violating attributes one at a time, keys are found by subset
checks inside each class.  Nothing is shared with the concept graph, so these
functions serve as an independent oracle for the engine.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from .context import AttributeSet, FormalContext


@dataclass(frozen=True)
class OracleLimits:
    max_attributes: int = 14
    max_objects: int = 16

    def check(self, ctx: FormalContext):
        from .errors import OracleLimitError
        if ctx.n_attributes > self.max_attributes or ctx.n_objects > self.max_objects:
            raise OracleLimitError(
                f"context {ctx.n_objects}x{ctx.n_attributes} exceeds oracle limits "
                f"{self.max_objects}x{self.max_attributes}")


DEFAULT_LIMITS = OracleLimits()


def _extent(ctx: FormalContext, x: AttributeSet) -> int:
    out = 0
    for g, row in enumerate(ctx.rows):
        if row & x == x:
            out |= 1 << g
    return out


def _support(ctx: FormalContext, x: AttributeSet) -> int:
    return sum(1 for row in ctx.rows if row & x == x)


def _closure(ctx: FormalContext, x: AttributeSet) -> AttributeSet:
    out = ctx.all_attributes
    for row in ctx.rows:
        if row & x == x:
            out &= row
    return out


def phi(ctx: FormalContext, x: AttributeSet, d: int) -> AttributeSet:
    """Δ-closure by definition: add any attribute whose addition drops support by less than d."""
    k = ctx.n_attributes
    changed = True
    while changed:
        changed = False
        s = _support(ctx, x)
        for m in range(k):
            if x >> m & 1:
                continue
            if s - _support(ctx, x | (1 << m)) < d:
                x |= 1 << m
                changed = True
                break
    return x


def is_delta_closed(ctx: FormalContext, x: AttributeSet, d: int) -> bool:
    s = _support(ctx, x)
    return all(s - _support(ctx, x | (1 << m)) >= d
               for m in range(ctx.n_attributes) if not x >> m & 1)


def _all_itemsets(ctx: FormalContext):
    return range(1 << ctx.n_attributes)


def brute_closed(ctx: FormalContext, limits: OracleLimits = DEFAULT_LIMITS) -> set[AttributeSet]:
    limits.check(ctx)
    return {_closure(ctx, b) for b in _all_itemsets(ctx)}


def brute_equiv(ctx: FormalContext, d: int, limits: OracleLimits = DEFAULT_LIMITS) -> dict[AttributeSet, list[AttributeSet]]:
    """Every itemset grouped by its φ_d; keys are the class maxima."""
    limits.check(ctx)
    classes: dict[int, list[int]] = defaultdict(list)
    for x in _all_itemsets(ctx):
        classes[phi(ctx, x, d)].append(x)
    return dict(classes)


@dataclass(frozen=True)
class ClassKeys:
    closure: AttributeSet
    keys: tuple[AttributeSet, ...]        # minimal w.r.t. inclusion
    passkeys: tuple[AttributeSet, ...]    # minimum cardinality among keys


def _sort_sets(xs):
    return tuple(sorted(xs, key=lambda s: (s.bit_count(), [i for i in range(s.bit_length()) if s >> i & 1])))


def brute_keys(ctx: FormalContext, d: int, limits: OracleLimits = DEFAULT_LIMITS) -> dict[AttributeSet, ClassKeys]:
    out = {}
    for top, mem in brute_equiv(ctx, d, limits).items():
        keys = [x for x in mem if not any(y != x and y & x == y for y in mem)]
        size = min(k.bit_count() for k in keys)
        out[top] = ClassKeys(top, _sort_sets(keys), _sort_sets(k for k in keys if k.bit_count() == size))
    return out


def brute_levels(ctx: FormalContext, limits: OracleLimits = DEFAULT_LIMITS) -> dict[AttributeSet, tuple[int, tuple[AttributeSet, ...]]]:
    """closed intent -> (passkey size, all passkeys) for the standard closure."""
    return {c: (ck.passkeys[0].bit_count(), ck.passkeys) for c, ck in brute_keys(ctx, 1, limits).items()}


def brute_delta_values(ctx: FormalContext, x: AttributeSet,
                       limits: OracleLimits = DEFAULT_LIMITS) -> tuple[int, int, int]:
    """(Δ, Δ_key, Δ_pk) of x by scanning every threshold 1..|G|; 0 where the property never holds."""
    limits.check(ctx)
    closed = key = pk = 0
    for d in range(1, ctx.n_objects + 1):
        if is_delta_closed(ctx, x, d):
            closed = d
        ck = brute_keys(ctx, d, limits)[phi(ctx, x, d)]
        if x in ck.keys:
            key = d
        if x in ck.passkeys:
            pk = d
    return closed, key, pk


def brute_delta_values_all(ctx: FormalContext, limits: OracleLimits = DEFAULT_LIMITS) -> dict[AttributeSet, tuple[int, int, int]]:
    """(Δ, Δ_key, Δ_pk) for every itemset at once (shares the per-d class scan)."""
    limits.check(ctx)
    out = {x: [0, 0, 0] for x in _all_itemsets(ctx)}
    for d in range(1, ctx.n_objects + 1):
        keys = brute_keys(ctx, d, limits)
        key_sets = {k for ck in keys.values() for k in ck.keys}
        pk_sets = {k for ck in keys.values() for k in ck.passkeys}
        for x, v in out.items():
            if is_delta_closed(ctx, x, d):
                v[0] = d
            if x in key_sets:
                v[1] = d
            if x in pk_sets:
                v[2] = d
    return {x: tuple(v) for x, v in out.items()}


def brute_removal_min(ctx: FormalContext, x: AttributeSet, holds, max_size: int) -> int | None:
    """Smallest number of removed objects after which ``holds(sub_ctx, x)`` fails."""
    from .context import bits, sample_objects
    n = ctx.n_objects
    for r in range(max_size + 1):
        for removed in combinations(range(n), r):
            keep = ctx.all_objects & ~bits(removed)
            if not holds(sample_objects(ctx, keep), x):
                return r
    return None


def emit_fixtures(ctx: FormalContext, path, limits: OracleLimits = DEFAULT_LIMITS) -> dict:
    """Write the oracle's tables for ``ctx`` as JSON (itemsets as attribute-name strings)."""
    name = lambda s: "".join(ctx.attribute_names[i] for i in range(ctx.n_attributes) if s >> i & 1)  # noqa: E731
    levels = brute_levels(ctx, limits)
    values = brute_delta_values_all(ctx, limits)
    partitions = {}
    for d in range(1, ctx.n_objects + 1):
        eq = brute_equiv(ctx, d, limits)
        closed = brute_closed(ctx, limits)
        partitions[d] = {name(top): sorted(name(c) for c in closed if phi(ctx, c, d) == top) for top in eq}
    data = {
        "attributes": list(ctx.attribute_names),
        "n_objects": ctx.n_objects,
        "closed": sorted(name(c) for c in brute_closed(ctx, limits)),
        "levels": {name(c): {"level": lv, "passkeys": [name(p) for p in pks]} for c, (lv, pks) in levels.items()},
        "partitions": {str(d): p for d, p in partitions.items()},
        "delta_values": {name(x) or "{}": list(v) for x, v in values.items() if any(v)},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
    return data
