"""Object-removal experiments.

An itemset with Δ (or key Δ, or passkey Δ) equal to δ keeps its property in
every sub-dataset obtained by removing fewer than δ objects.  This module checks
that bound exhaustively on small inputs, by random removal on larger ones, and
measures how often closedness / passkeys survive random subsampling.

Sub-datasets are never materialised: every check works on the original column
bitsets masked with the set of kept objects.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from itertools import combinations

from .context import AttributeSet, FormalContext, bits, derive_objects, members
from .delta import DeltaAnnotation
from .errors import BudgetExceeded
from .rng import XorShift64Star

PROPERTIES = ("closed", "key", "passkey")


def closed_in(ctx: FormalContext, x: AttributeSet, keep: int) -> bool:
    ext = derive_objects(ctx, x) & keep
    full = ctx.all_attributes
    if not ext:
        return x == full
    for m, nc in enumerate(ctx.col_complements):
        if not x >> m & 1 and not ext & nc:
            return False
    return True


def key_in(ctx: FormalContext, x: AttributeSet, keep: int) -> bool:
    ext = derive_objects(ctx, x) & keep
    return all(derive_objects(ctx, x & ~(1 << m)) & keep != ext for m in members(x))


def passkey_in(ctx: FormalContext, x: AttributeSet, keep: int) -> bool:
    """x is a minimum-size generator of its closure in the kept sub-dataset."""
    if not key_in(ctx, x, keep):
        return False
    ext = derive_objects(ctx, x) & keep
    closure = ctx.all_attributes
    if ext:
        closure = 0
        for m, nc in enumerate(ctx.col_complements):
            if not ext & nc:
                closure |= 1 << m
    pool = list(members(closure))
    for r in range(x.bit_count()):
        for z in combinations(pool, r):
            if derive_objects(ctx, bits(z)) & keep == ext:
                return False
    return True


_CHECKS = {"closed": closed_in, "key": key_in, "passkey": passkey_in}


@dataclass
class StabilityEntry:
    itemset: str
    property: str
    claimed_delta: int
    mode: str
    exhaustive_verified: bool
    lower_bound_confirmed: bool
    min_removal_found: int | None
    counterexample: list[int] | None
    trials_run: int
    seed: int | None


@dataclass
class StabilityReport:
    entries: list[StabilityEntry] = field(default_factory=list)

    @property
    def counterexamples(self) -> list[StabilityEntry]:
        return [e for e in self.entries if e.counterexample is not None
                and len(e.counterexample) < e.claimed_delta]

    def to_json(self) -> str:
        return json.dumps([asdict(e) for e in self.entries], indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        names = list(StabilityEntry.__dataclass_fields__)
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(names)
        for e in self.entries:
            row = asdict(e)
            row["counterexample"] = ";".join(map(str, e.counterexample)) if e.counterexample else ""
            w.writerow([("" if row[n] is None else row[n]) for n in names])
        return buf.getvalue()


def verify_removal_bound(ctx: FormalContext, x: AttributeSet, prop: str, delta: int, *,
                         mode: str = "exhaustive", seed: int = 0, trials: int = 100,
                         budget: int = 1_000_000, search_beyond: bool = False) -> StabilityEntry:
    """Check that removing fewer than ``delta`` objects never breaks ``prop`` for x.

    Exhaustive mode tries every removal set of size 0..delta-1; with
    ``search_beyond`` it continues at larger sizes (within budget) to report the
    smallest removal that does break the property.  Random mode draws ``trials``
    removal sets of size delta-1.
    """
    if prop not in _CHECKS:
        raise ValueError(f"property must be one of {PROPERTIES}")
    check = _CHECKS[prop]
    n = ctx.n_objects
    everyone = ctx.all_objects
    label = ctx.format_itemset(x)
    delta = max(int(delta), 0)

    if mode == "exhaustive":
        needed = sum(math.comb(n, r) for r in range(min(delta, n + 1)))
        if needed > budget:
            raise BudgetExceeded(f"{needed} removal sets needed for δ={delta} on {n} objects (budget {budget})")
        spent = 0
        found = None
        example = None
        r = 0
        while r <= n:
            if r >= delta:
                if not search_beyond or spent + math.comb(n, r) > budget:
                    break
            for removed in combinations(range(n), r):
                spent += 1
                if not check(ctx, x, everyone & ~bits(removed)):
                    found, example = r, list(removed)
                    break
            if found is not None:
                break
            r += 1
        confirmed = found is None or found >= delta
        return StabilityEntry(label, prop, delta, mode, True, confirmed, found, example, spent, None)

    if mode == "random":
        size = max(delta - 1, 0)
        example = None
        done = 0
        if 1 <= delta and size <= n:
            for t in range(trials):
                rng = XorShift64Star(seed, t)
                removed = rng.sample(n, size)
                done += 1
                if not check(ctx, x, everyone & ~bits(removed)):
                    example = removed
                    break
        return StabilityEntry(label, prop, delta, mode, False, example is None,
                              len(example) if example is not None else None, example, done, seed)

    raise ValueError(f"unknown mode {mode!r}")


def verify_all(ctx: FormalContext, annotation: DeltaAnnotation, *, max_delta: int | None = None,
               mode: str = "exhaustive", seed: int = 0, trials: int = 100,
               budget: int = 1_000_000) -> StabilityReport:
    """Removal bounds for every concept intent (closed) and each stored passkey (key, passkey)."""
    from .delta import delta_key_value

    graph, structure = annotation.graph, annotation.structure
    report = StabilityReport()

    def want(d):
        return max_delta is None or d <= max_delta

    for cid, c in enumerate(graph.concepts):
        d = int(graph.delta_cls[cid])
        if want(d):
            report.entries.append(verify_removal_bound(ctx, c.intent, "closed", d, mode=mode, seed=seed,
                                                       trials=trials, budget=budget))
        for p in structure.passkeys[cid]:
            dpk = int(annotation.delta_pk[cid])
            if want(dpk):
                report.entries.append(verify_removal_bound(ctx, p, "passkey", dpk, mode=mode, seed=seed,
                                                           trials=trials, budget=budget))
            dk = delta_key_value(ctx, graph, p)
            if want(dk):
                report.entries.append(verify_removal_bound(ctx, p, "key", dk, mode=mode, seed=seed,
                                                           trials=trials, budget=budget))
    return report


# ---------------------------------------------------------------- survival

def bucket_of(value: int, scheme: str = "log2") -> tuple[int, int]:
    if scheme == "exact":
        return value, value
    if scheme != "log2":
        raise ValueError(f"unknown bucket scheme {scheme!r}")
    if value < 1:
        return value, value
    k = value.bit_length() - 1
    return 1 << k, (1 << (k + 1)) - 1


@dataclass(frozen=True)
class SurvivalRow:
    keep_fraction: float
    kept: int
    group: str
    bucket_lo: int
    bucket_hi: int
    concepts: int
    trials: int
    closed_survival: float
    passkey_survival: float | None


def survival_curve(ctx: FormalContext, annotation: DeltaAnnotation, keep_fractions, seed: int = 0,
                   trials: int = 20, *, buckets: str = "log2", passkeys: bool = True) -> list[SurvivalRow]:
    """Fraction of concepts staying closed (and keeping their first passkey) under random subsampling.

    Concepts are grouped by Δ of the intent and, separately, by Δ of the passkey.
    Trial t at fraction index i draws its kept objects from stream ``i * 2**32 + t``.
    """
    graph, structure = annotation.graph, annotation.structure
    n = ctx.n_objects
    n_concepts = len(graph)
    first_pk = [pk[0] if pk else None for pk in structure.passkeys]
    rows: list[SurvivalRow] = []
    for fi, frac in enumerate(keep_fractions):
        frac = float(frac)
        if not 0 < frac <= 1:
            raise ValueError(f"keep fraction {frac} outside (0, 1]")
        kept = min(n, math.floor(frac * n + 0.5))
        closed_hits = [0] * n_concepts
        pk_hits = [0] * n_concepts
        for t in range(trials):
            if kept == n:
                keep = ctx.all_objects
            else:
                keep = bits(XorShift64Star(seed, (fi << 32) + t).sample(n, kept))
            for cid, c in enumerate(graph.concepts):
                if closed_in(ctx, c.intent, keep):
                    closed_hits[cid] += 1
                if passkeys and first_pk[cid] is not None and passkey_in(ctx, first_pk[cid], keep):
                    pk_hits[cid] += 1
        for group, values in (("delta_cls", graph.delta_cls), ("delta_pk", annotation.delta_pk)):
            grouped: dict[tuple[int, int], list[int]] = {}
            for cid in range(n_concepts):
                grouped.setdefault(bucket_of(int(values[cid]), buckets), []).append(cid)
            for (lo, hi), cids in sorted(grouped.items()):
                denom = len(cids) * trials
                rows.append(SurvivalRow(
                    frac, kept, group, lo, hi, len(cids), trials,
                    sum(closed_hits[c] for c in cids) / denom if denom else 1.0,
                    (sum(pk_hits[c] for c in cids) / denom if denom else 1.0) if passkeys else None,
                ))
    return rows


def survival_to_csv(rows: list[SurvivalRow]) -> str:
    buf = io.StringIO()
    names = list(SurvivalRow.__dataclass_fields__)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    for r in rows:
        vals = [getattr(r, k) for k in names]
        w.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for v in vals])
    return buf.getvalue()
