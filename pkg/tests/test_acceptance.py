"""Acceptance gate.  Run ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per
criterion is printed in the terminal summary.

Real-dataset inputs that cannot be regenerated locally (mushroom, and the
canonical LUCS-KDD versions of iris and led7) are looked up in the directory
named by ``DELTACLOSURE_DATA`` (default: ``data/`` at the repository root).
"""
import math
import os
import time
from pathlib import Path

import numpy as np
import pytest

from deltaclosure.cli import run
from deltaclosure.concepts import delta_closure, enumerate_closed, mine_graph
from deltaclosure.context import closure, load_context, to_fimi
from deltaclosure.datasets import car_evaluation, chess_krk, counterexample_context, iris, led7, nursery, toy_context
from deltaclosure.delta import (annotate_all, class_pointers, compute_partition, compute_pk_deltas, delta_key_value,
                                is_delta_free, is_delta_key)
from deltaclosure.levels import enumerate_levels
from deltaclosure.oracle import brute_closed, brute_delta_values_all, brute_equiv, brute_levels, phi
from deltaclosure.stability import verify_all

from conftest import seeded_corpus

DATA_DIR = Path(os.environ.get("DELTACLOSURE_DATA", Path(__file__).resolve().parent.parent / "data"))
BUDGET_SECONDS = 600


def _name(ctx, x):
    return ctx.format_itemset(x, "")


@pytest.fixture(scope="module")
def corpus():
    return seeded_corpus(200)


# ---------------------------------------------------------------- 1, 2, 3: toy facts

def test_criterion_1_toy_concepts_and_delta():
    t0 = time.perf_counter()
    toy = toy_context()
    g = mine_graph(toy)
    assert len(enumerate_closed(toy)) == len(g) == 16
    expected = {"abc": 3, "ab": 2, "abde": 2, "abcde": 2}
    for cid, c in enumerate(g.concepts):
        if cid != g.bottom:
            assert g.delta_cls[cid] == expected.get(_name(toy, c.intent), 1)
    assert time.perf_counter() - t0 < 1


def test_criterion_2_toy_partitions():
    t0 = time.perf_counter()
    toy = toy_context()
    g = mine_graph(toy)
    maxima = lambda d: {_name(toy, g.intent(r)) for r in compute_partition(g, d).representatives}  # noqa: E731
    assert maxima(2) == {"ab", "abc", "abde", "abcde", "abcdefghi"}
    assert maxima(3) == {"abc", "abcdefghi"}
    part = compute_partition(g, 3)
    abc = next(c for c in part.classes if _name(toy, g.intent(c.representative)) == "abc")
    assert {_name(toy, g.intent(m)) for m in abc.members} == {"abc", "ab", "a", "b", ""}
    assert len(compute_partition(g, 4)) == 1
    assert time.perf_counter() - t0 < 1


def test_criterion_3_free_versus_key():
    ctx = counterexample_context()
    g = mine_graph(ctx)
    m2 = ctx.itemset(["m2"])
    assert is_delta_free(ctx, m2, 2) is True
    assert is_delta_key(ctx, g, m2, 2) is False


# ---------------------------------------------------------------- 4: oracle equivalence

def _compare_with_oracle(ctx, rng):
    g, s, ann = annotate_all(ctx, passkey_cap=None)
    intents = [c.intent for c in g.concepts]
    assert set(intents) == brute_closed(ctx)
    levels = brute_levels(ctx)
    for cid, x in enumerate(intents):
        lv, pks = levels[x]
        assert s.level[cid] == lv
        assert sorted(s.passkeys[cid]) == sorted(pks)
    values = brute_delta_values_all(ctx)
    for cid, x in enumerate(intents):
        assert g.delta_cls[cid] == values[x][0], _name(ctx, x)
        # Δ of a concept's passkeys: every passkey of the class carries the same value
        assert {values[p][2] for p in s.passkeys[cid]} == {int(ann.delta_pk[cid])}
    closed = set(intents)
    for d in range(1, max(ctx.n_objects, 1) + 1):
        part = compute_partition(g, d)
        got = {intents[c.representative]: {intents[m] for m in c.members} for c in part.classes}
        want = {top: {x for x in mem if x in closed} for top, mem in brute_equiv(ctx, d).items()}
        want = {k: v for k, v in want.items() if v}
        assert got == want, d
    n_sets = 1 << ctx.n_attributes
    for x in rng.integers(0, n_sets, 50):
        x = int(x)
        assert delta_key_value(ctx, g, x) == values[x][1]


def test_criterion_4_oracle_equivalence(corpus):
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    for ctx in [toy_context(), *corpus]:
        if ctx.n_attributes <= 8:
            _compare_with_oracle(ctx, rng)
    assert time.perf_counter() - t0 < 120


# ---------------------------------------------------------------- 5: closure axioms

def test_criterion_5_closure_axioms(corpus):
    violations = []
    for i, ctx in enumerate([toy_context(), *corpus]):
        g = mine_graph(ctx)
        n_sets = 1 << ctx.n_attributes
        prev = None
        for d in range(1, max(ctx.n_objects, 1) + 1):
            phis = [delta_closure(g, ctx, x, d) for x in range(n_sets)]
            for x in range(n_sets):
                if phis[x] & x != x:
                    violations.append((i, d, x, "extensive"))
                if phis[phis[x]] != phis[x]:
                    violations.append((i, d, x, "idempotent"))
                for m in range(ctx.n_attributes):
                    if phis[x | (1 << m)] & phis[x] != phis[x]:
                        violations.append((i, d, x, "monotone"))
                if d == 1 and phis[x] != closure(ctx, x):
                    violations.append((i, d, x, "phi_1"))
            cur = class_pointers(g, d)
            if prev is not None:
                for rep in np.unique(prev):
                    if len(set(cur[prev == rep])) != 1:
                        violations.append((i, d, int(rep), "refinement"))
            prev = cur
    assert violations == []


# ---------------------------------------------------------------- 6: removal bounds

def test_criterion_6_removal_bounds():
    t0 = time.perf_counter()
    toy = toy_context()
    _, _, ann = annotate_all(toy, passkey_cap=None)
    report = verify_all(toy, ann, max_delta=3)
    assert report.entries and report.counterexamples == []
    rng = np.random.default_rng(6)
    for _ in range(20):
        from deltaclosure.datasets import random_context
        ctx = random_context(rng, int(rng.integers(1, 9)), int(rng.integers(1, 6)), 0.5)
        _, _, ann = annotate_all(ctx, passkey_cap=None)
        assert verify_all(ctx, ann).counterexamples == []
    assert time.perf_counter() - t0 < 60


# ---------------------------------------------------------------- 7: real datasets

def _find(stem):
    if not DATA_DIR.is_dir():
        return None
    hits = sorted(p for p in DATA_DIR.iterdir() if p.name.lower().startswith(stem) and p.suffix in (".dat", ".csv"))
    return hits[0] if hits else None


def _timed_run(ctx):
    timings = {}
    t0 = time.perf_counter()
    g, s, ann = annotate_all(ctx, timings=timings)
    timings["total"] = time.perf_counter() - t0
    return g, s, ann, timings


_DELTA_TIMES = {}


@pytest.mark.parametrize("name,builder,concepts,ci", [
    ("nursery", nursery, 115_200, 8),
    ("chess_krk", chess_krk, 84_636, None),
    ("car", car_evaluation, None, 6),
    ("iris", iris, None, 4),
    ("led7", led7, None, 7),
    ("mushroom", None, 181_945, None),
])
def test_criterion_7_real_datasets(name, builder, concepts, ci):
    path = _find(name)
    if path is not None:
        ctx = load_context(path)
    elif builder is not None:
        ctx = builder()
    else:
        pytest.fail(f"{name}: no input file under {DATA_DIR} and no local way to regenerate it")
    g, s, ann, timings = _timed_run(ctx)
    if concepts is not None:
        assert g.n_nonempty == concepts
    if ci is not None:
        assert s.closure_index == ci
    assert timings["total"] < BUDGET_SECONDS
    if name in ("nursery", "chess_krk"):
        best = min(_time_delta_stage(g, s) for _ in range(5))
        _DELTA_TIMES[name] = (best, len(g), ctx.n_objects)


def _time_delta_stage(g, s):
    t0 = time.perf_counter()
    compute_pk_deltas(g, s)
    return time.perf_counter() - t0


def test_criterion_7_real_datasets_delta_scaling():
    if set(_DELTA_TIMES) != {"nursery", "chess_krk"}:
        pytest.fail("nursery / chess runs did not complete")
    model = lambda c, n: c * n * math.log(n)  # noqa: E731
    (tn, cn, nn), (tc, cc, nc) = _DELTA_TIMES["nursery"], _DELTA_TIMES["chess_krk"]
    assert tc / tn <= 3 * model(cc, nc) / model(cn, nn)


# ---------------------------------------------------------------- 8: report reproducibility

@pytest.mark.parametrize("builder", [toy_context, car_evaluation])
def test_criterion_8_report_reproducible(tmp_path, builder):
    src = tmp_path / "in.dat"
    src.write_text(to_fimi(builder()))
    outs = []
    for tag in ("a", "b"):
        code = run(["report", "--input", str(src), "--bins", "10", "--out", str(tmp_path / tag)])
        assert code == 0
        outs.append({p.name: p.read_bytes() for p in sorted((tmp_path / tag).iterdir())})
    assert outs[0] == outs[1]
    assert {"concepts.csv", "distribution.csv", "distribution.svg", "manifest.json"} <= set(outs[0])
    lines = outs[0]["distribution.csv"].decode().splitlines()[1:]
    for line in lines:
        cells = [float(c) for c in line.split(",")[2:]]
        assert abs(sum(cells) - 1) <= 1e-9


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
