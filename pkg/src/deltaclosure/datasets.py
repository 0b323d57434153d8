"""Built-in contexts: the toy dataset, the 3-object counterexample, random
contexts, and exact regenerations of three public datasets.

UCI "car evaluation" and "nursery" are complete factorial designs over their
attribute domains, so the object set is the cartesian product of the value
lists.  UCI "chess (king-rook vs king)" lists every legal white-king/white-rook
vs black-king position with the white king confined to the a1-d1-d4 triangle,
reduced by the a1-h8 diagonal symmetry.  The class column is dropped in all
three, giving one binary attribute per attribute value.

Two further datasets are close stand-ins rather than exact copies: ``led7``
draws records from the usual LED display generator (10% segment noise), and
``iris`` bins the 150 measurements shipped with scikit-learn into four
equal-width intervals per attribute.
"""
from __future__ import annotations

import itertools

import numpy as np

from .context import FormalContext

TOY_ROWS = [
    "abcde", "abcde", "abcd", "abce", "abcf", "abcg", "abdeh", "abdei", "a", "b",
]


def toy_context() -> FormalContext:
    """The 10 x 9 toy dataset with attributes a..i and objects g1..g10."""
    names = "abcdefghi"
    rows = [[names.index(ch) for ch in r] for r in TOY_ROWS]
    return FormalContext.from_rows(rows, 9, [f"g{i}" for i in range(1, 11)], list(names))


def counterexample_context() -> FormalContext:
    """Three objects: g1' = {}, g2' = {m1}, g3' = {m1, m2}."""
    return FormalContext.from_rows([[], [0], [0, 1]], 2, ["g1", "g2", "g3"], ["m1", "m2"])


def random_context(rng: np.random.Generator, n_objects: int, n_attributes: int,
                   density: float = 0.5) -> FormalContext:
    return FormalContext.from_matrix(rng.random((n_objects, n_attributes)) < density)


def factorial_context(domains: dict[str, list[str]]) -> FormalContext:
    names = [f"{a}={v}" for a, vals in domains.items() for v in vals]
    offsets = np.cumsum([0] + [len(v) for v in domains.values()])[:-1]
    rows = []
    for combo in itertools.product(*(range(len(v)) for v in domains.values())):
        rows.append([int(o + i) for o, i in zip(offsets, combo)])
    return FormalContext.from_rows(rows, len(names), attribute_names=names)


CAR_DOMAINS = {
    "buying": ["vhigh", "high", "med", "low"],
    "maint": ["vhigh", "high", "med", "low"],
    "doors": ["2", "3", "4", "5more"],
    "persons": ["2", "4", "more"],
    "lug_boot": ["small", "med", "big"],
    "safety": ["low", "med", "high"],
}

NURSERY_DOMAINS = {
    "parents": ["usual", "pretentious", "great_pret"],
    "has_nurs": ["proper", "less_proper", "improper", "critical", "very_crit"],
    "form": ["complete", "completed", "incomplete", "foster"],
    "children": ["1", "2", "3", "more"],
    "housing": ["convenient", "less_conv", "critical"],
    "finance": ["convenient", "inconv"],
    "social": ["nonprob", "slightly_prob", "problematic"],
    "health": ["recommended", "priority", "not_recom"],
}


def car_evaluation() -> FormalContext:
    return factorial_context(CAR_DOMAINS)


def nursery() -> FormalContext:
    return factorial_context(NURSERY_DOMAINS)


def _krk_positions():
    def adjacent(a, b):
        return max(abs(a[0] - b[0]), abs(a[1] - b[1])) <= 1

    squares = [(f, r) for f in range(8) for r in range(8)]
    triangle = [(f, r) for f in range(4) for r in range(4) if r <= f]
    for wk in triangle:
        for wr in squares:
            if wr == wk:
                continue
            for bk in squares:
                if bk in (wk, wr) or adjacent(wk, bk):
                    continue
                if wk[0] == wk[1]:
                    # white king on the diagonal: keep the half below it
                    if bk[1] > bk[0] or (bk[1] == bk[0] and wr[1] > wr[0]):
                        continue
                yield wk, wr, bk


def chess_krk() -> FormalContext:
    files, ranks = "abcdefgh", "12345678"
    names = ([f"wkf={f}" for f in files[:4]] + [f"wkr={r}" for r in ranks[:4]]
             + [f"wrf={f}" for f in files] + [f"wrr={r}" for r in ranks]
             + [f"bkf={f}" for f in files] + [f"bkr={r}" for r in ranks])
    rows = []
    for wk, wr, bk in _krk_positions():
        rows.append([wk[0], 4 + wk[1], 8 + wr[0], 16 + wr[1], 24 + bk[0], 32 + bk[1]])
    return FormalContext.from_rows(rows, len(names), attribute_names=names)


LED_SEGMENTS = np.array([
    [1, 1, 1, 0, 1, 1, 1], [0, 0, 1, 0, 0, 1, 0], [1, 0, 1, 1, 1, 0, 1], [1, 0, 1, 1, 0, 1, 1],
    [0, 1, 1, 1, 0, 1, 0], [1, 1, 0, 1, 0, 1, 1], [1, 1, 0, 1, 1, 1, 1], [1, 0, 1, 0, 0, 1, 0],
    [1, 1, 1, 1, 1, 1, 1], [1, 1, 1, 1, 0, 1, 1],
], dtype=bool)


def led7(n_records: int = 3200, noise: float = 0.1, seed: int = 7) -> FormalContext:
    """Noisy seven-segment digits; each segment becomes two items (off, on)."""
    rng = np.random.default_rng(seed)
    digits = rng.integers(0, 10, n_records)
    seg = LED_SEGMENTS[digits] ^ (rng.random((n_records, 7)) < noise)
    matrix = np.empty((n_records, 14), dtype=bool)
    matrix[:, 0::2] = ~seg
    matrix[:, 1::2] = seg
    names = [f"s{j + 1}={v}" for j in range(7) for v in (0, 1)]
    return FormalContext.from_matrix(matrix, attribute_names=names)


def iris(n_bins: int = 4) -> FormalContext:
    """Equal-width binning of the iris measurements (needs scikit-learn for the raw data)."""
    from sklearn.datasets import load_iris

    data = load_iris()
    X = data.data
    matrix = np.zeros((X.shape[0], X.shape[1] * n_bins), dtype=bool)
    names = []
    for j in range(X.shape[1]):
        inner = np.linspace(X[:, j].min(), X[:, j].max(), n_bins + 1)[1:-1]
        b = np.searchsorted(inner, X[:, j], side="right")
        matrix[np.arange(X.shape[0]), j * n_bins + b] = True
        short = data.feature_names[j].replace(" (cm)", "").replace(" ", "_")
        names += [f"{short}#{i + 1}" for i in range(n_bins)]
    return FormalContext.from_matrix(matrix, attribute_names=names)


BUILTIN = {
    "toy": toy_context,
    "counterexample": counterexample_context,
    "car": car_evaluation,
    "nursery": nursery,
    "chess_krk": chess_krk,
    "led7": led7,
    "iris": iris,
}
