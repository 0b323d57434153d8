"""Command-line entry point: ``deltaclosure {mine,levels,delta,stability,report} --input FILE``.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or malformed
input), 3 resource cap hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .concepts import DEFAULT_CONCEPT_CAP
from .context import load_context
from .delta import annotate_all, compute_partition, level_distribution
from .errors import DeltaClosureError, ResourceCapError

COMMANDS = ("mine", "levels", "delta", "stability", "report")
EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    input: Path
    format: str | None = None
    csv_mode: str = "binary"
    has_header: bool = True
    deltas: list[int] = field(default_factory=list)
    max_level: int | None = None
    n_bins: int = 10
    binning: str = "quantile"
    out: Path | None = None
    seed: int = 0
    trials: int = 20
    keep: list[float] = field(default_factory=lambda: [0.5, 0.7, 0.9])
    workers: int = 1
    concept_cap: int = DEFAULT_CONCEPT_CAP
    passkey_cap: int = 64
    budget: int = 1_000_000

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in (None, "fimi", "csv"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.csv_mode not in ("binary", "cross"):
            raise UsageError(f"unknown csv mode {self.csv_mode!r}")
        if any(d < 1 for d in self.deltas):
            raise UsageError("--delta values must be positive")
        if self.max_level is not None and self.max_level < 0:
            raise UsageError("--max-level must be non-negative")
        if self.n_bins < 1:
            raise UsageError("--bins must be at least 1")
        if self.binning not in ("quantile", "fixed"):
            raise UsageError(f"unknown binning {self.binning!r}")
        if self.trials < 0:
            raise UsageError("--trials must be non-negative")
        if not all(0 < f <= 1 for f in self.keep):
            raise UsageError("--keep fractions must lie in (0, 1]")
        if self.workers < 1 or self.concept_cap < 1 or self.passkey_cap < 1 or self.budget < 1:
            raise UsageError("--workers, --concept-cap, --passkey-cap and --budget must be positive")
        if self.command == "report" and self.out is None:
            raise UsageError("report needs --out")
        return self


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="deltaclosure", description="Closed itemsets, passkey levels and Δ-measures of a binary dataset.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--format", choices=("fimi", "csv"))
    p.add_argument("--csv-mode", choices=("binary", "cross"), default="binary")
    p.add_argument("--no-header", action="store_true", help="CSV input has no header row")
    p.add_argument("--delta", type=_int_list, default=[], metavar="D[,D...]")
    p.add_argument("--max-level", type=int, metavar="K")
    p.add_argument("--bins", type=int, default=10, metavar="N")
    p.add_argument("--binning", choices=("quantile", "fixed"), default="quantile")
    p.add_argument("--out", type=Path, metavar="DIR")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--keep", type=_float_list, default=[0.5, 0.7, 0.9], metavar="F[,F...]")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--concept-cap", type=int, default=DEFAULT_CONCEPT_CAP)
    p.add_argument("--passkey-cap", type=int, default=64)
    p.add_argument("--budget", type=int, default=1_000_000, help="removal-set budget for exhaustive stability checks")
    return p


def parse_config(argv) -> RunConfig:
    a = build_parser().parse_args(argv)
    return RunConfig(
        command=a.command, input=a.input, format=a.format, csv_mode=a.csv_mode,
        has_header=not a.no_header, deltas=a.delta, max_level=a.max_level, n_bins=a.bins,
        binning=a.binning, out=a.out, seed=a.seed, trials=a.trials, keep=a.keep, workers=a.workers,
        concept_cap=a.concept_cap, passkey_cap=a.passkey_cap, budget=a.budget,
    ).validate()


def _ms(seconds: float) -> int:
    return int(round(seconds * 1000))


def execute(cfg: RunConfig, out=sys.stdout) -> int:
    ctx = load_context(cfg.input, cfg.format, csv_mode=cfg.csv_mode, has_header=cfg.has_header)
    timings: dict[str, float] = {}
    max_level = 0 if cfg.command == "mine" else cfg.max_level
    graph, structure, annotation = annotate_all(
        ctx, max_level=max_level, concept_cap=cfg.concept_cap, passkey_cap=cfg.passkey_cap,
        workers=cfg.workers, timings=timings)

    summary = [f"{len(graph)} concepts ({graph.n_nonempty} with non-empty extent)"]
    if cfg.command != "mine":
        ci = structure.max_level_reached if structure.complete else f">{structure.max_level_reached}"
        summary.append(f"CI = {ci}")
    summary.append("concepts {} ms, levels {} ms, delta {} ms".format(
        _ms(timings["concepts"]), _ms(timings["levels"]), _ms(timings["delta"])))
    print(f"{cfg.input.name}: {ctx.n_objects} objects x {ctx.n_attributes} attributes; " + "; ".join(summary),
          file=out)

    if cfg.command == "levels":
        for k, cnt in enumerate(structure.level_counts):
            print(f"level {k}: {int(cnt)}", file=out)
    elif cfg.command == "delta":
        for d in cfg.deltas or [2]:
            if d > max(ctx.n_objects, 1):
                print(f"d = {d}: above |G| = {ctx.n_objects}, skipped", file=out)
                continue
            part = compute_partition(graph, d, structure)
            print(f"d = {d}: {len(part)} class{'' if len(part) == 1 else 'es'}", file=out)
        if structure.complete and len(graph):
            dist = level_distribution(annotation, structure, cfg.n_bins, cfg.binning)
            for k, r in zip(dist.levels, dist.level_ratios):
                print(f"level {k}: {100 * r:.2f}%", file=out)
    elif cfg.command == "stability":
        from .stability import survival_curve, survival_to_csv, verify_all
        mode = "exhaustive" if ctx.n_objects <= 20 else "random"
        max_delta = max(cfg.deltas) if cfg.deltas else None
        report = verify_all(ctx, annotation, max_delta=max_delta, mode=mode, seed=cfg.seed,
                            trials=cfg.trials, budget=cfg.budget)
        bad = report.counterexamples
        print(f"stability ({mode}): {len(report.entries)} checks, {len(bad)} counterexamples", file=out)
        curve = survival_curve(ctx, annotation, cfg.keep, seed=cfg.seed, trials=cfg.trials)
        if cfg.out is not None:
            cfg.out.mkdir(parents=True, exist_ok=True)
            (cfg.out / "stability.json").write_text(report.to_json() + "\n", encoding="utf-8")
            (cfg.out / "stability.csv").write_text(report.to_csv(), encoding="utf-8")
            (cfg.out / "survival.csv").write_text(survival_to_csv(curve), encoding="utf-8")
        else:
            print(survival_to_csv(curve), end="", file=out)
        if bad:
            return EXIT_DATA
    elif cfg.command == "report":
        from .report import export_results
        manifest = export_results(graph, structure, annotation, cfg.out, n_bins=cfg.n_bins, binning=cfg.binning)
        print(f"wrote {len(manifest['files']) + 1} files to {cfg.out} (content {manifest['content_hash'][:12]})",
              file=out)

    if cfg.out is not None and cfg.command in ("mine", "levels", "delta"):
        from .report import export_results
        export_results(graph, structure, annotation, cfg.out, n_bins=cfg.n_bins, binning=cfg.binning)
    return EXIT_OK


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    try:
        return execute(cfg, out)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=err)
        return EXIT_CAP
    except (DeltaClosureError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"data error: {exc}", file=err)
        return EXIT_DATA


def main():
    sys.exit(run())
