"""Command-line interface: ``fit``, ``verify`` and ``simulate``.

Exit codes: 0 success, 1 data or validation error, 2 numerical failure
(rank deficiency, failed consistency check), 3 usage error.

Both tests are one-sided (upper tail): the effect is nonnegative, so only
large values count against the null.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .data import ColumnSpec, Dataset, load_csv
from .errors import ConsistencyError, DataError, NumericalError, RankDeficient
from .inference import InferenceReport, f_from_r2, infer, r2_from_f
from .manova import pillai_trace
from .montecarlo import CalibrationReport, SimConfig, calibrate, ks_critical_value
from .regression import fit_multiple, fit_simple

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_DATA, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2, 3
#: |V - β̂| above this (relative to 1 + V) aborts ``fit``
FIT_EQUIVALENCE_TOL = 1e-8
PERFECT_FIT_TOL = 1e-12


class UsageError(Exception):
    pass


@dataclass
class ReportDocument:
    dataset: dict[str, Any]
    inference: dict[str, Any]
    equivalence: dict[str, Any]
    warnings: list[str] = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "dataset": self.dataset,
            "inference": self.inference,
            "equivalence": self.equivalence,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        d = json.loads(text)
        return cls(
            dataset=d["dataset"],
            inference=d["inference"],
            equivalence=d["equivalence"],
            warnings=d["warnings"],
            schema_version=d["schema_version"],
        )


def _finite_or_none(v: Any) -> Any:
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _finite_or_none(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_finite_or_none(x) for x in v]
    return v


def to_machine(doc: dict[str, Any]) -> str:
    # json writes floats with repr(), the shortest string that round-trips exactly
    return json.dumps(_finite_or_none(doc), indent=2, allow_nan=False) + "\n"


def _scalar(v: Any) -> str:
    if v is None:
        return "null"
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else str(v)
    return str(v)


def to_human(doc: dict[str, Any], indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(to_human(value, indent + 1).rstrip("\n"))
        elif isinstance(value, (list, tuple)):
            if not value:
                lines.append(f"{pad}{key}: []")
            elif all(isinstance(v, str) for v in value) and key != "warnings":
                lines.append(f"{pad}{key}: {', '.join(value)}")
            else:
                lines.append(f"{pad}{key}:")
                lines.extend(f"{pad}  - {_scalar(v)}" for v in value)
        else:
            lines.append(f"{pad}{key}: {_scalar(value)}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot write {out}: {exc.strerror}") from exc


def _inference_fields(rep: InferenceReport) -> dict[str, Any]:
    d = asdict(rep)
    d.pop("n")
    d.pop("k")
    return d


def _name_column(ds: Dataset, exc: RankDeficient) -> RankDeficient:
    if exc.column is None or not 0 <= exc.column < ds.k:
        return exc
    name = ds.y_names[exc.column]
    return RankDeficient(
        f"Y column {name!r} is constant or a linear combination of earlier Y columns; "
        "drop it or choose a different column set",
        column=exc.column,
    )


def _fit_pair(ds: Dataset) -> tuple[float, float, Any]:
    """(V, β̂, multiple fit) for a dataset, with column-named rank errors."""
    try:
        pr = pillai_trace(ds.x, ds.y)
        mfit = fit_multiple(ds.x, ds.y)
    except RankDeficient as exc:
        raise _name_column(ds, exc) from exc
    beta = fit_simple(mfit.score, ds.x).slope
    return pr.trace, beta, mfit


def build_fit_report(ds: Dataset) -> ReportDocument:
    v, beta, _ = _fit_pair(ds)
    diff = abs(v - beta)
    if diff > FIT_EQUIVALENCE_TOL * (1.0 + abs(v)):
        raise ConsistencyError(f"Pillai trace {v!r} and beta effect {beta!r} disagree by {diff:.3e}")
    if not -1e-10 <= beta <= 1.0 + 1e-10:
        raise ConsistencyError(f"beta effect {beta!r} outside [0, 1]")
    warnings = []
    effect = beta
    if effect >= 1.0 - PERFECT_FIT_TOL:
        effect = 1.0
        warnings.append(
            f"perfect fit: {ds.x_name!r} lies in the span of an intercept and the Y columns; "
            "F is infinite and the exact p-value is 0"
        )
    rep = infer(effect, ds.n, ds.k)
    return ReportDocument(
        dataset={"name": ds.name, "n": ds.n, "k": ds.k, "x": ds.x_name, "y": list(ds.y_names)},
        inference=_inference_fields(rep),
        equivalence={"pillai_trace": v, "beta_effect": beta, "abs_diff": diff},
        warnings=warnings,
    )


def verify_dataset(ds: Dataset) -> dict[str, float]:
    """Every quantity in the identity chain plus the largest pairwise gap."""
    v, beta, mfit = _fit_pair(ds)
    r2_simple = fit_simple(mfit.score, ds.x).r_squared
    r2 = mfit.r_squared
    try:
        chain = r2_from_f(f_from_r2(min(max(r2, 0.0), 1.0), ds.n, ds.k), ds.n, ds.k)
    except NumericalError:
        chain = 1.0
    values = {
        "pillai_trace": v,
        "beta_effect": beta,
        "r2_multiple": r2,
        "r2_simple": r2_simple,
        "r2_from_f": chain,
    }
    vals = list(values.values())
    values["max_discrepancy"] = max(abs(a - b) for a in vals for b in vals)
    return values


def _spec_from_args(args: argparse.Namespace) -> ColumnSpec:
    y = None
    if args.y:
        y = tuple(c.strip() for c in args.y.split(",") if c.strip())
    return ColumnSpec(args.x, y)


def cmd_fit(args: argparse.Namespace) -> int:
    ds = load_csv(args.input, _spec_from_args(args))
    doc = build_fit_report(ds).to_dict()
    text = to_machine(doc) if args.format == "machine" else to_human(doc)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    ds = load_csv(args.input, _spec_from_args(args))
    res = verify_dataset(ds)
    ok = res["max_discrepancy"] < args.tol
    for key, value in res.items():
        print(f"{key:16s} {value!r}")
    print(f"{'tolerance':16s} {args.tol!r}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_NUMERIC


def simulate_document(cfg: SimConfig, workers: int = 1) -> dict[str, Any]:
    rep: CalibrationReport = calibrate(cfg, workers=workers)
    mean = cfg.k / (cfg.n - 1)
    return {
        "schema_version": SCHEMA_VERSION,
        "config": asdict(cfg),
        "reference": {
            "beta_alpha": cfg.k / 2,
            "beta_beta": (cfg.n - cfg.k - 1) / 2,
            "null_mean": mean,
            "ks_critical_01": ks_critical_value(cfg.replicates, 0.01),
        },
        "calibration": asdict(rep),
    }


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        cfg = SimConfig(args.n, args.k, args.replicates, args.seed, args.effect_strength)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    doc = simulate_document(cfg, args.workers)
    text = to_machine(doc) if args.format == "machine" else to_human(doc)
    _emit(text, args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pillaireg", description="Pillai's trace as a single regression effect.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--input", required=True, help="CSV file with a header row")
        sp.add_argument("--x", required=True, help="x column (name or zero-based index)")
        sp.add_argument("--y", help="comma-separated Y columns (default: all remaining numeric columns)")

    fit = sub.add_parser("fit", help="effect, F, exact and Wald p-values (one-sided, upper tail)")
    data_args(fit)
    fit.add_argument("--out", help="write the report here instead of stdout")
    fit.add_argument("--format", choices=("human", "machine"), default="human")
    fit.set_defaults(func=cmd_fit)

    ver = sub.add_parser("verify", help="check V = beta = R^2 = kF/((n-k-1)+kF) numerically")
    data_args(ver)
    ver.add_argument("--tol", type=float, default=1e-10)
    ver.set_defaults(func=cmd_verify)

    sim = sub.add_parser("simulate", help="Monte Carlo calibration under Gaussian data")
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--k", type=int, required=True)
    sim.add_argument("--replicates", type=int, required=True)
    sim.add_argument("--seed", type=_u64, required=True)
    sim.add_argument("--effect-strength", type=float, default=0.0)
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--out")
    sim.add_argument("--format", choices=("human", "machine"), default="human")
    sim.set_defaults(func=cmd_simulate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pillaireg {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"pillaireg {args.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"pillaireg {args.command}: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def run() -> None:
    sys.exit(main())
