"""Command-line front end.

Exit codes: 0 when every verdict passes, 1 when any check fails (the report
carries a witness), 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .euler import (
    ClassicalEulerCache,
    QEulerCache,
    classical_euler_poly,
    q_euler_number,
    q_euler_number_closed,
    q_euler_poly,
    shift_identity_sides,
)
from .padic import DEFAULT_PRECISION, FSpec, PadicQ, convergence_profile
from .qcalc import format_rational, qsample, sample_points
from .symmetry import DEFAULT_BUDGET, SCHEMA_VERSION, WeightVector, verify_invariance

WORKERS_ENV = "QEULER_WORKERS"


class UsageError(ValueError):
    pass


def parse_range(text: str) -> list[int]:
    """``"0..3"`` (inclusive), ``"1,4,6"`` or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse integer range {text!r}") from None


def parse_rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse rational list {text!r}") from None


def parse_weights(text: str) -> WeightVector:
    try:
        return WeightVector(tuple(int(v) for v in text.split(",")))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    fmt: str = "text"
    out: str | None = None
    workers: int = 1


@dataclass
class Outcome:
    config: dict
    results: list[dict]
    witnesses: list[dict]
    columns: list[str]

    @property
    def verdict(self) -> str:
        return "FAIL" if self.witnesses else "PASS"


def _qs(params: dict) -> list[Fraction]:
    if params.get("q"):
        return [qsample(q) for q in params["q"]]
    return sample_points(params["q_count"], seed=params.get("seed"))


def _run_euler(params: dict) -> Outcome:
    cache = QEulerCache()
    W = params["W"]
    results, witnesses = [], []
    for q in _qs(params):
        for n in params["n"]:
            value = q_euler_number(n, W, q, cache)
            closed = q_euler_number_closed(n, W, q)
            row = {"n": n, "W": W, "q": q, "x": Fraction(0), "value": value}
            results.append(row)
            if value != closed:
                witnesses.append({**row, "closed_form": closed})
            for x in params["x"]:
                results.append(
                    {"n": n, "W": W, "q": q, "x": x,
                     "value": q_euler_poly(n, x, W, q, cache)}
                )
    return Outcome(_cfg(params), results, witnesses, ["n", "W", "q", "x", "value"])


def _run_classical(params: dict) -> Outcome:
    cache = ClassicalEulerCache()
    results = [
        {"n": n, "x": x, "value": classical_euler_poly(n, x, cache)}
        for x in params["x"]
        for n in params["n"]
    ]
    return Outcome(_cfg(params), results, [], ["n", "x", "value"])


def _run_shift(params: dict) -> Outcome:
    cache = QEulerCache()
    results, witnesses = [], []
    for q in _qs(params):
        for m in params["m"]:
            for k in params["n_shift"]:
                lhs, rhs = shift_identity_sides(m, k, q, cache)
                row = {"m": m, "n_shift": k, "q": q, "lhs": lhs, "rhs": rhs,
                       "holds": lhs == rhs}
                results.append(row)
                if lhs != rhs:
                    witnesses.append(row)
    return Outcome(
        _cfg(params), results, witnesses, ["m", "n_shift", "q", "lhs", "rhs", "holds"]
    )


def _profile_cell(args: tuple) -> dict:
    p, K, t, m, a, N_max = args
    profile = convergence_profile(p, K, FSpec(m, a), PadicQ.from_t(p, K, t), N_max)
    vals = [v for _, v in profile]
    monotone = all(u <= v for u, v in zip(vals, vals[1:]))
    floor_ok = all(v >= min(N - 1, K) for N, v in profile)
    return {
        "p": p, "K": K, "q": 1 + p * t, "m": m, "a": a,
        "profile": vals, "nondecreasing": monotone, "floor_ok": floor_ok,
    }


def _run_padic(params: dict, workers: int) -> Outcome:
    cells = [
        (p, params["K"], params["t"], m, a, params["n_max"])
        for p in params["primes"]
        for m in params["m"]
        for a in params["a"]
    ]
    results = _fan_out(_profile_cell, cells, workers)
    witnesses = [r for r in results if not (r["nondecreasing"] and r["floor_ok"])]
    return Outcome(
        _cfg(params), results, witnesses,
        ["p", "K", "q", "m", "a", "profile", "nondecreasing", "floor_ok"],
    )


def _symmetry_cell(args: tuple) -> dict:
    w, m_max, x, q_count, mode, seed, budget = args
    report = verify_invariance(
        WeightVector(w), m_max, x, q_count, mode=mode, seed=seed, budget=budget
    )
    return report.to_json()


def _run_symmetry(params: dict, workers: int) -> Outcome:
    cells = [
        (wv.w, params["m_max"], x, params["q_count"], params["mode"],
         params["seed"], params["budget"])
        for wv in params["weights"]
        for x in params["x"]
    ]
    reports = _fan_out(_symmetry_cell, cells, workers)
    witnesses = []
    for rep in reports:
        for wit in rep["witnesses"]:
            witnesses.append({"weights": rep["config"]["weights"],
                              "x": rep["config"]["x"], **wit})
    return Outcome(
        _cfg(params), reports, witnesses,
        ["weights", "x", "m", "q", "sigma", "theorem2", "theorem3"],
    )


def _fan_out(fn, cells: list, workers: int) -> list:
    if workers <= 1 or len(cells) <= 1:
        return [fn(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, cells))


def _cfg(params: dict) -> dict:
    return {k: _jsonable(v) for k, v in sorted(params.items())}


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, WeightVector):
        return list(v.w)
    if isinstance(v, dict):
        return {str(k): _jsonable(u) for k, u in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(u) for u in v]
    return v


def execute(cfg: RunConfig) -> Outcome:
    p = cfg.params
    if cfg.command == "euler":
        return _run_euler(p)
    if cfg.command == "classical":
        return _run_classical(p)
    if cfg.command == "shift":
        return _run_shift(p)
    if cfg.command == "padic":
        return _run_padic(p, cfg.workers)
    if cfg.command in ("symmetry", "certify"):
        return _run_symmetry(p, cfg.workers)
    raise UsageError(f"unknown command {cfg.command!r}")


def _flat_rows(cfg: RunConfig, outcome: Outcome) -> list[dict]:
    if cfg.command not in ("symmetry", "certify"):
        return outcome.results
    rows = []
    for rep in outcome.results:
        for r in rep["results"]:
            rows.append({"weights": rep["config"]["weights"],
                         "x": rep["config"]["x"], **r})
    return rows


def render(cfg: RunConfig, outcome: Outcome) -> str:
    if cfg.fmt == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": cfg.command,
            "config": outcome.config,
            "results": _jsonable(outcome.results),
            "verdict": outcome.verdict,
            "witnesses": _jsonable(outcome.witnesses),
        }
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"
    rows = [_jsonable(r) for r in _flat_rows(cfg, outcome)]
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(
            buf, fieldnames=outcome.columns, extrasaction="ignore", lineterminator="\n"
        )
        writer.writeheader()
        for r in rows:
            writer.writerow(
                {k: " ".join(map(str, v)) if isinstance(v, list) else v
                 for k, v in r.items()}
            )
        return buf.getvalue()
    lines = ["  ".join(outcome.columns)]
    for r in rows:
        lines.append("  ".join(
            " ".join(map(str, r[c])) if isinstance(r[c], list) else str(r[c])
            for c in outcome.columns
        ))
    lines.append(f"verdict: {outcome.verdict}")
    for w in _jsonable(outcome.witnesses):
        lines.append(f"witness: {json.dumps(w, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qeuler", description="Carlitz q-Euler numbers and symmetry checks"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=["text", "json", "csv"],
                        default="text")
    common.add_argument("--out", default=None, help="write report here instead of stdout")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--workers", type=int, default=None,
                        help=f"process count (default ${WORKERS_ENV} or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    e = sub.add_parser("euler", parents=[common], help="q-Euler numbers/polynomials")
    e.add_argument("--n", type=parse_range, default=parse_range("0..5"))
    e.add_argument("--q", type=parse_rationals, default=None)
    e.add_argument("--q-count", type=int, default=1)
    e.add_argument("--W", type=int, default=1)
    e.add_argument("--x", type=parse_rationals, default=[])

    c = sub.add_parser("classical", parents=[common], help="classical E_n(x)")
    c.add_argument("--n", type=parse_range, default=parse_range("0..5"))
    c.add_argument("--x", type=parse_rationals, default=[Fraction(0)])

    s = sub.add_parser("shift", parents=[common], help="shift identity grid")
    s.add_argument("--m", type=parse_range, default=parse_range("0..4"))
    s.add_argument("--n-shift", type=parse_range, default=parse_range("1..4"))
    s.add_argument("--q", type=parse_rationals, default=None)
    s.add_argument("--q-count", type=int, default=4)

    pa = sub.add_parser("padic", parents=[common], help="p-adic convergence profiles")
    pa.add_argument("--primes", type=parse_range, default=[3, 5, 7])
    pa.add_argument("-K", "--precision", dest="K", type=int, default=DEFAULT_PRECISION)
    pa.add_argument("--n-max", type=int, default=5)
    pa.add_argument("--m", type=parse_range, default=parse_range("0..4"))
    pa.add_argument("--a", type=parse_range, default=parse_range("0..2"))
    pa.add_argument("--t", type=int, default=1, help="q = 1 + p*t")

    for name, helptext in (("symmetry", "sampled S_n invariance"),
                           ("certify", "certified S_n invariance")):
        sy = sub.add_parser(name, parents=[common], help=helptext)
        sy.add_argument("--weights", type=parse_weights, action="append", required=True,
                        help="comma-separated odd weights; repeat for a grid")
        sy.add_argument("--m-max", type=int, default=4)
        sy.add_argument("--x", type=parse_range, default=[0])
        sy.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if name == "symmetry":
            sy.add_argument("--q-count", type=int, default=8)
            sy.add_argument("--mode", choices=["sampled", "certified"], default="sampled")
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    params = {k: v for k, v in vars(ns).items()
              if k not in ("command", "fmt", "out", "workers")}
    if ns.command == "certify":
        params.update(mode="certified", q_count=0)
    workers = ns.workers
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    _validate(ns.command, params)
    return RunConfig(ns.command, params, ns.fmt, ns.out, workers)


def _validate(command: str, params: dict) -> None:
    if any(v < 0 for v in params.get("n", [])):
        raise UsageError("--n must be nonnegative")
    if command in ("euler", "shift") and params.get("q"):
        for q in params["q"]:
            qsample(q)
    if params.get("q_count", 1) < 0:
        raise UsageError("--q-count must be >= 0")
    if command == "shift" and any(k < 1 for k in params["n_shift"]):
        raise UsageError("--n-shift values must be >= 1")
    if command == "padic":
        if params["n_max"] < 2:
            raise UsageError("--n-max must be >= 2")
        if any(m < 0 for m in params["m"]) or any(a < 0 for a in params["a"]):
            raise UsageError("--m and --a must be nonnegative")
    if command in ("symmetry", "certify"):
        if params["m_max"] < 0 or any(x < 0 for x in params["x"]):
            raise UsageError("--m-max and --x must be nonnegative")


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        outcome = execute(cfg)
    except SystemExit as exc:  # argparse: --help exits 0, bad usage exits 2
        return 0 if exc.code in (0, None) else 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(cfg, outcome)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if outcome.verdict == "PASS" else 1


if __name__ == "__main__":
    sys.exit(main())
