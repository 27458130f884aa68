"""Command-line front end: ``joinmirror <command> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cache import CACHE_ENV, cache_status

CHARTS = ("100", "010", "001")


@dataclass
class RunConfig:
    command: str
    cap: int | None = None
    chart: str | None = None
    out: Path | None = None
    cache_dir: Path | None = None
    fmt: str = "json"

    def __post_init__(self):
        if self.cap is not None and self.cap < 0:
            raise ValueError("cap must be non-negative")
        if self.chart is not None and self.chart not in CHARTS:
            raise ValueError(f"chart must be one of {', '.join(CHARTS)}")


def _jsonable(value):
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, dict):
        return {_key(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(map(str, k))
    return str(k)


def dump_json(data) -> str:
    return json.dumps(_jsonable(data), sort_keys=True, indent=2) + "\n"


def bps_csv(table, rows: int = 11, columns: int = 6) -> str:
    """Rows d1 = 0..rows-1, columns d2 = 0..columns-1; uncomputed cells left empty."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["d1\\d2"] + list(range(columns)))
    for d1 in range(rows):
        cells = []
        for d2 in range(columns):
            v = 0 if (d1, d2) == (0, 0) else table.get((d1, d2))
            cells.append("" if v is None else v)
        writer.writerow([d1] + cells)
    return buf.getvalue()


def emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# -- commands ------------------------------------------------------------------------------------


def cmd_periods(cfg: RunConfig, args) -> int:
    from .periods import period_x0, period_x1, period_x1_lcs010
    build = {"x0": period_x0, "x1": period_x1, "x1-lcs010": period_x1_lcs010}[args.family]
    emit(build(cfg.cap).dumps(), cfg.out)
    return 0


def cmd_fit(cfg: RunConfig, args) -> int:
    from .diffops import fit_operator
    from .series import TruncatedSeries
    series = TruncatedSeries.loads(Path(args.series).read_text())
    ops = fit_operator(series, args.theta_deg, args.coeff_deg, margin=args.margin)
    if cfg.out is not None:
        Path(cfg.out).write_text(ops[0].dumps())
    emit(dump_json({"dimension": len(ops), "operators": [op.dumps() for op in ops]}),
         None)
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    from .diffops import ThetaOperator, annihilates
    from .series import TruncatedSeries
    op = ThetaOperator.loads(Path(args.op).read_text())
    series = TruncatedSeries.loads(Path(args.series).read_text())
    if op.variables != series.variables:
        series = series.rename(op.variables)
    ok, bad = annihilates(op, series, args.through)
    emit(dump_json({"annihilates": ok, "first_failure": list(bad) if bad else None,
                    "through": args.through}), cfg.out)
    return 0 if ok else 1


def cmd_intersections(cfg: RunConfig, args) -> int:
    from .cohomology import kappa_x0, kappa_x1, kappa_y1
    data = {"X1": {"basis": ["D1", "D2"], "kappa": kappa_x1()},
            "Y1": {"basis": ["L'", "D'"], "kappa": kappa_y1()},
            "X0": {"basis": ["L"], "kappa": {(1, 1, 1): kappa_x0()}}}
    emit(dump_json(data), cfg.out)
    return 0


def cmd_gw(cfg: RunConfig, args) -> int:
    from .givental import a_model_x0, a_model_x1
    N, n = (a_model_x1 if args.model == "x1" else a_model_x0)(args.max_degree)
    if cfg.fmt == "csv":
        if args.model != "x1":
            raise SystemExit("CSV output is only defined for the two-parameter BPS table")
        emit(bps_csv(n), cfg.out)
    else:
        emit(dump_json({"model": args.model, "max_degree": args.max_degree,
                        "gw": N, "bps": n}), cfg.out)
    return 0


def cmd_bmodel(cfg: RunConfig, args) -> int:
    from . import bmodel
    chart = bmodel.CHARTS[cfg.chart]
    if cfg.chart == "100":
        C = bmodel.x1_couplings()
    else:
        C = bmodel.transport_lcs(bmodel.x1_couplings(), bmodel.CHARTS["100"], chart)
    meta = {"chart": cfg.chart, "variables": list(chart.variables),
            "fallback_used": bool(C.metadata.get("fallback_used")),
            "couplings": {**{k: v for k, v in C.metadata.items() if k != "fallback_used"},
                          "denominator": str(C.denominator),
                          "transported_from": None if cfg.chart == "100" else "100"}}
    if args.emit == "yukawa":
        data = {"denominator": str(C.denominator),
                "numerators": {_key(k): str(v) for k, v in C.numerators.items()},
                "value_at_origin": C.value_at_origin()}
        emit(dump_json({"metadata": meta, "yukawa": data}), cfg.out)
        return 0
    basis = bmodel.frobenius_solve(chart.operators(), chart, cfg.cap)
    meta.update({"frobenius_dimension": basis.dimension, "verified_degree": basis.verified_degree,
                 "cap": cfg.cap})
    if args.emit == "periods":
        data = {"omega0": basis.omega0.dumps(),
                "single_log": [s.dumps() for s in basis.single_log]}
    elif args.emit == "mirror-map":
        forward, inverse = bmodel.mirror_map(basis)
        data = {"q_of_z": [s.dumps() for s in forward], "z_of_q": [s.dumps() for s in inverse]}
    else:
        K = bmodel.yukawa_q_expansion(C, basis)
        N = bmodel.gw_from_yukawa(K, C.value_at_origin())
        n = bmodel.bps_from_gw(N)
        meta["exact_through_degree"] = cfg.cap - 1
        if cfg.fmt == "csv":
            emit(bps_csv(n), cfg.out)
            return 0
        data = {"gw": N, "bps": n}
    emit(dump_json({"metadata": meta, args.emit: data}), cfg.out)
    return 0


def cmd_hodge(cfg: RunConfig, args) -> int:
    from .hodge import (FiberProductSpec, SurfaceSpec, euler_fiber_product,
                        euler_resolved, hodge_pair, hodge_table, node_count)
    if args.s1 is None and args.s2 is None:
        emit(dump_json(hodge_table(args.d)), cfg.out)
        return 0
    if args.s1 is None or args.s2 is None:
        raise SystemExit("give both --s1 and --s2, or neither for the built-in table")
    spec = FiberProductSpec(SurfaceSpec.from_json(Path(args.s1).read_text()),
                            SurfaceSpec.from_json(Path(args.s2).read_text()))
    h11, h21 = hodge_pair(spec, args.d)
    emit(dump_json({"s1": spec.s1.name, "s2": spec.s2.name, "shared_points": spec.shared,
                    "euler_fiber_product": euler_fiber_product(spec), "nodes": node_count(spec),
                    "euler_resolved": euler_resolved(spec), "h11": h11, "h21": h21}), cfg.out)
    return 0


def cmd_reproduce(cfg: RunConfig, args) -> int:
    from .checks import CHECKS, reproduce
    idents = args.only or list(CHECKS)
    unknown = [i for i in idents if i not in CHECKS]
    if unknown:
        print(f"error: unknown check id(s): {', '.join(unknown)}", file=sys.stderr)
        return 2
    results = reproduce(idents, jobs=args.jobs,
                        progress=lambda c: print(c.line(), file=sys.stderr, flush=True))
    emit(dump_json({"all_passed": all(r.passed for r in results),
                    "checks": [r.to_json() for r in results]}), cfg.out)
    return 0 if all(r.passed for r in results) else 1


def cmd_cache(cfg: RunConfig, args) -> int:
    from .periods import period_x0, period_x1, period_x1_lcs010
    directory = cfg.cache_dir
    if args.warm is not None:
        if directory is None:
            raise SystemExit(f"no cache directory: pass --dir or set {CACHE_ENV}")
        os.environ[CACHE_ENV] = str(directory)
        for build in (period_x0, period_x1, period_x1_lcs010):
            build(args.warm)
    emit(dump_json(cache_status(directory)), cfg.out)
    return 0


COMMANDS = {"periods": cmd_periods, "fit": cmd_fit, "verify": cmd_verify,
            "intersections": cmd_intersections, "gw": cmd_gw, "bmodel": cmd_bmodel,
            "hodge": cmd_hodge, "reproduce": cmd_reproduce, "cache": cmd_cache}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="joinmirror",
                                description="Exact period, operator and enumerative computations.")
    p.add_argument("--cache-dir", type=Path, help=f"series cache (overrides ${CACHE_ENV})")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--out", type=Path)
        return sp

    sp = add("periods", "closed-form period series in the series text format")
    sp.add_argument("--family", choices=["x0", "x1", "x1-lcs010"], required=True)
    sp.add_argument("--cap", type=int, default=12)

    sp = add("fit", "find theta-operators annihilating a series")
    sp.add_argument("--series", required=True)
    sp.add_argument("--theta-deg", type=int, required=True)
    sp.add_argument("--coeff-deg", type=int, required=True)
    sp.add_argument("--margin", type=int, default=2)

    sp = add("verify", "check that an operator annihilates a series")
    sp.add_argument("--op", required=True)
    sp.add_argument("--series", required=True)
    sp.add_argument("--through", type=int, required=True)

    add("intersections", "triple intersection numbers of X1, Y1 and X0")

    sp = add("gw", "A-model Gromov-Witten and BPS numbers")
    sp.add_argument("--model", choices=["x0", "x1"], required=True)
    sp.add_argument("--max-degree", type=int, default=6)
    sp.add_argument("--format", choices=["json", "csv"], default="json")

    sp = add("bmodel", "B-model computations at a large complex structure point")
    sp.add_argument("--chart", choices=CHARTS, default="100")
    sp.add_argument("--cap", type=int, default=7)
    sp.add_argument("--emit", choices=["periods", "mirror-map", "yukawa", "bps"], default="bps")
    sp.add_argument("--format", choices=["json", "csv"], default="json")

    sp = add("hodge", "Euler and Hodge numbers of Schoen fiber products")
    sp.add_argument("--s1")
    sp.add_argument("--s2")
    sp.add_argument("--d", type=int, choices=[0, 1], default=0)

    sp = add("reproduce", "run every acceptance check and report")
    sp.add_argument("--only", nargs="+", metavar="ID")
    sp.add_argument("--jobs", type=int, default=1)

    sp = add("cache", "inspect or warm the series cache")
    sp.add_argument("--dir", type=Path)
    sp.add_argument("--warm", type=int, metavar="CAP")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cache_dir = getattr(args, "dir", None) or args.cache_dir
    if cache_dir is not None:
        os.environ[CACHE_ENV] = str(cache_dir)
    elif os.environ.get(CACHE_ENV):
        cache_dir = Path(os.environ[CACHE_ENV])
    try:
        cfg = RunConfig(args.command, cap=getattr(args, "cap", None),
                        chart=getattr(args, "chart", None), out=args.out,
                        cache_dir=cache_dir, fmt=getattr(args, "format", "json"))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](cfg, args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
