"""Command line front end.

    hyperclass classnum --p 3 --poly 1+0T+1T^2
    hyperclass verify thm1 --p 5 --cap 5
    hyperclass verify 8crit --grid 5:4,7:4,5:6
    hyperclass witness --p 5 --k 8 --out cert.json
    hyperclass survey --p 5 --k 4 --cap 100

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 search exhausted.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass

from . import curvezeta, verify
from .classgroup import QuadOrder
from .ff import FieldError, make_field
from .polyring import Poly, SearchExhausted, is_irreducible

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EXHAUSTED = 0, 1, 2, 3
DEFAULT_CAP = os.environ.get("HYPERCLASS_CAP")
DEFAULT_GRID = "5:4,7:4,9:4,13:4,5:6"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    mode: str | None
    p: int
    n: int
    e: int | None
    poly: str | None
    cap: int | None
    l: int | None
    k: int | None
    grid: str | None
    seed: int
    format: str
    out: str | None


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(3, q + 1, 2):
        if q % p == 0:
            n = 0
            while q % p == 0:
                q //= p
                n += 1
            if q != 1:
                break
            return p, n
    raise UsageError(f"{q} is not an odd prime power")


def parse_grid(text: str) -> list[tuple[int, int, int]]:
    out = []
    for item in text.split(","):
        try:
            q, l = (int(x) for x in item.split(":"))
        except ValueError:
            raise UsageError(f"bad grid entry {item!r}; expected q:l") from None
        p, n = _prime_power(q)
        out.append((p, n, l))
    return out


def _render(cfg: RunConfig, field_json: dict, rows: list[dict], extra: dict | None = None) -> str:
    if cfg.format == "json":
        doc = {"config": asdict(cfg), "field": field_json, "rows": rows}
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(asdict(cfg), sort_keys=True) + "\n")
    buf.write("# field: " + json.dumps(field_json, sort_keys=True) + "\n")
    if extra:
        for key, val in extra.items():
            buf.write(f"# {key}: " + json.dumps(val, sort_keys=True) + "\n")
    cols: list[str] = []
    for r in rows:
        for c in r:
            if c not in cols:
                cols.append(c)
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: json.dumps(v) if isinstance(v, (list, dict)) else v for c, v in r.items()})
    return buf.getvalue()


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _field_and_e(cfg: RunConfig):
    F = make_field(cfg.p, cfg.n)
    if cfg.e is None:
        cfg.e = F.least_nonsquare()
    if not 0 < cfg.e < F.q or F.is_square(cfg.e):
        raise UsageError(f"e = {cfg.e} is not a non-square of {F!r}")
    return F


def cmd_classnum(cfg: RunConfig) -> int:
    F = _field_and_e(cfg)
    if not cfg.poly:
        raise UsageError("--poly is required")
    try:
        P = Poly.parse(F, cfg.poly)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if P.degree < 1 or not is_irreducible(P):
        raise UsageError(f"{cfg.poly} is not irreducible over {F!r}")
    try:
        order = QuadOrder(F, cfg.e, P)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r = verify.analyze(order)
    row = r.row()
    row["cross_check"] = "OK" if r.oracle_ok and not r.problems else "FAIL"
    _emit(cfg, _render(cfg, F.to_json(), [row]))
    return EXIT_OK if row["cross_check"] == "OK" else EXIT_FAIL


def cmd_verify(cfg: RunConfig) -> int:
    mode = cfg.mode
    if mode == "8crit":
        grid = parse_grid(cfg.grid or DEFAULT_GRID)
        rep = verify.verify_8crit(grid, cfg.cap or 2)
        _emit(cfg, _render(cfg, {"grid": [list(g) for g in grid]}, rep.rows, {"failures": rep.failures}))
        return EXIT_OK if rep.ok else EXIT_FAIL
    F = _field_and_e(cfg)
    if mode == "thm1":
        rep = verify.verify_theorem1(F, cfg.e, cfg.cap or 5)
    elif mode == "cor1":
        rep = verify.verify_corollary1(F, cfg.e, cfg.cap or 5)
    elif mode == "gekeler":
        rep = verify.verify_gekeler(F, cfg.e, cfg.cap or 6)
    else:
        raise UsageError(f"unknown verify mode {mode!r}")
    _emit(cfg, _render(cfg, F.to_json(), rep.rows, {"failures": rep.failures}))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_witness(cfg: RunConfig) -> int:
    if cfg.k is None or cfg.k % 4 or cfg.k < 8:
        raise UsageError("--k must be a multiple of 4, at least 8")
    F = make_field(cfg.p, cfg.n)
    try:
        cert = verify.theorem2_witnesses(F, cfg.k)
    except SearchExhausted as exc:
        report = {"config": asdict(cfg), "field": F.to_json(), "status": "search exhausted",
                  "reason": str(exc), "q": F.q, "l": cfg.k // 2}
        _emit(cfg, json.dumps(report, indent=2, sort_keys=True) + "\n")
        return EXIT_EXHAUSTED
    cert = {"config": asdict(cfg), **cert}
    _emit(cfg, json.dumps(cert, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if cert["certified"] else EXIT_FAIL


def cmd_survey(cfg: RunConfig) -> int:
    if cfg.k is None or cfg.k % 4:
        raise UsageError("--k must be divisible by 4")
    F = _field_and_e(cfg)
    res = verify.survey(F, cfg.e, cfg.k, cfg.cap or 100)
    _emit(cfg, _render(cfg, F.to_json(), res["rows"], {"frequency": res["frequency"]}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="odd characteristic")
    common.add_argument("--n", type=int, default=1, help="q = p^n")
    common.add_argument("--e", type=int, default=None, help="non-square (element code); default least")
    common.add_argument("--poly", default=None, help='prime p, e.g. "1+0T+1T^2"')
    common.add_argument("--cap", type=int, default=int(DEFAULT_CAP) if DEFAULT_CAP else None)
    common.add_argument("--l", type=int, default=None)
    common.add_argument("--k", type=int, default=None)
    common.add_argument("--grid", default=None, help="q:l pairs for 8crit, e.g. 5:4,5:6")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None)

    parser = argparse.ArgumentParser(prog="hyperclass", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classnum", parents=[common], help="class group of one order")
    v = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    v.add_argument("mode", choices=("thm1", "8crit", "cor1", "gekeler"))
    sub.add_parser("witness", parents=[common], help="pair of primes with h differing mod 8")
    sub.add_parser("survey", parents=[common], help="h mod 8 table over primes of degree k")
    return parser


COMMANDS = {"classnum": cmd_classnum, "verify": cmd_verify, "witness": cmd_witness, "survey": cmd_survey}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(command=args.command, mode=getattr(args, "mode", None), p=args.p, n=args.n,
                    e=args.e, poly=args.poly, cap=args.cap, l=args.l, k=args.k, grid=args.grid,
                    seed=args.seed, format=args.format, out=args.out)
    try:
        return COMMANDS[cfg.command](cfg)
    except (UsageError, FieldError) as exc:
        print(f"hyperclass: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
