"""Command-line front end.

Every run writes its resolved configuration first: as the ``config`` member
of the JSON document, or as a ``# config: {...}`` comment line above the CSV
header.  Exit status is 2 for configuration errors, 1 when a verification
suite has a failing check and 0 otherwise.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from . import constants as K
from . import fields as F
from . import operators, verify
from .geometry import DiskError

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


def _grid(text: str):
    try:
        r, t = (int(v) for v in text.lower().replace("×", "x").split("x"))
    except ValueError:
        raise ConfigError(f"grid must look like 64x128, got {text!r}") from None
    if r < 1 or t < 1:
        raise ConfigError("grid sizes must be positive")
    return r, t


def grid_points(n_radii: int, n_angles: int):
    """Radii ``sin(pi (i + 1/2) / (2 n))``, clustered toward the circle, times uniform angles."""
    radii = np.sin(math.pi * (np.arange(n_radii) + 0.5) / (2 * n_radii))
    theta = 2 * math.pi * np.arange(n_angles) / n_angles
    return radii, theta


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-6, help="quadrature tolerance (default 1e-6)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    ap = argparse.ArgumentParser(prog="cauchydisk", description="Green potentials and Cauchy transforms on the unit disk.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constants", parents=[common], help="C_q with its A, B pieces and tail bound")
    c.add_argument("--q", type=float, required=True)

    cc = sub.add_parser("cq-curve", parents=[common], help="table of (q, C_q, tail_bound)")
    cc.add_argument("--from", dest="q_from", type=float, default=K.CQ_RANGE[0])
    cc.add_argument("--to", dest="q_to", type=float, default=K.CQ_RANGE[1])
    cc.add_argument("--steps", type=int, default=19)

    for name, helptext in (("transform", "sample an operator on a polar grid"),
                           ("potential", "sample the Green potential on a polar grid")):
        t = sub.add_parser(name, parents=[common], help=helptext)
        t.add_argument("--g", required=True, help="field id, e.g. one, example2, power:s=0.5")
        if name == "transform":
            t.add_argument("--op", default="cauchy", help="operator tag: " + ", ".join(o.value for o in operators.OperatorTag))
        t.add_argument("--grid", type=_grid, default=(64, 128), help="radial x angular, default 64x128")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True, help=", ".join(verify.SUITE_IDS))
    v.add_argument("--p", type=float, default=None, help="exponent for thm1/thm2")
    v.add_argument("--alpha", type=float, default=None, help="ex1 parameter")
    v.add_argument("--samples", type=int, default=None, help="thm3 pair count")
    v.add_argument("--family-size", type=int, default=None, help="thm1 family size")
    return ap


def _resolve(args) -> dict:
    """Validated configuration; raises ConfigError before any computation."""
    if not args.tol > 0:
        raise ConfigError("--tol must be positive")
    params = {}
    fmt = args.format
    if args.command == "constants":
        lo, hi = K.CQ_RANGE
        if not lo <= args.q <= hi:
            raise ConfigError(f"--q must lie in [{lo}, {hi}]")
        params = {"q": args.q}
        fmt = fmt or "json"
    elif args.command == "cq-curve":
        lo, hi = K.CQ_RANGE
        if not lo <= args.q_from <= args.q_to <= hi:
            raise ConfigError(f"need {lo} <= --from <= --to <= {hi}")
        if args.steps < 1 or (args.steps == 1 and args.q_from != args.q_to):
            raise ConfigError("--steps must be >= 2 unless --from equals --to")
        params = {"from": args.q_from, "to": args.q_to, "steps": args.steps}
        fmt = fmt or "csv"
    elif args.command in ("transform", "potential"):
        try:
            F.get(args.g)
            op = operators.OperatorTag(getattr(args, "op", "green_potential")).value
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if args.command == "potential":
            op = operators.OperatorTag.green_potential.value
        params = {"g": args.g, "op": op, "grid": list(args.grid)}
        fmt = fmt or "csv"
    elif args.command == "verify":
        if args.suite not in verify.SUITE_IDS:
            raise ConfigError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITE_IDS)}")
        extra = {"p": args.p, "alpha": args.alpha, "samples": args.samples, "family_size": args.family_size}
        allowed = {"thm1": {"p", "family_size"}, "thm2": {"p"}, "thm3": {"samples"}, "ex1": {"alpha"}}.get(args.suite, set())
        bad = sorted(k for k, val in extra.items() if val is not None and k not in allowed)
        if bad:
            raise ConfigError(f"suite {args.suite} does not take {', '.join('--' + b.replace('_', '-') for b in bad)}")
        params = {"suite": args.suite, **{k: val for k, val in extra.items() if val is not None}}
        p = params.get("p")
        if args.suite == "thm1" and p is not None and not 1.5 < p < 2:
            raise ConfigError("thm1 needs 3/2 < p < 2")
        if args.suite == "thm2" and p is not None and not (1.5 < p < 2 or 2 < p < math.inf):
            raise ConfigError("thm2 needs 3/2 < p < 2 or p > 2")
        if args.suite == "ex1" and args.alpha is not None and not args.alpha > 1 / 6:
            raise ConfigError("ex1 needs alpha > 1/6")
        if args.family_size is not None and not 1 <= args.family_size <= len(F.FAMILY_IDS):
            raise ConfigError(f"--family-size must be in 1..{len(F.FAMILY_IDS)}")
        if args.samples is not None and args.samples < 1:
            raise ConfigError("--samples must be positive")
        fmt = fmt or "json"
    return {
        "command": args.command,
        "parameters": params,
        "format": fmt,
        "seed": args.seed,
        "tolerance": args.tol,
        "output": args.out,
    }


def _constants_row(q, tol):
    rep = K.c_q(q, tol=min(tol, 1e-12))
    return {"q": q, "A": rep.parameters["A"], "B": rep.parameters["B"], "C_q": rep.exact_value, "tail_bound": rep.tail_bound}


def run(config: dict):
    """Compute the payload for a resolved config; returns ``(columns, rows, document, exit_code)``."""
    cmd, prm, tol = config["command"], config["parameters"], config["tolerance"]
    if cmd == "constants":
        row = _constants_row(prm["q"], tol)
        return list(row), [row], row, EXIT_OK
    if cmd == "cq-curve":
        qs = np.linspace(prm["from"], prm["to"], prm["steps"])
        rows = [{k: v for k, v in _constants_row(float(q), tol).items() if k in ("q", "C_q", "tail_bound")} for q in qs]
        return ["q", "C_q", "tail_bound"], rows, {"rows": rows}, EXIT_OK
    if cmd in ("transform", "potential"):
        g = F.get(prm["g"])
        radii, theta = grid_points(*prm["grid"])
        pts = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
        res = operators.evaluate(prm["op"], g, pts, tol)
        rows = []
        for k, r in enumerate(res):
            i, j = divmod(k, theta.size)
            rows.append({"r": float(radii[i]), "theta": float(theta[j]), "x": float(pts[k].real), "y": float(pts[k].imag),
                         "re": float(r.value.real), "im": float(r.value.imag), "error": float(r.error_estimate)})
        cols = ["r", "theta", "x", "y", "re", "im", "error"]
        return cols, rows, {"rows": rows}, EXIT_OK
    suite = verify.run_suite(prm["suite"], seed=config["seed"], tol=tol,
                             **{k: v for k, v in prm.items() if k != "suite"})
    doc = suite.as_dict()
    cols = ["check_id", "status", "measured", "target", "tolerance", "description"]
    rows = doc["checks"]
    return cols, rows, doc, EXIT_OK if suite.passed else EXIT_FAILED


def _cell(v):
    if isinstance(v, float):
        return repr(float(v))
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def render(config: dict, cols, rows, doc) -> str:
    if config["format"] == "json":
        return json.dumps({"config": config, "result": doc}, indent=2, sort_keys=True,
                          default=lambda o: repr(o)) + "\n"
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([_cell(row[c]) for c in cols])
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad flags, 0 on --help
        return int(exc.code or 0)
    try:
        config = _resolve(args)
    except ConfigError as exc:
        print(f"cauchydisk: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cols, rows, doc, code = run(config)
    except (F.FieldError, DiskError) as exc:
        print(f"cauchydisk: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = render(config, cols, rows, doc)
    if config["output"] == "-":
        sys.stdout.write(text)
    else:
        with open(config["output"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
