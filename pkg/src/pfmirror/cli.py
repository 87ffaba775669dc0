"""Command-line front end: ``pfmirror derive|curves|verify``.

Exit codes: 0 success, 2 bad input or configuration, 3 a verification or
integrality failure, 4 an internal pipeline error.  Errors are written to
stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .exact import NotInvariantUnderMuK
from .griffiths import (
    InternalDegreeError,
    NotMaximallyUnipotent,
    UnsupportedSingularityStructure,
    check_max_unipotent,
    derivation_record,
)
from .groebner import NonProportionalNormalForm
from .mirror import (
    DEFAULT_DEPTH,
    DEFAULT_ORDER,
    GUARD,
    NonIntegralInstanton,
    extract_n,
    instanton_chain,
    operator_residual,
    schubert_tangent_lines,
    verify_c3,
)
from .multipoly import BUILTIN_FAMILIES, FamilySpec, InvalidFamily
from .pipeline import derive, run_family
from .tables import SINGULAR_POINT, TABLE2, TABLE3

OUTPUT_DIR_ENV = "PFMIRROR_OUTPUT_DIR"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_INTERNAL = 4


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    families: list
    order: int = DEFAULT_ORDER
    depth: int = DEFAULT_DEPTH
    c2: Fraction = None
    fmt: str = "text"
    output: str = None

    def __post_init__(self):
        if self.depth < 0 or self.order < 1:
            raise ConfigError("order must be positive and depth non-negative")
        if self.depth > self.order - 1:
            raise ConfigError(f"depth {self.depth} needs order >= {self.depth + 1}")


def _families(args):
    if args.weights:
        try:
            w = tuple(int(x) for x in args.weights.split(","))
        except ValueError:
            raise ConfigError(f"bad weights {args.weights!r}") from None
        return [FamilySpec(w)]
    if args.family == "all":
        return [BUILTIN_FAMILIES[k] for k in sorted(BUILTIN_FAMILIES)]
    return [BUILTIN_FAMILIES[int(args.family[1:])]]


def config_from_args(args) -> RunConfig:
    c2 = None
    if getattr(args, "c2", None):
        try:
            c2 = Fraction(args.c2)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"bad c2 {args.c2!r}") from None
        if not c2:
            raise ConfigError("c2 must be nonzero")
    depth = getattr(args, "depth", None)
    depth = DEFAULT_DEPTH if depth is None else depth
    order = args.order if args.order is not None else max(DEFAULT_ORDER, depth + GUARD)
    return RunConfig(_families(args), order, depth, c2, args.format, args.output)


# ---------------------------------------------------------------------------
# commands


def cmd_derive(cfg: RunConfig):
    records = []
    for spec in cfg.families:
        res = derive(spec)
        records.append(derivation_record(spec, res.epsilons, res.pf))
    if cfg.fmt == "json":
        body = json.dumps(records[0] if len(records) == 1 else records, indent=2) + "\n"
    elif cfg.fmt == "tsv":
        lines = ["k\tlambda\teps1\teps2\teps3\teps4\tB0\tB1\tB2\tB3"]
        for r, spec in zip(records, cfg.families):
            lines.append("\t".join([str(spec.k), r["lambda"]] + r["epsilons"] + r["B"]))
        body = "\n".join(lines) + "\n"
    else:
        lines = []
        for r in records:
            lines.append(f"{r['family']} weights={tuple(r['weights'])} lambda={r['lambda']}")
            for i, e in enumerate(r["epsilons"], 1):
                lines.append(f"  eps{i} = {e}")
            for i, b in enumerate(r["B"]):
                lines.append(f"  B{i} = {b}")
            lines.append(f"  unipotent: {str(r['unipotent']).lower()}")
        body = "\n".join(lines) + "\n"
    return body, EXIT_OK


def cmd_curves(cfg: RunConfig):
    rows = []
    for spec in cfg.families:
        res = run_family(spec, cfg.order, cfg.depth, cfg.c2, extract=False)
        y = res.expansion
        y.n = extract_n(y.a)  # raises NonIntegralInstanton
        rows.append((spec, y))
    if cfg.fmt == "json":
        recs = []
        for spec, y in rows:
            rec = {"family": spec.label, "weights": list(spec.weights)}
            rec.update(y.to_json())
            recs.append(rec)
        body = json.dumps(recs[0] if len(recs) == 1 else recs, indent=2) + "\n"
    elif cfg.fmt == "tsv":
        lines = ["k\t" + "\t".join(f"n{j}" for j in range(cfg.depth + 1))]
        for spec, y in rows:
            lines.append("\t".join([str(spec.k)] + [str(v) for v in y.n]))
        body = "\n".join(lines) + "\n"
    else:
        body = "".join(f"{spec.label}: " + ", ".join(str(v) for v in y.n) + "\n" for spec, y in rows)
    return body, EXIT_OK


def verification_checks(spec, order, depth, c2=None):
    """Yield ``(name, passed, detail)`` for one family."""
    res = run_family(spec, order, depth, c2, extract=False)
    k = spec.k
    if k in TABLE2 and spec == BUILTIN_FAMILIES[k]:
        ok = list(res.epsilons) == TABLE2[k]
        yield "published epsilons", ok, ", ".join(str(e) for e in res.epsilons)
    ok = check_max_unipotent(res.pf)
    yield "B_j(0) = 0 and A(0) nilpotent of index 4", ok, ""
    ok = verify_c3(res.pf) and (k not in SINGULAR_POINT or res.pf.lam == SINGULAR_POINT[k])
    yield "C3 = 6/z + 2/(z - lambda)", ok, f"lambda = {res.pf.lam}"
    resid = operator_residual(res.pf, res.data.f0)
    ok = not any(resid.coeffs[: max(order - 4, 0)])
    yield "PF operator annihilates f0", ok, f"through order {order - 4}"
    chain = instanton_chain(res.expansion.a)
    bad = [m for m in range(1, depth + 1) if chain[m].denominator != 1]
    yield f"n_1..n_{depth} integral", not bad, f"first failure at {bad[0]}" if bad else ""
    if k in TABLE3 and spec == BUILTIN_FAMILIES[k]:
        m = min(depth, len(TABLE3[k]) - 1)
        ok = all(chain[j] == TABLE3[k][j] for j in range(m + 1))
        yield f"published n_0..n_{m}", ok, ""
    if k == 8 and depth >= 1:
        ok = chain[1] == 2 * schubert_tangent_lines(8)
        yield "n1 = 2 * schubert(8)", ok, f"{chain[1]} vs 2 * {schubert_tangent_lines(8)}"


def cmd_verify(cfg: RunConfig):
    results = []
    for spec in cfg.families:
        for name, ok, detail in verification_checks(spec, cfg.order, cfg.depth, cfg.c2):
            results.append({"family": spec.label, "check": name, "passed": bool(ok), "detail": detail})
    all_ok = all(r["passed"] for r in results)
    if cfg.fmt == "json":
        body = json.dumps({"passed": all_ok, "checks": results}, indent=2) + "\n"
    elif cfg.fmt == "tsv":
        body = "family\tcheck\tresult\n" + "".join(
            f"{r['family']}\t{r['check']}\t{'pass' if r['passed'] else 'FAIL'}\n" for r in results
        )
    else:
        body = "".join(
            f"{r['family']} {r['check']}: {'pass' if r['passed'] else 'FAIL'}"
            + (f" ({r['detail']})" if r["detail"] else "")
            + "\n"
            for r in results
        )
    return body, EXIT_OK if all_ok else EXIT_VERIFY


COMMANDS = {"derive": cmd_derive, "curves": cmd_curves, "verify": cmd_verify}


def build_parser():
    parser = argparse.ArgumentParser(prog="pfmirror", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--family", default="all" if name == "verify" else "k5",
                       choices=["k5", "k6", "k8", "k10", "all"])
        p.add_argument("--weights", help="explicit weights, e.g. 2,1,1,1,1")
        p.add_argument("--format", default="text", choices=["json", "tsv", "text"])
        p.add_argument("--output", help="write to this file instead of stdout")
        p.add_argument("--order", type=int, default=None, help=f"series truncation (default {DEFAULT_ORDER})")
        if name != "derive":
            p.add_argument("--depth", type=int, default=None, help=f"expansion depth (default {DEFAULT_DEPTH})")
            p.add_argument("--c2", help="override the second integration constant, e.g. 1/3125")
    return parser


def _error(kind, message, code, **extra):
    obj = {"error": kind, "message": message}
    obj.update(extra)
    sys.stderr.write(json.dumps(obj) + "\n")
    return code


def _emit(cfg, command, body):
    path = cfg.output
    if path is None and os.environ.get(OUTPUT_DIR_ENV):
        label = cfg.families[0].label if len(cfg.families) == 1 else "all"
        ext = {"json": "json", "tsv": "tsv", "text": "txt"}[cfg.fmt]
        path = os.path.join(os.environ[OUTPUT_DIR_ENV], f"{command}-{label}.{ext}")
    if path is None:
        sys.stdout.write(body)
    else:
        with open(path, "w") as fh:
            fh.write(body)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (ConfigError, InvalidFamily) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_INPUT)
    try:
        body, code = COMMANDS[args.command](cfg)
    except NonIntegralInstanton as exc:
        return _error("NonIntegralInstanton", str(exc), EXIT_VERIFY, index=exc.index, value=str(exc.value))
    except (
        UnsupportedSingularityStructure,
        NotMaximallyUnipotent,
        NonProportionalNormalForm,
        NotInvariantUnderMuK,
        InternalDegreeError,
        ArithmeticError,
    ) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_INTERNAL)
    _emit(cfg, args.command, body)
    return code


if __name__ == "__main__":
    sys.exit(main())
