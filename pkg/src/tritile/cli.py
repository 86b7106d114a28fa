"""Command line entry point: ``tritile <verb> ...``.

Every failure is reported on stderr as one line of the form
``tritile: error[<kind>]: <message>`` and the exit status is 2.
"""

from __future__ import annotations

import argparse
import sys
from functools import lru_cache
from pathlib import Path

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

CERTIFY_CASES = ("piover6", "piover5", "twopifive", "pi11", "pi14", "threetwo-case2", "threetwo-case1",
                 "ell3", "ell4", "ell5")
GEN_FAMILIES = ("three", "quadratic", "compose", "threem2", "twentyseven")


class UsageError(Exception):
    kind = "usage"


class InputError(Exception):
    kind = "input"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _params(items: list[str]) -> dict[str, str]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise UsageError(f"parameter {item!r} is not of the form key=value")
        if key in out:
            raise UsageError(f"parameter {key!r} given twice")
        out[key] = value
    return out


def _int_param(params: dict[str, str], key: str, default: int | None = None, low: int = 1) -> int:
    if key not in params:
        if default is None:
            raise UsageError(f"missing parameter {key}=<integer>")
        return default
    try:
        value = int(params.pop(key))
    except ValueError:
        raise UsageError(f"{key} must be an integer") from None
    if value < low:
        raise UsageError(f"{key} must be at least {low}")
    return value


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _load(path: str):
    from .tiling import TilingError, load_tiling
    try:
        return load_tiling(_read(path))
    except TilingError as exc:
        raise InputError(f"{path}: {exc}") from None


# ------------------------------------------------------------------ verbs

def cmd_verify(args, out) -> int:
    from .tiling import verify_tiling
    report = verify_tiling(_load(args.file))
    out.write(report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def _build(family: str, params: dict[str, str]):
    from . import tiling as T
    if family == "three":
        t = T.gen_three()
    elif family == "twentyseven":
        t = T.gen_27()
    elif family == "threem2":
        t = T.gen_3m2(_int_param(params, "m"))
    elif family == "quadratic":
        n = _int_param(params, "n")
        tile = params.pop("tile", "pi6")
        if tile == "pi6":
            shape = T.pi6_tile()
        elif tile == "equilateral":
            shape = T.equilateral_tile(T._sqrt3())
        else:
            shape = _load(tile).tile
        t = T.gen_quadratic(shape, n)
    else:
        if "outer" not in params or "inner" not in params:
            raise UsageError("compose needs outer=<file> and inner=<file>")
        outer, inner = _load(params.pop("outer")), _load(params.pop("inner"))
        try:
            t = T.compose(outer, inner)
        except T.TilingError as exc:
            raise InputError(str(exc)) from None
    if params:
        raise UsageError(f"unknown parameter(s) for {family}: {', '.join(sorted(params))}")
    return t


def cmd_gen(args, out) -> int:
    from .tiling import save_tiling, svg_export
    t = _build(args.family, _params(args.params))
    _write(args.output, save_tiling(t))
    if args.svg:
        _write(args.svg, svg_export(t))
    out.write(f"wrote {args.output}: N={t.N}\n")
    return EXIT_OK


def _certify(case: str):
    """Run one case; returns (report text, whether the verdict is the expected one)."""
    from . import casework as cw
    if case == "pi11":
        rep = cw.certify_pi11_all()
        ok = True
        for b in rep.branches:
            shape = b.case.split("shape ", 1)[-1]
            if shape == "(1, 3, 7)":
                continue  # the tile itself
            expect = "inconclusive" if shape == "(2, 4, 5)" else "unsat"
            ok &= b.verdict.kind == expect
        return rep.to_text(), ok
    if case == "pi14":
        reps = [cw.certify_pi14("gamma"), cw.certify_pi14("gamma+alpha")]
        return "\n".join(r.to_text() for r in reps), all(r.verdict.kind == "unsat" for r in reps)
    if case == "piover6":
        rep = cw.certify_piover6()
        kinds = {b.case.split()[-1]: b.verdict.kind for b in rep.branches}
        return rep.to_text(), kinds == {"equilateral": "family", "30-60-90": "unsat"}
    runners = {
        "piover5": cw.certify_piover5,
        "twopifive": cw.certify_twopifive,
        "threetwo-case2": cw.engine_32_case2,
        "threetwo-case1": cw.engine_32_case1,
        "ell3": lambda: cw.eliminate_ell(3),
        "ell4": lambda: cw.eliminate_ell(4),
        "ell5": lambda: cw.eliminate_ell(5),
    }
    rep = runners[case]()
    return rep.to_text(), rep.verdict.kind == "unsat"


def cmd_certify(args, out) -> int:
    text, ok = _certify(args.case)
    out.write(text + "\n")
    out.write(f"expected verdict: {'reproduced' if ok else 'NOT reproduced'}\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_search(args, out) -> int:
    from .casework.search import search_32
    if args.nmax < 1:
        raise UsageError("--nmax must be at least 1")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    report = search_32(args.nmax, workers=args.workers, strict=args.strict)
    out.write(report.to_text() + "\n")
    return EXIT_OK if not report.solutions else EXIT_FAIL


def cmd_classify(args, out) -> int:
    from .casework.classify import classify
    if args.N < 1:
        raise UsageError("N must be positive")
    fams = classify(args.N)
    out.write(f"N={args.N}: {len(fams)} families\n")
    for f in fams:
        out.write(f.to_text() + "\n")
    return EXIT_OK


def _fraction_arg(text: str) -> tuple[int, int]:
    num, sep, den = text.partition("/")
    try:
        k, n = int(num), int(den) if sep else 1
    except ValueError:
        raise UsageError(f"expected k/n, got {text!r}") from None
    if n < 1:
        raise UsageError("denominator must be positive")
    return k, n


def cmd_minpoly(args, out) -> int:
    from .exactalg import cos_pi, format_uni, minpoly, sin_pi
    k, n = _fraction_arg(args.angle)
    value = sin_pi(k, n) if args.func == "sin" else cos_pi(k, n)
    out.write(format_uni(minpoly(value)) + "\n")
    return EXIT_OK


def cmd_cyclo(args, out) -> int:
    from .exactalg import cyclotomic_poly, format_uni
    if args.n < 1:
        raise UsageError("n must be positive")
    out.write(format_uni(cyclotomic_poly(args.n)) + "\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    from .casework.ell import table_ell3
    out.write(table_ell3().to_text() + "\n")
    return EXIT_OK


@lru_cache(maxsize=None)
def build_parser() -> argparse.ArgumentParser:
    # built once per process; parse_args keeps no state on the parser
    ap = _Parser(prog="tritile", description="Exact tools for triangle tilings.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check a tiling file")
    p.add_argument("file")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("gen", help="write a tiling from a known family")
    p.add_argument("family", choices=GEN_FAMILIES)
    p.add_argument("params", nargs="*", help="key=value, e.g. m=2 or n=3 tile=pi6")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--svg")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("certify", help="replay a nonexistence certificate")
    p.add_argument("case", choices=CERTIFY_CASES)
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("search", help="bounded search over d-matrices")
    p.add_argument("kind", choices=("threetwo",))
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strict", action="store_true",
                   help="also require an irreducible cubic sharing a root with the eigenvector relation")
    p.set_defaults(run=cmd_search)

    p = sub.add_parser("classify", help="families admitting N tiles")
    p.add_argument("N", type=int)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("minpoly", help="minimal polynomial of sin or cos of k*pi/n")
    p.add_argument("func", choices=("sin", "cos"))
    p.add_argument("angle", help="k/n")
    p.set_defaults(run=cmd_minpoly)

    p = sub.add_parser("cyclo", help="the n-th cyclotomic polynomial")
    p.add_argument("n", type=int)
    p.set_defaults(run=cmd_cyclo)

    p = sub.add_parser("table", help="print a case table")
    p.add_argument("name", choices=("ell3",))
    p.set_defaults(run=cmd_table)
    return ap


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        from .exactalg import precision_cap
        precision_cap()
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except (UsageError, InputError) as exc:
        err.write(f"tritile: error[{exc.kind}]: {exc}\n")
    except ValueError as exc:
        err.write(f"tritile: error[value]: {exc}\n")
    return EXIT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))
