"""Polynomial kernels of differential operator matrices, from the command line.

Exit codes: 0 success, 1 usage or input error, 2 a verification found a
counterexample.  With ``--out DIR`` every command writes ``<kind>.json`` and,
for dims tables, CSV files (``degree,dim,stabilized``); without it a short
summary (or the CSV table, for ``kernel``) goes to stdout.
"""

from __future__ import annotations

import argparse
import inspect
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import experiments as ex
from .algebra.fields import format_scalar, parse_field
from .algebra.poly import Poly
from .documents import (DocumentError, dims_csv, experiment_report, load_operator,
                        operator_to_document, write_dims_csv, write_json)
from .dsl import ParseError, format_operator
from .families import ReductionError
from .kernel import (SURROGATE_NOTE, find_plateau, kernel_scan, semicontinuity_scan,
                     zero_kernel_certificate)
from .operators.actions import InvertiblePolyMatrix, conjugate_glr

log = logging.getLogger("jetkernel")

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="jetkernel", description=__doc__.split("\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    def common(sp, nmax=12):
        sp.add_argument("--nmax", type=int, default=nmax, help="largest degree bound n")
        sp.add_argument("--out", type=Path, help="directory for JSON/CSV reports")

    def op_args(sp, required=True):
        sp.add_argument("--op", type=Path, required=required,
                        help="operator file (.dop DSL text or .json document)")
        sp.add_argument("--nvars", type=int, help="number of variables (overrides @nvars)")
        sp.add_argument("--field", help="Q or GF(p) (overrides @field)")

    def sampling(sp, samples=None):
        sp.add_argument("--samples", type=int, default=samples)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--bound", type=int, default=10, help="coefficient bound B")

    def shape(sp, defaults=(None, None, None, None)):
        r, nvars, order, coefdeg = defaults
        sp.add_argument("--r", type=int, default=r, help="rank (matrix size)")
        sp.add_argument("--nvars", type=int, default=nvars)
        sp.add_argument("--order", type=int, default=order, help="order bound N")
        sp.add_argument("--coefdeg", type=int, default=coefdeg, help="coefficient degree bound M")

    k = sub.add_parser("kernel", help="truncated kernel scan of one operator")
    op_args(k)
    common(k)
    k.add_argument("--plateau", type=int, default=3)

    f = sub.add_parser("scan-family", help="kernel dims of seeded family samples")
    f.add_argument("--mode", "--family", dest="mode", default="universal",
                   help="universal | constant | triangular | zero-constant-term | subspace-L")
    shape(f, (2, 1, 2, 2))
    sampling(f, 10)
    common(f)
    f.add_argument("--plateau", type=int, default=3)

    v = sub.add_parser("verify", help="run a seeded verification suite")
    v.add_argument("--suite", required=True, choices=sorted(ex.SUITES))
    shape(v)
    sampling(v)
    v.add_argument("--nmax", type=int)
    v.add_argument("--primes", type=_int_list)
    v.add_argument("--out", type=Path)

    s = sub.add_parser("semicont", help="kernel dimension along D0 + t*D1")
    op_args(s)
    s.add_argument("--by", type=Path, required=True, help="direction operator D1")
    s.add_argument("--t", type=_int_list, default=list(range(10)), help="t values (integers)")
    common(s, nmax=6)

    m = sub.add_parser("modp", help="compare kernels over Q and GF(p)")
    op_args(m, required=False)
    sampling(m, 30)
    m.add_argument("--primes", type=_int_list, default=list(ex.DEFAULT_PRIMES))
    common(m, nmax=6)

    c = sub.add_parser("conjugate", help="conjugate by a unitriangular polynomial matrix")
    op_args(c)
    c.add_argument("--by", type=Path, required=True,
                   help="matrix of polynomials (one row per line, ';' between entries)")
    common(c, nmax=4)
    return p


# ---------------------------------------------------------------------------
# helpers

def _load(args, attr="op"):
    field = parse_field(args.field) if getattr(args, "field", None) else None
    return load_operator(getattr(args, attr), getattr(args, "nvars", None), field)


def _summary_line(kind: str, summary: dict, ok: bool) -> str:
    parts = []
    for key, val in summary.items():
        label = key.replace("_", " ")
        if isinstance(val, bool) or not isinstance(val, (int, list)):
            parts.append(f"{label}: {val}")
        elif isinstance(val, list):
            parts.append(f"{label}: {val if val else 'none'}")
        else:
            parts.append(f"{val} {label}")
    return f"{kind}: " + ", ".join(parts) + f" [{'PASS' if ok else 'FAIL'}]"


def _emit(args, report: dict, csv_tables=()) -> None:
    if args.out is not None:
        write_json(args.out / f"{report['kind']}.json", report)
        for name, rows in csv_tables:
            write_dims_csv(args.out / name, rows)


def _rows(dims: Sequence[int], plateau: int = 3):
    st = find_plateau(dims, plateau)
    return [(n, d, st is not None and n >= st) for n, d in enumerate(dims)]


def _item_tables(kind: str, items) -> list:
    return [(f"dims/{kind}_{it.get('index', 0):04d}.csv", _rows(it["dims"]))
            for it in items if isinstance(it.get("dims"), list)]


# ---------------------------------------------------------------------------
# commands

def cmd_kernel(args) -> int:
    D = _load(args)
    rep = kernel_scan(D, args.nmax, plateau=args.plateau)
    cert = zero_kernel_certificate(D, args.nmax) if rep.dims[args.nmax] == 0 else None
    results = [dict(rep.to_dict(), certificate=cert.to_dict() if cert else None)]
    report = experiment_report("kernel", {"operator": operator_to_document(D), "nmax": args.nmax,
                                          "plateau": args.plateau},
                               results, {"dims": rep.dims_list,
                                         "stabilized_at": rep.stabilized_at}, True,
                               rep.notes)
    _emit(args, report, [("kernel.csv", rep.csv_rows())])
    if args.out is None:
        sys.stdout.write(dims_csv(rep.csv_rows()))
    else:
        print(f"kernel: dims {rep.dims_list}, stabilized at {rep.stabilized_at}")
    return EXIT_OK


def cmd_scan_family(args) -> int:
    res = ex.scan_family(args.mode, args.r, args.nvars, args.order, args.coefdeg, args.samples,
                         args.seed, args.bound, args.nmax, args.plateau)
    report = experiment_report(res.suite, res.inputs, res.items, res.summary, res.ok,
                               SURROGATE_NOTE.format(field="Q"))
    tables = [(f"sample_{it['index']:04d}.csv", _rows(it["dims"], args.plateau))
              for it in res.items]
    _emit(args, report, tables)
    for it in res.items:
        if it["dims"][-1]:
            log.info("sample %d: dims %s, kernel vector %s", it["index"], it["dims"],
                     it.get("kernel_vector"))
    print(_summary_line(res.suite, res.summary, res.ok))
    return EXIT_OK if res.ok else EXIT_FAILED


def _suite_kwargs(func, args) -> dict:
    given = {"samples": args.samples, "seed": args.seed, "bound": args.bound,
             "nmax": args.nmax, "n": args.nmax, "r": args.r, "nvars": args.nvars,
             "N": args.order, "M": args.coefdeg, "max_order": args.order,
             "primes": args.primes, "p": args.primes[0] if args.primes else None}
    params = inspect.signature(func).parameters
    return {k: v for k, v in given.items() if k in params and v is not None}


def cmd_verify(args) -> int:
    func = ex.SUITES[args.suite]
    res = func(**_suite_kwargs(func, args))
    report = experiment_report(res.suite, res.inputs, res.items, res.summary, res.ok,
                               SURROGATE_NOTE.format(field="Q"))
    _emit(args, report, _item_tables(res.suite, res.items))
    for it in res.failures:
        log.warning("%s item %s failed: %s", res.suite, it.get("index"), it)
    print(_summary_line(res.suite, res.summary, res.ok))
    return EXIT_OK if res.ok else EXIT_FAILED


def cmd_semicont(args) -> int:
    D0, D1 = _load(args), _load(args, "by")
    rep = semicontinuity_scan(D0, D1, args.t, args.nmax)
    inputs = {"operator": operator_to_document(D0), "direction": operator_to_document(D1),
              "t": args.t, "nmax": args.nmax}
    summary = {"generic": rep.generic, "special": [format_scalar(t) for t in rep.special]}
    report = experiment_report("semicont", inputs, [rep.to_dict()], summary, True,
                               SURROGATE_NOTE.format(field=D0.field.name))
    _emit(args, report)
    print(f"semicont: generic dim {rep.generic} at n={args.nmax}, "
          f"special t: {', '.join(summary['special']) or 'none'}")
    return EXIT_OK


def cmd_modp(args) -> int:
    if args.op is None:
        res = ex.run_modp(args.samples, args.seed, args.nmax, args.primes, args.bound)
        kind, items, summary, ok, inputs = res.suite, res.items, res.summary, res.ok, res.inputs
    else:
        D = _load(args)
        if D.field.characteristic:
            raise UsageError("modp expects an operator over Q")
        out = ex.modp_compare(D, args.primes, args.nmax)
        kind, items, ok = "modp", [out], out["ok"]
        summary = {"bad_set": out["bad_primes"],
                   "violations": 0 if ok else 1}
        inputs = {"operator": operator_to_document(D), "primes": args.primes,
                  "nmax": args.nmax}
    report = experiment_report(kind, inputs, items, summary, ok,
                               SURROGATE_NOTE.format(field="Q and GF(p)"))
    _emit(args, report)
    print(_summary_line(kind, summary, ok))
    return EXIT_OK if ok else EXIT_FAILED


def _unitriangular_from(M) -> InvertiblePolyMatrix:
    r = M.r
    polys = []
    for i in range(r):
        row = []
        for j in range(r):
            e = M[i, j]
            if e.order > 0:
                raise UsageError(f"entry ({i + 1},{j + 1}) of --by is not a polynomial")
            row.append(e.coefficient((0,) * M.nvars))
        polys.append(row)
    for i in range(r):
        if polys[i][i] != Poly.one(M.nvars, M.field) or any(
                polys[i][j] for j in range(i + 1, r)):
            raise UsageError("--by must be unitriangular (ones on the diagonal, zero above)")
    lower = {(i, j): polys[i][j] for i in range(r) for j in range(i)}
    return InvertiblePolyMatrix.unitriangular(lower, r, M.nvars, M.field)


def cmd_conjugate(args) -> int:
    D, M = _load(args), _load(args, "by")
    if (M.r, M.nvars, M.field) != (D.r, D.nvars, D.field):
        raise UsageError("--by matrix does not match the operator's size, variables or field")
    A = _unitriangular_from(M)
    AD = conjugate_glr(D, A)
    before = kernel_scan(D, args.nmax, with_bases=False)
    after = kernel_scan(AD, args.nmax + A.inverse_degree, with_bases=False)
    inputs = {"operator": operator_to_document(D),
              "A": [[str(p) for p in row] for row in A.forward], "nmax": args.nmax}
    results = [{"conjugated": operator_to_document(AD), "dims": before.dims_list,
                "dims_conjugated": after.dims_list}]
    report = experiment_report("conjugate", inputs, results,
                               {"inverse_degree": A.inverse_degree}, True,
                               SURROGATE_NOTE.format(field=D.field.name))
    _emit(args, report, [("conjugate.csv", after.csv_rows())])
    print(format_operator(AD))
    return EXIT_OK


COMMANDS = {"kernel": cmd_kernel, "scan-family": cmd_scan_family, "verify": cmd_verify,
            "semicont": cmd_semicont, "modp": cmd_modp, "conjugate": cmd_conjugate}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, DocumentError, ReductionError, FileNotFoundError, ValueError) as exc:
        print(f"jetkernel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
