"""On-disk formats: operator documents, experiment reports and dims tables.

Operator document (JSON)::

    {"schema_version": 1, "nvars": 1, "r": 2, "field": "Q",
     "entries": [["h(1,1)", "0"], ["x1*h(1,1)", "h(1,1)"]]}

``field`` is ``"Q"`` or a prime (int, or the string ``"GF(p)"``).  An entry
may also be a structured term list ``[{"I": [..], "J": [..], "c": "num/den"},
...]`` meaning ``sum c * x^J h^[I]``.  All writes go through a temporary file
and :func:`os.replace`, so readers never see a half-written report.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

from .algebra.fields import Field, format_scalar, parse_field
from .algebra.poly import Poly
from .dsl import operator_grid, parse_dop, parse_scalar_operator
from .operators.core import MatrixOperator, ScalarOperator

SCHEMA_VERSION = 1
TOOL_NAME = "jetkernel"


class DocumentError(ValueError):
    """Malformed operator document or report."""


def _tool_version() -> str:
    from . import __version__
    return __version__


def field_to_json(field: Field) -> Union[str, int]:
    return "Q" if field.characteristic == 0 else field.characteristic


def field_from_json(value) -> Field:
    try:
        return parse_field(value)
    except (ValueError, TypeError) as exc:
        raise DocumentError(f"bad field {value!r}: {exc}") from None


def _entry_from_terms(terms, nvars: int, field: Field) -> ScalarOperator:
    op = ScalarOperator.zero(nvars, field)
    for t in terms:
        try:
            I, J, c = tuple(t["I"]), tuple(t["J"]), field(Fraction(str(t["c"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad term {t!r}: {exc}") from None
        if len(I) != nvars or len(J) != nvars:
            raise DocumentError(f"term {t!r} does not have {nvars} variables")
        op = op + ScalarOperator.hasse(I, nvars, field, coeff=Poly({J: c}, nvars, field))
    return op


def _entry_to_terms(op: ScalarOperator) -> List[dict]:
    out = []
    for I in sorted(op.terms):
        for J, c in op.terms[I].monomials():
            out.append({"I": list(I), "J": list(J), "c": format_scalar(c)})
    return out


def operator_to_document(D: MatrixOperator, structured: bool = False) -> dict:
    entries = ([[_entry_to_terms(e) for e in row] for row in D.entries] if structured
               else operator_grid(D))
    return {"schema_version": SCHEMA_VERSION, "nvars": D.nvars, "r": D.r,
            "field": field_to_json(D.field), "entries": entries}


def operator_from_document(doc: dict) -> MatrixOperator:
    try:
        nvars, r, entries = int(doc["nvars"]), int(doc["r"]), doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"operator document is missing a field: {exc}") from None
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {version}")
    field = field_from_json(doc.get("field", "Q"))
    if len(entries) != r or any(len(row) != r for row in entries):
        raise DocumentError(f"entries must be a {r}x{r} grid")
    grid = []
    for row in entries:
        out = []
        for e in row:
            if isinstance(e, str):
                out.append(parse_scalar_operator(e, nvars, field))
            else:
                out.append(_entry_from_terms(e, nvars, field))
        grid.append(out)
    return MatrixOperator(grid)


def load_operator(path: Union[str, Path], nvars: int | None = None,
                  field: Field | None = None) -> MatrixOperator:
    """Read a ``.json`` operator document, or ``.dop``/plain DSL text."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{path}: {exc}") from None
        return operator_from_document(doc)
    return parse_dop(text, nvars, field)


def atomic_write_text(path: Union[str, Path], text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_json(path, obj) -> Path:
    return atomic_write_text(path, json.dumps(obj, indent=2, sort_keys=False) + "\n")


def dims_csv(rows: Iterable[Tuple[int, int, bool]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["degree", "dim", "stabilized"])
    for n, d, s in rows:
        w.writerow([n, d, str(bool(s)).lower()])
    return buf.getvalue()


def write_dims_csv(path, rows: Iterable[Tuple[int, int, bool]]) -> Path:
    return atomic_write_text(path, dims_csv(rows))


def read_dims_csv(path) -> List[Tuple[int, int, bool]]:
    with open(path, newline="") as fh:
        return [(int(r["degree"]), int(r["dim"]), r["stabilized"] == "true")
                for r in csv.DictReader(fh)]


def experiment_report(kind: str, inputs: dict, results: Sequence, summary: dict, ok: bool,
                      field_note: str = "") -> dict:
    """Self-contained report; no timestamps, so reruns are byte-identical."""
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "ok": ok, "inputs": inputs,
            "summary": summary, "results": list(results),
            "environment": {"tool": TOOL_NAME, "version": _tool_version(),
                            "field_note": field_note}}

