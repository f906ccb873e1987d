"""Plain-text matrix files.

Layout (one column of the parity-check matrix per body line)::

    covsat-matrix 1
    field p=2 k=2 modulus=1,1,1
    shape r=4 n=9
    provenance construction-s q=4 rho=1
    columns
    1 0 0 0
    ...

Entries are field-element indices.  ``modulus`` lists the coefficients of the
defining polynomial, constant term first.  ``parse(emit(H)) == H`` bit for
bit, and the header rebuilds an identical field.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .codes import ParityCheckMatrix
from .gf import FieldError, build_field, field_from_modulus

MAGIC = "covsat-matrix 1"


class FormatError(ValueError):
    pass


def emit(H: ParityCheckMatrix) -> str:
    ctx = H.ctx
    prov = " ".join(str(H.provenance).split())
    lines = [
        MAGIC,
        f"field p={ctx.p} k={ctx.k} modulus={','.join(map(str, ctx.modulus))}",
        f"shape r={H.r} n={H.n}",
        f"provenance {prov}".rstrip(),
        "columns",
    ]
    lines += [" ".join(map(str, col)) for col in H.columns.tolist()]
    return "\n".join(lines) + "\n"


def _kv(line: str, keyword: str) -> dict[str, str]:
    parts = line.split()
    if not parts or parts[0] != keyword:
        raise FormatError(f"expected a '{keyword}' line, got {line!r}")
    out = {}
    for item in parts[1:]:
        if "=" not in item:
            raise FormatError(f"malformed entry {item!r} in {keyword} line")
        k, v = item.split("=", 1)
        out[k] = v
    return out


def parse(text: str) -> ParityCheckMatrix:
    lines = text.splitlines()
    if len(lines) < 5 or lines[0].strip() != MAGIC:
        raise FormatError("not a covsat matrix file")
    try:
        f = _kv(lines[1], "field")
        p, k = int(f["p"]), int(f["k"])
        modulus = tuple(int(x) for x in f["modulus"].split(","))
        s = _kv(lines[2], "shape")
        r, n = int(s["r"]), int(s["n"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad header: {exc}") from exc
    if not lines[3].startswith("provenance"):
        raise FormatError("missing provenance line")
    provenance = lines[3][len("provenance"):].strip()
    if lines[4].strip() != "columns":
        raise FormatError("missing 'columns' marker")
    try:
        ctx = build_field(p, k)
        if ctx.modulus != modulus:
            ctx = field_from_modulus(p, modulus)
    except FieldError as exc:
        raise FormatError(f"bad field: {exc}") from exc
    body = [ln for ln in lines[5:] if ln.strip()]
    if len(body) != n:
        raise FormatError(f"header says n={n}, found {len(body)} column lines")
    try:
        cols = np.array([[int(x) for x in ln.split()] for ln in body], dtype=np.int64).reshape(n, r)
    except ValueError as exc:
        raise FormatError(f"bad column data: {exc}") from exc
    zero = bool(n and np.any(~cols.any(axis=1)))
    try:
        return ParityCheckMatrix(ctx, cols, provenance, allow_zero=zero)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def digest(H: ParityCheckMatrix) -> str:
    return hashlib.sha256(emit(H).encode()).hexdigest()


def write_matrix(H: ParityCheckMatrix, path) -> None:
    Path(path).write_text(emit(H))


def read_matrix(path) -> ParityCheckMatrix:
    return parse(Path(path).read_text())


@dataclass
class MatrixFile:
    """A parsed file: the matrix plus its exact text."""

    matrix: ParityCheckMatrix
    text: str

    @classmethod
    def of(cls, H: ParityCheckMatrix) -> "MatrixFile":
        return cls(H, emit(H))

    @classmethod
    def load(cls, path) -> "MatrixFile":
        text = Path(path).read_text()
        return cls(parse(text), text)
