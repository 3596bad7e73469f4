"""Plain-text readers and writers for matrices and manifold presentations.

Matrix file::

    # comment
    2 2
    9 3
    3 0

Presentation file::

    gens 2
    genus 1
    rel 9 3
    curve alpha 3 0
    curve beta 0 1
"""

from __future__ import annotations

from .abelian import Matrix
from .manifold import PresentedManifold


class FormatError(ValueError):
    pass


def _lines(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(fields, lineno) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got {' '.join(fields)!r}") from None


def parse_matrix(text: str) -> tuple[Matrix, int]:
    """Return ``(rows, ncols)``; ncols is kept for matrices with no rows."""
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty matrix file")
    lineno, header = lines[0]
    dims = _ints(header.split(), lineno)
    if len(dims) != 2 or min(dims) < 0:
        raise FormatError(f"line {lineno}: expected 'rows cols'")
    rows, cols = dims
    body = lines[1:]
    if len(body) != rows:
        raise FormatError(f"expected {rows} matrix rows, found {len(body)}")
    out = []
    for lineno, line in body:
        row = _ints(line.split(), lineno)
        if len(row) != cols:
            raise FormatError(f"line {lineno}: expected {cols} entries, found {len(row)}")
        out.append(tuple(row))
    return tuple(out), cols


def format_matrix(A: Matrix, ncols: int | None = None) -> str:
    cols = len(A[0]) if A else (ncols or 0)
    lines = [f"{len(A)} {cols}"] + [" ".join(str(x) for x in row) for row in A]
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> PresentedManifold:
    n = None
    genus = 1
    rels, curves = [], {}
    for lineno, line in _lines(text):
        key, *rest = line.split()
        if key == "gens":
            if len(rest) != 1 or n is not None:
                raise FormatError(f"line {lineno}: expected a single 'gens N'")
            (n,) = _ints(rest, lineno)
            if n < 0:
                raise FormatError(f"line {lineno}: negative generator count")
            continue
        if n is None:
            raise FormatError(f"line {lineno}: 'gens N' must come first")
        if key == "genus":
            if len(rest) != 1:
                raise FormatError(f"line {lineno}: expected 'genus G'")
            (genus,) = _ints(rest, lineno)
        elif key == "rel":
            rels.append(tuple(_vector(rest, n, lineno)))
        elif key == "curve":
            if not rest:
                raise FormatError(f"line {lineno}: expected 'curve NAME v1 ... vN'")
            name, *vals = rest
            if name in curves:
                raise FormatError(f"line {lineno}: curve {name!r} defined twice")
            curves[name] = tuple(_vector(vals, n, lineno))
        else:
            raise FormatError(f"line {lineno}: unknown keyword {key!r}")
    if n is None:
        raise FormatError("missing 'gens N' line")
    try:
        return PresentedManifold(n, tuple(rels), genus, curves)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _vector(fields, n, lineno) -> list[int]:
    v = _ints(fields, lineno)
    if len(v) != n:
        raise FormatError(f"line {lineno}: expected {n} entries, found {len(v)}")
    return v


def format_presentation(M: PresentedManifold) -> str:
    lines = [f"gens {M.n_generators}", f"genus {M.boundary_genus}"]
    lines += ["rel " + " ".join(map(str, r)) for r in M.relations]
    lines += [f"curve {k} " + " ".join(map(str, v)) for k, v in M.curves.items()]
    return "\n".join(lines) + "\n"


def parse_curve(text: str, M: PresentedManifold):
    """A curve argument: a name defined in the file, or integers split by commas/spaces."""
    if text in M.curves:
        return text
    fields = text.replace(",", " ").split()
    try:
        return tuple(int(f) for f in fields)
    except ValueError:
        raise FormatError(f"{text!r} is neither a curve name nor an integer vector") from None
