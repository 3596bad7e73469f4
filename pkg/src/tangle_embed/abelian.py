"""Exact integer linear algebra and finitely generated abelian groups.

Matrices are plain tuples of row tuples holding Python ints, so every
computation is exact regardless of entry size.

>>> smith_normal_form([[9, 3], [3, 0]]).factors
(3, 3)
>>> str(group_from_presentation([[9, 3]], 2))
'Z + Z/3'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Sequence

from sympy import factorint

Matrix = tuple[tuple[int, ...], ...]


@lru_cache(maxsize=4096)
def prime_factors(n: int) -> tuple[tuple[int, int], ...]:
    """``((p, e), ...)`` for ``n >= 1``, primes ascending."""
    return tuple(sorted(factorint(n).items()))


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    if any(len(r) != n for r in M):
        raise ValueError("determinant needs a square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """Result of :func:`smith_normal_form`: ``U @ A @ V == S``."""

    U: Matrix
    S: Matrix
    V: Matrix
    factors: tuple[int, ...]
    rows: int
    cols: int


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form with unimodular transforms.

    The pivot is always an entry of least nonzero absolute value in the
    remaining block. ``ncols`` is only needed to fix the shape of a matrix
    with no rows.
    """
    A, n = _shape(A, ncols)
    return _smith(A, n, True)


def invariant_factors(A: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[int, ...]:
    """Diagonal of the Smith form, without building the transforms."""
    A, n = _shape(A, ncols)
    return _factors_only(A, n)


@lru_cache(maxsize=65536)
def _factors_only(A: Matrix, n: int) -> tuple[int, ...]:
    # diagonalize by row and column operations, then rebuild the
    # divisibility chain from the prime powers of the diagonal
    S = [list(r) for r in A]
    m = len(S)
    diag = []
    for t in range(min(m, n)):
        best, bi, bj = 0, -1, -1
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                v = row[j]
                if v and (not best or abs(v) < best):
                    best, bi, bj = abs(v), i, j
        if not best:
            break
        S[t], S[bi] = S[bi], S[t]
        for r in S:
            r[t], r[bj] = r[bj], r[t]
        while True:
            top = S[t]
            p = top[t]
            for i in range(t + 1, m):
                r = S[i]
                if r[t]:
                    q = r[t] // p
                    for j in range(t, n):
                        r[j] -= q * top[j]
            for j in range(t + 1, n):
                if top[j]:
                    q = top[j] // p
                    for r in S[t:]:
                        r[j] -= q * r[t]
            # any nonzero remainder is smaller than the pivot; move it in
            bi = next((i for i in range(t + 1, m) if S[i][t]), None)
            if bi is not None:
                S[t], S[bi] = S[bi], S[t]
                continue
            bj = next((j for j in range(t + 1, n) if top[j]), None)
            if bj is not None:
                for r in S:
                    r[t], r[bj] = r[bj], r[t]
                continue
            break
        diag.append(abs(S[t][t]))
    k = min(m, n)
    chain = invariant_chain(d for d in diag if d != 1)
    ones = len(diag) - len(chain)
    return (1,) * ones + chain + (0,) * (k - len(diag))


def _shape(A, ncols):
    if not (isinstance(A, tuple) and all(type(r) is tuple for r in A)):
        A = as_matrix(A)
    elif A and len({len(r) for r in A}) != 1:
        raise ValueError("ragged matrix")
    n = len(A[0]) if A else (ncols or 0)
    if ncols is not None and A and ncols != n:
        raise ValueError(f"matrix has {n} columns, expected {ncols}")
    return A, n


@lru_cache(maxsize=65536)
def _smith(A: Matrix, n: int, track: bool) -> SmithForm:
    m = len(A)
    S = [list(r) for r in A]
    U = [list(r) for r in identity(m)] if track else None
    V = [list(r) for r in identity(n)] if track else None
    row_mats = (S, U) if track else (S,)
    col_mats = (S, V) if track else (S,)

    def swap_rows(i, j):
        for M in row_mats:
            M[i], M[j] = M[j], M[i]

    def swap_cols(i, j):
        for M in col_mats:
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        for M in row_mats:
            rd, rs = M[dst], M[src]
            for c in range(len(rd)):
                rd[c] += k * rs[c]

    def add_col(dst, src, k):
        for M in col_mats:
            for r in M:
                r[dst] += k * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = S[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                # a remainder is now smaller than the pivot; move it in
                best = None
                for i in range(t, m):
                    if S[i][t] and (best is None or abs(S[i][t]) < best[0]):
                        best = (abs(S[i][t]), i, t)
                for j in range(t, n):
                    if S[t][j] and abs(S[t][j]) < best[0]:
                        best = (abs(S[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            for M in row_mats:
                M[t] = [-x for x in M[t]]

    factors = tuple(S[i][i] for i in range(min(m, n)))
    if not track:
        return SmithForm((), (), (), factors, m, n)
    return SmithForm(as_matrix(U), as_matrix(S), as_matrix(V), factors, m, n)


def invariant_chain(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors (each >= 2, d1 | d2 | ...) of a direct sum of cyclic groups."""
    by_prime: dict[int, list[int]] = {}
    for d in orders:
        d = abs(int(d))
        if d == 0:
            raise ValueError("infinite cyclic summand has no finite order")
        for p, e in prime_factors(d):
            by_prime.setdefault(p, []).append(p**e)
    length = max((len(v) for v in by_prime.values()), default=0)
    chain = [1] * length
    for powers in by_prime.values():
        powers.sort()
        for k, q in enumerate(powers):
            chain[length - len(powers) + k] *= q
    return tuple(chain)


_CYCLIC = re.compile(r"^Z/(\d+)$")
_FREE = re.compile(r"^Z(?:\^(\d+))?$")


@dataclass(frozen=True)
class AbGroup:
    """``Z^free_rank + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk`` and each ``di >= 2``."""

    free_rank: int = 0
    torsion_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        tf = tuple(self.torsion_factors)
        object.__setattr__(self, "torsion_factors", tf)
        if any(d < 2 for d in tf) or any(b % a for a, b in zip(tf, tf[1:])):
            raise ValueError(f"not an invariant-factor chain: {tf}")

    @classmethod
    def from_cyclic(cls, free_rank: int, orders: Iterable[int]) -> AbGroup:
        """Normalize ``Z^free_rank`` plus arbitrary finite cyclic summands."""
        return cls(free_rank, invariant_chain(o for o in orders if abs(o) != 1))

    @classmethod
    def parse(cls, text: str) -> AbGroup:
        text = text.strip()
        if text in ("0", ""):
            return cls()
        rank, orders = 0, []
        for term in text.split("+"):
            term = term.strip()
            if m := _CYCLIC.match(term):
                orders.append(int(m.group(1)))
            elif m := _FREE.match(term):
                rank += int(m.group(1) or 1)
            else:
                raise ValueError(f"cannot parse group term {term!r}")
        return cls.from_cyclic(rank, orders)

    @property
    def order(self) -> int:
        return order(self)

    def __str__(self):
        terms = []
        if self.free_rank == 1:
            terms.append("Z")
        elif self.free_rank > 1:
            terms.append(f"Z^{self.free_rank}")
        terms += [f"Z/{d}" for d in self.torsion_factors]
        return " + ".join(terms) or "0"


def group_from_presentation(relations: Sequence[Sequence[int]], n_generators: int) -> AbGroup:
    """The cokernel ``Z^n / rowspan(relations)``."""
    if any(len(r) != n_generators for r in relations):
        raise ValueError(f"every relation needs {n_generators} entries")
    factors = invariant_factors(relations, n_generators)
    nonzero = [d for d in factors if d]
    return AbGroup(n_generators - len(nonzero), tuple(d for d in nonzero if d != 1))


def order(G: AbGroup) -> int:
    # 0 stands for an infinite group
    return 0 if G.free_rank else prod(G.torsion_factors)


def torsion(G: AbGroup) -> AbGroup:
    return AbGroup(0, G.torsion_factors)


def free_rank(G: AbGroup) -> int:
    return G.free_rank


def direct_sum(A: AbGroup, B: AbGroup) -> AbGroup:
    return AbGroup.from_cyclic(A.free_rank + B.free_rank, A.torsion_factors + B.torsion_factors)


def cyclic(n: int) -> AbGroup:
    """``Z/n``; ``cyclic(0)`` is ``Z``."""
    return AbGroup(1) if n == 0 else AbGroup.from_cyclic(0, [n])


def kernel_size(G: AbGroup, m: int) -> int:
    """Number of elements ``x`` of a finite group with ``m * x == 0``."""
    return prod(gcd(m, d) for d in G.torsion_factors)


def cyclic_factors_divisible(G: AbGroup, m: int) -> int:
    """How many invariant factors of ``G`` are divisible by ``m``."""
    return sum(1 for d in G.torsion_factors if d % m == 0)


def embeds(A: AbGroup, B: AbGroup) -> bool:
    """Whether the finite group ``A`` is isomorphic to a subgroup of ``B``.

    For each prime power p^k, A may have no more cyclic factors of order
    divisible by p^k than B has (componentwise comparison of the conjugate
    p-partitions). Comparing raw counts of p^k-torsion elements is not
    enough: Z/4 and Z/2 + Z/2 both have four elements killed by 4.
    """
    if A.free_rank or B.free_rank:
        raise ValueError("embeds() is only defined for finite groups")
    return embedding_failure(A, B) is None


def embedding_failure(A: AbGroup, B: AbGroup) -> int | None:
    """A prime power p^k where A has more factors divisible by it than B, if any."""
    if not A.torsion_factors:
        return None
    for p, top in prime_factors(A.torsion_factors[-1]):
        for k in range(1, top + 1):
            if cyclic_factors_divisible(A, p**k) > cyclic_factors_divisible(B, p**k):
                return p**k
    return None
