"""Homological obstructions to embedding a tangle in a link.

Every check returns a :class:`Verdict`. ``not_obstructed`` only means the
test found nothing; it is never evidence that an embedding exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Any, Union

from . import link as _link
from .abelian import (
    AbGroup,
    cyclic_factors_divisible,
    embedding_failure,
    embeds,
    group_from_presentation,
    order,
    smith_normal_form,
    torsion,
)
from .link import PDCode
from .manifold import (
    Curve,
    PresentedManifold,
    f_invariant,
    homology,
)
from .tangle import AlgebraicTangle, double_cover, gcd_invariant

NOT_OBSTRUCTED = "not_obstructed"
OBSTRUCTED = "obstructed"
INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class Verdict:
    test_name: str
    status: str
    witness: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (NOT_OBSTRUCTED, OBSTRUCTED, INAPPLICABLE):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == OBSTRUCTED and not self.witness:
            raise ValueError("an obstruction needs a witness")

    @property
    def obstructed(self) -> bool:
        return self.status == OBSTRUCTED

    def to_json(self) -> dict:
        return {"name": self.test_name, "status": self.status, "witness": self.witness}


@dataclass(frozen=True)
class Report:
    verdicts: tuple[Verdict, ...]

    @property
    def overall(self) -> str:
        return OBSTRUCTED if any(v.obstructed for v in self.verdicts) else NOT_OBSTRUCTED

    def to_json(self) -> dict:
        return {"tests": [v.to_json() for v in self.verdicts], "overall": self.overall}


def divides(a: int, b: int) -> bool:
    # 0 divides only 0
    return b == 0 if a == 0 else b % a == 0


def krebes_check(T: AlgebraicTangle, detL: int) -> Verdict:
    g = gcd_invariant(T)
    status = NOT_OBSTRUCTED if divides(g, detL) else OBSTRUCTED
    return Verdict("krebes_gcd", status, {"gcd": g, "det": detL})


def filling_gcd_check(M: PresentedManifold, alpha: Curve, beta: Curve, N: AbGroup) -> Verdict:
    f = f_invariant(M, alpha, beta)
    n = order(N)
    status = NOT_OBSTRUCTED if divides(f, n) else OBSTRUCTED
    return Verdict("filling_gcd", status, {"f": f, "order_N": n})


def torsion_check(M_group: AbGroup, N: AbGroup) -> Verdict:
    T1 = torsion(M_group)
    witness = {"torsion_M": str(T1), "N": str(N)}
    if N.free_rank:
        return Verdict("torsion_injection", INAPPLICABLE, {**witness, "reason": "H_1(N) is infinite"})
    if embeds(T1, N):
        return Verdict("torsion_injection", NOT_OBSTRUCTED, witness)
    return Verdict("torsion_injection", OBSTRUCTED, {**witness, **_count_failure(T1, N)})


def _count_failure(A: AbGroup, B: AbGroup) -> dict:
    q = embedding_failure(A, B)
    return {
        "prime_power": q,
        "factors_M": cyclic_factors_divisible(A, q),
        "factors_N": cyclic_factors_divisible(B, q),
    }


def _extended_gcd(a: int, b: int) -> tuple[int, int]:
    """x, y with a x + b y = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return (x0, y0) if a >= 0 else (-x0, -y0)


def adapted_coordinates(M: PresentedManifold, curve: Curve) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Write a curve class in a splitting H_1(M) = Z + Z/s_1 + ... + Z/s_r.

    Returns ``(free coordinate, torsion coordinates, (s_1, ..., s_r))``;
    requires free rank 1.
    """
    v = M.curve(curve)
    snf = smith_normal_form(M.relations, M.n_generators)
    n = M.n_generators
    fac = list(snf.factors) + [0] * (n - len(snf.factors))
    coords = [sum(v[i] * snf.V[i][j] for i in range(n)) for j in range(n)]
    free = [j for j in range(n) if fac[j] == 0]
    if len(free) != 1:
        raise ValueError(f"H_1 has free rank {len(free)}, need exactly 1")
    tors = [j for j in range(n) if fac[j] > 1]
    return coords[free[0]], tuple(coords[j] % fac[j] for j in tors), tuple(fac[j] for j in tors)


def summand_check(M: PresentedManifold, alpha: Curve, beta: Curve, N: AbGroup) -> Verdict:
    """Look for a boundary class gamma whose quotient H_1(M)/<gamma> fits in H_1(N).

    gamma = m alpha + n beta runs over classes whose free coordinate c is
    a positive multiple of g = gcd(a, b) with c |T_1(M)| dividing |N|.
    H_1(M)/<gamma> has order c |T_1(M)| and contains T_1(M) with cyclic
    quotient Z/c; an embedding M in N forces one such quotient to be a
    subgroup of H_1(N).
    """
    H = homology(M)
    if H.free_rank != 1:
        return Verdict("summand", INAPPLICABLE, {"reason": f"H_1(M) has free rank {H.free_rank}"})
    if N.free_rank:
        return Verdict("summand", INAPPLICABLE, {"reason": "H_1(N) is infinite"})
    a, at, mods = adapted_coordinates(M, alpha)
    b, bt, _ = adapted_coordinates(M, beta)
    T1 = torsion(H)
    t, n = order(T1), order(N)
    g = gcd(a, b)
    witness = {"g": g, "torsion_M": str(T1), "N": str(N)}
    if g == 0:
        # both curves are rationally null-homologous, so they cannot span the boundary
        return Verdict("summand", INAPPLICABLE, {**witness, "reason": "gcd(a, b) = 0"})
    x0, y0 = _extended_gcd(a, b)
    step = (b // g, -a // g)
    period = T1.torsion_factors[-1] if T1.torsion_factors else 1
    tried = set()
    for c in range(g, n // t + 1, g):
        if n % (c * t):
            continue
        for k in range(period):
            m = x0 * (c // g) + k * step[0]
            nn = y0 * (c // g) + k * step[1]
            gamma_t = [(m * u + nn * w) % s for u, w, s in zip(at, bt, mods)]
            rels = [[0] * (1 + len(mods)) for _ in mods]
            for i, s in enumerate(mods):
                rels[i][1 + i] = s
            rels.append([c] + gamma_t)
            Q = group_from_presentation(rels, 1 + len(mods))
            if Q in tried:
                continue
            tried.add(Q)
            if embeds(Q, N):
                return Verdict(
                    "summand", NOT_OBSTRUCTED, {**witness, "c": c, "m": m, "n": nn, "quotient": str(Q)}
                )
    return Verdict(
        "summand", OBSTRUCTED, {**witness, "quotients": sorted(str(Q) for Q in tried)}
    )


def rank_check(M: PresentedManifold, N: AbGroup) -> Verdict:
    r = homology(M).free_rank
    bound = r - M.boundary_genus
    witness = {"rank_M": r, "genus": M.boundary_genus, "rank_N": N.free_rank}
    status = OBSTRUCTED if N.free_rank < bound else NOT_OBSTRUCTED
    return Verdict("rank", status, witness)


LinkLike = Union[PDCode, tuple[int, int]]


def check_embedding(T: AlgebraicTangle, L: LinkLike) -> Report:
    """Run every obstruction for ``T`` inside ``L`` (a diagram or a two-bridge fraction)."""
    if isinstance(L, tuple):
        L = _link.two_bridge(*L)
    detL = _link.determinant(L)
    N = _link.double_cover_group(L)
    M = double_cover(T)
    return Report(
        (
            krebes_check(T, detL),
            filling_gcd_check(M, "alpha", "beta", N),
            summand_check(M, "alpha", "beta", N),
            torsion_check(homology(M), N),
            rank_check(M, N),
        )
    )
