"""3-manifolds with boundary, known only through a presentation of H_1.

A :class:`PresentedManifold` stores relations among generators of H_1(M)
and the images in H_1(M) of named curves on the boundary. Dehn filling
along a curve kills its class, which is one extra relation row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Mapping, Sequence, Union

from .abelian import AbGroup, determinant, group_from_presentation, order, smith_normal_form, torsion

Vector = tuple[int, ...]
Curve = Union[str, Sequence[int]]


@dataclass(frozen=True)
class PresentedManifold:
    n_generators: int
    relations: tuple[Vector, ...] = ()
    boundary_genus: int = 1
    curves: Mapping[str, Vector] = field(default_factory=dict)

    def __post_init__(self):
        rels = tuple(tuple(int(x) for x in r) for r in self.relations)
        curves = {k: tuple(int(x) for x in v) for k, v in self.curves.items()}
        for r in rels:
            if len(r) != self.n_generators:
                raise ValueError(f"relation {r} does not have {self.n_generators} entries")
        for name, v in curves.items():
            if len(v) != self.n_generators:
                raise ValueError(f"curve {name!r} does not have {self.n_generators} entries")
        if self.boundary_genus < 1:
            raise ValueError("boundary genus must be at least 1")
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "curves", curves)

    def curve(self, c: Curve) -> Vector:
        """Resolve a curve given by name or as an explicit class vector."""
        if isinstance(c, str):
            try:
                return self.curves[c]
            except KeyError:
                raise KeyError(f"no curve named {c!r}") from None
        v = tuple(int(x) for x in c)
        if len(v) != self.n_generators:
            raise ValueError(f"curve {v} does not have {self.n_generators} entries")
        return v


def fill(M: PresentedManifold, curve: Curve) -> PresentedManifold:
    return PresentedManifold(
        M.n_generators, M.relations + (M.curve(curve),), M.boundary_genus, M.curves
    )


def fill_many(M: PresentedManifold, curves: Sequence[Curve]) -> PresentedManifold:
    rows = tuple(M.curve(c) for c in curves)
    return PresentedManifold(M.n_generators, M.relations + rows, M.boundary_genus, M.curves)


def homology(M: PresentedManifold) -> AbGroup:
    return group_from_presentation(M.relations, M.n_generators)


def filling_order(M: PresentedManifold, curve: Curve) -> int:
    rows = M.relations + (M.curve(curve),)
    if len(rows) == M.n_generators:
        # a square presentation has order |det|, with 0 meaning infinite
        return abs(determinant(rows))
    return order(group_from_presentation(rows, M.n_generators))


def free_coefficient(M: PresentedManifold, curve: Curve) -> int:
    """|a| where ``curve`` maps to ``(a, a_1, ..., a_s)`` in H_1(M) = Z + torsion.

    The curve is rewritten in generators adapted to the Smith form of the
    relations; ``a`` is its coordinate on the single free generator.
    """
    v = M.curve(curve)
    snf = smith_normal_form(M.relations, M.n_generators)
    free = [j for j in range(M.n_generators) if j >= len(snf.factors) or snf.factors[j] == 0]
    if len(free) != 1:
        raise ValueError(f"H_1 has free rank {len(free)}, need exactly 1")
    j = free[0]
    # relations R satisfy U R V = S, so x -> x V carries Z^n/<R> onto Z^n/<S>
    return abs(sum(v[i] * snf.V[i][j] for i in range(M.n_generators)))


def torsion_order(M: PresentedManifold) -> int:
    return order(torsion(homology(M)))


def f_invariant(M: PresentedManifold, alpha: Curve, beta: Curve) -> int:
    """gcd(|M(alpha)|, |M(beta)|) with gcd(0, 0) == 0.

    The caller is responsible for alpha and beta generating H_1 of the
    boundary torus; only their images in H_1(M) are known here.
    """
    return gcd(filling_order(M, alpha), filling_order(M, beta))


def family_gcd(M: PresentedManifold, fillings: Sequence[Sequence[Curve]]) -> int:
    """gcd of |H_1| over several fillings, each killing a set of curves."""
    if not fillings:
        raise ValueError("need at least one filling")
    g = 0
    for curves in fillings:
        g = gcd(g, order(homology(fill_many(M, curves))))
    return g
