"""Acceptance criteria, each checked exactly (no tolerances).

Every test records a one-line PASS/FAIL outcome that is repeated in the
pytest terminal summary.
"""

import random
from dataclasses import dataclass, field
from itertools import product
from math import gcd

import pytest

import oracles
from acceptance_log import record
from tangle_embed import link
from tangle_embed.abelian import (
    AbGroup,
    embeds,
    matmul,
    order,
    smith_normal_form,
)
from tangle_embed.manifold import (
    PresentedManifold,
    f_invariant,
    fill,
    filling_order,
    free_coefficient,
    homology,
    torsion_order,
)
from tangle_embed.obstruct import OBSTRUCTED, check_embedding
from tangle_embed.tangle import (
    AlgebraicTangle,
    all_rationals,
    double_cover,
    gcd_invariant,
    krebes_fraction,
    parse_tangle,
)

BRACKET_LIMIT = 14


def conclude(number, title, failures, checked):
    detail = f"{checked} cases checked, {len(failures)} failures"
    if failures:
        detail += f"; first: {failures[0]}"
    record(number, title, not failures, detail)
    assert not failures, detail


# -- 1 -------------------------------------------------------------------------


def test_criterion_1_filling_example():
    M = PresentedManifold(2, ((9, 3),), 1, {"alpha": (3, 0), "beta": (0, 1)})
    found = {
        "M(alpha)": homology(fill(M, "alpha")),
        "M(beta)": homology(fill(M, "beta")),
        "f": f_invariant(M, "alpha", "beta"),
        "T_1": AbGroup(0, homology(M).torsion_factors),
        "M(alpha+beta)": homology(fill(M, (3, 1))),
    }
    expected = {
        "M(alpha)": AbGroup(0, (3, 3)),
        "M(beta)": AbGroup(0, (9,)),
        "f": 9,
        "T_1": AbGroup(0, (3,)),
        "M(alpha+beta)": AbGroup(1),
    }
    failures = [f"{k}: {found[k]} != {expected[k]}" for k in expected if found[k] != expected[k]]
    conclude(1, "filling example", failures, len(expected))


# -- 2 -------------------------------------------------------------------------


def test_criterion_2_tangle_example():
    T = parse_tangle("T(3)* + T(3)* + T(-3)*")
    failures = []
    f = krebes_fraction(T)
    if (f.num, f.den) != (-9, 27):
        failures.append(f"fraction {f}")
    if gcd_invariant(T) != 9:
        failures.append(f"gcd {gcd_invariant(T)}")
    if homology(double_cover(T)) != AbGroup(1, (3, 3)):
        failures.append(f"double cover {homology(double_cover(T))}")
    checked = 3
    for p in range(1, 6):
        for q in range(1, 9 * p):
            if gcd(9 * p, q) != 1:
                continue
            checked += 1
            verdicts = {v.test_name: v.status for v in check_embedding(T, (9 * p, q)).verdicts}
            if verdicts["krebes_gcd"] == OBSTRUCTED or verdicts["torsion_injection"] != OBSTRUCTED:
                failures.append(f"{9 * p}/{q}: {verdicts}")
    conclude(2, "tangle example vs two-bridge 9p/q", failures, checked)


# -- 3, 4 ----------------------------------------------------------------------


def random_free_rank_one(rng):
    while True:
        n = rng.randint(1, 5)
        rows = tuple(
            tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(rng.randint(n - 1, n + 1))
        )
        M = PresentedManifold(n, rows)
        if homology(M).free_rank == 1:
            return M


def test_criterion_3_claim_property():
    rng = random.Random(3)
    failures, checked = [], 0
    for _ in range(200):
        M = random_free_rank_one(rng)
        t = torsion_order(M)
        for _ in range(5):
            c = tuple(rng.randint(-9, 9) for _ in range(M.n_generators))
            checked += 1
            if filling_order(M, c) != free_coefficient(M, c) * t:
                failures.append((M, c))
    conclude(3, "filling order = free coefficient x torsion order", failures, checked)


def random_gl2(rng):
    U = ((1, 0), (0, 1))
    for _ in range(rng.randint(1, 8)):
        k = rng.randint(-4, 4)
        E = rng.choice([((1, k), (0, 1)), ((1, 0), (k, 1)), ((0, 1), (1, 0)), ((-1, 0), (0, 1))])
        U = matmul(U, E)
    return U


def torus_boundary_manifolds(rng, count):
    """Double covers of random tangle sums, then random presentations with two curves."""
    rats = list(all_rationals(6))
    out = []
    for i in range(count):
        if i % 2 == 0:
            T = AlgebraicTangle(tuple(rng.choice(rats) for _ in range(rng.randint(1, 4))))
            M = double_cover(T)
            out.append((M, M.curves["alpha"], M.curves["beta"]))
        else:
            M = random_free_rank_one(rng)
            a, b = ([rng.randint(-9, 9) for _ in range(M.n_generators)] for _ in range(2))
            out.append((M, tuple(a), tuple(b)))
    return out


def test_criterion_4_basis_invariance():
    rng = random.Random(4)
    failures, checked = [], 0
    for M, alpha, beta in torus_boundary_manifolds(rng, 20):
        f = f_invariant(M, alpha, beta)
        for _ in range(50):
            (p, q), (r, s) = U = random_gl2(rng)
            alpha2 = tuple(p * x + r * y for x, y in zip(alpha, beta))
            beta2 = tuple(q * x + s * y for x, y in zip(alpha, beta))
            checked += 1
            if f_invariant(M, alpha2, beta2) != f:
                failures.append((M, alpha, beta, U))
    conclude(4, "f invariant under GL(2,Z) change of pair", failures, checked)


# -- 5, 6, 7: one pass over every sum of up to three rational tangles ----------


@dataclass
class Sweep:
    tangles: int = 0
    det_checked: int = 0
    det_failures: list = field(default_factory=list)
    closure_failures: list = field(default_factory=list)
    soundness_failures: list = field(default_factory=list)


def det_triple_failure(name, d):
    g = link.determinant(d)
    b = link.bracket_determinant(d)
    h = order(link.double_cover_group(d))
    return None if g == b == h else f"{name}: goeritz {g}, bracket {b}, |H_1| {h}"


@pytest.fixture(scope="session")
def sweep():
    rats = list(all_rationals(5))
    out = Sweep()
    for k in (1, 2, 3):
        for summands in product(rats, repeat=k):
            T = AlgebraicTangle(summands)
            out.tangles += 1
            f = krebes_fraction(T)
            M = double_cover(T)
            num, den = link.numerator_closure(T), link.denominator_closure(T)
            got = (
                link.determinant(num),
                link.determinant(den),
                filling_order(M, "alpha"),
                filling_order(M, "beta"),
            )
            if got != (abs(f.num), abs(f.den), abs(f.num), abs(f.den)):
                out.closure_failures.append(f"{T}: {got} vs {f}")
            for d in (num, den):
                if len(d) <= BRACKET_LIMIT:
                    out.det_checked += 1
                    bad = det_triple_failure(str(T), d)
                    if bad:
                        out.det_failures.append(bad)
            report = check_embedding(T, num)
            if report.overall == OBSTRUCTED:
                out.soundness_failures.append(f"{T}: {report.to_json()}")
    return out


def test_criterion_5_determinant_oracles(sweep):
    named = {
        "trefoil": link.parse_pd("X 1 4 2 5 / X 3 6 4 1 / X 5 2 6 3"),
        "figure-eight": link.parse_pd("X 4 2 5 1 / X 8 6 1 5 / X 6 3 7 4 / X 2 7 3 8"),
        "hopf": link.parse_pd("X 4 1 3 2 / X 2 3 1 4"),
        "two_bridge(1,0)": link.two_bridge(1, 0),
    }
    for p in range(2, 14):
        for q in range(1, p):
            if gcd(p, q) == 1:
                named[f"two_bridge({p},{q})"] = link.two_bridge(p, q)
    failures = list(sweep.det_failures)
    checked = sweep.det_checked
    for name, d in named.items():
        if len(d) <= BRACKET_LIMIT:
            checked += 1
            bad = det_triple_failure(name, d)
            if bad:
                failures.append(bad)
    conclude(5, "Goeritz = bracket = |H_1| on diagrams up to 14 crossings", failures, checked)


def test_criterion_6_closure_consistency(sweep):
    conclude(6, "closure determinants = Krebes fraction = filling orders",
             sweep.closure_failures, sweep.tangles)


def test_criterion_7_soundness(sweep):
    conclude(7, "no obstruction fires on a tangle inside its own closure",
             sweep.soundness_failures, sweep.tangles)


# -- 8, 9 ----------------------------------------------------------------------


def test_criterion_8_embeds_oracle():
    groups = oracles.groups_up_to(36)
    failures = []
    for a in groups:
        for b in groups:
            if embeds(AbGroup(0, a), AbGroup(0, b)) != oracles.embeds_bruteforce(a, b):
                failures.append((a, b))
    conclude(8, "embeds agrees with subgroup enumeration up to order 36",
             failures, len(groups) ** 2)


def test_criterion_9_snf_properties():
    rng = random.Random(9)
    failures = []
    for _ in range(500):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        A = [[rng.randint(-99, 99) for _ in range(n)] for _ in range(m)]
        snf = smith_normal_form(A)
        diagonal = all(snf.S[i][j] == 0 for i in range(m) for j in range(n) if i != j)
        nz = [d for d in snf.factors if d]
        chain = (
            all(d >= 0 for d in snf.factors)
            and snf.factors[: len(nz)] == tuple(nz)
            and all(b % a == 0 for a, b in zip(nz, nz[1:]))
        )
        ok = (
            matmul(matmul(snf.U, A), snf.V) == snf.S
            and abs(oracles.sympy_det(snf.U)) == 1
            and abs(oracles.sympy_det(snf.V)) == 1
            and diagonal
            and chain
        )
        if not ok:
            failures.append(A)
    conclude(9, "Smith form transforms and divisibility chain", failures, 500)
