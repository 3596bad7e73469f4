from functools import reduce
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tangle_embed import link
from tangle_embed.abelian import AbGroup
from tangle_embed.manifold import f_invariant, filling_order, homology
from tangle_embed.tangle import (
    AlgebraicTangle,
    KrebesFraction,
    RationalTangle,
    TangleParseError,
    all_rationals,
    double_cover,
    format_tangle,
    gcd_invariant,
    krebes_fraction,
    parse_tangle,
    star,
)

EXAMPLE = "T(3)* + T(3)* + T(-3)*"


def fractions(T):
    return [(t.p, t.q) for t in T.summands]


def test_parse_examples():
    assert fractions(parse_tangle(EXAMPLE)) == [(-1, 3), (-1, 3), (1, 3)]
    assert fractions(parse_tangle("T(0)")) == [(0, 1)]
    assert fractions(parse_tangle("R(2/3)**")) == [(2, 3)]
    assert fractions(parse_tangle("  ( T(1) + R(-2/5) ) + (R(1/0))* ")) == [(1, 1), (-2, 5), (0, 1)]
    assert fractions(parse_tangle("R(2/-3)")) == [(-2, 3)]


@pytest.mark.parametrize(
    "text, code",
    [
        ("(T(1) + T(2))*", "E_STAR_NONRATIONAL"),
        ("R(2/4)", "E_BAD_FRACTION"),
        ("R(0/0)", "E_BAD_FRACTION"),
        ("T(1) +", "E_SYNTAX"),
        ("T(1", "E_SYNTAX"),
        ("", "E_SYNTAX"),
        ("T(1) T(2)", "E_SYNTAX"),
        ("X(3)", "E_SYNTAX"),
    ],
)
def test_parse_errors(text, code):
    with pytest.raises(TangleParseError) as info:
        parse_tangle(text)
    assert info.value.code == code


def test_parse_error_reports_position():
    with pytest.raises(TangleParseError) as info:
        parse_tangle("T(1) + ?")
    assert info.value.position == 7


def test_format_round_trip():
    T = parse_tangle(EXAMPLE + " + R(1/0)")
    assert parse_tangle(format_tangle(T)) == T


def test_star_examples():
    assert star(RationalTangle(3, 1)) == RationalTangle(-1, 3)
    assert star(RationalTangle(-3, 1)) == RationalTangle(1, 3)
    assert star(RationalTangle(0, 1)) == RationalTangle(1, 0)
    assert star(RationalTangle(1, 0)) == RationalTangle(0, 1)


@pytest.mark.parametrize("t", list(all_rationals(6)))
def test_star_is_involution(t):
    assert star(star(t)) == t


def test_rational_normalization():
    assert RationalTangle.of(2, -5) == RationalTangle(-2, 5)
    assert RationalTangle.of(-1, 0) == RationalTangle(1, 0)
    with pytest.raises(ValueError):
        RationalTangle(2, -5)
    with pytest.raises(ValueError):
        RationalTangle.of(4, 6)


def test_all_rationals_count():
    rats = list(all_rationals(5))
    assert len(rats) == len(set(rats)) == 40


def test_krebes_examples():
    assert krebes_fraction(parse_tangle(EXAMPLE)) == KrebesFraction(-9, 27)
    assert krebes_fraction(parse_tangle("T(3)")) == KrebesFraction(3, 1)
    assert krebes_fraction(AlgebraicTangle.of((1, 2), (1, 3))) == KrebesFraction(5, 6)
    assert krebes_fraction(AlgebraicTangle.of((1, 2), (1, 2))) == KrebesFraction(4, 4)


def test_krebes_examples_against_closures():
    for fr, (n, d) in [(((1, 2), (1, 3)), (5, 6)), (((1, 2), (1, 2)), (4, 4))]:
        T = AlgebraicTangle.of(*fr)
        assert link.determinant(link.numerator_closure(T)) == n
        assert link.determinant(link.denominator_closure(T)) == d


def test_gcd_invariant_examples():
    assert gcd_invariant(parse_tangle(EXAMPLE)) == 9
    assert gcd_invariant(parse_tangle("T(3)")) == 1
    assert gcd_invariant(AlgebraicTangle.of((1, 2), (1, 2))) == 4


def test_double_cover_three_summand_example():
    M = double_cover(parse_tangle(EXAMPLE))
    assert set(M.relations) == {(3, 0, 0, -1), (0, 3, 0, -1), (0, 0, 3, 1)}
    assert homology(M) == AbGroup(1, (3, 3))
    assert filling_order(M, "alpha") == 9
    assert filling_order(M, "beta") == 27


def test_double_cover_single_and_trivial():
    M = double_cover(AlgebraicTangle.of((5, 3)))
    assert M.relations == ((3, 5),)
    assert filling_order(M, "alpha") == 5 and filling_order(M, "beta") == 3
    assert homology(double_cover(parse_tangle("T(0)"))) == AbGroup(1)


SMALL = list(all_rationals(5))


@pytest.mark.parametrize("k", [1, 2])
def test_double_cover_consistency_short_sums(k):
    for fr in product(SMALL, repeat=k):
        T = AlgebraicTangle(fr)
        f = krebes_fraction(T)
        M = double_cover(T)
        assert filling_order(M, "alpha") == abs(f.num)
        assert filling_order(M, "beta") == abs(f.den)
        assert gcd_invariant(T) == f_invariant(M, "alpha", "beta")


rationals = st.sampled_from(list(all_rationals(7)))


@settings(max_examples=200, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=5))
def test_fold_direction_does_not_matter(ts):
    def add(a, b):
        return (a[0] * b[1] + b[0] * a[1], a[1] * b[1])

    pairs = [(t.p, t.q) for t in ts]
    right = reduce(lambda acc, x: add(x, acc), reversed(pairs[:-1]), pairs[-1])
    f = krebes_fraction(AlgebraicTangle(tuple(ts)))
    assert (f.num, f.den) == right


@settings(max_examples=100, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_gcd_invariant_ignores_summand_order(ts, rnd):
    shuffled = ts[:]
    rnd.shuffle(shuffled)
    assert gcd_invariant(AlgebraicTangle(tuple(ts))) == gcd_invariant(AlgebraicTangle(tuple(shuffled)))
