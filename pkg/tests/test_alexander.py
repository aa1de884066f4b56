import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fiberlift.alexander import (
    CharacterSpec,
    FiberedClass,
    GroupPresentation,
    ManifoldRecord,
    ZeroAlexanderPolynomial,
    ZeroSpecialization,
    abelian_cover_alexander,
    alexander_from_presentation,
    alexander_polynomial,
    change_basis,
    char_poly_fibered,
    correction_roots,
    fox_derivative,
    fox_identity_holds,
    fox_presentation_matrix,
    pullback_class_specialization,
    specialize_with_correction,
)
from fiberlift.lpoly import IntLinearMap, LaurentPoly, cyclotomic, equal_up_to_unit, normalized
from fiberlift.mahler import mahler_univariate
from fiberlift.words import format_word, invert_word, parse_word, reduce_word

T = LaurentPoly.variable(0, 1)


def poly2(pairs):
    return LaurentPoly.from_pairs(pairs, 2)


def test_words_roundtrip():
    w = parse_word("x1x2X2X1x3")
    assert format_word(w) == "x3"
    assert format_word(parse_word("x1x2X2x3")) == "x1x3"
    assert parse_word("1") == ()
    assert reduce_word(w + invert_word(w)) == ()
    with pytest.raises(ValueError):
        parse_word("x1y2")
    with pytest.raises(ValueError):
        parse_word("x3", rank=2)


def test_trefoil():
    gp = GroupPresentation(2, ["x1x2x1X2X1X2"], [[1, 1]])
    assert fox_identity_holds(gp)
    assert alexander_polynomial(gp) == T * T - T + 1


def test_figure_eight():
    gp = GroupPresentation(2, ["X1x2x1X2x1x2X1X2x1X2"], [[1, 1]])
    assert alexander_polynomial(gp) == T * T - 3 * T + 1


def test_torus_knot_2_5():
    # <a, b | a^2 = b^5>, a -> t^5, b -> t^2; Delta = Phi_10
    gp = GroupPresentation(2, ["x1x1X2X2X2X2X2"], [[5, 2]])
    assert alexander_polynomial(gp) == cyclotomic(10)


def test_hopf_link():
    gp = GroupPresentation(2, ["x1x2X1X2"], [[1, 0], [0, 1]])
    assert alexander_polynomial(gp) == LaurentPoly.constant(1, 2)


def test_torus_link_2_4():
    # <x, y | (xy)^2 = (yx)^2>: Delta = 1 + t1 t2, and Torres gives Delta(t, 1) = 1 + t
    gp = GroupPresentation(2, ["x1x2x1x2X1X2X1X2"], [[1, 0], [0, 1]])
    d = alexander_polynomial(gp)
    assert d == poly2([[[1, 1], 1], [[0, 0], 1]])
    from fiberlift.lpoly import substitute_linear

    assert substitute_linear(d, IntLinearMap([[1, 0]])) == T + 1


def test_fox_derivative_values():
    gp = GroupPresentation(2, ["x1x2X1X2"], [[1, 0], [0, 1]])
    w = gp.relators[0]
    # d/dx [x,y] = 1 - x y x^-1 -> 1 - t2 in the abelianization
    assert fox_derivative(w, 0, gp) == 1 - LaurentPoly.variable(1, 2)
    assert fox_derivative(w, 1, gp) == LaurentPoly.variable(0, 2) - 1


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=14),
       st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_fox_fundamental_identity(letters, img):
    # sum_j (dw/dx_j)(psi(x_j) - 1) = psi(w) - 1, for any word and any psi
    word = reduce_word(letters)
    exps = [sum(s for g, s in word if g == j) for j in range(3)]
    gp = GroupPresentation(3, [], [img])
    tt = LaurentPoly.variable(0, 1)
    lhs = LaurentPoly.zero(1)
    for j in range(3):
        lhs = lhs + fox_derivative(word, j, gp) * (tt ** img[j] - 1)
    assert lhs == tt ** sum(e * i for e, i in zip(exps, img)) - 1


def test_presentation_requires_psi_to_kill_relators():
    with pytest.raises(ValueError):
        GroupPresentation(2, ["x1x1X2"], [[1, 1]])


def test_alexander_from_matrix():
    m = [[T - 2, LaurentPoly.constant(-1)], [LaurentPoly.constant(-1), T - 1]]
    assert alexander_from_presentation(m) == T * T - 3 * T + 1
    with pytest.raises(ValueError):
        alexander_from_presentation([[T, T]])
    assert alexander_from_presentation([[T + 1, T]], delete_column=1) == T + 1
    with pytest.raises(ZeroAlexanderPolynomial):
        alexander_from_presentation([[LaurentPoly.zero(1)]])


def test_fibered_class_and_record():
    fc = FiberedClass([1], [[2, 1], [1, 1]])
    assert char_poly_fibered(fc) == T * T - 3 * T + 1
    with pytest.raises(ValueError):
        FiberedClass([1], [[2, 0], [0, 1]])
    rec = ManifoldRecord("m", 1, fibered_classes=[fc])
    assert rec.alexander() == T * T - 3 * T + 1
    with pytest.raises(ValueError):
        ManifoldRecord("bad", 2, delta_pi=T)
    with pytest.raises(ValueError):
        ManifoldRecord("empty", 1)


def test_character_spec():
    xi = CharacterSpec(4, [1, 2])
    assert xi.value(0) == pytest.approx(1j)
    assert xi.value(1) == pytest.approx(-1)


# -- specialization with the correction factor ---------------------------------


def test_correction_roots():
    assert correction_roots(False, True, 1j) == ()
    assert correction_roots(True, False, 1j) == (-1j,)
    assert correction_roots(True, True, 1) == (1, 1)
    with pytest.raises(ValueError):
        correction_roots(True, False, 2.0)


def test_specialize_with_correction():
    d = poly2([[[1, 0], 1], [[0, 1], 1], [[0, 0], 1]])
    spec, m = specialize_with_correction(d, IntLinearMap([[1, 0]]), True, True)
    assert spec.base == T + 2
    # p(t) = (t - 1)^2 for a closed manifold at the trivial character
    assert spec.to_laurent() == (T + 2) * (T - 1) ** 2
    assert m.value == pytest.approx(2.0)
    spec, _ = specialize_with_correction(d, IntLinearMap([[1, 0]]), True, False, xi_at_dual=1j)
    assert "t - (" in str(spec) or "t" in str(spec)
    with pytest.raises(ZeroSpecialization):
        specialize_with_correction(poly2([[[1, 0], 1], [[0, 1], -1]]), IntLinearMap([[1, 1]]), True, False)
    with pytest.raises(ValueError):
        specialize_with_correction(d, IntLinearMap([[2, 0]]), True, False)


# -- abelian covers ------------------------------------------------------------


def _character_product(delta, k, twisted, point):
    """Numeric product over the characters of Z_k^m twisting ``twisted``."""
    w = cmath.exp(2j * math.pi / k)
    total = 1.0 + 0j
    for shifts in np.ndindex(*([k] * len(twisted))):
        pt = list(point)
        for j, s in zip(twisted, shifts):
            pt[j] = pt[j] * w ** s
        total *= delta.evaluate(pt)
    return total


COVER_FIXTURES = [
    poly2([[[1, 0], 1], [[0, 1], 1], [[0, 0], 1]]),
    poly2([[[2, 0], 1], [[1, 1], -3], [[0, 0], 1]]),
    poly2([[[1, 1], 1], [[1, 0], -1], [[0, 1], 2], [[0, 0], 1]]),
    LaurentPoly.from_pairs([[[1, 0, 0], 1], [[0, 1, 0], 1], [[0, 0, 1], 1], [[0, 0, 0], -1]], 3),
    poly2([[[2, 1], 1], [[0, 2], -1], [[1, 0], 3], [[0, 0], 2]]),
]


@pytest.mark.parametrize("idx", range(len(COVER_FIXTURES)))
@pytest.mark.parametrize("k", [2, 3])
def test_cover_matches_character_product(idx, k):
    delta = COVER_FIXTURES[idx]
    rng = np.random.default_rng(idx * 10 + k)
    twisted = list(range(1, delta.num_vars))
    cover = abelian_cover_alexander(delta, k, twisted)
    ratios = []
    for _ in range(8):
        pt = np.exp(2j * np.pi * rng.random(delta.num_vars))
        want = _character_product(delta, k, twisted, pt)
        ratios.append(cover.evaluate(pt) / want)
    assert all(abs(r - ratios[0]) < 1e-9 for r in ratios)
    assert abs(abs(ratios[0]) - 1) < 1e-9


def test_cover_known_example():
    d = COVER_FIXTURES[0]
    cover = abelian_cover_alexander(d, 4, [1])
    x = LaurentPoly.variable(0, 2)
    y = LaurentPoly.variable(1, 2)
    assert cover == normalized((1 + x) ** 4 - y ** 4)
    spec = pullback_class_specialization(cover, IntLinearMap([[1, 0]]), require_monic=False)
    assert spec == T ** 3 + 4 * T ** 2 + 6 * T + 4
    assert mahler_univariate(spec).value == pytest.approx(4.0)
    assert abelian_cover_alexander(d, 1, [1]) == d


def test_pullback_monic_check():
    cover = poly2([[[1, 0], 2], [[0, 0], 1]])
    with pytest.raises(ArithmeticError):
        pullback_class_specialization(cover, IntLinearMap([[1, 0]]))
    with pytest.raises(ZeroSpecialization):
        pullback_class_specialization(poly2([[[1, 0], 1], [[0, 1], -1]]), IntLinearMap([[1, 1]]))


def test_change_basis_keeps_mahler_measure():
    d = COVER_FIXTURES[2]
    basis = [[2, 1], [1, 1]]
    moved = change_basis(d, basis)
    from fiberlift.mahler import mahler_multivariate

    assert mahler_multivariate(moved, tol=1e-6).value == pytest.approx(mahler_multivariate(d, tol=1e-6).value, abs=1e-5)
    assert equal_up_to_unit(change_basis(moved, [[1, -1], [-1, 2]]), d)
