import pytest
from hypothesis import given
from hypothesis import strategies as st

from conjtrace.classify import (
    brute_force_roots,
    eisenstein_squares_with_coeff,
    gaussian_square_cases,
    is_square,
    is_square_closed_form,
    small_coeff_square_cases,
    square_coefficients,
)
from conjtrace.ring import RingElem, RingId, parse_elem, sqrt_exact, units

from conftest import ALL_RINGS

E, G, K, Z = RingId.EISENSTEIN, RingId.GAUSSIAN, RingId.KLEINIAN7, RingId.INTEGERS
PE = lambda t: parse_elem(E, t)  # noqa: E731
PG = lambda t: parse_elem(G, t)  # noqa: E731


class TestClosedForm:
    def test_printed_lists(self):
        cases = small_coeff_square_cases()
        assert cases[1].squares == {PE("-1+w"), PE("-w")}
        assert cases[2].squares == frozenset()
        assert cases[3].squares == {PE("3w"), PE("-8+3w"), PE("3-3w"), PE("-5-3w")}
        assert cases[4].squares == {PE("-4+4w"), PE("-4w")}

    @pytest.mark.parametrize("m", [2, -2])
    def test_two_impossible(self, m):
        assert eisenstein_squares_with_coeff(m).squares == frozenset()

    def test_printed_pairs_produce_the_lists(self):
        pairs = {
            1: [(0, 1), (0, -1), (1, -1), (-1, 1)],
            3: [(1, 1), (-1, -1), (1, -3), (-1, 3), (2, -1), (-2, 1), (2, -3), (-2, 3)],
        }
        for k, ps in pairs.items():
            got = {RingElem(E, *square_coefficients(E, a, b)) for a, b in ps}
            assert got == small_coeff_square_cases()[k].squares

    def test_four_filters_half_integers(self):
        # (a, b) = (0, +-2), +-(2, -2) are the integral solutions
        got = {RingElem(E, *square_coefficients(E, a, b)) for a, b in [(0, 2), (0, -2), (2, -2), (-2, 2)]}
        assert got == small_coeff_square_cases()[4].squares

    def test_rational_case(self):
        c = eisenstein_squares_with_coeff(0)
        assert c.rational
        for n in (0, 1, 4, 9, -3, -12, -27):
            assert c.admits(E(n))
        for n in (2, 3, 5, -1, -2, -4, -9):
            assert not c.admits(E(n))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            eisenstein_squares_with_coeff(5)

    def test_wrong_coefficient_not_admitted(self):
        assert not eisenstein_squares_with_coeff(3).admits(PE("-w"))

    def test_closed_form_needs_eisenstein(self):
        with pytest.raises(ValueError):
            is_square_closed_form(G(4))


class TestIsSquare:
    def test_examples(self):
        assert not is_square(PE("5+w"))
        assert is_square(PE("3-3w"))
        assert set(sqrt_exact(PE("3-3w"))) == {PE("2-w"), PE("-2+w")}
        assert not is_square(PG("4+3i"))
        assert is_square(Z(4)) and not is_square(Z(-4))

    @pytest.mark.parametrize("ring", ALL_RINGS)
    def test_unit_square_closure(self, ring, rng):
        for _ in range(100):
            x = RingElem(ring, rng.randint(-30, 30), 0 if ring is Z else rng.randint(-30, 30))
            t = x * x
            for u in units(ring):
                assert is_square(u * u * t)

    @given(st.sampled_from(ALL_RINGS), st.integers(-40, 40), st.integers(-40, 40))
    def test_expansion_matches_multiplication(self, ring, a, b):
        if ring is Z:
            b = 0
        x = RingElem(ring, a, b)
        assert square_coefficients(ring, a, b) == ((x * x).a, (x * x).b)

    def test_kleinian_expansion(self):
        # x^2 = a^2 - 2b^2 + (2ab + b^2) th
        for a in range(-5, 6):
            for b in range(-5, 6):
                x = K(a, b)
                assert x * x == K(a * a - 2 * b * b, 2 * a * b + b * b)

    @pytest.mark.parametrize("ring", ALL_RINGS)
    def test_brute_force_agrees_with_sqrt(self, ring):
        bmax = 0 if ring is Z else 8
        for a in range(-12, 13):
            for b in range(-bmax, bmax + 1):
                t = RingElem(ring, a, b)
                assert set(brute_force_roots(t, 12)) == set(sqrt_exact(t))


class TestGaussianCases:
    def test_rational_column(self):
        parts = gaussian_square_cases([G(3), G(5), G(4)])
        assert list(parts) == [0]
        verdicts = {v.value: v.square for v in parts[0]}
        assert verdicts == {G(3): False, G(4): True, G(5): False}

    def test_imag_two(self):
        (v,) = gaussian_square_cases([PG("4+2i")])[2]
        assert v.case == "imag-2" and not v.square
        (v,) = gaussian_square_cases([PG("2i")])[2]
        assert v.square

    def test_odd(self):
        parts = gaussian_square_cases([PG("6+i"), PG("4-3i")])
        assert set(parts) == {1, -3}
        assert not any(v.square for vs in parts.values() for v in vs)

    def test_empty(self):
        assert gaussian_square_cases([]) == {}

    def test_agrees_with_oracle(self):
        vals = [G(a, b) for a in range(-30, 31) for b in range(-6, 7)]
        for vs in gaussian_square_cases(vals).values():
            for v in vs:
                assert v.square == is_square(v.value), v

    def test_negative_rational_square(self):
        (v,) = gaussian_square_cases([G(-9)])[0]
        assert v.square and set(sqrt_exact(G(-9))) == {G(0, 3), G(0, -3)}
