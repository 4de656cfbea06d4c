"""Deciding which candidate values of x**2 are actually squares.

Three routes are kept deliberately separate so they can check each other:

* a closed-form case analysis for Z[w] with small w-coefficient, solving
  2ab + b**2 = m over the integer divisors b of m;
* the imaginary-part case split for Z[i];
* a plain brute-force search over a coefficient box (the oracle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .ring import RingElem, RingId, sqrt_exact

CLOSED_FORM_RANGE = 4


def square_coefficients(ring: RingId, a: int, b: int) -> tuple[int, int]:
    """Coefficients (n, m) of (a + b*tau)**2 = n + m*tau, expanded by hand."""
    if ring is RingId.INTEGERS:
        return a * a, 0
    if ring is RingId.GAUSSIAN:
        return a * a - b * b, 2 * a * b
    if ring is RingId.EISENSTEIN:
        return a * a - b * b, 2 * a * b + b * b
    return a * a - 2 * b * b, 2 * a * b + b * b


def brute_force_roots(t: RingElem, bound: int) -> list[RingElem]:
    """Every r = a + b*tau with |a|, |b| <= bound and r*r == t."""
    bmax = 0 if t.ring is RingId.INTEGERS else bound
    return [
        RingElem(t.ring, a, b)
        for a in range(-bound, bound + 1)
        for b in range(-bmax, bmax + 1)
        if square_coefficients(t.ring, a, b) == (t.a, t.b)
    ]


def is_square(t: RingElem) -> bool:
    return bool(sqrt_exact(t))


def _is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass(frozen=True)
class SquareClassification:
    """Squares n + m*w in Z[w] with a fixed w-coefficient m.

    For m != 0 the answer is the finite set ``squares``. For m = 0 it is
    infinite: either b = 0 and n = a**2, or a = -b/2 and n = -3*(b/2)**2.
    """

    m: int
    squares: Optional[frozenset] = None

    @property
    def rational(self) -> bool:
        return self.m == 0

    def admits(self, t: RingElem) -> bool:
        if t.ring is not RingId.EISENSTEIN or t.b != self.m:
            return False
        if self.rational:
            n = t.a
            return _is_perfect_square(n) or (n % 3 == 0 and _is_perfect_square(-n // 3))
        return t in self.squares

    def describe(self) -> str:
        if self.rational:
            return "perfect square, or -3k^2 (in particular <= 0)"
        return "{" + ", ".join(str(s) for s in sorted(self.squares, key=RingElem.sort_key)) + "}"


def _int_divisors(m: int) -> list[int]:
    m = abs(m)
    pos = [d for d in range(1, m + 1) if m % d == 0]
    return pos + [-d for d in pos]


def eisenstein_squares_with_coeff(m: int) -> SquareClassification:
    """Closed-form list of Z[w] squares whose w-coefficient is m, |m| <= 4.

    From 2ab + b**2 = m we get a = (m - b**2) / (2b), so b | m and the
    quotient must be an integer.
    """
    if abs(m) > CLOSED_FORM_RANGE:
        raise ValueError(f"closed form covers |m| <= {CLOSED_FORM_RANGE}; use the oracle for m = {m}")
    if m == 0:
        return SquareClassification(0)
    found = set()
    for b in _int_divisors(m):
        num = m - b * b
        if num % (2 * b) == 0:
            a = num // (2 * b)
            n, mm = square_coefficients(RingId.EISENSTEIN, a, b)
            found.add(RingElem(RingId.EISENSTEIN, n, mm))
    return SquareClassification(m, frozenset(found))


def small_coeff_square_cases() -> dict[int, SquareClassification]:
    """The classification grouped by |m| in 1..4, merging the +m and -m lists."""
    out = {}
    for k in range(1, CLOSED_FORM_RANGE + 1):
        merged = eisenstein_squares_with_coeff(k).squares | eisenstein_squares_with_coeff(-k).squares
        out[k] = SquareClassification(k, merged)
    return out


def is_square_closed_form(t: RingElem) -> bool:
    if t.ring is not RingId.EISENSTEIN:
        raise ValueError("closed-form classification is for the eisenstein ring")
    return eisenstein_squares_with_coeff(t.b).admits(t)


@dataclass(frozen=True)
class GaussianVerdict:
    value: RingElem
    imag: int
    case: str
    square: bool
    reason: str


def _gaussian_verdict(t: RingElem) -> GaussianVerdict:
    im = t.b
    if im == 0:
        # 2ab = 0 forces x**2 = a**2 or -b**2
        ok = _is_perfect_square(t.a) or _is_perfect_square(-t.a)
        reason = "rational: needs a^2 or -b^2"
        return GaussianVerdict(t, im, "imag-0", ok, reason)
    if im % 2:
        return GaussianVerdict(t, im, "imag-odd", False, "2ab cannot be odd")
    if abs(im) == 2:
        # 2ab = +-2 forces a**2 = b**2 = 1, so x**2 = +-2i
        ok = t.a == 0
        return GaussianVerdict(t, im, "imag-2", ok, "only +-2i have imaginary part +-2")
    return GaussianVerdict(t, im, "oracle", is_square(t), "outside hand analysis; exact search")


def gaussian_square_cases(values: Iterable[RingElem]) -> dict[int, list[GaussianVerdict]]:
    """Partition Z[i] candidates by imaginary part, with a squareness verdict each."""
    out: dict[int, list[GaussianVerdict]] = {}
    for t in sorted(set(values), key=RingElem.sort_key):
        if t.ring is not RingId.GAUSSIAN:
            raise ValueError("imaginary-part analysis is for the gaussian ring")
        v = _gaussian_verdict(t)
        out.setdefault(v.imag, []).append(v)
    return dict(sorted(out.items()))
