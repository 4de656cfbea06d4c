"""Exact arithmetic in the rings of integers Z, Z[i], Z[w] and Z[th].

Every element is stored as a coefficient pair ``a + b*tau`` where the
generator satisfies ``tau**2 = p*tau + q``:

    gaussian    tau = i                  tau**2 = -1
    eisenstein  tau = w = exp(i*pi/3)    tau**2 = tau - 1
    kleinian7   tau = th = (1+i*sqrt7)/2 tau**2 = tau - 2
    integers    no tau (b is always 0)

All four rings are Z or imaginary quadratic, so the norm form is positive
definite and every search below runs over a finite coefficient box.
"""

from __future__ import annotations

import cmath
import enum
import math
import re
from dataclasses import dataclass
from typing import Optional, Union


class RingMismatchError(TypeError):
    """Operands belong to different rings."""


class RingId(enum.Enum):
    INTEGERS = "integers"
    GAUSSIAN = "gaussian"
    EISENSTEIN = "eisenstein"
    KLEINIAN7 = "kleinian7"

    @property
    def p(self) -> int:
        return _RELATIONS[self][0]

    @property
    def q(self) -> int:
        return _RELATIONS[self][1]

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @property
    def tau(self) -> complex:
        """Complex embedding of the generator."""
        return _EMBEDDINGS[self]

    @classmethod
    def parse(cls, text: str) -> "RingId":
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(r.value for r in cls)
            raise ValueError(f"unknown ring {text!r} (expected one of: {names})") from None

    def __call__(self, a: int = 0, b: int = 0) -> "RingElem":
        return RingElem(self, a, b)

    def one(self) -> "RingElem":
        return RingElem(self, 1, 0)

    def zero(self) -> "RingElem":
        return RingElem(self, 0, 0)

    def gen(self) -> "RingElem":
        if self is RingId.INTEGERS:
            raise ValueError("the integers have no quadratic generator")
        return RingElem(self, 0, 1)


_RELATIONS = {
    RingId.INTEGERS: (0, 0),
    RingId.GAUSSIAN: (0, -1),
    RingId.EISENSTEIN: (1, -1),
    RingId.KLEINIAN7: (1, -2),
}

_SYMBOLS = {
    RingId.INTEGERS: "",
    RingId.GAUSSIAN: "i",
    RingId.EISENSTEIN: "w",
    RingId.KLEINIAN7: "th",
}

_EMBEDDINGS = {
    RingId.INTEGERS: 0j,
    RingId.GAUSSIAN: 1j,
    RingId.EISENSTEIN: cmath.exp(1j * math.pi / 3),
    RingId.KLEINIAN7: complex(0.5, math.sqrt(7) / 2),
}


Operand = Union["RingElem", int]


@dataclass(frozen=True)
class RingElem:
    ring: RingId
    a: int
    b: int = 0

    def __post_init__(self):
        if not isinstance(self.a, int) or not isinstance(self.b, int):
            raise TypeError(f"coefficients must be integers, got {self.a!r}, {self.b!r}")
        if self.ring is RingId.INTEGERS and self.b != 0:
            raise ValueError("an element of the integers ring has b = 0")

    def _coerce(self, other: Operand) -> "RingElem":
        if isinstance(other, RingElem):
            if other.ring is not self.ring:
                raise RingMismatchError(f"{self.ring.value} vs {other.ring.value}")
            return other
        if isinstance(other, int):
            return RingElem(self.ring, other, 0)
        return NotImplemented

    def __add__(self, other: Operand) -> "RingElem":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElem(self.ring, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> "RingElem":
        return RingElem(self.ring, -self.a, -self.b)

    def __sub__(self, other: Operand) -> "RingElem":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElem(self.ring, self.a - o.a, self.b - o.b)

    def __rsub__(self, other: Operand) -> "RingElem":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other: Operand) -> "RingElem":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p, q = self.ring.p, self.ring.q
        bd = self.b * o.b
        return RingElem(
            self.ring,
            self.a * o.a + q * bd,
            self.a * o.b + self.b * o.a + p * bd,
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RingElem":
        if k < 0:
            inv = quotient(self, self.ring.one())
            if inv is None:
                raise ValueError(f"{self} is not a unit")
            return inv ** (-k)
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __str__(self) -> str:
        return format_elem(self)

    def is_rational(self) -> bool:
        return self.b == 0

    def norm(self) -> int:
        return norm(self)

    def conj(self) -> "RingElem":
        return conj(self)

    def sort_key(self) -> tuple[int, int, int]:
        return (norm(self), self.a, self.b)

    def __complex__(self) -> complex:
        return embed(self)


def arith(op: str, lhs: RingElem, rhs: RingElem) -> RingElem:
    """Apply one of add/sub/mul (or neg, ignoring ``rhs``)."""
    if op == "neg":
        return -lhs
    if lhs.ring is not rhs.ring:
        raise RingMismatchError(f"{lhs.ring.value} vs {rhs.ring.value}")
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown operation {op!r}")


def norm(e: RingElem) -> int:
    p, q = e.ring.p, e.ring.q
    return e.a * e.a + p * e.a * e.b - q * e.b * e.b


def conj(e: RingElem) -> RingElem:
    return RingElem(e.ring, e.a + e.ring.p * e.b, -e.b)


def _b_bound(ring: RingId, bound: int) -> int:
    """Largest |b| among elements of norm <= bound.

    Completing the square, norm = (a + p*b/2)**2 + (disc/4)*b**2 with
    disc = -4q - p**2 > 0.
    """
    if ring is RingId.INTEGERS:
        return 0
    disc = -4 * ring.q - ring.p ** 2
    return math.isqrt(4 * bound // disc) + 1


def elements_of_norm(ring: RingId, n: int) -> list[RingElem]:
    """Every element of norm n; for each b, (2a + p*b)**2 = 4n - disc*b**2 fixes a."""
    bmax = _b_bound(ring, n)
    p = ring.p
    disc = -4 * ring.q - p * p
    found = set()
    for b in range(-bmax, bmax + 1):
        rhs = 4 * n - disc * b * b
        if rhs < 0:
            continue
        s = math.isqrt(rhs)
        if s * s != rhs:
            continue
        for t in {s, -s}:
            if (t - p * b) % 2 == 0:
                e = RingElem(ring, (t - p * b) // 2, b)
                if norm(e) == n:
                    found.add(e)
    return sorted(found, key=RingElem.sort_key)


def units(ring: RingId) -> list[RingElem]:
    return elements_of_norm(ring, 1)


def is_unit(e: RingElem) -> bool:
    return norm(e) == 1


def quotient(d: RingElem, z: RingElem) -> Optional[RingElem]:
    """Return z/d when d divides z exactly, else None."""
    if d.ring is not z.ring:
        raise RingMismatchError(f"{d.ring.value} vs {z.ring.value}")
    n = norm(d)
    if n == 0:
        raise ZeroDivisionError("division by zero ring element")
    num = z * conj(d)
    if num.a % n or num.b % n:
        return None
    return RingElem(z.ring, num.a // n, num.b // n)


def divides(d: RingElem, z: RingElem) -> bool:
    return quotient(d, z) is not None


def divisors(z: RingElem) -> list[RingElem]:
    """All d with d | z, by exhaustive search over |a|, |b| <= norm(z)."""
    nz = norm(z)
    if nz == 0:
        raise ValueError("zero has infinitely many divisors")
    bmax = 0 if z.ring is RingId.INTEGERS else nz
    found = []
    for a in range(-nz, nz + 1):
        for b in range(-bmax, bmax + 1):
            d = RingElem(z.ring, a, b)
            nd = norm(d)
            if nd and nz % nd == 0 and divides(d, z):
                found.append(d)
    return sorted(found, key=RingElem.sort_key)


def sqrt_exact(t: RingElem) -> list[RingElem]:
    """Every r in the ring with r*r == t (empty, [0], or a +/- pair)."""
    if not t:
        return [t.ring.zero()]
    nt = norm(t)
    nr = math.isqrt(nt)
    if nr * nr != nt:
        return []
    return [r for r in elements_of_norm(t.ring, nr) if r * r == t]


def embed(e: RingElem) -> complex:
    return e.a + e.b * e.ring.tau


def format_elem(e: RingElem) -> str:
    """Canonical text form, e.g. ``5+1*w``, ``4-2*i``, ``-3`` (integers ring)."""
    if e.ring is RingId.INTEGERS:
        return str(e.a)
    return f"{e.a}{e.b:+d}*{e.ring.symbol}"


_ALIASES = {"ω": "w", "θ": "th", "omega": "w", "theta": "th"}
_TERM = re.compile(r"[+-]?[^+-]+")


def parse_elem(ring: RingId, text: str) -> RingElem:
    """Parse loose notation such as ``5+w``, ``4-2w``, ``-3*th``, ``2i`` or ``7``."""
    s = text.replace(" ", "")
    for k, v in _ALIASES.items():
        s = s.replace(k, v)
    if not s or _TERM.sub("", s):
        raise ValueError(f"cannot parse ring element {text!r}")
    a = b = 0
    sym = ring.symbol
    for term in _TERM.findall(s):
        if sym and term.endswith(sym):
            coeff = term[: -len(sym)].rstrip("*")
            if coeff in ("", "+", "-"):
                coeff += "1"
            b += int(coeff)
        else:
            try:
                a += int(term)
            except ValueError:
                raise ValueError(f"cannot parse {term!r} in {ring.value}") from None
    return RingElem(ring, a, b)
