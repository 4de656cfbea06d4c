"""2x2 matrices of determinant one, over an exact ring or over complex floats."""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Optional, Union

from .ring import RingElem, RingId, format_elem

Scalar = Union[RingElem, complex, float]

FLOAT_TOL = 1e-9


class DomainMismatchError(TypeError):
    """Exact and floating-point matrices were mixed."""


def _domain(s: Scalar) -> Optional[RingId]:
    if isinstance(s, RingElem):
        return s.ring
    if isinstance(s, Number):
        return None
    raise TypeError(f"unsupported matrix entry {s!r}")


@dataclass(frozen=True)
class Mat2:
    m11: Scalar
    m12: Scalar
    m21: Scalar
    m22: Scalar

    def __post_init__(self):
        domains = {_domain(e) for e in self.entries}
        if len(domains) != 1:
            raise DomainMismatchError(f"mixed entry domains: {domains}")

    @classmethod
    def of(cls, ring: Optional[RingId], rows) -> "Mat2":
        """Build from nested rows; ints and (a, b) pairs are lifted into ``ring``."""
        (x11, x12), (x21, x22) = rows

        def lift(v):
            if ring is None or isinstance(v, RingElem):
                return complex(v) if ring is None else v
            if isinstance(v, tuple):
                return RingElem(ring, *v)
            return RingElem(ring, v, 0)

        return cls(lift(x11), lift(x12), lift(x21), lift(x22))

    @property
    def entries(self) -> tuple:
        return (self.m11, self.m12, self.m21, self.m22)

    @property
    def ring(self) -> Optional[RingId]:
        """The exact ring of the entries, or None for the float domain."""
        return _domain(self.m11)

    @property
    def exact(self) -> bool:
        return self.ring is not None

    def __mul__(self, other: "Mat2") -> "Mat2":
        return mat_mul(self, other)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.m11, -self.m12, -self.m21, -self.m22)

    def __add__(self, other: "Mat2") -> "Mat2":
        _check_same_domain(self, other)
        return Mat2(*(x + y for x, y in zip(self.entries, other.entries)))

    def scale(self, s: Scalar) -> "Mat2":
        return Mat2(*(s * x for x in self.entries))

    def __str__(self) -> str:
        fmt = format_elem if self.exact else _format_complex
        return "({}, {}; {}, {})".format(*(fmt(e) for e in self.entries))

    def to_json(self) -> list:
        fmt = format_elem if self.exact else _format_complex
        return [[fmt(self.m11), fmt(self.m12)], [fmt(self.m21), fmt(self.m22)]]


def _format_complex(z) -> str:
    z = complex(z)
    return f"{z.real!r}{z.imag:+}j"


def _check_same_domain(x: Mat2, y: Mat2) -> None:
    if x.exact != y.exact:
        raise DomainMismatchError("cannot combine exact and floating-point matrices")


def identity(ring: Optional[RingId] = None) -> Mat2:
    if ring is None:
        return Mat2(1 + 0j, 0j, 0j, 1 + 0j)
    return Mat2(ring.one(), ring.zero(), ring.zero(), ring.one())


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    _check_same_domain(x, y)
    return Mat2(
        x.m11 * y.m11 + x.m12 * y.m21,
        x.m11 * y.m12 + x.m12 * y.m22,
        x.m21 * y.m11 + x.m22 * y.m21,
        x.m21 * y.m12 + x.m22 * y.m22,
    )


def det(x: Mat2) -> Scalar:
    return x.m11 * x.m22 - x.m12 * x.m21


def has_unit_det(x: Mat2, tol: float = FLOAT_TOL) -> bool:
    d = det(x)
    if x.exact:
        return d == x.ring.one()
    return abs(d - 1) < tol


def mat_inv(x: Mat2) -> Mat2:
    """Inverse via the adjugate; only valid for determinant-one input."""
    if not has_unit_det(x):
        raise ValueError(f"matrix {x} does not have determinant 1")
    return Mat2(x.m22, -x.m12, -x.m21, x.m11)


def mat_pow(x: Mat2, k: int) -> Mat2:
    """x**k by repeated multiplication; negative k goes through mat_inv."""
    if k < 0:
        return mat_pow(mat_inv(x), -k)
    result = identity(x.ring)
    for _ in range(k):
        result = mat_mul(result, x)
    return result


def trace(x: Mat2) -> Scalar:
    return x.m11 + x.m22


def commutator(x: Mat2, y: Mat2) -> Mat2:
    """[x, y] = x y x^-1 y^-1."""
    return mat_mul(mat_mul(x, y), mat_mul(mat_inv(x), mat_inv(y)))


def psl_eq(x: Mat2, y: Mat2, tol: float = FLOAT_TOL) -> bool:
    """Equality in PSL2: x == y or x == -y."""
    _check_same_domain(x, y)
    if x.exact:
        return x == y or x == -y
    for sign in (1, -1):
        if max(abs(p - sign * q) for p, q in zip(x.entries, y.entries)) < tol:
            return True
    return False
