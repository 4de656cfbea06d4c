"""Trace identities for a pair of equal-trace SL2 elements X, Y.

With x = tr X = tr Y, y = tr XY - 2 and z = 2 - tr[X, Y] the Fricke
relation collapses to z = y * (x**2 - y - 4), so y | z and
x**2 = z/y + y + 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .matrix import Mat2, commutator, mat_mul, trace
from .ring import RingElem, RingMismatchError, quotient


@dataclass(frozen=True)
class TraceTriple:
    x: RingElem
    y: RingElem
    z: RingElem

    @classmethod
    def from_matrices(cls, X: Mat2, Y: Mat2) -> "TraceTriple":
        x = trace(X)
        if trace(Y) != x:
            raise ValueError("X and Y must have equal trace")
        return cls(x, trace(mat_mul(X, Y)) - 2, 2 - trace(commutator(X, Y)))

    def consistent(self) -> bool:
        return self.z == self.y * (self.x * self.x - (self.y + 4))


def defect_from_traces(x: RingElem, t: RingElem) -> RingElem:
    """2 - tr[X, Y] for tr X = tr Y = x and tr XY = t."""
    if x.ring is not t.ring:
        raise RingMismatchError(f"{x.ring.value} vs {t.ring.value}")
    x2 = x * x
    return 4 + x2 * t - t * t - 2 * x2


def x_squared_from(y: RingElem, z: RingElem) -> Optional[RingElem]:
    """z/y + y + 4, or None when y does not divide z."""
    if not y:
        raise ZeroDivisionError("y = tr XY - 2 must be nonzero")
    q = quotient(y, z)
    if q is None:
        return None
    return q + y + 4


def admissible_trace(t: RingElem) -> bool:
    """False exactly for rational traces strictly between -2 and 2.

    A torsion-free Kleinian group has no elliptic elements, and those are
    the real traces in (-2, 2). Non-real traces always pass.
    """
    return not (t.is_rational() and -2 < t.a < 2)
