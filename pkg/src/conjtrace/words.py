"""Words in a free group, evaluated under a matrix representation.

Text syntax: ``a`` is a generator, ``A`` its inverse, and ``b^2``/``b^-1``
carry explicit exponents; letters may be separated by spaces or run
together (``a^-1b^2`` is the same word as ``a^-1 b^2``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .matrix import Mat2, has_unit_det, identity, mat_mul, mat_pow, psl_eq
from .ring import RingId

_LETTER = re.compile(r"\s*([^\W\d_])(?:\^(-?\d+))?\s*")


class UnknownGeneratorError(KeyError):
    pass


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[str, int], ...] = ()

    @classmethod
    def parse(cls, text: str) -> "Word":
        letters = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _LETTER.match(text, pos)
            if not m:
                raise ValueError(f"bad word syntax at {text[pos:]!r}")
            sym, exp = m.group(1), int(m.group(2) or 1)
            if sym.isupper():
                sym, exp = sym.lower(), -exp
            letters.append((sym, exp))
            pos = m.end()
        return cls(tuple(letters))

    @classmethod
    def gen(cls, symbol: str, exp: int = 1) -> "Word":
        return cls(((symbol, exp),))

    def __mul__(self, other: "Word") -> "Word":
        return free_reduce(Word(self.letters + other.letters))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.letters)

    def symbols(self) -> set[str]:
        return {s for s, _ in self.letters}


def free_reduce(w: Word) -> Word:
    stack: list[list] = []
    for sym, exp in w.letters:
        if stack and stack[-1][0] == sym:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        elif exp:
            stack.append([sym, exp])
    return Word(tuple((s, e) for s, e in stack))


def inverse(w: Word) -> Word:
    return Word(tuple((s, -e) for s, e in reversed(w.letters)))


def power(w: Word, k: int) -> Word:
    base = w if k >= 0 else inverse(w)
    return free_reduce(Word(base.letters * abs(k)))


def conjugate(w: Word, by: Word) -> Word:
    """by * w * by^-1, freely reduced."""
    return free_reduce(Word(by.letters + w.letters + inverse(by).letters))


def substitute(w: Word, images: Mapping[str, Word]) -> Word:
    """Replace each generator by a word; symbols without an image are kept."""
    out: list[tuple[str, int]] = []
    for sym, exp in w.letters:
        if sym in images:
            out.extend(power(images[sym], exp).letters)
        else:
            out.append((sym, exp))
    return free_reduce(Word(tuple(out)))


@dataclass(frozen=True)
class Representation:
    ring: Optional[RingId]
    images: Mapping[str, Mat2] = field(default_factory=dict)

    def __post_init__(self):
        for sym, m in self.images.items():
            if m.ring is not self.ring:
                raise ValueError(f"image of {sym} lives in {m.ring}, expected {self.ring}")
            if not has_unit_det(m):
                raise ValueError(f"image of {sym} does not have determinant 1")

    def extend(self, **images: Mat2) -> "Representation":
        return Representation(self.ring, {**self.images, **images})

    def __getitem__(self, sym: str) -> Mat2:
        return self.images[sym]


def evaluate(w: Word, rep: Representation) -> Mat2:
    result = identity(rep.ring)
    for sym, exp in w.letters:
        if sym not in rep.images:
            raise UnknownGeneratorError(sym)
        result = mat_mul(result, mat_pow(rep.images[sym], exp))
    return result


def check_relator(lhs: Word, rhs: Word, rep: Representation) -> bool:
    """Whether lhs = rhs holds in PSL2 under ``rep``."""
    return psl_eq(evaluate(lhs, rep), evaluate(rhs, rep))
