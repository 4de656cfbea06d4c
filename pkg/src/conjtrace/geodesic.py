"""Translation lengths from traces, and elimination against a stored length spectrum."""

from __future__ import annotations

import cmath
import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

SPECTRUM_ENV = "CONJTRACE_SPECTRUM_FILE"
DEFAULT_TOLERANCE = 1e-6
_REAL_TOL = 1e-12


@dataclass(frozen=True)
class SpectrumData:
    name: str
    lengths: tuple[float, ...]

    def __post_init__(self):
        if any(x <= 0 for x in self.lengths):
            raise ValueError(f"{self.name}: geodesic lengths must be positive")
        if list(self.lengths) != sorted(self.lengths):
            raise ValueError(f"{self.name}: lengths must be sorted ascending")


def load_spectra(path: Optional[os.PathLike] = None) -> dict[str, SpectrumData]:
    """Read spectrum records; ``$CONJTRACE_SPECTRUM_FILE`` overrides the shipped file."""
    if path is None:
        path = os.environ.get(SPECTRUM_ENV)
    if path is None:
        text = resources.files("conjtrace").joinpath("data/spectra.json").read_text()
    else:
        text = Path(path).read_text()
    raw = json.loads(text)
    return {
        rec["name"]: SpectrumData(rec["name"], tuple(float(x) for x in rec["lengths"]))
        for rec in raw["manifolds"]
    }


def real_length(x: complex) -> float:
    """Real translation length Re(2 arccosh(x/2)) of an element with trace x."""
    x = complex(x)
    if abs(x.imag) < _REAL_TOL:
        r = abs(x.real)
        if abs(r - 2) < _REAL_TOL:
            return 0.0
        if r < 2:
            raise ValueError(f"trace {x.real} is elliptic, no translation length")
    return abs((2 * cmath.acosh(x / 2)).real)


def eliminate_by_spectrum(
    length: float, spectrum: SpectrumData, tolerance: float = DEFAULT_TOLERANCE
) -> bool:
    """True when ``length`` provably is not a geodesic length of the manifold.

    Only the stored shortest lengths are known, so a candidate counts as
    eliminated when it sits below the largest stored entry and is farther
    than ``tolerance`` from every entry.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if not spectrum.lengths:
        raise ValueError(f"{spectrum.name}: empty spectrum")
    if length >= spectrum.lengths[-1]:
        return False
    return all(abs(length - s) > tolerance for s in spectrum.lengths)
