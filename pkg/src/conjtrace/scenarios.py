"""Equal-trace generating pair analyses as data-driven verification pipelines.

An exact scenario fixes a two-generator representation, computes the base
defect z0 = 2 - tr[A, B], enumerates the admissible defects z of any other
generating pair (unit multiples of z0, or z0 alone when a Nielsen argument
pins it), enumerates y = tr XY - 2 among the divisors of z, tabulates
x**2 = z/y + y + 4, keeps the squares, and finally discards non-parabolic
survivors whose translation length is absent from the known length spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Optional

from . import classify
from .geodesic import DEFAULT_TOLERANCE, eliminate_by_spectrum, load_spectra, real_length
from .matrix import FLOAT_TOL, Mat2, commutator, identity, mat_inv, mat_mul, mat_pow, psl_eq, trace
from .ring import RingElem, RingId, divisors, embed, parse_elem, sqrt_exact, units
from .tracecalc import admissible_trace, x_squared_from
from .words import Representation, Word, check_relator, conjugate, evaluate, substitute

UNIT_MULTIPLES = "unit-multiples-of-base"
FIXED_BASE = "fixed-base"

PARABOLIC_ONLY = "parabolic-only"
SURVIVORS_REMAIN = "survivors-remain"


class ScenarioDataError(RuntimeError):
    """Embedded scenario constants disagree with what the matrices give."""


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "status": "pass" if self.passed else "fail", "detail": self.detail}


@dataclass(frozen=True)
class Scenario:
    name: str
    title: str
    ring: RingId
    generators: Representation
    pair: tuple[str, str]
    torsion_free: bool
    z_rule: str
    expected_z0: RingElem
    expected_square_survivors: tuple[RingElem, ...]
    expected_survivors: tuple[RingElem, ...]
    square_method: str
    spectrum: Optional[str] = None
    # printed layout of the candidate table: which axis indexes rows, and
    # (label, value) pairs in printed order along each axis
    row_axis: str = "y"
    z_layout: tuple[tuple[str, RingElem], ...] = ()
    y_layout: tuple[tuple[str, RingElem], ...] = ()
    relators: tuple[tuple[Word, Word], ...] = ()
    brute_force_bound: int = 50

    def base_pair(self) -> tuple[Mat2, Mat2]:
        return self.generators[self.pair[0]], self.generators[self.pair[1]]


@dataclass(frozen=True)
class TableCell:
    y: RingElem
    z: RingElem
    x2: Optional[RingElem]

    @property
    def divisible(self) -> bool:
        return self.x2 is not None

    def to_dict(self) -> dict:
        return {
            "y": str(self.y),
            "z": str(self.z),
            "x2": None if self.x2 is None else str(self.x2),
            "divisible": self.divisible,
        }


@dataclass(frozen=True)
class Survivor:
    x2: RingElem
    roots: tuple[RingElem, ...]


@dataclass(frozen=True)
class GeodesicTest:
    x2: RingElem
    root: RingElem
    length: float
    eliminated: bool


@dataclass(frozen=True)
class ScenarioReport:
    scenario: str
    z0: RingElem
    z_candidates: tuple[RingElem, ...]
    y_candidates: dict
    table: tuple[TableCell, ...]
    candidates: tuple[RingElem, ...]
    method_verdicts: tuple[tuple[RingElem, bool, bool], ...]
    square_survivors: tuple[Survivor, ...]
    geodesic: tuple[GeodesicTest, ...]
    survivors: tuple[RingElem, ...]
    conclusion: str
    extra: dict = field(default_factory=dict)

    def cell(self, y: RingElem, z: RingElem) -> TableCell:
        for c in self.table:
            if c.y == y and c.z == z:
                return c
        raise KeyError((str(y), str(z)))

    def all_y(self) -> tuple[RingElem, ...]:
        ys = {y for ys in self.y_candidates.values() for y in ys}
        return tuple(sorted(ys, key=RingElem.sort_key))

    def to_dict(self) -> dict:
        out = {
            "z0": str(self.z0),
            "z-candidates": [str(z) for z in self.z_candidates],
            "y-candidates": {str(z): [str(y) for y in ys] for z, ys in self.y_candidates.items()},
            "table": [c.to_dict() for c in self.table],
            "candidates": [str(t) for t in self.candidates],
            "method-verdicts": [
                {"x2": str(t), "oracle": o, "method": m} for t, o, m in self.method_verdicts
            ],
            "square-survivors": [
                {"x2": str(s.x2), "roots": [str(r) for r in s.roots]} for s in self.square_survivors
            ],
            "geodesic": [
                {"x2": str(g.x2), "root": str(g.root), "length": g.length, "eliminated": g.eliminated}
                for g in self.geodesic
            ],
            "survivors": [str(t) for t in self.survivors],
            "conclusion": self.conclusion,
        }
        out.update(self.extra)
        return out


def base_defect(s: Scenario) -> RingElem:
    A, B = s.base_pair()
    return 2 - trace(commutator(A, B))


def z_candidates(s: Scenario, z0: RingElem) -> list[RingElem]:
    if s.z_rule == FIXED_BASE:
        return [z0]
    zs = {u * z0 for u in units(s.ring)}
    if s.torsion_free:
        zs = {z for z in zs if admissible_trace(2 - z)}
    return sorted(zs, key=RingElem.sort_key)


def y_candidates(s: Scenario, z: RingElem) -> list[RingElem]:
    ys = divisors(z)
    if s.torsion_free:
        ys = [y for y in ys if admissible_trace(y + 2)]
    return ys


def _method_verdict(s: Scenario, t: RingElem) -> bool:
    if s.square_method == "closed-form":
        return classify.is_square_closed_form(t)
    if s.square_method == "imaginary-part":
        (verdict,) = [v for vs in classify.gaussian_square_cases([t]).values() for v in vs]
        return verdict.square
    if s.square_method == "brute-force":
        return bool(classify.brute_force_roots(t, s.brute_force_bound))
    if s.square_method == "oracle":
        return classify.is_square(t)
    raise ValueError(f"unknown square method {s.square_method!r}")


def run_scenario(s: Scenario, tolerance: float = DEFAULT_TOLERANCE, spectra=None) -> ScenarioReport:
    z0 = base_defect(s)
    if z0 != s.expected_z0:
        raise ScenarioDataError(f"{s.name}: 2 - tr[A,B] = {z0}, expected {s.expected_z0}")

    zs = z_candidates(s, z0)
    ys_by_z = {z: tuple(y_candidates(s, z)) for z in zs}
    all_y = sorted({y for ys in ys_by_z.values() for y in ys}, key=RingElem.sort_key)

    table = tuple(TableCell(y, z, x_squared_from(y, z)) for z in zs for y in all_y)
    candidates = tuple(sorted({c.x2 for c in table if c.divisible}, key=RingElem.sort_key))

    verdicts = tuple((t, classify.is_square(t), _method_verdict(s, t)) for t in candidates)
    square_survivors = tuple(
        Survivor(t, tuple(sqrt_exact(t))) for t, oracle, _ in verdicts if oracle
    )

    four = s.ring(4)
    geodesic: list[GeodesicTest] = []
    survivors = []
    spectrum = None
    if s.spectrum is not None:
        spectrum = (spectra or load_spectra())[s.spectrum]
    for sv in square_survivors:
        if sv.x2 == four or spectrum is None:
            survivors.append(sv.x2)
            continue
        tests = []
        for r in sv.roots:
            length = real_length(embed(r))
            tests.append(GeodesicTest(sv.x2, r, length, eliminate_by_spectrum(length, spectrum, tolerance)))
        geodesic.extend(tests)
        if not all(t.eliminated for t in tests):
            survivors.append(sv.x2)

    extra = {}
    if s.square_method == "imaginary-part":
        extra["imaginary-part-cases"] = {
            str(im): [
                {"x2": str(v.value), "case": v.case, "square": v.square, "reason": v.reason}
                for v in vs
            ]
            for im, vs in classify.gaussian_square_cases(candidates).items()
        }

    conclusion = PARABOLIC_ONLY if survivors == [four] else SURVIVORS_REMAIN
    return ScenarioReport(
        scenario=s.name,
        z0=z0,
        z_candidates=tuple(zs),
        y_candidates=ys_by_z,
        table=table,
        candidates=candidates,
        method_verdicts=verdicts,
        square_survivors=square_survivors,
        geodesic=tuple(geodesic),
        survivors=tuple(survivors),
        conclusion=conclusion,
        extra=extra,
    )


def layout_rows(s: Scenario, report: ScenarioReport) -> tuple[list, list, list[list[TableCell]]]:
    """Row labels, column labels and cells arranged as in the printed table."""
    z_axis = s.z_layout or tuple((str(z), z) for z in report.z_candidates)
    y_axis = s.y_layout or tuple((str(y), y) for y in report.all_y())
    rows, cols = (y_axis, z_axis) if s.row_axis == "y" else (z_axis, y_axis)
    grid = []
    for _, r in rows:
        line = []
        for _, c in cols:
            y, z = (r, c) if s.row_axis == "y" else (c, r)
            line.append(report.cell(y, z))
        grid.append(line)
    return [lab for lab, _ in rows], [lab for lab, _ in cols], grid


def scenario_checks(s: Scenario, report: ScenarioReport) -> list[Check]:
    def elems(xs):
        return "{" + ", ".join(str(x) for x in xs) + "}"

    def same(xs, ys):
        return set(xs) == set(ys)

    checks = [Check("base-defect", report.z0 == s.expected_z0, f"2 - tr[A,B] = {report.z0}")]
    if s.z_layout:
        laid = [z for _, z in s.z_layout]
        checks.append(Check("z-layout", same(laid, report.z_candidates) and len(laid) == len(report.z_candidates),
                            f"z candidates {elems(report.z_candidates)}"))
    if s.y_layout:
        laid = [y for _, y in s.y_layout]
        ys = report.all_y()
        checks.append(Check("y-layout", same(laid, ys) and len(laid) == len(ys), f"y candidates {elems(ys)}"))
    undivided = [c for c in report.table if not c.divisible]
    checks.append(Check("y-divides-z", not undivided, f"{len(report.table)} cells, {len(undivided)} non-divisible"))
    disagree = [t for t, o, m in report.method_verdicts if o != m]
    checks.append(Check(f"square-method:{s.square_method}", not disagree,
                        f"disagreements with exact search: {elems(disagree)}"))
    sq = [sv.x2 for sv in report.square_survivors]
    checks.append(Check("square-survivors", same(sq, s.expected_square_survivors), f"squares {elems(sq)}"))
    if report.geodesic:
        bad = [g for g in report.geodesic if not g.eliminated]
        detail = "; ".join(f"{g.root}: {g.length:.9f}" for g in report.geodesic)
        checks.append(Check("geodesic-elimination", not bad, detail))
    checks.append(Check("survivors", same(report.survivors, s.expected_survivors),
                        f"survivors {elems(report.survivors)}"))
    checks.append(Check("conclusion", report.conclusion == PARABOLIC_ONLY, report.conclusion))
    for i, (lhs, rhs) in enumerate(s.relators):
        checks.append(Check(f"relator-{i}", check_relator(lhs, rhs, s.generators), f"{lhs} = {rhs}"))
    return checks


# ---------------------------------------------------------------------------
# scenario data


def _pair_rep(ring: RingId, xi: RingElem) -> Representation:
    return Representation(ring, {"a": Mat2.of(ring, [[1, 1], [0, 1]]), "b": Mat2.of(ring, [[1, 0], [xi, 1]])})


def _layout(ring: RingId, texts, labels=None) -> tuple[tuple[str, RingElem], ...]:
    vals = [parse_elem(ring, t) for t in texts]
    return tuple(zip(labels or [str(v) for v in vals], vals))


def _figure8() -> Scenario:
    R = RingId.EISENSTEIN
    P = partial(parse_elem, R)
    w = R.gen()
    return Scenario(
        name="figure8",
        title="figure-eight knot",
        ring=R,
        generators=_pair_rep(R, w),
        pair=("a", "b"),
        torsion_free=True,
        z_rule=UNIT_MULTIPLES,
        expected_z0=-(w * w),
        expected_square_survivors=(P("4"),),
        expected_survivors=(P("4"),),
        square_method="closed-form",
        row_axis="z",
        z_layout=tuple((f"n={n}", w ** n) for n in (1, 2, 3, 4, 5)),
        y_layout=tuple((f"m={m}", w ** m) for m in (0, 1, 2, 4, 5)),
        relators=((Word.parse("A b a B a"), Word.parse("b A b a B")),),
    )


def _whitehead() -> Scenario:
    R = RingId.GAUSSIAN
    P = partial(parse_elem, R)
    return Scenario(
        name="whitehead",
        title="Whitehead link",
        ring=R,
        generators=_pair_rep(R, P("1+i")),
        pair=("a", "b"),
        torsion_free=True,
        z_rule=UNIT_MULTIPLES,
        expected_z0=P("-2i"),
        expected_square_survivors=(P("4"),),
        expected_survivors=(P("4"),),
        square_method="imaginary-part",
        z_layout=_layout(R, ["-2", "2i", "-2i"]),
        y_layout=_layout(R, ["1", "i", "-i", "1+i", "1-i", "-1+i", "-1-i", "2", "2i", "-2i"]),
    )


def _link622() -> Scenario:
    R = RingId.EISENSTEIN
    P = partial(parse_elem, R)
    return Scenario(
        name="link622",
        title="6^2_2 link",
        ring=R,
        generators=_pair_rep(R, P("1+w")),
        pair=("a", "b"),
        torsion_free=True,
        z_rule=UNIT_MULTIPLES,
        expected_z0=P("-3w"),
        expected_square_survivors=(P("4"), P("3w"), P("3-3w")),
        expected_survivors=(P("4"),),
        square_method="closed-form",
        spectrum="6^2_2",
        z_layout=_layout(R, ["3w", "-3w", "3-3w", "-3+3w", "-3"]),
        y_layout=_layout(R, [
            "3-3w", "-3+3w", "2-w", "-2+w", "1+w", "-1-w", "1-w", "-1+w",
            "1-2w", "-1+2w", "w", "-w", "3w", "-3w", "1", "3",
        ]),
    )


def _link623() -> Scenario:
    R = RingId.KLEINIAN7
    P = partial(parse_elem, R)
    return Scenario(
        name="link623",
        title="6^2_3 link",
        ring=R,
        generators=_pair_rep(R, R.gen()),
        pair=("a", "b"),
        torsion_free=True,
        z_rule=UNIT_MULTIPLES,
        expected_z0=P("2-th"),
        expected_square_survivors=(P("4"),),
        expected_survivors=(P("4"),),
        square_method="brute-force",
        z_layout=_layout(R, ["2-th", "-2+th"]),
        y_layout=_layout(R, ["1", "2-th", "-2+th", "th", "-th"]),
    )


def trefoil_matrices(q: int = 3):
    """Exact integer C, D for the (2, 3) torus knot (2cos(pi/3) = 1)."""
    if q != 3:
        raise ValueError("exact trefoil matrices exist only for q = 3")
    R = RingId.INTEGERS
    return Mat2.of(R, [[0, 1], [-1, 0]]), Mat2.of(R, [[0, 1], [-1, 1]])


def _trefoil() -> Scenario:
    R = RingId.INTEGERS
    C, D = trefoil_matrices()
    return Scenario(
        name="trefoil",
        title="trefoil knot (2,3)-torus knot",
        ring=R,
        generators=Representation(R, {"c": C, "d": D}),
        pair=("c", "d"),
        # Z2 * Z3 has torsion, so no elliptic-trace filter
        torsion_free=False,
        z_rule=FIXED_BASE,
        expected_z0=R(-1),
        expected_square_survivors=(R(4),),
        expected_survivors=(R(4),),
        square_method="oracle",
        z_layout=_layout(R, ["-1"]),
        y_layout=_layout(R, ["1", "-1"]),
        relators=(
            (Word.parse("c^2"), Word.parse("d^3")),
            (Word.parse("c^2"), Word()),
            (Word.parse("d^3"), Word()),
        ),
    )


SCENARIOS: dict[str, Scenario] = {s.name: s for s in (_figure8(), _whitehead(), _link622(), _link623(), _trefoil())}


# ---------------------------------------------------------------------------
# three conjugate loxodromic generators of the figure-eight group


@dataclass(frozen=True)
class RemarkReport:
    words: dict
    matrices: dict
    printed: dict
    traces: dict
    product_word: Word
    product_expanded: Word
    product: Mat2
    recovered_a: Mat2
    base: Representation

    def checks(self) -> list[Check]:
        b, a = self.base["b"], self.base["a"]
        out = []
        for g in ("alpha", "beta", "gamma"):
            out.append(Check(f"matrix-{g}", self.matrices[g] == self.printed[g], f"{g} = {self.matrices[g]}"))
        out.append(Check("word-gives-b", psl_eq(self.product, b), f"{self.product_word} = {self.product}"))
        out.append(Check("recovers-a", psl_eq(self.recovered_a, a), f"b^2 alpha^-1 = {self.recovered_a}"))
        ts = set(self.traces.values())
        (t,) = ts if len(ts) == 1 else (None,)
        out.append(Check("equal-traces", len(ts) == 1, ", ".join(f"{k}: {v}" for k, v in self.traces.items())))
        out.append(Check("loxodromic", t is not None and not t.is_rational(), f"common trace {t}"))
        return out

    def to_dict(self) -> dict:
        return {
            "words": {k: str(v) for k, v in self.words.items()},
            "matrices": {k: v.to_json() for k, v in self.matrices.items()},
            "traces": {k: str(v) for k, v in self.traces.items()},
            "product-word": str(self.product_word),
            "product-in-a-b": str(self.product_expanded),
            "product": self.product.to_json(),
            "b^2 alpha^-1": self.recovered_a.to_json(),
        }


def verify_remark_generators() -> RemarkReport:
    R = RingId.EISENSTEIN
    base = SCENARIOS["figure8"].generators
    b = Word.gen("b")
    alpha = Word.parse("A b^2")
    words = {
        "alpha": alpha,
        "beta": conjugate(alpha, b),
        "gamma": conjugate(alpha, Word.gen("b", -1)),
    }
    matrices = {k: evaluate(v, base) for k, v in words.items()}
    printed = {
        "alpha": Mat2.of(R, [[(1, -2), -1], [(0, 2), 1]]),
        "beta": Mat2.of(R, [[(1, -1), -1], [(1, 1), (1, -1)]]),
        "gamma": Mat2.of(R, [[(1, -3), -1], [(-3, 5), (1, 1)]]),
    }
    greek = base.extend(**{"α": matrices["alpha"], "β": matrices["beta"], "γ": matrices["gamma"]})
    product_word = Word.parse("β^-1 α γ^-1 α β^-1 α^2")
    expanded = substitute(product_word, {"α": words["alpha"], "β": words["beta"], "γ": words["gamma"]})
    return RemarkReport(
        words=words,
        matrices=matrices,
        printed=printed,
        traces={k: trace(m) for k, m in matrices.items()},
        product_word=product_word,
        product_expanded=expanded,
        product=evaluate(product_word, greek),
        recovered_a=evaluate(Word.parse("b^2") * Word.parse("α^-1"), greek),
        base=base,
    )


# ---------------------------------------------------------------------------
# (2, q, infinity) triangle groups in floating point


def triangle_matrices(q: int) -> tuple[Mat2, Mat2]:
    c = math.cos(math.pi / q)
    C = Mat2.of(None, [[0, 1 / (2 * c)], [-2 * c, 0]])
    D = Mat2.of(None, [[1 - 4 * c * c, 1], [-4 * c * c, 1]])
    return C, D


@dataclass(frozen=True)
class TriangleReport:
    q: int
    X: Mat2
    Y: Mat2
    power: Mat2
    D: Mat2
    trace_x: float
    trace_y: float
    expected_trace: float
    c_squared: Mat2
    d_to_q: Mat2
    y_is_conjugate: bool

    def checks(self) -> list[Check]:
        k = (self.q + 1) // 2
        ident = identity()
        return [
            Check("power-gives-D", psl_eq(self.power, self.D, FLOAT_TOL), f"(YX)^{k} = {self.power}"),
            Check("trace-X", abs(self.trace_x - self.expected_trace) < 1e-12,
                  f"tr X = {self.trace_x!r}, -4cos(pi/q) = {self.expected_trace!r}"),
            Check("trace-Y", abs(self.trace_y - self.expected_trace) < 1e-12, f"tr Y = {self.trace_y!r}"),
            Check("hyperbolic", self.trace_x < -2 and self.trace_y < -2, "tr X = tr Y < -2"),
            Check("C-order-2", psl_eq(self.c_squared, ident, FLOAT_TOL), f"C^2 = {self.c_squared}"),
            Check(f"D-order-{self.q}", psl_eq(self.d_to_q, ident, FLOAT_TOL), f"D^{self.q} = {self.d_to_q}"),
            Check("Y-conjugate-of-X", self.y_is_conjugate, "Y = C^-1 X C"),
        ]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "X": self.X.to_json(),
            "Y": self.Y.to_json(),
            "(YX)^((q+1)/2)": self.power.to_json(),
            "D": self.D.to_json(),
            "trace-X": self.trace_x,
            "trace-Y": self.trace_y,
            "-4cos(pi/q)": self.expected_trace,
        }


def verify_triangle_group(q: int) -> TriangleReport:
    if q <= 3 or q % 2 == 0:
        raise ValueError(f"need odd q > 3, got {q}")
    C, D = triangle_matrices(q)
    X = mat_mul(C, D)
    Y = mat_mul(D, C)
    return TriangleReport(
        q=q,
        X=X,
        Y=Y,
        power=mat_pow(mat_mul(Y, X), (q + 1) // 2),
        D=D,
        trace_x=trace(X).real,
        trace_y=trace(Y).real,
        expected_trace=-4 * math.cos(math.pi / q),
        c_squared=mat_pow(C, 2),
        d_to_q=mat_pow(D, q),
        y_is_conjugate=psl_eq(mat_mul(mat_mul(mat_inv(C), X), C), Y, FLOAT_TOL),
    )


# ---------------------------------------------------------------------------
# uniform entry point


VERIFY_ALL = ("figure8", "whitehead", "link622", "link623", "trefoil", "remark")


@dataclass(frozen=True)
class VerificationResult:
    name: str
    checks: tuple[Check, ...]
    report: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"name": self.name, "checks": [c.to_dict() for c in self.checks], "report": self.report}


def parse_triangle(name: str) -> Optional[int]:
    if not name.startswith("triangle:"):
        return None
    try:
        return int(name.split(":", 1)[1])
    except ValueError:
        raise ValueError(f"bad triangle scenario {name!r}; expected triangle:<odd q > 3>") from None


def validate_name(name: str) -> None:
    """Raise ValueError for names that do not select a pipeline."""
    if name in SCENARIOS or name == "remark":
        return
    q = parse_triangle(name)
    if q is None:
        known = ", ".join(VERIFY_ALL)
        raise ValueError(f"unknown scenario {name!r} (known: {known}, triangle:<q>)")
    if q <= 3 or q % 2 == 0:
        raise ValueError(f"triangle scenario needs odd q > 3, got {q}")


def verify(name: str, tolerance: float = DEFAULT_TOLERANCE, spectra=None) -> VerificationResult:
    validate_name(name)
    if name == "remark":
        rep = verify_remark_generators()
        return VerificationResult(name, tuple(rep.checks()), rep.to_dict())
    q = parse_triangle(name)
    if q is not None:
        rep = verify_triangle_group(q)
        return VerificationResult(name, tuple(rep.checks()), rep.to_dict())
    s = SCENARIOS[name]
    try:
        report = run_scenario(s, tolerance, spectra)
    except ScenarioDataError as exc:
        return VerificationResult(name, (Check("scenario-data", False, str(exc)),), {})
    return VerificationResult(name, tuple(scenario_checks(s, report)), report.to_dict())
