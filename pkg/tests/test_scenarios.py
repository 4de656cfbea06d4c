import dataclasses
import json
import math

import pytest

from conjtrace.geodesic import SPECTRUM_ENV, real_length
from conjtrace.matrix import Mat2, psl_eq
from conjtrace.ring import RingElem, RingId, embed, parse_elem
from conjtrace.scenarios import (
    PARABOLIC_ONLY,
    SCENARIOS,
    SURVIVORS_REMAIN,
    ScenarioDataError,
    layout_rows,
    run_scenario,
    validate_name,
    verify,
    verify_remark_generators,
    verify_triangle_group,
)

from conftest import golden_elem, load_golden

E, G, K, Z = RingId.EISENSTEIN, RingId.GAUSSIAN, RingId.KLEINIAN7, RingId.INTEGERS
w, th = E.gen(), K.gen()


def elems(ring, texts):
    return {parse_elem(ring, t) for t in texts}


@pytest.fixture(scope="module")
def reports():
    return {name: run_scenario(s) for name, s in SCENARIOS.items()}


@pytest.mark.parametrize("name", ["figure8", "whitehead", "link622"])
def test_golden_tables(reports, name):
    gold = load_golden(name)
    ring = RingId.parse(gold["ring"])
    report = reports[name]
    n_cells = 0
    for r_text, row in zip(gold["rows"], gold["cells"]):
        for c_text, expected in zip(gold["cols"], row):
            r, c = golden_elem(ring, r_text), golden_elem(ring, c_text)
            y, z = (r, c) if gold["row_axis"] == "y" else (c, r)
            assert report.cell(y, z).x2 == golden_elem(ring, expected), (r_text, c_text)
            n_cells += 1
    assert n_cells == len(report.table)


@pytest.mark.parametrize("name", ["figure8", "whitehead", "link622"])
def test_layout_matches_golden(reports, name):
    gold = load_golden(name)
    ring = RingId.parse(gold["ring"])
    _, _, grid = layout_rows(SCENARIOS[name], reports[name])
    assert [[c.x2 for c in line] for line in grid] == [
        [golden_elem(ring, t) for t in row] for row in gold["cells"]
    ]


def test_figure8_candidates(reports):
    r = reports["figure8"]
    assert set(r.z_candidates) == {w ** n for n in range(1, 6)}
    assert set(r.all_y()) == {w ** m for m in (0, 1, 2, 4, 5)}
    assert len(r.table) == 25
    for n in range(1, 6):
        for m in (0, 1, 2, 4, 5):
            assert r.cell(w ** m, w ** n).x2 == w ** (n - m) + w ** m + 4
    assert r.survivors == (E(4),) and r.conclusion == PARABOLIC_ONLY


def test_whitehead_candidates(reports):
    r = reports["whitehead"]
    assert set(r.z_candidates) == elems(G, ["-2", "2i", "-2i"])
    assert set(r.all_y()) == elems(G, ["1", "i", "-i", "1+i", "1-i", "-1+i", "-1-i", "2", "2i", "-2i"])
    cases = r.to_dict()["imaginary-part-cases"]
    assert set(cases) <= {"-3", "-2", "-1", "0", "1", "2", "3"}
    squares = [v["x2"] for vs in cases.values() for v in vs if v["square"]]
    assert squares == [str(G(4))]


def test_link622(reports):
    r = reports["link622"]
    assert len(r.all_y()) == 16 and len(r.table) == 80
    assert {s.x2 for s in r.square_survivors} == elems(E, ["4", "3w", "3-3w"])
    roots = {s.x2: set(s.roots) for s in r.square_survivors}
    assert roots[parse_elem(E, "3w")] == elems(E, ["1+w", "-1-w"])
    assert roots[parse_elem(E, "3-3w")] == elems(E, ["2-w", "-2+w"])
    assert len(r.geodesic) == 4
    for g in r.geodesic:
        assert g.eliminated
        assert abs(g.length - 1.087070145) < 1e-8
        assert g.length == pytest.approx(real_length(-embed(g.root)), abs=1e-12)
    assert r.survivors == (E(4),)


def test_link623(reports):
    r = reports["link623"]
    gold = load_golden("link623")
    assert r.z0 == 2 - th
    assert set(r.z_candidates) == elems(K, gold["z"])
    assert set(r.all_y()) == elems(K, gold["y"])
    assert set(r.candidates) == elems(K, gold["candidates"])
    assert r.survivors == (K(4),)


def test_trefoil(reports):
    r = reports["trefoil"]
    assert r.z0 == Z(-1)
    assert r.z_candidates == (Z(-1),)
    assert set(r.all_y()) == {Z(1), Z(-1)}
    assert {c.x2 for c in r.table} == {Z(4)}
    assert r.conclusion == PARABOLIC_ONLY


def test_parabolic_conclusion_means_trace_two(reports):
    for r in reports.values():
        if r.conclusion == PARABOLIC_ONLY:
            for s in r.square_survivors:
                if s.x2 in r.survivors:
                    assert {(x.a, x.b) for x in s.roots} == {(2, 0), (-2, 0)}


def test_reports_deterministic():
    for name, s in SCENARIOS.items():
        a = json.dumps(run_scenario(s).to_dict(), sort_keys=True)
        b = json.dumps(run_scenario(s).to_dict(), sort_keys=True)
        assert a == b


def test_inconsistent_scenario_data():
    bad = dataclasses.replace(SCENARIOS["figure8"], expected_z0=E(5))
    with pytest.raises(ScenarioDataError):
        run_scenario(bad)


def test_wrong_expected_survivors_fail_checks():
    from conjtrace.scenarios import scenario_checks

    s = dataclasses.replace(SCENARIOS["link622"], expected_survivors=(E(4), 3 * w))
    checks = {c.id: c.passed for c in scenario_checks(s, run_scenario(s))}
    assert not checks["survivors"]


def test_spectrum_containing_candidate_blocks_elimination(tmp_path, monkeypatch):
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"manifolds": [{"name": "6^2_2", "lengths": [0.5, 1.0870701449957, 2.0]}]}))
    monkeypatch.setenv(SPECTRUM_ENV, str(f))
    r = run_scenario(SCENARIOS["link622"])
    assert r.conclusion == SURVIVORS_REMAIN
    assert not verify("link622").passed


def test_remark():
    rep = verify_remark_generators()
    assert rep.matrices["alpha"] == Mat2.of(E, [[(1, -2), -1], [(0, 2), 1]])
    assert rep.matrices["beta"] == Mat2.of(E, [[(1, -1), -1], [(1, 1), (1, -1)]])
    assert rep.matrices["gamma"] == Mat2.of(E, [[(1, -3), -1], [(-3, 5), (1, 1)]])
    assert psl_eq(rep.product, rep.base["b"])
    assert set(rep.traces.values()) == {2 - 2 * w}
    assert all(c.passed for c in rep.checks())


@pytest.mark.parametrize("q,k", [(5, 3), (7, 4)])
def test_triangle(q, k):
    rep = verify_triangle_group(q)
    assert all(c.passed for c in rep.checks())
    assert psl_eq(rep.power, rep.D)
    assert rep.trace_x == pytest.approx(-4 * math.cos(math.pi / q), abs=1e-12)


def test_triangle_q5_trace():
    assert verify_triangle_group(5).trace_x == pytest.approx(-(1 + math.sqrt(5)), abs=1e-12)


@pytest.mark.parametrize("q", [3, 4, 6, 1])
def test_triangle_rejects(q):
    with pytest.raises(ValueError):
        verify_triangle_group(q)


@pytest.mark.parametrize("name", ["nosuch", "triangle:x", "triangle:3", "triangle:8"])
def test_validate_name(name):
    with pytest.raises(ValueError):
        validate_name(name)


def test_verify_all_pass():
    for name in ["figure8", "whitehead", "link622", "link623", "trefoil", "remark", "triangle:9"]:
        result = verify(name)
        assert result.passed, [c for c in result.checks if not c.passed]
