import os
from fractions import Fraction
from pathlib import Path

import pytest

import tropcurve as tc

DATA = Path(os.environ.get("TROPCURVE_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def read(name):
    return (DATA / name).read_text()


def test_scalars_follow_max_plus():
    assert tc.trop_add(3, 5) == 5
    assert tc.trop_mul(Fraction(1, 2), "1/3") == Fraction(5, 6)
    assert tc.trop_add(None, 2) == 2
    assert tc.trop_mul(None, 2) is None
    with pytest.raises(TypeError):
        tc.trop_add(0.5, 1)


def test_germs_take_componentwise_max_on_ties():
    assert tc.germ_add((0, [1, 0]), (0, [0, 1])) == (0, [1, 1])
    assert tc.germ_add((3, [1, 2]), (1, [5, 5])) == (3, [1, 2])
    assert tc.germ_mul((1, [1, 0]), (2, [0, 1])) == (3, [1, 1])
    ok, identities = tc.verify_rn_generators(2)
    assert ok
    assert "(0,(1,-1)) ⊞ (0,(0,0)) = (0,(1,0))" in identities


def test_functions_on_the_real_line():
    line = tc.Curve.from_json(read("line.json"))
    twox = tc.Function.from_json(line, read("twox.json"))
    x = tc.Function.from_json(line, read("x.json"))
    assert twox.div() == [("-inf_point", 2), ("+inf_point", -2)]
    assert tc.module_degree([x]) == 1
    assert tc.module_degree([twox]) == 2
    assert twox("r@3") == 6
    assert twox("+inf_point") == float("inf")
    assert x.odot(x) == twox
    assert x.oplus(tc.Function.constant(line, 0))("l@4") == 0
    assert x.is_harmonic_at("O")


def test_errors_surface_as_value_errors():
    with pytest.raises(tc.ParseError):
        tc.Curve.from_json("{")
    line = tc.Curve.from_json(read("line.json"))
    with pytest.raises(tc.TropError):
        line.distance("nowhere", "O")
    assert issubclass(tc.TropError, ValueError)


def test_plane_curves_round_trip():
    conic = tc.Complex.hypersurface("0 : 0 0\n-1 : 1 0\n-1 : 0 1\n-4 : 2 0\n-3 : 1 1\n-4 : 0 2\n")
    assert conic.balanced
    assert conic.degree() == 2
    assert tc.Complex.hypersurface(conic.fit()) == conic
    curve, coords = conic.ingest()
    assert tc.realize(coords) == conic
    assert tc.Complex.from_json(conic.to_json()) == conic
    assert conic.svg().startswith("<svg")
    assert conic.csv().splitlines()[0].startswith("kind")


def test_translated_lines_meet_once():
    a = tc.Complex.from_json(read("line0.json"))
    b = tc.Complex.from_json(read("line12.json"))
    assert tc.intersect(a, b) == [((1, 1), 1)]


def test_suite_and_cli_entry_points():
    cases, failed = tc.run_suite("realization", 3)
    assert cases > 0 and failed == 0
    code, out, err = tc.run_cli(["div", "--curve", str(DATA / "line.json"), "--fn", str(DATA / "twox.json")])
    assert code == 0, err
    assert out.strip() == '{"-inf_point": 2, "+inf_point": -2}'
    assert tc.run_cli(["no-such-command"])[0] == 64
