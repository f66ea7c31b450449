from __future__ import annotations

import io
import json

import pytest

from semifields.cli import run
from semifields.serialize import validate


def call(*argv):
    buf = io.StringIO()
    code = run(["--no-timings", *argv], buf)
    text = buf.getvalue()
    return code, text


def payload(text):
    return json.loads(text)["payload"]


@pytest.fixture(scope="module")
def s_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("maps") / "s.json"
    code, text = call("construct", "--family", "S", "--p", "3", "--m", "6", "--k", "2")
    assert code == 0
    path.write_text(text)
    return str(path)


def test_field_info():
    code, text = call("field-info", "--p", "3", "--m", "6", "--k", "2")
    assert code == 0
    validate(json.loads(text), "report")


def test_construct_errors():
    code, text = call("construct", "--family", "S", "--p", "3", "--m", "6", "--k", "3")
    assert code == 2 and "m/e odd" in json.loads(text)["error"]
    code, _ = call("construct", "--family", "S", "--p", "4", "--m", "6", "--k", "2")
    assert code == 2


def test_verify_and_nuclei(s_file):
    code, text = call("verify", "--in", s_file, "--spot-checks", "5")
    assert code == 0 and payload(text)["certificate"]["planar"] is True
    code, text = call("nuclei", "--in", s_file)
    p = payload(text)
    assert code == 0 and (p["Nl"], p["Nm"], p["Nr"], p["match"]) == (3, 9, 3, True)


def test_verify_rejects_zero_leading_coefficients(tmp_path):
    from semifields import BiprojPair, make_field
    from semifields.serialize import canonical_dumps, map_to_json

    bad = BiprojPair(make_field(3, 2), 0, 1, (0, 1, 1, 1), (0, 1, 0, 1))
    path = tmp_path / "bad.json"
    path.write_text(canonical_dumps(map_to_json(bad)))
    code, text = call("verify", "--in", str(path))
    p = payload(text)["certificate"]
    assert code == 1 and p["planar"] is False
    assert p["checkers"]["biproj"]["witness"] is not None


def test_centralizer_and_orbit(s_file):
    code, text = call("centralizer", "--in", s_file)
    p = payload(text)
    assert code == 0 and p["size"] in (5824, 11648) and p["condition_c"]
    code, text = call("orbit", "--p", "3", "--m", "6", "--k", "2")
    assert code == 0 and len(payload(text)["orbit"]) <= 12


def test_compare(s_file, tmp_path):
    code, text = call("construct", "--family", "dickson", "--p", "3", "--m", "6", "--k", "1")
    d = tmp_path / "d.json"
    d.write_text(text)
    code, text = call("compare", "--a", s_file, "--b", str(d))
    p = payload(text)
    assert code == 0 and p["verdict"] == "non_isotopic" and p["evidence"] == "a"


def test_classify_and_determinism(tmp_path):
    csv_path = tmp_path / "classes.csv"
    code, first = call("classify", "--family", "S", "--p", "3", "--m", "6", "--csv", str(csv_path))
    assert code == 0
    p = payload(first)
    assert 3 <= p["count"] <= 26 and p["within_bounds"]
    assert all(m["witness"]["verified"] for c in p["classes"] for m in c["members"])
    assert len(csv_path.read_text().strip().splitlines()) == p["count"] + 1
    _, second = call("classify", "--family", "S", "--p", "3", "--m", "6")
    assert first == second


def test_table1_csv():
    code, text = call("table1", "--p", "3", "--m", "6")
    assert code == 0 and text.splitlines()[0].startswith("family")


def test_usage_error_exit_code():
    code, _ = call("nuclei", "--in", "/nonexistent.json")
    assert code == 2
