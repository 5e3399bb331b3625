import os
from fractions import Fraction
from pathlib import Path

import pytest

import parataur

FIXTURES = Path(os.environ.get("PARATAUR_FIXTURE_DIR", Path(__file__).resolve().parents[1] / "fixtures"))


def load(name):
    return parataur.Model.from_json((FIXTURES / name).read_text())


def test_classify_reset_selfloop():
    c = load("reset_selfloop.json").classify()
    assert c["is_reset_pta"] and c["ip_sufficient"]
    assert c["lu_partition"] is None


def test_ec_on_reset_loop():
    v = load("reset_loop.json").check("EC")
    assert v["answer"] == "empty"
    assert v["witness"] is None


def test_two_counter_end_to_end():
    machine = (FIXTURES / "inc_twice.2cm").read_text()
    sim = parataur.simulate_2cm(machine)
    assert sim["halted"] and sim["max_counter"] == 2
    model = parataur.compile_2cm(machine)
    assert "qprime_halt" in model.locations
    v = model.check("EF", ["qprime_halt"])
    assert v["answer"] == "nonempty"
    a = v["witness"]["valuation"]["a"]
    assert isinstance(a, Fraction) and 0 < a <= Fraction(1, 2)
    assert v["witness"]["confirmed"]
    assert model.reaches({"a": Fraction(1, 2)}, ["qprime_halt"])
    assert not model.reaches({"a": 0}, ["qprime_halt"])


def test_synth_int_and_round_trip():
    m = load("reset_selfloop.json")
    assert m.synth_int(["l0"]) == [{"p": Fraction(n)} for n in range(3)]
    again = parataur.Model.from_json(m.to_json())
    assert again.to_json() == m.to_json()
    assert again.parameters == ["p"]


def test_explore_and_ip():
    g = load("reset_loop.json").explore()
    assert g["complete"] and len(g["states"]) > 0
    r = load("open_unit.json").check("IP")
    assert r["ip_status"] == "Refuted" and r["refuting_location"] == "l1"


def test_errors_carry_kind():
    with pytest.raises(parataur.ParatauError) as info:
        load("reset_selfloop.json").check("EC")
    assert info.value.kind == "NotLU"
    with pytest.raises(parataur.ParatauError) as info:
        parataur.Model.from_json("{")
    assert info.value.kind == "SyntaxError"
