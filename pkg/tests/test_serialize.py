import io
from fractions import Fraction
import json

import pytest

from superalg import AlgebraSignature, JetScalar, QQi, SignatureError, State, projector
from superalg.serialize import FORMAT_VERSION, SerializationError, dumps, export_json, import_json, loads

SIG3 = AlgebraSignature(3, 2)


def test_projector_round_trip(tmp_path):
    p1 = projector(AlgebraSignature(3), 1)
    path = tmp_path / "p1.json"
    export_json(p1, path)
    assert import_json(path) == p1


def test_state_with_eps_round_trip():
    c = JetScalar(QQi(1, -2)) + JetScalar.eps("e_1_3", QQi(3, 0)) + JetScalar.eps("e_2_3", QQi(0, 5))
    psi = State(SIG3, {0: 1, 5: c})
    buf = io.StringIO()
    export_json(psi, buf)
    doc = json.loads(buf.getvalue())
    assert {e["id"] for e in doc["entries"][1]["eps"]} == {"e_1_3", "e_2_3"}
    back = import_json(io.StringIO(buf.getvalue()))
    assert back == psi and back.sig == SIG3


def test_rationals_are_strings():
    psi = State(SIG3, {1: QQi(Fraction(1, 3), -7)})
    doc = json.loads(dumps(psi))
    assert doc["entries"][0]["re"] == "1/3" and doc["entries"][0]["im"] == "-7"


def test_signature_cap():
    doc = {"version": FORMAT_VERSION, "kind": "state", "n_total": 20, "n_D": 0, "entries": []}
    with pytest.raises(SignatureError):
        loads(json.dumps(doc))


@pytest.mark.parametrize("doc", [
    {"version": 2, "kind": "state", "n_total": 2, "n_D": 0, "entries": []},
    {"version": 1, "kind": "matrix", "n_total": 2, "n_D": 0, "entries": []},
    {"version": 1, "kind": "state", "n_total": 2, "n_D": 0, "entries": [{"out": 1, "re": "x", "im": "0"}]},
    {"version": 1, "kind": "operator", "n_total": 2, "n_D": 0, "entries": [{"out": 1, "re": "1", "im": "0"}]},
    {"version": 1, "kind": "state", "n_total": 2, "n_D": 0,
     "entries": [{"out": 1, "re": "1", "im": "0"}, {"out": 1, "re": "2", "im": "0"}]},
])
def test_malformed_documents(doc):
    with pytest.raises(SerializationError):
        loads(json.dumps(doc))


def test_invalid_json():
    with pytest.raises(SerializationError):
        loads("{not json")


def test_symbolic_coefficients_refused():
    with pytest.raises(SerializationError):
        dumps(State(SIG3, {0: JetScalar.symbol("x")}))
