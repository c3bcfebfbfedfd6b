import json

import numpy as np

from ulab import nm, serialize


def test_round_sig():
    assert serialize.round_sig(0.123456789123, 9) == 0.123456789
    assert serialize.round_sig(1234567.89123, 6) == 1234570.0
    assert serialize.round_sig(0.0) == 0.0


def test_dumps_json_is_canonical():
    text = serialize.dumps_json({"b": 0.1234567891234, "a": 1})
    assert text.endswith("\n")
    payload = json.loads(text)
    assert list(payload) == ["a", "b"]
    assert payload["b"] == 0.123456789
    # numpy scalars serialize like plain floats
    same = serialize.dumps_json({"b": np.float64(0.1234567891234), "a": 1})
    assert same == text


def test_dumps_json_full_keeps_precision():
    x = 0.1234567891234567
    payload = json.loads(serialize.dumps_json_full({"x": x}))
    assert payload["x"] == x


def test_fingerprint_stable_and_sensitive():
    a = serialize.fingerprint({"x": [1.0, 2.0]})
    assert a == serialize.fingerprint({"x": [1.0, 2.0]})
    assert a != serialize.fingerprint({"x": [1.0, 2.1]})
    assert len(a) == 64


def test_format_csv():
    text = serialize.format_csv(["a", "b"], [(0.123456789, 1), (True, 2.0)])
    lines = text.splitlines()
    assert lines[0] == "a,b"
    assert lines[1] == "0.123457,1"
    assert lines[2] == "true,2"


def test_nelder_mead_quadratic():
    f = lambda x: float((x[0] - 1.0) ** 2 + 2 * (x[1] + 0.5) ** 2)
    x, fx, it = nm.nelder_mead(f, np.array([0.0, 0.0]), step=0.2)
    assert abs(x[0] - 1.0) < 1e-6
    assert abs(x[1] + 0.5) < 1e-6
    assert fx < 1e-12
    assert it >= 1


def test_nelder_mead_valley():
    f = lambda x: float(100 * (x[1] - x[0] ** 2) ** 2 + (1 - x[0]) ** 2)
    x, fx, _ = nm.nelder_mead(f, np.array([-0.5, 0.5]), step=0.1, max_iter=4000)
    assert fx < 1e-8
    assert abs(x[0] - 1.0) < 1e-3
