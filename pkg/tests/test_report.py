import io
import json
import math

import numpy as np
import pytest

from bargmann_ritz.models import quartic
from bargmann_ritz.optimize import minimize_displaced
from bargmann_ritz.report import HEADERS, ReportError, dumps, emit_report, render
from bargmann_ritz.trials import PositionGaussian


def test_empty_documents():
    assert render([], "json") == "[]\n"
    for kind, header in HEADERS.items():
        assert render([], "csv", kind) == ",".join(header) + "\n"


def test_floats_seventeen_digits_and_sorted_keys():
    text = dumps({"b": 0.1, "a": [1, 2.0, float("nan")], "c": np.float64(1 / 3)})
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert "0.10000000000000001" in text and "null" in text
    back = json.loads(text)
    assert back["c"] == 1 / 3 and back["a"][1] == 2.0


def test_minimize_result_object():
    r = minimize_displaced(quartic(0.1), PositionGaussian(1.0, 0.0))
    obj = json.loads(render(r, "json"))
    assert {"params_opt", "energy_opt", "gradient_norm", "iterations"} <= set(obj)


def test_csv_rows_in_order():
    rows = [{"lambda": l, "alpha_opt": 1.0 + l} for l in np.linspace(0.01, 1, 20)]
    lines = render(rows, "csv", "sweep").splitlines()
    assert len(lines) == 21
    lams = [float(x.split(",")[0]) for x in lines[1:]]
    assert lams == sorted(lams)


def test_write_and_unwritable(tmp_path):
    p = tmp_path / "r.json"
    emit_report([{"x": 1.0}], "json", p)
    assert json.loads(p.read_text()) == [{"x": 1.0}]
    with pytest.raises(ReportError):
        emit_report([], "json", tmp_path / "missing" / "r.json")


def test_stream_output():
    buf = io.StringIO()
    emit_report({"k": 1}, "json", None, stream=buf)
    assert json.loads(buf.getvalue()) == {"k": 1}
