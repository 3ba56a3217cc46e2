"""Report container serialization: JSON, CSV, summary lines."""

from __future__ import annotations

import json

import numpy as np

from primelab.report import VerificationReport


def _sample_report():
    return VerificationReport(
        theorem_id="demo-scan",
        range=(100, 10**6),
        samples=128,
        failures=[{"x": 25, "q": 9, "a": 8}],
        extremal={"x": 1, "witness": 2, "margin": 1.0},
        runtime=0.25,
        seed=24301,
        details={"threshold": 100, "tau": 2j, "count": np.int64(29)},
        rows=[
            {"x": 100, "pass": True, "note": 'has,comma and "quote"'},
            {"x": 200, "pass": False, "note": "plain"},
        ],
    )


def test_json_round_trip():
    rep = _sample_report()
    back = VerificationReport.from_json(rep.to_json())
    assert back.theorem_id == rep.theorem_id
    assert back.range == rep.range
    assert back.samples == rep.samples
    assert back.failures == rep.failures
    assert back.extremal == rep.extremal
    assert back.runtime == rep.runtime
    assert back.seed == rep.seed
    assert back.rows is None  # per-sample rows are not serialized
    assert back.passed == rep.passed


def test_json_shape():
    rep = _sample_report()
    d = json.loads(rep.to_json())
    assert set(d) == {
        "theorem_id",
        "range",
        "samples",
        "failures",
        "extremal",
        "runtime",
        "seed",
        "details",
        "passed",
    }
    # stable key order for diffable output
    text = rep.to_json()
    assert text == json.dumps(d, indent=2, sort_keys=True)
    # complex values map to {re, im}; numpy scalars to plain ints
    assert d["details"]["tau"] == {"re": 0.0, "im": 2.0}
    assert d["details"]["count"] == 29
    assert isinstance(d["details"]["count"], int)
    assert d["passed"] is False


def test_csv_rows_and_quoting():
    rep = _sample_report()
    lines = rep.to_csv().splitlines()
    assert lines[0] == "x,pass,note"
    # RFC 4180: embedded commas and quotes force quoting, quotes double
    assert lines[1] == '100,True,"has,comma and ""quote"""'
    assert lines[2] == "200,False,plain"


def test_csv_falls_back_to_failures():
    rep = _sample_report()
    rep.rows = None
    lines = rep.to_csv().splitlines()
    assert lines[0] == "x,q,a"
    assert lines[1] == "25,9,8"


def test_csv_empty_report_header_only():
    rep = VerificationReport(theorem_id="clean-scan", range=(1, 10), samples=10)
    assert rep.passed
    assert rep.to_csv() == "theorem_id,samples,failures,passed\nclean-scan,10,0,True\n"


def test_summary_line():
    rep = _sample_report()
    assert rep.summary_line() == (
        "demo-scan: FAIL (1 failures)  range=[100, 1000000]  "
        "samples=128  runtime=0.25s"
    )
    rep.failures = []
    assert rep.summary_line().startswith("demo-scan: PASS")
