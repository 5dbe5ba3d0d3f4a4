import json
from pathlib import Path

import pytest

from gcladder import records
from gcladder.genfunc import verify_generating_pde
from gcladder.ladder import DiagramFace, build_diagram, enumerate_faces
from gcladder.polytope import Spectrum, verify_isomorphism

GOLDEN_PATH = Path(__file__).resolve().parent.parent / "golden" / "fvectors_n6.json"


def test_face_record_round_trip():
    d = build_diagram((2, 1))
    for face in enumerate_faces(d):
        rec = records.face_record(face)
        assert rec["format"] == records.FACE_FORMAT
        back = records.face_from_record(rec)
        assert back == face and back.dim == face.dim


def test_face_record_rejects_non_face():
    d = build_diagram((1, 1))
    rec = {
        "format": records.FACE_FORMAT,
        "version": records.VERSION,
        "composition": [1, 1],
        "edges_hex": "00",
    }
    with pytest.raises(ValueError):
        records.face_from_record(rec)


def test_face_record_checks_dimension():
    d = build_diagram((1, 1))
    rec = records.face_record(DiagramFace(d, d.full_mask))
    rec["dim"] = 7
    with pytest.raises(ValueError, match="dimension"):
        records.face_from_record(rec)


def test_fvector_record_uses_decimal_strings():
    rec = records.fvector_record((1, 1, 1))
    assert rec["coefficients"] == ["7", "11", "6", "1"]


def test_dumps_deterministic():
    rec = records.fvector_record((2, 1))
    assert records.dumps(rec) == records.dumps(json.loads(records.dumps(rec)))
    assert records.dumps(rec).endswith("\n")


def test_pde_report_record():
    report = verify_generating_pde(2, 4)
    rec = records.pde_report_record(report)
    assert rec["pass"] is True and rec["residual_terms"] == 0
    assert rec["s"] == 2 and rec["degree"] == 4


def test_iso_report_record():
    rec = records.iso_report_record(verify_isomorphism(Spectrum((1, 1, 0))))
    assert rec["pass"] is True and rec["face_count"] == 7


def test_golden_file_regression():
    payload = json.loads(GOLDEN_PATH.read_text())
    assert payload["format"] == records.GOLDEN_FORMAT
    assert payload["max_n"] == 6
    assert len(payload["entries"]) == 63
    assert records.check_golden(payload) == []


def test_golden_check_flags_mismatch():
    payload = json.loads(GOLDEN_PATH.read_text())
    payload["entries"][0]["coefficients"] = ["999"]
    bad = records.check_golden(payload)
    assert len(bad) == 1
