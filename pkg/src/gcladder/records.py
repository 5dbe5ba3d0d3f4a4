"""Versioned structured records for faces, f-vectors, and reports.

Every record carries a ``format`` tag and integer ``version`` so files can
be validated on the way back in.  Faces serialize as hexadecimal strings of
the canonical edge bit vector together with their composition; coefficient
lists are decimal strings (lowest degree first) so arbitrary-precision
values survive JSON.  ``dumps`` produces byte-deterministic output.
"""

import json

from .genfunc import f_polynomial
from .ladder import DiagramFace, build_diagram, is_face

FACE_FORMAT = "gcladder/face"
FACE_LIST_FORMAT = "gcladder/faces"
FVECTOR_FORMAT = "gcladder/fvector"
PDE_REPORT_FORMAT = "gcladder/pde-report"
ISO_REPORT_FORMAT = "gcladder/iso-report"
GOLDEN_FORMAT = "gcladder/golden-fvectors"
VERSION = 1


def dumps(obj):
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _hex_mask(diagram, mask):
    width = max(1, (diagram.num_edges + 3) // 4)
    return f"{mask:0{width}x}"


def face_record(face):
    return {
        "format": FACE_FORMAT,
        "version": VERSION,
        "composition": list(face.diagram.composition),
        "edges_hex": _hex_mask(face.diagram, face.mask),
        "dim": face.dim,
    }


def face_from_record(record):
    if record.get("format") != FACE_FORMAT or record.get("version") != VERSION:
        raise ValueError(f"not a version-{VERSION} face record")
    diagram = build_diagram(tuple(record["composition"]))
    mask = int(record["edges_hex"], 16)
    if not is_face(diagram, mask):
        raise ValueError("record does not describe a face")
    face = DiagramFace(diagram, mask)
    if "dim" in record and face.dim != record["dim"]:
        raise ValueError(
            f"recorded dimension {record['dim']} disagrees with {face.dim}"
        )
    return face


def face_list_record(diagram, faces):
    return {
        "format": FACE_LIST_FORMAT,
        "version": VERSION,
        "composition": list(diagram.composition),
        "edge_count": diagram.num_edges,
        "faces": [face_record(f) for f in faces],
    }


def fvector_record(k):
    poly = f_polynomial(k)
    return {
        "format": FVECTOR_FORMAT,
        "version": VERSION,
        "composition": list(k),
        "coefficients": [str(c) for c in poly.coeffs],
    }


def pde_report_record(report):
    return {
        "format": PDE_REPORT_FORMAT,
        "version": VERSION,
        "identity": report.identity,
        "s": report.s,
        "degree": report.degree,
        "validity_degree": report.validity_degree,
        "residual_terms": len(report.residual),
        "residual": [
            {"exponents": list(exps), "poly": poly} for exps, poly in report.residual
        ],
        "pass": report.passed,
    }


def iso_report_record(report):
    return {
        "format": ISO_REPORT_FORMAT,
        "version": VERSION,
        "spectrum": list(report.spectrum),
        "composition": list(report.composition),
        "diagram_counts": {str(d): c for d, c in report.diagram_counts},
        "polytope_counts": {str(d): c for d, c in report.polytope_counts},
        "face_count": report.face_count,
        "bijection": report.bijection_ok,
        "order": report.order_ok,
        "dimension": report.dimension_ok,
        "roundtrip": report.roundtrip_ok,
        "counterexample": report.counterexample,
        "pass": report.passed,
    }


def golden_payload(max_n):
    """f-vectors of every composition with total at most max_n."""
    from .ladder import compositions_of

    entries = []
    for n in range(1, max_n + 1):
        for comp in compositions_of(n):
            entries.append(
                {
                    "composition": list(comp),
                    "coefficients": [str(c) for c in f_polynomial(comp).coeffs],
                }
            )
    return {
        "format": GOLDEN_FORMAT,
        "version": VERSION,
        "max_n": max_n,
        "entries": entries,
    }


def check_golden(payload):
    """Recompute every entry of a golden payload; returns mismatches."""
    if payload.get("format") != GOLDEN_FORMAT or payload.get("version") != VERSION:
        raise ValueError(f"not a version-{VERSION} golden f-vector file")
    bad = []
    for entry in payload["entries"]:
        comp = tuple(entry["composition"])
        want = tuple(entry["coefficients"])
        got = tuple(str(c) for c in f_polynomial(comp).coeffs)
        if got != want:
            bad.append((comp, want, got))
    return bad
