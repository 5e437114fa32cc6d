"""Smoke tests for the _endgraph extension module."""

import pytest

import _endgraph as eg


def test_parse_roundtrip():
    assert eg.parse("1 v o(1)") == "1 v o(1)"
    assert eg.parse("{w^n+1} -> (1 v C)") == "{w^n+1} -> (1 v C)"


def test_parse_error():
    with pytest.raises(eg.SignatureParseError):
        eg.parse("o(")


def test_normalize():
    assert eg.normalize("(w^2+1) -> 1") == "w^3+1"
    assert eg.normalize("C -> 1") == "C"
    assert eg.normalize("(1 -> C) -> 1") == "1 -> C"


def test_stability():
    assert eg.stable("w^(w^2)+1") == "Stable"
    assert eg.stable("{(w^n+1) -> o(1)} -> o(1)") == "Unstable"


def test_self_similarity():
    assert eg.self_similar("C") == "Yes"
    assert eg.self_similar("1 v C") == "No"


def test_classify_maps():
    v = eg.classify_maps("C")
    assert v["answer"] == "Yes"
    assert v["theorem"] == "CantorTree"

    v = eg.classify_maps("(w^3+1) -> (1 v C)")
    assert v["answer"] == "No"
    assert v["theorem"] == "GcdFlux"

    v = eg.classify_maps("1 v o(1)")
    assert v["answer"] == "Unknown"
    assert v["category"] == 1


def test_classify_homeo():
    v = eg.classify_homeo("o(1 v C)")
    assert v["answer"] == "Yes"


def test_order_and_iso():
    assert eg.leq("w+1", "w^2+1") == "Yes"
    assert eg.leq("(w^2+1) -> o(1)", "(w^3+1) -> o(1)") == "No"
    assert eg.isomorphic("(w+1) -> 1", "w^2+1") == "Yes"


def test_generic_run():
    out = eg.run("max-ends", ["(w+1) v C v o(1)"])
    assert len(out["types"]) == 3
    out = eg.run("flux", ["unit", "shift:1"])
    assert out["value"] == 1
