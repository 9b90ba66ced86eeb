from fractions import Fraction

import pytest

from prinparts.detlemmas import (
    DET1,
    DET2,
    BinomialMatrixSpec,
    InvalidSpec,
    build_matrix,
    det1_check,
    det1_formula,
    det1_sweep,
    det2_check,
    det2_sweep,
)


def test_build_examples():
    assert build_matrix(BinomialMatrixSpec(DET1, 2, 1, 1)).tolist() == [[2, 1], [3, 3]]
    assert build_matrix(BinomialMatrixSpec(DET2, 5, 1)).tolist() == [[1, 1], [5, 4]]
    assert build_matrix(BinomialMatrixSpec(DET1, 1, 1, 1)).tolist() == [[1, 0], [2, 1]]


@pytest.mark.parametrize("a,b,l,value", [(2, 1, 1, 3), (1, 1, 1, 1), (3, 1, 2, 10)])
def test_det1_formula_examples(a, b, l, value):
    assert det1_formula(a, b, l) == value
    assert det1_check(a, b, l).match


def test_det1_sweep_is_exact_and_integral():
    reports = det1_sweep()
    assert len(reports) == 225
    for r in reports:
        assert r.match
        assert r.claimed.denominator == 1 and r.claimed > 0


@pytest.mark.parametrize("a,l,direct,match", [(5, 1, -1, False), (5, 2, -1, True), (0, 0, 1, False), (7, 0, 1, False)])
def test_det2_examples(a, l, direct, match):
    r = det2_check(a, l)
    assert r.direct == direct and r.match is match
    assert r.claimed == (-1) ** (l + 1)


def test_det2_closed_sign():
    for r in det2_sweep():
        l = r.params["l"]
        assert r.direct == (-1) ** (l * (l + 1) // 2)
        assert r.signed_variant == 1
        assert r.match == (l % 4 in (2, 3))


def test_invalid_specs():
    with pytest.raises(InvalidSpec):
        BinomialMatrixSpec(DET1, 1, 1, 2)
    with pytest.raises(InvalidSpec):
        BinomialMatrixSpec(DET1, 3, 0, 1)
    with pytest.raises(InvalidSpec):
        BinomialMatrixSpec(DET2, 3, 2)
    with pytest.raises(InvalidSpec):
        BinomialMatrixSpec("det3", 3, 1)
    with pytest.raises(InvalidSpec):
        det1_formula(1, 2, 1)


def test_report_json():
    j = det2_check(5, 1).to_json()
    assert j == {"lemma": "det2", "params": {"a": 5, "l": 1}, "direct": "-1", "claimed": "1", "match": False,
                 "signed_variant": "1", "signed_match": True}
    assert det1_check(2, 1, 1).to_json()["direct"] == "3"
    assert isinstance(det1_check(2, 1, 1).direct, Fraction)
