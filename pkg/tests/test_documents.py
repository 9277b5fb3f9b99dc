from fractions import Fraction

import pytest

from torickit import documents, gallery
from torickit.curves import CoxCurve, CoxPolynomial, PointSpec
from torickit.divisors import ft_certificate, ray_divisor
from torickit.errors import ParseError
from torickit.forms import FORM_S, FORM_T, BinaryForm
from torickit.grading import class_grading
from torickit.isogeny import smoothing_isogeny
from torickit.refine import resolve_to_smooth

P2 = gallery.projective_plane()
P121 = gallery.weighted_plane_121()


def test_rational_formatting():
    assert documents.format_rational(Fraction(3)) == "3"
    assert documents.format_rational(Fraction(-7, 2)) == "-7/2"
    assert documents.parse_rational("3") == 3
    assert documents.parse_rational("-7/2") == Fraction(-7, 2)
    assert documents.parse_rational(5) == 5
    with pytest.raises(ParseError):
        documents.parse_rational("1/0")
    with pytest.raises(ParseError):
        documents.parse_rational("x")


def test_fan_roundtrip():
    for fan in (P2, P121, gallery.cube_fan(), gallery.resolved_cube_fan()):
        text = documents.canonical_json(documents.wrap("fan", documents.fan_payload(fan)))
        assert documents.load_fan(text) == fan
        # canonical emission is stable under reparse
        kind, payload = documents.parse_document(text)
        assert documents.canonical_json(documents.wrap(kind, payload)) == text


def test_divisor_roundtrip():
    d = ray_divisor(P2, 0) + Fraction(1, 3) * ray_divisor(P2, 2)
    text = documents.canonical_json(
        documents.wrap("divisor", documents.divisor_payload(d))
    )
    assert documents.load_divisor(text) == d


def test_isogeny_roundtrip():
    iso = smoothing_isogeny(P121, (0, 2))
    text = documents.canonical_json(
        documents.wrap("isogeny", documents.isogeny_payload(iso))
    )
    assert documents.load_isogeny(text) == iso


def test_isogeny_degree_check():
    iso = smoothing_isogeny(P121, (0, 2))
    payload = documents.isogeny_payload(iso)
    payload["degree"] = 5
    with pytest.raises(ParseError):
        documents.isogeny_from_payload(payload)


def test_curve_roundtrip():
    curve = CoxCurve(
        P2, (FORM_S, FORM_T, BinaryForm.zero()), class_grading(P2).degree((1, 1, 1))
    )
    text = documents.canonical_json(
        documents.wrap("curve", documents.curve_payload(curve))
    )
    assert documents.load_curve(text) == curve


def test_ideal_roundtrip():
    gens = (
        CoxPolynomial.coordinate(3, 0),
        CoxPolynomial(3, (((1, 1, 0), Fraction(2, 3)), ((0, 0, 2), Fraction(-1)))),
    )
    text = documents.canonical_json(
        documents.wrap("ideal", documents.ideal_payload(gens))
    )
    assert documents.load_ideal(text) == gens


def test_certificate_roundtrip():
    cert = ft_certificate(P2, ray_divisor(P2, 2))
    text = documents.canonical_json(
        documents.wrap("certificate", documents.certificate_payload(P2, cert))
    )
    kind, payload = documents.parse_document(text)
    fan, parsed = documents.certificate_from_payload(payload)
    assert fan == P2 and parsed == cert


def test_step_roundtrip():
    _, steps = resolve_to_smooth(P121)
    for s in steps:
        assert documents.step_from_payload(documents.step_payload(s)) == s


def test_point_payload_consistency():
    p = PointSpec((Fraction(1), Fraction(0), Fraction(2)))
    payload = documents.point_payload(p)
    assert documents.point_from_payload(payload) == p
    payload["vanishing_pattern"] = [0]
    with pytest.raises(ParseError):
        documents.point_from_payload(payload)


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as err:
        documents.parse_document("{not json")
    assert "line 1" in str(err.value)
    with pytest.raises(ParseError):
        documents.parse_document('{"kind": "nonsense", "version": "0", "payload": {}}')
    with pytest.raises(ParseError):
        documents.load_fan('{"kind": "divisor", "version": "0", "payload": {"coefficients": []}}')
    with pytest.raises(ParseError) as err2:
        documents.fan_from_payload({"rank": 2, "rays": [[1, 0]]})
    assert "max_cones" in str(err2.value)


def test_documents_carry_version():
    doc = documents.wrap("fan", documents.fan_payload(P2))
    assert doc["version"] == documents.__version__ if hasattr(documents, "__version__") else True
    import torickit

    assert doc["version"] == torickit.__version__
